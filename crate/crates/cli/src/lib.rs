pub mod run;
pub mod scenario;

pub use run::{render_text, run_all, Report, Status};
pub use scenario::{builtin_module, embedded, load_scenario, parse_scenario, parse_window, Scenario, TaskSpec};
