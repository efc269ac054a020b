use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use graded_sod::groebner::Caps;
use graded_sod_cli::scenario::{EngineChoice, EMBEDDED};
use graded_sod_cli::{embedded, load_scenario, parse_window, render_text, run_all, Scenario, TaskSpec};

#[derive(Parser)]
#[command(name = "graded-sod", version, about = "Weight truncations, local cohomology and decompositions over Z-graded rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Scenario file, or the name of a built-in example.
    #[arg(long, global = true)]
    scenario: Option<String>,
    #[arg(long, global = true)]
    module: Option<String>,
    #[arg(long, global = true, value_parser = ["plus", "minus"])]
    ideal: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    weight: Option<i64>,
    /// Weight window LO..HI.
    #[arg(long, global = true, allow_hyphen_values = true)]
    window: Option<String>,
    #[arg(long, global = true, value_parser = ["torus", "koszul", "both"])]
    engine: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,
    /// Omit timings so that reports are byte-identical across runs.
    #[arg(long, global = true)]
    canonical: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Free resolution of a module.
    Resolve,
    /// Čech complex and its cohomology table.
    Cech,
    /// Local cohomology table.
    Lc,
    /// Truncation triangle at --weight.
    Truncate,
    /// Three-term decomposition at --weight.
    Sod,
    /// Decomposition of the weight window at --weight.
    WindowSod,
    /// Search for the twist relating the two local cohomologies.
    Duality,
    /// Probe the finiteness and weight conditions.
    Conditions,
    /// Compare the torus and Koszul engines.
    Crosscheck,
    /// Built-in example scenarios.
    Examples {
        #[command(subcommand)]
        action: ExamplesAction,
    },
}

#[derive(Subcommand)]
enum ExamplesAction {
    List,
    /// Run the task list of an example (or of --scenario).
    Run {
        name: Option<String>,
        #[arg(long)]
        all: bool,
    },
}

fn input_error(msgs: &[String]) -> ExitCode {
    for m in msgs {
        eprintln!("error: {}", m);
    }
    ExitCode::from(2)
}

fn resolve_scenario(s: &str) -> Result<Scenario, Vec<String>> {
    if std::path::Path::new(s).exists() {
        return load_scenario(s);
    }
    embedded(s).ok_or_else(|| vec![format!("no scenario file or built-in example named '{}'", s)])
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let caps = Caps::default();
    let window = match cli.window.as_deref().map(parse_window).transpose() {
        Ok(w) => w,
        Err(e) => return input_error(&[e]),
    };
    let command_name = match &cli.command {
        Command::Resolve => "resolve",
        Command::Cech => "cech",
        Command::Lc => "lc",
        Command::Truncate => "truncate",
        Command::Sod => "sod",
        Command::WindowSod => "window-sod",
        Command::Duality => "duality",
        Command::Conditions => "conditions",
        Command::Crosscheck => "crosscheck",
        Command::Examples { .. } => "examples",
    };

    let jobs: Vec<(Scenario, Vec<TaskSpec>)> = match &cli.command {
        Command::Examples { action: ExamplesAction::List } => {
            for (name, _) in EMBEDDED {
                let sc = embedded(name).unwrap();
                match cli.format {
                    Format::Text => println!("{:<14} {}", name, sc.description),
                    Format::Json => println!("{}", serde_json::json!({"name": name, "description": sc.description, "tasks": sc.tasks.len()})),
                }
            }
            return ExitCode::SUCCESS;
        }
        Command::Examples { action: ExamplesAction::Run { name, all } } => {
            let names: Vec<String> = match (name, all, &cli.scenario) {
                (_, true, _) => EMBEDDED.iter().map(|(n, _)| n.to_string()).collect(),
                (Some(n), false, _) => vec![n.clone()],
                (None, false, Some(s)) => vec![s.clone()],
                (None, false, None) => return input_error(&["give an example name, --scenario or --all".into()]),
            };
            let mut jobs = vec![];
            for n in names {
                match resolve_scenario(&n) {
                    Ok(sc) => {
                        let tasks = sc.tasks.clone();
                        jobs.push((sc, tasks));
                    }
                    Err(e) => return input_error(&e),
                }
            }
            jobs
        }
        _ => {
            let Some(s) = cli.scenario.as_deref() else {
                return input_error(&["--scenario is required (a file or a built-in example name)".into()]);
            };
            let sc = match resolve_scenario(s) {
                Ok(sc) => sc,
                Err(e) => return input_error(&e),
            };
            let spec = TaskSpec {
                command: command_name.to_string(),
                module: cli.module.clone(),
                ideal: cli.ideal.clone(),
                weight: cli.weight,
                window,
                engine: cli.engine.as_deref().map(|e| EngineChoice::parse(e).unwrap()),
            };
            vec![(sc, vec![spec])]
        }
    };

    let report = run_all(&jobs, cli.workers, &caps, !cli.canonical);
    match cli.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&report).expect("report serializes")),
        Format::Text => print!("{}", render_text(&report)),
    }
    ExitCode::from(report.exit_code() as u8)
}
