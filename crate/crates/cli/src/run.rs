//! Command dispatch and report assembly.

use std::time::Instant;

use graded_sod::duality::{duality_condition_check, DualizingData};
use graded_sod::error::Error;
use graded_sod::groebner::{free_resolution, Caps};
use graded_sod::grmodule::{truncate_geq, CharacterTable};
use graded_sod::localcoh::{cech_complex, cross_engine_check, ideal_gens, torus_module, local_cohomology, Engine, Flavor, Side};
use graded_sod::weighttrunc::{conditions_probe, sod_decompose, truncation_triangle, window_sod, Method};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::scenario::{EngineChoice, Scenario, TaskSpec, DEFAULT_WINDOW};

pub const SCHEMA_VERSION: u32 = 1;
const DUALITY_TWISTS: (i64, i64) = (-4, 4);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    Cap,
    InputError,
}

impl Status {
    pub fn exit_code(&self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::InputError => 2,
            Status::Cap => 3,
        }
    }

    /// Input errors outrank caps, which outrank failed checks.
    fn severity(&self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Cap => 2,
            Status::InputError => 3,
        }
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TaskReport {
    pub index: usize,
    pub spec: TaskSpec,
    pub status: Status,
    pub summary: Vec<String>,
    pub result: Value,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ScenarioReport {
    pub name: String,
    pub vars: Vec<String>,
    pub weights: Vec<i64>,
    pub tasks: Vec<TaskReport>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Report {
    pub schema_version: u32,
    pub version: &'static str,
    pub caps: Caps,
    pub scenarios: Vec<ScenarioReport>,
    pub status: Status,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<Vec<Vec<f64>>>,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }
}

struct Outcome {
    pass: bool,
    capped: bool,
    summary: Vec<String>,
    result: Value,
}

impl Outcome {
    fn new(pass: bool, summary: Vec<String>, result: impl Serialize) -> Self {
        Outcome { pass, capped: false, summary, result: serde_json::to_value(result).expect("serializable") }
    }
}

pub fn render_table(t: &CharacterTable, label: &str) -> Vec<String> {
    let mut out = vec![format!("{} on weights {}..{}", label, t.window.lo, t.window.hi)];
    if t.rows.is_empty() {
        out.push("  all zero".into());
    }
    for (p, row) in &t.rows {
        let cells: Vec<String> = row.iter().map(|d| d.to_string()).collect();
        out.push(format!("  H^{}: {}", p, cells.join(" ")));
    }
    out
}

fn side(spec: &TaskSpec) -> Side {
    if spec.ideal.as_deref() == Some("minus") {
        Side::Minus
    } else {
        Side::Plus
    }
}

fn engines(choice: EngineChoice) -> Vec<Engine> {
    match choice {
        EngineChoice::Torus => vec![Engine::Torus],
        EngineChoice::Koszul => vec![Engine::Koszul],
        EngineChoice::Both => vec![Engine::Torus, Engine::Koszul],
    }
}

fn local_tables(sc: &Scenario, spec: &TaskSpec, flavor: Flavor, caps: &Caps) -> Result<Outcome, Error> {
    let m = sc.module(spec.module.as_deref().unwrap_or("A")).map_err(Error::Input)?;
    let window = spec.window.unwrap_or(DEFAULT_WINDOW);
    let sd = side(spec);
    let label = match flavor {
        Flavor::Rgamma => "RΓ",
        Flavor::Cech => "Č",
    };
    let mut summary = vec![];
    let mut result = serde_json::Map::new();
    if flavor == Flavor::Cech {
        result.insert("complex".into(), serde_json::to_value(cech_complex(&sc.ring, &ideal_gens(&sc.ring, sd))).unwrap());
    }
    let mut choice = spec.engine.unwrap_or(EngineChoice::Both);
    if choice == EngineChoice::Both && (!sc.ring.torus || torus_module(&sc.ring, &m).is_none()) {
        summary.push("torus engine not applicable here; Koszul engine only".into());
        choice = EngineChoice::Koszul;
    }
    let pass = if choice == EngineChoice::Both {
        let c = cross_engine_check(&sc.ring, &m, sd, window, flavor, caps)?;
        summary.extend(render_table(&c.torus.table, label));
        summary.push(format!("engines agree: {}", c.agree));
        result.insert("crosscheck".into(), serde_json::to_value(&c).unwrap());
        c.agree
    } else {
        let e = engines(choice)[0];
        let t = local_cohomology(&sc.ring, &m, sd, window, e, flavor, caps)?;
        summary.extend(render_table(&t.table, label));
        let ok = !t.indeterminate;
        result.insert("table".into(), serde_json::to_value(&t).unwrap());
        ok
    };
    Ok(Outcome { pass, capped: false, summary, result: Value::Object(result) })
}

fn run_task(sc: &Scenario, spec: &TaskSpec, caps: &Caps) -> Result<Outcome, Error> {
    let module = || sc.module(spec.module.as_deref().unwrap_or("A")).map_err(Error::Input);
    let window = spec.window.unwrap_or(DEFAULT_WINDOW);
    let w = spec.weight.unwrap_or(0);
    let ring = &sc.ring;
    match spec.command.as_str() {
        "resolve" => {
            let m = module()?;
            let res = free_resolution(ring, &m.pres, caps.max_res_len, caps)?;
            let ranks: Vec<String> = res.complex.terms.iter().map(|t| t.rank().to_string()).collect();
            let summary = vec![format!("ranks {} (minimal: {}, truncated: {})", ranks.join(" "), res.minimal, res.truncated)];
            let mut o = Outcome::new(
                !res.truncated,
                summary,
                json!({"complex": res.complex.serialize(ring), "minimal": res.minimal, "truncated": res.truncated}),
            );
            o.capped = res.truncated;
            Ok(o)
        }
        "lc" => local_tables(sc, spec, Flavor::Rgamma, caps),
        "cech" => local_tables(sc, spec, Flavor::Cech, caps),
        "crosscheck" => {
            let m = module()?;
            let mut checks = vec![];
            let mut summary = vec![];
            for flavor in [Flavor::Rgamma, Flavor::Cech] {
                let c = cross_engine_check(ring, &m, side(spec), window, flavor, caps)?;
                summary.push(format!("{:?}: agree {} ({} mismatches)", flavor, c.agree, c.mismatches.len()));
                checks.push(c);
            }
            Ok(Outcome::new(checks.iter().all(|c| c.agree), summary, checks))
        }
        "truncate" => {
            let m = module()?;
            let methods: Vec<Method> = match spec.engine.unwrap_or(EngineChoice::Both) {
                EngineChoice::Torus => vec![Method::Resolution],
                EngineChoice::Koszul => vec![Method::Koszul],
                EngineChoice::Both => vec![Method::Resolution, Method::Koszul],
            };
            let t = truncation_triangle(ring, &m, w, window, &methods, caps)?;
            let mut summary = vec![];
            for r in &t.routes {
                summary.extend(render_table(&r.lt_table, &format!("L_<{} via {:?}", w, r.method)));
            }
            summary.push(format!("routes agree: {:?}", t.routes_agree));
            Ok(Outcome::new(t.pass, summary, t))
        }
        "sod" => {
            let m = module()?;
            let r = sod_decompose(ring, &m, w, window, caps)?;
            let mut summary = vec![];
            for p in &r.pieces {
                summary.extend(render_table(&p.table, &p.name));
            }
            summary.push(format!("orthogonal: {}, stabilization level {}", r.orthogonal, r.stabilization));
            Ok(Outcome::new(r.pass, summary, r))
        }
        "window-sod" => {
            let m = module()?;
            let r = window_sod(ring, &truncate_geq(&m, w), window, caps)?;
            let mut summary = render_table(&r.cech_table, "Č window");
            summary.push(format!(
                "idempotent: Č {} RΓ {}; orthogonal {}; coherent {}",
                r.cech_idempotent, r.rgamma_idempotent, r.hom_orthogonal, r.coherent
            ));
            Ok(Outcome::new(r.pass, summary, r))
        }
        "duality" => {
            let dualizing = match (sc.a0_dim, sc.omega_shift) {
                (None, None) => None,
                (d, s) => {
                    let inferred = DualizingData::infer(ring);
                    let a0_dim = d.or(inferred.map(|x| x.a0_dim)).ok_or_else(|| {
                        Error::Input("a0_dim must be given for a quotient ring".into())
                    })?;
                    Some(DualizingData { a0_dim, shift: s.unwrap_or(0) })
                }
            };
            let mut reports = vec![];
            for e in engines(spec.engine.unwrap_or(EngineChoice::Torus)) {
                reports.push(duality_condition_check(ring, window, DUALITY_TWISTS, dualizing, e, caps)?);
            }
            let matched = &reports[0].matched;
            let pass = !matched.is_empty() && reports.iter().all(|r| &r.matched == matched);
            let summary = vec![format!("matched twists a ∈ {:?}", matched)];
            Ok(Outcome::new(pass, summary, reports))
        }
        "conditions" => {
            let r = conditions_probe(ring, &ring.i_plus.clone(), caps)?;
            Ok(Outcome::new(r.all_verified(), vec![r.summary()], r))
        }
        other => Err(Error::Input(format!("unknown command '{}'", other))),
    }
}

fn execute(sc: &Scenario, index: usize, spec: &TaskSpec, caps: &Caps) -> (TaskReport, f64) {
    let t0 = Instant::now();
    let (status, summary, result) = match run_task(sc, spec, caps) {
        Ok(o) => {
            let status = if o.pass {
                Status::Pass
            } else if o.capped {
                Status::Cap
            } else {
                Status::Fail
            };
            (status, o.summary, o.result)
        }
        Err(e) => {
            let status = match e {
                Error::Cap(_) => Status::Cap,
                Error::Input(_) | Error::Unsupported(_) => Status::InputError,
            };
            (status, vec![e.to_string()], json!({"error": e.to_string()}))
        }
    };
    let ms = t0.elapsed().as_secs_f64() * 1e3;
    (TaskReport { index, spec: spec.clone(), status, summary, result }, ms)
}

/// Run every (scenario, task) pair on `workers` threads; output order follows input order.
pub fn run_all(jobs: &[(Scenario, Vec<TaskSpec>)], workers: usize, caps: &Caps, timings: bool) -> Report {
    let flat: Vec<(usize, usize)> =
        jobs.iter().enumerate().flat_map(|(s, (_, ts))| (0..ts.len()).map(move |t| (s, t))).collect();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(workers.max(1)).build().expect("thread pool");
    let done: Vec<(TaskReport, f64)> =
        pool.install(|| flat.par_iter().map(|&(s, t)| execute(&jobs[s].0, t, &jobs[s].1[t], caps)).collect());
    let mut scenarios: Vec<ScenarioReport> = jobs
        .iter()
        .map(|(sc, _)| ScenarioReport { name: sc.name.clone(), vars: sc.ring.vars.clone(), weights: sc.ring.w().to_vec(), tasks: vec![] })
        .collect();
    let mut ms: Vec<Vec<f64>> = vec![vec![]; jobs.len()];
    let mut status = Status::Pass;
    for ((s, _), (rep, t)) in flat.iter().zip(done) {
        if rep.status.severity() > status.severity() {
            status = rep.status;
        }
        scenarios[*s].tasks.push(rep);
        ms[*s].push(t);
    }
    Report {
        schema_version: SCHEMA_VERSION,
        version: env!("CARGO_PKG_VERSION"),
        caps: caps.clone(),
        scenarios,
        status,
        pass: status == Status::Pass,
        timings_ms: timings.then_some(ms),
    }
}

pub fn render_text(r: &Report) -> String {
    let mut out = String::new();
    for sc in &r.scenarios {
        out.push_str(&format!("scenario {} ({})\n", sc.name, sc.vars.join(", ")));
        for t in &sc.tasks {
            let mut head = format!("[{}] {}", t.index, t.spec.command);
            if let Some(m) = &t.spec.module {
                head.push_str(&format!(" {}", m));
            }
            if let Some(w) = t.spec.weight {
                head.push_str(&format!(" w={}", w));
            }
            out.push_str(&format!("{}: {:?}\n", head, t.status));
            for line in &t.summary {
                out.push_str(&format!("    {}\n", line));
            }
        }
    }
    out.push_str(&format!("overall: {:?}\n", r.status));
    out
}
