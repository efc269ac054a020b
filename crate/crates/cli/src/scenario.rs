//! Scenario files: a ring, named modules and a task list, in TOML.

use std::collections::BTreeMap;
use std::ops::Range;

use graded_sod::groebner::{FreeModule, GradedMatrix, Vector};
use graded_sod::grmodule::{GradedModulePresentation, Window};
use graded_sod::ringcore::{make_graded_ring, GradedRing, Polynomial};
use serde::Deserialize;
use toml::Spanned;

pub const DEFAULT_WINDOW: Window = Window { lo: -8, hi: 8 };

pub const COMMANDS: [&str; 9] =
    ["resolve", "cech", "lc", "truncate", "sod", "window-sod", "duality", "conditions", "crosscheck"];

/// Scenarios shipped inside the binary.
pub const EMBEDDED: [(&str, &str); 4] = [
    ("a1-cobordism", include_str!("../scenarios/a1-cobordism.toml")),
    ("proj-line", include_str!("../scenarios/proj-line.toml")),
    ("atiyah-flop", include_str!("../scenarios/atiyah-flop.toml")),
    ("standard-flip", include_str!("../scenarios/standard-flip.toml")),
];

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    name: Option<String>,
    description: Option<String>,
    ring: RawRing,
    #[serde(default)]
    modules: BTreeMap<String, RawModule>,
    #[serde(default)]
    tasks: Vec<RawTask>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRing {
    vars: Spanned<Vec<String>>,
    weights: Spanned<Vec<i64>>,
    #[serde(default)]
    relations: Vec<Spanned<String>>,
    i_plus: Option<Vec<Spanned<String>>>,
    i_minus: Option<Vec<Spanned<String>>>,
    a0_dim: Option<usize>,
    omega_shift: Option<i64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModule {
    weights: Spanned<Vec<i64>>,
    /// One column per relation, one entry per generator.
    #[serde(default)]
    relations: Vec<Spanned<Vec<String>>>,
}

#[derive(Deserialize, Clone)]
#[serde(deny_unknown_fields)]
struct RawTask {
    command: Spanned<String>,
    module: Option<String>,
    ideal: Option<String>,
    weight: Option<i64>,
    window: Option<String>,
    engine: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EngineChoice {
    Torus,
    Koszul,
    Both,
}

impl EngineChoice {
    pub fn parse(s: &str) -> Result<Self, String> {
        match s {
            "torus" => Ok(EngineChoice::Torus),
            "koszul" => Ok(EngineChoice::Koszul),
            "both" => Ok(EngineChoice::Both),
            _ => Err(format!("unknown engine '{}' (expected torus, koszul or both)", s)),
        }
    }
}

/// Parameters of one command invocation; unset fields take command defaults.
#[derive(Clone, Debug, Default, serde::Serialize)]
pub struct TaskSpec {
    pub command: String,
    pub module: Option<String>,
    pub ideal: Option<String>,
    pub weight: Option<i64>,
    pub window: Option<Window>,
    pub engine: Option<EngineChoice>,
}

#[derive(Clone, Debug)]
pub struct Scenario {
    pub name: String,
    pub description: String,
    pub ring: GradedRing,
    pub a0_dim: Option<usize>,
    pub omega_shift: Option<i64>,
    pub modules: BTreeMap<String, GradedModulePresentation>,
    pub tasks: Vec<TaskSpec>,
}

pub fn parse_window(s: &str) -> Result<Window, String> {
    let (lo, hi) = s.split_once("..").ok_or_else(|| format!("window '{}' is not of the form LO..HI", s))?;
    let lo: i64 = lo.trim().parse().map_err(|_| format!("bad window bound '{}'", lo))?;
    let hi: i64 = hi.trim().parse().map_err(|_| format!("bad window bound '{}'", hi))?;
    if lo > hi {
        return Err(format!("empty window {}..{}", lo, hi));
    }
    Ok(Window::new(lo, hi))
}

struct Lines<'a>(&'a str);

impl Lines<'_> {
    fn at(&self, span: Range<usize>) -> usize {
        self.0[..span.start.min(self.0.len())].matches('\n').count() + 1
    }
}

pub fn load_scenario(path: &str) -> Result<Scenario, Vec<String>> {
    let text = std::fs::read_to_string(path).map_err(|e| vec![format!("{}: {}", path, e)])?;
    parse_scenario(&text, path)
}

pub fn embedded(name: &str) -> Option<Scenario> {
    EMBEDDED
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(n, text)| parse_scenario(text, n).expect("embedded scenario"))
}

/// Parse and validate, collecting every error with its line.
pub fn parse_scenario(text: &str, origin: &str) -> Result<Scenario, Vec<String>> {
    let raw: RawScenario = toml::from_str(text).map_err(|e| {
        let line = e.span().map(|s| Lines(text).at(s)).unwrap_or(0);
        vec![format!("{}:{}: {}", origin, line, e.message())]
    })?;
    let lines = Lines(text);
    let mut errs = vec![];
    let err = |errs: &mut Vec<String>, span: Range<usize>, msg: String| {
        errs.push(format!("{}:{}: {}", origin, lines.at(span), msg));
    };

    let vars = raw.ring.vars.get_ref().clone();
    let weights = raw.ring.weights.get_ref().clone();
    if vars.len() != weights.len() {
        err(
            &mut errs,
            raw.ring.weights.span(),
            format!("{} variables but {} weights", vars.len(), weights.len()),
        );
        return Err(errs);
    }
    let parse_homog = |errs: &mut Vec<String>, s: &Spanned<String>, what: &str| -> Option<Polynomial> {
        match Polynomial::parse(s.get_ref(), &vars) {
            Err(e) => {
                err(errs, s.span(), format!("{} '{}': {}", what, s.get_ref(), e));
                None
            }
            Ok(p) if p.homogeneous_weight(&weights).is_none() => {
                err(errs, s.span(), format!("{} '{}' is not weight-homogeneous", what, s.get_ref()));
                None
            }
            Ok(p) => Some(p),
        }
    };
    let rels: Vec<Polynomial> =
        raw.ring.relations.iter().filter_map(|s| parse_homog(&mut errs, s, "relation")).collect();
    let mut side = |gens: &Option<Vec<Spanned<String>>>, what: &str| {
        gens.as_ref().map(|g| g.iter().filter_map(|s| parse_homog(&mut errs, s, what)).collect::<Vec<_>>())
    };
    let ip = side(&raw.ring.i_plus, "I+ generator");
    let im = side(&raw.ring.i_minus, "I- generator");
    if !errs.is_empty() {
        return Err(errs);
    }
    let ring = make_graded_ring(vars.clone(), weights.clone(), rels, ip, im)
        .map_err(|e| vec![format!("{}:{}: {}", origin, lines.at(raw.ring.vars.span()), e)])?;

    let mut modules = BTreeMap::new();
    for (name, m) in &raw.modules {
        let gw = m.weights.get_ref().clone();
        let mut cols = vec![];
        let mut src = vec![];
        for col in &m.relations {
            if col.get_ref().len() != gw.len() {
                err(
                    &mut errs,
                    col.span(),
                    format!("module {}: relation has {} entries for {} generators", name, col.get_ref().len(), gw.len()),
                );
                continue;
            }
            let mut entries = vec![];
            let mut weight = None;
            let mut ok = true;
            for (k, s) in col.get_ref().iter().enumerate() {
                match Polynomial::parse(s, &vars) {
                    Err(e) => {
                        err(&mut errs, col.span(), format!("module {}: '{}': {}", name, s, e));
                        ok = false;
                    }
                    Ok(p) => {
                        match p.homogeneous_weight(&weights) {
                            None => {
                                err(&mut errs, col.span(), format!("module {}: '{}' is not weight-homogeneous", name, s));
                                ok = false;
                            }
                            Some(Some(wt)) => match weight {
                                None => weight = Some(wt + gw[k]),
                                Some(w0) if w0 != wt + gw[k] => {
                                    err(&mut errs, col.span(), format!("module {}: relation is not homogeneous", name));
                                    ok = false;
                                }
                                _ => {}
                            },
                            Some(None) => {}
                        }
                        entries.push(p);
                    }
                }
            }
            if ok {
                if let Some(wt) = weight {
                    src.push(wt);
                    cols.push(Vector::from_entries(&entries));
                }
            }
        }
        let pres = GradedMatrix::new(FreeModule::new(src), FreeModule::new(gw), cols);
        match GradedModulePresentation::new(&ring, pres, Some(name.clone())) {
            Ok(p) => {
                modules.insert(name.clone(), p);
            }
            Err(e) => err(&mut errs, m.weights.span(), format!("module {}: {}", name, e)),
        }
    }

    let mut tasks = vec![];
    for t in &raw.tasks {
        let cmd = t.command.get_ref();
        if !COMMANDS.contains(&cmd.as_str()) {
            err(&mut errs, t.command.span(), format!("unknown command '{}'", cmd));
            continue;
        }
        let window = match t.window.as_deref().map(parse_window).transpose() {
            Ok(w) => w,
            Err(e) => {
                err(&mut errs, t.command.span(), e);
                continue;
            }
        };
        let engine = match t.engine.as_deref().map(EngineChoice::parse).transpose() {
            Ok(e) => e,
            Err(e) => {
                err(&mut errs, t.command.span(), e);
                continue;
            }
        };
        if let Some(m) = &t.module {
            if !modules.contains_key(m) {
                if let Err(e) = builtin_module(&ring, m) {
                    err(&mut errs, t.command.span(), e);
                }
            }
        }
        if let Some(i) = &t.ideal {
            if i != "plus" && i != "minus" {
                err(&mut errs, t.command.span(), format!("ideal must be plus or minus, not '{}'", i));
            }
        }
        tasks.push(TaskSpec {
            command: cmd.clone(),
            module: t.module.clone(),
            ideal: t.ideal.clone(),
            weight: t.weight,
            window,
            engine,
        });
    }
    if !errs.is_empty() {
        return Err(errs);
    }
    Ok(Scenario {
        name: raw.name.unwrap_or_else(|| origin.to_string()),
        description: raw.description.unwrap_or_default(),
        ring,
        a0_dim: raw.ring.a0_dim,
        omega_shift: raw.ring.omega_shift,
        modules,
        tasks,
    })
}

/// `A`, `A(n)` or `A/(f, g, ...)`.
pub fn builtin_module(ring: &GradedRing, name: &str) -> Result<GradedModulePresentation, String> {
    let name = name.trim();
    if name == "A" {
        return Ok(GradedModulePresentation::free(vec![0]).with_name(name));
    }
    if let Some(inner) = name.strip_prefix("A(").and_then(|s| s.strip_suffix(')')) {
        let n: i64 = inner.trim().parse().map_err(|_| format!("bad twist in module '{}'", name))?;
        return Ok(GradedModulePresentation::free(vec![-n]).with_name(name));
    }
    if let Some(inner) = name.strip_prefix("A/(").and_then(|s| s.strip_suffix(')')) {
        let rels = inner
            .split(',')
            .map(|s| ring.parse(s.trim()).map_err(|e| format!("module '{}': {}", name, e)))
            .collect::<Result<Vec<_>, _>>()?;
        return GradedModulePresentation::cyclic(ring, 0, &rels).map(|m| m.with_name(name)).map_err(|e| e.to_string());
    }
    Err(format!("unknown module '{}' (expected a scenario module, A, A(n) or A/(f,...))", name))
}

impl Scenario {
    pub fn module(&self, name: &str) -> Result<GradedModulePresentation, String> {
        match self.modules.get(name) {
            Some(m) => Ok(m.clone()),
            None => builtin_module(&self.ring, name),
        }
    }
}
