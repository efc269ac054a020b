//! Duality functors D_Y, D_A and the windowed dual, plus the flip/flop duality check.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{free_resolution, Caps};
use crate::grmodule::{CharacterTable, GradedModulePresentation, Window, WindowedModule};
use crate::komplex::{hom_d, ComplexOfFree, SerializedComplex};
use crate::localcoh::{ideal_gens, local_cohomology, stabilize, Engine, Flavor, Side};
use crate::ringcore::GradedRing;
use crate::staircase::Dim;
use crate::weighttrunc::{kan_extend, window_resolution};

/// ω• = ω_{A₀}[shift] over A₀ of Krull dimension a0_dim.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DualizingData {
    pub a0_dim: usize,
    pub shift: i64,
}

impl DualizingData {
    /// Only for polynomial rings, where A₀ is a normal semigroup ring of known dimension.
    pub fn infer(ring: &GradedRing) -> Option<Self> {
        if !ring.relations.is_empty() {
            return None;
        }
        Some(DualizingData { a0_dim: a0_krull_dim(ring.w()), shift: 0 })
    }
}

pub fn a0_krull_dim(weights: &[i64]) -> usize {
    let zero = weights.iter().filter(|&&w| w == 0).count();
    let pos = weights.iter().filter(|&&w| w > 0).count();
    let neg = weights.iter().filter(|&&w| w < 0).count();
    if pos > 0 && neg > 0 {
        zero + pos + neg - 1
    } else {
        zero
    }
}

/// Weightwise dual of a table of finite-length pieces: (p, i) goes to (a0_dim - shift - p, -i).
/// Infinite pieces are reported as gaps.
pub fn dual_y_table(t: &CharacterTable, data: DualizingData) -> (CharacterTable, Vec<(i64, i64)>) {
    let win = Window::new(-t.window.hi, -t.window.lo);
    let mut out = CharacterTable::new(win);
    let mut gaps = vec![];
    for &p in t.rows.keys() {
        let q = data.a0_dim as i64 - data.shift - p;
        for i in t.window.weights() {
            match t.get(p, i) {
                Dim::Finite(0) => {}
                Dim::Finite(d) => out.set(q, -i, Dim::Finite(d)),
                Dim::Infinite => {
                    gaps.push((q, -i));
                    out.set(q, -i, Dim::Infinite);
                }
            }
        }
    }
    (out.normalized(), gaps)
}

/// D_A(M) = RHom(M, A): transpose of a free resolution with negated weights.
pub fn dual_a(ring: &GradedRing, m: &GradedModulePresentation, caps: &Caps) -> Result<ComplexOfFree> {
    let res = free_resolution(ring, &m.pres, caps.max_res_len, caps)?;
    if res.truncated {
        return Err(Error::Cap("free resolution reached the length cap".into()));
    }
    Ok(res.complex.dual(ring.nvars()))
}

pub fn dual_a_complex(ring: &GradedRing, p: &ComplexOfFree) -> ComplexOfFree {
    p.dual(ring.nvars())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WindowSide {
    Geq,
    Leq,
}

/// Windowed data: the carrier restricted to weights ≥ bound (Geq) or read at -i for
/// weights i ≤ bound (Leq).
#[derive(Clone, Debug)]
pub struct WindowData {
    pub carrier: GradedModulePresentation,
    pub bound: i64,
    pub side: WindowSide,
}

impl From<&WindowedModule> for WindowData {
    fn from(w: &WindowedModule) -> Self {
        WindowData { carrier: w.carrier.clone(), bound: w.cutoff, side: WindowSide::Geq }
    }
}

impl WindowData {
    pub fn dim(&self, ring: &GradedRing, i: i64, caps: &Caps) -> Result<Dim> {
        match self.side {
            WindowSide::Geq if i >= self.bound => self.carrier.dim(ring, i, caps),
            WindowSide::Leq if i <= self.bound => self.carrier.dim(ring, -i, caps),
            _ => Ok(Dim::Finite(0)),
        }
    }

    pub fn character(&self, ring: &GradedRing, window: Window, caps: &Caps) -> Result<Vec<Dim>> {
        window.weights().map(|i| self.dim(ring, i, caps)).collect()
    }
}

pub fn transpose(w: &WindowData) -> WindowData {
    WindowData {
        carrier: w.carrier.clone(),
        bound: -w.bound,
        side: match w.side {
            WindowSide::Geq => WindowSide::Leq,
            WindowSide::Leq => WindowSide::Geq,
        },
    }
}

pub fn transpose_table(t: &CharacterTable) -> CharacterTable {
    let mut out = CharacterTable::new(Window::new(-t.window.hi, -t.window.lo));
    for &p in t.rows.keys() {
        for i in t.window.weights() {
            out.set(p, -i, t.get(p, i));
        }
    }
    out.normalized()
}

#[derive(Clone, Debug, Serialize)]
pub struct DualWindow {
    pub bound: i64,
    pub complex: SerializedComplex,
    pub table: CharacterTable,
    #[serde(skip)]
    pub free: ComplexOfFree,
}

/// Dual of a windowed module, through D_A of its Kan-extended window resolution,
/// restricted to weights ≤ -w.
pub fn dual_window(ring: &GradedRing, wm: &WindowedModule, window: Window, caps: &Caps) -> Result<DualWindow> {
    let res = window_resolution(ring, wm, caps)?;
    if res.truncated {
        return Err(Error::Cap("window resolution reached the descent cap".into()));
    }
    let d = dual_a_complex(ring, &kan_extend(&res));
    let bound = -wm.cutoff;
    let full = d.cohomology(ring, window, caps)?;
    let mut table = CharacterTable::new(window);
    for &p in full.rows.keys() {
        for i in window.weights().filter(|&i| i <= bound) {
            table.set(p, i, full.get(p, i));
        }
    }
    Ok(DualWindow { bound, complex: d.serialize(ring), table: table.normalized(), free: d })
}

#[derive(Clone, Debug, Serialize)]
pub struct TwistComparison {
    pub a: i64,
    pub matched: bool,
    pub mismatches: Vec<(i64, i64, String, String)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DualityReport {
    pub window: Window,
    pub dualizing: DualizingData,
    pub matched: Vec<i64>,
    pub plus_table: CharacterTable,
    pub minus_dual_table: CharacterTable,
    pub comparisons: Vec<TwistComparison>,
    pub indeterminate_weights: Vec<(i64, i64)>,
    pub assumptions: Vec<String>,
}

/// Compare RΓ_{I⁺}(A)(a)[1] with D_Y(RΓ_{I⁻}(A)) on the window for each a in the range.
pub fn duality_condition_check(
    ring: &GradedRing,
    window: Window,
    a_range: (i64, i64),
    dualizing: Option<DualizingData>,
    engine: Engine,
    caps: &Caps,
) -> Result<DualityReport> {
    let data = dualizing
        .or_else(|| DualizingData::infer(ring))
        .ok_or_else(|| Error::Input("A₀ dimension must be supplied for a quotient ring".into()))?;
    let a_module = GradedModulePresentation::free(vec![0]);
    let wide = Window::new(window.lo + a_range.0.min(0), window.hi + a_range.1.max(0));
    let plus = local_cohomology(ring, &a_module, Side::Plus, wide, engine, Flavor::Rgamma, caps)?.table;
    let mwin = Window::new(-window.hi, -window.lo);
    let minus = local_cohomology(ring, &a_module, Side::Minus, mwin, engine, Flavor::Rgamma, caps)?.table;
    let (dual, gaps) = dual_y_table(&minus, data);
    let mut degrees: Vec<i64> = plus.rows.keys().map(|p| p - 1).chain(dual.rows.keys().copied()).collect();
    degrees.sort();
    degrees.dedup();
    let mut comparisons = vec![];
    let mut matched = vec![];
    for a in a_range.0..=a_range.1 {
        let mut mismatches = vec![];
        for &q in &degrees {
            for i in window.weights() {
                let lhs = plus.get(q + 1, a + i);
                let rhs = dual.get(q, i);
                if lhs != rhs || lhs == Dim::Infinite {
                    mismatches.push((q, i, lhs.to_string(), rhs.to_string()));
                }
            }
        }
        let ok = mismatches.is_empty();
        if ok {
            matched.push(a);
        }
        mismatches.truncate(8);
        comparisons.push(TwistComparison { a, matched: ok, mismatches });
    }
    Ok(DualityReport {
        window,
        dualizing: data,
        matched,
        plus_table: plus,
        minus_dual_table: dual,
        comparisons,
        indeterminate_weights: gaps,
        assumptions: vec![
            "A is Gorenstein (not verified)".into(),
            "isomorphism certified at the level of characters only".into(),
        ],
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct HomPreservation {
    pub hom: Dim,
    pub dual_hom: Dim,
    pub equal: bool,
}

/// dim Hom⁰(W₁, W₂) against dim Hom⁰(D W₂, D W₁) for windows given by their resolutions.
pub fn hom_preservation_spotcheck(
    ring: &GradedRing,
    pairs: &[(WindowedModule, WindowedModule)],
    caps: &Caps,
) -> Result<Vec<HomPreservation>> {
    let mut out = vec![];
    for (w1, w2) in pairs {
        let q1 = kan_extend(&window_resolution(ring, w1, caps)?);
        let q2 = kan_extend(&window_resolution(ring, w2, caps)?);
        let hom = hom_d(ring, &q1, &q2.to_mc(), caps)?;
        let d1 = dual_a_complex(ring, &q1);
        let d2 = dual_a_complex(ring, &q2);
        let dual_hom = hom_d(ring, &d2, &d1.to_mc(), caps)?;
        out.push(HomPreservation { equal: hom == dual_hom, hom, dual_hom });
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct SupportImplication {
    pub premise: bool,
    pub conclusion: Option<bool>,
    pub holds: Option<bool>,
}

/// If RΓ_{I⁺}(M) lies in weights < w then RΓ_{I⁻}(D_A M) lies in weights > -w + a.
pub fn support_implication(
    ring: &GradedRing,
    m: &GradedModulePresentation,
    w: i64,
    a: i64,
    window: Window,
    caps: &Caps,
) -> Result<SupportImplication> {
    let plus = local_cohomology(ring, m, Side::Plus, window, Engine::Koszul, Flavor::Rgamma, caps)?.table;
    let premise = plus.rows.keys().all(|&p| window.weights().filter(|&i| i >= w).all(|i| plus.get(p, i).is_zero()));
    let d = dual_a(ring, m, caps)?.to_mc();
    let fs = ideal_gens(ring, Side::Minus);
    let conclusion = match stabilize(ring, &d, &fs, Flavor::Rgamma, window, caps)? {
        Some(s) => Some(
            s.table.rows.keys().all(|&p| window.weights().filter(|&i| i <= -w + a).all(|i| s.table.get(p, i).is_zero())),
        ),
        None => None,
    };
    let holds = if !premise { Some(true) } else { conclusion };
    Ok(SupportImplication { premise, conclusion, holds })
}
