//! Local cohomology and Čech complexes: a monomial (torus) engine and a Koszul-colimit
//! engine, plus the fundamental triangle and weight bounds.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{Caps, GradedMatrix, Vector};
use crate::grmodule::{window_generators_sq, CharacterTable, GradedModulePresentation, Subquotient, Window};
use crate::komplex::{koszul_tensor, subsets_by_size, ModuleComplex};
use crate::linalg;
use crate::ringcore::{rat, GradedRing, Polynomial};
use crate::staircase::{count_solutions, Dim};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Torus,
    Koszul,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Plus,
    Minus,
}

impl Side {
    pub fn is_plus(&self) -> bool {
        *self == Side::Plus
    }
}

/// Which complex is evaluated: RΓ_I(M) or Č_I(M).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Rgamma,
    Cech,
}

/// Symbolic Čech complex: terms indexed by nonempty subsets, degree |S| - 1.
#[derive(Clone, Debug, Serialize)]
pub struct CechComplex {
    pub generators: Vec<String>,
    pub terms: Vec<(i64, Vec<Vec<usize>>)>,
}

pub fn cech_complex(ring: &GradedRing, ideal: &[Polynomial]) -> CechComplex {
    let r = ideal.len();
    let subs = subsets_by_size(r);
    let mut terms = vec![];
    for p in 1..=r {
        terms.push(((p - 1) as i64, subs.iter().filter(|s| s.len() == p).cloned().collect()));
    }
    CechComplex { generators: ideal.iter().map(|f| ring.fmt(f)).collect(), terms }
}

#[derive(Clone, Debug, Serialize)]
pub struct LocalCohomologyTable {
    pub engine: Engine,
    pub flavor: Flavor,
    pub table: CharacterTable,
    pub stabilization: Option<u32>,
    pub indeterminate: bool,
}

/// Diagonal monomial module ⊕_k (S/L_k)(-a_k).
#[derive(Clone, Debug)]
pub struct TorusModule {
    pub comps: Vec<(i64, Vec<Vec<i32>>)>,
}

/// Recognize a diagonal monomial presentation over a monomial ring.
pub fn torus_module(ring: &GradedRing, m: &GradedModulePresentation) -> Option<TorusModule> {
    if !ring.relations.iter().all(|r| r.is_monomial()) {
        return None;
    }
    let jmons: Vec<Vec<i32>> = ring.relations.iter().map(|r| r.terms()[0].0.exps().to_vec()).collect();
    let mut comps: Vec<(i64, Vec<Vec<i32>>)> = m.gens().weights.iter().map(|&a| (a, jmons.clone())).collect();
    for c in m.relations() {
        let t = c.terms();
        if t.len() != 1 {
            return None;
        }
        comps[t[0].0].1.push(t[0].1.exps().to_vec());
    }
    Some(TorusModule { comps })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Ty {
    Neg,
    Exact(i32),
    AtLeast(i32),
}

fn cech_dims_for(types: &[Ty], gens: &[Vec<i32>], vars: &[usize], flavor: Flavor) -> Vec<u64> {
    let r = vars.len();
    let subs: Vec<Vec<usize>> = subsets_by_size(r)
        .into_iter()
        .filter(|s| flavor == Flavor::Rgamma || !s.is_empty())
        .collect();
    let nonzero = |s: &Vec<usize>| -> bool {
        let inv: Vec<usize> = s.iter().map(|&i| vars[i]).collect();
        for (u, t) in types.iter().enumerate() {
            if *t == Ty::Neg && !inv.contains(&u) {
                return false;
            }
        }
        !gens.iter().any(|g| {
            g.iter().enumerate().all(|(u, &e)| {
                if inv.contains(&u) {
                    return true;
                }
                match types[u] {
                    Ty::Neg => false,
                    Ty::Exact(a) => e <= a,
                    Ty::AtLeast(a) => e <= a,
                }
            })
        })
    };
    let shift = if flavor == Flavor::Cech { 1 } else { 0 };
    let live: Vec<&Vec<usize>> = subs.iter().filter(|s| nonzero(s)).collect();
    let maxp = r;
    let mut dims = vec![0u64; maxp + 1];
    let by_deg = |p: usize| -> Vec<&Vec<usize>> { live.iter().copied().filter(|s| s.len() == p).collect() };
    let rank_of = |p: usize| -> usize {
        let src = by_deg(p);
        let tgt = by_deg(p + 1);
        if src.is_empty() || tgt.is_empty() {
            return 0;
        }
        let rows: Vec<Vec<_>> = tgt
            .iter()
            .map(|t| {
                src.iter()
                    .map(|s| {
                        if s.iter().all(|x| t.contains(x)) {
                            let extra = t.iter().find(|x| !s.contains(x)).unwrap();
                            let before = s.iter().filter(|&&u| u < *extra).count();
                            rat(if before % 2 == 0 { 1 } else { -1 })
                        } else {
                            rat(0)
                        }
                    })
                    .collect()
            })
            .collect();
        linalg::rank(&rows, src.len())
    };
    for p in 0..=r {
        let n = by_deg(p).len();
        if n == 0 {
            continue;
        }
        let out = rank_of(p);
        let inc = if p == 0 { 0 } else { rank_of(p - 1) };
        let h = n - out - inc;
        if p >= shift {
            dims[p - shift] += h as u64;
        }
    }
    dims
}

/// Torus-engine evaluation of H^p of RΓ_V(M) or Č_V(M) in a weight window.
pub fn torus_table(
    ring: &GradedRing,
    m: &TorusModule,
    vars: &[usize],
    window: Window,
    flavor: Flavor,
) -> CharacterTable {
    let n = ring.nvars();
    let w = ring.w();
    let mut table = CharacterTable::new(window);
    for (a, gens) in &m.comps {
        let mut e = vec![0i32; n];
        for g in gens {
            for u in 0..n {
                e[u] = e[u].max(g[u]);
            }
        }
        let mut options: Vec<Vec<Ty>> = vec![];
        for u in 0..n {
            let mut o = vec![];
            if vars.contains(&u) {
                o.push(Ty::Neg);
            }
            for v in 0..e[u] {
                o.push(Ty::Exact(v));
            }
            o.push(Ty::AtLeast(e[u]));
            options.push(o);
        }
        let mut idx = vec![0usize; n];
        loop {
            let types: Vec<Ty> = (0..n).map(|u| options[u][idx[u]]).collect();
            let dims = cech_dims_for(&types, gens, vars, flavor);
            if dims.iter().any(|&d| d > 0) {
                let mut base = *a;
                let mut free = vec![];
                for (u, t) in types.iter().enumerate() {
                    match t {
                        Ty::Neg => {
                            base -= w[u];
                            free.push(-w[u]);
                        }
                        Ty::Exact(v) => base += *v as i64 * w[u],
                        Ty::AtLeast(v) => {
                            base += *v as i64 * w[u];
                            free.push(w[u]);
                        }
                    }
                }
                for i in window.weights() {
                    let cnt = count_solutions(&free, i - base);
                    if cnt.is_zero() {
                        continue;
                    }
                    for (p, &h) in dims.iter().enumerate() {
                        if h > 0 {
                            let cur = table.get(p as i64, i);
                            table.set(p as i64, i, cur + cnt.times(h));
                        }
                    }
                }
            }
            let mut k = 0;
            while k < n {
                idx[k] += 1;
                if idx[k] < options[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == n {
                break;
            }
        }
    }
    table.normalized()
}

/// Multidegree cohomology h^p at a single exponent vector (torus engine).
pub fn torus_multidegree(m: &TorusModule, vars: &[usize], alpha: &[i32], comp: usize, flavor: Flavor) -> Vec<u64> {
    let gens = &m.comps[comp].1;
    let types: Vec<Ty> = alpha
        .iter()
        .map(|&x| if x < 0 { Ty::Neg } else { Ty::Exact(x) })
        .collect();
    if alpha.iter().enumerate().any(|(u, &x)| x < 0 && !vars.contains(&u)) {
        return vec![0; vars.len() + 1];
    }
    cech_dims_for(&types, gens, vars, flavor)
}

pub fn ideal_gens(ring: &GradedRing, side: Side) -> Vec<Polynomial> {
    ring.ideal(side.is_plus()).to_vec()
}

/// Level-t Koszul model of RΓ_I(M) (or Č_I(M)) as a module complex.
pub fn koszul_model(
    ring: &GradedRing,
    x: &ModuleComplex,
    fs: &[Polynomial],
    t: u32,
    flavor: Flavor,
) -> Result<ModuleComplex> {
    if fs.is_empty() {
        return Ok(match flavor {
            Flavor::Rgamma => x.clone(),
            Flavor::Cech => ModuleComplex::zero(),
        });
    }
    koszul_tensor(ring, fs, t, x, flavor == Flavor::Cech)
}

/// Transition map from level t to level t2: block S is multiplied by ∏_{s∈S} f_s^{t2-t}.
pub fn transition_images(
    ring: &GradedRing,
    x: &ModuleComplex,
    fs: &[Polynomial],
    t: u32,
    t2: u32,
    flavor: Flavor,
    p: i64,
    z: &[Vector],
) -> Vec<Vector> {
    let r = fs.len();
    let subs: Vec<Vec<usize>> = subsets_by_size(r)
        .into_iter()
        .filter(|s| !(flavor == Flavor::Cech && s.is_empty()))
        .collect();
    let shift = if flavor == Flavor::Cech { 1 } else { 0 };
    // block layout of degree p: subsets in order, each a copy of X^{p+shift-|S|}
    let mut blocks = vec![];
    let mut off = 0usize;
    for s in &subs {
        let q = p + shift - s.len() as i64;
        if q >= x.lo && q <= x.hi() {
            let rk = x.term(q).rank();
            blocks.push((s.clone(), off, rk));
            off += rk;
        }
    }
    let mult: Vec<Polynomial> = blocks
        .iter()
        .map(|(s, _, _)| {
            let mut acc = Polynomial::one(ring.nvars());
            for &u in s {
                acc = acc.mul(&fs[u].pow(t2 - t));
            }
            acc
        })
        .collect();
    z.iter()
        .map(|v| {
            let mut out = Vector::zero();
            for (bi, (_, o, rk)) in blocks.iter().enumerate() {
                let part = v.project(*o, o + rk);
                if !part.is_zero() {
                    out = out.add(&part.mul_poly(&mult[bi]).shift(*o));
                }
            }
            out
        })
        .collect()
}

fn caps_for(caps: &Caps, fs: &[Polynomial], t: u32) -> Caps {
    let d: i64 = fs.iter().map(|f| f.total_degree()).sum();
    caps.widened(d * t as i64 * 2)
}

fn level_table(
    ring: &GradedRing,
    x: &ModuleComplex,
    fs: &[Polynomial],
    t: u32,
    flavor: Flavor,
    window: Window,
    caps: &Caps,
) -> Result<(ModuleComplex, CharacterTable)> {
    let c = caps_for(caps, fs, t);
    let k = koszul_model(ring, x, fs, t, flavor)?;
    let tab = k.cohomology(ring, window, &c)?.normalized();
    Ok((k, tab))
}

fn transition_iso(
    ring: &GradedRing,
    x: &ModuleComplex,
    fs: &[Polynomial],
    t: u32,
    t2: u32,
    flavor: Flavor,
    k1: &ModuleComplex,
    k2: &ModuleComplex,
    tab: &CharacterTable,
    window: Window,
    caps: &Caps,
) -> Result<bool> {
    let c = caps_for(caps, fs, t2);
    for p in k1.lo..=k1.hi() {
        if !tab.rows.contains_key(&p) {
            continue;
        }
        let h1 = k1.cohomology_sq(ring, p, &c)?;
        let h2 = k2.cohomology_sq(ring, p, &c)?;
        let img = transition_images(ring, x, fs, t, t2, flavor, p, &h1.z);
        let sq = Subquotient::new(h2.ambient.clone(), img, h2.b.clone());
        for i in window.weights() {
            let d = sq.dim(ring, i, &c)?;
            let want = tab.get(p, i);
            if d != want {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub const KOSZUL_LEVELS: [u32; 7] = [1, 2, 4, 8, 16, 32, 64];

#[derive(Clone, Debug)]
pub struct Stabilized {
    pub t: u32,
    pub model: ModuleComplex,
    pub table: CharacterTable,
}

/// Find the first level t whose window cohomology agrees with level 2t (with an
/// isomorphic transition map) and with the spot-checked level 4t.
pub fn stabilize(
    ring: &GradedRing,
    x: &ModuleComplex,
    fs: &[Polynomial],
    flavor: Flavor,
    window: Window,
    caps: &Caps,
) -> Result<Option<Stabilized>> {
    let mut prev: Option<(u32, ModuleComplex, CharacterTable)> = None;
    for &t in KOSZUL_LEVELS.iter() {
        let (k, tab) = level_table(ring, x, fs, t, flavor, window, caps)?;
        if let Some((t0, k0, tab0)) = &prev {
            if *tab0 == tab && transition_iso(ring, x, fs, *t0, t, flavor, k0, &k, tab0, window, caps)? {
                let t3 = t * 2;
                if t3 <= 64 {
                    let (_, tab3) = level_table(ring, x, fs, t3, flavor, window, caps)?;
                    if tab3 != tab {
                        prev = Some((t, k, tab));
                        continue;
                    }
                }
                return Ok(Some(Stabilized { t: *t0, model: k0.clone(), table: tab0.clone() }));
            }
        }
        if fs.is_empty() {
            return Ok(Some(Stabilized { t, model: k, table: tab }));
        }
        prev = Some((t, k, tab));
    }
    Ok(None)
}

pub fn local_cohomology(
    ring: &GradedRing,
    m: &GradedModulePresentation,
    side: Side,
    window: Window,
    engine: Engine,
    flavor: Flavor,
    caps: &Caps,
) -> Result<LocalCohomologyTable> {
    let fs = ideal_gens(ring, side);
    match engine {
        Engine::Torus => {
            let vars = GradedRing::ideal_variables(&fs)
                .ok_or_else(|| Error::Unsupported("torus engine needs an ideal generated by variables".into()))?;
            if !ring.torus {
                return Err(Error::Unsupported("torus engine needs a monomial ring".into()));
            }
            let tm = torus_module(ring, m)
                .ok_or_else(|| Error::Unsupported("torus engine needs a diagonal monomial presentation".into()))?;
            Ok(LocalCohomologyTable {
                engine,
                flavor,
                table: torus_table(ring, &tm, &vars, window, flavor),
                stabilization: None,
                indeterminate: false,
            })
        }
        Engine::Koszul => {
            let x = ModuleComplex::from_module(m, 0);
            match stabilize(ring, &x, &fs, flavor, window, caps)? {
                Some(s) => Ok(LocalCohomologyTable {
                    engine,
                    flavor,
                    table: s.table,
                    stabilization: Some(s.t),
                    indeterminate: false,
                }),
                None => {
                    let (_, tab) = level_table(ring, &x, &fs, 64, flavor, window, caps)?;
                    Ok(LocalCohomologyTable { engine, flavor, table: tab, stabilization: None, indeterminate: true })
                }
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TriangleRow {
    pub weight: i64,
    pub pass: Option<bool>,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct TriangleReport {
    pub rows: Vec<TriangleRow>,
    pub pass: bool,
}

/// Long exact sequence of RΓ_I(M) -> M -> Č_I(M) checked by dimensions, weight by weight.
pub fn triangle_check(
    ring: &GradedRing,
    m: &GradedModulePresentation,
    side: Side,
    window: Window,
    engine: Engine,
    caps: &Caps,
) -> Result<TriangleReport> {
    let rg = local_cohomology(ring, m, side, window, engine, Flavor::Rgamma, caps)?.table;
    let ch = local_cohomology(ring, m, side, window, engine, Flavor::Cech, caps)?.table;
    let mt = m.character(ring, window, caps)?;
    let r = ideal_gens(ring, side).len() as i64;
    let mut rows = vec![];
    for i in window.weights() {
        let mut ok = Some(true);
        let mut notes = vec![];
        // 0 -> H0_I -> M -> H0 Č -> H1_I -> 0
        let seq = [rg.get(0, i), mt.get(0, i), ch.get(0, i), rg.get(1, i)];
        if seq.iter().all(|d| d.finite().is_some()) {
            let v: Vec<i64> = seq.iter().map(|d| d.finite().unwrap() as i64).collect();
            if v[0] - v[1] + v[2] - v[3] != 0 {
                ok = Some(false);
            }
            notes.push(format!("{} - {} + {} - {}", v[0], v[1], v[2], v[3]));
        } else {
            let infinite = seq.iter().filter(|d| **d == Dim::Infinite).count();
            if infinite == 1 {
                ok = Some(false);
            } else if ok == Some(true) {
                ok = None;
            }
            notes.push("infinite pieces".to_string());
        }
        for p in 1..=r {
            if ch.get(p, i) != rg.get(p + 1, i) {
                ok = Some(false);
                notes.push(format!("H^{}(Č) ≠ H^{}_I", p, p + 1));
            }
        }
        rows.push(TriangleRow { weight: i, pass: ok, detail: notes.join("; ") });
    }
    let pass = rows.iter().all(|r| r.pass != Some(false));
    Ok(TriangleReport { rows, pass })
}

#[derive(Clone, Debug, Serialize)]
pub struct WeightBound {
    pub bound: Option<i64>,
    pub overestimate: bool,
    pub engine: Engine,
}

/// c⁺ with RΓ_{I⁺}(M)_i = 0 for i ≥ c⁺ (side plus), or c⁻ with RΓ_{I⁻}(M)_i = 0 for i ≤ c⁻.
pub fn weight_vanishing_bound(
    ring: &GradedRing,
    m: &GradedModulePresentation,
    side: Side,
    caps: &Caps,
) -> Result<WeightBound> {
    let fs = ideal_gens(ring, side);
    if let (true, Some(vars), Some(tm)) = (ring.torus, GradedRing::ideal_variables(&fs), torus_module(ring, m)) {
        return Ok(WeightBound { bound: torus_extreme(ring, &tm, &vars, side), overestimate: false, engine: Engine::Torus });
    }
    let maxd = fs.iter().filter_map(|f| f.homogeneous_weight(ring.w()).flatten()).map(|d| d.abs()).max().unwrap_or(0);
    let r = fs.len() as i64;
    let ws = &m.gens().weights;
    if ws.is_empty() {
        return Ok(WeightBound { bound: Some(0), overestimate: true, engine: Engine::Koszul });
    }
    let mut c = if side.is_plus() {
        ws.iter().max().unwrap() + r * maxd + 1
    } else {
        ws.iter().min().unwrap() - r * maxd - 1
    };
    let x = ModuleComplex::from_module(m, 0);
    // certify the crude bound at the stabilization level; widen if needed
    for _ in 0..16 {
        if certify_vanishing(ring, &x, &fs, side, c, caps)? {
            return Ok(WeightBound { bound: Some(c), overestimate: true, engine: Engine::Koszul });
        }
        c += if side.is_plus() { maxd.max(1) } else { -maxd.max(1) };
    }
    Ok(WeightBound { bound: None, overestimate: true, engine: Engine::Koszul })
}

fn torus_extreme(ring: &GradedRing, tm: &TorusModule, vars: &[usize], side: Side) -> Option<i64> {
    // scan a wide window; library-sized inputs are supported well inside it
    let lo = -64;
    let hi = 64;
    let t = torus_table(ring, tm, vars, Window::new(lo, hi), Flavor::Rgamma);
    let mut support: Vec<i64> = vec![];
    for r in t.rows.values() {
        for (k, d) in r.iter().enumerate() {
            if !d.is_zero() {
                support.push(lo + k as i64);
            }
        }
    }
    if side.is_plus() {
        Some(support.iter().max().map(|m| m + 1).unwrap_or(lo))
    } else {
        Some(support.iter().min().map(|m| m - 1).unwrap_or(hi))
    }
}

/// True if every level-t cohomology (t at the end of the schedule) vanishes beyond c,
/// certified with window generators (exact, not window-limited).
pub fn certify_vanishing(
    ring: &GradedRing,
    x: &ModuleComplex,
    fs: &[Polynomial],
    side: Side,
    c: i64,
    caps: &Caps,
) -> Result<bool> {
    for &t in &[1u32, 2, 4] {
        let k = koszul_model(ring, x, fs, t, Flavor::Rgamma)?;
        let kc = caps_for(caps, fs, t);
        let k = if side.is_plus() { k } else { negate_weights(&k) };
        let ringn = if side.is_plus() { ring.clone() } else { negated_ring(ring) };
        let cc = if side.is_plus() { c } else { -c };
        for p in k.lo..=k.hi() {
            let sq = k.cohomology_sq(&ringn, p, &kc)?;
            let g = window_generators_sq(&ringn, &sq, cc, &kc)?;
            if !g.gens.is_empty() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The same ring with all weights negated.
pub fn negated_ring(ring: &GradedRing) -> GradedRing {
    crate::ringcore::make_graded_ring(
        ring.vars.clone(),
        ring.w().iter().map(|a| -a).collect(),
        ring.relations.clone(),
        Some(ring.i_minus.clone()),
        Some(ring.i_plus.clone()),
    )
    .expect("negated ring")
}

pub fn negate_weights(x: &ModuleComplex) -> ModuleComplex {
    let neg = |f: &crate::groebner::FreeModule| crate::groebner::FreeModule::new(f.weights.iter().map(|a| -a).collect());
    ModuleComplex {
        lo: x.lo,
        terms: x.terms.iter().map(neg).collect(),
        rels: x.rels.clone(),
        diffs: x.diffs.iter().map(|d| GradedMatrix::new(neg(&d.source), neg(&d.target), d.cols.clone())).collect(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossCheck {
    pub agree: bool,
    pub mismatches: Vec<(String, i64, i64)>,
    pub torus: LocalCohomologyTable,
    pub koszul: LocalCohomologyTable,
}

pub fn cross_engine_check(
    ring: &GradedRing,
    m: &GradedModulePresentation,
    side: Side,
    window: Window,
    flavor: Flavor,
    caps: &Caps,
) -> Result<CrossCheck> {
    let a = local_cohomology(ring, m, side, window, Engine::Torus, flavor, caps)?;
    let b = local_cohomology(ring, m, side, window, Engine::Koszul, flavor, caps)?;
    let mut mismatches = vec![];
    let mut degs: Vec<i64> = a.table.degrees();
    degs.extend(b.table.degrees());
    degs.sort();
    degs.dedup();
    for p in degs {
        for i in window.weights() {
            if a.table.get(p, i) != b.table.get(p, i) {
                mismatches.push((format!("{:?}", flavor).to_lowercase(), p, i));
            }
        }
    }
    Ok(CrossCheck { agree: mismatches.is_empty() && !b.indeterminate, mismatches, torus: a, koszul: b })
}

/// Whether M is I-power torsion: each generator killed by f^t for each f, t ≤ cap.
pub fn is_torsion(
    ring: &GradedRing,
    m: &GradedModulePresentation,
    fs: &[Polynomial],
    cap: u32,
    caps: &Caps,
) -> Result<Option<bool>> {
    let gb = m.gb(ring, &caps.widened(cap as i64 * 4))?;
    let nv = ring.nvars();
    for k in 0..m.gens().rank() {
        for f in fs {
            let mut ok = false;
            let mut v = Vector::unit(k, nv);
            for _ in 0..cap {
                v = gb.normal_form(&v.mul_poly(f));
                if v.is_zero() {
                    ok = true;
                    break;
                }
            }
            if !ok {
                return Ok(Some(false));
            }
        }
    }
    Ok(Some(true))
}
