//! Finitely generated graded modules, subquotients of free modules, window modules,
//! characters and weight-zero Hom.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{
    kernel, prune_presentation, relations_gb, submodule_gb, Caps, FreeModule, GradedMatrix, GroebnerBasis, Vector,
};
use crate::linalg::{self, Row};
use crate::ringcore::{mono_weight, GradedRing, Monomial, Polynomial, Rational};
use crate::staircase::{count_standard, enumerate_standard, Dim};

/// Weight window `lo..=hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
}

impl Window {
    pub fn new(lo: i64, hi: i64) -> Self {
        Window { lo, hi }
    }

    pub fn weights(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }

    pub fn len(&self) -> usize {
        (self.hi - self.lo + 1).max(0) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.hi < self.lo
    }

    pub fn contains(&self, i: i64) -> bool {
        self.lo <= i && i <= self.hi
    }

    pub fn clip_below(&self, w: i64) -> Window {
        Window { lo: self.lo.max(w), hi: self.hi }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CharMode {
    Weight,
    Multidegree,
}

/// Dimensions per (cohomological degree, weight); modules use degree 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacterTable {
    pub mode: CharMode,
    pub window: Window,
    pub rows: BTreeMap<i64, Vec<Dim>>,
}

impl CharacterTable {
    pub fn new(window: Window) -> Self {
        CharacterTable { mode: CharMode::Weight, window, rows: BTreeMap::new() }
    }

    pub fn get(&self, p: i64, i: i64) -> Dim {
        if !self.window.contains(i) {
            return Dim::Finite(0);
        }
        self.rows.get(&p).map(|r| r[(i - self.window.lo) as usize]).unwrap_or(Dim::Finite(0))
    }

    pub fn set(&mut self, p: i64, i: i64, d: Dim) {
        let n = self.window.len();
        let lo = self.window.lo;
        let row = self.rows.entry(p).or_insert_with(|| vec![Dim::Finite(0); n]);
        row[(i - lo) as usize] = d;
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.rows.keys().copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.values().all(|r| r.iter().all(|d| d.is_zero()))
    }

    /// Drop all-zero rows so tables compare structurally.
    pub fn normalized(&self) -> CharacterTable {
        let mut t = self.clone();
        t.rows.retain(|_, r| r.iter().any(|d| !d.is_zero()));
        t
    }

    /// Alternating sum per weight; `None` where any entry is infinite.
    pub fn euler(&self, i: i64) -> Option<i64> {
        let mut s = 0i64;
        for (p, r) in &self.rows {
            let d = r[(i - self.window.lo) as usize];
            let v = d.finite()? as i64;
            s += if p.rem_euclid(2) == 0 { v } else { -v };
        }
        Some(s)
    }

    pub fn add(&self, o: &CharacterTable) -> CharacterTable {
        assert_eq!(self.window, o.window);
        let mut t = self.clone();
        for (p, r) in &o.rows {
            for (k, d) in r.iter().enumerate() {
                let i = self.window.lo + k as i64;
                t.set(*p, i, t.get(*p, i) + *d);
            }
        }
        t
    }
}

/// Dimension of (F/U)_i from the leading monomials of a Gröbner basis of U.
pub fn quotient_dim(gb: &GroebnerBasis, ambient: &FreeModule, w: &[i64], i: i64) -> Dim {
    let lms = gb.leading_monomials(ambient.rank());
    let mut d = Dim::Finite(0);
    for (k, a) in ambient.weights.iter().enumerate() {
        d = d + count_standard(&lms[k], w, i - a);
        if d == Dim::Infinite {
            break;
        }
    }
    d
}

/// Standard monomials e_k·m of weight i outside the leading terms; `None` when infinite or too many.
pub fn weight_basis(
    gb: &GroebnerBasis,
    ambient: &FreeModule,
    w: &[i64],
    i: i64,
    limit: usize,
) -> Option<Vec<(usize, Monomial)>> {
    let lms = gb.leading_monomials(ambient.rank());
    let mut out = vec![];
    for (k, a) in ambient.weights.iter().enumerate() {
        let list = enumerate_standard(&lms[k], w, i - a, limit)?;
        for e in list {
            out.push((k, Monomial::new(e)));
        }
        if out.len() > limit {
            return None;
        }
    }
    Some(out)
}

/// Coordinates of the normal form of `v` in a weight basis.
pub fn coordinates(gb: &GroebnerBasis, basis: &[(usize, Monomial)], v: &Vector) -> Row {
    let nf = gb.normal_form(v);
    let mut row = vec![Rational::zero(); basis.len()];
    for (k, m, c) in nf.terms() {
        if let Some(pos) = basis.iter().position(|(bk, bm)| bk == k && bm == m) {
            row[pos] = c.clone();
        }
    }
    row
}

/// Monomials of weight exactly `target` (all variables); `None` when infinite or too many.
pub fn monomials_of_weight(ring: &GradedRing, target: i64, limit: usize) -> Option<Vec<Monomial>> {
    let lms: Vec<Vec<i32>> =
        relations_gb(ring).iter().map(|p| p.leading().unwrap().0.exps().to_vec()).collect();
    enumerate_standard(&lms, ring.w(), target, limit).map(|v| v.into_iter().map(Monomial::new).collect())
}

/// Z/B for submodules B ⊆ Z of a free module (J·F implicit in both).
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub ambient: FreeModule,
    pub z: Vec<Vector>,
    pub b: Vec<Vector>,
    cache: OnceLock<(GroebnerBasis, GroebnerBasis)>,
    pres_cache: OnceLock<GradedModulePresentation>,
}

impl Subquotient {
    pub fn new(ambient: FreeModule, z: Vec<Vector>, b: Vec<Vector>) -> Self {
        Subquotient { ambient, z, b, cache: OnceLock::new(), pres_cache: OnceLock::new() }
    }

    fn gbs(&self, ring: &GradedRing, caps: &Caps) -> Result<&(GroebnerBasis, GroebnerBasis)> {
        if let Some(c) = self.cache.get() {
            return Ok(c);
        }
        let gb_b = submodule_gb(ring, self.ambient.rank(), &self.b, caps)?;
        let mut zb = self.z.clone();
        zb.extend(self.b.iter().cloned());
        let gb_z = submodule_gb(ring, self.ambient.rank(), &zb, caps)?;
        let _ = self.cache.set((gb_b, gb_z));
        Ok(self.cache.get().unwrap())
    }

    pub fn boundary_gb(&self, ring: &GradedRing, caps: &Caps) -> Result<&GroebnerBasis> {
        Ok(&self.gbs(ring, caps)?.0)
    }

    pub fn cycle_gb(&self, ring: &GradedRing, caps: &Caps) -> Result<&GroebnerBasis> {
        Ok(&self.gbs(ring, caps)?.1)
    }

    pub fn z_weights(&self, ring: &GradedRing) -> Vec<i64> {
        self.z
            .iter()
            .map(|v| v.weight(&self.ambient.weights, ring.w()).flatten().unwrap_or(0))
            .collect()
    }

    /// Presentation of Z/B on the generators of Z.
    pub fn presentation(&self, ring: &GradedRing, caps: &Caps) -> Result<&GradedModulePresentation> {
        if let Some(p) = self.pres_cache.get() {
            return Ok(p);
        }
        let gb_b = self.boundary_gb(ring, caps)?;
        let z: Vec<Vector> = self.z.iter().filter(|v| !gb_b.contains(v)).cloned().collect();
        let zw: Vec<i64> =
            z.iter().map(|v| v.weight(&self.ambient.weights, ring.w()).flatten().unwrap_or(0)).collect();
        let bw: Vec<i64> =
            self.b.iter().map(|v| v.weight(&self.ambient.weights, ring.w()).flatten().unwrap_or(0)).collect();
        let m = z.len();
        let pres = if m == 0 {
            GradedModulePresentation::zero()
        } else {
            let mut cols = z.clone();
            cols.extend(self.b.iter().cloned());
            let src = FreeModule::new(zw.iter().chain(&bw).copied().collect());
            let mat = GradedMatrix::new(src, self.ambient.clone(), cols);
            let k = kernel(ring, &mat, caps)?;
            let rels: Vec<Vector> = k.cols.iter().map(|c| c.project(0, m)).filter(|c| !c.is_zero()).collect();
            let rw: Vec<i64> = rels.iter().map(|c| c.weight(&zw, ring.w()).flatten().unwrap_or(0)).collect();
            let g = GradedMatrix::new(FreeModule::new(rw), FreeModule::new(zw), rels);
            GradedModulePresentation { pres: prune_presentation(ring, &g), name: None, gb: OnceLock::new() }
        };
        let _ = self.pres_cache.set(pres);
        Ok(self.pres_cache.get().unwrap())
    }

    pub fn dim(&self, ring: &GradedRing, i: i64, caps: &Caps) -> Result<Dim> {
        let (gb_b, gb_z) = self.gbs(ring, caps)?;
        let w = ring.w();
        let db = quotient_dim(gb_b, &self.ambient, w, i);
        if let Dim::Finite(nb) = db {
            let nz = quotient_dim(gb_z, &self.ambient, w, i).finite().unwrap_or(0);
            return Ok(Dim::Finite(nb - nz));
        }
        if self.z.is_empty() {
            return Ok(Dim::Finite(0));
        }
        if gb_z_is_everything(gb_z, &self.ambient) {
            return Ok(db);
        }
        let p = self.presentation(ring, caps)?;
        p.dim(ring, i, caps)
    }

    pub fn character(&self, ring: &GradedRing, window: Window, caps: &Caps) -> Result<Vec<Dim>> {
        window.weights().map(|i| self.dim(ring, i, caps)).collect()
    }

    pub fn is_zero(&self, ring: &GradedRing, caps: &Caps) -> Result<bool> {
        let gb_b = self.boundary_gb(ring, caps)?;
        Ok(self.z.iter().all(|v| gb_b.contains(v)))
    }

    /// Q-basis representatives of the weight-i piece when finite.
    pub fn weight_piece_basis(&self, ring: &GradedRing, i: i64, caps: &Caps, limit: usize) -> Result<Option<Vec<Vector>>> {
        let gb_b = self.boundary_gb(ring, caps)?;
        let Some(basis) = weight_basis(gb_b, &self.ambient, ring.w(), i, limit) else {
            return Ok(None);
        };
        let zw = self.z_weights(ring);
        let mut cands: Vec<Vector> = vec![];
        for (k, z) in self.z.iter().enumerate() {
            let Some(ms) = monomials_of_weight(ring, i - zw[k], limit) else {
                return self.kernel_piece_basis(ring, i, &basis, caps, limit);
            };
            for m in ms {
                let v = gb_b.normal_form(&z.mul_term(&m, &Rational::from_integer(1.into())));
                if !v.is_zero() {
                    cands.push(v);
                }
            }
        }
        let rows: Vec<Row> = cands.iter().map(|v| coordinates(gb_b, &basis, v)).collect();
        let chosen = linalg::extend_basis(&[], &rows, basis.len());
        Ok(Some(chosen.into_iter().map(|k| cands[k].clone()).collect()))
    }

    /// (Z/B)_i as the kernel of (F/B)_i -> (F/(Z+B))_i.
    fn kernel_piece_basis(
        &self,
        ring: &GradedRing,
        i: i64,
        basis: &[(usize, Monomial)],
        caps: &Caps,
        limit: usize,
    ) -> Result<Option<Vec<Vector>>> {
        let (_, gb_z) = self.gbs(ring, caps)?;
        let Some(zbasis) = weight_basis(gb_z, &self.ambient, ring.w(), i, limit) else {
            return Ok(None);
        };
        let one = Rational::from_integer(1.into());
        let cols: Vec<Row> = basis
            .iter()
            .map(|(k, m)| coordinates(gb_z, &zbasis, &Vector::from_terms([(*k, m.clone(), one.clone())])))
            .collect();
        let rows = linalg::cols_to_rows(&cols, zbasis.len());
        let null = linalg::nullspace(&rows, basis.len());
        Ok(Some(
            null.iter()
                .map(|c| {
                    Vector::from_terms(
                        basis.iter().zip(c).filter(|(_, x)| !x.is_zero()).map(|((k, m), x)| (*k, m.clone(), x.clone())),
                    )
                })
                .collect(),
        ))
    }
}

fn gb_z_is_everything(gb: &GroebnerBasis, ambient: &FreeModule) -> bool {
    let lms = gb.leading_monomials(ambient.rank());
    lms.iter().all(|l| l.iter().any(|e| e.iter().all(|&x| x == 0)))
}

/// Cokernel of a weight-homogeneous matrix.
#[derive(Clone, Debug)]
pub struct GradedModulePresentation {
    pub pres: GradedMatrix,
    pub name: Option<String>,
    gb: OnceLock<GroebnerBasis>,
}

impl GradedModulePresentation {
    pub fn new(ring: &GradedRing, pres: GradedMatrix, name: Option<String>) -> Result<Self> {
        pres.check_homogeneous(ring.w())?;
        Ok(GradedModulePresentation { pres, name, gb: OnceLock::new() })
    }

    pub fn from_matrix(pres: GradedMatrix) -> Self {
        GradedModulePresentation { pres, name: None, gb: OnceLock::new() }
    }

    pub fn zero() -> Self {
        Self::free(vec![])
    }

    pub fn free(weights: Vec<i64>) -> Self {
        let f = FreeModule::new(weights);
        Self::from_matrix(GradedMatrix::zero(FreeModule::new(vec![]), f))
    }

    /// (A/(rels))(-a): one generator in weight a.
    pub fn cyclic(ring: &GradedRing, a: i64, rels: &[Polynomial]) -> Result<Self> {
        let mut cols = vec![];
        let mut ws = vec![];
        for r in rels {
            let wt = r
                .homogeneous_weight(ring.w())
                .ok_or_else(|| Error::Input(format!("relation '{}' is not homogeneous", ring.fmt(r))))?;
            if let Some(wt) = wt {
                ws.push(wt + a);
                cols.push(Vector::from_poly(0, r));
            }
        }
        Self::new(ring, GradedMatrix::new(FreeModule::new(ws), FreeModule::new(vec![a]), cols), None)
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = Some(name.to_string());
        self
    }

    pub fn gens(&self) -> &FreeModule {
        &self.pres.target
    }

    pub fn relations(&self) -> &[Vector] {
        &self.pres.cols
    }

    pub fn gb(&self, ring: &GradedRing, caps: &Caps) -> Result<&GroebnerBasis> {
        if let Some(g) = self.gb.get() {
            return Ok(g);
        }
        let g = submodule_gb(ring, self.gens().rank(), &self.pres.cols, caps)?;
        let _ = self.gb.set(g);
        Ok(self.gb.get().unwrap())
    }

    pub fn dim(&self, ring: &GradedRing, i: i64, caps: &Caps) -> Result<Dim> {
        Ok(quotient_dim(self.gb(ring, caps)?, self.gens(), ring.w(), i))
    }

    pub fn character(&self, ring: &GradedRing, window: Window, caps: &Caps) -> Result<CharacterTable> {
        let mut t = CharacterTable::new(window);
        for i in window.weights() {
            t.set(0, i, self.dim(ring, i, caps)?);
        }
        Ok(t)
    }

    pub fn twist(&self, i: i64) -> Self {
        Self::from_matrix(GradedMatrix::new(self.pres.source.twist(i), self.pres.target.twist(i), self.pres.cols.clone()))
    }

    pub fn direct_sum(&self, o: &Self) -> Self {
        let n = self.gens().rank();
        let mut cols = self.pres.cols.clone();
        cols.extend(o.pres.cols.iter().map(|c| c.shift(n)));
        Self::from_matrix(GradedMatrix::new(
            self.pres.source.sum(&o.pres.source),
            self.pres.target.sum(&o.pres.target),
            cols,
        ))
    }

    pub fn to_subquotient(&self, nvars: usize) -> Subquotient {
        let z = (0..self.gens().rank()).map(|k| Vector::unit(k, nvars)).collect();
        Subquotient::new(self.gens().clone(), z, self.pres.cols.clone())
    }

    pub fn is_zero(&self, ring: &GradedRing, caps: &Caps) -> Result<bool> {
        let gb = self.gb(ring, caps)?;
        Ok((0..self.gens().rank()).all(|k| gb.contains(&Vector::unit(k, ring.nvars()))))
    }
}

pub fn twist(m: &GradedModulePresentation, i: i64) -> GradedModulePresentation {
    m.twist(i)
}

pub fn character(
    ring: &GradedRing,
    m: &GradedModulePresentation,
    window: Window,
    caps: &Caps,
) -> Result<CharacterTable> {
    m.character(ring, window, caps)
}

/// A graded module seen only in weights ≥ cutoff.
#[derive(Clone, Debug)]
pub struct WindowedModule {
    pub carrier: GradedModulePresentation,
    pub cutoff: i64,
}

pub fn truncate_geq(m: &GradedModulePresentation, w: i64) -> WindowedModule {
    WindowedModule { carrier: m.clone(), cutoff: w }
}

impl WindowedModule {
    pub fn truncate_geq(&self, w: i64) -> WindowedModule {
        WindowedModule { carrier: self.carrier.clone(), cutoff: self.cutoff.max(w) }
    }

    pub fn character(&self, ring: &GradedRing, window: Window, caps: &Caps) -> Result<CharacterTable> {
        let mut t = CharacterTable::new(window);
        for i in window.weights() {
            let d = if i >= self.cutoff { self.carrier.dim(ring, i, caps)? } else { Dim::Finite(0) };
            t.set(0, i, d);
        }
        Ok(t)
    }
}

/// Stabilization constants (d, N0) of the positive part of the ring.
pub fn stabilization_constants(ring: &GradedRing) -> (i64, i64) {
    use num_integer::Integer;
    let pos: Vec<i64> = ring.w().iter().copied().filter(|&x| x > 0).collect();
    let d = pos.iter().fold(1i64, |a, &b| a.lcm(&b));
    (d, pos.iter().sum())
}

#[derive(Clone, Debug, Serialize)]
pub struct WindowGenerators {
    pub cutoff: i64,
    pub d: i64,
    pub n0: i64,
    #[serde(skip)]
    pub gens: Vec<(i64, Vector)>,
    pub weights: Vec<i64>,
}

/// Monomials in the positive-weight variables with weight in `lo..=hi`.
fn positive_monomials(ring: &GradedRing, lo: i64, hi: i64) -> Vec<Monomial> {
    let n = ring.nvars();
    let pos: Vec<usize> = (0..n).filter(|&v| ring.w()[v] > 0).collect();
    let ws: Vec<i64> = pos.iter().map(|&v| ring.w()[v]).collect();
    let mut out = vec![];
    for t in lo.max(1)..=hi {
        if let Some(list) = enumerate_standard(&[], &ws, t, 100_000) {
            for e in list {
                let mut full = vec![0; n];
                for (k, &v) in pos.iter().enumerate() {
                    full[v] = e[k];
                }
                out.push(Monomial::new(full));
            }
        }
    }
    out
}

/// Candidate generators of (Z/B)_{≥w}: window generators before minimisation, reduced
/// modulo B with zeros dropped.
pub fn window_candidates(ring: &GradedRing, sq: &Subquotient, w: i64, caps: &Caps) -> Result<Vec<(i64, Vector)>> {
    let maxw = ring.w().iter().copied().filter(|&x| x > 0).max().unwrap_or(1);
    let zw = sq.z_weights(ring);
    let gb_b = sq.boundary_gb(ring, caps)?;
    let mut cands: Vec<(i64, Vector)> = vec![];
    for (k, z) in sq.z.iter().enumerate() {
        let a = zw[k];
        if a >= w {
            cands.push((a, z.clone()));
        } else {
            let e = w - a;
            for m in positive_monomials(ring, e, e + maxw - 1) {
                let wt = a + mono_weight(&m, ring.w());
                cands.push((wt, z.mul_term(&m, &Rational::from_integer(1.into()))));
            }
        }
    }
    let mut cands: Vec<(i64, Vector)> =
        cands.into_iter().map(|(wt, v)| (wt, gb_b.normal_form(&v))).filter(|(_, v)| !v.is_zero()).collect();
    cands.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.max_degree().cmp(&b.1.max_degree())));
    Ok(cands)
}

/// (Z/B)_i = 0 for every i ≥ w.
pub fn window_vanishes(ring: &GradedRing, sq: &Subquotient, w: i64, caps: &Caps) -> Result<bool> {
    Ok(window_candidates(ring, sq, w, caps)?.is_empty())
}

/// Generators of (Z/B)_{≥w} over the window category, minimised greedily.
pub fn window_generators_sq(ring: &GradedRing, sq: &Subquotient, w: i64, caps: &Caps) -> Result<WindowGenerators> {
    let (d, n0) = stabilization_constants(ring);
    let cands = window_candidates(ring, sq, w, caps)?;
    let rank = sq.ambient.rank();
    let mut kept: Vec<(i64, Vector)> = vec![];
    for (wt, v) in cands {
        let mut span: Vec<Vector> = sq.b.clone();
        span.extend(kept.iter().map(|x| x.1.clone()));
        let gb = submodule_gb(ring, rank, &span, caps)?;
        if !gb.contains(&v) {
            kept.push((wt, v));
        }
    }
    if kept.len() <= 24 {
        let mut i = kept.len();
        while i > 0 {
            i -= 1;
            let mut span: Vec<Vector> = sq.b.clone();
            span.extend(kept.iter().enumerate().filter(|(j, _)| *j != i).map(|x| x.1 .1.clone()));
            let gb = submodule_gb(ring, rank, &span, caps)?;
            if gb.contains(&kept[i].1) {
                kept.remove(i);
            }
        }
    }
    let weights = kept.iter().map(|x| x.0).collect();
    Ok(WindowGenerators { cutoff: w, d, n0, gens: kept, weights })
}

pub fn window_generators(ring: &GradedRing, wm: &WindowedModule, caps: &Caps) -> Result<WindowGenerators> {
    window_generators_sq(ring, &wm.carrier.to_subquotient(ring.nvars()), wm.cutoff, caps)
}

#[derive(Clone, Debug, Serialize)]
pub struct FgVerdict {
    pub finitely_generated: Option<bool>,
    pub generators: Option<WindowGenerators>,
    pub note: Option<String>,
}

pub fn is_fg_window_sq(ring: &GradedRing, sq: &Subquotient, w: i64, caps: &Caps) -> FgVerdict {
    match window_generators_sq(ring, sq, w, caps) {
        Ok(g) => FgVerdict { finitely_generated: Some(true), generators: Some(g), note: None },
        Err(e) => FgVerdict { finitely_generated: None, generators: None, note: Some(e.to_string()) },
    }
}

pub fn is_fg_window(ring: &GradedRing, wm: &WindowedModule, caps: &Caps) -> FgVerdict {
    is_fg_window_sq(ring, &wm.carrier.to_subquotient(ring.nvars()), wm.cutoff, caps)
}

/// Sub-window-module of W generated by the given elements, as a subquotient of the carrier.
pub fn generated_subwindow(ring: &GradedRing, sq: &Subquotient, gens: &[(i64, Vector)]) -> Subquotient {
    let _ = ring;
    Subquotient::new(sq.ambient.clone(), gens.iter().map(|g| g.1.clone()).collect(), sq.b.clone())
}

#[derive(Clone, Debug, Serialize)]
pub struct HomResult {
    pub dim: Dim,
    /// Each basis map as the images of the source generators.
    #[serde(skip)]
    pub basis: Option<Vec<Vec<Vector>>>,
}

/// Hom_{Gr(A)}(M, N): degree-zero module maps.
pub fn hom_weight0(
    ring: &GradedRing,
    m: &GradedModulePresentation,
    n: &GradedModulePresentation,
    caps: &Caps,
) -> Result<HomResult> {
    let sq = hom_subquotient(ring, m, n, caps)?;
    let dim = sq.dim(ring, 0, caps)?;
    let basis = match dim {
        Dim::Finite(k) if k <= 64 => sq.weight_piece_basis(ring, 0, caps, 4096)?.map(|vs| {
            let nr = n.gens().rank();
            vs.iter().map(|v| (0..m.gens().rank()).map(|j| v.project(j * nr, (j + 1) * nr)).collect()).collect()
        }),
        _ => None,
    };
    Ok(HomResult { dim, basis })
}

/// Hom_A(M, N) as a subquotient of ⊕_j G(a_j), where G is the free cover of N.
pub fn hom_subquotient(
    ring: &GradedRing,
    m: &GradedModulePresentation,
    n: &GradedModulePresentation,
    caps: &Caps,
) -> Result<Subquotient> {
    let nv = ring.nvars();
    let g = n.gens();
    let nr = g.rank();
    let mr = m.gens().rank();
    let pr = m.relations().len();
    let mut aw = vec![];
    for a in &m.gens().weights {
        aw.extend(g.weights.iter().map(|b| b - a));
    }
    let ambient = FreeModule::new(aw);
    let mut tw = vec![];
    for b in &m.pres.source.weights {
        tw.extend(g.weights.iter().map(|x| x - b));
    }
    let target = FreeModule::new(tw);
    let mut cols = vec![];
    for j in 0..mr {
        for l in 0..nr {
            let mut acc = Vector::zero();
            for (k, r) in m.relations().iter().enumerate() {
                let p = r.entry(j, nv);
                if !p.is_zero() {
                    acc = acc.add(&Vector::from_poly(k * nr + l, &p));
                }
            }
            cols.push(acc);
        }
    }
    let mut ucols = vec![];
    let mut uw = vec![];
    for k in 0..pr {
        for (u, s) in n.relations().iter().zip(&n.pres.source.weights) {
            ucols.push(u.shift(k * nr));
            uw.push(s - m.pres.source.weights[k]);
        }
    }
    let full = GradedMatrix::new(
        FreeModule::new(ambient.weights.iter().chain(&uw).copied().collect()),
        target,
        cols.into_iter().chain(ucols).collect(),
    );
    let k = kernel(ring, &full, caps)?;
    let z: Vec<Vector> =
        k.cols.iter().map(|c| c.project(0, mr * nr)).filter(|c| !c.is_zero()).collect();
    let mut b = vec![];
    for j in 0..mr {
        for u in n.relations() {
            b.push(u.shift(j * nr));
        }
    }
    Ok(Subquotient::new(ambient, z, b))
}
