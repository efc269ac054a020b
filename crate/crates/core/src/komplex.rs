//! Bounded cochain complexes of graded free modules and of finitely presented modules.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{submodule_gb, syzygy_gens, Caps, FreeModule, GradedMatrix, Vector};
use crate::grmodule::{CharacterTable, GradedModulePresentation, Subquotient, Window};
use crate::ringcore::{rat, GradedRing, Polynomial};
use crate::staircase::Dim;

/// Complex of free modules; `diffs[k]` maps `terms[k]` (degree lo+k) to `terms[k+1]`.
#[derive(Clone, Debug)]
pub struct ComplexOfFree {
    pub lo: i64,
    pub terms: Vec<FreeModule>,
    pub diffs: Vec<GradedMatrix>,
}

impl ComplexOfFree {
    pub fn new(lo: i64, terms: Vec<FreeModule>, diffs: Vec<GradedMatrix>, ring: &GradedRing) -> Result<Self> {
        let c = ComplexOfFree { lo, terms, diffs };
        c.to_mc().validate(ring)?;
        Ok(c)
    }

    pub(crate) fn new_unchecked(lo: i64, terms: Vec<FreeModule>, diffs: Vec<GradedMatrix>) -> Self {
        ComplexOfFree { lo, terms, diffs }
    }

    pub fn zero() -> Self {
        ComplexOfFree { lo: 0, terms: vec![], diffs: vec![] }
    }

    /// A single free module in degree `p`.
    pub fn single(f: FreeModule, p: i64) -> Self {
        ComplexOfFree { lo: p, terms: vec![f], diffs: vec![] }
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.terms.len() as i64 - 1
    }

    pub fn term(&self, p: i64) -> FreeModule {
        let k = p - self.lo;
        if k < 0 || k >= self.terms.len() as i64 {
            FreeModule::new(vec![])
        } else {
            self.terms[k as usize].clone()
        }
    }

    pub fn to_mc(&self) -> ModuleComplex {
        ModuleComplex {
            lo: self.lo,
            terms: self.terms.clone(),
            rels: vec![vec![]; self.terms.len()],
            diffs: self.diffs.clone(),
        }
    }

    pub fn generator_weights(&self) -> Vec<i64> {
        self.terms.iter().flat_map(|t| t.weights.iter().copied()).collect()
    }

    pub fn total_rank(&self) -> usize {
        self.terms.iter().map(|t| t.rank()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_rank() == 0
    }

    pub fn twist(&self, i: i64) -> ComplexOfFree {
        let m = self.to_mc().twist(i);
        ComplexOfFree { lo: m.lo, terms: m.terms, diffs: m.diffs }
    }

    pub fn shift(&self, n: i64) -> ComplexOfFree {
        let m = self.to_mc().shift(n);
        ComplexOfFree { lo: m.lo, terms: m.terms, diffs: m.diffs }
    }

    /// Drop zero terms at both ends.
    pub fn trimmed(&self) -> ComplexOfFree {
        let m = self.to_mc().trimmed();
        ComplexOfFree { lo: m.lo, terms: m.terms, diffs: m.diffs }
    }

    /// Transpose with negated weights: degree p goes to degree -p.
    pub fn dual(&self, nvars: usize) -> ComplexOfFree {
        if self.terms.is_empty() {
            return ComplexOfFree::zero();
        }
        let mut terms: Vec<FreeModule> =
            self.terms.iter().rev().map(|t| FreeModule::new(t.weights.iter().map(|a| -a).collect())).collect();
        let mut diffs: Vec<GradedMatrix> = vec![];
        let n = self.terms.len();
        // degree -p term is dual of degree p; differential -p -> -p+1 is transpose of d^{p-1}
        for k in (0..n - 1).rev() {
            diffs.push(self.diffs[k].dual(nvars));
        }
        if terms.is_empty() {
            terms = vec![];
        }
        ComplexOfFree { lo: -self.hi(), terms, diffs }
    }

    pub fn cohomology(&self, ring: &GradedRing, window: Window, caps: &Caps) -> Result<CharacterTable> {
        self.to_mc().cohomology(ring, window, caps)
    }

    pub fn serialize(&self, ring: &GradedRing) -> SerializedComplex {
        self.to_mc().serialize(ring)
    }
}

/// Complex whose degree-p term is F^p / R^p (plus J·F^p).
#[derive(Clone, Debug)]
pub struct ModuleComplex {
    pub lo: i64,
    pub terms: Vec<FreeModule>,
    pub rels: Vec<Vec<Vector>>,
    pub diffs: Vec<GradedMatrix>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SerializedTerm {
    pub degree: i64,
    pub rank: usize,
    pub generator_weights: Vec<i64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub relations: Vec<Vec<String>>,
    /// Columns of the outgoing differential.
    pub differential: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SerializedComplex {
    pub terms: Vec<SerializedTerm>,
}

impl ModuleComplex {
    pub fn zero() -> Self {
        ModuleComplex { lo: 0, terms: vec![], rels: vec![], diffs: vec![] }
    }

    pub fn from_module(m: &GradedModulePresentation, p: i64) -> Self {
        ModuleComplex { lo: p, terms: vec![m.gens().clone()], rels: vec![m.relations().to_vec()], diffs: vec![] }
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.terms.len() as i64 - 1
    }

    fn idx(&self, p: i64) -> Option<usize> {
        let k = p - self.lo;
        if k < 0 || k >= self.terms.len() as i64 {
            None
        } else {
            Some(k as usize)
        }
    }

    pub fn term(&self, p: i64) -> FreeModule {
        self.idx(p).map(|k| self.terms[k].clone()).unwrap_or_else(|| FreeModule::new(vec![]))
    }

    pub fn rels_at(&self, p: i64) -> Vec<Vector> {
        self.idx(p).map(|k| self.rels[k].clone()).unwrap_or_default()
    }

    /// d^p : term(p) -> term(p+1).
    pub fn diff(&self, p: i64) -> GradedMatrix {
        match (self.idx(p), self.idx(p + 1)) {
            (Some(k), Some(_)) => self.diffs[k].clone(),
            _ => GradedMatrix::zero(self.term(p), self.term(p + 1)),
        }
    }

    pub fn validate(&self, ring: &GradedRing) -> Result<()> {
        let caps = Caps::default();
        let w = ring.w();
        if self.terms.len() != self.rels.len() || self.diffs.len() + 1 != self.terms.len().max(1) {
            return Err(Error::Input("complex has inconsistent term/differential counts".into()));
        }
        for p in self.lo..self.hi() {
            let d = self.diff(p);
            d.check_homogeneous(w)?;
            if d.source != self.term(p) || d.target != self.term(p + 1) {
                return Err(Error::Input(format!("differential in degree {} has wrong shape", p)));
            }
            let next = self.diff(p + 1);
            let gb = submodule_gb(ring, self.term(p + 2).rank(), &self.rels_at(p + 2), &caps)?;
            for c in &d.cols {
                if !gb.contains(&next.apply(c)) {
                    return Err(Error::Input(format!("d∘d ≠ 0 at degree {}", p)));
                }
            }
            let gb1 = submodule_gb(ring, self.term(p + 1).rank(), &self.rels_at(p + 1), &caps)?;
            for r in self.rels_at(p) {
                if !gb1.contains(&d.apply(&r)) {
                    return Err(Error::Input(format!("differential in degree {} does not respect relations", p)));
                }
            }
        }
        Ok(())
    }

    pub fn twist(&self, i: i64) -> ModuleComplex {
        ModuleComplex {
            lo: self.lo,
            terms: self.terms.iter().map(|t| t.twist(i)).collect(),
            rels: self.rels.clone(),
            diffs: self
                .diffs
                .iter()
                .map(|d| GradedMatrix::new(d.source.twist(i), d.target.twist(i), d.cols.clone()))
                .collect(),
        }
    }

    /// X[n]: degree p holds X^{p+n}, differential multiplied by (-1)^n.
    pub fn shift(&self, n: i64) -> ModuleComplex {
        let s = if n.rem_euclid(2) == 0 { rat(1) } else { rat(-1) };
        ModuleComplex {
            lo: self.lo - n,
            terms: self.terms.clone(),
            rels: self.rels.clone(),
            diffs: self.diffs.iter().map(|d| d.scale(&s)).collect(),
        }
    }

    pub fn trimmed(&self) -> ModuleComplex {
        let mut a = 0;
        let n = self.terms.len();
        while a < n && self.terms[a].rank() == 0 {
            a += 1;
        }
        if a == n {
            return ModuleComplex::zero();
        }
        let mut b = n;
        while self.terms[b - 1].rank() == 0 {
            b -= 1;
        }
        ModuleComplex {
            lo: self.lo + a as i64,
            terms: self.terms[a..b].to_vec(),
            rels: self.rels[a..b].to_vec(),
            diffs: self.diffs[a..b - 1].to_vec(),
        }
    }

    pub fn generator_weights(&self) -> Vec<i64> {
        self.terms.iter().flat_map(|t| t.weights.iter().copied()).collect()
    }

    /// Add relations (I·F^p) to every term.
    pub fn tensor_quotient(&self, ideal: &[Polynomial]) -> ModuleComplex {
        let mut out = self.clone();
        for (k, t) in self.terms.iter().enumerate() {
            for g in 0..t.rank() {
                for f in ideal {
                    out.rels[k].push(Vector::from_poly(g, f));
                }
            }
        }
        out
    }

    /// H^p as a subquotient of the free term in degree p.
    pub fn cohomology_sq(&self, ring: &GradedRing, p: i64, caps: &Caps) -> Result<Subquotient> {
        let f = self.term(p);
        let m = f.rank();
        let nv = ring.nvars();
        let w = ring.w();
        if m == 0 {
            return Ok(Subquotient::new(f, vec![], vec![]));
        }
        let next = self.term(p + 1);
        let z: Vec<Vector> = if next.rank() == 0 {
            (0..m).map(|k| Vector::unit(k, nv)).collect()
        } else {
            let d = self.diff(p);
            let r = self.rels_at(p + 1);
            let rw: Vec<i64> = r.iter().map(|v| v.weight(&next.weights, w).flatten().unwrap_or(0)).collect();
            let mut cols = d.cols.clone();
            cols.extend(r);
            let mat = GradedMatrix::new(
                FreeModule::new(f.weights.iter().chain(&rw).copied().collect()),
                next.clone(),
                cols,
            );
            syzygy_gens(ring, &mat, caps)?.iter().map(|c| c.project(0, m)).filter(|c| !c.is_zero()).collect()
        };
        let mut b = self.rels_at(p);
        b.extend(self.diff(p - 1).cols.iter().filter(|c| !c.is_zero()).cloned());
        Ok(Subquotient::new(f, z, b))
    }

    pub fn cohomology(&self, ring: &GradedRing, window: Window, caps: &Caps) -> Result<CharacterTable> {
        let mut t = CharacterTable::new(window);
        for p in self.lo..=self.hi() {
            let sq = self.cohomology_sq(ring, p, caps)?;
            if sq.z.is_empty() {
                continue;
            }
            for i in window.weights() {
                let d = sq.dim(ring, i, caps)?;
                if d != Dim::Finite(0) {
                    t.set(p, i, d);
                }
            }
        }
        Ok(t)
    }

    pub fn serialize(&self, ring: &GradedRing) -> SerializedComplex {
        let terms = (self.lo..=self.hi())
            .map(|p| {
                let f = self.term(p);
                let d = self.diff(p);
                let r = self.term(p + 1).rank();
                SerializedTerm {
                    degree: p,
                    rank: f.rank(),
                    generator_weights: f.weights.clone(),
                    relations: self.rels_at(p).iter().map(|v| v.fmt_with(f.rank(), &ring.vars)).collect(),
                    differential: if r == 0 {
                        vec![]
                    } else {
                        d.cols.iter().map(|c| c.fmt_with(r, &ring.vars)).collect()
                    },
                }
            })
            .collect();
        SerializedComplex { terms }
    }
}

/// Degree-wise matrices X^p -> Y^p for p in lo..lo+len.
#[derive(Clone, Debug)]
pub struct ComplexMap {
    pub lo: i64,
    pub comps: Vec<GradedMatrix>,
}

impl ComplexMap {
    pub fn comp(&self, p: i64, src: &FreeModule, tgt: &FreeModule) -> GradedMatrix {
        let k = p - self.lo;
        if k < 0 || k >= self.comps.len() as i64 {
            GradedMatrix::zero(src.clone(), tgt.clone())
        } else {
            self.comps[k as usize].clone()
        }
    }

    /// Check f d_X = d_Y f modulo relations of Y.
    pub fn validate(&self, ring: &GradedRing, x: &ModuleComplex, y: &ModuleComplex, caps: &Caps) -> Result<()> {
        let lo = x.lo.min(y.lo);
        let hi = x.hi().max(y.hi());
        for p in lo..=hi {
            let f = self.comp(p, &x.term(p), &y.term(p));
            let f1 = self.comp(p + 1, &x.term(p + 1), &y.term(p + 1));
            let gb = submodule_gb(ring, y.term(p + 1).rank(), &y.rels_at(p + 1), caps)?;
            let dx = x.diff(p);
            let dy = y.diff(p);
            for k in 0..x.term(p).rank() {
                let a = f1.apply(&dx.cols[k]);
                let b = dy.apply(&f.cols[k]);
                if !gb.contains(&a.sub(&b)) {
                    return Err(Error::Input(format!("map does not commute with differentials at degree {}", p)));
                }
            }
        }
        Ok(())
    }
}

/// Mapping cone: C^n = X^{n+1} ⊕ Y^n, d(x, y) = (-d x, f x + d y).
pub fn cone(f: &ComplexMap, x: &ModuleComplex, y: &ModuleComplex) -> ModuleComplex {
    if x.terms.is_empty() {
        return y.clone();
    }
    if y.terms.is_empty() {
        return x.shift(1);
    }
    let lo = (x.lo - 1).min(y.lo);
    let hi = (x.hi() - 1).max(y.hi());
    let mut terms = vec![];
    let mut rels = vec![];
    let mut diffs = vec![];
    for n in lo..=hi {
        let xa = x.term(n + 1);
        let ya = y.term(n);
        terms.push(xa.sum(&ya));
        let mut r: Vec<Vector> = x.rels_at(n + 1);
        r.extend(y.rels_at(n).iter().map(|v| v.shift(xa.rank())));
        rels.push(r);
        if n < hi {
            let xb = x.term(n + 2);
            let yb = y.term(n + 1);
            let dx = x.diff(n + 1);
            let dy = y.diff(n);
            let fx = f.comp(n + 1, &xa, &yb);
            let mut cols = vec![];
            for k in 0..xa.rank() {
                cols.push(dx.cols[k].neg().add(&fx.cols[k].shift(xb.rank())));
            }
            for k in 0..ya.rank() {
                cols.push(dy.cols[k].shift(xb.rank()));
            }
            diffs.push(GradedMatrix::new(xa.sum(&ya), xb.sum(&yb), cols));
        }
    }
    ModuleComplex { lo, terms, rels, diffs }
}

/// Inclusion Y -> cone(f) and projection cone(f) -> X[1], as maps.
pub fn cone_inclusion(x: &ModuleComplex, y: &ModuleComplex, c: &ModuleComplex, nvars: usize) -> ComplexMap {
    let mut comps = vec![];
    for p in y.lo..=y.hi() {
        let off = x.term(p + 1).rank();
        let cols = (0..y.term(p).rank()).map(|k| Vector::unit(k + off, nvars)).collect();
        comps.push(GradedMatrix::new(y.term(p), c.term(p), cols));
    }
    ComplexMap { lo: y.lo, comps }
}

pub fn subsets_by_size(r: usize) -> Vec<Vec<usize>> {
    let mut all: Vec<Vec<usize>> = (0u32..(1 << r))
        .map(|mask| (0..r).filter(|&i| mask & (1 << i) != 0).collect())
        .collect();
    all.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    all
}

fn sign_before(s: &[usize], x: usize) -> i64 {
    if s.iter().filter(|&&u| u < x).count() % 2 == 0 {
        1
    } else {
        -1
    }
}

fn poly_weights(ring: &GradedRing, fs: &[Polynomial]) -> Result<Vec<i64>> {
    fs.iter()
        .map(|f| match f.homogeneous_weight(ring.w()) {
            Some(Some(d)) if d != 0 => Ok(d),
            _ => Err(Error::Input(format!("'{}' must be homogeneous of nonzero weight", ring.fmt(f)))),
        })
        .collect()
}

/// Total complex of K^•(f_1^t..f_r^t) ⊗ X; with `drop_empty` the |S| = 0 part is removed
/// and degrees shift down by one (the Čech model).
pub fn koszul_tensor(
    ring: &GradedRing,
    fs: &[Polynomial],
    t: u32,
    x: &ModuleComplex,
    drop_empty: bool,
) -> Result<ModuleComplex> {
    let ds = poly_weights(ring, fs)?;
    let r = fs.len();
    let subs: Vec<Vec<usize>> = subsets_by_size(r).into_iter().filter(|s| !(drop_empty && s.is_empty())).collect();
    let powers: Vec<Polynomial> = fs.iter().map(|f| f.pow(t)).collect();
    if x.terms.is_empty() || subs.is_empty() {
        return Ok(ModuleComplex::zero());
    }
    let shift = if drop_empty { 1 } else { 0 };
    let smin = if drop_empty { 1 } else { 0 };
    let lo = x.lo + smin as i64 - shift;
    let hi = x.hi() + r as i64 - shift;
    // blocks per total degree n: (subset index, p)
    let blocks = |n: i64| -> Vec<(usize, i64)> {
        let mut out = vec![];
        for (si, s) in subs.iter().enumerate() {
            let p = n + shift - s.len() as i64;
            if p >= x.lo && p <= x.hi() {
                out.push((si, p));
            }
        }
        out
    };
    let theta = |s: &[usize]| -> i64 { -(t as i64) * s.iter().map(|&u| ds[u]).sum::<i64>() };
    let mut terms = vec![];
    let mut rels = vec![];
    let mut offsets: Vec<Vec<((usize, i64), usize)>> = vec![];
    for n in lo..=hi {
        let mut ws = vec![];
        let mut rs = vec![];
        let mut offs = vec![];
        for (si, p) in blocks(n) {
            let off = ws.len();
            offs.push(((si, p), off));
            let th = theta(&subs[si]);
            ws.extend(x.term(p).weights.iter().map(|a| a + th));
            rs.extend(x.rels_at(p).iter().map(|v| v.shift(off)));
        }
        terms.push(FreeModule::new(ws));
        rels.push(rs);
        offsets.push(offs);
    }
    let find = |n: i64, si: usize, p: i64| -> Option<usize> {
        let k = (n - lo) as usize;
        offsets[k].iter().find(|(b, _)| *b == (si, p)).map(|x| x.1)
    };
    let mut diffs = vec![];
    for n in lo..hi {
        let k = (n - lo) as usize;
        let mut cols = vec![];
        for &((si, p), off0) in &offsets[k] {
            let _ = off0;
            let s = &subs[si];
            let dx = x.diff(p);
            let sgn = if s.len().is_multiple_of(2) { rat(1) } else { rat(-1) };
            for g in 0..x.term(p).rank() {
                let mut col = Vector::zero();
                for u in 0..r {
                    if s.contains(&u) {
                        continue;
                    }
                    let mut s2 = s.clone();
                    s2.push(u);
                    s2.sort();
                    let si2 = subs.iter().position(|z| *z == s2).unwrap();
                    if let Some(off) = find(n + 1, si2, p) {
                        let e = Vector::unit(g + off, ring.nvars());
                        let c = rat(sign_before(s, u));
                        col = col.add(&e.mul_poly(&powers[u]).scale(&c));
                    }
                }
                if let Some(off) = find(n + 1, si, p + 1) {
                    if p < x.hi() {
                        col = col.add(&dx.cols[g].shift(off).scale(&sgn));
                    }
                }
                cols.push(col);
            }
        }
        diffs.push(GradedMatrix::new(terms[k].clone(), terms[k + 1].clone(), cols));
    }
    Ok(ModuleComplex { lo, terms, rels, diffs })
}

/// Cohomological Koszul complex K^•(A; f_1..f_r) for positive-weight f_i.
pub fn koszul_cochain(ring: &GradedRing, fs: &[Polynomial]) -> Result<ComplexOfFree> {
    for f in fs {
        match f.homogeneous_weight(ring.w()) {
            Some(Some(d)) if d > 0 => {}
            _ => return Err(Error::Input(format!("Koszul generator '{}' must have positive weight", ring.fmt(f)))),
        }
    }
    let a = ComplexOfFree::single(FreeModule::new(vec![0]), 0).to_mc();
    let m = koszul_tensor(ring, fs, 1, &a, false)?;
    Ok(ComplexOfFree::new_unchecked(m.lo, m.terms, m.diffs))
}

/// Total complex of the homological Koszul complex K_•(f_1^j..f_r^j) ⊗ X, with the
/// inclusion X = K_0 ⊗ X -> K_• ⊗ X.
pub fn koszul_chain_tensor(
    ring: &GradedRing,
    fs: &[Polynomial],
    j: u32,
    x: &ModuleComplex,
) -> Result<(ModuleComplex, ComplexMap)> {
    let ds = poly_weights(ring, fs)?;
    let r = fs.len();
    let subs = subsets_by_size(r);
    let powers: Vec<Polynomial> = fs.iter().map(|f| f.pow(j)).collect();
    if x.terms.is_empty() {
        return Ok((ModuleComplex::zero(), ComplexMap { lo: 0, comps: vec![] }));
    }
    let lo = x.lo - r as i64;
    let hi = x.hi();
    let blocks = |n: i64| -> Vec<(usize, i64)> {
        let mut out = vec![];
        for (si, s) in subs.iter().enumerate() {
            let p = n + s.len() as i64;
            if p >= x.lo && p <= x.hi() {
                out.push((si, p));
            }
        }
        out
    };
    let theta = |s: &[usize]| -> i64 { (j as i64) * s.iter().map(|&u| ds[u]).sum::<i64>() };
    let mut terms = vec![];
    let mut rels = vec![];
    let mut offsets: Vec<Vec<((usize, i64), usize)>> = vec![];
    for n in lo..=hi {
        let mut ws = vec![];
        let mut rs = vec![];
        let mut offs = vec![];
        for (si, p) in blocks(n) {
            let off = ws.len();
            offs.push(((si, p), off));
            let th = theta(&subs[si]);
            ws.extend(x.term(p).weights.iter().map(|a| a + th));
            rs.extend(x.rels_at(p).iter().map(|v| v.shift(off)));
        }
        terms.push(FreeModule::new(ws));
        rels.push(rs);
        offsets.push(offs);
    }
    let find = |n: i64, si: usize, p: i64| -> Option<usize> {
        if n < lo || n > hi {
            return None;
        }
        offsets[(n - lo) as usize].iter().find(|(b, _)| *b == (si, p)).map(|x| x.1)
    };
    let mut diffs = vec![];
    for n in lo..hi {
        let k = (n - lo) as usize;
        let mut cols = vec![];
        for &((si, p), _) in &offsets[k] {
            let s = &subs[si];
            let dx = x.diff(p);
            let sgn = if s.len().is_multiple_of(2) { rat(1) } else { rat(-1) };
            for g in 0..x.term(p).rank() {
                let mut col = Vector::zero();
                for &u in s.iter() {
                    let s2: Vec<usize> = s.iter().copied().filter(|&v| v != u).collect();
                    let si2 = subs.iter().position(|z| *z == s2).unwrap();
                    if let Some(off) = find(n + 1, si2, p) {
                        let e = Vector::unit(g + off, ring.nvars());
                        col = col.add(&e.mul_poly(&powers[u]).scale(&rat(sign_before(s, u))));
                    }
                }
                if p < x.hi() {
                    if let Some(off) = find(n + 1, si, p + 1) {
                        col = col.add(&dx.cols[g].shift(off).scale(&sgn));
                    }
                }
                cols.push(col);
            }
        }
        diffs.push(GradedMatrix::new(terms[k].clone(), terms[k + 1].clone(), cols));
    }
    let y = ModuleComplex { lo, terms, rels, diffs };
    let mut comps = vec![];
    for p in x.lo..=x.hi() {
        let off = find(p, 0, p).unwrap();
        let cols = (0..x.term(p).rank()).map(|g| Vector::unit(g + off, ring.nvars())).collect();
        comps.push(GradedMatrix::new(x.term(p), y.term(p), cols));
    }
    Ok((y, ComplexMap { lo: x.lo, comps }))
}

/// K_•(f^j) tensored with a free resolution of M.
pub fn koszul_chain(
    ring: &GradedRing,
    m: &GradedModulePresentation,
    fs: &[Polynomial],
    j: u32,
    caps: &Caps,
) -> Result<ComplexOfFree> {
    let res = crate::groebner::free_resolution(ring, &m.pres, caps.max_res_len, caps)?;
    let (y, _) = koszul_chain_tensor(ring, fs, j, &res.complex.to_mc())?;
    Ok(ComplexOfFree::new_unchecked(y.lo, y.terms, y.diffs))
}

/// Hom^•(P, X) with dφ = d_X φ - (-1)^n φ d_P.
pub fn hom_complex(ring: &GradedRing, p: &ComplexOfFree, x: &ModuleComplex) -> ModuleComplex {
    if p.terms.is_empty() || x.terms.is_empty() {
        return ModuleComplex::zero();
    }
    let nv = ring.nvars();
    let lo = x.lo - p.hi();
    let hi = x.hi() - p.lo;
    // blocks in degree n: (pdeg, k) -> copy of X^{pdeg+n} twisted by c_k
    let blocks = |n: i64| -> Vec<(i64, usize)> {
        let mut out = vec![];
        for pd in p.lo..=p.hi() {
            let q = pd + n;
            if q < x.lo || q > x.hi() {
                continue;
            }
            for k in 0..p.term(pd).rank() {
                out.push((pd, k));
            }
        }
        out
    };
    let mut terms = vec![];
    let mut rels = vec![];
    let mut offsets: Vec<Vec<((i64, usize), usize)>> = vec![];
    for n in lo..=hi {
        let mut ws = vec![];
        let mut rs = vec![];
        let mut offs = vec![];
        for (pd, k) in blocks(n) {
            let off = ws.len();
            offs.push(((pd, k), off));
            let c = p.term(pd).weights[k];
            ws.extend(x.term(pd + n).weights.iter().map(|b| b - c));
            rs.extend(x.rels_at(pd + n).iter().map(|v| v.shift(off)));
        }
        terms.push(FreeModule::new(ws));
        rels.push(rs);
        offsets.push(offs);
    }
    let find = |n: i64, key: (i64, usize)| -> Option<usize> {
        if n < lo || n > hi {
            return None;
        }
        offsets[(n - lo) as usize].iter().find(|(b, _)| *b == key).map(|x| x.1)
    };
    let mut diffs = vec![];
    for n in lo..hi {
        let kk = (n - lo) as usize;
        let sgn = if n.rem_euclid(2) == 0 { rat(-1) } else { rat(1) };
        let mut cols = vec![];
        for &((pd, k), _) in &offsets[kk] {
            let q = pd + n;
            let dx = x.diff(q);
            // entries c_{k,k'} of d_P^{pd-1}: column k' of d^{pd-1} has entry at row k
            let dp = p.to_mc().diff(pd - 1);
            for g in 0..x.term(q).rank() {
                let mut col = Vector::zero();
                if q < x.hi() {
                    if let Some(off) = find(n + 1, (pd, k)) {
                        col = col.add(&dx.cols[g].shift(off));
                    }
                }
                if pd > p.lo {
                    for (k2, c) in dp.cols.iter().enumerate() {
                        let e = c.entry(k, nv);
                        if e.is_zero() {
                            continue;
                        }
                        if let Some(off) = find(n + 1, (pd - 1, k2)) {
                            col = col.add(&Vector::unit(g + off, nv).mul_poly(&e).scale(&sgn));
                        }
                    }
                }
                cols.push(col);
            }
        }
        diffs.push(GradedMatrix::new(terms[kk].clone(), terms[kk + 1].clone(), cols));
    }
    ModuleComplex { lo, terms, rels, diffs }
}

/// dim Hom_{D(Gr A)}(P, X) for a bounded complex of frees P.
pub fn hom_d(ring: &GradedRing, p: &ComplexOfFree, x: &ModuleComplex, caps: &Caps) -> Result<Dim> {
    let h = hom_complex(ring, p, x);
    if h.terms.is_empty() || 0 < h.lo || 0 > h.hi() {
        return Ok(Dim::Finite(0));
    }
    h.cohomology_sq(ring, 0, caps)?.dim(ring, 0, caps)
}

/// Euler characteristic additivity over a triangle, weight by weight where finite.
pub fn euler_additive(x: &CharacterTable, y: &CharacterTable, c: &CharacterTable) -> bool {
    x.window.weights().all(|i| match (x.euler(i), y.euler(i), c.euler(i)) {
        (Some(a), Some(b), Some(d)) => b == a + d,
        _ => true,
    })
}
