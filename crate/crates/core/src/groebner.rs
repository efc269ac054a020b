//! Buchberger's algorithm for submodules of free modules over Q[x1..xn], with kernels,
//! lifts and minimal free resolutions over presented quotient rings.
//!
//! Term order: position over term (component 0 largest), then degrevlex by total
//! exponent degree. The Z-weights never enter the order.

use std::cmp::Ordering;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::komplex::ComplexOfFree;
use crate::ringcore::{degrevlex, mono_weight, rat, GradedRing, Monomial, Polynomial, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TermOrder {
    /// Position over term (top-down), degrevlex on total exponent degree.
    PotDegrevlex,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Caps {
    pub max_degree: i64,
    pub max_basis: usize,
    pub max_res_len: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_degree: 24, max_basis: 5000, max_res_len: 12 }
    }
}

impl Caps {
    /// Caps widened for inputs that already contain degree `extra` entries (Koszul powers).
    pub fn widened(&self, extra: i64) -> Caps {
        Caps { max_degree: self.max_degree + extra, ..self.clone() }
    }
}

pub type Term = (usize, Monomial, Rational);

pub fn cmp_pos(a: (usize, &Monomial), b: (usize, &Monomial)) -> Ordering {
    b.0.cmp(&a.0).then_with(|| degrevlex(a.1, b.1))
}

/// Element of a free module: terms sorted strictly descending, no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Vector {
    terms: Vec<Term>,
}

impl Vector {
    pub fn zero() -> Self {
        Vector { terms: vec![] }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = Term>) -> Self {
        let mut t: Vec<Term> = terms.into_iter().filter(|x| !x.2.is_zero()).collect();
        t.sort_by(|a, b| cmp_pos((b.0, &b.1), (a.0, &a.1)));
        let mut out: Vec<Term> = Vec::with_capacity(t.len());
        for x in t {
            if let Some(last) = out.last_mut() {
                if last.0 == x.0 && last.1 == x.1 {
                    last.2 += x.2;
                    if last.2.is_zero() {
                        out.pop();
                    }
                    continue;
                }
            }
            out.push(x);
        }
        Vector { terms: out }
    }

    pub fn unit(k: usize, n: usize) -> Self {
        Vector { terms: vec![(k, Monomial::one(n), rat(1))] }
    }

    pub fn from_poly(k: usize, p: &Polynomial) -> Self {
        Vector { terms: p.terms().iter().map(|(m, c)| (k, m.clone(), c.clone())).collect() }
    }

    pub fn from_entries(entries: &[Polynomial]) -> Self {
        let mut terms = vec![];
        for (k, p) in entries.iter().enumerate() {
            for (m, c) in p.terms() {
                terms.push((k, m.clone(), c.clone()));
            }
        }
        Vector { terms }
    }

    pub fn entries(&self, rank: usize, nvars: usize) -> Vec<Polynomial> {
        let mut out = vec![vec![]; rank];
        for (k, m, c) in &self.terms {
            out[*k].push((m.clone(), c.clone()));
        }
        out.into_iter().map(|t| Polynomial::from_terms(nvars, t)).collect()
    }

    pub fn entry(&self, k: usize, nvars: usize) -> Polynomial {
        Polynomial::from_terms(
            nvars,
            self.terms.iter().filter(|t| t.0 == k).map(|t| (t.1.clone(), t.2.clone())),
        )
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn max_degree(&self) -> i64 {
        self.terms.iter().map(|t| t.1.degree()).max().unwrap_or(0)
    }

    fn merge(a: &[Term], b: &[Term], bscale: &Rational, bmono: Option<&Monomial>) -> Vec<Term> {
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let bm = |t: &Term| -> Monomial {
            match bmono {
                Some(m) => t.1.mul(m),
                None => t.1.clone(),
            }
        };
        let mut pending: Option<Term> = None;
        loop {
            if pending.is_none() && j < b.len() {
                let t = &b[j];
                pending = Some((t.0, bm(t), &t.2 * bscale));
                j += 1;
            }
            match (&pending, i < a.len()) {
                (None, false) => break,
                (None, true) => {
                    out.push(a[i].clone());
                    i += 1;
                }
                (Some(_), false) => {
                    out.push(pending.take().unwrap());
                }
                (Some(p), true) => match cmp_pos((a[i].0, &a[i].1), (p.0, &p.1)) {
                    Ordering::Greater => {
                        out.push(a[i].clone());
                        i += 1;
                    }
                    Ordering::Less => out.push(pending.take().unwrap()),
                    Ordering::Equal => {
                        let p = pending.take().unwrap();
                        let c = &a[i].2 + &p.2;
                        if !c.is_zero() {
                            out.push((p.0, p.1, c));
                        }
                        i += 1;
                    }
                },
            }
        }
        out
    }

    pub fn add(&self, o: &Vector) -> Vector {
        Vector { terms: Self::merge(&self.terms, &o.terms, &rat(1), None) }
    }

    pub fn sub(&self, o: &Vector) -> Vector {
        Vector { terms: Self::merge(&self.terms, &o.terms, &rat(-1), None) }
    }

    /// self + c * m * o
    pub fn add_scaled(&self, o: &Vector, c: &Rational, m: &Monomial) -> Vector {
        Vector { terms: Self::merge(&self.terms, &o.terms, c, Some(m)) }
    }

    pub fn scale(&self, c: &Rational) -> Vector {
        if c.is_zero() {
            return Vector::zero();
        }
        Vector { terms: self.terms.iter().map(|(k, m, a)| (*k, m.clone(), a * c)).collect() }
    }

    pub fn neg(&self) -> Vector {
        self.scale(&rat(-1))
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Vector {
        if c.is_zero() {
            return Vector::zero();
        }
        Vector { terms: self.terms.iter().map(|(k, t, a)| (*k, t.mul(m), a * c)).collect() }
    }

    pub fn mul_poly(&self, p: &Polynomial) -> Vector {
        let mut acc = Vector::zero();
        for (m, c) in p.terms() {
            acc = acc.add_scaled(self, c, m);
        }
        acc
    }

    /// Renumber components by `k -> k + offset`.
    pub fn shift(&self, offset: usize) -> Vector {
        Vector { terms: self.terms.iter().map(|(k, m, c)| (k + offset, m.clone(), c.clone())).collect() }
    }

    /// Keep components in `lo..hi`, renumbered from 0.
    pub fn project(&self, lo: usize, hi: usize) -> Vector {
        Vector {
            terms: self
                .terms
                .iter()
                .filter(|t| t.0 >= lo && t.0 < hi)
                .map(|(k, m, c)| (k - lo, m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Apply `k -> map[k]` to components (map must preserve relative order of used comps
    /// or the result is re-sorted).
    pub fn remap(&self, map: &[usize]) -> Vector {
        Vector::from_terms(self.terms.iter().map(|(k, m, c)| (map[*k], m.clone(), c.clone())))
    }

    pub fn monic(&self) -> Vector {
        match self.leading() {
            None => Vector::zero(),
            Some(t) => {
                if t.2.is_one() {
                    self.clone()
                } else {
                    self.scale(&(Rational::one() / &t.2))
                }
            }
        }
    }

    /// Weight of a homogeneous element given generator weights; `Some(None)` for zero.
    pub fn weight(&self, gen_weights: &[i64], w: &[i64]) -> Option<Option<i64>> {
        let mut it = self.terms.iter().map(|(k, m, _)| mono_weight(m, w) + gen_weights[*k]);
        match it.next() {
            None => Some(None),
            Some(a) => {
                if it.all(|b| b == a) {
                    Some(Some(a))
                } else {
                    None
                }
            }
        }
    }

    pub fn has_constant_entry(&self) -> bool {
        self.terms.iter().any(|t| t.1.is_one())
    }

    pub fn fmt_with(&self, rank: usize, vars: &[String]) -> Vec<String> {
        self.entries(rank, vars.len()).iter().map(|p| p.fmt_with(vars)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreeModule {
    /// Generator k spans a copy of A(-a_k), generated in weight a_k.
    pub weights: Vec<i64>,
}

impl FreeModule {
    pub fn new(weights: Vec<i64>) -> Self {
        FreeModule { weights }
    }

    pub fn rank(&self) -> usize {
        self.weights.len()
    }

    pub fn twist(&self, i: i64) -> FreeModule {
        FreeModule { weights: self.weights.iter().map(|a| a - i).collect() }
    }

    pub fn sum(&self, o: &FreeModule) -> FreeModule {
        let mut w = self.weights.clone();
        w.extend(&o.weights);
        FreeModule { weights: w }
    }
}

/// Matrix between free modules, stored by columns: column j is the image of source
/// generator j as an element of the target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMatrix {
    pub source: FreeModule,
    pub target: FreeModule,
    pub cols: Vec<Vector>,
}

impl GradedMatrix {
    pub fn new(source: FreeModule, target: FreeModule, cols: Vec<Vector>) -> Self {
        debug_assert_eq!(source.rank(), cols.len());
        GradedMatrix { source, target, cols }
    }

    pub fn zero(source: FreeModule, target: FreeModule) -> Self {
        let cols = vec![Vector::zero(); source.rank()];
        GradedMatrix { source, target, cols }
    }

    pub fn identity(f: &FreeModule, nvars: usize) -> Self {
        let cols = (0..f.rank()).map(|k| Vector::unit(k, nvars)).collect();
        GradedMatrix { source: f.clone(), target: f.clone(), cols }
    }

    pub fn from_entries(source: FreeModule, target: FreeModule, cols: &[Vec<Polynomial>]) -> Self {
        let cols = cols.iter().map(|c| Vector::from_entries(c)).collect();
        GradedMatrix { source, target, cols }
    }

    pub fn entry(&self, i: usize, j: usize, nvars: usize) -> Polynomial {
        self.cols[j].entry(i, nvars)
    }

    pub fn check_homogeneous(&self, w: &[i64]) -> Result<()> {
        for (j, c) in self.cols.iter().enumerate() {
            match c.weight(&self.target.weights, w) {
                Some(None) => {}
                Some(Some(a)) if a == self.source.weights[j] => {}
                _ => {
                    return Err(Error::Input(format!(
                        "column {} is not homogeneous of weight {}",
                        j, self.source.weights[j]
                    )))
                }
            }
        }
        Ok(())
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        let mut acc = Vector::zero();
        for (k, m, c) in v.terms() {
            acc = acc.add_scaled(&self.cols[*k], c, m);
        }
        acc
    }

    /// self ∘ o
    pub fn compose(&self, o: &GradedMatrix) -> GradedMatrix {
        GradedMatrix {
            source: o.source.clone(),
            target: self.target.clone(),
            cols: o.cols.iter().map(|c| self.apply(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_zero())
    }

    /// Transpose: the A-dual map target^∨ -> source^∨ with negated generator weights.
    pub fn dual(&self, nvars: usize) -> GradedMatrix {
        let src = FreeModule::new(self.target.weights.iter().map(|a| -a).collect());
        let tgt = FreeModule::new(self.source.weights.iter().map(|a| -a).collect());
        let mut cols: Vec<Vec<Term>> = vec![vec![]; src.rank()];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, m, a) in c.terms() {
                cols[*i].push((j, m.clone(), a.clone()));
            }
        }
        let _ = nvars;
        GradedMatrix { source: src, target: tgt, cols: cols.into_iter().map(Vector::from_terms).collect() }
    }

    pub fn scale(&self, c: &Rational) -> GradedMatrix {
        GradedMatrix {
            source: self.source.clone(),
            target: self.target.clone(),
            cols: self.cols.iter().map(|v| v.scale(c)).collect(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    pub elems: Vec<Vector>,
    pub order: TermOrder,
    pub reduced: bool,
    index: Vec<Vec<usize>>,
}

impl GroebnerBasis {
    fn build(elems: Vec<Vector>, reduced: bool) -> Self {
        let ncomp = elems.iter().filter_map(|e| e.leading().map(|t| t.0 + 1)).max().unwrap_or(0);
        let mut index = vec![vec![]; ncomp];
        for (i, e) in elems.iter().enumerate() {
            if let Some(t) = e.leading() {
                index[t.0].push(i);
            }
        }
        GroebnerBasis { elems, order: TermOrder::PotDegrevlex, reduced, index }
    }

    pub fn empty() -> Self {
        Self::build(vec![], true)
    }

    fn divisor(&self, comp: usize, m: &Monomial) -> Option<usize> {
        self.index.get(comp)?.iter().copied().find(|&i| self.elems[i].leading().unwrap().1.divides(m))
    }

    pub fn normal_form(&self, v: &Vector) -> Vector {
        let mut rem: Vec<Term> = vec![];
        let mut p: Vec<Term> = v.terms.clone();
        let mut start = 0;
        while start < p.len() {
            let (comp, m, c) = &p[start];
            match self.divisor(*comp, m) {
                Some(i) => {
                    let g = &self.elems[i];
                    let (_, gm, gc) = g.leading().unwrap();
                    let q = gm.quotient_of(m);
                    let f = -(c / gc);
                    p = Vector::merge(&p[start..], &g.terms, &f, Some(&q));
                    start = 0;
                }
                None => {
                    rem.push(p[start].clone());
                    start += 1;
                }
            }
        }
        Vector { terms: rem }
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.normal_form(v).is_zero()
    }

    /// Leading monomials per component.
    pub fn leading_monomials(&self, rank: usize) -> Vec<Vec<Vec<i32>>> {
        let mut out = vec![vec![]; rank];
        for e in &self.elems {
            if let Some((k, m, _)) = e.leading() {
                if *k < rank {
                    out[*k].push(m.exps().to_vec());
                }
            }
        }
        out
    }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    deg: i64,
}

fn spoly(f: &Vector, g: &Vector, lcm: &Monomial) -> Vector {
    let (_, fm, fc) = f.leading().unwrap();
    let (_, gm, gc) = g.leading().unwrap();
    let a = f.mul_term(&fm.quotient_of(lcm), &(Rational::one() / fc));
    a.add_scaled(g, &(-(Rational::one() / gc)), &gm.quotient_of(lcm))
}

/// Reduced Gröbner basis of the submodule generated by `gens`.
pub fn buchberger(gens: &[Vector], caps: &Caps) -> Result<GroebnerBasis> {
    let mut basis: Vec<Vector> = vec![];
    let mut pairs: Vec<Pair> = vec![];
    let mut sorted: Vec<Vector> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.monic()).collect();
    sorted.sort_by(|a, b| {
        let (x, y) = (a.leading().unwrap(), b.leading().unwrap());
        cmp_pos((x.0, &x.1), (y.0, &y.1))
    });
    sorted.dedup();
    let mut queue: Vec<Vector> = sorted;
    queue.reverse();
    loop {
        let next = if let Some(g) = queue.pop() {
            Some(g)
        } else if !pairs.is_empty() {
            let k = (0..pairs.len())
                .min_by(|&a, &b| {
                    let (p, q) = (&pairs[a], &pairs[b]);
                    p.deg.cmp(&q.deg).then(p.i.cmp(&q.i)).then(p.j.cmp(&q.j))
                })
                .unwrap();
            let p = pairs.swap_remove(k);
            if p.deg > caps.max_degree {
                return Err(Error::Cap(format!(
                    "S-pair of total degree {} exceeds the degree cap {} (partial basis of {} elements)",
                    p.deg,
                    caps.max_degree,
                    basis.len()
                )));
            }
            Some(spoly(&basis[p.i], &basis[p.j], &p.lcm))
        } else {
            None
        };
        let Some(g) = next else { break };
        let partial = GroebnerBasis::build(basis.clone(), false);
        let h = partial.normal_form(&g);
        if h.is_zero() {
            continue;
        }
        let h = h.monic();
        if basis.len() + 1 > caps.max_basis {
            return Err(Error::Cap(format!("basis size exceeds the cap {}", caps.max_basis)));
        }
        let t = basis.len();
        let (tc, tm, _) = h.leading().unwrap().clone();
        let mut cand: Vec<(usize, Monomial)> = basis
            .iter()
            .enumerate()
            .filter(|(_, b)| b.leading().unwrap().0 == tc)
            .map(|(i, b)| (i, b.leading().unwrap().1.lcm(&tm)))
            .collect();
        let snapshot = cand.clone();
        cand.retain(|(i, l)| !snapshot.iter().any(|(j, l2)| l2 != l && l2.divides(l) || (l2 == l && j < i)));
        pairs.retain(|p| {
            let lt = &basis[p.i].leading().unwrap();
            if lt.0 != tc || !tm.divides(&p.lcm) {
                return true;
            }
            let li = basis[p.i].leading().unwrap().1.lcm(&tm);
            let lj = basis[p.j].leading().unwrap().1.lcm(&tm);
            li == p.lcm || lj == p.lcm
        });
        basis.push(h);
        for (i, l) in cand {
            let deg = l.degree();
            pairs.push(Pair { i, j: t, lcm: l, deg });
        }
    }
    Ok(reduce_basis(basis))
}

fn reduce_basis(basis: Vec<Vector>) -> GroebnerBasis {
    let mut keep: Vec<Vector> = vec![];
    for (i, b) in basis.iter().enumerate() {
        let (bc, bm, _) = b.leading().unwrap();
        let redundant = basis.iter().enumerate().any(|(j, o)| {
            let (oc, om, _) = o.leading().unwrap();
            j != i && oc == bc && om.divides(bm) && (om != bm || j < i)
        });
        if !redundant {
            keep.push(b.clone());
        }
    }
    let mut out = vec![];
    for i in 0..keep.len() {
        let others: Vec<Vector> = keep.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, v)| v.clone()).collect();
        let gb = GroebnerBasis::build(others, false);
        let lead = Vector { terms: vec![keep[i].terms[0].clone()] };
        let tail = Vector { terms: keep[i].terms[1..].to_vec() };
        out.push(lead.add(&gb.normal_form(&tail)).monic());
    }
    out.sort_by(|a, b| {
        let (x, y) = (a.leading().unwrap(), b.leading().unwrap());
        cmp_pos((y.0, &y.1), (x.0, &x.1))
    });
    GroebnerBasis::build(out, true)
}

pub fn normal_form(v: &Vector, gb: &GroebnerBasis) -> Vector {
    gb.normal_form(v)
}

/// Gröbner basis of the relation ideal J of the ring (cached).
pub fn relations_gb(ring: &GradedRing) -> &[Polynomial] {
    ring.relations_gb_cache.get_or_init(|| {
        let gens: Vec<Vector> = ring.relations.iter().map(|p| Vector::from_poly(0, p)).collect();
        let gb = buchberger(&gens, &Caps { max_degree: 200, ..Caps::default() })
            .expect("relation ideal Gröbner basis");
        gb.elems.iter().map(|v| v.entry(0, ring.nvars())).collect()
    })
}

/// J·e_k for k < rank.
pub fn relation_vectors(ring: &GradedRing, rank: usize) -> Vec<Vector> {
    let jgb = relations_gb(ring);
    let mut out = vec![];
    for k in 0..rank {
        for p in jgb {
            out.push(Vector::from_poly(k, p));
        }
    }
    out
}

/// Gröbner basis of U + J·F for U generated by `gens` in a free module of rank `rank`.
pub fn submodule_gb(ring: &GradedRing, rank: usize, gens: &[Vector], caps: &Caps) -> Result<GroebnerBasis> {
    let mut all: Vec<Vector> = gens.to_vec();
    all.extend(relation_vectors(ring, rank));
    buchberger(&all, caps)
}

/// Gröbner data for the image of a matrix that also records how to lift.
pub struct ImageLifter {
    gb: GroebnerBasis,
    n: usize,
    m: usize,
}

impl ImageLifter {
    pub fn new(ring: &GradedRing, mat: &GradedMatrix, caps: &Caps) -> Result<Self> {
        let n = mat.target.rank();
        let m = mat.source.rank();
        let nv = ring.nvars();
        let mut gens: Vec<Vector> = mat
            .cols
            .iter()
            .enumerate()
            .map(|(j, c)| c.add(&Vector::unit(n + j, nv)))
            .collect();
        gens.extend(relation_vectors(ring, n));
        Ok(ImageLifter { gb: buchberger(&gens, caps)?, n, m })
    }

    /// Coefficients c with mat·c = v modulo J, if v lies in the image.
    pub fn lift(&self, v: &Vector) -> Option<Vector> {
        let r = self.gb.normal_form(v);
        if r.terms().iter().any(|t| t.0 < self.n) {
            return None;
        }
        Some(r.project(self.n, self.n + self.m).neg())
    }

    /// Generators of the syzygy module (kernel), not reduced modulo J.
    pub fn syzygies(&self) -> Vec<Vector> {
        self.gb
            .elems
            .iter()
            .filter(|e| e.leading().unwrap().0 >= self.n)
            .map(|e| e.project(self.n, self.n + self.m))
            .collect()
    }
}

/// Greedy removal of generators that lie in the span of the others plus `base`.
pub fn minimize_generators(
    ring: &GradedRing,
    rank: usize,
    gens: Vec<Vector>,
    base: &[Vector],
    caps: &Caps,
) -> Result<Vec<Vector>> {
    let base_gb = submodule_gb(ring, rank, base, caps)?;
    let mut gens: Vec<Vector> = gens.into_iter().map(|g| base_gb.normal_form(&g)).filter(|g| !g.is_zero()).collect();
    gens.sort_by(|a, b| {
        b.max_degree().cmp(&a.max_degree()).then_with(|| {
            let (x, y) = (a.leading().unwrap(), b.leading().unwrap());
            cmp_pos((y.0, &y.1), (x.0, &x.1))
        })
    });
    let mut i = 0;
    while i < gens.len() {
        let mut others: Vec<Vector> = gens.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, v)| v.clone()).collect();
        others.extend(base.iter().cloned());
        let gb = submodule_gb(ring, rank, &others, caps)?;
        if gb.contains(&gens[i]) {
            gens.remove(i);
        } else {
            i += 1;
        }
    }
    gens.reverse();
    Ok(gens)
}

/// Generators of the kernel (not minimised), reduced modulo J.
pub fn syzygy_gens(ring: &GradedRing, mat: &GradedMatrix, caps: &Caps) -> Result<Vec<Vector>> {
    let m = mat.source.rank();
    let lifter = ImageLifter::new(ring, mat, caps)?;
    let jgb = submodule_gb(ring, m, &[], caps)?;
    Ok(lifter.syzygies().iter().map(|s| jgb.normal_form(s)).filter(|s| !s.is_zero()).collect())
}

/// Kernel of a homogeneous matrix over A = S/J, as a presentation matrix of the kernel.
pub fn kernel(ring: &GradedRing, mat: &GradedMatrix, caps: &Caps) -> Result<GradedMatrix> {
    let m = mat.source.rank();
    let w = ring.w();
    let lifter = ImageLifter::new(ring, mat, caps)?;
    let jgb = submodule_gb(ring, m, &[], caps)?;
    let syz: Vec<Vector> = lifter.syzygies().iter().map(|s| jgb.normal_form(s)).filter(|s| !s.is_zero()).collect();
    let syz = minimize_generators(ring, m, syz, &[], caps)?;
    let weights: Vec<i64> = syz
        .iter()
        .map(|s| s.weight(&mat.source.weights, w).and_then(|x| x).expect("homogeneous syzygy"))
        .collect();
    Ok(GradedMatrix::new(FreeModule::new(weights), mat.source.clone(), syz))
}

/// Remove generators made redundant by relations with a constant entry.
pub fn prune_presentation(ring: &GradedRing, pres: &GradedMatrix) -> GradedMatrix {
    let nv = ring.nvars();
    let mut target = pres.target.weights.clone();
    let mut cols: Vec<Vector> = pres.cols.clone();
    let mut srcw = pres.source.weights.clone();
    loop {
        let mut found = None;
        'outer: for (j, c) in cols.iter().enumerate() {
            for (k, m, a) in c.terms() {
                if m.is_one() {
                    found = Some((j, *k, a.clone()));
                    break 'outer;
                }
            }
        }
        let Some((j, k, a)) = found else { break };
        let pivot = cols.remove(j);
        srcw.remove(j);
        // e_k = -(1/a) (pivot - a e_k)
        let rest = pivot.sub(&Vector::unit(k, nv).scale(&a));
        let subst = rest.scale(&(-(Rational::one() / a)));
        let rank = target.len();
        cols = cols
            .into_iter()
            .map(|c| {
                let ck = c.entry(k, nv);
                let without = Vector::from_terms(c.terms().iter().filter(|t| t.0 != k).cloned());
                without.add(&subst.mul_poly(&ck))
            })
            .collect();
        let map: Vec<usize> = (0..rank).map(|i| if i > k { i - 1 } else { i }).collect();
        cols = cols.iter().map(|c| c.remap(&map)).collect();
        target.remove(k);
        let keep: Vec<bool> = cols.iter().map(|c| !c.is_zero()).collect();
        let mut i = 0;
        cols.retain(|_| {
            let r = keep[i];
            i += 1;
            r
        });
        let mut i = 0;
        srcw.retain(|_| {
            let r = keep[i];
            i += 1;
            r
        });
    }
    GradedMatrix::new(FreeModule::new(srcw), FreeModule::new(target), cols)
}

#[derive(Clone, Debug)]
pub struct Resolution {
    /// Free modules in cohomological degrees -len..0, resolving the cokernel.
    pub complex: ComplexOfFree,
    pub truncated: bool,
    pub minimal: bool,
}

/// Minimal free resolution of coker(pres) over the ring.
pub fn free_resolution(ring: &GradedRing, pres: &GradedMatrix, length_cap: usize, caps: &Caps) -> Result<Resolution> {
    pres.check_homogeneous(ring.w())?;
    let pruned = prune_presentation(ring, pres);
    let jgb = submodule_gb(ring, pruned.target.rank(), &[], caps)?;
    let rels: Vec<Vector> = pruned.cols.iter().map(|c| jgb.normal_form(c)).filter(|c| !c.is_zero()).collect();
    let rels = minimize_generators(ring, pruned.target.rank(), rels, &[], caps)?;
    let w = ring.w();
    let srcw: Vec<i64> = rels
        .iter()
        .map(|c| c.weight(&pruned.target.weights, w).and_then(|x| x).expect("homogeneous relation"))
        .collect();
    let mut maps = vec![];
    let mut current = GradedMatrix::new(FreeModule::new(srcw), pruned.target.clone(), rels);
    let mut truncated = false;
    let f0 = pruned.target.clone();
    loop {
        if current.source.rank() == 0 {
            break;
        }
        maps.push(current.clone());
        if maps.len() >= length_cap {
            let k = kernel(ring, &current, caps)?;
            truncated = k.source.rank() > 0;
            break;
        }
        current = kernel(ring, &current, caps)?;
    }
    let mut terms = vec![f0];
    for m in &maps {
        terms.push(m.source.clone());
    }
    terms.reverse();
    let mut diffs: Vec<GradedMatrix> = maps.clone();
    diffs.reverse();
    let lo = -(terms.len() as i64 - 1);
    let minimal = diffs.iter().all(|d| d.cols.iter().all(|c| !c.has_constant_entry()));
    Ok(Resolution { complex: ComplexOfFree::new(lo, terms, diffs, ring)?, truncated, minimal })
}
