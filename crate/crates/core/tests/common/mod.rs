#![allow(dead_code)]

use std::collections::BTreeMap;

use graded_sod::ringcore::{Monomial, Polynomial};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

pub fn monomials_of_degree(n: usize, d: i32) -> Vec<Vec<i32>> {
    if n == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = vec![];
    for first in (0..=d).rev() {
        for mut rest in monomials_of_degree(n - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn to_row(p: &Polynomial, index: &BTreeMap<Vec<i32>, usize>) -> Vec<BigRational> {
    let mut row = vec![BigRational::zero(); index.len()];
    for (m, c) in p.terms() {
        row[index[m.exps()]] += c.clone();
    }
    row
}

/// Row rank by plain Gaussian elimination.
pub fn rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut r = 0;
    for c in 0..ncols {
        let Some(piv) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, piv);
        let inv = BigRational::one() / rows[r][c].clone();
        for j in c..ncols {
            rows[r][j] = rows[r][j].clone() * inv.clone();
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in c..ncols {
                    let v = rows[r][j].clone() * f.clone();
                    rows[i][j] -= v;
                }
            }
        }
        r += 1;
    }
    r
}

/// Degree-d rows {m·g} of the Macaulay matrix for homogeneous generators (standard grading).
pub fn macaulay_rows(gens: &[Polynomial], n: usize, d: i32) -> (Vec<Vec<BigRational>>, BTreeMap<Vec<i32>, usize>) {
    let cols = monomials_of_degree(n, d);
    let index: BTreeMap<Vec<i32>, usize> = cols.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows = vec![];
    for g in gens {
        let dg = g.total_degree() as i32;
        if dg > d {
            continue;
        }
        for m in monomials_of_degree(n, d - dg) {
            let p = g.mul_term(&Monomial::new(m), &BigRational::one());
            rows.push(to_row(&p, &index));
        }
    }
    (rows, index)
}

pub fn oracle_member(gens: &[Polynomial], f: &Polynomial, n: usize) -> bool {
    if f.is_zero() {
        return true;
    }
    let d = f.total_degree() as i32;
    let (rows, index) = macaulay_rows(gens, n, d);
    let r0 = rank(rows.clone());
    let mut with = rows;
    with.push(to_row(f, &index));
    rank(with) == r0
}

pub fn oracle_quotient_dim(gens: &[Polynomial], n: usize, d: i32) -> usize {
    let (rows, index) = macaulay_rows(gens, n, d);
    index.len() - rank(rows)
}

pub fn random_homogeneous<R: Rng>(rng: &mut R, n: usize, d: i32, nterms: usize) -> Polynomial {
    let mons = monomials_of_degree(n, d);
    let terms = (0..nterms).map(|_| {
        let m = mons[rng.gen_range(0..mons.len())].clone();
        let mut c = rng.gen_range(-3i64..=3);
        if c == 0 {
            c = 1;
        }
        (Monomial::new(m), BigRational::from_integer(BigInt::from(c)))
    });
    Polynomial::from_terms(n, terms)
}

/// dim H^{|S|}_{(x_S)}(A)_target for a polynomial ring: exponent vectors with entries ≤ -1
/// on S and ≥ 0 elsewhere, counted by brute force in a box.
pub fn top_local_cohomology_count(weights: &[i64], s: &[usize], target: i64, bound: i32) -> u64 {
    fn go(weights: &[i64], s: &[usize], k: usize, acc: i64, target: i64, bound: i32) -> u64 {
        if k == weights.len() {
            return (acc == target) as u64;
        }
        let range: Vec<i32> = if s.contains(&k) { (-bound..=-1).collect() } else { (0..=bound).collect() };
        range.into_iter().map(|e| go(weights, s, k + 1, acc + weights[k] * e as i64, target, bound)).sum()
    }
    go(weights, s, 0, 0, target, bound)
}

/// dim A_target for a polynomial ring whose weight-target piece is finite.
pub fn monomial_count(weights: &[i64], target: i64, bound: i32) -> u64 {
    top_local_cohomology_count(weights, &[], target, bound)
}

/// Row-reduced span of the degree-d Macaulay rows, for repeated membership tests.
pub struct MacaulaySpace {
    pub index: BTreeMap<Vec<i32>, usize>,
    rows: Vec<(usize, Vec<BigRational>)>,
}

impl MacaulaySpace {
    pub fn new(gens: &[Polynomial], n: usize, d: i32) -> Self {
        let (raw, index) = macaulay_rows(gens, n, d);
        let mut rows: Vec<(usize, Vec<BigRational>)> = vec![];
        for r in raw {
            if let Some(red) = Self::reduce_with(&rows, r) {
                let piv = red.iter().position(|x| !x.is_zero()).unwrap();
                let inv = BigRational::one() / red[piv].clone();
                let red: Vec<BigRational> = red.into_iter().map(|x| x * inv.clone()).collect();
                rows.push((piv, red));
            }
        }
        MacaulaySpace { index, rows }
    }

    fn reduce_with(rows: &[(usize, Vec<BigRational>)], mut v: Vec<BigRational>) -> Option<Vec<BigRational>> {
        for (piv, r) in rows {
            if !v[*piv].is_zero() {
                let f = v[*piv].clone();
                for (a, b) in v.iter_mut().zip(r) {
                    *a -= b.clone() * f.clone();
                }
            }
        }
        if v.iter().all(|x| x.is_zero()) {
            None
        } else {
            Some(v)
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        Self::reduce_with(&self.rows, to_row(f, &self.index)).is_none()
    }
}
