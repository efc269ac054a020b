//! Dense linear algebra over Q for finite weight pieces.

use num_traits::{One, Zero};

use crate::ringcore::Rational;

pub type Row = Vec<Rational>;

/// Row echelon form in place; returns pivot columns.
pub fn echelon(rows: &mut Vec<Row>, ncols: usize) -> Vec<usize> {
    let mut pivots = vec![];
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rational::one() / &rows[r][c];
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for k in c..ncols {
                    let v = &rows[r][k] * &f;
                    rows[i][k] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank(rows: &[Row], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    echelon(&mut m, ncols).len()
}

/// Basis of {v : M v = 0} for M given by rows.
pub fn nullspace(rows: &[Row], ncols: usize) -> Vec<Row> {
    let mut m = rows.to_vec();
    let piv = echelon(&mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !piv.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (r, &pc) in piv.iter().enumerate() {
                v[pc] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

/// Indices of `candidates` forming a basis of span(base + candidates) modulo span(base).
pub fn extend_basis(base: &[Row], candidates: &[Row], ncols: usize) -> Vec<usize> {
    let mut m: Vec<Row> = base.to_vec();
    let mut r = rank(&m, ncols);
    let mut chosen = vec![];
    for (i, c) in candidates.iter().enumerate() {
        m.push(c.clone());
        let r2 = rank(&m, ncols);
        if r2 > r {
            chosen.push(i);
            r = r2;
        } else {
            m.pop();
        }
    }
    chosen
}

/// Apply a matrix given by columns (each of length `nrows`) to a vector.
pub fn apply_cols(cols: &[Row], v: &[Rational], nrows: usize) -> Row {
    let mut out = vec![Rational::zero(); nrows];
    for (c, x) in cols.iter().zip(v) {
        if x.is_zero() {
            continue;
        }
        for (o, a) in out.iter_mut().zip(c) {
            *o += a * x;
        }
    }
    out
}

/// Transpose a column list into rows.
pub fn cols_to_rows(cols: &[Row], nrows: usize) -> Vec<Row> {
    (0..nrows).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect()
}
