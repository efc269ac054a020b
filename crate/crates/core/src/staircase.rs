//! Counting monomials of a fixed weight outside a monomial ideal.

use std::fmt;

use num_integer::Integer;
use serde::{Serialize, Serializer};

/// Dimension of a weight piece over Q.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Dim {
    Finite(u64),
    /// Infinite over Q: a nonzero module over the weight-zero subring.
    Infinite,
}

pub const INFINITE_SYMBOL: &str = "∞/A₀-module";

impl Dim {
    pub fn is_zero(&self) -> bool {
        *self == Dim::Finite(0)
    }

    pub fn finite(&self) -> Option<u64> {
        match self {
            Dim::Finite(n) => Some(*n),
            Dim::Infinite => None,
        }
    }

    pub fn times(self, k: u64) -> Dim {
        match self {
            _ if k == 0 => Dim::Finite(0),
            Dim::Finite(n) => Dim::Finite(n * k),
            Dim::Infinite => Dim::Infinite,
        }
    }
}

impl std::ops::Add for Dim {
    type Output = Dim;
    fn add(self, o: Dim) -> Dim {
        match (self, o) {
            (Dim::Finite(a), Dim::Finite(b)) => Dim::Finite(a + b),
            _ => Dim::Infinite,
        }
    }
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dim::Finite(n) => write!(f, "{}", n),
            Dim::Infinite => write!(f, "{}", INFINITE_SYMBOL),
        }
    }
}

impl Serialize for Dim {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Dim::Finite(n) => s.serialize_u64(*n),
            Dim::Infinite => s.serialize_str(INFINITE_SYMBOL),
        }
    }
}

fn coin_count(ws: &[i64], target: i64) -> u64 {
    if target < 0 {
        return 0;
    }
    let t = target as usize;
    let mut dp = vec![0u64; t + 1];
    dp[0] = 1;
    for &w in ws {
        let w = w as usize;
        for v in w..=t {
            dp[v] = dp[v].saturating_add(dp[v - w]);
        }
    }
    dp[t]
}

/// Number of f in N^k with sum w_j f_j = target.
pub fn count_solutions(ws: &[i64], target: i64) -> Dim {
    let pos: Vec<i64> = ws.iter().copied().filter(|&w| w > 0).collect();
    let neg: Vec<i64> = ws.iter().filter(|&&w| w < 0).map(|w| -w).collect();
    let zero = ws.contains(&0);
    if !pos.is_empty() && !neg.is_empty() {
        let g = ws.iter().fold(0i64, |g, &w| g.gcd(&w));
        return if target % g == 0 { Dim::Infinite } else { Dim::Finite(0) };
    }
    let finite = if !pos.is_empty() {
        coin_count(&pos, target)
    } else if !neg.is_empty() {
        coin_count(&neg, -target)
    } else {
        u64::from(target == 0)
    };
    if zero && finite > 0 {
        Dim::Infinite
    } else {
        Dim::Finite(finite)
    }
}

fn enumerate_solutions(ws: &[i64], target: i64, out: &mut Vec<Vec<i64>>, limit: usize) -> bool {
    fn go(ws: &[i64], i: usize, rem: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>, limit: usize) -> bool {
        if i == ws.len() {
            if rem == 0 {
                if out.len() >= limit {
                    return false;
                }
                out.push(cur.clone());
            }
            return true;
        }
        let w = ws[i];
        let mut f = 0;
        while (rem - w * f) * w.signum() >= 0 {
            cur.push(f);
            let ok = go(ws, i + 1, rem - w * f, cur, out, limit);
            cur.pop();
            if !ok {
                return false;
            }
            f += 1;
        }
        true
    }
    if count_solutions(ws, target) == Dim::Finite(0) {
        return true;
    }
    go(ws, 0, target, &mut vec![], out, limit)
}

fn minimalize(mut gens: Vec<Vec<i32>>) -> Vec<Vec<i32>> {
    gens.sort_by_key(|g| g.iter().map(|&e| e as i64).sum::<i64>());
    gens.dedup();
    let mut out: Vec<Vec<i32>> = vec![];
    for g in gens {
        if !out.iter().any(|h| h.iter().zip(&g).all(|(a, b)| a <= b)) {
            out.push(g);
        }
    }
    out
}

struct Walker<'a> {
    weights: &'a [i64],
    target: i64,
}

enum Sink<'a> {
    Count(Dim),
    List(&'a mut Vec<Vec<i32>>, usize, bool),
}

impl Walker<'_> {
    fn rec(&self, gens: Vec<Vec<i32>>, active: &mut Vec<bool>, fixed: &mut Vec<i32>, free: &mut Vec<usize>, sink: &mut Sink) {
        if let Sink::Count(Dim::Infinite) = sink {
            return;
        }
        if let Sink::List(_, _, false) = sink {
            return;
        }
        if gens.iter().any(|g| g.iter().all(|&e| e == 0)) {
            return;
        }
        let n = active.len();
        let mut best: Option<(usize, i32)> = None;
        for v in 0..n {
            if !active[v] {
                continue;
            }
            let e = gens.iter().map(|g| g[v]).max().unwrap_or(0);
            if e > 0 && best.is_none_or(|(_, be)| e > be) {
                best = Some((v, e));
            }
        }
        let Some((v, ev)) = best else {
            let mut fv: Vec<usize> = free.clone();
            fv.extend((0..n).filter(|&u| active[u]));
            let ws: Vec<i64> = fv.iter().map(|&u| self.weights[u]).collect();
            let base: i64 = fixed.iter().zip(self.weights).map(|(&e, &w)| e as i64 * w).sum();
            match sink {
                Sink::Count(d) => *d = *d + count_solutions(&ws, self.target - base),
                Sink::List(out, limit, ok) => {
                    if count_solutions(&ws, self.target - base) == Dim::Infinite {
                        *ok = false;
                        return;
                    }
                    let mut sols = vec![];
                    if !enumerate_solutions(&ws, self.target - base, &mut sols, *limit) {
                        *ok = false;
                        return;
                    }
                    for s in sols {
                        let mut e = fixed.clone();
                        for (k, &u) in fv.iter().enumerate() {
                            e[u] += s[k] as i32;
                        }
                        out.push(e);
                        if out.len() > *limit {
                            *ok = false;
                            return;
                        }
                    }
                }
            }
            return;
        };
        active[v] = false;
        for a in 0..ev {
            let sub: Vec<Vec<i32>> = gens
                .iter()
                .filter(|g| g[v] <= a)
                .map(|g| {
                    let mut h = g.clone();
                    h[v] = 0;
                    h
                })
                .collect();
            fixed[v] = a;
            self.rec(minimalize(sub), active, fixed, free, sink);
        }
        let sub: Vec<Vec<i32>> = gens
            .iter()
            .map(|g| {
                let mut h = g.clone();
                h[v] = 0;
                h
            })
            .collect();
        fixed[v] = ev;
        free.push(v);
        self.rec(minimalize(sub), active, fixed, free, sink);
        free.pop();
        fixed[v] = 0;
        active[v] = true;
    }
}

/// Number of monomials of weight `target` not divisible by any generator.
pub fn count_standard(gens: &[Vec<i32>], weights: &[i64], target: i64) -> Dim {
    let n = weights.len();
    let w = Walker { weights, target };
    let mut sink = Sink::Count(Dim::Finite(0));
    w.rec(minimalize(gens.to_vec()), &mut vec![true; n], &mut vec![0; n], &mut vec![], &mut sink);
    match sink {
        Sink::Count(d) => d,
        _ => unreachable!(),
    }
}

/// Explicit list of the standard monomials of weight `target`; `None` if infinitely many
/// or more than `limit`.
pub fn enumerate_standard(gens: &[Vec<i32>], weights: &[i64], target: i64, limit: usize) -> Option<Vec<Vec<i32>>> {
    let n = weights.len();
    let w = Walker { weights, target };
    let mut out = vec![];
    let mut sink = Sink::List(&mut out, limit, true);
    w.rec(minimalize(gens.to_vec()), &mut vec![true; n], &mut vec![0; n], &mut vec![], &mut sink);
    let ok = matches!(sink, Sink::List(_, _, true));
    if !ok {
        return None;
    }
    out.sort();
    Some(out)
}
