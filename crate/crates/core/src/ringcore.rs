//! Exact rationals, monomials, sparse polynomials and presented Z-graded rings.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{input, Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exponent vector. Entries are nonnegative for ring elements; localized terms may carry
/// negative entries.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Monomial(Vec<i32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn new(exps: Vec<i32>) -> Self {
        Monomial(exps)
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exps(&self) -> &[i32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial(self.0.iter().map(|a| a * k as i32).collect())
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }

    /// `o / self`, assuming divisibility.
    pub fn quotient_of(&self, o: &Monomial) -> Monomial {
        Monomial(o.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd_is_one(&self, o: &Monomial) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// Degree reverse lexicographic comparison by total exponent degree.
pub fn degrevlex(a: &Monomial, b: &Monomial) -> Ordering {
    let (da, db) = (a.degree(), b.degree());
    if da != db {
        return da.cmp(&db);
    }
    for i in (0..a.0.len()).rev() {
        if a.0[i] != b.0[i] {
            return b.0[i].cmp(&a.0[i]);
        }
    }
    Ordering::Equal
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct WeightVector(pub Vec<i64>);

impl WeightVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

pub fn weight_of(m: &Monomial, w: &WeightVector) -> Result<i64> {
    if m.nvars() != w.len() {
        return input(format!(
            "monomial has {} exponents but the weight vector has {} entries",
            m.nvars(),
            w.len()
        ));
    }
    Ok(mono_weight(m, &w.0))
}

pub(crate) fn mono_weight(m: &Monomial, w: &[i64]) -> i64 {
    m.0.iter().zip(w).map(|(&e, &wi)| e as i64 * wi).sum()
}

/// Sparse polynomial; terms sorted strictly descending in degrevlex, no zero coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    nvars: usize,
    terms: Vec<(Monomial, Rational)>,
}

impl Polynomial {
    pub fn zero(n: usize) -> Self {
        Polynomial { nvars: n, terms: vec![] }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(Monomial::one(n), rat(1))
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let n = m.nvars();
        if c.is_zero() {
            return Self::zero(n);
        }
        Polynomial { nvars: n, terms: vec![(m, c)] }
    }

    pub fn var(n: usize, i: usize) -> Self {
        Self::monomial(Monomial::var(n, i), rat(1))
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        Self::monomial(Monomial::one(n), c)
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut map: BTreeMap<Vec<i32>, Rational> = BTreeMap::new();
        for (m, c) in terms {
            *map.entry(m.0).or_insert_with(Rational::zero) += c;
        }
        let mut terms: Vec<(Monomial, Rational)> = map
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (Monomial(e), c))
            .collect();
        terms.sort_by(|a, b| degrevlex(&b.0, &a.0));
        Polynomial { nvars: n, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&(Monomial, Rational)> {
        self.terms.first()
    }

    pub fn total_degree(&self) -> i64 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .iter()
            .find(|(m, _)| m.is_one())
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    fn merge(&self, o: &Polynomial, sign: i64) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < o.terms.len() {
            let ord = if i == self.terms.len() {
                Ordering::Less
            } else if j == o.terms.len() {
                Ordering::Greater
            } else {
                degrevlex(&self.terms[i].0, &o.terms[j].0)
            };
            match ord {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if sign < 0 { -o.terms[j].1.clone() } else { o.terms[j].1.clone() };
                    out.push((o.terms[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if sign < 0 {
                        &self.terms[i].1 - &o.terms[j].1
                    } else {
                        &self.terms[i].1 + &o.terms[j].1
                    };
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Polynomial { nvars: self.nvars, terms: out }
    }

    pub fn add(&self, o: &Polynomial) -> Polynomial {
        self.merge(o, 1)
    }

    pub fn sub(&self, o: &Polynomial) -> Polynomial {
        self.merge(o, -1)
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(&rat(-1))
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect(),
        }
    }

    pub fn mul(&self, o: &Polynomial) -> Polynomial {
        let mut acc = Polynomial::zero(self.nvars);
        for (m, c) in &o.terms {
            acc = acc.add(&self.mul_term(m, c));
        }
        acc
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.nvars);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Weight if homogeneous; `None` for inhomogeneous input, `Some(None)` for zero.
    pub fn homogeneous_weight(&self, w: &[i64]) -> Option<Option<i64>> {
        let mut it = self.terms.iter().map(|(m, _)| mono_weight(m, w));
        match it.next() {
            None => Some(None),
            Some(first) => {
                if it.all(|x| x == first) {
                    Some(Some(first))
                } else {
                    None
                }
            }
        }
    }

    pub fn fmt_with(&self, vars: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mut factors = vec![];
            for (i, &e) in m.exps().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(vars[i].clone()),
                    _ => factors.push(format!("{}^{}", vars[i], e)),
                }
            }
            if factors.is_empty() {
                let _ = write!(s, "{}", a);
            } else {
                if !a.is_one() {
                    let _ = write!(s, "{}*", a);
                }
                s.push_str(&factors.join("*"));
            }
        }
        s
    }

    pub fn parse(text: &str, vars: &[String]) -> Result<Polynomial> {
        Parser { src: text, pos: 0, vars }.polynomial()
    }
}

pub fn homogeneous_components(p: &Polynomial, w: &WeightVector) -> BTreeMap<i64, Polynomial> {
    let mut out: BTreeMap<i64, Vec<(Monomial, Rational)>> = BTreeMap::new();
    for (m, c) in p.terms() {
        out.entry(mono_weight(m, &w.0)).or_default().push((m.clone(), c.clone()));
    }
    out.into_iter()
        .map(|(k, t)| (k, Polynomial { nvars: p.nvars(), terms: t }))
        .collect()
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    vars: &'a [String],
}

impl Parser<'_> {
    fn err<T>(&self, msg: &str) -> Result<T> {
        input(format!("cannot parse polynomial '{}' at column {}: {}", self.src, self.pos + 1, msg))
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn polynomial(&mut self) -> Result<Polynomial> {
        let n = self.vars.len();
        let mut acc = Polynomial::zero(n);
        self.skip_ws();
        let mut sign = 1;
        if let Some(c @ ('+' | '-')) = self.peek() {
            sign = if c == '-' { -1 } else { 1 };
            self.pos += 1;
        }
        loop {
            let t = self.term()?;
            acc = if sign < 0 { acc.sub(&t) } else { acc.add(&t) };
            self.skip_ws();
            match self.peek() {
                None => return Ok(acc),
                Some('+') => sign = 1,
                Some('-') => sign = -1,
                Some(_) => return self.err("expected '+' or '-'"),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let n = self.vars.len();
        let mut coeff = rat(1);
        let mut mono = vec![0i32; n];
        let mut seen = false;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    coeff *= self.number()?;
                    seen = true;
                }
                Some(c) if c.is_alphabetic() || c == '_' => {
                    let start = self.pos;
                    while self.peek().is_some_and(|c| c.is_alphanumeric() || c == '_') {
                        self.pos += 1;
                    }
                    let word = &self.src[start..self.pos];
                    let idx = split_identifier(word, self.vars)
                        .ok_or_else(|| Error::Input(format!("unknown variable '{}' in '{}'", word, self.src)))?;
                    self.skip_ws();
                    let mut e = 1;
                    if self.peek() == Some('^') {
                        self.pos += 1;
                        self.skip_ws();
                        e = self.integer()? as i32;
                    }
                    let last = *idx.last().unwrap();
                    for &i in &idx[..idx.len() - 1] {
                        mono[i] += 1;
                    }
                    mono[last] += e;
                    seen = true;
                }
                _ => {
                    if !seen {
                        return self.err("expected a term");
                    }
                    return Ok(Polynomial::monomial(Monomial(mono), coeff));
                }
            }
            self.skip_ws();
            if self.peek() == Some('*') {
                self.pos += 1;
            }
        }
    }

    fn integer(&mut self) -> Result<i64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        self.src[start..self.pos].parse().or_else(|_| self.err("integer out of range"))
    }

    fn number(&mut self) -> Result<Rational> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let num: BigInt = self.src[start..self.pos].parse().unwrap();
        if self.peek() == Some('/') {
            self.pos += 1;
            let s2 = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            if s2 == self.pos {
                return self.err("expected a denominator");
            }
            let den: BigInt = self.src[s2..self.pos].parse().unwrap();
            if den.is_zero() {
                return self.err("zero denominator");
            }
            return Ok(Rational::new(num, den));
        }
        Ok(Rational::from_integer(num))
    }
}

/// Splits an identifier into known variable names, longest match first.
fn split_identifier(word: &str, vars: &[String]) -> Option<Vec<usize>> {
    if let Some(i) = vars.iter().position(|v| v == word) {
        return Some(vec![i]);
    }
    let mut best: Vec<(usize, usize)> = vars
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_empty() && word.starts_with(v.as_str()))
        .map(|(i, v)| (v.len(), i))
        .collect();
    best.sort_by(|a, b| b.cmp(a));
    for (len, i) in best {
        if let Some(mut rest) = split_identifier(&word[len..], vars) {
            rest.insert(0, i);
            return Some(rest);
        }
    }
    None
}

/// A = Q[x1..xn]/J with a Z-weight per variable and the distinguished ideals I+ and I-.
#[derive(Clone, Debug)]
pub struct GradedRing {
    pub vars: Vec<String>,
    pub weights: WeightVector,
    pub relations: Vec<Polynomial>,
    pub i_plus: Vec<Polynomial>,
    pub i_minus: Vec<Polynomial>,
    pub torus: bool,
    pub(crate) relations_gb_cache: std::sync::OnceLock<Vec<Polynomial>>,
}

pub fn make_graded_ring(
    vars: Vec<String>,
    weights: Vec<i64>,
    relations: Vec<Polynomial>,
    i_plus: Option<Vec<Polynomial>>,
    i_minus: Option<Vec<Polynomial>>,
) -> Result<GradedRing> {
    let n = vars.len();
    if weights.len() != n {
        return input(format!("{} variables but {} weights", n, weights.len()));
    }
    for (i, v) in vars.iter().enumerate() {
        if vars[..i].contains(v) {
            return input(format!("duplicate variable name '{}'", v));
        }
    }
    let check_len = |p: &Polynomial| -> Result<()> {
        if p.nvars() != n {
            return input("polynomial variable count does not match the ring");
        }
        Ok(())
    };
    let mut rels = vec![];
    for r in relations {
        check_len(&r)?;
        if r.homogeneous_weight(&weights).is_none() {
            return input(format!("relation '{}' is not weight-homogeneous", r.fmt_with(&vars)));
        }
        if !r.is_zero() {
            rels.push(r);
        }
    }
    let default_side = |sign: i64, given: Option<Vec<Polynomial>>, label: &str| -> Result<Vec<Polynomial>> {
        match given {
            Some(gens) => {
                for g in &gens {
                    check_len(g)?;
                    match g.homogeneous_weight(&weights) {
                        Some(Some(wt)) if wt.signum() == sign => {}
                        _ => {
                            return input(format!(
                                "{} generator '{}' must be homogeneous of {} weight",
                                label,
                                g.fmt_with(&vars),
                                if sign > 0 { "positive" } else { "negative" }
                            ))
                        }
                    }
                }
                Ok(gens)
            }
            None => {
                if !rels.is_empty() {
                    return input(format!("{} generators must be supplied for a quotient ring", label));
                }
                Ok((0..n)
                    .filter(|&i| weights[i].signum() == sign)
                    .map(|i| Polynomial::var(n, i))
                    .collect())
            }
        }
    };
    let ip = default_side(1, i_plus, "I+")?;
    let im = default_side(-1, i_minus, "I-")?;
    let is_var = |p: &Polynomial| {
        p.is_monomial() && p.terms()[0].0.degree() == 1 && p.terms()[0].0.exps().iter().all(|&e| e >= 0)
    };
    let torus = rels.iter().all(|r| r.is_monomial()) && ip.iter().all(is_var) && im.iter().all(is_var);
    Ok(GradedRing {
        vars,
        weights: WeightVector(weights),
        relations: rels,
        i_plus: ip,
        i_minus: im,
        torus,
        relations_gb_cache: std::sync::OnceLock::new(),
    })
}

impl GradedRing {
    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn w(&self) -> &[i64] {
        &self.weights.0
    }

    pub fn parse(&self, s: &str) -> Result<Polynomial> {
        Polynomial::parse(s, &self.vars)
    }

    pub fn fmt(&self, p: &Polynomial) -> String {
        p.fmt_with(&self.vars)
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::var(self.nvars(), i)
    }

    pub fn ideal(&self, plus: bool) -> &[Polynomial] {
        if plus {
            &self.i_plus
        } else {
            &self.i_minus
        }
    }

    /// Variable indices if every generator of the ideal is a single variable.
    pub fn ideal_variables(gens: &[Polynomial]) -> Option<Vec<usize>> {
        let mut out = vec![];
        for g in gens {
            if !g.is_monomial() || g.terms()[0].0.degree() != 1 {
                return None;
            }
            let i = g.terms()[0].0.exps().iter().position(|&e| e == 1)?;
            if !out.contains(&i) {
                out.push(i);
            }
        }
        out.sort();
        Some(out)
    }

    /// Quotient ring by extra homogeneous relations, keeping the distinguished ideals.
    pub fn quotient(&self, extra: &[Polynomial]) -> Result<GradedRing> {
        let mut rels = self.relations.clone();
        rels.extend(extra.iter().cloned());
        make_graded_ring(
            self.vars.clone(),
            self.weights.0.clone(),
            rels,
            Some(self.i_plus.clone()),
            Some(self.i_minus.clone()),
        )
    }
}
