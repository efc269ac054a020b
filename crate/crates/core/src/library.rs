//! The four example rings.

use crate::error::Result;
use crate::ringcore::{make_graded_ring, GradedRing};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Example {
    A1Cobordism,
    ProjLine,
    AtiyahFlop,
    StandardFlip,
}

pub const ALL: [Example; 4] = [Example::A1Cobordism, Example::ProjLine, Example::AtiyahFlop, Example::StandardFlip];

impl Example {
    pub fn name(&self) -> &'static str {
        match self {
            Example::A1Cobordism => "a1-cobordism",
            Example::ProjLine => "proj-line",
            Example::AtiyahFlop => "atiyah-flop",
            Example::StandardFlip => "standard-flip",
        }
    }

    pub fn from_name(s: &str) -> Option<Example> {
        ALL.iter().copied().find(|e| e.name() == s)
    }

    pub fn ring(&self) -> GradedRing {
        let (vars, w): (&[&str], Vec<i64>) = match self {
            Example::A1Cobordism => (&["x", "y"], vec![1, -1]),
            Example::ProjLine => (&["x1", "x2"], vec![1, 1]),
            Example::AtiyahFlop => (&["x1", "x2", "y1", "y2"], vec![1, 1, -1, -1]),
            Example::StandardFlip => (&["x1", "x2", "y"], vec![1, 1, -1]),
        };
        polynomial_ring(vars, w).expect("library ring")
    }
}

pub fn polynomial_ring(vars: &[&str], weights: Vec<i64>) -> Result<GradedRing> {
    make_graded_ring(vars.iter().map(|s| s.to_string()).collect(), weights, vec![], None, None)
}
