//! The two partial deciders: equality of C-finite functions and eventual
//! inequality `f(t) >= g(t)` for real problems.
//!
//! Both run an outer loop over an accuracy index `N`. A run either halts with a
//! proved answer or reports `Exhausted` once its fuel (number of outer
//! iterations) or precision budget is spent.

mod equality;
mod inequality;

pub use equality::decide_equality;
pub use inequality::decide_ultimate_inequality;

use serde::{Deserialize, Serialize};

use crate::cfinite::CauchyProblem;
use crate::realnum::{BallSummary, ComplexBall, Dyadic};

/// Three-valued truth.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kleenean {
    True,
    False,
    Unknown,
}

impl Kleenean {
    pub fn not(self) -> Self {
        match self {
            Kleenean::True => Kleenean::False,
            Kleenean::False => Kleenean::True,
            Kleenean::Unknown => Kleenean::Unknown,
        }
    }

    pub fn is_known(self) -> bool {
        self != Kleenean::Unknown
    }

    /// `True` when the real part of `x` is at least `2^-n`, `False` when at most `-2^-n`.
    pub fn from_threshold(x: &ComplexBall, n: i64) -> Self {
        let eps = Dyadic::pow2(-n);
        if x.re_lower() >= eps {
            Kleenean::True
        } else if x.re_upper() <= -eps {
            Kleenean::False
        } else {
            Kleenean::Unknown
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    True,
    False,
    Exhausted,
}

/// The rule that ended a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HaltRule {
    /// A simple real root of the first problem dominates everything.
    FirstDominates,
    /// A simple real root of the second problem dominates everything.
    SecondDominates,
    /// Each side has one dominant simple real root and their signs disagree.
    BothDominantOpposite,
    /// Nonreal roots above every real root carry a nonzero coefficient.
    OscillationDominates,
    /// Every candidate leading coefficient at the largest real root is negative.
    RealLeadingNegative,
    /// Some prefix term of the two recurrences certifiably differs.
    PrefixDiffers,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IterationRecord {
    pub iteration: u32,
    pub precision: i64,
    pub restarts: u32,
    /// Root balls of the first problem followed by those of the second.
    pub roots: Vec<BallSummary>,
    /// Row `j` has a `1` in column `k` when root `j` may have real part at most that of root `k`.
    pub relation: Vec<String>,
    pub first_dominant: Vec<usize>,
    pub second_dominant: Vec<usize>,
    pub near_real: Vec<usize>,
    pub first_real_dominant: Vec<usize>,
    pub second_real_dominant: Vec<usize>,
    pub above_real: Vec<usize>,
    pub leading: Vec<BallSummary>,
    pub first_positive: Kleenean,
    pub second_positive: Kleenean,
    /// Equality runs: index of the first certified prefix difference.
    pub differing_index: Option<usize>,
    pub fired: Option<HaltRule>,
}

impl IterationRecord {
    fn empty(iteration: u32, precision: i64, restarts: u32) -> Self {
        IterationRecord {
            iteration,
            precision,
            restarts,
            roots: vec![],
            relation: vec![],
            first_dominant: vec![],
            second_dominant: vec![],
            near_real: vec![],
            first_real_dominant: vec![],
            second_real_dominant: vec![],
            above_real: vec![],
            leading: vec![],
            first_positive: Kleenean::Unknown,
            second_positive: Kleenean::Unknown,
            differing_index: None,
            fired: None,
        }
    }
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct DecisionTrace {
    pub iterations: Vec<IterationRecord>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Verdict {
    pub outcome: Outcome,
    pub fuel_used: u32,
    pub final_precision: i64,
    pub halted_by: Option<HaltRule>,
    pub trace: Option<DecisionTrace>,
}

#[derive(Clone, Debug)]
pub struct DecideOptions {
    /// Maximum number of outer iterations.
    pub fuel: u32,
    /// Working precision cap in bits.
    pub max_prec: i64,
    pub record_trace: bool,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions {
            fuel: 40,
            max_prec: 1 << 16,
            record_trace: false,
        }
    }
}

impl DecideOptions {
    pub fn with_fuel(fuel: u32) -> Self {
        DecideOptions {
            fuel,
            ..Default::default()
        }
    }
}

/// Working precision for outer iteration `n_iter`, before restarts.
pub fn precision_schedule(n_iter: u32, bound: i64, n: usize, m: usize) -> i64 {
    8 + (n as i64 + m as i64) * (bound.max(1) + 2) + n_iter as i64 + 1
}

/// Bit bound on initial values and root moduli of both problems.
pub fn magnitude_bound(p: &CauchyProblem, q: &CauchyProblem) -> i64 {
    let norm = |xs: Vec<ComplexBall>| {
        xs.iter()
            .map(|x| x.abs_upper())
            .fold(Dyadic::zero(), |a, b| Dyadic::max(&a, &b))
    };
    let one = Dyadic::one();
    let candidates = [
        norm(p.init_balls(4)),
        norm(q.init_balls(4)),
        &norm(p.char_poly(4).coeffs().to_vec()) + &one,
        &norm(q.char_poly(4).coeffs().to_vec()) + &one,
    ];
    let top = candidates.iter().fold(Dyadic::zero(), |a, b| Dyadic::max(&a, b));
    (&top + &one).log2_ceil().max(0) + 1
}

/// Bits to query coefficients at so that roots of a degree-`n` polynomial
/// come out to about `2^-m`.
pub(crate) fn coefficient_precision(m: i64, n: usize, bound: i64) -> i64 {
    let n = n.max(1) as i64;
    n * (m + 4 + n * bound) + 32
}

fn finish(outcome: Outcome, fuel_used: u32, prec: i64, halted_by: Option<HaltRule>, trace: Option<DecisionTrace>) -> Verdict {
    Verdict {
        outcome,
        fuel_used,
        final_precision: prec,
        halted_by,
        trace,
    }
}
