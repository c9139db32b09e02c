use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::CFiniteError;
use crate::scalar::QComplex;

use super::{ExactExpPoly, RootedProblem};

/// Ground truth for `f(t) >= g(t)` as `t -> infinity`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EventualOrder {
    GeEventually,
    NotGeEventually,
    IdenticallyEqual,
}

impl EventualOrder {
    /// Whether `f >= g` holds for all large `t`.
    pub fn holds(self) -> bool {
        !matches!(self, EventualOrder::NotGeEventually)
    }
}

/// Exact eventual comparison of two problems with known rational roots.
///
/// The difference is written as an exponential polynomial with exact
/// coefficients. Among the terms with the largest real part and, within those,
/// the largest polynomial degree `d`, let `a` be the coefficient of `t^d e^{rho t}`
/// for the real root `rho` (zero if absent) and `b_j` those of the nonreal roots.
/// The nonreal part is an oscillation of mean zero, so `a <= 0` with some
/// `b_j != 0` gives sign changes, and `a > sum 2|b_j|` gives eventual
/// positivity. In between the answer depends on the phases and the oracle
/// declines.
pub fn oracle_eventual_compare(p: &RootedProblem, q: &RootedProblem) -> Result<EventualOrder, CFiniteError> {
    if !p.is_real() || !q.is_real() {
        return Err(CFiniteError::OracleInapplicable("complex-valued input".into()));
    }
    let diff = p.solve().sub(&q.solve());
    classify(&diff)
}

/// Eventual sign class of an exact real exponential polynomial.
pub fn classify(e: &ExactExpPoly) -> Result<EventualOrder, CFiniteError> {
    // (root, degree, leading coefficient) for every nonzero block
    let live: Vec<(&QComplex, usize, &QComplex)> = e
        .terms
        .iter()
        .filter_map(|(l, a)| {
            let d = a.iter().rposition(|x| !x.is_zero())?;
            Some((l, d, &a[d]))
        })
        .collect();
    let Some(top) = live.iter().map(|(l, _, _)| l.re.clone()).max() else {
        return Ok(EventualOrder::IdenticallyEqual);
    };
    let front: Vec<_> = live.iter().filter(|(l, _, _)| l.re == top).collect();
    let deg = front.iter().map(|(_, d, _)| *d).max().unwrap();
    let lead: Vec<_> = front.iter().filter(|(_, d, _)| *d == deg).collect();
    let real = lead
        .iter()
        .find(|(l, _, _)| l.im.is_zero())
        .map(|(_, _, a)| a.re.clone())
        .unwrap_or_else(BigRational::zero);
    let osc: Vec<_> = lead.iter().filter(|(l, _, _)| !l.im.is_zero()).collect();
    if osc.is_empty() {
        return Ok(if real.is_positive() {
            EventualOrder::GeEventually
        } else {
            EventualOrder::NotGeEventually
        });
    }
    if !real.is_positive() {
        return Ok(EventualOrder::NotGeEventually);
    }
    let amplitude: BigRational = osc
        .iter()
        .map(|(_, _, b)| b.re.abs() + b.im.abs())
        .fold(BigRational::zero(), |s, x| s + x);
    if real > amplitude {
        // amplitude counts each conjugate pair twice, bounding 2|b|
        Ok(EventualOrder::GeEventually)
    } else {
        Err(CFiniteError::OracleInapplicable(
            "real and oscillating terms of comparable size share the leading order".into(),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{qc_int, qc_ratio};

    #[test]
    fn cosh_beats_half_exponential() {
        let f = RootedProblem::new(vec![qc_int(1, 0), qc_int(-1, 0)], vec![qc_int(2, 0), qc_int(0, 0)]);
        let g = RootedProblem::new(vec![qc_ratio(1, 2)], vec![qc_int(5, 0)]);
        assert_eq!(oracle_eventual_compare(&f, &g), Ok(EventualOrder::GeEventually));
        assert_eq!(oracle_eventual_compare(&g, &f), Ok(EventualOrder::NotGeEventually));
    }

    #[test]
    fn cosine_against_zero() {
        let f = RootedProblem::new(vec![qc_int(0, 1), qc_int(0, -1)], vec![qc_int(1, 0), qc_int(0, 0)]);
        let z = RootedProblem::zero();
        assert_eq!(oracle_eventual_compare(&f, &z), Ok(EventualOrder::NotGeEventually));
        assert_eq!(oracle_eventual_compare(&z, &f), Ok(EventualOrder::NotGeEventually));
    }

    #[test]
    fn same_function_two_orders() {
        let f = RootedProblem::new(vec![qc_int(1, 0), qc_int(2, 0)], vec![qc_int(1, 0), qc_int(1, 0)]);
        let g = RootedProblem::new(vec![qc_int(1, 0)], vec![qc_int(1, 0)]);
        assert_eq!(oracle_eventual_compare(&f, &g), Ok(EventualOrder::IdenticallyEqual));
    }

    #[test]
    fn shifted_cosine() {
        // 3 + cos t >= 0 and 1/2 + cos t is not
        let base = |c: i64, d: i64| {
            RootedProblem::from_terms(&[
                (qc_int(0, 0), vec![qc_ratio(c, d)]),
                (qc_int(0, 1), vec![qc_ratio(1, 2)]),
                (qc_int(0, -1), vec![qc_ratio(1, 2)]),
            ])
        };
        let z = RootedProblem::zero();
        assert_eq!(oracle_eventual_compare(&base(3, 1), &z), Ok(EventualOrder::GeEventually));
        assert!(oracle_eventual_compare(&base(1, 2), &z).is_err());
        assert_eq!(oracle_eventual_compare(&base(-1, 2), &z), Ok(EventualOrder::NotGeEventually));
    }

    #[test]
    fn complex_rejected() {
        let f = RootedProblem::new(vec![qc_int(0, 1)], vec![qc_int(1, 0)]);
        assert!(matches!(
            oracle_eventual_compare(&f, &RootedProblem::zero()),
            Err(CFiniteError::OracleInapplicable(_))
        ));
    }
}
