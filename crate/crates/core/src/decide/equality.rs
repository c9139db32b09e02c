use crate::cfinite::{recurrence_extend, recurrence_guard, CauchyProblem};
use crate::error::DecideError;
use crate::realnum::ComplexBall;

use super::{finish, magnitude_bound, precision_schedule, DecideOptions, DecisionTrace, HaltRule, IterationRecord, Outcome, Verdict};

/// Halts with `True` once some term `u_j - v_j`, `j < n + m`, is certified
/// nonzero. Equal functions never halt.
pub fn decide_equality(p: &CauchyProblem, q: &CauchyProblem, opts: &DecideOptions) -> Result<Verdict, DecideError> {
    if opts.fuel == 0 {
        return Err(DecideError::NoFuel);
    }
    let (n, m) = (p.order(), q.order());
    let len = n + m;
    let bound = magnitude_bound(p, q);
    let mut trace = opts.record_trace.then(DecisionTrace::default);
    let mut prec = 0;
    for it in 0..opts.fuel {
        prec = precision_schedule(it, bound, n, m);
        if prec > opts.max_prec {
            return Ok(finish(Outcome::Exhausted, it, opts.max_prec, None, trace));
        }
        let u = prefix(p, len, prec);
        let v = prefix(q, len, prec);
        let hit = (0..len).find(|&j| u[j].sub(&v[j]).excludes_zero());
        let fired = hit.map(|_| HaltRule::PrefixDiffers);
        if let Some(t) = trace.as_mut() {
            let mut rec = IterationRecord::empty(it, prec, 0);
            rec.differing_index = hit;
            rec.fired = fired;
            t.iterations.push(rec);
        }
        if hit.is_some() {
            return Ok(finish(Outcome::True, it + 1, prec, fired, trace));
        }
    }
    Ok(finish(Outcome::Exhausted, opts.fuel, prec, None, trace))
}

pub(super) fn prefix(p: &CauchyProblem, len: usize, prec: i64) -> Vec<ComplexBall> {
    if p.order() == 0 {
        return vec![ComplexBall::zero(prec); len];
    }
    let q = prec + recurrence_guard(p, len);
    let c: Vec<ComplexBall> = p.coeffs().iter().map(|x| x.to_ball(q)).collect();
    recurrence_extend(&c, &p.init_balls(q), len)
}
