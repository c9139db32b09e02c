use crate::realnum::ComplexBall;
use crate::scalar::Scalar;

use super::CauchyProblem;

/// The first terms `u_0..u_K` of the recurrence attached to a problem.
#[derive(Clone, Debug)]
pub struct RecurrencePrefix {
    pub values: Vec<ComplexBall>,
    pub generator: CauchyProblem,
}

/// Extend `u` to `len` terms by `u_{j+n} = -(c_{n-1} u_{j+n-1} + .. + c_0 u_j)`.
pub fn recurrence_extend<T: Scalar>(c: &[T], u: &[T], len: usize) -> Vec<T> {
    let n = c.len();
    let mut out: Vec<T> = u.iter().take(len).cloned().collect();
    if n == 0 {
        return out;
    }
    while out.len() < len {
        let j = out.len();
        let mut acc = c[0].zero_like();
        for i in 0..n {
            acc = acc.sub(&c[i].mul(&out[j - n + i]));
        }
        out.push(acc);
    }
    out
}

/// Guard bits needed so that `k` recurrence steps keep the error below `2^-m`.
pub fn recurrence_guard(p: &CauchyProblem, k: usize) -> i64 {
    let norm = p
        .coeffs()
        .iter()
        .map(|c| c.to_ball(8).abs_upper().log2_ceil().max(0))
        .max()
        .unwrap_or(0);
    let growth = norm + (p.order() as f64).log2().ceil() as i64 + 2;
    8 + k as i64 * growth
}

/// Terms `u_0..u_k` in ball arithmetic, each ball of radius at most about `2^-m`
/// times the growth of the terms themselves.
pub fn extend_recurrence(p: &CauchyProblem, k: usize, m: i64) -> RecurrencePrefix {
    let len = k + 1;
    if p.order() == 0 {
        return RecurrencePrefix {
            values: vec![ComplexBall::zero(m); len],
            generator: p.clone(),
        };
    }
    let q = m + recurrence_guard(p, k);
    let c: Vec<ComplexBall> = p.coeffs().iter().map(|x| x.to_ball(q)).collect();
    let u = p.init_balls(q);
    RecurrencePrefix {
        values: recurrence_extend(&c, &u, len),
        generator: p.clone(),
    }
}
