use crate::cfinite::{recurrence_extend, CauchyProblem};
use crate::error::{DecideError, PolyError};
use crate::poly::{find_roots, from_roots};
use crate::realnum::{ComplexBall, Dyadic};
use crate::vandermonde::g_function;

use super::equality::prefix;
use super::{
    coefficient_precision, finish, magnitude_bound, precision_schedule, DecideOptions, DecisionTrace, HaltRule,
    IterationRecord, Kleenean, Outcome, Verdict,
};

/// Decide whether `f(t) >= g(t)` for all large `t`, where `f` and `g` solve
/// the real problems `p` and `q`.
///
/// Root indices `0..n` belong to `p` and `n..n+m` to `q`.
pub fn decide_ultimate_inequality(
    p: &CauchyProblem,
    q: &CauchyProblem,
    opts: &DecideOptions,
) -> Result<Verdict, DecideError> {
    if opts.fuel == 0 {
        return Err(DecideError::NoFuel);
    }
    if !p.is_real() || !q.is_real() {
        return Err(DecideError::NotReal);
    }
    let (n, m) = (p.order(), q.order());
    let bound = magnitude_bound(p, q);
    let mut trace = opts.record_trace.then(DecisionTrace::default);
    let mut prec = 0;
    for it in 0..opts.fuel {
        let base = precision_schedule(it, bound, n, m);
        let mut restarts = 0;
        let step = loop {
            prec = base << restarts;
            if prec > opts.max_prec {
                return Ok(finish(Outcome::Exhausted, it, opts.max_prec, None, trace));
            }
            match iteration(p, q, it, prec, bound) {
                Ok(s) => break s,
                Err(PolyError::PrecisionExhausted(_)) | Err(PolyError::LengthMismatch(..)) => restarts += 1,
            }
        };
        let (outcome, mut rec) = step;
        rec.restarts = restarts;
        let fired = rec.fired;
        if let Some(t) = trace.as_mut() {
            t.iterations.push(rec);
        }
        if let Some(o) = outcome {
            return Ok(finish(o, it + 1, prec, fired, trace));
        }
    }
    Ok(finish(Outcome::Exhausted, opts.fuel, prec, None, trace))
}

/// Root enclosures no tighter than `2^-prec`, so that exact and named inputs
/// of the same problem are treated alike.
fn roots_of(p: &CauchyProblem, prec: i64, bound: i64) -> Result<Vec<ComplexBall>, PolyError> {
    let cp = coefficient_precision(prec, p.order(), bound);
    let list = find_roots(&p.char_poly(cp), prec)?;
    let slack = Dyadic::pow2(-prec);
    Ok(list
        .roots
        .into_iter()
        .map(|z| z.with_prec(prec + 32).widen(&slack))
        .collect())
}

/// `(-1)^k` times `x`.
fn signed(x: ComplexBall, k: usize) -> ComplexBall {
    if k % 2 == 0 {
        x
    } else {
        x.neg()
    }
}

/// Candidate leading coefficients at a cluster of near-real roots of one side.
///
/// `cluster` indexes the near-real dominant roots of this side, `others` the
/// remaining roots, `init` its initial values, `shift` the extra sign.
fn leading_candidates(
    roots: &[ComplexBall],
    cluster: &[usize],
    others: &[usize],
    init: &[ComplexBall],
    shift: usize,
) -> Vec<ComplexBall> {
    let order = cluster.len() + others.len();
    let hull = cluster[1..]
        .iter()
        .fold(roots[cluster[0]].clone(), |h, &j| h.hull(&roots[j]));
    (1..=cluster.len())
        .map(|l| {
            let mut args = vec![hull.clone(); 1 + cluster.len() - l];
            args.extend(others.iter().map(|&j| roots[j].clone()));
            signed(g_function(l, order, &args, init).real_part(), order - l + shift)
        })
        .collect()
}

/// Sign of the coefficient of a lone dominant simple root.
fn lone_sign(roots: &[ComplexBall], j1: usize, side: std::ops::Range<usize>, init: &[ComplexBall], n_iter: u32) -> Kleenean {
    let mut args = vec![roots[j1].clone()];
    args.extend(side.clone().filter(|&j| j != j1).map(|j| roots[j].clone()));
    let g = signed(g_function(1, side.len(), &args, init).real_part(), side.len() - 1);
    Kleenean::from_threshold(&g, n_iter as i64)
}

type Step = (Option<Outcome>, IterationRecord);

fn iteration(p: &CauchyProblem, q: &CauchyProblem, n_iter: u32, prec: i64, bound: i64) -> Result<Step, PolyError> {
    let (n, m) = (p.order(), q.order());
    let total = n + m;
    let mut rec = IterationRecord::empty(n_iter, prec, 0);

    let mut roots = roots_of(p, prec, bound)?;
    roots.extend(roots_of(q, prec, bound)?);
    let wp = prec + 32;
    let u = p.init_balls(wp);
    let v = q.init_balls(wp);

    // j may lie weakly left of k
    let below = |j: usize, k: usize| roots[j].re_lower() <= roots[k].re_upper();
    let first = 0..n;
    let second = n..total;
    let dominant = |k: &usize| (0..total).all(|j| below(j, *k));
    let dom1: Vec<usize> = first.clone().filter(dominant).collect();
    let dom2: Vec<usize> = second.clone().filter(dominant).collect();

    let mut first_pos = Kleenean::Unknown;
    let mut second_pos = Kleenean::Unknown;
    if dom1.len() == 1 {
        first_pos = lone_sign(&roots, dom1[0], first.clone(), &u, n_iter);
    }
    if dom2.len() == 1 {
        second_pos = lone_sign(&roots, dom2[0], second.clone(), &v, n_iter);
    }

    rec.roots = roots.iter().map(Into::into).collect();
    rec.relation = (0..total)
        .map(|j| (0..total).map(|k| if below(j, k) { '1' } else { '0' }).collect())
        .collect();
    rec.first_dominant = dom1.clone();
    rec.second_dominant = dom2.clone();
    rec.first_positive = first_pos;
    rec.second_positive = second_pos;

    let halt = match (dom1.len(), dom2.len()) {
        (1, 0) if first_pos.is_known() => Some((first_pos, HaltRule::FirstDominates)),
        (0, 1) if second_pos.is_known() => Some((second_pos.not(), HaltRule::SecondDominates)),
        (1, 1) if first_pos.is_known() && first_pos == second_pos.not() => {
            Some((first_pos, HaltRule::BothDominantOpposite))
        }
        _ => None,
    };
    if let Some((k, rule)) = halt {
        rec.fired = Some(rule);
        let o = if k == Kleenean::True { Outcome::True } else { Outcome::False };
        return Ok((Some(o), rec));
    }

    let near_real: Vec<usize> = (0..total).filter(|&j| roots[j].may_be_real()).collect();
    let real_dom = |k: &usize| near_real.contains(k) && near_real.iter().all(|&j| below(j, *k));
    let rdom1: Vec<usize> = first.clone().filter(real_dom).collect();
    let rdom2: Vec<usize> = second.clone().filter(real_dom).collect();
    let above: Vec<usize> = (0..total)
        .filter(|&j| near_real.iter().all(|&k| !below(j, k)))
        .collect();
    rec.near_real = near_real.clone();
    rec.first_real_dominant = rdom1.clone();
    rec.second_real_dominant = rdom2.clone();
    rec.above_real = above.clone();

    if !above.is_empty() {
        // Does f - g differ from its projection without the roots above every real root?
        let wu = prefix(p, total, wp);
        let wv = prefix(q, total, wp);
        let w: Vec<ComplexBall> = wu.iter().zip(&wv).map(|(a, b)| a.sub(b)).collect();
        let rest: Vec<ComplexBall> = (0..total)
            .filter(|j| !above.contains(j))
            .map(|j| roots[j].clone())
            .collect();
        let l = rest.len();
        let projected = if l == 0 {
            vec![ComplexBall::zero(wp); total]
        } else {
            let e = from_roots(&rest);
            recurrence_extend(e.coeffs(), &w[..l], total)
        };
        if (l..total).any(|j| w[j].sub(&projected[j]).excludes_zero()) {
            rec.fired = Some(HaltRule::OscillationDominates);
            return Ok((Some(Outcome::False), rec));
        }
    }

    let others = |side: std::ops::Range<usize>, cl: &[usize]| -> Vec<usize> {
        side.filter(|j| !cl.contains(j)).collect()
    };
    let mut leading = Vec::new();
    if !rdom1.is_empty() {
        leading.extend(leading_candidates(&roots, &rdom1, &others(first.clone(), &rdom1), &u, 0));
    }
    if !rdom2.is_empty() {
        leading.extend(leading_candidates(&roots, &rdom2, &others(second.clone(), &rdom2), &v, 1));
    }
    let eps = Dyadic::pow2(-(n_iter as i64));
    let all_negative = !leading.is_empty() && leading.iter().all(|x| x.re_upper() < -eps.clone());
    rec.leading = leading.iter().map(Into::into).collect();
    if all_negative {
        rec.fired = Some(HaltRule::RealLeadingNegative);
        return Ok((Some(Outcome::False), rec));
    }
    Ok((None, rec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn r(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    fn prob(c: &[BigRational], u: &[BigRational]) -> CauchyProblem {
        CauchyProblem::from_rationals(c, u).unwrap()
    }

    fn run(p: &CauchyProblem, q: &CauchyProblem, fuel: u32) -> Verdict {
        let opts = DecideOptions {
            fuel,
            record_trace: true,
            ..Default::default()
        };
        decide_ultimate_inequality(p, q, &opts).unwrap()
    }

    #[test]
    fn cosh_beats_half_exponential() {
        let f = prob(&[r(-1, 1), r(0, 1)], &[r(2, 1), r(0, 1)]);
        let g = prob(&[r(-1, 2)], &[r(5, 1)]);
        let v = run(&f, &g, 10);
        assert_eq!(v.outcome, Outcome::True);
        assert_eq!(v.halted_by, Some(HaltRule::FirstDominates));
        assert_eq!(run(&g, &f, 10).outcome, Outcome::False);
    }

    #[test]
    fn cosine_is_not_eventually_nonnegative() {
        let f = prob(&[r(1, 1), r(0, 1)], &[r(1, 1), r(0, 1)]);
        let v = run(&f, &CauchyProblem::zero(), 10);
        assert_eq!(v.outcome, Outcome::False);
        assert_eq!(v.halted_by, Some(HaltRule::OscillationDominates));
        let rec = &v.trace.unwrap().iterations[0];
        assert!(rec.near_real.is_empty());
        assert_eq!(rec.above_real, vec![0, 1]);
    }

    #[test]
    fn shared_root_boundary_exhausts() {
        // e^t + e^-t against e^t
        let f = prob(&[r(-1, 1), r(0, 1)], &[r(2, 1), r(0, 1)]);
        let g = prob(&[r(-1, 1)], &[r(1, 1)]);
        let v = run(&f, &g, 12);
        assert_eq!(v.outcome, Outcome::Exhausted);
        assert!(v.trace.unwrap().iterations.iter().all(|r| r.fired.is_none()));
    }

    #[test]
    fn double_root_negative() {
        // -(1 + t) e^t against 0, and (1 + t) e^t against 0
        let neg = prob(&[r(1, 1), r(-2, 1)], &[r(-1, 1), r(-2, 1)]);
        let v = run(&neg, &CauchyProblem::zero(), 10);
        assert_eq!(v.outcome, Outcome::False);
        assert_eq!(v.halted_by, Some(HaltRule::RealLeadingNegative));
        let pos = prob(&[r(1, 1), r(-2, 1)], &[r(1, 1), r(2, 1)]);
        assert_eq!(run(&pos, &CauchyProblem::zero(), 10).outcome, Outcome::Exhausted);
    }

    #[test]
    fn both_sides_dominant() {
        // 2 e^t against -e^(t/2): true
        let f = prob(&[r(-1, 1)], &[r(2, 1)]);
        let g = prob(&[r(-1, 2)], &[r(-1, 1)]);
        let v = run(&f, &g, 10);
        assert_eq!(v.outcome, Outcome::True);
    }

    #[test]
    fn complex_input_rejected() {
        let f = CauchyProblem::from_exact(
            &[crate::scalar::qc_int(0, 1)],
            &[crate::scalar::qc_int(1, 0)],
        )
        .unwrap();
        let err = decide_ultimate_inequality(&f, &CauchyProblem::zero(), &DecideOptions::default()).unwrap_err();
        assert_eq!(err, DecideError::NotReal);
    }
}
