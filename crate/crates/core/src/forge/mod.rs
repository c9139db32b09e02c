//! Perturbations that turn nearly equal problems into exactly equal ones, and
//! generators of labelled instances for testing and benchmarking.

mod corpus;
mod defect;
mod family;

pub use corpus::{
    equality_corpus, forge_corpus, scaling_family, soundness_corpus, EqualityCase, ForgeCase, LabeledPair,
};
pub use defect::{add_root, recurrence_defect, remove_root};
pub use family::{make_boundary_family, BoundaryKind, FamilyMember, InstanceFamily, Pair};

use num_rational::BigRational;
use num_traits::Zero;

use crate::cfinite::{recurrence_exact, CauchyProblem, RootedProblem};
use crate::error::ForgeError;
use crate::poly::{find_roots, from_roots_exact, maximum_matching, spectral_distance};
use crate::realnum::{ComplexBall, Dyadic, Round};
use crate::scalar::{factorial, qc_to_ball, QComplex};

/// Precision used to turn exact quantities into reported bounds.
const REPORT_PREC: i64 = 256;

/// Sizes attached to one forging run.
#[derive(Clone, Debug)]
pub struct PerturbationBudget {
    /// Bound on the prefix defect.
    pub eps: Dyadic,
    /// Roots closer than this are treated as shared.
    pub eta: Dyadic,
    /// Claimed bound on the spectral distance of each output to its input.
    pub bound: Dyadic,
}

impl PerturbationBudget {
    /// `eta = eps^(1/(4k-2))` and `bound = S^E eta` with
    /// `S = n + m + |c| + |d| + |u| + 2` and `E = 4k (ceil(log2 k) + 1) + 4`.
    pub fn new(eps: &Dyadic, k: usize, scale: &Dyadic) -> Result<Self, ForgeError> {
        if !eps.is_positive() || *eps >= Dyadic::one() {
            return Err(ForgeError::BadEpsilon);
        }
        let k = k.max(1);
        let eta = root_of(eps, 4 * k as u32 - 2);
        let lg = (usize::BITS - (k - 1).leading_zeros()) as i64;
        let e = 4 * k as i64 * (lg + 1) + 4;
        let mut bound = eta.clone();
        for _ in 0..e {
            bound = (&bound * scale).round_rel(64, Round::Up);
        }
        Ok(PerturbationBudget {
            eps: eps.clone(),
            eta,
            bound,
        })
    }
}

/// Upper approximation of `x^(1/k)` for `0 < x < 1`.
fn root_of(x: &Dyadic, k: u32) -> Dyadic {
    let lg = x.log2_ceil() as f64 + (x.to_f64().log2() - x.log2_ceil() as f64).max(-1.0);
    let e = lg / k as f64;
    let whole = e.floor();
    let mut y = Dyadic::from_f64(2f64.powf(e - whole) * (1.0 + 1e-12)).mul_pow2(whole as i64);
    // make sure y^k >= x
    loop {
        let mut p = Dyadic::one();
        for _ in 0..k {
            p = (&p * &y).round_rel(64, Round::Down);
        }
        if p >= *x {
            return y.round_rel(64, Round::Up);
        }
        y = y.mul_pow2(1);
    }
}

fn abs_upper(z: &QComplex) -> Dyadic {
    qc_to_ball(z, REPORT_PREC).abs_upper().round_rel(64, Round::Up)
}

fn norm_upper(v: &[QComplex]) -> Dyadic {
    v.iter().map(abs_upper).fold(Dyadic::zero(), |a, b| Dyadic::max(&a, &b))
}

/// `|a - b| < t` exactly.
fn closer_than(a: &QComplex, b: &QComplex, t: &Dyadic) -> bool {
    let d = a - b;
    let t = t.to_rational();
    &d.re * &d.re + &d.im * &d.im < &t * &t
}

/// Spectral distance between problems of equal order: best root matching plus
/// the sup distance of initial values.
pub fn problem_distance(a: &RootedProblem, b: &RootedProblem) -> Dyadic {
    assert_eq!(a.order(), b.order(), "orders differ");
    let roots = spectral_distance(&a.root_balls(REPORT_PREC), &b.root_balls(REPORT_PREC))
        .expect("equal lengths")
        .upper;
    let init = a
        .init
        .iter()
        .zip(&b.init)
        .map(|(x, y)| abs_upper(&(x - y)))
        .fold(Dyadic::zero(), |s, t| Dyadic::max(&s, &t));
    &roots + &init
}

/// Result of [`forge_equal`].
#[derive(Clone, Debug)]
pub struct ForgeOutcome {
    pub p: RootedProblem,
    pub q: RootedProblem,
    pub budget: PerturbationBudget,
    pub dist_p: Dyadic,
    pub dist_q: Dyadic,
    /// Number of root pairs merged into the common factor.
    pub shared: usize,
}

/// Perturb two problems whose recurrence prefixes agree to within `eps` into
/// problems with identical solutions.
///
/// Roots of `q` within `eta` of a root of `p` are matched, the matched roots of
/// `p` form a common factor, and both outputs take their initial values from
/// the prefix of `p` extended by that factor's recurrence.
pub fn forge_equal(p: &RootedProblem, q: &RootedProblem, eps: &Dyadic) -> Result<ForgeOutcome, ForgeError> {
    let (n, m) = (p.order(), q.order());
    let len = n + m + 1;
    let u = p.prefix(len);
    let v = q.prefix(len);
    for j in 0..len {
        if !closer_than(&u[j], &v[j], eps) {
            return Err(ForgeError::HypothesisViolated(format!("prefix terms {j} differ by at least eps")));
        }
    }
    let scale = {
        let one = Dyadic::one();
        let mut s = Dyadic::from_i64((n + m) as i64 + 2);
        for part in [norm_upper(&p.coeffs()), norm_upper(&q.coeffs()), norm_upper(&u[..n])] {
            s = &s + &part;
        }
        Dyadic::max(&s, &one)
    };
    let budget = PerturbationBudget::new(eps, n.max(m), &scale)?;

    let adj: Vec<Vec<bool>> = p
        .roots
        .iter()
        .map(|l| q.roots.iter().map(|mu| closer_than(l, mu, &budget.eta)).collect())
        .collect();
    let mut pairs = maximum_matching(&adj, m);
    pairs.sort();
    let common: Vec<QComplex> = pairs.iter().map(|&(k, _)| p.roots[k].clone()).collect();
    let e = from_roots_exact(&common);
    let w: Vec<QComplex> = u[..common.len()].to_vec();

    let new_p = RootedProblem::new(p.roots.clone(), recurrence_exact(&e, &w, n));
    let mut q_roots = q.roots.clone();
    for &(k, l) in &pairs {
        q_roots[l] = p.roots[k].clone();
    }
    let new_q = RootedProblem::new(q_roots, recurrence_exact(&e, &w, m));
    Ok(ForgeOutcome {
        dist_p: problem_distance(p, &new_p),
        dist_q: problem_distance(q, &new_q),
        p: new_p,
        q: new_q,
        budget,
        shared: pairs.len(),
    })
}

/// Round the roots and initial values of `p` to Gaussian rationals accurate to
/// about `2^-prec`.
pub fn round_problem(p: &CauchyProblem, prec: i64) -> Result<RootedProblem, ForgeError> {
    let n = p.order();
    if n == 0 {
        return Ok(RootedProblem::zero());
    }
    let mut m = prec.max(16);
    let list = loop {
        let cp = (n as i64) * (m + 8) + 64;
        match find_roots(&p.char_poly(cp), m) {
            Ok(l) => break l,
            Err(_) if m < 1 << 14 => m *= 2,
            Err(e) => return Err(ForgeError::HypothesisViolated(format!("roots not isolated: {e}"))),
        }
    };
    let centre = |b: &ComplexBall| QComplex::new(b.re().to_rational(), b.im().to_rational());
    let roots = list.roots.iter().map(centre).collect();
    let init = p.init_balls(prec + 8).iter().map(centre).collect();
    Ok(RootedProblem::new(roots, init))
}

/// [`forge_equal`] for problems given by names: roots and initial values are
/// first rounded at precision `prec`.
pub fn forge_equal_named(
    p: &CauchyProblem,
    q: &CauchyProblem,
    eps: &Dyadic,
    prec: i64,
) -> Result<ForgeOutcome, ForgeError> {
    forge_equal(&round_problem(p, prec)?, &round_problem(q, prec)?, eps)
}

/// Result of [`perturb_to_simpler`].
#[derive(Clone, Debug)]
pub struct Simplified {
    pub problem: RootedProblem,
    /// Spectral distance between input and output.
    pub distance: Dyadic,
    /// Evaluated a priori bound on `distance`.
    pub envelope: Dyadic,
}

/// Replace the factor of `p` closest to the roots `target` by `target` itself
/// and re-extend `w` along the new factor, so that the output solves the same
/// equation as `(target, w)`.
///
/// Requires a matching of `target` into the roots of `p` within `eps`, initial
/// values `w` within `eps` of those of `p`, and the prefix of `p` satisfying the
/// matched factor's recurrence up to `eps` on indices `m..=n`.
pub fn perturb_to_simpler(
    p: &RootedProblem,
    target: &[QComplex],
    w: &[QComplex],
    eps: &Dyadic,
) -> Result<Simplified, ForgeError> {
    let (n, m) = (p.order(), target.len());
    if m > n || w.len() != m {
        return Err(ForgeError::HypothesisViolated("target order exceeds the problem order".into()));
    }
    if !eps.is_positive() {
        return Err(ForgeError::BadEpsilon);
    }
    let adj: Vec<Vec<bool>> = target
        .iter()
        .map(|t| p.roots.iter().map(|l| closer_than(t, l, eps)).collect())
        .collect();
    let pairs = maximum_matching(&adj, n);
    if pairs.len() < m {
        return Err(ForgeError::HypothesisViolated("target roots are not within eps of roots of p".into()));
    }
    let u = p.prefix(n + 1);
    if let Some(j) = (0..m).find(|&j| !closer_than(&w[j], &u[j], eps)) {
        return Err(ForgeError::HypothesisViolated(format!("initial value {j} is off by at least eps")));
    }
    let mut matched = vec![QComplex::zero(); m];
    for &(i, k) in &pairs {
        matched[i] = p.roots[k].clone();
    }
    let e_near = from_roots_exact(&matched);
    let zero = QComplex::zero();
    if let Some(k) = recurrence_defect(&e_near, &u)
        .iter()
        .position(|r| !closer_than(r, &zero, eps))
    {
        return Err(ForgeError::HypothesisViolated(format!(
            "prefix violates the matched recurrence at index {}",
            k + m
        )));
    }

    let mut roots = p.roots.clone();
    for &(i, k) in &pairs {
        roots[k] = target[i].clone();
    }
    let e = from_roots_exact(target);
    let out = RootedProblem::new(roots, recurrence_exact(&e, w, n));
    let distance = problem_distance(p, &out);
    let envelope = simplify_envelope(p, &e_near, &out.init, eps);
    Ok(Simplified {
        problem: out,
        distance,
        envelope,
    })
}

/// Propagates the initial-value error through the re-extension:
/// `err_j <= eps + |e'| m max_{i<j} err_i + m |u~| n! (C + eps)^n eps`,
/// with `C = 1 + max |root|`. The root part adds another `eps`.
fn simplify_envelope(p: &RootedProblem, e_near: &[QComplex], new_init: &[QComplex], eps: &Dyadic) -> Dyadic {
    let n = p.order();
    let m = e_near.len();
    let up = |x: Dyadic| x.round_rel(64, Round::Up);
    let c_bound = &Dyadic::one() + &norm_upper(&p.roots);
    let mut coef_gap = up(Dyadic::from_bigint(factorial(n as u64)) * eps.clone());
    let base = &c_bound + eps;
    for _ in 0..n {
        coef_gap = up(&coef_gap * &base);
    }
    let mm = Dyadic::from_i64(m as i64);
    let drift = up(&(&mm * &norm_upper(new_init)) * &coef_gap);
    let gain = up(&mm * &norm_upper(e_near));
    let mut worst = eps.clone();
    for _ in m..n {
        let next = up(&(eps + &(&gain * &worst)) + &drift);
        worst = Dyadic::max(&worst, &next);
    }
    up(eps + &worst)
}

/// Exact equality of the first `len` terms of two problems.
pub fn prefixes_equal(p: &RootedProblem, q: &RootedProblem, len: usize) -> bool {
    p.prefix(len) == q.prefix(len)
}

/// Largest `|u_j - v_j|` for `j < len`, rounded up.
pub fn prefix_defect(p: &RootedProblem, q: &RootedProblem, len: usize) -> Dyadic {
    p.prefix(len)
        .iter()
        .zip(q.prefix(len))
        .map(|(a, b)| abs_upper(&(a - b)))
        .fold(Dyadic::zero(), |s, t| Dyadic::max(&s, &t))
}

pub(crate) fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

