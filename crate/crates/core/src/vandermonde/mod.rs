//! Confluent Vandermonde matrices, their minors and the leading-coefficient
//! functions `G` and `F`.
//!
//! Everything is generic over [`Scalar`], so the same code runs on exact
//! Gaussian rationals and on complex balls.

mod minors;
mod tableau;

pub use minors::{a_coefficients, echelon_matrix, minor_det};
pub use tableau::{check_q_recursions, q_eval, QTableau};

use crate::error::VandermondeError;
use crate::scalar::{binomial, factorial, Scalar};

/// Block multiplicities of a confluent Vandermonde matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature(pub Vec<usize>);

impl Signature {
    pub fn new(m: Vec<usize>) -> Self {
        assert!(m.iter().all(|&k| k >= 1), "multiplicities must be positive");
        Signature(m)
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn blocks(&self) -> &[usize] {
        &self.0
    }
}

/// The `n x n` confluent Vandermonde matrix. Within the block of `lambda`
/// with multiplicity `m`, entry `(p, q)` is `binom(p-1, q-1) lambda^(p-q)`,
/// scaled by `(q-1)!` in the modified flavor.
pub fn build_vandermonde<T: Scalar>(sig: &Signature, lambda: &[T], modified: bool) -> Vec<Vec<T>> {
    assert_eq!(sig.0.len(), lambda.len(), "one point per block");
    let n = sig.total();
    let zero = lambda.first().map(|l| l.zero_like());
    let mut v: Vec<Vec<T>> = vec![Vec::with_capacity(n); n];
    for (&m, l) in sig.0.iter().zip(lambda) {
        let mut powers = vec![l.one_like()];
        for k in 1..n {
            let next = powers[k - 1].mul(l);
            powers.push(next);
        }
        for q in 1..=m {
            let scale = if modified {
                l.from_bigint_like(&factorial((q - 1) as u64))
            } else {
                l.one_like()
            };
            for (p, row) in v.iter_mut().enumerate().map(|(k, r)| (k + 1, r)) {
                let entry = if p >= q {
                    let b = l.from_bigint_like(&binomial((p - 1) as u64, (q - 1) as u64));
                    scale.mul(&b).mul(&powers[p - q])
                } else {
                    zero.clone().unwrap()
                };
                row.push(entry);
            }
        }
    }
    v
}

/// `G_{m1,n}(lambda_1, t_1..t_{n-m1}; u) = sum_j (-1)^(j+m1) A_{n,m1,j} u_{j-1}`.
pub fn g_function<T: Scalar>(m1: usize, n: usize, lambda: &[T], u: &[T]) -> T {
    assert_eq!(u.len(), n, "u must have n entries");
    let a = a_coefficients(n, m1, lambda);
    let mut acc = lambda[0].zero_like();
    for j in 1..=n {
        let term = a[j - 1].mul(&u[j - 1]);
        if (j + m1) % 2 == 0 {
            acc = acc.add(&term);
        } else {
            acc = acc.sub(&term);
        }
    }
    acc
}

/// Leading coefficient `a_{1,m1-1}` of the solution for the distinct roots
/// `lambda` with multiplicities `sig`. Blocks after the first are split into
/// repeated simple roots before evaluating `G`.
pub fn f_function<T: Scalar>(sig: &Signature, lambda: &[T], u: &[T]) -> Result<T, VandermondeError> {
    if sig.0.len() != lambda.len() {
        return Err(VandermondeError::Shape("one point per block".into()));
    }
    let n = sig.total();
    if u.len() != n {
        return Err(VandermondeError::Shape(format!("expected {n} initial values")));
    }
    let m1 = sig.0[0];
    let mut args = vec![lambda[0].clone()];
    for (&m, l) in sig.0.iter().zip(lambda).skip(1) {
        for _ in 0..m {
            args.push(l.clone());
        }
    }
    let g = g_function(m1, n, &args, u);
    let mut denom = lambda[0].from_bigint_like(&factorial((m1 - 1) as u64));
    for (k, t) in args.iter().enumerate().skip(1) {
        denom = denom.mul(&t.sub(&args[0]));
        if t.sub(&args[0]).try_inv().is_none() {
            return Err(VandermondeError::SingularDenominator(k));
        }
    }
    let inv = denom
        .try_inv()
        .ok_or(VandermondeError::SingularDenominator(0))?;
    Ok(g.mul(&inv))
}

/// Extend `u` (length `k`) to length `len` by the recurrence whose
/// characteristic polynomial has the given roots (`roots.len() == k`).
pub fn extend_by_roots<T: Scalar>(roots: &[T], u: &[T], len: usize) -> Vec<T> {
    assert_eq!(roots.len(), u.len());
    let k = roots.len();
    let one = u.first().or(roots.first()).map(|x| x.one_like());
    let Some(one) = one else {
        return vec![];
    };
    // monic coefficients c_0..c_{k-1}
    let mut c: Vec<T> = Vec::new();
    for r in roots {
        let d = c.len();
        let coef = |i: usize| if i == d { one.clone() } else { c[i].clone() };
        let next: Vec<T> = (0..=d)
            .map(|i| {
                let shifted = if i >= 1 { coef(i - 1) } else { one.zero_like() };
                shifted.sub(&coef(i).mul(r))
            })
            .collect();
        c = next;
    }
    let mut out = u.to_vec();
    while out.len() < len {
        let j = out.len();
        let mut acc = one.zero_like();
        for i in 0..k {
            acc = acc.sub(&c[i].mul(&out[j - k + i]));
        }
        out.push(acc);
    }
    out
}

/// `G_{m,n1} = prod_{j=n2+1..n1} (lambda_j - lambda_1) * G_{m,n2}` when `u`
/// comes from the order-`n2` recurrence. `lambda` is `(lambda_1, t_1..t_{n1-m})`
/// and `u` holds the `n2` initial values.
pub fn check_prop3_identity<T: Scalar + PartialEq>(
    m: usize,
    n1: usize,
    n2: usize,
    lambda: &[T],
    u: &[T],
) -> bool {
    assert!(m <= n2 && n2 <= n1);
    assert_eq!(lambda.len(), n1 - m + 1);
    assert_eq!(u.len(), n2);
    let l1 = &lambda[0];
    let mut roots2: Vec<T> = vec![l1.clone(); m];
    roots2.extend_from_slice(&lambda[1..=n2 - m]);
    let long_u = extend_by_roots(&roots2, u, n1);
    let lhs = g_function(m, n1, lambda, &long_u);
    let mut rhs = g_function(m, n2, &lambda[..=n2 - m], u);
    for t in &lambda[n2 - m + 1..] {
        rhs = rhs.mul(&t.sub(l1));
    }
    lhs == rhs
}
