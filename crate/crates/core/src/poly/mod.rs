//! Characteristic polynomials, certified root enclosures and spectral distance.

mod matching;
mod roots;

pub use matching::{
    bottleneck_assignment, maximum_matching, perfect_matching, spectral_distance, SpectralMetric,
};
pub use roots::{find_roots, RootList};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::realnum::{ComplexBall, Dyadic};
use crate::scalar::{qc_to_ball, QComplex};

/// Monic polynomial `z^n + c[n-1] z^(n-1) + ... + c[0]` with ball coefficients.
#[derive(Clone, Debug)]
pub struct CharPoly {
    coeffs: Vec<ComplexBall>,
}

impl CharPoly {
    pub fn new(coeffs: Vec<ComplexBall>) -> Self {
        CharPoly { coeffs }
    }

    /// The polynomial with exact Gaussian-rational coefficients, enclosed at precision `prec`.
    pub fn from_exact(coeffs: &[QComplex], prec: i64) -> Self {
        CharPoly::new(coeffs.iter().map(|c| qc_to_ball(c, prec)).collect())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// Low-order coefficients; the leading 1 is implicit.
    pub fn coeffs(&self) -> &[ComplexBall] {
        &self.coeffs
    }

    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(|c| c.im().is_zero())
    }

    /// Horner evaluation over balls.
    pub fn eval(&self, z: &ComplexBall) -> ComplexBall {
        let mut acc = ComplexBall::one(z.prec());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(z).add(c);
        }
        acc
    }

    /// `max |c_k|` upper bound.
    pub fn norm_upper(&self) -> Dyadic {
        self.coeffs
            .iter()
            .map(|c| c.abs_upper())
            .fold(Dyadic::zero(), |a, b| Dyadic::max(&a, &b))
    }

    /// Cauchy bound `1 + max |c_k|` on the modulus of every root.
    pub fn root_bound(&self) -> Dyadic {
        &Dyadic::one() + &self.norm_upper()
    }
}

fn is_conjugate_pair(a: &ComplexBall, b: &ComplexBall) -> bool {
    !a.im().is_zero() && a.re() == b.re() && a.im() == &-b.im() && a.radius() == b.radius()
}

/// Vieta expansion of `prod (z - r)`; exact conjugate pairs are multiplied first
/// so that their contribution has real centers.
pub fn from_roots(roots: &[ComplexBall]) -> CharPoly {
    let mut used = vec![false; roots.len()];
    let mut factors: Vec<Vec<ComplexBall>> = Vec::new();
    for i in 0..roots.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let partner = (i + 1..roots.len()).find(|&j| !used[j] && is_conjugate_pair(&roots[i], &roots[j]));
        match partner {
            Some(j) => {
                used[j] = true;
                // centers are exact conjugates, so both products have zero imaginary center
                let prod = roots[i].mul(&roots[j]);
                let sum = roots[i].add(&roots[j]);
                factors.push(vec![prod, sum.neg()]);
            }
            None => factors.push(vec![roots[i].neg()]),
        }
    }
    let mut coeffs: Vec<ComplexBall> = Vec::new();
    for f in factors {
        coeffs = mul_monic(&coeffs, &f);
    }
    CharPoly::new(coeffs)
}

/// Product of two monic polynomials given by their low-order coefficients.
fn mul_monic(a: &[ComplexBall], b: &[ComplexBall]) -> Vec<ComplexBall> {
    let (n, m) = (a.len(), b.len());
    if n == 0 {
        return b.to_vec();
    }
    if m == 0 {
        return a.to_vec();
    }
    let prec = a[0].prec().max(b[0].prec());
    let coef = |v: &[ComplexBall], k: usize| -> Option<ComplexBall> {
        if k < v.len() {
            Some(v[k].clone())
        } else if k == v.len() {
            Some(ComplexBall::one(prec))
        } else {
            None
        }
    };
    let mut out = Vec::with_capacity(n + m);
    for k in 0..n + m {
        let mut acc = ComplexBall::zero(prec);
        for i in 0..=k.min(n) {
            if let (Some(x), Some(y)) = (coef(a, i), coef(b, k - i)) {
                acc = acc.add(&x.mul(&y));
            }
        }
        out.push(acc);
    }
    out
}

/// Exact Vieta expansion over Gaussian rationals.
pub fn from_roots_exact(roots: &[QComplex]) -> Vec<QComplex> {
    let mut c: Vec<QComplex> = Vec::new();
    for r in roots {
        let k = c.len();
        let coef = |i: usize| if i == k { QComplex::one() } else { c[i].clone() };
        let next: Vec<QComplex> = (0..=k)
            .map(|i| {
                let shifted = if i >= 1 { coef(i - 1) } else { QComplex::zero() };
                shifted - coef(i) * r
            })
            .collect();
        c = next;
    }
    c
}

/// `max |c_k - c'_k|` over exact rational coefficient vectors.
fn coefficient_distance(c: &[BigRational], d: &[BigRational]) -> BigRational {
    c.iter()
        .zip(d)
        .map(|(a, b)| (a - b).abs())
        .fold(BigRational::zero(), |a, b| if b > a { b } else { a })
}

/// Checks that the root perturbation controls the coefficient perturbation:
/// `d_sigma >= d / (n C)^(2n)` with `C = max(|c|, |c'|, 1)` in the sup norm.
///
/// Returns `true` once certified at some precision, `false` if a violation is
/// certified or the precision budget runs out.
pub fn check_spectral_vs_coefficient_bound(c: &[BigRational], c2: &[BigRational]) -> bool {
    assert_eq!(c.len(), c2.len(), "degrees differ");
    assert!(c != c2, "identical polynomials");
    let n = c.len();
    let d = coefficient_distance(c, c2);
    let norm = c
        .iter()
        .chain(c2)
        .map(|x| x.abs())
        .fold(BigRational::one(), |a, b| if b > a { b } else { a });
    let base = BigRational::from_integer(num_bigint::BigInt::from(n as u64)) * norm;
    let mut scale = BigRational::one();
    for _ in 0..2 * n {
        scale = &scale * &base;
    }
    let threshold = d / scale;
    if n == 1 {
        // linear: the roots are -c_0 exactly and the bound can be tight
        return coefficient_distance(c, c2) >= threshold;
    }
    let to_q = |v: &[BigRational]| -> Vec<QComplex> {
        v.iter().map(|x| QComplex::new(x.clone(), BigRational::zero())).collect()
    };
    let (qc1, qc2) = (to_q(c), to_q(c2));
    let mut prec = 64i64;
    while prec <= 4096 {
        let p1 = CharPoly::from_exact(&qc1, 4 * prec * n as i64 + 64);
        let p2 = CharPoly::from_exact(&qc2, 4 * prec * n as i64 + 64);
        if let (Ok(r1), Ok(r2)) = (find_roots(&p1, prec), find_roots(&p2, prec)) {
            if let Ok(m) = spectral_distance(&r1.roots, &r2.roots) {
                if m.lower.to_rational() >= threshold {
                    return true;
                }
                if m.upper.to_rational() < threshold {
                    return false;
                }
            }
        }
        prec *= 2;
    }
    false
}
