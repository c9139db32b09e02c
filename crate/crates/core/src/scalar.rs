//! A small ring/field abstraction so the Vandermonde machinery runs both on
//! exact rationals (for identity checks) and on complex balls (for decisions).

use std::fmt::Debug;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::realnum::ComplexBall;

/// Gaussian rationals.
pub type QComplex = Complex<BigRational>;

pub trait Scalar: Clone + Debug {
    fn zero_like(&self) -> Self;
    fn from_bigint_like(&self, v: &BigInt) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `None` when the value is (or may be) zero.
    fn try_inv(&self) -> Option<Self>;

    fn from_int_like(&self, v: i64) -> Self {
        self.from_bigint_like(&BigInt::from(v))
    }

    fn one_like(&self) -> Self {
        self.from_int_like(1)
    }
}

impl Scalar for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn from_bigint_like(&self, v: &BigInt) -> Self {
        BigRational::from_integer(v.clone())
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}

impl Scalar for QComplex {
    fn zero_like(&self) -> Self {
        QComplex::zero()
    }
    fn from_bigint_like(&self, v: &BigInt) -> Self {
        QComplex::new(BigRational::from_integer(v.clone()), BigRational::zero())
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(QComplex::one() / self)
        }
    }
}

impl Scalar for ComplexBall {
    fn zero_like(&self) -> Self {
        ComplexBall::zero(self.prec())
    }
    fn from_bigint_like(&self, v: &BigInt) -> Self {
        ComplexBall::from_bigint(v, self.prec())
    }
    fn add(&self, o: &Self) -> Self {
        ComplexBall::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        ComplexBall::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        ComplexBall::mul(self, o)
    }
    fn neg(&self) -> Self {
        ComplexBall::neg(self)
    }
    fn try_inv(&self) -> Option<Self> {
        self.inv().ok()
    }
}

pub fn qc(re: BigRational, im: BigRational) -> QComplex {
    QComplex::new(re, im)
}

pub fn qc_int(re: i64, im: i64) -> QComplex {
    QComplex::new(
        BigRational::from_integer(BigInt::from(re)),
        BigRational::from_integer(BigInt::from(im)),
    )
}

pub fn qc_ratio(num: i64, den: i64) -> QComplex {
    QComplex::new(
        BigRational::new(BigInt::from(num), BigInt::from(den)),
        BigRational::zero(),
    )
}

/// Ball of radius `<= 2^-prec` around a Gaussian rational.
pub fn qc_to_ball(z: &QComplex, prec: i64) -> ComplexBall {
    ComplexBall::from_rational_parts(&z.re, &z.im, prec)
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(0, 0), BigInt::from(1));
        assert_eq!(binomial(3, 4), BigInt::from(0));
        assert_eq!(factorial(5), BigInt::from(120));
    }

    #[test]
    fn exact_inverse() {
        let z = qc_int(1, 1);
        let w = z.try_inv().unwrap();
        assert_eq!(z.mul(&w), qc_int(1, 0));
        assert!(qc_int(0, 0).try_inv().is_none());
    }
}
