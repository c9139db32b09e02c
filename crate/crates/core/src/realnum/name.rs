use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ball::ComplexBall;
use super::dyadic::{Dyadic, Round};

type Oracle = dyn Fn(i64) -> Dyadic + Send + Sync;

/// A real number presented by an oracle: `query(p)` is within `2^-p` of the value.
#[derive(Clone)]
pub struct RealName {
    oracle: Arc<Oracle>,
    exact: Option<BigRational>,
    label: String,
}

impl RealName {
    /// Wrap an arbitrary oracle. The caller guarantees `|query(p) - x| < 2^-p`.
    pub fn from_oracle<F>(label: impl Into<String>, f: F) -> Self
    where
        F: Fn(i64) -> Dyadic + Send + Sync + 'static,
    {
        RealName {
            oracle: Arc::new(f),
            exact: None,
            label: label.into(),
        }
    }

    pub fn rational(r: BigRational) -> Self {
        let q = r.clone();
        RealName {
            oracle: Arc::new(move |p| Dyadic::from_rational(&q, p + 1, Round::Nearest)),
            label: format_rational(&r),
            exact: Some(r),
        }
    }

    pub fn from_int(v: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    /// `sqrt(r)` for a non-negative rational.
    pub fn sqrt(r: BigRational) -> Self {
        assert!(!r.is_negative(), "square root of a negative rational");
        let label = format!("sqrt({})", format_rational(&r));
        Self::from_oracle(label, move |p| sqrt_approx(&r, p))
    }

    pub fn pi() -> Self {
        Self::from_oracle("pi", pi_approx)
    }

    pub fn e() -> Self {
        Self::from_oracle("e", e_approx)
    }

    pub fn negate(&self) -> Self {
        let inner = self.oracle.clone();
        RealName {
            oracle: Arc::new(move |p| -inner(p)),
            exact: self.exact.as_ref().map(|r| -r),
            label: format!("-{}", self.label),
        }
    }

    /// A name of the same real whose answers sit alternately `±2^-(p+1)` off the truth.
    pub fn adversarial(&self) -> Self {
        let inner = self.oracle.clone();
        RealName {
            oracle: Arc::new(move |p| {
                let base = inner(p + 3);
                let off = Dyadic::pow2(-(p + 1));
                let shifted = if p.rem_euclid(2) == 0 {
                    &base + &off
                } else {
                    &base - &off
                };
                // |shifted - x| < 2^-(p+3) + 2^-(p+1) < 2^-p
                shifted
            }),
            exact: self.exact.clone(),
            label: format!("adversarial({})", self.label),
        }
    }

    pub fn query(&self, p: i64) -> Dyadic {
        (self.oracle)(p)
    }

    pub fn exact(&self) -> Option<&BigRational> {
        self.exact.as_ref()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// A real ball of radius `<= 2^-p` containing the named value.
    pub fn to_ball(&self, p: i64) -> ComplexBall {
        if let Some(r) = &self.exact {
            return ComplexBall::from_rational(r, p);
        }
        let approx = self.query(p + 1);
        ComplexBall::real(approx, Dyadic::pow2(-(p + 1)), p)
    }
}

impl fmt::Debug for RealName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RealName({})", self.label)
    }
}

/// A complex number given by names of its real and imaginary parts.
#[derive(Clone, Debug)]
pub struct ComplexName {
    pub re: RealName,
    pub im: RealName,
}

impl ComplexName {
    pub fn real(re: RealName) -> Self {
        ComplexName {
            re,
            im: RealName::zero(),
        }
    }

    pub fn rational(re: BigRational, im: BigRational) -> Self {
        ComplexName {
            re: RealName::rational(re),
            im: RealName::rational(im),
        }
    }

    pub fn is_real(&self) -> bool {
        matches!(self.im.exact(), Some(r) if r.is_zero())
    }

    pub fn exact(&self) -> Option<(BigRational, BigRational)> {
        Some((self.re.exact()?.clone(), self.im.exact()?.clone()))
    }

    pub fn to_ball(&self, p: i64) -> ComplexBall {
        let a = self.re.to_ball(p + 1);
        if self.is_real() {
            return a.with_prec(p);
        }
        let b = self.im.to_ball(p + 1);
        ComplexBall::new(
            a.re().clone(),
            b.re().clone(),
            a.radius() + b.radius(),
            p,
        )
    }

    pub fn adversarial(&self) -> Self {
        ComplexName {
            re: self.re.adversarial(),
            im: if self.is_real() {
                self.im.clone()
            } else {
                self.im.adversarial()
            },
        }
    }
}

pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn sqrt_approx(r: &BigRational, p: i64) -> Dyadic {
    // floor(sqrt(r) * 2^k) = isqrt(floor(r * 4^k)), error < 2^-k
    let k = (p + 1).max(0);
    let scaled = (r.numer() << (2 * k as u64)) / r.denom();
    Dyadic::new(scaled.sqrt(), -k)
}

/// Fixed-point `atan(1/x) * 2^bits`, truncation error at most `terms + 1` ulps.
fn atan_inv(x: u64, bits: u64) -> BigInt {
    let one: BigInt = BigInt::one() << bits;
    let x2 = BigInt::from(x * x);
    let mut power = &one / BigInt::from(x);
    let mut sum = power.clone();
    let mut k = 1u64;
    loop {
        power = &power / &x2;
        if power.is_zero() {
            break;
        }
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        k += 1;
    }
    sum
}

fn guard_bits(p: i64) -> u64 {
    let p = p.max(1) as u64;
    2 * (64 - p.leading_zeros() as u64) + 12
}

fn pi_approx(p: i64) -> Dyadic {
    let g = guard_bits(p);
    let bits = (p.max(0) as u64) + g;
    let v = atan_inv(5, bits) * 16 - atan_inv(239, bits) * 4;
    Dyadic::new(v, -(bits as i64)).round_abs(p + 1, Round::Nearest)
}

fn e_approx(p: i64) -> Dyadic {
    let g = guard_bits(p);
    let bits = (p.max(0) as u64) + g;
    let one: BigInt = BigInt::one() << bits;
    let mut term = one.clone();
    let mut sum = one;
    let mut k = 1u64;
    loop {
        term = &term / BigInt::from(k);
        if term.is_zero() {
            break;
        }
        sum += &term;
        k += 1;
    }
    Dyadic::new(sum, -(bits as i64)).round_abs(p + 1, Round::Nearest)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn third_ball() {
        let b = RealName::rational(q(1, 3)).to_ball(4);
        assert!(b.contains(&q(1, 3), &q(0, 1)));
        assert!(b.radius() <= &Dyadic::pow2(-4));
    }

    #[test]
    fn zero_ball_is_tight() {
        let b = RealName::zero().to_ball(30);
        assert!(b.radius().is_zero());
        assert!(b.re().is_zero());
    }

    #[test]
    fn adversarial_zero_still_contained() {
        let adv = RealName::zero().adversarial();
        let plain = RealName::from_oracle("zero", |_| Dyadic::zero()).adversarial();
        for p in 1..40 {
            let b = plain.to_ball(p);
            assert!(b.contains(&q(0, 1), &q(0, 1)), "p = {p}");
            let v = adv.query(p).to_rational();
            assert!(v.abs() < Dyadic::pow2(-p).to_rational());
        }
    }

    #[test]
    fn pi_and_e_digits() {
        let pi = RealName::pi().to_ball(100);
        let lo = q(314159265358979323, 100_000_000_000_000_000);
        let hi = q(314159265358979324, 100_000_000_000_000_000);
        assert!(pi.re_lower().to_rational() < hi && pi.re_upper().to_rational() > lo);
        let e = RealName::e().to_ball(100);
        let lo = q(271828182845904523, 100_000_000_000_000_000);
        let hi = q(271828182845904524, 100_000_000_000_000_000);
        assert!(e.re_lower().to_rational() < hi && e.re_upper().to_rational() > lo);
    }

    #[test]
    fn sqrt_two_squares_bracket() {
        let s = RealName::sqrt(q(2, 1));
        for p in [1, 10, 64, 200] {
            let b = s.to_ball(p);
            let lo = b.re_lower().to_rational();
            let hi = b.re_upper().to_rational();
            assert!(&lo * &lo < q(2, 1) && q(2, 1) < &hi * &hi);
        }
    }

    #[test]
    fn coherence_across_precisions() {
        let names = [RealName::pi(), RealName::sqrt(q(3, 7)), RealName::e().negate()];
        for n in &names {
            for p in [2i64, 8, 33] {
                for r in [p + 1, p + 17] {
                    let a = n.to_ball(p);
                    let b = n.to_ball(r);
                    assert!(a.intersects(&b));
                }
            }
        }
    }
}
