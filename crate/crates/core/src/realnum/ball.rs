use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use serde::{Deserialize, Serialize};

use super::dyadic::{Dyadic, Round};
use crate::error::RealError;

/// Significant bits kept in a radius.
const RAD_BITS: u64 = 30;

/// Sign of a real quantity as far as a ball can certify it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BallSign {
    Positive,
    Negative,
    Unknown,
}

/// A closed disk `{ z : |z - center| <= radius }` in the complex plane with dyadic data.
///
/// `prec` is the absolute working precision: centers produced by arithmetic are
/// rounded to multiples of `2^-prec` and the rounding error is absorbed into the radius.
#[derive(Clone, PartialEq, Eq)]
pub struct ComplexBall {
    re: Dyadic,
    im: Dyadic,
    rad: Dyadic,
    prec: i64,
}

fn rad_up(d: &Dyadic) -> Dyadic {
    d.round_rel(RAD_BITS, Round::Up)
}

fn round_center(x: &Dyadic, prec: i64) -> (Dyadic, Dyadic) {
    let r = x.round_abs(prec, Round::Nearest);
    let err = (x - &r).abs();
    (r, err)
}

impl ComplexBall {
    pub fn new(re: Dyadic, im: Dyadic, rad: Dyadic, prec: i64) -> Self {
        assert!(!rad.is_negative(), "negative radius");
        ComplexBall {
            re,
            im,
            rad: rad_up(&rad),
            prec,
        }
    }

    pub fn zero(prec: i64) -> Self {
        Self::new(Dyadic::zero(), Dyadic::zero(), Dyadic::zero(), prec)
    }

    pub fn one(prec: i64) -> Self {
        Self::from_int(1, prec)
    }

    pub fn from_int(v: i64, prec: i64) -> Self {
        Self::new(Dyadic::from_i64(v), Dyadic::zero(), Dyadic::zero(), prec)
    }

    pub fn from_bigint(v: &BigInt, prec: i64) -> Self {
        Self::new(
            Dyadic::from_bigint(v.clone()),
            Dyadic::zero(),
            Dyadic::zero(),
            prec,
        )
    }

    pub fn real(re: Dyadic, rad: Dyadic, prec: i64) -> Self {
        Self::new(re, Dyadic::zero(), rad, prec)
    }

    pub fn exact(re: Dyadic, im: Dyadic, prec: i64) -> Self {
        Self::new(re, im, Dyadic::zero(), prec)
    }

    /// Ball around a rational with radius at most `2^-(prec+1)`.
    pub fn from_rational(r: &BigRational, prec: i64) -> Self {
        let c = Dyadic::from_rational(r, prec + 1, Round::Nearest);
        let rad = if c.to_rational() == *r {
            Dyadic::zero()
        } else {
            Dyadic::pow2(-(prec + 2))
        };
        Self::real(c, rad, prec)
    }

    pub fn from_rational_parts(re: &BigRational, im: &BigRational, prec: i64) -> Self {
        let a = Self::from_rational(re, prec);
        let b = Self::from_rational(im, prec);
        Self::new(a.re, b.re, &a.rad + &b.rad, prec)
    }

    pub fn re(&self) -> &Dyadic {
        &self.re
    }

    pub fn im(&self) -> &Dyadic {
        &self.im
    }

    pub fn radius(&self) -> &Dyadic {
        &self.rad
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn with_prec(&self, prec: i64) -> Self {
        ComplexBall {
            prec,
            ..self.clone()
        }
    }

    /// Same center, radius increased by `extra`.
    pub fn widen(&self, extra: &Dyadic) -> Self {
        Self::new(
            self.re.clone(),
            self.im.clone(),
            &self.rad + &extra.abs(),
            self.prec,
        )
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    /// Assemble a ball from an exact center that may need rounding.
    fn rounded(re: Dyadic, im: Dyadic, rad: Dyadic, prec: i64) -> Self {
        let (re, e1) = round_center(&re, prec);
        let (im, e2) = round_center(&im, prec);
        let total = &(&rad + &e1) + &e2;
        Self::new(re, im, total, prec)
    }

    pub fn add(&self, o: &Self) -> Self {
        let prec = self.prec.max(o.prec);
        Self::rounded(
            &self.re + &o.re,
            &self.im + &o.im,
            &self.rad + &o.rad,
            prec,
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        let prec = self.prec.max(o.prec);
        Self::rounded(
            &self.re - &o.re,
            &self.im - &o.im,
            &self.rad + &o.rad,
            prec,
        )
    }

    pub fn neg(&self) -> Self {
        ComplexBall {
            re: -&self.re,
            im: -&self.im,
            rad: self.rad.clone(),
            prec: self.prec,
        }
    }

    pub fn conj(&self) -> Self {
        ComplexBall {
            re: self.re.clone(),
            im: -&self.im,
            rad: self.rad.clone(),
            prec: self.prec,
        }
    }

    /// Real part as a real ball.
    pub fn real_part(&self) -> Self {
        ComplexBall {
            re: self.re.clone(),
            im: Dyadic::zero(),
            rad: self.rad.clone(),
            prec: self.prec,
        }
    }

    /// `|center|^2`, exact.
    fn center_norm_sq(&self) -> Dyadic {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    /// Upper bound on `|center|`.
    pub fn center_abs_upper(&self) -> Dyadic {
        self.center_norm_sq().sqrt_rel(RAD_BITS, Round::Up)
    }

    /// Lower bound on `|center|`.
    pub fn center_abs_lower(&self) -> Dyadic {
        self.center_norm_sq().sqrt_rel(RAD_BITS, Round::Down)
    }

    /// Upper bound on `|z|` over the ball.
    pub fn abs_upper(&self) -> Dyadic {
        rad_up(&(&self.center_abs_upper() + &self.rad))
    }

    /// Lower bound on `|z|` over the ball (zero if the ball contains 0).
    pub fn abs_lower(&self) -> Dyadic {
        let d = &self.center_abs_lower() - &self.rad;
        if d.is_positive() {
            d.round_rel(RAD_BITS, Round::Down)
        } else {
            Dyadic::zero()
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let prec = self.prec.max(o.prec);
        let re = &(&self.re * &o.re) - &(&self.im * &o.im);
        let im = &(&self.re * &o.im) + &(&self.im * &o.re);
        let rad = if self.rad.is_zero() && o.rad.is_zero() {
            Dyadic::zero()
        } else {
            let a = &self.center_abs_upper() * &o.rad;
            let b = &o.center_abs_upper() * &self.rad;
            let c = &self.rad * &o.rad;
            rad_up(&(&(&a + &b) + &c))
        };
        Self::rounded(re, im, rad, prec)
    }

    pub fn sqr(&self) -> Self {
        self.mul(self)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.prec);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.sqr();
            }
        }
        acc
    }

    pub fn mul_int(&self, v: i64) -> Self {
        self.mul(&Self::from_int(v, self.prec))
    }

    /// Multiply by `2^k` exactly.
    pub fn mul_pow2(&self, k: i64) -> Self {
        Self::new(
            self.re.mul_pow2(k),
            self.im.mul_pow2(k),
            self.rad.mul_pow2(k),
            self.prec,
        )
    }

    /// Enclosure of `1/z` over the ball.
    pub fn inv(&self) -> Result<Self, RealError> {
        let cl = self.center_abs_lower();
        if cl <= self.rad {
            return Err(RealError::DivisorStraddlesZero);
        }
        let prec = self.prec;
        let n2 = self.center_norm_sq();
        // 1/c = conj(c)/|c|^2, rounded to nearest with error <= 2^-(prec+1) per component
        let re = self.re.div_abs(&n2, prec + 1, Round::Nearest);
        let im = (-&self.im).div_abs(&n2, prec + 1, Round::Nearest);
        let round_err = Dyadic::pow2(-(prec + 1));
        let rad = if self.rad.is_zero() {
            Dyadic::zero()
        } else {
            let gap = &cl - &self.rad;
            let denom = (&cl * &gap).round_rel(RAD_BITS, Round::Down);
            self.rad.div_rel(&denom, RAD_BITS, Round::Up)
        };
        Ok(Self::rounded(re, im, &rad + &round_err, prec))
    }

    pub fn div(&self, o: &Self) -> Result<Self, RealError> {
        Ok(self.mul(&o.inv()?))
    }

    /// True iff every point of the ball is nonzero.
    pub fn excludes_zero(&self) -> bool {
        self.center_norm_sq() > &self.rad * &self.rad
    }

    pub fn contains_zero(&self) -> bool {
        !self.excludes_zero()
    }

    /// Exact containment test for a Gaussian rational.
    pub fn contains(&self, re: &BigRational, im: &BigRational) -> bool {
        let dr = re - self.re.to_rational();
        let di = im - self.im.to_rational();
        let r = self.rad.to_rational();
        &dr * &dr + &di * &di <= &r * &r
    }

    pub fn contains_ball(&self, o: &Self) -> bool {
        if o.rad > self.rad {
            return false;
        }
        let dr = &self.re - &o.re;
        let di = &self.im - &o.im;
        let gap = &self.rad - &o.rad;
        &(&dr * &dr) + &(&di * &di) <= &gap * &gap
    }

    pub fn intersects(&self, o: &Self) -> bool {
        let dr = &self.re - &o.re;
        let di = &self.im - &o.im;
        let s = &self.rad + &o.rad;
        &(&dr * &dr) + &(&di * &di) <= &s * &s
    }

    pub fn re_lower(&self) -> Dyadic {
        &self.re - &self.rad
    }

    pub fn re_upper(&self) -> Dyadic {
        &self.re + &self.rad
    }

    /// True when the ball meets the real axis.
    pub fn may_be_real(&self) -> bool {
        self.im.abs() <= self.rad
    }

    /// Certified sign of the real part.
    pub fn re_sign(&self) -> BallSign {
        if self.re_lower().is_positive() {
            BallSign::Positive
        } else if self.re_upper().is_negative() {
            BallSign::Negative
        } else {
            BallSign::Unknown
        }
    }

    /// Smallest ball containing both inputs.
    pub fn hull(&self, o: &Self) -> Self {
        let prec = self.prec.max(o.prec);
        let cre = (&self.re + &o.re).mul_pow2(-1);
        let cim = (&self.im + &o.im).mul_pow2(-1);
        let c = Self::rounded(cre, cim, Dyadic::zero(), prec + 2);
        let d1 = c.sub(self).abs_upper();
        let d2 = c.sub(o).abs_upper();
        let r1 = &d1 + &self.rad;
        let r2 = &d2 + &o.rad;
        ComplexBall::new(c.re, c.im, Dyadic::max(&r1, &r2), prec)
    }

    /// Complex exponential by halving, Taylor series and repeated squaring.
    pub fn exp(&self) -> Self {
        let prec = self.prec;
        let mag = self.abs_upper().log2_ceil().max(-1);
        let halvings = (mag + 1).max(0);
        let wp = prec + 2 * halvings + 20 + self.abs_upper().log2_ceil().max(0) * 2;
        let w = self.with_prec(wp).mul_pow2(-halvings);
        // |w| <= 1/2: tail after K terms is at most 2 |w|^K / K!
        let mut sum = ComplexBall::one(wp);
        let mut term = ComplexBall::one(wp);
        let mut k = 1i64;
        let mut tail_bound = Dyadic::one();
        loop {
            term = term.mul(&w).mul(&ComplexBall::from_int(k, wp).inv().unwrap());
            sum = sum.add(&term);
            tail_bound = tail_bound.mul_pow2(-1).div_rel(&Dyadic::from_i64(k + 1), 20, Round::Up);
            if tail_bound < Dyadic::pow2(-(wp + 2)) {
                break;
            }
            k += 1;
        }
        sum = sum.widen(&tail_bound.mul_pow2(1));
        for _ in 0..halvings {
            sum = sum.sqr();
        }
        sum.with_prec(prec)
    }

    pub fn to_string_digits(&self, digits: usize) -> String {
        let rad = format!("{:.3e}", self.rad.to_f64());
        if self.im.is_zero() {
            format!("{} ± {}", self.re.to_decimal(digits), rad)
        } else {
            let sign = if self.im.is_negative() { "-" } else { "+" };
            format!(
                "{} {} {}i ± {}",
                self.re.to_decimal(digits),
                sign,
                self.im.abs().to_decimal(digits),
                rad
            )
        }
    }
}

impl fmt::Debug for ComplexBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.to_string_digits(12))
    }
}

impl fmt::Display for ComplexBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_digits(12))
    }
}

/// Center and radius as plain numbers, for traces and reports.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BallSummary {
    pub re: f64,
    pub im: f64,
    pub radius: f64,
}

impl From<&ComplexBall> for BallSummary {
    fn from(b: &ComplexBall) -> Self {
        BallSummary {
            re: b.re.to_f64(),
            im: b.im.to_f64(),
            radius: b.rad.to_f64(),
        }
    }
}
