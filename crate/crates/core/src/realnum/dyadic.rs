use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Rounding direction for operations whose exact result is not representable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Round {
    /// Toward negative infinity.
    Down,
    /// Toward positive infinity.
    Up,
    /// To the nearest representable value, ties away from zero.
    Nearest,
}

/// A binary rational `mantissa * 2^exponent` kept in canonical form:
/// the mantissa is odd, or zero with exponent zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mantissa: BigInt,
    exponent: i64,
}

fn pow2(k: u64) -> BigInt {
    BigInt::one() << k
}

/// `floor`, `ceil` or nearest of `n / 2^shift` for `shift >= 0`.
fn shift_round(n: &BigInt, shift: u64, mode: Round) -> BigInt {
    if shift == 0 {
        return n.clone();
    }
    let d = pow2(shift);
    let (q, r) = n.div_mod_floor(&d);
    if r.is_zero() {
        return q;
    }
    match mode {
        Round::Down => q,
        Round::Up => q + 1,
        Round::Nearest => {
            let twice: BigInt = r << 1;
            match twice.cmp(&d) {
                Ordering::Less => q,
                Ordering::Greater => q + 1,
                Ordering::Equal => {
                    if n.is_negative() {
                        q
                    } else {
                        q + 1
                    }
                }
            }
        }
    }
}

fn div_round_int(n: &BigInt, d: &BigInt, mode: Round) -> BigInt {
    let (q, r) = n.div_mod_floor(d);
    if r.is_zero() {
        return q;
    }
    match mode {
        Round::Down => q,
        Round::Up => q + 1,
        Round::Nearest => {
            let twice: BigInt = r.abs() << 1;
            if twice >= d.abs() {
                q + 1
            } else {
                q
            }
        }
    }
}

impl Dyadic {
    pub fn new(mantissa: BigInt, exponent: i64) -> Self {
        if mantissa.is_zero() {
            return Dyadic::zero();
        }
        let tz = mantissa.trailing_zeros().unwrap_or(0);
        if tz == 0 {
            Dyadic { mantissa, exponent }
        } else {
            Dyadic {
                mantissa: mantissa >> tz,
                exponent: exponent + tz as i64,
            }
        }
    }

    pub fn zero() -> Self {
        Dyadic {
            mantissa: BigInt::zero(),
            exponent: 0,
        }
    }

    pub fn one() -> Self {
        Dyadic::from_i64(1)
    }

    pub fn from_i64(v: i64) -> Self {
        Dyadic::new(BigInt::from(v), 0)
    }

    pub fn from_bigint(v: BigInt) -> Self {
        Dyadic::new(v, 0)
    }

    /// `2^k`.
    pub fn pow2(k: i64) -> Self {
        Dyadic {
            mantissa: BigInt::one(),
            exponent: k,
        }
    }

    /// Exact conversion of a finite float.
    pub fn from_f64(x: f64) -> Self {
        assert!(x.is_finite(), "non-finite float");
        if x == 0.0 {
            return Dyadic::zero();
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let exp_bits = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if exp_bits == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), exp_bits - 1075)
        };
        Dyadic::new(BigInt::from(m) * sign, e)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mantissa.is_positive()
    }

    pub fn signum(&self) -> i32 {
        match self.mantissa.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        Dyadic {
            mantissa: self.mantissa.abs(),
            exponent: self.exponent,
        }
    }

    /// Multiply by `2^k` exactly.
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return Dyadic::zero();
        }
        Dyadic {
            mantissa: self.mantissa.clone(),
            exponent: self.exponent + k,
        }
    }

    /// Exponent of the leading bit: `2^msb <= |x| < 2^(msb+1)`. `None` for zero.
    pub fn msb(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.exponent + self.mantissa.bits() as i64 - 1)
        }
    }

    /// Smallest `k` with `|x| <= 2^k`; `i64::MIN` for zero.
    pub fn log2_ceil(&self) -> i64 {
        match self.msb() {
            None => i64::MIN,
            Some(msb) => {
                if self.mantissa.abs().is_one() {
                    msb
                } else {
                    msb + 1
                }
            }
        }
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exponent >= 0 {
            BigRational::from_integer(&self.mantissa << self.exponent as u64)
        } else {
            BigRational::new(self.mantissa.clone(), pow2((-self.exponent) as u64))
        }
    }

    /// Nearest-ish float, saturating to infinity on overflow.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mantissa.bits() as i64;
        let (m, e) = if bits > 60 {
            let shift = bits - 60;
            (
                shift_round(&self.mantissa, shift as u64, Round::Nearest),
                self.exponent + shift,
            )
        } else {
            (self.mantissa.clone(), self.exponent)
        };
        let mf = m.to_f64().unwrap_or(f64::NAN);
        if e > 2000 {
            return mf.signum() * f64::INFINITY;
        }
        if e < -2200 {
            return 0.0;
        }
        let mut v = mf;
        let mut e = e;
        while e > 1000 {
            v *= 2f64.powi(1000);
            e -= 1000;
        }
        while e < -1000 {
            v *= 2f64.powi(-1000);
            e += 1000;
        }
        v * 2f64.powi(e as i32)
    }

    /// Round to a multiple of `2^-prec`.
    pub fn round_abs(&self, prec: i64, mode: Round) -> Self {
        if self.exponent >= -prec {
            return self.clone();
        }
        let shift = (-prec - self.exponent) as u64;
        Dyadic::new(shift_round(&self.mantissa, shift, mode), -prec)
    }

    /// Round to at most `bits` significant bits.
    pub fn round_rel(&self, bits: u64, mode: Round) -> Self {
        let len = self.mantissa.bits();
        if len <= bits {
            return self.clone();
        }
        let shift = len - bits;
        Dyadic::new(
            shift_round(&self.mantissa, shift, mode),
            self.exponent + shift as i64,
        )
    }

    /// A multiple of `2^-prec` next to the rational `r` in direction `mode`.
    pub fn from_rational(r: &BigRational, prec: i64, mode: Round) -> Self {
        let num = r.numer();
        let den = r.denom();
        let scaled = if prec >= 0 {
            num << prec as u64
        } else {
            shift_round(num, (-prec) as u64, Round::Down)
        };
        let q = if prec >= 0 {
            div_round_int(&scaled, den, mode)
        } else {
            // Coarse grid: compute exactly then round.
            let exact_scaled = BigRational::new(num.clone(), den.clone())
                / BigRational::from_integer(pow2((-prec) as u64));
            let fl = exact_scaled.floor().to_integer();
            let is_int = exact_scaled.is_integer();
            match mode {
                Round::Down => fl,
                Round::Up => {
                    if is_int {
                        fl
                    } else {
                        fl + 1
                    }
                }
                Round::Nearest => exact_scaled.round().to_integer(),
            }
        };
        Dyadic::new(q, -prec)
    }

    /// `self / other` rounded to a multiple of `2^-prec`.
    pub fn div_abs(&self, other: &Dyadic, prec: i64, mode: Round) -> Self {
        assert!(!other.is_zero(), "division by zero");
        // self/other = (ma/mb) * 2^(ea-eb); want q ≈ that * 2^prec
        let shift = self.exponent - other.exponent + prec;
        let (n, d) = if shift >= 0 {
            (&self.mantissa << shift as u64, other.mantissa.clone())
        } else {
            (self.mantissa.clone(), &other.mantissa << (-shift) as u64)
        };
        let (n, d) = if d.is_negative() { (-n, -d) } else { (n, d) };
        Dyadic::new(div_round_int(&n, &d, mode), -prec)
    }

    /// `self / other` with about `bits` significant bits, rounded in direction `mode`.
    pub fn div_rel(&self, other: &Dyadic, bits: u64, mode: Round) -> Self {
        assert!(!other.is_zero(), "division by zero");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let mag = self.msb().unwrap() - other.msb().unwrap();
        let prec = bits as i64 - mag + 1;
        self.div_abs(other, prec, mode)
    }

    /// Square root of a non-negative value rounded to a multiple of `2^-prec`.
    pub fn sqrt_abs(&self, prec: i64, mode: Round) -> Self {
        assert!(!self.is_negative(), "square root of negative value");
        if self.is_zero() {
            return Dyadic::zero();
        }
        // sqrt(m 2^e) * 2^prec = sqrt(m 2^(e + 2 prec))
        let e2 = self.exponent + 2 * prec;
        let (radicand, exact_shift) = if e2 >= 0 {
            (&self.mantissa << e2 as u64, true)
        } else {
            (self.mantissa.clone() >> (-e2) as u64, false)
        };
        let s = radicand.sqrt();
        let exact = exact_shift && &s * &s == radicand;
        let q = match mode {
            Round::Down => s,
            Round::Up => {
                if exact {
                    s
                } else {
                    s + 1
                }
            }
            Round::Nearest => {
                // Choose between s and s+1 by comparing squares against radicand + 1/4.
                let four_r: BigInt = &radicand << 2u32;
                let mid: BigInt = (&s << 1u32) + 1;
                if &mid * &mid <= four_r {
                    s + 1
                } else {
                    s
                }
            }
        };
        Dyadic::new(q, -prec)
    }

    /// Square root with about `bits` significant bits.
    pub fn sqrt_rel(&self, bits: u64, mode: Round) -> Self {
        if self.is_zero() {
            return Dyadic::zero();
        }
        let half_mag = self.msb().unwrap().div_euclid(2);
        self.sqrt_abs(bits as i64 - half_mag + 1, mode)
    }

    pub fn max(a: &Dyadic, b: &Dyadic) -> Dyadic {
        if a >= b {
            a.clone()
        } else {
            b.clone()
        }
    }

    pub fn min(a: &Dyadic, b: &Dyadic) -> Dyadic {
        if a <= b {
            a.clone()
        } else {
            b.clone()
        }
    }

    /// Decimal rendering with `digits` fractional digits (truncated toward zero).
    pub fn to_decimal(&self, digits: usize) -> String {
        let r = self.to_rational();
        let neg = r.is_negative();
        let r = r.abs();
        let scale = BigInt::from(10u32).pow(digits as u32);
        let scaled = (r * BigRational::from_integer(scale.clone())).floor().to_integer();
        let (ip, fp) = scaled.div_rem(&scale);
        let sign = if neg && !scaled.is_zero() { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{ip}")
        } else {
            format!("{sign}{ip}.{:0>width$}", fp.to_string(), width = digits)
        }
    }
}

impl Default for Dyadic {
    fn default() -> Self {
        Dyadic::zero()
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*2^{}", self.mantissa, self.exponent)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent >= 0 {
            write!(f, "{}", &self.mantissa << self.exponent as u64)
        } else if self.exponent >= -64 {
            write!(f, "{}", self.to_decimal((-self.exponent) as usize))
        } else {
            write!(f, "{:e}", self.to_f64())
        }
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (sa, sb) = (self.signum(), other.signum());
        if sa != sb || sa == 0 {
            return sa.cmp(&sb);
        }
        // Same nonzero sign: compare magnitudes quickly by leading bit.
        let (ma, mb) = (self.msb().unwrap(), other.msb().unwrap());
        if ma != mb {
            let ord = ma.cmp(&mb);
            return if sa > 0 { ord } else { ord.reverse() };
        }
        let e = self.exponent.min(other.exponent);
        let a = &self.mantissa << (self.exponent - e) as u64;
        let b = &other.mantissa << (other.exponent - e) as u64;
        a.cmp(&b)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let e = self.exponent.min(rhs.exponent);
        let a = &self.mantissa << (self.exponent - e) as u64;
        let b = &rhs.mantissa << (rhs.exponent - e) as u64;
        Dyadic::new(a + b, e)
    }
}

impl Sub for &Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        self + &(-rhs)
    }
}

impl Mul for &Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &Dyadic) -> Dyadic {
        if self.is_zero() || rhs.is_zero() {
            return Dyadic::zero();
        }
        Dyadic {
            mantissa: &self.mantissa * &rhs.mantissa,
            exponent: self.exponent + rhs.exponent,
        }
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            mantissa: -&self.mantissa,
            exponent: self.exponent,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Dyadic {
            type Output = Dyadic;
            fn $m(self, rhs: Dyadic) -> Dyadic {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        -&self
    }
}
