//! JSON instance files: two Cauchy problems with exact or named numbers.
//!
//! ```json
//! {
//!   "first":  { "order": 2, "coefficients": ["-1", "0"], "initial": ["2", "0"] },
//!   "second": { "order": 1, "coefficients": ["-1/2"], "initial": ["5"] }
//! }
//! ```
//!
//! Numbers are strings: `"p/q"`, decimals such as `"-1.25"` or `"3e-2"`,
//! `"sqrt(r)"` for a non-negative rational `r`, `"pi"` or `"e"`, each optionally
//! preceded by `-`. A complex number is an object `{"re": .., "im": ..}`. JSON
//! numeric literals are rejected so that binary floats never reach the engine.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde_json::{Map, Value};

use crate::cfinite::{CauchyProblem, RootedProblem};
use crate::error::InstanceError;
use crate::realnum::{format_rational, ComplexName, RealName};
use crate::scalar::QComplex;

#[derive(Clone, Debug, PartialEq)]
pub enum RealSpec {
    Rational(BigRational),
    Sqrt { negative: bool, radicand: BigRational },
    Pi { negative: bool },
    E { negative: bool },
}

#[derive(Clone, Debug, PartialEq)]
pub enum NumberSpec {
    Real(RealSpec),
    Complex { re: RealSpec, im: RealSpec },
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProblemBlock {
    pub coefficients: Vec<NumberSpec>,
    pub initial: Vec<NumberSpec>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct InstanceFile {
    pub first: ProblemBlock,
    pub second: ProblemBlock,
}

fn field(path: &str, msg: impl Into<String>) -> InstanceError {
    InstanceError::Field {
        path: path.to_string(),
        msg: msg.into(),
    }
}

fn parse_decimal(s: &str) -> Option<BigRational> {
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{int}{frac}").parse().ok()?;
    let scale = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut r = if scale >= 0 {
        BigRational::from_integer(digits * ten.pow(scale as u32))
    } else {
        BigRational::new(digits, ten.pow((-scale) as u32))
    };
    if neg {
        r = -r;
    }
    Some(r)
}

fn parse_rational(s: &str) -> Option<BigRational> {
    if let Some((a, b)) = s.split_once('/') {
        let a: BigInt = a.trim().parse().ok()?;
        let b: BigInt = b.trim().parse().ok()?;
        if b.is_zero() {
            return None;
        }
        return Some(BigRational::new(a, b));
    }
    parse_decimal(s)
}

impl FromStr for RealSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let t = s.trim();
        if let Some(r) = parse_rational(t) {
            return Ok(RealSpec::Rational(r));
        }
        let (negative, body) = match t.strip_prefix('-') {
            Some(rest) => (true, rest.trim()),
            None => (false, t),
        };
        match body {
            "pi" => return Ok(RealSpec::Pi { negative }),
            "e" => return Ok(RealSpec::E { negative }),
            _ => {}
        }
        if let Some(inner) = body.strip_prefix("sqrt(").and_then(|b| b.strip_suffix(')')) {
            let radicand = parse_rational(inner.trim()).ok_or_else(|| format!("bad radicand `{inner}`"))?;
            if radicand.is_negative() {
                return Err(format!("negative radicand `{inner}`"));
            }
            return Ok(RealSpec::Sqrt { negative, radicand });
        }
        Err(format!("unrecognised number `{s}`"))
    }
}

impl fmt::Display for RealSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = |neg: &bool| if *neg { "-" } else { "" };
        match self {
            RealSpec::Rational(r) => write!(f, "{}", format_rational(r)),
            RealSpec::Sqrt { negative, radicand } => write!(f, "{}sqrt({})", sign(negative), format_rational(radicand)),
            RealSpec::Pi { negative } => write!(f, "{}pi", sign(negative)),
            RealSpec::E { negative } => write!(f, "{}e", sign(negative)),
        }
    }
}

impl RealSpec {
    pub fn to_name(&self) -> RealName {
        let signed = |neg: bool, x: RealName| if neg { x.negate() } else { x };
        match self {
            RealSpec::Rational(r) => RealName::rational(r.clone()),
            RealSpec::Sqrt { negative, radicand } => signed(*negative, RealName::sqrt(radicand.clone())),
            RealSpec::Pi { negative } => signed(*negative, RealName::pi()),
            RealSpec::E { negative } => signed(*negative, RealName::e()),
        }
    }

    fn from_value(v: &Value, path: &str) -> Result<Self, InstanceError> {
        match v {
            Value::String(s) => s.parse().map_err(|e: String| field(path, e)),
            Value::Number(_) => Err(field(path, "numbers must be strings, e.g. \"1/3\" or \"0.5\"")),
            _ => Err(field(path, "expected a number string")),
        }
    }
}

impl NumberSpec {
    pub fn rational(r: BigRational) -> Self {
        NumberSpec::Real(RealSpec::Rational(r))
    }

    pub fn to_name(&self) -> ComplexName {
        match self {
            NumberSpec::Real(x) => ComplexName::real(x.to_name()),
            NumberSpec::Complex { re, im } => {
                if matches!(im, RealSpec::Rational(r) if r.is_zero()) {
                    ComplexName::real(re.to_name())
                } else {
                    ComplexName {
                        re: re.to_name(),
                        im: im.to_name(),
                    }
                }
            }
        }
    }

    fn from_value(v: &Value, path: &str) -> Result<Self, InstanceError> {
        match v {
            Value::Object(o) => {
                for k in o.keys() {
                    if k != "re" && k != "im" {
                        return Err(field(path, format!("unexpected key `{k}`")));
                    }
                }
                let part = |k: &str| -> Result<RealSpec, InstanceError> {
                    let p = format!("{path}.{k}");
                    match o.get(k) {
                        Some(x) => RealSpec::from_value(x, &p),
                        None => Err(field(&p, "missing")),
                    }
                };
                Ok(NumberSpec::Complex {
                    re: part("re")?,
                    im: part("im")?,
                })
            }
            _ => Ok(NumberSpec::Real(RealSpec::from_value(v, path)?)),
        }
    }

    fn to_value(&self) -> Value {
        match self {
            NumberSpec::Real(x) => Value::String(x.to_string()),
            NumberSpec::Complex { re, im } => {
                let mut o = Map::new();
                o.insert("re".into(), Value::String(re.to_string()));
                o.insert("im".into(), Value::String(im.to_string()));
                Value::Object(o)
            }
        }
    }
}

impl ProblemBlock {
    pub fn order(&self) -> usize {
        self.coefficients.len()
    }

    pub fn to_problem(&self) -> Result<CauchyProblem, InstanceError> {
        CauchyProblem::new(
            self.coefficients.iter().map(NumberSpec::to_name).collect(),
            self.initial.iter().map(NumberSpec::to_name).collect(),
        )
        .map_err(|e| field("", e.to_string()))
    }

    /// Exact block for a problem with known roots.
    pub fn from_rooted(p: &RootedProblem) -> Self {
        let spec = |z: &QComplex| {
            if z.im.is_zero() {
                NumberSpec::rational(z.re.clone())
            } else {
                NumberSpec::Complex {
                    re: RealSpec::Rational(z.re.clone()),
                    im: RealSpec::Rational(z.im.clone()),
                }
            }
        };
        ProblemBlock {
            coefficients: p.coeffs().iter().map(spec).collect(),
            initial: p.init.iter().map(spec).collect(),
        }
    }

    pub fn from_rationals(coefficients: &[BigRational], initial: &[BigRational]) -> Self {
        ProblemBlock {
            coefficients: coefficients.iter().cloned().map(NumberSpec::rational).collect(),
            initial: initial.iter().cloned().map(NumberSpec::rational).collect(),
        }
    }

    fn from_value(v: &Value, path: &str) -> Result<Self, InstanceError> {
        let o = v.as_object().ok_or_else(|| field(path, "expected an object"))?;
        for k in o.keys() {
            if !matches!(k.as_str(), "order" | "coefficients" | "initial") {
                return Err(field(path, format!("unexpected key `{k}`")));
            }
        }
        let order = match o.get("order") {
            Some(Value::Number(n)) => n
                .as_u64()
                .ok_or_else(|| field(&format!("{path}.order"), "expected a non-negative integer"))?
                as usize,
            Some(_) => return Err(field(&format!("{path}.order"), "expected a non-negative integer")),
            None => return Err(field(&format!("{path}.order"), "missing")),
        };
        let list = |k: &str| -> Result<Vec<NumberSpec>, InstanceError> {
            let p = format!("{path}.{k}");
            let arr = o
                .get(k)
                .ok_or_else(|| field(&p, "missing"))?
                .as_array()
                .ok_or_else(|| field(&p, "expected an array"))?;
            if arr.len() != order {
                return Err(field(&p, format!("{} entries for order {order}", arr.len())));
            }
            arr.iter()
                .enumerate()
                .map(|(i, x)| NumberSpec::from_value(x, &format!("{p}[{i}]")))
                .collect()
        };
        Ok(ProblemBlock {
            coefficients: list("coefficients")?,
            initial: list("initial")?,
        })
    }

    fn to_value(&self) -> Value {
        let mut o = Map::new();
        o.insert("order".into(), Value::from(self.order()));
        o.insert(
            "coefficients".into(),
            Value::Array(self.coefficients.iter().map(NumberSpec::to_value).collect()),
        );
        o.insert("initial".into(), Value::Array(self.initial.iter().map(NumberSpec::to_value).collect()));
        Value::Object(o)
    }
}

impl InstanceFile {
    pub fn from_rooted(f: &RootedProblem, g: &RootedProblem) -> Self {
        InstanceFile {
            first: ProblemBlock::from_rooted(f),
            second: ProblemBlock::from_rooted(g),
        }
    }

    pub fn parse(text: &str) -> Result<Self, InstanceError> {
        let v: Value = serde_json::from_str(text)?;
        let o = v.as_object().ok_or_else(|| field("$", "expected an object"))?;
        for k in o.keys() {
            if k != "first" && k != "second" {
                return Err(field("$", format!("unexpected key `{k}`")));
            }
        }
        let block = |k: &str| match o.get(k) {
            Some(b) => ProblemBlock::from_value(b, k),
            None => Err(field(k, "missing")),
        };
        Ok(InstanceFile {
            first: block("first")?,
            second: block("second")?,
        })
    }

    pub fn to_json(&self) -> String {
        let mut o = Map::new();
        o.insert("first".into(), self.first.to_value());
        o.insert("second".into(), self.second.to_value());
        serde_json::to_string_pretty(&Value::Object(o)).expect("serialisable")
    }

    pub fn problems(&self) -> Result<(CauchyProblem, CauchyProblem), InstanceError> {
        Ok((self.first.to_problem()?, self.second.to_problem()?))
    }
}
