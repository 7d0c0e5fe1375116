//! Scalar kinds the matrix and determinant code is generic over.
//!
//! Three concrete kinds are provided: [`Rational`] (canonical `p/q` over
//! arbitrary-size integers), [`Integer`] (arbitrary-size, with division that
//! refuses to truncate) and [`Float`] (IEEE-754 binary64, exact zero test).

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("malformed {kind} scalar `{text}`")]
    Malformed { kind: ScalarKind, text: String },
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("fraction `{0}` is not allowed for integer scalars")]
    FractionForInteger(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("inexact integer division {dividend} / {divisor}")]
    InexactDivision { dividend: String, divisor: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScalarKind {
    Rational,
    Integer,
    Float,
}

impl ScalarKind {
    pub fn name(self) -> &'static str {
        match self {
            ScalarKind::Rational => "rational",
            ScalarKind::Integer => "integer",
            ScalarKind::Float => "float",
        }
    }
}

impl fmt::Display for ScalarKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ScalarKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "rational" => Ok(ScalarKind::Rational),
            "integer" => Ok(ScalarKind::Integer),
            "float" => Ok(ScalarKind::Float),
            other => Err(format!("unknown scalar kind `{other}`")),
        }
    }
}

/// Commutative-ring element with a zero test, exact division and a magnitude
/// order. Values are immutable; every operation returns a new value.
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    const KIND: ScalarKind;
    /// Whether arithmetic is exact. Inexact kinds get tolerance-based
    /// comparisons in verification code.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;

    /// `self / rhs`, failing rather than rounding when the quotient does not
    /// exist in the kind.
    fn exact_div(&self, rhs: &Self) -> Result<Self, ScalarError>;

    /// Compares `|self|` with `|other|`.
    fn magnitude_cmp(&self, other: &Self) -> Ordering;

    /// Nearest binary64 value; may be infinite for huge exact values.
    fn to_f64(&self) -> f64;

    fn parse(text: &str) -> Result<Self, ScalarError>;

    /// Canonical text form, accepted back by [`Scalar::parse`].
    fn to_text(&self) -> String {
        self.to_string()
    }
}

/// Parses `text` under `kind` and returns its canonical text form.
pub fn parse_scalar(text: &str, kind: ScalarKind) -> Result<String, ScalarError> {
    Ok(match kind {
        ScalarKind::Rational => Rational::parse(text)?.to_text(),
        ScalarKind::Integer => Integer::parse(text)?.to_text(),
        ScalarKind::Float => Float::parse(text)?.to_text(),
    })
}

/// Number of bits in `|x|`; zero has bit length 0.
pub fn bit_length(x: &Integer) -> u64 {
    x.0.bits()
}

fn is_integer_text(s: &str) -> bool {
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
}

fn parse_bigint(text: &str, kind: ScalarKind) -> Result<BigInt, ScalarError> {
    let t = text.trim();
    if !is_integer_text(t) {
        return Err(ScalarError::Malformed {
            kind,
            text: text.to_string(),
        });
    }
    t.strip_prefix('+')
        .unwrap_or(t)
        .parse::<BigInt>()
        .map_err(|_| ScalarError::Malformed {
            kind,
            text: text.to_string(),
        })
}

// ---------------------------------------------------------------------------

/// Exact rational number, always held in lowest terms with a positive
/// denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self, ScalarError> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Rational(BigRational::new(numer.into(), denom)))
    }

    pub fn from_integer(value: &Integer) -> Self {
        Rational(BigRational::from_integer(value.0.clone()))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Scalar for Rational {
    const KIND: ScalarKind = ScalarKind::Rational;
    const EXACT: bool = true;

    fn zero() -> Self {
        Rational(BigRational::zero())
    }
    fn one() -> Self {
        Rational(BigRational::one())
    }
    fn from_i64(v: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(v)))
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        Rational(&self.0 + &rhs.0)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Rational(&self.0 - &rhs.0)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Rational(&self.0 * &rhs.0)
    }
    fn neg(&self) -> Self {
        Rational(-&self.0)
    }
    fn exact_div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        if rhs.0.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }
    fn magnitude_cmp(&self, other: &Self) -> Ordering {
        self.0.abs().cmp(&other.0.abs())
    }
    fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Accepts `p`, `p/q` and finite decimals such as `-1.25` or `3e-2`
    /// (converted exactly).
    fn parse(text: &str) -> Result<Self, ScalarError> {
        let t = text.trim();
        let malformed = || ScalarError::Malformed {
            kind: ScalarKind::Rational,
            text: text.to_string(),
        };
        if let Some((p, q)) = t.split_once('/') {
            let p = parse_bigint(p, ScalarKind::Rational)?;
            let q = parse_bigint(q, ScalarKind::Rational)?;
            if q.is_zero() {
                return Err(ScalarError::ZeroDenominator(text.to_string()));
            }
            return Ok(Rational(BigRational::new(p, q)));
        }
        if is_integer_text(t) {
            return Ok(Rational(BigRational::from_integer(parse_bigint(
                t,
                ScalarKind::Rational,
            )?)));
        }
        parse_decimal(t).ok_or_else(malformed).map(Rational)
    }
}

/// Exact value of a finite decimal literal with optional exponent.
fn parse_decimal(t: &str) -> Option<BigRational> {
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(pos) => (&t[..pos], t[pos + 1..].parse::<i32>().ok()?),
        None => (t, 0),
    };
    let (negative, body) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part
        .bytes()
        .chain(frac_part.bytes())
        .all(|b| b.is_ascii_digit())
    {
        return None;
    }
    let digits: BigInt = format!("0{int_part}{frac_part}").parse().ok()?;
    let scale = exponent.checked_sub(i32::try_from(frac_part.len()).ok()?)?;
    let ten = BigInt::from(10u8);
    let mut value = if scale >= 0 {
        BigRational::from_integer(digits * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(digits, num_traits::pow(ten, scale.unsigned_abs() as usize))
    };
    if negative {
        value = -value;
    }
    Some(value)
}

// ---------------------------------------------------------------------------

/// Arbitrary-size signed integer.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Integer(BigInt);

impl Integer {
    pub fn new(value: impl Into<BigInt>) -> Self {
        Integer(value.into())
    }

    pub fn as_big(&self) -> &BigInt {
        &self.0
    }
}

impl fmt::Debug for Integer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Integer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Scalar for Integer {
    const KIND: ScalarKind = ScalarKind::Integer;
    const EXACT: bool = true;

    fn zero() -> Self {
        Integer(BigInt::zero())
    }
    fn one() -> Self {
        Integer(BigInt::one())
    }
    fn from_i64(v: i64) -> Self {
        Integer(BigInt::from(v))
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        Integer(&self.0 + &rhs.0)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Integer(&self.0 - &rhs.0)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Integer(&self.0 * &rhs.0)
    }
    fn neg(&self) -> Self {
        Integer(-&self.0)
    }
    fn exact_div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        if rhs.0.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let (quotient, remainder) = self.0.div_rem(&rhs.0);
        if !remainder.is_zero() {
            return Err(ScalarError::InexactDivision {
                dividend: self.0.to_string(),
                divisor: rhs.0.to_string(),
            });
        }
        Ok(Integer(quotient))
    }
    fn magnitude_cmp(&self, other: &Self) -> Ordering {
        self.0.magnitude().cmp(other.0.magnitude())
    }
    fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
    fn parse(text: &str) -> Result<Self, ScalarError> {
        if text.contains('/') {
            return Err(ScalarError::FractionForInteger(text.to_string()));
        }
        parse_bigint(text, ScalarKind::Integer).map(Integer)
    }
}

// ---------------------------------------------------------------------------

/// Binary64 float. The zero test is exact (`== 0.0`); tolerances belong to
/// the caller.
#[derive(Clone, Copy, PartialEq, PartialOrd)]
pub struct Float(pub f64);

impl fmt::Debug for Float {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Float {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Rust prints the shortest digit string that reads back bit-exactly.
        write!(f, "{}", self.0)
    }
}

/// Token prefix the float parser expands to a square root, e.g. `sqrt(3)`.
pub const SQRT_DIRECTIVE: &str = "sqrt(";

impl Scalar for Float {
    const KIND: ScalarKind = ScalarKind::Float;
    const EXACT: bool = false;

    fn zero() -> Self {
        Float(0.0)
    }
    fn one() -> Self {
        Float(1.0)
    }
    fn from_i64(v: i64) -> Self {
        Float(v as f64)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0.0
    }
    fn add(&self, rhs: &Self) -> Self {
        Float(self.0 + rhs.0)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Float(self.0 - rhs.0)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Float(self.0 * rhs.0)
    }
    fn neg(&self) -> Self {
        Float(-self.0)
    }
    fn exact_div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        if rhs.0 == 0.0 {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Float(self.0 / rhs.0))
    }
    fn magnitude_cmp(&self, other: &Self) -> Ordering {
        self.0.abs().total_cmp(&other.0.abs())
    }
    fn to_f64(&self) -> f64 {
        self.0
    }

    /// Accepts decimal floats, `p/q` (evaluated) and `sqrt(x)` / `-sqrt(x)`.
    fn parse(text: &str) -> Result<Self, ScalarError> {
        let t = text.trim();
        let malformed = || ScalarError::Malformed {
            kind: ScalarKind::Float,
            text: text.to_string(),
        };
        let (negative, body) = match t.strip_prefix('-') {
            Some(rest) if rest.starts_with(SQRT_DIRECTIVE) => (true, rest),
            _ => (false, t),
        };
        if let Some(inner) = body
            .strip_prefix(SQRT_DIRECTIVE)
            .and_then(|rest| rest.strip_suffix(')'))
        {
            let radicand = Float::parse(inner)?.0;
            if radicand < 0.0 {
                return Err(malformed());
            }
            let root = radicand.sqrt();
            return Ok(Float(if negative { -root } else { root }));
        }
        if let Some((p, q)) = t.split_once('/') {
            let p: f64 = p.trim().parse().map_err(|_| malformed())?;
            let q: f64 = q.trim().parse().map_err(|_| malformed())?;
            if q == 0.0 {
                return Err(ScalarError::ZeroDenominator(text.to_string()));
            }
            return Ok(Float(p / q));
        }
        // `f64::from_str` also accepts "inf"/"nan"; only plain numerals get here.
        if !t
            .bytes()
            .all(|b| b.is_ascii_digit() || matches!(b, b'+' | b'-' | b'.' | b'e' | b'E'))
        {
            return Err(malformed());
        }
        t.parse::<f64>().map(Float).map_err(|_| malformed())
    }
}
