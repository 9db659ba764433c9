//! Exact rational scalars and the parameter-expression language.
//!
//! Every scalar in the engine is a [`Rational`]; there is no floating point
//! anywhere. Structures with symbolic parameters are written with
//! [`ParamExpr`] entries and instantiated to rationals before any geometry
//! is computed.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use core::fmt;
use core::iter::Sum;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Parameter name to value map used to instantiate expressions.
pub type Bindings = BTreeMap<String, Rational>;

/// An exact rational number in canonical form (positive denominator,
/// numerator and denominator coprime, zero stored as `0/1`).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn from_integer(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `numer / denom`, or `None` when `denom` is zero.
    pub fn new(numer: BigInt, denom: BigInt) -> Option<Self> {
        if denom.is_zero() {
            None
        } else {
            Some(Rational(BigRational::new(numer, denom)))
        }
    }

    /// Small-integer fraction; panics on a zero denominator.
    pub fn ratio(numer: i64, denom: i64) -> Self {
        Self::new(BigInt::from(numer), BigInt::from(denom)).expect("zero denominator")
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }

    pub fn checked_div(&self, rhs: &Rational) -> Option<Self> {
        if rhs.is_zero() {
            None
        } else {
            Some(Rational(&self.0 / &rhs.0))
        }
    }
}

impl Default for Rational {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl From<i32> for Rational {
    fn from(n: i32) -> Self {
        Self::from_integer(n as i64)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Error parsing the `p` / `p/q` rational serialization.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RationalParseError {
    #[error("invalid rational literal `{0}`")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

fn parse_bigint(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix('-').or_else(|| s.strip_prefix('+')).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    BigInt::parse_bytes(s.as_bytes(), 10)
}

impl FromStr for Rational {
    type Err = RationalParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let invalid = || RationalParseError::Invalid(s.to_string());
        match t.split_once('/') {
            None => parse_bigint(t).map(Rational::from).ok_or_else(invalid),
            Some((p, q)) => {
                let p = parse_bigint(p.trim()).ok_or_else(invalid)?;
                let q = parse_bigint(q.trim()).ok_or_else(invalid)?;
                Rational::new(p, q).ok_or_else(|| RationalParseError::ZeroDenominator(s.to_string()))
            }
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl<'a> $tr<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl<'a> $tr<Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
        impl<'a, 'b> $tr<&'b Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'b Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
// Division panics on a zero divisor, like the integer types; use
// `checked_div` where the divisor is data-dependent.
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl AddAssign for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        self.0 += rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl SubAssign for Rational {
    fn sub_assign(&mut self, rhs: Rational) {
        self.0 -= rhs.0;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        self.0 *= &rhs.0;
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

/// Arithmetic expression over rational literals and named parameters.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ParamExpr {
    Lit(Rational),
    Param(String),
    Neg(Box<ParamExpr>),
    Add(Box<ParamExpr>, Box<ParamExpr>),
    Sub(Box<ParamExpr>, Box<ParamExpr>),
    Mul(Box<ParamExpr>, Box<ParamExpr>),
    Div(Box<ParamExpr>, Box<ParamExpr>),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExprError {
    #[error("empty expression")]
    Empty,
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unbound parameter `{0}`")]
    UnboundParameter(String),
    #[error("division by zero in `{0}`")]
    DivisionByZero(String),
}

impl ParamExpr {
    pub fn lit(value: impl Into<Rational>) -> Self {
        ParamExpr::Lit(value.into())
    }

    pub fn param(name: &str) -> Self {
        ParamExpr::Param(name.to_string())
    }

    /// Names of all parameters referenced by the expression.
    pub fn parameters(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_parameters(&mut out);
        out
    }

    fn collect_parameters(&self, out: &mut BTreeSet<String>) {
        match self {
            ParamExpr::Lit(_) => {}
            ParamExpr::Param(name) => {
                out.insert(name.clone());
            }
            ParamExpr::Neg(e) => e.collect_parameters(out),
            ParamExpr::Add(a, b) | ParamExpr::Sub(a, b) | ParamExpr::Mul(a, b) | ParamExpr::Div(a, b) => {
                a.collect_parameters(out);
                b.collect_parameters(out);
            }
        }
    }

    /// Replaces every bound parameter with its literal value; unbound names
    /// are left in place.
    pub fn substitute(&self, bindings: &Bindings) -> ParamExpr {
        let sub = |e: &ParamExpr| Box::new(e.substitute(bindings));
        match self {
            ParamExpr::Lit(v) => ParamExpr::Lit(v.clone()),
            ParamExpr::Param(name) => match bindings.get(name) {
                Some(v) => ParamExpr::Lit(v.clone()),
                None => self.clone(),
            },
            ParamExpr::Neg(e) => ParamExpr::Neg(sub(e)),
            ParamExpr::Add(a, b) => ParamExpr::Add(sub(a), sub(b)),
            ParamExpr::Sub(a, b) => ParamExpr::Sub(sub(a), sub(b)),
            ParamExpr::Mul(a, b) => ParamExpr::Mul(sub(a), sub(b)),
            ParamExpr::Div(a, b) => ParamExpr::Div(sub(a), sub(b)),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            ParamExpr::Add(..) | ParamExpr::Sub(..) => 1,
            ParamExpr::Mul(..) | ParamExpr::Div(..) => 2,
            ParamExpr::Neg(_) => 3,
            ParamExpr::Lit(v) if v.is_negative() || !v.is_integer() => 2,
            ParamExpr::Lit(_) | ParamExpr::Param(_) => 4,
        }
    }
}

impl fmt::Display for ParamExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Operands are parenthesized whenever re-parsing could associate them
        // differently.
        let operand = |f: &mut fmt::Formatter<'_>, e: &ParamExpr, min: u8| {
            if e.precedence() < min {
                write!(f, "({})", e)
            } else {
                write!(f, "{}", e)
            }
        };
        match self {
            ParamExpr::Lit(v) if v.is_negative() => write!(f, "-{}", v.abs()),
            ParamExpr::Lit(v) => write!(f, "{}", v),
            ParamExpr::Param(name) => f.write_str(name),
            ParamExpr::Neg(e) => {
                f.write_str("-")?;
                operand(f, e, 4)
            }
            ParamExpr::Add(a, b) => {
                operand(f, a, 1)?;
                f.write_str(" + ")?;
                operand(f, b, 2)
            }
            ParamExpr::Sub(a, b) => {
                operand(f, a, 1)?;
                f.write_str(" - ")?;
                operand(f, b, 2)
            }
            ParamExpr::Mul(a, b) => {
                operand(f, a, 2)?;
                f.write_str("*")?;
                operand(f, b, 3)
            }
            ParamExpr::Div(a, b) => {
                operand(f, a, 2)?;
                f.write_str("/")?;
                operand(f, b, 3)
            }
        }
    }
}

/// Parses an ASCII arithmetic expression.
///
/// Grammar (standard precedence, left associative):
///
/// ```text
/// expr   := term (('+' | '-') term)*
/// term   := factor (('*' | '/') factor)*
/// factor := ['-'] (number | identifier | '(' expr ')')
/// ```
///
/// Numbers are decimal integers with an optional fractional part, read
/// exactly (`0.25` is `1/4`).
pub fn parse_expr(text: &str) -> Result<ParamExpr, ExprError> {
    let mut parser = Parser { src: text.as_bytes(), pos: 0 };
    parser.skip_ws();
    if parser.pos == parser.src.len() {
        return Err(ExprError::Empty);
    }
    if !text.is_ascii() {
        let offset = text.bytes().position(|b| !b.is_ascii()).unwrap_or(0);
        return Err(ExprError::Syntax { offset, message: "non-ASCII input".to_string() });
    }
    let expr = parser.expr()?;
    parser.skip_ws();
    if parser.pos != parser.src.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(expr)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn error(&self, message: &str) -> ExprError {
        ExprError::Syntax { offset: self.pos, message: message.to_string() }
    }

    fn expr(&mut self) -> Result<ParamExpr, ExprError> {
        let mut lhs = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            lhs = if op == b'+' {
                ParamExpr::Add(Box::new(lhs), Box::new(rhs))
            } else {
                ParamExpr::Sub(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<ParamExpr, ExprError> {
        let mut lhs = self.factor()?;
        while let Some(op @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.factor()?;
            lhs = if op == b'*' {
                ParamExpr::Mul(Box::new(lhs), Box::new(rhs))
            } else {
                ParamExpr::Div(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<ParamExpr, ExprError> {
        let negate = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let atom = match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                inner
            }
            Some(b) if b.is_ascii_digit() => self.number()?,
            Some(b) if b.is_ascii_alphabetic() || b == b'_' => self.identifier(),
            Some(_) => return Err(self.error("expected a number, identifier or `(`")),
            None => return Err(self.error("unexpected end of input")),
        };
        Ok(if negate { ParamExpr::Neg(Box::new(atom)) } else { atom })
    }

    fn number(&mut self) -> Result<ParamExpr, ExprError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let int_part = &self.src[start..self.pos];
        let mut frac_part: &[u8] = &[];
        if self.src.get(self.pos) == Some(&b'.') {
            self.pos += 1;
            let fstart = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            frac_part = &self.src[fstart..self.pos];
            if frac_part.is_empty() {
                return Err(self.error("expected digits after `.`"));
            }
        }
        let mut digits = alloc::vec::Vec::with_capacity(int_part.len() + frac_part.len());
        digits.extend_from_slice(int_part);
        digits.extend_from_slice(frac_part);
        let numer = BigInt::parse_bytes(&digits, 10).ok_or_else(|| self.error("invalid number"))?;
        let denom = num_traits::pow(BigInt::from(10u8), frac_part.len());
        Ok(ParamExpr::Lit(Rational::new(numer, denom).expect("power of ten is nonzero")))
    }

    fn identifier(&mut self) -> ParamExpr {
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
            self.pos += 1;
        }
        let name = core::str::from_utf8(&self.src[start..self.pos]).expect("ASCII");
        ParamExpr::Param(name.to_string())
    }
}

/// Evaluates `expr` exactly under `bindings`.
pub fn eval_expr(expr: &ParamExpr, bindings: &Bindings) -> Result<Rational, ExprError> {
    Ok(match expr {
        ParamExpr::Lit(v) => v.clone(),
        ParamExpr::Param(name) => bindings
            .get(name)
            .cloned()
            .ok_or_else(|| ExprError::UnboundParameter(name.clone()))?,
        ParamExpr::Neg(e) => -eval_expr(e, bindings)?,
        ParamExpr::Add(a, b) => eval_expr(a, bindings)? + eval_expr(b, bindings)?,
        ParamExpr::Sub(a, b) => eval_expr(a, bindings)? - eval_expr(b, bindings)?,
        ParamExpr::Mul(a, b) => eval_expr(a, bindings)? * eval_expr(b, bindings)?,
        ParamExpr::Div(a, b) => {
            let num = eval_expr(a, bindings)?;
            let den = eval_expr(b, bindings)?;
            num.checked_div(&den)
                .ok_or_else(|| ExprError::DivisionByZero(format!("{}", expr)))?
        }
    })
}

/// Parses a `NAME=VALUE` list separated by commas; values are expressions
/// over previously bound names or literals.
pub fn parse_bindings(text: &str) -> Result<Bindings, ExprError> {
    let mut out = Bindings::new();
    for (offset, item) in split_with_offsets(text, ',') {
        if item.trim().is_empty() {
            continue;
        }
        let (name, value) = parse_binding(item).map_err(|e| shift_offset(e, offset))?;
        out.insert(name, value);
    }
    Ok(out)
}

/// Parses a single `NAME=VALUE` binding with a literal-only value.
pub fn parse_binding(text: &str) -> Result<(String, Rational), ExprError> {
    let Some((name, value)) = text.split_once('=') else {
        return Err(ExprError::Syntax { offset: text.len(), message: "expected `NAME=VALUE`".to_string() });
    };
    let name = name.trim();
    let valid_name = name
        .bytes()
        .next()
        .is_some_and(|b| b.is_ascii_alphabetic() || b == b'_')
        && name.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_');
    if !valid_name {
        return Err(ExprError::Syntax { offset: 0, message: format!("invalid parameter name `{}`", name) });
    }
    let value_offset = text.find('=').map_or(0, |i| i + 1);
    let expr = parse_expr(value).map_err(|e| shift_offset(e, value_offset))?;
    let value = eval_expr(&expr, &Bindings::new())?;
    Ok((name.to_string(), value))
}

fn split_with_offsets(text: &str, sep: char) -> impl Iterator<Item = (usize, &str)> {
    let mut offset = 0;
    text.split(sep).map(move |part| {
        let at = offset;
        offset += part.len() + sep.len_utf8();
        (at, part)
    })
}

fn shift_offset(err: ExprError, by: usize) -> ExprError {
    match err {
        ExprError::Syntax { offset, message } => ExprError::Syntax { offset: offset + by, message },
        other => other,
    }
}
