//! Exact scalars, polynomials and rational functions.
//!
//! Everything is built on a small [`Field`] trait so that the same
//! polynomial code runs over `Q`, over `Q(h)` (a symbolic weight) and over
//! `Q(ħ)` (the expansion parameter). Indeterminates are tracked at the type
//! level by zero-sized [`Var`] markers, so a polynomial in `h` can never be
//! added to a polynomial in `ħ` by accident.

pub mod linalg;
pub mod poly;
pub mod ratfunc;
pub mod roots;
pub mod series;

use std::fmt;
use std::hash::Hash;

use num::{BigInt, BigRational, One, Signed, Zero};
use serde_json::Value;

use crate::error::{Error, Result};

pub use poly::Poly;
pub use ratfunc::RatFunc;

/// Exact arbitrary-precision rational.
pub type Scalar = BigRational;

/// `Q(h)`: rational functions in a symbolic extremal weight.
pub type Qh = RatFunc<Scalar, H>;

/// `Q(ħ)`: rational functions in the deformation parameter.
pub type Qhbar = RatFunc<Scalar, Hbar>;

/// Marker for an indeterminate.
pub trait Var: Copy + Clone + fmt::Debug + Default + PartialEq + Eq + Hash + Send + Sync + 'static {
    const NAME: &'static str;
}

/// The Euler operator `ξ = z d/dz`, used as the symbol variable.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Xi;

/// Symbolic extremal weight.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct H;

/// Small deformation parameter, `h = h₀ + ħ`.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Hbar;

/// Auxiliary variable for polynomials substituted with operators, `f(u)`.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct U;

impl Var for Xi {
    const NAME: &'static str = "ξ";
}

impl Var for H {
    const NAME: &'static str = "h";
}

impl Var for Hbar {
    const NAME: &'static str = "ħ";
}

impl Var for U {
    const NAME: &'static str = "u";
}

/// A commutative field with exact arithmetic.
///
/// Methods take `&self` so that big coefficients are not cloned on every
/// operation. The names deliberately avoid `std::ops` so that generic code
/// never hits method-resolution ambiguity.
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;
    fn from_scalar(q: &Scalar) -> Self;

    fn div(&self, rhs: &Self) -> Result<Self> {
        rhs.inv().map(|r| self.mul(&r)).ok_or(Error::DivisionByZero)
    }
    fn from_int(n: i64) -> Self {
        Self::from_scalar(&Scalar::from_integer(BigInt::from(n)))
    }
    /// Whether `Display` output needs parentheses when used as a coefficient.
    fn is_compound(&self) -> bool {
        false
    }

    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;
}

impl Field for Scalar {
    fn zero() -> Self {
        <Scalar as Zero>::zero()
    }
    fn one() -> Self {
        <Scalar as One>::one()
    }
    fn is_zero(&self) -> bool {
        <Scalar as Zero>::is_zero(self)
    }
    fn is_one(&self) -> bool {
        <Scalar as One>::is_one(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if <Scalar as Zero>::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_scalar(q: &Scalar) -> Self {
        q.clone()
    }
    fn to_json(&self) -> Value {
        Value::String(format_scalar(self))
    }
    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => parse_scalar(s),
            other => Err(Error::Parse(format!("expected rational string, got {other}"))),
        }
    }
}

/// `n/d` as a scalar. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

/// Canonical text form: `p` for integers, `p/q` otherwise.
pub fn format_scalar(q: &Scalar) -> String {
    q.to_string()
}

/// Parses `p` or `p/q` (optional sign, no decimal points).
pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not an exact rational: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = n.parse().map_err(|_| bad())?;
    let den: BigInt = d.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(Scalar::new(num, den))
}

/// `true` when `q` is an integer `>= 0`.
pub fn is_nonneg_integer(q: &Scalar) -> bool {
    q.is_integer() && !q.is_negative()
}
