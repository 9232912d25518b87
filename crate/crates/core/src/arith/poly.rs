//! Dense univariate polynomials over a [`Field`].
//!
//! Coefficients are stored in ascending degree order. The vector is empty for
//! the zero polynomial and otherwise its last entry is nonzero.

use std::fmt;
use std::marker::PhantomData;

use serde_json::Value;

use super::{Field, Var};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq)]
pub struct Poly<F, V> {
    coeffs: Vec<F>,
    var: PhantomData<V>,
}

impl<F: Field, V: Var> Poly<F, V> {
    fn trim(mut self) -> Self {
        while self.coeffs.last().is_some_and(Field::is_zero) {
            self.coeffs.pop();
        }
        self
    }

    pub fn from_coeffs(coeffs: Vec<F>) -> Self {
        Poly { coeffs, var: PhantomData }.trim()
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new(), var: PhantomData }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The indeterminate itself.
    pub fn var() -> Self {
        Self::from_coeffs(vec![F::zero(), F::one()])
    }

    /// `x + c`.
    pub fn linear(c: F) -> Self {
        Self::from_coeffs(vec![c, F::one()])
    }

    pub fn monomial(c: F, deg: usize) -> Self {
        let mut coeffs = vec![F::zero(); deg + 1];
        coeffs[deg] = c;
        Self::from_coeffs(coeffs)
    }

    /// Falling factorial `x(x-1)...(x-b+1)`; `1` for `b = 0`.
    pub fn falling_factorial(b: usize) -> Self {
        (0..b).fold(Self::one(), |acc, t| acc.mul(&Self::linear(F::from_int(-(t as i64)))))
    }

    /// Rising product `(x+c)(x+c+1)...(x+c+k-1)`.
    pub fn rising_product(c: &F, k: usize) -> Self {
        (0..k).fold(Self::one(), |acc, t| {
            acc.mul(&Self::linear(c.add(&F::from_int(t as i64))))
        })
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn as_constant(&self) -> Option<F> {
        match self.coeffs.len() {
            0 => Some(F::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Self::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> Self {
        Poly { coeffs: self.coeffs.iter().map(Field::neg).collect(), var: PhantomData }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::from_coeffs(out)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly { coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(), var: PhantomData }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &F) -> F {
        self.coeffs.iter().rev().fold(F::zero(), |acc, c| acc.mul(x).add(c))
    }

    /// `p(x + c)`.
    pub fn shift(&self, c: &F) -> Self {
        if c.is_zero() {
            return self.clone();
        }
        let step = Self::linear(c.clone());
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, a| acc.mul(&step).add(&Self::constant(a.clone())))
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul(&F::from_int(i as i64)))
            .collect();
        Self::from_coeffs(coeffs)
    }

    /// Scales to leading coefficient one. The zero polynomial is returned unchanged.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => self.scale(&l.inv().expect("leading coefficient is nonzero")),
        }
    }

    /// Euclidean division. Fails on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = divisor.leading().and_then(Field::inv).ok_or(Error::DivisionByZero)?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![F::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].mul(&lead_inv);
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].sub(&c.mul(d));
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    /// Exact quotient; fails if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::Precondition("polynomial division is not exact".into()))
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, rhs: &Self) -> Self {
        let (mut a, mut b) = (self.monic(), rhs.monic());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.degree() == Some(0) {
                return Self::one();
            }
            let (_, r) = a.div_rem(&b).expect("b is nonzero");
            a = b;
            b = r.monic();
        }
        a
    }

    pub fn lcm(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let g = self.gcd(rhs);
        self.div_exact(&g).expect("gcd divides").mul(rhs).monic()
    }

    /// Coefficient-wise map into another field, keeping the variable.
    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Poly<G, V> {
        Poly::from_coeffs(self.coeffs.iter().map(f).collect())
    }

    /// Fallible coefficient-wise map.
    pub fn try_map<G: Field>(&self, f: impl Fn(&F) -> Result<G>) -> Result<Poly<G, V>> {
        Ok(Poly::from_coeffs(self.coeffs.iter().map(f).collect::<Result<_>>()?))
    }

    /// Same coefficients, different indeterminate.
    pub fn relabel<W: Var>(&self) -> Poly<F, W> {
        Poly { coeffs: self.coeffs.clone(), var: PhantomData }
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.coeffs.iter().map(Field::to_json).collect())
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::Parse("polynomial must be a coefficient array".into()))?;
        Ok(Self::from_coeffs(arr.iter().map(F::from_json).collect::<Result<_>>()?))
    }
}

impl<F: Field, V: Var> fmt::Debug for Poly<F, V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl<F: Field, V: Var> fmt::Display for Poly<F, V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mut text = c.to_string();
            let negative = !c.is_compound() && text.starts_with('-');
            if negative {
                text.remove(0);
            }
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            first = false;
            let unit = text == "1";
            let text = if c.is_compound() { format!("({text})") } else { text };
            match i {
                0 => write!(f, "{text}")?,
                _ => {
                    if !unit {
                        write!(f, "{text}*")?;
                    }
                    write!(f, "{}", V::NAME)?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
