//! Reduced rational functions `num/den` over a [`Field`].
//!
//! Canonical form: `gcd(num, den) = 1` and `den` is monic, so two rational
//! functions are equal iff their fields are equal. The zero function is `0/1`.

use std::fmt;

use serde_json::{json, Value};

use super::{Field, Poly, Var};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq)]
pub struct RatFunc<F, V> {
    num: Poly<F, V>,
    den: Poly<F, V>,
}

impl<F: Field, V: Var> RatFunc<F, V> {
    /// Reduces `num/den` to canonical form.
    pub fn new(num: Poly<F, V>, den: Poly<F, V>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        if den.degree() == Some(0) {
            let c = den.leading().and_then(Field::inv).expect("nonzero constant");
            return Ok(RatFunc { num: num.scale(&c), den: Poly::one() });
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g)?, den.div_exact(&g)?)
        };
        Ok(Self::with_monic_den(num, den))
    }

    /// Assumes `num` and `den` coprime, `den` nonzero.
    fn with_monic_den(num: Poly<F, V>, den: Poly<F, V>) -> Self {
        let lead = den.leading().expect("nonzero denominator").clone();
        if lead.is_one() {
            RatFunc { num, den }
        } else {
            let c = lead.inv().expect("nonzero leading coefficient");
            RatFunc { num: num.scale(&c), den: den.scale(&c) }
        }
    }

    pub fn from_poly(p: Poly<F, V>) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    pub fn constant(c: F) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn var() -> Self {
        Self::from_poly(Poly::var())
    }

    /// `1/(x + c)`.
    pub fn reciprocal_linear(c: F) -> Self {
        RatFunc { num: Poly::one(), den: Poly::linear(c) }
    }

    pub fn zero() -> Self {
        RatFunc { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    pub fn num(&self) -> &Poly<F, V> {
        &self.num
    }

    pub fn den(&self) -> &Poly<F, V> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<F> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = self.num.add(&rhs.num);
            return Self::new(num, self.den.clone()).expect("nonzero denominator");
        }
        let g = self.den.gcd(&rhs.den);
        let (a_cof, b_cof) = if g.is_one() {
            (rhs.den.clone(), self.den.clone())
        } else {
            (rhs.den.div_exact(&g).expect("gcd divides"), self.den.div_exact(&g).expect("gcd divides"))
        };
        let num = self.num.mul(&a_cof).add(&rhs.num.mul(&b_cof));
        let den = self.den.mul(&a_cof);
        if g.is_one() {
            // coprime denominators: any common factor of num and den divides neither
            // den alone, so the sum is already reduced.
            if num.is_zero() {
                return Self::zero();
            }
            return Self::with_monic_den(num, den);
        }
        Self::new(num, den).expect("nonzero denominator")
    }

    pub fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Self::from_poly(self.num.mul(&rhs.num));
        }
        // cross-cancellation keeps the gcds small
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let cancel = |p: &Poly<F, V>, g: &Poly<F, V>| {
            if g.is_one() {
                p.clone()
            } else {
                p.div_exact(g).expect("gcd divides")
            }
        };
        let num = cancel(&self.num, &g1).mul(&cancel(&rhs.num, &g2));
        let den = cancel(&self.den, &g2).mul(&cancel(&rhs.den, &g1));
        Self::with_monic_den(num, den)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::with_monic_den(self.den.clone(), self.num.clone()))
        }
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        rhs.inv().map(|r| self.mul(&r)).ok_or(Error::DivisionByZero)
    }

    pub fn pow(&self, k: u32) -> Self {
        RatFunc { num: self.num.pow(k), den: self.den.pow(k) }
    }

    /// Exact value at `x`; fails with [`Error::PoleAtPoint`] when the reduced
    /// denominator vanishes there.
    pub fn eval(&self, x: &F) -> Result<F> {
        let d = self.den.eval(x);
        let d_inv = d.inv().ok_or_else(|| Error::PoleAtPoint(x.to_string()))?;
        Ok(self.num.eval(x).mul(&d_inv))
    }

    /// `f(x + c)`. Shifts preserve coprimality and monicity.
    pub fn shift(&self, c: &F) -> Self {
        if c.is_zero() {
            return self.clone();
        }
        RatFunc { num: self.num.shift(c), den: self.den.shift(c) }
    }

    /// Limit as the variable tends to infinity.
    pub fn limit_at_infinity(&self) -> Result<F> {
        let dn = match self.num.degree() {
            None => return Ok(F::zero()),
            Some(d) => d,
        };
        let dd = self.den.degree().expect("nonzero denominator");
        match dn.cmp(&dd) {
            std::cmp::Ordering::Less => Ok(F::zero()),
            std::cmp::Ordering::Equal => Ok(self.num.leading().expect("nonzero").clone()),
            std::cmp::Ordering::Greater => Err(Error::Divergent),
        }
    }

    /// `deg(num) < deg(den)`, i.e. the function tends to zero at infinity.
    pub fn is_proper(&self) -> bool {
        match self.num.degree() {
            None => true,
            Some(dn) => dn < self.den.degree().expect("nonzero denominator"),
        }
    }

    /// Coefficient-wise map into another field followed by re-reduction.
    pub fn try_map<G: Field>(&self, f: impl Fn(&F) -> Result<G>) -> Result<RatFunc<G, V>> {
        RatFunc::new(self.num.try_map(&f)?, self.den.try_map(&f)?)
    }

    pub fn relabel<W: Var>(&self) -> RatFunc<F, W> {
        RatFunc { num: self.num.relabel(), den: self.den.relabel() }
    }

    pub fn to_json(&self) -> Value {
        json!({ "num": self.num.to_json(), "den": self.den.to_json() })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let field = |k: &str| {
            v.get(k).ok_or_else(|| Error::Parse(format!("rational function missing {k:?}")))
        };
        Self::new(Poly::from_json(field("num")?)?, Poly::from_json(field("den")?)?)
    }
}

impl<F: Field, V: Var> fmt::Debug for RatFunc<F, V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

impl<F: Field, V: Var> fmt::Display for RatFunc<F, V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl<F: Field, V: Var> Field for RatFunc<F, V> {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn one() -> Self {
        RatFunc::one()
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }
    fn add(&self, rhs: &Self) -> Self {
        RatFunc::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        RatFunc::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        RatFunc::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        RatFunc::neg(self)
    }
    fn inv(&self) -> Option<Self> {
        RatFunc::inv(self)
    }
    fn from_scalar(q: &super::Scalar) -> Self {
        RatFunc::constant(F::from_scalar(q))
    }
    fn is_compound(&self) -> bool {
        self.as_constant().is_none_or(|c| c.is_compound())
    }
    fn to_json(&self) -> Value {
        RatFunc::to_json(self)
    }
    fn from_json(v: &Value) -> Result<Self> {
        RatFunc::from_json(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat, Qh, Scalar, Xi, H};

    type P = Poly<Scalar, Xi>;
    type R = RatFunc<Scalar, Xi>;

    fn p(c: &[i64]) -> P {
        P::from_coeffs(c.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn normalize_cancels_common_factor() {
        let f = R::new(p(&[-1, 0, 1]), p(&[-1, 1])).unwrap();
        assert_eq!(f, R::from_poly(p(&[1, 1])));
    }

    #[test]
    fn normalize_absorbs_scalar_content_into_numerator() {
        let f = R::new(p(&[0, 2]), p(&[4])).unwrap();
        assert_eq!(f.num(), &P::from_coeffs(vec![int(0), rat(1, 2)]));
        assert!(f.den().is_one());
    }

    #[test]
    fn normalize_rejects_zero_denominator() {
        assert_eq!(R::new(p(&[1]), P::zero()), Err(Error::ZeroDenominator));
    }

    #[test]
    fn coprime_symbolic_weight_factors_stay_unchanged() {
        // (ξ+3h)² / ((ξ+2h)(ξ+2h+1)) over Q(h)
        let h = Qh::var();
        let two_h = h.scale(&int(2));
        let lin = |c: Qh| Poly::<Qh, Xi>::linear(c);
        let num = lin(h.scale(&int(3))).pow(2);
        let den = lin(two_h.clone()).mul(&lin(two_h.add(&Qh::one())));
        let f = RatFunc::new(num.clone(), den.clone()).unwrap();
        assert_eq!(f.num(), &num);
        assert_eq!(f.den(), &den);
    }

    #[test]
    fn eval_and_pole() {
        // (ξ+1)/(ξ+2h) at ξ=0, h=3/4
        let f = R::new(p(&[1, 1]), P::linear(rat(3, 2))).unwrap();
        assert_eq!(f.eval(&int(0)).unwrap(), rat(2, 3));
        let g = R::new(p(&[0, 1]), p(&[-1, 1])).unwrap();
        assert!(matches!(g.eval(&int(1)), Err(Error::PoleAtPoint(_))));
        assert_eq!(R::constant(rat(5, 3)).eval(&int(17)).unwrap(), rat(5, 3));
    }

    #[test]
    fn shift_examples() {
        // 1/(ξ+2h) shifted by -1 is 1/(ξ-1+2h), here with h symbolic
        let h = Qh::var();
        let f = RatFunc::<Qh, Xi>::reciprocal_linear(h.scale(&int(2)));
        let g = f.shift(&Qh::from_int(-1));
        let expected =
            RatFunc::<Qh, Xi>::reciprocal_linear(h.scale(&int(2)).sub(&Qh::one()));
        assert_eq!(g, expected);
        assert_eq!(R::var().shift(&int(2)), R::from_poly(p(&[2, 1])));
        let q = R::new(p(&[1, 0, 1]), p(&[0, 1])).unwrap();
        assert_eq!(q.shift(&int(0)), q);
    }

    #[test]
    fn limit_at_infinity_cases() {
        let f = R::new(p(&[2, 4]), p(&[0, 1])).unwrap();
        assert_eq!(f.limit_at_infinity().unwrap(), int(4));
        assert_eq!(R::reciprocal_linear(rat(3, 2)).limit_at_infinity().unwrap(), int(0));
        assert_eq!(R::from_poly(p(&[0, 0, 1])).limit_at_infinity(), Err(Error::Divergent));
    }

    #[test]
    fn nested_field_is_a_field() {
        let h = RatFunc::<Scalar, H>::var();
        let x = h.add(&Qh::one()).inv().unwrap();
        assert!(x.mul(&h.add(&Qh::one())).is_one());
        assert_eq!(x.to_string(), "(1)/(h + 1)");
    }
}
