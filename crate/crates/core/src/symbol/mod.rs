//! Graded symbols for the extended Weyl algebra.
//!
//! An operator of degree `d` with symbol `σ_d(ξ)` sends `z^n` to
//! `σ_d(n)·z^{n−d}`. Every element is a finite sum of such homogeneous
//! pieces, and the map from operators to symbol families is injective, so
//! [`GradedOperator`] is the canonical representation. Composition follows
//! from the action: for pieces of degrees `d` and `e`,
//! `(x·y)_{d+e}(ξ) = σ_x(ξ − e)·σ_y(ξ)`.

mod expr;
pub mod membership;
mod monomial;

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::arith::{Field, Poly, Qh, RatFunc, Scalar, Xi};
use crate::error::{Error, Result};

pub use expr::{CancellationWarning, OpExpr, SymbolEval};
pub use membership::MembershipReport;
pub use monomial::{MonomialForm, MonomialTerm, SparseVec};

/// A symbol in ξ with coefficients in `F`.
pub type Symbol<F> = RatFunc<F, Xi>;

#[derive(Clone, PartialEq)]
pub struct GradedOperator<F: Field> {
    comps: BTreeMap<i64, Symbol<F>>,
}

impl<F: Field> Default for GradedOperator<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Field> GradedOperator<F> {
    pub fn zero() -> Self {
        GradedOperator { comps: BTreeMap::new() }
    }

    pub fn identity() -> Self {
        Self::homogeneous(0, Symbol::one())
    }

    pub fn homogeneous(degree: i64, symbol: Symbol<F>) -> Self {
        let mut comps = BTreeMap::new();
        if !symbol.is_zero() {
            comps.insert(degree, symbol);
        }
        GradedOperator { comps }
    }

    /// Multiplication by a function of the Euler operator.
    pub fn diagonal(symbol: Symbol<F>) -> Self {
        Self::homogeneous(0, symbol)
    }

    pub fn from_components(it: impl IntoIterator<Item = (i64, Symbol<F>)>) -> Self {
        let mut out = Self::zero();
        for (d, s) in it {
            out.add_component(d, &s);
        }
        out
    }

    fn add_component(&mut self, d: i64, s: &Symbol<F>) {
        if s.is_zero() {
            return;
        }
        let sum = match self.comps.get(&d) {
            Some(old) => old.add(s),
            None => s.clone(),
        };
        if sum.is_zero() {
            self.comps.remove(&d);
        } else {
            self.comps.insert(d, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn component(&self, d: i64) -> Option<&Symbol<F>> {
        self.comps.get(&d)
    }

    /// Symbol at degree `d`, zero if absent.
    pub fn symbol(&self, d: i64) -> Symbol<F> {
        self.comps.get(&d).cloned().unwrap_or_else(Symbol::zero)
    }

    pub fn components(&self) -> impl Iterator<Item = (i64, &Symbol<F>)> {
        self.comps.iter().map(|(d, s)| (*d, s))
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.comps.keys().copied().collect()
    }

    pub fn is_homogeneous(&self, d: i64) -> bool {
        self.comps.keys().all(|&k| k == d)
    }

    /// Largest `|d|` over components, the matrix bandwidth.
    pub fn bandwidth(&self) -> u64 {
        self.comps.keys().map(|d| d.unsigned_abs()).max().unwrap_or(0)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (d, s) in &rhs.comps {
            out.add_component(*d, s);
        }
        out
    }

    pub fn neg(&self) -> Self {
        GradedOperator { comps: self.comps.iter().map(|(d, s)| (*d, s.neg())).collect() }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        GradedOperator { comps: self.comps.iter().map(|(d, s)| (*d, s.scale(c))).collect() }
    }

    /// Composition `self ∘ rhs` (apply `rhs` first).
    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (&d, sx) in &self.comps {
            for (&e, sy) in &rhs.comps {
                let shifted = sx.shift(&F::from_int(-e));
                out.add_component(d + e, &shifted.mul(sy));
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::identity(), |acc, _| acc.mul(self))
    }

    pub fn commutator(&self, rhs: &Self) -> Self {
        self.mul(rhs).sub(&rhs.mul(self))
    }

    /// Maps every symbol coefficient into another field.
    pub fn try_map<G: Field>(&self, f: impl Fn(&F) -> Result<G>) -> Result<GradedOperator<G>> {
        let mut out = GradedOperator::zero();
        for (&d, s) in &self.comps {
            out.add_component(d, &s.try_map(&f)?);
        }
        Ok(out)
    }

    /// Maps every symbol through `f`, component by component.
    pub fn map_symbols<G: Field>(&self, f: impl Fn(i64, &Symbol<F>) -> Result<Symbol<G>>) -> Result<GradedOperator<G>> {
        let mut out = GradedOperator::zero();
        for (&d, s) in &self.comps {
            out.add_component(d, &f(d, s)?);
        }
        Ok(out)
    }

    /// `σ_d(n)` over the coefficient field, [`Error::ModuleUndefined`] at a pole.
    pub fn eval_symbol_at(&self, d: i64, n: i64) -> Result<F> {
        match self.comps.get(&d) {
            None => Ok(F::zero()),
            Some(s) => s.eval(&F::from_int(n)).map_err(|_| Error::ModuleUndefined { degree: d, n }),
        }
    }

    /// Image of `z^n`, as exponent → coefficient.
    pub fn apply_to_basis(&self, n: i64) -> Result<SparseVec<F>> {
        let mut out = SparseVec::new();
        for &d in self.comps.keys() {
            let v = self.eval_symbol_at(d, n)?;
            if v.is_zero() {
                continue;
            }
            if n - d < 0 {
                return Err(Error::ModuleUndefined { degree: d, n });
            }
            out.insert(n - d, v);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.comps
                .iter()
                .map(|(d, s)| json!({ "degree": d, "num": s.num().to_json(), "den": s.den().to_json() }))
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let arr = v.as_array().ok_or_else(|| Error::Parse("operator must be a JSON array".into()))?;
        let mut out = Self::zero();
        for c in arr {
            let d = c
                .get("degree")
                .and_then(Value::as_i64)
                .ok_or_else(|| Error::Parse("component missing integer degree".into()))?;
            let part = |k: &str| c.get(k).ok_or_else(|| Error::Parse(format!("component missing {k:?}")));
            let s = RatFunc::new(Poly::from_json(part("num")?)?, Poly::from_json(part("den")?)?)?;
            out.add_component(d, &s);
        }
        Ok(out)
    }
}

impl GradedOperator<Qh> {
    /// Specializes the symbolic weight `h` to a concrete value.
    pub fn at_weight(&self, h: &Scalar) -> Result<GradedOperator<Scalar>> {
        self.try_map(|c| c.eval(h))
    }
}

impl GradedOperator<Scalar> {
    /// Embeds a concrete operator as a constant family over `Q(h)`.
    pub fn lift(&self) -> GradedOperator<Qh> {
        self.try_map(|c| Ok(Qh::constant(c.clone()))).expect("constant embedding cannot fail")
    }
}

impl<F: Field> fmt::Display for GradedOperator<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.comps.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.comps.iter().map(|(d, s)| format!("[{d}] {s}")).collect();
        write!(f, "{}", parts.join("; "))
    }
}

impl<F: Field> fmt::Debug for GradedOperator<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedOperator({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    type Op = GradedOperator<Qh>;

    fn h() -> Qh {
        Qh::var()
    }

    fn c(n: i64) -> Qh {
        Qh::from_int(n)
    }

    fn lin(a: Qh) -> Poly<Qh, Xi> {
        Poly::linear(a)
    }

    fn d_op() -> Op {
        Op::homogeneous(1, Symbol::var())
    }

    fn f_op() -> Op {
        Op::homogeneous(-1, Symbol::reciprocal_linear(h().scale(&int(2))))
    }

    fn l(k: i64) -> Op {
        match k {
            -1 => Op::homogeneous(-1, Symbol::one()),
            0 => Op::diagonal(Symbol::from_poly(lin(h()))),
            1 => Op::homogeneous(1, Symbol::from_poly(Poly::var().mul(&lin(h().scale(&int(2)).sub(&c(1)))))),
            _ => unreachable!(),
        }
    }

    #[test]
    fn df_and_fd_products() {
        let two_h = h().scale(&int(2));
        let df = d_op().mul(&f_op());
        assert_eq!(df, Op::diagonal(RatFunc::new(lin(c(1)), lin(two_h.clone())).unwrap()));
        let fd = f_op().mul(&d_op());
        assert_eq!(fd, Op::diagonal(RatFunc::new(Poly::var(), lin(two_h.sub(&c(1)))).unwrap()));
    }

    #[test]
    fn d_f_commutator() {
        let two_h = h().scale(&int(2));
        let expected = RatFunc::new(
            Poly::constant(two_h.sub(&c(1))),
            lin(two_h.clone()).mul(&lin(two_h.sub(&c(1)))),
        )
        .unwrap();
        assert_eq!(d_op().commutator(&f_op()), Op::diagonal(expected));
    }

    #[test]
    fn sl2_commutator_examples() {
        assert_eq!(l(1).commutator(&l(-1)), l(0).scale(&c(2)));
        assert_eq!(l(0).commutator(&l(1)), l(1).neg());
    }

    #[test]
    fn sum_and_grading() {
        let x = d_op().add(&f_op());
        assert_eq!(x.degrees(), vec![-1, 1]);
        assert!(!x.is_homogeneous(1));
        assert!(x.sub(&x).is_zero());
        assert_eq!(x.add(&Op::zero()), x);
        assert!(l(0).is_homogeneous(0));
    }

    #[test]
    fn grading_is_ad_l0_diagonal() {
        let x = d_op().add(&f_op()).add(&l(1).scale(&h()));
        let lhs = x.commutator(&l(0));
        let rhs = GradedOperator::from_components(x.components().map(|(d, s)| (d, s.scale(&c(d)))));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn specialize_and_evaluate() {
        let f = f_op().at_weight(&rat(3, 4)).unwrap();
        assert_eq!(f.eval_symbol_at(-1, 0).unwrap(), rat(2, 3));
        let f0 = f_op().at_weight(&int(0)).unwrap();
        assert_eq!(f0.eval_symbol_at(-1, 0), Err(Error::ModuleUndefined { degree: -1, n: 0 }));
        let d = d_op().at_weight(&int(1)).unwrap();
        assert!(d.apply_to_basis(0).unwrap().is_empty());
        assert_eq!(d.apply_to_basis(3).unwrap().get(&2), Some(&int(3)));
    }

    #[test]
    fn json_round_trip() {
        let x = d_op().add(&f_op()).add(&l(0));
        let back = Op::from_json(&x.to_json()).unwrap();
        assert_eq!(back, x);
        let s = serde_json::to_string(&x.at_weight(&rat(3, 4)).unwrap().to_json()).unwrap();
        assert_eq!(s, r#"[{"degree":-1,"den":["3/2","1"],"num":["1"]},{"degree":0,"den":["1"],"num":["3/4","1"]},{"degree":1,"den":["1"],"num":["0","1"]}]"#);
    }
}
