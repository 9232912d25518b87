//! Operators written as sums of `z^a f(ξ) ∂^b`.
//!
//! Unlike symbols, monomial terms keep the unreduced numerator and
//! denominator of `f`, and their action on `z^n` applies the falling
//! factorial of `∂^b` first: when `n < b` the term contributes exactly zero,
//! whatever `f` does at `n − b`.

use std::collections::BTreeMap;
use std::fmt;

use super::{GradedOperator, Symbol};
use crate::arith::{Field, Poly, Qh, RatFunc, Scalar, Xi};
use crate::error::{Error, Result};

/// Sparse vector in the module basis: exponent → coefficient.
pub type SparseVec<F> = BTreeMap<i64, F>;

pub(crate) fn sparse_add_term<F: Field>(v: &mut SparseVec<F>, k: i64, c: F) {
    if c.is_zero() {
        return;
    }
    let sum = match v.get(&k) {
        Some(old) => old.add(&c),
        None => c,
    };
    if sum.is_zero() {
        v.remove(&k);
    } else {
        v.insert(k, sum);
    }
}

#[derive(Clone, PartialEq)]
pub struct MonomialTerm<F: Field> {
    z_power: u32,
    num: Poly<F, Xi>,
    den: Poly<F, Xi>,
    d_power: u32,
}

impl<F: Field> MonomialTerm<F> {
    /// `z^a (num/den)(ξ) ∂^b` with `num/den` kept exactly as given.
    pub fn new(z_power: u32, num: Poly<F, Xi>, den: Poly<F, Xi>, d_power: u32) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(MonomialTerm { z_power, num, den, d_power })
    }

    pub fn from_ratfunc(z_power: u32, f: &Symbol<F>, d_power: u32) -> Self {
        MonomialTerm { z_power, num: f.num().clone(), den: f.den().clone(), d_power }
    }

    pub fn z_power(&self) -> u32 {
        self.z_power
    }

    pub fn d_power(&self) -> u32 {
        self.d_power
    }

    pub fn num(&self) -> &Poly<F, Xi> {
        &self.num
    }

    pub fn den(&self) -> &Poly<F, Xi> {
        &self.den
    }

    pub fn degree(&self) -> i64 {
        self.d_power as i64 - self.z_power as i64
    }

    /// The reduced middle factor `f`.
    pub fn f(&self) -> Symbol<F> {
        RatFunc::new(self.num.clone(), self.den.clone()).expect("nonzero denominator")
    }

    /// `ξ(ξ−1)⋯(ξ−b+1)·f(ξ−b)`.
    pub fn symbol(&self) -> Symbol<F> {
        let ff = Symbol::from_poly(Poly::falling_factorial(self.d_power as usize));
        ff.mul(&self.f().shift(&F::from_int(-(self.d_power as i64))))
    }

    /// Image of `z^n` as `(exponent, coefficient)`, `None` when zero.
    pub fn apply(&self, n: i64) -> Result<Option<(i64, F)>> {
        let b = self.d_power as i64;
        if n < b {
            return Ok(None);
        }
        let m = F::from_int(n - b);
        let d = self.den.eval(&m);
        let d_inv = d.inv().ok_or(Error::ModuleUndefined { degree: self.degree(), n })?;
        let ff = (0..b).fold(F::one(), |acc, t| acc.mul(&F::from_int(n - t)));
        let v = ff.mul(&self.num.eval(&m)).mul(&d_inv);
        Ok(if v.is_zero() { None } else { Some((n - b + self.z_power as i64, v)) })
    }

    pub fn try_map<G: Field>(&self, f: impl Fn(&F) -> Result<G>) -> Result<MonomialTerm<G>> {
        MonomialTerm::new(self.z_power, self.num.try_map(&f)?, self.den.try_map(&f)?, self.d_power)
    }

    pub fn scale(&self, c: &F) -> Self {
        MonomialTerm { num: self.num.scale(c), ..self.clone() }
    }
}

impl<F: Field> fmt::Display for MonomialTerm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.z_power {
            0 => {}
            1 => parts.push("z".to_string()),
            a => parts.push(format!("z^{a}")),
        }
        if self.den.is_one() {
            parts.push(format!("({})", self.num));
        } else {
            parts.push(format!("({})/({})", self.num, self.den));
        }
        match self.d_power {
            0 => {}
            1 => parts.push("∂".to_string()),
            b => parts.push(format!("∂^{b}")),
        }
        write!(f, "{}", parts.join("·"))
    }
}

impl<F: Field> fmt::Debug for MonomialTerm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A finite sum of monomial terms.
#[derive(Clone, PartialEq, Default)]
pub struct MonomialForm<F: Field> {
    terms: Vec<MonomialTerm<F>>,
}

impl<F: Field> MonomialForm<F> {
    pub fn new(terms: Vec<MonomialTerm<F>>) -> Self {
        MonomialForm { terms }
    }

    pub fn single(term: MonomialTerm<F>) -> Self {
        MonomialForm { terms: vec![term] }
    }

    /// `z^a f(ξ) ∂^b` with reduced `f`.
    pub fn term(z_power: u32, f: Symbol<F>, d_power: u32) -> Self {
        Self::single(MonomialTerm::from_ratfunc(z_power, &f, d_power))
    }

    pub fn terms(&self) -> &[MonomialTerm<F>] {
        &self.terms
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(rhs.terms.iter().cloned());
        MonomialForm { terms }
    }

    pub fn scale(&self, c: &F) -> Self {
        MonomialForm { terms: self.terms.iter().map(|t| t.scale(c)).collect() }
    }

    /// Collects per-degree symbols into the canonical graded form.
    pub fn to_operator(&self) -> GradedOperator<F> {
        GradedOperator::from_components(self.terms.iter().map(|t| (t.degree(), t.symbol())))
    }

    /// Canonical monomials of an operator: `z^{|d|} σ_d(ξ)` for `d < 0` and
    /// `g(ξ) ∂^d` with `g(ξ) = σ_d(ξ+d)/((ξ+d)⋯(ξ+1))` for `d ≥ 0`.
    pub fn from_operator(op: &GradedOperator<F>) -> Self {
        let terms = op
            .components()
            .map(|(d, s)| {
                if d < 0 {
                    MonomialTerm::from_ratfunc(d.unsigned_abs() as u32, s, 0)
                } else {
                    let ff = Symbol::from_poly(Poly::falling_factorial(d as usize)).shift(&F::from_int(d));
                    let g = s.shift(&F::from_int(d)).div(&ff).expect("falling factorial is nonzero");
                    MonomialTerm::from_ratfunc(0, &g, d as u32)
                }
            })
            .collect();
        MonomialForm { terms }
    }

    pub fn apply_basis(&self, n: i64) -> Result<SparseVec<F>> {
        let mut out = SparseVec::new();
        for t in &self.terms {
            if let Some((k, v)) = t.apply(n)? {
                sparse_add_term(&mut out, k, v);
            }
        }
        Ok(out)
    }

    pub fn apply_vec(&self, v: &SparseVec<F>) -> Result<SparseVec<F>> {
        let mut out = SparseVec::new();
        for (&n, c) in v {
            for (k, w) in self.apply_basis(n)? {
                sparse_add_term(&mut out, k, w.mul(c));
            }
        }
        Ok(out)
    }

    pub fn try_map<G: Field>(&self, f: impl Fn(&F) -> Result<G>) -> Result<MonomialForm<G>> {
        Ok(MonomialForm { terms: self.terms.iter().map(|t| t.try_map(&f)).collect::<Result<_>>()? })
    }

    /// Largest `|degree|` over terms.
    pub fn bandwidth(&self) -> u64 {
        self.terms.iter().map(|t| t.degree().unsigned_abs()).max().unwrap_or(0)
    }
}

impl MonomialForm<Qh> {
    /// Specializes the weight coefficient-wise without reducing `f`.
    pub fn at_weight(&self, h: &Scalar) -> Result<MonomialForm<Scalar>> {
        self.try_map(|c| c.eval(h))
    }
}

impl<F: Field> fmt::Display for MonomialForm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<F: Field> fmt::Debug for MonomialForm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MonomialForm({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    type M = MonomialForm<Scalar>;

    fn poly(c: &[Scalar]) -> Poly<Scalar, Xi> {
        Poly::from_coeffs(c.to_vec())
    }

    #[test]
    fn derivative_symbol() {
        let d = M::term(0, Symbol::one(), 1).to_operator();
        assert_eq!(d, GradedOperator::homogeneous(1, Symbol::var()));
    }

    #[test]
    fn f_symbol_at_concrete_weight() {
        let f = Symbol::reciprocal_linear(rat(3, 2));
        let op = M::term(1, f.clone(), 0).to_operator();
        assert_eq!(op, GradedOperator::homogeneous(-1, f));
    }

    #[test]
    fn z_d2_plus_2h_d_is_l1() {
        // h = 3/4: z∂² + (3/2)∂ and (ξ + 3/2)∂ share the symbol ξ(ξ − 1 + 3/2)
        let a = M::term(1, Symbol::one(), 2).add(&M::term(0, Symbol::constant(rat(3, 2)), 1));
        let b = M::term(0, Symbol::from_poly(Poly::linear(rat(3, 2))), 1);
        assert_eq!(a.to_operator(), b.to_operator());
        let expected = poly(&[int(0), int(1)]).mul(&Poly::linear(rat(1, 2)));
        assert_eq!(a.to_operator(), GradedOperator::homogeneous(1, Symbol::from_poly(expected)));
    }

    #[test]
    fn falling_factorial_kills_poles_below_b() {
        // ∂² followed by f with a pole at ξ = -1: only n ≥ 2 reach f
        let t = MonomialTerm::<Scalar>::new(0, Poly::one(), Poly::linear(int(1)), 2).unwrap();
        assert_eq!(t.apply(1).unwrap(), None);
        assert_eq!(t.apply(3).unwrap(), Some((1, int(3))));
        let bad = MonomialTerm::<Scalar>::new(0, Poly::one(), Poly::var(), 1).unwrap();
        assert_eq!(bad.apply(1), Err(Error::ModuleUndefined { degree: 1, n: 1 }));
    }

    #[test]
    fn canonical_round_trip_preserves_action() {
        let x = M::term(2, Symbol::reciprocal_linear(rat(5, 2)), 0)
            .add(&M::term(0, Symbol::from_poly(Poly::linear(rat(9, 4))), 3))
            .add(&M::term(1, Symbol::one(), 2));
        let back = M::from_operator(&x.to_operator());
        assert_eq!(back.to_operator(), x.to_operator());
        for n in 0..20 {
            assert_eq!(back.apply_basis(n).unwrap(), x.apply_basis(n).unwrap());
            assert_eq!(x.to_operator().apply_to_basis(n).unwrap(), x.apply_basis(n).unwrap());
        }
    }

    #[test]
    fn reordering_d_past_z() {
        // ∂^b z^a as a composition against the closed forms
        for a in 0..4u32 {
            for b in 0..4u32 {
                let za = M::term(a, Symbol::one(), 0).to_operator();
                let db = M::term(0, Symbol::one(), b).to_operator();
                let prod = db.mul(&za);
                let closed = if b <= a {
                    let p = Poly::<Scalar, Xi>::falling_factorial(b as usize).shift(&int(a as i64));
                    M::term(a - b, Symbol::from_poly(p), 0)
                } else {
                    let p = Poly::<Scalar, Xi>::falling_factorial(a as usize).shift(&int(b as i64));
                    M::term(0, Symbol::from_poly(p), b - a)
                };
                for n in 0..=30 {
                    assert_eq!(prod.apply_to_basis(n).unwrap(), closed.apply_basis(n).unwrap(), "a={a} b={b} n={n}");
                }
            }
        }
    }
}
