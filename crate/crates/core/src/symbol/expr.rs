//! Unevaluated sums, products and commutators of generators.
//!
//! Reduced symbol arithmetic cancels common factors of numerator and
//! denominator. When a cancelled factor vanishes at a basis index, the
//! reduced composite symbol and the true composite action disagree there.
//! [`OpExpr`] keeps the expression tree so both can be computed: the symbol
//! through [`GradedOperator`] arithmetic and the action by applying the
//! generator monomial forms one after another.

use std::fmt;

use super::monomial::sparse_add_term;
use super::{GradedOperator, MonomialForm, SparseVec};
use crate::arith::{Field, Qh, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq)]
pub enum OpExpr<F: Field> {
    Atom { name: String, form: MonomialForm<F> },
    Sum(Vec<OpExpr<F>>),
    Scaled(F, Box<OpExpr<F>>),
    /// `Product([a, b, c])` is `a∘b∘c`, so `c` acts first.
    Product(Vec<OpExpr<F>>),
    Commutator(Box<OpExpr<F>>, Box<OpExpr<F>>),
}

/// Reduced composite symbol value together with a possible warning.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolEval<F: Field> {
    pub value: F,
    pub warning: Option<CancellationWarning<F>>,
}

/// The reduced composite symbol disagrees with the generator-level action.
#[derive(Debug, Clone, PartialEq)]
pub struct CancellationWarning<F: Field> {
    pub degree: i64,
    pub n: i64,
    /// Coefficient produced by the true composition, `None` if the
    /// composition itself is undefined at `n`.
    pub action_value: Option<F>,
}

impl<F: Field> OpExpr<F> {
    pub fn atom(name: impl Into<String>, form: MonomialForm<F>) -> Self {
        OpExpr::Atom { name: name.into(), form }
    }

    pub fn product(factors: Vec<OpExpr<F>>) -> Self {
        OpExpr::Product(factors)
    }

    pub fn commutator(a: OpExpr<F>, b: OpExpr<F>) -> Self {
        OpExpr::Commutator(Box::new(a), Box::new(b))
    }

    pub fn scaled(c: F, a: OpExpr<F>) -> Self {
        OpExpr::Scaled(c, Box::new(a))
    }

    pub fn sum(terms: Vec<OpExpr<F>>) -> Self {
        OpExpr::Sum(terms)
    }

    /// `a − b`.
    pub fn difference(a: OpExpr<F>, b: OpExpr<F>) -> Self {
        OpExpr::Sum(vec![a, OpExpr::scaled(F::from_int(-1), b)])
    }

    /// Reduced graded symbol of the whole expression.
    pub fn symbol(&self) -> GradedOperator<F> {
        match self {
            OpExpr::Atom { form, .. } => form.to_operator(),
            OpExpr::Sum(ts) => ts.iter().fold(GradedOperator::zero(), |acc, t| acc.add(&t.symbol())),
            OpExpr::Scaled(c, a) => a.symbol().scale(c),
            OpExpr::Product(fs) => fs.iter().fold(GradedOperator::identity(), |acc, f| acc.mul(&f.symbol())),
            OpExpr::Commutator(a, b) => a.symbol().commutator(&b.symbol()),
        }
    }

    /// True action on a sparse vector, composing generator actions.
    pub fn apply_vec(&self, v: &SparseVec<F>) -> Result<SparseVec<F>> {
        match self {
            OpExpr::Atom { form, .. } => form.apply_vec(v),
            OpExpr::Sum(ts) => {
                let mut out = SparseVec::new();
                for t in ts {
                    for (k, c) in t.apply_vec(v)? {
                        sparse_add_term(&mut out, k, c);
                    }
                }
                Ok(out)
            }
            OpExpr::Scaled(c, a) => {
                Ok(a.apply_vec(v)?.into_iter().map(|(k, x)| (k, x.mul(c))).filter(|(_, x)| !x.is_zero()).collect())
            }
            OpExpr::Product(fs) => {
                let mut cur = v.clone();
                for f in fs.iter().rev() {
                    cur = f.apply_vec(&cur)?;
                }
                Ok(cur)
            }
            OpExpr::Commutator(a, b) => {
                let ab = a.apply_vec(&b.apply_vec(v)?)?;
                let ba = b.apply_vec(&a.apply_vec(v)?)?;
                let mut out = ab;
                for (k, c) in ba {
                    sparse_add_term(&mut out, k, c.neg());
                }
                Ok(out)
            }
        }
    }

    pub fn apply_basis(&self, n: i64) -> Result<SparseVec<F>> {
        let mut v = SparseVec::new();
        v.insert(n, F::one());
        self.apply_vec(&v)
    }

    /// Evaluates the reduced symbol at degree `d`, point `n`, and flags a
    /// [`CancellationWarning`] when the generator-level composition gives a
    /// different coefficient of `z^{n−d}`.
    pub fn eval_product_symbol(&self, d: i64, n: i64) -> Result<SymbolEval<F>> {
        let value = self.symbol().eval_symbol_at(d, n)?;
        let action_value = match self.apply_basis(n) {
            Ok(v) => Some(v.get(&(n - d)).cloned().unwrap_or_else(F::zero)),
            Err(Error::ModuleUndefined { .. }) => None,
            Err(e) => return Err(e),
        };
        let warning = match &action_value {
            Some(a) if *a == value => None,
            _ => Some(CancellationWarning { degree: d, n, action_value }),
        };
        Ok(SymbolEval { value, warning })
    }

    /// Every generator occurring in the expression.
    pub fn atoms(&self) -> Vec<(&str, &MonomialForm<F>)> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut Vec<(&'a str, &'a MonomialForm<F>)>) {
        match self {
            OpExpr::Atom { name, form } => out.push((name.as_str(), form)),
            OpExpr::Sum(ts) | OpExpr::Product(ts) => ts.iter().for_each(|t| t.collect_atoms(out)),
            OpExpr::Scaled(_, a) => a.collect_atoms(out),
            OpExpr::Commutator(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    /// Upper bound on how far any intermediate exponent moves from the input.
    pub fn reach(&self) -> u64 {
        match self {
            OpExpr::Atom { form, .. } => form.bandwidth(),
            OpExpr::Sum(ts) => ts.iter().map(OpExpr::reach).max().unwrap_or(0),
            OpExpr::Scaled(_, a) => a.reach(),
            OpExpr::Product(fs) => fs.iter().map(OpExpr::reach).sum(),
            OpExpr::Commutator(a, b) => a.reach() + b.reach(),
        }
    }

    pub fn try_map<G: Field>(&self, f: &impl Fn(&F) -> Result<G>) -> Result<OpExpr<G>> {
        Ok(match self {
            OpExpr::Atom { name, form } => OpExpr::Atom { name: name.clone(), form: form.try_map(f)? },
            OpExpr::Sum(ts) => OpExpr::Sum(ts.iter().map(|t| t.try_map(f)).collect::<Result<_>>()?),
            OpExpr::Scaled(c, a) => OpExpr::Scaled(f(c)?, Box::new(a.try_map(f)?)),
            OpExpr::Product(fs) => OpExpr::Product(fs.iter().map(|t| t.try_map(f)).collect::<Result<_>>()?),
            OpExpr::Commutator(a, b) => OpExpr::Commutator(Box::new(a.try_map(f)?), Box::new(b.try_map(f)?)),
        })
    }
}

impl OpExpr<Qh> {
    pub fn at_weight(&self, h: &Scalar) -> Result<OpExpr<Scalar>> {
        self.try_map(&|c: &Qh| c.eval(h))
    }
}

impl<F: Field> fmt::Display for OpExpr<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OpExpr::Atom { name, .. } => write!(f, "{name}"),
            OpExpr::Sum(ts) => {
                let parts: Vec<String> = ts.iter().map(ToString::to_string).collect();
                write!(f, "({})", parts.join(" + "))
            }
            OpExpr::Scaled(c, a) if c.is_compound() => write!(f, "({c})·{a}"),
            OpExpr::Scaled(c, a) => write!(f, "{c}·{a}"),
            OpExpr::Product(fs) => {
                let parts: Vec<String> = fs.iter().map(ToString::to_string).collect();
                write!(f, "{}", parts.join("·"))
            }
            OpExpr::Commutator(a, b) => write!(f, "[{a}, {b}]"),
        }
    }
}

impl<F: Field> fmt::Debug for OpExpr<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OpExpr({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat, Poly, RatFunc};

    /// `L_2` and `L_{-2}` at a concrete weight, from their monomial forms.
    fn l2_pair(h: &Scalar) -> (OpExpr<Scalar>, OpExpr<Scalar>) {
        let three_h = h * int(3);
        let two_h = h * int(2);
        let up = MonomialForm::term(0, RatFunc::from_poly(Poly::linear(three_h.clone())), 2);
        let den = Poly::linear(two_h.clone()).mul(&Poly::linear(two_h + int(1)));
        let down = MonomialForm::single(
            super::super::MonomialTerm::new(2, Poly::linear(three_h), den, 0).unwrap(),
        );
        (OpExpr::atom("L2", up), OpExpr::atom("L-2", down))
    }

    #[test]
    fn composite_symbol_crosses_removable_singularity() {
        let (up, down) = l2_pair(&rat(1, 2));
        let e = OpExpr::product(vec![down, up]);
        let r = e.eval_product_symbol(0, 0).unwrap();
        assert_eq!(r.value, rat(1, 4));
        let w = r.warning.expect("cancellation warning");
        assert_eq!(w.action_value, Some(int(0)));
    }

    #[test]
    fn generic_weight_has_no_warning() {
        let (up, down) = l2_pair(&rat(3, 4));
        let e = OpExpr::commutator(up, down);
        for n in 0..10 {
            assert!(e.eval_product_symbol(0, n).unwrap().warning.is_none());
        }
    }

    #[test]
    fn single_generator_has_no_warning() {
        let (_, down) = l2_pair(&rat(1, 2));
        for n in 0..10 {
            assert!(down.eval_product_symbol(-2, n).unwrap().warning.is_none());
        }
    }
}
