//! The sl(2) generators, the operators `D`, `F`, the conformal symmetries
//! `L_k` and the tensor family `J_k` on `V_h`, and exact checks of the
//! identities they satisfy.
//!
//! All generators are first written as monomial forms over `Q(h)`; a
//! concrete weight is reached by coefficient-wise specialization, which keeps
//! the generic denominators (so a pole that only appears at a special weight
//! is not silently cancelled).

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde_json::{json, Value};

use crate::arith::linalg::{solve, Solution};
use crate::arith::{Field, Poly, Qh, RatFunc, Scalar, Xi, U};
use crate::error::{Error, Result};
use crate::symbol::{GradedOperator, MonomialForm, MonomialTerm, OpExpr, Symbol};

/// A coefficient field that a `Q(h)` coefficient can be specialized into.
pub trait Weighted: Field {
    fn specialize(c: &Qh, weight: Option<&Scalar>) -> Result<Self>;
}

impl Weighted for Qh {
    fn specialize(c: &Qh, _weight: Option<&Scalar>) -> Result<Self> {
        Ok(c.clone())
    }
}

impl Weighted for Scalar {
    fn specialize(c: &Qh, weight: Option<&Scalar>) -> Result<Self> {
        let h = weight.ok_or_else(|| Error::Precondition("concrete field needs a weight".into()))?;
        c.eval(h)
    }
}

fn h() -> Qh {
    Qh::var()
}

/// `ξ + c`.
fn xi_plus(c: Qh) -> Poly<Qh, Xi> {
    Poly::linear(c)
}

/// `l_{-1} = z`, `l_0 = ξ + h`, `l_1 = z∂² + 2h∂`.
pub fn sl2_form(i: i64) -> MonomialForm<Qh> {
    match i {
        -1 => MonomialForm::term(1, Symbol::one(), 0),
        0 => MonomialForm::term(0, Symbol::from_poly(xi_plus(h())), 0),
        1 => MonomialForm::term(1, Symbol::one(), 2).add(&MonomialForm::term(0, Symbol::constant(h().scale(&Scalar::from_int(2))), 1)),
        _ => panic!("sl2 index must be -1, 0 or 1"),
    }
}

/// `D = ∂`.
pub fn d_form() -> MonomialForm<Qh> {
    MonomialForm::term(0, Symbol::one(), 1)
}

/// `F = z·1/(ξ + 2h)`.
pub fn f_form() -> MonomialForm<Qh> {
    j_form(-1)
}

/// `L_k = (ξ + (k+1)h)∂^k` for `k ≥ 0` and
/// `L_{−k} = z^k (ξ + (k+1)h)/((ξ+2h)⋯(ξ+2h+k−1))` for `k ≥ 1`.
pub fn l_form(k: i64) -> MonomialForm<Qh> {
    let kk = k.unsigned_abs() as i64;
    let top = xi_plus(h().scale(&Scalar::from_int(kk + 1)));
    if k >= 0 {
        MonomialForm::term(0, Symbol::from_poly(top), k as u32)
    } else {
        let den = Poly::rising_product(&h().scale(&Scalar::from_int(2)), kk as usize);
        // cancel only what cancels for every h
        let f = RatFunc::new(top, den).expect("nonzero denominator");
        MonomialForm::term(kk as u32, f, 0)
    }
}

/// `J_i = D^i`, `J_{−i} = F^i`, `J_0 = 1`.
pub fn j_form(k: i64) -> MonomialForm<Qh> {
    if k >= 0 {
        MonomialForm::term(0, Symbol::one(), k as u32)
    } else {
        let kk = k.unsigned_abs() as usize;
        let den = Poly::rising_product(&h().scale(&Scalar::from_int(2)), kk);
        MonomialForm::single(MonomialTerm::new(kk as u32, Poly::one(), den, 0).expect("nonzero denominator"))
    }
}

/// The two tensor-operator families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    L,
    J,
}

impl Family {
    /// Spin of the corresponding primary field.
    pub fn spin(self) -> i64 {
        match self {
            Family::L => 2,
            Family::J => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::L => "L",
            Family::J => "J",
        }
    }
}

/// Generators at a fixed weight, either symbolic (`F = Q(h)`) or concrete.
#[derive(Debug, Clone)]
pub struct GeneratorCatalog<F: Weighted> {
    weight: Option<Scalar>,
    h: F,
    max_index: i64,
    l_ops: BTreeMap<i64, GradedOperator<F>>,
    j_ops: BTreeMap<i64, GradedOperator<F>>,
}

impl GeneratorCatalog<Qh> {
    pub fn symbolic(max_index: i64) -> Self {
        Self::build(None, max_index).expect("symbolic catalog always builds")
    }
}

impl GeneratorCatalog<Scalar> {
    /// Catalog at a concrete weight. Builds at every weight; use
    /// [`GeneratorCatalog::membership`] to check admissibility.
    pub fn at_weight(h: &Scalar, max_index: i64) -> Result<Self> {
        Self::build(Some(h.clone()), max_index)
    }
}

impl<F: Weighted> GeneratorCatalog<F> {
    fn build(weight: Option<Scalar>, max_index: i64) -> Result<Self> {
        let h = F::specialize(&Qh::var(), weight.as_ref()).unwrap_or_else(|_| F::zero());
        let mut cat = GeneratorCatalog { weight, h, max_index, l_ops: BTreeMap::new(), j_ops: BTreeMap::new() };
        for k in -max_index..=max_index {
            let l = cat.form_l(k)?.to_operator();
            let j = cat.form_j(k)?.to_operator();
            cat.l_ops.insert(k, l);
            cat.j_ops.insert(k, j);
        }
        Ok(cat)
    }

    pub fn weight(&self) -> Option<&Scalar> {
        self.weight.as_ref()
    }

    pub fn h(&self) -> &F {
        &self.h
    }

    pub fn max_index(&self) -> i64 {
        self.max_index
    }

    fn specialize(&self, m: &MonomialForm<Qh>) -> Result<MonomialForm<F>> {
        m.try_map(|c| F::specialize(c, self.weight.as_ref()))
    }

    pub fn form_sl2(&self, i: i64) -> Result<MonomialForm<F>> {
        self.specialize(&sl2_form(i))
    }

    pub fn form_l(&self, k: i64) -> Result<MonomialForm<F>> {
        self.specialize(&l_form(k))
    }

    pub fn form_j(&self, k: i64) -> Result<MonomialForm<F>> {
        self.specialize(&j_form(k))
    }

    pub fn form(&self, family: Family, k: i64) -> Result<MonomialForm<F>> {
        match family {
            Family::L => self.form_l(k),
            Family::J => self.form_j(k),
        }
    }

    pub fn sl2(&self, i: i64) -> GradedOperator<F> {
        self.form_sl2(i).expect("sl2 coefficients are polynomial in h").to_operator()
    }

    pub fn l(&self, k: i64) -> GradedOperator<F> {
        match self.l_ops.get(&k) {
            Some(op) => op.clone(),
            None => self.form_l(k).expect("L coefficients are polynomial in h").to_operator(),
        }
    }

    pub fn j(&self, k: i64) -> GradedOperator<F> {
        match self.j_ops.get(&k) {
            Some(op) => op.clone(),
            None => self.form_j(k).expect("J coefficients are polynomial in h").to_operator(),
        }
    }

    pub fn op(&self, family: Family, k: i64) -> GradedOperator<F> {
        match family {
            Family::L => self.l(k),
            Family::J => self.j(k),
        }
    }

    pub fn d(&self) -> GradedOperator<F> {
        self.j(1)
    }

    pub fn f(&self) -> GradedOperator<F> {
        self.j(-1)
    }

    /// `L_k` as an expression atom, for generator-level composition.
    pub fn expr(&self, family: Family, k: i64) -> Result<OpExpr<F>> {
        Ok(OpExpr::atom(format!("{}{}", family.name(), k), self.form(family, k)?))
    }

    /// `q_R = 1/(2h − 1)`.
    pub fn q_r(&self) -> Result<F> {
        self.h.scale_int(2).sub(&F::one()).inv().ok_or(Error::QrUndefined)
    }
}

impl GeneratorCatalog<Scalar> {
    /// Membership of `L_k` or `J_k` over the submodule `n ≥ start`.
    pub fn membership(&self, family: Family, k: i64, start: i64) -> Result<crate::symbol::MembershipReport> {
        self.form(family, k)?.membership(start)
    }
}

trait ScaleInt {
    fn scale_int(&self, n: i64) -> Self;
}

impl<F: Field> ScaleInt for F {
    fn scale_int(&self, n: i64) -> Self {
        self.mul(&F::from_int(n))
    }
}

/// Outcome of one exact identity check.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport<F: Field> {
    pub name: String,
    /// Left-hand side minus right-hand side.
    pub residual: GradedOperator<F>,
    pub passed: bool,
}

impl<F: Field> IdentityReport<F> {
    pub fn new(name: impl Into<String>, lhs: &GradedOperator<F>, rhs: &GradedOperator<F>) -> Self {
        let residual = lhs.sub(rhs);
        IdentityReport { name: name.into(), passed: residual.is_zero(), residual }
    }

    pub fn to_json(&self) -> Value {
        json!({ "name": self.name, "passed": self.passed, "residual": self.residual.to_json() })
    }
}

/// All nine brackets `[l_i, l_j] = (i − j) l_{i+j}`.
pub fn sl2_table<F: Weighted>(cat: &GeneratorCatalog<F>) -> Vec<IdentityReport<F>> {
    let mut out = Vec::new();
    for i in -1..=1 {
        for j in -1..=1 {
            let lhs = cat.sl2(i).commutator(&cat.sl2(j));
            let rhs = if (i + j).abs() <= 1 { cat.sl2(i + j).scale(&F::from_int(i - j)) } else { GradedOperator::zero() };
            out.push(IdentityReport::new(format!("[l{i},l{j}] = {}l{}", i - j, i + j), &lhs, &rhs));
        }
    }
    out
}

/// Defining relations of `D` and `F` with the sl2 generators.
///
/// For `F` the relations are `[l_1,F] = 1`, `[l_0,F] = F`,
/// `[l_{−1},F] = F²`: the mirror image of the `D` relations under
/// `l_i ↦ l_{−i}`.
pub fn verify_d_f_relations<F: Weighted>(cat: &GeneratorCatalog<F>) -> Vec<IdentityReport<F>> {
    let (d, f) = (cat.d(), cat.f());
    let one = GradedOperator::identity();
    vec![
        IdentityReport::new("[D,l-1] = 1", &d.commutator(&cat.sl2(-1)), &one),
        IdentityReport::new("[D,l0] = D", &d.commutator(&cat.sl2(0)), &d),
        IdentityReport::new("[D,l1] = D^2", &d.commutator(&cat.sl2(1)), &d.mul(&d)),
        IdentityReport::new("[l1,F] = 1", &cat.sl2(1).commutator(&f), &one),
        IdentityReport::new("[l0,F] = F", &cat.sl2(0).commutator(&f), &f),
        IdentityReport::new("[l-1,F] = F^2", &cat.sl2(-1).commutator(&f), &f.mul(&f)),
    ]
}

/// The `F` relations with `l_{−1}` and `l_1` exchanged,
/// `[l_{−1},F] = 1`, `[l_1,F] = F²`. These fail for every weight (both sides
/// have different degrees) and are kept only for the discrepancy report.
pub fn f_relations_swapped<F: Weighted>(cat: &GeneratorCatalog<F>) -> Vec<IdentityReport<F>> {
    let f = cat.f();
    vec![
        IdentityReport::new("[l-1,F] = 1", &cat.sl2(-1).commutator(&f), &GradedOperator::identity()),
        IdentityReport::new("[l1,F] = F^2", &cat.sl2(1).commutator(&f), &f.mul(&f)),
    ]
}

/// `[FD, DF] = 0` and `[D, F] = q_R(1 − DF)(1 − FD)`.
pub fn verify_berezin<F: Weighted>(cat: &GeneratorCatalog<F>) -> Result<Vec<IdentityReport<F>>> {
    let q = cat.q_r()?;
    let (d, f) = (cat.d(), cat.f());
    let one = GradedOperator::identity();
    let df = d.mul(&f);
    let fd = f.mul(&d);
    let rhs = one.sub(&df).mul(&one.sub(&fd)).scale(&q);
    Ok(vec![
        IdentityReport::new("[FD,DF] = 0", &fd.commutator(&df), &GradedOperator::zero()),
        IdentityReport::new("[D,F] = q_R(1-DF)(1-FD)", &d.commutator(&f), &rhs),
    ])
}

/// `[l_i, V_n] = ((s − 1)i − n) V_{n+i}` for the spin-`s` family `V`.
pub fn verify_tensor_relation<F: Weighted>(
    cat: &GeneratorCatalog<F>,
    i: i64,
    n: i64,
    family: Family,
) -> Result<IdentityReport<F>> {
    if !(-1..=1).contains(&i) {
        return Err(Error::Precondition(format!("sl2 index {i} is not in {{-1, 0, 1}}")));
    }
    let coeff = (family.spin() - 1) * i - n;
    let lhs = cat.sl2(i).commutator(&cat.op(family, n));
    let rhs = cat.op(family, n + i).scale(&F::from_int(coeff));
    let name = format!("[l{i},{f}{n}] = {coeff}{f}{}", n + i, f = family.name());
    Ok(IdentityReport::new(name, &lhs, &rhs))
}

/// `[L_n, L_m] = (n − m)L_{n+m}` on the half-planes `n, m ≥ −1` or `n, m ≤ 1`.
pub fn verify_witt_halfplane<F: Weighted>(cat: &GeneratorCatalog<F>, n: i64, m: i64) -> Result<IdentityReport<F>> {
    if !((n >= -1 && m >= -1) || (n <= 1 && m <= 1)) {
        return Err(Error::Precondition(format!("({n}, {m}) lies outside both half-planes")));
    }
    let lhs = cat.l(n).commutator(&cat.l(m));
    let rhs = cat.l(n + m).scale(&F::from_int(n - m));
    Ok(IdentityReport::new(format!("[L{n},L{m}] = {}L{}", n - m, n + m), &lhs, &rhs))
}

/// `Σ a_k X^k` for an operator `X`.
fn poly_of_operator<F: Field>(p: &Poly<Scalar, U>, x: &GradedOperator<F>) -> GradedOperator<F> {
    let mut acc = GradedOperator::zero();
    let mut power = GradedOperator::identity();
    for c in p.coeffs() {
        acc = acc.add(&power.scale(&F::from_scalar(c)));
        power = power.mul(x);
    }
    acc
}

/// `[L_n, f(D)] = −D^{n+1} f′(D)` for `n ≥ −1`.
pub fn verify_fd_commutation<F: Weighted>(cat: &GeneratorCatalog<F>, n: i64, f: &Poly<Scalar, U>) -> Result<IdentityReport<F>> {
    if n < -1 {
        return Err(Error::Precondition(format!("n = {n} < -1")));
    }
    let d = cat.d();
    let lhs = cat.l(n).commutator(&poly_of_operator(f, &d));
    let rhs = d.pow((n + 1) as u32).mul(&poly_of_operator(&f.derivative(), &d)).neg();
    Ok(IdentityReport::new(format!("[L{n},f(D)] = -D^{}f'(D), f = {f}", n + 1), &lhs, &rhs))
}

/// `[L_{−n}, f(F)] = F^{n+1} f′(F)` for `n ≥ −1`.
pub fn verify_ff_commutation<F: Weighted>(cat: &GeneratorCatalog<F>, n: i64, f: &Poly<Scalar, U>) -> Result<IdentityReport<F>> {
    if n < -1 {
        return Err(Error::Precondition(format!("n = {n} < -1")));
    }
    let fo = cat.f();
    let lhs = cat.l(-n).commutator(&poly_of_operator(f, &fo));
    let rhs = fo.pow((n + 1) as u32).mul(&poly_of_operator(&f.derivative(), &fo));
    Ok(IdentityReport::new(format!("[L{},f(F)] = F^{}f'(F), f = {f}", -n, n + 1), &lhs, &rhs))
}

/// `[L_n, f(D)] = (−D)^{n+1} f′(D)`, the sign pattern that differs from
/// the verified identity when `n` is odd.
pub fn fd_commutation_alternating_sign<F: Weighted>(cat: &GeneratorCatalog<F>, n: i64, f: &Poly<Scalar, U>) -> IdentityReport<F> {
    let d = cat.d();
    let lhs = cat.l(n).commutator(&poly_of_operator(f, &d));
    let rhs = d.neg().pow((n + 1) as u32).mul(&poly_of_operator(&f.derivative(), &d));
    IdentityReport::new(format!("[L{n},f(D)] = (-D)^{}f'(D), f = {f}", n + 1), &lhs, &rhs)
}

/// `[L_i, L_j] − (i − j)L_{i+j}`.
pub fn witt_defect<F: Weighted>(cat: &GeneratorCatalog<F>, i: i64, j: i64) -> GradedOperator<F> {
    cat.l(i).commutator(&cat.l(j)).sub(&cat.l(i + j).scale(&F::from_int(i - j)))
}

/// `[J_i, J_j]`, measured against the zero bracket.
pub fn heisenberg_defect<F: Weighted>(cat: &GeneratorCatalog<F>, i: i64, j: i64) -> GradedOperator<F> {
    cat.j(i).commutator(&cat.j(j))
}

/// `[L_n, J_m] + m J_{n+m}`.
pub fn mixed_defect<F: Weighted>(cat: &GeneratorCatalog<F>, n: i64, m: i64) -> GradedOperator<F> {
    cat.l(n).commutator(&cat.j(m)).add(&cat.j(n + m).scale(&F::from_int(m)))
}

/// Coefficient and index of the nested Witt bracket
/// `[[…[e_{k₀}, e_{k₁}], …], e_{k_{m+1}}] = c·e_s`.
pub fn nested_witt(indices: &[i64]) -> (i64, i64) {
    let mut it = indices.iter();
    let Some(&first) = it.next() else {
        return (0, 0);
    };
    let mut coeff = 1i64;
    let mut s = first;
    for &k in it {
        coeff *= s - k;
        s += k;
    }
    (coeff, s)
}

/// `[[…[L_{k₀}, L_{k₁}], …], L_{k_{m+1}}]` minus `c·L_s` for the nested Witt
/// bracket `c·e_s` of the same indices.
pub fn iterated_defect<F: Weighted>(cat: &GeneratorCatalog<F>, indices: &[i64]) -> Result<GradedOperator<F>> {
    if indices.len() < 2 || indices.len() > 6 {
        return Err(Error::Precondition(format!("iterated defect needs 2..=6 indices, got {}", indices.len())));
    }
    let mut acc = cat.l(indices[0]);
    for &k in &indices[1..] {
        acc = acc.commutator(&cat.l(k));
    }
    let (c, s) = nested_witt(indices);
    Ok(acc.sub(&cat.l(s).scale(&F::from_int(c))))
}

/// Result of the uniqueness spot-check for `D`.
#[derive(Debug, Clone, PartialEq)]
pub struct UniquenessReport {
    /// Coefficients `a_0..a_3` of the polynomial symbol `σ(ξ) = Σ a_k ξ^k`.
    pub solution: Option<Vec<Scalar>>,
    pub unique: bool,
    pub is_xi: bool,
}

/// Solves for a degree-`+1` operator with polynomial symbol of degree `≤ 3`
/// such that `[X, l_{−1}] = 1` and `[X, l_0] = X`, and which kills `z^0`.
///
/// `[X, l_0] = X` holds for every degree-`+1` operator; `[X, l_{−1}] = 1`
/// reads `σ(ξ+1) − σ(ξ) = 1`; killing constants is `σ(0) = 0`.
pub fn uniqueness_of_d() -> UniquenessReport {
    const DEG: usize = 3;
    // Row r of σ(ξ+1) − σ(ξ): coefficient of ξ^r is Σ_k a_k [C(k, r) − δ_{kr}].
    let binom = |n: usize, k: usize| -> i64 { (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i as i64 + 1)) };
    let mut a = Vec::new();
    let mut b = Vec::new();
    for r in 0..=DEG {
        let row = (0..=DEG).map(|k| if k > r { Scalar::from_int(binom(k, r)) } else { Scalar::zero() }).collect();
        a.push(row);
        b.push(if r == 0 { Scalar::one() } else { Scalar::zero() });
    }
    let mut row0 = vec![Scalar::zero(); DEG + 1];
    row0[0] = Scalar::one();
    a.push(row0);
    b.push(Scalar::zero());

    let sol = solve(&a, &b);
    let xi = vec![Scalar::zero(), Scalar::one(), Scalar::zero(), Scalar::zero()];
    match sol {
        Solution::Inconsistent => UniquenessReport { solution: None, unique: false, is_xi: false },
        Solution::Solved { particular, nullity } => {
            let is_xi = particular == xi;
            UniquenessReport { solution: Some(particular), unique: nullity == 0, is_xi }
        }
    }
}

/// Symbolic catalog shared by the default verification runs.
pub fn shared_symbolic_catalog() -> &'static GeneratorCatalog<Qh> {
    static CAT: OnceLock<GeneratorCatalog<Qh>> = OnceLock::new();
    CAT.get_or_init(|| GeneratorCatalog::symbolic(10))
}
