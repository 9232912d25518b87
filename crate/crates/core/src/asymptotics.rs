//! Expansion of bracket defects in the weight offset `ħ = h − h₀`.
//!
//! The defect `[L_i, L_j] − (i − j)L_{i+j}` is evaluated at `h = h₀ + ħ` and
//! expanded in powers of `ħ` with coefficients in `Q(ξ)`. The reference
//! generator `L_{i+j}` is taken at the base weight `h₀`, so the order-`ħ`
//! coefficient carries the full weight derivative of the bracket. Taking
//! `ξ → ∞` on that coefficient gives the constant `κ`; taking `ξ → ∞` first on
//! the exact same-weight defect instead gives zero.

use serde_json::{json, Value};

use crate::arith::roots::rational_roots;
use crate::arith::series::{partial_sum_at, taylor_in_param};
use crate::arith::{format_scalar, int, Field, Poly, Qh, Qhbar, RatFunc, Scalar, Xi};
use crate::error::{Error, Result};
use crate::generators::{shared_symbolic_catalog, witt_defect, GeneratorCatalog};
use crate::symbol::{GradedOperator, Symbol};

/// Largest order accepted by [`higher_order_expansion`].
pub const MAX_ORDER: usize = 4;

/// Step `ħ₀ = 1/10⁴` for the finite-difference check.
pub const FD_HBAR: (i64, i64) = (1, 10_000);

/// Basis index for the finite-difference check.
pub const FD_INDEX: i64 = 50;

/// Relative error bound `10⁻³` for the finite-difference check.
pub const FD_TOLERANCE: (i64, i64) = (1, 1_000);

/// A symbol in ξ whose coefficients are rational functions of `ħ`.
pub type HbarSymbol = RatFunc<Qhbar, Xi>;

fn lift_weight(c: &Qh, h0: &Scalar) -> Result<Qhbar> {
    Ok(c.shift(h0).relabel())
}

/// Replaces `h` by `h₀ + ħ` in every symbol.
pub fn substitute_weight(x: &GradedOperator<Qh>, h0: &Scalar) -> GradedOperator<Qhbar> {
    x.try_map(|c| lift_weight(c, h0)).expect("substitution into Q(ħ) is total")
}

/// Replaces `h` by `h₀ + ħ` in a single symbol.
pub fn substitute_weight_symbol(s: &Symbol<Qh>, h0: &Scalar) -> HbarSymbol {
    s.try_map(|c| lift_weight(c, h0)).expect("substitution into Q(ħ) is total")
}

/// Taylor coefficients in `ħ` of every component of `x`, up to `order`.
pub fn expand_operator(x: &GradedOperator<Qhbar>, order: usize) -> Result<Vec<GradedOperator<Scalar>>> {
    let mut out = vec![GradedOperator::zero(); order + 1];
    for (d, s) in x.components() {
        for (k, c) in taylor_in_param(s, order)?.into_iter().enumerate() {
            out[k] = out[k].add(&GradedOperator::homogeneous(d, c));
        }
    }
    Ok(out)
}

/// `ξ`-poles of one expansion coefficient, per degree.
#[derive(Debug, Clone, PartialEq)]
pub struct PoleEntry {
    pub degree: i64,
    pub poles: Vec<Scalar>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionSeries {
    pub i: i64,
    pub j: i64,
    pub h0: Scalar,
    pub order: usize,
    pub reference: Reference,
    /// Coefficient operators of `ħ⁰, …, ħⁿ`.
    pub coefficients: Vec<GradedOperator<Scalar>>,
    /// Rational ξ-poles of each coefficient.
    pub pole_log: Vec<Vec<PoleEntry>>,
}

impl ExpansionSeries {
    fn new(i: i64, j: i64, h0: &Scalar, order: usize, reference: Reference, coefficients: Vec<GradedOperator<Scalar>>) -> Result<Self> {
        let pole_log = coefficients
            .iter()
            .map(|c| {
                c.components()
                    .map(|(d, s)| Ok(PoleEntry { degree: d, poles: rational_roots(s.den())? }))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ExpansionSeries { i, j, h0: h0.clone(), order, reference, coefficients, pole_log })
    }

    pub fn order_zero_empty(&self) -> bool {
        self.coefficients[0].is_zero()
    }

    pub fn all_empty(&self) -> bool {
        self.coefficients.iter().all(GradedOperator::is_zero)
    }

    pub fn is_logged_pole(&self, xi: &Scalar) -> bool {
        self.pole_log.iter().flatten().any(|e| e.poles.contains(xi))
    }

    /// `Σ_k ħ₀^k c_k` evaluated on the degree-`d` symbol at `ξ = xi`.
    pub fn partial_sum_at(&self, d: i64, hbar0: &Scalar, xi: &Scalar) -> Result<Scalar> {
        let coeffs: Vec<Symbol<Scalar>> = self.coefficients.iter().map(|c| c.symbol(d)).collect();
        partial_sum_at(&coeffs, hbar0, xi)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "i": self.i,
            "j": self.j,
            "h0": format_scalar(&self.h0),
            "order": self.order,
            "reference": self.reference.name(),
            "coefficients": self.coefficients.iter().map(GradedOperator::to_json).collect::<Vec<_>>(),
            "pole_log": self.pole_log.iter().map(|entries| {
                entries.iter().map(|e| json!({
                    "degree": e.degree,
                    "poles": e.poles.iter().map(format_scalar).collect::<Vec<_>>(),
                })).collect::<Vec<_>>()
            }).collect::<Vec<_>>(),
        })
    }
}

/// `[L_i, L_j](h₀ + ħ)` as an operator over `Q(ħ)`.
pub fn bracket_at_offset(i: i64, j: i64, h0: &Scalar) -> GradedOperator<Qhbar> {
    let cat = shared_symbolic_catalog();
    substitute_weight(&cat.l(i).commutator(&cat.l(j)), h0)
}

/// The same-weight defect `([L_i, L_j] − (i − j)L_{i+j})(h₀ + ħ)`.
pub fn same_weight_defect(i: i64, j: i64, h0: &Scalar) -> GradedOperator<Qhbar> {
    substitute_weight(&witt_defect(shared_symbolic_catalog(), i, j), h0)
}

/// Weight at which the reference generator `L_{i+j}` is taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Reference {
    /// `L_{i+j}(h₀)`: the bracket's full weight derivative survives at order `ħ`.
    BaseWeight,
    /// `L_{i+j}(h₀ + ħ)`: the defect is taken inside one module.
    SameWeight,
}

impl Reference {
    pub fn name(self) -> &'static str {
        match self {
            Reference::BaseWeight => "base-weight",
            Reference::SameWeight => "same-weight",
        }
    }
}

/// Expansion of the `(i, j)` defect at `h₀ + ħ` through `ħ^order`.
pub fn expand_defect(i: i64, j: i64, h0: &Scalar, order: usize, reference: Reference) -> Result<ExpansionSeries> {
    let coeffs = match reference {
        Reference::SameWeight => expand_operator(&same_weight_defect(i, j, h0), order)?,
        Reference::BaseWeight => {
            let mut coeffs = expand_operator(&bracket_at_offset(i, j, h0), order)?;
            let cat = shared_symbolic_catalog();
            let l = expand_operator(&substitute_weight(&cat.l(i + j), h0), 0)?;
            coeffs[0] = coeffs[0].sub(&l[0].scale(&Scalar::from_int(i - j)));
            coeffs
        }
    };
    ExpansionSeries::new(i, j, h0, order, reference, coeffs)
}

/// [`expand_defect`] for orders up to [`MAX_ORDER`].
pub fn higher_order_expansion(i: i64, j: i64, h0: &Scalar, order: usize, reference: Reference) -> Result<ExpansionSeries> {
    if order > MAX_ORDER {
        return Err(Error::Precondition(format!("expansion order {order} exceeds {MAX_ORDER}")));
    }
    expand_defect(i, j, h0, order, reference)
}

/// `κ`, its residual and the implied central charge for the pair `(i, −i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CentralReport {
    pub i: i64,
    pub h0: Scalar,
    /// Order-`ħ` diagonal symbol `g₁(ξ)`.
    pub g1: Symbol<Scalar>,
    /// `lim_{ξ→∞} g₁`.
    pub kappa: Scalar,
    /// `g₁ − κ` has numerator degree strictly below its denominator degree.
    pub hs_residual: bool,
    /// `(2/3)(i³ − i)`.
    pub predicted: Scalar,
    pub matches: bool,
    /// Coefficient `c` in the central charge `c·ħ`.
    pub central_charge: Scalar,
}

impl CentralReport {
    pub fn to_json(&self) -> Value {
        json!({
            "i": self.i,
            "h0": format_scalar(&self.h0),
            "g1": self.g1.to_json(),
            "g1_display": self.g1.to_string(),
            "kappa": format_scalar(&self.kappa),
            "hs_residual": self.hs_residual,
            "predicted_kappa": format_scalar(&self.predicted),
            "matches_prediction": self.matches,
            "central_charge": format_linear(&self.central_charge),
        })
    }
}

/// Renders `c·ħ`.
pub fn format_linear(c: &Scalar) -> String {
    if c.is_zero() {
        "0".into()
    } else if c.is_one() {
        "ħ".into()
    } else if c.is_integer() {
        format!("{c}ħ")
    } else {
        format!("({})ħ", format_scalar(c))
    }
}

fn cubic(i: i64) -> i64 {
    i * i * i - i
}

fn require_index(i: i64) -> Result<()> {
    if i < 2 {
        return Err(Error::Precondition(format!("index must be at least 2, got {i}")));
    }
    Ok(())
}

pub fn central_coefficient(i: i64, h0: &Scalar) -> Result<CentralReport> {
    require_index(i)?;
    let series = expand_defect(i, -i, h0, 1, Reference::BaseWeight)?;
    let g1 = series.coefficients[1].symbol(0);
    let kappa = g1.limit_at_infinity()?;
    let residual = g1.sub(&Symbol::constant(kappa.clone()));
    let predicted = Scalar::new((2 * cubic(i)).into(), 3.into());
    let central_charge = kappa.mul(&int(12)).div(&int(cubic(i)))?;
    Ok(CentralReport {
        i,
        h0: h0.clone(),
        hs_residual: residual.is_proper(),
        matches: kappa == predicted,
        g1,
        kappa,
        predicted,
        central_charge,
    })
}

/// `c(ħ) = 12κħ/(i³ − i)`, returned as the coefficient of `ħ`.
pub fn central_charge(i: i64, h0: &Scalar) -> Result<Scalar> {
    if cubic(i) == 0 {
        return Err(Error::Precondition(format!("i³ − i vanishes at i = {i}")));
    }
    Ok(central_coefficient(i, h0)?.central_charge)
}

/// `lim_{ξ→∞}` of the exact same-weight diagonal defect, as a function of `ħ`.
pub fn order_swap_experiment(i: i64, h0: &Scalar) -> Result<Qhbar> {
    require_index(i)?;
    same_weight_defect(i, -i, h0).symbol(0).limit_at_infinity()
}

#[derive(Debug, Clone, PartialEq)]
pub struct FiniteDifferenceReport {
    pub i: i64,
    pub h0: Scalar,
    pub hbar0: Scalar,
    pub n: i64,
    /// Diagonal entry of `[L_i, L_{−i}](h₀ + ħ₀) − 2i·L_0(h₀)` at `z^n`.
    pub exact: Scalar,
    /// `ħ₀·g₁(n)`.
    pub predicted: Scalar,
    pub relative_error: Scalar,
    pub relative_error_approx: f64,
    pub passed: bool,
}

impl FiniteDifferenceReport {
    pub fn to_json(&self) -> Value {
        json!({
            "i": self.i,
            "h0": format_scalar(&self.h0),
            "hbar0": format_scalar(&self.hbar0),
            "n": self.n,
            "exact": format_scalar(&self.exact),
            "predicted": format_scalar(&self.predicted),
            "relative_error": format_scalar(&self.relative_error),
            "relative_error_approx": self.relative_error_approx,
            "passed": self.passed,
        })
    }
}

/// Compares the exact diagonal entry at a small concrete offset with the
/// first-order prediction.
pub fn finite_difference_check(i: i64, h0: &Scalar, hbar0: &Scalar, n: i64) -> Result<FiniteDifferenceReport> {
    use num::{Signed, ToPrimitive};
    let report = central_coefficient(i, h0)?;
    let cat = GeneratorCatalog::at_weight(&h0.add(hbar0), i)?;
    let bracket = cat.l(i).commutator(&cat.l(-i)).eval_symbol_at(0, n)?;
    let base = int(n).add(h0).mul(&int(2 * i));
    let exact = bracket.sub(&base);
    let predicted = hbar0.mul(&report.g1.eval(&int(n))?);
    let relative_error = exact.sub(&predicted).abs().div(&exact.abs())?;
    let tolerance = Scalar::new(FD_TOLERANCE.0.into(), FD_TOLERANCE.1.into());
    Ok(FiniteDifferenceReport {
        i,
        h0: h0.clone(),
        hbar0: hbar0.clone(),
        n,
        exact,
        predicted,
        relative_error_approx: relative_error.to_f64().unwrap_or(f64::NAN),
        passed: relative_error <= tolerance,
        relative_error,
    })
}

/// The mod-`O(ħ²)` form of `[L_2, L_{−2}]` with `ħ` kept in the denominators.
#[derive(Debug, Clone, PartialEq)]
pub struct RetainedDenominatorForm {
    pub h0: Scalar,
    /// The exact diagonal symbol written through its factored form.
    pub exact: HbarSymbol,
    /// The product form agreeing with `exact` modulo `ħ²`.
    pub mod_hbar2: HbarSymbol,
    /// The order-one constant `4(ξ + h₀)`.
    pub leading: HbarSymbol,
    /// The extracted order-`ħ` part, `ħ` retained in the denominators.
    pub order_one: HbarSymbol,
}

/// `ξ + a + bħ`.
fn xi_plus(a: Scalar, b: i64) -> HbarSymbol {
    let c = Qhbar::from_poly(Poly::from_coeffs(vec![a, int(b)]));
    RatFunc::from_poly(Poly::linear(c))
}

fn hbar_const(c: i64) -> HbarSymbol {
    RatFunc::constant(Qhbar::from_poly(Poly::monomial(int(c), 1)))
}

fn sym_int(c: i64) -> HbarSymbol {
    RatFunc::constant(Qhbar::from_int(c))
}

/// `1 + c·ħ/(ξ + a + ħ)`.
fn correction(c: i64, a: Scalar) -> HbarSymbol {
    sym_int(1).add(&hbar_const(c).mul(&xi_plus(a, 1).inv().expect("nonzero")))
}

/// Builds the factored forms of `[L_2, L_{−2}]` near `h₀ ∈ {1/2, 1}`.
pub fn retained_denominator_form(h0: &Scalar) -> Result<RetainedDenominatorForm> {
    let q = |n: i64, d: i64| Scalar::new(n.into(), d.into());
    let inv = |s: HbarSymbol| s.inv().expect("nonzero");
    let xi = |a: i64| xi_plus(int(a), 0);
    let leading = xi_plus(h0.clone(), 0).mul(&sym_int(4));
    if *h0 == q(1, 2) {
        let exact = xi_plus(q(3, 2), 3)
            .pow(2)
            .mul(&xi(1))
            .mul(&xi(2))
            .mul(&inv(xi_plus(int(1), 2).mul(&xi_plus(int(2), 2))))
            .sub(&xi_plus(q(-1, 2), 3).pow(2).mul(&xi(0)).mul(&xi(-1)).mul(&inv(xi_plus(int(-1), 2).mul(&xi_plus(int(0), 2)))));
        let mod_hbar2 = xi_plus(q(3, 2), 3)
            .pow(2)
            .mul(&correction(-2, int(1)))
            .mul(&correction(-2, int(2)))
            .sub(&xi_plus(q(-1, 2), 3).pow(2).mul(&correction(-2, int(-1))).mul(&correction(-2, int(0))));
        let recip = |a: i64| inv(xi_plus(int(a), 1));
        let order_one = hbar_const(2)
            .mul(&xi_plus(q(-1, 2), 0).pow(2))
            .mul(&recip(-1).add(&recip(0)))
            .sub(&hbar_const(2).mul(&xi_plus(q(3, 2), 0).pow(2)).mul(&recip(1).add(&recip(2))))
            .add(&hbar_const(12));
        Ok(RetainedDenominatorForm { h0: h0.clone(), exact, mod_hbar2, leading, order_one })
    } else if *h0 == int(1) {
        let exact = xi_plus(int(3), 3)
            .pow(2)
            .mul(&xi(1))
            .mul(&xi(2))
            .mul(&inv(xi_plus(int(2), 2).mul(&xi_plus(int(3), 2))))
            .sub(&xi_plus(int(1), 3).pow(2).mul(&xi(0)).mul(&xi(-1)).mul(&inv(xi_plus(int(0), 2).mul(&xi_plus(int(1), 2)))));
        let mod_hbar2 = xi(1)
            .mul(&xi_plus(int(3), 3))
            .mul(&correction(-2, int(2)))
            .mul(&correction(-2, int(3)))
            .mul(&correction(3, int(3)))
            .sub(&xi(-1).mul(&xi_plus(int(1), 3)).mul(&correction(-2, int(0))).mul(&correction(-2, int(1))).mul(&correction(3, int(1))));
        let recip = |a: i64| inv(xi_plus(int(a), 1));
        let order_one = hbar_const(1)
            .mul(&xi(1))
            .mul(&xi(3))
            .mul(&recip(3).sub(&recip(2).mul(&sym_int(2))))
            .sub(&hbar_const(1).mul(&xi(1)).mul(&xi(-1)).mul(&recip(1).sub(&recip(0).mul(&sym_int(2)))))
            .add(&hbar_const(6));
        Ok(RetainedDenominatorForm { h0: h0.clone(), exact, mod_hbar2, leading, order_one })
    } else {
        Err(Error::Precondition(format!("retained-denominator form is tabulated for h0 = 1/2 and 1, got {h0}")))
    }
}

/// `a ≡ b mod ħ^k` as functions over `Q(ξ)`.
pub fn agree_mod_hbar_power(a: &HbarSymbol, b: &HbarSymbol, k: usize) -> Result<bool> {
    if k == 0 {
        return Ok(true);
    }
    Ok(taylor_in_param(&a.sub(b), k - 1)?.iter().all(RatFunc::is_zero))
}

/// Combined expansion, central and order-swap report for `(i, −i)`.
pub fn asymptotic_report(i: i64, h0: &Scalar, order: usize) -> Result<Value> {
    let series = higher_order_expansion(i, -i, h0, order, Reference::BaseWeight)?;
    let central = central_coefficient(i, h0)?;
    let swap = order_swap_experiment(i, h0)?;
    Ok(json!({
        "i": i,
        "j": -i,
        "h0": format_scalar(h0),
        "order": order,
        "coefficients": series.coefficients.iter().map(GradedOperator::to_json).collect::<Vec<_>>(),
        "kappa": format_scalar(&central.kappa),
        "central_charge": format_linear(&central.central_charge),
        "order_swap": swap.to_string(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use num::{Signed, ToPrimitive};

    fn half() -> Scalar {
        rat(1, 2)
    }

    #[test]
    fn substitution_examples() {
        let cat = shared_symbolic_catalog();
        let l_minus2 = substitute_weight(&cat.l(-2), &half()).symbol(-2);
        let expected = xi_plus(rat(3, 2), 3).div(&xi_plus(int(1), 2).mul(&xi_plus(int(2), 2))).unwrap();
        assert_eq!(l_minus2, expected);
        let l0 = substitute_weight(&cat.l(0), &int(1)).symbol(0);
        assert_eq!(l0, xi_plus(int(1), 1));
        let q_r = cat.q_r().unwrap();
        let hbar = Qhbar::from_poly(Poly::monomial(int(2), 1));
        assert_eq!(lift_weight(&q_r, &half()).unwrap(), hbar.inv().unwrap());
    }

    #[test]
    fn spec_g1_at_half() {
        let r = central_coefficient(2, &half()).unwrap();
        let x = |a: Scalar| Symbol::<Scalar>::from_poly(Poly::linear(a));
        let rec = |a: i64| x(int(a)).inv().unwrap();
        let g1 = x(rat(-1, 2))
            .pow(2)
            .mul(&rec(-1).add(&rec(0)))
            .scale(&int(2))
            .sub(&x(rat(3, 2)).pow(2).mul(&rec(1).add(&rec(2))).scale(&int(2)))
            .add(&Symbol::constant(int(12)));
        assert_eq!(r.g1, g1);
        assert_eq!(r.kappa, int(4));
        assert!(r.hs_residual);
        assert_eq!(r.central_charge, int(8));
        assert_eq!(format_linear(&r.central_charge), "8ħ");
    }

    #[test]
    fn sl2_pair_expands_to_nothing() {
        for h0 in [half(), int(1), rat(3, 4)] {
            assert!(expand_defect(1, -1, &h0, 3, Reference::SameWeight).unwrap().all_empty());
            let base = expand_defect(1, -1, &h0, 3, Reference::BaseWeight).unwrap();
            assert!(base.order_zero_empty());
            assert_eq!(base.coefficients[1], GradedOperator::diagonal(Symbol::constant(int(2))));
        }
        assert!(higher_order_expansion(1, -1, &half(), 4, Reference::SameWeight).unwrap().all_empty());
        assert!(central_charge(1, &half()).is_err());
        assert!(central_coefficient(1, &half()).is_err());
    }

    #[test]
    fn order_swap_vanishes() {
        for h0 in [half(), int(1)] {
            assert!(order_swap_experiment(2, &h0).unwrap().is_zero());
        }
        assert!(order_swap_experiment(3, &half()).unwrap().is_zero());
    }

    #[test]
    fn resubstitution_error_is_higher_order() {
        let series = higher_order_expansion(2, -2, &half(), 3, Reference::BaseWeight).unwrap();
        assert_eq!(series.coefficients.len(), 4);
        assert!(series.order_zero_empty());
        let exact = bracket_at_offset(2, -2, &half()).symbol(0);
        let reference = int(4);
        let n = int(7);
        assert!(!series.is_logged_pole(&n));
        let mut prev = None;
        for k in [100, 1000, 10_000] {
            let hb = rat(1, k);
            let e = exact.try_map(|c| c.eval(&hb)).unwrap().eval(&n).unwrap();
            let e = e.sub(&n.add(&half()).mul(&reference));
            let err = e.sub(&series.partial_sum_at(0, &hb, &n).unwrap()).abs();
            let scaled = err.div(&hb.pow(4)).unwrap();
            if let Some(p) = prev {
                let p: Scalar = p;
                let ratio = scaled.div(&p).unwrap().to_f64().unwrap();
                assert!((0.5..2.0).contains(&ratio), "ratio {ratio}");
            }
            prev = Some(scaled);
        }
        assert!(higher_order_expansion(2, -2, &half(), 5, Reference::BaseWeight).is_err());
        let at_one = higher_order_expansion(2, -2, &int(1), 2, Reference::BaseWeight).unwrap();
        assert_eq!(at_one.coefficients.len(), 3);
        assert!(at_one.order_zero_empty());
        assert_eq!(at_one.coefficients[1].symbol(0).limit_at_infinity().unwrap(), int(4));
    }

    #[test]
    fn retained_denominator_golden() {
        for h0 in [half(), int(1)] {
            let f = retained_denominator_form(&h0).unwrap();
            assert_eq!(f.exact, bracket_at_offset(2, -2, &h0).symbol(0));
            assert!(agree_mod_hbar_power(&f.exact, &f.mod_hbar2, 2).unwrap());
            assert!(agree_mod_hbar_power(&f.mod_hbar2, &f.leading.add(&f.order_one), 2).unwrap());
            let limit = f.order_one.limit_at_infinity().unwrap();
            assert_eq!(limit, Qhbar::from_poly(Poly::monomial(int(4), 1)));
        }
        assert!(retained_denominator_form(&rat(3, 4)).is_err());
    }

    #[test]
    fn finite_difference_agrees() {
        let r = finite_difference_check(2, &half(), &rat(FD_HBAR.0, FD_HBAR.1), FD_INDEX).unwrap();
        assert!(r.passed, "relative error {}", r.relative_error_approx);
        assert!(r.exact.is_positive() == r.predicted.is_positive());
    }

    #[test]
    fn order_zero_vanishes_on_grid() {
        for h0 in [half(), int(1)] {
            for i in -4..=4 {
                for j in -4..=4 {
                    let s = expand_defect(i, j, &h0, 1, Reference::BaseWeight).unwrap();
                    assert!(s.order_zero_empty(), "({i},{j}) at {h0}");
                }
            }
        }
    }

    #[test]
    fn report_is_stable() {
        let a = asymptotic_report(2, &half(), 1).unwrap();
        assert_eq!(a["kappa"], "4");
        assert_eq!(a["central_charge"], "8ħ");
        assert_eq!(a["order_swap"], "0");
        assert_eq!(a, asymptotic_report(2, &half(), 1).unwrap());
    }
}
