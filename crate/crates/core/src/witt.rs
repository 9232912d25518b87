//! Witt and Virasoro structure constants, trigonometric vector fields on the
//! circle and the Gelfand–Fuchs cocycle.
//!
//! A trigonometric field `v(t)∂_t` is stored by the Fourier coefficients of
//! `v(t) = Σ a_m e^{imt}` over the Gaussian rationals. Integrals over the
//! circle are exact because `∫₀^{2π} e^{imt} dt = 2π·δ_{m,0}`; cocycle values
//! are reported as coefficients of `π`.

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num::{Complex, One, Signed, Zero};
use serde_json::{json, Value};

use crate::arith::{format_scalar, int, rat, Scalar};
use crate::error::{Error, Result};

/// `a + bi` with rational `a, b`.
pub type GaussRat = Complex<Scalar>;

/// Scalars admitted as Witt coefficients.
pub trait Coefficient:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_scalar(q: Scalar) -> Self;

    fn text(&self) -> String;

    fn from_i64(n: i64) -> Self {
        Self::from_scalar(int(n))
    }
}

impl Coefficient for Scalar {
    fn from_scalar(q: Scalar) -> Self {
        q
    }

    fn text(&self) -> String {
        format_scalar(self)
    }
}

impl Coefficient for GaussRat {
    fn from_scalar(q: Scalar) -> Self {
        Complex::new(q, Scalar::zero())
    }

    fn text(&self) -> String {
        format_gauss(self)
    }
}

/// `i`.
pub fn imag_unit() -> GaussRat {
    Complex::new(Scalar::zero(), Scalar::one())
}

pub fn gauss(re: Scalar, im: Scalar) -> GaussRat {
    Complex::new(re, im)
}

pub fn format_gauss(z: &GaussRat) -> String {
    match (z.re.is_zero(), z.im.is_zero()) {
        (_, true) => format_scalar(&z.re),
        (true, false) => format!("{}i", format_scalar(&z.im)),
        (false, false) => {
            let sign = if z.im.is_negative() { "-" } else { "+" };
            format!("{}{sign}{}i", format_scalar(&z.re), format_scalar(&z.im.abs()))
        }
    }
}

fn add_term<S: Coefficient>(map: &mut BTreeMap<i64, S>, k: i64, c: S) {
    if c.is_zero() {
        return;
    }
    let sum = match map.remove(&k) {
        Some(prev) => prev + c,
        None => c,
    };
    if !sum.is_zero() {
        map.insert(k, sum);
    }
}

/// A finite combination `Σ x_k e_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct WittElement<S> {
    coeffs: BTreeMap<i64, S>,
}

impl<S: Coefficient> Default for WittElement<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Coefficient> WittElement<S> {
    pub fn zero() -> Self {
        WittElement { coeffs: BTreeMap::new() }
    }

    /// `e_k`.
    pub fn basis(k: i64) -> Self {
        Self::from_terms([(k, S::one())])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, S)>) -> Self {
        let mut coeffs = BTreeMap::new();
        for (k, c) in terms {
            add_term(&mut coeffs, k, c);
        }
        WittElement { coeffs }
    }

    pub fn coeff(&self, k: i64) -> S {
        self.coeffs.get(&k).cloned().unwrap_or_else(S::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &S)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self::from_terms(self.terms().chain(rhs.terms()).map(|(k, c)| (k, c.clone())))
    }

    pub fn neg(&self) -> Self {
        Self::from_terms(self.terms().map(|(k, c)| (k, -c.clone())))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, s: &S) -> Self {
        Self::from_terms(self.terms().map(|(k, c)| (k, c.clone() * s.clone())))
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.terms().map(|(k, c)| json!({ "index": k, "coeff": c.text() })).collect())
    }
}

/// `[e_j, e_k] = (j − k)e_{j+k}`, extended bilinearly.
pub fn witt_bracket<S: Coefficient>(x: &WittElement<S>, y: &WittElement<S>) -> WittElement<S> {
    let mut out = BTreeMap::new();
    for (j, a) in x.terms() {
        for (k, b) in y.terms() {
            add_term(&mut out, j + k, S::from_i64(j - k) * a.clone() * b.clone());
        }
    }
    WittElement { coeffs: out }
}

/// `Σ_j (j³ − j)/12 · x_j y_{−j}`.
pub fn virasoro_cocycle<S: Coefficient>(x: &WittElement<S>, y: &WittElement<S>) -> S {
    let mut acc = S::zero();
    for (j, a) in x.terms() {
        let b = y.coeff(-j);
        if !b.is_zero() {
            acc = acc + S::from_scalar(rat(j * j * j - j, 12)) * a.clone() * b;
        }
    }
    acc
}

#[derive(Debug, Clone, PartialEq)]
pub struct VirasoroElement<S> {
    pub witt: WittElement<S>,
    /// Coefficient of the central element `c`.
    pub central: S,
}

impl<S: Coefficient> VirasoroElement<S> {
    pub fn new(witt: WittElement<S>, central: S) -> Self {
        VirasoroElement { witt, central }
    }

    pub fn basis(k: i64) -> Self {
        Self::new(WittElement::basis(k), S::zero())
    }

    pub fn central_unit() -> Self {
        Self::new(WittElement::zero(), S::one())
    }

    pub fn is_zero(&self) -> bool {
        self.witt.is_zero() && self.central.is_zero()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self::new(self.witt.add(&rhs.witt), self.central.clone() + rhs.central.clone())
    }

    pub fn to_json(&self) -> Value {
        json!({ "witt": self.witt.to_json(), "central": self.central.text() })
    }
}

/// `[e_j, e_k] = (j − k)e_{j+k} + (j³ − j)/12·δ_{j+k,0}·c`.
pub fn virasoro_bracket<S: Coefficient>(x: &VirasoroElement<S>, y: &VirasoroElement<S>) -> VirasoroElement<S> {
    VirasoroElement::new(witt_bracket(&x.witt, &y.witt), virasoro_cocycle(&x.witt, &y.witt))
}

/// A trigonometric polynomial field `v(t)∂_t` with `v = Σ a_m e^{imt}`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TrigField {
    coeffs: BTreeMap<i64, GaussRat>,
}

impl TrigField {
    pub fn zero() -> Self {
        TrigField { coeffs: BTreeMap::new() }
    }

    pub fn from_fourier(terms: impl IntoIterator<Item = (i64, GaussRat)>) -> Self {
        let mut coeffs = BTreeMap::new();
        for (m, a) in terms {
            add_term(&mut coeffs, m, a);
        }
        TrigField { coeffs }
    }

    /// `e^{imt}∂_t`.
    pub fn exp(m: i64) -> Self {
        Self::from_fourier([(m, GaussRat::one())])
    }

    /// `h = ∂_t`.
    pub fn h() -> Self {
        Self::exp(0)
    }

    /// `s_n = sin(nt)∂_t`.
    pub fn sin(n: i64) -> Self {
        let half_i = gauss(Scalar::zero(), rat(1, 2));
        Self::from_fourier([(n, -half_i.clone()), (-n, half_i)])
    }

    /// `c_n = cos(nt)∂_t`.
    pub fn cos(n: i64) -> Self {
        let half = GaussRat::from_scalar(rat(1, 2));
        Self::from_fourier([(n, half.clone()), (-n, half)])
    }

    /// The image of `Σ x_n e_n` under `e_n = i·e^{int}∂_t`.
    pub fn from_witt(x: &WittElement<GaussRat>) -> Self {
        Self::from_fourier(x.terms().map(|(n, c)| (n, c.clone() * imag_unit())))
    }

    /// Inverse of [`TrigField::from_witt`].
    pub fn to_witt(&self) -> WittElement<GaussRat> {
        WittElement::from_terms(self.fourier().map(|(n, a)| (n, -(a.clone() * imag_unit()))))
    }

    pub fn fourier(&self) -> impl Iterator<Item = (i64, &GaussRat)> {
        self.coeffs.iter().map(|(m, a)| (*m, a))
    }

    pub fn coeff(&self, m: i64) -> GaussRat {
        self.coeffs.get(&m).cloned().unwrap_or_else(GaussRat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self::from_fourier(self.fourier().chain(rhs.fourier()).map(|(m, a)| (m, a.clone())))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.scale(&-GaussRat::one()))
    }

    pub fn scale(&self, s: &GaussRat) -> Self {
        Self::from_fourier(self.fourier().map(|(m, a)| (m, a.clone() * s.clone())))
    }

    /// `v′`.
    pub fn derivative(&self) -> Self {
        Self::from_fourier(self.fourier().map(|(m, a)| (m, a.clone() * gauss(Scalar::zero(), int(m)))))
    }

    /// Pointwise product of the coefficient functions.
    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = BTreeMap::new();
        for (m, a) in self.fourier() {
            for (k, b) in rhs.fourier() {
                add_term(&mut out, m + k, a.clone() * b.clone());
            }
        }
        TrigField { coeffs: out }
    }

    /// `(1/2π)∫₀^{2π} v dt`.
    pub fn mean(&self) -> GaussRat {
        self.coeff(0)
    }

    /// `a_{−m} = conj(a_m)` for every `m`.
    pub fn is_real(&self) -> bool {
        self.fourier().all(|(m, a)| self.coeff(-m) == a.conj())
    }

    /// Coordinates in the real basis `h, s_n, c_n`, or `None` when the field
    /// is not real.
    pub fn real_coords(&self) -> Option<RealVector> {
        if !self.is_real() {
            return None;
        }
        let mut v = RealVector::zero();
        v.h = self.coeff(0).re;
        for (&m, a) in self.coeffs.range(1..) {
            let b = self.coeff(-m);
            // A_m = a_m + a_{−m}, B_m = i(a_m − a_{−m})
            let c = a.clone() + b.clone();
            let s = (a.clone() - b) * imag_unit();
            v.add_c(m, c.re);
            v.add_s(m, s.re);
        }
        Some(v)
    }
}

/// `[v₁∂_t, v₂∂_t] = (v₁v₂′ − v₁′v₂)∂_t`.
pub fn trig_bracket(v1: &TrigField, v2: &TrigField) -> TrigField {
    v1.mul(&v2.derivative()).sub(&v1.derivative().mul(v2))
}

/// `∫₀^{2π}(v₁′v₂″ − v₂′v₁″)dt` as a coefficient of `π`.
pub fn gelfand_fuchs(v1: &TrigField, v2: &TrigField) -> GaussRat {
    let d1 = v1.derivative();
    let d2 = v2.derivative();
    let integrand = d1.mul(&d2.derivative()).sub(&d2.mul(&d1.derivative()));
    integrand.mean() * GaussRat::from_i64(2)
}

/// [`gelfand_fuchs`] on Witt elements through `e_n = i·e^{int}∂_t`.
pub fn gelfand_fuchs_witt(x: &WittElement<GaussRat>, y: &WittElement<GaussRat>) -> GaussRat {
    gelfand_fuchs(&TrigField::from_witt(x), &TrigField::from_witt(y))
}

/// `c([v₁,v₂],v₃) + c([v₂,v₃],v₁) + c([v₃,v₁],v₂)`.
pub fn cocycle_identity_check(v1: &TrigField, v2: &TrigField, v3: &TrigField) -> GaussRat {
    gelfand_fuchs(&trig_bracket(v1, v2), v3)
        + gelfand_fuchs(&trig_bracket(v2, v3), v1)
        + gelfand_fuchs(&trig_bracket(v3, v1), v2)
}

/// Constants with `λ·c(e_j, e_k) + μ·φ([e_j, e_k]) = (j³ − j)/12·δ_{j+k,0}`,
/// where `φ` reads off the `e_0` coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct Normalization {
    /// `c(e_j, e_{−j}) = α j³ + β j`.
    pub alpha: GaussRat,
    pub beta: GaussRat,
    pub lambda: GaussRat,
    pub mu: GaussRat,
}

impl Normalization {
    /// `λ·c_raw(e_j, e_{−j}) + 2jμ` for `j = 1..=j_max`.
    pub fn reproduce(&self, c_raw: impl Fn(i64, i64) -> GaussRat, j_max: i64) -> Vec<(i64, GaussRat)> {
        (1..=j_max)
            .map(|j| (j, self.lambda.clone() * c_raw(j, -j) + self.mu.clone() * GaussRat::from_i64(2 * j)))
            .collect()
    }

    /// Whether [`Normalization::reproduce`] gives `(j³ − j)/12` for every `j`.
    pub fn verify(&self, c_raw: impl Fn(i64, i64) -> GaussRat, j_max: i64) -> bool {
        self.reproduce(c_raw, j_max)
            .into_iter()
            .all(|(j, v)| v == GaussRat::from_scalar(rat(j * j * j - j, 12)))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "alpha": format_gauss(&self.alpha),
            "beta": format_gauss(&self.beta),
            "lambda": format_gauss(&self.lambda),
            "mu": format_gauss(&self.mu),
        })
    }
}

/// Solves for `(λ, μ)` after checking that `c_raw` is supported on `j + k = 0`
/// with `c_raw(e_j, e_{−j}) = α j³ + β j` for `|j|, |k| ≤ probe`.
pub fn normalize_to_virasoro(c_raw: impl Fn(i64, i64) -> GaussRat, probe: i64) -> Result<Normalization> {
    let probe = probe.max(2);
    let c1 = c_raw(1, -1);
    let c2 = c_raw(2, -2);
    // α + β = c1, 8α + 2β = c2
    let sixth = GaussRat::from_scalar(rat(1, 6));
    let alpha = (c2 - c1.clone() * GaussRat::from_i64(2)) * sixth;
    let beta = c1 - alpha.clone();
    for j in -probe..=probe {
        for k in -probe..=probe {
            let expected = if j + k == 0 {
                alpha.clone() * GaussRat::from_i64(j * j * j) + beta.clone() * GaussRat::from_i64(j)
            } else {
                GaussRat::zero()
            };
            if c_raw(j, k) != expected {
                return Err(Error::NotCubicCocycle(format!(
                    "c(e_{j}, e_{k}) = {}, expected {}",
                    format_gauss(&c_raw(j, k)),
                    format_gauss(&expected)
                )));
            }
        }
    }
    if alpha.is_zero() {
        return Err(Error::TrivialClass);
    }
    let lambda = (alpha.clone() * GaussRat::from_i64(12)).inv();
    // λβ + 2μ = −1/12
    let mu = (GaussRat::from_scalar(rat(-1, 12)) - lambda.clone() * beta.clone()) * GaussRat::from_scalar(rat(1, 2));
    Ok(Normalization { alpha, beta, lambda, mu })
}

/// Coordinates in the real basis `h, s_n, c_n` (`n ≥ 1`).
#[derive(Debug, Clone, PartialEq)]
pub struct RealVector {
    pub h: Scalar,
    pub s: BTreeMap<i64, Scalar>,
    pub c: BTreeMap<i64, Scalar>,
}

impl RealVector {
    pub fn zero() -> Self {
        RealVector { h: Scalar::zero(), s: BTreeMap::new(), c: BTreeMap::new() }
    }

    fn add_into(map: &mut BTreeMap<i64, Scalar>, n: i64, v: Scalar) {
        let t = map.remove(&n).unwrap_or_else(Scalar::zero) + v;
        if !t.is_zero() {
            map.insert(n, t);
        }
    }

    pub fn add_s(&mut self, n: i64, v: Scalar) {
        Self::add_into(&mut self.s, n, v);
    }

    pub fn add_c(&mut self, n: i64, v: Scalar) {
        Self::add_into(&mut self.c, n, v);
    }

    pub fn to_json(&self) -> Value {
        let side = |m: &BTreeMap<i64, Scalar>| -> Value {
            Value::Array(m.iter().map(|(n, v)| json!({ "n": n, "coeff": format_scalar(v) })).collect())
        };
        json!({ "h": format_scalar(&self.h), "s": side(&self.s), "c": side(&self.c) })
    }
}

impl std::fmt::Display for RealVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        if !self.h.is_zero() {
            parts.push(format!("{}·h", format_scalar(&self.h)));
        }
        parts.extend(self.s.iter().map(|(n, v)| format!("{}·s{n}", format_scalar(v))));
        parts.extend(self.c.iter().map(|(n, v)| format!("{}·c{n}", format_scalar(v))));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Reading of the symbol `c_0` in the tabulated real-basis brackets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum C0Convention {
    /// `c_0 = 0`.
    Zero,
    /// `c_0 = cos(0·t)∂_t = h`.
    H,
}

impl C0Convention {
    pub fn name(self) -> &'static str {
        match self {
            C0Convention::Zero => "c0=0",
            C0Convention::H => "c0=h",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RealBasis {
    H,
    S(i64),
    C(i64),
}

impl RealBasis {
    pub fn field(self) -> TrigField {
        match self {
            RealBasis::H => TrigField::h(),
            RealBasis::S(n) => TrigField::sin(n),
            RealBasis::C(n) => TrigField::cos(n),
        }
    }

    pub fn label(self) -> String {
        match self {
            RealBasis::H => "h".into(),
            RealBasis::S(n) => format!("s{n}"),
            RealBasis::C(n) => format!("c{n}"),
        }
    }
}

fn sgn(x: i64) -> i64 {
    x.signum()
}

/// The tabulated real-basis brackets, with `s_0 = 0` and `c_0` read per `convention`.
pub fn tabulated_bracket(a: RealBasis, b: RealBasis, convention: C0Convention) -> RealVector {
    let mut v = RealVector::zero();
    let half = |k: i64| rat(k, 2);
    let put_s = |v: &mut RealVector, n: i64, x: Scalar| {
        if n != 0 {
            v.add_s(n, x);
        }
    };
    let put_c = |v: &mut RealVector, n: i64, x: Scalar| {
        if n != 0 {
            v.add_c(n, x);
        } else if convention == C0Convention::H {
            v.h = v.h.clone() + x;
        }
    };
    match (a, b) {
        (RealBasis::S(n), RealBasis::S(m)) => {
            put_s(&mut v, n + m, half(m - n));
            put_s(&mut v, (n - m).abs(), half(sgn(n - m) * (n + m)));
        }
        (RealBasis::C(n), RealBasis::C(m)) => {
            put_s(&mut v, n + m, half(n - m));
            put_s(&mut v, (n - m).abs(), half(sgn(n - m) * (n + m)));
        }
        (RealBasis::S(n), RealBasis::C(m)) => {
            put_c(&mut v, n + m, half(m - n));
            put_c(&mut v, (n - m).abs(), half(-(m + n)));
            if n == m {
                v.h = v.h.clone() - int(n);
            }
        }
        (RealBasis::H, RealBasis::S(n)) => v.add_c(n, int(n)),
        (RealBasis::H, RealBasis::C(n)) => v.add_s(n, int(-n)),
        (RealBasis::H, RealBasis::H) => {}
        (x, y) => {
            let w = tabulated_bracket(y, x, convention);
            v.h = -w.h;
            v.s = w.s.into_iter().map(|(k, x)| (k, -x)).collect();
            v.c = w.c.into_iter().map(|(k, x)| (k, -x)).collect();
        }
    }
    v
}

/// One table line compared against the Fourier computation.
#[derive(Debug, Clone, PartialEq)]
pub struct TableEntry {
    pub left: RealBasis,
    pub right: RealBasis,
    pub oracle: RealVector,
    pub tabulated: RealVector,
}

impl TableEntry {
    pub fn agrees(&self) -> bool {
        self.oracle == self.tabulated
    }

    pub fn to_json(&self) -> Value {
        json!({
            "left": self.left.label(),
            "right": self.right.label(),
            "oracle": self.oracle.to_string(),
            "tabulated": self.tabulated.to_string(),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiscrepancyReport {
    pub convention: C0Convention,
    pub max_index: i64,
    pub checked: usize,
    pub discrepancies: Vec<TableEntry>,
}

impl DiscrepancyReport {
    pub fn to_json(&self) -> Value {
        json!({
            "convention": self.convention.name(),
            "max_index": self.max_index,
            "checked": self.checked,
            "discrepancies": self.discrepancies.iter().map(TableEntry::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Compares every tabulated bracket with `1 ≤ n, m ≤ max_index` against
/// [`trig_bracket`].
pub fn table_discrepancy_report(max_index: i64, convention: C0Convention) -> DiscrepancyReport {
    let mut pairs = Vec::new();
    for n in 1..=max_index {
        for m in 1..=max_index {
            pairs.push((RealBasis::S(n), RealBasis::S(m)));
            pairs.push((RealBasis::C(n), RealBasis::C(m)));
            pairs.push((RealBasis::S(n), RealBasis::C(m)));
        }
        pairs.push((RealBasis::H, RealBasis::S(n)));
        pairs.push((RealBasis::H, RealBasis::C(n)));
    }
    let checked = pairs.len();
    let discrepancies = pairs
        .into_iter()
        .map(|(a, b)| TableEntry {
            left: a,
            right: b,
            oracle: trig_bracket(&a.field(), &b.field()).real_coords().expect("real fields bracket to a real field"),
            tabulated: tabulated_bracket(a, b, convention),
        })
        .filter(|e| !e.agrees())
        .collect();
    DiscrepancyReport { convention, max_index, checked, discrepancies }
}

#[cfg(test)]
mod tests {
    use super::*;

    type W = WittElement<Scalar>;
    type V = VirasoroElement<Scalar>;

    fn e(k: i64) -> W {
        W::basis(k)
    }

    fn ge(k: i64) -> WittElement<GaussRat> {
        WittElement::basis(k)
    }

    fn gi(re: i64, im: i64) -> GaussRat {
        gauss(int(re), int(im))
    }

    #[test]
    fn witt_examples() {
        assert_eq!(witt_bracket(&e(2), &e(-2)), e(0).scale(&int(4)));
        assert!(witt_bracket(&e(0), &e(0)).is_zero());
        assert_eq!(witt_bracket(&e(1), &e(2)), e(3).scale(&int(-1)));
    }

    #[test]
    fn virasoro_examples() {
        let b = |j: i64, k: i64| virasoro_bracket(&V::basis(j), &V::basis(k));
        assert_eq!(b(2, -2), V::new(e(0).scale(&int(4)), rat(1, 2)));
        assert_eq!(b(1, -1), V::new(e(0).scale(&int(2)), int(0)));
        assert_eq!(b(3, -3), V::new(e(0).scale(&int(6)), int(2)));
    }

    #[test]
    fn trig_examples() {
        for n in 1..=4 {
            assert_eq!(trig_bracket(&TrigField::h(), &TrigField::sin(n)), TrigField::cos(n).scale(&gi(n, 0)));
            assert!(trig_bracket(&TrigField::sin(n), &TrigField::sin(n)).is_zero());
        }
        for j in -6..=6 {
            for k in -6..=6 {
                let lhs = trig_bracket(&TrigField::from_witt(&ge(j)), &TrigField::from_witt(&ge(k)));
                let rhs = TrigField::from_witt(&witt_bracket(&ge(j), &ge(k)));
                assert_eq!(lhs, rhs);
            }
        }
        let x = WittElement::from_terms([(2, gi(1, 3)), (-1, gi(0, -2))]);
        assert_eq!(TrigField::from_witt(&x).to_witt(), x);
    }

    #[test]
    fn gelfand_fuchs_values() {
        for j in -4..=4 {
            for k in -4..=4 {
                let expected = if j + k == 0 { gi(0, 4 * j * j * j) } else { GaussRat::zero() };
                assert_eq!(gelfand_fuchs_witt(&ge(j), &ge(k)), expected);
            }
        }
        assert_eq!(gelfand_fuchs_witt(&ge(1), &ge(-1)), gi(0, 4));
        let v = TrigField::sin(2).add(&TrigField::cos(3));
        assert!(gelfand_fuchs(&v, &v).is_zero());
        let t = |k| TrigField::from_witt(&ge(k));
        assert!(cocycle_identity_check(&t(1), &t(2), &t(-3)).is_zero());
        assert!(cocycle_identity_check(&t(2), &t(-2), &t(0)).is_zero());
    }

    #[test]
    fn normalization() {
        let gf = |j: i64, k: i64| gelfand_fuchs_witt(&ge(j), &ge(k));
        let n = normalize_to_virasoro(gf, 6).unwrap();
        assert_eq!(n.lambda, gauss(int(0), rat(-1, 48)));
        assert_eq!(n.mu, GaussRat::from_scalar(rat(-1, 24)));
        assert!(n.verify(gf, 6));

        let normalized = |j: i64, k: i64| {
            if j + k == 0 {
                GaussRat::from_scalar(rat(j * j * j - j, 12))
            } else {
                GaussRat::zero()
            }
        };
        let n = normalize_to_virasoro(normalized, 6).unwrap();
        assert_eq!((n.lambda.clone(), n.mu.clone()), (GaussRat::one(), GaussRat::zero()));
        assert!(n.verify(normalized, 6));

        assert_eq!(normalize_to_virasoro(|_, _| GaussRat::zero(), 4), Err(Error::TrivialClass));
        let quartic = |j: i64, k: i64| if j + k == 0 { GaussRat::from_i64(j.pow(4)) } else { GaussRat::zero() };
        assert!(matches!(normalize_to_virasoro(quartic, 4), Err(Error::NotCubicCocycle(_))));
    }

    #[test]
    fn tabulated_brackets() {
        let zero = table_discrepancy_report(6, C0Convention::Zero);
        assert!(zero.discrepancies.is_empty(), "{:?}", zero.discrepancies.first());
        let h = table_discrepancy_report(6, C0Convention::H);
        let bad: Vec<_> = h.discrepancies.iter().map(|d| (d.left, d.right)).collect();
        let expected: Vec<_> = (1..=6).map(|n| (RealBasis::S(n), RealBasis::C(n))).collect();
        assert_eq!(bad, expected);
        assert_eq!(h.discrepancies[0].oracle.h, int(-1));
        assert_eq!(h.discrepancies[0].tabulated.h, int(-2));
    }

    #[test]
    fn real_coordinates() {
        let v = TrigField::sin(3).scale(&gi(2, 0)).add(&TrigField::cos(1)).add(&TrigField::h());
        let r = v.real_coords().unwrap();
        assert_eq!(r.h, int(1));
        assert_eq!(r.s.get(&3), Some(&int(2)));
        assert_eq!(r.c.get(&1), Some(&int(1)));
        assert!(TrigField::exp(1).real_coords().is_none());
        assert_eq!(format_gauss(&gi(1, -2)), "1-2i");
        assert_eq!(format_gauss(&gauss(int(0), rat(-1, 48))), "-1/48i");
    }
}
