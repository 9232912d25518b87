//! Membership in the extended Weyl algebra: denominators must not vanish at
//! the integer points the action actually reaches.

use serde_json::{json, Value};

use super::{GradedOperator, MonomialForm};
use crate::arith::roots::{nonneg_integer_roots, rational_roots};
use crate::arith::{format_scalar, Field, Poly, Qh, Scalar, Xi, H};
use crate::error::Result;

/// Number of basis indices scanned per term for a symbolic weight.
pub const DEFAULT_WINDOW: i64 = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct MembershipReport {
    pub valid: bool,
    /// `(degree, basis index n)` pairs where the action hits a pole.
    pub offending: Vec<(i64, i64)>,
    /// For a symbolic weight: values of `h` at which some reached
    /// denominator vanishes (within the scanned window).
    pub excluded_weights: Vec<Scalar>,
    /// Number of basis indices scanned for a symbolic weight.
    pub window: Option<i64>,
}

impl MembershipReport {
    fn finish(mut offending: Vec<(i64, i64)>, mut excluded: Vec<Scalar>, window: Option<i64>) -> Self {
        offending.sort();
        offending.dedup();
        excluded.sort();
        excluded.dedup();
        MembershipReport { valid: offending.is_empty(), offending, excluded_weights: excluded, window }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "valid": self.valid,
            "offending": self.offending.iter().map(|(d, n)| json!({"degree": d, "n": n})).collect::<Vec<_>>(),
            "excluded_weights": self.excluded_weights.iter().map(format_scalar).collect::<Vec<_>>(),
            "window": self.window,
        })
    }
}

/// Basis indices `n ≥ start` at which `den(n − shift)` vanishes.
fn concrete_poles(den: &Poly<Scalar, Xi>, shift: i64, start: i64) -> Result<Vec<i64>> {
    if den.degree() == Some(0) {
        return Ok(Vec::new());
    }
    Ok(nonneg_integer_roots(den)?.into_iter().map(|r| r + shift).filter(|&n| n >= start).collect())
}

impl MonomialForm<Scalar> {
    /// Membership over the submodule spanned by `z^n`, `n ≥ start`, using
    /// the unreduced denominators of each term.
    pub fn membership(&self, start: i64) -> Result<MembershipReport> {
        let mut off = Vec::new();
        for t in self.terms() {
            let b = t.d_power() as i64;
            for n in concrete_poles(t.den(), b, start.max(b))? {
                off.push((t.degree(), n));
            }
        }
        Ok(MembershipReport::finish(off, Vec::new(), None))
    }
}

impl GradedOperator<Scalar> {
    /// Membership read off the reduced symbols.
    pub fn membership(&self, start: i64) -> Result<MembershipReport> {
        let mut off = Vec::new();
        for (d, s) in self.components() {
            for n in concrete_poles(s.den(), 0, start)? {
                off.push((d, n));
            }
        }
        Ok(MembershipReport::finish(off, Vec::new(), None))
    }
}

fn weight_poles(p: &Poly<Qh, Xi>) -> Result<Vec<Scalar>> {
    let mut out = Vec::new();
    for c in p.coeffs() {
        out.extend(rational_roots(c.den())?);
    }
    Ok(out)
}

/// Scans `den(n − b)` for `n` in the window and collects the weights at
/// which it vanishes; an identically vanishing value is an offending point.
fn symbolic_scan(
    den: &Poly<Qh, Xi>,
    degree: i64,
    b: i64,
    start: i64,
    window: i64,
    off: &mut Vec<(i64, i64)>,
    excluded: &mut Vec<Scalar>,
) -> Result<()> {
    if den.degree() == Some(0) {
        return Ok(());
    }
    let first = start.max(b);
    for n in first..first + window {
        let v = den.eval(&Qh::from_int(n - b));
        if v.is_zero() {
            off.push((degree, n));
        } else {
            let num: &Poly<Scalar, H> = v.num();
            excluded.extend(rational_roots(num)?);
        }
    }
    Ok(())
}

impl MonomialForm<Qh> {
    /// Membership at a generic weight, listing the excluded weights met in
    /// the first `window` reachable basis indices of each term.
    pub fn membership_symbolic(&self, start: i64, window: i64) -> Result<MembershipReport> {
        let mut off = Vec::new();
        let mut excluded = Vec::new();
        for t in self.terms() {
            excluded.extend(weight_poles(t.num())?);
            excluded.extend(weight_poles(t.den())?);
            symbolic_scan(t.den(), t.degree(), t.d_power() as i64, start, window, &mut off, &mut excluded)?;
        }
        Ok(MembershipReport::finish(off, excluded, Some(window)))
    }

    /// Membership at a concrete weight; weights where a coefficient has a
    /// pole are reported with every term marked at its first index.
    pub fn membership_at(&self, h: &Scalar, start: i64) -> Result<MembershipReport> {
        match self.at_weight(h) {
            Ok(m) => m.membership(start),
            Err(_) => {
                let off = self.terms().iter().map(|t| (t.degree(), start.max(t.d_power() as i64))).collect();
                Ok(MembershipReport::finish(off, vec![h.clone()], None))
            }
        }
    }
}

impl GradedOperator<Qh> {
    pub fn membership_symbolic(&self, start: i64, window: i64) -> Result<MembershipReport> {
        let mut off = Vec::new();
        let mut excluded = Vec::new();
        for (d, s) in self.components() {
            excluded.extend(weight_poles(s.num())?);
            excluded.extend(weight_poles(s.den())?);
            symbolic_scan(s.den(), d, 0, start, window, &mut off, &mut excluded)?;
        }
        Ok(MembershipReport::finish(off, excluded, Some(window)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat, RatFunc};

    fn f_form() -> MonomialForm<Qh> {
        let two_h = Qh::var().scale(&int(2));
        MonomialForm::term(1, RatFunc::reciprocal_linear(two_h), 0)
    }

    #[test]
    fn f_valid_at_three_quarters() {
        assert!(f_form().membership_at(&rat(3, 4), 0).unwrap().valid);
    }

    #[test]
    fn f_invalid_at_zero() {
        let r = f_form().membership_at(&int(0), 0).unwrap();
        assert!(!r.valid);
        assert_eq!(r.offending, vec![(-1, 0)]);
        assert!(f_form().membership_at(&int(0), 1).unwrap().valid);
    }

    #[test]
    fn symbolic_lists_nonpositive_half_integers() {
        let r = f_form().membership_symbolic(0, 8).unwrap();
        assert!(r.valid);
        let expected: Vec<Scalar> = (0..8).rev().map(|m| rat(-m, 2)).collect();
        assert_eq!(r.excluded_weights, expected);
    }
}
