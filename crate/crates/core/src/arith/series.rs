//! Power-series expansion in the parameter of a rational function whose
//! ξ-coefficients live in `Q(p)`.

use super::{Field, Poly, RatFunc, Scalar, Var, Xi};
use crate::error::{Error, Result};

/// A polynomial in `(p, ξ)` stored as `Σ_k p^k · rows[k](ξ)`.
type Bivariate = Vec<Poly<Scalar, Xi>>;

/// Clears the parameter denominators of a polynomial in ξ with `Q(p)`
/// coefficients. Returns the bivariate numerator and the cleared factor
/// `ℓ(p)`, so that `q = rows / ℓ`.
fn clear_param_denominators<P: Var>(
    q: &Poly<RatFunc<Scalar, P>, Xi>,
) -> (Bivariate, Poly<Scalar, P>) {
    let mut l = Poly::<Scalar, P>::one();
    for c in q.coeffs() {
        l = l.lcm(c.den());
    }
    let mut rows: Bivariate = Vec::new();
    for (a, c) in q.coeffs().iter().enumerate() {
        let cofactor = l.div_exact(c.den()).expect("lcm is a multiple");
        let p = c.num().mul(&cofactor);
        for (k, coeff) in p.coeffs().iter().enumerate() {
            if rows.len() <= k {
                rows.resize(k + 1, Poly::zero());
            }
            rows[k] = rows[k].add(&Poly::monomial(coeff.clone(), a));
        }
    }
    (rows, l)
}

fn mul_by_param_poly<P: Var>(rows: &Bivariate, p: &Poly<Scalar, P>) -> Bivariate {
    if rows.is_empty() || p.is_zero() {
        return Vec::new();
    }
    let mut out: Bivariate = vec![Poly::zero(); rows.len() + p.coeffs().len() - 1];
    for (i, r) in rows.iter().enumerate() {
        for (j, c) in p.coeffs().iter().enumerate() {
            if !c.is_zero() {
                out[i + j] = out[i + j].add(&r.scale(c));
            }
        }
    }
    out
}

fn valuation(rows: &Bivariate) -> Option<usize> {
    rows.iter().position(|r| !r.is_zero())
}

/// Taylor coefficients `c_0(ξ), …, c_order(ξ)` of `f` around `p = 0`, where
/// `f` is read as a rational function of `p` over the field `Q(ξ)`.
///
/// The computation is exact series division: numerator and denominator
/// are rewritten as polynomials in `p` with `Q[ξ]` coefficients and the
/// quotient is expanded by the recursion
/// `c_k = (n_k − Σ_{j≥1} d_j c_{k−j}) / d_0`.
pub fn taylor_in_param<P: Var>(
    f: &RatFunc<RatFunc<Scalar, P>, Xi>,
    order: usize,
) -> Result<Vec<RatFunc<Scalar, Xi>>> {
    if f.is_zero() {
        return Ok(vec![RatFunc::zero(); order + 1]);
    }
    let (n_rows, ln) = clear_param_denominators(f.num());
    let (d_rows, ld) = clear_param_denominators(f.den());
    // f = (n_rows / ln) / (d_rows / ld) = (n_rows·ld) / (d_rows·ln)
    let n_rows = mul_by_param_poly(&n_rows, &ld);
    let d_rows = mul_by_param_poly(&d_rows, &ln);

    let vn = valuation(&n_rows).expect("nonzero numerator");
    let vd = valuation(&d_rows).expect("nonzero denominator");
    if vd > vn {
        return Err(Error::PoleAtZeroParam);
    }
    let shift = vd;
    let row = |rows: &Bivariate, k: usize| -> RatFunc<Scalar, Xi> {
        rows.get(k + shift).cloned().map(RatFunc::from_poly).unwrap_or_else(RatFunc::zero)
    };
    let d0 = row(&d_rows, 0);
    let d0_inv = d0.inv().ok_or(Error::PoleAtZeroParam)?;

    let mut coeffs: Vec<RatFunc<Scalar, Xi>> = Vec::with_capacity(order + 1);
    for k in 0..=order {
        let mut acc = row(&n_rows, k);
        for j in 1..=k {
            let dj = row(&d_rows, j);
            if !dj.is_zero() {
                acc = acc.sub(&dj.mul(&coeffs[k - j]));
            }
        }
        coeffs.push(acc.mul(&d0_inv));
    }
    Ok(coeffs)
}

/// Substitutes a concrete parameter value into every ξ-coefficient.
pub fn specialize_param<P: Var>(
    f: &RatFunc<RatFunc<Scalar, P>, Xi>,
    p0: &Scalar,
) -> Result<RatFunc<Scalar, Xi>> {
    f.try_map(|c| c.eval(p0))
}

/// Evaluates a truncated series `Σ c_k p0^k` at a concrete ξ-point.
pub fn partial_sum_at(coeffs: &[RatFunc<Scalar, Xi>], p0: &Scalar, xi: &Scalar) -> Result<Scalar> {
    let mut acc = Scalar::zero();
    let mut pk = Scalar::one();
    for c in coeffs {
        acc = acc.add(&c.eval(xi)?.mul(&pk));
        pk = pk.mul(p0);
    }
    Ok(acc)
}
