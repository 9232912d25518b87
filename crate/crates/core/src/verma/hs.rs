//! Hilbert–Schmidt partial norms in the orthonormalized basis.

use num::ToPrimitive;
use serde_json::{json, Value};

use super::{VermaBasis, VermaMatrix};
use crate::arith::{format_scalar, Field, Scalar};
use crate::error::{Error, Result};

/// A fitted tail slope at or below this value counts as convergent.
pub const SLOPE_THRESHOLD: f64 = -1.5;

/// Relative change between the two largest truncations must be below this.
pub const REL_CHANGE_TOLERANCE: (i64, i64) = (1, 1_000_000);

fn tolerance() -> Scalar {
    Scalar::new(REL_CHANGE_TOLERANCE.0.into(), REL_CHANGE_TOLERANCE.1.into())
}

#[derive(Debug, Clone, PartialEq)]
pub struct HSReport {
    pub truncations: Vec<usize>,
    /// `S_N = Σ_{m,n<N} A(m,n)²·g_m/g_n`, exact.
    pub partial_sums: Vec<Scalar>,
    pub partial_sums_approx: Vec<f64>,
    /// Least-squares slope of `log(S_{N_k} − S_{N_{k−1}})` against `log N_k`;
    /// `None` when fewer than two positive increments exist.
    pub slope_approx: Option<f64>,
    /// `(S_last − S_prev)/S_last`, exact (zero when `S_last = 0`).
    pub relative_change: Scalar,
    pub relative_change_approx: f64,
    pub monotone: bool,
    /// All increments vanish: the partial sums are constant.
    pub stationary: bool,
    pub converged: bool,
    /// Power-law estimate of `S_∞ − S_last`.
    pub tail_bound_approx: Option<f64>,
}

impl HSReport {
    pub fn to_json(&self) -> Value {
        json!({
            "truncations": self.truncations,
            "partial_sums": self.partial_sums.iter().map(format_scalar).collect::<Vec<_>>(),
            "partial_sums_approx": self.partial_sums_approx,
            "slope_approx": self.slope_approx,
            "relative_change": format_scalar(&self.relative_change),
            "relative_change_approx": self.relative_change_approx,
            "monotone": self.monotone,
            "stationary": self.stationary,
            "converged": self.converged,
            "tail_bound_approx": self.tail_bound_approx,
        })
    }
}

fn least_squares_slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// Exact partial Hilbert–Schmidt sums of `a` at each truncation in `ns`.
///
/// `ns` must be strictly increasing and not exceed the matrix size. The norm
/// ratios must be positive between the lowest index the matrix touches and the
/// largest truncation, so a defect living on `span{z^n : n ≥ 1}` at `h = 0`
/// is measured with the norms of that submodule.
pub fn hs_partial_norm(a: &VermaMatrix, ns: &[usize]) -> Result<HSReport> {
    if ns.is_empty() || ns.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Precondition("truncations must be nonempty and strictly increasing".into()));
    }
    let n_max = *ns.last().expect("nonempty");
    if n_max > a.size() {
        return Err(Error::Precondition(format!("truncation {n_max} exceeds matrix size {}", a.size())));
    }
    let h = a.h().clone();
    let lowest = a.entries().map(|(m, n, _)| m.min(n)).min().unwrap_or(0);
    for k in lowest + 1..n_max {
        let f = VermaBasis::recursion_factor(&h, k);
        if f <= Scalar::zero() {
            return Err(Error::NonPositiveNorm { n: k, value: format!("g_{k}/g_{} = {}", k - 1, format_scalar(&f)) });
        }
    }

    // bucket each entry by the first truncation that contains it
    let mut bucket = vec![Scalar::zero(); n_max];
    for (m, n, v) in a.entries() {
        if m >= n_max || n >= n_max {
            continue;
        }
        let w = VermaBasis::ratio(&h, m, n);
        let t = v.mul(v).mul(&w);
        let b = m.max(n);
        bucket[b] = bucket[b].add(&t);
    }
    let mut partial_sums = Vec::with_capacity(ns.len());
    let mut acc = Scalar::zero();
    let mut next = 0;
    for (i, b) in bucket.iter().enumerate() {
        acc = acc.add(b);
        while next < ns.len() && ns[next] == i + 1 {
            partial_sums.push(acc.clone());
            next += 1;
        }
    }
    while partial_sums.len() < ns.len() {
        partial_sums.push(acc.clone());
    }

    let approx = |q: &Scalar| q.to_f64().unwrap_or(f64::NAN);
    let increments: Vec<Scalar> = partial_sums.windows(2).map(|w| w[1].sub(&w[0])).collect();
    let monotone = increments.iter().all(|d| *d >= Scalar::zero());
    let stationary = increments.iter().all(Field::is_zero);
    let points: Vec<(f64, f64)> = increments
        .iter()
        .zip(&ns[1..])
        .filter(|(d, _)| *d > &Scalar::zero())
        .map(|(d, n)| ((*n as f64).ln(), approx(d).ln()))
        .collect();
    let slope_approx = least_squares_slope(&points);

    let last = partial_sums.last().expect("nonempty");
    let relative_change = match (partial_sums.len(), last.is_zero()) {
        (1, _) | (_, true) => Scalar::zero(),
        _ => increments.last().expect("two sums").div(last)?,
    };
    let tail_bound_approx = match (slope_approx, increments.last()) {
        (Some(s), Some(d)) if s < 0.0 && ns.len() >= 2 => {
            let r = ns[ns.len() - 2] as f64 / n_max as f64;
            Some(approx(d) / (r.powf(s) - 1.0))
        }
        _ if stationary => Some(0.0),
        _ => None,
    };
    let converged = monotone
        && (stationary
            || (slope_approx.is_some_and(|s| s <= SLOPE_THRESHOLD) && relative_change < tolerance()));
    Ok(HSReport {
        truncations: ns.to_vec(),
        partial_sums_approx: partial_sums.iter().map(approx).collect(),
        partial_sums,
        slope_approx,
        relative_change_approx: approx(&relative_change),
        relative_change,
        monotone,
        stationary,
        converged,
        tail_bound_approx,
    })
}
