//! Exact rank, support and symbol-versus-action comparisons.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Value};

use super::VermaMatrix;
use crate::arith::{format_scalar, Field, Scalar};
use crate::error::Result;
use crate::symbol::OpExpr;

/// Exact rank by sparse Gaussian elimination over the rows.
pub fn sparse_rank(a: &VermaMatrix) -> usize {
    let mut rows: BTreeMap<usize, BTreeMap<usize, Scalar>> = BTreeMap::new();
    for (m, n, v) in a.entries() {
        rows.entry(m).or_default().insert(n, v.clone());
    }
    // pivot column → row normalized to 1 at the pivot
    let mut pivots: BTreeMap<usize, BTreeMap<usize, Scalar>> = BTreeMap::new();
    for (_, mut row) in rows {
        while let Some((&c, v)) = row.iter().next() {
            let v = v.clone();
            match pivots.get(&c) {
                Some(p) => {
                    for (k, pv) in p {
                        let t = row.get(k).cloned().unwrap_or_else(Scalar::zero).sub(&v.mul(pv));
                        if t.is_zero() {
                            row.remove(k);
                        } else {
                            row.insert(*k, t);
                        }
                    }
                }
                None => {
                    let inv = v.inv().expect("stored entries are nonzero");
                    let normalized = row.into_iter().map(|(k, x)| (k, x.mul(&inv))).collect();
                    pivots.insert(c, normalized);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// Largest index of a nonzero row or column.
fn support_bound(a: &VermaMatrix) -> Option<usize> {
    a.entries().map(|(m, n, _)| m.max(n)).max()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteRankReport {
    pub truncations: Vec<usize>,
    pub ranks: Vec<usize>,
    pub support_bounds: Vec<Option<usize>>,
    /// Ranks and support bounds agree across all truncations.
    pub stable: bool,
}

impl FiniteRankReport {
    pub fn rank(&self) -> usize {
        *self.ranks.last().unwrap_or(&0)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "truncations": self.truncations,
            "ranks": self.ranks,
            "support_bounds": self.support_bounds,
            "stable": self.stable,
        })
    }
}

/// Rank and support of the leading blocks of `a` at each truncation.
pub fn finite_rank_check(a: &VermaMatrix, ns: &[usize]) -> FiniteRankReport {
    let blocks: Vec<VermaMatrix> = ns.iter().map(|&n| a.restrict(n)).collect();
    let ranks: Vec<usize> = blocks.iter().map(sparse_rank).collect();
    let support_bounds: Vec<Option<usize>> = blocks.iter().map(support_bound).collect();
    let stable = ranks.windows(2).all(|w| w[0] == w[1]) && support_bounds.windows(2).all(|w| w[0] == w[1]);
    FiniteRankReport { truncations: ns.to_vec(), ranks, support_bounds, stable }
}

/// A basis index where the reduced composite symbol and the composed action
/// disagree.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolMismatch {
    pub n: i64,
    pub degree: i64,
    /// `None` when the reduced symbol has a pole at `n`.
    pub symbol_value: Option<Scalar>,
    /// `None` when the composed action is undefined at `n`.
    pub action_value: Option<Scalar>,
}

impl SymbolMismatch {
    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "degree": self.degree,
            "symbol_value": self.symbol_value.as_ref().map(format_scalar),
            "action_value": self.action_value.as_ref().map(format_scalar),
        })
    }
}

/// Compares the reduced symbol of `expr` with its generator-level action on
/// `z^n` for `n < size`.
pub fn matrix_vs_symbol_consistency(expr: &OpExpr<Scalar>, size: usize) -> Result<Vec<SymbolMismatch>> {
    let sym = expr.symbol();
    let mut out = Vec::new();
    for n in 0..size as i64 {
        let action = expr.apply_basis(n).ok();
        let mut degrees: BTreeSet<i64> = sym.degrees().into_iter().collect();
        if let Some(a) = &action {
            degrees.extend(a.keys().map(|k| n - k));
        }
        for d in degrees {
            let symbol_value = sym.eval_symbol_at(d, n).ok();
            let action_value = action.as_ref().map(|a| a.get(&(n - d)).cloned().unwrap_or_else(Scalar::zero));
            if symbol_value.is_none() || action_value.is_none() || symbol_value != action_value {
                out.push(SymbolMismatch { n, degree: d, symbol_value, action_value });
            }
        }
    }
    Ok(out)
}
