//! Exact matrices of operators on the truncated basis `z^0, …, z^{N−1}` of
//! `V_h` at a concrete rational weight.
//!
//! Every entry is computed from the action on the infinite module and only
//! then restricted, so retained entries never depend on the truncation.

mod hs;
mod rank;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::arith::{format_scalar, Field, Scalar};
use crate::error::{Error, Result};
use crate::generators::{Family, GeneratorCatalog};
use crate::symbol::{GradedOperator, MonomialForm, OpExpr, SparseVec};

pub use hs::{hs_partial_norm, HSReport, SLOPE_THRESHOLD, REL_CHANGE_TOLERANCE};
pub use rank::{finite_rank_check, matrix_vs_symbol_consistency, sparse_rank, FiniteRankReport, SymbolMismatch};

/// Squared norms `g_n = ‖z^n‖²` of the invariant form with `l_i* = l_{−i}`.
#[derive(Debug, Clone, PartialEq)]
pub struct VermaBasis {
    h: Scalar,
    norms: Vec<Scalar>,
}

impl VermaBasis {
    pub fn h(&self) -> &Scalar {
        &self.h
    }

    pub fn len(&self) -> usize {
        self.norms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.norms.is_empty()
    }

    pub fn norms(&self) -> &[Scalar] {
        &self.norms
    }

    pub fn norm(&self, n: usize) -> &Scalar {
        &self.norms[n]
    }

    /// `g_n / g_{n−1} = n(n + 2h − 1)`.
    pub fn recursion_factor(h: &Scalar, n: usize) -> Scalar {
        let n = Scalar::from_int(n as i64);
        n.mul(&n.add(&h.mul(&Scalar::from_int(2))).sub(&Scalar::one()))
    }

    /// `g_m / g_n` from the recursion, without forming either norm.
    pub fn ratio(h: &Scalar, m: usize, n: usize) -> Scalar {
        if m >= n {
            (n + 1..=m).fold(Scalar::one(), |acc, k| acc.mul(&Self::recursion_factor(h, k)))
        } else {
            Self::ratio(h, n, m).inv().unwrap_or_else(Scalar::zero)
        }
    }

    /// `n!·(2h)(2h+1)⋯(2h+n−1)`.
    pub fn closed_form(h: &Scalar, n: usize) -> Scalar {
        let two_h = h.mul(&Scalar::from_int(2));
        (0..n).fold(Scalar::one(), |acc, t| {
            let t = Scalar::from_int(t as i64);
            acc.mul(&t.add(&Scalar::one())).mul(&two_h.add(&t))
        })
    }

    /// Fails with [`Error::NonPositiveNorm`] at the first `g_n ≤ 0`.
    pub fn require_positive(&self) -> Result<()> {
        for (n, g) in self.norms.iter().enumerate() {
            if *g <= Scalar::zero() {
                return Err(Error::NonPositiveNorm { n, value: format_scalar(g) });
            }
        }
        Ok(())
    }
}

/// `g_0, …, g_{N−1}` at weight `h`.
pub fn verma_norms(h: &Scalar, n: usize) -> VermaBasis {
    let mut norms = Vec::with_capacity(n);
    let mut g = Scalar::one();
    for k in 0..n {
        if k > 0 {
            g = g.mul(&VermaBasis::recursion_factor(h, k));
        }
        norms.push(g.clone());
    }
    VermaBasis { h: h.clone(), norms }
}

/// Exact `N×N` matrix stored by columns; entry `(m, n)` is the coefficient
/// of `z^m` in the image of `z^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct VermaMatrix {
    h: Scalar,
    size: usize,
    bandwidth: u64,
    cols: Vec<BTreeMap<usize, Scalar>>,
}

impl VermaMatrix {
    pub fn zero(h: &Scalar, size: usize) -> Self {
        VermaMatrix { h: h.clone(), size, bandwidth: 0, cols: vec![BTreeMap::new(); size] }
    }

    /// Keeps the rows `< size` of each image column.
    pub fn from_columns(h: &Scalar, size: usize, images: Vec<SparseVec<Scalar>>) -> Self {
        let mut m = Self::zero(h, size);
        for (n, img) in images.into_iter().enumerate().take(size) {
            for (k, v) in img {
                if k >= 0 && (k as usize) < size && !v.is_zero() {
                    m.bandwidth = m.bandwidth.max((k - n as i64).unsigned_abs());
                    m.cols[n].insert(k as usize, v);
                }
            }
        }
        m
    }

    pub fn h(&self) -> &Scalar {
        &self.h
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn bandwidth(&self) -> u64 {
        self.bandwidth
    }

    pub fn entry(&self, m: usize, n: usize) -> Scalar {
        self.cols.get(n).and_then(|c| c.get(&m)).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn column(&self, n: usize) -> &BTreeMap<usize, Scalar> {
        &self.cols[n]
    }

    /// Nonzero entries as `(row, col, value)` in column-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.cols.iter().enumerate().flat_map(|(n, c)| c.iter().map(move |(m, v)| (*m, n, v)))
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(BTreeMap::is_empty)
    }

    /// Leading principal `size × size` block.
    pub fn restrict(&self, size: usize) -> Self {
        let size = size.min(self.size);
        let cols = self.cols[..size]
            .iter()
            .map(|c| c.range(..size).map(|(m, v)| (*m, v.clone())).collect())
            .collect();
        let mut out = VermaMatrix { h: self.h.clone(), size, bandwidth: 0, cols };
        out.bandwidth = out.entries().map(|(m, n, _)| (m as i64 - n as i64).unsigned_abs()).max().unwrap_or(0);
        out
    }

    /// Diagonal entries `(0,0), …, (N−1,N−1)`.
    pub fn diagonal(&self) -> Vec<Scalar> {
        (0..self.size).map(|n| self.entry(n, n)).collect()
    }

    /// `row,col,value` lines with exact `p/q` values.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("row,col,value\n");
        for (m, n, v) in self.entries() {
            let _ = writeln!(s, "{m},{n},{}", format_scalar(v));
        }
        s
    }

    pub fn to_json(&self) -> Value {
        json!({
            "h": format_scalar(&self.h),
            "size": self.size,
            "bandwidth": self.bandwidth,
            "entries": self.entries().map(|(m, n, v)| json!([m, n, format_scalar(v)])).collect::<Vec<_>>(),
        })
    }
}

/// Matrix of an operator from its symbols.
pub fn matrix_of(op: &GradedOperator<Scalar>, h: &Scalar, size: usize) -> Result<VermaMatrix> {
    let images = (0..size as i64).map(|n| op.apply_to_basis(n)).collect::<Result<Vec<_>>>()?;
    Ok(VermaMatrix::from_columns(h, size, images))
}

/// Matrix of an operator from its monomial form.
pub fn matrix_of_form(form: &MonomialForm<Scalar>, h: &Scalar, size: usize) -> Result<VermaMatrix> {
    let images = (0..size as i64).map(|n| form.apply_basis(n)).collect::<Result<Vec<_>>>()?;
    Ok(VermaMatrix::from_columns(h, size, images))
}

/// Matrix of a composite expression, composing generator actions on the
/// infinite module. Columns below `start` are left zero (restriction to the
/// span of `z^n`, `n ≥ start`).
pub fn matrix_of_expr(expr: &OpExpr<Scalar>, h: &Scalar, size: usize, start: usize) -> Result<VermaMatrix> {
    let images = (0..size as i64)
        .map(|n| if (n as usize) < start { Ok(SparseVec::new()) } else { expr.apply_basis(n) })
        .collect::<Result<Vec<_>>>()?;
    Ok(VermaMatrix::from_columns(h, size, images))
}

/// Which bracket a defect is measured against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DefectKind {
    /// `[L_i, L_j] − (i − j)L_{i+j}`.
    Witt,
    /// `[J_i, J_j]` against the zero bracket.
    Heisenberg,
    /// `[L_i, J_j] + j·J_{i+j}`.
    Mixed,
}

impl DefectKind {
    pub fn name(self) -> &'static str {
        match self {
            DefectKind::Witt => "witt",
            DefectKind::Heisenberg => "heisenberg",
            DefectKind::Mixed => "mixed",
        }
    }
}

/// The defect as an expression over generator atoms.
pub fn defect_expr(cat: &GeneratorCatalog<Scalar>, kind: DefectKind, i: i64, j: i64) -> Result<OpExpr<Scalar>> {
    let (fa, fb) = match kind {
        DefectKind::Witt => (Family::L, Family::L),
        DefectKind::Heisenberg => (Family::J, Family::J),
        DefectKind::Mixed => (Family::L, Family::J),
    };
    let bracket = OpExpr::commutator(cat.expr(fa, i)?, cat.expr(fb, j)?);
    Ok(match kind {
        DefectKind::Witt => OpExpr::difference(bracket, OpExpr::scaled(Scalar::from_int(i - j), cat.expr(Family::L, i + j)?)),
        DefectKind::Heisenberg => bracket,
        DefectKind::Mixed => OpExpr::sum(vec![bracket, OpExpr::scaled(Scalar::from_int(j), cat.expr(Family::J, i + j)?)]),
    })
}

/// Checks that every generator in `expr` is defined on `z^n`, `n ≥ start`,
/// turning the first offending point into [`Error::ModuleUndefined`].
pub fn require_membership(expr: &OpExpr<Scalar>, start: i64) -> Result<()> {
    for (_, form) in expr.atoms() {
        let r = form.membership(start)?;
        if let Some(&(degree, n)) = r.offending.first() {
            return Err(Error::ModuleUndefined { degree, n });
        }
    }
    Ok(())
}

/// Exact defect matrix at weight `h` on the span of `z^n`, `start ≤ n < size`.
pub fn defect_matrix(kind: DefectKind, i: i64, j: i64, h: &Scalar, size: usize, start: usize) -> Result<VermaMatrix> {
    let cat = GeneratorCatalog::at_weight(h, 0)?;
    let expr = defect_expr(&cat, kind, i, j)?;
    require_membership(&expr, start as i64)?;
    matrix_of_expr(&expr, h, size, start)
}

/// `G·M(X) − M(Y)ᵀ·G` restricted to indices `< size − bandwidth`, where
/// `G = diag(g_n)`. Zero exactly when `Y` is the Gram adjoint of `X`.
pub fn gram_adjoint_residual(x: &VermaMatrix, y: &VermaMatrix, basis: &VermaBasis) -> Result<VermaMatrix> {
    basis.require_positive()?;
    let band = x.bandwidth().max(y.bandwidth()) as usize;
    let inner = x.size().min(basis.len()).saturating_sub(band);
    let mut images = Vec::with_capacity(inner);
    for n in 0..inner {
        let mut col = SparseVec::new();
        for m in 0..inner {
            let v = basis.norm(m).mul(&x.entry(m, n)).sub(&y.entry(n, m).mul(basis.norm(n)));
            if !v.is_zero() {
                col.insert(m as i64, v);
            }
        }
        images.push(col);
    }
    Ok(VermaMatrix::from_columns(x.h(), inner, images))
}

/// Residual of `L_k* = L_{−k}` on the interior band, for the `L` family
/// (which contains `l_{±1}` and `l_0`).
pub fn adjoint_check(h: &Scalar, size: usize, k: i64) -> Result<VermaMatrix> {
    let basis = verma_norms(h, size);
    basis.require_positive()?;
    let cat = GeneratorCatalog::at_weight(h, 0)?;
    let x = matrix_of_form(&cat.form_l(k)?, h, size)?;
    let y = matrix_of_form(&cat.form_l(-k)?, h, size)?;
    gram_adjoint_residual(&x, &y, &basis)
}
