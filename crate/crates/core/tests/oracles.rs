//! Cross-checks against direct evaluation of the generator formulas on `z^n`,
//! written without the symbol machinery.

use num::{Signed, ToPrimitive, Zero};
use vermacas::asymptotics::{central_coefficient, finite_difference_check, order_swap_experiment};
use vermacas::verma::{adjoint_check, defect_matrix, finite_rank_check, hs_partial_norm, verma_norms, DefectKind};
use vermacas::{int, rat, Scalar};

fn falling(n: i64, k: i64) -> Scalar {
    (0..k).fold(int(1), |acc, t| acc * int(n - t))
}

/// `L_k z^n = c·z^{n−k}` for `k > 0`.
fn lower(k: i64, h: &Scalar, n: i64) -> Scalar {
    if n < k {
        return Scalar::zero();
    }
    (int(n - k) + int(k + 1) * h) * falling(n, k)
}

/// `L_{−k} z^n = c·z^{n+k}` for `k > 0`.
fn raise(k: i64, h: &Scalar, n: i64) -> Scalar {
    let den = (0..k).fold(int(1), |acc, t| acc * (int(n + t) + int(2) * h));
    (int(n) + int(k + 1) * h) / den
}

/// Diagonal entry of `[L_i, L_{−i}]` at `z^n`.
fn bracket_diag(i: i64, h: &Scalar, n: i64) -> Scalar {
    raise(i, h, n) * lower(i, h, n + i) - lower(i, h, n) * if n >= i { raise(i, h, n - i) } else { Scalar::zero() }
}

#[test]
fn central_coefficient_matches_direct_difference_quotient() {
    let eps = rat(1, 1_000_000_000_000);
    let n = 100_000;
    for h0 in [rat(1, 2), int(1)] {
        for i in 2..=4 {
            let quotient = (bracket_diag(i, &(h0.clone() + eps.clone()), n) - bracket_diag(i, &h0, n)) / eps.clone();
            let report = central_coefficient(i, &h0).unwrap();
            let gap = (quotient - report.kappa.clone()).abs().to_f64().unwrap();
            assert!(gap < 1e-3, "i={i} h0={h0}: gap {gap}");
            assert_eq!(report.kappa, int(2 * i));
            assert!(report.hs_residual);
        }
    }
}

#[test]
fn order_zero_matches_direct_bracket() {
    for h0 in [rat(1, 2), int(1)] {
        for i in 2..=4 {
            for n in [i + 2, 20, 57] {
                assert_eq!(bracket_diag(i, &h0, n), int(2 * i) * (int(n) + h0.clone()), "i={i} n={n}");
            }
        }
    }
}

#[test]
fn same_weight_limit_matches_direct_tail() {
    let h = rat(1, 2) + rat(1, 1000);
    let n = 1_000_000;
    for i in 2..=3 {
        let tail = bracket_diag(i, &h, n) - int(2 * i) * (int(n) + h.clone());
        assert!(tail.abs().to_f64().unwrap() < 1e-3);
        assert!(order_swap_experiment(i, &rat(1, 2)).unwrap().is_zero());
    }
}

#[test]
fn finite_difference_entry_matches_direct_formula() {
    let hb = rat(1, 10_000);
    let r = finite_difference_check(2, &rat(1, 2), &hb, 50).unwrap();
    let direct = bracket_diag(2, &(rat(1, 2) + hb), 50) - int(4) * (int(50) + rat(1, 2));
    assert_eq!(r.exact, direct);
    assert!(r.passed);
}

#[test]
fn defect_matrix_matches_direct_formula() {
    let h = rat(3, 4);
    let a = defect_matrix(DefectKind::Witt, 2, -2, &h, 40, 0).unwrap();
    for n in 0..40 {
        let expected = bracket_diag(2, &h, n as i64) - int(4) * (int(n as i64) + h.clone());
        assert_eq!(a.entry(n, n), expected);
    }
    let corner = defect_matrix(DefectKind::Witt, 2, -2, &rat(1, 2), 40, 0).unwrap();
    assert_eq!(corner.entry(0, 0), bracket_diag(2, &rat(1, 2), 0) - int(2));
    assert_eq!(corner.entry(0, 0), rat(1, 4));
}

#[test]
fn gram_norms_satisfy_adjoint_recursion() {
    // ⟨l_{−1} z^n, z^{n+1}⟩ = ⟨z^n, l_1 z^{n+1}⟩ forces g_{n+1} = (n+1)(n+2h)·g_n.
    let h = rat(5, 4);
    let b = verma_norms(&h, 12);
    for n in 0..11 {
        let l1 = int(n as i64 + 1) * (int(n as i64) + int(2) * h.clone());
        assert_eq!(b.norm(n + 1).clone(), l1 * b.norm(n).clone());
    }
    for k in [-3, -2, -1, 1, 2, 3] {
        assert!(adjoint_check(&rat(3, 4), 32, k).unwrap().is_zero(), "k={k}");
    }
}

#[test]
fn hs_and_rank_controls() {
    let a = defect_matrix(DefectKind::Witt, 2, -2, &rat(1, 2), 64, 0).unwrap();
    assert_eq!(hs_partial_norm(&a, &[8, 64]).unwrap().partial_sums, vec![rat(1, 8); 2]);
    assert_eq!(finite_rank_check(&a, &[32, 64]).ranks, vec![2, 2]);
    let control = defect_matrix(DefectKind::Witt, 2, -2, &rat(3, 4), 128, 0).unwrap();
    let r = finite_rank_check(&control, &[64, 128]);
    assert!(r.ranks[1] > r.ranks[0]);
}
