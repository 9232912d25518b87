use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use vermacas::arith::{Field, Poly, Scalar, U};
use vermacas::asymptotics::{
    asymptotic_report, central_coefficient, finite_difference_check, format_linear, higher_order_expansion,
    order_swap_experiment, Reference, FD_HBAR, FD_INDEX,
};
use vermacas::generators::{
    f_relations_swapped, fd_commutation_alternating_sign, heisenberg_defect, mixed_defect, sl2_table,
    shared_symbolic_catalog, uniqueness_of_d, verify_berezin, verify_d_f_relations, verify_fd_commutation,
    verify_ff_commutation, verify_tensor_relation, verify_witt_halfplane, witt_defect, Weighted,
};
use vermacas::symbol::GradedOperator;
use vermacas::verma::{
    defect_expr, defect_matrix, finite_rank_check, hs_partial_norm, matrix_of_form, matrix_vs_symbol_consistency,
    DefectKind, VermaMatrix,
};
use vermacas::witt::{
    cocycle_identity_check, format_gauss, gauss, gelfand_fuchs, gelfand_fuchs_witt, normalize_to_virasoro,
    table_discrepancy_report, virasoro_bracket, C0Convention, GaussRat, TrigField, VirasoroElement, WittElement,
};
use vermacas::{format_scalar, int, rat, Error, Family, GeneratorCatalog, IdentityReport};

use crate::report::RunReport;
use crate::{CentralArgs, CliError, CocycleArgs, Command, DefectArgs, ExportArgs, FamilyArg, VerifyArgs};

type Outcome = Result<RunReport, CliError>;

/// Command name and configuration echo.
pub fn describe(command: &Command) -> (&'static str, Value) {
    match command {
        Command::VerifyExact(a) => (
            "verify-exact",
            json!({
                "h": a.h.as_ref().map(format_scalar),
                "max_index": a.max_index,
                "halfplane_bound": a.halfplane_bound,
                "inject_failure": a.inject_failure,
            }),
        ),
        Command::Defect(a) => (
            "defect",
            json!({
                "i": a.i,
                "j": a.j,
                "h": format_scalar(&a.h),
                "family": family_name(a.family),
                "truncations": a.truncations,
                "start": a.start,
            }),
        ),
        Command::CentralCharge(a) => {
            ("central-charge", json!({ "i": a.i, "h0": format_scalar(&a.h0), "order": a.order }))
        }
        Command::Cocycle(a) => (
            "cocycle",
            json!({
                "triples": a.triples,
                "seed": a.seed,
                "max_index": a.max_index,
                "table_compare": a.table_compare,
            }),
        ),
        Command::ExportMatrix(a) => (
            "export-matrix",
            json!({
                "op": a.op,
                "h": format_scalar(&a.h),
                "size": a.size,
                "i": a.i,
                "j": a.j,
                "family": family_name(a.family),
                "start": a.start,
            }),
        ),
    }
}

fn family_name(f: FamilyArg) -> &'static str {
    match f {
        FamilyArg::L => "L",
        FamilyArg::J => "J",
        FamilyArg::Mixed => "mixed",
    }
}

fn defect_kind(f: FamilyArg) -> DefectKind {
    match f {
        FamilyArg::L => DefectKind::Witt,
        FamilyArg::J => DefectKind::Heisenberg,
        FamilyArg::Mixed => DefectKind::Mixed,
    }
}

fn suite<F: Field>(reports: &[IdentityReport<F>]) -> Value {
    let failures: Vec<Value> = reports.iter().filter(|r| !r.passed).map(IdentityReport::to_json).collect();
    json!({
        "total": reports.len(),
        "passed": reports.iter().filter(|r| r.passed).count(),
        "failures": failures,
    })
}

fn upoly(c: &[i64]) -> Poly<Scalar, U> {
    Poly::from_coeffs(c.iter().map(|&x| int(x)).collect())
}

pub fn verify_exact(a: &VerifyArgs) -> Outcome {
    if a.max_index < 0 || a.halfplane_bound < 1 {
        return Err(CliError::Usage("max-index must be ≥ 0 and halfplane-bound ≥ 1".into()));
    }
    let (name, config) = describe(&Command::VerifyExact(VerifyArgs { h: a.h.clone(), ..*a }));
    let mut report = RunReport::new(name, config);
    match &a.h {
        None => run_suites(&GeneratorCatalog::symbolic(a.max_index + 1), a, &mut report)?,
        Some(h) => {
            let cat = GeneratorCatalog::at_weight(h, a.max_index + 1)?;
            run_suites(&cat, a, &mut report)?;
            let mut undefined = Vec::new();
            for family in [Family::L, Family::J] {
                for k in -a.max_index..=a.max_index {
                    let m = cat.membership(family, k, 0)?;
                    if !m.valid {
                        undefined.push(json!({ "generator": format!("{}{k}", family.name()), "offending": m.offending }));
                    }
                }
            }
            report.set("membership_failures", Value::Array(undefined));
        }
    }
    Ok(report)
}

fn run_suites<F: Weighted>(cat: &GeneratorCatalog<F>, a: &VerifyArgs, report: &mut RunReport) -> Result<(), CliError> {
    let add = |report: &mut RunReport, key: &str, label: String, reports: Vec<IdentityReport<F>>| {
        report.check(label, reports.iter().all(|r| r.passed));
        report.set(key, suite(&reports));
    };

    let sl2 = sl2_table(cat);
    add(report, "sl2_table", format!("sl2 brackets ({})", sl2.len()), sl2);
    let df = verify_d_f_relations(cat);
    add(report, "d_f_relations", format!("D and F relations ({})", df.len()), df);

    match verify_berezin(cat) {
        Ok(b) => add(report, "berezin", format!("Berezin relations ({})", b.len()), b),
        Err(Error::QrUndefined) => {
            report.set("berezin", json!({ "skipped": Error::QrUndefined.to_string() }));
        }
        Err(e) => return Err(e.into()),
    }

    let mut tensor = Vec::new();
    for family in [Family::L, Family::J] {
        for i in -1..=1 {
            for n in -a.max_index..=a.max_index {
                tensor.push(verify_tensor_relation(cat, i, n, family)?);
            }
        }
    }
    add(report, "tensor", format!("tensor relations ({})", tensor.len()), tensor);

    let b = a.halfplane_bound;
    let mut pairs: Vec<(i64, i64)> = Vec::new();
    for n in -1..=b {
        for m in -1..=b {
            pairs.push((n, m));
        }
    }
    for n in -b..=1 {
        for m in -b..=1 {
            if !pairs.contains(&(n, m)) {
                pairs.push((n, m));
            }
        }
    }
    let witt = pairs.iter().map(|&(n, m)| verify_witt_halfplane(cat, n, m)).collect::<Result<Vec<_>, _>>()?;
    add(report, "witt_halfplanes", format!("Witt half-plane relations ({})", witt.len()), witt);

    let polys = [upoly(&[0, 0, 1]), upoly(&[1, -2, 0, 1])];
    let mut fd = Vec::new();
    for n in -1..=3 {
        for f in &polys {
            fd.push(verify_fd_commutation(cat, n, f)?);
            fd.push(verify_ff_commutation(cat, n, f)?);
        }
    }
    add(report, "fd_commutation", format!("f(D) and f(F) commutation ({})", fd.len()), fd);

    let u = uniqueness_of_d();
    report.check("uniqueness of D", u.unique && u.is_xi);
    report.set(
        "uniqueness_of_d",
        json!({
            "unique": u.unique,
            "is_xi": u.is_xi,
            "solution": u.solution.map(|s| s.iter().map(format_scalar).collect::<Vec<_>>()),
        }),
    );

    let mut variants = f_relations_swapped(cat);
    variants.push(fd_commutation_alternating_sign(cat, 1, &polys[0]));
    report.set(
        "variant_forms",
        Value::Array(variants.iter().map(|r| json!({ "name": r.name, "holds": r.passed })).collect()),
    );

    if a.inject_failure {
        let lhs = cat.sl2(1).commutator(&cat.sl2(-1));
        let rhs = cat.sl2(0).scale(&F::from_int(3));
        let r = IdentityReport::new("[l1,l-1] = 3l0 (injected)", &lhs, &rhs);
        report.check(r.name.clone(), r.passed);
        report.set("injected", r.to_json());
    }
    Ok(())
}

pub fn defect(a: &DefectArgs) -> Outcome {
    let (name, config) = describe(&Command::Defect(DefectArgs { h: a.h.clone(), truncations: a.truncations.clone(), ..*a }));
    let ns = &a.truncations;
    if ns.is_empty() || ns[0] == 0 || ns.windows(2).any(|w| w[0] >= w[1]) {
        return Err(CliError::Usage("truncations must be positive and strictly increasing".into()));
    }
    let mut report = RunReport::new(name, config);
    let kind = defect_kind(a.family);
    report.set("kind", json!(kind.name()));

    let sym = shared_symbolic_catalog();
    let symbolic = match kind {
        DefectKind::Witt => witt_defect(sym, a.i, a.j),
        DefectKind::Heisenberg => heisenberg_defect(sym, a.i, a.j),
        DefectKind::Mixed => mixed_defect(sym, a.i, a.j),
    };
    let cat = GeneratorCatalog::at_weight(&a.h, 0)?;
    let expr = defect_expr(&cat, kind, a.i, a.j)?;
    let polynomial = expr.atoms().iter().all(|(_, f)| f.terms().iter().all(|t| t.den().is_one()));
    if symbolic.is_zero() && polynomial {
        report.check("defect vanishes identically", true);
        report.set("zero_defect", json!(true));
        return Ok(report);
    }
    report.set("zero_defect", json!(false));

    let n_max = *ns.last().expect("validated nonempty");
    let matrix = defect_matrix(kind, a.i, a.j, &a.h, n_max, a.start)?;
    report.check("defect defined on the module", true);
    report.set("matrix", matrix_stats(&matrix));

    match hs_partial_norm(&matrix, &a.truncations) {
        Ok(hs) => {
            report.check("Hilbert-Schmidt partial sums converge", hs.converged);
            report.set("hs", hs.to_json());
        }
        Err(e) => {
            report.check("Hilbert-Schmidt partial sums converge", false);
            report.set("hs", json!({ "error": e.to_string() }));
        }
    }
    report.set("rank", finite_rank_check(&matrix, &a.truncations).to_json());

    let window = n_max.min(64);
    let mismatches = matrix_vs_symbol_consistency(&expr, window)?;
    report.set(
        "symbol_mismatches",
        json!({
            "window": window,
            "count": mismatches.len(),
            "entries": mismatches.iter().take(16).map(|m| m.to_json()).collect::<Vec<_>>(),
        }),
    );
    Ok(report)
}

fn matrix_stats(m: &VermaMatrix) -> Value {
    let diagonal: Vec<String> = m.diagonal().iter().take(4).map(format_scalar).collect();
    json!({
        "size": m.size(),
        "bandwidth": m.bandwidth(),
        "nonzeros": m.entries().count(),
        "diagonal_head": diagonal,
    })
}

pub fn central_charge(a: &CentralArgs) -> Outcome {
    let (name, config) = describe(&Command::CentralCharge(CentralArgs { h0: a.h0.clone(), ..*a }));
    let mut report = RunReport::new(name, config);
    if a.i * a.i * a.i - a.i == 0 {
        return Err(Error::Precondition(format!("i³ − i vanishes at i = {}", a.i)).into());
    }
    let central = central_coefficient(a.i, &a.h0)?;
    let base = higher_order_expansion(a.i, -a.i, &a.h0, a.order, Reference::BaseWeight)?;
    let same = higher_order_expansion(a.i, -a.i, &a.h0, a.order, Reference::SameWeight)?;
    let swap = order_swap_experiment(a.i, &a.h0)?;
    let fd = finite_difference_check(a.i, &a.h0, &rat(FD_HBAR.0, FD_HBAR.1), FD_INDEX)?;

    report.check("order-0 coefficient empty (base-weight reference)", base.order_zero_empty());
    report.check("order-0 coefficient empty (same-weight reference)", same.order_zero_empty());
    report.check("residual g1 - kappa is Hilbert-Schmidt", central.hs_residual);
    report.check("order swap limit vanishes", swap.is_zero());
    report.check("finite-difference agreement", fd.passed);
    report.check(format!("kappa = (2/3)(i^3 - i) = {}", format_scalar(&central.predicted)), central.matches);

    report.set("asymptotics", asymptotic_report(a.i, &a.h0, a.order)?);
    report.set("central", central.to_json());
    report.set("kappa", json!(format_scalar(&central.kappa)));
    report.set("central_charge", json!(format_linear(&central.central_charge)));
    report.set("order_swap", json!(swap.to_string()));
    report.set("series", series_display(&base.coefficients));
    report.set("pole_log", base.to_json()["pole_log"].clone());
    report.set("same_weight_series", series_display(&same.coefficients));
    report.set("finite_difference", fd.to_json());
    Ok(report)
}

fn series_display(coeffs: &[GradedOperator<Scalar>]) -> Value {
    Value::Array(
        coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| {
                json!({
                    "order": k,
                    "components": c.components().map(|(d, s)| json!({ "degree": d, "symbol": s.to_string() })).collect::<Vec<_>>(),
                })
            })
            .collect(),
    )
}

fn random_witt(rng: &mut ChaCha8Rng, max_index: i64) -> WittElement<GaussRat> {
    let terms = rng.random_range(1..=3);
    WittElement::from_terms((0..terms).map(|_| {
        let k = rng.random_range(-max_index..=max_index);
        let re = rng.random_range(-5i64..=5);
        let im = rng.random_range(-5i64..=5);
        (k, gauss(int(re), int(im)))
    }))
}

pub fn cocycle(a: &CocycleArgs) -> Outcome {
    if a.max_index < 1 {
        return Err(CliError::Usage("max-index must be ≥ 1".into()));
    }
    let (name, config) = describe(&Command::Cocycle(CocycleArgs { ..*a }));
    let mut report = RunReport::new(name, config);
    let m = a.max_index;
    let t = |k: i64| TrigField::from_witt(&WittElement::basis(k));

    let mut antisymmetric = true;
    let mut cubic = true;
    let mut identity = true;
    let mut jacobi = true;
    for i in -m..=m {
        for j in -m..=m {
            let c = gelfand_fuchs(&t(i), &t(j));
            antisymmetric &= c == -gelfand_fuchs(&t(j), &t(i));
            let expected = if i + j == 0 { gauss(int(0), int(4 * i * i * i)) } else { gauss(int(0), int(0)) };
            cubic &= c == expected;
            for k in -m..=m {
                identity &= cocycle_identity_check(&t(i), &t(j), &t(k)).is_zero_gauss();
                let (x, y, z) = (VirasoroElement::basis(i), VirasoroElement::basis(j), VirasoroElement::<Scalar>::basis(k));
                let jac = virasoro_bracket(&x, &virasoro_bracket(&y, &z))
                    .add(&virasoro_bracket(&y, &virasoro_bracket(&z, &x)))
                    .add(&virasoro_bracket(&z, &virasoro_bracket(&x, &y)));
                jacobi &= jac.is_zero();
            }
        }
    }
    report.check("cocycle antisymmetric on basis pairs", antisymmetric);
    report.check("c(e_j, e_k) = 4*pi*i*j^3 on the diagonal j + k = 0", cubic);
    report.check("cocycle identity on basis triples", identity);
    report.check("Virasoro Jacobi identity on basis triples", jacobi);

    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let mut failures = Vec::new();
    for n in 0..a.triples {
        let (x, y, z) = (random_witt(&mut rng, m), random_witt(&mut rng, m), random_witt(&mut rng, m));
        let r = cocycle_identity_check(&TrigField::from_witt(&x), &TrigField::from_witt(&y), &TrigField::from_witt(&z));
        if !r.is_zero_gauss() {
            failures.push(json!({ "triple": n, "residual": format_gauss(&r) }));
        }
    }
    report.check(format!("cocycle identity on {} random triples", a.triples), failures.is_empty());
    report.set("random_triples", json!({ "count": a.triples, "seed": a.seed, "failures": failures }));

    let gf = |j: i64, k: i64| gelfand_fuchs_witt(&WittElement::basis(j), &WittElement::basis(k));
    let norm = normalize_to_virasoro(gf, m.max(6))?;
    report.check("normalization reproduces (j^3 - j)/12 for j <= 6", norm.verify(gf, 6));
    let mut n = norm.to_json();
    n["units"] = json!("cocycle values are coefficients of pi; lambda is a coefficient of 1/pi");
    report.set("normalization", n);

    if a.table_compare {
        let zero = table_discrepancy_report(6, C0Convention::Zero);
        let h = table_discrepancy_report(6, C0Convention::H);
        report.check("tabulated real-basis brackets match the Fourier computation (c0 = 0)", zero.discrepancies.is_empty());
        report.set("table", json!({ "c0_zero": zero.to_json(), "c0_h": h.to_json() }));
    }
    Ok(report)
}

trait GaussZero {
    fn is_zero_gauss(&self) -> bool;
}

impl GaussZero for GaussRat {
    fn is_zero_gauss(&self) -> bool {
        num::Zero::is_zero(self)
    }
}

pub fn export_matrix(a: &ExportArgs) -> Outcome {
    let (name, config) = describe(&Command::ExportMatrix(ExportArgs { op: a.op.clone(), h: a.h.clone(), ..*a }));
    let mut report = RunReport::new(name, config);
    let matrix = if a.op == "defect" {
        let (Some(i), Some(j)) = (a.i, a.j) else {
            return Err(CliError::Usage("--op defect needs --i and --j".into()));
        };
        defect_matrix(defect_kind(a.family), i, j, &a.h, a.size, a.start)?
    } else {
        let cat = GeneratorCatalog::at_weight(&a.h, 0)?;
        let form = parse_op(&cat, &a.op)?;
        let m = form.membership(a.start as i64)?;
        if let Some(&(degree, n)) = m.offending.first() {
            return Err(Error::ModuleUndefined { degree, n }.into());
        }
        matrix_of_form(&form, &a.h, a.size)?
    };
    report.check("matrix built", true);
    report.set("matrix", matrix.to_json());
    report.csv = Some(matrix.to_csv());
    Ok(report)
}

fn parse_op(cat: &GeneratorCatalog<Scalar>, op: &str) -> Result<vermacas::MonomialForm<Scalar>, CliError> {
    let bad = || CliError::Usage(format!("unknown operator {op:?}; expected L<k>, J<k>, l<k>, D, F or defect"));
    let index = |s: &str| s.parse::<i64>().map_err(|_| bad());
    Ok(match op {
        "D" => cat.form_j(1)?,
        "F" => cat.form_j(-1)?,
        _ if op.starts_with('L') => cat.form_l(index(&op[1..])?)?,
        _ if op.starts_with('J') => cat.form_j(index(&op[1..])?)?,
        _ if op.starts_with('l') => {
            let k = index(&op[1..])?;
            if !(-1..=1).contains(&k) {
                return Err(bad());
            }
            cat.form_sl2(k)?
        }
        _ => return Err(bad()),
    })
}
