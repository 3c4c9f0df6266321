//! End-to-end acceptance gate. Each test covers one release criterion and
//! prints a single pass/fail line for it.

use glrs::fun::{
    fun_alphabet, presentation_fun, quasi_central_scalar, verify_fun, FunClaim,
};
use glrs::ncpoly::GeneratorId;
use glrs::report::Report;
use glrs::rmatrix::{verify_identity, MatrixClaim};
use glrs::urs::{presentation_u, u_alphabet, verify_u, UClaim};
use std::process::Command;

fn gate(idx: usize, label: &str, reports: Vec<Report>) {
    let failures: Vec<String> = reports
        .iter()
        .filter(|r| !r.pass && r.skipped.is_none())
        .map(|r| {
            format!(
                "{} n={} {:?}",
                r.claim,
                r.n,
                r.witness.as_ref().map(|w| w.location.clone())
            )
        })
        .collect();
    let verdict = if failures.is_empty() { "pass" } else { "fail" };
    println!("criterion {idx:02} {label}: {verdict} ({} checks)", reports.len());
    assert!(failures.is_empty(), "criterion {idx} failed: {failures:?}");
}

#[test]
fn criterion_01_yang_baxter_and_braid() {
    let mut reports = Vec::new();
    for n in 2..=4 {
        reports.push(verify_identity(n, MatrixClaim::Ybe));
        reports.push(verify_identity(n, MatrixClaim::Braid));
    }
    gate(1, "yang_baxter_braid", reports);
}

#[test]
fn criterion_02_hecke_and_projectors() {
    let mut reports = Vec::new();
    for n in 2..=4 {
        reports.push(verify_identity(n, MatrixClaim::Hecke));
        reports.push(verify_identity(n, MatrixClaim::Spectral));
    }
    gate(2, "hecke_projectors", reports);
}

#[test]
fn criterion_03_eps_tensors() {
    let mut reports = Vec::new();
    for n in 2..=4 {
        reports.push(verify_identity(n, MatrixClaim::EpsDefiningMinus));
        reports.push(verify_identity(n, MatrixClaim::EpsDefiningPlus));
        reports.push(verify_identity(n, MatrixClaim::AnIdempotent));
    }
    for n in 2..=3 {
        reports.push(verify_identity(n, MatrixClaim::EpsUniqueness));
    }
    gate(3, "eps_tensors", reports);
}

#[test]
fn criterion_04_chain_lemmas() {
    let mut reports = Vec::new();
    for n in 2..=3 {
        reports.push(verify_identity(n, MatrixClaim::Lemma55));
        reports.push(verify_identity(n, MatrixClaim::Lemma35Right));
        reports.push(verify_identity(n, MatrixClaim::Lemma35Left));
    }
    gate(4, "chain_lemmas", reports);
}

/// Multisets of the given alphabet, of size `deg`, skipping any multiset that
/// uses both members of a forbidden pair.
fn commutative_count(k: usize, deg: usize, forbidden: &[(usize, usize)]) -> usize {
    fn rec(next: usize, k: usize, deg: usize, used: &mut Vec<usize>, forbidden: &[(usize, usize)]) -> usize {
        if deg == 0 {
            return 1;
        }
        let mut total = 0;
        for g in next..k {
            if forbidden
                .iter()
                .any(|&(a, b)| (g == a && used.contains(&b)) || (g == b && used.contains(&a)))
            {
                continue;
            }
            used.push(g);
            total += rec(g, k, deg - 1, used, forbidden);
            used.pop();
        }
        total
    }
    rec(0, k, deg, &mut Vec::new(), forbidden)
}

#[test]
fn criterion_05_completion_and_pbw() {
    let mut ok = true;
    let mut detail = String::new();
    for n in 2..=4 {
        let p = presentation_fun(n).expect("completion");
        ok &= p.system.complete && p.system.confluence_failures().is_empty();
        let alphabet = fun_alphabet(n);
        for deg in 0..=3 {
            let got = p.system.normal_words(&alphabet, deg).len();
            let want = commutative_count(alphabet.len(), deg, &[]);
            if got != want {
                ok = false;
                detail = format!("fun n={n} deg={deg}: {got} vs {want}");
            }
        }
    }
    for n in 2..=3usize {
        let p = presentation_u(n).expect("completion");
        ok &= p.system.complete && p.system.confluence_failures().is_empty();
        let alphabet = u_alphabet(n);
        // each diagonal generator cancels its inverse, so normal words never
        // mix a diagonal entry with its partner
        let mut forbidden = Vec::new();
        for i in 1..=n as u8 {
            for (gen, inv) in [
                (GeneratorId::l_plus(i, i), GeneratorId::k_plus_inv(i)),
                (GeneratorId::l_minus(i, i), GeneratorId::k_minus_inv(i)),
            ] {
                let a = alphabet.iter().position(|g| *g == gen).unwrap();
                let b = alphabet.iter().position(|g| *g == inv).unwrap();
                forbidden.push((a, b));
            }
        }
        for deg in 0..=3 {
            let got = p.system.normal_words(&alphabet, deg).len();
            let want = commutative_count(alphabet.len(), deg, &forbidden);
            if got != want {
                ok = false;
                detail = format!("u n={n} deg={deg}: {got} vs {want}");
            }
        }
    }
    let verdict = if ok { "pass" } else { "fail" };
    println!("criterion 05 completion_pbw: {verdict}");
    assert!(ok, "criterion 5 failed: {detail}");
}

#[test]
fn criterion_06_det_route_equivalence() {
    let mut reports = Vec::new();
    for n in 2..=4 {
        reports.push(verify_fun(n, FunClaim::DetRouteEquivalence));
    }
    gate(6, "det_routes", reports);
}

#[test]
fn criterion_07_det_quasi_central() {
    let mut reports = Vec::new();
    for n in 2..=3 {
        reports.push(verify_fun(n, FunClaim::DetQuasiCentral));
        reports.push(verify_fun(n, FunClaim::Prop52));
    }
    gate(7, "det_quasi_central", reports);
}

#[test]
fn criterion_08_casimir_quasi_central() {
    let mut reports = Vec::new();
    for n in 2..=3usize {
        for k in 0..=n {
            reports.push(verify_u(n, UClaim::Prop34, Some(k)));
            reports.push(verify_u(n, UClaim::Thm36Plus, Some(k)));
            reports.push(verify_u(n, UClaim::Thm36Minus, Some(k)));
        }
    }
    let mut scalars_one = true;
    for i in 1..=4u8 {
        for j in 1..=4u8 {
            let spec = quasi_central_scalar(i, j)
                .specialize_one_param()
                .expect("no pole at rs = 1");
            scalars_one &= spec.is_one();
        }
    }
    assert!(scalars_one, "quasi-centrality scalar fails to collapse at rs = 1");
    gate(8, "casimir_quasi_central", reports);
}

#[test]
fn criterion_09_gauss_generators() {
    let mut reports = Vec::new();
    for n in 2..=3 {
        reports.push(verify_u(n, UClaim::Prop42, None));
        reports.push(verify_u(n, UClaim::Prop43, None));
        reports.push(verify_u(n, UClaim::Prop44, None));
        reports.push(verify_u(n, UClaim::Prop45, None));
        reports.push(glrs::urs::gauss_reconstruction(n));
    }
    reports.push(verify_u(3, UClaim::Prop46, None));
    reports.push(verify_u(3, UClaim::Prop47, None));
    // the cross-row checks must carry both the computed and the asserted scalar
    for claim in [UClaim::Prop43, UClaim::Prop44] {
        let r = verify_u(2, claim, None);
        assert!(
            r.derived_scalar.is_some() && r.claimed_scalar.is_some(),
            "missing scalar report on {}",
            r.claim
        );
    }
    gate(9, "gauss_generators", reports);
}

#[test]
fn criterion_10_dj_relations() {
    let reports = vec![
        verify_u(2, UClaim::DjRelations, None),
        verify_u(3, UClaim::DjRelations, None),
    ];
    gate(10, "dj_relations", reports);
}

#[test]
fn criterion_11_determinism_and_fault_injection() {
    let bin = env!("CARGO_BIN_EXE_glrs");
    let run = || {
        let out = Command::new(bin)
            .args(["verify", "--suite", "all", "--n", "2", "--format", "json"])
            .output()
            .expect("spawn");
        assert!(out.status.success(), "verify run failed");
        let text = String::from_utf8(out.stdout).expect("utf8");
        text.lines()
            .filter(|l| !l.contains("\"millis\""))
            .collect::<Vec<_>>()
            .join("\n")
    };
    let first = run();
    let second = run();
    let deterministic = first == second;

    let fault = Command::new(bin)
        .args(["verify", "--suite", "u", "--n", "2", "--inject-fault"])
        .output()
        .expect("spawn");
    let fault_text = String::from_utf8_lossy(&fault.stdout).to_string();
    let fault_ok = fault.status.code() == Some(1) && fault_text.contains("witness");

    let verdict = if deterministic && fault_ok { "pass" } else { "fail" };
    println!("criterion 11 determinism_fault_injection: {verdict}");
    assert!(deterministic, "reports differ between identical runs");
    assert!(fault_ok, "fault injection did not fail with a witness (code {:?})", fault.status.code());
}
