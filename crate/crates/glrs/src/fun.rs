//! The quantum coordinate algebra on n x n matrices: RTT presentation,
//! the quantum determinant by every construction route, quasi-centrality,
//! and the bialgebra checks.

use crate::ncpoly::{GeneratorId, NCPoly, Word};
use crate::perm::{inversions, permutations};
use crate::report::{timed, Report};
use crate::rewrite::{
    relations_from_matrix_equation, MatFactor, RewriteError, RewriteSystem, t_entry,
    DEFAULT_DEGREE_BOUND, DEFAULT_RULE_BOUND,
};
use crate::rmatrix::{
    build_eps_bra, build_eps_ket, build_matrix, build_rank_one, signed_power, EpsFamily, MatrixKind,
};
use crate::scalar::ScalarRS;
use crate::tensor::{all_indices, BasisIndex};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

pub struct FunPresentation {
    pub n: usize,
    pub system: RewriteSystem,
    /// raw extracted relations, kept for homomorphism checks
    pub relations: Vec<NCPoly>,
}

pub fn fun_alphabet(n: usize) -> Vec<GeneratorId> {
    let mut out = Vec::new();
    for i in 1..=n as u8 {
        for j in 1..=n as u8 {
            out.push(GeneratorId::t(i, j));
        }
    }
    out
}

fn cache() -> &'static Mutex<HashMap<usize, Arc<FunPresentation>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<FunPresentation>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

pub fn presentation_fun(n: usize) -> Result<Arc<FunPresentation>, RewriteError> {
    assert!((2..=4).contains(&n), "supported for 2 <= n <= 4");
    if let Some(p) = cache().lock().unwrap().get(&n) {
        return Ok(p.clone());
    }
    let rmat = build_matrix(n, MatrixKind::R).expect("valid n");
    let relations = relations_from_matrix_equation(
        n,
        &[
            MatFactor::Const(&rmat),
            MatFactor::Gen { entry: &t_entry, slot: 1 },
            MatFactor::Gen { entry: &t_entry, slot: 2 },
        ],
        &[
            MatFactor::Gen { entry: &t_entry, slot: 2 },
            MatFactor::Gen { entry: &t_entry, slot: 1 },
            MatFactor::Const(&rmat),
        ],
    );
    let system = RewriteSystem::complete(&relations, DEFAULT_DEGREE_BOUND, DEFAULT_RULE_BOUND)?;
    let built = Arc::new(FunPresentation { n, system, relations });
    cache().lock().unwrap().insert(n, built.clone());
    Ok(built)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DetRoute {
    ColSigma(Vec<u8>),
    RowSigma(Vec<u8>),
    ColReverse,
    RowReverse,
    EpsPairing,
}

impl DetRoute {
    pub fn label(&self) -> String {
        match self {
            DetRoute::ColSigma(eta) => format!("col_sigma({})", perm_label(eta)),
            DetRoute::RowSigma(eta) => format!("row_sigma({})", perm_label(eta)),
            DetRoute::ColReverse => "col_reverse".into(),
            DetRoute::RowReverse => "row_reverse".into(),
            DetRoute::EpsPairing => "eps_pairing".into(),
        }
    }

    pub fn parse(s: &str, n: usize) -> Option<Self> {
        let id: Vec<u8> = (1..=n as u8).collect();
        match s {
            "col_sigma" => Some(DetRoute::ColSigma(id)),
            "row_sigma" => Some(DetRoute::RowSigma(id)),
            "col_reverse" => Some(DetRoute::ColReverse),
            "row_reverse" => Some(DetRoute::RowReverse),
            "eps_pairing" => Some(DetRoute::EpsPairing),
            _ => None,
        }
    }
}

fn perm_label(p: &[u8]) -> String {
    p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("")
}

fn t_word(rows: &[u8], cols: &[u8]) -> Word {
    Word(
        rows.iter()
            .zip(cols.iter())
            .map(|(&i, &j)| GeneratorId::t(i, j))
            .collect(),
    )
}

/// The unreduced determinant sum for the given construction route.
pub fn quantum_det(n: usize, route: &DetRoute) -> NCPoly {
    assert!(n <= 4, "factorial expansion capped at n = 4");
    let perms = permutations(n);
    let mut out = NCPoly::zero();
    match route {
        DetRoute::ColSigma(eta) => {
            assert_eq!(eta.len(), n);
            let outer = signed_power(false, -inversions(eta));
            for sigma in &perms {
                let cols: Vec<u8> = eta.clone();
                let coeff = outer.mul(&signed_power(false, inversions(sigma)));
                out.add_term(t_word(sigma, &cols), coeff);
            }
        }
        DetRoute::RowSigma(eta) => {
            assert_eq!(eta.len(), n);
            let outer = signed_power(true, inversions(eta));
            for sigma in &perms {
                let coeff = outer.mul(&signed_power(true, -inversions(sigma)));
                out.add_term(t_word(eta, sigma), coeff);
            }
        }
        DetRoute::ColReverse => {
            for sigma in &perms {
                let rows: Vec<u8> = sigma.iter().rev().cloned().collect();
                let cols: Vec<u8> = (1..=n as u8).rev().collect();
                out.add_term(t_word(&rows, &cols), signed_power(false, -inversions(sigma)));
            }
        }
        DetRoute::RowReverse => {
            for sigma in &perms {
                let rows: Vec<u8> = (1..=n as u8).rev().collect();
                let cols: Vec<u8> = sigma.iter().rev().cloned().collect();
                out.add_term(t_word(&rows, &cols), signed_power(true, inversions(sigma)));
            }
        }
        DetRoute::EpsPairing => {
            let bra = build_eps_bra(n, EpsFamily::Minus);
            let ket = build_eps_ket(n, EpsFamily::Minus);
            for (i_idx, a) in bra.amplitudes() {
                for (j_idx, b) in ket.amplitudes() {
                    out.add_term(t_word(&i_idx.0, &j_idx.0), a.mul(b));
                }
            }
        }
    }
    out
}

/// The canonical reduced determinant: identity-column route, normal form.
pub fn det_reduced(p: &FunPresentation) -> NCPoly {
    let id: Vec<u8> = (1..=p.n as u8).collect();
    p.system.normal_form(&quantum_det(p.n, &DetRoute::ColSigma(id)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FunClaim {
    DetRouteEquivalence,
    Prop52,
    DetQuasiCentral,
    CoproductHom,
    OneParamReduction,
}

impl FunClaim {
    pub const ALL: [FunClaim; 5] = [
        FunClaim::DetRouteEquivalence,
        FunClaim::Prop52,
        FunClaim::DetQuasiCentral,
        FunClaim::CoproductHom,
        FunClaim::OneParamReduction,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            FunClaim::DetRouteEquivalence => "det_route_equivalence",
            FunClaim::Prop52 => "prop52",
            FunClaim::DetQuasiCentral => "det_quasi_central",
            FunClaim::CoproductHom => "coproduct_hom",
            FunClaim::OneParamReduction => "one_param_reduction",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|c| c.as_str() == s)
    }

    /// n values this claim runs at (others yield a skipped Report).
    pub fn supported_n(&self) -> std::ops::RangeInclusive<usize> {
        match self {
            FunClaim::DetRouteEquivalence => 2..=4,
            FunClaim::Prop52 => 2..=3,
            FunClaim::DetQuasiCentral => 2..=3,
            FunClaim::CoproductHom => 2..=3,
            FunClaim::OneParamReduction => 2..=4,
        }
    }
}

pub fn verify_fun(n: usize, claim: FunClaim) -> Report {
    timed(|| {
        if !claim.supported_n().contains(&n) {
            return Report::skipped(claim.as_str(), n, "outside supported n range");
        }
        let pres = match presentation_fun(n) {
            Ok(p) => p,
            Err(e) => return Report::fail(claim.as_str(), n, "completion", &e.to_string()),
        };
        match claim {
            FunClaim::DetRouteEquivalence => check_route_equivalence(&pres),
            FunClaim::Prop52 => check_prop52(&pres),
            FunClaim::DetQuasiCentral => check_quasi_central(&pres),
            FunClaim::CoproductHom => check_coproduct(&pres),
            FunClaim::OneParamReduction => check_one_param(&pres),
        }
    })
}

/// Reduce every defining relation to normal form; all must vanish. With
/// `corrupt` the reduction runs against a deliberately damaged copy of the
/// rules, so a nonzero witness must surface.
pub fn fun_integrity(n: usize, corrupt: bool) -> Report {
    timed(|| {
        let claim = "presentation_integrity";
        if !(2..=4).contains(&n) {
            return Report::skipped(claim, n, "outside supported n range");
        }
        let pres = match presentation_fun(n) {
            Ok(p) => p,
            Err(e) => return Report::fail(claim, n, "completion", &e.to_string()),
        };
        let system = if corrupt {
            pres.system.with_corrupted_rule()
        } else {
            pres.system.clone()
        };
        for (idx, rel) in pres.relations.iter().enumerate() {
            let nf = system.normal_form(rel);
            if !nf.is_zero() {
                return Report::fail(claim, n, &format!("relation {}", idx), &nf.to_string())
                    .with_param("corrupted", corrupt);
            }
        }
        Report::pass(claim, n).with_param("corrupted", corrupt)
    })
}

/// Compare a single construction route against the canonical reduced
/// determinant.
pub fn verify_det_route(n: usize, route: &DetRoute) -> Report {
    timed(|| {
        let claim = FunClaim::DetRouteEquivalence.as_str();
        if !(2..=4).contains(&n) {
            return Report::skipped(claim, n, "outside supported n range");
        }
        let pres = match presentation_fun(n) {
            Ok(p) => p,
            Err(e) => return Report::fail(claim, n, "completion", &e.to_string()),
        };
        let reference = det_reduced(&pres);
        let reduced = pres.system.normal_form(&quantum_det(n, route));
        let diff = reduced.sub(&reference);
        let report = if diff.is_zero() {
            Report::pass(claim, n)
        } else {
            Report::fail(claim, n, &route.label(), &diff.to_string())
        };
        report.with_param("route", route.label())
    })
}

fn routes_for(n: usize) -> Vec<DetRoute> {
    let id: Vec<u8> = (1..=n as u8).collect();
    let mut routes = vec![
        DetRoute::ColSigma(id.clone()),
        DetRoute::RowSigma(id),
        DetRoute::ColReverse,
        DetRoute::RowReverse,
    ];
    if n <= 3 {
        routes.push(DetRoute::EpsPairing);
        // the sigma routes must not depend on the fixed permutation
        for eta in permutations(n) {
            routes.push(DetRoute::ColSigma(eta.clone()));
            routes.push(DetRoute::RowSigma(eta));
        }
    }
    routes
}

fn check_route_equivalence(p: &FunPresentation) -> Report {
    let claim = FunClaim::DetRouteEquivalence.as_str();
    let routes = routes_for(p.n);
    let reference = p.system.normal_form(&quantum_det(p.n, &routes[0]));
    for route in &routes[1..] {
        let reduced = p.system.normal_form(&quantum_det(p.n, route));
        if reduced != reference {
            let diff = reduced.sub(&reference);
            return Report::fail(
                claim,
                p.n,
                &format!("{} vs {}", route.label(), routes[0].label()),
                &diff.to_string(),
            );
        }
    }
    Report::pass(claim, p.n)
}

fn check_prop52(p: &FunPresentation) -> Report {
    let claim = FunClaim::Prop52.as_str();
    let n = p.n;
    let a = build_rank_one(n, EpsFamily::Minus);
    let det = det_reduced(p);
    let perm_rows: Vec<BasisIndex> = permutations(n).into_iter().map(BasisIndex).collect();
    let full = all_indices(n, n);
    // left product: entry (I, J) of A T_1 ... T_n against det * A
    for i_idx in &perm_rows {
        for j_idx in &full {
            let mut lhs = NCPoly::zero();
            for k_idx in &perm_rows {
                let amp = a.entry(i_idx, k_idx);
                if !amp.is_zero() {
                    lhs.add_term(t_word(&k_idx.0, &j_idx.0), amp);
                }
            }
            let rhs = det.scale(&a.entry(i_idx, j_idx));
            let diff = p.system.normal_form(&lhs.sub(&rhs));
            if !diff.is_zero() {
                return Report::fail(claim, n, &format!("left ({:?},{:?})", i_idx.0, j_idx.0), &diff.to_string());
            }
        }
    }
    // right product: entry (I, J) of T_1 ... T_n A against det * A
    for j_idx in &perm_rows {
        for i_idx in &full {
            let mut lhs = NCPoly::zero();
            for k_idx in &perm_rows {
                let amp = a.entry(k_idx, j_idx);
                if !amp.is_zero() {
                    lhs.add_term(t_word(&i_idx.0, &k_idx.0), amp);
                }
            }
            let rhs = det.scale(&a.entry(i_idx, j_idx));
            let diff = p.system.normal_form(&lhs.sub(&rhs));
            if !diff.is_zero() {
                return Report::fail(claim, n, &format!("right ({:?},{:?})", i_idx.0, j_idx.0), &diff.to_string());
            }
        }
    }
    Report::pass(claim, n)
}

/// The scalar (rs)^(i-j) from the quasi-centrality statement.
pub fn quasi_central_scalar(i: u8, j: u8) -> ScalarRS {
    let e = i as i64 - j as i64;
    ScalarRS::monomial(e, e, crate::laurent::Rational::from_integer(1.into()))
}

fn check_quasi_central(p: &FunPresentation) -> Report {
    let claim = FunClaim::DetQuasiCentral.as_str();
    let det = det_reduced(p);
    for i in 1..=p.n as u8 {
        for j in 1..=p.n as u8 {
            let t_ij = NCPoly::gen(GeneratorId::t(i, j));
            let lhs = det.mul(&t_ij);
            let rhs = t_ij.mul(&det).scale(&quasi_central_scalar(i, j));
            let diff = p.system.normal_form(&lhs.sub(&rhs));
            if !diff.is_zero() {
                return Report::fail(claim, p.n, &format!("(i,j)=({},{})", i, j), &diff.to_string());
            }
        }
    }
    Report::pass(claim, p.n)
}

fn check_coproduct(p: &FunPresentation) -> Report {
    let claim = FunClaim::CoproductHom.as_str();
    let n = p.n as u8;
    let sq = match p.system.tensor_square(&fun_alphabet(p.n)) {
        Ok(s) => s,
        Err(e) => return Report::fail(claim, p.n, "tensor square completion", &e.to_string()),
    };
    let delta = |g: &GeneratorId| {
        let mut out = NCPoly::zero();
        for k in 1..=n {
            out = out.add(
                &NCPoly::gen(GeneratorId::t(g.i, k))
                    .mul(&NCPoly::gen(GeneratorId::t(k, g.j).with_copy(1))),
            );
        }
        out
    };
    let counit = |g: &GeneratorId| {
        if g.i == g.j {
            NCPoly::one()
        } else {
            NCPoly::zero()
        }
    };
    for (idx, rel) in p.relations.iter().enumerate() {
        let image = sq.normal_form(&rel.substitute(delta));
        if !image.is_zero() {
            return Report::fail(claim, p.n, &format!("coproduct of relation {}", idx), &image.to_string());
        }
        let killed = rel.substitute(counit);
        if !killed.is_zero() {
            return Report::fail(claim, p.n, &format!("counit of relation {}", idx), &killed.to_string());
        }
    }
    Report::pass(claim, p.n)
}

fn check_one_param(p: &FunPresentation) -> Report {
    let claim = FunClaim::OneParamReduction.as_str();
    let n = p.n;
    let id: Vec<u8> = (1..=n as u8).collect();
    let det_row = quantum_det(n, &DetRoute::RowSigma(id.clone()));
    // expected image: sum over sigma of (-q)^(l(sigma)) t_{1,sigma(1)}...
    for sigma in permutations(n) {
        let w = t_word(&id, &sigma);
        let actual = match det_row.coeff(&w).specialize_one_param() {
            Ok(v) => v,
            Err(e) => return Report::fail(claim, n, &format!("sigma={}", perm_label(&sigma)), &e.to_string()),
        };
        let l = inversions(&sigma);
        let minus_q = crate::scalar::ScalarQ::monomial(1, crate::laurent::Rational::from_integer((-1).into()));
        let mut expected = crate::scalar::ScalarQ::one();
        for _ in 0..l {
            expected = expected.mul(&minus_q);
        }
        if actual != expected {
            return Report::fail(
                claim,
                n,
                &format!("sigma={}", perm_label(&sigma)),
                &format!("{} != {}", actual, expected),
            );
        }
    }
    // centrality scalars collapse to 1
    for i in 1..=n as u8 {
        for j in 1..=n as u8 {
            match quasi_central_scalar(i, j).specialize_one_param() {
                Ok(v) if v.is_one() => {}
                Ok(v) => {
                    return Report::fail(claim, n, &format!("(i,j)=({},{})", i, j), &v.to_string())
                }
                Err(e) => {
                    return Report::fail(claim, n, &format!("(i,j)=({},{})", i, j), &e.to_string())
                }
            }
        }
    }
    Report::pass(claim, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(i: u8, j: u8) -> NCPoly {
        NCPoly::gen(GeneratorId::t(i, j))
    }

    fn r() -> ScalarRS {
        ScalarRS::var_r()
    }

    fn s() -> ScalarRS {
        ScalarRS::var_s()
    }

    #[test]
    fn presentation_n2_has_six_rules() {
        let p = presentation_fun(2).unwrap();
        assert_eq!(p.system.rules().len(), 6);
        assert!(p.system.complete);
    }

    #[test]
    fn extraction_contains_example_relation() {
        // t11 t12 = r^{-1} t12 t11 appears up to scalar
        let p = presentation_fun(2).unwrap();
        let target = t(1, 2)
            .mul(&t(1, 1))
            .sub(&t(1, 1).mul(&t(1, 2)).scale(&r()))
            .monic();
        assert!(p
            .relations
            .iter()
            .any(|rel| p.system.normal_form(rel).is_zero() || *rel == target || rel.monic() == target));
        // and the oriented system reduces it to zero
        assert!(p.system.normal_form(&target).is_zero());
    }

    #[test]
    fn example_relations_reduce_to_zero() {
        let p = presentation_fun(2).unwrap();
        let cases = vec![
            // t11 t21 = s t21 t11
            t(1, 1).mul(&t(2, 1)).sub(&t(2, 1).mul(&t(1, 1)).scale(&s())),
            // t12 t21 = rs t21 t12
            t(1, 2)
                .mul(&t(2, 1))
                .sub(&t(2, 1).mul(&t(1, 2)).scale(&r().mul(&s()))),
            // t11 t22 - t22 t11 = (s - r) t21 t12
            t(1, 1)
                .mul(&t(2, 2))
                .sub(&t(2, 2).mul(&t(1, 1)))
                .sub(&t(2, 1).mul(&t(1, 2)).scale(&s().sub(&r()))),
        ];
        for c in cases {
            assert!(p.system.normal_form(&c).is_zero(), "failed: {}", c);
        }
    }

    #[test]
    fn normal_form_matches_examples() {
        let p = presentation_fun(2).unwrap();
        // t21 t11 -> s^{-1} t11 t21
        let nf = p.system.normal_form(&t(2, 1).mul(&t(1, 1)));
        let expected = t(1, 1).mul(&t(2, 1)).scale(&s().inv().unwrap());
        assert_eq!(nf, expected);
        // t12 t21 -> rs t21 t12
        let nf2 = p.system.normal_form(&t(1, 2).mul(&t(2, 1)));
        let expected2 = t(2, 1).mul(&t(1, 2)).scale(&r().mul(&s()));
        assert_eq!(nf2, expected2);
    }

    #[test]
    fn pbw_counts_n2() {
        let p = presentation_fun(2).unwrap();
        let alphabet = fun_alphabet(2);
        // degree-2 count = C(4+1, 2) = 10
        assert_eq!(p.system.normal_words(&alphabet, 2).len(), 10);
        // degree-3 count = C(4+2, 3) = 20
        assert_eq!(p.system.normal_words(&alphabet, 3).len(), 20);
    }

    #[test]
    fn det_routes_n2() {
        let id = vec![1, 2];
        // col: t11 t22 - s t21 t12
        let col = quantum_det(2, &DetRoute::ColSigma(id.clone()));
        let expected_col = t(1, 1)
            .mul(&t(2, 2))
            .sub(&t(2, 1).mul(&t(1, 2)).scale(&s()));
        assert_eq!(col, expected_col);
        // row: t11 t22 - r^{-1} t12 t21
        let row = quantum_det(2, &DetRoute::RowSigma(id));
        let expected_row = t(1, 1)
            .mul(&t(2, 2))
            .sub(&t(1, 2).mul(&t(2, 1)).scale(&r().inv().unwrap()));
        assert_eq!(row, expected_row);
    }

    #[test]
    fn eps_pairing_reduces_to_col_form() {
        let p = presentation_fun(2).unwrap();
        let nf = p.system.normal_form(&quantum_det(2, &DetRoute::EpsPairing));
        let expected = t(1, 1)
            .mul(&t(2, 2))
            .sub(&t(2, 1).mul(&t(1, 2)).scale(&s()));
        assert_eq!(nf, expected);
    }

    #[test]
    fn quasi_central_example_entry() {
        let p = presentation_fun(2).unwrap();
        let det = det_reduced(&p);
        let lhs = det.mul(&t(1, 2));
        let rhs = t(1, 2)
            .mul(&det)
            .scale(&quasi_central_scalar(1, 2));
        assert!(p.system.normal_form(&lhs.sub(&rhs)).is_zero());
    }

    #[test]
    fn quasi_central_scalar_antisymmetry() {
        for i in 1..=3u8 {
            for j in 1..=3u8 {
                let a = quasi_central_scalar(i, j);
                let b = quasi_central_scalar(j, i);
                assert_eq!(a.mul(&b), ScalarRS::one());
            }
        }
    }

    #[test]
    fn verify_all_claims_n2() {
        for claim in FunClaim::ALL {
            let rep = verify_fun(2, claim);
            assert!(rep.pass, "{} failed: {:?}", claim.as_str(), rep.witness);
        }
    }

    #[test]
    fn pbw_count_n3_degree2() {
        let p = presentation_fun(3).unwrap();
        assert_eq!(p.system.normal_words(&fun_alphabet(3), 2).len(), 45);
    }
}
