//! Cross-checks of every fast-path result against the matrix realizations.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::casimir::{all_splitting_factors, character_filtration, eigenvalue, full_casimir_audit, splitting_factors, FiltrationLevel};
use crate::error::Result;
use crate::guard::Guardrails;
use crate::kostant::{chain_components, chain_euler_characteristic, homology_with, laplacian_eigenvalue};
use crate::oracle::algebra::{killing_dual_form_check, realize_algebra_with};
use crate::oracle::chain::{chain_complex_with, BruteComponent};
use crate::oracle::filtration::p_filtration;
use crate::oracle::module::{adapted_basis, build_irrep_with, casimir_from_bases, casimir_matrix};
use crate::parabolic::{filtration_pairing_check, ParabolicData};
use crate::rootsys::Weight;

/// Outcome of one named invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn new(name: &'static str, passed: bool, detail: impl Into<String>) -> Self {
        CheckResult {
            name,
            passed,
            detail: detail.into(),
        }
    }
}

pub const D_SQUARED: &str = "d_squared_zero";
pub const HOMOLOGY: &str = "homology_matches_kostant";
pub const CASIMIR_SCALAR: &str = "casimir_matrix_scalar";
pub const ADJOINT_CASIMIR: &str = "adjoint_casimir_identity";
pub const G0_FORMULA: &str = "g0_casimir_formula_on_quotients";
pub const LAPLACIAN_IDENTITY: &str = "casimir_laplacian_identity";
pub const DISJOINTNESS: &str = "laplacian_vanishes_exactly_on_homology";
pub const CHAIN_DECOMPOSITION: &str = "chain_decomposition_matches_characters";
pub const EULER: &str = "euler_characteristic";
pub const FILTRATION: &str = "p_filtration_trivial_quotients_unit_ladder";
pub const FILTRATION_LEVELS: &str = "p_filtration_matches_characters";
pub const SPLITTING: &str = "splitting_condition";
pub const P_PLUS_ACTION: &str = "p_plus_maps_cycles_to_boundaries";
pub const EQUIVARIANCE: &str = "codifferential_g0_equivariant";
pub const JACOBI: &str = "jacobi_and_antisymmetry";
pub const KILLING_DUAL: &str = "killing_dual_form";
pub const PAIRING: &str = "filtration_pairing";
pub const GRADING: &str = "bracket_respects_grading";
pub const ADAPTED: &str = "adapted_basis_pattern";
pub const BRACKETS: &str = "representation_respects_brackets";

fn sorted(mut v: Vec<(usize, Weight, usize)>) -> Vec<(usize, Weight, usize)> {
    v.sort();
    v
}

fn brute_signature(c: &[BruteComponent]) -> Vec<(usize, Weight, usize)> {
    sorted(c.iter().map(|c| (c.degree, c.lowest_weight.clone(), c.multiplicity)).collect())
}

/// Runs every oracle cross-check for `V` of highest weight `lambda`.
pub fn verify_all(pd: &ParabolicData, lambda: &Weight, guard: &Guardrails) -> Result<Vec<CheckResult>> {
    let rs = pd.root_system();
    let diagram = homology_with(pd, lambda, guard)?;
    let alg = realize_algebra_with(rs, guard)?;
    let rep = build_irrep_with(&alg, lambda, guard)?;
    let cc = chain_complex_with(&alg, pd, &rep, guard)?;
    let mut out = Vec::new();

    out.push(CheckResult::new(JACOBI, alg.antisymmetric() && alg.jacobi_holds(), ""));
    let dual = killing_dual_form_check(&alg, rs);
    out.push(CheckResult::new(
        KILLING_DUAL,
        dual == Ok(true),
        dual.err().map(|e| e.to_string()).unwrap_or_default(),
    ));
    out.push(CheckResult::new(PAIRING, filtration_pairing_check(pd, &alg).all_ok(), ""));
    out.push(CheckResult::new(GRADING, alg.respects_grading(|b| pd.layer_of(b)), ""));
    let ab = adapted_basis(&alg, pd)?;
    let cas = casimir_matrix(&alg, &rep);
    out.push(CheckResult::new(
        ADAPTED,
        ab.pattern_holds(&alg, pd) && casimir_from_bases(&rep, &ab.basis(), &ab.dual()) == cas,
        "",
    ));
    out.push(CheckResult::new(
        BRACKETS,
        rep.respects_brackets(&alg) && rep.weights_consistent(&alg),
        "",
    ));

    // d o d = 0
    out.push(CheckResult::new(D_SQUARED, cc.d_squared_zero(), format!("chain dim {}", cc.total_dim())));
    out.push(CheckResult::new(EQUIVARIANCE, cc.equivariant(), ""));

    // Kostant equals brute force
    let brute = cc.homology();
    let fast = sorted(
        diagram
            .signature()
            .into_iter()
            .map(|((d, w), m)| (d, w, m as usize))
            .collect(),
    );
    let brute_sig = brute_signature(&brute);
    out.push(CheckResult::new(
        HOMOLOGY,
        brute_sig == fast,
        if brute_sig == fast {
            format!("{} components", fast.len())
        } else {
            format!("kostant {fast:?} vs brute force {brute_sig:?}")
        },
    ));

    // Casimir scalars
    let expected = eigenvalue(rs, lambda);
    out.push(CheckResult::new(
        CASIMIR_SCALAR,
        cas.as_scalar().as_ref() == Some(&expected) && eigenvalue(rs, &diagram.lambda_low) == expected,
        format!("expected {expected}"),
    ));
    let theta = rs.root_to_weight(rs.highest_root());
    let adj = build_irrep_with(&alg, &theta, guard)?;
    let adj_c = casimir_matrix(&alg, &adj);
    out.push(CheckResult::new(
        ADJOINT_CASIMIR,
        adj_c.as_scalar() == Some(crate::linalg::q(1)),
        "",
    ));

    // g0 Casimir formula on p_+-trivial subquotients, and the filtration itself
    let filt = p_filtration(&alg, pd, &rep)?;
    let checks: usize = filt.levels.iter().map(|l| l.casimir.len()).sum();
    out.push(CheckResult::new(
        G0_FORMULA,
        filt.casimir_ok() && checks > 0,
        format!("{checks} irreducible subquotients"),
    ));
    out.push(CheckResult::new(
        FILTRATION,
        filt.quotients_trivial() && filt.unit_ladder(),
        format!("dims {:?}", filt.dims),
    ));
    let fast_levels = character_filtration(pd, lambda)?;
    let levels_agree = fast_levels.len() == filt.levels.len()
        && fast_levels.iter().zip(&filt.levels).all(|(a, b)| {
            let wa: Vec<(Weight, usize)> = a.components.iter().map(|(w, m, _)| (w.clone(), *m as usize)).collect();
            a.dimension == b.dim && Some(&a.grading_eigenvalue) == b.grading_eigenvalue.as_ref() && wa == b.components
        });
    out.push(CheckResult::new(FILTRATION_LEVELS, levels_agree, ""));

    // splitting condition, including a planted collision
    let reports = all_splitting_factors(pd, &fast_levels)?;
    let consistent = reports.iter().all(|r| {
        let differs = fast_levels
            .iter()
            .filter(|l| l.level > r.level)
            .all(|l| l.components.iter().all(|(_, _, mu)| mu != &r.mu0));
        r.splits == differs && r.splits == !r.product.is_zero()
    });
    let planted = {
        let target = &fast_levels[0];
        let (w, _, mu0) = target.components[0].clone();
        let mut planted = fast_levels.clone();
        planted.push(FiltrationLevel {
            level: fast_levels.len(),
            grading_eigenvalue: crate::linalg::q(0),
            dimension: 1,
            components: vec![(Weight::zero(rs.rank()), 1, mu0)],
        });
        let r = splitting_factors(pd, &planted, 0, &w)?;
        !r.splits && r.product.is_zero()
    };
    out.push(CheckResult::new(
        SPLITTING,
        consistent && planted,
        format!("{} targets", reports.len()),
    ));

    // Casimir = 2 Laplacian + c0, and disjointness using the oracle
    let audit = full_casimir_audit(pd, lambda)?;
    out.push(CheckResult::new(
        LAPLACIAN_IDENTITY,
        audit.iter().all(|e| e.identity_holds),
        format!("{} components", audit.len()),
    ));
    let chain_brute = cc.chain_components();
    let chain_fast: Vec<(usize, Weight, usize)> = sorted(
        chain_components(pd, lambda)?
            .into_iter()
            .enumerate()
            .flat_map(|(k, comps)| comps.into_iter().map(move |(w, m)| (k, w, m as usize)))
            .collect(),
    );
    out.push(CheckResult::new(
        CHAIN_DECOMPOSITION,
        brute_signature(&chain_brute) == chain_fast,
        "",
    ));
    let hom: BTreeMap<(usize, Weight), usize> = brute
        .iter()
        .map(|c| ((c.degree, c.lowest_weight.clone()), c.multiplicity))
        .collect();
    let mut disjoint = true;
    for c in &chain_brute {
        let in_h = hom.get(&(c.degree, c.lowest_weight.clone())).copied().unwrap_or(0);
        let lap = laplacian_eigenvalue(rs, &diagram.lambda_low, &-&c.lowest_weight);
        if in_h > 0 && !lap.is_zero() {
            disjoint = false;
        }
        if c.multiplicity > in_h && lap.is_zero() {
            disjoint = false;
        }
    }
    out.push(CheckResult::new(DISJOINTNESS, disjoint, ""));

    // Euler characteristic
    let chain_euler = chain_euler_characteristic(pd, lambda)?;
    let levi = pd.levi();
    let brute_euler: i64 = brute
        .iter()
        .map(|c| {
            let dim = levi.dimension(&levi.dominant_representative(&c.lowest_weight));
            let d: i64 = dim.to_integer().try_into().unwrap_or(i64::MAX);
            let s = if c.degree % 2 == 0 { 1 } else { -1 };
            s * d * c.multiplicity as i64
        })
        .sum();
    out.push(CheckResult::new(
        EULER,
        chain_euler == brute_euler && chain_euler == diagram.euler_characteristic(),
        format!("{chain_euler}"),
    ));

    // p_+ maps cycles to boundaries
    out.push(CheckResult::new(P_PLUS_ACTION, cc.p_plus_preserves_boundaries(), ""));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parabolic::ParabolicSpec;
    use crate::rootsys::{DynkinSpec, RootSystem};

    fn run(t: &str, crossed: &[usize], lambda: &[i64]) {
        let rs = RootSystem::new(t.parse::<DynkinSpec>().unwrap());
        let pd = ParabolicData::new(&rs, &ParabolicSpec::new(crossed.iter().copied())).unwrap();
        let res = verify_all(&pd, &Weight(lambda.to_vec()), &Guardrails::default()).unwrap();
        let failed: Vec<_> = res.iter().filter(|r| !r.passed).collect();
        assert!(failed.is_empty(), "{t} {crossed:?}: {failed:?}");
    }

    #[test]
    fn small_cases_pass() {
        run("A1", &[0], &[0]);
        run("A1", &[0], &[2]);
        run("A2", &[0, 1], &[1, 0]);
        run("A2", &[0], &[1, 1]);
        run("B2", &[1], &[0, 1]);
    }
}
