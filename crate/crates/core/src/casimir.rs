//! Scalar Casimir data: eigenvalues on irreducible components, the identity
//! `c = 2 laplacian + c0` on graded chain spaces, and splitting-operator
//! products over a `p`-filtration.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use crate::character::Character;
use crate::error::{Error, Result};
use crate::kostant::{chain_components, decompose_g0_rep, homology, laplacian_eigenvalue, module_character};
use crate::linalg::{q, Q};
use crate::parabolic::ParabolicData;
use crate::rootsys::{RootSystem, Weight};

/// Casimir eigenvalue `<nu, nu> + 2 <nu, rho>` on an irreducible module of lowest weight `-nu`.
pub fn eigenvalue(rs: &RootSystem, nu: &Weight) -> Q {
    rs.inner(nu, nu) + q(2) * rs.inner(nu, &rs.rho())
}

/// The scalar by which the Casimir acts on `V`, whose lowest weight is `-lambda_low`.
pub fn c0(rs: &RootSystem, lambda_low: &Weight) -> Result<Q> {
    if lambda_low.len() != rs.rank() {
        return Err(Error::DimensionMismatch {
            expected: rs.rank(),
            got: lambda_low.len(),
        });
    }
    Ok(eigenvalue(rs, lambda_low))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenvalueReport {
    pub degree: usize,
    pub lowest_weight: Weight,
    pub multiplicity: i64,
    pub casimir: Q,
    pub laplacian: Q,
    pub c0: Q,
    pub identity_holds: bool,
    pub in_homology: bool,
}

/// One report per irreducible component of `Lambda^k p_+ (x) V`.
pub fn graded_casimir_audit(pd: &ParabolicData, lambda: &Weight, k: usize) -> Result<Vec<EigenvalueReport>> {
    Ok(full_casimir_audit(pd, lambda)?
        .into_iter()
        .filter(|r| r.degree == k)
        .collect())
}

/// [`graded_casimir_audit`] for every degree at once.
pub fn full_casimir_audit(pd: &ParabolicData, lambda: &Weight) -> Result<Vec<EigenvalueReport>> {
    let rs = pd.root_system();
    let diagram = homology(pd, lambda)?;
    let lambda_low = &diagram.lambda_low;
    let c0 = c0(rs, lambda_low)?;
    let hom: BTreeSet<(usize, Weight)> = diagram
        .components
        .iter()
        .map(|c| (c.degree, c.lowest_weight.clone()))
        .collect();
    let mut out = Vec::new();
    for (k, comps) in chain_components(pd, lambda)?.into_iter().enumerate() {
        for (lowest, multiplicity) in comps {
            let nu = -&lowest;
            let casimir = eigenvalue(rs, &nu);
            let laplacian = laplacian_eigenvalue(rs, lambda_low, &nu);
            let identity_holds = casimir == q(2) * &laplacian + &c0;
            out.push(EigenvalueReport {
                degree: k,
                in_homology: hom.contains(&(k, lowest.clone())),
                lowest_weight: lowest,
                multiplicity,
                casimir,
                laplacian,
                c0: c0.clone(),
                identity_holds,
            });
        }
    }
    Ok(out)
}

/// Irreducible components of one subquotient `W^j / W^{j+1}` of the `p`-filtration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationLevel {
    pub level: usize,
    /// Eigenvalue of the grading element on the whole subquotient.
    pub grading_eigenvalue: Q,
    pub dimension: usize,
    /// `(lowest weight, multiplicity, Casimir eigenvalue)`.
    pub components: Vec<(Weight, i64, Q)>,
}

/// The `p`-filtration of `V` computed from its character: level `j` collects
/// the weights on which the grading element takes its `j`-th smallest value.
/// Level `N` is the space of `p_+`-invariants.
pub fn character_filtration(pd: &ParabolicData, lambda: &Weight) -> Result<Vec<FiltrationLevel>> {
    let rs = pd.root_system();
    let ch = module_character(rs, lambda)?;
    let mut slices: BTreeMap<Q, Character> = BTreeMap::new();
    for (w, m) in ch {
        slices
            .entry(pd.grading_element().eval(&w))
            .or_default()
            .insert(w, m);
    }
    slices
        .into_iter()
        .enumerate()
        .map(|(level, (a, slice))| {
            let dimension = slice.values().sum::<i64>() as usize;
            let components = decompose_g0_rep(pd, &slice)?
                .into_iter()
                .map(|(low, m)| {
                    let mu = eigenvalue(rs, &-&low);
                    (low, m, mu)
                })
                .collect();
            Ok(FiltrationLevel {
                level,
                grading_eigenvalue: a,
                dimension,
                components,
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingReport {
    pub level: usize,
    pub target: Weight,
    pub mu0: Q,
    /// `(level j, distinct eigenvalues at level j)` for every `j > level`.
    pub factors: Vec<(usize, Vec<Q>)>,
    /// `prod (mu0 - mu)` over all listed eigenvalues.
    pub product: Q,
    pub splits: bool,
}

/// Scalar data of the splitting operator for the component of lowest weight
/// `target` at filtration level `level`.
pub fn splitting_factors(
    pd: &ParabolicData,
    filtration: &[FiltrationLevel],
    level: usize,
    target: &Weight,
) -> Result<SplittingReport> {
    let rs = pd.root_system();
    let found = filtration
        .iter()
        .find(|l| l.level == level)
        .is_some_and(|l| l.components.iter().any(|(w, _, _)| w == target));
    if !found {
        return Err(Error::TargetNotFound { level });
    }
    let mu0 = eigenvalue(rs, &-target);
    let mut factors = Vec::new();
    let mut product = Q::one();
    for l in filtration.iter().filter(|l| l.level > level) {
        let distinct: BTreeSet<Q> = l.components.iter().map(|(_, _, mu)| mu.clone()).collect();
        for mu in &distinct {
            product *= &mu0 - mu;
        }
        factors.push((l.level, distinct.into_iter().collect()));
    }
    Ok(SplittingReport {
        level,
        target: target.clone(),
        mu0,
        splits: !product.is_zero(),
        product,
        factors,
    })
}

/// Splitting reports for every component of every level.
pub fn all_splitting_factors(pd: &ParabolicData, filtration: &[FiltrationLevel]) -> Result<Vec<SplittingReport>> {
    let mut out = Vec::new();
    for l in filtration {
        for (w, _, _) in &l.components {
            out.push(splitting_factors(pd, filtration, l.level, w)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::qf;
    use crate::parabolic::ParabolicSpec;
    use crate::rootsys::{DynkinSpec, WeylWord};

    fn rs(t: &str) -> RootSystem {
        RootSystem::new(t.parse::<DynkinSpec>().unwrap())
    }

    fn pd(t: &str, crossed: &[usize]) -> ParabolicData {
        ParabolicData::new(&rs(t), &ParabolicSpec::new(crossed.iter().copied())).unwrap()
    }

    #[test]
    fn eigenvalue_examples() {
        let a1 = rs("A1");
        assert_eq!(eigenvalue(&a1, &Weight(vec![0])), q(0));
        assert_eq!(eigenvalue(&a1, &Weight(vec![2])), q(1));
        for t in ["A1", "A2", "B2", "A3", "B3", "C3", "G2", "D4", "F4", "E6"] {
            let r = rs(t);
            let theta = r.root_to_weight(r.highest_root());
            assert_eq!(eigenvalue(&r, &theta), q(1), "{t}");
            assert_eq!(c0(&r, &r.lowest_form(&theta)).unwrap(), q(1));
        }
    }

    #[test]
    fn c0_from_highest_and_lowest_agree() {
        let r = rs("A2");
        let lambda = Weight(vec![1, 0]);
        assert_eq!(c0(&r, &r.lowest_form(&lambda)).unwrap(), eigenvalue(&r, &lambda));
        assert_eq!(eigenvalue(&r, &lambda), qf(4, 9));
    }

    #[test]
    fn dot_orbit_invariance() {
        let r = rs("B3");
        let lambda = Weight(vec![1, 0, 1]);
        let c = eigenvalue(&r, &lambda);
        for w in r.enumerate_weyl(100).unwrap() {
            let nu = r.dot_action(&w.word, &lambda);
            assert_eq!(eigenvalue(&r, &nu), c);
        }
        assert_eq!(eigenvalue(&r, &r.dot_action(&WeylWord::identity(), &lambda)), c);
    }

    #[test]
    fn audit_identity_and_disjointness() {
        for (t, c) in [("A1", vec![0]), ("A2", vec![0]), ("B2", vec![0, 1]), ("G2", vec![1])] {
            let p = pd(t, &c);
            let r = p.root_system().clone();
            for lambda in [Weight::zero(r.rank()), r.fundamental_weight(0), r.root_to_weight(r.highest_root())] {
                let audit = full_casimir_audit(&p, &lambda).unwrap();
                for e in &audit {
                    assert!(e.identity_holds);
                    assert_eq!(e.laplacian.is_zero(), e.in_homology, "{t} {lambda} {e:?}");
                }
                assert_eq!(audit.iter().filter(|e| e.in_homology).count(), homology(&p, &lambda).unwrap().components.len());
            }
        }
    }

    #[test]
    fn a1_adjoint_degree_one() {
        let p = pd("A1", &[0]);
        let audit = graded_casimir_audit(&p, &Weight(vec![2]), 1).unwrap();
        let top = audit.iter().find(|e| e.lowest_weight == Weight(vec![4])).unwrap();
        assert_eq!(top.casimir, eigenvalue(p.root_system(), &Weight(vec![-4])));
        assert!(top.laplacian.is_zero() && top.in_homology);
        let mid = audit.iter().find(|e| e.lowest_weight == Weight(vec![2])).unwrap();
        assert!(!mid.in_homology);
        assert_eq!(mid.laplacian, qf(-1, 2));
        let deg0 = graded_casimir_audit(&p, &Weight(vec![2]), 0).unwrap();
        assert!(deg0.iter().any(|e| e.lowest_weight == Weight(vec![-2]) && e.casimir == q(1) && e.laplacian.is_zero()));
    }

    #[test]
    fn filtration_ladder_and_splitting() {
        let p = pd("A1", &[0]);
        let f = character_filtration(&p, &Weight(vec![2])).unwrap();
        let ladder: Vec<Q> = f.iter().map(|l| l.grading_eigenvalue.clone()).collect();
        assert_eq!(ladder, vec![q(-1), q(0), q(1)]);
        let mus: Vec<Q> = f.iter().map(|l| l.components[0].2.clone()).collect();
        // lowest weights -alpha, 0, alpha
        assert_eq!(mus, vec![q(1), q(0), q(0)]);
        let top = splitting_factors(&p, &f, 2, &Weight(vec![2])).unwrap();
        assert!(top.splits && top.factors.is_empty() && top.product == q(1));
        let bottom = splitting_factors(&p, &f, 0, &Weight(vec![-2])).unwrap();
        assert!(bottom.splits && bottom.product == q(1));
        let middle = splitting_factors(&p, &f, 1, &Weight(vec![0])).unwrap();
        assert!(!middle.splits);
        assert!(matches!(
            splitting_factors(&p, &f, 1, &Weight(vec![-2])),
            Err(Error::TargetNotFound { level: 1 })
        ));
    }

    #[test]
    fn duplicates_collapse() {
        let p = pd("A1", &[0]);
        let lvl = |level, comps: Vec<(Weight, i64, Q)>| FiltrationLevel {
            level,
            grading_eigenvalue: q(level as i64),
            dimension: comps.len(),
            components: comps,
        };
        let f = vec![
            lvl(0, vec![(Weight(vec![0]), 1, q(0))]),
            lvl(1, vec![(Weight(vec![2]), 1, q(3)), (Weight(vec![4]), 1, q(3))]),
        ];
        let r = splitting_factors(&p, &f, 0, &Weight(vec![0])).unwrap();
        assert_eq!(r.factors, vec![(1, vec![q(3)])]);
        assert_eq!(r.product, q(-3));
        assert!(r.splits);
    }
}
