//! Representations as explicit matrices, Casimir operators and adapted bases.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::guard::Guardrails;
use crate::linalg::{q, qf, sparse_axpy, QMatrix, SparseVec, Q};
use crate::oracle::algebra::{dual_bases, irreducible_generators, root_vectors, BasisLabel, LieAlgebraRealization};
use crate::parabolic::ParabolicData;
use crate::rootsys::Weight;

/// A module given by one action matrix per basis element of the acting
/// subalgebra. Basis vectors are weight vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepRealization {
    pub highest_weight: Option<Weight>,
    pub weights: Vec<Weight>,
    /// Algebra basis index -> action matrix.
    pub action: BTreeMap<usize, QMatrix>,
}

impl RepRealization {
    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn act(&self, a: usize) -> &QMatrix {
        &self.action[&a]
    }

    /// Action of a linear combination of basis elements, all of which must act.
    pub fn act_on(&self, x: &SparseVec) -> QMatrix {
        let mut m = QMatrix::zeros(self.dim(), self.dim());
        for (a, c) in x {
            m = &m + &self.action[a].scale(c);
        }
        m
    }

    /// The same module with only the given basis elements acting.
    pub fn restrict(&self, keep: impl Fn(usize) -> bool) -> RepRealization {
        RepRealization {
            highest_weight: self.highest_weight.clone(),
            weights: self.weights.clone(),
            action: self
                .action
                .iter()
                .filter(|(a, _)| keep(**a))
                .map(|(a, m)| (*a, m.clone()))
                .collect(),
        }
    }

    /// `rho([a, b]) = [rho(a), rho(b)]` for every pair of acting basis
    /// elements whose bracket only involves acting elements.
    pub fn respects_brackets(&self, alg: &LieAlgebraRealization) -> bool {
        self.action.iter().all(|(a, ma)| {
            self.action.iter().all(|(b, mb)| {
                let br = alg.bracket_basis(*a, *b);
                if !br.keys().all(|c| self.action.contains_key(c)) {
                    return true;
                }
                self.act_on(br) == ma.commutator(mb)
            })
        })
    }

    /// Each Cartan element acts diagonally through the weights of the basis.
    pub fn weights_consistent(&self, alg: &LieAlgebraRealization) -> bool {
        let n = alg.root_system().rank();
        (0..n).all(|i| {
            let h = alg.index_of(BasisLabel::H(i));
            match self.action.get(&h) {
                None => true,
                Some(m) => {
                    let mut d = QMatrix::zeros(self.dim(), self.dim());
                    for (k, w) in self.weights.iter().enumerate() {
                        d[(k, k)] = q(w.0[i]);
                    }
                    &d == m
                }
            }
        })
    }
}

/// The irreducible module of highest weight `lambda` with the whole algebra acting.
pub fn build_irrep(alg: &LieAlgebraRealization, lambda: &Weight) -> Result<RepRealization> {
    build_irrep_with(alg, lambda, &Guardrails::default())
}

pub fn build_irrep_with(alg: &LieAlgebraRealization, lambda: &Weight, guard: &Guardrails) -> Result<RepRealization> {
    let rs = alg.root_system();
    if lambda.len() != rs.rank() {
        return Err(Error::DimensionMismatch {
            expected: rs.rank(),
            got: lambda.len(),
        });
    }
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    let predicted = rs.weyl_dimension(lambda).to_integer();
    let predicted: u128 = predicted.try_into().unwrap_or(u128::MAX);
    Guardrails::check("representation dimension", predicted, guard.rep_dim)?;
    let (weights, gens) = irreducible_generators(rs, lambda);
    if weights.len() as u128 != predicted {
        return Err(Error::Internal(format!(
            "module of highest weight {lambda} has dimension {}, expected {predicted}",
            weights.len()
        )));
    }
    let (e, f) = root_vectors(&gens, alg.recipes());
    let mut action = BTreeMap::new();
    for (k, (me, mf)) in e.into_iter().zip(f).enumerate() {
        action.insert(alg.index_of(BasisLabel::E(k)), me);
        action.insert(alg.index_of(BasisLabel::F(k)), mf);
    }
    for (i, h) in gens.h.into_iter().enumerate() {
        action.insert(alg.index_of(BasisLabel::H(i)), h);
    }
    Ok(RepRealization {
        highest_weight: Some(lambda.clone()),
        weights,
        action,
    })
}

/// `sum_l rho(xi^l) rho(xi_l)` over Killing-dual bases.
pub fn casimir_matrix(alg: &LieAlgebraRealization, rep: &RepRealization) -> QMatrix {
    let (basis, dual) = dual_bases(alg);
    casimir_from_bases(rep, &basis, &dual)
}

pub fn casimir_from_bases(rep: &RepRealization, basis: &[SparseVec], dual: &[SparseVec]) -> QMatrix {
    let mut c = QMatrix::zeros(rep.dim(), rep.dim());
    for (x, y) in basis.iter().zip(dual) {
        c = &c + &(&rep.act_on(x) * &rep.act_on(y));
    }
    c
}

/// Basis `(X_i, A_r, Z^i)` of the algebra with `X_i` spanning a complement
/// of `p`, `A_r` spanning a complement of `p_+` in `p` and `Z^i` spanning
/// `p_+`, such that `B(X_i, Z^j) = delta`, `B(X_i, X_j) = 0` and
/// `B(X_i, A_r) = 0`. The dual basis is then `(Z^i, A^r, X_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdaptedBasis {
    pub x: Vec<SparseVec>,
    pub a: Vec<SparseVec>,
    pub z: Vec<SparseVec>,
    pub a_dual: Vec<SparseVec>,
}

impl AdaptedBasis {
    pub fn basis(&self) -> Vec<SparseVec> {
        self.x.iter().chain(&self.a).chain(&self.z).cloned().collect()
    }

    pub fn dual(&self) -> Vec<SparseVec> {
        self.z.iter().chain(&self.a_dual).chain(&self.x).cloned().collect()
    }

    /// Full pairing matrix of the basis against its dual; the identity when
    /// the pattern is right.
    pub fn pairing_matrix(&self, alg: &LieAlgebraRealization) -> QMatrix {
        let (b, d) = (self.basis(), self.dual());
        let mut m = QMatrix::zeros(b.len(), d.len());
        for (i, x) in b.iter().enumerate() {
            for (j, y) in d.iter().enumerate() {
                m[(i, j)] = alg.killing_form(x, y);
            }
        }
        m
    }

    pub fn pattern_holds(&self, alg: &LieAlgebraRealization, pd: &ParabolicData) -> bool {
        let b = |x: &SparseVec, y: &SparseVec| alg.killing_form(x, y);
        let in_layers = |v: &SparseVec, ok: &dyn Fn(i64) -> bool| {
            v.keys().all(|&k| ok(pd.layer_of(alg.basis_root(k))))
        };
        let xz = self.x.iter().enumerate().all(|(i, x)| {
            self.z.iter().enumerate().all(|(j, z)| b(x, z) == if i == j { q(1) } else { q(0) })
        });
        let xx = self.x.iter().all(|x| self.x.iter().all(|y| b(x, y).is_zero()));
        let xa = self.x.iter().all(|x| self.a.iter().all(|a| b(x, a).is_zero()));
        let z_in = self.z.iter().all(|z| in_layers(z, &|l| l > 0));
        let a_in = self.a.iter().all(|a| in_layers(a, &|l| l >= 0));
        let dim = self.x.len() + self.a.len() + self.z.len();
        xz && xx && xa && z_in && a_in && dim == alg.dim() && self.pairing_matrix(alg) == QMatrix::identity(dim)
    }
}

fn unit(a: usize) -> SparseVec {
    SparseVec::from([(a, Q::one())])
}

fn combine(terms: &[(Q, &SparseVec)]) -> SparseVec {
    let mut out = SparseVec::new();
    for (c, v) in terms {
        sparse_axpy(&mut out, c, v);
    }
    out
}

/// Adapted basis built from deliberately non-orthogonal starting vectors
/// `X~_i = F_beta + E_beta + H_1` and `A~_r = A_r + Z_1`, corrected as
/// `X_i = X~_i - 1/2 sum_j B(X~_i, X~_j) Z^j` and
/// `A_r = A~_r - sum_i B(X_i, A~_r) Z^i`.
pub fn adapted_basis(alg: &LieAlgebraRealization, pd: &ParabolicData) -> Result<AdaptedBasis> {
    let rs = alg.root_system();
    let h1 = alg.index_of(BasisLabel::H(0));
    let pplus: Vec<usize> = pd
        .p_plus_roots()
        .iter()
        .map(|b| alg.index_of(BasisLabel::E(rs.root_position(b).unwrap())))
        .collect();
    let x_tilde: Vec<SparseVec> = pd
        .p_plus_roots()
        .iter()
        .map(|b| {
            let k = rs.root_position(b).unwrap();
            SparseVec::from([
                (alg.index_of(BasisLabel::E(k)), Q::one()),
                (h1, Q::one()),
                (alg.index_of(BasisLabel::F(k)), Q::one()),
            ])
        })
        .collect();
    let m = pplus.len();
    // Z^j in p_+ with B(X~_i, Z^j) = delta
    let mut p = QMatrix::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            p[(i, j)] = alg.killing_form(&x_tilde[i], &unit(pplus[j]));
        }
    }
    let pinv = p
        .inverse()
        .ok_or_else(|| Error::Internal("p_+ is not dual to the complement of p".into()))?;
    let z: Vec<SparseVec> = (0..m)
        .map(|j| {
            let mut v = SparseVec::new();
            for k in 0..m {
                if !pinv[(k, j)].is_zero() {
                    v.insert(pplus[k], pinv[(k, j)].clone());
                }
            }
            v
        })
        .collect();
    let x: Vec<SparseVec> = x_tilde
        .iter()
        .map(|xi| {
            let mut terms: Vec<(Q, &SparseVec)> = vec![(Q::one(), xi)];
            for (j, xj) in x_tilde.iter().enumerate() {
                terms.push((-qf(1, 2) * alg.killing_form(xi, xj), &z[j]));
            }
            combine(&terms)
        })
        .collect();
    let levi: Vec<usize> = (0..alg.dim())
        .filter(|&a| pd.layer_of(alg.basis_root(a)) == 0)
        .collect();
    let tilt = pplus.first().copied();
    let a: Vec<SparseVec> = levi
        .iter()
        .map(|&r| {
            let mut at = unit(r);
            if let Some(t) = tilt {
                at.insert(t, Q::one());
            }
            let mut terms: Vec<(Q, &SparseVec)> = vec![(Q::one(), &at)];
            let coeffs: Vec<Q> = x.iter().map(|xi| -alg.killing_form(xi, &at)).collect();
            for (c, zi) in coeffs.iter().zip(&z) {
                terms.push((c.clone(), zi));
            }
            combine(&terms)
        })
        .collect();
    let mut g = QMatrix::zeros(a.len(), a.len());
    for (i, u) in a.iter().enumerate() {
        for (j, v) in a.iter().enumerate() {
            g[(i, j)] = alg.killing_form(u, v);
        }
    }
    let ginv = g
        .inverse()
        .ok_or_else(|| Error::Internal("Killing form degenerate on the Levi factor".into()))?;
    let a_dual: Vec<SparseVec> = (0..a.len())
        .map(|r| {
            let terms: Vec<(Q, &SparseVec)> = (0..a.len()).map(|s| (ginv[(s, r)].clone(), &a[s])).collect();
            combine(&terms)
        })
        .collect();
    Ok(AdaptedBasis { x, a, z, a_dual })
}

/// The operator `w -> -sum_i [Z^i, X_i] w + sum_r A^r A_r w` on a
/// `p`-module on which `p_+` acts trivially. `A_r`, `A^r` are Killing-dual
/// bases of `g_0`; `X_i = F_beta` and `Z^i` is the dual multiple of `E_beta`.
pub fn g0_casimir_formula(alg: &LieAlgebraRealization, pd: &ParabolicData, rep: &RepRealization) -> Result<QMatrix> {
    let rs = alg.root_system();
    for b in pd.p_plus_roots() {
        let e = alg.index_of(BasisLabel::E(rs.root_position(b).unwrap()));
        match rep.action.get(&e) {
            Some(m) if !m.is_zero() => {
                return Err(Error::Precondition(format!(
                    "p_+ acts nontrivially (root vector of {b})"
                )))
            }
            _ => {}
        }
    }
    let dim = rep.dim();
    let mut out = QMatrix::zeros(dim, dim);
    for b in pd.p_plus_roots() {
        let k = rs.root_position(b).unwrap();
        let (e, f) = (alg.index_of(BasisLabel::E(k)), alg.index_of(BasisLabel::F(k)));
        let pairing = alg.killing()[(f, e)].clone();
        // [Z^i, X_i] = [E, F] / B(F, E)
        let br: SparseVec = alg
            .bracket_basis(e, f)
            .iter()
            .map(|(c, x)| (*c, x / &pairing))
            .collect();
        out = &out - &rep.act_on(&br);
    }
    let levi: Vec<usize> = (0..alg.dim())
        .filter(|&a| pd.layer_of(alg.basis_root(a)) == 0)
        .collect();
    let mut g = QMatrix::zeros(levi.len(), levi.len());
    for (i, &u) in levi.iter().enumerate() {
        for (j, &v) in levi.iter().enumerate() {
            g[(i, j)] = alg.killing()[(u, v)].clone();
        }
    }
    let ginv = g
        .inverse()
        .ok_or_else(|| Error::Internal("Killing form degenerate on the Levi factor".into()))?;
    for (r, &ar) in levi.iter().enumerate() {
        let mut dual = SparseVec::new();
        for (s, &as_) in levi.iter().enumerate() {
            if !ginv[(s, r)].is_zero() {
                dual.insert(as_, ginv[(s, r)].clone());
            }
        }
        out = &out + &(&rep.act_on(&dual) * rep.act(ar));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::casimir::eigenvalue;
    use crate::oracle::algebra::realize_algebra;
    use crate::parabolic::ParabolicSpec;
    use crate::rootsys::{DynkinSpec, RootSystem};

    fn setup(t: &str) -> (RootSystem, LieAlgebraRealization) {
        let rs = RootSystem::new(t.parse::<DynkinSpec>().unwrap());
        let alg = realize_algebra(&rs).unwrap();
        (rs, alg)
    }

    #[test]
    fn irreps_and_casimir_scalars() {
        for t in ["A1", "A2", "B2", "G2", "A3", "B3", "C3"] {
            let (rs, alg) = setup(t);
            let n = rs.rank();
            let theta = rs.root_to_weight(rs.highest_root());
            for lambda in [Weight::zero(n), rs.fundamental_weight(0), theta.clone()] {
                let rep = build_irrep(&alg, &lambda).unwrap();
                assert_eq!(q(rep.dim() as i64), rs.weyl_dimension(&lambda));
                assert!(rep.respects_brackets(&alg), "{t} {lambda}");
                assert!(rep.weights_consistent(&alg));
                let c = casimir_matrix(&alg, &rep);
                assert_eq!(c.as_scalar(), Some(eigenvalue(&rs, &lambda)), "{t} {lambda}");
                assert_eq!(c.as_scalar(), Some(eigenvalue(&rs, &rs.lowest_form(&lambda))));
            }
            let adj = build_irrep(&alg, &theta).unwrap();
            assert_eq!(casimir_matrix(&alg, &adj), QMatrix::identity(alg.dim()));
        }
    }

    #[test]
    fn small_dimensions() {
        let (_, a1) = setup("A1");
        assert_eq!(build_irrep(&a1, &Weight(vec![1])).unwrap().dim(), 2);
        assert_eq!(build_irrep(&a1, &Weight(vec![2])).unwrap().dim(), 3);
        let (_, a2) = setup("A2");
        assert_eq!(build_irrep(&a2, &Weight(vec![1, 0])).unwrap().dim(), 3);
        assert!(casimir_matrix(&a2, &build_irrep(&a2, &Weight(vec![0, 0])).unwrap()).is_zero());
    }

    #[test]
    fn guardrail_on_large_modules() {
        let (_, a2) = setup("A2");
        let g = Guardrails {
            rep_dim: 10,
            ..Guardrails::default()
        };
        assert!(matches!(
            build_irrep_with(&a2, &Weight(vec![3, 3]), &g),
            Err(Error::Guardrail { .. })
        ));
    }

    #[test]
    fn adapted_basis_pattern_and_casimir() {
        for (t, crossed) in [("A1", vec![0]), ("A2", vec![0]), ("A2", vec![0, 1]), ("B2", vec![1]), ("G2", vec![0])] {
            let (rs, alg) = setup(t);
            let pd = ParabolicData::new(&rs, &ParabolicSpec::new(crossed.clone())).unwrap();
            let ab = adapted_basis(&alg, &pd).unwrap();
            assert!(ab.pattern_holds(&alg, &pd), "{t} {crossed:?}");
            assert_eq!(ab.x.len(), pd.p_plus_dim());
            let rep = build_irrep(&alg, &rs.fundamental_weight(0)).unwrap();
            assert_eq!(
                casimir_from_bases(&rep, &ab.basis(), &ab.dual()),
                casimir_matrix(&alg, &rep)
            );
        }
        let (rs, alg) = setup("A2");
        let pd = ParabolicData::new(&rs, &ParabolicSpec::new([0])).unwrap();
        let ab = adapted_basis(&alg, &pd).unwrap();
        assert_eq!((ab.x.len(), ab.a.len(), ab.z.len()), (2, 4, 2));
    }

    #[test]
    fn g0_formula_on_characters_of_the_borel() {
        for t in ["A1", "A2", "B2", "G2"] {
            let (rs, alg) = setup(t);
            let n = rs.rank();
            let pd = ParabolicData::new(&rs, &ParabolicSpec::borel(n)).unwrap();
            for w in [Weight::zero(n), rs.fundamental_weight(0), Weight(vec![-1; n]), rs.rho()] {
                let mut action = BTreeMap::new();
                for a in 0..alg.dim() {
                    if pd.layer_of(alg.basis_root(a)) >= 0 {
                        let mut m = QMatrix::zeros(1, 1);
                        if let BasisLabel::H(i) = alg.label(a) {
                            m[(0, 0)] = q(w.0[i]);
                        }
                        action.insert(a, m);
                    }
                }
                let rep = RepRealization {
                    highest_weight: None,
                    weights: vec![w.clone()],
                    action,
                };
                let m = g0_casimir_formula(&alg, &pd, &rep).unwrap();
                assert_eq!(m.as_scalar(), Some(eigenvalue(&rs, &-&w)), "{t} {w}");
            }
        }
    }

    #[test]
    fn g0_formula_rejects_nontrivial_p_plus() {
        let (rs, alg) = setup("A1");
        let pd = ParabolicData::new(&rs, &ParabolicSpec::borel(1)).unwrap();
        let rep = build_irrep(&alg, &Weight(vec![1])).unwrap();
        assert!(matches!(g0_casimir_formula(&alg, &pd, &rep), Err(Error::Precondition(_))));
    }
}
