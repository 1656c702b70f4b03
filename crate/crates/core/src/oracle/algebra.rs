//! Matrix realization of a simple Lie algebra from its Chevalley generators.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::guard::Guardrails;
use crate::linalg::{q, sparse_add_entry, sparse_axpy, QMatrix, SparseVec, Q};
use crate::rootsys::{Root, RootSystem, Weight};

/// Basis element of the realized algebra. Indices of `E`/`F` refer to
/// [`RootSystem::positive_roots`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisLabel {
    E(usize),
    H(usize),
    F(usize),
}

/// How a root vector is obtained from the generators: `E_beta = [e_i, E_gamma]`
/// and `F_beta = [f_i, F_gamma]` with `beta = gamma + alpha_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Recipe {
    Simple(usize),
    Bracket { node: usize, from: usize },
}

/// Generator matrices `e_i, f_i, h_i` of a representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generators {
    pub e: Vec<QMatrix>,
    pub f: Vec<QMatrix>,
    pub h: Vec<QMatrix>,
}

/// Irreducible highest weight module built from a highest weight vector by
/// lowering operators. A vector below the top is zero iff every raising
/// operator kills it, so each weight space is cut out exactly by the images
/// under the `e_i`.
pub(crate) fn irreducible_generators(rs: &RootSystem, lambda: &Weight) -> (Vec<Weight>, Generators) {
    let n = rs.rank();
    let simple: Vec<Weight> = (0..n).map(|i| rs.root_to_weight(&rs.simple_root(i))).collect();
    // per basis vector: weight, e_i image and f_i image as sparse vectors
    let mut weights: Vec<Weight> = vec![lambda.clone()];
    let mut e_img: Vec<Vec<SparseVec>> = vec![vec![SparseVec::new(); n]];
    let mut f_img: Vec<Vec<SparseVec>> = vec![vec![SparseVec::new(); n]];
    let mut level: Vec<usize> = vec![0];
    while !level.is_empty() {
        // candidates f_j b grouped by weight
        let mut cands: BTreeMap<Weight, Vec<(usize, usize)>> = BTreeMap::new();
        for &b in &level {
            for j in 0..n {
                cands.entry(&weights[b] - &simple[j]).or_default().push((b, j));
            }
        }
        let mut next = Vec::new();
        for (mu, list) in cands {
            // image of f_j b under e_i: f_j (e_i b) + [i == j] mu_b(h_i) b
            let sigs: Vec<Vec<SparseVec>> = list
                .iter()
                .map(|&(b, j)| {
                    (0..n)
                        .map(|i| {
                            let mut out = SparseVec::new();
                            for (c, x) in &e_img[b][i] {
                                sparse_axpy(&mut out, x, &f_img[*c][j]);
                            }
                            if i == j {
                                sparse_add_entry(&mut out, b, q(weights[b].0[i]));
                            }
                            out
                        })
                        .collect()
                })
                .collect();
            // rows indexed by (i, target vector of weight mu + alpha_i)
            let mut row_of: BTreeMap<(usize, usize), usize> = BTreeMap::new();
            for s in &sigs {
                for (i, v) in s.iter().enumerate() {
                    for c in v.keys() {
                        let len = row_of.len();
                        row_of.entry((i, *c)).or_insert(len);
                    }
                }
            }
            if row_of.is_empty() {
                continue;
            }
            let mut m = QMatrix::zeros(row_of.len(), list.len());
            for (col, s) in sigs.iter().enumerate() {
                for (i, v) in s.iter().enumerate() {
                    for (c, x) in v {
                        m[(row_of[&(i, *c)], col)] = x.clone();
                    }
                }
            }
            let red = m.rref();
            let start = weights.len();
            for (k, &p) in red.pivots.iter().enumerate() {
                let idx = start + k;
                weights.push(mu.clone());
                e_img.push(sigs[p].clone());
                f_img.push(vec![SparseVec::new(); n]);
                next.push(idx);
            }
            // f_j b = sum of pivot vectors with the rref column as coefficients
            for (col, &(b, j)) in list.iter().enumerate() {
                let mut v = SparseVec::new();
                for (k, _) in red.pivots.iter().enumerate() {
                    let x = &red.matrix[(k, col)];
                    if !x.is_zero() {
                        v.insert(start + k, x.clone());
                    }
                }
                f_img[b][j] = v;
            }
        }
        level = next;
    }
    let dim = weights.len();
    let mut gens = Generators {
        e: vec![QMatrix::zeros(dim, dim); n],
        f: vec![QMatrix::zeros(dim, dim); n],
        h: vec![QMatrix::zeros(dim, dim); n],
    };
    for b in 0..dim {
        for i in 0..n {
            for (c, x) in &e_img[b][i] {
                gens.e[i][(*c, b)] = x.clone();
            }
            for (c, x) in &f_img[b][i] {
                gens.f[i][(*c, b)] = x.clone();
            }
            gens.h[i][(b, b)] = q(weights[b].0[i]);
        }
    }
    (weights, gens)
}

#[derive(Clone, Debug)]
pub struct LieAlgebraRealization {
    rs: RootSystem,
    labels: Vec<BasisLabel>,
    roots: Vec<Root>,
    index: BTreeMap<BasisLabel, usize>,
    recipes: Vec<Recipe>,
    /// `brackets[a * dim + b]` holds the coordinates of `[a, b]`.
    brackets: Vec<SparseVec>,
    killing: QMatrix,
}

pub fn realize_algebra(rs: &RootSystem) -> Result<LieAlgebraRealization> {
    realize_algebra_with(rs, &Guardrails::default())
}

pub fn realize_algebra_with(rs: &RootSystem, guard: &Guardrails) -> Result<LieAlgebraRealization> {
    let n = rs.rank();
    let pos = rs.positive_roots();
    let dim = 2 * pos.len() + n;
    Guardrails::check("Lie algebra dimension", dim as u128, guard.algebra_dim)?;

    let recipes: Vec<Recipe> = pos
        .iter()
        .map(|beta| {
            if beta.height() == 1 {
                return Recipe::Simple(beta.0.iter().position(|&c| c == 1).unwrap());
            }
            (0..n)
                .find_map(|i| {
                    let gamma = beta - &rs.simple_root(i);
                    rs.root_position(&gamma).map(|from| Recipe::Bracket { node: i, from })
                })
                .expect("every non-simple positive root has a predecessor")
        })
        .collect();

    // smallest faithful fundamental module
    let faithful = (0..n)
        .map(|i| rs.fundamental_weight(i))
        .min_by_key(|w| rs.weyl_dimension(w))
        .unwrap();
    let (_, gens) = irreducible_generators(rs, &faithful);
    let (e_mats, f_mats) = root_vectors(&gens, &recipes);

    let mut labels = Vec::with_capacity(dim);
    let mut roots = Vec::with_capacity(dim);
    let mut mats = Vec::with_capacity(dim);
    for (k, b) in pos.iter().enumerate() {
        labels.push(BasisLabel::E(k));
        roots.push(b.clone());
        mats.push(e_mats[k].clone());
    }
    for i in 0..n {
        labels.push(BasisLabel::H(i));
        roots.push(Root::zero(n));
        mats.push(gens.h[i].clone());
    }
    for (k, b) in pos.iter().enumerate() {
        labels.push(BasisLabel::F(k));
        roots.push(-b);
        mats.push(f_mats[k].clone());
    }
    let index: BTreeMap<BasisLabel, usize> = labels.iter().enumerate().map(|(i, l)| (*l, i)).collect();
    let by_root: BTreeMap<&Root, usize> = roots
        .iter()
        .enumerate()
        .filter(|(_, r)| !r.is_zero())
        .map(|(i, r)| (r, i))
        .collect();

    // Cartan elements are diagonal: solve on the diagonal
    let diag = {
        let d = mats[pos.len()].rows();
        let mut m = QMatrix::zeros(d, n);
        for i in 0..n {
            for r in 0..d {
                m[(r, i)] = gens.h[i][(r, r)].clone();
            }
        }
        m
    };
    let express = |m: &QMatrix, root: &Root| -> Result<SparseVec> {
        let mut out = SparseVec::new();
        if m.is_zero() {
            return Ok(out);
        }
        if root.is_zero() {
            let d: Vec<Q> = (0..m.rows()).map(|r| m[(r, r)].clone()).collect();
            let x = diag
                .solve(&d)
                .ok_or_else(|| Error::Internal("bracket outside the Cartan subalgebra".into()))?;
            for (i, c) in x.into_iter().enumerate() {
                if !c.is_zero() {
                    out.insert(pos.len() + i, c);
                }
            }
            return Ok(out);
        }
        let &t = by_root
            .get(root)
            .ok_or_else(|| Error::Internal(format!("nonzero bracket of weight {root}, not a root")))?;
        let target = &mats[t];
        let (r, c) = first_nonzero(target).expect("root vectors are nonzero");
        let coeff = &m[(r, c)] / &target[(r, c)];
        if &target.scale(&coeff) != m {
            return Err(Error::Internal("root space is not one-dimensional".into()));
        }
        out.insert(t, coeff);
        Ok(out)
    };
    let mut brackets = vec![SparseVec::new(); dim * dim];
    for a in 0..dim {
        for b in (a + 1)..dim {
            let root = &roots[a] + &roots[b];
            let v = express(&mats[a].commutator(&mats[b]), &root)?;
            let neg: SparseVec = v.iter().map(|(k, x)| (*k, -x)).collect();
            brackets[a * dim + b] = v;
            brackets[b * dim + a] = neg;
        }
    }
    let mut alg = LieAlgebraRealization {
        rs: rs.clone(),
        labels,
        roots,
        index,
        recipes,
        brackets,
        killing: QMatrix::zeros(dim, dim),
    };
    alg.killing = alg.compute_killing();
    Ok(alg)
}

fn first_nonzero(m: &QMatrix) -> Option<(usize, usize)> {
    (0..m.rows())
        .flat_map(|r| (0..m.cols()).map(move |c| (r, c)))
        .find(|&(r, c)| !m[(r, c)].is_zero())
}

/// Root vectors of a representation following the recipes.
pub(crate) fn root_vectors(gens: &Generators, recipes: &[Recipe]) -> (Vec<QMatrix>, Vec<QMatrix>) {
    let mut e: Vec<QMatrix> = Vec::with_capacity(recipes.len());
    let mut f: Vec<QMatrix> = Vec::with_capacity(recipes.len());
    for r in recipes {
        match *r {
            Recipe::Simple(i) => {
                e.push(gens.e[i].clone());
                f.push(gens.f[i].clone());
            }
            Recipe::Bracket { node, from } => {
                let ne = gens.e[node].commutator(&e[from]);
                let nf = gens.f[node].commutator(&f[from]);
                e.push(ne);
                f.push(nf);
            }
        }
    }
    (e, f)
}

impl LieAlgebraRealization {
    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[BasisLabel] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> BasisLabel {
        self.labels[a]
    }

    pub fn index_of(&self, label: BasisLabel) -> usize {
        self.index[&label]
    }

    /// Root of a basis element; zero for the Cartan part.
    pub fn basis_root(&self, a: usize) -> &Root {
        &self.roots[a]
    }

    pub fn recipes(&self) -> &[Recipe] {
        &self.recipes
    }

    pub fn bracket_basis(&self, a: usize, b: usize) -> &SparseVec {
        &self.brackets[a * self.dim() + b]
    }

    pub fn bracket(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (a, xa) in x {
            for (b, yb) in y {
                let c = xa * yb;
                sparse_axpy(&mut out, &c, self.bracket_basis(*a, *b));
            }
        }
        out
    }

    pub fn killing(&self) -> &QMatrix {
        &self.killing
    }

    pub fn killing_form(&self, x: &SparseVec, y: &SparseVec) -> Q {
        let mut acc = Q::zero();
        for (a, xa) in x {
            for (b, yb) in y {
                let k = &self.killing[(*a, *b)];
                if !k.is_zero() {
                    acc += k * xa * yb;
                }
            }
        }
        acc
    }

    /// Matrix of `ad a` in the basis.
    pub fn ad(&self, a: usize) -> QMatrix {
        let cols: Vec<SparseVec> = (0..self.dim()).map(|b| self.bracket_basis(a, b).clone()).collect();
        QMatrix::from_sparse_columns(self.dim(), &cols)
    }

    fn compute_killing(&self) -> QMatrix {
        let dim = self.dim();
        let mut k = QMatrix::zeros(dim, dim);
        for a in 0..dim {
            for b in a..dim {
                if !(&self.roots[a] + &self.roots[b]).is_zero() {
                    continue;
                }
                // tr(ad a ad b) = sum_{c,d} [a,c]_d [b,d]_c
                let mut acc = Q::zero();
                for c in 0..dim {
                    for (d, x) in self.bracket_basis(a, c) {
                        if let Some(y) = self.bracket_basis(b, *d).get(&c) {
                            acc += x * y;
                        }
                    }
                }
                k[(a, b)] = acc.clone();
                k[(b, a)] = acc;
            }
        }
        k
    }

    /// Jacobi identity on every basis triple.
    pub fn jacobi_holds(&self) -> bool {
        let dim = self.dim();
        let unit = |a: usize| SparseVec::from([(a, Q::one())]);
        for a in 0..dim {
            for b in (a + 1)..dim {
                let ab = self.bracket_basis(a, b);
                for c in (b + 1)..dim {
                    let mut sum = self.bracket(&unit(c), ab);
                    sparse_axpy(&mut sum, &Q::one(), &self.bracket(&unit(a), self.bracket_basis(b, c)));
                    sparse_axpy(&mut sum, &Q::one(), &self.bracket(&unit(b), self.bracket_basis(c, a)));
                    if !sum.is_empty() {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn antisymmetric(&self) -> bool {
        let dim = self.dim();
        (0..dim).all(|a| {
            (0..dim).all(|b| {
                let x = self.bracket_basis(a, b);
                let y = self.bracket_basis(b, a);
                x.len() == y.len() && x.iter().all(|(k, v)| y.get(k) == Some(&-v))
            })
        })
    }

    /// Whether `[g_i, g_j]` lies in `g_{i+j}` for the grading given by `layer`.
    pub fn respects_grading(&self, layer: impl Fn(&Root) -> i64) -> bool {
        let dim = self.dim();
        (0..dim).all(|a| {
            (0..dim).all(|b| {
                let want = layer(&self.roots[a]) + layer(&self.roots[b]);
                self.bracket_basis(a, b).keys().all(|&c| layer(&self.roots[c]) == want)
            })
        })
    }
}

/// Dualizes the Killing form restricted to the Cartan subalgebra and compares
/// it with the inner product on weights.
pub fn killing_dual_form_check(alg: &LieAlgebraRealization, rs: &RootSystem) -> Result<bool> {
    let n = rs.rank();
    let h0 = alg.index_of(BasisLabel::H(0));
    let mut kh = QMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            kh[(i, j)] = alg.killing()[(h0 + i, h0 + j)].clone();
        }
    }
    let inv = kh
        .inverse()
        .ok_or_else(|| Error::Internal("Killing form degenerate on the Cartan subalgebra".into()))?;
    if inv != rs.inner_form().gram {
        return Err(Error::Internal(format!(
            "dualized Killing form {:?} differs from the weight inner product {:?}",
            inv,
            rs.inner_form().gram
        )));
    }
    Ok(true)
}

/// `(basis, dual basis)` with `B(basis_l, dual_m) = delta_lm`.
pub fn dual_bases(alg: &LieAlgebraRealization) -> (Vec<SparseVec>, Vec<SparseVec>) {
    let dim = alg.dim();
    let inv = alg.killing().inverse().expect("Killing form is nondegenerate");
    let basis = (0..dim).map(|a| SparseVec::from([(a, Q::one())])).collect();
    let dual = (0..dim).map(|m| inv.sparse_column(m)).collect();
    (basis, dual)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::qf;
    use crate::rootsys::DynkinSpec;

    fn alg(t: &str) -> LieAlgebraRealization {
        realize_algebra(&RootSystem::new(t.parse::<DynkinSpec>().unwrap())).unwrap()
    }

    #[test]
    fn a1_killing() {
        let l = alg("A1");
        assert_eq!(l.dim(), 3);
        assert_eq!(l.labels(), &[BasisLabel::E(0), BasisLabel::H(0), BasisLabel::F(0)]);
        let k = l.killing();
        assert_eq!(k[(1, 1)], q(8));
        assert_eq!(k[(0, 2)], q(4));
        assert_eq!(k[(0, 0)], q(0));
        let (_, dual) = dual_bases(&l);
        assert_eq!(dual[0], SparseVec::from([(2, qf(1, 4))]));
        assert_eq!(dual[1], SparseVec::from([(1, qf(1, 8))]));
        assert_eq!(dual[2], SparseVec::from([(0, qf(1, 4))]));
    }

    #[test]
    fn dimensions_and_identities() {
        for (t, d) in [("A2", 8), ("B2", 10), ("G2", 14), ("A3", 15), ("B3", 21), ("C3", 21)] {
            let l = alg(t);
            assert_eq!(l.dim(), d);
            assert_eq!(l.killing().rank(), d);
            assert!(l.antisymmetric());
            assert!(l.jacobi_holds(), "{t}");
            assert!(killing_dual_form_check(&l, l.root_system()).unwrap());
            // Killing matrix is the trace form of the adjoint action
            for a in 0..d {
                for b in 0..d {
                    if (l.basis_root(a) + l.basis_root(b)).is_zero() {
                        assert_eq!((&l.ad(a) * &l.ad(b)).trace(), l.killing()[(a, b)]);
                    }
                }
            }
        }
    }

    #[test]
    fn dual_basis_pairing_is_identity() {
        let l = alg("B2");
        let (basis, dual) = dual_bases(&l);
        for (i, x) in basis.iter().enumerate() {
            for (j, y) in dual.iter().enumerate() {
                let v = l.killing_form(x, y);
                assert_eq!(v, if i == j { q(1) } else { q(0) });
            }
        }
    }

    #[test]
    fn generators_of_small_modules() {
        let rs = RootSystem::new("A2".parse().unwrap());
        let (w, g) = irreducible_generators(&rs, &Weight(vec![1, 0]));
        assert_eq!(w.len(), 3);
        for i in 0..2 {
            assert_eq!(g.e[i].commutator(&g.f[i]), g.h[i]);
        }
        let rs = RootSystem::new("G2".parse().unwrap());
        let (w, _) = irreducible_generators(&rs, &Weight(vec![1, 1]));
        assert_eq!(q(w.len() as i64), rs.weyl_dimension(&Weight(vec![1, 1])));
    }
}
