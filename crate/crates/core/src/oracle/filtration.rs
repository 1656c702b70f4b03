//! The `p`-invariant filtration `V = W^0 ⊃ W^1 ⊃ ... ⊃ W^N` of a module,
//! where `W^N` is the space of `p_+`-invariants and
//! `W^{j-1} = { w : Z w ∈ W^j for all Z ∈ p_+ }`.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::casimir::eigenvalue;
use crate::error::{Error, Result};
use crate::linalg::{QMatrix, SparseVec, Q};
use crate::oracle::algebra::{BasisLabel, LieAlgebraRealization};
use crate::oracle::module::{g0_casimir_formula, RepRealization};
use crate::parabolic::ParabolicData;
use crate::rootsys::Weight;

/// Weight-homogeneous subspace, stored as basis vectors per weight.
type Graded = BTreeMap<Weight, Vec<Vec<Q>>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CasimirCheck {
    pub lowest_weight: Weight,
    /// Scalar of the `g_0` formula on the irreducible component, if it is scalar.
    pub formula: Option<Q>,
    pub expected: Q,
}

impl CasimirCheck {
    pub fn ok(&self) -> bool {
        self.formula.as_ref() == Some(&self.expected)
    }
}

/// The subquotient `W^level / W^{level+1}`.
#[derive(Clone, Debug)]
pub struct FiltrationQuotient {
    pub level: usize,
    pub dim: usize,
    /// Eigenvalue of the grading element, if it acts by a scalar.
    pub grading_eigenvalue: Option<Q>,
    pub p_plus_trivial: bool,
    /// `(lowest weight, multiplicity)` of the irreducible `g_0`-components.
    pub components: Vec<(Weight, usize)>,
    pub casimir: Vec<CasimirCheck>,
    pub module: RepRealization,
}

#[derive(Clone, Debug)]
pub struct PFiltration {
    /// `dim W^j` for `j = 0 ..= N`.
    pub dims: Vec<usize>,
    pub levels: Vec<FiltrationQuotient>,
}

impl PFiltration {
    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn quotients_trivial(&self) -> bool {
        self.levels.iter().all(|l| l.p_plus_trivial)
    }

    /// Grading element eigenvalues `a_0, a_0 + 1, ..., a_0 + N`.
    pub fn unit_ladder(&self) -> bool {
        let vals: Option<Vec<&Q>> = self.levels.iter().map(|l| l.grading_eigenvalue.as_ref()).collect();
        match vals {
            None => false,
            Some(v) => v.windows(2).all(|w| w[1] - w[0] == Q::from_integer(1.into())),
        }
    }

    pub fn casimir_ok(&self) -> bool {
        self.levels.iter().all(|l| l.casimir.iter().all(CasimirCheck::ok))
    }
}

fn columns(v: &[Vec<Q>], rows: usize) -> QMatrix {
    QMatrix::from_columns(rows, v)
}

fn flatten(g: &Graded) -> Vec<Vec<Q>> {
    g.values().flatten().cloned().collect()
}

/// Left inverse of a matrix with independent columns.
fn left_inverse(m: &QMatrix) -> QMatrix {
    let t = m.transpose();
    let gram = &t * m;
    &gram.inverse().expect("independent columns") * &t
}

fn lift(local: Vec<Q>, idx: &[usize], n: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); n];
    for (x, &i) in local.into_iter().zip(idx) {
        v[i] = x;
    }
    v
}

/// Per weight, the vectors `w` of that weight with `cond * w = 0`.
fn graded_kernel(rep: &RepRealization, cond: &[QMatrix]) -> Graded {
    let n = rep.dim();
    let mut by_weight: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
    for (i, w) in rep.weights.iter().enumerate() {
        by_weight.entry(w.clone()).or_default().push(i);
    }
    let mut out = Graded::new();
    for (mu, idx) in by_weight {
        let mut stacked = QMatrix::zeros(0, idx.len());
        for c in cond {
            let mut block = QMatrix::zeros(c.rows(), idx.len());
            for (j, &i) in idx.iter().enumerate() {
                for r in 0..c.rows() {
                    block[(r, j)] = c[(r, i)].clone();
                }
            }
            stacked = stacked.vstack(&block);
        }
        let ker: Vec<Vec<Q>> = if stacked.rows() == 0 {
            let id = QMatrix::identity(idx.len());
            (0..idx.len()).map(|c| id.column(c)).collect()
        } else {
            stacked.kernel()
        };
        let vecs: Vec<Vec<Q>> = ker.into_iter().map(|k| lift(k, &idx, n)).collect();
        if !vecs.is_empty() {
            out.insert(mu, vecs);
        }
    }
    out
}

/// The module induced on `span(basis[sub..])` modulo `span(basis[..sub])`.
fn induced(rep: &RepRealization, basis: &[Vec<Q>], weights: &[Weight], sub: usize) -> RepRealization {
    let q = columns(basis, rep.dim());
    let p = left_inverse(&q);
    let mut action = BTreeMap::new();
    for (a, m) in &rep.action {
        let coords = &p * &(m * &q);
        let k = basis.len() - sub;
        let mut out = QMatrix::zeros(k, k);
        for r in 0..k {
            for c in 0..k {
                out[(r, c)] = coords[(sub + r, sub + c)].clone();
            }
        }
        action.insert(*a, out);
    }
    RepRealization {
        highest_weight: None,
        weights: weights[sub..].to_vec(),
        action,
    }
}

fn p_plus_indices(alg: &LieAlgebraRealization, pd: &ParabolicData) -> Vec<usize> {
    let rs = alg.root_system();
    pd.p_plus_roots()
        .iter()
        .map(|b| alg.index_of(BasisLabel::E(rs.root_position(b).unwrap())))
        .collect()
}

pub fn p_filtration(alg: &LieAlgebraRealization, pd: &ParabolicData, rep: &RepRealization) -> Result<PFiltration> {
    let n = rep.dim();
    let zs: Vec<QMatrix> = p_plus_indices(alg, pd)
        .into_iter()
        .map(|z| {
            rep.action
                .get(&z)
                .cloned()
                .ok_or_else(|| Error::Precondition("module must carry the action of p_+".into()))
        })
        .collect::<Result<_>>()?;
    // smallest first: W^N, W^{N-1}, ..., W^0 = V
    let mut chain: Vec<Graded> = vec![graded_kernel(rep, &zs)];
    loop {
        let cur = chain.last().unwrap();
        let dim: usize = cur.values().map(Vec::len).sum();
        if dim == n {
            break;
        }
        let vecs = flatten(cur);
        let ann = if vecs.is_empty() {
            QMatrix::identity(n)
        } else {
            columns(&vecs, n).left_kernel()
        };
        let cond: Vec<QMatrix> = zs.iter().map(|z| &ann * z).collect();
        let next = graded_kernel(rep, &cond);
        let next_dim: usize = next.values().map(Vec::len).sum();
        if next_dim <= dim {
            return Err(Error::Internal("p-filtration does not grow".into()));
        }
        chain.push(next);
    }
    chain.reverse();
    let depth = chain.len() - 1;
    let dims: Vec<usize> = chain.iter().map(|g| g.values().map(Vec::len).sum()).collect();

    let rs = alg.root_system();
    let grading: SparseVec = pd
        .grading_element()
        .coroot_coords
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (alg.index_of(BasisLabel::H(i)), c.clone()))
        .collect();
    let p_rep = rep.restrict(|a| pd.layer_of(alg.basis_root(a)) >= 0);
    let zero = Graded::new();
    let mut levels = Vec::new();
    for level in 0..=depth {
        let big = &chain[level];
        let small = if level == depth { &zero } else { &chain[level + 1] };
        let mut basis: Vec<Vec<Q>> = flatten(small);
        let mut weights: Vec<Weight> = small
            .iter()
            .flat_map(|(w, v)| std::iter::repeat_n(w.clone(), v.len()))
            .collect();
        let sub = basis.len();
        for (mu, vecs) in big {
            let lower = small.get(mu).cloned().unwrap_or_default();
            let mut cols = lower.clone();
            cols.extend(vecs.iter().cloned());
            let pivots = columns(&cols, n).rref().pivots;
            for p in pivots.into_iter().filter(|&p| p >= lower.len()) {
                basis.push(cols[p].clone());
                weights.push(mu.clone());
            }
        }
        let module = induced(&p_rep, &basis, &weights, sub);
        levels.push(describe_quotient(alg, pd, level, module, &grading, rs)?);
    }
    Ok(PFiltration { dims, levels })
}

fn describe_quotient(
    alg: &LieAlgebraRealization,
    pd: &ParabolicData,
    level: usize,
    module: RepRealization,
    grading: &SparseVec,
    rs: &crate::rootsys::RootSystem,
) -> Result<FiltrationQuotient> {
    let pplus = p_plus_indices(alg, pd);
    let p_plus_trivial = pplus.iter().all(|z| module.act(*z).is_zero());
    let grading_eigenvalue = module.act_on(grading).as_scalar();
    let levi_f: Vec<usize> = pd
        .levi_nodes()
        .into_iter()
        .map(|j| alg.index_of(BasisLabel::F(rs.root_position(&rs.simple_root(j)).unwrap())))
        .collect();
    let levi_e: Vec<usize> = pd
        .levi_nodes()
        .into_iter()
        .map(|j| alg.index_of(BasisLabel::E(rs.root_position(&rs.simple_root(j)).unwrap())))
        .collect();
    let fs: Vec<QMatrix> = levi_f.iter().map(|f| module.act(*f).clone()).collect();
    let lowest = graded_kernel(&module, &fs);
    let mut components = Vec::new();
    let mut casimir = Vec::new();
    for (mu, vecs) in &lowest {
        components.push((mu.clone(), vecs.len()));
        if !p_plus_trivial {
            continue;
        }
        for v in vecs {
            let (span, weights) = cyclic_span(&module, &levi_e, v.clone(), mu.clone());
            let irr = induced(&module, &span, &weights, 0);
            let formula = g0_casimir_formula(alg, pd, &irr)?.as_scalar();
            casimir.push(CasimirCheck {
                lowest_weight: mu.clone(),
                formula,
                expected: eigenvalue(rs, &-mu),
            });
        }
    }
    Ok(FiltrationQuotient {
        level,
        dim: module.dim(),
        grading_eigenvalue,
        p_plus_trivial,
        components,
        casimir,
        module,
    })
}

/// Span of `v` under repeated raising, with the weight of each basis vector.
fn cyclic_span(rep: &RepRealization, raising: &[usize], v: Vec<Q>, mu: Weight) -> (Vec<Vec<Q>>, Vec<Weight>) {
    let n = rep.dim();
    let mut basis = vec![v];
    let mut weights = vec![mu];
    let mut frontier = vec![0usize];
    while let Some(i) = frontier.pop() {
        for &e in raising {
            let img = rep.act(e).mul_vec(&basis[i]);
            if img.iter().all(Zero::is_zero) {
                continue;
            }
            let mut trial = basis.clone();
            trial.push(img.clone());
            if columns(&trial, n).rank() == trial.len() {
                let w = weight_of(rep, &img);
                basis.push(img);
                weights.push(w);
                frontier.push(basis.len() - 1);
            }
        }
    }
    (basis, weights)
}

fn weight_of(rep: &RepRealization, v: &[Q]) -> Weight {
    let i = v.iter().position(|x| !x.is_zero()).expect("nonzero vector");
    rep.weights[i].clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::casimir::character_filtration;
    use crate::linalg::q;
    use crate::oracle::algebra::realize_algebra;
    use crate::oracle::module::build_irrep;
    use crate::parabolic::ParabolicSpec;
    use crate::rootsys::{DynkinSpec, RootSystem};

    fn run(t: &str, crossed: &[usize], lambda: &[i64]) -> (ParabolicData, PFiltration) {
        let rs = RootSystem::new(t.parse::<DynkinSpec>().unwrap());
        let alg = realize_algebra(&rs).unwrap();
        let pd = ParabolicData::new(&rs, &ParabolicSpec::new(crossed.iter().copied())).unwrap();
        let rep = build_irrep(&alg, &Weight(lambda.to_vec())).unwrap();
        let f = p_filtration(&alg, &pd, &rep).unwrap();
        (pd, f)
    }

    #[test]
    fn a1_adjoint() {
        let (_, f) = run("A1", &[0], &[2]);
        assert_eq!(f.dims, vec![3, 2, 1]);
        assert!(f.quotients_trivial() && f.unit_ladder() && f.casimir_ok());
        assert_eq!(f.levels[0].grading_eigenvalue, Some(q(-1)));
    }

    #[test]
    fn trivial_and_a2_standard() {
        let (_, f) = run("A2", &[0, 1], &[0, 0]);
        assert_eq!(f.dims, vec![1]);
        let (_, f) = run("A2", &[0, 1], &[1, 0]);
        assert_eq!(f.dims, vec![3, 2, 1]);
        assert!(f.quotients_trivial() && f.unit_ladder() && f.casimir_ok());
    }

    #[test]
    fn agrees_with_character_levels() {
        for (t, crossed, lambda) in [
            ("A2", vec![0], vec![1, 1]),
            ("B2", vec![1], vec![0, 2]),
            ("G2", vec![0], vec![1, 0]),
        ] {
            let (pd, f) = run(t, &crossed, &lambda);
            assert!(f.quotients_trivial() && f.unit_ladder() && f.casimir_ok(), "{t}");
            let fast = character_filtration(&pd, &Weight(lambda.clone())).unwrap();
            assert_eq!(fast.len(), f.levels.len());
            for (a, b) in fast.iter().zip(&f.levels) {
                assert_eq!(a.dimension, b.dim);
                assert_eq!(Some(&a.grading_eigenvalue), b.grading_eigenvalue.as_ref());
                let wa: Vec<(Weight, usize)> = a.components.iter().map(|(w, m, _)| (w.clone(), *m as usize)).collect();
                assert_eq!(wa, b.components);
            }
        }
    }
}
