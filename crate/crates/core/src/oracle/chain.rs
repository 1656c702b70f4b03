//! The chain complex `Lambda^k p_+ (x) V` with the Kostant codifferential
//!
//! `d(f_1 ^ ... ^ f_k (x) s) = sum_i (-1)^i f_1 ^ ..^f_i^.. ^ f_k (x) f_i . s
//!   + sum_{i<j} (-1)^{i+j} [f_i, f_j] ^ f_1 ^ ..^f_i^..^f_j^.. ^ f_k (x) s`
//!
//! and exact per-weight homology.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::guard::Guardrails;
use crate::linalg::{sparse_add_entry, sparse_axpy, QMatrix, SparseVec, Q};
use crate::oracle::algebra::{BasisLabel, LieAlgebraRealization};
use crate::oracle::module::RepRealization;
use crate::parabolic::ParabolicData;
use crate::rootsys::Weight;

/// Basis of one degree: wedge monomials (bitmask over the `p_+` basis) times
/// basis vectors of `V`.
#[derive(Clone, Debug)]
pub struct DegreeSpace {
    pub basis: Vec<(u64, usize)>,
    pub weights: Vec<Weight>,
    index: HashMap<(u64, usize), usize>,
    /// Basis indices grouped by weight.
    pub blocks: BTreeMap<Weight, Vec<usize>>,
}

impl DegreeSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

#[derive(Clone, Debug)]
pub struct ChainComplex {
    /// Algebra indices of the `p_+` basis, in wedge order.
    pub pplus: Vec<usize>,
    pub degrees: Vec<DegreeSpace>,
    /// `differential[k][c]` is the image of basis element `c` of degree `k`.
    pub differential: Vec<Vec<SparseVec>>,
    /// Acting elements of `p` (algebra indices) with `ad` on `p_+` and the
    /// action on `V`, both as sparse columns.
    ad_pplus: BTreeMap<usize, Vec<SparseVec>>,
    v_action: BTreeMap<usize, Vec<SparseVec>>,
    levi_lowering: Vec<usize>,
    levi: Vec<usize>,
    elem_weight: BTreeMap<usize, Weight>,
}

/// A brute-force homology component: `multiplicity` copies of the
/// irreducible `g_0`-module of the given lowest weight in degree `degree`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct BruteComponent {
    pub degree: usize,
    pub lowest_weight: Weight,
    pub multiplicity: usize,
}

/// All `k`-subsets of `0..m` as bitmasks, in lexicographic order of their elements.
fn combinations(m: usize, k: usize) -> Vec<u64> {
    fn go(start: usize, m: usize, k: usize, acc: u64, out: &mut Vec<u64>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        for i in start..=(m - k) {
            go(i + 1, m, k - 1, acc | (1 << i), out);
        }
    }
    let mut out = Vec::new();
    if k <= m {
        go(0, m, k, 0, &mut out);
    }
    out
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn parity(x: u32) -> Q {
    if x.is_multiple_of(2) {
        Q::one()
    } else {
        -Q::one()
    }
}

fn bits(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask & (1 << i) != 0).collect()
}

/// Number of set bits strictly between positions `a` and `b`.
fn between(mask: u64, a: usize, b: usize) -> u32 {
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    if hi <= lo + 1 {
        return 0;
    }
    let span = ((1u64 << hi) - 1) & !((1u64 << (lo + 1)) - 1);
    (mask & span).count_ones()
}

pub fn chain_complex(alg: &LieAlgebraRealization, pd: &ParabolicData, rep: &RepRealization) -> Result<ChainComplex> {
    chain_complex_with(alg, pd, rep, &Guardrails::default())
}

pub fn chain_complex_with(
    alg: &LieAlgebraRealization,
    pd: &ParabolicData,
    rep: &RepRealization,
    guard: &Guardrails,
) -> Result<ChainComplex> {
    let rs = alg.root_system();
    let pplus: Vec<usize> = pd
        .p_plus_roots()
        .iter()
        .map(|b| alg.index_of(BasisLabel::E(rs.root_position(b).unwrap())))
        .collect();
    let m = pplus.len();
    let dim_v = rep.dim();
    for k in 0..=m {
        let d = if m >= 64 { u128::MAX } else { binomial(m, k).saturating_mul(dim_v as u128) };
        Guardrails::check("chain space dimension", d, guard.chain_dim)?;
    }
    let pos: BTreeMap<usize, usize> = pplus.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let to_pplus = |v: &SparseVec| -> Result<SparseVec> {
        v.iter()
            .map(|(a, c)| {
                pos.get(a)
                    .map(|&p| (p, c.clone()))
                    .ok_or_else(|| Error::Internal("bracket leaves p_+".into()))
            })
            .collect()
    };
    let acting: Vec<usize> = (0..alg.dim())
        .filter(|&a| pd.layer_of(alg.basis_root(a)) >= 0)
        .collect();
    let mut ad_pplus = BTreeMap::new();
    let mut v_action = BTreeMap::new();
    for &a in &acting {
        let cols: Vec<SparseVec> = pplus
            .iter()
            .map(|&b| to_pplus(alg.bracket_basis(a, b)))
            .collect::<Result<_>>()?;
        ad_pplus.insert(a, cols);
        let mat = rep
            .action
            .get(&a)
            .ok_or_else(|| Error::Precondition("module must carry the action of p".into()))?;
        v_action.insert(a, (0..dim_v).map(|c| mat.sparse_column(c)).collect::<Vec<_>>());
    }
    let pplus_brackets: Vec<Vec<SparseVec>> = pplus
        .iter()
        .map(|&a| pplus.iter().map(|&b| to_pplus(alg.bracket_basis(a, b))).collect::<Result<_>>())
        .collect::<Result<_>>()?;

    let root_weights: Vec<Weight> = pd.p_plus_roots().iter().map(|b| rs.root_to_weight(b)).collect();
    let degrees: Vec<DegreeSpace> = (0..=m)
        .map(|k| {
            let mut basis = Vec::new();
            let mut weights = Vec::new();
            for mask in combinations(m, k) {
                let wedge = bits(mask).iter().fold(Weight::zero(rs.rank()), |acc, &p| &acc + &root_weights[p]);
                for (v, wv) in rep.weights.iter().enumerate() {
                    basis.push((mask, v));
                    weights.push(&wedge + wv);
                }
            }
            let index = basis.iter().enumerate().map(|(i, &b)| (b, i)).collect();
            let mut blocks: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
            for (i, w) in weights.iter().enumerate() {
                blocks.entry(w.clone()).or_default().push(i);
            }
            DegreeSpace {
                basis,
                weights,
                index,
                blocks,
            }
        })
        .collect();

    let mut differential: Vec<Vec<SparseVec>> = vec![vec![SparseVec::new(); degrees[0].dim()]];
    for k in 1..=m {
        let target = &degrees[k - 1];
        let cols = degrees[k]
            .basis
            .iter()
            .map(|&(mask, v)| {
                let ps = bits(mask);
                let mut out = SparseVec::new();
                for (i, &pi) in ps.iter().enumerate() {
                    let sign = parity(i as u32 + 1);
                    let rest = mask & !(1 << pi);
                    for (w, c) in &v_action[&pplus[pi]][v] {
                        sparse_add_entry(&mut out, target.index[&(rest, *w)], &sign * c);
                    }
                }
                for (i, &pi) in ps.iter().enumerate() {
                    for (j, &pj) in ps.iter().enumerate().skip(i + 1) {
                        let sign = parity((i + 1 + j + 1) as u32);
                        let rest = mask & !(1 << pi) & !(1 << pj);
                        for (p, c) in &pplus_brackets[pi][pj] {
                            if rest & (1 << p) != 0 {
                                continue;
                            }
                            // moving the bracket from the front to its sorted slot
                            let s = parity((rest & ((1u64 << p) - 1)).count_ones());
                            sparse_add_entry(&mut out, target.index[&(rest | (1 << p), v)], &sign * &s * c);
                        }
                    }
                }
                out
            })
            .collect();
        differential.push(cols);
    }

    let levi = pd.levi_nodes();
    let levi_lowering = levi
        .iter()
        .map(|&j| alg.index_of(BasisLabel::F(rs.root_position(&rs.simple_root(j)).unwrap())))
        .collect();
    let levi_elems = (0..alg.dim())
        .filter(|&a| pd.layer_of(alg.basis_root(a)) == 0)
        .collect();
    let elem_weight = acting
        .iter()
        .map(|&a| (a, rs.root_to_weight(alg.basis_root(a))))
        .collect();
    Ok(ChainComplex {
        pplus,
        degrees,
        differential,
        ad_pplus,
        v_action,
        levi_lowering,
        levi: levi_elems,
        elem_weight,
    })
}

impl ChainComplex {
    pub fn top_degree(&self) -> usize {
        self.degrees.len() - 1
    }

    pub fn total_dim(&self) -> usize {
        self.degrees.iter().map(DegreeSpace::dim).sum()
    }

    /// Action of the basis element `a` of `p` on basis element `idx` of degree `k`.
    pub fn act(&self, a: usize, k: usize, idx: usize) -> SparseVec {
        let space = &self.degrees[k];
        let (mask, v) = space.basis[idx];
        let mut out = SparseVec::new();
        for pi in bits(mask) {
            let rest = mask & !(1 << pi);
            for (p, c) in &self.ad_pplus[&a][pi] {
                if rest & (1 << p) != 0 {
                    continue;
                }
                let s = parity(between(rest, pi, *p));
                sparse_add_entry(&mut out, space.index[&(rest | (1 << p), v)], s * c);
            }
        }
        for (w, c) in &self.v_action[&a][v] {
            sparse_add_entry(&mut out, space.index[&(mask, *w)], c.clone());
        }
        out
    }

    fn apply_differential(&self, k: usize, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        if k == 0 {
            return out;
        }
        for (c, x) in v {
            sparse_axpy(&mut out, x, &self.differential[k][*c]);
        }
        out
    }

    fn apply_action(&self, a: usize, k: usize, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (c, x) in v {
            sparse_axpy(&mut out, x, &self.act(a, k, *c));
        }
        out
    }

    /// `d o d = 0` in every degree.
    pub fn d_squared_zero(&self) -> bool {
        (2..=self.top_degree()).all(|k| {
            self.differential[k]
                .iter()
                .all(|col| self.apply_differential(k - 1, col).is_empty())
        })
    }

    /// `d` commutes with the action of every basis element of `g_0`.
    pub fn equivariant(&self) -> bool {
        (1..=self.top_degree()).all(|k| {
            self.levi.iter().all(|&a| {
                (0..self.degrees[k].dim()).all(|c| {
                    let lhs = self.apply_differential(k, &self.act(a, k, c));
                    let rhs = self.apply_action(a, k - 1, &self.differential[k][c]);
                    lhs == rhs
                })
            })
        })
    }

    /// Dense block of the differential from degree `k`, weight `mu`.
    fn d_block(&self, k: usize, mu: &Weight) -> QMatrix {
        let cols = self.degrees[k].blocks.get(mu).map(Vec::as_slice).unwrap_or(&[]);
        let rows = if k == 0 {
            &[][..]
        } else {
            self.degrees[k - 1].blocks.get(mu).map(Vec::as_slice).unwrap_or(&[])
        };
        let row_pos: HashMap<usize, usize> = rows.iter().enumerate().map(|(i, &r)| (r, i)).collect();
        let mut m = QMatrix::zeros(rows.len(), cols.len());
        for (j, &c) in cols.iter().enumerate() {
            if k > 0 {
                for (r, x) in &self.differential[k][c] {
                    m[(row_pos[r], j)] = x.clone();
                }
            }
        }
        m
    }

    /// Dense matrix of `a` from the weight-`mu` block of degree `k` to the
    /// weight-`nu` block.
    fn action_block(&self, a: usize, k: usize, mu: &Weight, nu: &Weight) -> QMatrix {
        let cols = self.degrees[k].blocks.get(mu).map(Vec::as_slice).unwrap_or(&[]);
        let rows = self.degrees[k].blocks.get(nu).map(Vec::as_slice).unwrap_or(&[]);
        let row_pos: HashMap<usize, usize> = rows.iter().enumerate().map(|(i, &r)| (r, i)).collect();
        let mut m = QMatrix::zeros(rows.len(), cols.len());
        for (j, &c) in cols.iter().enumerate() {
            for (r, x) in self.act(a, k, c) {
                let i = *row_pos
                    .get(&r)
                    .expect("action maps weight spaces to weight spaces");
                m[(i, j)] = x;
            }
        }
        m
    }

    /// Kernel of `d` on the weight-`mu` block of degree `k`, as columns.
    fn kernel_block(&self, k: usize, mu: &Weight) -> QMatrix {
        let n = self.degrees[k].blocks.get(mu).map_or(0, Vec::len);
        let d = self.d_block(k, mu);
        let ker = if d.rows() == 0 {
            (0..n)
                .map(|i| {
                    let mut v = vec![Q::zero(); n];
                    v[i] = Q::one();
                    v
                })
                .collect()
        } else {
            d.kernel()
        };
        QMatrix::from_columns(n, &ker)
    }

    /// Rows whose common kernel is the image of `d` in the weight-`mu` block of degree `k`.
    fn image_annihilator(&self, k: usize, mu: &Weight) -> QMatrix {
        let n = self.degrees[k].blocks.get(mu).map_or(0, Vec::len);
        if k == self.top_degree() {
            return QMatrix::identity(n);
        }
        let d = self.d_block(k + 1, mu);
        if d.cols() == 0 {
            return QMatrix::identity(n);
        }
        d.left_kernel()
    }

    fn image_rank(&self, k: usize, mu: &Weight) -> usize {
        if k == self.top_degree() {
            return 0;
        }
        self.d_block(k + 1, mu).rank()
    }

    /// Number of lowest weight vectors of weight `mu` in the subquotient
    /// `ker / sub` of degree `k`, where `ker` is given by columns and
    /// `annihilator(nu)` cuts out `sub` in the weight-`nu` block.
    fn lowest_weight_count(
        &self,
        k: usize,
        mu: &Weight,
        ker: &QMatrix,
        annihilator: &dyn Fn(&Weight) -> QMatrix,
        sub_rank: usize,
    ) -> usize {
        if ker.cols() == 0 {
            return 0;
        }
        let mut stacked = QMatrix::zeros(0, ker.cols());
        for &f in &self.levi_lowering {
            let nu = mu + &self.elem_weight[&f];
            if !self.degrees[k].blocks.contains_key(&nu) {
                continue;
            }
            let fmat = self.action_block(f, k, mu, &nu);
            let l = annihilator(&nu);
            stacked = stacked.vstack(&(&l * &(&fmat * ker)));
        }
        let s = if stacked.rows() == 0 {
            ker.cols()
        } else {
            ker.cols() - stacked.rank()
        };
        s - sub_rank
    }

    /// Exact homology `ker d / im d`, decomposed into irreducible
    /// `g_0`-modules through their lowest weight vectors.
    pub fn homology(&self) -> Vec<BruteComponent> {
        let mut out = Vec::new();
        for k in 0..=self.top_degree() {
            for mu in self.degrees[k].blocks.keys() {
                let ker = self.kernel_block(k, mu);
                let ann = |nu: &Weight| self.image_annihilator(k, nu);
                let count = self.lowest_weight_count(k, mu, &ker, &ann, self.image_rank(k, mu));
                if count > 0 {
                    out.push(BruteComponent {
                        degree: k,
                        lowest_weight: mu.clone(),
                        multiplicity: count,
                    });
                }
            }
        }
        out
    }

    /// Irreducible `g_0`-components of the chain spaces themselves.
    pub fn chain_components(&self) -> Vec<BruteComponent> {
        let mut out = Vec::new();
        for k in 0..=self.top_degree() {
            for (mu, idx) in &self.degrees[k].blocks {
                let all = QMatrix::identity(idx.len());
                let ann = |nu: &Weight| {
                    let n = self.degrees[k].blocks.get(nu).map_or(0, Vec::len);
                    QMatrix::identity(n)
                };
                let count = self.lowest_weight_count(k, mu, &all, &ann, 0);
                if count > 0 {
                    out.push(BruteComponent {
                        degree: k,
                        lowest_weight: mu.clone(),
                        multiplicity: count,
                    });
                }
            }
        }
        out
    }

    /// Every basis element of `p_+` maps `ker d` into `im d`.
    pub fn p_plus_preserves_boundaries(&self) -> bool {
        (0..=self.top_degree()).all(|k| {
            self.degrees[k].blocks.keys().all(|mu| {
                let ker = self.kernel_block(k, mu);
                if ker.cols() == 0 {
                    return true;
                }
                self.pplus.iter().all(|&z| {
                    let nu = mu + &self.elem_weight[&z];
                    if !self.degrees[k].blocks.contains_key(&nu) {
                        return true;
                    }
                    let zk = &self.action_block(z, k, mu, &nu) * &ker;
                    (&self.image_annihilator(k, &nu) * &zk).is_zero()
                })
            })
        })
    }
}

/// Brute-force homology of `p_+` with coefficients in `rep`.
pub fn homology_bruteforce(cc: &ChainComplex) -> Vec<BruteComponent> {
    cc.homology()
}

pub fn p_plus_action_on_homology_check(cc: &ChainComplex) -> bool {
    cc.p_plus_preserves_boundaries()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kostant::homology;
    use crate::oracle::algebra::realize_algebra;
    use crate::oracle::module::build_irrep;
    use crate::parabolic::ParabolicSpec;
    use crate::rootsys::{DynkinSpec, RootSystem};

    fn complex(t: &str, crossed: &[usize], lambda: &[i64]) -> (ParabolicData, ChainComplex) {
        let rs = RootSystem::new(t.parse::<DynkinSpec>().unwrap());
        let alg = realize_algebra(&rs).unwrap();
        let pd = ParabolicData::new(&rs, &ParabolicSpec::new(crossed.iter().copied())).unwrap();
        let rep = build_irrep(&alg, &Weight(lambda.to_vec())).unwrap();
        let cc = chain_complex(&alg, &pd, &rep).unwrap();
        (pd, cc)
    }

    fn signature(c: &[BruteComponent]) -> Vec<(usize, Weight, usize)> {
        c.iter().map(|c| (c.degree, c.lowest_weight.clone(), c.multiplicity)).collect()
    }

    #[test]
    fn combinations_enumerate_subsets() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 0), vec![0]);
        assert_eq!(combinations(3, 3), vec![0b111]);
        assert!(combinations(2, 3).is_empty());
        assert_eq!(between(0b10110, 0, 4), 2);
    }

    #[test]
    fn a1_adjoint_degree_one() {
        let (_, cc) = complex("A1", &[0], &[2]);
        // e (x) f goes to -e.f, a multiple of the zero weight vector
        let v_f = 2;
        let idx = cc.degrees[1].index[&(1, v_f)];
        let img = &cc.differential[1][idx];
        assert_eq!(img.len(), 1);
        let (&target, c) = img.iter().next().unwrap();
        assert_eq!(cc.degrees[0].basis[target], (0, 1));
        assert!(!c.is_zero());
        let h = signature(&cc.homology());
        assert_eq!(h, vec![(0, Weight(vec![-2]), 1), (1, Weight(vec![4]), 1)]);
    }

    #[test]
    fn a2_borel_trivial_bracket_term() {
        let (_, cc) = complex("A2", &[0, 1], &[0, 0]);
        assert!(cc.d_squared_zero());
        // e1 ^ e2 (x) 1 maps to -[e1, e2] (x) 1
        let idx = cc.degrees[2].index[&(0b011, 0)];
        let img = &cc.differential[2][idx];
        assert_eq!(img.len(), 1);
        let (&t, _) = img.iter().next().unwrap();
        assert_eq!(cc.degrees[1].basis[t], (0b100, 0));
    }

    #[test]
    fn matches_kostant_on_small_cases() {
        for (t, crossed, lambda) in [
            ("A1", vec![0], vec![0]),
            ("A1", vec![0], vec![1]),
            ("A2", vec![0], vec![1, 0]),
            ("A2", vec![0, 1], vec![1, 1]),
            ("B2", vec![1], vec![1, 0]),
            ("G2", vec![0], vec![0, 0]),
        ] {
            let (pd, cc) = complex(t, &crossed, &lambda);
            assert!(cc.d_squared_zero());
            assert!(cc.equivariant(), "{t}");
            assert!(cc.p_plus_preserves_boundaries());
            let fast: Vec<(usize, Weight, usize)> = homology(&pd, &Weight(lambda.clone()))
                .unwrap()
                .signature()
                .into_iter()
                .map(|((d, w), m)| (d, w, m as usize))
                .collect();
            let mut brute = signature(&cc.homology());
            brute.sort();
            assert_eq!(brute, fast, "{t} {crossed:?} {lambda:?}");
        }
    }
}
