//! Standard parabolic subalgebras given by crossed Dynkin nodes.
//!
//! A root lies in layer `i` of the grading when the sum of its coefficients
//! over the crossed nodes is `i`. Then `p = g_0 + ... + g_k` and
//! `p_+ = g_1 + ... + g_k`, and the filtration is `g^i = g_i + ... + g_k`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Zero;

use crate::character::Subsystem;
use crate::error::{Error, Result};
use crate::linalg::{q, QMatrix, Q};
use crate::oracle::LieAlgebraRealization;
use crate::rootsys::{Root, RootSystem, Weight};

/// Crossed nodes (0-based) of the Dynkin diagram.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParabolicSpec {
    crossed: BTreeSet<usize>,
}

impl ParabolicSpec {
    pub fn new(crossed: impl IntoIterator<Item = usize>) -> Self {
        ParabolicSpec {
            crossed: crossed.into_iter().collect(),
        }
    }

    /// Every node crossed.
    pub fn borel(rank: usize) -> Self {
        Self::new(0..rank)
    }

    pub fn crossed(&self) -> impl Iterator<Item = usize> + '_ {
        self.crossed.iter().copied()
    }

    pub fn is_crossed(&self, i: usize) -> bool {
        self.crossed.contains(&i)
    }

    pub fn validate(&self, rank: usize) -> Result<()> {
        if self.crossed.is_empty() {
            return Err(Error::EmptyCrossed);
        }
        if let Some(&i) = self.crossed.iter().find(|&&i| i >= rank) {
            return Err(Error::NodeOutOfRange { index: i, rank });
        }
        Ok(())
    }
}

impl fmt::Display for ParabolicSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.crossed.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// The |k|-grading of `g`. Layer 0 lists only the roots of the Levi factor;
/// the Cartan subalgebra is counted in `dims[0]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    pub depth: usize,
    pub layers: BTreeMap<i64, Vec<Root>>,
    pub dims: BTreeMap<i64, usize>,
}

impl Grading {
    pub fn dim(&self, i: i64) -> usize {
        self.dims.get(&i).copied().unwrap_or(0)
    }

    /// `dim g^i = sum_{j >= i} dim g_j`.
    pub fn filtration_dim(&self, i: i64) -> usize {
        self.dims.range(i..).map(|(_, d)| d).sum()
    }
}

/// The grading element `E` of the Cartan subalgebra: `alpha_i(E) = 1` for
/// crossed `i`, and 0 otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradingElement {
    /// Coordinates in the basis of the Cartan dual to the simple roots.
    pub cartan_coords: Vec<Q>,
    /// Coordinates in the coroot basis `h_i = alpha_i^vee`.
    pub coroot_coords: Vec<Q>,
}

impl GradingElement {
    /// Eigenvalue of `E` on a weight vector of weight `mu`.
    pub fn eval(&self, mu: &Weight) -> Q {
        self.coroot_coords
            .iter()
            .zip(&mu.0)
            .filter(|(_, &m)| m != 0)
            .fold(Q::zero(), |acc, (c, &m)| acc + c * q(m))
    }

    pub fn eval_root(&self, beta: &Root) -> Q {
        self.cartan_coords
            .iter()
            .zip(&beta.0)
            .filter(|(_, &b)| b != 0)
            .fold(Q::zero(), |acc, (c, &b)| acc + c * q(b))
    }
}

#[derive(Clone, Debug)]
pub struct ParabolicData {
    rs: RootSystem,
    spec: ParabolicSpec,
    grading: Grading,
    grading_element: GradingElement,
    levi_positive: Vec<Root>,
    p_plus_positive: Vec<Root>,
}

pub fn make_parabolic(rs: &RootSystem, spec: &ParabolicSpec) -> Result<ParabolicData> {
    ParabolicData::new(rs, spec)
}

pub fn grading_element(pd: &ParabolicData) -> GradingElement {
    pd.grading_element.clone()
}

impl ParabolicData {
    pub fn new(rs: &RootSystem, spec: &ParabolicSpec) -> Result<Self> {
        let n = rs.rank();
        spec.validate(n)?;
        let layer = |b: &Root| -> i64 { spec.crossed().map(|i| b.0[i]).sum() };
        let mut layers: BTreeMap<i64, Vec<Root>> = BTreeMap::new();
        let (mut levi_positive, mut p_plus_positive) = (Vec::new(), Vec::new());
        for b in rs.positive_roots() {
            let l = layer(b);
            layers.entry(l).or_default().push(b.clone());
            if l != 0 {
                layers.entry(-l).or_default().push(-b);
                p_plus_positive.push(b.clone());
            } else {
                levi_positive.push(b.clone());
            }
        }
        if let Some(zero) = layers.get_mut(&0) {
            let negatives: Vec<Root> = zero.iter().map(|b| -b).collect();
            zero.extend(negatives);
        }
        let depth = layers.keys().copied().max().unwrap_or(0).max(0) as usize;
        let mut dims: BTreeMap<i64, usize> = layers.iter().map(|(&i, v)| (i, v.len())).collect();
        *dims.entry(0).or_insert(0) += n;
        layers.entry(0).or_default();

        let indicator: Vec<Q> = (0..n)
            .map(|i| if spec.is_crossed(i) { q(1) } else { q(0) })
            .collect();
        // alpha_j(E) = sum_i c_i <alpha_j, alpha_i^vee> = (A^T c)_j
        let coroot_coords = rs.cartan_inverse().transpose().mul_vec(&indicator);
        Ok(ParabolicData {
            rs: rs.clone(),
            spec: spec.clone(),
            grading: Grading {
                depth,
                layers,
                dims,
            },
            grading_element: GradingElement {
                cartan_coords: indicator,
                coroot_coords,
            },
            levi_positive,
            p_plus_positive,
        })
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn spec(&self) -> &ParabolicSpec {
        &self.spec
    }

    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    pub fn depth(&self) -> usize {
        self.grading.depth
    }

    pub fn grading_element(&self) -> &GradingElement {
        &self.grading_element
    }

    /// Positive roots of the Levi factor `g_0`.
    pub fn levi_positive_roots(&self) -> &[Root] {
        &self.levi_positive
    }

    /// Positive roots whose root spaces make up `p_+`.
    pub fn p_plus_roots(&self) -> &[Root] {
        &self.p_plus_positive
    }

    pub fn p_plus_dim(&self) -> usize {
        self.p_plus_positive.len()
    }

    pub fn layer_of(&self, beta: &Root) -> i64 {
        self.spec.crossed().map(|i| beta.0[i]).sum()
    }

    /// Uncrossed nodes: the simple roots of the Levi factor.
    pub fn levi_nodes(&self) -> Vec<usize> {
        (0..self.rs.rank())
            .filter(|&i| !self.spec.is_crossed(i))
            .collect()
    }

    pub fn levi(&self) -> Subsystem<'_> {
        Subsystem::new(&self.rs, &self.levi_nodes())
    }

    pub fn is_borel(&self) -> bool {
        self.levi_positive.is_empty()
    }
}

/// Status of `B(g_i, g_j)` for one pair of layers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingStatus {
    pub i: i64,
    pub j: i64,
    pub is_zero: bool,
    /// Only for `j = -i`: whether the block has full rank.
    pub nondegenerate: Option<bool>,
}

impl PairingStatus {
    pub fn ok(&self) -> bool {
        if self.i + self.j != 0 {
            self.is_zero
        } else {
            self.nondegenerate == Some(true)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingReport {
    pub pairs: Vec<PairingStatus>,
    /// `(i, holds)`: whether `g^i` is the annihilator of `g^{-i+1}`.
    pub annihilators: Vec<(i64, bool)>,
    pub levi_nondegenerate: bool,
}

impl PairingReport {
    pub fn all_ok(&self) -> bool {
        self.levi_nondegenerate
            && self.pairs.iter().all(PairingStatus::ok)
            && self.annihilators.iter().all(|(_, ok)| *ok)
    }
}

/// Checks on the realized Killing matrix that `B(g_i, g_j) = 0` unless
/// `j = -i`, that the surviving pairings are dualities, and that `g^i` is the
/// annihilator of `g^{-i+1}`.
pub fn filtration_pairing_check(pd: &ParabolicData, alg: &LieAlgebraRealization) -> PairingReport {
    let k = pd.depth() as i64;
    let killing = alg.killing();
    let layer_of = |a: usize| pd.layer_of(alg.basis_root(a));
    let members = |i: i64| -> Vec<usize> { (0..alg.dim()).filter(|&a| layer_of(a) == i).collect() };
    let block = |rows: &[usize], cols: &[usize]| {
        let mut m = QMatrix::zeros(rows.len(), cols.len());
        for (r, &a) in rows.iter().enumerate() {
            for (c, &b) in cols.iter().enumerate() {
                m[(r, c)] = killing[(a, b)].clone();
            }
        }
        m
    };
    let mut pairs = Vec::new();
    for i in -k..=k {
        for j in -k..=k {
            let b = block(&members(i), &members(j));
            let nondegenerate = (i + j == 0).then(|| b.rows() == b.cols() && b.rank() == b.rows());
            pairs.push(PairingStatus {
                i,
                j,
                is_zero: b.is_zero(),
                nondegenerate,
            });
        }
    }
    let levi = members(0);
    let levi_block = block(&levi, &levi);
    let levi_nondegenerate = levi_block.rank() == levi.len();

    let all: Vec<usize> = (0..alg.dim()).collect();
    let mut annihilators = Vec::new();
    for i in (-k + 1)..=k {
        let upper: Vec<usize> = all.iter().copied().filter(|&a| layer_of(a) > -i).collect();
        let filt: Vec<usize> = all.iter().copied().filter(|&a| layer_of(a) >= i).collect();
        // annihilator = kernel of the map x -> (B(x, y))_{y in g^{-i+1}}
        let m = block(&upper, &all);
        let ann_dim = alg.dim() - m.rank();
        let contained = block(&filt, &upper).is_zero();
        annihilators.push((i, contained && ann_dim == filt.len()));
    }
    PairingReport {
        pairs,
        annihilators,
        levi_nondegenerate,
    }
}
