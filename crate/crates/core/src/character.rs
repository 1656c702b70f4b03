//! Weight multiplicities for reductive subalgebras spanned by a subset of the
//! simple roots (the whole algebra, or a Levi factor).
//!
//! Multiplicities come from Freudenthal's formula, computed on dominant weights
//! and spread over Weyl orbits. All weights are ambient fundamental-weight
//! coordinates, so the center of a Levi factor is carried along for free.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_traits::Zero;

use crate::linalg::{q, Q};
use crate::rootsys::{Root, RootSystem, Weight};

/// Multiset of weights, `weight -> multiplicity`.
pub type Character = BTreeMap<Weight, i64>;

/// The reductive subalgebra generated by the Cartan subalgebra and the root
/// spaces of roots supported on `nodes`.
#[derive(Clone, Debug)]
pub struct Subsystem<'a> {
    rs: &'a RootSystem,
    nodes: Vec<usize>,
    positive: Vec<Root>,
    /// Fundamental-weight coordinates of the positive roots.
    positive_weights: Vec<Weight>,
    two_rho: Weight,
}

impl<'a> Subsystem<'a> {
    pub fn new(rs: &'a RootSystem, nodes: &[usize]) -> Self {
        let mut nodes = nodes.to_vec();
        nodes.sort_unstable();
        nodes.dedup();
        let positive: Vec<Root> = rs
            .positive_roots()
            .iter()
            .filter(|b| {
                b.0.iter()
                    .enumerate()
                    .all(|(i, &c)| c == 0 || nodes.contains(&i))
            })
            .cloned()
            .collect();
        let positive_weights: Vec<Weight> = positive.iter().map(|b| rs.root_to_weight(b)).collect();
        let two_rho = positive_weights
            .iter()
            .fold(Weight::zero(rs.rank()), |acc, b| &acc + b);
        Subsystem {
            rs,
            nodes,
            positive,
            positive_weights,
            two_rho,
        }
    }

    pub fn full(rs: &'a RootSystem) -> Self {
        let nodes: Vec<usize> = (0..rs.rank()).collect();
        Self::new(rs, &nodes)
    }

    pub fn root_system(&self) -> &'a RootSystem {
        self.rs
    }

    pub fn nodes(&self) -> &[usize] {
        &self.nodes
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    pub fn is_dominant(&self, mu: &Weight) -> bool {
        self.nodes.iter().all(|&i| mu.0[i] >= 0)
    }

    pub fn is_antidominant(&self, mu: &Weight) -> bool {
        self.nodes.iter().all(|&i| mu.0[i] <= 0)
    }

    pub fn dominant_representative(&self, mu: &Weight) -> Weight {
        let mut m = mu.clone();
        while let Some(&i) = self.nodes.iter().find(|&&i| m.0[i] < 0) {
            m = self.rs.reflect_unchecked(i, &m);
        }
        m
    }

    pub fn antidominant_representative(&self, mu: &Weight) -> Weight {
        let mut m = mu.clone();
        while let Some(&i) = self.nodes.iter().find(|&&i| m.0[i] > 0) {
            m = self.rs.reflect_unchecked(i, &m);
        }
        m
    }

    pub fn orbit(&self, mu: &Weight) -> BTreeSet<Weight> {
        let mut seen = BTreeSet::from([mu.clone()]);
        let mut queue = VecDeque::from([mu.clone()]);
        while let Some(m) = queue.pop_front() {
            for &i in &self.nodes {
                let r = self.rs.reflect_unchecked(i, &m);
                if seen.insert(r.clone()) {
                    queue.push_back(r);
                }
            }
        }
        seen
    }

    /// Order of the Weyl group of the subsystem.
    pub fn weyl_order(&self) -> usize {
        // the stabilizer of a regular weight is trivial
        self.orbit(&self.rs.rho()).len()
    }

    /// Weyl dimension formula for the irreducible module with highest weight `mu`.
    pub fn dimension(&self, mu: &Weight) -> Q {
        let shifted = &(2 * mu) + &self.two_rho;
        self.positive_weights.iter().fold(q(1), |acc, b| {
            acc * self.rs.inner(&shifted, b) / self.rs.inner(&self.two_rho, b)
        })
    }

    /// Full character of the irreducible module with highest weight `mu`.
    ///
    /// Panics if `mu` is not dominant for the subsystem.
    pub fn irreducible_character(&self, mu: &Weight) -> Character {
        assert!(self.is_dominant(mu), "highest weight must be dominant");
        let dominant = self.dominant_multiplicities(mu);
        let mut out = Character::new();
        for (nu, m) in dominant {
            for w in self.orbit(&nu) {
                out.insert(w, m);
            }
        }
        out
    }

    /// Freudenthal multiplicities of the dominant weights of `L(mu)`.
    fn dominant_multiplicities(&self, mu: &Weight) -> BTreeMap<Weight, i64> {
        // dominant weights below mu, found by subtracting positive roots
        let mut depth_of: BTreeMap<Weight, i64> = BTreeMap::new();
        depth_of.insert(mu.clone(), 0);
        let mut queue = VecDeque::from([mu.clone()]);
        let root_depth: Vec<i64> = self.positive.iter().map(|b| b.height()).collect();
        while let Some(nu) = queue.pop_front() {
            let d = depth_of[&nu];
            for (b, h) in self.positive_weights.iter().zip(&root_depth) {
                let next = &nu - b;
                if self.is_dominant(&next) && !depth_of.contains_key(&next) {
                    depth_of.insert(next.clone(), d + h);
                    queue.push_back(next);
                }
            }
        }
        let mut order: Vec<(i64, Weight)> = depth_of.into_iter().map(|(w, d)| (d, w)).collect();
        order.sort();

        let mu_shift = self.shifted_norm(mu);
        let mut mult: BTreeMap<Weight, i64> = BTreeMap::new();
        for (_, nu) in order {
            if &nu == mu {
                mult.insert(nu, 1);
                continue;
            }
            let mut num = Q::zero();
            for b in &self.positive_weights {
                let mut k = 1;
                loop {
                    let up = &nu + &(k * b);
                    let rep = self.dominant_representative(&up);
                    match mult.get(&rep) {
                        Some(&m) if m != 0 => {
                            num += q(m) * self.rs.inner(&up, b);
                        }
                        _ => {
                            // past the top of the string once the dominant
                            // representative is no longer below mu
                            if !self.lies_below(&rep, mu) {
                                break;
                            }
                        }
                    }
                    k += 1;
                }
            }
            let den = &mu_shift - self.shifted_norm(&nu);
            let m = q(2) * num / den;
            assert!(m.is_integer(), "non-integral Freudenthal multiplicity");
            let m: i64 = m.to_integer().try_into().expect("small multiplicity");
            mult.insert(nu, m);
        }
        mult
    }

    /// `(nu + rho_s, nu + rho_s)` up to a constant that cancels in differences.
    fn shifted_norm(&self, nu: &Weight) -> Q {
        self.rs.inner(nu, nu) + self.rs.inner(nu, &self.two_rho)
    }

    /// Whether `mu - nu` is a nonnegative combination of the subsystem's simple roots.
    fn lies_below(&self, nu: &Weight, mu: &Weight) -> bool {
        let diff = self.rs.weight_to_root_coords(&(mu - nu));
        diff.iter().enumerate().all(|(i, c)| {
            if self.nodes.contains(&i) {
                c.is_integer() && *c >= Q::zero()
            } else {
                c.is_zero()
            }
        })
    }
}

/// Character of the tensor product of two modules.
pub fn tensor(a: &Character, b: &Character) -> Character {
    let mut out = Character::new();
    for (wa, ma) in a {
        for (wb, mb) in b {
            *out.entry(wa + wb).or_insert(0) += ma * mb;
        }
    }
    out
}

/// Characters of the exterior powers of a module whose weights are listed
/// with repetition in `weights`; entry `k` is the character of the k-th power.
pub fn exterior_powers(rank: usize, weights: &[Weight]) -> Vec<Character> {
    let mut powers: Vec<Character> = vec![Character::from([(Weight::zero(rank), 1)])];
    for w in weights {
        let mut next: Vec<Character> = powers.clone();
        next.push(Character::new());
        for (k, ch) in powers.iter().enumerate() {
            for (mu, m) in ch {
                *next[k + 1].entry(mu + w).or_insert(0) += m;
            }
        }
        powers = next;
    }
    powers
}

pub fn character_dimension(ch: &Character) -> i64 {
    ch.values().sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::DynkinSpec;

    fn rs(t: &str) -> RootSystem {
        RootSystem::new(t.parse::<DynkinSpec>().unwrap())
    }

    #[test]
    fn adjoint_characters_have_rank_zero_weight_multiplicity() {
        for t in ["A2", "B2", "G2", "B3", "C3", "A3", "D4", "F4"] {
            let r = rs(t);
            let theta = r.root_to_weight(r.highest_root());
            let ch = Subsystem::full(&r).irreducible_character(&theta);
            assert_eq!(ch[&Weight::zero(r.rank())], r.rank() as i64, "{t}");
            assert_eq!(
                character_dimension(&ch),
                2 * r.positive_roots().len() as i64 + r.rank() as i64
            );
        }
    }

    #[test]
    fn characters_match_weyl_dimension() {
        let r = rs("B3");
        let full = Subsystem::full(&r);
        for w in [vec![1, 0, 0], vec![0, 0, 1], vec![1, 1, 0], vec![0, 1, 1], vec![2, 0, 1]] {
            let w = Weight(w);
            let ch = full.irreducible_character(&w);
            assert_eq!(q(character_dimension(&ch)), full.dimension(&w));
            assert_eq!(q(character_dimension(&ch)), r.weyl_dimension(&w));
        }
        let g2 = rs("G2");
        let full = Subsystem::full(&g2);
        for w in [vec![1, 0], vec![0, 1], vec![2, 0], vec![1, 1]] {
            let w = Weight(w);
            assert_eq!(q(character_dimension(&full.irreducible_character(&w))), g2.weyl_dimension(&w));
        }
    }

    #[test]
    fn levi_of_a2_crossed_first_node() {
        let r = rs("A2");
        let levi = Subsystem::new(&r, &[1]);
        assert_eq!(levi.positive_roots().len(), 1);
        assert_eq!(levi.weyl_order(), 2);
        // highest weight alpha_1 + alpha_2 = (1,1): a 2-dimensional sl2-module
        let ch = levi.irreducible_character(&Weight(vec![1, 1]));
        assert_eq!(ch.len(), 2);
        assert!(ch.contains_key(&Weight(vec![2, -1])));
    }

    #[test]
    fn exterior_power_dimensions() {
        let r = rs("A2");
        let ws: Vec<Weight> = r.positive_roots().iter().map(|b| r.root_to_weight(b)).collect();
        let p = exterior_powers(2, &ws);
        let dims: Vec<i64> = p.iter().map(character_dimension).collect();
        assert_eq!(dims, vec![1, 3, 3, 1]);
        assert_eq!(p[3][&Weight(vec![2, 2])], 1);
    }
}
