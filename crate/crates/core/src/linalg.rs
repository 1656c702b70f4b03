//! Exact rational linear algebra.
//!
//! Dense matrices over arbitrary-precision rationals. Echelon forms are
//! computed fraction-free (Bareiss elimination over integers after clearing
//! row denominators), so rank decisions are always exact.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar used throughout the crate.
pub type Q = BigRational;

/// Sparse vector keyed by basis index; zero entries are never stored.
pub type SparseVec = BTreeMap<usize, Q>;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Adds `coeff * v` into `acc`, dropping entries that cancel.
pub fn sparse_axpy(acc: &mut SparseVec, coeff: &Q, v: &SparseVec) {
    if coeff.is_zero() {
        return;
    }
    for (k, x) in v {
        sparse_add_entry(acc, *k, coeff * x);
    }
}

pub fn sparse_add_entry(acc: &mut SparseVec, k: usize, x: Q) {
    if x.is_zero() {
        return;
    }
    let remove = {
        let e = acc.entry(k).or_insert_with(Q::zero);
        *e += x;
        e.is_zero()
    };
    if remove {
        acc.remove(&k);
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Result of reducing a matrix to reduced row echelon form.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: QMatrix,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Basis of the null space, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<Q>> {
        let n = self.matrix.cols;
        let mut is_pivot = vec![false; n];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..n).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Q::zero(); n];
            v[free] = Q::one();
            for (r, &p) in self.pivots.iter().enumerate() {
                let x = &self.matrix[(r, free)];
                if !x.is_zero() {
                    v[p] = -x.clone();
                }
            }
            basis.push(v);
        }
        basis
    }
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Q::one();
        }
        m
    }

    pub fn scalar(n: usize, c: &Q) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        QMatrix {
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| q(x)).collect())
                .collect(),
        )
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, cols: &[Vec<Q>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn from_sparse_columns(rows: usize, cols: &[SparseVec]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for (&i, x) in col {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[Q] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Q> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn sparse_column(&self, c: usize) -> SparseVec {
        (0..self.rows)
            .filter(|&r| !self[(r, c)].is_zero())
            .map(|r| (r, self[(r, c)].clone()))
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// `Some(c)` when the matrix equals `c` times the identity.
    pub fn as_scalar(&self) -> Option<Q> {
        if self.rows != self.cols {
            return None;
        }
        if self.rows == 0 {
            return Some(Q::zero());
        }
        let c = self[(0, 0)].clone();
        for r in 0..self.rows {
            for col in 0..self.cols {
                let x = &self[(r, col)];
                let ok = if r == col { *x == c } else { x.is_zero() };
                if !ok {
                    return None;
                }
            }
        }
        Some(c)
    }

    pub fn scale(&self, c: &Q) -> Self {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = Q::zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    pub fn trace(&self) -> Q {
        (0..self.rows.min(self.cols)).fold(Q::zero(), |acc, i| acc + &self[(i, i)])
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Self {
        if self.rows == 0 {
            return other.clone();
        }
        if other.rows == 0 {
            return self.clone();
        }
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        QMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Reduced row echelon form. The forward pass is fraction-free.
    pub fn rref(&self) -> Rref {
        let (echelon, pivots) = bareiss_echelon(self);
        let r = pivots.len();
        let mut m = QMatrix::zeros(r, self.cols);
        for (i, row) in echelon.into_iter().take(r).enumerate() {
            for (j, x) in row.into_iter().enumerate() {
                if !x.is_zero() {
                    m[(i, j)] = Q::from_integer(x);
                }
            }
        }
        // normalize pivots, then clear above
        for (i, &p) in pivots.iter().enumerate() {
            let inv = m[(i, p)].recip();
            for j in p..self.cols {
                if !m[(i, j)].is_zero() {
                    m[(i, j)] = &m[(i, j)] * &inv;
                }
            }
        }
        for (i, &p) in pivots.iter().enumerate().rev() {
            for k in 0..i {
                let f = m[(k, p)].clone();
                if f.is_zero() {
                    continue;
                }
                for j in p..self.cols {
                    if !m[(i, j)].is_zero() {
                        let delta = &f * &m[(i, j)];
                        m[(k, j)] -= delta;
                    }
                }
            }
        }
        Rref { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        bareiss_echelon(self).1.len()
    }

    pub fn kernel(&self) -> Vec<Vec<Q>> {
        if self.rows == 0 {
            return (0..self.cols)
                .map(|i| {
                    let mut v = vec![Q::zero(); self.cols];
                    v[i] = Q::one();
                    v
                })
                .collect();
        }
        self.rref().kernel()
    }

    /// Basis (as column vectors) of the column space, taken from pivot columns.
    pub fn column_space(&self) -> Vec<Vec<Q>> {
        if self.cols == 0 || self.rows == 0 {
            return Vec::new();
        }
        let (_, pivots) = bareiss_echelon(self);
        pivots.iter().map(|&c| self.column(c)).collect()
    }

    /// Rows spanning the left null space: `N * self = 0`.
    pub fn left_kernel(&self) -> QMatrix {
        let k = self.transpose().kernel();
        let mut n = QMatrix::zeros(k.len(), self.rows);
        for (i, v) in k.into_iter().enumerate() {
            for (j, x) in v.into_iter().enumerate() {
                n[(i, j)] = x;
            }
        }
        n
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = QMatrix::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, n + r)] = Q::one();
        }
        let red = aug.rref();
        if red.pivots.len() < n || red.pivots[..n].iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        let mut inv = QMatrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv[(r, c)] = red.matrix[(r, n + c)].clone();
            }
        }
        Some(inv)
    }

    /// Some solution `x` of `self * x = b`, if one exists.
    pub fn solve(&self, b: &[Q]) -> Option<Vec<Q>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = QMatrix::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, self.cols)] = b[r].clone();
        }
        let red = aug.rref();
        if red.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Q::zero(); self.cols];
        for (i, &p) in red.pivots.iter().enumerate() {
            x[p] = red.matrix[(i, self.cols)].clone();
        }
        Some(x)
    }
}

/// Fraction-free forward elimination. Rows are first scaled to integers.
/// Returns the integer echelon rows and the pivot columns.
fn bareiss_echelon(m: &QMatrix) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let mut a: Vec<Vec<BigInt>> = (0..m.rows)
        .map(|r| {
            let row = m.row(r);
            let l = row
                .iter()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter()
                .map(|x| x.numer() * (&l / x.denom()))
                .collect()
        })
        .collect();
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (top, bottom) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let piv = pivot_row[c].clone();
        for row in bottom.iter_mut() {
            let lead = row[c].clone();
            for j in (c + 1)..cols {
                let v = &piv * &row[j] - &lead * &pivot_row[j];
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
            row[c] = BigInt::zero();
        }
        prev = piv;
        pivots.push(c);
        r += 1;
    }
    // remove common content so later conversions stay small
    for row in a.iter_mut().take(r) {
        let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if !g.is_zero() && !g.is_one() {
            for x in row.iter_mut() {
                *x = &*x / &g;
            }
        }
        if row.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
            for x in row.iter_mut() {
                *x = -&*x;
            }
        }
    }
    (a, pivots)
}

impl Index<(usize, usize)> for QMatrix {
    type Output = Q;
    fn index(&self, (r, c): (usize, usize)) -> &Q {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Q {
        &mut self.data[r * self.cols + c]
    }
}

impl Mul for &QMatrix {
    type Output = QMatrix;
    fn mul(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in product");
        let mut out = QMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl Add for &QMatrix {
    type Output = QMatrix;
    fn add(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &QMatrix {
    type Output = QMatrix;
    fn sub(self, rhs: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &QMatrix {
    type Output = QMatrix;
    fn neg(self) -> QMatrix {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> QMatrix {
        QMatrix::from_i64_rows(rows)
    }

    #[test]
    fn rank_and_kernel_of_singular_matrix() {
        let a = m(&[vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        let k = a.kernel();
        assert_eq!(k.len(), 1);
        assert!(a.mul_vec(&k[0]).iter().all(Zero::is_zero));
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(&[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]);
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, QMatrix::identity(3));
        assert_eq!(inv[(0, 0)], qf(3, 4));
    }

    #[test]
    fn singular_has_no_inverse() {
        assert!(m(&[vec![1, 1], vec![1, 1]]).inverse().is_none());
    }

    #[test]
    fn solve_and_inconsistent_system() {
        let a = m(&[vec![1, 1], vec![1, -1]]);
        assert_eq!(a.solve(&[q(3), q(1)]).unwrap(), vec![q(2), q(1)]);
        let b = m(&[vec![1, 1], vec![2, 2]]);
        assert!(b.solve(&[q(1), q(3)]).is_none());
    }

    #[test]
    fn rref_with_rational_entries() {
        let a = QMatrix::from_rows(vec![
            vec![qf(1, 2), qf(1, 3), q(0)],
            vec![qf(1, 4), qf(1, 6), q(1)],
        ]);
        let r = a.rref();
        assert_eq!(r.pivots, vec![0, 2]);
        assert_eq!(r.matrix[(0, 1)], qf(2, 3));
        assert_eq!(r.matrix[(1, 2)], q(1));
    }

    #[test]
    fn left_kernel_annihilates() {
        let a = m(&[vec![1, 0], vec![0, 1], vec![1, 1]]);
        let n = a.left_kernel();
        assert_eq!(n.rows(), 1);
        assert!((&n * &a).is_zero());
    }

    #[test]
    fn empty_shapes() {
        let a = QMatrix::zeros(0, 3);
        assert_eq!(a.rank(), 0);
        assert_eq!(a.kernel().len(), 3);
        assert!(QMatrix::zeros(3, 0).column_space().is_empty());
    }
}
