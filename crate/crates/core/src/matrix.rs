//! Dense rational matrices and exact linear algebra over ℚ.
//!
//! Everything here is Gauss–Jordan elimination on reduced fractions.  Loops
//! skip zero entries because the catalog matrices are very sparse.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::rational::Q;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

/// Signature of a symmetric form: counts of positive, negative and zero squares.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub struct Signature {
    pub plus: usize,
    pub minus: usize,
    pub zero: usize,
}

impl Signature {
    pub fn is_nondegenerate(&self) -> bool {
        self.zero == 0
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.zero == 0 {
            write!(f, "({},{})", self.plus, self.minus)
        } else {
            write!(f, "({},{},{})", self.plus, self.minus, self.zero)
        }
    }
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat {
            rows,
            cols,
            data: vec![Q::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Q::ONE;
        }
        m
    }

    pub fn diag(entries: &[Q]) -> Mat {
        let mut m = Mat::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Q) -> Mat {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    /// Row-major integer literal.
    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Mat {
        assert_eq!(entries.len(), rows * cols, "entry count");
        Mat {
            rows,
            cols,
            data: entries.iter().map(|&x| Q::int(x)).collect(),
        }
    }

    pub fn from_rows(rows: &[Vec<Q>]) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().cloned());
        }
        Mat { rows: r, cols: c, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vec<Q>], nrows: usize) -> Mat {
        let mut m = Mat::zeros(nrows, cols.len());
        for (j, v) in cols.iter().enumerate() {
            assert_eq!(v.len(), nrows, "column length");
            for (i, x) in v.iter().enumerate() {
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [Q] {
        let c = self.cols;
        &mut self.data[i * c..(i + 1) * c]
    }

    pub fn col(&self, j: usize) -> Vec<Q> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<Q>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[Q] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Q::is_zero)
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().filter(|x| !x.is_zero()).count()
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn trace(&self) -> Q {
        (0..self.rows.min(self.cols)).map(|i| &self[(i, i)]).sum()
    }

    pub fn scale(&self, c: &Q) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn neg(&self) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: &Q, other: &Mat) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        if c.is_zero() {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !b.is_zero() {
                *a += &(c * b);
            }
        }
    }

    /// Matrix product; zero entries of either factor are skipped.
    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Mat::zeros(self.rows, other.cols);
        let nz: Vec<Vec<usize>> = (0..other.rows)
            .map(|k| (0..other.cols).filter(|&j| !other[(k, j)].is_zero()).collect())
            .collect();
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for &j in &nz[k] {
                    let p = a * &other[(k, j)];
                    out[(i, j)] += &p;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(self.cols, v.len(), "shape mismatch in product");
        (0..self.rows)
            .map(|i| {
                let mut acc = Q::ZERO;
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    /// `vᵀ · self`.
    pub fn vec_mul(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(self.rows, v.len(), "shape mismatch in product");
        let mut out = vec![Q::ZERO; self.cols];
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, a) in out.iter_mut().zip(self.row(i)) {
                if !a.is_zero() {
                    *o += &(c * a);
                }
            }
        }
        out
    }

    /// `xᵀ · self · y`.
    pub fn bilinear(&self, x: &[Q], y: &[Q]) -> Q {
        dot(x, &self.mul_vec(y))
    }

    pub fn commutator(&self, other: &Mat) -> Mat {
        self.mul(other).sub(&other.mul(self))
    }

    /// Kronecker product.
    pub fn kron(&self, other: &Mat) -> Mat {
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        Mat::from_fn(r, c, |i, j| {
            let a = &self[(i / other.rows, j / other.cols)];
            if a.is_zero() {
                Q::ZERO
            } else {
                a * &other[(i % other.rows, j % other.cols)]
            }
        })
    }

    /// Sub-block with the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Mat {
        Mat::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])].clone())
    }

    /// `P⁻¹ X P` for the permutation matrix sending basis vector `j` to `order[j]`,
    /// i.e. the entries reindexed as `X[order[i]][order[j]]`.
    pub fn reindex(&self, order: &[usize]) -> Mat {
        self.select(order, order)
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self[(r, c)].recip();
            if !inv.is_one() {
                for x in self.row_mut(r) {
                    if !x.is_zero() {
                        *x = &*x * &inv;
                    }
                }
            }
            let support: Vec<usize> = (c..self.cols).filter(|&j| !self[(r, j)].is_zero()).collect();
            let pivot_row: Vec<Q> = support.iter().map(|&j| self[(r, j)].clone()).collect();
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self[(i, c)].clone();
                if f.is_zero() {
                    continue;
                }
                for (&j, pv) in support.iter().zip(&pivot_row) {
                    let d = &f * pv;
                    self[(i, j)] -= &d;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let c = self.cols;
        for j in 0..c {
            self.data.swap(a * c + j, b * c + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : self · x = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Q>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for f in 0..self.cols {
            if is_pivot[f] {
                continue;
            }
            let mut v = vec![Q::ZERO; self.cols];
            v[f] = Q::ONE;
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -&r[(i, f)];
            }
            basis.push(v);
        }
        basis
    }

    /// Row-reduced basis of the row space.
    pub fn row_space(&self) -> Mat {
        let (r, pivots) = self.rref();
        let k = pivots.len();
        Mat::from_fn(k, self.cols, |i, j| r[(i, j)].clone())
    }

    pub fn inverse(&self) -> Option<Mat> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Mat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Q::ONE;
        }
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Mat::from_fn(n, n, |i, j| aug[(i, n + j)].clone()))
    }

    pub fn det(&self) -> Q {
        assert!(self.is_square(), "determinant of non-square matrix");
        let mut m = self.clone();
        let n = self.rows;
        let mut det = Q::ONE;
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Q::ZERO;
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m[(c, c)].clone();
            det = &det * &piv;
            let inv = piv.recip();
            for i in c + 1..n {
                let f = &m[(i, c)] * &inv;
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let d = &f * &m[(c, j)];
                    if !d.is_zero() {
                        m[(i, j)] -= &d;
                    }
                }
            }
        }
        det
    }

    /// Solves `self · x = b`; `None` if inconsistent.  Picks the solution with
    /// free variables set to zero.
    pub fn solve(&self, b: &[Q]) -> Option<Vec<Q>> {
        assert_eq!(self.rows, b.len(), "shape mismatch in solve");
        let mut aug = Mat::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let pivots = aug.rref_in_place();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Q::ZERO; self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = aug[(i, self.cols)].clone();
        }
        Some(x)
    }

    /// Signature of a symmetric matrix by exact congruence diagonalization.
    pub fn signature(&self) -> Signature {
        assert!(self.is_symmetric(), "signature of a non-symmetric matrix");
        let n = self.rows;
        let mut a = self.clone();
        let (mut plus, mut minus, mut zero) = (0, 0, 0);
        for i in 0..n {
            if a[(i, i)].is_zero() {
                if let Some(j) = (i + 1..n).find(|&j| !a[(j, j)].is_zero()) {
                    a.swap_rows(i, j);
                    a.swap_cols(i, j);
                } else if let Some(j) = (i + 1..n).find(|&j| !a[(i, j)].is_zero()) {
                    // a_ii = a_jj = 0, a_ij ≠ 0: adding e_j to e_i makes a_ii = 2 a_ij.
                    a.add_row_col(i, j);
                }
            }
            let p = a[(i, i)].clone();
            if p.is_zero() {
                zero += 1;
                continue;
            }
            if p.is_positive() {
                plus += 1;
            } else {
                minus += 1;
            }
            let inv = p.recip();
            for j in i + 1..n {
                let f = &a[(j, i)] * &inv;
                if f.is_zero() {
                    continue;
                }
                for k in i..n {
                    let d = &f * &a[(i, k)];
                    if !d.is_zero() {
                        a[(j, k)] -= &d;
                    }
                }
                for k in i..n {
                    let d = &f * &a[(k, i)];
                    if !d.is_zero() {
                        a[(k, j)] -= &d;
                    }
                }
            }
        }
        Signature { plus, minus, zero }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// Congruence by `e_i ← e_i + e_j`.
    fn add_row_col(&mut self, i: usize, j: usize) {
        for k in 0..self.cols {
            let v = self[(j, k)].clone();
            self[(i, k)] += &v;
        }
        for k in 0..self.rows {
            let v = self[(k, j)].clone();
            self[(k, i)] += &v;
        }
    }

    /// Largest absolute entry (zero for an empty matrix).
    pub fn max_abs(&self) -> Q {
        self.data.iter().map(Q::abs).max().unwrap_or(Q::ZERO)
    }

    /// Entries flattened row-major into a vector.
    pub fn flatten(&self) -> Vec<Q> {
        self.data.clone()
    }
}

impl Index<(usize, usize)> for Mat {
    type Output = Q;
    fn index(&self, (i, j): (usize, usize)) -> &Q {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Q {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

pub fn dot(x: &[Q], y: &[Q]) -> Q {
    assert_eq!(x.len(), y.len(), "length mismatch in dot product");
    let mut acc = Q::ZERO;
    for (a, b) in x.iter().zip(y) {
        if !a.is_zero() && !b.is_zero() {
            acc += &(a * b);
        }
    }
    acc
}

pub fn vec_add(x: &[Q], y: &[Q]) -> Vec<Q> {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

pub fn vec_sub(x: &[Q], y: &[Q]) -> Vec<Q> {
    x.iter().zip(y).map(|(a, b)| a - b).collect()
}

pub fn vec_scale(x: &[Q], c: &Q) -> Vec<Q> {
    x.iter().map(|a| a * c).collect()
}

pub fn is_zero_vec(x: &[Q]) -> bool {
    x.iter().all(Q::is_zero)
}

/// Rank of a list of equal-length vectors.
pub fn rank_of(vectors: &[Vec<Q>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Mat::from_rows(vectors).rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Q {
        Q::int(n)
    }

    #[test]
    fn inverse_round_trip() {
        let a = Mat::from_i64(3, 3, &[2, 1, 0, 1, 3, 1, 0, 1, 4]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Mat::identity(3));
        assert_eq!(a.det(), q(18));
        assert!(Mat::from_i64(2, 2, &[1, 2, 2, 4]).inverse().is_none());
    }

    #[test]
    fn nullspace_annihilates() {
        let a = Mat::from_i64(2, 4, &[1, 2, 0, -1, 0, 0, 1, 3]);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(is_zero_vec(&a.mul_vec(v)));
        }
        assert_eq!(a.rank(), 2);
    }

    #[test]
    fn signature_of_hyperbolic_plane() {
        // Zero diagonal forces the e_i + e_j step.
        let h = Mat::from_i64(2, 2, &[0, 1, 1, 0]);
        assert_eq!(h.signature(), Signature { plus: 1, minus: 1, zero: 0 });
        let d = Mat::from_i64(3, 3, &[1, 2, 0, 2, 1, 0, 0, 0, 0]);
        assert_eq!(d.signature(), Signature { plus: 1, minus: 1, zero: 1 });
    }

    #[test]
    fn solve_detects_inconsistency() {
        let a = Mat::from_i64(2, 2, &[1, 1, 2, 2]);
        assert!(a.solve(&[q(1), q(3)]).is_none());
        let x = a.solve(&[q(1), q(2)]).unwrap();
        assert_eq!(a.mul_vec(&x), vec![q(1), q(2)]);
    }

    #[test]
    fn kron_shapes() {
        let x = Mat::from_i64(2, 2, &[0, 1, 1, 0]);
        let z = Mat::from_i64(2, 2, &[1, 0, 0, -1]);
        let k = x.kron(&z);
        assert_eq!(k.rows(), 4);
        assert_eq!(k[(0, 2)], q(1));
        assert_eq!(k[(1, 3)], q(-1));
    }
}
