//! Lie algebras over ℚ: abstract ones given by structure constants, and
//! matrix algebras given by a rational basis of N×N matrices.

use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::matrix::{is_zero_vec, Mat, Signature};
use crate::rational::Q;

/// Sparse vector of `(index, coefficient)` pairs with nonzero coefficients.
pub type SparseVec = Vec<(usize, Q)>;

fn sparsify(v: &[Q]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

/// A finite-dimensional real Lie algebra in a fixed basis.
#[derive(Debug)]
pub struct LieAlgebra {
    name: String,
    dim: usize,
    /// `brackets[i * dim + j]` = coordinates of `[e_i, e_j]`.
    brackets: Vec<SparseVec>,
    killing: OnceLock<Mat>,
}

impl LieAlgebra {
    /// Builds an algebra from the brackets of basis pairs.  Antisymmetry is
    /// checked; the Jacobi identity is left to [`LieAlgebra::jacobi_holds`].
    pub fn from_brackets(name: impl Into<String>, dim: usize, brackets: Vec<Vec<Q>>) -> Result<LieAlgebra> {
        let name = name.into();
        if brackets.len() != dim * dim || brackets.iter().any(|b| b.len() != dim) {
            return Err(Error::InvalidParams(format!("bracket table of `{name}` has wrong shape")));
        }
        let brackets: Vec<SparseVec> = brackets.iter().map(|b| sparsify(b)).collect();
        for i in 0..dim {
            for j in 0..dim {
                let a = &brackets[i * dim + j];
                let b = &brackets[j * dim + i];
                let antisym = a.len() == b.len() && a.iter().zip(b).all(|((k, x), (l, y))| k == l && *x == -y);
                if !antisym {
                    return Err(Error::InvalidParams(format!("brackets of `{name}` are not antisymmetric")));
                }
            }
        }
        Ok(LieAlgebra {
            name,
            dim,
            brackets,
            killing: OnceLock::new(),
        })
    }

    fn from_sparse(name: String, dim: usize, brackets: Vec<SparseVec>) -> LieAlgebra {
        LieAlgebra {
            name,
            dim,
            brackets,
            killing: OnceLock::new(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Coordinates of `[e_i, e_j]`, sparse.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[(usize, Q)] {
        &self.brackets[i * self.dim + j]
    }

    /// Structure constant `C^k_{ij}`.
    pub fn constant(&self, i: usize, j: usize, k: usize) -> Q {
        self.bracket_basis(i, j)
            .iter()
            .find(|(l, _)| *l == k)
            .map_or(Q::ZERO, |(_, c)| c.clone())
    }

    pub fn bracket(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::ZERO; self.dim];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() || i == j {
                    continue;
                }
                let ab = a * b;
                for (k, c) in self.bracket_basis(i, j) {
                    out[*k] += &(&ab * c);
                }
            }
        }
        out
    }

    /// Matrix of `ad x` in this basis (column j = `[x, e_j]`).
    pub fn ad(&self, x: &[Q]) -> Mat {
        let mut m = Mat::zeros(self.dim, self.dim);
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for j in 0..self.dim {
                for (k, c) in self.bracket_basis(i, j) {
                    m[(*k, j)] += &(a * c);
                }
            }
        }
        m
    }

    /// `K(X, Y) = tr(ad X ∘ ad Y)` in this basis.
    pub fn killing(&self) -> &Mat {
        self.killing.get_or_init(|| {
            let d = self.dim;
            let mut k = Mat::zeros(d, d);
            for i in 0..d {
                for j in i..d {
                    // Σ_{l,m} C^m_{il} C^l_{jm}
                    let mut acc = Q::ZERO;
                    for l in 0..d {
                        for (m, c) in self.bracket_basis(i, l) {
                            let c2 = self.constant(j, *m, l);
                            if !c2.is_zero() {
                                acc += &(c * &c2);
                            }
                        }
                    }
                    k[(i, j)] = acc.clone();
                    k[(j, i)] = acc;
                }
            }
            k
        })
    }

    pub fn killing_signature(&self) -> Signature {
        self.killing().signature()
    }

    /// Exact Jacobi identity on all basis triples.
    pub fn jacobi_holds(&self) -> bool {
        let d = self.dim;
        let unit = |i: usize| {
            let mut v = vec![Q::ZERO; d];
            v[i] = Q::ONE;
            v
        };
        for i in 0..d {
            for j in i + 1..d {
                let ij = self.bracket(&unit(i), &unit(j));
                for k in j + 1..d {
                    let ek = unit(k);
                    let a = self.bracket(&ij, &ek);
                    let b = self.bracket(&self.bracket(&unit(j), &ek), &unit(i));
                    let c = self.bracket(&self.bracket(&ek, &unit(i)), &unit(j));
                    if (0..d).any(|l| !(&(&a[l] + &b[l]) + &c[l]).is_zero()) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `K([Z,X],Y) + K(X,[Z,Y]) = 0` for all basis triples.
    pub fn killing_is_invariant(&self) -> bool {
        form_is_ad_invariant(self, self.killing(), &Subspace::full(self.dim))
    }

    pub fn is_semisimple(&self) -> bool {
        self.dim > 0 && self.killing().rank() == self.dim
    }

    /// Kernel of `ad`.
    pub fn center(&self) -> Subspace {
        let d = self.dim;
        // Stack the matrices of ad(e_j) acting on x: [x, e_j] = −ad(e_j) x.
        let mut rows = Vec::new();
        for j in 0..d {
            let mut col_block = Mat::zeros(d, d);
            for i in 0..d {
                for (k, c) in self.bracket_basis(i, j) {
                    col_block[(*k, i)] = c.clone();
                }
            }
            rows.extend(col_block.row_vecs());
        }
        if rows.is_empty() {
            return Subspace::zero(d);
        }
        Subspace::span(d, &Mat::from_rows(&rows).nullspace())
    }

    pub fn derived(&self) -> Subspace {
        let d = self.dim;
        let mut vecs = Vec::new();
        for i in 0..d {
            for j in i + 1..d {
                let b = self.bracket_basis(i, j);
                if !b.is_empty() {
                    let mut v = vec![Q::ZERO; d];
                    for (k, c) in b {
                        v[*k] = c.clone();
                    }
                    vecs.push(v);
                }
            }
        }
        Subspace::span(d, &vecs)
    }

    /// The same algebra in a new basis given by the rows of `basis`
    /// (coordinates in the current basis).
    pub fn change_basis(&self, name: impl Into<String>, basis: &Mat) -> Result<LieAlgebra> {
        let d = self.dim;
        if basis.rows() != d || basis.cols() != d {
            return Err(Error::ShapeMismatch);
        }
        let inv = basis.inverse().ok_or_else(|| Error::DependentBasis(self.name.clone()))?;
        let rows = basis.row_vecs();
        let mut brackets = vec![Vec::new(); d * d];
        for i in 0..d {
            for j in i + 1..d {
                let b = self.bracket(&rows[i], &rows[j]);
                // new coordinates c with cᵀ basis = b
                let c = inv.vec_mul(&b);
                brackets[i * d + j] = sparsify(&c);
                brackets[j * d + i] = sparsify(&c.iter().map(|x| -x).collect::<Vec<_>>());
            }
        }
        Ok(LieAlgebra::from_sparse(name.into(), d, brackets))
    }

    /// Subalgebra on the rows of `sub`, in that basis.
    pub fn subalgebra(&self, name: impl Into<String>, sub: &Subspace) -> Result<LieAlgebra> {
        let name = name.into();
        let k = sub.dim();
        let rows = sub.vectors();
        let mut brackets = vec![Vec::new(); k * k];
        for i in 0..k {
            for j in i + 1..k {
                let b = self.bracket(&rows[i], &rows[j]);
                let c = sub
                    .coords(&b)
                    .ok_or_else(|| Error::NotSubalgebra { name: name.clone(), i, j })?;
                brackets[i * k + j] = sparsify(&c);
                brackets[j * k + i] = sparsify(&c.iter().map(|x| -x).collect::<Vec<_>>());
            }
        }
        Ok(LieAlgebra::from_sparse(name, k, brackets))
    }

    /// Structural fingerprint used to compare algebras built independently.
    pub fn fingerprint(&self) -> Fingerprint {
        Fingerprint {
            dim: self.dim,
            killing: self.killing_signature(),
            center: self.center().dim(),
            derived: self.derived().dim(),
        }
    }
}

/// Invariants that any isomorphism preserves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Fingerprint {
    pub dim: usize,
    pub killing: Signature,
    pub center: usize,
    pub derived: usize,
}

/// `F([Z,X],Y) + F(X,[Z,Y]) = 0` for `Z` in the basis of `h` and all basis `X, Y`.
pub fn form_is_ad_invariant(l: &LieAlgebra, form: &Mat, h: &Subspace) -> bool {
    for z in h.vectors() {
        let ad = l.ad(&z);
        // F(ad·X, Y) + F(X, ad·Y) = (adᵀ F + F ad)_{XY}
        let lhs = ad.transpose().mul(form).add(&form.mul(&ad));
        if !lhs.is_zero() {
            return false;
        }
    }
    true
}

/// Linear span of matrices with exact coordinate extraction.
#[derive(Debug, Clone)]
pub struct MatrixSpan {
    n: usize,
    basis: Vec<Mat>,
    pivots: Vec<usize>,
    inv: Mat,
}

impl MatrixSpan {
    pub fn new(name: &str, basis: Vec<Mat>) -> Result<MatrixSpan> {
        let n = basis.first().map_or(0, Mat::rows);
        if basis.iter().any(|b| b.rows() != n || b.cols() != n) {
            return Err(Error::ShapeMismatch);
        }
        let d = basis.len();
        if d == 0 {
            return Ok(MatrixSpan {
                n,
                basis,
                pivots: Vec::new(),
                inv: Mat::zeros(0, 0),
            });
        }
        let flat = Mat::from_rows(&basis.iter().map(Mat::flatten).collect::<Vec<_>>());
        let (_, pivots) = flat.rref();
        if pivots.len() != d {
            return Err(Error::DependentBasis(name.to_string()));
        }
        let m = Mat::from_fn(d, d, |i, j| flat[(i, pivots[j])].clone());
        let inv = m.inverse().expect("pivot block is invertible");
        Ok(MatrixSpan { n, basis, pivots, inv })
    }

    /// Size override for empty spans.
    pub fn with_size(mut self, n: usize) -> MatrixSpan {
        if self.basis.is_empty() {
            self.n = n;
        }
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Mat] {
        &self.basis
    }

    pub fn combine(&self, c: &[Q]) -> Mat {
        let mut m = Mat::zeros(self.n, self.n);
        for (x, b) in c.iter().zip(&self.basis) {
            m.add_scaled(x, b);
        }
        m
    }

    /// Coordinates of `x`, or `None` if it is not in the span.
    pub fn coords(&self, x: &Mat) -> Option<Vec<Q>> {
        if x.rows() != self.n || x.cols() != self.n {
            return None;
        }
        let e = x.entries();
        let vp: Vec<Q> = self.pivots.iter().map(|&p| e[p].clone()).collect();
        let c = self.inv.vec_mul(&vp);
        if self.combine(&c) == *x {
            Some(c)
        } else {
            None
        }
    }
}

/// A real Lie algebra of N×N rational matrices.
#[derive(Debug, Clone)]
pub struct MatrixLieAlgebra {
    span: MatrixSpan,
    algebra: Arc<LieAlgebra>,
    trace_form: OnceLock<Mat>,
}

impl MatrixLieAlgebra {
    /// Validates independence and closure and computes structure constants.
    pub fn new(name: impl Into<String>, n: usize, basis: Vec<Mat>) -> Result<MatrixLieAlgebra> {
        let name = name.into();
        let span = MatrixSpan::new(&name, basis)?.with_size(n);
        if span.n() != n {
            return Err(Error::ShapeMismatch);
        }
        let d = span.dim();
        let mut brackets = vec![Vec::new(); d * d];
        for i in 0..d {
            for j in i + 1..d {
                let b = span.basis[i].commutator(&span.basis[j]);
                if b.is_zero() {
                    continue;
                }
                let c = span
                    .coords(&b)
                    .ok_or_else(|| Error::NotSubalgebra { name: name.clone(), i, j })?;
                brackets[i * d + j] = sparsify(&c);
                brackets[j * d + i] = sparsify(&c.iter().map(|x| -x).collect::<Vec<_>>());
            }
        }
        Ok(MatrixLieAlgebra {
            span,
            algebra: Arc::new(LieAlgebra::from_sparse(name, d, brackets)),
            trace_form: OnceLock::new(),
        })
    }

    pub fn name(&self) -> &str {
        self.algebra.name()
    }

    pub fn renamed(self, name: impl Into<String>) -> MatrixLieAlgebra {
        let a = Arc::try_unwrap(self.algebra).unwrap_or_else(|a| LieAlgebra {
            name: a.name.clone(),
            dim: a.dim,
            brackets: a.brackets.clone(),
            killing: OnceLock::new(),
        });
        MatrixLieAlgebra {
            span: self.span,
            algebra: Arc::new(LieAlgebra { name: name.into(), ..a }),
            trace_form: self.trace_form,
        }
    }

    /// Ambient matrix size N.
    pub fn n(&self) -> usize {
        self.span.n()
    }

    pub fn dim(&self) -> usize {
        self.span.dim()
    }

    pub fn basis(&self) -> &[Mat] {
        self.span.basis()
    }

    pub fn span(&self) -> &MatrixSpan {
        &self.span
    }

    pub fn abstract_algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    pub fn coords(&self, x: &Mat) -> Option<Vec<Q>> {
        self.span.coords(x)
    }

    pub fn combine(&self, c: &[Q]) -> Mat {
        self.span.combine(c)
    }

    pub fn contains(&self, x: &Mat) -> bool {
        self.coords(x).is_some()
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Q {
        self.algebra.constant(i, j, k)
    }

    pub fn killing(&self) -> &Mat {
        self.algebra.killing()
    }

    /// `T_ij = tr(X_i X_j)`.
    pub fn trace_form(&self) -> &Mat {
        self.trace_form.get_or_init(|| {
            let d = self.dim();
            let b = self.basis();
            let mut t = Mat::zeros(d, d);
            for i in 0..d {
                for j in i..d {
                    let v = trace_of_product(&b[i], &b[j]);
                    t[(i, j)] = v.clone();
                    t[(j, i)] = v;
                }
            }
            t
        })
    }

    pub fn is_semisimple(&self) -> bool {
        self.algebra.is_semisimple()
    }

    pub fn center(&self) -> Subspace {
        self.algebra.center()
    }

    pub fn derived(&self) -> Subspace {
        self.algebra.derived()
    }

    pub fn fingerprint(&self) -> Fingerprint {
        self.algebra.fingerprint()
    }

    /// Matrix subalgebra spanned by the given coordinate vectors.
    pub fn subalgebra(&self, name: impl Into<String>, sub: &Subspace) -> Result<MatrixLieAlgebra> {
        let mats: Vec<Mat> = sub.vectors().iter().map(|c| self.combine(c)).collect();
        MatrixLieAlgebra::new(name, self.n(), mats)
    }

    /// Subspace of `self` spanned by matrices that must lie in it.
    pub fn subspace_of(&self, mats: &[Mat]) -> Result<Subspace> {
        let coords = mats
            .iter()
            .map(|m| self.coords(m).ok_or(Error::NotInSpan))
            .collect::<Result<Vec<_>>>()?;
        Ok(Subspace::span(self.dim(), &coords))
    }

    /// JSON document `{name, n, basis}` with entries as `[p, q]` pairs.
    pub fn to_json(&self) -> serde_json::Value {
        let basis: Vec<serde_json::Value> = self
            .basis()
            .iter()
            .map(|m| {
                serde_json::Value::Array(
                    (0..m.rows())
                        .map(|i| serde_json::Value::Array(m.row(i).iter().map(rational_pair).collect()))
                        .collect(),
                )
            })
            .collect();
        serde_json::json!({
            "name": self.name(),
            "n": self.n(),
            "basis": basis,
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<MatrixLieAlgebra> {
        let bad = || Error::InvalidParams("malformed algebra JSON".into());
        let name = v["name"].as_str().ok_or_else(bad)?;
        let n = v["n"].as_u64().ok_or_else(bad)? as usize;
        let mut mats = Vec::new();
        for m in v["basis"].as_array().ok_or_else(bad)? {
            let rows = m.as_array().ok_or_else(bad)?;
            let mut out = Mat::zeros(n, n);
            for (i, row) in rows.iter().enumerate() {
                for (j, e) in row.as_array().ok_or_else(bad)?.iter().enumerate() {
                    let p = e[0].as_i64().ok_or_else(bad)?;
                    let q = e[1].as_i64().filter(|&q| q != 0).ok_or_else(bad)?;
                    if i >= n || j >= n {
                        return Err(bad());
                    }
                    out[(i, j)] = Q::new(p, q);
                }
            }
            mats.push(out);
        }
        MatrixLieAlgebra::new(name, n, mats)
    }
}

fn rational_pair(x: &Q) -> serde_json::Value {
    match x.as_small() {
        Some((p, q)) => serde_json::json!([p, q]),
        None => serde_json::json!([x.numer().to_string(), x.denom().to_string()]),
    }
}

pub fn trace_of_product(a: &Mat, b: &Mat) -> Q {
    let n = a.rows();
    let mut acc = Q::ZERO;
    for i in 0..n {
        for k in 0..n {
            let x = &a[(i, k)];
            if x.is_zero() {
                continue;
            }
            let y = &b[(k, i)];
            if !y.is_zero() {
                acc += &(x * y);
            }
        }
    }
    acc
}

/// `[X, Y] = XY − YX`.
pub fn bracket(x: &Mat, y: &Mat) -> Result<Mat> {
    if !x.is_square() || x.rows() != y.rows() || x.cols() != y.cols() {
        return Err(Error::ShapeMismatch);
    }
    Ok(x.commutator(y))
}

/// A linear subspace of a `parent_dim`-dimensional coordinate space, stored
/// as independent row vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    parent_dim: usize,
    rows: Vec<Vec<Q>>,
    /// Row-reduced copy used for membership and coordinates.
    echelon: Mat,
    pivots: Vec<usize>,
    /// Maps echelon coordinates back to `rows` coordinates.
    to_rows: Mat,
}

impl Subspace {
    pub fn zero(parent_dim: usize) -> Subspace {
        Subspace {
            parent_dim,
            rows: Vec::new(),
            echelon: Mat::zeros(0, parent_dim),
            pivots: Vec::new(),
            to_rows: Mat::zeros(0, 0),
        }
    }

    pub fn full(parent_dim: usize) -> Subspace {
        let rows = Mat::identity(parent_dim).row_vecs();
        Subspace::from_basis(parent_dim, rows).expect("identity rows are independent")
    }

    /// Span of arbitrary vectors; the stored basis is row-reduced.
    pub fn span(parent_dim: usize, vectors: &[Vec<Q>]) -> Subspace {
        if vectors.is_empty() {
            return Subspace::zero(parent_dim);
        }
        let e = Mat::from_rows(vectors).row_space();
        Subspace::from_basis(parent_dim, e.row_vecs()).expect("row space is independent")
    }

    /// Keeps the given basis; fails if it is dependent.
    pub fn from_basis(parent_dim: usize, rows: Vec<Vec<Q>>) -> Result<Subspace> {
        if rows.is_empty() {
            return Ok(Subspace::zero(parent_dim));
        }
        if rows.iter().any(|r| r.len() != parent_dim) {
            return Err(Error::LengthMismatch(rows[0].len(), parent_dim));
        }
        let k = rows.len();
        // Row-reduce [rows | I] to track the change of basis.
        let mut aug = Mat::zeros(k, parent_dim + k);
        for (i, r) in rows.iter().enumerate() {
            for (j, x) in r.iter().enumerate() {
                aug[(i, j)] = x.clone();
            }
            aug[(i, parent_dim + i)] = Q::ONE;
        }
        let (red, pivots) = aug.rref();
        let pivots: Vec<usize> = pivots.into_iter().filter(|&p| p < parent_dim).collect();
        if pivots.len() != k {
            return Err(Error::DependentBasis("subspace".into()));
        }
        let echelon = Mat::from_fn(k, parent_dim, |i, j| red[(i, j)].clone());
        let to_rows = Mat::from_fn(k, k, |i, j| red[(i, parent_dim + j)].clone());
        Ok(Subspace {
            parent_dim,
            rows,
            echelon,
            pivots,
            to_rows,
        })
    }

    pub fn parent_dim(&self) -> usize {
        self.parent_dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn vectors(&self) -> &[Vec<Q>] {
        &self.rows
    }

    pub fn as_mat(&self) -> Mat {
        if self.rows.is_empty() {
            return Mat::zeros(0, self.parent_dim);
        }
        Mat::from_rows(&self.rows)
    }

    /// Coordinates of `v` relative to the stored basis.
    pub fn coords(&self, v: &[Q]) -> Option<Vec<Q>> {
        if v.len() != self.parent_dim {
            return None;
        }
        let vp: Vec<Q> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let recon = self.echelon.vec_mul(&vp);
        if recon != v {
            return None;
        }
        Some(self.to_rows.vec_mul(&vp))
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.coords(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.vectors().iter().all(|v| self.contains(v))
    }

    pub fn combine(&self, c: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::ZERO; self.parent_dim];
        for (x, r) in c.iter().zip(&self.rows) {
            if x.is_zero() {
                continue;
            }
            for (o, y) in out.iter_mut().zip(r) {
                if !y.is_zero() {
                    *o += &(x * y);
                }
            }
        }
        out
    }

    pub fn same_parent(&self, other: &Subspace) -> Result<()> {
        if self.parent_dim != other.parent_dim {
            return Err(Error::LengthMismatch(self.parent_dim, other.parent_dim));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.same_parent(other)?;
        let mut all = self.rows.clone();
        all.extend(other.rows.iter().cloned());
        Ok(Subspace::span(self.parent_dim, &all))
    }

    pub fn sum_dim(&self, other: &Subspace) -> Result<usize> {
        Ok(self.sum(other)?.dim())
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.same_parent(other)?;
        let (a, b) = (self.dim(), other.dim());
        if a == 0 || b == 0 {
            return Ok(Subspace::zero(self.parent_dim));
        }
        // α·A = β·B  ⇔  [Aᵀ | −Bᵀ] (α, β) = 0
        let mut m = Mat::zeros(self.parent_dim, a + b);
        for (i, r) in self.rows.iter().enumerate() {
            for (j, x) in r.iter().enumerate() {
                m[(j, i)] = x.clone();
            }
        }
        for (i, r) in other.rows.iter().enumerate() {
            for (j, x) in r.iter().enumerate() {
                m[(j, a + i)] = -x;
            }
        }
        let vecs: Vec<Vec<Q>> = m.nullspace().iter().map(|v| self.combine(&v[..a])).collect();
        Ok(Subspace::span(self.parent_dim, &vecs))
    }

    /// `{y : F(x, y) = 0 ∀ x ∈ self}` for a symmetric form `F` on the parent.
    /// Fails if `F` is degenerate on `self`.
    pub fn orthogonal_complement(&self, form: &Mat) -> Result<Subspace> {
        if form.rows() != self.parent_dim || form.cols() != self.parent_dim {
            return Err(Error::ShapeMismatch);
        }
        if self.dim() == 0 {
            return Ok(Subspace::full(self.parent_dim));
        }
        let af = self.as_mat().mul(form);
        let comp = Subspace::span(self.parent_dim, &af.nullspace());
        if self.intersect(&comp)?.dim() != 0 {
            return Err(Error::DegenerateForm);
        }
        Ok(comp)
    }

    /// Complement of `self` inside `within` with respect to `form`.
    pub fn complement_in(&self, within: &Subspace, form: &Mat) -> Result<Subspace> {
        let perp = self.orthogonal_complement(form)?;
        let c = perp.intersect(within)?;
        if c.dim() + self.dim() != within.dim() {
            return Err(Error::DegenerateForm);
        }
        Ok(c)
    }

    /// Gram matrix of a parent-level form on this basis.
    pub fn restrict_form(&self, form: &Mat) -> Mat {
        let k = self.dim();
        let fr: Vec<Vec<Q>> = self.rows.iter().map(|r| form.mul_vec(r)).collect();
        Mat::from_fn(k, k, |i, j| crate::matrix::dot(&self.rows[i], &fr[j]))
    }

    pub fn is_subalgebra_of(&self, l: &LieAlgebra) -> bool {
        let k = self.dim();
        (0..k).all(|i| (i + 1..k).all(|j| self.contains(&l.bracket(&self.rows[i], &self.rows[j]))))
    }

    pub fn is_zero_space(&self) -> bool {
        self.rows.iter().all(|r| is_zero_vec(r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: usize, i: usize, j: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        m[(i, j)] = Q::ONE;
        m
    }

    fn sl2() -> MatrixLieAlgebra {
        let h = Mat::from_i64(2, 2, &[1, 0, 0, -1]);
        MatrixLieAlgebra::new("sl(2)", 2, vec![h, e(2, 0, 1), e(2, 1, 0)]).unwrap()
    }

    #[test]
    fn sl2_constants() {
        let l = sl2();
        // [H, E] = 2E
        assert_eq!(l.structure_constant(0, 1, 1), Q::int(2));
        assert_eq!(l.structure_constant(1, 0, 1), Q::int(-2));
        assert!(l.abstract_algebra().jacobi_holds());
        assert!(l.is_semisimple());
        assert_eq!(l.center().dim(), 0);
        assert_eq!(l.killing().signature(), Signature { plus: 2, minus: 1, zero: 0 });
    }

    #[test]
    fn closure_failure_names_pair() {
        let err = MatrixLieAlgebra::new("bad", 2, vec![e(2, 0, 1), e(2, 1, 0)]).unwrap_err();
        assert!(matches!(err, Error::NotSubalgebra { i: 0, j: 1, .. }));
        let dep = MatrixLieAlgebra::new("dep", 2, vec![e(2, 0, 1), e(2, 0, 1)]).unwrap_err();
        assert!(matches!(dep, Error::DependentBasis(_)));
    }

    #[test]
    fn subspace_lattice() {
        let q = |x: i64| Q::int(x);
        let a = Subspace::span(3, &[vec![q(1), q(0), q(0)], vec![q(0), q(1), q(0)]]);
        let b = Subspace::span(3, &[vec![q(0), q(1), q(1)]]);
        assert_eq!(a.sum_dim(&b).unwrap(), 3);
        assert_eq!(a.intersect(&b).unwrap().dim(), 0);
        let c = Subspace::span(3, &[vec![q(1), q(1), q(0)], vec![q(0), q(0), q(1)]]);
        assert_eq!(a.intersect(&c).unwrap().dim(), 1);
        let id = Mat::identity(3);
        assert_eq!(a.orthogonal_complement(&id).unwrap().dim(), 1);
        let null = Mat::from_i64(3, 3, &[0, 1, 0, 1, 0, 0, 0, 0, 1]);
        let iso = Subspace::span(3, &[vec![q(1), q(0), q(0)]]);
        assert_eq!(iso.orthogonal_complement(&null), Err(Error::DegenerateForm));
    }

    #[test]
    fn json_round_trip() {
        let l = sl2();
        let back = MatrixLieAlgebra::from_json(&l.to_json()).unwrap();
        assert_eq!(back.basis(), l.basis());
        assert_eq!(back.name(), "sl(2)");
    }
}
