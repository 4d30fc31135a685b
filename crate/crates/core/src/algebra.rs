//! The real composition and para algebras ℝ, ℂ, 𝔸, ℍ, 𝔹, 𝕆 and split 𝕆.
//!
//! All of them come out of the Cayley–Dickson doubling
//!
//! ```text
//! (a, b)(c, d) = (ac + μ d̄ b, da + b c̄),   conj(a, b) = (ā, −b)
//! ```
//!
//! with μ = −1 for the division step and μ = +1 for the split step.  The
//! norm then doubles as N(a, b) = N(a) − μ N(b).  Products of basis elements
//! are again signed basis elements, so each algebra is a signed table.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::rational::Q;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum AlgebraTag {
    Real,
    Complex,
    ParaComplex,
    Quaternion,
    ParaQuaternion,
    Octonion,
    SplitOctonion,
}

impl AlgebraTag {
    pub const ALL: [AlgebraTag; 7] = [
        AlgebraTag::Real,
        AlgebraTag::Complex,
        AlgebraTag::ParaComplex,
        AlgebraTag::Quaternion,
        AlgebraTag::ParaQuaternion,
        AlgebraTag::Octonion,
        AlgebraTag::SplitOctonion,
    ];

    /// Cayley–Dickson parameters, innermost first.
    fn doubling(self) -> &'static [i8] {
        match self {
            AlgebraTag::Real => &[],
            AlgebraTag::Complex => &[-1],
            AlgebraTag::ParaComplex => &[1],
            AlgebraTag::Quaternion => &[-1, -1],
            AlgebraTag::ParaQuaternion => &[-1, 1],
            AlgebraTag::Octonion => &[-1, -1, -1],
            AlgebraTag::SplitOctonion => &[-1, -1, 1],
        }
    }

    pub fn kind(self) -> &'static AlgebraKind {
        static KINDS: OnceLock<Vec<AlgebraKind>> = OnceLock::new();
        let kinds = KINDS.get_or_init(|| AlgebraTag::ALL.iter().map(|&t| AlgebraKind::build(t)).collect());
        &kinds[self as usize]
    }

    pub fn symbol(self) -> &'static str {
        match self {
            AlgebraTag::Real => "R",
            AlgebraTag::Complex => "C",
            AlgebraTag::ParaComplex => "A",
            AlgebraTag::Quaternion => "H",
            AlgebraTag::ParaQuaternion => "B",
            AlgebraTag::Octonion => "O",
            AlgebraTag::SplitOctonion => "O'",
        }
    }
}

impl fmt::Display for AlgebraTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// A signed multiplication table.
#[derive(Debug, PartialEq, Eq)]
pub struct AlgebraKind {
    pub tag: AlgebraTag,
    pub dim: usize,
    /// `table[i * dim + j] = (k, s)` means `e_i e_j = s e_k`.
    table: Vec<(usize, i8)>,
    /// `conj(e_i) = conj_signs[i] e_i`.
    conj_signs: Vec<i8>,
    /// `N(e_i)`.
    norms: Vec<i8>,
}

impl AlgebraKind {
    fn build(tag: AlgebraTag) -> AlgebraKind {
        let mut dim = 1;
        let mut table = vec![(0usize, 1i8)];
        let mut conj = vec![1i8];
        let mut norms = vec![1i8];
        for &mu in tag.doubling() {
            let d2 = 2 * dim;
            let mut t = vec![(0usize, 0i8); d2 * d2];
            let prod = |i: usize, j: usize| table[i * dim + j];
            for i in 0..d2 {
                for j in 0..d2 {
                    t[i * d2 + j] = match (i < dim, j < dim) {
                        // (e_i, 0)(e_j, 0) = (e_i e_j, 0)
                        (true, true) => prod(i, j),
                        // (e_i, 0)(0, e_j) = (0, e_j e_i)
                        (true, false) => {
                            let (k, s) = prod(j - dim, i);
                            (k + dim, s)
                        }
                        // (0, e_i)(e_j, 0) = (0, e_i ē_j)
                        (false, true) => {
                            let (k, s) = prod(i - dim, j);
                            (k + dim, s * conj[j])
                        }
                        // (0, e_i)(0, e_j) = (μ ē_j e_i, 0)
                        (false, false) => {
                            let (k, s) = prod(j - dim, i - dim);
                            (k, s * conj[j - dim] * mu)
                        }
                    };
                }
            }
            let mut c2 = conj.clone();
            c2.extend(std::iter::repeat_n(-1i8, dim));
            let mut n2 = norms.clone();
            n2.extend(norms.iter().map(|&n| -mu * n));
            table = t;
            conj = c2;
            norms = n2;
            dim = d2;
        }
        AlgebraKind {
            tag,
            dim,
            table,
            conj_signs: conj,
            norms,
        }
    }

    /// `e_i e_j` as `(index, sign)`.
    pub fn basis_product(&self, i: usize, j: usize) -> (usize, i8) {
        self.table[i * self.dim + j]
    }

    pub fn conj_sign(&self, i: usize) -> i8 {
        self.conj_signs[i]
    }

    /// `N(e_i) = e_i ē_i`, always ±1.
    pub fn basis_norm(&self, i: usize) -> i8 {
        self.norms[i]
    }

    /// Basis indices of the imaginary units.
    pub fn imaginary_units(&self) -> std::ops::Range<usize> {
        1..self.dim
    }

    /// Matrix of `x ↦ e_u x` on coefficient vectors.
    pub fn left_mult_matrix(&self, u: usize) -> Mat {
        let mut m = Mat::zeros(self.dim, self.dim);
        for a in 0..self.dim {
            let (k, s) = self.basis_product(u, a);
            m[(k, a)] = Q::int(s as i64);
        }
        m
    }

    /// Matrix of `x ↦ x e_u` on coefficient vectors.
    pub fn right_mult_matrix(&self, u: usize) -> Mat {
        let mut m = Mat::zeros(self.dim, self.dim);
        for a in 0..self.dim {
            let (k, s) = self.basis_product(a, u);
            m[(k, a)] = Q::int(s as i64);
        }
        m
    }

    pub fn basis(&'static self, i: usize) -> AlgebraElement {
        let mut coeffs = vec![Q::ZERO; self.dim];
        coeffs[i] = Q::ONE;
        AlgebraElement { kind: self, coeffs }
    }

    pub fn one(&'static self) -> AlgebraElement {
        self.basis(0)
    }

    pub fn element(&'static self, coeffs: Vec<Q>) -> Result<AlgebraElement> {
        AlgebraElement::new(self.tag, coeffs)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    kind: &'static AlgebraKind,
    coeffs: Vec<Q>,
}

impl AlgebraElement {
    pub fn new(tag: AlgebraTag, coeffs: Vec<Q>) -> Result<AlgebraElement> {
        let kind = tag.kind();
        if coeffs.len() != kind.dim {
            return Err(Error::LengthMismatch(coeffs.len(), kind.dim));
        }
        Ok(AlgebraElement { kind, coeffs })
    }

    pub fn from_ints(tag: AlgebraTag, coeffs: &[i64]) -> Result<AlgebraElement> {
        AlgebraElement::new(tag, coeffs.iter().map(|&c| Q::int(c)).collect())
    }

    pub fn scalar(tag: AlgebraTag, c: Q) -> AlgebraElement {
        let mut e = tag.kind().one();
        e.coeffs[0] = c;
        e
    }

    pub fn kind(&self) -> &'static AlgebraKind {
        self.kind
    }

    pub fn tag(&self) -> AlgebraTag {
        self.kind.tag
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn real_part(&self) -> &Q {
        &self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Q::is_zero)
    }

    fn check_kind(&self, other: &AlgebraElement) -> Result<()> {
        if self.kind.tag != other.kind.tag {
            return Err(Error::KindMismatch(self.kind.tag.to_string(), other.kind.tag.to_string()));
        }
        Ok(())
    }

    pub fn multiply(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_kind(other)?;
        let k = self.kind;
        let mut out = vec![Q::ZERO; k.dim];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let (idx, s) = k.basis_product(i, j);
                let p = a * b;
                if s > 0 {
                    out[idx] += &p;
                } else {
                    out[idx] -= &p;
                }
            }
        }
        Ok(AlgebraElement { kind: k, coeffs: out })
    }

    pub fn add(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_kind(other)?;
        Ok(AlgebraElement {
            kind: self.kind,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_kind(other)?;
        Ok(AlgebraElement {
            kind: self.kind,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale(&self, c: &Q) -> AlgebraElement {
        AlgebraElement {
            kind: self.kind,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn conjugate(&self) -> AlgebraElement {
        AlgebraElement {
            kind: self.kind,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, a)| if self.kind.conj_sign(i) > 0 { a.clone() } else { -a })
                .collect(),
        }
    }

    /// `N(x) = x x̄`, computed from the diagonal norms since the basis is orthogonal.
    pub fn norm(&self) -> Q {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(i, a)| {
                let sq = a * a;
                if self.kind.basis_norm(i) > 0 {
                    sq
                } else {
                    -sq
                }
            })
            .sum()
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:?}", self.kind.tag, self.coeffs)
    }
}

/// `⟨z, w⟩ = Re Σ z̄ᵢ wᵢ` on F^m.
pub fn inner_product(z: &[AlgebraElement], w: &[AlgebraElement]) -> Result<Q> {
    if z.len() != w.len() {
        return Err(Error::LengthMismatch(z.len(), w.len()));
    }
    let mut acc = Q::ZERO;
    for (a, b) in z.iter().zip(w) {
        acc += a.conjugate().multiply(b)?.real_part();
    }
    Ok(acc)
}

/// Standard inner product of signature (n−r, r+1) on ℝ^{n+1}: the first r+1
/// coordinates are negative.
pub fn signature_inner_product_rn(x: &[Q], y: &[Q], r: usize) -> Result<Q> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch(x.len(), y.len()));
    }
    if r >= x.len() {
        return Err(Error::InvalidParams(format!("index r = {r} needs r ≤ n = {}", x.len().saturating_sub(1))));
    }
    let mut acc = Q::ZERO;
    for (i, (a, b)) in x.iter().zip(y).enumerate() {
        let p = a * b;
        if i <= r {
            acc -= &p;
        } else {
            acc += &p;
        }
    }
    Ok(acc)
}

/// Realified Gram matrix of `inner_product` on F^m with per-coordinate signs `eps`.
pub fn realified_gram(tag: AlgebraTag, eps: &[i8]) -> Mat {
    let k = tag.kind();
    let d = k.dim;
    let mut g = Mat::zeros(eps.len() * d, eps.len() * d);
    for (c, &e) in eps.iter().enumerate() {
        for a in 0..d {
            g[(c * d + a, c * d + a)] = Q::int((e * k.basis_norm(a)) as i64);
        }
    }
    g
}
