//! Constructors for the matrix Lie algebras of the classification tables.
//!
//! Every algebra is realified into gl(N, ℝ) and standardized so that it
//! preserves the diagonal form with the negative squares first:
//! diag(−1 × (r+1), +1 × (n−r)).  The base point of H^n_r is then e₀.
//!
//! # Family grammar
//!
//! ```text
//! spec    := ['~'] factor ('+' scalar)*
//! factor  := so(p[,q]) | su(p[,q]) | u(p[,q]) | sp(p[,q]) | spin(p[,q])
//!          | su_pi(m) | sl(m) | u_pi(m) | gl_plus(m) | sp_pi(m) | g2 | g2*
//! scalar  := u(1) | u_pi(1) | gl_plus(1) | sp(1) | sp_pi(1)
//! ```
//!
//! For so, su, u, sp the second parameter counts the negative coordinates,
//! which come first.  The para families su_pi, u_pi, sp_pi use the
//! realified forms of 𝔸^m and 𝔹^m.  spin and g2 realize their definite
//! invariant forms as negative definite (so compact ones act on spheres
//! H^n_n), and g2* uses minus the split norm on the imaginary octonions,
//! which has three negative squares.  A leading `~` negates the ambient
//! form.  Trailing scalar factors act by right multiplication by imaginary
//! units on the first factor's module: u(1) by the unit squaring to −1,
//! u_pi(1) by a unit squaring to +1, sp(1) and sp_pi(1) by all three units.

use std::fmt;
use std::str::FromStr;

use crate::algebra::AlgebraTag;
use crate::clifford::{build_spin_rep, invariant_spinor_form, CliffordRep};
use crate::error::{Error, Result};
use crate::liealg::MatrixLieAlgebra;
use crate::matrix::Mat;
use crate::rational::Q;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Family {
    So,
    Su,
    U,
    Sp,
    SuPi,
    UPi,
    SpPi,
    Spin,
    G2,
    G2Star,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Scalar {
    U1,
    UPi1,
    Sp1,
    SpPi1,
}

impl Scalar {
    fn name(self) -> &'static str {
        match self {
            Scalar::U1 => "u(1)",
            Scalar::UPi1 => "u_pi(1)",
            Scalar::Sp1 => "sp(1)",
            Scalar::SpPi1 => "sp_pi(1)",
        }
    }
}

/// A parsed family string.
#[derive(Clone, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub struct FamilySpec {
    pub family: Family,
    /// Positive count (or size m for the para families).
    pub p: usize,
    /// Negative count.
    pub q: usize,
    pub negated: bool,
    pub scalars: Vec<Scalar>,
}

impl FamilySpec {
    pub fn new(family: Family, p: usize, q: usize) -> FamilySpec {
        FamilySpec {
            family,
            p,
            q,
            negated: false,
            scalars: Vec::new(),
        }
    }

    pub fn with_scalar(mut self, s: Scalar) -> FamilySpec {
        self.scalars.push(s);
        self
    }

    pub fn negate(mut self) -> FamilySpec {
        self.negated = !self.negated;
        self
    }

    pub fn is_product(&self) -> bool {
        !self.scalars.is_empty()
    }

    /// The first factor alone.
    pub fn base(&self) -> FamilySpec {
        FamilySpec {
            scalars: Vec::new(),
            ..self.clone()
        }
    }

    pub fn field(&self) -> AlgebraTag {
        match self.family {
            Family::So | Family::Spin | Family::G2 | Family::G2Star => AlgebraTag::Real,
            Family::Su | Family::U => AlgebraTag::Complex,
            Family::Sp => AlgebraTag::Quaternion,
            Family::SuPi | Family::UPi => AlgebraTag::ParaComplex,
            Family::SpPi => AlgebraTag::ParaQuaternion,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidParams(format!("{self}: {msg}")));
        match self.family {
            Family::So | Family::Su | Family::U | Family::Sp if self.p + self.q == 0 => bad("empty signature")?,
            Family::Spin if self.p + self.q < 2 || self.p + self.q > 9 => bad("spin needs 2 ≤ p+q ≤ 9")?,
            Family::SuPi | Family::UPi | Family::SpPi if self.p == 0 || self.q != 0 => bad("size must be positive")?,
            Family::G2 | Family::G2Star if self.p + self.q != 0 => bad("g2 takes no parameters")?,
            _ => {}
        }
        let field = self.field();
        for s in &self.scalars {
            let ok = match s {
                Scalar::U1 => matches!(field, AlgebraTag::Complex | AlgebraTag::Quaternion | AlgebraTag::ParaQuaternion),
                Scalar::UPi1 => matches!(field, AlgebraTag::ParaComplex | AlgebraTag::ParaQuaternion),
                Scalar::Sp1 => field == AlgebraTag::Quaternion,
                Scalar::SpPi1 => field == AlgebraTag::ParaQuaternion,
            };
            if !ok {
                bad(&format!("{} cannot act on {}^m", s.name(), field))?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            f.write_str("~")?;
        }
        let (p, q) = (self.p, self.q);
        match self.family {
            Family::So => write!(f, "so({p},{q})")?,
            Family::Su => write!(f, "su({p},{q})")?,
            Family::U => write!(f, "u({p},{q})")?,
            Family::Sp => write!(f, "sp({p},{q})")?,
            Family::Spin => write!(f, "spin({p},{q})")?,
            Family::SuPi => write!(f, "su_pi({p})")?,
            Family::UPi => write!(f, "u_pi({p})")?,
            Family::SpPi => write!(f, "sp_pi({p})")?,
            Family::G2 => f.write_str("g2")?,
            Family::G2Star => f.write_str("g2*")?,
        }
        for s in &self.scalars {
            write!(f, "+{}", s.name())?;
        }
        Ok(())
    }
}

fn parse_factor(text: &str, whole: &str) -> Result<(Family, usize, usize)> {
    let err = |m: &str| Error::Parse(whole.to_string(), m.to_string());
    let t = text.trim();
    match t {
        "g2" => return Ok((Family::G2, 0, 0)),
        "g2*" | "g2_star" => return Ok((Family::G2Star, 0, 0)),
        _ => {}
    }
    let open = t.find('(').ok_or_else(|| err("expected `(`"))?;
    let args = t[open + 1..].strip_suffix(')').ok_or_else(|| err("expected `)`"))?;
    let nums = args
        .split(',')
        .map(|a| a.trim().parse::<usize>().map_err(|_| err("parameters must be non-negative integers")))
        .collect::<Result<Vec<_>>>()?;
    let (family, two) = match &t[..open] {
        "so" => (Family::So, true),
        "su" => (Family::Su, true),
        "u" => (Family::U, true),
        "sp" => (Family::Sp, true),
        "spin" => (Family::Spin, true),
        "su_pi" | "sl" => (Family::SuPi, false),
        "u_pi" | "gl_plus" => (Family::UPi, false),
        "sp_pi" => (Family::SpPi, false),
        other => return Err(err(&format!("unknown family `{other}`"))),
    };
    match (two, nums.as_slice()) {
        (true, [p]) => Ok((family, *p, 0)),
        (true, [p, q]) => Ok((family, *p, *q)),
        (false, [m]) => Ok((family, *m, 0)),
        _ => Err(err("wrong number of parameters")),
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<FamilySpec> {
        let trimmed = s.trim();
        let (negated, body) = match trimmed.strip_prefix('~') {
            Some(rest) => (true, rest),
            None => (false, trimmed),
        };
        let mut parts = body.split('+');
        let first = parts.next().unwrap_or("");
        let (family, p, q) = parse_factor(first, s)?;
        let mut scalars = Vec::new();
        for part in parts {
            let sc = match part.trim() {
                "u(1)" => Scalar::U1,
                "u_pi(1)" | "gl_plus(1)" => Scalar::UPi1,
                "sp(1)" => Scalar::Sp1,
                "sp_pi(1)" => Scalar::SpPi1,
                other => return Err(Error::Parse(s.to_string(), format!("unknown scalar factor `{other}`"))),
            };
            scalars.push(sc);
        }
        let spec = FamilySpec {
            family,
            p,
            q,
            negated,
            scalars,
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// A matrix Lie algebra preserving the standard diagonal form, together with
/// the structure it commutes with.
#[derive(Debug)]
pub struct EmbeddedAlgebra {
    pub spec: FamilySpec,
    pub algebra: MatrixLieAlgebra,
    /// Diagonal of the invariant form; negatives first.
    pub form: Vec<i8>,
    /// Scalar field of the module.
    pub field: AlgebraTag,
    /// Right multiplication by each imaginary unit of the field, as
    /// `(unit index, matrix)`.
    pub right_units: Vec<(usize, Mat)>,
    /// Gamma matrices for spin families, in the same coordinates.
    pub gammas: Vec<Mat>,
    /// `order[i]` is the natural (realified) index of standard coordinate i.
    pub order: Vec<usize>,
}

impl EmbeddedAlgebra {
    pub fn n(&self) -> usize {
        self.form.len()
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// Number of negative squares, r + 1.
    pub fn negatives(&self) -> usize {
        self.form.iter().filter(|&&s| s < 0).count()
    }

    /// The (n, r) of the pseudo-hyperbolic space this algebra acts on.
    pub fn space(&self) -> Option<(usize, usize)> {
        let neg = self.negatives();
        (neg > 0).then(|| (self.n() - 1, neg - 1))
    }

    pub fn form_matrix(&self) -> Mat {
        Mat::diag(&self.form.iter().map(|&s| Q::int(s as i64)).collect::<Vec<_>>())
    }

    pub fn base_point(&self) -> Vec<Q> {
        let mut x = vec![Q::ZERO; self.n()];
        x[0] = Q::ONE;
        x
    }

    pub fn right_unit(&self, u: usize) -> Option<&Mat> {
        self.right_units.iter().find(|(i, _)| *i == u).map(|(_, m)| m)
    }

    /// `Xᵀ G + G X = 0` for all basis elements.
    pub fn preserves_form(&self) -> bool {
        let g = self.form_matrix();
        self.algebra
            .basis()
            .iter()
            .all(|x| x.transpose().mul(&g).add(&g.mul(x)).is_zero())
    }

    /// Every basis element of the first factor commutes with the right units.
    pub fn commutes_with_structure(&self) -> bool {
        let base_dim = self.algebra.dim() - self.scalar_dim();
        self.algebra.basis()[..base_dim]
            .iter()
            .all(|x| self.right_units.iter().all(|(_, r)| x.commutator(r).is_zero()))
    }

    fn scalar_dim(&self) -> usize {
        self.spec
            .scalars
            .iter()
            .map(|s| match s {
                Scalar::U1 | Scalar::UPi1 => 1,
                Scalar::Sp1 | Scalar::SpPi1 => 3,
            })
            .sum()
    }
}

/// The natural (unsorted) realification before standardization.
struct Natural {
    mats: Vec<Mat>,
    gram: Vec<i8>,
    units: Vec<(usize, Mat)>,
    gammas: Vec<Mat>,
}

fn block_left(tag: AlgebraTag, m: usize, k: usize, l: usize, unit: usize, sign: i64) -> Mat {
    let kind = tag.kind();
    let d = kind.dim;
    let lm = kind.left_mult_matrix(unit);
    let mut x = Mat::zeros(m * d, m * d);
    for b in 0..d {
        for a in 0..d {
            let v = &lm[(b, a)];
            if !v.is_zero() {
                x[(k * d + b, l * d + a)] += &(v * &Q::int(sign));
            }
        }
    }
    x
}

/// Matrices A over F with ⟨Az, w⟩ + ⟨z, Aw⟩ = 0 for ⟨z, w⟩ = Re Σ εₖ z̄ₖ wₖ,
/// i.e. A_lk = −εₖε_l conj(A_kl).  With `special`, the diagonal imaginary
/// parts are trace-free.
fn unitary_basis(tag: AlgebraTag, eps: &[i8], special: bool) -> Vec<Mat> {
    let kind = tag.kind();
    let m = eps.len();
    let mut out = Vec::new();
    if special {
        for k in 0..m.saturating_sub(1) {
            out.push(block_left(tag, m, k, k, 1, 1).add(&block_left(tag, m, k + 1, k + 1, 1, -1)));
        }
        for k in 0..m {
            for u in 2..kind.dim {
                out.push(block_left(tag, m, k, k, u, 1));
            }
        }
    } else {
        for k in 0..m {
            for u in kind.imaginary_units() {
                out.push(block_left(tag, m, k, k, u, 1));
            }
        }
    }
    for k in 0..m {
        for l in k + 1..m {
            for u in 0..kind.dim {
                let s = -(eps[k] as i64) * (eps[l] as i64) * kind.conj_sign(u) as i64;
                out.push(block_left(tag, m, k, l, u, 1).add(&block_left(tag, m, l, k, u, s)));
            }
        }
    }
    out
}

fn right_units(tag: AlgebraTag, m: usize) -> Vec<(usize, Mat)> {
    let kind = tag.kind();
    let d = kind.dim;
    kind.imaginary_units()
        .map(|u| {
            let r = kind.right_mult_matrix(u);
            let mut x = Mat::zeros(m * d, m * d);
            for k in 0..m {
                for b in 0..d {
                    for a in 0..d {
                        x[(k * d + b, k * d + a)] = r[(b, a)].clone();
                    }
                }
            }
            (u, x)
        })
        .collect()
}

fn classical(tag: AlgebraTag, eps: Vec<i8>, special: bool) -> Natural {
    let kind = tag.kind();
    let d = kind.dim;
    let gram = (0..eps.len() * d).map(|i| eps[i / d] * kind.basis_norm(i % d)).collect();
    Natural {
        mats: unitary_basis(tag, &eps, special),
        gram,
        units: right_units(tag, eps.len()),
        gammas: Vec::new(),
    }
}

/// Signs for (p positive, q negative) coordinates, negatives first.
fn signs(p: usize, q: usize) -> Vec<i8> {
    let mut e = vec![-1i8; q];
    e.extend(std::iter::repeat_n(1i8, p));
    e
}

/// Derivations of the octonions (or split octonions) as 8×8 matrices.
pub fn build_g2(split: bool) -> Result<MatrixLieAlgebra> {
    let tag = if split { AlgebraTag::SplitOctonion } else { AlgebraTag::Octonion };
    let kind = tag.kind();
    let n = 8;
    // Unknown D[b][a] at index b*8 + a; D e_a = Σ_b D[b][a] e_b.
    let var = |b: usize, a: usize| b * n + a;
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let (k, s) = kind.basis_product(i, j);
            // s D(e_k) − D(e_i) e_j − e_i D(e_j) = 0, componentwise.
            let mut eqs = vec![vec![Q::ZERO; n * n]; n];
            for (c, eq) in eqs.iter_mut().enumerate() {
                eq[var(c, k)] += &Q::int(s as i64);
            }
            for b in 0..n {
                let (c1, s1) = kind.basis_product(b, j);
                eqs[c1][var(b, i)] -= &Q::int(s1 as i64);
                let (c2, s2) = kind.basis_product(i, b);
                eqs[c2][var(b, j)] -= &Q::int(s2 as i64);
            }
            rows.extend(eqs.into_iter().filter(|e| e.iter().any(|x| !x.is_zero())));
        }
    }
    let kernel = Mat::from_rows(&rows).nullspace();
    let mats = kernel
        .iter()
        .map(|v| Mat::from_fn(n, n, |b, a| v[var(b, a)].clone()))
        .collect();
    let name = if split { "der(O')" } else { "der(O)" };
    MatrixLieAlgebra::new(name, n, mats)
}

fn g2_natural(split: bool) -> Result<Natural> {
    let der = build_g2(split)?;
    let kind = if split { AlgebraTag::SplitOctonion } else { AlgebraTag::Octonion }.kind();
    let im: Vec<usize> = (1..8).collect();
    let mats = der.basis().iter().map(|d| d.select(&im, &im)).collect();
    let gram = im.iter().map(|&i| -kind.basis_norm(i)).collect();
    Ok(Natural {
        mats,
        gram,
        units: Vec::new(),
        gammas: Vec::new(),
    })
}

/// Pauli-word representation of spin(p, q) with its invariant form brought
/// to diagonal shape by pairing coordinates.
fn spin_natural(p: usize, q: usize) -> Result<Natural> {
    let rep: CliffordRep = build_spin_rep(p, q)?;
    let b = invariant_spinor_form(&rep)?;
    let n = rep.size();
    let mut partner = vec![usize::MAX; n];
    for i in 0..n {
        let nz: Vec<usize> = (0..n).filter(|&j| !b[(i, j)].is_zero()).collect();
        if nz.len() != 1 || b[(i, nz[0])].abs() != Q::ONE {
            return Err(Error::NoSpinorForm(p, q));
        }
        partner[i] = nz[0];
    }
    let diagonal = partner.iter().enumerate().all(|(i, &j)| i == j);
    let paired = partner.iter().enumerate().all(|(i, &j)| i != j);
    if !diagonal && !paired {
        return Err(Error::NoSpinorForm(p, q));
    }
    // Columns of T: e_i (diagonal case) or e_i ± e_j for each pair i < j.
    let mut cols: Vec<Vec<Q>> = Vec::new();
    let mut gram: Vec<i8> = Vec::new();
    for i in 0..n {
        let j = partner[i];
        let s = b[(i, j)].signum() as i8;
        if i == j {
            let mut c = vec![Q::ZERO; n];
            c[i] = Q::ONE;
            cols.push(c);
            gram.push(s);
        } else if i < j {
            for sign in [1i64, -1] {
                let mut c = vec![Q::ZERO; n];
                c[i] = Q::ONE;
                c[j] = Q::int(sign);
                cols.push(c);
                // (e_i ± e_j)ᵀ B (e_i ± e_j) = ±2 b_ij, rescaled by ½.
                gram.push(s * sign as i8);
            }
        }
    }
    let t = Mat::from_cols(&cols, n);
    let tinv = t.inverse().expect("pairing change of basis is invertible");
    let conj = |x: &Mat| tinv.mul(x).mul(&t);
    // Prefer at least as many negative squares as positive ones.
    let neg = gram.iter().filter(|&&s| s < 0).count();
    if 2 * neg < n {
        gram.iter_mut().for_each(|s| *s = -*s);
    }
    Ok(Natural {
        mats: rep.bivectors().iter().map(conj).collect(),
        gram,
        units: Vec::new(),
        gammas: rep.gammas.iter().map(conj).collect(),
    })
}

fn natural(spec: &FamilySpec) -> Result<Natural> {
    let (p, q) = (spec.p, spec.q);
    Ok(match spec.family {
        Family::So => classical(AlgebraTag::Real, signs(p, q), false),
        Family::Su => classical(AlgebraTag::Complex, signs(p, q), true),
        Family::U => classical(AlgebraTag::Complex, signs(p, q), false),
        Family::Sp => classical(AlgebraTag::Quaternion, signs(p, q), false),
        Family::SuPi => classical(AlgebraTag::ParaComplex, vec![1; p], true),
        Family::UPi => classical(AlgebraTag::ParaComplex, vec![1; p], false),
        Family::SpPi => classical(AlgebraTag::ParaQuaternion, vec![1; p], false),
        Family::Spin => spin_natural(p, q)?,
        Family::G2 => g2_natural(false)?,
        Family::G2Star => g2_natural(true)?,
    })
}

/// Unit indices used by each scalar factor for the given field.
pub fn scalar_units(s: Scalar, field: AlgebraTag) -> Vec<usize> {
    let kind = field.kind();
    let squares_to = |sign: i8| kind.imaginary_units().filter(move |&u| kind.basis_product(u, u).1 == sign);
    match s {
        Scalar::U1 => squares_to(-1).take(1).collect(),
        Scalar::UPi1 => squares_to(1).take(1).collect(),
        Scalar::Sp1 | Scalar::SpPi1 => kind.imaginary_units().collect(),
    }
}

/// Builds the algebra for `spec` in standardized coordinates.
pub fn build(spec: &FamilySpec) -> Result<EmbeddedAlgebra> {
    spec.validate()?;
    let nat = natural(spec)?;
    let mut gram = nat.gram.clone();
    if spec.negated {
        gram.iter_mut().for_each(|s| *s = -*s);
    }
    let mut order: Vec<usize> = (0..gram.len()).filter(|&i| gram[i] < 0).collect();
    order.extend((0..gram.len()).filter(|&i| gram[i] > 0));
    let form: Vec<i8> = order.iter().map(|&i| gram[i]).collect();
    let field = spec.field();
    let units: Vec<(usize, Mat)> = nat.units.iter().map(|(u, m)| (*u, m.reindex(&order))).collect();
    let mut mats: Vec<Mat> = nat.mats.iter().map(|m| m.reindex(&order)).collect();
    let base_len = mats.len();
    for s in &spec.scalars {
        for u in scalar_units(*s, field) {
            let r = units
                .iter()
                .find(|(i, _)| *i == u)
                .map(|(_, m)| m.clone())
                .expect("unit exists for validated scalar");
            mats.push(r);
        }
    }
    // Factors must commute: the first factor with every scalar, and distinct
    // scalar factors with each other.
    let mut start = base_len;
    let mut blocks = vec![(0, base_len)];
    for s in &spec.scalars {
        let len = scalar_units(*s, field).len();
        blocks.push((start, start + len));
        start += len;
    }
    for (a, &(s0, e0)) in blocks.iter().enumerate() {
        for &(s1, e1) in &blocks[a + 1..] {
            for x in &mats[s0..e0] {
                for y in &mats[s1..e1] {
                    if !x.commutator(y).is_zero() {
                        return Err(Error::FactorsDoNotCommute(spec.to_string()));
                    }
                }
            }
        }
    }
    let algebra = MatrixLieAlgebra::new(spec.to_string(), form.len(), mats)?;
    let out = EmbeddedAlgebra {
        spec: spec.clone(),
        algebra,
        form,
        field,
        right_units: units,
        gammas: nat.gammas.iter().map(|g| g.reindex(&order)).collect(),
        order,
    };
    if !out.preserves_form() {
        return Err(Error::CheckFailed(format!("{spec} does not preserve its form")));
    }
    if !out.commutes_with_structure() {
        return Err(Error::CheckFailed(format!("{spec} does not commute with its scalars")));
    }
    Ok(out)
}

/// The first factor of `spec` acting on the module coordinates `offset..`
/// of `host` (counted over the host field), written in the host's
/// standardized coordinates.  The forms must agree on that block.
pub fn block_in(host: &EmbeddedAlgebra, spec: &FamilySpec, offset: usize) -> Result<MatrixLieAlgebra> {
    spec.validate()?;
    if spec.field() != host.field {
        return Err(Error::InvalidParams(format!("{spec} and {} use different fields", host.spec)));
    }
    let nat = natural(&spec.base())?;
    let d = host.field.kind().dim;
    let start = offset * d;
    let size = nat.gram.len();
    if start + size > host.n() {
        return Err(Error::InvalidParams(format!("{spec} does not fit in {} at offset {offset}", host.spec)));
    }
    let mut inv = vec![0; host.n()];
    for (i, &o) in host.order.iter().enumerate() {
        inv[o] = i;
    }
    let flip = if host.spec.negated { -1 } else { 1 };
    if (0..size).any(|i| host.form[inv[start + i]] != flip * nat.gram[i]) {
        return Err(Error::InvalidParams(format!("form of {spec} does not match {} at offset {offset}", host.spec)));
    }
    let mats = nat
        .mats
        .iter()
        .map(|m| {
            let mut x = Mat::zeros(host.n(), host.n());
            for i in 0..size {
                for j in 0..size {
                    if !m[(i, j)].is_zero() {
                        x[(inv[start + i], inv[start + j])] = m[(i, j)].clone();
                    }
                }
            }
            x
        })
        .collect();
    MatrixLieAlgebra::new(format!("{spec}@{offset}"), host.n(), mats)
}

/// Places `n0`×`n0` matrices on the diagonal block starting at `offset` of
/// an `n`×`n` matrix.
pub fn pad_block(mats: &[Mat], n: usize, offset: usize) -> Vec<Mat> {
    mats.iter()
        .map(|m| Mat::from_fn(n, n, |i, j| {
            if i >= offset && j >= offset && i - offset < m.rows() && j - offset < m.cols() {
                m[(i - offset, j - offset)].clone()
            } else {
                Q::ZERO
            }
        }))
        .collect()
}

/// Parses and builds in one step.
pub fn build_str(spec: &str) -> Result<EmbeddedAlgebra> {
    build(&spec.parse()?)
}

/// spin(p, q) on its spinor module, without any form standardization.
pub fn spin_bare(p: usize, q: usize) -> Result<MatrixLieAlgebra> {
    let rep = build_spin_rep(p, q)?;
    MatrixLieAlgebra::new(format!("spin({p},{q})"), rep.size(), rep.bivectors())
}

/// Classical dimension formula for the first factor plus scalars.
pub fn expected_dim(spec: &FamilySpec) -> usize {
    let n = spec.p + spec.q;
    let base = match spec.family {
        Family::So | Family::Spin => n * (n.saturating_sub(1)) / 2,
        Family::Su => n * n - 1,
        Family::U => n * n,
        Family::Sp => n * (2 * n + 1),
        Family::SuPi => spec.p * spec.p - 1,
        Family::UPi => spec.p * spec.p,
        Family::SpPi => spec.p * (2 * spec.p + 1),
        Family::G2 | Family::G2Star => 14,
    };
    base + spec
        .scalars
        .iter()
        .map(|s| match s {
            Scalar::U1 | Scalar::UPi1 => 1,
            Scalar::Sp1 | Scalar::SpPi1 => 3,
        })
        .sum::<usize>()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        for s in ["so(4,3)", "su(2,1)+u(1)", "spin(8,1)", "sp_pi(2)+sp_pi(1)", "g2", "~g2*", "u_pi(3)"] {
            let spec: FamilySpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert_eq!("sl(3)".parse::<FamilySpec>().unwrap().to_string(), "su_pi(3)");
        assert_eq!("gl_plus(2)".parse::<FamilySpec>().unwrap().to_string(), "u_pi(2)");
        assert!("foo(2)".parse::<FamilySpec>().is_err());
        assert!("so(2,1)+u(1)".parse::<FamilySpec>().is_err());
        assert!("su(2,1)+sp(1)".parse::<FamilySpec>().is_err());
        assert!("sp_pi(2,1)".parse::<FamilySpec>().is_err());
        assert!("spin(1)".parse::<FamilySpec>().is_err());
    }

    #[test]
    fn small_dims() {
        for (s, d) in [("so(4,2)", 15), ("su(2,1)", 8), ("sp_pi(2)", 10), ("u(1,1)", 4), ("su_pi(3)", 8)] {
            let a = build_str(s).unwrap();
            assert_eq!(a.dim(), d, "{s}");
            assert_eq!(a.dim(), expected_dim(&a.spec));
        }
    }
}
