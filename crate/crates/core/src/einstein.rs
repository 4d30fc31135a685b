//! Invariant metrics on reductive homogeneous spaces, their Ricci curvature,
//! and the canonical variations of the Hopf submersions.
//!
//! A space is a triple (𝔤, 𝔥, 𝔪) with 𝔤 = 𝔥 ⊕ 𝔪, [𝔥, 𝔪] ⊆ 𝔪, and an
//! Ad(𝔥)-invariant nondegenerate form on 𝔪.  All bracket data that does not
//! depend on the metric is computed once in [`ReductiveData`], so rescaling
//! the metric is cheap.
//!
//! Ricci is computed twice: from the structure-constant formula
//!
//! ```text
//! Ric(X,Y) = −½ Σ gᵃᵇ ([X,eₐ]𝔪, [Y,e_b]𝔪) − ½ B(X,Y)
//!            + ¼ Σ gᵃᶜ gᵇᵈ ([eₐ,e_b]𝔪, X)([e_c,e_d]𝔪, Y) − sym([Z,X]𝔪, Y)
//! ```
//!
//! and by assembling the curvature operator from the Levi-Civita connection
//! Λ(X)Y = ½[X,Y]𝔪 + U(X,Y), R(X,Y) = [Λ(X),Λ(Y)] − Λ([X,Y]𝔪) − ad([X,Y]𝔥),
//! then tracing.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::{build, scalar_units, EmbeddedAlgebra, FamilySpec, Scalar};
use crate::liealg::{LieAlgebra, Subspace};
use crate::matrix::{dot, Mat, Signature};
use crate::poly::Poly;
use crate::rational::Q;
use crate::transitivity::{ActionInstance, Params};

/// Metric-independent bracket data of a reductive decomposition.
#[derive(Debug)]
pub struct ReductiveData {
    name: String,
    algebra: Arc<LieAlgebra>,
    h: Subspace,
    m: Subspace,
    /// `[eₐ, e_b]` split into 𝔥- and 𝔪-coordinates, indexed `a * dim 𝔪 + b`.
    br_h: Vec<Vec<Q>>,
    br_m: Vec<Vec<Q>>,
    /// ad(zᵢ) on 𝔪 for the 𝔥 basis.
    ad_h: Vec<Mat>,
    /// ad(eₐ) followed by projection to 𝔪.
    ad_m: Vec<Mat>,
    killing_m: Mat,
}

impl ReductiveData {
    pub fn new(name: impl Into<String>, algebra: Arc<LieAlgebra>, h: Subspace, m: Subspace) -> Result<ReductiveData> {
        let name = name.into();
        let d = algebra.dim();
        if h.parent_dim() != d || m.parent_dim() != d {
            return Err(Error::LengthMismatch(h.parent_dim(), d));
        }
        if h.dim() + m.dim() != d || h.sum_dim(&m)? != d {
            return Err(Error::NotReductive(format!("{name}: 𝔥 and 𝔪 do not span 𝔤")));
        }
        if !h.is_subalgebra_of(&algebra) {
            return Err(Error::NotReductive(format!("{name}: 𝔥 is not a subalgebra")));
        }
        let mut rows = h.vectors().to_vec();
        rows.extend(m.vectors().iter().cloned());
        let inv = Mat::from_rows(&rows).inverse().expect("complementary bases");
        let (kh, km) = (h.dim(), m.dim());
        let split = |v: &[Q]| {
            let c = inv.vec_mul(v);
            (c[..kh].to_vec(), c[kh..].to_vec())
        };
        let mv = m.vectors();
        let mut br_h = Vec::with_capacity(km * km);
        let mut br_m = Vec::with_capacity(km * km);
        for a in 0..km {
            for b in 0..km {
                let (x, y) = split(&algebra.bracket(&mv[a], &mv[b]));
                br_h.push(x);
                br_m.push(y);
            }
        }
        let mut ad_h = Vec::with_capacity(kh);
        for z in h.vectors() {
            let mut cols = Vec::with_capacity(km);
            for e in mv {
                let (x, y) = split(&algebra.bracket(z, e));
                if x.iter().any(|q| !q.is_zero()) {
                    return Err(Error::NotReductive(format!("{name}: [𝔥, 𝔪] ⊄ 𝔪")));
                }
                cols.push(y);
            }
            ad_h.push(Mat::from_cols(&cols, km));
        }
        let ad_m = (0..km)
            .map(|a| Mat::from_fn(km, km, |c, b| br_m[a * km + b][c].clone()))
            .collect();
        let killing_m = m.restrict_form(algebra.killing());
        Ok(ReductiveData {
            name,
            algebra,
            h,
            m,
            br_h,
            br_m,
            ad_h,
            ad_m,
            killing_m,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    pub fn h(&self) -> &Subspace {
        &self.h
    }

    pub fn m(&self) -> &Subspace {
        &self.m
    }

    pub fn dim_m(&self) -> usize {
        self.m.dim()
    }

    /// 𝔪-coordinates of [eₐ, e_b]𝔪.
    pub fn bracket_m(&self, a: usize, b: usize) -> &[Q] {
        &self.br_m[a * self.dim_m() + b]
    }

    /// 𝔥-coordinates of [eₐ, e_b]𝔥.
    pub fn bracket_h(&self, a: usize, b: usize) -> &[Q] {
        &self.br_h[a * self.dim_m() + b]
    }

    pub fn ad_h(&self) -> &[Mat] {
        &self.ad_h
    }

    /// Whether `metric` is Ad(𝔥)-invariant.
    pub fn is_invariant(&self, metric: &Mat) -> bool {
        self.ad_h.iter().all(|z| z.transpose().mul(metric).add(&metric.mul(z)).is_zero())
    }
}

/// A reductive space with an invariant metric on 𝔪.
#[derive(Debug, Clone)]
pub struct ReductiveSpace {
    data: Arc<ReductiveData>,
    metric: Mat,
    metric_inv: Mat,
}

impl ReductiveSpace {
    pub fn new(data: Arc<ReductiveData>, metric: Mat) -> Result<ReductiveSpace> {
        let k = data.dim_m();
        if metric.rows() != k || metric.cols() != k {
            return Err(Error::ShapeMismatch);
        }
        if !metric.is_symmetric() {
            return Err(Error::NotReductive(format!("{}: metric is not symmetric", data.name)));
        }
        let metric_inv = metric.inverse().ok_or(Error::DegenerateForm)?;
        if !data.is_invariant(&metric) {
            return Err(Error::NotReductive(format!("{}: metric is not Ad(𝔥)-invariant", data.name)));
        }
        Ok(ReductiveSpace {
            data,
            metric,
            metric_inv,
        })
    }

    pub fn data(&self) -> &Arc<ReductiveData> {
        &self.data
    }

    pub fn name(&self) -> &str {
        &self.data.name
    }

    pub fn dim(&self) -> usize {
        self.data.dim_m()
    }

    pub fn metric(&self) -> &Mat {
        &self.metric
    }

    pub fn signature(&self) -> Signature {
        self.metric.signature()
    }

    /// Same decomposition, different metric.
    pub fn with_metric(&self, metric: Mat) -> Result<ReductiveSpace> {
        ReductiveSpace::new(self.data.clone(), metric)
    }

    /// Ric(c·g) for the homothetic metric c·g.
    pub fn scaled(&self, c: &Q) -> Result<ReductiveSpace> {
        self.with_metric(self.metric.scale(c))
    }
}

/// The invariant form `g(Z, ·) = tr ad𝔪(·)` defining the mean curvature term.
fn z_vector(space: &ReductiveSpace) -> Vec<Q> {
    let tr: Vec<Q> = space.data.ad_m.iter().map(Mat::trace).collect();
    space.metric_inv.mul_vec(&tr)
}

/// Ricci tensor from the structure-constant formula.
pub fn ricci(space: &ReductiveSpace) -> Mat {
    let d = &space.data;
    let n = d.dim_m();
    let g = &space.metric;
    let gi = &space.metric_inv;
    let half = Q::new(1, 2);
    let quarter = Q::new(1, 4);

    // −½ tr(g⁻¹ M_yᵀ g M_x)
    let p: Vec<Mat> = d.ad_m.iter().map(|mx| g.mul(mx)).collect();
    let qy: Vec<Mat> = d.ad_m.iter().map(|my| gi.mul(&my.transpose())).collect();
    // F^x_ab = g([eₐ,e_b]𝔪, eₓ)
    let f: Vec<Mat> = (0..n)
        .map(|x| {
            let gx = g.col(x);
            Mat::from_fn(n, n, |a, b| dot(d.bracket_m(a, b), &gx))
        })
        .collect();
    let gfg: Vec<Mat> = f.iter().map(|fx| gi.mul(fx).mul(gi)).collect();
    let z = z_vector(space);
    let mut mz = Mat::zeros(n, n);
    for (w, c) in z.iter().enumerate() {
        if !c.is_zero() {
            mz.add_scaled(c, &d.ad_m[w]);
        }
    }
    let zt = mz.transpose().mul(g);

    Mat::from_fn(n, n, |x, y| {
        let mut t1 = Q::ZERO;
        for i in 0..n {
            for j in 0..n {
                let a = &qy[y][(i, j)];
                if !a.is_zero() {
                    let b = &p[x][(j, i)];
                    if !b.is_zero() {
                        t1 += &(a * b);
                    }
                }
            }
        }
        let mut t3 = Q::ZERO;
        for (a, b) in gfg[x].entries().iter().zip(f[y].entries()) {
            if !a.is_zero() && !b.is_zero() {
                t3 += &(a * b);
            }
        }
        let t4 = &zt[(x, y)] + &zt[(y, x)];
        -(&half * &t1) - &(&half * &d.killing_m[(x, y)]) + &(&quarter * &t3) - &(&half * &t4)
    })
}

/// Levi-Civita operators Λ(eₓ) on 𝔪.
fn connection(space: &ReductiveSpace) -> Vec<Mat> {
    let d = &space.data;
    let n = d.dim_m();
    let g = &space.metric;
    let gi = &space.metric_inv;
    let half = Q::new(1, 2);
    // S_w = ½(M_wᵀ g + g M_w), so that U(eₐ, e_b) = g⁻¹ (S_w[a][b])_w.
    let s: Vec<Mat> = d
        .ad_m
        .iter()
        .map(|mw| mw.transpose().mul(g).add(&g.mul(mw)).scale(&half))
        .collect();
    (0..n)
        .map(|x| {
            let w = Mat::from_fn(n, n, |wi, b| s[wi][(x, b)].clone());
            d.ad_m[x].scale(&half).add(&gi.mul(&w))
        })
        .collect()
}

/// Ricci tensor from the full curvature operator.
pub fn ricci_from_curvature(space: &ReductiveSpace) -> Mat {
    let d = &space.data;
    let n = d.dim_m();
    let lam = connection(space);
    let mut ric = Mat::zeros(n, n);
    for y in 0..n {
        let mut row = vec![Q::ZERO; n];
        for x in 0..n {
            // Row x of R(eₓ, e_y) = ΛₓΛ_y − Λ_yΛₓ − Λ([eₓ,e_y]𝔪) − ad([eₓ,e_y]𝔥).
            let lx = lam[x].row(x);
            let ly = lam[y].row(x);
            let a = lam[y].vec_mul(lx);
            let b = lam[x].vec_mul(ly);
            for k in 0..n {
                row[k] += &(&a[k] - &b[k]);
            }
            for (k, c) in d.bracket_m(x, y).iter().enumerate() {
                if !c.is_zero() {
                    for (r, v) in row.iter_mut().zip(lam[k].row(x)) {
                        if !v.is_zero() {
                            *r -= &(c * v);
                        }
                    }
                }
            }
            for (k, c) in d.bracket_h(x, y).iter().enumerate() {
                if !c.is_zero() {
                    for (r, v) in row.iter_mut().zip(d.ad_h[k].row(x)) {
                        if !v.is_zero() {
                            *r -= &(c * v);
                        }
                    }
                }
            }
        }
        for (z, v) in row.into_iter().enumerate() {
            ric[(y, z)] = v;
        }
    }
    ric
}

/// g⁻¹ Ric.
pub fn ricci_endomorphism(space: &ReductiveSpace) -> Mat {
    space.metric_inv.mul(&ricci(space))
}

pub fn scalar_curvature(space: &ReductiveSpace) -> Q {
    ricci_endomorphism(space).trace()
}

fn residual_of(endo: &Mat) -> Q {
    let n = endo.rows();
    if n == 0 {
        return Q::ZERO;
    }
    let mean = &endo.trace() / &Q::from(n);
    endo.sub(&Mat::identity(n).scale(&mean)).max_abs()
}

/// max |g⁻¹Ric − (s/n)·I|; zero exactly when the metric is Einstein.
pub fn einstein_residual(space: &ReductiveSpace) -> Q {
    residual_of(&ricci_endomorphism(space))
}

/// λ with Ric = λ g, if the metric is Einstein.
pub fn einstein_constant(space: &ReductiveSpace) -> Option<Q> {
    let e = ricci_endomorphism(space);
    let n = e.rows();
    if n == 0 {
        return Some(Q::ZERO);
    }
    residual_of(&e).is_zero().then(|| &e.trace() / &Q::from(n))
}

/// Coefficient subspace of {X ∈ 𝔤 : X x₀ ∈ span(uᵢ x₀)}.
fn stabilizer(g: &EmbeddedAlgebra, x0: &[Q], units: &[Mat]) -> Subspace {
    let d = g.dim();
    let mut cols: Vec<Vec<Q>> = g.algebra.basis().iter().map(|x| x.mul_vec(x0)).collect();
    cols.extend(units.iter().map(|u| u.mul_vec(x0)));
    let kernel = Mat::from_cols(&cols, x0.len()).nullspace();
    let coeffs: Vec<Vec<Q>> = kernel.iter().map(|v| v[..d].to_vec()).collect();
    Subspace::span(d, &coeffs)
}

/// Coefficient subspace of the centralizer of `c` in 𝔤.
fn centralizer(g: &EmbeddedAlgebra, c: &Mat) -> Subspace {
    let cols: Vec<Vec<Q>> = g.algebra.basis().iter().map(|x| x.commutator(c).flatten()).collect();
    let kernel = Mat::from_cols(&cols, g.n() * g.n()).nullspace();
    Subspace::span(g.dim(), &kernel)
}

/// Projection onto the form-orthogonal complement of span(fᵢ).
fn horizontal_projector(form: &Mat, fibre: &[Vec<Q>]) -> Option<Mat> {
    let n = form.rows();
    if fibre.is_empty() {
        return Some(Mat::identity(n));
    }
    let f = Mat::from_cols(fibre, n);
    let gram = f.transpose().mul(form).mul(&f);
    let gi = gram.inverse()?;
    Some(Mat::identity(n).sub(&f.mul(&gi).mul(&f.transpose()).mul(form)))
}

/// Metric ⟨P X x₀, P Y x₀⟩ on the given coefficient vectors.
fn induced_metric(g: &EmbeddedAlgebra, x0: &[Q], proj: &Mat, basis: &[Vec<Q>]) -> Mat {
    let form = g.form_matrix();
    let images: Vec<Vec<Q>> = basis
        .iter()
        .map(|c| proj.mul_vec(&g.algebra.combine(c).mul_vec(x0)))
        .collect();
    let k = basis.len();
    Mat::from_fn(k, k, |i, j| form.bilinear(&images[i], &images[j]))
}

/// 𝔥 = isotropy, 𝔪 = trace-form complement, metric = pullback of the
/// ambient form through X ↦ X·x₀ (the constant curvature −1 metric).
pub fn canonical_space(a: &ActionInstance) -> Result<ReductiveSpace> {
    let alg = &a.algebra;
    let images: Vec<Vec<Q>> = alg.basis().iter().map(|x| x.mul_vec(&a.base_point)).collect();
    let kernel = Mat::from_cols(&images, a.n + 1).nullspace();
    let h = Subspace::span(alg.dim(), &kernel);
    let m = h.orthogonal_complement(alg.trace_form())?;
    let form = crate::transitivity::standard_form(a.n, a.r);
    let imgs: Vec<Vec<Q>> = m.vectors().iter().map(|c| alg.combine(c).mul_vec(&a.base_point)).collect();
    let k = m.dim();
    let metric = Mat::from_fn(k, k, |i, j| form.bilinear(&imgs[i], &imgs[j]));
    let data = ReductiveData::new(format!("{}/iso", alg.name()), alg.abstract_algebra().clone(), h, m)?;
    ReductiveSpace::new(Arc::new(data), metric)
}

/// The ten Hopf submersions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FibrationId {
    PiC,
    PiA,
    PiH,
    PiB,
    PiO1,
    PiO2,
    PiOPrime,
    PiCH,
    PiCB,
    PiAB,
}

impl FibrationId {
    pub const ALL: [FibrationId; 10] = [
        FibrationId::PiC,
        FibrationId::PiA,
        FibrationId::PiH,
        FibrationId::PiB,
        FibrationId::PiO1,
        FibrationId::PiO2,
        FibrationId::PiOPrime,
        FibrationId::PiCH,
        FibrationId::PiCB,
        FibrationId::PiAB,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FibrationId::PiC => "piC",
            FibrationId::PiA => "piA",
            FibrationId::PiH => "piH",
            FibrationId::PiB => "piB",
            FibrationId::PiO1 => "piO1",
            FibrationId::PiO2 => "piO2",
            FibrationId::PiOPrime => "piOprime",
            FibrationId::PiCH => "piCH",
            FibrationId::PiCB => "piCB",
            FibrationId::PiAB => "piAB",
        }
    }

    /// Which parameters the fibration takes.
    pub fn takes(self) -> ParamKind {
        match self {
            FibrationId::PiC | FibrationId::PiH | FibrationId::PiCH => ParamKind::MS,
            FibrationId::PiA | FibrationId::PiB | FibrationId::PiCB | FibrationId::PiAB => ParamKind::M,
            _ => ParamKind::Fixed,
        }
    }
}

impl fmt::Display for FibrationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FibrationId {
    type Err = Error;

    fn from_str(s: &str) -> Result<FibrationId> {
        FibrationId::ALL
            .into_iter()
            .find(|f| f.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownTag(s.to_string()))
    }
}

impl Serialize for FibrationId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ParamKind {
    Fixed,
    MS,
    M,
}

/// Static description of a catalog entry.
#[derive(Debug, Clone, Serialize)]
pub struct CatalogEntry {
    pub id: FibrationId,
    pub params: ParamKind,
    pub group: &'static str,
    pub total_isotropy: &'static str,
    pub base_isotropy: &'static str,
    pub total_space: &'static str,
    pub base_space: &'static str,
    pub fibre_dim: usize,
    pub constraints: &'static str,
}

pub fn catalog() -> Vec<CatalogEntry> {
    use FibrationId::*;
    let e = |id, params, group, k, hb, total, base, fibre_dim, constraints| CatalogEntry {
        id,
        params,
        group,
        total_isotropy: k,
        base_isotropy: hb,
        total_space: total,
        base_space: base,
        fibre_dim,
        constraints,
    };
    vec![
        e(PiC, ParamKind::MS, "su(m-s,s+1)", "su(m-s,s)", "s(u(1)+u(m-s,s))", "H^{2m+1}_{2s+1}", "CH^m_s", 1, "0<=s<=m, m>=1"),
        e(PiA, ParamKind::M, "su_pi(m+1)", "su_pi(m)", "s(u_pi(1)+u_pi(m))", "H^{2m+1}_m", "AP^m", 1, "m>=1"),
        e(PiH, ParamKind::MS, "sp(m-s,s+1)", "sp(m-s,s)", "sp(m-s,s)+sp(1)", "H^{4m+3}_{4s+3}", "HH^m_s", 3, "0<=s<=m, m>=1"),
        e(PiB, ParamKind::M, "sp_pi(m+1)", "sp_pi(m)", "sp_pi(m)+sp_pi(1)", "H^{4m+3}_{2m+1}", "BP^m", 3, "m>=1"),
        e(PiO1, ParamKind::Fixed, "spin(9)", "spin(7)", "spin(8)", "H^15_15", "H^8_8(-4)", 7, ""),
        e(PiO2, ParamKind::Fixed, "spin(8,1)", "spin(7)", "spin(8)", "H^15_7", "H^8(-4)", 7, ""),
        e(PiOPrime, ParamKind::Fixed, "spin(5,4)", "spin(4,3)", "spin(4,4)", "H^15_7", "H^8_4(-4)", 7, ""),
        e(PiCH, ParamKind::MS, "sp(m-s,s+1)", "sp(m-s,s)+u(1)", "sp(m-s,s)+sp(1)", "CH^{2m+1}_{2s+1}", "HH^m_s", 2, "0<=s<=m, m>=1"),
        e(PiCB, ParamKind::M, "sp_pi(m+1)", "sp_pi(m)+u(1)", "sp_pi(m)+sp_pi(1)", "CH^{2m+1}_m", "BP^m", 2, "m>=1"),
        e(PiAB, ParamKind::M, "sp_pi(m+1)", "sp_pi(m)+u_pi(1)", "sp_pi(m)+sp_pi(1)", "AP^{2m+1}", "BP^m", 2, "m>=1"),
    ]
}

pub fn catalog_json() -> serde_json::Value {
    serde_json::to_value(catalog()).expect("catalog serializes")
}

/// Largest matrix size accepted by [`build_fibration`].
pub const MAX_FIBRATION_AMBIENT: usize = 32;

enum BaseIsotropy {
    Units(Vec<Mat>),
    /// Centralizer of γ(v), v_k = ⟨x₀, γ_k x₀⟩.
    SpinorLine,
}

/// A Hopf submersion G/K → G/H_b with 𝔪 = 𝔪₁ ⊕ 𝔪₂ (vertical, horizontal).
#[derive(Debug, Clone)]
pub struct HopfFibration {
    pub id: FibrationId,
    pub params: Params,
    pub group: FamilySpec,
    pub total_space: String,
    pub base_space: String,
    algebra: Arc<LieAlgebra>,
    k: Subspace,
    hb: Subspace,
    m1: Subspace,
    m2: Subspace,
    total: ReductiveSpace,
}

fn check_ms(id: FibrationId, params: Params) -> Result<(usize, usize)> {
    match params {
        Params::MS { m, s } if m >= 1 && s <= m => Ok((m, s)),
        _ => Err(Error::InvalidParams(format!("{id} needs 0 ≤ s ≤ m, m ≥ 1, got {params}"))),
    }
}

fn check_m(id: FibrationId, params: Params) -> Result<usize> {
    match params {
        Params::M { m } if m >= 1 => Ok(m),
        _ => Err(Error::InvalidParams(format!("{id} needs m ≥ 1, got {params}"))),
    }
}

struct Recipe {
    group: String,
    total: String,
    base: String,
    k_units: Option<Scalar>,
    hb_units: Option<Scalar>,
}

fn recipe(id: FibrationId, params: Params) -> Result<Recipe> {
    use FibrationId::*;
    let r = |group: String, total: String, base: String, k, hb| Recipe {
        group,
        total,
        base,
        k_units: k,
        hb_units: hb,
    };
    Ok(match id {
        PiC => {
            let (m, s) = check_ms(id, params)?;
            r(format!("su({},{})", m - s, s + 1), format!("H^{}_{}", 2 * m + 1, 2 * s + 1), format!("CH^{m}_{s}"), None, Some(Scalar::U1))
        }
        PiA => {
            let m = check_m(id, params)?;
            r(format!("su_pi({})", m + 1), format!("H^{}_{m}", 2 * m + 1), format!("AP^{m}"), None, Some(Scalar::UPi1))
        }
        PiH => {
            let (m, s) = check_ms(id, params)?;
            r(format!("sp({},{})", m - s, s + 1), format!("H^{}_{}", 4 * m + 3, 4 * s + 3), format!("HH^{m}_{s}"), None, Some(Scalar::Sp1))
        }
        PiB => {
            let m = check_m(id, params)?;
            r(format!("sp_pi({})", m + 1), format!("H^{}_{}", 4 * m + 3, 2 * m + 1), format!("BP^{m}"), None, Some(Scalar::SpPi1))
        }
        PiO1 | PiO2 | PiOPrime => {
            if params != Params::Fixed {
                return Err(Error::InvalidParams(format!("{id} takes no parameters")));
            }
            let (g, total, base) = match id {
                PiO1 => ("spin(9)", "H^15_15", "H^8_8(-4)"),
                PiO2 => ("spin(8,1)", "H^15_7", "H^8(-4)"),
                _ => ("spin(5,4)", "H^15_7", "H^8_4(-4)"),
            };
            r(g.into(), total.into(), base.into(), None, None)
        }
        PiCH => {
            let (m, s) = check_ms(id, params)?;
            r(
                format!("sp({},{})", m - s, s + 1),
                format!("CH^{}_{}", 2 * m + 1, 2 * s + 1),
                format!("HH^{m}_{s}"),
                Some(Scalar::U1),
                Some(Scalar::Sp1),
            )
        }
        PiCB | PiAB => {
            let m = check_m(id, params)?;
            let (total, k) = if id == PiCB {
                (format!("CH^{}_{m}", 2 * m + 1), Scalar::U1)
            } else {
                (format!("AP^{}", 2 * m + 1), Scalar::UPi1)
            };
            r(format!("sp_pi({})", m + 1), total, format!("BP^{m}"), Some(k), Some(Scalar::SpPi1))
        }
    })
}

fn unit_mats(g: &EmbeddedAlgebra, s: Option<Scalar>) -> Vec<Mat> {
    s.map(|s| {
        scalar_units(s, g.field)
            .into_iter()
            .map(|u| g.right_unit(u).expect("unit for field").clone())
            .collect()
    })
    .unwrap_or_default()
}

/// Builds the fibration with its canonical metric on the total space.
pub fn build_fibration(id: FibrationId, params: Params) -> Result<HopfFibration> {
    let rec = recipe(id, params)?;
    let spec: FamilySpec = rec.group.parse()?;
    let g = build(&spec)?;
    if g.n() > MAX_FIBRATION_AMBIENT {
        return Err(Error::InvalidParams(format!("{spec} exceeds size {MAX_FIBRATION_AMBIENT}")));
    }
    let x0 = g.base_point();
    let k_units = unit_mats(&g, rec.k_units);
    let hb_rule = match rec.hb_units {
        Some(s) => BaseIsotropy::Units(unit_mats(&g, Some(s))),
        None => BaseIsotropy::SpinorLine,
    };
    let k = stabilizer(&g, &x0, &k_units);
    let hb = match hb_rule {
        BaseIsotropy::Units(u) => stabilizer(&g, &x0, &u),
        BaseIsotropy::SpinorLine => {
            let form = g.form_matrix();
            let v: Vec<Q> = g.gammas.iter().map(|gm| form.bilinear(&x0, &gm.mul_vec(&x0))).collect();
            if v.iter().all(Q::is_zero) {
                return Err(Error::CheckFailed(format!("{id}: base point gives a zero spinor square")));
            }
            let mut c = Mat::zeros(g.n(), g.n());
            for (vk, gm) in v.iter().zip(&g.gammas) {
                c.add_scaled(vk, gm);
            }
            centralizer(&g, &c)
        }
    };
    if !hb.contains_subspace(&k) {
        return Err(Error::CheckFailed(format!("{id}: total isotropy not inside base isotropy")));
    }
    let tf = g.algebra.trace_form();
    let m = k.orthogonal_complement(tf)?;
    let m2 = hb.orthogonal_complement(tf)?;
    let m1 = m.intersect(&hb)?;
    if m1.dim() + m2.dim() != m.dim() || !m.contains_subspace(&m2) {
        return Err(Error::NotReductive(format!("{id}: 𝔪 ≠ 𝔪₁ ⊕ 𝔪₂")));
    }
    let fibre: Vec<Vec<Q>> = k_units.iter().map(|u| u.mul_vec(&x0)).collect();
    let proj = horizontal_projector(&g.form_matrix(), &fibre).ok_or(Error::DegenerateForm)?;
    let mut basis = m1.vectors().to_vec();
    basis.extend(m2.vectors().iter().cloned());
    let metric = induced_metric(&g, &x0, &proj, &basis);
    let p = m1.dim();
    let orthogonal = (0..p).all(|i| (p..basis.len()).all(|j| metric[(i, j)].is_zero()));
    if !orthogonal {
        return Err(Error::CheckFailed(format!("{id}: vertical and horizontal spaces are not orthogonal")));
    }
    let m_adapted = Subspace::from_basis(g.dim(), basis)?;
    let algebra = g.algebra.abstract_algebra().clone();
    let data = ReductiveData::new(format!("{id}:{}", rec.total), algebra.clone(), k.clone(), m_adapted)?;
    let total = ReductiveSpace::new(Arc::new(data), metric)?;
    Ok(HopfFibration {
        id,
        params,
        group: spec,
        total_space: rec.total,
        base_space: rec.base,
        algebra,
        k,
        hb,
        m1,
        m2,
        total,
    })
}

impl HopfFibration {
    pub fn fibre_dim(&self) -> usize {
        self.m1.dim()
    }

    pub fn total_dim(&self) -> usize {
        self.total.dim()
    }

    pub fn base_dim(&self) -> usize {
        self.m2.dim()
    }

    pub fn k(&self) -> &Subspace {
        &self.k
    }

    pub fn hb(&self) -> &Subspace {
        &self.hb
    }

    /// The canonical metric (t = 1).
    pub fn canonical(&self) -> &ReductiveSpace {
        &self.total
    }

    /// g_t = g′ on 𝔪₂ plus t·ĝ on 𝔪₁.
    pub fn variation(&self, t: &Q) -> Result<ReductiveSpace> {
        if t.is_zero() {
            return Err(Error::InvalidParams("t must be nonzero".into()));
        }
        let p = self.fibre_dim();
        let g = self.total.metric();
        let metric = Mat::from_fn(g.rows(), g.cols(), |i, j| {
            if i < p && j < p {
                t * &g[(i, j)]
            } else {
                g[(i, j)].clone()
            }
        });
        self.total.with_metric(metric)
    }

    fn block(&self, range: std::ops::Range<usize>) -> Mat {
        let idx: Vec<usize> = range.collect();
        self.total.metric().select(&idx, &idx)
    }

    /// H_b/K with the induced metric on 𝔪₁.
    pub fn fibre_space(&self) -> Result<ReductiveSpace> {
        let hb_alg = Arc::new(self.algebra.subalgebra(format!("{}:hb", self.id), &self.hb)?);
        let into_hb = |s: &Subspace| -> Result<Subspace> {
            let rows = s
                .vectors()
                .iter()
                .map(|v| self.hb.coords(v).ok_or(Error::NotInSpan))
                .collect::<Result<Vec<_>>>()?;
            Subspace::from_basis(self.hb.dim(), rows)
        };
        let data = ReductiveData::new(format!("{}:fibre", self.id), hb_alg, into_hb(&self.k)?, into_hb(&self.m1)?)?;
        ReductiveSpace::new(Arc::new(data), self.block(0..self.fibre_dim()))
    }

    /// G/H_b with the induced metric on 𝔪₂.
    pub fn base(&self) -> Result<ReductiveSpace> {
        let data = ReductiveData::new(format!("{}:{}", self.id, self.base_space), self.algebra.clone(), self.hb.clone(), self.m2.clone())?;
        ReductiveSpace::new(Arc::new(data), self.block(self.fibre_dim()..self.total_dim()))
    }

    /// O'Neill's A vanishes iff [𝔪₂, 𝔪₂] has no 𝔪₁ component.
    pub fn a_tensor_vanishes(&self) -> bool {
        let d = self.total.data();
        let (p, n) = (self.fibre_dim(), self.total_dim());
        (p..n).all(|a| (p..n).all(|b| d.bracket_m(a, b)[..p].iter().all(Q::is_zero)))
    }

    /// [𝔪₁, 𝔪₁] has no 𝔪₂ component.
    pub fn fibres_totally_geodesic(&self) -> bool {
        let d = self.total.data();
        let (p, n) = (self.fibre_dim(), self.total_dim());
        (0..p).all(|a| (0..p).all(|b| d.bracket_m(a, b)[p..n].iter().all(Q::is_zero)))
    }
}

/// Einstein constants of base and fibre.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LambdaValues {
    /// s′ / dim B.
    pub lambda_base: Q,
    /// ŝ / dim fibre.
    pub lambda_fibre: Q,
}

pub fn lambda_values(fib: &HopfFibration) -> Result<LambdaValues> {
    let fibre = fib.fibre_space()?;
    let lambda_fibre = einstein_constant(&fibre).ok_or_else(|| Error::NotEinstein(format!("fibre of {}", fib.id)))?;
    let base = fib.base()?;
    let lambda_base = einstein_constant(&base).ok_or_else(|| Error::NotEinstein(format!("base of {}", fib.id)))?;
    Ok(LambdaValues {
        lambda_base,
        lambda_fibre,
    })
}

/// λ̂/(λ′ − λ̂) unless λ̂ = 0, λ̂ = λ′/2 or A ≡ 0.
pub fn t_zero(fib: &HopfFibration) -> Result<Option<Q>> {
    let l = lambda_values(fib)?;
    Ok(t_zero_from(&l, fib.a_tensor_vanishes()))
}

pub fn t_zero_from(l: &LambdaValues, a_vanishes: bool) -> Option<Q> {
    let half = &l.lambda_base * &Q::new(1, 2);
    if a_vanishes || l.lambda_fibre.is_zero() || l.lambda_fibre == half {
        return None;
    }
    Some(&l.lambda_fibre / &(&l.lambda_base - &l.lambda_fibre))
}

/// Degree bound for t·(g_t⁻¹Ric_t − mean) as a polynomial in t.
pub const SCAN_DEGREE: usize = 4;

/// t·(g_t⁻¹Ric_t − (s_t/n)I), whose entries are polynomials in t.
fn scan_entries(fib: &HopfFibration, t: &Q) -> Result<Vec<Q>> {
    let space = fib.variation(t)?;
    let e = ricci_endomorphism(&space);
    let n = e.rows();
    let mean = &e.trace() / &Q::from(n);
    Ok(e.sub(&Mat::identity(n).scale(&mean)).scale(t).flatten())
}

/// All t ≠ 0 with g_t Einstein, by exact interpolation in t.
///
/// The polynomial entries are interpolated through `samples` (default
/// t = 1 … 5) and checked at two further points; the Einstein values are the
/// nonzero rational roots of their gcd, each confirmed by an exact residual.
pub fn einstein_scan(fib: &HopfFibration, samples: Option<&[Q]>) -> Result<BTreeSet<Q>> {
    let default: Vec<Q> = (1..=SCAN_DEGREE as i64 + 1).map(Q::int).collect();
    let xs: Vec<Q> = samples.map(<[Q]>::to_vec).unwrap_or(default);
    if xs.iter().any(Q::is_zero) || xs.iter().collect::<BTreeSet<_>>().len() != xs.len() {
        return Err(Error::DegenerateInterpolation("samples must be distinct and nonzero".into()));
    }
    let top = xs.iter().max().cloned().unwrap_or(Q::ZERO);
    let checks = [&top + &Q::ONE, &top + &Q::int(2)];
    let mut points = xs.clone();
    points.extend(checks.iter().cloned());
    let values: Vec<Vec<Q>> = points.par_iter().map(|t| scan_entries(fib, t)).collect::<Result<_>>()?;
    let k = xs.len();
    let entries = values[0].len();
    let mut acc: Option<Poly> = None;
    for e in 0..entries {
        let ys: Vec<Q> = values[..k].iter().map(|v| v[e].clone()).collect();
        let poly = Poly::interpolate(&xs, &ys);
        for (t, v) in checks.iter().zip(&values[k..]) {
            if poly.eval(t) != v[e] {
                return Err(Error::DegenerateInterpolation(format!(
                    "{}: entry {e} is not a polynomial of degree < {k}; add samples",
                    fib.id
                )));
            }
        }
        if !poly.is_zero() {
            acc = Some(match acc {
                None => poly,
                Some(a) => a.gcd(&poly),
            });
        }
    }
    let Some(common) = acc else {
        return Err(Error::DegenerateInterpolation(format!("{}: every g_t is Einstein", fib.id)));
    };
    let mut out = BTreeSet::new();
    for t in common.rational_roots() {
        if t.is_zero() {
            continue;
        }
        if !einstein_residual(&fib.variation(&t)?).is_zero() {
            return Err(Error::CheckFailed(format!("{}: root t = {t} is not Einstein", fib.id)));
        }
        out.insert(t);
    }
    Ok(out)
}

/// A space tag: `H:n:r`, `CH:m:s`, `HH:m:s`, `AP:m`, `BP:m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpaceTag {
    H(usize, usize),
    CH(usize, usize),
    HH(usize, usize),
    AP(usize),
    BP(usize),
}

impl FromStr for SpaceTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<SpaceTag> {
        let bad = || Error::UnknownTag(s.to_string());
        let parts: Vec<&str> = s.trim().split(':').collect();
        let nums = parts[1..]
            .iter()
            .map(|p| p.parse::<usize>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        let tag = match (parts[0].to_ascii_uppercase().as_str(), nums.as_slice()) {
            ("H", [n, r]) if r <= n && *n >= 1 => SpaceTag::H(*n, *r),
            ("CH", [m, s]) if s <= m && *m >= 1 => SpaceTag::CH(*m, *s),
            ("HH", [m, s]) if s <= m && *m >= 1 => SpaceTag::HH(*m, *s),
            ("AP", [m]) if *m >= 1 => SpaceTag::AP(*m),
            ("BP", [m]) if *m >= 1 => SpaceTag::BP(*m),
            _ => return Err(bad()),
        };
        Ok(tag)
    }
}

impl fmt::Display for SpaceTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceTag::H(n, r) => write!(f, "H:{n}:{r}"),
            SpaceTag::CH(m, s) => write!(f, "CH:{m}:{s}"),
            SpaceTag::HH(m, s) => write!(f, "HH:{m}:{s}"),
            SpaceTag::AP(m) => write!(f, "AP:{m}"),
            SpaceTag::BP(m) => write!(f, "BP:{m}"),
        }
    }
}

/// Catalog fibrations whose total space is `tag`.
pub fn fibrations_over(tag: SpaceTag) -> Vec<(FibrationId, Params)> {
    use FibrationId::*;
    let mut out = Vec::new();
    match tag {
        SpaceTag::H(n, r) => {
            if n % 2 == 1 && r % 2 == 1 && r <= n && n >= 3 {
                out.push((PiC, Params::MS { m: (n - 1) / 2, s: (r - 1) / 2 }));
            }
            if n % 2 == 1 && n >= 3 && r == (n - 1) / 2 {
                out.push((PiA, Params::M { m: (n - 1) / 2 }));
            }
            if n % 4 == 3 && r % 4 == 3 && n >= 7 {
                out.push((PiH, Params::MS { m: (n - 3) / 4, s: (r - 3) / 4 }));
            }
            if n % 4 == 3 && n >= 7 && r == (n - 1) / 2 {
                out.push((PiB, Params::M { m: (n - 3) / 4 }));
            }
            if (n, r) == (15, 15) {
                out.push((PiO1, Params::Fixed));
            }
            if (n, r) == (15, 7) {
                out.push((PiO2, Params::Fixed));
                out.push((PiOPrime, Params::Fixed));
            }
        }
        SpaceTag::CH(a, b) => {
            if a % 2 == 1 && b % 2 == 1 && a >= 3 {
                out.push((PiCH, Params::MS { m: (a - 1) / 2, s: (b - 1) / 2 }));
            }
            if a % 2 == 1 && a >= 3 && b == (a - 1) / 2 {
                out.push((PiCB, Params::M { m: b }));
            }
        }
        SpaceTag::AP(a) => {
            if a % 2 == 1 && a >= 3 {
                out.push((PiAB, Params::M { m: (a - 1) / 2 }));
            }
        }
        SpaceTag::HH(..) | SpaceTag::BP(_) => {}
    }
    out
}

/// The count stated by the classification theorem, or `None` when none of
/// its clauses names the space.
pub fn theorem_count(tag: SpaceTag) -> Option<usize> {
    match tag {
        SpaceTag::H(n, r) => {
            if (n, r) == (15, 7) {
                return Some(5);
            }
            if (n, r) == (15, 15) {
                return Some(3);
            }
            if n % 8 == 7 && r % 4 == 3 && (n - 7) / 8 == (r - 3) / 4 && (n - 7) / 8 != 1 {
                return Some(3);
            }
            if n % 4 == 3 && r % 4 == 3 {
                let (m, s) = ((n - 3) / 4, (r - 3) / 4);
                if s <= m && m != 3 && m != 2 * s + 1 {
                    return Some(2);
                }
            }
            if n % 2 == 0 || n % 4 == 1 {
                return Some(1);
            }
            None
        }
        SpaceTag::CH(a, b) => {
            if a % 4 == 3 && b % 2 == 1 && (a - 3) / 4 == (b - 1) / 2 {
                return Some(3);
            }
            if a % 4 == 1 && b % 2 == 0 && (a - 1) / 4 == b / 2 {
                return Some(2);
            }
            if a % 2 == 1 && b % 2 == 1 && (a - 1) / 2 != b {
                return Some(2);
            }
            if a % 2 == 0 {
                return Some(1);
            }
            if a % 2 == 1 && b % 2 == 0 && (a - 1) / 2 != b {
                return Some(1);
            }
            None
        }
        SpaceTag::HH(..) => None,
        SpaceTag::AP(m) => Some(if m % 2 == 1 { 2 } else { 1 }),
        SpaceTag::BP(_) => Some(1),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MetricDescriptor {
    /// `canonical` or the fibration id.
    pub source: String,
    pub params: Params,
    /// Variation parameter; 1 for the canonical metric.
    pub t: Q,
}

#[derive(Debug, Clone, Serialize)]
pub struct Enumeration {
    pub space: String,
    pub count: usize,
    pub metrics: Vec<MetricDescriptor>,
    /// Fibrations over this space that give no further metric.
    pub without_t0: Vec<String>,
    pub theorem_count: Option<usize>,
}

/// The canonical metric plus g_{t₀} for every catalog fibration over `tag`
/// whose t₀ exists.  One-dimensional fibres have λ̂ = 0 and are not built.
pub fn enumerate_einstein_metrics(tag: &str) -> Result<Enumeration> {
    let tag: SpaceTag = tag.parse()?;
    let candidates = fibrations_over(tag);
    let results: Vec<Result<Option<Q>>> = candidates
        .par_iter()
        .map(|&(id, p)| {
            if matches!(id, FibrationId::PiC | FibrationId::PiA) {
                return Ok(None);
            }
            t_zero(&build_fibration(id, p)?)
        })
        .collect();
    let mut metrics = vec![MetricDescriptor {
        source: "canonical".into(),
        params: Params::Fixed,
        t: Q::ONE,
    }];
    let mut without = Vec::new();
    for ((id, p), r) in candidates.into_iter().zip(results) {
        match r? {
            Some(t) => metrics.push(MetricDescriptor {
                source: id.to_string(),
                params: p,
                t,
            }),
            None => without.push(format!("{id}({p})")),
        }
    }
    Ok(Enumeration {
        space: tag.to_string(),
        count: metrics.len(),
        metrics,
        without_t0: without,
        theorem_count: theorem_count(tag),
    })
}
