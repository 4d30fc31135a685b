//! Cartan involutions, compact duals and dual metrics.
//!
//! For an algebra preserving a diagonal ±1 form G, θ(X) = −Xᵀ = G X G.  The
//! compact dual 𝔤* = 𝔤₊ + i𝔤₋ is stored abstractly: in a basis adapted to
//! the eigenspaces, the bracket of two 𝔤₋ elements changes sign and all
//! other brackets are unchanged.

use std::sync::Arc;

use serde::Serialize;

use crate::einstein::{ReductiveData, ReductiveSpace};
use crate::error::{Error, Result};
use crate::groups::{build, scalar_units, FamilySpec};
use crate::liealg::{LieAlgebra, MatrixLieAlgebra, Subspace};
use crate::matrix::{Mat, Signature};
use crate::rational::Q;
use crate::transitivity::{line_stabilizer, table_row, Params, RowSpec};

/// θ as a matrix acting on coefficient rows: θ(Σ cᵢeᵢ) has coefficients c·Θ.
pub fn cartan_involution(l: &MatrixLieAlgebra) -> Result<Mat> {
    let rows = l
        .basis()
        .iter()
        .map(|x| {
            l.coords(&x.transpose().neg())
                .ok_or_else(|| Error::InvolutionEscapes(l.name().to_string()))
        })
        .collect::<Result<Vec<_>>>()?;
    let theta = Mat::from_rows(&rows);
    if l.dim() == 0 {
        return Ok(Mat::zeros(0, 0));
    }
    debug_assert_eq!(theta.mul(&theta), Mat::identity(l.dim()));
    Ok(theta)
}

/// `θ[X, Y] = [θX, θY]` on all basis pairs.
pub fn is_automorphism(l: &LieAlgebra, theta: &Mat) -> bool {
    let d = l.dim();
    let img: Vec<Vec<Q>> = theta.row_vecs();
    for i in 0..d {
        for j in i + 1..d {
            let mut e = vec![Q::ZERO; d];
            for (k, c) in l.bracket_basis(i, j) {
                e[*k] = c.clone();
            }
            if theta.vec_mul(&e) != l.bracket(&img[i], &img[j]) {
                return false;
            }
        }
    }
    true
}

fn eigenspace(theta: &Mat, sign: i64) -> Subspace {
    let d = theta.rows();
    // Row vectors c with c·Θ = ±c, i.e. the left kernel of Θ ∓ I.
    let shifted = theta.sub(&Mat::identity(d).scale(&Q::int(sign)));
    Subspace::span(d, &shifted.transpose().nullspace())
}

fn split(s: &Subspace, theta: &Mat) -> Result<(Subspace, Subspace)> {
    let plus = eigenspace(theta, 1).intersect(s)?;
    let minus = eigenspace(theta, -1).intersect(s)?;
    if plus.dim() + minus.dim() != s.dim() {
        return Err(Error::NotThetaInvariant(format!("{}-dimensional subspace", s.dim())));
    }
    Ok((plus, minus))
}

/// Algebra in the basis `rows`, with brackets of two indices in `minus` negated.
fn flipped(l: &LieAlgebra, name: String, rows: Vec<Vec<Q>>, is_minus: &[bool]) -> Result<LieAlgebra> {
    let adapted = l.change_basis(name.clone(), &Mat::from_rows(&rows))?;
    let d = l.dim();
    let mut br = vec![vec![Q::ZERO; d]; d * d];
    for i in 0..d {
        for j in 0..d {
            let sign = if is_minus[i] && is_minus[j] { -1 } else { 1 };
            for (k, c) in adapted.bracket_basis(i, j) {
                br[i * d + j][*k] = c * &Q::int(sign);
            }
        }
    }
    LieAlgebra::from_brackets(name, d, br)
}

/// θ, its eigenspaces and the compact dual structure constants.
#[derive(Debug, Clone)]
pub struct DualityData {
    pub source: Arc<LieAlgebra>,
    pub theta: Mat,
    pub plus: Subspace,
    pub minus: Subspace,
    /// 𝔤* in the basis [𝔤₊, 𝔤₋].
    pub dual: Arc<LieAlgebra>,
}

impl DualityData {
    pub fn new(l: &MatrixLieAlgebra) -> Result<DualityData> {
        let theta = cartan_involution(l)?;
        let src = l.abstract_algebra().clone();
        let full = Subspace::full(l.dim());
        let (plus, minus) = split(&full, &theta)?;
        let mut rows = plus.vectors().to_vec();
        rows.extend(minus.vectors().iter().cloned());
        let is_minus: Vec<bool> = (0..l.dim()).map(|i| i >= plus.dim()).collect();
        let dual = flipped(&src, format!("{}*", l.name()), rows, &is_minus)?;
        Ok(DualityData {
            source: src,
            theta,
            plus,
            minus,
            dual: Arc::new(dual),
        })
    }

    /// The eigenspace brackets nest as [𝔤±, 𝔤±] ⊆ 𝔤₊, [𝔤₊, 𝔤₋] ⊆ 𝔤₋.
    pub fn grading_holds(&self) -> bool {
        let pairs = [(&self.plus, &self.plus, &self.plus), (&self.plus, &self.minus, &self.minus), (&self.minus, &self.minus, &self.plus)];
        pairs.iter().all(|(a, b, c)| {
            a.vectors()
                .iter()
                .all(|x| b.vectors().iter().all(|y| c.contains(&self.source.bracket(x, y))))
        })
    }
}

/// The compact dual of `l`.  Fails if its Killing form is not negative
/// semidefinite with radical equal to the center.
pub fn compact_dual(l: &MatrixLieAlgebra) -> Result<Arc<LieAlgebra>> {
    let d = DualityData::new(l)?;
    if !is_compact(&d.dual) {
        return Err(Error::NotCompact(l.name().to_string()));
    }
    Ok(d.dual)
}

/// Killing form negative semidefinite with radical = center (negative
/// definite when semisimple).
pub fn is_compact(l: &LieAlgebra) -> bool {
    let sig = l.killing_signature();
    sig.plus == 0 && sig.zero == l.center().dim()
}

/// Dimension of the centralizer of a regular element, confirmed abelian.
///
/// For a compact algebra every element is semisimple, so the centralizer of
/// a generic element is a maximal abelian subalgebra.  Two fixed
/// pseudo-random elements are tried and the smaller centralizer kept.
pub fn rank(l: &LieAlgebra) -> usize {
    let d = l.dim();
    let mut best: Option<Subspace> = None;
    for salt in [7i64, 13] {
        let x: Vec<Q> = (0..d as i64).map(|i| Q::int((i * i * salt + 3 * i + 1) % 97 + 1)).collect();
        let c = Subspace::span(d, &l.ad(&x).nullspace());
        if best.as_ref().map_or(true, |b| c.dim() < b.dim()) {
            best = Some(c);
        }
    }
    let c = best.expect("two candidates");
    let abelian = c.vectors().iter().all(|a| c.vectors().iter().all(|b| l.bracket(a, b).iter().all(Q::is_zero)));
    assert!(abelian, "centralizer of a regular element is abelian in a compact algebra");
    c.dim()
}

/// T-dual of a reductive space with θ-invariant 𝔥 and 𝔪.
#[derive(Debug, Clone)]
pub struct DualSpace {
    pub space: ReductiveSpace,
    /// +1 or −1: the dual metric is `sign` · ((·,·) on 𝔪₊ ⊕ −(·,·) on 𝔪₋).
    pub sign: i64,
    pub dim_plus: usize,
    pub dim_minus: usize,
}

/// Dual of `space` under θ, where θ is given in the coordinates of the
/// space's algebra.  The result is normalized to a positive definite metric.
pub fn dual_space(space: &ReductiveSpace, theta: &Mat) -> Result<DualSpace> {
    let data = space.data();
    let l = data.algebra();
    let (hp, hm) = split(data.h(), theta)?;
    let (mp, mm) = split(data.m(), theta)?;
    let mut rows = hp.vectors().to_vec();
    rows.extend(hm.vectors().iter().cloned());
    rows.extend(mp.vectors().iter().cloned());
    rows.extend(mm.vectors().iter().cloned());
    let d = l.dim();
    let (kh, km) = (data.h().dim(), data.m().dim());
    let is_minus: Vec<bool> = (0..d)
        .map(|i| (i >= hp.dim() && i < kh) || i >= kh + mp.dim())
        .collect();
    let dual = Arc::new(flipped(l, format!("{}*", l.name()), rows, &is_minus)?);

    // Metric in the adapted 𝔪 basis.
    let to_m = |v: &Vec<Q>| data.m().coords(v).expect("eigenvector lies in 𝔪");
    let t_rows: Vec<Vec<Q>> = mp.vectors().iter().chain(mm.vectors()).map(to_m).collect();
    let t = Mat::from_rows(&t_rows);
    let g = t.mul(space.metric()).mul(&t.transpose());
    let p = mp.dim();
    for i in 0..p {
        for j in p..km {
            if !g[(i, j)].is_zero() {
                return Err(Error::NotThetaInvariant("𝔪₊ and 𝔪₋ are not orthogonal".into()));
            }
        }
    }
    let twisted = Mat::from_fn(km, km, |i, j| if i >= p && j >= p { -&g[(i, j)] } else { g[(i, j)].clone() });
    let sig = twisted.signature();
    let sign = if sig.minus == 0 && sig.zero == 0 {
        1
    } else if sig.plus == 0 && sig.zero == 0 {
        -1
    } else {
        return Err(Error::NotCompact(format!("dual metric of {} has signature {sig}", space.name())));
    };
    let metric = twisted.scale(&Q::int(sign));
    let h = Subspace::from_basis(d, (0..kh).map(|i| unit(d, i)).collect())?;
    let m = Subspace::from_basis(d, (kh..d).map(|i| unit(d, i)).collect())?;
    let rd = ReductiveData::new(format!("{}*", space.name()), dual, h, m)?;
    Ok(DualSpace {
        space: ReductiveSpace::new(Arc::new(rd), metric)?,
        sign,
        dim_plus: p,
        dim_minus: km - p,
    })
}

fn unit(d: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::ZERO; d];
    v[i] = Q::ONE;
    v
}

/// The compact side of a row of the duality table.
#[derive(Debug, Clone, Serialize)]
pub struct CompactClaim {
    pub group: String,
    pub isotropy: String,
    pub space: String,
    pub dim_g: usize,
    pub dim_h: usize,
    pub dim_space: usize,
    pub rank: usize,
}

/// An instantiated duality-table row: the noncompact pair from one of the
/// classification tables and the claimed compact pair.
#[derive(Debug, Clone)]
pub struct Table3Row {
    pub row: u8,
    pub params: Params,
    pub source: RowSpec,
    pub claim: CompactClaim,
}

pub const TABLE3_LEN: u8 = 24;

/// (table, row) of the classification row each duality row dualizes.
fn source_row(row: u8) -> Result<(u8, u8)> {
    Ok(match row {
        1 => (1, 1),
        2 => (1, 8),
        3 => (1, 9),
        4 => (1, 7),
        5 => (1, 10),
        6 => (1, 16),
        7 => (1, 13),
        8 => (1, 18),
        9 => (1, 5),
        10 => (1, 6),
        11 => (1, 11),
        12 => (1, 17),
        13 => (1, 12),
        14 => (1, 14),
        15 => (1, 20),
        16 => (1, 19),
        17 => (1, 15),
        18..=24 => (2, row - 17),
        _ => return Err(Error::UnknownRow { table: 3, row }),
    })
}

pub fn table3_minimal_params(row: u8) -> Result<Params> {
    let (t, r) = source_row(row)?;
    crate::transitivity::minimal_params(t, r)
}

fn so(k: usize) -> usize {
    k * k.saturating_sub(1) / 2
}

fn su(k: usize) -> usize {
    (k * k).saturating_sub(1)
}

fn sp(k: usize) -> usize {
    k * (2 * k + 1)
}

pub fn table3_row(row: u8, params: Params) -> Result<Table3Row> {
    let (t, r) = source_row(row)?;
    let source = table_row(t, r, params)?;
    let c = |group: String, isotropy: String, space: String, dim_g, dim_h, dim_space, rank| CompactClaim {
        group,
        isotropy,
        space,
        dim_g,
        dim_h,
        dim_space,
        rank,
    };
    let fixed = |g: &str, h: &str, s: &str, dg, dh, ds, rk| c(g.into(), h.into(), s.into(), dg, dh, ds, rk);
    let claim = match (row, params) {
        (1, Params::NR { n, .. }) => c(format!("so({})", n + 1), format!("so({n})"), format!("S^{n}"), so(n + 1), so(n), n, (n + 1) / 2),
        (2 | 3, _) => fixed("g2", "su(3)", "S^6", 14, 8, 6, 2),
        (4, _) => fixed("spin(7)", "g2", "S^7", 21, 14, 7, 3),
        (9 | 10, _) => fixed("spin(9)", "spin(7)", "S^15", 36, 21, 15, 4),
        (5 | 7, Params::MS { m, .. } | Params::M { m }) => {
            c(format!("su({})", m + 1), format!("su({m})"), format!("S^{}", 2 * m + 1), su(m + 1), su(m), 2 * m + 1, m)
        }
        (6 | 8, Params::MS { m, .. } | Params::M { m }) => c(
            format!("u({})", m + 1),
            format!("u({m})"),
            format!("S^{}", 2 * m + 1),
            su(m + 1) + 1,
            su(m) + 1,
            2 * m + 1,
            m + 1,
        ),
        (11 | 14, Params::MS { m, .. } | Params::M { m }) => {
            c(format!("sp({})", m + 1), format!("sp({m})"), format!("S^{}", 4 * m + 3), sp(m + 1), sp(m), 4 * m + 3, m + 1)
        }
        (12 | 15 | 16, Params::MS { m, .. } | Params::M { m }) => c(
            format!("sp({})+u(1)", m + 1),
            format!("sp({m})+u(1)"),
            format!("S^{}", 4 * m + 3),
            sp(m + 1) + 1,
            sp(m) + 1,
            4 * m + 3,
            m + 2,
        ),
        (13 | 17, Params::MS { m, .. } | Params::M { m }) => c(
            format!("sp({})+sp(1)", m + 1),
            format!("sp({m})+sp(1)"),
            format!("S^{}", 4 * m + 3),
            sp(m + 1) + 3,
            sp(m) + 3,
            4 * m + 3,
            m + 2,
        ),
        (18 | 21, Params::MS { m, .. } | Params::M { m }) => {
            c(format!("su({})", m + 1), format!("s(u({m})+u(1))"), format!("CP^{m}"), su(m + 1), m * m, 2 * m, m)
        }
        (19 | 20 | 22, Params::MS { m, .. } | Params::M { m }) => c(
            format!("sp({})", m + 1),
            format!("sp({m})+u(1)"),
            format!("CP^{}", 2 * m + 1),
            sp(m + 1),
            sp(m) + 1,
            4 * m + 2,
            m + 1,
        ),
        (23 | 24, Params::MS { m, .. } | Params::M { m }) => c(
            format!("sp({})", m + 1),
            format!("sp({m})+sp(1)"),
            format!("HP^{m}"),
            sp(m + 1),
            sp(m) + 3,
            4 * m,
            m + 1,
        ),
        _ => return Err(Error::InvalidParams(format!("row {row} of table 3 does not take {params}"))),
    };
    Ok(Table3Row {
        row,
        params,
        source,
        claim,
    })
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Table3Dims {
    pub g: usize,
    pub h: usize,
    pub m: usize,
    pub g_plus: usize,
    pub rank: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Table3Report {
    pub table: u8,
    pub row: u8,
    pub params: Params,
    pub space: String,
    pub dual_space: String,
    pub dims: Table3Dims,
    pub pass: bool,
    pub failures: Vec<String>,
}

/// Builds the row's pair, dualizes it and checks the compact side: θ is an
/// automorphism, C* is Jacobi and compact, and the dimensions and rank
/// match the claim.
pub fn verify_table3(row: u8, params: Params) -> Result<Table3Report> {
    let t3 = table3_row(row, params)?;
    let spec: &FamilySpec = &t3.source.g;
    let g = build(spec)?;
    let x0 = g.base_point();
    let units: Vec<Mat> = t3
        .source
        .fibre
        .iter()
        .flat_map(|s| scalar_units(*s, g.field))
        .map(|u| g.right_unit(u).expect("fibre unit").clone())
        .collect();
    let h_alg = line_stabilizer(&g.algebra, &x0, &units)?;
    let h = g.algebra.subspace_of(h_alg.basis())?;
    let data = DualityData::new(&g.algebra)?;
    let mut failures = Vec::new();
    let mut check = |name: &str, ok: bool| {
        if !ok {
            failures.push(name.to_string());
        }
    };
    check("theta automorphism", is_automorphism(&data.source, &data.theta));
    check("grading", data.grading_holds());
    let (hp, hm) = match split(&h, &data.theta) {
        Ok(s) => s,
        Err(_) => {
            check("isotropy theta-invariant", false);
            (Subspace::zero(g.dim()), Subspace::zero(g.dim()))
        }
    };
    check("dual jacobi", data.dual.jacobi_holds());
    check("dual compact", is_compact(&data.dual));
    let rk = rank(&data.dual);
    check("dual dim", data.dual.dim() == t3.claim.dim_g);
    check("dual isotropy dim", hp.dim() + hm.dim() == t3.claim.dim_h);
    check("coset dim", g.dim() - h.dim() == t3.claim.dim_space);
    check("rank", rk == t3.claim.rank);
    Ok(Table3Report {
        table: 3,
        row,
        params,
        space: t3.source.space.clone(),
        dual_space: t3.claim.space.clone(),
        dims: Table3Dims {
            g: g.dim(),
            h: h.dim(),
            m: g.dim() - h.dim(),
            g_plus: data.plus.dim(),
            rank: rk,
        },
        pass: failures.is_empty(),
        failures,
    })
}

/// Signature of the Killing form of the compact dual.
pub fn dual_killing_signature(l: &MatrixLieAlgebra) -> Result<Signature> {
    Ok(DualityData::new(l)?.dual.killing_signature())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::build_str;

    #[test]
    fn sl2_split() {
        let g = build_str("so(2,1)").unwrap();
        let d = DualityData::new(&g.algebra).unwrap();
        assert_eq!((d.plus.dim(), d.minus.dim()), (1, 2));
        assert!(is_compact(&d.dual));
        assert_eq!(rank(&d.dual), 1);
    }

    #[test]
    fn compact_input_is_unchanged() {
        let g = build_str("so(3)").unwrap();
        let d = DualityData::new(&g.algebra).unwrap();
        assert_eq!(d.minus.dim(), 0);
        assert_eq!(d.dual.killing(), d.source.killing());
    }
}
