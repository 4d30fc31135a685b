//! Transitive actions on pseudo-hyperbolic spaces.
//!
//! A subalgebra 𝔤 ⊆ so(n−r, r+1) acts transitively on H^n_r exactly when
//! so(n−r, r+1) = so(n−r, r) + 𝔤, where so(n−r, r) is the stabilizer of the
//! base point.  Everything here is exact; the stabilizer is computed as a
//! nullspace and the sum as a rank of flattened matrices.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::{self, block_in, build, scalar_units, EmbeddedAlgebra, FamilySpec, Scalar};
use crate::liealg::{Fingerprint, MatrixLieAlgebra};
use crate::matrix::{rank_of, Mat};
use crate::rational::Q;

/// Largest ambient size handled by the table sweeps.
pub const MAX_AMBIENT: usize = 20;

/// A subalgebra of so(n−r, r+1) with a base point on H^n_r.
#[derive(Debug, Clone)]
pub struct ActionInstance {
    pub n: usize,
    pub r: usize,
    pub algebra: MatrixLieAlgebra,
    pub base_point: Vec<Q>,
}

impl ActionInstance {
    /// Validates that the algebra preserves the standard form of index r+1
    /// and that the base point has norm −1.
    pub fn new(n: usize, r: usize, algebra: MatrixLieAlgebra, base_point: Vec<Q>) -> Result<ActionInstance> {
        if r > n || algebra.n() != n + 1 || base_point.len() != n + 1 {
            return Err(Error::InvalidParams(format!(
                "{} on H^{n}_{r} needs size {} matrices and base point",
                algebra.name(),
                n + 1
            )));
        }
        let g = standard_form(n, r);
        if algebra.basis().iter().any(|x| !x.transpose().mul(&g).add(&g.mul(x)).is_zero()) {
            return Err(Error::CheckFailed(format!("{} is not in so({},{})", algebra.name(), n - r, r + 1)));
        }
        if g.bilinear(&base_point, &base_point) != Q::int(-1) {
            return Err(Error::InvalidParams("base point must have norm −1".into()));
        }
        Ok(ActionInstance {
            n,
            r,
            algebra,
            base_point,
        })
    }

    /// The built algebra acting at the first standard basis vector.
    pub fn from_embedded(e: &EmbeddedAlgebra) -> Result<ActionInstance> {
        let (n, r) = e
            .space()
            .ok_or_else(|| Error::InvalidParams(format!("{} preserves a positive definite form", e.spec)))?;
        ActionInstance::new(n, r, e.algebra.clone(), e.base_point())
    }

    pub fn ambient_dim(&self) -> usize {
        (self.n + 1) * self.n / 2
    }
}

/// diag(−1 × (r+1), +1 × (n−r)).
pub fn standard_form(n: usize, r: usize) -> Mat {
    Mat::diag(&(0..=n).map(|i| if i <= r { Q::int(-1) } else { Q::ONE }).collect::<Vec<_>>())
}

/// Basis of so(n−r, r+1) in the standard coordinates.
pub fn ambient_basis(n: usize, r: usize) -> Vec<Mat> {
    so_basis_on(n, r, 0)
}

/// Basis of the elements of so(n−r, r+1) supported on coordinates ≥ `from`.
fn so_basis_on(n: usize, r: usize, from: usize) -> Vec<Mat> {
    let sign = |i: usize| if i <= r { -1 } else { 1 };
    let mut out = Vec::new();
    for i in from..=n {
        for j in i + 1..=n {
            let mut x = Mat::zeros(n + 1, n + 1);
            x[(i, j)] = Q::ONE;
            x[(j, i)] = Q::int(-sign(i) * sign(j));
            out.push(x);
        }
    }
    out
}

/// The stabilizer so(n−r, r) of e₀ in the ambient algebra.
pub fn ambient_isotropy(n: usize, r: usize) -> Vec<Mat> {
    so_basis_on(n, r, 1)
}

/// Elements of 𝔤 annihilating the base point.
pub fn isotropy_subalgebra(a: &ActionInstance) -> Result<MatrixLieAlgebra> {
    let images: Vec<Vec<Q>> = a.algebra.basis().iter().map(|x| x.mul_vec(&a.base_point)).collect();
    let kernel = if images.is_empty() {
        Vec::new()
    } else {
        // Columns are the images; the kernel gives the coefficient vectors.
        Mat::from_cols(&images, a.n + 1).nullspace()
    };
    let mats = kernel.iter().map(|c| a.algebra.combine(c)).collect();
    MatrixLieAlgebra::new(format!("iso({})", a.algebra.name()), a.n + 1, mats)
}

fn flat_rank(groups: &[&[Mat]]) -> usize {
    let vecs: Vec<Vec<Q>> = groups.iter().flat_map(|g| g.iter().map(Mat::flatten)).collect();
    rank_of(&vecs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Dims {
    pub ambient: usize,
    pub g: usize,
    pub h: usize,
    pub sum: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransitivityReport {
    pub transitive: bool,
    pub dims: Dims,
}

/// The sum criterion so(n−r, r+1) = so(n−r, r) + 𝔤.
pub fn check_transitive(a: &ActionInstance) -> Result<TransitivityReport> {
    let iso = isotropy_subalgebra(a)?;
    let amb_iso = ambient_isotropy(a.n, a.r);
    let sum = flat_rank(&[&amb_iso, a.algebra.basis()]);
    let ambient = a.ambient_dim();
    Ok(TransitivityReport {
        transitive: sum == ambient,
        dims: Dims {
            ambient,
            g: a.algebra.dim(),
            h: iso.dim(),
            sum,
        },
    })
}

/// Row parameters.  Rows with fixed groups take none.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Params {
    Fixed,
    NR { n: usize, r: usize },
    MS { m: usize, s: usize },
    M { m: usize },
}

impl Params {
    pub fn to_map(self) -> BTreeMap<&'static str, usize> {
        match self {
            Params::Fixed => BTreeMap::new(),
            Params::NR { n, r } => BTreeMap::from([("n", n), ("r", r)]),
            Params::MS { m, s } => BTreeMap::from([("m", m), ("s", s)]),
            Params::M { m } => BTreeMap::from([("m", m)]),
        }
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Params::Fixed => f.write_str("-"),
            Params::NR { n, r } => write!(f, "n={n},r={r}"),
            Params::MS { m, s } => write!(f, "m={m},s={s}"),
            Params::M { m } => write!(f, "m={m}"),
        }
    }
}

impl Serialize for Params {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_map().serialize(s)
    }
}

/// A row of one of the two classification tables, instantiated.
#[derive(Debug, Clone)]
pub struct RowSpec {
    pub table: u8,
    pub row: u8,
    pub params: Params,
    pub g: FamilySpec,
    /// The isotropy as an independently built algebra.
    pub h: FamilySpec,
    /// First factor of the isotropy as a block on module coordinates 1.., if
    /// the isotropy contains such a block.
    pub h_block: Option<FamilySpec>,
    /// Space label, e.g. `H^7_3` or `CH^1_0`.
    pub space: String,
    /// (n, r) of the pseudo-hyperbolic space the action is computed on.
    pub model: (usize, usize),
    /// Fibre group of the quotient for the second table.
    pub fibre: Vec<Scalar>,
    /// Facts recorded but not computed (discrete centers, parity cases).
    pub metadata: Option<String>,
}

fn spec(s: &str) -> FamilySpec {
    s.parse().expect("catalog spec parses")
}

fn ms(m: usize, s: usize) -> Result<()> {
    if m == 0 || s > m {
        return Err(Error::InvalidParams(format!("need 0 ≤ s ≤ m, m ≥ 1 (got m={m}, s={s})")));
    }
    Ok(())
}

/// Smallest meaningful parameters for a row.
pub fn minimal_params(table: u8, row: u8) -> Result<Params> {
    Ok(match (table, row) {
        (1, 1) => Params::NR { n: 2, r: 0 },
        (1, 2..=9) => Params::Fixed,
        (1, 10..=12 | 16 | 17) | (2, 1 | 2 | 6) => Params::MS { m: 1, s: 0 },
        (1, 13..=15 | 18..=20) | (2, 3..=5 | 7) => Params::M { m: 1 },
        _ => return Err(Error::UnknownRow { table, row }),
    })
}

/// Instantiates row `row` of the first table.
pub fn table1_row(row: u8, params: Params) -> Result<RowSpec> {
    let mk = |g: FamilySpec, h: FamilySpec, block: Option<FamilySpec>, model: (usize, usize)| RowSpec {
        table: 1,
        row,
        params,
        g,
        h,
        h_block: block,
        space: format!("H^{}_{}", model.0, model.1),
        model,
        fibre: Vec::new(),
        metadata: None,
    };
    let fixed = |g: &str, h: &str, model| Ok(mk(spec(g), spec(h), None, model));
    match (row, params) {
        (1, Params::NR { n, r }) if r <= n && n >= 1 => {
            let h = FamilySpec::new(groups::Family::So, n - r, r);
            Ok(mk(FamilySpec::new(groups::Family::So, n - r, r + 1), h.clone(), Some(h), (n, r)))
        }
        (2, Params::Fixed) => fixed("spin(9)", "spin(7)", (15, 15)),
        (3, Params::Fixed) => fixed("spin(7)", "g2", (7, 7)),
        (4, Params::Fixed) => fixed("g2", "su(3)", (6, 6)),
        (5, Params::Fixed) => fixed("spin(8,1)", "spin(7)", (15, 7)),
        (6, Params::Fixed) => fixed("spin(5,4)", "spin(4,3)", (15, 7)),
        (7, Params::Fixed) => fixed("spin(4,3)", "g2*", (7, 3)),
        (8, Params::Fixed) => fixed("g2*", "su(2,1)", (6, 2)),
        (9, Params::Fixed) => fixed("~g2*", "sl(3)", (6, 3)),
        (10 | 11 | 12 | 16 | 17, Params::MS { m, s }) => {
            ms(m, s)?;
            let (fam, scalar) = match row {
                10 => ("su", ""),
                11 => ("sp", ""),
                12 => ("sp", "+sp(1)"),
                16 => ("su", "+u(1)"),
                _ => ("sp", "+u(1)"),
            };
            let g = spec(&format!("{fam}({},{}){scalar}", m - s, s + 1));
            let block = spec(&format!("{fam}({},{})", m - s, s));
            let h = spec(&format!("{fam}({},{}){scalar}", m - s, s));
            let model = if fam == "su" { (2 * m + 1, 2 * s + 1) } else { (4 * m + 3, 4 * s + 3) };
            Ok(mk(g, h, Some(block), model))
        }
        (13 | 14 | 15 | 18 | 19 | 20, Params::M { m }) if m >= 1 => {
            let (fam, scalar) = match row {
                13 => ("su_pi", ""),
                14 => ("sp_pi", ""),
                15 => ("sp_pi", "+sp_pi(1)"),
                18 => ("su_pi", "+u_pi(1)"),
                19 => ("sp_pi", "+u_pi(1)"),
                _ => ("sp_pi", "+u(1)"),
            };
            let g = spec(&format!("{fam}({}){scalar}", m + 1));
            let block = spec(&format!("{fam}({m})"));
            let h = spec(&format!("{fam}({m}){scalar}"));
            let model = if fam == "su_pi" { (2 * m + 1, m) } else { (4 * m + 3, 2 * m + 1) };
            Ok(mk(g, h, Some(block), model))
        }
        (1..=20, _) => Err(Error::InvalidParams(format!("row {row} of table 1 does not take {params}"))),
        _ => Err(Error::UnknownRow { table: 1, row }),
    }
}

/// Instantiates row `row` of the second table.  The quotient spaces are
/// modelled on the pseudo-hyperbolic space they are a quotient of; the
/// isotropy is the stabilizer of the fibre through the base point.
pub fn table2_row(row: u8, params: Params) -> Result<RowSpec> {
    let mk = |g: String, h: String, block: String, space: String, model, fibre: Scalar, meta: Option<String>| RowSpec {
        table: 2,
        row,
        params,
        g: spec(&g),
        h: spec(&h),
        h_block: Some(spec(&block)),
        space,
        model,
        fibre: vec![fibre],
        metadata: meta,
    };
    match (row, params) {
        (1 | 2 | 6, Params::MS { m, s }) => {
            ms(m, s)?;
            let (p, q) = (m - s, s);
            Ok(match row {
                1 => mk(
                    format!("su({p},{})", q + 1),
                    format!("u({p},{q})"),
                    format!("su({p},{q})"),
                    format!("CH^{m}_{s}"),
                    (2 * m + 1, 2 * s + 1),
                    Scalar::U1,
                    Some(format!("effective quotient by Z_{}", m + 1)),
                ),
                2 => mk(
                    format!("sp({p},{})", q + 1),
                    format!("sp({p},{q})+u(1)"),
                    format!("sp({p},{q})"),
                    format!("CH^{}_{}", 2 * m + 1, 2 * s + 1),
                    (4 * m + 3, 4 * s + 3),
                    Scalar::U1,
                    Some("effective quotient by Z_2".into()),
                ),
                _ => mk(
                    format!("sp({p},{})", q + 1),
                    format!("sp({p},{q})+sp(1)"),
                    format!("sp({p},{q})"),
                    format!("HH^{m}_{s}"),
                    (4 * m + 3, 4 * s + 3),
                    Scalar::Sp1,
                    Some("effective quotient by Z_2".into()),
                ),
            })
        }
        (3 | 4 | 5 | 7, Params::M { m }) if m >= 1 => Ok(match row {
            3 => mk(
                format!("sp_pi({})", m + 1),
                format!("sp_pi({m})+u(1)"),
                format!("sp_pi({m})"),
                format!("CH^{}_{m}", 2 * m + 1),
                (4 * m + 3, 2 * m + 1),
                Scalar::U1,
                Some("effective quotient by Z_2".into()),
            ),
            4 => mk(
                format!("su_pi({})", m + 1),
                format!("u_pi({m})"),
                format!("su_pi({m})"),
                format!("AP^{m}"),
                (2 * m + 1, m),
                Scalar::UPi1,
                Some(if m % 2 == 1 {
                    "m odd: effective quotient by Z_2".into()
                } else {
                    "m even: acts effectively".into()
                }),
            ),
            5 => mk(
                format!("sp_pi({})", m + 1),
                format!("sp_pi({m})+u_pi(1)"),
                format!("sp_pi({m})"),
                format!("AP^{}", 2 * m + 1),
                (4 * m + 3, 2 * m + 1),
                Scalar::UPi1,
                Some("effective quotient by Z_2".into()),
            ),
            _ => mk(
                format!("sp_pi({})", m + 1),
                format!("sp_pi({m})+sp_pi(1)"),
                format!("sp_pi({m})"),
                format!("BP^{m}"),
                (4 * m + 3, 2 * m + 1),
                Scalar::SpPi1,
                Some("effective quotient by Z_2".into()),
            ),
        }),
        (1..=7, _) => Err(Error::InvalidParams(format!("row {row} of table 2 does not take {params}"))),
        _ => Err(Error::UnknownRow { table: 2, row }),
    }
}

pub fn table_row(table: u8, row: u8, params: Params) -> Result<RowSpec> {
    match table {
        1 => table1_row(row, params),
        2 => table2_row(row, params),
        _ => Err(Error::UnknownRow { table, row }),
    }
}

/// Number of rows in each classification table.
pub fn table_len(table: u8) -> u8 {
    match table {
        1 => 20,
        2 => 7,
        _ => 0,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RowReport {
    pub table: u8,
    pub row: u8,
    pub params: Params,
    pub space: String,
    pub dims: Dims,
    pub pass: bool,
    /// Names of the checks that failed.
    pub failures: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub metadata: Option<String>,
}

/// Stabilizer in 𝔤 of the fibre through x₀: {X : X x₀ ∈ span R_u x₀}.
pub fn line_stabilizer(g: &MatrixLieAlgebra, x0: &[Q], units: &[Mat]) -> Result<MatrixLieAlgebra> {
    let n = x0.len();
    let mut cols: Vec<Vec<Q>> = g.basis().iter().map(|x| x.mul_vec(x0)).collect();
    cols.extend(units.iter().map(|u| u.mul_vec(x0)));
    let kernel = Mat::from_cols(&cols, n).nullspace();
    let coeffs: Vec<Vec<Q>> = kernel.iter().map(|v| v[..g.dim()].to_vec()).collect();
    let rows = Mat::from_rows(&coeffs).row_space().row_vecs();
    let mats = if coeffs.is_empty() { Vec::new() } else { rows.iter().map(|c| g.combine(c)).collect() };
    MatrixLieAlgebra::new(format!("stab({})", g.name()), n, mats)
}

fn fingerprint_of(spec: &FamilySpec) -> Result<Fingerprint> {
    Ok(build(spec)?.algebra.fingerprint())
}

/// Builds 𝔤 and 𝔥 for a row and checks: the model space, isotropy
/// dimension and invariants, block containment, the sum criterion and the
/// dimension of the quotient.
pub fn verify_row(spec: &RowSpec) -> Result<RowReport> {
    let (n, r) = spec.model;
    if n + 1 > MAX_AMBIENT {
        return Err(Error::InvalidParams(format!("ambient size {} exceeds {MAX_AMBIENT}", n + 1)));
    }
    let g = build(&spec.g)?;
    let mut failures = Vec::new();
    let mut check = |name: &str, ok: bool| {
        if !ok {
            failures.push(name.to_string());
        }
    };
    check("space", g.space() == Some((n, r)));
    let a = ActionInstance::from_embedded(&g)?;
    let rep = check_transitive(&a)?;
    let h_expected = fingerprint_of(&spec.h)?;
    let units: Vec<Mat> = spec
        .fibre
        .iter()
        .flat_map(|s| scalar_units(*s, g.field))
        .map(|u| g.right_unit(u).expect("fibre unit exists").clone())
        .collect();
    let (iso, sum, quotient_dim) = if spec.fibre.is_empty() {
        (isotropy_subalgebra(&a)?, rep.dims.sum, n)
    } else {
        let stab = line_stabilizer(&a.algebra, &a.base_point, &units)?;
        let sum = flat_rank(&[&ambient_isotropy(n, r), a.algebra.basis(), &units]);
        (stab, sum, n - units.len())
    };
    check("isotropy dim", iso.dim() == h_expected.dim);
    check("isotropy invariants", iso.fingerprint() == h_expected);
    if let Some(block) = &spec.h_block {
        let b = block_in(&g, block, 1)?;
        check("block containment", b.basis().iter().all(|x| iso.contains(x)));
    }
    check("sum criterion", sum == rep.dims.ambient);
    check("quotient dim", g.dim() - iso.dim() == quotient_dim);
    Ok(RowReport {
        table: spec.table,
        row: spec.row,
        params: spec.params,
        space: spec.space.clone(),
        dims: Dims {
            ambient: rep.dims.ambient,
            g: g.dim(),
            h: iso.dim(),
            sum,
        },
        pass: failures.is_empty(),
        failures,
        metadata: spec.metadata.clone(),
    })
}

pub fn verify_table_row(table: u8, row: u8, params: Params) -> Result<RowReport> {
    verify_row(&table_row(table, row, params)?)
}

/// All parameter choices of a row with ambient size at most `max_ambient`.
pub fn parameter_sweep(table: u8, row: u8, max_ambient: usize) -> Result<Vec<Params>> {
    let fits = |p: Params| table_row(table, row, p).map(|s| s.model.0 < max_ambient).unwrap_or(false);
    let out: Vec<Params> = match minimal_params(table, row)? {
        Params::Fixed => vec![Params::Fixed],
        Params::NR { .. } => (1..max_ambient)
            .flat_map(|n| (0..=n).map(move |r| Params::NR { n, r }))
            .filter(|&p| fits(p))
            .collect(),
        Params::MS { .. } => (1..max_ambient)
            .flat_map(|m| (0..=m).map(move |s| Params::MS { m, s }))
            .filter(|&p| fits(p))
            .collect(),
        Params::M { .. } => (1..max_ambient).map(|m| Params::M { m }).filter(|&p| fits(p)).collect(),
    };
    Ok(out.into_iter().filter(|&p| fits(p)).collect())
}

/// A subalgebra that should not act transitively.
pub struct NegativeControl {
    pub name: &'static str,
    pub instance: ActionInstance,
}

/// Non-table subalgebras: compact or reducible blocks in noncompact
/// ambients, and derivation algebras fixing the unit.
pub fn negative_controls() -> Result<Vec<NegativeControl>> {
    let block = |name: &'static str, inner: &str, n: usize, r: usize, offset: usize| -> Result<NegativeControl> {
        let e = build(&spec(inner))?;
        let mats = groups::pad_block(e.algebra.basis(), n + 1, offset);
        let alg = MatrixLieAlgebra::new(name, n + 1, mats)?;
        let mut x0 = vec![Q::ZERO; n + 1];
        x0[0] = Q::ONE;
        Ok(NegativeControl {
            name,
            instance: ActionInstance::new(n, r, alg, x0)?,
        })
    };
    let der_on_unit = |name: &'static str, split: bool, r: usize| -> Result<NegativeControl> {
        // Derivations in the basis (1, e₁, …, e₇) preserve −N; reorder so the
        // negative squares come first.
        let der = groups::build_g2(split)?;
        let kind = if split {
            crate::algebra::AlgebraTag::SplitOctonion
        } else {
            crate::algebra::AlgebraTag::Octonion
        }
        .kind();
        let mut order: Vec<usize> = (0..8).filter(|&i| kind.basis_norm(i) > 0).collect();
        order.extend((0..8).filter(|&i| kind.basis_norm(i) < 0));
        let mats = der.basis().iter().map(|d| d.reindex(&order)).collect();
        let alg = MatrixLieAlgebra::new(name, 8, mats)?;
        let mut x0 = vec![Q::ZERO; 8];
        x0[0] = Q::ONE;
        Ok(NegativeControl {
            name,
            instance: ActionInstance::new(7, r, alg, x0)?,
        })
    };
    Ok(vec![
        block("so(4) on the spacelike block of R^5_1", "so(4)", 4, 0, 1)?,
        block("so(3,1) on the first four coordinates of R^6_1", "so(3,1)", 5, 0, 0)?,
        block("u(1,1) on the first four coordinates of R^6_2", "u(1,1)", 5, 1, 0)?,
        block("so(2,1)+so(2) block diagonal in R^5_1", "so(2,1)", 4, 0, 0).and_then(|c| {
            let extra = groups::pad_block(build(&spec("so(2)"))?.algebra.basis(), 5, 3);
            let mut mats = c.instance.algebra.basis().to_vec();
            mats.extend(extra);
            let alg = MatrixLieAlgebra::new(c.name, 5, mats)?;
            Ok(NegativeControl {
                name: c.name,
                instance: ActionInstance::new(4, 0, alg, c.instance.base_point)?,
            })
        })?,
        der_on_unit("der(O) on O fixes the unit", false, 7)?,
        der_on_unit("der(O') on O' fixes the unit", true, 3)?,
    ])
}

/// Witt basis of ℝ^{n+1}_{r+1} (n ≥ 2r+1): columns w₁ … w_{n+1}.
#[derive(Debug, Clone)]
pub struct WittBasis {
    pub n: usize,
    pub r: usize,
    /// Columns are the basis vectors.
    pub vectors: Mat,
}

impl WittBasis {
    /// w_i = ½(e_{i+r+1} − e_i), w_{i+r+1} = ½(e_i + e_{i+r+1}) for
    /// i ≤ r+1, w_k = e_k beyond.  With e₁ … e_{r+1} timelike this makes
    /// Q(z) = z₁z_{r+2} + ⋯ + z_{r+1}z_{2r+2} + (definite part on U).
    pub fn new(n: usize, r: usize) -> Result<WittBasis> {
        WittBasis::with_sign(n, r, -1)
    }

    /// The variant w_i = ½(e_i − e_{i+r+1}), for which the isotropic block
    /// carries the opposite sign.
    pub fn literal(n: usize, r: usize) -> Result<WittBasis> {
        WittBasis::with_sign(n, r, 1)
    }

    fn with_sign(n: usize, r: usize, sign: i64) -> Result<WittBasis> {
        if 2 * r + 1 > n {
            return Err(Error::InvalidParams(format!("Witt basis needs 2r+1 ≤ n (n={n}, r={r})")));
        }
        let k = r + 1;
        let half = Q::new(1, 2);
        let mut w = Mat::zeros(n + 1, n + 1);
        for i in 0..k {
            w[(i, i)] = &half * &Q::int(sign);
            w[(i + k, i)] = -&half * &Q::int(sign);
            w[(i, i + k)] = half.clone();
            w[(i + k, i + k)] = half.clone();
        }
        for j in 2 * k..=n {
            w[(j, j)] = Q::ONE;
        }
        Ok(WittBasis { n, r, vectors: w })
    }

    pub fn w(&self, i: usize) -> Vec<Q> {
        self.vectors.col(i)
    }

    /// Gram matrix of the standard form in the w-basis.
    pub fn gram(&self) -> Mat {
        let g = standard_form(self.n, self.r);
        self.vectors.transpose().mul(&g).mul(&self.vectors)
    }

    /// The polarization of z₁z_{r+2} + ⋯ + z_{r+1}z_{2r+2} + Σ_U z_k².
    pub fn expected_gram(&self) -> Mat {
        let k = self.r + 1;
        let mut e = Mat::zeros(self.n + 1, self.n + 1);
        for i in 0..k {
            e[(i, i + k)] = Q::new(1, 2);
            e[(i + k, i)] = Q::new(1, 2);
        }
        for j in 2 * k..=self.n {
            e[(j, j)] = Q::ONE;
        }
        e
    }

    /// Q(z₁, …, z_{r+1}, −z₁/R, …, −z_{r+1}/R) with R = Σ zᵢ², evaluated in
    /// w-coordinates through the actual basis.
    pub fn point_value(&self, z: &[Q]) -> Result<Q> {
        let k = self.r + 1;
        if z.len() != k {
            return Err(Error::LengthMismatch(z.len(), k));
        }
        let big_r: Q = z.iter().map(|x| x * x).sum();
        if big_r.is_zero() {
            return Err(Error::InvalidParams("z must be nonzero".into()));
        }
        let mut coords = vec![Q::ZERO; self.n + 1];
        for i in 0..k {
            coords[i] = z[i].clone();
            coords[i + k] = -(&z[i] / &big_r);
        }
        Ok(self.gram().bilinear(&coords, &coords))
    }

    /// Rank of W₁ ⊕ W₂ ⊕ U.
    pub fn rank(&self) -> usize {
        self.vectors.rank()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ambient_isotropy_has_expected_dim() {
        let a = ActionInstance::from_embedded(&build(&spec("so(3,2)")).unwrap()).unwrap();
        let iso = isotropy_subalgebra(&a).unwrap();
        assert_eq!(iso.dim(), 6);
        assert_eq!(ambient_isotropy(4, 1).len(), 6);
    }

    #[test]
    fn compact_block_is_not_transitive() {
        let controls = negative_controls().unwrap();
        let rep = check_transitive(&controls[0].instance).unwrap();
        assert_eq!((rep.dims.g, rep.dims.ambient), (6, 10));
        assert_eq!(rep.dims.sum, 6);
        assert!(!rep.transitive);
    }

    #[test]
    fn witt_small() {
        let w = WittBasis::new(3, 1).unwrap();
        assert_eq!(w.gram(), w.expected_gram());
        assert_eq!(standard_form(3, 1).bilinear(&w.w(0), &w.w(0)), Q::ZERO);
        assert!(WittBasis::new(2, 1).is_err());
    }
}
