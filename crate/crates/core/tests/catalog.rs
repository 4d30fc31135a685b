use proptest::prelude::*;
use pseudo_einstein::clifford::{build_spin_rep, invariant_spinor_form, spin_algebra};
use pseudo_einstein::groups::{build, build_str, FamilySpec};
use pseudo_einstein::liealg::Subspace;
use pseudo_einstein::matrix::rank_of;
use pseudo_einstein::transitivity::{minimal_params, table_len, table_row};
use pseudo_einstein::{Mat, Q};

/// (spec, matrix size, dimension), dimensions from the textbook formulas.
const FAMILIES: &[(&str, usize, usize)] = &[
    ("so(3,2)", 5, 10),
    ("so(2,1)", 3, 3),
    ("su(2,1)", 6, 8),
    ("u(1,1)", 4, 4),
    ("sp(1,1)", 8, 10),
    ("sp(1,1)+u(1)", 8, 11),
    ("sp(1,1)+sp(1)", 8, 13),
    ("su_pi(2)", 4, 3),
    ("u_pi(2)", 4, 4),
    ("sp_pi(2)", 8, 10),
    ("sp_pi(2)+u_pi(1)", 8, 11),
    ("sp_pi(2)+sp_pi(1)", 8, 13),
    ("spin(9)", 16, 36),
    ("spin(8,1)", 16, 36),
    ("spin(5,4)", 16, 36),
    ("spin(4,3)", 8, 21),
    ("spin(7)", 8, 21),
    ("g2", 7, 14),
    ("g2*", 7, 14),
    ("~g2*", 7, 14),
];

#[test]
fn families_have_textbook_sizes() {
    for &(s, n, dim) in FAMILIES {
        let g = build_str(s).unwrap();
        assert_eq!((g.n(), g.dim()), (n, dim), "{s}");
        assert!(g.preserves_form(), "{s}");
        assert!(g.commutes_with_structure(), "{s}");
    }
}

fn catalog_specs() -> Vec<FamilySpec> {
    let mut out = Vec::new();
    for table in [1u8, 2] {
        for row in 1..=table_len(table) {
            let spec = table_row(table, row, minimal_params(table, row).unwrap()).unwrap();
            out.push(spec.g);
            out.push(spec.h);
        }
    }
    out.sort_by_key(|s| s.to_string());
    out.dedup_by_key(|s| s.to_string());
    out
}

#[test]
fn catalog_algebras_satisfy_jacobi_and_killing_invariance() {
    for spec in catalog_specs() {
        let g = build(&spec).unwrap();
        let l = g.algebra.abstract_algebra();
        assert!(l.jacobi_holds(), "{spec}");
        assert!(l.killing_is_invariant(), "{spec}");
        assert!(g.preserves_form(), "{spec}");
    }
}

#[test]
fn spin_representations_anticommute() {
    for (p, q) in [(3, 0), (2, 1), (4, 0), (3, 1), (2, 2), (7, 0), (4, 3), (3, 4), (9, 0), (8, 1), (1, 8), (5, 4), (4, 5)] {
        let rep = build_spin_rep(p, q).unwrap();
        assert!(rep.anticommutation_holds(), "({p},{q})");
        let n = p + q;
        assert_eq!(spin_algebra(&rep).unwrap().dim(), n * (n - 1) / 2);
    }
}

#[test]
fn catalog_spin_algebras_have_symmetric_spinor_forms() {
    for (p, q) in [(7, 0), (4, 3), (9, 0), (8, 1), (5, 4)] {
        let rep = build_spin_rep(p, q).unwrap();
        let b = invariant_spinor_form(&rep).unwrap();
        assert!(b.is_symmetric() && b.rank() == rep.size());
        for x in rep.bivectors() {
            assert!(x.transpose().mul(&b).add(&b.mul(&x)).is_zero(), "({p},{q})");
        }
    }
}

#[test]
fn spinor_sizes() {
    // Real spinor modules: 8 for spin(7) and spin(4,3), 16 for spin(9),
    // spin(8,1) and spin(5,4).
    for (p, q, size) in [(7, 0, 8), (4, 3, 8), (9, 0, 16), (8, 1, 16), (5, 4, 16)] {
        assert_eq!(build_spin_rep(p, q).unwrap().size(), size, "({p},{q})");
    }
}

fn vectors(d: usize, k: usize) -> impl Strategy<Value = Vec<Vec<Q>>> {
    prop::collection::vec(prop::collection::vec(-2i64..=2, d), 0..=k)
        .prop_map(|vs| vs.into_iter().map(|v| v.into_iter().map(Q::int).collect()).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn subspace_dimension_formula(u in vectors(6, 5), w in vectors(6, 5)) {
        let su = Subspace::span(6, &u);
        let sw = Subspace::span(6, &w);
        let sum = su.sum(&sw).unwrap();
        let cap = su.intersect(&sw).unwrap();
        prop_assert_eq!(sum.dim() + cap.dim(), su.dim() + sw.dim());
        prop_assert_eq!(su.dim(), rank_of(&u));
        prop_assert!(cap.vectors().iter().all(|v| su.contains(v) && sw.contains(v)));
    }

    #[test]
    fn orthogonal_complement_has_complementary_dim(u in vectors(5, 4), signs in prop::collection::vec(prop::bool::ANY, 5)) {
        let form = Mat::diag(&signs.iter().map(|&s| Q::int(if s { 1 } else { -1 })).collect::<Vec<_>>());
        let su = Subspace::span(5, &u);
        let nondegenerate = su.restrict_form(&form).rank() == su.dim();
        let perp = su.orthogonal_complement(&form);
        prop_assert_eq!(perp.is_ok(), nondegenerate);
        let Ok(perp) = perp else { return Ok(()) };
        prop_assert_eq!(su.dim() + perp.dim(), 5);
        for a in su.vectors() {
            for b in perp.vectors() {
                prop_assert!(form.bilinear(a, b).is_zero());
            }
        }
    }
}
