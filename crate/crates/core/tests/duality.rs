use proptest::prelude::*;
use pseudo_einstein::duality::*;
use pseudo_einstein::einstein::*;
use pseudo_einstein::groups::{build, build_str};
use pseudo_einstein::transitivity::{ActionInstance, Params};
use pseudo_einstein::Q;

fn so(k: usize) -> usize {
    k * k.saturating_sub(1) / 2
}

#[test]
fn so_pq_eigenspaces() {
    for p in 1..=4 {
        for q in 1..=3 {
            if p + q < 3 {
                continue;
            }
            let g = build_str(&format!("so({p},{q})")).unwrap();
            let d = DualityData::new(&g.algebra).unwrap();
            assert_eq!(d.plus.dim(), so(p) + so(q), "so({p},{q})");
            assert_eq!(d.minus.dim(), p * q, "so({p},{q})");
            assert!(d.grading_holds());
            assert!(is_automorphism(&d.source, &d.theta));
            assert_eq!(d.theta.mul(&d.theta), pseudo_einstein::Mat::identity(g.dim()));
        }
    }
}

#[test]
fn unitary_and_symplectic_eigenspaces() {
    for (s, plus, minus) in [("su(2,1)", 4, 4), ("sp(1,1)", 6, 4), ("so(2,1)", 1, 2)] {
        let d = DualityData::new(&build_str(s).unwrap().algebra).unwrap();
        assert_eq!((d.plus.dim(), d.minus.dim()), (plus, minus), "{s}");
    }
}

#[test]
fn compact_duals_of_lorentz_algebras() {
    for (s, dim, rank_) in [("so(2,1)", 3, 1), ("so(4,1)", 10, 2), ("su(2,1)", 8, 2), ("sp(1,1)", 10, 2)] {
        let g = build_str(s).unwrap();
        let c = compact_dual(&g.algebra).unwrap();
        assert!(c.jacobi_holds(), "{s}");
        assert_eq!(c.dim(), dim);
        let sig = c.killing_signature();
        assert_eq!((sig.plus, sig.minus), (0, dim), "{s}");
        assert!(is_compact(&c));
        assert_eq!(rank(&c), rank_, "{s}");
        // Before dualizing the Killing form is indefinite.
        assert!(!is_compact(&g.algebra.abstract_algebra()));
    }
}

#[test]
fn table3_all_rows() {
    for row in 1..=TABLE3_LEN {
        let p = table3_minimal_params(row).unwrap();
        let r = verify_table3(row, p).unwrap();
        assert!(r.pass, "row {row}: {:?}", r.failures);
        assert_eq!(r.dims.g, r.dims.h + r.dims.m);
    }
    assert!(verify_table3(0, Params::Fixed).is_err());
    assert!(verify_table3(TABLE3_LEN + 1, Params::Fixed).is_err());
}

#[test]
fn table3_row1_other_params() {
    for (n, r) in [(3, 0), (4, 1), (5, 2)] {
        let rep = verify_table3(1, Params::NR { n, r }).unwrap();
        assert!(rep.pass, "n={n},r={r}: {:?}", rep.failures);
        assert_eq!(rep.dims.m, n);
    }
}

fn canonical(spec: &str) -> (ReductiveSpace, pseudo_einstein::Mat) {
    let g = build_str(spec).unwrap();
    let theta = cartan_involution(&g.algebra).unwrap();
    let a = ActionInstance::from_embedded(&g).unwrap();
    (canonical_space(&a).unwrap(), theta)
}

#[test]
fn dual_of_hyperbolic_space_is_a_sphere() {
    for spec in ["so(4,1)", "sp(1,1)", "su(2,1)", "so(3,2)"] {
        let (s, theta) = canonical(spec);
        let d = dual_space(&s, &theta).unwrap();
        let sig = d.space.signature();
        assert_eq!((sig.plus, sig.minus, sig.zero), (s.dim(), 0, 0), "{spec}");
        assert_eq!(d.dim_plus + d.dim_minus, s.dim());
        let n = s.dim() as i64;
        assert_eq!(einstein_constant(&d.space), Some(Q::int(n - 1)), "{spec}");
        assert!(d.space.data().algebra().jacobi_holds());
    }
}

#[test]
fn riemannian_hyperbolic_space_needs_the_sign_flip() {
    let (s, theta) = canonical("so(4,1)");
    let d = dual_space(&s, &theta).unwrap();
    assert_eq!((d.dim_plus, d.dim_minus, d.sign), (0, 4, -1));
}

#[test]
fn einstein_metrics_transfer_to_the_dual() {
    let cases = [
        (FibrationId::PiH, Params::MS { m: 1, s: 0 }),
        (FibrationId::PiB, Params::M { m: 1 }),
        (FibrationId::PiCH, Params::MS { m: 1, s: 1 }),
        (FibrationId::PiCB, Params::M { m: 1 }),
        (FibrationId::PiAB, Params::M { m: 1 }),
        (FibrationId::PiO1, Params::Fixed),
        (FibrationId::PiO2, Params::Fixed),
        (FibrationId::PiOPrime, Params::Fixed),
    ];
    for (id, p) in cases {
        let f = build_fibration(id, p).unwrap();
        let theta = cartan_involution(&build(&f.group).unwrap().algebra).unwrap();
        let t0 = t_zero(&f).unwrap().unwrap();
        let g = f.variation(&t0).unwrap();
        assert!(einstein_residual(&g).is_zero());
        let d = dual_space(&g, &theta).unwrap();
        assert!(einstein_residual(&d.space).is_zero(), "{id}");
        assert!(einstein_constant(&d.space).unwrap().is_positive(), "{id}");
        // A non-Einstein member of the family stays non-Einstein.
        let d2 = dual_space(&f.variation(&Q::int(2)).unwrap(), &theta).unwrap();
        assert!(!einstein_residual(&d2.space).is_zero(), "{id}");
    }
}

#[test]
fn dual_killing_signatures() {
    let sig = dual_killing_signature(&build_str("so(3,2)").unwrap().algebra).unwrap();
    assert_eq!((sig.plus, sig.minus, sig.zero), (0, 10, 0));
}

#[test]
fn compact_input_has_no_minus_part() {
    let g = build_str("so(4,0)").unwrap();
    let d = DualityData::new(&g.algebra).unwrap();
    assert_eq!(d.minus.dim(), 0);
    assert_eq!(d.dual.fingerprint(), d.source.fingerprint());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn theta_preserves_brackets(i in 0usize..8, j in 0usize..8) {
        let g = build_str("su(2,1)").unwrap();
        let d = DualityData::new(&g.algebra).unwrap();
        let l = &d.source;
        let unit = |k: usize| (0..8).map(|x| if x == k { Q::ONE } else { Q::ZERO }).collect::<Vec<_>>();
        let th = |v: &[Q]| d.theta.vec_mul(v);
        let lhs = th(&l.bracket(&unit(i), &unit(j)));
        let rhs = l.bracket(&th(&unit(i)), &th(&unit(j)));
        prop_assert_eq!(lhs, rhs);
    }
}
