use std::collections::BTreeSet;

use proptest::prelude::*;
use pseudo_einstein::einstein::*;
use pseudo_einstein::groups::{build, build_str};
use pseudo_einstein::transitivity::{minimal_params, table_len, table_row, ActionInstance, Params};
use pseudo_einstein::Q;

fn canonical(spec: &str) -> ReductiveSpace {
    let a = ActionInstance::from_embedded(&build_str(spec).unwrap()).unwrap();
    canonical_space(&a).unwrap()
}

fn set(xs: &[Q]) -> BTreeSet<Q> {
    xs.iter().cloned().collect()
}

#[test]
fn canonical_signatures() {
    let s = canonical("so(4,1)");
    assert_eq!((s.signature().plus, s.signature().minus), (4, 0));
    let s = canonical("sp(1,1)");
    assert_eq!((s.signature().plus, s.signature().minus), (4, 3));
}

#[test]
fn constant_curvature_on_every_table1_row() {
    for row in 1..=table_len(1) {
        let spec = table_row(1, row, minimal_params(1, row).unwrap()).unwrap();
        let a = ActionInstance::from_embedded(&build(&spec.g).unwrap()).unwrap();
        let s = canonical_space(&a).unwrap();
        let n = s.dim() as i64;
        assert_eq!(n as usize, spec.model.0, "row {row}");
        let ric = ricci(&s);
        assert_eq!(ric, s.metric().scale(&Q::int(-(n - 1))), "row {row}");
        assert_eq!(ricci_from_curvature(&s), ric, "row {row}");
        assert_eq!(scalar_curvature(&s), Q::int(-n * (n - 1)), "row {row}");
    }
}

#[test]
fn canonical_metric_is_the_ambient_form() {
    // ⟨X·x₀, X·x₀⟩ for an 𝔪 basis element equals the metric diagonal.
    let g = build_str("su(2,1)").unwrap();
    let a = ActionInstance::from_embedded(&g).unwrap();
    let s = canonical_space(&a).unwrap();
    let form = g.form_matrix();
    for (i, c) in s.data().m().vectors().iter().enumerate() {
        let v = g.algebra.combine(c).mul_vec(&a.base_point);
        assert_eq!(s.metric()[(i, i)], form.bilinear(&v, &v));
    }
}

fn all_fibrations() -> Vec<HopfFibration> {
    let cases = [
        (FibrationId::PiC, Params::MS { m: 1, s: 0 }),
        (FibrationId::PiC, Params::MS { m: 2, s: 1 }),
        (FibrationId::PiA, Params::M { m: 1 }),
        (FibrationId::PiA, Params::M { m: 2 }),
        (FibrationId::PiH, Params::MS { m: 1, s: 0 }),
        (FibrationId::PiH, Params::MS { m: 1, s: 1 }),
        (FibrationId::PiB, Params::M { m: 1 }),
        (FibrationId::PiB, Params::M { m: 2 }),
        (FibrationId::PiO1, Params::Fixed),
        (FibrationId::PiO2, Params::Fixed),
        (FibrationId::PiOPrime, Params::Fixed),
        (FibrationId::PiCH, Params::MS { m: 1, s: 0 }),
        (FibrationId::PiCH, Params::MS { m: 1, s: 1 }),
        (FibrationId::PiCB, Params::M { m: 1 }),
        (FibrationId::PiCB, Params::M { m: 2 }),
        (FibrationId::PiAB, Params::M { m: 1 }),
        (FibrationId::PiAB, Params::M { m: 2 }),
    ];
    cases.iter().map(|&(id, p)| build_fibration(id, p).unwrap()).collect()
}

#[test]
fn fibration_structure() {
    for f in all_fibrations() {
        let expected_fibre = match f.id {
            FibrationId::PiC | FibrationId::PiA => 1,
            FibrationId::PiH | FibrationId::PiB => 3,
            FibrationId::PiCH | FibrationId::PiCB | FibrationId::PiAB => 2,
            _ => 7,
        };
        assert_eq!(f.fibre_dim(), expected_fibre, "{}", f.id);
        assert_eq!(f.fibre_dim() + f.base_dim(), f.total_dim());
        assert!(f.fibres_totally_geodesic(), "{}", f.id);
        assert!(!f.a_tensor_vanishes(), "{}", f.id);
        assert!(f.hb().contains_subspace(f.k()));
        let c = f.canonical();
        assert!(c.data().is_invariant(c.metric()));
    }
}

#[test]
fn two_ricci_implementations_agree() {
    for f in all_fibrations() {
        for space in [f.canonical().clone(), f.variation(&Q::new(2, 3)).unwrap(), f.base().unwrap(), f.fibre_space().unwrap()] {
            if space.dim() <= 15 {
                let r = ricci(&space);
                assert_eq!(r, ricci_from_curvature(&space), "{} {}", f.id, space.name());
                assert!(r.is_symmetric());
                assert!(space.data().is_invariant(&r), "Ricci is Ad-invariant");
            }
        }
    }
}

#[test]
fn scans_match_t_zero() {
    for f in all_fibrations() {
        let t0 = t_zero(&f).unwrap();
        let mut expected = set(&[Q::ONE]);
        expected.extend(t0.clone());
        assert_eq!(einstein_scan(&f, None).unwrap(), expected, "{} {}", f.id, f.params);
        match f.id {
            FibrationId::PiC | FibrationId::PiA => assert_eq!(t0, None),
            _ => assert!(t0.is_some(), "{}", f.id),
        }
    }
}

#[test]
fn lambda_values_follow_closed_forms() {
    // Quaternionic: (−(4m+8), −2); twistor: (−(4m+8), −4); octonionic (−28, −6).
    for m in 1..=2 {
        let k = -(4 * m as i64 + 8);
        for (id, p, fibre) in [
            (FibrationId::PiH, Params::MS { m, s: 0 }, -2),
            (FibrationId::PiB, Params::M { m }, -2),
            (FibrationId::PiCH, Params::MS { m, s: m }, -4),
            (FibrationId::PiCB, Params::M { m }, -4),
            (FibrationId::PiAB, Params::M { m }, -4),
        ] {
            let l = lambda_values(&build_fibration(id, p).unwrap()).unwrap();
            assert_eq!((l.lambda_base, l.lambda_fibre), (Q::int(k), Q::int(fibre)), "{id} m={m}");
        }
    }
    for id in [FibrationId::PiO1, FibrationId::PiO2, FibrationId::PiOPrime] {
        let l = lambda_values(&build_fibration(id, Params::Fixed).unwrap()).unwrap();
        assert_eq!((l.lambda_base, l.lambda_fibre), (Q::int(-28), Q::int(-6)));
    }
}

#[test]
fn t_zero_closed_forms() {
    for m in 1..=3usize {
        let f = build_fibration(FibrationId::PiH, Params::MS { m, s: 0 }).unwrap();
        assert_eq!(t_zero(&f).unwrap(), Some(Q::new(1, 2 * m as i64 + 3)));
    }
    for m in 1..=2usize {
        let f = build_fibration(FibrationId::PiCB, Params::M { m }).unwrap();
        assert_eq!(t_zero(&f).unwrap(), Some(Q::new(1, m as i64 + 1)));
    }
    let f = build_fibration(FibrationId::PiO1, Params::Fixed).unwrap();
    assert_eq!(t_zero(&f).unwrap(), Some(Q::new(3, 11)));
}

#[test]
fn t_zero_degenerate_cases() {
    let l = |b: i64, f: i64| LambdaValues { lambda_base: Q::int(b), lambda_fibre: Q::int(f) };
    assert_eq!(t_zero_from(&l(-4, 0), false), None);
    assert_eq!(t_zero_from(&l(-4, -2), false), None);
    assert_eq!(t_zero_from(&l(-12, -2), true), None);
    assert_eq!(t_zero_from(&l(-12, -2), false), Some(Q::new(1, 5)));
}

#[test]
fn variation_examples() {
    let f = build_fibration(FibrationId::PiH, Params::MS { m: 1, s: 0 }).unwrap();
    assert_eq!(f.variation(&Q::ONE).unwrap().metric(), f.canonical().metric());
    assert!(einstein_residual(&f.variation(&Q::new(1, 5)).unwrap()).is_zero());
    assert!(einstein_residual(&f.variation(&Q::int(2)).unwrap()).is_positive());
    assert!(f.variation(&Q::ZERO).is_err());
    let fibre_sig = |t: Q| {
        let g = f.variation(&t).unwrap();
        let idx: Vec<usize> = (0..f.fibre_dim()).collect();
        let s = g.metric().select(&idx, &idx).signature();
        (s.plus, s.minus)
    };
    assert_eq!(fibre_sig(Q::ONE), (0, 3));
    assert_eq!(fibre_sig(Q::int(-1)), (3, 0));
}

#[test]
fn scan_rejects_bad_samples() {
    let f = build_fibration(FibrationId::PiH, Params::MS { m: 1, s: 0 }).unwrap();
    assert!(einstein_scan(&f, Some(&[Q::ONE, Q::ONE, Q::int(2)])).is_err());
    assert!(einstein_scan(&f, Some(&[Q::ZERO, Q::ONE, Q::int(2)])).is_err());
    // Too few samples to hold the polynomial is detected at the check points.
    assert!(einstein_scan(&f, Some(&[Q::ONE, Q::int(2)])).is_err());
    let more: Vec<Q> = (1..=7).map(Q::int).collect();
    assert_eq!(einstein_scan(&f, Some(&more)).unwrap(), set(&[Q::ONE, Q::new(1, 5)]));
}

#[test]
fn invalid_fibration_params() {
    assert!(build_fibration(FibrationId::PiH, Params::MS { m: 0, s: 0 }).is_err());
    assert!(build_fibration(FibrationId::PiH, Params::MS { m: 1, s: 2 }).is_err());
    assert!(build_fibration(FibrationId::PiO1, Params::M { m: 1 }).is_err());
    assert!("piX".parse::<FibrationId>().is_err());
}

#[test]
fn theorem_counts() {
    let cases = [
        ("H:15:7", 5),
        ("H:15:15", 3),
        ("H:23:11", 3),
        ("CH:7:3", 3),
        ("H:11:11", 2),
        ("CH:5:2", 2),
        ("AP:3", 2),
        ("H:4:1", 1),
        ("CH:4:2", 1),
        ("BP:1", 1),
        ("AP:2", 1),
        ("H:7:3", 3),
        ("H:7:7", 2),
        ("CH:3:1", 3),
        ("CH:5:1", 2),
        ("H:9:2", 1),
    ];
    for (tag, count) in cases {
        let e = enumerate_einstein_metrics(tag).unwrap();
        assert_eq!(e.count, count, "{tag}");
        assert_eq!(e.theorem_count, Some(count), "{tag}");
    }
    assert!(enumerate_einstein_metrics("Z:1:1").is_err());
}

#[test]
fn theorem_exclusions_are_reported_not_guessed() {
    // m = 3 in the second clause has no stated count.
    assert_eq!(theorem_count("H:15:3".parse().unwrap()), None);
    assert_eq!(theorem_count("H:15:11".parse().unwrap()), None);
    assert_eq!(theorem_count("HH:2:1".parse().unwrap()), None);
}

#[test]
fn catalog_has_ten_entries() {
    let c = catalog_json();
    assert_eq!(c.as_array().unwrap().len(), 10);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn ricci_is_homothety_invariant(num in 1i64..=9, den in 1i64..=9, neg in proptest::bool::ANY) {
        let c = Q::new(if neg { -num } else { num }, den);
        let f = build_fibration(FibrationId::PiCH, Params::MS { m: 1, s: 0 }).unwrap();
        let g = f.variation(&Q::new(3, 2)).unwrap();
        let scaled = g.scaled(&c).unwrap();
        prop_assert_eq!(ricci(&scaled), ricci(&g));
        prop_assert_eq!(einstein_residual(&scaled), &einstein_residual(&g) / &c.abs());
    }

    #[test]
    fn invariance_rejects_perturbed_metric(i in 0usize..7, j in 0usize..7) {
        let s = canonical("sp(1,1)");
        let mut bad = s.metric().clone();
        bad[(i, j)] += &Q::ONE;
        if i != j {
            bad[(j, i)] += &Q::ONE;
        }
        let invariant = s.data().is_invariant(&bad);
        prop_assert_eq!(s.with_metric(bad.clone()).is_ok(), invariant && bad.rank() == 7);
    }
}
