use proptest::prelude::*;
use pseudo_einstein::algebra::{AlgebraElement, AlgebraTag};
use pseudo_einstein::Q;

fn coeffs() -> impl Strategy<Value = Vec<Q>> {
    prop::collection::vec((-6i64..=6, 1i64..=3), 8).prop_map(|c| c.into_iter().map(|(n, d)| Q::new(n, d)).collect())
}

/// The same raw coefficients cut down to every kind.
fn all_kinds(c: &[Q]) -> Vec<AlgebraElement> {
    AlgebraTag::ALL
        .iter()
        .map(|&t| AlgebraElement::new(t, c[..t.kind().dim].to_vec()).unwrap())
        .collect()
}

/// Hamilton's product written out by hand.
fn hamilton(a: &[Q], b: &[Q]) -> Vec<Q> {
    let m = |i: usize, j: usize| &a[i] * &b[j];
    vec![
        &(&(&m(0, 0) - &m(1, 1)) - &m(2, 2)) - &m(3, 3),
        &(&(&m(0, 1) + &m(1, 0)) + &m(2, 3)) - &m(3, 2),
        &(&(&m(0, 2) - &m(1, 3)) + &m(2, 0)) + &m(3, 1),
        &(&(&m(0, 3) + &m(1, 2)) - &m(2, 1)) + &m(3, 0),
    ]
}

proptest! {
    // Each case checks all seven kinds, so every kind sees 128 samples.
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn norm_is_multiplicative(a in coeffs(), b in coeffs()) {
        for (x, y) in all_kinds(&a).iter().zip(all_kinds(&b)) {
            let xy = x.multiply(&y).unwrap();
            prop_assert_eq!(xy.norm(), &x.norm() * &y.norm(), "{}", x.tag());
        }
    }

    #[test]
    fn alternative(a in coeffs(), b in coeffs()) {
        for (x, y) in all_kinds(&a).iter().zip(all_kinds(&b)) {
            let xx = x.multiply(x).unwrap();
            let left = x.multiply(&x.multiply(&y).unwrap()).unwrap();
            prop_assert_eq!(left, xx.multiply(&y).unwrap());
            let right = y.multiply(x).unwrap().multiply(x).unwrap();
            prop_assert_eq!(right, y.multiply(&xx).unwrap());
        }
    }

    #[test]
    fn conjugation_reverses_products(a in coeffs(), b in coeffs()) {
        for (x, y) in all_kinds(&a).iter().zip(all_kinds(&b)) {
            let lhs = x.multiply(&y).unwrap().conjugate();
            let rhs = y.conjugate().multiply(&x.conjugate()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn norm_is_x_times_conjugate(a in coeffs()) {
        for x in all_kinds(&a) {
            let p = x.multiply(&x.conjugate()).unwrap();
            prop_assert_eq!(p, AlgebraElement::scalar(x.tag(), x.norm()));
        }
    }

    #[test]
    fn quaternion_product_matches_hamilton(a in coeffs(), b in coeffs()) {
        let x = AlgebraElement::new(AlgebraTag::Quaternion, a[..4].to_vec()).unwrap();
        let y = AlgebraElement::new(AlgebraTag::Quaternion, b[..4].to_vec()).unwrap();
        prop_assert_eq!(x.multiply(&y).unwrap().coeffs().to_vec(), hamilton(&a[..4], &b[..4]));
    }
}

#[test]
fn split_algebras_have_isotropic_elements() {
    for t in [AlgebraTag::ParaComplex, AlgebraTag::ParaQuaternion, AlgebraTag::SplitOctonion] {
        let dim = t.kind().dim;
        let mut c = vec![0i64; dim];
        c[0] = 1;
        c[dim - 1] = 1;
        let x = AlgebraElement::from_ints(t, &c).unwrap();
        assert_eq!(x.norm(), Q::ZERO, "{t}");
    }
}

#[test]
fn kind_mismatch_is_an_error() {
    let a = AlgebraElement::from_ints(AlgebraTag::Complex, &[1, 1]).unwrap();
    let b = AlgebraElement::from_ints(AlgebraTag::ParaComplex, &[1, 1]).unwrap();
    assert!(a.multiply(&b).is_err());
}
