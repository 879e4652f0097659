use proptest::prelude::*;

use qk_core::catalog::{projective_space, weighted_projective};
use qk_core::localization::{a_hat_factor, det_half, euler_class, residue, IsotypicBundle, IsotypicComponent};
use qk_core::novikov::{DegreeLattice, NovikovSeries};
use qk_core::presentation::{wps_vars, WpsRing};
use qk_core::ring::{int, rat, vars, ExpansionPoint, MultiLaurent, Rational, Ring, Vars, ZRational};

fn config() -> ProptestConfig {
    ProptestConfig::with_cases(256)
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (prop_oneof![-5i64..=-1, 1i64..=5], 1i64..=3).prop_map(|(n, d)| rat(n, d))
}

fn weight() -> impl Strategy<Value = i64> {
    prop_oneof![-3i64..=-1, 1i64..=3]
}

fn xy() -> Vars {
    vars(&["x", "y"])
}

fn laurent(v: Vars) -> impl Strategy<Value = MultiLaurent> {
    prop::collection::vec(((-2i64..=2, -2i64..=2), small_rational()), 0..5).prop_map(move |ts| {
        MultiLaurent::from_terms(&v, ts.into_iter().map(|((a, b), c)| (vec![a, b], c)))
    })
}

fn bundle(len: usize) -> impl Strategy<Value = Vec<(i64, Rational)>> {
    prop::collection::vec((weight(), nonzero_rational()), 0..=len)
}

fn to_bundle(parts: &[(i64, Rational)]) -> IsotypicBundle<Rational> {
    let comps = parts
        .iter()
        .map(|(m, c)| IsotypicComponent { weight: *m, roots: vec![c.clone()], root_of_unity: None })
        .collect();
    IsotypicBundle::new(&(), comps).unwrap()
}

/// Rational function with unit denominators: `z^k (sum a_i z^i) / prod (1 - c z^m)`.
fn zrational() -> impl Strategy<Value = ZRational<Rational>> {
    (
        -3i64..=3,
        prop::collection::vec(small_rational(), 1..4),
        prop::collection::vec((weight(), nonzero_rational()), 0..3),
    )
        .prop_map(|(k, num, den)| {
            let mut f = ZRational::from_terms(&(), num.into_iter().enumerate().map(|(i, c)| (i as i64, c)))
                .mul_monomial(k, &int(1));
            for (m, c) in den {
                f = f.div_factor(m, &c).unwrap();
            }
            f
        })
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn laurent_ring_axioms(a in laurent(xy()), b in laurent(xy()), c in laurent(xy())) {
        prop_assert_eq!(a.times(&b).times(&c), a.times(&b.times(&c)));
        prop_assert_eq!(a.times(&b.plus(&c)), a.times(&b).plus(&a.times(&c)));
        prop_assert_eq!(a.plus(&b), b.plus(&a));
        prop_assert_eq!(a.times(&b), b.times(&a));
    }

    #[test]
    fn exact_binomial_division(a in laurent(xy()), e in (-2i64..=2, -2i64..=2), c in nonzero_rational()) {
        prop_assume!(e != (0, 0));
        let d = MultiLaurent::from_terms(&xy(), [(vec![0, 0], int(1)), (vec![e.0, e.1], -c)]);
        prop_assert_eq!(a.times(&d).divide_exact(&d), Some(a));
    }

    #[test]
    fn expansion_is_multiplicative(f in zrational(), g in zrational(), point in prop_oneof![Just(ExpansionPoint::Zero), Just(ExpansionPoint::Infinity)]) {
        let order = 4;
        let fg = f.times(&g).expand_at(point, order).unwrap();
        let prod = f.expand_at(point, order).unwrap().mul(&g.expand_at(point, order).unwrap());
        for k in -6..=order.min(prod.order()) {
            prop_assert_eq!(fg.coefficient(k).unwrap(), prod.coefficient(k).unwrap());
        }
    }

    #[test]
    fn residue_vanishes_without_denominators(terms in prop::collection::vec((-6i64..=6, small_rational()), 0..6)) {
        let f = ZRational::from_terms(&(), terms);
        prop_assert_eq!(residue(&f).unwrap(), int(0));
    }

    #[test]
    fn residue_is_additive(f in zrational(), g in zrational()) {
        prop_assert_eq!(residue(&f.plus(&g)).unwrap(), residue(&f).unwrap() + residue(&g).unwrap());
    }

    #[test]
    fn euler_class_is_multiplicative(e in bundle(3), f in bundle(3)) {
        let (be, bf) = (to_bundle(&e), to_bundle(&f));
        let sum = euler_class(&be.direct_sum(&bf)).unwrap();
        prop_assert_eq!(sum, euler_class(&be).unwrap().times(&euler_class(&bf).unwrap()));
    }

    #[test]
    fn a_hat_is_multiplicative(e in prop::collection::vec((weight(), nonzero_rational()), 0..3),
                               f in prop::collection::vec((weight(), nonzero_rational()), 0..3)) {
        // Squares, so that the half-roots exist.
        let sq = |v: &[(i64, Rational)]| to_bundle(&v.iter().map(|(m, s)| (*m, s * s)).collect::<Vec<_>>());
        let (be, bf) = (sq(&e), sq(&f));
        let whole = a_hat_factor(&be.direct_sum(&bf)).unwrap();
        prop_assert_eq!(whole, a_hat_factor(&be).unwrap().times(&a_hat_factor(&bf).unwrap()));
    }

    #[test]
    fn a_hat_euler_det_identity(ws in prop::collection::vec(weight(), 0..=4)) {
        let e = IsotypicBundle::<Rational>::trivial(&(), &ws).unwrap();
        let prod = a_hat_factor(&e).unwrap().times(&euler_class(&e).unwrap()).times(&det_half(&e).unwrap());
        prop_assert_eq!(prod, ZRational::one(&()));
    }

    #[test]
    fn novikov_inverse_roundtrip(coeffs in prop::collection::vec(((0i64..=3, 0i64..=3), small_rational()), 0..6),
                                 a0 in nonzero_rational(), cap in 1i64..=5) {
        let lattice = DegreeLattice::new(vec![vec![1, 0], vec![0, 1]], vec![int(1), int(2)]).unwrap();
        let cap = int(cap);
        let mut a = NovikovSeries::<Rational>::monomial(&lattice, cap.clone(), vec![0, 0], a0).unwrap();
        for ((i, j), c) in coeffs {
            if (i, j) != (0, 0) {
                a = a.add(&NovikovSeries::monomial(&lattice, cap.clone(), vec![i, j], c).unwrap()).unwrap();
            }
        }
        let inv = a.geometric_inverse().unwrap();
        let one = NovikovSeries::one(&lattice, cap.clone(), &());
        let prod = a.mul(&inv).unwrap();
        prop_assert_eq!(prod.terms(), one.terms());
        for d in inv.terms().keys() {
            prop_assert!(lattice.energy(d) <= cap);
        }
    }

    #[test]
    fn energy_is_additive(d in (-5i64..=5, -5i64..=5), e in (-5i64..=5, -5i64..=5)) {
        let lattice = DegreeLattice::new(vec![vec![1, 0], vec![0, 1]], vec![rat(1, 2), rat(3, 1)]).unwrap();
        let (d, e) = (vec![d.0, d.1], vec![e.0, e.1]);
        let sum: Vec<i64> = d.iter().zip(&e).map(|(a, b)| a + b).collect();
        prop_assert_eq!(lattice.energy(&sum), lattice.energy(&d) + lattice.energy(&e));
    }

    #[test]
    fn normal_form_is_a_homomorphism(which in 0usize..4,
        a in prop::collection::vec(((0i64..=5, 0i64..=2), small_rational()), 0..5),
        b in prop::collection::vec(((0i64..=5, 0i64..=2), small_rational()), 0..5)) {
        let datum = [projective_space(1), projective_space(2), weighted_projective(&[1, 2]).unwrap(), weighted_projective(&[2]).unwrap()][which].clone();
        let ring = WpsRing::new(&datum).unwrap();
        let yq = wps_vars();
        let poly = |ts: Vec<((i64, i64), Rational)>| MultiLaurent::from_terms(&yq, ts.into_iter().map(|((i, j), c)| (vec![i, j], c)));
        let (a, b) = (poly(a), poly(b));
        let lhs = ring.normal_form(&a.times(&b)).unwrap();
        let rhs = ring.normal_form(&ring.normal_form(&a).unwrap().times(&ring.normal_form(&b).unwrap())).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(ring.normal_form(&a.plus(&b)).unwrap(), ring.normal_form(&a).unwrap().plus(&ring.normal_form(&b).unwrap()));
    }
}
