//! Property suites run by the acceptance driver under proptest.

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use qk_core::catalog::{projective_space, weighted_projective};
use qk_core::localization::{a_hat_factor, det_half, euler_class, residue, IsotypicBundle, IsotypicComponent};
use qk_core::novikov::{DegreeLattice, NovikovSeries};
use qk_core::presentation::{wps_vars, WpsRing};
use qk_core::ring::{int, rat, MultiLaurent, Rational, Ring, ZRational};

pub const CASES: u32 = 256;

pub type Suite = fn() -> Result<(), String>;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (prop_oneof![-5i64..=-1, 1i64..=5], 1i64..=3).prop_map(|(n, d)| rat(n, d))
}

fn weight() -> impl Strategy<Value = i64> {
    prop_oneof![-3i64..=-1, 1i64..=3]
}

fn bundle(parts: &[(i64, Rational)]) -> IsotypicBundle<Rational> {
    let comps = parts
        .iter()
        .map(|(m, c)| IsotypicComponent { weight: *m, roots: vec![c.clone()], root_of_unity: None })
        .collect();
    IsotypicBundle::new(&(), comps).expect("nonzero weights")
}

fn parts() -> impl Strategy<Value = Vec<(i64, Rational)>> {
    prop::collection::vec((weight(), nonzero_rational()), 0..=3)
}

fn fail(e: impl std::fmt::Display) -> TestCaseError {
    TestCaseError::fail(e.to_string())
}

fn run<S: Strategy>(strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String> {
    let mut runner = TestRunner::new(Config { cases: CASES, failure_persistence: None, ..Config::default() });
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

pub fn euler_multiplicative() -> Result<(), String> {
    run((parts(), parts()), |(e, f)| {
        let (be, bf) = (bundle(&e), bundle(&f));
        let whole = euler_class(&be.direct_sum(&bf)).map_err(fail)?;
        let prod = euler_class(&be).map_err(fail)?.times(&euler_class(&bf).map_err(fail)?);
        prop_assert_eq!(whole, prod);
        Ok(())
    })
}

pub fn a_hat_identities() -> Result<(), String> {
    run((parts(), parts(), prop::collection::vec(weight(), 0..=4)), |(e, f, ws)| {
        // Squared roots, so that the half-roots exist.
        let sq = |v: &[(i64, Rational)]| bundle(&v.iter().map(|(m, s)| (*m, s * s)).collect::<Vec<_>>());
        let (be, bf) = (sq(&e), sq(&f));
        let whole = a_hat_factor(&be.direct_sum(&bf)).map_err(fail)?;
        let prod = a_hat_factor(&be).map_err(fail)?.times(&a_hat_factor(&bf).map_err(fail)?);
        prop_assert_eq!(whole, prod);
        let trivial = IsotypicBundle::<Rational>::trivial(&(), &ws).map_err(fail)?;
        let one = a_hat_factor(&trivial)
            .map_err(fail)?
            .times(&euler_class(&trivial).map_err(fail)?)
            .times(&det_half(&trivial).map_err(fail)?);
        prop_assert_eq!(one, ZRational::one(&()));
        Ok(())
    })
}

pub fn residue_of_polynomials() -> Result<(), String> {
    run(prop::collection::vec((-6i64..=6, small_rational()), 0..6), |terms| {
        let f = ZRational::from_terms(&(), terms);
        prop_assert_eq!(residue(&f).map_err(fail)?, int(0));
        Ok(())
    })
}

pub fn novikov_inverse() -> Result<(), String> {
    let coeffs = prop::collection::vec(((0i64..=3, 0i64..=3), small_rational()), 0..6);
    run((coeffs, nonzero_rational(), 1i64..=5), |(coeffs, a0, cap)| {
        let lattice = DegreeLattice::new(vec![vec![1, 0], vec![0, 1]], vec![int(1), int(2)]).map_err(fail)?;
        let cap = int(cap);
        let mut a = NovikovSeries::<Rational>::monomial(&lattice, cap.clone(), vec![0, 0], a0).map_err(fail)?;
        for ((i, j), c) in coeffs {
            if (i, j) != (0, 0) {
                let m = NovikovSeries::monomial(&lattice, cap.clone(), vec![i, j], c).map_err(fail)?;
                a = a.add(&m).map_err(fail)?;
            }
        }
        let inv = a.geometric_inverse().map_err(fail)?;
        let prod = a.mul(&inv).map_err(fail)?;
        let one = NovikovSeries::one(&lattice, cap, &());
        prop_assert_eq!(prod.terms(), one.terms());
        Ok(())
    })
}

pub fn normal_form_homomorphism() -> Result<(), String> {
    let poly = || prop::collection::vec(((0i64..=5, 0i64..=2), small_rational()), 0..5);
    run((0usize..4, poly(), poly()), |(which, a, b)| {
        let datum = match which {
            0 => projective_space(1),
            1 => projective_space(2),
            2 => weighted_projective(&[1, 2]).map_err(fail)?,
            _ => weighted_projective(&[2]).map_err(fail)?,
        };
        let ring = WpsRing::new(&datum).map_err(fail)?;
        let yq = wps_vars();
        let to_poly =
            |ts: Vec<((i64, i64), Rational)>| MultiLaurent::from_terms(&yq, ts.into_iter().map(|((i, j), c)| (vec![i, j], c)));
        let (a, b) = (to_poly(a), to_poly(b));
        let nf = |f: &MultiLaurent| ring.normal_form(f).map_err(fail);
        prop_assert_eq!(nf(&a.times(&b))?, nf(&nf(&a)?.times(&nf(&b)?))?);
        prop_assert_eq!(nf(&a.plus(&b))?, nf(&a)?.plus(&nf(&b)?));
        Ok(())
    })
}

/// Every suite by name.
pub fn suites() -> Vec<(&'static str, Suite)> {
    vec![
        ("Euler class multiplicativity", euler_multiplicative),
        ("A-hat multiplicativity and A-hat Eul det^1/2 = 1", a_hat_identities),
        ("residue of denominator-free classes", residue_of_polynomials),
        ("Novikov geometric inverse", novikov_inverse),
        ("normal form homomorphism", normal_form_homomorphism),
    ]
}
