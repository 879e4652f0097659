//! Telescoping identity for I-function coefficients, checked against an
//! independent series oracle. The oracle works with `X_j` specialized at
//! fixed rational points, which keeps the series arithmetic small.

use std::collections::BTreeMap;

use qk_core::catalog::{blown_up_plane, p1xp1, projective_space, weighted_projective};
use qk_core::ifunction::{check_telescope, i_coefficient, telescope_sides, XRational};
use num_traits::Zero;

use qk_core::ring::{int, rat, ExpansionPoint, Rational};
use qk_core::toric::ToricGitDatum;

const ORDER: i64 = 12;

/// Multiplicity of each factor `(1 - X_j^-1 z^m)`, keyed by `(j, m)`.
type Factors = BTreeMap<(usize, i64), i64>;

/// Record `prod_{m=lo}^{hi}` with the convention that a reversed range is an inverse.
fn range(f: &mut Factors, j: usize, lo: i64, hi: i64) {
    if hi >= lo {
        for m in lo..=hi {
            *f.entry((j, m)).or_insert(0) += 1;
        }
    } else {
        for m in hi + 1..lo {
            *f.entry((j, m)).or_insert(0) -= 1;
        }
    }
}

fn coefficient_factors(datum: &ToricGitDatum, d: &[i64]) -> Factors {
    let mut f = Factors::new();
    for j in 0..datum.k() {
        let mu = datum.pairing(j, d);
        // prod_{m=1}^{mu} (1 - X^-1 z^m)^-1
        let mut inv = Factors::new();
        range(&mut inv, j, 1, mu);
        for (key, e) in inv {
            *f.entry(key).or_insert(0) -= e;
        }
    }
    f
}

/// Truncated series in `z` with rational coefficients.
#[derive(Clone, Debug, PartialEq)]
struct Series(BTreeMap<i64, Rational>);

impl Series {
    fn one() -> Self {
        Series(BTreeMap::from([(0, int(1))]))
    }

    fn mul(&self, other: &Self, cut: i64) -> Self {
        let mut out: BTreeMap<i64, Rational> = BTreeMap::new();
        for (a, x) in &self.0 {
            for (b, y) in &other.0 {
                if a + b <= cut {
                    *out.entry(a + b).or_insert_with(|| int(0)) += x * y;
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        Series(out)
    }
}

/// `(1 - c z^m)^e` expanded at zero through `cut`.
fn factor_series(c: &Rational, m: i64, e: i64, cut: i64) -> Series {
    let one = Series::one();
    if e >= 0 {
        let mut base = BTreeMap::from([(0, int(1))]);
        *base.entry(m).or_insert_with(|| int(0)) -= c;
        let base = Series(base);
        return (0..e).fold(one, |acc, _| acc.mul(&base, cut));
    }
    assert_ne!(m, 0, "inverse of a z-constant factor does not expand");
    // 1/(1 - c z^m) = sum c^k z^{km} for m > 0, and -c^-1 z^-m / (1 - c^-1 z^-m) for m < 0.
    let (lead, step, ratio, first) = if m > 0 { (0, m, c.clone(), int(1)) } else { (-m, -m, c.recip(), -c.recip()) };
    let mut geo = BTreeMap::new();
    let mut pow = first;
    let mut k = lead;
    while k <= cut {
        geo.insert(k, pow.clone());
        pow *= &ratio;
        k += step;
    }
    let inv = Series(geo);
    (0..-e).fold(one, |acc, _| acc.mul(&inv, cut))
}

fn valuation(m: i64, e: i64) -> i64 {
    if e >= 0 {
        e * m.min(0)
    } else {
        -e * (-m).max(0)
    }
}

/// Product of the factors with `X_j = point[j]`.
fn oracle(point: &[Rational], f: &Factors) -> Series {
    let low: i64 = f.iter().map(|(&(_, m), &e)| valuation(m, e)).filter(|&x| x < 0).sum();
    let cut = ORDER - low;
    let mut acc = Series::one();
    for (&(j, m), &e) in f {
        if e != 0 {
            acc = acc.mul(&factor_series(&point[j].recip(), m, e, cut), cut);
        }
    }
    Series(acc.0.into_iter().filter(|(k, _)| *k <= ORDER).collect())
}

/// Library value specialized at the point, then expanded at zero.
fn library_series(f: &XRational, point: &[Rational]) -> Series {
    let g = f.map_coeffs(&(), |c| c.evaluate(point).unwrap()).unwrap();
    let s = g.expand_at(ExpansionPoint::Zero, ORDER).unwrap();
    Series(s.coeffs().iter().filter(|(k, c)| **k <= ORDER && !c.is_zero()).map(|(k, c)| (*k, c.clone())).collect())
}

fn points(k: usize) -> Vec<Vec<Rational>> {
    let first = [2, 3, 5, 7, 11].iter().take(k).map(|&p| int(p)).collect();
    let second = [rat(-1, 2), rat(4, 3), rat(-3, 5), rat(7, 2), rat(2, 9)].into_iter().take(k).collect();
    vec![first, second]
}

fn check_datum(datum: &ToricGitDatum) -> usize {
    let pts = points(datum.k());
    let degrees = datum.degree_lattice().unwrap().degrees_up_to(&int(4));
    let mut count = 0;
    for d in &degrees {
        for dp in &degrees {
            let diff: Vec<i64> = dp.iter().zip(d).map(|(a, b)| a - b).collect();
            let witness = check_telescope(datum, d, dp).unwrap();
            assert!(witness.holds(), "{d:?} {dp:?}: {:?}", witness.offending_term());

            let mut lhs_factors = coefficient_factors(datum, dp);
            for j in 0..datum.k() {
                range(&mut lhs_factors, j, datum.pairing(j, &diff) + 1, datum.pairing(j, dp));
            }
            lhs_factors.retain(|_, e| *e != 0);
            let rhs_factors = coefficient_factors(datum, &diff);
            let (lhs, rhs) = telescope_sides(datum, d, dp).unwrap();
            for p in &pts {
                let (lhs_oracle, rhs_oracle) = (oracle(p, &lhs_factors), oracle(p, &rhs_factors));
                assert_eq!(lhs_oracle, rhs_oracle, "{d:?} {dp:?}");
                assert_eq!(library_series(&lhs, p), lhs_oracle, "{d:?} {dp:?}");
                assert_eq!(library_series(&rhs, p), rhs_oracle, "{d:?} {dp:?}");
            }
            count += 1;
        }
        for p in &pts {
            assert_eq!(library_series(&i_coefficient(datum, d).unwrap(), p), oracle(p, &coefficient_factors(datum, d)));
        }
    }
    count
}

#[test]
fn projective_spaces() {
    for n in 1..=3 {
        assert!(check_datum(&projective_space(n)) > 0);
    }
}

#[test]
fn weighted_projective_plane() {
    assert!(check_datum(&weighted_projective(&[1, 1, 2]).unwrap()) > 0);
}

#[test]
fn product_of_lines() {
    assert!(check_datum(&p1xp1()) > 0);
}

#[test]
fn blown_up_plane_data() {
    assert!(check_datum(&blown_up_plane()) > 0);
}
