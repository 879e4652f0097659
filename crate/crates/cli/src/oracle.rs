//! Brute-force series arithmetic used as an independent check on the library.
//! Products of factors `(1 - c z^m)^e` are expanded at `z = 0` with plain maps
//! of rational coefficients, after specializing every variable to a number.

use std::collections::BTreeMap;

use num_traits::Zero;

use qk_core::ring::{int, Rational};

/// Exponent of each factor `(1 - c z^m)`, keyed by `(c, m)`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Factors(pub BTreeMap<(Rational, i64), i64>);

impl Factors {
    pub fn add(&mut self, c: Rational, m: i64, e: i64) {
        *self.0.entry((c, m)).or_insert(0) += e;
    }

    /// `prod_{m=lo}^{hi} (1 - c z^m)`, where a reversed range is the inverse of
    /// `prod_{m=hi+1}^{lo-1}`.
    pub fn range(&mut self, c: &Rational, lo: i64, hi: i64, sign: i64) {
        if hi >= lo {
            for m in lo..=hi {
                self.add(c.clone(), m, sign);
            }
        } else {
            for m in hi + 1..lo {
                self.add(c.clone(), m, -sign);
            }
        }
    }

    fn lowest_power(&self) -> i64 {
        self.0
            .iter()
            .map(|(&(_, m), &e)| if e >= 0 { e * m.min(0) } else { -e * (-m).max(0) })
            .filter(|&x| x < 0)
            .sum()
    }

    /// `scalar * z^shift * prod` through `z^order`.
    pub fn expand(&self, scalar: &Rational, shift: i64, order: i64) -> Series {
        let cut = order - shift - self.lowest_power();
        let mut acc = Series::constant(scalar.clone());
        for (&(ref c, m), &e) in &self.0 {
            if e != 0 {
                acc = acc.mul(&factor_series(c, m, e, cut), cut);
            }
        }
        Series(acc.0.into_iter().map(|(k, c)| (k + shift, c)).filter(|(k, _)| *k <= order).collect())
    }
}

/// Truncated Laurent series in `z` with rational coefficients and no zero entries.
#[derive(Debug, Clone, PartialEq)]
pub struct Series(pub BTreeMap<i64, Rational>);

impl Series {
    pub fn constant(c: Rational) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(0, c);
        }
        Series(m)
    }

    pub fn mul(&self, other: &Self, cut: i64) -> Self {
        let mut out: BTreeMap<i64, Rational> = BTreeMap::new();
        for (a, x) in &self.0 {
            for (b, y) in &other.0 {
                if a + b <= cut {
                    *out.entry(a + b).or_insert_with(Rational::zero) += x * y;
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        Series(out)
    }

    /// Drop everything above `order`.
    pub fn truncate(&self, order: i64) -> Self {
        Series(self.0.iter().filter(|(k, _)| **k <= order).map(|(k, c)| (*k, c.clone())).collect())
    }
}

/// `(1 - c z^m)^e` expanded at zero through `cut`.
fn factor_series(c: &Rational, m: i64, e: i64, cut: i64) -> Series {
    let one = Series::constant(int(1));
    if m == 0 {
        let base = int(1) - c;
        assert!(!base.is_zero(), "factor vanishes at the specialization point");
        let p = if e >= 0 { pow(&base, e as u32) } else { pow(&base.recip(), (-e) as u32) };
        return Series::constant(p);
    }
    if e >= 0 {
        let mut base = BTreeMap::from([(0, int(1))]);
        *base.entry(m).or_insert_with(Rational::zero) -= c;
        base.retain(|_, x| !x.is_zero());
        let base = Series(base);
        return (0..e).fold(one, |acc, _| acc.mul(&base, cut));
    }
    // 1/(1 - c z^m) = sum c^k z^{km} for m > 0, and -c^-1 z^-m / (1 - c^-1 z^-m) for m < 0.
    let (lead, step, ratio, first) = if m > 0 { (0, m, c.clone(), int(1)) } else { (-m, -m, c.recip(), -c.recip()) };
    let mut geo = BTreeMap::new();
    let mut p = first;
    let mut k = lead;
    while k <= cut {
        geo.insert(k, p.clone());
        p *= &ratio;
        k += step;
    }
    let inv = Series(geo);
    (0..-e).fold(one, |acc, _| acc.mul(&inv, cut))
}

pub fn pow(x: &Rational, e: u32) -> Rational {
    (0..e).fold(int(1), |acc, _| acc * x)
}

/// `x^e` for a possibly negative exponent.
pub fn ipow(x: &Rational, e: i64) -> Rational {
    if e >= 0 {
        pow(x, e as u32)
    } else {
        pow(&x.recip(), (-e) as u32)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use qk_core::ring::rat;

    #[test]
    fn geometric_series() {
        let mut f = Factors::default();
        f.add(int(2), 1, -1);
        let s = f.expand(&int(1), 0, 3);
        assert_eq!(s.0.values().cloned().collect::<Vec<_>>(), vec![int(1), int(2), int(4), int(8)]);
        // 1 / (1 - 2 z^-1) = -z/2 - z^2/4 - ..
        let mut g = Factors::default();
        g.add(int(2), -1, -1);
        let s = g.expand(&int(1), 0, 2);
        assert_eq!(s.0, BTreeMap::from([(1, rat(-1, 2)), (2, rat(-1, 4))]));
    }

    #[test]
    fn reversed_range_is_inverse() {
        let mut f = Factors::default();
        f.range(&int(3), 1, 3, 1);
        f.range(&int(3), 4, 0, 1);
        assert!(f.0.values().all(|&e| e == 0));
    }
}
