use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{Rational, RingError};

/// The root of unity `exp(2 pi i num/den)`, stored with `0 <= num < den` in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootOfUnity {
    num: u64,
    den: u64,
}

impl RootOfUnity {
    pub fn new(num: i64, den: u64) -> Result<Self, RingError> {
        if den == 0 {
            return Err(RingError::Parse("root of unity with zero denominator".into()));
        }
        let num = num.rem_euclid(den as i64) as u64;
        let g = num.gcd(&den);
        Ok(RootOfUnity { num: num / g, den: den / g })
    }

    pub fn one() -> Self {
        RootOfUnity { num: 0, den: 1 }
    }

    /// From a rational `l/m`, read modulo 1.
    pub fn from_rational(q: &Rational) -> Self {
        let den: u64 = q.denom().try_into().expect("root-of-unity order fits in u64");
        let m = BigInt::from(den);
        let num: u64 = q.numer().mod_floor(&m).try_into().expect("fits");
        RootOfUnity::new(num as i64, den).expect("nonzero order")
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    /// Multiplicative order.
    pub fn order(&self) -> u64 {
        self.den
    }

    pub fn is_one(&self) -> bool {
        self.num == 0
    }

    pub fn inverse(&self) -> Self {
        RootOfUnity::new(-(self.num as i64), self.den).expect("nonzero order")
    }

    pub fn mul(&self, other: &Self) -> Self {
        let den = self.den.lcm(&other.den);
        let num = self.num * (den / self.den) + other.num * (den / other.den);
        RootOfUnity::new(num as i64, den).expect("nonzero order")
    }

    pub fn pow(&self, e: i64) -> Self {
        let num = (self.num as i128 * e as i128).rem_euclid(self.den as i128);
        RootOfUnity::new(num as i64, self.den).expect("nonzero order")
    }

    pub fn as_rational(&self) -> Rational {
        Rational::new(BigInt::from(self.num), BigInt::from(self.den))
    }
}

impl std::fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Coefficients (lowest degree first) of the `n`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: u64) -> Vec<BigInt> {
    assert!(n >= 1, "cyclotomic index must be positive");
    // x^n - 1 divided by every Phi_d with d a proper divisor of n.
    let mut poly = vec![BigInt::zero(); n as usize + 1];
    poly[0] = -BigInt::one();
    poly[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            poly = exact_monic_div(&poly, &cyclotomic_polynomial(d));
        }
    }
    poly
}

fn exact_monic_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dc) in den.iter().enumerate() {
            rem[i + j] -= &c * dc;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    quot
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn root_arithmetic() {
        let a = RootOfUnity::new(1, 4).unwrap();
        assert_eq!(a.pow(2), RootOfUnity::new(1, 2).unwrap());
        assert_eq!(a.mul(&a.inverse()), RootOfUnity::one());
        assert_eq!(RootOfUnity::new(-3, 6).unwrap(), RootOfUnity::new(1, 2).unwrap());
    }
}
