//! Exact coefficient rings.
//!
//! Everything is built on [`Rational`] (arbitrary precision, always reduced).
//! On top of it sit multivariate Laurent polynomials, truncated nilpotent
//! extensions, Laurent series and rational functions in the equivariant
//! parameter `z` whose denominators are products of factors `1 - c z^m`.

mod cyclotomic;
mod laurent;
mod nilpotent;
mod series;
mod zrational;

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::Value;

pub use cyclotomic::{cyclotomic_polynomial, RootOfUnity};
pub use laurent::{root_order, vars, Exponent, MultiLaurent, Vars};
pub use nilpotent::{NilpotentCoeff, NilpotentCtx, Truncated};
pub use series::{ExpansionPoint, LaurentSeries};
pub use zrational::{DenFactor, ZLaurent, ZRational};

/// Exact rational number.
pub type Rational = BigRational;

/// Errors raised by ring operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RingError {
    #[error("variable lists differ: {left:?} vs {right:?}")]
    VariableMismatch { left: Vec<String>, right: Vec<String> },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("element is not a unit: {0}")]
    NotAUnit(String),
    #[error("pole of order {order} at z = 1")]
    Pole { order: u32 },
    #[error("denominator does not divide numerator")]
    NotDivisible,
    #[error("no square root available for {0}")]
    NoSquareRoot(String),
    #[error("series truncated below requested order {0}")]
    Truncated(i64),
    #[error("malformed serialized value: {0}")]
    Parse(String),
}

/// A commutative ring with a runtime context (variable names, truncation data).
///
/// Method names avoid clashing with the `std::ops` traits so that generic code
/// stays unambiguous when both are in scope.
pub trait Ring: Clone + PartialEq + Debug + Send + Sync + 'static {
    type Ctx: Clone + PartialEq + Debug + Send + Sync;

    fn ctx(&self) -> Self::Ctx;
    fn zero_of(ctx: &Self::Ctx) -> Self;
    fn one_of(ctx: &Self::Ctx) -> Self;
    fn from_rational(ctx: &Self::Ctx, q: &Rational) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn negate(&self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn vanishes(&self) -> bool;
    /// Multiplicative inverse when it exists in the ring.
    fn try_inverse(&self) -> Option<Self>;
    fn to_json(&self) -> Value;
    fn from_json(ctx: &Self::Ctx, v: &Value) -> Result<Self, RingError>;

    /// Exact quotient `self / d`, when the ring can find one.
    fn try_divide(&self, d: &Self) -> Option<Self> {
        d.try_inverse().map(|inv| self.times(&inv))
    }

    fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negate())
    }

    fn scale(&self, q: &Rational) -> Self {
        self.times(&Self::from_rational(&self.ctx(), q))
    }

    fn is_unity(&self) -> bool {
        *self == Self::one_of(&self.ctx())
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one_of(&self.ctx());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.times(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.times(&base);
            }
        }
        acc
    }

    /// Integer power; negative exponents need a unit.
    fn ipow(&self, e: i64) -> Option<Self> {
        if e >= 0 {
            Some(self.pow(e as u32))
        } else {
            self.try_inverse().map(|inv| inv.pow((-e) as u32))
        }
    }
}

/// Coefficient rings that can host Â-factors and roots of unity.
pub trait Coefficient: Ring {
    /// A square root, when the element is a rational square times a square monomial
    /// (plus nilpotent corrections for truncated rings).
    fn try_sqrt(&self) -> Option<Self>;
    /// The root of unity as a ring element, if the context can express it.
    fn root_of_unity(ctx: &Self::Ctx, zeta: &RootOfUnity) -> Option<Self>;
}

impl Ring for Rational {
    type Ctx = ();

    fn ctx(&self) {}
    fn zero_of(_: &()) -> Self {
        Zero::zero()
    }
    fn one_of(_: &()) -> Self {
        One::one()
    }
    fn from_rational(_: &(), q: &Rational) -> Self {
        q.clone()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn negate(&self) -> Self {
        -self
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn try_inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn to_json(&self) -> Value {
        Value::String(format_rational(self))
    }
    fn from_json(_: &(), v: &Value) -> Result<Self, RingError> {
        let s = v.as_str().ok_or_else(|| RingError::Parse("rational must be a string".into()))?;
        parse_rational(s)
    }
}

impl Coefficient for Rational {
    fn try_sqrt(&self) -> Option<Self> {
        rational_sqrt(self)
    }
    fn root_of_unity(_: &(), zeta: &RootOfUnity) -> Option<Self> {
        match zeta.order() {
            1 => Some(One::one()),
            2 => Some(-Rational::one()),
            _ => None,
        }
    }
}

/// Convenience constructor for small rationals.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exact square root of a nonnegative rational square.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// Parse `"p/q"` or `"p"` into a rational.
pub fn parse_rational(s: &str) -> Result<Rational, RingError> {
    let s = s.trim();
    let bad = || RingError::Parse(format!("not a rational: `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Canonical string form `"p/q"` (or `"p"` for integers).
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Binomial coefficient `C(n, k)` for integer `n` (possibly negative) and `k >= 0`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    let mut acc = Rational::one();
    for i in 0..k {
        acc = acc * int(n - i) / int(i + 1);
    }
    acc.to_integer()
}

/// Generalized binomial `C(a, k)` for rational `a`.
pub fn binomial_rational(a: &Rational, k: u32) -> Rational {
    let mut acc = Rational::one();
    for i in 0..k {
        acc = acc * (a - int(i as i64)) / int(i as i64 + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_are_reduced() {
        let q = rat(6, -4);
        assert_eq!(q.numer(), &BigInt::from(-3));
        assert_eq!(q.denom(), &BigInt::from(2));
        assert_eq!(format_rational(&int(0)), "0");
        assert_eq!(parse_rational(" -6/4 ").unwrap(), rat(-3, 2));
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(-2, 3), BigInt::from(-4));
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(binomial_rational(&rat(1, 2), 2), rat(-1, 8));
    }

    #[test]
    fn square_roots() {
        assert_eq!(rational_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rational_sqrt(&rat(2, 1)), None);
        assert_eq!(Ring::pow(&rat(2, 3), 3), rat(8, 27));
        assert_eq!(Ring::ipow(&rat(2, 3), -2), Some(rat(9, 4)));
    }
}
