use std::collections::BTreeMap;

use super::{Ring, RingError};

/// Where a rational function in `z` is expanded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExpansionPoint {
    /// Series in `z`.
    Zero,
    /// Series in `z^-1`.
    Infinity,
    /// Series in `z - 1`.
    One,
}

/// Truncated Laurent series in the local parameter of an [`ExpansionPoint`].
///
/// Coefficients are exact for every exponent `<= order`; nothing is known above.
/// With `half` set the local parameter is built from `z^(1/2)` instead of `z`.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentSeries<C: Ring> {
    pub point: ExpansionPoint,
    pub half: bool,
    ctx: C::Ctx,
    coeffs: BTreeMap<i64, C>,
    order: i64,
}

impl<C: Ring> LaurentSeries<C> {
    pub fn new(point: ExpansionPoint, half: bool, ctx: C::Ctx, coeffs: BTreeMap<i64, C>, order: i64) -> Self {
        let coeffs = coeffs.into_iter().filter(|(k, c)| *k <= order && !c.vanishes()).collect();
        LaurentSeries { point, half, ctx, coeffs, order }
    }

    /// Highest exponent with a known coefficient.
    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn context(&self) -> &C::Ctx {
        &self.ctx
    }

    /// Coefficient of the local parameter to the power `k`.
    pub fn coefficient(&self, k: i64) -> Result<C, RingError> {
        if k > self.order {
            return Err(RingError::Truncated(self.order));
        }
        Ok(self.coeffs.get(&k).cloned().unwrap_or_else(|| C::zero_of(&self.ctx)))
    }

    pub fn constant_term(&self) -> Result<C, RingError> {
        self.coefficient(0)
    }

    /// Lowest exponent with a nonzero coefficient among the known ones.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, C> {
        &self.coeffs
    }

    /// Product, truncated to the order that both factors determine.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.point, other.point, "contract violation: expansion points differ");
        assert_eq!(self.half, other.half, "contract violation: half flags differ");
        let va = self.valuation().unwrap_or(self.order);
        let vb = other.valuation().unwrap_or(other.order);
        let order = (self.order + vb).min(other.order + va);
        let mut out: BTreeMap<i64, C> = BTreeMap::new();
        for (i, a) in &self.coeffs {
            for (j, b) in &other.coeffs {
                if i + j > order {
                    break;
                }
                let p = a.times(b);
                let e = out.entry(i + j).or_insert_with(|| C::zero_of(&self.ctx));
                *e = e.plus(&p);
            }
        }
        Self::new(self.point, self.half, self.ctx.clone(), out, order)
    }

    /// Drop everything above `order`.
    pub fn truncate(&self, order: i64) -> Self {
        Self::new(self.point, self.half, self.ctx.clone(), self.coeffs.clone(), order.min(self.order))
    }
}
