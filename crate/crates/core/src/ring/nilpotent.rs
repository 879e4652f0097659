use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};

use super::{binomial_rational, int, Coefficient, MultiLaurent, Rational, Ring, RingError, RootOfUnity};

/// Context of a truncated nilpotent extension: base context, generator names
/// and the truncation degree.
#[derive(Clone, PartialEq, Debug)]
pub struct NilpotentCtx<C: Ring> {
    pub base: C::Ctx,
    pub generators: Arc<Vec<String>>,
    pub degree: u32,
}

impl<C: Ring> NilpotentCtx<C> {
    pub fn new<S: AsRef<str>>(base: C::Ctx, generators: &[S], degree: u32) -> Arc<Self> {
        Arc::new(NilpotentCtx {
            base,
            generators: Arc::new(generators.iter().map(|s| s.as_ref().to_string()).collect()),
            degree,
        })
    }
}

/// Polynomials over `C` in nilpotent generators `N_1..N_s`, truncated at
/// total degree `D`: every monomial of higher degree is zero.
#[derive(Clone, PartialEq, Debug)]
pub struct Truncated<C: Ring> {
    ctx: Arc<NilpotentCtx<C>>,
    terms: BTreeMap<Vec<u32>, C>,
}

/// Nilpotent extension of the Laurent polynomial ring.
pub type NilpotentCoeff = Truncated<MultiLaurent>;

impl<C: Ring> Truncated<C> {
    pub fn lift(ctx: &Arc<NilpotentCtx<C>>, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.vanishes() {
            terms.insert(vec![0; ctx.generators.len()], c);
        }
        Truncated { ctx: ctx.clone(), terms }
    }

    /// The generator `N_i`.
    pub fn generator(ctx: &Arc<NilpotentCtx<C>>, i: usize) -> Self {
        let mut e = vec![0; ctx.generators.len()];
        e[i] = 1;
        Self::from_terms(ctx, [(e, C::one_of(&ctx.base))])
    }

    pub fn from_terms<I: IntoIterator<Item = (Vec<u32>, C)>>(ctx: &Arc<NilpotentCtx<C>>, it: I) -> Self {
        let mut out = Truncated { ctx: ctx.clone(), terms: BTreeMap::new() };
        for (e, c) in it {
            out.add_term(e, c);
        }
        out
    }

    fn add_term(&mut self, e: Vec<u32>, c: C) {
        assert_eq!(e.len(), self.ctx.generators.len(), "exponent length must match generators");
        if e.iter().sum::<u32>() > self.ctx.degree || c.vanishes() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(old) => {
                let s = old.plus(&c);
                if s.vanishes() {
                    self.terms.remove(&e);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn context(&self) -> &Arc<NilpotentCtx<C>> {
        &self.ctx
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, C> {
        &self.terms
    }

    /// Value with every generator set to zero.
    pub fn base_part(&self) -> C {
        self.terms
            .get(&vec![0; self.ctx.generators.len()])
            .cloned()
            .unwrap_or_else(|| C::zero_of(&self.ctx.base))
    }

    /// `self - base_part()`.
    pub fn nilpotent_part(&self) -> Self {
        let zero = vec![0; self.ctx.generators.len()];
        Truncated {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().filter(|(e, _)| **e != zero).map(|(e, c)| (e.clone(), c.clone())).collect(),
        }
    }

    /// Apply a ring map to every coefficient.
    pub fn map_base<D: Ring>(&self, ctx: &Arc<NilpotentCtx<D>>, f: impl Fn(&C) -> D) -> Truncated<D> {
        Truncated::from_terms(ctx, self.terms.iter().map(|(e, c)| (e.clone(), f(c))))
    }
}

impl<C: Ring> Ring for Truncated<C> {
    type Ctx = Arc<NilpotentCtx<C>>;

    fn ctx(&self) -> Self::Ctx {
        self.ctx.clone()
    }
    fn zero_of(ctx: &Self::Ctx) -> Self {
        Truncated { ctx: ctx.clone(), terms: BTreeMap::new() }
    }
    fn one_of(ctx: &Self::Ctx) -> Self {
        Self::lift(ctx, C::one_of(&ctx.base))
    }
    fn from_rational(ctx: &Self::Ctx, q: &Rational) -> Self {
        Self::lift(ctx, C::from_rational(&ctx.base, q))
    }
    fn plus(&self, other: &Self) -> Self {
        assert_eq!(self.ctx, other.ctx, "contract violation: nilpotent contexts differ");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
    fn negate(&self) -> Self {
        Truncated {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.negate())).collect(),
        }
    }
    fn times(&self, other: &Self) -> Self {
        assert_eq!(self.ctx, other.ctx, "contract violation: nilpotent contexts differ");
        let mut out = Self::zero_of(&self.ctx);
        for (e1, c1) in &self.terms {
            let d1: u32 = e1.iter().sum();
            for (e2, c2) in &other.terms {
                if d1 + e2.iter().sum::<u32>() > self.ctx.degree {
                    continue;
                }
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1.times(c2));
            }
        }
        out
    }
    fn vanishes(&self) -> bool {
        self.terms.is_empty()
    }
    fn try_inverse(&self) -> Option<Self> {
        // (u + m)^-1 = u^-1 * sum_k (-u^-1 m)^k, finite because m is nilpotent.
        let u_inv = self.base_part().try_inverse()?;
        let u_inv_l = Self::lift(&self.ctx, u_inv);
        let x = u_inv_l.times(&self.nilpotent_part()).negate();
        Some(u_inv_l.times(&geometric_sum(&x, self.ctx.degree, |_| int(1))))
    }
    fn scale(&self, q: &Rational) -> Self {
        Truncated {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.scale(q)))
                .filter(|(_, c)| !c.vanishes())
                .collect(),
        }
    }
    fn to_json(&self) -> Value {
        Value::Array(self.terms.iter().map(|(e, c)| json!({"n": e, "c": c.to_json()})).collect())
    }
    fn from_json(ctx: &Self::Ctx, v: &Value) -> Result<Self, RingError> {
        let bad = |m: &str| RingError::Parse(format!("nilpotent coefficient: {m}"));
        let mut out = Self::zero_of(ctx);
        for t in v.as_array().ok_or_else(|| bad("expected a list"))? {
            let e: Vec<u32> = t["n"]
                .as_array()
                .ok_or_else(|| bad("missing n"))?
                .iter()
                .map(|x| x.as_u64().map(|k| k as u32).ok_or_else(|| bad("bad exponent")))
                .collect::<Result<_, _>>()?;
            if e.len() != ctx.generators.len() {
                return Err(bad("exponent length does not match generators"));
            }
            out.add_term(e, C::from_json(&ctx.base, &t["c"])?);
        }
        Ok(out)
    }
}

/// `sum_{k=0}^{deg} coeff(k) x^k` for nilpotent `x`.
fn geometric_sum<C: Ring>(x: &Truncated<C>, deg: u32, coeff: impl Fn(u32) -> Rational) -> Truncated<C> {
    let mut acc = Truncated::one_of(&x.ctx);
    let mut pw = Truncated::one_of(&x.ctx);
    for k in 1..=deg {
        pw = pw.times(x);
        if pw.vanishes() {
            break;
        }
        acc = acc.plus(&pw.scale(&coeff(k)));
    }
    acc
}

impl<C: Coefficient> Coefficient for Truncated<C> {
    fn try_sqrt(&self) -> Option<Self> {
        // sqrt(u (1 + x)) = sqrt(u) * sum_k C(1/2, k) x^k.
        let u = self.base_part();
        let s = u.try_sqrt()?;
        let u_inv = Self::lift(&self.ctx, u.try_inverse()?);
        let x = u_inv.times(&self.nilpotent_part());
        let half = Rational::new(1.into(), 2.into());
        Some(Self::lift(&self.ctx, s).times(&geometric_sum(&x, self.ctx.degree, |k| binomial_rational(&half, k))))
    }

    fn root_of_unity(ctx: &Self::Ctx, zeta: &RootOfUnity) -> Option<Self> {
        C::root_of_unity(&ctx.base, zeta).map(|c| Self::lift(ctx, c))
    }
}

impl<C: Ring + fmt::Display> fmt::Display for Truncated<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .zip(self.ctx.generators.iter())
                    .filter(|(k, _)| **k != 0)
                    .map(|(k, g)| if *k == 1 { g.clone() } else { format!("{g}^{k}") })
                    .collect();
                if mono.is_empty() {
                    format!("({c})")
                } else {
                    format!("({c})*{}", mono.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::laurent::vars;
    use crate::ring::rat;

    fn ctx(s: usize, d: u32) -> Arc<NilpotentCtx<MultiLaurent>> {
        let names: Vec<String> = (1..=s).map(|i| format!("N{i}")).collect();
        NilpotentCtx::new(vars(&["X"]), &names, d)
    }

    #[test]
    fn products_vanish_above_truncation() {
        // Exhaustive over s <= 3 generators and D <= 4.
        for s in 1..=3 {
            for d in 0..=4u32 {
                let c = ctx(s, d);
                let gens: Vec<NilpotentCoeff> = (0..s).map(|i| Truncated::generator(&c, i)).collect();
                let mut stack = vec![(NilpotentCoeff::one_of(&c), 0u32)];
                while let Some((p, deg)) = stack.pop() {
                    assert_eq!(p.vanishes(), deg > d, "s={s} D={d} degree {deg}");
                    if deg <= d {
                        for g in &gens {
                            stack.push((p.times(g), deg + 1));
                        }
                    }
                }
                assert_eq!(gens[0].times(&NilpotentCoeff::zero_of(&c)).base_part(), MultiLaurent::zero(&c.base));
            }
        }
    }

    #[test]
    fn inverse_and_sqrt() {
        let c = ctx(2, 3);
        let x = Truncated::lift(&c, MultiLaurent::var(&c.base, "X").unwrap());
        let a = x.plus(&Truncated::generator(&c, 0)).plus(&Truncated::generator(&c, 1).scale(&rat(3, 2)));
        let inv = a.try_inverse().unwrap();
        assert!(a.times(&inv).is_unity());
        let sq = a.times(&a).scale(&rat(4, 1));
        let r = sq.try_sqrt().unwrap();
        assert_eq!(r.times(&r), sq);
        assert!(Truncated::generator(&c, 0).try_inverse().is_none());
    }

    #[test]
    fn base_part_recovered() {
        let c = ctx(1, 2);
        let x = MultiLaurent::var(&c.base, "X").unwrap();
        let a = Truncated::lift(&c, x.clone()).plus(&Truncated::generator(&c, 0));
        assert_eq!(a.base_part(), x);
    }
}
