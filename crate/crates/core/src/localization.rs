//! Euler classes, residues, A-hat factors, the crepant factor and
//! Atiyah-Segal localization.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::One;
use serde_json::{json, Value};

use crate::linalg::dot_i;
use crate::ring::{
    int, vars, Coefficient, ExpansionPoint, MultiLaurent, Rational, Ring, RingError, RootOfUnity, Vars, ZRational,
};
use crate::toric::{ToricError, ToricGitDatum};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LocalizationError {
    #[error("weight {0} must be nonzero")]
    ZeroWeight(i64),
    #[error("Chern root {0} is not invertible")]
    NotInvertible(String),
    #[error("no square root of {0} in the coefficient ring")]
    NoSquareRoot(String),
    #[error("root of unity {0} is not expressible in the coefficient ring")]
    RootOfUnity(RootOfUnity),
    #[error("one-parameter subgroup {one_ps:?} pairs to zero with tangent weight {weight:?} at fixed point {point}")]
    Genericity { one_ps: Vec<i64>, weight: Vec<i64>, point: usize },
    #[error("localized sum does not clear to a Laurent polynomial: {0}")]
    Clearance(String),
    #[error("fixed point {0} is an orbifold point; localization there is not supported")]
    Orbifold(usize),
    #[error("input has {points} fixed points but {classes} class restrictions")]
    Shape { points: usize, classes: usize },
    #[error(transparent)]
    Toric(#[from] ToricError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// `z^weight` tensored with a bundle with the given Chern roots, twisted by a root of unity.
#[derive(Debug, Clone, PartialEq)]
pub struct IsotypicComponent<C: Ring> {
    pub weight: i64,
    pub roots: Vec<C>,
    pub root_of_unity: Option<RootOfUnity>,
}

/// The moving part of a normal bundle, split by weight.
#[derive(Debug, Clone, PartialEq)]
pub struct IsotypicBundle<C: Ring> {
    pub ctx: C::Ctx,
    pub components: Vec<IsotypicComponent<C>>,
}

impl<C: Coefficient> IsotypicBundle<C> {
    pub fn new(ctx: &C::Ctx, components: Vec<IsotypicComponent<C>>) -> Result<Self, LocalizationError> {
        for c in &components {
            if c.weight == 0 {
                return Err(LocalizationError::ZeroWeight(0));
            }
        }
        Ok(IsotypicBundle { ctx: ctx.clone(), components })
    }

    /// Line bundles with trivial Chern roots, one per weight.
    pub fn trivial(ctx: &C::Ctx, weights: &[i64]) -> Result<Self, LocalizationError> {
        let comps =
            weights.iter().map(|&w| IsotypicComponent { weight: w, roots: vec![C::one_of(ctx)], root_of_unity: None });
        Self::new(ctx, comps.collect())
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut components = self.components.clone();
        components.extend(other.components.iter().cloned());
        IsotypicBundle { ctx: self.ctx.clone(), components }
    }

    pub fn rank(&self) -> usize {
        self.components.iter().map(|c| c.roots.len()).sum()
    }

    /// `(weight, root with the root of unity folded in)` for every Chern root.
    fn twisted_roots(&self) -> Result<Vec<(i64, C)>, LocalizationError> {
        let mut out = Vec::new();
        for comp in &self.components {
            let zeta = match &comp.root_of_unity {
                Some(z) => C::root_of_unity(&self.ctx, z).ok_or(LocalizationError::RootOfUnity(z.clone()))?,
                None => C::one_of(&self.ctx),
            };
            for c in &comp.roots {
                out.push((comp.weight, zeta.times(c)));
            }
        }
        Ok(out)
    }

    /// Square roots `(zeta c)^(1/2)`, taking `zeta^(1/2)` as the root of unity of half the angle.
    fn half_roots(&self) -> Result<Vec<(i64, C)>, LocalizationError> {
        let mut out = Vec::new();
        for comp in &self.components {
            let zeta = match &comp.root_of_unity {
                Some(z) => {
                    let half = RootOfUnity::new(z.num() as i64, 2 * z.order()).expect("positive order");
                    C::root_of_unity(&self.ctx, &half).ok_or(LocalizationError::RootOfUnity(half))?
                }
                None => C::one_of(&self.ctx),
            };
            for c in &comp.roots {
                let s = c.try_sqrt().ok_or_else(|| LocalizationError::NoSquareRoot(format!("{c:?}")))?;
                out.push((comp.weight, zeta.times(&s)));
            }
        }
        Ok(out)
    }
}

/// `Eul = prod (1 - z^-m (zeta c)^-1)`.
pub fn euler_class<C: Coefficient>(e: &IsotypicBundle<C>) -> Result<ZRational<C>, LocalizationError> {
    let mut out = ZRational::one(&e.ctx);
    for (m, c) in e.twisted_roots()? {
        let inv = c.try_inverse().ok_or_else(|| LocalizationError::NotInvertible(format!("{c:?}")))?;
        out = out.mul_factor(-m, &inv);
    }
    Ok(out)
}

/// `Eul^-1`.
pub fn inverse_euler_class<C: Coefficient>(e: &IsotypicBundle<C>) -> Result<ZRational<C>, LocalizationError> {
    let mut out = ZRational::one(&e.ctx);
    for (m, c) in e.twisted_roots()? {
        let inv = c.try_inverse().ok_or_else(|| LocalizationError::NotInvertible(format!("{c:?}")))?;
        out = out.div_factor(-m, &inv)?;
    }
    Ok(out)
}

/// Difference of the constant terms of the expansions at infinity and at zero.
pub fn residue<C: Ring>(f: &ZRational<C>) -> Result<C, LocalizationError> {
    let at_infinity = f.expand_at(ExpansionPoint::Infinity, 0)?.constant_term()?;
    let at_zero = f.expand_at(ExpansionPoint::Zero, 0)?.constant_term()?;
    Ok(at_infinity.minus(&at_zero))
}

/// `prod (a^(1/2) - a^(-1/2))^-1` over `a = zeta c z^m`, in the variable `z^(1/2)`.
pub fn a_hat_factor<C: Coefficient>(e: &IsotypicBundle<C>) -> Result<ZRational<C>, LocalizationError> {
    let mut out = ZRational::one(&e.ctx).promote_half();
    for (m, s) in e.half_roots()? {
        // (s w^m - s^-1 w^-m)^-1 = s^-1 w^-m / (1 - s^-2 w^-2m)
        let s_inv = s.try_inverse().ok_or_else(|| LocalizationError::NotInvertible(format!("{s:?}")))?;
        out = out.mul_monomial(-m, &s_inv).div_factor(-2 * m, &s_inv.times(&s_inv))?;
    }
    Ok(out)
}

/// `(det E)^(1/2) = prod (zeta c)^(1/2) z^(m/2)`.
pub fn det_half<C: Coefficient>(e: &IsotypicBundle<C>) -> Result<ZRational<C>, LocalizationError> {
    let mut out = ZRational::one(&e.ctx).promote_half();
    for (m, s) in e.half_roots()? {
        out = out.mul_monomial(m, &s);
    }
    Ok(out)
}

/// `Sym(z^-1 C^n) = (1 - z^-1)^-n`.
pub fn sym_trivial(n: u32) -> ZRational<Rational> {
    let mut out = ZRational::one(&());
    for _ in 0..n {
        out = out.div_factor(-1, &Rational::one()).expect("unit");
    }
    out
}

/// A normal weight with multiplicity and an optional root of unity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct WeightMult {
    pub weight: i64,
    pub rank: u32,
    pub root_of_unity: Option<RootOfUnity>,
}

impl WeightMult {
    pub fn new(weight: i64, rank: u32) -> Self {
        WeightMult { weight, rank, root_of_unity: None }
    }
}

/// Context with a single `zetaN` able to express every `zeta^(1/2)` that occurs.
pub fn delta_context(weights: &[WeightMult]) -> Vars {
    let n = weights
        .iter()
        .filter_map(|w| w.root_of_unity.as_ref())
        .filter(|z| !z.is_one())
        .fold(1u64, |acc, z| acc.lcm(&(2 * z.order())));
    if n <= 2 {
        vars::<&str>(&[])
    } else {
        vars(&[format!("zeta{n}")])
    }
}

/// `Delta(z) = prod_j (zeta_j^(1/2) z^(mu_j/2) - zeta_j^(-1/2) z^(-mu_j/2))^(-mu_j r_j)`.
pub fn delta_factor(weights: &[WeightMult]) -> Result<ZRational<MultiLaurent>, LocalizationError> {
    let ctx = delta_context(weights);
    let mut out = ZRational::one(&ctx).promote_half();
    for w in weights {
        if w.weight == 0 {
            return Err(LocalizationError::ZeroWeight(0));
        }
        let s = match &w.root_of_unity {
            Some(z) => {
                let half = RootOfUnity::new(z.num() as i64, 2 * z.order()).expect("positive order");
                MultiLaurent::root_of_unity(&ctx, &half).ok_or(LocalizationError::RootOfUnity(half))?
            }
            None => MultiLaurent::one(&ctx),
        };
        let s_inv = s.try_inverse().expect("monomial");
        let s_inv2 = s_inv.times(&s_inv);
        let mu = w.weight;
        // f = s w^mu (1 - s^-2 w^-2mu)
        let power = mu.unsigned_abs() * w.rank as u64;
        for _ in 0..power {
            if mu < 0 {
                out = out.mul_monomial(mu, &s).mul_factor(-2 * mu, &s_inv2);
            } else {
                out = out.mul_monomial(-mu, &s_inv).div_factor(-2 * mu, &s_inv2)?;
            }
        }
    }
    Ok(out)
}

/// Whether the multiset of `(weight, rank)` is symmetric under negation.
pub fn is_simply_crepant(weights: &[WeightMult]) -> bool {
    let mut count: BTreeMap<(i64, u32), i64> = BTreeMap::new();
    for w in weights {
        *count.entry((w.weight, w.rank)).or_insert(0) += 1;
    }
    count.iter().all(|((m, r), n)| count.get(&(-m, *r)) == Some(n))
}

/// Whether a rational function in `z` is constant: the Wronskian `N' D - N D'`
/// vanishes after cyclotomic reduction.
pub fn is_z_independent(f: &ZRational<MultiLaurent>) -> bool {
    let ctx = f.context().clone();
    let num: BTreeMap<i64, MultiLaurent> = f.numerator().iter().map(|(k, c)| (k + f.zpow(), c.clone())).collect();
    let mut den: BTreeMap<i64, MultiLaurent> = BTreeMap::from([(0, MultiLaurent::one(&ctx))]);
    for g in f.den_factors() {
        let mut next: BTreeMap<i64, MultiLaurent> = BTreeMap::new();
        for (k, c) in &den {
            add_to(&mut next, *k, c.clone());
            add_to(&mut next, k + g.m, c.times(&g.c).negate());
        }
        den = next;
    }
    let deriv = |p: &BTreeMap<i64, MultiLaurent>| -> BTreeMap<i64, MultiLaurent> {
        p.iter().filter(|(k, _)| **k != 0).map(|(k, c)| (k - 1, c.scale(&int(*k)))).collect()
    };
    let (dn, dd) = (deriv(&num), deriv(&den));
    let mut w: BTreeMap<i64, MultiLaurent> = BTreeMap::new();
    for (a, x) in &dn {
        for (b, y) in &den {
            add_to(&mut w, a + b, x.times(y));
        }
    }
    for (a, x) in &num {
        for (b, y) in &dd {
            add_to(&mut w, a + b, x.times(y).negate());
        }
    }
    w.values().all(|c| c.reduce_roots().is_zero())
}

fn add_to(p: &mut BTreeMap<i64, MultiLaurent>, k: i64, c: MultiLaurent) {
    let e = p.entry(k).or_insert_with(|| MultiLaurent::zero(c.vars()));
    *e = e.plus(&c);
}

/// Report for the crepant check.
#[derive(Debug, Clone, PartialEq)]
pub struct CrepantReport {
    pub simply_crepant: bool,
    pub delta: ZRational<MultiLaurent>,
    pub z_independent: bool,
    /// The cleared constant, when `Delta` is a constant with rational value.
    pub constant: Option<Rational>,
    /// Values at `z^(1/2) = 2` and `3`, when rational.
    pub samples: Option<(Rational, Rational)>,
}

pub fn crepant_check(weights: &[WeightMult]) -> Result<CrepantReport, LocalizationError> {
    let delta = delta_factor(weights)?;
    let z_independent = is_z_independent(&delta);
    let constant = delta.clear_denominators().ok().and_then(|p| p.as_constant()).and_then(|c| c.as_constant());
    let samples = if delta.context().is_empty() {
        let eval = |v: i64| delta.evaluate(&int(v)).ok().and_then(|c| c.as_constant());
        eval(2).zip(eval(3))
    } else {
        None
    };
    Ok(CrepantReport { simply_crepant: is_simply_crepant(weights), delta, z_independent, constant, samples })
}

impl CrepantReport {
    pub fn to_json(&self) -> Value {
        json!({
            "simply_crepant": self.simply_crepant,
            "z_independent": self.z_independent,
            "delta": self.delta.to_json(),
            "delta_text": self.delta.to_string(),
            "constant": self.constant.as_ref().map(crate::ring::format_rational),
            "samples": self.samples.as_ref().map(|(a, b)| vec![crate::ring::format_rational(a), crate::ring::format_rational(b)]),
        })
    }
}

/// One isolated fixed point: tangent characters and the restricted class, as
/// integer characters of the ambient torus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointData {
    pub tangent_weights: Vec<Vec<i64>>,
    pub class: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalizationInput {
    pub points: Vec<PointData>,
    pub one_ps: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChiResult {
    /// Character in `z` after specializing along the one-parameter subgroup.
    pub character: MultiLaurent,
    pub euler_characteristic: Rational,
}

impl LocalizationInput {
    /// Fixed-point data of a smooth toric quotient with the class of the character `psi`.
    pub fn from_datum(datum: &ToricGitDatum, psi: &[i64], one_ps: Vec<i64>) -> Result<Self, LocalizationError> {
        let k = datum.k();
        let mut points = Vec::new();
        for (i, fp) in datum.fixed_points()?.into_iter().enumerate() {
            let tangent_weights = fp.integral_tangent_weights().ok_or(LocalizationError::Orbifold(i))?;
            let class_q = fp.class_character(psi, None, k);
            if class_q.iter().any(|x| !x.is_integer()) {
                return Err(LocalizationError::Orbifold(i));
            }
            let class = class_q.iter().map(|x| i64::try_from(x.to_integer()).expect("small")).collect();
            points.push(PointData { tangent_weights, class });
        }
        Ok(LocalizationInput { points, one_ps })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "one_ps": self.one_ps,
            "points": self.points.iter().map(|p| json!({"tangent_weights": p.tangent_weights, "class": p.class})).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, LocalizationError> {
        let bad = |m: &str| LocalizationError::Ring(RingError::Parse(format!("localization input: {m}")));
        let ints = |x: &Value| -> Result<Vec<i64>, LocalizationError> {
            x.as_array()
                .ok_or_else(|| bad("expected a list of integers"))?
                .iter()
                .map(|e| e.as_i64().ok_or_else(|| bad("expected an integer")))
                .collect()
        };
        let one_ps = ints(&v["one_ps"])?;
        let mut points = Vec::new();
        for p in v["points"].as_array().ok_or_else(|| bad("missing points"))? {
            let tangent_weights = p["tangent_weights"]
                .as_array()
                .ok_or_else(|| bad("missing tangent_weights"))?
                .iter()
                .map(ints)
                .collect::<Result<_, _>>()?;
            points.push(PointData { tangent_weights, class: ints(&p["class"])? });
        }
        Ok(LocalizationInput { points, one_ps })
    }
}

/// `chi = sum_F x^class / prod (1 - x^-w)`, specialized along the one-parameter subgroup.
pub fn atiyah_segal_chi(input: &LocalizationInput) -> Result<ChiResult, LocalizationError> {
    let mut total = ZRational::<Rational>::zero(&());
    for (i, p) in input.points.iter().enumerate() {
        let mut term = ZRational::monomial(&(), dot_i(&input.one_ps, &p.class), Rational::one());
        for w in &p.tangent_weights {
            let m = dot_i(&input.one_ps, w);
            if m == 0 {
                return Err(LocalizationError::Genericity { one_ps: input.one_ps.clone(), weight: w.clone(), point: i });
            }
            term = term.div_factor(-m, &Rational::one())?;
        }
        total = total.plus(&term);
    }
    let cleared = total.clear_denominators().map_err(|_| LocalizationError::Clearance(total.to_string()))?;
    let value = cleared.to_zrational().expand_at(ExpansionPoint::One, 0)?.constant_term()?;
    Ok(ChiResult { character: cleared.to_multi_laurent("z"), euler_characteristic: value })
}

/// A one-parameter subgroup pairing nonzero with every tangent weight, searched over small vectors.
pub fn generic_one_ps(points: &[PointData], k: usize, skip: usize) -> Option<Vec<i64>> {
    let mut found = 0;
    for seed in 2i64..200 {
        let a: Vec<i64> = (0..k as u32).map(|j| seed.pow(j) * if j % 2 == 0 { 1 } else { -1 }).collect();
        if points.iter().all(|p| p.tangent_weights.iter().all(|w| dot_i(&a, w) != 0)) {
            if found == skip {
                return Some(a);
            }
            found += 1;
        }
    }
    None
}
