use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use super::{binomial, vars, ExpansionPoint, LaurentSeries, MultiLaurent, Rational, Ring, RingError};

/// Polynomial in the working variable, exponent to coefficient.
type Poly<C> = BTreeMap<i64, C>;

/// A denominator factor `1 - c w^m` in the working variable `w`.
#[derive(Debug, Clone, PartialEq)]
pub struct DenFactor<C> {
    pub m: i64,
    pub c: C,
}

/// Rational function `w^zpow * num(w) / prod (1 - c_i w^m_i)`.
///
/// The working variable `w` is `z`, or `z^(1/2)` when `half` is set. In
/// canonical form every `m_i > 0`, every `c_i` is a unit, and the numerator
/// is an honest polynomial with a nonzero constant term (its lowest power is
/// moved into `zpow`). Equality is decided by cross-multiplication.
#[derive(Debug, Clone)]
pub struct ZRational<C: Ring> {
    ctx: C::Ctx,
    half: bool,
    zpow: i64,
    num: Poly<C>,
    den: Vec<DenFactor<C>>,
}

fn padd<C: Ring>(a: &mut Poly<C>, k: i64, c: C) {
    if c.vanishes() {
        return;
    }
    match a.get_mut(&k) {
        Some(old) => {
            let s = old.plus(&c);
            if s.vanishes() {
                a.remove(&k);
            } else {
                *old = s;
            }
        }
        None => {
            a.insert(k, c);
        }
    }
}

fn pmul<C: Ring>(a: &Poly<C>, b: &Poly<C>) -> Poly<C> {
    let mut out = Poly::new();
    for (i, x) in a {
        for (j, y) in b {
            padd(&mut out, i + j, x.times(y));
        }
    }
    out
}

/// Product truncated at exponent `max`.
fn pmul_trunc<C: Ring>(a: &Poly<C>, b: &Poly<C>, max: i64) -> Poly<C> {
    let mut out = Poly::new();
    for (i, x) in a {
        for (j, y) in b {
            if i + j > max {
                break;
            }
            padd(&mut out, i + j, x.times(y));
        }
    }
    out
}

fn pshift<C: Ring>(a: &Poly<C>, k: i64) -> Poly<C> {
    a.iter().map(|(e, c)| (e + k, c.clone())).collect()
}

fn pstretch<C: Ring>(a: &Poly<C>, k: i64) -> Poly<C> {
    a.iter().map(|(e, c)| (e * k, c.clone())).collect()
}

fn factor_poly<C: Ring>(ctx: &C::Ctx, f: &DenFactor<C>) -> Poly<C> {
    let mut p = Poly::new();
    padd(&mut p, 0, C::one_of(ctx));
    padd(&mut p, f.m, f.c.negate());
    p
}

fn den_poly<C: Ring>(ctx: &C::Ctx, den: &[DenFactor<C>]) -> Poly<C> {
    let mut p = Poly::new();
    p.insert(0, C::one_of(ctx));
    for f in den {
        p = pmul(&p, &factor_poly(ctx, f));
    }
    p
}

impl<C: Ring> ZRational<C> {
    /// Assemble and canonicalize. Denominator coefficients must be units.
    pub fn from_parts(
        ctx: &C::Ctx,
        half: bool,
        zpow: i64,
        num: impl IntoIterator<Item = (i64, C)>,
        den: Vec<DenFactor<C>>,
    ) -> Result<Self, RingError> {
        let mut p = Poly::new();
        for (k, c) in num {
            padd(&mut p, k, c);
        }
        let mut out = ZRational { ctx: ctx.clone(), half, zpow, num: p, den: Vec::new() };
        for f in den {
            out = out.div_factor(f.m, &f.c)?;
        }
        Ok(out.canonical())
    }

    pub fn zero(ctx: &C::Ctx) -> Self {
        ZRational { ctx: ctx.clone(), half: false, zpow: 0, num: Poly::new(), den: Vec::new() }
    }

    pub fn one(ctx: &C::Ctx) -> Self {
        Self::constant(ctx, C::one_of(ctx))
    }

    pub fn constant(ctx: &C::Ctx, c: C) -> Self {
        Self::monomial(ctx, 0, c)
    }

    /// `c z^k`.
    pub fn monomial(ctx: &C::Ctx, k: i64, c: C) -> Self {
        let mut num = Poly::new();
        padd(&mut num, 0, c);
        ZRational { ctx: ctx.clone(), half: false, zpow: k, num, den: Vec::new() }.canonical()
    }

    /// `c z^(k/2)`, in the half-integral working variable.
    pub fn half_monomial(ctx: &C::Ctx, k: i64, c: C) -> Self {
        let mut out = Self::monomial(ctx, k, c);
        out.half = true;
        out
    }

    /// Laurent polynomial in `z`.
    pub fn from_terms(ctx: &C::Ctx, terms: impl IntoIterator<Item = (i64, C)>) -> Self {
        let mut num = Poly::new();
        for (k, c) in terms {
            padd(&mut num, k, c);
        }
        ZRational { ctx: ctx.clone(), half: false, zpow: 0, num, den: Vec::new() }.canonical()
    }

    /// The numerator factor `1 - c z^m`.
    pub fn factor(ctx: &C::Ctx, m: i64, c: C) -> Self {
        Self::from_terms(ctx, [(0, C::one_of(ctx)), (m, c.negate())])
    }

    /// `1 / (1 - c z^m)`.
    pub fn inv_factor(ctx: &C::Ctx, m: i64, c: C) -> Result<Self, RingError> {
        Self::one(ctx).div_factor(m, &c)
    }

    pub fn context(&self) -> &C::Ctx {
        &self.ctx
    }

    pub fn is_half(&self) -> bool {
        self.half
    }

    pub fn zpow(&self) -> i64 {
        self.zpow
    }

    pub fn numerator(&self) -> &BTreeMap<i64, C> {
        &self.num
    }

    pub fn den_factors(&self) -> &[DenFactor<C>] {
        &self.den
    }

    fn canonical(mut self) -> Self {
        self.num.retain(|_, c| !c.vanishes());
        if self.num.is_empty() {
            self.zpow = 0;
            self.den.clear();
            return self;
        }
        let lo = *self.num.keys().next().expect("nonempty");
        if lo != 0 {
            self.num = pshift(&self.num, -lo);
            self.zpow += lo;
        }
        self
    }

    /// Same value in the half-integral working variable.
    pub fn promote_half(&self) -> Self {
        if self.half {
            return self.clone();
        }
        ZRational {
            ctx: self.ctx.clone(),
            half: true,
            zpow: 2 * self.zpow,
            num: pstretch(&self.num, 2),
            den: self.den.iter().map(|f| DenFactor { m: 2 * f.m, c: f.c.clone() }).collect(),
        }
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        if self.half == other.half {
            (self.clone(), other.clone())
        } else {
            (self.promote_half(), other.promote_half())
        }
    }

    /// Divide by `1 - c w^m` (in the current working variable).
    pub fn div_factor(&self, m: i64, c: &C) -> Result<Self, RingError> {
        let c_inv = c.try_inverse().ok_or_else(|| RingError::NotAUnit(format!("{c:?}")))?;
        let mut out = self.clone();
        if out.num.is_empty() {
            return Ok(out);
        }
        if m == 0 {
            let one_minus = C::one_of(&self.ctx).minus(c);
            let num: Option<Poly<C>> = out.num.iter().map(|(k, a)| a.try_divide(&one_minus).map(|q| (*k, q))).collect();
            out.num = num.ok_or_else(|| RingError::NotAUnit(format!("1 - {c:?}")))?;
            return Ok(out.canonical());
        }
        if m > 0 {
            out.den.push(DenFactor { m, c: c.clone() });
        } else {
            // 1/(1 - c w^m) = -c^-1 w^-m / (1 - c^-1 w^-m)
            let s = c_inv.negate();
            out.num = out.num.iter().map(|(k, a)| (*k, a.times(&s))).collect();
            out.zpow -= m;
            out.den.push(DenFactor { m: -m, c: c_inv });
        }
        Ok(out.canonical())
    }

    /// Multiply by `1 - c w^m`, cancelling a matching denominator factor if present.
    pub fn mul_factor(&self, m: i64, c: &C) -> Self {
        let mut out = self.clone();
        if m > 0 {
            if let Some(pos) = out.den.iter().position(|f| f.m == m && &f.c == c) {
                out.den.remove(pos);
                return out;
            }
        }
        let p = factor_poly(&self.ctx, &DenFactor { m, c: c.clone() });
        let lo = m.min(0);
        out.num = pmul(&out.num, &pshift(&p, -lo));
        out.zpow += lo;
        out.canonical()
    }

    /// Multiply by `c w^k`.
    pub fn mul_monomial(&self, k: i64, c: &C) -> Self {
        let mut out = self.clone();
        out.num = out.num.iter().map(|(e, a)| (*e, a.times(c))).collect();
        out.zpow += k;
        out.canonical()
    }

    /// Drop every denominator factor that divides the numerator exactly.
    pub fn reduce(&self) -> Self {
        let mut out = self.clone();
        let mut i = 0;
        while i < out.den.len() {
            let f = factor_poly(&self.ctx, &out.den[i]);
            if let Some(q) = exact_div(&out.num, &f) {
                out.num = q;
                out.den.remove(i);
            } else {
                i += 1;
            }
        }
        out.canonical()
    }

    /// `f(z^-1)`.
    pub fn invert_variable(&self) -> Result<Self, RingError> {
        let num: Vec<(i64, C)> = self.num.iter().map(|(k, c)| (-k, c.clone())).collect();
        let den = self.den.iter().map(|f| DenFactor { m: -f.m, c: f.c.clone() }).collect();
        Self::from_parts(&self.ctx, self.half, -self.zpow, num, den)
    }

    /// Truncated Laurent expansion at `point`, exact through `order`.
    ///
    /// Orders are counted in the working variable (`z^(1/2)` when half).
    pub fn expand_at(&self, point: ExpansionPoint, order: i64) -> Result<LaurentSeries<C>, RingError> {
        match point {
            ExpansionPoint::Zero => Ok(self.expand_zero(order, ExpansionPoint::Zero)),
            ExpansionPoint::Infinity => Ok(self.invert_variable()?.expand_zero(order, ExpansionPoint::Infinity)),
            ExpansionPoint::One => self.expand_one(order),
        }
    }

    fn expand_zero(&self, order: i64, point: ExpansionPoint) -> LaurentSeries<C> {
        let need = order - self.zpow;
        let mut s: Poly<C> = Poly::new();
        if need >= 0 {
            s = self.num.range(..=need).map(|(k, c)| (*k, c.clone())).collect();
            for f in &self.den {
                let mut geo = Poly::new();
                let mut pw = C::one_of(&self.ctx);
                let mut e = 0;
                while e <= need {
                    geo.insert(e, pw.clone());
                    pw = pw.times(&f.c);
                    e += f.m;
                }
                s = pmul_trunc(&s, &geo, need);
            }
        }
        LaurentSeries::new(point, self.half, self.ctx.clone(), pshift(&s, self.zpow), order)
    }

    fn expand_one(&self, order: i64) -> Result<LaurentSeries<C>, RingError> {
        let one = C::one_of(&self.ctx);
        // Denominator in u = w - 1, split as u^v * (unit + ...).
        let mut den_u: Poly<C> = Poly::new();
        den_u.insert(0, one.clone());
        let mut v_total = 0i64;
        for f in &self.den {
            let mut p: Poly<C> = Poly::new();
            padd(&mut p, 0, one.minus(&f.c));
            for k in 1..=f.m {
                padd(&mut p, k, f.c.scale(&Rational::from_integer(-binomial(f.m, k))));
            }
            let (&v, lead) = p.iter().next().expect("factor is nonzero");
            lead.try_inverse()
                .ok_or_else(|| RingError::NotAUnit(format!("leading coefficient of a factor at z = 1: {lead:?}")))?;
            v_total += v;
            den_u = pmul(&den_u, &pshift(&p, -v));
        }
        let top = order + v_total;
        // Numerator w^zpow * num(w) with w = 1 + u, through u^top.
        let mut num_u: Poly<C> = Poly::new();
        if top >= 0 {
            for (k, a) in &self.num {
                let e = self.zpow + k;
                for j in 0..=top {
                    let b = binomial(e, j);
                    if e >= 0 && j > e {
                        break;
                    }
                    padd(&mut num_u, j, a.scale(&Rational::from_integer(b)));
                }
            }
        }
        if let Some((&vn, _)) = num_u.iter().next() {
            if vn < v_total {
                return Err(RingError::Pole { order: (v_total - vn) as u32 });
            }
        }
        // Series division by den_u, whose constant term is a unit.
        let d0_inv = den_u[&0].try_inverse().expect("checked above");
        let mut q: Poly<C> = Poly::new();
        for k in 0..=top.max(-1) {
            let mut acc = num_u.get(&k).cloned().unwrap_or_else(|| C::zero_of(&self.ctx));
            for (j, d) in den_u.range(1..=k.max(1)).filter(|(j, _)| **j <= k) {
                if let Some(prev) = q.get(&(k - j)) {
                    acc = acc.minus(&d.times(prev));
                }
            }
            padd(&mut q, k, acc.times(&d0_inv));
        }
        Ok(LaurentSeries::new(ExpansionPoint::One, self.half, self.ctx.clone(), pshift(&q, -v_total), order))
    }

    /// The Laurent polynomial quotient, if the denominator divides the numerator.
    pub fn clear_denominators(&self) -> Result<ZLaurent<C>, RingError> {
        let d = den_poly(&self.ctx, &self.den);
        let q = exact_div(&self.num, &d).ok_or(RingError::NotDivisible)?;
        Ok(ZLaurent { ctx: self.ctx.clone(), half: self.half, terms: pshift(&q, self.zpow) })
    }

    /// Value at `w = value` of the working variable.
    pub fn evaluate(&self, value: &Rational) -> Result<C, RingError> {
        let pw = |e: i64| -> Result<C, RingError> {
            let r = Ring::ipow(value, e).ok_or_else(|| RingError::NotAUnit("zero to a negative power".into()))?;
            Ok(C::from_rational(&self.ctx, &r))
        };
        let mut acc = C::zero_of(&self.ctx);
        for (k, a) in &self.num {
            acc = acc.plus(&a.times(&pw(k + self.zpow)?));
        }
        for f in &self.den {
            let d = C::one_of(&self.ctx).minus(&f.c.times(&pw(f.m)?));
            acc = acc.times(&d.try_inverse().ok_or_else(|| RingError::NotAUnit("denominator vanishes".into()))?);
        }
        Ok(acc)
    }

    /// Apply a coefficient map. Images of denominator coefficients must be units.
    pub fn map_coeffs<D: Ring>(&self, ctx: &D::Ctx, f: impl Fn(&C) -> D) -> Result<ZRational<D>, RingError> {
        ZRational::from_parts(
            ctx,
            self.half,
            self.zpow,
            self.num.iter().map(|(k, c)| (*k, f(c))),
            self.den.iter().map(|g| DenFactor { m: g.m, c: f(&g.c) }).collect(),
        )
    }

    pub fn to_json(&self) -> Value {
        json!({
            "zpow": self.zpow,
            "num": self.num.iter().map(|(k, c)| json!({"e": k, "c": c.to_json()})).collect::<Vec<_>>(),
            "den_factors": self.den.iter().map(|f| json!({"m": f.m, "c": f.c.to_json()})).collect::<Vec<_>>(),
            "half": self.half,
        })
    }

    pub fn from_json(ctx: &C::Ctx, v: &Value) -> Result<Self, RingError> {
        let bad = |m: &str| RingError::Parse(format!("rational function: {m}"));
        let zpow = v["zpow"].as_i64().ok_or_else(|| bad("missing zpow"))?;
        let half = v["half"].as_bool().ok_or_else(|| bad("missing half"))?;
        let mut num = Vec::new();
        for t in v["num"].as_array().ok_or_else(|| bad("missing num"))? {
            num.push((t["e"].as_i64().ok_or_else(|| bad("bad exponent"))?, C::from_json(ctx, &t["c"])?));
        }
        let mut den = Vec::new();
        for t in v["den_factors"].as_array().ok_or_else(|| bad("missing den_factors"))? {
            let m = t["m"].as_i64().ok_or_else(|| bad("bad m"))?;
            if m == 0 {
                return Err(bad("factor with m = 0"));
            }
            den.push(DenFactor { m, c: C::from_json(ctx, &t["c"])? });
        }
        Self::from_parts(ctx, half, zpow, num, den)
    }

    /// Cross-multiplied numerators `(self.num * other.den, other.num * self.den)` on a common shift.
    fn cross(&self, other: &Self) -> (Poly<C>, Poly<C>) {
        let a = pmul(&self.num, &den_poly(&self.ctx, &other.den));
        let b = pmul(&other.num, &den_poly(&self.ctx, &self.den));
        let lo = self.zpow.min(other.zpow);
        (pshift(&a, self.zpow - lo), pshift(&b, other.zpow - lo))
    }
}

/// Exact quotient `num / den` of polynomials with `den[0] = 1`, if it exists.
fn exact_div<C: Ring>(num: &Poly<C>, den: &Poly<C>) -> Option<Poly<C>> {
    if num.is_empty() {
        return Some(Poly::new());
    }
    let dd = *den.keys().next_back().expect("nonzero");
    let nd = *num.keys().next_back().expect("nonempty");
    let nlo = *num.keys().next().expect("nonempty");
    debug_assert!(den.get(&0).is_some_and(|c| c.is_unity()));
    if nd - dd < nlo {
        return None;
    }
    let mut q: Poly<C> = Poly::new();
    let mut rem = num.clone();
    for k in nlo..=nd - dd {
        let Some(c) = rem.get(&k).cloned() else { continue };
        for (j, d) in den {
            padd(&mut rem, k + j, c.times(d).negate());
        }
        q.insert(k, c);
    }
    rem.is_empty().then_some(q)
}

impl<C: Ring> PartialEq for ZRational<C> {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.aligned(other);
        let (x, y) = a.cross(&b);
        x == y
    }
}

impl<C: Ring> Ring for ZRational<C> {
    type Ctx = C::Ctx;

    fn ctx(&self) -> C::Ctx {
        self.ctx.clone()
    }
    fn zero_of(ctx: &C::Ctx) -> Self {
        ZRational::zero(ctx)
    }
    fn one_of(ctx: &C::Ctx) -> Self {
        ZRational::one(ctx)
    }
    fn from_rational(ctx: &C::Ctx, q: &Rational) -> Self {
        ZRational::constant(ctx, C::from_rational(ctx, q))
    }
    fn plus(&self, other: &Self) -> Self {
        if other.num.is_empty() {
            return self.clone();
        }
        if self.num.is_empty() {
            return other.clone();
        }
        let (a, b) = self.aligned(other);
        // Common denominator: the multiset union.
        let mut unmatched_b: Vec<DenFactor<C>> = Vec::new();
        let mut used = vec![false; a.den.len()];
        for f in &b.den {
            match a.den.iter().enumerate().position(|(i, g)| !used[i] && g == f) {
                Some(i) => used[i] = true,
                None => unmatched_b.push(f.clone()),
            }
        }
        let unmatched_a: Vec<DenFactor<C>> =
            a.den.iter().zip(&used).filter(|(_, u)| !**u).map(|(f, _)| f.clone()).collect();
        let x = pmul(&a.num, &den_poly(&a.ctx, &unmatched_b));
        let y = pmul(&b.num, &den_poly(&a.ctx, &unmatched_a));
        let lo = a.zpow.min(b.zpow);
        let mut num = pshift(&x, a.zpow - lo);
        for (k, c) in pshift(&y, b.zpow - lo) {
            padd(&mut num, k, c);
        }
        let mut den = a.den.clone();
        den.extend(unmatched_b);
        ZRational { ctx: a.ctx.clone(), half: a.half, zpow: lo, num, den }.canonical()
    }
    fn negate(&self) -> Self {
        let mut out = self.clone();
        out.num = out.num.iter().map(|(k, c)| (*k, c.negate())).collect();
        out
    }
    fn times(&self, other: &Self) -> Self {
        if self.num.is_empty() || other.num.is_empty() {
            return Self::zero(&self.ctx);
        }
        let (a, b) = self.aligned(other);
        let mut den = a.den.clone();
        den.extend(b.den.iter().cloned());
        ZRational { ctx: a.ctx.clone(), half: a.half, zpow: a.zpow + b.zpow, num: pmul(&a.num, &b.num), den }
            .canonical()
    }
    fn vanishes(&self) -> bool {
        self.num.is_empty()
    }
    fn try_inverse(&self) -> Option<Self> {
        if self.num.len() != 1 {
            return None;
        }
        let (_, c) = self.num.iter().next().expect("one term");
        let c_inv = c.try_inverse()?;
        let mut num = Poly::new();
        num.insert(0, c_inv);
        for f in &self.den {
            num = pmul(&num, &factor_poly(&self.ctx, f));
        }
        Some(ZRational { ctx: self.ctx.clone(), half: self.half, zpow: -self.zpow, num, den: Vec::new() }.canonical())
    }
    fn scale(&self, q: &Rational) -> Self {
        let mut out = self.clone();
        out.num = out.num.iter().map(|(k, c)| (*k, c.scale(q))).collect();
        out.canonical()
    }
    fn to_json(&self) -> Value {
        ZRational::to_json(self)
    }
    fn from_json(ctx: &C::Ctx, v: &Value) -> Result<Self, RingError> {
        ZRational::from_json(ctx, v)
    }
}

impl<C: Ring + fmt::Display> fmt::Display for ZRational<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num.is_empty() {
            return write!(f, "0");
        }
        let var = if self.half { "z^(1/2)" } else { "z" };
        let pw = |k: i64| if k == 1 { var.to_string() } else { format!("{var}^{k}") };
        let num: Vec<String> = self
            .num
            .iter()
            .map(|(k, c)| if *k == 0 { format!("({c})") } else { format!("({c})*{}", pw(*k)) })
            .collect();
        if self.zpow != 0 {
            write!(f, "{}*", pw(self.zpow))?;
        }
        write!(f, "[{}]", num.join(" + "))?;
        for d in &self.den {
            write!(f, "/(1 - ({})*{})", d.c, pw(d.m))?;
        }
        Ok(())
    }
}

/// Laurent polynomial in the working variable, the result of clearing denominators.
#[derive(Debug, Clone, PartialEq)]
pub struct ZLaurent<C: Ring> {
    ctx: C::Ctx,
    pub half: bool,
    terms: BTreeMap<i64, C>,
}

impl<C: Ring> ZLaurent<C> {
    pub fn terms(&self) -> &BTreeMap<i64, C> {
        &self.terms
    }

    pub fn coefficient(&self, k: i64) -> C {
        self.terms.get(&k).cloned().unwrap_or_else(|| C::zero_of(&self.ctx))
    }

    /// The value if no positive or negative powers survive.
    pub fn as_constant(&self) -> Option<C> {
        match self.terms.len() {
            0 => Some(C::zero_of(&self.ctx)),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    /// Sum of all coefficients, the value at `z = 1`.
    pub fn value_at_one(&self) -> C {
        self.terms.values().fold(C::zero_of(&self.ctx), |acc, c| acc.plus(c))
    }

    pub fn to_zrational(&self) -> ZRational<C> {
        let mut out = ZRational::from_terms(&self.ctx, self.terms.iter().map(|(k, c)| (*k, c.clone())));
        out.half = self.half;
        out
    }
}

impl ZLaurent<MultiLaurent> {
    /// Flatten into one Laurent polynomial with `z_name` appended to the variables.
    pub fn to_multi_laurent(&self, z_name: &str) -> MultiLaurent {
        let mut names: Vec<String> = self.ctx.to_vec();
        names.push(z_name.to_string());
        let target = vars(&names);
        let terms = self.terms.iter().flat_map(|(k, c)| {
            c.terms().iter().map(move |(e, q)| {
                let mut ne = e.clone();
                ne.push(*k);
                (ne, q.clone())
            })
        });
        MultiLaurent::from_terms(&target, terms)
    }
}

impl ZLaurent<Rational> {
    /// As a Laurent polynomial in the single variable `z_name`.
    pub fn to_multi_laurent(&self, z_name: &str) -> MultiLaurent {
        let target = vars(&[z_name]);
        MultiLaurent::from_terms(&target, self.terms.iter().map(|(k, c)| (vec![*k], c.clone())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{binomial, int};

    type Q = ZRational<Rational>;

    fn q_factor(m: i64) -> Q {
        Q::factor(&(), m, int(1))
    }

    #[test]
    fn first_expansions() {
        let f = Q::inv_factor(&(), -1, int(1)).unwrap();
        assert_eq!(f.expand_at(ExpansionPoint::Zero, 0).unwrap().constant_term().unwrap(), int(0));
        let s = f.expand_at(ExpansionPoint::Zero, 3).unwrap();
        assert_eq!(s.coefficient(1).unwrap(), int(-1));
        assert_eq!(s.coefficient(3).unwrap(), int(-1));
        assert_eq!(f.expand_at(ExpansionPoint::Infinity, 0).unwrap().constant_term().unwrap(), int(1));
        assert_eq!(f.expand_at(ExpansionPoint::Infinity, 2).unwrap().coefficient(2).unwrap(), int(1));
    }

    #[test]
    fn symmetric_power_constant_terms() {
        // Brute-force oracle: coefficient of u^k in (sum_j u^j)^(n+1).
        for n in 0..=4i64 {
            for k in 0..=6i64 {
                let mut f = Q::monomial(&(), k, int(1));
                for _ in 0..=n {
                    f = f.div_factor(-1, &int(1)).unwrap();
                }
                let got = f.expand_at(ExpansionPoint::Infinity, 0).unwrap().constant_term().unwrap();
                let mut series = vec![int(0); (k + 1) as usize];
                series[0] = int(1);
                for _ in 0..=n {
                    let mut next = vec![int(0); (k + 1) as usize];
                    for i in 0..=k as usize {
                        for j in 0..=i {
                            next[i] += &series[j];
                        }
                    }
                    series = next;
                }
                assert_eq!(got, series[k as usize].clone());
                assert_eq!(got, Rational::from_integer(binomial(n + k, n)));
            }
        }
    }

    #[test]
    fn clearing_denominators() {
        let f = q_factor(2).div_factor(1, &int(1)).unwrap();
        let l = f.clear_denominators().unwrap();
        assert_eq!(l.terms().len(), 2);
        assert_eq!(l.coefficient(0), int(1));
        assert_eq!(l.coefficient(1), int(1));
        let g = Q::from_terms(&(), [(1, int(1)), (4, int(-1))]).div_factor(1, &int(1)).unwrap();
        let l = g.clear_denominators().unwrap();
        assert_eq!(l.to_multi_laurent("z").to_string(), "z^3 + z^2 + z");
        let h = Q::inv_factor(&(), 1, int(2)).unwrap();
        assert_eq!(h.clear_denominators(), Err(RingError::NotDivisible));
    }

    #[test]
    fn laurent_identity_cancels() {
        let v = vars(&["X"]);
        let xi = MultiLaurent::var_pow(&v, "X", -1).unwrap();
        let f = ZRational::factor(&v, 1, xi.clone()).div_factor(1, &xi).unwrap();
        let l = f.clear_denominators().unwrap();
        assert_eq!(l.as_constant(), Some(MultiLaurent::one(&v)));
        assert!(f.mul_factor(1, &xi).den_factors().is_empty() || f.is_unity());
    }

    #[test]
    fn equality_is_by_cross_multiplication() {
        // 1/(1 - z^-1) = -z/(1 - z)
        let a = Q::inv_factor(&(), -1, int(1)).unwrap();
        let b = Q::inv_factor(&(), 1, int(1)).unwrap().mul_monomial(1, &int(-1));
        assert_eq!(a, b);
        // z^(1/2) squared is z.
        let h = Q::half_monomial(&(), 1, int(1));
        assert_eq!(h.times(&h), Q::monomial(&(), 1, int(1)));
        assert_ne!(h, Q::monomial(&(), 1, int(1)));
    }

    #[test]
    fn expansion_at_one() {
        // (1 - z^2)/(1 - z) = 1 + z, value 2 at z = 1.
        let f = q_factor(2).div_factor(1, &int(1)).unwrap();
        let s = f.expand_at(ExpansionPoint::One, 2).unwrap();
        assert_eq!(s.coefficient(0).unwrap(), int(2));
        assert_eq!(s.coefficient(1).unwrap(), int(1));
        assert_eq!(s.coefficient(2).unwrap(), int(0));
        let g = Q::inv_factor(&(), 1, int(1)).unwrap().times(&Q::inv_factor(&(), -1, int(1)).unwrap());
        assert_eq!(g.expand_at(ExpansionPoint::One, 0), Err(RingError::Pole { order: 2 }));
        // z^-2 at one: 1 - 2u + 3u^2.
        let h = Q::monomial(&(), -2, int(1)).expand_at(ExpansionPoint::One, 2).unwrap();
        assert_eq!(h.coefficient(2).unwrap(), int(3));
    }

    #[test]
    fn json_roundtrip() {
        let v = vars(&["X"]);
        let xi = MultiLaurent::var_pow(&v, "X", -1).unwrap();
        let f = ZRational::inv_factor(&v, 2, xi.clone()).unwrap().mul_monomial(-3, &xi).promote_half();
        let back = ZRational::<MultiLaurent>::from_json(&v, &f.to_json()).unwrap();
        assert_eq!(back.to_json(), f.to_json());
        assert_eq!(back, f);
    }

    #[test]
    fn evaluation() {
        let f = Q::inv_factor(&(), 1, int(1)).unwrap();
        assert_eq!(f.evaluate(&int(3)).unwrap(), crate::ring::rat(-1, 2));
        assert!(f.evaluate(&int(1)).is_err());
    }
}
