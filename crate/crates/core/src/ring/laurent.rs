use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::{
    cyclotomic_polynomial, format_rational, parse_rational, rational_sqrt, Coefficient, Rational,
    Ring, RingError, RootOfUnity,
};

/// Exponent vector, one slot per variable.
pub type Exponent = Vec<i64>;

/// Shared, ordered list of variable names.
pub type Vars = Arc<Vec<String>>;

/// Build a variable list from names.
pub fn vars<S: AsRef<str>>(names: &[S]) -> Vars {
    Arc::new(names.iter().map(|s| s.as_ref().to_string()).collect())
}

/// Multivariate Laurent polynomial with rational coefficients.
///
/// Terms are kept in a `BTreeMap`, so iteration is lexicographic in the
/// exponent vectors and zero coefficients are never stored.
///
/// Variables named `zetaN` are treated as formal units during arithmetic;
/// [`MultiLaurent::reduce_roots`] maps them into the cyclotomic field.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiLaurent {
    vars: Vars,
    terms: BTreeMap<Exponent, Rational>,
}

impl MultiLaurent {
    pub fn zero(vars: &Vars) -> Self {
        MultiLaurent { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &Vars, q: Rational) -> Self {
        Self::monomial(vars, vec![0; vars.len()], q)
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, <Rational as One>::one())
    }

    pub fn monomial(vars: &Vars, exp: Exponent, coeff: Rational) -> Self {
        assert_eq!(exp.len(), vars.len(), "exponent length must match variable count");
        let mut terms = BTreeMap::new();
        if !Zero::is_zero(&coeff) {
            terms.insert(exp, coeff);
        }
        MultiLaurent { vars: vars.clone(), terms }
    }

    /// The variable `name` to the power `power`.
    pub fn var_pow(vars: &Vars, name: &str, power: i64) -> Result<Self, RingError> {
        let i = index_of(vars, name)?;
        let mut exp = vec![0; vars.len()];
        exp[i] = power;
        Ok(Self::monomial(vars, exp, <Rational as One>::one()))
    }

    pub fn var(vars: &Vars, name: &str) -> Result<Self, RingError> {
        Self::var_pow(vars, name, 1)
    }

    /// Sum of the given terms; repeated exponents accumulate.
    pub fn from_terms<I: IntoIterator<Item = (Exponent, Rational)>>(vars: &Vars, terms: I) -> Self {
        let mut out = Self::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent length must match variable count");
            out.add_term(e, c);
        }
        out
    }

    fn add_term(&mut self, e: Exponent, c: Rational) {
        if Zero::is_zero(&c) {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if Zero::is_zero(o.get()) {
                    o.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Result<usize, RingError> {
        index_of(&self.vars, name)
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, Rational> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exp: &[i64]) -> Rational {
        self.terms.get(exp).cloned().unwrap_or_else(<Rational as Zero>::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&vec![0; self.nvars()])
    }

    /// The rational value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(<Rational as Zero>::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().expect("one term");
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// `(exponent, coefficient)` if this is a single nonzero term.
    pub fn as_monomial(&self) -> Option<(&Exponent, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    fn check_vars(&self, other: &Self) -> Result<(), RingError> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(RingError::VariableMismatch {
                left: self.vars.to_vec(),
                right: other.vars.to_vec(),
            })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, RingError> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, RingError> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, RingError> {
        self.check_vars(other)?;
        let mut out = Self::zero(&self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if Zero::is_zero(q) {
            return Self::zero(&self.vars);
        }
        MultiLaurent {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * q)).collect(),
        }
    }

    /// Multiply by `coeff * x^exp`.
    pub fn mul_monomial(&self, exp: &[i64], coeff: &Rational) -> Self {
        if Zero::is_zero(coeff) {
            return Self::zero(&self.vars);
        }
        MultiLaurent {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(exp).map(|(a, b)| a + b).collect(), c * coeff))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        Ring::pow(self, e)
    }

    /// Inverse of a single-term element.
    pub fn monomial_inverse(&self) -> Option<Self> {
        let (e, c) = self.as_monomial()?;
        Some(Self::monomial(&self.vars, e.iter().map(|x| -x).collect(), c.recip()))
    }

    /// Exact quotient by a monomial or a binomial, when it exists.
    pub fn divide_exact(&self, d: &Self) -> Option<Self> {
        if let Some(inv) = d.monomial_inverse() {
            return Some(self * &inv);
        }
        if d.terms.len() != 2 {
            return None;
        }
        // d = c0 x^v0 (1 - a x^e)
        let mut it = d.terms.iter();
        let (v0, c0) = it.next()?;
        let (v1, c1) = it.next()?;
        let step: Vec<i64> = v1.iter().zip(v0).map(|(a, b)| a - b).collect();
        let a = -(c1 / c0);
        let height = |v: &[i64]| -> i64 { v.iter().zip(&step).map(|(x, y)| x * y).sum() };
        let top = self.terms.keys().map(|v| height(v)).max();
        let mut rem = self.clone();
        let mut quot = Self::zero(&self.vars);
        while let Some(v) = rem.terms.keys().min_by_key(|v| height(v)).cloned() {
            if Some(height(&v)) > top {
                return None;
            }
            let p = rem.terms[&v].clone();
            let shifted: Vec<i64> = v.iter().zip(&step).map(|(x, y)| x + y).collect();
            rem.add_term(v.clone(), -p.clone());
            rem.add_term(shifted, &a * &p);
            quot.add_term(v, p);
        }
        let unit = Self::monomial(&self.vars, v0.iter().map(|x| -x).collect(), c0.recip());
        Some(&quot * &unit)
    }

    /// Substitute every variable by an element over `target`.
    ///
    /// Negative powers need the image to be a single term.
    pub fn substitute(&self, target: &Vars, images: &[MultiLaurent]) -> Result<Self, RingError> {
        assert_eq!(images.len(), self.nvars(), "one image per variable");
        let mut inverses: Vec<Option<MultiLaurent>> = vec![None; images.len()];
        let mut out = Self::zero(target);
        for (e, c) in &self.terms {
            let mut term = Self::constant(target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let base = if k > 0 {
                    &images[i]
                } else {
                    if inverses[i].is_none() {
                        inverses[i] = Some(images[i].monomial_inverse().ok_or_else(|| {
                            RingError::NotAUnit(format!("{} (image of {})", images[i], self.vars[i]))
                        })?);
                    }
                    inverses[i].as_ref().expect("just set")
                };
                term = term.checked_mul(&base.pow(k.unsigned_abs() as u32))?;
            }
            out = out.checked_add(&term)?;
        }
        Ok(out)
    }

    /// Re-express over a different variable list, matching variables by name.
    pub fn embed(&self, target: &Vars) -> Result<Self, RingError> {
        let positions: Vec<Option<usize>> =
            self.vars.iter().map(|n| target.iter().position(|m| m == n)).collect();
        let mut out = Self::zero(target);
        for (e, c) in &self.terms {
            let mut ne = vec![0; target.len()];
            for (i, &k) in e.iter().enumerate() {
                match positions[i] {
                    Some(p) => ne[p] = k,
                    None if k == 0 => {}
                    None => return Err(RingError::UnknownVariable(self.vars[i].clone())),
                }
            }
            out.add_term(ne, c.clone());
        }
        Ok(out)
    }

    /// Evaluate at rational values, one per variable.
    pub fn evaluate(&self, values: &[Rational]) -> Result<Rational, RingError> {
        assert_eq!(values.len(), self.nvars(), "one value per variable");
        let mut acc = <Rational as Zero>::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (v, &k) in values.iter().zip(e) {
                t *= Ring::ipow(v, k)
                    .ok_or_else(|| RingError::NotAUnit("zero raised to a negative power".into()))?;
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Smallest and largest exponent of variable `i`, if nonzero.
    pub fn degree_range(&self, i: usize) -> Option<(i64, i64)> {
        let lo = self.terms.keys().map(|e| e[i]).min()?;
        let hi = self.terms.keys().map(|e| e[i]).max()?;
        Some((lo, hi))
    }

    /// Reduce variable `i`, read as a primitive `n`-th root of unity, to the
    /// canonical basis `1, zeta, .., zeta^(phi(n)-1)`.
    pub fn reduce_cyclotomic(&self, i: usize, n: u64) -> Self {
        let phi = cyclotomic_polynomial(n);
        let deg = phi.len() as i64 - 1;
        let mut out = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            ne[i] = e[i].rem_euclid(n as i64);
            out.add_term(ne, c.clone());
        }
        // Eliminate powers >= deg from the top down using the monic Phi_n.
        for p in (deg..n as i64).rev() {
            let hits: Vec<(Exponent, Rational)> = out
                .terms
                .iter()
                .filter(|(e, _)| e[i] == p)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect();
            for (e, c) in hits {
                out.terms.remove(&e);
                for (j, pc) in phi.iter().enumerate().take(deg as usize) {
                    if Zero::is_zero(pc) {
                        continue;
                    }
                    let mut ne = e.clone();
                    ne[i] = p - deg + j as i64;
                    out.add_term(ne, -(&c * Rational::from_integer(pc.clone())));
                }
            }
        }
        out
    }

    /// Apply [`Self::reduce_cyclotomic`] to every variable named `zetaN`.
    pub fn reduce_roots(&self) -> Self {
        let mut out = self.clone();
        for (i, name) in self.vars.iter().enumerate() {
            if let Some(n) = root_order(name) {
                out = out.reduce_cyclotomic(i, n);
            }
        }
        out
    }

    /// Canonical JSON: a list of `{"exp", "num", "den"}` objects.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(e, c)| {
                    json!({"exp": e, "num": c.numer().to_string(), "den": c.denom().to_string()})
                })
                .collect(),
        )
    }

    pub fn from_json(vars: &Vars, v: &Value) -> Result<Self, RingError> {
        let bad = |m: &str| RingError::Parse(format!("MultiLaurent: {m}"));
        let arr = v.as_array().ok_or_else(|| bad("expected a list"))?;
        let mut out = Self::zero(vars);
        for t in arr {
            let exp: Exponent = t["exp"]
                .as_array()
                .ok_or_else(|| bad("missing exp"))?
                .iter()
                .map(|x| x.as_i64().ok_or_else(|| bad("exponent is not an integer")))
                .collect::<Result<_, _>>()?;
            if exp.len() != vars.len() {
                return Err(bad("exponent length does not match variables"));
            }
            let num = t["num"].as_str().ok_or_else(|| bad("missing num"))?;
            let den = t["den"].as_str().ok_or_else(|| bad("missing den"))?;
            out.add_term(exp, parse_rational(&format!("{num}/{den}"))?);
        }
        Ok(out)
    }
}

/// Order `N` if the name has the form `zetaN`.
pub fn root_order(name: &str) -> Option<u64> {
    name.strip_prefix("zeta").and_then(|s| s.parse().ok()).filter(|&n| n > 0)
}

fn index_of(vars: &Vars, name: &str) -> Result<usize, RingError> {
    vars.iter().position(|v| v == name).ok_or_else(|| RingError::UnknownVariable(name.into()))
}

impl fmt::Display for MultiLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Highest exponents first reads more naturally.
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if n == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mono: Vec<String> = e
                .iter()
                .zip(self.vars.iter())
                .filter(|(k, _)| **k != 0)
                .map(|(k, v)| if *k == 1 { v.clone() } else { format!("{v}^{k}") })
                .collect();
            if mono.is_empty() {
                write!(f, "{}", format_rational(&a))?;
            } else if One::is_one(&a) {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", format_rational(&a), mono.join("*"))?;
            }
        }
        Ok(())
    }
}

macro_rules! ref_op {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl<'a> $tr<&'a MultiLaurent> for &'a MultiLaurent {
            type Output = MultiLaurent;
            fn $m(self, rhs: &'a MultiLaurent) -> MultiLaurent {
                self.$checked(rhs).expect("contract violation: variable lists differ")
            }
        }
        impl $tr for MultiLaurent {
            type Output = MultiLaurent;
            fn $m(self, rhs: MultiLaurent) -> MultiLaurent {
                self.$checked(&rhs).expect("contract violation: variable lists differ")
            }
        }
    };
}
ref_op!(Add, add, checked_add);
ref_op!(Sub, sub, checked_sub);
ref_op!(Mul, mul, checked_mul);

impl Neg for &MultiLaurent {
    type Output = MultiLaurent;
    fn neg(self) -> MultiLaurent {
        self.scale(&-<Rational as One>::one())
    }
}

impl Neg for MultiLaurent {
    type Output = MultiLaurent;
    fn neg(self) -> MultiLaurent {
        -&self
    }
}

impl Ring for MultiLaurent {
    type Ctx = Vars;

    fn ctx(&self) -> Vars {
        self.vars.clone()
    }
    fn zero_of(ctx: &Vars) -> Self {
        MultiLaurent::zero(ctx)
    }
    fn one_of(ctx: &Vars) -> Self {
        MultiLaurent::one(ctx)
    }
    fn from_rational(ctx: &Vars, q: &Rational) -> Self {
        MultiLaurent::constant(ctx, q.clone())
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
        self.terms.is_empty()
    }
    fn try_inverse(&self) -> Option<Self> {
        self.monomial_inverse()
    }
    fn try_divide(&self, d: &Self) -> Option<Self> {
        self.divide_exact(d)
    }
    fn scale(&self, q: &Rational) -> Self {
        MultiLaurent::scale(self, q)
    }
    fn to_json(&self) -> Value {
        MultiLaurent::to_json(self)
    }
    fn from_json(ctx: &Vars, v: &Value) -> Result<Self, RingError> {
        MultiLaurent::from_json(ctx, v)
    }
}

impl Coefficient for MultiLaurent {
    fn try_sqrt(&self) -> Option<Self> {
        let (e, c) = self.as_monomial()?;
        if e.iter().any(|k| k % 2 != 0) {
            return None;
        }
        let r = rational_sqrt(c)?;
        Some(Self::monomial(&self.vars, e.iter().map(|k| k / 2).collect(), r))
    }

    fn root_of_unity(ctx: &Vars, zeta: &RootOfUnity) -> Option<Self> {
        match zeta.order() {
            1 => return Some(Self::one(ctx)),
            2 => return Some(Self::constant(ctx, -<Rational as One>::one())),
            _ => {}
        }
        let (i, n) = ctx
            .iter()
            .enumerate()
            .filter_map(|(i, name)| root_order(name).map(|n| (i, n)))
            .find(|(_, n)| n % zeta.order() == 0)?;
        let mut exp = vec![0; ctx.len()];
        exp[i] = (zeta.num() * (n / zeta.order())) as i64;
        Some(Self::monomial(ctx, exp, <Rational as One>::one()))
    }
}
