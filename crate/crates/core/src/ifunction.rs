//! Truncated K-theoretic I-functions of toric data, their telescoping
//! difference relations, and the abelianized Grassmannian I-function.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::novikov::{DegreeLattice, NovikovError, NovikovSeries};
use crate::ring::{
    format_rational, int, rat, vars, ExpansionPoint, MultiLaurent, Rational, Ring, RingError, Vars, ZRational,
};
use crate::toric::{ToricError, ToricGitDatum};

/// Rational functions in `z` with coefficients Laurent in the `X` variables.
pub type XRational = ZRational<MultiLaurent>;

/// Largest number of (degree, jet monomial) pairs computed in one call.
pub const TERM_BUDGET: usize = 20_000;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum IFunctionError {
    #[error("{terms} coefficients requested, budget is {TERM_BUDGET}; lower the cap or jet order")]
    Budget { terms: usize },
    #[error("degree {0:?} has the wrong length")]
    BadDegree(Vec<i64>),
    #[error("need r >= 1 and r <= n, got r = {r}, n = {n}")]
    BadGrassmannian { r: usize, n: usize },
    #[error("z-exponent {literal} from the pairwise sum differs from {killing} from the Killing form at {degrees:?}")]
    Normalization { degrees: Vec<i64>, literal: Box<Rational>, killing: Box<Rational> },
    #[error(transparent)]
    Toric(#[from] ToricError),
    #[error(transparent)]
    Novikov(#[from] NovikovError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

fn x_unit(xv: &Vars, j: usize, power: i64) -> MultiLaurent {
    let mut e = vec![0; xv.len()];
    e[j] = power;
    MultiLaurent::monomial(xv, e, int(1))
}

/// Multiply by `prod_{m=lo}^{hi} (1 - c z^m)`, reading a reversed range
/// (`hi < lo - 1`) as the inverse of `prod_{m=hi+1}^{lo-1}`.
pub fn times_range(f: &XRational, lo: i64, hi: i64, c: &MultiLaurent) -> Result<XRational, RingError> {
    let mut out = f.clone();
    if hi >= lo {
        for m in lo..=hi {
            out = out.mul_factor(m, c);
        }
    } else {
        for m in hi + 1..lo {
            out = out.div_factor(m, c)?;
        }
    }
    Ok(out)
}

/// `I_d` at jet order zero: `prod_j prod_{m=1}^{mu_j(d)} (1 - X_j^-1 z^m)^-1` with the
/// reversed-range convention.
pub fn i_coefficient(datum: &ToricGitDatum, d: &[i64]) -> Result<XRational, IFunctionError> {
    if d.len() != datum.rank() {
        return Err(IFunctionError::BadDegree(d.to_vec()));
    }
    let xv = datum.x_vars();
    let mut out = XRational::one(&xv);
    for j in 0..datum.k() {
        let mu = datum.pairing(j, d);
        let c = x_unit(&xv, j, -1);
        // prod_{m=1}^{mu} inverse = reversed range from mu+1 to 0.
        out = times_range(&out, mu + 1, 0, &c)?;
    }
    Ok(out)
}

/// One degree of the I-function with its jet in the insertion coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct IFunctionCoefficient {
    pub degree: Vec<i64>,
    pub value: XRational,
    /// Coefficient of `t^beta` for multi-indices `|beta| <= J`.
    pub jet: BTreeMap<Vec<u32>, XRational>,
}

impl IFunctionCoefficient {
    pub fn to_json(&self, zorder: Option<i64>) -> Result<Value, IFunctionError> {
        let mut jet = Vec::new();
        for (beta, f) in &self.jet {
            let mut entry = json!({"t": beta, "value": f.to_json(), "text": f.to_string()});
            if let Some(order) = zorder {
                let s = f.expand_at(ExpansionPoint::Zero, order)?;
                entry["expansion_at_zero"] = json!({
                    "order": order,
                    "terms": s.coeffs().iter().map(|(k, c)| json!({"z": k, "c": c.to_json()})).collect::<Vec<_>>(),
                });
            }
            jet.push(entry);
        }
        Ok(json!({"degree": self.degree, "jet": jet}))
    }
}

/// Multi-indices of length `k` with total at most `order`, in lexicographic order.
pub fn multi_indices(k: usize, order: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        let mut next = Vec::new();
        for p in out {
            let used: u32 = p.iter().sum();
            for b in 0..=order - used {
                let mut q = p.clone();
                q.push(b);
                next.push(q);
            }
        }
        out = next;
    }
    out.sort();
    out
}

fn factorial(n: u32) -> Rational {
    (1..=n).fold(Rational::one(), |acc, i| acc * int(i as i64))
}

/// Truncated I-function over effective degrees of energy at most `cap`, with
/// the exponential `exp(Psi_d(alpha) / (1 - z^-1))`, `alpha = sum t_i X_i`,
/// expanded to jet order `jet`.
#[derive(Debug, Clone, PartialEq)]
pub struct IFunction {
    pub lattice: Arc<DegreeLattice>,
    pub cap: Rational,
    pub jet_order: u32,
    pub coefficients: BTreeMap<Vec<i64>, IFunctionCoefficient>,
}

pub fn i_function(datum: &ToricGitDatum, cap: &Rational, jet: u32) -> Result<IFunction, IFunctionError> {
    datum.require_nonempty()?;
    let lattice = datum.degree_lattice()?;
    let degrees = lattice.degrees_up_to(cap);
    let betas = multi_indices(datum.k(), jet);
    let terms = degrees.len() * betas.len();
    if terms > TERM_BUDGET {
        return Err(IFunctionError::Budget { terms });
    }
    let xv = datum.x_vars();
    // 1 / (1 - z^-1)^n, kept as a rational function.
    let mut inv_powers = vec![XRational::one(&xv)];
    for n in 1..=jet as usize {
        let prev = inv_powers[n - 1].clone();
        inv_powers.push(prev.div_factor(-1, &MultiLaurent::one(&xv))?);
    }
    let mut coefficients = BTreeMap::new();
    for d in degrees {
        let value = i_coefficient(datum, &d)?;
        let mut jet_terms = BTreeMap::new();
        for beta in &betas {
            let total: u32 = beta.iter().sum();
            let mut xexp = vec![0i64; datum.k()];
            let mut zexp = 0i64;
            let mut denom = Rational::one();
            for (i, &b) in beta.iter().enumerate() {
                xexp[i] = b as i64;
                zexp += b as i64 * datum.pairing(i, &d);
                denom *= factorial(b);
            }
            let mono = MultiLaurent::monomial(&xv, xexp, denom.recip());
            let f = value.times(&inv_powers[total as usize]).mul_monomial(zexp, &mono);
            jet_terms.insert(beta.clone(), f);
        }
        coefficients.insert(d.clone(), IFunctionCoefficient { degree: d, value, jet: jet_terms });
    }
    Ok(IFunction { lattice, cap: cap.clone(), jet_order: jet, coefficients })
}

impl IFunction {
    /// The series in `q` of the `t^beta` coefficient.
    pub fn series(&self, beta: &[u32]) -> Result<NovikovSeries<XRational>, IFunctionError> {
        let ctx = self.coefficients.values().next().map(|c| c.value.ctx()).unwrap_or_else(|| vars::<&str>(&[]));
        let mut s = NovikovSeries::zero(&self.lattice, self.cap.clone(), &ctx);
        for (d, c) in &self.coefficients {
            if let Some(f) = c.jet.get(beta) {
                s.add_term(d.clone(), f.clone())?;
            }
        }
        Ok(s)
    }

    pub fn to_json(&self, zorder: Option<i64>) -> Result<Value, IFunctionError> {
        let coeffs: Vec<Value> =
            self.coefficients.values().map(|c| c.to_json(zorder)).collect::<Result<_, _>>()?;
        Ok(json!({
            "cap": format_rational(&self.cap),
            "jet_order": self.jet_order,
            "lattice": self.lattice.to_json(),
            "coefficients": coeffs,
        }))
    }
}

/// Outcome of a telescoping check.
#[derive(Debug, Clone, PartialEq)]
pub struct TelescopeWitness {
    pub d: Vec<i64>,
    pub d_prime: Vec<i64>,
    /// Cleared numerator of `lhs - rhs`; empty when the identity holds.
    pub difference: BTreeMap<i64, MultiLaurent>,
}

impl TelescopeWitness {
    pub fn holds(&self) -> bool {
        self.difference.is_empty()
    }

    /// Lowest `z`-power of the difference and its coefficient.
    pub fn offending_term(&self) -> Option<(i64, &MultiLaurent)> {
        self.difference.iter().next().map(|(k, c)| (*k, c))
    }
}

/// Both sides of the telescoping identity
/// `prod_j prod_{m=mu_j(d'-d)+1}^{mu_j(d')} (1 - X_j^-1 z^m) I_{d'} = I_{d'-d}`.
pub fn telescope_sides(datum: &ToricGitDatum, d: &[i64], d_prime: &[i64]) -> Result<(XRational, XRational), IFunctionError> {
    let diff: Vec<i64> = d_prime.iter().zip(d).map(|(a, b)| a - b).collect();
    let xv = datum.x_vars();
    let mut lhs = i_coefficient(datum, d_prime)?;
    for j in 0..datum.k() {
        lhs = times_range(&lhs, datum.pairing(j, &diff) + 1, datum.pairing(j, d_prime), &x_unit(&xv, j, -1))?;
    }
    Ok((lhs, i_coefficient(datum, &diff)?))
}

pub fn check_telescope(datum: &ToricGitDatum, d: &[i64], d_prime: &[i64]) -> Result<TelescopeWitness, IFunctionError> {
    if d.len() != datum.rank() || d_prime.len() != datum.rank() {
        return Err(IFunctionError::BadDegree(d.to_vec()));
    }
    let (lhs, rhs) = telescope_sides(datum, d, d_prime)?;
    let delta = lhs.minus(&rhs);
    let difference = match delta.clear_denominators() {
        Ok(p) => p.terms().clone(),
        // Not a Laurent polynomial: certainly nonzero, report its numerator.
        Err(_) => delta.numerator().iter().map(|(k, c)| (k + delta.zpow(), c.clone())).collect(),
    };
    Ok(TelescopeWitness { d: d.to_vec(), d_prime: d_prime.to_vec(), difference })
}

/// `G(r, n)` as the quotient of `Hom(C^r, C^n)` by `GL(r)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrassmannDatum {
    r: usize,
    n: usize,
    /// Scale of the trace form `2r tr(ab) - 2 tr(a) tr(b)`; `None` skips the comparison.
    killing_normalization: Option<Rational>,
}

impl GrassmannDatum {
    pub fn new(r: usize, n: usize) -> Result<Self, IFunctionError> {
        if r == 0 || r > n {
            return Err(IFunctionError::BadGrassmannian { r, n });
        }
        Ok(GrassmannDatum { r, n, killing_normalization: Some(rat(-1, 2)) })
    }

    pub fn with_killing(mut self, scale: Option<Rational>) -> Self {
        self.killing_normalization = scale;
        self
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn killing_normalization(&self) -> Option<&Rational> {
        self.killing_normalization.as_ref()
    }

    pub fn x_vars(&self) -> Vars {
        let names: Vec<String> = (1..=self.r).map(|i| format!("X{i}")).collect();
        vars(&names)
    }

    /// `(r-1, r-3, .., 1-r)`.
    pub fn two_rho(&self) -> Vec<i64> {
        (0..self.r).map(|i| self.r as i64 - 1 - 2 * i as i64).collect()
    }

    /// `X^{2 rho}`.
    pub fn x_two_rho(&self) -> MultiLaurent {
        MultiLaurent::monomial(&self.x_vars(), self.two_rho(), int(1))
    }

    /// `X_i X_j^-1`.
    fn ratio(&self, i: usize, j: usize) -> MultiLaurent {
        let mut e = vec![0; self.r];
        e[i] += 1;
        e[j] -= 1;
        MultiLaurent::monomial(&self.x_vars(), e, int(1))
    }

    /// `prod_{i<j} (1 - X_i X_j^-1) X^{2 rho}`, carried outside the sum.
    pub fn prefactor(&self) -> MultiLaurent {
        let xv = self.x_vars();
        let mut out = self.x_two_rho();
        for i in 0..self.r {
            for j in i + 1..self.r {
                let f = MultiLaurent::one(&xv).checked_sub(&self.ratio(i, j)).expect("same variables");
                out = out.checked_mul(&f).expect("same variables");
            }
        }
        out
    }

    fn form(&self, a: &[Rational], b: &[Rational]) -> Rational {
        let r = int(self.r as i64);
        let ab: Rational = a.iter().zip(b).map(|(x, y)| x * y).sum();
        let sa: Rational = a.iter().sum();
        let sb: Rational = b.iter().sum();
        int(2) * r * ab - int(2) * sa * sb
    }

    /// `<d + rho, d + rho> - <rho, rho>` under the configured normalization.
    pub fn killing_exponent(&self, d: &[i64]) -> Option<Rational> {
        let scale = self.killing_normalization.as_ref()?;
        let rho: Vec<Rational> = self.two_rho().iter().map(|&x| rat(x, 2)).collect();
        let shifted: Vec<Rational> = d.iter().zip(&rho).map(|(&a, b)| int(a) + b).collect();
        Some(scale * (self.form(&shifted, &shifted) - self.form(&rho, &rho)))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "r": self.r,
            "n": self.n,
            "two_rho": self.two_rho(),
            "killing_normalization": self.killing_normalization.as_ref().map(format_rational),
        })
    }
}

/// `-sum_{i<j} (d_j - d_i)(d_j - d_i - 1)`.
pub fn literal_exponent(d: &[i64]) -> i64 {
    let mut e = 0;
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let t = d[j] - d[i];
            e -= t * (t - 1);
        }
    }
    e
}

/// Compositions of `total` into `parts` nonnegative integers.
pub fn compositions(total: i64, parts: usize) -> Vec<Vec<i64>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Degree-`d` coefficient of the abelianized Grassmannian I-function at `alpha = 0`,
/// without the prefactor.
pub fn grass_i_coefficient(g: &GrassmannDatum, d: i64) -> Result<XRational, IFunctionError> {
    let xv = g.x_vars();
    let sign = if (d * (g.r as i64 - 1)) % 2 == 0 { int(1) } else { int(-1) };
    let mut total = XRational::zero(&xv);
    for dv in compositions(d, g.r) {
        let literal = literal_exponent(&dv);
        if let Some(k) = g.killing_exponent(&dv) {
            if k != int(literal) {
                return Err(IFunctionError::Normalization { degrees: dv, literal: Box::new(int(literal)), killing: Box::new(k) });
            }
        }
        let mut term = XRational::monomial(&xv, literal, MultiLaurent::constant(&xv, sign.clone()));
        for i in 0..g.r {
            for j in i + 1..g.r {
                term = term.mul_factor(dv[i] - dv[j], &g.ratio(i, j));
            }
        }
        for (i, &di) in dv.iter().enumerate() {
            let c = x_unit(&xv, i, 1);
            for l in 1..=di {
                for _ in 0..g.n {
                    term = term.div_factor(l, &c)?;
                }
            }
        }
        total = total.plus(&term);
    }
    Ok(total)
}

/// The lines of the index-bundle Euler class chain, as rational functions in `z`.
pub fn eulind_lines(g: &GrassmannDatum, dv: &[i64]) -> Result<Vec<XRational>, IFunctionError> {
    if dv.len() != g.r {
        return Err(IFunctionError::BadDegree(dv.to_vec()));
    }
    let xv = g.x_vars();
    let one = XRational::one(&xv);
    let d: i64 = dv.iter().sum();
    let sign = |e: i64| if e.rem_euclid(2) == 0 { int(1) } else { int(-1) };

    // Line 1.
    let mut l1 = one.clone();
    for i in 0..g.r {
        for j in i + 1..g.r {
            let t = dv[j] - dv[i];
            l1 = times_range(&l1, 0, t, &g.ratio(i, j))?;
            // Dividing by prod_{k=1}^{t-1}: multiply by the reversed range.
            l1 = times_range(&l1, t, 0, &g.ratio(j, i))?;
        }
    }

    // Line 2.
    let mut l2 = one.clone();
    for i in 0..g.r {
        for j in i + 1..g.r {
            let t = dv[j] - dv[i];
            // prod_{k=0}^{t} (1 - X_i X_j^-1 z^-k), reversed ranges as inverses.
            if t >= 0 {
                for k in 0..=t {
                    l2 = l2.mul_factor(-k, &g.ratio(i, j));
                }
            } else {
                for k in t + 1..0 {
                    l2 = l2.div_factor(-k, &g.ratio(i, j))?;
                }
            }
            // Divide by (-1)^(t-2) prod_{k=1}^{t-1} z^-2k X_j X_i^-1 (1 - X_i X_j^-1 z^k).
            l2 = l2.scale(&sign(t - 2));
            let mono = |k: i64| XRational::monomial(&xv, -2 * k, g.ratio(j, i));
            if t > 1 {
                for k in 1..t {
                    let inv = mono(k).try_inverse().expect("monomial");
                    l2 = l2.times(&inv).div_factor(k, &g.ratio(i, j))?;
                }
            } else {
                for k in t..1 {
                    l2 = l2.times(&mono(k)).mul_factor(k, &g.ratio(i, j));
                }
            }
        }
    }

    let closed = |exponent: i64| -> XRational {
        let mut f = XRational::monomial(&xv, exponent, g.x_two_rho().scale(&sign(d * (g.r as i64 - 1))));
        for i in 0..g.r {
            for j in i + 1..g.r {
                f = f.mul_factor(0, &g.ratio(i, j)).mul_factor(dv[j] - dv[i], &g.ratio(i, j));
            }
        }
        f
    };
    let mut lines = vec![l1, l2, closed(literal_exponent(dv))];
    // Killing-form lines, when the normalization gives an integer exponent.
    if let Some(k) = g.killing_exponent(dv) {
        if k.is_integer() {
            let e = i64::try_from(k.to_integer()).expect("small exponent");
            lines.push(closed(e));
        }
    }
    Ok(lines)
}

/// Outcome of comparing the first and the closed-form line of the chain.
#[derive(Debug, Clone, PartialEq)]
pub struct EulindWitness {
    pub degrees: Vec<i64>,
    /// Which consecutive lines agree.
    pub consecutive: Vec<bool>,
    /// First `z`-power (at zero) where line 1 and the closed form differ, with both coefficients.
    pub first_difference: Option<(i64, MultiLaurent, MultiLaurent)>,
}

impl EulindWitness {
    pub fn holds(&self) -> bool {
        self.first_difference.is_none()
    }
}

pub fn check_eulind_chain(g: &GrassmannDatum, dv: &[i64]) -> Result<EulindWitness, IFunctionError> {
    let lines = eulind_lines(g, dv)?;
    let consecutive = lines.windows(2).map(|w| w[0] == w[1]).collect();
    let first_difference = if lines[0] == lines[2] { None } else { first_difference(&lines[0], &lines[2], 24)? };
    Ok(EulindWitness { degrees: dv.to_vec(), consecutive, first_difference })
}

/// Lowest power where the expansions at zero differ, searching `span` powers past the valuations.
fn first_difference(
    a: &XRational,
    b: &XRational,
    span: i64,
) -> Result<Option<(i64, MultiLaurent, MultiLaurent)>, IFunctionError> {
    let start = a.zpow().min(b.zpow());
    let sa = a.expand_at(ExpansionPoint::Zero, start + span)?;
    let sb = b.expand_at(ExpansionPoint::Zero, start + span)?;
    for k in start..=start + span {
        let (x, y) = (sa.coefficient(k)?, sb.coefficient(k)?);
        if x != y {
            return Ok(Some((k, x, y)));
        }
    }
    Ok(None)
}

/// `I_d` of `P^{n-1}` with every `X_j` sent to `X_1^-1`, in the Grassmannian variables.
pub fn projective_coefficient_dual(n: usize, d: i64) -> Result<XRational, IFunctionError> {
    let datum = crate::catalog::projective_space(n - 1);
    let f = i_coefficient(&datum, &[d])?;
    let target = vars(&["X1"]);
    let images = vec![MultiLaurent::monomial(&target, vec![-1], int(1)); n];
    Ok(f.map_coeffs(&target, |c| c.substitute(&target, &images).expect("monomial images"))?)
}

pub fn is_zero_rational(f: &XRational) -> bool {
    f.vanishes() || f.numerator().values().all(|c| c.is_zero())
}

pub fn rational_zero() -> Rational {
    Rational::zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{p1xp1, projective_space, weighted_projective};

    fn inv_x(xv: &Vars, j: usize, p: i64) -> MultiLaurent {
        x_unit(xv, j, p)
    }

    #[test]
    fn coefficients() {
        let p1 = projective_space(1);
        let xv = p1.x_vars();
        let c = i_coefficient(&p1, &[1]).unwrap();
        let expect = XRational::one(&xv)
            .div_factor(1, &inv_x(&xv, 0, -1))
            .unwrap()
            .div_factor(1, &inv_x(&xv, 1, -1))
            .unwrap();
        assert_eq!(c, expect);
        assert_eq!(i_coefficient(&p1, &[0]).unwrap(), XRational::one(&xv));
        let p12 = weighted_projective(&[1, 2]).unwrap();
        let xv = p12.x_vars();
        let c = i_coefficient(&p12, &[1]).unwrap();
        let expect = XRational::one(&xv)
            .div_factor(1, &inv_x(&xv, 0, -1))
            .unwrap()
            .div_factor(1, &inv_x(&xv, 1, -1))
            .unwrap()
            .div_factor(2, &inv_x(&xv, 1, -1))
            .unwrap();
        assert_eq!(c, expect);
        // Negative degree: the factor (1 - X^-1) appears.
        let neg = i_coefficient(&p1, &[-1]).unwrap();
        let at_one = neg.map_coeffs(&vars::<&str>(&[]), |m| {
            MultiLaurent::constant(&vars::<&str>(&[]), m.evaluate(&[int(1), int(1)]).unwrap())
        });
        assert!(at_one.unwrap().vanishes());
    }

    #[test]
    fn jets() {
        let p1 = projective_space(1);
        let xv = p1.x_vars();
        let f = i_function(&p1, &int(1), 1).unwrap();
        let base = i_coefficient(&p1, &[1]).unwrap();
        let expect = base.div_factor(-1, &MultiLaurent::one(&xv)).unwrap().mul_monomial(1, &inv_x(&xv, 0, 1));
        assert_eq!(f.coefficients[&vec![1]].jet[&vec![1, 0]], expect);
        let zero = &f.coefficients[&vec![0]].jet[&vec![0, 1]];
        let expect0 = XRational::one(&xv).div_factor(-1, &MultiLaurent::one(&xv)).unwrap().mul_monomial(0, &inv_x(&xv, 1, 1));
        assert_eq!(zero, &expect0);
        let j0 = i_function(&p1, &int(2), 0).unwrap();
        assert!(j0.coefficients.values().all(|c| c.jet.len() == 1 && c.jet[&vec![0, 0]] == c.value));
        assert!(i_function(&p1, &int(10000), 3).is_err());
    }

    #[test]
    fn telescopes() {
        for datum in [projective_space(1), projective_space(2), p1xp1()] {
            let r = datum.rank();
            for d in datum.degree_lattice().unwrap().degrees_up_to(&int(2)) {
                for dp in datum.degree_lattice().unwrap().degrees_up_to(&int(2)) {
                    assert!(check_telescope(&datum, &d, &dp).unwrap().holds(), "{d:?} {dp:?}");
                }
                assert!(check_telescope(&datum, &vec![0; r], &d).unwrap().holds());
            }
        }
    }

    #[test]
    fn grassmannian_reduces_to_projective_space() {
        for n in 1..=3 {
            let g = GrassmannDatum::new(1, n).unwrap();
            for d in 0..=3 {
                assert_eq!(grass_i_coefficient(&g, d).unwrap(), projective_coefficient_dual(n, d).unwrap());
            }
        }
        let g = GrassmannDatum::new(2, 3).unwrap();
        assert!(matches!(grass_i_coefficient(&g, 1), Err(IFunctionError::Normalization { .. })));
        let g = g.with_killing(None);
        assert!(grass_i_coefficient(&g, 1).is_ok());
    }

    #[test]
    fn eulind_chain_at_zero_degree() {
        let g = GrassmannDatum::new(2, 2).unwrap().with_killing(None);
        let w = check_eulind_chain(&g, &[0, 0]).unwrap();
        // Line 1 is (1 - X1/X2)(1 - X2/X1); the closed form is X1/X2 (1 - X1/X2)^2.
        assert!(!w.holds());
        let lines = eulind_lines(&g, &[0, 0]).unwrap();
        let xv = g.x_vars();
        let both = XRational::factor(&xv, 0, g.ratio(0, 1)).times(&XRational::factor(&xv, 0, g.ratio(1, 0)));
        assert_eq!(lines[0], both);
    }
}
