//! Batyrev elements, the quantum Stanley-Reisner ideal and presentation rings
//! of weighted projective spaces.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::linalg::{rank, QMat};
use crate::ring::{format_rational, int, vars, MultiLaurent, Rational, Ring, RingError, Vars};
use crate::toric::{ToricError, ToricGitDatum};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PresentationError {
    #[error("presentation rings need a rank-one datum with positive weights")]
    NotWeightedProjective,
    #[error("relation has leading coefficient {0} in Y, not a unit")]
    NonMonicRelation(String),
    #[error("element is not a polynomial in Y and q: {0}")]
    NotPolynomial(String),
    #[error("basis has rank {rank} over Q(q), expected {expected}")]
    RankDeficient { rank: usize, expected: usize },
    #[error("degree {0:?} has the wrong length")]
    BadDegree(Vec<i64>),
    #[error(transparent)]
    Toric(#[from] ToricError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// `zeta(d) = zeta_plus - q^d zeta_minus`.
#[derive(Debug, Clone, PartialEq)]
pub struct BatyrevElement {
    pub degree: Vec<i64>,
    pub zeta_plus: MultiLaurent,
    /// Coefficient of `q^degree`.
    pub zeta_minus: MultiLaurent,
}

/// Product of `(1 - X_j^-1)^e_j` over the given exponents.
fn one_minus_inverse_product(xv: &Vars, exps: impl Iterator<Item = (usize, i64)>) -> MultiLaurent {
    let mut out = MultiLaurent::one(xv);
    let n = xv.len();
    for (j, e) in exps {
        let mut unit = vec![0; n];
        unit[j] = -1;
        let f = MultiLaurent::from_terms(xv, [(vec![0; n], int(1)), (unit, int(-1))]);
        out = out.checked_mul(&f.pow(e as u32)).expect("same variables");
    }
    out
}

pub fn batyrev(datum: &ToricGitDatum, d: &[i64]) -> Result<BatyrevElement, PresentationError> {
    if d.len() != datum.rank() {
        return Err(PresentationError::BadDegree(d.to_vec()));
    }
    let xv = datum.x_vars();
    let mu: Vec<i64> = (0..datum.k()).map(|j| datum.pairing(j, d)).collect();
    let zeta_plus = one_minus_inverse_product(&xv, mu.iter().enumerate().filter(|(_, m)| **m > 0).map(|(j, m)| (j, *m)));
    let zeta_minus =
        one_minus_inverse_product(&xv, mu.iter().enumerate().filter(|(_, m)| **m < 0).map(|(j, m)| (j, -*m)));
    Ok(BatyrevElement { degree: d.to_vec(), zeta_plus, zeta_minus })
}

impl BatyrevElement {
    /// `zeta(d)` as a Laurent polynomial in `X_1..X_k, q_1..q_r`.
    pub fn as_polynomial(&self, target: &Vars) -> MultiLaurent {
        let plus = self.zeta_plus.embed(target).expect("X variables are in the target");
        let minus = self.zeta_minus.embed(target).expect("X variables are in the target");
        let n = target.len();
        let mut qexp = vec![0; n];
        let r = self.degree.len();
        qexp[n - r..].copy_from_slice(&self.degree);
        plus.checked_sub(&minus.mul_monomial(&qexp, &Rational::one())).expect("same variables")
    }

    pub fn is_zero(&self) -> bool {
        self.zeta_plus == self.zeta_minus && self.degree.iter().all(|&x| x == 0)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "degree": self.degree,
            "zeta_plus": self.zeta_plus.to_json(),
            "zeta_minus": self.zeta_minus.to_json(),
            "text": format!("{} - q^{:?} * ({})", self.zeta_plus, self.degree, self.zeta_minus),
        })
    }
}

/// Variables `X_1..X_k, q_1..q_r` for ideal membership.
pub fn qksr_vars(datum: &ToricGitDatum) -> Vars {
    let mut names: Vec<String> = (1..=datum.k()).map(|j| format!("X{j}")).collect();
    if datum.rank() == 1 {
        names.push("q".into());
    } else {
        names.extend((1..=datum.rank()).map(|i| format!("q{i}")));
    }
    vars(&names)
}

/// `Q[q][Y] / (R(Y))` for a weighted projective space, with `Y = X^-g`,
/// `g = gcd(mu)`, so that `X_j^-1 = Y^(mu_j / g)`.
#[derive(Debug, Clone, PartialEq)]
pub struct WpsRing {
    weights: Vec<i64>,
    gcd: i64,
    relation: MultiLaurent,
    rank: usize,
    lead: Rational,
}

pub fn wps_vars() -> Vars {
    vars(&["Y", "q"])
}

impl WpsRing {
    pub fn new(datum: &ToricGitDatum) -> Result<Self, PresentationError> {
        let z = batyrev(datum, &[1])?;
        Self::from_batyrev(datum, &z)
    }

    /// Ring whose relation is the image of a given degree-one Batyrev element.
    pub fn from_batyrev(datum: &ToricGitDatum, z: &BatyrevElement) -> Result<Self, PresentationError> {
        if datum.rank() != 1 || datum.weights().iter().any(|w| w[0] <= 0) {
            return Err(PresentationError::NotWeightedProjective);
        }
        let weights: Vec<i64> = datum.weights().iter().map(|w| w[0]).collect();
        let g = weights.iter().fold(0i64, |a, b| a.gcd(b));
        let yq = wps_vars();
        let images: Vec<MultiLaurent> =
            weights.iter().map(|&w| MultiLaurent::monomial(&yq, vec![-w / g, 0], int(1))).collect();
        let plus = z.zeta_plus.substitute(&yq, &images)?;
        let minus = z.zeta_minus.substitute(&yq, &images)?;
        let relation = plus.checked_sub(&minus.mul_monomial(&[0, 1], &int(1)))?;
        let (lo, hi) = relation.degree_range(0).unwrap_or((0, 0));
        if lo < 0 {
            return Err(PresentationError::NotPolynomial(relation.to_string()));
        }
        let lead_poly = y_coefficient(&relation, hi);
        let lead = lead_poly.as_constant().filter(|c| !c.is_zero()).ok_or_else(|| {
            PresentationError::NonMonicRelation(lead_poly.to_string())
        })?;
        Ok(WpsRing { weights, gcd: g, relation, rank: hi as usize, lead })
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn gcd(&self) -> i64 {
        self.gcd
    }

    pub fn relation(&self) -> &MultiLaurent {
        &self.relation
    }

    /// Degree of the relation in `Y`: the rank of the quotient over `Q[q]`.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Euclidean remainder modulo the relation.
    pub fn normal_form(&self, f: &MultiLaurent) -> Result<MultiLaurent, PresentationError> {
        let yq = wps_vars();
        let mut rem = f.embed(&yq)?;
        if rem.terms().keys().any(|e| e[0] < 0 || e[1] < 0) {
            return Err(PresentationError::NotPolynomial(f.to_string()));
        }
        let n = self.rank as i64;
        let lead_inv = self.lead.recip();
        while let Some((_, top)) = rem.degree_range(0) {
            if top < n {
                break;
            }
            let c = y_coefficient(&rem, top).scale(&lead_inv);
            let shifted = self.relation.mul_monomial(&[top - n, 0], &Rational::one()).checked_mul(&c)?;
            rem = rem.checked_sub(&shifted)?;
        }
        Ok(rem)
    }

    /// Coefficient vector of the normal form in `1, Y, .., Y^(N-1)` at a value of `q`.
    fn coordinates_at(&self, f: &MultiLaurent, q: &Rational) -> Result<Vec<Rational>, PresentationError> {
        let nf = self.normal_form(f)?;
        let mut v = vec![Rational::zero(); self.rank];
        for (e, c) in nf.terms() {
            v[e[0] as usize] += c * Ring::pow(q, e[1] as u32);
        }
        Ok(v)
    }

    /// Rank over `Q(q)` of the span of `elements`, by specializing `q` at several
    /// points and taking the largest rank.
    pub fn rank_of(&self, elements: &[MultiLaurent]) -> Result<usize, PresentationError> {
        let mut best = 0;
        for q in [int(2), int(3), int(5), Rational::new(7.into(), 3.into()), int(-11)] {
            let m: QMat = elements.iter().map(|f| self.coordinates_at(f, &q)).collect::<Result<_, _>>()?;
            best = best.max(if m.is_empty() { 0 } else { rank(&m) });
        }
        Ok(best)
    }

    /// Normal forms of all pairwise products of a basis.
    pub fn product_table(&self, basis: &[MultiLaurent]) -> Result<Vec<Vec<MultiLaurent>>, PresentationError> {
        let r = self.rank_of(basis)?;
        if r != self.rank || basis.len() != self.rank {
            return Err(PresentationError::RankDeficient { rank: r, expected: self.rank });
        }
        let yq = wps_vars();
        basis
            .iter()
            .map(|a| {
                basis
                    .iter()
                    .map(|b| self.normal_form(&a.embed(&yq)?.checked_mul(&b.embed(&yq)?)?))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect()
    }

    /// The basis `(1 - Y)^i`, `i < N`.
    pub fn standard_basis(&self) -> Vec<MultiLaurent> {
        let yq = wps_vars();
        let f = MultiLaurent::from_terms(&yq, [(vec![0, 0], int(1)), (vec![1, 0], int(-1))]);
        (0..self.rank).map(|i| f.pow(i as u32)).collect()
    }

    /// The relation with `q` set to a value.
    pub fn relation_at(&self, q: &Rational) -> MultiLaurent {
        let yv = vars(&["Y"]);
        let images = [MultiLaurent::var(&yv, "Y").expect("Y"), MultiLaurent::constant(&yv, q.clone())];
        self.relation.substitute(&yv, &images).expect("same variables")
    }

    pub fn to_json(&self) -> Value {
        json!({
            "weights": self.weights,
            "y_is_x_to_the": -self.gcd,
            "relation": self.relation.to_json(),
            "relation_text": format!("{} = 0", self.relation),
            "rank": self.rank,
        })
    }
}

/// Coefficient of `Y^k` as a polynomial in `Y, q` with no `Y`.
fn y_coefficient(f: &MultiLaurent, k: i64) -> MultiLaurent {
    MultiLaurent::from_terms(
        f.vars(),
        f.terms().iter().filter(|(e, _)| e[0] == k).map(|(e, c)| (vec![0, e[1]], c.clone())),
    )
}

/// Window for the truncated ideal-membership test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipWindow {
    /// Range of each `X_j` exponent in the multipliers.
    pub x_min: i64,
    pub x_max: i64,
    /// Energy cap for generators and `q` multipliers.
    pub cap: Rational,
    /// Explicit generator degrees; all effective degrees under the cap when absent.
    pub generators: Option<Vec<Vec<i64>>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    Member,
    /// Certified by the homomorphism `X_j -> 1`, `q^d -> [d = 0]`, which kills every generator.
    NotMember,
    Inconclusive,
}

impl Membership {
    pub fn as_str(&self) -> &'static str {
        match self {
            Membership::Member => "member",
            Membership::NotMember => "not-member",
            Membership::Inconclusive => "inconclusive",
        }
    }
}

/// Sparse row echelon basis keyed by leading exponent.
#[derive(Default)]
struct Echelon {
    rows: BTreeMap<Vec<i64>, BTreeMap<Vec<i64>, Rational>>,
}

impl Echelon {
    fn reduce(&self, mut v: BTreeMap<Vec<i64>, Rational>) -> BTreeMap<Vec<i64>, Rational> {
        loop {
            let Some((lead, c)) = v.iter().next_back().map(|(k, c)| (k.clone(), c.clone())) else { return v };
            let Some(row) = self.rows.get(&lead) else {
                // Leading term is free; reduce the rest for a canonical remainder.
                let mut rest = v.clone();
                rest.remove(&lead);
                let mut out = self.reduce(rest);
                out.insert(lead, c);
                return out;
            };
            for (k, a) in row {
                let e = v.entry(k.clone()).or_insert_with(Rational::zero);
                *e -= &c * a;
                if e.is_zero() {
                    v.remove(k);
                }
            }
        }
    }

    fn insert(&mut self, v: BTreeMap<Vec<i64>, Rational>) {
        let v = self.reduce(v);
        let Some((lead, c)) = v.iter().next_back().map(|(k, c)| (k.clone(), c.clone())) else { return };
        let inv = c.recip();
        self.rows.insert(lead, v.into_iter().map(|(k, a)| (k, a * &inv)).collect());
    }
}

/// Decide whether `candidate` (in [`qksr_vars`]) lies in the ideal generated by
/// the Batyrev elements of effective degrees within the window.
pub fn qksr_membership(
    datum: &ToricGitDatum,
    candidate: &MultiLaurent,
    window: &MembershipWindow,
) -> Result<Membership, PresentationError> {
    let target = qksr_vars(datum);
    let candidate = candidate.embed(&target)?;
    let k = datum.k();
    let lattice = datum.degree_lattice()?;
    let degrees = match &window.generators {
        Some(g) => g.clone(),
        None => lattice.degrees_up_to(&window.cap),
    };
    let gens: Vec<MultiLaurent> = degrees
        .iter()
        .filter(|d| d.iter().any(|&x| x != 0))
        .map(|d| batyrev(datum, d).map(|z| z.as_polynomial(&target)))
        .collect::<Result<_, _>>()?;
    let energy = |g: &MultiLaurent| {
        g.terms().keys().map(|e| lattice.energy(&e[k..])).max().unwrap_or_else(Rational::zero)
    };

    let mut ech = Echelon::default();
    let x_box = x_window(k, window.x_min, window.x_max);
    for g in &gens {
        let room = &window.cap - energy(g);
        for e in lattice.degrees_up_to(&room) {
            for x in &x_box {
                let mut shift = x.clone();
                shift.extend(e.iter().copied());
                let p = g.mul_monomial(&shift, &Rational::one());
                ech.insert(p.terms().clone());
            }
        }
    }
    if ech.reduce(candidate.terms().clone()).is_empty() {
        return Ok(Membership::Member);
    }
    // X_j -> 1, q^d -> [d = 0]: a homomorphism on the effective Novikov ring
    // that kills zeta(d) whenever some mu_j(d) > 0, which energy positivity forces.
    let image: Rational =
        candidate.terms().iter().filter(|(e, _)| e[k..].iter().all(|&x| x == 0)).map(|(_, c)| c.clone()).sum();
    if !image.is_zero() {
        return Ok(Membership::NotMember);
    }
    Ok(Membership::Inconclusive)
}

fn x_window(k: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (lo..=hi).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

/// Default window: the candidate's own `X` exponent range, including 0.
pub fn default_window(datum: &ToricGitDatum, candidate: &MultiLaurent, cap: Rational) -> MembershipWindow {
    let k = datum.k();
    let mut lo = 0;
    let mut hi = 0;
    for e in candidate.terms().keys() {
        for &x in &e[..k.min(e.len())] {
            lo = lo.min(x);
            hi = hi.max(x);
        }
    }
    MembershipWindow { x_min: lo, x_max: hi, cap, generators: None }
}

pub fn format_table(table: &[Vec<MultiLaurent>]) -> Vec<Vec<String>> {
    table.iter().map(|row| row.iter().map(|c| c.to_string()).collect()).collect()
}

pub fn rational_json(q: &Rational) -> Value {
    Value::String(format_rational(q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{bz2, p1xp1, projective_space, weighted_projective};

    fn y_poly(terms: &[(i64, i64, i64)]) -> MultiLaurent {
        MultiLaurent::from_terms(&wps_vars(), terms.iter().map(|&(y, q, c)| (vec![y, q], int(c))))
    }

    #[test]
    fn batyrev_elements() {
        let p2 = projective_space(2);
        let z = batyrev(&p2, &[1]).unwrap();
        assert_eq!(z.zeta_plus.num_terms(), 8);
        assert!(z.zeta_minus.as_constant().is_some_and(|c| c.is_one()));
        let zero = batyrev(&p2, &[0]).unwrap();
        assert!(zero.is_zero());
        let z = batyrev(&p1xp1(), &[1, 0]).unwrap();
        assert_eq!(z.zeta_plus.to_string(), "1 - X2^-1 - X1^-1 + X1^-1*X2^-1");
        assert!(batyrev(&p1xp1(), &[1]).is_err());
    }

    #[test]
    fn wps_normal_forms() {
        let b = WpsRing::new(&bz2()).unwrap();
        assert_eq!(b.rank(), 2);
        assert_eq!(b.normal_form(&y_poly(&[(0, 0, 1), (1, 0, -2), (2, 0, 1)])).unwrap(), y_poly(&[(0, 1, 1)]));
        let p1 = WpsRing::new(&projective_space(1)).unwrap();
        let cube = y_poly(&[(0, 0, 1), (1, 0, -3), (2, 0, 3), (3, 0, -1)]);
        assert_eq!(p1.normal_form(&cube).unwrap(), y_poly(&[(0, 1, 1), (1, 1, -1)]));
        assert!(p1.normal_form(p1.relation()).unwrap().is_zero());
        let p12 = WpsRing::new(&weighted_projective(&[1, 2]).unwrap()).unwrap();
        assert_eq!(p12.rank(), 5);
    }

    #[test]
    fn tables() {
        let p1 = WpsRing::new(&projective_space(1)).unwrap();
        let t = p1.product_table(&p1.standard_basis()).unwrap();
        assert_eq!(t[1][1], y_poly(&[(0, 1, 1)]));
        assert_eq!(t[0][1], y_poly(&[(0, 0, 1), (1, 0, -1)]));
        let bad = vec![y_poly(&[(0, 0, 1)]), y_poly(&[(0, 0, 2)])];
        assert!(matches!(p1.product_table(&bad), Err(PresentationError::RankDeficient { .. })));
    }

    #[test]
    fn membership() {
        let d = p1xp1();
        let t = qksr_vars(&d);
        let cap = int(2);
        let z11 = batyrev(&d, &[1, 1]).unwrap().as_polynomial(&t);
        let gens = Some(vec![vec![1, 0], vec![0, 1]]);
        let win = MembershipWindow { x_min: -1, x_max: 0, cap: cap.clone(), generators: gens.clone() };
        assert_eq!(qksr_membership(&d, &z11, &win).unwrap(), Membership::Member);
        let narrow = MembershipWindow { x_min: 0, x_max: 0, cap: cap.clone(), generators: gens };
        assert_eq!(qksr_membership(&d, &z11, &narrow).unwrap(), Membership::Inconclusive);
        let one = MultiLaurent::one(&t);
        assert_eq!(qksr_membership(&d, &one, &win).unwrap(), Membership::NotMember);
    }
}
