//! Novikov series: degree-graded series truncated by an energy cap.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::linalg::{dot_qi, in_cone, to_q, QVec};
use crate::ring::{format_rational, int, parse_rational, Rational, Ring, RingError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NovikovError {
    #[error("lattices differ")]
    LatticeMismatch,
    #[error("degree {0:?} is not effective")]
    NotEffective(Vec<i64>),
    #[error("generator {0:?} has non-positive energy")]
    NonPositiveEnergy(Vec<i64>),
    #[error("degree vector {0:?} has the wrong length")]
    BadDegree(Vec<i64>),
    #[error("constant term is not invertible")]
    NotInvertible,
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Degree lattice with its effective cone and the energy pairing.
///
/// Degrees are integer vectors; a `denominator` greater than one refines the
/// lattice, so the stored vector `d` stands for `d / denominator`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeLattice {
    rank: usize,
    cone: Vec<Vec<i64>>,
    pairing: QVec,
    denominator: i64,
}

impl DegreeLattice {
    pub fn new(cone: Vec<Vec<i64>>, pairing: QVec) -> Result<Arc<Self>, NovikovError> {
        Self::refined(cone, pairing, 1)
    }

    pub fn refined(cone: Vec<Vec<i64>>, pairing: QVec, denominator: i64) -> Result<Arc<Self>, NovikovError> {
        assert!(denominator > 0, "lattice denominator must be positive");
        let rank = pairing.len();
        for g in &cone {
            if g.len() != rank {
                return Err(NovikovError::BadDegree(g.clone()));
            }
            // Positive energy on every generator also makes the cone pointed.
            if g.iter().any(|&x| x != 0) && !dot_qi(&pairing, g).is_positive() {
                return Err(NovikovError::NonPositiveEnergy(g.clone()));
            }
        }
        Ok(Arc::new(DegreeLattice { rank, cone, pairing, denominator }))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cone(&self) -> &[Vec<i64>] {
        &self.cone
    }

    pub fn pairing(&self) -> &QVec {
        &self.pairing
    }

    pub fn denominator(&self) -> i64 {
        self.denominator
    }

    pub fn energy(&self, d: &[i64]) -> Rational {
        dot_qi(&self.pairing, d) / int(self.denominator)
    }

    pub fn is_effective(&self, d: &[i64]) -> bool {
        let gens: Vec<QVec> = self.cone.iter().map(|g| to_q(g)).collect();
        in_cone(&gens, &to_q(d))
    }

    /// Every effective degree with energy at most `cap`, in lexicographic order.
    pub fn degrees_up_to(&self, cap: &Rational) -> Vec<Vec<i64>> {
        if cap.is_negative() {
            return Vec::new();
        }
        // Any effective d is a nonnegative combination of generators with total
        // coefficient at most cap / (least generator energy).
        let gens: Vec<&Vec<i64>> = self.cone.iter().filter(|g| g.iter().any(|&x| x != 0)).collect();
        if gens.is_empty() {
            return vec![vec![0; self.rank]];
        }
        let min_e = gens.iter().map(|g| self.energy(g)).min().expect("nonempty");
        let t = (cap / &min_e).floor().to_integer();
        let t = i64::try_from(t).expect("bounded");
        let bound: Vec<i64> = (0..self.rank).map(|i| t * gens.iter().map(|g| g[i].abs()).max().unwrap_or(0)).collect();
        let mut out = Vec::new();
        let mut cur = vec![0i64; self.rank];
        box_points(&bound, 0, &mut cur, &mut |d| {
            if self.energy(d) <= *cap && self.is_effective(d) {
                out.push(d.to_vec());
            }
        });
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "rank": self.rank,
            "cone": self.cone,
            "pairing": self.pairing.iter().map(format_rational).collect::<Vec<_>>(),
            "denominator": self.denominator,
        })
    }
}

fn box_points(bound: &[i64], i: usize, cur: &mut Vec<i64>, f: &mut dyn FnMut(&[i64])) {
    if i == bound.len() {
        f(cur);
        return;
    }
    for x in -bound[i]..=bound[i] {
        cur[i] = x;
        box_points(bound, i + 1, cur, f);
    }
}

/// Series `sum_d c_d q^d` over effective degrees of energy at most the cap.
#[derive(Debug, Clone, PartialEq)]
pub struct NovikovSeries<C: Ring> {
    lattice: Arc<DegreeLattice>,
    cap: Rational,
    ctx: C::Ctx,
    terms: BTreeMap<Vec<i64>, C>,
    truncated: bool,
}

impl<C: Ring> NovikovSeries<C> {
    pub fn zero(lattice: &Arc<DegreeLattice>, cap: Rational, ctx: &C::Ctx) -> Self {
        NovikovSeries { lattice: lattice.clone(), cap, ctx: ctx.clone(), terms: BTreeMap::new(), truncated: false }
    }

    pub fn one(lattice: &Arc<DegreeLattice>, cap: Rational, ctx: &C::Ctx) -> Self {
        let mut s = Self::zero(lattice, cap, ctx);
        s.terms.insert(vec![0; lattice.rank], C::one_of(ctx));
        s
    }

    /// Add `c q^d`; degrees above the cap are dropped and flagged.
    pub fn add_term(&mut self, d: Vec<i64>, c: C) -> Result<(), NovikovError> {
        if d.len() != self.lattice.rank {
            return Err(NovikovError::BadDegree(d));
        }
        if !self.lattice.is_effective(&d) {
            return Err(NovikovError::NotEffective(d));
        }
        self.push(d, c);
        Ok(())
    }

    fn push(&mut self, d: Vec<i64>, c: C) {
        if c.vanishes() {
            return;
        }
        if self.lattice.energy(&d) > self.cap {
            self.truncated = true;
            return;
        }
        match self.terms.get_mut(&d) {
            Some(old) => {
                let s = old.plus(&c);
                if s.vanishes() {
                    self.terms.remove(&d);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(d, c);
            }
        }
    }

    pub fn monomial(lattice: &Arc<DegreeLattice>, cap: Rational, d: Vec<i64>, c: C) -> Result<Self, NovikovError> {
        let mut s = Self::zero(lattice, cap, &c.ctx());
        s.add_term(d, c)?;
        Ok(s)
    }

    pub fn lattice(&self) -> &Arc<DegreeLattice> {
        &self.lattice
    }

    pub fn cap(&self) -> &Rational {
        &self.cap
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, C> {
        &self.terms
    }

    /// Whether some term was dropped for exceeding the cap.
    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    pub fn coefficient(&self, d: &[i64]) -> C {
        self.terms.get(d).cloned().unwrap_or_else(|| C::zero_of(&self.ctx))
    }

    fn check(&self, other: &Self) -> Result<(), NovikovError> {
        if self.lattice == other.lattice {
            Ok(())
        } else {
            Err(NovikovError::LatticeMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, NovikovError> {
        self.check(other)?;
        let mut out = Self::zero(&self.lattice, self.cap.clone().min(other.cap.clone()), &self.ctx);
        out.truncated = self.truncated || other.truncated;
        for (d, c) in self.terms.iter().chain(&other.terms) {
            out.push(d.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, NovikovError> {
        self.add(&other.map(|c| c.negate()))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, NovikovError> {
        self.check(other)?;
        let mut out = Self::zero(&self.lattice, self.cap.clone().min(other.cap.clone()), &self.ctx);
        out.truncated = self.truncated || other.truncated;
        for (d, a) in &self.terms {
            for (e, b) in &other.terms {
                let de: Vec<i64> = d.iter().zip(e).map(|(x, y)| x + y).collect();
                out.push(de, a.times(b));
            }
        }
        Ok(out)
    }

    /// Apply `f` to every coefficient.
    pub fn map(&self, f: impl Fn(&C) -> C) -> Self {
        let mut out = Self::zero(&self.lattice, self.cap.clone(), &self.ctx);
        out.truncated = self.truncated;
        for (d, c) in &self.terms {
            out.push(d.clone(), f(c));
        }
        out
    }

    /// Inverse up to the cap, as `a0^-1 sum_k (-(a - a0)/a0)^k`.
    pub fn geometric_inverse(&self) -> Result<Self, NovikovError> {
        let zero = vec![0; self.lattice.rank];
        let a0 = self.coefficient(&zero);
        let inv0 = a0.try_inverse().ok_or(NovikovError::NotInvertible)?;
        let mut x = self.map(|c| c.times(&inv0).negate());
        x.terms.remove(&zero);
        let mut acc = Self::one(&self.lattice, self.cap.clone(), &self.ctx);
        let mut pw = acc.clone();
        // Each power of x raises the least energy by a positive amount, so this terminates.
        loop {
            pw = pw.mul(&x)?;
            if pw.terms.is_empty() {
                break;
            }
            acc = acc.add(&pw)?;
        }
        acc.truncated = self.truncated;
        Ok(acc.map(|c| c.times(&inv0)))
    }

    pub fn to_json(&self) -> Value {
        let mut v = self.lattice.to_json();
        v["cap"] = Value::String(format_rational(&self.cap));
        v["truncated"] = Value::Bool(self.truncated);
        v["terms"] = Value::Array(self.terms.iter().map(|(d, c)| json!({"d": d, "coeff": c.to_json()})).collect());
        v
    }

    pub fn from_json(lattice: &Arc<DegreeLattice>, ctx: &C::Ctx, v: &Value) -> Result<Self, NovikovError> {
        let bad = |m: &str| NovikovError::Ring(RingError::Parse(format!("Novikov series: {m}")));
        let cap = parse_rational(v["cap"].as_str().ok_or_else(|| bad("missing cap"))?)?;
        let mut out = Self::zero(lattice, cap, ctx);
        for t in v["terms"].as_array().ok_or_else(|| bad("missing terms"))? {
            let d: Vec<i64> = t["d"]
                .as_array()
                .ok_or_else(|| bad("missing d"))?
                .iter()
                .map(|x| x.as_i64().ok_or_else(|| bad("bad degree")))
                .collect::<Result<_, _>>()?;
            out.add_term(d, C::from_json(ctx, &t["coeff"])?)?;
        }
        out.truncated = v["truncated"].as_bool().unwrap_or(false);
        Ok(out)
    }
}

impl<C: Ring> NovikovSeries<C> {
    /// Least energy among stored nonzero degrees.
    pub fn min_positive_energy(&self) -> Option<Rational> {
        self.terms.keys().map(|d| self.lattice.energy(d)).filter(|e| !e.is_zero()).min()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;

    fn line(cap: i64) -> (Arc<DegreeLattice>, Rational) {
        (DegreeLattice::new(vec![vec![1]], vec![int(1)]).unwrap(), int(cap))
    }

    fn series(l: &Arc<DegreeLattice>, cap: &Rational, cs: &[(i64, Rational)]) -> NovikovSeries<Rational> {
        let mut s = NovikovSeries::zero(l, cap.clone(), &());
        for (d, c) in cs {
            s.add_term(vec![*d], c.clone()).unwrap();
        }
        s
    }

    #[test]
    fn product_with_and_without_room() {
        let (l, cap) = line(2);
        let a = series(&l, &cap, &[(0, int(1)), (1, int(1))]);
        let p = a.mul(&a).unwrap();
        assert_eq!(p, series(&l, &cap, &[(0, int(1)), (1, int(2)), (2, int(1))]));
        assert!(!p.is_truncated());
        assert_eq!(a.mul(&NovikovSeries::one(&l, cap.clone(), &())).unwrap(), a);
        let (l1, cap1) = line(1);
        let b = series(&l1, &cap1, &[(0, int(1)), (1, int(1))]);
        let p = b.mul(&b).unwrap();
        assert_eq!(p.terms().len(), 2);
        assert_eq!(p.coefficient(&[1]), int(2));
        assert!(p.is_truncated());
    }

    #[test]
    fn geometric_inverses() {
        let (l, cap) = line(5);
        let a = series(&l, &cap, &[(0, int(1)), (1, int(-1))]);
        let inv = a.geometric_inverse().unwrap();
        assert_eq!(inv.terms().len(), 6);
        assert!(inv.terms().values().all(|c| *c == int(1)));
        let one = NovikovSeries::one(&l, cap.clone(), &());
        assert_eq!(one.geometric_inverse().unwrap(), one);
        let b = series(&l, &cap, &[(0, int(2)), (1, int(1))]);
        let binv = b.geometric_inverse().unwrap();
        assert_eq!(binv.coefficient(&[0]), rat(1, 2));
        assert_eq!(binv.coefficient(&[1]), rat(-1, 4));
        assert_eq!(binv.coefficient(&[2]), rat(1, 8));
        assert_eq!(b.mul(&binv).unwrap().terms(), one.terms());
        let zero_const = series(&l, &cap, &[(1, int(1))]);
        assert_eq!(zero_const.geometric_inverse(), Err(NovikovError::NotInvertible));
    }

    #[test]
    fn lattice_checks() {
        assert!(matches!(
            DegreeLattice::new(vec![vec![1], vec![-1]], vec![int(1)]),
            Err(NovikovError::NonPositiveEnergy(_))
        ));
        let l = DegreeLattice::new(vec![vec![0, 1], vec![1, -1]], vec![int(2), int(1)]).unwrap();
        assert!(l.is_effective(&[1, 0]));
        assert!(!l.is_effective(&[0, -1]));
        let ds = l.degrees_up_to(&int(2));
        assert_eq!(ds, vec![vec![0, 0], vec![0, 1], vec![0, 2], vec![1, -1], vec![1, 0], vec![2, -2]]);
        let mut s = NovikovSeries::<Rational>::zero(&l, int(2), &());
        assert!(s.add_term(vec![-1, 0], int(1)).is_err());
        assert_eq!(l.energy(&[1, 1]) , l.energy(&[1, 0]) + l.energy(&[0, 1]));
    }

    #[test]
    fn json_roundtrip() {
        let (l, cap) = line(3);
        let a = series(&l, &cap, &[(0, rat(1, 3)), (2, int(-7))]);
        let back = NovikovSeries::<Rational>::from_json(&l, &(), &a.to_json()).unwrap();
        assert_eq!(a, back);
    }
}
