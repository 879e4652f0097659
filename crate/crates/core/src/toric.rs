//! Combinatorics of a torus GIT datum: chambers, fixed points, walls along a
//! polarization family, the moment polytope and the Givental potential.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::linalg::{
    det, dot, dot_qi, feasible_point, in_cone, inverse, mat_vec, primitive, rank, smith_normal_form, solve,
    subsets_of_size, to_q, to_q_mat, transpose, IMat, Inequality, QMat, QVec,
};
use crate::novikov::DegreeLattice;
use crate::ring::{format_rational, int, parse_rational, vars, MultiLaurent, Rational, RootOfUnity, Vars};

/// Largest number of weights accepted by the subset enumerations.
pub const MAX_WEIGHTS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ToricError {
    #[error("weights must have length {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("need at least r = {r} weights spanning the dual of the Lie algebra (rank {rank} from {k} weights)")]
    Rank { r: usize, k: usize, rank: usize },
    #[error("polarization is not in the cone of weights: the quotient is empty")]
    EmptyQuotient,
    #[error("polarization lies on a wall spanned by weights {subsets:?}")]
    OnWall { subsets: Vec<Vec<usize>> },
    #[error("too many weights for subset enumeration: {0} > {MAX_WEIGHTS}")]
    TooLarge(usize),
    #[error("full chamber enumeration supports rank at most 3 (got {0}); use a polarization family")]
    RankTooLarge(usize),
    #[error("residual torus has dimension {0}, expected 1")]
    NotOneDimensional(usize),
    #[error("polarization family endpoints must differ")]
    DegenerateFamily,
    #[error("{0}")]
    Parse(String),
}

/// Weights `mu_1..mu_k` in `Z^r` and a rational polarization `theta`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToricGitDatum {
    r: usize,
    weights: Vec<Vec<i64>>,
    theta: QVec,
    halfspace_ok: bool,
}

impl ToricGitDatum {
    pub fn new(weights: Vec<Vec<i64>>, theta: QVec) -> Result<Self, ToricError> {
        let r = theta.len();
        for w in &weights {
            if w.len() != r {
                return Err(ToricError::Dimension { expected: r, found: w.len() });
            }
        }
        let k = weights.len();
        if k > MAX_WEIGHTS {
            return Err(ToricError::TooLarge(k));
        }
        let rk = rank(&to_q_mat(&weights));
        if k < r || rk < r {
            return Err(ToricError::Rank { r, k, rank: rk });
        }
        let halfspace_ok = feasible_point(
            &weights.iter().map(|w| Inequality::gt(to_q(w), Rational::zero())).collect::<Vec<_>>(),
            r,
        )
        .is_some();
        Ok(ToricGitDatum { r, weights, theta, halfspace_ok })
    }

    /// Same weights, different polarization.
    pub fn with_theta(&self, theta: QVec) -> Result<Self, ToricError> {
        if theta.len() != self.r {
            return Err(ToricError::Dimension { expected: self.r, found: theta.len() });
        }
        Ok(ToricGitDatum { theta, ..self.clone() })
    }

    pub fn rank(&self) -> usize {
        self.r
    }

    pub fn k(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[Vec<i64>] {
        &self.weights
    }

    pub fn theta(&self) -> &QVec {
        &self.theta
    }

    /// Whether all weights lie in an open half-space.
    pub fn halfspace_ok(&self) -> bool {
        self.halfspace_ok
    }

    /// `mu_j(d)`.
    pub fn pairing(&self, j: usize, d: &[i64]) -> i64 {
        self.weights[j].iter().zip(d).map(|(a, b)| a * b).sum()
    }

    pub fn x_vars(&self) -> Vars {
        let names: Vec<String> = (1..=self.k()).map(|j| format!("X{j}")).collect();
        vars(&names)
    }

    fn weight_q(&self, j: usize) -> QVec {
        to_q(&self.weights[j])
    }

    /// Whether the polarization is in the closed cone of the weights.
    pub fn is_nonempty(&self) -> bool {
        let gens: Vec<QVec> = (0..self.k()).map(|j| self.weight_q(j)).collect();
        in_cone(&gens, &self.theta) && !self.theta.iter().all(|x| x.is_zero())
    }

    pub fn require_nonempty(&self) -> Result<(), ToricError> {
        if self.is_nonempty() {
            Ok(())
        } else {
            Err(ToricError::EmptyQuotient)
        }
    }

    /// Subsets `T` of `r - 1` independent weights with `theta` in `Cone(mu_T)`.
    pub fn wall_subsets(&self, theta: &[Rational]) -> Vec<Vec<usize>> {
        let gens: Vec<QVec> = (0..self.k()).map(|j| self.weight_q(j)).collect();
        subsets_of_size(self.k(), self.r - 1)
            .into_iter()
            .filter(|t| {
                let cols: Vec<QVec> = t.iter().map(|&j| gens[j].clone()).collect();
                (t.is_empty() || rank(&transpose(&cols)) == t.len()) && {
                    let sub: Vec<QVec> = cols;
                    if sub.is_empty() {
                        theta.iter().all(|x| x.is_zero())
                    } else {
                        in_cone(&sub, theta)
                    }
                }
            })
            .collect()
    }

    pub fn require_generic(&self) -> Result<(), ToricError> {
        let w = self.wall_subsets(&self.theta);
        if w.is_empty() {
            Ok(())
        } else {
            Err(ToricError::OnWall { subsets: w })
        }
    }

    /// Matrix with rows `mu_j`, `j` in `basis`.
    fn block(&self, basis: &[usize]) -> QMat {
        basis.iter().map(|&j| self.weight_q(j)).collect()
    }

    /// Coefficients `lambda` with `sum lambda_i mu_{B_i} = v`, if `mu_B` is invertible.
    fn coords(&self, basis: &[usize], v: &[Rational]) -> Option<QVec> {
        let inv = inverse(&transpose(&self.block(basis)))?;
        Some(mat_vec(&inv, v))
    }

    /// Torus-fixed points of the quotient at the current polarization.
    pub fn fixed_points(&self) -> Result<Vec<FixedPoint>, ToricError> {
        self.require_generic()?;
        let mut out = Vec::new();
        for b in subsets_of_size(self.k(), self.r) {
            let Some(l) = self.coords(&b, &self.theta) else { continue };
            if l.iter().all(|x| x.is_positive()) {
                out.push(self.fixed_point(b));
            }
        }
        Ok(out)
    }

    fn fixed_point(&self, basis: Vec<usize>) -> FixedPoint {
        let k = self.k();
        let a: Vec<QVec> = (0..k).map(|j| self.coords(&basis, &self.weight_q(j)).expect("independent")).collect();
        let mut tangent_index = Vec::new();
        let mut tangent_weights = Vec::new();
        for j in (0..k).filter(|j| !basis.contains(j)) {
            let mut w = vec![Rational::zero(); k];
            for (pos, &i) in basis.iter().enumerate() {
                w[i] = a[j][pos].clone();
            }
            w[j] -= Rational::one();
            tangent_index.push(j);
            tangent_weights.push(w);
        }
        let orbifold = tangent_weights.iter().flatten().any(|x| !x.is_integer());
        let d = det(&self.block(&basis)).abs().to_integer();
        let block_inverse = inverse(&transpose(&self.block(&basis))).expect("independent");
        FixedPoint {
            basis,
            tangent_index,
            tangent_weights,
            orbifold,
            stabilizer_order: i64::try_from(d).expect("small determinant"),
            block_inverse,
        }
    }

    /// Hyperplanes spanned by `r - 1` independent weights, as primitive normals.
    pub fn wall_normals(&self) -> Vec<Vec<i64>> {
        let mut out: BTreeSet<Vec<i64>> = BTreeSet::new();
        for t in subsets_of_size(self.k(), self.r - 1) {
            let rows: QMat = t.iter().map(|&j| self.weight_q(j)).collect();
            let ns = if rows.is_empty() {
                (0..self.r).map(|i| (0..self.r).map(|j| if i == j { int(1) } else { int(0) }).collect()).collect()
            } else {
                crate::linalg::nullspace(&rows)
            };
            if ns.len() != 1 {
                continue;
            }
            let mut n = primitive(&ns[0]);
            if n.iter().find(|x| **x != 0).is_some_and(|x| *x < 0) {
                n.iter_mut().for_each(|x| *x = -*x);
            }
            out.insert(n);
        }
        out.into_iter().collect()
    }

    /// Cells of the arrangement of wall hyperplanes, each with the subsets `S`
    /// of `r` weights whose cone contains the cell.
    pub fn chambers(&self) -> Result<Vec<Chamber>, ToricError> {
        if self.r > 3 {
            return Err(ToricError::RankTooLarge(self.r));
        }
        let normals = self.wall_normals();
        let mut cells = Vec::new();
        let mut signs = Vec::new();
        self.cells_rec(&normals, &mut signs, &mut cells);
        Ok(cells
            .into_iter()
            .map(|(signs, point)| {
                let bases = self.bases_containing(&point);
                Chamber { signs, representative: point, bases }
            })
            .collect())
    }

    fn cells_rec(&self, normals: &[Vec<i64>], signs: &mut Vec<i8>, out: &mut Vec<(Vec<i8>, QVec)>) {
        let sys: Vec<Inequality> = signs
            .iter()
            .zip(normals)
            .map(|(&s, n)| Inequality::gt(to_q(n).into_iter().map(|x| x * int(s as i64)).collect(), Rational::zero()))
            .collect();
        let Some(p) = feasible_point(&sys, self.r) else { return };
        if signs.len() == normals.len() {
            out.push((signs.clone(), p));
            return;
        }
        for s in [1i8, -1] {
            signs.push(s);
            self.cells_rec(normals, signs, out);
            signs.pop();
        }
    }

    /// Size-`r` subsets whose cone contains `theta` in its interior.
    pub fn bases_containing(&self, theta: &[Rational]) -> Vec<Vec<usize>> {
        subsets_of_size(self.k(), self.r)
            .into_iter()
            .filter(|b| self.coords(b, theta).is_some_and(|l| l.iter().all(|x| x.is_positive())))
            .collect()
    }

    /// `theta(t) = (1-t)/2 theta_minus + (1+t)/2 theta_plus`.
    pub fn family_point(theta_minus: &[Rational], theta_plus: &[Rational], t: &Rational) -> QVec {
        let a = (Rational::one() - t) / int(2);
        let b = (Rational::one() + t) / int(2);
        theta_minus.iter().zip(theta_plus).map(|(x, y)| &a * x + &b * y).collect()
    }

    /// Isolated wall fixed points met by the family for `t` in `(-1, 1)`.
    pub fn family_walls(&self, theta_minus: &[Rational], theta_plus: &[Rational]) -> Result<Vec<WallPoint>, ToricError> {
        if theta_minus == theta_plus {
            return Err(ToricError::DegenerateFamily);
        }
        let delta: QVec = theta_plus.iter().zip(theta_minus).map(|(p, m)| p - m).collect();
        let mut seen: BTreeSet<(Rational, Vec<usize>)> = BTreeSet::new();
        let mut out = Vec::new();
        for mut lambda in self.wall_normals() {
            let ld = dot_qi(&delta, &lambda);
            if ld.is_zero() {
                continue;
            }
            if ld.is_negative() {
                lambda.iter_mut().for_each(|x| *x = -*x);
            }
            let lm = dot_qi(theta_minus, &lambda);
            let lp = dot_qi(theta_plus, &lambda);
            let t0 = (&lm + &lp) / (&lm - &lp);
            if t0 <= -Rational::one() || t0 >= Rational::one() {
                continue;
            }
            let theta0 = Self::family_point(theta_minus, theta_plus, &t0);
            let zero_set: Vec<usize> = (0..self.k()).filter(|&j| self.pairing(j, &lambda) == 0).collect();
            let gens: Vec<QVec> = zero_set.iter().map(|&j| self.weight_q(j)).collect();
            let in_face = if gens.is_empty() { theta0.iter().all(|x| x.is_zero()) } else { in_cone(&gens, &theta0) };
            if !in_face || !seen.insert((t0.clone(), zero_set.clone())) {
                continue;
            }
            let isolated = zero_set.len() == self.r - 1 && {
                // Relative interior of the simplicial face.
                if zero_set.is_empty() {
                    true
                } else {
                    let m = transpose(&gens);
                    solve(&m, &theta0).is_some_and(|l| l.iter().all(|x| x.is_positive()))
                }
            };
            let normal_weights: Vec<i64> =
                (0..self.k()).filter(|j| !zero_set.contains(j)).map(|j| self.pairing(j, &lambda)).collect();
            out.push(WallPoint { time: t0, lambda, support: zero_set, normal_weights, isolated });
        }
        out.sort_by(|a, b| a.time.cmp(&b.time).then(a.support.cmp(&b.support)));
        Ok(out)
    }

    /// Open intervals of the family between consecutive singular times.
    pub fn family_chambers(&self, theta_minus: &[Rational], theta_plus: &[Rational]) -> Result<Vec<FamilyChamber>, ToricError> {
        let walls = self.family_walls(theta_minus, theta_plus)?;
        let mut times: Vec<Rational> = walls.iter().map(|w| w.time.clone()).collect();
        times.dedup();
        let mut bounds = vec![-Rational::one()];
        bounds.extend(times);
        bounds.push(Rational::one());
        Ok(bounds
            .windows(2)
            .map(|w| {
                let mid = (&w[0] + &w[1]) / int(2);
                let theta = Self::family_point(theta_minus, theta_plus, &mid);
                let datum = self.with_theta(theta.clone()).expect("same rank");
                FamilyChamber { lo: w[0].clone(), hi: w[1].clone(), nonempty: datum.is_nonempty(), theta }
            })
            .collect())
    }

    /// Default effective cone: rays of `{d : mu_j(d) >= 0, j in B}` over all fixed points `B`.
    pub fn effective_cone(&self) -> Result<Vec<Vec<i64>>, ToricError> {
        let mut rays: BTreeSet<Vec<i64>> = BTreeSet::new();
        for fp in self.fixed_points()? {
            let inv = inverse(&self.block(&fp.basis)).expect("independent");
            for col in transpose(&inv) {
                rays.insert(primitive(&col));
            }
        }
        Ok(rays.into_iter().collect())
    }

    /// Degree lattice with the default effective cone and the polarization as energy.
    pub fn degree_lattice(&self) -> Result<Arc<DegreeLattice>, ToricError> {
        let cone = self.effective_cone()?;
        DegreeLattice::new(cone, self.theta.clone()).map_err(|e| ToricError::Parse(e.to_string()))
    }

    /// Exponents of the Givental potential on the dual torus, from the Smith form
    /// of the weight matrix.
    pub fn givental_potential(&self, constants: Option<&[Rational]>) -> Result<GiventalPotential, ToricError> {
        self.require_nonempty()?;
        let a: IMat = self.weights.clone();
        let s = smith_normal_form(&a);
        let k = self.k();
        let nu: Vec<Vec<i64>> = (0..k).map(|j| (self.r..k).map(|i| s.u[i][j]).collect()).collect();
        let torsion: i64 = s.invariants().iter().product();
        let constants = match constants {
            Some(c) => c.to_vec(),
            None => {
                // c_j = -x_j for a particular solution of sum x_j mu_j = theta.
                let x = solve(&transpose(&to_q_mat(&self.weights)), &self.theta).expect("full rank");
                x.into_iter().map(|v| -v).collect()
            }
        };
        Ok(GiventalPotential { nu, constants, torsion_index: torsion })
    }

    /// Per-weight roots of unity `exp(2 pi i mu_j(xi))` over stabilizers of fixed points.
    pub fn roots_of_unity_sets(&self) -> Result<Vec<BTreeSet<RootOfUnity>>, ToricError> {
        let mut out = vec![BTreeSet::from([RootOfUnity::one()]); self.k()];
        for fp in self.fixed_points()? {
            // Stabilizer: xi in Q^r / Z^r with N xi integral, N the rows mu_i, i in B.
            let n: IMat = fp.basis.iter().map(|&j| self.weights[j].clone()).collect();
            let s = smith_normal_form(&n);
            let diag: Vec<i64> = (0..self.r).map(|i| s.d[i][i]).collect();
            let mut idx = vec![0i64; self.r];
            loop {
                // xi = V D^-1 n'
                let scaled: QVec = idx.iter().zip(&diag).map(|(x, d)| Rational::new((*x).into(), (*d).into())).collect();
                let xi: QVec = s.v.iter().map(|row| dot_qi(&scaled, row)).collect();
                for (j, set) in out.iter_mut().enumerate() {
                    set.insert(RootOfUnity::from_rational(&dot_qi(&xi, &self.weights[j])));
                }
                let mut p = 0;
                loop {
                    if p == self.r {
                        break;
                    }
                    idx[p] += 1;
                    if idx[p] < diag[p] {
                        break;
                    }
                    idx[p] = 0;
                    p += 1;
                }
                if p == self.r {
                    break;
                }
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "r": self.r,
            "weights": self.weights,
            "theta": self.theta.iter().map(format_rational).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, ToricError> {
        let bad = |m: &str| ToricError::Parse(format!("toric datum: {m}"));
        let weights: Vec<Vec<i64>> = v["weights"]
            .as_array()
            .ok_or_else(|| bad("missing weights"))?
            .iter()
            .map(|w| {
                w.as_array()
                    .ok_or_else(|| bad("weight must be a list"))?
                    .iter()
                    .map(|x| x.as_i64().ok_or_else(|| bad("weight entries must be integers")))
                    .collect()
            })
            .collect::<Result<_, _>>()?;
        let theta: QVec = v["theta"]
            .as_array()
            .ok_or_else(|| bad("missing theta"))?
            .iter()
            .map(|x| match x {
                Value::String(s) => parse_rational(s).map_err(|e| bad(&e.to_string())),
                Value::Number(n) => n.as_i64().map(int).ok_or_else(|| bad("theta entries must be integers or strings")),
                _ => Err(bad("theta entries must be integers or strings")),
            })
            .collect::<Result<_, _>>()?;
        if let Some(r) = v.get("r").and_then(|r| r.as_u64()) {
            if r as usize != theta.len() {
                return Err(ToricError::Dimension { expected: r as usize, found: theta.len() });
            }
        }
        Self::new(weights, theta)
    }
}

/// A torus-fixed point of the quotient, indexed by a basis `B` of weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedPoint {
    pub basis: Vec<usize>,
    /// Coordinates `j` not in `B`, one per tangent weight.
    pub tangent_index: Vec<usize>,
    /// Characters of the ambient torus `T^k`; trivial on `G`.
    pub tangent_weights: Vec<QVec>,
    pub orbifold: bool,
    pub stabilizer_order: i64,
    block_inverse: QMat,
}

impl FixedPoint {
    /// Restriction of the line bundle of character `psi` as a `T^k` character.
    ///
    /// With a lift `psi~` (so `sum psi~_j mu_j = psi`) the result is a character of
    /// the residual torus.
    pub fn class_character(&self, psi: &[i64], lift: Option<&[i64]>, k: usize) -> QVec {
        let b = mat_vec(&self.block_inverse, &to_q(psi));
        let mut v = vec![Rational::zero(); k];
        for (pos, &i) in self.basis.iter().enumerate() {
            v[i] = b[pos].clone();
        }
        if let Some(l) = lift {
            for (x, y) in v.iter_mut().zip(l) {
                *x -= int(*y);
            }
        }
        v
    }

    /// The restricted class as a monomial in `x_1..x_k`, when integral.
    pub fn restricted_class(&self, psi: &[i64], lift: Option<&[i64]>, k: usize) -> Option<MultiLaurent> {
        let v = self.class_character(psi, lift, k);
        if v.iter().any(|x| !x.is_integer()) {
            return None;
        }
        let names: Vec<String> = (1..=k).map(|j| format!("x{j}")).collect();
        let e: Vec<i64> = v.iter().map(|x| i64::try_from(x.to_integer()).expect("small")).collect();
        Some(MultiLaurent::monomial(&vars(&names), e, Rational::one()))
    }

    /// Integral tangent weights, if the point is not an orbifold point.
    pub fn integral_tangent_weights(&self) -> Option<Vec<Vec<i64>>> {
        if self.orbifold {
            return None;
        }
        Some(
            self.tangent_weights
                .iter()
                .map(|w| w.iter().map(|x| i64::try_from(x.to_integer()).expect("small")).collect())
                .collect(),
        )
    }

    pub fn to_json(&self) -> Value {
        json!({
            "basis": self.basis,
            "tangent_weights": self.tangent_weights.iter()
                .map(|w| w.iter().map(format_rational).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "orbifold": self.orbifold,
            "stabilizer_order": self.stabilizer_order,
        })
    }
}

/// A cell of the wall arrangement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chamber {
    /// Side of each wall normal (in the order of [`ToricGitDatum::wall_normals`]).
    pub signs: Vec<i8>,
    pub representative: QVec,
    /// Bases whose cone contains the cell; empty means an empty quotient.
    pub bases: Vec<Vec<usize>>,
}

impl Chamber {
    pub fn is_empty_quotient(&self) -> bool {
        self.bases.is_empty()
    }
}

/// An isolated (or rejected) fixed point met by a polarization family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WallPoint {
    pub time: Rational,
    /// Primitive one-parameter subgroup fixing the point, oriented along the family.
    pub lambda: Vec<i64>,
    /// Weights vanishing on `lambda`: the coordinates that stay nonzero.
    pub support: Vec<usize>,
    /// `mu_j(lambda)` for `j` outside the support.
    pub normal_weights: Vec<i64>,
    pub isolated: bool,
}

/// One interval of a polarization family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyChamber {
    pub lo: Rational,
    pub hi: Rational,
    pub theta: QVec,
    pub nonempty: bool,
}

/// `W = sum_j q^{c_j} y^{nu_j}` on the dual torus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GiventalPotential {
    pub nu: Vec<Vec<i64>>,
    pub constants: QVec,
    /// Product of the Smith invariants of the weight matrix.
    pub torsion_index: i64,
}

impl GiventalPotential {
    /// Number of critical points when the dual torus is one-dimensional: the
    /// Newton-polygon length of `y dW/dy`.
    pub fn critical_count_1d(&self) -> Result<usize, ToricError> {
        let dim = self.nu.first().map_or(0, |v| v.len());
        if dim != 1 {
            return Err(ToricError::NotOneDimensional(dim));
        }
        let exps: Vec<i64> = self.nu.iter().map(|v| v[0]).filter(|&e| e != 0).collect();
        let lo = exps.iter().min().copied().unwrap_or(0);
        let hi = exps.iter().max().copied().unwrap_or(0);
        Ok((hi - lo) as usize)
    }

    /// Vertices of `{y : <y, nu_j> >= c_j}`, found by solving every tight subsystem.
    pub fn polytope_vertices(&self) -> Vec<QVec> {
        let dim = self.nu.first().map_or(0, |v| v.len());
        let k = self.nu.len();
        let mut out: Vec<QVec> = Vec::new();
        for s in subsets_of_size(k, dim) {
            let m: QMat = s.iter().map(|&j| to_q(&self.nu[j])).collect();
            if rank(&m) < dim {
                continue;
            }
            let rhs: QVec = s.iter().map(|&j| self.constants[j].clone()).collect();
            let y = solve(&m, &rhs).expect("nonsingular");
            let ok = (0..k).all(|j| dot(&to_q(&self.nu[j]), &y) >= self.constants[j]);
            if ok && !out.contains(&y) {
                out.push(y);
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "nu": self.nu,
            "constants": self.constants.iter().map(format_rational).collect::<Vec<_>>(),
            "torsion_index": self.torsion_index,
        })
    }
}

/// Count of bases gained minus bases lost between two polarizations.
pub fn basis_change(datum: &ToricGitDatum, from: &[Rational], to: &[Rational]) -> i64 {
    let a: BTreeSet<Vec<usize>> = datum.bases_containing(from).into_iter().collect();
    let b: BTreeSet<Vec<usize>> = datum.bases_containing(to).into_iter().collect();
    b.difference(&a).count() as i64 - a.difference(&b).count() as i64
}

/// Group fixed points of chambers by the set of bases, for reporting.
pub fn chamber_summary(chambers: &[Chamber]) -> BTreeMap<usize, usize> {
    let mut m = BTreeMap::new();
    for c in chambers {
        *m.entry(c.bases.len()).or_insert(0) += 1;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;

    fn datum(w: &[&[i64]], theta: &[i64]) -> ToricGitDatum {
        ToricGitDatum::new(w.iter().map(|x| x.to_vec()).collect(), to_q(theta)).unwrap()
    }

    #[test]
    fn rank_one_chambers() {
        for w in [&[&[1i64][..], &[1]][..], &[&[1], &[2]]] {
            let d = datum(w, &[1]);
            let ch = d.chambers().unwrap();
            assert_eq!(ch.len(), 2);
            assert_eq!(ch.iter().filter(|c| !c.is_empty_quotient()).count(), 1);
        }
    }

    #[test]
    fn projective_space_fixed_points() {
        for n in 1..=4usize {
            let w: Vec<Vec<i64>> = vec![vec![1]; n + 1];
            let d = ToricGitDatum::new(w, to_q(&[1])).unwrap();
            let fps = d.fixed_points().unwrap();
            assert_eq!(fps.len(), n + 1);
            // Product of tangent characters is the anticanonical restriction.
            let anti: Vec<i64> = vec![n as i64 + 1];
            let lift = vec![1i64; n + 1];
            for fp in &fps {
                let sum: QVec = (0..n + 1).map(|i| fp.tangent_weights.iter().map(|w| w[i].clone()).sum()).collect();
                assert_eq!(sum, fp.class_character(&anti, Some(&lift), n + 1));
            }
        }
    }

    #[test]
    fn product_of_lines() {
        let d = datum(&[&[1, 0], &[1, 0], &[0, 1], &[0, 1]], &[1, 1]);
        let fps = d.fixed_points().unwrap();
        assert_eq!(fps.len(), 4);
        for fp in &fps {
            let sum: QVec = (0..4).map(|i| fp.tangent_weights.iter().map(|w| w[i].clone()).sum()).collect();
            assert_eq!(sum, fp.class_character(&[2, 2], Some(&[1, 1, 1, 1]), 4));
        }
        let v = d.givental_potential(None).unwrap().polytope_vertices();
        assert_eq!(v.len(), 4);
    }

    #[test]
    fn on_wall_and_empty() {
        let d = datum(&[&[1], &[1]], &[0]);
        assert!(matches!(d.fixed_points(), Err(ToricError::OnWall { .. })));
        let e = datum(&[&[1], &[1]], &[-1]);
        assert!(!e.is_nonempty());
        assert_eq!(e.fixed_points().unwrap().len(), 0);
        assert_eq!(e.givental_potential(None), Err(ToricError::EmptyQuotient));
        assert!(ToricGitDatum::new(vec![vec![1, 0]], to_q(&[1, 1])).is_err());
    }

    #[test]
    fn givental_potentials() {
        let p1 = datum(&[&[1], &[1]], &[1]).givental_potential(None).unwrap();
        assert_eq!(p1.critical_count_1d().unwrap(), 2);
        let p12 = datum(&[&[1], &[2]], &[1]).givental_potential(None).unwrap();
        let mut nu: Vec<i64> = p12.nu.iter().map(|v| v[0]).collect();
        if nu[0] < 0 {
            nu.iter_mut().for_each(|x| *x = -*x);
        }
        assert_eq!(nu, vec![2, -1]);
        assert_eq!(p12.critical_count_1d().unwrap(), 3);
        let p2 = datum(&[&[1], &[1], &[1]], &[1]).givental_potential(None).unwrap();
        assert!(p2.critical_count_1d().is_err());
    }

    #[test]
    fn roots_of_unity() {
        let pn = datum(&[&[1], &[1], &[1]], &[1]).roots_of_unity_sets().unwrap();
        assert!(pn.iter().all(|s| s.len() == 1));
        let p12 = datum(&[&[1], &[2]], &[1]).roots_of_unity_sets().unwrap();
        assert_eq!(p12[0], BTreeSet::from([RootOfUnity::one(), RootOfUnity::new(1, 2).unwrap()]));
        assert_eq!(p12[1], BTreeSet::from([RootOfUnity::one()]));
        // Literal definition: g^2 = 1 for the whole stabilizer of the single weight.
        let bz2 = datum(&[&[2]], &[1]).roots_of_unity_sets().unwrap();
        assert_eq!(bz2[0], BTreeSet::from([RootOfUnity::one()]));
    }

    #[test]
    fn blowup_effective_cone() {
        let d = datum(&[&[1, 0], &[1, 0], &[1, 1], &[0, 1]], &[2, 1]);
        assert_eq!(d.fixed_points().unwrap().len(), 4);
        let cone = d.effective_cone().unwrap();
        assert!(cone.contains(&vec![0, 1]) && cone.contains(&vec![1, -1]));
        let gens: Vec<QVec> = cone.iter().map(|g| to_q(g)).collect();
        assert!(!in_cone(&gens, &to_q(&[-1, 1])));
    }

    #[test]
    fn pn_family_wall() {
        let d = datum(&[&[1], &[1], &[1]], &[1]);
        let walls = d.family_walls(&to_q(&[-1]), &to_q(&[1])).unwrap();
        assert_eq!(walls.len(), 1);
        assert_eq!(walls[0].time, int(0));
        assert_eq!(walls[0].normal_weights, vec![1, 1, 1]);
        assert!(walls[0].isolated);
        let none = d.family_walls(&to_q(&[1]), &to_q(&[2])).unwrap();
        assert!(none.is_empty());
        assert_eq!(basis_change(&d, &to_q(&[-1]), &to_q(&[1])), 3);
        assert_eq!(rat(1, 2) + rat(1, 2), int(1));
    }
}
