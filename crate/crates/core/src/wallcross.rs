//! Wall-crossing sweeps of Euler characteristics along a family of polarizations.

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::linalg::{dot_i, smith_normal_form, QVec};
use crate::localization::{atiyah_segal_chi, generic_one_ps, residue, LocalizationError, LocalizationInput};
use crate::ring::{format_rational, int, Rational, RingError, ZRational};
use crate::toric::{ToricError, ToricGitDatum, WallPoint};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum WallcrossError {
    #[error("wall at t = {0} has a positive-dimensional fixed locus; only isolated wall points are supported")]
    PositiveDimensional(String),
    #[error("wall at t = {time} has a fixed point with finite stabilizer of order {order}; orbifold walls are not supported")]
    OrbifoldWall { time: String, order: i64 },
    #[error("class has {found} coordinates, expected {expected}")]
    ClassDimension { expected: usize, found: usize },
    #[error("no generic one-parameter subgroup found for chamber at theta = {0}")]
    NoGenericSubgroup(String),
    #[error("non-integral contribution {0}")]
    NonIntegral(String),
    #[error("first chamber is nonempty and not smooth; cannot start the sweep")]
    NoStartingValue,
    #[error("telescoping check failed:\n{0}")]
    Telescope(String),
    #[error(transparent)]
    Toric(#[from] ToricError),
    #[error(transparent)]
    Localization(#[from] LocalizationError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// A virtual combination `sum n_i L_{psi_i}` of line bundles from characters.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct KClass {
    pub terms: Vec<(i64, Vec<i64>)>,
}

impl KClass {
    pub fn line(psi: Vec<i64>) -> Self {
        KClass { terms: vec![(1, psi)] }
    }

    pub fn structure_sheaf(r: usize) -> Self {
        Self::line(vec![0; r])
    }

    pub fn zero() -> Self {
        KClass::default()
    }

    fn check(&self, r: usize) -> Result<(), WallcrossError> {
        for (_, psi) in &self.terms {
            if psi.len() != r {
                return Err(WallcrossError::ClassDimension { expected: r, found: psi.len() });
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        json!(self.terms.iter().map(|(n, psi)| json!({"coefficient": n, "character": psi})).collect::<Vec<_>>())
    }
}

/// All wall points met at one singular time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WallDatum {
    pub time: Rational,
    pub points: Vec<WallPoint>,
}

impl WallDatum {
    /// More than one fixed stratum at this time.
    pub fn is_multi(&self) -> bool {
        self.points.len() > 1
    }
}

/// Order of the finite part of the stabilizer of a wall point.
fn stabilizer_torsion(datum: &ToricGitDatum, w: &WallPoint) -> i64 {
    if w.support.is_empty() {
        return 1;
    }
    let rows: Vec<Vec<i64>> = w.support.iter().map(|&j| datum.weights()[j].clone()).collect();
    smith_normal_form(&rows).invariants().iter().filter(|&&d| d != 0).map(|d| d.abs()).product()
}

/// Singular times of the family, with isolated smooth wall points grouped by time.
pub fn singular_times(
    datum: &ToricGitDatum,
    theta_minus: &[Rational],
    theta_plus: &[Rational],
) -> Result<Vec<WallDatum>, WallcrossError> {
    let mut out: Vec<WallDatum> = Vec::new();
    for w in datum.family_walls(theta_minus, theta_plus)? {
        if !w.isolated {
            return Err(WallcrossError::PositiveDimensional(format_rational(&w.time)));
        }
        let order = stabilizer_torsion(datum, &w);
        if order != 1 {
            return Err(WallcrossError::OrbifoldWall { time: format_rational(&w.time), order });
        }
        match out.last_mut() {
            Some(last) if last.time == w.time => last.points.push(w),
            _ => out.push(WallDatum { time: w.time.clone(), points: vec![w] }),
        }
    }
    Ok(out)
}

/// `Resid(z^<psi, lambda> / prod (1 - z^-m))` for one wall point.
pub fn point_term(point: &WallPoint, psi: &[i64]) -> Result<Rational, WallcrossError> {
    let mut f = ZRational::monomial(&(), dot_i(psi, &point.lambda), Rational::one());
    for &m in &point.normal_weights {
        f = f.div_factor(-m, &Rational::one())?;
    }
    Ok(residue(&f)?)
}

/// Sum of the point terms over the wall, extended linearly in the class.
pub fn wall_term(wall: &WallDatum, class: &KClass) -> Result<Rational, WallcrossError> {
    let mut total = Rational::zero();
    for p in &wall.points {
        for (n, psi) in &class.terms {
            total += int(*n) * point_term(p, psi)?;
        }
    }
    Ok(total)
}

/// Euler characteristic by localization on a smooth nonempty quotient; `None` for orbifolds.
pub fn direct_chi(datum: &ToricGitDatum, class: &KClass) -> Result<Option<Rational>, WallcrossError> {
    if !datum.is_nonempty() {
        return Ok(Some(Rational::zero()));
    }
    let points = datum.fixed_points()?;
    if points.iter().any(|p| p.orbifold) {
        return Ok(None);
    }
    let mut total = Rational::zero();
    let mut one_ps: Option<Vec<i64>> = None;
    for (n, psi) in &class.terms {
        let mut input = LocalizationInput::from_datum(datum, psi, Vec::new())?;
        let a = match &one_ps {
            Some(a) => a.clone(),
            None => {
                let a = generic_one_ps(&input.points, datum.k(), 0).ok_or_else(|| {
                    WallcrossError::NoGenericSubgroup(datum.theta().iter().map(format_rational).collect::<Vec<_>>().join(","))
                })?;
                one_ps = Some(a.clone());
                a
            }
        };
        input.one_ps = a;
        total += int(*n) * atiyah_segal_chi(&input)?.euler_characteristic;
    }
    Ok(Some(total))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChamberReport {
    pub lo: Rational,
    pub hi: Rational,
    pub theta: QVec,
    pub nonempty: bool,
    pub fixed_points: usize,
    pub smooth: bool,
    /// Accumulated from the wall terms.
    pub chi: Rational,
    /// Recomputed by localization when the quotient is smooth.
    pub direct: Option<Rational>,
}

impl ChamberReport {
    pub fn description(&self) -> String {
        match (self.nonempty, self.smooth) {
            (false, _) => "empty".into(),
            (true, true) => format!("smooth, {} fixed points", self.fixed_points),
            (true, false) => format!("orbifold, {} fixed points", self.fixed_points),
        }
    }

    pub fn agrees(&self) -> bool {
        self.direct.as_ref().is_none_or(|d| d == &self.chi)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct WallReport {
    pub time: Rational,
    pub points: Vec<WallPoint>,
    pub point_terms: Vec<Rational>,
    pub term: Rational,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub theta_minus: QVec,
    pub theta_plus: QVec,
    pub class: KClass,
    pub chambers: Vec<ChamberReport>,
    pub walls: Vec<WallReport>,
    pub telescope_ok: bool,
}

/// Sweep the family from `theta_minus` to `theta_plus`, accumulating wall terms.
pub fn sweep(
    datum: &ToricGitDatum,
    theta_minus: &[Rational],
    theta_plus: &[Rational],
    class: &KClass,
) -> Result<SweepReport, WallcrossError> {
    class.check(datum.rank())?;
    let walls = singular_times(datum, theta_minus, theta_plus)?;
    let chambers = datum.family_chambers(theta_minus, theta_plus)?;
    let mut wall_reports = Vec::new();
    for w in &walls {
        let point_terms = w
            .points
            .iter()
            .map(|p| {
                class.terms.iter().try_fold(Rational::zero(), |acc, (n, psi)| Ok(acc + int(*n) * point_term(p, psi)?))
            })
            .collect::<Result<Vec<_>, WallcrossError>>()?;
        let term = point_terms.iter().sum();
        wall_reports.push(WallReport { time: w.time.clone(), points: w.points.clone(), point_terms, term });
    }
    let mut reports = Vec::new();
    let mut chi: Option<Rational> = None;
    for (i, c) in chambers.iter().enumerate() {
        let quotient = datum.with_theta(c.theta.clone())?;
        let (fixed_points, smooth) = if c.nonempty {
            let fps = quotient.fixed_points()?;
            (fps.len(), fps.iter().all(|p| !p.orbifold))
        } else {
            (0, true)
        };
        let direct = direct_chi(&quotient, class)?;
        let current = match chi.take() {
            None => direct.clone().ok_or(WallcrossError::NoStartingValue)?,
            Some(prev) => prev + &wall_reports[i - 1].term,
        };
        reports.push(ChamberReport {
            lo: c.lo.clone(),
            hi: c.hi.clone(),
            theta: c.theta.clone(),
            nonempty: c.nonempty,
            fixed_points,
            smooth,
            chi: current.clone(),
            direct,
        });
        chi = Some(current);
    }
    let telescope_ok = reports.iter().all(ChamberReport::agrees);
    Ok(SweepReport {
        theta_minus: theta_minus.to_vec(),
        theta_plus: theta_plus.to_vec(),
        class: class.clone(),
        chambers: reports,
        walls: wall_reports,
        telescope_ok,
    })
}

fn qvec_json(v: &[Rational]) -> Value {
    json!(v.iter().map(format_rational).collect::<Vec<_>>())
}

impl SweepReport {
    /// Chi values of the chambers in order.
    pub fn chi_sequence(&self) -> Vec<Rational> {
        self.chambers.iter().map(|c| c.chi.clone()).collect()
    }

    pub fn wall_terms(&self) -> Vec<Rational> {
        self.walls.iter().map(|w| w.term.clone()).collect()
    }

    /// `Ok` when every smooth chamber agrees with localization; otherwise the per-wall breakdown.
    pub fn require_telescope(&self) -> Result<(), WallcrossError> {
        if self.telescope_ok {
            Ok(())
        } else {
            Err(WallcrossError::Telescope(self.to_table()))
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "theta_minus": qvec_json(&self.theta_minus),
            "theta_plus": qvec_json(&self.theta_plus),
            "class": self.class.to_json(),
            "telescope_ok": self.telescope_ok,
            "chambers": self.chambers.iter().map(|c| json!({
                "interval": [format_rational(&c.lo), format_rational(&c.hi)],
                "theta": qvec_json(&c.theta),
                "nonempty": c.nonempty,
                "quotient": c.description(),
                "chi": format_rational(&c.chi),
                "direct_chi": c.direct.as_ref().map(format_rational),
            })).collect::<Vec<_>>(),
            "walls": self.walls.iter().map(|w| json!({
                "time": format_rational(&w.time),
                "multi": w.points.len() > 1,
                "term": format_rational(&w.term),
                "points": w.points.iter().zip(&w.point_terms).map(|(p, t)| json!({
                    "lambda": p.lambda,
                    "support": p.support,
                    "normal_weights": p.normal_weights,
                    "term": format_rational(t),
                })).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }

    pub fn to_table(&self) -> String {
        let mut s = format!("{:<22} {:<28} {:>6} {:>8}\n", "interval", "quotient", "chi", "direct");
        for (i, c) in self.chambers.iter().enumerate() {
            let direct = c.direct.as_ref().map(format_rational).unwrap_or_else(|| "-".into());
            let interval = format!("({}, {})", format_rational(&c.lo), format_rational(&c.hi));
            s += &format!("{:<22} {:<28} {:>6} {:>8}\n", interval, c.description(), format_rational(&c.chi), direct);
            if let Some(w) = self.walls.get(i) {
                let weights: Vec<String> = w.points.iter().map(|p| format!("{:?}", p.normal_weights)).collect();
                s += &format!("  wall t = {}: term {} from normal weights {}\n", format_rational(&w.time), format_rational(&w.term), weights.join(" "));
            }
        }
        s += &format!("telescope: {}\n", if self.telescope_ok { "ok" } else { "FAILED" });
        s
    }
}

/// Check a rational is an integer.
pub fn as_integer(q: &Rational) -> Result<i64, WallcrossError> {
    if !q.is_integer() {
        return Err(WallcrossError::NonIntegral(format_rational(q)));
    }
    i64::try_from(q.to_integer()).map_err(|_| WallcrossError::NonIntegral(format_rational(q)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{cremona, cremona_degenerate, projective_family};
    use crate::ring::binomial;

    #[test]
    fn projective_space() {
        for n in 0..=4usize {
            let f = projective_family(n);
            for k in -6i64..=6 {
                let r = sweep(&f.datum, &f.theta_minus, &f.theta_plus, &KClass::line(vec![k])).unwrap();
                assert!(r.telescope_ok);
                let expect = if k >= 0 {
                    binomial(n as i64 + k, k)
                } else {
                    let m = -k;
                    let sign = if n % 2 == 0 { 1 } else { -1 };
                    binomial(m - 1, m - n as i64 - 1) * sign
                };
                assert_eq!(r.chi_sequence(), vec![int(0), Rational::from_integer(expect)], "n={n} k={k}");
            }
        }
    }

    #[test]
    fn cremona_sweep() {
        let f = cremona_degenerate();
        let r = sweep(&f.datum, &f.theta_minus, &f.theta_plus, &KClass::structure_sheaf(4)).unwrap();
        assert!(r.telescope_ok, "{}", r.to_table());
        let seq: Vec<i64> = r.chi_sequence().iter().map(|q| as_integer(q).unwrap()).collect();
        assert_eq!(seq, vec![0, 1, 1, 1, 1, 1, 1, 0]);
        let terms = r.wall_terms();
        assert_eq!(terms.first(), Some(&int(1)));
        assert_eq!(terms.last(), Some(&int(-1)));
        assert!(terms[1..terms.len() - 1].iter().all(|t| t.is_zero()));
        assert!(r.walls.iter().any(|w| w.points.len() > 1));

        let g = cremona();
        let r = sweep(&g.datum, &g.theta_minus, &g.theta_plus, &KClass::structure_sheaf(4)).unwrap();
        assert!(r.telescope_ok);
        assert_eq!(r.chambers.len(), 9);
    }

    #[test]
    fn zero_class_and_reversal() {
        let f = cremona();
        let r = sweep(&f.datum, &f.theta_minus, &f.theta_plus, &KClass::zero()).unwrap();
        assert!(r.chi_sequence().iter().all(|q| q.is_zero()));
        let class = KClass::line(vec![1, 0, 1, 1]);
        let fwd = sweep(&f.datum, &f.theta_minus, &f.theta_plus, &class).unwrap();
        let bwd = sweep(&f.datum, &f.theta_plus, &f.theta_minus, &class).unwrap();
        assert!(fwd.telescope_ok && bwd.telescope_ok);
        let mut back: Vec<Rational> = bwd.wall_terms().iter().map(|t| -t).collect();
        back.reverse();
        assert_eq!(fwd.wall_terms(), back);
    }
}
