//! Built-in example data.

use crate::linalg::{to_q, QVec};
use crate::ring::{int, Rational};
use crate::toric::{ToricError, ToricGitDatum};

/// A datum together with the endpoints of a polarization family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Family {
    pub datum: ToricGitDatum,
    pub theta_minus: QVec,
    pub theta_plus: QVec,
}

/// `C^{n+1}` with all weights one.
pub fn projective_space(n: usize) -> ToricGitDatum {
    ToricGitDatum::new(vec![vec![1]; n + 1], to_q(&[1])).expect("valid datum")
}

/// Weighted projective space with positive weights.
pub fn weighted_projective(weights: &[i64]) -> Result<ToricGitDatum, ToricError> {
    if weights.iter().any(|&w| w <= 0) {
        return Err(ToricError::Parse("weighted projective space needs positive weights".into()));
    }
    ToricGitDatum::new(weights.iter().map(|&w| vec![w]).collect(), to_q(&[1]))
}

/// `C` with weight two: the classifying stack of `Z/2`.
pub fn bz2() -> ToricGitDatum {
    ToricGitDatum::new(vec![vec![2]], to_q(&[1])).expect("valid datum")
}

pub fn p1xp1() -> ToricGitDatum {
    ToricGitDatum::new(vec![vec![1, 0], vec![1, 0], vec![0, 1], vec![0, 1]], to_q(&[1, 1])).expect("valid datum")
}

/// Blow-up of the projective plane at a point.
pub fn blown_up_plane() -> ToricGitDatum {
    ToricGitDatum::new(vec![vec![1, 0], vec![1, 0], vec![1, 1], vec![0, 1]], to_q(&[2, 1])).expect("valid datum")
}

/// From the empty quotient through a projective plane to its blow-up, crossing
/// two walls with isolated fixed points.
pub fn blown_up_plane_family() -> Family {
    Family { datum: blown_up_plane(), theta_minus: to_q(&[-1, 1]), theta_plus: to_q(&[2, 1]) }
}

/// The projective-space family: `theta` runs from `-1` to `1`.
pub fn projective_family(n: usize) -> Family {
    Family { datum: projective_space(n), theta_minus: to_q(&[-1]), theta_plus: to_q(&[1]) }
}

/// `(P^1)^3` as `C^6 // (C^x)^3` with an extra circle scaling the second coordinate
/// of each factor. Polarization `(c_1, c_2, c_3, s)`; walls at `s = sum_{i in S} c_i`.
pub fn cremona_with(c: [i64; 3]) -> Family {
    let mut weights = Vec::new();
    for i in 0..3 {
        let mut a = vec![0; 4];
        a[i] = 1;
        weights.push(a.clone());
        a[3] = 1;
        weights.push(a);
    }
    let total: i64 = c.iter().sum();
    let theta = |s: i64| -> QVec { c.iter().map(|&x| int(x)).chain([int(s)]).collect() };
    let datum = ToricGitDatum::new(weights, theta(1).into_iter().map(|x: Rational| x / int(2)).collect())
        .expect("valid datum");
    Family { datum, theta_minus: theta(-1), theta_plus: theta(total + 1) }
}

/// Cremona family with distinct wall positions (`c = (1, 2, 4)`).
pub fn cremona() -> Family {
    cremona_with([1, 2, 4])
}

/// Cremona family with `c = (1, 2, 3)`: two walls coincide, leaving eight chambers.
pub fn cremona_degenerate() -> Family {
    cremona_with([1, 2, 3])
}

/// Look up a toric example by name, e.g. `pn 3`, `wps 1 2`, `bz2`, `cremona`.
pub fn toric_example(name: &str) -> Result<Family, ToricError> {
    let parts: Vec<&str> = name.split_whitespace().collect();
    let num = |s: &str| s.parse::<i64>().map_err(|_| ToricError::Parse(format!("bad number '{s}' in example name")));
    let simple = |d: ToricGitDatum| {
        let theta_minus = d.theta().iter().map(|x| -x).collect();
        let theta_plus = d.theta().clone();
        Family { datum: d, theta_minus, theta_plus }
    };
    match parts.as_slice() {
        ["pn"] => Ok(projective_family(2)),
        ["pn", n] => {
            let n = num(n)?;
            if !(0..=12).contains(&n) {
                return Err(ToricError::Parse("pn needs 0 <= n <= 12".into()));
            }
            Ok(projective_family(n as usize))
        }
        ["wps", ws @ ..] if !ws.is_empty() => {
            let w: Vec<i64> = ws.iter().map(|s| num(s)).collect::<Result<_, _>>()?;
            Ok(simple(weighted_projective(&w)?))
        }
        ["bz2"] => Ok(simple(bz2())),
        ["p1xp1"] => Ok(simple(p1xp1())),
        ["blp2"] => Ok(blown_up_plane_family()),
        ["cremona"] => Ok(cremona()),
        ["cremona-degenerate"] => Ok(cremona_degenerate()),
        _ => Err(ToricError::Parse(format!("unknown example '{name}'"))),
    }
}

pub const EXAMPLE_NAMES: &[&str] =
    &["pn <n>", "wps <w1> <w2> ...", "bz2", "p1xp1", "blp2", "cremona", "cremona-degenerate", "grass <r> <n>"];
