//! One function per subcommand, each producing a JSON document and a text rendering.

use std::fmt::Write as _;

use serde_json::{json, Value};

use qk_core::catalog::Family;
use qk_core::ifunction::{check_eulind_chain, grass_i_coefficient, i_function, GrassmannDatum};
use qk_core::localization::{atiyah_segal_chi, crepant_check, generic_one_ps, LocalizationInput, WeightMult};
use qk_core::presentation::{batyrev, format_table, BatyrevElement, WpsRing};
use qk_core::ring::{format_rational, int, MultiLaurent, Rational, Ring};
use qk_core::toric::ToricGitDatum;
use qk_core::wallcross::{sweep, KClass};

use crate::error::CliError;

/// Output of a command. A `failure` means the report is complete but a
/// mathematical check inside it did not hold.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub json: Value,
    pub text: String,
    pub failure: Option<String>,
}

impl Report {
    fn ok(json: Value, text: String) -> Self {
        Report { json, text, failure: None }
    }

    /// Pretty JSON with a trailing newline; keys are sorted, so the bytes are deterministic.
    pub fn json_text(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.json).expect("values serialize");
        s.push('\n');
        s
    }
}

/// Test fixtures that deliberately break a computation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Faults {
    /// Extra powers of `(1 - X_1^-1)` in the positive part of every Batyrev element.
    pub batyrev_shift: u32,
}

/// The Batyrev element of degree `d`, with any injected fault applied.
pub fn batyrev_with(datum: &ToricGitDatum, d: &[i64], faults: Faults) -> Result<BatyrevElement, CliError> {
    let mut z = batyrev(datum, d)?;
    if faults.batyrev_shift > 0 {
        let xv = datum.x_vars();
        let mut e = vec![0; xv.len()];
        e[0] = -1;
        let f = MultiLaurent::from_terms(&xv, [(vec![0; xv.len()], int(1)), (e, int(-1))]);
        z.zeta_plus = z.zeta_plus.times(&f.pow(faults.batyrev_shift));
    }
    Ok(z)
}

pub fn presentation_ring(datum: &ToricGitDatum, faults: Faults) -> Result<WpsRing, CliError> {
    Ok(WpsRing::from_batyrev(datum, &batyrev_with(datum, &[1], faults)?)?)
}

fn is_weighted_projective(datum: &ToricGitDatum) -> bool {
    datum.rank() == 1 && datum.weights().iter().all(|w| w[0] > 0)
}

pub fn present(datum: &ToricGitDatum, cap: &Rational, faults: Faults) -> Result<Report, CliError> {
    datum.require_nonempty()?;
    let lattice = datum.degree_lattice()?;
    let mut text = String::new();
    let mut relations = Vec::new();
    for d in lattice.degrees_up_to(cap) {
        if d.iter().all(|&x| x == 0) {
            continue;
        }
        let z = batyrev_with(datum, &d, faults)?;
        writeln!(text, "zeta{:?} = {} - q^{:?} ({})", d, z.zeta_plus, d, z.zeta_minus).unwrap();
        relations.push(z.to_json());
    }
    let mut result = json!({"cap": format_rational(cap), "relations": relations});
    if is_weighted_projective(datum) {
        let ring = presentation_ring(datum, faults)?;
        let basis = ring.standard_basis();
        let table = ring.product_table(&basis)?;
        let q1 = ring.relation_at(&int(1));
        // Only defined when the dual torus is a circle.
        let critical = datum.givental_potential(None)?.critical_count_1d().ok();
        writeln!(text, "relation: {} = 0 (Y = X^-{})", ring.relation(), ring.gcd()).unwrap();
        writeln!(text, "rank over Q[q]: {}", ring.rank()).unwrap();
        writeln!(text, "at q = 1: {} = 0", q1).unwrap();
        if let Some(c) = critical {
            writeln!(text, "critical points of the potential: {c}").unwrap();
        }
        writeln!(text, "products in the basis (1 - Y)^i:").unwrap();
        for (i, row) in format_table(&table).iter().enumerate() {
            writeln!(text, "  [{i}] {}", row.join(" | ")).unwrap();
        }
        let mut ring_json = ring.to_json();
        ring_json["relation_at_q_one"] = q1.to_json();
        ring_json["critical_points"] = json!(critical);
        ring_json["basis"] = json!(basis.iter().map(|b| b.to_string()).collect::<Vec<_>>());
        ring_json["product_table"] = json!(format_table(&table));
        result["ring"] = ring_json;
    }
    let json = json!({"command": "present", "datum": datum.to_json(), "result": result});
    Ok(Report::ok(json, text))
}

pub fn ifun(datum: &ToricGitDatum, cap: &Rational, jet: u32, zorder: Option<i64>) -> Result<Report, CliError> {
    let f = i_function(datum, cap, jet)?;
    let mut text = String::new();
    for (d, c) in &f.coefficients {
        writeln!(text, "I_{d:?} = {}", c.value).unwrap();
        if jet > 0 {
            for (beta, g) in &c.jet {
                writeln!(text, "  t^{beta:?}: {g}").unwrap();
            }
        }
    }
    let json = json!({"command": "ifun", "datum": datum.to_json(), "result": f.to_json(zorder)?});
    Ok(Report::ok(json, text))
}

/// Grassmannian coefficients for degrees `0..=max_degree`, optionally with the
/// index-bundle chain check at a degree vector.
pub fn grass(g: &GrassmannDatum, max_degree: i64, eulind: Option<&[i64]>) -> Result<Report, CliError> {
    let mut text = format!("G({}, {}), prefactor {}\n", g.r(), g.n(), g.prefactor());
    let mut coefficients = Vec::new();
    for d in 0..=max_degree {
        let c = grass_i_coefficient(g, d)?;
        writeln!(text, "d = {d}: {c}").unwrap();
        coefficients.push(json!({"degree": d, "value": c.to_json(), "text": c.to_string()}));
    }
    let mut result = json!({"prefactor": g.prefactor().to_json(), "coefficients": coefficients});
    let mut failure = None;
    if let Some(dv) = eulind {
        let w = check_eulind_chain(g, dv)?;
        let first = w.first_difference.as_ref().map(|(k, a, b)| json!({"z": k, "line_1": a.to_string(), "closed_form": b.to_string()}));
        writeln!(text, "index-bundle chain at {dv:?}: {}", if w.holds() { "holds" } else { "fails" }).unwrap();
        if let Some((k, a, b)) = &w.first_difference {
            writeln!(text, "  first difference at z^{k}: {a} vs {b}").unwrap();
            failure = Some(format!("index-bundle chain fails at {dv:?}"));
        }
        result["eulind"] = json!({"degrees": dv, "holds": w.holds(), "consecutive": w.consecutive, "first_difference": first});
    }
    let json = json!({"command": "grass", "datum": g.to_json(), "result": result});
    Ok(Report { json, text, failure })
}

/// Fill in a generic one-parameter subgroup when none is given.
pub fn with_one_ps(mut input: LocalizationInput) -> Result<LocalizationInput, CliError> {
    if input.one_ps.is_empty() {
        let k = input.points.first().map_or(0, |p| p.class.len());
        input.one_ps = generic_one_ps(&input.points, k, 0)
            .ok_or_else(|| CliError::Usage("no generic one-parameter subgroup found".into()))?;
    }
    Ok(input)
}

pub fn chi(input: &LocalizationInput) -> Result<Report, CliError> {
    let input = with_one_ps(input.clone())?;
    let r = atiyah_segal_chi(&input)?;
    let text = format!(
        "one-parameter subgroup {:?}\ncharacter: {}\nEuler characteristic: {}\n",
        input.one_ps,
        r.character,
        format_rational(&r.euler_characteristic)
    );
    let json = json!({
        "command": "chi",
        "input": input.to_json(),
        "result": {"character": r.character.to_json(), "character_text": r.character.to_string(),
                   "euler_characteristic": format_rational(&r.euler_characteristic)},
    });
    Ok(Report::ok(json, text))
}

pub fn wallcross(f: &Family, class: &KClass) -> Result<Report, CliError> {
    let r = sweep(&f.datum, &f.theta_minus, &f.theta_plus, class)?;
    let failure = r.require_telescope().err().map(|e| e.to_string());
    let json = json!({"command": "wallcross", "datum": f.datum.to_json(), "result": r.to_json()});
    Ok(Report { json, text: r.to_table(), failure })
}

fn weight_json(w: &WeightMult) -> Value {
    json!({"weight": w.weight, "rank": w.rank, "root_of_unity": w.root_of_unity.as_ref().map(|z| z.to_string())})
}

pub fn crepant(weights: &[WeightMult]) -> Result<Report, CliError> {
    let r = crepant_check(weights)?;
    let mut text = format!(
        "weights balanced: {}\nDelta(z) = {}\nz-independent: {}\n",
        r.simply_crepant, r.delta, r.z_independent
    );
    if let Some(c) = &r.constant {
        writeln!(text, "constant: {}", format_rational(c)).unwrap();
    }
    let json = json!({
        "command": "crepant-check",
        "weights": weights.iter().map(weight_json).collect::<Vec<_>>(),
        "result": r.to_json(),
    });
    Ok(Report::ok(json, text))
}
