//! Parsing of command-line values and problem files.

use std::path::Path;

use serde_json::Value;

use qk_core::catalog::{toric_example, Family};
use qk_core::ifunction::GrassmannDatum;
use qk_core::localization::WeightMult;
use qk_core::ring::{parse_rational, Rational, RootOfUnity};
use qk_core::toric::ToricGitDatum;
use qk_core::wallcross::KClass;

use crate::error::CliError;

pub fn read_json(path: &Path) -> Result<Value, CliError> {
    let name = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: name.clone(), source })?;
    serde_json::from_str(&text).map_err(|source| CliError::Json { path: name, source })
}

/// The payload of a problem file. A document with a `kind` field must match
/// the command and carries its payload under `datum`; anything else is the payload.
pub fn payload<'a>(doc: &'a Value, kind: &str) -> Result<&'a Value, CliError> {
    match doc.get("kind") {
        None => Ok(doc),
        Some(Value::String(k)) if k == kind => {
            doc.get("datum").ok_or_else(|| CliError::Usage(format!("problem of kind '{kind}' has no datum")))
        }
        Some(other) => Err(CliError::Usage(format!("problem kind {other} does not match command '{kind}'"))),
    }
}

/// Option overrides stored next to the payload of a problem file.
pub fn option<'a>(doc: &'a Value, key: &str) -> Option<&'a Value> {
    doc.get("options").and_then(|o| o.get(key))
}

pub fn parse_ints(s: &str) -> Result<Vec<i64>, CliError> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<i64>().map_err(|_| CliError::Usage(format!("'{t}' is not an integer"))))
        .collect()
}

pub fn parse_rationals(s: &str) -> Result<Vec<Rational>, CliError> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| parse_rational(t).map_err(CliError::from))
        .collect()
}

pub fn parse_cap(s: &str) -> Result<Rational, CliError> {
    let cap = parse_rational(s)?;
    if cap < Rational::from_integer(0.into()) {
        return Err(CliError::Usage(format!("cap must be nonnegative, got {s}")));
    }
    Ok(cap)
}

/// `none` or a rational scale of the trace form.
pub fn parse_killing(s: &str) -> Result<Option<Rational>, CliError> {
    if s.eq_ignore_ascii_case("none") {
        Ok(None)
    } else {
        Ok(Some(parse_rational(s)?))
    }
}

/// Weights with multiplicities and roots of unity: `2x3` is weight 2 with rank 3,
/// `1@1/2` is weight 1 twisted by `exp(2 pi i / 2)`. Entries are comma separated.
pub fn parse_weights(s: &str) -> Result<Vec<WeightMult>, CliError> {
    let bad = |t: &str| CliError::Usage(format!("bad weight '{t}', expected W, WxR or WxR@a/b"));
    let mut out = Vec::new();
    for t in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let (body, root) = match t.split_once('@') {
            Some((b, r)) => (b, Some(r)),
            None => (t, None),
        };
        let (w, rank) = match body.split_once('x') {
            Some((w, r)) => (w, r.parse::<u32>().map_err(|_| bad(t))?),
            None => (body, 1),
        };
        let weight = w.parse::<i64>().map_err(|_| bad(t))?;
        if weight == 0 || rank == 0 {
            return Err(bad(t));
        }
        let root_of_unity = match root {
            None => None,
            Some(r) => {
                let (num, den) = r.split_once('/').ok_or_else(|| bad(t))?;
                let num = num.parse::<i64>().map_err(|_| bad(t))?;
                let den = den.parse::<u64>().map_err(|_| bad(t))?;
                Some(RootOfUnity::new(num, den)?)
            }
        };
        out.push(WeightMult { weight, rank, root_of_unity });
    }
    if out.is_empty() {
        return Err(CliError::Usage("empty weight list".into()));
    }
    Ok(out)
}

/// A K-class: `O`, a single character `1,0`, or a combination `2:1,0; -1:0,1`.
pub fn parse_class(s: &str, rank: usize) -> Result<KClass, CliError> {
    let s = s.trim();
    if s == "O" {
        return Ok(KClass::structure_sheaf(rank));
    }
    if !s.contains(':') {
        return Ok(KClass::line(parse_ints(s)?));
    }
    let mut terms = Vec::new();
    for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let (n, psi) = part.split_once(':').ok_or_else(|| CliError::Usage(format!("bad class term '{part}'")))?;
        let n = n.trim().parse::<i64>().map_err(|_| CliError::Usage(format!("bad coefficient in '{part}'")))?;
        terms.push((n, parse_ints(psi)?));
    }
    Ok(KClass { terms })
}

pub fn class_from_json(v: &Value, rank: usize) -> Result<KClass, CliError> {
    match v {
        Value::String(s) => parse_class(s, rank),
        Value::Array(items) => {
            let mut terms = Vec::new();
            for item in items {
                let n = item["coefficient"].as_i64().unwrap_or(1);
                let psi = ints(&item["character"])?;
                terms.push((n, psi));
            }
            Ok(KClass { terms })
        }
        _ => Err(CliError::Usage("class must be a string or a list of {coefficient, character}".into())),
    }
}

pub fn ints(v: &Value) -> Result<Vec<i64>, CliError> {
    v.as_array()
        .ok_or_else(|| CliError::Usage(format!("expected a list of integers, got {v}")))?
        .iter()
        .map(|x| x.as_i64().ok_or_else(|| CliError::Usage(format!("expected an integer, got {x}"))))
        .collect()
}

pub fn rationals(v: &Value) -> Result<Vec<Rational>, CliError> {
    v.as_array()
        .ok_or_else(|| CliError::Usage(format!("expected a list of rationals, got {v}")))?
        .iter()
        .map(|x| match x {
            Value::String(s) => parse_rational(s).map_err(CliError::from),
            Value::Number(n) => n
                .as_i64()
                .map(|i| Rational::from_integer(i.into()))
                .ok_or_else(|| CliError::Usage(format!("expected a rational, got {x}"))),
            _ => Err(CliError::Usage(format!("expected a rational, got {x}"))),
        })
        .collect()
}

/// Grassmannian example names look like `grass 2 4`.
pub fn grass_example(name: &str) -> Option<Result<GrassmannDatum, CliError>> {
    let parts: Vec<&str> = name.split_whitespace().collect();
    match parts.as_slice() {
        ["grass", r, n] => Some(match (r.parse::<usize>(), n.parse::<usize>()) {
            (Ok(r), Ok(n)) => GrassmannDatum::new(r, n).map_err(CliError::from),
            _ => Err(CliError::Usage(format!("bad Grassmannian example '{name}'"))),
        }),
        ["grass", ..] => Some(Err(CliError::Usage("usage: grass <r> <n>".into()))),
        _ => None,
    }
}

/// A toric family from `--example` or from a problem file. Files may give
/// `theta_minus` and `theta_plus`; otherwise the family runs from `-theta` to `theta`.
pub fn family(example: Option<&str>, doc: Option<(&Value, &str)>) -> Result<Family, CliError> {
    match (example, doc) {
        (Some(name), None) => Ok(toric_example(name)?),
        (None, Some((doc, kind))) => {
            let v = payload(doc, kind)?;
            let datum_json = v.get("datum").unwrap_or(v);
            let datum = ToricGitDatum::from_json(datum_json)?;
            let theta_minus = match v.get("theta_minus") {
                Some(t) => rationals(t)?,
                None => datum.theta().iter().map(|x| -x).collect(),
            };
            let theta_plus = match v.get("theta_plus") {
                Some(t) => rationals(t)?,
                None => datum.theta().clone(),
            };
            Ok(Family { datum, theta_minus, theta_plus })
        }
        (None, None) => Err(CliError::Usage("give either --example <name> or --json <path>".into())),
        (Some(_), Some(_)) => Err(CliError::Usage("--example and --json are exclusive".into())),
    }
}
