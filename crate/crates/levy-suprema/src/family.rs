//! Family specification strings.

use std::path::Path;

use levy_suprema_core::{BernsteinRepresentation, MixtureTerm, SymmetricLevyExponent};
use serde::Deserialize;

use crate::error::{AppError, AppResult};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct BernsteinFile {
    #[serde(default)]
    c1: f64,
    #[serde(default)]
    c2: f64,
    #[serde(default)]
    atoms: Vec<(f64, f64)>,
}

fn bad(spec: &str, reason: impl Into<String>) -> AppError {
    AppError::FamilySpec {
        spec: spec.to_string(),
        reason: reason.into(),
    }
}

fn pairs<'a>(spec: &str, body: &'a str) -> AppResult<Vec<(&'a str, &'a str)>> {
    body.split(',')
        .map(|kv| {
            kv.split_once('=')
                .map(|(k, v)| (k.trim(), v.trim()))
                .ok_or_else(|| bad(spec, format!("expected key=value, got `{kv}`")))
        })
        .collect()
}

fn number(spec: &str, key: &str, v: &str) -> AppResult<f64> {
    v.parse::<f64>()
        .map_err(|_| bad(spec, format!("`{key}` is not a number: `{v}`")))
}

fn lookup(spec: &str, kv: &[(&str, &str)], key: &str) -> AppResult<f64> {
    let (_, v) = kv
        .iter()
        .find(|(k, _)| *k == key)
        .ok_or_else(|| bad(spec, format!("missing `{key}`")))?;
    number(spec, key, v)
}

fn only_keys(spec: &str, kv: &[(&str, &str)], allowed: &[&str]) -> AppResult<()> {
    match kv.iter().find(|(k, _)| !allowed.contains(k)) {
        Some((k, _)) => Err(bad(spec, format!("unknown key `{k}`"))),
        None => Ok(()),
    }
}

/// Reads a Bernstein representation from a JSON object {"c1", "c2", "atoms": [[loc, mass], ...]}.
pub fn read_bernstein(path: &Path) -> AppResult<BernsteinRepresentation> {
    let text = std::fs::read_to_string(path)?;
    let f: BernsteinFile = serde_json::from_str(&text)?;
    Ok(BernsteinRepresentation::new(f.c1, f.c2, f.atoms)?)
}

pub fn parse_family(spec: &str) -> AppResult<SymmetricLevyExponent> {
    let spec = spec.trim();
    let (name, body) = match spec.split_once(':') {
        Some((n, b)) => (n, Some(b)),
        None => (spec, None),
    };
    match (name, body) {
        ("brownian", None) => Ok(SymmetricLevyExponent::brownian()),
        ("cpp-cosine", None) => Ok(SymmetricLevyExponent::compound_poisson_cosine()),
        ("stable", Some(b)) => {
            let kv = pairs(spec, b)?;
            only_keys(spec, &kv, &["alpha"])?;
            Ok(SymmetricLevyExponent::stable(lookup(spec, &kv, "alpha")?)?)
        }
        ("relativistic", Some(b)) => {
            let kv = pairs(spec, b)?;
            only_keys(spec, &kv, &["alpha", "m"])?;
            Ok(SymmetricLevyExponent::relativistic(
                lookup(spec, &kv, "alpha")?,
                lookup(spec, &kv, "m")?,
            )?)
        }
        ("mixture", Some(b)) => {
            let kv = pairs(spec, b)?;
            let mut terms = Vec::new();
            for i in 1.. {
                let a = format!("a{i}");
                let al = format!("alpha{i}");
                let has_a = kv.iter().any(|(k, _)| *k == a);
                let has_al = kv.iter().any(|(k, _)| *k == al);
                match (has_a, has_al) {
                    (false, false) => break,
                    (true, true) => terms.push(MixtureTerm {
                        weight: lookup(spec, &kv, &a)?,
                        alpha: lookup(spec, &kv, &al)?,
                    }),
                    _ => return Err(bad(spec, format!("`{a}` and `{al}` must come together"))),
                }
            }
            if terms.len() * 2 != kv.len() {
                return Err(bad(spec, "mixture keys must be a1, alpha1, a2, alpha2, ... without gaps"));
            }
            Ok(SymmetricLevyExponent::mixture(terms)?)
        }
        ("sbm", Some(b)) => {
            let path = b
                .strip_prefix("file=")
                .ok_or_else(|| bad(spec, "expected sbm:file=<path>"))?;
            Ok(SymmetricLevyExponent::subordinate_bm(read_bernstein(Path::new(path))?))
        }
        _ => Err(bad(spec, "unknown family")),
    }
}
