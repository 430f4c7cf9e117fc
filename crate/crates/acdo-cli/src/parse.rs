//! Flag-value and config-file parsing.
//!
//! Quantum-number flags accept small grammars:
//! - `--n`: a single index `2`, a comma list `0,2,5`, or an inclusive range
//!   `0..4` (also `0..=4`).
//! - `--ml`: comma list of half-integers written as fractions (`1/2`, `-3/2`)
//!   or decimals (`0.5`, `-1.5`).
//! - `--two-ml`: comma list of odd integers, or a range `-3..3` from which
//!   the odd values are kept.
//! - `--s`: `+1`, `-1`, `up`, `down`, a comma list, or `both`.
//! - `--branch`: `particle`, `antiparticle`, a comma list, or `both`.
//!
//! The `--config` file is a flat JSON object whose keys mirror the flag names
//! (dashes and underscores interchangeable); explicit flags always win.
//! All errors are one-line, machine-parsable strings that the caller maps to
//! exit code 2.

use std::collections::HashMap;
use std::fs;
use std::path::Path;

use acdo::{Branch, Spin};
use serde_json::Value;

/// One-line input-error message in the same `Kind field: reason` shape the
/// library uses.
pub fn domain_error(field: &str, detail: &str) -> String {
    format!("DomainError {field}: {detail}")
}

fn parse_int<T: std::str::FromStr>(field: &str, token: &str) -> Result<T, String> {
    token
        .trim()
        .parse::<T>()
        .map_err(|_| domain_error(field, &format!("cannot parse {token:?} as an integer")))
}

/// Radial-index sets: single value, comma list, or inclusive range.
pub fn parse_u32_spec(field: &str, text: &str) -> Result<Vec<u32>, String> {
    let t = text.trim();
    let mut out: Vec<u32> = if let Some((a, b)) = t.split_once("..") {
        let lo: u32 = parse_int(field, a)?;
        let hi: u32 = parse_int(field, b.trim().strip_prefix('=').unwrap_or(b.trim()))?;
        if hi < lo {
            return Err(domain_error(field, &format!("range {t:?} is empty")));
        }
        (lo..=hi).collect()
    } else {
        t.split(',')
            .map(|tok| parse_int(field, tok))
            .collect::<Result<_, _>>()?
    };
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Doubled angular momentum: odd integers only. A range keeps its odd values;
/// explicitly listed values must already be odd.
pub fn parse_two_ml_spec(text: &str) -> Result<Vec<i32>, String> {
    let t = text.trim();
    let mut out: Vec<i32> = if let Some((a, b)) = t.split_once("..") {
        let lo: i32 = parse_int("two_ml", a)?;
        let hi: i32 = parse_int("two_ml", b.trim().strip_prefix('=').unwrap_or(b.trim()))?;
        if hi < lo {
            return Err(domain_error("two_ml", &format!("range {t:?} is empty")));
        }
        (lo..=hi).filter(|v| v % 2 != 0).collect()
    } else {
        t.split(',')
            .map(|tok| {
                let v: i32 = parse_int("two_ml", tok)?;
                if v % 2 == 0 {
                    Err(domain_error(
                        "two_ml",
                        &format!("must be an odd integer, m_l is half-integral (got {v})"),
                    ))
                } else {
                    Ok(v)
                }
            })
            .collect::<Result<_, _>>()?
    };
    if out.is_empty() {
        return Err(domain_error("two_ml", &format!("{t:?} yields no odd values")));
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn parse_ml_token(token: &str) -> Result<i32, String> {
    let t = token.trim();
    if let Some((num, den)) = t.split_once('/') {
        let den: i32 = parse_int("ml", den)?;
        if den != 2 {
            return Err(domain_error("ml", &format!("denominator must be 2 (got {t:?})")));
        }
        let num: i32 = parse_int("ml", num)?;
        if num % 2 == 0 {
            return Err(domain_error(
                "ml",
                &format!("numerator must be odd, m_l is half-integral (got {t:?})"),
            ));
        }
        Ok(num)
    } else {
        let x: f64 = t
            .parse()
            .map_err(|_| domain_error("ml", &format!("cannot parse {t:?} as a half-integer")))?;
        let doubled = 2.0 * x;
        let rounded = doubled.round();
        if !doubled.is_finite() || (doubled - rounded).abs() > 1e-9 || rounded.abs() > i32::MAX as f64
        {
            return Err(domain_error("ml", &format!("{t:?} is not a half-integer")));
        }
        if (rounded as i64) % 2 == 0 {
            return Err(domain_error(
                "ml",
                &format!("m_l must be half-odd: ..., -1/2, 1/2, 3/2, ... (got {t:?})"),
            ));
        }
        Ok(rounded as i32)
    }
}

/// Half-integral m_l list in fraction or decimal form, returned doubled.
pub fn parse_ml_spec(text: &str) -> Result<Vec<i32>, String> {
    let mut out: Vec<i32> = text
        .split(',')
        .map(parse_ml_token)
        .collect::<Result<_, _>>()?;
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Spin set, ordered s = -1 before s = +1.
pub fn parse_spin_set(text: &str) -> Result<Vec<Spin>, String> {
    let t = text.trim().to_ascii_lowercase();
    if t == "both" {
        return Ok(vec![Spin::Down, Spin::Up]);
    }
    let mut out: Vec<Spin> = t
        .split(',')
        .map(|tok| match tok.trim() {
            "+1" | "1" | "up" => Ok(Spin::Up),
            "-1" | "down" => Ok(Spin::Down),
            other => Err(domain_error(
                "s",
                &format!("unrecognized spin {other:?} (use +1, -1, up, down, or both)"),
            )),
        })
        .collect::<Result<_, _>>()?;
    out.sort();
    out.dedup();
    Ok(out)
}

/// Branch set, ordered particle before antiparticle.
pub fn parse_branch_set(text: &str) -> Result<Vec<Branch>, String> {
    let t = text.trim().to_ascii_lowercase();
    if t == "both" {
        return Ok(vec![Branch::Particle, Branch::Antiparticle]);
    }
    let mut out: Vec<Branch> = t
        .split(',')
        .map(|tok| match tok.trim() {
            "particle" => Ok(Branch::Particle),
            "antiparticle" => Ok(Branch::Antiparticle),
            other => Err(domain_error(
                "branch",
                &format!("unrecognized branch {other:?} (use particle, antiparticle, or both)"),
            )),
        })
        .collect::<Result<_, _>>()?;
    out.sort();
    out.dedup();
    Ok(out)
}

/// Inclusive `start:stop:step` grid with the same endpoint slack the sweep
/// axis uses, so `0:1:0.25` reliably contains 1.
pub fn parse_grid_spec(field: &str, text: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(domain_error(
            field,
            &format!("expected start:stop:step (got {text:?})"),
        ));
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| domain_error(field, &format!("cannot parse {p:?} as a number")))
        })
        .collect::<Result<_, _>>()?;
    let (start, stop, step) = (nums[0], nums[1], nums[2]);
    if !(start.is_finite() && stop.is_finite() && step.is_finite()) {
        return Err(domain_error(field, "grid bounds must be finite"));
    }
    if start < 0.0 {
        return Err(domain_error(field, &format!("start must be >= 0 (got {start})")));
    }
    if step <= 0.0 || stop < start {
        return Err(domain_error(
            field,
            &format!("need step > 0 and stop >= start (got {text:?})"),
        ));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|i| start + i as f64 * step).collect())
}

fn normalize_key(key: &str) -> String {
    key.trim().to_ascii_lowercase().replace('-', "_")
}

/// Flat JSON config document; keys mirror flag names.
pub struct ConfigMap {
    map: HashMap<String, Value>,
}

impl ConfigMap {
    pub fn empty() -> Self {
        ConfigMap { map: HashMap::new() }
    }

    pub fn load(path: &Path) -> Result<Self, String> {
        let text = fs::read_to_string(path)
            .map_err(|e| format!("ConfigError: cannot read {}: {e}", path.display()))?;
        let value: Value = serde_json::from_str(&text)
            .map_err(|e| format!("ConfigError: {} is not valid JSON: {e}", path.display()))?;
        let Value::Object(obj) = value else {
            return Err(format!(
                "ConfigError: {} must contain a flat JSON object of flag values",
                path.display()
            ));
        };
        let mut map = HashMap::new();
        for (k, v) in obj {
            map.insert(normalize_key(&k), v);
        }
        Ok(ConfigMap { map })
    }

    fn get(&self, key: &str) -> Option<&Value> {
        let v = self.map.get(&normalize_key(key))?;
        if v.is_null() {
            None
        } else {
            Some(v)
        }
    }

    pub fn f64(&self, key: &str) -> Result<Option<f64>, String> {
        match self.get(key) {
            None => Ok(None),
            Some(Value::Number(n)) => n
                .as_f64()
                .map(Some)
                .ok_or_else(|| format!("ConfigError: key {key:?} is out of numeric range")),
            Some(Value::String(s)) => s
                .trim()
                .parse::<f64>()
                .map(Some)
                .map_err(|_| format!("ConfigError: key {key:?} is not a number (got {s:?})")),
            Some(_) => Err(format!("ConfigError: key {key:?} must be a number")),
        }
    }

    pub fn usize(&self, key: &str) -> Result<Option<usize>, String> {
        match self.get(key) {
            None => Ok(None),
            Some(Value::Number(n)) => n
                .as_u64()
                .map(|v| Some(v as usize))
                .ok_or_else(|| format!("ConfigError: key {key:?} must be a nonnegative integer")),
            Some(Value::String(s)) => s
                .trim()
                .parse::<usize>()
                .map(Some)
                .map_err(|_| format!("ConfigError: key {key:?} is not an integer (got {s:?})")),
            Some(_) => Err(format!("ConfigError: key {key:?} must be an integer")),
        }
    }

    pub fn u64(&self, key: &str) -> Result<Option<u64>, String> {
        match self.get(key) {
            None => Ok(None),
            Some(Value::Number(n)) => n
                .as_u64()
                .map(Some)
                .ok_or_else(|| format!("ConfigError: key {key:?} must be a nonnegative integer")),
            Some(Value::String(s)) => s
                .trim()
                .parse::<u64>()
                .map(Some)
                .map_err(|_| format!("ConfigError: key {key:?} is not an integer (got {s:?})")),
            Some(_) => Err(format!("ConfigError: key {key:?} must be an integer")),
        }
    }

    pub fn bool(&self, key: &str) -> Result<Option<bool>, String> {
        match self.get(key) {
            None => Ok(None),
            Some(Value::Bool(b)) => Ok(Some(*b)),
            Some(Value::String(s)) => match s.trim().to_ascii_lowercase().as_str() {
                "true" => Ok(Some(true)),
                "false" => Ok(Some(false)),
                _ => Err(format!("ConfigError: key {key:?} must be true or false")),
            },
            Some(_) => Err(format!("ConfigError: key {key:?} must be a boolean")),
        }
    }

    /// String-ish value: strings pass through, numbers/booleans stringify so
    /// `"n": 2` works the same as `"n": "2"`.
    pub fn string(&self, key: &str) -> Result<Option<String>, String> {
        match self.get(key) {
            None => Ok(None),
            Some(Value::String(s)) => Ok(Some(s.clone())),
            Some(Value::Number(n)) => Ok(Some(n.to_string())),
            Some(Value::Bool(b)) => Ok(Some(b.to_string())),
            Some(_) => Err(format!("ConfigError: key {key:?} must be a string or number")),
        }
    }
}
