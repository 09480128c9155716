//! Flat `key = value` run configuration.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use crate::CliError;

/// Parsed configuration file. Keys are checked against the command's list
/// when the file is loaded, so a typo never silently falls back to a default.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunConfig {
    values: BTreeMap<String, String>,
}

impl RunConfig {
    pub fn parse(text: &str, allowed: &[&str]) -> Result<Self, CliError> {
        let mut values = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Usage(format!("config line {}: expected key = value", lineno + 1))
            })?;
            let (key, value) = (key.trim().to_ascii_lowercase(), value.trim().to_string());
            if !allowed.contains(&key.as_str()) {
                return Err(CliError::Usage(format!(
                    "config line {}: unknown key '{key}' (allowed: {})",
                    lineno + 1,
                    allowed.join(", ")
                )));
            }
            if values.insert(key.clone(), value).is_some() {
                return Err(CliError::Usage(format!("config line {}: duplicate key '{key}'", lineno + 1)));
            }
        }
        Ok(Self { values })
    }

    pub fn load(path: Option<&Path>, allowed: &[&str]) -> Result<Self, CliError> {
        match path {
            None => Ok(Self::default()),
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", p.display())))?;
                Self::parse(&text, allowed)
            }
        }
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>, CliError> {
        self.raw(key)
            .map(|v| v.parse::<T>().map_err(|_| bad_value(key, v)))
            .transpose()
    }

    /// Command-line value if given, else the file's, else `default`.
    pub fn pick<T: FromStr>(&self, flag: Option<T>, key: &str, default: T) -> Result<T, CliError> {
        Ok(match flag {
            Some(v) => v,
            None => self.get(key)?.unwrap_or(default),
        })
    }

    pub fn pick_bool(&self, flag: bool, key: &str) -> Result<bool, CliError> {
        if flag {
            return Ok(true);
        }
        match self.raw(key) {
            None => Ok(false),
            Some("true" | "yes" | "1") => Ok(true),
            Some("false" | "no" | "0") => Ok(false),
            Some(v) => Err(bad_value(key, v)),
        }
    }

    pub fn pick_counts(&self, flag: &[u64], key: &str, default: &[u64]) -> Result<Vec<u64>, CliError> {
        if !flag.is_empty() {
            return Ok(flag.to_vec());
        }
        match self.raw(key) {
            None => Ok(default.to_vec()),
            Some(v) => split_list(v).map(|s| parse_count(s).map_err(|_| bad_value(key, v))).collect(),
        }
    }

    pub fn pick_floats(&self, flag: &[f64], key: &str, default: &[f64]) -> Result<Vec<f64>, CliError> {
        if !flag.is_empty() {
            return Ok(flag.to_vec());
        }
        match self.raw(key) {
            None => Ok(default.to_vec()),
            Some(v) => split_list(v)
                .map(|s| parse_finite(s).map_err(|_| bad_value(key, v)))
                .collect(),
        }
    }
}

fn split_list(v: &str) -> impl Iterator<Item = &str> {
    v.split(',').map(str::trim).filter(|s| !s.is_empty())
}

fn bad_value(key: &str, v: &str) -> CliError {
    CliError::Usage(format!("invalid value for '{key}': '{v}'"))
}

/// Particle counts, accepting integral exponent forms such as `1e12`.
pub fn parse_count(s: &str) -> Result<u64, String> {
    if let Ok(n) = s.parse::<u64>() {
        return Ok(n);
    }
    let x: f64 = s.parse().map_err(|_| format!("not a count: {s}"))?;
    if x.is_finite() && x >= 0.0 && x.fract() == 0.0 && x < 2f64.powi(63) {
        Ok(x as u64)
    } else {
        Err(format!("not a count: {s}"))
    }
}

pub fn parse_finite(s: &str) -> Result<f64, String> {
    match s.trim().parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(x),
        _ => Err(format!("not a finite number: {s}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const KEYS: &[&str] = &["n", "ratio", "table2"];

    #[test]
    fn parses_comments_and_blank_lines() {
        let c = RunConfig::parse("# header\n\nn = 50 # trailing\nratio=1e-3\n", KEYS).unwrap();
        assert_eq!(c.raw("n"), Some("50"));
        assert_eq!(c.get::<f64>("ratio").unwrap(), Some(1e-3));
    }

    #[test]
    fn rejects_unknown_and_malformed() {
        assert!(matches!(RunConfig::parse("nn = 3", KEYS), Err(CliError::Usage(_))));
        assert!(matches!(RunConfig::parse("n 3", KEYS), Err(CliError::Usage(_))));
        assert!(matches!(RunConfig::parse("n=1\nn=2", KEYS), Err(CliError::Usage(_))));
        let c = RunConfig::parse("ratio = abc", KEYS).unwrap();
        assert!(c.get::<f64>("ratio").is_err());
    }

    #[test]
    fn flags_override_file() {
        let c = RunConfig::parse("n = 50, 100\nratio = 0.5\ntable2 = yes", KEYS).unwrap();
        assert_eq!(c.pick(Some(0.25), "ratio", 1.0).unwrap(), 0.25);
        assert_eq!(c.pick(None, "ratio", 1.0).unwrap(), 0.5);
        assert_eq!(c.pick_counts(&[], "n", &[7]).unwrap(), vec![50, 100]);
        assert_eq!(c.pick_counts(&[9], "n", &[7]).unwrap(), vec![9]);
        assert!(c.pick_bool(false, "table2").unwrap());
    }

    #[test]
    fn counts_accept_exponents() {
        assert_eq!(parse_count("1e12").unwrap(), 1_000_000_000_000);
        assert!(parse_count("1.5").is_err());
        assert!(parse_count("-3").is_err());
    }
}
