//! Typed, validated parameter sets with unit-suffixed keys.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value as Json;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum ParamValue {
    Num(f64),
    Int(i64),
    Bool(bool),
    Text(String),
}

impl std::fmt::Display for ParamValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ParamValue::Num(x) => write!(f, "{x}"),
            ParamValue::Int(i) => write!(f, "{i}"),
            ParamValue::Bool(b) => write!(f, "{b}"),
            ParamValue::Text(s) => write!(f, "{s}"),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub enum Rule {
    Any,
    Positive,
    NonNegative,
    /// [0, 1)
    Fraction,
    /// [0, 1]
    Probability,
    AtLeast(i64),
    IntIn(&'static [i64]),
    OneOf(&'static [&'static str]),
}

#[derive(Debug, Clone)]
pub struct ParamSpec {
    pub key: &'static str,
    pub default: ParamValue,
    pub rule: Rule,
    pub help: &'static str,
}

impl ParamSpec {
    pub fn num(key: &'static str, default: f64, rule: Rule, help: &'static str) -> Self {
        ParamSpec { key, default: ParamValue::Num(default), rule, help }
    }

    pub fn int(key: &'static str, default: i64, rule: Rule, help: &'static str) -> Self {
        ParamSpec { key, default: ParamValue::Int(default), rule, help }
    }

    pub fn flag(key: &'static str, default: bool, help: &'static str) -> Self {
        ParamSpec { key, default: ParamValue::Bool(default), rule: Rule::Any, help }
    }

    pub fn text(key: &'static str, default: &str, rule: Rule, help: &'static str) -> Self {
        ParamSpec { key, default: ParamValue::Text(default.to_string()), rule, help }
    }

    fn check(&self, v: &ParamValue) -> Result<(), String> {
        let key = self.key;
        match (self.rule, v) {
            (_, ParamValue::Num(x)) if !x.is_finite() => Err(format!("{key} must be finite, got {x}")),
            (Rule::Positive, ParamValue::Num(x)) if *x <= 0.0 => Err(format!("{key} must be positive, got {x}")),
            (Rule::NonNegative, ParamValue::Num(x)) if *x < 0.0 => {
                Err(format!("{key} must be non-negative, got {x}"))
            }
            (Rule::Fraction, ParamValue::Num(x)) if !(0.0..1.0).contains(x) => {
                Err(format!("{key} must lie in [0, 1), got {x}"))
            }
            (Rule::Probability, ParamValue::Num(x)) if !(0.0..=1.0).contains(x) => {
                Err(format!("{key} must lie in [0, 1], got {x}"))
            }
            (Rule::AtLeast(m), ParamValue::Int(i)) if *i < m => Err(format!("{key} must be at least {m}, got {i}")),
            (Rule::IntIn(set), ParamValue::Int(i)) if !set.contains(i) => {
                Err(format!("{key} must be one of {set:?}, got {i}"))
            }
            (Rule::OneOf(set), ParamValue::Text(s)) if !set.contains(&s.as_str()) => {
                Err(format!("{key} must be one of {{{}}}, got '{s}'", set.join(", ")))
            }
            _ => Ok(()),
        }
    }

    fn parse_str(&self, raw: &str) -> Result<ParamValue, String> {
        let key = self.key;
        match self.default {
            ParamValue::Num(_) => {
                raw.trim().parse().map(ParamValue::Num).map_err(|_| format!("{key} expects a number, got '{raw}'"))
            }
            ParamValue::Int(_) => {
                raw.trim().parse().map(ParamValue::Int).map_err(|_| format!("{key} expects an integer, got '{raw}'"))
            }
            ParamValue::Bool(_) => match raw.trim() {
                "true" | "1" | "yes" => Ok(ParamValue::Bool(true)),
                "false" | "0" | "no" => Ok(ParamValue::Bool(false)),
                _ => Err(format!("{key} expects true or false, got '{raw}'")),
            },
            ParamValue::Text(_) => Ok(ParamValue::Text(raw.to_string())),
        }
    }

    fn parse_json(&self, raw: &Json) -> Result<ParamValue, String> {
        let key = self.key;
        match (&self.default, raw) {
            (ParamValue::Num(_), Json::Number(n)) => Ok(ParamValue::Num(n.as_f64().unwrap_or(f64::NAN))),
            (ParamValue::Int(_), Json::Number(n)) => {
                n.as_i64().map(ParamValue::Int).ok_or_else(|| format!("{key} expects an integer, got {n}"))
            }
            (ParamValue::Bool(_), Json::Bool(b)) => Ok(ParamValue::Bool(*b)),
            (ParamValue::Text(_), Json::String(s)) => Ok(ParamValue::Text(s.clone())),
            (_, Json::String(s)) => self.parse_str(s),
            (d, other) => Err(format!("{key} expects a value like {d}, got {other}")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Params {
    specs: Vec<ParamSpec>,
    values: BTreeMap<&'static str, ParamValue>,
}

impl Params {
    pub fn new(specs: Vec<ParamSpec>) -> Self {
        let values = specs.iter().map(|s| (s.key, s.default.clone())).collect();
        Params { specs, values }
    }

    pub fn specs(&self) -> &[ParamSpec] {
        &self.specs
    }

    fn valid_keys(&self) -> String {
        let mut keys: Vec<&str> = self.specs.iter().map(|s| s.key).collect();
        keys.sort_unstable();
        keys.join(", ")
    }

    /// Sets one override. Strings are parsed according to the key's type.
    pub fn set(&mut self, key: &str, raw: &Json) -> CliResult<()> {
        let normalized = key.replace('-', "_");
        let spec = self.specs.iter().find(|s| s.key == normalized).ok_or_else(|| {
            CliError::Validation(format!("unknown key '{key}'; valid keys: {}", self.valid_keys()))
        })?;
        let value = spec.parse_json(raw).map_err(CliError::Validation)?;
        spec.check(&value).map_err(CliError::Validation)?;
        self.values.insert(spec.key, value);
        Ok(())
    }

    pub fn validate(&self) -> CliResult<()> {
        for s in &self.specs {
            s.check(&self.values[s.key]).map_err(CliError::Validation)?;
        }
        Ok(())
    }

    /// Fails with a message naming both keys unless `lo < hi`.
    pub fn ordered(&self, lo: &str, hi: &str) -> CliResult<()> {
        if self.f64(lo) < self.f64(hi) {
            Ok(())
        } else {
            Err(CliError::Validation(format!("{lo} must be smaller than {hi}")))
        }
    }

    pub fn f64(&self, key: &str) -> f64 {
        match self.values.get(key) {
            Some(ParamValue::Num(x)) => *x,
            Some(ParamValue::Int(i)) => *i as f64,
            other => panic!("parameter {key} is not numeric: {other:?}"),
        }
    }

    pub fn usize(&self, key: &str) -> usize {
        match self.values.get(key) {
            Some(ParamValue::Int(i)) => (*i).max(0) as usize,
            other => panic!("parameter {key} is not an integer: {other:?}"),
        }
    }

    pub fn bool(&self, key: &str) -> bool {
        match self.values.get(key) {
            Some(ParamValue::Bool(b)) => *b,
            other => panic!("parameter {key} is not a flag: {other:?}"),
        }
    }

    pub fn str(&self, key: &str) -> &str {
        match self.values.get(key) {
            Some(ParamValue::Text(s)) => s,
            other => panic!("parameter {key} is not text: {other:?}"),
        }
    }

    pub fn resolved(&self) -> &BTreeMap<&'static str, ParamValue> {
        &self.values
    }
}
