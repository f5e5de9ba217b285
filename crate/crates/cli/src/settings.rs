//! Flag values merged with an optional key=value config file.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use clap::ValueEnum;
use krun::{PatternSpec, TrialParams};

use crate::args::{Kind, SpecArgs};
use crate::error::CliError;

const KEYS: [&str; 11] = ["type", "l1", "k1", "l2", "k2", "p", "n", "r", "mmax", "jmax", "backend"];

#[derive(Debug, Default)]
pub struct Settings {
    file: BTreeMap<String, String>,
}

impl Settings {
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let Some(path) = path else {
            return Ok(Settings::default());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::usage(format!("cannot read config {}: {e}", path.display())))?;
        Settings::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut file = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::usage(format!("config line {}: expected key=value", i + 1)))?;
            let key = key.trim().trim_start_matches("--");
            if !KEYS.contains(&key) {
                return Err(CliError::usage(format!("config line {}: unknown key '{key}'", i + 1)));
            }
            file.insert(key.to_string(), value.trim().to_string());
        }
        Ok(Settings { file })
    }

    /// The flag if given, else the config value for `key`.
    pub fn get<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<Option<T>, CliError> {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.file.get(key) {
            None => Ok(None),
            Some(s) => s
                .parse()
                .map(Some)
                .map_err(|_| CliError::usage(format!("config: invalid value '{s}' for {key}"))),
        }
    }

    pub fn get_enum<T: ValueEnum>(&self, flag: Option<T>, key: &str) -> Result<Option<T>, CliError> {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.file.get(key) {
            None => Ok(None),
            Some(s) => T::from_str(s, true)
                .map(Some)
                .map_err(|_| CliError::usage(format!("config: invalid value '{s}' for {key}"))),
        }
    }

    pub fn require<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<T, CliError> {
        self.get(flag, key)?
            .ok_or_else(|| CliError::usage(format!("missing --{key}")))
    }

    pub fn params(&self, p: Option<f64>) -> Result<TrialParams, CliError> {
        Ok(TrialParams::new(self.require(p, "p")?)?)
    }

    pub fn has_spec(&self, args: &SpecArgs) -> bool {
        args.kind.is_some() || self.file.contains_key("type")
    }

    pub fn spec(&self, args: &SpecArgs) -> Result<PatternSpec, CliError> {
        let kind = self
            .get_enum(args.kind, "type")?
            .ok_or_else(|| CliError::usage("missing --type"))?;
        let l1 = self.require(args.l1, "l1")?;
        let l2 = self.require(args.l2, "l2")?;
        let k1 = self.get(args.k1, "k1")?;
        let k2 = self.get(args.k2, "k2")?;
        let spec = match kind {
            Kind::T1 => {
                if k2.is_some() {
                    return Err(CliError::usage("--k2 does not apply to t1"));
                }
                PatternSpec::t1(l1, self.require(k1, "k1")?, l2)?
            }
            Kind::T2 => {
                if k1.is_some() {
                    return Err(CliError::usage("--k1 does not apply to t2"));
                }
                PatternSpec::t2(l1, l2, self.require(k2, "k2")?)?
            }
            Kind::T3 => PatternSpec::t3(l1, self.require(k1, "k1")?, l2, self.require(k2, "k2")?)?,
        };
        Ok(spec)
    }
}
