//! Flat `key = value` configuration files.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::path::PathBuf;

use kklab_core::field::MAX_FIELD_ORDER;
use kklab_core::Field;

use crate::error::{KklabError, Result};
use crate::format::{parse_extension, parse_field, parse_form, parse_u64_list, split_list};
use crate::suites::Suite;
use kklab_core::poly::Form;

/// Environment variable that can lower the field-size cap.
pub const MAX_FIELD_ENV: &str = "KKLAB_MAX_FIELD";

/// Parses `key = value` lines. `#` starts a comment; blank lines are ignored.
pub fn parse_config_text(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| KklabError::config(format!("line {}: expected `key = value`", lineno + 1)))?;
        let key = key.trim();
        if key.is_empty() || !key.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(KklabError::config(format!("line {}: bad key `{key}`", lineno + 1)));
        }
        if out.insert(key.to_string(), value.trim().to_string()).is_some() {
            return Err(KklabError::config(format!("line {}: duplicate key `{key}`", lineno + 1)));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub suite: Suite,
    pub seed: u64,
    /// Largest field order any part of the suite may build.
    pub max_field: u64,
    pub out: Option<PathBuf>,
    /// Suite-specific keys.
    pub params: BTreeMap<String, String>,
}

impl ExperimentConfig {
    /// Resolves a parsed file against command-line overrides and the environment cap.
    /// The seed is mandatory, from either source.
    pub fn resolve(
        suite: Suite,
        mut map: BTreeMap<String, String>,
        seed_flag: Option<u64>,
        out_flag: Option<PathBuf>,
        env_cap: Option<&str>,
    ) -> Result<ExperimentConfig> {
        if let Some(named) = map.remove("suite") {
            if named != suite.name() {
                return Err(KklabError::config(format!("config is for suite `{named}`, not `{}`", suite.name())));
            }
        }
        let file_seed = map
            .remove("seed")
            .map(|s| s.parse::<u64>().map_err(|_| KklabError::config(format!("seed `{s}` is not an integer"))))
            .transpose()?;
        let seed = seed_flag.or(file_seed).ok_or_else(|| KklabError::config("a seed is required"))?;
        let mut max_field = match map.remove("max_field") {
            Some(s) => {
                s.parse::<u64>().map_err(|_| KklabError::config(format!("max_field `{s}` is not an integer")))?
            }
            None => MAX_FIELD_ORDER,
        };
        if !(2..=MAX_FIELD_ORDER).contains(&max_field) {
            return Err(KklabError::config(format!("max_field must lie in 2..={MAX_FIELD_ORDER}")));
        }
        if let Some(env) = env_cap {
            let cap: u64 = env
                .trim()
                .parse()
                .map_err(|_| KklabError::config(format!("{MAX_FIELD_ENV}=`{env}` is not an integer")))?;
            max_field = max_field.min(cap);
        }
        let out = out_flag.or_else(|| map.remove("out").map(PathBuf::from));
        for key in map.keys() {
            if !suite.keys().contains(&key.as_str()) {
                return Err(KklabError::config(format!(
                    "unknown key `{key}` for suite `{}` (accepted: {})",
                    suite.name(),
                    suite.keys().join(", ")
                )));
            }
        }
        Ok(ExperimentConfig { suite, seed, max_field, out, params: map })
    }

    /// A config from `key = value` text, with no overrides and no environment cap.
    pub fn from_text(suite: Suite, text: &str) -> Result<ExperimentConfig> {
        Self::resolve(suite, parse_config_text(text)?, None, None, None)
    }
}

/// Typed access to suite keys. Every value read, default or not, is recorded for the
/// report's config echo.
pub struct Params<'a> {
    config: &'a ExperimentConfig,
    echo: RefCell<BTreeMap<String, String>>,
}

impl<'a> Params<'a> {
    pub fn new(config: &'a ExperimentConfig) -> Params<'a> {
        let mut echo = BTreeMap::new();
        echo.insert("seed".to_string(), config.seed.to_string());
        echo.insert("max_field".to_string(), config.max_field.to_string());
        Params { config, echo: RefCell::new(echo) }
    }

    pub fn seed(&self) -> u64 {
        self.config.seed
    }

    pub fn cap(&self) -> u64 {
        self.config.max_field
    }

    pub fn has(&self, key: &str) -> bool {
        self.config.params.contains_key(key)
    }

    fn raw(&self, key: &str, default: &str) -> String {
        let value = self.config.params.get(key).cloned().unwrap_or_else(|| default.to_string());
        self.echo.borrow_mut().insert(key.to_string(), value.clone());
        value
    }

    pub fn u64(&self, key: &str, default: u64) -> Result<u64> {
        let v = self.raw(key, &default.to_string());
        v.parse().map_err(|_| KklabError::config(format!("{key} = `{v}` is not a non-negative integer")))
    }

    pub fn u64_in(&self, key: &str, default: u64, lo: u64, hi: u64) -> Result<u64> {
        let v = self.u64(key, default)?;
        if !(lo..=hi).contains(&v) {
            return Err(KklabError::config(format!("{key} = {v} outside {lo}..={hi}")));
        }
        Ok(v)
    }

    pub fn u64_list(&self, key: &str, default: &str) -> Result<Vec<u64>> {
        parse_u64_list(&self.raw(key, default))
    }

    pub fn string(&self, key: &str, default: &str) -> String {
        self.raw(key, default)
    }

    /// A list of field orders such as `2, 3, 9`.
    pub fn fields(&self, key: &str, default: &str) -> Result<Vec<Field>> {
        let v = self.raw(key, default);
        let fields: Vec<Field> = split_list(&v).map(|s| parse_field(s, self.cap())).collect::<Result<_>>()?;
        if fields.is_empty() {
            return Err(KklabError::config(format!("{key} lists no fields")));
        }
        Ok(fields)
    }

    /// The single field given by `p` and `n`, when `p` is present.
    pub fn field_pn(&self) -> Result<Option<Field>> {
        if !self.has("p") {
            return Ok(None);
        }
        let p = self.u64("p", 0)?;
        let n = self.u64("n", 1)?;
        let p = u32::try_from(p).map_err(|_| KklabError::config(format!("p = {p} is too large")))?;
        let n = u32::try_from(n).map_err(|_| KklabError::config(format!("n = {n} is too large")))?;
        crate::format::build_field(p, n, self.cap()).map(Some)
    }

    /// A list of extensions such as `4/2, 9/3`.
    pub fn extensions(&self, key: &str, default: &str) -> Result<Vec<(Field, Field)>> {
        let v = self.raw(key, default);
        split_list(&v).map(|s| parse_extension(s, self.cap())).collect()
    }

    pub fn form(&self, key: &str, field: &Field) -> Result<Form> {
        let v = self.config.params.get(key).ok_or_else(|| KklabError::config(format!("missing key `{key}`")))?;
        self.echo.borrow_mut().insert(key.to_string(), v.clone());
        parse_form(field, v, None)
    }

    pub fn into_echo(self) -> BTreeMap<String, String> {
        self.echo.into_inner()
    }
}
