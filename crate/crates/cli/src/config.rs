//! Run settings: defaults, a `key = value` file, then the `QG_SEED`
//! environment variable, then explicit flags.

use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Output {
    Text,
    Json,
}

impl FromStr for Output {
    type Err = ConfigError;
    fn from_str(s: &str) -> Result<Self, ConfigError> {
        match s {
            "text" => Ok(Output::Text),
            "json" => Ok(Output::Json),
            other => Err(ConfigError::BadValue { key: "output".into(), value: other.into() }),
        }
    }
}

impl fmt::Display for Output {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Output::Text => "text",
            Output::Json => "json",
        })
    }
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum ConfigError {
    #[error("unknown config key {0}")]
    UnknownKey(String),
    #[error("bad value {value:?} for {key}")]
    BadValue { key: String, value: String },
    #[error("line {0}: expected key = value")]
    Syntax(usize),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Config {
    /// Numeric tolerance for pole detection and residual checks.
    pub tolerance: f64,
    pub randomized_trials: usize,
    pub rng_seed: u64,
    /// Mantissa bits for the high-precision degeneration tables.
    pub precision_bits: usize,
    pub output: Output,
}

impl Default for Config {
    fn default() -> Self {
        Self { tolerance: 1e-12, randomized_trials: 20, rng_seed: 0, precision_bits: 256, output: Output::Text }
    }
}

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T, ConfigError> {
    value.parse().map_err(|_| ConfigError::BadValue { key: key.into(), value: value.into() })
}

impl Config {
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        let bad = || ConfigError::BadValue { key: key.into(), value: value.into() };
        match key {
            "tolerance" => {
                let t: f64 = parse(key, value)?;
                if !(t > 0.0) {
                    return Err(bad());
                }
                self.tolerance = t;
            }
            "randomized-trials" => {
                let n: usize = parse(key, value)?;
                if n == 0 {
                    return Err(bad());
                }
                self.randomized_trials = n;
            }
            "rng-seed" => self.rng_seed = parse(key, value)?,
            "precision-bits" => {
                let b: usize = parse(key, value)?;
                if b < 24 {
                    return Err(bad());
                }
                self.precision_bits = b;
            }
            "output" => self.output = value.parse()?,
            other => return Err(ConfigError::UnknownKey(other.into())),
        }
        Ok(())
    }

    /// Applies `key = value` lines; `#` starts a comment.
    pub fn apply_text(&mut self, text: &str) -> Result<(), ConfigError> {
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or(ConfigError::Syntax(i + 1))?;
            self.set(k.trim(), v.trim().trim_matches('"'))?;
        }
        Ok(())
    }

    pub fn load(path: &str) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError::Io { path: path.into(), message: e.to_string() })?;
        let mut c = Config::default();
        c.apply_text(&text)?;
        Ok(c)
    }

    /// `QG_SEED`, when set, replaces the seed.
    pub fn apply_env(&mut self) -> Result<(), ConfigError> {
        if let Ok(v) = std::env::var("QG_SEED") {
            self.rng_seed = parse("QG_SEED", &v)?;
        }
        Ok(())
    }

    pub fn verify_options(&self) -> qgarnier::weylrep::VerifyOptions {
        qgarnier::weylrep::VerifyOptions { trials: self.randomized_trials, seed: self.rng_seed }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_syntax() {
        let mut c = Config::default();
        c.apply_text("# comment\ntolerance = 1e-8\nrandomized-trials=5\noutput = \"json\"\n").unwrap();
        assert_eq!(c.tolerance, 1e-8);
        assert_eq!(c.randomized_trials, 5);
        assert_eq!(c.output, Output::Json);
        assert_eq!(c.apply_text("nonsense"), Err(ConfigError::Syntax(1)));
        assert!(matches!(c.set("randomized-trials", "0"), Err(ConfigError::BadValue { .. })));
        assert!(matches!(c.set("tolerance", "-1"), Err(ConfigError::BadValue { .. })));
        assert!(matches!(c.set("colour", "red"), Err(ConfigError::UnknownKey(_))));
    }
}
