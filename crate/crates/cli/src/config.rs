//! `key = value` configuration, overridden by command-line flags.

use std::path::Path;

use ncqm_core::series::parse_rational;
use ncqm_core::DeformParams;

use crate::error::CliError;

pub const DEFAULT_TRUNCATION_CAP: u32 = 6;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub alpha: String,
    pub beta: String,
    pub gamma: String,
    pub truncation: u32,
    pub format: Format,
    pub truncation_cap: u32,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            alpha: "1".into(),
            beta: "1".into(),
            gamma: "1".into(),
            truncation: 2,
            format: Format::Text,
            truncation_cap: DEFAULT_TRUNCATION_CAP,
        }
    }
}

/// Flag values; `None` keeps what the file or the defaults say.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub alpha: Option<String>,
    pub beta: Option<String>,
    pub gamma: Option<String>,
    pub truncation: Option<u32>,
    pub format: Option<Format>,
}

impl Config {
    /// Parses `key = value` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut cfg = Config::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad =
                |msg: &str| CliError::Parse(format!("config parse error, line {}: {msg}", n + 1));
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| bad("expected key = value"))?;
            let value = value.trim().to_string();
            let nat = |v: &str| {
                v.parse::<u32>()
                    .map_err(|_| bad("expected a natural number"))
            };
            match key.trim() {
                "alpha" => cfg.alpha = value,
                "beta" => cfg.beta = value,
                "gamma" => cfg.gamma = value,
                "trunc" | "truncation" => cfg.truncation = nat(&value)?,
                "cap" | "truncation_cap" => cfg.truncation_cap = nat(&value)?,
                "format" => {
                    cfg.format = match value.as_str() {
                        "text" => Format::Text,
                        "json" => Format::Json,
                        _ => return Err(bad("format must be text or json")),
                    }
                }
                other => return Err(bad(&format!("unknown key '{other}'"))),
            }
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn apply(mut self, o: &Overrides) -> Self {
        if let Some(v) = &o.alpha {
            self.alpha = v.clone();
        }
        if let Some(v) = &o.beta {
            self.beta = v.clone();
        }
        if let Some(v) = &o.gamma {
            self.gamma = v.clone();
        }
        if let Some(v) = o.truncation {
            self.truncation = v;
        }
        if let Some(v) = o.format {
            self.format = v;
        }
        self
    }

    /// Validated parameters: rationals parse, `α ≠ 0`, `D ≤ cap`.
    pub fn params(&self) -> Result<DeformParams, CliError> {
        let r = |name: &str, v: &str| {
            parse_rational(v)
                .map_err(|_| CliError::InvalidParams(format!("{name} = '{v}' is not a rational")))
        };
        if self.truncation > self.truncation_cap {
            return Err(CliError::InvalidParams(format!(
                "truncation {} exceeds the cap {}",
                self.truncation, self.truncation_cap
            )));
        }
        DeformParams::new(
            r("alpha", &self.alpha)?,
            r("beta", &self.beta)?,
            r("gamma", &self.gamma)?,
            self.truncation,
        )
        .map_err(CliError::from)
    }
}
