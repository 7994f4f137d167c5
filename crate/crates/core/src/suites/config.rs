use std::path::PathBuf;

use serde::Serialize;

use crate::building::GroupType;
use crate::error::{Error, Result};
use crate::local_field::{ExtensionKind, LocalField, DEFAULT_PRECISION};
use crate::rational::{format_q, parse_q, q, qi, Q};

pub const DEFAULT_P: u64 = 5;
pub const DEFAULT_SAMPLES: usize = 100;
pub const DEFAULT_CAP: u64 = 1 << 20;
pub const DEFAULT_TARGET: i64 = 4;

/// Everything a suite run depends on. Unset fields fall back to per-suite
/// defaults when the run starts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteConfig {
    pub suite: String,
    pub p: u64,
    pub ext: ExtensionKind,
    pub group: Option<String>,
    pub precision: u32,
    pub samples: usize,
    pub seed: u64,
    pub cap: u64,
    pub out: Option<PathBuf>,
    /// Filtration level for the quotient suites (default 1/2).
    pub r: Option<Q>,
    /// Descent target depth (default 4).
    pub target: Option<Q>,
}

impl SuiteConfig {
    pub fn new(suite: &str) -> Self {
        SuiteConfig {
            suite: suite.to_string(),
            p: DEFAULT_P,
            ext: ExtensionKind::Trivial,
            group: None,
            precision: DEFAULT_PRECISION,
            samples: DEFAULT_SAMPLES,
            seed: 0,
            cap: DEFAULT_CAP,
            out: None,
            r: None,
            target: None,
        }
    }

    /// Applies one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let bad = |what: &str| Error::Config(format!("invalid {what}: `{value}`"));
        let v = value.trim();
        match key.trim() {
            "suite" => self.suite = v.to_string(),
            "p" => self.p = v.parse().map_err(|_| bad("p"))?,
            "ext" => self.ext = ExtensionKind::parse(v).ok_or_else(|| bad("ext"))?,
            "group" => self.group = Some(v.to_string()),
            "prec" | "precision" => self.precision = v.parse().map_err(|_| bad("prec"))?,
            "samples" => self.samples = v.parse().map_err(|_| bad("samples"))?,
            "seed" => self.seed = v.parse().map_err(|_| bad("seed"))?,
            "cap" => self.cap = v.parse().map_err(|_| bad("cap"))?,
            "out" => self.out = Some(PathBuf::from(v)),
            "r" => self.r = Some(parse_q(v).ok_or_else(|| bad("r"))?),
            "target" => self.target = Some(parse_q(v).ok_or_else(|| bad("target"))?),
            other => return Err(Error::Config(format!("unknown key `{other}`"))),
        }
        Ok(())
    }

    /// Parses a flat `key = value` file; `#` starts a comment.
    pub fn apply_file_contents(&mut self, text: &str) -> Result<()> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", lineno + 1)))?;
            self.set(k, v)?;
        }
        Ok(())
    }

    pub fn level(&self) -> Q {
        self.r.unwrap_or(q(1, 2))
    }

    pub fn target_depth(&self) -> Q {
        self.target.unwrap_or(qi(DEFAULT_TARGET))
    }

    /// The group, with the suite's default when unset.
    pub fn group_type(&self, default: &str) -> Result<GroupType> {
        GroupType::parse(self.group.as_deref().unwrap_or(default), self.ext)
    }

    /// The field for a group: unitary groups carry their own extension.
    pub fn field_for(&self, g: &GroupType) -> Result<LocalField> {
        let ext = match g {
            GroupType::U { ext, .. } => *ext,
            _ => self.ext,
        };
        LocalField::new(self.p, ext, self.precision).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn echo(&self) -> ConfigEcho {
        ConfigEcho {
            suite: self.suite.clone(),
            p: self.p,
            ext: self.ext,
            group: self.group.clone(),
            precision: self.precision,
            samples: self.samples,
            seed: self.seed,
            cap: self.cap,
            r: self.r.map(|v| format_q(&v)),
            target: self.target.map(|v| format_q(&v)),
        }
    }
}

/// The configuration as recorded in a report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConfigEcho {
    pub suite: String,
    pub p: u64,
    pub ext: ExtensionKind,
    pub group: Option<String>,
    pub precision: u32,
    pub samples: usize,
    pub seed: u64,
    pub cap: u64,
    pub r: Option<String>,
    pub target: Option<String>,
}
