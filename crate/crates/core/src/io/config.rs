//! `key = value` configuration files.
//!
//! One assignment per line, `#` starts a comment, keys match the config
//! field names exactly (`N`, `m`, `D`, `R`, `beta`, ...), list values are
//! comma-separated. Unknown and repeated keys are errors. `--set key=value`
//! overrides use the same grammar and replace file values.

use std::path::Path;

use crate::engine::RunConfig;
use crate::error::{Error, Result};
use crate::harness::SweepSpec;
use crate::theory::TheoryParams;

pub const RUN_KEYS: [&str; 11] = [
    "N",
    "m",
    "D",
    "R",
    "beta",
    "epsilon",
    "relax_steps",
    "measure_steps",
    "seed",
    "initial_price",
    "initial_holding",
];
pub const SWEEP_KEYS: [&str; 4] = ["beta_values", "r_values", "runs_per_point", "base_seed"];
pub const THEORY_KEYS: [&str; 5] = ["N", "R", "D", "aN", "beta"];

#[derive(Debug, Clone, PartialEq)]
pub struct Entry {
    pub key: String,
    pub value: String,
    /// `file:line` or `--set #k`.
    pub location: String,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ConfigEntries {
    entries: Vec<Entry>,
}

impl ConfigEntries {
    pub fn parse(text: &str, source: &str) -> Result<Self> {
        let mut out = ConfigEntries::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let location = format!("{source}:{}", idx + 1);
            out.push(split_assignment(line, location)?)?;
        }
        Ok(out)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text, &path.display().to_string())
    }

    pub fn from_overrides<S: AsRef<str>>(overrides: &[S]) -> Result<Self> {
        let mut out = ConfigEntries::default();
        for (idx, raw) in overrides.iter().enumerate() {
            let location = format!("--set #{}", idx + 1);
            out.push(split_assignment(raw.as_ref().trim(), location)?)?;
        }
        Ok(out)
    }

    fn push(&mut self, entry: Entry) -> Result<()> {
        if let Some(prev) = self.get(&entry.key) {
            return Err(Error::Parse {
                location: entry.location.clone(),
                reason: format!("duplicate key `{}` (first set at {})", entry.key, prev.location),
            });
        }
        self.entries.push(entry);
        Ok(())
    }

    /// Entries of `overrides` replace same-named entries here.
    pub fn overridden_by(mut self, overrides: ConfigEntries) -> Self {
        for entry in overrides.entries {
            self.entries.retain(|e| e.key != entry.key);
            self.entries.push(entry);
        }
        self
    }

    pub fn get(&self, key: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.key == key)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Entry> {
        self.entries.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn reject_unknown(&self, allowed: &[&str]) -> Result<()> {
        match self.entries.iter().find(|e| !allowed.contains(&e.key.as_str())) {
            Some(e) => Err(Error::Parse {
                location: e.location.clone(),
                reason: format!("unknown key `{}` (allowed: {})", e.key, allowed.join(", ")),
            }),
            None => Ok(()),
        }
    }

    fn locate(&self, err: Error) -> Error {
        match err {
            Error::Config { field, reason } => match self.get(&field) {
                Some(e) => Error::Config {
                    reason: format!("{reason} (set at {})", e.location),
                    field,
                },
                None => Error::Config { field, reason },
            },
            other => other,
        }
    }
}

fn split_assignment(line: &str, location: String) -> Result<Entry> {
    let Some((key, value)) = line.split_once('=') else {
        return Err(Error::Parse {
            location,
            reason: format!("expected `key = value`, got `{line}`"),
        });
    };
    let (key, value) = (key.trim(), value.trim());
    if key.is_empty() {
        return Err(Error::Parse {
            location,
            reason: "missing key before `=`".into(),
        });
    }
    Ok(Entry {
        key: key.to_string(),
        value: value.to_string(),
        location,
    })
}

trait ParseValue: Sized {
    const EXPECTED: &'static str;
    fn parse_value(s: &str) -> Option<Self>;
}

impl ParseValue for f64 {
    const EXPECTED: &'static str = "a number";
    fn parse_value(s: &str) -> Option<Self> {
        s.parse().ok()
    }
}

impl ParseValue for u64 {
    const EXPECTED: &'static str = "an unsigned integer";
    fn parse_value(s: &str) -> Option<Self> {
        s.replace('_', "").parse().ok()
    }
}

impl ParseValue for usize {
    const EXPECTED: &'static str = "an unsigned integer";
    fn parse_value(s: &str) -> Option<Self> {
        s.replace('_', "").parse().ok()
    }
}

impl ParseValue for bool {
    const EXPECTED: &'static str = "true or false";
    fn parse_value(s: &str) -> Option<Self> {
        s.parse().ok()
    }
}

impl<T: ParseValue> ParseValue for Vec<T> {
    const EXPECTED: &'static str = "a comma-separated list";
    fn parse_value(s: &str) -> Option<Self> {
        s.split(',')
            .map(str::trim)
            .filter(|x| !x.is_empty())
            .map(T::parse_value)
            .collect()
    }
}

fn value<T: ParseValue>(entry: &Entry) -> Result<T> {
    T::parse_value(&entry.value).ok_or_else(|| Error::Parse {
        location: entry.location.clone(),
        reason: format!("`{}` expects {}, got `{}`", entry.key, T::EXPECTED, entry.value),
    })
}

fn apply_run_entry(config: &mut RunConfig, entry: &Entry) -> Result<bool> {
    match entry.key.as_str() {
        "N" => config.agents = value(entry)?,
        "m" => config.memory = value(entry)?,
        "D" => config.threshold = value(entry)?,
        "R" => config.loss_ratio = value(entry)?,
        "beta" => config.beta = value(entry)?,
        "epsilon" => config.epsilon = value(entry)?,
        "relax_steps" => config.relax_steps = value(entry)?,
        "measure_steps" => config.measure_steps = value(entry)?,
        "seed" => config.seed = value(entry)?,
        "initial_price" => config.initial_price = value(entry)?,
        "initial_holding" => config.initial_holding = value(entry)?,
        _ => return Ok(false),
    }
    Ok(true)
}

impl ConfigEntries {
    /// Defaults overlaid with these entries; only run keys are accepted.
    pub fn to_run_config(&self) -> Result<RunConfig> {
        self.reject_unknown(&RUN_KEYS)?;
        let mut config = RunConfig::default();
        for entry in &self.entries {
            apply_run_entry(&mut config, entry)?;
        }
        config.validate().map_err(|e| self.locate(e))?;
        Ok(config)
    }

    /// `base` overlaid with these entries; run keys set the base config.
    pub fn to_sweep_spec(&self, base: SweepSpec) -> Result<SweepSpec> {
        let allowed: Vec<&str> = RUN_KEYS.iter().chain(&SWEEP_KEYS).copied().collect();
        self.reject_unknown(&allowed)?;
        let mut spec = base;
        for entry in &self.entries {
            if apply_run_entry(&mut spec.base, entry)? {
                continue;
            }
            match entry.key.as_str() {
                "beta_values" => spec.beta_values = value(entry)?,
                "r_values" => spec.r_values = value(entry)?,
                "runs_per_point" => spec.runs_per_point = value(entry)?,
                "base_seed" => spec.base_seed = value(entry)?,
                _ => unreachable!("key set checked above"),
            }
        }
        spec.base.validate().map_err(|e| self.locate(e))?;
        spec.validate().map_err(|e| self.locate(e))?;
        Ok(spec)
    }

    pub fn to_theory_params(&self) -> Result<TheoryParams> {
        self.reject_unknown(&THEORY_KEYS)?;
        let mut params = TheoryParams::default();
        for entry in &self.entries {
            match entry.key.as_str() {
                "N" => params.agents = value(entry)?,
                "R" => params.loss_ratio = value(entry)?,
                "D" => params.threshold = value(entry)?,
                "aN" => params.scale = value(entry)?,
                "beta" => params.beta = value(entry)?,
                _ => unreachable!("key set checked above"),
            }
        }
        params.validate().map_err(|e| self.locate(e))?;
        Ok(params)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ParsedConfig {
    Run(RunConfig),
    Sweep(SweepSpec),
}

/// Parse config text; any sweep key makes it a sweep over default grids.
pub fn parse_config(text: &str, source: &str) -> Result<ParsedConfig> {
    let entries = ConfigEntries::parse(text, source)?;
    if entries.iter().any(|e| SWEEP_KEYS.contains(&e.key.as_str())) {
        Ok(ParsedConfig::Sweep(entries.to_sweep_spec(SweepSpec::default())?))
    } else {
        Ok(ParsedConfig::Run(entries.to_run_config()?))
    }
}

/// Optional file plus `--set` overrides, resolved to a run config.
pub fn load_run_config(path: Option<&Path>, overrides: &[String]) -> Result<RunConfig> {
    load_entries(path, overrides)?.to_run_config()
}

pub fn load_sweep_spec(path: Option<&Path>, overrides: &[String], base: SweepSpec) -> Result<SweepSpec> {
    load_entries(path, overrides)?.to_sweep_spec(base)
}

fn load_entries(path: Option<&Path>, overrides: &[String]) -> Result<ConfigEntries> {
    let file = match path {
        Some(p) => ConfigEntries::read(p)?,
        None => ConfigEntries::default(),
    };
    Ok(file.overridden_by(ConfigEntries::from_overrides(overrides)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_gives_defaults() {
        let c = ConfigEntries::parse("", "x").unwrap().to_run_config().unwrap();
        assert_eq!(c, RunConfig::default());
        let c = ConfigEntries::parse("# only a comment\n\n", "x").unwrap().to_run_config().unwrap();
        assert_eq!(c, RunConfig::default());
    }

    #[test]
    fn values_and_comments() {
        let text = "N = 51  # fewer agents\nbeta=0.8\nR = 1.05\nrelax_steps = 10_000\ninitial_holding = true\n";
        let c = ConfigEntries::parse(text, "cfg").unwrap().to_run_config().unwrap();
        assert_eq!(c.agents, 51);
        assert_eq!(c.beta, 0.8);
        assert_eq!(c.loss_ratio, 1.05);
        assert_eq!(c.relax_steps, 10_000);
        assert!(c.initial_holding);
    }

    #[test]
    fn out_of_range_names_key_and_line() {
        let err = ConfigEntries::parse("\nbeta = 1.5\n", "cfg").unwrap().to_run_config().unwrap_err();
        match err {
            Error::Config { field, reason } => {
                assert_eq!(field, "beta");
                assert!(reason.contains("cfg:2"), "{reason}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn duplicate_key_rejected() {
        let err = ConfigEntries::parse("N = 101\nN = 101\n", "cfg").unwrap_err();
        match err {
            Error::Parse { location, reason } => {
                assert_eq!(location, "cfg:2");
                assert!(reason.contains("duplicate key `N`") && reason.contains("cfg:1"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_key_rejected() {
        let err = ConfigEntries::parse("bta = 0.2\n", "cfg").unwrap().to_run_config().unwrap_err();
        assert!(matches!(err, Error::Parse { ref reason, .. } if reason.contains("unknown key `bta`")));
        // sweep keys are not valid for a single run
        assert!(ConfigEntries::parse("runs_per_point = 3", "cfg").unwrap().to_run_config().is_err());
    }

    #[test]
    fn malformed_lines() {
        assert!(ConfigEntries::parse("N 101", "cfg").is_err());
        assert!(ConfigEntries::parse("= 3", "cfg").is_err());
        let err = ConfigEntries::parse("N = many", "cfg").unwrap().to_run_config().unwrap_err();
        assert!(matches!(err, Error::Parse { ref location, .. } if location == "cfg:1"));
    }

    #[test]
    fn sweep_lists_and_overrides() {
        let file = ConfigEntries::parse("beta_values = 0, 0.5, 1\nr_values = 1,2\nruns_per_point = 3\nN = 11", "f").unwrap();
        let over = ConfigEntries::from_overrides(&["N=21", "base_seed = 9"]).unwrap();
        let spec = file.overridden_by(over).to_sweep_spec(SweepSpec::default()).unwrap();
        assert_eq!(spec.beta_values, vec![0.0, 0.5, 1.0]);
        assert_eq!(spec.r_values, vec![1.0, 2.0]);
        assert_eq!((spec.runs_per_point, spec.base_seed, spec.base.agents), (3, 9, 21));
    }

    #[test]
    fn parse_config_picks_kind() {
        assert!(matches!(parse_config("beta = 0.3", "c").unwrap(), ParsedConfig::Run(_)));
        assert!(matches!(parse_config("r_values = 1, 5", "c").unwrap(), ParsedConfig::Sweep(_)));
    }

    #[test]
    fn theory_keys() {
        let p = ConfigEntries::from_overrides(&["R=3", "aN=0.1"]).unwrap().to_theory_params().unwrap();
        assert_eq!((p.loss_ratio, p.scale), (3.0, 0.1));
        assert!(ConfigEntries::from_overrides(&["epsilon=0.1"]).unwrap().to_theory_params().is_err());
    }
}
