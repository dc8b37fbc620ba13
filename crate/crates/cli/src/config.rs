use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};

/// Settings shared by every subcommand, resolved flag > config file > default.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Settings {
    pub window: Option<u64>,
    pub horizon: Option<u64>,
    pub stages: Option<u64>,
    pub threshold: Option<u64>,
    pub n: Option<u64>,
    pub set: Option<String>,
    pub pred: Option<String>,
    pub field: Option<String>,
    pub target: Option<String>,
    pub expr: Option<String>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub machine: bool,
}

const KEYS: [&str; 13] = [
    "window",
    "horizon",
    "stages",
    "threshold",
    "n",
    "set",
    "pred",
    "field",
    "target",
    "expr",
    "seed",
    "out",
    "machine",
];

impl Settings {
    /// `key=value` lines; blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Settings> {
        let mut map = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .with_context(|| format!("config line {}: expected key=value", i + 1))?;
            let k = k.trim();
            if !KEYS.contains(&k) {
                bail!("config line {}: unknown key `{k}`", i + 1);
            }
            map.insert(k.to_string(), v.trim().to_string());
        }
        let num = |k: &str| -> Result<Option<u64>> {
            map.get(k)
                .map(|v| {
                    v.parse::<u64>()
                        .with_context(|| format!("config key `{k}`: not a natural number"))
                })
                .transpose()
        };
        let text = |k: &str| map.get(k).cloned();
        let machine = match map.get("machine").map(String::as_str) {
            None | Some("false") => false,
            Some("true") => true,
            Some(v) => bail!("config key `machine`: expected true or false, got `{v}`"),
        };
        Ok(Settings {
            window: num("window")?,
            horizon: num("horizon")?,
            stages: num("stages")?,
            threshold: num("threshold")?,
            n: num("n")?,
            set: text("set"),
            pred: text("pred"),
            field: text("field"),
            target: text("target"),
            expr: text("expr"),
            seed: num("seed")?,
            out: text("out").map(PathBuf::from),
            machine,
        })
    }

    pub fn load(path: &Path) -> Result<Settings> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        Settings::parse(&text)
    }

    /// Fields set in `self` win over `lower`.
    pub fn over(self, lower: Settings) -> Settings {
        Settings {
            window: self.window.or(lower.window),
            horizon: self.horizon.or(lower.horizon),
            stages: self.stages.or(lower.stages),
            threshold: self.threshold.or(lower.threshold),
            n: self.n.or(lower.n),
            set: self.set.or(lower.set),
            pred: self.pred.or(lower.pred),
            field: self.field.or(lower.field),
            target: self.target.or(lower.target),
            expr: self.expr.or(lower.expr),
            seed: self.seed.or(lower.seed),
            out: self.out.or(lower.out),
            machine: self.machine || lower.machine,
        }
    }

    pub fn check_bounds(&self) -> Result<()> {
        for (k, v) in [
            ("window", self.window),
            ("horizon", self.horizon),
            ("stages", self.stages),
            ("threshold", self.threshold),
            ("n", self.n),
        ] {
            if v == Some(0) {
                bail!("--{k} must be at least 1");
            }
        }
        Ok(())
    }
}

/// `NAME` or `@path`: the name itself, or the file's contents with its path.
pub enum Source {
    Named(String),
    File { path: PathBuf, text: String },
}

pub fn source(arg: &str) -> Result<Source> {
    match arg.strip_prefix('@') {
        Some(p) => {
            let path = PathBuf::from(p);
            let text = std::fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
            Ok(Source::File { path, text })
        }
        None => Ok(Source::Named(arg.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_config() {
        let cfg = Settings::parse("# defaults\nwindow = 32\nset=empty\nmachine=true\n").unwrap();
        let flags = Settings {
            window: Some(8),
            ..Settings::default()
        };
        let s = flags.over(cfg);
        assert_eq!(s.window, Some(8));
        assert_eq!(s.set.as_deref(), Some("empty"));
        assert!(s.machine);
    }

    #[test]
    fn rejects_bad_lines() {
        assert!(Settings::parse("window").is_err());
        assert!(Settings::parse("colour=blue").is_err());
        assert!(Settings::parse("window=x").is_err());
        assert!(Settings::parse("machine=yes").is_err());
    }
}
