//! TOML sweep configuration and command-line overrides.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use imprecise::Profile;
use serde::Deserialize;

use crate::suite::SuiteConfig;
use crate::BenchError;

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
enum RankValue {
    Index(usize),
    Name(String),
}

/// Every key is optional; missing keys keep their defaults.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    algorithms: Option<Vec<String>>,
    generators: Option<Vec<String>>,
    n: Option<Vec<usize>>,
    k: Option<Vec<u32>>,
    policies: Option<Vec<String>>,
    delta: Option<f64>,
    trials: Option<usize>,
    master_seed: Option<u64>,
    profile: Option<String>,
    select_rank: Option<RankValue>,
    timing: Option<bool>,
    format: Option<String>,
    out: Option<PathBuf>,
}

/// Raw flag values; lists are comma-separated.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub algorithms: Option<String>,
    pub generators: Option<String>,
    pub n: Option<String>,
    pub k: Option<String>,
    pub policies: Option<String>,
    pub delta: Option<f64>,
    pub trials: Option<usize>,
    pub master_seed: Option<u64>,
    pub profile: Option<String>,
    pub select_rank: Option<String>,
    pub timing: bool,
    pub format: Option<String>,
    pub out: Option<PathBuf>,
}

pub fn parse_profile(s: &str) -> Result<Profile, BenchError> {
    match s.trim() {
        "paper" | "paper-faithful" | "paper_faithful" => Ok(Profile::PaperFaithful),
        "practical" => Ok(Profile::Practical),
        other => Err(BenchError::Usage(format!("unknown profile `{other}`"))),
    }
}

/// Splits on commas outside parentheses, so `uniform(0,1),all-equal` has
/// two items.
pub fn split_list(s: &str) -> Vec<String> {
    let mut items = Vec::new();
    let mut depth = 0usize;
    let mut current = String::new();
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                items.push(std::mem::take(&mut current));
                continue;
            }
            _ => {}
        }
        current.push(ch);
    }
    items.push(current);
    items
        .into_iter()
        .map(|x| x.trim().to_string())
        .filter(|x| !x.is_empty())
        .collect()
}

fn parse_all<T: FromStr>(items: &[String]) -> Result<Vec<T>, BenchError>
where
    BenchError: From<T::Err>,
{
    items.iter().map(|s| Ok(s.parse::<T>()?)).collect()
}

fn parse_numbers<T: FromStr>(what: &str, s: &str) -> Result<Vec<T>, BenchError> {
    split_list(s)
        .iter()
        .map(|x| {
            x.parse()
                .map_err(|_| BenchError::Usage(format!("bad {what} `{x}`")))
        })
        .collect()
}

pub fn parse_config(text: &str) -> Result<FileConfig, BenchError> {
    toml::from_str(text).map_err(|e| BenchError::Config(e.to_string()))
}

pub fn load_config(path: &Path) -> Result<FileConfig, BenchError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| BenchError::Config(format!("{}: {e}", path.display())))?;
    parse_config(&text).map_err(|e| match e {
        BenchError::Config(msg) => BenchError::Config(format!("{}: {msg}", path.display())),
        other => other,
    })
}

impl FileConfig {
    pub fn apply(self, cfg: &mut SuiteConfig) -> Result<(), BenchError> {
        if let Some(a) = self.algorithms {
            cfg.algorithms = parse_all(&a)?;
        }
        if let Some(g) = self.generators {
            cfg.generators = parse_all(&g)?;
        }
        if let Some(n) = self.n {
            cfg.n = n;
        }
        if let Some(k) = self.k {
            cfg.k = k;
        }
        if let Some(p) = self.policies {
            cfg.policies = parse_all(&p)?;
        }
        if let Some(d) = self.delta {
            cfg.delta = d;
        }
        if let Some(t) = self.trials {
            cfg.trials = t;
        }
        if let Some(s) = self.master_seed {
            cfg.master_seed = s;
        }
        if let Some(p) = self.profile {
            cfg.profile = parse_profile(&p)?;
        }
        match self.select_rank {
            Some(RankValue::Index(i)) => cfg.select_rank = i.to_string().parse()?,
            Some(RankValue::Name(s)) => cfg.select_rank = s.parse()?,
            None => {}
        }
        if let Some(t) = self.timing {
            cfg.timing = t;
        }
        if let Some(f) = self.format {
            cfg.format = f.parse()?;
        }
        if let Some(o) = self.out {
            cfg.out = Some(o);
        }
        Ok(())
    }
}

impl Overrides {
    pub fn apply(self, cfg: &mut SuiteConfig) -> Result<(), BenchError> {
        if let Some(a) = self.algorithms {
            cfg.algorithms = parse_all(&split_list(&a))?;
        }
        if let Some(g) = self.generators {
            cfg.generators = parse_all(&split_list(&g))?;
        }
        if let Some(n) = self.n {
            cfg.n = parse_numbers("size", &n)?;
        }
        if let Some(k) = self.k {
            cfg.k = parse_numbers("k", &k)?;
        }
        if let Some(p) = self.policies {
            cfg.policies = parse_all(&split_list(&p))?;
        }
        if let Some(d) = self.delta {
            cfg.delta = d;
        }
        if let Some(t) = self.trials {
            cfg.trials = t;
        }
        if let Some(s) = self.master_seed {
            cfg.master_seed = s;
        }
        if let Some(p) = self.profile {
            cfg.profile = parse_profile(&p)?;
        }
        if let Some(r) = self.select_rank {
            cfg.select_rank = r.parse()?;
        }
        if self.timing {
            cfg.timing = true;
        }
        if let Some(f) = self.format {
            cfg.format = f.parse()?;
        }
        if let Some(o) = self.out {
            cfg.out = Some(o);
        }
        Ok(())
    }
}

/// Defaults, then the file, then the flags.
pub fn resolve(file: Option<FileConfig>, flags: Overrides) -> Result<SuiteConfig, BenchError> {
    let mut cfg = SuiteConfig::default();
    if let Some(file) = file {
        file.apply(&mut cfg)?;
    }
    flags.apply(&mut cfg)?;
    cfg.validate()?;
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::GeneratorKind;
    use crate::trial::{Algorithm, Policy, SelectRank};

    #[test]
    fn split_respects_parentheses() {
        assert_eq!(
            split_list("uniform(0,100), all-equal,clustered(3,5)"),
            vec!["uniform(0,100)", "all-equal", "clustered(3,5)"]
        );
        assert!(split_list("").is_empty());
    }

    #[test]
    fn file_then_flags() {
        let file = parse_config(
            r#"
            algorithms = ["max_find_2", "sort_2"]
            generators = ["ladder(reverse)"]
            n = [10, 20]
            policies = ["regret"]
            select_rank = 3
            master_seed = 42
            "#,
        )
        .unwrap();
        let flags = Overrides {
            n: Some("5,6,7".into()),
            profile: Some("paper".into()),
            ..Overrides::default()
        };
        let cfg = resolve(Some(file), flags).unwrap();
        assert_eq!(cfg.algorithms, vec![Algorithm::MaxFind2, Algorithm::Sort2]);
        assert_eq!(cfg.n, vec![5, 6, 7]);
        assert_eq!(cfg.policies, vec![Policy::Regret]);
        assert_eq!(cfg.select_rank, SelectRank::Index(3));
        assert_eq!(cfg.master_seed, 42);
        assert_eq!(cfg.profile, Profile::PaperFaithful);
        assert!(matches!(cfg.generators[0], GeneratorKind::Ladder(_)));
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = parse_config("n = [1, 2]\ntrials = \"many\"\n").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        assert!(parse_config("colour = 1").is_err());
    }

    #[test]
    fn bad_values_are_usage_errors() {
        let flags = Overrides {
            algorithms: Some("max_find_2,heapsort".into()),
            ..Overrides::default()
        };
        assert!(matches!(resolve(None, flags), Err(BenchError::Usage(_))));
        let flags = Overrides {
            k: Some("1".into()),
            ..Overrides::default()
        };
        assert!(resolve(None, flags).is_err());
    }
}
