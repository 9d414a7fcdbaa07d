//! Instance generators.

use std::fmt;
use std::str::FromStr;

use imprecise::Instance;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::BenchError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// `[(n-1)δ, ..., δ, 0]`
    Reverse,
    /// `[0, δ, ..., (n-1)δ]`
    Forward,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GeneratorKind {
    Uniform {
        lo: f64,
        hi: f64,
    },
    AllEqual,
    Ladder(Direction),
    /// Cluster `g` sits at `g·gap`; members are spread over `[0, δ)` above it.
    Clustered {
        groups: usize,
        gap: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub n: usize,
    pub delta: f64,
    pub seed: u64,
}

pub fn generate_instance(spec: &GeneratorSpec) -> Result<Instance, BenchError> {
    let GeneratorSpec {
        kind,
        n,
        delta,
        seed,
    } = *spec;
    if n == 0 {
        return Err(BenchError::Usage("instance size must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values = match kind {
        GeneratorKind::Uniform { lo, hi } => (0..n).map(|_| rng.random_range(lo..=hi)).collect(),
        GeneratorKind::AllEqual => vec![0.0; n],
        GeneratorKind::Ladder(Direction::Reverse) => {
            (0..n).map(|i| (n - 1 - i) as f64 * delta).collect()
        }
        GeneratorKind::Ladder(Direction::Forward) => (0..n).map(|i| i as f64 * delta).collect(),
        GeneratorKind::Clustered { groups, gap } => (0..n)
            .map(|_| rng.random_range(0..groups) as f64 * gap + rng.random_range(0.0..delta))
            .collect(),
    };
    Instance::new(values, delta).map_err(|e| BenchError::Usage(e.to_string()))
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Uniform { lo, hi } => write!(f, "uniform({lo},{hi})"),
            Self::AllEqual => f.write_str("all-equal"),
            Self::Ladder(Direction::Reverse) => f.write_str("ladder(reverse)"),
            Self::Ladder(Direction::Forward) => f.write_str("ladder(forward)"),
            Self::Clustered { groups, gap } => write!(f, "clustered({groups},{gap})"),
        }
    }
}

fn parse_args(name: &str, s: &str) -> Result<(String, Vec<String>), BenchError> {
    let s = s.trim();
    let Some(open) = s.find('(') else {
        return Ok((s.to_string(), Vec::new()));
    };
    let inner = s[open + 1..]
        .strip_suffix(')')
        .ok_or_else(|| BenchError::Usage(format!("unbalanced parentheses in {name} `{s}`")))?;
    let args = inner.split(',').map(|a| a.trim().to_string()).collect();
    Ok((s[..open].trim().to_string(), args))
}

fn number<T: FromStr>(what: &str, s: &str) -> Result<T, BenchError> {
    s.parse()
        .map_err(|_| BenchError::Usage(format!("bad {what} `{s}`")))
}

impl FromStr for GeneratorKind {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, BenchError> {
        let (head, args) = parse_args("generator", s)?;
        let arity = |want: usize| {
            if args.len() == want {
                Ok(())
            } else {
                Err(BenchError::Usage(format!(
                    "generator `{s}` takes {want} arguments"
                )))
            }
        };
        match head.as_str() {
            "uniform" if args.is_empty() => Ok(Self::Uniform { lo: 0.0, hi: 100.0 }),
            "uniform" => {
                arity(2)?;
                let (lo, hi) = (number("bound", &args[0])?, number("bound", &args[1])?);
                if !(lo <= hi && f64::is_finite(lo) && f64::is_finite(hi)) {
                    return Err(BenchError::Usage(format!("empty range in `{s}`")));
                }
                Ok(Self::Uniform { lo, hi })
            }
            "all-equal" => {
                arity(0)?;
                Ok(Self::AllEqual)
            }
            "ladder" if args.is_empty() => Ok(Self::Ladder(Direction::Reverse)),
            "ladder" => {
                arity(1)?;
                match args[0].as_str() {
                    "reverse" => Ok(Self::Ladder(Direction::Reverse)),
                    "forward" => Ok(Self::Ladder(Direction::Forward)),
                    other => Err(BenchError::Usage(format!("bad ladder direction `{other}`"))),
                }
            }
            "clustered" => {
                arity(2)?;
                let groups: usize = number("group count", &args[0])?;
                let gap: f64 = number("gap", &args[1])?;
                if groups == 0 || !gap.is_finite() {
                    return Err(BenchError::Usage(format!("bad clustered spec `{s}`")));
                }
                Ok(Self::Clustered { groups, gap })
            }
            _ => Err(BenchError::Usage(format!("unknown generator `{s}`"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(kind: GeneratorKind, n: usize) -> GeneratorSpec {
        GeneratorSpec {
            kind,
            n,
            delta: 1.0,
            seed: 3,
        }
    }

    #[test]
    fn examples() {
        let eq = generate_instance(&spec(GeneratorKind::AllEqual, 5)).unwrap();
        assert_eq!(eq.values(), &[0.0; 5]);
        let lad = generate_instance(&spec(GeneratorKind::Ladder(Direction::Reverse), 4)).unwrap();
        assert_eq!(lad.values(), &[3.0, 2.0, 1.0, 0.0]);
        let u = spec(GeneratorKind::Uniform { lo: 0.0, hi: 100.0 }, 50);
        assert_eq!(
            generate_instance(&u).unwrap(),
            generate_instance(&u).unwrap()
        );
    }

    #[test]
    fn clusters_stay_within_delta() {
        let c = generate_instance(&spec(
            GeneratorKind::Clustered {
                groups: 3,
                gap: 10.0,
            },
            200,
        ))
        .unwrap();
        for &v in c.values() {
            let g = (v / 10.0).floor();
            assert!(v - g * 10.0 < 1.0 && g < 3.0);
        }
    }

    #[test]
    fn parse_round_trip() {
        for s in [
            "uniform(0,100)",
            "all-equal",
            "ladder(reverse)",
            "ladder(forward)",
            "clustered(4,10)",
        ] {
            assert_eq!(s.parse::<GeneratorKind>().unwrap().to_string(), s);
        }
        assert_eq!(
            "ladder".parse::<GeneratorKind>().unwrap(),
            GeneratorKind::Ladder(Direction::Reverse)
        );
        assert!("uniform(3,1)".parse::<GeneratorKind>().is_err());
        assert!("zipf".parse::<GeneratorKind>().is_err());
        assert!("clustered(0,1)".parse::<GeneratorKind>().is_err());
    }
}
