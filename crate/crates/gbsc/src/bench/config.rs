//! Experiment configuration: a small `key = value` text format so a run is
//! reproducible from the config file alone.
//!
//! ```text
//! # Edge-probability bands, one instance group per band.
//! mode = er
//! groups = 0.72-0.87, 0.50-0.71, 0.37-0.49, 0.22-0.36
//! sizes = 10, 15, 20
//! instances_per_cell = 13
//! methods = dsatur, rlf, sli, gbsc
//! seed = 42
//! time_limit_secs = 300
//! out_dir = bench-out
//! ```
//!
//! Interval-scheduling mode replaces the first four keys:
//!
//! ```text
//! mode = gisp
//! count = 40
//! intervals_per_instance = 25
//! k_max = 4
//! horizon = 100
//! max_duration = 10
//! ```

use std::collections::BTreeMap;
use std::time::Duration;

use super::Method;
use crate::error::{Error, Result};

/// Where benchmark graphs come from.
#[derive(Debug, Clone, PartialEq)]
pub enum InstanceSource {
    /// Per band and size, `per_cell` random graphs with the edge
    /// probability drawn uniformly from the band.
    ErGroups {
        intervals: Vec<(f64, f64)>,
        sizes: Vec<usize>,
        per_cell: usize,
    },
    /// Random interval-scheduling conflict graphs, grouped afterwards into
    /// density quartiles.
    Gisp {
        count: usize,
        intervals_per_instance: usize,
        k_max: usize,
        horizon: f64,
        max_duration: f64,
    },
}

/// A fully specified experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub source: InstanceSource,
    pub methods: Vec<Method>,
    pub seed: u64,
    pub time_limit: Duration,
    pub out_dir: String,
}

impl ExperimentConfig {
    /// Group names in aggregation order.
    pub fn group_names(&self) -> Vec<String> {
        match &self.source {
            InstanceSource::ErGroups { intervals, .. } => {
                (1..=intervals.len()).map(|i| format!("group{i}")).collect()
            }
            InstanceSource::Gisp { .. } => (1..=4).map(|i| format!("q{i}")).collect(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.methods.is_empty() {
            return Err(Error::InvalidConfig("method set is empty".into()));
        }
        for (i, m) in self.methods.iter().enumerate() {
            if self.methods[i + 1..].contains(m) {
                return Err(Error::InvalidConfig(format!("method {m} listed twice")));
            }
        }
        if self.time_limit.is_zero() {
            return Err(Error::InvalidConfig("time limit must be positive".into()));
        }
        match &self.source {
            InstanceSource::ErGroups {
                intervals,
                sizes,
                per_cell,
            } => {
                if intervals.is_empty() {
                    return Err(Error::InvalidConfig("no probability bands".into()));
                }
                if sizes.is_empty() {
                    return Err(Error::InvalidConfig("size list is empty".into()));
                }
                if *per_cell == 0 {
                    return Err(Error::InvalidConfig(
                        "instances_per_cell must be at least 1".into(),
                    ));
                }
                for &(lo, hi) in intervals {
                    if !(0.0..=1.0).contains(&lo) || !(0.0..=1.0).contains(&hi) || lo > hi {
                        return Err(Error::InvalidConfig(format!(
                            "bad probability band {lo}-{hi}"
                        )));
                    }
                }
                if sizes.contains(&0) {
                    return Err(Error::InvalidConfig("size 0 is not a graph".into()));
                }
            }
            InstanceSource::Gisp {
                count,
                intervals_per_instance,
                ..
            } => {
                if *count == 0 {
                    return Err(Error::InvalidConfig("count must be at least 1".into()));
                }
                if *intervals_per_instance == 0 {
                    return Err(Error::InvalidConfig(
                        "intervals_per_instance must be at least 1".into(),
                    ));
                }
                // Interval parameter ranges are enforced by the generator.
            }
        }
        Ok(())
    }
}

/// Parses the `key = value` format above. Unknown keys, duplicate keys, and
/// missing required keys are errors; `#` starts a comment.
pub fn parse_config(text: &str) -> Result<ExperimentConfig> {
    let mut entries: BTreeMap<&str, (usize, &str)> = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return Err(Error::Parse {
                line,
                msg: format!("expected key = value, got \"{content}\""),
            });
        };
        let key = key.trim();
        let value = value.trim();
        if entries.insert(key, (line, value)).is_some() {
            return Err(Error::Parse {
                line,
                msg: format!("duplicate key \"{key}\""),
            });
        }
    }

    let known = [
        "mode",
        "groups",
        "sizes",
        "instances_per_cell",
        "count",
        "intervals_per_instance",
        "k_max",
        "horizon",
        "max_duration",
        "methods",
        "seed",
        "time_limit_secs",
        "out_dir",
    ];
    for (&key, &(line, _)) in &entries {
        if !known.contains(&key) {
            return Err(Error::Parse {
                line,
                msg: format!("unknown key \"{key}\""),
            });
        }
    }

    let take = |key: &str| -> Result<(usize, &str)> {
        entries
            .get(key)
            .copied()
            .ok_or_else(|| Error::InvalidConfig(format!("missing required key \"{key}\"")))
    };
    let forbid = |key: &str, mode: &str| -> Result<()> {
        if let Some(&(line, _)) = entries.get(key) {
            return Err(Error::Parse {
                line,
                msg: format!("key \"{key}\" does not apply to mode {mode}"),
            });
        }
        Ok(())
    };

    let (mode_line, mode) = take("mode")?;
    let source = match mode {
        "er" => {
            for key in [
                "count",
                "intervals_per_instance",
                "k_max",
                "horizon",
                "max_duration",
            ] {
                forbid(key, "er")?;
            }
            let (line, bands) = take("groups")?;
            let intervals = bands
                .split(',')
                .map(|band| parse_band(band.trim(), line))
                .collect::<Result<Vec<_>>>()?;
            let (line, sizes) = take("sizes")?;
            let sizes = split_list(sizes)
                .map(|s| parse_num::<usize>(s, line, "size"))
                .collect::<Result<Vec<_>>>()?;
            let (line, per_cell) = take("instances_per_cell")?;
            InstanceSource::ErGroups {
                intervals,
                sizes,
                per_cell: parse_num(per_cell, line, "instances_per_cell")?,
            }
        }
        "gisp" => {
            for key in ["groups", "sizes", "instances_per_cell"] {
                forbid(key, "gisp")?;
            }
            let (line, count) = take("count")?;
            let count = parse_num(count, line, "count")?;
            let (line, k) = take("intervals_per_instance")?;
            let intervals_per_instance = parse_num(k, line, "intervals_per_instance")?;
            let (line, k_max) = take("k_max")?;
            let k_max = parse_num(k_max, line, "k_max")?;
            let (line, horizon) = take("horizon")?;
            let horizon = parse_num(horizon, line, "horizon")?;
            let (line, max_duration) = take("max_duration")?;
            let max_duration = parse_num(max_duration, line, "max_duration")?;
            InstanceSource::Gisp {
                count,
                intervals_per_instance,
                k_max,
                horizon,
                max_duration,
            }
        }
        other => {
            return Err(Error::Parse {
                line: mode_line,
                msg: format!("mode must be \"er\" or \"gisp\", got \"{other}\""),
            })
        }
    };

    let (_, methods) = take("methods")?;
    let methods = split_list(methods)
        .map(Method::parse)
        .collect::<Result<Vec<_>>>()?;
    let (line, seed) = take("seed")?;
    let seed = parse_num(seed, line, "seed")?;
    let time_limit = match entries.get("time_limit_secs") {
        Some(&(line, v)) => Duration::from_secs(parse_num(v, line, "time_limit_secs")?),
        None => Duration::from_secs(300),
    };
    let out_dir = entries
        .get("out_dir")
        .map(|&(_, v)| v.to_string())
        .unwrap_or_else(|| "bench-out".to_string());

    let cfg = ExperimentConfig {
        source,
        methods,
        seed,
        time_limit,
        out_dir,
    };
    cfg.validate()?;
    Ok(cfg)
}

fn split_list(s: &str) -> impl Iterator<Item = &str> {
    s.split(',').map(str::trim).filter(|t| !t.is_empty())
}

fn parse_band(s: &str, line: usize) -> Result<(f64, f64)> {
    let Some((lo, hi)) = s.split_once('-') else {
        return Err(Error::Parse {
            line,
            msg: format!("band \"{s}\" is not of the form lo-hi"),
        });
    };
    Ok((
        parse_num(lo.trim(), line, "band low end")?,
        parse_num(hi.trim(), line, "band high end")?,
    ))
}

fn parse_num<T: std::str::FromStr>(s: &str, line: usize, what: &str) -> Result<T> {
    s.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("cannot parse {what} from \"{s}\""),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const ER: &str = "\
# reduced replica
mode = er
groups = 0.72-0.87, 0.50-0.71, 0.37-0.49, 0.22-0.36
sizes = 10, 15, 20
instances_per_cell = 13
methods = dsatur, rlf, sli, gbsc
seed = 42
";

    #[test]
    fn parses_er_config() {
        let cfg = parse_config(ER).unwrap();
        assert_eq!(cfg.methods, Method::ALL.to_vec());
        assert_eq!(cfg.seed, 42);
        assert_eq!(cfg.time_limit, Duration::from_secs(300));
        assert_eq!(cfg.out_dir, "bench-out");
        let InstanceSource::ErGroups {
            intervals,
            sizes,
            per_cell,
        } = cfg.source
        else {
            panic!("wrong source");
        };
        assert_eq!(intervals.len(), 4);
        assert_eq!(intervals[0], (0.72, 0.87));
        assert_eq!(sizes, vec![10, 15, 20]);
        assert_eq!(per_cell, 13);
        assert_eq!(
            parse_config(ER).unwrap().group_names(),
            vec!["group1", "group2", "group3", "group4"]
        );
    }

    #[test]
    fn parses_gisp_config() {
        let text = "\
mode = gisp
count = 8
intervals_per_instance = 12
k_max = 3
horizon = 50
max_duration = 8
methods = dsatur, gbsc
seed = 7
time_limit_secs = 60
out_dir = scratch
";
        let cfg = parse_config(text).unwrap();
        assert_eq!(cfg.out_dir, "scratch");
        assert_eq!(cfg.time_limit, Duration::from_secs(60));
        assert_eq!(cfg.group_names(), vec!["q1", "q2", "q3", "q4"]);
        assert!(matches!(
            cfg.source,
            InstanceSource::Gisp {
                count: 8,
                intervals_per_instance: 12,
                k_max: 3,
                ..
            }
        ));
    }

    #[test]
    fn rejects_malformed_lines() {
        for (bad, needle) in [
            ("mode = er\njust words\n", "key = value"),
            ("mode = teleport\n", "mode must be"),
            (&format!("{ER}seed = 1\n"), "duplicate key"),
            (&format!("{ER}warp = 9\n"), "unknown key"),
            (&format!("{ER}count = 9\n"), "does not apply"),
        ] {
            let err = parse_config(bad).unwrap_err();
            assert!(err.to_string().contains(needle), "{bad:?} -> {err}");
        }
    }

    #[test]
    fn rejects_invalid_values() {
        let no_methods = ER.replace("methods = dsatur, rlf, sli, gbsc", "methods = ");
        assert!(parse_config(&no_methods).is_err());
        let dup = ER.replace("sli, gbsc", "sli, dsatur");
        assert!(parse_config(&dup).is_err());
        let empty_sizes = ER.replace("sizes = 10, 15, 20", "sizes = ");
        assert!(parse_config(&empty_sizes).is_err());
        let bad_band = ER.replace("0.72-0.87", "0.87-0.72");
        assert!(parse_config(&bad_band).is_err());
        let out_of_range = ER.replace("0.72-0.87", "0.72-1.87");
        assert!(parse_config(&out_of_range).is_err());
        let missing = ER.replace("seed = 42\n", "");
        assert!(parse_config(&missing).is_err());
    }
}
