//! Suite generation and the bounded-parallel instance runner.

use std::collections::BTreeSet;
use std::time::Instant;

use rand::Rng;

use super::{
    BenchInstance, ExperimentConfig, ExperimentRecord, InstanceSource, Method, MethodResult,
};
use crate::coloring::{dsatur, is_valid, rlf, sli};
use crate::error::{Error, Result};
use crate::exact::chromatic_exact;
use crate::graph::{erdos_renyi, group_interval_graph, random_group_interval_instance};
use crate::pipeline::{gbsc_color, GbscConfig};
use crate::rng::{rng_from_seed, split_seed};

/// Generates the configured instance list, deterministically in the master
/// seed. Edge-probability mode yields one group per band; interval mode
/// generates all conflict graphs first and then splits them into four
/// density quartiles ("q1" sparsest) of near-equal size.
pub fn generate_suite(cfg: &ExperimentConfig) -> Result<Vec<BenchInstance>> {
    cfg.validate()?;
    match &cfg.source {
        InstanceSource::ErGroups {
            intervals,
            sizes,
            per_cell,
        } => {
            let mut out = Vec::new();
            let mut global = 0u64;
            for (gi, &(lo, hi)) in intervals.iter().enumerate() {
                for &n in sizes {
                    for j in 0..*per_cell {
                        let seed = split_seed(cfg.seed, global);
                        global += 1;
                        let p = rng_from_seed(split_seed(seed, 0)).gen_range(lo..=hi);
                        let graph = erdos_renyi(n, p, split_seed(seed, 1))?;
                        out.push(BenchInstance {
                            id: format!("er-group{}-n{:03}-i{:03}", gi + 1, n, j),
                            group: format!("group{}", gi + 1),
                            n,
                            param: p,
                            seed,
                            graph,
                        });
                    }
                }
            }
            Ok(out)
        }
        InstanceSource::Gisp {
            count,
            intervals_per_instance,
            k_max,
            horizon,
            max_duration,
        } => {
            let mut drawn = Vec::with_capacity(*count);
            for i in 0..*count {
                let seed = split_seed(cfg.seed, i as u64);
                let inst = random_group_interval_instance(
                    *intervals_per_instance,
                    *k_max,
                    *horizon,
                    *max_duration,
                    split_seed(seed, 1),
                )?;
                let graph = group_interval_graph(&inst);
                let density = if graph.vertex_count() <= 1 {
                    0.0
                } else {
                    graph.density()?
                };
                drawn.push((i, seed, density, graph));
            }
            // Quartiles by realized density; ties broken by generation
            // index so the split is deterministic.
            let mut order: Vec<usize> = (0..drawn.len()).collect();
            order.sort_by(|&a, &b| {
                drawn[a]
                    .2
                    .total_cmp(&drawn[b].2)
                    .then(drawn[a].0.cmp(&drawn[b].0))
            });
            let base = count / 4;
            let rem = count % 4;
            let mut out = Vec::with_capacity(*count);
            let mut cursor = 0usize;
            for q in 0..4usize {
                let len = base + usize::from(q < rem);
                for &oi in &order[cursor..cursor + len] {
                    let (i, seed, density, ref graph) = drawn[oi];
                    out.push(BenchInstance {
                        id: format!("gisp-q{}-i{:03}", q + 1, i),
                        group: format!("q{}", q + 1),
                        n: graph.vertex_count(),
                        param: density,
                        seed,
                        graph: graph.clone(),
                    });
                }
                cursor += len;
            }
            Ok(out)
        }
    }
}

/// Solves one instance: exact chromatic number under the configured time
/// limit, then every configured method. Invalid colorings and palettes
/// below an exactly-known chi abort the run; they would poison every
/// aggregate downstream.
pub fn solve_instance(inst: &BenchInstance, cfg: &ExperimentConfig) -> Result<ExperimentRecord> {
    let exact = chromatic_exact(&inst.graph, cfg.time_limit);
    let mut results = Vec::with_capacity(cfg.methods.len());
    for (mi, &method) in cfg.methods.iter().enumerate() {
        let started = Instant::now();
        let coloring = match method {
            Method::Dsatur => dsatur(&inst.graph),
            Method::Rlf => rlf(&inst.graph),
            Method::Sli => sli(&inst.graph),
            Method::Gbsc => {
                let gcfg = GbscConfig::new(split_seed(inst.seed, 100 + mi as u64));
                gbsc_color(&inst.graph, &gcfg)?.0
            }
        };
        let millis = started.elapsed().as_millis() as u64;
        if !coloring.is_total() || !is_valid(&inst.graph, &coloring) {
            return Err(Error::BenchInvariant(format!(
                "{method} produced an invalid coloring on {}",
                inst.id
            )));
        }
        let palette = coloring.palette_size();
        let excess = if exact.timed_out {
            None
        } else {
            let e = palette as i64 - exact.chi as i64;
            if e < 0 {
                return Err(Error::BenchInvariant(format!(
                    "{method} used {palette} colors on {} but the exact chromatic number is {}",
                    inst.id, exact.chi
                )));
            }
            Some(e)
        };
        results.push(MethodResult {
            method,
            palette,
            excess,
            millis,
        });
    }
    Ok(ExperimentRecord {
        id: inst.id.clone(),
        group: inst.group.clone(),
        n: inst.n,
        param: inst.param,
        seed: inst.seed,
        chi: exact.chi,
        timed_out: exact.timed_out,
        results,
    })
}

/// Runs every instance not in `completed` on a pool of `workers` threads,
/// invoking `on_record` on the caller's thread as each record lands (for
/// incremental persistence). Returns the new records sorted by id; apart
/// from wall times they are deterministic in the instance seeds.
pub fn run_suite(
    instances: &[BenchInstance],
    cfg: &ExperimentConfig,
    workers: usize,
    completed: &BTreeSet<String>,
    mut on_record: impl FnMut(&ExperimentRecord) -> Result<()>,
) -> Result<Vec<ExperimentRecord>> {
    cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::InvalidConfig(format!("cannot build worker pool: {e}")))?;
    let pending: Vec<&BenchInstance> = instances
        .iter()
        .filter(|inst| !completed.contains(&inst.id))
        .collect();

    let (tx, rx) = std::sync::mpsc::channel::<Result<ExperimentRecord>>();
    let mut records = Vec::with_capacity(pending.len());
    let mut first_err: Option<Error> = None;
    pool.in_place_scope(|scope| {
        for &inst in &pending {
            let tx = tx.clone();
            scope.spawn(move |_| {
                let _ = tx.send(solve_instance(inst, cfg));
            });
        }
        drop(tx);
        for outcome in rx {
            match outcome {
                Ok(rec) if first_err.is_none() => {
                    if let Err(e) = on_record(&rec) {
                        first_err = Some(e);
                    } else {
                        records.push(rec);
                    }
                }
                Err(e) if first_err.is_none() => first_err = Some(e),
                _ => {}
            }
        }
    });
    if let Some(e) = first_err {
        return Err(e);
    }
    records.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(records)
}

/// Worker count resolution: the environment variable wins over the flag,
/// which wins over the machine's available parallelism.
pub fn resolve_workers(flag: Option<usize>, env: Option<&str>) -> Result<usize> {
    let chosen = match env {
        Some(text) => Some(text.parse::<usize>().map_err(|_| {
            Error::InvalidConfig(format!("worker override \"{text}\" is not a number"))
        })?),
        None => flag,
    };
    let workers = match chosen {
        Some(w) => w,
        None => std::thread::available_parallelism()
            .map(usize::from)
            .unwrap_or(1),
    };
    if workers == 0 {
        return Err(Error::InvalidConfig(
            "worker count must be at least 1".into(),
        ));
    }
    Ok(workers)
}

/// Header line of the record CSV for a given method list.
pub fn records_header(methods: &[Method]) -> String {
    let mut cols = vec![
        "id".to_string(),
        "group".to_string(),
        "n".to_string(),
        "param".to_string(),
        "seed".to_string(),
        "chi".to_string(),
        "timed_out".to_string(),
    ];
    for m in methods {
        cols.push(format!("{m}_palette"));
        cols.push(format!("{m}_excess"));
        cols.push(format!("{m}_ms"));
    }
    cols.join(",")
}

/// One CSV row; the excess cell is empty when the exact solve timed out.
pub fn record_row(rec: &ExperimentRecord) -> String {
    let mut cols = vec![
        rec.id.clone(),
        rec.group.clone(),
        rec.n.to_string(),
        format!("{:.6}", rec.param),
        rec.seed.to_string(),
        rec.chi.to_string(),
        rec.timed_out.to_string(),
    ];
    for r in &rec.results {
        cols.push(r.palette.to_string());
        cols.push(r.excess.map(|e| e.to_string()).unwrap_or_default());
        cols.push(r.millis.to_string());
    }
    cols.join(",")
}

/// Parses a record CSV produced by [`records_header`]/[`record_row`],
/// verifying the header matches the expected method list (resuming under a
/// different config would silently mix incompatible records).
pub fn parse_records(text: &str, methods: &[Method]) -> Result<Vec<ExperimentRecord>> {
    let mut lines = text.lines().enumerate();
    let Some((_, header)) = lines.next() else {
        return Err(Error::Parse {
            line: 1,
            msg: "record file is empty".into(),
        });
    };
    if header != records_header(methods) {
        return Err(Error::Parse {
            line: 1,
            msg: "record header does not match the configured methods".into(),
        });
    }
    let mut out = Vec::new();
    for (idx, raw) in lines {
        let line = idx + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = raw.split(',').collect();
        let expected = 7 + 3 * methods.len();
        if fields.len() != expected {
            return Err(Error::Parse {
                line,
                msg: format!("expected {expected} fields, got {}", fields.len()),
            });
        }
        let num = |i: usize, what: &str| -> Result<u64> {
            fields[i].parse().map_err(|_| Error::Parse {
                line,
                msg: format!("cannot parse {what} from \"{}\"", fields[i]),
            })
        };
        let timed_out = match fields[6] {
            "true" => true,
            "false" => false,
            other => {
                return Err(Error::Parse {
                    line,
                    msg: format!("timed_out must be true or false, got \"{other}\""),
                })
            }
        };
        let param: f64 = fields[3].parse().map_err(|_| Error::Parse {
            line,
            msg: format!("cannot parse param from \"{}\"", fields[3]),
        })?;
        let mut results = Vec::with_capacity(methods.len());
        for (mi, &method) in methods.iter().enumerate() {
            let base = 7 + 3 * mi;
            let palette = num(base, "palette")? as usize;
            let excess = if fields[base + 1].is_empty() {
                None
            } else {
                Some(fields[base + 1].parse::<i64>().map_err(|_| Error::Parse {
                    line,
                    msg: format!("cannot parse excess from \"{}\"", fields[base + 1]),
                })?)
            };
            let millis = num(base + 2, "milliseconds")?;
            results.push(MethodResult {
                method,
                palette,
                excess,
                millis,
            });
        }
        out.push(ExperimentRecord {
            id: fields[0].to_string(),
            group: fields[1].to_string(),
            n: num(2, "n")? as usize,
            param,
            seed: num(4, "seed")?,
            chi: num(5, "chi")? as usize,
            timed_out,
            results,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::parse_config;
    use crate::graph::{write_dimacs, Graph};
    use std::time::Duration;

    fn tiny_er_config() -> ExperimentConfig {
        ExperimentConfig {
            source: InstanceSource::ErGroups {
                intervals: vec![(0.6, 0.8), (0.2, 0.4)],
                sizes: vec![8, 10],
                per_cell: 2,
            },
            methods: Method::ALL.to_vec(),
            seed: 11,
            time_limit: Duration::from_secs(300),
            out_dir: "bench-out".into(),
        }
    }

    #[test]
    fn er_suite_shape_and_params() {
        let full = parse_config(
            "mode = er\ngroups = 0.72-0.87, 0.50-0.71, 0.37-0.49, 0.22-0.36\n\
             sizes = 10, 15, 20\ninstances_per_cell = 13\n\
             methods = dsatur, rlf, sli, gbsc\nseed = 42\n",
        )
        .unwrap();
        let suite = generate_suite(&full).unwrap();
        assert_eq!(suite.len(), 4 * 3 * 13);
        let bands = [(0.72, 0.87), (0.50, 0.71), (0.37, 0.49), (0.22, 0.36)];
        for inst in &suite {
            let gi: usize = inst.group["group".len()..].parse().unwrap();
            let (lo, hi) = bands[gi - 1];
            assert!(inst.param >= lo && inst.param <= hi, "{}", inst.id);
            assert!([10, 15, 20].contains(&inst.n));
        }
        let ids: BTreeSet<&String> = suite.iter().map(|i| &i.id).collect();
        assert_eq!(ids.len(), suite.len(), "duplicate ids");
    }

    #[test]
    fn single_cell_yields_one_instance() {
        let cfg = ExperimentConfig {
            source: InstanceSource::ErGroups {
                intervals: vec![(0.5, 0.5)],
                sizes: vec![6],
                per_cell: 1,
            },
            ..tiny_er_config()
        };
        let suite = generate_suite(&cfg).unwrap();
        assert_eq!(suite.len(), 1);
        assert!((suite[0].param - 0.5).abs() < 1e-12);
    }

    #[test]
    fn generation_is_deterministic_including_files() {
        let cfg = tiny_er_config();
        let a = generate_suite(&cfg).unwrap();
        let b = generate_suite(&cfg).unwrap();
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.id, y.id);
            assert_eq!(write_dimacs(&x.graph), write_dimacs(&y.graph));
        }
    }

    #[test]
    fn gisp_quartiles_sort_by_density() {
        let cfg = ExperimentConfig {
            source: InstanceSource::Gisp {
                count: 10,
                intervals_per_instance: 12,
                k_max: 3,
                horizon: 60.0,
                max_duration: 6.0,
            },
            ..tiny_er_config()
        };
        let suite = generate_suite(&cfg).unwrap();
        assert_eq!(suite.len(), 10);
        // 10 = 3 + 3 + 2 + 2 across quartiles.
        let counts: Vec<usize> = (1..=4)
            .map(|q| suite.iter().filter(|i| i.group == format!("q{q}")).count())
            .collect();
        assert_eq!(counts, vec![3, 3, 2, 2]);
        for w in suite.windows(2) {
            if w[0].group == w[1].group {
                continue;
            }
            assert!(w[0].param <= w[1].param, "{} then {}", w[0].id, w[1].id);
        }
        let max_q1 = suite
            .iter()
            .filter(|i| i.group == "q1")
            .map(|i| i.param)
            .fold(0.0, f64::max);
        let min_q4 = suite
            .iter()
            .filter(|i| i.group == "q4")
            .map(|i| i.param)
            .fold(1.0, f64::min);
        assert!(max_q1 <= min_q4);
    }

    #[test]
    fn complete_graph_record_is_all_optimal() {
        let mut edges = Vec::new();
        for u in 0..5 {
            for v in (u + 1)..5 {
                edges.push((u, v));
            }
        }
        let inst = BenchInstance {
            id: "k5".into(),
            group: "group1".into(),
            n: 5,
            param: 1.0,
            seed: 3,
            graph: Graph::from_edges(5, &edges).unwrap(),
        };
        let rec = solve_instance(&inst, &tiny_er_config()).unwrap();
        assert_eq!(rec.chi, 5);
        assert!(!rec.timed_out);
        for r in &rec.results {
            assert_eq!(r.palette, 5, "{}", r.method);
            assert_eq!(r.excess, Some(0));
        }
    }

    #[test]
    fn run_suite_resumes_and_reports_incrementally() {
        let cfg = ExperimentConfig {
            source: InstanceSource::ErGroups {
                intervals: vec![(0.4, 0.6)],
                sizes: vec![8],
                per_cell: 3,
            },
            methods: vec![Method::Dsatur],
            ..tiny_er_config()
        };
        let suite = generate_suite(&cfg).unwrap();
        let mut seen = Vec::new();
        let all = run_suite(&suite, &cfg, 2, &BTreeSet::new(), |r| {
            seen.push(r.id.clone());
            Ok(())
        })
        .unwrap();
        assert_eq!(all.len(), 3);
        assert_eq!(seen.len(), 3);
        for r in &all {
            assert!(r.results[0].excess.unwrap() >= 0);
        }
        let completed: BTreeSet<String> = all.iter().map(|r| r.id.clone()).collect();
        let rest = run_suite(&suite, &cfg, 2, &completed, |_| Ok(())).unwrap();
        assert!(rest.is_empty());
        let partial: BTreeSet<String> = completed.iter().take(1).cloned().collect();
        let rest = run_suite(&suite, &cfg, 2, &partial, |_| Ok(())).unwrap();
        assert_eq!(rest.len(), 2);
    }

    #[test]
    fn reruns_match_modulo_wall_time() {
        let cfg = ExperimentConfig {
            source: InstanceSource::ErGroups {
                intervals: vec![(0.3, 0.7)],
                sizes: vec![9],
                per_cell: 4,
            },
            ..tiny_er_config()
        };
        let suite = generate_suite(&cfg).unwrap();
        let a = run_suite(&suite, &cfg, 4, &BTreeSet::new(), |_| Ok(())).unwrap();
        let b = run_suite(&suite, &cfg, 4, &BTreeSet::new(), |_| Ok(())).unwrap();
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.id, y.id);
            assert_eq!(x.chi, y.chi);
            assert_eq!(x.timed_out, y.timed_out);
            for (rx, ry) in x.results.iter().zip(&y.results) {
                assert_eq!(rx.palette, ry.palette);
                assert_eq!(rx.excess, ry.excess);
            }
        }
    }

    #[test]
    fn records_round_trip_through_csv() {
        let methods = vec![Method::Dsatur, Method::Gbsc];
        let rec = ExperimentRecord {
            id: "er-group1-n008-i000".into(),
            group: "group1".into(),
            n: 8,
            param: 0.51,
            seed: 99,
            chi: 4,
            timed_out: false,
            results: vec![
                MethodResult {
                    method: Method::Dsatur,
                    palette: 5,
                    excess: Some(1),
                    millis: 2,
                },
                MethodResult {
                    method: Method::Gbsc,
                    palette: 4,
                    excess: Some(0),
                    millis: 17,
                },
            ],
        };
        let timeout_rec = ExperimentRecord {
            chi: 6,
            timed_out: true,
            results: rec
                .results
                .iter()
                .map(|r| MethodResult {
                    excess: None,
                    ..r.clone()
                })
                .collect(),
            id: "er-group1-n008-i001".into(),
            ..rec.clone()
        };
        let text = format!(
            "{}\n{}\n{}\n",
            records_header(&methods),
            record_row(&rec),
            record_row(&timeout_rec)
        );
        let parsed = parse_records(&text, &methods).unwrap();
        assert_eq!(parsed.len(), 2);
        assert_eq!(parsed[0], rec);
        assert_eq!(parsed[1], timeout_rec);
        assert!(parse_records(&text, &[Method::Dsatur]).is_err());
        assert!(parse_records("", &methods).is_err());
    }

    #[test]
    fn worker_resolution_prefers_env() {
        assert_eq!(resolve_workers(Some(3), Some("5")).unwrap(), 5);
        assert_eq!(resolve_workers(Some(3), None).unwrap(), 3);
        assert!(resolve_workers(None, None).unwrap() >= 1);
        assert!(resolve_workers(Some(0), None).is_err());
        assert!(resolve_workers(None, Some("many")).is_err());
    }
}
