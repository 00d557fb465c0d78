//! Command-line front end: matrix debugging (`haf`, `encode`), subset
//! sampling, the four coloring methods, the exact solver, and the
//! benchmark harness.

use std::collections::BTreeSet;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use gbsc::bench::{
    excess_csv, excess_markdown, excess_table, generate_suite, parse_config, parse_records,
    record_row, records_header, resolve_workers, run_suite, wdl_csv, wdl_markdown, wdl_table,
    Method,
};
use gbsc::coloring::{dsatur, rlf, sli, Coloring};
use gbsc::exact::chromatic_exact;
use gbsc::graph::{read_dimacs, write_dimacs, Graph};
use gbsc::math::{encode_graph, hafnian, SymMatrix};
use gbsc::pipeline::{gbsc_color, GbscConfig};
use gbsc::sampler::{sample, SamplerConfig, SamplerMode};
use gbsc::{Error, Result};

/// Worker-count override for `bench`; takes precedence over `--workers`.
const WORKERS_ENV: &str = "GBSC_BENCH_WORKERS";

#[derive(Parser)]
#[command(
    name = "gbsc",
    version,
    about = "Graph coloring via hafnian-weighted subgraph sampling"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    /// Exact draws from the fully tabulated distribution (small graphs).
    Enumerate,
    /// Metropolis chain over fixed-size subsets.
    Mcmc,
    /// Uniform subsets of the target size, no weighting.
    Uniform,
}

impl From<ModeArg> for SamplerMode {
    fn from(m: ModeArg) -> SamplerMode {
        match m {
            ModeArg::Enumerate => SamplerMode::Enumerate,
            ModeArg::Mcmc => SamplerMode::Mcmc,
            ModeArg::Uniform => SamplerMode::Uniform,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compute the hafnian of a symmetric matrix.
    Haf {
        /// Matrix file: one row per line, entries whitespace-separated.
        #[arg(long)]
        input: PathBuf,
    },
    /// Show the photonic encoding of a graph: spectrum, scaling, squeezing.
    Encode {
        /// 0/1 adjacency matrix file: one row per line.
        #[arg(long)]
        input: PathBuf,
        /// Target mean photon number.
        #[arg(long)]
        nbar: f64,
    },
    /// Draw vertex subsets weighted by squared matching counts.
    Sample {
        /// Graph in DIMACS format.
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = ModeArg::Mcmc)]
        mode: ModeArg,
        /// Target subset size (mean photon number).
        #[arg(long)]
        nbar: usize,
        #[arg(long, default_value_t = 10)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Color a graph; prints one "vertex color" line per vertex, then the
    /// palette size.
    Color {
        /// Graph in DIMACS format.
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_parser = Method::parse)]
        method: Method,
        /// Seed for the sampling pipeline (gbsc only).
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Print one line per sampling round to stderr (gbsc only).
        #[arg(long)]
        trace: bool,
    },
    /// Compute the exact chromatic number by branch-and-bound.
    Exact {
        /// Graph in DIMACS format.
        #[arg(long)]
        input: PathBuf,
        /// Time budget in seconds; on expiry the best-known bound is
        /// reported and flagged.
        #[arg(long, default_value_t = 300)]
        time_limit: u64,
    },
    /// Run a benchmark suite from a config file and write report tables.
    Bench {
        /// Key=value experiment description.
        #[arg(long)]
        config: PathBuf,
        /// Output directory; overrides the config's out_dir.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Parallel instance solves; GBSC_BENCH_WORKERS overrides, default
        /// is the number of CPUs.
        #[arg(long)]
        workers: Option<usize>,
        /// Skip instances already present in records.csv.
        #[arg(long)]
        resume: bool,
    },
}

fn main() -> ExitCode {
    // Restore the default SIGPIPE disposition so piping into `head` ends
    // the process quietly instead of panicking on a closed stdout.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn run(cmd: Command) -> Result<()> {
    match cmd {
        Command::Haf { input } => {
            let a = read_matrix(&input)?;
            println!("{}", hafnian(&a)?);
            Ok(())
        }
        Command::Encode { input, nbar } => {
            let g = graph_from_matrix(&read_matrix(&input)?)?;
            let enc = encode_graph(&g, nbar)?;
            println!("modes {}", enc.modes());
            println!("scaling {}", enc.scaling());
            println!("mean_photons {}", enc.mean_photons());
            println!("lambdas {}", join_f64(enc.lambdas()));
            println!("squeezing {}", join_f64(enc.squeezing()));
            Ok(())
        }
        Command::Sample {
            input,
            mode,
            nbar,
            samples,
            seed,
        } => {
            let g = load_graph(&input)?;
            let cfg = SamplerConfig::new(mode.into(), samples, nbar, seed);
            let run = sample(&g, &cfg)?;
            if run.fell_back_to_uniform {
                eprintln!("warning: no positive-weight subsets; drew uniformly");
            }
            for p in &run.patterns {
                println!("{}", join_usize(p.subset()));
            }
            Ok(())
        }
        Command::Color {
            input,
            method,
            seed,
            trace,
        } => {
            if trace && method != Method::Gbsc {
                return Err(Error::InvalidConfig(
                    "--trace only applies to --method gbsc".into(),
                ));
            }
            let g = load_graph(&input)?;
            let coloring = match method {
                Method::Dsatur => dsatur(&g),
                Method::Rlf => rlf(&g),
                Method::Sli => sli(&g),
                Method::Gbsc => {
                    let (coloring, traces) = gbsc_color(&g, &GbscConfig::new(seed))?;
                    if trace {
                        for t in &traces {
                            eprintln!(
                                "round={} k={} residual={} candidates={} colors={} chosen={}",
                                t.round,
                                t.k,
                                t.residual,
                                t.candidates,
                                t.colors_consumed,
                                join_usize(&t.chosen)
                            );
                        }
                    }
                    coloring
                }
            };
            print_coloring(&coloring);
            println!("palette {}", coloring.palette_size());
            Ok(())
        }
        Command::Exact { input, time_limit } => {
            let g = load_graph(&input)?;
            let started = std::time::Instant::now();
            let res = chromatic_exact(&g, Duration::from_secs(time_limit));
            println!("chi {}", res.chi);
            println!("nodes {}", res.nodes_explored);
            println!("time_ms {}", started.elapsed().as_millis());
            println!("timed_out {}", res.timed_out);
            print_coloring(&res.witness);
            Ok(())
        }
        Command::Bench {
            config,
            out,
            workers,
            resume,
        } => run_bench(&config, out, workers, resume),
    }
}

fn run_bench(
    config: &Path,
    out: Option<PathBuf>,
    workers: Option<usize>,
    resume: bool,
) -> Result<()> {
    let cfg = parse_config(&fs::read_to_string(config)?)?;
    let out = out.unwrap_or_else(|| PathBuf::from(&cfg.out_dir));
    let instance_dir = out.join("instances");
    fs::create_dir_all(&instance_dir)?;

    let suite = generate_suite(&cfg)?;
    for inst in &suite {
        fs::write(
            instance_dir.join(format!("{}.col", inst.id)),
            write_dimacs(&inst.graph),
        )?;
    }

    let records_path = out.join("records.csv");
    let mut prior = Vec::new();
    let mut records_file;
    if resume && records_path.exists() {
        prior = parse_records(&fs::read_to_string(&records_path)?, &cfg.methods)?;
        records_file = fs::OpenOptions::new().append(true).open(&records_path)?;
    } else {
        records_file = fs::File::create(&records_path)?;
        writeln!(records_file, "{}", records_header(&cfg.methods))?;
    }
    let completed: BTreeSet<String> = prior.iter().map(|r| r.id.clone()).collect();

    let env = std::env::var(WORKERS_ENV).ok();
    let workers = resolve_workers(workers, env.as_deref())?;
    eprintln!(
        "running {} of {} instances on {} workers",
        suite.len() - completed.len(),
        suite.len(),
        workers
    );
    let mut done = completed.len();
    let fresh = run_suite(&suite, &cfg, workers, &completed, |rec| {
        writeln!(records_file, "{}", record_row(rec))?;
        records_file.flush()?;
        done += 1;
        let flag = if rec.timed_out { " (timed out)" } else { "" };
        eprintln!("[{done}/{}] {} chi={}{flag}", suite.len(), rec.id, rec.chi);
        Ok(())
    })?;

    let mut records = prior;
    records.extend(fresh);
    records.sort_by(|a, b| a.id.cmp(&b.id));

    let excess = excess_table(&records, &cfg.methods)?;
    fs::write(out.join("excess.csv"), excess_csv(&excess))?;
    fs::write(out.join("excess.md"), excess_markdown(&excess))?;
    println!("{}", excess_markdown(&excess));
    if cfg.methods.contains(&Method::Gbsc) && cfg.methods.len() > 1 {
        let wdl = wdl_table(&excess)?;
        fs::write(out.join("wdl.csv"), wdl_csv(&wdl))?;
        fs::write(out.join("wdl.md"), wdl_markdown(&wdl))?;
        println!("{}", wdl_markdown(&wdl));
    } else {
        eprintln!("skipping win-draw-loss tables: no baseline to compare gbsc against");
    }
    eprintln!("reports written to {}", out.display());
    Ok(())
}

fn load_graph(path: &Path) -> Result<Graph> {
    read_dimacs(&fs::read_to_string(path)?)
}

fn read_matrix(path: &Path) -> Result<SymMatrix> {
    parse_matrix(&fs::read_to_string(path)?)
}

/// Parses one matrix row per nonempty line, entries whitespace-separated.
fn parse_matrix(text: &str) -> Result<SymMatrix> {
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let row = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<f64>().map_err(|_| Error::Parse {
                    line: i + 1,
                    msg: format!("not a number: \"{tok}\""),
                })
            })
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    SymMatrix::from_rows(&rows)
}

/// Interprets a 0/1 symmetric matrix with a zero diagonal as a graph.
fn graph_from_matrix(m: &SymMatrix) -> Result<Graph> {
    let n = m.dim();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i..n {
            let v = m.get(i, j);
            if v != 0.0 && v != 1.0 {
                return Err(Error::InvalidConfig(format!(
                    "adjacency entry ({i},{j}) must be 0 or 1, got {v}"
                )));
            }
            if v == 1.0 {
                if i == j {
                    return Err(Error::SelfLoop(i));
                }
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, &edges)
}

fn print_coloring(coloring: &Coloring) {
    for v in 0..coloring.len() {
        let c = coloring
            .color_of(v)
            .expect("solvers return total colorings");
        println!("{v} {c}");
    }
}

fn join_usize(xs: &[usize]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    parts.join(" ")
}

fn join_f64(xs: &[f64]) -> String {
    let parts: Vec<String> = xs.iter().map(|x| format!("{x:.9}")).collect();
    parts.join(" ")
}
