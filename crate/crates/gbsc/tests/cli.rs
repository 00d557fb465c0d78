//! End-to-end tests of the command-line binary.

mod common;

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use gbsc::graph::{write_dimacs, Graph};

fn gbsc_cmd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gbsc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "command failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write_graph(dir: &Path, name: &str, g: &Graph) -> String {
    let path = dir.join(name);
    fs::write(&path, write_dimacs(g)).unwrap();
    path.to_str().unwrap().to_owned()
}

/// Parses "vertex color" lines followed by a "palette k" line.
fn parse_coloring(text: &str) -> (BTreeMap<usize, usize>, usize) {
    let mut colors = BTreeMap::new();
    let mut palette = None;
    for line in text.lines() {
        if let Some(rest) = line.strip_prefix("palette ") {
            palette = Some(rest.parse().unwrap());
        } else {
            let (v, c) = line.split_once(' ').unwrap();
            colors.insert(v.parse().unwrap(), c.parse().unwrap());
        }
    }
    (colors, palette.expect("palette line"))
}

fn assert_valid(g: &Graph, colors: &BTreeMap<usize, usize>, palette: usize) {
    assert_eq!(colors.len(), g.vertex_count());
    for (u, v) in g.edges() {
        assert_ne!(colors[&u], colors[&v], "edge ({u},{v}) monochromatic");
    }
    let distinct: std::collections::BTreeSet<usize> = colors.values().copied().collect();
    assert_eq!(distinct.len(), palette);
}

#[test]
fn haf_counts_perfect_matchings() {
    let dir = tempfile::tempdir().unwrap();
    // Two disjoint edges: exactly one perfect matching.
    let two = dir.path().join("two.txt");
    fs::write(&two, "0 1 0 0\n1 0 0 0\n0 0 0 1\n0 0 1 0\n").unwrap();
    assert_eq!(
        stdout(&gbsc_cmd(&["haf", "--input", two.to_str().unwrap()])).trim(),
        "1"
    );
    // K4 has three perfect matchings.
    let k4 = dir.path().join("k4.txt");
    fs::write(&k4, "0 1 1 1\n1 0 1 1\n1 1 0 1\n1 1 1 0\n").unwrap();
    assert_eq!(
        stdout(&gbsc_cmd(&["haf", "--input", k4.to_str().unwrap()])).trim(),
        "3"
    );
}

#[test]
fn encode_reports_the_analytic_single_band_scaling() {
    let dir = tempfile::tempdir().unwrap();
    let two = dir.path().join("two.txt");
    fs::write(&two, "0 1 0 0\n1 0 0 0\n0 0 0 1\n0 0 1 0\n").unwrap();
    let out = stdout(&gbsc_cmd(&[
        "encode",
        "--input",
        two.to_str().unwrap(),
        "--nbar",
        "2",
    ]));
    let mut fields = BTreeMap::new();
    for line in out.lines() {
        let (k, v) = line.split_once(' ').unwrap();
        fields.insert(k.to_owned(), v.to_owned());
    }
    assert_eq!(fields["modes"], "4");
    // All four singular values are 1, so 4 c²/(1−c²) = 2 gives c = 1/√3.
    let c: f64 = fields["scaling"].parse().unwrap();
    assert!((c - 1.0 / 3f64.sqrt()).abs() < 1e-9);
    let nbar: f64 = fields["mean_photons"].parse().unwrap();
    assert!((nbar - 2.0).abs() < 1e-6);
    assert_eq!(fields["lambdas"].split_whitespace().count(), 4);
    assert_eq!(fields["squeezing"].split_whitespace().count(), 4);
}

#[test]
fn sample_emits_one_subset_per_line() {
    let dir = tempfile::tempdir().unwrap();
    let c5 = write_graph(dir.path(), "c5.col", &common::cycle(5));
    let out = stdout(&gbsc_cmd(&[
        "sample",
        "--input",
        &c5,
        "--mode",
        "enumerate",
        "--nbar",
        "2",
        "--samples",
        "8",
        "--seed",
        "7",
    ]));
    let g = common::cycle(5);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 8);
    for line in lines {
        let vs: Vec<usize> = line.split(' ').map(|t| t.parse().unwrap()).collect();
        // Size-2 subsets with matching weight are exactly the edges.
        assert_eq!(vs.len(), 2);
        assert!(g.has_edge(vs[0], vs[1]));
    }
    // Same seed, same draw.
    let again = stdout(&gbsc_cmd(&[
        "sample",
        "--input",
        &c5,
        "--mode",
        "enumerate",
        "--nbar",
        "2",
        "--samples",
        "8",
        "--seed",
        "7",
    ]));
    assert_eq!(out, again);
}

#[test]
fn color_produces_valid_colorings_for_every_method() {
    let dir = tempfile::tempdir().unwrap();
    let g = common::petersen();
    let path = write_graph(dir.path(), "petersen.col", &g);
    for method in ["dsatur", "rlf", "sli", "gbsc"] {
        let out = stdout(&gbsc_cmd(&["color", "--input", &path, "--method", method]));
        let (colors, palette) = parse_coloring(&out);
        assert_valid(&g, &colors, palette);
        assert!((3..=4).contains(&palette), "{method} used {palette} colors");
    }
}

#[test]
fn color_trace_lines_go_to_stderr_only() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_graph(dir.path(), "c5.col", &common::cycle(5));
    let plain = gbsc_cmd(&["color", "--input", &path, "--method", "gbsc", "--seed", "3"]);
    let traced = gbsc_cmd(&[
        "color", "--input", &path, "--method", "gbsc", "--seed", "3", "--trace",
    ]);
    assert_eq!(stdout(&plain), stdout(&traced));
    let err = String::from_utf8(traced.stderr).unwrap();
    assert!(err.contains("round=0"), "no trace line in {err:?}");
    assert!(err.lines().all(|l| l.starts_with("round=")));
}

#[test]
fn trace_without_gbsc_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_graph(dir.path(), "c5.col", &common::cycle(5));
    let out = gbsc_cmd(&["color", "--input", &path, "--method", "dsatur", "--trace"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("gbsc"));
}

#[test]
fn exact_reports_chi_and_a_witness() {
    let dir = tempfile::tempdir().unwrap();
    let g = common::petersen();
    let path = write_graph(dir.path(), "petersen.col", &g);
    let out = stdout(&gbsc_cmd(&[
        "exact",
        "--input",
        &path,
        "--time-limit",
        "60",
    ]));
    assert!(out.lines().any(|l| l == "chi 3"));
    assert!(out.lines().any(|l| l == "timed_out false"));
    assert!(out.lines().any(|l| l.starts_with("nodes ")));
    assert!(out.lines().any(|l| l.starts_with("time_ms ")));
    let witness: String = out
        .lines()
        .skip_while(|l| !l.starts_with("timed_out"))
        .skip(1)
        .map(|l| format!("{l}\n"))
        .collect();
    let (colors, _) = parse_coloring(&format!("{witness}palette 3"));
    assert_valid(&g, &colors, 3);
}

#[test]
fn bench_writes_reports_resumes_and_reproduces() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("exp.cfg");
    fs::write(
        &cfg,
        "mode = er\ngroups = 0.3-0.5, 0.6-0.8\nsizes = 6,8\ninstances_per_cell = 2\n\
         methods = dsatur,rlf,sli,gbsc\nseed = 11\ntime_limit_secs = 60\n",
    )
    .unwrap();
    let out_a = dir.path().join("a");
    let out_b = dir.path().join("b");
    let run = |out: &Path, resume: bool| {
        let mut args = vec![
            "bench",
            "--config",
            cfg.to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
            "--workers",
            "2",
        ];
        if resume {
            args.push("--resume");
        }
        gbsc_cmd(&args)
    };
    stdout(&run(&out_a, false));
    for f in [
        "records.csv",
        "excess.csv",
        "excess.md",
        "wdl.csv",
        "wdl.md",
    ] {
        assert!(out_a.join(f).exists(), "missing {f}");
    }
    assert_eq!(fs::read_dir(out_a.join("instances")).unwrap().count(), 8);

    // Same config in a fresh directory: identical tables, records identical
    // once wall-time columns are dropped.
    stdout(&run(&out_b, false));
    for f in ["excess.csv", "excess.md", "wdl.csv", "wdl.md"] {
        assert_eq!(
            fs::read_to_string(out_a.join(f)).unwrap(),
            fs::read_to_string(out_b.join(f)).unwrap(),
            "{f} differs between reruns"
        );
    }
    // Record rows land in completion order, so compare them sorted.
    let sorted_rows = |path: &Path| -> Vec<String> {
        let text = strip_ms_columns(&fs::read_to_string(path).unwrap());
        let mut rows: Vec<String> = text.lines().map(str::to_owned).collect();
        rows.sort();
        rows
    };
    assert_eq!(
        sorted_rows(&out_a.join("records.csv")),
        sorted_rows(&out_b.join("records.csv"))
    );

    // Truncating the records and resuming refills exactly the missing rows.
    let full = fs::read_to_string(out_a.join("records.csv")).unwrap();
    let trimmed: Vec<&str> = full.lines().take(4).collect();
    fs::write(
        out_a.join("records.csv"),
        format!("{}\n", trimmed.join("\n")),
    )
    .unwrap();
    let resumed = run(&out_a, true);
    let progress = String::from_utf8_lossy(&resumed.stderr).to_string();
    stdout(&resumed);
    assert!(progress.contains("running 5 of 8 instances"), "{progress}");
    let refilled = fs::read_to_string(out_a.join("records.csv")).unwrap();
    let ids = |text: &str| -> Vec<String> {
        let mut ids: Vec<String> = text
            .lines()
            .skip(1)
            .map(|l| l.split(',').next().unwrap().to_owned())
            .collect();
        ids.sort();
        ids
    };
    assert_eq!(ids(&refilled), ids(&full));
    assert_eq!(
        fs::read_to_string(out_a.join("excess.csv")).unwrap(),
        fs::read_to_string(out_b.join("excess.csv")).unwrap()
    );
}

/// Drops the per-method wall-time columns from a records CSV.
fn strip_ms_columns(text: &str) -> String {
    let header: Vec<&str> = text.lines().next().unwrap().split(',').collect();
    let keep: Vec<usize> = header
        .iter()
        .enumerate()
        .filter_map(|(i, h)| (!h.ends_with("_ms")).then_some(i))
        .collect();
    let mut out = String::new();
    for line in text.lines() {
        let fields: Vec<&str> = line.split(',').collect();
        let kept: Vec<&str> = keep.iter().map(|&i| fields[i]).collect();
        out.push_str(&kept.join(","));
        out.push('\n');
    }
    out
}

#[test]
fn bench_rejects_a_broken_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    fs::write(&cfg, "mode = er\nbands = 0.1-0.2\n").unwrap();
    let out = gbsc_cmd(&[
        "bench",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        dir.path().join("out").to_str().unwrap(),
    ]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
}

#[test]
fn missing_input_file_fails_cleanly() {
    let out = gbsc_cmd(&["color", "--input", "/nonexistent.col", "--method", "dsatur"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
}
