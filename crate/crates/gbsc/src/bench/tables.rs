//! Aggregation: excess-color means grouped by (group, chromatic number) and
//! the win-draw-loss tally against each baseline.
//!
//! Means are kept as exact integer sums next to their sample counts, so
//! every comparison (best-in-row marks, win/draw/loss) is exact and the
//! rendered tables are reproducible byte for byte.

use super::{ExperimentRecord, Method};
use crate::error::{Error, Result};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowKind {
    /// All records in one group sharing one exact chromatic number.
    PerChi,
    /// Instance-weighted average over a group's per-chi rows.
    GroupAverage,
    /// Instance-weighted average over everything.
    Overall,
}

/// One row of the excess table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExcessRow {
    pub kind: RowKind,
    pub group: String,
    /// Chromatic number for per-chi rows, `None` for aggregate rows.
    pub chi: Option<usize>,
    /// Exactly solved instances contributing to the means.
    pub nsamples: usize,
    /// Timed-out instances excluded from the means (aggregate rows only;
    /// per-chi rows never contain them).
    pub timeouts: usize,
    /// Total excess per method, parallel to the table's method list.
    pub sums: Vec<i64>,
    /// Indices of the methods achieving the row minimum.
    pub best: Vec<usize>,
}

impl ExcessRow {
    /// Mean excess for method index `mi`; `None` when no instance counted.
    pub fn mean(&self, mi: usize) -> Option<f64> {
        (self.nsamples > 0).then(|| self.sums[mi] as f64 / self.nsamples as f64)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExcessTable {
    pub methods: Vec<Method>,
    pub rows: Vec<ExcessRow>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WdlCell {
    pub wins: usize,
    pub draws: usize,
    pub losses: usize,
}

/// One group's comparisons (plus an overall sum row at the end).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WdlRow {
    pub group: String,
    /// Per-chi rows compared; every cell's counts sum to this.
    pub rows_compared: usize,
    /// Parallel to the table's baseline list.
    pub cells: Vec<WdlCell>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WdlTable {
    pub baselines: Vec<Method>,
    pub rows: Vec<WdlRow>,
}

/// Builds the excess table: one row per (group, chi) over exactly solved
/// records, then an instance-weighted average row per group, then one
/// overall row. Timed-out records never enter a mean; they are counted in
/// their group's average row. Row groups follow lexicographic group order,
/// chi ascending within a group.
pub fn excess_table(records: &[ExperimentRecord], methods: &[Method]) -> Result<ExcessTable> {
    if records.is_empty() {
        return Err(Error::InvalidConfig(
            "cannot tabulate an empty record list".into(),
        ));
    }
    let m = methods.len();
    for rec in records {
        if rec.results.len() != m || rec.results.iter().zip(methods).any(|(r, &w)| r.method != w) {
            return Err(Error::InvalidConfig(format!(
                "record {} does not carry the configured methods",
                rec.id
            )));
        }
    }

    // (group, chi) -> (nsamples, sums); group -> timeouts.
    let mut cells: BTreeMap<(String, usize), (usize, Vec<i64>)> = BTreeMap::new();
    let mut timeouts: BTreeMap<String, usize> = BTreeMap::new();
    for rec in records {
        if rec.timed_out {
            *timeouts.entry(rec.group.clone()).or_default() += 1;
            continue;
        }
        let entry = cells
            .entry((rec.group.clone(), rec.chi))
            .or_insert_with(|| (0, vec![0; m]));
        entry.0 += 1;
        for (mi, r) in rec.results.iter().enumerate() {
            let excess = r.excess.ok_or_else(|| {
                Error::BenchInvariant(format!(
                    "record {} is not timed out but has no excess for {}",
                    rec.id, r.method
                ))
            })?;
            if excess < 0 {
                return Err(Error::BenchInvariant(format!(
                    "record {} reports negative excess for {}",
                    rec.id, r.method
                )));
            }
            entry.1[mi] += excess;
        }
    }

    let groups: Vec<String> = {
        let mut g: Vec<String> = records.iter().map(|r| r.group.clone()).collect();
        g.sort();
        g.dedup();
        g
    };

    let mut rows = Vec::new();
    let mut total = ExcessRow {
        kind: RowKind::Overall,
        group: "overall".into(),
        chi: None,
        nsamples: 0,
        timeouts: 0,
        sums: vec![0; m],
        best: Vec::new(),
    };
    for group in &groups {
        let mut avg = ExcessRow {
            kind: RowKind::GroupAverage,
            group: group.clone(),
            chi: None,
            nsamples: 0,
            timeouts: timeouts.get(group).copied().unwrap_or(0),
            sums: vec![0; m],
            best: Vec::new(),
        };
        for ((g, chi), (nsamples, sums)) in cells.range((group.clone(), 0)..) {
            if g != group {
                break;
            }
            avg.nsamples += nsamples;
            for (a, s) in avg.sums.iter_mut().zip(sums) {
                *a += s;
            }
            rows.push(ExcessRow {
                kind: RowKind::PerChi,
                group: group.clone(),
                chi: Some(*chi),
                nsamples: *nsamples,
                timeouts: 0,
                sums: sums.clone(),
                best: best_indices(sums),
            });
        }
        total.nsamples += avg.nsamples;
        total.timeouts += avg.timeouts;
        for (t, s) in total.sums.iter_mut().zip(&avg.sums) {
            *t += s;
        }
        avg.best = if avg.nsamples > 0 {
            best_indices(&avg.sums)
        } else {
            Vec::new()
        };
        rows.push(avg);
    }
    total.best = if total.nsamples > 0 {
        best_indices(&total.sums)
    } else {
        Vec::new()
    };
    rows.push(total);
    Ok(ExcessTable {
        methods: methods.to_vec(),
        rows,
    })
}

fn best_indices(sums: &[i64]) -> Vec<usize> {
    let min = sums.iter().copied().min().expect("at least one method");
    sums.iter()
        .enumerate()
        .filter_map(|(i, &s)| (s == min).then_some(i))
        .collect()
}

/// Win-draw-loss against every non-gbsc method: one comparison per per-chi
/// row of the excess table (sums compared exactly; sample counts per row
/// are equal, so comparing sums compares means), one table row per group,
/// plus an overall row that is the column-wise sum.
pub fn wdl_table(table: &ExcessTable) -> Result<WdlTable> {
    let Some(gi) = table.methods.iter().position(|&m| m == Method::Gbsc) else {
        return Err(Error::InvalidConfig(
            "win-draw-loss needs gbsc among the methods".into(),
        ));
    };
    let baselines: Vec<Method> = table
        .methods
        .iter()
        .copied()
        .filter(|&m| m != Method::Gbsc)
        .collect();
    if baselines.is_empty() {
        return Err(Error::InvalidConfig(
            "win-draw-loss needs at least one baseline".into(),
        ));
    }

    let mut rows: Vec<WdlRow> = Vec::new();
    let mut overall = WdlRow {
        group: "overall".into(),
        rows_compared: 0,
        cells: vec![
            WdlCell {
                wins: 0,
                draws: 0,
                losses: 0
            };
            baselines.len()
        ],
    };
    for row in &table.rows {
        if row.kind != RowKind::PerChi {
            continue;
        }
        if rows.last().map(|r| &r.group) != Some(&row.group) {
            rows.push(WdlRow {
                group: row.group.clone(),
                rows_compared: 0,
                cells: overall
                    .cells
                    .clone()
                    .into_iter()
                    .map(|_| WdlCell {
                        wins: 0,
                        draws: 0,
                        losses: 0,
                    })
                    .collect(),
            });
        }
        let current = rows.last_mut().expect("pushed above");
        current.rows_compared += 1;
        overall.rows_compared += 1;
        let gbsc = row.sums[gi];
        for (bi, &baseline) in baselines.iter().enumerate() {
            let mi = table
                .methods
                .iter()
                .position(|&m| m == baseline)
                .expect("baseline came from methods");
            let theirs = row.sums[mi];
            let (cell, total) = (&mut current.cells[bi], &mut overall.cells[bi]);
            match gbsc.cmp(&theirs) {
                std::cmp::Ordering::Less => {
                    cell.wins += 1;
                    total.wins += 1;
                }
                std::cmp::Ordering::Equal => {
                    cell.draws += 1;
                    total.draws += 1;
                }
                std::cmp::Ordering::Greater => {
                    cell.losses += 1;
                    total.losses += 1;
                }
            }
        }
    }
    rows.push(overall);
    Ok(WdlTable { baselines, rows })
}

fn chi_label(row: &ExcessRow) -> String {
    match (row.kind, row.chi) {
        (RowKind::PerChi, Some(chi)) => chi.to_string(),
        (RowKind::GroupAverage, _) => "avg".into(),
        _ => String::new(),
    }
}

fn mean_label(row: &ExcessRow, mi: usize) -> String {
    match row.mean(mi) {
        Some(mean) => format!("{mean:.3}"),
        None => "-".into(),
    }
}

/// Machine-readable excess table. The `best` column lists every method
/// achieving the row minimum, semicolon-separated.
pub fn excess_csv(table: &ExcessTable) -> String {
    let mut out = String::from("group,chi,nsamples,timeouts");
    for m in &table.methods {
        out.push(',');
        out.push_str(m.as_str());
    }
    out.push_str(",best\n");
    for row in &table.rows {
        out.push_str(&format!(
            "{},{},{},{}",
            row.group,
            chi_label(row),
            row.nsamples,
            row.timeouts
        ));
        for mi in 0..table.methods.len() {
            out.push(',');
            out.push_str(&mean_label(row, mi));
        }
        out.push(',');
        let best: Vec<&str> = row
            .best
            .iter()
            .map(|&i| table.methods[i].as_str())
            .collect();
        out.push_str(&best.join(";"));
        out.push('\n');
    }
    out
}

/// Human-readable excess table; row-best cells are bold.
pub fn excess_markdown(table: &ExcessTable) -> String {
    let mut out = String::from("| group | chi | nsamples | timeouts |");
    for m in &table.methods {
        out.push_str(&format!(" {m} |"));
    }
    out.push('\n');
    out.push_str(&"|---".repeat(4 + table.methods.len()));
    out.push_str("|\n");
    for row in &table.rows {
        out.push_str(&format!(
            "| {} | {} | {} | {} |",
            row.group,
            chi_label(row),
            row.nsamples,
            row.timeouts
        ));
        for mi in 0..table.methods.len() {
            let cell = mean_label(row, mi);
            if row.best.contains(&mi) {
                out.push_str(&format!(" **{cell}** |"));
            } else {
                out.push_str(&format!(" {cell} |"));
            }
        }
        out.push('\n');
    }
    out
}

fn wdl_cell_label(c: &WdlCell) -> String {
    format!("{}-{}-{}", c.wins, c.draws, c.losses)
}

/// Machine-readable win-draw-loss table; cells are "w-d-l" strings.
pub fn wdl_csv(table: &WdlTable) -> String {
    let mut out = String::from("group,rows");
    for b in &table.baselines {
        out.push(',');
        out.push_str(b.as_str());
    }
    out.push('\n');
    for row in &table.rows {
        out.push_str(&format!("{},{}", row.group, row.rows_compared));
        for cell in &row.cells {
            out.push(',');
            out.push_str(&wdl_cell_label(cell));
        }
        out.push('\n');
    }
    out
}

/// Human-readable win-draw-loss table.
pub fn wdl_markdown(table: &WdlTable) -> String {
    let mut out = String::from("| group | rows |");
    for b in &table.baselines {
        out.push_str(&format!(" {b} |"));
    }
    out.push('\n');
    out.push_str(&"|---".repeat(2 + table.baselines.len()));
    out.push_str("|\n");
    for row in &table.rows {
        out.push_str(&format!("| {} | {} |", row.group, row.rows_compared));
        for cell in &row.cells {
            out.push_str(&format!(" {} |", wdl_cell_label(cell)));
        }
        out.push('\n');
    }
    out
}
