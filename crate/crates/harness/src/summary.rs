//! Cross-environment comparison tables.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::record::{BenchRecord, csv_field};
use crate::stats::stats;
use crate::workload::WorkloadId;

#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    pub mean_ms: f64,
    pub std_ms: f64,
    pub repetitions: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub workload: WorkloadId,
    /// Indexed like [`Summary::envs`]; `None` where an environment has no record.
    pub cells: Vec<Option<Cell>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Summary {
    pub envs: Vec<String>,
    pub baseline: String,
    pub rows: Vec<Row>,
}

impl Summary {
    /// `baseline_mean / env_mean`, so values above 1 mean the environment is
    /// faster than the baseline.
    pub fn speedup(&self, row: &Row, env: usize) -> Option<f64> {
        let base = self.envs.iter().position(|e| *e == self.baseline)?;
        let b = row.cells[base].as_ref()?;
        let c = row.cells[env].as_ref()?;
        Some(b.mean_ms / c.mean_ms)
    }
}

/// Builds the table. Rows follow the canonical workload order and columns
/// the order in which environments first appear. `baseline` defaults to
/// the first environment. With `merge`, records sharing a (workload,
/// environment) pair have their samples pooled.
pub fn summarize(records: &[BenchRecord], baseline: Option<&str>, merge: bool) -> Result<Summary> {
    if records.is_empty() {
        return Err(Error::Aggregation("no records to summarize".into()));
    }
    let mut envs: Vec<String> = Vec::new();
    let mut groups: BTreeMap<(WorkloadId, usize), Vec<&BenchRecord>> = BTreeMap::new();
    for r in records {
        let env = match envs.iter().position(|e| *e == r.env) {
            Some(i) => i,
            None => {
                envs.push(r.env.clone());
                envs.len() - 1
            }
        };
        let group = groups.entry((r.workload, env)).or_default();
        if !group.is_empty() && !merge {
            return Err(Error::Aggregation(format!(
                "duplicate records for workload '{}' in environment '{}' (use merge to pool them)",
                r.workload, r.env
            )));
        }
        group.push(r);
    }
    let baseline = match baseline {
        Some(b) if envs.iter().any(|e| e == b) => b.to_string(),
        Some(b) => {
            return Err(Error::Aggregation(format!(
                "baseline environment '{b}' not present (found: {})",
                envs.join(", ")
            )));
        }
        None => envs[0].clone(),
    };

    let mut rows = Vec::new();
    for id in WorkloadId::ALL {
        let cells: Vec<Option<Cell>> = (0..envs.len())
            .map(|env| groups.get(&(id, env)).map(|g| pooled(g)).transpose())
            .collect::<Result<_>>()?;
        if cells.iter().any(Option::is_some) {
            rows.push(Row { workload: id, cells });
        }
    }
    Ok(Summary { envs, baseline, rows })
}

fn pooled(group: &[&BenchRecord]) -> Result<Cell> {
    if let [single] = group {
        return Ok(Cell {
            mean_ms: single.mean_ms,
            std_ms: single.std_ms,
            repetitions: single.repetitions,
        });
    }
    let samples: Vec<f64> = group.iter().flat_map(|r| r.samples_ms.iter().copied()).collect();
    let (mean_ms, std_ms) = stats(&samples)?;
    Ok(Cell {
        mean_ms,
        std_ms,
        repetitions: samples.len() as u64,
    })
}

fn fmt_ms(v: f64) -> String {
    format!("{v:.3}")
}

fn fmt_speedup(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_string(), |s| format!("{s:.2}"))
}

/// Markdown table: one `mean (std)` column per environment in milliseconds,
/// followed by one speedup column per environment.
pub fn render_markdown(summary: &Summary) -> String {
    let mut header = vec!["workload".to_string()];
    header.extend(summary.envs.iter().map(|e| format!("{e} ms")));
    header.extend(summary.envs.iter().map(|e| format!("speedup {e} vs {}", summary.baseline)));

    let mut out = format!("| {} |\n", header.join(" | "));
    let rule: Vec<&str> = std::iter::once("---")
        .chain(std::iter::repeat_n("---:", header.len() - 1))
        .collect();
    out.push_str(&format!("| {} |\n", rule.join(" | ")));

    for row in &summary.rows {
        let mut line = vec![row.workload.to_string()];
        line.extend(row.cells.iter().map(|c| match c {
            Some(c) => format!("{} ({})", fmt_ms(c.mean_ms), fmt_ms(c.std_ms)),
            None => "-".to_string(),
        }));
        line.extend((0..summary.envs.len()).map(|i| fmt_speedup(summary.speedup(row, i))));
        out.push_str(&format!("| {} |\n", line.join(" | ")));
    }
    out
}

pub const SUMMARY_CSV_HEADER: &str = "workload,env,mean_ms,std_ms,repetitions,speedup";

/// Long-format CSV, one line per (workload, environment) cell.
pub fn render_csv(summary: &Summary) -> String {
    let mut out = String::from(SUMMARY_CSV_HEADER);
    out.push('\n');
    for row in &summary.rows {
        for (i, cell) in row.cells.iter().enumerate() {
            let Some(c) = cell else { continue };
            let speedup = summary.speedup(row, i).map_or(String::new(), |s| s.to_string());
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                row.workload,
                csv_field(&summary.envs[i]),
                c.mean_ms,
                c.std_ms,
                c.repetitions,
                speedup
            ));
        }
    }
    out
}
