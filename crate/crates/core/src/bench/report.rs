//! CSV serialisation of sweep results, convergence trajectories and
//! cross-dataset summaries. Every real is written with five decimals.

use std::fs;
use std::path::{Path, PathBuf};

use super::{ModelKind, SummaryRow, SweepRow};
use crate::error::{Error, Result};

pub const RESULTS_HEADER: &str = "alpha,min_mse_mlp,min_mse_fuzzy,gain,time_mlp_s,time_fuzzy_s";
pub const SUMMARY_HEADER: &str = "alpha,mean_gain,mean_time_mlp_s,mean_time_fuzzy_s,datasets";

fn write(path: PathBuf, contents: String) -> Result<PathBuf> {
    fs::write(&path, contents).map_err(|e| Error::io(&path, e))?;
    Ok(path)
}

/// Writes `results_<dataset>.csv` and one `trajectory_<dataset>_<model>.csv`
/// per model into `dir`, returning the paths written.
pub fn emit_reports(dataset: &str, rows: &[SweepRow], dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut written = Vec::new();

    let mut results = String::from(RESULTS_HEADER);
    results.push('\n');
    for r in rows {
        results.push_str(&format!(
            "{:.5},{:.5},{:.5},{:.5},{:.5},{:.5}\n",
            r.alpha, r.min_mse_mlp, r.min_mse_fuzzy, r.gain, r.time_mlp_s, r.time_fuzzy_s
        ));
    }
    written.push(write(dir.join(format!("results_{dataset}.csv")), results)?);

    let epochs = rows.iter().map(|r| r.trajectory_mlp.len()).max().unwrap_or(0);
    for model in ModelKind::ALL {
        let mut out = String::from("epoch");
        for r in rows {
            out.push_str(&format!(",alpha_{:.5}", r.alpha));
        }
        out.push('\n');
        for epoch in 0..epochs {
            out.push_str(&(epoch + 1).to_string());
            for r in rows {
                match r.trajectory(model).get(epoch) {
                    Some(mse) => out.push_str(&format!(",{mse:.5}")),
                    None => out.push(','),
                }
            }
            out.push('\n');
        }
        written.push(write(dir.join(format!("trajectory_{dataset}_{model}.csv")), out)?);
    }
    Ok(written)
}

pub fn write_summary(summary: &[SummaryRow], dir: &Path) -> Result<PathBuf> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut out = String::from(SUMMARY_HEADER);
    out.push('\n');
    for s in summary {
        out.push_str(&format!(
            "{:.5},{:.5},{:.5},{:.5},{}\n",
            s.alpha, s.mean_gain, s.mean_time_mlp_s, s.mean_time_fuzzy_s, s.datasets
        ));
    }
    write(dir.join("summary.csv"), out)
}

/// Reads a `results_<dataset>.csv` back. Trajectories are not part of that
/// file and come back empty.
pub fn read_results(path: &Path) -> Result<Vec<SweepRow>> {
    let parse_err = |message: String| Error::Parse { path: path.to_path_buf(), message };
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| parse_err(e.to_string()))?;
    let header = reader.headers().map_err(|e| parse_err(e.to_string()))?;
    if header.iter().collect::<Vec<_>>().join(",") != RESULTS_HEADER {
        return Err(parse_err(format!("unexpected header, want {RESULTS_HEADER:?}")));
    }

    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| parse_err(e.to_string()))?;
        let line = record.position().map_or(0, |p| p.line());
        let values = record
            .iter()
            .map(|f| f.parse::<f64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| parse_err(format!("line {line}: {e}")))?;
        let [alpha, min_mse_mlp, min_mse_fuzzy, gain, time_mlp_s, time_fuzzy_s] = values[..] else {
            return Err(parse_err(format!("line {line}: expected 6 fields, found {}", values.len())));
        };
        rows.push(SweepRow {
            alpha,
            min_mse_mlp,
            min_mse_fuzzy,
            gain,
            time_mlp_s,
            time_fuzzy_s,
            trajectory_mlp: Vec::new(),
            trajectory_fuzzy: Vec::new(),
        });
    }
    Ok(rows)
}
