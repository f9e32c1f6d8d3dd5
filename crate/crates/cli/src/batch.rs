//! Runs a manifest of jobs on the worker pool, one summary row per job in
//! manifest order.

use std::path::Path;

use anyhow::{Context, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exit_code;
use crate::job::{run, JobSpec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub job: String,
    pub ok: bool,
    pub exit_code: i32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b1: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q1_lower: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mn_lower: Option<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub verdicts: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

pub fn read_manifest(path: &Path) -> Result<Vec<JobSpec>> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    let mut jobs: Vec<JobSpec> = serde_json::from_str(&text)
        .map_err(|e| novikov_core::Error::InvalidArgument(format!("manifest: {e}")))?;
    let base = path.parent().unwrap_or(Path::new("."));
    for j in &mut jobs {
        j.rebase(base);
    }
    Ok(jobs)
}

fn run_one(spec: &JobSpec) -> SummaryRow {
    let mut row = SummaryRow {
        job: spec.label(),
        ok: false,
        exit_code: 0,
        b1: None,
        q1_lower: None,
        mn_lower: None,
        verdicts: Vec::new(),
        error: None,
    };
    let result = run(spec).and_then(|out| {
        if let Some(path) = &spec.out {
            std::fs::write(path, out.to_json()?)
                .with_context(|| format!("cannot write {}", path.display()))?;
        }
        Ok(out)
    });
    match result {
        Ok(out) => {
            row.ok = true;
            if let Some(r) = &out.report {
                if let Some(best) = r.best.map(|b| &r.representations[b]) {
                    row.b1 = Some(best.profile.b1());
                    row.q1_lower = Some(best.profile.q1_lower());
                }
                row.mn_lower = Some(r.lower_bound);
            }
            if let Some(a) = &out.alexander {
                row.verdicts = a
                    .representations
                    .iter()
                    .map(|e| match &e.invariant {
                        Some(s) => format!("{}: {}", e.label, s.verdict.as_str()),
                        None => format!("{}: undefined", e.label),
                    })
                    .collect();
            }
        }
        Err(e) => {
            row.exit_code = exit_code(&e);
            row.error = Some(format!("{e:#}"));
        }
    }
    row
}

/// Jobs are independent; a failing job is recorded and the rest continue.
pub fn run_batch(jobs: &[JobSpec]) -> Vec<SummaryRow> {
    jobs.par_iter().map(run_one).collect()
}

pub fn summary_text(rows: &[SummaryRow]) -> String {
    let mut s = format!(
        "{:<28} {:<7} {:>4} {:>9} {:>9}  {}\n",
        "job", "status", "b1", "q1_lower", "MN_lower", "details"
    );
    let dash = |v: Option<String>| v.unwrap_or_else(|| "-".into());
    for r in rows {
        let details = match &r.error {
            Some(e) => e.clone(),
            None => r.verdicts.join(", "),
        };
        s += &format!(
            "{:<28} {:<7} {:>4} {:>9} {:>9}  {}\n",
            r.job,
            if r.ok { "ok" } else { "failed" },
            dash(r.b1.map(|v| v.to_string())),
            dash(r.q1_lower.map(|v| v.to_string())),
            dash(r.mn_lower.map(|v| v.to_string())),
            details
        );
    }
    s
}
