// Copyright 2026 The qco Authors
// SPDX-License-Identifier: Apache-2.0

//! Report files: `report.json`, `records.csv` and `meta.json`.
//!
//! `report.json` and `records.csv` depend only on the records; anything
//! run-specific (timestamps, run parameters) goes to `meta.json`.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use serde::Serialize;

use super::{CampaignError, RunRecord, SummaryStats};

#[derive(Debug, Serialize)]
pub struct Report<'a> {
    pub summary: &'a SummaryStats,
    pub records: &'a [RunRecord],
}

/// One `records.csv` row.
#[derive(Debug, Serialize)]
pub struct CsvRow<'a> {
    pub circuit_name: &'a str,
    pub family: &'a str,
    pub config_id: &'a str,
    pub qubits: usize,
    pub gates_in: usize,
    pub gates_out: usize,
    pub reduction_pct: f64,
    pub depth_in: usize,
    pub two_qubit_gates: usize,
    pub swaps: Option<usize>,
    pub duration_ns: f64,
    pub f_process: f64,
    pub f_state: f64,
}

impl<'a> From<&'a RunRecord> for CsvRow<'a> {
    fn from(r: &'a RunRecord) -> Self {
        CsvRow {
            circuit_name: &r.circuit_name,
            family: &r.family,
            config_id: &r.config_id,
            qubits: r.input.qubits,
            gates_in: r.input.gates,
            gates_out: r.gates_out,
            reduction_pct: r.gate_reduction_pct(),
            depth_in: r.input.depth,
            two_qubit_gates: r.input.two_qubit_gates,
            swaps: r.swaps(),
            duration_ns: r.pulse.total_duration_ns,
            f_process: r.fidelity.process,
            f_state: r.fidelity.state,
        }
    }
}

fn io_err(path: &Path, e: impl std::fmt::Display) -> CampaignError {
    CampaignError::Io { path: path.display().to_string(), message: e.to_string() }
}

/// Writes `bytes` to a temporary file beside `path` and renames it into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CampaignError> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| io_err(path, e))?;
    tmp.write_all(bytes).map_err(|e| io_err(path, e))?;
    tmp.as_file().sync_all().map_err(|e| io_err(path, e))?;
    tmp.persist(path).map_err(|e| io_err(path, e.error))?;
    Ok(())
}

fn render_csv(records: &[RunRecord]) -> Result<Vec<u8>, CampaignError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in records {
        w.serialize(CsvRow::from(r)).map_err(|e| io_err(Path::new("records.csv"), e))?;
    }
    w.into_inner().map_err(|e| io_err(Path::new("records.csv"), e))
}

pub fn emit_report(stats: &SummaryStats, records: &[RunRecord], dir: &Path) -> Result<(), CampaignError> {
    emit_report_with_meta(stats, records, dir, BTreeMap::new())
}

/// Writes the three report files into `dir`. Nothing is written unless all
/// payloads render; each file is replaced atomically.
pub fn emit_report_with_meta(
    stats: &SummaryStats,
    records: &[RunRecord],
    dir: &Path,
    extra_meta: BTreeMap<String, serde_json::Value>,
) -> Result<(), CampaignError> {
    if records.is_empty() {
        return Err(CampaignError::NoRecords);
    }
    let report = serde_json::to_vec_pretty(&Report { summary: stats, records }).map_err(|e| io_err(dir, e))?;
    let csv = render_csv(records)?;
    let mut meta: BTreeMap<String, serde_json::Value> = extra_meta;
    meta.insert("tool".into(), "qco".into());
    meta.insert("version".into(), env!("CARGO_PKG_VERSION").into());
    meta.insert("n_records".into(), records.len().into());
    let now = std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH).map_or(0, |d| d.as_secs());
    meta.insert("generated_unix_s".into(), now.into());
    let meta = serde_json::to_vec_pretty(&meta).map_err(|e| io_err(dir, e))?;

    std::fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
    write_atomic(&dir.join("report.json"), &report)?;
    write_atomic(&dir.join("records.csv"), &csv)?;
    write_atomic(&dir.join("meta.json"), &meta)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::campaign::{run_experiment, summarize, ExperimentKind};
    use crate::corpus::gen_ghz;
    use crate::noise::NoiseModel;
    use crate::route::Topology;

    #[test]
    fn empty_records_write_nothing() {
        let dir = tempfile::tempdir().unwrap();
        let recs = run_experiment(ExperimentKind::Scaling, &[gen_ghz(3).unwrap()], &NoiseModel::garnet(), &Topology::garnet20()).unwrap();
        let stats = summarize(&recs).unwrap();
        let out = dir.path().join("out");
        assert!(matches!(emit_report(&stats, &[], &out), Err(CampaignError::NoRecords)));
        assert!(!out.exists());
    }

    #[test]
    fn files_and_rows() {
        let dir = tempfile::tempdir().unwrap();
        let corpus: Vec<_> = (2..6).map(|n| gen_ghz(n).unwrap()).collect();
        let recs = run_experiment(ExperimentKind::PerPass, &corpus, &NoiseModel::garnet(), &Topology::garnet20()).unwrap();
        let stats = summarize(&recs).unwrap();
        emit_report(&stats, &recs, dir.path()).unwrap();
        let csv = std::fs::read_to_string(dir.path().join("records.csv")).unwrap();
        assert_eq!(csv.lines().count(), recs.len() + 1);
        assert_eq!(
            csv.lines().next().unwrap(),
            "circuit_name,family,config_id,qubits,gates_in,gates_out,reduction_pct,depth_in,two_qubit_gates,swaps,duration_ns,f_process,f_state"
        );
        let json: serde_json::Value = serde_json::from_slice(&std::fs::read(dir.path().join("report.json")).unwrap()).unwrap();
        assert_eq!(json["records"].as_array().unwrap().len(), recs.len());
        assert!(json["summary"]["per_pass"]["cancel"].is_object());
        assert!(dir.path().join("meta.json").exists());

        let first = std::fs::read(dir.path().join("report.json")).unwrap();
        emit_report(&stats, &recs, dir.path()).unwrap();
        assert_eq!(first, std::fs::read(dir.path().join("report.json")).unwrap());
    }
}
