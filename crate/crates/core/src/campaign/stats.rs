// Copyright 2026 The qco Authors
// SPDX-License-Identifier: Apache-2.0

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{CampaignError, RunRecord};
use crate::passes::PassKind;

/// Circuit parameters regressed against process fidelity.
pub const REGRESSORS: [&str; 5] = ["pulse_duration", "input_gates", "input_depth", "input_qubits", "two_qubit_gates"];

fn regressor(rec: &RunRecord, name: &str) -> f64 {
    match name {
        "pulse_duration" => rec.pulse.total_duration_ns,
        "input_gates" => rec.input.gates as f64,
        "input_depth" => rec.input.depth as f64,
        "input_qubits" => rec.input.qubits as f64,
        "two_qubit_gates" => rec.input.two_qubit_gates as f64,
        _ => unreachable!("unknown regressor {name}"),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Correlation {
    pub parameter: String,
    /// `None` when either series has zero variance.
    pub r: Option<f64>,
    pub r_squared: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PassEffect {
    pub gates_removed_total: usize,
    pub pct_circuits_improved: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryStats {
    pub n_runs: usize,
    pub mean_process_fidelity: f64,
    pub std_process_fidelity: f64,
    pub median_process_fidelity: f64,
    pub mean_state_fidelity: f64,
    pub mean_gate_reduction_pct: f64,
    pub max_gate_reduction_pct: f64,
    /// From standalone `pass:<name>` runs only.
    pub per_pass: BTreeMap<PassKind, PassEffect>,
    pub correlations: Vec<Correlation>,
}

/// Pearson product-moment correlation.
pub fn pearson_r(xs: &[f64], ys: &[f64]) -> Result<f64, CampaignError> {
    if xs.len() != ys.len() {
        return Err(CampaignError::LengthMismatch(xs.len(), ys.len()));
    }
    if xs.len() < 2 {
        return Err(CampaignError::TooFewSamples(xs.len()));
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        let (dx, dy) = (x - mx, y - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(CampaignError::DegenerateVariance);
    }
    Ok((sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0))
}

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

fn median(v: &[f64]) -> f64 {
    let mut s = v.to_vec();
    s.sort_by(f64::total_cmp);
    let m = s.len() / 2;
    if s.len() % 2 == 1 {
        s[m]
    } else {
        (s[m - 1] + s[m]) / 2.0
    }
}

fn per_pass(records: &[RunRecord]) -> BTreeMap<PassKind, PassEffect> {
    let mut out = BTreeMap::new();
    for pass in PassKind::ALL {
        let id = format!("pass:{pass}");
        let runs: Vec<&RunRecord> = records.iter().filter(|r| r.config_id == id).collect();
        if runs.is_empty() {
            continue;
        }
        let mut circuits = BTreeSet::new();
        let mut improved = BTreeSet::new();
        let mut total = 0;
        for r in runs {
            let removed: usize = r.pass_reports.iter().filter(|p| p.pass == pass).map(|p| p.gates_removed).sum();
            total += removed;
            circuits.insert(&r.circuit_name);
            if removed > 0 {
                improved.insert(&r.circuit_name);
            }
        }
        let pct = 100.0 * improved.len() as f64 / circuits.len() as f64;
        out.insert(pass, PassEffect { gates_removed_total: total, pct_circuits_improved: pct });
    }
    out
}

pub fn summarize(records: &[RunRecord]) -> Result<SummaryStats, CampaignError> {
    if records.is_empty() {
        return Err(CampaignError::NoRecords);
    }
    let fp: Vec<f64> = records.iter().map(|r| r.fidelity.process).collect();
    let fs: Vec<f64> = records.iter().map(|r| r.fidelity.state).collect();
    let red: Vec<f64> = records.iter().map(RunRecord::gate_reduction_pct).collect();
    let m = mean(&fp);
    let var = fp.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / fp.len() as f64;
    let correlations = REGRESSORS
        .iter()
        .map(|&name| {
            let xs: Vec<f64> = records.iter().map(|r| regressor(r, name)).collect();
            let r = pearson_r(&xs, &fp).ok();
            Correlation { parameter: name.to_string(), r, r_squared: r.map(|r| r * r) }
        })
        .collect();
    Ok(SummaryStats {
        n_runs: records.len(),
        mean_process_fidelity: m,
        std_process_fidelity: var.sqrt(),
        median_process_fidelity: median(&fp),
        mean_state_fidelity: mean(&fs),
        mean_gate_reduction_pct: mean(&red),
        max_gate_reduction_pct: red.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        per_pass: per_pass(records),
        correlations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::campaign::{InputStats, PulseStats};
    use crate::noise::FidelityEstimate;
    use crate::passes::PassReport;

    fn record(name: &str, config: &str, fidelity: f64, reports: Vec<PassReport>) -> RunRecord {
        RunRecord {
            circuit_name: name.into(),
            family: "custom".into(),
            config_id: config.into(),
            input: InputStats { qubits: 2, gates: 10, depth: 5, two_qubit_gates: 1 },
            gates_out: 10 - reports.iter().map(|r| r.gates_removed).sum::<usize>(),
            pass_reports: reports,
            routing: None,
            pulse: PulseStats { total_duration_ns: 100.0, prx_count: 0, cz_count: 0 },
            fidelity: FidelityEstimate { process: fidelity, state: fidelity, gate_factor: 1.0, decoherence_factor: fidelity },
        }
    }

    #[test]
    fn pearson_examples() {
        assert!((pearson_r(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0]).unwrap() - 1.0).abs() < 1e-15);
        assert!((pearson_r(&[1.0, 2.0, 3.0], &[-1.0, -2.0, -3.0]).unwrap() + 1.0).abs() < 1e-15);
        let r = pearson_r(&[1.0, 2.0, 3.0, 4.0], &[2.0, 4.0, 6.0, 8.1]).unwrap();
        assert!(r > 0.999 && r < 1.0);
        assert!(matches!(pearson_r(&[1.0, 1.0], &[1.0, 2.0]), Err(CampaignError::DegenerateVariance)));
        assert!(matches!(pearson_r(&[1.0], &[1.0]), Err(CampaignError::TooFewSamples(1))));
        assert!(matches!(pearson_r(&[1.0, 2.0], &[1.0]), Err(CampaignError::LengthMismatch(2, 1))));
    }

    #[test]
    fn single_record() {
        let s = summarize(&[record("a", "scaling", 0.7, vec![])]).unwrap();
        assert_eq!((s.mean_process_fidelity, s.median_process_fidelity, s.std_process_fidelity), (0.7, 0.7, 0.0));
        assert_eq!(s.correlations.len(), 5);
        assert!(s.correlations.iter().all(|c| c.r.is_none()));
        assert!(matches!(summarize(&[]), Err(CampaignError::NoRecords)));
    }

    #[test]
    fn median_and_std() {
        let recs: Vec<RunRecord> = [0.9, 0.5, 0.7, 0.1].iter().map(|&f| record("x", "scaling", f, vec![])).collect();
        let s = summarize(&recs).unwrap();
        assert!((s.median_process_fidelity - 0.6).abs() < 1e-15);
        assert!((s.std_process_fidelity - 0.2958039891549808).abs() < 1e-12);
    }

    #[test]
    fn pct_improved() {
        let hit = |n: usize| vec![PassReport::new(PassKind::Cancel, 10, 10 - n, n / 2)];
        let recs = vec![
            record("a", "pass:cancel", 0.9, hit(2)),
            record("b", "pass:cancel", 0.9, hit(0)),
            record("c", "pass:cancel", 0.9, hit(4)),
            record("d", "pass:cancel", 0.9, hit(0)),
        ];
        let s = summarize(&recs).unwrap();
        assert_eq!(s.per_pass[&PassKind::Cancel], PassEffect { gates_removed_total: 6, pct_circuits_improved: 50.0 });
        assert!(!s.per_pass.contains_key(&PassKind::Rotate));
        assert_eq!(s.max_gate_reduction_pct, 40.0);
        assert!((s.mean_gate_reduction_pct - 15.0).abs() < 1e-12);
    }
}
