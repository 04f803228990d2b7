// Copyright 2026 The qco Authors
// SPDX-License-Identifier: Apache-2.0

//! End-to-end pipeline runs, experiment sweeps and reports.
//!
//! Every run is a pure function of `(circuit, RunConfig)`, so runs are
//! computed independently (in parallel with the `parallel` feature) and then
//! sorted by `(config_id, circuit_name)` before any aggregation or output.

mod report;
mod stats;

use serde::Serialize;
use thiserror::Error;

use crate::corpus::Family;
use crate::ir::Circuit;
use crate::noise::{estimate_fidelity_with, DecoherenceWindow, FidelityEstimate, NoiseError, NoiseModel, NoiseRegime};
use crate::parallel::{map_ordered, Jobs};
use crate::passes::{run_pipeline, PassConfig, PassKind, PassReport};
use crate::pulse::{decompose_to_native, schedule, Durations, NativeKind};
use crate::route::{sabre_route, Layout, RouteError, RoutingReport, Topology};

pub use report::{emit_report, emit_report_with_meta, write_atomic, CsvRow, Report};
pub use stats::{pearson_r, summarize, Correlation, PassEffect, SummaryStats, REGRESSORS};

#[derive(Debug, Error)]
pub enum CampaignError {
    #[error("{stage} stage failed: {message}")]
    Stage { stage: Stage, message: String },
    #[error("empty corpus")]
    EmptyCorpus,
    #[error("no records to summarize or emit")]
    NoRecords,
    #[error("series lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("need at least two samples, got {0}")]
    TooFewSamples(usize),
    #[error("degenerate variance in correlation input")]
    DegenerateVariance,
    #[error("I/O error on {path}: {message}")]
    Io { path: String, message: String },
}

/// Pipeline stage that produced an error.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Stage {
    Parse,
    Optimize,
    Route,
    Compile,
    Simulate,
}

impl std::fmt::Display for Stage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Stage::Parse => "parse",
            Stage::Optimize => "optimize",
            Stage::Route => "route",
            Stage::Compile => "compile",
            Stage::Simulate => "simulate",
        };
        f.write_str(s)
    }
}

impl CampaignError {
    fn route(e: RouteError) -> CampaignError {
        CampaignError::Stage { stage: Stage::Route, message: e.to_string() }
    }

    fn simulate(e: NoiseError) -> CampaignError {
        CampaignError::Stage { stage: Stage::Simulate, message: e.to_string() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    Baseline,
    PerPass,
    PassCombos,
    RoutingImpact,
    NoiseSensitivity,
    Scaling,
}

impl ExperimentKind {
    pub const ALL: [ExperimentKind; 6] = [
        ExperimentKind::Baseline,
        ExperimentKind::PerPass,
        ExperimentKind::PassCombos,
        ExperimentKind::RoutingImpact,
        ExperimentKind::NoiseSensitivity,
        ExperimentKind::Scaling,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::Baseline => "baseline",
            ExperimentKind::PerPass => "per_pass",
            ExperimentKind::PassCombos => "pass_combos",
            ExperimentKind::RoutingImpact => "routing_impact",
            ExperimentKind::NoiseSensitivity => "noise_sensitivity",
            ExperimentKind::Scaling => "scaling",
        }
    }
}

impl std::str::FromStr for ExperimentKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        ExperimentKind::ALL
            .into_iter()
            .find(|k| k.name() == key)
            .ok_or_else(|| format!("unknown experiment `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct InputStats {
    pub qubits: usize,
    pub gates: usize,
    pub depth: usize,
    pub two_qubit_gates: usize,
}

impl InputStats {
    pub fn of(c: &Circuit) -> InputStats {
        InputStats {
            qubits: c.num_qubits(),
            gates: c.len(),
            depth: c.depth(),
            two_qubit_gates: c.gates().iter().filter(|g| g.is_two_qubit()).count(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PulseStats {
    pub total_duration_ns: f64,
    pub prx_count: usize,
    pub cz_count: usize,
}

/// Metrics gathered from one pipeline run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunRecord {
    pub circuit_name: String,
    pub family: String,
    pub config_id: String,
    pub input: InputStats,
    /// Gate count after optimization, before routing.
    pub gates_out: usize,
    pub pass_reports: Vec<PassReport>,
    pub routing: Option<RoutingReport>,
    pub pulse: PulseStats,
    pub fidelity: FidelityEstimate,
}

impl RunRecord {
    /// Optimization-stage gate reduction in percent; 0 for empty input.
    pub fn gate_reduction_pct(&self) -> f64 {
        if self.input.gates == 0 {
            return 0.0;
        }
        100.0 * (self.input.gates as f64 - self.gates_out as f64) / self.input.gates as f64
    }

    pub fn swaps(&self) -> Option<usize> {
        self.routing.as_ref().map(|r| r.swaps_inserted)
    }
}

/// Everything that varies between runs of one circuit.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub id: String,
    pub passes: PassConfig,
    pub route: bool,
    pub noise: NoiseModel,
    pub window: DecoherenceWindow,
}

impl RunConfig {
    pub fn new(id: impl Into<String>, passes: PassConfig, route: bool, noise: NoiseModel) -> RunConfig {
        RunConfig { id: id.into(), passes, route, noise, window: DecoherenceWindow::WholeCircuit }
    }
}

/// Family label derived from the circuit name, `custom` otherwise.
pub fn family_label(c: &Circuit) -> String {
    Family::from_circuit_name(&c.name).map_or_else(|| "custom".to_string(), |f| f.name().to_string())
}

/// Qubits the estimator charges decoherence for after routing: the images of
/// all logical qubits plus anything a SWAP dragged in.
fn routed_active_qubits(routed: &Circuit, report: &RoutingReport, logical: usize) -> usize {
    let mut active = vec![false; routed.num_qubits()];
    for l in 0..logical {
        active[report.initial_layout.physical(l)] = true;
    }
    for g in routed.gates() {
        for &q in &g.qubits {
            active[q] = true;
        }
    }
    active.iter().filter(|&&a| a).count()
}

/// Optimize, optionally route, lower to native pulses, schedule and estimate.
pub fn run_pipeline_full(
    c: &Circuit,
    passes: &PassConfig,
    topo: Option<&Topology>,
    nm: &NoiseModel,
) -> Result<RunRecord, CampaignError> {
    let cfg = RunConfig::new(passes.label(), passes.clone(), topo.is_some(), *nm);
    run_with_config(c, &cfg, topo)
}

/// Runs one circuit under `cfg`. `topo` is consulted only when `cfg.route`.
pub fn run_with_config(c: &Circuit, cfg: &RunConfig, topo: Option<&Topology>) -> Result<RunRecord, CampaignError> {
    cfg.noise.validate().map_err(CampaignError::simulate)?;
    let input = InputStats::of(c);
    let (optimized, pass_reports) = run_pipeline(c, &cfg.passes);

    let (lowered_from, routing, n_active) = match topo.filter(|_| cfg.route) {
        Some(t) => {
            let (routed, report) =
                sabre_route(&optimized, t, &Layout::identity(t.num_qubits())).map_err(CampaignError::route)?;
            let n = routed_active_qubits(&routed, &report, c.num_qubits());
            (routed, Some(report), n)
        }
        None => (optimized.clone(), None, c.num_qubits()),
    };

    let native = decompose_to_native(&lowered_from);
    let sched = schedule(&native, &Durations::from(&cfg.noise));
    let fidelity = estimate_fidelity_with(&sched, &cfg.noise, n_active, cfg.window);
    Ok(RunRecord {
        circuit_name: c.name.clone(),
        family: family_label(c),
        config_id: cfg.id.clone(),
        input,
        gates_out: optimized.len(),
        pass_reports,
        routing,
        pulse: PulseStats {
            total_duration_ns: sched.total_duration_ns,
            prx_count: sched.count(NativeKind::Prx),
            cz_count: sched.count(NativeKind::Cz),
        },
        fidelity,
    })
}

/// All ordered sequences of distinct passes with length 1 to 3, plus
/// cancel → commute → rotate, deduplicated, in enumeration order.
pub fn pass_combos() -> Vec<Vec<PassKind>> {
    let mut out: Vec<Vec<PassKind>> = Vec::new();
    let mut stack: Vec<Vec<PassKind>> = PassKind::ALL.iter().map(|&p| vec![p]).collect();
    while let Some(seq) = stack.first().cloned() {
        stack.remove(0);
        if seq.len() < 3 {
            for p in PassKind::ALL {
                if !seq.contains(&p) {
                    let mut next = seq.clone();
                    next.push(p);
                    stack.push(next);
                }
            }
        }
        out.push(seq);
    }
    let best = PassConfig::best().sequence().to_vec();
    if !out.contains(&best) {
        out.push(best);
    }
    out
}

/// Run configurations an experiment sweeps over.
pub fn experiment_configs(kind: ExperimentKind, base_nm: &NoiseModel) -> Vec<RunConfig> {
    let best = PassConfig::best;
    match kind {
        ExperimentKind::Baseline => vec![RunConfig::new("baseline", PassConfig::baseline(), true, *base_nm)],
        ExperimentKind::PerPass => PassKind::ALL
            .iter()
            .map(|&p| RunConfig::new(format!("pass:{p}"), PassConfig::new(vec![p]).expect("non-empty"), true, *base_nm))
            .collect(),
        ExperimentKind::PassCombos => pass_combos()
            .into_iter()
            .map(|seq| {
                let cfg = PassConfig::new(seq).expect("non-empty");
                RunConfig::new(format!("combo:{}", cfg.label()), cfg, true, *base_nm)
            })
            .collect(),
        ExperimentKind::RoutingImpact => vec![
            RunConfig::new("routing:off", best(), false, *base_nm),
            RunConfig::new("routing:on", best(), true, *base_nm),
        ],
        ExperimentKind::NoiseSensitivity => NoiseRegime::ALL
            .iter()
            .map(|r| RunConfig::new(format!("noise:{}", r.name), best(), true, r.apply(base_nm)))
            .collect(),
        ExperimentKind::Scaling => vec![RunConfig::new("scaling", best(), true, *base_nm)],
    }
}

/// Options shared by experiment runs.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RunOptions {
    pub jobs: Jobs,
    pub window: DecoherenceWindow,
}

/// Runs every `(circuit, config)` pair and sorts by `(config_id, circuit_name)`.
pub fn run_configs(
    corpus: &[Circuit],
    configs: &[RunConfig],
    topo: &Topology,
    opts: &RunOptions,
) -> Result<Vec<RunRecord>, CampaignError> {
    if corpus.is_empty() {
        return Err(CampaignError::EmptyCorpus);
    }
    let configs: Vec<RunConfig> = configs.iter().map(|c| RunConfig { window: opts.window, ..c.clone() }).collect();
    let work: Vec<(&Circuit, &RunConfig)> = configs.iter().flat_map(|cfg| corpus.iter().map(move |c| (c, cfg))).collect();
    let results = map_ordered(&work, opts.jobs, |(c, cfg)| run_with_config(c, cfg, Some(topo)));
    let mut records = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    records.sort_by(|a, b| (&a.config_id, &a.circuit_name).cmp(&(&b.config_id, &b.circuit_name)));
    Ok(records)
}

pub fn run_experiment(
    kind: ExperimentKind,
    corpus: &[Circuit],
    base_nm: &NoiseModel,
    topo: &Topology,
) -> Result<Vec<RunRecord>, CampaignError> {
    run_experiment_with(kind, corpus, base_nm, topo, &RunOptions::default())
}

pub fn run_experiment_with(
    kind: ExperimentKind,
    corpus: &[Circuit],
    base_nm: &NoiseModel,
    topo: &Topology,
    opts: &RunOptions,
) -> Result<Vec<RunRecord>, CampaignError> {
    run_configs(corpus, &experiment_configs(kind, base_nm), topo, opts)
}

/// Runs the given experiments as one sweep. Config ids are unique across
/// experiments except `baseline`/`scaling`, which never collide.
pub fn run_campaign(
    kinds: &[ExperimentKind],
    corpus: &[Circuit],
    base_nm: &NoiseModel,
    topo: &Topology,
    opts: &RunOptions,
) -> Result<Vec<RunRecord>, CampaignError> {
    let mut configs: Vec<RunConfig> = Vec::new();
    for &kind in kinds {
        for cfg in experiment_configs(kind, base_nm) {
            if !configs.iter().any(|c| c.id == cfg.id) {
                configs.push(cfg);
            }
        }
    }
    run_configs(corpus, &configs, topo, opts)
}
