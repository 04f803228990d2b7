// Copyright 2026 The qco Authors
// SPDX-License-Identifier: Apache-2.0

//! Fidelity metrics and the decoherence-aware fidelity estimator.
//!
//! The estimator is a closed-form surrogate for Lindblad evolution: each qubit
//! idles through an amplitude-damping plus pure-dephasing channel whose
//! average gate fidelity is
//!
//! ```text
//! F̄(t) = (3 + e^{−t/T1} + 2·e^{−t/T2}) / 6
//! ```
//!
//! and gate errors compose multiplicatively on top. [`lindblad`] integrates
//! the single-qubit master equation directly and is used to validate `F̄`.

pub mod lindblad;

use ndarray::Array2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::pulse::{NativeKind, PulseSchedule};

pub use lindblad::{lindblad_oracle, oracle_average_fidelity, DensityMatrix};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NoiseError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("invalid noise model: {0}")]
    InvalidModel(String),
    #[error("step size {dt_ns} ns too coarse for t = {t_ns} ns (need dt ≤ t/100)")]
    StepSize { dt_ns: f64, t_ns: f64 },
    #[error("invalid density matrix: {0}")]
    InvalidState(String),
    #[error("unknown noise preset `{0}` (expected garnet, low, medium, high or very_high)")]
    UnknownPreset(String),
    #[error("noise model JSON: {0}")]
    Json(String),
}

/// Hardware noise parameters. Times in µs, durations in ns.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseModel {
    pub t1_us: f64,
    pub t2_us: f64,
    pub err_1q: f64,
    pub err_2q: f64,
    pub dur_1q_ns: f64,
    pub dur_2q_ns: f64,
}

impl Default for NoiseModel {
    fn default() -> Self {
        NoiseModel::garnet()
    }
}

impl NoiseModel {
    /// Median IQM Garnet parameters.
    pub fn garnet() -> NoiseModel {
        NoiseModel { t1_us: 37.0, t2_us: 9.6, err_1q: 0.001, err_2q: 0.006, dur_1q_ns: 20.0, dur_2q_ns: 40.0 }
    }

    pub fn validate(&self) -> Result<(), NoiseError> {
        let bad = |m: &str| Err(NoiseError::InvalidModel(m.to_string()));
        let positive = |v: f64| v.is_finite() && v > 0.0;
        if !positive(self.t1_us) || !positive(self.t2_us) {
            return bad("T1 and T2 must be positive");
        }
        if self.t2_us > 2.0 * self.t1_us {
            return bad("T2 must not exceed 2·T1");
        }
        if !(0.0..1.0).contains(&self.err_1q) || !(0.0..1.0).contains(&self.err_2q) {
            return bad("gate errors must lie in [0, 1)");
        }
        if !positive(self.dur_1q_ns) || !positive(self.dur_2q_ns) {
            return bad("gate durations must be positive");
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<NoiseModel, NoiseError> {
        let nm: NoiseModel = serde_json::from_str(text).map_err(|e| NoiseError::Json(e.to_string()))?;
        nm.validate()?;
        Ok(nm)
    }

    /// `garnet` or one of the regime names.
    pub fn preset(name: &str) -> Result<NoiseModel, NoiseError> {
        if name == "garnet" {
            return Ok(NoiseModel::garnet());
        }
        NoiseRegime::ALL
            .iter()
            .find(|r| r.name == name)
            .map(|r| r.apply(&NoiseModel::garnet()))
            .ok_or_else(|| NoiseError::UnknownPreset(name.to_string()))
    }

    /// Pure-dephasing rate `1/T2 − 1/(2·T1)` in 1/µs.
    pub fn pure_dephasing_rate(&self) -> f64 {
        1.0 / self.t2_us - 0.5 / self.t1_us
    }
}

/// Scaled variant of a base noise model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NoiseRegime {
    pub name: &'static str,
    /// Multiplies T1 and T2.
    pub t_scale: f64,
    /// Multiplies both gate error rates.
    pub err_scale: f64,
}

impl NoiseRegime {
    pub const LOW: NoiseRegime = NoiseRegime { name: "low", t_scale: 4.0, err_scale: 0.25 };
    pub const MEDIUM: NoiseRegime = NoiseRegime { name: "medium", t_scale: 1.0, err_scale: 1.0 };
    pub const HIGH: NoiseRegime = NoiseRegime { name: "high", t_scale: 0.5, err_scale: 2.0 };
    pub const VERY_HIGH: NoiseRegime = NoiseRegime { name: "very_high", t_scale: 0.25, err_scale: 4.0 };
    pub const ALL: [NoiseRegime; 4] = [NoiseRegime::LOW, NoiseRegime::MEDIUM, NoiseRegime::HIGH, NoiseRegime::VERY_HIGH];

    pub fn apply(&self, base: &NoiseModel) -> NoiseModel {
        NoiseModel {
            t1_us: base.t1_us * self.t_scale,
            t2_us: base.t2_us * self.t_scale,
            err_1q: (base.err_1q * self.err_scale).min(1.0 - f64::EPSILON),
            err_2q: (base.err_2q * self.err_scale).min(1.0 - f64::EPSILON),
            ..*base
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FidelityEstimate {
    pub process: f64,
    /// Depolarizing-closure estimate, not a simulated overlap.
    pub state: f64,
    pub gate_factor: f64,
    pub decoherence_factor: f64,
}

/// `|Tr(U_target† U_impl)|² / d²`.
pub fn process_fidelity_exact(u_target: &Array2<Complex64>, u_impl: &Array2<Complex64>) -> Result<f64, NoiseError> {
    if u_target.dim() != u_impl.dim() || u_target.nrows() != u_target.ncols() {
        return Err(NoiseError::DimensionMismatch(u_target.nrows(), u_impl.nrows()));
    }
    let d = u_target.nrows() as f64;
    // Tr(A†B) = Σ conj(A_ij)·B_ij
    let tr: Complex64 = u_target.iter().zip(u_impl.iter()).map(|(a, b)| a.conj() * b).sum();
    Ok(tr.norm_sqr() / (d * d))
}

/// `⟨ψ|ρ|ψ⟩`.
pub fn state_fidelity(psi: &[Complex64], rho: &Array2<Complex64>) -> Result<f64, NoiseError> {
    if rho.nrows() != psi.len() || rho.ncols() != psi.len() {
        return Err(NoiseError::DimensionMismatch(psi.len(), rho.nrows()));
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for (i, pi) in psi.iter().enumerate() {
        for (j, pj) in psi.iter().enumerate() {
            acc += pi.conj() * rho[[i, j]] * pj;
        }
    }
    Ok(acc.re)
}

/// Average gate fidelity of the single-qubit idle channel after `t_ns`.
pub fn idle_fidelity(t_ns: f64, nm: &NoiseModel) -> f64 {
    let t_us = t_ns / 1000.0;
    (3.0 + (-t_us / nm.t1_us).exp() + 2.0 * (-t_us / nm.t2_us).exp()) / 6.0
}

/// Which duration each qubit decoheres over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecoherenceWindow {
    /// Every qubit idles for the full schedule length.
    #[default]
    WholeCircuit,
    /// Each qubit decoheres only while it is busy.
    PerQubitBusy,
}

pub fn estimate_fidelity(sched: &PulseSchedule, nm: &NoiseModel, n_qubits: usize) -> FidelityEstimate {
    estimate_fidelity_with(sched, nm, n_qubits, DecoherenceWindow::WholeCircuit)
}

pub fn estimate_fidelity_with(
    sched: &PulseSchedule,
    nm: &NoiseModel,
    n_qubits: usize,
    window: DecoherenceWindow,
) -> FidelityEstimate {
    let prx = sched.count(NativeKind::Prx) as f64;
    let cz = sched.count(NativeKind::Cz) as f64;
    let gate_factor = (1.0 - nm.err_1q).powf(prx) * (1.0 - nm.err_2q).powf(cz);
    let decoherence_factor = match window {
        DecoherenceWindow::WholeCircuit => idle_fidelity(sched.total_duration_ns, nm).powf(n_qubits as f64),
        DecoherenceWindow::PerQubitBusy => sched.per_qubit_busy_ns.values().map(|&t| idle_fidelity(t, nm)).product(),
    };
    let process = gate_factor * decoherence_factor;
    let state = process + (1.0 - process) * 0.5f64.powf(n_qubits as f64);
    FidelityEstimate { process, state, gate_factor, decoherence_factor }
}
