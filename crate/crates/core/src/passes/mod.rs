// Copyright 2026 The qco Authors
// SPDX-License-Identifier: Apache-2.0

//! Gate-level optimization passes and the fixpoint pass pipeline.
//!
//! Every pass is a pure `&Circuit -> (Circuit, PassReport)` function. All of
//! them preserve the circuit unitary up to a global phase.

mod commute;
mod peephole;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ir::Circuit;

pub use commute::{commute_pass, commutes};
pub use peephole::{cancel_pass, identity_pass, is_inverse_pair, rotate_pass};

pub const DEFAULT_ANGLE_TOLERANCE: f64 = 1e-9;
pub const DEFAULT_MAX_ROUNDS: usize = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PassError {
    #[error("unknown pass `{0}` (expected cancel, commute, rotate or identity)")]
    UnknownPass(String),
    #[error("pass sequence is empty")]
    EmptySequence,
    #[error("max_rounds must be at least 1")]
    ZeroRounds,
    #[error("angle tolerance must be positive and finite")]
    BadTolerance,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PassKind {
    Cancel,
    Commute,
    Rotate,
    Identity,
}

impl PassKind {
    pub const ALL: [PassKind; 4] = [PassKind::Cancel, PassKind::Commute, PassKind::Rotate, PassKind::Identity];

    pub fn name(self) -> &'static str {
        match self {
            PassKind::Cancel => "cancel",
            PassKind::Commute => "commute",
            PassKind::Rotate => "rotate",
            PassKind::Identity => "identity",
        }
    }

    pub fn run(self, c: &Circuit, angle_tolerance: f64) -> (Circuit, PassReport) {
        match self {
            PassKind::Cancel => cancel_pass(c, angle_tolerance),
            PassKind::Commute => commute_pass(c, angle_tolerance),
            PassKind::Rotate => rotate_pass(c, angle_tolerance),
            PassKind::Identity => identity_pass(c, angle_tolerance),
        }
    }
}

impl fmt::Display for PassKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PassKind {
    type Err = PassError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PassKind::ALL
            .into_iter()
            .find(|k| k.name() == s.trim().to_ascii_lowercase())
            .ok_or_else(|| PassError::UnknownPass(s.to_string()))
    }
}

/// Parses `"cancel,commute,rotate"`.
pub fn parse_pass_sequence(s: &str) -> Result<Vec<PassKind>, PassError> {
    let seq = s.split(',').filter(|p| !p.trim().is_empty()).map(str::parse).collect::<Result<Vec<_>, _>>()?;
    if seq.is_empty() {
        return Err(PassError::EmptySequence);
    }
    Ok(seq)
}

pub fn format_pass_sequence(seq: &[PassKind]) -> String {
    seq.iter().map(|p| p.name()).collect::<Vec<_>>().join(",")
}

/// Outcome of one pass execution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PassReport {
    pub pass: PassKind,
    pub gates_removed: usize,
    pub gates_added: usize,
    pub gates_before: usize,
    pub gates_after: usize,
    /// Number of rewrites that fired.
    pub applications: usize,
}

impl PassReport {
    pub(crate) fn new(pass: PassKind, before: usize, after: usize, applications: usize) -> PassReport {
        PassReport {
            pass,
            gates_removed: before.saturating_sub(after),
            gates_added: after.saturating_sub(before),
            gates_before: before,
            gates_after: after,
            applications,
        }
    }

    pub fn changed_count(&self) -> bool {
        self.gates_removed > 0 || self.gates_added > 0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PassConfig {
    sequence: Vec<PassKind>,
    pub max_rounds: usize,
    pub angle_tolerance: f64,
}

impl PassConfig {
    pub fn new(sequence: Vec<PassKind>) -> Result<PassConfig, PassError> {
        PassConfig { sequence, max_rounds: DEFAULT_MAX_ROUNDS, angle_tolerance: DEFAULT_ANGLE_TOLERANCE }.validated()
    }

    pub fn with_max_rounds(mut self, rounds: usize) -> Result<PassConfig, PassError> {
        self.max_rounds = rounds;
        self.validated()
    }

    pub fn with_angle_tolerance(mut self, tol: f64) -> Result<PassConfig, PassError> {
        self.angle_tolerance = tol;
        self.validated()
    }

    fn validated(self) -> Result<PassConfig, PassError> {
        if self.sequence.is_empty() {
            return Err(PassError::EmptySequence);
        }
        if self.max_rounds == 0 {
            return Err(PassError::ZeroRounds);
        }
        if !(self.angle_tolerance.is_finite() && self.angle_tolerance > 0.0) {
            return Err(PassError::BadTolerance);
        }
        Ok(self)
    }

    /// cancel → commute → rotate.
    pub fn best() -> PassConfig {
        PassConfig::new(vec![PassKind::Cancel, PassKind::Commute, PassKind::Rotate]).expect("non-empty")
    }

    /// Runs no passes at all.
    pub fn baseline() -> PassConfig {
        PassConfig { sequence: Vec::new(), max_rounds: DEFAULT_MAX_ROUNDS, angle_tolerance: DEFAULT_ANGLE_TOLERANCE }
    }

    pub fn sequence(&self) -> &[PassKind] {
        &self.sequence
    }

    pub fn label(&self) -> String {
        format_pass_sequence(&self.sequence)
    }
}

impl FromStr for PassConfig {
    type Err = PassError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PassConfig::new(parse_pass_sequence(s)?)
    }
}

/// Runs `cfg.sequence` repeatedly until a full round leaves the gate count
/// untouched or `cfg.max_rounds` is reached.
pub fn run_pipeline(c: &Circuit, cfg: &PassConfig) -> (Circuit, Vec<PassReport>) {
    let mut current = c.clone();
    let mut reports = Vec::new();
    for _ in 0..cfg.max_rounds {
        let mut changed = false;
        for &pass in &cfg.sequence {
            let (next, report) = pass.run(&current, cfg.angle_tolerance);
            changed |= report.changed_count();
            reports.push(report);
            current = next;
        }
        if !changed {
            break;
        }
    }
    (current, reports)
}

/// Reduces an angle to `(-π, π]`.
pub fn wrap_angle(theta: f64) -> f64 {
    use std::f64::consts::{PI, TAU};
    let r = theta.rem_euclid(TAU);
    if r > PI {
        r - TAU
    } else {
        r
    }
}

/// True if `theta` lies within `tol` of a multiple of 2π.
pub fn is_zero_angle(theta: f64, tol: f64) -> bool {
    wrap_angle(theta).abs() <= tol
}
