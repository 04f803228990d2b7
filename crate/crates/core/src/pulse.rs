// Copyright 2026 The qco Authors
// SPDX-License-Identifier: Apache-2.0

//! Lowering to the native `{PRX, CZ, virtual RZ}` set and ASAP scheduling.
//!
//! Single-qubit gates go through a ZXZ Euler decomposition
//! `U ≅ RZ(α)·RX(θ)·RZ(β)` with `θ ∈ [0, π]`. Since
//! `RZ(α)·RX(θ)·RZ(β) = RZ(α+β)·PRX(θ, −β)`, each one costs at most one PRX
//! followed by one zero-duration frame update. `CX` becomes `H·CZ·H` on the
//! target and `SWAP` three alternating `CX`.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::ir::{gate_matrix, Circuit, Gate, GateKind};
use crate::noise::NoiseModel;
use crate::passes::wrap_angle;

/// Below this rotation angle a single-qubit gate lowers to a frame update only.
const EULER_THETA_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum NativeKind {
    #[serde(rename = "prx")]
    Prx,
    #[serde(rename = "cz")]
    Cz,
    #[serde(rename = "virtual_rz")]
    VirtualRz,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NativeOp {
    pub kind: NativeKind,
    pub params: Vec<f64>,
    pub qubits: Vec<usize>,
}

impl NativeOp {
    pub fn prx(theta: f64, phi: f64, q: usize) -> NativeOp {
        NativeOp { kind: NativeKind::Prx, params: vec![theta, phi], qubits: vec![q] }
    }

    pub fn cz(a: usize, b: usize) -> NativeOp {
        NativeOp { kind: NativeKind::Cz, params: Vec::new(), qubits: vec![a, b] }
    }

    pub fn virtual_rz(theta: f64, q: usize) -> NativeOp {
        NativeOp { kind: NativeKind::VirtualRz, params: vec![theta], qubits: vec![q] }
    }

    /// Equivalent IR gate.
    pub fn to_gate(&self) -> Gate {
        match self.kind {
            NativeKind::Prx => Gate::prx(self.params[0], self.params[1], self.qubits[0]),
            NativeKind::Cz => Gate::cz(self.qubits[0], self.qubits[1]),
            NativeKind::VirtualRz => Gate::rz(self.params[0], self.qubits[0]),
        }
    }
}

/// A circuit over the native vocabulary.
#[derive(Debug, Clone, PartialEq)]
pub struct NativeCircuit {
    pub num_qubits: usize,
    pub ops: Vec<NativeOp>,
}

impl NativeCircuit {
    pub fn count(&self, kind: NativeKind) -> usize {
        self.ops.iter().filter(|op| op.kind == kind).count()
    }

    pub fn to_circuit(&self) -> Circuit {
        Circuit::from_gates(self.num_qubits, self.ops.iter().map(NativeOp::to_gate).collect())
            .expect("native ops stay within the source circuit")
    }
}

/// ZXZ Euler angles `(α, θ, β)` with `U ≅ RZ(α)·RX(θ)·RZ(β)`, `θ ∈ [0, π]`.
pub fn zxz_angles(u: &[[Complex64; 2]; 2]) -> (f64, f64, f64) {
    let theta = 2.0 * u[1][0].norm().atan2(u[0][0].norm());
    // arg(U11) − arg(U00) = α + β, arg(U10) − arg(U01) = α − β
    let sum = (u[1][1] * u[0][0].conj()).arg();
    let diff = (u[1][0] * u[0][1].conj()).arg();
    if u[1][0].norm() < EULER_THETA_EPS {
        (sum, 0.0, 0.0)
    } else if u[0][0].norm() < EULER_THETA_EPS {
        (diff, theta, 0.0)
    } else {
        // halving leaves a joint π shift of α and β open, which flips the sign of θ
        let (alpha, beta) = ((sum + diff) / 2.0, (sum - diff) / 2.0);
        let shifted = (wrap_angle(alpha + PI), wrap_angle(beta + PI));
        if zxz_overlap(u, alpha, theta, beta) >= zxz_overlap(u, shifted.0, theta, shifted.1) {
            (alpha, theta, beta)
        } else {
            (shifted.0, theta, shifted.1)
        }
    }
}

/// `|Tr(V†U)|` for `V = RZ(α)·RX(θ)·RZ(β)`.
fn zxz_overlap(u: &[[Complex64; 2]; 2], alpha: f64, theta: f64, beta: f64) -> f64 {
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let ph = |a: f64| Complex64::from_polar(1.0, a / 2.0);
    let v = [
        [ph(-alpha - beta) * c, ph(beta - alpha) * Complex64::new(0.0, -s)],
        [ph(alpha - beta) * Complex64::new(0.0, -s), ph(alpha + beta) * c],
    ];
    let mut tr = Complex64::new(0.0, 0.0);
    for i in 0..2 {
        for j in 0..2 {
            tr += v[i][j].conj() * u[i][j];
        }
    }
    tr.norm()
}

fn push_virtual(ops: &mut Vec<NativeOp>, theta: f64, q: usize) {
    let theta = wrap_angle(theta);
    if theta.abs() > EULER_THETA_EPS {
        ops.push(NativeOp::virtual_rz(theta, q));
    }
}

fn lower_single(g: &Gate, ops: &mut Vec<NativeOp>) {
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
    let q = g.qubits[0];
    let frame = match g.kind {
        GateKind::Rz => Some(g.params[0]),
        GateKind::Z => Some(PI),
        GateKind::S => Some(FRAC_PI_2),
        GateKind::Sdg => Some(-FRAC_PI_2),
        GateKind::T => Some(FRAC_PI_4),
        GateKind::Tdg => Some(-FRAC_PI_4),
        _ => None,
    };
    if let Some(theta) = frame {
        ops.push(NativeOp::virtual_rz(theta, q));
        return;
    }
    if g.kind == GateKind::Prx {
        ops.push(NativeOp::prx(g.params[0], g.params[1], q));
        return;
    }
    let m = gate_matrix(g);
    let (alpha, theta, beta) = zxz_angles(&[[m[[0, 0]], m[[0, 1]]], [m[[1, 0]], m[[1, 1]]]]);
    if theta < EULER_THETA_EPS {
        push_virtual(ops, alpha + beta, q);
    } else {
        ops.push(NativeOp::prx(theta, wrap_angle(-beta), q));
        push_virtual(ops, alpha + beta, q);
    }
}

fn lower_cx(control: usize, target: usize, ops: &mut Vec<NativeOp>) {
    lower_single(&Gate::h(target), ops);
    ops.push(NativeOp::cz(control, target));
    lower_single(&Gate::h(target), ops);
}

/// Rewrites every gate into PRX, CZ and virtual RZ.
pub fn decompose_to_native(c: &Circuit) -> NativeCircuit {
    let mut ops = Vec::with_capacity(c.len() * 2);
    for g in c.gates() {
        match g.kind {
            GateKind::Cz => ops.push(NativeOp::cz(g.qubits[0], g.qubits[1])),
            GateKind::Cx => lower_cx(g.qubits[0], g.qubits[1], &mut ops),
            GateKind::Swap => {
                let (a, b) = (g.qubits[0], g.qubits[1]);
                lower_cx(a, b, &mut ops);
                lower_cx(b, a, &mut ops);
                lower_cx(a, b, &mut ops);
            }
            _ => lower_single(g, &mut ops),
        }
    }
    NativeCircuit { num_qubits: c.num_qubits(), ops }
}

/// Per-kind durations in nanoseconds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Durations {
    pub prx_ns: f64,
    pub cz_ns: f64,
    pub virtual_rz_ns: f64,
}

impl Default for Durations {
    fn default() -> Self {
        Durations { prx_ns: 20.0, cz_ns: 40.0, virtual_rz_ns: 0.0 }
    }
}

impl From<&NoiseModel> for Durations {
    fn from(nm: &NoiseModel) -> Self {
        Durations { prx_ns: nm.dur_1q_ns, cz_ns: nm.dur_2q_ns, virtual_rz_ns: 0.0 }
    }
}

impl Durations {
    pub fn of(&self, kind: NativeKind) -> f64 {
        match kind {
            NativeKind::Prx => self.prx_ns,
            NativeKind::Cz => self.cz_ns,
            NativeKind::VirtualRz => self.virtual_rz_ns,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScheduledOp {
    #[serde(flatten)]
    pub op: NativeOp,
    pub start_ns: f64,
    pub duration_ns: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PulseSchedule {
    pub ops: Vec<ScheduledOp>,
    pub total_duration_ns: f64,
    pub per_qubit_busy_ns: BTreeMap<usize, f64>,
}

impl PulseSchedule {
    pub fn count(&self, kind: NativeKind) -> usize {
        self.ops.iter().filter(|s| s.op.kind == kind).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("schedule serializes")
    }
}

/// As-soon-as-possible schedule honouring per-wire program order.
pub fn schedule(native: &NativeCircuit, durations: &Durations) -> PulseSchedule {
    let mut free_at = vec![0.0f64; native.num_qubits];
    let mut busy: BTreeMap<usize, f64> = BTreeMap::new();
    let mut ops = Vec::with_capacity(native.ops.len());
    let mut total = 0.0f64;
    for op in &native.ops {
        let duration = durations.of(op.kind);
        let start = op.qubits.iter().map(|&q| free_at[q]).fold(0.0, f64::max);
        for &q in &op.qubits {
            free_at[q] = start + duration;
            *busy.entry(q).or_insert(0.0) += duration;
        }
        total = total.max(start + duration);
        ops.push(ScheduledOp { op: op.clone(), start_ns: start, duration_ns: duration });
    }
    PulseSchedule { ops, total_duration_ns: total, per_qubit_busy_ns: busy }
}
