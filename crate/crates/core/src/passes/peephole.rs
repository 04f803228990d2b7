// Copyright 2026 The qco Authors
// SPDX-License-Identifier: Apache-2.0

//! Cancellation, rotation merging and identity elimination.
//!
//! Cancellation and merging walk the circuit once while keeping, per wire, a
//! stack of the surviving gates on that wire. A new gate is compared against
//! the top of its wires' stacks; when a pair annihilates, popping exposes the
//! previous gates so cascades like `X H H X` collapse in the same sweep,
//! which leaves the output at a local fixpoint.

use crate::ir::{Circuit, Gate, GateKind};

use super::{is_zero_angle, wrap_angle, PassKind, PassReport};

/// True if `b` undoes `a` (up to global phase) on the same operand list.
pub fn is_inverse_pair(a: &Gate, b: &Gate, tol: f64) -> bool {
    use GateKind::*;
    if a.qubits != b.qubits {
        return false;
    }
    match (a.kind, b.kind) {
        (H, H) | (X, X) | (Y, Y) | (Z, Z) | (Cx, Cx) | (Cz, Cz) | (Swap, Swap) => true,
        (S, Sdg) | (Sdg, S) | (T, Tdg) | (Tdg, T) => true,
        (Rx, Rx) | (Ry, Ry) | (Rz, Rz) => is_zero_angle(a.params[0] + b.params[0], tol),
        (Prx, Prx) => is_zero_angle(a.params[1] - b.params[1], tol) && is_zero_angle(a.params[0] + b.params[0], tol),
        _ => false,
    }
}

/// Surviving gates plus, per wire, the indices of live gates on that wire.
struct WireStacks {
    out: Vec<Option<Gate>>,
    stacks: Vec<Vec<usize>>,
}

impl WireStacks {
    fn new(num_qubits: usize, capacity: usize) -> Self {
        WireStacks { out: Vec::with_capacity(capacity), stacks: vec![Vec::new(); num_qubits] }
    }

    /// Index of the gate that is on top of every wire `g` touches, if any.
    fn common_top(&self, g: &Gate) -> Option<usize> {
        let first = *self.stacks[g.qubits[0]].last()?;
        g.qubits[1..].iter().all(|&q| self.stacks[q].last() == Some(&first)).then_some(first)
    }

    fn push(&mut self, g: Gate) {
        let idx = self.out.len();
        for &q in &g.qubits {
            self.stacks[q].push(idx);
        }
        self.out.push(Some(g));
    }

    fn remove_top(&mut self, idx: usize) {
        let g = self.out[idx].take().expect("live gate");
        for &q in &g.qubits {
            let popped = self.stacks[q].pop();
            debug_assert_eq!(popped, Some(idx));
        }
    }

    fn finish(self) -> Vec<Gate> {
        self.out.into_iter().flatten().collect()
    }
}

/// Removes wire-adjacent inverse pairs.
pub fn cancel_pass(c: &Circuit, tol: f64) -> (Circuit, PassReport) {
    let mut ws = WireStacks::new(c.num_qubits(), c.len());
    let mut pairs = 0;
    for g in c.gates() {
        if let Some(top) = ws.common_top(g) {
            let prev = ws.out[top].as_ref().expect("stack entries are live");
            if is_inverse_pair(prev, g, tol) {
                ws.remove_top(top);
                pairs += 1;
                continue;
            }
        }
        ws.push(g.clone());
    }
    let out = c.with_gates_unchecked(ws.finish());
    let report = PassReport::new(PassKind::Cancel, c.len(), out.len(), pairs);
    (out, report)
}

/// Merges wire-adjacent same-axis rotations, dropping merged rotations whose
/// angle is zero modulo 2π.
pub fn rotate_pass(c: &Circuit, tol: f64) -> (Circuit, PassReport) {
    let mut ws = WireStacks::new(c.num_qubits(), c.len());
    let mut merges = 0;
    for g in c.gates() {
        if g.kind.is_rotation() {
            if let Some(top) = ws.common_top(g) {
                let prev = ws.out[top].as_mut().expect("stack entries are live");
                if prev.kind == g.kind {
                    merges += 1;
                    let merged = wrap_angle(prev.params[0] + g.params[0]);
                    if is_zero_angle(merged, tol) {
                        ws.remove_top(top);
                    } else {
                        prev.params[0] = merged;
                    }
                    continue;
                }
            }
        }
        ws.push(g.clone());
    }
    let out = c.with_gates_unchecked(ws.finish());
    let report = PassReport::new(PassKind::Rotate, c.len(), out.len(), merges);
    (out, report)
}

fn is_identity_gate(g: &Gate, tol: f64) -> bool {
    match g.kind {
        GateKind::Rx | GateKind::Ry | GateKind::Rz | GateKind::Prx => is_zero_angle(g.params[0], tol),
        _ => false,
    }
}

/// Drops rotations (including PRX) by a multiple of 2π.
pub fn identity_pass(c: &Circuit, tol: f64) -> (Circuit, PassReport) {
    let gates: Vec<Gate> = c.gates().iter().filter(|g| !is_identity_gate(g, tol)).cloned().collect();
    let removed = c.len() - gates.len();
    let out = c.with_gates_unchecked(gates);
    let report = PassReport::new(PassKind::Identity, c.len(), out.len(), removed);
    (out, report)
}
