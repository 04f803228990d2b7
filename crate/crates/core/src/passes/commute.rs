// Copyright 2026 The qco Authors
// SPDX-License-Identifier: Apache-2.0

//! Commutation rules and the reordering pass built on them.
//!
//! The rule table is sound but deliberately incomplete. Two gates commute
//! when:
//!
//! * they act on disjoint qubits;
//! * both are diagonal (`Z S Sdg T Tdg RZ CZ`);
//! * a single-qubit diagonal gate sits on the control of a `CX`;
//! * an `X` or `RX` sits on the target of a `CX`;
//! * an `X` or `RX` meets a `PRX` with phase 0.
//!
//! Anything else is treated as non-commuting.

use crate::ir::{Circuit, Gate, GateKind};

use super::{is_zero_angle, PassKind, PassReport};

fn is_x_like(kind: GateKind) -> bool {
    matches!(kind, GateKind::X | GateKind::Rx)
}

fn one_sided(a: &Gate, b: &Gate, tol: f64) -> bool {
    match (a.kind, b.kind) {
        (k, GateKind::Cx) if a.qubits.len() == 1 && k.is_diagonal() => a.qubits[0] == b.qubits[0],
        (k, GateKind::Cx) if is_x_like(k) => a.qubits[0] == b.qubits[1],
        (k, GateKind::Prx) if is_x_like(k) => is_zero_angle(b.params[1], tol),
        _ => false,
    }
}

/// Rule-table commutation check.
pub fn commutes(a: &Gate, b: &Gate, tol: f64) -> bool {
    if !a.shares_qubit(b) {
        return true;
    }
    if a.kind.is_diagonal() && b.kind.is_diagonal() {
        return true;
    }
    one_sided(a, b, tol) || one_sided(b, a, tol)
}

/// A gate that `cancel` or `rotate` could combine with `g` if adjacent.
fn is_partner(prev: &Gate, g: &Gate) -> bool {
    use GateKind::*;
    prev.qubits == g.qubits
        && (prev.kind == g.kind || matches!((prev.kind, g.kind), (S, Sdg) | (Sdg, S) | (T, Tdg) | (Tdg, T)))
}

/// Moves every gate as early as the rule table allows.
///
/// Each gate slides left over commuting predecessors. It stops next to a
/// same-kind partner on the same operands when one is reachable, which makes
/// cancellation and merging opportunities adjacent. Otherwise it lands just
/// before the earliest commuting gate it shares a qubit with, so gates are
/// never shuffled past unrelated wires for nothing. Gate count never changes.
pub fn commute_pass(c: &Circuit, tol: f64) -> (Circuit, PassReport) {
    let mut out: Vec<Gate> = Vec::with_capacity(c.len());
    let mut moved = 0;
    for g in c.gates() {
        let mut pos = out.len();
        let mut partner = None;
        while pos > 0 {
            let prev = &out[pos - 1];
            if !commutes(prev, g, tol) {
                break;
            }
            if is_partner(prev, g) {
                partner = Some(pos);
                break;
            }
            pos -= 1;
        }
        let at = partner.unwrap_or_else(|| {
            out[pos..].iter().position(|h| h.shares_qubit(g)).map_or(out.len(), |i| pos + i)
        });
        if at != out.len() {
            moved += 1;
        }
        out.insert(at, g.clone());
    }
    let out = c.with_gates_unchecked(out);
    let report = PassReport::new(PassKind::Commute, c.len(), out.len(), moved);
    (out, report)
}
