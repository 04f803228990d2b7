// Copyright 2026 The qco Authors
// SPDX-License-Identifier: Apache-2.0

//! Circuit intermediate representation.
//!
//! A [`Circuit`] is an ordered list of [`Gate`]s over `num_qubits` wires. Gate
//! order is program order: the first gate is applied to the state first.
//!
//! Matrix conventions used throughout the crate:
//!
//! * `RZ(θ) = diag(e^{-iθ/2}, e^{iθ/2})`, `RX(θ) = exp(-iθX/2)`,
//!   `RY(θ) = exp(-iθY/2)`.
//! * `PRX(θ, φ) = RZ(φ)·RX(θ)·RZ(-φ)`, the phased-X rotation.
//! * Qubit 0 is the least-significant bit of a basis-state index.
//! * A two-qubit gate with operands `[a, b]` is written in the local basis
//!   `|q_a q_b⟩`, so `CX` with operands `[control, target]` has the textbook
//!   matrix.

mod dag;
mod unitary;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use dag::{build_dag, CircuitDag};
pub use unitary::{apply_gate, gate_matrix, simulate_statevector, to_unitary, Matrix, MAX_UNITARY_QUBITS};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IrError {
    #[error("{kind} expects {expected} parameter(s), got {got}")]
    ParamArity { kind: GateKind, expected: usize, got: usize },
    #[error("{kind} acts on {expected} qubit(s), got {got}")]
    QubitArity { kind: GateKind, expected: usize, got: usize },
    #[error("duplicate qubit operand {0}")]
    DuplicateQubit(usize),
    #[error("qubit {qubit} out of range for a {num_qubits}-qubit circuit")]
    QubitOutOfRange { qubit: usize, num_qubits: usize },
    #[error("circuit must have at least one qubit")]
    NoQubits,
    #[error("non-finite gate parameter")]
    NonFiniteParam,
    #[error("unitary construction limited to {limit} qubits, circuit has {num_qubits}")]
    TooManyQubits { num_qubits: usize, limit: usize },
}

/// Gate vocabulary shared by every stage.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GateKind {
    H,
    X,
    Y,
    Z,
    S,
    Sdg,
    T,
    Tdg,
    Rx,
    Ry,
    Rz,
    Prx,
    Cx,
    Cz,
    Swap,
}

impl GateKind {
    pub const ALL: [GateKind; 15] = [
        GateKind::H,
        GateKind::X,
        GateKind::Y,
        GateKind::Z,
        GateKind::S,
        GateKind::Sdg,
        GateKind::T,
        GateKind::Tdg,
        GateKind::Rx,
        GateKind::Ry,
        GateKind::Rz,
        GateKind::Prx,
        GateKind::Cx,
        GateKind::Cz,
        GateKind::Swap,
    ];

    pub fn num_params(self) -> usize {
        match self {
            GateKind::Rx | GateKind::Ry | GateKind::Rz => 1,
            GateKind::Prx => 2,
            _ => 0,
        }
    }

    pub fn num_qubits(self) -> usize {
        match self {
            GateKind::Cx | GateKind::Cz | GateKind::Swap => 2,
            _ => 1,
        }
    }

    /// Lowercase OpenQASM name.
    pub fn name(self) -> &'static str {
        match self {
            GateKind::H => "h",
            GateKind::X => "x",
            GateKind::Y => "y",
            GateKind::Z => "z",
            GateKind::S => "s",
            GateKind::Sdg => "sdg",
            GateKind::T => "t",
            GateKind::Tdg => "tdg",
            GateKind::Rx => "rx",
            GateKind::Ry => "ry",
            GateKind::Rz => "rz",
            GateKind::Prx => "prx",
            GateKind::Cx => "cx",
            GateKind::Cz => "cz",
            GateKind::Swap => "swap",
        }
    }

    pub fn from_name(name: &str) -> Option<GateKind> {
        GateKind::ALL.into_iter().find(|k| k.name() == name)
    }

    /// Gates whose matrix is diagonal in the computational basis.
    pub fn is_diagonal(self) -> bool {
        matches!(
            self,
            GateKind::Z
                | GateKind::S
                | GateKind::Sdg
                | GateKind::T
                | GateKind::Tdg
                | GateKind::Rz
                | GateKind::Cz
        )
    }

    pub fn is_rotation(self) -> bool {
        matches!(self, GateKind::Rx | GateKind::Ry | GateKind::Rz)
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Gate {
    pub kind: GateKind,
    pub params: Vec<f64>,
    pub qubits: Vec<usize>,
}

impl Gate {
    /// Builds a gate, checking parameter and operand arity.
    pub fn new(kind: GateKind, params: Vec<f64>, qubits: Vec<usize>) -> Result<Gate, IrError> {
        if params.len() != kind.num_params() {
            return Err(IrError::ParamArity { kind, expected: kind.num_params(), got: params.len() });
        }
        if qubits.len() != kind.num_qubits() {
            return Err(IrError::QubitArity { kind, expected: kind.num_qubits(), got: qubits.len() });
        }
        if qubits.len() == 2 && qubits[0] == qubits[1] {
            return Err(IrError::DuplicateQubit(qubits[0]));
        }
        if params.iter().any(|p| !p.is_finite()) {
            return Err(IrError::NonFiniteParam);
        }
        Ok(Gate { kind, params, qubits })
    }

    fn fixed(kind: GateKind, qubit: usize) -> Gate {
        Gate { kind, params: Vec::new(), qubits: vec![qubit] }
    }

    fn pair(kind: GateKind, a: usize, b: usize) -> Gate {
        assert_ne!(a, b, "two-qubit gate on a single qubit");
        Gate { kind, params: Vec::new(), qubits: vec![a, b] }
    }

    pub fn h(q: usize) -> Gate {
        Gate::fixed(GateKind::H, q)
    }
    pub fn x(q: usize) -> Gate {
        Gate::fixed(GateKind::X, q)
    }
    pub fn y(q: usize) -> Gate {
        Gate::fixed(GateKind::Y, q)
    }
    pub fn z(q: usize) -> Gate {
        Gate::fixed(GateKind::Z, q)
    }
    pub fn s(q: usize) -> Gate {
        Gate::fixed(GateKind::S, q)
    }
    pub fn sdg(q: usize) -> Gate {
        Gate::fixed(GateKind::Sdg, q)
    }
    pub fn t(q: usize) -> Gate {
        Gate::fixed(GateKind::T, q)
    }
    pub fn tdg(q: usize) -> Gate {
        Gate::fixed(GateKind::Tdg, q)
    }
    pub fn rx(theta: f64, q: usize) -> Gate {
        Gate { kind: GateKind::Rx, params: vec![theta], qubits: vec![q] }
    }
    pub fn ry(theta: f64, q: usize) -> Gate {
        Gate { kind: GateKind::Ry, params: vec![theta], qubits: vec![q] }
    }
    pub fn rz(theta: f64, q: usize) -> Gate {
        Gate { kind: GateKind::Rz, params: vec![theta], qubits: vec![q] }
    }
    pub fn prx(theta: f64, phi: f64, q: usize) -> Gate {
        Gate { kind: GateKind::Prx, params: vec![theta, phi], qubits: vec![q] }
    }
    pub fn cx(control: usize, target: usize) -> Gate {
        Gate::pair(GateKind::Cx, control, target)
    }
    pub fn cz(a: usize, b: usize) -> Gate {
        Gate::pair(GateKind::Cz, a, b)
    }
    pub fn swap(a: usize, b: usize) -> Gate {
        Gate::pair(GateKind::Swap, a, b)
    }

    pub fn is_two_qubit(&self) -> bool {
        self.qubits.len() == 2
    }

    pub fn acts_on(&self, q: usize) -> bool {
        self.qubits.contains(&q)
    }

    pub fn shares_qubit(&self, other: &Gate) -> bool {
        self.qubits.iter().any(|q| other.acts_on(*q))
    }

    /// Copy of the gate with operands relabelled through `map`.
    pub fn remapped(&self, map: impl Fn(usize) -> usize) -> Gate {
        Gate { kind: self.kind, params: self.params.clone(), qubits: self.qubits.iter().map(|&q| map(q)).collect() }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        if !self.params.is_empty() {
            let ps: Vec<String> = self.params.iter().map(|p| format!("{p}")).collect();
            write!(f, "({})", ps.join(", "))?;
        }
        let qs: Vec<String> = self.qubits.iter().map(|q| format!("q{q}")).collect();
        write!(f, " {}", qs.join(", "))
    }
}

/// Ordered gate list over `num_qubits` wires.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    num_qubits: usize,
    gates: Vec<Gate>,
    pub name: String,
}

impl Circuit {
    pub fn new(num_qubits: usize) -> Result<Circuit, IrError> {
        if num_qubits == 0 {
            return Err(IrError::NoQubits);
        }
        Ok(Circuit { num_qubits, gates: Vec::new(), name: String::new() })
    }

    pub fn from_gates(num_qubits: usize, gates: Vec<Gate>) -> Result<Circuit, IrError> {
        let mut c = Circuit::new(num_qubits)?;
        c.gates.reserve(gates.len());
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Circuit {
        self.name = name.into();
        self
    }

    /// Appends a gate after validating it against this circuit.
    pub fn push(&mut self, gate: Gate) -> Result<(), IrError> {
        let gate = Gate::new(gate.kind, gate.params, gate.qubits)?;
        if let Some(&q) = gate.qubits.iter().find(|&&q| q >= self.num_qubits) {
            return Err(IrError::QubitOutOfRange { qubit: q, num_qubits: self.num_qubits });
        }
        self.gates.push(gate);
        Ok(())
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Same wires and name, different gate list. Gates are assumed valid for
    /// this circuit, which holds for every rewrite that only drops, reorders
    /// or re-parameterizes existing gates.
    pub(crate) fn with_gates_unchecked(&self, gates: Vec<Gate>) -> Circuit {
        debug_assert!(gates.iter().all(|g| g.qubits.iter().all(|&q| q < self.num_qubits)));
        Circuit { num_qubits: self.num_qubits, gates, name: self.name.clone() }
    }

    /// Number of ASAP layers with unit-duration gates.
    pub fn depth(&self) -> usize {
        depth(self)
    }

    pub fn gate_counts(&self) -> GateCounts {
        gate_counts(self)
    }

    /// Qubits touched by at least one gate, ascending.
    pub fn active_qubits(&self) -> Vec<usize> {
        let mut used = vec![false; self.num_qubits];
        for g in &self.gates {
            for &q in &g.qubits {
                used[q] = true;
            }
        }
        used.iter().enumerate().filter_map(|(q, &u)| u.then_some(q)).collect()
    }
}

pub fn depth(c: &Circuit) -> usize {
    let mut level = vec![0usize; c.num_qubits];
    let mut depth = 0;
    for g in &c.gates {
        let l = g.qubits.iter().map(|&q| level[q]).max().unwrap_or(0) + 1;
        for &q in &g.qubits {
            level[q] = l;
        }
        depth = depth.max(l);
    }
    depth
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct GateCounts {
    pub total: usize,
    pub two_qubit: usize,
    pub per_kind: BTreeMap<GateKind, usize>,
}

pub fn gate_counts(c: &Circuit) -> GateCounts {
    let mut counts = GateCounts { total: c.gates.len(), ..Default::default() };
    for g in &c.gates {
        if g.is_two_qubit() {
            counts.two_qubit += 1;
        }
        *counts.per_kind.entry(g.kind).or_insert(0) += 1;
    }
    counts
}
