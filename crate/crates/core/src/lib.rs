// Copyright 2026 The qco Authors
// SPDX-License-Identifier: Apache-2.0

//! End-to-end quantum circuit compilation and fidelity estimation.
//!
//! Circuits flow through five stages, each a module of this crate:
//!
//! 1. [`qasm`] parses an OpenQASM 3.0 subset into an [`ir::Circuit`].
//! 2. [`passes`] applies gate cancellation, commutation, rotation merging and
//!    identity elimination.
//! 3. [`route`] maps logical qubits onto a coupling graph with SABRE-style
//!    SWAP insertion.
//! 4. [`pulse`] lowers to the `{PRX, CZ, virtual RZ}` native set and builds an
//!    ASAP schedule.
//! 5. [`noise`] estimates process and state fidelity under T1/T2 decay and
//!    per-gate error rates.
//!
//! [`corpus`] generates the benchmark circuit families and [`campaign`] runs
//! the experiment matrix over them, producing deterministic reports.

pub mod campaign;
pub mod corpus;
pub mod ir;
pub mod noise;
pub mod parallel;
pub mod passes;
pub mod pulse;
pub mod qasm;
pub mod route;

pub use ir::{Circuit, Gate, GateKind};
pub use noise::NoiseModel;
pub use passes::{PassConfig, PassKind, PassReport};
pub use route::{Layout, Topology};
