// Copyright 2026 The qco Authors
// SPDX-License-Identifier: Apache-2.0

use std::f64::consts::FRAC_1_SQRT_2;

use ndarray::{Array2, ShapeBuilder};
use num_complex::Complex64;

use super::{Circuit, Gate, GateKind, IrError};

pub type Matrix = Array2<Complex64>;

/// Resource guard for dense unitary construction.
pub const MAX_UNITARY_QUBITS: usize = 12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn rz(theta: f64) -> [[Complex64; 2]; 2] {
    [[Complex64::from_polar(1.0, -theta / 2.0), ZERO], [ZERO, Complex64::from_polar(1.0, theta / 2.0)]]
}

fn single_qubit(gate: &Gate) -> [[Complex64; 2]; 2] {
    let h = FRAC_1_SQRT_2;
    match gate.kind {
        GateKind::H => [[c(h, 0.0), c(h, 0.0)], [c(h, 0.0), c(-h, 0.0)]],
        GateKind::X => [[ZERO, ONE], [ONE, ZERO]],
        GateKind::Y => [[ZERO, -I], [I, ZERO]],
        GateKind::Z => [[ONE, ZERO], [ZERO, -ONE]],
        GateKind::S => [[ONE, ZERO], [ZERO, I]],
        GateKind::Sdg => [[ONE, ZERO], [ZERO, -I]],
        GateKind::T => [[ONE, ZERO], [ZERO, Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4)]],
        GateKind::Tdg => [[ONE, ZERO], [ZERO, Complex64::from_polar(1.0, -std::f64::consts::FRAC_PI_4)]],
        GateKind::Rx => {
            let (s, co) = (gate.params[0] / 2.0).sin_cos();
            [[c(co, 0.0), c(0.0, -s)], [c(0.0, -s), c(co, 0.0)]]
        }
        GateKind::Ry => {
            let (s, co) = (gate.params[0] / 2.0).sin_cos();
            [[c(co, 0.0), c(-s, 0.0)], [c(s, 0.0), c(co, 0.0)]]
        }
        GateKind::Rz => rz(gate.params[0]),
        GateKind::Prx => {
            // RZ(φ)·RX(θ)·RZ(-φ) = [[cos, -i e^{-iφ} sin], [-i e^{iφ} sin, cos]]
            let (s, co) = (gate.params[0] / 2.0).sin_cos();
            let phi = gate.params[1];
            [
                [c(co, 0.0), -I * Complex64::from_polar(s, -phi)],
                [-I * Complex64::from_polar(s, phi), c(co, 0.0)],
            ]
        }
        GateKind::Cx | GateKind::Cz | GateKind::Swap => unreachable!("two-qubit gate"),
    }
}

fn two_qubit(kind: GateKind) -> [[Complex64; 4]; 4] {
    let mut m = [[ZERO; 4]; 4];
    match kind {
        GateKind::Cx => {
            m[0][0] = ONE;
            m[1][1] = ONE;
            m[2][3] = ONE;
            m[3][2] = ONE;
        }
        GateKind::Cz => {
            m[0][0] = ONE;
            m[1][1] = ONE;
            m[2][2] = ONE;
            m[3][3] = -ONE;
        }
        GateKind::Swap => {
            m[0][0] = ONE;
            m[1][2] = ONE;
            m[2][1] = ONE;
            m[3][3] = ONE;
        }
        _ => unreachable!("single-qubit gate"),
    }
    m
}

/// Local matrix of a gate: 2×2, or 4×4 in the `|q_a q_b⟩` basis.
pub fn gate_matrix(gate: &Gate) -> Matrix {
    if gate.is_two_qubit() {
        let m = two_qubit(gate.kind);
        Array2::from_shape_fn((4, 4), |(r, c)| m[r][c])
    } else {
        let m = single_qubit(gate);
        Array2::from_shape_fn((2, 2), |(r, c)| m[r][c])
    }
}

/// Applies `gate` in place to a state vector of length `2^n`.
pub fn apply_gate(state: &mut [Complex64], gate: &Gate) {
    if gate.is_two_qubit() {
        let m = two_qubit(gate.kind);
        let (ma, mb) = (1usize << gate.qubits[0], 1usize << gate.qubits[1]);
        for base in 0..state.len() {
            if base & (ma | mb) != 0 {
                continue;
            }
            let idx = [base, base | mb, base | ma, base | ma | mb];
            let v = idx.map(|i| state[i]);
            for (r, &i) in idx.iter().enumerate() {
                state[i] = m[r][0] * v[0] + m[r][1] * v[1] + m[r][2] * v[2] + m[r][3] * v[3];
            }
        }
    } else {
        let m = single_qubit(gate);
        let mask = 1usize << gate.qubits[0];
        for i0 in 0..state.len() {
            if i0 & mask != 0 {
                continue;
            }
            let i1 = i0 | mask;
            let (a, b) = (state[i0], state[i1]);
            state[i0] = m[0][0] * a + m[0][1] * b;
            state[i1] = m[1][0] * a + m[1][1] * b;
        }
    }
}

fn check_size(c: &Circuit) -> Result<usize, IrError> {
    let n = c.num_qubits();
    if n > MAX_UNITARY_QUBITS {
        return Err(IrError::TooManyQubits { num_qubits: n, limit: MAX_UNITARY_QUBITS });
    }
    Ok(1usize << n)
}

/// Full `2^n × 2^n` unitary of the circuit, gates applied in program order.
pub fn to_unitary(c: &Circuit) -> Result<Matrix, IrError> {
    let dim = check_size(c)?;
    // column-major: each basis column is evolved independently
    let mut data = vec![ZERO; dim * dim];
    for (j, col) in data.chunks_mut(dim).enumerate() {
        col[j] = ONE;
        for g in c.gates() {
            apply_gate(col, g);
        }
    }
    Ok(Array2::from_shape_vec((dim, dim).f(), data).expect("shape matches data length"))
}

/// Output state for input `|0…0⟩`.
pub fn simulate_statevector(c: &Circuit) -> Result<Vec<Complex64>, IrError> {
    let dim = check_size(c)?;
    let mut state = vec![ZERO; dim];
    state[0] = ONE;
    for g in c.gates() {
        apply_gate(&mut state, g);
    }
    Ok(state)
}
