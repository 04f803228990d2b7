// Copyright 2026 The qco Authors
// SPDX-License-Identifier: Apache-2.0

#![allow(dead_code)]

use std::f64::consts::PI;

use num_complex::Complex64;
use qco_core::ir::{to_unitary, Matrix};
use qco_core::noise::process_fidelity_exact;
use qco_core::{Circuit, Gate, GateKind};
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

pub struct TestRng(SplitMix64);

impl TestRng {
    pub fn new(seed: u64) -> TestRng {
        TestRng(SplitMix64::seed_from_u64(seed ^ 0x5eed_cafe))
    }

    pub fn below(&mut self, k: usize) -> usize {
        (self.0.next_u64() % k as u64) as usize
    }

    pub fn unit(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.unit() < p
    }
}

fn angle(rng: &mut TestRng) -> f64 {
    match rng.below(4) {
        0 => (rng.below(17) as f64 - 8.0) * PI / 4.0,
        1 => 0.0,
        _ => (rng.unit() - 0.5) * 4.0 * PI,
    }
}

pub fn inverse(g: &Gate) -> Gate {
    use GateKind::*;
    match g.kind {
        S => Gate::sdg(g.qubits[0]),
        Sdg => Gate::s(g.qubits[0]),
        T => Gate::tdg(g.qubits[0]),
        Tdg => Gate::t(g.qubits[0]),
        Rx | Ry | Rz => Gate::new(g.kind, vec![-g.params[0]], g.qubits.clone()).unwrap(),
        Prx => Gate::prx(-g.params[0], g.params[1], g.qubits[0]),
        _ => g.clone(),
    }
}

/// Random circuit over every gate kind, biased toward patterns the passes
/// rewrite: inverse pairs, repeated axes and zero angles.
pub fn random_circuit(rng: &mut TestRng, max_qubits: usize, max_gates: usize) -> Circuit {
    let n = 1 + rng.below(max_qubits);
    let len = rng.below(max_gates + 1);
    let mut gates: Vec<Gate> = Vec::with_capacity(len);
    while gates.len() < len {
        if let Some(prev) = gates.last() {
            if rng.chance(0.25) {
                let g = inverse(prev);
                gates.push(g);
                continue;
            }
            if prev.kind.is_rotation() && rng.chance(0.15) {
                let mut g = prev.clone();
                g.params[0] = angle(rng);
                gates.push(g);
                continue;
            }
        }
        let kinds: Vec<GateKind> = GateKind::ALL.iter().copied().filter(|k| k.num_qubits() <= n).collect();
        let kind = kinds[rng.below(kinds.len())];
        let a = rng.below(n);
        let qubits = if kind.num_qubits() == 2 {
            let b = (a + 1 + rng.below(n - 1)) % n;
            vec![a, b]
        } else {
            vec![a]
        };
        let params = (0..kind.num_params()).map(|_| angle(rng)).collect();
        gates.push(Gate::new(kind, params, qubits).unwrap());
    }
    Circuit::from_gates(n, gates).unwrap()
}

pub fn fidelity(a: &Circuit, b: &Circuit) -> f64 {
    let ua = to_unitary(a).unwrap();
    let ub = to_unitary(b).unwrap();
    process_fidelity_exact(&ua, &ub).unwrap()
}

/// Unitary of the relabelling `|x⟩ ↦ |x'⟩` with bit `map[l]` of `x'` equal to bit `l` of `x`.
pub fn permutation_matrix(map: &[usize]) -> Matrix {
    let n = map.len();
    let d = 1usize << n;
    let mut m = Matrix::zeros((d, d));
    for x in 0..d {
        let mut y = 0;
        for (l, &p) in map.iter().enumerate() {
            if x >> l & 1 == 1 {
                y |= 1 << p;
            }
        }
        m[[y, x]] = Complex64::new(1.0, 0.0);
    }
    m
}

/// Same circuit padded with idle wires up to `n` qubits.
pub fn widen(c: &Circuit, n: usize) -> Circuit {
    Circuit::from_gates(n, c.gates().to_vec()).unwrap()
}
