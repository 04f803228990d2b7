// Copyright 2026 The qco Authors
// SPDX-License-Identifier: Apache-2.0

//! Deterministic benchmark circuit generators.
//!
//! # Random number generation
//!
//! All randomness comes from SplitMix64 seeded with the 64-bit seed as its
//! initial state. Each draw advances the state by `0x9e3779b97f4a7c15` and
//! mixes it:
//!
//! ```text
//! z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9
//! z = (z ^ (z >> 27)) * 0x94d049bb133111eb
//! z ^ (z >> 31)
//! ```
//!
//! (wrapping arithmetic). Derived draws are:
//!
//! * uniform in `[0, 1)`: `(next >> 11) · 2⁻⁵³`;
//! * uniform in `(0, 1)`: `((next >> 11) + 0.5) · 2⁻⁵³`;
//! * choice among `k`: `next % k`;
//! * coin: `next >> 63`.
//!
//! A port that reproduces these draws in the order documented on each
//! generator reproduces the corpus bit for bit.

use std::f64::consts::PI;

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ir::{Circuit, Gate};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CorpusError {
    #[error("{family} needs at least {min} qubits, got {got}")]
    TooFewQubits { family: Family, min: usize, got: usize },
    #[error("invalid edge ({0}, {1}) for {2} vertices")]
    InvalidEdge(usize, usize, usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("random circuits need at least one layer")]
    ZeroLayers,
    #[error("{0} outside the supported range (pass the override flag to allow it)")]
    OutOfRange(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Ghz,
    Qft,
    Qaoa,
    Random,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Ghz, Family::Qft, Family::Qaoa, Family::Random];

    pub fn name(self) -> &'static str {
        match self {
            Family::Ghz => "ghz",
            Family::Qft => "qft",
            Family::Qaoa => "qaoa",
            Family::Random => "random",
        }
    }

    /// Family encoded in a generated circuit name, e.g. `qft_4q`.
    pub fn from_circuit_name(name: &str) -> Option<Family> {
        let prefix = name.split('_').next()?;
        Family::ALL.into_iter().find(|f| f.name() == prefix)
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().to_ascii_lowercase();
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown family `{s}` (expected ghz, qft, qaoa or random)"))
    }
}

/// SplitMix64 with the derived draws documented at module level.
#[derive(Debug, Clone)]
pub struct CorpusRng(SplitMix64);

impl CorpusRng {
    pub fn new(seed: u64) -> CorpusRng {
        CorpusRng(SplitMix64::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * f64::powi(2.0, -53)
    }

    pub fn uniform_open(&mut self) -> f64 {
        ((self.next_u64() >> 11) as f64 + 0.5) * f64::powi(2.0, -53)
    }

    pub fn choice(&mut self, k: usize) -> usize {
        (self.next_u64() % k as u64) as usize
    }

    pub fn coin(&mut self) -> bool {
        self.next_u64() >> 63 == 1
    }
}

fn require_qubits(family: Family, n: usize) -> Result<(), CorpusError> {
    if n < 2 {
        return Err(CorpusError::TooFewQubits { family, min: 2, got: n });
    }
    Ok(())
}

fn build(n: usize, gates: Vec<Gate>, name: String) -> Circuit {
    Circuit::from_gates(n, gates).expect("generator emits valid gates").with_name(name)
}

/// `H q0` followed by the chain `CX q_i q_{i+1}`.
pub fn gen_ghz(n: usize) -> Result<Circuit, CorpusError> {
    require_qubits(Family::Ghz, n)?;
    let mut gates = vec![Gate::h(0)];
    gates.extend((0..n - 1).map(|i| Gate::cx(i, i + 1)));
    Ok(build(n, gates, format!("ghz_{n}q")))
}

/// QFT without the final reversal swaps. Each controlled phase `CP(θ)` from
/// `c` to `t` is expanded to `RZ(θ/2) c, CX c t, RZ(−θ/2) t, CX c t, RZ(θ/2) t`.
pub fn gen_qft(n: usize) -> Result<Circuit, CorpusError> {
    require_qubits(Family::Qft, n)?;
    let mut gates = Vec::with_capacity(n + 5 * n * (n - 1) / 2);
    for j in 0..n {
        gates.push(Gate::h(j));
        for k in j + 1..n {
            let theta = PI / f64::powi(2.0, (k - j) as i32);
            gates.extend([
                Gate::rz(theta / 2.0, k),
                Gate::cx(k, j),
                Gate::rz(-theta / 2.0, j),
                Gate::cx(k, j),
                Gate::rz(theta / 2.0, j),
            ]);
        }
    }
    Ok(build(n, gates, format!("qft_{n}q")))
}

pub fn ring_edges(n: usize) -> Vec<(usize, usize)> {
    match n {
        0 | 1 => vec![],
        2 => vec![(0, 1)],
        _ => (0..n).map(|i| (i, (i + 1) % n)).collect(),
    }
}

fn check_edges(n: usize, edges: &[(usize, usize)]) -> Result<(), CorpusError> {
    let mut seen = std::collections::BTreeSet::new();
    for &(a, b) in edges {
        if a == b || a >= n || b >= n {
            return Err(CorpusError::InvalidEdge(a, b, n));
        }
        if !seen.insert((a.min(b), a.max(b))) {
            return Err(CorpusError::DuplicateEdge(a, b));
        }
    }
    Ok(())
}

/// One-level MaxCut QAOA. Draws `γ` then `β`, both uniform in `(0, π)`.
pub fn gen_qaoa(n: usize, edges: &[(usize, usize)], seed: u64) -> Result<Circuit, CorpusError> {
    require_qubits(Family::Qaoa, n)?;
    check_edges(n, edges)?;
    let mut rng = CorpusRng::new(seed);
    let gamma = PI * rng.uniform_open();
    let beta = PI * rng.uniform_open();
    let mut gates: Vec<Gate> = (0..n).map(Gate::h).collect();
    for &(a, b) in edges {
        gates.extend([Gate::cx(a, b), Gate::rz(gamma, b), Gate::cx(a, b)]);
    }
    gates.extend((0..n).map(|q| Gate::rx(beta, q)));
    let name = if edges == ring_edges(n).as_slice() {
        format!("qaoa_ring{n}_s{seed}")
    } else {
        format!("qaoa_{n}q_e{}_s{seed}", edges.len())
    };
    Ok(build(n, gates, name))
}

/// Layered random circuit.
///
/// Per layer, for each qubit in index order: an axis draw (`choice(3)`: RX,
/// RY, RZ) then an angle draw (`2π · uniform`). Then the adjacent pairs
/// `(i, i+1)` are shuffled by Fisher–Yates (`j = choice(i+1)` for `i` from
/// the last position down to 1) and taken greedily when both ends are free,
/// which yields a random maximal matching. Finally each taken pair, in
/// ascending order of its lower index, draws a coin: CX (false) or CZ (true),
/// with the lower index as control.
pub fn gen_random(n: usize, layers: usize, seed: u64) -> Result<Circuit, CorpusError> {
    require_qubits(Family::Random, n)?;
    if layers == 0 {
        return Err(CorpusError::ZeroLayers);
    }
    let mut rng = CorpusRng::new(seed);
    let mut gates = Vec::new();
    for _ in 0..layers {
        for q in 0..n {
            let axis = rng.choice(3);
            let angle = 2.0 * PI * rng.uniform();
            gates.push(match axis {
                0 => Gate::rx(angle, q),
                1 => Gate::ry(angle, q),
                _ => Gate::rz(angle, q),
            });
        }
        let mut order: Vec<usize> = (0..n - 1).collect();
        for i in (1..order.len()).rev() {
            let j = rng.choice(i + 1);
            order.swap(i, j);
        }
        let mut used = vec![false; n];
        let mut taken = Vec::new();
        for lo in order {
            if !used[lo] && !used[lo + 1] {
                used[lo] = true;
                used[lo + 1] = true;
                taken.push(lo);
            }
        }
        taken.sort_unstable();
        for lo in taken {
            gates.push(if rng.coin() { Gate::cz(lo, lo + 1) } else { Gate::cx(lo, lo + 1) });
        }
    }
    Ok(build(n, gates, format!("random_n{n}_l{layers}_s{seed}")))
}

/// Parameters for one generated circuit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSpec {
    pub family: Family,
    pub qubits: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth_layers: Option<usize>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph_edges: Option<Vec<(usize, usize)>>,
}

impl CorpusSpec {
    pub fn new(family: Family, qubits: usize) -> CorpusSpec {
        CorpusSpec { family, qubits, depth_layers: None, seed: 0, graph_edges: None }
    }

    pub fn with_layers(mut self, layers: usize) -> CorpusSpec {
        self.depth_layers = Some(layers);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> CorpusSpec {
        self.seed = seed;
        self
    }

    pub fn with_edges(mut self, edges: Vec<(usize, usize)>) -> CorpusSpec {
        self.graph_edges = Some(edges);
        self
    }

    /// Qubit range accepted without the override flag.
    pub fn qubit_range(family: Family) -> std::ops::RangeInclusive<usize> {
        match family {
            Family::Ghz => 2..=12,
            Family::Qft => 2..=8,
            Family::Qaoa => 2..=12,
            Family::Random => 4..=8,
        }
    }

    pub const LAYER_RANGE: std::ops::RangeInclusive<usize> = 5..=30;
    pub const DEFAULT_LAYERS: usize = 10;

    pub fn layers(&self) -> usize {
        self.depth_layers.unwrap_or(CorpusSpec::DEFAULT_LAYERS)
    }

    pub fn validate(&self, allow_out_of_range: bool) -> Result<(), CorpusError> {
        if allow_out_of_range {
            return Ok(());
        }
        let range = CorpusSpec::qubit_range(self.family);
        if !range.contains(&self.qubits) {
            return Err(CorpusError::OutOfRange(format!(
                "{} qubit count {} (supported {}–{})",
                self.family,
                self.qubits,
                range.start(),
                range.end()
            )));
        }
        if self.family == Family::Random && !CorpusSpec::LAYER_RANGE.contains(&self.layers()) {
            return Err(CorpusError::OutOfRange(format!("layer count {} (supported 5–30)", self.layers())));
        }
        Ok(())
    }

    pub fn generate(&self, allow_out_of_range: bool) -> Result<Circuit, CorpusError> {
        self.validate(allow_out_of_range)?;
        match self.family {
            Family::Ghz => gen_ghz(self.qubits),
            Family::Qft => gen_qft(self.qubits),
            Family::Qaoa => {
                let edges = self.graph_edges.clone().unwrap_or_else(|| ring_edges(self.qubits));
                gen_qaoa(self.qubits, &edges, self.seed)
            }
            Family::Random => gen_random(self.qubits, self.layers(), self.seed),
        }
    }
}

pub const DEFAULT_SEED: u64 = 0;

/// Specs of the default benchmark corpus; seeds are offset from `base_seed`.
///
/// GHZ 2–12, QFT 2–8, QAOA rings 4–8 × 3 seeds, random n ∈ {4, 6, 8} ×
/// layers ∈ {5, 10, 20, 30} × 6 seeds: 105 circuits.
pub fn default_corpus_specs(base_seed: u64) -> Vec<CorpusSpec> {
    let mut specs = Vec::with_capacity(105);
    specs.extend((2..=12).map(|n| CorpusSpec::new(Family::Ghz, n)));
    specs.extend((2..=8).map(|n| CorpusSpec::new(Family::Qft, n)));
    for n in 4..=8 {
        for s in 0..3 {
            specs.push(CorpusSpec::new(Family::Qaoa, n).with_seed(base_seed.wrapping_add(s)));
        }
    }
    for n in [4, 6, 8] {
        for layers in [5, 10, 20, 30] {
            for s in 0..6 {
                specs.push(CorpusSpec::new(Family::Random, n).with_layers(layers).with_seed(base_seed.wrapping_add(s)));
            }
        }
    }
    specs
}

pub fn default_corpus(base_seed: u64) -> Vec<Circuit> {
    default_corpus_specs(base_seed)
        .iter()
        .map(|s| s.generate(false).expect("default specs are in range"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ir::GateKind;

    #[test]
    fn rng_reference_vector() {
        // published SplitMix64 outputs for seed 1234567
        let mut rng = CorpusRng::new(1234567);
        let expected = [6457827717110365317u64, 3203168211198807973, 9817491932198370423, 4593380528125082431, 16408922859458223821];
        for e in expected {
            assert_eq!(rng.next_u64(), e);
        }
    }

    #[test]
    fn derived_draws_in_range() {
        let mut rng = CorpusRng::new(7);
        for _ in 0..10_000 {
            let u = rng.uniform();
            assert!((0.0..1.0).contains(&u));
            let v = rng.uniform_open();
            assert!(v > 0.0 && v < 1.0);
            assert!(rng.choice(3) < 3);
        }
    }

    #[test]
    fn ghz_examples() {
        let c = gen_ghz(4).unwrap();
        assert_eq!(c.len(), 4);
        assert_eq!(c.gates().iter().filter(|g| g.kind == GateKind::Cx).count(), 3);
        assert_eq!(gen_ghz(12).unwrap().len(), 12);
        assert_eq!(gen_ghz(2).unwrap().gates(), &[Gate::h(0), Gate::cx(0, 1)]);
        assert!(gen_ghz(1).is_err());
        assert_eq!(gen_ghz(5).unwrap().name, "ghz_5q");
    }

    #[test]
    fn qft_counts() {
        for n in 2..=8 {
            assert_eq!(gen_qft(n).unwrap().len(), n + 5 * n * (n - 1) / 2);
        }
        assert_eq!(gen_qft(4).unwrap().len(), 34);
        assert!(gen_qft(1).is_err());
    }

    #[test]
    fn qaoa_examples() {
        assert_eq!(gen_qaoa(2, &[(0, 1)], 3).unwrap().len(), 7);
        assert_eq!(gen_qaoa(3, &[(0, 1), (1, 2), (0, 2)], 3).unwrap().len(), 15);
        assert_eq!(gen_qaoa(5, &ring_edges(5), 9).unwrap(), gen_qaoa(5, &ring_edges(5), 9).unwrap());
        assert_ne!(gen_qaoa(5, &ring_edges(5), 9).unwrap(), gen_qaoa(5, &ring_edges(5), 10).unwrap());
        assert!(matches!(gen_qaoa(3, &[(0, 3)], 0), Err(CorpusError::InvalidEdge(0, 3, 3))));
        assert!(matches!(gen_qaoa(3, &[(1, 1)], 0), Err(CorpusError::InvalidEdge(..))));
        assert!(matches!(gen_qaoa(3, &[(0, 1), (1, 0)], 0), Err(CorpusError::DuplicateEdge(1, 0))));
        for g in gen_qaoa(4, &ring_edges(4), 1).unwrap().gates() {
            if matches!(g.kind, GateKind::Rz | GateKind::Rx) {
                assert!(g.params[0] > 0.0 && g.params[0] < PI);
            }
        }
    }

    #[test]
    fn random_examples() {
        let a = gen_random(4, 5, 11).unwrap();
        assert_eq!(a, gen_random(4, 5, 11).unwrap());
        assert!((20..=30).contains(&a.len()));
        assert!(a.depth() >= 5);
        for g in a.gates().iter().filter(|g| g.is_two_qubit()) {
            assert_eq!(g.qubits[1], g.qubits[0] + 1);
        }
        assert!(gen_random(4, 0, 0).is_err());
    }

    #[test]
    fn matching_is_maximal() {
        for seed in 0..50 {
            let c = gen_random(7, 1, seed).unwrap();
            let pairs: Vec<usize> = c.gates().iter().filter(|g| g.is_two_qubit()).map(|g| g.qubits[0]).collect();
            let mut used = [false; 7];
            for &lo in &pairs {
                assert!(!used[lo] && !used[lo + 1]);
                used[lo] = true;
                used[lo + 1] = true;
            }
            assert!((0..6).all(|i| used[i] || used[i + 1]));
        }
    }

    #[test]
    fn spec_ranges() {
        assert!(CorpusSpec::new(Family::Ghz, 13).generate(false).is_err());
        assert!(CorpusSpec::new(Family::Ghz, 13).generate(true).is_ok());
        assert!(CorpusSpec::new(Family::Random, 4).with_layers(40).generate(false).is_err());
        assert!(CorpusSpec::new(Family::Random, 5).with_layers(5).generate(false).is_ok());
        let json = serde_json::to_string(&CorpusSpec::new(Family::Qft, 4)).unwrap();
        assert_eq!(json, r#"{"family":"qft","qubits":4,"seed":0}"#);
    }

    #[test]
    fn default_census() {
        let corpus = default_corpus(DEFAULT_SEED);
        assert_eq!(corpus.len(), 105);
        let count = |f: Family| corpus.iter().filter(|c| Family::from_circuit_name(&c.name) == Some(f)).count();
        assert_eq!((count(Family::Ghz), count(Family::Qft), count(Family::Qaoa), count(Family::Random)), (11, 7, 15, 72));
        let mut names: Vec<&str> = corpus.iter().map(|c| c.name.as_str()).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), 105);
    }
}
