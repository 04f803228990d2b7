// Copyright 2026 The qco Authors
// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeSet;

use super::{Circuit, Gate};

/// Dependency graph of a circuit: one node per gate, with an edge from each
/// gate to the next gate on every wire it touches.
#[derive(Debug, Clone)]
pub struct CircuitDag {
    num_qubits: usize,
    name: String,
    nodes: Vec<Gate>,
    wires: Vec<Vec<usize>>,
    preds: Vec<Vec<usize>>,
    succs: Vec<Vec<usize>>,
}

impl CircuitDag {
    pub fn build(c: &Circuit) -> CircuitDag {
        let n = c.gates().len();
        let mut wires = vec![Vec::new(); c.num_qubits()];
        let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut succs: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, g) in c.gates().iter().enumerate() {
            for &q in &g.qubits {
                if let Some(&prev) = wires[q].last() {
                    if !preds[i].contains(&prev) {
                        preds[i].push(prev);
                        succs[prev].push(i);
                    }
                }
                wires[q].push(i);
            }
        }
        CircuitDag { num_qubits: c.num_qubits(), name: c.name.clone(), nodes: c.gates().to_vec(), wires, preds, succs }
    }

    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn gate(&self, node: usize) -> &Gate {
        &self.nodes[node]
    }

    /// Nodes touching `qubit`, in program order.
    pub fn wire(&self, qubit: usize) -> &[usize] {
        &self.wires[qubit]
    }

    pub fn predecessors(&self, node: usize) -> &[usize] {
        &self.preds[node]
    }

    pub fn successors(&self, node: usize) -> &[usize] {
        &self.succs[node]
    }

    /// Nodes with no predecessors.
    pub fn roots(&self) -> Vec<usize> {
        (0..self.nodes.len()).filter(|&i| self.preds[i].is_empty()).collect()
    }

    /// True if `a` must execute before `b` (transitively).
    pub fn precedes(&self, a: usize, b: usize) -> bool {
        if a >= b {
            return false;
        }
        let mut stack = vec![a];
        let mut seen = vec![false; self.nodes.len()];
        while let Some(v) = stack.pop() {
            for &s in &self.succs[v] {
                if s == b {
                    return true;
                }
                // node indices follow program order, nothing past b can reach it
                if s < b && !seen[s] {
                    seen[s] = true;
                    stack.push(s);
                }
            }
        }
        false
    }

    /// Kahn linearization, always choosing the smallest ready node.
    pub fn linearize(&self) -> Circuit {
        let mut indegree: Vec<usize> = self.preds.iter().map(Vec::len).collect();
        let mut ready: BTreeSet<usize> = self.roots().into_iter().collect();
        let mut order = Vec::with_capacity(self.nodes.len());
        while let Some(v) = ready.pop_first() {
            order.push(self.nodes[v].clone());
            for &s in &self.succs[v] {
                indegree[s] -= 1;
                if indegree[s] == 0 {
                    ready.insert(s);
                }
            }
        }
        let c = Circuit { num_qubits: self.num_qubits, gates: order, name: self.name.clone() };
        debug_assert_eq!(c.len(), self.nodes.len());
        c
    }
}

pub fn build_dag(c: &Circuit) -> CircuitDag {
    CircuitDag::build(c)
}
