// Copyright 2026 The qco Authors
// SPDX-License-Identifier: Apache-2.0

mod common;

use common::{random_circuit, TestRng};
use proptest::prelude::*;
use qco_core::corpus::{default_corpus, DEFAULT_SEED};
use qco_core::qasm::emit_qasm;
use qco_core::route::{is_executable, sabre_route};
use qco_core::{Circuit, Gate, Layout, Topology};

#[test]
fn whole_corpus_routes_onto_garnet() {
    let topo = Topology::garnet20();
    for c in default_corpus(DEFAULT_SEED) {
        let (routed, rep) = sabre_route(&c, &topo, &Layout::identity(20)).unwrap();
        assert!(is_executable(&routed, &topo), "{}", c.name);
        assert_eq!(rep.gates_after, rep.gates_before + rep.swaps_inserted, "{}", c.name);
        assert_eq!(routed.gates().iter().filter(|g| g.kind == qco_core::GateKind::Swap).count(), rep.swaps_inserted);
    }
}

#[test]
fn conforming_circuit_needs_no_swaps_under_any_layout() {
    let topo = Topology::garnet20();
    let perm: Vec<usize> = (0..20).rev().collect();
    let layout = Layout::from_vec(perm.clone()).unwrap();
    let inverse: Vec<usize> = layout.physical_to_logical();
    let gates: Vec<Gate> = topo.edges().iter().map(|&(a, b)| Gate::cz(inverse[a], inverse[b])).collect();
    let c = Circuit::from_gates(20, gates).unwrap();
    let (_, rep) = sabre_route(&c, &topo, &layout).unwrap();
    assert_eq!(rep.swaps_inserted, 0);
    assert_eq!(rep.final_layout.as_slice(), perm.as_slice());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn routing_is_executable_and_deterministic(seed in any::<u64>(), line in any::<bool>()) {
        let c = random_circuit(&mut TestRng::new(seed), 8, 60);
        let topo = if line { Topology::line(8) } else { Topology::garnet20() };
        let initial = Layout::identity(topo.num_qubits());
        let (a, ra) = sabre_route(&c, &topo, &initial).unwrap();
        let (b, rb) = sabre_route(&c, &topo, &initial).unwrap();
        prop_assert!(is_executable(&a, &topo));
        prop_assert_eq!(emit_qasm(&a), emit_qasm(&b));
        prop_assert_eq!(ra, rb);
    }

    #[test]
    fn complete_graph_never_swaps(seed in any::<u64>()) {
        let c = random_circuit(&mut TestRng::new(seed), 6, 40);
        let topo = Topology::complete(6);
        let (_, rep) = sabre_route(&c, &topo, &Layout::identity(6)).unwrap();
        prop_assert_eq!(rep.swaps_inserted, 0);
    }
}
