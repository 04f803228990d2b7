// Copyright 2026 The qco Authors
// SPDX-License-Identifier: Apache-2.0

mod common;

use common::{fidelity, random_circuit, TestRng};
use proptest::prelude::*;
use qco_core::corpus::gen_ghz;
use qco_core::passes::{commutes, run_pipeline, DEFAULT_ANGLE_TOLERANCE};
use qco_core::{Circuit, Gate, GateKind, PassConfig, PassKind, PassReport};

const TOL: f64 = DEFAULT_ANGLE_TOLERANCE;

fn check_arithmetic(r: &PassReport) -> Result<(), TestCaseError> {
    prop_assert_eq!(r.gates_before + r.gates_added - r.gates_removed, r.gates_after);
    Ok(())
}

fn removed(c: &Circuit, seq: Vec<PassKind>) -> usize {
    let (out, _) = run_pipeline(c, &PassConfig::new(seq).unwrap());
    c.len() - out.len()
}

#[test]
fn ghz_is_a_fixpoint() {
    for n in 2..=12 {
        let c = gen_ghz(n).unwrap();
        let (out, _) = run_pipeline(&c, &PassConfig::new(vec![PassKind::Cancel, PassKind::Commute, PassKind::Rotate]).unwrap());
        assert_eq!(out.len(), c.len());
    }
}

fn sample_gates(n: usize) -> Vec<Gate> {
    let angles = [0.0, 0.7, -2.1, std::f64::consts::PI];
    let mut out = Vec::new();
    for kind in GateKind::ALL {
        let operands: Vec<Vec<usize>> = if kind.num_qubits() == 1 {
            (0..n).map(|q| vec![q]).collect()
        } else {
            (0..n).flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| vec![a, b])).collect()
        };
        let params: Vec<Vec<f64>> = match kind.num_params() {
            0 => vec![vec![]],
            1 => angles.iter().map(|&a| vec![a]).collect(),
            _ => angles.iter().flat_map(|&t| angles.iter().map(move |&p| vec![t, p])).collect(),
        };
        for q in &operands {
            for p in &params {
                out.push(Gate::new(kind, p.clone(), q.clone()).unwrap());
            }
        }
    }
    out
}

#[test]
fn commutation_table_is_sound_on_all_pairs() {
    let gates = sample_gates(3);
    let mut claimed = 0;
    for a in &gates {
        for b in &gates {
            if commutes(a, b, TOL) {
                claimed += 1;
                assert!(commutes(b, a, TOL), "{a} / {b} not symmetric");
                let ab = Circuit::from_gates(3, vec![a.clone(), b.clone()]).unwrap();
                let ba = Circuit::from_gates(3, vec![b.clone(), a.clone()]).unwrap();
                assert!(fidelity(&ab, &ba) >= 1.0 - 1e-12, "{a} / {b}");
            }
        }
    }
    assert!(claimed > 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn every_pass_preserves_semantics(seed in any::<u64>()) {
        let c = random_circuit(&mut TestRng::new(seed), 6, 40);
        for pass in PassKind::ALL {
            let (out, report) = pass.run(&c, TOL);
            let f = fidelity(&c, &out);
            prop_assert!(f >= 1.0 - 1e-9, "{pass}: fidelity {f}");
            check_arithmetic(&report)?;
            match pass {
                PassKind::Commute => prop_assert_eq!(out.len(), c.len()),
                _ => prop_assert!(out.len() <= c.len()),
            }
        }
    }

    #[test]
    fn second_application_is_a_no_op(seed in any::<u64>()) {
        let c = random_circuit(&mut TestRng::new(seed), 6, 40);
        for pass in [PassKind::Cancel, PassKind::Rotate, PassKind::Identity] {
            let (once, _) = pass.run(&c, TOL);
            let (_, again) = pass.run(&once, TOL);
            prop_assert_eq!(again.gates_removed, 0, "{}", pass);
        }
    }

    #[test]
    fn commuting_first_never_hurts_cancel(seed in any::<u64>()) {
        let c = random_circuit(&mut TestRng::new(seed), 6, 40);
        prop_assert!(removed(&c, vec![PassKind::Commute, PassKind::Cancel]) >= removed(&c, vec![PassKind::Cancel]));
    }

    #[test]
    fn commutation_rules_are_sound(seed in any::<u64>()) {
        let c = random_circuit(&mut TestRng::new(seed), 3, 30);
        for w in c.gates().windows(2) {
            if commutes(&w[0], &w[1], TOL) {
                let ab = Circuit::from_gates(c.num_qubits(), vec![w[0].clone(), w[1].clone()]).unwrap();
                let ba = Circuit::from_gates(c.num_qubits(), vec![w[1].clone(), w[0].clone()]).unwrap();
                let f = fidelity(&ab, &ba);
                prop_assert!(f >= 1.0 - 1e-12, "{} / {}: {f}", w[0], w[1]);
            }
        }
    }

    #[test]
    fn pipeline_reports_are_consistent(seed in any::<u64>()) {
        let c = random_circuit(&mut TestRng::new(seed), 5, 40);
        let (out, reports) = run_pipeline(&c, &PassConfig::best());
        let mut count = c.len();
        for r in &reports {
            check_arithmetic(r)?;
            prop_assert_eq!(r.gates_before, count);
            count = r.gates_after;
        }
        prop_assert_eq!(count, out.len());
    }
}
