// Copyright 2026 The qco Authors
// SPDX-License-Identifier: Apache-2.0

//! Release acceptance checks. Each test prints one `PASS`/`FAIL` line.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::mpsc;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use common::{fidelity, permutation_matrix, random_circuit, widen, TestRng};
use qco_core::campaign::{
    emit_report, pass_combos, run_campaign, run_experiment, summarize, ExperimentKind, RunOptions, RunRecord,
};
use qco_core::corpus::{default_corpus, gen_ghz, gen_qft, DEFAULT_SEED};
use qco_core::ir::to_unitary;
use qco_core::noise::{idle_fidelity, lindblad_oracle, oracle_average_fidelity, process_fidelity_exact, DensityMatrix};
use qco_core::passes::run_pipeline;
use qco_core::qasm::{emit_qasm, parse_qasm};
use qco_core::route::{is_executable, sabre_route};
use qco_core::{Circuit, Layout, NoiseModel, PassConfig, PassKind, Topology};

const UNITARY_TOL: f64 = 1e-9;

fn report(id: u32, name: &str, ok: bool, detail: impl std::fmt::Display) -> bool {
    println!("[criterion {id:>2}] {:<4} {name}: {detail}", if ok { "PASS" } else { "FAIL" });
    ok
}

fn corpus() -> &'static [Circuit] {
    static CORPUS: OnceLock<Vec<Circuit>> = OnceLock::new();
    CORPUS.get_or_init(|| default_corpus(DEFAULT_SEED))
}

fn experiment(kind: ExperimentKind) -> Vec<RunRecord> {
    run_experiment(kind, corpus(), &NoiseModel::garnet(), &Topology::garnet20()).unwrap()
}

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

#[test]
fn c01_semantics_preservation() {
    let start = Instant::now();
    let combos = pass_combos();
    let mut worst = 1.0f64;
    let mut checked = 0;
    for seed in 0..200 {
        let c = random_circuit(&mut TestRng::new(seed), 5, 40);
        let u = to_unitary(&c).unwrap();
        for seq in &combos {
            let (out, _) = run_pipeline(&c, &PassConfig::new(seq.clone()).unwrap());
            let f = process_fidelity_exact(&u, &to_unitary(&out).unwrap()).unwrap();
            worst = worst.min(f);
            checked += 1;
        }
    }
    let elapsed = start.elapsed();
    let ok = worst >= 1.0 - UNITARY_TOL && elapsed < Duration::from_secs(60);
    assert!(report(1, "semantics preservation", ok, format!("{checked} runs, min fidelity {worst:.12}, {elapsed:.1?}")));
}

#[test]
fn c02_routing_correctness() {
    let start = Instant::now();
    let garnet = Topology::garnet20();
    let subsets: [[usize; 5]; 3] = [[0, 1, 2, 5, 6], [6, 7, 8, 11, 12], [3, 4, 8, 9, 14]];
    let mut worst = 1.0f64;
    let mut all_on_edges = true;
    let mut swaps = 0;
    for seed in 0..100u64 {
        let mut rng = TestRng::new(1000 + seed);
        let c = random_circuit(&mut rng, 5, 30);
        let topo = if seed % 2 == 0 {
            Topology::line(5)
        } else {
            garnet.induced_subgraph(&subsets[(seed / 2 % 3) as usize]).unwrap()
        };
        let initial = Layout::identity(5);
        let (routed, rep) = sabre_route(&c, &topo, &initial).unwrap();
        swaps += rep.swaps_inserted;
        all_on_edges &= is_executable(&routed, &topo);
        let u = to_unitary(&widen(&c, 5)).unwrap();
        let p_in = permutation_matrix(rep.initial_layout.as_slice());
        let p_out = permutation_matrix(rep.final_layout.as_slice());
        let expected = p_out.dot(&u).dot(&p_in.t().mapv(|z| z.conj()));
        let f = process_fidelity_exact(&expected, &to_unitary(&routed).unwrap()).unwrap();
        worst = worst.min(f);
    }
    let elapsed = start.elapsed();
    let ok = worst >= 1.0 - UNITARY_TOL && all_on_edges && elapsed < Duration::from_secs(60);
    assert!(report(
        2,
        "routing correctness",
        ok,
        format!("100 circuits, {swaps} swaps, all on edges {all_on_edges}, min fidelity {worst:.12}, {elapsed:.1?}")
    ));
}

#[test]
fn c03_ghz_minimality() {
    let reductions: Vec<(usize, usize, usize)> = (2..=12)
        .map(|n| {
            let c = gen_ghz(n).unwrap();
            let (out, _) = run_pipeline(&c, &PassConfig::best());
            (n, c.len(), out.len())
        })
        .collect();
    let ok = reductions.iter().all(|&(_, a, b)| a == b);
    assert!(report(3, "GHZ minimality", ok, format!("(n, in, out) = {reductions:?}")));
}

#[test]
fn c04_qft_reduction() {
    let cfg: PassConfig = "rotate,cancel".parse().unwrap();
    let c = gen_qft(4).unwrap();
    let (out, _) = run_pipeline(&c, &cfg);
    let pct = 100.0 * (c.len() - out.len()) as f64 / c.len() as f64;
    let f = fidelity(&c, &out);
    let qft3 = gen_qft(3).unwrap();
    let (out3, _) = run_pipeline(&qft3, &cfg);
    let ok = pct >= 50.0 && f >= 1.0 - UNITARY_TOL;
    assert!(report(
        4,
        "QFT reduction",
        ok,
        format!(
            "qft_4q {} -> {} gates ({pct:.1}%, need >= 50%), fidelity {f:.12}; qft_3q {} -> {}",
            c.len(),
            out.len(),
            qft3.len(),
            out3.len()
        )
    ));
}

#[test]
fn c05_lindblad_agreement() {
    let start = Instant::now();
    let nm = NoiseModel::garnet();
    let t2 = nm.t2_us * 1000.0;
    let t1 = nm.t1_us * 1000.0;
    let mut worst: f64 = 0.0;
    for k in [0.1, 0.5, 1.0, 2.0, 5.0] {
        let t = k * t2;
        let f = oracle_average_fidelity(t, &nm, t / 1000.0).unwrap();
        worst = worst.max((f - idle_fidelity(t, &nm)).abs());
    }
    let rho11 = lindblad_oracle(&DensityMatrix::excited(), t1, &nm, t1 / 1000.0).unwrap().get(1, 1).re;
    let plus = DensityMatrix::axis_states()[0].1;
    let rho01 = lindblad_oracle(&plus, t2, &nm, t2 / 1000.0).unwrap().get(0, 1).norm();
    let e = (-1.0f64).exp();
    let (d11, d01) = ((rho11 - e).abs(), (rho01 - e / 2.0).abs());
    let elapsed = start.elapsed();
    let ok = worst <= 1e-6 && d11 <= 1e-6 && d01 <= 1e-6 && elapsed < Duration::from_secs(10);
    assert!(report(
        5,
        "Lindblad oracle agreement",
        ok,
        format!("max |dF| {worst:.2e}, |rho11(T1) - 1/e| {d11:.2e}, ||rho01(T2)| - 1/2e| {d01:.2e}, {elapsed:.1?}")
    ));
}

#[test]
fn c06_correlation_direction() {
    let start = Instant::now();
    let records = experiment(ExperimentKind::Scaling);
    let stats = summarize(&records).unwrap();
    let elapsed = start.elapsed();
    let rs: BTreeMap<&str, f64> = stats.correlations.iter().map(|c| (c.parameter.as_str(), c.r.unwrap_or(f64::NAN))).collect();
    let identity = stats.correlations.iter().all(|c| match (c.r, c.r_squared) {
        (Some(r), Some(r2)) => (r2 - r * r).abs() <= 1e-12,
        _ => false,
    });
    let ok = records.len() >= 100
        && rs["pulse_duration"] <= -0.5
        && rs.values().all(|&r| r < 0.0)
        && identity
        && elapsed < Duration::from_secs(300);
    assert!(report(6, "correlation direction", ok, format!("{} runs, r = {rs:.3?}, {elapsed:.1?}", records.len())));
}

#[test]
fn c07_pass_ranking() {
    let stats = summarize(&experiment(ExperimentKind::PerPass)).unwrap();
    let removed = |p: PassKind| stats.per_pass[&p].gates_removed_total;
    let (cancel, rotate, identity, commute) =
        (removed(PassKind::Cancel), removed(PassKind::Rotate), removed(PassKind::Identity), removed(PassKind::Commute));
    let ok = cancel >= rotate && rotate >= identity && identity >= commute && commute == 0;
    assert!(report(
        7,
        "pass ranking",
        ok,
        format!("removed: cancel {cancel}, rotate {rotate}, identity {identity}, commute {commute}")
    ));
}

#[test]
fn c08_mean_gate_reduction() {
    let stats = summarize(&experiment(ExperimentKind::Scaling)).unwrap();
    let (m, x) = (stats.mean_gate_reduction_pct, stats.max_gate_reduction_pct);
    let ok = m >= 15.0 && x >= 50.0;
    assert!(report(8, "mean gate reduction", ok, format!("mean {m:.2}% (need >= 15), max {x:.2}% (need >= 50)")));
}

#[test]
fn c09_noise_monotonicity() {
    let records = experiment(ExperimentKind::NoiseSensitivity);
    let means: Vec<(&str, f64)> = ["low", "medium", "high", "very_high"]
        .into_iter()
        .map(|name| {
            let id = format!("noise:{name}");
            let v: Vec<f64> = records.iter().filter(|r| r.config_id == id).map(|r| r.fidelity.process).collect();
            (name, mean(&v))
        })
        .collect();
    let ok = means.windows(2).all(|w| w[0].1 > w[1].1);
    assert!(report(9, "noise-regime monotonicity", ok, format!("{means:.5?}")));
}

#[test]
fn c10_determinism() {
    let run = || {
        let records =
            run_campaign(&ExperimentKind::ALL, corpus(), &NoiseModel::garnet(), &Topology::garnet20(), &RunOptions::default())
                .unwrap();
        let dir = tempfile::tempdir().unwrap();
        emit_report(&summarize(&records).unwrap(), &records, dir.path()).unwrap();
        let read = |f: &str| std::fs::read(dir.path().join(f)).unwrap();
        (read("report.json"), read("records.csv"))
    };
    let (json_a, csv_a) = run();
    let (json_b, csv_b) = run();
    let ok = json_a == json_b && csv_a == csv_b;
    assert!(report(
        10,
        "determinism",
        ok,
        format!("report.json {} bytes, records.csv {} bytes, identical {ok}", json_a.len(), csv_a.len())
    ));
}

fn mutate(rng: &mut TestRng, seed: &[u8]) -> Vec<u8> {
    const TOKENS: [&str; 16] =
        ["qubit", "[", "]", ";", "(", ")", "pi", "-", "/*", "//", "\"", "OPENQASM", "cx", "1e308", "\n", "π"];
    let mut bytes = seed.to_vec();
    for _ in 0..1 + rng.below(4) {
        let at = if bytes.is_empty() { 0 } else { rng.below(bytes.len() + 1) };
        match rng.below(7) {
            0 if !bytes.is_empty() => {
                let i = at.min(bytes.len() - 1);
                bytes[i] ^= 1 << rng.below(8);
            }
            1 => bytes.splice(at..at, TOKENS[rng.below(TOKENS.len())].bytes()).for_each(drop),
            2 if !bytes.is_empty() => {
                let end = (at + rng.below(16)).min(bytes.len());
                bytes.drain(at.min(end)..end);
            }
            3 => {
                let end = (at + rng.below(32)).min(bytes.len());
                let chunk: Vec<u8> = bytes[at.min(end)..end].to_vec();
                bytes.splice(at..at, chunk).for_each(drop);
            }
            4 => bytes.truncate(at),
            5 => {
                let depth = rng.below(5000);
                let nest = format!("rz({}0{}) q[0];", "(".repeat(depth), ")".repeat(rng.below(depth + 1)));
                bytes.splice(at..at, nest.bytes()).for_each(drop);
            }
            _ => bytes.insert(at, rng.below(256) as u8),
        }
    }
    bytes
}

#[test]
fn c11_qasm_robustness() {
    let seeds: Vec<String> = corpus().iter().filter(|c| c.len() < 120).map(emit_qasm).collect();
    let mut rng = TestRng::new(11);
    let inputs: Vec<String> = (0..10_000)
        .map(|i| String::from_utf8_lossy(&mutate(&mut rng, seeds[i % seeds.len()].as_bytes())).into_owned())
        .collect();
    let total = inputs.len();
    let (tx, rx) = mpsc::channel();
    std::thread::spawn(move || {
        for text in inputs {
            let t = Instant::now();
            let outcome = catch_unwind(AssertUnwindSafe(|| parse_qasm(&text).is_ok()));
            if tx.send((outcome, t.elapsed())).is_err() {
                return;
            }
        }
    });
    let (mut parsed, mut rejected, mut panics, mut slowest) = (0, 0, 0, Duration::ZERO);
    let mut hung = false;
    for _ in 0..total {
        match rx.recv_timeout(Duration::from_secs(1)) {
            Ok((Ok(true), dt)) => {
                parsed += 1;
                slowest = slowest.max(dt);
            }
            Ok((Ok(false), dt)) => {
                rejected += 1;
                slowest = slowest.max(dt);
            }
            Ok((Err(_), _)) => panics += 1,
            Err(_) => {
                hung = true;
                break;
            }
        }
    }
    let ok = !hung && panics == 0 && parsed + rejected == total && slowest < Duration::from_secs(1);
    assert!(report(
        11,
        "QASM robustness",
        ok,
        format!("{total} inputs: {parsed} parsed, {rejected} rejected, {panics} panics, hung {hung}, slowest {slowest:.1?}")
    ));
}
