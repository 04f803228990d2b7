// Copyright 2026 The qco Authors
// SPDX-License-Identifier: Apache-2.0

//! `qco`: optimize, route, compile and score quantum circuits.
//!
//! Exit status is 0 on success, 1 on usage errors or unreadable input and 2
//! when a pipeline stage fails. Diagnostics go to standard error.

use std::collections::BTreeMap;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qco_core::campaign::{
    emit_report_with_meta, run_campaign, run_pipeline_full, summarize, write_atomic, ExperimentKind, RunOptions,
};
use qco_core::corpus::{default_corpus_specs, CorpusSpec, Family, DEFAULT_SEED};
use qco_core::noise::{estimate_fidelity_with, DecoherenceWindow};
use qco_core::parallel::Jobs;
use qco_core::passes::run_pipeline;
use qco_core::pulse::{decompose_to_native, schedule, Durations};
use qco_core::qasm::{emit_qasm, parse_qasm};
use qco_core::route::sabre_route;
use qco_core::{Circuit, Layout, NoiseModel, PassConfig, Topology};
use serde::Serialize;
use serde_json::json;

#[derive(Parser)]
#[command(name = "qco", version, about = "Quantum circuit optimization, routing and fidelity estimation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Apply optimization passes and emit QASM.
    Optimize(OptimizeArgs),
    /// Map a circuit onto a coupling graph with SWAP insertion.
    Route(RouteArgs),
    /// Lower to native pulses and emit the schedule as JSON.
    Compile(CompileArgs),
    /// Estimate fidelity of a circuit as given.
    Simulate(SimulateArgs),
    /// Optimize, route, compile and estimate in one run.
    Pipeline(PipelineArgs),
    /// Benchmark corpus utilities.
    Corpus {
        #[command(subcommand)]
        command: CorpusCommand,
    },
    /// Run the experiment matrix and write a report.
    Campaign(CampaignArgs),
}

#[derive(Subcommand)]
enum CorpusCommand {
    /// Write circuits as .qasm files plus manifest.json. Without --family
    /// the full default corpus is generated.
    Generate(GenerateArgs),
}

#[derive(Args)]
struct InputArg {
    /// Input OpenQASM 3.0 file, `-` for standard input.
    #[arg(long = "in", value_name = "PATH")]
    input: PathBuf,
}

#[derive(Args)]
struct OutputArg {
    /// Output file, `-` for standard output.
    #[arg(long, value_name = "PATH", default_value = "-")]
    out: PathBuf,
}

#[derive(Args)]
struct NoiseArg {
    /// Noise preset (garnet, low, medium, high, very_high) or JSON file.
    #[arg(long, value_name = "NAME|PATH", default_value = "garnet")]
    noise: String,
}

#[derive(Args)]
struct OptimizeArgs {
    #[command(flatten)]
    input: InputArg,
    /// Comma-separated pass sequence, e.g. cancel,commute,rotate,identity.
    #[arg(long, value_name = "SEQ", default_value = "cancel,commute,rotate,identity")]
    passes: String,
    /// Maximum fixpoint rounds over the sequence.
    #[arg(long, value_name = "N")]
    max_rounds: Option<usize>,
    #[command(flatten)]
    output: OutputArg,
    /// Also write per-pass reports as JSON.
    #[arg(long, value_name = "PATH")]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct RouteArgs {
    #[command(flatten)]
    input: InputArg,
    /// Builtin topology (garnet20, line<N>, complete<N>) or JSON file.
    #[arg(long, value_name = "NAME|PATH", default_value = "garnet20")]
    topology: String,
    /// Initial layout as comma-separated physical qubits; identity if absent.
    #[arg(long, value_name = "P0,P1,...")]
    layout: Option<String>,
    #[command(flatten)]
    output: OutputArg,
    /// Also write the routing report as JSON.
    #[arg(long, value_name = "PATH")]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct CompileArgs {
    #[command(flatten)]
    input: InputArg,
    /// Gate durations are taken from this noise model.
    #[command(flatten)]
    noise: NoiseArg,
    #[command(flatten)]
    output: OutputArg,
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    input: InputArg,
    #[command(flatten)]
    noise: NoiseArg,
    /// Charge idle decay per qubit busy time instead of the whole circuit.
    #[arg(long)]
    per_qubit_busy: bool,
    #[command(flatten)]
    output: OutputArg,
}

#[derive(Args)]
struct PipelineArgs {
    #[command(flatten)]
    input: InputArg,
    /// Comma-separated pass sequence, or `none` to skip optimization.
    #[arg(long, value_name = "SEQ", default_value = "cancel,commute,rotate,identity")]
    passes: String,
    /// Builtin topology or JSON file, `none` to skip routing.
    #[arg(long, value_name = "NAME|PATH", default_value = "garnet20")]
    topology: String,
    #[command(flatten)]
    noise: NoiseArg,
    /// RunRecord JSON destination, `-` for standard output.
    #[arg(long, value_name = "PATH", default_value = "-")]
    report: PathBuf,
}

#[derive(Args)]
struct GenerateArgs {
    /// ghz, qft, qaoa or random.
    #[arg(long, requires = "qubits")]
    family: Option<String>,
    /// Qubit count for --family.
    #[arg(long, requires = "family")]
    qubits: Option<usize>,
    /// Layer count for the random family.
    #[arg(long)]
    layers: Option<usize>,
    /// Graph for qaoa as `a-b,c-d,...`; ring if absent.
    #[arg(long, value_name = "EDGES")]
    edges: Option<String>,
    /// Generator seed; defaults to QCO_SEED or 0.
    #[arg(long)]
    seed: Option<u64>,
    /// Accept sizes outside the benchmark ranges.
    #[arg(long)]
    allow_out_of_range: bool,
    /// Output directory.
    #[arg(long, value_name = "DIR")]
    out: PathBuf,
}

#[derive(Args)]
struct CampaignArgs {
    /// Comma-separated experiments or `all`: baseline, per_pass, pass_combos,
    /// routing_impact, noise_sensitivity, scaling.
    #[arg(long, value_name = "LIST", default_value = "all")]
    experiment: String,
    /// Directory of .qasm files; the default corpus if absent.
    #[arg(long, value_name = "DIR")]
    corpus: Option<PathBuf>,
    /// Seed of the default corpus; defaults to QCO_SEED or 0.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_name = "NAME|PATH", default_value = "garnet20")]
    topology: String,
    #[command(flatten)]
    noise: NoiseArg,
    /// Worker threads; all cores if absent, 1 for serial.
    #[arg(long, value_name = "N")]
    jobs: Option<usize>,
    /// Charge idle decay per qubit busy time instead of the whole circuit.
    #[arg(long)]
    per_qubit_busy: bool,
    /// Report directory.
    #[arg(long, value_name = "DIR")]
    out: PathBuf,
}

enum Failure {
    Usage(String),
    Pipeline(String),
}

type Outcome<T> = Result<T, Failure>;

fn usage(msg: impl std::fmt::Display) -> Failure {
    Failure::Usage(msg.to_string())
}

fn pipeline(msg: impl std::fmt::Display) -> Failure {
    Failure::Pipeline(msg.to_string())
}

fn read_text(path: &Path) -> Outcome<String> {
    let mut s = String::new();
    if path == Path::new("-") {
        std::io::stdin().read_to_string(&mut s).map_err(|e| usage(format!("stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_circuit(path: &Path) -> Outcome<Circuit> {
    let text = read_text(path)?;
    let mut c = parse_qasm(&text).map_err(|e| pipeline(format!("{}: {e}", path.display())))?;
    if c.name.is_empty() {
        if let Some(stem) = path.file_stem().filter(|_| path != Path::new("-")) {
            c.name = stem.to_string_lossy().into_owned();
        }
    }
    Ok(c)
}

fn write_out(path: &Path, bytes: &[u8]) -> Outcome<()> {
    if path == Path::new("-") {
        let mut out = std::io::stdout().lock();
        return out.write_all(bytes).and_then(|_| out.flush()).map_err(|e| usage(format!("stdout: {e}")));
    }
    write_atomic(path, bytes).map_err(usage)
}

fn to_json<T: Serialize>(v: &T) -> Vec<u8> {
    let mut bytes = serde_json::to_vec_pretty(v).expect("value serializes");
    bytes.push(b'\n');
    bytes
}

fn load_topology(spec: &str) -> Outcome<Topology> {
    let path = Path::new(spec);
    if path.is_file() {
        return Topology::from_json(&read_text(path)?).map_err(|e| usage(format!("{spec}: {e}")));
    }
    Topology::builtin(spec).map_err(usage)
}

fn load_noise(spec: &str) -> Outcome<NoiseModel> {
    let path = Path::new(spec);
    if path.is_file() {
        return NoiseModel::from_json(&read_text(path)?).map_err(|e| usage(format!("{spec}: {e}")));
    }
    NoiseModel::preset(spec).map_err(usage)
}

fn load_passes(spec: &str, max_rounds: Option<usize>) -> Outcome<PassConfig> {
    let cfg = if spec.trim() == "none" { PassConfig::baseline() } else { spec.parse().map_err(usage)? };
    match max_rounds {
        Some(n) => cfg.with_max_rounds(n).map_err(usage),
        None => Ok(cfg),
    }
}

fn window(per_qubit_busy: bool) -> DecoherenceWindow {
    if per_qubit_busy {
        DecoherenceWindow::PerQubitBusy
    } else {
        DecoherenceWindow::WholeCircuit
    }
}

/// Explicit flag, then QCO_SEED, then the built-in default.
fn resolve_seed(flag: Option<u64>) -> Outcome<u64> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var("QCO_SEED") {
        Ok(v) => v.trim().parse().map_err(|_| usage(format!("QCO_SEED: not an unsigned integer: `{v}`"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn optimize(a: OptimizeArgs) -> Outcome<()> {
    let cfg = load_passes(&a.passes, a.max_rounds)?;
    let c = load_circuit(&a.input.input)?;
    let (out, reports) = run_pipeline(&c, &cfg);
    let out = out.with_name(c.name.clone());
    if let Some(p) = &a.report {
        write_out(p, &to_json(&reports))?;
    }
    write_out(&a.output.out, emit_qasm(&out).as_bytes())
}

fn route(a: RouteArgs) -> Outcome<()> {
    let topo = load_topology(&a.topology)?;
    let layout = match &a.layout {
        Some(s) => {
            let v = s
                .split(',')
                .map(|p| p.trim().parse::<usize>().map_err(|_| usage(format!("bad layout entry `{p}`"))))
                .collect::<Outcome<Vec<_>>>()?;
            Layout::from_vec(v).map_err(usage)?
        }
        None => Layout::identity(topo.num_qubits()),
    };
    let c = load_circuit(&a.input.input)?;
    let (routed, report) = sabre_route(&c, &topo, &layout).map_err(pipeline)?;
    let routed = routed.with_name(c.name.clone());
    if let Some(p) = &a.report {
        write_out(p, &to_json(&report))?;
    }
    write_out(&a.output.out, emit_qasm(&routed).as_bytes())
}

fn compile(a: CompileArgs) -> Outcome<()> {
    let nm = load_noise(&a.noise.noise)?;
    let c = load_circuit(&a.input.input)?;
    let sched = schedule(&decompose_to_native(&c), &Durations::from(&nm));
    write_out(&a.output.out, &to_json(&sched))
}

fn simulate(a: SimulateArgs) -> Outcome<()> {
    let nm = load_noise(&a.noise.noise)?;
    nm.validate().map_err(usage)?;
    let c = load_circuit(&a.input.input)?;
    let sched = schedule(&decompose_to_native(&c), &Durations::from(&nm));
    let est = estimate_fidelity_with(&sched, &nm, c.num_qubits(), window(a.per_qubit_busy));
    let body = json!({
        "circuit_name": c.name,
        "qubits": c.num_qubits(),
        "total_duration_ns": sched.total_duration_ns,
        "fidelity": est,
    });
    write_out(&a.output.out, &to_json(&body))
}

fn run_pipeline_cmd(a: PipelineArgs) -> Outcome<()> {
    let cfg = load_passes(&a.passes, None)?;
    let topo = match a.topology.trim() {
        "none" => None,
        spec => Some(load_topology(spec)?),
    };
    let nm = load_noise(&a.noise.noise)?;
    nm.validate().map_err(usage)?;
    let c = load_circuit(&a.input.input)?;
    let record = run_pipeline_full(&c, &cfg, topo.as_ref(), &nm).map_err(pipeline)?;
    write_out(&a.report, &to_json(&record))
}

fn parse_edges(s: &str) -> Outcome<Vec<(usize, usize)>> {
    s.split(',')
        .map(|e| {
            let (a, b) = e.split_once('-').ok_or_else(|| usage(format!("bad edge `{e}`, expected a-b")))?;
            let n = |x: &str| x.trim().parse::<usize>().map_err(|_| usage(format!("bad edge `{e}`")));
            Ok((n(a)?, n(b)?))
        })
        .collect()
}

#[derive(Serialize)]
struct ManifestEntry {
    file: String,
    name: String,
    family: String,
    params: BTreeMap<&'static str, serde_json::Value>,
    seed: u64,
    gates: usize,
    two_qubit_gates: usize,
    depth: usize,
}

fn generate(a: GenerateArgs) -> Outcome<()> {
    let seed = resolve_seed(a.seed)?;
    let specs = match (&a.family, a.qubits) {
        (Some(f), Some(n)) => {
            let family: Family = f.parse().map_err(usage)?;
            let mut spec = CorpusSpec::new(family, n).with_seed(seed);
            if let Some(l) = a.layers {
                spec = spec.with_layers(l);
            }
            if let Some(e) = &a.edges {
                spec = spec.with_edges(parse_edges(e)?);
            }
            vec![spec]
        }
        _ => {
            if a.layers.is_some() || a.edges.is_some() {
                return Err(usage("--layers and --edges require --family"));
            }
            default_corpus_specs(seed)
        }
    };
    let mut files = Vec::with_capacity(specs.len());
    let mut manifest = Vec::with_capacity(specs.len());
    for spec in &specs {
        spec.validate(a.allow_out_of_range).map_err(usage)?;
        let c = spec.generate(a.allow_out_of_range).map_err(pipeline)?;
        let file = format!("{}.qasm", c.name);
        let mut params = BTreeMap::new();
        params.insert("qubits", json!(spec.qubits));
        if spec.family == Family::Random {
            params.insert("layers", json!(spec.layers()));
        }
        if spec.family == Family::Qaoa {
            let edges = spec.graph_edges.clone().unwrap_or_else(|| qco_core::corpus::ring_edges(spec.qubits));
            params.insert("edges", json!(edges));
        }
        manifest.push(ManifestEntry {
            file: file.clone(),
            name: c.name.clone(),
            family: spec.family.name().to_string(),
            params,
            seed: spec.seed,
            gates: c.len(),
            two_qubit_gates: c.gates().iter().filter(|g| g.is_two_qubit()).count(),
            depth: c.depth(),
        });
        files.push((file, emit_qasm(&c)));
    }
    std::fs::create_dir_all(&a.out).map_err(|e| usage(format!("{}: {e}", a.out.display())))?;
    for (file, text) in &files {
        write_out(&a.out.join(file), text.as_bytes())?;
    }
    write_out(&a.out.join("manifest.json"), &to_json(&manifest))
}

fn load_corpus_dir(dir: &Path) -> Outcome<Vec<Circuit>> {
    let entries = std::fs::read_dir(dir).map_err(|e| usage(format!("{}: {e}", dir.display())))?;
    let mut paths: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "qasm"))
        .collect();
    paths.sort();
    if paths.is_empty() {
        return Err(usage(format!("{}: no .qasm files", dir.display())));
    }
    paths.iter().map(|p| load_circuit(p)).collect()
}

fn campaign(a: CampaignArgs) -> Outcome<()> {
    let kinds: Vec<ExperimentKind> = if a.experiment.trim() == "all" {
        ExperimentKind::ALL.to_vec()
    } else {
        a.experiment.split(',').map(|s| s.parse().map_err(usage)).collect::<Outcome<_>>()?
    };
    if a.jobs == Some(0) {
        return Err(usage("--jobs must be at least 1"));
    }
    let topo = load_topology(&a.topology)?;
    let nm = load_noise(&a.noise.noise)?;
    nm.validate().map_err(usage)?;
    let seed = resolve_seed(a.seed)?;
    let corpus = match &a.corpus {
        Some(dir) => load_corpus_dir(dir)?,
        None => default_corpus_specs(seed)
            .iter()
            .map(|s| s.generate(false))
            .collect::<Result<_, _>>()
            .map_err(pipeline)?,
    };
    let opts = RunOptions { jobs: Jobs(a.jobs), window: window(a.per_qubit_busy) };
    let records = run_campaign(&kinds, &corpus, &nm, &topo, &opts).map_err(pipeline)?;
    let stats = summarize(&records).map_err(pipeline)?;
    let mut meta = BTreeMap::new();
    meta.insert("experiments".into(), json!(kinds.iter().map(|k| k.name()).collect::<Vec<_>>()));
    meta.insert("topology".into(), json!(topo.name()));
    meta.insert("noise".into(), json!(nm));
    meta.insert("corpus_size".into(), json!(corpus.len()));
    if a.corpus.is_none() {
        meta.insert("seed".into(), json!(seed));
    }
    emit_report_with_meta(&stats, &records, &a.out, meta).map_err(usage)?;
    eprintln!("qco: {} records written to {}", records.len(), a.out.display());
    Ok(())
}

fn run(cli: Cli) -> Outcome<()> {
    match cli.command {
        Command::Optimize(a) => optimize(a),
        Command::Route(a) => route(a),
        Command::Compile(a) => compile(a),
        Command::Simulate(a) => simulate(a),
        Command::Pipeline(a) => run_pipeline_cmd(a),
        Command::Corpus { command: CorpusCommand::Generate(a) } => generate(a),
        Command::Campaign(a) => campaign(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("qco: error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Pipeline(m)) => {
            eprintln!("qco: pipeline error: {m}");
            ExitCode::from(2)
        }
    }
}
