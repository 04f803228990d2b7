// Copyright 2026 The qco Authors
// SPDX-License-Identifier: Apache-2.0

//! Coupling graphs and SABRE-style SWAP routing.
//!
//! The router keeps a front layer of two-qubit gates whose predecessors have
//! all executed. Gates that are executable under the current layout are
//! emitted immediately. Otherwise every SWAP touching a front-layer qubit is
//! scored as
//!
//! ```text
//! score = Σ_front d(after swap) + 0.5 · Σ_lookahead d(after swap)
//! ```
//!
//! where the lookahead set is the next 20 unrouted two-qubit gates in program
//! order. The lowest score wins and ties go to the lexicographically smallest
//! physical pair. There is no decay term and no randomness. When SWAPs stop
//! making progress, the oldest front gate is walked along a shortest path.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ir::{Circuit, CircuitDag, Gate};

const LOOKAHEAD_SIZE: usize = 20;
const LOOKAHEAD_WEIGHT: f64 = 0.5;

const GARNET20_JSON: &str = include_str!("../assets/garnet20.json");

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RouteError {
    #[error("topology must have at least one qubit")]
    Empty,
    #[error("edge ({0}, {1}) is a self-loop")]
    SelfLoop(usize, usize),
    #[error("edge ({0}, {1}) appears more than once")]
    DuplicateEdge(usize, usize),
    #[error("edge ({a}, {b}) out of range for {num_qubits} qubits")]
    EdgeOutOfRange { a: usize, b: usize, num_qubits: usize },
    #[error("topology `{0}` is disconnected")]
    Disconnected(String),
    #[error("circuit has {circuit} qubits but topology `{name}` only {topology}")]
    SizeMismatch { circuit: usize, topology: usize, name: String },
    #[error("invalid layout: {0}")]
    InvalidLayout(String),
    #[error("unknown builtin topology `{0}` (expected garnet20, line<N> or complete<N>)")]
    UnknownBuiltin(String),
    #[error("topology JSON: {0}")]
    Json(String),
}

#[derive(Serialize, Deserialize)]
struct TopologyFile {
    name: String,
    num_qubits: usize,
    edges: Vec<[usize; 2]>,
}

/// Undirected coupling graph over physical qubits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Topology {
    name: String,
    num_qubits: usize,
    edges: Vec<(usize, usize)>,
    neighbors: Vec<Vec<usize>>,
}

impl Topology {
    /// Builds a topology, normalizing each edge to `(min, max)` and sorting.
    /// Connectivity is checked by [`distance_matrix`], not here.
    pub fn new(
        name: impl Into<String>,
        num_qubits: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Topology, RouteError> {
        if num_qubits == 0 {
            return Err(RouteError::Empty);
        }
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(RouteError::SelfLoop(a, b));
            }
            if a >= num_qubits || b >= num_qubits {
                return Err(RouteError::EdgeOutOfRange { a, b, num_qubits });
            }
            if !set.insert((a.min(b), a.max(b))) {
                return Err(RouteError::DuplicateEdge(a, b));
            }
        }
        let edges: Vec<(usize, usize)> = set.into_iter().collect();
        let mut neighbors = vec![Vec::new(); num_qubits];
        for &(a, b) in &edges {
            neighbors[a].push(b);
            neighbors[b].push(a);
        }
        for n in &mut neighbors {
            n.sort_unstable();
        }
        Ok(Topology { name: name.into(), num_qubits, edges, neighbors })
    }

    pub fn line(n: usize) -> Topology {
        Topology::new(format!("line{n}"), n, (1..n).map(|i| (i - 1, i))).expect("valid line")
    }

    pub fn complete(n: usize) -> Topology {
        let edges = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
        Topology::new(format!("complete{n}"), n, edges).expect("valid complete graph")
    }

    /// Built-in 20-qubit, 30-edge approximation of the Garnet coupling map:
    /// a 4×5 grid (row-major numbering) without the corner edge 0–1.
    pub fn garnet20() -> Topology {
        Topology::from_json(GARNET20_JSON).expect("bundled garnet20 asset is valid")
    }

    /// Resolves `garnet20`, `line<N>` or `complete<N>`.
    pub fn builtin(spec: &str) -> Result<Topology, RouteError> {
        let unknown = || RouteError::UnknownBuiltin(spec.to_string());
        if spec == "garnet20" {
            return Ok(Topology::garnet20());
        }
        let (ctor, digits): (fn(usize) -> Topology, &str) = if let Some(d) = spec.strip_prefix("line") {
            (Topology::line, d)
        } else if let Some(d) = spec.strip_prefix("complete") {
            (Topology::complete, d)
        } else {
            return Err(unknown());
        };
        match digits.parse::<usize>() {
            Ok(n) if (1..=4096).contains(&n) => Ok(ctor(n)),
            _ => Err(unknown()),
        }
    }

    pub fn from_json(text: &str) -> Result<Topology, RouteError> {
        let file: TopologyFile = serde_json::from_str(text).map_err(|e| RouteError::Json(e.to_string()))?;
        Topology::new(file.name, file.num_qubits, file.edges.into_iter().map(|[a, b]| (a, b)))
    }

    pub fn to_json(&self) -> String {
        let file = TopologyFile {
            name: self.name.clone(),
            num_qubits: self.num_qubits,
            edges: self.edges.iter().map(|&(a, b)| [a, b]).collect(),
        };
        serde_json::to_string_pretty(&file).expect("topology serializes")
    }

    /// Subgraph induced by `qubits`, relabelled so `qubits[i]` becomes `i`.
    pub fn induced_subgraph(&self, qubits: &[usize]) -> Result<Topology, RouteError> {
        let index_of = |p: usize| qubits.iter().position(|&q| q == p);
        if let Some(&bad) = qubits.iter().find(|&&q| q >= self.num_qubits) {
            return Err(RouteError::EdgeOutOfRange { a: bad, b: bad, num_qubits: self.num_qubits });
        }
        let edges = self.edges.iter().filter_map(|&(a, b)| Some((index_of(a)?, index_of(b)?)));
        Topology::new(format!("{}[{}]", self.name, qubits.len()), qubits.len(), edges)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, q: usize) -> &[usize] {
        &self.neighbors[q]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.neighbors[a].binary_search(&b).is_ok()
    }
}

fn bfs(t: &Topology, src: usize) -> Vec<Option<u32>> {
    let mut dist = vec![None; t.num_qubits];
    dist[src] = Some(0);
    let mut queue = VecDeque::from([src]);
    while let Some(v) = queue.pop_front() {
        let d = dist[v].expect("queued nodes have a distance");
        for &w in t.neighbors(v) {
            if dist[w].is_none() {
                dist[w] = Some(d + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// All-pairs hop counts.
pub fn distance_matrix(t: &Topology) -> Result<Vec<Vec<u32>>, RouteError> {
    (0..t.num_qubits)
        .map(|src| {
            bfs(t, src)
                .into_iter()
                .collect::<Option<Vec<u32>>>()
                .ok_or_else(|| RouteError::Disconnected(t.name.clone()))
        })
        .collect()
}

fn shortest_path(t: &Topology, dist: &[Vec<u32>], from: usize, to: usize) -> Vec<usize> {
    let mut path = vec![from];
    let mut cur = from;
    while cur != to {
        cur = *t
            .neighbors(cur)
            .iter()
            .find(|&&n| dist[n][to] + 1 == dist[cur][to])
            .expect("connected graph has a descending neighbour");
        path.push(cur);
    }
    path
}

/// Logical → physical qubit assignment; a permutation over the device.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Layout {
    logical_to_physical: Vec<usize>,
}

impl Layout {
    pub fn identity(n: usize) -> Layout {
        Layout { logical_to_physical: (0..n).collect() }
    }

    pub fn from_vec(logical_to_physical: Vec<usize>) -> Result<Layout, RouteError> {
        let n = logical_to_physical.len();
        let mut seen = vec![false; n];
        for &p in &logical_to_physical {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(RouteError::InvalidLayout(format!("{logical_to_physical:?} is not a permutation")));
            }
        }
        Ok(Layout { logical_to_physical })
    }

    pub fn len(&self) -> usize {
        self.logical_to_physical.len()
    }

    pub fn is_empty(&self) -> bool {
        self.logical_to_physical.is_empty()
    }

    pub fn physical(&self, logical: usize) -> usize {
        self.logical_to_physical[logical]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.logical_to_physical
    }

    pub fn physical_to_logical(&self) -> Vec<usize> {
        let mut inv = vec![0; self.len()];
        for (l, &p) in self.logical_to_physical.iter().enumerate() {
            inv[p] = l;
        }
        inv
    }

    /// Exchanges whatever logical qubits sit on physical `a` and `b`.
    pub fn swap_physical(&mut self, a: usize, b: usize) {
        for p in &mut self.logical_to_physical {
            if *p == a {
                *p = b;
            } else if *p == b {
                *p = a;
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RoutingReport {
    pub swaps_inserted: usize,
    pub initial_layout: Layout,
    pub final_layout: Layout,
    pub gates_before: usize,
    pub gates_after: usize,
}

/// True if every two-qubit gate acts on a coupling edge.
pub fn is_executable(c: &Circuit, t: &Topology) -> bool {
    c.num_qubits() <= t.num_qubits
        && c.gates().iter().filter(|g| g.is_two_qubit()).all(|g| t.has_edge(g.qubits[0], g.qubits[1]))
}

struct Router<'a> {
    topo: &'a Topology,
    dist: Vec<Vec<u32>>,
    dag: CircuitDag,
    layout: Layout,
    remaining_preds: Vec<usize>,
    done: Vec<bool>,
    front: BTreeSet<usize>,
    out: Vec<Gate>,
    swaps: usize,
}

impl Router<'_> {
    fn phys(&self, g: &Gate) -> (usize, usize) {
        (self.layout.physical(g.qubits[0]), self.layout.physical(g.qubits[1]))
    }

    fn executable(&self, node: usize) -> bool {
        let g = self.dag.gate(node);
        if !g.is_two_qubit() {
            return true;
        }
        let (a, b) = self.phys(g);
        self.topo.has_edge(a, b)
    }

    fn execute(&mut self, node: usize) {
        let layout = &self.layout;
        let g = self.dag.gate(node).remapped(|q| layout.physical(q));
        self.out.push(g);
        self.done[node] = true;
        self.front.remove(&node);
        for &s in self.dag.successors(node) {
            self.remaining_preds[s] -= 1;
            if self.remaining_preds[s] == 0 {
                self.front.insert(s);
            }
        }
    }

    /// Emits everything runnable; returns whether any gate was emitted.
    fn drain_executable(&mut self) -> bool {
        let mut progressed = false;
        while let Some(node) = self.front.iter().copied().find(|&n| self.executable(n)) {
            self.execute(node);
            progressed = true;
        }
        progressed
    }

    fn lookahead(&self) -> Vec<usize> {
        (0..self.dag.num_nodes())
            .filter(|&i| !self.done[i] && !self.front.contains(&i) && self.dag.gate(i).is_two_qubit())
            .take(LOOKAHEAD_SIZE)
            .collect()
    }

    fn cost(&self, nodes: &[usize], swap: (usize, usize)) -> u32 {
        let moved = |p: usize| {
            if p == swap.0 {
                swap.1
            } else if p == swap.1 {
                swap.0
            } else {
                p
            }
        };
        nodes
            .iter()
            .map(|&n| {
                let (a, b) = self.phys(self.dag.gate(n));
                self.dist[moved(a)][moved(b)]
            })
            .sum()
    }

    fn choose_swap(&self) -> (usize, usize) {
        let front: Vec<usize> = self.front.iter().copied().collect();
        let ahead = self.lookahead();
        let mut candidates = BTreeSet::new();
        for &n in &front {
            let (a, b) = self.phys(self.dag.gate(n));
            for p in [a, b] {
                for &nb in self.topo.neighbors(p) {
                    candidates.insert((p.min(nb), p.max(nb)));
                }
            }
        }
        // BTreeSet iteration is lexicographic, so strict `<` keeps the smallest pair on ties
        let mut best: Option<((usize, usize), f64)> = None;
        for swap in candidates {
            let score = f64::from(self.cost(&front, swap)) + LOOKAHEAD_WEIGHT * f64::from(self.cost(&ahead, swap));
            if best.is_none_or(|(_, s)| score < s) {
                best = Some((swap, score));
            }
        }
        best.expect("a front gate always has a neighbouring swap").0
    }

    fn apply_swap(&mut self, (a, b): (usize, usize)) {
        self.out.push(Gate::swap(a, b));
        self.layout.swap_physical(a, b);
        self.swaps += 1;
    }

    /// Walks the oldest front gate's first operand toward its partner.
    fn force_oldest(&mut self) {
        let node = *self.front.first().expect("non-empty front");
        let (a, b) = self.phys(self.dag.gate(node));
        let path = shortest_path(self.topo, &self.dist, a, b);
        for w in path.windows(2).take(path.len().saturating_sub(2)) {
            self.apply_swap((w[0].min(w[1]), w[0].max(w[1])));
        }
    }
}

/// Routes `c` onto `t` starting from `initial`. The returned circuit has
/// `t.num_qubits()` wires and is expressed in physical qubits.
pub fn sabre_route(c: &Circuit, t: &Topology, initial: &Layout) -> Result<(Circuit, RoutingReport), RouteError> {
    if c.num_qubits() > t.num_qubits() {
        return Err(RouteError::SizeMismatch {
            circuit: c.num_qubits(),
            topology: t.num_qubits(),
            name: t.name().to_string(),
        });
    }
    if initial.len() != t.num_qubits() {
        return Err(RouteError::InvalidLayout(format!(
            "layout covers {} qubits, topology has {}",
            initial.len(),
            t.num_qubits()
        )));
    }
    let dist = distance_matrix(t)?;
    let diameter = dist.iter().flatten().copied().max().unwrap_or(0) as usize;
    let dag = CircuitDag::build(c);
    let remaining_preds: Vec<usize> = (0..dag.num_nodes()).map(|i| dag.predecessors(i).len()).collect();
    let front = dag.roots().into_iter().collect();
    let mut router = Router {
        topo: t,
        dist,
        layout: initial.clone(),
        remaining_preds,
        done: vec![false; dag.num_nodes()],
        front,
        out: Vec::with_capacity(c.len()),
        swaps: 0,
        dag,
    };

    let stall_limit = 2 * diameter.max(5);
    let mut stalled = 0;
    loop {
        if router.drain_executable() {
            stalled = 0;
        }
        if router.front.is_empty() {
            break;
        }
        if stalled >= stall_limit {
            router.force_oldest();
            stalled = 0;
            continue;
        }
        let swap = router.choose_swap();
        router.apply_swap(swap);
        stalled += 1;
    }

    let mut routed = Circuit::new(t.num_qubits()).expect("topology has qubits").with_name(c.name.clone());
    for g in router.out {
        routed.push(g).expect("physical gate within topology");
    }
    let report = RoutingReport {
        swaps_inserted: router.swaps,
        initial_layout: initial.clone(),
        final_layout: router.layout,
        gates_before: c.len(),
        gates_after: routed.len(),
    };
    Ok((routed, report))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distances() {
        let d = distance_matrix(&Topology::line(3)).unwrap();
        assert_eq!(d[0][2], 2);
        assert!((0..3).all(|i| d[i][i] == 0));
        let k4 = distance_matrix(&Topology::complete(4)).unwrap();
        for (i, row) in k4.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                assert_eq!(v, u32::from(i != j));
            }
        }
        let split = Topology::new("split", 4, [(0, 1), (2, 3)]).unwrap();
        assert!(matches!(distance_matrix(&split), Err(RouteError::Disconnected(_))));
    }

    #[test]
    fn topology_validation() {
        assert_eq!(Topology::new("t", 2, [(0, 0)]), Err(RouteError::SelfLoop(0, 0)));
        assert_eq!(Topology::new("t", 2, [(0, 1), (1, 0)]), Err(RouteError::DuplicateEdge(1, 0)));
        assert!(matches!(Topology::new("t", 2, [(0, 2)]), Err(RouteError::EdgeOutOfRange { .. })));
        assert_eq!(Topology::new("t", 0, []), Err(RouteError::Empty));
    }

    #[test]
    fn garnet20_shape() {
        let g = Topology::garnet20();
        assert_eq!((g.num_qubits(), g.edges().len()), (20, 30));
        assert!(distance_matrix(&g).is_ok());
        assert!(!g.has_edge(0, 1));
        assert!(g.has_edge(0, 5));
        let again = Topology::from_json(&g.to_json()).unwrap();
        assert_eq!(again, g);
    }

    #[test]
    fn builtins() {
        assert_eq!(Topology::builtin("line5").unwrap().edges().len(), 4);
        assert_eq!(Topology::builtin("complete4").unwrap().edges().len(), 6);
        assert!(Topology::builtin("ring5").is_err());
        assert!(Topology::builtin("line").is_err());
        assert!(Topology::builtin("line0").is_err());
    }

    #[test]
    fn subgraph_relabels() {
        let g = Topology::garnet20();
        let sub = g.induced_subgraph(&[5, 6, 10, 11]).unwrap();
        assert_eq!(sub.edges(), &[(0, 1), (0, 2), (1, 3), (2, 3)]);
    }

    #[test]
    fn layout_rules() {
        assert!(Layout::from_vec(vec![1, 1, 0]).is_err());
        assert!(Layout::from_vec(vec![0, 3]).is_err());
        let mut l = Layout::from_vec(vec![2, 0, 1]).unwrap();
        assert_eq!(l.physical_to_logical(), vec![1, 2, 0]);
        l.swap_physical(0, 2);
        assert_eq!(l.as_slice(), &[0, 2, 1]);
    }

    #[test]
    fn route_examples() {
        let line = Topology::line(3);
        let ghz3 = Circuit::from_gates(3, vec![Gate::h(0), Gate::cx(0, 1), Gate::cx(1, 2)]).unwrap();
        let (out, r) = sabre_route(&ghz3, &line, &Layout::identity(3)).unwrap();
        assert_eq!(r.swaps_inserted, 0);
        assert_eq!(out.gates(), ghz3.gates());

        let far = Circuit::from_gates(3, vec![Gate::cx(0, 2)]).unwrap();
        let (out, r) = sabre_route(&far, &line, &Layout::identity(3)).unwrap();
        assert_eq!(r.swaps_inserted, 1);
        assert_eq!(r.gates_after, r.gates_before + r.swaps_inserted);
        assert!(is_executable(&out, &line));

        let big = Circuit::new(4).unwrap();
        assert!(matches!(sabre_route(&big, &line, &Layout::identity(3)), Err(RouteError::SizeMismatch { .. })));
        assert!(matches!(
            sabre_route(&far, &line, &Layout::identity(4)),
            Err(RouteError::InvalidLayout(_))
        ));
    }

    #[test]
    fn complete_graph_needs_no_swaps() {
        let c = Circuit::from_gates(4, vec![Gate::cx(0, 3), Gate::cz(2, 1), Gate::swap(0, 2), Gate::cx(3, 1)]).unwrap();
        let (_, r) = sabre_route(&c, &Topology::complete(4), &Layout::identity(4)).unwrap();
        assert_eq!(r.swaps_inserted, 0);
    }
}
