//! Orientation lifting of permutation charts toward braid charts.
//!
//! Every edge of the chart graph gets a direction. Crossings and cup/cap
//! turning points are interior to edges, so they impose nothing. At a white
//! vertex the six edge ends, read cyclically, must split into three
//! consecutive incoming and three consecutive outgoing. Black and branch
//! vertices accept any direction. Where no consistent choice exists, a node
//! (an orientation reversal on an edge) is inserted; the lift reports the
//! smallest node count found within budget.

use serde::Serialize;

use crate::chart::{Alphabet, Chart, ChartError, EventKind};
use crate::dsu::UnionFind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum VertexKind {
    White,
    Free,
}

/// A curve endpoint: which vertex it lands on and at which cyclic port.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EndPoint {
    pub vertex: usize,
    pub port: usize,
}

/// The chart graph with crossings and turn-backs absorbed into curves.
#[derive(Debug, Clone)]
pub struct ChartGraph {
    pub vertex_kinds: Vec<VertexKind>,
    /// Open curves with their two endpoints.
    pub arcs: Vec<(EndPoint, EndPoint)>,
    /// Curves with no endpoints.
    pub closed_loops: usize,
}

impl ChartGraph {
    pub fn edge_count(&self) -> usize {
        self.arcs.len() + self.closed_loops
    }

    pub fn white_count(&self) -> usize {
        self.vertex_kinds
            .iter()
            .filter(|k| **k == VertexKind::White)
            .count()
    }
}

/// Extracts curves and vertex incidences by replaying the chart.
pub fn chart_graph(chart: &Chart) -> Result<ChartGraph, ChartError> {
    // Upper bound on curve fragments: cups make one, every other event
    // makes one per produced letter.
    let capacity: usize = chart
        .events
        .iter()
        .map(|ev| match ev.kind {
            EventKind::Cup { .. } => 1,
            EventKind::Cap { .. } | EventKind::Crossing { .. } => 0,
            _ => ev.after().len(),
        })
        .sum();
    let mut uf = UnionFind::new(capacity.max(1));
    let mut fragments = 0usize;
    // Endpoint records live on the fragment that received them; classes
    // are aggregated at the end.
    let mut endpoints: Vec<Vec<EndPoint>> = vec![Vec::new(); capacity.max(1)];
    let mut vertex_kinds: Vec<VertexKind> = Vec::new();
    // Slots hold curve-fragment ids; fragments merge through caps.
    let mut slots: Vec<usize> = Vec::new();

    for ev in &chart.events {
        let p = ev.pos;
        match &ev.kind {
            EventKind::Cup { .. } => {
                let c = fragments;
                fragments += 1;
                slots.insert(p, c);
                slots.insert(p + 1, c);
            }
            EventKind::Cap { .. } => {
                if p + 1 >= slots.len() {
                    return Err(ChartError::Invalid("cap out of range".into()));
                }
                let c1 = slots.remove(p + 1);
                let c2 = slots.remove(p);
                uf.union(c1, c2);
            }
            EventKind::Crossing { .. } => {
                slots.swap(p, p + 1);
            }
            EventKind::White { .. } => {
                let v = vertex_kinds.len();
                vertex_kinds.push(VertexKind::White);
                // Cyclic port order around the vertex: left edges bottom to
                // top (0,1,2), then right edges top to bottom (3,4,5).
                for i in (0..3).rev() {
                    let c = slots.remove(p + i);
                    endpoints[c].push(EndPoint { vertex: v, port: i });
                }
                for (slot, port) in [(0usize, 5usize), (1, 4), (2, 3)] {
                    let c = fragments;
                    fragments += 1;
                    endpoints[c].push(EndPoint { vertex: v, port });
                    slots.insert(p + slot, c);
                }
            }
            // Black, branch and relator events are free vertices: their
            // before-slots terminate curves, their after-slots start new
            // ones.
            _ => {
                let before = ev.before().len();
                let after = ev.after().len();
                let v = vertex_kinds.len();
                vertex_kinds.push(VertexKind::Free);
                for i in (0..before).rev() {
                    let c = slots.remove(p + i);
                    endpoints[c].push(EndPoint { vertex: v, port: i });
                }
                for i in 0..after {
                    let c = fragments;
                    fragments += 1;
                    endpoints[c].push(EndPoint {
                        vertex: v,
                        port: before + i,
                    });
                    slots.insert(p + i, c);
                }
            }
        }
    }
    if !slots.is_empty() {
        return Err(ChartError::Invalid("chart does not close".into()));
    }
    let mut class_ends: std::collections::HashMap<usize, Vec<EndPoint>> =
        std::collections::HashMap::new();
    for c in 0..fragments {
        let root = uf.find(c);
        class_ends
            .entry(root)
            .or_default()
            .extend(endpoints[c].iter().copied());
    }
    let mut arcs = Vec::new();
    let mut closed_loops = 0usize;
    let mut roots: Vec<usize> = class_ends.keys().copied().collect();
    roots.sort_unstable();
    for root in roots {
        let ends = &class_ends[&root];
        match ends.len() {
            0 => closed_loops += 1,
            2 => arcs.push((ends[0], ends[1])),
            other => {
                return Err(ChartError::Invalid(format!(
                    "curve with {other} endpoints"
                )))
            }
        }
    }
    Ok(ChartGraph {
        vertex_kinds,
        arcs,
        closed_loops,
    })
}

/// Whether the port is incoming under the pattern (the in-run starts at
/// `pattern` and covers three consecutive cyclic ports).
fn port_in(pattern: usize, port: usize) -> bool {
    let d = (port + 6 - pattern) % 6;
    d < 3
}

fn assignment_cost(graph: &ChartGraph, patterns: &[usize]) -> usize {
    let mut nodes = 0;
    for (e1, e2) in &graph.arcs {
        let c1 = match graph.vertex_kinds[e1.vertex] {
            VertexKind::White => Some(port_in(patterns[white_index(graph, e1.vertex)], e1.port)),
            VertexKind::Free => None,
        };
        let c2 = match graph.vertex_kinds[e2.vertex] {
            VertexKind::White => Some(port_in(patterns[white_index(graph, e2.vertex)], e2.port)),
            VertexKind::Free => None,
        };
        if let (Some(a), Some(b)) = (c1, c2) {
            // A consistent arc flows into exactly one of its ends.
            if a == b {
                nodes += 1;
            }
        }
    }
    nodes
}

fn white_index(graph: &ChartGraph, vertex: usize) -> usize {
    graph.vertex_kinds[..vertex]
        .iter()
        .filter(|k| **k == VertexKind::White)
        .count()
}

#[derive(Debug, Clone, Serialize)]
pub struct OrientationReport {
    /// Minimal number of orientation-reversal nodes found.
    pub nodes: usize,
    /// Chosen in-run start per white vertex, in vertex order.
    pub white_patterns: Vec<usize>,
    /// Whether the search was exhaustive over all white patterns.
    pub exhaustive: bool,
    pub edges: usize,
    pub whites: usize,
}

/// Assigns directions to every edge, inserting nodes where necessary, and
/// returns the smallest node count found. The search over white-vertex
/// patterns is exhaustive when `6^whites <= budget`, otherwise a greedy
/// descent.
pub fn attempt_orientation(chart: &Chart, budget: usize) -> Result<OrientationReport, ChartError> {
    assert_eq!(
        chart.alphabet,
        Alphabet::Permutation,
        "orientation lifting applies to permutation charts"
    );
    let graph = chart_graph(chart)?;
    let w = graph.white_count();
    let combos = 6usize.checked_pow(w as u32);
    let exhaustive = combos.map(|c| c <= budget.max(1)).unwrap_or(false);
    let mut patterns = vec![0usize; w];
    let mut best = (assignment_cost(&graph, &patterns), patterns.clone());
    if exhaustive {
        let mut odometer = vec![0usize; w];
        loop {
            let cost = assignment_cost(&graph, &odometer);
            if cost < best.0 {
                best = (cost, odometer.clone());
            }
            // Advance.
            let mut i = 0;
            loop {
                if i == w {
                    return Ok(OrientationReport {
                        nodes: best.0,
                        white_patterns: best.1,
                        exhaustive,
                        edges: graph.edge_count(),
                        whites: w,
                    });
                }
                odometer[i] += 1;
                if odometer[i] < 6 {
                    break;
                }
                odometer[i] = 0;
                i += 1;
            }
            if w == 0 {
                break;
            }
        }
    } else {
        // Greedy descent within budget: repeatedly take the best
        // single-vertex change.
        let mut steps = 0usize;
        loop {
            let mut improved = false;
            'outer: for v in 0..w {
                for pat in 0..6 {
                    if pat == patterns[v] {
                        continue;
                    }
                    let old = patterns[v];
                    patterns[v] = pat;
                    let cost = assignment_cost(&graph, &patterns);
                    steps += 1;
                    if cost < best.0 {
                        best = (cost, patterns.clone());
                        improved = true;
                        break 'outer;
                    }
                    patterns[v] = old;
                    if steps >= budget {
                        break 'outer;
                    }
                }
            }
            if !improved || steps >= budget {
                break;
            }
        }
    }
    Ok(OrientationReport {
        nodes: best.0,
        white_patterns: best.1,
        exhaustive,
        edges: graph.edge_count(),
        whites: w,
    })
}

/// Independent brute force over all in/out assignments of white-vertex
/// ports, filtered to valid three-consecutive patterns. Only sensible for
/// small charts; used as the oracle for node minimality.
pub fn exhaustive_min_nodes(chart: &Chart) -> Result<usize, ChartError> {
    let graph = chart_graph(chart)?;
    let w = graph.white_count();
    let mut best = usize::MAX;
    let total = 1usize << (6 * w);
    for mask in 0..total {
        // Decode six bits per white vertex; keep only valid patterns.
        let mut patterns = Vec::with_capacity(w);
        let mut valid = true;
        for v in 0..w {
            let bits = (mask >> (6 * v)) & 0x3f;
            let mut pattern = None;
            for start in 0..6 {
                let mut want = 0usize;
                for port in 0..6 {
                    if port_in(start, port) {
                        want |= 1 << port;
                    }
                }
                if bits == want {
                    pattern = Some(start);
                    break;
                }
            }
            match pattern {
                Some(p) => patterns.push(p),
                None => {
                    valid = false;
                    break;
                }
            }
        }
        if !valid {
            continue;
        }
        best = best.min(assignment_cost(&graph, &patterns));
    }
    if w == 0 {
        best = 0;
    }
    Ok(best)
}
