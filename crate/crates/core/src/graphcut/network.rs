//! Capacitated directed graphs with paired residual arcs, cut evaluation and
//! the line-oriented graph file format.
//!
//! File format (LF line endings, 0-based vertex ids, integer capacities):
//!
//! ```text
//! graph <n_vertices> <n_edges> <s_id> <t_id>
//! e <from> <to> <capacity>
//! ```
//!
//! with one `e` line per directed edge in insertion order.

use std::fmt::Write as _;

use crate::error::{Error, Result, domain};

pub type VertexId = usize;
pub type Capacity = u64;

/// Index of an arc. Edge `i` owns arcs `2i` (forward, carrying the edge's
/// capacity) and `2i + 1` (reverse, capacity 0); `a ^ 1` is always the
/// partner of `a`.
pub type ArcId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub from: VertexId,
    pub to: VertexId,
    pub capacity: Capacity,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowNetwork {
    n: usize,
    source: VertexId,
    sink: VertexId,
    edges: Vec<Edge>,
}

impl FlowNetwork {
    pub fn new(n: usize, source: VertexId, sink: VertexId) -> Result<Self> {
        if source >= n || sink >= n {
            return Err(domain(format!(
                "terminals ({source}, {sink}) outside a {n}-vertex network"
            )));
        }
        if source == sink {
            return Err(domain("source and sink must differ"));
        }
        Ok(Self {
            n,
            source,
            sink,
            edges: Vec::new(),
        })
    }

    /// Appends a vertex and returns its id.
    pub fn add_vertex(&mut self) -> VertexId {
        self.n += 1;
        self.n - 1
    }

    pub fn add_edge(&mut self, from: VertexId, to: VertexId, capacity: Capacity) -> Result<usize> {
        if from >= self.n || to >= self.n {
            return Err(domain(format!(
                "edge {from}->{to} references a vertex outside 0..{}",
                self.n
            )));
        }
        if from == to {
            return Err(domain(format!("self loop on vertex {from}")));
        }
        self.edges.push(Edge { from, to, capacity });
        Ok(self.edges.len() - 1)
    }

    /// Adds `u -> v` and `v -> u`, both with `capacity`.
    pub fn add_undirected(&mut self, u: VertexId, v: VertexId, capacity: Capacity) -> Result<()> {
        self.add_edge(u, v, capacity)?;
        self.add_edge(v, u, capacity)?;
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn sink(&self) -> VertexId {
        self.sink
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn arc_head(&self, arc: ArcId) -> VertexId {
        let e = &self.edges[arc / 2];
        if arc.is_multiple_of(2) { e.to } else { e.from }
    }

    pub fn arc_tail(&self, arc: ArcId) -> VertexId {
        let e = &self.edges[arc / 2];
        if arc.is_multiple_of(2) { e.from } else { e.to }
    }

    /// Initial residual capacity of each arc.
    pub fn arc_capacities(&self) -> Vec<Capacity> {
        self.edges
            .iter()
            .flat_map(|e| [e.capacity, 0])
            .collect()
    }

    /// Outgoing arcs per vertex, forward and reverse alike, sorted by head
    /// vertex id (then arc id).
    pub fn adjacency(&self) -> Vec<Vec<ArcId>> {
        let mut adj = vec![Vec::new(); self.n];
        for (i, e) in self.edges.iter().enumerate() {
            adj[e.from].push(2 * i);
            adj[e.to].push(2 * i + 1);
        }
        for arcs in &mut adj {
            arcs.sort_by_key(|&a| (self.arc_head(a), a));
        }
        adj
    }

    /// Sum of the capacities of all edges, a bound on any cut.
    pub fn total_capacity(&self) -> Capacity {
        self.edges.iter().map(|e| e.capacity).sum()
    }
}

/// Which side of an s-t cut a vertex falls on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Source,
    Sink,
}

/// Sum of capacities of edges leading from the source side to the sink side.
pub fn cut_cost(net: &FlowNetwork, side: &[Side]) -> Result<Capacity> {
    if side.len() != net.vertex_count() {
        return Err(Error::Shape(format!(
            "partition covers {} vertices, network has {}",
            side.len(),
            net.vertex_count()
        )));
    }
    if side[net.source] != Side::Source || side[net.sink] != Side::Sink {
        return Err(domain("partition must put the source in S and the sink in T"));
    }
    Ok(net
        .edges
        .iter()
        .filter(|e| side[e.from] == Side::Source && side[e.to] == Side::Sink)
        .map(|e| e.capacity)
        .sum())
}

pub fn write_graph(net: &FlowNetwork) -> String {
    let mut out = String::with_capacity(16 * (net.edges.len() + 1));
    let _ = writeln!(
        out,
        "graph {} {} {} {}",
        net.n,
        net.edges.len(),
        net.source,
        net.sink
    );
    for e in &net.edges {
        let _ = writeln!(out, "e {} {} {}", e.from, e.to, e.capacity);
    }
    out
}

pub fn read_graph(text: &str) -> Result<FlowNetwork> {
    let mut lines = text
        .split('\n')
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.trim().is_empty());

    let parse_err = |line: usize, message: String| Error::Parse { line, message };

    let (hline, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "empty graph file".into()))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 5 || fields[0] != "graph" {
        return Err(parse_err(
            hline,
            "expected 'graph <n_vertices> <n_edges> <s_id> <t_id>'".into(),
        ));
    }
    let num = |line: usize, tok: &str, what: &str| -> Result<u64> {
        tok.parse()
            .map_err(|_| parse_err(line, format!("{what} '{tok}' is not a non-negative integer")))
    };
    let n = num(hline, fields[1], "vertex count")? as usize;
    let m = num(hline, fields[2], "edge count")? as usize;
    let s = num(hline, fields[3], "source id")? as usize;
    let t = num(hline, fields[4], "sink id")? as usize;
    let mut net = FlowNetwork::new(n, s, t).map_err(|e| parse_err(hline, e.to_string()))?;
    net.edges.reserve(m);

    for (line, l) in lines.by_ref() {
        let f: Vec<&str> = l.split_whitespace().collect();
        if f.len() != 4 || f[0] != "e" {
            return Err(parse_err(line, "expected 'e <from> <to> <capacity>'".into()));
        }
        let from = num(line, f[1], "vertex id")? as usize;
        let to = num(line, f[2], "vertex id")? as usize;
        let cap = num(line, f[3], "capacity")?;
        net.add_edge(from, to, cap)
            .map_err(|e| parse_err(line, e.to_string()))?;
        if net.edges.len() == m {
            break;
        }
    }
    if net.edges.len() != m {
        return Err(parse_err(
            text.lines().count().max(1),
            format!("header declares {m} edges, found {}", net.edges.len()),
        ));
    }
    if let Some((line, _)) = lines.next() {
        return Err(parse_err(line, format!("unexpected content after {m} edges")));
    }
    Ok(net)
}

pub fn save_graph(net: &FlowNetwork, path: impl AsRef<std::path::Path>) -> Result<()> {
    std::fs::write(path, write_graph(net))?;
    Ok(())
}

pub fn load_graph(path: impl AsRef<std::path::Path>) -> Result<FlowNetwork> {
    read_graph(&std::fs::read_to_string(path)?)
}
