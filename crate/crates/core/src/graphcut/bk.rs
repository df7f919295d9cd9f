//! Augmenting-path max-flow with two search trees (Boykov-Kolmogorov).
//!
//! A source tree grows from `s` and a sink tree from `t` until an arc joins
//! them. Flow is pushed along the joined path, saturated tree arcs turn their
//! children into orphans, and orphans are re-attached or released before
//! growth resumes.
//!
//! Active vertices and orphans are processed first-in first-out. Orphans
//! look for new parents among neighbors in ascending vertex-id order, and a
//! candidate is only accepted if its parent chain still reaches a terminal.

use std::collections::VecDeque;

use super::network::{ArcId, Capacity, FlowNetwork, Side, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TreeTag {
    Free,
    Source,
    Sink,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Parent {
    None,
    Terminal,
    /// Source tree: arc parent -> vertex. Sink tree: arc vertex -> parent.
    Arc(ArcId),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutResult {
    pub max_flow: Capacity,
    pub side: Vec<Side>,
    /// Indices into [`FlowNetwork::edges`] of edges leading from S to T.
    pub cut_edges: Vec<usize>,
    pub cut_cost: Capacity,
    /// Flow carried by each edge.
    pub edge_flow: Vec<Capacity>,
}

impl CutResult {
    pub fn source_side_count(&self) -> usize {
        self.side.iter().filter(|&&s| s == Side::Source).count()
    }
}

pub struct BkSolver<'a> {
    net: &'a FlowNetwork,
    adj: Vec<Vec<ArcId>>,
    residual: Vec<Capacity>,
    tree: Vec<TreeTag>,
    parent: Vec<Parent>,
    active: VecDeque<VertexId>,
    queued: Vec<bool>,
    /// Next adjacency index to scan when growing from each vertex.
    cursor: Vec<usize>,
    orphans: VecDeque<VertexId>,
    /// `stamp[v] == pass` marks vertices already traced to a terminal during
    /// the current adoption pass.
    stamp: Vec<u64>,
    pass: u64,
    flow: Capacity,
}

impl<'a> BkSolver<'a> {
    pub fn new(net: &'a FlowNetwork) -> Self {
        let n = net.vertex_count();
        let mut solver = Self {
            net,
            adj: net.adjacency(),
            residual: net.arc_capacities(),
            tree: vec![TreeTag::Free; n],
            parent: vec![Parent::None; n],
            active: VecDeque::new(),
            queued: vec![false; n],
            cursor: vec![0; n],
            orphans: VecDeque::new(),
            stamp: vec![0; n],
            pass: 0,
            flow: 0,
        };
        for (v, tag) in [(net.source(), TreeTag::Source), (net.sink(), TreeTag::Sink)] {
            solver.tree[v] = tag;
            solver.parent[v] = Parent::Terminal;
            solver.activate(v);
        }
        solver
    }

    pub fn flow(&self) -> Capacity {
        self.flow
    }

    pub fn tree(&self, v: VertexId) -> TreeTag {
        self.tree[v]
    }

    pub fn parent_of(&self, v: VertexId) -> Option<VertexId> {
        match self.parent[v] {
            Parent::Arc(a) => Some(self.parent_vertex(v, a)),
            _ => None,
        }
    }

    /// One growth, augmentation and adoption round. Returns `false` once no
    /// augmenting path is left.
    pub fn step(&mut self) -> bool {
        match self.grow() {
            Some(bridge) => {
                self.augment(bridge);
                self.adopt();
                true
            }
            None => false,
        }
    }

    pub fn solve(mut self) -> CutResult {
        while self.step() {}
        self.finish()
    }

    fn finish(self) -> CutResult {
        let side: Vec<Side> = self
            .tree
            .iter()
            .map(|&t| if t == TreeTag::Source { Side::Source } else { Side::Sink })
            .collect();
        let edges = self.net.edges();
        let cut_edges: Vec<usize> = edges
            .iter()
            .enumerate()
            .filter(|(_, e)| side[e.from] == Side::Source && side[e.to] == Side::Sink)
            .map(|(i, _)| i)
            .collect();
        let cut_cost = cut_edges.iter().map(|&i| edges[i].capacity).sum();
        let edge_flow = edges
            .iter()
            .enumerate()
            .map(|(i, e)| e.capacity - self.residual[2 * i])
            .collect();
        CutResult {
            max_flow: self.flow,
            side,
            cut_edges,
            cut_cost,
            edge_flow,
        }
    }

    fn activate(&mut self, v: VertexId) {
        self.cursor[v] = 0;
        if !self.queued[v] {
            self.queued[v] = true;
            self.active.push_back(v);
        }
    }

    /// Residual capacity usable when growing from `p` along arc `a`
    /// (`p` is the tail of `a`).
    fn tree_cap_out(&self, tag: TreeTag, a: ArcId) -> Capacity {
        match tag {
            TreeTag::Source => self.residual[a],
            _ => self.residual[a ^ 1],
        }
    }

    fn parent_vertex(&self, v: VertexId, a: ArcId) -> VertexId {
        match self.tree[v] {
            TreeTag::Source => self.net.arc_tail(a),
            _ => self.net.arc_head(a),
        }
    }

    /// Returns an arc from a source-tree vertex to a sink-tree vertex.
    fn grow(&mut self) -> Option<ArcId> {
        while let Some(&p) = self.active.front() {
            let tag = self.tree[p];
            if tag != TreeTag::Free {
                while self.cursor[p] < self.adj[p].len() {
                    let a = self.adj[p][self.cursor[p]];
                    if self.tree_cap_out(tag, a) > 0 {
                        let q = self.net.arc_head(a);
                        let toward = if tag == TreeTag::Source { a } else { a ^ 1 };
                        match self.tree[q] {
                            TreeTag::Free => {
                                self.tree[q] = tag;
                                self.parent[q] = Parent::Arc(toward);
                                self.activate(q);
                            }
                            t if t == tag => {}
                            _ => return Some(toward),
                        }
                    }
                    self.cursor[p] += 1;
                }
            }
            self.active.pop_front();
            self.queued[p] = false;
        }
        None
    }

    fn augment(&mut self, bridge: ArcId) {
        let mut delta = self.residual[bridge];
        let mut v = self.net.arc_tail(bridge);
        while let Parent::Arc(a) = self.parent[v] {
            delta = delta.min(self.residual[a]);
            v = self.net.arc_tail(a);
        }
        let mut v = self.net.arc_head(bridge);
        while let Parent::Arc(a) = self.parent[v] {
            delta = delta.min(self.residual[a]);
            v = self.net.arc_head(a);
        }

        self.push(bridge, delta);
        let mut v = self.net.arc_tail(bridge);
        while let Parent::Arc(a) = self.parent[v] {
            let up = self.net.arc_tail(a);
            self.push(a, delta);
            if self.residual[a] == 0 {
                self.parent[v] = Parent::None;
                self.orphans.push_back(v);
            }
            v = up;
        }
        let mut v = self.net.arc_head(bridge);
        while let Parent::Arc(a) = self.parent[v] {
            let up = self.net.arc_head(a);
            self.push(a, delta);
            if self.residual[a] == 0 {
                self.parent[v] = Parent::None;
                self.orphans.push_back(v);
            }
            v = up;
        }
        self.flow += delta;
    }

    fn push(&mut self, a: ArcId, delta: Capacity) {
        self.residual[a] -= delta;
        self.residual[a ^ 1] += delta;
    }

    fn rooted(&mut self, start: VertexId) -> bool {
        let mut v = start;
        loop {
            if self.stamp[v] == self.pass {
                break;
            }
            match self.parent[v] {
                Parent::Terminal => break,
                Parent::None => return false,
                Parent::Arc(a) => v = self.parent_vertex(v, a),
            }
        }
        let mut v = start;
        while self.stamp[v] != self.pass {
            self.stamp[v] = self.pass;
            match self.parent[v] {
                Parent::Arc(a) => v = self.parent_vertex(v, a),
                _ => break,
            }
        }
        true
    }

    fn adopt(&mut self) {
        self.pass += 1;
        while let Some(p) = self.orphans.pop_front() {
            let tag = self.tree[p];
            // Arc from q into p along which p could hang below q.
            let link = |a: ArcId| if tag == TreeTag::Source { a ^ 1 } else { a };

            let mut new_parent = None;
            for i in 0..self.adj[p].len() {
                let a = self.adj[p][i];
                let q = self.net.arc_head(a);
                if self.tree[q] == tag && self.residual[link(a)] > 0 && self.rooted(q) {
                    new_parent = Some(link(a));
                    break;
                }
            }
            if let Some(arc) = new_parent {
                self.parent[p] = Parent::Arc(arc);
                continue;
            }

            for i in 0..self.adj[p].len() {
                let a = self.adj[p][i];
                let q = self.net.arc_head(a);
                if self.tree[q] != tag {
                    continue;
                }
                if self.residual[link(a)] > 0 {
                    self.activate(q);
                }
                if let Parent::Arc(b) = self.parent[q]
                    && self.parent_vertex(q, b) == p
                {
                    self.parent[q] = Parent::None;
                    self.orphans.push_back(q);
                }
            }
            self.tree[p] = TreeTag::Free;
        }
    }

    /// Verifies the search-tree invariants. A parent arc must have residual
    /// capacity, and following parents must lead to the terminal of the
    /// vertex's own tree.
    pub fn check_invariants(&self) -> Result<(), String> {
        for v in 0..self.net.vertex_count() {
            match self.parent[v] {
                Parent::None => {
                    if self.tree[v] != TreeTag::Free {
                        return Err(format!("vertex {v} is in a tree without a parent"));
                    }
                }
                Parent::Terminal => {
                    let expected = if v == self.net.source() {
                        TreeTag::Source
                    } else if v == self.net.sink() {
                        TreeTag::Sink
                    } else {
                        return Err(format!("non-terminal {v} marked as root"));
                    };
                    if self.tree[v] != expected {
                        return Err(format!("terminal {v} left its tree"));
                    }
                }
                Parent::Arc(a) => {
                    if self.tree[v] == TreeTag::Free {
                        return Err(format!("free vertex {v} has a parent"));
                    }
                    if self.residual[a] == 0 {
                        return Err(format!("parent arc {a} of {v} is saturated"));
                    }
                    let root = if self.tree[v] == TreeTag::Source {
                        self.net.source()
                    } else {
                        self.net.sink()
                    };
                    let mut u = v;
                    let mut steps = 0;
                    while let Parent::Arc(b) = self.parent[u] {
                        let up = self.parent_vertex(u, b);
                        if self.tree[up] != self.tree[v] {
                            return Err(format!("parent chain of {v} changes tree at {up}"));
                        }
                        u = up;
                        steps += 1;
                        if steps > self.net.vertex_count() {
                            return Err(format!("parent chain of {v} cycles"));
                        }
                    }
                    if u != root {
                        return Err(format!("parent chain of {v} ends at {u}, not {root}"));
                    }
                }
            }
        }
        Ok(())
    }
}

pub fn bk_maxflow(net: &FlowNetwork) -> CutResult {
    BkSolver::new(net).solve()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphcut::network::cut_cost;
    use crate::rng::Rng;

    #[test]
    fn single_edge() {
        let mut net = FlowNetwork::new(2, 0, 1).unwrap();
        net.add_edge(0, 1, 7).unwrap();
        let cut = bk_maxflow(&net);
        assert_eq!(cut.max_flow, 7);
        assert_eq!(cut.cut_edges, vec![0]);
        assert_eq!(cut.cut_cost, 7);
    }

    #[test]
    fn diamond() {
        let mut net = FlowNetwork::new(4, 0, 3).unwrap();
        for (u, v, c) in [(0, 1, 3), (0, 2, 2), (1, 3, 2), (2, 3, 3), (1, 2, 1)] {
            net.add_edge(u, v, c).unwrap();
        }
        let cut = bk_maxflow(&net);
        assert_eq!(cut.max_flow, 5);
        assert_eq!(cut_cost(&net, &cut.side).unwrap(), 5);
    }

    #[test]
    fn disconnected_terminals() {
        let mut net = FlowNetwork::new(4, 0, 3).unwrap();
        net.add_edge(0, 1, 4).unwrap();
        net.add_edge(2, 3, 4).unwrap();
        let cut = bk_maxflow(&net);
        assert_eq!(cut.max_flow, 0);
        assert_eq!(cut.side, vec![Side::Source, Side::Source, Side::Sink, Side::Sink]);
        assert!(cut.cut_edges.is_empty());
    }

    #[test]
    fn invariants_hold_after_every_round() {
        let mut rng = Rng::new(77);
        for _ in 0..50 {
            let n = 2 + rng.next_below(15) as usize;
            let mut net = FlowNetwork::new(n, 0, n - 1).unwrap();
            for u in 0..n {
                for v in 0..n {
                    if u != v && rng.next_below(3) == 0 {
                        net.add_edge(u, v, 1 + rng.next_below(9)).unwrap();
                    }
                }
            }
            let mut solver = BkSolver::new(&net);
            while solver.step() {
                solver.check_invariants().unwrap();
            }
            solver.check_invariants().unwrap();
        }
    }
}
