//! τ-graphs, the stack, and the σ-graph, with checks of their structure and
//! degree laws.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::order::{pairs, Bit};
use crate::parity::{check_plausible, PpStatus, SigmaMatrix, TauVector};

/// A loopless graph on `0..k` without parallel edges. When `oriented`, the
/// adjacency matrix holds arcs `i -> j`; otherwise it is symmetric.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    k: usize,
    oriented: bool,
    adj: Vec<u8>,
}

impl SimpleGraph {
    pub fn empty(k: usize, oriented: bool) -> Self {
        SimpleGraph { k, oriented, adj: vec![0; k * k] }
    }

    pub fn vertex_count(&self) -> usize {
        self.k
    }

    pub fn is_oriented(&self) -> bool {
        self.oriented
    }

    /// Adds the edge `{u, v}`, or the arc `u -> v` when oriented.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "loops are not allowed");
        self.adj[u * self.k + v] = 1;
        if !self.oriented {
            self.adj[v * self.k + u] = 1;
        }
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.k + v] == 1
    }

    /// Edges `(u, v)` with `u < v` when undirected, all arcs when oriented.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.k {
            let start = if self.oriented { 0 } else { u + 1 };
            for v in start..self.k {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    /// Out-degree, or degree when undirected.
    pub fn out_degree(&self, v: usize) -> usize {
        (0..self.k).filter(|&u| self.has_edge(v, u)).count()
    }

    /// In-degree, or degree when undirected.
    pub fn in_degree(&self, v: usize) -> usize {
        (0..self.k).filter(|&u| self.has_edge(u, v)).count()
    }

    pub fn neighbours(&self, v: usize) -> Vec<usize> {
        (0..self.k).filter(|&u| self.has_edge(v, u) || self.has_edge(u, v)).collect()
    }

    /// Plain DOT text, vertices labelled from 1.
    pub fn to_dot(&self, name: &str) -> String {
        let (kind, sep) = if self.oriented { ("digraph", "->") } else { ("graph", "--") };
        let mut out = format!("{kind} {name} {{\n");
        for v in 0..self.k {
            let _ = writeln!(out, "  {};", v + 1);
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "  {} {sep} {};", u + 1, v + 1);
        }
        out.push_str("}\n");
        out
    }
}

/// Switching at `v`: complements the neighbourhood of `v` when undirected,
/// reverses the arcs at `v` when oriented.
pub fn graph_switch(g: &SimpleGraph, v: usize) -> SimpleGraph {
    let k = g.k;
    let mut out = g.clone();
    for u in (0..k).filter(|&u| u != v) {
        if g.oriented {
            out.adj[v * k + u] = g.adj[u * k + v];
            out.adj[u * k + v] = g.adj[v * k + u];
        } else {
            out.adj[v * k + u] ^= 1;
            out.adj[u * k + v] ^= 1;
        }
    }
    out
}

/// Complements every edge when undirected, reverses every arc when oriented.
pub fn graph_complement(g: &SimpleGraph) -> SimpleGraph {
    let k = g.k;
    let mut out = g.clone();
    for u in 0..k {
        for v in (0..k).filter(|&v| v != u) {
            out.adj[u * k + v] = if g.oriented { g.adj[v * k + u] } else { g.adj[u * k + v] ^ 1 };
        }
    }
    out
}

/// `G_c`: edge `{i, j}` iff `τ^c_{ij} = 1`.
pub fn tau_graph(t: &TauVector, c: usize) -> SimpleGraph {
    let mut g = SimpleGraph::empty(t.k(), false);
    for (i, j) in pairs(t.k()) {
        if i != c && j != c && t.get(c, i, j) == 1 {
            g.add_edge(i, j);
        }
    }
    g
}

/// `G_c` as an isolated vertex `c` plus the complete bipartite graph between
/// `v1` and `v2`. `v1` holds the lowest vertex other than `c`, unless the
/// graph is empty, in which case `v1` is empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TauGraphDecomposition {
    pub c: usize,
    pub v1: Vec<usize>,
    pub v2: Vec<usize>,
}

/// Splits an undirected graph on `vertices` into the neighbourhood of the
/// first vertex and the rest.
fn split_at_first(g: &SimpleGraph, vertices: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let Some(&first) = vertices.first() else {
        return (Vec::new(), Vec::new());
    };
    let (near, far): (Vec<usize>, Vec<usize>) = vertices.iter().partition(|&&v| v != first && g.has_edge(first, v));
    (far, near)
}

fn is_complete_bipartite(g: &SimpleGraph, v1: &[usize], v2: &[usize]) -> bool {
    let within =
        |side: &[usize]| side.iter().enumerate().all(|(idx, &u)| side[idx + 1..].iter().all(|&v| !g.has_edge(u, v)));
    within(v1) && within(v2) && v1.iter().all(|&u| v2.iter().all(|&v| g.has_edge(u, v)))
}

fn is_clique(g: &SimpleGraph, side: &[usize]) -> bool {
    side.iter().enumerate().all(|(idx, &u)| side[idx + 1..].iter().all(|&v| g.has_edge(u, v)))
}

pub fn decompose_tau_graph(t: &TauVector, c: usize) -> Result<TauGraphDecomposition> {
    let g = tau_graph(t, c);
    let others: Vec<usize> = (0..t.k()).filter(|&v| v != c).collect();
    let (mut v1, mut v2) = split_at_first(&g, &others);
    if v2.is_empty() {
        std::mem::swap(&mut v1, &mut v2);
    }
    if !is_complete_bipartite(&g, &v1, &v2) {
        return Err(Error::Structure(format!(
            "tau-graph {} is not an isolated vertex plus a complete bipartite graph",
            c + 1
        )));
    }
    Ok(TauGraphDecomposition { c, v1, v2 })
}

pub fn tau_graphs(t: &TauVector) -> Result<Vec<TauGraphDecomposition>> {
    (0..t.k()).map(|c| decompose_tau_graph(t, c)).collect()
}

/// Mod-2 superposition of all τ-graphs.
pub fn stack_graph(t: &TauVector) -> SimpleGraph {
    let k = t.k();
    let mut g = SimpleGraph::empty(k, false);
    for (i, j) in pairs(k) {
        let sum = (0..k).filter(|&c| c != i && c != j).fold(0, |acc, c| acc ^ t.get(c, i, j));
        if sum == 1 {
            g.add_edge(i, j);
        }
    }
    g
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StackShape {
    /// Every edge between `v1` and `v2`, none inside. An empty stack is
    /// reported with `v1` empty.
    CompleteBipartite { v1: Vec<usize>, v2: Vec<usize> },
    /// Disjoint cliques on `c1` and `c2` covering every vertex; `c2` may be
    /// empty.
    Cliques { c1: Vec<usize>, c2: Vec<usize> },
    /// No edges; the shape forced for an OA(n+1, n) with `n ≡ 0, 1 (mod 4)`.
    Empty,
    /// All edges; the shape forced for an OA(n+1, n) with `n ≡ 2, 3 (mod 4)`.
    Complete,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StackClassification {
    pub graph: SimpleGraph,
    pub shape: StackShape,
}

pub fn stack(t: &TauVector) -> Result<StackClassification> {
    let k = t.k();
    let g = stack_graph(t);
    let all: Vec<usize> = (0..k).collect();
    let b = t.order().binom2_parity();
    let shape = if b == 0 {
        let (mut v1, mut v2) = split_at_first(&g, &all);
        if v2.is_empty() {
            std::mem::swap(&mut v1, &mut v2);
        }
        if !is_complete_bipartite(&g, &v1, &v2) {
            return Err(Error::Structure("stack is not complete bipartite".into()));
        }
        StackShape::CompleteBipartite { v1, v2 }
    } else {
        let (far, mut c1) = split_at_first(&g, &all);
        let (first, c2): (Vec<usize>, Vec<usize>) = far.iter().partition(|&&v| v == 0);
        c1.splice(0..0, first);
        if !is_clique(&g, &c1) || !is_clique(&g, &c2) || !is_complete_bipartite_complement(&g, &c1, &c2) {
            return Err(Error::Structure("stack is not a union of at most two cliques".into()));
        }
        StackShape::Cliques { c1, c2 }
    };

    if t.order().is_complete(k) && check_plausible(t).pp_plausible == PpStatus::Yes {
        let edges = g.edge_count();
        return if b == 0 && edges == 0 {
            Ok(StackClassification { graph: g, shape: StackShape::Empty })
        } else if b == 1 && edges == k * (k - 1) / 2 {
            Ok(StackClassification { graph: g, shape: StackShape::Complete })
        } else {
            Err(Error::Structure(
                "stack of a projective-plane parity must be empty (n = 0,1 mod 4) or complete (n = 2,3 mod 4)".into(),
            ))
        };
    }
    Ok(StackClassification { graph: g, shape })
}

/// No edges between the two sides.
fn is_complete_bipartite_complement(g: &SimpleGraph, c1: &[usize], c2: &[usize]) -> bool {
    c1.iter().all(|&u| c2.iter().all(|&v| !g.has_edge(u, v)))
}

/// Common parity of a degree sequence, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegreeParity {
    Uniform(Bit),
    Mixed,
}

impl DegreeParity {
    pub fn of(degrees: &[usize]) -> Self {
        match degrees.first() {
            None => DegreeParity::Uniform(0),
            Some(&d) if degrees.iter().all(|x| x % 2 == d % 2) => DegreeParity::Uniform((d % 2) as Bit),
            Some(_) => DegreeParity::Mixed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaGraphReport {
    pub graph: SimpleGraph,
    /// True iff `C(n,2)` is odd, making the graph a tournament.
    pub oriented: bool,
    /// Row sums `μ_c`.
    pub out_degrees: Vec<usize>,
    pub in_degrees: Vec<usize>,
    pub out_parity: DegreeParity,
    pub in_parity: DegreeParity,
    /// The degree law for `k = n + 1`; `None` otherwise.
    pub projective_degree_law: Option<bool>,
}

pub fn sigma_graph(s: &SigmaMatrix) -> SigmaGraphReport {
    let k = s.k();
    let oriented = s.order().binom2_parity() == 1;
    let mut graph = SimpleGraph::empty(k, oriented);
    for i in 0..k {
        for j in 0..k {
            if i != j && s.get(i, j) == 1 && (oriented || i < j) {
                graph.add_edge(i, j);
            }
        }
    }
    let out_degrees = s.out_degrees();
    let in_degrees = s.in_degrees();
    let out_parity = DegreeParity::of(&out_degrees);
    let in_parity = DegreeParity::of(&in_degrees);
    let projective_degree_law = s.order().is_complete(k).then(|| match s.order().class().residue() {
        0 => out_parity == DegreeParity::Uniform(0) && in_parity == DegreeParity::Uniform(0),
        1 => out_parity != DegreeParity::Mixed && in_parity == out_parity,
        2 => out_parity == DegreeParity::Uniform(1) && in_parity == DegreeParity::Uniform(1),
        _ => match (in_parity, out_parity) {
            (DegreeParity::Uniform(a), DegreeParity::Uniform(b)) => a != b,
            _ => false,
        },
    });
    SigmaGraphReport { graph, oriented, out_degrees, in_degrees, out_parity, in_parity, projective_degree_law }
}

/// For `k = n + 1` with `n` even: every τ-graph has partite sizes
/// `n1 ≡ n2 ≡ n/2 (mod 2)`. Returns the first failing decomposition.
pub fn check_partite_sizes(decomps: &[TauGraphDecomposition], n: usize) -> Option<&TauGraphDecomposition> {
    let half = (n / 2) % 2;
    decomps.iter().find(|d| d.v1.len() % 2 != half || d.v2.len() % 2 != half)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::Order;
    use crate::parity::tau_from_sigma;

    fn lower_triangular(k: usize, n: usize) -> SigmaMatrix {
        SigmaMatrix::from_upper(k, Order::Exact(n), |_, _| 0)
    }

    #[test]
    fn zero_tau_graphs_are_empty() {
        let t = TauVector::zero(5, Order::Exact(4));
        for d in tau_graphs(&t).unwrap() {
            assert!(d.v1.is_empty());
            assert_eq!(d.v2.len(), 4);
        }
        let st = stack(&t).unwrap();
        assert_eq!(st.graph.edge_count(), 0);
    }

    #[test]
    fn lower_triangular_decomposition() {
        let t = tau_from_sigma(&lower_triangular(5, 6));
        let d = decompose_tau_graph(&t, 2).unwrap();
        assert_eq!((d.v1, d.v2), (vec![0, 1], vec![3, 4]));
    }

    #[test]
    fn lower_triangular_stack_is_two_cliques() {
        let t = tau_from_sigma(&lower_triangular(5, 6));
        match stack(&t).unwrap().shape {
            StackShape::Cliques { c1, c2 } => assert_eq!(c1.len() + c2.len(), 5),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn switching_is_an_involution() {
        let mut g = SimpleGraph::empty(5, false);
        g.add_edge(0, 1);
        g.add_edge(2, 4);
        assert_eq!(graph_switch(&graph_switch(&g, 3), 3), g);
        assert_eq!(graph_complement(&graph_complement(&g)), g);
        assert_eq!(graph_switch(&graph_switch(&g, 1), 2), graph_switch(&graph_switch(&g, 2), 1));
    }

    #[test]
    fn tournament_switch_reverses_arcs() {
        let s = lower_triangular(4, 3);
        let g = sigma_graph(&s).graph;
        assert!(g.is_oriented());
        let h = graph_switch(&g, 0);
        for u in 1..4 {
            assert_eq!(h.has_edge(0, u), g.has_edge(u, 0));
        }
    }

    #[test]
    fn dot_output() {
        let mut g = SimpleGraph::empty(3, false);
        g.add_edge(0, 2);
        assert_eq!(g.to_dot("g"), "graph g {\n  1;\n  2;\n  3;\n  1 -- 3;\n}\n");
    }
}
