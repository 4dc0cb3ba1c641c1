//! Genuine Whitehead graphs: loopless labeled multigraphs on the vertex set
//! `{x1, X1, ..., xg, Xg}` read off from length-two cyclic subwords.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::free_group::{CyclicWord, Letter};
use crate::{Error, Result};

/// An edge of a genuine Whitehead graph. Endpoints are letters regarded as
/// vertices; `label` names the curve the edge belongs to.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GwEdge {
    pub a: Letter,
    pub b: Letter,
    pub label: Option<String>,
}

/// A loopless multigraph on all `2 * rank` letter-vertices.
#[derive(Clone, Debug)]
pub struct GwGraph {
    rank: usize,
    edges: Vec<GwEdge>,
}

/// Genuine Whitehead graph of a set of labeled cyclic words: the cyclic
/// subword `v1 v2` contributes an edge from `v1` to `v2^-1`, and a length-one
/// word `v` contributes the edge `v -- v^-1`.
pub fn genuine_graph(words: &[(String, CyclicWord)], rank: usize) -> Result<GwGraph> {
    let mut edges = Vec::new();
    for (label, w) in words {
        if w.rank() != rank {
            return Err(Error::RankMismatch { left: w.rank(), right: rank });
        }
        if w.is_empty() {
            return Err(Error::EmptyWord);
        }
        let letters = w.letters();
        let n = letters.len();
        for i in 0..n {
            let v1 = letters[i];
            let v2 = letters[(i + 1) % n];
            debug_assert_ne!(v1, v2.inverse(), "cyclically reduced words give no loops");
            edges.push(GwEdge { a: v1, b: v2.inverse(), label: Some(label.clone()) });
        }
    }
    Ok(GwGraph { rank, edges })
}

pub fn genuine_graph_unlabeled(words: &[CyclicWord], rank: usize) -> Result<GwGraph> {
    let labeled: Vec<(String, CyclicWord)> = words
        .iter()
        .enumerate()
        .map(|(i, w)| (format!("a{}", i + 1), w.clone()))
        .collect();
    genuine_graph(&labeled, rank)
}

impl GwGraph {
    pub fn new(rank: usize, edges: Vec<GwEdge>) -> Result<GwGraph> {
        for e in &edges {
            if e.a.gen() >= rank || e.b.gen() >= rank {
                return Err(Error::GeneratorOutOfRange {
                    index: e.a.gen().max(e.b.gen()) + 1,
                    rank,
                });
            }
            if e.a == e.b {
                return Err(Error::InvalidInput("loop edge in Whitehead graph".into()));
            }
        }
        Ok(GwGraph { rank, edges })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn edges(&self) -> &[GwEdge] {
        &self.edges
    }

    pub fn vertices(&self) -> impl Iterator<Item = Letter> {
        (0..2 * self.rank).map(Letter::from_bit)
    }

    pub fn valence(&self, v: Letter) -> usize {
        self.edges.iter().filter(|e| e.a == v || e.b == v).count()
    }

    /// Sum of all valences, i.e. twice the edge count.
    pub fn complexity(&self) -> usize {
        2 * self.edges.len()
    }

    fn adjacency(&self) -> BTreeMap<Letter, Vec<(Letter, usize)>> {
        let mut adj: BTreeMap<Letter, Vec<(Letter, usize)>> =
            self.vertices().map(|v| (v, Vec::new())).collect();
        for (id, e) in self.edges.iter().enumerate() {
            adj.get_mut(&e.a).unwrap().push((e.b, id));
            adj.get_mut(&e.b).unwrap().push((e.a, id));
        }
        adj
    }

    /// Connected components over all `2 * rank` vertices; isolated vertices
    /// form their own components.
    pub fn components(&self) -> Vec<BTreeSet<Letter>> {
        let adj = self.adjacency();
        let mut seen: BTreeSet<Letter> = BTreeSet::new();
        let mut comps = Vec::new();
        for v in self.vertices() {
            if seen.contains(&v) {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut stack = vec![v];
            while let Some(u) = stack.pop() {
                if !comp.insert(u) {
                    continue;
                }
                seen.insert(u);
                for &(w, _) in &adj[&u] {
                    if !comp.contains(&w) {
                        stack.push(w);
                    }
                }
            }
            comps.push(comp);
        }
        comps
    }

    pub fn component_count(&self) -> usize {
        self.components().len()
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    /// Cut vertices of the multigraph: vertices whose removal disconnects
    /// their component. Computed edge-aware, so parallel edges are handled
    /// directly rather than via the simple graph.
    pub fn cut_vertices(&self) -> BTreeSet<Letter> {
        let adj = self.adjacency();
        let mut disc: BTreeMap<Letter, usize> = BTreeMap::new();
        let mut low: BTreeMap<Letter, usize> = BTreeMap::new();
        let mut cuts = BTreeSet::new();
        let mut time = 0usize;

        // Iterative DFS with per-edge entry tracking.
        for root in self.vertices() {
            if disc.contains_key(&root) {
                continue;
            }
            let mut root_children = 0usize;
            // stack entries: (vertex, incoming edge id, next neighbor index)
            let mut stack: Vec<(Letter, Option<usize>, usize)> = vec![(root, None, 0)];
            disc.insert(root, time);
            low.insert(root, time);
            time += 1;
            while let Some(&mut (u, via, ref mut idx)) = stack.last_mut() {
                if *idx < adj[&u].len() {
                    let (v, edge_id) = adj[&u][*idx];
                    *idx += 1;
                    if Some(edge_id) == via {
                        continue;
                    }
                    if let Some(&dv) = disc.get(&v) {
                        let lu = low[&u];
                        low.insert(u, lu.min(dv));
                    } else {
                        if u == root {
                            root_children += 1;
                        }
                        disc.insert(v, time);
                        low.insert(v, time);
                        time += 1;
                        stack.push((v, Some(edge_id), 0));
                    }
                } else {
                    stack.pop();
                    if let Some(&mut (parent, _, _)) = stack.last_mut() {
                        let lu = low[&u];
                        let lp = low[&parent];
                        low.insert(parent, lp.min(lu));
                        if parent != root && lu >= disc[&parent] {
                            cuts.insert(parent);
                        }
                    }
                }
            }
            if root_children >= 2 {
                cuts.insert(root);
            }
        }
        cuts
    }

    /// The simple graph associated to this multigraph: one edge per
    /// parallelism class, loops deleted.
    pub fn simple_graph(&self) -> SimpleGraph {
        let mut edges = BTreeSet::new();
        for e in &self.edges {
            let (a, b) = if e.a <= e.b { (e.a, e.b) } else { (e.b, e.a) };
            if a != b {
                edges.insert((a, b));
            }
        }
        SimpleGraph { rank: self.rank, edges }
    }

    pub fn neighbors(&self, v: Letter) -> BTreeSet<Letter> {
        let mut out = BTreeSet::new();
        for e in &self.edges {
            if e.a == v {
                out.insert(e.b);
            } else if e.b == v {
                out.insert(e.a);
            }
        }
        out
    }

    /// Number of edges between `v` and any vertex of `part`.
    pub fn edges_between(&self, v: Letter, part: &BTreeSet<Letter>) -> usize {
        self.edges
            .iter()
            .filter(|e| (e.a == v && part.contains(&e.b)) || (e.b == v && part.contains(&e.a)))
            .count()
    }

    /// Components of `G - v` that contain a neighbor of `v`; these are the
    /// pieces a cut vertex decomposes its component into.
    pub fn parts_at(&self, v: Letter) -> Vec<BTreeSet<Letter>> {
        let neighbors = self.neighbors(v);
        let adj = self.adjacency();
        let mut seen: BTreeSet<Letter> = BTreeSet::new();
        seen.insert(v);
        let mut parts = Vec::new();
        for start in self.vertices() {
            if start == v || seen.contains(&start) {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                if u == v || !comp.insert(u) {
                    continue;
                }
                seen.insert(u);
                for &(w, _) in &adj[&u] {
                    if w != v && !comp.contains(&w) {
                        stack.push(w);
                    }
                }
            }
            if comp.iter().any(|u| neighbors.contains(u)) {
                parts.push(comp);
            }
        }
        parts
    }

    /// Edge counts per unordered vertex pair and curve label.
    pub fn signature(&self) -> BTreeMap<(Letter, Letter, Option<String>), usize> {
        let mut sig = BTreeMap::new();
        for e in &self.edges {
            let (a, b) = if e.a <= e.b { (e.a, e.b) } else { (e.b, e.a) };
            *sig.entry((a, b, e.label.clone())).or_insert(0) += 1;
        }
        sig
    }

    /// Textual node/edge list. With `z_names`, the last generator is printed
    /// as `z`/`Z` (the drilled handle).
    pub fn export(&self, z_names: bool) -> String {
        let name = |l: Letter| -> String {
            if z_names && l.gen() == self.rank - 1 {
                if l.is_inverse() { "Z".into() } else { "z".into() }
            } else {
                l.to_string()
            }
        };
        let mut out = String::new();
        for v in self.vertices() {
            let _ = writeln!(out, "node {}", name(v));
        }
        let mut sorted: Vec<&GwEdge> = self.edges.iter().collect();
        sorted.sort_by_key(|e| {
            let (a, b) = if e.a <= e.b { (e.a, e.b) } else { (e.b, e.a) };
            (a, b, e.label.clone())
        });
        for e in sorted {
            let (a, b) = if e.a <= e.b { (e.a, e.b) } else { (e.b, e.a) };
            let label = e.label.clone().unwrap_or_default();
            let _ = writeln!(out, "edge {} {} {}", name(a), name(b), label);
        }
        out
    }
}

/// Loopless simple graph on letter-vertices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SimpleGraph {
    rank: usize,
    edges: BTreeSet<(Letter, Letter)>,
}

impl SimpleGraph {
    pub fn edges(&self) -> &BTreeSet<(Letter, Letter)> {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn degree(&self, v: Letter) -> usize {
        self.edges.iter().filter(|(a, b)| *a == v || *b == v).count()
    }

    /// Cut vertices by brute force: remove each vertex and compare component
    /// counts among the remaining touched vertices. Independent of the
    /// multigraph DFS computation.
    pub fn cut_vertices(&self) -> BTreeSet<Letter> {
        let vertices: BTreeSet<Letter> =
            self.edges.iter().flat_map(|&(a, b)| [a, b]).collect();
        let count_components = |skip: Option<Letter>| -> usize {
            let verts: Vec<Letter> =
                vertices.iter().copied().filter(|v| Some(*v) != skip).collect();
            let mut seen: BTreeSet<Letter> = BTreeSet::new();
            let mut comps = 0;
            for &v in &verts {
                if seen.contains(&v) {
                    continue;
                }
                comps += 1;
                let mut stack = vec![v];
                while let Some(u) = stack.pop() {
                    if !seen.insert(u) {
                        continue;
                    }
                    for &(a, b) in &self.edges {
                        if Some(a) == skip || Some(b) == skip {
                            continue;
                        }
                        if a == u && !seen.contains(&b) {
                            stack.push(b);
                        } else if b == u && !seen.contains(&a) {
                            stack.push(a);
                        }
                    }
                }
            }
            comps
        };
        let base = count_components(None);
        vertices
            .iter()
            .copied()
            .filter(|&v| {
                // removing v deletes its incident edges; isolated leftovers
                // count as components
                count_components(Some(v)) > base
            })
            .collect()
    }
}

/// Summary of a genuine Whitehead graph per the cut-vertex slide machinery.
#[derive(Clone, Debug)]
pub struct GraphAnalysis {
    pub connected: bool,
    pub cut_vertices: BTreeSet<Letter>,
    pub complexity: usize,
    pub simple: SimpleGraph,
}

pub fn analyze_graph(g: &GwGraph) -> GraphAnalysis {
    let cut_vertices = g.cut_vertices();
    debug_assert_eq!(
        cut_vertices,
        g.simple_graph().cut_vertices(),
        "multigraph and simple-graph cut vertices must agree"
    );
    GraphAnalysis {
        connected: g.is_connected(),
        cut_vertices,
        complexity: g.complexity(),
        simple: g.simple_graph(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free_group::CyclicWord;

    fn cw(s: &str, rank: usize) -> CyclicWord {
        CyclicWord::parse(s, rank).unwrap()
    }

    fn lx(g: usize) -> Letter {
        Letter::new(g, false)
    }

    fn lxi(g: usize) -> Letter {
        Letter::new(g, true)
    }

    #[test]
    fn genuine_graph_single_generator() {
        let g = genuine_graph_unlabeled(&[cw("x1", 2)], 2).unwrap();
        assert_eq!(g.edges().len(), 1);
        let e = &g.edges()[0];
        assert_eq!((e.a, e.b), (lx(0), lxi(0)));
    }

    #[test]
    fn genuine_graph_wrap_edges() {
        // x2^3 X1: edges x2-X2 twice, x2-x1, X1-X2 (wrap)
        let g = genuine_graph_unlabeled(&[cw("x2 x2 x2 X1", 2)], 2).unwrap();
        let sig = g.signature();
        let count = |a: Letter, b: Letter| {
            let (a, b) = if a <= b { (a, b) } else { (b, a) };
            sig.get(&(a, b, Some("a1".into()))).copied().unwrap_or(0)
        };
        assert_eq!(count(lx(1), lxi(1)), 2);
        assert_eq!(count(lx(1), lx(0)), 1);
        assert_eq!(count(lxi(0), lxi(1)), 1);
        assert_eq!(g.edges().len(), 4);
        // valence of v equals occurrences of v plus occurrences of v^-1
        assert_eq!(g.valence(lx(0)), 1);
        assert_eq!(g.valence(lxi(0)), 1);
        assert_eq!(g.valence(lx(1)), 3);
        assert_eq!(g.valence(lxi(1)), 3);
    }

    #[test]
    fn genuine_graph_rejects_empty() {
        let empty = CyclicWord::new(vec![], 2).unwrap();
        assert!(genuine_graph_unlabeled(&[empty], 2).is_err());
    }

    #[test]
    fn commutator_graph_is_a_four_cycle() {
        let g = genuine_graph_unlabeled(&[cw("x1 x2 X1 X2", 2)], 2).unwrap();
        let a = analyze_graph(&g);
        assert!(a.connected);
        assert!(a.cut_vertices.is_empty());
        assert_eq!(a.complexity, 8);
        assert_eq!(a.simple.edge_count(), 4);
        assert!(g.vertices().all(|v| a.simple.degree(v) == 2));
    }

    #[test]
    fn disconnected_and_cut_vertex_cases() {
        // two disjoint edges
        let g = genuine_graph_unlabeled(&[cw("x1", 2), cw("x2", 2)], 2).unwrap();
        assert!(!g.is_connected());
        assert_eq!(g.component_count(), 2);

        // path X1 - x1 - x2: x1 is a cut vertex
        let g = GwGraph::new(
            2,
            vec![
                GwEdge { a: lxi(0), b: lx(0), label: None },
                GwEdge { a: lx(0), b: lx(1), label: None },
                GwEdge { a: lx(1), b: lxi(1), label: None },
            ],
        )
        .unwrap();
        let cuts = g.cut_vertices();
        assert_eq!(cuts, [lx(0), lx(1)].into_iter().collect());
        assert_eq!(cuts, g.simple_graph().cut_vertices());
    }

    #[test]
    fn parallel_edges_are_not_bridges() {
        // double edge x1 = x2 plus pendant: only the shared vertex cuts
        let g = GwGraph::new(
            2,
            vec![
                GwEdge { a: lx(0), b: lx(1), label: None },
                GwEdge { a: lx(0), b: lx(1), label: None },
                GwEdge { a: lx(1), b: lxi(1), label: None },
            ],
        )
        .unwrap();
        let cuts = g.cut_vertices();
        assert_eq!(cuts, [lx(1)].into_iter().collect());
        assert_eq!(cuts, g.simple_graph().cut_vertices());
    }

    #[test]
    fn parts_at_cut_vertex() {
        let g = GwGraph::new(
            2,
            vec![
                GwEdge { a: lxi(0), b: lx(0), label: None },
                GwEdge { a: lx(0), b: lx(1), label: None },
            ],
        )
        .unwrap();
        let parts = g.parts_at(lx(0));
        assert_eq!(parts.len(), 2);
    }
}
