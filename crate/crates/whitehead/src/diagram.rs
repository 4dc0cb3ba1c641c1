//! Whitehead diagrams: fat vertices `x_i`, `X_i` with cyclically ordered
//! numbered endpoints on the boundary sphere, edges labeled by spine curve,
//! an optional infinity marker and base-point crossings where two edges meet.
//!
//! Conventions:
//! - Endpoint numbering is positional: the k-th entry of a vertex line is the
//!   endpoint numbered k. Gluing identifies equally numbered points of `x_i`
//!   and `X_i`.
//! - Stored endpoint order is counterclockwise on `x_i` and clockwise on
//!   `X_i`, so the gluing needs no reflection; face tracing reverses the
//!   barred lists to obtain one global orientation.
//! - A curve entering the diagram through `X_i` and emerging from `x_i`
//!   traverses the handle positively and reads the letter `x_i`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::Serialize;

use crate::free_group::{CyclicWord, Letter, Word};
use crate::graph::{genuine_graph, GwGraph};
use crate::{Error, Result};

/// One end of an edge: `end` is 0 or 1.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct EndRef {
    pub edge: usize,
    pub end: u8,
}

/// A transversal crossing of two edges (the base point of a wedge spine).
/// The counterclockwise order of the four strands at the crossing is
/// `[e1 end0-side, e2 end0-side, e1 end1-side, e2 end1-side]`; swapping
/// `e1`/`e2` encodes the mirrored configuration.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Crossing {
    pub e1: usize,
    pub e2: usize,
}

#[derive(Clone, Debug)]
struct EdgeData {
    curve: usize,
}

/// Traced curve data: raw letter sequences plus the position of every edge
/// inside its curve word (the slot a drilled 2-handle letter is inserted at).
#[derive(Clone, Debug)]
pub struct TraceData {
    /// raw (uncanonicalized) cyclic letter sequence per curve
    raw: Vec<Vec<Letter>>,
    /// edge id -> (curve index, letter index the edge precedes)
    edge_pos: Vec<(usize, usize)>,
    /// edge id -> the end the traversal starts from (0 or 1)
    edge_start: Vec<u8>,
}

impl TraceData {
    pub fn words(&self, rank: usize) -> Result<Vec<CyclicWord>> {
        self.raw
            .iter()
            .map(|letters| CyclicWord::new(letters.clone(), rank))
            .collect()
    }

    pub fn raw_word(&self, curve: usize) -> &[Letter] {
        &self.raw[curve]
    }
}

/// A face of the diagram: an orbit of the face-tracing permutation. The
/// boundary walk lists (edge, segment, direction) triples; every edge side
/// belongs to exactly one face.
#[derive(Clone, Debug, Serialize)]
pub struct Face {
    pub id: usize,
    pub boundary: Vec<FaceStep>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FaceStep {
    pub edge: usize,
    pub segment: u8,
    pub forward: bool,
}

/// A boundary-parallel arc candidate: an unordered pair of faces together
/// with the crossed-edge path joining them in the face-adjacency dual.
#[derive(Clone, Debug, Serialize)]
pub struct ArcCandidate {
    pub id: usize,
    pub faces: (usize, usize),
    pub steps: Vec<ArcStep>,
    pub length: usize,
    /// fat-vertex label when every crossed edge is incident to it
    pub around_vertex: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ArcStep {
    pub edge: usize,
    pub segment: u8,
    pub from_face: usize,
}

/// Result of drilling a 2-handle out of a diagram: the spine words rewritten
/// over one extra generator `z` and the drilled genuine Whitehead graph.
#[derive(Clone, Debug)]
pub struct Drilled {
    pub words: Vec<(String, CyclicWord)>,
    pub graph: GwGraph,
    pub rank: usize,
}

// ---------------------------------------------------------------------------
// face-tracing machinery (segments, darts, rotations)

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum Node {
    Fat { gen: usize, barred: bool },
    Cross(usize),
}

#[derive(Clone, Debug)]
struct Segment {
    edge: usize,
    /// 0 = the piece at the edge's end0, 1 = the piece at end1. Unsplit
    /// edges have a single segment with index 0.
    index: u8,
    /// node at the segment's stub 0 / stub 1, in edge end0->end1 direction
    nodes: [Node; 2],
}

#[derive(Clone, Debug)]
struct FaceData {
    segments: Vec<Segment>,
    /// face id of each dart (dart = 2*segment + direction)
    face_of: Vec<usize>,
    faces: Vec<Face>,
    /// geometric rotation at each node: (segment, stub) in ccw order
    rotations: BTreeMap<Node, Vec<(usize, u8)>>,
}

/// A validated Whitehead diagram.
#[derive(Clone, Debug)]
pub struct Diagram {
    rank: usize,
    curves: Vec<String>,
    edges: Vec<EdgeData>,
    /// slots[g][side] = stored endpoint list of x_{g+1} (side 0) / X_{g+1}
    slots: Vec<[Vec<EndRef>; 2]>,
    infinity: Option<usize>,
    crossings: Vec<Crossing>,
    trace: TraceData,
    face_data: FaceData,
}

impl Diagram {
    /// Validate and index a diagram. Checks: endpoint bijections, equal
    /// valences, looplessness, per-curve gluing closure, and sphericity of
    /// every connected component (Euler count 2 via face tracing).
    pub fn new(
        rank: usize,
        curves: Vec<String>,
        edge_curves: Vec<usize>,
        slots: Vec<[Vec<EndRef>; 2]>,
        infinity: Option<usize>,
        crossings: Vec<Crossing>,
    ) -> Result<Diagram> {
        if slots.len() != rank {
            return Err(Error::InvalidDiagram(format!(
                "expected {rank} vertex pairs, got {}",
                slots.len()
            )));
        }
        let edges: Vec<EdgeData> = edge_curves
            .iter()
            .map(|&c| {
                if c >= curves.len() {
                    Err(Error::InvalidDiagram(format!("edge references unknown curve {c}")))
                } else {
                    Ok(EdgeData { curve: c })
                }
            })
            .collect::<Result<_>>()?;

        // every edge end appears exactly once
        let mut seen = vec![[false, false]; edges.len()];
        let mut end_location: Vec<[(usize, usize, usize); 2]> =
            vec![[(0, 0, 0); 2]; edges.len()];
        for (g, pair) in slots.iter().enumerate() {
            for (side, list) in pair.iter().enumerate() {
                for (slot, er) in list.iter().enumerate() {
                    if er.edge >= edges.len() || er.end > 1 {
                        return Err(Error::InvalidDiagram(format!(
                            "bad endpoint reference e{}.{}",
                            er.edge + 1,
                            er.end
                        )));
                    }
                    if seen[er.edge][er.end as usize] {
                        return Err(Error::InvalidDiagram(format!(
                            "endpoint e{}.{} placed twice",
                            er.edge + 1,
                            er.end
                        )));
                    }
                    seen[er.edge][er.end as usize] = true;
                    end_location[er.edge][er.end as usize] = (g, side, slot);
                }
            }
        }
        for (e, ends) in seen.iter().enumerate() {
            if !ends[0] || !ends[1] {
                return Err(Error::InvalidDiagram(format!("edge e{} has a free end", e + 1)));
            }
        }
        for (g, pair) in slots.iter().enumerate() {
            if pair[0].len() != pair[1].len() {
                return Err(Error::InvalidDiagram(format!(
                    "valence mismatch at handle {}: {} vs {}",
                    g + 1,
                    pair[0].len(),
                    pair[1].len()
                )));
            }
        }
        // no loops
        for (e, loc) in end_location.iter().enumerate() {
            if (loc[0].0, loc[0].1) == (loc[1].0, loc[1].1) {
                return Err(Error::InvalidDiagram(format!(
                    "edge e{} has both ends on the same fat vertex",
                    e + 1
                )));
            }
        }
        // crossings reference distinct existing edges, at most one per edge
        let mut crossed: BTreeMap<usize, usize> = BTreeMap::new();
        for (i, c) in crossings.iter().enumerate() {
            if c.e1 >= edges.len() || c.e2 >= edges.len() || c.e1 == c.e2 {
                return Err(Error::InvalidDiagram("bad base-point crossing".into()));
            }
            for e in [c.e1, c.e2] {
                if crossed.insert(e, i).is_some() {
                    return Err(Error::InvalidDiagram(format!(
                        "edge e{} carries two crossings",
                        e + 1
                    )));
                }
            }
        }
        if let Some(inf) = infinity {
            if inf >= edges.len() {
                return Err(Error::InvalidDiagram("infinity marker on unknown edge".into()));
            }
        }

        let trace = trace_curves(&curves, &edges, &slots, &end_location)?;
        let face_data = trace_faces(&edges, &slots, &end_location, &crossings)?;
        check_euler(rank, &face_data)?;

        Ok(Diagram { rank, curves, edges, slots, infinity, crossings, trace, face_data })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn curves(&self) -> &[String] {
        &self.curves
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge_curve(&self, edge: usize) -> &str {
        &self.curves[self.edges[edge].curve]
    }

    pub fn infinity(&self) -> Option<usize> {
        self.infinity
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn vertex_slots(&self, gen: usize, barred: bool) -> &[EndRef] {
        &self.slots[gen][usize::from(barred)]
    }

    pub fn trace_data(&self) -> &TraceData {
        &self.trace
    }

    /// The traced spine words, one cyclic word per curve label.
    pub fn trace_words(&self) -> Result<Vec<(String, CyclicWord)>> {
        let words = self.trace.words(self.rank)?;
        Ok(self.curves.iter().cloned().zip(words).collect())
    }

    /// The underlying genuine Whitehead graph, read directly from the edges.
    pub fn gw_graph(&self) -> GwGraph {
        let mut gw = Vec::new();
        for (e, data) in self.edges.iter().enumerate() {
            let (a, b) = self.edge_letters(e);
            gw.push(crate::graph::GwEdge {
                a,
                b,
                label: Some(self.curves[data.curve].clone()),
            });
        }
        GwGraph::new(self.rank, gw).expect("validated diagram produces a legal graph")
    }

    pub fn edge_letters(&self, edge: usize) -> (Letter, Letter) {
        let mut out = [Letter::new(0, false); 2];
        for end in 0..2 {
            let (g, side, _) = self.locate(EndRef { edge, end: end as u8 });
            out[end] = Letter::new(g, side == 1);
        }
        (out[0], out[1])
    }

    fn locate(&self, er: EndRef) -> (usize, usize, usize) {
        for (g, pair) in self.slots.iter().enumerate() {
            for (side, list) in pair.iter().enumerate() {
                for (slot, cand) in list.iter().enumerate() {
                    if cand.edge == er.edge && cand.end == er.end {
                        return (g, side, slot);
                    }
                }
            }
        }
        unreachable!("validated endpoints are always locatable")
    }

    pub fn faces(&self) -> &[Face] {
        &self.face_data.faces
    }

    pub fn face_count(&self) -> usize {
        self.face_data.faces.len()
    }

    /// The face in the corner between stored slots `k` and `k+1` of the
    /// unbarred vertex `x_{gen+1}`.
    pub fn corner_face_unbarred(&self, gen: usize, slot: usize) -> usize {
        let node = Node::Fat { gen, barred: false };
        let rot = &self.face_data.rotations[&node];
        let len = rot.len();
        // stored order on an unbarred vertex is the geometric ccw order
        let (seg, stub) = rot[slot % len];
        // incoming dart at this stub
        let dart = 2 * seg + usize::from(stub == 0);
        self.face_data.face_of[dart]
    }

    /// Faces on the two sides of an edge segment.
    pub fn segment_faces(&self, edge: usize, segment: u8) -> (usize, usize) {
        let seg = self
            .face_data
            .segments
            .iter()
            .position(|s| s.edge == edge && s.index == segment)
            .expect("segment exists");
        (self.face_data.face_of[2 * seg], self.face_data.face_of[2 * seg + 1])
    }

    pub fn segments_of_edge(&self, edge: usize) -> Vec<u8> {
        self.face_data
            .segments
            .iter()
            .filter(|s| s.edge == edge)
            .map(|s| s.index)
            .collect()
    }

    /// Shortest path between two faces in the face-adjacency dual graph,
    /// ties broken by smallest face id then smallest crossed edge. Returns
    /// the crossed segments with the face each step leaves from.
    pub fn dual_path(&self, from: usize, to: usize) -> Result<Vec<ArcStep>> {
        if from == to {
            return Err(Error::IdenticalFaces);
        }
        let nfaces = self.face_data.faces.len();
        // adjacency: face -> sorted (neighbor, segment index)
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nfaces];
        for (si, _) in self.face_data.segments.iter().enumerate() {
            let fa = self.face_data.face_of[2 * si];
            let fb = self.face_data.face_of[2 * si + 1];
            adj[fa].push((fb, si));
            adj[fb].push((fa, si));
        }
        for list in &mut adj {
            list.sort();
        }
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; nfaces];
        let mut dist: Vec<Option<usize>> = vec![None; nfaces];
        dist[from] = Some(0);
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(from);
        while let Some(f) = queue.pop_front() {
            if f == to {
                break;
            }
            for &(g, si) in &adj[f] {
                if dist[g].is_none() {
                    dist[g] = Some(dist[f].unwrap() + 1);
                    parent[g] = Some((f, si));
                    queue.push_back(g);
                }
            }
        }
        if dist[to].is_none() {
            return Err(Error::InvalidDiagram(format!(
                "faces {from} and {to} lie in different diagram components"
            )));
        }
        let mut steps = Vec::new();
        let mut cur = to;
        while let Some((prev, si)) = parent[cur] {
            let seg = &self.face_data.segments[si];
            steps.push(ArcStep { edge: seg.edge, segment: seg.index, from_face: prev });
            cur = prev;
        }
        steps.reverse();
        Ok(steps)
    }

    /// Assemble an arc candidate from a face pair.
    pub fn arc_candidate(&self, id: usize, fa: usize, fb: usize) -> Result<ArcCandidate> {
        let steps = self.dual_path(fa, fb)?;
        Ok(self.candidate_from_steps(id, (fa, fb), steps))
    }

    pub fn candidate_from_steps(
        &self,
        id: usize,
        faces: (usize, usize),
        steps: Vec<ArcStep>,
    ) -> ArcCandidate {
        let length = steps.len();
        let around_vertex = self.common_vertex(&steps);
        ArcCandidate { id, faces, steps, length, around_vertex }
    }

    fn common_vertex(&self, steps: &[ArcStep]) -> Option<String> {
        let mut common: Option<BTreeSet<(usize, usize)>> = None;
        for step in steps {
            let mut here = BTreeSet::new();
            for end in 0..2u8 {
                let (g, side, _) = self.locate(EndRef { edge: step.edge, end });
                here.insert((g, side));
            }
            common = Some(match common {
                None => here,
                Some(prev) => prev.intersection(&here).copied().collect(),
            });
        }
        let common = common?;
        let (g, side) = common.into_iter().next()?;
        Some(vertex_name(g, side == 1))
    }

    /// Drill the 2-handle determined by an arc candidate: each crossed edge
    /// gains one `z` letter at the crossing position, with sign determined by
    /// the side the drill path crosses from.
    pub fn drill(&self, candidate: &ArcCandidate) -> Result<Drilled> {
        if candidate.faces.0 == candidate.faces.1 || candidate.steps.is_empty() {
            return Err(Error::IdenticalFaces);
        }
        let new_rank = self.rank + 1;
        // insertions[curve] = (letter index, order along path, z letter)
        let mut insertions: Vec<Vec<(usize, usize, Letter)>> =
            vec![Vec::new(); self.curves.len()];
        for (order, step) in candidate.steps.iter().enumerate() {
            let seg_pos = self
                .face_data
                .segments
                .iter()
                .position(|s| s.edge == step.edge && s.index == step.segment)
                .ok_or_else(|| Error::InvalidDiagram("unknown segment in arc".into()))?;
            // dart of the segment in the curve's traversal direction
            let start = self.trace.edge_start[step.edge];
            let dir_forward = start == 0; // traversal runs end0 -> end1
            let dart = 2 * seg_pos + usize::from(!dir_forward);
            let left = self.face_data.face_of[dart];
            // Crossing from the curve's left side inserts z^-1; this matches
            // the drilled torus-diagram edge counts (z-x edges, not Z-x).
            let inverse = left == step.from_face;
            let (curve, pos) = self.trace.edge_pos[step.edge];
            insertions[curve].push((pos, order, Letter::new(self.rank, inverse)));
        }
        let mut words = Vec::new();
        for (curve, letters) in self.trace.raw.iter().enumerate() {
            let mut ins = insertions[curve].clone();
            ins.sort();
            let mut out: Vec<Letter> = Vec::with_capacity(letters.len() + ins.len());
            let mut it = ins.into_iter().peekable();
            for (i, &l) in letters.iter().enumerate() {
                while let Some(&(pos, _, z)) = it.peek() {
                    if pos == i {
                        out.push(z);
                        it.next();
                    } else {
                        break;
                    }
                }
                out.push(l);
            }
            for (_, _, z) in it {
                out.push(z);
            }
            let word = Word::reduce(out, new_rank)?;
            let cyclic = crate::free_group::cyclic_reduce(&word).0;
            words.push((self.curves[curve].clone(), cyclic));
        }
        let graph = genuine_graph(&words, new_rank)?;
        Ok(Drilled { words, graph, rank: new_rank })
    }

    /// Serialize to the line-oriented text format.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "rank {}", self.rank);
        let _ = writeln!(out, "curves {}", self.curves.join(" "));
        for g in 0..self.rank {
            for side in 0..2 {
                let name = vertex_name(g, side == 1);
                let ends: Vec<String> = self.slots[g][side]
                    .iter()
                    .map(|er| format!("e{}.{}", er.edge + 1, er.end))
                    .collect();
                let _ = writeln!(out, "vertex {name}: {}", ends.join(" "));
            }
        }
        for (e, data) in self.edges.iter().enumerate() {
            let _ = writeln!(out, "edge e{} {}", e + 1, self.curves[data.curve]);
        }
        if let Some(inf) = self.infinity {
            let _ = writeln!(out, "infinity e{}", inf + 1);
        }
        for c in &self.crossings {
            let _ = writeln!(out, "basepoint e{} e{}", c.e1 + 1, c.e2 + 1);
        }
        out
    }

    /// Parse the text format produced by [`Diagram::to_text`].
    pub fn from_text(text: &str) -> Result<Diagram> {
        let mut rank: Option<usize> = None;
        let mut curves: Vec<String> = Vec::new();
        let mut vertex_lines: BTreeMap<(usize, usize), Vec<EndRef>> = BTreeMap::new();
        let mut edge_lines: BTreeMap<usize, String> = BTreeMap::new();
        let mut infinity = None;
        let mut crossings = Vec::new();

        let parse_edge_id = |tok: &str, line: usize| -> Result<usize> {
            let rest = tok
                .strip_prefix('e')
                .ok_or(Error::Parse { line, detail: format!("expected edge id, got `{tok}`") })?;
            let id: usize = rest
                .parse()
                .map_err(|_| Error::Parse { line, detail: format!("bad edge id `{tok}`") })?;
            if id == 0 {
                return Err(Error::Parse { line, detail: "edge ids are 1-based".into() });
            }
            Ok(id - 1)
        };

        for (num, raw_line) in text.lines().enumerate() {
            let line = num + 1;
            let content = raw_line.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let mut toks = content.split_whitespace();
            let head = toks.next().unwrap();
            match head {
                "rank" => {
                    let r = toks
                        .next()
                        .and_then(|t| t.parse().ok())
                        .ok_or(Error::Parse { line, detail: "bad rank".into() })?;
                    rank = Some(r);
                }
                "curves" => {
                    curves = toks.map(String::from).collect();
                }
                "vertex" => {
                    let name = toks
                        .next()
                        .ok_or(Error::Parse { line, detail: "missing vertex name".into() })?;
                    let name = name.trim_end_matches(':');
                    let (g, side) = parse_vertex_name(name)
                        .ok_or(Error::Parse { line, detail: format!("bad vertex `{name}`") })?;
                    let mut ends = Vec::new();
                    for tok in toks {
                        let tok = tok.trim_end_matches(':');
                        let (eid, end) = tok.split_once('.').ok_or(Error::Parse {
                            line,
                            detail: format!("bad endpoint `{tok}`"),
                        })?;
                        let edge = parse_edge_id(eid, line)?;
                        let end: u8 = end.parse().map_err(|_| Error::Parse {
                            line,
                            detail: format!("bad endpoint `{tok}`"),
                        })?;
                        ends.push(EndRef { edge, end });
                    }
                    vertex_lines.insert((g, side), ends);
                }
                "edge" => {
                    let id = parse_edge_id(
                        toks.next()
                            .ok_or(Error::Parse { line, detail: "missing edge id".into() })?,
                        line,
                    )?;
                    let label = toks
                        .next()
                        .ok_or(Error::Parse { line, detail: "missing curve label".into() })?;
                    edge_lines.insert(id, label.to_string());
                }
                "infinity" => {
                    infinity = Some(parse_edge_id(
                        toks.next()
                            .ok_or(Error::Parse { line, detail: "missing edge id".into() })?,
                        line,
                    )?);
                }
                "basepoint" => {
                    let a = parse_edge_id(
                        toks.next()
                            .ok_or(Error::Parse { line, detail: "missing edge id".into() })?,
                        line,
                    )?;
                    let b = parse_edge_id(
                        toks.next()
                            .ok_or(Error::Parse { line, detail: "missing edge id".into() })?,
                        line,
                    )?;
                    crossings.push(Crossing { e1: a, e2: b });
                }
                other => {
                    return Err(Error::Parse { line, detail: format!("unknown directive `{other}`") });
                }
            }
        }
        let rank = rank.ok_or(Error::Parse { line: 0, detail: "missing rank".into() })?;
        let nedges = edge_lines.keys().map(|&e| e + 1).max().unwrap_or(0);
        let mut edge_curves = Vec::with_capacity(nedges);
        for e in 0..nedges {
            let label = edge_lines
                .get(&e)
                .ok_or(Error::Parse { line: 0, detail: format!("edge e{} undeclared", e + 1) })?;
            let curve = curves
                .iter()
                .position(|c| c == label)
                .ok_or(Error::Parse { line: 0, detail: format!("unknown curve `{label}`") })?;
            edge_curves.push(curve);
        }
        let mut slots = vec![[Vec::new(), Vec::new()]; rank];
        for ((g, side), ends) in vertex_lines {
            if g >= rank {
                return Err(Error::Parse { line: 0, detail: format!("vertex x{} out of rank", g + 1) });
            }
            slots[g][side] = ends;
        }
        Diagram::new(rank, curves, edge_curves, slots, infinity, crossings)
    }
}

pub fn vertex_name(gen: usize, barred: bool) -> String {
    if barred {
        format!("X{}", gen + 1)
    } else {
        format!("x{}", gen + 1)
    }
}

fn parse_vertex_name(name: &str) -> Option<(usize, usize)> {
    let mut chars = name.chars();
    let head = chars.next()?;
    let side = match head {
        'x' => 0,
        'X' => 1,
        _ => return None,
    };
    let idx: usize = chars.as_str().parse().ok()?;
    if idx == 0 {
        return None;
    }
    Some((idx - 1, side))
}

/// Delete all letters of the last generator and re-reduce: glue the drilled
/// disks back and kill the longitude.
pub fn fill(words: &[(String, CyclicWord)], rank: usize) -> Result<Vec<(String, CyclicWord)>> {
    if rank == 0 {
        return Err(Error::InvalidInput("cannot fill a rank-0 system".into()));
    }
    let z = rank - 1;
    words
        .iter()
        .map(|(label, w)| {
            let letters: Vec<Letter> =
                w.letters().iter().filter(|l| l.gen() != z).copied().collect();
            let word = Word::reduce(letters, rank - 1)?;
            Ok((label.clone(), crate::free_group::cyclic_reduce(&word).0))
        })
        .collect()
}

/// Slide the handle `v` under the part `X1` of the genuine Whitehead graph:
/// `v` must be a cut vertex and `X1` one of the components of `G - v` not
/// containing `v`'s opposite vertex. Returns the slid words and the type II
/// automorphism realizing the slide; complexity strictly decreases.
pub fn slide(
    words: &[(String, CyclicWord)],
    rank: usize,
    v: Letter,
    part: &BTreeSet<Letter>,
) -> Result<(Vec<(String, CyclicWord)>, crate::free_group::WhiteheadAutomorphism)> {
    let graph = genuine_graph(words, rank)?;
    let parts = graph.parts_at(v);
    if parts.len() < 2 {
        return Err(Error::NotCutVertex(v.to_string()));
    }
    if part.contains(&v.inverse()) {
        return Err(Error::PartContainsOpposite(v.inverse().to_string()));
    }
    if !parts.iter().any(|p| p == part) {
        return Err(Error::InvalidInput(format!(
            "the given part is not a component of the graph minus {v}"
        )));
    }
    let aut = crate::free_group::WhiteheadAutomorphism::type_ii(
        rank,
        v,
        part.iter().copied(),
    )?;
    let slid: Vec<(String, CyclicWord)> = words
        .iter()
        .map(|(label, w)| Ok((label.clone(), aut.apply_cyclic(w)?)))
        .collect::<Result<_>>()?;
    let new_graph = genuine_graph(&slid, rank)?;
    debug_assert!(
        new_graph.complexity() < graph.complexity(),
        "a cut-vertex slide must strictly decrease complexity"
    );
    Ok((slid, aut))
}

// ---------------------------------------------------------------------------
// tracing

fn trace_curves(
    curves: &[String],
    edges: &[EdgeData],
    slots: &[[Vec<EndRef>; 2]],
    end_location: &[[(usize, usize, usize); 2]],
) -> Result<TraceData> {
    let mut raw: Vec<Vec<Letter>> = vec![Vec::new(); curves.len()];
    let mut edge_pos = vec![(usize::MAX, usize::MAX); edges.len()];
    let mut edge_start = vec![0u8; edges.len()];
    for (curve, label) in curves.iter().enumerate() {
        let members: Vec<usize> = edges
            .iter()
            .enumerate()
            .filter(|(_, d)| d.curve == curve)
            .map(|(e, _)| e)
            .collect();
        if members.is_empty() {
            continue;
        }
        let start_edge = members[0];
        let mut letters = Vec::new();
        let mut visited: BTreeSet<usize> = BTreeSet::new();
        let mut edge = start_edge;
        let mut start_end = 0u8;
        loop {
            if visited.contains(&edge) {
                return Err(Error::GluingInconsistency {
                    vertex: label.clone(),
                    point: edge + 1,
                    detail: "curve revisits an edge before closing".into(),
                });
            }
            if edges[edge].curve != curve {
                let (g, side, slot) = end_location[edge][start_end as usize];
                return Err(Error::GluingInconsistency {
                    vertex: vertex_name(g, side == 1),
                    point: slot + 1,
                    detail: format!(
                        "curve {label} runs into an edge of curve {}",
                        curves[edges[edge].curve]
                    ),
                });
            }
            visited.insert(edge);
            edge_start[edge] = start_end;
            edge_pos[edge] = (curve, letters.len());
            // walk the edge to its far end
            let arrive_end = 1 - start_end;
            let (g, side, slot) = end_location[edge][arrive_end as usize];
            letters.push(Letter::new(g, side == 0));
            // glue: emerge at the equally numbered point of the partner
            let other_side = 1 - side;
            let list = &slots[g][other_side];
            let er = *list.get(slot).ok_or(Error::GluingInconsistency {
                vertex: vertex_name(g, other_side == 1),
                point: slot + 1,
                detail: "no equally numbered point on the partner vertex".into(),
            })?;
            edge = er.edge;
            start_end = er.end;
            if edge == start_edge && start_end == 0 {
                if visited.len() == members.len() {
                    break;
                }
                return Err(Error::GluingInconsistency {
                    vertex: label.clone(),
                    point: start_edge + 1,
                    detail: format!(
                        "curve {label} closes after {} of {} edges",
                        visited.len(),
                        members.len()
                    ),
                });
            }
            if visited.len() > members.len() {
                return Err(Error::GluingInconsistency {
                    vertex: label.clone(),
                    point: 0,
                    detail: "curve does not close after visiting all its edges".into(),
                });
            }
        }
        raw[curve] = letters;
    }
    Ok(TraceData { raw, edge_pos, edge_start })
}

// ---------------------------------------------------------------------------
// faces

fn trace_faces(
    edges: &[EdgeData],
    slots: &[[Vec<EndRef>; 2]],
    end_location: &[[(usize, usize, usize); 2]],
    crossings: &[Crossing],
) -> Result<FaceData> {
    let crossing_of: BTreeMap<usize, usize> = crossings
        .iter()
        .enumerate()
        .flat_map(|(i, c)| [(c.e1, i), (c.e2, i)])
        .collect();

    let mut segments: Vec<Segment> = Vec::new();
    let mut segs_of_edge: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for e in 0..edges.len() {
        let node_at = |end: usize| -> Node {
            let (g, side, _) = end_location[e][end];
            Node::Fat { gen: g, barred: side == 1 }
        };
        let ids = if let Some(&ci) = crossing_of.get(&e) {
            let a = segments.len();
            segments.push(Segment { edge: e, index: 0, nodes: [node_at(0), Node::Cross(ci)] });
            segments.push(Segment { edge: e, index: 1, nodes: [Node::Cross(ci), node_at(1)] });
            vec![a, a + 1]
        } else {
            segments.push(Segment { edge: e, index: 0, nodes: [node_at(0), node_at(1)] });
            vec![segments.len() - 1]
        };
        segs_of_edge.insert(e, ids);
    }

    // geometric ccw rotation at every node
    let mut rotations: BTreeMap<Node, Vec<(usize, u8)>> = BTreeMap::new();
    for (g, pair) in slots.iter().enumerate() {
        for (side, list) in pair.iter().enumerate() {
            let node = Node::Fat { gen: g, barred: side == 1 };
            let mut stubs: Vec<(usize, u8)> = list
                .iter()
                .map(|er| {
                    let segs = &segs_of_edge[&er.edge];
                    if er.end == 0 {
                        (segs[0], 0u8)
                    } else {
                        (*segs.last().unwrap(), 1u8)
                    }
                })
                .collect();
            if side == 1 {
                stubs.reverse(); // stored clockwise; faces need ccw
            }
            rotations.insert(node, stubs);
        }
    }
    for (ci, c) in crossings.iter().enumerate() {
        let s1 = &segs_of_edge[&c.e1];
        let s2 = &segs_of_edge[&c.e2];
        if s1.len() != 2 || s2.len() != 2 {
            return Err(Error::InvalidDiagram("crossing on an unsplit edge".into()));
        }
        // ccw order: e1 end0-side, e2 end0-side, e1 end1-side, e2 end1-side
        rotations.insert(
            Node::Cross(ci),
            vec![(s1[0], 1), (s2[0], 1), (s1[1], 0), (s2[1], 0)],
        );
    }

    // face tracing: next(dart) leaves via the ccw successor of the incoming stub
    let ndarts = 2 * segments.len();
    let mut face_of = vec![usize::MAX; ndarts];
    let mut faces = Vec::new();
    for start in 0..ndarts {
        if face_of[start] != usize::MAX {
            continue;
        }
        let id = faces.len();
        let mut boundary = Vec::new();
        let mut dart = start;
        loop {
            face_of[dart] = id;
            let seg = dart / 2;
            boundary.push(FaceStep {
                edge: segments[seg].edge,
                segment: segments[seg].index,
                forward: dart % 2 == 0,
            });
            let stub = if dart % 2 == 0 { 1u8 } else { 0u8 };
            let node = segments[seg].nodes[stub as usize];
            let rot = rotations.get(&node).ok_or_else(|| {
                Error::InvalidDiagram("segment attached to unknown node".into())
            })?;
            let pos = rot
                .iter()
                .position(|&(s, b)| s == seg && b == stub)
                .ok_or_else(|| Error::InvalidDiagram("rotation misses a stub".into()))?;
            let (next_seg, next_stub) = rot[(pos + 1) % rot.len()];
            // leave the node through next_stub
            dart = 2 * next_seg + usize::from(next_stub == 1);
            if dart == start {
                break;
            }
        }
        faces.push(Face { id, boundary });
    }
    Ok(FaceData { segments, face_of, faces, rotations })
}

fn check_euler(rank: usize, fd: &FaceData) -> Result<()> {
    // per-component sphere check; isolated fat vertices are fine
    let mut nodes: BTreeSet<Node> = (0..rank)
        .flat_map(|g| [Node::Fat { gen: g, barred: false }, Node::Fat { gen: g, barred: true }])
        .collect();
    for seg in &fd.segments {
        nodes.insert(seg.nodes[0]);
        nodes.insert(seg.nodes[1]);
    }
    let mut adj: BTreeMap<Node, Vec<Node>> = nodes.iter().map(|&n| (n, Vec::new())).collect();
    for seg in &fd.segments {
        adj.get_mut(&seg.nodes[0]).unwrap().push(seg.nodes[1]);
        adj.get_mut(&seg.nodes[1]).unwrap().push(seg.nodes[0]);
    }
    let mut seen: BTreeSet<Node> = BTreeSet::new();
    for &start in nodes.iter() {
        if seen.contains(&start) {
            continue;
        }
        let mut comp_nodes = BTreeSet::new();
        let mut stack = vec![start];
        while let Some(n) = stack.pop() {
            if !comp_nodes.insert(n) {
                continue;
            }
            seen.insert(n);
            for &m in &adj[&n] {
                if !comp_nodes.contains(&m) {
                    stack.push(m);
                }
            }
        }
        let v = comp_nodes.len();
        let e = fd
            .segments
            .iter()
            .filter(|s| comp_nodes.contains(&s.nodes[0]))
            .count();
        if e == 0 {
            continue; // isolated fat vertex
        }
        let f = {
            let mut ids = BTreeSet::new();
            for (si, seg) in fd.segments.iter().enumerate() {
                if comp_nodes.contains(&seg.nodes[0]) {
                    ids.insert(fd.face_of[2 * si]);
                    ids.insert(fd.face_of[2 * si + 1]);
                }
            }
            ids.len()
        };
        if v + f != e + 2 {
            return Err(Error::InvalidDiagram(format!(
                "component fails the sphere Euler count: V={v} E={e} F={f}"
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// rank-1 diagram with a single edge x1 -> X1
    fn one_edge() -> Diagram {
        Diagram::new(
            1,
            vec!["a1".into()],
            vec![0],
            vec![[
                vec![EndRef { edge: 0, end: 0 }],
                vec![EndRef { edge: 0, end: 1 }],
            ]],
            None,
            vec![],
        )
        .unwrap()
    }

    #[test]
    fn single_edge_diagram() {
        let d = one_edge();
        let words = d.trace_words().unwrap();
        assert_eq!(words.len(), 1);
        assert_eq!(words[0].1.to_string(), "x1");
        // V=2, E=1 forces F=1: one disk face bounded twice
        assert_eq!(d.face_count(), 1);
    }

    #[test]
    fn empty_diagram_traces_nothing() {
        let d = Diagram::new(2, vec![], vec![], vec![[vec![], vec![]], [vec![], vec![]]], None, vec![])
            .unwrap();
        assert!(d.trace_words().unwrap().is_empty());
    }

    #[test]
    fn loops_are_rejected() {
        // both ends of e1 on the fat vertex x1
        let err = Diagram::new(
            1,
            vec!["a1".into()],
            vec![0],
            vec![[
                vec![EndRef { edge: 0, end: 0 }, EndRef { edge: 0, end: 1 }],
                vec![],
            ]],
            None,
            vec![],
        );
        assert!(err.is_err());
    }

    #[test]
    fn graph_matches_traced_words() {
        let d = one_edge();
        let words = d.trace_words().unwrap();
        let from_words = genuine_graph(&words, 1).unwrap();
        assert_eq!(from_words.signature(), d.gw_graph().signature());
    }

    #[test]
    fn text_roundtrip() {
        let d = one_edge();
        let text = d.to_text();
        let back = Diagram::from_text(&text).unwrap();
        assert_eq!(back.to_text(), text);
        assert_eq!(back.trace_words().unwrap()[0].1.to_string(), "x1");
    }

    #[test]
    fn fill_deletes_the_last_generator() {
        let words = vec![(
            "a1".to_string(),
            CyclicWord::parse("x2 x3 X1 X3", 3).unwrap(),
        )];
        let filled = fill(&words, 3).unwrap();
        assert_eq!(filled[0].1.to_string(), "X1 x2");
        let unchanged = vec![("a1".to_string(), CyclicWord::parse("x1 x2", 3).unwrap())];
        let filled = fill(&unchanged, 3).unwrap();
        assert_eq!(filled[0].1.to_string(), "x1 x2");
    }

    #[test]
    fn slide_requires_cut_vertex() {
        let words = vec![("a1".to_string(), CyclicWord::parse("x1 x2 X1 X2", 2).unwrap())];
        let part: BTreeSet<Letter> = [Letter::new(1, false)].into_iter().collect();
        let err = slide(&words, 2, Letter::new(0, false), &part);
        assert!(matches!(err, Err(Error::NotCutVertex(_))));
    }
}
