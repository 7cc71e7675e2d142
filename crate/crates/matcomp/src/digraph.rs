//! Directed graphs with half-edges and the path functors.
//!
//! A [`Digraph`] is a morphism-shaped graph: its sources are half-edges
//! pointing toward a vertex, its sinks half-edges pointing away, and a
//! source may pair directly with a sink as an *isolated arrow*.  Gluing two
//! graphs along a matching interface is composition; the vertex-disjoint
//! (resp. edge-disjoint) linkage relations `Path` and `EPath` turn graphs
//! into subset relations, decided per pair by a small max-flow check.
//!
//! Bicolored graphs get the `BPath` relation, assembled by tensoring one
//! uniform *star relation* per vertex and then strictly gluing the two
//! endpoint wires of every internal edge.  The lax variant of the same plan
//! (`bpath_lax`) accumulates a composition type and is realized on graphs by
//! breaking edges.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::compose::{compose_lax, LaxResult};
use crate::error::{Error, Result};
use crate::ground::GroundSet;
use crate::relation::{CompositionType, SubsetRelation};

/// Vertex colour of a bicolored digraph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Colour {
    White,
    Black,
}

/// A half-edge: a labeled stub either attached to a vertex or paired with a
/// half-edge of opposite polarity as an isolated arrow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfEdge {
    pub label: String,
    /// Index of the attachment vertex; `None` for isolated-arrow ends.
    pub at: Option<usize>,
}

/// A directed graph morphism between the label sets of its sources and
/// sinks.  Loops and parallel edges are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    vertices: Vec<String>,
    edges: Vec<(usize, usize)>,
    sources: Vec<HalfEdge>,
    sinks: Vec<HalfEdge>,
    /// Pairs of (source index, sink index) forming isolated arrows.
    arrows: Vec<(usize, usize)>,
}

impl Digraph {
    pub fn new(
        vertices: Vec<String>,
        edges: Vec<(String, String)>,
        sources: Vec<(String, Option<String>)>,
        sinks: Vec<(String, Option<String>)>,
        arrows: Vec<(String, String)>,
    ) -> Result<Self> {
        for (i, v) in vertices.iter().enumerate() {
            if vertices[..i].contains(v) {
                return Err(Error::DuplicateLabel(v.clone()));
            }
        }
        let vpos = |name: &str| -> Result<usize> {
            vertices
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| Error::UnknownLabel(name.to_string()))
        };
        let edges = edges
            .into_iter()
            .map(|(t, h)| Ok((vpos(&t)?, vpos(&h)?)))
            .collect::<Result<Vec<_>>>()?;
        let build_halves = |halves: Vec<(String, Option<String>)>| -> Result<Vec<HalfEdge>> {
            let mut out = Vec::new();
            for (label, at) in halves {
                if out.iter().any(|h: &HalfEdge| h.label == label) {
                    return Err(Error::DuplicateLabel(label));
                }
                let at = match at {
                    Some(v) => Some(vpos(&v)?),
                    None => None,
                };
                out.push(HalfEdge { label, at });
            }
            Ok(out)
        };
        let sources = build_halves(sources)?;
        let sinks = build_halves(sinks)?;
        let mut arrow_ix = Vec::new();
        let mut used_src = vec![false; sources.len()];
        let mut used_snk = vec![false; sinks.len()];
        for (a, b) in arrows {
            let i = sources
                .iter()
                .position(|h| h.label == a)
                .ok_or_else(|| Error::UnknownLabel(a.clone()))?;
            let j = sinks
                .iter()
                .position(|h| h.label == b)
                .ok_or_else(|| Error::UnknownLabel(b.clone()))?;
            if sources[i].at.is_some() || sinks[j].at.is_some() {
                return Err(Error::MalformedDigraph(format!(
                    "arrow ({a},{b}) uses an attached half-edge"
                )));
            }
            if used_src[i] || used_snk[j] {
                return Err(Error::MalformedDigraph(format!(
                    "arrow ({a},{b}) reuses a half-edge"
                )));
            }
            used_src[i] = true;
            used_snk[j] = true;
            arrow_ix.push((i, j));
        }
        for (i, h) in sources.iter().enumerate() {
            if h.at.is_none() && !used_src[i] {
                return Err(Error::MalformedDigraph(format!(
                    "source `{}` is neither attached nor in an arrow",
                    h.label
                )));
            }
        }
        for (j, h) in sinks.iter().enumerate() {
            if h.at.is_none() && !used_snk[j] {
                return Err(Error::MalformedDigraph(format!(
                    "sink `{}` is neither attached nor in an arrow",
                    h.label
                )));
            }
        }
        Ok(Digraph {
            vertices,
            edges,
            sources,
            sinks,
            arrows: arrow_ix,
        })
    }

    /// The identity morphism on `a`: no vertices, one isolated arrow per
    /// label.
    pub fn identity(a: &GroundSet) -> Self {
        let halves: Vec<HalfEdge> = a
            .labels()
            .iter()
            .map(|l| HalfEdge {
                label: l.clone(),
                at: None,
            })
            .collect();
        let arrows = (0..halves.len()).map(|i| (i, i)).collect();
        Digraph {
            vertices: Vec::new(),
            edges: Vec::new(),
            sources: halves.clone(),
            sinks: halves,
            arrows,
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn sources(&self) -> &[HalfEdge] {
        &self.sources
    }

    pub fn sinks(&self) -> &[HalfEdge] {
        &self.sinks
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn source_ground(&self) -> Result<GroundSet> {
        GroundSet::new(self.sources.iter().map(|h| h.label.clone()))
    }

    pub fn sink_ground(&self) -> Result<GroundSet> {
        GroundSet::new(self.sinks.iter().map(|h| h.label.clone()))
    }

    /// The reversed graph: edges flipped, sources and sinks swapped.
    pub fn reverse(&self) -> Digraph {
        Digraph {
            vertices: self.vertices.clone(),
            edges: self.edges.iter().map(|&(t, h)| (h, t)).collect(),
            sources: self.sinks.clone(),
            sinks: self.sources.clone(),
            arrows: self.arrows.iter().map(|&(i, j)| (j, i)).collect(),
        }
    }

    /// GraphViz rendering; deterministic for identical graphs.
    pub fn to_dot(&self, colours: Option<&[Colour]>) -> String {
        let mut out = String::from("digraph {\n  rankdir=LR;\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let fill = match colours.map(|c| c[i]) {
                Some(Colour::Black) => "black",
                Some(Colour::White) => "white",
                None => "lightblue",
            };
            let _ = writeln!(
                out,
                "  v{i} [label=\"{v}\", shape=circle, style=filled, fillcolor={fill}];"
            );
        }
        for h in &self.sources {
            let _ = writeln!(out, "  src_{0} [label=\"{0}\", shape=plaintext];", h.label);
        }
        for h in &self.sinks {
            let _ = writeln!(out, "  snk_{0} [label=\"{0}\", shape=plaintext];", h.label);
        }
        for &(t, h) in &self.edges {
            let _ = writeln!(out, "  v{t} -> v{h};");
        }
        for h in &self.sources {
            if let Some(v) = h.at {
                let _ = writeln!(out, "  src_{} -> v{};", h.label, v);
            }
        }
        for h in &self.sinks {
            if let Some(v) = h.at {
                let _ = writeln!(out, "  v{} -> snk_{};", v, h.label);
            }
        }
        for &(i, j) in &self.arrows {
            let _ = writeln!(
                out,
                "  src_{} -> snk_{};",
                self.sources[i].label, self.sinks[j].label
            );
        }
        out.push_str("}\n");
        out
    }
}

/// Glues `g ∘ h` along the common interface: each sink of `g` fuses with the
/// equally-labeled source of `h` into a full edge, with isolated arrows
/// absorbed into whatever they point at.
pub fn glue_graphs(g: &Digraph, h: &Digraph) -> Result<Digraph> {
    let g_sink = g.sink_ground()?;
    let h_source = h.source_ground()?;
    if !g_sink.same_elements(&h_source) {
        return Err(Error::InterfaceMismatch {
            expected: format!("{:?}", g_sink),
            found: format!("{:?}", h_source),
        });
    }
    let shift = g.vertices.len();
    let mut vertices = g.vertices.clone();
    for v in &h.vertices {
        if vertices.contains(v) {
            return Err(Error::LabelClash(v.clone()));
        }
        vertices.push(v.clone());
    }
    let mut edges = g.edges.clone();
    edges.extend(h.edges.iter().map(|&(t, hd)| (t + shift, hd + shift)));

    // Arrow partners: for a middle label b, where does g enter it from and
    // where does h leave it to?
    let g_arrow_of_sink: Vec<Option<usize>> = (0..g.sinks.len())
        .map(|j| g.arrows.iter().find(|&&(_, sj)| sj == j).map(|&(si, _)| si))
        .collect();
    let h_arrow_of_source: Vec<Option<usize>> = (0..h.sources.len())
        .map(|i| h.arrows.iter().find(|&&(si, _)| si == i).map(|&(_, sj)| sj))
        .collect();

    let mut sources: Vec<HalfEdge> = g
        .sources
        .iter()
        .map(|he| HalfEdge {
            label: he.label.clone(),
            at: he.at,
        })
        .collect();
    let mut sinks: Vec<HalfEdge> = h
        .sinks
        .iter()
        .map(|he| HalfEdge {
            label: he.label.clone(),
            at: he.at.map(|v| v + shift),
        })
        .collect();
    let mut arrows: Vec<(usize, usize)> = Vec::new();

    for (j, g_snk) in g.sinks.iter().enumerate() {
        let i = h_source
            .position(&g_snk.label)
            .expect("interface checked above");
        let h_src = &h.sources[i];
        match (g_snk.at, h_src.at) {
            (Some(u), Some(v)) => edges.push((u, v + shift)),
            (Some(u), None) => {
                // g enters a vertex, h forwards through an arrow to a sink
                let out_j = h_arrow_of_source[i].expect("validated arrow pairing");
                sinks[out_j].at = Some(u);
            }
            (None, Some(v)) => {
                let in_i = g_arrow_of_sink[j].expect("validated arrow pairing");
                sources[in_i].at = Some(v + shift);
            }
            (None, None) => {
                let in_i = g_arrow_of_sink[j].expect("validated arrow pairing");
                let out_j = h_arrow_of_source[i].expect("validated arrow pairing");
                arrows.push((in_i, out_j));
            }
        }
    }
    Ok(Digraph {
        vertices,
        edges,
        sources,
        sinks,
        arrows,
    })
}

/// Decides whether `X` links to `Y` by vertex-disjoint (or edge-disjoint)
/// directed paths, by max-flow feasibility.
fn linkage_exists(g: &Digraph, x_mask: u64, y_mask: u64, vertex_disjoint: bool) -> bool {
    if x_mask.count_ones() != y_mask.count_ones() {
        return false;
    }
    if x_mask == 0 {
        return true;
    }
    // Node ids: 0 = source, 1 = sink, then vertices (split in two when
    // vertex-disjoint), then half-edges.
    let nv = g.vertices.len();
    let v_in = |v: usize| 2 + if vertex_disjoint { 2 * v } else { v };
    let v_out = |v: usize| 2 + if vertex_disjoint { 2 * v + 1 } else { v };
    let vertex_nodes = if vertex_disjoint { 2 * nv } else { nv };
    let src_node = |i: usize| 2 + vertex_nodes + i;
    let snk_node = |j: usize| 2 + vertex_nodes + g.sources.len() + j;
    let n = 2 + vertex_nodes + g.sources.len() + g.sinks.len();

    let mut cap = vec![vec![0u32; n]; n];
    if vertex_disjoint {
        for v in 0..nv {
            cap[v_in(v)][v_out(v)] = 1;
        }
    }
    for &(t, h) in &g.edges {
        if t == h {
            continue; // a simple path never uses a loop
        }
        cap[v_out(t)][v_in(h)] += 1;
    }
    for (i, he) in g.sources.iter().enumerate() {
        if x_mask >> i & 1 == 1 {
            cap[0][src_node(i)] = 1;
            if let Some(v) = he.at {
                cap[src_node(i)][v_in(v)] = 1;
            }
        }
    }
    for (j, he) in g.sinks.iter().enumerate() {
        if y_mask >> j & 1 == 1 {
            cap[snk_node(j)][1] = 1;
            if let Some(v) = he.at {
                cap[v_out(v)][snk_node(j)] = 1;
            }
        }
    }
    for &(i, j) in &g.arrows {
        if x_mask >> i & 1 == 1 && y_mask >> j & 1 == 1 {
            cap[src_node(i)][snk_node(j)] = 1;
        }
    }

    // Edmonds-Karp, stopping as soon as the demand is met.
    let demand = x_mask.count_ones();
    let mut flow = 0;
    loop {
        let mut parent = vec![usize::MAX; n];
        parent[0] = 0;
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(u) = queue.pop_front() {
            for v in 0..n {
                if parent[v] == usize::MAX && cap[u][v] > 0 {
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        if parent[1] == usize::MAX {
            return false;
        }
        let mut v = 1;
        while v != 0 {
            let u = parent[v];
            cap[u][v] -= 1;
            cap[v][u] += 1;
            v = u;
        }
        flow += 1;
        if flow == demand {
            return true;
        }
    }
}

fn linkage_relation(g: &Digraph, vertex_disjoint: bool) -> Result<SubsetRelation> {
    let a = g.source_ground()?;
    let b = g.sink_ground()?;
    let mut pairs = BTreeSet::new();
    for x in a.all_masks() {
        for y in b.all_masks() {
            if linkage_exists(g, x, y, vertex_disjoint) {
                pairs.insert((x, y));
            }
        }
    }
    SubsetRelation::from_masks(a, b, pairs)
}

/// The vertex-disjoint linkage relation of a digraph.
pub fn path_relation(g: &Digraph) -> Result<SubsetRelation> {
    linkage_relation(g, true)
}

/// The edge-disjoint linkage relation of a digraph.
pub fn epath_relation(g: &Digraph) -> Result<SubsetRelation> {
    linkage_relation(g, false)
}

/// A digraph with a vertex colouring (not required to be proper).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BicoloredDigraph {
    pub graph: Digraph,
    pub colours: Vec<Colour>,
}

impl BicoloredDigraph {
    pub fn new(graph: Digraph, colours: Vec<Colour>) -> Result<Self> {
        if colours.len() != graph.num_vertices() {
            return Err(Error::MalformedDigraph(format!(
                "{} colours for {} vertices",
                colours.len(),
                graph.num_vertices()
            )));
        }
        Ok(BicoloredDigraph { graph, colours })
    }

    pub fn to_dot(&self) -> String {
        self.graph.to_dot(Some(&self.colours))
    }

    /// Flips the direction of one full edge.
    pub fn flip_edge(&self, index: usize) -> Result<BicoloredDigraph> {
        if index >= self.graph.edges.len() {
            return Err(Error::InvalidParameter(format!("no edge {index}")));
        }
        let mut g = self.graph.clone();
        let (t, h) = g.edges[index];
        g.edges[index] = (h, t);
        Ok(BicoloredDigraph {
            graph: g,
            colours: self.colours.clone(),
        })
    }

    /// Flips an attached half-edge between the source and sink sides.
    pub fn flip_half_edge(&self, label: &str) -> Result<BicoloredDigraph> {
        let mut g = self.graph.clone();
        if let Some(i) = g.sources.iter().position(|h| h.label == label) {
            if g.sources[i].at.is_none() {
                return Err(Error::InvalidParameter(
                    "cannot flip an isolated-arrow end".into(),
                ));
            }
            let he = g.sources.remove(i);
            g.arrows = g
                .arrows
                .iter()
                .map(|&(si, sj)| (if si > i { si - 1 } else { si }, sj))
                .collect();
            g.sinks.push(he);
        } else if let Some(j) = g.sinks.iter().position(|h| h.label == label) {
            if g.sinks[j].at.is_none() {
                return Err(Error::InvalidParameter(
                    "cannot flip an isolated-arrow end".into(),
                ));
            }
            let he = g.sinks.remove(j);
            g.arrows = g
                .arrows
                .iter()
                .map(|&(si, sj)| (si, if sj > j { sj - 1 } else { sj }))
                .collect();
            g.sources.push(he);
        } else {
            return Err(Error::UnknownLabel(label.to_string()));
        }
        Ok(BicoloredDigraph {
            graph: g,
            colours: self.colours.clone(),
        })
    }
}

/// In/out degree of a vertex, counting edges and attached half-edges; a loop
/// counts on both sides.
fn degrees(g: &Digraph, v: usize) -> (usize, usize) {
    let mut indeg = 0;
    let mut outdeg = 0;
    for &(t, h) in &g.edges {
        if t == v {
            outdeg += 1;
        }
        if h == v {
            indeg += 1;
        }
    }
    for he in &g.sources {
        if he.at == Some(v) {
            indeg += 1;
        }
    }
    for he in &g.sinks {
        if he.at == Some(v) {
            outdeg += 1;
        }
    }
    (indeg, outdeg)
}

/// Every white vertex has a unique incoming edge or half-edge, every black
/// vertex a unique outgoing one.
pub fn is_perfectly_oriented(bg: &BicoloredDigraph) -> bool {
    bg.colours.iter().enumerate().all(|(v, c)| {
        let (indeg, outdeg) = degrees(&bg.graph, v);
        match c {
            Colour::White => indeg == 1,
            Colour::Black => outdeg == 1,
        }
    })
}

/// Searches for a reorientation of the full edges and attached half-edges
/// making the graph perfectly oriented.  Exhaustive over flip subsets, which
/// is adequate at desk scale.
pub fn find_perfect_orientation(bg: &BicoloredDigraph) -> Option<BicoloredDigraph> {
    let g = &bg.graph;
    let mut flippable: Vec<FlipItem> = Vec::new();
    for e in 0..g.edges.len() {
        if g.edges[e].0 != g.edges[e].1 {
            flippable.push(FlipItem::Edge(e));
        }
    }
    for h in &g.sources {
        if h.at.is_some() {
            flippable.push(FlipItem::Half(h.label.clone()));
        }
    }
    for h in &g.sinks {
        if h.at.is_some() {
            flippable.push(FlipItem::Half(h.label.clone()));
        }
    }
    let n = flippable.len();
    for mask in 0u64..(1 << n) {
        let mut candidate = bg.clone();
        for (i, item) in flippable.iter().enumerate() {
            if mask >> i & 1 == 1 {
                candidate = match item {
                    FlipItem::Edge(e) => candidate.flip_edge(*e).expect("valid index"),
                    FlipItem::Half(l) => candidate.flip_half_edge(l).expect("valid label"),
                };
            }
        }
        if is_perfectly_oriented(&candidate) {
            return Some(candidate);
        }
    }
    None
}

#[derive(Debug, Clone)]
enum FlipItem {
    Edge(usize),
    Half(String),
}

/// Label of the outgoing endpoint of edge `j` in the star decomposition.
fn edge_tail_label(j: usize) -> String {
    format!("e{j}.t")
}

/// Label of the incoming endpoint of edge `j`.
fn edge_head_label(j: usize) -> String {
    format!("e{j}.h")
}

/// The uniform star relation of one vertex: `u^{1-|A|}` for white,
/// `u^{|B|-1}` for black, over the incident incoming/outgoing endpoints.
pub fn star_relation(bg: &BicoloredDigraph, v: usize) -> Result<SubsetRelation> {
    let (a, b) = star_grounds(bg, v)?;
    let k = match bg.colours[v] {
        Colour::White => 1 - a.len() as i64,
        Colour::Black => b.len() as i64 - 1,
    };
    SubsetRelation::uniform(k, &a, &b)
}

fn star_grounds(bg: &BicoloredDigraph, v: usize) -> Result<(GroundSet, GroundSet)> {
    let g = &bg.graph;
    if v >= g.num_vertices() {
        return Err(Error::InvalidParameter(format!("no vertex {v}")));
    }
    let mut incoming: Vec<String> = Vec::new();
    let mut outgoing: Vec<String> = Vec::new();
    for (j, &(t, h)) in g.edges.iter().enumerate() {
        if t == v {
            outgoing.push(edge_tail_label(j));
        }
        if h == v {
            incoming.push(edge_head_label(j));
        }
    }
    for he in &g.sources {
        if he.at == Some(v) {
            incoming.push(he.label.clone());
        }
    }
    for he in &g.sinks {
        if he.at == Some(v) {
            outgoing.push(he.label.clone());
        }
    }
    Ok((GroundSet::new(incoming)?, GroundSet::new(outgoing)?))
}

/// Connects an output point of `rel` to an input point: the wire either
/// carries a point on both ends or on neither.  This is the strict one-wire
/// gluing step of the star-composition plan.
pub fn trace_wire(rel: &SubsetRelation, out_label: &str, in_label: &str) -> Result<SubsetRelation> {
    let d = rel.domain();
    let c = rel.codomain();
    let i = d
        .position(in_label)
        .ok_or_else(|| Error::UnknownLabel(in_label.to_string()))?;
    let o = c
        .position(out_label)
        .ok_or_else(|| Error::UnknownLabel(out_label.to_string()))?;
    let keep_d = d.full_mask() & !(1 << i);
    let keep_c = c.full_mask() & !(1 << o);
    let new_d = d.restrict(keep_d);
    let new_c = c.restrict(keep_c);
    let mut pairs = BTreeSet::new();
    for &(x, y) in rel.mask_pairs() {
        if (x >> i & 1) == (y >> o & 1) {
            pairs.insert((
                crate::relation::compress_mask(x & keep_d, keep_d),
                crate::relation::compress_mask(y & keep_c, keep_c),
            ));
        }
    }
    SubsetRelation::from_masks(new_d, new_c, pairs)
}

/// Lax one-wire gluing: transfers the input endpoint to the codomain and
/// composes laxly with the evaluation of the wire pair.
fn trace_wire_lax(
    rel: &SubsetRelation,
    out_label: &str,
    in_label: &str,
) -> Result<(SubsetRelation, CompositionType)> {
    let d = rel.domain();
    let i = d
        .position(in_label)
        .ok_or_else(|| Error::UnknownLabel(in_label.to_string()))?;
    let s = d.subset_from_mask(1 << i)?;
    let moved = rel.transfer_to_codomain(&s)?;
    let c = moved.codomain();
    let pair = GroundSet::new([in_label.to_string(), out_label.to_string()])?;
    let rest = c.difference(&pair);
    let glue = SubsetRelation::uniform(-1, &pair, &GroundSet::empty())?
        .tensor(&SubsetRelation::identity(&rest)?)?;
    let lax = compose_lax(&moved, &glue)?;
    Ok((lax.relation, lax.kind))
}

fn star_tensor_all(bg: &BicoloredDigraph) -> Result<SubsetRelation> {
    let g = &bg.graph;
    let mut acc = SubsetRelation::identity(&GroundSet::empty())?;
    for v in 0..g.num_vertices() {
        acc = acc.tensor(&star_relation(bg, v)?)?;
    }
    for &(i, j) in &g.arrows {
        let a = GroundSet::new([g.sources[i].label.clone()])?;
        let b = GroundSet::new([g.sinks[j].label.clone()])?;
        acc = acc.tensor(&SubsetRelation::uniform(0, &a, &b)?)?;
    }
    Ok(acc)
}

/// The bicolored path relation, glued strictly wire by wire in canonical
/// edge order.  Zero exactly when the graph admits no perfect orientation.
pub fn bpath_relation(bg: &BicoloredDigraph) -> Result<SubsetRelation> {
    let g = &bg.graph;
    let mut acc = star_tensor_all(bg)?;
    for j in 0..g.edges.len() {
        acc = trace_wire(&acc, &edge_tail_label(j), &edge_head_label(j))?;
    }
    let a = g.source_ground()?;
    let b = g.sink_ground()?;
    if acc.is_zero() {
        return SubsetRelation::zero(a, b);
    }
    acc.reindexed(&a, &b)
}

/// The lax bicolored path relation: the same gluing plan folded with lax
/// composition, accumulating the type.  Requires a graph with no isolated
/// vertices (those have zero star relations).
pub fn bpath_lax(bg: &BicoloredDigraph) -> Result<LaxResult> {
    let g = &bg.graph;
    for v in 0..g.num_vertices() {
        let (indeg, outdeg) = degrees(g, v);
        if indeg + outdeg == 0 {
            return Err(Error::MalformedDigraph(format!(
                "vertex `{}` is isolated; its star relation is zero",
                g.vertices[v]
            )));
        }
    }
    let mut acc = star_tensor_all(bg)?;
    let mut kind = CompositionType::new(0, 0);
    for j in 0..g.edges.len() {
        let (next, step) = trace_wire_lax(&acc, &edge_tail_label(j), &edge_head_label(j))?;
        acc = next;
        kind = kind.plus(&step);
    }
    let a = g.source_ground()?;
    let b = g.sink_ground()?;
    Ok(LaxResult {
        relation: acc.reindexed(&a, &b)?,
        kind,
    })
}

/// Replaces each vertex by a black→white pair: incoming edges enter the
/// black vertex, outgoing edges leave the white one.  The result is
/// perfectly oriented and has `BPath` equal to the original `Path`.
pub fn to_bicolored(g: &Digraph) -> Result<BicoloredDigraph> {
    let mut vertices = Vec::with_capacity(2 * g.num_vertices());
    let mut colours = Vec::with_capacity(2 * g.num_vertices());
    for v in g.vertices() {
        vertices.push(format!("{v}.b"));
        colours.push(Colour::Black);
        vertices.push(format!("{v}.w"));
        colours.push(Colour::White);
    }
    let black = |v: usize| 2 * v;
    let white = |v: usize| 2 * v + 1;
    let mut edges: Vec<(usize, usize)> = (0..g.num_vertices()).map(|v| (black(v), white(v))).collect();
    for &(t, h) in g.edges() {
        edges.push((white(t), black(h)));
    }
    let sources = g
        .sources()
        .iter()
        .map(|he| HalfEdge {
            label: he.label.clone(),
            at: he.at.map(black),
        })
        .collect();
    let sinks = g
        .sinks()
        .iter()
        .map(|he| HalfEdge {
            label: he.label.clone(),
            at: he.at.map(white),
        })
        .collect();
    let graph = Digraph {
        vertices,
        edges,
        sources,
        sinks,
        arrows: g.arrows().to_vec(),
    };
    BicoloredDigraph::new(graph, colours)
}

/// A digraph with designated extra sources and extra sinks that the lax
/// path relation saturates as far as possible.
#[derive(Debug, Clone)]
pub struct ExtendedDigraph {
    pub graph: Digraph,
    pub extra_sources: Vec<String>,
    pub extra_sinks: Vec<String>,
}

impl ExtendedDigraph {
    pub fn new(graph: Digraph, extra_sources: Vec<String>, extra_sinks: Vec<String>) -> Result<Self> {
        for l in &extra_sources {
            if !graph.sources.iter().any(|h| &h.label == l) {
                return Err(Error::UnknownLabel(l.clone()));
            }
        }
        for l in &extra_sinks {
            if !graph.sinks.iter().any(|h| &h.label == l) {
                return Err(Error::UnknownLabel(l.clone()));
            }
        }
        for l in &extra_sources {
            if extra_sinks.contains(l) {
                return Err(Error::OverlappingSets(l.clone()));
            }
        }
        Ok(ExtendedDigraph {
            graph,
            extra_sources,
            extra_sinks,
        })
    }

    pub fn interface_sources(&self) -> Result<GroundSet> {
        let all = self.graph.source_ground()?;
        Ok(all.difference(&GroundSet::new(self.extra_sources.clone())?))
    }

    pub fn interface_sinks(&self) -> Result<GroundSet> {
        let all = self.graph.sink_ground()?;
        Ok(all.difference(&GroundSet::new(self.extra_sinks.clone())?))
    }
}

/// The lax path relation of an extended digraph:
/// `(1_A ⊗ u^{|S⁺|}_{∅,S⁺} ⊗ u⁰_{∅,S⁻}) • Path*(K)`, which deletes the
/// extra sources and contracts the extra sinks of the underlying linkage.
pub fn path_lax(ext: &ExtendedDigraph) -> Result<LaxResult> {
    let p = path_relation(&ext.graph)?;
    let s_minus = GroundSet::new(ext.extra_sinks.clone())?;
    let s_plus = GroundSet::new(ext.extra_sources.clone())?;
    let a = ext.interface_sources()?;
    // move the extra sinks into the domain: Path*(K) on (A ⊗ S⁺ ⊗ S⁻, B)
    let t_subset = p.codomain().subset(s_minus.labels().iter())?;
    let p_star = p.transfer_to_domain(&t_subset)?;
    // saturating left factor: X ↦ X ⊔ S⁺ (all extra sources, no extra sinks)
    let left = SubsetRelation::identity(&a)?
        .tensor(&SubsetRelation::uniform(s_plus.len() as i64, &GroundSet::empty(), &s_plus)?)?
        .tensor(&SubsetRelation::uniform(0, &GroundSet::empty(), &s_minus)?)?;
    compose_lax(&left, &p_star)
}

/// Breaks an internal edge `e : u → v` into `e' : u → w'` and
/// `e'' : w'' → v`, where `w'` and `w''` are new degree-1 vertices of the
/// given colour.
pub fn break_edge(bg: &BicoloredDigraph, index: usize, colour: Colour) -> Result<BicoloredDigraph> {
    if index >= bg.graph.edges.len() {
        return Err(Error::InvalidParameter(format!("no edge {index}")));
    }
    let mut g = bg.graph.clone();
    let mut colours = bg.colours.clone();
    let (u, v) = g.edges.remove(index);
    let base = g.vertices.len();
    let mut fresh = |suffix: &str| {
        let mut name = format!("brk{base}{suffix}");
        while g.vertices.contains(&name) {
            name.push('\'');
        }
        g.vertices.push(name.clone());
        name
    };
    fresh("a");
    fresh("b");
    let wp = base;
    let wpp = base + 1;
    g.edges.push((u, wp));
    g.edges.push((wpp, v));
    colours.push(colour);
    colours.push(colour);
    BicoloredDigraph::new(g, colours)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relation::SubsetRelation;

    fn g(labels: &[&str]) -> GroundSet {
        GroundSet::new(labels.iter().copied()).unwrap()
    }

    fn single_vertex_graph() -> Digraph {
        Digraph::new(
            vec!["v".into()],
            vec![],
            vec![("1".into(), Some("v".into())), ("2".into(), Some("v".into()))],
            vec![("3".into(), Some("v".into()))],
            vec![],
        )
        .unwrap()
    }

    #[test]
    fn identity_digraph_gives_identity_relation() {
        let a = g(&["p", "q"]);
        let id = Digraph::identity(&a);
        assert_eq!(path_relation(&id).unwrap(), SubsetRelation::identity(&a).unwrap());
        assert_eq!(epath_relation(&id).unwrap(), SubsetRelation::identity(&a).unwrap());
    }

    #[test]
    fn single_vertex_path_relation() {
        let graph = single_vertex_graph();
        let rel = path_relation(&graph).unwrap();
        let a = g(&["1", "2"]);
        let b = g(&["3"]);
        assert_eq!(rel.num_pairs(), 3);
        assert!(rel.relates(&a.empty_subset(), &b.empty_subset()));
        assert!(rel.relates(&a.subset(["1"]).unwrap(), &b.subset(["3"]).unwrap()));
        assert!(rel.relates(&a.subset(["2"]).unwrap(), &b.subset(["3"]).unwrap()));
        assert!(rel.exchange_check());
        assert!(rel.is_bimatroid());
    }

    #[test]
    fn single_vertex_epath_is_uniform() {
        let graph = single_vertex_graph();
        let rel = epath_relation(&graph).unwrap();
        let a = g(&["1", "2"]);
        let b = g(&["3"]);
        assert_eq!(rel, SubsetRelation::uniform(0, &a, &b).unwrap());
    }

    #[test]
    fn glue_identity_absorbs_arrows() {
        let graph = single_vertex_graph();
        let id = Digraph::identity(&graph.sink_ground().unwrap());
        let glued = glue_graphs(&graph, &id).unwrap();
        assert_eq!(glued, graph);
        let id_left = Digraph::identity(&graph.source_ground().unwrap());
        let glued = glue_graphs(&id_left, &graph).unwrap();
        assert_eq!(glued, graph);
    }

    #[test]
    fn arrow_chains_collapse() {
        let a = g(&["x"]);
        let id1 = Digraph::identity(&a);
        let id2 = Digraph::identity(&a);
        let glued = glue_graphs(&id1, &id2).unwrap();
        assert_eq!(glued, Digraph::identity(&a));
    }

    /// The two-stage composition from the running figure: counts only.
    #[test]
    fn figure_composition_counts() {
        let gg = Digraph::new(
            vec!["a".into(), "b".into(), "c".into(), "d".into()],
            vec![
                ("a".into(), "b".into()),
                ("c".into(), "a".into()),
                ("b".into(), "d".into()),
                ("d".into(), "c".into()),
            ],
            vec![
                ("1".into(), Some("b".into())),
                ("2".into(), Some("a".into())),
            ],
            vec![
                ("3".into(), Some("d".into())),
                ("4".into(), Some("d".into())),
                ("5".into(), Some("c".into())),
            ],
            vec![],
        )
        .unwrap();
        let hh = Digraph::new(
            vec!["e".into(), "f".into()],
            vec![("e".into(), "f".into()), ("f".into(), "e".into())],
            vec![
                ("3".into(), None),
                ("4".into(), Some("f".into())),
                ("5".into(), Some("e".into())),
            ],
            vec![("6".into(), None), ("7".into(), Some("e".into()))],
            vec![("3".into(), "6".into())],
        )
        .unwrap();
        let glued = glue_graphs(&gg, &hh).unwrap();
        assert_eq!(glued.num_vertices(), 6);
        assert_eq!(glued.num_edges(), 4 + 2 + 2);
        let srcs: Vec<_> = glued.sources().iter().map(|h| h.label.clone()).collect();
        let snks: Vec<_> = glued.sinks().iter().map(|h| h.label.clone()).collect();
        assert_eq!(srcs, ["1", "2"]);
        assert_eq!(snks, ["6", "7"]);
        // the arrow 3 -> 6 is absorbed into a half-edge at d
        assert!(glued.sinks().iter().any(|h| h.label == "6" && h.at.is_some()));
        assert!(glued.arrows().is_empty());
    }

    #[test]
    fn white_star_relations() {
        let graph = Digraph::new(
            vec!["v".into()],
            vec![],
            vec![("1".into(), Some("v".into())), ("2".into(), Some("v".into()))],
            vec![("3".into(), Some("v".into())), ("4".into(), Some("v".into()))],
            vec![],
        )
        .unwrap();
        let white = BicoloredDigraph::new(graph.clone(), vec![Colour::White]).unwrap();
        let black = BicoloredDigraph::new(graph, vec![Colour::Black]).unwrap();
        let a = g(&["1", "2"]);
        let b = g(&["3", "4"]);
        assert_eq!(
            star_relation(&white, 0).unwrap(),
            SubsetRelation::uniform(-1, &a, &b).unwrap()
        );
        assert_eq!(
            star_relation(&black, 0).unwrap(),
            SubsetRelation::uniform(1, &a, &b).unwrap()
        );
    }

    #[test]
    fn perfect_orientation_detection() {
        // white vertex with two incoming half-edges: not perfect, fixable
        let graph = Digraph::new(
            vec!["v".into()],
            vec![],
            vec![("1".into(), Some("v".into())), ("2".into(), Some("v".into()))],
            vec![],
            vec![],
        )
        .unwrap();
        let bg = BicoloredDigraph::new(graph, vec![Colour::White]).unwrap();
        assert!(!is_perfectly_oriented(&bg));
        let fixed = find_perfect_orientation(&bg).unwrap();
        assert!(is_perfectly_oriented(&fixed));

        // isolated white vertex cannot be fixed
        let lonely = Digraph::new(vec!["v".into()], vec![], vec![], vec![], vec![]).unwrap();
        let bg = BicoloredDigraph::new(lonely, vec![Colour::White]).unwrap();
        assert!(find_perfect_orientation(&bg).is_none());
        assert!(bpath_relation(&bg).unwrap().is_zero());
    }

    #[test]
    fn bpath_on_perfectly_oriented_graph_is_path() {
        // a -> u -> v -> b with both vertices white (each has one incoming)
        let graph = Digraph::new(
            vec!["u".into(), "v".into()],
            vec![("u".into(), "v".into())],
            vec![("a".into(), Some("u".into()))],
            vec![("b".into(), Some("v".into()))],
            vec![],
        )
        .unwrap();
        let bg = BicoloredDigraph::new(graph.clone(), vec![Colour::White, Colour::White]).unwrap();
        assert!(is_perfectly_oriented(&bg));
        assert_eq!(bpath_relation(&bg).unwrap(), path_relation(&graph).unwrap());
    }

    #[test]
    fn bpath_invariant_under_edge_flip() {
        let graph = Digraph::new(
            vec!["u".into(), "v".into()],
            vec![("u".into(), "v".into())],
            vec![("a".into(), Some("u".into()))],
            vec![("b".into(), Some("v".into()))],
            vec![],
        )
        .unwrap();
        let bg = BicoloredDigraph::new(graph, vec![Colour::White, Colour::White]).unwrap();
        let flipped = bg.flip_edge(0).unwrap();
        assert!(!is_perfectly_oriented(&flipped));
        assert_eq!(bpath_relation(&bg).unwrap(), bpath_relation(&flipped).unwrap());
    }

    #[test]
    fn to_bicolored_is_perfect_and_preserves_path() {
        let graph = single_vertex_graph();
        let bic = to_bicolored(&graph).unwrap();
        assert_eq!(bic.graph.num_vertices(), 2 * graph.num_vertices());
        assert_eq!(bic.graph.num_edges(), graph.num_edges() + graph.num_vertices());
        assert!(is_perfectly_oriented(&bic));
        assert_eq!(bpath_relation(&bic).unwrap(), path_relation(&graph).unwrap());
    }

    #[test]
    fn to_bicolored_empty_graph_fixed() {
        let a = g(&["x"]);
        let id = Digraph::identity(&a);
        let bic = to_bicolored(&id).unwrap();
        assert_eq!(bic.graph.num_vertices(), 0);
        assert_eq!(bic.graph, id);
    }

    #[test]
    fn path_lax_trivial_extension() {
        let graph = single_vertex_graph();
        let ext = ExtendedDigraph::new(graph.clone(), vec![], vec![]).unwrap();
        let lax = path_lax(&ext).unwrap();
        assert_eq!(lax.kind, CompositionType::new(0, 0));
        assert_eq!(lax.relation, path_relation(&graph).unwrap());
    }

    #[test]
    fn path_lax_gammoid_presentation() {
        // gammoid: domain ∅, one extra source feeding two sinks through v
        let graph = Digraph::new(
            vec!["v".into()],
            vec![],
            vec![("s".into(), Some("v".into()))],
            vec![("x".into(), Some("v".into())), ("y".into(), Some("v".into()))],
            vec![],
        )
        .unwrap();
        let ext = ExtendedDigraph::new(graph, vec!["s".into()], vec![]).unwrap();
        let lax = path_lax(&ext).unwrap();
        // the extra source is always saturated: rank-1 matroid {x},{y}
        assert_eq!(lax.kind, CompositionType::new(0, 0));
        let m = crate::relation::morphism_as_matroid(&lax.relation).unwrap();
        assert_eq!(m.rank(), Some(1));
        assert_eq!(m.num_bases(), 2);
    }

    #[test]
    fn break_edge_adds_two_vertices() {
        let graph = Digraph::new(
            vec!["u".into(), "v".into()],
            vec![("u".into(), "v".into())],
            vec![("a".into(), Some("u".into()))],
            vec![("b".into(), Some("v".into()))],
            vec![],
        )
        .unwrap();
        let bg = BicoloredDigraph::new(graph, vec![Colour::White, Colour::White]).unwrap();
        let broken = break_edge(&bg, 0, Colour::Black).unwrap();
        assert_eq!(broken.graph.num_vertices(), 4);
        assert_eq!(broken.graph.num_edges(), 2);
        assert_eq!(broken.colours[2], Colour::Black);
    }

    #[test]
    fn bpath_lax_agrees_with_strict_when_nonzero() {
        let graph = Digraph::new(
            vec!["u".into(), "v".into()],
            vec![("u".into(), "v".into())],
            vec![("a".into(), Some("u".into()))],
            vec![("b".into(), Some("v".into()))],
            vec![],
        )
        .unwrap();
        let bg = BicoloredDigraph::new(graph, vec![Colour::White, Colour::White]).unwrap();
        let strict = bpath_relation(&bg).unwrap();
        let lax = bpath_lax(&bg).unwrap();
        assert_eq!(lax.kind.total(), 0);
        assert_eq!(lax.relation, strict);
    }

    #[test]
    fn reverse_adjoint_symmetry() {
        let graph = single_vertex_graph();
        let rel = path_relation(&graph).unwrap();
        let rev = path_relation(&graph.reverse()).unwrap();
        assert_eq!(rev, rel.adjoint());
    }
}
