//! Finite subtrees of a ball and the end-equivalence data they carry.
//!
//! Ends of the tree are never materialised. An end projects to a vertex of a
//! subtree `S` that has a neighbour outside `S`; those *carrier* vertices stand
//! for the classes of the projection relation, and everything else is computed
//! on them.

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::multigraph::{Biconnectivity, Multigraph};
use crate::tree::axis::{enumerate_axes, Axis};
use crate::tree::ball::{predicted_vertex_count, TreeBall};
use crate::whitehead::WhiteheadGraph;
use crate::word::{Alphabet, CyclicWord, Word};

/// A connected set of ball vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subtree {
    vertices: Vec<usize>,
}

impl Subtree {
    pub fn new(ball: &TreeBall, mut vertices: Vec<usize>) -> Result<Self> {
        vertices.sort_unstable();
        vertices.dedup();
        if vertices.is_empty() {
            return Err(invalid("subtree must contain a vertex"));
        }
        if let Some(&v) = vertices.iter().find(|&&v| v >= ball.vertex_count()) {
            return Err(invalid(format!("vertex {v} is not in the ball")));
        }
        let member = membership(ball, &vertices);
        let inner_edges = vertices.iter().filter(|&&v| ball.parent(v).is_some_and(|p| member[p])).count();
        if inner_edges + 1 != vertices.len() {
            return Err(invalid("subtree is not connected"));
        }
        Ok(Subtree { vertices })
    }

    pub fn single(ball: &TreeBall, v: usize) -> Result<Self> {
        Subtree::new(ball, vec![v])
    }

    /// `S(v)`: the vertex `v` with all its neighbours in the ball.
    pub fn star(ball: &TreeBall, v: usize) -> Result<Self> {
        if v >= ball.vertex_count() {
            return Err(invalid(format!("vertex {v} is not in the ball")));
        }
        let mut vertices = vec![v];
        vertices.extend(ball.alphabet().letters().filter_map(|x| ball.neighbor(v, x)));
        Subtree::new(ball, vertices)
    }

    /// All vertices within `radius` of the origin.
    pub fn ball(ball: &TreeBall, radius: u32) -> Result<Self> {
        let vertices = (0..ball.vertex_count()).filter(|&v| ball.depth(v) <= radius).collect();
        Subtree::new(ball, vertices)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }
}

fn membership(ball: &TreeBall, vertices: &[usize]) -> Vec<bool> {
    let mut member = vec![false; ball.vertex_count()];
    for &v in vertices {
        member[v] = true;
    }
    member
}

/// Intersection of an axis with a subtree, when it contains an edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    /// Index into the axis list the analysis was built from.
    pub axis: usize,
    pub ends: (usize, usize),
    pub edge_count: usize,
}

#[derive(Debug, Clone)]
pub struct SubtreeAnalysis {
    pub subtree: Subtree,
    /// Vertices of the subtree with a neighbour outside it, ascending.
    pub carriers: Vec<usize>,
    pub intervals: Vec<Interval>,
    /// `G(S)` on the carrier vertices (vertex `i` is `carriers[i]`), one edge
    /// per interval joining its two ends.
    pub gs_graph: Multigraph,
    /// `is_endpoint[i]` if `carriers[i]` is the end of some interval.
    pub is_endpoint: Vec<bool>,
    /// End-equivalence classes as sets of carrier vertices, each ascending,
    /// ordered by smallest member.
    pub classes: Vec<Vec<usize>>,
}

impl SubtreeAnalysis {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Vertex sets of the components of `G(S)` restricted to interval endpoints.
    pub fn endpoint_components(&self) -> Vec<Vec<usize>> {
        let keep: Vec<usize> = (0..self.carriers.len()).filter(|&i| self.is_endpoint[i]).collect();
        self.gs_graph
            .induced(&keep)
            .components()
            .into_iter()
            .map(|c| c.into_iter().map(|i| self.carriers[keep[i]]).collect())
            .collect()
    }

    /// The class partition agrees with the components of `G(S)` on the
    /// endpoints, and classes without endpoints are singletons.
    pub fn views_agree(&self) -> bool {
        let endpoint_vertices: Vec<usize> =
            (0..self.carriers.len()).filter(|&i| self.is_endpoint[i]).map(|i| self.carriers[i]).collect();
        let mut restricted = Vec::new();
        for class in &self.classes {
            let hit: Vec<usize> = class.iter().copied().filter(|v| endpoint_vertices.contains(v)).collect();
            if hit.is_empty() {
                if class.len() != 1 {
                    return false;
                }
            } else {
                restricted.push(hit);
            }
        }
        restricted == self.endpoint_components()
    }

    /// 2-vertex connectivity of `G(S)` on all carrier vertices.
    pub fn gs_biconnectivity(&self) -> Biconnectivity {
        self.gs_graph.biconnectivity()
    }

    /// For a star `S(v)`, relabels `G(S)` onto letters: the neighbour `v·z` is
    /// the letter `z⁻¹`, the letter read on entering `v` from it. With this
    /// labelling the graph coincides with the word-level Whitehead graph.
    pub fn star_whitehead_graph(&self, ball: &TreeBall, center: usize) -> Result<WhiteheadGraph> {
        let expected = Subtree::star(ball, center)?;
        if self.subtree != expected || self.carriers.contains(&center) {
            return Err(invalid("analysis is not of a full star"));
        }
        let mut graph = WhiteheadGraph::empty(ball.alphabet());
        for ((i, j), m) in self.gs_graph.edges() {
            let x = ball.direction(center, self.carriers[i]).expect("leaf of star").inverse();
            let y = ball.direction(center, self.carriers[j]).expect("leaf of star").inverse();
            for _ in 0..m {
                graph.add_edge(x, y);
            }
        }
        Ok(graph)
    }

    pub fn gs_dot(&self, ball: &TreeBall) -> String {
        let mut out = String::from("graph gs {\n");
        for &c in &self.carriers {
            out.push_str(&format!("  \"{}\";\n", ball.label(c)));
        }
        for ((i, j), m) in self.gs_graph.edges() {
            for _ in 0..m {
                out.push_str(&format!(
                    "  \"{}\" -- \"{}\";\n",
                    ball.label(self.carriers[i]),
                    ball.label(self.carriers[j])
                ));
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Nearest-point projection of a ball vertex onto a subtree.
fn project(ball: &TreeBall, member: &[bool], top: usize, v: usize) -> usize {
    let mut cur = v;
    loop {
        if member[cur] {
            return cur;
        }
        match ball.parent(cur) {
            Some(p) => cur = p,
            None => return top,
        }
    }
}

/// Builds intervals, `G(S)` and the end-equivalence classes of `S` for a
/// complete axis list of `ball`. `S` must keep one unit away from the ball's
/// boundary.
///
/// Classes are computed from the projections of the two ends of every axis;
/// `G(S)` is computed separately from the interval endpoints.
pub fn analyze_subtree(ball: &TreeBall, subtree: &Subtree, axes: &[Axis]) -> Result<SubtreeAnalysis> {
    let r = ball.radius();
    if subtree.vertices.iter().any(|&v| ball.depth(v) + 1 > r) {
        return Err(invalid(format!("subtree reaches the boundary of the radius-{r} ball")));
    }
    let member = membership(ball, &subtree.vertices);
    let mut degree = vec![0usize; ball.vertex_count()];
    for &v in &subtree.vertices {
        if let Some(p) = ball.parent(v).filter(|&p| member[p]) {
            degree[v] += 1;
            degree[p] += 1;
        }
    }
    let carriers: Vec<usize> = subtree.vertices.iter().copied().filter(|&v| degree[v] < ball.tree_degree()).collect();
    let mut carrier_index = vec![usize::MAX; ball.vertex_count()];
    for (i, &c) in carriers.iter().enumerate() {
        carrier_index[c] = i;
    }
    let top = *subtree.vertices.iter().min_by_key(|&&v| ball.depth(v)).expect("nonempty");

    let mut classes_uf = UnionFind::<usize>::new(carriers.len());
    let mut gs_graph = Multigraph::new(carriers.len());
    let mut is_endpoint = vec![false; carriers.len()];
    let mut intervals = Vec::new();
    for (index, axis) in axes.iter().enumerate() {
        let (first, last) = (axis.trace[0], *axis.trace.last().expect("trace is nonempty"));
        let p = carrier_index[project(ball, &member, top, first)];
        let q = carrier_index[project(ball, &member, top, last)];
        if p == usize::MAX || q == usize::MAX {
            return Err(Error::InternalConsistency("an end projected to a non-carrier vertex".into()));
        }
        classes_uf.union(p, q);

        let inside: Vec<usize> = (0..axis.trace.len()).filter(|&i| member[axis.trace[i]]).collect();
        if inside.len() >= 2 {
            let (lo, hi) = (inside[0], inside[inside.len() - 1]);
            if hi - lo + 1 != inside.len() {
                return Err(Error::InternalConsistency("axis meets the subtree in a disconnected set".into()));
            }
            let ends = (axis.trace[lo], axis.trace[hi]);
            let (i, j) = (carrier_index[ends.0], carrier_index[ends.1]);
            if i == usize::MAX || j == usize::MAX {
                return Err(Error::InternalConsistency("interval endpoint is not a carrier vertex".into()));
            }
            gs_graph.add_edge(i, j);
            is_endpoint[i] = true;
            is_endpoint[j] = true;
            intervals.push(Interval { axis: index, ends, edge_count: hi - lo });
        }
    }

    let mut grouped: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    let mut first_of_root: std::collections::BTreeMap<usize, usize> = Default::default();
    for (i, &c) in carriers.iter().enumerate() {
        let root = classes_uf.find(i);
        let key = *first_of_root.entry(root).or_insert(i);
        grouped.entry(key).or_default().push(c);
    }
    Ok(SubtreeAnalysis {
        subtree: subtree.clone(),
        carriers,
        intervals,
        gs_graph,
        is_endpoint,
        classes: grouped.into_values().collect(),
    })
}

/// Star graphs `G(S(v))`, labelled by letters, for every vertex at distance at
/// most `r - 1` from the origin (the first entries in shortlex order).
pub fn star_graphs(ball: &TreeBall, axes: &[Axis]) -> Vec<WhiteheadGraph> {
    let r = ball.radius();
    let interior = if r == 0 { 0 } else { predicted_vertex_count(ball.alphabet(), r - 1) as usize };
    let mut graphs = vec![WhiteheadGraph::empty(ball.alphabet()); interior];
    for axis in axes {
        for w in axis.trace.windows(3) {
            let (prev, v, next) = (w[0], w[1], w[2]);
            if v < interior {
                let x = ball.direction(v, prev).expect("trace step").inverse();
                let y = ball.direction(v, next).expect("trace step").inverse();
                graphs[v].add_edge(x, y);
            }
        }
    }
    graphs
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Lemma33Outcome {
    /// Every interior star graph is 2-vertex connected.
    Certified { checked: usize },
    /// The first interior vertex (shortlex) whose star graph fails. This does
    /// not by itself prove decomposability.
    NotCertified { vertex: Word, biconnectivity: Biconnectivity },
}

impl Lemma33Outcome {
    pub fn is_certified(&self) -> bool {
        matches!(self, Lemma33Outcome::Certified { .. })
    }
}

/// Checks that `G(S(v))` is 2-vertex connected at every interior vertex.
pub fn lemma33_certificate(ball: &TreeBall, axes: &[Axis]) -> Result<Lemma33Outcome> {
    if ball.radius() < 2 {
        return Err(invalid("star-graph certificate needs a ball of radius at least 2"));
    }
    let graphs = star_graphs(ball, axes);
    for (v, g) in graphs.iter().enumerate() {
        let bic = g.biconnectivity();
        if !bic.two_vertex_connected {
            return Ok(Lemma33Outcome::NotCertified { vertex: ball.word(v), biconnectivity: bic });
        }
    }
    Ok(Lemma33Outcome::Certified { checked: graphs.len() })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ProfileEntry {
    pub radius: u32,
    pub classes: usize,
}

/// Number of end-equivalence classes for `S` the ball of each radius
/// `1..=max_radius`, computed from a complete axis list of a ball of radius at
/// least `max_radius + 1`.
pub fn class_counts_from_axes(ball: &TreeBall, axes: &[Axis], max_radius: u32) -> Result<Vec<ProfileEntry>> {
    if max_radius + 1 > ball.radius() {
        return Err(invalid("class counts need a ball one larger than the largest radius"));
    }
    let mut out = Vec::new();
    for radius in 1..=max_radius {
        let mut uf = UnionFind::<usize>::new(ball.vertex_count());
        for axis in axes {
            let base_depth = ball.depth(axis.trace[axis.base_position]);
            if base_depth < radius {
                let reach = (radius - base_depth) as usize;
                uf.union(axis.trace[axis.base_position - reach], axis.trace[axis.base_position + reach]);
            }
        }
        let mut roots: Vec<usize> =
            (0..ball.vertex_count()).filter(|&v| ball.depth(v) == radius).map(|v| uf.find(v)).collect();
        roots.sort_unstable();
        roots.dedup();
        out.push(ProfileEntry { radius, classes: roots.len() });
    }
    Ok(out)
}

/// Class counts for nested balls of radius `1..=max_radius`. A count of at
/// least two certifies decomposability; all ones is only evidence.
pub fn class_count_profile(
    alphabet: Alphabet,
    family: &[CyclicWord],
    max_radius: u32,
    cap: u128,
) -> Result<Vec<ProfileEntry>> {
    if max_radius == 0 {
        return Err(invalid("max radius must be at least 1"));
    }
    let ball = TreeBall::new(alphabet, max_radius + 1, cap)?;
    let axes = enumerate_axes(&ball, family)?;
    class_counts_from_axes(&ball, &axes, max_radius)
}
