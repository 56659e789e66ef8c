//! Finite undirected multigraphs with connectivity and cut-vertex analysis.
//!
//! Connectivity questions are answered on the simple-graph shadow: edge
//! multiplicities never change which vertices are cut vertices.

use std::collections::BTreeMap;

use petgraph::unionfind::UnionFind;

/// Multigraph on vertices `0..vertex_count` without loops.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Multigraph {
    vertex_count: usize,
    edges: BTreeMap<(usize, usize), usize>,
}

/// Result of a biconnectivity analysis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Biconnectivity {
    pub connected: bool,
    /// Articulation vertices in ascending order.
    pub cut_vertices: Vec<usize>,
    pub two_vertex_connected: bool,
}

impl Multigraph {
    pub fn new(vertex_count: usize) -> Self {
        Multigraph { vertex_count, edges: BTreeMap::new() }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Adds one copy of the edge `{u, v}`. Loops are ignored and reported as `false`.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        self.add_edges(u, v, 1)
    }

    pub fn add_edges(&mut self, u: usize, v: usize, count: usize) -> bool {
        assert!(u < self.vertex_count && v < self.vertex_count, "edge endpoint out of range");
        if u == v {
            return false;
        }
        if count > 0 {
            *self.edges.entry((u.min(v), u.max(v))).or_insert(0) += count;
        }
        true
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        self.edges.get(&(u.min(v), u.max(v))).copied().unwrap_or(0)
    }

    /// Distinct adjacent pairs `(u, v)` with `u < v` and their multiplicities.
    pub fn edges(&self) -> impl Iterator<Item = ((usize, usize), usize)> + '_ {
        self.edges.iter().map(|(&k, &m)| (k, m))
    }

    pub fn total_multiplicity(&self) -> usize {
        self.edges.values().sum()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|((a, b), _)| *a == v || *b == v).map(|(_, m)| m).sum()
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for &(u, v) in self.edges.keys() {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    /// Connected components, isolated vertices included, each sorted, ordered
    /// by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::<usize>::new(self.vertex_count);
        for &(u, v) in self.edges.keys() {
            uf.union(u, v);
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        let mut first_of_root: BTreeMap<usize, usize> = BTreeMap::new();
        for v in 0..self.vertex_count {
            let root = uf.find(v);
            let key = *first_of_root.entry(root).or_insert(v);
            groups.entry(key).or_default().push(v);
        }
        groups.into_values().collect()
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count > 0 && self.components().len() == 1
    }

    /// Articulation vertices of the whole graph (per component), ascending.
    pub fn cut_vertices(&self) -> Vec<usize> {
        let adj = self.adjacency();
        let n = self.vertex_count;
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut is_cut = vec![false; n];
        let mut time = 0;
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = time;
            low[root] = time;
            time += 1;
            let mut root_children = 0;
            // (vertex, parent, next neighbour position)
            let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
            while let Some(&mut (v, parent, ref mut pos)) = stack.last_mut() {
                if *pos < adj[v].len() {
                    let w = adj[v][*pos];
                    *pos += 1;
                    if disc[w] == usize::MAX {
                        disc[w] = time;
                        low[w] = time;
                        time += 1;
                        if v == root {
                            root_children += 1;
                        }
                        stack.push((w, v, 0));
                    } else if w != parent {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if parent != usize::MAX {
                        low[parent] = low[parent].min(low[v]);
                        if parent != root && low[v] >= disc[parent] {
                            is_cut[parent] = true;
                        }
                    }
                }
            }
            if root_children >= 2 {
                is_cut[root] = true;
            }
        }
        (0..n).filter(|&v| is_cut[v]).collect()
    }

    /// 2-vertex connectivity with the single-edge convention: a graph on two
    /// vertices joined by (one or several parallel copies of) an edge counts.
    pub fn biconnectivity(&self) -> Biconnectivity {
        let connected = self.is_connected();
        let cut_vertices = self.cut_vertices();
        let two_vertex_connected = connected && cut_vertices.is_empty() && self.vertex_count >= 2;
        Biconnectivity { connected, cut_vertices, two_vertex_connected }
    }

    pub fn is_two_vertex_connected(&self) -> bool {
        self.biconnectivity().two_vertex_connected
    }

    /// Subgraph induced on `keep`, relabelled in the order given.
    pub fn induced(&self, keep: &[usize]) -> Multigraph {
        let mut index = vec![usize::MAX; self.vertex_count];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let mut out = Multigraph::new(keep.len());
        for (&(u, v), &m) in &self.edges {
            if index[u] != usize::MAX && index[v] != usize::MAX {
                out.add_edges(index[u], index[v], m);
            }
        }
        out
    }

    /// Collapses the vertex set `part` to a single vertex, which becomes the
    /// last vertex of the result; other vertices keep their relative order.
    /// Edges inside `part` disappear.
    pub fn contract(&self, part: &[usize]) -> Multigraph {
        let mut inside = vec![false; self.vertex_count];
        for &v in part {
            inside[v] = true;
        }
        let mut index = vec![0; self.vertex_count];
        let mut next = 0;
        for v in 0..self.vertex_count {
            if !inside[v] {
                index[v] = next;
                next += 1;
            }
        }
        let merged = next;
        let mut out = Multigraph::new(next + 1);
        for (&(u, v), &m) in &self.edges {
            let a = if inside[u] { merged } else { index[u] };
            let b = if inside[v] { merged } else { index[v] };
            out.add_edges(a, b, m);
        }
        out
    }
}
