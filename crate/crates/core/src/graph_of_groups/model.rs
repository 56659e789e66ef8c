use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use petgraph::unionfind::UnionFind;

use crate::word::{Alphabet, CyclicWord, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VertexGroup {
    /// Free group of the given rank (infinitely ended for rank at least 2).
    Free { rank: u32 },
    /// Infinite cyclic group.
    Cyclic,
    /// A one-ended group known only by name.
    OpaqueOneEnded { label: String },
}

/// How an edge group (always infinite cyclic) sits in an endpoint group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Attachment {
    /// The image of the edge generator in a free vertex group.
    Word(Word),
    /// The power of the generator of a cyclic vertex group.
    Exponent(i64),
    Opaque,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub id: String,
    pub group: VertexGroup,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSpec {
    pub id: String,
    /// Vertex ids; equal ids make a loop.
    pub endpoints: (String, String),
    pub attachments: (Attachment, Attachment),
}

/// A finite graph of groups with infinite cyclic edge groups. Vertices and
/// edges keep their insertion order, which every report follows.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GraphOfGroups {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<EdgeSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationError {
    /// `vertex <id>`, `edge <id>` or `graph`.
    pub subject: String,
    pub message: String,
}

impl fmt::Display for ValidationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.subject, self.message)
    }
}

impl GraphOfGroups {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, id: impl Into<String>, group: VertexGroup) -> &mut Self {
        self.vertices.push(Vertex { id: id.into(), group });
        self
    }

    pub fn add_edge(
        &mut self,
        id: impl Into<String>,
        from: impl Into<String>,
        to: impl Into<String>,
        at_from: Attachment,
        at_to: Attachment,
    ) -> &mut Self {
        self.edges.push(EdgeSpec { id: id.into(), endpoints: (from.into(), to.into()), attachments: (at_from, at_to) });
        self
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }

    /// Edge ends at vertex `index`, with loops appearing twice.
    pub(crate) fn incident_attachments(&self, index: usize) -> Vec<&Attachment> {
        let id = &self.vertices[index].id;
        let mut out = Vec::new();
        for e in &self.edges {
            if &e.endpoints.0 == id {
                out.push(&e.attachments.0);
            }
            if &e.endpoints.1 == id {
                out.push(&e.attachments.1);
            }
        }
        out
    }

    pub fn degree(&self, index: usize) -> usize {
        self.incident_attachments(index).len()
    }

    /// Cyclically reduced incident words of a free vertex, loops counted twice.
    pub fn incident_family(&self, index: usize) -> Vec<CyclicWord> {
        self.incident_attachments(index)
            .into_iter()
            .filter_map(|a| match a {
                Attachment::Word(w) => CyclicWord::from_word(w),
                _ => None,
            })
            .collect()
    }

    /// Checks ids, attachment kinds, nontriviality of edge groups and
    /// connectivity. Every problem found is reported.
    pub fn validate(&self) -> Result<(), Vec<ValidationError>> {
        let mut errors = Vec::new();
        let mut err = |subject: String, message: String| errors.push(ValidationError { subject, message });
        if self.vertices.is_empty() {
            err("graph".into(), "no vertices".into());
        }
        let mut seen = BTreeSet::new();
        for v in &self.vertices {
            if !seen.insert(v.id.as_str()) {
                err(format!("vertex {}", v.id), "duplicate vertex id".into());
            }
            if let VertexGroup::Free { rank: 0 } = v.group {
                err(format!("vertex {}", v.id), "free group of rank 0".into());
            }
        }
        let index: BTreeMap<&str, usize> =
            self.vertices.iter().enumerate().rev().map(|(i, v)| (v.id.as_str(), i)).collect();
        let mut seen_edges = BTreeSet::new();
        let mut uf = UnionFind::<usize>::new(self.vertices.len());
        for e in &self.edges {
            let subject = format!("edge {}", e.id);
            if !seen_edges.insert(e.id.as_str()) {
                err(subject.clone(), "duplicate edge id".into());
            }
            let ends = [(&e.endpoints.0, &e.attachments.0), (&e.endpoints.1, &e.attachments.1)];
            let mut resolved = Vec::new();
            for (vid, attachment) in ends {
                let Some(&vi) = index.get(vid.as_str()) else {
                    err(subject.clone(), format!("unknown vertex {vid}"));
                    continue;
                };
                resolved.push(vi);
                match (&self.vertices[vi].group, attachment) {
                    (VertexGroup::Free { rank }, Attachment::Word(w)) => {
                        if w.is_empty() {
                            err(subject.clone(), "trivial edge group".into());
                        } else if w.max_generator() > *rank {
                            err(subject.clone(), format!("attachment at {vid} uses generators beyond rank {rank}"));
                        }
                    }
                    (VertexGroup::Cyclic, Attachment::Exponent(k)) => {
                        if *k == 0 {
                            err(subject.clone(), "trivial edge group".into());
                        }
                    }
                    (VertexGroup::OpaqueOneEnded { .. }, Attachment::Opaque) => {}
                    (group, _) => {
                        err(subject.clone(), format!("attachment at {vid} does not fit a {} vertex", kind(group)))
                    }
                }
            }
            if let [a, b] = resolved[..] {
                uf.union(a, b);
            }
        }
        if !self.vertices.is_empty() {
            let root = uf.find(0);
            if (1..self.vertices.len()).any(|i| uf.find(i) != root) {
                err("graph".into(), "not connected".into());
            }
        }
        if errors.is_empty() {
            Ok(())
        } else {
            Err(errors)
        }
    }

    /// Degree-one vertices whose group is the incident edge group.
    pub fn trivial_vertices(&self) -> Vec<String> {
        (0..self.vertices.len())
            .filter(|&i| {
                let incident = self.incident_attachments(i);
                if incident.len() != 1 {
                    return false;
                }
                match (&self.vertices[i].group, incident[0]) {
                    (VertexGroup::Cyclic, Attachment::Exponent(k)) => k.abs() == 1,
                    (VertexGroup::Free { rank: 1 }, Attachment::Word(w)) => {
                        CyclicWord::from_word(w).is_some_and(|c| c.len() == 1)
                    }
                    _ => false,
                }
            })
            .map(|i| self.vertices[i].id.clone())
            .collect()
    }

    /// Alphabet of a free vertex.
    pub fn vertex_alphabet(&self, index: usize) -> Option<Alphabet> {
        match self.vertices[index].group {
            VertexGroup::Free { rank } => Alphabet::new(rank).ok(),
            _ => None,
        }
    }
}

fn kind(group: &VertexGroup) -> &'static str {
    match group {
        VertexGroup::Free { .. } => "free",
        VertexGroup::Cyclic => "cyclic",
        VertexGroup::OpaqueOneEnded { .. } => "opaque",
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(n: u32, t: &str) -> Attachment {
        Attachment::Word(Alphabet::new(n).unwrap().parse_word(t).unwrap())
    }

    #[test]
    fn valid_double() {
        let mut g = GraphOfGroups::new();
        g.add_vertex("v1", VertexGroup::Free { rank: 2 }).add_vertex("v2", VertexGroup::Free { rank: 2 }).add_edge(
            "e1",
            "v1",
            "v2",
            word(2, "abAB"),
            word(2, "abAB"),
        );
        assert_eq!(g.validate(), Ok(()));
    }

    #[test]
    fn trivial_edge_group() {
        let mut g = GraphOfGroups::new();
        g.add_vertex("v1", VertexGroup::Free { rank: 2 }).add_vertex("v2", VertexGroup::Cyclic).add_edge(
            "e1",
            "v1",
            "v2",
            Attachment::Word(Word::empty()),
            Attachment::Exponent(0),
        );
        let errs = g.validate().unwrap_err();
        assert_eq!(errs.len(), 2);
        assert!(errs.iter().all(|e| e.message == "trivial edge group" && e.subject == "edge e1"));
    }

    #[test]
    fn disconnected_and_mismatched() {
        let mut g = GraphOfGroups::new();
        g.add_vertex("v1", VertexGroup::Free { rank: 2 })
            .add_vertex("v2", VertexGroup::Cyclic)
            .add_vertex("v3", VertexGroup::Cyclic)
            .add_edge("e1", "v1", "v2", Attachment::Exponent(2), word(2, "a"))
            .add_edge("e2", "v1", "v9", word(3, "c"), Attachment::Opaque);
        let errs: Vec<String> = g.validate().unwrap_err().iter().map(|e| e.to_string()).collect();
        assert!(errs.contains(&"graph: not connected".to_string()), "{errs:?}");
        assert!(errs.iter().any(|e| e.contains("does not fit a free vertex")));
        assert!(errs.iter().any(|e| e.contains("does not fit a cyclic vertex")));
        assert!(errs.iter().any(|e| e.contains("unknown vertex v9")));
        assert!(errs.iter().any(|e| e.contains("beyond rank 2")));
    }

    #[test]
    fn trivial_vertex_detection() {
        let mut g = GraphOfGroups::new();
        g.add_vertex("f", VertexGroup::Free { rank: 2 })
            .add_vertex("c1", VertexGroup::Cyclic)
            .add_vertex("c3", VertexGroup::Cyclic)
            .add_vertex("z", VertexGroup::Free { rank: 1 })
            .add_edge("e1", "f", "c1", word(2, "abAB"), Attachment::Exponent(1))
            .add_edge("e2", "f", "c3", word(2, "ab"), Attachment::Exponent(3))
            .add_edge("e3", "f", "z", word(2, "aab"), word(1, "A"));
        assert_eq!(g.validate(), Ok(()));
        assert_eq!(g.trivial_vertices(), vec!["c1".to_string(), "z".to_string()]);
    }

    #[test]
    fn loops_count_twice() {
        let mut g = GraphOfGroups::new();
        g.add_vertex("c", VertexGroup::Cyclic).add_edge(
            "t",
            "c",
            "c",
            Attachment::Exponent(1),
            Attachment::Exponent(1),
        );
        assert_eq!(g.degree(0), 2);
        assert!(g.trivial_vertices().is_empty());
    }
}
