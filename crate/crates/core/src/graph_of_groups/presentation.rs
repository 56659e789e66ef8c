use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph_of_groups::model::{Attachment, GraphOfGroups, VertexGroup};

/// `lhs = rhs`, each side a freely reduced word in the presentation's
/// generators written as signed 1-based generator numbers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub lhs: Vec<i64>,
    pub rhs: Vec<i64>,
}

/// A finite presentation of the fundamental group of a graph of groups.
///
/// Generators come first from the vertex groups in declaration order (a free
/// vertex of rank r gives r generators, a cyclic vertex one), then one stable
/// letter per non-tree edge in declaration order. Relations follow edge
/// declaration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relations: Vec<Relation>,
    /// Ids of the edges in the spanning tree.
    pub tree_edges: Vec<String>,
}

impl Presentation {
    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn relation_count(&self) -> usize {
        self.relations.len()
    }

    fn format_side(&self, word: &[i64]) -> String {
        if word.is_empty() {
            return "1".into();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < word.len() {
            let mut j = i;
            while j < word.len() && word[j] == word[i] {
                j += 1;
            }
            let name = &self.generators[(word[i].unsigned_abs() - 1) as usize];
            let exponent = (j - i) as i64 * word[i].signum();
            parts.push(if exponent == 1 { name.clone() } else { format!("{name}^{exponent}") });
            i = j;
        }
        parts.join(" ")
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let relations: Vec<String> = self
            .relations
            .iter()
            .map(|r| format!("{} = {}", self.format_side(&r.lhs), self.format_side(&r.rhs)))
            .collect();
        if relations.is_empty() {
            write!(f, "< {} | >", self.generators.join(", "))
        } else {
            write!(f, "< {} | {} >", self.generators.join(", "), relations.join(", "))
        }
    }
}

fn push_reduced(out: &mut Vec<i64>, g: i64) {
    if out.last() == Some(&-g) {
        out.pop();
    } else {
        out.push(g);
    }
}

/// Presentation via a breadth-first spanning tree from the first vertex,
/// scanning incident edges in declaration order. Tree edges give `u = v`,
/// other edges `t u t^-1 = v` with a fresh stable letter `t`.
///
/// Generators are named `a`, `b`, ... and stable letters `t`, `u`, ... when
/// there are at most 19 of the former and 7 of the latter; otherwise `x1`,
/// `x2`, ... and `t1`, `t2`, ....
pub fn presentation(graph: &GraphOfGroups) -> Result<Presentation> {
    if let Err(errors) = graph.validate() {
        let joined: Vec<String> = errors.iter().map(ToString::to_string).collect();
        return Err(Error::InvalidInput(joined.join("; ")));
    }
    if let Some(v) = graph.vertices.iter().find(|v| matches!(v.group, VertexGroup::OpaqueOneEnded { .. })) {
        return Err(Error::Unsupported(format!("vertex {} has an opaque group with no presentation", v.id)));
    }
    let mut offsets = Vec::with_capacity(graph.vertices.len());
    let mut vertex_generators = 0i64;
    for v in &graph.vertices {
        offsets.push(vertex_generators);
        vertex_generators += match v.group {
            VertexGroup::Free { rank } => rank as i64,
            _ => 1,
        };
    }

    let index = |id: &str| graph.vertex_index(id).expect("validated");
    let mut in_tree = vec![false; graph.edges.len()];
    let mut visited = vec![false; graph.vertices.len()];
    let mut queue = VecDeque::from([0usize]);
    visited[0] = true;
    while let Some(v) = queue.pop_front() {
        for (k, e) in graph.edges.iter().enumerate() {
            let (a, b) = (index(&e.endpoints.0), index(&e.endpoints.1));
            let other = if a == v {
                b
            } else if b == v {
                a
            } else {
                continue;
            };
            if !visited[other] {
                visited[other] = true;
                in_tree[k] = true;
                queue.push_back(other);
            }
        }
    }

    let stable_count = in_tree.iter().filter(|t| !**t).count();
    let generators: Vec<String> = if vertex_generators <= 19 && stable_count <= 7 {
        let letters = ('a'..='s').take(vertex_generators as usize).chain(('t'..='z').take(stable_count));
        letters.map(String::from).collect()
    } else {
        (1..=vertex_generators).map(|i| format!("x{i}")).chain((1..=stable_count).map(|i| format!("t{i}"))).collect()
    };

    let attachment_word = |vertex: usize, attachment: &Attachment| -> Vec<i64> {
        let offset = offsets[vertex];
        let mut out = Vec::new();
        match attachment {
            Attachment::Word(w) => {
                for l in w.letters() {
                    let g = offset + l.generator() as i64;
                    push_reduced(&mut out, if l.is_inverse() { -g } else { g });
                }
            }
            Attachment::Exponent(k) => {
                let g = offset + 1;
                out.extend(std::iter::repeat_n(g * k.signum(), k.unsigned_abs() as usize));
            }
            Attachment::Opaque => unreachable!("opaque vertices rejected above"),
        }
        out
    };

    let mut relations = Vec::new();
    let mut tree_edges = Vec::new();
    let mut next_stable = vertex_generators;
    for (k, e) in graph.edges.iter().enumerate() {
        let u = attachment_word(index(&e.endpoints.0), &e.attachments.0);
        let rhs = attachment_word(index(&e.endpoints.1), &e.attachments.1);
        if in_tree[k] {
            tree_edges.push(e.id.clone());
            relations.push(Relation { lhs: u, rhs });
        } else {
            next_stable += 1;
            let mut lhs = vec![next_stable];
            for g in u {
                push_reduced(&mut lhs, g);
            }
            push_reduced(&mut lhs, -next_stable);
            relations.push(Relation { lhs, rhs });
        }
    }
    Ok(Presentation { generators, relations, tree_edges })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph_of_groups::decide::double;
    use crate::word::{Alphabet, CyclicWord};

    #[test]
    fn surface_double() {
        let alpha = Alphabet::new(2).unwrap();
        let w = CyclicWord::from_word(&alpha.parse_word("abAB").unwrap()).unwrap();
        let p = presentation(&double(alpha, &[w]).unwrap()).unwrap();
        assert_eq!(p.generator_count(), 4);
        assert_eq!(p.relation_count(), 1);
        assert_eq!(p.to_string(), "< a, b, c, d | a b a^-1 b^-1 = c d c^-1 d^-1 >");
    }

    #[test]
    fn baumslag_solitar() {
        let mut g = GraphOfGroups::new();
        g.add_vertex("c", VertexGroup::Cyclic).add_edge(
            "e",
            "c",
            "c",
            Attachment::Exponent(2),
            Attachment::Exponent(3),
        );
        let p = presentation(&g).unwrap();
        assert_eq!(p.to_string(), "< a, t | t a^2 t^-1 = a^3 >");
        assert!(p.tree_edges.is_empty());
    }

    #[test]
    fn hnn_of_free_group() {
        let alpha = Alphabet::new(2).unwrap();
        let mut g = GraphOfGroups::new();
        g.add_vertex("f", VertexGroup::Free { rank: 2 })
            .add_vertex("z", VertexGroup::Cyclic)
            .add_edge("e1", "f", "z", Attachment::Word(alpha.parse_word("aab").unwrap()), Attachment::Exponent(-1))
            .add_edge("e2", "z", "f", Attachment::Exponent(1), Attachment::Word(alpha.parse_word("b").unwrap()));
        let p = presentation(&g).unwrap();
        assert_eq!(p.tree_edges, vec!["e1".to_string()]);
        assert_eq!(p.to_string(), "< a, b, c, t | a^2 b = c^-1, t c t^-1 = b >");
    }

    #[test]
    fn loop_on_free_vertex() {
        let alpha = Alphabet::new(2).unwrap();
        let word = |t: &str| Attachment::Word(alpha.parse_word(t).unwrap());
        let mut g = GraphOfGroups::new();
        g.add_vertex("f", VertexGroup::Free { rank: 2 }).add_edge("e", "f", "f", word("a"), word("b"));
        assert_eq!(presentation(&g).unwrap().to_string(), "< a, b, t | t a t^-1 = b >");
    }

    #[test]
    fn long_names_and_opaque_rejection() {
        let mut g = GraphOfGroups::new();
        g.add_vertex("f", VertexGroup::Free { rank: 20 });
        let p = presentation(&g).unwrap();
        assert_eq!(p.generators.first().map(String::as_str), Some("x1"));
        assert_eq!(p.to_string().matches(',').count(), 19);

        let mut o = GraphOfGroups::new();
        o.add_vertex("s", VertexGroup::OpaqueOneEnded { label: "s".into() });
        assert!(matches!(presentation(&o), Err(Error::Unsupported(_))));
    }
}
