use std::fmt;

use crate::error::{invalid, Error, Result};
use crate::graph_of_groups::model::{Attachment, GraphOfGroups, VertexGroup};
use crate::whitehead::{decide_indecomposable, IndecomposabilityVerdict};
use crate::word::{Alphabet, CyclicWord};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OneEndednessWitness {
    /// A free vertex whose incident edge groups lie in a proper free factor.
    FactorSplit { vertex: String, certificate: IndecomposabilityVerdict },
    /// A free or cyclic vertex with no incident edge group at all; its group
    /// splits over the trivial group with nothing required to be elliptic.
    Unconstrained { vertex: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OneEndednessVerdict {
    OneEnded,
    NotOneEnded(OneEndednessWitness),
}

impl OneEndednessVerdict {
    pub fn is_one_ended(&self) -> bool {
        matches!(self, OneEndednessVerdict::OneEnded)
    }
}

impl fmt::Display for OneEndednessVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OneEndednessVerdict::OneEnded => write!(f, "ONE-ENDED"),
            OneEndednessVerdict::NotOneEnded(OneEndednessWitness::FactorSplit { vertex, certificate }) => {
                match certificate {
                    IndecomposabilityVerdict::Decomposable { split, composite, .. } => write!(
                        f,
                        "NOT ONE-ENDED (vertex {vertex}: factor split {})",
                        split.display(composite.alphabet())
                    ),
                    IndecomposabilityVerdict::Indecomposable { .. } => write!(f, "NOT ONE-ENDED (vertex {vertex})"),
                }
            }
            OneEndednessVerdict::NotOneEnded(OneEndednessWitness::Unconstrained { vertex }) => {
                write!(f, "NOT ONE-ENDED (vertex {vertex}: no incident edge groups)")
            }
        }
    }
}

/// Decides one-endedness of the fundamental group. The graph must be valid
/// and free of trivial vertices.
///
/// A free vertex passes iff its incident edge words are indecomposable; a
/// cyclic vertex passes iff some edge group is attached to it; an opaque
/// one-ended vertex always passes. The first failing vertex in declaration
/// order is the witness.
pub fn one_ended(graph: &GraphOfGroups) -> Result<OneEndednessVerdict> {
    if let Err(errors) = graph.validate() {
        let joined: Vec<String> = errors.iter().map(ToString::to_string).collect();
        return Err(invalid(joined.join("; ")));
    }
    let trivial = graph.trivial_vertices();
    if !trivial.is_empty() {
        return Err(Error::TrivialVertices(trivial));
    }
    for (index, vertex) in graph.vertices.iter().enumerate() {
        let fail = |witness| Ok(OneEndednessVerdict::NotOneEnded(witness));
        match vertex.group {
            VertexGroup::Free { rank } => {
                let family = graph.incident_family(index);
                if family.is_empty() {
                    return fail(OneEndednessWitness::Unconstrained { vertex: vertex.id.clone() });
                }
                let verdict = decide_indecomposable(Alphabet::new(rank)?, &family)?;
                if !verdict.is_indecomposable() {
                    return fail(OneEndednessWitness::FactorSplit { vertex: vertex.id.clone(), certificate: verdict });
                }
            }
            VertexGroup::Cyclic => {
                if graph.degree(index) == 0 {
                    return fail(OneEndednessWitness::Unconstrained { vertex: vertex.id.clone() });
                }
            }
            VertexGroup::OpaqueOneEnded { .. } => {}
        }
    }
    Ok(OneEndednessVerdict::OneEnded)
}

/// Two copies of the free group joined by one edge per conjugacy class (up to
/// inversion) of the family, with the same attaching word at both ends.
pub fn double(alphabet: Alphabet, family: &[CyclicWord]) -> Result<GraphOfGroups> {
    if family.is_empty() {
        return Err(invalid("the double needs a nonempty family"));
    }
    if family.iter().any(|w| w.max_generator() > alphabet.rank()) {
        return Err(invalid("family uses generators beyond the rank"));
    }
    let mut classes: Vec<CyclicWord> = Vec::new();
    for w in family {
        let class = w.class_with_inverse();
        if !classes.contains(&class) {
            classes.push(class);
        }
    }
    let mut g = GraphOfGroups::new();
    g.add_vertex("v1", VertexGroup::Free { rank: alphabet.rank() });
    g.add_vertex("v2", VertexGroup::Free { rank: alphabet.rank() });
    for (i, class) in classes.iter().enumerate() {
        let word = Attachment::Word(class.to_word());
        g.add_edge(format!("e{}", i + 1), "v1", "v2", word.clone(), word);
    }
    Ok(g)
}
