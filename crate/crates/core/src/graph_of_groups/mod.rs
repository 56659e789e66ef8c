//! Graphs of groups with infinite cyclic edge groups.

mod decide;
mod file;
mod model;
mod presentation;

pub use decide::{double, one_ended, OneEndednessVerdict, OneEndednessWitness};
pub use file::{parse_graph, write_graph};
pub use model::{Attachment, EdgeSpec, GraphOfGroups, ValidationError, Vertex, VertexGroup};
pub use presentation::{presentation, Presentation, Relation};
