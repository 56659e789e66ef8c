//! Indecomposability of families of cyclic subgroups of free groups and
//! one-endedness of graphs of groups with infinite cyclic edge groups.
//!
//! * [`word`] and [`automorphism`]: free-group words, cyclic words and
//!   Whitehead automorphisms.
//! * [`whitehead`]: Whitehead graphs, length minimisation, the
//!   indecomposability decider and free-basis recognition.
//! * [`tree`]: balls in the Cayley tree, the axes of conjugates of a family,
//!   and the end-equivalence data of finite subtrees. This gives an
//!   independent check on the word-level decisions.
//! * [`graph_of_groups`]: graphs of groups with cyclic edge groups, the
//!   one-endedness decision, doubles and presentations.

pub mod automorphism;
pub mod error;
pub mod graph_of_groups;
pub mod multigraph;
pub mod tree;
pub mod whitehead;
pub mod word;

pub use error::{Error, Result};
