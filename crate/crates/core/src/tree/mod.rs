//! Arc systems on the Cayley tree of a free group, truncated to finite balls.

mod axis;
mod ball;
mod subtree;

pub use axis::{edge_arc_count, edge_arc_counts, enumerate_axes, Axis, AxisKey};
pub use ball::{predicted_vertex_count, TreeBall, DEFAULT_VERTEX_CAP};
pub use subtree::{
    analyze_subtree, class_count_profile, class_counts_from_axes, lemma33_certificate, star_graphs, Interval,
    Lemma33Outcome, ProfileEntry, Subtree, SubtreeAnalysis,
};
