//! Axes of conjugates of cyclic words, truncated to a ball.

use std::collections::BTreeMap;

use crate::error::{invalid, Result};
use crate::tree::ball::TreeBall;
use crate::word::{CyclicWord, Letter, Word};

/// Identifies an axis independently of the ball it was found in.
///
/// `base` is the point of the axis nearest the origin. `period` is the linear
/// word read from `base` along the axis in whichever of the two directions
/// gives the lexicographically smaller word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AxisKey {
    pub base: Word,
    pub period: Vec<Letter>,
}

/// An axis together with the vertex path it traces through a ball.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Axis {
    pub key: AxisKey,
    /// Index of the family word this axis came from (first one, if several).
    pub source: usize,
    /// Ball vertices along the axis, from one end of the ball to the other,
    /// following `key.period` in the forward direction.
    pub trace: Vec<usize>,
    /// Position of the base in `trace`.
    pub base_position: usize,
}

impl Axis {
    pub fn trace_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.trace.windows(2).map(|p| (p[0], p[1]))
    }
}

fn inverse_letters(letters: &[Letter]) -> Vec<Letter> {
    letters.iter().rev().map(|l| l.inverse()).collect()
}

/// Walks from `start` along the axis through it that reads `period` (rotated
/// by `offset`) forward, until reaching the vertex nearest the origin.
/// Returns the base vertex and the offset of the period read from there.
fn find_base(ball: &TreeBall, period: &[Letter], start: usize, mut offset: usize) -> (usize, usize) {
    let k = period.len();
    let mut v = start;
    while let Some(last) = ball.last_letter(v) {
        let forward = period[offset];
        let backward = period[(offset + k - 1) % k];
        if last == forward.inverse() {
            offset = (offset + 1) % k;
        } else if last == backward {
            offset = (offset + k - 1) % k;
        } else {
            break;
        }
        v = ball.parent(v).expect("non-origin vertex has a parent");
    }
    (v, offset)
}

/// Every axis of a conjugate of a family word that meets the ball, each listed
/// once and sorted by key.
///
/// An axis meets the ball iff it passes through some ball vertex `u`, and the
/// axes through `u` are the translates by `u` of the axes through the origin of
/// the cyclic permutations of the family words.
pub fn enumerate_axes(ball: &TreeBall, family: &[CyclicWord]) -> Result<Vec<Axis>> {
    if let Some(w) = family.iter().find(|w| w.max_generator() > ball.alphabet().rank()) {
        return Err(invalid(format!("word {w:?} uses generators beyond the ball's rank")));
    }
    let mut found: BTreeMap<(usize, Vec<Letter>), usize> = BTreeMap::new();
    for (source, word) in family.iter().enumerate() {
        let letters = word.letters();
        for u in 0..ball.vertex_count() {
            for offset in 0..letters.len() {
                let (base, off) = find_base(ball, letters, u, offset);
                let forward: Vec<Letter> = (0..letters.len()).map(|i| letters[(off + i) % letters.len()]).collect();
                let backward = inverse_letters(&forward);
                let period = forward.min(backward);
                found.entry((base, period)).or_insert(source);
            }
        }
    }
    let mut axes: Vec<Axis> = found
        .into_iter()
        .map(|((base, period), source)| {
            let (trace, base_position) = trace_through(ball, base, &period);
            Axis { key: AxisKey { base: ball.word(base), period }, source, trace, base_position }
        })
        .collect();
    axes.sort_by(|a, b| a.key.cmp(&b.key));
    Ok(axes)
}

fn trace_through(ball: &TreeBall, base: usize, period: &[Letter]) -> (Vec<usize>, usize) {
    let reach = ball.radius().saturating_sub(ball.depth(base)) as usize;
    let walk = |letters: &[Letter]| {
        let mut out = Vec::with_capacity(reach);
        let mut v = base;
        for i in 0..reach {
            v = ball.neighbor(v, letters[i % letters.len()]).expect("axis stays inside the ball up to the radius");
            out.push(v);
        }
        out
    };
    let mut trace = walk(&inverse_letters(period));
    trace.reverse();
    let base_position = trace.len();
    trace.push(base);
    trace.extend(walk(period));
    (trace, base_position)
}

/// Number of axes through each ball edge, indexed by edge id (the child
/// vertex); entry `0` is unused.
pub fn edge_arc_counts(ball: &TreeBall, axes: &[Axis]) -> Vec<usize> {
    let mut counts = vec![0; ball.vertex_count()];
    for axis in axes {
        for (u, v) in axis.trace_edges() {
            counts[if ball.parent(v) == Some(u) { v } else { u }] += 1;
        }
    }
    counts
}

/// Number of distinct axes whose trace contains the edge `{u, v}`.
pub fn edge_arc_count(ball: &TreeBall, axes: &[Axis], edge: (usize, usize)) -> Result<usize> {
    let id = ball.edge_id(edge.0, edge.1)?;
    let on_edge = |(x, y): (usize, usize)| (if ball.parent(y) == Some(x) { y } else { x }) == id;
    Ok(axes.iter().filter(|a| a.trace_edges().any(on_edge)).count())
}
