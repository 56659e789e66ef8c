//! Whitehead graphs, length minimisation, and the indecomposability and
//! free-basis deciders built on them.

use std::fmt;

use serde::Serialize;

use crate::automorphism::{FreeAutomorphism, WhiteheadAutomorphism};
use crate::error::{invalid, Error, Result};
use crate::multigraph::{Biconnectivity, Multigraph};
use crate::word::{total_cyclic_length, Alphabet, CyclicWord, Letter};

/// Multigraph on the `2n` letters. Vertex `i` is `Letter::from_index(i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WhiteheadGraph {
    alphabet: Alphabet,
    graph: Multigraph,
}

impl WhiteheadGraph {
    pub fn empty(alphabet: Alphabet) -> Self {
        WhiteheadGraph { alphabet, graph: Multigraph::new(alphabet.letter_count()) }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn add_edge(&mut self, x: Letter, y: Letter) -> bool {
        self.graph.add_edge(x.index(), y.index())
    }

    pub fn multiplicity(&self, x: Letter, y: Letter) -> usize {
        self.graph.multiplicity(x.index(), y.index())
    }

    pub fn total_multiplicity(&self) -> usize {
        self.graph.total_multiplicity()
    }

    /// Components as letter sets, isolated letters included.
    pub fn components(&self) -> Vec<Vec<Letter>> {
        self.graph.components().into_iter().map(|c| c.into_iter().map(Letter::from_index).collect()).collect()
    }

    pub fn biconnectivity(&self) -> Biconnectivity {
        self.graph.biconnectivity()
    }

    pub fn cut_letters(&self) -> Vec<Letter> {
        self.graph.cut_vertices().into_iter().map(Letter::from_index).collect()
    }

    /// Graphviz rendering; parallel edges are repeated.
    pub fn to_dot(&self) -> String {
        let label = |i: usize| self.alphabet.letter_label(Letter::from_index(i));
        let mut out = String::from("graph whitehead {\n");
        for i in 0..self.alphabet.letter_count() {
            out.push_str(&format!("  \"{}\";\n", label(i)));
        }
        for ((u, v), m) in self.graph.edges() {
            for _ in 0..m {
                out.push_str(&format!("  \"{}\" -- \"{}\";\n", label(u), label(v)));
            }
        }
        out.push_str("}\n");
        out
    }
}

fn check_family(alphabet: Alphabet, family: &[CyclicWord]) -> Result<()> {
    if let Some(w) = family.iter().find(|w| w.max_generator() > alphabet.rank()) {
        return Err(invalid(format!("word {w:?} uses generators beyond rank {}", alphabet.rank())));
    }
    Ok(())
}

/// Whitehead graph of a family: each cyclic occurrence of `x y` adds the edge
/// `{x, y⁻¹}`.
pub fn build_whitehead_graph(alphabet: Alphabet, family: &[CyclicWord]) -> Result<WhiteheadGraph> {
    check_family(alphabet, family)?;
    let mut g = WhiteheadGraph::empty(alphabet);
    for w in family {
        let letters = w.letters();
        let n = letters.len();
        for i in 0..n {
            let added = g.add_edge(letters[i], letters[(i + 1) % n].inverse());
            debug_assert!(added, "cyclically reduced words give no loops");
        }
    }
    Ok(g)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimizationStep {
    pub automorphism: WhiteheadAutomorphism,
    pub length_before: usize,
    pub length_after: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimizationTrace {
    pub steps: Vec<MinimizationStep>,
    /// Composite of all steps; maps the input family onto the minimised one.
    pub composite: FreeAutomorphism,
}

/// Greedy Whitehead descent. Each step applies the type II automorphism with
/// the largest length reduction, the earliest in canonical order on ties.
pub fn minimize(alphabet: Alphabet, family: &[CyclicWord]) -> Result<(Vec<CyclicWord>, MinimizationTrace)> {
    check_family(alphabet, family)?;
    let candidates = WhiteheadAutomorphism::all_multipliers(alphabet)?;
    let mut current = family.to_vec();
    let mut length = total_cyclic_length(&current);
    let mut steps = Vec::new();
    let mut composite = FreeAutomorphism::identity(alphabet);
    loop {
        let mut best: Option<(usize, &WhiteheadAutomorphism)> = None;
        for phi in &candidates {
            let new_length: usize = current.iter().map(|w| phi.image_length(w)).sum();
            if new_length < best.map_or(length, |(l, _)| l) {
                best = Some((new_length, phi));
            }
        }
        let Some((new_length, phi)) = best else { break };
        current = current.iter().map(|w| phi.apply(w)).collect();
        debug_assert_eq!(total_cyclic_length(&current), new_length);
        composite = phi.to_free_automorphism().after(&composite);
        steps.push(MinimizationStep { automorphism: phi.clone(), length_before: length, length_after: new_length });
        length = new_length;
    }
    Ok((current, MinimizationTrace { steps, composite }))
}

/// Generator bipartition witnessing that a family lies in a proper free factor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorSplit {
    /// 1-based generator indices, ascending.
    pub left: Vec<u32>,
    pub right: Vec<u32>,
}

impl GeneratorSplit {
    pub fn side_of(&self, generator: u32) -> Option<usize> {
        if self.left.contains(&generator) {
            Some(0)
        } else if self.right.contains(&generator) {
            Some(1)
        } else {
            None
        }
    }

    /// True if every word's generators all lie on one side.
    pub fn separates(&self, family: &[CyclicWord]) -> bool {
        family.iter().all(|w| {
            let sides: Vec<_> = w.letters().iter().map(|l| self.side_of(l.generator())).collect();
            sides.iter().all(|s| s.is_some() && *s == sides[0])
        })
    }

    pub fn display(&self, alphabet: Alphabet) -> String {
        let side = |gens: &[u32]| {
            let names: Vec<String> = gens.iter().map(|&g| alphabet.letter_label(Letter::new(g, false))).collect();
            format!("{{{}}}", names.join(","))
        };
        format!("{}|{}", side(&self.left), side(&self.right))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IndecomposabilityVerdict {
    Indecomposable { minimized: Vec<CyclicWord>, graph: WhiteheadGraph },
    Decomposable { minimized: Vec<CyclicWord>, composite: FreeAutomorphism, split: GeneratorSplit },
}

impl IndecomposabilityVerdict {
    pub fn is_indecomposable(&self) -> bool {
        matches!(self, IndecomposabilityVerdict::Indecomposable { .. })
    }
}

impl fmt::Display for IndecomposabilityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndecomposabilityVerdict::Indecomposable { .. } => write!(f, "INDECOMPOSABLE"),
            IndecomposabilityVerdict::Decomposable { split, composite, .. } => {
                write!(f, "DECOMPOSABLE (factor split {})", split.display(composite.alphabet()))
            }
        }
    }
}

/// Decides whether the cyclic subgroups generated by `family` are
/// indecomposable, i.e. whether the free group admits no free splitting in
/// which all of them are elliptic.
pub fn decide_indecomposable(alphabet: Alphabet, family: &[CyclicWord]) -> Result<IndecomposabilityVerdict> {
    if family.is_empty() {
        return Err(invalid("indecomposability needs a nonempty family"));
    }
    let (minimized, trace) = minimize(alphabet, family)?;
    let graph = build_whitehead_graph(alphabet, &minimized)?;
    let bic = graph.biconnectivity();
    if bic.connected {
        if !bic.cut_vertices.is_empty() {
            return Err(Error::InternalConsistency(format!(
                "minimised Whitehead graph is connected with cut vertices {:?}",
                graph.cut_letters()
            )));
        }
        return Ok(IndecomposabilityVerdict::Indecomposable { minimized, graph });
    }
    let split = generator_split(alphabet, &graph)?;
    if !split.separates(&minimized) {
        return Err(Error::InternalConsistency("generator split does not separate the minimised family".into()));
    }
    Ok(IndecomposabilityVerdict::Decomposable { minimized, composite: trace.composite, split })
}

/// Groups generators by Whitehead-graph component (a generator and its inverse
/// always belong together) and puts the group of generator 1 on the left.
fn generator_split(alphabet: Alphabet, graph: &WhiteheadGraph) -> Result<GeneratorSplit> {
    let n = alphabet.rank() as usize;
    let mut uf = petgraph::unionfind::UnionFind::<usize>::new(n);
    for component in graph.components() {
        for pair in component.windows(2) {
            uf.union(pair[0].generator() as usize - 1, pair[1].generator() as usize - 1);
        }
    }
    let root = uf.find(0);
    let (left, right): (Vec<u32>, Vec<u32>) = (1..=n as u32).partition(|&g| uf.find(g as usize - 1) == root);
    if right.is_empty() {
        return Err(Error::InternalConsistency(
            "disconnected minimised Whitehead graph does not split the generators".into(),
        ));
    }
    Ok(GeneratorSplit { left, right })
}

/// Whether `tuple` represents (the conjugacy classes of) a free basis. The
/// witness maps the tuple to single letters on distinct generators.
pub fn recognize_basis(alphabet: Alphabet, tuple: &[CyclicWord]) -> Result<Option<FreeAutomorphism>> {
    if tuple.len() != alphabet.rank() as usize {
        return Ok(None);
    }
    let (minimized, trace) = minimize(alphabet, tuple)?;
    if minimized.iter().any(|w| w.len() != 1) {
        return Ok(None);
    }
    let mut gens: Vec<u32> = minimized.iter().map(|w| w.letters()[0].generator()).collect();
    gens.sort_unstable();
    gens.dedup();
    Ok((gens.len() == tuple.len()).then_some(trace.composite))
}
