#![allow(dead_code)]

use arcsplit::multigraph::Multigraph;
use arcsplit::word::{Alphabet, CyclicWord, Letter, Word};
use rand::Rng;

pub fn cyclic(alphabet: Alphabet, text: &str) -> CyclicWord {
    CyclicWord::from_word(&alphabet.parse_word(text).unwrap()).unwrap()
}

pub fn family(alphabet: Alphabet, words: &[&str]) -> Vec<CyclicWord> {
    words.iter().map(|t| cyclic(alphabet, t)).collect()
}

/// Uniform cyclically reduced word of exactly `len` letters.
pub fn random_cyclic_word<R: Rng>(rng: &mut R, rank: u32, len: usize) -> CyclicWord {
    assert!(len > 0);
    loop {
        let mut letters: Vec<Letter> = Vec::with_capacity(len);
        while letters.len() < len {
            let l = Letter::from_index(rng.gen_range(0..2 * rank as usize));
            if letters.last() != Some(&l.inverse()) {
                letters.push(l);
            }
        }
        if let Some(w) = CyclicWord::from_reduced(&letters) {
            if w.len() == len {
                return w;
            }
        }
    }
}

/// Between one and `max_words` words with total length at most `max_total`.
pub fn random_family<R: Rng>(rng: &mut R, rank: u32, max_words: usize, max_total: usize) -> Vec<CyclicWord> {
    let count = rng.gen_range(1..=max_words.min(max_total));
    let mut budget = max_total;
    let mut out = Vec::new();
    for i in 0..count {
        let reserve = count - i - 1;
        let len = rng.gen_range(1..=budget - reserve);
        budget -= len;
        out.push(random_cyclic_word(rng, rank, len));
    }
    out
}

/// Random family of words that are not proper powers and are pairwise
/// non-conjugate, also after inverting one of them.
pub fn random_distinct_family<R: Rng>(rng: &mut R, rank: u32, max_words: usize, max_total: usize) -> Vec<CyclicWord> {
    loop {
        let fam = random_family(rng, rank, max_words, max_total);
        let mut classes: Vec<CyclicWord> = fam.iter().map(|w| w.class_with_inverse()).collect();
        classes.sort();
        classes.dedup();
        if classes.len() == fam.len() && fam.iter().all(|w| !w.is_proper_power()) {
            return fam;
        }
    }
}

/// Brute-force 2-vertex connectivity: at least two vertices, connected, and
/// still connected after deleting any one vertex.
pub fn brute_two_connected(g: &Multigraph) -> bool {
    let n = g.vertex_count();
    n >= 2 && connected_without(g, None) && (0..n).all(|v| connected_without(g, Some(v)))
}

pub fn connected_without(g: &Multigraph, removed: Option<usize>) -> bool {
    let n = g.vertex_count();
    let alive: Vec<usize> = (0..n).filter(|&v| Some(v) != removed).collect();
    let Some(&start) = alive.first() else { return true };
    let mut seen = vec![false; n];
    let mut stack = vec![start];
    seen[start] = true;
    while let Some(u) = stack.pop() {
        for ((a, b), _) in g.edges() {
            let other = if a == u {
                b
            } else if b == u {
                a
            } else {
                continue;
            };
            if Some(other) != removed && !seen[other] {
                seen[other] = true;
                stack.push(other);
            }
        }
    }
    alive.iter().all(|&v| seen[v])
}

/// Brute-force cut vertices of a connected graph.
pub fn brute_cut_vertices(g: &Multigraph) -> Vec<usize> {
    (0..g.vertex_count()).filter(|&v| !connected_without(g, Some(v))).collect()
}

/// All reduced words expressible as products of at most `max_factors`
/// elements of `gens` and their inverses.
pub fn bounded_products(gens: &[Word], max_factors: usize) -> Vec<Word> {
    use std::collections::BTreeSet;
    let mut symmetric = gens.to_vec();
    symmetric.extend(gens.iter().map(|w| w.inverse()));
    let mut seen: BTreeSet<Vec<i32>> = BTreeSet::new();
    let mut frontier = vec![Word::empty()];
    let mut all = vec![Word::empty()];
    seen.insert(Vec::new());
    for _ in 0..max_factors {
        let mut next = Vec::new();
        for w in &frontier {
            for g in &symmetric {
                let p = w.mul(g);
                if seen.insert(p.letters().iter().map(|l| l.signed()).collect()) {
                    next.push(p.clone());
                    all.push(p);
                }
            }
        }
        frontier = next;
    }
    all
}
