//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use arcsplit::automorphism::WhiteheadAutomorphism;
use arcsplit::graph_of_groups::{double, one_ended, presentation};
use arcsplit::multigraph::Multigraph;
use arcsplit::tree::{
    class_count_profile, edge_arc_count, edge_arc_counts, enumerate_axes, lemma33_certificate, star_graphs, TreeBall,
    DEFAULT_VERTEX_CAP,
};
use arcsplit::whitehead::{
    build_whitehead_graph, decide_indecomposable, minimize, recognize_basis, GeneratorSplit, IndecomposabilityVerdict,
    WhiteheadGraph,
};
use arcsplit::word::{total_cyclic_length, Alphabet, CyclicWord, Letter, Word};
use common::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn ball(alpha: Alphabet, radius: u32) -> TreeBall {
    TreeBall::new(alpha, radius, DEFAULT_VERTEX_CAP).expect("small ball")
}

fn vertex(ball: &TreeBall, text: &str) -> usize {
    ball.find(&ball.alphabet().parse_word(text).unwrap()).unwrap()
}

fn same_labelled_graph(x: &WhiteheadGraph, y: &WhiteheadGraph) -> bool {
    let alpha = x.alphabet();
    alpha.letters().all(|p| alpha.letters().all(|q| x.multiplicity(p, q) == y.multiplicity(p, q)))
}

fn edge_count_identity() -> Outcome {
    let mut r = rng(1);
    for i in 0..250 {
        let n = r.gen_range(1..=4);
        let alpha = Alphabet::new(n).unwrap();
        let fam = random_family(&mut r, n, 4, 24);
        let g = build_whitehead_graph(alpha, &fam).map_err(|e| e.to_string())?;
        ensure!(
            g.total_multiplicity() == total_cyclic_length(&fam),
            "family {i} {fam:?}: {} edges, length {}",
            g.total_multiplicity(),
            total_cyclic_length(&fam)
        );
    }
    Ok("250 families, rank <= 4, length <= 24".into())
}

fn commutator_suite() -> Outcome {
    let alpha = Alphabet::new(2).unwrap();
    let fam = family(alpha, &["abAB"]);
    let g = build_whitehead_graph(alpha, &fam).unwrap();
    let l = |c| Letter::from_shorthand(c).unwrap();
    let cycle = [('a', 'B'), ('B', 'A'), ('A', 'b'), ('b', 'a')];
    ensure!(g.total_multiplicity() == 4, "expected 4 edges");
    ensure!(cycle.iter().all(|&(x, y)| g.multiplicity(l(x), l(y)) == 1), "not the 4-cycle a-B-A-b");
    ensure!(decide_indecomposable(alpha, &fam).unwrap().is_indecomposable(), "verdict is not Indecomposable");

    let b3 = ball(alpha, 3);
    let axes = enumerate_axes(&b3, &fam).unwrap();
    ensure!(same_labelled_graph(&star_graphs(&b3, &axes)[0], &g), "tree star graph differs from the Whitehead graph");
    let cert = lemma33_certificate(&b3, &axes).unwrap();
    ensure!(cert.is_certified(), "certificate at radius 3: {cert:?}");
    let profile = class_count_profile(alpha, &fam, 4, DEFAULT_VERTEX_CAP).unwrap();
    let counts: Vec<usize> = profile.iter().map(|e| e.classes).collect();
    ensure!(counts == vec![1, 1, 1, 1], "profile {counts:?}");
    let arcs = edge_arc_count(&b3, &axes, (0, vertex(&b3, "a"))).unwrap();
    ensure!(arcs == 2, "edge (1,a) carries {arcs} arcs");
    Ok("4-cycle, Indecomposable, Certified at r=3, profile (1,1,1,1), arcs(1,a)=2".into())
}

fn decomposable_suite() -> Outcome {
    let alpha = Alphabet::new(2).unwrap();
    let fam = family(alpha, &["a"]);
    match decide_indecomposable(alpha, &fam).unwrap() {
        IndecomposabilityVerdict::Decomposable { split, .. } => {
            ensure!(split == GeneratorSplit { left: vec![1], right: vec![2] }, "split {split:?}");
        }
        v => return Err(format!("verdict {v}")),
    }
    let profile = class_count_profile(alpha, &fam, 3, DEFAULT_VERTEX_CAP).unwrap();
    ensure!(profile.iter().all(|e| e.classes >= 2), "profile {profile:?}");
    let b = ball(alpha, 2);
    let axes = enumerate_axes(&b, &fam).unwrap();
    let arcs = edge_arc_count(&b, &axes, (0, vertex(&b, "a"))).unwrap();
    ensure!(arcs == 1, "edge (1,a) carries {arcs} arcs");
    Ok(format!("split {{a}}|{{b}}, profile {:?}, arcs(1,a)=1", profile.iter().map(|e| e.classes).collect::<Vec<_>>()))
}

fn star_whitehead_equivalence() -> Outcome {
    let start = Instant::now();
    let mut r = rng(4);
    let balls: Vec<TreeBall> = (1..=3).map(|n| ball(Alphabet::new(n).unwrap(), 2)).collect();
    for i in 0..150 {
        let n = r.gen_range(1..=3);
        let b = &balls[n as usize - 1];
        let fam = random_distinct_family(&mut r, n, 3, 8);
        let axes = enumerate_axes(b, &fam).unwrap();
        let tree_side = &star_graphs(b, &axes)[0];
        let word_side = build_whitehead_graph(b.alphabet(), &fam).unwrap();
        ensure!(same_labelled_graph(tree_side, &word_side), "family {i} {fam:?}: star graph differs");
    }
    let elapsed = start.elapsed();
    ensure!(elapsed.as_secs() < 30, "took {elapsed:?}");
    Ok(format!("150 families, rank <= 3, length <= 8, {:.2}s", elapsed.as_secs_f64()))
}

fn double_round_trip() -> Outcome {
    let mut r = rng(5);
    let (mut yes, mut no) = (0, 0);
    for i in 0..150 {
        let n = r.gen_range(2..=3);
        let alpha = Alphabet::new(n).unwrap();
        let fam = random_family(&mut r, n, 3, 8);
        let indecomposable = decide_indecomposable(alpha, &fam).unwrap().is_indecomposable();
        let ends = one_ended(&double(alpha, &fam).unwrap()).map_err(|e| e.to_string())?.is_one_ended();
        ensure!(indecomposable == ends, "family {i} {fam:?}: indecomposable {indecomposable}, one-ended {ends}");
        if ends {
            yes += 1
        } else {
            no += 1
        }
    }
    Ok(format!("150 families ({yes} one-ended, {no} not)"))
}

fn counts_stable() -> Outcome {
    let mut r = rng(6);
    let small: Vec<TreeBall> = (2..=3).map(|n| ball(Alphabet::new(n).unwrap(), 3)).collect();
    let large: Vec<TreeBall> = (2..=3).map(|n| ball(Alphabet::new(n).unwrap(), 5)).collect();
    for i in 0..60 {
        let k = r.gen_range(0..2);
        let (s, l) = (&small[k], &large[k]);
        let len = r.gen_range(1..=8);
        let fam = vec![random_cyclic_word(&mut r, k as u32 + 2, len)];
        let cs = edge_arc_counts(s, &enumerate_axes(s, &fam).unwrap());
        let cl = edge_arc_counts(l, &enumerate_axes(l, &fam).unwrap());
        for v in (1..s.vertex_count()).filter(|&v| s.depth(v) < s.radius()) {
            let w = l.find(&s.word(v)).unwrap();
            ensure!(cs[v] == cl[w], "word {i} {fam:?}, edge to {}: {} at r=3, {} at r=5", s.label(v), cs[v], cl[w]);
        }
    }
    Ok("60 single words, interior edges r=3 vs r=5".into())
}

fn edge_bound() -> Outcome {
    let mut r = rng(7);
    let balls: Vec<TreeBall> = (2..=3).map(|n| ball(Alphabet::new(n).unwrap(), 3)).collect();
    let mut premise = 0;
    for _ in 0..2000 {
        if premise == 100 {
            break;
        }
        let n = r.gen_range(2..=3);
        let b = &balls[n as usize - 2];
        let fam = random_family(&mut r, n, 3, 8);
        if !decide_indecomposable(b.alphabet(), &fam).unwrap().is_indecomposable() {
            continue;
        }
        let axes = enumerate_axes(b, &fam).unwrap();
        if !lemma33_certificate(b, &axes).unwrap().is_certified() {
            continue;
        }
        premise += 1;
        let counts = edge_arc_counts(b, &axes);
        for v in (1..b.vertex_count()).filter(|&v| b.depth(v) < b.radius()) {
            ensure!(counts[v] >= 2, "{fam:?}: edge to {} carries {} arcs", b.label(v), counts[v]);
        }
    }
    ensure!(premise >= 50, "only {premise} certified indecomposable samples");
    Ok(format!("{premise} certified indecomposable families, rank 2-3"))
}

fn expressible(gens: &[Word], target: &Word, factors: usize) -> bool {
    bounded_products(gens, factors).contains(target)
}

fn minimisation_contract() -> Outcome {
    let mut r = rng(8);
    for i in 0..200 {
        let n = r.gen_range(1..=3);
        let alpha = Alphabet::new(n).unwrap();
        let fam = random_family(&mut r, n, 3, 10);
        let (min, trace) = minimize(alpha, &fam).unwrap();
        let initial = total_cyclic_length(&fam);
        ensure!(trace.steps.len() <= initial, "family {i}: {} steps from length {initial}", trace.steps.len());
        ensure!(trace.steps.iter().all(|s| s.length_after < s.length_before), "family {i}: non-decreasing step");
        let g = build_whitehead_graph(alpha, &min).unwrap();
        let shadow = g.graph();
        if connected_without(shadow, None) {
            let cuts = brute_cut_vertices(shadow);
            ensure!(cuts.is_empty(), "family {i} {fam:?}: minimised graph has cut vertices {cuts:?}");
        }
    }

    let alpha = Alphabet::new(2).unwrap();
    let word = |t: &str| alpha.parse_word(t).unwrap();
    let yes = recognize_basis(alpha, &family(alpha, &["ab", "b"])).unwrap();
    ensure!(yes.is_some(), "(ab, b) not recognised");
    let gens = [word("ab"), word("b")];
    ensure!(expressible(&gens, &word("a"), 3) && expressible(&gens, &word("b"), 3), "oracle disagrees on (ab, b)");
    ensure!(recognize_basis(alpha, &family(alpha, &["aa", "b"])).unwrap().is_none(), "(aa, b) recognised");
    ensure!(!expressible(&[word("aa"), word("b")], &word("a"), 6), "oracle expresses a from (aa, b)");

    // images of the standard basis under random Whitehead automorphisms
    for n in 2..=3u32 {
        let alpha = Alphabet::new(n).unwrap();
        let mut pool = WhiteheadAutomorphism::all_multipliers(alpha).unwrap();
        pool.extend(WhiteheadAutomorphism::all_permutations(alpha).unwrap());
        for _ in 0..20 {
            let mut basis: Vec<Word> = (1..=n).map(|g| Word::reduce([Letter::new(g, false)])).collect();
            for _ in 0..r.gen_range(1..=4) {
                let phi = pool.choose(&mut r).unwrap();
                basis = basis.iter().map(|w| phi.apply_word(w)).collect();
            }
            let tuple: Vec<CyclicWord> = basis.iter().map(|w| CyclicWord::from_word(w).unwrap()).collect();
            let witness = recognize_basis(alpha, &tuple).unwrap();
            ensure!(witness.is_some(), "basis image {tuple:?} not recognised");
            let images: Vec<CyclicWord> = tuple.iter().map(|w| witness.as_ref().unwrap().apply_cyclic(w)).collect();
            ensure!(images.iter().all(|w| w.len() == 1), "witness leaves {images:?}");
        }
    }
    Ok("200 traces, basis (ab,b) yes, (aa,b) no, 40 random bases".into())
}

fn random_connected_set<R: Rng>(r: &mut R, g: &Multigraph, allowed: &[bool], size: usize) -> Vec<usize> {
    let candidates: Vec<usize> = (0..g.vertex_count()).filter(|&v| allowed[v]).collect();
    let Some(&start) = candidates.choose(r) else { return Vec::new() };
    let mut set = vec![start];
    while set.len() < size {
        let frontier: Vec<usize> = g
            .edges()
            .flat_map(|((a, b), _)| [(a, b), (b, a)])
            .filter(|&(a, b)| set.contains(&a) && !set.contains(&b) && allowed[b])
            .map(|(_, b)| b)
            .collect();
        let Some(&next) = frontier.choose(r) else { break };
        set.push(next);
    }
    set
}

fn gluing_law() -> Outcome {
    let mut r = rng(9);
    let mut premise = 0;
    let mut attempts = 0;
    while premise < 250 && attempts < 200_000 {
        attempts += 1;
        let n = r.gen_range(3..=12);
        let p = r.gen_range(0.2..0.7);
        let mut g = Multigraph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if r.gen_bool(p) {
                    g.add_edges(u, v, r.gen_range(1..=2));
                }
            }
        }
        ensure!(
            g.is_two_vertex_connected() == brute_two_connected(&g),
            "articulation search disagrees with the oracle on {g:?}"
        );
        if !connected_without(&g, None) {
            continue;
        }
        let size = r.gen_range(1..=n / 2);
        let first = random_connected_set(&mut r, &g, &vec![true; n], size);
        let rest: Vec<bool> = (0..n).map(|v| !first.contains(&v)).collect();
        let size = r.gen_range(1..=n - first.len());
        let second = random_connected_set(&mut r, &g, &rest, size);
        if second.is_empty() {
            continue;
        }
        if !(brute_two_connected(&g.contract(&first)) && brute_two_connected(&g.contract(&second))) {
            continue;
        }
        premise += 1;
        ensure!(brute_two_connected(&g), "collapses 2-connected but the graph is not: {g:?}, {first:?}, {second:?}");
        ensure!(g.is_two_vertex_connected(), "articulation search misses on {g:?}");
    }
    ensure!(premise >= 200, "only {premise} instances satisfied the premise");
    Ok(format!("{premise} instances on <= 12 vertices ({attempts} graphs drawn)"))
}

fn surface_check() -> Outcome {
    let alpha = Alphabet::new(2).unwrap();
    let d = double(alpha, &family(alpha, &["abAB"])).unwrap();
    let verdict = one_ended(&d).unwrap();
    ensure!(verdict.is_one_ended(), "verdict {verdict}");
    let p = presentation(&d).unwrap();
    ensure!(p.generator_count() == 4 && p.relation_count() == 1, "presentation {p}");
    let rel = &p.relations[0];
    let uses = |side: &[i64], gens: [i64; 2]| {
        gens.iter()
            .all(|&g| side.iter().filter(|&&x| x == g).count() == 1 && side.iter().filter(|&&x| x == -g).count() == 1)
            && side.len() == 4
    };
    ensure!(uses(&rel.lhs, [1, 2]) && uses(&rel.rhs, [3, 4]), "relation is not a product of two commutators: {p}");
    Ok(format!("{verdict}, {p}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("edge-count identity", edge_count_identity),
        ("commutator suite", commutator_suite),
        ("decomposable suite", decomposable_suite),
        ("star graph equals Whitehead graph", star_whitehead_equivalence),
        ("indecomposable iff double one-ended", double_round_trip),
        ("arc counts stable under enlarging the ball", counts_stable),
        ("interior edges carry two arcs", edge_bound),
        ("minimisation contract and basis recognition", minimisation_contract),
        ("gluing law for 2-connectivity", gluing_law),
        ("surface double", surface_check),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let outcome = check();
        let secs = started.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{secs:.2}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} [{secs:.2}s]", i + 1)
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
