use std::fmt::Write as _;
use std::path::Path;

use arcsplit::automorphism::FreeAutomorphism;
use arcsplit::graph_of_groups::{
    double, one_ended, parse_graph, presentation, write_graph, GraphOfGroups, OneEndednessVerdict, OneEndednessWitness,
};
use arcsplit::tree::{
    class_count_profile, edge_arc_counts, enumerate_axes, lemma33_certificate, star_graphs, Lemma33Outcome, TreeBall,
};
use arcsplit::whitehead::{
    build_whitehead_graph, decide_indecomposable, minimize, recognize_basis, GeneratorSplit, IndecomposabilityVerdict,
    WhiteheadGraph,
};
use arcsplit::word::{total_cyclic_length, Alphabet, CyclicWord, Letter, Word};
use arcsplit::Error;
use serde_json::{json, Value};

use crate::{Cli, Command, Format, Report, WordArgs};

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError { code: 1, message: message.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::ResourceCap { .. }) { 2 } else { 1 };
        CliError { code, message: e.to_string() }
    }
}

type Result<T> = std::result::Result<T, CliError>;

/// A word family read from the command line.
struct Family {
    alphabet: Alphabet,
    words: Vec<CyclicWord>,
}

impl Family {
    fn texts(&self) -> Vec<String> {
        self.words.iter().map(|w| self.alphabet.format_letters(w.letters())).collect()
    }

    fn input(&self) -> Value {
        json!({ "rank": self.alphabet.rank(), "words": self.texts() })
    }
}

fn read_family(args: &WordArgs, strict: bool) -> Result<Family> {
    let probe = Alphabet::new(i32::MAX as u32).expect("largest alphabet");
    let mut raw = Vec::new();
    for (i, text) in args.words.iter().enumerate() {
        let letters =
            probe.parse_letters(text).map_err(|e| CliError::usage(format!("word {} {text:?}: {e}", i + 1)))?;
        raw.push(letters);
    }
    let used = raw.iter().flatten().map(|l| l.generator()).max().unwrap_or(1);
    let rank = args.rank.unwrap_or(used);
    let alphabet = Alphabet::new(rank)?;
    let mut words = Vec::new();
    for (i, (text, letters)) in args.words.iter().zip(&raw).enumerate() {
        let reduced = arcsplit::word::free_reduce(&alphabet, letters)
            .map_err(|e| CliError::usage(format!("word {} {text:?}: {e}", i + 1)))?;
        let Some(cyclic) = CyclicWord::from_word(&reduced) else {
            return Err(CliError::usage(format!("word {} {text:?} is trivial", i + 1)));
        };
        if cyclic.len() != letters.len() {
            let shown = alphabet.format_letters(cyclic.letters());
            if strict {
                return Err(CliError::usage(format!("word {} {text:?} is not cyclically reduced", i + 1)));
            }
            eprintln!("warning: word {} {text:?} cyclically reduced to {shown:?}", i + 1);
        }
        words.push(cyclic);
    }
    Ok(Family { alphabet, words })
}

fn document(command: &str, input: Value, verdict: Value, certificate: Value) -> String {
    let doc = json!({ "command": command, "input": input, "verdict": verdict, "certificate": certificate });
    format!("{}\n", serde_json::to_string_pretty(&doc).expect("json values serialise"))
}

fn no_dot(command: &str) -> CliError {
    CliError::usage(format!("--format dot is not available for `{command}`"))
}

fn label(alphabet: Alphabet, letter: Letter) -> String {
    alphabet.letter_label(letter)
}

fn word_text(alphabet: Alphabet, word: &Word) -> String {
    alphabet.format_letters(word.letters())
}

fn images(automorphism: &FreeAutomorphism) -> Value {
    let alphabet = automorphism.alphabet();
    let map: serde_json::Map<String, Value> = (1..=alphabet.rank())
        .map(|g| (label(alphabet, Letter::new(g, false)), json!(word_text(alphabet, automorphism.image_of(g)))))
        .collect();
    Value::Object(map)
}

fn images_text(automorphism: &FreeAutomorphism) -> String {
    let alphabet = automorphism.alphabet();
    (1..=alphabet.rank())
        .map(|g| {
            format!("{} -> {}", label(alphabet, Letter::new(g, false)), word_text(alphabet, automorphism.image_of(g)))
        })
        .collect::<Vec<_>>()
        .join(", ")
}

fn split_json(alphabet: Alphabet, split: &GeneratorSplit) -> Value {
    let names = |gens: &[u32]| gens.iter().map(|&g| label(alphabet, Letter::new(g, false))).collect::<Vec<_>>();
    json!({ "left": names(&split.left), "right": names(&split.right) })
}

fn graph_edges(graph: &WhiteheadGraph) -> Vec<(String, String, usize)> {
    let alphabet = graph.alphabet();
    graph
        .graph()
        .edges()
        .map(|((u, v), m)| (label(alphabet, Letter::from_index(u)), label(alphabet, Letter::from_index(v)), m))
        .collect()
}

fn graph_json(graph: &WhiteheadGraph) -> Value {
    let edges: Vec<Value> =
        graph_edges(graph).into_iter().map(|(u, v, m)| json!({ "u": u, "v": v, "multiplicity": m })).collect();
    let vertices: Vec<String> = graph.alphabet().letters().map(|l| label(graph.alphabet(), l)).collect();
    json!({ "vertices": vertices, "edges": edges })
}

pub fn run(cli: &Cli) -> Result<String> {
    match &cli.command {
        Command::Graph(args) => graph_command(cli, args),
        Command::Minimize(args) => minimize_command(cli, args),
        Command::Indecomposable(args) => indecomposable_command(cli, args),
        Command::Basis(args) => basis_command(cli, args),
        Command::Tree { words, report, radius, max_radius } => tree_command(cli, words, *report, *radius, *max_radius),
        Command::OneEnded { file } => one_ended_command(cli, file),
        Command::Double(args) => double_command(cli, args),
        Command::Present { file } => present_command(cli, file),
    }
}

fn graph_command(cli: &Cli, args: &WordArgs) -> Result<String> {
    let family = read_family(args, cli.strict)?;
    let graph = build_whitehead_graph(family.alphabet, &family.words)?;
    let bic = graph.biconnectivity();
    let cuts: Vec<String> = graph.cut_letters().into_iter().map(|l| label(family.alphabet, l)).collect();
    let status = if !bic.connected {
        "DISCONNECTED".to_string()
    } else if bic.two_vertex_connected {
        "2-VERTEX CONNECTED".to_string()
    } else {
        format!("CONNECTED WITH CUT VERTICES {}", cuts.join(" "))
    };
    Ok(match cli.format {
        Format::Dot => graph.to_dot(),
        Format::Json => document(
            "graph",
            family.input(),
            json!({ "connected": bic.connected, "two_vertex_connected": bic.two_vertex_connected, "cut_vertices": cuts }),
            graph_json(&graph),
        ),
        Format::Text => {
            let mut out = String::new();
            for (u, v, m) in graph_edges(&graph) {
                writeln!(out, "{u} -- {v} x{m}").unwrap();
            }
            writeln!(out, "{status}").unwrap();
            out
        }
    })
}

fn minimize_command(cli: &Cli, args: &WordArgs) -> Result<String> {
    let family = read_family(args, cli.strict)?;
    let alphabet = family.alphabet;
    let (minimized, trace) = minimize(alphabet, &family.words)?;
    let texts: Vec<String> = minimized.iter().map(|w| alphabet.format_letters(w.letters())).collect();
    let before = total_cyclic_length(&family.words);
    let after = total_cyclic_length(&minimized);
    Ok(match cli.format {
        Format::Dot => build_whitehead_graph(alphabet, &minimized)?.to_dot(),
        Format::Json => {
            let steps: Vec<Value> = trace
                .steps
                .iter()
                .map(|s| {
                    json!({
                        "automorphism": s.automorphism.to_string(),
                        "length_before": s.length_before,
                        "length_after": s.length_after,
                    })
                })
                .collect();
            document(
                "minimize",
                family.input(),
                json!({ "minimized": texts, "length_before": before, "length_after": after }),
                json!({ "steps": steps, "composite": images(&trace.composite) }),
            )
        }
        Format::Text => {
            let mut out = format!("MINIMIZED {} (length {before} -> {after})\n", texts.join(" "));
            for (i, s) in trace.steps.iter().enumerate() {
                writeln!(out, "step {}: {} ({} -> {})", i + 1, s.automorphism, s.length_before, s.length_after)
                    .unwrap();
            }
            out
        }
    })
}

fn indecomposable_command(cli: &Cli, args: &WordArgs) -> Result<String> {
    let family = read_family(args, cli.strict)?;
    let alphabet = family.alphabet;
    let verdict = decide_indecomposable(alphabet, &family.words)?;
    Ok(match cli.format {
        Format::Dot => match &verdict {
            IndecomposabilityVerdict::Indecomposable { graph, .. } => graph.to_dot(),
            IndecomposabilityVerdict::Decomposable { minimized, .. } => {
                build_whitehead_graph(alphabet, minimized)?.to_dot()
            }
        },
        Format::Json => {
            let (name, certificate) = match &verdict {
                IndecomposabilityVerdict::Indecomposable { minimized, graph } => (
                    "INDECOMPOSABLE",
                    json!({
                        "minimized": minimized.iter().map(|w| alphabet.format_letters(w.letters())).collect::<Vec<_>>(),
                        "whitehead_graph": graph_json(graph),
                    }),
                ),
                IndecomposabilityVerdict::Decomposable { minimized, composite, split } => (
                    "DECOMPOSABLE",
                    json!({
                        "minimized": minimized.iter().map(|w| alphabet.format_letters(w.letters())).collect::<Vec<_>>(),
                        "split": split_json(alphabet, split),
                        "composite": images(composite),
                    }),
                ),
            };
            document("indecomposable", family.input(), json!(name), certificate)
        }
        Format::Text => format!("{verdict}\n"),
    })
}

fn basis_command(cli: &Cli, args: &WordArgs) -> Result<String> {
    let family = read_family(args, cli.strict)?;
    let witness = recognize_basis(family.alphabet, &family.words)?;
    let verdict = if witness.is_some() { "BASIS" } else { "NOT A BASIS" };
    Ok(match cli.format {
        Format::Dot => return Err(no_dot("basis")),
        Format::Json => document(
            "basis",
            family.input(),
            json!(verdict),
            witness.as_ref().map_or(Value::Null, |w| json!({ "composite": images(w) })),
        ),
        Format::Text => match &witness {
            Some(w) => format!("{verdict} (witness {})\n", images_text(w)),
            None => format!("{verdict}\n"),
        },
    })
}

fn tree_command(cli: &Cli, args: &WordArgs, report: Report, radius: u32, max_radius: u32) -> Result<String> {
    let family = read_family(args, cli.strict)?;
    let alphabet = family.alphabet;
    let mut input = family.input();
    input["report"] = json!(format!("{report:?}").to_lowercase());
    if report == Report::Profile {
        if cli.format == Format::Dot {
            return Err(no_dot("tree --report profile"));
        }
        let profile = class_count_profile(alphabet, &family.words, max_radius, cli.cap)?;
        input["max_radius"] = json!(max_radius);
        let split = profile.iter().find(|e| e.classes >= 2);
        let verdict = match split {
            Some(e) => format!("SPLIT SEEN AT RADIUS {}", e.radius),
            None => "ONE CLASS UP TO MAX RADIUS".to_string(),
        };
        return Ok(match cli.format {
            Format::Json => document("tree", input, json!(verdict), json!({ "profile": profile })),
            _ => {
                let mut out = String::new();
                for e in &profile {
                    writeln!(out, "radius {}: {} class{}", e.radius, e.classes, if e.classes == 1 { "" } else { "es" })
                        .unwrap();
                }
                writeln!(out, "{verdict}").unwrap();
                out
            }
        });
    }

    input["radius"] = json!(radius);
    let ball = TreeBall::new(alphabet, radius, cli.cap)?;
    let axes = enumerate_axes(&ball, &family.words)?;
    match report {
        Report::Ball => Ok(match cli.format {
            Format::Dot => ball.to_dot(),
            Format::Json => document(
                "tree",
                input,
                json!({ "vertices": ball.vertex_count(), "edges": ball.edge_count() }),
                json!({ "labels": (0..ball.vertex_count()).map(|v| ball.label(v)).collect::<Vec<_>>() }),
            ),
            Format::Text => {
                format!("BALL radius {radius}: {} vertices, {} edges\n", ball.vertex_count(), ball.edge_count())
            }
        }),
        Report::Axes => {
            let rows: Vec<(String, String, Vec<String>)> = axes
                .iter()
                .map(|a| {
                    (
                        ball.label(a.trace[a.base_position]),
                        alphabet.format_letters(&a.key.period),
                        a.trace.iter().map(|&v| ball.label(v)).collect(),
                    )
                })
                .collect();
            Ok(match cli.format {
                Format::Dot => return Err(no_dot("tree --report axes")),
                Format::Json => {
                    let list: Vec<Value> = rows
                        .iter()
                        .map(|(base, period, trace)| json!({ "base": base, "period": period, "trace": trace }))
                        .collect();
                    document("tree", input, json!({ "axes": axes.len() }), json!({ "axes": list }))
                }
                Format::Text => {
                    let mut out = String::new();
                    for (base, period, trace) in &rows {
                        writeln!(out, "base {base} period {period}: {}", trace.join(" ")).unwrap();
                    }
                    writeln!(out, "AXES {}", axes.len()).unwrap();
                    out
                }
            })
        }
        Report::Counts => {
            let counts = edge_arc_counts(&ball, &axes);
            // lexicographic in the endpoint words under the letter order a < A < b < B
            let mut edges: Vec<(Word, Word, usize)> =
                ball.edges().map(|(p, c)| (ball.word(p), ball.word(c), c)).collect();
            edges.sort();
            let rows: Vec<(String, String, usize)> = edges
                .iter()
                .map(|(_, _, c)| (ball.label(ball.parent(*c).expect("edge child")), ball.label(*c), counts[*c]))
                .collect();
            let minimum = rows.iter().map(|r| r.2).min();
            Ok(match cli.format {
                Format::Dot => return Err(no_dot("tree --report counts")),
                Format::Json => {
                    let list: Vec<Value> = rows.iter().map(|(u, v, c)| json!({ "edge": [u, v], "count": c })).collect();
                    document("tree", input, json!({ "min_count": minimum }), json!({ "counts": list }))
                }
                Format::Text => {
                    let mut out = String::new();
                    for (u, v, c) in &rows {
                        writeln!(out, "{u} -- {v}: {c}").unwrap();
                    }
                    match minimum {
                        Some(m) => writeln!(out, "MIN COUNT {m}").unwrap(),
                        None => writeln!(out, "NO EDGES").unwrap(),
                    }
                    out
                }
            })
        }
        Report::Certificate => {
            let outcome = lemma33_certificate(&ball, &axes)?;
            let verdict = match &outcome {
                Lemma33Outcome::Certified { checked } => format!("CERTIFIED ({checked} vertices checked)"),
                Lemma33Outcome::NotCertified { vertex, .. } => {
                    format!("NOT CERTIFIED (vertex {})", ball.label(ball.find(vertex).expect("vertex in ball")))
                }
            };
            Ok(match cli.format {
                Format::Dot => star_graphs(&ball, &axes)[0].to_dot(),
                Format::Json => {
                    let certificate = match &outcome {
                        Lemma33Outcome::Certified { checked } => json!({ "checked": checked }),
                        Lemma33Outcome::NotCertified { vertex, biconnectivity } => json!({
                            "vertex": ball.label(ball.find(vertex).expect("vertex in ball")),
                            "connected": biconnectivity.connected,
                            "cut_vertices": biconnectivity
                                .cut_vertices
                                .iter()
                                .map(|&i| label(alphabet, Letter::from_index(i)))
                                .collect::<Vec<_>>(),
                        }),
                    };
                    document("tree", input, json!(verdict), certificate)
                }
                Format::Text => format!("{verdict}\n"),
            })
        }
        Report::Profile => unreachable!("handled above"),
    }
}

fn read_graph_file(path: &Path) -> Result<GraphOfGroups> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
    parse_graph(&text).map_err(|e| match e {
        Error::Parse { line, message } => CliError::usage(format!("{}:{line}: {message}", path.display())),
        other => CliError::usage(format!("{}: {other}", path.display())),
    })
}

fn with_path(path: &Path, e: Error) -> CliError {
    let mut err = CliError::from(e);
    err.message = format!("{}: {}", path.display(), err.message);
    err
}

fn one_ended_command(cli: &Cli, path: &Path) -> Result<String> {
    let graph = read_graph_file(path)?;
    let verdict = one_ended(&graph).map_err(|e| with_path(path, e))?;
    Ok(match cli.format {
        Format::Dot => return Err(no_dot("one-ended")),
        Format::Json => {
            let certificate = match &verdict {
                OneEndednessVerdict::OneEnded => Value::Null,
                OneEndednessVerdict::NotOneEnded(OneEndednessWitness::Unconstrained { vertex }) => {
                    json!({ "vertex": vertex, "reason": "no incident edge groups" })
                }
                OneEndednessVerdict::NotOneEnded(OneEndednessWitness::FactorSplit { vertex, certificate }) => {
                    match certificate {
                        IndecomposabilityVerdict::Decomposable { split, composite, minimized } => json!({
                            "vertex": vertex,
                            "reason": "factor split",
                            "split": split_json(composite.alphabet(), split),
                            "composite": images(composite),
                            "minimized": minimized
                                .iter()
                                .map(|w| composite.alphabet().format_letters(w.letters()))
                                .collect::<Vec<_>>(),
                        }),
                        IndecomposabilityVerdict::Indecomposable { .. } => json!({ "vertex": vertex }),
                    }
                }
            };
            let name = if verdict.is_one_ended() { "ONE-ENDED" } else { "NOT ONE-ENDED" };
            document("one-ended", json!({ "file": path.display().to_string() }), json!(name), certificate)
        }
        Format::Text => format!("{verdict}\n"),
    })
}

fn double_command(cli: &Cli, args: &WordArgs) -> Result<String> {
    let family = read_family(args, cli.strict)?;
    let graph = double(family.alphabet, &family.words)?;
    let text = write_graph(&graph);
    Ok(match cli.format {
        Format::Dot => return Err(no_dot("double")),
        Format::Json => document(
            "double",
            family.input(),
            json!({ "vertices": graph.vertices.len(), "edges": graph.edges.len() }),
            json!({ "file": text }),
        ),
        Format::Text => text,
    })
}

fn present_command(cli: &Cli, path: &Path) -> Result<String> {
    let graph = read_graph_file(path)?;
    let p = presentation(&graph).map_err(|e| with_path(path, e))?;
    Ok(match cli.format {
        Format::Dot => return Err(no_dot("present")),
        Format::Json => {
            let side = |w: &[i64]| {
                w.iter()
                    .map(|&g| {
                        let name = &p.generators[(g.unsigned_abs() - 1) as usize];
                        if g < 0 {
                            format!("{name}^-1")
                        } else {
                            name.clone()
                        }
                    })
                    .collect::<Vec<_>>()
            };
            let relations: Vec<Value> =
                p.relations.iter().map(|r| json!({ "lhs": side(&r.lhs), "rhs": side(&r.rhs) })).collect();
            document(
                "present",
                json!({ "file": path.display().to_string() }),
                json!(p.to_string()),
                json!({ "generators": p.generators, "relations": relations, "tree_edges": p.tree_edges }),
            )
        }
        Format::Text => format!("{p}\n"),
    })
}
