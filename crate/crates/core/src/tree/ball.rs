use crate::error::{invalid, Error, Result};
use crate::word::{Alphabet, Letter, Word};

const NONE: u32 = u32::MAX;

/// Default bound on the number of materialised ball vertices.
pub const DEFAULT_VERTEX_CAP: u128 = 2_000_000;

/// The ball of radius `r` about the identity in the Cayley tree of a free
/// group. Vertices are numbered in shortlex order, so the origin is `0` and
/// every vertex other than the origin is identified with the edge to its parent.
#[derive(Debug, Clone)]
pub struct TreeBall {
    alphabet: Alphabet,
    radius: u32,
    parent: Vec<u32>,
    /// Letter on the edge from the parent; unused for the origin.
    incoming: Vec<Letter>,
    depth: Vec<u32>,
    /// `children[v * 2n + x.index()]`
    children: Vec<u32>,
}

/// Closed-form vertex count of a ball, saturating at `u128::MAX`.
pub fn predicted_vertex_count(alphabet: Alphabet, radius: u32) -> u128 {
    let n = alphabet.rank() as u128;
    if n == 1 {
        return 2 * radius as u128 + 1;
    }
    // 1 + 2n * ((2n-1)^r - 1) / (2n-2)
    let branching = 2 * n - 1;
    let mut total: u128 = 1;
    let mut layer: u128 = 2 * n;
    for _ in 0..radius {
        total = match total.checked_add(layer) {
            Some(t) => t,
            None => return u128::MAX,
        };
        layer = layer.saturating_mul(branching);
    }
    total
}

impl TreeBall {
    pub fn new(alphabet: Alphabet, radius: u32, cap: u128) -> Result<Self> {
        let predicted = predicted_vertex_count(alphabet, radius);
        if predicted > cap || predicted > NONE as u128 {
            return Err(Error::ResourceCap { predicted, cap });
        }
        let k = alphabet.letter_count();
        let count = predicted as usize;
        let mut ball = TreeBall {
            alphabet,
            radius,
            parent: Vec::with_capacity(count),
            incoming: Vec::with_capacity(count),
            depth: Vec::with_capacity(count),
            children: Vec::with_capacity(count * k),
        };
        ball.push(NONE, Letter::new(1, false), 0);
        let mut v = 0;
        while v < ball.parent.len() {
            let d = ball.depth[v];
            if d < radius {
                for x in alphabet.letters() {
                    if v != 0 && x == ball.incoming[v].inverse() {
                        continue;
                    }
                    let child = ball.parent.len() as u32;
                    ball.children[v * k + x.index()] = child;
                    ball.push(v as u32, x, d + 1);
                }
            }
            v += 1;
        }
        debug_assert_eq!(ball.parent.len(), count);
        Ok(ball)
    }

    fn push(&mut self, parent: u32, incoming: Letter, depth: u32) {
        self.parent.push(parent);
        self.incoming.push(incoming);
        self.depth.push(depth);
        let k = self.alphabet.letter_count();
        self.children.extend(std::iter::repeat_n(NONE, k));
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn vertex_count(&self) -> usize {
        self.parent.len()
    }

    pub fn edge_count(&self) -> usize {
        self.parent.len() - 1
    }

    pub fn depth(&self, v: usize) -> u32 {
        self.depth[v]
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        (v != 0).then(|| self.parent[v] as usize)
    }

    /// Last letter of the reduced word of `v`; `None` at the origin.
    pub fn last_letter(&self, v: usize) -> Option<Letter> {
        (v != 0).then(|| self.incoming[v])
    }

    /// The vertex `v·x`, if it lies in the ball.
    pub fn neighbor(&self, v: usize, x: Letter) -> Option<usize> {
        if v != 0 && self.incoming[v] == x.inverse() {
            return Some(self.parent[v] as usize);
        }
        let c = self.children[v * self.alphabet.letter_count() + x.index()];
        (c != NONE).then_some(c as usize)
    }

    /// Letter `x` with `neighbor(v, x) == Some(w)`.
    pub fn direction(&self, v: usize, w: usize) -> Option<Letter> {
        if self.parent(v) == Some(w) {
            Some(self.incoming[v].inverse())
        } else if self.parent(w) == Some(v) {
            Some(self.incoming[w])
        } else {
            None
        }
    }

    /// Number of neighbours of a vertex in the whole tree.
    pub fn tree_degree(&self) -> usize {
        self.alphabet.letter_count()
    }

    pub fn word(&self, v: usize) -> Word {
        let mut letters = Vec::with_capacity(self.depth[v] as usize);
        let mut cur = v;
        while cur != 0 {
            letters.push(self.incoming[cur]);
            cur = self.parent[cur] as usize;
        }
        letters.reverse();
        Word::reduce(letters)
    }

    pub fn find(&self, word: &Word) -> Option<usize> {
        word.letters().iter().try_fold(
            0usize,
            |v, &x| {
                if self.alphabet.contains(x) {
                    self.neighbor(v, x)
                } else {
                    None
                }
            },
        )
    }

    /// Edges as `(parent, child)` pairs; the child doubles as the edge id.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (1..self.parent.len()).map(|c| (self.parent[c] as usize, c))
    }

    /// Edge id of the tree edge between `u` and `v`.
    pub fn edge_id(&self, u: usize, v: usize) -> Result<usize> {
        if self.parent(v) == Some(u) {
            Ok(v)
        } else if self.parent(u) == Some(v) {
            Ok(u)
        } else {
            Err(invalid(format!("vertices {u} and {v} are not adjacent")))
        }
    }

    /// Vertex label: the reduced word in letter form, `1` for the origin.
    /// For rank above 26 letters are dotted labels such as `a27.A3`.
    pub fn label(&self, v: usize) -> String {
        if v == 0 {
            return "1".into();
        }
        let word = self.word(v);
        if self.alphabet.uses_letter_shorthand() {
            self.alphabet.format_letters(word.letters())
        } else {
            word.letters().iter().map(|&l| self.alphabet.letter_label(l)).collect::<Vec<_>>().join(".")
        }
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph ball {\n");
        for v in 0..self.vertex_count() {
            out.push_str(&format!("  \"{}\";\n", self.label(v)));
        }
        for (p, c) in self.edges() {
            out.push_str(&format!(
                "  \"{}\" -- \"{}\" [label=\"{}\"];\n",
                self.label(p),
                self.label(c),
                self.alphabet.letter_label(self.incoming[c])
            ));
        }
        out.push_str("}\n");
        out
    }
}
