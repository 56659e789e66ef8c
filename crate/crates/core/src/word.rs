//! Words in a free group of finite rank.
//!
//! A [`Letter`] is a generator or its inverse. Letters are totally ordered by
//! generator index first and then by sign, with the generator before its
//! inverse (`a < A < b < B < ...`). That order fixes the canonical rotation of a
//! [`CyclicWord`] and the enumeration order used elsewhere in the crate.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::error::{invalid, Result};

/// Rank of a free group: the number of free generators `a_1 .. a_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Alphabet {
    rank: u32,
}

impl Alphabet {
    pub fn new(rank: u32) -> Result<Self> {
        if rank == 0 || rank > i32::MAX as u32 {
            return Err(invalid(format!("alphabet rank must be in 1..={}, got {rank}", i32::MAX)));
        }
        Ok(Alphabet { rank })
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    /// Number of letters, `2n`.
    pub fn letter_count(&self) -> usize {
        2 * self.rank as usize
    }

    /// All letters in canonical order.
    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        (0..self.letter_count()).map(Letter::from_index)
    }

    pub fn contains(&self, letter: Letter) -> bool {
        letter.generator() <= self.rank
    }

    pub fn uses_letter_shorthand(&self) -> bool {
        self.rank <= 26
    }

    fn check(&self, letter: Letter) -> Result<()> {
        if self.contains(letter) {
            Ok(())
        } else {
            Err(invalid(format!("letter {} is outside the alphabet of rank {}", letter.0, self.rank)))
        }
    }

    /// Label of a single letter: `a`/`A` for rank at most 26, `a7`/`A7` otherwise.
    pub fn letter_label(&self, letter: Letter) -> String {
        if self.uses_letter_shorthand() {
            letter.shorthand().to_string()
        } else if letter.is_inverse() {
            format!("A{}", letter.generator())
        } else {
            format!("a{}", letter.generator())
        }
    }

    /// Renders letters in the word text syntax: letter form when the rank allows
    /// it, numeric form otherwise. The empty word renders as `""`.
    pub fn format_letters(&self, letters: &[Letter]) -> String {
        if self.uses_letter_shorthand() {
            letters.iter().map(|l| l.shorthand()).collect()
        } else {
            letters.iter().map(|l| l.0.to_string()).collect::<Vec<_>>().join(" ")
        }
    }

    /// Parses the word text syntax and freely reduces the result.
    ///
    /// Letter form uses `a`..`z` for generators 1..26 and upper case for their
    /// inverses. Numeric form is a sequence of nonzero signed integers separated
    /// by whitespace or commas. The two forms may not be mixed.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        free_reduce(self, &self.parse_letters(text)?)
    }

    /// Parses the word text syntax without reducing.
    pub fn parse_letters(&self, text: &str) -> Result<Vec<Letter>> {
        let letters = parse_letters(text)?;
        for &l in &letters {
            self.check(l)?;
        }
        Ok(letters)
    }
}

fn parse_letters(text: &str) -> Result<Vec<Letter>> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    let is_separator = |c: char| c.is_whitespace() || c == ',';
    if text.chars().all(|c| c.is_ascii_alphabetic()) {
        return Ok(text.chars().map(|c| Letter::from_shorthand(c).expect("ascii letter")).collect());
    }
    let mut letters = Vec::new();
    for token in text.split(is_separator).filter(|t| !t.is_empty()) {
        if token.chars().any(|c| c.is_ascii_alphabetic()) {
            return Err(invalid(format!("word {text:?} mixes letter and numeric forms")));
        }
        let value: i32 = token.parse().map_err(|_| invalid(format!("bad token {token:?} in word {text:?}")))?;
        if value == 0 {
            return Err(invalid(format!("generator index 0 in word {text:?}")));
        }
        letters.push(Letter(value));
    }
    Ok(letters)
}

/// A generator `a_i` or its inverse, stored as the signed index `±i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter(i32);

impl Letter {
    pub fn new(generator: u32, inverse: bool) -> Self {
        assert!(generator >= 1 && generator <= i32::MAX as u32, "generator index out of range");
        let g = generator as i32;
        Letter(if inverse { -g } else { g })
    }

    pub fn from_signed(value: i32) -> Option<Self> {
        (value != 0 && value != i32::MIN).then_some(Letter(value))
    }

    pub fn signed(self) -> i32 {
        self.0
    }

    /// 1-based generator index.
    pub fn generator(self) -> u32 {
        self.0.unsigned_abs()
    }

    pub fn is_inverse(self) -> bool {
        self.0 < 0
    }

    pub fn inverse(self) -> Self {
        Letter(-self.0)
    }

    /// Position in the canonical order: `a -> 0, A -> 1, b -> 2, ...`.
    pub fn index(self) -> usize {
        2 * (self.generator() as usize - 1) + usize::from(self.is_inverse())
    }

    pub fn from_index(index: usize) -> Self {
        Letter::new((index / 2 + 1) as u32, index % 2 == 1)
    }

    pub fn from_shorthand(c: char) -> Option<Self> {
        if c.is_ascii_lowercase() {
            Some(Letter::new(c as u32 - 'a' as u32 + 1, false))
        } else if c.is_ascii_uppercase() {
            Some(Letter::new(c as u32 - 'A' as u32 + 1, true))
        } else {
            None
        }
    }

    /// Single-character form; only meaningful for generators 1..=26.
    pub fn shorthand(self) -> char {
        let g = self.generator();
        debug_assert!(g <= 26);
        let base = if self.is_inverse() { b'A' } else { b'a' };
        (base + (g - 1) as u8) as char
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.index().cmp(&other.index())
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.generator() <= 26 {
            write!(f, "{}", self.shorthand())
        } else {
            write!(f, "{}", self.0)
        }
    }
}

/// A freely reduced word.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Freely reduces an arbitrary letter sequence without alphabet checks.
    pub fn reduce<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// Product in the free group.
    pub fn mul(&self, other: &Word) -> Word {
        Word::reduce(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn max_generator(&self) -> u32 {
        self.0.iter().map(|l| l.generator()).max().unwrap_or(0)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word(")?;
        for l in &self.0 {
            write!(f, "{l:?}")?;
        }
        write!(f, ")")
    }
}

/// Freely reduces `letters`, rejecting letters outside `alphabet`.
pub fn free_reduce(alphabet: &Alphabet, letters: &[Letter]) -> Result<Word> {
    for &l in letters {
        alphabet.check(l)?;
    }
    Ok(Word::reduce(letters.iter().copied()))
}

/// A nonempty cyclically reduced word, stored in its lexicographically least
/// rotation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicWord(Vec<Letter>);

impl CyclicWord {
    /// Builds a cyclic word from letters that are already cyclically reduced.
    /// Returns `None` for the empty sequence or one that is not cyclically reduced.
    pub fn from_reduced(letters: &[Letter]) -> Option<Self> {
        if letters.is_empty() {
            return None;
        }
        let n = letters.len();
        let reduced = (0..n).all(|i| letters[(i + 1) % n] != letters[i].inverse());
        if !reduced {
            return None;
        }
        Some(CyclicWord(least_rotation(letters)))
    }

    /// Conjugacy-class representative of `word`, or `None` if it is trivial.
    pub fn from_word(word: &Word) -> Option<Self> {
        cyclic_reduce(word).0
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn to_word(&self) -> Word {
        Word(self.0.clone())
    }

    pub fn inverse(&self) -> CyclicWord {
        let inv: Vec<Letter> = self.0.iter().rev().map(|l| l.inverse()).collect();
        CyclicWord(least_rotation(&inv))
    }

    /// Representative of the class of `self` up to conjugacy and inversion.
    pub fn class_with_inverse(&self) -> CyclicWord {
        let inv = self.inverse();
        if inv < *self {
            inv
        } else {
            self.clone()
        }
    }

    /// All cyclic permutations as linear letter sequences, starting with the
    /// stored rotation.
    pub fn rotations(&self) -> impl Iterator<Item = Vec<Letter>> + '_ {
        let n = self.0.len();
        (0..n).map(move |k| (0..n).map(|i| self.0[(k + i) % n]).collect())
    }

    /// True if the word is `v^m` for some `m >= 2`.
    pub fn is_proper_power(&self) -> bool {
        let n = self.0.len();
        (1..n).any(|d| n.is_multiple_of(d) && (0..n).all(|i| self.0[i] == self.0[(i + d) % n]))
    }

    pub fn max_generator(&self) -> u32 {
        self.0.iter().map(|l| l.generator()).max().unwrap_or(0)
    }
}

impl fmt::Debug for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CyclicWord(")?;
        for l in &self.0 {
            write!(f, "{l:?}")?;
        }
        write!(f, ")")
    }
}

fn least_rotation(letters: &[Letter]) -> Vec<Letter> {
    let n = letters.len();
    let best = (0..n)
        .min_by(|&i, &j| {
            (0..n)
                .map(|k| letters[(i + k) % n].cmp(&letters[(j + k) % n]))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
        .unwrap_or(0);
    (0..n).map(|k| letters[(best + k) % n]).collect()
}

/// Splits `word` as `g · c · g⁻¹` with `c` cyclically reduced in canonical
/// rotation. The cyclic part is `None` exactly when `word` is trivial.
pub fn cyclic_reduce(word: &Word) -> (Option<CyclicWord>, Word) {
    let letters = word.letters();
    let mut lo = 0;
    let mut hi = letters.len();
    while hi - lo >= 2 && letters[lo] == letters[hi - 1].inverse() {
        lo += 1;
        hi -= 1;
    }
    if lo == hi {
        return (None, Word::empty());
    }
    let core = &letters[lo..hi];
    let canonical = least_rotation(core);
    // core = s · t and canonical = t · s for some split point; find |s|.
    let n = core.len();
    let shift =
        (0..n).find(|&k| (0..n).all(|i| core[(k + i) % n] == canonical[i])).expect("canonical form is a rotation");
    let conjugator = Word::reduce(letters[..lo].iter().chain(&core[..shift]).copied());
    (Some(CyclicWord(canonical)), conjugator)
}

/// Sum of the lengths of the words in a family.
pub fn total_cyclic_length(family: &[CyclicWord]) -> usize {
    family.iter().map(CyclicWord::len).sum()
}
