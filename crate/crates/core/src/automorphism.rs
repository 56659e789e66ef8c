//! Whitehead automorphisms and general endomorphisms given by generator images.

use std::fmt;

use crate::error::{invalid, Result};
use crate::word::{cyclic_reduce, Alphabet, CyclicWord, Letter, Word};

/// Automorphism of a free group determined by the images of its generators.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FreeAutomorphism {
    alphabet: Alphabet,
    images: Vec<Word>,
}

impl FreeAutomorphism {
    pub fn identity(alphabet: Alphabet) -> Self {
        let images = (1..=alphabet.rank()).map(|g| Word::reduce([Letter::new(g, false)])).collect();
        FreeAutomorphism { alphabet, images }
    }

    /// `images[i]` is the image of generator `i + 1`. Invertibility is not checked.
    pub fn from_images(alphabet: Alphabet, images: Vec<Word>) -> Result<Self> {
        if images.len() != alphabet.rank() as usize {
            return Err(invalid(format!("expected {} generator images, got {}", alphabet.rank(), images.len())));
        }
        if images.iter().any(|w| w.max_generator() > alphabet.rank()) {
            return Err(invalid("generator image uses a letter outside the alphabet"));
        }
        Ok(FreeAutomorphism { alphabet, images })
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn image_of(&self, generator: u32) -> &Word {
        &self.images[generator as usize - 1]
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        *self == FreeAutomorphism::identity(self.alphabet)
    }

    fn letter_image(&self, letter: Letter) -> Word {
        let image = self.image_of(letter.generator());
        if letter.is_inverse() {
            image.inverse()
        } else {
            image.clone()
        }
    }

    pub fn apply_word(&self, word: &Word) -> Word {
        Word::reduce(word.letters().iter().flat_map(|&l| {
            let image = self.letter_image(l);
            image.letters().to_vec()
        }))
    }

    /// Image of a conjugacy class.
    pub fn apply_cyclic(&self, word: &CyclicWord) -> CyclicWord {
        let image = self.apply_word(&word.to_word());
        cyclic_reduce(&image).0.expect("automorphisms map nontrivial classes to nontrivial classes")
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &FreeAutomorphism) -> FreeAutomorphism {
        let images = first.images.iter().map(|w| self.apply_word(w)).collect();
        FreeAutomorphism { alphabet: self.alphabet, images }
    }
}

impl fmt::Debug for FreeAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut map = f.debug_map();
        for (i, w) in self.images.iter().enumerate() {
            map.entry(&Letter::new(i as u32 + 1, false), w);
        }
        map.finish()
    }
}

/// The two kinds of Whitehead automorphism.
///
/// Type I permutes generators and inverts some of them. Type II has a
/// multiplier letter `x` and a side set `A` of letters with `x ∈ A`,
/// `x⁻¹ ∉ A`; it fixes `x` and sends every other generator `g` to
/// `x^-p · g · x^q` where `p = [g⁻¹ ∈ A]` and `q = [g ∈ A]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum WhiteheadAutomorphism {
    Permutation {
        alphabet: Alphabet,
        /// `targets[i]` is the (1-based) generator that generator `i + 1` maps to.
        targets: Vec<u32>,
        /// `inverted[i]` set means generator `i + 1` maps to the inverse of its target.
        inverted: Vec<bool>,
    },
    Multiplier {
        alphabet: Alphabet,
        multiplier: Letter,
        /// Bit `Letter::index()` set for each letter of the side set.
        side: u64,
    },
}

impl WhiteheadAutomorphism {
    pub fn permutation(alphabet: Alphabet, targets: Vec<u32>, inverted: Vec<bool>) -> Result<Self> {
        let n = alphabet.rank() as usize;
        if targets.len() != n || inverted.len() != n {
            return Err(invalid("permutation data must have one entry per generator"));
        }
        let mut seen = vec![false; n];
        for &t in &targets {
            if t == 0 || t as usize > n || std::mem::replace(&mut seen[t as usize - 1], true) {
                return Err(invalid("targets must be a permutation of the generators"));
            }
        }
        Ok(WhiteheadAutomorphism::Permutation { alphabet, targets, inverted })
    }

    /// Type II automorphism. The side set is a bitmask over letter indices, so
    /// this constructor supports ranks up to 32.
    pub fn multiplier(alphabet: Alphabet, multiplier: Letter, side: u64) -> Result<Self> {
        if alphabet.letter_count() > 64 {
            return Err(invalid("type II automorphisms are limited to rank 32"));
        }
        if !alphabet.contains(multiplier) {
            return Err(invalid("multiplier outside the alphabet"));
        }
        if alphabet.letter_count() < 64 && side >> alphabet.letter_count() != 0 {
            return Err(invalid("side set contains letters outside the alphabet"));
        }
        if side & (1 << multiplier.index()) == 0 || side & (1 << multiplier.inverse().index()) != 0 {
            return Err(invalid("side set must contain the multiplier and not its inverse"));
        }
        Ok(WhiteheadAutomorphism::Multiplier { alphabet, multiplier, side })
    }

    /// Convenience constructor taking the side set as a list of letters.
    pub fn multiplier_with(alphabet: Alphabet, multiplier: Letter, side: &[Letter]) -> Result<Self> {
        let mask = side.iter().fold(0u64, |m, l| m | (1 << l.index()));
        Self::multiplier(alphabet, multiplier, mask)
    }

    pub fn alphabet(&self) -> Alphabet {
        match self {
            WhiteheadAutomorphism::Permutation { alphabet, .. }
            | WhiteheadAutomorphism::Multiplier { alphabet, .. } => *alphabet,
        }
    }

    pub fn identity(alphabet: Alphabet) -> Self {
        let n = alphabet.rank();
        WhiteheadAutomorphism::Permutation { alphabet, targets: (1..=n).collect(), inverted: vec![false; n as usize] }
    }

    pub fn inverse(&self) -> Self {
        match self {
            WhiteheadAutomorphism::Permutation { alphabet, targets, inverted } => {
                let n = targets.len();
                let mut inv_targets = vec![0; n];
                let mut inv_inverted = vec![false; n];
                for i in 0..n {
                    let t = targets[i] as usize - 1;
                    inv_targets[t] = i as u32 + 1;
                    inv_inverted[t] = inverted[i];
                }
                WhiteheadAutomorphism::Permutation { alphabet: *alphabet, targets: inv_targets, inverted: inv_inverted }
            }
            WhiteheadAutomorphism::Multiplier { alphabet, multiplier, side } => {
                let x = *multiplier;
                let side = (side & !(1 << x.index())) | (1 << x.inverse().index());
                WhiteheadAutomorphism::Multiplier { alphabet: *alphabet, multiplier: x.inverse(), side }
            }
        }
    }

    /// Image of a single letter as a (reduced) letter sequence.
    pub fn letter_image(&self, letter: Letter) -> Vec<Letter> {
        match self {
            WhiteheadAutomorphism::Permutation { targets, inverted, .. } => {
                let i = letter.generator() as usize - 1;
                let image = Letter::new(targets[i], inverted[i]);
                vec![if letter.is_inverse() { image.inverse() } else { image }]
            }
            WhiteheadAutomorphism::Multiplier { multiplier, side, .. } => {
                let x = *multiplier;
                if letter.generator() == x.generator() {
                    return vec![letter];
                }
                let g = if letter.is_inverse() { letter.inverse() } else { letter };
                let pre = side & (1 << g.inverse().index()) != 0;
                let post = side & (1 << g.index()) != 0;
                let mut image = Vec::with_capacity(3);
                if pre {
                    image.push(x.inverse());
                }
                image.push(g);
                if post {
                    image.push(x);
                }
                if letter.is_inverse() {
                    image.reverse();
                    image.iter_mut().for_each(|l| *l = l.inverse());
                }
                image
            }
        }
    }

    pub fn apply_word(&self, word: &Word) -> Word {
        Word::reduce(word.letters().iter().flat_map(|&l| self.letter_image(l)))
    }

    /// Image of the conjugacy class of `word`, cyclically reduced and canonical.
    pub fn apply(&self, word: &CyclicWord) -> CyclicWord {
        let image = self.apply_word(&word.to_word());
        cyclic_reduce(&image).0.expect("automorphisms map nontrivial classes to nontrivial classes")
    }

    /// Length of the cyclic reduction of the image, without canonicalising.
    pub fn image_length(&self, word: &CyclicWord) -> usize {
        let image = self.apply_word(&word.to_word());
        let letters = image.letters();
        let (mut lo, mut hi) = (0, letters.len());
        while hi - lo >= 2 && letters[lo] == letters[hi - 1].inverse() {
            lo += 1;
            hi -= 1;
        }
        hi - lo
    }

    pub fn to_free_automorphism(&self) -> FreeAutomorphism {
        let alphabet = self.alphabet();
        let images = (1..=alphabet.rank()).map(|g| Word::reduce(self.letter_image(Letter::new(g, false)))).collect();
        FreeAutomorphism { alphabet, images }
    }

    /// Every type II automorphism of `alphabet` in canonical order: multiplier
    /// letter ascending, then side set as an ascending bitmask.
    pub fn all_multipliers(alphabet: Alphabet) -> Result<Vec<WhiteheadAutomorphism>> {
        let letters = alphabet.letter_count();
        if letters > 24 {
            return Err(invalid("exhaustive type II enumeration is limited to rank 12"));
        }
        let mut out = Vec::new();
        for x in alphabet.letters() {
            let must = 1u64 << x.index();
            let forbid = 1u64 << x.inverse().index();
            for side in 0..(1u64 << letters) {
                if side & must != 0 && side & forbid == 0 {
                    out.push(WhiteheadAutomorphism::Multiplier { alphabet, multiplier: x, side });
                }
            }
        }
        Ok(out)
    }

    /// Every type I automorphism (signed permutations), identity first.
    pub fn all_permutations(alphabet: Alphabet) -> Result<Vec<WhiteheadAutomorphism>> {
        let n = alphabet.rank() as usize;
        if n > 6 {
            return Err(invalid("type I enumeration is limited to rank 6"));
        }
        let mut perms: Vec<Vec<u32>> = Vec::new();
        permute(&mut (1..=n as u32).collect::<Vec<_>>(), 0, &mut perms);
        perms.sort();
        let mut out = Vec::new();
        for targets in perms {
            for mask in 0..(1u32 << n) {
                let inverted = (0..n).map(|i| mask & (1 << i) != 0).collect();
                out.push(WhiteheadAutomorphism::Permutation { alphabet, targets: targets.clone(), inverted });
            }
        }
        Ok(out)
    }
}

/// `x; {A}` for a type II automorphism with multiplier `x` and side set `A`,
/// and the generator images for a permutation.
impl fmt::Display for WhiteheadAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WhiteheadAutomorphism::Multiplier { alphabet, multiplier, side } => {
                let members: Vec<String> = alphabet
                    .letters()
                    .filter(|l| side >> l.index() & 1 == 1)
                    .map(|l| alphabet.letter_label(l))
                    .collect();
                write!(f, "{}; {{{}}}", alphabet.letter_label(*multiplier), members.join(","))
            }
            WhiteheadAutomorphism::Permutation { alphabet, targets, inverted } => {
                let images: Vec<String> = targets
                    .iter()
                    .zip(inverted)
                    .enumerate()
                    .map(|(i, (&t, &inv))| {
                        let source = alphabet.letter_label(Letter::new(i as u32 + 1, false));
                        format!("{source}->{}", alphabet.letter_label(Letter::new(t, inv)))
                    })
                    .collect();
                write!(f, "{}", images.join(", "))
            }
        }
    }
}

fn permute(items: &mut Vec<u32>, k: usize, out: &mut Vec<Vec<u32>>) {
    if k == items.len() {
        out.push(items.clone());
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, out);
        items.swap(k, i);
    }
}
