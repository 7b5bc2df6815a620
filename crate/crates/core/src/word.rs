//! Elements of free groups.
//!
//! A [`Word`] is a sequence of signed generator indices. Indices are only
//! meaningful relative to an [`Alphabet`]; operations that cross alphabets
//! ([`Substitution`], the presentation combinators) remap them explicitly.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// A generator or its inverse, packed as `2 * generator + inverse_bit`.
///
/// The packed value doubles as the column index of coset tables, and
/// `code ^ 1` is the inverse letter.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(u32);

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter((generator as u32) << 1 | inverse as u32)
    }

    pub fn positive(generator: usize) -> Self {
        Self::new(generator, false)
    }

    pub fn from_code(code: usize) -> Self {
        Letter(code as u32)
    }

    #[inline]
    pub fn code(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn generator(self) -> usize {
        (self.0 >> 1) as usize
    }

    #[inline]
    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    #[inline]
    pub fn inverse(self) -> Self {
        Letter(self.0 ^ 1)
    }

    /// +1 for a generator, -1 for an inverse generator.
    pub fn sign(self) -> i64 {
        if self.is_inverse() {
            -1
        } else {
            1
        }
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_inverse() {
            write!(f, "g{}'", self.generator())
        } else {
            write!(f, "g{}", self.generator())
        }
    }
}

/// An ordered, case-sensitive list of generator names.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

/// Whether `name` matches `[A-Za-z][A-Za-z0-9_]*`.
pub fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Alphabet {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let mut alphabet = Alphabet::default();
        for name in names {
            alphabet.push(name.as_ref())?;
        }
        Ok(alphabet)
    }

    /// Appends a generator, returning its index.
    pub fn push(&mut self, name: &str) -> Result<usize> {
        if !is_valid_name(name) {
            return Err(Error::InvalidGeneratorName(name.to_string()));
        }
        if self.index.contains_key(name) {
            return Err(Error::DuplicateGenerator(name.to_string()));
        }
        let i = self.names.len();
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), i);
        Ok(i)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn lookup(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    /// A name based on `base` that is not yet taken.
    pub fn fresh_name(&self, base: &str) -> String {
        let mut name = base.to_string();
        while self.contains(&name) {
            name.push('_');
        }
        name
    }
}

/// A word in a free group. Not necessarily reduced; see [`free_reduce`].
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(Vec<Letter>);

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word{:?}", self.0)
    }
}

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    /// Wraps letters without reducing them.
    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    /// Builds a reduced word from `(generator, exponent)` runs.
    pub fn from_powers(runs: &[(usize, i64)]) -> Self {
        let mut w = Word::identity();
        for &(g, e) in runs {
            let l = Letter::new(g, e < 0);
            for _ in 0..e.unsigned_abs() {
                w.push_reduced(l);
            }
        }
        w
    }

    pub fn generator(g: usize) -> Self {
        Word(vec![Letter::positive(g)])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Appends a letter, cancelling against the last one if possible.
    pub fn push_reduced(&mut self, l: Letter) {
        if self.0.last() == Some(&l.inverse()) {
            self.0.pop();
        } else {
            self.0.push(l);
        }
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|p| p[0] != p[1].inverse())
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.is_reduced()
            && match (self.0.first(), self.0.last()) {
                (Some(&a), Some(&b)) => self.0.len() == 1 || a != b.inverse(),
                _ => true,
            }
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// Reduced product `self * other`.
    pub fn mul(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for &l in &other.0 {
            w.push_reduced(l);
        }
        w
    }

    /// Reduced power; negative exponents invert.
    pub fn pow(&self, e: i64) -> Word {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut w = Word::identity();
        for _ in 0..e.unsigned_abs() {
            w = w.mul(&base);
        }
        w
    }

    /// The commutator `[u, v] = u v u^-1 v^-1`, reduced.
    pub fn commutator(u: &Word, v: &Word) -> Word {
        u.mul(v).mul(&u.inverse()).mul(&v.inverse())
    }

    /// Reduced conjugate `c * self * c^-1`.
    pub fn conjugate_by(&self, c: &Word) -> Word {
        c.mul(self).mul(&c.inverse())
    }

    /// The cyclic permutation starting at position `k`.
    pub fn rotate(&self, k: usize) -> Word {
        if self.0.is_empty() {
            return Word::identity();
        }
        let k = k % self.0.len();
        let mut v = Vec::with_capacity(self.0.len());
        v.extend_from_slice(&self.0[k..]);
        v.extend_from_slice(&self.0[..k]);
        Word(v)
    }

    pub fn exponent_sum(&self, g: usize) -> i64 {
        self.0
            .iter()
            .filter(|l| l.generator() == g)
            .map(|l| l.sign())
            .sum()
    }

    /// Exponent-sum vector over `n` generators.
    pub fn abelianized(&self, n: usize) -> Vec<i64> {
        let mut v = vec![0i64; n];
        for l in &self.0 {
            v[l.generator()] += l.sign();
        }
        v
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|l| l.generator()).max()
    }

    /// Shortest `u` with `self = u^k` as a letter sequence, together with `k`.
    ///
    /// For a cyclically reduced word, `k > 1` means the word is a proper power.
    pub fn primitive_root(&self) -> (Word, usize) {
        let n = self.0.len();
        if n == 0 {
            return (Word::identity(), 0);
        }
        // Smallest period dividing n via the prefix function.
        let mut pi = vec![0usize; n];
        for i in 1..n {
            let mut k = pi[i - 1];
            while k > 0 && self.0[i] != self.0[k] {
                k = pi[k - 1];
            }
            if self.0[i] == self.0[k] {
                k += 1;
            }
            pi[i] = k;
        }
        let p = n - pi[n - 1];
        if n % p == 0 {
            (Word(self.0[..p].to_vec()), n / p)
        } else {
            (self.clone(), 1)
        }
    }

    /// Whether the cyclic reduction of this word is a proper power.
    pub fn is_proper_power(&self) -> bool {
        cyclic_reduce(self).0.primitive_root().1 > 1
    }

    /// Run-length display against an alphabet, e.g. `a^2 b^-1 a`.
    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> WordDisplay<'a> {
        WordDisplay {
            word: self,
            alphabet,
        }
    }

    /// Renames generators through `map` (old index to new index).
    pub fn relabel(&self, map: &[usize]) -> Word {
        Word(
            self.0
                .iter()
                .map(|l| Letter::new(map[l.generator()], l.is_inverse()))
                .collect(),
        )
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<T: IntoIterator<Item = Letter>>(iter: T) -> Self {
        Word(iter.into_iter().collect())
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    alphabet: &'a Alphabet,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters = self.word.letters();
        if letters.is_empty() {
            return write!(f, "1");
        }
        let mut i = 0;
        let mut first = true;
        while i < letters.len() {
            let l = letters[i];
            let mut j = i;
            while j < letters.len() && letters[j] == l {
                j += 1;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            let run = (j - i) as i64 * l.sign();
            let name = self.alphabet.name(l.generator());
            if run == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{run}")?;
            }
            i = j;
        }
        Ok(())
    }
}

/// The unique reduced word equal to `w` in the free group.
pub fn free_reduce(w: &Word) -> Word {
    let mut out = Word(Vec::with_capacity(w.len()));
    for &l in w.letters() {
        out.push_reduced(l);
    }
    out
}

/// Splits `w` as `conjugator * core * conjugator^-1` with `core` cyclically reduced.
pub fn cyclic_reduce(w: &Word) -> (Word, Word) {
    let r = free_reduce(w);
    let s = r.letters();
    let (mut i, mut j) = (0usize, s.len());
    while j >= i + 2 && s[i] == s[j - 1].inverse() {
        i += 1;
        j -= 1;
    }
    (Word(s[i..j].to_vec()), Word(s[..i].to_vec()))
}

pub fn exponent_sum(w: &Word, g: usize) -> i64 {
    w.exponent_sum(g)
}

/// A homomorphism between free groups given by generator images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substitution {
    images: Vec<Word>,
}

impl Substitution {
    /// `images[g]` is the image of generator `g`; images are reduced on entry.
    pub fn new(images: Vec<Word>) -> Self {
        Substitution {
            images: images.iter().map(free_reduce).collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Substitution {
            images: (0..n).map(Word::generator).collect(),
        }
    }

    pub fn domain_size(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, g: usize) -> &Word {
        &self.images[g]
    }

    pub fn set_image(&mut self, g: usize, w: Word) {
        self.images[g] = free_reduce(&w);
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }
}

/// The reduced image of `w` under `sigma`.
pub fn substitute(w: &Word, sigma: &Substitution) -> Result<Word> {
    let mut out = Word::identity();
    for &l in w.letters() {
        let g = l.generator();
        if g >= sigma.images.len() {
            return Err(Error::Domain {
                index: g,
                size: sigma.images.len(),
            });
        }
        let img = &sigma.images[g];
        if l.is_inverse() {
            for &m in img.letters().iter().rev() {
                out.push_reduced(m.inverse());
            }
        } else {
            for &m in img.letters() {
                out.push_reduced(m);
            }
        }
    }
    Ok(out)
}

/// The exponent-sum-killing endomorphism of F(a_1, a_2) used by the Rips
/// construction: `a_1 -> a_1 a_2 a_1^-2 a_2^-1 a_1`, `a_2 -> a_2 a_1 a_2^-2 a_1^-1 a_2`,
/// identity on every other generator of an `n`-letter alphabet.
pub fn zero_sum_substitution(n: usize, a1: usize, a2: usize) -> Substitution {
    let mut sigma = Substitution::identity(n);
    sigma.set_image(
        a1,
        Word::from_powers(&[(a1, 1), (a2, 1), (a1, -2), (a2, -1), (a1, 1)]),
    );
    sigma.set_image(
        a2,
        Word::from_powers(&[(a2, 1), (a1, 1), (a2, -2), (a1, -1), (a2, 1)]),
    );
    sigma
}
