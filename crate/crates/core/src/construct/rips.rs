use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cancel::check_metric;
use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::word::{free_reduce, substitute, zero_sum_substitution, Alphabet, Letter, Word};

/// Total number of `a`-letters the construction may produce before giving up.
pub const MAX_RIPS_LETTERS: usize = 4_000_000;

const SEED: u64 = 0x5eed_41b5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RipsResult {
    pub gamma: Presentation,
    /// `a_1` and `a_2` as generators of `gamma`.
    pub normal_gens: (usize, usize),
    /// Image of each generator of `gamma` in the input: `x -> x`, `a_i -> 1`.
    pub quotient_map: Vec<Word>,
    pub m: usize,
    pub zero_exponent: bool,
    /// Subwords of this length over `a_1, a_2` occur at most once in the
    /// filler words (before the zero-sum substitution).
    pub window: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RipsSummary {
    pub generators: usize,
    pub relators: usize,
    pub m: usize,
    pub zero_exponent: bool,
    pub window: usize,
    pub total_length: usize,
    pub max_relator_length: usize,
}

impl RipsResult {
    pub fn summary(&self) -> RipsSummary {
        RipsSummary {
            generators: self.gamma.generator_count(),
            relators: self.gamma.relator_count(),
            m: self.m,
            zero_exponent: self.zero_exponent,
            window: self.window,
            total_length: self.gamma.total_length(),
            max_relator_length: self.gamma.max_relator_length(),
        }
    }

    /// The input presentation recovered by killing `a_1, a_2`.
    pub fn quotient_image(&self, w: &Word) -> Word {
        let mut out = Word::identity();
        for &l in w.letters() {
            let img = &self.quotient_map[l.generator()];
            let img = if l.is_inverse() { img.inverse() } else { img.clone() };
            out = out.mul(&img);
        }
        out
    }
}

/// Letters over `{a_1, a_2}` coded 0..4 (`code ^ 1` inverts), as in [`Letter::code`]
/// for a two-letter alphabet.
struct WindowSet {
    len: usize,
    used: HashSet<u64>,
}

impl WindowSet {
    fn key(w: &[u8]) -> u64 {
        w.iter().fold(0u64, |k, &c| (k << 2) | c as u64)
    }

    fn inverse_key(w: &[u8]) -> u64 {
        w.iter().rev().fold(0u64, |k, &c| (k << 2) | (c ^ 1) as u64)
    }

    fn free(&self, w: &[u8]) -> bool {
        !self.used.contains(&Self::key(w)) && !self.used.contains(&Self::inverse_key(w))
    }

    fn mark(&mut self, w: &[u8]) {
        self.used.insert(Self::key(w));
        self.used.insert(Self::inverse_key(w));
    }

    fn unmark(&mut self, w: &[u8]) {
        self.used.remove(&Self::key(w));
        self.used.remove(&Self::inverse_key(w));
    }
}

fn exponent(c: u8) -> (i64, i64) {
    let s = if c & 1 == 1 { -1 } else { 1 };
    if c >> 1 == 0 {
        (s, 0)
    } else {
        (0, s)
    }
}

/// A reduced word of even length `len` over `a_1, a_2` with exponent sum zero
/// in both letters and small partial exponent sums, none of whose length-`window` subwords (or their inverses)
/// is already in `windows`. Depth-first with random letter order.
fn filler(len: usize, windows: &mut WindowSet, rng: &mut ChaCha8Rng) -> Option<Vec<u8>> {
    let l = windows.len;
    // keeping the partial sums near zero leaves the end of the word unforced
    let drift = (l as i64 / 2).max(2);
    let mut word: Vec<u8> = Vec::with_capacity(len);
    let mut options: Vec<Vec<u8>> = Vec::with_capacity(len);
    let (mut s1, mut s2) = (0i64, 0i64);
    let mut steps = 0usize;
    let fresh = |rng: &mut ChaCha8Rng| {
        let mut v = vec![0u8, 1, 2, 3];
        v.shuffle(rng);
        v
    };
    options.push(fresh(rng));
    loop {
        steps += 1;
        if steps > 50 * len + 10_000 {
            // give up; caller retries with a longer window
            for k in l..=word.len() {
                windows.unmark(&word[k - l..k]);
            }
            return None;
        }
        let depth = word.len();
        let Some(c) = options[depth].pop() else {
            // backtrack
            options.pop();
            let k = word.len();
            if k == 0 {
                return None;
            }
            if k >= l {
                windows.unmark(&word[k - l..k]);
            }
            let c = word.pop().unwrap();
            let (e1, e2) = exponent(c);
            s1 -= e1;
            s2 -= e2;
            continue;
        };
        if word.last().is_some_and(|&p| p == c ^ 1) {
            continue;
        }
        let (e1, e2) = exponent(c);
        let remaining = len - depth - 1;
        let (t1, t2) = ((s1 + e1).abs(), (s2 + e2).abs());
        if (t1 + t2) as usize > remaining || t1.max(t2) > drift {
            continue;
        }
        word.push(c);
        if word.len() >= l {
            let k = word.len();
            if !windows.free(&word[k - l..k]) {
                word.pop();
                continue;
            }
            windows.mark(&word[k - l..k]);
        }
        s1 += e1;
        s2 += e2;
        if word.len() == len {
            return Some(word);
        }
        options.push(fresh(rng));
    }
}

fn to_word(codes: &[u8], a1: usize, a2: usize) -> Word {
    Word::from_letters(
        codes
            .iter()
            .map(|&c| Letter::new(if c >> 1 == 0 { a1 } else { a2 }, c & 1 == 1))
            .collect(),
    )
}

/// Lengths of the filler words for a window length: `|u_r|` and `|v|`.
fn lengths(m: usize, max_rel: usize, window: usize) -> (usize, usize) {
    let even = |n: usize| n + (n & 1);
    (even(m * (max_rel + 2 * window)), even(m * (2 * window + 3)))
}

fn windows_needed(m: usize, max_rel: usize, relators: usize, conj: usize, window: usize) -> usize {
    let (lu, lv) = lengths(m, max_rel, window);
    relators * (lu + 1 - window) + conj * (lv + 1 - window)
}

/// Smallest window for which the filler words use at most a quarter of all
/// reduced words of that length (counting inverses).
fn initial_window(m: usize, max_rel: usize, relators: usize, conj: usize) -> usize {
    let mut l = 2;
    loop {
        let space = 4.0 * 3f64.powi(l as i32 - 1);
        if 2.0 * windows_needed(m, max_rel, relators, conj, l) as f64 <= 0.25 * space {
            return l;
        }
        l += 1;
    }
}

/// Builds a C'(1/m) presentation `gamma` on the generators of `q` plus
/// `a_1, a_2` whose quotient by the normal closure of `a_1, a_2` is `q`.
/// Relators are `r u_r` for each relator `r` of `q`, then
/// `x^e a_i x^-e v_{x,i,e}` for each generator `x`, `i = 1, 2`, `e = 1, -1`.
/// The filler words `u_r, v` have exponent sum zero in `a_1` and `a_2`.
/// With `zero_exponent` the fillers are built for `C'(1/5m)` and then passed
/// through the zero-sum substitution.
pub fn rips(q: &Presentation, m: usize, zero_exponent: bool) -> Result<RipsResult> {
    if q.generator_count() == 0 {
        return Err(Error::Precondition("the input needs at least one generator".into()));
    }
    if m < 6 {
        return Err(Error::BadParameters {
            name: "rips".into(),
            reason: format!("m = {m}, expected m >= 6"),
        });
    }
    let nx = q.generator_count();
    let mut names: Vec<String> = q.alphabet().names().to_vec();
    let a1_name = q.alphabet().fresh_name("a_1");
    let a2_name = q.alphabet().fresh_name("a_2");
    names.push(a1_name);
    names.push(a2_name);
    let alphabet = Alphabet::new(&names)?;
    let (a1, a2) = (nx, nx + 1);
    let relators: Vec<Word> = q.relators().iter().map(free_reduce).collect();
    let max_rel = relators.iter().map(Word::len).max().unwrap_or(0);
    let scale = if zero_exponent { 5 * m } else { m };
    let conj = 4 * nx;
    let sigma = zero_sum_substitution(nx + 2, a1, a2);

    let mut window = initial_window(scale, max_rel, relators.len(), conj);
    for _attempt in 0..6 {
        let (lu, lv) = lengths(scale, max_rel, window);
        let total = relators.len() * lu + conj * lv;
        let grown = if zero_exponent { 6 * total } else { total };
        if grown > MAX_RIPS_LETTERS {
            return Err(Error::Exhausted(format!(
                "filler words would need {grown} letters (cap {MAX_RIPS_LETTERS})"
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ window as u64);
        let mut windows = WindowSet {
            len: window,
            used: HashSet::new(),
        };
        let mut fillers = Vec::with_capacity(relators.len() + conj);
        let mut ok = true;
        for k in 0..relators.len() + conj {
            let len = if k < relators.len() { lu } else { lv };
            match filler(len, &mut windows, &mut rng) {
                Some(f) => fillers.push(to_word(&f, a1, a2)),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            if zero_exponent {
                fillers = fillers.iter().map(|f| substitute(f, &sigma)).collect::<Result<_>>()?;
            }
            let mut rels = Vec::with_capacity(relators.len() + conj);
            for (r, u) in relators.iter().zip(&fillers) {
                rels.push(r.mul(u));
            }
            let mut v = fillers[relators.len()..].iter();
            for x in 0..nx {
                for a in [a1, a2] {
                    for e in [1, -1] {
                        let xe = Word::from_powers(&[(x, e)]);
                        let w = Word::generator(a).conjugate_by(&xe).mul(v.next().unwrap());
                        rels.push(w);
                    }
                }
            }
            let gamma = Presentation::new(alphabet.clone(), rels)?;
            let report = check_metric(&gamma, m);
            if report.verdict {
                let mut quotient_map: Vec<Word> = (0..nx).map(Word::generator).collect();
                quotient_map.push(Word::identity());
                quotient_map.push(Word::identity());
                return Ok(RipsResult {
                    gamma,
                    normal_gens: (a1, a2),
                    quotient_map,
                    m,
                    zero_exponent,
                    window,
                });
            }
            if let Some(f) = report.failure() {
                log::debug!(
                    "window {window}: relator {} of length {} has a piece of length {}, retrying",
                    f.relator,
                    f.length,
                    f.max_piece
                );
            }
        } else {
            log::debug!("window {window}: filler search failed, retrying");
        }
        window += 1;
    }
    Err(Error::Internal("no filler words passed the small cancellation check".into()))
}
