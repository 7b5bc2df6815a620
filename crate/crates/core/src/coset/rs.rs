use crate::error::Result;
use crate::presentation::Presentation;
use crate::word::{free_reduce, Alphabet, Letter, Word};

use super::table::{require_complete, CosetTable};

/// Schreier transversal data for a standardized coset table: the breadth-first
/// spanning tree and the numbering of non-tree edges as Schreier generators.
#[derive(Clone, Debug)]
pub struct SchreierSystem {
    generators: usize,
    index: usize,
    /// `edge_gen[c * generators + g]` is the Schreier generator of the edge
    /// `c --g--> c.g`, or `None` for tree edges.
    edge_gen: Vec<Option<usize>>,
    /// Schreier generator number to its edge `(coset, generator)`.
    edges: Vec<(usize, usize)>,
    /// Transversal words: coset representative of each coset.
    reps: Vec<Word>,
}

impl SchreierSystem {
    pub fn new(t: &CosetTable) -> Result<Self> {
        require_complete(t)?;
        let (n, k) = (t.index(), t.generator_count());
        let mut reps: Vec<Option<Word>> = vec![None; n];
        reps[0] = Some(Word::identity());
        // tree[c * k + g]: edge c --g--> is a tree edge
        let mut tree = vec![false; n * k];
        let mut order = vec![0usize];
        let mut i = 0;
        while i < order.len() {
            let c = order[i];
            for code in 0..2 * k {
                let l = Letter::from_code(code);
                let d = t.act(c, l);
                if reps[d].is_none() {
                    let mut w = reps[c].clone().unwrap();
                    w.push_reduced(l);
                    reps[d] = Some(w);
                    order.push(d);
                    if l.is_inverse() {
                        tree[d * k + l.generator()] = true;
                    } else {
                        tree[c * k + l.generator()] = true;
                    }
                }
            }
            i += 1;
        }
        let mut edge_gen = vec![None; n * k];
        let mut edges = Vec::new();
        for c in 0..n {
            for g in 0..k {
                if !tree[c * k + g] {
                    edge_gen[c * k + g] = Some(edges.len());
                    edges.push((c, g));
                }
            }
        }
        Ok(SchreierSystem {
            generators: k,
            index: n,
            edge_gen,
            edges,
            reps: reps.into_iter().map(|r| r.unwrap()).collect(),
        })
    }

    pub fn rank(&self) -> usize {
        self.edges.len()
    }

    pub fn index(&self) -> usize {
        self.index
    }

    /// Edge `(coset, generator)` of Schreier generator `s`.
    pub fn edge(&self, s: usize) -> (usize, usize) {
        self.edges[s]
    }

    pub fn representative(&self, c: usize) -> &Word {
        &self.reps[c]
    }

    /// The Schreier generator `rep(c) g rep(c.g)^-1` as a word in the original generators.
    pub fn generator_word(&self, t: &CosetTable, s: usize) -> Word {
        let (c, g) = self.edges[s];
        let d = t.act(c, Letter::positive(g));
        self.reps[c]
            .mul(&Word::generator(g))
            .mul(&self.reps[d].inverse())
    }

    /// Rewrites `w` read from coset `c` as a word in the Schreier generators.
    /// Returns the rewritten word and the coset reached.
    pub fn rewrite(&self, t: &CosetTable, c: usize, w: &Word) -> (Word, usize) {
        let mut out = Word::identity();
        let mut cur = c;
        for &l in w.letters() {
            let g = l.generator();
            if l.is_inverse() {
                let d = t.act(cur, l);
                if let Some(s) = self.edge_gen[d * self.generators + g] {
                    out.push_reduced(Letter::new(s, true));
                }
                cur = d;
            } else {
                if let Some(s) = self.edge_gen[cur * self.generators + g] {
                    out.push_reduced(Letter::positive(s));
                }
                cur = t.act(cur, l);
            }
        }
        (out, cur)
    }

    /// Generator names `g_cN`: generator `g` leaving coset `N` (1-based).
    pub fn alphabet(&self, base: &Alphabet) -> Alphabet {
        let names: Vec<String> = self
            .edges
            .iter()
            .map(|&(c, g)| format!("{}_c{}", base.name(g), c + 1))
            .collect();
        Alphabet::new(&names).expect("generated names are valid and distinct")
    }
}

/// Presentation of the subgroup on Schreier generators; relators are the
/// rewrites of every relator at every coset (trivial rewrites dropped).
pub fn reidemeister_schreier(p: &Presentation, t: &CosetTable) -> Result<Presentation> {
    let sys = SchreierSystem::new(t)?;
    let mut relators = Vec::new();
    for c in 0..t.index() {
        for r in p.relators() {
            let (w, _) = sys.rewrite(t, c, r);
            let w = free_reduce(&w);
            if !w.is_empty() {
                relators.push(w);
            }
        }
    }
    Presentation::new(sys.alphabet(p.alphabet()), relators)
}
