use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::word::{free_reduce, Word};
use crate::zlattice::{abelianization, lattice_solve, IntMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UceResult {
    pub tilde: Presentation,
    /// `witnesses[a][r]`: exponent of relator `r` in `w_a`.
    pub witnesses: Vec<Vec<i64>>,
    /// Relators `[a, r]`, generator-major. When `r` is a power of `a` the
    /// commutator is taken with `b r b^-1` for another generator `b`; with a
    /// single generator it is the empty word and is absent from `tilde`.
    pub commutators: Vec<Word>,
    /// `w_a`, whose abelianization is the basis vector of `a`.
    pub expressions: Vec<Word>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UceSummary {
    pub generators: usize,
    pub relators: usize,
    pub witnesses: Vec<Vec<i64>>,
    pub expression_lengths: Vec<usize>,
    pub total_length: usize,
}

impl UceResult {
    pub fn summary(&self) -> UceSummary {
        UceSummary {
            generators: self.tilde.generator_count(),
            relators: self.tilde.relator_count(),
            witnesses: self.witnesses.clone(),
            expression_lengths: self.expressions.iter().map(Word::len).collect(),
            total_length: self.tilde.total_length(),
        }
    }
}

/// A presentation of the universal central extension of a perfect group:
/// relators `[a, r]` for every generator `a` and relator `r`, then for each
/// `a` a product `w_a` of relator powers (input order) abelianizing to `a`.
pub fn uce(g: &Presentation) -> Result<UceResult> {
    let h1 = abelianization(g);
    if !h1.is_trivial() {
        return Err(Error::NotPerfect(h1.to_string()));
    }
    let n = g.generator_count();
    let relators: Vec<Word> = g.relators().to_vec();
    let basis = IntMatrix::from_rows_i64(&g.exponent_matrix(), n)?;

    let mut commutators = Vec::with_capacity(n * relators.len());
    for a in 0..n {
        let x = Word::generator(a);
        for r in &relators {
            let mut c = Word::commutator(&x, r);
            if c.is_empty() {
                // r is a power of a; a conjugate of r keeps the relator nontrivial
                if let Some(b) = (0..n).find(|&b| b != a) {
                    c = Word::commutator(&x, &r.conjugate_by(&Word::generator(b)));
                }
            }
            commutators.push(c);
        }
    }
    let mut witnesses = Vec::with_capacity(n);
    let mut expressions = Vec::with_capacity(n);
    for a in 0..n {
        let mut target = vec![BigInt::from(0); n];
        target[a] = BigInt::from(1);
        let c = lattice_solve(&target, &basis)?
            .ok_or_else(|| Error::Internal("perfect group without a witness".into()))?;
        let c: Vec<i64> = c
            .iter()
            .map(|x| x.to_i64().ok_or_else(|| Error::Internal("witness exponent overflow".into())))
            .collect::<Result<_>>()?;
        let mut w = Word::identity();
        for (r, &e) in relators.iter().zip(&c) {
            if e != 0 {
                w = w.mul(&r.pow(e));
            }
        }
        witnesses.push(c);
        expressions.push(free_reduce(&w));
    }
    let mut all = commutators.clone();
    all.extend(expressions.iter().cloned());
    Ok(UceResult {
        tilde: g.with_relators(all)?,
        witnesses,
        commutators,
        expressions,
    })
}
