use serde::Serialize;

use crate::budget::Budget;
use crate::coset::{todd_coxeter, SchreierSystem};
use crate::error::Result;
use crate::presentation::Presentation;
use crate::word::Word;
use crate::zlattice::{coinvariant_group, kernel_invariants, AbelianInvariants, FpAbelianGroup, IntMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SchurReport {
    pub group_order: usize,
    pub multiplier: AbelianInvariants,
    /// Rank of the relation module `R/[R,R]` (number of Schreier generators).
    pub schreier_rank: usize,
    /// Rows of the coinvariant relation matrix.
    pub coinvariant_relations: usize,
    /// `R/[F,R]`, before intersecting with `[F,F]`.
    pub coinvariants: AbelianInvariants,
}

fn exponent_row(w: &Word, n: usize) -> Vec<i64> {
    let mut v = vec![0i64; n];
    for l in w.letters() {
        v[l.generator()] += l.sign();
    }
    v
}

/// `H_2` of a finite group by the Hopf formula: with `R` the kernel of
/// `F -> G`, take `R_ab` on the Schreier generators of the full coset table,
/// divide out the conjugation action of `F`, and keep the kernel of the map
/// to `F_ab`.
pub fn schur_multiplier(p: &Presentation, budget: &Budget) -> Result<SchurReport> {
    let t = todd_coxeter(p, &[], budget)?;
    let sys = SchreierSystem::new(&t)?;
    let rank = sys.rank();
    let k = p.generator_count();
    let words: Vec<Word> = (0..rank).map(|s| sys.generator_word(&t, s)).collect();

    let mut actions = Vec::with_capacity(k);
    for x in 0..k {
        let xw = Word::generator(x);
        let mut rows = Vec::with_capacity(rank);
        for w in &words {
            let (rewritten, end) = sys.rewrite(&t, 0, &w.conjugate_by(&xw));
            debug_assert_eq!(end, 0);
            rows.push(exponent_row(&rewritten, rank));
        }
        actions.push(IntMatrix::from_rows_i64(&rows, rank)?);
    }
    let free = FpAbelianGroup::free(rank);
    let coinv = coinvariant_group(&free, &actions)?;
    let map_rows: Vec<Vec<i64>> = words.iter().map(|w| exponent_row(w, k)).collect();
    let map = IntMatrix::from_rows_i64(&map_rows, k)?;
    let multiplier = kernel_invariants(&coinv, &map)?;
    Ok(SchurReport {
        group_order: t.index(),
        multiplier,
        schreier_rank: rank,
        coinvariant_relations: coinv.relations.rows(),
        coinvariants: coinv.invariants(),
    })
}
