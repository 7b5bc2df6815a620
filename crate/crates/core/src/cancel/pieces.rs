use serde::Serialize;

use crate::presentation::Presentation;
use crate::word::Word;

use super::index::{CyclicIndex, Pos};

/// Where a piece starts: an element of the symmetrized set, named by its
/// source relator, orientation and offset into the least rotation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Occurrence {
    pub relator: usize,
    pub inverted: bool,
    pub offset: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PieceWitness {
    pub piece: String,
    pub length: usize,
    pub first: Occurrence,
    pub second: Occurrence,
}

/// Pieces inside one cyclic class of the symmetrized set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelatorPieces {
    pub relator: usize,
    pub inverted: bool,
    pub length: usize,
    pub max_piece: usize,
    pub proper_power: bool,
    pub witness: Option<PieceWitness>,
}

impl RelatorPieces {
    pub fn satisfies(&self, m: usize) -> bool {
        m * self.max_piece < self.length
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PieceReport {
    pub m: usize,
    pub verdict: bool,
    pub relators: Vec<RelatorPieces>,
    /// Some relator is a proper power; such relators overlap themselves in full.
    pub proper_power_warning: bool,
    /// Largest `m` for which the condition holds, `None` when there are no pieces.
    pub best_m: Option<usize>,
}

impl PieceReport {
    /// The first class that fails the condition, with its witness.
    pub fn failure(&self) -> Option<&RelatorPieces> {
        self.relators.iter().find(|r| !r.satisfies(self.m))
    }
}

fn occurrence(idx: &CyclicIndex, p: Pos) -> Occurrence {
    Occurrence {
        relator: idx.relator[p.cycle as usize],
        inverted: idx.inverted[p.cycle as usize],
        offset: p.offset as usize,
    }
}

pub(crate) fn piece_report(idx: &CyclicIndex, p: &Presentation, m: usize) -> PieceReport {
    let n = idx.cycles.len();
    let mut best: Vec<(usize, Option<(Pos, Pos)>)> = vec![(0, None); n];
    for w in idx.sorted.windows(2) {
        let l = idx.lcp_positions(w[0], w[1]);
        if l == 0 {
            continue;
        }
        for (a, b) in [(w[0], w[1]), (w[1], w[0])] {
            let slot = &mut best[a.cycle as usize];
            if l > slot.0 {
                *slot = (l, Some((a, b)));
            }
        }
    }
    let mut relators = Vec::with_capacity(n);
    for (ci, (max_piece, pair)) in best.into_iter().enumerate() {
        let length = idx.cycles[ci].len();
        let witness = pair.map(|(a, b)| {
            let letters = idx.element(a)[..max_piece].to_vec();
            PieceWitness {
                piece: p.display_word(&Word::from_letters(letters)),
                length: max_piece,
                first: occurrence(idx, a),
                second: occurrence(idx, b),
            }
        });
        relators.push(RelatorPieces {
            relator: idx.relator[ci],
            inverted: idx.inverted[ci],
            length,
            max_piece,
            proper_power: idx.period[ci] < length,
            witness,
        });
    }
    let verdict = relators.iter().all(|r| r.satisfies(m));
    let proper_power_warning = relators.iter().any(|r| r.proper_power);
    let best_m = relators
        .iter()
        .filter(|r| r.max_piece > 0)
        .map(|r| (r.length - 1) / r.max_piece)
        .min();
    PieceReport {
        m,
        verdict,
        relators,
        proper_power_warning,
        best_m,
    }
}
