//! Metric small cancellation: pieces, the C'(1/m) check, and Dehn's algorithm.

mod dehn;
mod index;
mod pieces;

use crate::presentation::Presentation;

pub use dehn::{dehn_is_trivial, DehnSolver, DehnStep, DehnStepView, DehnTrace, DehnTraceView};
pub use pieces::{Occurrence, PieceReport, PieceWitness, RelatorPieces};

/// Piece lengths of every symmetrized relator and the C'(1/m) verdict
/// (`m * |piece| < |r|` for every piece inside `r`).
pub fn check_metric(p: &Presentation, m: usize) -> PieceReport {
    let idx = index::CyclicIndex::new(p);
    let report = pieces::piece_report(&idx, p, m);
    if report.proper_power_warning {
        log::warn!("presentation has a proper-power relator; it overlaps itself in full");
    }
    report
}

#[cfg(test)]
mod tests;
