//! Group constructions: the Rips construction, universal central
//! extensions, fibre-product generators and the pipeline combining them.

mod pipeline;
mod rips;
mod uce;

pub use crate::permrep::PairWord;
pub use pipeline::{
    fibre_generators, grothendieck_evidence, pipeline, GrothendieckEvidence, H2Status, PipelineCounts, PipelineResult,
};
pub use rips::{rips, RipsResult, RipsSummary, MAX_RIPS_LETTERS};
pub use uce::{uce, UceResult, UceSummary};

#[cfg(test)]
mod tests;
