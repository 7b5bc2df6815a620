use serde::Serialize;

use crate::budget::Budget;
use crate::coset::{low_index, todd_coxeter, Fingerprint};
use crate::error::{Error, Result};
use crate::homology::schur_multiplier;
use crate::permrep::PairWord;
use crate::presentation::{direct_product, Presentation};
use crate::word::Word;
use crate::zlattice::{abelianization, is_perfect, AbelianInvariants};

use super::rips::{rips, RipsSummary};
use super::uce::{uce, UceSummary};

/// `{(a, a) : a generator} + {(r, 1) : r in q_relators}`: generators of the
/// fibre product of `G x G` over the quotient of `G` by `q_relators`.
pub fn fibre_generators(g: &Presentation, q_relators: &[Word]) -> Result<Vec<PairWord>> {
    let n = g.generator_count();
    if let Some(m) = q_relators.iter().filter_map(Word::max_generator).max() {
        if m >= n {
            return Err(Error::Domain { index: m, size: n });
        }
    }
    let mut out: Vec<PairWord> = (0..n)
        .map(|a| PairWord::new(Word::generator(a), Word::generator(a)))
        .collect();
    out.extend(q_relators.iter().map(|r| PairWord::new(r.clone(), Word::identity())));
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "value", rename_all = "snake_case")]
pub enum H2Status {
    Computed(AbelianInvariants),
    NotComputed(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrothendieckEvidence {
    pub h1: AbelianInvariants,
    pub index_bound: usize,
    pub low_index: Fingerprint,
    pub proper_subgroups_found: u64,
    pub h2: H2Status,
    /// All three tests came out as required.
    pub satisfied: bool,
    pub verdict: String,
}

/// Evidence that `q` has no finite quotients and trivial `H_2`, limited to
/// what was actually searched.
pub fn grothendieck_evidence(q: &Presentation, index_bound: usize, budget: &Budget) -> GrothendieckEvidence {
    let h1 = abelianization(q);
    let low_index = low_index(q, index_bound, budget);
    let proper = low_index.proper_subgroups();
    let h2 = match todd_coxeter(q, &[], budget) {
        Ok(t) if t.index() == 1 => H2Status::Computed(AbelianInvariants::trivial()),
        Ok(_) => match schur_multiplier(q, budget) {
            Ok(r) => H2Status::Computed(r.multiplier),
            Err(e) => H2Status::NotComputed(e.to_string()),
        },
        Err(e) => H2Status::NotComputed(format!("group not certified finite ({e})")),
    };
    let h2_ok = match &h2 {
        H2Status::Computed(x) => x.is_trivial(),
        H2Status::NotComputed(_) => true,
    };
    let (satisfied, verdict) = if !h1.is_trivial() {
        (false, format!("criterion fails: H_1 = {h1}"))
    } else if proper > 0 {
        let k = low_index.counts.iter().find(|c| c.index > 1 && c.subgroups > 0).unwrap().index;
        (false, format!("criterion fails: proper subgroup of index {k} found"))
    } else if !h2_ok {
        let H2Status::Computed(x) = &h2 else { unreachable!() };
        (false, format!("criterion fails: H_2 = {x}"))
    } else if !low_index.complete {
        (false, "inconclusive: low-index search did not finish".to_string())
    } else {
        let h2_note = match &h2 {
            H2Status::Computed(_) => "H_2 trivial",
            H2Status::NotComputed(_) => "H_2 not computed",
        };
        (
            true,
            format!("criterion satisfied at tested scale (H_1 trivial, no proper subgroups of index <= {index_bound}, {h2_note})"),
        )
    };
    GrothendieckEvidence {
        h1,
        index_bound,
        low_index,
        proper_subgroups_found: proper,
        h2,
        satisfied,
        verdict,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PipelineCounts {
    pub x: usize,
    pub r: usize,
    pub generators: usize,
    pub relators: usize,
    /// `2(|X| + 2)`
    pub expected_generators: usize,
    /// `(|X| + 2)^2 + 2 (|X| + 2)(1 + |R| + 4|X|)`
    pub expected_relators: usize,
}

impl PipelineCounts {
    pub fn matches(&self) -> bool {
        self.generators == self.expected_generators && self.relators == self.expected_relators
    }
}

#[derive(Clone, Debug)]
pub struct PipelineResult {
    /// Presentation of `G x G` where `G` is the universal central extension
    /// of the zero-exponent Rips group of the input.
    pub e: Presentation,
    /// Generators of the fibre product over the input, as pairs of words in
    /// the generators of `G`.
    pub p_generators: Vec<PairWord>,
    pub counts: PipelineCounts,
    pub perfect: bool,
    pub rips: RipsSummary,
    pub uce: UceSummary,
    pub evidence: GrothendieckEvidence,
}

/// Rips (zero exponent) -> universal central extension -> direct square.
pub fn pipeline(q: &Presentation, m: usize, evidence_bound: usize, budget: &Budget) -> Result<PipelineResult> {
    if !is_perfect(q) {
        return Err(Error::NotPerfect(abelianization(q).to_string()));
    }
    let r = rips(q, m, true)?;
    let u = uce(&r.gamma)?;
    let e = direct_product(&u.tilde, &u.tilde)?;
    let (a1, a2) = r.normal_gens;
    let nx = q.generator_count();
    let mut p_generators: Vec<PairWord> = (0..nx)
        .map(|x| PairWord::new(Word::generator(x), Word::generator(x)))
        .collect();
    p_generators.push(PairWord::new(Word::generator(a1), Word::identity()));
    p_generators.push(PairWord::new(Word::generator(a2), Word::identity()));
    p_generators.extend(q.relators().iter().map(|w| PairWord::new(w.clone(), Word::identity())));
    let (x, rr) = (nx, q.relator_count());
    let counts = PipelineCounts {
        x,
        r: rr,
        generators: e.generator_count(),
        relators: e.relator_count(),
        expected_generators: 2 * (x + 2),
        expected_relators: (x + 2) * (x + 2) + 2 * (x + 2) * (1 + rr + 4 * x),
    };
    Ok(PipelineResult {
        perfect: is_perfect(&e),
        p_generators,
        counts,
        rips: r.summary(),
        uce: u.summary(),
        evidence: grothendieck_evidence(q, evidence_bound, budget),
        e,
    })
}
