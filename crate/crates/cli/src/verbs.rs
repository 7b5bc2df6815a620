use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::Args;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use fpgroups::cancel::{check_metric, DehnSolver};
use fpgroups::construct::{fibre_generators, grothendieck_evidence, pipeline, rips, uce, PairWord};
use fpgroups::coset::{fingerprint_compare, low_index, reidemeister_schreier, todd_coxeter};
use fpgroups::homology::{aspherical_h2_rank, baumslag_iso_test, lemma_l0_check, schur_multiplier, L0Instance};
use fpgroups::permrep::{
    check_generation, epi_count_product_check, fibre_product_finite, hom_search, named_group, verify_hom,
    HomCheck, Perm,
};
use fpgroups::presentation::{catalog, CATALOG_NAMES};
use fpgroups::zlattice::{abelianization, is_perfect};
use fpgroups::{Letter, Presentation, Word};

use crate::input::{self, load, InputDigest};
use crate::{Global, Outcome, Run, Verb};

#[derive(Args, Debug)]
pub struct OneInput {
    /// Presentation file, `-`, or `catalog:NAME[:params]`.
    pub input: String,
}

#[derive(Args, Debug)]
pub struct ParseArgs {
    pub input: String,
    /// Write the canonical form here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct OutArgs {
    pub input: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ScCheckArgs {
    pub input: String,
    #[arg(long, default_value_t = 6)]
    pub m: usize,
}

#[derive(Args, Debug)]
pub struct DehnArgs {
    pub input: String,
    /// Words to decide.
    #[arg(long = "word")]
    pub words: Vec<String>,
    /// Number of random samples of each kind.
    #[arg(long)]
    pub random: Option<usize>,
    /// Maximum number of relator conjugates in a random product.
    #[arg(long, default_value_t = 5)]
    pub conjugates: usize,
    /// Permutation images of the generators (a homomorphism to a finite
    /// group); random words with nontrivial image are tested too.
    #[arg(long = "image", num_args = 1..)]
    pub images: Vec<String>,
}

#[derive(Args, Debug)]
pub struct RipsArgs {
    pub input: String,
    #[arg(long, default_value_t = 6)]
    pub m: usize,
    #[arg(long)]
    pub zero_exponent: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct FibreArgs {
    pub input: String,
    /// Extra relators presenting the quotient on the same generators.
    #[arg(long = "relator")]
    pub relators: Vec<String>,
}

#[derive(Args, Debug)]
pub struct PipelineArgs {
    pub input: String,
    #[arg(long, default_value_t = 6)]
    pub m: usize,
    /// Index bound for the evidence report.
    #[arg(long, default_value_t = 3)]
    pub bound: usize,
    /// Write the presentation of the direct square here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct EvidenceArgs {
    pub input: String,
    #[arg(long, default_value_t = 5)]
    pub bound: usize,
}

#[derive(Args, Debug)]
pub struct SubgroupArgs {
    pub input: String,
    /// Subgroup generators (default: the trivial subgroup).
    #[arg(long = "subgroup")]
    pub subgroup: Vec<String>,
}

#[derive(Args, Debug)]
pub struct RsArgs {
    pub input: String,
    #[arg(long = "subgroup")]
    pub subgroup: Vec<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct BoundArgs {
    pub input: String,
    #[arg(long, default_value_t = 5)]
    pub bound: usize,
}

#[derive(Args, Debug)]
pub struct FingerprintArgs {
    pub left: String,
    pub right: String,
    #[arg(long, default_value_t = 5)]
    pub bound: usize,
}

#[derive(Args, Debug)]
pub struct HomSearchArgs {
    pub input: String,
    /// Named target: C2 .. S5 from the transitive list, or Sn, An, Cn, Dn.
    #[arg(long)]
    pub target: Option<String>,
    /// Target generators in cycle notation.
    #[arg(long = "target-gen")]
    pub target_gens: Vec<String>,
    #[arg(long)]
    pub degree: Option<usize>,
    /// Also count epimorphisms from the direct square.
    #[arg(long)]
    pub epi_check: bool,
    /// Report at most this many homomorphisms in the payload.
    #[arg(long, default_value_t = 50)]
    pub show: usize,
}

#[derive(Args, Debug)]
pub struct FibreCheckArgs {
    pub input: String,
    /// Images of the generators in G; with `--regular`, G acts on its own cosets.
    #[arg(long = "rho", num_args = 1..)]
    pub rho: Vec<String>,
    #[arg(long)]
    pub regular: bool,
    /// Images of the generators in the quotient Q.
    #[arg(long = "eta", num_args = 1..)]
    pub eta: Vec<String>,
    /// Relators of Q beyond those of the input.
    #[arg(long = "relator")]
    pub relators: Vec<String>,
}

#[derive(Args, Debug)]
pub struct L0Args {
    pub ambient: String,
    /// Normal generators of N in the ambient generators.
    #[arg(long = "normal")]
    pub normal: Vec<String>,
    /// Presentation of the quotient.
    #[arg(long)]
    pub quotient: String,
}

#[derive(Args, Debug)]
pub struct H2RankArgs {
    pub input: String,
    /// Assert that the presentation is aspherical.
    #[arg(long)]
    pub aspherical: bool,
}

#[derive(Args, Debug)]
pub struct BaumslagArgs {
    #[arg(long, default_value_t = 25)]
    pub modulus: u64,
    #[arg(long, default_value_t = 6, allow_hyphen_values = true)]
    pub unit: i64,
    #[arg(long, default_value_t = 2, allow_hyphen_values = true)]
    pub k: i64,
}

#[derive(Args, Debug)]
pub struct CatalogArgs {
    /// Entry name; omit to list entries.
    pub name: Option<String>,
    #[arg(allow_hyphen_values = true)]
    pub params: Vec<i64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("payload serializes")
}

fn run(outcome: Outcome, inputs: Vec<InputDigest>, parameters: Value, payload: Value, summary: String) -> Result<Run> {
    Ok(Run {
        outcome,
        inputs,
        parameters,
        payload,
        summary,
    })
}

fn ok_if(b: bool) -> Outcome {
    if b {
        Outcome::Ok
    } else {
        Outcome::Negative
    }
}

fn write_out(out: &Option<PathBuf>, p: &Presentation) -> Result<Value> {
    match out {
        Some(path) => Ok(to_value(&input::write_presentation(path, p)?)),
        None => Ok(Value::Null),
    }
}

fn show_pair(p: &Presentation, w: &PairWord) -> (String, String) {
    (p.display_word(&w.left), p.display_word(&w.right))
}

pub fn dispatch(verb: &Verb, g: &Global) -> Result<Run> {
    let budget = g.budget();
    match verb {
        Verb::Parse(a) => {
            let (p, d) = load(&a.input)?;
            let written = write_out(&a.out, &p)?;
            let payload = json!({
                "generators": p.generator_count(),
                "relators": p.relator_count(),
                "total_length": p.total_length(),
                "diagnostics": to_value(&p.diagnostics()),
                "canonical_sha256": input::digest(p.serialize().as_bytes()),
                "written": written,
            });
            let summary = format!("{}", p.serialize());
            run(Outcome::Ok, vec![d], json!({}), payload, summary)
        }
        Verb::Abelianize(a) => {
            let (p, d) = load(&a.input)?;
            let h1 = abelianization(&p);
            let payload = json!({ "invariants": to_value(&h1), "display": h1.to_string(), "perfect": h1.is_trivial() });
            run(Outcome::Ok, vec![d], json!({}), payload, h1.to_string())
        }
        Verb::ScCheck(a) => {
            let (p, d) = load(&a.input)?;
            let r = check_metric(&p, a.m);
            let summary = match (r.verdict, r.failure()) {
                (true, _) => format!("C'(1/{}) holds (best m {:?})", a.m, r.best_m),
                (false, Some(f)) => format!(
                    "C'(1/{}) fails: relator {} of length {} has a piece of length {}",
                    a.m, f.relator, f.length, f.max_piece
                ),
                (false, None) => format!("C'(1/{}) fails", a.m),
            };
            run(ok_if(r.verdict), vec![d], json!({ "m": a.m }), to_value(&r), summary)
        }
        Verb::Dehn(a) => dehn(a, g),
        Verb::Rips(a) => {
            let (p, d) = load(&a.input)?;
            let r = rips(&p, a.m, a.zero_exponent)?;
            let verdict = check_metric(&r.gamma, a.m).verdict;
            let payload = json!({
                "summary": to_value(&r.summary()),
                "perfect": is_perfect(&r.gamma),
                "abelianization": to_value(&abelianization(&r.gamma)),
                "metric_check": verdict,
                "written": write_out(&a.out, &r.gamma)?,
            });
            let summary = format!(
                "{} generators, {} relators, C'(1/{}) {}",
                r.gamma.generator_count(),
                r.gamma.relator_count(),
                a.m,
                if verdict { "holds" } else { "fails" }
            );
            run(ok_if(verdict), vec![d], json!({ "m": a.m, "zero_exponent": a.zero_exponent }), payload, summary)
        }
        Verb::Uce(a) => {
            let (p, d) = load(&a.input)?;
            let u = uce(&p)?;
            let payload = json!({
                "summary": to_value(&u.summary()),
                "perfect": is_perfect(&u.tilde),
                "written": write_out(&a.out, &u.tilde)?,
            });
            let summary = format!("{} relators", u.tilde.relator_count());
            run(Outcome::Ok, vec![d], json!({}), payload, summary)
        }
        Verb::Fibre(a) => {
            let (p, d) = load(&a.input)?;
            let rels = input::words(&p, &a.relators)?;
            let gens = fibre_generators(&p, &rels)?;
            let shown: Vec<(String, String)> = gens.iter().map(|w| show_pair(&p, w)).collect();
            let summary = shown.iter().map(|(l, r)| format!("({l}, {r})")).collect::<Vec<_>>().join(" ");
            run(Outcome::Ok, vec![d], json!({ "relators": a.relators }), json!({ "generators": shown }), summary)
        }
        Verb::Pipeline(a) => {
            let (p, d) = load(&a.input)?;
            let r = pipeline(&p, a.m, a.bound, &budget)?;
            let pg: Vec<(String, String)> = r.p_generators.iter().map(|w| {
                // pair words are over the first factor's generators
                show_pair(&r.e, w)
            }).collect();
            let payload = json!({
                "counts": to_value(&r.counts),
                "counts_match": r.counts.matches(),
                "perfect": r.perfect,
                "p_generators": pg,
                "rips": to_value(&r.rips),
                "uce": to_value(&r.uce),
                "evidence": to_value(&r.evidence),
                "written": write_out(&a.out, &r.e)?,
            });
            let summary = format!(
                "E: {} generators, {} relators (expected {}, {}); perfect: {}; {}",
                r.counts.generators,
                r.counts.relators,
                r.counts.expected_generators,
                r.counts.expected_relators,
                r.perfect,
                r.evidence.verdict
            );
            run(ok_if(r.counts.matches() && r.perfect), vec![d], json!({ "m": a.m, "bound": a.bound }), payload, summary)
        }
        Verb::Evidence(a) => {
            let (p, d) = load(&a.input)?;
            let e = grothendieck_evidence(&p, a.bound, &budget);
            let outcome = if e.satisfied {
                Outcome::Ok
            } else if e.verdict.starts_with("inconclusive") {
                Outcome::Exhausted
            } else {
                Outcome::Negative
            };
            let summary = e.verdict.clone();
            run(outcome, vec![d], json!({ "bound": a.bound }), to_value(&e), summary)
        }
        Verb::Tc(a) => {
            let (p, d) = load(&a.input)?;
            let h = input::words(&p, &a.subgroup)?;
            let t = todd_coxeter(&p, &h, &budget)?;
            let payload = json!({ "index": t.index(), "table": to_value(&t.to_json(&p)) });
            run(Outcome::Ok, vec![d], json!({ "subgroup": a.subgroup }), payload, format!("index {}", t.index()))
        }
        Verb::Rs(a) => {
            let (p, d) = load(&a.input)?;
            let h = input::words(&p, &a.subgroup)?;
            let t = todd_coxeter(&p, &h, &budget)?;
            let s = reidemeister_schreier(&p, &t)?;
            let payload = json!({
                "index": t.index(),
                "generators": s.generator_count(),
                "relators": s.relator_count(),
                "presentation": s.serialize(),
                "written": write_out(&a.out, &s)?,
            });
            let summary = s.serialize();
            run(Outcome::Ok, vec![d], json!({ "subgroup": a.subgroup }), payload, summary)
        }
        Verb::LowIndex(a) => {
            let (p, d) = load(&a.input)?;
            let f = low_index(&p, a.bound, &budget);
            let outcome = if f.complete { Outcome::Ok } else { Outcome::Exhausted };
            let summary = format!("subgroups by index: {:?}", f.totals());
            run(outcome, vec![d], json!({ "bound": a.bound }), to_value(&f), summary)
        }
        Verb::Fingerprint(a) => {
            let (p, d1) = load(&a.left)?;
            let (q, d2) = load(&a.right)?;
            let c = fingerprint_compare(&p, &q, a.bound, &budget);
            let outcome = if c.first_discrepancy.is_some() {
                Outcome::Negative
            } else if !c.complete {
                Outcome::Exhausted
            } else {
                Outcome::Ok
            };
            let summary = match c.first_discrepancy {
                Some(k) => format!("fingerprints differ at index {k}"),
                None => format!("{:?} and {:?}", c.left.totals(), c.right.totals()),
            };
            run(outcome, vec![d1, d2], json!({ "bound": a.bound }), to_value(&c), summary)
        }
        Verb::HomSearch(a) => {
            let (p, d) = load(&a.input)?;
            let target = match (&a.target, a.target_gens.is_empty()) {
                (Some(name), true) => named_group(name)?,
                (None, false) => input::group(&a.target_gens, a.degree)?,
                _ => bail!("give exactly one of --target and --target-gen"),
            };
            let r = hom_search(&p, &target, &budget)?;
            let mut payload = json!({
                "target_order": r.target_order,
                "homomorphisms": r.hom_count(),
                "epimorphisms": r.epi_count(),
                "only_trivial": r.only_trivial(),
                "complete": r.complete,
                "found": to_value(&r.summary().into_iter().take(a.show).collect::<Vec<_>>()),
            });
            let mut summary = format!("{} homomorphisms, {} onto", r.hom_count(), r.epi_count());
            let mut outcome = if r.complete { Outcome::Ok } else { Outcome::Exhausted };
            if a.epi_check {
                let e = epi_count_product_check(&p, &target, &budget)?;
                summary.push_str(&format!("; e1 = {}, e2 = {}", e.e1, e.e2));
                if e.inequality == Some(false) {
                    outcome = Outcome::Negative;
                }
                if !e.complete {
                    outcome = Outcome::Exhausted;
                }
                payload["epi_check"] = to_value(&e);
            }
            run(outcome, vec![d], json!({ "target": a.target, "target_gens": a.target_gens }), payload, summary)
        }
        Verb::FibreCheck(a) => fibre_check(a, &budget),
        Verb::Schur(a) => {
            let (p, d) = load(&a.input)?;
            let r = schur_multiplier(&p, &budget)?;
            let summary = format!("H_2 = {} (group order {})", r.multiplier, r.group_order);
            run(Outcome::Ok, vec![d], json!({}), to_value(&r), summary)
        }
        Verb::L0Check(a) => {
            let (p, d1) = load(&a.ambient)?;
            let (q, d2) = load(&a.quotient)?;
            let inst = L0Instance {
                normal_generators: input::words(&p, &a.normal)?,
                ambient: p,
                quotient: q,
            };
            let r = lemma_l0_check(&inst, &budget)?;
            let summary = match (&r.agree, &r.reason) {
                (Some(true), _) => format!(
                    "coinvariants {} = H_2(Q) {}",
                    r.coinvariants.as_ref().unwrap(),
                    r.quotient_multiplier.as_ref().unwrap()
                ),
                (Some(false), _) => format!(
                    "coinvariants {} differ from H_2(Q) {}",
                    r.coinvariants.as_ref().unwrap(),
                    r.quotient_multiplier.as_ref().unwrap()
                ),
                (None, Some(reason)) => reason.clone(),
                (None, None) => "no verdict".into(),
            };
            run(ok_if(r.agree == Some(true)), vec![d1, d2], json!({ "normal": a.normal }), to_value(&r), summary)
        }
        Verb::H2Rank(a) => {
            let (p, d) = load(&a.input)?;
            let rank = aspherical_h2_rank(&p, a.aspherical)?;
            run(Outcome::Ok, vec![d], json!({ "aspherical": a.aspherical }), json!({ "rank": rank }), format!("rank {rank}"))
        }
        Verb::BaumslagIso(a) => {
            let v = baumslag_iso_test(a.modulus, a.unit, a.k)?;
            let summary = format!(
                "{}^{} = {} mod {}; {}",
                v.unit,
                v.k,
                v.twisted,
                v.modulus,
                if v.isomorphic { "isomorphic" } else { "not isomorphic" }
            );
            run(
                ok_if(v.isomorphic),
                vec![],
                json!({ "modulus": a.modulus, "unit": a.unit, "k": a.k }),
                to_value(&v),
                summary,
            )
        }
        Verb::Catalog(a) => match &a.name {
            None => run(Outcome::Ok, vec![], json!({}), json!({ "entries": CATALOG_NAMES }), CATALOG_NAMES.join("\n")),
            Some(name) => {
                let e = catalog(name, &a.params)?;
                let payload = json!({
                    "entry": to_value(&e),
                    "written": write_out(&a.out, &e.presentation)?,
                });
                run(Outcome::Ok, vec![], json!({ "name": name, "params": a.params }), payload, e.presentation.serialize())
            }
        },
    }
}

fn random_word(rng: &mut ChaCha8Rng, generators: usize, len: usize) -> Word {
    let mut w = Word::identity();
    while w.len() < len {
        let l = Letter::new(rng.gen_range(0..generators), rng.gen_bool(0.5));
        w.push_reduced(l);
    }
    w
}

fn dehn(a: &DehnArgs, g: &Global) -> Result<Run> {
    let (p, d) = load(&a.input)?;
    let solver = DehnSolver::new(&p)?;
    let mut decided = Vec::new();
    let mut all_ok = true;
    for text in &a.words {
        let w = p.word(text).with_context(|| format!("bad word `{text}`"))?;
        let (trivial, trace) = solver.is_trivial(&w);
        if !trace.verify(&p) {
            bail!("Dehn trace for `{text}` failed to replay");
        }
        all_ok &= trivial;
        decided.push(json!({ "word": text, "trivial": trivial, "steps": trace.steps.len(), "result": p.display_word(&trace.result) }));
    }
    let mut payload = json!({ "words": decided });
    let mut summary = format!("{} word(s) decided", a.words.len());
    if let Some(n) = a.random {
        let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
        let k = p.generator_count();
        let rels = p.relators();
        if rels.is_empty() {
            bail!("random products need at least one relator");
        }
        let mut wrong_trivial = 0usize;
        for _ in 0..n {
            let factors = rng.gen_range(1..=a.conjugates.max(1));
            let mut w = Word::identity();
            for _ in 0..factors {
                let r = rels.choose(&mut rng).unwrap();
                let r = if rng.gen_bool(0.5) { r.inverse() } else { r.clone() };
                let len = rng.gen_range(0..8);
                let c = random_word(&mut rng, k, len);
                w = w.mul(&r.conjugate_by(&c));
            }
            let (t, trace) = solver.is_trivial(&w);
            if !t || !trace.verify(&p) {
                wrong_trivial += 1;
            }
        }
        let mut wrong_nontrivial = 0usize;
        let mut sampled = 0usize;
        if !a.images.is_empty() {
            let images = input::perms(&a.images, None)?;
            let hom = match verify_hom(&p, &images)? {
                HomCheck::Accepted(h) => h,
                HomCheck::Rejected { word, .. } => bail!("the images do not define a homomorphism (relator {word})"),
            };
            let mut attempts = 0usize;
            while sampled < n {
                attempts += 1;
                if attempts > 1000 * n.max(1) {
                    bail!("could not sample words with nontrivial image");
                }
                let len = rng.gen_range(1..=40);
                let w = random_word(&mut rng, k, len);
                if hom.apply(&w).is_identity() {
                    continue;
                }
                sampled += 1;
                if solver.is_trivial(&w).0 {
                    wrong_nontrivial += 1;
                }
            }
        }
        all_ok &= wrong_trivial == 0 && wrong_nontrivial == 0;
        payload["random"] = json!({
            "seed": g.seed,
            "products": n,
            "products_not_reduced_to_identity": wrong_trivial,
            "nontrivial_samples": sampled,
            "nontrivial_reported_trivial": wrong_nontrivial,
        });
        summary = format!(
            "{n} relator products: {wrong_trivial} errors; {sampled} words with nontrivial image: {wrong_nontrivial} errors"
        );
    }
    run(
        ok_if(all_ok),
        vec![d],
        json!({ "random": a.random, "conjugates": a.conjugates, "images": a.images }),
        payload,
        summary,
    )
}

fn fibre_check(a: &FibreCheckArgs, budget: &fpgroups::budget::Budget) -> Result<Run> {
    let (p, d) = load(&a.input)?;
    let rho_images: Vec<Perm> = if a.regular {
        let t = todd_coxeter(&p, &[], budget)?;
        (0..p.generator_count())
            .map(|g| Perm::from_images(t.permutation(g).into_iter().map(|x| x as u32).collect()))
            .collect::<fpgroups::Result<_>>()?
    } else {
        input::perms(&a.rho, None)?
    };
    let accept = |images: &[Perm], what: &str| -> Result<_> {
        match verify_hom(&p, images)? {
            HomCheck::Accepted(h) => Ok(h),
            HomCheck::Rejected { word, .. } => bail!("{what} images fail on relator {word}"),
        }
    };
    let rho = accept(&rho_images, "rho")?;
    let eta = accept(&input::perms(&a.eta, None)?, "eta")?;
    let ffp = fibre_product_finite(&rho, &eta, budget)?;
    let rels = input::words(&p, &a.relators)?;
    let gens = fibre_generators(&p, &rels)?;
    let generated = check_generation(&ffp, &gens, &rho)?;
    let s = ffp.summary();
    let payload = json!({
        "fibre": to_value(&s),
        "size_formula_holds": s.fibre_order == s.kernel_order * s.g_order,
        "generators": gens.iter().map(|w| show_pair(&p, w)).collect::<Vec<_>>(),
        "generated": generated,
    });
    let summary = format!(
        "|G| = {}, |ker| = {}, |P| = {}; generators {} P",
        s.g_order,
        s.kernel_order,
        s.fibre_order,
        if generated { "generate" } else { "do not generate" }
    );
    run(ok_if(generated), vec![d], json!({ "regular": a.regular, "relators": a.relators }), payload, summary)
}
