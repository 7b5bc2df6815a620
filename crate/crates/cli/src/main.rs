mod input;
mod verbs;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::Value;

use fpgroups::budget::Budget;

use input::InputDigest;

#[derive(Parser, Debug)]
#[command(name = "fpg", version, about = "Tools for finitely presented groups")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Emit one JSON report on standard output.
    #[arg(long, global = true)]
    json: bool,
    /// Wall-clock limit in seconds for searches and enumerations.
    #[arg(long, global = true, default_value_t = 60.0)]
    time_limit: f64,
    #[arg(long, global = true, default_value_t = 100_000)]
    max_cosets: usize,
    #[arg(long, global = true, default_value_t = 100_000)]
    max_elements: usize,
    /// Seed for the randomized drivers (`dehn --random`).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

impl Global {
    pub fn budget(&self) -> Budget {
        Budget {
            time_limit: Some(Duration::from_secs_f64(self.time_limit.max(0.0))),
            max_cosets: self.max_cosets,
            max_elements: self.max_elements,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Verb {
    /// Parse and normalize a presentation.
    Parse(verbs::ParseArgs),
    /// Abelianization invariants.
    Abelianize(verbs::OneInput),
    /// Metric small cancellation check C'(1/m).
    ScCheck(verbs::ScCheckArgs),
    /// Dehn's algorithm on words or random samples.
    Dehn(verbs::DehnArgs),
    /// Rips construction.
    Rips(verbs::RipsArgs),
    /// Universal central extension of a perfect group.
    Uce(verbs::OutArgs),
    /// Fibre-product generators over a quotient given by extra relators.
    Fibre(verbs::FibreArgs),
    /// Rips, universal central extension and direct square, with evidence.
    Pipeline(verbs::PipelineArgs),
    /// Finite-quotient and homology evidence for a presentation.
    Evidence(verbs::EvidenceArgs),
    /// Todd-Coxeter coset enumeration.
    Tc(verbs::SubgroupArgs),
    /// Reidemeister-Schreier presentation of a finite-index subgroup.
    Rs(verbs::RsArgs),
    /// Subgroup counts up to an index bound.
    LowIndex(verbs::BoundArgs),
    /// Compare low-index counts of two presentations.
    Fingerprint(verbs::FingerprintArgs),
    /// Homomorphisms to a permutation group.
    HomSearch(verbs::HomSearchArgs),
    /// Brute-force fibre product and generation check.
    FibreCheck(verbs::FibreCheckArgs),
    /// Schur multiplier of a finite group.
    Schur(verbs::OneInput),
    /// Coinvariants of a normal subgroup against H_2 of the quotient.
    L0Check(verbs::L0Args),
    /// H_2 rank of an aspherical presentation of a perfect group.
    H2Rank(verbs::H2RankArgs),
    /// Isomorphism test for Z/n semidirect Z pairs.
    BaumslagIso(verbs::BaumslagArgs),
    /// Print a catalog presentation.
    Catalog(verbs::CatalogArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Outcome {
    Ok,
    Negative,
    Exhausted,
    Error,
}

impl Outcome {
    fn code(self) -> u8 {
        match self {
            Outcome::Ok => 0,
            Outcome::Negative => 1,
            Outcome::Exhausted => 2,
            Outcome::Error => 3,
        }
    }
}

/// What a verb hands back to the dispatcher.
pub struct Run {
    pub outcome: Outcome,
    pub inputs: Vec<InputDigest>,
    pub parameters: Value,
    pub payload: Value,
    /// One-line human summary.
    pub summary: String,
}

#[derive(Serialize)]
struct RunReport<'a> {
    verb: &'a str,
    inputs: &'a [InputDigest],
    parameters: &'a Value,
    outcome: Outcome,
    payload: &'a Value,
    wall_time_ms: u128,
}

fn verb_name(v: &Verb) -> &'static str {
    match v {
        Verb::Parse(_) => "parse",
        Verb::Abelianize(_) => "abelianize",
        Verb::ScCheck(_) => "sc-check",
        Verb::Dehn(_) => "dehn",
        Verb::Rips(_) => "rips",
        Verb::Uce(_) => "uce",
        Verb::Fibre(_) => "fibre",
        Verb::Pipeline(_) => "pipeline",
        Verb::Evidence(_) => "evidence",
        Verb::Tc(_) => "tc",
        Verb::Rs(_) => "rs",
        Verb::LowIndex(_) => "low-index",
        Verb::Fingerprint(_) => "fingerprint",
        Verb::HomSearch(_) => "hom-search",
        Verb::FibreCheck(_) => "fibre-check",
        Verb::Schur(_) => "schur",
        Verb::L0Check(_) => "l0-check",
        Verb::H2Rank(_) => "h2-rank",
        Verb::BaumslagIso(_) => "baumslag-iso",
        Verb::Catalog(_) => "catalog",
    }
}

fn error_outcome(e: &anyhow::Error) -> Outcome {
    match e.downcast_ref::<fpgroups::Error>() {
        Some(fpgroups::Error::Exhausted(_)) => Outcome::Exhausted,
        _ => Outcome::Error,
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .target(env_logger::Target::Stderr)
        .init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { Outcome::Error.code() } else { 0 });
        }
    };
    let name = verb_name(&cli.verb);
    let start = Instant::now();
    let result = verbs::dispatch(&cli.verb, &cli.global);
    let elapsed = start.elapsed().as_millis();
    let run = match result {
        Ok(run) => run,
        Err(e) => {
            let outcome = error_outcome(&e);
            eprintln!("fpg {name}: {e:#}");
            Run {
                outcome,
                inputs: Vec::new(),
                parameters: Value::Null,
                payload: serde_json::json!({ "error": format!("{e:#}") }),
                summary: format!("{e:#}"),
            }
        }
    };
    if cli.global.json {
        let report = RunReport {
            verb: name,
            inputs: &run.inputs,
            parameters: &run.parameters,
            outcome: run.outcome,
            payload: &run.payload,
            wall_time_ms: elapsed,
        };
        println!("{}", serde_json::to_string(&report).expect("report serializes"));
    } else {
        println!("{}", run.summary);
    }
    ExitCode::from(run.outcome.code())
}
