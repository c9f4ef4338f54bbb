//! `dmat`: check, build and search matroids and Δ-matroids from the shell.
//!
//! Exit status: 0 when the property holds or the construction succeeds,
//! 1 when it fails (the witness is in the payload), 2 for bad input or usage.

use std::fs;
use std::io::IsTerminal;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use dmat::delta::{construct_sandwich, is_pairable};
use dmat::graph::{check_rigidity, corpus, verify_cone_quotient};
use dmat::io::{family_labels, read_graph, DeltaFile, MatroidFile, PairabilityFile, ViolationFile};
use dmat::parallel::workers_from_env;
use dmat::search::{
    enumerate_matroids, find_unpairable_pair, study_minors, study_restrictions, study_uniqueness,
    verify_property_by_id, SearchReport,
};
use dmat::{DeltaMatroid, Error, GroundSet, Matroid};

#[derive(Parser)]
#[command(name = "dmat", version, about = "Matroid and Δ-matroid workbench")]
struct Cli {
    /// Output format; defaults to json when stdout is not a terminal.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Copy, Clone, ValueEnum)]
enum Kind {
    #[value(alias = "matroids")]
    Matroid,
    Delta,
}

#[derive(Copy, Clone, ValueEnum)]
enum Target {
    /// Matroid pair meeting the basis conditions that no Δ-matroid realizes.
    Unpairable,
    /// Deletion and contraction of every Δ-matroid by every admissible set.
    Minors,
    /// Both readings of restriction to an upper-matroid circuit.
    Restrictions,
    /// Whether each pair has unique minimal and maximal realizations.
    Uniqueness,
}

#[derive(Subcommand)]
enum Command {
    /// Certify a basis family (matroid) or feasible family (delta).
    Check { kind: Kind, file: PathBuf },
    /// Print the upper and lower matroids of a Δ-matroid file.
    UpperLower { file: PathBuf },
    /// Test whether two matroids are the upper and lower matroids of a Δ-matroid.
    Pair {
        upper: PathBuf,
        lower: PathBuf,
        /// Build the sandwich Δ-matroid when the pair is pairable.
        #[arg(long)]
        construct: bool,
        /// Write the constructed Δ-matroid file here instead of into the payload.
        #[arg(long, requires = "construct")]
        output: Option<PathBuf>,
    },
    /// Check the cone identities of a graph file, or of the built-in corpus.
    ConeCheck {
        #[arg(required_unless_present = "corpus", conflicts_with = "corpus")]
        file: Option<PathBuf>,
        /// Run the rigidity and cone checks over the built-in graphs.
        #[arg(long)]
        corpus: bool,
    },
    /// Check a registered theorem over every object on n elements.
    Verify {
        property: String,
        #[arg(long)]
        n: usize,
    },
    /// Run a search or study over every object on n elements.
    Search {
        target: Target,
        #[arg(long)]
        n: usize,
    },
    /// List every matroid or Δ-matroid on n elements in canonical order.
    Enumerate {
        kind: Kind,
        #[arg(long)]
        n: usize,
    },
}

/// Result of a subcommand: verdict plus payload.
struct Outcome {
    holds: bool,
    payload: Value,
    text: String,
}

impl Outcome {
    fn new(holds: bool, payload: Value, text: impl Into<String>) -> Self {
        Self {
            holds,
            payload,
            text: text.into(),
        }
    }
}

fn read_file(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path)
        .map_err(|e| Error::Precondition(format!("cannot read {}: {e}", path.display())))
}

fn load_matroid(path: &Path) -> Result<Matroid, Error> {
    serde_json::from_str::<MatroidFile>(&read_file(path)?)?.to_matroid()
}

/// Splits certification failures (verdict 1) from every other error (2).
fn certify<T>(r: Result<T, Error>, ground: &GroundSet) -> Result<Result<T, Outcome>, Error> {
    match r {
        Ok(v) => Ok(Ok(v)),
        Err(Error::Violation { violation, detail }) => Ok(Err(Outcome::new(
            false,
            json!({ "valid": false, "violation": ViolationFile::new(&violation, ground) }),
            detail,
        ))),
        Err(e) => Err(e),
    }
}

fn matroid_json(m: &Matroid) -> Value {
    serde_json::to_value(MatroidFile::from_matroid(m)).expect("plain data serializes")
}

fn describe_matroid(m: &Matroid) -> String {
    format!("rank {}, bases {}", m.rank(), m.bases().render())
}

fn cmd_check(kind: Kind, file: &Path) -> Result<Outcome, Error> {
    let text = read_file(file)?;
    Ok(match kind {
        Kind::Matroid => {
            let f: MatroidFile = serde_json::from_str(&text)?;
            let fam = f.family()?;
            match certify(Matroid::from_bases(fam.clone()), fam.ground())? {
                Ok(m) => Outcome::new(
                    true,
                    json!({ "valid": true, "matroid": matroid_json(&m) }),
                    format!("valid matroid: {}", describe_matroid(&m)),
                ),
                Err(o) => o,
            }
        }
        Kind::Delta => {
            let f: DeltaFile = serde_json::from_str(&text)?;
            let fam = f.family()?;
            match certify(DeltaMatroid::from_feasibles(fam.clone()), fam.ground())? {
                Ok(d) => Outcome::new(
                    true,
                    json!({ "valid": true, "delta": DeltaFile::from_delta(&d) }),
                    format!("valid Δ-matroid with {} feasible sets", d.feasibles().len()),
                ),
                Err(o) => o,
            }
        }
    })
}

fn cmd_upper_lower(file: &Path) -> Result<Outcome, Error> {
    let f: DeltaFile = serde_json::from_str(&read_file(file)?)?;
    let fam = f.family()?;
    Ok(
        match certify(DeltaMatroid::from_feasibles(fam.clone()), fam.ground())? {
            Ok(d) => Outcome::new(
                true,
                json!({ "upper": matroid_json(d.upper()), "lower": matroid_json(d.lower()) }),
                format!(
                    "upper: {}\nlower: {}",
                    describe_matroid(d.upper()),
                    describe_matroid(d.lower())
                ),
            ),
            Err(o) => o,
        },
    )
}

fn cmd_pair(
    upper: &Path,
    lower: &Path,
    construct: bool,
    output: Option<&Path>,
) -> Result<Outcome, Error> {
    let mu = load_matroid(upper)?;
    let ml = load_matroid(lower)?;
    let report = is_pairable(&mu, &ml)?;
    let mut payload = json!({ "pairability": PairabilityFile::new(&report, mu.ground()) });
    let mut text = match report.offending_circuit {
        None => "pairable".to_string(),
        Some(c) => format!(
            "not pairable: upper circuit {} is not a union of lower circuits",
            mu.ground().render(c)
        ),
    };
    let mut holds = report.pairable;
    if construct && report.pairable {
        let fam = construct_sandwich(&mu, &ml)?;
        match DeltaMatroid::from_feasibles(fam) {
            Ok(d) if d.upper() == &mu && d.lower() == &ml => {
                let file = DeltaFile::from_delta(&d);
                if let Some(path) = output {
                    let body = serde_json::to_string(&file)?;
                    fs::write(path, body).map_err(|e| {
                        Error::Precondition(format!("cannot write {}: {e}", path.display()))
                    })?;
                    text.push_str(&format!(
                        "\nsandwich Δ-matroid written to {}",
                        path.display()
                    ));
                } else {
                    payload["delta"] = serde_json::to_value(file)?;
                    text.push_str(&format!("\nsandwich Δ-matroid: {}", d.feasibles().render()));
                }
            }
            Ok(_) => {
                holds = false;
                payload["construction_error"] = json!("sandwich has different extremal matroids");
            }
            Err(e) => {
                holds = false;
                payload["construction_error"] = json!(e.to_string());
            }
        }
    }
    Ok(Outcome::new(holds, payload, text))
}

fn cmd_cone_check(file: Option<&Path>, use_corpus: bool) -> Result<Outcome, Error> {
    if use_corpus {
        let mut rows = Vec::new();
        let mut lines = Vec::new();
        let mut all = true;
        for (name, g) in corpus() {
            let r = check_rigidity(&g)?;
            all &= r.holds();
            lines.push(format!(
                "{name}: {}",
                if r.holds() { "ok" } else { "FAILS" }
            ));
            rows.push(json!({ "graph": name, "report": r, "holds": r.holds() }));
        }
        return Ok(Outcome::new(
            all,
            json!({ "holds": all, "graphs": rows }),
            lines.join("\n"),
        ));
    }
    let path = file.expect("clap requires a file without --corpus");
    let g = read_graph(&read_file(path)?)?;
    let r = verify_cone_quotient(&g)?;
    let text = format!(
        "deletion identity: {}\ncontraction identity: {}",
        r.deletion_identity, r.contraction_identity
    );
    Ok(Outcome::new(
        r.holds(),
        json!({ "holds": r.holds(), "report": r }),
        text,
    ))
}

fn report_outcome(r: SearchReport) -> Outcome {
    let mut text = format!(
        "{}: {} over {} objects in {:.2?}, {} witness(es)",
        r.property_id,
        if r.holds { "holds" } else { "fails" },
        r.universe_size,
        r.elapsed,
        r.witnesses.len()
    );
    if let Some(w) = r.witnesses.first() {
        text.push('\n');
        text.push_str(&serde_json::to_string_pretty(w).expect("plain data serializes"));
    }
    Outcome::new(
        r.holds,
        serde_json::to_value(&r).expect("plain data serializes"),
        text,
    )
}

fn cmd_search(target: Target, n: usize, workers: usize) -> Result<Outcome, Error> {
    Ok(match target {
        Target::Unpairable => report_outcome(find_unpairable_pair(n, workers)?),
        Target::Minors => {
            let s = study_minors(n, workers)?;
            let text = format!(
                "{} Δ-matroids: {}/{} deletions and {}/{} contractions certify",
                s.delta_matroids,
                s.deletions_certified,
                s.deletions,
                s.contractions_certified,
                s.contractions
            );
            Outcome::new(true, serde_json::to_value(&s)?, text)
        }
        Target::Restrictions => {
            let s = study_restrictions(n, workers)?;
            let text = format!(
                "{} upper circuits; subfamily: {}/{} certify, {} with circuit upper; \
                 delete-complement: {}/{} certify, {} with circuit upper",
                s.upper_circuits,
                s.subfamily.certified,
                s.subfamily.applicable,
                s.subfamily.upper_is_circuit,
                s.delete_complement.certified,
                s.delete_complement.applicable,
                s.delete_complement.upper_is_circuit
            );
            Outcome::new(true, serde_json::to_value(&s)?, text)
        }
        Target::Uniqueness => {
            let s = study_uniqueness(n, workers)?;
            let text = format!(
                "{} pairable pairs, {} realizations; unique maximal {} (sandwich {}), unique minimal {}",
                s.pairable_pairs,
                s.realizations,
                s.unique_maximal,
                s.maximal_is_sandwich,
                s.unique_minimal
            );
            Outcome::new(true, serde_json::to_value(&s)?, text)
        }
    })
}

fn cmd_enumerate(kind: Kind, n: usize, workers: usize) -> Result<Outcome, Error> {
    let ground = GroundSet::letters(n)?;
    let families: Vec<Vec<Vec<String>>> = match kind {
        Kind::Matroid => enumerate_matroids(&ground, workers)?
            .iter()
            .map(|m| family_labels(m.bases()))
            .collect(),
        Kind::Delta => dmat::delta::enumerate_delta_matroids(&ground, workers)?
            .iter()
            .map(|d| family_labels(d.feasibles()))
            .collect(),
    };
    let text = format!("{} families on {n} elements", families.len());
    Ok(Outcome::new(
        true,
        json!({ "ground": ground.labels(), "count": families.len(), "families": families }),
        text,
    ))
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let workers = workers_from_env();
    match &cli.command {
        Command::Check { kind, file } => cmd_check(*kind, file),
        Command::UpperLower { file } => cmd_upper_lower(file),
        Command::Pair {
            upper,
            lower,
            construct,
            output,
        } => cmd_pair(upper, lower, *construct, output.as_deref()),
        Command::ConeCheck { file, corpus } => cmd_cone_check(file.as_deref(), *corpus),
        Command::Verify { property, n } => {
            verify_property_by_id(property, *n, workers).map(report_outcome)
        }
        Command::Search { target, n } => cmd_search(*target, *n, workers),
        Command::Enumerate { kind, n } => cmd_enumerate(*kind, *n, workers),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format.unwrap_or(if std::io::stdout().is_terminal() {
        Format::Text
    } else {
        Format::Json
    });
    match run(&cli) {
        Ok(outcome) => {
            match format {
                Format::Json => println!("{}", outcome.payload),
                Format::Text => println!("{}", outcome.text),
            }
            ExitCode::from(if outcome.holds { 0 } else { 1 })
        }
        Err(e) => {
            match format {
                Format::Json => println!("{}", json!({ "error": e.to_string() })),
                Format::Text => eprintln!("error: {e}"),
            }
            ExitCode::from(2)
        }
    }
}
