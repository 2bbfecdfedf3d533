//! Command-line front end: ingest a corpus, dispatch to the engine, print
//! human-readable or canonical-JSON reports.
//!
//! Exit codes are a stable contract: 0 when everything passes, 1 when an
//! axiom or comparison fails, 2 on input errors and refused computations.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{Map, Number, Value};

use steenrod::axioms::{self, AxiomReport};
use steenrod::corpus::{self, CorpusFile, CorpusObject};
use steenrod::error::CorpusError;
use steenrod::exactness;
use steenrod::homology::{homology, homology_with_coefficients, GradedModule};
use steenrod::matrix::IntMatrix;
use steenrod::module::FgModule;
use steenrod::ring::RingSpec;
use steenrod::ses::LongExactSequence;

#[derive(Parser)]
#[command(
    name = "steenrod",
    version,
    about = "Exact homology computations and Eilenberg-Steenrod axiom verification over combinatorial spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Homology groups of a named corpus item
    Homology {
        /// Item name inside the corpus file
        item: String,
        #[arg(long)]
        corpus: PathBuf,
        /// Coefficient ring: Z, Q, Fp:<p> or Zm:<m>
        #[arg(long, default_value = "Z")]
        ring: String,
        /// Coefficient module over Z, e.g. `Z/6` or `Z^2+Z/2` (requires --ring Z)
        #[arg(long)]
        coefficients: Option<String>,
        #[arg(long, value_enum, default_value_t = Emit::Text)]
        emit: Emit,
    },
    /// Certified long exact sequence of a pair
    PairLes {
        pair: String,
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long, default_value = "Z")]
        ring: String,
        #[arg(long, value_enum, default_value_t = Emit::Text)]
        emit: Emit,
    },
    /// Certified Mayer-Vietoris sequence of a cover
    MayerVietoris {
        cover: String,
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long, default_value = "Z")]
        ring: String,
        #[arg(long, value_enum, default_value_t = Emit::Text)]
        emit: Emit,
    },
    /// Excision comparison report for a cover
    Excision {
        cover: String,
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long, default_value = "Z")]
        ring: String,
        #[arg(long, value_enum, default_value_t = Emit::Text)]
        emit: Emit,
    },
    /// The cellular complex of a good filtration
    Cellular {
        filtration: String,
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long, default_value = "Z")]
        ring: String,
        /// Also certify cellular homology against the direct computation
        #[arg(long)]
        compare: bool,
        #[arg(long, value_enum, default_value_t = Emit::Text)]
        emit: Emit,
    },
    /// Degree of a map between homology spheres
    Degree {
        map: String,
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long, value_enum, default_value_t = Emit::Text)]
        emit: Emit,
    },
    /// Run the whole axiom battery over a corpus file
    VerifyAxioms {
        corpus: PathBuf,
        #[arg(long, default_value = "Z")]
        ring: String,
        #[arg(long, value_enum, default_value_t = Emit::Text)]
        emit: Emit,
    },
}

/// Input errors and refusals exit with 2; comparison failures with 1.
enum Failure {
    Input(String),
    Refusal(String),
}

impl From<CorpusError> for Failure {
    fn from(err: CorpusError) -> Self {
        Failure::Input(err.to_string())
    }
}

impl From<steenrod::error::RingError> for Failure {
    fn from(err: steenrod::error::RingError) -> Self {
        Failure::Input(err.to_string())
    }
}

fn main() -> ExitCode {
    // die quietly when the consumer of a pipe goes away
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(Failure::Input(message)) | Err(Failure::Refusal(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    match cli.command {
        Command::Homology {
            item,
            corpus,
            ring,
            coefficients,
            emit,
        } => {
            let corpus = corpus::parse_corpus(&corpus)?;
            let ring = RingSpec::parse(&ring)?;
            cmd_homology(&corpus, &item, ring, coefficients.as_deref(), emit)
        }
        Command::PairLes {
            pair,
            corpus,
            ring,
            emit,
        } => {
            let corpus = corpus::parse_corpus(&corpus)?;
            let ring = RingSpec::parse(&ring)?;
            let object = corpus.find(&pair)?;
            let CorpusObject::Pair(pair_object) = object else {
                return Err(kind_mismatch(&pair, "pair", object));
            };
            let les = exactness::pair_les(pair_object, ring)
                .map_err(|e| Failure::Refusal(e.to_string()))?;
            emit_sequence(&pair, ring, &les, emit);
            Ok(ExitCode::SUCCESS)
        }
        Command::MayerVietoris {
            cover,
            corpus,
            ring,
            emit,
        } => {
            let corpus = corpus::parse_corpus(&corpus)?;
            let ring = RingSpec::parse(&ring)?;
            let object = corpus.find(&cover)?;
            let CorpusObject::Cover(square) = object else {
                return Err(kind_mismatch(&cover, "cover", object));
            };
            let les = exactness::mayer_vietoris(square, ring)
                .map_err(|e| Failure::Refusal(e.to_string()))?;
            emit_sequence(&cover, ring, &les, emit);
            Ok(ExitCode::SUCCESS)
        }
        Command::Excision {
            cover,
            corpus,
            ring,
            emit,
        } => {
            let corpus = corpus::parse_corpus(&corpus)?;
            let ring = RingSpec::parse(&ring)?;
            let object = corpus.find(&cover)?;
            let CorpusObject::Cover(square) = object else {
                return Err(kind_mismatch(&cover, "cover", object));
            };
            let report = exactness::excision_compare(square, ring)
                .map_err(|e| Failure::Refusal(e.to_string()))?;
            match emit {
                Emit::Json => {
                    let degrees: Vec<Value> = report
                        .degrees
                        .iter()
                        .map(|d| {
                            json_object(vec![
                                ("degree", Value::from(d.degree)),
                                ("from", module_json(&d.from)),
                                ("isomorphism", Value::from(d.isomorphism)),
                                ("to", module_json(&d.to)),
                            ])
                        })
                        .collect();
                    let out = json_object(vec![
                        ("all_isomorphisms", Value::from(report.all_isomorphisms())),
                        ("degrees", Value::from(degrees)),
                        ("item", Value::from(cover.clone())),
                        ("ring", Value::from(ring.to_string())),
                    ]);
                    println!("{}", canonical(&out));
                }
                Emit::Text => {
                    println!("excision comparison for `{cover}` over {ring}");
                    for d in &report.degrees {
                        let verdict = if d.isomorphism { "iso" } else { "NOT iso" };
                        println!("  H_{}: {} -> {}  [{verdict}]", d.degree, d.from, d.to);
                    }
                }
            }
            Ok(exit_by(report.all_isomorphisms()))
        }
        Command::Cellular {
            filtration,
            corpus,
            ring,
            compare,
            emit,
        } => {
            let corpus = corpus::parse_corpus(&corpus)?;
            let ring = RingSpec::parse(&ring)?;
            let object = corpus.find(&filtration)?;
            let CorpusObject::Filt(filt) = object else {
                return Err(kind_mismatch(&filtration, "filtration", object));
            };
            let cellular = axioms::cellular_complex(filt, ring)
                .map_err(|e| Failure::Refusal(e.to_string()))?;
            let h = homology(&cellular);
            let comparison = if compare {
                Some(
                    axioms::compare_cellular_vs_direct(filt, ring)
                        .map_err(|e| Failure::Refusal(e.to_string()))?,
                )
            } else {
                None
            };
            let comparison_passed = comparison.as_ref().is_none_or(|c| c.passed());
            match emit {
                Emit::Json => {
                    let diffs: Vec<Value> = (1..cellular.len())
                        .map(|n| matrix_json(&cellular.differential(n)))
                        .collect();
                    let ranks: Vec<Value> =
                        cellular.ranks().iter().map(|&r| Value::from(r)).collect();
                    let mut fields = vec![
                        ("differentials", Value::from(diffs)),
                        ("homology", graded_json(&h, cellular.len())),
                        ("item", Value::from(filtration.clone())),
                        ("ranks", Value::from(ranks)),
                        ("ring", Value::from(ring.to_string())),
                    ];
                    if let Some(c) = &comparison {
                        fields.push(("comparison_passed", Value::from(c.passed())));
                    }
                    println!("{}", canonical(&json_object(fields)));
                }
                Emit::Text => {
                    println!("cellular complex of `{filtration}` over {ring}");
                    println!("  ranks: {:?}", cellular.ranks());
                    for n in 1..cellular.len() {
                        println!("  d_{n} = {:?}", cellular.differential(n));
                    }
                    for n in 0..cellular.len() {
                        println!("  H_{n} = {}", h.module(n));
                    }
                    if let Some(c) = &comparison {
                        println!(
                            "  comparison against the direct computation: {}",
                            if c.passed() { "matches" } else { "MISMATCH" }
                        );
                    }
                }
            }
            Ok(exit_by(comparison_passed))
        }
        Command::Degree { map, corpus, emit } => {
            let corpus = corpus::parse_corpus(&corpus)?;
            let object = corpus.find(&map)?;
            let CorpusObject::Map(simplicial) = object else {
                return Err(kind_mismatch(&map, "map", object));
            };
            let d = axioms::degree(simplicial).map_err(|e| Failure::Refusal(e.to_string()))?;
            match emit {
                Emit::Json => {
                    let out = json_object(vec![
                        ("degree", Value::Number(big_number(&d))),
                        ("item", Value::from(map.clone())),
                    ]);
                    println!("{}", canonical(&out));
                }
                Emit::Text => println!("{d}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::VerifyAxioms { corpus, ring, emit } => {
            let corpus = corpus::parse_corpus(&corpus)?;
            let ring = RingSpec::parse(&ring)?;
            let report = axioms::full_report(&corpus, ring);
            emit_axiom_report(&report, emit);
            Ok(exit_by(report.passed))
        }
    }
}

fn cmd_homology(
    corpus: &CorpusFile,
    item: &str,
    ring: RingSpec,
    coefficients: Option<&str>,
    emit: Emit,
) -> Result<ExitCode, Failure> {
    let object = corpus.find(item)?;
    let chains = match object {
        CorpusObject::Space(x) => x.chain_complex(ring),
        CorpusObject::Cells(cw) => cw.chain_complex(ring),
        CorpusObject::Poset(p) => p.order_complex().chain_complex(ring),
        CorpusObject::Pair(p) => p.quotient_chain_complex(ring),
        other => return Err(kind_mismatch(item, "space-like item", other)),
    };
    let top = chains.len().max(1);
    let (h, coefficient_display) = match coefficients {
        None => (homology(&chains), None),
        Some(spec) => {
            if ring != RingSpec::Integers {
                return Err(Failure::Input(
                    "--coefficients describes a module over Z; use --ring Z".into(),
                ));
            }
            let module = corpus::parse_module_spec(spec)?;
            let h = homology_with_coefficients(&chains, &module)
                .map_err(|e| Failure::Refusal(e.to_string()))?;
            (h, Some(module.to_string()))
        }
    };
    match emit {
        Emit::Json => {
            let mut fields = vec![
                ("groups", graded_json(&h, top)),
                ("item", Value::from(item.to_string())),
                ("ring", Value::from(ring.to_string())),
            ];
            if let Some(c) = &coefficient_display {
                fields.push(("coefficients", Value::from(c.clone())));
            }
            println!("{}", canonical(&json_object(fields)));
        }
        Emit::Text => {
            match &coefficient_display {
                Some(c) => println!("homology of `{item}` with coefficients {c}"),
                None => println!("homology of `{item}` over {ring}"),
            }
            for n in 0..top {
                println!("  H_{n} = {}", h.module(n));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn emit_sequence(item: &str, ring: RingSpec, les: &LongExactSequence, emit: Emit) {
    match emit {
        Emit::Json => {
            let terms: Vec<Value> = les
                .terms()
                .iter()
                .zip(les.term_labels())
                .map(|(module, label)| {
                    json_object(vec![
                        ("label", Value::from(label.clone())),
                        ("module", module_json(module)),
                    ])
                })
                .collect();
            let maps: Vec<Value> = les
                .maps()
                .iter()
                .zip(les.map_labels())
                .map(|(map, label)| {
                    json_object(vec![
                        ("label", Value::from(label.clone())),
                        ("matrix", matrix_json(map.matrix())),
                    ])
                })
                .collect();
            let out = json_object(vec![
                ("certified", Value::from(true)),
                ("item", Value::from(item.to_string())),
                ("maps", Value::from(maps)),
                ("ring", Value::from(ring.to_string())),
                ("terms", Value::from(terms)),
            ]);
            println!("{}", canonical(&out));
        }
        Emit::Text => {
            println!("certified long exact sequence for `{item}` over {ring}");
            for (i, (module, label)) in les.terms().iter().zip(les.term_labels()).enumerate() {
                println!("  {label} = {module}");
                if i < les.maps().len() {
                    println!("    | {}", les.map_labels()[i]);
                }
            }
        }
    }
}

fn emit_axiom_report(report: &AxiomReport, emit: Emit) {
    match emit {
        Emit::Json => {
            let value = serde_json::to_value(report).expect("report serializes");
            println!("{}", canonical(&value));
        }
        Emit::Text => {
            for warning in &report.warnings {
                println!("warning: {warning}");
            }
            for check in &report.checks {
                let verdict = if check.passed { "PASS" } else { "FAIL" };
                println!(
                    "{verdict} [{}] {} :: {} ({} ms)",
                    check.item, check.check, check.detail, check.elapsed_ms
                );
            }
            let summary = if report.passed {
                "all checks passed"
            } else {
                "FAILURES present"
            };
            println!(
                "verdict over {}: {summary} ({} checks, {} ms)",
                report.ring,
                report.checks.len(),
                report.elapsed_ms
            );
        }
    }
}

fn kind_mismatch(item: &str, expected: &str, found: &CorpusObject) -> Failure {
    Failure::Input(
        CorpusError::KindMismatch {
            item: item.to_string(),
            expected: expected.to_string(),
            found: found.kind().to_string(),
        }
        .to_string(),
    )
}

fn exit_by(passed: bool) -> ExitCode {
    if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

/// Arbitrary-precision integer as a JSON number (never a float, never a
/// string).
fn big_number(value: &BigInt) -> Number {
    Number::from_str(&value.to_string()).expect("integer literal is a JSON number")
}

fn module_json(module: &FgModule) -> Value {
    let torsion: Vec<Value> = module
        .torsion()
        .iter()
        .map(|t| Value::Number(big_number(t)))
        .collect();
    json_object(vec![
        ("display", Value::from(module.to_string())),
        ("free_rank", Value::from(module.free_rank())),
        ("torsion", Value::from(torsion)),
    ])
}

fn matrix_json(matrix: &IntMatrix) -> Value {
    let rows: Vec<Value> = (0..matrix.rows())
        .map(|i| {
            Value::from(
                (0..matrix.cols())
                    .map(|j| Value::Number(big_number(&matrix[(i, j)])))
                    .collect::<Vec<_>>(),
            )
        })
        .collect();
    Value::from(rows)
}

fn graded_json(h: &GradedModule, top: usize) -> Value {
    let groups: Vec<Value> = (0..top)
        .map(|n| {
            json_object(vec![
                ("degree", Value::from(n)),
                ("module", module_json(&h.module(n))),
            ])
        })
        .collect();
    Value::from(groups)
}

fn json_object(fields: Vec<(&str, Value)>) -> Value {
    let mut map = Map::new();
    for (key, value) in fields {
        map.insert(key.to_string(), value);
    }
    Value::Object(map)
}

/// Canonical rendering: object keys sorted, numbers exact. Parsing the
/// output and re-rendering it is byte-identical.
fn canonical(value: &Value) -> String {
    fn sort(value: &Value) -> Value {
        match value {
            Value::Object(map) => {
                let mut sorted: Vec<(&String, &Value)> = map.iter().collect();
                sorted.sort_by_key(|(k, _)| (*k).clone());
                let mut out = Map::new();
                for (k, v) in sorted {
                    out.insert(k.clone(), sort(v));
                }
                Value::Object(out)
            }
            Value::Array(items) => Value::Array(items.iter().map(sort).collect()),
            other => other.clone(),
        }
    }
    serde_json::to_string(&sort(value)).expect("json value renders")
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn canonical_json_round_trips() {
        let value = json!({"b": [1, {"z": 2, "a": 3}], "a": "x"});
        let rendered = canonical(&value);
        let reparsed: Value = serde_json::from_str(&rendered).unwrap();
        assert_eq!(canonical(&reparsed), rendered);
        assert!(rendered.starts_with("{\"a\""));
    }

    #[test]
    fn big_numbers_stay_exact() {
        let huge = BigInt::parse_bytes(b"123456789012345678901234567890123", 10).unwrap();
        let n = big_number(&huge);
        assert_eq!(n.to_string(), huge.to_string());
    }
}
