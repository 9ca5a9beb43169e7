//! `matroid-klab`: exact K-theoretic invariants of matroids and polymatroids.
//!
//! Every command reads the JSON schemas from `klab_core::io`, writes result
//! JSON to stdout (or a table with `--table`), and reports domain errors as a
//! structured object on stderr.  Exit codes: 0 success, 1 domain error,
//! 2 I/O or parse error.

mod table;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::json;

use klab_core::catalog;
use klab_core::experiments;
use klab_core::hstar;
use klab_core::io::{
    HStarJson, KExpansionJson, LorentzianJson, MatroidJson, PolyJson, PolymatroidJson,
};
use klab_core::kclass;
use klab_core::lorentzian;
use klab_core::matroid::tutte_at;
use klab_core::snapper;
use klab_core::subset::Subset;
use klab_core::{BundleSpec, Matroid, Polymatroid};

#[derive(Parser)]
#[command(name = "matroid-klab", version, about = "Exact matroid K-theory toolkit")]
struct Cli {
    /// Emit machine-readable JSON (the default).
    #[arg(long, global = true)]
    json: bool,
    /// Render a human-readable table instead of JSON.
    #[arg(long, global = true, conflicts_with = "json")]
    table: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a matroid or polymatroid file against the rank axioms.
    Validate {
        #[arg(long)]
        matroid: Option<PathBuf>,
        #[arg(long)]
        polymatroid: Option<PathBuf>,
    },
    /// Snapper polynomial: multivariate, or univariate when exponents are given.
    Snapper {
        #[arg(long)]
        matroid: PathBuf,
        /// Semicolon-separated element lists, e.g. "0,1;2,3".
        #[arg(long)]
        subsets: String,
        /// Comma-separated Laurent exponents, one per subset.
        #[arg(long)]
        exponents: Option<String>,
        /// Use the augmented characteristic (Hall-Rado) instead of the
        /// non-augmented one (dragon Hall-Rado).
        #[arg(long)]
        augmented: bool,
    },
    /// h*-vector report of a line bundle.
    Hstar {
        #[arg(long)]
        matroid: PathBuf,
        #[arg(long, requires = "exponents")]
        subsets: Option<String>,
        #[arg(long)]
        exponents: Option<String>,
        #[arg(long)]
        augmented: bool,
        /// Extract the bundle from a polymatroid on the same ground set
        /// instead of giving subsets/exponents directly.
        #[arg(long, conflicts_with = "subsets")]
        polymatroid: Option<PathBuf>,
    },
    /// Macaulay (O-sequence) test of an integer vector.
    Macaulay {
        /// Comma-separated entries, e.g. "1,3,7".
        #[arg(long)]
        vector: String,
    },
    /// Structure-sheaf K-class expansion of Y_P.
    Kclass {
        #[arg(long)]
        polymatroid: PathBuf,
    },
    /// The g_P polynomial.
    Gpoly {
        #[arg(long)]
        polymatroid: PathBuf,
    },
    /// Lorentzian certification of a polynomial file.
    Lorentzian {
        #[arg(long)]
        poly: PathBuf,
        /// Test the normalization instead of the polynomial itself.
        #[arg(long)]
        denormalized: bool,
    },
    /// Speyer's omega invariant.
    Omega {
        #[arg(long)]
        matroid: PathBuf,
    },
    /// Multisymmetric lift of a polymatroid.
    Lift {
        #[arg(long)]
        polymatroid: PathBuf,
    },
    /// Restriction polymatroid of a matroid to subsets.
    Restrict {
        #[arg(long)]
        matroid: PathBuf,
        #[arg(long)]
        subsets: String,
    },
    /// Tutte polynomial and beta invariant.
    Tutte {
        #[arg(long)]
        matroid: PathBuf,
    },
    /// Catalog sweeps.
    Experiment {
        #[command(subcommand)]
        which: Experiment,
    },
}

#[derive(Subcommand)]
enum Experiment {
    /// Cross-validate the Hall-Rado characteristic against the K-class
    /// expansion on an integer grid.
    #[command(name = "theorem1-1")]
    Theorem11 {
        #[arg(long, default_value = "default")]
        catalog: String,
        #[arg(long, default_value_t = 4)]
        kmax: i64,
    },
    /// Denormalized-Lorentzian sweep over the polymatroid catalog.
    #[command(name = "lorentzian-sweep")]
    LorentzianSweep {
        #[arg(long, default_value = "default")]
        catalog: String,
    },
    /// Macaulay sweep over nonnegative flat bundles.
    #[command(name = "macaulay-sweep")]
    MacaulaySweep {
        #[arg(long, default_value = "default")]
        catalog: String,
    },
    /// h*-vector monotonicity along nested base polytopes.
    Monotonicity {
        #[arg(long, default_value = "default")]
        catalog: String,
    },
}

enum CliError {
    Domain(klab_core::Error),
    Io(String),
    Parse(String),
}

impl From<klab_core::Error> for CliError {
    fn from(e: klab_core::Error) -> Self {
        CliError::Domain(e)
    }
}

type CliResult<T> = Result<T, CliError>;

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn read_matroid(path: &Path) -> CliResult<Matroid> {
    let j: MatroidJson = read_json(path)?;
    Ok(j.build()?)
}

fn read_polymatroid(path: &Path) -> CliResult<Polymatroid> {
    let j: PolymatroidJson = read_json(path)?;
    Ok(j.build()?)
}

/// Parse "0,1;2,3" into subsets.
fn parse_subsets(s: &str) -> CliResult<Vec<Subset>> {
    s.split(';')
        .map(|part| {
            let elems: Result<Vec<usize>, _> =
                part.split(',').map(|e| e.trim().parse::<usize>()).collect();
            match elems {
                Ok(v) if !v.is_empty() => Ok(Subset::from_elements(v)),
                _ => Err(CliError::Parse(format!("bad subset list {part:?}"))),
            }
        })
        .collect()
}

fn parse_i64_list(s: &str) -> CliResult<Vec<i64>> {
    s.split(',')
        .map(|e| {
            e.trim().parse::<i64>().map_err(|_| CliError::Parse(format!("bad integer {e:?}")))
        })
        .collect()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let as_table = cli.table;
    match run(cli.command, as_table) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Domain(e)) => {
            let body = json!({
                "code": e.code(),
                "message": e.to_string(),
                "witness": e.witness(),
            });
            eprintln!("{body}");
            ExitCode::from(1)
        }
        Err(CliError::Io(msg)) => {
            eprintln!("{}", json!({"code": "io_error", "message": msg}));
            ExitCode::from(2)
        }
        Err(CliError::Parse(msg)) => {
            eprintln!("{}", json!({"code": "parse_error", "message": msg}));
            ExitCode::from(2)
        }
    }
}

fn emit(as_table: bool, value: serde_json::Value, table_text: String) {
    if as_table {
        println!("{table_text}");
    } else {
        println!("{value}");
    }
}

fn run(command: Command, as_table: bool) -> CliResult<()> {
    match command {
        Command::Validate { matroid, polymatroid } => match (matroid, polymatroid) {
            (Some(path), None) => {
                let m = read_matroid(&path)?;
                let value = json!({
                    "valid": true, "kind": "matroid", "n": m.n(), "rank": m.rank_total(),
                    "loopless": m.is_loopless(), "connected": m.is_connected(),
                });
                let text = table::validate_matroid(&m);
                emit(as_table, value, text);
                Ok(())
            }
            (None, Some(path)) => {
                let p = read_polymatroid(&path)?;
                let value = json!({
                    "valid": true, "kind": "polymatroid", "m": p.m(),
                    "cage": p.cage(), "rank": p.rank_total(),
                });
                let text = table::validate_polymatroid(&p);
                emit(as_table, value, text);
                Ok(())
            }
            _ => Err(CliError::Parse("pass exactly one of --matroid or --polymatroid".into())),
        },

        Command::Snapper { matroid, subsets, exponents, augmented } => {
            let m = read_matroid(&matroid)?;
            let sets = parse_subsets(&subsets)?;
            let poly = match exponents {
                Some(exps) => {
                    let bundle = BundleSpec::new(sets, parse_i64_list(&exps)?, augmented)?;
                    snapper::snapper_bundle(&m, &bundle)?
                }
                None if augmented => snapper::snapper_aug(&m, &sets)?,
                None => snapper::snapper_nonaug(&m, &sets)?,
            };
            let j = PolyJson::from_poly(&poly);
            emit(as_table, serde_json::to_value(&j).unwrap(), poly.to_string());
            Ok(())
        }

        Command::Hstar { matroid, subsets, exponents, augmented, polymatroid } => {
            let m = read_matroid(&matroid)?;
            let bundle = match (subsets, polymatroid) {
                (Some(sets), None) => {
                    let exps = exponents
                        .ok_or_else(|| CliError::Parse("--subsets needs --exponents".into()))?;
                    BundleSpec::new(parse_subsets(&sets)?, parse_i64_list(&exps)?, augmented)?
                }
                (None, Some(path)) => {
                    let p = read_polymatroid(&path)?;
                    hstar::bundle_from_polymatroid(&m, &p)?
                }
                _ => {
                    return Err(CliError::Parse(
                        "pass either --subsets/--exponents or --polymatroid".into(),
                    ))
                }
            };
            let report = hstar::hstar_vector(&m, &bundle)?;
            let j = HStarJson::from_report(&report);
            emit(as_table, serde_json::to_value(&j).unwrap(), table::hstar(&report, &bundle));
            Ok(())
        }

        Command::Macaulay { vector } => {
            let entries: Vec<BigInt> = vector
                .split(',')
                .map(|e| {
                    BigInt::from_str(e.trim())
                        .map_err(|_| CliError::Parse(format!("bad integer {e:?}")))
                })
                .collect::<CliResult<_>>()?;
            let verdict = hstar::is_macaulay(&entries)?;
            let value = json!({
                "macaulay": verdict.ok,
                "violation_index": verdict.violation_index,
            });
            emit(as_table, value, table::macaulay(&verdict));
            Ok(())
        }

        Command::Kclass { polymatroid } => {
            let p = read_polymatroid(&polymatroid)?;
            let expansion = kclass::knutson_coeffs(&p);
            let j = KExpansionJson::from_expansion(&expansion);
            emit(as_table, serde_json::to_value(&j).unwrap(), table::kclass(&expansion));
            Ok(())
        }

        Command::Gpoly { polymatroid } => {
            let p = read_polymatroid(&polymatroid)?;
            let g = kclass::g_poly(&p);
            let j = PolyJson::from_poly(&g);
            emit(as_table, serde_json::to_value(&j).unwrap(), g.to_string());
            Ok(())
        }

        Command::Lorentzian { poly, denormalized } => {
            let j: PolyJson = read_json(&poly)?;
            let f = j.build()?;
            let verdict = if denormalized {
                lorentzian::is_denorm_lorentzian(&f)?
            } else {
                lorentzian::is_lorentzian(&f)
            };
            let out = LorentzianJson::from_verdict(&verdict);
            emit(as_table, serde_json::to_value(&out).unwrap(), table::lorentzian(&verdict));
            Ok(())
        }

        Command::Omega { matroid } => {
            let m = read_matroid(&matroid)?;
            let w = hstar::omega(&m)?;
            emit(as_table, json!({ "omega": w }), format!("omega = {w}"));
            Ok(())
        }

        Command::Lift { polymatroid } => {
            let p = read_polymatroid(&polymatroid)?;
            let (m, blocks) = p.multisymmetric_lift()?;
            let blocks_json: Vec<Vec<usize>> =
                blocks.iter().map(|b| b.elements().collect()).collect();
            let value = json!({
                "matroid": serde_json::to_value(MatroidJson::from_matroid(&m)).unwrap(),
                "blocks": blocks_json,
            });
            emit(as_table, value, table::lift(&m, &blocks));
            Ok(())
        }

        Command::Restrict { matroid, subsets } => {
            let m = read_matroid(&matroid)?;
            let sets = parse_subsets(&subsets)?;
            let p = Polymatroid::restriction(&m, &sets)?;
            let j = PolymatroidJson::from_polymatroid(&p);
            emit(as_table, serde_json::to_value(&j).unwrap(), table::validate_polymatroid(&p));
            Ok(())
        }

        Command::Tutte { matroid } => {
            let m = read_matroid(&matroid)?;
            let t = m.tutte();
            let value = json!({
                "tutte": serde_json::to_value(PolyJson::from_poly(&t)).unwrap(),
                "beta": m.beta(),
                "bases": tutte_at(&m, 1, 1),
            });
            emit(as_table, value, format!("T(x,y) = {t}\nbeta = {}", m.beta()));
            Ok(())
        }

        Command::Experiment { which } => run_experiment(which, as_table),
    }
}

fn run_experiment(which: Experiment, as_table: bool) -> CliResult<()> {
    match which {
        Experiment::Theorem11 { catalog, kmax } => {
            let pairs = catalog::pairs(&catalog)?;
            let report = experiments::theorem11_sweep(&pairs, kmax)?;
            let ok = report.mismatches.is_empty();
            let value = json!({
                "experiment": "theorem1-1", "catalog": catalog, "kmax": kmax,
                "pairs": report.pairs, "points": report.points,
                "mismatches": report.mismatches, "ok": ok,
            });
            let text = format!(
                "theorem1-1 [{catalog}]: {} pairs, {} grid points, {}",
                report.pairs,
                report.points,
                if ok { "all equal" } else { "MISMATCHES FOUND" }
            );
            emit(as_table, value, text);
            Ok(())
        }
        Experiment::LorentzianSweep { catalog } => {
            let polys = catalog::polymatroids(&catalog)?;
            let entries = experiments::lorentzian_sweep(&polys)?;
            let spanning_ok = entries
                .iter()
                .filter(|e| e.spanning)
                .all(|e| e.denorm_lorentzian && e.matches_lift_transform != Some(false));
            let value = json!({
                "experiment": "lorentzian-sweep", "catalog": catalog,
                "instances": entries, "spanning_all_lorentzian": spanning_ok,
            });
            emit(as_table, value, table::lorentzian_sweep(&entries));
            Ok(())
        }
        Experiment::MacaulaySweep { catalog } => {
            let report = experiments::macaulay_sweep(&catalog, 12)?;
            let ok = report.failures.is_empty();
            let value = json!({
                "experiment": "macaulay-sweep", "catalog": catalog,
                "matroids": report.matroids, "bundles": report.bundles,
                "failures": report.failures, "ok": ok,
            });
            let text = format!(
                "macaulay-sweep [{catalog}]: {} bundles over {} matroids, {}",
                report.bundles,
                report.matroids,
                if ok { "all Macaulay" } else { "FAILURES FOUND" }
            );
            emit(as_table, value, text);
            Ok(())
        }
        Experiment::Monotonicity { catalog } => {
            let entries = experiments::monotonicity_experiment(&catalog)?;
            let value = json!({
                "experiment": "monotonicity", "catalog": catalog, "pairs": entries,
            });
            emit(as_table, value, table::monotonicity(&entries));
            Ok(())
        }
    }
}
