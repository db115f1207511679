//! Command-line interface: table dumps, seeded identity fuzzing, isomorphism
//! checks, transformation application and tangent verification.
//!
//! Exit codes: 0 all checks passed, 1 a check failed, 2 usage error.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use octo_core::algebra::{table_export, AlgebraLevel};
use octo_core::automorphisms::tangent_at_identity_with_step;
use octo_core::derivations::{d_ab, f_kij};
use octo_core::error::Error;
use octo_core::formats::{
    endo_rows, parse_octonion, so_matrix_rows, word_from_json, Matrix2Json, Sl2ElementJson,
};
use octo_core::hermitian::{herm_to_vec, vec_to_herm, SpacetimeVector};
use octo_core::lorentz::phi;
use octo_core::report::{run_suite, to_json_17, RunConfig, Suite};
use octo_core::sampling::stream_rng;
use octo_core::sl2o::{is_det_preserving, CurveFamily};

#[derive(Parser)]
#[command(name = "octo", version, about = "Octonion algebra and SL(2,O) toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonOpts {
    /// RNG seed (default: OCTO_SEED environment variable, then 0).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Write output to this path instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Dump the frozen multiplication table as JSON.
    Table {
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Run a named verification suite and print its JSON report.
    Verify {
        /// One of: moufang, artin, lemma-u3, lemma4, detfactor, iso-R,
        /// iso-C, iso-H, iso-O, g2-tangent, sl2o-tangent, lorentz-word.
        suite: String,
        /// Sample count override (each suite has its own default).
        #[arg(long)]
        samples: Option<usize>,
        /// Tolerance override, repeatable: `--tol <check-name>=<value>`.
        #[arg(long = "tol", value_name = "NAME=VALUE")]
        tolerances: Vec<String>,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Derivation-algebra commands.
    #[command(subcommand)]
    G2(G2Command),
    /// Lie-algebra isomorphism commands.
    #[command(subcommand)]
    Iso(IsoCommand),
    /// Group commands over h2(O).
    #[command(subcommand)]
    Sl2o(Sl2oCommand),
}

#[derive(Subcommand)]
enum G2Command {
    /// Finite-difference tangent of the generator curve against the
    /// canonical derivation.
    Tangent {
        /// First imaginary octonion (e.g. `e1` or a comma list).
        #[arg(long)]
        a: String,
        /// Second imaginary octonion, anticommuting with `a`.
        #[arg(long)]
        b: String,
        /// Finite-difference step.
        #[arg(long, default_value_t = 1e-4)]
        h: f64,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Dump a derivation as an 8x8 JSON matrix.
    Dump {
        /// Canonical derivation `D_{a,b}`: two octonion arguments.
        #[arg(long, value_names = ["A", "B"], num_args = 2)]
        dab: Option<Vec<String>>,
        /// Basis derivation F^k_{ij}: three indices.
        #[arg(long, value_names = ["K", "I", "J"], num_args = 3)]
        f: Option<Vec<usize>>,
        #[command(flatten)]
        common: CommonOpts,
    },
}

#[derive(Subcommand)]
enum IsoCommand {
    /// Emit the (n+2)x(n+2) image of an sl(2,K) element as JSON.
    Dump {
        /// Algebra level 0..=3 (R, C, H, O).
        #[arg(long)]
        level: u8,
        /// Element JSON (inline if it starts with '{', else a file path).
        #[arg(long)]
        element: String,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Run the homomorphism fuzz check at one level.
    Check {
        #[arg(long)]
        level: u8,
        #[arg(long)]
        samples: Option<usize>,
        #[command(flatten)]
        common: CommonOpts,
    },
}

#[derive(Subcommand)]
enum Sl2oCommand {
    /// Apply a word to a spacetime vector.
    Apply {
        /// Path to the word JSON (a list of {mu, nu, q} generators).
        #[arg(long)]
        word: PathBuf,
        /// Path to the vector JSON (a list of n+2 reals).
        #[arg(long)]
        vec: PathBuf,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Emit the 10x10 light-cone matrix of a word.
    Matrix {
        #[arg(long)]
        word: PathBuf,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Classify a 2x2 octonionic matrix by determinant preservation.
    CheckDet {
        /// Path to the matrix JSON {a, b, c, d}.
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Finite-difference tangent of a one-parameter curve family.
    Tangent {
        /// Family: diag, offb, offc, comm or g2.
        #[arg(long)]
        family: String,
        /// Family parameters: one index for diag/offb/offc/comm, two
        /// comma-separated indices for g2.
        #[arg(long)]
        params: String,
        /// Finite-difference step.
        #[arg(long, default_value_t = 1e-4)]
        h: f64,
        #[command(flatten)]
        common: CommonOpts,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn seed_of(common: &CommonOpts) -> u64 {
    common.seed.unwrap_or_else(|| {
        std::env::var("OCTO_SEED")
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or(0)
    })
}

fn emit(common: &CommonOpts, value: &impl Serialize) -> Result<(), Error> {
    let text = to_json_17(value);
    match &common.out {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::invalid(format!("cannot write {}: {e}", path.display()))),
    }
}

fn read_file(path: &PathBuf) -> Result<String, Error> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::invalid(format!("cannot read {}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Table { common } => {
            emit(&common, &table_export())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            suite,
            samples,
            tolerances,
            common,
        } => {
            let suite: Suite = suite.parse()?;
            let mut tols = BTreeMap::new();
            for spec in &tolerances {
                let (name, value) = spec
                    .split_once('=')
                    .ok_or_else(|| Error::invalid(format!("--tol wants NAME=VALUE, got '{spec}'")))?;
                let value: f64 = value
                    .parse()
                    .map_err(|e| Error::invalid(format!("bad tolerance '{value}': {e}")))?;
                tols.insert(name.to_string(), value);
            }
            let cfg = RunConfig {
                seed: seed_of(&common),
                samples,
                tolerances: tols,
            };
            let report = run_suite(suite, &cfg)?;
            let passed = report.passed;
            emit(&common, &report)?;
            Ok(if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::G2(cmd) => run_g2(cmd),
        Command::Iso(cmd) => run_iso(cmd),
        Command::Sl2o(cmd) => run_sl2o(cmd),
    }
}

#[derive(Serialize)]
struct TangentReport {
    finite_difference: Vec<Vec<f64>>,
    closed_form: Vec<Vec<f64>>,
    frobenius_distance: f64,
}

fn run_g2(cmd: G2Command) -> Result<ExitCode, Error> {
    match cmd {
        G2Command::Tangent { a, b, h, common } => {
            let a = parse_octonion(&a)?;
            let b = parse_octonion(&b)?;
            let fd = tangent_at_identity_with_step(&a, &b, h)?;
            let cf = d_ab(&a, &b);
            let report = TangentReport {
                finite_difference: endo_rows(&fd),
                closed_form: endo_rows(&cf),
                frobenius_distance: fd.frobenius_distance(&cf),
            };
            emit(&common, &report)?;
            Ok(ExitCode::SUCCESS)
        }
        G2Command::Dump { dab, f, common } => {
            let endo = match (dab, f) {
                (Some(args), None) => {
                    let a = parse_octonion(&args[0])?;
                    let b = parse_octonion(&args[1])?;
                    d_ab(&a, &b)
                }
                (None, Some(idx)) => f_kij(idx[0], idx[1], idx[2])?,
                _ => {
                    return Err(Error::invalid("pass exactly one of --dab or --f"));
                }
            };
            emit(&common, &endo_rows(&endo))?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn run_iso(cmd: IsoCommand) -> Result<ExitCode, Error> {
    match cmd {
        IsoCommand::Dump {
            level,
            element,
            common,
        } => {
            let level = AlgebraLevel::from_index(level)?;
            let text = if element.trim_start().starts_with('{') {
                element
            } else {
                read_file(&PathBuf::from(element))?
            };
            let parsed: Sl2ElementJson = serde_json::from_str(&text)
                .map_err(|e| Error::invalid(format!("element JSON: {e}")))?;
            let elt = parsed.to_element()?;
            if elt.level() != level {
                return Err(Error::invalid(format!(
                    "element level {} does not match --level {}",
                    elt.level(),
                    level
                )));
            }
            emit(&common, &so_matrix_rows(&phi(&elt)))?;
            Ok(ExitCode::SUCCESS)
        }
        IsoCommand::Check {
            level,
            samples,
            common,
        } => {
            let suite = match AlgebraLevel::from_index(level)? {
                AlgebraLevel::Real => Suite::IsoR,
                AlgebraLevel::Complex => Suite::IsoC,
                AlgebraLevel::Quaternion => Suite::IsoH,
                AlgebraLevel::Octonion => Suite::IsoO,
            };
            let cfg = RunConfig {
                seed: seed_of(&common),
                samples,
                tolerances: BTreeMap::new(),
            };
            let report = run_suite(suite, &cfg)?;
            let passed = report.passed;
            emit(&common, &report)?;
            Ok(if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn parse_indices(text: &str) -> Result<Vec<usize>, Error> {
    text.split(',')
        .map(|p| {
            p.trim()
                .parse::<usize>()
                .map_err(|e| Error::invalid(format!("bad index '{p}': {e}")))
        })
        .collect()
}

fn run_sl2o(cmd: Sl2oCommand) -> Result<ExitCode, Error> {
    match cmd {
        Sl2oCommand::Apply { word, vec, common } => {
            let w = word_from_json(&read_file(&word)?)?;
            let coords: Vec<f64> = serde_json::from_str(&read_file(&vec)?)
                .map_err(|e| Error::invalid(format!("vector JSON: {e}")))?;
            let v = SpacetimeVector::new(coords)?;
            if v.level() != AlgebraLevel::Octonion {
                return Err(Error::invalid(format!(
                    "words act on 10-component vectors, got {}",
                    v.dim()
                )));
            }
            let out = herm_to_vec(&w.apply(&vec_to_herm(&v)));
            emit(&common, &out.coords().to_vec())?;
            Ok(ExitCode::SUCCESS)
        }
        Sl2oCommand::Matrix { word, common } => {
            let w = word_from_json(&read_file(&word)?)?;
            emit(&common, &so_matrix_rows(&w.to_lorentz_matrix()))?;
            Ok(ExitCode::SUCCESS)
        }
        Sl2oCommand::CheckDet {
            matrix,
            trials,
            common,
        } => {
            let parsed: Matrix2Json = serde_json::from_str(&read_file(&matrix)?)
                .map_err(|e| Error::invalid(format!("matrix JSON: {e}")))?;
            let m = parsed.to_matrix()?;
            let mut rng = stream_rng(seed_of(&common), 201);
            let report = is_det_preserving(&m, trials, &mut rng)?;
            emit(&common, &report)?;
            Ok(ExitCode::SUCCESS)
        }
        Sl2oCommand::Tangent {
            family,
            params,
            h,
            common,
        } => {
            let idx = parse_indices(&params)?;
            let fam = match (family.as_str(), idx.as_slice()) {
                ("diag", [m]) => CurveFamily::Diag { m: *m },
                ("offb", [m]) => CurveFamily::OffDiagB { m: *m },
                ("offc", [m]) => CurveFamily::OffDiagC { m: *m },
                ("comm", [m]) => CurveFamily::Comm { m: *m },
                ("g2", [i, j]) => CurveFamily::G2 { i: *i, j: *j },
                _ => {
                    return Err(Error::invalid(
                        "family/params: diag|offb|offc|comm take one index, g2 takes i,j",
                    ))
                }
            };
            let tangent = fam.tangent_with_step(h)?;
            emit(&common, &Sl2ElementJson::from_element(&tangent))?;
            Ok(ExitCode::SUCCESS)
        }
    }
}
