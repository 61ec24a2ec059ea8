use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use grasscone::document::{self, Query};
use grasscone::exec::{self, Limits};
use grasscone::{validation, CliError};
use grasscone_core::curve::{self, HnData};

/// Exact nef and pseudoeffective cones of Grassmann bundles, computed from
/// finite numerical data in rational arithmetic.
///
/// Exit codes: 0 success, 2 validation error, 3 violated hypothesis
/// (semistability / vanishing discriminant). The environment variable
/// GRASSCONE_MAX_DIM (default 12) caps the cone dimension.
#[derive(Parser)]
#[command(name = "grasscone", version, about, long_about = None)]
struct Cli {
    /// Emit a machine-readable JSON report
    #[arg(long, global = true)]
    json: bool,

    /// Process every .json document in a directory
    #[arg(long, value_name = "DIR")]
    batch: Option<PathBuf>,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Harder-Narasimhan data of a direct sum of line bundles
    Hn {
        /// Degrees as a JSON array, e.g. "[3,1,1]"
        #[arg(long)]
        degrees: String,
    },
    /// Nef-cone threshold of Gr(k,E) over a curve
    Theta {
        /// Harder-Narasimhan data as [[rank,slope],...], e.g. "[[1,3],[2,1]]"
        #[arg(long)]
        hn: Option<String>,
        /// Line-bundle degrees as a JSON array (alternative to --hn)
        #[arg(long)]
        degrees: Option<String>,
        #[arg(short, long)]
        k: u32,
    },
    /// Pseudoeffective-cone threshold of Gr(k,E) over a curve
    Zeta {
        #[arg(long)]
        hn: Option<String>,
        #[arg(long)]
        degrees: Option<String>,
        #[arg(short, long)]
        k: u32,
    },
    /// Nef and pseudoeffective cones of Gr(k,E) over a curve, basis (xi, f)
    CurveCones {
        #[arg(long)]
        hn: Option<String>,
        #[arg(long)]
        degrees: Option<String>,
        #[arg(short, long)]
        k: u32,
    },
    /// Pseudoeffective cone of Gr(k,E) from base effective generators
    Eff {
        /// builtin:p2 | builtin:blowup-ruled-elliptic | curve | JSON | file
        #[arg(long)]
        base: String,
        /// sum:<degrees> | asserted:r=..,d=.. | JSON bundle object
        #[arg(long)]
        bundle: String,
        #[arg(short, long)]
        k: u32,
        /// Base effective generators as JSON; defaults to the curve generators
        #[arg(long)]
        base_eff: Option<String>,
        /// Vouch for semistability when it cannot be checked from the data
        #[arg(long)]
        assert_semistable: bool,
    },
    /// Nef cone of Gr(k,E) over a base with polyhedral cone of curves
    Nef {
        #[arg(long)]
        base: String,
        #[arg(long)]
        bundle: String,
        #[arg(short, long)]
        k: u32,
        #[arg(long)]
        assert_semistable: bool,
    },
    /// Equality of nef and pseudoeffective cones, on the base and upstairs
    Equality {
        #[arg(long)]
        base: String,
        #[arg(long)]
        bundle: String,
        #[arg(short, long)]
        k: u32,
        #[arg(long)]
        base_eff: Option<String>,
        #[arg(long)]
        assert_semistable: bool,
    },
    /// Cones of Gr(k,E) x_C Gr(k',E') over a curve, basis (xi, eta, F)
    FiberProduct {
        #[arg(long)]
        hn: String,
        #[arg(short, long)]
        k: u32,
        #[arg(long)]
        hn2: String,
        #[arg(long)]
        k2: u32,
    },
    /// Iterated fiber products over a base with nef = eff
    Tower {
        #[arg(long)]
        base: String,
        /// Stages as "<bundle>@<k>;..." or a JSON array of {bundle, k}
        #[arg(long)]
        stages: String,
        #[arg(long)]
        assert_semistable: bool,
    },
    /// The discriminant 2r·c2 - (r-1)·c1²
    Discriminant {
        #[arg(long)]
        base: String,
        #[arg(long)]
        bundle: String,
    },
    /// Checked (or asserted) slope semistability of a decomposable bundle
    Semistable {
        #[arg(long)]
        base: String,
        #[arg(long)]
        bundle: String,
        /// Polarization as a JSON vector; defaults to the base ample class
        #[arg(long)]
        polarization: Option<String>,
        #[arg(long)]
        assert_semistable: bool,
    },
    /// Canonical generators of the dual cone
    Dualize {
        /// Generators as a JSON matrix, e.g. "[[1,0],[1,1]]"
        #[arg(long)]
        gens: Option<String>,
        /// Half-space normals as a JSON matrix
        #[arg(long)]
        halfspaces: Option<String>,
        /// Ambient dimension (only needed for an empty vector list)
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Membership of a vector in a cone
    Contains {
        #[arg(long)]
        gens: Option<String>,
        #[arg(long)]
        halfspaces: Option<String>,
        #[arg(long)]
        vector: String,
        #[arg(long)]
        dim: Option<usize>,
    },
}

fn hn_from_flags(hn: Option<String>, degrees: Option<String>) -> Result<HnData, CliError> {
    match (hn, degrees) {
        (Some(text), None) => {
            document::hn_at(&document::parse_json(&text, "--hn")?, "--hn")
        }
        (None, Some(text)) => {
            let degrees =
                document::rationals_at(&document::parse_json(&text, "--degrees")?, "--degrees")?;
            Ok(curve::hn_of_line_bundle_sum(&degrees)?)
        }
        _ => Err(validation("supply exactly one of --hn or --degrees")),
    }
}

fn vectors_from_flag(text: &str, what: &str) -> Result<Vec<grasscone_core::RatVec>, CliError> {
    document::vectors_at(&document::parse_json(text, what)?, what)
}

fn to_query(command: Command) -> Result<Query, CliError> {
    Ok(match command {
        Command::Hn { degrees } => Query::Hn {
            degrees: document::rationals_at(
                &document::parse_json(&degrees, "--degrees")?,
                "--degrees",
            )?,
        },
        Command::Theta { hn, degrees, k } => Query::Theta {
            hn: hn_from_flags(hn, degrees)?,
            k,
        },
        Command::Zeta { hn, degrees, k } => Query::Zeta {
            hn: hn_from_flags(hn, degrees)?,
            k,
        },
        Command::CurveCones { hn, degrees, k } => Query::CurveCones {
            hn: hn_from_flags(hn, degrees)?,
            k,
        },
        Command::FiberProduct { hn, k, hn2, k2 } => Query::FiberProduct {
            first: document::hn_at(&document::parse_json(&hn, "--hn")?, "--hn")?,
            k,
            second: document::hn_at(&document::parse_json(&hn2, "--hn2")?, "--hn2")?,
            k2,
        },
        Command::Eff { base, bundle, k, base_eff, assert_semistable } => {
            let base = document::parse_base_str(&base)?;
            let bundle = document::parse_bundle_str(&bundle)?.resolve(&base, assert_semistable)?;
            let base_eff = match base_eff {
                Some(text) => vectors_from_flag(&text, "--base-eff")?,
                None => base.lattice.curve_generators().to_vec(),
            };
            Query::Eff { base, bundle, k, base_eff }
        }
        Command::Nef { base, bundle, k, assert_semistable } => {
            let base = document::parse_base_str(&base)?;
            let bundle = document::parse_bundle_str(&bundle)?.resolve(&base, assert_semistable)?;
            Query::Nef { base, bundle, k }
        }
        Command::Equality { base, bundle, k, base_eff, assert_semistable } => {
            let base = document::parse_base_str(&base)?;
            let bundle = document::parse_bundle_str(&bundle)?.resolve(&base, assert_semistable)?;
            let base_eff = match base_eff {
                Some(text) => vectors_from_flag(&text, "--base-eff")?,
                None => base.lattice.curve_generators().to_vec(),
            };
            Query::Equality { base, bundle, k, base_eff }
        }
        Command::Tower { base, stages, assert_semistable } => {
            let base = document::parse_base_str(&base)?;
            let stages = document::parse_stages_str(&stages, &base, assert_semistable)?;
            Query::Tower { base, stages }
        }
        Command::Discriminant { base, bundle } => {
            let base = document::parse_base_str(&base)?;
            let bundle = document::parse_bundle_str(&bundle)?.resolve(&base, false)?;
            Query::Discriminant { base, bundle }
        }
        Command::Semistable { base, bundle, polarization, assert_semistable } => {
            let base = document::parse_base_str(&base)?;
            let bundle = document::parse_bundle_str(&bundle)?.resolve(&base, assert_semistable)?;
            let polarization = polarization
                .map(|text| {
                    document::vector_at(
                        &document::parse_json(&text, "--polarization")?,
                        "--polarization",
                    )
                })
                .transpose()?;
            Query::Semistable { base, bundle, polarization }
        }
        Command::Dualize { gens, halfspaces, dim } => Query::Dualize {
            cone: cone_from_flags(gens, halfspaces, dim)?,
        },
        Command::Contains { gens, halfspaces, vector, dim } => Query::Contains {
            cone: cone_from_flags(gens, halfspaces, dim)?,
            vector: document::vector_at(
                &document::parse_json(&vector, "--vector")?,
                "--vector",
            )?,
        },
    })
}

fn cone_from_flags(
    gens: Option<String>,
    halfspaces: Option<String>,
    dim: Option<usize>,
) -> Result<grasscone_core::Cone, CliError> {
    let gens = gens
        .map(|text| vectors_from_flag(&text, "--gens"))
        .transpose()?;
    let halfspaces = halfspaces
        .map(|text| vectors_from_flag(&text, "--halfspaces"))
        .transpose()?;
    document::cone_from_parts(gens, halfspaces, dim)
}

fn run_single(command: Command, json: bool, limits: &Limits) -> i32 {
    match to_query(command).and_then(|query| exec::execute(query, limits)) {
        Ok(report) => {
            if json {
                println!("{}", report.json);
            } else {
                print!("{}", report.human);
            }
            0
        }
        Err(err) => {
            eprintln!("{err}");
            err.exit_code()
        }
    }
}

fn run_batch(dir: &Path, json: bool, limits: &Limits) -> i32 {
    let mut entries: Vec<PathBuf> = match std::fs::read_dir(dir) {
        Ok(read) => read
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|ext| ext == "json"))
            .collect(),
        Err(e) => {
            eprintln!("validation error: cannot read batch directory {dir:?}: {e}");
            return 2;
        }
    };
    entries.sort();

    let mut worst = 0;
    let mut results = Vec::new();
    for path in &entries {
        let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
        let outcome = std::fs::read_to_string(path)
            .map_err(|e| validation(format!("cannot read {name}: {e}")))
            .and_then(|text| document::parse_json(&text, &name))
            .and_then(|value| document::parse_document(&value))
            .and_then(|query| exec::execute(query, limits));
        match outcome {
            Ok(report) => {
                if json {
                    results.push(json!({"file": name, "status": "ok", "report": report.json}));
                } else {
                    println!("== {name}");
                    print!("{}", report.human);
                }
            }
            Err(err) => {
                worst = worst.max(err.exit_code());
                if json {
                    results.push(json!({
                        "file": name,
                        "status": "error",
                        "exit_code": err.exit_code(),
                        "error": err.message(),
                    }));
                } else {
                    println!("== {name}");
                    println!("{err}");
                }
            }
        }
    }
    if json {
        println!("{}", serde_json::Value::Array(results));
    }
    worst
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let limits = match Limits::from_env() {
        Ok(limits) => limits,
        Err(err) => {
            eprintln!("{err}");
            return ExitCode::from(err.exit_code() as u8);
        }
    };
    let code = match (cli.batch, cli.command) {
        (Some(dir), None) => run_batch(&dir, cli.json, &limits),
        (None, Some(command)) => run_single(command, cli.json, &limits),
        (Some(_), Some(_)) => {
            eprintln!("validation error: --batch and a subcommand are mutually exclusive");
            2
        }
        (None, None) => {
            eprintln!("validation error: a subcommand or --batch is required (try --help)");
            2
        }
    };
    ExitCode::from(code as u8)
}
