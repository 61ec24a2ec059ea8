//! Executes parsed queries against the core library and renders reports.

use grasscone_core::curve::{self, CurveGrassmannCones, FiberProductCones};
use grasscone_core::grassmann::{self, GrassmannCone};
use grasscone_core::surface::{self};
use grasscone_core::Error as CoreError;
use serde_json::json;

use crate::document::Query;
use crate::report::{
    basis_line, cone_json, rat_string, vector_block, vectors_line, Report,
};
use crate::{validation, CliError};

/// Defaults and limits; `max_dim` comes from `GRASSCONE_MAX_DIM` (default
/// 12) and bounds the double-description dimension.
pub struct Limits {
    pub max_dim: usize,
}

impl Limits {
    pub const DEFAULT_MAX_DIM: usize = 12;

    pub fn from_env() -> Result<Self, CliError> {
        match std::env::var("GRASSCONE_MAX_DIM") {
            Ok(text) => {
                let max_dim = text.trim().parse::<usize>().map_err(|_| {
                    validation(format!("GRASSCONE_MAX_DIM: {text:?} is not a positive integer"))
                })?;
                if max_dim == 0 {
                    return Err(validation("GRASSCONE_MAX_DIM must be positive"));
                }
                Ok(Limits { max_dim })
            }
            Err(std::env::VarError::NotPresent) => Ok(Limits {
                max_dim: Self::DEFAULT_MAX_DIM,
            }),
            Err(e) => Err(validation(format!("GRASSCONE_MAX_DIM: {e}"))),
        }
    }

    fn check(&self, dim: usize) -> Result<(), CliError> {
        if dim > self.max_dim {
            return Err(validation(format!(
                "cone dimension {dim} exceeds GRASSCONE_MAX_DIM ({})",
                self.max_dim
            )));
        }
        Ok(())
    }
}

pub fn execute(query: Query, limits: &Limits) -> Result<Report, CliError> {
    match query {
        Query::Hn { degrees } => {
            let hn = curve::hn_of_line_bundle_sum(&degrees)?;
            let pieces: Vec<serde_json::Value> = hn
                .pieces()
                .iter()
                .map(|p| json!([p.rank, rat_string(&p.slope)]))
                .collect();
            let human_pieces: Vec<String> = hn
                .pieces()
                .iter()
                .map(|p| format!("[{},{}]", p.rank, grasscone_core::rational::display(&p.slope)))
                .collect();
            Ok(Report {
                human: format!(
                    "hn = [{}]\nrank = {}\ndegree = {}\n",
                    human_pieces.join(","),
                    hn.rank(),
                    rat_string(&hn.degree())
                ),
                json: json!({
                    "pieces": pieces,
                    "rank": hn.rank(),
                    "degree": rat_string(&hn.degree()),
                }),
            })
        }

        Query::Theta { hn, k } => {
            let value = curve::theta(&hn, k)?;
            Ok(Report {
                human: format!("theta = {}\n", rat_string(&value)),
                json: json!({"theta": rat_string(&value)}),
            })
        }

        Query::Zeta { hn, k } => {
            let value = curve::zeta(&hn, k)?;
            Ok(Report {
                human: format!("zeta = {}\n", rat_string(&value)),
                json: json!({"zeta": rat_string(&value)}),
            })
        }

        Query::CurveCones { hn, k } => {
            limits.check(2)?;
            let cones = curve::curve_cones(&hn, k)?;
            Ok(curve_cones_report(&cones))
        }

        Query::FiberProduct { first, k, second, k2 } => {
            limits.check(3)?;
            let cones = curve::fiber_product_cones(&first, k, &second, k2)?;
            Ok(fiber_report(&cones))
        }

        Query::Eff { base, bundle, k, base_eff } => {
            limits.check(1 + base.lattice.rho())?;
            let eff = grassmann::eff_cone(&base.lattice, &bundle, k, &base_eff)?;
            Ok(grassmann_cone_report(&eff, BlockOrder::GeneratorsFirst))
        }

        Query::Nef { base, bundle, k } => {
            limits.check(1 + base.lattice.rho())?;
            let nef = grassmann::nef_cone_surface(&base.lattice, &bundle, k)?;
            Ok(grassmann_cone_report(&nef, BlockOrder::HalfspacesFirst))
        }

        Query::Equality { base, bundle, k, base_eff } => {
            limits.check(1 + base.lattice.rho())?;
            let report = grassmann::nef_eff_equality_report(&base.lattice, &bundle, k, &base_eff)?;
            if !report.is_coherent() {
                return Err(CliError::Precondition(format!(
                    "equality verdicts disagree (base {}, bundle {}): semistability with zero \
                     discriminant forces them to match, so an asserted hypothesis is false",
                    report.base_equal, report.gr_equal
                )));
            }
            Ok(Report {
                human: format!(
                    "base_equal = {}\ngr_equal = {}\ncoherent = true\n",
                    report.base_equal, report.gr_equal
                ),
                json: json!({
                    "base_equal": report.base_equal,
                    "gr_equal": report.gr_equal,
                    "coherent": true,
                }),
            })
        }

        Query::Tower { base, stages } => {
            limits.check(stages.len() + base.lattice.rho())?;
            let cones = grassmann::tower_cones(&base.lattice, &stages)?;
            let mut human = String::new();
            let mut stages_json = Vec::new();
            for (i, stage) in cones.iter().enumerate() {
                human.push_str(&format!("stage {}\n", i + 1));
                human.push_str(&basis_line(&stage.basis_labels));
                human.push('\n');
                human.push_str(&vector_block(
                    "generators",
                    stage.cone.generators().unwrap_or(&[]),
                ));
                if i + 1 < cones.len() {
                    human.push('\n');
                }
                stages_json.push(cone_json(Some(&stage.basis_labels), &stage.cone));
            }
            Ok(Report {
                human,
                json: json!({"stages": stages_json}),
            })
        }

        Query::Discriminant { base, bundle } => {
            let value = surface::discriminant(&base.lattice, &bundle)?;
            Ok(Report {
                human: format!("discriminant = {}\n", rat_string(&value)),
                json: json!({"discriminant": rat_string(&value)}),
            })
        }

        Query::Semistable { base, bundle, polarization } => {
            let polarization = match polarization {
                Some(p) => p,
                None => base
                    .lattice
                    .ample_class()
                    .cloned()
                    .ok_or_else(|| {
                        validation("the base lattice has no ample class; pass --polarization")
                    })?,
            };
            match surface::is_semistable_decomposable(&base.lattice, &bundle, &polarization) {
                Ok(verdict) => Ok(Report {
                    human: format!("semistable = {verdict} (checked)\n"),
                    json: json!({"semistable": verdict, "mode": "checked"}),
                }),
                Err(CoreError::SemistabilityUnknown) if bundle.is_asserted_semistable() => {
                    Ok(Report {
                        human: String::from("semistable = true (asserted)\n"),
                        json: json!({"semistable": true, "mode": "asserted"}),
                    })
                }
                Err(e) => Err(e.into()),
            }
        }

        Query::Dualize { cone } => {
            limits.check(cone.dim())?;
            let dual = cone.dual()?;
            Ok(Report {
                human: format!("{}\n", vectors_line(dual.generators().unwrap_or(&[]))),
                json: cone_json(None, &dual),
            })
        }

        Query::Contains { cone, vector } => {
            limits.check(cone.dim())?;
            let verdict = cone.contains(&vector)?;
            Ok(Report {
                human: format!("{verdict}\n"),
                json: json!({"contains": verdict}),
            })
        }
    }
}

enum BlockOrder {
    GeneratorsFirst,
    HalfspacesFirst,
}

fn grassmann_cone_report(cone: &GrassmannCone, order: BlockOrder) -> Report {
    let mut human = basis_line(&cone.basis_labels);
    human.push('\n');
    let gens = vector_block("generators", cone.cone.generators().unwrap_or(&[]));
    let halfspaces = cone
        .cone
        .halfspaces()
        .map(|hs| vector_block("halfspaces", hs));
    match order {
        BlockOrder::GeneratorsFirst => {
            human.push_str(&gens);
            if let Some(hs) = halfspaces {
                human.push_str(&hs);
            }
        }
        BlockOrder::HalfspacesFirst => {
            if let Some(hs) = halfspaces {
                human.push_str(&hs);
            }
            human.push_str(&gens);
        }
    }
    Report {
        json: cone_json(Some(&cone.basis_labels), &cone.cone),
        human,
    }
}

fn curve_cones_report(cones: &CurveGrassmannCones) -> Report {
    let labels: Vec<String> = CurveGrassmannCones::BASIS.iter().map(|s| s.to_string()).collect();
    let mut human = format!(
        "theta = {}\nzeta = {}\n{}\n",
        rat_string(&cones.theta),
        rat_string(&cones.zeta),
        basis_line(&labels)
    );
    human.push_str(&vector_block("nef generators", cones.nef.generators().unwrap_or(&[])));
    human.push_str(&vector_block("eff generators", cones.eff.generators().unwrap_or(&[])));
    Report {
        human,
        json: json!({
            "theta": rat_string(&cones.theta),
            "zeta": rat_string(&cones.zeta),
            "nef": cone_json(Some(&labels), &cones.nef),
            "eff": cone_json(Some(&labels), &cones.eff),
        }),
    }
}

fn fiber_report(cones: &FiberProductCones) -> Report {
    let labels: Vec<String> = FiberProductCones::BASIS.iter().map(|s| s.to_string()).collect();
    let mut human = basis_line(&labels);
    human.push('\n');
    human.push_str(&vector_block("nef generators", cones.nef.generators().unwrap_or(&[])));
    human.push_str(&vector_block("eff generators", cones.eff.generators().unwrap_or(&[])));
    Report {
        human,
        json: json!({
            "nef": cone_json(Some(&labels), &cones.nef),
            "eff": cone_json(Some(&labels), &cones.eff),
        }),
    }
}
