//! Input documents and flag-value parsing.
//!
//! The on-disk format is JSON with a top-level `version`. Rationals are
//! encoded as integers or `"p/q"` strings; floating-point numbers are
//! rejected so no value is ever rounded. Errors carry the path of the
//! offending field.

use grasscone_core::curve::{self, HnData};
use grasscone_core::grassmann::TowerStage;
use grasscone_core::rational::{self, Rational};
use grasscone_core::surface::{SurfaceBundle, SurfaceLattice};
use grasscone_core::{Cone, RatVec};
use serde_json::Value;

use crate::{validation, CliError};

pub const DOCUMENT_VERSION: &str = "1";

/// Which base the document named; built-in bases unlock shorthand bundles.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaseName {
    P2,
    BlowupRuledElliptic,
    CurveBase,
    Custom,
}

#[derive(Clone, Debug)]
pub struct ResolvedBase {
    pub name: BaseName,
    pub lattice: SurfaceLattice,
}

/// A bundle as named by the input; resolution against a base happens later
/// because decomposable invariants need the intersection form.
#[derive(Clone, Debug)]
pub enum BundleSpec {
    Hn(HnData),
    LineSum(Vec<Rational>),
    Invariants { rank: u32, c1: Vec<Rational>, c2: Rational },
    Summands(Vec<Vec<Rational>>),
    AssertedPullback { rank: u32, degree: Rational },
}

impl BundleSpec {
    /// Harder-Narasimhan data for the curve-side queries.
    pub fn to_hn(&self) -> Result<HnData, CliError> {
        match self {
            BundleSpec::Hn(hn) => Ok(hn.clone()),
            BundleSpec::LineSum(degrees) => Ok(curve::hn_of_line_bundle_sum(degrees)?),
            _ => Err(validation(
                "this query needs Harder-Narasimhan data: use an \"hn\" or \"line-sum\" bundle",
            )),
        }
    }

    /// Resolves to concrete bundle data on the given base.
    pub fn resolve(&self, base: &ResolvedBase, asserted: bool) -> Result<SurfaceBundle, CliError> {
        let lattice = &base.lattice;
        let bundle = match self {
            BundleSpec::LineSum(degrees) => {
                if lattice.rho() != 1 {
                    return Err(validation(
                        "line-sum bundles need a rank-one base lattice; supply summand classes instead",
                    ));
                }
                SurfaceBundle::line_sum(lattice, degrees)?
            }
            BundleSpec::Summands(classes) => SurfaceBundle::decomposable(
                lattice,
                classes.iter().map(|c| RatVec::new(c.clone())).collect(),
            )?,
            BundleSpec::Invariants { rank, c1, c2 } => {
                if c1.len() != lattice.rho() {
                    return Err(validation(format!(
                        "bundle.c1 has {} coordinates but the base lattice has rank {}",
                        c1.len(),
                        lattice.rho()
                    )));
                }
                SurfaceBundle::from_invariants(*rank, RatVec::new(c1.clone()), c2.clone())?
            }
            BundleSpec::AssertedPullback { rank, degree } => {
                let c1 = match base.name {
                    BaseName::BlowupRuledElliptic => RatVec::new(vec![
                        degree.clone(),
                        Rational::from_integer(0.into()),
                        degree.clone(),
                    ]),
                    BaseName::CurveBase => RatVec::new(vec![degree.clone()]),
                    _ => {
                        return Err(validation(
                            "asserted:r=..,d=.. bundles are defined on the blowup-ruled-elliptic \
                             and curve bases; use explicit invariants elsewhere",
                        ))
                    }
                };
                return Ok(SurfaceBundle::from_invariants(
                    *rank,
                    c1,
                    Rational::from_integer(0.into()),
                )?
                .assert_semistable());
            }
            BundleSpec::Hn(hn) => {
                if base.name != BaseName::CurveBase {
                    return Err(validation(
                        "hn bundles live over a curve base; use surface-bundle data here",
                    ));
                }
                if !hn.is_semistable() {
                    return Err(CliError::Precondition(String::from(
                        "unstable bundles over a curve are handled by the curve queries \
                         (theta, zeta, curve-cones); the Grassmann cone formulas require a \
                         semistable bundle",
                    )));
                }
                let degree = hn.degree();
                SurfaceBundle::from_invariants(
                    hn.rank(),
                    RatVec::new(vec![degree]),
                    Rational::from_integer(0.into()),
                )?
                .assert_semistable()
            }
        };
        Ok(if asserted { bundle.assert_semistable() } else { bundle })
    }
}

/// One executable request: a query with everything it needs resolved.
#[derive(Clone, Debug)]
pub enum Query {
    Hn { degrees: Vec<Rational> },
    Theta { hn: HnData, k: u32 },
    Zeta { hn: HnData, k: u32 },
    CurveCones { hn: HnData, k: u32 },
    FiberProduct { first: HnData, k: u32, second: HnData, k2: u32 },
    Eff { base: ResolvedBase, bundle: SurfaceBundle, k: u32, base_eff: Vec<RatVec> },
    Nef { base: ResolvedBase, bundle: SurfaceBundle, k: u32 },
    Equality { base: ResolvedBase, bundle: SurfaceBundle, k: u32, base_eff: Vec<RatVec> },
    Tower { base: ResolvedBase, stages: Vec<TowerStage> },
    Discriminant { base: ResolvedBase, bundle: SurfaceBundle },
    Semistable { base: ResolvedBase, bundle: SurfaceBundle, polarization: Option<RatVec> },
    Dualize { cone: Cone },
    Contains { cone: Cone, vector: RatVec },
}

// ---------------------------------------------------------------------------
// scalar / vector / matrix parsing

pub fn parse_json(text: &str, what: &str) -> Result<Value, CliError> {
    serde_json::from_str(text).map_err(|e| validation(format!("{what}: invalid JSON: {e}")))
}

pub fn rational_at(value: &Value, path: &str) -> Result<Rational, CliError> {
    match value {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(rational::int(i))
            } else if n.as_u64().is_some() {
                rational::parse(&n.to_string())
                    .ok_or_else(|| validation(format!("{path}: integer out of range")))
            } else {
                Err(validation(format!(
                    "{path}: floating-point values are not accepted; encode rationals as \"p/q\""
                )))
            }
        }
        Value::String(s) => rational::parse(s)
            .ok_or_else(|| validation(format!("{path}: malformed rational {s:?}"))),
        _ => Err(validation(format!(
            "{path}: expected an integer or a \"p/q\" string"
        ))),
    }
}

fn array_at<'a>(value: &'a Value, path: &str) -> Result<&'a [Value], CliError> {
    value
        .as_array()
        .map(Vec::as_slice)
        .ok_or_else(|| validation(format!("{path}: expected an array")))
}

pub fn rationals_at(value: &Value, path: &str) -> Result<Vec<Rational>, CliError> {
    array_at(value, path)?
        .iter()
        .enumerate()
        .map(|(i, v)| rational_at(v, &format!("{path}[{i}]")))
        .collect()
}

pub fn vector_at(value: &Value, path: &str) -> Result<RatVec, CliError> {
    Ok(RatVec::new(rationals_at(value, path)?))
}

pub fn vectors_at(value: &Value, path: &str) -> Result<Vec<RatVec>, CliError> {
    array_at(value, path)?
        .iter()
        .enumerate()
        .map(|(i, v)| vector_at(v, &format!("{path}[{i}]")))
        .collect()
}

pub fn u32_at(value: &Value, path: &str) -> Result<u32, CliError> {
    value
        .as_u64()
        .and_then(|n| u32::try_from(n).ok())
        .ok_or_else(|| validation(format!("{path}: expected a small nonnegative integer")))
}

pub fn hn_at(value: &Value, path: &str) -> Result<HnData, CliError> {
    let pairs = array_at(value, path)?
        .iter()
        .enumerate()
        .map(|(i, pair)| {
            let entry_path = format!("{path}[{i}]");
            let pair = array_at(pair, &entry_path)?;
            if pair.len() != 2 {
                return Err(validation(format!("{entry_path}: expected a [rank, slope] pair")));
            }
            let rank = u32_at(&pair[0], &format!("{entry_path}[0]"))?;
            let slope = rational_at(&pair[1], &format!("{entry_path}[1]"))?;
            Ok((rank, slope))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(HnData::new(pairs)?)
}

// ---------------------------------------------------------------------------
// bases

pub fn parse_base_str(text: &str) -> Result<ResolvedBase, CliError> {
    match text.trim() {
        "curve" => Ok(ResolvedBase {
            name: BaseName::CurveBase,
            lattice: SurfaceLattice::curve_base(),
        }),
        "builtin:p2" => Ok(ResolvedBase {
            name: BaseName::P2,
            lattice: SurfaceLattice::projective_plane(),
        }),
        "builtin:blowup-ruled-elliptic" => Ok(ResolvedBase {
            name: BaseName::BlowupRuledElliptic,
            lattice: SurfaceLattice::blowup_ruled_elliptic(0)?,
        }),
        s if s.starts_with('{') => {
            let value = parse_json(s, "base")?;
            base_at(&value, "base")
        }
        s if s.starts_with("builtin:") => Err(validation(format!(
            "unknown builtin base {:?}; available: builtin:p2, builtin:blowup-ruled-elliptic",
            s
        ))),
        path => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| validation(format!("base: cannot read {path:?}: {e}")))?;
            let value = parse_json(&text, path)?;
            base_at(&value, path)
        }
    }
}

pub fn base_at(value: &Value, path: &str) -> Result<ResolvedBase, CliError> {
    match value {
        Value::String(s) => parse_base_str(s),
        Value::Object(map) => {
            let forms = ["builtin", "curve", "surface-lattice"]
                .iter()
                .filter(|key| map.contains_key(**key))
                .count();
            if forms > 1 {
                return Err(validation(format!(
                    "{path}: exactly one base form is allowed"
                )));
            }
            if let Some(builtin) = map.get("builtin") {
                let name = builtin
                    .as_str()
                    .ok_or_else(|| validation(format!("{path}.builtin: expected a string")))?;
                return parse_base_str(&format!("builtin:{name}"));
            }
            if map.contains_key("curve") {
                return parse_base_str("curve");
            }
            let lattice = map.get("surface-lattice").ok_or_else(|| {
                validation(format!(
                    "{path}: expected \"builtin\", \"curve\", or \"surface-lattice\""
                ))
            })?;
            let lp = format!("{path}.surface-lattice");
            let obj = lattice
                .as_object()
                .ok_or_else(|| validation(format!("{lp}: expected an object")))?;
            let labels = obj
                .get("labels")
                .ok_or_else(|| validation(format!("{lp}.labels: missing")))?;
            let labels: Vec<String> = array_at(labels, &format!("{lp}.labels"))?
                .iter()
                .enumerate()
                .map(|(i, v)| {
                    v.as_str().map(String::from).ok_or_else(|| {
                        validation(format!("{lp}.labels[{i}]: expected a string"))
                    })
                })
                .collect::<Result<_, _>>()?;
            let gram_value = obj
                .get("gram")
                .ok_or_else(|| validation(format!("{lp}.gram: missing")))?;
            let gram = array_at(gram_value, &format!("{lp}.gram"))?
                .iter()
                .enumerate()
                .map(|(i, row)| rationals_at(row, &format!("{lp}.gram[{i}]")))
                .collect::<Result<Vec<_>, _>>()?;
            let curve_generators = match obj.get("curve-generators") {
                Some(v) => vectors_at(v, &format!("{lp}.curve-generators"))?,
                None => Vec::new(),
            };
            let ample = match obj.get("ample") {
                Some(v) => Some(vector_at(v, &format!("{lp}.ample"))?),
                None => None,
            };
            let lattice = SurfaceLattice::surface(labels, gram, curve_generators, ample)?;
            Ok(ResolvedBase {
                name: BaseName::Custom,
                lattice,
            })
        }
        _ => Err(validation(format!(
            "{path}: expected a base name or an object"
        ))),
    }
}

// ---------------------------------------------------------------------------
// bundles

pub fn parse_bundle_str(text: &str) -> Result<BundleSpec, CliError> {
    let text = text.trim();
    if let Some(rest) = text.strip_prefix("sum:") {
        let degrees = rest
            .split(',')
            .map(|part| {
                rational::parse(part)
                    .ok_or_else(|| validation(format!("bundle: malformed degree {part:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(BundleSpec::LineSum(degrees));
    }
    if let Some(rest) = text.strip_prefix("asserted:") {
        let mut rank = None;
        let mut degree = None;
        for part in rest.split(',') {
            match part.trim().split_once('=') {
                Some(("r", v)) => {
                    rank = Some(v.trim().parse::<u32>().map_err(|_| {
                        validation(format!("bundle: malformed rank {v:?} in asserted:..."))
                    })?)
                }
                Some(("d", v)) => {
                    degree = Some(rational::parse(v).ok_or_else(|| {
                        validation(format!("bundle: malformed degree {v:?} in asserted:..."))
                    })?)
                }
                _ => {
                    return Err(validation(format!(
                        "bundle: unknown field {part:?} in asserted:...; expected r=<rank>,d=<degree>"
                    )))
                }
            }
        }
        let rank = rank.ok_or_else(|| validation("bundle: asserted:... needs r=<rank>"))?;
        let degree = degree.ok_or_else(|| validation("bundle: asserted:... needs d=<degree>"))?;
        return Ok(BundleSpec::AssertedPullback { rank, degree });
    }
    if text.starts_with('{') {
        let value = parse_json(text, "bundle")?;
        return bundle_at(&value, "bundle");
    }
    Err(validation(format!(
        "bundle: unrecognized spec {text:?}; expected sum:<degrees>, asserted:r=..,d=.., or JSON"
    )))
}

pub fn bundle_at(value: &Value, path: &str) -> Result<BundleSpec, CliError> {
    if let Value::String(s) = value {
        return parse_bundle_str(s);
    }
    let obj = value
        .as_object()
        .ok_or_else(|| validation(format!("{path}: expected a bundle object")))?;
    let forms = ["hn", "line-sum", "surface-bundle", "asserted-pullback"]
        .iter()
        .filter(|key| obj.contains_key(**key))
        .count();
    if forms > 1 {
        return Err(validation(format!(
            "{path}: exactly one bundle form is allowed"
        )));
    }
    if let Some(v) = obj.get("hn") {
        return Ok(BundleSpec::Hn(hn_at(v, &format!("{path}.hn"))?));
    }
    if let Some(v) = obj.get("line-sum") {
        return Ok(BundleSpec::LineSum(rationals_at(v, &format!("{path}.line-sum"))?));
    }
    if let Some(v) = obj.get("asserted-pullback") {
        let p = format!("{path}.asserted-pullback");
        let inner = v
            .as_object()
            .ok_or_else(|| validation(format!("{p}: expected an object")))?;
        let rank = u32_at(
            inner.get("r").ok_or_else(|| validation(format!("{p}.r: missing")))?,
            &format!("{p}.r"),
        )?;
        let degree = rational_at(
            inner.get("d").ok_or_else(|| validation(format!("{p}.d: missing")))?,
            &format!("{p}.d"),
        )?;
        return Ok(BundleSpec::AssertedPullback { rank, degree });
    }
    if let Some(v) = obj.get("surface-bundle") {
        let p = format!("{path}.surface-bundle");
        let inner = v
            .as_object()
            .ok_or_else(|| validation(format!("{p}: expected an object")))?;
        if let Some(summands) = inner.get("summands") {
            let classes = vectors_at(summands, &format!("{p}.summands"))?
                .into_iter()
                .map(|v| v.into_entries())
                .collect();
            return Ok(BundleSpec::Summands(classes));
        }
        let rank = u32_at(
            inner.get("r").ok_or_else(|| validation(format!("{p}.r: missing")))?,
            &format!("{p}.r"),
        )?;
        let c1 = rationals_at(
            inner.get("c1").ok_or_else(|| validation(format!("{p}.c1: missing")))?,
            &format!("{p}.c1"),
        )?;
        let c2 = rational_at(
            inner.get("c2").ok_or_else(|| validation(format!("{p}.c2: missing")))?,
            &format!("{p}.c2"),
        )?;
        return Ok(BundleSpec::Invariants { rank, c1, c2 });
    }
    Err(validation(format!(
        "{path}: expected one of \"hn\", \"line-sum\", \"surface-bundle\", \"asserted-pullback\""
    )))
}

// ---------------------------------------------------------------------------
// tower stages

pub fn stages_at(
    value: &Value,
    path: &str,
    base: &ResolvedBase,
    asserted: bool,
) -> Result<Vec<TowerStage>, CliError> {
    array_at(value, path)?
        .iter()
        .enumerate()
        .map(|(i, stage)| {
            let sp = format!("{path}[{i}]");
            let obj = stage
                .as_object()
                .ok_or_else(|| validation(format!("{sp}: expected an object")))?;
            let bundle_value = obj
                .get("bundle")
                .ok_or_else(|| validation(format!("{sp}.bundle: missing")))?;
            let spec = bundle_at(bundle_value, &format!("{sp}.bundle"))?;
            let k = u32_at(
                obj.get("k").ok_or_else(|| validation(format!("{sp}.k: missing")))?,
                &format!("{sp}.k"),
            )?;
            let stage_asserted = match obj.get("asserted-semistable") {
                Some(Value::Bool(b)) => *b,
                Some(_) => {
                    return Err(validation(format!("{sp}.asserted-semistable: expected a boolean")))
                }
                None => asserted,
            };
            Ok(TowerStage {
                bundle: spec.resolve(base, stage_asserted)?,
                k,
            })
        })
        .collect()
}

/// Compact stage syntax for the command line: `bundle@k;bundle@k;…`.
pub fn parse_stages_str(
    text: &str,
    base: &ResolvedBase,
    asserted: bool,
) -> Result<Vec<TowerStage>, CliError> {
    let text = text.trim();
    if text.starts_with('[') {
        let value = parse_json(text, "stages")?;
        return stages_at(&value, "stages", base, asserted);
    }
    text.split(';')
        .map(|part| {
            let (bundle, k) = part
                .rsplit_once('@')
                .ok_or_else(|| validation(format!("stages: {part:?} is not <bundle>@<k>")))?;
            let spec = parse_bundle_str(bundle)?;
            let k = k
                .trim()
                .parse::<u32>()
                .map_err(|_| validation(format!("stages: malformed k in {part:?}")))?;
            Ok(TowerStage {
                bundle: spec.resolve(base, asserted)?,
                k,
            })
        })
        .collect()
}

// ---------------------------------------------------------------------------
// whole documents

/// Parses one batch document into an executable query.
pub fn parse_document(value: &Value) -> Result<Query, CliError> {
    let obj = value
        .as_object()
        .ok_or_else(|| validation("document: expected a JSON object"))?;
    match obj.get("version").and_then(Value::as_str) {
        Some(DOCUMENT_VERSION) => {}
        Some(v) => {
            return Err(validation(format!(
                "version: unrecognized version {v:?}; this build reads version \"{DOCUMENT_VERSION}\""
            )))
        }
        None => return Err(validation("version: missing or not a string")),
    }
    let asserted = match obj.get("asserted-semistable") {
        Some(Value::Bool(b)) => *b,
        Some(_) => return Err(validation("asserted-semistable: expected a boolean")),
        None => false,
    };
    let query = obj
        .get("query")
        .ok_or_else(|| validation("query: missing"))?
        .as_object()
        .ok_or_else(|| validation("query: expected an object"))?;
    let command = query
        .get("command")
        .and_then(Value::as_str)
        .ok_or_else(|| validation("query.command: missing or not a string"))?;

    let base = || -> Result<ResolvedBase, CliError> {
        base_at(
            obj.get("base").ok_or_else(|| validation("base: missing"))?,
            "base",
        )
    };
    let bundle_spec = || -> Result<BundleSpec, CliError> {
        bundle_at(
            obj.get("bundle").ok_or_else(|| validation("bundle: missing"))?,
            "bundle",
        )
    };
    let k = || -> Result<u32, CliError> {
        u32_at(
            query.get("k").ok_or_else(|| validation("query.k: missing"))?,
            "query.k",
        )
    };
    let base_eff = |base: &ResolvedBase| -> Result<Vec<RatVec>, CliError> {
        match query.get("base-eff") {
            Some(v) => vectors_at(v, "query.base-eff"),
            None => Ok(base.lattice.curve_generators().to_vec()),
        }
    };
    let input_cone = || -> Result<Cone, CliError> {
        cone_from_parts(
            query.get("gens").map(|v| vectors_at(v, "query.gens")).transpose()?,
            query
                .get("halfspaces")
                .map(|v| vectors_at(v, "query.halfspaces"))
                .transpose()?,
            query.get("dim").map(|v| u32_at(v, "query.dim")).transpose()?.map(|d| d as usize),
        )
    };

    match command {
        "hn" => {
            let degrees = match query.get("degrees") {
                Some(v) => rationals_at(v, "query.degrees")?,
                None => match bundle_spec()? {
                    BundleSpec::LineSum(d) => d,
                    _ => {
                        return Err(validation(
                            "hn: supply query.degrees or a line-sum bundle",
                        ))
                    }
                },
            };
            Ok(Query::Hn { degrees })
        }
        "theta" => Ok(Query::Theta { hn: bundle_spec()?.to_hn()?, k: k()? }),
        "zeta" => Ok(Query::Zeta { hn: bundle_spec()?.to_hn()?, k: k()? }),
        "curve-cones" => Ok(Query::CurveCones { hn: bundle_spec()?.to_hn()?, k: k()? }),
        "fiber-product" => {
            let second = hn_at(
                query.get("hn2").ok_or_else(|| validation("query.hn2: missing"))?,
                "query.hn2",
            )?;
            let k2 = u32_at(
                query.get("k2").ok_or_else(|| validation("query.k2: missing"))?,
                "query.k2",
            )?;
            Ok(Query::FiberProduct {
                first: bundle_spec()?.to_hn()?,
                k: k()?,
                second,
                k2,
            })
        }
        "eff" => {
            let base = base()?;
            let bundle = bundle_spec()?.resolve(&base, asserted)?;
            let base_eff = base_eff(&base)?;
            Ok(Query::Eff { base, bundle, k: k()?, base_eff })
        }
        "nef" => {
            let base = base()?;
            let bundle = bundle_spec()?.resolve(&base, asserted)?;
            Ok(Query::Nef { base, bundle, k: k()? })
        }
        "equality" => {
            let base = base()?;
            let bundle = bundle_spec()?.resolve(&base, asserted)?;
            let base_eff = base_eff(&base)?;
            Ok(Query::Equality { base, bundle, k: k()?, base_eff })
        }
        "tower" => {
            let base = base()?;
            let stages = stages_at(
                query.get("stages").ok_or_else(|| validation("query.stages: missing"))?,
                "query.stages",
                &base,
                asserted,
            )?;
            Ok(Query::Tower { base, stages })
        }
        "discriminant" => {
            let base = base()?;
            let bundle = bundle_spec()?.resolve(&base, asserted)?;
            Ok(Query::Discriminant { base, bundle })
        }
        "semistable" => {
            let base = base()?;
            let bundle = bundle_spec()?.resolve(&base, asserted)?;
            let polarization = query
                .get("polarization")
                .map(|v| vector_at(v, "query.polarization"))
                .transpose()?;
            Ok(Query::Semistable { base, bundle, polarization })
        }
        "dualize" => Ok(Query::Dualize { cone: input_cone()? }),
        "contains" => {
            let vector = vector_at(
                query.get("vector").ok_or_else(|| validation("query.vector: missing"))?,
                "query.vector",
            )?;
            Ok(Query::Contains { cone: input_cone()?, vector })
        }
        other => Err(validation(format!(
            "query.command: unknown command {other:?}"
        ))),
    }
}

/// Builds the input cone for `dualize`/`contains` from exactly one of a
/// generator or half-space list.
pub fn cone_from_parts(
    gens: Option<Vec<RatVec>>,
    halfspaces: Option<Vec<RatVec>>,
    dim: Option<usize>,
) -> Result<Cone, CliError> {
    let (vectors, is_gens) = match (gens, halfspaces) {
        (Some(g), None) => (g, true),
        (None, Some(h)) => (h, false),
        (Some(_), Some(_)) => {
            return Err(validation("supply either generators or halfspaces, not both"))
        }
        (None, None) => return Err(validation("supply generators or halfspaces")),
    };
    let dim = match dim {
        Some(d) => d,
        None => vectors
            .first()
            .map(RatVec::dim)
            .ok_or_else(|| validation("an empty vector list needs an explicit dim"))?,
    };
    let cone = if is_gens {
        Cone::from_generators(dim, vectors)
    } else {
        Cone::from_halfspaces(dim, vectors)
    };
    Ok(cone?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use grasscone_core::rational::int;

    #[test]
    fn rationals_accept_integers_and_strings_only() {
        assert_eq!(rational_at(&serde_json::json!(-3), "x").unwrap(), int(-3));
        assert_eq!(
            rational_at(&serde_json::json!("5/2"), "x").unwrap(),
            rational::ratio(5, 2)
        );
        assert!(rational_at(&serde_json::json!(1.5), "x").unwrap_err().message().contains("floating"));
        assert!(rational_at(&serde_json::json!(null), "x").is_err());
    }

    #[test]
    fn bundle_strings_parse() {
        match parse_bundle_str("sum:1,1/2").unwrap() {
            BundleSpec::LineSum(d) => assert_eq!(d, vec![int(1), rational::ratio(1, 2)]),
            other => panic!("unexpected {other:?}"),
        }
        match parse_bundle_str("asserted:r=2,d=1").unwrap() {
            BundleSpec::AssertedPullback { rank, degree } => {
                assert_eq!(rank, 2);
                assert_eq!(degree, int(1));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_bundle_str("garbage").is_err());
    }

    #[test]
    fn asserted_pullback_resolves_on_the_blowup() {
        let base = parse_base_str("builtin:blowup-ruled-elliptic").unwrap();
        let bundle = parse_bundle_str("asserted:r=2,d=1")
            .unwrap()
            .resolve(&base, false)
            .unwrap();
        assert_eq!(bundle.c1(), &RatVec::from_ints(&[1, 0, 1]));
        assert!(bundle.is_asserted_semistable());

        let p2 = parse_base_str("builtin:p2").unwrap();
        assert!(parse_bundle_str("asserted:r=2,d=1").unwrap().resolve(&p2, false).is_err());
    }

    #[test]
    fn document_paths_appear_in_errors() {
        let doc = serde_json::json!({
            "version": "1",
            "base": "builtin:p2",
            "bundle": {"line-sum": [1, 2.5]},
            "query": {"command": "discriminant"}
        });
        let err = parse_document(&doc).unwrap_err();
        assert!(err.message().contains("bundle.line-sum[1]"), "{}", err.message());
    }

    #[test]
    fn exactly_one_form_is_enforced() {
        let err = bundle_at(
            &serde_json::json!({"hn": [[1, 1]], "line-sum": [1]}),
            "bundle",
        )
        .unwrap_err();
        assert!(err.message().contains("exactly one bundle form"), "{}", err.message());

        let err = base_at(
            &serde_json::json!({"builtin": "p2", "curve": {}}),
            "base",
        )
        .unwrap_err();
        assert!(err.message().contains("exactly one base form"), "{}", err.message());
    }

    #[test]
    fn version_is_checked() {
        let doc = serde_json::json!({"version": "99", "query": {"command": "hn", "degrees": [1]}});
        assert!(parse_document(&doc).unwrap_err().message().contains("version"));
        let doc = serde_json::json!({"query": {"command": "hn", "degrees": [1]}});
        assert!(parse_document(&doc).unwrap_err().message().contains("version"));
    }

    #[test]
    fn custom_lattice_document() {
        let doc = serde_json::json!({
            "version": "1",
            "base": {"surface-lattice": {
                "labels": ["A", "B"],
                "gram": [[0, 1], [1, 0]],
                "curve-generators": [[1, 1]],
                "ample": [1, 1]
            }},
            "bundle": {"surface-bundle": {"summands": [[1, 0], [1, 0]]}},
            "query": {"command": "nef", "k": 1}
        });
        match parse_document(&doc).unwrap() {
            Query::Nef { base, bundle, k } => {
                assert_eq!(base.name, BaseName::Custom);
                assert_eq!(base.lattice.rho(), 2);
                assert_eq!(bundle.rank(), 2);
                assert_eq!(k, 1);
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
