//! Command-line front end: reads fan and divisor documents, runs the
//! verifiers and prints canonical JSON.
//!
//! Exit codes: 0 when the command succeeds and any checked property holds,
//! 1 when a checked property fails, 2 on invalid input.

mod doc;
mod pretty;

use std::ffi::OsString;
use std::io::Read;

use clap::{Parser, Subcommand, ValueEnum};
use moritoric::{
    canonical_divisor, cone_theorem_check, contract, fano_rho_one, find_short_wall, fujita_check,
    intersect, is_ample, mori_cone, pullback, q_cartier_basis, q_cartier_data, qfactorialize,
    weighted_projective, Error, Fan, FujitaMode, LatticeVector, Rational, ToricDivisor, Wall,
};
use serde_json::{json, Value};

pub use doc::{canonical, DivisorDocument, FanDocument};

/// A reportable input error, printed as `{"error": kind, "detail": ...}`.
#[derive(Debug)]
pub struct Failure {
    kind: String,
    detail: String,
    extra: Option<(String, Value)>,
}

impl Failure {
    pub fn new(kind: &str, detail: impl Into<String>) -> Self {
        Failure {
            kind: kind.into(),
            detail: detail.into(),
            extra: None,
        }
    }

    fn to_json(&self) -> Value {
        let mut v = json!({ "error": self.kind, "detail": self.detail });
        if let Some((k, x)) = &self.extra {
            v[k.as_str()] = x.clone();
        }
        v
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let kind = match &e {
            Error::ZeroVector => "zero_vector",
            Error::DependentGenerators => "dependent_generators",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::NotRectangular => "not_rectangular",
            Error::InvalidFan(_) => "invalid_fan",
            Error::NotComplete => "not_complete",
            Error::NonSimplicialCone(_) => "non_simplicial_cone",
            Error::NonSimplicialWall(_) => "non_simplicial_wall",
            Error::NotFullDimensional(_) => "not_full_dimensional",
            Error::DivisorLength { .. } => "divisor_length",
            Error::NotQCartier => "not_q_cartier",
            Error::NotCartier => "not_cartier",
            Error::NotARefinement => "not_a_refinement",
            Error::BadBoundary { .. } => "bad_boundary",
            Error::NotFanoRhoOne => "not_fano_rho_one",
            Error::NotExtremal { .. } => "not_extremal",
            Error::BadConfiguration(_) => "bad_configuration",
            Error::GenericityFailure(_) => "genericity_failure",
            Error::InvalidWeights(_) => "invalid_weights",
            Error::InvalidArgument(_) => "invalid_argument",
        };
        Failure::new(kind, e.to_string())
    }
}

#[derive(Parser)]
#[command(name = "moritoric", version, about = "Exact toric intersection theory")]
struct Cli {
    /// Render a human-readable table instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Nef,
    Ample,
}

/// Document arguments take a path, `-` for stdin, or inline JSON.
#[derive(Subcommand)]
enum Command {
    /// Check the fan axioms.
    Validate {
        #[arg(default_value = "-")]
        fan: String,
    },
    /// Completeness, simpliciality, smoothness, projectivity, Picard rank.
    Info {
        #[arg(default_value = "-")]
        fan: String,
    },
    /// Emit the fan of a weighted projective space.
    Wps {
        #[arg(long, value_delimiter = ',', required = true)]
        weights: Vec<u64>,
    },
    /// Build the Fano fan of Picard number one on n+1 vectors and look for a short wall.
    Fano {
        #[arg(long)]
        rays_file: String,
    },
    /// Intersect a divisor with every wall curve.
    Intersect {
        #[arg(default_value = "-")]
        fan: String,
        #[arg(long)]
        divisor: String,
    },
    /// Wall classes and extremal rays of the Mori cone.
    Mori {
        #[arg(default_value = "-")]
        fan: String,
    },
    /// Length bound for (K+D)-negative extremal rays.
    ConeTheorem {
        #[arg(default_value = "-")]
        fan: String,
        /// Boundary divisor; zero when omitted.
        #[arg(long)]
        boundary: Option<String>,
    },
    /// Positivity of K+D+L for L of large wall degree.
    Fujita {
        #[arg(default_value = "-")]
        fan: String,
        #[arg(long)]
        boundary: Option<String>,
        #[arg(long)]
        bundle: String,
        #[arg(long, value_enum, default_value = "nef")]
        mode: Mode,
    },
    /// Small projective Q-factorialization by a regular subdivision.
    Qfact {
        #[arg(default_value = "-")]
        fan: String,
        /// Defaults to MORITORIC_SEED, then 0.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Contract an extremal ray, by its index in `mori` output.
    Contract {
        #[arg(default_value = "-")]
        fan: String,
        #[arg(long)]
        ray: usize,
    },
    /// Pull a divisor back along a refinement.
    Pullback {
        /// The coarse fan.
        #[arg(default_value = "-")]
        fan: String,
        #[arg(long)]
        fine: String,
        #[arg(long)]
        divisor: String,
    },
}

struct Inputs<'a> {
    stdin: &'a mut dyn Read,
    used: bool,
}

impl Inputs<'_> {
    fn text(&mut self, arg: &str) -> Result<String, Failure> {
        let trimmed = arg.trim_start();
        if trimmed.starts_with('{') || trimmed.starts_with('[') {
            return Ok(arg.to_string());
        }
        if arg == "-" {
            if self.used {
                return Err(Failure::new("invalid_argument", "stdin can only be read once"));
            }
            self.used = true;
            let mut s = String::new();
            self.stdin
                .read_to_string(&mut s)
                .map_err(|e| Failure::new("io", format!("stdin: {e}")))?;
            return Ok(s);
        }
        std::fs::read_to_string(arg).map_err(|e| Failure::new("io", format!("{arg}: {e}")))
    }

    fn fan(&mut self, arg: &str) -> Result<Fan, Failure> {
        FanDocument::parse(&self.text(arg)?)?.to_fan()
    }

    fn divisor(&mut self, arg: &str, fan: &Fan) -> Result<ToricDivisor, Failure> {
        let d = DivisorDocument::parse(&self.text(arg)?)?.to_divisor()?;
        if d.len() != fan.num_rays() {
            return Err(Error::DivisorLength {
                expected: fan.num_rays(),
                found: d.len(),
            }
            .into());
        }
        Ok(d)
    }
}

/// Runs the command line `args` (including the program name) and returns
/// the exit code with everything destined for stdout.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => (0, e.to_string()),
                _ => {
                    let f = Failure::new("usage", e.to_string().trim_end());
                    (2, canonical(&f.to_json()))
                }
            };
        }
    };
    let mut inputs = Inputs { stdin, used: false };
    let (code, value) = match execute(cli.command, &mut inputs) {
        Ok((holds, v)) => (if holds { 0 } else { 1 }, v),
        Err(f) => (2, f.to_json()),
    };
    let text = if cli.pretty {
        pretty::render(&value)
    } else {
        canonical(&value)
    };
    (code, text)
}

fn wall_json(w: &Wall) -> Value {
    json!({ "left": w.left, "right": w.right, "tau": w.tau.rays() })
}

fn fan_json(fan: &Fan) -> Result<Value, Failure> {
    Ok(FanDocument::from_fan(fan, None)?.to_json())
}

fn env_seed() -> Result<u64, Failure> {
    match std::env::var("MORITORIC_SEED") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Failure::new("invalid_argument", format!("MORITORIC_SEED={s} is not a u64"))),
        Err(_) => Ok(0),
    }
}

type Outcome = Result<(bool, Value), Failure>;

fn execute(command: Command, io: &mut Inputs) -> Outcome {
    match command {
        Command::Validate { fan } => validate(io, &fan),
        Command::Info { fan } => info(&io.fan(&fan)?),
        Command::Wps { weights } => {
            let w = weighted_projective(&weights)?;
            let name = weights.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
            Ok((true, FanDocument::from_fan(&w.fan, Some(format!("P({name})")))?.to_json()))
        }
        Command::Fano { rays_file } => fano(io, &rays_file),
        Command::Intersect { fan, divisor } => {
            let fan = io.fan(&fan)?;
            let d = io.divisor(&divisor, &fan)?;
            let walls = fan
                .walls()?
                .iter()
                .map(|w| {
                    let mut v = wall_json(w);
                    v["degree"] = doc::rational(&intersect(&fan, &d, w)?);
                    Ok(v)
                })
                .collect::<Result<Vec<_>, Error>>()?;
            Ok((true, json!({ "walls": walls })))
        }
        Command::Mori { fan } => mori(&io.fan(&fan)?),
        Command::ConeTheorem { fan, boundary } => {
            let fan = io.fan(&fan)?;
            let d = match boundary {
                Some(b) => io.divisor(&b, &fan)?,
                None => ToricDivisor::zero(fan.num_rays()),
            };
            let r = cone_theorem_check(&fan, &d)?;
            let rays: Vec<Value> = r
                .rays
                .iter()
                .map(|x| {
                    json!({
                        "exception": x.exception,
                        "extremal_index": x.extremal_index,
                        "length": doc::rational(&x.length),
                        "max_length": doc::rational(&x.max_length),
                        "witness": wall_json(&x.witness),
                        "within_n": x.within_n,
                        "within_n_plus_one": x.within_n_plus_one,
                    })
                })
                .collect();
            Ok((
                r.holds,
                json!({ "dim": r.dim, "exception": r.exception, "holds": r.holds, "rays": rays }),
            ))
        }
        Command::Fujita {
            fan,
            boundary,
            bundle,
            mode,
        } => {
            let fan = io.fan(&fan)?;
            let d = match boundary {
                Some(b) => io.divisor(&b, &fan)?,
                None => ToricDivisor::zero(fan.num_rays()),
            };
            let l = io.divisor(&bundle, &fan)?;
            let mode = match mode {
                Mode::Nef => FujitaMode::Nef,
                Mode::Ample => FujitaMode::Ample,
            };
            let r = fujita_check(&fan, &d, &l, mode)?;
            Ok((
                r.holds,
                json!({
                    "exception": r.exception,
                    "holds": r.holds,
                    "hypothesis_met": r.hypothesis_met,
                    "min_degree": doc::rational(&r.min_degree),
                    "mode": if mode == FujitaMode::Nef { "nef" } else { "ample" },
                    "positive": r.positive,
                    "threshold": doc::rational(&r.threshold),
                }),
            ))
        }
        Command::Qfact { fan, seed } => {
            let fan = io.fan(&fan)?;
            let seed = match seed {
                Some(s) => s,
                None => env_seed()?,
            };
            let (fine, cert) = qfactorialize(&fan, seed)?;
            let subdivided: Vec<Value> = cert
                .subdivided
                .iter()
                .map(|s| {
                    json!({
                        "cells": s.cells.iter().map(|(c, m)| json!({
                            "cone": c.rays(),
                            "functional": doc::rationals(m),
                        })).collect::<Vec<_>>(),
                        "cone": s.cone,
                        "heights": s.heights.iter().map(|(r, h)| json!({
                            "height": doc::integer(h),
                            "ray": r,
                        })).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let valid = cert.validate(&fan, &fine);
            Ok((
                valid,
                json!({
                    "attempts": cert.attempts,
                    "certificate_valid": valid,
                    "fan": fan_json(&fine)?,
                    "seed": seed,
                    "subdivided": subdivided,
                }),
            ))
        }
        Command::Contract { fan, ray } => {
            let fan = io.fan(&fan)?;
            Ok((true, fan_json(&contract(&fan, ray)?)?))
        }
        Command::Pullback { fan, fine, divisor } => {
            let coarse = io.fan(&fan)?;
            let fine = io.fan(&fine)?;
            let d = io.divisor(&divisor, &coarse)?;
            let up = pullback(&coarse, &fine, &d)?;
            Ok((true, serde_json::to_value(DivisorDocument::from_divisor(&up)).expect("serializes")))
        }
    }
}

fn validate(io: &mut Inputs, arg: &str) -> Outcome {
    let document = FanDocument::parse(&io.text(arg)?)?;
    let violations = document.violations();
    if violations.is_empty() {
        return Ok((
            true,
            json!({
                "cones": document.cones.len(),
                "dim": document.dim,
                "rays": document.rays.len(),
                "valid": true,
            }),
        ));
    }
    let text: Vec<String> = violations.iter().map(ToString::to_string).collect();
    let mut f = Failure::new("invalid_fan", text[0].clone());
    f.extra = Some(("violations".into(), json!(text)));
    Err(f)
}

fn info(fan: &Fan) -> Outcome {
    let complete = fan.is_complete();
    let pure = fan.is_pure_full_dimensional();
    let rank = moritoric::lattice::rank_vectors(fan.rays());
    let picard_rank = if pure {
        q_cartier_basis(fan)
            .ok()
            .map(|b| Value::from(b.len().saturating_sub(rank)))
            .unwrap_or(Value::Null)
    } else {
        Value::Null
    };
    let projective = if complete && pure {
        Value::from(fan.is_projective()?.is_some())
    } else {
        Value::Bool(false)
    };
    let anti = canonical_divisor(fan).scale(&Rational::from_integer((-1).into()));
    let fano = complete
        && pure
        && q_cartier_data(fan, &anti)?.is_some()
        && is_ample(fan, &anti)?;
    Ok((
        true,
        json!({
            "complete": complete,
            "dim": fan.dim(),
            "fano": fano,
            "picard_rank": picard_rank,
            "projective": projective,
            "projective_space": fan.is_projective_space(),
            "rays": fan.num_rays(),
            "simplicial": fan.is_simplicial(),
            "smooth": fan.is_smooth(),
        }),
    ))
}

fn fano(io: &mut Inputs, arg: &str) -> Outcome {
    let value: Value = serde_json::from_str(&io.text(arg)?)
        .map_err(|e| Failure::new("invalid_document", e.to_string()))?;
    // Either a bare list of vectors or an object with a "rays" list.
    let list = match &value {
        Value::Object(m) => m.get("rays").cloned().unwrap_or(Value::Null),
        _ => value.clone(),
    };
    let rows: Vec<Vec<i64>> = serde_json::from_value(list)
        .map_err(|e| Failure::new("invalid_document", format!("rays: {e}")))?;
    let vectors: Vec<LatticeVector> = rows.iter().map(|r| LatticeVector::from_i64(r)).collect();
    let f = fano_rho_one(&vectors)?;
    let is_pn = f.fan.is_projective_space();
    let short = find_short_wall(&f.fan)?;
    let holds = is_pn || short.is_some();
    let short_json = match &short {
        Some(s) => json!({ "length": doc::rational(&s.length), "wall": wall_json(&s.wall) }),
        None => Value::Null,
    };
    Ok((
        holds,
        json!({
            "fan": fan_json(&f.fan)?,
            "holds": holds,
            "projective_space": is_pn,
            "relation": f.relation.iter().map(doc::integer).collect::<Vec<_>>(),
            "short_wall": short_json,
        }),
    ))
}

fn mori(fan: &Fan) -> Outcome {
    let r = mori_cone(fan)?;
    let walls: Vec<Value> = r
        .walls
        .iter()
        .zip(&r.classes)
        .map(|(w, c)| {
            let mut v = wall_json(w);
            v["class"] = doc::rationals(c);
            v
        })
        .collect();
    let extremal: Vec<Value> = r
        .extremal
        .iter()
        .map(|e| {
            json!({
                "anticanonical_max": doc::rational(&e.anticanonical_max),
                "anticanonical_min": doc::rational(&e.anticanonical_min),
                "class": doc::rationals(&e.class),
                "representative": e.representative,
                "walls": e.walls,
            })
        })
        .collect();
    let basis: Vec<Value> = r.basis.iter().map(|b| doc::rationals(b.coeffs())).collect();
    Ok((
        true,
        json!({
            "basis": basis,
            "extremal": extremal,
            "picard_rank": r.picard_rank,
            "walls": walls,
        }),
    ))
}
