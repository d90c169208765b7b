//! Command-line front end. Every subcommand reads one JSON document and
//! writes `{"status", "payload", "diagnostics"}`.
//!
//! Exit codes: 0 on success, 1 when an operation fails with a domain error
//! (the payload names it), 2 for malformed input or arguments.

use std::io::Read;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

use crate::dim1::{self, Dominance, ScalarForms};
use crate::equivalence::{
    lattice_equivalent, EquivalenceMode, EquivalenceOptions, EquivalenceVerdict, InvariantValues,
    DEFAULT_BUDGET, DEFAULT_HEIGHT, DEFAULT_RADIUS,
};
use crate::json::{
    complex_json, field, lattice_json, map_json, matrix_json, num, parse_complex, parse_lattice,
    parse_map, parse_matrix, parse_vector, reals_json, to_string, vector_json, DecodeError,
    InputError,
};
use crate::lattice::{
    normalize_lattice, rank_margin, same_lattice, sigma_membership, LatticeComparison,
};
use crate::numeric::Tolerance;
use crate::polar::{classify, gram, polar, sl_normalize, unitarily_equivalent};
use crate::reallinear::{RealLinearMap, Representation};
use crate::torus::{reduce, torus_add, TorusPoint};
use crate::Error;

#[derive(Debug, Parser)]
#[command(
    name = "cnlattice",
    version,
    about = "Real-linear maps, lattices and tori in C^n"
)]
struct Cli {
    /// Read the input document from this file instead of standard input
    #[arg(long = "in", global = true, value_name = "FILE")]
    input: Option<String>,
    #[arg(long, global = true, default_value_t = Tolerance::DEFAULT.rel)]
    tol_rel: f64,
    #[arg(long, global = true, default_value_t = Tolerance::DEFAULT.abs)]
    tol_abs: f64,
    /// Height bound of the Sigma search (lattice-equiv)
    #[arg(long, global = true, default_value_t = DEFAULT_HEIGHT)]
    height: u32,
    /// Radius of the short-vector refuter (lattice-equiv)
    #[arg(long, global = true, default_value_t = DEFAULT_RADIUS)]
    radius: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, Subcommand)]
enum Command {
    /// {"map", "z"} -> T(z)
    MapApply,
    /// {"map", "target"} -> the same map in another representation
    MapConvert,
    /// {"map"} -> invertibility from the realification
    MapInvertible,
    /// {"map"} -> whether |N z| < |M z| for all z != 0
    MapMajorizes,
    /// {"map"} -> T = G (z + conj(E z))
    MapNormalize,
    /// {"a"} -> A = U P
    Polar,
    /// {"a"} -> A* A
    Gram,
    /// {"a1", "a2"} -> unitary T with A2 = T A1, if any
    UnitaryEquiv,
    /// {"a"} -> A / det(A)^(1/n)
    SlNormalize,
    /// lattice -> rank margin
    LatticeValidate,
    /// lattice -> covolume
    LatticeCovolume,
    /// lattice -> permutation, A and period matrix Z
    LatticeNormalize,
    /// {"l1", "l2"} -> same lattice?
    LatticeSame,
    /// {"a1", "a2", "mode"?} -> equivalence verdict
    LatticeEquiv,
    /// {"b"} -> membership in Sigma
    SigmaCheck,
    /// {"lattice", "z"} -> point of C^n / L
    TorusReduce,
    /// {"lattice", "p", "q"} -> p + q in C^n / L
    TorusAdd,
    /// {"a", "b"} or {"alpha", "beta"} -> all scalar forms
    Dim1Forms,
}

/// Exit code and the exact bytes written to standard output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

enum Failure {
    Malformed(String),
    Domain(Error),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Malformed(e.0)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<DecodeError> for Failure {
    fn from(e: DecodeError) -> Self {
        match e {
            DecodeError::Input(e) => e.into(),
            DecodeError::Domain(e) => e.into(),
        }
    }
}

fn document(status: &str, payload: Value, diagnostics: Value) -> String {
    let mut s =
        to_string(&json!({ "status": status, "payload": payload, "diagnostics": diagnostics }));
    s.push('\n');
    s
}

fn malformed(message: String) -> Outcome {
    Outcome {
        code: 2,
        stdout: document(
            "error",
            json!({ "error": "MalformedInput", "message": message }),
            json!({}),
        ),
    }
}

/// Runs one invocation; `stdin` is read only when `--in` is absent.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Outcome {
                    code: 0,
                    stdout: e.to_string(),
                };
            }
            return malformed(e.to_string());
        }
    };
    let tol = match Tolerance::new(cli.tol_rel, cli.tol_abs) {
        Ok(t) => t,
        Err(e) => return malformed(e.to_string()),
    };
    let mut text = String::new();
    let read = match &cli.input {
        Some(path) => std::fs::read_to_string(path).map(|s| text = s),
        None => stdin.read_to_string(&mut text).map(|_| ()),
    };
    if let Err(e) = read {
        return malformed(format!("cannot read input: {e}"));
    }
    let input: Value = match serde_json::from_str(&text) {
        Ok(v) => v,
        Err(e) => return malformed(format!("invalid JSON: {e}")),
    };
    let mut diagnostics = Map::new();
    diagnostics.insert(
        "tol".into(),
        json!({ "rel": num(tol.rel), "abs": num(tol.abs) }),
    );
    match execute(&cli, &input, tol, &mut diagnostics) {
        Ok(payload) => Outcome {
            code: 0,
            stdout: document("ok", payload, Value::Object(diagnostics)),
        },
        Err(Failure::Malformed(message)) => malformed(message),
        Err(Failure::Domain(e)) => Outcome {
            code: 1,
            stdout: document(
                "error",
                json!({ "error": e.name(), "message": e.to_string() }),
                Value::Object(diagnostics),
            ),
        },
    }
}

fn matrix(input: &Value, key: &str) -> Result<crate::ComplexMatrix, Failure> {
    Ok(parse_matrix(field(input, key)?, key)?)
}

fn execute(
    cli: &Cli,
    input: &Value,
    tol: Tolerance,
    diag: &mut Map<String, Value>,
) -> Result<Value, Failure> {
    Ok(match cli.command {
        Command::MapApply => {
            let map = parse_map(field(input, "map")?)?;
            let z = parse_vector(field(input, "z")?, "z")?;
            json!({ "w": vector_json(&map.apply(&z)?) })
        }
        Command::MapConvert => {
            let map = parse_map(field(input, "map")?)?;
            let name = field(input, "target")?
                .as_str()
                .ok_or_else(|| InputError("\"target\" must be a string".into()))?;
            let target = Representation::from_name(name)
                .ok_or_else(|| InputError(format!("unknown representation \"{name}\"")))?;
            json!({ "map": map_json(&map.convert(target, tol)?) })
        }
        Command::MapInvertible => {
            let map = parse_map(field(input, "map")?)?;
            let sv = map.real_singular_values(tol);
            let invertible = map.is_invertible(tol);
            let ratio = match (sv.first(), sv.last()) {
                (Some(&max), Some(&min)) if max > 0.0 => min / max,
                _ => 0.0,
            };
            diag.insert("conditioning_ratio".into(), num(ratio));
            json!({ "invertible": invertible, "singular_values": reals_json(&sv) })
        }
        Command::MapMajorizes => {
            let map = parse_map(field(input, "map")?)?;
            let RealLinearMap::ConjugatePair(cp) =
                map.convert(Representation::ConjugatePair, tol)?
            else {
                unreachable!("conversion returns the requested representation")
            };
            let bound = cp.majorization(tol);
            diag.insert("boundary".into(), Value::Bool(bound.boundary));
            json!({ "majorizes": bound.holds, "norm_ratio": num(bound.value) })
        }
        Command::MapNormalize => {
            let map = parse_map(field(input, "map")?)?;
            let RealLinearMap::ConjugatePair(cp) =
                map.convert(Representation::ConjugatePair, tol)?
            else {
                unreachable!("conversion returns the requested representation")
            };
            let (g, nf) = cp.normalize_post_composition(tol)?;
            let report = nf.contraction(tol);
            diag.insert("contraction_boundary".into(), Value::Bool(report.boundary));
            json!({
                "prefactor": matrix_json(&g),
                "e": matrix_json(nf.e()),
                "contraction": { "holds": report.holds, "norm": num(report.norm) },
            })
        }
        Command::Polar => {
            let a = matrix(input, "a")?;
            let (u, p) = polar(&a, tol)?;
            diag.insert(
                "unitarity_defect".into(),
                num(classify(&u, tol)?.unitarity_defect),
            );
            json!({ "u": matrix_json(&u), "p": matrix_json(p.matrix()) })
        }
        Command::Gram => {
            let a = matrix(input, "a")?;
            json!({ "gram": matrix_json(gram(&a, tol)?.matrix()) })
        }
        Command::UnitaryEquiv => {
            let result = unitarily_equivalent(&matrix(input, "a1")?, &matrix(input, "a2")?, tol)?;
            diag.insert("gram_defect".into(), num(result.gram_defect));
            let mut payload = Map::new();
            payload.insert("equivalent".into(), Value::Bool(result.equivalent));
            if let Some(t) = &result.witness {
                payload.insert("witness".into(), matrix_json(t));
            }
            Value::Object(payload)
        }
        Command::SlNormalize => {
            let (a, delta) = sl_normalize(&matrix(input, "a")?, tol)?;
            json!({ "a": matrix_json(&a), "delta": complex_json(delta) })
        }
        Command::LatticeValidate => {
            let l = parse_lattice(input, tol)?;
            json!({ "valid": true, "rank_margin": num(rank_margin(l.generators())?) })
        }
        Command::LatticeCovolume => {
            let l = parse_lattice(input, tol)?;
            json!({ "covolume": num(l.covolume()) })
        }
        Command::LatticeNormalize => {
            let l = parse_lattice(input, tol)?;
            let normalized = normalize_lattice(&l, tol)?;
            json!({
                "permutation": normalized.permutation,
                "a": matrix_json(&normalized.a),
                "z": matrix_json(normalized.period.matrix()),
                "lattice": lattice_json(&normalized.period.lattice(tol)?),
            })
        }
        Command::LatticeSame => {
            let l1 = parse_lattice(field(input, "l1")?, tol)?;
            let l2 = parse_lattice(field(input, "l2")?, tol)?;
            match same_lattice(&l1, &l2, tol)? {
                LatticeComparison::Same { witness } => {
                    json!({ "same": true, "verdict": "Same", "witness": witness })
                }
                LatticeComparison::Different { reason } => {
                    diag.insert("reason".into(), Value::String(reason.into()));
                    json!({ "same": false, "verdict": "Different" })
                }
                LatticeComparison::Ambiguous { row, col, distance } => {
                    diag.insert(
                        "ambiguous_entry".into(),
                        json!({ "row": row, "col": col, "distance": num(distance) }),
                    );
                    json!({ "same": false, "verdict": "Ambiguous" })
                }
            }
        }
        Command::LatticeEquiv => {
            let a1 = matrix(input, "a1")?;
            let a2 = matrix(input, "a2")?;
            let mode = match input.get("mode") {
                None => EquivalenceMode::Unitary,
                Some(v) => {
                    let name = v.as_str().unwrap_or_default();
                    EquivalenceMode::from_name(name)
                        .ok_or_else(|| InputError(format!("unknown mode {v}")))?
                }
            };
            let options = EquivalenceOptions {
                height: cli.height,
                radius: cli.radius,
                budget: DEFAULT_BUDGET,
                tol,
            };
            let verdict = lattice_equivalent(&a1, &a2, mode, options)?;
            diag.insert("notes".into(), json!(verdict.diagnostics));
            verdict_json(&verdict, mode)
        }
        Command::SigmaCheck => {
            let b = sigma_membership(&matrix(input, "b")?, tol)?;
            json!({ "member": true, "inverse": matrix_json(&b.inverse()?.to_complex()) })
        }
        Command::TorusReduce => {
            let l = Arc::new(parse_lattice(field(input, "lattice")?, tol)?);
            let p = reduce(&l, &parse_vector(field(input, "z")?, "z")?, tol)?;
            point_json(&p)
        }
        Command::TorusAdd => {
            let l = Arc::new(parse_lattice(field(input, "lattice")?, tol)?);
            let p = reduce(&l, &parse_vector(field(input, "p")?, "p")?, tol)?;
            let q = reduce(&l, &parse_vector(field(input, "q")?, "q")?, tol)?;
            point_json(&torus_add(&p, &q, tol)?)
        }
        Command::Dim1Forms => dim1_json(input, tol, diag)?,
    })
}

fn point_json(p: &TorusPoint) -> Value {
    json!({ "rep": vector_json(p.rep()), "coords": reals_json(p.coords()) })
}

fn verdict_json(v: &EquivalenceVerdict, mode: EquivalenceMode) -> Value {
    let mut out = Map::new();
    out.insert("verdict".into(), Value::String(v.status.name().into()));
    out.insert("mode".into(), Value::String(mode.name().into()));
    out.insert("bound".into(), json!(v.bound));
    if let Some(r) = &v.refuter {
        let values = match &r.values {
            InvariantValues::Scalar(a, b) => json!([num(*a), num(*b)]),
            InvariantValues::Spectrum(a, b) => json!([reals_json(a), reals_json(b)]),
        };
        out.insert(
            "refuter".into(),
            json!({ "invariant": r.invariant.name(), "values": values }),
        );
    }
    if let Some(w) = &v.witness {
        let mut wit = Map::new();
        if let Some(t) = &w.t {
            wit.insert("t".into(), matrix_json(t));
        }
        wit.insert("unit".into(), complex_json(w.unit.to_complex()));
        wit.insert("b".into(), matrix_json(&w.b.to_complex()));
        out.insert("witness".into(), Value::Object(wit));
    }
    Value::Object(out)
}

fn dim1_json(
    input: &Value,
    tol: Tolerance,
    diag: &mut Map<String, Value>,
) -> Result<Value, Failure> {
    let get = |key: &str| -> Result<Option<crate::Complex>, Failure> {
        input
            .get(key)
            .map(|v| parse_complex(v, key))
            .transpose()
            .map_err(Failure::from)
    };
    let f = match (get("a")?, get("b")?, get("alpha")?, get("beta")?) {
        (Some(a), Some(b), None, None) => ScalarForms::from_ab(a, b),
        (None, None, Some(alpha), Some(beta)) => ScalarForms::from_alpha_beta(alpha, beta),
        _ => {
            return Err(InputError(
                "expected either {\"a\", \"b\"} or {\"alpha\", \"beta\"}".into(),
            )
            .into())
        }
    };
    let mut out = Map::new();
    out.insert("a".into(), complex_json(f.a));
    out.insert("b".into(), complex_json(f.b));
    out.insert("alpha".into(), complex_json(f.alpha));
    out.insert("beta".into(), complex_json(f.beta));
    if let Some((_, c)) = f.ac {
        out.insert("c".into(), complex_json(c));
    }
    if let Some((theta, mu)) = f.thetamu {
        out.insert("theta".into(), complex_json(theta));
        out.insert("mu".into(), complex_json(mu));
    }
    out.insert(
        "invertible".into(),
        Value::Bool(dim1::is_invertible_1d(&f, tol)),
    );
    let dominance = match f.classify(tol) {
        Dominance::Holomorphic => "holomorphic",
        Dominance::Antiholomorphic => "antiholomorphic",
        Dominance::Singular => "singular",
    };
    out.insert("dominance".into(), Value::String(dominance.into()));
    let (p, q) = (f.alpha.norm(), f.beta.norm());
    diag.insert(
        "margin".into(),
        num(if p + q > 0.0 {
            (p - q).abs() / (p + q)
        } else {
            0.0
        }),
    );
    Ok(Value::Object(out))
}
