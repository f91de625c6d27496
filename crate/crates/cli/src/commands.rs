//! Subcommand dispatch. Every command renders its whole output as a string
//! so that the caller decides where it goes.

use std::path::Path;

use minrank::circuits::{
    extract_linear_operator, linearize, linearize_middle, matrix_of, metrics, Depth2Circuit,
};
use minrank::codes::{
    code_matrix, gv_bound, hamming_bound, min_distance, verify_ka_is_ball, CodeMatrixSpec,
};
use minrank::pmx::{emit_pmx, parse_pmx};
use minrank::solutions::{lin_exact, opt_exact, ForbiddenSet};
use minrank::PartialMatrix;
use serde::Serialize;
use serde_json::json;

use crate::args::{CircuitCommand, CodeArgs, CodesCommand, Command};
use crate::config::ToolConfig;
use crate::error::{ensure, CliError, CliResult};
use crate::{report, search};

/// What a command produced: text for stdout (or `--out`) and an optional
/// note for stderr.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub note: Option<String>,
}

impl Output {
    fn text(text: String) -> Self {
        Self { text, note: None }
    }
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load_matrix(path: &Path) -> CliResult<PartialMatrix> {
    parse_pmx(&read(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load_circuit(path: &Path) -> CliResult<Depth2Circuit> {
    Depth2Circuit::from_json(&read(path)?)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("outputs always serialize");
    s.push('\n');
    s
}

fn rows(m: &minrank::Gf2Matrix) -> Vec<String> {
    m.rows().iter().map(ToString::to_string).collect()
}

fn pm_rows(a: &PartialMatrix) -> Vec<String> {
    a.rows().iter().map(ToString::to_string).collect()
}

pub fn run(command: &Command, config: &ToolConfig) -> CliResult<Output> {
    let limits = &config.limits;
    match command {
        Command::Report { file } => {
            let r = report::report(&load_matrix(file)?, config)?;
            Ok(Output::text(report::to_json(&r)? + "\n"))
        }
        Command::Minrank { file } => {
            let a = load_matrix(file)?;
            let (r, completion) = a.min_rank_completion();
            Ok(Output::text(pretty(&json!({
                "minrk": r,
                "completion": rows(&completion),
            }))))
        }
        Command::Opt { file } => {
            let a = load_matrix(file)?;
            let (opt, witness) = opt_exact(&a, limits)?;
            ensure(minrank::solutions::is_solution(&a, &witness), || {
                "opt witness is not a solution".into()
            })?;
            let members: Vec<String> = witness.members().iter().map(ToString::to_string).collect();
            Ok(Output::text(pretty(
                &json!({ "opt": opt, "witness": members }),
            )))
        }
        Command::Lin { file } => {
            let a = load_matrix(file)?;
            Ok(Output::text(pretty(
                &json!({ "lin": lin_exact(&a, limits)? }),
            )))
        }
        Command::Ka { file } => {
            let a = load_matrix(file)?;
            let k = ForbiddenSet::new(&a, limits);
            let members = k.members().ok_or_else(|| {
                CliError::Limit(format!(
                    "n = {} above the bitmap limit {}",
                    a.n(),
                    limits.bitmap_n
                ))
            })?;
            let members: Vec<String> = members.iter().map(ToString::to_string).collect();
            Ok(Output::text(pretty(
                &json!({ "size": members.len(), "members": members }),
            )))
        }
        Command::Search(args) => {
            let records = search::run(args, config)?;
            let summary = search::summarize(&records);
            Ok(Output {
                text: search::to_log(&records),
                note: Some(serde_json::to_string(&summary).expect("summary serializes")),
            })
        }
        Command::Circuit(c) => circuit(c, config),
        Command::Codes(c) => codes(c, config),
    }
}

fn circuit(command: &CircuitCommand, config: &ToolConfig) -> CliResult<Output> {
    let limits = &config.limits;
    match command {
        CircuitCommand::Check { file } => {
            let f = load_circuit(file)?;
            let met = metrics(&f);
            let operator = extract_linear_operator(&f, limits)?;
            let (a_f, min_rank) = match &operator {
                Some(_) => {
                    let a = matrix_of(&f, limits)?;
                    let r = a.min_rank();
                    (Some(pm_rows(&a)), Some(r))
                }
                None => (None, None),
            };
            Ok(Output::text(pretty(&json!({
                "n": f.n(),
                "m": f.m(),
                "width": met.width,
                "degree": met.degree,
                "match_size": met.match_size,
                "linear": operator.is_some(),
                "matrix": operator.as_ref().map(rows),
                "a_f": a_f,
                "min_rank": min_rank,
            }))))
        }
        CircuitCommand::Linearize { file, middle } => {
            let f = load_circuit(file)?;
            let g = if *middle {
                linearize_middle(&f, limits)?
            } else {
                linearize(&f, limits)?.to_circuit()?
            };
            ensure(
                extract_linear_operator(&g, limits)? == extract_linear_operator(&f, limits)?,
                || "linearized circuit computes a different map".into(),
            )?;
            Ok(Output::text(g.to_json() + "\n"))
        }
    }
}

fn spec(c: &CodeArgs) -> CliResult<CodeMatrixSpec> {
    Ok(CodeMatrixSpec::new(c.n, c.r)?)
}

fn codes(command: &CodesCommand, config: &ToolConfig) -> CliResult<Output> {
    let limits = &config.limits;
    match command {
        CodesCommand::Gen(c) => Ok(Output::text(emit_pmx(&code_matrix(spec(c)?, limits)?))),
        CodesCommand::Bounds(c) => {
            let s = spec(c)?;
            Ok(Output::text(pretty(&json!({
                "n": s.n,
                "r": s.r,
                "rows": s.row_count(),
                "hamming": hamming_bound(s.n, s.r)?,
                "gv": gv_bound(s.n, s.r)?,
            }))))
        }
        CodesCommand::Verify { code, opt } => {
            let s = spec(code)?;
            let ka_is_ball = verify_ka_is_ball(s, limits)?;
            ensure(ka_is_ball, || {
                format!("K_A of the ({}, {}) code matrix is not the ball", s.n, s.r)
            })?;
            let a = code_matrix(s, limits)?;
            let lin = lin_exact(&a, limits)?;
            let gv = gv_bound(s.n, s.r)?;
            ensure(lin >= gv, || format!("lin {lin} below the GV bound {gv}"))?;
            let mut out = json!({
                "n": s.n,
                "r": s.r,
                "ka_is_ball": ka_is_ball,
                "lin": lin,
                "gv": gv,
            });
            if *opt {
                let (value, witness) = opt_exact(&a, limits)?;
                let hamming = hamming_bound(s.n, s.r)?;
                let distance = min_distance(&witness);
                ensure(u128::from(value) <= hamming, || {
                    format!("opt {value} above the Hamming bound {hamming}")
                })?;
                ensure(distance.is_none_or(|d| d > s.r), || {
                    format!("witness has distance {distance:?}, need > {}", s.r)
                })?;
                out["opt"] = json!(value);
                out["hamming"] = json!(hamming);
                out["min_distance"] = json!(distance);
            }
            Ok(Output::text(pretty(&out)))
        }
    }
}
