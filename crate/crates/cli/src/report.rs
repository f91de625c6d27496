//! The full statistics report for one partial matrix.

use minrank::solutions::{lin_exact, min_rank_by_avoidance, opt_exact, Epsilon};
use minrank::{Error, PartialMatrix};
use serde::Serialize;

use crate::config::ToolConfig;
use crate::error::{ensure, CliError, CliResult};

pub const SKIPPED: &str = "skipped: limit";

/// A value, or the marker for a computation refused by a size limit.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Field<T> {
    Value(T),
    Skipped(&'static str),
}

impl<T> Field<T> {
    pub fn value(&self) -> Option<&T> {
        match self {
            Field::Value(v) => Some(v),
            Field::Skipped(_) => None,
        }
    }
}

fn field<T>(r: minrank::Result<T>) -> CliResult<Field<T>> {
    match r {
        Ok(v) => Ok(Field::Value(v)),
        Err(Error::LimitExceeded { .. }) => Ok(Field::Skipped(SKIPPED)),
        Err(e) => Err(e.into()),
    }
}

/// Field order is the output order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub m: usize,
    pub n: usize,
    pub stars: usize,
    pub minrk: usize,
    pub maxrk: Field<usize>,
    pub cov: usize,
    pub rowminrk: Field<usize>,
    pub colminrk: Field<usize>,
    pub star_monotone: bool,
    pub isolated: bool,
    pub strongly_isolated: bool,
    pub lin: Field<u128>,
    pub opt: Field<u64>,
    /// `null` when the min-rank is 0.
    pub epsilon: Field<Option<f64>>,
}

fn min_rank(a: &PartialMatrix, config: &ToolConfig) -> usize {
    // The avoidance search is far faster on tall matrices with many stars;
    // the completion search has no size limit.
    min_rank_by_avoidance(a, &config.limits).unwrap_or_else(|_| a.min_rank())
}

pub fn report(a: &PartialMatrix, config: &ToolConfig) -> CliResult<Report> {
    let limits = &config.limits;
    let pool = config.pool()?;
    let ((minrk, (maxrk, opt)), (rowminrk, colminrk)) = pool.install(|| {
        rayon::join(
            || {
                rayon::join(
                    || min_rank(a, config),
                    || {
                        rayon::join(
                            || a.max_rank(limits),
                            || opt_exact(a, limits).map(|(v, _)| v),
                        )
                    },
                )
            },
            || rayon::join(|| a.row_min_rank(limits), || a.col_min_rank(limits)),
        )
    });
    let lin = field(lin_exact(a, limits))?;
    if let Field::Value(l) = lin {
        ensure(a.n() >= minrk && l == 1u128 << (a.n() - minrk), || {
            format!("lin {l} differs from 2^(n - minrk) with minrk {minrk}")
        })?;
    }
    let opt = field(opt)?;
    let epsilon = match opt {
        Field::Value(o) => {
            if let Field::Value(l) = lin {
                ensure(u128::from(o) >= l, || format!("opt {o} below lin {l}"))?;
            }
            Field::Value(Epsilon::from_parts(a.n(), o, minrk).map(|e| e.value))
        }
        Field::Skipped(s) => Field::Skipped(s),
    };
    Ok(Report {
        m: a.m(),
        n: a.n(),
        stars: a.star_count(),
        minrk,
        maxrk: field(maxrk)?,
        cov: a.line_cover_number(),
        rowminrk: field(rowminrk)?,
        colminrk: field(colminrk)?,
        star_monotone: a.is_star_monotone(),
        isolated: a.isolation(false).is_some(),
        strongly_isolated: a.isolation(true).is_some(),
        lin,
        opt,
        epsilon,
    })
}

pub fn to_json(r: &Report) -> CliResult<String> {
    serde_json::to_string_pretty(r)
        .map_err(|e| CliError::Invariant(format!("report encoding: {e}")))
}
