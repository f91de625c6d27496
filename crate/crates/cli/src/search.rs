//! Seeded searches over matrices of one shape, logged as JSON lines.

use std::time::Instant;

use minrank::solutions::{lin_exact, opt_exact, Epsilon};
use minrank::{Entry, PartialMatrix, PartialRow};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::args::{SearchArgs, SearchMode};
use crate::config::ToolConfig;
use crate::error::{ensure, CliError, CliResult};

/// Largest number of matrices an exhaustive search may enumerate.
pub const EXHAUSTIVE_LIMIT: u64 = 10_000_000;

pub const FLAG: &str = "COUNTEREXAMPLE-CANDIDATE";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchRecord {
    pub index: u64,
    pub matrix: Vec<String>,
    pub n: usize,
    pub m: usize,
    pub stars: usize,
    pub minrk: usize,
    pub opt: u64,
    pub lin: u128,
    pub epsilon: Option<Epsilon>,
    pub seed: Option<u64>,
    pub version: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flag: Option<&'static str>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub records: usize,
    pub min_epsilon: Option<f64>,
    pub argmin: Option<u64>,
    pub flagged: usize,
}

const ENTRIES: [Entry; 3] = [Entry::Zero, Entry::One, Entry::Star];

fn from_code(mut code: u64, m: usize, n: usize) -> PartialMatrix {
    let rows = (0..m)
        .map(|_| {
            let entries: Vec<Entry> = (0..n)
                .map(|_| {
                    let e = ENTRIES[(code % 3) as usize];
                    code /= 3;
                    e
                })
                .collect();
            PartialRow::from_entries(&entries)
        })
        .collect();
    PartialMatrix::new(n, rows).expect("rows have length n")
}

/// Rows in non-decreasing order of their text: the least serialization
/// among all row orders.
fn is_canonical(a: &PartialMatrix) -> bool {
    let rows: Vec<String> = a.rows().iter().map(ToString::to_string).collect();
    rows.windows(2).all(|w| w[0] <= w[1])
}

/// One representative per row-permutation class, in enumeration order.
pub fn exhaustive_matrices(m: usize, n: usize) -> CliResult<Vec<PartialMatrix>> {
    let total = u32::try_from(m * n)
        .ok()
        .and_then(|cells| 3u64.checked_pow(cells))
        .filter(|&t| t <= EXHAUSTIVE_LIMIT)
        .ok_or_else(|| {
            CliError::Limit(format!(
                "3^{} matrices of shape {m}x{n} above {EXHAUSTIVE_LIMIT}",
                m * n
            ))
        })?;
    Ok((0..total)
        .map(|code| from_code(code, m, n))
        .filter(is_canonical)
        .collect())
}

/// The `index`-th random matrix for `seed`; independent of evaluation order.
pub fn random_matrix(seed: u64, index: u64, m: usize, n: usize) -> PartialMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let rows = (0..m)
        .map(|_| {
            let entries: Vec<Entry> = (0..n).map(|_| ENTRIES[rng.gen_range(0..3)]).collect();
            PartialRow::from_entries(&entries)
        })
        .collect();
    PartialMatrix::new(n, rows).expect("rows have length n")
}

pub fn evaluate(
    a: &PartialMatrix,
    index: u64,
    seed: Option<u64>,
    args: &SearchArgs,
    config: &ToolConfig,
) -> CliResult<SearchRecord> {
    let start = Instant::now();
    let minrk = a.min_rank();
    let (opt, _) = opt_exact(a, &config.limits)?;
    let lin = lin_exact(a, &config.limits)?;
    ensure(lin == 1u128 << (a.n() - minrk), || {
        format!("record {index}: lin {lin} but minrk {minrk}")
    })?;
    ensure(u128::from(opt) >= lin, || {
        format!("record {index}: opt {opt} below lin {lin}")
    })?;
    let epsilon = Epsilon::from_parts(a.n(), opt, minrk);
    let flag = epsilon.filter(|e| e.value < args.alarm).map(|_| FLAG);
    Ok(SearchRecord {
        index,
        matrix: a.rows().iter().map(ToString::to_string).collect(),
        n: a.n(),
        m: a.m(),
        stars: a.star_count(),
        minrk,
        opt,
        lin,
        epsilon,
        seed,
        version: env!("CARGO_PKG_VERSION"),
        elapsed_ms: args.timing.then(|| start.elapsed().as_millis() as u64),
        flag,
    })
}

/// Evaluates every matrix of the search; records come back sorted by index.
pub fn run(args: &SearchArgs, config: &ToolConfig) -> CliResult<Vec<SearchRecord>> {
    let (m, n) = args.shape;
    if n > config.limits.opt_n {
        return Err(CliError::Limit(format!(
            "n = {n} above the opt limit {}",
            config.limits.opt_n
        )));
    }
    let pool = config.pool()?;
    let records: CliResult<Vec<SearchRecord>> = match args.mode {
        SearchMode::Exhaustive => {
            let all = exhaustive_matrices(m, n)?;
            pool.install(|| {
                all.par_iter()
                    .enumerate()
                    .map(|(i, a)| evaluate(a, i as u64, None, args, config))
                    .collect()
            })
        }
        SearchMode::Random => pool.install(|| {
            (0..args.count)
                .into_par_iter()
                .map(|i| {
                    evaluate(
                        &random_matrix(config.seed, i, m, n),
                        i,
                        Some(config.seed),
                        args,
                        config,
                    )
                })
                .collect()
        }),
    };
    records
}

pub fn summarize(records: &[SearchRecord]) -> Summary {
    let mut best: Option<(f64, u64)> = None;
    for r in records {
        if let Some(e) = r.epsilon {
            if best.is_none_or(|(b, _)| e.value < b) {
                best = Some((e.value, r.index));
            }
        }
    }
    Summary {
        records: records.len(),
        min_epsilon: best.map(|b| b.0),
        argmin: best.map(|b| b.1),
        flagged: records.iter().filter(|r| r.flag.is_some()).count(),
    }
}

/// One JSON object per line.
pub fn to_log(records: &[SearchRecord]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&serde_json::to_string(r).expect("records always serialize"));
        out.push('\n');
    }
    out
}
