use std::path::PathBuf;

use minrank::Limits;

use crate::args::GlobalOpts;
use crate::error::{CliError, CliResult};

#[derive(Debug, Clone)]
pub struct ToolConfig {
    pub limits: Limits,
    pub threads: usize,
    pub seed: u64,
    pub out: Option<PathBuf>,
}

impl Default for ToolConfig {
    fn default() -> Self {
        Self {
            limits: Limits::default(),
            threads: 1,
            seed: 0,
            out: None,
        }
    }
}

impl ToolConfig {
    pub fn from_opts(opts: &GlobalOpts) -> CliResult<Self> {
        if opts.limit_n == 0 {
            return Err(CliError::Input("--limit-n must be positive".into()));
        }
        Ok(Self {
            limits: Limits {
                opt_n: opts.limit_n,
                ..Limits::default()
            },
            threads: opts.threads,
            seed: opts.seed,
            out: opts.out.clone(),
        })
    }

    pub fn pool(&self) -> CliResult<rayon::ThreadPool> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.threads)
            .build()
            .map_err(|e| CliError::Input(format!("thread pool: {e}")))
    }
}
