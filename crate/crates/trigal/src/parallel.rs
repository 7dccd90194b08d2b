//! Thread-pool drivers for the sequential kernels of `trigal-core`.
//!
//! Results are always gathered in input order, so the output of every
//! function here is independent of the number of threads.

use rayon::prelude::*;
use trigal_core::harness::{
    self, chebotarev_record, ChebotarevPlan, ChebotarevRun, SampleReport, SampleSettings,
};
use trigal_core::mixing::{ChainSpec, DistVector, Operator, DEFAULT_STATE_CAP};
use trigal_core::model::ModelConfig;
use trigal_core::{IntPoly, Result};

use crate::error::CliError;

/// A fixed-size worker pool.
pub struct Workers {
    pool: rayon::ThreadPool,
}

impl Workers {
    pub fn new(threads: usize) -> std::result::Result<Self, CliError> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads.max(1))
            .build()
            .map_err(|e| CliError::Config(format!("threads: {e}")))?;
        Ok(Self { pool })
    }

    pub fn threads(&self) -> usize {
        self.pool.current_num_threads()
    }

    pub fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        self.pool.install(f)
    }
}

/// Maps `f` over `items` on the current pool, keeping input order.
pub fn map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    items.par_iter().map(f).collect()
}

/// [`harness::run_chebotarev`] with the primes spread over the pool.
pub fn chebotarev(f: &IntPoly, plan: &ChebotarevPlan) -> Result<ChebotarevRun> {
    let (used, skipped) = plan.primes()?;
    let records = used.par_iter().map(|&p| chebotarev_record(f, p)).collect::<Result<Vec<_>>>()?;
    Ok(ChebotarevRun::assemble(plan, records, skipped))
}

/// Analyses samples `0..samples`, parallel over samples and over the primes
/// of each sample.
pub fn population(
    model: &ModelConfig,
    seed: u64,
    samples: u64,
    settings: &SampleSettings,
) -> Result<Vec<SampleReport>> {
    (0..samples)
        .into_par_iter()
        .map(|i| harness::analyze_sample_with(model, seed, i, settings, chebotarev))
        .collect()
}

const CHUNK: usize = 1 << 12;

/// `d(0), ..., d(steps)` with each operator application split into chunks.
pub fn decay_curve(spec: &ChainSpec, steps: u64) -> Result<Vec<f64>> {
    let op = Operator::new(spec, DEFAULT_STATE_CAP)?;
    let mut cur = DistVector::point_mass(op.states(), spec.group().identity_rank() as usize);
    let mut next = vec![0.0; op.states()];
    let mut out = Vec::with_capacity(steps as usize + 1);
    out.push(cur.l1_to_uniform());
    for _ in 0..steps {
        next.par_chunks_mut(CHUNK)
            .enumerate()
            .for_each(|(i, dst)| op.apply_range(&cur.probs, dst, i * CHUNK));
        std::mem::swap(&mut cur.probs, &mut next);
        out.push(cur.l1_to_uniform());
    }
    Ok(out)
}
