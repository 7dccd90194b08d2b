use serde::Serialize;
use trigal_core::mixing::{
    build_chain, decomposition_check, dsc_bound, exact_matrix, fit_log_slope, second_eigenvalue,
    sparse_mul, sparse_transpose, support_diameter, ChainId,
};
use trigal_core::model::ModelConfig;

use super::Outcome;
use crate::error::CliError;
use crate::output::Checks;
use crate::parallel;
use crate::records::emit_curve;

/// Exact rational identities are only attempted below this many states.
const EXACT_STATE_LIMIT: u64 = 5_000;

#[derive(Clone, Debug)]
pub struct MixingParams {
    pub model: ModelConfig,
    pub p: u64,
    pub lambda: u64,
    pub chain: ChainId,
    pub steps: u64,
    /// Step budget for the first-chain distance to reach `target`.
    pub horizon: u64,
    pub target: f64,
}

impl MixingParams {
    pub fn bernoulli(p: u64) -> Self {
        Self {
            model: ModelConfig::bernoulli(1),
            p,
            lambda: 0,
            chain: ChainId::Four,
            steps: 2000,
            horizon: 5000,
            target: 1e-3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectralRow {
    pub value: f64,
    pub lambda2: Option<f64>,
    pub lambda_min: Option<f64>,
    pub iterations: u64,
    pub residual: f64,
    pub converged: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TailFit {
    pub first_below_target: Option<u64>,
    pub window: Option<(u64, u64)>,
    pub slope: Option<f64>,
    pub r_squared: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MixingReport {
    pub p: u64,
    pub lambda: u64,
    pub states: u64,
    pub chain: u8,
    pub steps: u64,
    pub final_distance: f64,
    pub exact_identities: Option<bool>,
    pub alpha: String,
    pub decomposition_nonnegative: bool,
    pub decomposition_rows_sum_to_one: bool,
    pub diameter: u32,
    pub dsc_bound: f64,
    pub spectral: SpectralRow,
    pub first_chain: TailFit,
}

/// Fits `ln d` against `n` from the first step below `1e-2` up to the first
/// below `1e-8` (or the end of the curve).
fn tail_fit(curve: &[f64], target: f64) -> TailFit {
    let first_below = |t: f64| curve.iter().position(|&d| d < t);
    let start = first_below(1e-2);
    let end = first_below(1e-8).unwrap_or(curve.len());
    let window = start.filter(|&s| end >= s + 3).map(|s| (s, end));
    let (slope, r_squared) = match window {
        Some((s, e)) => {
            let pts: Vec<(f64, f64)> = (s..e).map(|i| (i as f64, curve[i])).collect();
            let (slope, r2) = fit_log_slope(&pts);
            (Some(slope), Some(r2))
        }
        None => (None, None),
    };
    TailFit {
        first_below_target: first_below(target).map(|i| i as u64),
        window: window.map(|(s, e)| (s as u64, e as u64)),
        slope,
        r_squared,
    }
}

pub fn mixing(params: &MixingParams) -> Result<Outcome<MixingReport>, CliError> {
    let chain = |id| build_chain(&params.model, id, &[params.p], &[params.lambda]);
    let (c1, c2, c3, c4) = (chain(ChainId::One)?, chain(ChainId::Two)?, chain(ChainId::Three)?, chain(ChainId::Four)?);

    let exact_identities = (c1.states() <= EXACT_STATE_LIMIT)
        .then(|| -> Result<bool, CliError> {
            let m1 = exact_matrix(&c1)?;
            let cube = sparse_mul(&sparse_mul(&m1, &m1), &m1);
            let sym = sparse_mul(&sparse_transpose(&cube), &cube);
            Ok(cube == exact_matrix(&c2)? && sym == exact_matrix(&c3)?)
        })
        .transpose()?;

    let decomposition = decomposition_check(&c3, &c4)?;
    let diameter = support_diameter(&c4)?;
    let bound = dsc_bound(1.0, diameter);
    let spectral = second_eigenvalue(&c4)?;

    let requested = chain(params.chain)?;
    let curve = parallel::decay_curve(&requested, params.steps)?;
    let first = if params.chain == ChainId::One && params.steps >= params.horizon {
        curve[..=params.horizon as usize].to_vec()
    } else {
        parallel::decay_curve(&c1, params.horizon)?
    };
    let fit = tail_fit(&first, params.target);

    let mut checks = Checks::default();
    if let Some(ok) = exact_identities {
        checks.add("exact_identities", ok);
    }
    checks.add("decomposition", decomposition.pass());
    let eig_ok = spectral.converged
        && [spectral.lambda2, spectral.lambda_min]
            .iter()
            .all(|l| l.is_some_and(|l| l.abs() <= bound + 1e-9));
    checks.add("dsc_bound", eig_ok);
    checks.add("d1_reaches_target", fit.first_below_target.is_some());
    checks.add("tail_slope_negative", fit.slope.is_some_and(|s| s < 0.0));
    checks.add("tail_fit_r2", fit.r_squared.is_some_and(|r| r >= 0.99));

    let report = MixingReport {
        p: params.p,
        lambda: params.lambda,
        states: c1.states(),
        chain: params.chain.index(),
        steps: params.steps,
        final_distance: *curve.last().expect("curve includes step 0"),
        exact_identities,
        alpha: decomposition.alpha.to_string(),
        decomposition_nonnegative: decomposition.nonnegative,
        decomposition_rows_sum_to_one: decomposition.rows_sum_to_one,
        diameter,
        dsc_bound: bound,
        spectral: SpectralRow {
            value: spectral.value,
            lambda2: spectral.lambda2,
            lambda_min: spectral.lambda_min,
            iterations: spectral.iterations,
            residual: spectral.residual,
            converged: spectral.converged,
        },
        first_chain: fit,
    };
    Ok(Outcome::new(checks, report).with_file("decay.csv", emit_curve(&curve)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tail_fit_of_exact_exponential() {
        let curve: Vec<f64> = (0..400).map(|n| 2.0 * 0.9f64.powi(n)).collect();
        let fit = tail_fit(&curve, 1e-3);
        assert!((fit.slope.unwrap() - 0.9f64.ln()).abs() < 1e-12);
        assert!(fit.r_squared.unwrap() > 0.999_999);
        let (s, e) = fit.window.unwrap();
        assert!(curve[s as usize] < 1e-2 && curve[e as usize] < 1e-8 && curve[e as usize - 1] >= 1e-8);
    }
}
