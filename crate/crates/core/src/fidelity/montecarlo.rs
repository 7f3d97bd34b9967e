use super::{AverageFidelityResult, Method};
use crate::error::{Error, Result};
use crate::noise::{noisy_channel_state, ScenarioParams};
use crate::protocol::{CorrectionTable, Teleporter};
use crate::random::haar_random_state;

pub const MIN_MC_SAMPLES: usize = 100;

pub fn avg_fidelity_monte_carlo(s: &ScenarioParams, n: usize, seed: u64) -> Result<AverageFidelityResult> {
    avg_fidelity_monte_carlo_with(s, n, seed, CorrectionTable::standard())
}

/// Sample mean of the per-input fidelity over `n` Haar-random inputs, with
/// its standard error. Samples are reduced in index order.
pub fn avg_fidelity_monte_carlo_with(
    s: &ScenarioParams,
    n: usize,
    seed: u64,
    table: CorrectionTable,
) -> Result<AverageFidelityResult> {
    if n < MIN_MC_SAMPLES {
        return Err(Error::Config(format!(
            "Monte Carlo needs at least {MIN_MC_SAMPLES} samples, got {n}"
        )));
    }
    let teleporter = Teleporter::new(&noisy_channel_state(s)?, table)?;
    let fidelities: Vec<f64> = (0..n as u64)
        .map(|i| teleporter.fidelity_unchecked(haar_random_state(4, seed, i).amplitudes()))
        .collect();
    let mean = fidelities.iter().sum::<f64>() / n as f64;
    let var = fidelities.iter().map(|f| (f - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    Ok(AverageFidelityResult {
        value: mean,
        method: Method::MonteCarlo,
        samples_or_nodes: n,
        std_error: Some((var / n as f64).sqrt()),
    })
}
