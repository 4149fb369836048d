//! Semi-parametric bootstrap p-value for the power-law hypothesis.

use super::powerlaw::{fit_powerlaw, PowerLawFit};
use super::FitError;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub const DEFAULT_BOOTSTRAPS: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GofResult {
    /// Fraction of synthetic KS distances strictly above `observed_ks`.
    pub pvalue: f64,
    pub bootstraps: usize,
    pub observed_ks: f64,
    /// Replicates whose refit failed (counted as not exceeding).
    pub failed_refits: usize,
}

/// Each replicate draws n values: from the fitted tail law with probability
/// ntail / n, otherwise uniformly from the observed values below x_min. The
/// replicate is refit from scratch (x_min included) and its own KS distance is
/// compared against the observed one. Replicate r uses seed `seed + r`.
pub fn gof_pvalue(data: &[u64], fit: &PowerLawFit, bootstraps: usize, seed: u64) -> Result<GofResult, FitError> {
    if bootstraps < 1 {
        return Err(FitError::InvalidB);
    }
    let law = fit.law();
    let body: Vec<u64> = data.iter().copied().filter(|&x| x < fit.xmin).collect();
    let n = data.len();
    let p_tail = fit.ntail as f64 / n as f64;
    let outcomes: Vec<Option<f64>> = (0..bootstraps as u64)
        .into_par_iter()
        .map_init(
            || Vec::with_capacity(n),
            |synthetic, r| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(r));
                synthetic.clear();
                for _ in 0..n {
                    let x = if body.is_empty() || rng.gen::<f64>() < p_tail {
                        law.sample(&mut rng)
                    } else {
                        body[rng.gen_range(0..body.len())]
                    };
                    synthetic.push(x);
                }
                fit_powerlaw(synthetic).ok().map(|f| f.ks)
            },
        )
        .collect();
    let exceed = outcomes.iter().filter(|d| matches!(d, Some(d) if *d > fit.ks)).count();
    let failed_refits = outcomes.iter().filter(|d| d.is_none()).count();
    Ok(GofResult {
        pvalue: exceed as f64 / bootstraps as f64,
        bootstraps,
        observed_ks: fit.ks,
        failed_refits,
    })
}
