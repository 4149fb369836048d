//! Discrete alternative tail models and likelihood-ratio comparison against
//! the fitted power law.
//!
//! Every alternative is fit by maximum likelihood on the same tail (x ≥ x_min)
//! as the power law. Non-nested alternatives are compared with Vuong's
//! normalized ratio and a two-sided normal p-value; the truncated power law
//! nests the pure power law, so it gets the plain ratio with a chi-squared(1)
//! p-value.

use super::optimize::{brent_max, nelder_mead_max};
use super::powerlaw::PowerLawFit;
use super::zeta::hurwitz_zeta;
use super::FitError;
use serde::{Deserialize, Serialize};
use libm::erfc;
use statrs::function::gamma::ln_gamma;
use std::f64::consts::{PI, SQRT_2};
use std::fmt;

pub const DEFAULT_SIGNIFICANCE: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Alternative {
    Exponential,
    LogNormal,
    StretchedExponential,
    Poisson,
    PowerlawCutoff,
}

impl Alternative {
    pub const ALL: [Alternative; 5] = [
        Alternative::Exponential,
        Alternative::LogNormal,
        Alternative::StretchedExponential,
        Alternative::Poisson,
        Alternative::PowerlawCutoff,
    ];

    pub fn is_nested(self) -> bool {
        self == Alternative::PowerlawCutoff
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Alternative::Exponential => "exponential",
            Alternative::LogNormal => "log-normal",
            Alternative::StretchedExponential => "stretched-exponential",
            Alternative::Poisson => "poisson",
            Alternative::PowerlawCutoff => "powerlaw-cutoff",
        }
    }
}

impl fmt::Display for Alternative {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    FavorsPowerlaw,
    FavorsAlternative,
    Undecided,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::FavorsPowerlaw => "favors-powerlaw",
            Verdict::FavorsAlternative => "favors-alternative",
            Verdict::Undecided => "undecided",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlternativeComparison {
    pub alternative: Alternative,
    /// Positive favours the power law. Vuong-normalized for non-nested
    /// alternatives; the raw log-likelihood difference for the nested cutoff.
    pub logratio: f64,
    pub pvalue: f64,
    pub verdict: Verdict,
    /// Fitted parameters of the alternative, in the order documented on [`TailModel`].
    pub params: Vec<f64>,
    /// Set when the alternative could not be fit; the row then carries no evidence.
    pub error: Option<String>,
}

/// A fitted discrete distribution on {x_min, x_min + 1, ...}.
#[derive(Debug, Clone, PartialEq)]
pub enum TailModel {
    /// P(x) ∝ x^(−α).
    PowerLaw { alpha: f64, xmin: u64 },
    /// P(x) = (1 − e^(−λ)) e^(−λ (x − x_min)).
    Exponential { lambda: f64, xmin: u64 },
    /// Mass of a continuous log-normal(μ, σ) on [x, x + 1), renormalized above x_min.
    LogNormal { mu: f64, sigma: f64, xmin: u64 },
    /// Weibull survival S(x) = exp(−(x / scale)^β), discretized as S(x) − S(x + 1).
    StretchedExponential { scale: f64, beta: f64, xmin: u64 },
    /// Poisson(μ) conditioned on x ≥ x_min.
    Poisson { mu: f64, xmin: u64 },
    /// P(x) ∝ x^(−α) e^(−λ x).
    PowerlawCutoff { alpha: f64, lambda: f64, xmin: u64 },
}

impl TailModel {
    pub fn params(&self) -> Vec<f64> {
        match *self {
            TailModel::PowerLaw { alpha, .. } => vec![alpha],
            TailModel::Exponential { lambda, .. } => vec![lambda],
            TailModel::LogNormal { mu, sigma, .. } => vec![mu, sigma],
            TailModel::StretchedExponential { scale, beta, .. } => vec![scale, beta],
            TailModel::Poisson { mu, .. } => vec![mu],
            TailModel::PowerlawCutoff { alpha, lambda, .. } => vec![alpha, lambda],
        }
    }

    /// Log-probability of every tail observation.
    pub fn pointwise_loglik(&self, tail: &[u64]) -> Vec<f64> {
        match *self {
            TailModel::PowerLaw { alpha, xmin } => {
                let ln_norm = hurwitz_zeta(alpha, xmin as f64).ln();
                tail.iter().map(|&x| -alpha * (x as f64).ln() - ln_norm).collect()
            }
            TailModel::Exponential { lambda, xmin } => {
                let ln_head = (-(-lambda).exp_m1()).ln();
                tail.iter().map(|&x| ln_head - lambda * (x - xmin) as f64).collect()
            }
            TailModel::LogNormal { mu, sigma, xmin } => {
                let ln_norm = ln_norm_sf((ln_u(xmin) - mu) / sigma);
                tail.iter()
                    .map(|&x| ln_norm_interval((ln_u(x) - mu) / sigma, (ln_u(x + 1) - mu) / sigma) - ln_norm)
                    .collect()
            }
            TailModel::StretchedExponential { scale, beta, xmin } => {
                let h = |x: u64| (x as f64 / scale).powf(beta);
                let h_min = h(xmin);
                tail.iter()
                    .map(|&x| {
                        let (hx, hx1) = (h(x), h(x + 1));
                        h_min - hx + (-(hx - hx1).exp_m1()).ln()
                    })
                    .collect()
            }
            TailModel::Poisson { mu, xmin } => {
                let ln_norm = ln_poisson_sf(mu, xmin);
                let ln_mu = mu.ln();
                tail.iter()
                    .map(|&x| x as f64 * ln_mu - mu - ln_gamma(x as f64 + 1.0) - ln_norm)
                    .collect()
            }
            TailModel::PowerlawCutoff { alpha, lambda, xmin } => {
                let ln_norm = cutoff_normalization(alpha, lambda, xmin).ln();
                tail.iter()
                    .map(|&x| -alpha * (x as f64).ln() - lambda * x as f64 - ln_norm)
                    .collect()
            }
        }
    }

    pub fn loglik(&self, tail: &[u64]) -> f64 {
        self.pointwise_loglik(tail).iter().sum()
    }
}

#[inline]
fn ln_u(x: u64) -> f64 {
    (x as f64).ln()
}

/// ln P(Z > z) for a standard normal Z, accurate far into both tails.
pub fn ln_norm_sf(z: f64) -> f64 {
    if z < 30.0 {
        (0.5 * erfc(z / SQRT_2)).ln()
    } else {
        let z2 = z * z;
        let series = 1.0 - 1.0 / z2 + 3.0 / (z2 * z2) - 15.0 / (z2 * z2 * z2);
        -0.5 * z2 - z.ln() - 0.5 * (2.0 * PI).ln() + series.ln()
    }
}

/// ln P(a < Z ≤ b) for a < b.
fn ln_norm_interval(a: f64, b: f64) -> f64 {
    if a > 0.0 {
        let (la, lb) = (ln_norm_sf(a), ln_norm_sf(b));
        la + (-(lb - la).exp_m1()).ln()
    } else if b < 0.0 {
        let (la, lb) = (ln_norm_sf(-b), ln_norm_sf(-a));
        la + (-(lb - la).exp_m1()).ln()
    } else {
        (1.0 - 0.5 * erfc(-a / SQRT_2) - 0.5 * erfc(b / SQRT_2)).ln()
    }
}

fn ln_poisson_pmf(mu: f64, x: u64) -> f64 {
    x as f64 * mu.ln() - mu - ln_gamma(x as f64 + 1.0)
}

/// ln P(X ≥ k) for X ~ Poisson(μ).
fn ln_poisson_sf(mu: f64, k: u64) -> f64 {
    if k == 0 {
        return 0.0;
    }
    if (k as f64) <= mu {
        let lower: f64 = (0..k).map(|x| ln_poisson_pmf(mu, x).exp()).sum();
        (-lower).ln_1p()
    } else {
        // Terms decrease past the mode; sum in log space until negligible.
        let first = ln_poisson_pmf(mu, k);
        let mut acc = 1.0;
        let mut term = 1.0;
        let mut x = k;
        while x < k + 1_000_000 {
            x += 1;
            term *= mu / x as f64;
            acc += term;
            if term < 1e-17 * acc {
                break;
            }
        }
        first + acc.ln()
    }
}

const GL8_NODES: [f64; 8] = [
    -0.960_289_856_497_536_3,
    -0.796_666_477_413_626_7,
    -0.525_532_409_916_329,
    -0.183_434_642_495_649_8,
    0.183_434_642_495_649_8,
    0.525_532_409_916_329,
    0.796_666_477_413_626_7,
    0.960_289_856_497_536_3,
];
const GL8_WEIGHTS: [f64; 8] = [
    0.101_228_536_290_376_26,
    0.222_381_034_453_374_47,
    0.313_706_645_877_887_3,
    0.362_683_783_378_362,
    0.362_683_783_378_362,
    0.313_706_645_877_887_3,
    0.222_381_034_453_374_47,
    0.101_228_536_290_376_26,
];

/// ∫_K^∞ x^(−α) e^(−λx) dx via x = K e^u and composite Gauss–Legendre in u.
fn cutoff_tail_integral(alpha: f64, lambda: f64, k: f64) -> f64 {
    let c = lambda * k;
    let log_f = |u: f64| (1.0 - alpha) * u - c * u.exp();
    let peak_u = if alpha < 1.0 && c > 0.0 {
        ((1.0 - alpha) / c).ln().max(0.0)
    } else {
        0.0
    };
    let peak = log_f(peak_u);
    let mut end = peak_u + 1.0;
    while log_f(end) > peak - 45.0 && end < 2000.0 {
        end += 1.0;
    }
    let mut acc = 0.0;
    let mut lo = 0.0;
    while lo < end {
        let hi = (lo + 0.5).min(end);
        let (mid, half) = (0.5 * (lo + hi), 0.5 * (hi - lo));
        for (node, w) in GL8_NODES.iter().zip(GL8_WEIGHTS) {
            acc += w * half * (log_f(mid + half * node) - peak).exp();
        }
        lo = hi;
    }
    k.powf(1.0 - alpha) * acc * peak.exp()
}

/// Σ_{x ≥ x_min} x^(−α) e^(−λx). Exactly ζ(α, x_min) when λ = 0.
pub fn cutoff_normalization(alpha: f64, lambda: f64, xmin: u64) -> f64 {
    if lambda == 0.0 {
        return hurwitz_zeta(alpha, xmin as f64);
    }
    if lambda < 0.0 {
        return f64::INFINITY;
    }
    const HEAD: u64 = 50;
    let f = |x: f64| (-alpha * x.ln() - lambda * x).exp();
    let mut sum = 0.0;
    for x in xmin..xmin + HEAD {
        sum += f(x as f64);
    }
    // Euler–Maclaurin for the remainder, derivatives of f = exp(g).
    let k = (xmin + HEAD) as f64;
    let fk = f(k);
    let g1 = -alpha / k - lambda;
    let g2 = alpha / (k * k);
    let g3 = -2.0 * alpha / (k * k * k);
    let d1 = fk * g1;
    let d3 = fk * (g1 * g1 * g1 + 3.0 * g1 * g2 + g3);
    sum + cutoff_tail_integral(alpha, lambda, k) + 0.5 * fk - d1 / 12.0 + d3 / 720.0
}

fn tail_of(data: &[u64], xmin: u64) -> Vec<u64> {
    data.iter().copied().filter(|&x| x >= xmin).collect()
}

fn fit_exponential(tail: &[u64], xmin: u64) -> Result<TailModel, FitError> {
    let mean_excess = tail.iter().map(|&x| (x - xmin) as f64).sum::<f64>() / tail.len() as f64;
    if mean_excess <= 0.0 {
        return Err(FitError::FitFailure("exponential: tail is constant".into()));
    }
    Ok(TailModel::Exponential {
        lambda: (1.0 / mean_excess).ln_1p(),
        xmin,
    })
}

fn fit_poisson(tail: &[u64], xmin: u64) -> Result<TailModel, FitError> {
    let n = tail.len() as f64;
    let sum_x: f64 = tail.iter().map(|&x| x as f64).sum();
    let sum_lnfact: f64 = tail.iter().map(|&x| ln_gamma(x as f64 + 1.0)).sum();
    let max = *tail.iter().max().expect("non-empty tail") as f64;
    // Concave in θ = ln μ: a truncated exponential family.
    let ll = |theta: f64| {
        let mu = theta.exp();
        sum_x * theta - n * mu - sum_lnfact - n * ln_poisson_sf(mu, xmin)
    };
    let (theta, best) = brent_max(ll, (1e-8f64).ln(), (4.0 * max + 10.0).ln(), 1e-12);
    if !best.is_finite() {
        return Err(FitError::FitFailure("poisson: non-finite likelihood".into()));
    }
    Ok(TailModel::Poisson { mu: theta.exp(), xmin })
}

/// Best of several Nelder–Mead runs; `make` maps the search vector to a model.
fn multistart<M>(tail: &[u64], starts: &[[f64; 2]], step: [f64; 2], make: M) -> Result<TailModel, FitError>
where
    M: Fn(&[f64]) -> Option<TailModel>,
{
    let objective = |p: &[f64]| match make(p) {
        Some(model) => model.loglik(tail),
        None => f64::NEG_INFINITY,
    };
    let mut best: Option<(Vec<f64>, f64)> = None;
    for start in starts {
        let (x, val) = nelder_mead_max(objective, start, &step, 600, 1e-12);
        // Restart once from the optimum to escape a collapsed simplex.
        let (x, val) = {
            let (x2, val2) = nelder_mead_max(objective, &x, &[step[0] * 0.1, step[1] * 0.1], 300, 1e-13);
            if val2 >= val {
                (x2, val2)
            } else {
                (x, val)
            }
        };
        if val.is_finite() && best.as_ref().is_none_or(|b| val > b.1) {
            best = Some((x, val));
        }
    }
    best.and_then(|(x, _)| make(&x))
        .ok_or_else(|| FitError::FitFailure("no finite likelihood reached".into()))
}

fn fit_lognormal(tail: &[u64], xmin: u64) -> Result<TailModel, FitError> {
    let logs: Vec<f64> = tail.iter().map(|&x| ln_u(x)).collect();
    let n = logs.len() as f64;
    let m = logs.iter().sum::<f64>() / n;
    let sd = (logs.iter().map(|l| (l - m).powi(2)).sum::<f64>() / n).sqrt().max(0.1);
    let max_mu = ln_u(*tail.iter().max().unwrap()) + 10.0;
    let make = move |p: &[f64]| {
        let (mu, sigma) = (p[0], p[1].exp());
        (mu.abs() <= 60.0 && mu <= max_mu && (1e-3..=50.0).contains(&sigma))
            .then_some(TailModel::LogNormal { mu, sigma, xmin })
    };
    let starts = [[m, sd.ln()], [m - 2.0 * sd, (2.0 * sd).ln()], [ln_u(xmin), (sd * 0.5).ln()]];
    multistart(tail, &starts, [0.5, 0.3], make)
}

fn fit_stretched(tail: &[u64], xmin: u64) -> Result<TailModel, FitError> {
    let mean = tail.iter().map(|&x| x as f64).sum::<f64>() / tail.len() as f64;
    let make = move |p: &[f64]| {
        let (scale, beta) = (p[0].exp(), p[1].exp());
        ((1e-3..=10.0).contains(&beta) && scale > 1e-12 && scale < 1e300)
            .then_some(TailModel::StretchedExponential { scale, beta, xmin })
    };
    let starts = [
        [mean.ln(), (0.5f64).ln()],
        [(mean * 0.1).ln(), (0.3f64).ln()],
        [mean.ln(), 0.0],
    ];
    multistart(tail, &starts, [0.5, 0.3], make)
}

/// α over [−10, 20]; λ = θ² so the search never leaves λ ≥ 0 and reaches λ = 0.
fn fit_cutoff(tail: &[u64], pl: &PowerLawFit) -> Result<TailModel, FitError> {
    let xmin = pl.xmin;
    let mean = tail.iter().map(|&x| x as f64).sum::<f64>() / tail.len() as f64;
    let make = move |p: &[f64]| {
        let (alpha, lambda) = (p[0], p[1] * p[1]);
        ((-10.0..=20.0).contains(&alpha) && lambda <= 50.0 && (lambda > 0.0 || alpha > 1.0))
            .then_some(TailModel::PowerlawCutoff { alpha, lambda, xmin })
    };
    let inv_mean = (1.0 / mean).sqrt();
    let starts = [[pl.alpha, 0.01 * inv_mean], [pl.alpha - 1.0, inv_mean], [0.5, inv_mean]];
    let fitted = multistart(tail, &starts, [0.3, 0.5 * inv_mean], make);
    let nested = TailModel::PowerlawCutoff {
        alpha: pl.alpha,
        lambda: 0.0,
        xmin,
    };
    // The pure power law is a member of the family; never report worse.
    match fitted {
        Ok(model) if model.loglik(tail) > nested.loglik(tail) => Ok(model),
        _ => Ok(nested),
    }
}

/// Fits `alternative` by maximum likelihood on the tail x ≥ fit.xmin.
pub fn fit_alternative(data: &[u64], fit: &PowerLawFit, alternative: Alternative) -> Result<TailModel, FitError> {
    let tail = tail_of(data, fit.xmin);
    if tail.len() < 2 {
        return Err(FitError::FitFailure("tail has fewer than two observations".into()));
    }
    match alternative {
        Alternative::Exponential => fit_exponential(&tail, fit.xmin),
        Alternative::LogNormal => fit_lognormal(&tail, fit.xmin),
        Alternative::StretchedExponential => fit_stretched(&tail, fit.xmin),
        Alternative::Poisson => fit_poisson(&tail, fit.xmin),
        Alternative::PowerlawCutoff => fit_cutoff(&tail, fit),
    }
}

/// Likelihood-ratio statistic between two pointwise log-likelihood vectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LikelihoodRatio {
    /// Σ (ℓ₁ − ℓ₂).
    pub ratio: f64,
    /// ratio / (σ √n), 0 when the pointwise differences have no spread.
    pub normalized: f64,
    pub pvalue: f64,
}

/// Vuong's test for non-nested models: two-sided normal p-value of the normalized ratio.
pub fn vuong(first: &[f64], second: &[f64]) -> LikelihoodRatio {
    assert_eq!(first.len(), second.len());
    let n = first.len() as f64;
    let diffs: Vec<f64> = first.iter().zip(second).map(|(a, b)| a - b).collect();
    let ratio: f64 = diffs.iter().sum();
    let mean = ratio / n;
    let var = diffs.iter().map(|d| (d - mean).powi(2)).sum::<f64>() / n;
    let sigma = var.sqrt();
    if sigma == 0.0 || !sigma.is_finite() {
        return LikelihoodRatio {
            ratio,
            normalized: 0.0,
            pvalue: 1.0,
        };
    }
    LikelihoodRatio {
        ratio,
        normalized: ratio / (sigma * n.sqrt()),
        pvalue: erfc(ratio.abs() / (sigma * (2.0 * n).sqrt())),
    }
}

/// Nested test: 2|R| ~ χ²(1) under the smaller model, p = erfc(√|R|).
pub fn nested_lr(smaller: &[f64], larger: &[f64]) -> LikelihoodRatio {
    let ratio: f64 = smaller.iter().zip(larger).map(|(a, b)| a - b).sum();
    LikelihoodRatio {
        ratio,
        normalized: ratio,
        pvalue: erfc(ratio.abs().sqrt()),
    }
}

pub fn verdict_for(logratio: f64, pvalue: f64, significance: f64) -> Verdict {
    if pvalue > significance || logratio == 0.0 {
        Verdict::Undecided
    } else if logratio > 0.0 {
        Verdict::FavorsPowerlaw
    } else {
        Verdict::FavorsAlternative
    }
}

/// Compares the fitted power law against `model` on the fit's tail.
pub fn compare_with(data: &[u64], fit: &PowerLawFit, alternative: Alternative, model: &TailModel, significance: f64) -> AlternativeComparison {
    let tail = tail_of(data, fit.xmin);
    let pl = TailModel::PowerLaw {
        alpha: fit.alpha,
        xmin: fit.xmin,
    }
    .pointwise_loglik(&tail);
    let alt = model.pointwise_loglik(&tail);
    let (logratio, pvalue) = if alternative.is_nested() {
        let lr = nested_lr(&pl, &alt);
        (lr.ratio, lr.pvalue)
    } else {
        let lr = vuong(&pl, &alt);
        (lr.normalized, lr.pvalue)
    };
    AlternativeComparison {
        alternative,
        logratio,
        pvalue,
        verdict: verdict_for(logratio, pvalue, significance),
        params: model.params(),
        error: None,
    }
}

/// One comparison row per alternative, in [`Alternative::ALL`] order. A failed
/// fit is recorded in its row and does not affect the others.
pub fn compare_alternatives(data: &[u64], fit: &PowerLawFit, significance: f64) -> Vec<AlternativeComparison> {
    Alternative::ALL
        .iter()
        .map(|&alternative| match fit_alternative(data, fit, alternative) {
            Ok(model) => compare_with(data, fit, alternative, &model, significance),
            Err(e) => AlternativeComparison {
                alternative,
                logratio: 0.0,
                pvalue: 1.0,
                verdict: Verdict::Undecided,
                params: Vec::new(),
                error: Some(e.to_string()),
            },
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;
    use crate::degreedist::powerlaw::{fit_powerlaw, fit_powerlaw_at, sample_powerlaw};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn geometric(n: usize, rate: f64, start: u64, seed: u64) -> Vec<u64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = (-rate).exp();
        (0..n)
            .map(|_| start + ((1.0 - rng.gen::<f64>()).ln() / q.ln()).floor() as u64)
            .collect()
    }

    fn sum_pmf(model: &TailModel, xmin: u64, upto: u64) -> f64 {
        let xs: Vec<u64> = (xmin..upto).collect();
        model.pointwise_loglik(&xs).iter().map(|l| l.exp()).sum()
    }

    #[test]
    fn models_are_normalized() {
        let xmin = 3;
        let models = [
            TailModel::Exponential { lambda: 0.3, xmin },
            TailModel::LogNormal { mu: 1.5, sigma: 0.8, xmin },
            TailModel::StretchedExponential { scale: 4.0, beta: 0.6, xmin },
            TailModel::Poisson { mu: 6.0, xmin },
            TailModel::Poisson { mu: 0.5, xmin },
            TailModel::PowerlawCutoff { alpha: 1.5, lambda: 0.05, xmin },
            TailModel::PowerlawCutoff { alpha: -0.5, lambda: 0.4, xmin },
        ];
        for m in &models {
            let total = sum_pmf(m, xmin, 200_000);
            assert!((total - 1.0).abs() < 1e-7, "{m:?}: {total}");
        }
    }

    #[test]
    fn cutoff_normalization_small_rate() {
        // Brute force over a long range for a slowly decaying cutoff.
        let (alpha, lambda, xmin) = (1.8, 1e-4, 2);
        let mut brute = 0.0;
        for x in (xmin..3_000_000u64).rev() {
            brute += (-alpha * (x as f64).ln() - lambda * x as f64).exp();
        }
        let fast = cutoff_normalization(alpha, lambda, xmin);
        assert!(((fast - brute) / brute).abs() < 1e-8, "{fast} vs {brute}");
    }

    #[test]
    fn normal_tail_helpers() {
        assert!((ln_norm_sf(0.0) + LN_2).abs() < 1e-15);
        // continuity across the asymptotic switch
        assert!((ln_norm_sf(29.999) - ln_norm_sf(30.001)).abs() < 0.1);
        let v = ln_norm_interval(-1.0, 1.0).exp();
        assert!((v - 0.682_689_492_137_085_9).abs() < 1e-12);
        assert!(ln_norm_interval(40.0, 41.0).is_finite());
        assert!(ln_norm_interval(-41.0, -40.0).is_finite());
    }

    #[test]
    fn poisson_survival() {
        let mu: f64 = 4.0;
        let mut direct = 0.0;
        for x in 6..200u64 {
            direct += ln_poisson_pmf(mu, x).exp();
        }
        assert!((ln_poisson_sf(mu, 6).exp() - direct).abs() < 1e-14);
        let mut direct = 0.0;
        for x in 2..200u64 {
            direct += ln_poisson_pmf(mu, x).exp();
        }
        assert!((ln_poisson_sf(mu, 2).exp() - direct).abs() < 1e-14);
    }

    #[test]
    fn self_comparison_is_exactly_zero() {
        let data = sample_powerlaw(2.5, 2, 3000, 8).unwrap();
        let fit = fit_powerlaw(data.as_slice()).unwrap();
        let itself = TailModel::PowerlawCutoff {
            alpha: fit.alpha,
            lambda: 0.0,
            xmin: fit.xmin,
        };
        let row = compare_with(data.as_slice(), &fit, Alternative::PowerlawCutoff, &itself, 0.1);
        assert_eq!(row.logratio, 0.0);
        assert_eq!(row.verdict, Verdict::Undecided);
    }

    #[test]
    fn vuong_antisymmetry() {
        let a = [-1.0, -2.5, -0.3, -4.0];
        let b = [-1.2, -2.0, -0.9, -3.1];
        let ab = vuong(&a, &b);
        let ba = vuong(&b, &a);
        assert_eq!(ab.normalized, -ba.normalized);
        assert_eq!(ab.pvalue, ba.pvalue);
    }

    #[test]
    fn exponential_fit_recovers_rate() {
        let data = geometric(20_000, 0.4, 1, 1);
        let fit = PowerLawFit {
            alpha: 2.0,
            xmin: 1,
            ntail: data.len(),
            n: data.len(),
            ks: 0.0,
            loglik: 0.0,
            low_confidence: false,
        };
        let TailModel::Exponential { lambda, .. } = fit_alternative(&data, &fit, Alternative::Exponential).unwrap() else {
            panic!()
        };
        assert!((lambda - 0.4).abs() < 0.02, "{lambda}");
    }

    #[test]
    fn nested_cutoff_never_worse_than_powerlaw() {
        let data = sample_powerlaw(2.2, 1, 2000, 4).unwrap();
        let fit = fit_powerlaw(data.as_slice()).unwrap();
        let rows = compare_alternatives(data.as_slice(), &fit, 0.1);
        let cutoff = rows.iter().find(|r| r.alternative == Alternative::PowerlawCutoff).unwrap();
        assert!(cutoff.logratio <= 0.0);
        assert_eq!(rows.len(), 5);
    }

    #[test]
    fn discriminates_exponential_data() {
        let data = geometric(5000, 0.25, 1, 3);
        let fit = fit_powerlaw_at(&data, 1).unwrap();
        let rows = compare_alternatives(&data, &fit, 0.1);
        let exp = rows.iter().find(|r| r.alternative == Alternative::Exponential).unwrap();
        assert_eq!(exp.verdict, Verdict::FavorsAlternative, "{fit:?} {rows:#?}");
    }
}
