//! Discrete power law on {x_min, x_min + 1, ...}: sampling, maximum-likelihood
//! fitting and the Kolmogorov–Smirnov scan that selects x_min.

use super::optimize::brent_max;
use super::zeta::hurwitz_zeta;
use super::FitError;
use crate::graph::DegreeSequence;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Fewest tail observations for a non-flagged fit.
pub const MIN_TAIL: u64 = 10;

const TABLE_LEN: usize = 1024;
const STEP_LIMIT: u64 = 32;
const ALPHA_MAX: f64 = 60.0;

/// P(X = x) = x^(−α) / ζ(α, x_min).
#[derive(Debug, Clone)]
pub struct DiscretePowerLaw {
    alpha: f64,
    xmin: u64,
    norm: f64,
    /// P(X ≥ x_min + i) for i < TABLE_LEN.
    sf_table: Vec<f64>,
}

impl DiscretePowerLaw {
    pub fn new(alpha: f64, xmin: u64) -> Result<Self, FitError> {
        if !(alpha > 1.0) || !alpha.is_finite() {
            return Err(FitError::InvalidParam(format!("alpha = {alpha} must exceed 1")));
        }
        if xmin == 0 {
            return Err(FitError::InvalidParam("xmin must be >= 1".into()));
        }
        let norm = hurwitz_zeta(alpha, xmin as f64);
        let mut sf_table = Vec::with_capacity(TABLE_LEN);
        let mut tail = norm;
        for i in 0..TABLE_LEN as u64 {
            sf_table.push((tail / norm).max(0.0));
            tail -= ((xmin + i) as f64).powf(-alpha);
        }
        Ok(DiscretePowerLaw {
            alpha,
            xmin,
            norm,
            sf_table,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn xmin(&self) -> u64 {
        self.xmin
    }

    /// ζ(α, x_min).
    pub fn normalization(&self) -> f64 {
        self.norm
    }

    pub fn ln_pmf(&self, x: u64) -> f64 {
        if x < self.xmin {
            return f64::NEG_INFINITY;
        }
        -self.alpha * (x as f64).ln() - self.norm.ln()
    }

    /// P(X ≥ x).
    pub fn sf(&self, x: u64) -> f64 {
        if x <= self.xmin {
            return 1.0;
        }
        let i = (x - self.xmin) as usize;
        if i < TABLE_LEN {
            self.sf_table[i]
        } else {
            hurwitz_zeta(self.alpha, x as f64) / self.norm
        }
    }

    /// P(X ≤ x).
    pub fn cdf(&self, x: u64) -> f64 {
        1.0 - self.sf(x + 1)
    }

    /// Inverse-CDF draw: the largest x with P(X ≥ x) ≥ u, u uniform on (0, 1].
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        let u = 1.0 - rng.gen::<f64>();
        let inside = self.sf_table.partition_point(|&s| s >= u);
        if inside < TABLE_LEN {
            return self.xmin + inside as u64 - 1;
        }
        // Far tail: bracket by doubling, then bisect on ζ tail sums.
        let mut lo = self.xmin + TABLE_LEN as u64 - 1;
        let mut hi = lo.saturating_mul(2);
        while self.sf(hi) >= u {
            lo = hi;
            if hi >= u64::MAX / 4 {
                return hi;
            }
            hi = hi.saturating_mul(2);
        }
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if self.sf(mid) >= u {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    }
}

/// `n` i.i.d. draws from the discrete power law, reproducible from `seed`.
pub fn sample_powerlaw(alpha: f64, xmin: u64, n: usize, seed: u64) -> Result<DegreeSequence, FitError> {
    let law = DiscretePowerLaw::new(alpha, xmin)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(DegreeSequence((0..n).map(|_| law.sample(&mut rng)).collect()))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerLawFit {
    pub alpha: f64,
    pub xmin: u64,
    /// Observations ≥ x_min.
    pub ntail: usize,
    /// Whole sample size.
    pub n: usize,
    /// KS distance between the empirical tail and the fitted law.
    pub ks: f64,
    /// Log-likelihood of the tail.
    pub loglik: f64,
    /// Set when no x_min leaves at least ten tail observations.
    pub low_confidence: bool,
}

impl PowerLawFit {
    pub fn law(&self) -> DiscretePowerLaw {
        DiscretePowerLaw::new(self.alpha, self.xmin).expect("fit parameters are valid")
    }

    pub fn tail_fraction(&self) -> f64 {
        self.ntail as f64 / self.n as f64
    }
}

/// Distinct sorted values with counts and suffix sums.
pub(crate) struct Histogram {
    pub values: Vec<u64>,
    pub counts: Vec<u64>,
    pub tail_n: Vec<u64>,
    pub tail_ln: Vec<f64>,
    pub n: usize,
}

impl Histogram {
    pub fn new(data: &[u64]) -> Result<Self, FitError> {
        if data.is_empty() {
            return Err(FitError::InvalidData("empty sample".into()));
        }
        if data.contains(&0) {
            return Err(FitError::InvalidData("values must be >= 1".into()));
        }
        let mut sorted = data.to_vec();
        sorted.sort_unstable();
        let mut values = Vec::new();
        let mut counts: Vec<u64> = Vec::new();
        for x in sorted {
            if values.last() == Some(&x) {
                *counts.last_mut().unwrap() += 1;
            } else {
                values.push(x);
                counts.push(1);
            }
        }
        let k = values.len();
        let mut tail_n = vec![0; k];
        let mut tail_ln = vec![0.0; k];
        let (mut acc_n, mut acc_ln) = (0u64, 0.0f64);
        for i in (0..k).rev() {
            acc_n += counts[i];
            acc_ln += counts[i] as f64 * (values[i] as f64).ln();
            tail_n[i] = acc_n;
            tail_ln[i] = acc_ln;
        }
        Ok(Histogram {
            values,
            counts,
            tail_n,
            tail_ln,
            n: data.len(),
        })
    }

    /// Index of the first value ≥ x.
    pub fn index_of(&self, x: u64) -> usize {
        self.values.partition_point(|&v| v < x)
    }
}

/// Discrete MLE of α for a tail of `n_tail` values ≥ `xmin` with Σ ln x = `sum_ln`.
fn fit_alpha(n_tail: u64, sum_ln: f64, xmin: u64) -> (f64, f64) {
    let nt = n_tail as f64;
    let loglik = |a: f64| -nt * hurwitz_zeta(a, xmin as f64).ln() - a * sum_ln;
    // Continuous approximation as the starting scale of the search bracket.
    let denom = sum_ln - nt * (xmin as f64 - 0.5).ln();
    let guess = if denom > 0.0 { 1.0 + nt / denom } else { ALPHA_MAX };
    let hi = (2.0 * guess + 1.0).min(ALPHA_MAX);
    let (mut alpha, mut best) = brent_max(loglik, 1.0 + 1e-9, hi, 1e-11);
    if hi < ALPHA_MAX && alpha > hi - 1e-6 {
        (alpha, best) = brent_max(loglik, hi - 1e-3, ALPHA_MAX, 1e-11);
    }
    (alpha, best)
}

/// Sup over integers in [x_min, max] of |F_emp − F_model| on the tail starting at index `start`.
fn ks_at(hist: &Histogram, start: usize, alpha: f64) -> f64 {
    let xmin = hist.values[start];
    let n_tail = hist.tail_n[start] as f64;
    let norm = hurwitz_zeta(alpha, xmin as f64);
    let mut cur_x = xmin;
    let mut cur_z = norm;
    let advance = |to: u64, cur_x: &mut u64, cur_z: &mut f64| {
        if to - *cur_x <= STEP_LIMIT {
            while *cur_x < to {
                *cur_z -= (*cur_x as f64).powf(-alpha);
                *cur_x += 1;
            }
        } else {
            *cur_z = hurwitz_zeta(alpha, to as f64);
            *cur_x = to;
        }
    };
    let mut cum = 0u64;
    let mut d = 0.0f64;
    let last = hist.values.len();
    for j in start..last {
        let v = hist.values[j];
        cum += hist.counts[j];
        let fe = cum as f64 / n_tail;
        advance(v + 1, &mut cur_x, &mut cur_z);
        d = d.max((fe - (1.0 - cur_z / norm)).abs());
        if j + 1 < last {
            advance(hist.values[j + 1], &mut cur_x, &mut cur_z);
            d = d.max((fe - (1.0 - cur_z / norm)).abs());
        }
    }
    d.min(1.0)
}

fn fit_at_index(hist: &Histogram, i: usize) -> PowerLawFit {
    let xmin = hist.values[i];
    let (alpha, loglik) = fit_alpha(hist.tail_n[i], hist.tail_ln[i], xmin);
    PowerLawFit {
        alpha,
        xmin,
        ntail: hist.tail_n[i] as usize,
        n: hist.n,
        ks: ks_at(hist, i, alpha),
        loglik,
        low_confidence: hist.tail_n[i] < MIN_TAIL,
    }
}

/// Fits α and x_min: α by discrete maximum likelihood for every candidate
/// x_min among the observed values, x_min by the smallest KS distance.
pub fn fit_powerlaw(data: &[u64]) -> Result<PowerLawFit, FitError> {
    let hist = Histogram::new(data)?;
    let k = hist.values.len();
    if k < 2 {
        return Err(FitError::DegenerateSample);
    }
    // The largest value can never be x_min: its tail would be constant.
    let mut candidates: Vec<usize> = (0..k - 1).filter(|&i| hist.tail_n[i] >= MIN_TAIL).collect();
    if candidates.is_empty() {
        candidates = (0..k - 1).collect();
    }
    let mut best: Option<PowerLawFit> = None;
    for i in candidates {
        let fit = fit_at_index(&hist, i);
        if best.is_none_or(|b| fit.ks < b.ks) {
            best = Some(fit);
        }
    }
    Ok(best.expect("at least one candidate"))
}

/// Fits α with x_min held fixed; the tail is every value ≥ `xmin`.
pub fn fit_powerlaw_at(data: &[u64], xmin: u64) -> Result<PowerLawFit, FitError> {
    if xmin == 0 {
        return Err(FitError::InvalidParam("xmin must be >= 1".into()));
    }
    let hist = Histogram::new(data)?;
    let i = hist.index_of(xmin);
    if i + 1 >= hist.values.len() {
        return Err(FitError::DegenerateSample);
    }
    let (alpha, loglik) = fit_alpha(hist.tail_n[i], hist.tail_ln[i], xmin);
    // KS on a tail whose first observed value may exceed xmin.
    let sub = Histogram::new(&data.iter().copied().filter(|&x| x >= xmin).collect::<Vec<_>>())?;
    let ks = ks_with_xmin(&sub, xmin, alpha);
    Ok(PowerLawFit {
        alpha,
        xmin,
        ntail: hist.tail_n[i] as usize,
        n: hist.n,
        ks,
        loglik,
        low_confidence: hist.tail_n[i] < MIN_TAIL,
    })
}

fn ks_with_xmin(tail: &Histogram, xmin: u64, alpha: f64) -> f64 {
    if tail.values[0] == xmin {
        return ks_at(tail, 0, alpha);
    }
    // F_emp is 0 on [xmin, first observed value); the model CDF is largest
    // just before that value.
    let law = DiscretePowerLaw::new(alpha, xmin).expect("valid");
    let gap = law.cdf(tail.values[0] - 1);
    let mut with_gap = ks_at_shifted(tail, &law);
    with_gap = with_gap.max(gap);
    with_gap
}

fn ks_at_shifted(tail: &Histogram, law: &DiscretePowerLaw) -> f64 {
    let n_tail = tail.n as f64;
    let mut cum = 0u64;
    let mut d = 0.0f64;
    let last = tail.values.len();
    for j in 0..last {
        cum += tail.counts[j];
        let fe = cum as f64 / n_tail;
        d = d.max((fe - law.cdf(tail.values[j])).abs());
        if j + 1 < last {
            d = d.max((fe - law.cdf(tail.values[j + 1] - 1)).abs());
        }
    }
    d.min(1.0)
}

/// KS distance of `data`'s tail (values ≥ fit.xmin) against the fitted law.
pub fn ks_distance(data: &[u64], alpha: f64, xmin: u64) -> Result<f64, FitError> {
    let tail: Vec<u64> = data.iter().copied().filter(|&x| x >= xmin).collect();
    let hist = Histogram::new(&tail)?;
    DiscretePowerLaw::new(alpha, xmin)?;
    Ok(ks_with_xmin(&hist, xmin, alpha))
}
