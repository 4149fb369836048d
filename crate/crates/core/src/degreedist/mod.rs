//! Degree-distribution analysis: discrete power-law fit, bootstrap goodness of
//! fit, likelihood-ratio comparison against alternatives, and the four-way
//! classification.

pub mod alternatives;
pub mod gof;
pub mod optimize;
pub mod powerlaw;
pub mod zeta;

pub use alternatives::{compare_alternatives, Alternative, AlternativeComparison, TailModel, Verdict, DEFAULT_SIGNIFICANCE};
pub use gof::{gof_pvalue, GofResult, DEFAULT_BOOTSTRAPS};
pub use powerlaw::{fit_powerlaw, fit_powerlaw_at, ks_distance, sample_powerlaw, DiscretePowerLaw, PowerLawFit};
pub use zeta::hurwitz_zeta;

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FitError {
    #[error("invalid data: {0}")]
    InvalidData(String),
    #[error("degenerate sample: fewer than two distinct values")]
    DegenerateSample,
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error("bootstrap count must be at least 1")]
    InvalidB,
    #[error("fit failed: {0}")]
    FitFailure(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DegreeClassification {
    Improbable,
    Moderate,
    Probable,
    Cutoff,
}

impl DegreeClassification {
    pub const ALL: [DegreeClassification; 4] = [
        DegreeClassification::Improbable,
        DegreeClassification::Moderate,
        DegreeClassification::Probable,
        DegreeClassification::Cutoff,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            DegreeClassification::Improbable => "Improbable",
            DegreeClassification::Moderate => "Moderate",
            DegreeClassification::Probable => "Probable",
            DegreeClassification::Cutoff => "Cutoff",
        }
    }
}

impl fmt::Display for DegreeClassification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DegreeClassification {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        DegreeClassification::ALL
            .into_iter()
            .find(|c| c.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown degree class {s:?}"))
    }
}

/// Applies the rules in order: implausible fit, cutoff preferred, a non-nested
/// alternative preferred, some alternative equally good, otherwise probable.
/// Rows carrying a fit error are ignored.
pub fn classify_with(gof_pvalue: f64, comparisons: &[AlternativeComparison], gof_threshold: f64) -> DegreeClassification {
    if gof_pvalue < gof_threshold {
        return DegreeClassification::Improbable;
    }
    let usable = || comparisons.iter().filter(|c| c.error.is_none());
    if usable().any(|c| c.alternative.is_nested() && c.verdict == Verdict::FavorsAlternative) {
        return DegreeClassification::Cutoff;
    }
    let non_nested = || usable().filter(|c| !c.alternative.is_nested());
    if non_nested().any(|c| c.verdict == Verdict::FavorsAlternative) {
        DegreeClassification::Improbable
    } else if non_nested().any(|c| c.verdict == Verdict::Undecided) {
        DegreeClassification::Moderate
    } else {
        DegreeClassification::Probable
    }
}

pub fn classify(gof: &GofResult, comparisons: &[AlternativeComparison]) -> DegreeClassification {
    classify_with(gof.pvalue, comparisons, 0.1)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DegreeConfig {
    pub bootstraps: usize,
    pub seed: u64,
    /// Fits with a bootstrap p-value below this are Improbable.
    pub gof_threshold: f64,
    /// Likelihood-ratio p-values above this are undecided.
    pub significance: f64,
}

impl Default for DegreeConfig {
    fn default() -> Self {
        DegreeConfig {
            bootstraps: DEFAULT_BOOTSTRAPS,
            seed: 0,
            gof_threshold: 0.1,
            significance: DEFAULT_SIGNIFICANCE,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegreeReport {
    pub fit: PowerLawFit,
    pub gof: GofResult,
    pub comparisons: Vec<AlternativeComparison>,
    pub classification: DegreeClassification,
}

impl DegreeReport {
    pub fn comparison(&self, alternative: Alternative) -> Option<&AlternativeComparison> {
        self.comparisons.iter().find(|c| c.alternative == alternative)
    }
}

/// Runs the full fit, bootstrap and comparison sequence on one degree sample.
pub fn analyze_degrees(degrees: &[u64], config: &DegreeConfig) -> Result<DegreeReport, FitError> {
    let fit = fit_powerlaw(degrees)?;
    let gof = gof_pvalue(degrees, &fit, config.bootstraps, config.seed)?;
    let comparisons = compare_alternatives(degrees, &fit, config.significance);
    let classification = classify_with(gof.pvalue, &comparisons, config.gof_threshold);
    Ok(DegreeReport {
        fit,
        gof,
        comparisons,
        classification,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CcdfRow {
    pub degree: u64,
    /// Fraction of all observations ≥ degree.
    pub empirical: f64,
    /// Fitted P(X ≥ degree) scaled by the tail fraction; absent below x_min.
    pub fitted: Option<f64>,
}

/// One row per distinct observed degree, ascending.
pub fn ccdf_table(degrees: &[u64], fit: &PowerLawFit) -> Vec<CcdfRow> {
    let mut sorted = degrees.to_vec();
    sorted.sort_unstable();
    let n = sorted.len() as f64;
    let law = fit.law();
    let scale = fit.tail_fraction();
    let mut rows = Vec::new();
    let mut i = 0;
    while i < sorted.len() {
        let d = sorted[i];
        rows.push(CcdfRow {
            degree: d,
            empirical: (sorted.len() - i) as f64 / n,
            fitted: (d >= fit.xmin).then(|| scale * law.sf(d)),
        });
        while i < sorted.len() && sorted[i] == d {
            i += 1;
        }
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(alternative: Alternative, verdict: Verdict) -> AlternativeComparison {
        AlternativeComparison {
            alternative,
            logratio: match verdict {
                Verdict::FavorsPowerlaw => 3.0,
                Verdict::FavorsAlternative => -3.0,
                Verdict::Undecided => 0.1,
            },
            pvalue: if verdict == Verdict::Undecided { 0.8 } else { 0.001 },
            verdict,
            params: vec![],
            error: None,
        }
    }

    fn rows(non_nested: Verdict, cutoff: Verdict) -> Vec<AlternativeComparison> {
        Alternative::ALL
            .iter()
            .map(|&a| row(a, if a.is_nested() { cutoff } else { non_nested }))
            .collect()
    }

    fn gof(p: f64) -> GofResult {
        GofResult {
            pvalue: p,
            bootstraps: 100,
            observed_ks: 0.02,
            failed_refits: 0,
        }
    }

    #[test]
    fn classification_rules() {
        use DegreeClassification::*;
        use Verdict::*;
        assert_eq!(classify(&gof(0.01), &rows(FavorsPowerlaw, Undecided)), Improbable);
        assert_eq!(classify(&gof(0.5), &rows(FavorsPowerlaw, FavorsAlternative)), Cutoff);
        assert_eq!(classify(&gof(0.5), &rows(FavorsPowerlaw, Undecided)), Probable);
        assert_eq!(classify(&gof(0.5), &rows(Undecided, Undecided)), Moderate);
        assert_eq!(classify(&gof(0.5), &rows(FavorsAlternative, Undecided)), Improbable);
    }

    #[test]
    fn errored_rows_ignored() {
        let mut r = rows(Verdict::FavorsPowerlaw, Verdict::Undecided);
        r[0].verdict = Verdict::FavorsAlternative;
        r[0].error = Some("boom".into());
        assert_eq!(classify(&gof(0.5), &r), DegreeClassification::Probable);
    }

    #[test]
    fn ccdf_shape() {
        let data = [1u64, 1, 2, 3, 3, 3, 7];
        let fit = fit_powerlaw_at(&data, 2).unwrap();
        let t = ccdf_table(&data, &fit);
        assert_eq!(t.iter().map(|r| r.degree).collect::<Vec<_>>(), vec![1, 2, 3, 7]);
        assert_eq!(t[0].empirical, 1.0);
        assert!((t[3].empirical - 1.0 / 7.0).abs() < 1e-15);
        assert!(t[0].fitted.is_none());
        assert!((t[1].fitted.unwrap() - 5.0 / 7.0).abs() < 1e-12);
    }

    #[test]
    fn class_parse_roundtrip() {
        for c in DegreeClassification::ALL {
            assert_eq!(c.as_str().parse::<DegreeClassification>().unwrap(), c);
        }
    }
}
