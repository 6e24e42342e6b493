//! Seeded verification runs for the codimension of singularity conditions.
//!
//! `N` distinct points of `P^n` impose exactly `N(n+1)` conditions on forms
//! of degree `d` whenever `d >= 2N - 1`, and collinear points show the bound
//! cannot be lowered. The runs here check both halves by exact rank.

use rayon::prelude::*;
use serde::Serialize;

use super::ideal::{codimension, hilbert_function, SquareMode};
use super::points::PointConfiguration;
use super::{trial_rng, LinalgError, ParameterTriple};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrialCodimension {
    pub trial: u64,
    pub codimension: usize,
    pub points: PointConfiguration,
}

/// Codimension of the deterministic collinear configuration in degree `2N - 2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SharpnessProbe {
    pub d: u32,
    pub points: PointConfiguration,
    pub codimension: usize,
    /// `N(n+1) - 1`
    pub deficient_bound: usize,
    pub below_expected: bool,
    /// `N(n-1) + d + 1`
    pub collinear_bound: usize,
    pub within_collinear_bound: bool,
    pub equals_collinear_bound: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CodimLemmaReport {
    pub params: ParameterTriple,
    pub trials: u64,
    pub seed: u64,
    pub expected_codimension: usize,
    /// `d >= 2N - 1`; otherwise the sampled codimensions are recorded but not checked.
    pub in_lemma_range: bool,
    pub results: Vec<TrialCodimension>,
    pub counterexamples: Vec<TrialCodimension>,
    pub sharpness: Option<SharpnessProbe>,
    pub verified: bool,
}

pub fn verify_codim_lemma(
    params: ParameterTriple,
    trials: u64,
    seed: u64,
) -> Result<CodimLemmaReport, LinalgError> {
    if trials < 1 {
        return Err(LinalgError::InvalidParameters(
            "trials must be at least 1".into(),
        ));
    }
    let n = params.n as usize;
    let count = params.num_points as usize;
    let expected = params.expected_codimension();
    let results = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(seed, trial);
            let points = PointConfiguration::random(n, count, &mut rng)?;
            let codimension = codimension(params.d, &points)?;
            Ok(TrialCodimension {
                trial,
                codimension,
                points,
            })
        })
        .collect::<Result<Vec<_>, LinalgError>>()?;

    let in_lemma_range = params.in_lemma_range();
    let counterexamples: Vec<TrialCodimension> = if in_lemma_range {
        results
            .iter()
            .filter(|r| r.codimension != expected)
            .cloned()
            .collect()
    } else {
        Vec::new()
    };
    let sharpness = sharpness_probe(params.n, params.num_points)?;
    let verified = counterexamples.is_empty()
        && sharpness
            .as_ref()
            .is_none_or(|s| s.below_expected && s.within_collinear_bound);
    Ok(CodimLemmaReport {
        params,
        trials,
        seed,
        expected_codimension: expected,
        in_lemma_range,
        results,
        counterexamples,
        sharpness,
        verified,
    })
}

/// Collinear probe at `d = 2N - 2`; `None` when that degree is below 1.
pub fn sharpness_probe(n: u32, num_points: u32) -> Result<Option<SharpnessProbe>, LinalgError> {
    if 2 * num_points < 3 {
        return Ok(None);
    }
    let d = 2 * num_points - 2;
    let points = PointConfiguration::collinear(n as usize, num_points as usize)?;
    let codim = codimension(d, &points)?;
    let expected = num_points as usize * (n as usize + 1);
    let collinear_bound = num_points as usize * (n as usize - 1) + d as usize + 1;
    Ok(Some(SharpnessProbe {
        d,
        points,
        codimension: codim,
        deficient_bound: expected - 1,
        below_expected: codim < expected,
        collinear_bound,
        within_collinear_bound: codim <= collinear_bound,
        equals_collinear_bound: codim == collinear_bound,
    }))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HilbertValue {
    pub d: u32,
    pub value: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegularityScan {
    pub expected: usize,
    pub d_max: u32,
    pub values: Vec<HilbertValue>,
    /// Smallest `d0` with the symbolic Hilbert function equal to `N(n+1)` on `[d0, d_max]`.
    pub stabilization_degree: u32,
    /// `2N - 1`
    pub lemma_bound: u32,
    pub within_lemma_bound: bool,
}

/// Scans the symbolic Hilbert function for `1 <= d <= d_max`.
pub fn regularity_scan(
    config: &PointConfiguration,
    d_max: u32,
) -> Result<RegularityScan, LinalgError> {
    let count = config.len() as u32;
    if d_max < 2 * count {
        return Err(LinalgError::InvalidParameters(format!(
            "d_max must be at least 2N = {}",
            2 * count
        )));
    }
    let expected = config.len() * (config.dimension() + 1);
    let values = (1..=d_max)
        .into_par_iter()
        .map(|d| {
            Ok(HilbertValue {
                d,
                value: hilbert_function(d, config, SquareMode::Symbolic)?,
            })
        })
        .collect::<Result<Vec<_>, LinalgError>>()?;
    let stabilization_degree = values
        .iter()
        .rev()
        .take_while(|v| v.value == expected)
        .last()
        .map(|v| v.d)
        .ok_or(LinalgError::NoStabilization { expected, d_max })?;
    let lemma_bound = 2 * count - 1;
    Ok(RegularityScan {
        expected,
        d_max,
        values,
        stabilization_degree,
        lemma_bound,
        within_lemma_bound: stabilization_degree <= lemma_bound,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneralPositionTrial {
    pub trial: u64,
    pub stabilization_degree: u32,
    pub points: PointConfiguration,
}

/// One-sided estimate of the least degree from which configurations in
/// general linear position impose independent singularity conditions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneralPositionEstimate {
    pub n: u32,
    #[serde(rename = "N")]
    pub num_points: u32,
    pub trials: u64,
    pub seed: u64,
    pub d_max: u32,
    pub estimate: u32,
    /// `2N - 1`
    pub guaranteed_bound: u32,
    /// Sampling can only show the true value is at least the estimate on these samples.
    pub empirical: bool,
    pub per_trial: Vec<GeneralPositionTrial>,
}

pub fn general_position_bound(
    n: u32,
    num_points: u32,
    trials: u64,
    seed: u64,
    d_max: u32,
) -> Result<GeneralPositionEstimate, LinalgError> {
    if trials < 1 || n < 1 || num_points < 1 || d_max < 1 {
        return Err(LinalgError::InvalidParameters(
            "need n, N, trials and d_max all at least 1".into(),
        ));
    }
    let expected = num_points as usize * (n as usize + 1);
    let per_trial = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(seed, trial);
            let points = PointConfiguration::random_general_position(
                n as usize,
                num_points as usize,
                &mut rng,
            )?;
            let mut d0 = None;
            for d in (1..=d_max).rev() {
                if codimension(d, &points)? != expected {
                    break;
                }
                d0 = Some(d);
            }
            let stabilization_degree = d0.ok_or(LinalgError::BoundExhausted { d_max })?;
            Ok(GeneralPositionTrial {
                trial,
                stabilization_degree,
                points,
            })
        })
        .collect::<Result<Vec<_>, LinalgError>>()?;
    let estimate = per_trial
        .iter()
        .map(|t| t.stabilization_degree)
        .max()
        .unwrap_or(1);
    Ok(GeneralPositionEstimate {
        n,
        num_points,
        trials,
        seed,
        d_max,
        estimate,
        guaranteed_bound: 2 * num_points - 1,
        empirical: true,
        per_trial,
    })
}
