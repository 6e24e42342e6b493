//! Exact linear algebra for singularity conditions at point configurations.

pub mod ideal;
pub mod lemma;
pub mod matrix;
pub mod monomial;
pub mod points;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub use ideal::{
    codimension, evaluation_matrix, hilbert_function, ideal_degree_part, ordinary_square_dim,
    singularity_matrix, symbolic_square_dim, symbolic_square_part, SquareMode,
};
pub use lemma::{
    general_position_bound, regularity_scan, verify_codim_lemma, CodimLemmaReport,
    GeneralPositionEstimate, RegularityScan, SharpnessProbe,
};
pub use matrix::ExactMatrix;
pub use monomial::{binomial, enumerate_monomials, Monomial, MonomialBasis};
pub use points::PointConfiguration;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("configuration has no points")]
    EmptyConfiguration,
    #[error("point {index} is the zero vector")]
    ZeroVector { index: usize },
    #[error("points {first} and {second} coincide projectively")]
    RepeatedPoint { first: usize, second: usize },
    #[error("point {index} has {found} coordinates, expected {expected}")]
    CoordinateCount {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("P^{n} has only {} coordinate points, {count} requested", n + 1)]
    TooManyCoordinatePoints { n: usize, count: usize },
    #[error("degree {degree} is below the minimum {minimum}")]
    InvalidDegree { degree: u32, minimum: u32 },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("random sampling produced no admissible configuration after {attempts} attempts")]
    SamplingExhausted { attempts: usize },
    #[error("malformed points at {position} (token {token}): {reason}")]
    Parse {
        position: String,
        token: String,
        reason: String,
    },
    #[error("symbolic Hilbert function does not reach {expected} by degree {d_max}")]
    NoStabilization { expected: usize, d_max: u32 },
    #[error("no degree up to {d_max} gives the expected codimension on all samples")]
    BoundExhausted { d_max: u32 },
    #[error("arithmetic overflow computing {0}")]
    Overflow(&'static str),
}

/// Degree `d`, projective dimension `n` and point count `N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct ParameterTriple {
    pub d: u32,
    pub n: u32,
    #[serde(rename = "N")]
    pub num_points: u32,
}

impl ParameterTriple {
    pub fn new(d: u32, n: u32, num_points: u32) -> Result<Self, LinalgError> {
        if d < 1 || n < 1 || num_points < 1 {
            return Err(LinalgError::InvalidParameters(format!(
                "need d >= 1, n >= 1, N >= 1 (got d={d}, n={n}, N={num_points})"
            )));
        }
        Ok(Self { d, n, num_points })
    }

    /// `binomial(d + n, n)`, the dimension of the space of degree-`d` forms.
    pub fn ambient_dim(&self) -> Result<u64, LinalgError> {
        binomial(u64::from(self.d) + u64::from(self.n), u64::from(self.n))
            .ok_or(LinalgError::Overflow("binomial(d+n, n)"))
    }

    /// `N (n + 1)`, the expected number of singularity conditions.
    pub fn expected_codimension(&self) -> usize {
        self.num_points as usize * (self.n as usize + 1)
    }

    /// Whether `d >= 2N - 1`.
    pub fn in_lemma_range(&self) -> bool {
        self.d + 1 >= 2 * self.num_points
    }
}

/// Random stream for one trial; independent of how trials are scheduled.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn parameter_validation() {
        assert!(ParameterTriple::new(0, 1, 1).is_err());
        assert!(ParameterTriple::new(1, 0, 1).is_err());
        assert!(ParameterTriple::new(1, 1, 0).is_err());
        let p = ParameterTriple::new(5, 2, 3).unwrap();
        assert_eq!(p.ambient_dim().unwrap(), 21);
        assert_eq!(p.expected_codimension(), 9);
        assert!(p.in_lemma_range());
        assert!(!ParameterTriple::new(4, 2, 3).unwrap().in_lemma_range());
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"{"d":5,"n":2,"N":3}"#);
    }

    #[test]
    fn trial_streams_differ_and_repeat() {
        let a: u64 = trial_rng(1, 0).gen();
        let b: u64 = trial_rng(1, 1).gen();
        assert_ne!(a, b);
        assert_eq!(a, trial_rng(1, 0).gen::<u64>());
    }
}
