//! Configurations of distinct points in projective space.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

use super::matrix::{primitive_integer_vector, ExactMatrix};
use super::LinalgError;

/// Half-width of the integer box used for random coordinates.
pub const SAMPLE_BOUND: i64 = 100;
/// Resampling attempts per point before sampling is declared degenerate.
pub const MAX_RESAMPLES: usize = 1000;

/// `N` distinct points of `P^n`, stored with leftmost nonzero coordinate 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointConfiguration {
    n: usize,
    points: Vec<Vec<BigRational>>,
}

impl PointConfiguration {
    pub fn new(n: usize, points: Vec<Vec<BigRational>>) -> Result<Self, LinalgError> {
        if points.is_empty() {
            return Err(LinalgError::EmptyConfiguration);
        }
        let mut normalized: Vec<Vec<BigRational>> = Vec::with_capacity(points.len());
        for (index, p) in points.into_iter().enumerate() {
            if p.len() != n + 1 {
                return Err(LinalgError::CoordinateCount {
                    index,
                    expected: n + 1,
                    found: p.len(),
                });
            }
            let p = normalize(p).ok_or(LinalgError::ZeroVector { index })?;
            if let Some(first) = normalized.iter().position(|q| *q == p) {
                return Err(LinalgError::RepeatedPoint {
                    first,
                    second: index,
                });
            }
            normalized.push(p);
        }
        Ok(Self {
            n,
            points: normalized,
        })
    }

    pub fn from_integers(n: usize, points: &[Vec<i64>]) -> Result<Self, LinalgError> {
        Self::new(
            n,
            points
                .iter()
                .map(|p| {
                    p.iter()
                        .map(|&x| BigRational::from_integer(x.into()))
                        .collect()
                })
                .collect(),
        )
    }

    /// The first `count` coordinate points `e_0, ..., e_{count-1}`.
    pub fn coordinate_points(n: usize, count: usize) -> Result<Self, LinalgError> {
        if count > n + 1 {
            return Err(LinalgError::TooManyCoordinatePoints { n, count });
        }
        let pts = (0..count)
            .map(|i| (0..=n).map(|j| i64::from(i == j)).collect())
            .collect::<Vec<_>>();
        Self::from_integers(n, &pts)
    }

    /// Points `[1 : t : 0 : ... : 0]` for `t = 0, ..., count-1`, all on the line `x_2 = ... = x_n = 0`.
    pub fn collinear(n: usize, count: usize) -> Result<Self, LinalgError> {
        let pts = (0..count)
            .map(|t| {
                let mut p = vec![0i64; n + 1];
                p[0] = 1;
                p[1] = t as i64;
                p
            })
            .collect::<Vec<_>>();
        Self::from_integers(n, &pts)
    }

    /// Samples `count` distinct points with integer coordinates in `[-100, 100]`.
    pub fn random<R: Rng + ?Sized>(
        n: usize,
        count: usize,
        rng: &mut R,
    ) -> Result<Self, LinalgError> {
        let mut points: Vec<Vec<BigRational>> = Vec::with_capacity(count);
        for _ in 0..count {
            let mut attempts = 0;
            loop {
                if attempts == MAX_RESAMPLES {
                    return Err(LinalgError::SamplingExhausted { attempts });
                }
                attempts += 1;
                let raw: Vec<BigRational> = (0..=n)
                    .map(|_| {
                        BigRational::from_integer(
                            rng.gen_range(-SAMPLE_BOUND..=SAMPLE_BOUND).into(),
                        )
                    })
                    .collect();
                let Some(p) = normalize(raw) else { continue };
                if points.contains(&p) {
                    continue;
                }
                points.push(p);
                break;
            }
        }
        Self::new(n, points)
    }

    /// Samples a configuration in general linear position: every subset of
    /// `min(N, n+1)` points spans a linear space of that dimension.
    pub fn random_general_position<R: Rng + ?Sized>(
        n: usize,
        count: usize,
        rng: &mut R,
    ) -> Result<Self, LinalgError> {
        for _ in 0..MAX_RESAMPLES {
            let config = Self::random(n, count, rng)?;
            if config.is_in_general_position() {
                return Ok(config);
            }
        }
        Err(LinalgError::SamplingExhausted {
            attempts: MAX_RESAMPLES,
        })
    }

    pub fn is_in_general_position(&self) -> bool {
        let k = self.len().min(self.n + 1);
        let mut subset: Vec<usize> = (0..k).collect();
        loop {
            let rows = subset.iter().map(|&i| self.points[i].clone()).collect();
            if ExactMatrix::from_rows(self.n + 1, rows).rank() < k {
                return false;
            }
            if !next_combination(&mut subset, self.len()) {
                return true;
            }
        }
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<BigRational>] {
        &self.points
    }

    /// Primitive integer representatives of the points.
    pub fn integer_points(&self) -> Vec<Vec<BigInt>> {
        self.points
            .iter()
            .map(|p| primitive_integer_vector(p))
            .collect()
    }

    /// Returns a configuration with the given points reordered.
    pub fn permuted(&self, order: &[usize]) -> Self {
        Self {
            n: self.n,
            points: order.iter().map(|&i| self.points[i].clone()).collect(),
        }
    }

    /// Parses the JSON interchange form: an array of points, each an array
    /// of `n + 1` rational strings (`"p/q"` or integers).
    pub fn from_json(text: &str) -> Result<Self, LinalgError> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| LinalgError::Parse {
                position: format!("line {}, column {}", e.line(), e.column()),
                token: String::new(),
                reason: e.to_string(),
            })?;
        let bad = |position: String, token: &serde_json::Value, reason: &str| LinalgError::Parse {
            position,
            token: token.to_string(),
            reason: reason.to_string(),
        };
        let arr = value
            .as_array()
            .ok_or_else(|| bad("top level".into(), &value, "expected an array of points"))?;
        let mut points = Vec::with_capacity(arr.len());
        let mut width = None;
        for (i, p) in arr.iter().enumerate() {
            let coords = p
                .as_array()
                .ok_or_else(|| bad(format!("point {i}"), p, "expected an array of coordinates"))?;
            if coords.is_empty() {
                return Err(bad(format!("point {i}"), p, "empty coordinate vector"));
            }
            match width {
                None => width = Some(coords.len()),
                Some(w) if w != coords.len() => {
                    return Err(bad(
                        format!("point {i}"),
                        p,
                        &format!("expected {w} coordinates, found {}", coords.len()),
                    ))
                }
                _ => {}
            }
            let mut row = Vec::with_capacity(coords.len());
            for (j, c) in coords.iter().enumerate() {
                let parsed = match c {
                    serde_json::Value::String(s) => parse_rational(s),
                    serde_json::Value::Number(num) => {
                        num.as_i64().map(|x| BigRational::from_integer(x.into()))
                    }
                    _ => None,
                };
                row.push(parsed.ok_or_else(|| {
                    bad(
                        format!("point {i}, coordinate {j}"),
                        c,
                        "not an exact rational",
                    )
                })?);
            }
            points.push(row);
        }
        let n = width.ok_or(LinalgError::EmptyConfiguration)? - 1;
        Self::new(n, points)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("configuration serializes")
    }
}

impl Serialize for PointConfiguration {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.points.len()))?;
        for p in &self.points {
            let coords: Vec<String> = p.iter().map(format_rational).collect();
            seq.serialize_element(&coords)?;
        }
        seq.end()
    }
}

impl fmt::Display for PointConfiguration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            let coords: Vec<String> = p.iter().map(format_rational).collect();
            write!(f, "[{}]", coords.join(":"))?;
        }
        Ok(())
    }
}

/// Parses `"p/q"` or `"p"` with optional sign; rejects zero denominators.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

/// `"p/q"`, or bare `"p"` for integers.
pub fn format_rational(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

fn normalize(p: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let lead = p.iter().find(|x| !x.is_zero())?.clone();
    if lead.is_one() {
        return Some(p);
    }
    Some(p.into_iter().map(|x| x / &lead).collect())
}

/// Advances `subset` to the next `k`-combination of `0..n` in lex order.
fn next_combination(subset: &mut [usize], n: usize) -> bool {
    let k = subset.len();
    for i in (0..k).rev() {
        if subset[i] < n - k + i {
            subset[i] += 1;
            for j in i + 1..k {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
