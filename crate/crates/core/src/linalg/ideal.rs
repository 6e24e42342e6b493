//! Degreewise linear algebra of point ideals and their squares.
//!
//! For points `p_1, ..., p_N` with ideal `I`, the degree-`d` forms singular at
//! every `p_j` are the kernel of the singularity matrix; this is the symbolic
//! square `I^(2)` in degree `d`. The ordinary square `I^2` is the span of
//! products of lower-degree elements of `I`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::matrix::{primitive_integer_vector, ExactMatrix, RowSpan};
use super::monomial::{Monomial, MonomialBasis};
use super::points::PointConfiguration;
use super::LinalgError;

/// Which square of the point ideal a Hilbert function is taken of.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SquareMode {
    Symbolic,
    Ordinary,
}

/// Rows indexed by (point, partial derivative), columns by the degree-`d`
/// monomial basis; entry `(j, i), m` is `dm/dx_i (p_j)`.
pub fn singularity_matrix(d: u32, config: &PointConfiguration) -> Result<ExactMatrix, LinalgError> {
    if d == 0 {
        return Err(LinalgError::InvalidDegree {
            degree: d,
            minimum: 1,
        });
    }
    Ok(singularity_matrix_of_vectors(
        d,
        config.dimension(),
        &config.integer_points(),
    ))
}

/// Singularity matrix for arbitrary integer representatives of points.
pub(crate) fn singularity_matrix_of_vectors(d: u32, n: usize, pts: &[Vec<BigInt>]) -> ExactMatrix {
    let basis = MonomialBasis::new(d, n);
    let mut rows = Vec::with_capacity(pts.len() * (n + 1));
    for p in pts {
        for var in 0..=n {
            rows.push(
                basis
                    .monomials()
                    .iter()
                    .map(|m| match m.derivative(var) {
                        Some((c, dm)) => BigInt::from(c) * dm.eval(p),
                        None => BigInt::zero(),
                    })
                    .collect(),
            );
        }
    }
    ExactMatrix::from_integer_rows(basis.len(), &rows)
}

/// Number of independent conditions imposed on degree-`d` forms by being
/// singular at every point of the configuration.
pub fn codimension(d: u32, config: &PointConfiguration) -> Result<usize, LinalgError> {
    Ok(singularity_matrix(d, config)?.rank())
}

/// Rows indexed by points, columns by degree-`e` monomials; entry `m(p_j)`.
pub fn evaluation_matrix(e: u32, config: &PointConfiguration) -> ExactMatrix {
    let basis = MonomialBasis::new(e, config.dimension());
    let rows: Vec<Vec<BigInt>> = config
        .integer_points()
        .iter()
        .map(|p| basis.monomials().iter().map(|m| m.eval(p)).collect())
        .collect();
    ExactMatrix::from_integer_rows(basis.len(), &rows)
}

/// Basis of `I_e`, the degree-`e` forms vanishing at every point, as
/// coefficient vectors over the graded-lex monomial basis.
pub fn ideal_degree_part(e: u32, config: &PointConfiguration) -> Vec<Vec<BigRational>> {
    evaluation_matrix(e, config).kernel_basis()
}

/// Basis of the symbolic square in degree `d`.
pub fn symbolic_square_part(
    d: u32,
    config: &PointConfiguration,
) -> Result<Vec<Vec<BigRational>>, LinalgError> {
    Ok(singularity_matrix(d, config)?.kernel_basis())
}

/// `dim (I^(2))_d`, the space of degree-`d` forms singular at all points.
pub fn symbolic_square_dim(d: u32, config: &PointConfiguration) -> Result<usize, LinalgError> {
    let m = singularity_matrix(d, config)?;
    Ok(m.cols() - m.rank())
}

type SparseForm = Vec<(Monomial, BigInt)>;

fn sparse_basis(e: u32, config: &PointConfiguration) -> Vec<SparseForm> {
    let basis = MonomialBasis::new(e, config.dimension());
    ideal_degree_part(e, config)
        .iter()
        .map(|v| {
            primitive_integer_vector(v)
                .into_iter()
                .zip(basis.monomials())
                .filter(|(c, _)| !c.is_zero())
                .map(|(c, m)| (m.clone(), c))
                .collect()
        })
        .collect()
}

/// Dimension of the span of all products `g h` with `g` in `I_a`, `h` in
/// `I_{d-a}`, `1 <= a <= d-1`.
pub fn ordinary_square_dim(d: u32, config: &PointConfiguration) -> Result<usize, LinalgError> {
    if d < 2 {
        return Err(LinalgError::InvalidDegree {
            degree: d,
            minimum: 2,
        });
    }
    let target = MonomialBasis::new(d, config.dimension());
    let parts: Vec<Vec<SparseForm>> = (0..d)
        .map(|e| {
            if e == 0 {
                Vec::new()
            } else {
                sparse_basis(e, config)
            }
        })
        .collect();
    let mut span = RowSpan::new(target.len());
    'splits: for a in 1..=d / 2 {
        let (low, high) = (&parts[a as usize], &parts[(d - a) as usize]);
        for (i, g) in low.iter().enumerate() {
            // when both factors have the same degree only unordered pairs matter
            let start = if a == d - a { i } else { 0 };
            for h in &high[start..] {
                let mut v = vec![BigInt::zero(); target.len()];
                for (mg, cg) in g {
                    for (mh, ch) in h {
                        let pos = target
                            .position(&mg.mul(mh))
                            .expect("product lies in degree d");
                        v[pos] += cg * ch;
                    }
                }
                span.insert(v);
                if span.is_full() {
                    break 'splits;
                }
            }
        }
    }
    Ok(span.rank())
}

/// Value at `d` of the Hilbert function of `R / I^(2)` or `R / I^2`.
pub fn hilbert_function(
    d: u32,
    config: &PointConfiguration,
    mode: SquareMode,
) -> Result<usize, LinalgError> {
    match mode {
        SquareMode::Symbolic => codimension(d, config),
        SquareMode::Ordinary => {
            let total = MonomialBasis::new(d, config.dimension()).len();
            if d < 2 {
                // I^2 has no elements of degree < 2
                return Ok(total);
            }
            Ok(total - ordinary_square_dim(d, config)?)
        }
    }
}
