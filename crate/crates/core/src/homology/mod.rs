//! Closed-form homology tables: Grassmannians, sign-twisted Borel-Moore
//! homology of unordered configuration spaces of `P^n`, and the cohomology
//! of `GL_{n+1}(C)`.

pub mod tate;

use std::collections::BTreeMap;

use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

pub use tate::{GradedTateVector, TateCell, TateIndex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("l = {l} outside 1..={max}")]
    IndexOutOfRange { l: u32, max: u32 },
    #[error("Tate index {numer}/{denom} in degree {degree} is not integral")]
    NonIntegralTate { degree: i64, numer: i64, denom: i64 },
    #[error("arithmetic overflow computing {0}")]
    Overflow(&'static str),
}

/// Coefficients of the Gaussian binomial `[m, k]_q`, lowest degree first.
///
/// Built by the q-Pascal rule `[m, k] = [m-1, k-1] + q^k [m-1, k]`.
/// Empty when `k > m`.
pub fn gaussian_binomial(m: u32, k: u32) -> Result<Vec<u64>, HomologyError> {
    if k > m {
        return Ok(Vec::new());
    }
    // row[k] holds [r, k]_q for the current r
    let mut row: Vec<Vec<u64>> = vec![vec![1]];
    for r in 1..=m {
        let mut next: Vec<Vec<u64>> = Vec::with_capacity(row.len() + 1);
        for j in 0..=r.min(k) {
            let j = j as usize;
            let len = j * (r as usize - j) + 1;
            let mut coeffs = vec![0u64; len];
            if j > 0 {
                for (i, &c) in row[j - 1].iter().enumerate() {
                    coeffs[i] = c;
                }
            }
            if j < row.len() {
                for (i, &c) in row[j].iter().enumerate() {
                    let slot = &mut coeffs[i + j];
                    *slot = slot
                        .checked_add(c)
                        .ok_or(HomologyError::Overflow("Gaussian binomial"))?;
                }
            }
            next.push(coeffs);
        }
        row = next;
    }
    Ok(row.swap_remove(k as usize))
}

/// Evaluates an integer polynomial (lowest degree first) at `q`.
pub fn evaluate_polynomial(coeffs: &[u64], q: u64) -> Option<u128> {
    let q = u128::from(q);
    coeffs.iter().rev().try_fold(0u128, |acc, &c| {
        acc.checked_mul(q)?.checked_add(u128::from(c))
    })
}

/// Rational homology of `G(l, C^{n+1})`: degree `2i` has the coefficient of
/// `q^i` in `[n+1, l]_q`, Tate index `i`. Empty when `l > n + 1`.
pub fn grassmannian_poincare(l: u32, n: u32) -> Result<GradedTateVector, HomologyError> {
    let mut table = GradedTateVector::new();
    for (i, &c) in gaussian_binomial(n + 1, l)?.iter().enumerate() {
        let i = i as i64;
        table.add(2 * i, c, TateIndex::new(i))?;
    }
    Ok(table)
}

/// Borel-Moore homology of `B_l(P^n)` with coefficients in the sign local
/// system: the Grassmannian homology shifted up by `l(l-1)`, with degree `j`
/// carrying Tate index `j/2`.
pub fn twisted_config_bm(l: u32, n: u32) -> Result<GradedTateVector, HomologyError> {
    if l < 1 || l > n + 1 {
        return Err(HomologyError::IndexOutOfRange { l, max: n + 1 });
    }
    let shift = i64::from(l) * (i64::from(l) - 1);
    let mut table = GradedTateVector::new();
    for c in grassmannian_poincare(l, n)?.cells() {
        let j = c.degree + shift;
        table.add_ratio(j, c.dim, Ratio::new(j, 2))?;
    }
    Ok(table)
}

/// Odd-degree exterior generator `eta_k` of `H^*(GL_{n+1}(C))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Generator {
    pub k: u32,
    pub degree: u32,
    /// Hodge type `(k+1, k+1)`
    pub hodge_type: (u32, u32),
}

impl Generator {
    pub fn tate(&self) -> TateIndex {
        TateIndex::new(-(i64::from(self.k) + 1))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct GeneratorList {
    pub generators: Vec<Generator>,
}

impl GeneratorList {
    pub fn top_degree(&self) -> u32 {
        self.generators.iter().map(|g| g.degree).sum()
    }
}

/// `H^*(GL_{n+1}(C); Q)` as the exterior algebra on `eta_0, ..., eta_n`.
///
/// A product of `r` generators `eta_{k_1} ... eta_{k_r}` lies in degree
/// `sum (2 k_i + 1)` with Tate index `-sum (k_i + 1)`.
pub fn gl_cohomology(n: u32) -> Result<(GeneratorList, GradedTateVector), HomologyError> {
    let generators: Vec<Generator> = (0..=n)
        .map(|k| Generator {
            k,
            degree: 2 * k + 1,
            hodge_type: (k + 1, k + 1),
        })
        .collect();
    // (degree, tate) -> dim, multiplied out one generator at a time
    let mut poly: BTreeMap<(i64, i64), u64> = BTreeMap::from([((0, 0), 1)]);
    for g in &generators {
        let mut next = poly.clone();
        for (&(deg, tate), &dim) in &poly {
            let slot = next
                .entry((deg + i64::from(g.degree), tate + g.tate().value()))
                .or_insert(0);
            *slot = slot
                .checked_add(dim)
                .ok_or(HomologyError::Overflow("exterior algebra"))?;
        }
        poly = next;
    }
    let mut table = GradedTateVector::new();
    for ((deg, tate), dim) in poly {
        table.add(deg, dim, TateIndex::new(tate))?;
    }
    Ok((GeneratorList { generators }, table))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::binomial;
    use proptest::prelude::*;

    fn entries(t: &GradedTateVector) -> Vec<(i64, u64, i64)> {
        t.cells()
            .map(|c| (c.degree, c.dim, c.tate.value()))
            .collect()
    }

    /// Independent route: product formula prod (1 - q^{m-k+i}) / (1 - q^i)
    /// with exact polynomial long division.
    fn gaussian_by_division(m: u32, k: u32) -> Vec<u64> {
        let mul = |a: &[i64], deg: usize| {
            let mut out = vec![0i64; a.len() + deg];
            for (i, &c) in a.iter().enumerate() {
                out[i] += c;
                out[i + deg] -= c;
            }
            out
        };
        let div = |a: &[i64], deg: usize| {
            // divide by (1 - q^deg); exact
            let mut q = vec![0i64; a.len() - deg];
            let mut rem = a.to_vec();
            for i in 0..q.len() {
                q[i] = rem[i];
                rem[i + deg] += rem[i];
                rem[i] = 0;
            }
            assert!(rem.iter().all(|&x| x == 0));
            q
        };
        let mut p = vec![1i64];
        for i in 1..=k as usize {
            p = mul(&p, m as usize - k as usize + i);
            p = div(&p, i);
        }
        p.into_iter().map(|c| c as u64).collect()
    }

    #[test]
    fn projective_line() {
        assert_eq!(
            entries(&grassmannian_poincare(1, 1).unwrap()),
            vec![(0, 1, 0), (2, 1, 1)]
        );
    }

    #[test]
    fn grassmannian_of_planes_in_four_space() {
        assert_eq!(gaussian_binomial(4, 2).unwrap(), vec![1, 1, 2, 1, 1]);
        assert_eq!(
            evaluate_polynomial(&gaussian_binomial(4, 2).unwrap(), 2),
            Some(35)
        );
        let t = grassmannian_poincare(2, 3).unwrap();
        assert_eq!(
            entries(&t),
            vec![(0, 1, 0), (2, 1, 1), (4, 2, 2), (6, 1, 3), (8, 1, 4)]
        );
    }

    #[test]
    fn top_grassmannian_is_a_point_and_empty_beyond() {
        for n in 0..6 {
            assert_eq!(
                entries(&grassmannian_poincare(n + 1, n).unwrap()),
                vec![(0, 1, 0)]
            );
            assert!(grassmannian_poincare(n + 2, n).unwrap().is_empty());
        }
    }

    #[test]
    fn q_pascal_matches_product_formula() {
        for m in 0..10 {
            for k in 0..=m {
                assert_eq!(
                    gaussian_binomial(m, k).unwrap(),
                    gaussian_by_division(m, k),
                    "[{m},{k}]"
                );
            }
        }
    }

    #[test]
    fn twisted_bm_examples() {
        for n in 1..5 {
            let a = twisted_config_bm(1, n).unwrap();
            assert_eq!(a, grassmannian_poincare(1, n).unwrap());
        }
        assert_eq!(entries(&twisted_config_bm(2, 1).unwrap()), vec![(2, 1, 1)]);
        for n in 1..6i64 {
            let t = twisted_config_bm(n as u32 + 1, n as u32).unwrap();
            assert_eq!(entries(&t), vec![(n * (n + 1), 1, n * (n + 1) / 2)]);
        }
        assert!(twisted_config_bm(0, 2).is_err());
        assert!(twisted_config_bm(4, 2).is_err());
    }

    #[test]
    fn twisted_bm_support() {
        for n in 1..6u32 {
            for l in 1..=n + 1 {
                let t = twisted_config_bm(l, n).unwrap();
                let (l, n) = (i64::from(l), i64::from(n));
                assert_eq!(t.min_degree(), Some(l * (l - 1)));
                assert_eq!(t.max_degree(), Some(l * (l - 1) + 2 * l * (n + 1 - l)));
                assert!(t
                    .cells()
                    .all(|c| c.degree % 2 == 0 && 2 * c.tate.value() == c.degree));
                assert_eq!(
                    t.total_dim(),
                    grassmannian_poincare(l as u32, n as u32)
                        .unwrap()
                        .total_dim()
                );
            }
        }
    }

    #[test]
    fn gl_examples() {
        let (gens, t) = gl_cohomology(1).unwrap();
        assert_eq!(t.degrees().collect::<Vec<_>>(), vec![0, 1, 3, 4]);
        assert!(t.degrees().all(|d| t.dim(d) == 1));
        assert_eq!(gens.top_degree(), 4);
        assert_eq!(t.pure_tate(4), Some(TateIndex::new(-3)));

        let (_, t) = gl_cohomology(2).unwrap();
        assert_eq!(
            t.degrees().collect::<Vec<_>>(),
            vec![0, 1, 3, 4, 5, 6, 8, 9]
        );
        assert!(t.degrees().all(|d| t.dim(d) == 1));

        let (gens, t) = gl_cohomology(0).unwrap();
        assert_eq!(entries(&t), vec![(0, 1, 0), (1, 1, -1)]);
        assert_eq!(gens.generators[0].hodge_type, (1, 1));
    }

    #[test]
    fn gl_top_class_and_mixed_degree() {
        for n in 0..9u32 {
            let (gens, t) = gl_cohomology(n).unwrap();
            let top = i64::from((n + 1) * (n + 1));
            assert_eq!(gens.top_degree() as i64, top);
            assert_eq!(t.max_degree(), Some(top));
            assert_eq!(t.dim(top), 1);
            assert_eq!(
                t.pure_tate(top),
                Some(TateIndex::new(-i64::from((n + 1) * (n + 2) / 2)))
            );
            assert_eq!(t.total_dim(), 1 << (n + 1));
            assert!(gens
                .generators
                .windows(2)
                .all(|w| w[0].degree < w[1].degree));
        }
        // eta_4 and eta_0 eta_1 eta_2 share degree 9 with different weights
        let (_, t) = gl_cohomology(4).unwrap();
        assert_eq!(t.dim(9), 2);
        assert_eq!(t.pure_tate(9), None);
    }

    proptest! {
        #[test]
        fn gaussian_symmetric_unimodal(m in 0u32..9, k in 0u32..9) {
            prop_assume!(k <= m);
            let c = gaussian_binomial(m, k).unwrap();
            let rev: Vec<u64> = c.iter().rev().copied().collect();
            prop_assert_eq!(&c, &rev);
            let peak = c.len() / 2;
            prop_assert!(c[..=peak].windows(2).all(|w| w[0] <= w[1]));
            prop_assert_eq!(&c, &gaussian_binomial(m, m - k).unwrap());
            prop_assert_eq!(evaluate_polynomial(&c, 1).unwrap() as u64, binomial(u64::from(m), u64::from(k)).unwrap());
        }
    }
}
