//! Monomial bases of spaces of homogeneous forms.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// A monomial `x_0^{e_0} ... x_n^{e_n}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exponents: Vec<u32>,
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Self { exponents }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn num_vars(&self) -> usize {
        self.exponents.len()
    }

    /// Partial derivative with respect to `x_var`, as `(coefficient, monomial)`.
    /// `None` when the derivative vanishes identically.
    pub fn derivative(&self, var: usize) -> Option<(u32, Monomial)> {
        let e = self.exponents[var];
        if e == 0 {
            return None;
        }
        let mut exponents = self.exponents.clone();
        exponents[var] -= 1;
        Some((e, Monomial { exponents }))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.num_vars(), other.num_vars());
        Monomial {
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Evaluates the monomial at an integer coordinate vector.
    pub fn eval(&self, point: &[BigInt]) -> BigInt {
        let mut acc = BigInt::one();
        for (x, &e) in point.iter().zip(&self.exponents) {
            if e == 0 {
                continue;
            }
            if x.is_zero() {
                return BigInt::zero();
            }
            acc *= num_traits::pow(x.clone(), e as usize);
        }
        acc
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, &e) in self.exponents.iter().enumerate() {
            match e {
                0 => continue,
                1 => write!(f, "x{i}")?,
                _ => write!(f, "x{i}^{e}")?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// All monomials of degree `d` in `n + 1` variables, in graded lexicographic
/// order (`x_0` largest). Within a single degree this is plain lex order.
pub fn enumerate_monomials(d: u32, n: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = vec![0u32; n + 1];
    fill(d, 0, &mut current, &mut out);
    out
}

fn fill(remaining: u32, var: usize, current: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if var + 1 == current.len() {
        current[var] = remaining;
        out.push(Monomial::new(current.clone()));
        return;
    }
    for e in (0..=remaining).rev() {
        current[var] = e;
        fill(remaining - e, var + 1, current, out);
    }
    current[var] = 0;
}

/// Monomial basis of a fixed degree together with a reverse index.
#[derive(Debug, Clone)]
pub struct MonomialBasis {
    degree: u32,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl MonomialBasis {
    pub fn new(degree: u32, n: usize) -> Self {
        let monomials = enumerate_monomials(degree, n);
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        Self {
            degree,
            monomials,
            index,
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }
}

/// `binomial(a, b)` with overflow detection.
pub fn binomial(a: u64, b: u64) -> Option<u64> {
    if b > a {
        return Some(0);
    }
    let b = b.min(a - b);
    let mut acc: u128 = 1;
    for i in 0..b {
        acc = acc * u128::from(a - i) / u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return None;
        }
    }
    u64::try_from(acc).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_forms_in_two_variables() {
        let ms = enumerate_monomials(1, 1);
        assert_eq!(
            ms,
            vec![Monomial::new(vec![1, 0]), Monomial::new(vec![0, 1])]
        );
    }

    #[test]
    fn counts_match_binomial() {
        assert_eq!(enumerate_monomials(3, 2).len(), 10);
        for d in 0..7u32 {
            for n in 0..5usize {
                let expected = binomial(u64::from(d) + n as u64, n as u64).unwrap();
                assert_eq!(enumerate_monomials(d, n).len() as u64, expected);
            }
        }
    }

    #[test]
    fn constants() {
        let ms = enumerate_monomials(0, 3);
        assert_eq!(ms.len(), 1);
        assert_eq!(ms[0].degree(), 0);
        assert_eq!(ms[0].to_string(), "1");
    }

    #[test]
    fn order_is_strictly_decreasing_lex() {
        let ms = enumerate_monomials(4, 3);
        for w in ms.windows(2) {
            assert!(w[0].exponents() > w[1].exponents());
        }
        assert!(ms.iter().all(|m| m.degree() == 4));
    }

    #[test]
    fn derivative_and_eval() {
        let m = Monomial::new(vec![2, 1]);
        let (c, dm) = m.derivative(0).unwrap();
        assert_eq!(c, 2);
        assert_eq!(dm, Monomial::new(vec![1, 1]));
        assert!(Monomial::new(vec![0, 3]).derivative(0).is_none());
        let p = [BigInt::from(3), BigInt::from(-2)];
        assert_eq!(m.eval(&p), BigInt::from(-18));
    }

    #[test]
    fn binomial_overflow() {
        assert_eq!(binomial(5, 2), Some(10));
        assert_eq!(binomial(2, 5), Some(0));
        assert_eq!(binomial(200, 100), None);
    }
}
