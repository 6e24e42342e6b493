//! Dense matrices over the rationals with exact rank and kernel computations.
//!
//! Rank is computed by fraction-free (Bareiss) elimination after clearing the
//! denominators of each row, so every intermediate value is an integer minor
//! of the scaled matrix. Kernels use reduced row echelon form over `BigRational`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Dense row-major matrix of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![BigRational::zero(); rows * cols],
        }
    }

    /// Builds a matrix from rows; every row must have `cols` entries.
    pub fn from_rows(cols: usize, rows: Vec<Vec<BigRational>>) -> Self {
        let n_rows = rows.len();
        let mut entries = Vec::with_capacity(n_rows * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix row");
            entries.extend(row);
        }
        Self {
            rows: n_rows,
            cols,
            entries,
        }
    }

    pub fn from_integer_rows(cols: usize, rows: &[Vec<BigInt>]) -> Self {
        Self::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().cloned().map(BigRational::from_integer).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: BigRational) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[BigRational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    /// Rows scaled by the lcm of their denominators, giving an integer matrix
    /// with the same row space.
    pub fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|r| {
                let row = self.row(r);
                let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        bareiss_rank(self.integer_rows(), self.cols)
    }

    /// Basis of the right kernel `{v : M v = 0}`, one vector per free column of
    /// the reduced row echelon form, with a 1 in that free column.
    pub fn kernel_basis(&self) -> Vec<Vec<BigRational>> {
        let (rref, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![BigRational::zero(); self.cols];
            v[free] = BigRational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -rref.get(r, free).clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (ExactMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..m.cols {
            if lead == m.rows {
                break;
            }
            let Some(pr) = (lead..m.rows).find(|&r| !m.get(r, c).is_zero()) else {
                continue;
            };
            m.swap_rows(lead, pr);
            let inv = m.get(lead, c).recip();
            for j in c..m.cols {
                let v = m.get(lead, j) * &inv;
                m.set(lead, j, v);
            }
            for r in 0..m.rows {
                if r == lead || m.get(r, c).is_zero() {
                    continue;
                }
                let factor = m.get(r, c).clone();
                for j in c..m.cols {
                    let v = m.get(r, j) - &factor * m.get(lead, j);
                    m.set(r, j, v);
                }
            }
            pivots.push(c);
            lead += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

/// Rank of an integer matrix by fraction-free Gaussian elimination.
///
/// Every division is exact: after processing `k` pivots, the entry in row `i`,
/// column `j` is the minor on pivot rows/columns plus `(i, j)`.
pub fn bareiss_rank(mut a: Vec<Vec<BigInt>>, cols: usize) -> usize {
    let rows = a.len();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pr) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, pr);
        let (top, rest) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let pivot = &pivot_row[c];
        for row in rest.iter_mut() {
            let lead = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let v = pivot * &row[j] - &lead * &pivot_row[j];
                debug_assert!((&v % &prev).is_zero());
                row[j] = v / &prev;
            }
        }
        prev = pivot.clone();
        rank += 1;
    }
    rank
}

/// Incrementally maintained row space of integer vectors.
///
/// Stored rows are primitive and each has zeros in the pivot columns of all
/// rows inserted before it.
#[derive(Debug, Clone)]
pub struct RowSpan {
    cols: usize,
    rows: Vec<(usize, Vec<BigInt>)>,
}

impl RowSpan {
    pub fn new(cols: usize) -> Self {
        Self {
            cols,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.cols
    }

    /// Adds a vector; returns whether the rank grew.
    pub fn insert(&mut self, mut v: Vec<BigInt>) -> bool {
        debug_assert_eq!(v.len(), self.cols);
        for (pc, row) in &self.rows {
            if v[*pc].is_zero() {
                continue;
            }
            let a = row[*pc].clone();
            let b = std::mem::take(&mut v[*pc]);
            for j in 0..self.cols {
                if j == *pc {
                    continue;
                }
                if row[j].is_zero() {
                    if !v[j].is_zero() {
                        v[j] *= &a;
                    }
                } else {
                    v[j] = &a * &v[j] - &b * &row[j];
                }
            }
            make_primitive(&mut v);
        }
        match v.iter().position(|x| !x.is_zero()) {
            Some(pc) => {
                self.rows.push((pc, v));
                true
            }
            None => false,
        }
    }
}

/// Divides a vector by the gcd of its entries and makes the leading entry positive.
pub fn make_primitive(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return;
    }
    let flip = v
        .iter()
        .find(|x| !x.is_zero())
        .is_some_and(|x| x.is_negative());
    let g = if flip { -g } else { g };
    if !g.is_one() {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
}

/// Clears denominators of a rational vector and makes it primitive.
pub fn primitive_integer_vector(v: &[BigRational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut out: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    make_primitive(&mut out);
    out
}
