//! The first page of the Vassiliev spectral sequence of the discriminant in
//! the space of degree-`d` forms on `P^n`, its Alexander dual, and the
//! degree and weight bookkeeping that pins the stable cohomology.
//!
//! Throughout, `c = binomial(d + n, n)` is the complex dimension of the space
//! of forms. For `l <= n + 1` the stratum `F_l` has
//!
//! ```text
//! BM_k(F_l) = BM^{sign}_{k - 2c + 2ln + l + 1}(B_l(P^n)) (x) Q(c - l(n+1))
//! ```
//!
//! and Alexander duality sends `BM_k` to `H^{2c - 1 - k}` twisted by `Q(-c)`.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::homology::{
    gl_cohomology, twisted_config_bm, GradedTateVector, HomologyError, TateIndex,
};
use crate::linalg::{LinalgError, ParameterTriple};

/// Largest `n` accepted by [`verify_stable_match`] unless a bound is given.
pub const DEFAULT_MAX_N: u32 = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum E1Error {
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Params(#[from] LinalgError),
    #[error("column l = {l} outside 1..={max}")]
    ColumnOutOfRange { l: u32, max: u32 },
    #[error("n = {n} exceeds the configured bound {max}")]
    DimensionTooLarge { n: u32, max: u32 },
    #[error("degree d = {d} is below 3")]
    DegreeTooSmall { d: u32 },
    #[error("arithmetic overflow computing {0}")]
    Overflow(&'static str),
}

/// `binomial(d + n, n)` as a signed degree.
pub fn ambient_dim(d: u32, n: u32) -> Result<i64, E1Error> {
    let c = crate::linalg::binomial(u64::from(d) + u64::from(n), u64::from(n))
        .ok_or(E1Error::Overflow("c"))?;
    let c = i64::try_from(c).map_err(|_| E1Error::Overflow("c"))?;
    c.checked_mul(2).ok_or(E1Error::Overflow("2c"))?;
    Ok(c)
}

/// Borel-Moore homology of the stratum `F_l`, with its predicted support range.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StratumSupport {
    pub l: u32,
    pub bm_table: GradedTateVector,
    /// `[2c - l(2n+2-l) - 1, 2c - l^2 - 1]`
    pub range: (i64, i64),
}

pub fn stratum_bm(d: u32, n: u32, l: u32) -> Result<StratumSupport, E1Error> {
    let c = ambient_dim(d, n)?;
    stratum_bm_with_c(c, n, l)
}

fn stratum_bm_with_c(c: i64, n: u32, l: u32) -> Result<StratumSupport, E1Error> {
    if l < 1 || l > n + 1 {
        return Err(E1Error::ColumnOutOfRange { l, max: n + 1 });
    }
    let (li, ni) = (i64::from(l), i64::from(n));
    // BM_k(F_l) corresponds to twisted degree j = k - offset
    let offset = 2 * c - 2 * li * ni - li - 1;
    let fibre_twist = c - li * (ni + 1);
    let mut bm_table = GradedTateVector::new();
    for cell in twisted_config_bm(l, n)?.cells() {
        bm_table.add(
            cell.degree + offset,
            cell.dim,
            cell.tate.shifted(fibre_twist),
        )?;
    }
    let range = (2 * c - li * (2 * ni + 2 - li) - 1, 2 * c - li * li - 1);
    Ok(StratumSupport { l, bm_table, range })
}

/// Upper bound on the real dimension of the substratum `Phi_l` of `F_N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PhiBound {
    pub l: u32,
    pub max_real_dim: i64,
}

/// Whether a parameter triple lies where the vanishing argument applies, with reasons if not.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Regime {
    pub guaranteed: bool,
    pub notes: Vec<String>,
}

impl Regime {
    fn for_params(p: &ParameterTriple) -> Self {
        let mut notes = Vec::new();
        if p.num_points < 3 {
            notes.push(format!("N = {} < 3", p.num_points));
        }
        if !p.in_lemma_range() {
            notes.push(format!("d = {} < 2N - 1 = {}", p.d, 2 * p.num_points - 1));
        }
        if p.num_points <= p.n + 1 {
            notes.push(format!("N = {} <= n + 1 = {}", p.num_points, p.n + 1));
        }
        if !notes.is_empty() {
            notes.insert(0, "outside guaranteed regime".into());
        }
        Self {
            guaranteed: notes.is_empty(),
            notes,
        }
    }
}

/// One nonzero group of the E1 page together with its Alexander dual.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct E1Entry {
    pub l: u32,
    pub bm_degree: i64,
    pub dual_degree: i64,
    pub dim: u64,
    pub bm_tate: TateIndex,
    pub dual_tate: TateIndex,
    /// Hodge weight of the dual cohomology class.
    pub weight: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct E1Page {
    pub params: ParameterTriple,
    pub c: i64,
    pub columns: BTreeMap<u32, StratumSupport>,
    /// `BM_k(F_N)` vanishes for `k >= 2c - N`.
    pub fn_threshold: i64,
    /// `dim Phi_l <= 2c - 2N + l` for `0 <= l <= N - 1`.
    pub phi_bounds: Vec<PhiBound>,
    pub regime: Regime,
}

impl E1Page {
    pub fn entries(&self) -> impl Iterator<Item = E1Entry> + '_ {
        let c = self.c;
        self.columns.values().flat_map(move |col| {
            col.bm_table.cells().map(move |cell| {
                let dual_tate = cell.tate.shifted(-c);
                E1Entry {
                    l: col.l,
                    bm_degree: cell.degree,
                    dual_degree: 2 * c - 1 - cell.degree,
                    dim: cell.dim,
                    bm_tate: cell.tate,
                    dual_tate,
                    weight: dual_tate.weight(),
                }
            })
        })
    }

    pub fn min_supported_degree(&self) -> Option<i64> {
        self.columns
            .values()
            .filter_map(|c| c.bm_table.min_degree())
            .min()
    }

    /// CSV rows `l,bm_degree,dual_degree,dim,weight`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("l,bm_degree,dual_degree,dim,weight\n");
        for e in self.entries() {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                e.l, e.bm_degree, e.dual_degree, e.dim, e.weight
            ));
        }
        out
    }
}

/// Columns `1..=n+1` of the E1 page plus the bounds describing column `N`.
///
/// Parameters outside `N >= 3`, `d >= 2N - 1`, `N > n + 1` are accepted and
/// stamped as outside the guaranteed regime.
pub fn assemble_e1(params: ParameterTriple) -> Result<E1Page, E1Error> {
    let c = ambient_dim(params.d, params.n)?;
    let columns = (1..=params.n + 1)
        .map(|l| Ok((l, stratum_bm_with_c(c, params.n, l)?)))
        .collect::<Result<BTreeMap<_, _>, E1Error>>()?;
    let big_n = i64::from(params.num_points);
    let phi_bounds = (0..params.num_points)
        .map(|l| PhiBound {
            l,
            max_real_dim: 2 * c - 2 * big_n + i64::from(l),
        })
        .collect();
    Ok(E1Page {
        params,
        c,
        columns,
        fn_threshold: 2 * c - big_n,
        phi_bounds,
        regime: Regime::for_params(&params),
    })
}

/// Alexander dual of the assembled columns: `BM_k` goes to `H^{2c-1-k}` with
/// Tate index lowered by `c`. Only positive cohomological degrees are kept.
pub fn alexander_dual(page: &E1Page) -> Result<GradedTateVector, E1Error> {
    let mut out = GradedTateVector::new();
    for e in page.entries() {
        if e.dual_degree > 0 {
            out.add(e.dual_degree, e.dim, e.dual_tate)?;
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StableMatch {
    pub n: u32,
    pub verified: bool,
    /// Degrees `l(2n+2-l) - i`, repeated by the Betti number `b_i(G(l, C^{n+1}))`.
    pub strata_degrees: Vec<i64>,
    pub gl_degrees: Vec<i64>,
    /// In the strata multiset but not in the GL multiset.
    pub extra: Vec<i64>,
    /// In the GL multiset but not in the strata multiset.
    pub missing: Vec<i64>,
    /// The two tables also agree Tate piece by Tate piece.
    pub weights_match: bool,
    pub strata_table: GradedTateVector,
}

pub fn verify_stable_match(n: u32) -> Result<StableMatch, E1Error> {
    verify_stable_match_bounded(n, DEFAULT_MAX_N)
}

/// Compares the dual degrees of all strata columns with the positive part
/// of `H^*(GL_{n+1}(C))`. The dual degree of a Grassmannian class of degree
/// `i` in column `l` is `l(2n+2-l) - i`, which does not involve `d`.
pub fn verify_stable_match_bounded(n: u32, max_n: u32) -> Result<StableMatch, E1Error> {
    if n > max_n {
        return Err(E1Error::DimensionTooLarge { n, max: max_n });
    }
    let ni = i64::from(n);
    let mut strata_table = GradedTateVector::new();
    for l in 1..=n + 1 {
        let li = i64::from(l);
        for cell in twisted_config_bm(l, n)?.cells() {
            // twisted degree j = i + l(l-1), dual degree 2ln + l - j
            let degree = 2 * li * ni + li - cell.degree;
            strata_table.add(degree, cell.dim, cell.tate.shifted(-li * (ni + 1)))?;
        }
    }
    let (_, gl) = gl_cohomology(n)?;
    let gl_positive = gl.restrict(1..);
    let strata_degrees = strata_table.degree_multiset();
    let gl_degrees = gl_positive.degree_multiset();
    let (extra, missing) = multiset_difference(&strata_degrees, &gl_degrees);
    Ok(StableMatch {
        n,
        verified: extra.is_empty() && missing.is_empty(),
        weights_match: strata_table == gl_positive,
        strata_degrees,
        gl_degrees,
        extra,
        missing,
        strata_table,
    })
}

fn multiset_difference(a: &[i64], b: &[i64]) -> (Vec<i64>, Vec<i64>) {
    let mut counts: BTreeMap<i64, i64> = BTreeMap::new();
    for &x in a {
        *counts.entry(x).or_default() += 1;
    }
    for &x in b {
        *counts.entry(x).or_default() -= 1;
    }
    let mut only_a = Vec::new();
    let mut only_b = Vec::new();
    for (x, k) in counts {
        if k > 0 {
            only_a.extend(std::iter::repeat_n(x, k as usize));
        } else if k < 0 {
            only_b.extend(std::iter::repeat_n(x, (-k) as usize));
        }
    }
    (only_a, only_b)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VanishingBand {
    pub params: ParameterTriple,
    pub c: i64,
    /// Open interval of cohomological degrees `((n+1)^2, N)`.
    pub band: (i64, i64),
    pub band_has_no_degrees: bool,
    /// Closed interval `[2c - N, 2c - (n+1)^2 - 2]` of BM degrees that must carry no E1 entry.
    pub bm_interval: (i64, i64),
    pub min_supported_bm_degree: Option<i64>,
    /// Strata entries found inside `bm_interval`.
    pub offending: Vec<E1Entry>,
    /// Largest `Phi_l` dimension bound lies below the `F_N` threshold.
    pub last_stratum_ok: bool,
    /// The minimal support is `2c - (n+1)^2 - 1`, attained only in column `n+1`.
    pub minimal_support_ok: bool,
    pub verified: bool,
    pub regime: Regime,
}

pub fn vanishing_band(params: ParameterTriple) -> Result<VanishingBand, E1Error> {
    let page = assemble_e1(params)?;
    let c = page.c;
    let top = i64::from(params.n + 1).pow(2);
    let big_n = i64::from(params.num_points);
    let band = (top, big_n);
    let bm_interval = (2 * c - big_n, 2 * c - top - 2);
    let offending: Vec<E1Entry> = page
        .entries()
        .filter(|e| (bm_interval.0..=bm_interval.1).contains(&e.bm_degree))
        .collect();
    let last_stratum_ok = page
        .phi_bounds
        .iter()
        .all(|b| b.max_real_dim < page.fn_threshold);
    let min_supported = page.min_supported_degree();
    let lowest = 2 * c - top - 1;
    let minimal_support_ok = min_supported == Some(lowest)
        && page
            .entries()
            .filter(|e| e.bm_degree == lowest)
            .all(|e| e.l == params.n + 1);
    Ok(VanishingBand {
        params,
        c,
        band,
        band_has_no_degrees: band.0 + 1 >= band.1,
        bm_interval,
        min_supported_bm_degree: min_supported,
        verified: offending.is_empty() && last_stratum_ok && minimal_support_ok,
        offending,
        last_stratum_ok,
        minimal_support_ok,
        regime: page.regime,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightPiece {
    pub dim: u64,
    pub tate: TateIndex,
    pub weight: i64,
    /// `weight - degree`: the number of exterior generators, equal to the E1 column.
    pub l: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StableRow {
    pub k: i64,
    pub dim_x: u64,
    pub pieces: Vec<WeightPiece>,
    pub dim_moduli: u64,
    /// Dual of the strata columns; `None` where `F_N` is not excluded (`k >= N`).
    pub e1_upper_bound: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StableRangeReport {
    pub d: u32,
    pub n: u32,
    #[serde(rename = "N")]
    pub num_points: u32,
    /// Stable degrees are `0 <= k <= max_stable_degree`, i.e. `k < (d+1)/2`.
    pub max_stable_degree: i64,
    pub rows: Vec<StableRow>,
    /// Every row with an E1 bound has bound equal to the predicted dimension.
    pub consistent: bool,
    pub regime: Regime,
}

/// Predicted `H^k` of the space of non-singular forms and of the moduli
/// space of smooth hypersurfaces for `k < (d+1)/2`, taking the largest `N`
/// with `d >= 2N - 1`.
pub fn stable_range_report(d: u32, n: u32) -> Result<StableRangeReport, E1Error> {
    if d < 3 {
        return Err(E1Error::DegreeTooSmall { d });
    }
    let num_points = d.div_ceil(2);
    let params = ParameterTriple::new(d, n, num_points)?;
    let page = assemble_e1(params)?;
    let dual = alexander_dual(&page)?;
    let (_, gl) = gl_cohomology(n)?;
    let max_stable_degree = i64::from(d / 2);
    let rows: Vec<StableRow> = (0..=max_stable_degree)
        .map(|k| {
            let pieces = gl
                .cells()
                .filter(|c| c.degree == k)
                .map(|c| WeightPiece {
                    dim: c.dim,
                    tate: c.tate,
                    weight: c.tate.weight(),
                    l: c.tate.weight() - k,
                })
                .collect();
            StableRow {
                k,
                dim_x: gl.dim(k),
                pieces,
                dim_moduli: u64::from(k == 0),
                e1_upper_bound: (k > 0 && k < i64::from(num_points)).then(|| dual.dim(k)),
            }
        })
        .collect();
    let consistent = rows
        .iter()
        .all(|r| r.e1_upper_bound.is_none_or(|b| b == r.dim_x));
    Ok(StableRangeReport {
        d,
        n,
        num_points,
        max_stable_degree,
        rows,
        consistent,
        regime: page.regime,
    })
}
