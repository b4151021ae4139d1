//! The permutation form of the greedy-coloring bound: for a hypergraph on
//! exactly `v` vertices, bound the chance that the vertex in each position
//! is critical and sum over positions.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classic::{random_coloring_ceil, schoenheim};
use crate::error::{Error, Result};
use crate::exact::{binom, BinomialTable, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GammaKind {
    Trivial,
    PairRefined,
    DegreeRefined,
}

/// Upper estimate for γ, the number of ordered edge pairs meeting in
/// exactly one vertex, together with what it was computed from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaEstimate {
    pub kind: GammaKind,
    pub value: u64,
    pub m: Option<u64>,
    pub r: Option<u64>,
    pub degrees: Option<Vec<u64>>,
    pub pair_max: Option<Vec<u64>>,
}

pub fn gamma_trivial(m: u64) -> GammaEstimate {
    GammaEstimate {
        kind: GammaKind::Trivial,
        value: m * m.saturating_sub(1),
        m: Some(m),
        r: None,
        degrees: None,
        pair_max: None,
    }
}

/// `m(m-1) - r(r-1)` when some pair of vertices lies in `r` edges.
pub fn gamma_pair_refined(m: u64, r: u64) -> Result<GammaEstimate> {
    if r > m {
        return Err(Error::pre("gamma_pair_refined", format!("r = {r} > m = {m}")));
    }
    Ok(GammaEstimate {
        kind: GammaKind::PairRefined,
        value: m * m.saturating_sub(1) - r * r.saturating_sub(1),
        m: Some(m),
        r: Some(r),
        degrees: None,
        pair_max: None,
    })
}

/// `Σ_i l_i(l_i - 1) - r_i(r_i - 1)` from vertex degrees `l_i` and the
/// largest multiplicity `r_i` of a pair at vertex `i`, floored at zero.
pub fn gamma_degree_refined(degrees: &[u64], pair_max: &[u64]) -> Result<GammaEstimate> {
    if degrees.len() != pair_max.len() {
        return Err(Error::pre(
            "gamma_degree_refined",
            format!("{} degrees vs {} pair maxima", degrees.len(), pair_max.len()),
        ));
    }
    let total: i128 = degrees
        .iter()
        .zip(pair_max)
        .map(|(&l, &r)| {
            let (l, r) = (l as i128, r as i128);
            l * (l - 1).max(0) - r * (r - 1).max(0)
        })
        .sum();
    Ok(GammaEstimate {
        kind: GammaKind::DegreeRefined,
        value: total.max(0) as u64,
        m: None,
        r: None,
        degrees: Some(degrees.to_vec()),
        pair_max: Some(pair_max.to_vec()),
    })
}

/// One evaluation of the permutation bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscreteBoundQuery {
    pub n: u32,
    pub v: u64,
    pub m: u64,
    pub gamma: u64,
}

impl DiscreteBoundQuery {
    pub fn trivial(n: u32, v: u64, m: u64) -> Self {
        DiscreteBoundQuery {
            n,
            v,
            m,
            gamma: gamma_trivial(m).value,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n < 2 || self.v < self.n as u64 {
            return Err(Error::pre(
                "perm_bound",
                format!("need v >= n >= 2, got n = {}, v = {}", self.n, self.v),
            ));
        }
        if self.v < 2 * self.n as u64 - 1 && self.gamma > 0 {
            return Err(Error::pre(
                "perm_bound",
                format!(
                    "v = {} < 2n - 1: no two edges can meet in one vertex, so gamma must be 0 (got {})",
                    self.v, self.gamma
                ),
            ));
        }
        Ok(())
    }
}

/// Per-position terms scaled by the common denominator
/// `v · C(v-1, n-1) · C(v-n, n-1)`, so that position `k` contributes
/// `min(first, second, third) / denominator`.
struct ScaledTerms {
    denominator: BigUint,
    per_k: Vec<[BigUint; 3]>,
}

fn scaled_terms(q: &DiscreteBoundQuery, table: Option<&BinomialTable>) -> ScaledTerms {
    let (n, v) = (q.n as i64, q.v as i64);
    let c = |a: i64, b: i64| -> BigUint {
        match table {
            Some(t) if a >= 0 && (a as usize) < t.rows() => t.get(a, b).clone(),
            _ => crate::exact::binom_signed(a, b),
        }
    };
    let top = c(v - 1, n - 1);
    let gap = c(v - n, n - 1);
    let mn = BigUint::from(q.m * q.n as u64);
    let gamma = BigUint::from(q.gamma);
    let per_k = (1..=v)
        .map(|k| {
            let before = c(k - 1, n - 1);
            let after = c(v - k, n - 1);
            [
                &mn * &before * &gap,
                &mn * &after * &gap,
                &gamma * &before * &after,
            ]
        })
        .collect();
    ScaledTerms {
        denominator: BigUint::from(q.v) * top * gap,
        per_k,
    }
}

fn scaled_sum(t: &ScaledTerms) -> BigUint {
    t.per_k
        .iter()
        .map(|[a, b, c]| a.min(b).min(c).clone())
        .sum()
}

/// Exact upper bound on the probability that a uniformly random ordering
/// of `v` vertices has a critical vertex, for any hypergraph with `m`
/// edges and at most `gamma` ordered edge pairs meeting in one vertex.
pub fn perm_bound(q: &DiscreteBoundQuery) -> Result<Rational> {
    q.validate()?;
    let t = scaled_terms(q, None);
    if t.denominator.is_zero() {
        // v < 2n - 1 with gamma = 0: the third term vanishes everywhere
        return Ok(Rational::zero());
    }
    Ok(Rational::ratio(scaled_sum(&t), t.denominator))
}

/// The `k`-th summand (1-based position) of [`perm_bound`].
pub fn perm_summand(q: &DiscreteBoundQuery, k: u64) -> Result<Rational> {
    q.validate()?;
    if k == 0 || k > q.v {
        return Err(Error::pre("perm_summand", format!("k = {k} outside 1..={}", q.v)));
    }
    let t = scaled_terms(q, None);
    if t.denominator.is_zero() {
        return Ok(Rational::zero());
    }
    let [a, b, c] = &t.per_k[(k - 1) as usize];
    Ok(Rational::ratio(a.min(b).min(c).clone(), t.denominator))
}

/// `perm_bound(q) < 1`, decided on integers without forming the rational.
pub fn perm_refutes(q: &DiscreteBoundQuery) -> Result<bool> {
    perm_refutes_with(q, None)
}

fn perm_refutes_with(q: &DiscreteBoundQuery, table: Option<&BinomialTable>) -> Result<bool> {
    q.validate()?;
    let t = scaled_terms(q, table);
    if t.denominator.is_zero() {
        return Ok(true);
    }
    Ok(scaled_sum(&t) < t.denominator)
}

/// `C(v-1, n-1) < n · C(v-n, n-1)`: the trivial-γ permutation bound can
/// only improve on the random-coloring bound at `v` when this holds.
pub fn improvement_possible(n: u32, v: u64) -> Result<bool> {
    if v < 2 * n as u64 - 1 {
        return Err(Error::pre("improvement_possible", format!("need v >= 2n - 1, got {v}")));
    }
    let k = n as i64 - 1;
    Ok(binom(v - 1, k) < binom(v - n as u64, k) * n)
}

/// Smallest `m` whose trivial-γ permutation bound at `(n, v)` is not below
/// one; every smaller edge count is refuted.
pub fn perm_threshold(n: u32, v: u64) -> Result<u64> {
    let table = BinomialTable::new(v as usize + 1, n as usize);
    perm_threshold_with(n, v, &table)
}

fn perm_threshold_with(n: u32, v: u64, table: &BinomialTable) -> Result<u64> {
    let refutes = |m: u64| perm_refutes_with(&DiscreteBoundQuery::trivial(n, v, m), Some(table));
    // m = 1 has gamma = 0 and is refuted whenever v >= n + 1
    if !refutes(1)? {
        return Ok(1);
    }
    let (mut lo, mut hi) = (1u64, 2u64);
    while refutes(hi)? {
        lo = hi;
        hi *= 2;
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if refutes(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(hi)
}

/// Lower bounds on m(n, v) at one vertex count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscreteRow {
    pub v: u64,
    pub schoenheim: u64,
    pub random_coloring: u64,
    pub permutation: u64,
    /// Largest of the three.
    pub bound: u64,
}

impl DiscreteRow {
    /// The Goldberg–Russell value at this `v`.
    pub fn goldberg_russell(&self) -> u64 {
        self.schoenheim.max(self.random_coloring)
    }
}

pub fn discrete_row(n: u32, v: u64) -> Result<DiscreteRow> {
    let table = BinomialTable::new(v as usize + 1, n as usize);
    discrete_row_with(n, v, &table)
}

fn discrete_row_with(n: u32, v: u64, table: &BinomialTable) -> Result<DiscreteRow> {
    if v < 2 * n as u64 - 1 {
        return Err(Error::pre("discrete_row", format!("need v >= 2n - 1, got {v}")));
    }
    let s = schoenheim(n, v);
    let rc = random_coloring_ceil(n, v)
        .and_then(|x| x.to_u64())
        .unwrap_or(u64::MAX);
    let p = perm_threshold_with(n, v, table)?;
    Ok(DiscreteRow {
        v,
        schoenheim: s,
        random_coloring: rc,
        permutation: p,
        bound: s.max(rc).max(p),
    })
}

/// Per-v table and its minimum, the discrete lower bound on m(n).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscreteScan {
    pub n: u32,
    pub bound: u64,
    pub v_star: u64,
    pub rows: Vec<DiscreteRow>,
}

/// Scan `v_min..=v_max`; rows are evaluated in parallel and reduced in
/// `v` order, so the result does not depend on scheduling.
pub fn discrete_lower_bound(n: u32, v_min: u64, v_max: u64) -> Result<DiscreteScan> {
    if v_min < 2 * n as u64 + 1 || v_max < v_min {
        return Err(Error::pre(
            "discrete_lower_bound",
            format!("need 2n + 1 <= v_min <= v_max, got {v_min}..={v_max}"),
        ));
    }
    let table = BinomialTable::new(v_max as usize + 1, n as usize);
    let rows: Vec<DiscreteRow> = (v_min..=v_max)
        .into_par_iter()
        .map(|v| discrete_row_with(n, v, &table))
        .collect::<Result<_>>()?;
    let best = rows
        .iter()
        .min_by_key(|r| (r.bound, r.v))
        .expect("nonempty range");
    Ok(DiscreteScan {
        n,
        bound: best.bound,
        v_star: best.v,
        rows: rows.clone(),
    })
}
