//! Edge-count profiles of the locked vertices and their feasible ranges.

use serde::{Deserialize, Serialize};

use super::engine::ClassCounts;
use crate::error::{Error, Result};

/// How the locked vertices are chosen from a hypergraph. Each choice adds
/// its own constraints on the profile; a refutation holds under either.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SelectionStrategy {
    /// The locked vertices have the smallest degrees, in increasing order.
    A,
    /// Vertex 1 has minimum degree; each further vertex is a partner of
    /// vertex 1 of smallest pair multiplicity.
    B,
}

impl std::str::FromStr for SelectionStrategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(SelectionStrategy::A),
            "B" | "b" => Ok(SelectionStrategy::B),
            _ => Err(Error::pre("strategy", format!("unknown strategy {s:?} (A or B)"))),
        }
    }
}

impl std::fmt::Display for SelectionStrategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SelectionStrategy::A => "A",
            SelectionStrategy::B => "B",
        })
    }
}

/// Smallest possible degree: a vertex meets the other `v - 1` vertices,
/// `n - 1` per edge.
pub fn min_degree(n: u32, v: u64) -> u64 {
    (v - 1).div_ceil(n as u64 - 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LockProfile1 {
    pub l: u64,
}

impl LockProfile1 {
    pub fn classes(&self, m: u64) -> Result<ClassCounts> {
        ClassCounts::new(1, m, &[self.l])
    }

    pub fn validate(&self, n: u32, v: u64, m: u64) -> Result<()> {
        if self.l < min_degree(n, v) || self.l * v > m * n as u64 {
            return Err(Error::Infeasible(format!(
                "l = {} outside {}..={} for n = {n}, v = {v}, m = {m}",
                self.l,
                min_degree(n, v),
                m * n as u64 / v
            )));
        }
        Ok(())
    }
}

/// Degrees of two locked vertices and the number of edges holding both.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LockProfile2 {
    pub l1: u64,
    pub l2: u64,
    pub l12: u64,
}

impl LockProfile2 {
    pub fn classes(&self, m: u64) -> Result<ClassCounts> {
        if self.l12 > self.l1.min(self.l2) {
            return Err(Error::Infeasible(format!("L12 = {} exceeds a degree", self.l12)));
        }
        ClassCounts::new(2, m, &[self.l1 - self.l12, self.l2 - self.l12, self.l12])
    }

    pub fn validate(&self, n: u32, v: u64, m: u64, strategy: SelectionStrategy) -> Result<()> {
        if feasible2(n, v, m, strategy, self) {
            Ok(())
        } else {
            Err(Error::Infeasible(format!("{self:?} under strategy {strategy}")))
        }
    }
}

/// Three locked vertices, stored as edge counts by exact intersection with
/// the locked set: `l[A - 1]` for the bitmask `A` (bit 0 = vertex 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LockProfile3 {
    pub l: [u64; 7],
}

impl LockProfile3 {
    /// From degrees, pair multiplicities `[L12, L13, L23]` and the triple
    /// count. None if some exact class would be negative.
    pub fn from_subsets(deg: [u64; 3], pair: [u64; 3], triple: u64) -> Option<Self> {
        let [d1, d2, d3] = deg;
        let [p12, p13, p23] = pair;
        let sub = |x: u64, y: u64| x.checked_sub(y);
        let l12 = sub(p12, triple)?;
        let l13 = sub(p13, triple)?;
        let l23 = sub(p23, triple)?;
        let l1 = sub(d1 + triple, p12 + p13)?;
        let l2 = sub(d2 + triple, p12 + p23)?;
        let l3 = sub(d3 + triple, p13 + p23)?;
        // mask order 1, 2, 3, 4, 5, 6, 7
        Some(LockProfile3 { l: [l1, l2, l12, l3, l13, l23, triple] })
    }

    fn sum_over(&self, bits: u8) -> u64 {
        (1u8..8)
            .filter(|mask| mask & bits == bits)
            .map(|mask| self.l[mask as usize - 1])
            .sum()
    }

    pub fn degree(&self, i: usize) -> u64 {
        self.sum_over(1 << i)
    }

    pub fn pair(&self, i: usize, j: usize) -> u64 {
        self.sum_over((1 << i) | (1 << j))
    }

    pub fn triple(&self) -> u64 {
        self.l[6]
    }

    pub fn degrees(&self) -> [u64; 3] {
        [self.degree(0), self.degree(1), self.degree(2)]
    }

    /// `(L1, L2, L12)`.
    pub fn head(&self) -> LockProfile2 {
        LockProfile2 { l1: self.degree(0), l2: self.degree(1), l12: self.pair(0, 1) }
    }

    pub fn classes(&self, m: u64) -> Result<ClassCounts> {
        ClassCounts::new(3, m, &self.l)
    }
}

/// Degrees a minimum-degree vertex can have.
pub fn profiles1(n: u32, v: u64, m: u64) -> Vec<LockProfile1> {
    let hi = m * n as u64 / v;
    (min_degree(n, v)..=hi).map(|l| LockProfile1 { l }).collect()
}

fn feasible2(n: u32, v: u64, m: u64, strategy: SelectionStrategy, p: &LockProfile2) -> bool {
    let nn = n as u64;
    let mn = m * nn;
    let LockProfile2 { l1, l2, l12 } = *p;
    if l1 < min_degree(n, v) || l2 < l1 || l12 == 0 || l12 > l1 {
        return false;
    }
    if l1 + l2 - l12 > m {
        return false;
    }
    // each locked vertex covers its v - 1 pairs, the shared one l12 times
    if (nn - 1) * l1 < l12 + (v - 2) || (nn - 1) * l2 < l12 + (v - 2) {
        return false;
    }
    match strategy {
        SelectionStrategy::A => l1 + l2 + (v - 2) * l2 <= mn,
        SelectionStrategy::B => l1 + l2 + (v - 2) * l1 <= mn && l12 * (v - 1) <= l1 * (nn - 1),
    }
}

/// Feasible `(L1, L2, L12)` in lexicographic order.
pub fn profiles2(n: u32, v: u64, m: u64, strategy: SelectionStrategy) -> Vec<LockProfile2> {
    let mn = m * n as u64;
    let mut out = Vec::new();
    for l1 in min_degree(n, v)..=mn / v {
        let hi2 = match strategy {
            SelectionStrategy::A => (mn - l1) / (v - 1),
            SelectionStrategy::B => mn - (v - 1) * l1,
        };
        for l2 in l1..=hi2 {
            for l12 in 1..=l1 {
                let p = LockProfile2 { l1, l2, l12 };
                if feasible2(n, v, m, strategy, &p) {
                    out.push(p);
                }
            }
        }
    }
    out
}

/// Three-vertex feasibility: exact classes nonnegative, pair coverage at
/// every locked vertex, degree sums, and the strategy's ordering.
pub fn feasible3(n: u32, v: u64, m: u64, strategy: SelectionStrategy, p: &LockProfile3) -> bool {
    let nn = n as u64;
    let mn = m * nn;
    let d = p.degrees();
    let pairs = [p.pair(0, 1), p.pair(0, 2), p.pair(1, 2)];
    if pairs.contains(&0) || p.l.iter().sum::<u64>() > m {
        return false;
    }
    if d.iter().any(|&x| x < min_degree(n, v)) {
        return false;
    }
    let pair_of = |i: usize, j: usize| match (i.min(j), i.max(j)) {
        (0, 1) => pairs[0],
        (0, 2) => pairs[1],
        _ => pairs[2],
    };
    for (i, &di) in d.iter().enumerate() {
        let extra: u64 = (0..3).filter(|&j| j != i).map(|j| pair_of(i, j) - 1).sum();
        if (nn - 1) * di < (v - 1) + extra {
            return false;
        }
    }
    let total: u64 = d.iter().sum();
    match strategy {
        SelectionStrategy::A => d[0] <= d[1] && d[1] <= d[2] && total + (v - 3) * d[2] <= mn,
        SelectionStrategy::B => {
            d[0] <= d[1]
                && d[0] <= d[2]
                && pairs[0] <= pairs[1]
                && total + (v - 3) * d[0] <= mn
                && pairs[0] + (v - 2) * pairs[1] <= (nn - 1) * d[0]
        }
    }
}

/// All feasible three-vertex profiles whose `(L1, L2, L12)` is one of
/// `heads`, in canonical order. With strategy A the other pair
/// projections are also required to be in `heads` when the degree order
/// makes them valid selections.
pub fn profiles3(
    n: u32,
    v: u64,
    m: u64,
    strategy: SelectionStrategy,
    heads: &[LockProfile2],
) -> Vec<LockProfile3> {
    let mn = m * n as u64;
    let nn = n as u64;
    let head_set: std::collections::HashSet<LockProfile2> = heads.iter().copied().collect();
    let mut out = Vec::new();
    for h in heads {
        let (d1, d2, p12) = (h.l1, h.l2, h.l12);
        let (lo3, hi3) = match strategy {
            SelectionStrategy::A => (d2, (mn - d1 - d2) / (v - 2)),
            SelectionStrategy::B => (d1, (mn - d1 - d2).saturating_sub((v - 3) * d1)),
        };
        if (v - 3) * d1 > mn - d1 - d2 {
            continue;
        }
        for d3 in lo3..=hi3 {
            for t in 0..=p12 {
                for p13 in t.max(1)..=d1.min(d3) {
                    if strategy == SelectionStrategy::B && (p13 < p12 || p12 + (v - 2) * p13 > (nn - 1) * d1) {
                        continue;
                    }
                    for p23 in t.max(1)..=d2.min(d3) {
                        let Some(p) = LockProfile3::from_subsets([d1, d2, d3], [p12, p13, p23], t) else {
                            continue;
                        };
                        if !feasible3(n, v, m, strategy, &p) {
                            continue;
                        }
                        if strategy == SelectionStrategy::A {
                            if d3 == d2 && !head_set.contains(&LockProfile2 { l1: d1, l2: d3, l12: p13 }) {
                                continue;
                            }
                            if d1 == d2 && d2 == d3 && !head_set.contains(&LockProfile2 { l1: d2, l2: d3, l12: p23 }) {
                                continue;
                            }
                        }
                        out.push(p);
                    }
                }
            }
        }
    }
    out.sort();
    out
}
