//! Criticality bound with `s` vertices pinned to fixed positions.
//!
//! The `v - s` free vertices are ordered uniformly at random over the free
//! positions. Edges are grouped by their exact intersection with the
//! locked set (a bitmask, bit `i` for locked vertex `i`); only the class
//! sizes enter the bound. For every position the chance that its vertex
//! is critical is bounded by the smallest of three sums: the vertex is
//! last in some edge, first in some edge, or last in one edge and first in
//! another edge meeting it only there.
//!
//! Every probability has the form `falling(b, r) falling(a, r') /
//! falling(F, j)` where `F` is the number of free vertices, `b`/`a` the
//! free slots before/after the position, and `j <= 2n - 1`. All terms are
//! therefore integers over the shared denominator `falling(F, J)`,
//! `J = min(2n - 1, F)`, which keeps evaluation in integer arithmetic.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{falling, Rational};

/// Edge counts by exact intersection with the locked set; index 0 counts
/// edges avoiding every locked vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClassCounts {
    pub s: u8,
    pub counts: [u64; 8],
}

impl ClassCounts {
    /// Build from the counts of the `2^s - 1` nonempty classes and the
    /// total edge count.
    pub fn new(s: u8, m: u64, nonempty: &[u64]) -> Result<Self> {
        if !(1..=3).contains(&s) || nonempty.len() != (1usize << s) - 1 {
            return Err(Error::Infeasible(format!(
                "expected {} class counts for s = {s}",
                (1usize << s).saturating_sub(1)
            )));
        }
        let used: u64 = nonempty.iter().sum();
        if used > m {
            return Err(Error::Infeasible(format!(
                "classes hold {used} edges but m = {m}"
            )));
        }
        let mut counts = [0u64; 8];
        counts[0] = m - used;
        counts[1..(1usize << s)].copy_from_slice(nonempty);
        Ok(ClassCounts { s, counts })
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    fn pair_count(&self, a: u8, b: u8) -> u64 {
        let (x, y) = (self.counts[a as usize], self.counts[b as usize]);
        if a == b {
            x * x.saturating_sub(1)
        } else {
            x * y
        }
    }
}

/// How many (edge, vertex) incidences an edge class contributes for a free
/// position: the published single-lock formulas charge every edge `n`
/// vertices; the exact count is the number of free vertices in the edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Incidence {
    Published,
    Exact,
}

#[derive(Debug, Clone)]
struct Term {
    mask: u8,
    exact: BigUint,
    approx: f64,
}

#[derive(Debug, Clone)]
struct PairTerm {
    a: u8,
    b: u8,
    exact: BigUint,
    approx: f64,
}

#[derive(Debug, Clone, Default)]
struct PositionTerms {
    last: Vec<Term>,
    first: Vec<Term>,
    pairs: Vec<PairTerm>,
}

/// Precomputed coefficients for one `(n, v, placement)`; independent of
/// the edge counts, so one table serves every profile and every `m`.
#[derive(Debug, Clone)]
pub struct BoundTable {
    n: u32,
    v: u64,
    placement: Vec<u64>,
    denominator: BigUint,
    positions: Vec<PositionTerms>,
}

fn popcount(x: u8) -> u32 {
    x.count_ones()
}

impl BoundTable {
    /// `placement[i]` is the 1-based position of locked vertex `i`.
    pub fn new(n: u32, v: u64, placement: &[u64], incidence: Incidence) -> Result<Self> {
        let s = placement.len();
        if !(1..=3).contains(&s) {
            return Err(Error::pre("locked bound", format!("{s} locked vertices (need 1..=3)")));
        }
        if n < 2 {
            return Err(Error::pre("locked bound", "need n >= 2"));
        }
        for (i, &p) in placement.iter().enumerate() {
            if p == 0 || p > v {
                return Err(Error::pre("locked bound", format!("position {p} outside 1..={v}")));
            }
            if placement[..i].contains(&p) {
                return Err(Error::pre("locked bound", format!("position {p} used twice")));
            }
        }
        let free = v - s as u64;
        if free == 0 {
            return Err(Error::pre("locked bound", "no free vertices"));
        }
        let big_j = (2 * n as u64 - 1).min(free);
        let denominator = falling(free, big_j);
        let denom_f = denominator.to_f64().unwrap_or(f64::INFINITY);
        let nn = n as u64;
        let full: u8 = ((1u16 << s) - 1) as u8;

        // numerator scaled to the shared denominator, or None if the
        // configuration cannot occur
        let scale = |num: BigUint, j: u64| -> Option<BigUint> {
            if j > big_j || num.is_zero() {
                return None;
            }
            Some(num * falling(free - j, big_j - j))
        };
        let approx = |x: &BigUint| -> f64 {
            let r = Rational::ratio(x.clone(), denominator.clone()).to_f64_approx();
            if r.is_finite() {
                r
            } else {
                x.to_f64().unwrap_or(f64::INFINITY) / denom_f
            }
        };

        let mut positions = Vec::with_capacity(v as usize);
        for k in 1..=v {
            let mut before: u8 = 0;
            let mut after: u8 = 0;
            let mut here: Option<u8> = None;
            for (i, &p) in placement.iter().enumerate() {
                let bit = 1u8 << i;
                match p.cmp(&k) {
                    std::cmp::Ordering::Less => before |= bit,
                    std::cmp::Ordering::Greater => after |= bit,
                    std::cmp::Ordering::Equal => here = Some(bit),
                }
            }
            let b = (k - 1) - popcount(before) as u64;
            let a = (v - k) - popcount(after) as u64;
            let mut terms = PositionTerms::default();
            match here {
                None => {
                    // free vertex: its edges have |A| locked and n - |A| free
                    // vertices, itself included
                    for mask in 0..=full {
                        let size = popcount(mask) as u64;
                        if size + 1 > nn {
                            continue;
                        }
                        let r = nn - 1 - size;
                        let mult = match incidence {
                            Incidence::Published => nn,
                            Incidence::Exact => nn - size,
                        };
                        if mask & !before == 0 {
                            if let Some(e) = scale(falling(b, r) * mult, r + 1) {
                                terms.last.push(Term { mask, approx: approx(&e), exact: e });
                            }
                        }
                        if mask & !after == 0 {
                            if let Some(e) = scale(falling(a, r) * mult, r + 1) {
                                terms.first.push(Term { mask, approx: approx(&e), exact: e });
                            }
                        }
                    }
                    for ma in 0..=full {
                        if ma & !before != 0 || popcount(ma) as u64 + 1 > nn {
                            continue;
                        }
                        for mb in 0..=full {
                            if mb & !after != 0 || popcount(mb) as u64 + 1 > nn {
                                continue;
                            }
                            let ra = nn - 1 - popcount(ma) as u64;
                            let rb = nn - 1 - popcount(mb) as u64;
                            let num = falling(b, ra) * falling(a, rb);
                            if let Some(e) = scale(num, ra + rb + 1) {
                                terms.pairs.push(PairTerm { a: ma, b: mb, approx: approx(&e), exact: e });
                            }
                        }
                    }
                }
                Some(bit) => {
                    for mask in 0..=full {
                        if mask & bit == 0 || popcount(mask) as u64 > nn {
                            continue;
                        }
                        let r = nn - popcount(mask) as u64;
                        let others = mask & !bit;
                        if others & !before == 0 {
                            if let Some(e) = scale(falling(b, r), r) {
                                terms.last.push(Term { mask, approx: approx(&e), exact: e });
                            }
                        }
                        if others & !after == 0 {
                            if let Some(e) = scale(falling(a, r), r) {
                                terms.first.push(Term { mask, approx: approx(&e), exact: e });
                            }
                        }
                    }
                    for ma in 0..=full {
                        if ma & bit == 0 || (ma & !bit) & !before != 0 || popcount(ma) as u64 > nn {
                            continue;
                        }
                        for mb in 0..=full {
                            if mb & bit == 0
                                || (mb & !bit) & !after != 0
                                || ma & mb != bit
                                || popcount(mb) as u64 > nn
                            {
                                continue;
                            }
                            let ra = nn - popcount(ma) as u64;
                            let rb = nn - popcount(mb) as u64;
                            let num = falling(b, ra) * falling(a, rb);
                            if let Some(e) = scale(num, ra + rb) {
                                terms.pairs.push(PairTerm { a: ma, b: mb, approx: approx(&e), exact: e });
                            }
                        }
                    }
                }
            }
            positions.push(terms);
        }
        Ok(BoundTable {
            n,
            v,
            placement: placement.to_vec(),
            denominator,
            positions,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn v(&self) -> u64 {
        self.v
    }

    pub fn placement(&self) -> &[u64] {
        &self.placement
    }

    fn check(&self, c: &ClassCounts) {
        assert_eq!(
            c.s as usize,
            self.placement.len(),
            "class counts for s = {} on a table with {} locked vertices",
            c.s,
            self.placement.len()
        );
    }

    /// Exact bound value.
    pub fn eval(&self, c: &ClassCounts) -> Rational {
        Rational::ratio(self.eval_scaled(c), self.denominator.clone())
    }

    /// `eval(c) < 1`, decided on integers.
    pub fn refutes(&self, c: &ClassCounts) -> bool {
        self.eval_scaled(c) < self.denominator
    }

    /// Numerator of the bound over the table denominator.
    pub fn eval_scaled(&self, c: &ClassCounts) -> BigUint {
        self.check(c);
        let mut total = BigUint::zero();
        for pos in &self.positions {
            let last = weighted(pos.last.iter().map(|t| (c.counts[t.mask as usize], &t.exact)));
            let first = weighted(pos.first.iter().map(|t| (c.counts[t.mask as usize], &t.exact)));
            let both = weighted(pos.pairs.iter().map(|t| (c.pair_count(t.a, t.b), &t.exact)));
            total += last.min(first).min(both);
        }
        total
    }

    /// Floating-point estimate used to order and skip exact evaluations.
    /// Never used for a verdict.
    pub fn approx(&self, c: &ClassCounts) -> f64 {
        self.check(c);
        let mut total = 0.0;
        for pos in &self.positions {
            let last: f64 = pos.last.iter().map(|t| c.counts[t.mask as usize] as f64 * t.approx).sum();
            let first: f64 = pos.first.iter().map(|t| c.counts[t.mask as usize] as f64 * t.approx).sum();
            let both: f64 = pos.pairs.iter().map(|t| c.pair_count(t.a, t.b) as f64 * t.approx).sum();
            total += last.min(first).min(both);
        }
        total
    }

    /// Exact per-position contributions, for inspection and tests.
    pub fn position_terms(&self, c: &ClassCounts) -> Vec<[Rational; 3]> {
        self.check(c);
        let d = &self.denominator;
        self.positions
            .iter()
            .map(|pos| {
                let last = weighted(pos.last.iter().map(|t| (c.counts[t.mask as usize], &t.exact)));
                let first = weighted(pos.first.iter().map(|t| (c.counts[t.mask as usize], &t.exact)));
                let both = weighted(pos.pairs.iter().map(|t| (c.pair_count(t.a, t.b), &t.exact)));
                [
                    Rational::ratio(last, d.clone()),
                    Rational::ratio(first, d.clone()),
                    Rational::ratio(both, d.clone()),
                ]
            })
            .collect()
    }
}

fn weighted<'a>(items: impl Iterator<Item = (u64, &'a BigUint)>) -> BigUint {
    let mut acc = BigUint::zero();
    for (w, x) in items {
        if w != 0 {
            acc += x * w;
        }
    }
    acc
}

/// All injective assignments of `s` locked vertices to positions in the
/// window `c - below ..= c + above` around `c = ceil(v/2)`, clipped to
/// `1..=v`, in lexicographic order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlacementWindow {
    pub below: u64,
    pub above: u64,
}

impl PlacementWindow {
    pub const CENTER: PlacementWindow = PlacementWindow { below: 0, above: 0 };
    pub const PAIR: PlacementWindow = PlacementWindow { below: 0, above: 1 };
    pub const TRIPLE: PlacementWindow = PlacementWindow { below: 1, above: 1 };
    pub const WIDE: PlacementWindow = PlacementWindow { below: 2, above: 2 };

    pub fn placements(&self, v: u64, s: usize) -> Vec<Vec<u64>> {
        let c = v.div_ceil(2);
        let lo = c.saturating_sub(self.below).max(1);
        let hi = (c + self.above).min(v);
        let slots: Vec<u64> = (lo..=hi).collect();
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(s);
        fn rec(slots: &[u64], s: usize, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
            if cur.len() == s {
                out.push(cur.clone());
                return;
            }
            for &p in slots {
                if !cur.contains(&p) {
                    cur.push(p);
                    rec(slots, s, cur, out);
                    cur.pop();
                }
            }
        }
        rec(&slots, s, &mut cur, &mut out);
        out
    }
}

/// One table per placement in a window.
#[derive(Debug, Clone)]
pub struct PlacementFamily {
    pub window: PlacementWindow,
    tables: Vec<BoundTable>,
}

/// Outcome of minimizing the bound over a placement family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyVerdict {
    /// Some placement gives a value below one.
    Refuted { placement: Vec<u64>, value: Rational },
    /// Every placement gives at least one; `value` is the exact minimum.
    Survives { placement: Vec<u64>, value: Rational },
}

impl FamilyVerdict {
    pub fn is_refuted(&self) -> bool {
        matches!(self, FamilyVerdict::Refuted { .. })
    }

    pub fn value(&self) -> &Rational {
        match self {
            FamilyVerdict::Refuted { value, .. } | FamilyVerdict::Survives { value, .. } => value,
        }
    }
}

/// Float estimates at or above this are not checked exactly while looking
/// for a refuting placement. A refutation is always confirmed exactly.
const SCREEN: f64 = 1.0 + 1e-7;

/// Relative slack when picking placements for the exact minimum.
const NEAR_MIN: f64 = 1e-9;

impl PlacementFamily {
    pub fn new(n: u32, v: u64, s: usize, window: PlacementWindow, incidence: Incidence) -> Result<Self> {
        let tables = window
            .placements(v, s)
            .iter()
            .map(|p| BoundTable::new(n, v, p, incidence))
            .collect::<Result<Vec<_>>>()?;
        if tables.is_empty() {
            return Err(Error::pre("placement family", format!("window holds fewer than {s} positions")));
        }
        Ok(PlacementFamily { window, tables })
    }

    pub fn tables(&self) -> &[BoundTable] {
        &self.tables
    }

    /// Minimize over placements. Float estimates only decide the order in
    /// which placements are tried exactly; the verdict is exact.
    pub fn evaluate(&self, c: &ClassCounts) -> FamilyVerdict {
        let mut order: Vec<(f64, usize)> = self
            .tables
            .iter()
            .enumerate()
            .map(|(i, t)| (t.approx(c), i))
            .collect();
        order.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)));
        for &(est, i) in &order {
            if est >= SCREEN {
                break;
            }
            let t = &self.tables[i];
            if t.refutes(c) {
                return FamilyVerdict::Refuted {
                    placement: t.placement.clone(),
                    value: t.eval(c),
                };
            }
        }
        // exact minimum over the placements whose estimate is near the
        // smallest one; the others are far above it
        let cutoff = order[0].0 * (1.0 + NEAR_MIN);
        let (value, i) = order
            .iter()
            .take_while(|&&(est, _)| est <= cutoff)
            .map(|&(_, i)| (self.tables[i].eval(c), i))
            .min()
            .expect("nonempty family");
        let placement = self.tables[i].placement.clone();
        if value.is_below_one() {
            FamilyVerdict::Refuted { placement, value }
        } else {
            FamilyVerdict::Survives { placement, value }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_placements() {
        assert_eq!(PlacementWindow::CENTER.placements(11, 1), vec![vec![6]]);
        assert_eq!(PlacementWindow::PAIR.placements(10, 2), vec![vec![5, 6], vec![6, 5]]);
        assert_eq!(PlacementWindow::TRIPLE.placements(9, 3).len(), 6);
        assert_eq!(PlacementWindow::WIDE.placements(30, 3).len(), 60);
    }

    #[test]
    fn rejects_bad_placements() {
        assert!(BoundTable::new(3, 7, &[0], Incidence::Exact).is_err());
        assert!(BoundTable::new(3, 7, &[8], Incidence::Exact).is_err());
        assert!(BoundTable::new(3, 7, &[2, 2], Incidence::Exact).is_err());
    }

    #[test]
    fn class_counts_validation() {
        assert!(ClassCounts::new(2, 5, &[1, 2, 3]).is_err());
        assert!(ClassCounts::new(2, 5, &[1, 2]).is_err());
        let c = ClassCounts::new(2, 10, &[1, 2, 3]).unwrap();
        assert_eq!(c.counts[0], 4);
        assert_eq!(c.total(), 10);
    }

    #[test]
    fn scaled_and_rational_agree() {
        let t = BoundTable::new(5, 23, &[12, 13, 11], Incidence::Exact).unwrap();
        let c = ClassCounts::new(3, 31, &[3, 3, 2, 1, 1, 1, 0]).unwrap();
        let terms = t.position_terms(&c);
        let summed: Rational = terms
            .into_iter()
            .map(|[a, b, c]| a.min(b).min(c))
            .sum();
        assert_eq!(summed, t.eval(&c));
        let approx = t.approx(&c);
        assert!((approx - t.eval(&c).to_f64_approx()).abs() < 1e-12);
    }

    #[test]
    fn empty_hypergraph_is_zero() {
        let t = BoundTable::new(4, 12, &[6, 7], Incidence::Exact).unwrap();
        let c = ClassCounts::new(2, 0, &[0, 0, 0]).unwrap();
        assert!(t.eval(&c).is_zero());
    }

    fn eval(n: u32, v: u64, m: u64, pos: &[u64], classes: &[u64], inc: Incidence) -> Rational {
        let t = BoundTable::new(n, v, pos, inc).unwrap();
        t.eval(&ClassCounts::new(pos.len() as u8, m, classes).unwrap())
    }

    #[test]
    fn matches_reference_values() {
        use Incidence::*;
        type Case<'a> = (u32, u64, u64, &'a [u64], &'a [u64], Incidence, &'a str);
        let cases: [Case; 6] = [
            (5, 23, 31, &[12], &[7], Exact, "25812/24871"),
            (5, 23, 31, &[12], &[7], Published, "25812/24871"),
            (6, 39, 63, &[20, 21], &[9, 1, 8], Exact, "42366943/38418765"),
            (5, 23, 31, &[12, 13, 11], &[3, 3, 1, 2, 1, 1, 0], Exact, "3726/4199"),
            (4, 15, 20, &[8, 7], &[2, 3, 2], Published, "1135/858"),
            (7, 60, 120, &[30, 31, 29], &[5, 4, 2, 6, 1, 1, 1], Exact, "675043232053/761100725385"),
        ];
        for (n, v, m, pos, cl, inc, want) in cases {
            assert_eq!(eval(n, v, m, pos, cl, inc), want.parse().unwrap(), "n={n} v={v} m={m} {pos:?}");
        }
    }
}
