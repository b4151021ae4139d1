//! Ground truth on small explicit hypergraphs: the greedy coloring run,
//! exact probabilities by enumerating orderings, 2-colorability by
//! backtracking, and Monte Carlo estimates for larger instances.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{factorial, Rational};

/// Vertex guard for plain enumeration.
pub const ENUMERATION_LIMIT: usize = 10;
/// Vertex guard when some positions are locked (`(v - s)!` orderings).
pub const LOCKED_ENUMERATION_LIMIT: usize = 12;
/// Vertex guard for the 2-colorability search.
pub const COLORABILITY_LIMIT: usize = 25;
/// Vertices are stored as bits of a `u64`.
pub const MAX_VERTICES: usize = 64;

/// Uniform hypergraph on vertices `1..=v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    v: usize,
    n: usize,
    edges: Vec<Vec<usize>>,
    masks: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct HypergraphJson {
    v: usize,
    n: usize,
    edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    pub fn new(v: usize, n: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        if v > MAX_VERTICES {
            return Err(Error::Hypergraph(format!("at most {MAX_VERTICES} vertices supported, got {v}")));
        }
        if n == 0 {
            return Err(Error::Hypergraph("edge size must be positive".into()));
        }
        let mut seen = BTreeSet::new();
        let mut sorted = Vec::with_capacity(edges.len());
        let mut masks = Vec::with_capacity(edges.len());
        for (i, e) in edges.into_iter().enumerate() {
            let mut mask = 0u64;
            for &x in &e {
                if x == 0 || x > v {
                    return Err(Error::Hypergraph(format!("edges[{i}]: vertex {x} outside 1..={v}")));
                }
                mask |= 1 << (x - 1);
            }
            if e.len() != n || mask.count_ones() as usize != n {
                return Err(Error::Hypergraph(format!("edges[{i}]: expected {n} distinct vertices, got {e:?}")));
            }
            if !seen.insert(mask) {
                return Err(Error::Hypergraph(format!("edges[{i}]: duplicate edge {e:?}")));
            }
            let mut e = e;
            e.sort_unstable();
            sorted.push(e);
            masks.push(mask);
        }
        Ok(Hypergraph { v, n, edges: sorted, masks })
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn degree(&self, x: usize) -> usize {
        self.masks.iter().filter(|&&e| e >> (x - 1) & 1 == 1).count()
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: HypergraphJson =
            serde_json::from_str(s).map_err(|e| Error::Hypergraph(format!("bad JSON: {e}")))?;
        Hypergraph::new(raw.v, raw.n, raw.edges)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&HypergraphJson { v: self.v, n: self.n, edges: self.edges.clone() })
            .expect("hypergraph serializes")
    }

    /// `v n` header line, then one edge per line.
    pub fn from_text(s: &str) -> Result<Self> {
        let mut lines = s
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let parse = |(no, line): (usize, &str)| -> Result<(usize, Vec<usize>)> {
            let nums = line
                .split_whitespace()
                .map(|t| t.parse::<usize>().map_err(|_| Error::Hypergraph(format!("line {no}: bad number {t:?}"))))
                .collect::<Result<_>>()?;
            Ok((no, nums))
        };
        let (_, header) = parse(lines.next().ok_or_else(|| Error::Hypergraph("empty input".into()))?)?;
        let [v, n] = header[..] else {
            return Err(Error::Hypergraph("line 1: header must be \"v n\"".into()));
        };
        let rows = lines.map(parse).collect::<Result<Vec<_>>>()?;
        let line_of: Vec<usize> = rows.iter().map(|(no, _)| *no).collect();
        Hypergraph::new(v, n, rows.into_iter().map(|(_, e)| e).collect()).map_err(|e| match e {
            // point at the offending line rather than the edge index
            Error::Hypergraph(msg) => match msg.strip_prefix("edges[").and_then(|r| r.split_once("]:")) {
                Some((i, rest)) if i.parse::<usize>().is_ok_and(|i| i < line_of.len()) => {
                    Error::Hypergraph(format!("line {}:{rest}", line_of[i.parse::<usize>().unwrap()]))
                }
                _ => Error::Hypergraph(msg),
            },
            other => other,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.v, self.n);
        for e in &self.edges {
            let line: Vec<String> = e.iter().map(|x| x.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// JSON if the input starts with `{`, text otherwise.
    pub fn parse(s: &str) -> Result<Self> {
        if s.trim_start().starts_with('{') {
            Hypergraph::from_json(s)
        } else {
            Hypergraph::from_text(s)
        }
    }

    pub fn single_edge(n: usize) -> Self {
        Hypergraph::new(n, n, vec![(1..=n).collect()]).expect("valid")
    }

    /// Path `x - a - b - y` as vertices 1 - 2 - 3 - 4.
    pub fn path4() -> Self {
        Hypergraph::new(4, 2, vec![vec![1, 2], vec![2, 3], vec![3, 4]]).expect("valid")
    }

    /// Complete graph `K_k` as a 2-uniform hypergraph.
    pub fn complete_graph(k: usize) -> Self {
        let edges = (1..=k).flat_map(|a| (a + 1..=k).map(move |b| vec![a, b])).collect();
        Hypergraph::new(k, 2, edges).expect("valid")
    }

    pub fn fano() -> Self {
        let lines = [[1, 2, 3], [1, 4, 5], [1, 6, 7], [2, 4, 6], [2, 5, 7], [3, 4, 7], [3, 5, 6]];
        Hypergraph::new(7, 3, lines.iter().map(|l| l.to_vec()).collect()).expect("valid")
    }

    /// `m` distinct random `n`-subsets of `1..=v`.
    pub fn random<R: Rng>(v: usize, n: usize, m: usize, rng: &mut R) -> Result<Self> {
        let total = crate::exact::binom(v as u64, n as i64);
        if BigUint::from(m) > total {
            return Err(Error::Hypergraph(format!("only {total} distinct {n}-subsets of {v} vertices")));
        }
        let all: Vec<usize> = (1..=v).collect();
        let mut seen = BTreeSet::new();
        let mut edges = Vec::with_capacity(m);
        while edges.len() < m {
            let mut e: Vec<usize> = all.choose_multiple(rng, n).copied().collect();
            e.sort_unstable();
            if seen.insert(e.clone()) {
                edges.push(e);
            }
        }
        Hypergraph::new(v, n, edges)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Color {
    Red,
    Blue,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringRun {
    pub ordering: Vec<usize>,
    /// `colors[x - 1]` is the color of vertex `x`.
    pub colors: Vec<Color>,
    pub failed: bool,
    /// Index of an all-blue edge when the run failed.
    pub blue_edge: Option<usize>,
}

fn check_ordering(h: &Hypergraph, ordering: &[usize]) -> Result<()> {
    let mut seen = 0u64;
    for &x in ordering {
        if x == 0 || x > h.v || seen >> (x - 1) & 1 == 1 {
            return Err(Error::Hypergraph(format!("{ordering:?} is not an ordering of 1..={}", h.v)));
        }
        seen |= 1 << (x - 1);
    }
    if ordering.len() != h.v {
        return Err(Error::Hypergraph(format!("{ordering:?} is not an ordering of 1..={}", h.v)));
    }
    Ok(())
}

/// Everything starts red; in order, a vertex turns blue if it is the last
/// vertex of an edge whose other vertices are all still red.
pub fn greedy_color(h: &Hypergraph, ordering: &[usize]) -> Result<ColoringRun> {
    check_ordering(h, ordering)?;
    let mut placed = 0u64;
    let mut blue = 0u64;
    for &x in ordering {
        let bit = 1u64 << (x - 1);
        placed |= bit;
        if h.masks.iter().any(|&e| e & bit != 0 && e & !placed == 0 && (e & !bit) & blue == 0) {
            blue |= bit;
        }
    }
    let blue_edge = h.masks.iter().position(|&e| e & !blue == 0);
    let colors = (0..h.v)
        .map(|i| if blue >> i & 1 == 1 { Color::Blue } else { Color::Red })
        .collect();
    Ok(ColoringRun { ordering: ordering.to_vec(), colors, failed: blue_edge.is_some(), blue_edge })
}

/// Counts over every ordering (with any locked positions fixed).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationCounts {
    pub orderings: u64,
    pub failing: u64,
    pub critical: u64,
    /// Runs ending with an all-red edge; always zero.
    pub red_edge_runs: u64,
    /// Failing runs without a critical vertex; always zero.
    pub failing_without_critical: u64,
}

impl std::ops::Add for EnumerationCounts {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        EnumerationCounts {
            orderings: self.orderings + o.orderings,
            failing: self.failing + o.failing,
            critical: self.critical + o.critical,
            red_edge_runs: self.red_edge_runs + o.red_edge_runs,
            failing_without_critical: self.failing_without_critical + o.failing_without_critical,
        }
    }
}

impl EnumerationCounts {
    pub fn failure_probability(&self) -> Rational {
        Rational::ratio(self.failing.into(), self.orderings.into())
    }

    pub fn critical_probability(&self) -> Rational {
        Rational::ratio(self.critical.into(), self.orderings.into())
    }
}

struct Walker<'a> {
    h: &'a Hypergraph,
    /// Edge indices through each vertex.
    incident: Vec<Vec<usize>>,
    /// `slots[p]` is the vertex locked at position `p`, if any.
    slots: Vec<Option<usize>>,
    locked: u64,
}

impl Walker<'_> {
    fn place(&self, x: usize, counts: &mut [usize], st: &State) -> State {
        let bit = 1u64 << (x - 1);
        let mut completes = false;
        let mut starts = false;
        let mut turns_blue = false;
        for &e in &self.incident[x - 1] {
            if counts[e] == 0 {
                starts = true;
            }
            counts[e] += 1;
            if counts[e] == self.h.n {
                completes = true;
                if (self.h.masks[e] & !bit) & st.blue == 0 {
                    turns_blue = true;
                }
            }
        }
        State {
            placed: st.placed | bit,
            blue: if turns_blue { st.blue | bit } else { st.blue },
            critical: st.critical || (completes && starts),
        }
    }

    fn unplace(&self, x: usize, counts: &mut [usize]) {
        for &e in &self.incident[x - 1] {
            counts[e] -= 1;
        }
    }

    fn walk(&self, pos: usize, counts: &mut [usize], st: State, out: &mut EnumerationCounts) {
        if pos == self.h.v {
            let failed = self.h.masks.iter().any(|&e| e & !st.blue == 0);
            let red_edge = self.h.masks.iter().any(|&e| e & st.blue == 0);
            out.orderings += 1;
            out.failing += failed as u64;
            out.critical += st.critical as u64;
            out.red_edge_runs += red_edge as u64;
            out.failing_without_critical += (failed && !st.critical) as u64;
            return;
        }
        match self.slots[pos] {
            Some(x) => {
                let next = self.place(x, counts, &st);
                self.walk(pos + 1, counts, next, out);
                self.unplace(x, counts);
            }
            None => {
                for x in 1..=self.h.v {
                    let bit = 1u64 << (x - 1);
                    if st.placed & bit != 0 || self.locked & bit != 0 {
                        continue;
                    }
                    let next = self.place(x, counts, &st);
                    self.walk(pos + 1, counts, next, out);
                    self.unplace(x, counts);
                }
            }
        }
    }
}

#[derive(Clone, Copy)]
struct State {
    placed: u64,
    blue: u64,
    critical: bool,
}

/// Enumerate all orderings with `locked[i] = (vertex, position)` fixed
/// (1-based), the others uniform over the remaining positions.
pub fn enumerate_orderings(h: &Hypergraph, locked: &[(usize, usize)]) -> Result<EnumerationCounts> {
    let limit = if locked.is_empty() { ENUMERATION_LIMIT } else { LOCKED_ENUMERATION_LIMIT };
    if h.v > limit || h.v - locked.len().min(h.v) > ENUMERATION_LIMIT {
        return Err(Error::EnumerationGuard { v: h.v, limit });
    }
    let mut slots = vec![None; h.v];
    let mut locked_mask = 0u64;
    for &(x, p) in locked {
        if x == 0 || x > h.v || p == 0 || p > h.v {
            return Err(Error::Hypergraph(format!("lock ({x}, {p}) out of range")));
        }
        if slots[p - 1].is_some() || locked_mask >> (x - 1) & 1 == 1 {
            return Err(Error::Hypergraph(format!("lock ({x}, {p}) conflicts with another lock")));
        }
        slots[p - 1] = Some(x);
        locked_mask |= 1 << (x - 1);
    }
    let mut incident = vec![Vec::new(); h.v];
    for (i, e) in h.edges.iter().enumerate() {
        for &x in e {
            incident[x - 1].push(i);
        }
    }
    let w = Walker { h, incident, slots, locked: locked_mask };
    let start = State { placed: 0, blue: 0, critical: false };
    if h.v == 0 {
        return Ok(EnumerationCounts { orderings: 1, ..Default::default() });
    }
    // split on the first position
    let firsts: Vec<usize> = match w.slots[0] {
        Some(x) => vec![x],
        None => (1..=h.v).filter(|&x| locked_mask >> (x - 1) & 1 == 0).collect(),
    };
    let parts: Vec<EnumerationCounts> = firsts
        .par_iter()
        .map(|&x| {
            let mut counts = vec![0usize; h.m()];
            let st = w.place(x, &mut counts, &start);
            let mut out = EnumerationCounts::default();
            w.walk(1, &mut counts, st, &mut out);
            out
        })
        .collect();
    let total = parts.into_iter().fold(EnumerationCounts::default(), |a, b| a + b);
    debug_assert_eq!(BigUint::from(total.orderings), factorial((h.v - locked.len()) as u64));
    Ok(total)
}

pub fn exact_failure_probability(h: &Hypergraph) -> Result<Rational> {
    Ok(enumerate_orderings(h, &[])?.failure_probability())
}

/// Probability that some vertex is last in one edge and first in another,
/// with optional locked `(vertex, position)` pairs.
pub fn exact_critical_probability(h: &Hypergraph, locked: &[(usize, usize)]) -> Result<Rational> {
    Ok(enumerate_orderings(h, locked)?.critical_probability())
}

/// A proper red/blue coloring if one exists.
pub fn is_two_colorable(h: &Hypergraph) -> Result<Option<Vec<Color>>> {
    if h.v > COLORABILITY_LIMIT {
        return Err(Error::EnumerationGuard { v: h.v, limit: COLORABILITY_LIMIT });
    }
    // edges grouped by their highest vertex, checked once it is colored
    let mut closing = vec![Vec::new(); h.v];
    for &e in &h.masks {
        closing[63 - e.leading_zeros() as usize].push(e);
    }
    fn search(i: usize, v: usize, blue: u64, closing: &[Vec<u64>]) -> Option<u64> {
        if i == v {
            return Some(blue);
        }
        // vertex 1 is red by symmetry
        let choices: &[bool] = if i == 0 { &[false] } else { &[false, true] };
        for &b in choices {
            let blue = if b { blue | 1 << i } else { blue };
            let ok = closing[i].iter().all(|&e| e & blue != 0 && e & !blue != 0);
            if ok {
                if let Some(found) = search(i + 1, v, blue, closing) {
                    return Some(found);
                }
            }
        }
        None
    }
    Ok(search(0, h.v, 0, &closing).map(|blue| {
        (0..h.v)
            .map(|i| if blue >> i & 1 == 1 { Color::Blue } else { Color::Red })
            .collect()
    }))
}

/// Ordered pairs of edges sharing exactly one vertex.
pub fn gamma_exact(h: &Hypergraph) -> u64 {
    let mut count = 0;
    for (i, a) in h.masks.iter().enumerate() {
        for b in &h.masks[i + 1..] {
            if (a & b).count_ones() == 1 {
                count += 2;
            }
        }
    }
    count
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonteCarlo {
    pub trials: u64,
    pub failures: u64,
    pub seed: u64,
    pub estimate: f64,
    /// Wilson score interval at 99% confidence.
    pub low: f64,
    pub high: f64,
}

const MC_CHUNK: u64 = 4096;
const Z99: f64 = 2.575_829_303_548_901;

fn wilson(successes: u64, trials: u64, z: f64) -> (f64, f64) {
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let center = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / (1.0 + z2 / n);
    ((center - half).max(0.0), (center + half).min(1.0))
}

/// Failure probability of the greedy coloring over `trials` uniform
/// orderings. Trials are split in fixed chunks, each with its own ChaCha
/// stream derived from `seed`, so the result does not depend on the
/// number of threads.
pub fn monte_carlo_failure(h: &Hypergraph, trials: u64, seed: u64) -> Result<MonteCarlo> {
    if trials == 0 {
        return Err(Error::pre("monte_carlo_failure", "need at least one trial"));
    }
    let chunks = trials.div_ceil(MC_CHUNK);
    let failures: u64 = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c);
            let len = MC_CHUNK.min(trials - c * MC_CHUNK);
            let mut order: Vec<usize> = (1..=h.v).collect();
            let mut fails = 0u64;
            for _ in 0..len {
                order.shuffle(&mut rng);
                if greedy_color(h, &order).expect("valid ordering").failed {
                    fails += 1;
                }
            }
            fails
        })
        .sum();
    let (low, high) = wilson(failures, trials, Z99);
    Ok(MonteCarlo { trials, failures, seed, estimate: failures as f64 / trials as f64, low, high })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::binom;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn rejects_bad_hypergraphs() {
        assert!(Hypergraph::new(3, 2, vec![vec![1, 4]]).is_err());
        assert!(Hypergraph::new(3, 2, vec![vec![1, 1]]).is_err());
        assert!(Hypergraph::new(3, 2, vec![vec![1, 2], vec![2, 1]]).is_err());
        assert!(Hypergraph::new(3, 2, vec![vec![1, 2, 3]]).is_err());
        assert!(Hypergraph::new(65, 2, vec![]).is_err());
    }

    #[test]
    fn formats_round_trip() {
        let f = Hypergraph::fano();
        assert_eq!(Hypergraph::parse(&f.to_json()).unwrap(), f);
        assert_eq!(Hypergraph::parse(&f.to_text()).unwrap(), f);
        assert_eq!(f.to_text().lines().next(), Some("7 3"));
        assert!(Hypergraph::from_text("7\n1 2 3\n").is_err());
        let msg = |s: &str| Hypergraph::from_text(s).unwrap_err().to_string();
        assert!(msg("3 2\n1 2\n\n2 x\n").contains("line 4"));
        assert!(msg("3 2\n1 2\n\n2 9\n").contains("line 4"));
        assert!(Hypergraph::from_json(r#"{"v": 3, "n": 2, "edges": [[1, 4]]}"#)
            .unwrap_err()
            .to_string()
            .contains("edges[0]"));
    }

    #[test]
    fn greedy_examples() {
        let e = Hypergraph::single_edge(3);
        let run = greedy_color(&e, &[2, 3, 1]).unwrap();
        assert!(!run.failed);
        assert_eq!(run.colors.iter().filter(|&&c| c == Color::Blue).count(), 1);
        // x=1, a=2, b=3, y=4: order (x, y, a, b)
        let run = greedy_color(&Hypergraph::path4(), &[1, 4, 2, 3]).unwrap();
        assert!(run.failed);
        assert_eq!(Hypergraph::path4().edges()[run.blue_edge.unwrap()], vec![2, 3]);
        assert!(greedy_color(&Hypergraph::complete_graph(4), &[3, 1, 4, 2]).unwrap().failed);
        assert!(greedy_color(&e, &[1, 2]).is_err());
        assert!(greedy_color(&e, &[1, 1, 2]).is_err());
    }

    #[test]
    fn exact_examples() {
        assert!(exact_failure_probability(&Hypergraph::single_edge(3)).unwrap().is_zero());
        assert!(exact_critical_probability(&Hypergraph::single_edge(3), &[]).unwrap().is_zero());
        assert_eq!(exact_failure_probability(&Hypergraph::path4()).unwrap(), r("1/4"));
        assert_eq!(exact_failure_probability(&Hypergraph::fano()).unwrap(), Rational::one());
        assert_eq!(exact_failure_probability(&Hypergraph::complete_graph(4)).unwrap(), Rational::one());
        let big = Hypergraph::new(11, 2, vec![vec![1, 2]]).unwrap();
        assert!(matches!(exact_failure_probability(&big), Err(Error::EnumerationGuard { .. })));
    }

    #[test]
    fn two_edges_meeting_once() {
        // shared vertex 3; closed form sums over its position k
        for (n, v) in [(2usize, 3usize), (3, 5), (3, 7), (4, 8)] {
            let e1: Vec<usize> = (1..=n).collect();
            let e2: Vec<usize> = (n..2 * n).collect();
            let h = Hypergraph::new(v, n, vec![e1, e2]).unwrap();
            let want: Rational = (1..=v as u64)
                .map(|k| {
                    // shared vertex at k, one edge entirely before, the other after
                    let ways = binom(k - 1, n as i64 - 1) * binom(v as u64 - k, n as i64 - 1);
                    Rational::ratio(ways * 2u32, binom(v as u64 - 1, n as i64 - 1) * binom(v as u64 - n as u64, n as i64 - 1))
                        * Rational::ratio(1u32.into(), (v as u64).into())
                })
                .sum();
            assert_eq!(exact_critical_probability(&h, &[]).unwrap(), want, "n={n} v={v}");
        }
    }

    #[test]
    fn locked_enumeration() {
        let f = Hypergraph::fano();
        let c = enumerate_orderings(&f, &[(1, 4)]).unwrap();
        assert_eq!(c.orderings, 720);
        assert_eq!(c.failing, 720);
        assert!(enumerate_orderings(&f, &[(1, 4), (2, 4)]).is_err());
        assert!(enumerate_orderings(&f, &[(1, 4), (1, 5)]).is_err());
        let h = Hypergraph::new(12, 2, vec![vec![1, 2]]).unwrap();
        assert!(enumerate_orderings(&h, &[(1, 1)]).is_err());
        assert_eq!(enumerate_orderings(&h, &[(1, 1), (2, 12)]).unwrap().orderings, 3_628_800);
    }

    #[test]
    fn colorability() {
        assert!(is_two_colorable(&Hypergraph::complete_graph(3)).unwrap().is_none());
        assert!(is_two_colorable(&Hypergraph::fano()).unwrap().is_none());
        let e = Hypergraph::single_edge(4);
        let w = is_two_colorable(&e).unwrap().unwrap();
        assert!(w.contains(&Color::Red) && w.contains(&Color::Blue));
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(gamma_exact(&Hypergraph::new(4, 2, vec![vec![1, 2], vec![3, 4]]).unwrap()), 0);
        assert_eq!(gamma_exact(&Hypergraph::new(3, 2, vec![vec![1, 2], vec![2, 3]]).unwrap()), 2);
        assert_eq!(gamma_exact(&Hypergraph::fano()), 42);
    }

    #[test]
    fn monte_carlo_examples() {
        let e = monte_carlo_failure(&Hypergraph::single_edge(3), 1000, 7).unwrap();
        assert_eq!(e.failures, 0);
        let k = monte_carlo_failure(&Hypergraph::complete_graph(4), 1000, 7).unwrap();
        assert_eq!(k.estimate, 1.0);
        let p = monte_carlo_failure(&Hypergraph::path4(), 100_000, 11).unwrap();
        assert!(p.low <= 0.25 && 0.25 <= p.high, "{p:?}");
        assert_eq!(p, monte_carlo_failure(&Hypergraph::path4(), 100_000, 11).unwrap());
        assert!(monte_carlo_failure(&Hypergraph::path4(), 0, 1).is_err());
    }
}
