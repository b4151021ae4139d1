//! Chaining the lock levels: each level only looks at what the previous
//! one left open. Scans over `v` and the assembly of the per-`n` results.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::profile::{LockProfile1, LockProfile2, LockProfile3, SelectionStrategy};
use super::refute::{LockConfig, LockedContext, Survivor};
use crate::certificate::Certificate;
use crate::classic::{goldberg_russell_at, schoenheim};
use crate::discrete::{discrete_lower_bound, DiscreteRow};
use crate::error::{Error, Result};
use crate::exact::Rational;

/// Which check disposed of a case.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    Discrete,
    Single,
    Pair,
    Triple,
    TripleWide,
    Exclusion,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CascadeOptions {
    /// Highest lock level to use (1..=3).
    pub max_locks: u8,
    pub strategy: SelectionStrategy,
    /// Re-check three-lock survivors over the wide window.
    pub wide: bool,
    /// Apply the degree-counting exclusion to what is left.
    pub exclusion: bool,
}

impl CascadeOptions {
    pub fn locks(max_locks: u8, strategy: SelectionStrategy) -> Self {
        CascadeOptions { max_locks, strategy, wide: false, exclusion: false }
    }

    /// Everything available, as used for the per-`n` results.
    pub fn full() -> Self {
        CascadeOptions { max_locks: 3, strategy: SelectionStrategy::A, wide: true, exclusion: true }
    }
}

/// Profiles no level could rule out.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "locks", content = "survivors", rename_all = "snake_case")]
pub enum OpenCases {
    None,
    Single(Vec<Survivor<LockProfile1>>),
    Pair(Vec<Survivor<LockProfile2>>),
    Triple(Vec<Survivor<LockProfile3>>),
}

impl OpenCases {
    pub fn is_empty(&self) -> bool {
        match self {
            OpenCases::None => true,
            OpenCases::Single(s) => s.is_empty(),
            OpenCases::Pair(s) => s.is_empty(),
            OpenCases::Triple(s) => s.is_empty(),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            OpenCases::None => 0,
            OpenCases::Single(s) => s.len(),
            OpenCases::Pair(s) => s.len(),
            OpenCases::Triple(s) => s.len(),
        }
    }

    /// Distinct `(L1, L2, L12)` among the open profiles.
    pub fn heads(&self) -> Vec<LockProfile2> {
        let mut h: Vec<LockProfile2> = match self {
            OpenCases::Pair(s) => s.iter().map(|x| x.profile).collect(),
            OpenCases::Triple(s) => s.iter().map(|x| x.profile.head()).collect(),
            _ => Vec::new(),
        };
        h.sort();
        h.dedup();
        h
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CascadeResult {
    pub v: u64,
    pub m: u64,
    pub refuted_at: Option<Stage>,
    /// Open profiles after the last lock level, before exclusion.
    pub survivors: OpenCases,
    /// Minimum degrees removed by the exclusion lemma.
    pub excluded_degrees: Vec<u64>,
    /// What is still open at the end.
    pub open: OpenCases,
}

impl CascadeResult {
    pub fn refuted(&self) -> bool {
        self.refuted_at.is_some()
    }
}

/// Counting argument for hypergraphs with minimum degree `d`: if true,
/// two degree-`d` vertices lie in exactly one common edge.
///
/// With `excess = mn - v d`, at least `v - excess` vertices have degree
/// `d`. A degree-`d` vertex spends `d (n - 1)` incidences on its `v - 1`
/// pairs, so at most `d (n - 1) - (v - 1)` of them are covered twice or
/// more. If the other degree-`d` vertices outnumber those, one of them
/// shares a single edge with it. Returns true when the hypotheses are
/// contradictory (`v d > mn` or `d (n - 1) < v - 1`).
pub fn exclusion_lemma(n: u32, v: u64, m: u64, d: u64) -> bool {
    let (n, v, m, d) = (n as i128, v as i128, m as i128, d as i128);
    let excess = m * n - v * d;
    let multi = d * (n - 1) - (v - 1);
    if excess < 0 || multi < 0 {
        return true;
    }
    v - excess - 1 > multi
}

fn survivors_by_l1<P>(s: &[Survivor<P>], l1: impl Fn(&P) -> u64) -> Vec<u64> {
    let mut d: Vec<u64> = s.iter().map(|x| l1(&x.profile)).collect();
    d.sort();
    d.dedup();
    d
}

/// Run the levels allowed by `opts` on `(ctx.v, m)`.
pub fn cascade(ctx: &LockedContext, m: u64, opts: CascadeOptions) -> Result<CascadeResult> {
    let (n, v) = (ctx.n(), ctx.v());
    let done = |stage: Stage, survivors: OpenCases, excluded: Vec<u64>| CascadeResult {
        v,
        m,
        refuted_at: Some(stage),
        survivors,
        excluded_degrees: excluded,
        open: OpenCases::None,
    };
    let single = ctx.single(m)?;
    if single.refuted() {
        return Ok(done(Stage::Single, OpenCases::None, vec![]));
    }
    let degrees = survivors_by_l1(&single.survivors, |p| p.l);
    let mut survivors = OpenCases::Single(single.survivors);

    if opts.max_locks >= 2 && ctx.supports(2) {
        let pair = ctx.pair(m, opts.strategy, Some(&degrees))?;
        if pair.refuted() {
            return Ok(done(Stage::Pair, OpenCases::None, vec![]));
        }
        let heads: Vec<LockProfile2> = pair.survivors.iter().map(|s| s.profile).collect();
        survivors = OpenCases::Pair(pair.survivors);

        if opts.max_locks >= 3 && ctx.supports(3) {
            let triple = ctx.triple(m, opts.strategy, &heads)?;
            if triple.refuted() {
                return Ok(done(Stage::Triple, OpenCases::None, vec![]));
            }
            let mut rest = triple.survivors;
            if opts.wide {
                let wide = ctx.triple_wide(m, rest.iter().map(|s| s.profile).collect())?;
                if wide.refuted() {
                    return Ok(done(Stage::TripleWide, OpenCases::None, vec![]));
                }
                rest = wide.survivors;
            }
            survivors = OpenCases::Triple(rest);
        }
    }
    let mut excluded = Vec::new();
    let mut open = survivors.clone();
    // the lemma selects two minimum-degree vertices, which is a strategy A
    // selection
    if opts.exclusion && opts.strategy == SelectionStrategy::A {
        let heads = survivors.heads();
        let candidates: Vec<u64> = {
            let mut d: Vec<u64> = heads.iter().map(|h| h.l1).collect();
            d.dedup();
            d
        };
        for d in candidates {
            let tight = LockProfile2 { l1: d, l2: d, l12: 1 };
            if exclusion_lemma(n, v, m, d) && !heads.contains(&tight) {
                excluded.push(d);
            }
        }
        open = match open {
            OpenCases::Pair(s) => OpenCases::Pair(s.into_iter().filter(|x| !excluded.contains(&x.profile.l1)).collect()),
            OpenCases::Triple(s) => {
                OpenCases::Triple(s.into_iter().filter(|x| !excluded.contains(&x.profile.degree(0))).collect())
            }
            other => other,
        };
        if open.is_empty() && !excluded.is_empty() {
            return Ok(done(Stage::Exclusion, survivors, excluded));
        }
    }
    Ok(CascadeResult { v, m, refuted_at: None, survivors, excluded_degrees: excluded, open })
}

/// Per-`v` result of a lock scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LockedRow {
    pub v: u64,
    /// Lower bound on m(n, v) from the discrete row.
    pub start: u64,
    /// Smallest `m >= start` not refuted here, if it is below the overall
    /// bound; `None` means every `m` below the overall bound is refuted.
    pub open_at: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LockedScan {
    pub n: u32,
    pub locks: u8,
    pub strategy: SelectionStrategy,
    pub bound: u64,
    pub v_star: u64,
    pub rows: Vec<LockedRow>,
}

/// Smallest `m` that some `v` in `v_min..=v_max` fails to refute, starting
/// every `v` from its discrete row. `v` below `2n + s` uses fewer locks.
pub fn locked_scan(
    n: u32,
    opts: CascadeOptions,
    v_min: u64,
    v_max: u64,
) -> Result<LockedScan> {
    if !(1..=3).contains(&opts.max_locks) {
        return Err(Error::pre("locked scan", "locks must be 1, 2 or 3"));
    }
    let disc = discrete_lower_bound(n, v_min, v_max)?;
    let contexts: Vec<(DiscreteRow, LockedContext)> = disc
        .rows
        .iter()
        .map(|r| LockedContext::new(n, r.v, LockConfig::default()).map(|c| (r.clone(), c)))
        .collect::<Result<_>>()?;
    let mut m = disc.bound;
    loop {
        let open: Vec<u64> = contexts
            .par_iter()
            .filter(|(r, _)| r.bound <= m)
            .map(|(r, ctx)| cascade(ctx, m, opts).map(|c| (r.v, c.refuted())))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .filter(|&(_, refuted)| !refuted)
            .map(|(v, _)| v)
            .collect();
        if let Some(&v_star) = open.first() {
            let rows = contexts
                .iter()
                .map(|(r, _)| LockedRow {
                    v: r.v,
                    start: r.bound,
                    open_at: open.contains(&r.v).then_some(m),
                })
                .collect();
            return Ok(LockedScan { n, locks: opts.max_locks, strategy: opts.strategy, bound: m, v_star, rows });
        }
        m += 1;
    }
}

/// Largest vertex count scanned by the locked stages.
pub const DEFAULT_V_MAX: u64 = 200;

/// Target value for each `n` in 5..=9.
pub fn theorem1_target(n: u32) -> Option<u64> {
    match n {
        5 => Some(32),
        6 => Some(64),
        7 => Some(128),
        8 => Some(263),
        9 => Some(538),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseRecord {
    pub v: u64,
    pub m: u64,
    pub stage: Option<Stage>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub excluded_degrees: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Theorem1Report {
    pub n: u32,
    pub target: u64,
    /// Every `m` below this is refuted for every `v`.
    pub certified: u64,
    pub v_max: u64,
    pub cases: Vec<CaseRecord>,
    /// Survivors before exclusion, for each case that reached it.
    pub excluded: Vec<CascadeResult>,
    /// Cases nothing could rule out.
    pub open: Vec<CascadeResult>,
}

impl Theorem1Report {
    pub fn is_complete(&self) -> bool {
        self.open.is_empty() && self.certified >= self.target
    }
}

/// Check every `(v, m)` with `m < target`: small `v` by the classical
/// bounds, `v` up to `v_max` by the discrete row and the lock cascade,
/// and larger `v` by the Schoenheim bound, which does not decrease in `v`.
pub fn theorem1_report(n: u32, target: u64, v_max: u64) -> Result<Theorem1Report> {
    if n < 3 {
        return Err(Error::pre("theorem1", "need n >= 3"));
    }
    let nn = n as u64;
    let v_min = 2 * nn + 1;
    if v_max < v_min {
        return Err(Error::pre("theorem1", format!("v_max must be at least {v_min}")));
    }
    for v in [2 * nn - 1, 2 * nn] {
        let gr = goldberg_russell_at(n, v).ok_or_else(|| Error::pre("theorem1", "no classical bound at v <= 2n"))?;
        if gr < target.into() {
            return Err(Error::Certification {
                step: format!("v = {v}"),
                detail: format!("classical bound {gr} below target {target}"),
            });
        }
    }
    if schoenheim(n, v_max + 1) < target {
        return Err(Error::Certification {
            step: format!("v > {v_max}"),
            detail: format!("Schoenheim bound {} below target {target}", schoenheim(n, v_max + 1)),
        });
    }
    let disc = discrete_lower_bound(n, v_min, v_max)?;
    let work: Vec<(u64, u64)> = disc
        .rows
        .iter()
        .flat_map(|r| (r.bound..target).map(move |m| (r.v, m)))
        .collect();
    let contexts: Vec<LockedContext> = (v_min..=v_max)
        .map(|v| LockedContext::new(n, v, LockConfig::default()))
        .collect::<Result<_>>()?;
    let results: Vec<CascadeResult> = work
        .par_iter()
        .map(|&(v, m)| cascade(&contexts[(v - v_min) as usize], m, CascadeOptions::full()))
        .collect::<Result<_>>()?;
    let mut cases = Vec::new();
    let mut excluded = Vec::new();
    let mut open = Vec::new();
    for r in results {
        cases.push(CaseRecord { v: r.v, m: r.m, stage: r.refuted_at, excluded_degrees: r.excluded_degrees.clone() });
        if !r.excluded_degrees.is_empty() {
            excluded.push(r.clone());
        }
        if !r.refuted() {
            open.push(r);
        }
    }
    let certified = open.iter().map(|r| r.m).min().unwrap_or(target);
    Ok(Theorem1Report { n, target, certified, v_max, cases, excluded, open })
}

/// Certified lower bound on m(n) for `n` in 5..=9. If some case stays
/// open the certificate is partial, lists the open profiles, and the
/// returned value is what is fully certified.
pub fn theorem1(n: u32) -> Result<(u64, Certificate)> {
    let target = theorem1_target(n).ok_or_else(|| Error::pre("theorem1", format!("n = {n} outside 5..=9")))?;
    let report = theorem1_report(n, target, DEFAULT_V_MAX)?;
    Ok((report.certified, theorem1_certificate(&report)))
}

pub fn theorem1_certificate(report: &Theorem1Report) -> Certificate {
    let nn = report.n as u64;
    let mut cert = Certificate::new("theorem1", Rational::from(report.certified))
        .input("n", report.n)
        .input("target", report.target)
        .input("v_max", report.v_max)
        .input("strategy", SelectionStrategy::A)
        .witness(json!({
            "range": format!("v <= {}", 2 * nn - 2),
            "reason": "two halves of at most n - 1 vertices give a proper coloring",
        }))
        .witness(json!({
            "range": format!("{}..={}", 2 * nn - 1, 2 * nn),
            "reason": "classical bound at least target",
        }))
        .witness(json!({
            "range": format!("v > {}", report.v_max),
            "reason": "Schoenheim bound at least target",
            "schoenheim": schoenheim(report.n, report.v_max + 1),
        }))
        .witness(json!({ "cases": report.cases }));
    if !report.excluded.is_empty() {
        cert = cert.witness(json!({ "exclusion": report.excluded }));
    }
    if !report.is_complete() {
        cert = cert.witness(json!({ "open": report.open })).partial();
    }
    cert
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exclusion_examples() {
        assert!(exclusion_lemma(6, 39, 63, 9));
        // every pair exactly once
        assert!(exclusion_lemma(3, 7, 7, 3));
        assert!(!exclusion_lemma(6, 39, 200, 9));
        // contradictory hypotheses
        assert!(exclusion_lemma(6, 39, 63, 20));
    }

    #[test]
    fn cascade_matches_single_when_limited() {
        let ctx = LockedContext::new(5, 25, LockConfig::default()).unwrap();
        let r = cascade(&ctx, 30, CascadeOptions::locks(1, SelectionStrategy::A)).unwrap();
        assert_eq!(r.refuted_at, Some(Stage::Single));
        let r = cascade(&ctx, 31, CascadeOptions::locks(1, SelectionStrategy::A)).unwrap();
        assert!(!r.refuted());
        assert!(matches!(r.open, OpenCases::Single(ref s) if !s.is_empty()));
    }

    #[test]
    fn single_scan_small_n() {
        let s = locked_scan(5, CascadeOptions::locks(1, SelectionStrategy::A), 11, 60).unwrap();
        assert_eq!(s.bound, 31);
        assert_eq!(s.v_star, 22);
    }

    #[test]
    fn targets() {
        assert_eq!(theorem1_target(5), Some(32));
        assert_eq!(theorem1_target(10), None);
        assert!(theorem1(4).is_err());
    }
}
