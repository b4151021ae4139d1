//! Refuting `(n, v, m)` by evaluating the locked bound on every feasible
//! profile.

use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::engine::{FamilyVerdict, Incidence, PlacementFamily, PlacementWindow};
use super::profile::{profiles1, profiles2, profiles3, LockProfile1, LockProfile2, LockProfile3, SelectionStrategy};
use crate::error::{Error, Result};
use crate::exact::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    RefutedAll,
    Survivors,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Survivor<P> {
    pub profile: P,
    /// Placement attaining the minimum.
    pub placement: Vec<u64>,
    /// Exact minimum over the placement family; at least one.
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefutationOutcome<P> {
    pub n: u32,
    pub v: u64,
    pub m: u64,
    pub verdict: Verdict,
    pub profiles_checked: usize,
    /// Largest bound value over the profiles (each at some placement of
    /// the family); below one iff every profile is refuted. None when no
    /// profile is feasible.
    pub max_value: Option<Rational>,
    pub survivors: Vec<Survivor<P>>,
}

impl<P> RefutationOutcome<P> {
    pub fn refuted(&self) -> bool {
        self.verdict == Verdict::RefutedAll
    }
}

/// Windows and incidence counting used at each lock level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LockConfig {
    pub single: PlacementWindow,
    pub pair: PlacementWindow,
    pub triple: PlacementWindow,
    /// Second, wider pass over three-lock survivors.
    pub triple_wide: PlacementWindow,
    /// Incidence counting for one lock; more locks always count exactly.
    pub single_incidence: Incidence,
}

impl Default for LockConfig {
    fn default() -> Self {
        LockConfig {
            single: PlacementWindow::CENTER,
            pair: PlacementWindow::PAIR,
            triple: PlacementWindow::TRIPLE,
            triple_wide: PlacementWindow::WIDE,
            single_incidence: Incidence::Published,
        }
    }
}

/// Placement tables for one `(n, v)`, built on first use and shared by
/// every `m`.
pub struct LockedContext {
    n: u32,
    v: u64,
    config: LockConfig,
    single: OnceLock<Result<PlacementFamily>>,
    pair: OnceLock<Result<PlacementFamily>>,
    triple: OnceLock<Result<PlacementFamily>>,
    triple_wide: OnceLock<Result<PlacementFamily>>,
}

impl LockedContext {
    pub fn new(n: u32, v: u64, config: LockConfig) -> Result<Self> {
        if n < 2 {
            return Err(Error::pre("locked bound", "need n >= 2"));
        }
        if v < 2 * n as u64 + 1 {
            return Err(Error::pre("locked bound", format!("need v >= 2n + 1, got v = {v}")));
        }
        Ok(LockedContext {
            n,
            v,
            config,
            single: OnceLock::new(),
            pair: OnceLock::new(),
            triple: OnceLock::new(),
            triple_wide: OnceLock::new(),
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn v(&self) -> u64 {
        self.v
    }

    pub fn config(&self) -> &LockConfig {
        &self.config
    }

    /// Whether `s` locks fit: positions need `v >= 2n + s`.
    pub fn supports(&self, s: u64) -> bool {
        self.v >= 2 * self.n as u64 + s
    }

    fn family(&self, s: u64, wide: bool) -> Result<&PlacementFamily> {
        if !self.supports(s) {
            return Err(Error::pre(
                "locked bound",
                format!("{s} locks need v >= 2n + {s}, got v = {}", self.v),
            ));
        }
        let (cell, window, incidence) = match (s, wide) {
            (1, _) => (&self.single, self.config.single, self.config.single_incidence),
            (2, _) => (&self.pair, self.config.pair, Incidence::Exact),
            (_, false) => (&self.triple, self.config.triple, Incidence::Exact),
            (_, true) => (&self.triple_wide, self.config.triple_wide, Incidence::Exact),
        };
        cell.get_or_init(|| PlacementFamily::new(self.n, self.v, s as usize, window, incidence))
            .as_ref()
            .map_err(Error::clone)
    }

    fn run<P: Copy + Send + Sync>(
        &self,
        m: u64,
        family: &PlacementFamily,
        profiles: Vec<P>,
        classes: impl Fn(&P) -> Result<super::engine::ClassCounts> + Sync,
    ) -> Result<RefutationOutcome<P>> {
        let checked = profiles.len();
        let verdicts: Vec<(P, FamilyVerdict)> = profiles
            .into_par_iter()
            .map(|p| classes(&p).map(|c| (p, family.evaluate(&c))))
            .collect::<Result<_>>()?;
        let max_value = verdicts.iter().map(|(_, v)| v.value().clone()).max();
        let survivors: Vec<Survivor<P>> = verdicts
            .into_iter()
            .filter_map(|(profile, verdict)| match verdict {
                FamilyVerdict::Survives { placement, value } => Some(Survivor { profile, placement, value }),
                FamilyVerdict::Refuted { .. } => None,
            })
            .collect();
        Ok(RefutationOutcome {
            n: self.n,
            v: self.v,
            m,
            verdict: if survivors.is_empty() { Verdict::RefutedAll } else { Verdict::Survivors },
            profiles_checked: checked,
            max_value,
            survivors,
        })
    }

    pub fn single(&self, m: u64) -> Result<RefutationOutcome<LockProfile1>> {
        let fam = self.family(1, false)?;
        self.run(m, fam, profiles1(self.n, self.v, m), |p| p.classes(m))
    }

    /// Two locks. With `allowed_l1`, only profiles whose first degree is
    /// listed are evaluated (the others are already refuted by one lock).
    pub fn pair(
        &self,
        m: u64,
        strategy: SelectionStrategy,
        allowed_l1: Option<&[u64]>,
    ) -> Result<RefutationOutcome<LockProfile2>> {
        let fam = self.family(2, false)?;
        let mut profiles = profiles2(self.n, self.v, m, strategy);
        if let Some(allowed) = allowed_l1 {
            profiles.retain(|p| allowed.contains(&p.l1));
        }
        self.run(m, fam, profiles, |p| p.classes(m))
    }

    /// Three locks over the profiles extending `heads`.
    pub fn triple(
        &self,
        m: u64,
        strategy: SelectionStrategy,
        heads: &[LockProfile2],
    ) -> Result<RefutationOutcome<LockProfile3>> {
        let fam = self.family(3, false)?;
        let profiles = profiles3(self.n, self.v, m, strategy, heads);
        self.run(m, fam, profiles, |p| p.classes(m))
    }

    /// Re-check three-lock survivors over the wide window.
    pub fn triple_wide(&self, m: u64, profiles: Vec<LockProfile3>) -> Result<RefutationOutcome<LockProfile3>> {
        let fam = self.family(3, true)?;
        self.run(m, fam, profiles, |p| p.classes(m))
    }
}

/// Single-lock bound at the center position, as an exact value.
pub fn locked1_bound(n: u32, v: u64, m: u64, p: LockProfile1) -> Result<Rational> {
    p.validate(n, v, m)?;
    let ctx = LockedContext::new(n, v, LockConfig::default())?;
    let fam = ctx.family(1, false)?;
    Ok(fam.tables()[0].eval(&p.classes(m)?))
}

pub fn locked1_refutes(n: u32, v: u64, m: u64) -> Result<RefutationOutcome<LockProfile1>> {
    LockedContext::new(n, v, LockConfig::default())?.single(m)
}

/// Two-lock bound with the locked vertices at `ceil(v/2)` and
/// `ceil(v/2) + 1`.
pub fn locked2_bound(n: u32, v: u64, m: u64, p: LockProfile2, strategy: SelectionStrategy) -> Result<Rational> {
    p.validate(n, v, m, strategy)?;
    let ctx = LockedContext::new(n, v, LockConfig::default())?;
    let fam = ctx.family(2, false)?;
    Ok(fam.tables()[0].eval(&p.classes(m)?))
}

/// Every feasible pair profile, each minimized over both central orders.
pub fn locked2_refutes(n: u32, v: u64, m: u64, strategy: SelectionStrategy) -> Result<RefutationOutcome<LockProfile2>> {
    LockedContext::new(n, v, LockConfig::default())?.pair(m, strategy, None)
}

/// Three locks: all feasible profiles whose pair projection is feasible.
pub fn locked3_refutes(n: u32, v: u64, m: u64, strategy: SelectionStrategy) -> Result<RefutationOutcome<LockProfile3>> {
    let ctx = LockedContext::new(n, v, LockConfig::default())?;
    let heads = profiles2(n, v, m, strategy);
    ctx.triple(m, strategy, &heads)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_lock_refutes_n5_m30_everywhere_small() {
        for v in 11..=40 {
            let out = locked1_refutes(5, v, 30).unwrap();
            if !out.refuted() {
                for s in &out.survivors {
                    assert!(!s.value.is_below_one());
                }
            }
        }
        // at v = 25 the discrete bound gives 30 and one lock lifts it to 31
        assert!(locked1_refutes(5, 25, 30).unwrap().refuted());
        assert!(!locked1_refutes(5, 25, 31).unwrap().refuted());
    }

    #[test]
    fn center_value_matches_reference() {
        assert_eq!(
            locked1_bound(5, 25, 31, LockProfile1 { l: 6 }).unwrap(),
            "107125/104006".parse().unwrap()
        );
        assert!(locked1_bound(5, 23, 31, LockProfile1 { l: 2 }).is_err());
    }

    #[test]
    fn small_v_rejected() {
        assert!(locked1_refutes(5, 10, 30).is_err());
        let ctx = LockedContext::new(5, 11, LockConfig::default()).unwrap();
        assert!(ctx.pair(30, SelectionStrategy::A, None).is_err());
    }

    #[test]
    fn survivors_are_at_least_one() {
        let out = locked2_refutes(6, 39, 63, SelectionStrategy::A).unwrap();
        assert_eq!(out.verdict, Verdict::Survivors);
        assert!(out.survivors.iter().all(|s| !s.value.is_below_one()));
    }
}
