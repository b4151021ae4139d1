//! Bounds that predate the greedy-coloring refinements: the Erdős bounds,
//! Schoenheim's covering bound, the random-coloring bound, the
//! Goldberg–Russell min-max and the continuous Cherkashin–Kozik bound.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{binom, ceil_div, Rational};

/// Which classical bound a [`ClassicBound`] came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassicMethod {
    ErdosLower,
    ErdosHajnalUpper,
    ErdosVBounds,
    Schoenheim,
    RandomColoring,
    GoldbergRussell,
    CherkashinKozik,
}

/// Asymptotic upper bound on m(n) as stated by Erdős; reported, never computed.
pub const ERDOS_ASYMPTOTIC_UPPER: &str = "(1 + o(1)) e ln(2) n^2 2^(n-2)";

/// Lower bound `2^(n-1)` on m(n).
pub fn erdos_lower(n: u32) -> BigUint {
    assert!(n >= 1, "erdos_lower needs n >= 1");
    BigUint::one() << (n - 1)
}

/// Upper bound `C(2n-1, n)` on m(n).
pub fn erdos_hajnal_upper(n: u32) -> BigUint {
    assert!(n >= 1, "erdos_hajnal_upper needs n >= 1");
    binom(2 * n as u64 - 1, n as i64)
}

/// Lower and upper bounds on m(n, v) for even `v > 2n`.
pub fn erdos_mnv_bounds(n: u32, v: u64) -> Result<(Rational, Rational)> {
    if !v.is_multiple_of(2) {
        return Err(Error::pre("erdos_mnv_bounds", format!("v = {v} is odd")));
    }
    if v <= 2 * n as u64 {
        return Err(Error::pre(
            "erdos_mnv_bounds",
            format!("need v > 2n, got v = {v}, n = {n}"),
        ));
    }
    let lower = Rational::ratio(binom(v, n as i64), binom(v / 2, n as i64) * 2u32);
    let upper = &lower * &Rational::from(2 * v);
    Ok((lower, upper))
}

/// `ceil(v/n * ceil((v-1)/(n-1)))`: edges needed to cover every pair.
pub fn schoenheim(n: u32, v: u64) -> u64 {
    assert!(n >= 2 && v >= n as u64, "schoenheim needs v >= n >= 2");
    let n = n as u64;
    let inner = (v - 1).div_ceil(n - 1);
    (v * inner).div_ceil(n)
}

/// `C(v,n) / (C(floor(v/2),n) + C(ceil(v/2),n))`, the expected-monochromatic
/// bound for a balanced random coloring. Below `v = 2n - 1` every
/// hypergraph is 2-colorable and the denominator vanishes; that is
/// reported as a precondition failure.
pub fn random_coloring_lower(n: u32, v: u64) -> Result<Rational> {
    let k = n as i64;
    let den = binom(v / 2, k) + binom(v.div_ceil(2), k);
    if den.is_zero() {
        return Err(Error::pre(
            "random_coloring_lower",
            format!("v = {v} < 2n - 1: every {n}-uniform hypergraph is 2-colorable"),
        ));
    }
    Ok(Rational::ratio(binom(v, k), den))
}

/// `ceil` of [`random_coloring_lower`], or `None` where it is undefined.
pub fn random_coloring_ceil(n: u32, v: u64) -> Option<BigUint> {
    let k = n as i64;
    let den = binom(v / 2, k) + binom(v.div_ceil(2), k);
    if den.is_zero() {
        None
    } else {
        Some(ceil_div(&binom(v, k), &den))
    }
}

/// Lower bound on m(n, v) from Schoenheim and random coloring together.
pub fn goldberg_russell_at(n: u32, v: u64) -> Option<BigUint> {
    random_coloring_ceil(n, v).map(|rc| rc.max(BigUint::from(schoenheim(n, v))))
}

/// Result of the Goldberg–Russell min-max scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldbergRussell {
    pub n: u32,
    pub bound: u64,
    /// A vertex count attaining the minimum.
    pub v_star: u64,
    /// The scan stopped here, where Schoenheim alone exceeds the bound.
    pub v_stop: u64,
}

/// `min over v of max(schoenheim, ceil(random coloring))`.
///
/// Vertex counts below `2n - 1` admit no non-2-colorable hypergraph and are
/// skipped. The scan ends once the Schoenheim term alone exceeds the
/// running minimum; Schoenheim is nondecreasing in `v`, so no later `v` can
/// lower the minimum. Hitting `v_max` first is an error.
pub fn goldberg_russell(n: u32, v_max: Option<u64>) -> Result<GoldbergRussell> {
    if n < 2 {
        return Err(Error::pre("goldberg_russell", "need n >= 2"));
    }
    let v_max = v_max.unwrap_or(10 * (n as u64) * (n as u64));
    let mut best: Option<(u64, u64)> = None;
    for v in (2 * n as u64 - 1)..=v_max {
        let s = schoenheim(n, v);
        if let Some((b, _)) = best {
            if s > b {
                return Ok(GoldbergRussell {
                    n,
                    bound: b,
                    v_star: best.unwrap().1,
                    v_stop: v,
                });
            }
        }
        let here = goldberg_russell_at(n, v)
            .and_then(|x| x.to_u64())
            .unwrap_or(u64::MAX);
        if best.is_none_or(|(b, _)| here < b) {
            best = Some((here, v));
        }
    }
    Err(Error::SearchCap(format!(
        "goldberg_russell(n = {n}): Schoenheim did not exceed the running minimum by v = {v_max}"
    )))
}

fn check_x(op: &'static str, x: &Rational) -> Result<()> {
    let half = Rational::new(1, 2).unwrap();
    if x.is_negative() || x > &half {
        return Err(Error::pre(op, format!("x = {x} outside [0, 1/2]")));
    }
    Ok(())
}

/// `∫_x^{1-x} u^(n-1) (1-u)^(n-1) du`, exactly, through the antiderivative
/// `Σ_j C(n-1, j) (-1)^j u^(n+j) / (n+j)`.
pub fn ck_integral(n: u32, x: &Rational) -> Result<Rational> {
    check_x("ck_integral", x)?;
    let upper = &Rational::one() - x;
    let anti = |u: &Rational| -> Rational {
        let mut acc = Rational::zero();
        let mut pow = u.pow(n);
        for j in 0..n {
            let c = Rational::ratio(binom(n as u64 - 1, j as i64), BigUint::from(n + j));
            let term = &c * &pow;
            acc = if j % 2 == 0 { acc + term } else { acc - term };
            pow = &pow * u;
        }
        acc
    };
    Ok(anti(&upper) - anti(x))
}

/// `2 m x^n + γ ∫_x^{1-x} u^(n-1)(1-u)^(n-1) du`. For every admissible `x`
/// this bounds the probability that greedy coloring fails.
pub fn ck_eval(n: u32, m: u64, gamma: u64, x: &Rational) -> Result<Rational> {
    let integral = ck_integral(n, x)?;
    Ok(Rational::from(2 * m) * x.pow(n) + Rational::from(gamma) * integral)
}

/// Minimizer of [`ck_eval`] over the dyadic grid `i / 2^bits`, `0 <= i <= 2^(bits-1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CkSearch {
    pub x_star: Rational,
    pub value: Rational,
    pub resolution_bits: u32,
}

/// Narrow the dyadic grid to the grid point minimizing [`ck_eval`].
///
/// The derivative of the objective is `2 x^(n-1) (m n - γ (1-x)^(n-1))`,
/// whose sign changes at most once on `[0, 1/2]` (from negative to
/// positive). Bisection on that sign locates the grid cell holding the
/// continuous minimizer; both cell ends are then evaluated exactly. Any
/// grid point gives a valid bound, so the search only affects tightness.
pub fn ck_search(n: u32, m: u64, gamma: u64, resolution_bits: u32) -> Result<CkSearch> {
    assert!(resolution_bits >= 1);
    let scale = BigUint::one() << resolution_bits;
    let grid = |i: u64| Rational::ratio(BigUint::from(i), scale.clone());
    let mn = Rational::from(m * n as u64);
    let g = Rational::from(gamma);
    // nonneg(i): derivative sign at grid point i is >= 0
    let nonneg = |i: u64| -> bool {
        let one_minus = &Rational::one() - &grid(i);
        mn >= &g * &one_minus.pow(n.saturating_sub(1))
    };
    let hi_idx = 1u64 << (resolution_bits - 1);
    let (mut lo, mut hi) = (0u64, hi_idx);
    let candidates: Vec<u64> = if nonneg(0) {
        vec![0]
    } else if !nonneg(hi_idx) {
        vec![hi_idx]
    } else {
        // invariant: !nonneg(lo), nonneg(hi)
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if nonneg(mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        vec![lo, hi]
    };
    let mut best: Option<CkSearch> = None;
    for i in candidates {
        let x = grid(i);
        let value = ck_eval(n, m, gamma, &x)?;
        if best.as_ref().is_none_or(|b| value < b.value) {
            best = Some(CkSearch {
                x_star: x,
                value,
                resolution_bits,
            });
        }
    }
    Ok(best.expect("at least one candidate"))
}

/// Result of the continuous bound: `m(n) >= bound`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CkBound {
    pub n: u32,
    pub bound: u64,
    /// Largest refuted edge count, `bound - 1`.
    pub refuted_m: u64,
    /// Certifying grid point and exact value (< 1) for `refuted_m`.
    pub witness: CkSearch,
}

/// Largest `m` with `min_x ck_eval(n, m, m(m-1), x) < 1`, plus one.
///
/// The objective is nondecreasing in `m` at every `x`, so refutability is
/// monotone and a doubling-then-bisection search over `m` is exact with
/// respect to the searched grid.
pub fn ck_lower_bound(n: u32, resolution_bits: u32) -> Result<CkBound> {
    if n < 2 {
        return Err(Error::pre("ck_lower_bound", "need n >= 2"));
    }
    let refutes = |m: u64| -> Result<Option<CkSearch>> {
        let s = ck_search(n, m, m * m.saturating_sub(1), resolution_bits)?;
        Ok(s.value.is_below_one().then_some(s))
    };
    let mut lo = 1u64;
    let mut lo_wit = refutes(1)?.ok_or_else(|| {
        Error::Certification {
            step: "ck_lower_bound".into(),
            detail: "m = 1 not refuted".into(),
        }
    })?;
    let mut hi = 2u64;
    while let Some(w) = refutes(hi)? {
        lo = hi;
        lo_wit = w;
        hi *= 2;
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        match refutes(mid)? {
            Some(w) => {
                lo = mid;
                lo_wit = w;
            }
            None => hi = mid,
        }
    }
    Ok(CkBound {
        n,
        bound: lo + 1,
        refuted_m: lo,
        witness: lo_wit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn erdos_examples() {
        assert_eq!(erdos_lower(1), BigUint::from(1u32));
        assert_eq!(erdos_lower(5), BigUint::from(16u32));
        assert_eq!(erdos_lower(9), BigUint::from(256u32));
        assert_eq!(erdos_hajnal_upper(2), BigUint::from(3u32));
        assert_eq!(erdos_hajnal_upper(3), BigUint::from(10u32));
        assert_eq!(erdos_hajnal_upper(5), BigUint::from(126u32));
    }

    #[test]
    fn erdos_v_bounds() {
        assert_eq!(erdos_mnv_bounds(5, 12).unwrap(), (q("66"), q("1584")));
        assert_eq!(erdos_mnv_bounds(2, 6).unwrap(), (q("15/6"), q("30")));
        assert!(erdos_mnv_bounds(5, 10).is_err());
        assert!(erdos_mnv_bounds(5, 13).is_err());
    }

    #[test]
    fn schoenheim_examples() {
        assert_eq!(schoenheim(5, 11), 7);
        assert_eq!(schoenheim(2, 4), 6);
        assert_eq!(schoenheim(5, 23), 28);
    }

    #[test]
    fn schoenheim_nondecreasing() {
        for n in 2..=9 {
            for v in n as u64..400 {
                assert!(schoenheim(n, v + 1) >= schoenheim(n, v));
            }
        }
    }

    #[test]
    fn random_coloring_examples() {
        assert_eq!(random_coloring_lower(5, 11).unwrap(), q("66"));
        assert_eq!(random_coloring_lower(2, 4).unwrap(), q("3"));
        assert!(random_coloring_lower(5, 8).is_err());
        // decreases towards 2^(n-1) from above
        let far = random_coloring_lower(5, 100_000).unwrap().to_f64_approx();
        assert!(far > 16.0 && far < 16.01, "{far}");
    }

    #[test]
    fn goldberg_russell_examples() {
        assert_eq!(goldberg_russell(5, None).unwrap().bound, 28);
        assert_eq!(goldberg_russell(7, None).unwrap().bound, 94);
        assert_eq!(goldberg_russell(9, None).unwrap().bound, 328);
        assert!(matches!(goldberg_russell(9, Some(60)), Err(Error::SearchCap(_))));
    }

    #[test]
    fn goldberg_russell_above_erdos_floor() {
        for n in 2..=9 {
            let gr = goldberg_russell(n, None).unwrap();
            assert!(BigUint::from(gr.bound) >= erdos_lower(n), "n = {n}");
        }
    }

    #[test]
    fn ck_integral_examples() {
        for n in 1..8 {
            assert!(ck_integral(n, &q("1/2")).unwrap().is_zero());
        }
        assert_eq!(ck_integral(1, &q("1/8")).unwrap(), q("3/4"));
        assert_eq!(ck_integral(2, &q("0")).unwrap(), q("1/6"));
        assert!(ck_integral(3, &q("3/5")).is_err());
        assert!(ck_integral(3, &q("-1/5")).is_err());
    }

    #[test]
    fn ck_eval_examples() {
        let at0 = ck_eval(5, 28, 756, &q("0")).unwrap();
        assert_eq!(at0, Rational::from(756u64) * ck_integral(5, &q("0")).unwrap());
        assert!(ck_eval(6, 0, 0, &q("1/7")).unwrap().is_zero());
    }

    #[test]
    fn ck_improved_gamma_refutes_28() {
        let s = ck_search(5, 28, 670, 20).unwrap();
        assert!(s.value.is_below_one(), "{}", s.value.to_f64_approx());
        // the trivial estimate does not
        let t = ck_search(5, 28, 28 * 27, 20).unwrap();
        assert!(!t.value.is_below_one());
    }

    #[test]
    fn ck_search_is_grid_minimum_on_coarse_grid() {
        for (n, m) in [(5u32, 27u64), (6, 40), (3, 5)] {
            let g = m * (m - 1);
            let bits = 8;
            let s = ck_search(n, m, g, bits).unwrap();
            for i in 0..=(1u64 << (bits - 1)) {
                let x = Rational::ratio(BigUint::from(i), BigUint::from(1u64 << bits));
                assert!(ck_eval(n, m, g, &x).unwrap() >= s.value);
            }
        }
    }

    #[test]
    fn ck_row_small() {
        assert_eq!(ck_lower_bound(5, 20).unwrap().bound, 27);
        assert_eq!(ck_lower_bound(6, 20).unwrap().bound, 57);
    }
}
