//! Hypergraphs on `v = 2n + 1` vertices.
//!
//! Here the random-coloring bound is `m0 = C_{n+1} / 2` and a critical
//! vertex can only sit at positions `n`, `n + 1` or `n + 2`. Locking a
//! minimum-degree vertex at `n + 1`, and then a second vertex at `n + 2`,
//! pushes the bound a few edges past `m0` when `n + 2` has a suitable
//! binary form.

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::certificate::Certificate;
use crate::classic::random_coloring_lower;
use crate::error::{Error, Result};
use crate::exact::{binom, catalan, factorial, nu2_catalan, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SteinerParams {
    pub n: u32,
    /// `C_{n+1} / 2`.
    pub m0: Rational,
    /// Average degree at `m0` edges.
    pub l0: Rational,
    /// Average pair multiplicity at a vertex of degree `l0`.
    pub l12_0: Rational,
}

fn fact(k: u64) -> BigInt {
    BigInt::from(factorial(k))
}

fn rat(num: BigInt, den: BigInt) -> Rational {
    Rational::new(num, den).expect("nonzero denominator")
}

pub fn steiner_params(n: u32) -> Result<SteinerParams> {
    if n < 3 {
        return Err(Error::pre("steiner_params", "need n >= 3"));
    }
    let k = n as u64;
    let m0 = rat(BigInt::from(catalan(k + 1)), BigInt::from(2));
    let l0 = &m0 * &rat(BigInt::from(k), BigInt::from(2 * k + 1));
    let l12_0 = &l0 * &rat(BigInt::from(k - 1), BigInt::from(2 * k));

    let checks = [
        ("m0", &m0, rat(fact(2 * k + 1), fact(k) * fact(k + 2))),
        ("L0", &l0, rat(fact(2 * k), fact(k - 1) * fact(k + 2))),
        ("L0", &l0, rat(BigInt::from(binom(2 * k, k as i64 - 2)), BigInt::from(k - 1))),
        ("L0", &l0, rat(BigInt::from(binom(2 * k, k as i64 - 1)), BigInt::from(k + 2))),
        ("L12_0", &l12_0, &m0 * &rat(BigInt::from(k - 1), BigInt::from(2 * (2 * k + 1)))),
        ("L12_0", &l12_0, rat(fact(2 * k - 1), fact(k - 2) * fact(k + 2))),
    ];
    for (name, got, alt) in checks {
        if *got != alt {
            return Err(Error::Certification {
                step: format!("{name} alternate form"),
                detail: format!("{got} != {alt}"),
            });
        }
    }
    Ok(SteinerParams { n, m0, l0, l12_0 })
}

/// `C_{n+1}` is odd, so `m0` is not an integer.
pub fn parity_obstruction(n: u32) -> bool {
    nu2_catalan(n as u64 + 1) == 0
}

/// `n` is not 3 or 5 mod 6, the case where `m(n, 2n+1)` exceeds `m0` by
/// nonexistence of the matching Steiner system.
pub fn congruence_strictness(n: u32) -> bool {
    !matches!(n % 6, 3 | 5)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingleLock {
    /// Positions `n`, `n + 1`, `n + 2`.
    pub terms: [Rational; 3],
    pub value: Rational,
}

/// One vertex of degree `l1` locked at position `n + 1`.
pub fn single_lock_bound(n: u32, m: u64, l1: u64) -> Result<SingleLock> {
    if n < 2 {
        return Err(Error::pre("single_lock_bound", "need n >= 2"));
    }
    let k = n as u64;
    if l1 * (2 * k + 1) > m * k {
        return Err(Error::Infeasible(format!("L1 = {l1} exceeds mn/(2n+1) for m = {m}")));
    }
    let side = Rational::ratio(BigUint::from(m - l1), binom(2 * k, k as i64));
    let mid = Rational::ratio(BigUint::from(l1 * k), binom(2 * k, k as i64 - 1));
    let value = &side + &side + mid.clone();
    let closed = rat(
        fact(k) * fact(k) * BigInt::from(2 * m + l1 * (k - 1)),
        fact(2 * k),
    );
    if value != closed {
        return Err(Error::Certification {
            step: "single lock closed form".into(),
            detail: format!("{value} != {closed}"),
        });
    }
    Ok(SingleLock { terms: [side.clone(), mid, side], value })
}

/// Largest degree a minimum-degree vertex can have with `m0 + x` edges.
pub fn pigeonhole_l1_cap(n: u32, x: &Rational) -> Result<Rational> {
    if x.is_negative() {
        return Err(Error::pre("pigeonhole_l1_cap", "need x >= 0"));
    }
    let p = steiner_params(n)?;
    let k = n as u64;
    Ok(&p.l0 + &(x * &Rational::ratio(BigUint::from(k), BigUint::from(2 * k + 1))))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoubleLock {
    /// Position `n`, position `n + 2`, and the two bounds for `n + 1`.
    pub terms: [Rational; 4],
    pub value: Rational,
    /// `1 + n!(n-1)!(x - n|L12 - L12_0|)/(2n-1)!`, present when `L1 = L0`.
    pub closed_form: Option<Rational>,
}

/// Vertices of degrees `l1`, `l2` locked at `n + 1`, `n + 2`, sharing
/// `l12` edges.
pub fn double_lock_terms(n: u32, m: u64, l1: u64, l2: u64, l12: u64) -> Result<DoubleLock> {
    if n < 3 {
        return Err(Error::pre("double_lock_bound", "need n >= 3"));
    }
    if l12 > l1.min(l2) || l1 + l2 - l12 > m {
        return Err(Error::Infeasible(format!("L1 = {l1}, L2 = {l2}, L12 = {l12}, m = {m}")));
    }
    let k = n as u64;
    let (x0, x1, x2) = (m - l1 - l2 + l12, l1 - l12, l2 - l12);
    let c_n = binom(2 * k - 1, k as i64);
    let c_n1 = binom(2 * k - 1, k as i64 - 1);
    let c_n2 = binom(2 * k - 1, k as i64 - 2);
    let t0 = Rational::ratio(BigUint::from(x0), c_n);
    let t2 = Rational::ratio(BigUint::from(x2), c_n1.clone());
    let ta = Rational::ratio(BigUint::from(x1 * k), c_n1.clone());
    let tb = &Rational::ratio(BigUint::from(x1), c_n1) + &Rational::ratio(BigUint::from(l12 * (k - 1)), c_n2);
    let value = &(&t0 + &t2) + &ta.clone().min(tb.clone());

    // the same sum over the shared denominator (2n - 1)!
    let assembled = rat(
        fact(k) * fact(k - 1) * BigInt::from(x0 + x2 + (k * x1).min(x1 + l12 * (k + 1))),
        fact(2 * k - 1),
    );
    if value != assembled {
        return Err(Error::Certification {
            step: "double lock term sum".into(),
            detail: format!("{value} != {assembled}"),
        });
    }
    let p = steiner_params(n)?;
    let closed_form = if Rational::from(l1) == p.l0 {
        let x = &Rational::from(m) - &p.m0;
        let dev = (&Rational::from(l12) - &p.l12_0).abs();
        let inner = &x - &(&Rational::from(k) * &dev);
        let c = &Rational::one() + &(&inner * &rat(fact(k) * fact(k - 1), fact(2 * k - 1)));
        if c != value {
            return Err(Error::Certification {
                step: "double lock closed form".into(),
                detail: format!("{value} != {c}"),
            });
        }
        Some(c)
    } else {
        None
    };
    Ok(DoubleLock { terms: [t0, t2, ta, tb], value, closed_form })
}

/// As [`double_lock_terms`]; the bound does not depend on `L2`, which is
/// taken equal to `L1`.
pub fn double_lock_bound(n: u32, m: u64, l1: u64, l12: u64) -> Result<DoubleLock> {
    double_lock_terms(n, m, l1, l1, l12)
}

/// `L12_0` is not an integer but `4 L12_0` is, so every integer `L12` is
/// at least `1/4` away from it.
pub fn quarter_integrality(n: u32) -> Result<bool> {
    let p = steiner_params(n)?;
    let four = &Rational::from(4u64) * &p.l12_0;
    Ok(!p.l12_0.is_integer() && four.is_integer())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SteinerFamily {
    /// `n + 2 = 2^k`, `k >= 3`.
    PowerOfTwo,
    /// `n + 2 = 2^r (4^k + 1)`, `r, k >= 1`.
    FermatLike,
}

pub fn steiner_family(n: u32) -> Option<SteinerFamily> {
    let t = n as u64 + 2;
    if t.is_power_of_two() && t >= 8 {
        return Some(SteinerFamily::PowerOfTwo);
    }
    let r = t.trailing_zeros();
    let odd = t >> r;
    let q = odd.wrapping_sub(1);
    // q = 4^k, k >= 1: a single set bit at an even position >= 2
    if r >= 1 && odd > 1 && q.is_power_of_two() && q.trailing_zeros().is_multiple_of(2) && q >= 4 {
        return Some(SteinerFamily::FermatLike);
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct ChainStep {
    m: u64,
    x: Rational,
    l1_cap: Rational,
    single_lock_worst: Rational,
    l12_distance: Rational,
    double_lock_worst: Rational,
}

/// Certified lower bound on `m(n, 2n+1)` for `n` in one of the two
/// families. Every inequality of the chain is checked exactly and listed
/// in the certificate.
pub fn theorem2_certify(n: u32) -> Result<(BigUint, Certificate)> {
    let family = steiner_family(n).ok_or_else(|| {
        Error::pre("theorem2_certify", format!("n = {n} is in neither family"))
    })?;
    let fail = |step: &str, detail: String| Error::Certification { step: step.to_string(), detail };
    let k = n as u64;
    let p = steiner_params(n)?;
    if !p.l0.is_integer() {
        return Err(fail("L0 integral", format!("L0 = {}", p.l0)));
    }
    let l0 = p.l0.numer().to_u64().ok_or_else(|| fail("L0 size", p.l0.to_string()))?;

    // starting point: random coloring at v = 2n+1 gives exactly m0
    let rc = random_coloring_lower(n, 2 * k + 1)?;
    if rc != p.m0 {
        return Err(fail("random coloring at 2n+1", format!("{rc} != {}", p.m0)));
    }
    let first_m = p.m0.ceil_natural();
    let xs: Vec<Rational> = match family {
        SteinerFamily::PowerOfTwo => {
            if !parity_obstruction(n) {
                return Err(fail("parity", format!("C_{} is even", n + 1)));
            }
            vec!["1/2".parse()?]
        }
        SteinerFamily::FermatLike => {
            if parity_obstruction(n) {
                return Err(fail("parity", format!("C_{} is odd", n + 1)));
            }
            vec![Rational::zero(), Rational::one(), Rational::from(2u64)]
        }
    };
    if !quarter_integrality(n)? {
        return Err(fail("quarter integrality", format!("L12_0 = {}", p.l12_0)));
    }
    let dist = p.l12_0.distance_to_integer();
    if dist < "1/4".parse()? {
        return Err(fail("L12 distance", dist.to_string()));
    }
    let nearest = {
        let lo = p.l12_0.floor();
        if (&Rational::from_integer(lo.clone()) - &p.l12_0).abs() == dist {
            lo
        } else {
            lo + 1
        }
    };
    let nearest = nearest.to_u64().ok_or_else(|| fail("L12 size", nearest.to_string()))?;

    let mut steps = Vec::new();
    for x in &xs {
        let m_r = &p.m0 + x;
        if !m_r.is_integer() {
            return Err(fail("m integral", m_r.to_string()));
        }
        let m = m_r.numer().to_u64().ok_or_else(|| fail("m size", m_r.to_string()))?;
        let cap = pigeonhole_l1_cap(n, x)?;
        if cap >= &p.l0 + &Rational::one() {
            return Err(fail("pigeonhole", format!("x = {x}: cap {cap} >= L0 + 1")));
        }
        // the single-lock bound grows with L1, so L1 = L0 - 1 is the worst
        // case below L0
        let single = single_lock_bound(n, m, l0 - 1)?;
        let predicted = &Rational::one()
            + &(&(&(x * &Rational::from(2u64)) + &Rational::from_integer(1 - n as i64))
                * &rat(fact(k) * fact(k), fact(2 * k)));
        if single.value != predicted || !single.value.is_below_one() {
            return Err(fail("single lock", format!("x = {x}: {} (expected {predicted} < 1)", single.value)));
        }
        // L1 = L0: the bound depends on L12 only through |L12 - L12_0|,
        // so the nearest integer is the worst case
        let double = double_lock_bound(n, m, l0, nearest)?;
        let closed = double.closed_form.clone().ok_or_else(|| fail("double lock", "closed form missing".into()))?;
        if !closed.is_below_one() {
            return Err(fail("double lock", format!("x = {x}: {closed} >= 1")));
        }
        steps.push(ChainStep {
            m,
            x: x.clone(),
            l1_cap: cap,
            single_lock_worst: single.value,
            l12_distance: dist.clone(),
            double_lock_worst: closed,
        });
    }
    let last = xs.last().expect("nonempty");
    let bound_r = &(&p.m0 + last) + &Rational::one();
    let bound = bound_r.ceil_natural();
    let expected = match family {
        SteinerFamily::PowerOfTwo => (catalan(k + 1) + 3u32) / 2u32,
        SteinerFamily::FermatLike => catalan(k + 1) / 2u32 + 3u32,
    };
    if bound != expected {
        return Err(fail("result", format!("{bound} != {expected}")));
    }
    let cert = Certificate::new("steiner", Rational::from_natural(bound.clone()))
        .input("n", n)
        .input("v", 2 * k + 1)
        .witness(json!({
            "family": family,
            "m0": p.m0,
            "L0": p.l0,
            "L12_0": p.l12_0,
            "random_coloring_at_2n_plus_1": rc,
            "first_m_checked": first_m.to_string(),
        }))
        .witness(json!({ "chain": steps }));
    Ok((bound, cert))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn params_examples() {
        let p = steiner_params(6).unwrap();
        assert_eq!(p.m0, r("429/2"));
        assert_eq!(p.l0, r("99"));
        assert_eq!(p.l12_0, r("165/4"));
        let p = steiner_params(8).unwrap();
        assert_eq!((p.m0, p.l0, p.l12_0), (r("2431"), r("1144"), r("1001/2")));
        for n in 3..=40 {
            steiner_params(n).unwrap();
        }
        assert!(steiner_params(2).is_err());
    }

    #[test]
    fn predicates() {
        assert!(parity_obstruction(6));
        assert!(!parity_obstruction(8));
        assert!(parity_obstruction(14));
        assert!(!congruence_strictness(5));
        assert!(congruence_strictness(6));
        assert!(!congruence_strictness(9));
        assert!(quarter_integrality(8).unwrap());
        assert!(quarter_integrality(6).unwrap());
    }

    #[test]
    fn families() {
        assert_eq!(steiner_family(6), Some(SteinerFamily::PowerOfTwo));
        assert_eq!(steiner_family(14), Some(SteinerFamily::PowerOfTwo));
        assert_eq!(steiner_family(30), Some(SteinerFamily::PowerOfTwo));
        assert_eq!(steiner_family(8), Some(SteinerFamily::FermatLike));
        assert_eq!(steiner_family(32), Some(SteinerFamily::FermatLike));
        // 2^2 (4 + 1) - 2 = 18
        assert_eq!(steiner_family(18), Some(SteinerFamily::FermatLike));
        assert_eq!(steiner_family(2), None);
        assert_eq!(steiner_family(5), None);
        // 12 = 2^2 * 3, 3 - 1 = 2 is not a power of four
        assert_eq!(steiner_family(10), None);
    }

    #[test]
    fn single_lock_examples() {
        let s = single_lock_bound(8, 2431, 1143).unwrap();
        assert!(s.value.is_below_one());
        assert!(single_lock_bound(8, 2431, 1145).is_err());
    }

    #[test]
    fn pigeonhole_examples() {
        assert_eq!(pigeonhole_l1_cap(8, &Rational::zero()).unwrap(), r("1144"));
        assert_eq!(pigeonhole_l1_cap(8, &r("2")).unwrap(), r("1144") + r("16/17"));
        assert_eq!(pigeonhole_l1_cap(6, &r("1/2")).unwrap(), r("99") + r("3/13"));
    }

    #[test]
    fn double_lock_examples() {
        let d = double_lock_bound(8, 2433, 1144, 500).unwrap();
        let want = Rational::one()
            + &(r("-2") * rat(fact(8) * fact(7), fact(15)));
        assert_eq!(d.closed_form.as_ref().unwrap(), &want);
        assert!(d.value.is_below_one());
        assert!(double_lock_bound(8, 2433, 1143, 500).unwrap().closed_form.is_none());
    }

    #[test]
    fn certify() {
        assert_eq!(theorem2_certify(6).unwrap().0, BigUint::from(216u32));
        assert_eq!(theorem2_certify(8).unwrap().0, BigUint::from(2434u32));
        let (b, c) = theorem2_certify(14).unwrap();
        assert_eq!(b, (catalan(15) + 3u32) / 2u32);
        assert!(c.is_certified());
        assert!(theorem2_certify(7).is_err());
    }
}
