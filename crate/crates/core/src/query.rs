//! One entry point per bound, producing certificates. A certificate's
//! `method` and `inputs` are exactly a [`BoundRequest`], so replaying it
//! means parsing the inputs back and evaluating again.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::certificate::{CertVerdict, Certificate};
use crate::classic::{ck_lower_bound, ck_search, goldberg_russell, goldberg_russell_at, random_coloring_lower, schoenheim};
use crate::discrete::{discrete_lower_bound, discrete_row, perm_bound, DiscreteBoundQuery};
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::locked::{locked_scan, theorem1_certificate, theorem1_report, CascadeOptions, LockConfig, LockedContext, SelectionStrategy, DEFAULT_V_MAX};
use crate::steiner::theorem2_certify;

/// Grid resolution for the continuous bound.
pub const CK_RESOLUTION_BITS: u32 = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Schoenheim,
    Random,
    Gr,
    Ck,
    Discrete,
    Locked1,
    Locked2,
    Locked3,
    Steiner,
}

impl Method {
    pub const ALL: [Method; 9] = [
        Method::Schoenheim,
        Method::Random,
        Method::Gr,
        Method::Ck,
        Method::Discrete,
        Method::Locked1,
        Method::Locked2,
        Method::Locked3,
        Method::Steiner,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Method::Schoenheim => "schoenheim",
            Method::Random => "random",
            Method::Gr => "gr",
            Method::Ck => "ck",
            Method::Discrete => "discrete",
            Method::Locked1 => "locked1",
            Method::Locked2 => "locked2",
            Method::Locked3 => "locked3",
            Method::Steiner => "steiner",
        }
    }

    fn locks(&self) -> Option<u8> {
        match self {
            Method::Locked1 => Some(1),
            Method::Locked2 => Some(2),
            Method::Locked3 => Some(3),
            _ => None,
        }
    }
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::pre("method", format!("unknown method {s:?}")))
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A single bound evaluation. Absent fields select the scan form of the
/// method where one exists (for example `ck` without `m` computes the
/// bound on `m(n)`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundRequest {
    pub method: Method,
    pub n: u32,
    pub v: Option<u64>,
    pub m: Option<u64>,
    pub gamma: Option<u64>,
    pub strategy: Option<SelectionStrategy>,
}

impl BoundRequest {
    pub fn new(method: Method, n: u32) -> Self {
        BoundRequest { method, n, v: None, m: None, gamma: None, strategy: None }
    }

    fn base_cert(&self, value: Rational) -> Certificate {
        let mut c = Certificate::new(self.method.name(), value).input("n", self.n);
        if let Some(v) = self.v {
            c = c.input("v", v);
        }
        if let Some(m) = self.m {
            c = c.input("m", m);
        }
        if let Some(g) = self.gamma {
            c = c.input("gamma", g);
        }
        if let Some(s) = self.strategy {
            c = c.input("strategy", s);
        }
        c
    }

    /// Recover the request from a certificate's method and inputs.
    pub fn from_certificate(cert: &Certificate) -> Result<Self> {
        let method: Method = cert.method.parse()?;
        let num = |key: &str| -> Result<Option<u64>> {
            match cert.inputs.get(key) {
                None => Ok(None),
                Some(v) => v
                    .as_u64()
                    .map(Some)
                    .ok_or_else(|| Error::pre("replay", format!("input {key} is not a natural number"))),
            }
        };
        let n = num("n")?.ok_or_else(|| Error::pre("replay", "missing input n"))?;
        let strategy = match cert.inputs.get("strategy") {
            None => None,
            Some(Value::String(s)) => Some(s.parse()?),
            Some(_) => return Err(Error::pre("replay", "strategy must be a string")),
        };
        for key in cert.inputs.keys() {
            if !["n", "v", "m", "gamma", "strategy"].contains(&key.as_str()) {
                return Err(Error::pre("replay", format!("unexpected input {key}")));
            }
        }
        Ok(BoundRequest {
            method,
            n: u32::try_from(n).map_err(|_| Error::pre("replay", "n too large"))?,
            v: num("v")?,
            m: num("m")?,
            gamma: num("gamma")?,
            strategy,
        })
    }
}

fn need<T>(x: Option<T>, method: Method, name: &str) -> Result<T> {
    x.ok_or_else(|| Error::pre("bound", format!("method {method} needs --{name}")))
}

fn reject(cond: bool, method: Method, name: &str) -> Result<()> {
    if cond {
        Err(Error::pre("bound", format!("method {method} does not take --{name}")))
    } else {
        Ok(())
    }
}

fn refutation(value: &Rational) -> CertVerdict {
    if value.is_below_one() {
        CertVerdict::Refuted
    } else {
        CertVerdict::NotRefuted
    }
}

/// Evaluate a request.
pub fn evaluate(req: &BoundRequest) -> Result<Certificate> {
    let BoundRequest { method, n, v, m, gamma, strategy } = *req;
    if n < 2 {
        return Err(Error::pre("bound", "need n >= 2"));
    }
    if method.locks().is_none() || method == Method::Locked1 {
        reject(strategy.is_some(), method, "strategy")?;
    }
    if !matches!(method, Method::Ck | Method::Discrete) {
        reject(gamma.is_some(), method, "gamma")?;
    }
    match method {
        Method::Schoenheim => {
            reject(m.is_some(), method, "m")?;
            let v = need(v, method, "v")?;
            Ok(req.base_cert(Rational::from(schoenheim(n, v))))
        }
        Method::Random => {
            reject(m.is_some(), method, "m")?;
            let v = need(v, method, "v")?;
            Ok(req.base_cert(random_coloring_lower(n, v)?))
        }
        Method::Gr => {
            reject(m.is_some(), method, "m")?;
            match v {
                Some(v) => {
                    let b = goldberg_russell_at(n, v)
                        .ok_or_else(|| Error::pre("gr", format!("need v >= 2n - 1, got {v}")))?;
                    Ok(req.base_cert(Rational::from_natural(b)))
                }
                None => {
                    let g = goldberg_russell(n, None)?;
                    Ok(req.base_cert(Rational::from(g.bound)).witness(&g))
                }
            }
        }
        Method::Ck => {
            reject(v.is_some(), method, "v")?;
            match m {
                Some(m) => {
                    let gamma = gamma.unwrap_or(m * m.saturating_sub(1));
                    let s = ck_search(n, m, gamma, CK_RESOLUTION_BITS)?;
                    let verdict = refutation(&s.value);
                    Ok(req.base_cert(s.value.clone()).verdict(verdict).witness(&s))
                }
                None => {
                    reject(gamma.is_some(), method, "gamma")?;
                    let b = ck_lower_bound(n, CK_RESOLUTION_BITS)?;
                    Ok(req.base_cert(Rational::from(b.bound)).witness(&b))
                }
            }
        }
        Method::Discrete => match (v, m) {
            (Some(v), Some(m)) => {
                let q = DiscreteBoundQuery { n, v, m, gamma: gamma.unwrap_or(m * m.saturating_sub(1)) };
                let value = perm_bound(&q)?;
                let verdict = refutation(&value);
                Ok(req.base_cert(value).verdict(verdict))
            }
            (Some(v), None) => {
                reject(gamma.is_some(), method, "gamma")?;
                let row = discrete_row(n, v)?;
                Ok(req.base_cert(Rational::from(row.bound)).witness(&row))
            }
            (None, None) => {
                reject(gamma.is_some(), method, "gamma")?;
                let s = discrete_lower_bound(n, 2 * n as u64 + 1, DEFAULT_V_MAX)?;
                Ok(req
                    .base_cert(Rational::from(s.bound))
                    .witness(json!({ "v_star": s.v_star, "v_range": [2 * n as u64 + 1, DEFAULT_V_MAX] })))
            }
            (None, Some(_)) => Err(Error::pre("bound", "method discrete with --m needs --v")),
        },
        Method::Locked1 | Method::Locked2 | Method::Locked3 => {
            let locks = method.locks().expect("locked method");
            let strat = strategy.unwrap_or(SelectionStrategy::A);
            match (v, m) {
                (Some(v), Some(m)) => {
                    let ctx = LockedContext::new(n, v, LockConfig::default())?;
                    if !ctx.supports(locks as u64) {
                        return Err(Error::pre("bound", format!("{locks} locks need v >= 2n + {locks}")));
                    }
                    let (max_value, witness) = match locks {
                        1 => {
                            let o = ctx.single(m)?;
                            (o.max_value.clone(), serde_json::to_value(&o.survivors).expect("json"))
                        }
                        2 => {
                            let o = ctx.pair(m, strat, None)?;
                            (o.max_value.clone(), serde_json::to_value(&o.survivors).expect("json"))
                        }
                        _ => {
                            let heads = crate::locked::profiles2(n, v, m, strat);
                            let o = ctx.triple(m, strat, &heads)?;
                            (o.max_value.clone(), serde_json::to_value(&o.survivors).expect("json"))
                        }
                    };
                    // no feasible profile: no such hypergraph
                    let value = max_value.unwrap_or_else(Rational::zero);
                    let verdict = refutation(&value);
                    Ok(req.base_cert(value).verdict(verdict).witness(json!({ "survivors": witness })))
                }
                (None, None) => {
                    let s = locked_scan(n, CascadeOptions::locks(locks, strat), 2 * n as u64 + 1, DEFAULT_V_MAX)?;
                    Ok(req.base_cert(Rational::from(s.bound)).witness(json!({
                        "v_star": s.v_star,
                        "v_range": [2 * n as u64 + 1, DEFAULT_V_MAX],
                        "strategy": strat,
                    })))
                }
                _ => Err(Error::pre("bound", format!("method {method} needs both --v and --m, or neither"))),
            }
        }
        Method::Steiner => {
            // the certificate records v = 2n + 1 itself
            reject(v.is_some_and(|v| v != 2 * n as u64 + 1), method, "v")?;
            reject(m.is_some(), method, "m")?;
            Ok(theorem2_certify(n)?.1)
        }
    }
}

/// Re-evaluate a certificate and compare it field by field.
pub fn replay(cert: &Certificate) -> Result<bool> {
    if cert.method == "theorem1" {
        let get = |key: &str| {
            cert.inputs
                .get(key)
                .and_then(Value::as_u64)
                .ok_or_else(|| Error::pre("replay", format!("theorem1 certificate needs input {key}")))
        };
        let n = u32::try_from(get("n")?).map_err(|_| Error::pre("replay", "n too large"))?;
        let report = theorem1_report(n, get("target")?, get("v_max")?)?;
        return Ok(theorem1_certificate(&report) == *cert);
    }
    let req = BoundRequest::from_certificate(cert)?;
    Ok(evaluate(&req)? == *cert)
}

/// Published values for the computed rows of the comparison table, n = 5..9.
pub const TABLE1_GR: [u64; 5] = [28, 51, 94, 174, 328];
pub const TABLE1_CK: [u64; 5] = [27, 57, 119, 248, 516];
pub const TABLE1_DISCRETE: [u64; 5] = [30, 62, 126, 259, 533];
/// Cited upper bounds; reference data, not computed here.
pub const TABLE1_UPPER: [u64; 5] = [51, 147, 421, 1212, 2401];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table1 {
    pub n: Vec<u32>,
    pub goldberg_russell: Vec<u64>,
    pub cherkashin_kozik: Vec<u64>,
    pub discrete: Vec<u64>,
    pub upper_cited: Vec<u64>,
    pub certificates: Vec<Certificate>,
}

impl Table1 {
    /// Cells differing from the published values, as `(row, n, got, want)`.
    pub fn mismatches(&self) -> Vec<(&'static str, u32, u64, u64)> {
        let mut out = Vec::new();
        for (i, &n) in self.n.iter().enumerate() {
            let rows = [
                ("goldberg_russell", self.goldberg_russell[i], TABLE1_GR[i]),
                ("cherkashin_kozik", self.cherkashin_kozik[i], TABLE1_CK[i]),
                ("discrete", self.discrete[i], TABLE1_DISCRETE[i]),
            ];
            for (name, got, want) in rows {
                if got != want {
                    out.push((name, n, got, want));
                }
            }
        }
        out
    }
}

pub fn table1() -> Result<Table1> {
    let ns: Vec<u32> = (5..=9).collect();
    let mut t = Table1 {
        n: ns.clone(),
        goldberg_russell: vec![],
        cherkashin_kozik: vec![],
        discrete: vec![],
        upper_cited: TABLE1_UPPER.to_vec(),
        certificates: vec![],
    };
    for &n in &ns {
        for method in [Method::Gr, Method::Ck, Method::Discrete] {
            let cert = evaluate(&BoundRequest::new(method, n))?;
            let value = cert
                .value
                .numer()
                .try_into()
                .map_err(|_| Error::pre("table1", "value out of range"))?;
            match method {
                Method::Gr => t.goldberg_russell.push(value),
                Method::Ck => t.cherkashin_kozik.push(value),
                _ => t.discrete.push(value),
            }
            t.certificates.push(cert);
        }
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn req(method: Method, n: u32) -> BoundRequest {
        BoundRequest::new(method, n)
    }

    #[test]
    fn dispatch_examples() {
        let mut r = req(Method::Ck, 5);
        r.m = Some(28);
        r.gamma = Some(670);
        let c = evaluate(&r).unwrap();
        assert_eq!(c.verdict, CertVerdict::Refuted);

        let mut r = req(Method::Discrete, 5);
        (r.v, r.m, r.gamma) = (Some(9), Some(1), Some(0));
        assert!(evaluate(&r).unwrap().value.is_zero());

        let c = evaluate(&req(Method::Steiner, 8)).unwrap();
        assert_eq!(c.value, Rational::from(2434u64));
    }

    #[test]
    fn invalid_combinations() {
        assert!(evaluate(&req(Method::Schoenheim, 5)).is_err());
        let mut r = req(Method::Schoenheim, 5);
        (r.v, r.gamma) = (Some(11), Some(3));
        assert!(evaluate(&r).is_err());
        let mut r = req(Method::Locked2, 5);
        r.v = Some(30);
        assert!(evaluate(&r).is_err());
        let mut r = req(Method::Locked1, 5);
        r.strategy = Some(SelectionStrategy::B);
        assert!(evaluate(&r).is_err());
        assert!("nope".parse::<Method>().is_err());
    }

    #[test]
    fn replay_round_trip() {
        let mut r = req(Method::Locked2, 6);
        (r.v, r.m, r.strategy) = (Some(39), Some(63), Some(SelectionStrategy::A));
        let c = evaluate(&r).unwrap();
        assert_eq!(c.verdict, CertVerdict::NotRefuted);
        let back = Certificate::from_json(&c.to_json()).unwrap();
        assert!(replay(&back).unwrap());
        let mut forged = back.clone();
        forged.value = Rational::one();
        assert!(!replay(&forged).unwrap());
    }

    #[test]
    fn locked_single_query() {
        let mut r = req(Method::Locked1, 5);
        (r.v, r.m) = (Some(25), Some(30));
        assert_eq!(evaluate(&r).unwrap().verdict, CertVerdict::Refuted);
        r.m = Some(31);
        assert_eq!(evaluate(&r).unwrap().verdict, CertVerdict::NotRefuted);
    }
}
