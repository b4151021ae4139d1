//! Exact integer and rational arithmetic, plus the combinatorial number
//! theory the bound formulas are built from.
//!
//! Big integers come from `num-bigint`; [`Rational`] wraps a reduced
//! `BigRational` so that every probability bound in the crate has one
//! canonical text form (`"num/den"`, denominator omitted when 1).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Binomial coefficient `C(a, b)`; zero when `b < 0` or `b > a`.
pub fn binom(a: u64, b: i64) -> BigUint {
    if b < 0 || b as u64 > a {
        return BigUint::zero();
    }
    let b = (b as u64).min(a - b as u64);
    let mut acc = BigUint::one();
    for i in 0..b {
        acc *= a - i;
        acc /= i + 1;
    }
    acc
}

/// Binomial coefficient with a signed top argument. `C(a, b) = 0` for
/// `a < 0` as well, which is the vanishing convention the summations use.
pub fn binom_signed(a: i64, b: i64) -> BigUint {
    if a < 0 {
        BigUint::zero()
    } else {
        binom(a as u64, b)
    }
}

pub fn factorial(a: u64) -> BigUint {
    (2..=a).fold(BigUint::one(), |acc, i| acc * i)
}

/// Falling factorial `a (a-1) ... (a-r+1)`, zero when `r > a`.
pub fn falling(a: u64, r: u64) -> BigUint {
    if r > a {
        return BigUint::zero();
    }
    ((a - r + 1)..=a).fold(BigUint::one(), |acc, i| acc * i)
}

/// The `k`-th Catalan number `C(2k, k) / (k + 1)`.
pub fn catalan(k: u64) -> BigUint {
    binom(2 * k, k as i64) / (k + 1)
}

/// Exponent of 2 in the `k`-th Catalan number: one less than the number of
/// binary ones of `k + 1`.
pub fn nu2_catalan(k: u64) -> u32 {
    (k + 1).count_ones() - 1
}

/// Exponent of 2 in a nonzero integer; `None` for zero.
pub fn nu2(x: &BigUint) -> Option<u64> {
    x.trailing_zeros()
}

/// Smallest integer not below `num / den` for nonnegative operands.
pub fn ceil_div(num: &BigUint, den: &BigUint) -> BigUint {
    let (q, r) = num.div_rem(den);
    if r.is_zero() {
        q
    } else {
        q + 1u32
    }
}

/// Arbitrary-precision rational, always reduced with positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Rational(BigRational);

impl Rational {
    /// `num / den`, rejecting a zero denominator.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(BigRational::new(num.into(), den)))
    }

    /// Ratio of two naturals; panics on a zero denominator, so only use it
    /// where the denominator is structurally nonzero.
    pub fn ratio(num: BigUint, den: BigUint) -> Self {
        assert!(!den.is_zero(), "Rational::ratio with zero denominator");
        Rational(BigRational::new(
            BigInt::from_biguint(Sign::Plus, num),
            BigInt::from_biguint(Sign::Plus, den),
        ))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn from_natural(n: BigUint) -> Self {
        Self::from_integer(BigInt::from_biguint(Sign::Plus, n))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    /// Ceiling of a nonnegative rational as a natural number.
    pub fn ceil_natural(&self) -> BigUint {
        self.ceil()
            .to_biguint()
            .expect("ceil_natural on a negative rational")
    }

    pub fn compare_to_one(&self) -> Ordering {
        self.0.cmp(&BigRational::one())
    }

    pub fn is_below_one(&self) -> bool {
        self.compare_to_one() == Ordering::Less
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Rational> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    pub fn recip(&self) -> Result<Rational> {
        Rational::one().checked_div(self)
    }

    pub fn pow(&self, e: u32) -> Rational {
        Rational(num_traits::pow(self.0.clone(), e as usize))
    }

    /// Distance to the nearest integer.
    pub fn distance_to_integer(&self) -> Rational {
        let below = Rational::from_integer(self.floor());
        let above = Rational::from_integer(self.ceil());
        let lo = self - &below;
        let hi = &above - self;
        lo.min(hi)
    }

    /// Approximate value. Diagnostics only: no verdict is derived from it.
    pub fn to_f64_approx(&self) -> f64 {
        self.0.to_f64().unwrap_or_else(|| {
            // Very large or small magnitudes: scale through the bit lengths.
            let n = self.numer().to_f64().unwrap_or(f64::INFINITY);
            let d = self.denom().to_f64().unwrap_or(f64::INFINITY);
            n / d
        })
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

impl From<u64> for Rational {
    fn from(n: u64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::ParseRational(s.to_string());
        let digits_ok = |t: &str, signed: bool| {
            let body = if signed {
                t.strip_prefix('-').unwrap_or(t)
            } else {
                t
            };
            !body.is_empty() && body.bytes().all(|b| b.is_ascii_digit())
        };
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (s, None),
        };
        if !digits_ok(num, true) {
            return Err(bad());
        }
        let num: BigInt = num.parse().map_err(|_| bad())?;
        match den {
            None => Ok(Rational::from_integer(num)),
            Some(d) => {
                if !digits_ok(d, false) {
                    return Err(bad());
                }
                let den: BigInt = d.parse().map_err(|_| bad())?;
                Rational::new(num, den)
            }
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $m(self, rhs: &Rational) -> Rational {
                Rational($tr::$m(&self.0, &rhs.0))
            }
        }
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                Rational($tr::$m(self.0, rhs.0))
            }
        }
        impl $tr<&Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: &Rational) -> Rational {
                Rational($tr::$m(self.0, &rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |a, b| a + b)
    }
}

/// `C(a, b)` for `a < rows` and `b <= max_b`, precomputed by Pascal's rule.
/// Used by the scans, which evaluate the same small binomials many times.
#[derive(Debug, Clone)]
pub struct BinomialTable {
    max_b: usize,
    rows: Vec<Vec<BigUint>>,
}

impl BinomialTable {
    pub fn new(rows: usize, max_b: usize) -> Self {
        let mut table: Vec<Vec<BigUint>> = Vec::with_capacity(rows);
        for a in 0..rows {
            let mut row = vec![BigUint::zero(); max_b + 1];
            row[0] = BigUint::one();
            if a > 0 {
                let prev = &table[a - 1];
                for b in 1..=max_b.min(a) {
                    row[b] = &prev[b - 1] + &prev[b];
                }
            }
            table.push(row);
        }
        BinomialTable {
            max_b,
            rows: table,
        }
    }

    /// `C(a, b)` with the out-of-range convention; panics if `a` or `b`
    /// exceeds the table.
    pub fn get(&self, a: i64, b: i64) -> &BigUint {
        static ZERO: std::sync::OnceLock<BigUint> = std::sync::OnceLock::new();
        let zero = ZERO.get_or_init(BigUint::zero);
        if a < 0 || b < 0 || b > a {
            return zero;
        }
        assert!(
            (b as usize) <= self.max_b,
            "binomial table column {b} > {}",
            self.max_b
        );
        &self.rows[a as usize][b as usize]
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }
}
