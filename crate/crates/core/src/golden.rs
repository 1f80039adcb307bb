//! Exact arithmetic in the golden field `Q(tau)`, where `tau^2 = tau + 1`.
//!
//! Every element is stored as `(p + q*tau) / den` with `den > 0` and
//! `gcd(p, q, den) = 1`, so two values are equal exactly when their
//! representations are. Comparison never goes through floating point: the
//! sign of `p + q*tau` is decided from `2p + q + q*sqrt(5)` with integer
//! arithmetic only.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::ktheory::fib;

const TAU_F64: f64 = 1.618_033_988_749_895;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GoldenError {
    #[error("division by zero in Q(tau)")]
    DivisionByZero,
    #[error("decimal input {0:?} rejected: give an exact value such as 1/2, 2-tau or (3-tau)/5")]
    DecimalRejected(String),
    #[error("cannot parse {0:?} as an element of Q(tau)")]
    Parse(String),
}

/// An element `p + q*tau` of the ring `Z[tau]`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GoldenInt {
    pub p: BigInt,
    pub q: BigInt,
}

impl GoldenInt {
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Self {
        Self {
            p: p.into(),
            q: q.into(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    /// Field norm `p^2 + pq - q^2`; zero only for the zero element.
    pub fn norm(&self) -> BigInt {
        &self.p * &self.p + &self.p * &self.q - &self.q * &self.q
    }

    /// Galois image under `tau -> 1 - tau`.
    pub fn conjugate(&self) -> Self {
        Self {
            p: &self.p + &self.q,
            q: -&self.q,
        }
    }

    /// Exact sign of the real number `p + q*tau` as -1, 0 or +1.
    pub fn sign(&self) -> i8 {
        // 2(p + q*tau) = P + Q*sqrt(5)
        let big_p: BigInt = 2 * &self.p + &self.q;
        let big_q = &self.q;
        let sp = signum(&big_p);
        let sq = signum(big_q);
        match (sp, sq) {
            (0, 0) => 0,
            (a, b) if a >= 0 && b >= 0 => 1,
            (a, b) if a <= 0 && b <= 0 => -1,
            _ => {
                let p2 = &big_p * &big_p;
                let q2 = 5 * big_q * big_q;
                // P^2 = 5 Q^2 has no nonzero integer solution.
                if (p2 > q2) == (sp > 0) {
                    1
                } else {
                    -1
                }
            }
        }
    }

    fn mul_ref(&self, other: &Self) -> Self {
        let pr = &self.p * &other.p;
        let qs = &self.q * &other.q;
        Self {
            p: &pr + &qs,
            q: &self.p * &other.q + &self.q * &other.p + qs,
        }
    }

    fn scale(&self, k: &BigInt) -> Self {
        Self {
            p: &self.p * k,
            q: &self.q * k,
        }
    }
}

fn signum(x: &BigInt) -> i8 {
    match x.cmp(&BigInt::zero()) {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

impl Add for &GoldenInt {
    type Output = GoldenInt;
    fn add(self, rhs: &GoldenInt) -> GoldenInt {
        GoldenInt {
            p: &self.p + &rhs.p,
            q: &self.q + &rhs.q,
        }
    }
}

impl Sub for &GoldenInt {
    type Output = GoldenInt;
    fn sub(self, rhs: &GoldenInt) -> GoldenInt {
        GoldenInt {
            p: &self.p - &rhs.p,
            q: &self.q - &rhs.q,
        }
    }
}

impl Mul for &GoldenInt {
    type Output = GoldenInt;
    fn mul(self, rhs: &GoldenInt) -> GoldenInt {
        self.mul_ref(rhs)
    }
}

impl Neg for &GoldenInt {
    type Output = GoldenInt;
    fn neg(self) -> GoldenInt {
        GoldenInt {
            p: -&self.p,
            q: -&self.q,
        }
    }
}

/// An element `(p + q*tau) / den` of `Q(tau)` in canonical reduced form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GoldenRational {
    num: GoldenInt,
    den: BigInt,
}

impl GoldenRational {
    pub fn new(
        p: impl Into<BigInt>,
        q: impl Into<BigInt>,
        den: impl Into<BigInt>,
    ) -> Result<Self, GoldenError> {
        let den = den.into();
        if den.is_zero() {
            return Err(GoldenError::DivisionByZero);
        }
        Ok(Self::from_parts(GoldenInt::new(p, q), den))
    }

    /// `p + q*tau` with denominator one.
    pub fn golden(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Self {
        Self {
            num: GoldenInt::new(p, q),
            den: BigInt::one(),
        }
    }

    /// The rational `n / d`. Panics when `d == 0`.
    pub fn ratio(n: impl Into<BigInt>, d: impl Into<BigInt>) -> Self {
        Self::new(n, 0, d).expect("nonzero denominator")
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Self::golden(n, 0)
    }

    pub fn zero() -> Self {
        Self::integer(0)
    }

    pub fn one() -> Self {
        Self::integer(1)
    }

    pub fn tau() -> Self {
        Self::golden(0, 1)
    }

    /// `1/tau = tau - 1`.
    pub fn tau_inv() -> Self {
        Self::golden(-1, 1)
    }

    fn from_parts(num: GoldenInt, den: BigInt) -> Self {
        let mut g = num.p.gcd(&num.q).gcd(&den);
        if den.is_negative() {
            g = -g;
        }
        if g.is_one() {
            return Self { num, den };
        }
        Self {
            num: GoldenInt {
                p: &num.p / &g,
                q: &num.q / &g,
            },
            den: &den / &g,
        }
    }

    pub fn p(&self) -> &BigInt {
        &self.num.p
    }

    pub fn q(&self) -> &BigInt {
        &self.num.q
    }

    pub fn den(&self) -> &BigInt {
        &self.den
    }

    pub fn numerator(&self) -> &GoldenInt {
        &self.num
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True iff the value lies in `Z[tau] = Z + (1/tau)Z`.
    pub fn is_golden_integer(&self) -> bool {
        self.den.is_one()
    }

    pub fn sign(&self) -> i8 {
        self.num.sign()
    }

    pub fn abs(&self) -> Self {
        if self.sign() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    pub fn conjugate(&self) -> Self {
        Self::from_parts(self.num.conjugate(), self.den.clone())
    }

    /// Multiplicative inverse via the conjugate: `(p+q*tau)^-1 = ((p+q) - q*tau) / N`.
    pub fn inverse(&self) -> Result<Self, GoldenError> {
        if self.is_zero() {
            return Err(GoldenError::DivisionByZero);
        }
        let norm = self.num.norm();
        Ok(Self::from_parts(
            self.num.conjugate().scale(&self.den),
            norm,
        ))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, GoldenError> {
        Ok(self * &rhs.inverse()?)
    }

    /// Largest integer `m` with `m <= self`.
    pub fn floor(&self) -> BigInt {
        let mut m = self.floor_estimate();
        let mut steps = 0;
        loop {
            let below = self - &Self::integer(m.clone());
            if below.sign() < 0 {
                m -= 1;
            } else if (&below - &Self::one()).sign() >= 0 {
                m += 1;
            } else {
                break;
            }
            steps += 1;
            debug_assert!(steps <= 2, "floor estimate off by more than two");
        }
        m
    }

    /// Smallest integer `m` with `m >= self`.
    pub fn ceil(&self) -> BigInt {
        -(-self).floor()
    }

    /// Splits `self = m + frac` with `m` an integer and `0 <= frac < 1`.
    pub fn floor_mod1(&self) -> (BigInt, Self) {
        let m = self.floor();
        let frac = self - &Self::integer(m.clone());
        (m, frac)
    }

    pub fn frac(&self) -> Self {
        self.floor_mod1().1
    }

    fn floor_estimate(&self) -> BigInt {
        let small = |x: &BigInt| x.bits() < 40;
        if small(&self.num.p) && small(&self.num.q) && small(&self.den) {
            let v = (self.num.p.to_f64().unwrap() + self.num.q.to_f64().unwrap() * TAU_F64)
                / self.den.to_f64().unwrap();
            return BigInt::from(v.floor() as i64);
        }
        // 2(p + q tau) = P + Q sqrt5 lies in (P + s, P + s + 1) with s = floor(Q sqrt5).
        let big_p: BigInt = 2 * &self.num.p + &self.num.q;
        let q = &self.num.q;
        let root: BigInt = (BigInt::from(5) * q * q).sqrt();
        let s = if q.is_negative() { -root - 1 } else { root };
        (big_p + s).div_floor(&(2 * &self.den))
    }

    /// Nearest `f64`, accurate to relative precision even under cancellation.
    pub fn to_f64(&self) -> f64 {
        let p = self.num.p.to_f64().unwrap_or(f64::NAN);
        let q = self.num.q.to_f64().unwrap_or(f64::NAN);
        let d = self.den.to_f64().unwrap_or(f64::NAN);
        let direct = p + q * TAU_F64;
        let conj = p + q * (1.0 - TAU_F64);
        if direct.abs() >= conj.abs() || conj == 0.0 {
            direct / d
        } else {
            // p + q tau = N / (p + q tau')
            let norm = self.num.norm().to_f64().unwrap_or(f64::NAN);
            norm / conj / d
        }
    }

    /// Decimal expansion rounded to `digits` places after the point.
    pub fn to_decimal_string(&self, digits: usize) -> String {
        let scale = BigInt::from(10u32).pow(digits as u32);
        let scaled = self * &Self::integer(scale) + Self::ratio(1, 2);
        let n = scaled.floor();
        let neg = n.is_negative();
        let mut s = n.abs().to_string();
        if digits > 0 {
            if s.len() <= digits {
                s = "0".repeat(digits + 1 - s.len()) + &s;
            }
            s.insert(s.len() - digits, '.');
        }
        if neg {
            s.insert(0, '-');
        }
        s
    }
}

impl From<i64> for GoldenRational {
    fn from(n: i64) -> Self {
        Self::integer(n)
    }
}

impl From<GoldenInt> for GoldenRational {
    fn from(num: GoldenInt) -> Self {
        Self {
            num,
            den: BigInt::one(),
        }
    }
}

impl PartialOrd for GoldenRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GoldenRational {
    fn cmp(&self, other: &Self) -> Ordering {
        let lhs = self.num.scale(&other.den);
        let rhs = other.num.scale(&self.den);
        match (&lhs - &rhs).sign() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }
}

impl Add for &GoldenRational {
    type Output = GoldenRational;
    fn add(self, rhs: &GoldenRational) -> GoldenRational {
        if self.den == rhs.den {
            return GoldenRational::from_parts(&self.num + &rhs.num, self.den.clone());
        }
        let num = &self.num.scale(&rhs.den) + &rhs.num.scale(&self.den);
        GoldenRational::from_parts(num, &self.den * &rhs.den)
    }
}

impl Sub for &GoldenRational {
    type Output = GoldenRational;
    fn sub(self, rhs: &GoldenRational) -> GoldenRational {
        self + &(-rhs)
    }
}

impl Mul for &GoldenRational {
    type Output = GoldenRational;
    fn mul(self, rhs: &GoldenRational) -> GoldenRational {
        GoldenRational::from_parts(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &GoldenRational {
    type Output = GoldenRational;
    fn neg(self) -> GoldenRational {
        GoldenRational {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for GoldenRational {
    type Output = GoldenRational;
    fn neg(self) -> GoldenRational {
        -&self
    }
}

macro_rules! forward_owned_binop {
    ($($imp:ident $method:ident),*) => {$(
        impl $imp for GoldenRational {
            type Output = GoldenRational;
            fn $method(self, rhs: GoldenRational) -> GoldenRational {
                (&self).$method(&rhs)
            }
        }
        impl $imp<&GoldenRational> for GoldenRational {
            type Output = GoldenRational;
            fn $method(self, rhs: &GoldenRational) -> GoldenRational {
                (&self).$method(rhs)
            }
        }
        impl $imp<GoldenRational> for &GoldenRational {
            type Output = GoldenRational;
            fn $method(self, rhs: GoldenRational) -> GoldenRational {
                self.$method(&rhs)
            }
        }
    )*};
}

forward_owned_binop!(Add add, Sub sub, Mul mul);

/// Exact `tau^k` for any integer `k`.
///
/// Nonnegative powers are `f(k-1) + f(k)*tau`; negative powers use
/// `tau^-k = (-1)^k (f(k+1) - f(k)*tau)`.
pub fn golden_power(k: i64) -> GoldenRational {
    if k == 0 {
        return GoldenRational::one();
    }
    let m = k.unsigned_abs() as usize;
    if k > 0 {
        return GoldenRational::golden(fib(m - 1), fib(m));
    }
    let value = GoldenRational::golden(fib(m + 1), -fib(m));
    if m % 2 == 1 {
        -value
    } else {
        value
    }
}

impl fmt::Display for GoldenRational {
    /// Canonical text: `p`, `q*tau`, `p+q*tau`, with `/den` (parenthesized
    /// when both parts are present) for non-unit denominators.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = &self.num.p;
        let q = &self.num.q;
        let tau_term = |q: &BigInt| -> String {
            if q.is_one() {
                "tau".to_string()
            } else if *q == -BigInt::one() {
                "-tau".to_string()
            } else {
                format!("{q}*tau")
            }
        };
        let numer = match (p.is_zero(), q.is_zero()) {
            (_, true) => p.to_string(),
            (true, false) => tau_term(q),
            (false, false) => {
                let t = tau_term(&q.abs());
                let sign = if q.is_negative() { '-' } else { '+' };
                format!("{p}{sign}{t}")
            }
        };
        if self.den.is_one() {
            f.write_str(&numer)
        } else if !p.is_zero() && !q.is_zero() {
            write!(f, "({numer})/{}", self.den)
        } else {
            write!(f, "{numer}/{}", self.den)
        }
    }
}

impl FromStr for GoldenRational {
    type Err = GoldenError;

    /// Accepts integers, rationals `p/q`, and golden forms such as `2-tau`,
    /// `3*tau-5`, `(3-tau)/5` or `p+q*tau/d` (the trailing `/d` divides the
    /// whole numerator). Decimals are rejected.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let parse_err = || GoldenError::Parse(s.to_string());
        if compact.is_empty() {
            return Err(parse_err());
        }
        if compact.contains('.') || compact.contains(['e', 'E']) && !compact.contains("tau") {
            return Err(GoldenError::DecimalRejected(s.to_string()));
        }
        let (numer, den) = match compact.rfind('/') {
            Some(i) if !compact[i..].contains(')') => {
                let den: BigInt = compact[i + 1..].parse().map_err(|_| parse_err())?;
                if den.is_zero() {
                    return Err(GoldenError::DivisionByZero);
                }
                (&compact[..i], den)
            }
            _ => (compact.as_str(), BigInt::one()),
        };
        let numer = numer
            .strip_prefix('(')
            .and_then(|n| n.strip_suffix(')'))
            .unwrap_or(numer);
        let num = parse_golden_int(numer).ok_or_else(parse_err)?;
        Ok(Self::from_parts(num, den))
    }
}

fn parse_golden_int(s: &str) -> Option<GoldenInt> {
    if s.is_empty() {
        return None;
    }
    let mut terms = Vec::new();
    let mut start = 0;
    for (i, c) in s.char_indices() {
        if (c == '+' || c == '-') && i > 0 && !s[..i].ends_with(['*', '+', '-']) {
            terms.push(&s[start..i]);
            start = i;
        }
    }
    terms.push(&s[start..]);

    let mut out = GoldenInt::default();
    for term in terms {
        let (neg, body) = match term.as_bytes().first()? {
            b'+' => (false, &term[1..]),
            b'-' => (true, &term[1..]),
            _ => (false, term),
        };
        if body.is_empty() {
            return None;
        }
        let (coef, is_tau) = if let Some(c) = body.strip_suffix("tau") {
            let c = c.strip_suffix('*').unwrap_or(c);
            let coef = if c.is_empty() {
                BigInt::one()
            } else {
                c.parse::<BigInt>().ok()?
            };
            (coef, true)
        } else {
            (body.parse::<BigInt>().ok()?, false)
        };
        let coef = if neg { -coef } else { coef };
        if is_tau {
            out.q += coef;
        } else {
            out.p += coef;
        }
    }
    Some(out)
}

/// JSON encoding of a big integer: a plain number when it fits in `i64`,
/// a decimal string otherwise.
pub mod json_bigint {
    use super::*;

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        match x.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&x.to_string()),
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Int(i64),
        Str(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Int(v) => Ok(BigInt::from(v)),
            Repr::Str(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct GoldenJson {
    #[serde(with = "json_bigint")]
    p: BigInt,
    #[serde(with = "json_bigint")]
    q: BigInt,
    #[serde(with = "json_bigint")]
    den: BigInt,
}

impl Serialize for GoldenRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GoldenJson {
            p: self.num.p.clone(),
            q: self.num.q.clone(),
            den: self.den.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GoldenRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = GoldenJson::deserialize(d)?;
        GoldenRational::new(raw.p, raw.q, raw.den).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(p: i64, q: i64) -> GoldenRational {
        GoldenRational::golden(p, q)
    }

    #[test]
    fn sign_examples() {
        assert_eq!(g(0, 0).sign(), 0);
        assert_eq!(g(-5, 3).sign(), -1);
        assert_eq!(g(-3, 2).sign(), 1);
        assert_eq!(g(5, -3).sign(), 1);
        assert_eq!(GoldenRational::new(-3, 2, -7).unwrap().sign(), -1);
    }

    #[test]
    fn field_op_examples() {
        assert_eq!(GoldenRational::tau().inverse().unwrap(), g(-1, 1));
        assert_eq!(
            g(2, 1).inverse().unwrap(),
            GoldenRational::new(3, -1, 5).unwrap()
        );
        assert_eq!(&g(-1, 1) * &g(-1, 1), g(2, -1));
        assert_eq!(
            GoldenRational::zero().inverse(),
            Err(GoldenError::DivisionByZero)
        );
        assert_eq!(
            GoldenRational::new(1, 1, 0),
            Err(GoldenError::DivisionByZero)
        );
    }

    #[test]
    fn canonical_form() {
        let x = GoldenRational::new(4, -2, -6).unwrap();
        assert_eq!(x.p(), &BigInt::from(-2));
        assert_eq!(x.q(), &BigInt::from(1));
        assert_eq!(x.den(), &BigInt::from(3));
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(GoldenRational::tau().conjugate(), g(1, -1));
        assert_eq!(GoldenRational::one().conjugate(), GoldenRational::one());
        assert_eq!(g(2, -1).conjugate(), g(1, 1));
    }

    #[test]
    fn floor_mod1_examples() {
        assert_eq!(
            GoldenRational::tau().floor_mod1(),
            (BigInt::from(1), g(-1, 1))
        );
        // 1/tau^2 - 1/tau = 3 - 2 tau
        let x = &g(2, -1) - &g(-1, 1);
        assert_eq!(x, g(3, -2));
        assert_eq!(x.floor_mod1(), (BigInt::from(-1), g(4, -2)));
        let half = GoldenRational::ratio(1, 2);
        assert_eq!(half.floor_mod1(), (BigInt::from(0), half.clone()));
    }

    #[test]
    fn floor_of_huge_values_uses_exact_path() {
        // tau^-80 has coefficients near 2^55; its floor is 0.
        let tiny = golden_power(-80);
        assert_eq!(tiny.floor(), BigInt::zero());
        assert_eq!((-&tiny).floor(), BigInt::from(-1));
        let big = golden_power(90);
        let (m, frac) = big.floor_mod1();
        assert!(frac.sign() >= 0 && frac < GoldenRational::one());
        assert_eq!(&GoldenRational::integer(m) + &frac, big);
    }

    #[test]
    fn golden_power_examples() {
        assert_eq!(golden_power(-1), g(-1, 1));
        assert_eq!(golden_power(-2), g(2, -1));
        assert_eq!(golden_power(3), g(1, 2));
        assert_eq!(golden_power(0), GoldenRational::one());
    }

    #[test]
    fn golden_power_inverse_pairs() {
        for k in 0..=40 {
            assert_eq!(
                &golden_power(-k) * &golden_power(k),
                GoldenRational::one(),
                "k={k}"
            );
        }
    }

    #[test]
    fn negative_power_identity() {
        // independent route: repeated multiplication by 1/tau
        let mut acc = GoldenRational::one();
        for k in 1..=30usize {
            acc = &acc * &GoldenRational::tau_inv();
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let expected = g(
                sign * fib(k + 1).to_i64().unwrap(),
                -sign * fib(k).to_i64().unwrap(),
            );
            assert_eq!(acc, expected);
            assert_eq!(golden_power(-(k as i64)), expected);
        }
    }

    #[test]
    fn float_and_decimal_rendering() {
        assert!((GoldenRational::tau().to_f64() - TAU_F64).abs() < 1e-15);
        let tiny = golden_power(-40);
        let rel = (tiny.to_f64() - TAU_F64.powi(-40)).abs() / TAU_F64.powi(-40);
        assert!(rel < 1e-12, "rel err {rel}");
        assert_eq!(GoldenRational::tau().to_decimal_string(6), "1.618034");
        assert_eq!(g(3, -2).to_decimal_string(3), "-0.236");
        assert_eq!(GoldenRational::ratio(1, 2).to_decimal_string(0), "1");
        assert_eq!(GoldenRational::integer(7).to_decimal_string(2), "7.00");
    }

    #[test]
    fn text_round_trip_and_parsing() {
        for s in [
            "0",
            "1/2",
            "2-tau",
            "tau",
            "-tau",
            "(3-tau)/5",
            "-5+3*tau",
            "2*tau/3",
        ] {
            let x: GoldenRational = s.parse().unwrap();
            assert_eq!(x.to_string(), s, "{s}");
        }
        assert_eq!(
            "3-tau/5".parse::<GoldenRational>().unwrap(),
            GoldenRational::new(3, -1, 5).unwrap()
        );
        assert_eq!("1+-1*tau".parse::<GoldenRational>().unwrap(), g(1, -1));
        assert_eq!("3tau".parse::<GoldenRational>().unwrap(), g(0, 3));
        assert!(matches!(
            "0.5".parse::<GoldenRational>(),
            Err(GoldenError::DecimalRejected(_))
        ));
        assert!(matches!(
            "1e3".parse::<GoldenRational>(),
            Err(GoldenError::DecimalRejected(_))
        ));
        assert!(matches!(
            "x".parse::<GoldenRational>(),
            Err(GoldenError::Parse(_))
        ));
        assert!(matches!(
            "1/0".parse::<GoldenRational>(),
            Err(GoldenError::DivisionByZero)
        ));
        assert!(matches!(
            "".parse::<GoldenRational>(),
            Err(GoldenError::Parse(_))
        ));
    }

    #[test]
    fn json_shape() {
        let x = GoldenRational::new(3, -1, 5).unwrap();
        let v = serde_json::to_value(&x).unwrap();
        assert_eq!(v, serde_json::json!({"p": 3, "q": -1, "den": 5}));
        let back: GoldenRational = serde_json::from_value(v).unwrap();
        assert_eq!(back, x);
        let huge = golden_power(-120);
        let s = serde_json::to_string(&huge).unwrap();
        assert!(s.contains('"'));
        assert_eq!(serde_json::from_str::<GoldenRational>(&s).unwrap(), huge);
    }

    fn arb() -> impl Strategy<Value = GoldenRational> {
        (-10_000i64..10_000, -10_000i64..10_000, 1i64..500)
            .prop_map(|(p, q, d)| GoldenRational::new(p, q, d).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn inverse_is_exact(x in arb()) {
            prop_assume!(!x.is_zero());
            prop_assert_eq!(&x * &x.inverse().unwrap(), GoldenRational::one());
        }

        #[test]
        fn order_is_transitive(x in arb(), y in arb(), z in arb()) {
            if x <= y && y <= z {
                prop_assert!(x <= z);
            }
            prop_assert_eq!((&x - &y).sign(), -(&y - &x).sign());
        }

        #[test]
        fn sign_matches_float(x in arb()) {
            let f = x.to_f64();
            if f.abs() > 1e-9 {
                prop_assert_eq!(x.sign(), if f > 0.0 { 1 } else { -1 });
            }
        }

        #[test]
        fn floor_mod1_in_unit_interval(x in arb()) {
            let (m, frac) = x.floor_mod1();
            prop_assert!(frac.sign() >= 0);
            prop_assert!(frac < GoldenRational::one());
            prop_assert_eq!(&GoldenRational::integer(m) + &frac, x);
        }

        #[test]
        fn norm_vanishes_only_at_zero(p in -1000i64..1000, q in -1000i64..1000) {
            let n = GoldenInt::new(p, q).norm();
            prop_assert_eq!(n.is_zero(), p == 0 && q == 0);
        }

        #[test]
        fn text_round_trip(x in arb()) {
            prop_assert_eq!(x.to_string().parse::<GoldenRational>().unwrap(), x);
        }
    }
}
