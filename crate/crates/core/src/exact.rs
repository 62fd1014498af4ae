//! Rationals and elements of real quadratic fields.
//!
//! A [`QuadSurd`] is `(a + b√D)/c` kept in a canonical form (squarefree `D`,
//! positive `c`, primitive numerator), so structural equality is value
//! equality. Comparison is exact across different radicands: the sign of
//! `k + u√D1 + v√D2` is decided by sign analysis and at most two squarings.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Default number of significant digits in decimal renderings.
pub const DEFAULT_DIGITS: usize = 12;

pub fn int(n: i64) -> BigInt {
    BigInt::from(n)
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// Parses `p/q`, an integer, or a terminating decimal such as `6.5`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n = parse_int(n).ok_or_else(bad)?;
        let d = parse_int(d).ok_or_else(bad)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        if fp.is_empty() || !fp.bytes().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = ip.starts_with('-');
        let ip_val = if ip.is_empty() || ip == "-" || ip == "+" {
            BigInt::zero()
        } else {
            parse_int(ip).ok_or_else(bad)?
        };
        let scale = BigInt::from(10u32).pow(fp.len() as u32);
        let frac = BigInt::from_str(fp).map_err(|_| bad())?;
        let mag = ip_val.abs() * &scale + frac;
        let num = if neg { -mag } else { mag };
        return Ok(Rational::new(num, scale));
    }
    parse_int(s).map(Rational::from_integer).ok_or_else(bad)
}

fn parse_int(s: &str) -> Option<BigInt> {
    let s = s.trim();
    let s = s.strip_prefix('+').unwrap_or(s);
    BigInt::from_str(s).ok()
}

/// `p/q` text form used in JSON output (integers render without a slash).
pub fn rational_text(r: &Rational) -> String {
    r.to_string()
}

/// Serde adapter writing a [`Rational`] as a `"p/q"` string.
pub mod serde_rational {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&rational_text(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(D::Error::custom)
    }
}

/// Serde adapter writing a [`BigInt`] as a JSON number when it fits in
/// `i64` and as a decimal string otherwise.
pub mod serde_bigint {
    use super::*;

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(i64),
        Text(String),
    }

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
        match x.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&x.to_string()),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigInt, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Num(v) => Ok(BigInt::from(v)),
            Repr::Text(s) => BigInt::from_str(&s).map_err(D::Error::custom),
        }
    }

    pub mod vec {
        use super::*;

        pub fn serialize<S: Serializer>(xs: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
            use serde::ser::SerializeSeq;
            let mut seq = s.serialize_seq(Some(xs.len()))?;
            for x in xs {
                match x.to_i64() {
                    Some(v) => seq.serialize_element(&v)?,
                    None => seq.serialize_element(&x.to_string())?,
                }
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<BigInt>, D::Error> {
            Vec::<Repr>::deserialize(d)?
                .into_iter()
                .map(|r| match r {
                    Repr::Num(v) => Ok(BigInt::from(v)),
                    Repr::Text(s) => BigInt::from_str(&s).map_err(D::Error::custom),
                })
                .collect()
        }
    }
}

/// Splits `n = s² · f` with `f` squarefree.
pub fn square_split(n: &BigUint) -> (BigUint, BigUint) {
    if let Some(v) = n.to_u128() {
        let (s, f) = square_split_u128(v);
        return (BigUint::from(s), BigUint::from(f));
    }
    let mut rest = n.clone();
    let mut s = BigUint::one();
    let mut f = BigUint::one();
    let mut p = BigUint::from(2u32);
    while &p * &p * &p <= rest {
        let mut e = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            e += 1;
        }
        if e > 0 {
            s *= p.pow(e / 2);
            if e % 2 == 1 {
                f *= &p;
            }
        }
        p += if p == BigUint::from(2u32) { 1u32 } else { 2u32 };
    }
    // Every prime factor left exceeds the cube root, so `rest` is 1, a prime,
    // a product of two distinct primes, or a prime square.
    let r = rest.sqrt();
    if &r * &r == rest {
        s *= r;
    } else {
        f *= rest;
    }
    (s, f)
}

fn square_split_u128(mut rest: u128) -> (u128, u128) {
    if rest == 0 {
        return (0, 0);
    }
    let mut s = 1u128;
    let mut f = 1u128;
    let mut p = 2u128;
    while p.checked_mul(p).and_then(|x| x.checked_mul(p)).is_some_and(|c| c <= rest) {
        let mut e = 0u32;
        while rest.is_multiple_of(p) {
            rest /= p;
            e += 1;
        }
        if e > 0 {
            s *= p.pow(e / 2);
            if e % 2 == 1 {
                f *= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let r = rest.sqrt();
    if r * r == rest {
        s *= r;
    } else {
        f *= rest;
    }
    (s, f)
}

/// The four field operations, for the generic entry point [`field_op`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// An element `(a + b√D)/c` of a real quadratic field, in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadSurd {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl QuadSurd {
    /// Builds and normalizes `(a + b√D)/c`.
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if d.is_negative() {
            return Err(Error::NegativeRadicand(d.to_string()));
        }
        let (mut a, mut b, mut c) = (a, b, c);
        let (s, f) = square_split(d.magnitude());
        let mut d = BigInt::from_biguint(Sign::Plus, f);
        b *= BigInt::from_biguint(Sign::Plus, s);
        if b.is_zero() || d.is_zero() {
            b = BigInt::zero();
            d = BigInt::zero();
        } else if d.is_one() {
            a += &b;
            b = BigInt::zero();
            d = BigInt::zero();
        }
        if c.is_negative() {
            a = -a;
            b = -b;
            c = -c;
        }
        let g = a.gcd(&b).gcd(&c);
        if !g.is_one() {
            a /= &g;
            b /= &g;
            c /= &g;
        }
        Ok(QuadSurd { a, b, c, d })
    }

    pub fn from_rational(r: &Rational) -> Self {
        QuadSurd {
            a: r.numer().clone(),
            b: BigInt::zero(),
            c: r.denom().clone(),
            d: BigInt::zero(),
        }
    }

    pub fn from_integer(n: BigInt) -> Self {
        QuadSurd { a: n, b: BigInt::zero(), c: BigInt::one(), d: BigInt::zero() }
    }

    pub fn zero() -> Self {
        Self::from_integer(BigInt::zero())
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn c(&self) -> &BigInt {
        &self.c
    }

    /// The squarefree radicand, 0 for rational values.
    pub fn radicand(&self) -> &BigInt {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| Rational::new(self.a.clone(), self.c.clone()))
    }

    pub fn conj(&self) -> Self {
        QuadSurd { a: self.a.clone(), b: -&self.b, c: self.c.clone(), d: self.d.clone() }
    }

    pub fn neg(&self) -> Self {
        QuadSurd { a: -&self.a, b: -&self.b, c: self.c.clone(), d: self.d.clone() }
    }

    /// `x · x̄`, always rational.
    pub fn norm(&self) -> Rational {
        let n = &self.a * &self.a - &self.b * &self.b * &self.d;
        Rational::new(n, &self.c * &self.c)
    }

    fn common_radicand(&self, other: &Self) -> Result<BigInt> {
        match (self.is_rational(), other.is_rational()) {
            (true, _) => Ok(other.d.clone()),
            (_, true) => Ok(self.d.clone()),
            _ if self.d == other.d => Ok(self.d.clone()),
            _ => Err(Error::MixedRadicands(self.d.to_string(), other.d.to_string())),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let d = self.common_radicand(other)?;
        QuadSurd::new(
            &self.a * &other.c + &other.a * &self.c,
            &self.b * &other.c + &other.b * &self.c,
            &self.c * &other.c,
            d,
        )
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let d = self.common_radicand(other)?;
        QuadSurd::new(
            &self.a * &other.a + &self.b * &other.b * &d,
            &self.a * &other.b + &other.a * &self.b,
            &self.c * &other.c,
            d,
        )
    }

    pub fn recip(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.conj().mul_q(&n.recip()))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.common_radicand(other)?;
        self.mul(&other.recip()?)
    }

    pub fn add_q(&self, r: &Rational) -> Self {
        self.add(&QuadSurd::from_rational(r)).expect("rational operand")
    }

    pub fn sub_q(&self, r: &Rational) -> Self {
        self.add_q(&-r)
    }

    pub fn mul_q(&self, r: &Rational) -> Self {
        self.mul(&QuadSurd::from_rational(r)).expect("rational operand")
    }

    pub fn pow2(&self) -> Self {
        self.mul(self).expect("same field")
    }

    /// Sign of the value as an ordering against zero.
    pub fn signum(&self) -> Ordering {
        sign2(&self.a, &self.b, &self.d)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn cmp_rational(&self, r: &Rational) -> Ordering {
        self.cmp(&QuadSurd::from_rational(r))
    }

    /// `floor(x · 10^k)`.
    pub fn floor_scaled(&self, k: u32) -> BigInt {
        let scale = BigInt::from(10u32).pow(k);
        let base = &self.a * &scale;
        let total = if self.b.is_zero() {
            base
        } else {
            let y2 = (&self.b * &scale).pow(2) * &self.d;
            let s = y2.sqrt();
            let exact = &s * &s == y2;
            if self.b.is_positive() {
                base + s
            } else if exact {
                base - s
            } else {
                base - s - 1
            }
        };
        total.div_floor(&self.c)
    }

    /// Rational bounds `lo ≤ x < hi` with `hi - lo = 10^-k`.
    pub fn decimal_bounds(&self, k: u32) -> (Rational, Rational) {
        let f = self.floor_scaled(k);
        let den = BigInt::from(10u32).pow(k);
        (Rational::new(f.clone(), den.clone()), Rational::new(f + 1, den))
    }

    /// Decimal rendering rounded to `sig` significant digits.
    pub fn to_decimal(&self, sig: usize) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let neg = self.signum() == Ordering::Less;
        let mag = if neg { self.neg() } else { self.clone() };
        let sig = sig.max(1) as u32;
        let ip = mag.floor_scaled(0);
        let k = if ip.is_zero() {
            let lead = BigInt::from(10u32).pow(sig - 1);
            let mut k = sig;
            while mag.floor_scaled(k) < lead && k < sig + 4000 {
                k += 1;
            }
            k
        } else {
            let len = ip.to_string().len() as u32;
            sig.saturating_sub(len)
        };
        let n = (mag.floor_scaled(k + 1) + 5u32) / 10u32;
        let mut digits = n.to_string();
        let out = if k == 0 {
            digits
        } else {
            let k = k as usize;
            if digits.len() <= k {
                digits = format!("{}{}", "0".repeat(k + 1 - digits.len()), digits);
            }
            let (i, f) = digits.split_at(digits.len() - k);
            format!("{i}.{f}")
        };
        if neg {
            format!("-{out}")
        } else {
            out
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.to_decimal(20).parse().unwrap_or(f64::NAN)
    }
}

/// Sign of `a + b√d` for integers, `d ≥ 0`.
fn sign2(a: &BigInt, b: &BigInt, d: &BigInt) -> Ordering {
    let sa = a.sign();
    let sb = if d.is_zero() { Sign::NoSign } else { b.sign() };
    match (sa, sb) {
        (Sign::NoSign, Sign::NoSign) => Ordering::Equal,
        (Sign::NoSign, s) | (s, Sign::NoSign) => sign_ord(s),
        (x, y) if x == y => sign_ord(x),
        (x, _) => {
            let lhs = a * a;
            let rhs = b * b * d;
            match lhs.cmp(&rhs) {
                Ordering::Greater => sign_ord(x),
                Ordering::Less => sign_ord(x).reverse(),
                Ordering::Equal => Ordering::Equal,
            }
        }
    }
}

fn sign_ord(s: Sign) -> Ordering {
    match s {
        Sign::Plus => Ordering::Greater,
        Sign::Minus => Ordering::Less,
        Sign::NoSign => Ordering::Equal,
    }
}

/// Sign of `k + u√d1 + v√d2` with `d1 ≠ d2` squarefree.
fn sign3(k: &BigInt, u: &BigInt, d1: &BigInt, v: &BigInt, d2: &BigInt) -> Ordering {
    let sx = sign2(k, u, d1);
    let sy = sign_ord(v.sign());
    if sx == Ordering::Equal {
        return sy;
    }
    if sy == Ordering::Equal || sx == sy {
        return sx;
    }
    // Opposite signs: compare (k + u√d1)² with v²d2 inside ℚ(√d1).
    let ka = k * k + u * u * d1 - v * v * d2;
    let kb = BigInt::from(2) * k * u;
    match sign2(&ka, &kb, d1) {
        Ordering::Greater => sx,
        Ordering::Less => sy,
        Ordering::Equal => Ordering::Equal,
    }
}

impl Ord for QuadSurd {
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        if self.is_rational() || other.is_rational() || self.d == other.d {
            let d = if self.is_rational() { &other.d } else { &self.d };
            let a = &self.a * &other.c - &other.a * &self.c;
            let b = &self.b * &other.c - &other.b * &self.c;
            return sign2(&a, &b, d);
        }
        let k = &self.a * &other.c - &other.a * &self.c;
        let u = &self.b * &other.c;
        let v = -(&other.b * &self.c);
        sign3(&k, &u, &self.d, &v, &other.d)
    }
}

impl PartialOrd for QuadSurd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Exact comparison of two surds.
pub fn surd_cmp(x: &QuadSurd, y: &QuadSurd) -> Ordering {
    x.cmp(y)
}

/// `x op y` within a single quadratic field.
pub fn field_op(x: &QuadSurd, y: &QuadSurd, op: FieldOp) -> Result<QuadSurd> {
    match op {
        FieldOp::Add => x.add(y),
        FieldOp::Sub => x.sub(y),
        FieldOp::Mul => x.mul(y),
        FieldOp::Div => x.div(y),
    }
}

/// Exact square root of a nonnegative rational.
pub fn sqrt_rational(r: &Rational) -> Result<QuadSurd> {
    if r.is_negative() {
        return Err(Error::NegativeRadicand(r.to_string()));
    }
    // √(n/d) = √(n d)/d
    QuadSurd::new(BigInt::zero(), BigInt::one(), r.denom().clone(), r.numer() * r.denom())
}

impl From<&Rational> for QuadSurd {
    fn from(r: &Rational) -> Self {
        QuadSurd::from_rational(r)
    }
}

impl fmt::Display for QuadSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", Rational::new(self.a.clone(), self.c.clone()));
        }
        let mut num = String::new();
        if !self.a.is_zero() {
            num.push_str(&self.a.to_string());
            num.push(if self.b.is_negative() { '-' } else { '+' });
        } else if self.b.is_negative() {
            num.push('-');
        }
        let bb = self.b.abs();
        if !bb.is_one() {
            num.push_str(&bb.to_string());
        }
        num.push('√');
        num.push_str(&self.d.to_string());
        if self.c.is_one() {
            write!(f, "{num}")
        } else if self.a.is_zero() {
            write!(f, "{num}/{}", self.c)
        } else {
            write!(f, "({num})/{}", self.c)
        }
    }
}

#[derive(Serialize, Deserialize)]
struct SurdRepr {
    a: String,
    b: String,
    c: String,
    #[serde(rename = "D")]
    d: String,
    #[serde(default)]
    approx: String,
}

impl Serialize for QuadSurd {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SurdRepr {
            a: self.a.to_string(),
            b: self.b.to_string(),
            c: self.c.to_string(),
            d: self.d.to_string(),
            approx: self.to_decimal(DEFAULT_DIGITS),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuadSurd {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = SurdRepr::deserialize(d)?;
        let p = |s: &str| BigInt::from_str(s).map_err(D::Error::custom);
        QuadSurd::new(p(&r.a)?, p(&r.b)?, p(&r.c)?, p(&r.d)?).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn qs(a: i64, b: i64, c: i64, d: i64) -> QuadSurd {
        QuadSurd::new(int(a), int(b), int(c), int(d)).unwrap()
    }

    fn parts(x: &QuadSurd) -> (BigInt, BigInt, BigInt, BigInt) {
        (x.a.clone(), x.b.clone(), x.c.clone(), x.d.clone())
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(parts(&qs(0, 1, 1, 32)), (int(0), int(4), int(1), int(2)));
        assert_eq!(parts(&qs(6, 2, 2, 2)), (int(3), int(1), int(1), int(2)));
        assert_eq!(parts(&qs(0, 15, 26, 17)), (int(0), int(15), int(26), int(17)));
        assert_eq!(parts(&qs(1, 3, -2, 9)), (int(-5), int(0), int(1), int(0)));
        assert_eq!(
            QuadSurd::new(int(1), int(1), int(0), int(2)),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn compare_examples() {
        assert_eq!(qs(3, 2, 1, 2).cmp(&qs(6, 0, 1, 0)), Ordering::Less);
        assert_eq!(qs(65, 3, 10, 5).cmp(&qs(7, 0, 1, 0)), Ordering::Greater);
        let r = QuadSurd::from_rational(&rat(5, 11));
        assert_eq!(r.cmp(&r.clone()), Ordering::Equal);
        // √2 + √3 against π-ish neighbours in different fields
        assert_eq!(qs(0, 1, 1, 2).cmp(&qs(0, 1, 1, 3)), Ordering::Less);
        assert_eq!(qs(7, -1, 1, 2).cmp(&qs(3, 1, 1, 3)), Ordering::Greater);
    }

    #[test]
    fn field_examples() {
        let y = qs(5, 3, 2, 5);
        let lhs = y.pow2().sub(&y.mul_q(&rat(5, 1))).unwrap().sub_q(&rat(5, 1));
        assert!(lhs.is_zero());
        let s = qs(3, 2, 1, 2).add(&qs(3, -2, 1, 2)).unwrap();
        assert_eq!(s, QuadSurd::from_rational(&rat(6, 1)));
        let g = qs(1, 1, 2, 5).mul(&qs(-1, 1, 2, 5)).unwrap();
        assert_eq!(g, QuadSurd::from_rational(&rat(1, 1)));
        assert!(matches!(
            qs(0, 1, 1, 2).add(&qs(0, 1, 1, 3)),
            Err(Error::MixedRadicands(..))
        ));
        assert_eq!(qs(1, 1, 1, 2).div(&QuadSurd::zero()), Err(Error::DivisionByZero));
        assert_eq!(field_op(&qs(1, 1, 1, 2), &qs(1, 1, 1, 2), FieldOp::Div).unwrap(), qs(1, 0, 1, 0));
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(sqrt_rational(&rat(49, 4)).unwrap(), QuadSurd::from_rational(&rat(7, 2)));
        assert_eq!(sqrt_rational(&rat(3825, 676)).unwrap(), qs(0, 15, 26, 17));
        assert_eq!(sqrt_rational(&rat(512, 49)).unwrap(), qs(0, 16, 7, 2));
        assert!(matches!(sqrt_rational(&rat(-1, 2)), Err(Error::NegativeRadicand(_))));
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(qs(3, 2, 1, 2).to_decimal(12), "5.82842712475");
        assert_eq!(qs(65, 3, 10, 5).to_decimal(8), "7.1708204");
        assert_eq!(QuadSurd::from_rational(&rat(-1, 8)).to_decimal(3), "-0.125");
        assert_eq!(QuadSurd::from_rational(&rat(1, 3000)).to_decimal(2), "0.00033");
        assert_eq!(QuadSurd::from_rational(&rat(6, 1)).to_decimal(12), "6.00000000000");
        assert_eq!(qs(3, -2, 1, 2).to_decimal(4), "0.1716");
    }

    #[test]
    fn display_and_json() {
        assert_eq!(qs(65, 3, 10, 5).to_string(), "(65+3√5)/10");
        assert_eq!(qs(0, 15, 26, 17).to_string(), "15√17/26");
        assert_eq!(qs(3, -1, 1, 2).to_string(), "3-√2");
        let j = serde_json::to_value(qs(7, 3, 2, 5)).unwrap();
        assert_eq!(j["D"], "5");
        assert_eq!(j["approx"], "6.85410196625");
        let back: QuadSurd = serde_json::from_value(j).unwrap();
        assert_eq!(back, qs(7, 3, 2, 5));
    }

    #[test]
    fn parse_rationals() {
        assert_eq!(parse_rational("29/4").unwrap(), rat(29, 4));
        assert_eq!(parse_rational("-6").unwrap(), rat(-6, 1));
        assert_eq!(parse_rational("5.5").unwrap(), rat(11, 2));
        assert_eq!(parse_rational("-0.25").unwrap(), rat(-1, 4));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn square_split_large() {
        let n = BigUint::from(1_000_003u64) * BigUint::from(1_000_003u64) * BigUint::from(6u32);
        assert_eq!(square_split(&n), (BigUint::from(1_000_003u64), BigUint::from(6u32)));
        let big = BigUint::from(u128::MAX) * BigUint::from(49u32);
        let (s, f) = square_split(&big);
        assert_eq!(&s * &s * &f, big);
        assert_eq!(s % 7u32, BigUint::zero());
    }

    fn surd() -> impl Strategy<Value = QuadSurd> {
        (-60i64..60, -20i64..20, 1i64..30, prop::sample::select(vec![0i64, 2, 3, 5, 6, 7, 8, 12, 17]))
            .prop_map(|(a, b, c, d)| qs(a, b, c, d))
    }

    fn same_field(d: i64) -> impl Strategy<Value = QuadSurd> {
        (-60i64..60, -20i64..20, 1i64..30).prop_map(move |(a, b, c)| qs(a, b, c, d))
    }

    /// Interval enclosure of `x · 10^k`, computed from integer square roots.
    fn enclosure(x: &QuadSurd, k: u32) -> (BigInt, BigInt) {
        let scale = BigInt::from(10u32).pow(k);
        let y2 = (x.b() * &scale).pow(2) * x.radicand();
        let s = y2.sqrt();
        let (lo, hi) = if x.b().is_negative() { (-&s - 1, -s) } else { (s.clone(), s + 1) };
        let base = x.a() * &scale;
        ((&base + lo).div_floor(x.c()), (&base + hi).div_ceil(x.c()))
    }

    proptest! {
        #[test]
        fn normalize_idempotent(x in surd()) {
            let again = QuadSurd::new(x.a.clone(), x.b.clone(), x.c.clone(), x.d.clone()).unwrap();
            prop_assert_eq!(again, x);
        }

        #[test]
        fn normalize_preserves_value(a in -50i64..50, b in -20i64..20, c in 1i64..40, s in 1i64..6, d in prop::sample::select(vec![2i64, 3, 5])) {
            // (a + b√(s²d))/c equals (a + bs√d)/c
            let x = qs(a, b, c, s * s * d);
            prop_assert_eq!(x, qs(a, b * s, c, d));
        }

        #[test]
        fn total_order(x in surd(), y in surd(), z in surd()) {
            prop_assert_eq!(x.cmp(&y), y.cmp(&x).reverse());
            if x <= y && y <= z {
                prop_assert!(x <= z);
            }
        }

        #[test]
        fn order_matches_enclosures(x in surd(), y in surd()) {
            let (xl, xh) = enclosure(&x, 100);
            let (yl, yh) = enclosure(&y, 100);
            if xh < yl {
                prop_assert_eq!(x.cmp(&y), Ordering::Less);
            } else if yh < xl {
                prop_assert_eq!(x.cmp(&y), Ordering::Greater);
            } else {
                prop_assert_eq!(x.cmp(&y), Ordering::Equal);
            }
        }

        #[test]
        fn ring_axioms(d in prop::sample::select(vec![2i64, 5, 6]), x in same_field(0), y0 in same_field(2), y1 in same_field(5), y2 in same_field(6)) {
            let y = match d { 2 => y0, 5 => y1, _ => y2 };
            let z = qs(3, 1, 2, d);
            let lhs = x.add(&y).unwrap().mul(&z).unwrap();
            let rhs = x.mul(&z).unwrap().add(&y.mul(&z).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(x.mul(&y).unwrap(), y.mul(&x).unwrap());
            // conjugation is a ring homomorphism
            prop_assert_eq!(y.mul(&z).unwrap().conj(), y.conj().mul(&z.conj()).unwrap());
            prop_assert!(y.mul(&y.conj()).unwrap().is_rational());
            if !y.is_zero() {
                prop_assert_eq!(z.div(&y).unwrap().mul(&y).unwrap(), z);
            }
        }

        #[test]
        fn sqrt_squares_back(n in 0i64..5000, d in 1i64..500) {
            let r = rat(n, d);
            let s = sqrt_rational(&r).unwrap();
            prop_assert!(s.signum() != Ordering::Less);
            prop_assert_eq!(s.pow2(), QuadSurd::from_rational(&r));
        }

        #[test]
        fn decimal_bounds_bracket(x in surd()) {
            let (lo, hi) = x.decimal_bounds(30);
            prop_assert!(x.cmp_rational(&lo) != Ordering::Less);
            prop_assert_eq!(x.cmp_rational(&hi), Ordering::Less);
        }
    }
}
