//! Quasi-perfect classes and the functions attached to them.
//!
//! A class is a tuple `(d, m, p, q, t, ε)` with
//!
//! ```text
//! t² = p² - 6pq + q² + 8,   d = (3(p+q) + εt)/8,   m = ((p+q) + 3εt)/8,
//! ```
//!
//! which forces `3d = m + p + q` and `d² - m² = pq - 1`. As a homology class
//! it is `dL - mE_0 - Σ m_i E_i` with `(m_1, m_2, …) = W(p/q)`.
//!
//! The obstruction of a class at `b` is piecewise linear in `z` with break
//! point at the center: `qz/(d - mb)` to the left, `p/(d - mb)` to the right.
//! For `m = 0` the right branch is the constant `p/d`; for the class
//! `(2,0,5,1,2,-1)` that is `5/2`, which is the value through `(6, 5/2)`.
//!
//! Tuples produced by the symmetries can fail positivity. They are kept as
//! `formal` and flow through the algebra, but geometric predicates reject
//! them.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cf::{weights_pq, Weight};
use crate::error::{Error, Result};
use crate::exact::{serde_bigint, sqrt_rational, QuadSurd, Rational};

/// The sign `ε`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Eps {
    Minus,
    Plus,
}

impl Eps {
    pub fn as_i64(self) -> i64 {
        match self {
            Eps::Plus => 1,
            Eps::Minus => -1,
        }
    }

    pub fn big(self) -> BigInt {
        BigInt::from(self.as_i64())
    }

    pub fn flip(self) -> Eps {
        match self {
            Eps::Plus => Eps::Minus,
            Eps::Minus => Eps::Plus,
        }
    }

    pub fn from_i64(v: i64) -> Result<Eps> {
        match v {
            1 => Ok(Eps::Plus),
            -1 => Ok(Eps::Minus),
            _ => Err(Error::Parse(format!("eps must be +1 or -1, got {v}"))),
        }
    }

    /// `(-1)^i`.
    pub fn parity(i: u64) -> Eps {
        if i.is_multiple_of(2) {
            Eps::Plus
        } else {
            Eps::Minus
        }
    }
}

impl fmt::Display for Eps {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Eps::Plus => "+1",
            Eps::Minus => "-1",
        })
    }
}

impl FromStr for Eps {
    type Err = Error;

    fn from_str(s: &str) -> Result<Eps> {
        match s.trim() {
            "+1" | "1" | "+" => Ok(Eps::Plus),
            "-1" | "-" => Ok(Eps::Minus),
            other => Err(Error::Parse(format!("eps must be +1 or -1, got {other:?}"))),
        }
    }
}

impl Serialize for Eps {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_i64(self.as_i64())
    }
}

impl<'de> Deserialize<'de> for Eps {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Eps::from_i64(i64::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

/// A quasi-perfect class tuple.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClassTuple {
    #[serde(with = "serde_bigint")]
    pub d: BigInt,
    #[serde(with = "serde_bigint")]
    pub m: BigInt,
    #[serde(with = "serde_bigint")]
    pub p: BigInt,
    #[serde(with = "serde_bigint")]
    pub q: BigInt,
    #[serde(with = "serde_bigint")]
    pub t: BigInt,
    pub eps: Eps,
    pub formal: bool,
}

fn positivity(d: &BigInt, m: &BigInt, p: &BigInt, q: &BigInt, eps: Eps) -> bool {
    p.is_positive()
        && q.is_positive()
        && d.is_positive()
        && !m.is_negative()
        && ((eps == Eps::Plus) == (BigInt::from(3) * m > *d))
}

impl ClassTuple {
    /// Checks the three identities and derives the `formal` flag.
    pub fn new(d: BigInt, m: BigInt, p: BigInt, q: BigInt, t: BigInt, eps: Eps) -> Result<Self> {
        let bad = |what: &str| {
            Err(Error::InvariantViolation(format!("({d},{m},{p},{q},{t},{eps}) fails {what}")))
        };
        if !t.is_positive() {
            return bad("t > 0");
        }
        if &t * &t != &p * &p - BigInt::from(6) * &p * &q + &q * &q + 8 {
            return bad("t² = p² - 6pq + q² + 8");
        }
        if BigInt::from(3) * &d != &m + &p + &q {
            return bad("3d = m + p + q");
        }
        if &d * &d - &m * &m != &p * &q - 1 {
            return bad("d² - m² = pq - 1");
        }
        if BigInt::from(8) * &d != BigInt::from(3) * (&p + &q) + eps.big() * &t {
            return bad("8d = 3(p+q) + εt");
        }
        let formal = !positivity(&d, &m, &p, &q, eps);
        Ok(ClassTuple { d, m, p, q, t, eps, formal })
    }

    pub fn from_i64(d: i64, m: i64, p: i64, q: i64, t: i64, eps: i64) -> Result<Self> {
        Self::new(d.into(), m.into(), p.into(), q.into(), t.into(), Eps::from_i64(eps)?)
    }

    /// Recovers `(d, m)` from `(p, q, t, ε)`.
    pub fn from_pqt(p: BigInt, q: BigInt, t: BigInt, eps: Eps) -> Result<Self> {
        let s = &p + &q;
        let (d, rd) = (BigInt::from(3) * &s + eps.big() * &t).div_rem(&BigInt::from(8));
        let (m, rm) = (&s + BigInt::from(3) * eps.big() * &t).div_rem(&BigInt::from(8));
        if !rd.is_zero() || !rm.is_zero() {
            return Err(Error::InvariantViolation(format!(
                "(p,q,t,ε) = ({p},{q},{t},{eps}) gives non-integral (d,m)"
            )));
        }
        Self::new(d, m, p, q, t, eps)
    }

    /// `B^U_n = (n+3, n+2, 2n+6, 1, 2n+3, +1)`; `n = -1` gives `(2,1,4,1,1,+1)`.
    pub fn b_upper(n: i64) -> ClassTuple {
        Self::from_i64(n + 3, n + 2, 2 * n + 6, 1, 2 * n + 3, 1).expect("B^U_n identities")
    }

    /// The middle class of the base triple on `[2n+6, 2n+8]`.
    pub fn e_one(n: i64) -> ClassTuple {
        Self::from_i64(
            2 * n * n + 11 * n + 14,
            2 * n * n + 9 * n + 9,
            4 * n * n + 22 * n + 29,
            2 * n + 4,
            4 * n * n + 16 * n + 13,
            1,
        )
        .expect("E_n identities")
    }

    /// The lower seed `(1,1,1,1,2,+1)` of the quasi-triples.
    pub fn seed_lower() -> ClassTuple {
        Self::from_i64(1, 1, 1, 1, 2, 1).expect("seed identities")
    }

    /// The formal upper seed `(-2,0,-5,-1,2,+1)` of the quasi-triples.
    pub fn seed_upper() -> ClassTuple {
        Self::from_i64(-2, 0, -5, -1, 2, 1).expect("seed identities")
    }

    pub fn center(&self) -> Option<Rational> {
        (!self.q.is_zero()).then(|| Rational::new(self.p.clone(), self.q.clone()))
    }

    /// `m/d`, the parameter `b` singled out by the class.
    pub fn ratio(&self) -> Option<Rational> {
        (!self.d.is_zero()).then(|| Rational::new(self.m.clone(), self.d.clone()))
    }

    /// `r = p + q`.
    pub fn r(&self) -> BigInt {
        &self.p + &self.q
    }

    fn require_geometric(&self) -> Result<()> {
        if self.formal {
            Err(Error::FormalClass(self.to_string()))
        } else {
            Ok(())
        }
    }

    /// `a·self - other` on `(d, m, p, q, t)`, keeping `ε` of `self`.
    pub fn combine(a: &BigInt, x: &ClassTuple, y: &ClassTuple) -> Result<ClassTuple> {
        if x.eps != y.eps {
            return Err(Error::MixedEps);
        }
        ClassTuple::new(
            a * &x.d - &y.d,
            a * &x.m - &y.m,
            a * &x.p - &y.p,
            a * &x.q - &y.q,
            a * &x.t - &y.t,
            x.eps,
        )
    }
}

impl fmt::Display for ClassTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{},{},{})", self.d, self.m, self.p, self.q, self.t, self.eps)
    }
}

impl FromStr for ClassTuple {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("expected (d,m,p,q,t,eps), got {s:?}")))?;
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        if parts.len() != 6 {
            return Err(Error::Parse(format!("expected six entries in {s:?}")));
        }
        let n = |t: &str| {
            BigInt::from_str(t.strip_prefix('+').unwrap_or(t)).map_err(|_| Error::Parse(format!("bad integer {t:?}")))
        };
        ClassTuple::new(n(parts[0])?, n(parts[1])?, n(parts[2])?, n(parts[3])?, n(parts[4])?, parts[5].parse()?)
    }
}

/// The class with center `p/q`, if there is one.
pub fn class_from_center(p: &BigInt, q: &BigInt) -> Result<ClassTuple> {
    let label = || format!("{p}/{q}");
    if !q.is_positive() || p <= q {
        return Err(Error::OutOfDomain(format!("center must exceed 1, got {}", label())));
    }
    if !p.gcd(q).is_one() {
        return Err(Error::OutOfDomain(format!("center {} is not reduced", label())));
    }
    let t2: BigInt = p * p - BigInt::from(6) * p * q + q * q + 8;
    if t2.is_negative() {
        return Err(Error::NotQuasiPerfect(label()));
    }
    let t = t2.sqrt();
    if &t * &t != t2 || t.is_zero() {
        return Err(Error::NotQuasiPerfect(label()));
    }
    let found: Vec<ClassTuple> = [Eps::Plus, Eps::Minus]
        .into_iter()
        .filter_map(|e| ClassTuple::from_pqt(p.clone(), q.clone(), t.clone(), e).ok())
        .collect();
    match found.as_slice() {
        [c] => Ok(c.clone()),
        _ => Err(Error::NotQuasiPerfect(label())),
    }
}

/// `(deg; coeffs)` for the class `deg·L - Σ coeffs_i E_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExcVector {
    #[serde(with = "serde_bigint")]
    pub deg: BigInt,
    #[serde(with = "serde_bigint::vec")]
    pub coeffs: Vec<BigInt>,
}

impl ExcVector {
    pub fn new(deg: BigInt, coeffs: Vec<BigInt>) -> Self {
        ExcVector { deg, coeffs }
    }

    /// `(d; m, W(p/q))` without checking any identity; the weight expansion
    /// is taken of the pair `(p, q)` as given.
    pub fn from_dmpq(d: &BigInt, m: &BigInt, p: &BigInt, q: &BigInt) -> Self {
        let mut coeffs = vec![m.clone()];
        coeffs.extend(weights_pq(p, q).entries());
        ExcVector { deg: d.clone(), coeffs }
    }

    pub fn self_intersection(&self) -> BigInt {
        intersection(self, self)
    }

    /// `3·deg - Σ coeffs`, which is 1 for exceptional classes.
    pub fn chern(&self) -> BigInt {
        BigInt::from(3) * &self.deg - self.coeffs.iter().sum::<BigInt>()
    }
}

impl fmt::Display for ExcVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "({}; {})", self.deg, parts.join(","))
    }
}

pub fn exc_vector(c: &ClassTuple) -> Result<ExcVector> {
    c.require_geometric()?;
    Ok(ExcVector::from_dmpq(&c.d, &c.m, &c.p, &c.q))
}

/// `d·d' - Σ c_i c'_i`, zero-padding the shorter list.
pub fn intersection(v: &ExcVector, w: &ExcVector) -> BigInt {
    let dot: BigInt = v.coeffs.iter().zip(&w.coeffs).map(|(a, b)| a * b).sum();
    &v.deg * &w.deg - dot
}

/// Outcome of [`cremona_reduce`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CremonaOutcome {
    pub terminal: ExcVector,
    pub steps: u64,
    pub exceptional: bool,
}

/// Standard Cremona reduction on the merged coefficient list.
pub fn cremona_reduce(v: &ExcVector) -> CremonaOutcome {
    let mut deg = v.deg.clone();
    let mut cs = v.coeffs.clone();
    while cs.len() < 3 {
        cs.push(BigInt::zero());
    }
    let mut steps = 0u64;
    loop {
        cs.sort_by(|a, b| b.cmp(a));
        let defect = &deg - &cs[0] - &cs[1] - &cs[2];
        if !defect.is_negative() || !deg.is_positive() {
            break;
        }
        deg += &defect;
        for c in cs.iter_mut().take(3) {
            *c += &defect;
        }
        steps += 1;
    }
    cs.sort_by(|a, b| b.cmp(a));
    let minus_ones = cs.iter().filter(|c| **c == BigInt::from(-1)).count();
    let exceptional = deg.is_zero() && minus_ones == 1 && cs.iter().all(|c| c.is_zero() || *c == BigInt::from(-1));
    CremonaOutcome { terminal: ExcVector { deg, coeffs: cs }, steps, exceptional }
}

/// Necessary condition for perfectness: nonnegative intersection with every
/// known exceptional vector in the pool.
pub fn perfectness_screen(c: &ClassTuple, pool: &[ExcVector]) -> Result<bool> {
    let v = ExcVector::from_dmpq(&c.d, &c.m, &c.p, &c.q);
    Ok(pool.iter().all(|w| !intersection(&v, w).is_negative()))
}

/// `3 + 2√2`, the smallest accumulation point.
pub fn a_min() -> QuadSurd {
    QuadSurd::new(3.into(), 2.into(), 1.into(), 2.into()).expect("constant")
}

fn unit_interval(b: &QuadSurd) -> Result<()> {
    if b.signum() == Ordering::Less || b.cmp_rational(&Rational::one()) != Ordering::Less {
        return Err(Error::OutOfDomain(format!("b must lie in [0,1), got {b}")));
    }
    Ok(())
}

/// `z + 1/z` at the accumulation point: `(3-b)²/(1-b²) - 2`.
pub fn acc_trace(b: &QuadSurd) -> Result<QuadSurd> {
    unit_interval(b)?;
    let three = Rational::from_integer(3.into());
    let num = b.neg().add_q(&three).pow2();
    let den = b.pow2().neg().add_q(&Rational::one());
    Ok(num.div(&den)?.sub_q(&Rational::from_integer(2.into())))
}

/// The accumulation point `acc(b)`, larger root of `z² - cz + 1`.
pub fn acc(b: &Rational) -> Result<QuadSurd> {
    let c = acc_trace(&QuadSurd::from_rational(b))?.to_rational().expect("rational b");
    let root = sqrt_rational(&(&c * &c - Rational::from_integer(4.into())))?;
    Ok(root.add_q(&c).mul_q(&Rational::new(1.into(), 2.into())))
}

/// The branch `ε` of the inverse of `acc`: `b = (3 + ε√(w² - 8w))/(1 + w)`
/// with `w = z + 1/z + 2`.
pub fn acc_inv(z: &Rational, eps: Eps) -> Result<QuadSurd> {
    if *z <= Rational::one() {
        return Err(Error::OutOfDomain(format!("acc_inv needs z > 1, got {z}")));
    }
    let w = z + z.recip() + Rational::from_integer(2.into());
    let disc = &w * &w - Rational::from_integer(8.into()) * &w;
    if disc.is_negative() {
        return Err(Error::OutOfDomain(format!("{z} lies below 3 + 2√2")));
    }
    let root = sqrt_rational(&disc)?.mul_q(&Rational::from_integer(eps.big()));
    Ok(root.add_q(&Rational::from_integer(3.into())).mul_q(&(w + Rational::one()).recip()))
}

/// `V_b(z)² = z/(1 - b²)`.
pub fn volume_sq(b: &QuadSurd, z: &Rational) -> Result<QuadSurd> {
    unit_interval(b)?;
    if *z < Rational::one() {
        return Err(Error::OutOfDomain(format!("volume needs z >= 1, got {z}")));
    }
    let den = b.pow2().neg().add_q(&Rational::one());
    QuadSurd::from_rational(z).div(&den)
}

/// `V_b(z)` for rational `b`.
pub fn volume(b: &Rational, z: &Rational) -> Result<QuadSurd> {
    let v2 = volume_sq(&QuadSurd::from_rational(b), z)?;
    sqrt_rational(&v2.to_rational().expect("rational"))
}

/// Compares a nonnegative value with `V_b(z)` by squaring.
pub fn cmp_with_volume(x: &QuadSurd, b: &QuadSurd, z: &Rational) -> Result<Ordering> {
    let v2 = volume_sq(b, z)?;
    if x.signum() == Ordering::Less {
        return Ok(Ordering::Less);
    }
    Ok(x.pow2().cmp(&v2))
}

fn denominator(d: &BigInt, m: &BigInt, b: &QuadSurd) -> Result<QuadSurd> {
    let den = b.mul_q(&Rational::from_integer(-m)).add_q(&Rational::from_integer(d.clone()));
    if den.signum() != Ordering::Greater {
        return Err(Error::NonpositiveDenominator);
    }
    Ok(den)
}

/// The piecewise obstruction `μ_{E,b}(z)`; the left branch is used at the
/// break point.
pub fn obstruction_mu(c: &ClassTuple, b: &QuadSurd, z: &Rational) -> Result<QuadSurd> {
    let center = c.center().filter(|_| c.q.is_positive()).ok_or_else(|| Error::FormalClass(c.to_string()))?;
    let den = denominator(&c.d, &c.m, b)?;
    let num = if *z <= center {
        Rational::from_integer(c.q.clone()) * z
    } else {
        Rational::from_integer(c.p.clone())
    };
    QuadSurd::from_rational(&num).div(&den)
}

pub fn obstruction_mu_q(c: &ClassTuple, b: &Rational, z: &Rational) -> Result<Rational> {
    Ok(obstruction_mu(c, &QuadSurd::from_rational(b), z)?.to_rational().expect("rational"))
}

/// `(Σ_{i≥1} c_i w_i(z))/(deg - c_0 b)` with `w(z) = W(z)/q_z`.
pub fn exc_obstruction(v: &ExcVector, b: &QuadSurd, z: &Rational) -> Result<QuadSurd> {
    let (m, rest) = v.coeffs.split_first().ok_or_else(|| Error::OutOfDomain("empty vector".into()))?;
    let den = denominator(&v.deg, m, b)?;
    let w: Weight = weights_pq(z.numer(), z.denom());
    let dot: BigInt = rest.iter().zip(w.entries()).map(|(a, b)| a * b).sum();
    QuadSurd::from_rational(&Rational::new(dot, z.denom().clone())).div(&den)
}

/// `(bd - m)² < 1 - b²`.
pub fn obstructive_at_center_dm(d: &BigInt, m: &BigInt, b: &Rational) -> bool {
    let x = b * Rational::from_integer(d.clone()) - Rational::from_integer(m.clone());
    &x * &x < Rational::one() - b * b
}

pub fn obstructive_at_center(c: &ClassTuple, b: &Rational) -> bool {
    obstructive_at_center_dm(&c.d, &c.m, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use proptest::prelude::*;

    fn ct(d: i64, m: i64, p: i64, q: i64, t: i64, e: i64) -> ClassTuple {
        ClassTuple::from_i64(d, m, p, q, t, e).unwrap()
    }

    fn qs(a: i64, b: i64, c: i64, d: i64) -> QuadSurd {
        QuadSurd::new(int(a), int(b), int(c), int(d)).unwrap()
    }

    fn q(r: Rational) -> QuadSurd {
        QuadSurd::from_rational(&r)
    }

    #[test]
    fn from_center_examples() {
        assert_eq!(class_from_center(&int(29), &int(4)).unwrap(), ct(14, 9, 29, 4, 13, 1));
        assert_eq!(class_from_center(&int(6), &int(1)).unwrap(), ct(3, 2, 6, 1, 3, 1));
        assert!(matches!(class_from_center(&int(7), &int(1)), Err(Error::NotQuasiPerfect(_))));
        assert_eq!(class_from_center(&int(8), &int(1)).unwrap(), ClassTuple::b_upper(1));
        assert!(class_from_center(&int(9), &int(1)).unwrap().formal);
        assert!(matches!(class_from_center(&int(15), &int(2)), Err(Error::NotQuasiPerfect(_))));
        assert_eq!(class_from_center(&int(13), &int(2)).unwrap(), ct(5, 0, 13, 2, 5, -1));
    }

    #[test]
    fn named_classes() {
        assert_eq!(ClassTuple::b_upper(0), ct(3, 2, 6, 1, 3, 1));
        assert_eq!(ClassTuple::b_upper(-1), ct(2, 1, 4, 1, 1, 1));
        assert_eq!(ClassTuple::e_one(0), ct(14, 9, 29, 4, 13, 1));
        assert_eq!(ClassTuple::e_one(1), ct(27, 20, 55, 6, 33, 1));
        assert!(!ClassTuple::seed_lower().formal);
        assert!(ClassTuple::seed_upper().formal);
        assert!(ct(0, -1, 1, 0, 3, -1).formal);
        // fake staircase tuple with equal d-m parity but ε side mismatch
        assert!(ClassTuple::from_i64(3, 2, 6, 1, 3, -1).is_err());
    }

    #[test]
    fn text_and_json() {
        let c = ct(14, 9, 29, 4, 13, 1);
        assert_eq!(c.to_string(), "(14,9,29,4,13,+1)");
        assert_eq!("(14,9,29,4,13,+1)".parse::<ClassTuple>().unwrap(), c);
        let j = serde_json::to_value(&c).unwrap();
        assert_eq!(j, serde_json::json!({"d":14,"m":9,"p":29,"q":4,"t":13,"eps":1,"formal":false}));
        assert_eq!(serde_json::from_value::<ClassTuple>(j).unwrap(), c);
    }

    #[test]
    fn exc_vector_examples() {
        let v = exc_vector(&ClassTuple::b_upper(1)).unwrap();
        assert_eq!(v.deg, int(4));
        assert_eq!(v.coeffs, [vec![int(3)], vec![int(1); 8]].concat());
        let v0 = exc_vector(&ClassTuple::b_upper(0)).unwrap();
        assert_eq!(v0.coeffs, [vec![int(2)], vec![int(1); 6]].concat());
        let e = exc_vector(&ClassTuple::e_one(0)).unwrap();
        assert_eq!(e.coeffs, [vec![int(9)], vec![int(4); 7], vec![int(1); 4]].concat());
        assert!(matches!(exc_vector(&ct(0, -1, 1, 0, 3, -1)), Err(Error::FormalClass(_))));
        assert_eq!(e.self_intersection(), int(-1));
        assert_eq!(e.chern(), int(1));
    }

    #[test]
    fn intersection_examples() {
        let fake = ExcVector::from_dmpq(&int(75), &int(55), &int(153), &int(17));
        let b1 = exc_vector(&ClassTuple::b_upper(1)).unwrap();
        assert_eq!(intersection(&fake, &b1), int(-1));
        let b0 = exc_vector(&ClassTuple::b_upper(0)).unwrap();
        let e = exc_vector(&ClassTuple::e_one(0)).unwrap();
        assert_eq!(intersection(&b0, &e), int(0));
        let e2 = exc_vector(&ct(38, 24, 79, 11, 34, 1)).unwrap();
        assert_eq!(intersection(&b1, &e2), int(1));
    }

    #[test]
    fn cremona_examples() {
        let seed = ExcVector::new(int(1), vec![int(0), int(1), int(1)]);
        let out = cremona_reduce(&seed);
        assert!(out.exceptional);
        assert_eq!(out.terminal, ExcVector::new(int(0), vec![int(0), int(0), int(-1)]));
        let b0 = cremona_reduce(&exc_vector(&ClassTuple::b_upper(0)).unwrap());
        assert!(b0.exceptional);
        assert_eq!(b0.steps, 3);
        let fake = ExcVector::from_dmpq(&int(9), &int(5), &int(19), &int(3));
        assert_eq!(fake.coeffs, [vec![int(5)], vec![int(3); 6], vec![int(1); 3]].concat());
        assert!(!cremona_reduce(&fake).exceptional);
        let fake2 = ExcVector::from_dmpq(&int(75), &int(55), &int(153), &int(17));
        assert!(!cremona_reduce(&fake2).exceptional);
    }

    #[test]
    fn screen_examples() {
        let pool: Vec<ExcVector> = [ClassTuple::b_upper(0), ClassTuple::b_upper(1), ClassTuple::e_one(0)]
            .iter()
            .map(|c| exc_vector(c).unwrap())
            .collect();
        assert!(perfectness_screen(&ct(38, 24, 79, 11, 34, 1), &pool).unwrap());
        let fake = ct(75, 55, 153, 17, 90, 1);
        assert!(!perfectness_screen(&fake, &pool[1..2]).unwrap());
        assert!(perfectness_screen(&fake, &[]).unwrap());
    }

    #[test]
    fn acc_examples() {
        assert_eq!(acc(&rat(1, 3)).unwrap(), qs(3, 2, 1, 2));
        assert_eq!(acc(&rat(0, 1)).unwrap(), qs(7, 3, 2, 5));
        assert_eq!(acc(&rat(1, 5)).unwrap(), q(rat(6, 1)));
        assert_eq!(acc(&rat(5, 11)).unwrap(), q(rat(6, 1)));
        assert!(matches!(acc(&rat(1, 1)), Err(Error::OutOfDomain(_))));
        assert!(matches!(acc(&rat(-1, 2)), Err(Error::OutOfDomain(_))));
    }

    #[test]
    fn acc_inv_examples() {
        assert_eq!(acc_inv(&rat(6, 1), Eps::Plus).unwrap(), q(rat(5, 11)));
        assert_eq!(acc_inv(&rat(6, 1), Eps::Minus).unwrap(), q(rat(1, 5)));
        assert_eq!(acc_inv(&rat(7, 1), Eps::Plus).unwrap(), qs(21, 16, 71, 2));
        assert_eq!(acc_inv(&rat(13, 2), Eps::Plus).unwrap(), qs(78, 15, 251, 17));
        assert!(matches!(acc_inv(&rat(5, 1), Eps::Plus), Err(Error::OutOfDomain(_))));
    }

    #[test]
    fn volume_examples() {
        assert_eq!(volume(&rat(1, 5), &rat(6, 1)).unwrap(), q(rat(5, 2)));
        assert_eq!(volume(&rat(0, 1), &rat(1, 1)).unwrap(), q(rat(1, 1)));
        // V_{1/3}(3+2√2)² = (3+2√2)·9/8, checked on the squared form
        let z = qs(3, 2, 1, 2);
        let v2 = z.mul_q(&rat(1, 1)).div(&q(rat(8, 9))).unwrap();
        assert_eq!(v2, z.mul_q(&rat(9, 8)));
        assert_eq!(volume_sq(&q(rat(1, 3)), &rat(6, 1)).unwrap(), q(rat(27, 4)));
    }

    #[test]
    fn obstruction_examples() {
        let third = ct(2, 0, 5, 1, 2, -1);
        assert_eq!(obstruction_mu_q(&third, &rat(1, 5), &rat(6, 1)).unwrap(), rat(5, 2));
        assert_eq!(obstruction_mu_q(&ClassTuple::b_upper(0), &rat(2, 3), &rat(6, 1)).unwrap(), rat(18, 5));
        assert_eq!(obstruction_mu_q(&ClassTuple::e_one(0), &rat(9, 14), &rat(7, 1)).unwrap(), rat(392, 115));
        assert_eq!(
            obstruction_mu_q(&ClassTuple::b_upper(0), &rat(3, 2), &rat(6, 1)),
            Err(Error::NonpositiveDenominator)
        );
        // the vector form agrees with the piecewise form at both sides of the center
        let e = ClassTuple::e_one(0);
        let v = exc_vector(&e).unwrap();
        let b = q(rat(1, 2));
        for z in [rat(29, 4), rat(6, 1), rat(8, 1)] {
            let lhs = exc_obstruction(&v, &b, &z).unwrap();
            let rhs = obstruction_mu(&e, &b, &z).unwrap();
            assert!(lhs <= rhs);
        }
        assert_eq!(exc_obstruction(&v, &b, &rat(29, 4)).unwrap(), obstruction_mu(&e, &b, &rat(29, 4)).unwrap());
    }

    #[test]
    fn obstructive_examples() {
        assert!(obstructive_at_center(&ClassTuple::b_upper(0), &rat(5, 11)));
        for k in 1..=10 {
            assert!(!obstructive_at_center_dm(&int(11 * k - 2), &int(5 * k), &rat(5, 11)));
        }
        let e = ClassTuple::e_one(3);
        assert!(obstructive_at_center(&e, &e.ratio().unwrap()));
    }

    /// Brute-force search for quasi-perfect centers.
    fn centers(limit: i64) -> Vec<ClassTuple> {
        let mut out = Vec::new();
        for qq in 1..limit {
            for pp in (qq + 1)..(8 * qq + 2) {
                if let Ok(c) = class_from_center(&int(pp), &int(qq)) {
                    out.push(c);
                }
            }
        }
        out
    }

    #[test]
    fn self_intersection_of_found_classes() {
        let found = centers(40);
        assert!(found.len() > 20);
        for c in found.iter().filter(|c| !c.formal) {
            let v = exc_vector(c).unwrap();
            assert_eq!(v.self_intersection(), int(-1), "{c}");
            assert_eq!(v.chern(), int(1), "{c}");
        }
    }

    #[test]
    fn obstruction_beats_volume_at_center() {
        for c in centers(40).iter().filter(|c| !c.formal) {
            let z = c.center().unwrap();
            if q(z.clone()) <= a_min() {
                continue;
            }
            let b = q(c.ratio().unwrap());
            let mu = obstruction_mu(c, &b, &z).unwrap();
            assert_eq!(cmp_with_volume(&mu, &b, &z).unwrap(), Ordering::Greater, "{c}");
        }
    }

    proptest! {
        #[test]
        fn acc_round_trip(num in 6i64..5000, den in 1i64..=50) {
            let z = rat(num, den);
            prop_assume!(z <= rat(100, 1) && q(z.clone()) > a_min());
            let up = acc_inv(&z, Eps::Plus).unwrap();
            let down = acc_inv(&z, Eps::Minus).unwrap();
            prop_assert!(up != down);
            prop_assert!(up > down);
            for b in [up, down] {
                if b.signum() == Ordering::Less {
                    continue;
                }
                // z + 1/z equals the trace of acc(b), and z > 1 is the larger root
                let tr = acc_trace(&b).unwrap();
                prop_assert_eq!(tr, q(&z + z.recip()));
                if let Some(br) = b.to_rational() {
                    prop_assert_eq!(acc(&br).unwrap(), q(z.clone()));
                }
            }
        }

        #[test]
        fn cremona_decreases_degree(d in 1i64..40, cs in prop::collection::vec(-3i64..20, 3..9)) {
            let v = ExcVector::new(int(d), cs.into_iter().map(int).collect());
            let out = cremona_reduce(&v);
            prop_assert!(BigInt::from(out.steps) <= int(d) + 1);
            prop_assert!(out.terminal.deg <= int(d));
            prop_assert_eq!(out.terminal.self_intersection(), v.self_intersection());
            prop_assert_eq!(out.terminal.chern(), v.chern());
        }
    }
}
