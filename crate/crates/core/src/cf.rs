//! Continued fractions and weight expansions.
//!
//! Conventions: a finite continued fraction `[s_0; s_1, …, s_n]` has
//! `s_0 ≥ 1` and, unless it has a single term, last entry at least 2 (a
//! trailing 1 is folded into its predecessor). The weight expansion of `p/q`
//! is `W(p/q) = (q_0^{×s_0}, …, q_n^{×s_n})` with `q_0 = q`,
//! `q_{k+1} = q_{k-1} - s_k q_k`; it satisfies `Σ w = p + q - 1` and
//! `Σ w² = pq`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{QuadSurd, Rational};

/// A finite continued fraction in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CFrac {
    terms: Vec<BigInt>,
}

impl CFrac {
    /// Validates the terms and folds a trailing 1.
    pub fn new(mut terms: Vec<BigInt>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::OutOfDomain("empty continued fraction".into()));
        }
        if terms.iter().any(|s| !s.is_positive()) {
            return Err(Error::OutOfDomain("continued fraction terms must be positive".into()));
        }
        if terms.len() > 1 && terms.last().is_some_and(One::is_one) {
            terms.pop();
            *terms.last_mut().expect("nonempty") += 1;
        }
        Ok(CFrac { terms })
    }

    pub fn terms(&self) -> &[BigInt] {
        &self.terms
    }

    /// `ℓ_CF`, the number of terms.
    pub fn len_cf(&self) -> usize {
        self.terms.len()
    }

    /// `ℓ_wt`, the sum of the terms.
    pub fn len_wt(&self) -> BigInt {
        self.terms.iter().sum()
    }

    pub fn value(&self) -> Rational {
        let mut it = self.terms.iter().rev();
        let mut v = Rational::from_integer(it.next().expect("nonempty").clone());
        for s in it {
            v = Rational::from_integer(s.clone()) + v.recip();
        }
        v
    }
}

/// Continued fraction of a rational `z > 1`.
pub fn cf_of_rational(z: &Rational) -> Result<CFrac> {
    if *z <= Rational::one() {
        return Err(Error::OutOfDomain(format!("continued fractions need z > 1, got {z}")));
    }
    let (mut a, mut b) = (z.numer().clone(), z.denom().clone());
    let mut terms = Vec::new();
    while !b.is_zero() {
        let (s, r) = a.div_rem(&b);
        terms.push(s);
        a = b;
        b = r;
    }
    CFrac::new(terms)
}

pub fn rational_of_cf(cf: &CFrac) -> Rational {
    cf.value()
}

/// Orders two continued fractions by the alternating-place rule: at the first
/// differing place a larger term gives a larger value at even places and a
/// smaller value at odd places; an exhausted expansion counts as `∞` there.
pub fn cf_cmp(x: &CFrac, y: &CFrac) -> Ordering {
    let n = x.terms.len().max(y.terms.len());
    for i in 0..n {
        let ord = match (x.terms.get(i), y.terms.get(i)) {
            (Some(a), Some(b)) => a.cmp(b),
            (None, Some(_)) => Ordering::Greater,
            (Some(_), None) => Ordering::Less,
            (None, None) => Ordering::Equal,
        };
        if ord != Ordering::Equal {
            return if i % 2 == 0 { ord } else { ord.reverse() };
        }
    }
    Ordering::Equal
}

impl fmt::Display for CFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}", self.terms[0])?;
        for (i, s) in self.terms[1..].iter().enumerate() {
            write!(f, "{}{s}", if i == 0 { ';' } else { ',' })?;
        }
        write!(f, "]")
    }
}

fn parse_terms(s: &str) -> Result<Vec<BigInt>> {
    s.split([';', ','])
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| BigInt::from_str(t).map_err(|_| Error::Parse(format!("bad term {t:?}"))))
        .collect()
}

fn strip_brackets(s: &str) -> Result<&str> {
    s.trim()
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("expected [..], got {s:?}")))
}

impl FromStr for CFrac {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CFrac::new(parse_terms(strip_brackets(s)?)?)
    }
}

/// An eventually periodic continued fraction `[pre; {period}^∞]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PeriodicCFrac {
    pub preperiod: Vec<BigInt>,
    pub period: Vec<BigInt>,
}

type Mat = [[BigInt; 2]; 2];

fn cf_matrix(terms: &[BigInt]) -> Mat {
    let mut m: Mat = [[BigInt::one(), BigInt::zero()], [BigInt::zero(), BigInt::one()]];
    for s in terms {
        // m · [[s,1],[1,0]]
        let n00 = &m[0][0] * s + &m[0][1];
        let n10 = &m[1][0] * s + &m[1][1];
        m = [[n00, m[0][0].clone()], [n10, m[1][0].clone()]];
    }
    m
}

impl PeriodicCFrac {
    pub fn new(preperiod: Vec<BigInt>, period: Vec<BigInt>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::OutOfDomain("empty period".into()));
        }
        if preperiod.iter().chain(&period).any(|s| !s.is_positive()) {
            return Err(Error::OutOfDomain("continued fraction terms must be positive".into()));
        }
        Ok(PeriodicCFrac { preperiod, period })
    }

    pub fn from_i64(pre: &[i64], period: &[i64]) -> Result<Self> {
        Self::new(pre.iter().map(|&x| BigInt::from(x)).collect(), period.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// Exact value: the periodic tail `y` solves `y = (Ay + B)/(Cy + D)`,
    /// then the preperiod acts as a Möbius map.
    pub fn value(&self) -> QuadSurd {
        let [[a, b], [c, d]] = cf_matrix(&self.period);
        // c y² + (d - a) y - b = 0, positive root
        let lin = &a - &d;
        let disc = &lin * &lin + BigInt::from(4) * &c * &b;
        let y = QuadSurd::new(lin, BigInt::one(), BigInt::from(2) * &c, disc).expect("c > 0");
        if self.preperiod.is_empty() {
            return y;
        }
        let [[pa, pb], [pc, pd]] = cf_matrix(&self.preperiod);
        let num = y.mul_q(&Rational::from_integer(pa)).add_q(&Rational::from_integer(pb));
        let den = y.mul_q(&Rational::from_integer(pc)).add_q(&Rational::from_integer(pd));
        num.div(&den).expect("same field, positive denominator")
    }
}

pub fn periodic_cf_value(pcf: &PeriodicCFrac) -> QuadSurd {
    pcf.value()
}

fn join(v: &[BigInt]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for PeriodicCFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let per = format!("{{{}}}~", join(&self.period));
        match self.preperiod.split_first() {
            None => write!(f, "[{per}]"),
            Some((s0, [])) => write!(f, "[{s0};{per}]"),
            Some((s0, rest)) => write!(f, "[{s0};{},{per}]", join(rest)),
        }
    }
}

impl FromStr for PeriodicCFrac {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = strip_brackets(s)?;
        let open = inner.find('{').ok_or_else(|| Error::Parse(format!("missing period in {s:?}")))?;
        let close = inner
            .rfind("}~")
            .filter(|&c| c > open && inner[c + 2..].trim().is_empty())
            .ok_or_else(|| Error::Parse(format!("period must end with }}~ in {s:?}")))?;
        let pre = parse_terms(&inner[..open])?;
        let per = parse_terms(&inner[open + 1..close])?;
        PeriodicCFrac::new(pre, per)
    }
}

/// A weight expansion stored as blocks `(value, multiplicity)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Weight {
    blocks: Vec<(BigInt, BigInt)>,
}

impl Weight {
    pub fn from_blocks(blocks: Vec<(BigInt, BigInt)>) -> Self {
        Weight { blocks: blocks.into_iter().filter(|(_, k)| k.is_positive()).collect() }
    }

    pub fn blocks(&self) -> &[(BigInt, BigInt)] {
        &self.blocks
    }

    /// All entries, expanded.
    pub fn entries(&self) -> Vec<BigInt> {
        let mut out = Vec::new();
        for (w, k) in &self.blocks {
            let k = k.to_usize().expect("multiplicity fits in memory");
            out.extend(std::iter::repeat_n(w.clone(), k));
        }
        out
    }

    /// `ℓ_CF`: number of blocks.
    pub fn len_cf(&self) -> usize {
        self.blocks.len()
    }

    /// `ℓ_wt`: number of entries.
    pub fn len_wt(&self) -> BigInt {
        self.blocks.iter().map(|(_, k)| k).sum()
    }

    pub fn sum(&self) -> BigInt {
        self.blocks.iter().map(|(w, k)| w * k).sum()
    }

    pub fn sum_sq(&self) -> BigInt {
        self.blocks.iter().map(|(w, k)| w * w * k).sum()
    }

    /// `Σ w_i w'_i` with the shorter vector zero-padded.
    pub fn dot(&self, other: &Weight) -> BigInt {
        let mut total = BigInt::zero();
        let (mut i, mut j) = (0, 0);
        let mut left_i = self.blocks.first().map(|b| b.1.clone()).unwrap_or_default();
        let mut left_j = other.blocks.first().map(|b| b.1.clone()).unwrap_or_default();
        while i < self.blocks.len() && j < other.blocks.len() {
            let take = left_i.clone().min(left_j.clone());
            total += &self.blocks[i].0 * &other.blocks[j].0 * &take;
            left_i -= &take;
            left_j -= &take;
            if left_i.is_zero() {
                i += 1;
                if let Some(b) = self.blocks.get(i) {
                    left_i = b.1.clone();
                }
            }
            if left_j.is_zero() {
                j += 1;
                if let Some(b) = other.blocks.get(j) {
                    left_j = b.1.clone();
                }
            }
        }
        total
    }
}

/// Weight expansion by the Euclidean algorithm on `(p, q)`; works for
/// unreduced pairs too (e.g. `(153, 17)` gives `17^{×9}`).
pub fn weights_pq(p: &BigInt, q: &BigInt) -> Weight {
    let (mut a, mut b) = (p.clone(), q.clone());
    let mut blocks = Vec::new();
    while b.is_positive() {
        let (s, r) = a.div_rem(&b);
        blocks.push((b.clone(), s));
        a = b;
        b = r;
    }
    Weight::from_blocks(blocks)
}

/// `W(z)` for a rational `z > 1`.
pub fn weights(z: &Rational) -> Result<Weight> {
    if *z <= Rational::one() {
        return Err(Error::OutOfDomain(format!("weights need z > 1, got {z}")));
    }
    Ok(weights_pq(z.numer(), z.denom()))
}

/// `W(z)·W(z')`.
pub fn weight_dot(z: &Rational, z2: &Rational) -> Result<BigInt> {
    Ok(weights(z)?.dot(&weights(z2)?))
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|(w, k)| if k.is_one() { w.to_string() } else { format!("{w}^{k}") })
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("expected (..), got {s:?}")))?;
        let num = |t: &str| BigInt::from_str(t.trim()).map_err(|_| Error::Parse(format!("bad weight {t:?}")));
        let mut blocks: Vec<(BigInt, BigInt)> = Vec::new();
        for part in inner.split([',', ';']).filter(|t| !t.trim().is_empty()) {
            let (w, k) = match part.split_once('^') {
                Some((w, k)) => (num(w)?, num(k)?),
                None => (num(part)?, BigInt::one()),
            };
            match blocks.last_mut() {
                Some(last) if last.0 == w => last.1 += k,
                _ => blocks.push((w, k)),
            }
        }
        Ok(Weight::from_blocks(blocks))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use proptest::prelude::*;

    fn cf(s: &str) -> CFrac {
        s.parse().unwrap()
    }

    /// Convergent recurrence h_k = s_k h_{k-1} + h_{k-2}, independent of
    /// the backwards fold used by `value`.
    fn convergent(terms: &[i64]) -> Rational {
        let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
        let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
        for &s in terms {
            let h2 = BigInt::from(s) * &h1 + &h0;
            let k2 = BigInt::from(s) * &k1 + &k0;
            (h0, h1, k0, k1) = (h1, h2, k1, k2);
        }
        Rational::new(h1, k1)
    }

    #[test]
    fn cf_examples() {
        assert_eq!(cf_of_rational(&rat(29, 4)).unwrap().to_string(), "[7;4]");
        assert_eq!(cf_of_rational(&rat(5, 3)).unwrap().to_string(), "[1;1,2]");
        assert_eq!(cf_of_rational(&rat(6, 1)).unwrap().to_string(), "[6]");
        assert!(matches!(cf_of_rational(&rat(1, 1)), Err(Error::OutOfDomain(_))));
        assert_eq!(cf("[7;3,6]").value(), convergent(&[7, 3, 6]));
        assert_eq!(cf("[7;3,6]").value(), rat(139, 19));
        assert_eq!(cf("[7;4]").value(), rat(29, 4));
        assert_eq!(cf("[6]").value(), rat(6, 1));
        assert_eq!(cf("[7;5,1]").to_string(), "[7;6]");
    }

    #[test]
    fn cf_order_examples() {
        assert_eq!(cf_cmp(&cf("[1;4]"), &cf("[1;4,2]")), Ordering::Greater);
        assert_eq!(cf_cmp(&cf("[1;4,2]"), &cf("[1;5]")), Ordering::Greater);
        assert_eq!(cf_cmp(&cf("[7;4]"), &cf("[7;3,6]")), Ordering::Less);
        assert_eq!(cf_cmp(&cf("[7;4]"), &cf("[7;4]")), Ordering::Equal);
    }

    #[test]
    fn weight_examples() {
        let w = weights(&rat(29, 4)).unwrap();
        assert_eq!(w.to_string(), "(4^7,1^4)");
        assert_eq!((w.len_cf(), w.len_wt()), (2, int(11)));
        assert_eq!(weights(&rat(5, 3)).unwrap().entries(), vec![int(3), int(2), int(1), int(1)]);
        let w = weights(&rat(79, 11)).unwrap();
        assert_eq!(w.to_string(), "(11^7,2^5,1^2)");
        assert_eq!((w.sum(), w.sum_sq()), (int(89), int(869)));
        assert_eq!(weights_pq(&int(153), &int(17)).to_string(), "(17^9)");
        assert_eq!("(3,2,1,1)".parse::<Weight>().unwrap(), weights(&rat(5, 3)).unwrap());
        assert_eq!("(4^7,1^4)".parse::<Weight>().unwrap(), weights(&rat(29, 4)).unwrap());
    }

    #[test]
    fn weight_dot_examples() {
        assert_eq!(weight_dot(&rat(6, 1), &rat(29, 4)).unwrap(), int(24));
        assert_eq!(weight_dot(&rat(2, 1), &rat(2, 1)).unwrap(), int(2));
        assert_eq!(weight_dot(&rat(7, 1), &rat(29, 4)).unwrap(), int(28));
    }

    #[test]
    fn periodic_examples() {
        let y: PeriodicCFrac = "[{5,1}~]".parse().unwrap();
        let v = y.value();
        assert_eq!(v, QuadSurd::new(int(5), int(3), int(2), int(5)).unwrap());
        // y² - 5y - 5 = 0
        assert!(v.pow2().sub(&v.mul_q(&rat(5, 1))).unwrap().sub_q(&rat(5, 1)).is_zero());
        let z: PeriodicCFrac = "[7;{5,1}~]".parse().unwrap();
        assert_eq!(z.value(), QuadSurd::new(int(65), int(3), int(10), int(5)).unwrap());
        let u = PeriodicCFrac::from_i64(&[], &[7, 3]).unwrap();
        assert_eq!(u.value(), QuadSurd::new(int(21), int(5), int(6), int(21)).unwrap());
        assert_eq!(z.to_string(), "[7;{5,1}~]");
        assert_eq!(u.to_string(), "[{7,3}~]");
        let long = PeriodicCFrac::from_i64(&[7, 5], &[1, 3, 5, 1, 7, 5]).unwrap();
        assert_eq!(long.to_string().parse::<PeriodicCFrac>().unwrap(), long);
    }

    proptest! {
        #[test]
        fn round_trip(p in 2i64..10_000, q in 1i64..10_000) {
            prop_assume!(p > q);
            let z = rat(p, q);
            let c = cf_of_rational(&z).unwrap();
            prop_assert_eq!(c.value(), z.clone());
            let last = c.terms().last().unwrap();
            prop_assert!(c.len_cf() == 1 || *last >= int(2));
            prop_assert_eq!(c.to_string().parse::<CFrac>().unwrap(), c);
        }

        #[test]
        fn weight_identities(p in 2i64..5000, q in 1i64..5000) {
            prop_assume!(p > q);
            let z = rat(p, q);
            let w = weights(&z).unwrap();
            let (p, q) = (z.numer().clone(), z.denom().clone());
            prop_assert_eq!(w.sum(), &p + &q - 1);
            prop_assert_eq!(w.sum_sq(), &p * &q);
            prop_assert_eq!(w.entries()[0].clone(), q);
            prop_assert!(w.entries().last().unwrap().is_one());
            let c = cf_of_rational(&z).unwrap();
            prop_assert_eq!(w.len_cf(), c.len_cf());
            prop_assert_eq!(w.len_wt(), c.len_wt());
        }

        #[test]
        fn weight_dot_lower_bound(p in 2i64..400, q in 1i64..400, p2 in 2i64..400, q2 in 1i64..400) {
            prop_assume!(p > q && p2 > q2);
            let (z, z2) = (rat(p, q), rat(p2, q2));
            let dot = weight_dot(&z, &z2).unwrap();
            let naive: BigInt = weights(&z).unwrap().entries().iter()
                .zip(weights(&z2).unwrap().entries().iter()).map(|(a, b)| a * b).sum();
            prop_assert_eq!(&dot, &naive);
            let a = z.numer() * z2.denom();
            let b = z2.numer() * z.denom();
            prop_assert!(dot >= a.min(b));
        }

        #[test]
        fn cf_cmp_matches_values(p in 2i64..3000, q in 1i64..3000, p2 in 2i64..3000, q2 in 1i64..3000) {
            prop_assume!(p > q && p2 > q2);
            let (z, z2) = (rat(p, q), rat(p2, q2));
            let (c, c2) = (cf_of_rational(&z).unwrap(), cf_of_rational(&z2).unwrap());
            prop_assert_eq!(cf_cmp(&c, &c2), z.cmp(&z2));
        }

        #[test]
        fn periodic_satisfies_quadratic(pre in prop::collection::vec(1i64..9, 0..3), per in prop::collection::vec(1i64..9, 1..4)) {
            let pcf = PeriodicCFrac::from_i64(&pre, &per).unwrap();
            let v = pcf.value();
            // Peel off the preperiod, then the tail must be a fixed point of the period map.
            let mut y = v.clone();
            for s in &pre {
                y = y.sub_q(&rat(*s, 1)).recip().unwrap();
            }
            let mut tail = y.clone();
            for s in &per {
                tail = tail.sub_q(&rat(*s, 1)).recip().unwrap();
            }
            prop_assert_eq!(tail, y.clone());
            prop_assert!(y.cmp_rational(&rat(1, 1)) == Ordering::Greater);
            // truncations bracket the value
            let mut terms: Vec<i64> = pre.clone();
            while terms.len() < 40 { terms.extend(&per); }
            let a = convergent(&terms);
            terms.extend(&per);
            let b = convergent(&terms);
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            let eps = Rational::new(BigInt::one(), BigInt::from(1_000_000));
            prop_assert!(v.cmp_rational(&(lo - &eps)) == Ordering::Greater);
            prop_assert!(v.cmp_rational(&(hi + &eps)) == Ordering::Less);
        }
    }
}
