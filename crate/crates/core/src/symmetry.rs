//! The shift `S` and reflection `R` acting on centers, classes and triples.
//!
//! On `(p, q)` they act by `S(p, q) = (6p - q, p)` and
//! `R(p, q) = (6p - 35q, p - 6q)`, i.e. `S(z) = (6z - 1)/z` and
//! `R(z) = (6z - 35)/(z - 6)`. Both fix `t` and flip `ε`; `(d, m)` are
//! recomputed from `(p, q, t, ε)`. A word `S^i R^δ` applies `R` first.
//!
//! The module also carries the Pell-type sequence `y_{i+1} = 6y_i - y_{i-1}`
//! with its ratios, the special rational `b`, the third strand of classes
//! with `t = 2`, and the identity that rules out ascending staircases there.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::classes::{ClassTuple, Eps};
use crate::error::{Error, Result};
use crate::exact::{serde_rational, QuadSurd, Rational};
use crate::family::Triple;

/// The word `S^i R^δ`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymWord {
    pub i: u32,
    pub delta: bool,
}

impl SymWord {
    pub const ID: SymWord = SymWord { i: 0, delta: false };

    pub fn new(i: u32, delta: bool) -> Self {
        SymWord { i, delta }
    }

    pub fn is_identity(&self) -> bool {
        self.i == 0 && !self.delta
    }

    /// Number of generators, i.e. how often `ε` flips.
    pub fn length(&self) -> u32 {
        self.i + u32::from(self.delta)
    }
}

impl fmt::Display for SymWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("id");
        }
        match self.i {
            0 => {}
            1 => f.write_str("S")?,
            i => write!(f, "S^{i}")?,
        }
        if self.delta {
            f.write_str("R")?;
        }
        Ok(())
    }
}

impl FromStr for SymWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "id" || s == "1" {
            return Ok(SymWord::ID);
        }
        let bad = || Error::Parse(format!("symmetry word must look like S^iR^d, got {s:?}"));
        let (spart, rpart) = match s.find('R') {
            Some(k) => (&s[..k], &s[k..]),
            None => (s, ""),
        };
        let delta = match rpart {
            "" | "R^0" => false,
            "R" | "R^1" => true,
            _ => return Err(bad()),
        };
        let i = match spart {
            "" => 0,
            "S" => 1,
            x => x.strip_prefix("S^").and_then(|e| e.parse().ok()).ok_or_else(bad)?,
        };
        Ok(SymWord { i, delta })
    }
}

fn shift(c: &ClassTuple) -> Result<ClassTuple> {
    let p = BigInt::from(6) * &c.p - &c.q;
    ClassTuple::from_pqt(p, c.p.clone(), c.t.clone(), c.eps.flip())
}

fn reflect(c: &ClassTuple, allow_formal: bool) -> Result<ClassTuple> {
    let six = BigInt::from(6);
    let at_six = c.p == six && c.q.is_one();
    if !c.formal && !(c.p > &six * &c.q || (at_six && allow_formal)) {
        return Err(Error::OutOfDomain(format!("R is undefined or orientation-breaking at center {}/{}", c.p, c.q)));
    }
    let p = &six * &c.p - BigInt::from(35) * &c.q;
    let q = &c.p - &six * &c.q;
    ClassTuple::from_pqt(p, q, c.t.clone(), c.eps.flip())
}

/// Applies `S^i R^δ`; `R` at the center 6 yields the formal `(0,-1,1,0,3,-1)`.
pub fn apply_sym(w: SymWord, c: &ClassTuple) -> Result<ClassTuple> {
    apply_sym_with(w, c, true)
}

/// As [`apply_sym`], but `R` at the center 6 is an error.
pub fn apply_sym_strict(w: SymWord, c: &ClassTuple) -> Result<ClassTuple> {
    apply_sym_with(w, c, false)
}

fn apply_sym_with(w: SymWord, c: &ClassTuple, allow_formal: bool) -> Result<ClassTuple> {
    let mut out = if w.delta { reflect(c, allow_formal)? } else { c.clone() };
    for _ in 0..w.i {
        out = shift(&out)?;
    }
    Ok(out)
}

/// Image of a triple; `R` reverses the order of the entries.
pub fn apply_sym_triple(w: SymWord, t: &Triple) -> Result<Triple> {
    let l = apply_sym(w, &t.left)?;
    let m = apply_sym(w, &t.mid)?;
    let r = apply_sym(w, &t.right)?;
    if w.delta {
        Triple::new(r, m, l)
    } else {
        Triple::new(l, m, r)
    }
}

/// The Möbius action on a point `z`.
pub fn sym_map(w: SymWord, z: &QuadSurd) -> Result<QuadSurd> {
    let six = Rational::from_integer(6.into());
    let mut z = z.clone();
    if w.delta {
        let num = z.mul_q(&six).sub_q(&Rational::from_integer(35.into()));
        z = num.div(&z.sub_q(&six))?;
    }
    for _ in 0..w.i {
        z = z.mul_q(&six).sub_q(&Rational::one()).div(&z)?;
    }
    Ok(z)
}

/// `y_i`, `v_i = y_i/y_{i-1}` and `w_i = (y_{i+1}+y_i)/(y_i+y_{i-1})`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SequenceValues {
    pub i: u64,
    #[serde(with = "crate::exact::serde_bigint")]
    pub y: BigInt,
    #[serde(serialize_with = "opt_rational")]
    pub v: Option<Rational>,
    #[serde(serialize_with = "opt_rational")]
    pub w: Option<Rational>,
}

fn opt_rational<S: serde::Serializer>(r: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => serde_rational::serialize(r, s),
        None => s.serialize_str("inf"),
    }
}

/// `y_0, …, y_n` with `y_0 = 0`, `y_1 = 1`.
pub fn y_values(n: usize) -> Vec<BigInt> {
    let mut ys = vec![BigInt::zero(), BigInt::one()];
    while ys.len() <= n {
        let k = ys.len();
        let next = BigInt::from(6) * &ys[k - 1] - &ys[k - 2];
        ys.push(next);
    }
    ys.truncate(n + 1);
    ys
}

pub fn sequences(i: u64) -> SequenceValues {
    let ys = y_values(i as usize + 1);
    let i_ = i as usize;
    let v = (i >= 2).then(|| Rational::new(ys[i_].clone(), ys[i_ - 1].clone()));
    let w = (i >= 1).then(|| Rational::new(&ys[i_ + 1] + &ys[i_], &ys[i_] + &ys[i_ - 1]));
    SequenceValues { i, y: ys[i_].clone(), v, w }
}

/// `b = (y_{i+1} + y_i + 3ε)/(3y_{i+1} + 3y_i + ε)`, with `acc(b) = v_{i+1}`.
pub fn special_b(eps: Eps, i: u64) -> Result<Rational> {
    if i == 0 {
        return Err(Error::OutOfDomain("special b needs i >= 1".into()));
    }
    if eps != Eps::parity(i) {
        return Err(Error::ParityMismatch);
    }
    let ys = y_values(i as usize + 1);
    let s = &ys[i as usize + 1] + &ys[i as usize];
    let e = eps.big();
    Ok(Rational::new(&s + BigInt::from(3) * &e, BigInt::from(3) * &s + e))
}

/// The `t = 2` class with center `g_i/g_{i-1}`, `g_i = y_{i+1} - y_i`.
pub fn third_strand(i: u64) -> Result<ClassTuple> {
    if i == 0 {
        return Err(Error::OutOfDomain("third strand starts at i = 1".into()));
    }
    let ys = y_values(i as usize + 1);
    let g = |k: usize| &ys[k + 1] - &ys[k];
    let i = i as usize;
    ClassTuple::from_pqt(g(i), g(i - 1), BigInt::from(2), Eps::parity(i as u64))
}

/// The `z` at which the flat branch `p/(d - mb)` meets `(1+z)/(3-b)`.
pub fn z_crossing(c: &ClassTuple, b: &Rational) -> Result<Rational> {
    let d = Rational::from_integer(c.d.clone());
    let m = Rational::from_integer(c.m.clone());
    let p = Rational::from_integer(c.p.clone());
    let den = &d - &m * b;
    if den.is_zero() {
        return Err(Error::DegenerateDenominator);
    }
    let three = Rational::from_integer(3.into());
    Ok(((&three * &p - &d) - b * (&p - &m)) / den)
}

/// Coefficients `[c0, c1, c2]` of both sides of the no-ascent identity and
/// their difference.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NoascReport {
    pub i: u64,
    pub class: ClassTuple,
    #[serde(serialize_with = "rational_triple")]
    pub lhs: [Rational; 3],
    #[serde(serialize_with = "rational_triple")]
    pub rhs: [Rational; 3],
    #[serde(serialize_with = "rational_triple")]
    pub residual: [Rational; 3],
    pub holds: bool,
}

fn rational_triple<S: serde::Serializer>(r: &[Rational; 3], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(3))?;
    for x in r {
        seq.serialize_element(&x.to_string())?;
    }
    seq.end()
}

/// Checks, coefficientwise in `b`, that
/// `(d - mb)(3g - d - b(g - m)) - g²(1 - b²) = (1/16)((3Y + ε)b - (Y + 3ε))²`
/// for the `i`-th third-strand class, with `g = y_{i+1} - y_i` and
/// `Y = y_{i+1} + y_i`.
pub fn noasc_identity(i: u64) -> Result<NoascReport> {
    let class = third_strand(i)?;
    let ys = y_values(i as usize + 1);
    let r = |x: &BigInt| Rational::from_integer(x.clone());
    let (yi1, yi) = (&ys[i as usize + 1], &ys[i as usize]);
    let g = r(&(yi1 - yi));
    let big_y = r(&(yi1 + yi));
    let (d, m) = (r(&class.d), r(&class.m));
    let e = r(&class.eps.big());
    let three = Rational::from_integer(3.into());
    let a = &three * &g - &d;
    let bb = &g - &m;
    let lhs = [&d * &a - &g * &g, -(&d * &bb + &m * &a), &m * &bb + &g * &g];
    let alpha = &three * &big_y + &e;
    let beta = &big_y + &three * &e;
    let c = Rational::new(1.into(), 16.into());
    let rhs = [&c * &beta * &beta, -(&c * Rational::from_integer(2.into()) * &alpha * &beta), &c * &alpha * &alpha];
    let residual = [&lhs[0] - &rhs[0], &lhs[1] - &rhs[1], &lhs[2] - &rhs[2]];
    let holds = residual.iter().all(Zero::is_zero);
    Ok(NoascReport { i, class, lhs, rhs, residual, holds })
}

/// The linear map `(d,m,p,q,t) ↦ (m+3Q, d+Q, p-q+5Q, Q, p+q)` with
/// `Q = (p - q - t)/2`.
pub fn a_sharp(c: &ClassTuple) -> Result<ClassTuple> {
    if c.eps != Eps::Plus || [&c.d, &c.m, &c.p, &c.q].iter().any(|x| *x < &BigInt::zero()) {
        return Err(Error::OutOfDomain(format!("A♯ needs eps = +1 and nonnegative entries, got {c}")));
    }
    let s = &c.p - &c.q - &c.t;
    if s.clone() % 2 != BigInt::zero() {
        return Err(Error::ParityViolation);
    }
    let qq = s / 2;
    ClassTuple::new(
        &c.m + BigInt::from(3) * &qq,
        &c.d + &qq,
        &c.p - &c.q + BigInt::from(5) * &qq,
        qq,
        &c.p + &c.q,
        Eps::Plus,
    )
}
