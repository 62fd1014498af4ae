//! Adjacency, generating triples, mutations and the labelled tree.
//!
//! A generating triple `(E_λ, E_μ, E_ρ)` has increasing centers and satisfies
//!
//! * (a) `E_λ, E_ρ` adjacent;
//! * (b) `E_λ, E_μ` adjacent with `t_ρ = q_λ p_μ - p_λ q_μ`;
//! * (c) `E_μ, E_ρ` adjacent with `t_λ = q_μ p_ρ - p_μ q_ρ`;
//! * (d) `t_λ t_ρ - t_μ = q_λ p_ρ - p_λ q_ρ`;
//! * (e) `acc(m_ρ/d_ρ)` and `acc(m_λ/d_λ)` both exceed `acc(m_μ/d_μ)`.
//!
//! Triples meeting (a)–(d) only are kept with `quasi = true`. The mutations
//! are `x(T) = (E_λ, t_λ E_μ - E_ρ, E_μ)` and `y(T) = (E_μ, t_ρ E_μ - E_λ, E_ρ)`.
//!
//! The tree over `[2n+6, 2n+8]` starts from `T^n_* = (B^U_n, E^1_n, B^U_{n+1})`
//! at address `.1`; appending digit `0` (resp. `2`) before the final `1`
//! applies `x` (resp. `y`). The endpoint classes `B^U_n`, `B^U_{n+1}` carry
//! the addresses `0` and `1`. In families `S^i R` the digit map is swapped so
//! that each label names the image of the class with the same label in the
//! base family.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::classes::{acc, ClassTuple};
use crate::error::{Error, Result};
use crate::exact::{QuadSurd, Rational};
use crate::symmetry::{apply_sym, apply_sym_triple, SymWord};

/// `(p+q)(p'+q') - tt' = 8pq'` for `E` left of `E'`.
pub fn adjacent_ordered(l: &ClassTuple, r: &ClassTuple) -> bool {
    l != r && l.r() * r.r() - &l.t * &r.t == BigInt::from(8) * &l.p * &r.q
}

fn center_cmp(a: &ClassTuple, b: &ClassTuple) -> Option<Ordering> {
    let ok = |c: &ClassTuple| c.q.is_positive() && c.p.is_positive();
    (ok(a) && ok(b)).then(|| (&a.p * &b.q).cmp(&(&b.p * &a.q)))
}

/// Adjacency, ordering the pair by center when both centers are defined.
pub fn adjacent(e: &ClassTuple, f: &ClassTuple) -> Result<bool> {
    if e.eps != f.eps {
        return Err(Error::MixedEps);
    }
    Ok(match center_cmp(e, f) {
        Some(Ordering::Greater) => adjacent_ordered(f, e),
        _ => adjacent_ordered(e, f),
    })
}

/// `xᵀ A x' = 4t''` for `x = (p, q, t)`, `A` the form of
/// `-pp' + 3pq' + 3qp' - qq' + tt'`.
pub fn t_compatible(e: &ClassTuple, f: &ClassTuple, t2: &BigInt) -> Result<bool> {
    if e.eps != f.eps {
        return Err(Error::MixedEps);
    }
    let three = BigInt::from(3);
    let form = -(&e.p * &f.p) + &three * &e.p * &f.q + &three * &e.q * &f.p - &e.q * &f.q + &e.t * &f.t;
    Ok(form == BigInt::from(4) * t2)
}

/// Condition (d) for outer entries `l`, `r` around a middle with `t_mu`.
pub fn outer_compatible(l: &ClassTuple, r: &ClassTuple, t_mu: &BigInt) -> bool {
    &l.t * &r.t - t_mu == &l.q * &r.p - &l.p * &r.q
}

/// Step direction of a pre-staircase.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Ascending,
    Descending,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Ascending => "asc",
            Direction::Descending => "desc",
        })
    }
}

impl FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "asc" | "ascending" => Ok(Direction::Ascending),
            "desc" | "descending" => Ok(Direction::Descending),
            _ => Err(Error::Parse(format!("direction must be asc or desc, got {s:?}"))),
        }
    }
}

/// Two seeds and a recursion parameter: `E_{k+1} = ν E_k - E_{k-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PreStaircase {
    pub direction: Direction,
    pub seed0: ClassTuple,
    pub seed1: ClassTuple,
    #[serde(with = "crate::exact::serde_bigint")]
    pub nu: BigInt,
    pub blocking: Option<ClassTuple>,
}

impl PreStaircase {
    /// The first `count` steps, seeds included.
    pub fn steps(&self, count: usize) -> Result<Vec<ClassTuple>> {
        let mut out: Vec<ClassTuple> = [self.seed0.clone(), self.seed1.clone()].into_iter().take(count).collect();
        while out.len() < count {
            let k = out.len();
            out.push(ClassTuple::combine(&self.nu, &out[k - 1], &out[k - 2])?);
        }
        Ok(out)
    }

    /// Exact limits of `p_k/q_k` and `m_k/d_k`.
    pub fn limit(&self) -> Result<(QuadSurd, QuadSurd)> {
        let (a, b) = (&self.seed0, &self.seed1);
        let z = recursion_limit(&a.p, &b.p, &a.q, &b.q, &self.nu)?;
        let beta = recursion_limit(&a.m, &b.m, &a.d, &b.d, &self.nu)?;
        Ok((z, beta))
    }
}

/// `count` further steps after the seeds.
pub fn generate_prestaircase(s: &PreStaircase, count: usize) -> Result<Vec<ClassTuple>> {
    Ok(s.steps(count + 2)?.split_off(2))
}

/// `lim x_k/y_k` for `x_{k+1} = ν x_k - x_{k-1}` (same for `y`).
///
/// With `σ = ν² - 4` and `λ = (ν + √σ)/2`, `x_k = Xλ^k + X̄λ^{-k}` where
/// `X = x_0/2 + (2x_1 - ν x_0)/(2σ) √σ`; the limit is `X/Y`.
pub fn recursion_limit(x0: &BigInt, x1: &BigInt, y0: &BigInt, y1: &BigInt, nu: &BigInt) -> Result<QuadSurd> {
    let two = BigInt::from(2);
    if nu < &two {
        return Err(Error::OutOfDomain(format!("recursion parameter must be at least 2, got {nu}")));
    }
    if nu == &two {
        // linear growth: x_k = x_0 + k(x_1 - x_0)
        let (dx, dy) = (x1 - x0, y1 - y0);
        return if !dy.is_zero() {
            Ok(QuadSurd::from_rational(&Rational::new(dx, dy)))
        } else if dx.is_zero() && !y0.is_zero() {
            Ok(QuadSurd::from_rational(&Rational::new(x0.clone(), y0.clone())))
        } else {
            Err(Error::DegenerateLimit)
        };
    }
    let sigma = nu * nu - BigInt::from(4);
    let coef = |a0: &BigInt, a1: &BigInt| {
        // 2σ X = σ a0 + (2a1 - ν a0) √σ
        QuadSurd::new(&sigma * a0, &two * a1 - nu * a0, &two * &sigma, sigma.clone())
    };
    let (xx, yy) = (coef(x0, x1)?, coef(y0, y1)?);
    if yy.is_zero() {
        return Err(Error::DegenerateLimit);
    }
    xx.div(&yy)
}

/// Pass/fail of the five triple conditions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TripleCheck {
    pub a: bool,
    pub b: bool,
    pub c: bool,
    pub d: bool,
    pub e: bool,
}

impl TripleCheck {
    pub fn numeric(&self) -> bool {
        self.a && self.b && self.c && self.d
    }

    pub fn all(&self) -> bool {
        self.numeric() && self.e
    }
}

fn acc_domain(c: &ClassTuple) -> Option<Rational> {
    let r = c.ratio().filter(|_| c.d.is_positive())?;
    (!r.is_negative() && r < Rational::from_integer(1.into())).then_some(r)
}

/// `acc(m_o/d_o) > acc(m_μ/d_μ)`, decided by comparing ratios when both
/// lie on the same side of 1/3 (acc decreases on `[0, 1/3]` and increases on
/// `[1/3, 1)`), and by comparing the surds otherwise.
fn acc_exceeds(outer: &ClassTuple, mid: &ClassTuple) -> bool {
    let (Some(bo), Some(bm)) = (acc_domain(outer), acc_domain(mid)) else {
        return false;
    };
    let third = Rational::new(1.into(), 3.into());
    match (bo >= third, bm >= third) {
        (true, true) => bo > bm,
        (false, false) => bo < bm,
        _ => match (acc(&bo), acc(&bm)) {
            (Ok(x), Ok(y)) => x > y,
            _ => false,
        },
    }
}

/// Evaluates conditions (a)–(e).
pub fn check_triple(l: &ClassTuple, m: &ClassTuple, r: &ClassTuple) -> Result<TripleCheck> {
    if l.eps != m.eps || m.eps != r.eps {
        return Err(Error::MixedEps);
    }
    for (x, y) in [(l, m), (m, r), (l, r)] {
        if center_cmp(x, y).is_some_and(|o| o != Ordering::Less) {
            return Err(Error::UnorderedCenters);
        }
    }
    let a = adjacent_ordered(l, r);
    let b = adjacent_ordered(l, m) && r.t == &l.q * &m.p - &l.p * &m.q;
    let c = adjacent_ordered(m, r) && l.t == &m.q * &r.p - &m.p * &r.q;
    let d = outer_compatible(l, r, &m.t);
    let e = acc_exceeds(r, m) && acc_exceeds(l, m);
    Ok(TripleCheck { a, b, c, d, e })
}

/// Mutation side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Move {
    X,
    Y,
}

impl FromStr for Move {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "x" | "X" => Ok(Move::X),
            "y" | "Y" => Ok(Move::Y),
            _ => Err(Error::Parse(format!("mutation must be x or y, got {s:?}"))),
        }
    }
}

/// An ordered triple satisfying (a)–(d); `quasi` when (e) fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Triple {
    pub left: ClassTuple,
    pub mid: ClassTuple,
    pub right: ClassTuple,
    pub quasi: bool,
}

impl Triple {
    pub fn new(left: ClassTuple, mid: ClassTuple, right: ClassTuple) -> Result<Triple> {
        let chk = check_triple(&left, &mid, &right)?;
        if !chk.numeric() {
            return Err(Error::InvalidTriple(format!("({left}, {mid}, {right}) fails {chk:?}")));
        }
        Ok(Triple { left, mid, right, quasi: !chk.e })
    }

    /// `T^n_* = (B^U_n, E^1_n, B^U_{n+1})`.
    pub fn base(n: i64) -> Result<Triple> {
        Triple::new(ClassTuple::b_upper(n), ClassTuple::e_one(n), ClassTuple::b_upper(n + 1))
    }

    /// The quasi-triple `(E_{ℓ,seed}, B^U_n, B^U_{n+1})`.
    pub fn quasi_lower(n: i64) -> Result<Triple> {
        Triple::new(ClassTuple::seed_lower(), ClassTuple::b_upper(n), ClassTuple::b_upper(n + 1))
    }

    /// The quasi-triple `(B^U_n, B^U_{n+1}, E_{u,seed})`.
    pub fn quasi_upper(n: i64) -> Result<Triple> {
        Triple::new(ClassTuple::b_upper(n), ClassTuple::b_upper(n + 1), ClassTuple::seed_upper())
    }

    pub fn mutate(&self, side: Move) -> Result<Triple> {
        let out = match side {
            Move::X => {
                let mid = ClassTuple::combine(&self.left.t, &self.mid, &self.right)?;
                Triple::new(self.left.clone(), mid, self.mid.clone())
            }
            Move::Y => {
                let mid = ClassTuple::combine(&self.right.t, &self.mid, &self.left)?;
                Triple::new(self.mid.clone(), mid, self.right.clone())
            }
        };
        out.map_err(|e| Error::InvalidTriple(e.to_string()))
    }

    /// Seeds `E_λ, E_μ` with `ν = t_ρ`, converging to the lower end of `I_{E_ρ}`.
    pub fn ascending(&self) -> PreStaircase {
        PreStaircase {
            direction: Direction::Ascending,
            seed0: self.left.clone(),
            seed1: self.mid.clone(),
            nu: self.right.t.clone(),
            blocking: Some(self.right.clone()),
        }
    }

    /// Seeds `E_ρ, E_μ` with `ν = t_λ`, converging to the upper end of `I_{E_λ}`.
    pub fn descending(&self) -> PreStaircase {
        PreStaircase {
            direction: Direction::Descending,
            seed0: self.right.clone(),
            seed1: self.mid.clone(),
            nu: self.left.t.clone(),
            blocking: Some(self.left.clone()),
        }
    }

    pub fn check(&self) -> Result<TripleCheck> {
        check_triple(&self.left, &self.mid, &self.right)
    }

    pub fn entries(&self) -> [&ClassTuple; 3] {
        [&self.left, &self.mid, &self.right]
    }
}

pub fn mutate(t: &Triple, side: Move) -> Result<Triple> {
    t.mutate(side)
}

/// Position in the tree of one interval.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Address {
    /// `B^U_n`, token `0` (alias `L`).
    Lower,
    /// `B^U_{n+1}`, token `1` (alias `R`).
    Upper,
    /// `.a_1…a_k1` with digits in `{0, 2}`.
    Node(Vec<u8>),
}

impl Address {
    pub fn root() -> Address {
        Address::Node(Vec::new())
    }

    /// Endpoints sit on level 1; `.a_1…a_k1` on level `k + 2`.
    pub fn level(&self) -> usize {
        match self {
            Address::Lower | Address::Upper => 1,
            Address::Node(d) => d.len() + 2,
        }
    }

    pub fn digits(&self) -> Option<&[u8]> {
        match self {
            Address::Node(d) => Some(d),
            _ => None,
        }
    }

    pub fn child(&self, digit: u8) -> Option<Address> {
        match self {
            Address::Node(d) => {
                let mut d = d.clone();
                d.push(digit);
                Some(Address::Node(d))
            }
            _ => None,
        }
    }

    /// The two outer entries of the triple whose middle sits here.
    pub fn vertices(&self) -> Result<(Address, Address)> {
        let digits = self.digits().ok_or_else(|| Error::InvalidLabel(format!("{self} is an endpoint")))?;
        let (mut l, mut r) = (Address::Lower, Address::Upper);
        for k in 0..digits.len() {
            let parent = Address::Node(digits[..k].to_vec());
            if digits[k] == 0 {
                r = parent;
            } else {
                l = parent;
            }
        }
        Ok((l, r))
    }

    /// Predecessor (middle of the parent triple) and the remaining vertex.
    pub fn pre_and_ppre(&self) -> Result<(Address, Address)> {
        let digits = self.digits().ok_or_else(|| Error::InvalidLabel(format!("{self} is an endpoint")))?;
        let (&last, head) = digits.split_last().ok_or(Error::RootHasNoPredecessor)?;
        let pre = Address::Node(head.to_vec());
        let (l, r) = pre.vertices()?;
        Ok((pre, if last == 0 { l } else { r }))
    }
}

impl fmt::Display for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Address::Lower => f.write_str("0"),
            Address::Upper => f.write_str("1"),
            Address::Node(d) => {
                f.write_str(".")?;
                for x in d {
                    write!(f, "{x}")?;
                }
                f.write_str("1")
            }
        }
    }
}

impl FromStr for Address {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "0" | "L" => return Ok(Address::Lower),
            "1" | "R" => return Ok(Address::Upper),
            _ => {}
        }
        let body = s
            .strip_prefix('.')
            .and_then(|b| b.strip_suffix('1'))
            .ok_or_else(|| Error::InvalidLabel(format!("address must match .[02]*1, got {s:?}")))?;
        let digits = body
            .bytes()
            .map(|c| match c {
                b'0' => Ok(0),
                b'2' => Ok(2),
                _ => Err(Error::InvalidLabel(format!("address must match .[02]*1, got {s:?}"))),
            })
            .collect::<Result<Vec<u8>>>()?;
        Ok(Address::Node(digits))
    }
}

/// A class in the family `S^i R^δ` of the tree over `[2n+6, 2n+8]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Label {
    pub n: u64,
    pub sym: SymWord,
    pub addr: Address,
}

impl Label {
    pub fn new(n: u64, sym: SymWord, addr: Address) -> Self {
        Label { n, sym, addr }
    }

    pub fn with_addr(&self, addr: Address) -> Label {
        Label { n: self.n, sym: self.sym, addr }
    }

    pub fn level(&self) -> usize {
        self.addr.level()
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} sym={} addr={}", self.n, self.sym, self.addr)
    }
}

impl Serialize for Label {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl FromStr for Label {
    type Err = Error;

    /// Accepts `n=0 sym=S^2R addr=.021`, `0:.021` and `0:S^2R:.021`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidLabel(format!("cannot parse label {s:?}"));
        if s.contains('=') {
            let (mut n, mut sym, mut addr) = (None, SymWord::ID, None);
            for part in s.split_whitespace() {
                let (k, v) = part.split_once('=').ok_or_else(bad)?;
                match k {
                    "n" => n = Some(v.parse::<u64>().map_err(|_| bad())?),
                    "sym" => sym = v.parse()?,
                    "addr" => addr = Some(v.parse()?),
                    _ => return Err(bad()),
                }
            }
            return Ok(Label { n: n.ok_or_else(bad)?, sym, addr: addr.ok_or_else(bad)? });
        }
        let parts: Vec<&str> = s.split(':').collect();
        let (n, sym, addr) = match parts.as_slice() {
            [n, a] => (n, "id", a),
            [n, w, a] => (n, *w, a),
            _ => return Err(bad()),
        };
        Ok(Label { n: n.parse().map_err(|_| bad())?, sym: sym.parse()?, addr: addr.parse()? })
    }
}

fn digit_move(digit: u8, sym: SymWord) -> Move {
    match (digit == 0, sym.delta) {
        (true, false) | (false, true) => Move::X,
        _ => Move::Y,
    }
}

fn signed(n: u64) -> i64 {
    n as i64
}

/// The base triple `S^iR^δ(T^n_*)` of a family.
pub fn base_triple(n: u64, sym: SymWord) -> Result<Triple> {
    apply_sym_triple(sym, &Triple::base(signed(n))?)
}

/// The triple whose middle entry is the labelled class. Endpoints get the
/// quasi-triple `(B^U_{k-1}, B^U_k, E_{u,seed})` carried by the symmetry.
pub fn triple_at_label(lbl: &Label) -> Result<Triple> {
    let n = signed(lbl.n);
    match &lbl.addr {
        Address::Lower => apply_sym_triple(lbl.sym, &Triple::quasi_upper(n - 1)?),
        Address::Upper => apply_sym_triple(lbl.sym, &Triple::quasi_upper(n)?),
        Address::Node(digits) => {
            let mut t = base_triple(lbl.n, lbl.sym)?;
            for &d in digits {
                t = t.mutate(digit_move(d, lbl.sym))?;
            }
            Ok(t)
        }
    }
}

/// The labelled class itself.
pub fn class_at_label(lbl: &Label) -> Result<ClassTuple> {
    let n = signed(lbl.n);
    match lbl.addr {
        Address::Lower => apply_sym(lbl.sym, &ClassTuple::b_upper(n)),
        Address::Upper => apply_sym(lbl.sym, &ClassTuple::b_upper(n + 1)),
        Address::Node(_) => Ok(triple_at_label(lbl)?.mid),
    }
}

/// `ℓ_CS`: 1 at the endpoints, 2 at `.1`, then `ℓ(pre) + ℓ(ppre)`.
pub fn cs_length(lbl: &Label) -> Result<u64> {
    let Some(digits) = lbl.addr.digits() else {
        return Ok(1);
    };
    // lengths of (left, middle, right) along the path
    let (mut l, mut m, mut r) = (1u64, 2u64, 1u64);
    for &d in digits {
        if d == 0 {
            (l, m, r) = (l, m + l, m);
        } else {
            (l, m, r) = (m, m + r, r);
        }
    }
    Ok(m)
}

pub fn pre_and_ppre(lbl: &Label) -> Result<(Label, Label)> {
    let (pre, ppre) = lbl.addr.pre_and_ppre()?;
    Ok((lbl.with_addr(pre), lbl.with_addr(ppre)))
}

/// Steps `E_{α_k}`, `α_k = .a_1…a_k1`, for the indices with `a_k = 0`,
/// `a_{k+1} = 2` (ascending) or `a_k = 2`, `a_{k+1} = 0` (descending).
pub fn nonprincipal_steps(n: u64, digits: &[u8], direction: Direction) -> Result<Vec<ClassTuple>> {
    if digits.iter().any(|d| *d != 0 && *d != 2) {
        return Err(Error::InvalidLabel("digits must be 0 or 2".into()));
    }
    let (from, to) = match direction {
        Direction::Ascending => (0, 2),
        Direction::Descending => (2, 0),
    };
    let picks: Vec<usize> = (0..digits.len().saturating_sub(1))
        .filter(|&k| digits[k] == from && digits[k + 1] == to)
        .collect();
    if picks.is_empty() {
        return Err(Error::EmptySelection);
    }
    let out = picks
        .iter()
        .map(|&k| class_at_label(&Label::new(n, SymWord::ID, Address::Node(digits[..=k].to_vec()))))
        .collect::<Result<Vec<_>>>()?;
    let want = match direction {
        Direction::Ascending => Ordering::Less,
        Direction::Descending => Ordering::Greater,
    };
    if out.windows(2).any(|w| center_cmp(&w[0], &w[1]) != Some(want)) {
        return Err(Error::InvariantViolation("non-principal steps are not monotone".into()));
    }
    Ok(out)
}

/// One enumerated class of a family tree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreeNode {
    pub label: Label,
    pub level: usize,
    pub class: ClassTuple,
    /// Triple whose middle is this class (`None` where a symmetry image of
    /// the endpoint quasi-triple is undefined).
    pub triple: Option<Triple>,
    pub cs_length: u64,
    pub parent: Option<String>,
}

/// Every class of the family to the given level: endpoints first, then
/// breadth-first with the x-child before the y-child.
pub fn enumerate_tree(n: u64, level: usize, sym: SymWord) -> Result<Vec<TreeNode>> {
    let mut out = Vec::new();
    if level == 0 {
        return Ok(out);
    }
    for addr in [Address::Lower, Address::Upper] {
        let label = Label::new(n, sym, addr);
        out.push(TreeNode {
            class: class_at_label(&label)?,
            triple: triple_at_label(&label).ok(),
            cs_length: 1,
            level: 1,
            parent: None,
            label,
        });
    }
    let mut frontier = vec![(Address::root(), base_triple(n, sym)?, 1u64, 2u64, 1u64)];
    for lev in 2..=level {
        for (addr, t, _, m, _) in &frontier {
            let parent = addr.pre_and_ppre().ok().map(|(p, _)| p.to_string());
            out.push(TreeNode {
                label: Label::new(n, sym, addr.clone()),
                level: lev,
                class: t.mid.clone(),
                triple: Some(t.clone()),
                cs_length: *m,
                parent,
            });
        }
        if lev == level {
            break;
        }
        let next: Result<Vec<Vec<_>>> = frontier
            .par_iter()
            .map(|(addr, t, l, m, r)| {
                let x = t.mutate(digit_move(0, sym))?;
                let y = t.mutate(digit_move(2, sym))?;
                Ok(vec![
                    (addr.child(0).expect("node"), x, *l, m + l, *m),
                    (addr.child(2).expect("node"), y, *m, m + r, *r),
                ])
            })
            .collect();
        frontier = next?.into_iter().flatten().collect();
    }
    Ok(out)
}
