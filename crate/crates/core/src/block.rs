//! Blocking predicates, blocked intervals, density, capacity lower bounds,
//! Cantor coordinates and the slope criterion.
//!
//! A class `E` blocks `b` when `μ_{E,b}(acc(b)) > V_b(acc(b)) = (1+acc(b))/(3-b)`.
//! The blocked `b`-interval is `J_E` and its image under `acc` is the open
//! `z`-interval `I_E`. For a class in the tree, the endpoints of `I_E` are the
//! limits of the two principal staircases of the triple with middle `E`:
//! the ascending staircase of `x(T)` and the descending one of `y(T)`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::classes::{a_min, acc, exc_obstruction, exc_vector, volume, ClassTuple, Eps, ExcVector};
use crate::error::{Error, Result};
use crate::exact::{rational_text, QuadSurd, Rational};
use crate::family::{class_at_label, enumerate_tree, triple_at_label, Address, Label, Move, Triple};
use crate::symmetry::{sequences, SymWord};

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn qi(n: &BigInt) -> Rational {
    Rational::from_integer(n.clone())
}

/// The open intervals `I_E` (in `z`) and `J_E` (in `b`) of a class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockedInterval {
    pub owner: ClassTuple,
    pub label: Option<Label>,
    pub z_lo: QuadSurd,
    pub z_hi: QuadSurd,
    pub b_lo: QuadSurd,
    pub b_hi: QuadSurd,
}

impl BlockedInterval {
    pub fn contains_z(&self, z: &QuadSurd) -> bool {
        &self.z_lo < z && z < &self.z_hi
    }

    pub fn contains_b(&self, b: &QuadSurd) -> bool {
        &self.b_lo < b && b < &self.b_hi
    }
}

/// The blocking inequality at `z` as `k0 + k1·b > 0`.
fn margin_coefficients(c: &ClassTuple, z: &Rational) -> (Rational, Rational) {
    let (d, m) = (qi(&c.d), qi(&c.m));
    let one_z = z + Rational::one();
    // left branch: q z (3 - b), right branch: p (3 - b)
    let lead = match c.center() {
        Some(center) if *z <= center => qi(&c.q) * z,
        _ => qi(&c.p),
    };
    (&lead * q(3) - &one_z * &d, &one_z * &m - &lead)
}

/// Sign of `x + y√Δ` for rationals `x`, `y` and `Δ ≥ 0`.
fn sign_with_root(x: &Rational, y: &Rational, delta: &Rational) -> Ordering {
    let (sx, sy) = (x.cmp(&Rational::zero()), y.cmp(&Rational::zero()));
    if sy == Ordering::Equal || delta.is_zero() {
        return sx;
    }
    if sx == Ordering::Equal || sx == sy {
        return sy;
    }
    match (x * x).cmp(&(y * y * delta)) {
        Ordering::Greater => sx,
        Ordering::Less => sy,
        Ordering::Equal => Ordering::Equal,
    }
}

/// Whether `c` blocks the `b = acc_inv(z, ε_c)` with accumulation point `z`.
///
/// With `w = z + 1/z + 2` and `Δ = w² - 8w`, `b = (3 + ε√Δ)/(1 + w)`, so the
/// blocking margin `k0 + k1·b` has the sign of `k0(1+w) + 3k1 + εk1√Δ`.
pub fn is_blocked_z(c: &ClassTuple, z: &Rational) -> Result<bool> {
    if c.formal || !c.q.is_positive() {
        return Err(Error::FormalClass(c.to_string()));
    }
    if *z <= Rational::one() {
        return Err(Error::OutOfDomain(format!("{z} is not above 3 + 2√2")));
    }
    let w = z + z.recip() + q(2);
    let delta = &w * &w - q(8) * &w;
    if !delta.is_positive() {
        return Err(Error::OutOfDomain(format!("{z} is not above 3 + 2√2")));
    }
    let eps = qi(&c.eps.big());
    if c.eps == Eps::Minus && delta > q(9) {
        return Err(Error::OutOfDomain(format!("the {} branch has no b >= 0 at z = {z}", c.eps)));
    }
    let (k0, k1) = margin_coefficients(c, z);
    let x = &k0 * (&w + Rational::one()) + q(3) * &k1;
    Ok(sign_with_root(&x, &(eps * k1), &delta) == Ordering::Greater)
}

/// `is_blocked_z`, reading an out-of-domain point as unblocked.
fn blocked_or_false(c: &ClassTuple, z: &Rational) -> bool {
    is_blocked_z(c, z).unwrap_or(false)
}

/// Whether `b ∈ J_E`, i.e. `μ_{E,b}(acc(b)) > V_b(acc(b))`.
pub fn is_blocked_b(c: &ClassTuple, b: &Rational) -> Result<bool> {
    if c.formal || !c.q.is_positive() {
        return Err(Error::FormalClass(c.to_string()));
    }
    let z = acc(b)?;
    let (d, m) = (qi(&c.d), qi(&c.m));
    let den = &d - &m * b;
    if !den.is_positive() {
        return Ok(false);
    }
    let three_b = q(3) - b;
    let center = c.center().expect("q > 0");
    // (1+z)(d - mb) on the right; q z (3-b) or p (3-b) on the left
    let rhs = z.add_q(&Rational::one()).mul_q(&den);
    let lhs = if z.cmp_rational(&center) != Ordering::Greater {
        z.mul_q(&(qi(&c.q) * &three_b))
    } else {
        QuadSurd::from_rational(&(qi(&c.p) * &three_b))
    };
    Ok(lhs > rhs)
}

fn ordered(x: QuadSurd, y: QuadSurd) -> (QuadSurd, QuadSurd) {
    if x <= y {
        (x, y)
    } else {
        (y, x)
    }
}

/// Exact `I_E`, `J_E` for the middle entry of a triple.
pub fn interval_of_triple(t: &Triple) -> Result<BlockedInterval> {
    let (z_lo, b_a) = t.mutate(Move::X)?.ascending().limit()?;
    let (z_hi, b_b) = t.mutate(Move::Y)?.descending().limit()?;
    let (b_lo, b_hi) = ordered(b_a, b_b);
    Ok(BlockedInterval { owner: t.mid.clone(), label: None, z_lo, z_hi, b_lo, b_hi })
}

/// Exact blocked interval of the class at a tree label.
pub fn blocked_interval(c: &ClassTuple, lbl: &Label) -> Result<BlockedInterval> {
    let found = class_at_label(lbl).map_err(|e| Error::NotInTree(format!("{lbl}: {e}")))?;
    if &found != c {
        return Err(Error::NotInTree(format!("{c} is not the class at {lbl} (found {found})")));
    }
    let t = triple_at_label(lbl).map_err(|e| Error::NotInTree(format!("{lbl}: {e}")))?;
    let mut out = interval_of_triple(&t)?;
    out.label = Some(lbl.clone());
    Ok(out)
}

/// Rational brackets around the endpoints of `I_E`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ApproxInterval {
    pub owner: ClassTuple,
    /// `z_lo` lies in `[lo.0, lo.1]`.
    #[serde(serialize_with = "pair_text")]
    pub lo: (Rational, Rational),
    /// `z_hi` lies in `[hi.0, hi.1]`.
    #[serde(serialize_with = "pair_text")]
    pub hi: (Rational, Rational),
}

fn pair_text<S: serde::Serializer>(p: &(Rational, Rational), s: S) -> std::result::Result<S::Ok, S::Error> {
    (rational_text(&p.0), rational_text(&p.1)).serialize(s)
}

/// Shrinks `[inside, outside]` (blocked at `inside`) to width `tol`.
fn bisect(c: &ClassTuple, mut inside: Rational, mut outside: Rational, tol: &Rational) -> (Rational, Rational) {
    while (&outside - &inside).abs() > *tol {
        let mid = (&inside + &outside) / q(2);
        if blocked_or_false(c, &mid) {
            inside = mid;
        } else {
            outside = mid;
        }
    }
    if inside < outside {
        (inside, outside)
    } else {
        (outside, inside)
    }
}

/// Approximates `I_E` by bisection on the exact predicate, for classes
/// given without tree context.
pub fn blocked_interval_bisect(c: &ClassTuple, tol: &Rational) -> Result<ApproxInterval> {
    if !tol.is_positive() {
        return Err(Error::OutOfDomain("tolerance must be positive".into()));
    }
    let center = c.center().filter(|_| !c.formal).ok_or_else(|| Error::FormalClass(c.to_string()))?;
    if !is_blocked_z(c, &center).unwrap_or(false) {
        return Err(Error::NoBlockedPoint(c.to_string()));
    }
    // largest rational step still above 3 + 2√2
    let floor = Rational::new(583.into(), 100.into());
    let mut h = Rational::one();
    let hi_out = loop {
        let z = &center + &h;
        if !blocked_or_false(c, &z) {
            break z;
        }
        h *= q(2);
        if h > q(1 << 20) {
            return Err(Error::NoBlockedPoint(format!("{c} appears blocked on an unbounded ray")));
        }
    };
    let mut h = Rational::one();
    let lo_out = loop {
        let z = (&center - &h).max(floor.clone());
        if z >= center || !blocked_or_false(c, &z) {
            break z;
        }
        if z == floor {
            break z;
        }
        h *= q(2);
    };
    let hi = bisect(c, center.clone(), hi_out, tol);
    let lo = if blocked_or_false(c, &lo_out) { (lo_out.clone(), lo_out) } else { bisect(c, center, lo_out, tol) };
    Ok(ApproxInterval { owner: c.clone(), lo, hi })
}

/// Every non-formal class of a family tree with a defined triple.
pub fn family_intervals(n: u64, level: usize, sym: SymWord) -> Result<Vec<BlockedInterval>> {
    let nodes = enumerate_tree(n, level, sym)?;
    let mut out: Vec<BlockedInterval> = nodes
        .par_iter()
        .filter(|nd| !nd.class.formal && nd.triple.is_some())
        .map(|nd| {
            let mut iv = interval_of_triple(nd.triple.as_ref().expect("filtered"))?;
            iv.label = Some(nd.label.clone());
            Ok(iv)
        })
        .collect::<Result<Vec<_>>>()?;
    out.sort_by(|a, b| a.z_lo.cmp(&b.z_lo));
    Ok(out)
}

/// Sorted intervals with the outcome of the pairwise disjointness check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockSet {
    pub intervals: Vec<BlockedInterval>,
    pub disjoint: bool,
    /// Owners of the first overlapping pair, if any.
    pub overlap: Option<(ClassTuple, ClassTuple)>,
}

/// First overlap among open intervals, by sorted sweep.
pub fn first_overlap(ivs: &[BlockedInterval]) -> Option<(ClassTuple, ClassTuple)> {
    let mut by_z: Vec<&BlockedInterval> = ivs.iter().collect();
    by_z.sort_by(|a, b| a.z_lo.cmp(&b.z_lo));
    let mut by_b: Vec<&BlockedInterval> = ivs.iter().collect();
    by_b.sort_by(|a, b| a.b_lo.cmp(&b.b_lo));
    let z = by_z.windows(2).find(|w| w[0].z_hi > w[1].z_lo);
    let b = by_b.windows(2).find(|w| w[0].b_hi > w[1].b_lo);
    z.or(b).map(|w| (w[0].owner.clone(), w[1].owner.clone()))
}

pub fn block_set(n: u64, level: usize, sym: SymWord) -> Result<BlockSet> {
    let intervals = family_intervals(n, level, sym)?;
    let overlap = first_overlap(&intervals);
    Ok(BlockSet { disjoint: overlap.is_none(), overlap, intervals })
}

const DENSITY_DIGITS: u32 = 30;

/// Largest distance from a point of `[2n+6, 2n+8]` to the blocked union:
/// half of an interior gap, or the full uncovered stretch at either end.
fn gap_terms(n: u64, level: usize) -> Result<Vec<(QuadSurd, QuadSurd, bool)>> {
    let ivs = family_intervals(n, level, SymWord::ID)?;
    let a = QuadSurd::from_integer(BigInt::from(2 * n + 6));
    let b = QuadSurd::from_integer(BigInt::from(2 * n + 8));
    // (left, right, interior)
    let mut gaps = Vec::new();
    let mut cur = a.clone();
    let mut started = false;
    for iv in &ivs {
        if iv.z_lo > cur {
            gaps.push((cur.clone(), iv.z_lo.clone(), started));
        }
        started = true;
        if iv.z_hi > cur {
            cur = iv.z_hi.clone();
        }
    }
    if cur < b {
        gaps.push((cur, b, false));
    }
    Ok(gaps)
}

/// A rational upper bound for the density gap at the given level.
pub fn density_gap(n: u64, level: usize) -> Result<Rational> {
    let mut worst = Rational::zero();
    for (l, r, interior) in gap_terms(n, level)? {
        let g = r.decimal_bounds(DENSITY_DIGITS).1 - l.decimal_bounds(DENSITY_DIGITS).0;
        let g = if interior { g / q(2) } else { g };
        worst = worst.max(g);
    }
    Ok(worst)
}

/// Exact check that the density gap is at most `bound`.
pub fn density_gap_within(n: u64, level: usize, bound: &Rational) -> Result<bool> {
    Ok(gap_terms(n, level)?.iter().all(|(l, r, interior)| {
        let slack = if *interior { bound * q(2) } else { bound.clone() };
        *r <= l.add_q(&slack)
    }))
}

/// A pool member for [`capacity_lower`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PoolEntry {
    pub id: String,
    pub vector: ExcVector,
}

impl PoolEntry {
    pub fn class(id: impl Into<String>, c: &ClassTuple) -> Result<Self> {
        Ok(PoolEntry { id: id.into(), vector: exc_vector(c)? })
    }

    pub fn exc(id: impl Into<String>, v: ExcVector) -> Self {
        PoolEntry { id: id.into(), vector: v }
    }
}

/// The exceptional class `(3; 1, 2, 1^{×5})` (`m = 1`, then weights).
pub fn special_exc_class() -> ExcVector {
    ExcVector::new(3.into(), [1, 2, 1, 1, 1, 1, 1].into_iter().map(BigInt::from).collect())
}

/// Tree classes of a family to a level, as pool entries.
pub fn tree_pool(n: u64, level: usize, sym: SymWord) -> Result<Vec<PoolEntry>> {
    enumerate_tree(n, level, sym)?
        .iter()
        .filter(|nd| !nd.class.formal)
        .map(|nd| PoolEntry::class(nd.label.to_string(), &nd.class))
        .collect()
}

/// Value of the lower bound and the maximising pool entry (`"volume"` if none
/// exceeds the volume).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CapacityPoint {
    pub value: QuadSurd,
    pub volume: QuadSurd,
    pub argmax: String,
}

/// `max(V_b(z), μ_E(z) for E in the pool)`; entries whose denominator
/// `d - mb` is not positive are skipped.
pub fn capacity_lower(b: &Rational, z: &Rational, pool: &[PoolEntry]) -> Result<CapacityPoint> {
    let vol = volume(b, z)?;
    let bs = QuadSurd::from_rational(b);
    let mut best = (vol.clone(), "volume".to_string());
    for e in pool {
        match exc_obstruction(&e.vector, &bs, z) {
            Ok(v) if v > best.0 => best = (v, e.id.clone()),
            Ok(_) | Err(Error::NonpositiveDenominator) => {}
            Err(err) => return Err(err),
        }
    }
    Ok(CapacityPoint { value: best.0, volume: vol, argmax: best.1 })
}

/// `(t² - 8)/(t·r)` with `r = p + q`.
pub fn slope_value(c: &ClassTuple) -> Result<Rational> {
    let den = &c.t * c.r();
    if den.is_zero() {
        return Err(Error::DegenerateDenominator);
    }
    Ok(Rational::new(&c.t * &c.t - BigInt::from(8), den))
}

/// For the first two steps of a descending pre-staircase: whether the slope
/// value strictly increases.
pub fn slope_criterion(seed0: &ClassTuple, seed1: &ClassTuple) -> Result<bool> {
    Ok(slope_value(seed1)? > slope_value(seed0)?)
}

/// An interval of the Cantor-set coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CantorImage {
    #[serde(serialize_with = "crate::exact::serde_rational::serialize")]
    pub lo: Rational,
    #[serde(serialize_with = "crate::exact::serde_rational::serialize")]
    pub hi: Rational,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

/// `.a_1…a_k1 ↦ (δ, δ + 3^{-(k+1)})` with `δ = 0.a_1…a_k1` in base 3; the
/// endpoint tokens go to `[-1, 0)` and `(1, 2]`.
pub fn cantor_coordinate(lbl: &Label) -> Result<CantorImage> {
    let open = |lo: Rational, hi: Rational| CantorImage { lo, hi, lo_closed: false, hi_closed: false };
    match &lbl.addr {
        Address::Lower => Ok(CantorImage { lo: q(-1), hi: q(0), lo_closed: true, hi_closed: false }),
        Address::Upper => Ok(CantorImage { lo: q(1), hi: q(2), lo_closed: false, hi_closed: true }),
        Address::Node(digits) => {
            let mut delta = Rational::zero();
            let mut scale = Rational::one();
            for &d in digits.iter().chain(std::iter::once(&1)) {
                if d > 2 {
                    return Err(Error::InvalidLabel(lbl.to_string()));
                }
                scale /= q(3);
                delta += &scale * q(d as i64);
            }
            let hi = &delta + &scale;
            Ok(open(delta, hi))
        }
    }
}

/// A class together with the label it was enumerated under.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LabelledClass {
    pub label: Label,
    pub class: ClassTuple,
}

/// The `ε` of every class in the family `S^i R^δ`.
pub fn family_eps(sym: SymWord) -> Eps {
    Eps::parity(u64::from(sym.i) + u64::from(sym.delta))
}

/// The families `S^i R^δ` for `i ≤ 3`, optionally restricted to one `ε`.
pub fn scan_families(eps: Option<Eps>) -> Vec<SymWord> {
    (0..=3u32)
        .flat_map(|i| [false, true].map(|d| SymWord::new(i, d)))
        .filter(|w| eps.is_none_or(|e| family_eps(*w) == e))
        .collect()
}

/// Non-formal classes of the given families, `n = 0..=nmax`, to a level.
pub fn class_pool(nmax: u64, level: usize, families: &[SymWord]) -> Result<Vec<LabelledClass>> {
    let mut out = Vec::new();
    for &w in families {
        for n in 0..=nmax {
            let nodes = match enumerate_tree(n, level, w) {
                Ok(nodes) => nodes,
                // images that leave the domain of the symmetry are skipped
                Err(Error::OutOfDomain(_)) | Err(Error::InvalidTriple(_)) => continue,
                Err(e) => return Err(e),
            };
            out.extend(
                nodes
                    .into_iter()
                    .filter(|nd| !nd.class.formal && nd.class.q.is_positive())
                    .map(|nd| LabelledClass { label: nd.label, class: nd.class }),
            );
        }
    }
    Ok(out)
}

/// The first pool class blocking the point `z`.
pub fn find_blocking<'a>(z: &Rational, pool: &'a [LabelledClass]) -> Option<&'a LabelledClass> {
    pool.iter().find(|c| blocked_or_false(&c.class, z))
}

/// All pool classes whose `J_E` contains `b`.
pub fn find_blocking_b<'a>(b: &Rational, pool: &'a [LabelledClass]) -> Vec<&'a LabelledClass> {
    pool.iter().filter(|c| is_blocked_b(&c.class, b).unwrap_or(false)).collect()
}

/// Unblocked rationals that are `v_i` values, with their index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanFlag {
    #[serde(serialize_with = "crate::exact::serde_rational::serialize")]
    pub z: Rational,
    pub i: u64,
}

/// Result of a rational scan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub checked: usize,
    pub blocked: usize,
    /// Unblocked points equal to a `v_i` of the parity matching the side.
    pub flags: Vec<ScanFlag>,
    /// Unblocked points with no such explanation.
    #[serde(serialize_with = "rational_list")]
    pub misses: Vec<Rational>,
}

fn rational_list<S: serde::Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    v.iter().map(rational_text).collect::<Vec<_>>().serialize(s)
}

/// The `v_i` with `i ≤ 40` that are expected to stay unblocked on one side:
/// odd `i` for `ε = +1`, even `i` for `ε = -1`, both when no side is given.
fn expected_flags(eps: Option<Eps>) -> Vec<(Rational, u64)> {
    (2..=40u64)
        .filter(|i| eps.is_none_or(|e| e == Eps::parity(*i + 1)))
        .filter_map(|i| sequences(i).v.map(|v| (v, i)))
        .collect()
}

/// Every reduced `p/q ∈ [lo, hi]` with `q ≤ qmax`, tested against the pool.
pub fn rational_blocked_scan(
    lo: &Rational,
    hi: &Rational,
    qmax: u64,
    pool: &[LabelledClass],
    eps: Option<Eps>,
) -> Result<ScanReport> {
    if QuadSurd::from_rational(lo) <= a_min() {
        return Err(Error::OutOfDomain(format!("scan interval must lie above 3 + 2√2, got {lo}")));
    }
    let mut points = Vec::new();
    for qq in 1..=qmax {
        let qb = BigInt::from(qq);
        let pmin = (lo * qi(&qb)).ceil().to_integer();
        let pmax = (hi * qi(&qb)).floor().to_integer();
        let mut p = pmin;
        while p <= pmax {
            if p.gcd(&qb).is_one() {
                points.push(Rational::new(p.clone(), qb.clone()));
            }
            p += 1;
        }
    }
    points.sort();
    let unblocked: Vec<Rational> =
        points.par_iter().filter(|z| find_blocking(z, pool).is_none()).cloned().collect();
    let expected = expected_flags(eps);
    let (mut flags, mut misses) = (Vec::new(), Vec::new());
    for z in unblocked.iter() {
        match expected.iter().find(|(v, _)| v == z) {
            Some((_, i)) => flags.push(ScanFlag { z: z.clone(), i: *i }),
            None => misses.push(z.clone()),
        }
    }
    Ok(ScanReport { checked: points.len(), blocked: points.len() - unblocked.len(), flags, misses })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cf::PeriodicCFrac;
    use crate::classes::class_from_center;
    use crate::exact::{int, rat};
    use crate::classes::acc_inv;
    use crate::family::Triple;
    use proptest::prelude::*;

    fn ct(d: i64, m: i64, p: i64, q: i64, t: i64, e: i64) -> ClassTuple {
        ClassTuple::from_i64(d, m, p, q, t, e).unwrap()
    }

    fn lbl(s: &str) -> Label {
        s.parse().unwrap()
    }

    fn pcf(pre: &[i64], per: &[i64]) -> QuadSurd {
        PeriodicCFrac::from_i64(pre, per).unwrap().value()
    }

    #[test]
    fn blocked_z_examples() {
        let b0 = ClassTuple::b_upper(0);
        assert!(is_blocked_z(&b0, &rat(13, 2)).unwrap());
        assert!(!is_blocked_z(&b0, &rat(8, 1)).unwrap());
        assert!(is_blocked_z(&b0, &rat(6, 1)).unwrap());
        // the reductions to b > 1/2 and b > 3/4
        let b = acc_inv(&rat(13, 2), Eps::Plus).unwrap();
        assert_eq!(b, QuadSurd::new(int(78), int(15), int(251), int(17)).unwrap());
        assert!(b.cmp_rational(&rat(1, 2)) == Ordering::Greater);
        let b = acc_inv(&rat(8, 1), Eps::Plus).unwrap();
        assert_eq!(b, QuadSurd::new(int(24), int(9), int(89), int(17)).unwrap());
        assert!(b.cmp_rational(&rat(3, 4)) == Ordering::Less);
        assert!(matches!(is_blocked_z(&b0, &rat(5, 1)), Err(Error::OutOfDomain(_))));
        let formal = ct(0, -1, 1, 0, 3, -1);
        assert!(matches!(is_blocked_z(&formal, &rat(6, 1)), Err(Error::FormalClass(_))));
    }

    /// Same predicate through the normalized surd `acc_inv(z)`.
    fn blocked_via_surd(c: &ClassTuple, z: &Rational) -> Option<bool> {
        let b = acc_inv(z, c.eps).ok()?;
        if b.signum() == Ordering::Less {
            return None;
        }
        let (k0, k1) = margin_coefficients(c, z);
        Some(b.mul_q(&k1).add_q(&k0).signum() == Ordering::Greater)
    }

    proptest! {
        #[test]
        fn root_sign_matches_surd_route(p in 583i64..1200, q in 60i64..200, k in 0usize..4) {
            let z = rat(p, q);
            let c = [ClassTuple::b_upper(0), ClassTuple::e_one(0), ClassTuple::b_upper(1),
                     ct(15, 4, 35, 6, 3, -1)][k].clone();
            prop_assume!(QuadSurd::from_rational(&z) > a_min());
            let fast = is_blocked_z(&c, &z).ok();
            prop_assert_eq!(fast, blocked_via_surd(&c, &z));
        }
    }

    #[test]
    fn blocked_b_matches_blocked_z() {
        let b0 = ClassTuple::b_upper(0);
        // J_{B0} contains 3/5 (acc(3/5) = 6.5..) and not 0.7 (z above 7.17)
        assert!(is_blocked_b(&b0, &rat(3, 5)).unwrap());
        assert!(!is_blocked_b(&b0, &rat(9, 10)).unwrap());
        for (num, den) in [(1, 2), (3, 5), (13, 20), (7, 10), (4, 5)] {
            let b = rat(num, den);
            let z = acc(&b).unwrap();
            let iv = blocked_interval(&b0, &lbl("0:0")).unwrap();
            assert_eq!(is_blocked_b(&b0, &b).unwrap(), iv.contains_z(&z), "b = {b}");
        }
    }

    #[test]
    fn farey_endpoints() {
        let iv = blocked_interval(&ClassTuple::b_upper(0), &lbl("0:0")).unwrap();
        assert_eq!(iv.z_lo, pcf(&[], &[5, 1]));
        assert_eq!(iv.z_hi, pcf(&[7], &[5, 1]));
        assert_eq!(iv.z_hi, QuadSurd::new(int(65), int(3), int(10), int(5)).unwrap());
        let iv = blocked_interval(&ClassTuple::b_upper(1), &lbl("0:1")).unwrap();
        assert_eq!((iv.z_lo, iv.z_hi), (pcf(&[], &[7, 3]), pcf(&[9], &[7, 3])));
        let iv = blocked_interval(&ClassTuple::e_one(0), &lbl("0:.1")).unwrap();
        assert_eq!((iv.z_lo, iv.z_hi), (pcf(&[7], &[5, 3, 1, 7]), pcf(&[7], &[3, 5, 7, 1])));
    }

    #[test]
    fn interval_errors() {
        assert!(matches!(blocked_interval(&ClassTuple::b_upper(1), &lbl("0:.1")), Err(Error::NotInTree(_))));
    }

    #[test]
    fn bisection_brackets_exact_endpoints() {
        let tol = rat(1, 1_000_000);
        for (label, c) in [("0:0", ClassTuple::b_upper(0)), ("0:.1", class_from_center(&int(29), &int(4)).unwrap())] {
            let exact = blocked_interval(&c, &lbl(label)).unwrap();
            let approx = blocked_interval_bisect(&c, &tol).unwrap();
            for ((a, b), e) in [(approx.lo, exact.z_lo), (approx.hi, exact.z_hi)] {
                assert!(&b - &a <= tol);
                assert!(e.cmp_rational(&a) != Ordering::Less && e.cmp_rational(&b) != Ordering::Greater);
            }
        }
        // center 11/2 sits below 3 + 2√2
        let low = ct(5, 2, 11, 2, 1, 1);
        assert!(matches!(blocked_interval_bisect(&low, &tol), Err(Error::NoBlockedPoint(_))));
    }

    #[test]
    fn block_sets() {
        let s = block_set(0, 2, SymWord::ID).unwrap();
        assert_eq!(s.intervals.len(), 3);
        let owners: Vec<&ClassTuple> = s.intervals.iter().map(|i| &i.owner).collect();
        assert_eq!(owners, vec![&ClassTuple::b_upper(0), &ClassTuple::e_one(0), &ClassTuple::b_upper(1)]);
        assert!(s.disjoint);
        let s = block_set(0, 6, SymWord::ID).unwrap();
        assert_eq!(s.intervals.len(), 33);
        assert!(s.disjoint);
        let s = block_set(1, 2, SymWord::ID).unwrap();
        for iv in &s.intervals {
            let c = iv.owner.center().unwrap();
            assert!(c >= rat(8, 1) && c <= rat(10, 1));
        }
    }

    #[test]
    fn center_containment_and_irrational_ends() {
        for iv in block_set(0, 5, SymWord::ID).unwrap().intervals {
            let c = &iv.owner;
            assert!(iv.contains_z(&QuadSurd::from_rational(&c.center().unwrap())));
            assert!(!iv.contains_b(&QuadSurd::from_rational(&c.ratio().unwrap())));
            assert!(!iv.z_lo.is_rational() && !iv.z_hi.is_rational());
        }
    }

    #[test]
    fn endpoint_limits_agree_with_triples() {
        // the ascending staircase of T has the lower end of I_{E_ρ} as its limit
        let t = Triple::base(0).unwrap();
        let (z, _) = t.ascending().limit().unwrap();
        let iv = blocked_interval(&ClassTuple::b_upper(1), &lbl("0:1")).unwrap();
        assert_eq!(z, iv.z_lo);
        let (z, _) = t.descending().limit().unwrap();
        let iv = blocked_interval(&ClassTuple::b_upper(0), &lbl("0:0")).unwrap();
        assert_eq!(z, iv.z_hi);
    }

    #[test]
    fn density_examples() {
        assert!(density_gap(0, 1).unwrap() <= rat(1, 4));
        assert!(density_gap(0, 4).unwrap() <= rat(1, 32));
        assert!(density_gap(1, 1).unwrap() <= rat(1, 6));
        assert!(density_gap_within(0, 1, &rat(1, 4)).unwrap());
        assert!(!density_gap_within(0, 1, &rat(1, 100)).unwrap());
        let mut prev = density_gap(0, 1).unwrap();
        for l in 2..=5 {
            let g = density_gap(0, l).unwrap();
            assert!(g <= prev);
            prev = g;
        }
    }

    #[test]
    fn capacity_examples() {
        let p = capacity_lower(&rat(2, 3), &rat(6, 1), &[PoolEntry::class("B0", &ClassTuple::b_upper(0)).unwrap()]).unwrap();
        assert_eq!(p.value, QuadSurd::from_rational(&rat(18, 5)));
        assert_eq!(p.argmax, "B0");
        assert!(p.volume < p.value);
        let third = crate::symmetry::third_strand(1).unwrap();
        let p = capacity_lower(&rat(1, 5), &rat(6, 1), &[PoolEntry::class("s", &third).unwrap()]).unwrap();
        assert_eq!(p.value, QuadSurd::from_rational(&rat(5, 2)));
        assert_eq!(p.argmax, "volume");
        let p = capacity_lower(&rat(0, 1), &rat(1, 1), &[]).unwrap();
        assert_eq!(p.value, QuadSurd::from_integer(int(1)));
    }

    #[test]
    fn slope_examples() {
        let e11 = ct(27, 20, 55, 6, 33, 1);
        assert_eq!(ClassTuple::e_one(1), e11);
        assert_eq!(slope_value(&ClassTuple::b_upper(2)).unwrap(), rat(41, 77));
        assert_eq!(slope_value(&e11).unwrap(), rat(1081, 2013));
        assert!(slope_criterion(&ClassTuple::b_upper(2), &e11).unwrap());
        assert_eq!(slope_value(&ClassTuple::b_upper(1)).unwrap(), rat(17, 45));
        assert_eq!(slope_value(&ClassTuple::e_one(0)).unwrap(), rat(161, 429));
        assert!(!slope_criterion(&ClassTuple::b_upper(1), &ClassTuple::e_one(0)).unwrap());
        let a = ClassTuple::from_pqt(int(47), int(8), int(5), Eps::Minus).unwrap();
        let b = ClassTuple::from_pqt(int(170), int(29), int(13), Eps::Minus).unwrap();
        assert!(slope_criterion(&a, &b).unwrap());
    }

    #[test]
    fn cantor_examples() {
        let c = cantor_coordinate(&lbl("0:.1")).unwrap();
        assert_eq!((c.lo, c.hi), (rat(1, 3), rat(2, 3)));
        let c = cantor_coordinate(&lbl("0:.01")).unwrap();
        assert_eq!((c.lo, c.hi), (rat(1, 9), rat(2, 9)));
        let c = cantor_coordinate(&lbl("0:L")).unwrap();
        assert_eq!((c.lo.clone(), c.hi.clone(), c.lo_closed, c.hi_closed), (rat(-1, 1), rat(0, 1), true, false));
        let c = cantor_coordinate(&lbl("0:.21")).unwrap();
        assert_eq!((c.lo, c.hi), (rat(7, 9), rat(8, 9)));
    }

    #[test]
    fn cantor_order_matches_z_order() {
        let set = block_set(0, 5, SymWord::ID).unwrap();
        let images: Vec<CantorImage> =
            set.intervals.iter().map(|iv| cantor_coordinate(iv.label.as_ref().unwrap()).unwrap()).collect();
        assert!(images.windows(2).all(|w| w[0].hi <= w[1].lo));
    }

    #[test]
    fn scan_small() {
        let pool = class_pool(0, 6, &[SymWord::ID]).unwrap();
        let r = rational_blocked_scan(&rat(6, 1), &rat(8, 1), 6, &pool, None).unwrap();
        assert!(r.misses.is_empty(), "{:?}", r.misses);
        assert_eq!(r.checked, r.blocked);
        let six = find_blocking(&rat(6, 1), &pool).unwrap();
        assert_eq!(six.class, ClassTuple::b_upper(0));
    }

    #[test]
    fn v3_flag_on_plus_side() {
        let fams = scan_families(Some(Eps::Plus));
        let pool = class_pool(3, 4, &fams).unwrap();
        let r = rational_blocked_scan(&rat(35, 6), &rat(35, 6), 6, &pool, Some(Eps::Plus)).unwrap();
        assert_eq!(r.flags, vec![ScanFlag { z: rat(35, 6), i: 3 }]);
        assert!(r.misses.is_empty());
        // the minus side blocks it with S(B^U_0)
        let minus = class_pool(3, 4, &scan_families(Some(Eps::Minus))).unwrap();
        assert_eq!(find_blocking(&rat(35, 6), &minus).unwrap().class, ct(15, 4, 35, 6, 3, -1));
    }

    fn interval_at(addr: &Address) -> BlockedInterval {
        let l = Label::new(0, SymWord::ID, addr.clone());
        blocked_interval(&class_at_label(&l).unwrap(), &l).unwrap()
    }

    #[test]
    fn staircase_limits_are_interval_ends() {
        for nd in enumerate_tree(0, 4, SymWord::ID).unwrap().into_iter().filter(|n| n.level >= 2) {
            let t = nd.triple.unwrap();
            let (lv, rv) = nd.label.addr.vertices().unwrap();
            assert_eq!(t.ascending().limit().unwrap().0, interval_at(&rv).z_lo, "{}", nd.label);
            assert_eq!(t.descending().limit().unwrap().0, interval_at(&lv).z_hi, "{}", nd.label);
        }
    }

    #[test]
    fn middle_center_has_shortest_weight() {
        use crate::cf::weights;
        for nd in enumerate_tree(0, 4, SymWord::ID).unwrap().into_iter().filter(|n| n.level >= 2) {
            let (lv, rv) = nd.label.addr.vertices().unwrap();
            let (lo, hi) = (interval_at(&lv).z_hi, interval_at(&rv).z_lo);
            let center = nd.class.center().unwrap();
            let own = weights(&center).unwrap().len_wt();
            for den in 1..=40i64 {
                let from = lo.floor_scaled(0) * den;
                for num in 0..=(3 * den) {
                    let z = Rational::new(&from + num, den.into());
                    if z == center || !(lo.cmp_rational(&z).is_lt() && hi.cmp_rational(&z).is_gt()) {
                        continue;
                    }
                    assert!(weights(&z).unwrap().len_wt() > own, "{} vs {z}", nd.label);
                }
            }
        }
    }
}
