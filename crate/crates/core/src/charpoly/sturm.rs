//! Sturm chains over the rationals and certified bisection for least roots.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::{IntPoly, PolyError};

pub const DEFAULT_ROOT_TOL: f64 = 1e-12;

const MAX_COMPARE_STEPS: usize = 4096;

type RatPoly = Vec<BigRational>;

fn trim(p: &mut RatPoly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

/// Remainder of `a` divided by `b` (`b` nonzero).
fn rem(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lead = b[db].clone();
    while r.len() > db {
        let k = r.len() - 1 - db;
        let c = r.last().expect("nonempty") / &lead;
        for (i, bi) in b.iter().enumerate() {
            r[k + i] -= &c * bi;
        }
        r.pop();
        trim(&mut r);
    }
    trim(&mut r);
    r
}

/// Scales by a positive constant so the leading coefficient is ±1.
fn normalize(mut p: RatPoly) -> RatPoly {
    if let Some(l) = p.last() {
        let s = l.abs();
        for c in p.iter_mut() {
            *c /= &s;
        }
    }
    p
}

fn gcd(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_empty() {
        let r = rem(&x, &y);
        x = y;
        y = r;
    }
    normalize(x)
}

/// Sturm sequence `p, p', −rem(p, p'), ...`.
///
/// For `a < b` with `p(a) ≠ 0`, `variations(a) − variations(b)` is the number
/// of distinct real roots in `(a, b]`, including repeated roots.
#[derive(Debug, Clone)]
pub struct SturmChain {
    seq: Vec<RatPoly>,
    /// `seq` scaled by positive integers to integer coefficients; signs are
    /// evaluated on these without rational normalization.
    int_seq: Vec<Vec<BigInt>>,
}

fn clear_denominators(p: &RatPoly) -> Vec<BigInt> {
    let l = p.iter().fold(BigInt::from(1), |acc, c| num_integer::lcm(acc, c.denom().clone()));
    p.iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect()
}

/// Sign of `p(n/d)` for `d > 0`, via `d^deg · p(n/d)` in integers.
fn sign_at(p: &[BigInt], n: &BigInt, d: &BigInt) -> i8 {
    // homogeneous Horner: acc ← acc·n + c_i·d^(deg−i)
    let mut acc = BigInt::zero();
    let mut dpow = BigInt::from(1);
    let mut first = true;
    for c in p.iter().rev() {
        if first {
            acc = c.clone();
            first = false;
        } else {
            dpow *= d;
            acc = acc * n + c * &dpow;
        }
    }
    if acc.is_positive() {
        1
    } else if acc.is_negative() {
        -1
    } else {
        0
    }
}

impl SturmChain {
    pub fn new(p: &IntPoly) -> Result<Self, PolyError> {
        match p.degree() {
            None | Some(0) => return Err(PolyError::Constant),
            _ => {}
        }
        let p0 = normalize(p.to_rational());
        let p1 = normalize(p.derivative().to_rational());
        let mut seq = vec![p0, p1];
        loop {
            let n = seq.len();
            let r = rem(&seq[n - 2], &seq[n - 1]);
            if r.is_empty() {
                break;
            }
            seq.push(normalize(r.into_iter().map(|c| -c).collect()));
        }
        let int_seq = seq.iter().map(clear_denominators).collect();
        Ok(Self { seq, int_seq })
    }

    fn variations<I: Iterator<Item = i8>>(signs: I) -> usize {
        let mut last = 0i8;
        let mut count = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    pub fn variations_at(&self, x: &BigRational) -> usize {
        let (n, d) = (x.numer(), x.denom());
        Self::variations(self.int_seq.iter().map(|p| sign_at(p, n, d)))
    }

    fn variations_at_infinity(&self, negative: bool) -> usize {
        Self::variations(self.seq.iter().map(|p| {
            let lead_pos = p.last().is_some_and(|c| c.is_positive());
            let odd = (p.len() - 1) % 2 == 1;
            let s = if lead_pos { 1 } else { -1 };
            if negative && odd {
                -s
            } else {
                s
            }
        }))
    }

    /// Number of distinct real roots.
    pub fn total_roots(&self) -> usize {
        self.variations_at_infinity(true) - self.variations_at_infinity(false)
    }

    /// Distinct roots in `(a, b]`; `a` must not be a root.
    pub fn count_in(&self, a: &BigRational, b: &BigRational) -> usize {
        self.variations_at(a).saturating_sub(self.variations_at(b))
    }

    /// Integer `B` with every real root in `(−B, B)`.
    pub fn root_bound(&self) -> BigRational {
        let p = &self.seq[0];
        let lead = p.last().expect("nonconstant").abs();
        let m = p.iter().map(|c| c.abs() / &lead).fold(BigRational::zero(), |a, b| if b > a { b } else { a });
        BigRational::from_integer(m.ceil().to_integer() + BigInt::from(2))
    }
}

/// Closed interval `[lo, hi]` holding a real root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootBracket {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RootBracket {
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn lo_f64(&self) -> f64 {
        self.lo.to_f64().unwrap_or(f64::NAN)
    }

    pub fn hi_f64(&self) -> f64 {
        self.hi.to_f64().unwrap_or(f64::NAN)
    }

    pub fn midpoint_f64(&self) -> f64 {
        ((&self.lo + &self.hi) / BigRational::from_integer(2.into())).to_f64().unwrap_or(f64::NAN)
    }

    /// Whether every point of `self` is strictly below every point of `other`.
    pub fn strictly_below(&self, other: &Self) -> bool {
        self.hi < other.lo
    }
}

impl Serialize for RootBracket {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("RootBracket", 3)?;
        st.serialize_field("lo", &self.lo.to_string())?;
        st.serialize_field("hi", &self.hi.to_string())?;
        st.serialize_field("approx", &self.midpoint_f64())?;
        st.end()
    }
}

/// Bisection state for the least real root: no root lies in `(−∞, lo]` and
/// at least one lies in `(lo, hi]`.
struct LeastRoot {
    chain: SturmChain,
    lo: BigRational,
    hi: BigRational,
}

impl LeastRoot {
    fn new(p: &IntPoly) -> Result<Self, PolyError> {
        let chain = SturmChain::new(p)?;
        if chain.total_roots() == 0 {
            return Err(PolyError::NoRealRoot);
        }
        let b = chain.root_bound();
        Ok(Self { chain, lo: -b.clone(), hi: b })
    }

    fn step(&mut self) {
        let mid = (&self.lo + &self.hi) / BigRational::from_integer(2.into());
        if self.chain.count_in(&self.lo, &mid) >= 1 {
            self.hi = mid;
        } else {
            self.lo = mid;
        }
    }

    fn isolated(&self) -> bool {
        self.chain.count_in(&self.lo, &self.hi) == 1
    }

    fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    fn bracket(&self) -> RootBracket {
        RootBracket { lo: self.lo.clone(), hi: self.hi.clone() }
    }
}

/// Bracket of width at most `tol` around the least real root of `p`.
pub fn least_real_root(p: &IntPoly, tol: f64) -> Result<RootBracket, PolyError> {
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(PolyError::BadTolerance);
    }
    let tol = BigRational::from_float(tol).ok_or(PolyError::BadTolerance)?;
    let mut s = LeastRoot::new(p)?;
    while s.width() > tol {
        s.step();
    }
    Ok(s.bracket())
}

/// Number of distinct real roots.
pub fn real_root_count(p: &IntPoly) -> Result<usize, PolyError> {
    Ok(SturmChain::new(p)?.total_roots())
}

/// Certified comparison of the least real roots of `a` and `b`.
///
/// Brackets are bisected until they are disjoint. Equal roots are detected
/// exactly: both brackets isolate a single root and `gcd(a, b)` has a root
/// in their intersection.
pub fn compare_least_roots(a: &IntPoly, b: &IntPoly) -> Result<Ordering, PolyError> {
    let mut ra = LeastRoot::new(a)?;
    let mut rb = LeastRoot::new(b)?;
    let g = gcd(&a.to_rational(), &b.to_rational());
    let shared = if g.len() >= 2 {
        Some(SturmChain::new(&IntPoly::new(clear_denominators(&g)))?)
    } else {
        None
    };
    for _ in 0..MAX_COMPARE_STEPS {
        if ra.hi < rb.lo {
            return Ok(Ordering::Less);
        }
        if rb.hi < ra.lo {
            return Ok(Ordering::Greater);
        }
        if let Some(gc) = &shared {
            if ra.isolated() && rb.isolated() {
                let lo = if ra.lo > rb.lo { &ra.lo } else { &rb.lo };
                let hi = if ra.hi < rb.hi { &ra.hi } else { &rb.hi };
                if lo < hi && gc.count_in(lo, hi) >= 1 {
                    return Ok(Ordering::Equal);
                }
            }
        }
        if ra.width() >= rb.width() {
            ra.step();
        } else {
            rb.step();
        }
    }
    Err(PolyError::NotSeparated(MAX_COMPARE_STEPS))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn square_minus_one() {
        let p = IntPoly::from_i64(&[-1, 0, 1]);
        let b = least_real_root(&p, 1e-12).unwrap();
        assert!(b.lo <= rat(-1, 1) && rat(-1, 1) <= b.hi);
        assert!(b.width() <= BigRational::from_float(1e-12).unwrap());
        assert_eq!(real_root_count(&p).unwrap(), 2);
    }

    #[test]
    fn sqrt_two() {
        let p = IntPoly::from_i64(&[-2, 0, 1]);
        let b = least_real_root(&p, 1e-12).unwrap();
        assert!((b.midpoint_f64() + 2f64.sqrt()).abs() < 1e-12);
        assert!(b.lo < b.hi);
        assert!(p.eval(&b.lo).is_positive() && p.eval(&b.hi).is_negative());
    }

    #[test]
    fn repeated_roots() {
        // (λ + 3)² (λ − 1)
        let p = IntPoly::from_i64(&[-9, 3, 5, 1]);
        assert_eq!(real_root_count(&p).unwrap(), 2);
        let b = least_real_root(&p, 1e-9).unwrap();
        assert!((b.midpoint_f64() + 3.0).abs() < 1e-9);
    }

    #[test]
    fn errors() {
        assert_eq!(least_real_root(&IntPoly::from_i64(&[1, 0, 1]), 1e-9), Err(PolyError::NoRealRoot));
        assert_eq!(least_real_root(&IntPoly::from_i64(&[5]), 1e-9), Err(PolyError::Constant));
        assert_eq!(least_real_root(&IntPoly::zero(), 1e-9), Err(PolyError::Constant));
        assert_eq!(least_real_root(&IntPoly::from_i64(&[0, 1]), 0.0), Err(PolyError::BadTolerance));
    }

    #[test]
    fn root_at_zero() {
        let p = IntPoly::from_i64(&[0, 1]);
        let b = least_real_root(&p, 1e-6).unwrap();
        assert!(b.lo <= BigRational::zero() && BigRational::zero() <= b.hi);
    }

    #[test]
    fn comparisons() {
        let a = IntPoly::from_i64(&[-2, 0, 1]); // −√2
        let b = IntPoly::from_i64(&[-3, 0, 1]); // −√3
        assert_eq!(compare_least_roots(&a, &b).unwrap(), Ordering::Greater);
        assert_eq!(compare_least_roots(&b, &a).unwrap(), Ordering::Less);
        // both have least root −√2
        let c = &a * &IntPoly::from_i64(&[-7, 1]);
        assert_eq!(compare_least_roots(&a, &c).unwrap(), Ordering::Equal);
        // share a root, but not the least one
        let d = &a * &IntPoly::from_i64(&[5, 1]);
        assert_eq!(compare_least_roots(&a, &d).unwrap(), Ordering::Greater);
        // rational roots that meet exactly at a bisection point
        let e = IntPoly::from_i64(&[2, 1]);
        let f = IntPoly::from_i64(&[4, 4, 1]);
        assert_eq!(compare_least_roots(&e, &f).unwrap(), Ordering::Equal);
    }
}
