//! Exact integer polynomials in λ, characteristic polynomials, the
//! closed-form polynomials of the `U(p, q)` and `U'(p)` families, and
//! certified root isolation.
//!
//! Characteristic polynomials follow the convention `det(A − λI)`, so the
//! leading coefficient of an order-`n` matrix is `(−1)ⁿ`.

mod quotient;
mod sturm;

pub use quotient::{class_quotient, quotient_matrix_u, quotient_matrix_uprime, QuotientMatrix};
pub use sturm::{compare_least_roots, least_real_root, real_root_count, RootBracket, SturmChain, DEFAULT_ROOT_TOL};

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::families::FamilyError;
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomial is constant")]
    Constant,
    #[error("polynomial has no real root")]
    NoRealRoot,
    #[error("root tolerance must be positive")]
    BadTolerance,
    #[error("root comparison did not separate after {0} refinements")]
    NotSeparated(usize),
    #[error(transparent)]
    Parameter(#[from] FamilyError),
}

/// Dense polynomial with big-integer coefficients in ascending degree.
/// Trailing zeros are trimmed, so the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into()])
    }

    /// `λ + c`.
    pub fn linear(c: i64) -> Self {
        Self::from_i64(&[c, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `λ^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    }

    /// Floating-point evaluation, for diagnostics only.
    pub fn eval_f64(&self, x: f64) -> f64 {
        use num_traits::ToPrimitive;
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::constant(1), |acc, _| &acc * self)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn to_rational(&self) -> Vec<BigRational> {
        self.coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect()
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: IntPoly) -> IntPoly { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => f.write_str("λ")?,
                (1, false) => write!(f, "{a}λ")?,
                (_, true) => write!(f, "λ^{i}")?,
                (_, false) => write!(f, "{a}λ^{i}")?,
            }
        }
        Ok(())
    }
}

/// Coefficients serialize as decimal strings, ascending degree.
impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(|c| c.to_string()))
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw: Vec<String> = Vec::deserialize(d)?;
        raw.iter()
            .map(|s| s.parse::<BigInt>().map_err(serde::de::Error::custom))
            .collect::<Result<Vec<_>, _>>()
            .map(IntPoly::new)
    }
}

/// `det(A − λI)` of an integer matrix, by the Faddeev-LeVerrier recurrence.
///
/// Every division in the recurrence is exact over the integers; a nonzero
/// remainder would mean a bug and panics.
pub fn char_poly_matrix(a: &[Vec<BigInt>]) -> IntPoly {
    let n = a.len();
    assert!(a.iter().all(|r| r.len() == n), "matrix must be square");
    // c[k] is the coefficient of λ^k in det(λI − A).
    let mut c = vec![BigInt::zero(); n + 1];
    c[n] = BigInt::one();
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = BigInt::zero();
                for (l, a_il) in a[i].iter().enumerate() {
                    if !a_il.is_zero() && !m[l][j].is_zero() {
                        s += a_il * &m[l][j];
                    }
                }
                next[i][j] = s;
            }
            next[i][i] += &c[n - k + 1];
        }
        m = next;
        // c_{n-k} = −tr(A M_k) / k
        let mut tr = BigInt::zero();
        for i in 0..n {
            for l in 0..n {
                if !a[i][l].is_zero() {
                    tr += &a[i][l] * &m[l][i];
                }
            }
        }
        let (q, r) = tr.div_rem(&BigInt::from(k));
        assert!(r.is_zero(), "Faddeev-LeVerrier division by {k} left remainder {r}");
        c[n - k] = -q;
    }
    let poly = IntPoly::new(c);
    if n % 2 == 1 {
        -&poly
    } else {
        poly
    }
}

/// `det(A(g) − λI)`.
pub fn char_poly(g: &Graph) -> IntPoly {
    let n = g.order();
    let a: Vec<Vec<BigInt>> =
        (0..n).map(|u| (0..n).map(|v| BigInt::from(g.has_edge(u, v) as u8)).collect()).collect();
    char_poly_matrix(&a)
}

fn check(family: &'static str, param: &'static str, min: usize, got: usize) -> Result<(), PolyError> {
    if got < min {
        Err(FamilyError { family, param, min, got }.into())
    } else {
        Ok(())
    }
}

/// Closed-form degree-7 polynomial whose least root is `λ_min(U(p, q)ᶜ)`:
///
/// ```text
/// (−8+2p+2q) + (13−11p−7q+4pq)λ + (20−6q−4pq)λ² + (−1+11p+7q−7pq)λ³
///   + (−20+12p+12q−2pq)λ⁴ + (−16+6p+6q)λ⁵ + (−6+p+q)λ⁶ − λ⁷
/// ```
pub fn u_pq_poly(p: usize, q: usize) -> Result<IntPoly, PolyError> {
    check("u", "p", 1, p)?;
    check("u", "q", 3, q)?;
    let (p, q) = (p as i64, q as i64);
    Ok(IntPoly::from_i64(&[
        -8 + 2 * p + 2 * q,
        13 - 11 * p - 7 * q + 4 * p * q,
        20 - 6 * q - 4 * p * q,
        -1 + 11 * p + 7 * q - 7 * p * q,
        -20 + 12 * p + 12 * q - 2 * p * q,
        -16 + 6 * p + 6 * q,
        -6 + p + q,
        -1,
    ]))
}

/// Closed-form degree-5 polynomial whose least root is `λ_min(U'(p)ᶜ)`:
/// `(−4+2p) + (3−5p)λ + (6−p)λ² + (1+4p)λ³ + (−2+p)λ⁴ − λ⁵`.
pub fn u_prime_poly(p: usize) -> Result<IntPoly, PolyError> {
    check("uprime", "p", 1, p)?;
    let p = p as i64;
    Ok(IntPoly::from_i64(&[-4 + 2 * p, 3 - 5 * p, 6 - p, 1 + 4 * p, -2 + p, -1]))
}

/// `(λ + 1)² · u_prime_poly(p)`, degree 7. Shares the least root of
/// [`u_prime_poly`] because that root lies below −1.
pub fn u_prime_poly_padded(p: usize) -> Result<IntPoly, PolyError> {
    Ok(&IntPoly::linear(1).pow(2) * &u_prime_poly(p)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete, cycle};

    fn z(v: i64) -> BigInt {
        BigInt::from(v)
    }

    /// `det(M − λI)` by expansion over all permutations; entries are small
    /// integers and polynomials are dense `i64` vectors.
    fn permutation_det(a: &[Vec<i64>]) -> Vec<i64> {
        let n = a.len();
        fn mul(x: &[i64], y: &[i64]) -> Vec<i64> {
            let mut out = vec![0; x.len() + y.len() - 1];
            for (i, p) in x.iter().enumerate() {
                for (j, q) in y.iter().enumerate() {
                    out[i + j] += p * q;
                }
            }
            out
        }
        let mut total = vec![0i64; n + 1];
        let mut perm: Vec<usize> = (0..n).collect();
        let mut c = vec![0usize; n];
        let mut sign = 1i64;
        let mut add = |perm: &[usize], sign: i64| {
            let mut term = vec![sign];
            for (i, &j) in perm.iter().enumerate() {
                let entry = if i == j { vec![a[i][j], -1] } else { vec![a[i][j]] };
                term = mul(&term, &entry);
            }
            for (k, t) in term.iter().enumerate() {
                total[k] += t;
            }
        };
        add(&perm, sign);
        let mut i = 0;
        while i < n {
            if c[i] < i {
                if i % 2 == 0 {
                    perm.swap(0, i);
                } else {
                    perm.swap(c[i], i);
                }
                sign = -sign;
                add(&perm, sign);
                c[i] += 1;
                i = 0;
            } else {
                c[i] = 0;
                i += 1;
            }
        }
        total
    }

    #[test]
    fn arithmetic() {
        let a = IntPoly::from_i64(&[1, 2]);
        let b = IntPoly::from_i64(&[-1, 0, 3]);
        assert_eq!(&a * &b, IntPoly::from_i64(&[-1, -2, 3, 6]));
        assert_eq!(&a - &a, IntPoly::zero());
        assert_eq!((&a + &b).degree(), Some(2));
        assert_eq!(IntPoly::from_i64(&[0, 0, 0]).degree(), None);
        assert_eq!(b.derivative(), IntPoly::from_i64(&[0, 6]));
        assert_eq!(b.eval_int(&z(2)), z(11));
        assert_eq!(
            b.eval(&BigRational::new(z(1), z(3))),
            BigRational::new(z(-2), z(3))
        );
        assert_eq!(IntPoly::linear(1).pow(2), IntPoly::from_i64(&[1, 2, 1]));
    }

    #[test]
    fn display_and_json() {
        let p = IntPoly::from_i64(&[2, 3, 0, -1]);
        assert_eq!(p.to_string(), "-λ^3 + 3λ + 2");
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"["2","3","0","-1"]"#);
        let back: IntPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        let big = IntPoly::new(vec![BigInt::from(10).pow(30)]);
        assert_eq!(serde_json::to_string(&big).unwrap(), r#"["1000000000000000000000000000000"]"#);
    }

    #[test]
    fn small_char_polys() {
        assert_eq!(char_poly(&complete(2).unwrap()), IntPoly::from_i64(&[-1, 0, 1]));
        assert_eq!(char_poly(&complete(3).unwrap()), IntPoly::from_i64(&[2, 3, 0, -1]));
        // C_4: λ⁴ − 4λ²
        assert_eq!(char_poly(&cycle(4).unwrap()), IntPoly::from_i64(&[0, 0, -4, 0, 1]));
        assert_eq!(char_poly(&complete(1).unwrap()), IntPoly::from_i64(&[0, -1]));
    }

    #[test]
    fn char_poly_structure() {
        for n in 3..=9 {
            let g = cycle(n).unwrap();
            let p = char_poly(&g);
            assert_eq!(p.degree(), Some(n));
            assert_eq!(p.leading(), Some(&z(if n % 2 == 0 { 1 } else { -1 })));
            assert!(p.coeff(n - 1).is_zero());
            // coefficient of λ^{n-2} is (−1)^n · (−m)
            let m = z(g.edge_count() as i64);
            assert_eq!(p.coeff(n - 2), if n % 2 == 0 { -m } else { m });
        }
    }

    #[test]
    fn faddeev_matches_permutation_expansion() {
        let m = vec![vec![3, -1, 2, 0], vec![5, 0, 1, -2], vec![1, 1, 1, 1], vec![0, 4, -3, 2]];
        let big: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| z(x)).collect()).collect();
        assert_eq!(char_poly_matrix(&big), IntPoly::from_i64(&permutation_det(&m)));
    }

    #[test]
    fn family_polys_at_smallest_parameters() {
        assert_eq!(u_pq_poly(1, 3).unwrap(), IntPoly::from_i64(&[0, -7, -10, 10, 22, 8, -2, -1]));
        assert_eq!(u_prime_poly(1).unwrap(), IntPoly::from_i64(&[-2, -2, 5, 5, -1, -1]));
        assert!(u_pq_poly(0, 3).is_err());
        assert!(u_pq_poly(1, 2).is_err());
        assert!(u_prime_poly(0).is_err());
        for p in 1..=20 {
            let g = u_prime_poly(p).unwrap();
            let sq = IntPoly::from_i64(&[1, 2, 1]);
            assert_eq!(u_prime_poly_padded(p).unwrap(), &sq * &g);
            assert_eq!(u_prime_poly_padded(p).unwrap().degree(), Some(7));
        }
    }
}
