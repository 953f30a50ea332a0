//! Exact rational scalars and small vector helpers.
//!
//! Every geometric quantity in this crate (moment images, regular values,
//! chamber representatives, polytope offsets) is an exact rational; no
//! floating point is used anywhere. The wire format for a rational is the
//! string `"p/q"` (or `"p"` when the denominator is 1).

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// An exact rational number.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rat(BigRational);

#[derive(Debug, Error)]
#[error("invalid rational literal {input:?}: {reason}")]
pub struct ParseRatError {
    pub input: String,
    pub reason: String,
}

impl Rat {
    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    pub fn from_int(v: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Rat(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// -1, 0 or +1.
    pub fn signum(&self) -> i8 {
        if self.0.is_zero() {
            0
        } else if self.0.is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn abs(&self) -> Self {
        Rat(self.0.abs())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn inner(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for Rat {
    fn from(r: BigRational) -> Self {
        Rat(r)
    }
}

impl From<BigInt> for Rat {
    fn from(i: BigInt) -> Self {
        Rat(BigRational::from_integer(i))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for &Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat((&self.0).$method(&rhs.0))
            }
        }
        impl $trait for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat(self.0.$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div for &Rat {
    type Output = Rat;
    fn div(self, rhs: &Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero");
        Rat(&self.0 / &rhs.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        self.0 += &rhs.0;
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Rat {
    type Err = ParseRatError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |reason: &str| ParseRatError {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let s = s.trim();
        let (num_s, den_s) = match s.split_once('/') {
            Some((a, b)) => (a.trim(), Some(b.trim())),
            None => (s, None),
        };
        let numer = BigInt::from_str(num_s).map_err(|e| bad(&e.to_string()))?;
        let denom = match den_s {
            Some(d) => BigInt::from_str(d).map_err(|e| bad(&e.to_string()))?,
            None => BigInt::one(),
        };
        if denom.is_zero() {
            return Err(bad("zero denominator"));
        }
        Ok(Rat(BigRational::new(numer, denom)))
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(de::Error::custom)
    }
}

/// Parse a comma-separated vector of rationals, e.g. `"1/3,1/4"`.
pub fn parse_rat_vec(s: &str) -> Result<Vec<Rat>, ParseRatError> {
    s.split(',').map(|part| part.parse()).collect()
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    assert_eq!(a.len(), b.len(), "dot of mismatched lengths");
    let mut acc = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        acc += &(x * y);
    }
    acc
}

pub fn vec_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_neg(a: &[Rat]) -> Vec<Rat> {
    a.iter().map(|x| -x).collect()
}

pub fn is_zero_vec(a: &[Rat]) -> bool {
    a.iter().all(Rat::is_zero)
}

/// Scale a nonzero rational vector to the primitive integer vector on the
/// same ray, keeping its direction (no sign normalization).
pub fn primitive_direction(v: &[Rat]) -> Vec<BigInt> {
    assert!(!is_zero_vec(v), "primitive direction of zero vector");
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let mut ints: Vec<BigInt> = v
        .iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    for x in &mut ints {
        *x = &*x / &g;
    }
    ints
}

/// Primitive integer vector spanning the same line, with the first nonzero
/// entry positive. Two rational vectors are proportional iff they canonicalize
/// to the same result.
pub fn canonical_line_normal(v: &[Rat]) -> Vec<BigInt> {
    let mut ints = primitive_direction(v);
    if let Some(first) = ints.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in &mut ints {
                *x = -&*x;
            }
        }
    }
    ints
}

/// Reduce an integer vector mod 2 into a 0/1 vector.
pub fn mod2(v: &[BigInt]) -> Vec<u8> {
    v.iter().map(|x| if x.is_odd() { 1 } else { 0 }).collect()
}

/// Solve the square system `a * x = b` by exact Gaussian elimination.
/// Returns `None` when the matrix is singular.
pub fn solve_square(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = a.len();
    assert!(a.iter().all(|row| row.len() == n) && b.len() == n);
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let inv = m[col][col].clone();
        for j in col..=n {
            m[col][j] = &m[col][j] / &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for j in col..=n {
                    let delta = &factor * &m[col][j];
                    m[r][j] = &m[r][j] - &delta;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

/// Exact determinant of a square integer matrix (cofactor expansion; the
/// matrices here are at most 4x4).
pub fn det_int(a: &[Vec<BigInt>]) -> BigInt {
    let n = a.len();
    assert!(a.iter().all(|row| row.len() == n));
    match n {
        0 => BigInt::one(),
        1 => a[0][0].clone(),
        _ => {
            let mut acc = BigInt::zero();
            for (j, top) in a[0].iter().enumerate() {
                if top.is_zero() {
                    continue;
                }
                let minor: Vec<Vec<BigInt>> = a[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(c, _)| *c != j)
                            .map(|(_, x)| x.clone())
                            .collect()
                    })
                    .collect();
                let term = top * det_int(&minor);
                if j % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }
    }
}
