//! Exact rationals, values in `Q/Z`, and exhaustive congruence solving.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
pub use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest modulus the exhaustive solvers are meant for.
pub const MAX_CONGRUENCE_MODULUS: u64 = 1_000_000;

/// `num / den` in lowest terms; a zero denominator is an error.
pub fn rational(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<BigRational> {
    let den = den.into();
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(BigRational::new(num.into(), den))
}

pub(crate) fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

pub(crate) fn int(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

/// Parses `"a/b"` or `"a"`, reducing to lowest terms. Leading `+` and
/// surrounding whitespace are not accepted.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let parse_int = |t: &str| -> Result<BigInt> {
        let digits = t.strip_prefix('-').unwrap_or(t);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Parse(s.to_string()));
        }
        t.parse::<BigInt>().map_err(|_| Error::Parse(s.to_string()))
    };
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(parse_int(s)?)),
        Some((n, d)) => {
            let n = parse_int(n)?;
            let d = parse_int(d)?;
            rational(n, d)
        }
    }
}

/// Parses the canonical text form only: lowest terms, positive denominator,
/// no `/1`. Non-canonical strings such as `"2/4"` are rejected.
pub fn parse_canonical(s: &str) -> Result<BigRational> {
    let r = parse_rational(s)?;
    if r.to_string() != s {
        return Err(Error::NonCanonical(s.to_string()));
    }
    Ok(r)
}

fn floor_frac(r: &BigRational) -> BigRational {
    r - r.floor()
}

/// A rational modulo the integers, stored as its representative in `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QmodZ(BigRational);

impl QmodZ {
    pub fn new(r: &BigRational) -> Self {
        QmodZ(floor_frac(r))
    }

    pub fn zero() -> Self {
        QmodZ(BigRational::zero())
    }

    pub fn from_frac(num: i64, den: i64) -> Result<Self> {
        Ok(Self::new(&rational(num, den)?))
    }

    /// The canonical representative in `[0, 1)`.
    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn into_value(self) -> BigRational {
        self.0
    }

    /// The representative in `(-1/2, 1/2]`.
    pub fn symmetric(&self) -> BigRational {
        let half = ratio(1, 2);
        if self.0 > half {
            &self.0 - BigRational::one()
        } else {
            self.0.clone()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Multiplies by an integer.
    pub fn times(&self, k: i64) -> Self {
        QmodZ::new(&(&self.0 * int(k)))
    }
}

/// Reduces a rational modulo 1.
pub fn qmodz_reduce(r: &BigRational) -> QmodZ {
    QmodZ::new(r)
}

impl From<BigRational> for QmodZ {
    fn from(r: BigRational) -> Self {
        QmodZ::new(&r)
    }
}

impl fmt::Display for QmodZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for QmodZ {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl Add for QmodZ {
    type Output = QmodZ;
    fn add(self, rhs: QmodZ) -> QmodZ {
        QmodZ::new(&(self.0 + rhs.0))
    }
}

impl<'a> Add<&'a QmodZ> for &'a QmodZ {
    type Output = QmodZ;
    fn add(self, rhs: &QmodZ) -> QmodZ {
        QmodZ::new(&(&self.0 + &rhs.0))
    }
}

impl Sub for QmodZ {
    type Output = QmodZ;
    fn sub(self, rhs: QmodZ) -> QmodZ {
        QmodZ::new(&(self.0 - rhs.0))
    }
}

impl<'a> Sub<&'a QmodZ> for &'a QmodZ {
    type Output = QmodZ;
    fn sub(self, rhs: &QmodZ) -> QmodZ {
        QmodZ::new(&(&self.0 - &rhs.0))
    }
}

impl Neg for QmodZ {
    type Output = QmodZ;
    fn neg(self) -> QmodZ {
        QmodZ::new(&-self.0)
    }
}

impl Neg for &QmodZ {
    type Output = QmodZ;
    fn neg(self) -> QmodZ {
        QmodZ::new(&-&self.0)
    }
}

impl Mul<i64> for &QmodZ {
    type Output = QmodZ;
    fn mul(self, k: i64) -> QmodZ {
        self.times(k)
    }
}

/// `v mod m` in `[0, m)`.
pub fn mod_floor(v: i128, m: u64) -> u64 {
    v.rem_euclid(m as i128) as u64
}

pub(crate) fn bigint_mod(v: &BigInt, m: u64) -> u64 {
    let r = v.mod_floor(&BigInt::from(m));
    // fits: 0 <= r < m
    r.iter_u64_digits().next().unwrap_or(0)
}

/// A sorted set of residues modulo `modulus`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ResidueSet {
    modulus: u64,
    residues: BTreeSet<u64>,
}

impl ResidueSet {
    pub fn empty(modulus: u64) -> Self {
        assert!(modulus >= 1, "modulus must be positive");
        ResidueSet { modulus, residues: BTreeSet::new() }
    }

    /// Collects the residues in `[0, modulus)` satisfying `pred`.
    pub fn from_predicate(modulus: u64, mut pred: impl FnMut(u64) -> bool) -> Self {
        assert!(modulus >= 1, "modulus must be positive");
        ResidueSet { modulus, residues: (0..modulus).filter(|&a| pred(a)).collect() }
    }

    pub fn from_residues(modulus: u64, residues: impl IntoIterator<Item = i64>) -> Self {
        assert!(modulus >= 1, "modulus must be positive");
        let residues = residues.into_iter().map(|r| mod_floor(r as i128, modulus)).collect();
        ResidueSet { modulus, residues }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn len(&self) -> usize {
        self.residues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }

    pub fn contains(&self, a: i64) -> bool {
        self.residues.contains(&mod_floor(a as i128, self.modulus))
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.residues.iter().copied()
    }

    pub fn to_vec(&self) -> Vec<u64> {
        self.iter().collect()
    }

    pub fn retain(&mut self, mut keep: impl FnMut(u64) -> bool) {
        self.residues.retain(|&a| keep(a));
    }

    /// True if `a` in the set implies `-a` in the set.
    pub fn is_symmetric(&self) -> bool {
        self.iter().all(|a| self.residues.contains(&((self.modulus - a) % self.modulus)))
    }

    /// The smallest divisor `d` of the modulus such that membership depends
    /// only on the residue mod `d`.
    pub fn period(&self) -> u64 {
        let m = self.modulus;
        (1..=m)
            .filter(|d| m % d == 0)
            .find(|&d| self.iter().all(|a| self.residues.contains(&((a + d) % m))))
            .unwrap_or(m)
    }

    /// Human-readable form, collapsed to its period. A symmetric set prints as
    /// `±r1, ±r2 mod d`; anything else lists its residues mod `d`.
    pub fn pretty(&self) -> String {
        if self.is_empty() {
            return "none".to_string();
        }
        let d = self.period();
        let base: Vec<u64> = self.iter().filter(|&a| a < d).collect();
        let symmetric = base.iter().all(|&a| base.contains(&((d - a) % d)));
        let parts: Vec<String> = if symmetric {
            base.iter()
                .filter(|&&a| 2 * a <= d)
                .map(|&a| if a == 0 || 2 * a == d { a.to_string() } else { format!("±{a}") })
                .collect()
        } else {
            base.iter().map(u64::to_string).collect()
        };
        format!("{} mod {}", parts.join(", "), d)
    }
}

impl Serialize for ResidueSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("ResidueSet", 3)?;
        st.serialize_field("modulus", &self.modulus)?;
        st.serialize_field("residues", &self.to_vec())?;
        st.serialize_field("pretty", &self.pretty())?;
        st.end()
    }
}

/// All `a` in `[0, m)` with `coeff * a^2 ≡ c (mod m)`, by exhaustive search.
pub fn solve_quadratic_congruence(coeff: &BigInt, c: &BigInt, m: u64) -> ResidueSet {
    assert!(m >= 1, "modulus must be positive");
    let coeff = bigint_mod(coeff, m) as u128;
    let c = bigint_mod(c, m) as u128;
    let m128 = m as u128;
    ResidueSet::from_predicate(m, |a| {
        let a = a as u128;
        (coeff * (a * a % m128)) % m128 == c
    })
}

/// All `a` in `[0, m)` with `a^2 ≡ c (mod m)`, by exhaustive search.
pub fn solve_square_congruence(c: i64, m: u64) -> ResidueSet {
    solve_quadratic_congruence(&BigInt::one(), &BigInt::from(c), m)
}

/// Whether `c` is a square modulo `m`.
pub fn is_quadratic_residue(c: i64, m: u64) -> bool {
    assert!(m >= 1, "modulus must be positive");
    let target = mod_floor(c as i128, m) as u128;
    let m128 = m as u128;
    (0..m).any(|a| (a as u128 * a as u128) % m128 == target)
}

pub(crate) fn is_odd_positive(v: i64) -> bool {
    v > 0 && v % 2 != 0
}
