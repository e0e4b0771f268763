//! Arithmetic in cyclotomic fields `Q(ζ_n)`.
//!
//! Elements are polynomials in `ζ_n` reduced modulo the cyclotomic polynomial
//! `Φ_n`, so they always carry exactly `φ(n)` coefficients. Because `Φ_n` is
//! irreducible the quotient is a field and every nonzero element is invertible.
//!
//! Sines and cosines of rational multiples of π are exact elements:
//! with `ζ = ζ_{4p}` and `i = ζ^p`,
//!
//! ```text
//! cos(aπ/p) = (ζ^{2a} + ζ^{-2a}) / 2
//! sin(aπ/p) = (ζ^{2a} - ζ^{-2a}) / (2i)
//! ```

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use astro_float::{BigFloat, Consts};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactnum::mod_floor;
use crate::numeric::{ComplexFloat, RM};
use crate::poly::Poly;
use crate::scalar::Scalar;

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Euler's totient.
pub fn totient(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// Exact division of integer polynomials by a monic divisor.
fn div_exact_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dd = den.len() - 1;
    debug_assert!(den[dd].is_one());
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - dd];
    for top in (dd..rem.len()).rev() {
        let c = std::mem::take(&mut rem[top]);
        if c.is_zero() {
            continue;
        }
        for (j, d) in den[..dd].iter().enumerate() {
            if !d.is_zero() {
                rem[top - dd + j] -= &c * d;
            }
        }
        quot[top - dd] = c;
    }
    assert!(rem.iter().all(Zero::is_zero), "division was not exact");
    quot
}

fn phi_cache() -> &'static Mutex<HashMap<u64, Arc<Vec<BigInt>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<BigInt>>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn phi_shared(n: u64) -> Arc<Vec<BigInt>> {
    if let Some(p) = phi_cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    let mut poly = vec![BigInt::zero(); n as usize + 1];
    poly[0] = BigInt::from(-1);
    poly[n as usize] = BigInt::one();
    for d in divisors(n) {
        if d < n {
            poly = div_exact_monic(&poly, &phi_shared(d));
        }
    }
    let poly = Arc::new(poly);
    phi_cache().lock().unwrap().insert(n, poly.clone());
    poly
}

/// The `n`-th cyclotomic polynomial, lowest degree first, computed by
/// dividing `x^n - 1` by `Φ_d` for every proper divisor `d` of `n`.
pub fn cyclotomic_polynomial(n: u64) -> Vec<BigInt> {
    assert!(n >= 1, "cyclotomic_polynomial: n must be positive");
    phi_shared(n).as_ref().clone()
}

/// The field `Q(ζ_n)`, shared between its elements.
pub struct CycloField {
    order: u64,
    phi: Vec<BigInt>,
    phi_small: Vec<i64>,
    /// `x^m mod Φ_n` for `0 <= m < n`, filled on first use.
    powers: OnceLock<Vec<Vec<i64>>>,
}

impl fmt::Debug for CycloField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(ζ_{})", self.order)
    }
}

fn field_cache() -> &'static Mutex<HashMap<u64, Arc<CycloField>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<CycloField>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

impl CycloField {
    /// Builds `Q(ζ_n)` afresh.
    pub fn new(n: u64) -> Arc<Self> {
        assert!(n >= 1, "CycloField: order must be positive");
        let phi = cyclotomic_polynomial(n);
        let phi_small = phi
            .iter()
            .map(|c| c.to_i64().expect("cyclotomic coefficient exceeds i64"))
            .collect();
        Arc::new(CycloField { order: n, phi, phi_small, powers: OnceLock::new() })
    }

    /// `Q(ζ_n)` from a process-wide cache.
    pub fn get(n: u64) -> Arc<Self> {
        if let Some(f) = field_cache().lock().unwrap().get(&n) {
            return f.clone();
        }
        let f = Self::new(n);
        field_cache().lock().unwrap().entry(n).or_insert(f).clone()
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// `φ(n)`, the number of coefficients of every element.
    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    pub fn minimal_poly(&self) -> &[BigInt] {
        &self.phi
    }

    pub(crate) fn modulus(&self) -> &[i64] {
        &self.phi_small
    }

    fn power_table(&self) -> &[Vec<i64>] {
        self.powers.get_or_init(|| {
            let d = self.degree();
            let n = self.order as usize;
            let mut table = Vec::with_capacity(n);
            let mut cur = vec![0i64; d];
            if d > 0 {
                cur[0] = 1;
            }
            for _ in 0..n {
                table.push(cur.clone());
                // multiply by x and reduce
                let carry = cur.pop().unwrap_or(0);
                cur.insert(0, 0);
                if carry != 0 {
                    for (c, m) in cur.iter_mut().zip(&self.phi_small) {
                        *c -= carry * m;
                    }
                }
            }
            table
        })
    }

    /// Reduced coefficients of `ζ^k`.
    pub(crate) fn power_coeffs(&self, k: i64) -> &[i64] {
        let idx = mod_floor(k as i128, self.order) as usize;
        &self.power_table()[idx]
    }
}

/// An element of `Q(ζ_n)` with coefficients in `T`.
#[derive(Clone)]
pub struct CycloElement<T: Scalar> {
    field: Arc<CycloField>,
    coeffs: Vec<T>,
}

impl<T: Scalar> fmt::Debug for CycloElement<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CycloElement")
            .field("order", &self.field.order)
            .field("coeffs", &self.coeffs)
            .finish()
    }
}

impl<T: Scalar> PartialEq for CycloElement<T> {
    fn eq(&self, other: &Self) -> bool {
        self.field.order == other.field.order && self.coeffs == other.coeffs
    }
}

impl<T: Scalar> CycloElement<T> {
    pub fn zero(field: &Arc<CycloField>) -> Self {
        CycloElement { field: field.clone(), coeffs: vec![T::zero(); field.degree()] }
    }

    pub fn one(field: &Arc<CycloField>) -> Self {
        Self::from_scalar(field, T::one())
    }

    pub fn from_scalar(field: &Arc<CycloField>, c: T) -> Self {
        let mut e = Self::zero(field);
        if c.is_zero() {
            return e;
        }
        if field.degree() == 0 {
            unreachable!("cyclotomic polynomials have positive degree");
        }
        e.coeffs[0] = c;
        e
    }

    /// Reduces an arbitrary polynomial in `ζ` modulo `Φ_n`.
    pub fn from_poly(field: &Arc<CycloField>, poly: &[T]) -> Self {
        let mut e = Self::zero(field);
        for (k, c) in poly.iter().enumerate() {
            if !c.is_zero() {
                e.add_scaled_power(c, k as i64);
            }
        }
        e
    }

    /// `Σ c_j ζ^{e_j}` for arbitrary integer exponents.
    pub fn from_terms(field: &Arc<CycloField>, terms: &[(i64, T)]) -> Self {
        let mut e = Self::zero(field);
        for (k, c) in terms {
            e.add_scaled_power(c, *k);
        }
        e
    }

    fn add_scaled_power(&mut self, c: &T, k: i64) {
        let pc = self.field.power_coeffs(k);
        for (slot, &m) in self.coeffs.iter_mut().zip(pc) {
            if m != 0 {
                *slot = slot.clone() + c.clone() * T::from_i64(m);
            }
        }
    }

    /// `ζ_n^k`, with `k` taken mod `n`.
    pub fn root_of_unity(field: &Arc<CycloField>, k: i64) -> Self {
        Self::from_terms(field, &[(k, T::one())])
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// True iff every coefficient beyond the constant term vanishes.
    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().skip(1).all(|c| c.is_zero())
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if self.field.order != other.field.order {
            return Err(Error::FieldMismatch { left: self.field.order, right: other.field.order });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let coeffs =
            self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() + b.clone()).collect();
        Ok(CycloElement { field: self.field.clone(), coeffs })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let coeffs =
            self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() - b.clone()).collect();
        Ok(CycloElement { field: self.field.clone(), coeffs })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let coeffs = T::mul_mod_monic(&self.coeffs, &other.coeffs, self.field.modulus());
        Ok(CycloElement { field: self.field.clone(), coeffs })
    }

    pub fn scalar_mul(&self, c: &T) -> Self {
        let coeffs = self.coeffs.iter().map(|a| a.clone() * c.clone()).collect();
        CycloElement { field: self.field.clone(), coeffs }
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Applies the automorphism `ζ ↦ ζ^k`; `k` must be coprime to `n`.
    pub fn galois(&self, k: i64) -> Result<Self> {
        let n = self.field.order as i64;
        if k.gcd(&n) != 1 {
            return Err(Error::InvalidParams(format!("{k} is not a unit mod {n}")));
        }
        let mut out = Self::zero(&self.field);
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out.add_scaled_power(c, (j as i64 * k).rem_euclid(n));
            }
        }
        Ok(out)
    }

    /// Evaluates at `ζ_n = e^{2πi/n}` with `bits` of working precision.
    ///
    /// The absolute error is at most `2^(8 - bits) · Σ|c_j|`.
    pub fn eval_float(&self, bits: usize, cc: &mut Consts) -> ComplexFloat {
        assert!(bits >= 64, "eval_float needs at least 64 bits");
        let wp = bits + 32;
        let n = self.field.order;
        let two_pi = cc.pi(wp, RM).mul(&BigFloat::from_u8(2, wp), wp, RM);
        let step = two_pi.div(&BigFloat::from_u64(n, wp), wp, RM);
        let mut re = BigFloat::from_u8(0, wp);
        let mut im = BigFloat::from_u8(0, wp);
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cf = c.to_bigfloat(wp, cc);
            let angle = step.mul(&BigFloat::from_u64(j as u64, wp), wp, RM);
            re = re.add(&cf.mul(&angle.cos(wp, RM, cc), wp, RM), wp, RM);
            im = im.add(&cf.mul(&angle.sin(wp, RM, cc), wp, RM), wp, RM);
        }
        ComplexFloat { re, im, bits }
    }

    /// `Σ |c_j|` as a float, the scale in the [`eval_float`](Self::eval_float)
    /// error bound.
    pub fn coeff_l1(&self, bits: usize, cc: &mut Consts) -> BigFloat {
        self.coeffs
            .iter()
            .fold(BigFloat::from_u8(0, bits), |acc, c| acc.add(&c.to_bigfloat(bits, cc).abs(), bits, RM))
    }

    // Trigonometric constructors. The field order must be a multiple of 4p.

    fn quarter_step(field: &Arc<CycloField>, p: u64) -> i64 {
        assert!(p >= 1, "denominator must be positive");
        assert!(
            field.order % (4 * p) == 0,
            "Q(ζ_{}) does not contain ζ_{}",
            field.order,
            4 * p
        );
        (field.order / (4 * p)) as i64
    }

    /// `cos(aπ/p)` inside `field`.
    pub fn cos_pi(field: &Arc<CycloField>, a: i64, p: u64) -> Self {
        let m = Self::quarter_step(field, p);
        let half = T::from_ratio(1, 2);
        Self::from_terms(field, &[(2 * a * m, half.clone()), (-2 * a * m, half)])
    }

    /// `sin(aπ/p)` inside `field`.
    pub fn sin_pi(field: &Arc<CycloField>, a: i64, p: u64) -> Self {
        let m = Self::quarter_step(field, p);
        let pm = p as i64 * m;
        let half = T::from_ratio(1, 2);
        // divide by i = ζ^{pm} by shifting exponents down by pm
        Self::from_terms(field, &[(2 * a * m - pm, half.clone()), (-2 * a * m - pm, -half)])
    }
}

impl CycloElement<BigRational> {
    /// The rational value, or `None` if any higher coefficient is nonzero.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.coeffs.first().cloned().unwrap_or_else(BigRational::zero))
    }

    /// Multiplicative inverse via the extended gcd with `Φ_n`.
    pub fn invert(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_scalar(&self.field, BigRational::one() / r));
        }
        let phi = Poly::new(self.field.phi.iter().cloned().map(BigRational::from_integer).collect());
        let a = Poly::new(self.coeffs.clone());
        let (g, s, _) = a.ext_gcd(&phi)?;
        if g != Poly::one() {
            return Err(Error::Internal(format!(
                "gcd with Φ_{} is not 1; minimal polynomial is reducible",
                self.field.order
            )));
        }
        Ok(Self::from_poly(&self.field, s.coeffs()))
    }
}

/// `sin(aπ/p)` in `Q(ζ_{4p})`.
pub fn sin_pi_frac(a: i64, p: u64) -> CycloElement<BigRational> {
    CycloElement::sin_pi(&CycloField::get(4 * p), a, p)
}

/// `cos(aπ/p)` in `Q(ζ_{4p})`.
pub fn cos_pi_frac(a: i64, p: u64) -> CycloElement<BigRational> {
    CycloElement::cos_pi(&CycloField::get(4 * p), a, p)
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<T: Scalar> $tr for &CycloElement<T> {
            type Output = CycloElement<T>;
            /// Panics if the operands live in different fields; use the
            /// `try_` variant to get an error instead.
            fn $method(self, rhs: &CycloElement<T>) -> CycloElement<T> {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }

        impl<T: Scalar> $tr for CycloElement<T> {
            type Output = CycloElement<T>;
            fn $method(self, rhs: CycloElement<T>) -> CycloElement<T> {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl<T: Scalar> Neg for &CycloElement<T> {
    type Output = CycloElement<T>;
    fn neg(self) -> CycloElement<T> {
        CycloElement { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }
}

impl<T: Scalar> Neg for CycloElement<T> {
    type Output = CycloElement<T>;
    fn neg(self) -> CycloElement<T> {
        -&self
    }
}

impl<T: Scalar> std::iter::Sum for CycloElement<T> {
    /// Panics on an empty iterator, which has no field to live in.
    fn sum<I: Iterator<Item = Self>>(mut iter: I) -> Self {
        let first = iter.next().expect("sum of no cyclotomic elements");
        iter.fold(first, |acc, x| &acc + &x)
    }
}
