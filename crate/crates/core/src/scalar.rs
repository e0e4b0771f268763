//! Coefficient scalars for polynomial and cyclotomic arithmetic.

use std::fmt::Debug;
use std::ops::Neg;

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Num, One, ToPrimitive, Zero};

/// A field the ring layer can compute over.
///
/// Implemented for [`BigRational`] (exact) and for `f64`/`f32` (approximate).
/// Operations that only make sense exactly, such as inversion by extended gcd
/// or rationality extraction, are provided for `BigRational` alone.
pub trait Scalar: Clone + Debug + PartialEq + Num + Neg<Output = Self> + Send + Sync + 'static {
    fn from_bigint(v: &BigInt) -> Self;

    fn from_i64(v: i64) -> Self {
        Self::from_bigint(&BigInt::from(v))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }

    /// Converts to a binary float with `bits` of precision.
    fn to_bigfloat(&self, bits: usize, cc: &mut Consts) -> BigFloat;

    /// Multiplies two coefficient vectors and reduces the product modulo a
    /// monic integer polynomial `modulus` (low degree first). The result has
    /// exactly `modulus.len() - 1` entries.
    fn mul_mod_monic(a: &[Self], b: &[Self], modulus: &[i64]) -> Vec<Self> {
        let deg = modulus.len() - 1;
        let mut prod = vec![Self::zero(); (a.len() + b.len()).max(1)];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                prod[i + j] = prod[i + j].clone() + x.clone() * y.clone();
            }
        }
        reduce_monic_generic(&mut prod, modulus);
        prod.truncate(deg);
        prod.resize(deg, Self::zero());
        prod
    }
}

fn reduce_monic_generic<T: Scalar>(coeffs: &mut [T], modulus: &[i64]) {
    let deg = modulus.len() - 1;
    for top in (deg..coeffs.len()).rev() {
        let lead = std::mem::replace(&mut coeffs[top], T::zero());
        if lead.is_zero() {
            continue;
        }
        for (j, &m) in modulus[..deg].iter().enumerate() {
            if m != 0 {
                let idx = top - deg + j;
                coeffs[idx] = coeffs[idx].clone() - lead.clone() * T::from_i64(m);
            }
        }
    }
}

pub(crate) fn bigint_to_bigfloat(v: &BigInt, bits: usize, cc: &mut Consts) -> BigFloat {
    // hex parsing is exact up to the requested precision
    let s = format!("{:x}", v);
    BigFloat::parse(&s, Radix::Hex, bits, RoundingMode::ToEven, cc)
}

impl Scalar for BigRational {
    fn from_bigint(v: &BigInt) -> Self {
        BigRational::from_integer(v.clone())
    }

    fn to_bigfloat(&self, bits: usize, cc: &mut Consts) -> BigFloat {
        let n = bigint_to_bigfloat(self.numer(), bits + 64, cc);
        let d = bigint_to_bigfloat(self.denom(), bits + 64, cc);
        n.div(&d, bits, RoundingMode::ToEven)
    }

    /// Clears denominators and multiplies over the integers, which is much
    /// cheaper than schoolbook multiplication on rationals.
    fn mul_mod_monic(a: &[Self], b: &[Self], modulus: &[i64]) -> Vec<Self> {
        let deg = modulus.len() - 1;
        let (an, ad) = clear_denominators(a);
        let (bn, bd) = clear_denominators(b);
        let mut prod = vec![BigInt::zero(); (an.len() + bn.len()).max(1)];
        for (i, x) in an.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in bn.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        reduce_monic_bigint(&mut prod, modulus);
        let den = ad * bd;
        let mut out: Vec<BigRational> = prod
            .into_iter()
            .take(deg)
            .map(|c| {
                if c.is_zero() {
                    BigRational::zero()
                } else {
                    BigRational::new(c, den.clone())
                }
            })
            .collect();
        out.resize(deg, BigRational::zero());
        out
    }
}

/// Integer numerators over a common denominator (the lcm of all denominators).
pub(crate) fn clear_denominators(v: &[BigRational]) -> (Vec<BigInt>, BigInt) {
    let mut den = BigInt::one();
    for c in v {
        if !c.denom().is_one() {
            den = den.lcm(c.denom());
        }
    }
    let nums = v
        .iter()
        .map(|c| {
            if c.is_zero() {
                BigInt::zero()
            } else if c.denom() == &den {
                c.numer().clone()
            } else {
                c.numer() * (&den / c.denom())
            }
        })
        .collect();
    (nums, den)
}

pub(crate) fn reduce_monic_bigint(coeffs: &mut [BigInt], modulus: &[i64]) {
    let deg = modulus.len() - 1;
    for top in (deg..coeffs.len()).rev() {
        let lead = std::mem::take(&mut coeffs[top]);
        if lead.is_zero() {
            continue;
        }
        for (j, &m) in modulus[..deg].iter().enumerate() {
            if m != 0 {
                coeffs[top - deg + j] -= &lead * m;
            }
        }
    }
}

macro_rules! float_scalar {
    ($t:ty, $conv:ident, $from:ident) => {
        impl Scalar for $t {
            fn from_bigint(v: &BigInt) -> Self {
                v.$conv().unwrap_or(<$t>::NAN)
            }

            fn from_i64(v: i64) -> Self {
                v as $t
            }

            fn to_bigfloat(&self, bits: usize, _cc: &mut Consts) -> BigFloat {
                BigFloat::$from(*self, bits)
            }
        }
    };
}

float_scalar!(f64, to_f64, from_f64);
float_scalar!(f32, to_f32, from_f32);
