//! High-precision floating point used only as an independent numeric oracle.

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;

use crate::scalar::Scalar;

pub const RM: RoundingMode = RoundingMode::ToEven;

/// Default working precision in bits.
pub const DEFAULT_PRECISION: usize = 192;

pub fn consts() -> Consts {
    Consts::new().expect("astro-float constant cache")
}

/// A complex number with [`BigFloat`] parts.
#[derive(Debug, Clone)]
pub struct ComplexFloat {
    pub re: BigFloat,
    pub im: BigFloat,
    pub bits: usize,
}

impl ComplexFloat {
    /// `|self - r|` for a rational `r`.
    pub fn distance_to_rational(&self, r: &BigRational, cc: &mut Consts) -> BigFloat {
        let p = self.bits;
        let rf = r.to_bigfloat(p, cc);
        let dre = self.re.sub(&rf, p, RM);
        let sq = dre.mul(&dre, p, RM).add(&self.im.mul(&self.im, p, RM), p, RM);
        sq.sqrt(p, RM)
    }

    pub fn re_f64(&self) -> f64 {
        to_f64(&self.re)
    }

    pub fn im_f64(&self) -> f64 {
        to_f64(&self.im)
    }
}

/// `2^e` exactly.
pub fn pow2(e: i32, bits: usize) -> BigFloat {
    let mut one = BigFloat::from_u8(1, bits);
    one.set_exponent(1 + e);
    one
}

/// `10^-digits`, correctly rounded at `bits`.
pub fn ten_pow_neg(digits: u32, bits: usize, cc: &mut Consts) -> BigFloat {
    BigFloat::parse(&format!("1e-{digits}"), Radix::Dec, bits, RM, cc)
}

pub fn le(a: &BigFloat, b: &BigFloat) -> bool {
    matches!(a.cmp(b), Some(c) if c <= 0)
}

pub fn to_f64(x: &BigFloat) -> f64 {
    let mut cc = consts();
    x.format(Radix::Dec, RM, &mut cc)
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(f64::NAN)
}

/// Decimal rendering with roughly `digits` significant digits.
pub fn to_decimal(x: &BigFloat, cc: &mut Consts) -> String {
    x.format(Radix::Dec, RM, cc).unwrap_or_else(|_| "NaN".into())
}

/// Nearest integer to `x` as a `BigInt`, or `None` for NaN/infinity.
pub fn round_to_bigint(x: &BigFloat) -> Option<BigInt> {
    let p = x.precision()?.max(64);
    let half = pow2(-1, p);
    let shifted = if x.is_negative() { x.sub(&half, p, RM) } else { x.add(&half, p, RM) };
    bigfloat_int_to_bigint(&shifted.int())
}

/// Truncation of an integral `BigFloat` to `BigInt`.
fn bigfloat_int_to_bigint(x: &BigFloat) -> Option<BigInt> {
    if x.is_zero() {
        return Some(BigInt::zero());
    }
    let (words, _, sign, exp, _) = x.as_raw_parts()?;
    // value = 0.m * 2^exp, with m little-endian words
    let bytes: Vec<u8> = words.iter().flat_map(|w| w.to_le_bytes()).collect();
    let mag = BigUint::from_bytes_le(&bytes);
    let shift = exp as i64 - 8 * bytes.len() as i64;
    let mag = if shift >= 0 { mag << shift as usize } else { mag >> (-shift) as usize };
    let sign = if sign.is_negative() { num_bigint::Sign::Minus } else { num_bigint::Sign::Plus };
    Some(BigInt::from_biguint(sign, mag))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn powers_of_two() {
        assert_eq!(to_f64(&pow2(-3, 64)), 0.125);
        assert_eq!(to_f64(&pow2(4, 64)), 16.0);
    }

    #[test]
    fn rounding_to_integers() {
        let mut cc = consts();
        for v in [0.0, 2.4, 2.6, -2.6, 1234567.49, -0.4] {
            let x = BigFloat::from_f64(v, 128);
            let r = round_to_bigint(&x).unwrap();
            assert_eq!(r, BigInt::from(v.round() as i64), "{v}");
        }
        let big = BigFloat::parse("123456789012345678901234567890", Radix::Dec, 256, RM, &mut cc);
        assert_eq!(
            round_to_bigint(&big).unwrap().to_string(),
            "123456789012345678901234567890"
        );
    }
}
