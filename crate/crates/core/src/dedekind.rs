//! Generalized Dedekind sums and the trigonometric power sums behind their
//! closed forms.
//!
//! For odd coprime `p`, `q` the sum is
//!
//! ```text
//! D(p,q) = Σ_{a=1}^{p-1} (14 cos(4πa/p) + cos²(qπa/p)) / (2⁴·7·p²·sin²(4πa/p)·sin²(qπa/p))
//!                      + q·cos(qπa/p)·(14 + cos(4πa/p)) / (2⁵·7·p²·sin(4πa/p)·sin³(qπa/p))
//! ```
//!
//! Every summand lives in `Q(ζ_{4p})`; the total is rational and is extracted
//! exactly. Angles only depend on `q mod 2p`, which keeps the field fixed while
//! the explicit factor `q` in the second term keeps its full value.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use astro_float::{BigFloat, Consts};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::cyclotomic::{CycloElement, CycloField};
use crate::error::{Error, Result};
use crate::exactnum::{int, is_odd_positive};
use crate::numeric::{self, RM};
use crate::scalar::Scalar;

type Elem = CycloElement<BigRational>;

/// Default largest `p` evaluated in exact cyclotomic mode.
pub const DEFAULT_MAX_EXACT_P: u64 = 499;

/// A validated pair of odd, coprime, positive integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DedekindInput {
    p: u64,
    q: u64,
}

impl DedekindInput {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if !is_odd_positive(p) || !is_odd_positive(q) {
            return Err(Error::InvalidParams(format!(
                "D(p,q) needs odd positive p and q, got ({p}, {q})"
            )));
        }
        if p.gcd(&q) != 1 {
            return Err(Error::InvalidParams(format!("D(p,q) needs coprime p and q, got ({p}, {q})")));
        }
        Ok(DedekindInput { p: p as u64, q: q as u64 })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }
}

/// Canonical index and sign of `sin(xπ/p)`: returns `(y, s)` with
/// `sin(xπ/p) = s · sin(yπ/p)` and `0 <= y <= (p-1)/2`.
fn sin_representative(x: i128, p: u64) -> (u64, i64) {
    let p128 = p as i128;
    let mut y = x.rem_euclid(2 * p128);
    let mut sign = 1;
    if y >= p128 {
        y -= p128;
        sign = -1;
    }
    if 2 * y > p128 {
        y = p128 - y;
    }
    (y as u64, sign)
}

/// Inverse powers `1/sin(yπ/p)^k`, `k = 1..=max_pow`, for the canonical
/// indices `y`, computed in parallel.
struct InverseSines {
    table: HashMap<u64, Vec<Elem>>,
}

impl InverseSines {
    fn build(field: &std::sync::Arc<CycloField>, p: u64, ys: impl IntoIterator<Item = u64>, max_pow: usize) -> Result<Self> {
        let mut ys: Vec<u64> = ys.into_iter().collect();
        ys.sort_unstable();
        ys.dedup();
        if ys.contains(&0) {
            return Err(Error::Internal(format!("sin vanishes in a summand for p={p}")));
        }
        let table = ys
            .par_iter()
            .map(|&y| {
                let inv = Elem::sin_pi(field, y as i64, p).invert()?;
                let mut pows = vec![inv.clone()];
                for _ in 1..max_pow {
                    let next = pows.last().unwrap() * &inv;
                    pows.push(next);
                }
                Ok((y, pows))
            })
            .collect::<Result<HashMap<_, _>>>()?;
        Ok(InverseSines { table })
    }

    /// `1/sin(xπ/p)^k`.
    fn get(&self, x: i128, p: u64, k: usize) -> Elem {
        let (y, sign) = sin_representative(x, p);
        let e = &self.table[&y][k - 1];
        if sign < 0 && k % 2 == 1 {
            -e
        } else {
            e.clone()
        }
    }
}

fn extract(e: &Elem, what: &str) -> Result<BigRational> {
    e.as_rational()
        .ok_or_else(|| Error::Internal(format!("{what} did not reduce to a rational")))
}

fn check_sin_power(p: i64, l: u32) -> Result<()> {
    if !is_odd_positive(p) {
        return Err(Error::InvalidParams(format!("sin power sums need odd positive p, got {p}")));
    }
    if l != 1 && l != 2 {
        return Err(Error::UnsupportedPower(l));
    }
    Ok(())
}

/// `Σ_{a=1}^{p-1} 1/sin^{2l}(2πa/p)` as an element of `Q(ζ_{4p})`.
pub fn sin_power_sum_element(p: i64, l: u32) -> Result<Option<Elem>> {
    check_sin_power(p, l)?;
    let p = p as u64;
    if p == 1 {
        return Ok(None);
    }
    let field = CycloField::get(4 * p);
    let pow = 2 * l as usize;
    let xs: Vec<i128> = (1..p as i128).map(|a| 2 * a).collect();
    let inv = InverseSines::build(&field, p, xs.iter().map(|&x| sin_representative(x, p).0), pow)?;
    Ok(Some(xs.par_iter().map(|&x| inv.get(x, p, pow)).reduce(|| Elem::zero(&field), |a, b| &a + &b)))
}

/// Exact `Σ_{a=1}^{p-1} 1/sin^{2l}(2πa/p)` for odd `p` and `l ∈ {1, 2}`,
/// summed directly in the cyclotomic field.
pub fn sin_power_sum(p: i64, l: u32) -> Result<BigRational> {
    match sin_power_sum_element(p, l)? {
        None => Ok(BigRational::zero()),
        Some(e) => extract(&e, "sin power sum"),
    }
}

/// Closed forms `(p²-1)/3` and `(p⁴+10p²-11)/45`.
pub fn sin_power_sum_closed<T: Scalar>(p: i64, l: u32) -> Result<T> {
    check_sin_power(p, l)?;
    let p = T::from_i64(p);
    let p2 = p.clone() * p;
    Ok(match l {
        1 => (p2 - T::one()) / T::from_i64(3),
        _ => (p2.clone() * p2.clone() + T::from_i64(10) * p2 - T::from_i64(11)) / T::from_i64(45),
    })
}

/// Summand `a` of `D(p,q)`, given inverse sine powers.
fn summand(field: &std::sync::Arc<CycloField>, input: DedekindInput, a: u64, inv: &InverseSines) -> Elem {
    let (p, q) = (input.p, input.q);
    let q_angle = ((q as u128 * a as u128) % (2 * p as u128)) as i64;
    let x4 = (4 * a % (2 * p)) as i64;
    let s4 = Elem::sin_pi(field, x4, p);
    let c4 = Elem::cos_pi(field, x4, p);
    let sq = Elem::sin_pi(field, q_angle, p);
    let cq = Elem::cos_pi(field, q_angle, p);
    let fourteen = Elem::from_scalar(field, int(14));
    let q_full = BigRational::from_integer(BigInt::from(q));
    // over the common denominator 2⁵·7·p²·sin²(4πa/p)·sin³(qπa/p)
    let first = (&(&c4.scalar_mul(&int(14)) + &cq.square()) * &sq).scalar_mul(&int(2));
    let second = (&(&cq * &(&fourteen + &c4)) * &s4).scalar_mul(&q_full);
    let numerator = &first + &second;
    let den_inv = &inv.get(x4 as i128, p, 2) * &inv.get(q_angle as i128, p, 3);
    let scale = BigRational::new(BigInt::one(), BigInt::from(224u64 * p * p));
    (&numerator * &den_inv).scalar_mul(&scale)
}

fn inverse_table(field: &std::sync::Arc<CycloField>, input: DedekindInput) -> Result<InverseSines> {
    let p = input.p;
    let ys = (1..p).flat_map(|a| {
        let x4 = 4 * a as i128;
        let xq = input.q as i128 * a as i128;
        [sin_representative(x4, p).0, sin_representative(xq, p).0]
    });
    InverseSines::build(field, p, ys, 3)
}

/// The individual summands of `D(p,q)` in `Q(ζ_{4p})`, `a = 1..p-1`.
pub fn dedekind_summands(input: DedekindInput) -> Result<Vec<Elem>> {
    let p = input.p;
    if p == 1 {
        return Ok(Vec::new());
    }
    let field = CycloField::get(4 * p);
    let inv = inverse_table(&field, input)?;
    Ok((1..p).into_par_iter().map(|a| summand(&field, input, a, &inv)).collect())
}

/// `D(p,q)` before rational extraction, as an element of `Q(ζ_{4p})`.
pub fn dedekind_sum_element(input: DedekindInput) -> Result<Elem> {
    let field = CycloField::get(4 * input.p);
    let summands = dedekind_summands(input)?;
    Ok(summands.into_par_iter().reduce(|| Elem::zero(&field), |a, b| &a + &b))
}

/// Exact `D(p,q)`, summed over `a = 1..p-1` in `Q(ζ_{4p})`.
///
/// A non-rational total is reported as [`Error::Internal`].
pub fn generalized_dedekind_sum(input: DedekindInput) -> Result<BigRational> {
    static CACHE: OnceLock<Mutex<HashMap<DedekindInput, BigRational>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().unwrap().get(&input) {
        return Ok(v.clone());
    }
    let v = extract(&dedekind_sum_element(input)?, &format!("D({}, {})", input.p, input.q))?;
    cache.lock().unwrap().insert(input, v.clone());
    Ok(v)
}

/// `D(p,q)` from the half range `a = 1..(p-1)/2`, doubled. Agrees with
/// [`generalized_dedekind_sum`] because summands `a` and `p-a` coincide.
pub fn dedekind_sum_halved(input: DedekindInput) -> Result<BigRational> {
    let p = input.p;
    if p == 1 {
        return Ok(BigRational::zero());
    }
    let field = CycloField::get(4 * p);
    let inv = inverse_table(&field, input)?;
    let half = (1..=(p - 1) / 2)
        .into_par_iter()
        .map(|a| summand(&field, input, a, &inv))
        .reduce(|| Elem::zero(&field), |a, b| &a + &b);
    Ok(extract(&half, "halved Dedekind sum")? * int(2))
}

/// `D(p, p+2) = (p²-1)(p³+3p²+9p-27) / (2⁶·3·7·p²)`.
pub fn dedekind_closed_form_succ<T: Scalar>(p: u64) -> T {
    let p = T::from_i64(p as i64);
    let p2 = p.clone() * p.clone();
    let p3 = p2.clone() * p.clone();
    let cubic = p3 + T::from_i64(3) * p2.clone() + T::from_i64(9) * p - T::from_i64(27);
    (p2.clone() - T::one()) * cubic / (T::from_i64(64 * 3 * 7) * p2)
}

/// The rational counterterm in the duality of `D(p,q)` and `D(q,p)`:
/// `(2⁶ + 2⁴(p²+q²) + p⁴ + q⁴)/(2⁸·7·p²q²) - 7/2⁷`.
pub fn duality_correction<T: Scalar>(p: u64, q: u64) -> T {
    let p2 = T::from_i64(p as i64) * T::from_i64(p as i64);
    let q2 = T::from_i64(q as i64) * T::from_i64(q as i64);
    let num = T::from_i64(64)
        + T::from_i64(16) * (p2.clone() + q2.clone())
        + p2.clone() * p2.clone()
        + q2.clone() * q2.clone();
    num / (T::from_i64(256 * 7) * p2 * q2) - T::from_ratio(7, 128)
}

/// `D(p,q) + D(q,p)` minus the duality counterterm; always an integer.
pub fn duality_defect(p: i64, q: i64) -> Result<BigRational> {
    let pq = DedekindInput::new(p, q)?;
    let qp = DedekindInput::new(q, p)?;
    let sum = generalized_dedekind_sum(pq)? + generalized_dedekind_sum(qp)?;
    Ok(sum - duality_correction::<BigRational>(pq.p, pq.q))
}

/// How a Dedekind sum value was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EvalMode {
    Exact,
    /// High-precision float summation followed by rounding to the
    /// denominator bound of [`reconstruction_denominator`].
    Reconstructed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DedekindValue {
    pub value: BigRational,
    pub mode: EvalMode,
}

/// `2⁸·3²·5·7·p⁴`, a denominator bound assumed (not proved) for `D(p,q)`.
pub fn reconstruction_denominator(p: u64) -> BigInt {
    BigInt::from(256 * 9 * 5 * 7) * BigInt::from(p).pow(4)
}

/// `D(p,q)` summed directly with high-precision transcendental functions.
pub fn dedekind_sum_float(input: DedekindInput, bits: usize, cc: &mut Consts) -> BigFloat {
    let wp = bits + 32;
    let (p, q) = (input.p, input.q);
    let pi = cc.pi(wp, RM);
    let pf = BigFloat::from_u64(p, wp);
    let qf = BigFloat::from_u64(q, wp);
    let f = |v: u64| BigFloat::from_u64(v, wp);
    let c14 = f(14);
    let mut total = f(0);
    for a in 1..p {
        let t4 = pi.mul(&f(4 * a % (2 * p)), wp, RM).div(&pf, wp, RM);
        let tq = pi.mul(&f(((q as u128 * a as u128) % (2 * p as u128)) as u64), wp, RM).div(&pf, wp, RM);
        let (s4, c4) = (t4.sin(wp, RM, cc), t4.cos(wp, RM, cc));
        let (sq, cq) = (tq.sin(wp, RM, cc), tq.cos(wp, RM, cc));
        let n1 = c14.mul(&c4, wp, RM).add(&cq.mul(&cq, wp, RM), wp, RM);
        let d1 = s4.mul(&s4, wp, RM).mul(&sq, wp, RM).mul(&sq, wp, RM).mul(&f(112), wp, RM);
        let n2 = qf.mul(&cq, wp, RM).mul(&c14.add(&c4, wp, RM), wp, RM);
        let d2 = s4.mul(&sq, wp, RM).mul(&sq, wp, RM).mul(&sq, wp, RM).mul(&f(224), wp, RM);
        total = total.add(&n1.div(&d1, wp, RM), wp, RM).add(&n2.div(&d2, wp, RM), wp, RM);
    }
    total.div(&pf.mul(&pf, wp, RM), bits, RM)
}

/// Chooses between exact cyclotomic evaluation and float reconstruction.
#[derive(Clone, Copy, Debug)]
pub struct DedekindEvaluator {
    pub max_exact_p: u64,
    pub precision: usize,
}

impl Default for DedekindEvaluator {
    fn default() -> Self {
        DedekindEvaluator { max_exact_p: DEFAULT_MAX_EXACT_P, precision: numeric::DEFAULT_PRECISION }
    }
}

impl DedekindEvaluator {
    pub fn evaluate(&self, input: DedekindInput) -> Result<DedekindValue> {
        if input.p <= self.max_exact_p {
            return Ok(DedekindValue { value: generalized_dedekind_sum(input)?, mode: EvalMode::Exact });
        }
        self.reconstruct(input).map(|value| DedekindValue { value, mode: EvalMode::Reconstructed })
    }

    /// Float summation rounded to the nearest fraction over
    /// [`reconstruction_denominator`].
    pub fn reconstruct(&self, input: DedekindInput) -> Result<BigRational> {
        let mut cc = numeric::consts();
        let den = reconstruction_denominator(input.p);
        let extra = den.bits() as usize + 64;
        let bits = self.precision.max(64) + extra;
        let approx = dedekind_sum_float(input, bits, &mut cc);
        let scaled = approx.mul(&crate::scalar::bigint_to_bigfloat(&den, bits, &mut cc), bits, RM);
        let nearest = numeric::round_to_bigint(&scaled)
            .ok_or_else(|| Error::Internal("float Dedekind sum is not finite".into()))?;
        let gap = scaled.sub(&crate::scalar::bigint_to_bigfloat(&nearest, bits, &mut cc), bits, RM).abs();
        if !numeric::le(&gap, &numeric::pow2(-16, bits)) {
            return Err(Error::Internal(format!(
                "D({}, {}) is not close to a fraction with denominator {den}",
                input.p, input.q
            )));
        }
        Ok(BigRational::new(nearest, den))
    }
}
