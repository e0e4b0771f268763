//! `Q/Z`-valued invariants of the 7-manifolds `M = M_{(p-,q-),(p+,q+)}` and of
//! the `S^3`-bundles `E_{p,n}` over `S^4`.
//!
//! The Eells-Kuiper invariant is assembled from four contributions
//!
//! ```text
//! ek(M) = smooth + D(p-,q-) - D(p+,q+) + spectral - cheeger_simons   (mod Z)
//! ```
//!
//! which collapse to the closed formula evaluated by [`eells_kuiper`]. With
//! `X = q-²p+² - q+²p-²` and `Δ = p+² - p-²`,
//!
//! ```text
//! ek(M) = sign(X)/224 + D(p-,q-) - D(p+,q+) - Δ²/(28·p-²p+²·X) - (2⁴Δ + X)/(2⁸·7·p-²p+²)
//! ```
//!
//! The purely rational pieces are generic over [`Scalar`]; pass
//! [`BigRational`] for exact values.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use serde::Serialize;

use crate::dedekind::{DedekindEvaluator, DedekindInput, EvalMode};
use crate::error::{Error, Result};
use crate::exactnum::{int, is_odd_positive, mod_floor, QmodZ};
use crate::scalar::Scalar;

fn lift<T: Scalar>(v: i128) -> T {
    T::from_bigint(&BigInt::from(v))
}

fn big(v: i128) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Parameters `(p-, q-, p+, q+)` of a manifold with finite `H⁴`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SeifertParams {
    pub p_minus: i64,
    pub q_minus: i64,
    pub p_plus: i64,
    pub q_plus: i64,
}

impl SeifertParams {
    pub fn new(p_minus: i64, q_minus: i64, p_plus: i64, q_plus: i64) -> Result<Self> {
        let all = [p_minus, q_minus, p_plus, q_plus];
        if !all.iter().all(|&v| is_odd_positive(v)) {
            return Err(Error::InvalidParams(format!("parameters must be odd and positive, got {all:?}")));
        }
        if p_minus.gcd(&q_minus) != 1 || p_plus.gcd(&q_plus) != 1 {
            return Err(Error::InvalidParams(format!(
                "(p-, q-) and (p+, q+) must be coprime pairs, got {all:?}"
            )));
        }
        if p_minus as i128 * q_plus as i128 == p_plus as i128 * q_minus as i128 {
            return Err(Error::InvalidParams(format!("p- q+ = p+ q- gives infinite H^4, got {all:?}")));
        }
        Ok(SeifertParams { p_minus, q_minus, p_plus, q_plus })
    }

    /// `P_k = M_{(1,1),(2k-1,2k+1)}`.
    pub fn pk(k: u64) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParams("P_k needs k >= 1".into()));
        }
        let k = i64::try_from(k).map_err(|_| Error::InvalidParams(format!("k = {k} is too large")))?;
        SeifertParams::new(1, 1, 2 * k - 1, 2 * k + 1)
    }

    /// The same manifold with the orientation reversed, `(q-, p-, q+, p+)`.
    pub fn reversed(&self) -> Self {
        SeifertParams {
            p_minus: self.q_minus,
            q_minus: self.p_minus,
            p_plus: self.q_plus,
            q_plus: self.p_plus,
        }
    }

    fn squares(&self) -> (i128, i128, i128, i128) {
        let sq = |v: i64| v as i128 * v as i128;
        (sq(self.p_minus), sq(self.q_minus), sq(self.p_plus), sq(self.q_plus))
    }

    /// `X = q-²p+² - q+²p-²`.
    pub fn x(&self) -> i128 {
        let (pm, qm, pp, qp) = self.squares();
        qm * pp - qp * pm
    }

    /// `Δ = p+² - p-²`.
    pub fn delta(&self) -> i128 {
        let (pm, _, pp, _) = self.squares();
        pp - pm
    }

    /// `p-²p+²`.
    pub fn p_product(&self) -> i128 {
        let (pm, _, pp, _) = self.squares();
        pm * pp
    }

    fn dedekind_input(&self, side: Side) -> Result<DedekindInput> {
        match side {
            Side::Minus => DedekindInput::new(self.p_minus, self.q_minus),
            Side::Plus => DedekindInput::new(self.p_plus, self.q_plus),
        }
    }
}

/// Which singular orbit a twisted-sector contribution comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Minus,
    Plus,
}

/// Order `k = |p-²q+² - p+²q-²| / 8` of `H⁴(M) ≅ Z/k`.
pub fn h4_order(params: &SeifertParams) -> Result<u64> {
    let x = params.x().abs();
    if x % 8 != 0 {
        return Err(Error::InvalidParams(format!("{params:?} gives a non-integral H^4 order {x}/8")));
    }
    u64::try_from(x / 8).map_err(|_| Error::InvalidParams(format!("H^4 order {x}/8 does not fit in u64")))
}

/// `(q+²/p+² - q-²/p-²) / (2¹⁰·7)`.
pub fn ek_contribution_smooth<T: Scalar>(params: &SeifertParams) -> T {
    let (pm, qm, pp, qp) = params.squares();
    (lift::<T>(qp) / lift(pp) - lift::<T>(qm) / lift(pm)) / T::from_i64(1024 * 7)
}

/// `+D(p-,q-)` for [`Side::Minus`], `-D(p+,q+)` for [`Side::Plus`].
pub fn ek_contribution_twisted(params: &SeifertParams, side: Side) -> Result<BigRational> {
    twisted_with(params, side, &DedekindEvaluator::default()).map(|(v, _)| v)
}

fn twisted_with(params: &SeifertParams, side: Side, ev: &DedekindEvaluator) -> Result<(BigRational, EvalMode)> {
    let d = ev.evaluate(params.dedekind_input(side)?)?;
    let value = match side {
        Side::Minus => d.value,
        Side::Plus => -d.value,
    };
    Ok((value, d.mode))
}

/// `Δ²/(2²·7·p-²p+²·X) + (2⁶Δ + 3X)/(2¹⁰·7·p-²p+²)`.
pub fn ek_contribution_cheeger_simons<T: Scalar>(params: &SeifertParams) -> T {
    let (d, x, pp) = (params.delta(), params.x(), params.p_product());
    let first = lift::<T>(d * d) / (T::from_i64(28) * lift(pp) * lift(x));
    let second = lift::<T>(64 * d + 3 * x) / (T::from_i64(1024 * 7) * lift(pp));
    first + second
}

/// `sign(X) / (2⁵·7)`.
pub fn ek_contribution_spectral<T: Scalar>(params: &SeifertParams) -> T {
    T::from_ratio(params.x().signum() as i64, 224)
}

/// Everything in the closed formula except the two Dedekind sums.
pub fn ek_rational_part<T: Scalar>(params: &SeifertParams) -> T {
    let (d, x, pp) = (params.delta(), params.x(), params.p_product());
    let spectral = ek_contribution_spectral::<T>(params);
    let eta = lift::<T>(d * d) / (T::from_i64(28) * lift(pp) * lift(x));
    let tail = lift::<T>(16 * d + x) / (T::from_i64(256 * 7) * lift(pp));
    spectral - eta - tail
}

/// The Eells-Kuiper invariant, exact for `p± <= 499`.
pub fn eells_kuiper(params: &SeifertParams) -> Result<QmodZ> {
    eells_kuiper_with(params, &DedekindEvaluator::default()).map(|(v, _)| v)
}

/// [`eells_kuiper`] with an explicit Dedekind evaluator; the mode is
/// [`EvalMode::Reconstructed`] if either sum was.
pub fn eells_kuiper_with(params: &SeifertParams, ev: &DedekindEvaluator) -> Result<(QmodZ, EvalMode)> {
    let (minus, m1) = twisted_with(params, Side::Minus, ev)?;
    let (plus, m2) = twisted_with(params, Side::Plus, ev)?;
    let mode = if m1 == EvalMode::Exact && m2 == EvalMode::Exact { EvalMode::Exact } else { EvalMode::Reconstructed };
    Ok((QmodZ::new(&(minus + plus + ek_rational_part::<BigRational>(params))), mode))
}

/// `smooth + twisted(-) + twisted(+) + spectral - cheeger_simons`, summed
/// from the separate contributions.
pub fn ek_from_contributions(params: &SeifertParams) -> Result<QmodZ> {
    let total = ek_contribution_smooth::<BigRational>(params)
        + ek_contribution_twisted(params, Side::Minus)?
        + ek_contribution_twisted(params, Side::Plus)?
        + ek_contribution_spectral::<BigRational>(params)
        - ek_contribution_cheeger_simons::<BigRational>(params);
    Ok(QmodZ::new(&total))
}

/// A quadratic function `q(ℓ) = Aℓ² + Bℓ mod Z` on `Z/k`.
///
/// Well defined on `Z/k` exactly when `2Ak` and `Ak² + Bk` are integers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclicQuadraticForm {
    order: u64,
    #[serde(serialize_with = "ser_rational")]
    quadratic: BigRational,
    #[serde(serialize_with = "ser_rational")]
    linear: BigRational,
}

fn ser_rational<S: serde::Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

impl CyclicQuadraticForm {
    pub fn new(order: u64, quadratic: BigRational, linear: BigRational) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidParams("quadratic form on Z/0".into()));
        }
        let k = big(order as i128);
        let twice = &quadratic * &k * int(2);
        let shift = &quadratic * &k * &k + &linear * &k;
        if !twice.is_integer() || !shift.is_integer() {
            return Err(Error::InvalidParams(format!(
                "{quadratic}·l² + {linear}·l is not well defined mod {order}"
            )));
        }
        Ok(CyclicQuadraticForm { order, quadratic, linear })
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn quadratic_coefficient(&self) -> &BigRational {
        &self.quadratic
    }

    pub fn linear_coefficient(&self) -> &BigRational {
        &self.linear
    }

    pub fn reduce(&self, l: i64) -> u64 {
        mod_floor(l as i128, self.order)
    }

    pub fn eval(&self, l: i64) -> QmodZ {
        let l = big(self.reduce(l) as i128);
        QmodZ::new(&(&self.quadratic * &l * &l + &self.linear * &l))
    }

    /// All values `q(0), ..., q(k-1)`.
    pub fn values(&self) -> Vec<QmodZ> {
        (0..self.order as i64).map(|l| self.eval(l)).collect()
    }

    pub fn negate(&self) -> Self {
        CyclicQuadraticForm { order: self.order, quadratic: -&self.quadratic, linear: -&self.linear }
    }

    /// `x ↦ q(b·x)`.
    pub fn compose_unit(&self, b: i64) -> Self {
        let b = big(b as i128);
        CyclicQuadraticForm {
            order: self.order,
            quadratic: &self.quadratic * &b * &b,
            linear: &self.linear * &b,
        }
    }
}

/// `lk(a,b) = q(a+b) - q(a) - q(b)`.
pub fn linking_form(qf: &CyclicQuadraticForm, a: i64, b: i64) -> QmodZ {
    let s = qf.eval(qf.reduce(a) as i64 + qf.reduce(b) as i64);
    s - qf.eval(a) - qf.eval(b)
}

/// `lk(a, p₁/2) = q(a) - q(-a)`.
pub fn half_pontryagin_pairing(qf: &CyclicQuadraticForm, a: i64) -> QmodZ {
    qf.eval(a) - qf.eval(-(qf.reduce(a) as i64))
}

fn require_coprime_p(params: &SeifertParams) -> Result<()> {
    if params.p_minus.gcd(&params.p_plus) != 1 {
        return Err(Error::InvalidParams(format!(
            "the quadratic form needs gcd(p-, p+) = 1, got p- = {}, p+ = {}",
            params.p_minus, params.p_plus
        )));
    }
    Ok(())
}

/// `q_M(ℓ) = ℓ(Δ + ℓ·p-²p+²)/(2k) - ℓ/2`, with `ℓ` reduced mod `k`.
pub fn q_form(params: &SeifertParams, l: i64) -> Result<QmodZ> {
    require_coprime_p(params)?;
    let k = h4_order(params)?;
    let l = big(mod_floor(l as i128, k) as i128);
    let inner = big(params.delta()) + &l * big(params.p_product());
    let v = &l * inner / big(2 * k as i128) - l / int(2);
    Ok(QmodZ::new(&v))
}

/// `q_M` as a [`CyclicQuadraticForm`] on `Z/k`.
pub fn seifert_quadratic_form(params: &SeifertParams) -> Result<CyclicQuadraticForm> {
    require_coprime_p(params)?;
    let k = h4_order(params)? as i128;
    let a = big(params.p_product()) / big(2 * k);
    let b = big(params.delta()) / big(2 * k) - int(1) / int(2);
    CyclicQuadraticForm::new(k as u64, a, b)
}

/// `t(ℓ) = ℓ/3 · (p-² - p+² + ℓ·p-²p+²)/(p-²q+² - p+²q-²) + ℓ/24`.
///
/// Unlike [`q_form`], `ℓ` is used as given.
pub fn t_invariant(params: &SeifertParams, l: i64) -> Result<QmodZ> {
    require_coprime_p(params)?;
    let l = big(l as i128);
    let num = big(-params.delta()) + &l * big(params.p_product());
    let den = big(-params.x());
    let v = &l / int(3) * num / den + l / int(24);
    Ok(QmodZ::new(&v))
}

/// `-(4k³ - 7k + 3) / (2⁵·3·7)`.
pub fn ek_pk_value<T: Scalar>(k: u64) -> T {
    let k = T::from_i64(k as i64);
    let cubic = T::from_i64(4) * k.clone() * k.clone() * k.clone() - T::from_i64(7) * k + T::from_i64(3);
    -cubic / T::from_i64(672)
}

/// `ek(P_k)` from its closed formula.
pub fn ek_pk(k: u64) -> QmodZ {
    QmodZ::new(&ek_pk_value::<BigRational>(k))
}

/// `q_{P_k}(ℓ) = ℓ(ℓ - k)/(2k)`, or `0` when `k = 0`.
pub fn q_pk(k: u64, l: i64) -> QmodZ {
    if k == 0 {
        return QmodZ::zero();
    }
    let l = big(mod_floor(l as i128, k) as i128);
    let k = big(k as i128);
    QmodZ::new(&(&l * (&l - &k) / (int(2) * k)))
}

/// `q_{P_k}` as a [`CyclicQuadraticForm`].
pub fn pk_quadratic_form(k: u64) -> Result<CyclicQuadraticForm> {
    CyclicQuadraticForm::new(k, int(1) / big(2 * k as i128), -int(1) / int(2))
}

/// `E_{p,n}`: half first Pontryagin class `p`, Euler class `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SphereBundleParams {
    pub p: i64,
    pub n: i64,
}

impl SphereBundleParams {
    pub fn new(p: i64, n: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParams("E_{p,0} has infinite H^4".into()));
        }
        if (p - n) % 2 != 0 {
            return Err(Error::InvalidParams(format!("E_{{p,n}} needs p ≡ n mod 2, got p = {p}, n = {n}")));
        }
        Ok(SphereBundleParams { p, n })
    }

    pub fn order(&self) -> u64 {
        self.n.unsigned_abs()
    }
}

/// `μ(E_{p,n}) = (p² - n)/(2⁵·7·n)`.
pub fn bundle_mu(b: &SphereBundleParams) -> QmodZ {
    let p = big(b.p as i128);
    let n = big(b.n as i128);
    QmodZ::new(&((&p * &p - &n) / (int(224) * n)))
}

/// `q_{E_{p,n}}(ℓ) = ℓ(p + ℓ)/(2n)`, with `ℓ` reduced mod `|n|`.
pub fn bundle_q(b: &SphereBundleParams, l: i64) -> QmodZ {
    let l = big(mod_floor(l as i128, b.order()) as i128);
    let v = &l * (big(b.p as i128) + &l) / big(2 * b.n as i128);
    QmodZ::new(&v)
}

/// `q_{E_{p,n}}` as a [`CyclicQuadraticForm`].
pub fn bundle_quadratic_form(b: &SphereBundleParams) -> CyclicQuadraticForm {
    let two_n = big(2 * b.n as i128);
    CyclicQuadraticForm::new(b.order(), int(1) / &two_n, big(b.p as i128) / two_n)
        .expect("p ≡ n mod 2 makes the bundle form well defined")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::ratio;
    use proptest::prelude::*;

    fn sp(a: i64, b: i64, c: i64, d: i64) -> SeifertParams {
        SeifertParams::new(a, b, c, d).unwrap()
    }

    fn qz(n: i64, d: i64) -> QmodZ {
        QmodZ::from_frac(n, d).unwrap()
    }

    #[test]
    fn params_validation() {
        assert!(SeifertParams::new(1, 1, 1, 1).is_err());
        assert!(SeifertParams::new(3, 3, 1, 3).is_err());
        assert!(SeifertParams::new(2, 1, 1, 3).is_err());
        assert!(SeifertParams::new(3, 1, 1, 3).is_ok());
        assert!(SeifertParams::new(3, 9, 1, 3).is_err());
        assert!(SphereBundleParams::new(3, 2).is_err());
        assert!(SphereBundleParams::new(3, 0).is_err());
        assert!(SphereBundleParams::new(-4, 2).is_ok());
    }

    #[test]
    fn h4_examples() {
        for k in 1..20 {
            assert_eq!(h4_order(&SeifertParams::pk(k).unwrap()).unwrap(), k);
        }
        assert_eq!(h4_order(&sp(3, 1, 1, 3)).unwrap(), 10);
        assert_eq!(h4_order(&sp(1, 1, 1, 3)).unwrap(), 1);
    }

    #[test]
    fn contribution_examples() {
        assert_eq!(ek_contribution_smooth::<BigRational>(&sp(1, 1, 3, 5)), ratio(1, 4032));
        assert_eq!(ek_contribution_smooth::<BigRational>(&sp(3, 1, 1, 3)), ratio(5, 4032));
        assert_eq!(ek_contribution_twisted(&sp(1, 1, 3, 5), Side::Minus).unwrap(), int(0));
        assert_eq!(ek_contribution_twisted(&sp(1, 1, 3, 5), Side::Plus).unwrap(), ratio(-1, 28));
        assert_eq!(ek_contribution_twisted(&sp(3, 1, 1, 3), Side::Minus).unwrap(), ratio(-1, 28));
        assert_eq!(ek_contribution_spectral::<BigRational>(&sp(1, 1, 3, 5)), ratio(-1, 224));
        assert_eq!(ek_contribution_spectral::<BigRational>(&sp(3, 1, 1, 3)), ratio(-1, 224));
        assert_eq!(ek_contribution_spectral::<BigRational>(&sp(1, 3, 3, 1)), ratio(1, 224));
        // X = -80, Δ = -8, p-²p+² = 9
        assert_eq!(
            ek_contribution_cheeger_simons::<BigRational>(&sp(3, 1, 1, 3)),
            ratio(64, 28 * 9 * -80) + ratio(-512 - 240, 7168 * 9)
        );
        // equal p± kill the first term
        let same = sp(3, 1, 3, 5);
        assert_eq!(
            ek_contribution_cheeger_simons::<BigRational>(&same),
            ratio(3 * same.x() as i64, 7168 * 81)
        );
        let f = ek_contribution_smooth::<f64>(&sp(1, 1, 3, 5));
        assert!((f - 1.0 / 4032.0).abs() < 1e-18);
    }

    #[test]
    fn eells_kuiper_examples() {
        let berger = eells_kuiper(&sp(3, 1, 1, 3)).unwrap();
        assert_eq!(berger, qz(-27, 1120));
        assert_eq!(berger.to_string(), "1093/1120");
        assert_eq!(eells_kuiper(&sp(1, 1, 3, 5)).unwrap(), qz(31, 32));
        assert_eq!(ek_from_contributions(&sp(3, 1, 1, 3)).unwrap(), berger);
    }

    #[test]
    fn sphere_bundle_over_orbifold_pattern() {
        // M_{(1,1),(1,q)} is a bundle with e = (1 - q²)/8
        for q in [3i64, 5, 7, 9, 11] {
            let e = (1 - q * q) / 8;
            let direct = QmodZ::new(&((int(e.signum()) - int(e)) / int(224)));
            assert_eq!(eells_kuiper(&sp(1, 1, 1, q)).unwrap(), direct, "q={q}");
        }
    }

    #[test]
    fn q_form_examples() {
        assert_eq!(q_form(&sp(3, 1, 1, 3), 1).unwrap(), qz(11, 20));
        assert_eq!(q_form(&sp(3, 1, 1, 3), 0).unwrap(), QmodZ::zero());
        // alternative form ℓ(2 + 9ℓ)/20
        for l in 0..10 {
            assert_eq!(q_form(&sp(3, 1, 1, 3), l).unwrap(), qz(l * (2 + 9 * l), 20));
        }
        assert!(q_form(&sp(3, 1, 3, 5), 1).is_err());
        for k in 1..=12u64 {
            let pk = SeifertParams::pk(k).unwrap();
            for l in 0..k as i64 {
                assert_eq!(q_form(&pk, l).unwrap(), q_pk(k, l));
            }
        }
    }

    #[test]
    fn t_invariant_examples() {
        assert_eq!(t_invariant(&sp(3, 1, 1, 3), 0).unwrap(), QmodZ::zero());
        for k in 1..=12u64 {
            let pk = SeifertParams::pk(k).unwrap();
            for l in 0..k as i64 {
                assert_eq!(t_invariant(&pk, l).unwrap().times(12), q_pk(k, l));
            }
        }
    }

    #[test]
    fn twelve_t_is_signed_q_at_minus_l() {
        let berger = sp(3, 1, 1, 3);
        assert_eq!(t_invariant(&berger, 1).unwrap().times(12), qz(7, 20));
        for params in [berger.clone(), sp(1, 3, 3, 1), sp(5, 3, 7, 1), sp(7, 1, 5, 3)] {
            for l in -12..12 {
                let mirror = q_form(&params, -l).unwrap();
                let expected = if params.x() < 0 { mirror } else { -mirror };
                assert_eq!(t_invariant(&params, l).unwrap().times(12), expected, "{params:?} l={l}");
            }
        }
    }

    #[test]
    fn pk_examples() {
        assert_eq!(ek_pk(1), QmodZ::zero());
        assert_eq!(ek_pk(2), qz(-1, 32));
        assert_eq!(ek_pk(3), qz(-15, 112));
        assert_eq!(ek_pk(5), qz(-156, 224));
        assert!((ek_pk_value::<f64>(3) + 15.0 / 112.0).abs() < 1e-15);
        for k in 1..=10 {
            assert_eq!(eells_kuiper(&SeifertParams::pk(k).unwrap()).unwrap(), ek_pk(k));
        }
    }

    #[test]
    fn bundle_examples() {
        for k in 1..20 {
            assert_eq!(bundle_mu(&SphereBundleParams::new(k, k).unwrap()), qz(k - 1, 224));
        }
        let e42 = SphereBundleParams::new(4, 2).unwrap();
        assert_eq!(bundle_mu(&e42), qz(1, 32));
        assert_eq!(bundle_q(&e42, 1), qz(1, 4));
        assert_eq!(q_pk(2, 1), qz(3, 4));
        assert_eq!(q_pk(2, 1), -bundle_q(&e42, 1));
        let e = SphereBundleParams::new(55, 5).unwrap();
        for l in 0..5 {
            assert_eq!(q_pk(5, 2 * l), -bundle_q(&e, l));
        }
    }

    #[test]
    fn form_objects_match_formulas() {
        let berger = sp(3, 1, 1, 3);
        let f = seifert_quadratic_form(&berger).unwrap();
        assert_eq!(f.order(), 10);
        for l in -20..20 {
            assert_eq!(f.eval(l), q_form(&berger, l).unwrap());
        }
        let pk = pk_quadratic_form(7).unwrap();
        let e = SphereBundleParams::new(-3, 7).unwrap();
        let bf = bundle_quadratic_form(&e);
        for l in -10..10 {
            assert_eq!(pk.eval(l), q_pk(7, l));
            assert_eq!(bf.eval(l), bundle_q(&e, l));
        }
        assert!(CyclicQuadraticForm::new(4, ratio(1, 3), int(0)).is_err());
        assert!(CyclicQuadraticForm::new(0, int(0), int(0)).is_err());
        assert_eq!(pk.negate().eval(3), -pk.eval(3));
        assert_eq!(pk.compose_unit(3).eval(2), pk.eval(6));
    }

    #[test]
    fn linking_and_pairing_examples() {
        for k in 1..=15u64 {
            let q = pk_quadratic_form(k).unwrap();
            let kk = SphereBundleParams::new(k as i64, k as i64).unwrap();
            let b = bundle_quadratic_form(&kk);
            for i in 0..k as i64 {
                assert_eq!(half_pontryagin_pairing(&q, i), QmodZ::zero());
                assert_eq!(linking_form(&q, i, 0), QmodZ::zero());
                for j in 0..k as i64 {
                    assert_eq!(linking_form(&q, i, j), qz(i * j, k as i64));
                    assert_eq!(linking_form(&b, i, j), qz(i * j, k as i64));
                }
            }
        }
        let e = SphereBundleParams::new(9, 5).unwrap();
        let b = bundle_quadratic_form(&e);
        for a in -6..6 {
            assert_eq!(half_pontryagin_pairing(&b, a), qz(a * 9, 5));
        }
        assert_eq!(half_pontryagin_pairing(&b, 0), QmodZ::zero());
    }

    fn valid_params(max: i64) -> impl Strategy<Value = SeifertParams> {
        let odd = move || (0..(max + 1) / 2).prop_map(|v| 2 * v + 1);
        (odd(), odd(), odd(), odd())
            .prop_filter_map("invalid", |(a, b, c, d)| SeifertParams::new(a, b, c, d).ok())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn decomposition_matches_closed_formula(params in valid_params(15)) {
            prop_assert_eq!(ek_from_contributions(&params).unwrap(), eells_kuiper(&params).unwrap());
        }

        #[test]
        fn orientation_reversal(params in valid_params(15)) {
            let a = eells_kuiper(&params).unwrap();
            let b = eells_kuiper(&params.reversed()).unwrap();
            prop_assert!((a + b).is_zero());
        }

        #[test]
        fn q_form_is_k_periodic(params in valid_params(15), l in -200i64..200) {
            prop_assume!(params.p_minus.gcd(&params.p_plus) == 1);
            let k = h4_order(&params).unwrap() as i64;
            prop_assert_eq!(q_form(&params, l).unwrap(), q_form(&params, l + k).unwrap());
        }

        #[test]
        fn linking_form_is_biadditive(params in valid_params(15), a in 0i64..500, b in 0i64..500, c in 0i64..500) {
            prop_assume!(params.p_minus.gcd(&params.p_plus) == 1);
            let q = seifert_quadratic_form(&params).unwrap();
            prop_assert_eq!(linking_form(&q, a + b, c), linking_form(&q, a, c) + linking_form(&q, b, c));
            prop_assert_eq!(linking_form(&q, a, c), linking_form(&q, c, a));
        }

        #[test]
        fn bundle_linking_form_is_biadditive(p in -60i64..60, n in 1i64..40, a in 0i64..100, b in 0i64..100, c in 0i64..100) {
            prop_assume!((p - n) % 2 == 0);
            let q = bundle_quadratic_form(&SphereBundleParams::new(p, n).unwrap());
            prop_assert_eq!(linking_form(&q, a + b, c), linking_form(&q, a, c) + linking_form(&q, b, c));
        }

        #[test]
        fn every_form_is_well_defined(params in valid_params(15)) {
            prop_assume!(params.p_minus.gcd(&params.p_plus) == 1);
            prop_assert!(seifert_quadratic_form(&params).is_ok());
        }
    }
}
