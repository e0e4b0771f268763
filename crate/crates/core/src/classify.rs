//! When is `P_k` homeomorphic or diffeomorphic to an `S^3`-bundle `E_{ak,k}`?
//!
//! `P_k` is always homeomorphic to `E_{k,k}`, and differs from it by the
//! connected sum with `(k - k³)/6` copies of the generator of the 28 exotic
//! 7-spheres. A diffeomorphism `P_k ≅ ±E_{ak,k}` exists exactly for the
//! residues `a mod 224` returned by [`oriented_diffeo_solutions`] and
//! [`reversing_diffeo_solutions`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{bigint_mod, is_quadratic_residue, solve_quadratic_congruence, QmodZ, ResidueSet};
use crate::invariants::{
    bundle_mu, bundle_quadratic_form, ek_pk, pk_quadratic_form, CyclicQuadraticForm, SphereBundleParams,
};

/// Modulus of the residue sets for `a`.
pub const A_MODULUS: u64 = 224;

/// Largest `k` for which [`classify_pk`] re-derives the residue sets from the
/// invariants.
pub const CROSS_CHECK_BOUND: u64 = 30;

/// Largest order accepted by [`quad_forms_isomorphic`].
pub const MAX_FORM_ORDER: u64 = 100_000;

/// `(k - k³)/6 mod 28`.
pub fn exotic_sphere_count(k: u64) -> u64 {
    let k = BigInt::from(k);
    let v = (&k - &k * &k * &k) / BigInt::from(6);
    bigint_mod(&v, 28)
}

/// `(7k - 4k³)/3`, which is an integer since `k³ ≡ k mod 3`.
pub fn oriented_target(k: u64) -> Result<BigInt> {
    let k = BigInt::from(k);
    let num = BigInt::from(7) * &k - BigInt::from(4) * &k * &k * &k;
    let (q, r) = num.div_rem(&BigInt::from(3));
    if !r.is_zero() {
        return Err(Error::Internal(format!("(7k - 4k^3)/3 is not an integer for k = {k}")));
    }
    Ok(q)
}

fn check_k(k: u64) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidParams("k must be at least 1".into()));
    }
    Ok(())
}

/// `k` odd or divisible by 8.
pub fn oriented_gate(k: u64) -> bool {
    k % 2 == 1 || k % 8 == 0
}

/// The three side conditions for an orientation-reversing diffeomorphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ReversingGates {
    pub not_divisible_by_7: bool,
    pub residue_class: bool,
    pub minus_one_is_square: bool,
}

impl ReversingGates {
    pub fn for_k(k: u64) -> Self {
        ReversingGates {
            not_divisible_by_7: k % 7 != 0,
            residue_class: k % 4 == 1 || matches!(k % 32, 2 | 10),
            minus_one_is_square: is_quadratic_residue(-1, k),
        }
    }

    pub fn all(&self) -> bool {
        self.not_divisible_by_7 && self.residue_class && self.minus_one_is_square
    }
}

/// Drops the residues `a` for which `E_{ak,k}` violates `ak ≡ k mod 2`;
/// returns how many were dropped.
fn enforce_parity(set: &mut ResidueSet, k: u64) -> usize {
    let before = set.len();
    set.retain(|a| (a * (k % 2) + k) % 2 == 0);
    before - set.len()
}

fn congruence_set(k: u64, target: &BigInt) -> ResidueSet {
    solve_quadratic_congruence(&BigInt::from(k), target, A_MODULUS)
}

/// `a mod 224` with `a²k ≡ (7k - 4k³)/3 mod 224`, empty unless
/// [`oriented_gate`] holds.
pub fn oriented_diffeo_solutions(k: u64) -> Result<ResidueSet> {
    oriented_with_filtered(k).map(|(s, _)| s)
}

fn oriented_with_filtered(k: u64) -> Result<(ResidueSet, usize)> {
    check_k(k)?;
    if !oriented_gate(k) {
        return Ok((ResidueSet::empty(A_MODULUS), 0));
    }
    let mut set = congruence_set(k, &oriented_target(k)?);
    let dropped = enforce_parity(&mut set, k);
    Ok((set, dropped))
}

/// `a mod 224` with `a²k ≡ 2 - (7k - 4k³)/3 mod 224`, empty unless every
/// [`ReversingGates`] condition holds.
pub fn reversing_diffeo_solutions(k: u64) -> Result<ResidueSet> {
    reversing_with_filtered(k).map(|(s, _)| s)
}

fn reversing_with_filtered(k: u64) -> Result<(ResidueSet, usize)> {
    check_k(k)?;
    if !ReversingGates::for_k(k).all() {
        return Ok((ResidueSet::empty(A_MODULUS), 0));
    }
    let mut set = congruence_set(k, &(BigInt::from(2) - oriented_target(k)?));
    let dropped = enforce_parity(&mut set, k);
    Ok((set, dropped))
}

/// The smallest unit `b` with `q1(b·x) = q2(x)` for all `x`, or `None`.
///
/// Units are searched exhaustively. Each candidate is tested at `x = 1, 2`,
/// which suffices because both sides have the form `Ax² + Bx`: a difference
/// `αx² + βx` that is integral at 1 and 2 has `2α` and `α + β` integral, and
/// `αx² + βx = 2α·x(x-1)/2 + (α + β)x`.
pub fn quad_forms_isomorphic(q1: &CyclicQuadraticForm, q2: &CyclicQuadraticForm) -> Result<Option<u64>> {
    let k = q1.order();
    if k != q2.order() {
        return Err(Error::InvalidParams(format!("forms on Z/{k} and Z/{} cannot be isomorphic", q2.order())));
    }
    if k > MAX_FORM_ORDER {
        return Err(Error::InvalidParams(format!("order {k} exceeds the supported bound {MAX_FORM_ORDER}")));
    }
    let (t1, t2) = (q2.eval(1), q2.eval(2));
    Ok((1..=k).filter(|b| b.gcd(&k) == 1).find(|&b| {
        let b = b as i64;
        q1.eval(b) == t1 && q1.eval(2 * b) == t2
    }))
}

/// The result of comparing `P_k` with the bundles `E_{ak,k}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub k: u64,
    pub standard_bundle: SphereBundleParams,
    /// Unit carrying `q_{E_{k,k}}` to `q_{P_k}`.
    pub homeomorphism_witness: Option<u64>,
    pub ek: QmodZ,
    pub exotic_count: u64,
    pub oriented_solutions: ResidueSet,
    pub reversing_solutions: ResidueSet,
    pub oriented_possible: bool,
    pub reversing_possible: bool,
    pub reversing_gates: ReversingGates,
    /// Residues removed because `E_{ak,k}` would violate `ak ≡ k mod 2`.
    pub parity_filtered: usize,
    /// Whether the residue sets were re-derived from the invariants.
    pub cross_checked: bool,
}

/// Residues `a mod 224` for which the invariants of `P_k` and `±E_{ak,k}`
/// agree: equal Eells-Kuiper invariants and isomorphic quadratic forms.
pub fn invariant_route_solutions(k: u64, reversing: bool) -> Result<ResidueSet> {
    check_k(k)?;
    let qp = pk_quadratic_form(k)?;
    let ek = ek_pk(k);
    let mut hits = Vec::new();
    for a in 0..A_MODULUS {
        let Some(p) = (a * k).to_i64() else { continue };
        let Ok(e) = SphereBundleParams::new(p, k as i64) else { continue };
        let (mu, qe) = if reversing {
            (-bundle_mu(&e), bundle_quadratic_form(&e).negate())
        } else {
            (bundle_mu(&e), bundle_quadratic_form(&e))
        };
        if mu == ek && quad_forms_isomorphic(&qp, &qe)?.is_some() {
            hits.push(a as i64);
        }
    }
    Ok(ResidueSet::from_residues(A_MODULUS, hits))
}

/// Classifies `P_k` against the sphere bundles. For `k <= CROSS_CHECK_BOUND`
/// the congruence answer is checked against [`invariant_route_solutions`]
/// and a disagreement is an [`Error::Internal`].
pub fn classify_pk(k: u64) -> Result<ClassificationReport> {
    check_k(k)?;
    let standard_bundle = SphereBundleParams::new(k as i64, k as i64)?;
    let homeomorphism_witness = if k <= MAX_FORM_ORDER {
        quad_forms_isomorphic(&bundle_quadratic_form(&standard_bundle), &pk_quadratic_form(k)?)?
    } else {
        None
    };
    let (oriented_solutions, f1) = oriented_with_filtered(k)?;
    let (reversing_solutions, f2) = reversing_with_filtered(k)?;
    let cross_checked = k <= CROSS_CHECK_BOUND;
    if cross_checked {
        for (reversing, set) in [(false, &oriented_solutions), (true, &reversing_solutions)] {
            let other = invariant_route_solutions(k, reversing)?;
            if &other != set {
                return Err(Error::Internal(format!(
                    "k = {k}: congruence residues {} disagree with invariant residues {}",
                    set.pretty(),
                    other.pretty()
                )));
            }
        }
    }
    Ok(ClassificationReport {
        k,
        standard_bundle,
        homeomorphism_witness,
        ek: ek_pk(k),
        exotic_count: exotic_sphere_count(k),
        oriented_possible: !oriented_solutions.is_empty(),
        reversing_possible: !reversing_solutions.is_empty(),
        oriented_solutions,
        reversing_solutions,
        reversing_gates: ReversingGates::for_k(k),
        parity_filtered: f1 + f2,
        cross_checked,
    })
}

/// [`classify_pk`] for every `k` in `start..=end`, in order.
pub fn classify_range(start: u64, end: u64) -> Vec<Result<ClassificationReport>> {
    (start..=end).into_par_iter().map(classify_pk).collect()
}
