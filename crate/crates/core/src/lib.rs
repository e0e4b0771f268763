//! Exact invariants of the cohomogeneity-one 7-manifolds `M_{(p-,q-),(p+,q+)}`
//! and of `S^3`-bundles over `S^4`.
//!
//! The crate evaluates generalized Dedekind sums exactly in cyclotomic fields,
//! assembles them into Eells-Kuiper invariants, computes the quadratic linking
//! form and the t-invariant, and decides when the spaces `P_k` are
//! diffeomorphic to sphere bundles.
//!
//! Everything that lands in `Q/Z` is computed with [`BigRational`]; nothing on
//! the exact path touches floating point. The polynomial and cyclotomic ring
//! layer and the closed-form rational formulas are generic over [`Scalar`], so
//! the same code runs over `f64` when a quick approximation is enough.
//!
//! ```
//! use exotic7::{eells_kuiper, SeifertParams};
//!
//! let berger = SeifertParams::new(3, 1, 1, 3).unwrap();
//! let ek = eells_kuiper(&berger).unwrap();
//! assert_eq!(ek.to_string(), "1093/1120");
//! assert_eq!(ek.symmetric().to_string(), "-27/1120");
//! ```

pub mod classify;
pub mod cli;
pub mod cyclotomic;
pub mod dedekind;
mod error;
pub mod exactnum;
pub mod invariants;
pub mod numeric;
pub mod poly;
pub mod scalar;

pub use error::{Error, Result};
pub use exactnum::{
    is_quadratic_residue, parse_rational, qmodz_reduce, solve_square_congruence, BigRational,
    QmodZ, ResidueSet,
};
pub use scalar::Scalar;

pub use cyclotomic::{cyclotomic_polynomial, CycloElement, CycloField};
pub use classify::{
    classify_pk, exotic_sphere_count, oriented_diffeo_solutions, quad_forms_isomorphic,
    reversing_diffeo_solutions, ClassificationReport,
};
pub use dedekind::{
    dedekind_closed_form_succ, duality_defect, generalized_dedekind_sum, sin_power_sum,
    DedekindInput,
};
pub use invariants::{
    bundle_mu, bundle_q, eells_kuiper, ek_pk, h4_order, half_pontryagin_pairing, linking_form,
    q_form, q_pk, t_invariant, CyclicQuadraticForm, SeifertParams, Side, SphereBundleParams,
};

/// Exact cyclotomic field elements, the type every trigonometric value lives in.
pub type ExactCyclo = CycloElement<BigRational>;
/// Double-precision cyclotomic elements, for quick approximate evaluation.
pub type FloatCyclo = CycloElement<f64>;
/// Single-precision cyclotomic elements.
pub type FloatCyclo32 = CycloElement<f32>;
/// Exact polynomials over the rationals.
pub type RationalPoly = poly::Poly<BigRational>;
