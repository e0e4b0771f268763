//! Acceptance criteria, one line of output per criterion. Any failure makes
//! the binary exit nonzero.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use astro_float::{BigFloat, Consts, RoundingMode};
use exotic7::classify::{classify_pk, exotic_sphere_count, quad_forms_isomorphic};
use exotic7::dedekind::{dedekind_sum_element, DedekindEvaluator, EvalMode};
use exotic7::invariants::{
    bundle_quadratic_form, ek_contribution_cheeger_simons, ek_contribution_smooth, ek_contribution_spectral,
    ek_contribution_twisted, eells_kuiper_with, pk_quadratic_form, seifert_quadratic_form,
};
use exotic7::numeric::{le, DEFAULT_PRECISION};
use exotic7::{
    bundle_mu, bundle_q, duality_defect, eells_kuiper, ek_pk, generalized_dedekind_sum, h4_order,
    half_pontryagin_pairing, linking_form, q_form, q_pk, t_invariant, BigRational, CycloElement, CycloField,
    DedekindInput, ExactCyclo, QmodZ, ResidueSet, Scalar, SeifertParams, Side, SphereBundleParams,
};
use num_bigint::BigInt;
use num_integer::Integer;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const RM: RoundingMode = RoundingMode::ToEven;

type Outcome = Result<String, String>;

fn frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn qz(n: i64, d: i64) -> QmodZ {
    QmodZ::new(&frac(n, d))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn odd(max: i64) -> impl Iterator<Item = i64> + Clone {
    (1..=max).step_by(2)
}

fn random_quadruples(seed: u64, count: usize, max: i64) -> Vec<SeifertParams> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let mut draw = || 2 * rng.gen_range(0..(max + 1) / 2) + 1;
        let (a, b, c, d) = (draw(), draw(), draw(), draw());
        if let Ok(p) = SeifertParams::new(a, b, c, d) {
            out.push(p);
        }
    }
    out
}

fn criterion_5_params() -> Vec<SeifertParams> {
    random_quadruples(0x5eed_0005, 50, 15)
}

fn criterion_9_params() -> Vec<SeifertParams> {
    random_quadruples(0x5eed_0009, 20, 15)
}

// 1
fn berger_space() -> Outcome {
    let berger = SeifertParams::new(3, 1, 1, 3).map_err(err)?;
    let ek = eells_kuiper(&berger).map_err(err)?;
    ensure(ek == qz(-27, 1120), || format!("ek(3,1,1,3) = {ek}, expected -27/1120 mod 1"))?;
    Ok(format!("ek(3,1,1,3) = {ek} ≡ {}", ek.symmetric()))
}

// 2
fn pk_spot_values() -> Outcome {
    let start = Instant::now();
    let oracle = |k: i64| qz(-(4 * k * k * k - 7 * k + 3), 672);
    for (k, expected) in [(1u64, qz(0, 1)), (2, qz(-1, 32)), (3, qz(-15, 112)), (5, qz(-156, 224))] {
        ensure(ek_pk(k) == expected, || format!("closed form ek(P_{k}) = {}", ek_pk(k)))?;
    }
    let exact = DedekindEvaluator { max_exact_p: u64::MAX, ..DedekindEvaluator::default() };
    for k in 1..=50u64 {
        let closed = ek_pk(k);
        ensure(closed == oracle(k as i64), || format!("closed form disagrees with oracle at k={k}"))?;
        let params = SeifertParams::new(1, 1, 2 * k as i64 - 1, 2 * k as i64 + 1).map_err(err)?;
        let (full, mode) = eells_kuiper_with(&params, &exact).map_err(err)?;
        ensure(mode == EvalMode::Exact, || format!("k={k} was not evaluated exactly"))?;
        ensure(full == closed, || format!("k={k}: full formula {full}, closed form {closed}"))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}, limit 60 s"))?;
    Ok(format!("k <= 50 agree, {:.1} s", elapsed.as_secs_f64()))
}

// 3
fn dedekind_closed_form() -> Outcome {
    for p in odd(31) {
        let d = generalized_dedekind_sum(DedekindInput::new(p, p + 2).map_err(err)?).map_err(err)?;
        let closed = frac((p * p - 1) * (p * p * p + 3 * p * p + 9 * p - 27), 64 * 3 * 7 * p * p);
        ensure(d == closed, || format!("D({p},{}) = {d}, closed form {closed}", p + 2))?;
    }
    Ok("odd p <= 31".into())
}

fn coprime_pairs(max: i64) -> Vec<(i64, i64)> {
    odd(max).flat_map(|p| odd(max).map(move |q| (p, q))).filter(|(p, q)| p.gcd(q) == 1).collect()
}

// 4
fn duality() -> Outcome {
    let pairs = coprime_pairs(25);
    for &(p, q) in &pairs {
        let a = duality_defect(p, q).map_err(err)?;
        ensure(a.is_integer(), || format!("A({p},{q}) = {a} is not an integer"))?;
    }
    Ok(format!("{} coprime pairs", pairs.len()))
}

// 5
fn decomposition() -> Outcome {
    let params = criterion_5_params();
    for p in &params {
        let sum = ek_contribution_smooth::<BigRational>(p)
            + ek_contribution_twisted(p, Side::Minus).map_err(err)?
            + ek_contribution_twisted(p, Side::Plus).map_err(err)?
            + ek_contribution_spectral::<BigRational>(p)
            - ek_contribution_cheeger_simons::<BigRational>(p);
        let ek = eells_kuiper(p).map_err(err)?;
        ensure(QmodZ::new(&sum) == ek, || format!("{p:?}: contributions {} vs formula {ek}", QmodZ::new(&sum)))?;
    }
    Ok(format!("{} random quadruples", params.len()))
}

// 6
fn quadratic_form_facts() -> Outcome {
    for k in 1..=50u64 {
        let ki = k as i64;
        let params = SeifertParams::pk(k).map_err(err)?;
        let form = seifert_quadratic_form(&params).map_err(err)?;
        for l in 0..ki {
            let expected = qz(l * (l - ki), 2 * ki);
            let got = q_form(&params, l).map_err(err)?;
            ensure(got == expected, || format!("q_P{k}({l}) = {got}, expected {expected}"))?;
            ensure(q_pk(k, l) == expected, || format!("q_pk({k},{l}) = {}", q_pk(k, l)))?;
            let pairing = half_pontryagin_pairing(&form, l);
            ensure(pairing.is_zero(), || format!("q(a) - q(-a) = {pairing} at k={k}, a={l}"))?;
            for j in 0..ki {
                let lk = linking_form(&form, l, j);
                ensure(lk == qz(l * j, ki), || format!("lk({l},{j}) = {lk} on Z/{k}"))?;
            }
        }
    }
    Ok("k <= 50, all residues".into())
}

fn mod112(rs: &[i64]) -> ResidueSet {
    ResidueSet::from_residues(224, rs.iter().flat_map(|&r| [r, -r, 112 + r, 112 - r]))
}

// 7
fn classification_tables() -> Outcome {
    let mod28 = |r: i64| ResidueSet::from_residues(224, (0..8).flat_map(|j| [r + 28 * j, -r + 28 * j]));
    let empty = ResidueSet::empty(224);
    let table: [(u64, ResidueSet, ResidueSet, u64); 5] = [
        (1, mod112(&[1, 15]), mod112(&[1, 15]), 0),
        (2, empty.clone(), mod28(2), 27),
        (3, mod112(&[17, 31]), empty.clone(), 24),
        (4, empty.clone(), empty.clone(), 18),
        (5, mod112(&[33, 47]), mod112(&[11, 53]), 8),
    ];
    for (k, oriented, reversing, count) in table {
        let r = classify_pk(k).map_err(err)?;
        ensure(r.oriented_solutions == oriented, || format!("k={k} oriented {}", r.oriented_solutions.pretty()))?;
        ensure(r.reversing_solutions == reversing, || format!("k={k} reversing {}", r.reversing_solutions.pretty()))?;
        ensure(r.exotic_count == count, || format!("k={k} exotic count {}", r.exotic_count))?;
        ensure(exotic_sphere_count(k) == count, || format!("k={k} exotic_sphere_count"))?;
        ensure(r.homeomorphism_witness.is_some(), || format!("k={k} not homeomorphic to E_kk"))?;
    }
    let pretty: Vec<String> = (1..=5).map(|k| classify_pk(k).unwrap().oriented_solutions.pretty()).collect();
    ensure(pretty[0] == "±1, ±15 mod 112" && pretty[2] == "±17, ±31 mod 112" && pretty[4] == "±33, ±47 mod 112", || {
        format!("pretty forms {pretty:?}")
    })?;
    let r2 = classify_pk(2).map_err(err)?.reversing_solutions.pretty();
    ensure(r2 == "±2 mod 28", || format!("k=2 reversing prints as {r2}"))?;
    for k in 1..=50i64 {
        let mu = bundle_mu(&SphereBundleParams::new(k, k).map_err(err)?);
        ensure(mu == qz(k - 1, 224), || format!("mu(E_{k},{k}) = {mu}"))?;
    }
    let e = SphereBundleParams::new(55, 5).map_err(err)?;
    for l in 0..5 {
        ensure(q_pk(5, 2 * l) == -bundle_q(&e, l), || format!("witness fails at l={l}"))?;
    }
    let b = quad_forms_isomorphic(&pk_quadratic_form(5).map_err(err)?, &bundle_quadratic_form(&e).negate())
        .map_err(err)?;
    ensure(b.is_some(), || "no unit carries -q_E(55,5) to q_P5".into())?;
    Ok("k = 1..5 tables, mu(E_kk) for k <= 50, E_{55,5} witness".into())
}

// 8
fn twelve_t_is_q() -> Outcome {
    let mut cases = 0;
    let mut failures = Vec::new();
    let mut mirrored = 0;
    for pm in odd(15) {
        for qm in odd(15) {
            for pp in odd(15) {
                for qp in odd(15) {
                    let Ok(params) = SeifertParams::new(pm, qm, pp, qp) else { continue };
                    if pm.gcd(&pp) != 1 {
                        continue;
                    }
                    let k = h4_order(&params).map_err(err)? as i64;
                    for l in 0..k {
                        cases += 1;
                        let t12 = t_invariant(&params, l).map_err(err)?.times(12);
                        let q = q_form(&params, l).map_err(err)?;
                        let mirror = q_form(&params, -l).map_err(err)?;
                        if t12 == if params.x() < 0 { mirror.clone() } else { -mirror } {
                            mirrored += 1;
                        }
                        if t12 != q {
                            failures.push(format!("({pm},{qm},{pp},{qp}) l={l}: 12t = {t12}, q = {q}"));
                        }
                    }
                }
            }
        }
    }
    ensure(failures.is_empty(), || {
        format!(
            "{} of {cases} cases differ, first: {}; 12 t(l) = -sign(X) q(-l) in {mirrored} of {cases}",
            failures.len(),
            failures[0]
        )
    })?;
    Ok(format!("{cases} cases"))
}

/// Every Dedekind input that criteria 1 to 5 evaluate.
fn dedekind_inputs() -> BTreeSet<(i64, i64)> {
    let mut inputs = BTreeSet::new();
    let mut add_params = |p: &SeifertParams| {
        inputs.insert((p.p_minus, p.q_minus));
        inputs.insert((p.p_plus, p.q_plus));
    };
    add_params(&SeifertParams::new(3, 1, 1, 3).unwrap());
    for k in 1..=50 {
        add_params(&SeifertParams::pk(k).unwrap());
    }
    for p in &criterion_5_params() {
        add_params(p);
    }
    for p in odd(31) {
        inputs.insert((p, p + 2));
    }
    for (p, q) in coprime_pairs(25) {
        inputs.insert((p, q));
        inputs.insert((q, p));
    }
    inputs
}

fn float_gap(e: &ExactCyclo, re: &BigFloat, bits: usize, cc: &mut Consts) -> BigFloat {
    let z = e.eval_float(bits, cc);
    let dr = z.re.sub(re, bits, RM);
    dr.mul(&dr, bits, RM).add(&z.im.mul(&z.im, bits, RM), bits, RM).sqrt(bits, RM)
}

// 9
fn property_suite() -> Outcome {
    let bits = DEFAULT_PRECISION;
    let mut cc = Consts::new().map_err(err)?;
    let tol = BigFloat::parse("1e-30", astro_float::Radix::Dec, bits, RM, &mut cc);
    let inputs = dedekind_inputs();

    // trigonometric values, grouped by field
    let mut angles: BTreeSet<(u64, i64)> = BTreeSet::new();
    for &(p, q) in &inputs {
        for a in 1..p {
            angles.insert((p as u64, (4 * a).rem_euclid(2 * p)));
            angles.insert((p as u64, (q * a).rem_euclid(2 * p)));
        }
    }
    let mut checked = 0usize;
    let mut inverted = BTreeSet::new();
    for &(p, x) in &angles {
        let field = CycloField::get(4 * p);
        let s = CycloElement::<BigRational>::sin_pi(&field, x, p);
        let c = CycloElement::<BigRational>::cos_pi(&field, x, p);
        ensure((&s * &s + &c * &c) == CycloElement::one(&field), || format!("sin²+cos² ≠ 1 at {x}π/{p}"))?;
        // |sin| repeats with period p and under x -> p - x
        let rep = (p, x.rem_euclid(p as i64).min(p as i64 - x.rem_euclid(p as i64)));
        if !s.is_zero() && inverted.insert(rep) {
            let inv = s.invert().map_err(err)?;
            ensure(&s * &inv == CycloElement::one(&field), || format!("sin·sin⁻¹ ≠ 1 at {x}π/{p}"))?;
        }
        let pf = BigFloat::from_u64(p, bits + 32);
        let angle = cc.pi(bits + 32, RM).mul(&BigFloat::from_i64(x, bits + 32), bits + 32, RM).div(&pf, bits + 32, RM);
        let sin_ref = angle.sin(bits + 32, RM, &mut cc);
        let cos_ref = angle.cos(bits + 32, RM, &mut cc);
        ensure(le(&float_gap(&s, &sin_ref, bits, &mut cc), &tol), || format!("float sin({x}π/{p}) off"))?;
        ensure(le(&float_gap(&c, &cos_ref, bits, &mut cc), &tol), || format!("float cos({x}π/{p}) off"))?;
        checked += 2;
    }

    // Dedekind sums before rational extraction
    for &(p, q) in &inputs {
        let input = DedekindInput::new(p, q).map_err(err)?;
        let element = dedekind_sum_element(input).map_err(err)?;
        let exact = element.as_rational().ok_or_else(|| format!("D({p},{q}) not rational"))?;
        let gap = float_gap(&element, &exact.to_bigfloat(bits, &mut cc), bits, &mut cc);
        ensure(le(&gap, &tol), || format!("float D({p},{q}) off from {exact}"))?;
        checked += 1;
    }

    // orientation reversal
    let params = criterion_9_params();
    for p in &params {
        let sum = eells_kuiper(p).map_err(err)? + eells_kuiper(&p.reversed()).map_err(err)?;
        ensure(sum.is_zero(), || format!("ek{p:?} + ek(reversed) = {sum}"))?;
    }
    Ok(format!(
        "{checked} float comparisons, {} inverses, {} reversal pairs",
        inverted.len(),
        params.len()
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("Berger space Eells-Kuiper invariant", berger_space),
        ("P_k spot values, closed form vs full formula", pk_spot_values),
        ("D(p,p+2) closed form", dedekind_closed_form),
        ("duality defect integrality", duality),
        ("four-contribution decomposition", decomposition),
        ("quadratic and linking form of P_k", quadratic_form_facts),
        ("classification tables and bundle identities", classification_tables),
        ("12 t = q", twelve_t_is_q),
        ("cyclotomic properties and orientation reversal", property_suite),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail}; {secs:.2} s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why} ({secs:.2} s)", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
