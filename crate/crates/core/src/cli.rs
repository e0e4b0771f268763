//! Command-line front end.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use num_integer::Integer;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::classify::{self, classify_pk, exotic_sphere_count, ClassificationReport};
use crate::dedekind::{
    self, dedekind_closed_form_succ, duality_defect, sin_power_sum, sin_power_sum_closed, DedekindEvaluator,
    DedekindInput, EvalMode,
};
use crate::error::{Error, Result};
use crate::exactnum::{QmodZ, ResidueSet};
use crate::invariants::{
    self, bundle_mu, bundle_q, bundle_quadratic_form, ek_from_contributions, ek_pk, eells_kuiper_with,
    h4_order, half_pontryagin_pairing, linking_form, pk_quadratic_form, q_form, q_pk, t_invariant,
    SeifertParams, SphereBundleParams,
};
use crate::numeric;
use crate::scalar::Scalar;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFY_FAILED: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "exotic7", version, about = "Exact Eells-Kuiper invariants, quadratic forms and sphere-bundle classification")]
pub struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,
    /// Working precision in bits of the float oracle.
    #[arg(long, default_value_t = numeric::DEFAULT_PRECISION, global = true)]
    pub precision: usize,
    /// Largest p summed exactly; larger p use float reconstruction.
    #[arg(long, default_value_t = dedekind::DEFAULT_MAX_EXACT_P, global = true)]
    pub max_exact_p: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BundleInvariant {
    Mu,
    Q,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generalized Dedekind sum D(p,q).
    Dedekind { p: i64, q: i64 },
    /// Eells-Kuiper invariant of M_{(p-,q-),(p+,q+)}.
    Ek { p_minus: i64, q_minus: i64, p_plus: i64, q_plus: i64 },
    /// Quadratic form q_M(l).
    Qform { p_minus: i64, q_minus: i64, p_plus: i64, q_plus: i64, #[arg(allow_negative_numbers = true)] l: i64 },
    /// t-invariant t_M(l).
    Tinv { p_minus: i64, q_minus: i64, p_plus: i64, q_plus: i64, #[arg(allow_negative_numbers = true)] l: i64 },
    /// Invariants of the sphere bundle E_{p,n}.
    #[command(allow_negative_numbers = true)]
    Bundle { invariant: BundleInvariant, p: i64, n: i64, l: Option<i64> },
    /// Compare P_k with the sphere bundles E_{ak,k}.
    Classify {
        k: u64,
        /// Classify every k up to and including this value.
        #[arg(long)]
        range: Option<u64>,
    },
    /// Run the regression table and property suites.
    Verify {
        #[arg(long)]
        json: bool,
    },
}

/// A tagged command result.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum ResultValue {
    Rational { value: String },
    Qmodz { value: String, symmetric: String },
    Residues(ResidueSet),
    Report(Box<ReportPayload>),
}

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum ReportPayload {
    Classification(ClassificationReport),
    Verification(VerifySummary),
}

impl ResultValue {
    fn rational(r: &BigRational) -> Self {
        ResultValue::Rational { value: r.to_string() }
    }

    fn qmodz(q: &QmodZ) -> Self {
        ResultValue::Qmodz { value: q.to_string(), symmetric: q.symmetric().to_string() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OutputRecord {
    pub command: String,
    pub inputs: Value,
    pub result: ResultValue,
    pub mode: EvalMode,
}

impl OutputRecord {
    fn exact(command: &str, inputs: Value, result: ResultValue) -> Self {
        OutputRecord { command: command.to_string(), inputs, result, mode: EvalMode::Exact }
    }

    pub fn to_text(&self) -> String {
        let mut s = match &self.result {
            ResultValue::Rational { value } => value.clone(),
            ResultValue::Qmodz { value, symmetric } => qmodz_text(value, symmetric),
            ResultValue::Residues(set) => set.pretty(),
            ResultValue::Report(r) => match r.as_ref() {
                ReportPayload::Classification(c) => classification_text(c),
                ReportPayload::Verification(v) => verification_text(v),
            },
        };
        if self.mode == EvalMode::Reconstructed {
            s.push_str("  [reconstructed from floating point]");
        }
        s
    }
}

fn qmodz_text(value: &str, symmetric: &str) -> String {
    if value == symmetric {
        value.to_string()
    } else {
        format!("{value}  (≡ {symmetric} mod 1)")
    }
}

fn classification_text(r: &ClassificationReport) -> String {
    let homeo = match r.homeomorphism_witness {
        Some(b) => format!("homeomorphic to E_{{{0},{0}}} (unit {b})", r.k),
        None => format!("no isomorphism with the form of E_{{{0},{0}}} found", r.k),
    };
    let mut lines = vec![
        format!("k = {}", r.k),
        homeo,
        format!("ek(P_{}) = {}", r.k, qmodz_text(&r.ek.to_string(), &r.ek.symmetric().to_string())),
        format!("exotic spheres: {} mod 28", r.exotic_count),
        solutions_line("oriented diffeomorphic", &r.oriented_solutions),
        solutions_line("orientation reversing diffeomorphic", &r.reversing_solutions),
    ];
    if r.parity_filtered > 0 {
        lines.push(format!("{} residues dropped by the parity condition", r.parity_filtered));
    }
    lines.join("\n")
}

fn solutions_line(kind: &str, set: &ResidueSet) -> String {
    if set.is_empty() {
        format!("{kind}: no E_{{ak,k}}")
    } else {
        format!("{kind} to E_{{ak,k}} for a ≡ {}", set.pretty())
    }
}

fn verification_text(v: &VerifySummary) -> String {
    let mut lines: Vec<String> = v
        .checks
        .iter()
        .map(|c| {
            if c.passed {
                format!("PASS  {}", c.name)
            } else {
                format!("FAIL  {}: expected {}, got {}", c.name, c.expected, c.actual)
            }
        })
        .collect();
    lines.push(format!("{} passed, {} failed", v.passed, v.failed));
    lines.join("\n")
}

fn seifert(pm: i64, qm: i64, pp: i64, qp: i64) -> Result<(SeifertParams, Value)> {
    let params = SeifertParams::new(pm, qm, pp, qp)?;
    Ok((params, json!({"p_minus": pm, "q_minus": qm, "p_plus": pp, "q_plus": qp})))
}

/// Evaluates one command into its output records.
pub fn execute(command: &Command, ev: &DedekindEvaluator) -> Result<Vec<OutputRecord>> {
    let record = match *command {
        Command::Dedekind { p, q } => {
            let d = ev.evaluate(DedekindInput::new(p, q)?)?;
            OutputRecord {
                command: "dedekind".into(),
                inputs: json!({"p": p, "q": q}),
                result: ResultValue::rational(&d.value),
                mode: d.mode,
            }
        }
        Command::Ek { p_minus, q_minus, p_plus, q_plus } => {
            let (params, inputs) = seifert(p_minus, q_minus, p_plus, q_plus)?;
            let (ek, mode) = eells_kuiper_with(&params, ev)?;
            OutputRecord { command: "ek".into(), inputs, result: ResultValue::qmodz(&ek), mode }
        }
        Command::Qform { p_minus, q_minus, p_plus, q_plus, l } => {
            let (params, mut inputs) = seifert(p_minus, q_minus, p_plus, q_plus)?;
            inputs["l"] = json!(l);
            OutputRecord::exact("qform", inputs, ResultValue::qmodz(&q_form(&params, l)?))
        }
        Command::Tinv { p_minus, q_minus, p_plus, q_plus, l } => {
            let (params, mut inputs) = seifert(p_minus, q_minus, p_plus, q_plus)?;
            inputs["l"] = json!(l);
            OutputRecord::exact("tinv", inputs, ResultValue::qmodz(&t_invariant(&params, l)?))
        }
        Command::Bundle { invariant, p, n, l } => {
            let b = SphereBundleParams::new(p, n)?;
            let (value, inputs) = match (invariant, l) {
                (BundleInvariant::Mu, None) => (bundle_mu(&b), json!({"invariant": "mu", "p": p, "n": n})),
                (BundleInvariant::Q, Some(l)) => {
                    (bundle_q(&b, l), json!({"invariant": "q", "p": p, "n": n, "l": l}))
                }
                (BundleInvariant::Mu, Some(_)) => {
                    return Err(Error::InvalidParams("bundle mu takes no L argument".into()))
                }
                (BundleInvariant::Q, None) => return Err(Error::InvalidParams("bundle q needs an L argument".into())),
            };
            OutputRecord::exact("bundle", inputs, ResultValue::qmodz(&value))
        }
        Command::Classify { k, range } => {
            let end = range.unwrap_or(k);
            if end < k {
                return Err(Error::InvalidParams(format!("--range {end} is below k = {k}")));
            }
            return classify::classify_range(k, end)
                .into_iter()
                .zip(k..=end)
                .map(|(r, k)| {
                    Ok(OutputRecord::exact(
                        "classify",
                        json!({"k": k}),
                        ResultValue::Report(Box::new(ReportPayload::Classification(r?))),
                    ))
                })
                .collect();
        }
        Command::Verify { .. } => {
            let summary = verify(ev);
            OutputRecord::exact(
                "verify",
                json!({}),
                ResultValue::Report(Box::new(ReportPayload::Verification(summary))),
            )
        }
    };
    Ok(vec![record])
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Internal(_) | Error::FieldMismatch { .. } => EXIT_INTERNAL,
        _ => EXIT_USAGE,
    }
}

/// Runs a parsed command, writing to `out` and `err`; returns the exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let ev = DedekindEvaluator { max_exact_p: cli.max_exact_p, precision: cli.precision };
    let json = cli.format == Format::Json || matches!(cli.command, Command::Verify { json: true });
    let records = match execute(&cli.command, &ev) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return exit_code_for(&e);
        }
    };
    let printed = if json {
        let v = if records.len() == 1 && !matches!(cli.command, Command::Classify { range: Some(_), .. }) {
            serde_json::to_string_pretty(&records[0])
        } else {
            serde_json::to_string_pretty(&records)
        };
        writeln!(out, "{}", v.expect("output records serialize"))
    } else {
        let blocks: Vec<String> = records.iter().map(OutputRecord::to_text).collect();
        writeln!(out, "{}", blocks.join("\n\n"))
    };
    if printed.is_err() {
        return EXIT_INTERNAL;
    }
    match records.first().map(|r| &r.result) {
        Some(ResultValue::Report(r)) => match r.as_ref() {
            ReportPayload::Verification(v) if v.failed > 0 => EXIT_VERIFY_FAILED,
            _ => EXIT_OK,
        },
        _ => EXIT_OK,
    }
}

/// Parses `args` and runs; usage errors exit with [`EXIT_USAGE`].
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, out, err),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{rendered}") } else { write!(out, "{rendered}") };
            code
        }
    }
}

// ---------------------------------------------------------------------------
// regression suite

const HOLDS: &str = "holds";

type Compute = Box<dyn Fn(&DedekindEvaluator) -> Result<String> + Send + Sync>;

/// One row of the regression table: a name, the expected rendering and the
/// computation producing the actual one.
pub struct Check {
    pub name: String,
    pub expected: String,
    compute: Compute,
}

impl Check {
    pub fn new(
        name: impl Into<String>,
        expected: impl Into<String>,
        compute: impl Fn(&DedekindEvaluator) -> Result<String> + Send + Sync + 'static,
    ) -> Self {
        Check { name: name.into(), expected: expected.into(), compute: Box::new(compute) }
    }

    /// A property check: `find` returns a counterexample, or `None`.
    pub fn property(
        name: impl Into<String>,
        find: impl Fn(&DedekindEvaluator) -> Result<Option<String>> + Send + Sync + 'static,
    ) -> Self {
        Check::new(name, HOLDS, move |ev| Ok(find(ev)?.unwrap_or_else(|| HOLDS.to_string())))
    }

    pub fn run(&self, ev: &DedekindEvaluator) -> CheckOutcome {
        let actual = match (self.compute)(ev) {
            Ok(v) => v,
            Err(e) => format!("error: {e}"),
        };
        CheckOutcome { name: self.name.clone(), passed: actual == self.expected, expected: self.expected.clone(), actual }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifySummary {
    pub passed: usize,
    pub failed: usize,
    pub checks: Vec<CheckOutcome>,
}

/// Runs the checks concurrently; outcomes keep the table order.
pub fn run_checks(checks: &[Check], ev: &DedekindEvaluator) -> VerifySummary {
    let outcomes: Vec<CheckOutcome> = checks.par_iter().map(|c| c.run(ev)).collect();
    let passed = outcomes.iter().filter(|c| c.passed).count();
    VerifySummary { passed, failed: outcomes.len() - passed, checks: outcomes }
}

pub fn verify(ev: &DedekindEvaluator) -> VerifySummary {
    run_checks(&regression_table(), ev)
}

fn qz(n: i64, d: i64) -> String {
    QmodZ::from_frac(n, d).expect("nonzero denominator").to_string()
}

fn ek_of(ev: &DedekindEvaluator, pm: i64, qm: i64, pp: i64, qp: i64) -> Result<QmodZ> {
    Ok(eells_kuiper_with(&SeifertParams::new(pm, qm, pp, qp)?, ev)?.0)
}

fn d_of(p: i64, q: i64) -> Result<String> {
    Ok(dedekind::generalized_dedekind_sum(DedekindInput::new(p, q)?)?.to_string())
}

fn odd_upto(max: i64) -> impl Iterator<Item = i64> + Clone {
    (1..=max).step_by(2)
}

/// Every valid parameter quadruple with entries at most `max`.
pub fn valid_quadruples(max: i64) -> Vec<SeifertParams> {
    let mut out = Vec::new();
    for a in odd_upto(max) {
        for b in odd_upto(max) {
            for c in odd_upto(max) {
                for d in odd_upto(max) {
                    if let Ok(p) = SeifertParams::new(a, b, c, d) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

fn first_failure<T: std::fmt::Debug>(items: impl IntoIterator<Item = T>, mut bad: impl FnMut(&T) -> Result<bool>) -> Result<Option<String>> {
    for item in items {
        if bad(&item)? {
            return Ok(Some(format!("fails at {item:?}")));
        }
    }
    Ok(None)
}

fn mod112_pretty(rs: &[u64]) -> String {
    let parts: Vec<String> = rs.iter().map(|r| format!("±{r}")).collect();
    format!("{} mod 112", parts.join(", "))
}

/// Value checks taken from the published examples, followed by the property
/// suites at their default bounds.
pub fn regression_table() -> Vec<Check> {
    let mut t = vec![
        Check::new("ek of the Berger space (3,1,1,3)", "-27/1120", |ev| {
            Ok(ek_of(ev, 3, 1, 1, 3)?.symmetric().to_string())
        }),
        Check::new("ek(1,1,3,5) = ek(P_2)", "31/32", |ev| Ok(ek_of(ev, 1, 1, 3, 5)?.to_string())),
        Check::new("D(1,1)", "0", |_| d_of(1, 1)),
        Check::new("D(3,5)", "1/28", |_| d_of(3, 5)),
        Check::new("D(3,1)", "-1/28", |_| d_of(3, 1)),
        Check::new("D(3,5) by the closed form", "1/28", |_| {
            Ok(dedekind_closed_form_succ::<BigRational>(3).to_string())
        }),
        Check::new("sum of 1/sin^2(2πa/3)", "8/3", |_| Ok(sin_power_sum(3, 1)?.to_string())),
        Check::new("sum of 1/sin^4(2πa/5)", "96/5", |_| Ok(sin_power_sum(5, 2)?.to_string())),
        Check::new("duality defect at (1,1)", "0", |_| Ok(duality_defect(1, 1)?.to_string())),
        Check::new("H^4 order of (3,1,1,3)", "10", |_| Ok(h4_order(&SeifertParams::new(3, 1, 1, 3)?)?.to_string())),
        Check::new("q of the Berger space at 1", "11/20", |_| {
            Ok(q_form(&SeifertParams::new(3, 1, 1, 3)?, 1)?.to_string())
        }),
        Check::new("12 t of the Berger space at 1", "11/20", |_| {
            Ok(t_invariant(&SeifertParams::new(3, 1, 1, 3)?, 1)?.times(12).to_string())
        }),
        Check::new("ek(P_1)", "0", |_| Ok(ek_pk(1).to_string())),
        Check::new("ek(P_2)", qz(-1, 32), |_| Ok(ek_pk(2).to_string())),
        Check::new("ek(P_3)", qz(-15, 112), |_| Ok(ek_pk(3).to_string())),
        Check::new("ek(P_5)", qz(-156, 224), |_| Ok(ek_pk(5).to_string())),
        Check::new("mu(E_{4,2})", "1/32", |_| Ok(bundle_mu(&SphereBundleParams::new(4, 2)?).to_string())),
        Check::new("mu(E_{51,3})", qz(433, 112), |_| Ok(bundle_mu(&SphereBundleParams::new(51, 3)?).to_string())),
        Check::new("mu(E_{165,5})", qz(5444, 224), |_| {
            Ok(bundle_mu(&SphereBundleParams::new(165, 5)?).to_string())
        }),
        Check::new("mu(E_{55,5})", qz(604, 224), |_| Ok(bundle_mu(&SphereBundleParams::new(55, 5)?).to_string())),
        Check::new("q_{E_{4,2}}(1)", "1/4", |_| Ok(bundle_q(&SphereBundleParams::new(4, 2)?, 1).to_string())),
        Check::new("q_{P_2}(1)", "3/4", |_| Ok(q_pk(2, 1).to_string())),
        Check::new("P_1 oriented bundles", mod112_pretty(&[1, 15]), |_| {
            Ok(classify::oriented_diffeo_solutions(1)?.pretty())
        }),
        Check::new("P_2 oriented bundles", "none", |_| Ok(classify::oriented_diffeo_solutions(2)?.pretty())),
        Check::new("P_2 reversing bundles", "±2 mod 28", |_| Ok(classify::reversing_diffeo_solutions(2)?.pretty())),
        Check::new("P_3 oriented bundles", mod112_pretty(&[17, 31]), |_| {
            Ok(classify::oriented_diffeo_solutions(3)?.pretty())
        }),
        Check::new("P_4 oriented bundles", "none", |_| Ok(classify::oriented_diffeo_solutions(4)?.pretty())),
        Check::new("P_4 reversing bundles", "none", |_| Ok(classify::reversing_diffeo_solutions(4)?.pretty())),
        Check::new("P_5 oriented bundles", mod112_pretty(&[33, 47]), |_| {
            Ok(classify::oriented_diffeo_solutions(5)?.pretty())
        }),
        Check::new("P_5 reversing bundles", mod112_pretty(&[11, 53]), |_| {
            Ok(classify::reversing_diffeo_solutions(5)?.pretty())
        }),
        Check::new("exotic sphere count of P_4", "18", |_| {
            Ok(exotic_sphere_count(4).to_string())
        }),
        Check::property("q_{P_5}(2l) = -q_{E_{55,5}}(l)", |_| {
            let e = SphereBundleParams::new(55, 5)?;
            first_failure(0..5i64, |&l| Ok(q_pk(5, 2 * l) != -bundle_q(&e, l)))
        }),
    ];
    t.extend(property_suites());
    t
}

fn property_suites() -> Vec<Check> {
    vec![
        Check::property("D(p,p+2) matches its closed form for odd p <= 31", |_| {
            first_failure(odd_upto(31), |&p| {
                let d = dedekind::generalized_dedekind_sum(DedekindInput::new(p, p + 2)?)?;
                Ok(d != dedekind_closed_form_succ::<BigRational>(p as u64))
            })
        }),
        Check::property("sin power sums match their closed forms for odd p <= 31", |_| {
            first_failure(odd_upto(31).flat_map(|p| [(p, 1), (p, 2)]), |&(p, l)| {
                Ok(sin_power_sum(p, l)? != sin_power_sum_closed::<BigRational>(p, l)?)
            })
        }),
        Check::property("duality defect is an integer for coprime odd p, q <= 25", |_| {
            let pairs = odd_upto(25).flat_map(|p| odd_upto(25).map(move |q| (p, q))).filter(|(p, q)| p.gcd(q) == 1);
            first_failure(pairs, |&(p, q)| Ok(!duality_defect(p, q)?.is_integer()))
        }),
        Check::property("halved Dedekind sums agree for coprime odd p, q <= 25", |_| {
            let pairs = odd_upto(25).flat_map(|p| odd_upto(25).map(move |q| (p, q))).filter(|(p, q)| p.gcd(q) == 1);
            first_failure(pairs, |&(p, q)| {
                let input = DedekindInput::new(p, q)?;
                Ok(dedekind::dedekind_sum_halved(input)? != dedekind::generalized_dedekind_sum(input)?)
            })
        }),
        Check::property("ek(P_k) closed form equals the full formula for k <= 50", |ev| {
            first_failure(1..=50u64, |&k| Ok(eells_kuiper_with(&SeifertParams::pk(k)?, ev)?.0 != ek_pk(k)))
        }),
        Check::property("q_{P_k} equals the general quadratic form for k <= 50", |_| {
            let pairs = (1..=50u64).flat_map(|k| (0..k as i64).map(move |l| (k, l)));
            first_failure(pairs, |&(k, l)| Ok(q_form(&SeifertParams::pk(k)?, l)? != q_pk(k, l)))
        }),
        Check::property("contributions sum to ek for every quadruple with entries <= 15", |ev| {
            first_failure(valid_quadruples(15), |p| Ok(ek_from_contributions(p)? != eells_kuiper_with(p, ev)?.0))
        }),
        Check::property("ek is odd under orientation reversal for entries <= 15", |ev| {
            first_failure(valid_quadruples(15), |p| {
                Ok(!(eells_kuiper_with(p, ev)?.0 + eells_kuiper_with(&p.reversed(), ev)?.0).is_zero())
            })
        }),
        Check::property("12 t = q for coprime p± and entries <= 15", |_| {
            let cases: Vec<(SeifertParams, i64)> = valid_quadruples(15)
                .into_iter()
                .filter(|p| p.p_minus.gcd(&p.p_plus) == 1)
                .flat_map(|p| {
                    let k = h4_order(&p).unwrap_or(0) as i64;
                    (0..k).map(move |l| (p, l))
                })
                .collect();
            first_failure(cases, |(p, l)| Ok(t_invariant(p, *l)?.times(12) != q_form(p, *l)?))
        }),
        Check::property("q_{P_k} linking form is ij/k with trivial p1/2 pairing for k <= 50", |_| {
            for k in 1..=50u64 {
                let q = pk_quadratic_form(k)?;
                for i in 0..k as i64 {
                    if !half_pontryagin_pairing(&q, i).is_zero() {
                        return Ok(Some(format!("pairing fails at k={k}, a={i}")));
                    }
                    for j in 0..k as i64 {
                        if linking_form(&q, i, j) != QmodZ::from_frac(i * j, k as i64)? {
                            return Ok(Some(format!("lk fails at k={k}, ({i},{j})")));
                        }
                    }
                }
            }
            Ok(None)
        }),
        Check::property("q_{P_k} is isomorphic to q_{E_{k,k}} for k <= 50", |_| {
            first_failure(1..=50u64, |&k| {
                let e = bundle_quadratic_form(&SphereBundleParams::new(k as i64, k as i64)?);
                Ok(classify::quad_forms_isomorphic(&pk_quadratic_form(k)?, &e)?.is_none())
            })
        }),
        Check::property("mu(E_{k,k}) = (k-1)/224 for k <= 50", |_| {
            first_failure(1..=50i64, |&k| {
                Ok(bundle_mu(&SphereBundleParams::new(k, k)?) != QmodZ::from_frac(k - 1, 224)?)
            })
        }),
        Check::property("exotic count is 28 (ek(P_k) - mu(E_{k,k})) for k <= 50", |_| {
            first_failure(1..=50u64, |&k| {
                let diff = ek_pk(k) - bundle_mu(&SphereBundleParams::new(k as i64, k as i64)?);
                Ok(diff != QmodZ::from_frac(exotic_sphere_count(k) as i64, 28)?)
            })
        }),
        Check::property("congruence and invariant classifications agree for k <= 30", |_| {
            first_failure(1..=classify::CROSS_CHECK_BOUND, |&k| Ok(!classify_pk(k)?.cross_checked))
        }),
        Check::property("exact Dedekind sums agree with 192-bit floats to 1e-30", |_| {
            let mut cc = numeric::consts();
            let bits = numeric::DEFAULT_PRECISION;
            let tol = numeric::ten_pow_neg(30, bits, &mut cc);
            let pairs = odd_upto(31).map(|p| (p, p + 2)).chain([(3, 1), (1, 3), (3, 5)]);
            for (p, q) in pairs {
                let input = DedekindInput::new(p, q)?;
                let exact = dedekind::generalized_dedekind_sum(input)?;
                let approx = dedekind::dedekind_sum_element(input)?.eval_float(bits, &mut cc);
                if !numeric::le(&approx.distance_to_rational(&exact, &mut cc), &tol) {
                    return Ok(Some(format!("float gap too large at D({p},{q})")));
                }
                let direct = dedekind::dedekind_sum_float(input, bits, &mut cc);
                let gap = direct.sub(&exact.to_bigfloat(bits, &mut cc), bits, numeric::RM).abs();
                if !numeric::le(&gap, &tol) {
                    return Ok(Some(format!("transcendental sum disagrees at D({p},{q})")));
                }
            }
            Ok(None)
        }),
        Check::property("Eells-Kuiper contributions have the expected shape", |_| {
            let p = SeifertParams::new(1, 1, 3, 5)?;
            let smooth = invariants::ek_contribution_smooth::<BigRational>(&p);
            let spectral = invariants::ek_contribution_spectral::<BigRational>(&p);
            Ok((smooth != BigRational::new(1.into(), 4032.into()) || spectral != BigRational::new((-1).into(), 224.into()))
                .then(|| format!("smooth {smooth}, spectral {spectral}")))
        }),
    ]
}
