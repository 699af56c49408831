//! Command-line front end: JSON problem files in, JSON documents out.
//!
//! Exit codes: 0 on success, 1 when the input is well formed but mathematically
//! rejected, 2 when the input is malformed.

mod io;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

pub use io::{
    matrix_json, norm_json, parse_matrix, parse_scalar, scalar_json, vector_json, AnyMatrix,
    Malformed, Serial, MAX_DIMENSION, MAX_PRECISION,
};

use crate::error::PadicError;
use crate::linalg::{certify_orthogonal_projection, sample_vector, UMatrix};
use crate::norm::Norm;
use crate::operators::{
    CoefficientOperator, KochubeiLower, KochubeiRaise, MahlerVector, Shift, TateLower, TateRaise,
    TateVector,
};
use crate::orbit::{classify_orbit, FrobeniusOrbit, OrbitClass};
use crate::padic::{teichmuller_digits, teichmuller_lift, PadicScalar, PrecisionContext, DEFAULT_PERIOD_CAP};
use crate::scalar::{vector_norm, Scalar};
use crate::spectral::{
    factorial_chain_spectral, hermite_digits_matrix, jordan_decompose, spectral_integral,
    spectral_measure_with_period, spectrum_diameter, teichmuller_spectral, uncertainty_check,
    SpectralDecomposition,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_REJECTED: i32 = 1;
pub const EXIT_MALFORMED: i32 = 2;

/// Environment variable consulted for the precision when neither flag nor file gives one.
pub const DEFAULT_M_VAR: &str = "PADIC_DEFAULT_M";

const MAX_COEFFICIENTS: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(name = "padic-spectral", version, about = "Spectral computations over the p-adic integers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Default)]
struct Common {
    /// JSON problem file.
    #[arg(long = "in", value_name = "FILE")]
    input: Option<PathBuf>,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    m: Option<u32>,
    /// Frobenius period (residue degree of the spectral points).
    #[arg(long = "N", value_name = "N")]
    period: Option<u32>,
    #[arg(long)]
    depth: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    samples: Option<usize>,
    /// Largest period searched for.
    #[arg(long = "n-max")]
    n_max: Option<u32>,
    /// Problem document supplied in memory rather than through `--in`.
    #[arg(skip)]
    document: Option<String>,
    /// Write the document here instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Teichmüller lift of a residue.
    Lift {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        residue: u64,
    },
    /// Teichmüller digit expansion of a scalar.
    Digits {
        #[command(flatten)]
        common: Common,
        /// Integer or fraction `a/b`.
        #[arg(long, allow_hyphen_values = true)]
        value: Option<String>,
    },
    /// Frobenius orbit class of a scalar or matrix.
    Classify {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        value: Option<String>,
    },
    /// Lagrange spectral decomposition of a Teichmüller matrix.
    Spectral {
        #[command(flatten)]
        common: Common,
        /// Use the factorial chain of periods 1, 2, 6, 24.
        #[arg(long)]
        factorial: bool,
    },
    /// Spectral measure of a Hermite matrix.
    Measure(Common),
    /// Spectral integral of the measure against 1 and against the identity function.
    Integral(Common),
    /// Semisimple plus topologically nilpotent decomposition.
    Jordan(Common),
    /// Hermite digit expansion.
    Hermite(Common),
    /// Spectrum diameter and the norm laws.
    Diam(Common),
    /// Commutator bound against the product of diameters.
    Uncertainty(Common),
    /// Kochubei ladder operators on Mahler coefficients.
    Kochubei {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        op: Option<String>,
        /// Comma-separated integer coefficients.
        #[arg(long, allow_hyphen_values = true)]
        coeffs: Option<String>,
    },
    /// Euler operator and its ladder factors on the Tate algebra.
    Euler {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        op: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        coeffs: Option<String>,
    },
    /// Certificate for the orthogonal-projection characterizations.
    CertifyProjection(Common),
}

impl Command {
    fn common_mut(&mut self) -> &mut Common {
        match self {
            Command::Lift { common, .. }
            | Command::Digits { common, .. }
            | Command::Classify { common, .. }
            | Command::Spectral { common, .. }
            | Command::Kochubei { common, .. }
            | Command::Euler { common, .. } => common,
            Command::Measure(common)
            | Command::Integral(common)
            | Command::Jordan(common)
            | Command::Hermite(common)
            | Command::Diam(common)
            | Command::Uncertainty(common)
            | Command::CertifyProjection(common) => common,
        }
    }
}

enum Failure {
    Malformed(Malformed),
    Rejected { doc: Value, message: String },
}

impl From<Malformed> for Failure {
    fn from(m: Malformed) -> Self {
        Failure::Malformed(m)
    }
}

type CmdResult = std::result::Result<Value, Failure>;

fn reject(e: PadicError) -> Failure {
    let message = e.to_string();
    let mut doc = json!({"status": "rejected", "error": message});
    match &e {
        PadicError::NotHermite {
            stage,
            defect,
            reason,
        } => {
            doc["reason"] = json!(format!("{reason} at digit {stage}"));
            doc["stage"] = json!(stage);
            doc["defect"] = norm_json(*defect);
        }
        PadicError::PeriodExceeded { n_max, iterations } => {
            doc["reason"] = json!(format!("no period up to {n_max}"));
            doc["iterations"] = json!(iterations);
        }
        _ => doc["reason"] = json!(message),
    }
    Failure::Rejected { doc, message }
}

/// A document that carries a failed verdict is printed but exits with code 1.
fn verdict(doc: Value, ok: bool, message: &str) -> CmdResult {
    if ok {
        Ok(doc)
    } else {
        Err(Failure::Rejected {
            doc,
            message: message.to_string(),
        })
    }
}

struct Problem {
    doc: Value,
    ctx: PrecisionContext,
    period: u32,
    n_max: u32,
}

impl Problem {
    fn field(&self, name: &str) -> Option<&Value> {
        self.doc.get(name).filter(|v| !v.is_null())
    }

    fn header(&self, command: &str) -> Value {
        json!({
            "command": command,
            "status": "ok",
            "p": self.ctx.p(),
            "m": self.ctx.m(),
            "N": self.period,
        })
    }

    fn matrix(&self, field: &str) -> std::result::Result<AnyMatrix, Malformed> {
        let v = self
            .field(field)
            .ok_or_else(|| Malformed::field(field, "missing"))?;
        let degree = self.field("degree").map(|d| {
            d.as_u64()
                .map(|d| d as u32)
                .ok_or_else(|| Malformed::field("degree", "expected a positive integer"))
        });
        let degree = degree.transpose()?;
        parse_matrix(field, v, self.ctx, degree)
    }

    /// The matrix moved into the extension of degree `N` when `N > 1`.
    fn matrix_at_period(&self, field: &str) -> std::result::Result<AnyMatrix, Malformed> {
        match self.matrix(field)? {
            AnyMatrix::Base(a) if self.period > 1 => {
                let ring = io::ext_ring("N", self.ctx, self.period)?;
                a.embed(&ring)
                    .map(AnyMatrix::Ext)
                    .map_err(|e| Malformed::field(field, e))
            }
            other => Ok(other),
        }
    }
}

fn uint_field(doc: &Value, name: &str) -> std::result::Result<Option<u64>, Malformed> {
    match doc.get(name) {
        None | Some(Value::Null) => Ok(None),
        Some(v) => v
            .as_u64()
            .map(Some)
            .ok_or_else(|| Malformed::field(name, "expected a non-negative integer")),
    }
}

fn narrow(name: &str, v: Option<u64>) -> std::result::Result<Option<u32>, Malformed> {
    v.map(|x| u32::try_from(x).map_err(|_| Malformed::field(name, "value too large")))
        .transpose()
}

fn load(common: &Common, needs_file: bool) -> std::result::Result<Problem, Malformed> {
    let text = match (&common.document, &common.input) {
        (Some(text), _) => Some(text.clone()),
        (None, Some(path)) => Some(
            std::fs::read_to_string(path)
                .map_err(|e| Malformed::field("--in", format!("cannot read {}: {e}", path.display())))?,
        ),
        (None, None) => None,
    };
    let doc = match text {
        Some(text) => {
            let doc: Value = serde_json::from_str(&text)
                .map_err(|e| Malformed::field("--in", format!("invalid JSON: {e}")))?;
            if !doc.is_object() {
                return Err(Malformed::field("--in", "expected a JSON object"));
            }
            doc
        }
        None if needs_file => return Err(Malformed::field("--in", "a problem file is required")),
        None => json!({}),
    };
    let p = match common.p {
        Some(p) => p,
        None => uint_field(&doc, "p")?.ok_or_else(|| Malformed::field("p", "missing"))?,
    };
    let m = match common.m.or(narrow("m", uint_field(&doc, "m")?)?) {
        Some(m) => m,
        None => match std::env::var(DEFAULT_M_VAR) {
            Ok(s) => s
                .trim()
                .parse()
                .map_err(|_| Malformed::field(DEFAULT_M_VAR, format!("`{s}` is not a precision")))?,
            Err(_) => return Err(Malformed::field("m", "missing")),
        },
    };
    if m == 0 || m > MAX_PRECISION {
        return Err(Malformed::field("m", format!("precision must lie in 1..={MAX_PRECISION}")));
    }
    let period = common.period.or(narrow("N", uint_field(&doc, "N")?)?).unwrap_or(1);
    if period == 0 {
        return Err(Malformed::field("N", "period must be at least 1"));
    }
    io::check_enumerable("N", p, period)?;
    let n_max = common
        .n_max
        .or(narrow("n_max", uint_field(&doc, "n_max")?)?)
        .or(narrow("N_max", uint_field(&doc, "N_max")?)?)
        .unwrap_or(DEFAULT_PERIOD_CAP);
    if n_max == 0 {
        return Err(Malformed::field("n_max", "must be at least 1"));
    }
    let ctx = PrecisionContext::with_period_cap(p, m, n_max.max(period)).map_err(|e| match e {
        PadicError::NotPrime(_) => Malformed::field("p", e),
        _ => Malformed::field("m", e),
    })?;
    Ok(Problem {
        doc,
        ctx,
        period,
        n_max,
    })
}

macro_rules! with_matrix {
    ($m:expr, $a:ident => $body:expr) => {
        match $m {
            AnyMatrix::Base($a) => $body,
            AnyMatrix::Ext($a) => $body,
        }
    };
}

fn cmd_lift(common: &Common, residue: u64) -> CmdResult {
    let pr = load(common, false)?;
    if residue >= pr.ctx.p() {
        return Err(Malformed::field("residue", format!("must be below p = {}", pr.ctx.p())).into());
    }
    let w = teichmuller_lift(residue, pr.ctx).map_err(reject)?;
    let value = w.to_residue().map_err(reject)?;
    let mut doc = pr.header("lift");
    doc["residue"] = json!(residue);
    doc["value"] = json!(value.to_string());
    doc["scalar"] = scalar_json(&w);
    Ok(doc)
}

fn scalar_input(pr: &Problem, flag: &Option<String>) -> std::result::Result<PadicScalar, Malformed> {
    match flag {
        Some(s) => parse_scalar("value", &Value::String(s.clone()), pr.ctx),
        None => parse_scalar(
            "value",
            pr.field("value").ok_or_else(|| Malformed::field("value", "missing"))?,
            pr.ctx,
        ),
    }
}

fn cmd_digits(common: &Common, value: &Option<String>) -> CmdResult {
    let pr = load(common, false)?;
    let x = scalar_input(&pr, value)?;
    let d = teichmuller_digits(&x).map_err(reject)?;
    let reassembled = d.reassemble();
    let mut doc = pr.header("digits");
    doc["value"] = scalar_json(&x);
    doc["lead_valuation"] = json!(d.lead_valuation);
    doc["digits"] = vector_json(&d.digits);
    doc["indices"] = json!(d.indices());
    doc["exact"] = json!(reassembled == x);
    Ok(doc)
}

fn class_json<T: FrobeniusOrbit>(class: &OrbitClass<T>, to_json: impl Fn(&T) -> Value) -> Value {
    let mut out = json!({"class": class.label()});
    match class {
        OrbitClass::TopNilpotent { steps } => out["steps"] = json!(steps),
        OrbitClass::Periodic(n) => out["period"] = json!(n),
        OrbitClass::QuasiPeriodic { period, limit } => {
            out["period"] = json!(period);
            out["limit"] = to_json(limit);
        }
        OrbitClass::ChaosAtPrecision => {}
    }
    out
}

fn cmd_classify(common: &Common, value: &Option<String>) -> CmdResult {
    let pr = load(common, value.is_none())?;
    let mut doc = pr.header("classify");
    doc["n_max"] = json!(pr.n_max);
    let class = if value.is_some() || pr.field("entries").is_none() {
        let x = scalar_input(&pr, value)?;
        doc["value"] = scalar_json(&x);
        class_json(&classify_orbit(&x, pr.n_max).map_err(reject)?, scalar_json)
    } else {
        with_matrix!(pr.matrix("entries")?, a => {
            doc["entries"] = matrix_json(&a);
            class_json(&classify_orbit(&a, pr.n_max).map_err(reject)?, matrix_json)
        })
    };
    for (k, v) in class.as_object().expect("class is an object") {
        doc[k] = v.clone();
    }
    Ok(doc)
}

fn decomposition_json<S: Serial>(d: &SpectralDecomposition<S>, x: &UMatrix<S>, doc: &mut Value) -> bool {
    let check = d.check(x);
    doc["spectral_period"] = json!(d.period);
    doc["points"] = Value::Array(
        d.points
            .iter()
            .map(|pt| {
                json!({
                    "index": pt.index,
                    "eigenvalue": pt.eigenvalue.to_json(),
                    "projector": matrix_json(&pt.projector),
                })
            })
            .collect(),
    );
    doc["check"] = json!(check);
    doc["exact"] = json!(check.is_exact());
    check.is_exact()
}

fn cmd_spectral(common: &Common, factorial: bool) -> CmdResult {
    let pr = load(common, true)?;
    let mut doc = pr.header("spectral");
    let exact = if factorial {
        let AnyMatrix::Base(a) = pr.matrix("entries")? else {
            return Err(Malformed::field("entries", "the factorial chain expects a matrix over Z_p").into());
        };
        doc["entries"] = matrix_json(&a);
        let d = factorial_chain_spectral(&a, pr.n_max).map_err(reject)?;
        let ring = d.points[0].projector.ring().clone();
        let x = a.embed(&ring).map_err(reject)?;
        decomposition_json(&d, &x, &mut doc)
    } else {
        with_matrix!(pr.matrix_at_period("entries")?, a => {
            doc["entries"] = matrix_json(&a);
            let d = teichmuller_spectral(&a, pr.period).map_err(reject)?;
            decomposition_json(&d, &a, &mut doc)
        })
    };
    verdict(doc, exact, "decomposition identities fail at precision")
}

fn depth_of(pr: &Problem, common: &Common) -> std::result::Result<usize, Malformed> {
    let depth = match common.depth {
        Some(d) => d,
        None => uint_field(&pr.doc, "depth")?.map_or(pr.ctx.m() as usize, |d| d as usize),
    };
    if depth == 0 || depth > pr.ctx.m() as usize {
        return Err(Malformed::field("depth", format!("must lie in 1..={}", pr.ctx.m())));
    }
    Ok(depth)
}

fn cmd_measure(common: &Common) -> CmdResult {
    let pr = load(common, true)?;
    let depth = depth_of(&pr, common)?;
    let mut doc = pr.header("measure");
    let valid = with_matrix!(pr.matrix_at_period("entries")?, a => {
        doc["entries"] = matrix_json(&a);
        let mu = spectral_measure_with_period(&a, pr.period, depth).map_err(reject)?;
        let check = mu.check();
        doc["depth"] = json!(depth);
        doc["lead_valuation"] = json!(mu.lead_valuation);
        doc["node_counts"] = json!(mu.node_counts());
        let mut nodes = Vec::new();
        for (level, map) in mu.levels.iter().enumerate() {
            for (address, pi) in map {
                nodes.push(json!({
                    "level": level,
                    "address": address,
                    "center": mu.center(address).to_json(),
                    "projector": matrix_json(pi),
                }));
            }
        }
        doc["nodes"] = Value::Array(nodes);
        doc["check"] = json!(check);
        check.is_valid()
    });
    verdict(doc, valid, "spectral measure fails its checks")
}

#[allow(clippy::clone_on_copy)]
fn cmd_integral(common: &Common) -> CmdResult {
    let pr = load(common, true)?;
    let depth = depth_of(&pr, common)?;
    let mut doc = pr.header("integral");
    let exact = with_matrix!(pr.matrix_at_period("entries")?, a => {
        doc["entries"] = matrix_json(&a);
        let mu = spectral_measure_with_period(&a, pr.period, depth).map_err(reject)?;
        let (identity, reconstruction) = spectral_integral(&mu);
        let n = a.dim();
        let identity_defect = identity.sub(&UMatrix::identity(a.ring().clone(), n)).norm();
        let reconstruction_error = reconstruction.sub(&a).norm();
        let bound = Norm::from_valuation(mu.lead_valuation + depth as i64);
        doc["depth"] = json!(depth);
        doc["identity"] = matrix_json(&identity);
        doc["reconstruction"] = matrix_json(&reconstruction);
        doc["identity_defect"] = norm_json(identity_defect);
        doc["reconstruction_error"] = norm_json(reconstruction_error);
        doc["error_bound"] = norm_json(bound);
        identity_defect.is_zero() && reconstruction_error <= bound
    });
    verdict(doc, exact, "spectral integral misses its bound")
}

fn cmd_jordan(common: &Common) -> CmdResult {
    let pr = load(common, true)?;
    let mut doc = pr.header("jordan");
    doc["n_max"] = json!(pr.n_max);
    let verified = with_matrix!(pr.matrix("entries")?, a => {
        doc["entries"] = matrix_json(&a);
        let j = jordan_decompose(&a, pr.n_max).map_err(reject)?;
        doc["semisimple"] = matrix_json(&j.semisimple);
        doc["nilpotent"] = matrix_json(&j.nilpotent);
        doc["period"] = json!(j.period);
        doc["settle_steps"] = json!(j.settle_steps);
        doc["steps_to_kill"] = json!(j.steps_to_kill);
        j.verify(&a)
    });
    doc["verified"] = json!(verified);
    verdict(doc, verified, "Jordan pair fails verification")
}

fn cmd_hermite(common: &Common) -> CmdResult {
    let pr = load(common, true)?;
    let mut doc = pr.header("hermite");
    let exact = with_matrix!(pr.matrix("entries")?, a => {
        doc["entries"] = matrix_json(&a);
        let h = hermite_digits_matrix(&a, pr.period).map_err(reject)?;
        let check = h.check(&a);
        doc["lead_valuation"] = json!(h.lead_valuation);
        doc["digits"] = Value::Array(h.digits.iter().map(matrix_json).collect());
        doc["check"] = json!(check);
        check.is_exact()
    });
    verdict(doc, exact, "Hermite expansion fails its checks")
}

fn cmd_diam(common: &Common) -> CmdResult {
    let pr = load(common, true)?;
    let mut doc = pr.header("diam");
    with_matrix!(pr.matrix_at_period("entries")?, a => {
        doc["entries"] = matrix_json(&a);
        let r = spectrum_diameter(&a, pr.period).map_err(reject)?;
        doc["diameter"] = norm_json(r.diameter);
        doc["operator_norm"] = norm_json(r.operator_norm);
        doc["spectral_radius"] = norm_json(r.spectral_radius);
        doc["spectrum"] = vector_json(&r.spectrum);
        doc["norm_law"] = json!(r.norm_law);
        doc["translation_law"] = json!(r.translation_law);
    });
    Ok(doc)
}

fn unit_vectors<S: Scalar>(ring: &S::Ring, n: usize, count: usize, seed: u64) -> Vec<Vec<S>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let v = sample_vector::<S, _>(ring, n, &mut rng);
        if vector_norm(&v) == Norm::ONE {
            out.push(v);
        }
    }
    out
}

fn uncertainty_for<S: Serial>(
    pr: &Problem,
    common: &Common,
    a: UMatrix<S>,
    b: UMatrix<S>,
    psi: Option<Vec<S>>,
    doc: &mut Value,
) -> std::result::Result<usize, Failure> {
    let psis = match psi {
        Some(psi) => vec![psi],
        None => unit_vectors::<S>(a.ring(), a.dim(), common.samples.unwrap_or(32), common.seed),
    };
    let mut rows = Vec::new();
    let mut violations = 0;
    for psi in &psis {
        let r = uncertainty_check(&a, &b, psi, pr.period).map_err(reject)?;
        if !r.holds {
            violations += 1;
        }
        if rows.is_empty() {
            doc["diam_a"] = norm_json(r.diam_a);
            doc["diam_b"] = norm_json(r.diam_b);
            doc["rhs"] = norm_json(r.rhs);
        }
        rows.push(json!({"psi": vector_json(psi), "lhs": norm_json(r.lhs), "holds": r.holds}));
    }
    doc["entries"] = matrix_json(&a);
    doc["b"] = matrix_json(&b);
    doc["seed"] = json!(common.seed);
    doc["checks"] = Value::Array(rows);
    doc["violations"] = json!(violations);
    Ok(violations)
}

fn cmd_uncertainty(common: &Common) -> CmdResult {
    let pr = load(common, true)?;
    let mut doc = pr.header("uncertainty");
    let a = pr.matrix_at_period("entries")?;
    let b = pr.matrix_at_period("b")?;
    if a.dim() != b.dim() {
        return Err(Malformed::field("b", format!("dimension {} differs from {}", b.dim(), a.dim())).into());
    }
    let violations = match (a, b) {
        (AnyMatrix::Base(a), AnyMatrix::Base(b)) => {
            let psi = pr
                .field("psi")
                .map(|v| io::parse_base_vector("psi", v, pr.ctx))
                .transpose()?;
            uncertainty_for(&pr, common, a, b, psi, &mut doc)?
        }
        (AnyMatrix::Ext(a), AnyMatrix::Ext(b)) if a.ring() == b.ring() => {
            let psi = pr
                .field("psi")
                .map(|v| io::parse_ext_vector("psi", v, a.ring()))
                .transpose()?;
            uncertainty_for(&pr, common, a, b, psi, &mut doc)?
        }
        _ => return Err(Malformed::field("b", "entries and b live in different rings").into()),
    };
    if let Some(psi) = doc["checks"][0]["psi"].as_array() {
        if psi.len() != doc["entries"].as_array().map_or(0, Vec::len) {
            return Err(Malformed::field("psi", "length differs from the dimension").into());
        }
    }
    verdict(doc, violations == 0, "uncertainty bound violated")
}

fn coeff_input(pr: &Problem, flag: &Option<String>) -> std::result::Result<Vec<PadicScalar>, Malformed> {
    let coeffs = match flag {
        Some(s) => s
            .split(',')
            .map(|t| parse_scalar("coeffs", &Value::String(t.trim().to_string()), pr.ctx))
            .collect::<std::result::Result<Vec<_>, _>>()?,
        None => io::parse_base_vector(
            "coeffs",
            pr.field("coeffs").ok_or_else(|| Malformed::field("coeffs", "missing"))?,
            pr.ctx,
        )?,
    };
    if coeffs.is_empty() || coeffs.len() > MAX_COEFFICIENTS {
        return Err(Malformed::field(
            "coeffs",
            format!("need between 1 and {MAX_COEFFICIENTS} coefficients"),
        ));
    }
    Ok(coeffs)
}

fn op_name(pr: &Problem, flag: &Option<String>, default: &str) -> std::result::Result<String, Malformed> {
    match flag {
        Some(s) => Ok(s.clone()),
        None => match pr.field("op") {
            None => Ok(default.to_string()),
            Some(Value::String(s)) => Ok(s.clone()),
            Some(_) => Err(Malformed::field("op", "expected a string")),
        },
    }
}

fn cmd_kochubei(common: &Common, op: &Option<String>, coeffs: &Option<String>) -> CmdResult {
    let pr = load(common, false)?;
    let c = coeff_input(&pr, coeffs)?;
    let op = op_name(&pr, op, "number")?;
    let f = MahlerVector::new(pr.ctx, c);
    let out = match op.as_str() {
        "raise" => KochubeiRaise.apply(&f),
        "lower" => KochubeiLower.apply(&f),
        "shift" => Shift.apply(&f),
        "number" => {
            let lowered = KochubeiLower.apply(&f).value;
            KochubeiRaise.apply(&lowered)
        }
        other => {
            return Err(Malformed::field("op", format!("`{other}` is not one of raise, lower, shift, number")).into())
        }
    };
    let mut doc = pr.header("kochubei");
    doc["op"] = json!(op);
    doc["basis"] = json!("mahler");
    doc["input"] = vector_json(f.coeffs());
    doc["coeffs"] = vector_json(out.value.coeffs());
    doc["lost"] = json!(out.lost);
    Ok(doc)
}

fn cmd_euler(common: &Common, op: &Option<String>, coeffs: &Option<String>) -> CmdResult {
    let pr = load(common, false)?;
    let c = coeff_input(&pr, coeffs)?;
    let op = op_name(&pr, op, "euler")?;
    let h = match pr.field("h") {
        Some(v) => io::parse_base_vector("h", v, pr.ctx)?,
        None => Vec::new(),
    };
    if h.iter().any(|x| x.valuation().is_some_and(|v| v < 0)) {
        return Err(Malformed::field("h", "coefficients must lie in the unit ball").into());
    }
    let raise = TateRaise { h: h.clone() };
    let f = TateVector::new(pr.ctx, c);
    let out = match op.as_str() {
        "raise" => raise.apply(&f),
        "lower" => TateLower.apply(&f),
        "euler" => raise.apply(&TateLower.apply(&f).value),
        other => {
            return Err(Malformed::field("op", format!("`{other}` is not one of raise, lower, euler")).into())
        }
    };
    let mut doc = pr.header("euler");
    doc["op"] = json!(op);
    doc["basis"] = json!("monomial");
    doc["h"] = vector_json(&h);
    doc["input"] = vector_json(f.coeffs());
    doc["coeffs"] = vector_json(out.value.coeffs());
    doc["lost"] = json!(out.lost);
    Ok(doc)
}

fn cmd_certify(common: &Common) -> CmdResult {
    let pr = load(common, true)?;
    let mut doc = pr.header("certify-projection");
    let mut rng = ChaCha8Rng::seed_from_u64(common.seed);
    let samples = common.samples.unwrap_or(64);
    let valid = with_matrix!(pr.matrix("entries")?, a => {
        doc["entries"] = matrix_json(&a);
        let cert = certify_orthogonal_projection(&a, samples, &mut rng);
        doc["seed"] = json!(common.seed);
        doc["certificate"] = json!(cert);
        doc["valid"] = json!(cert.is_valid());
        doc["conditions_agree"] = json!(cert.conditions_agree());
        doc["failing_condition"] = json!(cert.failing_condition());
        cert.is_valid()
    });
    verdict(doc, valid, "not an orthogonal projection")
}

fn render(doc: &Value) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

/// Runs the command line `args` (including the program name) without touching
/// the process streams.
pub fn run<I, T>(args: I) -> CliOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with_document(args, None)
}

/// Like [`run`], with the problem document given as JSON text in place of
/// an `--in` file.
pub fn run_with_document<I, T>(args: I, document: Option<&str>) -> CliOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let mut cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_MALFORMED } else { EXIT_OK };
            let text = e.render().to_string();
            let (stdout, stderr) = if code == EXIT_OK {
                (text, String::new())
            } else {
                (String::new(), text)
            };
            return CliOutcome { code, stdout, stderr };
        }
    };
    if let Some(text) = document {
        cli.command.common_mut().document = Some(text.to_owned());
    }
    let (common, result) = match &cli.command {
        Command::Lift { common, residue } => (common, cmd_lift(common, *residue)),
        Command::Digits { common, value } => (common, cmd_digits(common, value)),
        Command::Classify { common, value } => (common, cmd_classify(common, value)),
        Command::Spectral { common, factorial } => (common, cmd_spectral(common, *factorial)),
        Command::Measure(common) => (common, cmd_measure(common)),
        Command::Integral(common) => (common, cmd_integral(common)),
        Command::Jordan(common) => (common, cmd_jordan(common)),
        Command::Hermite(common) => (common, cmd_hermite(common)),
        Command::Diam(common) => (common, cmd_diam(common)),
        Command::Uncertainty(common) => (common, cmd_uncertainty(common)),
        Command::Kochubei { common, op, coeffs } => (common, cmd_kochubei(common, op, coeffs)),
        Command::Euler { common, op, coeffs } => (common, cmd_euler(common, op, coeffs)),
        Command::CertifyProjection(common) => (common, cmd_certify(common)),
    };
    let (code, doc, stderr) = match result {
        Ok(doc) => (EXIT_OK, doc, String::new()),
        Err(Failure::Rejected { doc, message }) => (EXIT_REJECTED, doc, format!("rejected: {message}\n")),
        Err(Failure::Malformed(Malformed(msg))) => {
            return CliOutcome {
                code: EXIT_MALFORMED,
                stdout: String::new(),
                stderr: format!("error: {msg}\n"),
            }
        }
    };
    let text = render(&doc);
    match &common.out {
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => CliOutcome {
                code,
                stdout: String::new(),
                stderr,
            },
            Err(e) => CliOutcome {
                code: EXIT_MALFORMED,
                stdout: String::new(),
                stderr: format!("error: field `--out`: cannot write {}: {e}\n", path.display()),
            },
        },
        None => CliOutcome {
            code,
            stdout: text,
            stderr,
        },
    }
}
