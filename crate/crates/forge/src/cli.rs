//! Command-line surface. Exit codes: 0 all assertions hold, 1 a check
//! failed, 2 usage or input error, 3 an enumeration cap was hit.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use lpi_core::algebra::FiniteAlgebra;
use lpi_core::identity::{self, CheckOptions, CheckVerdict, IdentityError, ModeRequest};
use lpi_core::laurent::LaurentPoly;
use lpi_core::scalar::FieldSpec;
use lpi_core::structure::{self, StructureError, DEFAULT_CAP};
use lpi_core::suite::{self, SUITE_NAMES};
use serde_json::{json, Map, Value};

use crate::algfile::{load_algebra, AlgFileError};
use crate::codec;
use crate::dsl::{parse_lpi, DslError};
use crate::report::RunReport;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

/// Hard ceiling for `--cap`.
pub const CAP_CEILING: u64 = 100_000_000;

const LISTED_IDEMPOTENTS: usize = 16;

#[derive(Debug, Parser)]
#[command(name = "lpi-forge", version, about = "Exact checks of Laurent polynomial identities on finite algebras")]
struct Cli {
    /// Coefficient field for polynomials without an algebra: F<p> or Q.
    #[arg(long, global = true)]
    field: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for every sampled check.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Enumeration cap (elements and tuples), at most 10^8.
    #[arg(long, global = true)]
    cap: Option<u64>,
    /// Write the report here (atomically) instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Auto,
    Exhaustive,
    Sampled,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse an LPI and report whether it qualifies.
    Parse { text: String },
    /// Collapse an LPI to univariate identities; with an algebra, verify them.
    Derive {
        #[arg(long)]
        lpi: String,
        #[arg(long)]
        algebra: Option<PathBuf>,
    },
    /// Jacobson radical with its certificate.
    Radical {
        #[arg(long)]
        algebra: PathBuf,
        /// Use the full 1 - ax enumeration instead of the layered algorithm.
        #[arg(long)]
        brute: bool,
        /// Save the radical as ideal JSON (usable by quotient spec files).
        #[arg(long)]
        save_ideal: Option<PathBuf>,
    },
    /// Unit group: count and exponent, or a seeded sample.
    Units {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long)]
        list: bool,
        #[arg(long)]
        save: Option<PathBuf>,
    },
    /// Idempotents and whether each is central.
    Idempotents {
        #[arg(long)]
        algebra: PathBuf,
    },
    /// Check that an LPI vanishes on the units of an algebra.
    Check {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        lpi: String,
        #[arg(long, value_enum, default_value_t = Mode::Auto)]
        mode: Mode,
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Standard identity S_2m, or (S_2m)^t with --power.
    CheckIdentity {
        #[arg(long)]
        algebra: PathBuf,
        /// Degree 2m of the standard polynomial (2, 4 or 6).
        #[arg(long)]
        standard: usize,
        #[arg(long)]
        power: Option<usize>,
    },
    /// Run a frozen verification suite, or `all`.
    Suite { name: String },
    /// Amitsur-Levitzki LPI of U(M_n) and its qualify report.
    Al {
        #[arg(long)]
        n: usize,
    },
}

/// A run that stopped before producing a report.
#[derive(Debug)]
struct Abort {
    code: i32,
    message: String,
}

impl Abort {
    fn usage(message: impl Into<String>) -> Self {
        Abort { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<AlgFileError> for Abort {
    fn from(e: AlgFileError) -> Self {
        Abort::usage(e.to_string())
    }
}

impl From<IdentityError> for Abort {
    fn from(e: IdentityError) -> Self {
        let code = if e.is_cap() { EXIT_CAP } else { EXIT_USAGE };
        Abort { code, message: e.to_string() }
    }
}

impl From<StructureError> for Abort {
    fn from(e: StructureError) -> Self {
        let code = if e.is_cap() { EXIT_CAP } else { EXIT_USAGE };
        Abort { code, message: e.to_string() }
    }
}

fn dsl_abort(text: &str, e: DslError) -> Abort {
    let mut message = format!("{e}");
    if let Some(offset) = e.offset() {
        let col = text[..offset.min(text.len())].chars().count();
        message.push_str(&format!("\n  {text}\n  {}^", " ".repeat(col)));
    }
    Abort::usage(message)
}

struct Ctx {
    field: Option<FieldSpec>,
    seed: u64,
    cap: u64,
    tuple_limit: u64,
    report: RunReport,
}

impl Ctx {
    fn options(&self, mode: ModeRequest) -> CheckOptions {
        CheckOptions { cap: self.cap, tuple_limit: self.tuple_limit, seed: self.seed, mode, ..CheckOptions::default() }
    }

    fn algebra(&mut self, path: &Path) -> Result<FiniteAlgebra, Abort> {
        let loaded = load_algebra(path)?;
        let alg = loaded.algebra;
        if let Some(f) = self.field {
            if f != alg.field() {
                return Err(Abort::usage(format!("--field {f} but the algebra is over {}", alg.field())));
            }
        }
        self.report.field = Some(alg.field());
        self.report.inputs.extend(loaded.sources);
        Ok(alg)
    }

    fn lpi(&mut self, text: &str, field: FieldSpec) -> Result<LaurentPoly, Abort> {
        self.report.inputs.push(("lpi".into(), text.as_bytes().to_vec()));
        parse_lpi(text, field).map_err(|e| dsl_abort(text, e))
    }

    fn push(&mut self, v: Value) {
        self.report.results.push(v);
    }
}

fn verdict_json(alg: Option<&FiniteAlgebra>, assertion: &str, v: &CheckVerdict) -> Value {
    let mut m = Map::new();
    m.insert("assertion".into(), json!(assertion));
    m.insert("holds".into(), json!(v.holds));
    m.insert("mode".into(), json!(v.mode.name()));
    m.insert("tuplesChecked".into(), json!(v.tuples_checked));
    if let identity::CheckMode::Sampled { count, seed } = v.mode {
        m.insert("samples".into(), json!(count));
        m.insert("seed".into(), json!(seed));
    }
    if let Some(w) = &v.witness {
        m.insert("witness".into(), json!(suite::describe_witness(alg, w)));
    }
    Value::Object(m)
}

fn qualify_json(p: &LaurentPoly) -> Value {
    let q = p.qualify();
    let sums: Vec<Value> = p
        .nonconstant_words()
        .map(|(w, _)| {
            let s = w.exp_sums();
            let per: Map<String, Value> = s.per_variable.iter().map(|(v, e)| (format!("x{v}"), json!(e))).collect();
            json!({ "word": w.to_string(), "perVariable": per, "total": s.total })
        })
        .collect();
    let zero_total: Vec<String> =
        p.nonconstant_words().filter(|(w, _)| w.exp_sums().total == 0).map(|(w, _)| w.to_string()).collect();
    let two = if p.max_var() > 2 { p.two_variable_reduction() } else { p.clone() };
    let substitution = match two.ensure_nonzero_totals() {
        Ok(s) if s.k != 1 => json!({ "var": format!("x{}", s.var), "k": s.k, "result": s.poly.to_string() }),
        _ => Value::Null,
    };
    json!({
        "canonical": p.to_string(),
        "terms": p.len(),
        "hasConstantTerm": q.has_constant_term,
        "constantCoefficient": q.constant_coefficient.to_string(),
        "qualifies": q.qualifies,
        "offendingWords": q.offending_words.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "exponentSums": sums,
        "zeroTotalWords": zero_total,
        "suggestedSubstitution": substitution,
    })
}

fn with_assertion(assertion: &str, v: Value) -> Value {
    let mut m = Map::new();
    m.insert("assertion".into(), json!(assertion));
    if let Value::Object(rest) = v {
        m.extend(rest);
    }
    Value::Object(m)
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), Abort> {
    let fail = |e: std::io::Error| Abort::usage(format!("{}: {e}", path.display()));
    let name = path.file_name().ok_or_else(|| Abort::usage(format!("{}: not a file path", path.display())))?;
    let mut tmp_name = OsString::from(".");
    tmp_name.push(name);
    tmp_name.push(format!(".{}.tmp", std::process::id()));
    let tmp = path.with_file_name(tmp_name);
    fs::write(&tmp, bytes).map_err(fail)?;
    fs::rename(&tmp, path).map_err(|e| {
        let _ = fs::remove_file(&tmp);
        fail(e)
    })
}

fn execute(cli: Cli, ctx: &mut Ctx) -> Result<(), Abort> {
    match cli.command {
        Command::Parse { text } => {
            let field = ctx.field.unwrap_or(FieldSpec::Rational);
            ctx.report.field = Some(field);
            let p = ctx.lpi(&text, field)?;
            ctx.push(with_assertion("parse", qualify_json(&p)));
        }
        Command::Al { n } => {
            let field = ctx.field.unwrap_or(FieldSpec::Rational);
            ctx.report.field = Some(field);
            let p = LaurentPoly::amitsur_levitzki(n, field).map_err(|e| Abort::usage(e.to_string()))?;
            let mut v = qualify_json(&p);
            let q = p.qualify();
            v["allNonconstantOffending"] = json!(q.offending_words.len() == p.nonconstant_words().count());
            ctx.push(with_assertion(&format!("Amitsur-Levitzki LPI for n = {n}"), v));
        }
        Command::Derive { lpi, algebra } => derive(ctx, &lpi, algebra.as_deref())?,
        Command::Radical { algebra, brute, save_ideal } => {
            let alg = ctx.algebra(&algebra)?;
            let cert = if brute {
                structure::quasi_regular_radical(&alg, ctx.cap)?
            } else {
                structure::jacobson_radical_with_cap(&alg, ctx.cap)?
            };
            let basis: Vec<String> = cert.ideal.basis().iter().map(|b| alg.format_element(b)).collect();
            ctx.push(json!({
                "assertion": "J(A) is a nilpotent ideal",
                "holds": true,
                "dim": alg.dim(),
                "rank": cert.ideal.rank(),
                "nilpotencyIndex": cert.nilpotency_index,
                "method": cert.method.as_str(),
                "quotientSemisimpleChecked": cert.quotient_semisimple_checked,
                "basis": basis,
            }));
            if let Some(path) = save_ideal {
                let text = serde_json::to_string_pretty(&codec::ideal_to_json(&cert.ideal)).expect("json");
                write_atomic(&path, text.as_bytes())?;
            }
        }
        Command::Units { algebra, sample, list, save } => {
            let alg = ctx.algebra(&algebra)?;
            let units = match sample {
                Some(n) => structure::sample_units(&alg, n, ctx.seed)?,
                None => structure::enumerate_units(&alg, ctx.cap)?,
            };
            let mut v = json!({
                "assertion": "unit group",
                "count": units.len(),
                "complete": units.complete,
                "exponent": units.exponent,
            });
            if sample.is_some() {
                v["seed"] = json!(ctx.seed);
            }
            if list {
                v["units"] = json!(units.elements().map(|u| alg.format_element(u)).collect::<Vec<_>>());
            }
            ctx.push(v);
            if let Some(path) = save {
                let text = serde_json::to_string_pretty(&codec::units_to_json(&alg, &units)).expect("json");
                write_atomic(&path, text.as_bytes())?;
            }
        }
        Command::Idempotents { algebra } => {
            let alg = ctx.algebra(&algebra)?;
            let ids = structure::idempotent_scan(&alg, ctx.cap)?;
            let non_central: Vec<String> =
                ids.iter().filter(|(_, c)| !c).map(|(e, _)| alg.format_element(e)).collect();
            ctx.push(json!({
                "assertion": "idempotent scan",
                "count": ids.len(),
                "central": ids.len() - non_central.len(),
                "nonCentral": non_central.len(),
                "nonCentralExamples": non_central.iter().take(LISTED_IDEMPOTENTS).collect::<Vec<_>>(),
            }));
        }
        Command::Check { algebra, lpi, mode, samples } => {
            let alg = ctx.algebra(&algebra)?;
            let p = ctx.lpi(&lpi, alg.field())?;
            let mode = match mode {
                Mode::Auto => ModeRequest::Auto,
                Mode::Exhaustive => ModeRequest::Exhaustive,
                Mode::Sampled => ModeRequest::Sampled,
            };
            let mut opts = ctx.options(mode);
            if let Some(s) = samples {
                opts.samples = s;
            }
            let v = identity::check_lpi(&alg, &p, &opts)?;
            ctx.push(verdict_json(Some(&alg), &format!("{p} vanishes on U(A)"), &v));
        }
        Command::CheckIdentity { algebra, standard, power } => {
            if !matches!(standard, 2 | 4 | 6) {
                return Err(Abort::usage("--standard must be 2, 4 or 6"));
            }
            let m = standard / 2;
            let alg = ctx.algebra(&algebra)?;
            match power {
                None => {
                    let v = identity::check_multilinear_identity(&alg, m)?;
                    ctx.push(verdict_json(Some(&alg), &format!("S_{standard} = 0 on A"), &v));
                }
                Some(t) => {
                    let assertion = format!("(S_{standard})^{t} = 0 on A");
                    match identity::check_power_standard_identity(&alg, m, t, ctx.seed) {
                        Ok(v) => {
                            let mut j = verdict_json(Some(&alg), &assertion, &v);
                            j["seed"] = json!(ctx.seed);
                            ctx.push(j);
                        }
                        Err(IdentityError::CertificateFailed(why)) => ctx.push(json!({
                            "assertion": assertion,
                            "holds": false,
                            "mode": "structural",
                            "witness": why,
                        })),
                        Err(e) => return Err(e.into()),
                    }
                }
            }
        }
        Command::Suite { name } => {
            let names: Vec<&str> = if name == "all" { SUITE_NAMES.to_vec() } else { vec![name.as_str()] };
            for n in names {
                let start = Instant::now();
                let clock = move || start.elapsed().as_millis() as u64;
                let report = suite::run_suite(n, &clock).map_err(|e| Abort {
                    code: if e.is_cap() { EXIT_CAP } else { EXIT_USAGE },
                    message: e.to_string(),
                })?;
                for row in &report.rows {
                    ctx.push(codec::row_to_json(row));
                }
            }
        }
    }
    Ok(())
}

fn derive(ctx: &mut Ctx, text: &str, algebra: Option<&Path>) -> Result<(), Abort> {
    let alg = algebra.map(|p| ctx.algebra(p)).transpose()?;
    let field = alg.as_ref().map_or(ctx.field.unwrap_or(FieldSpec::Rational), FiniteAlgebra::field);
    ctx.report.field = Some(field);
    let p = ctx.lpi(text, field)?;
    let reduced = if p.max_var() > 2 { p.two_variable_reduction() } else { p.clone() };
    let q = reduced.qualify();
    ctx.push(json!({
        "assertion": "P qualifies",
        "holds": q.qualifies,
        "polynomial": reduced.to_string(),
        "twoVariableReduction": p.max_var() > 2,
        "offendingWords": q.offending_words.iter().map(ToString::to_string).collect::<Vec<_>>(),
    }));
    if !q.qualifies {
        return Ok(());
    }
    let trace = identity::derive_identities(&reduced)?;
    let nonmatrix = trace
        .nonmatrix
        .as_ref()
        .map(|w| json!({ "lambda": w.lambda.to_string(), "value": w.value.to_string() }));
    ctx.push(json!({
        "assertion": "derivation trace",
        "substitution": { "var": format!("x{}", trace.substitution.0), "k": trace.substitution.1 },
        "substituted": trace.substituted.to_string(),
        "f0": trace.f0.to_string(),
        "l": trace.l,
        "r": trace.r,
        "f1": trace.f1.to_string(),
        "g": trace.g.to_string(),
        "nonmatrixWitness": nonmatrix,
    }));
    let Some(alg) = alg else { return Ok(()) };
    let opts = ctx.options(ModeRequest::Auto);
    let v = identity::check_lpi(&alg, &reduced, &opts)?;
    ctx.push(verdict_json(Some(&alg), "P vanishes on U(A)", &v));
    if !v.holds {
        return Ok(());
    }
    let d = identity::verify_derived(&alg, &trace, &opts)?;
    ctx.push(verdict_json(Some(&alg), "f1 vanishes on every unit", &d.units));
    ctx.push(verdict_json(Some(&alg), "g vanishes on every element of J", &d.radical));
    ctx.push(verdict_json(Some(&alg), "f1 = a^-l f0 on every unit", &d.consistency));
    let g0 = trace.g.coefficient(0);
    ctx.push(json!({ "assertion": "g(0) = 0", "holds": g0.is_zero(), "mode": "structural" }));
    Ok(())
}

/// Runs the tool on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let start = Instant::now();
    let field = match cli.field.as_deref().map(str::parse::<FieldSpec>).transpose() {
        Ok(f) => f,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_USAGE;
        }
    };
    if cli.cap.is_some_and(|c| c == 0 || c > CAP_CEILING) {
        let _ = writeln!(stderr, "error: --cap must be between 1 and {CAP_CEILING}");
        return EXIT_USAGE;
    }
    let cap = cli.cap.unwrap_or(DEFAULT_CAP);
    let tuple_limit = cli.cap.unwrap_or(identity::EXHAUSTIVE_TUPLE_LIMIT);
    let command = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let mut ctx = Ctx {
        field,
        seed: cli.seed,
        cap,
        tuple_limit,
        report: RunReport { command, ..RunReport::default() },
    };
    let (format, out) = (cli.format, cli.out.clone());
    if let Err(abort) = execute(cli, &mut ctx) {
        let _ = writeln!(stderr, "error: {}", abort.message);
        return abort.code;
    }
    ctx.report.elapsed_ms = start.elapsed().as_millis() as u64;
    let body = match format {
        Format::Json => serde_json::to_string_pretty(&ctx.report.to_json()).expect("json") + "\n",
        Format::Text => ctx.report.to_text(),
    };
    match out {
        Some(path) => {
            if let Err(abort) = write_atomic(&path, body.as_bytes()) {
                let _ = writeln!(stderr, "error: {}", abort.message);
                return abort.code;
            }
        }
        None => {
            let _ = stdout.write_all(body.as_bytes());
        }
    }
    if ctx.report.holds() {
        EXIT_OK
    } else {
        EXIT_FAILED
    }
}
