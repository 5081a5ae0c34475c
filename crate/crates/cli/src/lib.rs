//! The `hepta` command-line tool.
//!
//! [`run`] parses arguments, executes one subcommand and returns the exit
//! code together with what would be written to stdout and stderr, so the
//! binary is a thin wrapper and tests can drive the tool in-process.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use hepta::exact::{self, ExactOptions};
use hepta::factor::DEFAULT_TOL;
use hepta::floating::{self, relative_residual, FloatOptions};
use hepta::io::{dense_to_csv, dense_to_json, matrix_from_json, matrix_to_json, rhs_from_text, scalars_to_json};
use hepta::oracle::{compare, oracle_report};
use hepta::scalar::{field_ops, reset_field_ops};
use hepta::{random_instance, CyclicHeptaMatrix, Field, Float, HeptaError, Profile, Rational};

pub const EXIT_OK: i32 = 0;
pub const EXIT_SINGULAR: i32 = 2;
pub const EXIT_INVALID: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "hepta", version, about = "Exact and floating-point solver for cyclic heptadiagonal matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Determinant; zero pivots are replaced by t and the product taken at t = 0
    Det(MatrixArgs),
    /// Full inverse from five seed columns and the backward column recurrence
    Inv(MatrixArgs),
    /// Solve H x = r through the bordered LU factors
    Solve(SolveArgs),
    /// Write a seeded random instance
    Gen(GenArgs),
    /// Time det, inv and solve and count field operations
    Bench(BenchArgs),
    /// Compare inv and det against dense elimination
    #[command(hide = true)]
    OracleCheck(MatrixArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum BackendArg {
    Exact,
    Float,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct Common {
    #[arg(long, value_enum, default_value_t = BackendArg::Exact)]
    backend: BackendArg,
    /// Relative pivot tolerance for the float backend
    #[arg(long, default_value_t = DEFAULT_TOL, value_parser = parse_tol)]
    tol: f64,
    /// Compute the five seed columns on separate threads
    #[arg(long)]
    parallel_seeds: bool,
    /// Also replace zero B_i (i >= 6) by t before inverting
    #[arg(long)]
    apply_b_substitution: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the result here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct MatrixArgs {
    /// Band-form matrix JSON
    #[arg(long)]
    input: PathBuf,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[arg(long)]
    input: PathBuf,
    /// Right-hand side(s): JSON array, JSON array of arrays, or CSV columns
    #[arg(long)]
    rhs: PathBuf,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct Instance {
    #[arg(long, value_parser = parse_order)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "general", value_parser = parse_profile)]
    profile: Profile,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[command(flatten)]
    instance: Instance,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct BenchArgs {
    /// Orders to run; repeat the flag or separate with commas
    #[arg(long, required = true, value_delimiter = ',', value_parser = parse_order)]
    n: Vec<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "diagonally-dominant", value_parser = parse_profile)]
    profile: Profile,
    #[arg(long, value_enum, default_value_t = BackendArg::Exact)]
    backend: BackendArg,
    #[arg(long, default_value_t = DEFAULT_TOL, value_parser = parse_tol)]
    tol: f64,
    #[arg(long)]
    parallel_seeds: bool,
    #[arg(long)]
    apply_b_substitution: bool,
    /// Rows are CSV unless JSON is asked for
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl BenchArgs {
    fn common(&self) -> Common {
        Common {
            backend: self.backend,
            tol: self.tol,
            parallel_seeds: self.parallel_seeds,
            apply_b_substitution: self.apply_b_substitution,
            format: self.format,
            out: self.out.clone(),
        }
    }
}

fn parse_tol(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err("must be a positive finite number".into())
    }
}

fn parse_order(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|e| format!("{e}"))?;
    if n < hepta::hepta::MIN_ORDER {
        return Err(format!("n must be at least {}", hepta::hepta::MIN_ORDER));
    }
    Ok(n)
}

fn parse_profile(s: &str) -> Result<Profile, String> {
    s.parse().map_err(|e: HeptaError| e.to_string())
}

/// Exit code plus the bytes destined for stdout and stderr.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: Vec<u8>,
    pub stderr: String,
}

impl Outcome {
    pub fn stdout_text(&self) -> String {
        String::from_utf8_lossy(&self.stdout).into_owned()
    }

    /// Parses stdout as JSON; panics if it is not.
    pub fn json(&self) -> Value {
        serde_json::from_slice(&self.stdout).expect("stdout is JSON")
    }
}

struct Failure {
    code: i32,
    message: String,
}

impl From<HeptaError> for Failure {
    fn from(e: HeptaError) -> Self {
        let code = match e {
            HeptaError::Singular | HeptaError::NearSingularPivot { .. } => EXIT_SINGULAR,
            ref e if e.is_internal() => EXIT_INTERNAL,
            _ => EXIT_INVALID,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INVALID,
        message: message.into(),
    }
}

/// A rendered result and the exit code it carries (`det` reports a
/// singular matrix with a body and exit 2).
struct Emit {
    code: i32,
    body: String,
}

impl Emit {
    fn ok(body: String) -> Self {
        Emit { code: EXIT_OK, body }
    }
}

/// Runs the tool on `args` (the first item is the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: EXIT_OK,
                    stdout: text.into_bytes(),
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: EXIT_INVALID,
                    stdout: Vec::new(),
                    stderr: text,
                },
            };
        }
    };
    let out_path = match &cli.command {
        Command::Det(a) | Command::Inv(a) | Command::OracleCheck(a) => a.common.out.clone(),
        Command::Solve(a) => a.common.out.clone(),
        Command::Gen(a) => a.out.clone(),
        Command::Bench(a) => a.out.clone(),
    };
    let result = dispatch(cli.command).and_then(|emit| match out_path {
        Some(path) => {
            fs::write(&path, &emit.body)
                .map_err(|e| invalid(format!("cannot write {}: {e}", path.display())))?;
            Ok(Emit {
                code: emit.code,
                body: String::new(),
            })
        }
        None => Ok(emit),
    });
    match result {
        Ok(emit) => Outcome {
            code: emit.code,
            stdout: emit.body.into_bytes(),
            stderr: String::new(),
        },
        Err(f) => Outcome {
            code: f.code,
            stdout: Vec::new(),
            stderr: format!("error: {}\n", f.message),
        },
    }
}

fn dispatch(command: Command) -> Result<Emit, Failure> {
    match command {
        Command::Det(a) => det(&a),
        Command::Inv(a) => inv(&a),
        Command::Solve(a) => solve(&a),
        Command::Gen(a) => gen(&a),
        Command::Bench(a) => bench(&a),
        Command::OracleCheck(a) => oracle_check(&a),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))
}

fn load_matrix(path: &Path) -> Result<CyclicHeptaMatrix<Rational>, Failure> {
    matrix_from_json(&read(path)?).map_err(|e| match e {
        HeptaError::Format(m) => invalid(format!("{}: {m}", path.display())),
        e => Failure::from(e),
    })
}

fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn csv_line(cells: &[String]) -> String {
    let mut s = cells.join(",");
    s.push('\n');
    s
}

fn check_backend_flags(c: &Common) -> Result<(), Failure> {
    if c.backend == BackendArg::Float && c.apply_b_substitution {
        return Err(invalid("--apply-b-substitution requires --backend exact"));
    }
    Ok(())
}

fn exact_options(c: &Common) -> ExactOptions {
    ExactOptions {
        parallel_seeds: c.parallel_seeds,
        apply_b_substitution: c.apply_b_substitution,
        ..ExactOptions::default()
    }
}

fn float_options(c: &Common) -> FloatOptions {
    FloatOptions {
        tol: c.tol,
        parallel_seeds: c.parallel_seeds,
        ..FloatOptions::default()
    }
}

fn det(a: &MatrixArgs) -> Result<Emit, Failure> {
    check_backend_flags(&a.common)?;
    let h = load_matrix(&a.input)?;
    let (value, overrides, singular) = match a.common.backend {
        BackendArg::Exact => {
            let d = exact::determinant(&h)?;
            (Value::String(d.value.to_string()), d.pivot_overrides, d.singular)
        }
        BackendArg::Float => match floating::determinant(&floating::to_float(&h), a.common.tol) {
            Ok(d) => (Value::String(d.value.to_string()), 0, d.singular),
            // Below tolerance there is no trustworthy value to report.
            Err(HeptaError::NearSingularPivot { .. }) => (Value::Null, 0, true),
            Err(e) => return Err(e.into()),
        },
    };
    let body = match a.common.format {
        Format::Json => to_json(&json!({
            "det": value,
            "pivot_overrides": overrides,
            "singular": singular,
        })),
        Format::Csv => {
            let shown = value.as_str().unwrap_or("").to_string();
            csv_line(&["det".into(), "pivot_overrides".into(), "singular".into()])
                + &csv_line(&[shown, overrides.to_string(), singular.to_string()])
        }
    };
    let code = if singular { EXIT_SINGULAR } else { EXIT_OK };
    Ok(Emit { code, body })
}

fn inverse_body<F: Field>(
    c: &Common,
    res: &hepta::InverseResult<F>,
    n: usize,
) -> String {
    match c.format {
        Format::Json => to_json(&json!({
            "b_substitutions": res.b_substitutions,
            "backend": backend_name(c.backend),
            "c_substitutions": res.c_substitutions,
            "inverse": dense_to_json(&res.inverse),
            "n": n,
            "pivot_overrides": res.pivot_overrides,
        })),
        Format::Csv => dense_to_csv(&res.inverse),
    }
}

fn backend_name(b: BackendArg) -> &'static str {
    match b {
        BackendArg::Exact => hepta::Backend::Exact.name(),
        BackendArg::Float => hepta::Backend::Float.name(),
    }
}

fn inv(a: &MatrixArgs) -> Result<Emit, Failure> {
    check_backend_flags(&a.common)?;
    let h = load_matrix(&a.input)?;
    let body = match a.common.backend {
        BackendArg::Exact => inverse_body(&a.common, &exact::invert(&h, &exact_options(&a.common))?, h.n()),
        BackendArg::Float => inverse_body(
            &a.common,
            &floating::invert(&floating::to_float(&h), &float_options(&a.common))?,
            h.n(),
        ),
    };
    Ok(Emit::ok(body))
}

fn solve(a: &SolveArgs) -> Result<Emit, Failure> {
    check_backend_flags(&a.common)?;
    let h = load_matrix(&a.input)?;
    let rhs = rhs_from_text(&read(&a.rhs)?).map_err(|e| match e {
        HeptaError::Format(m) => invalid(format!("{}: {m}", a.rhs.display())),
        e => Failure::from(e),
    })?;
    for (k, r) in rhs.iter().enumerate() {
        if r.len() != h.n() {
            return Err(invalid(format!(
                "{}: right-hand side {} has {} entries, expected {}",
                a.rhs.display(),
                k + 1,
                r.len(),
                h.n()
            )));
        }
    }
    let mut fields = Map::new();
    let (columns, det, method): (Vec<Vec<String>>, String, &str) = match a.common.backend {
        BackendArg::Exact => {
            let opts = exact_options(&a.common);
            let mut cols = Vec::new();
            let mut exact_residual = true;
            let mut last = None;
            for r in &rhs {
                let rep = exact::solve_via_lu(&h, r, &opts)?;
                exact_residual &= h.mul_vec(&rep.x)? == *r;
                cols.push(rep.x.iter().map(ToString::to_string).collect());
                last = Some(rep);
            }
            let rep = last.ok_or_else(|| invalid("no right-hand side given"))?;
            fields.insert("pivot_overrides".into(), rep.pivot_overrides.into());
            fields.insert("residual_exact".into(), exact_residual.into());
            (cols, rep.det.to_string(), rep.method.name())
        }
        BackendArg::Float => {
            let hf = floating::to_float(&h);
            let mut cols = Vec::new();
            let mut worst: f64 = 0.0;
            let mut last = None;
            for r in &rhs {
                let rf: Vec<Float> = r.iter().map(Float::from_rational).collect();
                let rep = floating::solve_via_lu(&hf, &rf, a.common.tol)?;
                worst = worst.max(relative_residual(&hf, &rep.x, &rf)?);
                cols.push(rep.x.iter().map(ToString::to_string).collect());
                last = Some(rep);
            }
            let rep = last.ok_or_else(|| invalid("no right-hand side given"))?;
            fields.insert("pivot_overrides".into(), 0.into());
            fields.insert("relative_residual".into(), worst.to_string().into());
            fields.insert("residual_exact".into(), false.into());
            (cols, rep.det.to_string(), rep.method.name())
        }
    };
    let body = match a.common.format {
        Format::Json => {
            let x = if columns.len() == 1 {
                json!(columns[0])
            } else {
                json!(columns)
            };
            fields.insert("backend".into(), backend_name(a.common.backend).into());
            fields.insert("det".into(), det.into());
            fields.insert("method".into(), method.into());
            fields.insert("x".into(), x);
            to_json(&Value::Object(fields))
        }
        Format::Csv => (0..h.n())
            .map(|i| csv_line(&columns.iter().map(|c| c[i].clone()).collect::<Vec<_>>()))
            .collect(),
    };
    Ok(Emit::ok(body))
}

fn gen(a: &GenArgs) -> Result<Emit, Failure> {
    let inst = &a.instance;
    let h = random_instance(inst.n, inst.seed, inst.profile)?;
    let body = match a.format {
        Format::Json => to_json(&matrix_to_json(&h)),
        Format::Csv => dense_to_csv(&h.to_dense()),
    };
    Ok(Emit::ok(body))
}

struct BenchRow {
    n: usize,
    command: &'static str,
    seconds: f64,
    ops: u64,
}

/// Times `f` and counts the field operations it performs on this thread.
/// Work done on seed-column threads is timed but not counted.
fn measure<T>(f: impl FnOnce() -> hepta::Result<T>) -> Result<(f64, u64), Failure> {
    reset_field_ops();
    let start = Instant::now();
    f()?;
    Ok((start.elapsed().as_secs_f64(), field_ops()))
}

fn bench(a: &BenchArgs) -> Result<Emit, Failure> {
    let common = a.common();
    check_backend_flags(&common)?;
    let mut rows = Vec::new();
    for &n in &a.n {
        let h = random_instance(n, a.seed, a.profile)?;
        let ones = vec![Rational::one(); n];
        let runs: [(&'static str, (f64, u64)); 3] = match common.backend {
            BackendArg::Exact => {
                let opts = exact_options(&common);
                [
                    ("det", measure(|| exact::determinant(&h))?),
                    ("inv", measure(|| exact::invert(&h, &opts))?),
                    ("solve", measure(|| exact::solve_via_lu(&h, &ones, &opts))?),
                ]
            }
            BackendArg::Float => {
                let hf = floating::to_float(&h);
                let opts = float_options(&common);
                let rf = vec![Float::one(); n];
                [
                    ("det", measure(|| floating::determinant(&hf, opts.tol))?),
                    ("inv", measure(|| floating::invert(&hf, &opts))?),
                    ("solve", measure(|| floating::solve_via_lu(&hf, &rf, opts.tol))?),
                ]
            }
        };
        for (command, (seconds, ops)) in runs {
            rows.push(BenchRow {
                n,
                command,
                seconds,
                ops,
            });
        }
    }
    let body = match common.format {
        Format::Csv => {
            let mut s = csv_line(&["n", "command", "wall_time_s", "field_ops"].map(String::from));
            for r in &rows {
                s += &csv_line(&[
                    r.n.to_string(),
                    r.command.to_string(),
                    format!("{:.6}", r.seconds),
                    r.ops.to_string(),
                ]);
            }
            s
        }
        Format::Json => to_json(&Value::Array(
            rows.iter()
                .map(|r| {
                    json!({
                        "command": r.command,
                        "field_ops": r.ops,
                        "n": r.n,
                        "wall_time_s": format!("{:.6}", r.seconds),
                    })
                })
                .collect(),
        )),
    };
    Ok(Emit::ok(body))
}

fn oracle_check(a: &MatrixArgs) -> Result<Emit, Failure> {
    if a.common.backend == BackendArg::Float {
        return Err(invalid("oracle-check compares exact results; drop --backend float"));
    }
    let h = load_matrix(&a.input)?;
    let oracle = oracle_report(&h.to_dense());
    let det = exact::determinant(&h)?;
    let det_match = det.value == oracle.det;
    let (diff_count, inverse_ok) = match (exact::invert(&h, &exact_options(&a.common)), &oracle.inverse) {
        (Ok(res), Some(expected)) => {
            let cmp = compare(&res.inverse, expected)?;
            (cmp.mismatches.len(), true)
        }
        (Err(HeptaError::Singular), None) => (0, true),
        (Err(HeptaError::Singular), Some(_)) => (h.n() * h.n(), false),
        (Ok(_), None) => (h.n() * h.n(), false),
        (Err(e), _) => return Err(e.into()),
    };
    let agree = det_match && inverse_ok && diff_count == 0;
    let body = match a.common.format {
        Format::Json => to_json(&json!({
            "det_match": det_match,
            "diff_count": diff_count,
            "n": h.n(),
            "singular": !oracle.nonsingular,
        })),
        Format::Csv => {
            csv_line(&["det_match", "diff_count", "n", "singular"].map(String::from))
                + &csv_line(&[
                    det_match.to_string(),
                    diff_count.to_string(),
                    h.n().to_string(),
                    (!oracle.nonsingular).to_string(),
                ])
        }
    };
    let code = if !agree {
        EXIT_INTERNAL
    } else if !oracle.nonsingular {
        EXIT_SINGULAR
    } else {
        EXIT_OK
    };
    Ok(Emit { code, body })
}

/// Right-hand side as JSON, for tests and scripts.
pub fn vector_json(values: &[Rational]) -> String {
    to_json(&scalars_to_json(values))
}
