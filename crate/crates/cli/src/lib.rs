//! Job specification, validation and execution behind the `abeltrace` binary.
//!
//! Every command produces a single JSON document. Objects are emitted with
//! sorted keys and exact values are printed as canonical strings, so equal
//! inputs always give byte-identical output.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;

use abeltrace::{
    abel_inverse, abel_inverse_from_cycle, abelian_basis, agreement_suite, castelnuovo_bound,
    infer_dimension, parse_poly, parse_ratfunc, pi_inverse, pi_map, rho_map, star_check,
    starstar_check, tilt, trace_form_coeffs, trace_function, wood_test, AbelianPair, Cycle, Error,
    ErrorClass, MeroFunc, RatFunc, SamplePlan, UniPolyK,
};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_DEGENERACY: i32 = 3;
pub const EXIT_ORACLE: i32 = 4;

pub const SEED_ENV: &str = "ABELTRACE_SEED";
const DEFAULT_SEED: u64 = 1;
const DEFAULT_SAMPLES: usize = 50;

#[derive(Debug, Parser)]
#[command(
    name = "abeltrace",
    version,
    about = "Exact traces on hypersurfaces along line pencils"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Indented, human-oriented JSON.
    #[arg(long, global = true)]
    pub pretty: bool,

    /// Write the JSON document here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,

    /// Read further inputs from a file of `key=value` lines.
    #[arg(long, global = true, value_name = "PATH")]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Power sums u_k, function traces v_k and form coefficients w_k.
    Trace(CycleArgs),
    /// The polynomial F of a cycle and the interpolant H of a function.
    Reconstruct(CycleArgs),
    /// Whether a first power sum is affine in b.
    Wood(WoodArgs),
    /// Recover (F, H) from trace-form coefficients.
    AbelInverse(AbelInverseArgs),
    /// Basis of abelian forms of maximal degree.
    Abelian(CycleArgs),
    /// The Castelnuovo number pi_q(d, 2, n).
    Castelnuovo(CastelnuovoArgs),
    /// Cross-check every exact quantity against the numeric oracle.
    Verify(CycleArgs),
}

#[derive(Debug, Args, Default)]
pub struct CycleArgs {
    /// Ambient dimension; inferred from the inputs when omitted.
    #[arg(long)]
    pub n: Option<usize>,
    /// A component of the cycle (repeatable).
    #[arg(long = "f")]
    pub f: Vec<String>,
    /// Multiplicity of the matching `--f` (repeatable).
    #[arg(long)]
    pub mult: Vec<u32>,
    /// A function on the cycle.
    #[arg(long)]
    pub h: Option<String>,
    /// Largest trace index.
    #[arg(long)]
    pub kmax: Option<usize>,
    /// Sampling seed; the ABELTRACE_SEED variable takes precedence.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Valid samples per quantity.
    #[arg(long)]
    pub samples: Option<usize>,
}

#[derive(Debug, Args, Default)]
pub struct WoodArgs {
    #[arg(long)]
    pub n: Option<usize>,
    /// The first power sum, a rational function of a and b.
    #[arg(long)]
    pub u1: Option<String>,
    #[arg(long)]
    pub d: Option<usize>,
}

#[derive(Debug, Args, Default)]
pub struct AbelInverseArgs {
    #[arg(long)]
    pub n: Option<usize>,
    /// Trace-form coefficients w_0, w_1, ... in order (repeatable).
    #[arg(long)]
    pub w: Vec<String>,
    #[arg(long)]
    pub d: Option<usize>,
    /// Alternatively a cycle and a function whose form is traced first.
    #[arg(long = "f")]
    pub f: Vec<String>,
    #[arg(long)]
    pub mult: Vec<u32>,
    #[arg(long)]
    pub h: Option<String>,
}

#[derive(Debug, Args, Default)]
pub struct CastelnuovoArgs {
    #[arg(long)]
    pub d: Option<u64>,
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long)]
    pub q: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Trace,
    Reconstruct,
    Wood,
    AbelInverse,
    Abelian,
    Castelnuovo,
    Verify,
}

impl CommandKind {
    pub fn name(self) -> &'static str {
        match self {
            CommandKind::Trace => "trace",
            CommandKind::Reconstruct => "reconstruct",
            CommandKind::Wood => "wood",
            CommandKind::AbelInverse => "abel-inverse",
            CommandKind::Abelian => "abelian",
            CommandKind::Castelnuovo => "castelnuovo",
            CommandKind::Verify => "verify",
        }
    }

    fn fields(self) -> &'static [&'static str] {
        match self {
            CommandKind::Trace => &["n", "f", "mult", "h", "kmax"],
            CommandKind::Reconstruct => &["n", "f", "mult", "h"],
            CommandKind::Wood => &["n", "u1", "d"],
            CommandKind::AbelInverse => &["n", "w", "d", "f", "mult", "h"],
            CommandKind::Abelian => &["n", "f"],
            CommandKind::Castelnuovo => &["d", "n", "q"],
            CommandKind::Verify => &["n", "f", "mult", "h", "kmax", "seed", "samples"],
        }
    }
}

impl fmt::Display for CommandKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A validated request. Only the fields relevant to `command` are set.
#[derive(Debug, Clone, PartialEq)]
pub struct JobSpec {
    pub command: CommandKind,
    pub n: Option<usize>,
    pub f: Vec<String>,
    pub mult: Vec<u32>,
    pub h: Option<String>,
    pub kmax: Option<usize>,
    pub w: Vec<String>,
    pub d: Option<u64>,
    pub q: Option<u64>,
    pub u1: Option<String>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
}

/// A failure before or during a job, with its exit status.
#[derive(Debug, Clone, PartialEq)]
pub struct JobError {
    pub name: String,
    pub message: String,
    pub code: i32,
}

impl JobError {
    pub fn validation(name: &str, message: impl Into<String>) -> Self {
        JobError {
            name: name.to_string(),
            message: message.into(),
            code: EXIT_VALIDATION,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({ "error": { "name": self.name, "message": self.message } })
    }
}

impl From<Error> for JobError {
    fn from(e: Error) -> Self {
        let code = match e.class() {
            ErrorClass::Validation => EXIT_VALIDATION,
            ErrorClass::Degeneracy => EXIT_DEGENERACY,
            ErrorClass::Oracle => EXIT_ORACLE,
        };
        JobError {
            name: e.name().to_string(),
            message: e.to_string(),
            code,
        }
    }
}

/// Parses `key=value` lines; blank lines and `#` comments are ignored.
pub fn parse_job_file(text: &str) -> Result<Vec<(String, String)>, JobError> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(JobError::validation(
                "InvalidJobFile",
                format!("line {}: expected key=value", lineno + 1),
            ));
        };
        out.push((k.trim().to_string(), v.trim().to_string()));
    }
    Ok(out)
}

fn parse_number<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, JobError> {
    value.parse().map_err(|_| {
        JobError::validation(
            "InvalidInput",
            format!("`{key}` expects a non-negative integer, got `{value}`"),
        )
    })
}

impl JobSpec {
    fn empty(command: CommandKind) -> Self {
        JobSpec {
            command,
            n: None,
            f: Vec::new(),
            mult: Vec::new(),
            h: None,
            kmax: None,
            w: Vec::new(),
            d: None,
            q: None,
            u1: None,
            seed: None,
            samples: None,
        }
    }

    /// Builds a job from parsed arguments, `key=value` pairs from a job file
    /// (used only where the command line is silent) and the seed override.
    pub fn from_cli(
        command: Command,
        file: &[(String, String)],
        env_seed: Option<&str>,
    ) -> Result<Self, JobError> {
        let mut job = match command {
            Command::Trace(a) => Self::from_cycle_args(CommandKind::Trace, a),
            Command::Reconstruct(a) => Self::from_cycle_args(CommandKind::Reconstruct, a),
            Command::Abelian(a) => Self::from_cycle_args(CommandKind::Abelian, a),
            Command::Verify(a) => Self::from_cycle_args(CommandKind::Verify, a),
            Command::Wood(a) => JobSpec {
                n: a.n,
                u1: a.u1,
                d: a.d.map(|d| d as u64),
                ..Self::empty(CommandKind::Wood)
            },
            Command::AbelInverse(a) => JobSpec {
                n: a.n,
                w: a.w,
                d: a.d.map(|d| d as u64),
                f: a.f,
                mult: a.mult,
                h: a.h,
                ..Self::empty(CommandKind::AbelInverse)
            },
            Command::Castelnuovo(a) => JobSpec {
                n: a.n.map(|n| n as usize),
                d: a.d,
                q: a.q,
                ..Self::empty(CommandKind::Castelnuovo)
            },
        };
        job.merge_file(file)?;
        if let (Some(s), CommandKind::Verify) = (env_seed, job.command) {
            job.seed = Some(parse_number(SEED_ENV, s.trim())?);
        }
        job.validate()?;
        Ok(job)
    }

    fn from_cycle_args(command: CommandKind, a: CycleArgs) -> Self {
        let keep = |k: &str| command.fields().contains(&k);
        JobSpec {
            n: a.n,
            f: a.f,
            mult: a.mult,
            h: a.h,
            kmax: a.kmax,
            seed: a.seed,
            samples: a.samples,
            ..Self::empty(command)
        }
        .restricted(keep)
    }

    fn restricted(mut self, keep: impl Fn(&str) -> bool) -> Self {
        if !keep("h") {
            self.h = None;
        }
        if !keep("mult") {
            self.mult.clear();
        }
        if !keep("kmax") {
            self.kmax = None;
        }
        if !keep("seed") {
            self.seed = None;
        }
        if !keep("samples") {
            self.samples = None;
        }
        self
    }

    fn merge_file(&mut self, pairs: &[(String, String)]) -> Result<(), JobError> {
        let mut lists: BTreeMap<&str, Vec<String>> = BTreeMap::new();
        for (k, v) in pairs {
            let Some(&key) = self.command.fields().iter().find(|f| **f == k.as_str()) else {
                return Err(JobError::validation(
                    "UnknownField",
                    format!("`{k}` is not a field of `{}`", self.command),
                ));
            };
            lists.entry(key).or_default().push(v.clone());
        }
        for (key, values) in lists {
            let single = || -> Result<&String, JobError> {
                match values.as_slice() {
                    [v] => Ok(v),
                    _ => Err(JobError::validation(
                        "InvalidJobFile",
                        format!("`{key}` given more than once"),
                    )),
                }
            };
            match key {
                "f" if self.f.is_empty() => self.f = values.clone(),
                "w" if self.w.is_empty() => self.w = values.clone(),
                "mult" if self.mult.is_empty() => {
                    self.mult = values
                        .iter()
                        .map(|v| parse_number(key, v))
                        .collect::<Result<_, _>>()?;
                }
                "n" if self.n.is_none() => self.n = Some(parse_number(key, single()?)?),
                "h" if self.h.is_none() => self.h = Some(single()?.clone()),
                "u1" if self.u1.is_none() => self.u1 = Some(single()?.clone()),
                "kmax" if self.kmax.is_none() => self.kmax = Some(parse_number(key, single()?)?),
                "d" if self.d.is_none() => self.d = Some(parse_number(key, single()?)?),
                "q" if self.q.is_none() => self.q = Some(parse_number(key, single()?)?),
                "seed" if self.seed.is_none() => self.seed = Some(parse_number(key, single()?)?),
                "samples" if self.samples.is_none() => {
                    self.samples = Some(parse_number(key, single()?)?)
                }
                _ => {}
            }
        }
        Ok(())
    }

    fn missing(&self, field: &str) -> JobError {
        JobError::validation(
            "MissingField",
            format!("`{}` requires --{field}", self.command),
        )
    }

    fn validate(&self) -> Result<(), JobError> {
        use CommandKind::*;
        match self.command {
            Trace | Reconstruct | Abelian | Verify => {
                if self.f.is_empty() {
                    return Err(self.missing("f"));
                }
            }
            Wood => {
                if self.u1.is_none() {
                    return Err(self.missing("u1"));
                }
            }
            AbelInverse => {
                if self.w.is_empty() {
                    if self.f.is_empty() || self.h.is_none() {
                        return Err(JobError::validation(
                            "MissingField",
                            "`abel-inverse` requires --w values or both --f and --h",
                        ));
                    }
                } else if !self.f.is_empty() || self.h.is_some() {
                    return Err(JobError::validation(
                        "InvalidInput",
                        "`abel-inverse` takes either --w values or --f/--h, not both",
                    ));
                }
            }
            Castelnuovo => {
                for (name, v) in [("d", self.d), ("q", self.q)] {
                    if v.is_none() {
                        return Err(self.missing(name));
                    }
                }
                if self.n.is_none() {
                    return Err(self.missing("n"));
                }
            }
        }
        if !self.mult.is_empty() && self.mult.len() != self.f.len() {
            return Err(JobError::validation(
                "InvalidInput",
                format!(
                    "{} multiplicities given for {} components",
                    self.mult.len(),
                    self.f.len()
                ),
            ));
        }
        if self.samples == Some(0) {
            return Err(JobError::validation(
                "InvalidInput",
                "--samples must be positive",
            ));
        }
        Ok(())
    }

    /// The ambient dimension: given, or the largest index among the inputs.
    fn dimension(&self) -> usize {
        if let Some(n) = self.n {
            return n;
        }
        self.f
            .iter()
            .chain(&self.w)
            .chain(&self.h)
            .chain(&self.u1)
            .map(|s| infer_dimension(s))
            .max()
            .unwrap_or(0)
            .max(1)
    }

    fn cycle(&self, n: usize) -> Result<Cycle, JobError> {
        let comps = self
            .f
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let p = parse_poly(s, n)?;
                Ok((p, self.mult.get(i).copied().unwrap_or(1)))
            })
            .collect::<Result<Vec<_>, Error>>()?;
        Ok(Cycle::new(n, comps)?)
    }

    fn function(&self, n: usize) -> Result<MeroFunc, JobError> {
        match &self.h {
            None => Ok(MeroFunc::one(n)),
            Some(s) => Ok(MeroFunc::from_ratfunc(&parse_ratfunc(s, n)?)?),
        }
    }
}

fn strings<T: ToString>(xs: &[T]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

fn coefficient_strings(p: &UniPolyK) -> Vec<String> {
    strings(p.coeffs())
}

fn pair_json(pair: &AbelianPair) -> Result<Value, JobError> {
    let (f, h) = pair.specialize()?;
    Ok(json!({
        "F": pair.f.to_string(),
        "F_coeffs": coefficient_strings(&pair.f),
        "H": pair.h.to_string(),
        "H_coeffs": coefficient_strings(&pair.h),
        "f": f.to_string(),
        "h": h.to_string(),
    }))
}

/// Executes a validated job and returns its JSON result.
pub fn run(job: &JobSpec) -> Result<Value, JobError> {
    let n = job.dimension();
    match job.command {
        CommandKind::Trace => {
            let v = job.cycle(n)?;
            let h = job.function(n)?;
            let d = tilt(&v)?.degree();
            let kmax = job.kmax.unwrap_or(2 * d - 1);
            let data = trace_function(&v, &h, kmax)?;
            let w = trace_form_coeffs(&v, &h, kmax)?;
            Ok(json!({
                "n": n,
                "d": d,
                "f": v.defining_polynomial().to_string(),
                "h": h.to_string(),
                "kmax": kmax,
                "u": strings(&data.u),
                "v": strings(&data.v.unwrap_or_default()),
                "w": strings(&w),
            }))
        }
        CommandKind::Reconstruct => {
            let v = job.cycle(n)?;
            let f = pi_map(&v)?;
            let mut out = json!({
                "n": n,
                "d": f.degree().unwrap_or(0),
                "F": f.to_string(),
                "F_coeffs": coefficient_strings(&f),
                "star": star_check(&f)?,
                "f": pi_inverse(&f)?.to_string(),
            });
            if job.h.is_some() {
                let h = job.function(n)?;
                let big_h = rho_map(&v, &h)?;
                out["H"] = json!(big_h.to_string());
                out["H_coeffs"] = json!(coefficient_strings(&big_h));
                out["starstar"] = json!(starstar_check(&f, &big_h)?);
            }
            Ok(out)
        }
        CommandKind::Wood => {
            let u1 = parse_ratfunc(job.u1.as_deref().unwrap_or_default(), n)?;
            let d = job.d.unwrap_or(1) as usize;
            Ok(json!({ "affine_in_b": wood_test(&u1, d) }))
        }
        CommandKind::AbelInverse => {
            let pair = if job.w.is_empty() {
                abel_inverse_from_cycle(&job.cycle(n)?, &job.function(n)?)?
            } else {
                let w = job
                    .w
                    .iter()
                    .map(|s| parse_ratfunc(s, n))
                    .collect::<Result<Vec<RatFunc>, Error>>()?;
                let d = match job.d {
                    Some(d) => d as usize,
                    None => w.len() / 2,
                };
                abel_inverse(&w, d, n)?
            };
            let mut out = pair_json(&pair)?;
            out["n"] = json!(n);
            out["d"] = json!(pair.f.degree().unwrap_or(0));
            Ok(out)
        }
        CommandKind::Abelian => {
            let v = job.cycle(n)?;
            let f = v.defining_polynomial();
            let basis = abelian_basis(&f, n)?;
            let certificates: Vec<Value> = basis
                .certificates
                .iter()
                .map(|c| {
                    json!({
                        "generator": c.generator.to_string(),
                        "w": strings(&c.w),
                        "degree_bound": c.degree_bound,
                    })
                })
                .collect();
            Ok(json!({
                "n": n,
                "d": basis.d,
                "f": basis.f.to_string(),
                "dimension": basis.dimension,
                "generators": strings(&basis.generators),
                "forms": basis.forms(),
                "independent": basis.independent,
                "certificates": certificates,
            }))
        }
        CommandKind::Castelnuovo => {
            let pi = castelnuovo_bound(
                job.d.unwrap_or_default(),
                job.n.unwrap_or_default() as u64,
                job.q.unwrap_or_default(),
            )?;
            let value = u64::try_from(pi)
                .map(Value::from)
                .unwrap_or_else(|_| json!(pi.to_string()));
            Ok(json!({ "pi_q": value }))
        }
        CommandKind::Verify => {
            let v = job.cycle(n)?;
            let h = job.function(n)?;
            let d = tilt(&v)?.degree();
            let kmax = job.kmax.unwrap_or(2 * d - 1);
            let plan = SamplePlan::new(
                job.seed.unwrap_or(DEFAULT_SEED),
                job.samples.unwrap_or(DEFAULT_SAMPLES),
            );
            let suite = agreement_suite(&v, &h, kmax, &plan)?;
            let report = serde_json::to_value(&suite).expect("report serializes");
            if suite.pass {
                Ok(report)
            } else {
                Err(JobError {
                    name: "OracleMismatch".into(),
                    message: serde_json::to_string(&report).expect("report serializes"),
                    code: EXIT_ORACLE,
                })
            }
        }
    }
}

/// Serializes a document; compact unless `pretty`.
pub fn render(value: &Value, pretty: bool) -> String {
    if pretty {
        serde_json::to_string_pretty(value).expect("JSON values serialize")
    } else {
        serde_json::to_string(value).expect("JSON values serialize")
    }
}

/// Parses, runs and renders one invocation. Returns the exit status and the
/// document to emit.
pub fn execute<I, S>(args: I, env_seed: Option<&str>) -> (i32, String, Option<PathBuf>)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(
                e.kind(),
                ErrorKind::DisplayHelp
                    | ErrorKind::DisplayVersion
                    | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand
            ) {
                return (EXIT_OK, e.to_string(), None);
            }
            let err = JobError::validation(
                "UsageError",
                e.to_string()
                    .lines()
                    .next()
                    .unwrap_or("")
                    .trim_start_matches("error: "),
            );
            return (err.code, render(&err.to_json(), false), None);
        }
    };
    let pretty = cli.pretty;
    let output = cli.output.clone();
    let result = load_file(cli.file.as_ref())
        .and_then(|pairs| JobSpec::from_cli(cli.command, &pairs, env_seed))
        .and_then(|job| run(&job));
    match result {
        Ok(doc) => (EXIT_OK, render(&doc, pretty), output),
        Err(e) => {
            let doc = if e.name == "OracleMismatch" {
                let report: Value = serde_json::from_str(&e.message).unwrap_or(Value::Null);
                json!({ "error": { "name": e.name, "message": "symbolic and numeric values disagree" }, "report": report })
            } else {
                e.to_json()
            };
            (e.code, render(&doc, pretty), output)
        }
    }
}

fn load_file(path: Option<&PathBuf>) -> Result<Vec<(String, String)>, JobError> {
    let Some(path) = path else {
        return Ok(Vec::new());
    };
    let text = std::fs::read_to_string(path).map_err(|e| {
        JobError::validation(
            "InvalidJobFile",
            format!("cannot read {}: {e}", path.display()),
        )
    })?;
    parse_job_file(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exec(args: &[&str]) -> (i32, String) {
        let (code, out, _) = execute(
            std::iter::once("abeltrace").chain(args.iter().copied()),
            None,
        );
        (code, out)
    }

    #[test]
    fn trace_of_a_parabola() {
        let (code, out) = exec(&[
            "trace", "--n", "1", "--f", "y^2 - x1", "--h", "x1", "--kmax", "2",
        ]);
        assert_eq!(code, 0, "{out}");
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(
            v["v"],
            json!(["a1^2+2*b1", "a1^3+3*a1*b1", "a1^4+4*a1^2*b1+2*b1^2"])
        );
        assert_eq!(v["u"], json!(["2", "a1", "a1^2+2*b1"]));
    }

    #[test]
    fn castelnuovo_and_wood_documents() {
        assert_eq!(
            exec(&["castelnuovo", "--d", "4", "--n", "2", "--q", "1"]),
            (0, r#"{"pi_q":8}"#.into())
        );
        assert_eq!(
            exec(&["wood", "--u1", "b1^2"]),
            (0, r#"{"affine_in_b":false}"#.into())
        );
        assert_eq!(
            exec(&["wood", "--u1", "a1 + 3*b1"]),
            (0, r#"{"affine_in_b":true}"#.into())
        );
    }

    #[test]
    fn exit_codes_follow_error_classes() {
        let (code, out) = exec(&["trace", "--n", "1", "--f", "y^2 - x3"]);
        assert_eq!(code, EXIT_VALIDATION);
        assert!(out.contains("UnknownVariable"), "{out}");
        let (code, out) = exec(&["trace", "--f", "y^2 - x1", "--h", "1/(y^2 - x1)"]);
        assert_eq!(code, EXIT_DEGENERACY, "{out}");
        let (code, out) = exec(&["castelnuovo", "--d", "4", "--n", "1", "--q", "2"]);
        assert_eq!(code, EXIT_VALIDATION);
        assert!(out.contains("OutOfRange"));
        let (code, _) = exec(&["trace"]);
        assert_eq!(code, EXIT_VALIDATION);
        let (code, out) = exec(&["trace", "--bogus"]);
        assert_eq!(code, EXIT_VALIDATION);
        assert!(out.contains("UsageError"));
    }

    #[test]
    fn job_files_fill_missing_fields_and_reject_unknown_ones() {
        let pairs = parse_job_file("# parabola\nn=1\nf = y^2 - x1\nh=x1\n").unwrap();
        let job = JobSpec::from_cli(Command::Trace(CycleArgs::default()), &pairs, None).unwrap();
        assert_eq!(job.f, vec!["y^2 - x1".to_string()]);
        assert_eq!(job.n, Some(1));
        let bad = parse_job_file("q=3\n").unwrap();
        let err = JobSpec::from_cli(Command::Trace(CycleArgs::default()), &bad, None).unwrap_err();
        assert_eq!(err.name, "UnknownField");
        assert!(parse_job_file("no separator").is_err());
    }

    #[test]
    fn seed_variable_overrides_flag() {
        let args = CycleArgs {
            f: vec!["y^2 - x1".into()],
            seed: Some(5),
            ..CycleArgs::default()
        };
        let job = JobSpec::from_cli(Command::Verify(args), &[], Some("11")).unwrap();
        assert_eq!(job.seed, Some(11));
    }

    #[test]
    fn abel_inverse_from_coefficients() {
        // y^2 - x1 with h = 1: w_k are the traces of y^k dx1.
        let (code, out) = exec(&["abel-inverse", "--f", "y^2 - x1", "--h", "1"]);
        assert_eq!(code, 0, "{out}");
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["f"], json!("y^2-x1"));
        assert_eq!(v["h"], json!("1"));
        let (code, out) = exec(&[
            "abel-inverse",
            "--n",
            "1",
            "--w",
            "0",
            "--w",
            "0",
            "--w",
            "0",
            "--w",
            "0",
        ]);
        assert_eq!(code, EXIT_DEGENERACY, "{out}");
        assert!(out.contains("DegenerateStildeSystem"));
    }

    #[test]
    fn reconstruct_and_abelian() {
        let (code, out) = exec(&["reconstruct", "--f", "y^2 - x1", "--h", "x1"]);
        assert_eq!(code, 0, "{out}");
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["star"], json!(true));
        assert_eq!(v["starstar"], json!(true));
        assert_eq!(v["f"], json!("y^2-x1"));
        let (code, out) = exec(&["abelian", "--n", "1", "--f", "y^3 + x1^3 - 1"]);
        assert_eq!(code, 0, "{out}");
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["dimension"], json!(1));
    }
}
