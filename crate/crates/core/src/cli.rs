//! Command-line front end.
//!
//! Every command produces a [`Report`]: the resolved configuration, a
//! command-specific body, and a list of named pass/fail checks. Reports render
//! either as a plain-text table or as pretty JSON with sorted keys.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails or a
//! computation reports a violated property, 2 for usage and input errors.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::freegroup::Word;
use crate::freeprod::checks::{run_kernel_suite, KernelSuiteConfig};
use crate::freeprod::{commute_lemma_scan, eq_in_g, k_image, GContext, ScanConfig};
use crate::tower::{self, lp_demo, perfectness_witness, rn_split_report, verify_psi, x01_word};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "perfloc",
    version,
    about = "Checks for a perfect group whose localization is not perfect"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a verification suite.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Search for commuting commutators in G.
    #[command(subcommand)]
    Scan(ScanCommand),
    #[command(subcommand)]
    Check(CheckCommand),
    #[command(subcommand)]
    Lp(LpCommand),
    /// Decide equality of two elements of G.
    Eq(EqArgs),
}

#[derive(Debug, Subcommand)]
pub enum VerifyCommand {
    /// ψ_n relations, order witness, x01 lengths and perfectness for n ≤ N.
    Tower(TowerArgs),
    /// Kernel rewriting round trips, relations and oracle consistency.
    Kernel(KernelArgs),
}

#[derive(Debug, Subcommand)]
pub enum ScanCommand {
    Commute(ScanArgs),
}

#[derive(Debug, Subcommand)]
pub enum CheckCommand {
    /// Split R_n as a one-relator free-product quotient.
    RnSplit(RnSplitArgs),
}

#[derive(Debug, Subcommand)]
pub enum LpCommand {
    /// Commutators vanish in ℚ/ℤ while 1/2 does not.
    Demo(LpArgs),
}

/// The two factors of `G` and their relator words, written in the `x<i>`
/// grammar with indices local to each factor.
#[derive(Debug, Clone, Args)]
pub struct ContextArgs {
    #[arg(long, default_value = "x1 x2", allow_hyphen_values = true)]
    pub u1: String,
    #[arg(long, default_value = "x1 x2", allow_hyphen_values = true)]
    pub u2: String,
    #[arg(long, default_value_t = 2)]
    pub rank1: usize,
    #[arg(long, default_value_t = 2)]
    pub rank2: usize,
}

#[derive(Debug, Clone, Args)]
pub struct TowerArgs {
    #[arg(long)]
    pub max_level: u32,
    #[arg(long, default_value_t = tower::ORDER_WITNESS_POWERS)]
    pub powers: u32,
}

#[derive(Debug, Clone, Args)]
pub struct KernelArgs {
    #[command(flatten)]
    pub ctx: ContextArgs,
    /// Rewrite and relation instances.
    #[arg(long, default_value_t = 500)]
    pub samples: usize,
    /// Maximum factor-word length in rewrite and relation instances.
    #[arg(long, default_value_t = 6)]
    pub max_len: usize,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = 1000)]
    pub round_trips: usize,
    #[arg(long, default_value_t = 24)]
    pub kernel_max_len: usize,
    #[arg(long, default_value_t = 200)]
    pub expansions: usize,
    #[arg(long, default_value_t = 4)]
    pub expansion_max_n: u32,
    #[arg(long, default_value_t = 3)]
    pub expansion_max_factors: usize,
    #[arg(long, default_value_t = 8)]
    pub oracle_degree: usize,
    #[arg(long, default_value_t = 20)]
    pub oracle_seeds: u64,
}

#[derive(Debug, Clone, Args)]
pub struct ScanArgs {
    #[command(flatten)]
    pub ctx: ContextArgs,
    #[arg(long, default_value_t = 3)]
    pub max_len: usize,
    #[arg(long, default_value_t = 10_000)]
    pub budget: usize,
    #[arg(long, default_value_t = 6)]
    pub random_len: usize,
    #[arg(long)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct RnSplitArgs {
    #[arg(long)]
    pub level: u32,
}

#[derive(Debug, Clone, Args)]
pub struct LpArgs {
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long)]
    pub seed: u64,
}

/// Elements are written with `a<i>`/`A<i>` for F₁ letters and `b<i>`/`B<i>`
/// for F₂ letters; `|` separators are optional.
#[derive(Debug, Clone, Args)]
pub struct EqArgs {
    #[command(flatten)]
    pub ctx: ContextArgs,
    #[arg(long, allow_hyphen_values = true)]
    pub lhs: String,
    #[arg(long, allow_hyphen_values = true)]
    pub rhs: String,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub config: Value,
    pub body: Value,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn exit_code(&self) -> i32 {
        if self.ok() {
            EXIT_OK
        } else {
            EXIT_VIOLATION
        }
    }

    fn check(&mut self, name: impl Into<String>, pass: bool) {
        self.checks.push(Check {
            name: name.into(),
            pass,
        });
    }

    pub fn to_json(&self) -> String {
        let v = json!({
            "command": self.command,
            "config": self.config,
            "report": self.body,
            "checks": self.checks,
            "ok": self.ok(),
        });
        // serde_json's default map is ordered by key
        let mut s = serde_json::to_string_pretty(&v).expect("serializable");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("perfloc {}\n", self.command);
        for c in &self.checks {
            let mark = if c.pass { "PASS" } else { "FAIL" };
            let _ = writeln!(s, "  {mark}  {}", c.name);
        }
        if let Value::Object(m) = &self.body {
            for (k, v) in m {
                if let Some(line) = scalar(v) {
                    let _ = writeln!(s, "  {k}: {line}");
                }
            }
        }
        let passed = self.checks.iter().filter(|c| c.pass).count();
        let _ = writeln!(
            s,
            "{} ({passed}/{} checks passed)",
            if self.ok() { "OK" } else { "FAILED" },
            self.checks.len()
        );
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.to_text(),
            Format::Json => self.to_json(),
        }
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

/// A failure of a command before or during execution.
#[derive(Debug)]
pub enum CliError {
    Usage(Error),
    Violation(Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Violation(_) => EXIT_VIOLATION,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(e) => write!(f, "usage error: {e}"),
            CliError::Violation(e) => write!(f, "{e}"),
        }
    }
}

fn usage<T>(r: Result<T>) -> std::result::Result<T, CliError> {
    r.map_err(CliError::Usage)
}

fn violation<T>(r: Result<T>) -> std::result::Result<T, CliError> {
    r.map_err(CliError::Violation)
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

pub fn parse_word(text: &str, rank: usize) -> Result<Word> {
    Word::parse(text, rank)
}

pub fn parse_context(args: &ContextArgs) -> Result<GContext> {
    GContext::new(
        parse_word(&args.u1, args.rank1)?,
        parse_word(&args.u2, args.rank2)?,
    )
}

fn positive(name: &str, v: u64) -> std::result::Result<(), CliError> {
    if v == 0 {
        return Err(CliError::Usage(Error::Domain(format!(
            "--{name} must be positive"
        ))));
    }
    Ok(())
}

pub fn execute(command: &Command) -> std::result::Result<Report, CliError> {
    match command {
        Command::Verify(VerifyCommand::Tower(a)) => verify_tower(a),
        Command::Verify(VerifyCommand::Kernel(a)) => verify_kernel(a),
        Command::Scan(ScanCommand::Commute(a)) => scan_commute(a),
        Command::Check(CheckCommand::RnSplit(a)) => check_rn_split(a),
        Command::Lp(LpCommand::Demo(a)) => demo_lp(a),
        Command::Eq(a) => eq(a),
    }
}

fn verify_tower(a: &TowerArgs) -> std::result::Result<Report, CliError> {
    positive("max-level", a.max_level.into())?;
    let mut report = Report {
        command: "verify tower".into(),
        config: json!({ "max_level": a.max_level, "powers": a.powers }),
        body: Value::Null,
        checks: Vec::new(),
    };
    let psi: Vec<Result<tower::PsiReport>> = (1..=a.max_level)
        .into_par_iter()
        .map(|n| verify_psi(n, a.powers))
        .collect();
    let mut levels = Vec::new();
    for (n, r) in (1..=a.max_level).zip(psi) {
        match r {
            Ok(p) => {
                report.check(format!("psi_relations[{n}]"), p.relations_ok);
                report.check(format!("psi_order_witness[{n}]"), p.order_witness_ok);
                if n == 1 {
                    report.check("psi_sign[1] = +1", p.sign == 1);
                }
                levels.push(to_value(&p.level_report()));
            }
            Err(Error::Verification(msg)) => {
                report.check(format!("psi_relations[{n}]"), false);
                levels.push(json!({ "n": n, "error": msg }));
            }
            Err(e) => return Err(CliError::Violation(e)),
        }
    }
    let lengths: Vec<usize> = (0..=a.max_level).map(|n| x01_word(n).len()).collect();
    for (n, &len) in lengths.iter().enumerate() {
        report.check(
            format!("x01_length[{n}] = 4^{n}"),
            len as u128 == 4u128.pow(n as u32),
        );
    }
    let perfect: Vec<_> = (0..=a.max_level).map(perfectness_witness).collect();
    for p in &perfect {
        report.check(format!("perfect[{}]", p.n), p.all_zero);
    }
    report.body =
        json!({ "levels": levels, "x01_lengths": lengths, "perfectness": to_value(&perfect) });
    Ok(report)
}

fn verify_kernel(a: &KernelArgs) -> std::result::Result<Report, CliError> {
    let ctx = usage(parse_context(&a.ctx))?;
    if a.oracle_degree < 2 {
        return Err(CliError::Usage(Error::Domain(
            "--oracle-degree must be at least 2".into(),
        )));
    }
    let cfg = KernelSuiteConfig {
        seed: a.seed,
        round_trip_samples: a.round_trips,
        kernel_max_len: a.kernel_max_len,
        rewrite_samples: a.samples,
        max_len: a.max_len,
        expansion_samples: a.expansions,
        expansion_max_n: a.expansion_max_n,
        expansion_max_factors: a.expansion_max_factors,
        oracle_degree: a.oracle_degree,
        oracle_seeds: a.oracle_seeds,
    };
    let r = violation(run_kernel_suite(&ctx, &cfg))?;
    let mut report = Report {
        command: "verify kernel".into(),
        config: json!({ "ctx": to_value(&ctx), "suite": to_value(&cfg) }),
        body: Value::Null,
        checks: Vec::new(),
    };
    report.check("round_trip", r.round_trip.ok());
    report.check("rewrite", r.rewrite.ok());
    report.check("symbol_kinds", r.symbol_kinds.ok());
    report.check("relation", r.relation.ok());
    report.check("expansion", r.expansion.ok());
    report.check("oracle", r.oracle.ok());
    let mut body = to_value(&r);
    if let Value::Object(m) = &mut body {
        m.remove("ctx");
        m.remove("config");
    }
    report.body = body;
    Ok(report)
}

fn scan_commute(a: &ScanArgs) -> std::result::Result<Report, CliError> {
    let ctx = usage(parse_context(&a.ctx))?;
    let cfg = ScanConfig {
        max_len: a.max_len,
        random_max_len: a.random_len,
        budget: a.budget,
        seed: a.seed,
    };
    let r = violation(commute_lemma_scan(&ctx, &cfg))?;
    let mut report = Report {
        command: "scan commute".into(),
        config: json!({ "ctx": to_value(&ctx), "scan": to_value(&cfg) }),
        body: to_value(&r),
        checks: Vec::new(),
    };
    report.check("no_counterexamples", r.counterexamples.is_empty());
    Ok(report)
}

fn check_rn_split(a: &RnSplitArgs) -> std::result::Result<Report, CliError> {
    let r = match rn_split_report(a.level) {
        Ok(r) => r,
        Err(e @ Error::Domain(_)) => return Err(CliError::Usage(e)),
        Err(e) => return Err(CliError::Violation(e)),
    };
    let mut report = Report {
        command: "check rn-split".into(),
        config: json!({ "level": a.level }),
        body: to_value(&r),
        checks: Vec::new(),
    };
    report.check("relator = [u1, u2]", r.relator_matches);
    report.check("u1 not a proper power", r.u1_exponent == 1);
    report.check("u2 not a proper power", r.u2_exponent == 1);
    Ok(report)
}

fn demo_lp(a: &LpArgs) -> std::result::Result<Report, CliError> {
    positive("samples", a.samples as u64)?;
    let r = violation(lp_demo(a.samples, a.seed))?;
    let mut report = Report {
        command: "lp demo".into(),
        config: json!({ "samples": a.samples, "seed": a.seed }),
        body: to_value(&r),
        checks: Vec::new(),
    };
    report.check(
        "commutators map to 0 in Q/Z",
        r.commutators_in_kernel == r.samples,
    );
    report.check("Q/Z image is additive", r.additive_pairs == r.samples);
    report.check(
        "normalization is idempotent",
        r.normalize_idempotent == r.samples,
    );
    report.check("1/2 maps to 1/2", r.half_image == "1/2");
    Ok(report)
}

fn eq(a: &EqArgs) -> std::result::Result<Report, CliError> {
    let ctx = usage(parse_context(&a.ctx))?;
    let lhs = usage(ctx.parse_element(&a.lhs))?;
    let rhs = usage(ctx.parse_element(&a.rhs))?;
    let equal = violation(eq_in_g(&ctx, &lhs, &rhs))?;
    let q = violation(lhs.multiply(&rhs.inverse()))?;
    let (p1, p2) = q.h_map();
    let k = if p1.is_empty() && p2.is_empty() {
        Value::String(violation(k_image(&ctx, &q))?.to_string())
    } else {
        Value::Null
    };
    Ok(Report {
        command: "eq".into(),
        config: json!({ "ctx": to_value(&ctx), "lhs": lhs.to_string(), "rhs": rhs.to_string() }),
        body: json!({ "equal": equal, "quotient_k_image": k }),
        checks: Vec::new(),
    })
}

/// Parses `args`, runs the command, and writes the report. Returns the exit code.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    run(&cli)
}

pub fn run(cli: &Cli) -> i32 {
    let report = match execute(&cli.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("perfloc: {e}");
            return e.exit_code();
        }
    };
    let out = report.render(cli.format);
    match &cli.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, out) {
                eprintln!("perfloc: cannot write {}: {e}", path.display());
                return EXIT_USAGE;
            }
        }
        None => print!("{out}"),
    }
    report.exit_code()
}
