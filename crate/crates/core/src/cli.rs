//! Command-line front end: coefficient tables, interpolation queries and
//! grid runs of the congruence checks.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hyper::{b_coefficients, bhat_coefficients, hg_coefficients, CoeffTable, FrobeniusSpec, HGParams};
use crate::interp::{beta_at, InterpPoint};
use crate::padic::{Prime, RationalParam};
use crate::verify::{
    check_b0_log, check_beta_pairing, check_braced_sweep, check_congruence_relation, check_dwork_transformation,
    check_integrality, check_interpolation, check_main_congruence, check_ratio_identity, check_section_sweep,
    CheckReport, CongruenceKind, ReportParams,
};

pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_CONFIG: u8 = 2;

/// Largest `p^n` the suite will run.
const MAX_SCALE: u64 = 625;
const RATIO_BOUND: u64 = 200;

#[derive(Parser, Debug)]
#[command(name = "padic-hg", version, about = "p-adic hypergeometric functions and their congruences")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run a grid of checks and write a JSON-lines report.
    Suite(SuiteArgs),
    /// Print a coefficient table.
    Table(TableArgs),
    /// Evaluate the interpolated functions at rational points.
    Interp(InterpArgs),
}

#[derive(Args, Debug, Default)]
pub struct SuiteArgs {
    /// Primes, comma separated.
    #[arg(long, env = "PADIC_HG_P")]
    pub p: Option<String>,
    /// Levels `n`, comma separated; `a..b` is inclusive.
    #[arg(long, env = "PADIC_HG_N")]
    pub n: Option<String>,
    /// Parameters `a` as `n/d`.
    #[arg(long, env = "PADIC_HG_A", allow_hyphen_values = true)]
    pub a: Option<String>,
    /// Multiplicities `s`.
    #[arg(long, env = "PADIC_HG_S")]
    pub s: Option<String>,
    /// Twist constants `c`; `1+q` means `1 + q(p)` at each prime.
    #[arg(long, env = "PADIC_HG_C")]
    pub c: Option<String>,
    /// Checks to run, or `all`.
    #[arg(long, env = "PADIC_HG_CHECK")]
    pub check: Option<String>,
    /// Target precision for the integrality check.
    #[arg(long, env = "PADIC_HG_PREC")]
    pub prec: Option<u32>,
    /// Report path; standard output if absent.
    #[arg(long, env = "PADIC_HG_OUT")]
    pub out: Option<PathBuf>,
    #[arg(long, env = "PADIC_HG_FORMAT")]
    pub format: Option<Format>,
    /// Worker threads.
    #[arg(long, env = "PADIC_HG_JOBS")]
    pub jobs: Option<usize>,
    /// `key: value` file with the same keys as the flags; flags win.
    #[arg(long, env = "PADIC_HG_CONFIG")]
    pub config: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        <Format as ValueEnum>::from_str(s.trim(), true).map_err(|_| Error::ConfigInvalid(format!("format {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableKind {
    A,
    A1,
    B,
    Bhat,
    Beta,
    BetaHat,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[arg(long, value_enum, ignore_case = true)]
    pub kind: TableKind,
    #[arg(long, env = "PADIC_HG_P")]
    pub p: u64,
    #[arg(long, env = "PADIC_HG_A", allow_hyphen_values = true)]
    pub a: RationalParam,
    #[arg(long, env = "PADIC_HG_S", default_value_t = 1)]
    pub s: u32,
    #[arg(long, env = "PADIC_HG_C", default_value = "1")]
    pub c: RationalParam,
    /// Use `σ̂(t) = c^{-1}t^p` for `Bhat`.
    #[arg(long)]
    pub sigma_hat: bool,
    /// Number of rows for coefficient kinds.
    #[arg(long, default_value_t = 8)]
    pub count: usize,
    /// Points `λ` for `beta` and `beta-hat`.
    #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
    pub lambda: Vec<RationalParam>,
    #[arg(long, env = "PADIC_HG_PREC", default_value_t = 6)]
    pub prec: u32,
    #[arg(long, env = "PADIC_HG_FORMAT", value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, env = "PADIC_HG_OUT")]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct InterpArgs {
    #[arg(long, env = "PADIC_HG_P")]
    pub p: u64,
    #[arg(long, env = "PADIC_HG_A", allow_hyphen_values = true)]
    pub a: RationalParam,
    #[arg(long, env = "PADIC_HG_S", default_value_t = 1)]
    pub s: u32,
    #[arg(long, env = "PADIC_HG_C", default_value = "1")]
    pub c: RationalParam,
    #[arg(long, env = "PADIC_HG_N", default_value_t = 2)]
    pub n: u32,
    #[arg(long, allow_hyphen_values = true, value_delimiter = ',', required = true)]
    pub lambda: Vec<RationalParam>,
    /// Evaluate `β̂` (with `σ̂`) instead of `β`.
    #[arg(long)]
    pub hat: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckName {
    Dwork,
    Log,
    Hat,
    DworkTransform,
    Braced,
    BetaPairing,
    Section,
    MainCongruence,
    Integrality,
    Interpolation,
    RatioIdentity,
    B0,
}

impl CheckName {
    pub const ALL: [CheckName; 12] = [
        CheckName::Dwork,
        CheckName::Log,
        CheckName::Hat,
        CheckName::DworkTransform,
        CheckName::Braced,
        CheckName::BetaPairing,
        CheckName::Section,
        CheckName::MainCongruence,
        CheckName::Integrality,
        CheckName::Interpolation,
        CheckName::RatioIdentity,
        CheckName::B0,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckName::Dwork => "dwork",
            CheckName::Log => "log",
            CheckName::Hat => "hat",
            CheckName::DworkTransform => "dwork-transform",
            CheckName::Braced => "braced",
            CheckName::BetaPairing => "beta-pairing",
            CheckName::Section => "section",
            CheckName::MainCongruence => "main-congruence",
            CheckName::Integrality => "integrality",
            CheckName::Interpolation => "interpolation",
            CheckName::RatioIdentity => "ratio-identity",
            CheckName::B0 => "b0",
        }
    }

    fn uses_n(self) -> bool {
        self != CheckName::RatioIdentity
    }

    fn uses_c(self) -> bool {
        matches!(
            self,
            CheckName::Log
                | CheckName::Hat
                | CheckName::BetaPairing
                | CheckName::MainCongruence
                | CheckName::Integrality
                | CheckName::Interpolation
                | CheckName::B0
        )
    }

    /// Checks whose statements assume `c ∈ 1 + qZ_p`.
    fn needs_one_plus_q(self) -> bool {
        self.uses_c() && !matches!(self, CheckName::Log | CheckName::Integrality)
    }
}

impl fmt::Display for CheckName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        CheckName::ALL
            .into_iter()
            .find(|c| c.name() == t)
            .ok_or_else(|| Error::ConfigInvalid(format!("unknown check {t:?}")))
    }
}

/// A twist constant, possibly given relative to `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CToken {
    Value(RationalParam),
    OnePlusQ,
}

impl CToken {
    pub fn resolve(self, p: Prime) -> RationalParam {
        match self {
            CToken::Value(c) => c,
            CToken::OnePlusQ => RationalParam::integer(1 + p.q() as i64),
        }
    }
}

impl FromStr for CToken {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "1+q" => Ok(CToken::OnePlusQ),
            t => t.parse().map(CToken::Value).map_err(|_| Error::ConfigInvalid(format!("c value {s:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub primes: Vec<Prime>,
    pub ns: Vec<u32>,
    pub a: Vec<RationalParam>,
    pub s: Vec<u32>,
    pub c: Vec<CToken>,
    pub checks: Vec<CheckName>,
    pub prec: Option<u32>,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub jobs: usize,
}

fn list<T: FromStr<Err = Error>>(key: &str, raw: &str) -> Result<Vec<T>> {
    let items: Vec<T> = raw
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.parse().map_err(|_| Error::ConfigInvalid(format!("{key}: {t:?}"))))
        .collect::<Result<_>>()?;
    Ok(items)
}

/// Comma-separated integers, where `a..b` expands inclusively.
fn int_list<T: TryFrom<u64>>(key: &str, raw: &str) -> Result<Vec<T>> {
    let bad = |t: &str| Error::ConfigInvalid(format!("{key}: {t:?}"));
    let mut out = Vec::new();
    for t in raw.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let (lo, hi) = match t.split_once("..") {
            Some((lo, hi)) => (lo.trim(), hi.trim().trim_start_matches('=')),
            None => (t, t),
        };
        let lo: u64 = lo.parse().map_err(|_| bad(t))?;
        let hi: u64 = hi.parse().map_err(|_| bad(t))?;
        for v in lo..=hi {
            out.push(T::try_from(v).map_err(|_| bad(t))?);
        }
    }
    Ok(out)
}

/// Reads a `key: value` file; blank lines and `#` comments are skipped.
pub fn read_config_file(path: &Path) -> Result<BTreeMap<String, String>> {
    let text = fs::read_to_string(path).map_err(|e| Error::ConfigInvalid(format!("{}: {e}", path.display())))?;
    let mut map = BTreeMap::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once(':')
            .ok_or_else(|| Error::ConfigInvalid(format!("expected `key: value`, got {line:?}")))?;
        let v = v.trim().trim_start_matches('[').trim_end_matches(']');
        let v: String = v.split(',').map(|t| t.trim().trim_matches('"')).collect::<Vec<_>>().join(",");
        map.insert(k.trim().trim_start_matches("--").to_string(), v);
    }
    Ok(map)
}

impl SuiteConfig {
    pub fn from_args(args: &SuiteArgs) -> Result<Self> {
        let file = match &args.config {
            Some(path) => read_config_file(path)?,
            None => BTreeMap::new(),
        };
        let known = ["p", "n", "a", "s", "c", "check", "checks", "prec", "out", "format", "jobs"];
        if let Some(k) = file.keys().find(|k| !known.contains(&k.as_str())) {
            return Err(Error::ConfigInvalid(format!("unknown key {k:?}")));
        }
        let get = |flag: &Option<String>, key: &str| -> Option<String> {
            flag.clone().or_else(|| file.get(key).cloned())
        };
        let required = |v: Option<String>, key: &str| v.ok_or_else(|| Error::ConfigInvalid(format!("missing {key}")));
        let primes = int_list::<u64>("p", &required(get(&args.p, "p"), "p")?)?
            .into_iter()
            .map(|p| Prime::new(p).map_err(|e| Error::ConfigInvalid(e.to_string())))
            .collect::<Result<Vec<_>>>()?;
        let checks_raw = required(get(&args.check, "check").or_else(|| file.get("checks").cloned()), "check")?;
        let checks = if checks_raw.trim() == "all" { CheckName::ALL.to_vec() } else { list("check", &checks_raw)? };
        let prec = match args.prec {
            Some(p) => Some(p),
            None => file.get("prec").map(|v| v.parse().map_err(|_| Error::ConfigInvalid(format!("prec {v:?}")))).transpose()?,
        };
        let jobs = match args.jobs {
            Some(j) => j,
            None => match file.get("jobs") {
                Some(v) => v.parse().map_err(|_| Error::ConfigInvalid(format!("jobs {v:?}")))?,
                None => std::thread::available_parallelism().map_or(1, |n| n.get()),
            },
        };
        let format = match args.format {
            Some(f) => f,
            None => file.get("format").map(|f| f.parse()).transpose()?.unwrap_or_default(),
        };
        let config = SuiteConfig {
            primes,
            ns: int_list("n", &get(&args.n, "n").unwrap_or_else(|| "1".into()))?,
            a: list("a", &required(get(&args.a, "a"), "a")?)?,
            s: int_list("s", &get(&args.s, "s").unwrap_or_else(|| "1".into()))?,
            c: list("c", &get(&args.c, "c").unwrap_or_else(|| "1".into()))?,
            checks,
            prec,
            out: args.out.clone().or_else(|| file.get("out").map(PathBuf::from)),
            format,
            jobs,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        let invalid = |m: String| Err(Error::ConfigInvalid(m));
        for (key, empty) in [
            ("p", self.primes.is_empty()),
            ("n", self.ns.is_empty()),
            ("a", self.a.is_empty()),
            ("s", self.s.is_empty()),
            ("c", self.c.is_empty()),
            ("check", self.checks.is_empty()),
        ] {
            if empty {
                return invalid(format!("empty {key} list"));
            }
        }
        if self.jobs == 0 {
            return invalid("jobs must be positive".into());
        }
        if self.prec == Some(0) {
            return invalid("prec must be positive".into());
        }
        for &p in &self.primes {
            for &n in &self.ns {
                if n == 0 || p.pow(n).map_or(true, |pn| pn > MAX_SCALE) {
                    return invalid(format!("p^n = {p}^{n} outside 1 < p^n ≤ {MAX_SCALE}"));
                }
            }
            for a in &self.a {
                for &s in &self.s {
                    HGParams::new(*a, s, p).map_err(|e| Error::ConfigInvalid(format!("a = {a}, s = {s}, p = {p}: {e}")))?;
                }
            }
            for token in &self.c {
                let spec = FrobeniusSpec::sigma(token.resolve(p));
                spec.validate(p).map_err(|e| Error::ConfigInvalid(e.to_string()))?;
                if let Some(check) = self.checks.iter().find(|c| c.needs_one_plus_q()) {
                    if !spec.in_one_plus_q(p) {
                        return invalid(format!("{check} needs c ≡ 1 mod {}, got c = {}", p.q(), spec.c));
                    }
                }
            }
        }
        Ok(())
    }

    /// The Cartesian grid, with axes a check ignores collapsed.
    pub fn cells(&self) -> Vec<Cell> {
        let mut cells = Vec::new();
        for &check in &self.checks {
            for &p in &self.primes {
                for a in &self.a {
                    for &s in &self.s {
                        let params = HGParams::new(*a, s, p).expect("validated");
                        let ns: Vec<Option<u32>> =
                            if check.uses_n() { self.ns.iter().copied().map(Some).collect() } else { vec![None] };
                        let cs: Vec<Option<RationalParam>> = if check.uses_c() {
                            let mut cs: Vec<_> = self.c.iter().map(|t| Some(t.resolve(p))).collect();
                            cs.dedup();
                            cs
                        } else {
                            vec![None]
                        };
                        for &n in &ns {
                            for &c in &cs {
                                cells.push(Cell { check, params: params.clone(), n, c, prec: self.prec });
                            }
                        }
                    }
                }
            }
        }
        cells
    }
}

#[derive(Clone, Debug)]
pub struct Cell {
    pub check: CheckName,
    pub params: HGParams,
    pub n: Option<u32>,
    pub c: Option<RationalParam>,
    pub prec: Option<u32>,
}

impl Cell {
    pub fn run(&self) -> CheckReport {
        self.evaluate().unwrap_or_else(|e| {
            let mut rp = ReportParams::of(&self.params);
            rp.n = self.n;
            rp.c = self.c.map(|c| c.to_string());
            CheckReport::errored(self.check.name(), rp, &e)
        })
    }

    fn evaluate(&self) -> Result<CheckReport> {
        let h = &self.params;
        let p = h.p;
        let n = self.n.unwrap_or(1);
        let c = self.c.unwrap_or_else(RationalParam::one);
        let sigma = FrobeniusSpec::sigma(c);
        let span = 2 * p.pow_usize(n);
        match self.check {
            CheckName::Dwork => check_congruence_relation(CongruenceKind::Dwork, h, &sigma, n, span),
            CheckName::Log => check_congruence_relation(CongruenceKind::Log, h, &sigma, n, span),
            CheckName::Hat => check_congruence_relation(CongruenceKind::Hat, h, &sigma, n, span),
            CheckName::DworkTransform => check_dwork_transformation(h, n),
            CheckName::Braced => check_braced_sweep(h, n, p.get().pow(2 * n)),
            CheckName::BetaPairing => {
                let lambdas = [RationalParam::zero(), RationalParam::one(), RationalParam::integer(2), RationalParam::new(1, 2)?, -h.a - 1];
                let mut reports = Vec::new();
                for lambda in lambdas.iter().filter(|l| l.check_embeddable(p).is_ok()) {
                    reports.push(check_beta_pairing(lambda, h, &c, n)?);
                }
                // λ = 0 is always a valid point, so `reports` is nonempty
                let failing = reports.iter().find(|r| !r.passed).cloned();
                Ok(failing.unwrap_or_else(|| {
                    let mut r = reports[0].clone();
                    r.params.a = h.a.to_string();
                    r
                }))
            }
            CheckName::Section => check_section_sweep(h, n),
            CheckName::MainCongruence => check_main_congruence(h, &c, n),
            CheckName::Integrality => check_integrality(h, &sigma, span + 1, self.prec.unwrap_or(n)),
            CheckName::Interpolation => check_interpolation(h, &sigma, n, span),
            CheckName::RatioIdentity => Ok(check_ratio_identity(h, RATIO_BOUND)),
            CheckName::B0 => check_b0_log(h, &c, n),
        }
    }
}

/// Runs every cell on a pool of `config.jobs` threads; the order of the
/// result follows [`SuiteConfig::cells`].
pub fn run_suite(config: &SuiteConfig) -> Result<Vec<CheckReport>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| Error::ConfigInvalid(e.to_string()))?;
    let cells = config.cells();
    Ok(pool.install(|| cells.par_iter().map(Cell::run).collect()))
}

#[derive(Serialize)]
struct CsvReportRow<'a> {
    check: &'a str,
    a: &'a str,
    s: u32,
    p: u64,
    n: Option<u32>,
    c: Option<&'a str>,
    passed: bool,
    sign: Option<i8>,
    relative_sign: Option<i8>,
    modulus: &'a str,
    failure: Option<String>,
    error: Option<&'a str>,
}

pub fn write_reports<W: Write>(reports: &[CheckReport], format: Format, mut out: W) -> Result<()> {
    match format {
        Format::Json => {
            for r in reports {
                serde_json::to_writer(&mut out, r).map_err(|e| Error::Io(e.to_string()))?;
                writeln!(out)?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for r in reports {
                w.serialize(CsvReportRow {
                    check: &r.check,
                    a: &r.params.a,
                    s: r.params.s,
                    p: r.params.p,
                    n: r.params.n,
                    c: r.params.c.as_deref(),
                    passed: r.passed,
                    sign: r.sign,
                    relative_sign: r.relative_sign,
                    modulus: &r.modulus,
                    failure: r.first_failure.as_ref().map(|f| format!("{:?}: {} vs {}", f.indices, f.left, f.right)),
                    error: r.error.as_deref(),
                })
                .map_err(|e| Error::Io(e.to_string()))?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

/// Per-check pass counts, one line each.
pub fn write_summary<W: Write>(reports: &[CheckReport], mut out: W) -> Result<()> {
    let mut counts: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
    for r in reports {
        let e = counts.entry(&r.check).or_default();
        e.0 += 1;
        e.1 += r.passed as usize;
    }
    writeln!(out, "{:<16} {:>6} {:>6} {:>6}", "check", "cells", "pass", "fail")?;
    for (check, (total, pass)) in counts {
        writeln!(out, "{check:<16} {total:>6} {pass:>6} {:>6}", total - pass)?;
    }
    Ok(())
}

#[derive(Serialize)]
struct BetaRow {
    lambda: String,
    k_witness: u64,
    residue: String,
    prec: u32,
}

#[derive(Serialize)]
struct CsvCoeffRow<'a> {
    k: usize,
    kind: &'a str,
    residue: String,
    prec: u32,
}

/// Rows for `A`, `A1`, `B`, `Bhat` (by index) or `beta`, `beta-hat` (by point).
pub fn emit_table<W: Write>(args: &TableArgs, mut out: W) -> Result<()> {
    let p = Prime::new(args.p)?;
    let params = HGParams::new(args.a, args.s, p)?;
    let frob = if args.sigma_hat { FrobeniusSpec::sigma_hat(args.c) } else { FrobeniusSpec::sigma(args.c) };
    let table: CoeffTable = match args.kind {
        TableKind::A => hg_coefficients(&params, args.count, 0, args.prec)?,
        TableKind::A1 => hg_coefficients(&params, args.count, 1, args.prec)?,
        TableKind::B => b_coefficients(&params, &frob, args.count, args.prec)?,
        TableKind::Bhat => bhat_coefficients(&params, &frob, args.count, args.prec)?,
        TableKind::Beta | TableKind::BetaHat => {
            let hat = args.kind == TableKind::BetaHat;
            let frob = if hat { FrobeniusSpec::sigma_hat(args.c) } else { FrobeniusSpec::sigma(args.c) };
            let rows = beta_rows(&params, &frob, &args.lambda, args.prec, hat)?;
            return write_rows(&rows, args.format, out);
        }
    };
    match args.format {
        Format::Json => table.write_json_lines(&mut out)?,
        Format::Csv => {
            let rows: Vec<CsvCoeffRow> = table
                .values
                .iter()
                .enumerate()
                .map(|(k, v)| CsvCoeffRow { k, kind: table.kind.name(), residue: v.residue().to_string(), prec: v.prec() })
                .collect();
            write_rows(&rows, Format::Csv, out)?;
        }
    }
    Ok(())
}

fn beta_rows(params: &HGParams, frob: &FrobeniusSpec, points: &[RationalParam], n: u32, hat: bool) -> Result<Vec<BetaRow>> {
    if points.is_empty() {
        return Err(Error::ConfigInvalid("beta tables need --lambda".into()));
    }
    points
        .iter()
        .map(|l| {
            let pt = InterpPoint::new(*l, params.p, n)?;
            let v = beta_at(l, params, frob, n, hat)?;
            Ok(BetaRow { lambda: l.to_string(), k_witness: pt.k_witness, residue: v.residue().to_string(), prec: v.prec() })
        })
        .collect()
}

fn write_rows<T: Serialize, W: Write>(rows: &[T], format: Format, mut out: W) -> Result<()> {
    match format {
        Format::Json => {
            for r in rows {
                serde_json::to_writer(&mut out, r).map_err(|e| Error::Io(e.to_string()))?;
                writeln!(out)?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for r in rows {
                w.serialize(r).map_err(|e| Error::Io(e.to_string()))?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn open_out(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(std::io::BufWriter::new(fs::File::create(p)?)),
        None => Box::new(std::io::stdout().lock()),
    })
}

/// Exit status for a failed command: configuration problems get their own code.
pub fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::ConfigInvalid(_) | Error::Parse(_) | Error::NotPrime(_) | Error::DenominatorDivisibleByP { .. } => EXIT_CONFIG,
        _ => EXIT_FAIL,
    }
}

pub fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Suite(args) => {
            let config = SuiteConfig::from_args(&args)?;
            let reports = run_suite(&config)?;
            match &config.out {
                Some(_) => {
                    write_reports(&reports, config.format, open_out(&config.out)?)?;
                    write_summary(&reports, std::io::stdout().lock())?;
                }
                None => {
                    write_reports(&reports, config.format, std::io::stdout().lock())?;
                    write_summary(&reports, std::io::stderr().lock())?;
                }
            }
            Ok(if reports.iter().all(|r| r.passed) { EXIT_PASS } else { EXIT_FAIL })
        }
        Command::Table(args) => {
            emit_table(&args, open_out(&args.out)?)?;
            Ok(EXIT_PASS)
        }
        Command::Interp(args) => {
            let p = Prime::new(args.p)?;
            let params = HGParams::new(args.a, args.s, p)?;
            let frob = if args.hat { FrobeniusSpec::sigma_hat(args.c) } else { FrobeniusSpec::sigma(args.c) };
            let rows = beta_rows(&params, &frob, &args.lambda, args.n, args.hat)?;
            write_rows(&rows, Format::Json, std::io::stdout().lock())?;
            Ok(EXIT_PASS)
        }
    }
}
