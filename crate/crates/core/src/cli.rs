//! Command-line front end. Every subcommand produces a [`Report`], printed as
//! JSON (`--json`) or as a plain table. Exit status is 0 when every requested
//! check passes, 1 when a check fails and 2 on bad input.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::grothendieck::ClassSymbol;
use crate::igusa::{self, IntPoly};
use crate::kodaira::{DataSource, KodairaType};
use crate::neron::{euler_trace_check, gmp_check, verify_unique_pole, NeronData};
use crate::poly::ZPoly;
use crate::sncd::{Mode, SncdModel};
use crate::verify;
use crate::zeta::{assemble_from_sncd, PoleReport};

pub const SCHEMA_VERSION: u32 = 1;
pub const BUDGET_ENV: &str = "MZETA_BUDGET";
const SYMBOLIC_CAVEAT: &str = "pole certification relative to free-symbol model";

#[derive(Parser, Debug)]
#[command(name = "mzeta", version, about = "Motivic zeta functions from sncd models and Néron data")]
pub struct Cli {
    /// Print the report as JSON instead of a table.
    #[arg(long, global = true)]
    pub json: bool,
    /// Read bundled data from this directory instead of the built-in copies.
    #[arg(long, global = true, value_name = "DIR")]
    pub data_dir: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Analyse an sncd model file (a path, or the name of a bundled file such as kodaira_II.json).
    Sncd(SncdArgs),
    /// Zeta function of an abelian variety from Néron data.
    Abelian(AbelianArgs),
    /// Count solutions mod p^(m+1) and test the Poincaré series.
    Igusa(IgusaArgs),
    /// Run the acceptance suite over the bundled data.
    VerifyAll,
}

#[derive(Args, Debug)]
pub struct SncdArgs {
    pub file: String,
    /// Log canonical threshold min mu_i/N_i.
    #[arg(long)]
    pub lct: bool,
    /// Degeneracy index of the threshold.
    #[arg(long)]
    pub delta: bool,
    /// Poles of the normalized zeta function.
    #[arg(long)]
    pub poles: bool,
    /// Candidate poles -mu_i/N_i.
    #[arg(long)]
    pub candidates: bool,
    /// Coefficients of T^1..T^N.
    #[arg(long, value_name = "N")]
    pub series: Option<usize>,
    /// The normalized zeta function as a rational function.
    #[arg(long)]
    pub zeta: bool,
    /// A'Campo monodromy zeta function.
    #[arg(long)]
    pub monodromy_zeta: bool,
    /// Characteristic polynomial on H^1 (genus-one fibres).
    #[arg(long)]
    pub h1: bool,
    /// Check the monodromy property against these polynomials in t (H^0,H^1,... comma separated).
    #[arg(long, value_name = "POLYS", value_delimiter = ',')]
    pub gmp_with: Option<Vec<String>>,
}

#[derive(Args, Debug)]
pub struct AbelianArgs {
    /// Bundled Kodaira type: I0, In, II, III, IV, I0star, Instar, IVstar, IIIstar, IIstar.
    #[arg(long = "type", value_name = "TAG", conflicts_with = "neron", required_unless_present = "neron")]
    pub kodaira: Option<String>,
    /// n for In and Instar.
    #[arg(long, value_name = "N")]
    pub n: Option<u32>,
    /// Néron data file.
    #[arg(long, value_name = "FILE")]
    pub neron: Option<PathBuf>,
    /// Check for a unique pole at c of order t_pot + 1.
    #[arg(long)]
    pub verify: bool,
    /// Coefficients of T^1..T^N.
    #[arg(long, value_name = "N")]
    pub series: Option<usize>,
    /// Monodromy property; uses the A'Campo polynomials of the bundled model unless --gmp-with is given.
    #[arg(long)]
    pub gmp: bool,
    /// Characteristic polynomials in t (comma separated) for --gmp.
    #[arg(long, value_name = "POLYS", value_delimiter = ',')]
    pub gmp_with: Option<Vec<String>>,
    /// Euler characteristic trace check for d = 1..N.
    #[arg(long, value_name = "N")]
    pub euler_check: Option<usize>,
    /// Euler characteristic of a class symbol, SYMBOL=VALUE (b=0 is the default for --type).
    #[arg(long, value_name = "SYM=VALUE")]
    pub chi: Vec<String>,
}

#[derive(Args, Debug)]
pub struct IgusaArgs {
    /// Polynomial in x, y, z, w, e.g. "x^2 + y^3 - 7".
    #[arg(long)]
    pub poly: String,
    /// Prime.
    #[arg(short = 'p', long = "prime")]
    pub p: u64,
    /// Count N_0..N_M.
    #[arg(short = 'M', short_alias = 'm', long = "max-m", default_value_t = 3)]
    pub max_m: u32,
    /// Fit a rational function to the counts (needs M >= 6).
    #[arg(long)]
    pub fit: bool,
    /// Compare P(p^-1 T) with p(1 - Z)/(1 - T) for a monomial x^k.
    #[arg(long)]
    pub check_poinzeta: bool,
    /// Add 1 to the coefficient of T^J of Z before comparing (negative control).
    #[arg(long, value_name = "J", requires = "check_poinzeta")]
    pub corrupt_zeta: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: Vec<String>,
    pub inputs_digest: String,
    pub results: Map<String, Value>,
    pub checks: Vec<Check>,
    pub pass: bool,
    pub caveats: Vec<String>,
}

struct Builder {
    hasher: Sha256,
    results: Map<String, Value>,
    checks: Vec<Check>,
    caveats: Vec<String>,
}

impl Builder {
    fn new(args: &[String]) -> Self {
        let mut hasher = Sha256::new();
        for a in args {
            hasher.update(a.as_bytes());
            hasher.update([0u8]);
        }
        Self { hasher, results: Map::new(), checks: Vec::new(), caveats: Vec::new() }
    }

    fn input(&mut self, text: &str) {
        self.hasher.update(text.as_bytes());
        self.hasher.update([0u8]);
    }

    fn result(&mut self, key: &str, v: Value) {
        self.results.insert(key.to_string(), v);
    }

    fn check(&mut self, name: impl Into<String>, pass: bool) {
        self.checks.push(Check { name: name.into(), pass });
    }

    fn caveat(&mut self, c: impl Into<String>) {
        let c = c.into();
        if !self.caveats.contains(&c) {
            self.caveats.push(c);
        }
    }

    fn finish(self, command: Vec<String>) -> Report {
        let pass = self.checks.iter().all(|c| c.pass);
        Report {
            schema_version: SCHEMA_VERSION,
            command,
            inputs_digest: hex::encode(self.hasher.finalize()),
            results: self.results,
            checks: self.checks,
            pass,
            caveats: self.caveats,
        }
    }
}

#[derive(Debug)]
pub struct CliError(pub String);

impl<E: std::fmt::Display> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError(e.to_string())
    }
}

/// Counting budget from `MZETA_BUDGET`, or the default.
pub fn budget_from_env() -> Result<u64, CliError> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse::<u64>()
            .map_err(|_| CliError(format!("{BUDGET_ENV} must be a non-negative integer, got `{v}`"))),
        Err(_) => Ok(igusa::DEFAULT_BUDGET),
    }
}

pub fn run(cli: &Cli, argv: &[String]) -> Result<Report, CliError> {
    let src = match &cli.data_dir {
        Some(dir) => DataSource::Dir(dir.clone()),
        None => DataSource::Bundled,
    };
    let mut b = Builder::new(argv);
    match &cli.command {
        Command::Sncd(a) => cmd_sncd(a, &src, &mut b)?,
        Command::Abelian(a) => cmd_abelian(a, &src, &mut b)?,
        Command::Igusa(a) => cmd_igusa(a, &mut b)?,
        Command::VerifyAll => cmd_verify_all(&src, &mut b)?,
    }
    Ok(b.finish(argv.to_vec()))
}

fn read_model_text(name: &str, src: &DataSource) -> Result<String, CliError> {
    let path = Path::new(name);
    if path.is_file() {
        return Ok(std::fs::read_to_string(path)?);
    }
    let base = path.file_name().and_then(|s| s.to_str()).unwrap_or(name);
    for rel in [name.to_string(), format!("kodaira/{base}"), format!("sncd/{base}")] {
        if let Ok(text) = src.read(&rel) {
            return Ok(text);
        }
    }
    Err(CliError(format!("{name}: no such file, and no bundled model of that name")))
}

fn poles_json(b: &mut Builder, poles: &PoleReport) -> Value {
    if poles.symbolic_caveat {
        b.caveat(SYMBOLIC_CAVEAT);
    }
    poles.to_json()
}

fn parse_polys(list: &[String]) -> Result<Vec<ZPoly>, CliError> {
    list.iter()
        .map(|s| igusa::parse_univariate(s, 't').map_err(|e| CliError(format!("`{s}`: {e}"))))
        .collect()
}

fn cmd_sncd(a: &SncdArgs, src: &DataSource, b: &mut Builder) -> Result<(), CliError> {
    let text = read_model_text(&a.file, src)?;
    b.input(&text);
    let model = SncdModel::parse(&text).map_err(|e| CliError(format!("{}: {e}", a.file)))?;
    for w in model.warnings() {
        b.caveat(w.clone());
    }
    if model.mode() == Mode::Hypersurface {
        b.caveat("hypersurface mode: mu fields hold the numerical data nu_i");
    }
    let nothing = !(a.lct
        || a.delta
        || a.poles
        || a.candidates
        || a.series.is_some()
        || a.zeta
        || a.monodromy_zeta
        || a.h1
        || a.gmp_with.is_some());
    if a.lct || nothing {
        b.result("lct", json!({"value": model.lct().to_string(), "formula": "min_i mu_i/N_i"}));
    }
    if a.delta || nothing {
        b.result(
            "delta",
            json!({"value": model.delta(), "formula": "max |J| over strata with mu_j/N_j = lct for all j in J, minus 1"}),
        );
    }
    let zeta = assemble_from_sncd(&model);
    if a.poles || nothing {
        let poles = zeta.normalize().poles();
        let v = poles_json(b, &poles);
        b.result("poles", json!({"value": v, "formula": "s = a/b for each surviving factor 1 - L^a T^b"}));
    }
    if a.candidates {
        let c: Vec<String> = model.candidate_poles().iter().map(ToString::to_string).collect();
        b.result("candidate_poles", json!({"value": c, "formula": "-mu_i/N_i"}));
    }
    if let Some(n) = a.series {
        let s: Vec<String> = zeta.series_expand(n).iter().map(ToString::to_string).collect();
        b.result(
            "series",
            json!({"value": s, "formula": "sum_J (L-1)^{|J|-1} [cover_J] prod_j L^{-mu_j} T^{N_j} / (1 - L^{-mu_j} T^{N_j})"}),
        );
    }
    if a.zeta {
        let z = zeta.normalize();
        b.result("zeta", json!({"value": z.to_string()}));
        if z.numerator().iter().any(|c| c.has_symbols()) {
            b.caveat(SYMBOLIC_CAVEAT);
        }
    }
    if a.monodromy_zeta {
        let mz = model.monodromy_zeta()?;
        let factors: BTreeMap<String, i64> = mz.factors().iter().map(|(n, e)| (n.to_string(), *e)).collect();
        b.result(
            "monodromy_zeta",
            json!({"value": mz.to_string(), "factors": factors, "degree": mz.degree(),
                   "formula": "prod_i (t^{N_i} - 1)^{-chi(E_i^o)}"}),
        );
    }
    if a.h1 {
        let h1 = model.h1_char_poly()?;
        b.result("h1_char_poly", json!({"value": h1.to_string(), "formula": "zeta(t) (t - 1)^2"}));
    }
    if let Some(list) = &a.gmp_with {
        let polys = parse_polys(list)?;
        let report = gmp_check(&zeta, &polys);
        b.check("gmp", report.pass);
        b.result("gmp", serde_json::to_value(&report)?);
    }
    Ok(())
}

fn chi_map(a: &AbelianArgs) -> Result<BTreeMap<ClassSymbol, i64>, CliError> {
    let mut m = BTreeMap::new();
    if a.kodaira.is_some() {
        m.insert(ClassSymbol::new("b")?, 0);
    }
    for item in &a.chi {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| CliError(format!("--chi expects SYMBOL=VALUE, got `{item}`")))?;
        let v: i64 = v.trim().parse().map_err(|_| CliError(format!("--chi {item}: value is not an integer")))?;
        m.insert(ClassSymbol::new(k.trim())?, v);
    }
    Ok(m)
}

fn cmd_abelian(a: &AbelianArgs, src: &DataSource, b: &mut Builder) -> Result<(), CliError> {
    let (nd, kodaira): (NeronData, Option<KodairaType>) = match (&a.kodaira, &a.neron) {
        (Some(tag), _) => {
            let t = KodairaType::parse_tag(tag, a.n)?;
            let nd = t.neron_data(src)?;
            b.input(&nd.to_json().to_string());
            b.result("type", json!(t.to_string()));
            (nd, Some(t))
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError(format!("{}: {e}", path.display())))?;
            b.input(&text);
            (NeronData::parse(&text).map_err(|e| CliError(format!("{}: {e}", path.display())))?, None)
        }
        (None, None) => return Err(CliError("give --type or --neron".into())),
    };
    let zeta = nd.assemble_zeta()?;
    let normalized = zeta.normalize();
    b.result(
        "zeta",
        json!({"value": normalized.to_string(),
               "formula": "sum_d phi_A(d) (L-1)^{t_A(d)} L^{u_A(d)+ord_A(d)} [B_A(d)] T^d"}),
    );
    let poles = normalized.poles();
    let v = poles_json(b, &poles);
    b.result("poles", json!({"value": v}));
    b.result("c", json!(nd.c().to_string()));
    b.result("t_pot", json!(nd.t_pot()));
    if a.verify {
        let r = verify_unique_pole(&nd)?;
        b.check("unique pole at c of order t_pot + 1", r.pass);
        b.result("verify", serde_json::to_value(&r)?);
    }
    if let Some(n) = a.series {
        let s: Vec<String> = zeta.series_expand(n).iter().map(ToString::to_string).collect();
        b.result("series", json!({"value": s}));
    }
    if a.gmp || a.gmp_with.is_some() {
        let polys = match (&a.gmp_with, kodaira) {
            (Some(list), _) => parse_polys(list)?,
            (None, Some(t)) => verify::elliptic_char_polys(t.h1_char_poly(src)?),
            (None, None) => return Err(CliError("--gmp on a Néron file needs --gmp-with".into())),
        };
        let report = gmp_check(&zeta, &polys);
        b.check("gmp", report.pass);
        let rendered: Vec<String> = polys.iter().map(ToString::to_string).collect();
        b.result("gmp", json!({"char_polys": rendered, "report": report}));
    }
    if let Some(n) = a.euler_check {
        let r = euler_trace_check(&nd, n, &chi_map(a)?)?;
        b.check("euler characteristic trace", r.pass);
        b.result("euler_check", serde_json::to_value(&r)?);
    }
    Ok(())
}

fn count_value(n: &BigInt) -> Value {
    match n.to_u64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

/// `k` when `f` is exactly `v^k` for one variable `v`.
fn monomial_degree(f: &IntPoly) -> Option<u32> {
    let text = f.to_string();
    let v = f.vars().first()?;
    if f.n_vars() != 1 {
        return None;
    }
    if text == v.to_string() {
        return Some(1);
    }
    text.strip_prefix(&format!("{v}^"))?.parse().ok()
}

fn cmd_igusa(a: &IgusaArgs, b: &mut Builder) -> Result<(), CliError> {
    let budget = budget_from_env()?;
    let f: IntPoly = a.poly.parse()?;
    b.result("poly", json!(f.to_string()));
    b.result("budget", json!(budget));
    let counts = igusa::poincare_truncated(&f, a.p, a.max_m, budget)?;
    b.result("counts", Value::Array(counts.values.iter().map(count_value).collect()));
    b.result("evaluations", json!(counts.work));
    if a.fit {
        let fit = igusa::fit_rational(&counts.values)?;
        let value = match &fit {
            Some(r) => json!(r.to_string()),
            None => json!("no fit"),
        };
        b.result(
            "fit",
            json!({"value": value,
                   "note": "consistent with the supplied terms only; poles of P are not certified"}),
        );
        b.caveat("rational fit is evidence from finitely many terms");
    }
    if a.check_poinzeta {
        let k = monomial_degree(&f)
            .ok_or_else(|| CliError("--check-poinzeta needs a monomial x^k in one variable".into()))?;
        let r = igusa::check_poinzeta(k, a.p, a.max_m, a.corrupt_zeta, budget)?;
        b.check("P(p^-1 T) = p (1 - Z(T)) / (1 - T)", r.pass);
        b.result("poinzeta", serde_json::to_value(&r)?);
        b.result("zeta", json!(igusa::zeta_monomial(k, a.p)?.to_string()));
    }
    Ok(())
}

fn cmd_verify_all(src: &DataSource, b: &mut Builder) -> Result<(), CliError> {
    let budget = budget_from_env()?;
    let criteria = verify::run_all(src, budget);
    for c in &criteria {
        b.check(format!("criterion {}: {}", c.id, c.name), c.pass);
    }
    b.result("criteria", serde_json::to_value(&criteria)?);
    b.caveat(SYMBOLIC_CAVEAT);
    Ok(())
}

fn render_table(r: &Report) -> String {
    let mut out = String::new();
    out.push_str(&format!("command: mzeta {}\n", r.command.join(" ")));
    for (k, v) in &r.results {
        if k == "criteria" {
            continue;
        }
        let shown = match v.get("value") {
            Some(Value::String(s)) => s.clone(),
            Some(other) => other.to_string(),
            None => match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            },
        };
        out.push_str(&format!("{k}: {shown}\n"));
    }
    for c in &r.checks {
        out.push_str(&format!("[{}] {}\n", if c.pass { "PASS" } else { "FAIL" }, c.name));
    }
    for c in &r.caveats {
        out.push_str(&format!("caveat: {c}\n"));
    }
    out.push_str(&format!("overall: {}\n", if r.pass { "PASS" } else { "FAIL" }));
    out
}

/// Entry point used by the binary.
pub fn main_with(args: impl IntoIterator<Item = OsString>) -> ExitCode {
    let args: Vec<OsString> = args.into_iter().collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let argv: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    match run(&cli, &argv) {
        Ok(report) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            } else {
                print!("{}", render_table(&report));
            }
            if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(CliError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
