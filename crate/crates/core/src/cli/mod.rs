//! Command-line front end. Every subcommand prints either an aligned table
//! or JSON; exit code 0 on success, 1 on bad input, 2 when the data is
//! internally inconsistent.

mod input;
mod table;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use input::{parse_inline_poly, parse_json};
use table::Table;

use crate::periodicity::{
    classify_psu, classify_stiefel, exterior_maslov_bound, periodicity_test, torus_maslov_bound, ExteriorBoundVerdict,
    ExteriorStep, FailedCheck, PeriodicityError, PeriodicityReport, PsuCertificate, TorusBoundCertificate, Verdict,
};
use crate::poincare::{poincare_poly, SpaceSpec};
use crate::presentations::{
    degreewise_dims_capped, expected_flag_dims, flag_hf_presentation_signed, sign_consistency, BackgroundSign,
    MacaulayMatrix, Presentation, PresentationError, SignConsistency, DEFAULT_DEGREE_CAP,
};
use crate::quilt::{quilt_wide_chars_for, QuiltError, QuiltScenarioFile, QuiltTable};
use crate::ring_core::{cyclic_reduce, Characteristic, CyclicPoly};
use crate::spin_gysin::{classify_ledger, gysin_never_unit, DiscLedger, GysinError, GysinFamily, GysinTable, NeverUnitCertificate};
use crate::verdict::{default_characteristics, format_signs, CharVerdict, Sign};

/// Environment variable overriding the Macaulay degree cap.
pub const DEGREE_CAP_ENV: &str = "FLOER_DEGREE_CAP";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("inconsistent data: {0}")]
    Inconsistent(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Inconsistent(_) => 2,
        }
    }
}

impl From<PeriodicityError> for CliError {
    fn from(e: PeriodicityError) -> Self {
        match e {
            PeriodicityError::CertificateMismatch(_) => CliError::Inconsistent(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<PresentationError> for CliError {
    fn from(e: PresentationError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<GysinError> for CliError {
    fn from(e: GysinError) -> Self {
        match e {
            GysinError::PathMismatch { .. } | GysinError::DegenerateConstraint(_) => {
                CliError::Inconsistent(e.to_string())
            }
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<QuiltError> for CliError {
    fn from(e: QuiltError) -> Self {
        match e {
            QuiltError::InvalidLedger(_) => CliError::Usage(e.to_string()),
            QuiltError::Gysin(inner) => inner.into(),
            _ => CliError::Inconsistent(e.to_string()),
        }
    }
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    #[value(name = "so3", alias = "so3_p1cubed")]
    So3,
    #[value(name = "lens", alias = "lens_p2p1")]
    Lens,
}

impl From<FamilyArg> for GysinFamily {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::So3 => GysinFamily::So3P1Cubed,
            FamilyArg::Lens => GysinFamily::LensP2P1,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum BackgroundArg {
    /// `b` pairing to `k_j` with the `j`-th line, shifted by `delta`.
    Flag,
    Zero,
}

#[derive(Debug, Parser)]
#[command(name = "floerkit", version, about = "Wide/narrow decision procedures for monotone Lagrangians")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,
    /// Print scope notes and extra diagnostics to stderr.
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Test a Floer–Poincaré polynomial for q-periodicity.
    Periodicity(PeriodicityArgs),
    /// Classify PSU(n) in each characteristic.
    Psu(PsuArgs),
    /// Classify projective Stiefel manifolds.
    Stiefel(StiefelArgs),
    /// Minimal Maslov number bounds for exterior-algebra and torus cohomology.
    MaslovBound(MaslovBoundArgs),
    /// Flag-variety Floer ring: relations, graded dimensions, sign consistency.
    FlagHf(FlagHfArgs),
    /// Gysin-cone classification of a circle-bundle family.
    Gysin(GysinArgs),
    /// Quilt sign transfer and boundary sums.
    Quilt(QuiltArgs),
    /// Poincaré polynomial of a space given as JSON.
    Poincare(PoincareArgs),
}

#[derive(Debug, Args)]
pub struct PeriodicityArgs {
    /// JSON space spec (e.g. '{"variant":"torus","n":2}') or inline polynomial such as "1+S^3+S^-1".
    #[arg(long)]
    pub poincare: String,
    #[arg(long)]
    pub maslov: usize,
    #[arg(long, default_value_t = 2)]
    pub period: usize,
}

#[derive(Debug, Args)]
pub struct PsuArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub n: Vec<u32>,
    #[arg(long, value_delimiter = ',')]
    pub chars: Option<Vec<u64>>,
}

#[derive(Debug, Args)]
pub struct StiefelArgs {
    #[arg(long)]
    pub n: u64,
    /// Plane dimension; every `1 <= k < n` when omitted.
    #[arg(long, value_delimiter = ',')]
    pub k: Option<Vec<u64>>,
    #[arg(long, value_delimiter = ',')]
    pub chars: Option<Vec<u64>>,
}

#[derive(Debug, Args)]
pub struct MaslovBoundArgs {
    /// Odd generator degrees of an exterior algebra.
    #[arg(long, value_delimiter = ',', conflicts_with = "torus", required_unless_present = "torus")]
    pub degrees: Option<Vec<u32>>,
    /// Dimension of a torus; tests N_L in --maslov (default 4,6,8) with period 2.
    #[arg(long)]
    pub torus: Option<u32>,
    #[arg(long, default_value_t = 2)]
    pub period: usize,
    /// Minimal Maslov numbers to test; defaults to every even value up to twice the top degree.
    #[arg(long, value_delimiter = ',')]
    pub maslov: Option<Vec<usize>>,
}

#[derive(Debug, Args)]
pub struct FlagHfArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub parts: Vec<u32>,
    /// Largest degree for --dims; defaults to 4n.
    #[arg(long)]
    pub max_degree: Option<u32>,
    /// Compute graded dimensions and compare with H*(Flag) ⊗ K[T].
    #[arg(long)]
    pub dims: bool,
    /// Check whether the Grassmannian relations restrict consistently.
    #[arg(long)]
    pub sign_check: bool,
    #[arg(long, value_enum, default_value_t = BackgroundArg::Flag)]
    pub background: BackgroundArg,
    /// Shift of the background by delta * sum c_1(E_j).
    #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=1))]
    pub delta: u8,
    /// Characteristics for --dims; defaults to 0,2,3.
    #[arg(long, value_delimiter = ',')]
    pub chars: Option<Vec<u64>>,
    /// Print the Macaulay matrix of this degree (characteristic-free) for audit.
    #[arg(long)]
    pub dump: Option<u32>,
}

#[derive(Debug, Args)]
pub struct GysinArgs {
    #[arg(long, value_enum, required_unless_present = "scenario")]
    pub family: Option<FamilyArg>,
    /// Restrict to one spin choice, e.g. +,+,-.
    #[arg(long)]
    pub spin: Option<String>,
    /// Use the shifted relative spin structure.
    #[arg(long)]
    pub shifted: bool,
    /// Disc ledger JSON replacing the curated one.
    #[arg(long)]
    pub scenario: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct QuiltArgs {
    #[arg(long, value_enum, required_unless_present = "scenario")]
    pub family: Option<FamilyArg>,
    /// Quilt scenario JSON replacing the curated one.
    #[arg(long)]
    pub scenario: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PoincareArgs {
    /// JSON space spec, e.g. '{"variant":"flag","parts":[1,1,1]}'.
    #[arg(long)]
    pub space: String,
}

/// Output of `periodicity`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodicityOutput {
    pub polynomial: String,
    pub folded: CyclicPoly,
    pub report: PeriodicityReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MaslovBoundOutput {
    Exterior { verdicts: Vec<ExteriorBoundVerdict> },
    Torus { certificates: Vec<TorusBoundCertificate> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimsByChar {
    #[serde(rename = "char")]
    pub characteristic: Characteristic,
    pub dims: BTreeMap<u32, usize>,
    pub matches_expected: bool,
}

/// Output of `flag-hf`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagHfOutput {
    pub parts: Vec<u32>,
    pub rhs_sign: Sign,
    pub relations: Vec<String>,
    pub presentation: Presentation,
    pub expected: Option<BTreeMap<u32, usize>>,
    pub dims: Option<Vec<DimsByChar>>,
    pub sign_check: Option<SignConsistency>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GysinOutput {
    pub table: GysinTable,
    pub never_unit: NeverUnitCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoincareOutput {
    pub space: SpaceSpec,
    pub polynomial: String,
    /// Betti numbers from degree 0 to the top degree.
    #[serde(with = "crate::serde_bigint::vec")]
    pub betti: Vec<BigInt>,
    pub palindromic: bool,
}

/// Parse `args` (program name first), run, and return the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let target: &mut dyn Write = if code == 0 { out } else { err };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(&cli, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn emit<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).map_err(usage)?;
    writeln!(out, "{text}").map_err(usage)
}

fn write_text(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes()).map_err(usage)
}

fn characteristics(chars: &Option<Vec<u64>>, default: Vec<Characteristic>) -> Result<Vec<Characteristic>, CliError> {
    match chars {
        None => Ok(default),
        Some(list) => {
            let mut out: Vec<Characteristic> = Vec::new();
            for &c in list {
                let c = Characteristic::new(c).map_err(usage)?;
                if !out.contains(&c) {
                    out.push(c);
                }
            }
            Ok(out)
        }
    }
}

fn degree_cap() -> Result<u32, CliError> {
    match std::env::var(DEGREE_CAP_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{DEGREE_CAP_ENV}={v} is not a non-negative integer"))),
        Err(_) => Ok(DEFAULT_DEGREE_CAP),
    }
}

fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let json = cli.format == Format::Json;
    let verbose = cli.verbose > 0;
    match &cli.command {
        Command::Periodicity(a) => cmd_periodicity(a, json, out),
        Command::Psu(a) => cmd_psu(a, json, verbose, out, err),
        Command::Stiefel(a) => cmd_stiefel(a, json, verbose, out, err),
        Command::MaslovBound(a) => cmd_maslov_bound(a, json, out),
        Command::FlagHf(a) => cmd_flag_hf(a, json, out),
        Command::Gysin(a) => cmd_gysin(a, json, verbose, out, err),
        Command::Quilt(a) => cmd_quilt(a, json, verbose, out, err),
        Command::Poincare(a) => cmd_poincare(a, json, out),
    }
}

fn cmd_periodicity(a: &PeriodicityArgs, json: bool, out: &mut dyn Write) -> Result<(), CliError> {
    let poly = if a.poincare.trim_start().starts_with('{') {
        let space: SpaceSpec = parse_json("--poincare", &a.poincare)?;
        poincare_poly(&space).map_err(usage)?
    } else {
        parse_inline_poly(&a.poincare)?
    };
    let folded = cyclic_reduce(&poly, a.maslov).map_err(usage)?;
    let report = periodicity_test(&folded, a.period)?;
    let output = PeriodicityOutput { polynomial: poly.to_string(), folded, report };
    if json {
        return emit(out, &output);
    }
    let r = &output.report;
    let mut t = Table::new(&["check", "value"]);
    t.row(vec!["P_F".into(), output.polynomial.clone()]);
    t.row(vec!["folded".into(), output.folded.to_string()]);
    t.row(vec!["q' = gcd(q, N)".into(), r.reduced_period.to_string()]);
    t.row(vec!["divisible".into(), r.divisible.to_string()]);
    if let Some(q) = &r.quotient {
        t.row(vec!["quotient".into(), q.representative().to_string()]);
    }
    t.row(vec![
        "total dimension".into(),
        format!("{} (N/q' = {} divides: {})", r.total_dimension, r.modulus / r.reduced_period, r.total_dimension_divisible),
    ]);
    t.row(vec!["nonvanishing at d".into(), format!("{:?}", r.nonvanishing_conductors)]);
    write_text(out, &t.render())
}

fn psu_certificate_text(c: &PsuCertificate) -> String {
    match c {
        PsuCertificate::Generation { maslov, generator_degree, .. } => {
            format!("generated in degree {generator_degree} <= N_L - 2 = {}", maslov - 2)
        }
        PsuCertificate::Periodicity { failed, .. } => failed_text(failed),
    }
}

fn failed_text(failed: &[FailedCheck]) -> String {
    failed
        .iter()
        .map(|f| match f {
            FailedCheck::TotalDimension { total, divisor } => format!("P_F(1) = {total} not divisible by {divisor}"),
            FailedCheck::RootVanishing { conductors } => format!("P_F(zeta_d) != 0 for d in {conductors:?}"),
        })
        .collect::<Vec<_>>()
        .join("; ")
}

fn cmd_psu(a: &PsuArgs, json: bool, verbose: bool, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let chars = characteristics(&a.chars, default_characteristics())?;
    let mut verdicts = Vec::new();
    for &n in &a.n {
        for &c in &chars {
            verdicts.push(Verdict::Psu(classify_psu(n, c)?));
        }
    }
    if verbose {
        let _ = writeln!(err, "scope: {}", crate::periodicity::PSU_SCOPE);
    }
    if json {
        return emit(out, &verdicts);
    }
    let mut t = Table::new(&["n", "char", "status", "certificate"]);
    for v in &verdicts {
        if let Verdict::Psu(v) = v {
            t.row(vec![
                v.n.to_string(),
                v.characteristic.to_string(),
                v.status.to_string(),
                psu_certificate_text(&v.certificate),
            ]);
        }
    }
    write_text(out, &t.render())
}

fn cmd_stiefel(a: &StiefelArgs, json: bool, verbose: bool, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let chars = characteristics(&a.chars, default_characteristics())?;
    let ks = a.k.clone().unwrap_or_else(|| (1..a.n).collect());
    let mut verdicts = Vec::new();
    for &k in &ks {
        for &c in &chars {
            verdicts.push(Verdict::Stiefel(classify_stiefel(a.n, k, c)?));
        }
    }
    if verbose {
        let _ = writeln!(err, "scope: {}", crate::periodicity::STIEFEL_SCOPE);
    }
    if json {
        return emit(out, &verdicts);
    }
    let mut t = Table::new(&["n", "k", "char", "p^r", "status", "generation", "witness"]);
    for v in &verdicts {
        if let Verdict::Stiefel(v) = v {
            let g = &v.certificate.generation;
            let witness = match &v.certificate.witness {
                Some(w) => match w.residue {
                    Some(r) => format!("C({}, {}) = {} = {r} mod {}", v.n, w.index, w.binomial, v.characteristic),
                    None => format!("C({}, {}) = {}", v.n, w.index, w.binomial),
                },
                None => "-".into(),
            };
            t.row(vec![
                v.n.to_string(),
                v.k.to_string(),
                v.characteristic.to_string(),
                v.prime_power.to_string(),
                v.status.to_string(),
                format!("N = {}, generators up to degree {}", g.first_nonzero_index, g.generator_degree),
                witness,
            ]);
        }
    }
    write_text(out, &t.render())
}

fn step_text(step: &ExteriorStep) -> String {
    match step {
        ExteriorStep::WithinBound => "within bound".into(),
        ExteriorStep::RootObstruction { conductor } => format!("P_F(zeta_{conductor}) != 0"),
        ExteriorStep::DimensionObstruction { quotient, total_dimension } => {
            format!("N_L/q' = {quotient} does not divide {total_dimension}")
        }
        ExteriorStep::ParityObstruction { reduced_period } => format!("q' = {reduced_period} even forces q' = N_L"),
    }
}

fn cmd_maslov_bound(a: &MaslovBoundArgs, json: bool, out: &mut dyn Write) -> Result<(), CliError> {
    let output = if let Some(n) = a.torus {
        let maslovs = a.maslov.clone().unwrap_or_else(|| vec![4, 6, 8]);
        let certificates = maslovs
            .iter()
            .map(|&m| torus_maslov_bound(n, m))
            .collect::<Result<Vec<_>, _>>()?;
        MaslovBoundOutput::Torus { certificates }
    } else {
        let degrees = a.degrees.clone().unwrap_or_default();
        let top = degrees.iter().copied().max().unwrap_or(1) as usize;
        let maslovs = a.maslov.clone().unwrap_or_else(|| (1..=top + 1).map(|i| 2 * i).collect());
        let verdicts = maslovs
            .iter()
            .map(|&m| exterior_maslov_bound(&degrees, a.period, m))
            .collect::<Result<Vec<_>, _>>()?;
        MaslovBoundOutput::Exterior { verdicts }
    };
    if json {
        return emit(out, &output);
    }
    let text = match &output {
        MaslovBoundOutput::Torus { certificates } => {
            let mut t = Table::new(&["n", "N_L", "feasible", "witness"]);
            for c in certificates {
                t.row(vec![
                    c.n.to_string(),
                    c.maslov.to_string(),
                    "false".into(),
                    format!("(1+S)^n mod Phi_{} = {:?}", c.maslov, c.witness_residue),
                ]);
            }
            t.render()
        }
        MaslovBoundOutput::Exterior { verdicts } => {
            let mut t = Table::new(&["degrees", "q", "N_L", "bound", "feasible", "step"]);
            for v in verdicts {
                t.row(vec![
                    format!("{:?}", v.degrees),
                    v.period.to_string(),
                    v.maslov.to_string(),
                    v.bound.to_string(),
                    v.feasible.to_string(),
                    step_text(&v.step),
                ]);
            }
            t.render()
        }
    };
    write_text(out, &text)
}

fn cmd_flag_hf(a: &FlagHfArgs, json: bool, out: &mut dyn Write) -> Result<(), CliError> {
    let background = match a.background {
        BackgroundArg::Flag => BackgroundSign::flag_class(&a.parts, a.delta),
        BackgroundArg::Zero => BackgroundSign::zero(),
    };
    let sign_check = a.sign_check.then(|| sign_consistency(&a.parts, &background));
    let rhs_sign = match &sign_check {
        Some(c) => c.rhs_sign.unwrap_or(Sign::Plus),
        None => Sign::from_parity(a.delta == 1),
    };
    let pres = flag_hf_presentation_signed(&a.parts, rhs_sign)?;
    let n: u32 = a.parts.iter().sum();
    let max_degree = a.max_degree.unwrap_or(4 * n);

    let (expected, dims) = if a.dims {
        let cap = degree_cap()?;
        let expected = expected_flag_dims(&a.parts, max_degree)?;
        let chars = characteristics(&a.chars, [0, 2, 3].map(|c| Characteristic::new(c).expect("prime")).to_vec())?;
        let mut rows = Vec::new();
        for c in chars {
            let dims = degreewise_dims_capped(&pres, c, max_degree, cap)?;
            rows.push(DimsByChar { characteristic: c, matches_expected: dims == expected, dims });
        }
        (Some(expected), Some(rows))
    } else {
        (None, None)
    };
    let output = FlagHfOutput {
        parts: a.parts.clone(),
        rhs_sign,
        relations: pres.rendered_relations(),
        presentation: pres.clone(),
        expected,
        dims,
        sign_check,
    };

    if json {
        emit(out, &output)?;
    } else {
        let mut text = format!("generators: {}\n", pres.variable_names().join(", "));
        text += &format!("deg T = {}\n", pres.novikov_degree());
        for r in &output.relations {
            text += &format!("  {r}\n");
        }
        if let (Some(expected), Some(rows)) = (&output.expected, &output.dims) {
            let mut headers = vec!["degree".to_string(), "expected".to_string()];
            headers.extend(rows.iter().map(|r| format!("char {}", r.characteristic)));
            let header_refs: Vec<&str> = headers.iter().map(String::as_str).collect();
            let mut t = Table::new(&header_refs);
            for (m, e) in expected {
                let mut cells = vec![m.to_string(), e.to_string()];
                cells.extend(rows.iter().map(|r| r.dims[m].to_string()));
                t.row(cells);
            }
            text += &t.render();
        }
        if let Some(c) = &output.sign_check {
            text += &format!(
                "factor signs: {}; consistent: {}{}\n",
                format_signs(&c.factor_signs),
                c.consistent,
                if c.consistent { String::new() } else { " (only in characteristic 2)".into() }
            );
        }
        write_text(out, &text)?;
    }
    if let Some(m) = a.dump {
        write_text(out, &MacaulayMatrix::assemble(&pres, m).to_text(&pres))?;
    }
    if let Some(bad) = output.dims.iter().flatten().find(|r| !r.matches_expected) {
        return Err(CliError::Inconsistent(format!(
            "graded dimensions in characteristic {} differ from H*(Flag) ⊗ K[T]",
            bad.characteristic
        )));
    }
    Ok(())
}

fn verdict_text(v: &CharVerdict) -> String {
    let wide: Vec<String> = v.wide_characteristics().iter().map(|c| c.to_string()).collect();
    if wide.is_empty() {
        "narrow in every listed char".into()
    } else {
        format!("wide iff char in {{{}}}", wide.join(", "))
    }
}

fn cmd_gysin(a: &GysinArgs, json: bool, verbose: bool, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let ledger: DiscLedger = match &a.scenario {
        Some(path) => {
            let ledger: DiscLedger = input::load_json(path)?;
            if let Some(f) = a.family {
                if GysinFamily::from(f) != ledger.family {
                    return Err(CliError::Usage(format!("scenario is for {}", ledger.family.name())));
                }
            }
            ledger
        }
        None => GysinFamily::from(a.family.expect("clap requires family or scenario")).ledger(),
    };
    let mut table = classify_ledger(&ledger, a.shifted)?;
    if let Some(spin) = &a.spin {
        let spin = input::parse_signs(spin)?;
        if spin.len() != ledger.spin_basis.len() {
            return Err(CliError::Usage(format!("--spin needs {} signs", ledger.spin_basis.len())));
        }
        table.rows.retain(|r| r.spin == spin);
    }
    let s = if table.rows.iter().all(|r| r.s == Sign::Minus) { Sign::Minus } else { Sign::Plus };
    let never_unit = gysin_never_unit(ledger.euler, s)?;
    if verbose {
        let _ = writeln!(err, "note: {}", table.note);
    }
    let output = GysinOutput { table, never_unit };
    if json {
        return emit(out, &output);
    }
    let mut t = Table::new(&["spin", "m", "nu", "s", "det", "verdict"]);
    for r in &output.table.rows {
        t.row(vec![
            format_signs(&r.spin),
            r.m.to_string(),
            r.nu.to_string(),
            r.s.to_string(),
            r.det.to_string(),
            verdict_text(&r.verdict),
        ]);
    }
    let mut text = format!("family {} (e = {}{})\n", output.table.family.name(), output.table.euler, if a.shifted { ", shifted" } else { "" });
    text += &t.render();
    write_text(out, &text)
}

fn cmd_quilt(a: &QuiltArgs, json: bool, verbose: bool, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let file: QuiltScenarioFile = match &a.scenario {
        Some(path) => {
            let file: QuiltScenarioFile = input::load_json(path)?;
            if let Some(f) = a.family {
                if GysinFamily::from(f) != file.ledger.family {
                    return Err(CliError::Usage(format!("scenario is for {}", file.ledger.family.name())));
                }
            }
            file
        }
        None => QuiltScenarioFile::curated(a.family.expect("clap requires family or scenario").into()),
    };
    let table: QuiltTable = quilt_wide_chars_for(&file)?;
    if verbose {
        let _ = writeln!(err, "note: {}", crate::spin_gysin::GYSIN_NOTE);
    }
    if json {
        return emit(out, &table);
    }
    let mut t = Table::new(&["scenario", "spin", "shifted", "w", "delta", "boundary", "wide chars"]);
    for r in &table.rows {
        t.row(vec![
            r.scenario.clone(),
            format_signs(&r.spin),
            r.shifted.to_string(),
            r.target_w.to_string(),
            format!("({}, {})", r.delta.0, r.delta.1),
            format!("{} dD1 + {} dD2", r.boundary.0, r.boundary.1),
            format!("{:?}", r.wide_chars),
        ]);
    }
    write_text(out, &t.render())
}

fn cmd_poincare(a: &PoincareArgs, json: bool, out: &mut dyn Write) -> Result<(), CliError> {
    let space: SpaceSpec = parse_json("--space", &a.space)?;
    let poly = poincare_poly(&space).map_err(usage)?;
    let top = poly.degree().unwrap_or(0);
    let betti: Vec<BigInt> = (0..=top).map(|i| poly.coeff(i)).collect();
    let palindromic = betti.iter().eq(betti.iter().rev());
    let output = PoincareOutput { space, polynomial: poly.to_string(), betti, palindromic };
    if json {
        return emit(out, &output);
    }
    let mut t = Table::new(&["degree", "betti"]);
    for (i, b) in output.betti.iter().enumerate() {
        t.row(vec![i.to_string(), b.to_string()]);
    }
    write_text(out, &format!("P(S) = {}\n{}", output.polynomial, t.render()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verdict::Status;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("floerkit").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(call(&["psu"]).0, 1);
        assert_eq!(call(&["psu", "--n", "4", "--chars", "4"]).0, 1);
        assert_eq!(call(&["bogus"]).0, 1);
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn psu_json_round_trips() {
        let (code, out, _) = call(&["--format", "json", "psu", "--n", "6", "--chars", "0,2,3"]);
        assert_eq!(code, 0);
        let verdicts: Vec<Verdict> = serde_json::from_str(&out).unwrap();
        assert!(verdicts.iter().all(|v| v.status() == Status::Narrow));
        assert_eq!(serde_json::to_string_pretty(&verdicts).unwrap() + "\n", out);
    }

    #[test]
    fn malformed_space_reports_field() {
        let (code, _, err) = call(&["poincare", "--space", r#"{"variant":"torus","n":"x"}"#]);
        assert_eq!(code, 1);
        assert!(err.contains("expected u32"), "{err}");
        let (code, _, err) = call(&["poincare", "--space", r#"{"variant":"torus","n":2"#]);
        assert_eq!(code, 1);
        assert!(err.contains("line 1"), "{err}");
    }
}
