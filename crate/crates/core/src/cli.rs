//! Command-line front end: exact values, asymptotic estimates, sign
//! queries, contour verification reports and figure data.
//!
//! Exit codes: 0 success, 2 invalid input, 3 uncertified result,
//! 4 failed consistency check or numerical breakdown.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, Write};
use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rug::{Float, Integer, Rational};
use serde::Serialize;

use crate::asymptotics::{
    gamma_asymptotic, gamma_asymptotic_phase, gamma_asymptotic_refined, sign_gamma, AsymptoticEstimate, PhaseResult,
    Variant,
};
use crate::error::{Error, Result};
use crate::finite_diff::{default_epsilon, gamma_exact_range, StieltjesResult};
use crate::mp::{log10_abs, to_decimal, PrecisionContext};
use crate::norlund_rice::{residue_at_zero, verify_line, verify_rectangle, ContourSpec};
use crate::saddle::{saddle_for_n, Branch};

/// Environment variable holding the default precision ceiling in digits.
pub const MAX_DIGITS_ENV: &str = "STIELTJES_MAX_DIGITS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_UNCERTIFIED: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "stieltjes", version, about = "High-precision Stieltjes constants and their asymptotics")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// γ_n by the finite-difference algorithm, with certified digits.
    Exact(ExactArgs),
    /// Saddle-point estimates of γ_n.
    Asy(AsyArgs),
    /// Sign of γ_n for very large n.
    Sign(SignArgs),
    /// Contour-integral checks of the a_k coefficients.
    Verify(VerifyArgs),
    /// Data behind figures 1, 6, 7 and 8.
    Figure(FigureArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Args)]
pub struct Output {
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Write here instead of standard output.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExactArgs {
    /// n or an inclusive range a..b
    #[arg(long, value_parser = parse_range)]
    pub n: RangeInclusive<usize>,
    #[arg(long, default_value_t = 30)]
    pub digits: u32,
    /// Grid step; may be repeated for an ε-invariance check.
    #[arg(long, value_parser = parse_rational)]
    pub epsilon: Vec<Rational>,
    #[arg(long)]
    pub k_max: Option<usize>,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Full,
    Refined,
    Phase,
}

#[derive(Debug, Args)]
pub struct AsyArgs {
    #[arg(long, value_parser = parse_range)]
    pub n: RangeInclusive<usize>,
    #[arg(long, default_value_t = 30)]
    pub digits: u32,
    #[arg(long, value_enum, default_value = "full")]
    pub variant: VariantArg,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
pub struct SignArgs {
    /// Decimal integer, AeM or 10^M.
    #[arg(long)]
    pub n: String,
    #[arg(long, default_value_t = 30)]
    pub digits: u32,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(subcommand)]
    pub kind: VerifyKind,
}

#[derive(Debug, Subcommand)]
pub enum VerifyKind {
    /// Rectangle contour around 0..k against the alternating sum.
    Nr(VerifyCommon),
    /// Residue of f_k at 0, closed form against quadrature.
    Residue(VerifyCommon),
    /// Vertical-line integral against the alternating sum.
    Line(LineArgs),
}

#[derive(Debug, Args)]
pub struct VerifyCommon {
    #[arg(long)]
    pub k: usize,
    #[arg(long, value_parser = parse_rational, default_value = "1/32")]
    pub epsilon: Rational,
    #[arg(long, default_value_t = 30)]
    pub digits: u32,
    /// Largest accepted relative error; 1e-20, or 1e-10 on the line
    /// where the integrand decays only algebraically.
    #[arg(long)]
    pub tolerance: Option<f64>,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct LineArgs {
    #[command(flatten)]
    pub common: VerifyCommon,
    #[arg(long, default_value_t = 0.5)]
    pub abscissa: f64,
    /// Truncation height T; chosen from the tail estimate when absent.
    #[arg(long)]
    pub height: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    #[value(name = "1")]
    One,
    #[value(name = "6")]
    Six,
    #[value(name = "7")]
    Seven,
    #[value(name = "8")]
    Eight,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    #[arg(value_enum)]
    pub which: Which,
    /// Override the figure's n range (a..b).
    #[arg(long, value_parser = parse_range)]
    pub n: Option<RangeInclusive<usize>>,
    #[arg(long, default_value_t = 30)]
    pub digits: u32,
    #[command(flatten)]
    pub out: Output,
}

fn parse_range(s: &str) -> std::result::Result<RangeInclusive<usize>, String> {
    let bad = || format!("expected n or a..b, got {s:?}");
    match s.split_once("..") {
        Some((a, b)) => {
            let a: usize = a.trim().parse().map_err(|_| bad())?;
            let b: usize = b.trim_start_matches('=').trim().parse().map_err(|_| bad())?;
            if a > b {
                return Err(format!("empty range {s:?}"));
            }
            Ok(a..=b)
        }
        None => {
            let n: usize = s.trim().parse().map_err(|_| bad())?;
            Ok(n..=n)
        }
    }
}

fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    let q: Rational = s.trim().parse().map_err(|_| format!("expected a rational such as 1/32, got {s:?}"))?;
    if q <= 0 {
        return Err(format!("ε must be positive, got {s}"));
    }
    Ok(q)
}

fn context(digits: u32) -> Result<PrecisionContext> {
    let ctx = PrecisionContext::new(digits)?;
    match std::env::var(MAX_DIGITS_ENV) {
        Ok(v) => {
            let max: u32 = v
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("{MAX_DIGITS_ENV}={v:?} is not a digit count")))?;
            Ok(ctx.with_max_digits(max.max(digits)))
        }
        Err(_) => Ok(ctx),
    }
}

/// Exit code for a failed computation.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Precision(_) | Error::Domain(_) | Error::Parse(_) | Error::Pole(_) => EXIT_INVALID,
        Error::Uncertified(_) => EXIT_UNCERTIFIED,
        Error::Consistency(_) | Error::NoConvergence { .. } | Error::Quadrature { .. } | Error::Tail { .. } => {
            EXIT_INTERNAL
        }
    }
}

fn sink(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    match path {
        Some(p) => {
            let f = File::create(p).map_err(|e| Error::Parse(format!("cannot write {}: {e}", p.display())))?;
            Ok(Box::new(io::BufWriter::new(f)))
        }
        None => Ok(Box::new(io::stdout().lock())),
    }
}

fn io_err(e: impl std::fmt::Display) -> Error {
    Error::Consistency(format!("output failed: {e}"))
}

fn write_rows<T: Serialize>(rows: &[T], format: Format, path: &Option<PathBuf>) -> Result<()> {
    let mut w = sink(path)?;
    match format {
        Format::Csv => {
            let mut cw = csv::Writer::from_writer(&mut w);
            for r in rows {
                cw.serialize(r).map_err(io_err)?;
            }
            cw.flush().map_err(io_err)?;
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut w, rows).map_err(io_err)?;
            writeln!(w).map_err(io_err)?;
        }
        Format::Svg => return Err(Error::Parse("SVG output is only available for figures".into())),
    }
    w.flush().map_err(io_err)
}

fn write_json<T: Serialize>(value: &T, path: &Option<PathBuf>) -> Result<()> {
    let mut w = sink(path)?;
    serde_json::to_writer_pretty(&mut w, value).map_err(io_err)?;
    writeln!(w).map_err(io_err)?;
    w.flush().map_err(io_err)
}

fn write_text(text: &str, path: &Option<PathBuf>) -> Result<()> {
    let mut w = sink(path)?;
    w.write_all(text.as_bytes()).map_err(io_err)?;
    w.flush().map_err(io_err)
}

// ---------------------------------------------------------------------------
// exact

#[derive(Debug, Serialize)]
pub struct ExactRow {
    pub n: usize,
    pub epsilon: String,
    pub value: String,
    pub digits_certified: u32,
    pub certified: bool,
    pub k_truncation: usize,
    pub note: String,
}

fn exact_row(r: &StieltjesResult, digits: u32) -> ExactRow {
    let shown = digits.min(r.digits_certified).max(1) as usize;
    ExactRow {
        n: r.n,
        epsilon: r.epsilon.to_string(),
        value: to_decimal(&r.value, shown),
        digits_certified: r.digits_certified,
        certified: r.certified,
        k_truncation: r.k_truncation,
        note: r.note.clone().unwrap_or_default(),
    }
}

pub fn cmd_exact(
    range: RangeInclusive<usize>,
    epsilons: &[Rational],
    digits: u32,
    k_max: Option<usize>,
) -> Result<Vec<StieltjesResult>> {
    let ctx = context(digits)?;
    let default = [default_epsilon()];
    let epsilons = if epsilons.is_empty() { &default[..] } else { epsilons };
    let mut out = Vec::new();
    for eps in epsilons {
        out.extend(gamma_exact_range(range.clone(), eps, k_max, &ctx)?);
    }
    Ok(out)
}

fn run_exact(a: &ExactArgs) -> Result<i32> {
    let rows = cmd_exact(a.n.clone(), &a.epsilon, a.digits, a.k_max)?;
    let table: Vec<ExactRow> = rows.iter().map(|r| exact_row(r, a.digits)).collect();
    write_rows(&table, a.out.format, &a.out.output)?;
    Ok(if rows.iter().all(|r| r.certified) {
        EXIT_OK
    } else {
        EXIT_UNCERTIFIED
    })
}

// ---------------------------------------------------------------------------
// asy

#[derive(Debug, Serialize)]
pub struct AsyRow {
    pub n: String,
    pub variant: Variant,
    pub value: String,
    pub log10_abs: String,
    pub sign: i8,
    pub saddle_re: String,
    pub saddle_im: String,
}

const ESTIMATE_DIGITS: usize = 12;

fn asy_row(e: &AsymptoticEstimate) -> AsyRow {
    AsyRow {
        n: e.n.to_string(),
        variant: e.variant,
        value: to_decimal(&e.value, ESTIMATE_DIGITS),
        log10_abs: format!("{:.9}", e.log10_abs()),
        sign: e.sign(),
        saddle_re: to_decimal(e.saddle.location.re(), ESTIMATE_DIGITS),
        saddle_im: to_decimal(e.saddle.location.im(), ESTIMATE_DIGITS),
    }
}

fn estimate(n: usize, variant: VariantArg, ctx: &PrecisionContext) -> Result<AsymptoticEstimate> {
    let n = Integer::from(n);
    match variant {
        VariantArg::Full => gamma_asymptotic(&n, ctx),
        VariantArg::Refined => gamma_asymptotic_refined(&n, ctx),
        VariantArg::Phase => gamma_asymptotic_phase(&n, ctx),
    }
}

pub fn cmd_asy(range: RangeInclusive<usize>, variant: VariantArg, digits: u32) -> Result<Vec<AsymptoticEstimate>> {
    let ctx = context(digits)?;
    range.map(|n| estimate(n, variant, &ctx)).collect()
}

fn run_asy(a: &AsyArgs) -> Result<i32> {
    let rows = cmd_asy(a.n.clone(), a.variant, a.digits)?;
    let table: Vec<AsyRow> = rows.iter().map(asy_row).collect();
    write_rows(&table, a.out.format, &a.out.output)?;
    Ok(EXIT_OK)
}

// ---------------------------------------------------------------------------
// sign

#[derive(Debug, Serialize)]
pub struct SignReport {
    pub n: String,
    pub sign: i8,
    pub certified: bool,
    pub im_phase_mod_2pi: String,
    pub im_mod_2pi_digits: u32,
    pub working_digits: u32,
    /// log10 of e^{Re φ_n}, the magnitude estimate of |γ_n|.
    pub log10_magnitude: String,
}

fn sign_report(p: &PhaseResult) -> SignReport {
    let log10e = std::f64::consts::LOG10_E;
    let re = Float::with_val(128, p.phase.re()) * log10e;
    SignReport {
        n: p.n_description.clone(),
        sign: p.sign,
        certified: p.certified,
        im_phase_mod_2pi: to_decimal(&p.im_mod_2pi, 20),
        im_mod_2pi_digits: p.im_mod_2pi_digits,
        working_digits: p.digits,
        log10_magnitude: to_decimal(&re, 15),
    }
}

pub fn cmd_sign(n_spec: &str, digits: u32) -> Result<PhaseResult> {
    sign_gamma(n_spec, &context(digits)?)
}

fn run_sign(a: &SignArgs) -> Result<i32> {
    let p = cmd_sign(&a.n, a.digits)?;
    let report = sign_report(&p);
    match a.format {
        Format::Json => write_json(&report, &a.output)?,
        Format::Csv => write_rows(&[report], Format::Csv, &a.output)?,
        Format::Svg => return Err(Error::Parse("SVG output is only available for figures".into())),
    }
    Ok(if p.certified { EXIT_OK } else { EXIT_UNCERTIFIED })
}

// ---------------------------------------------------------------------------
// verify

#[derive(Debug, Serialize)]
pub struct ResidueReport {
    pub k: usize,
    pub epsilon: String,
    pub closed_form: String,
    pub quadrature_re: String,
    pub quadrature_im: String,
    pub radius: String,
    pub nodes: usize,
    pub agreeing_digits: u32,
}

const CLOSED_TOLERANCE: f64 = 1e-20;
const LINE_TOLERANCE: f64 = 1e-10;

fn rel_error_ok(rel: &str, tolerance: f64) -> Result<bool> {
    let v: f64 = rel
        .parse()
        .map_err(|_| Error::Consistency(format!("unreadable relative error {rel}")))?;
    Ok(v < tolerance)
}

pub fn cmd_verify(kind: &VerifyKind) -> Result<(serde_json::Value, bool)> {
    let to_value = |v: &dyn erased::Ser| v.value();
    match kind {
        VerifyKind::Nr(c) => {
            let ctx = context(c.digits)?;
            let r = verify_rectangle(c.k, &c.epsilon, &ctx)?;
            let ok = rel_error_ok(&r.rel_error, c.tolerance.unwrap_or(CLOSED_TOLERANCE))?;
            Ok((to_value(&r), ok))
        }
        VerifyKind::Residue(c) => {
            let ctx = context(c.digits)?;
            let r = residue_at_zero(c.k, &c.epsilon, &ctx)?;
            let digits = c.digits as usize;
            let report = ResidueReport {
                k: r.k,
                epsilon: r.epsilon.to_string(),
                closed_form: to_decimal(&r.closed_form, digits),
                quadrature_re: to_decimal(r.quadrature.re(), digits),
                quadrature_im: to_decimal(r.quadrature.im(), 6),
                radius: to_decimal(&r.radius, 6),
                nodes: r.nodes,
                agreeing_digits: r.agreeing_digits,
            };
            let needed = (-c.tolerance.unwrap_or(CLOSED_TOLERANCE).log10()).floor().max(0.0) as u32;
            Ok((to_value(&report), r.agreeing_digits >= needed))
        }
        VerifyKind::Line(l) => {
            let c = &l.common;
            let tolerance = c.tolerance.unwrap_or(LINE_TOLERANCE);
            let ctx = context(c.digits)?;
            let p = ctx.bits();
            let spec = ContourSpec::vertical_line(Float::with_val(p, l.abscissa), l.height.map(|t| Float::with_val(p, t)))
                .with_tolerance(Float::with_val(p, tolerance));
            let r = verify_line(c.k, &c.epsilon, &spec, &ctx)?;
            // quadrature and tail each get the full tolerance
            let ok = rel_error_ok(&r.rel_error, 2.0 * tolerance)?;
            Ok((to_value(&r), ok))
        }
    }
}

mod erased {
    pub trait Ser {
        fn value(&self) -> serde_json::Value;
    }

    impl<T: serde::Serialize> Ser for T {
        fn value(&self) -> serde_json::Value {
            serde_json::to_value(self).expect("report serializes")
        }
    }
}

fn run_verify(a: &VerifyArgs) -> Result<i32> {
    let (report, ok) = cmd_verify(&a.kind)?;
    let output = match &a.kind {
        VerifyKind::Nr(c) | VerifyKind::Residue(c) => &c.output,
        VerifyKind::Line(l) => &l.common.output,
    };
    write_json(&report, output)?;
    Ok(if ok { EXIT_OK } else { EXIT_INTERNAL })
}

// ---------------------------------------------------------------------------
// figures

#[derive(Debug, Serialize)]
pub struct Fig1Row {
    pub n: usize,
    pub log10_abs: String,
    pub sign: i8,
}

#[derive(Debug, Serialize)]
pub struct Fig6Row {
    pub n: usize,
    pub branch: Branch,
    pub re: String,
    pub im: String,
}

#[derive(Debug, Serialize)]
pub struct Fig7Row {
    pub n: usize,
    pub log10_abs_exact: String,
    pub log10_abs_asymptotic: String,
}

#[derive(Debug, Serialize)]
pub struct Fig8Row {
    pub n: usize,
    pub ratio: String,
}

fn default_range(which: Which) -> RangeInclusive<usize> {
    match which {
        Which::One => 0..=149,
        Which::Six => 1..=250,
        Which::Seven => 1..=200,
        Which::Eight => 3000..=3300,
    }
}

fn sign_of(x: &Float) -> i8 {
    if x.is_sign_negative() {
        -1
    } else {
        1
    }
}

fn log10_str(x: &Float) -> String {
    format!("{:.9}", log10_abs(x))
}

/// Exact values for a figure; the digit target only needs to resolve
/// the plotted quantities.
fn exact_for_figure(range: RangeInclusive<usize>, digits: u32) -> Result<Vec<StieltjesResult>> {
    let ctx = context(digits)?;
    gamma_exact_range(range, &default_epsilon(), None, &ctx)
}

pub fn figure_rows(which: Which, range: RangeInclusive<usize>, digits: u32) -> Result<FigureData> {
    match which {
        Which::One => {
            let rows = exact_for_figure(range, digits)?
                .iter()
                .map(|r| Fig1Row {
                    n: r.n,
                    log10_abs: log10_str(&r.value),
                    sign: sign_of(&r.value),
                })
                .collect();
            Ok(FigureData::One(rows))
        }
        Which::Six => {
            let ctx = context(digits)?;
            let mut rows = Vec::new();
            for n in range {
                for branch in [Branch::Plus, Branch::Minus] {
                    let sp = saddle_for_n(&Integer::from(n), branch, &ctx)?;
                    rows.push(Fig6Row {
                        n,
                        branch,
                        re: to_decimal(sp.location.re(), ESTIMATE_DIGITS),
                        im: to_decimal(sp.location.im(), ESTIMATE_DIGITS),
                    });
                }
            }
            Ok(FigureData::Six(rows))
        }
        Which::Seven | Which::Eight => {
            let ctx = context(digits)?;
            let exact = exact_for_figure(range, digits)?;
            let mut seven = Vec::new();
            let mut eight = Vec::new();
            for r in &exact {
                if r.n == 0 {
                    continue;
                }
                let a = gamma_asymptotic(&Integer::from(r.n), &ctx)?;
                if which == Which::Seven {
                    seven.push(Fig7Row {
                        n: r.n,
                        log10_abs_exact: log10_str(&r.value),
                        log10_abs_asymptotic: log10_str(&a.value),
                    });
                } else {
                    let ratio = Float::with_val(r.value.prec(), &r.value / &a.value);
                    eight.push(Fig8Row {
                        n: r.n,
                        ratio: to_decimal(&ratio, ESTIMATE_DIGITS),
                    });
                }
            }
            Ok(if which == Which::Seven {
                FigureData::Seven(seven)
            } else {
                FigureData::Eight(eight)
            })
        }
    }
}

#[derive(Debug)]
pub enum FigureData {
    One(Vec<Fig1Row>),
    Six(Vec<Fig6Row>),
    Seven(Vec<Fig7Row>),
    Eight(Vec<Fig8Row>),
}

impl FigureData {
    pub fn len(&self) -> usize {
        match self {
            FigureData::One(r) => r.len(),
            FigureData::Six(r) => r.len(),
            FigureData::Seven(r) => r.len(),
            FigureData::Eight(r) => r.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn write(&self, format: Format, path: &Option<PathBuf>) -> Result<()> {
        if format == Format::Svg {
            return write_text(&self.svg(), path);
        }
        match self {
            FigureData::One(r) => write_rows(r, format, path),
            FigureData::Six(r) => write_rows(r, format, path),
            FigureData::Seven(r) => write_rows(r, format, path),
            FigureData::Eight(r) => write_rows(r, format, path),
        }
    }

    fn svg(&self) -> String {
        let num = |s: &str| s.parse::<f64>().unwrap_or(f64::NAN);
        match self {
            FigureData::One(r) => svg::plot(
                "log10 |γ_n|",
                &[
                    svg::Series::dots("#d62728", r.iter().filter(|x| x.sign > 0).map(|x| (x.n as f64, num(&x.log10_abs)))),
                    svg::Series::dots("#1f77b4", r.iter().filter(|x| x.sign < 0).map(|x| (x.n as f64, num(&x.log10_abs)))),
                ],
            ),
            FigureData::Six(r) => svg::plot(
                "saddle points s_n",
                &[svg::Series::dots("#1f77b4", r.iter().map(|x| (num(&x.re), num(&x.im))))],
            ),
            FigureData::Seven(r) => svg::plot(
                "log10 |γ_n|: exact and asymptotic",
                &[
                    svg::Series::dots("#2ca02c", r.iter().map(|x| (x.n as f64, num(&x.log10_abs_exact)))),
                    svg::Series::dots("#d62728", r.iter().map(|x| (x.n as f64, num(&x.log10_abs_asymptotic)))),
                ],
            ),
            FigureData::Eight(r) => svg::plot(
                "exact / asymptotic",
                &[svg::Series::line("#1f77b4", r.iter().map(|x| (x.n as f64, num(&x.ratio))))],
            ),
        }
    }
}

mod svg {
    use std::fmt::Write;

    pub struct Series {
        color: &'static str,
        line: bool,
        points: Vec<(f64, f64)>,
    }

    impl Series {
        pub fn dots(color: &'static str, pts: impl Iterator<Item = (f64, f64)>) -> Self {
            Series {
                color,
                line: false,
                points: pts.filter(|p| p.0.is_finite() && p.1.is_finite()).collect(),
            }
        }

        pub fn line(color: &'static str, pts: impl Iterator<Item = (f64, f64)>) -> Self {
            Series {
                line: true,
                ..Self::dots(color, pts)
            }
        }
    }

    const W: f64 = 640.0;
    const H: f64 = 400.0;
    const M: f64 = 50.0;

    pub fn plot(title: &str, series: &[Series]) -> String {
        let all = series.iter().flat_map(|s| s.points.iter());
        let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
        for &(x, y) in all {
            x0 = x0.min(x);
            x1 = x1.max(x);
            y0 = y0.min(y);
            y1 = y1.max(y);
        }
        if x0 > x1 {
            (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
        }
        if x1 == x0 {
            x1 = x0 + 1.0;
        }
        if y1 == y0 {
            y1 = y0 + 1.0;
        }
        let sx = |x: f64| M + (x - x0) / (x1 - x0) * (W - 2.0 * M);
        let sy = |y: f64| H - M - (y - y0) / (y1 - y0) * (H - 2.0 * M);
        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#
        );
        let _ = writeln!(out, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
        let _ = writeln!(out, r#"<text x="{}" y="24" font-size="14" text-anchor="middle">{title}</text>"#, W / 2.0);
        let _ = writeln!(
            out,
            r#"<path d="M{M} {M} V{} H{}" stroke="black" fill="none"/>"#,
            H - M,
            W - M
        );
        for (v, x, y, anchor) in [
            (x0, sx(x0), H - M + 16.0, "middle"),
            (x1, sx(x1), H - M + 16.0, "middle"),
            (y0, M - 4.0, sy(y0), "end"),
            (y1, M - 4.0, sy(y1), "end"),
        ] {
            let _ = writeln!(
                out,
                r#"<text x="{x:.1}" y="{y:.1}" font-size="10" text-anchor="{anchor}">{v:.4}</text>"#
            );
        }
        for s in series {
            if s.line {
                let mut d = String::new();
                for (i, &(x, y)) in s.points.iter().enumerate() {
                    let _ = write!(d, "{}{:.2} {:.2} ", if i == 0 { "M" } else { "L" }, sx(x), sy(y));
                }
                let _ = writeln!(out, r#"<path d="{}" stroke="{}" fill="none"/>"#, d.trim_end(), s.color);
            } else {
                for &(x, y) in &s.points {
                    let _ = writeln!(out, r#"<circle cx="{:.2}" cy="{:.2}" r="2" fill="{}"/>"#, sx(x), sy(y), s.color);
                }
            }
        }
        out.push_str("</svg>\n");
        out
    }
}

fn run_figure(a: &FigureArgs) -> Result<i32> {
    let range = a.n.clone().unwrap_or_else(|| default_range(a.which));
    let data = figure_rows(a.which, range, a.digits)?;
    data.write(a.out.format, &a.out.output)?;
    Ok(EXIT_OK)
}

fn dispatch(cfg: &RunConfig) -> Result<i32> {
    match &cfg.command {
        Command::Exact(a) => run_exact(a),
        Command::Asy(a) => run_asy(a),
        Command::Sign(a) => run_sign(a),
        Command::Verify(a) => run_verify(a),
        Command::Figure(a) => run_figure(a),
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code. Errors are reported on standard error.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
        }
    };
    match dispatch(&cfg) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
