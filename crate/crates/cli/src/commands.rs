//! Subcommand arguments and their implementations.

use clap::{Args, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::json;

use plustrace::geodesics::{
    asymptotic_scan_each, odd_fundamental_discriminants, scan_csv_header, trace, DSelector, QuadratureScheme,
    QuadratureSpec, TraceMethod, TraceReport, TraceSettings, DEFAULT_CUTOFF,
};
use plustrace::kloosterman::{
    KloostermanMethod, PartialSumStream, StreamConfig, SumFamily, WeightMode, DEFAULT_STREAM_CAP,
};
use plustrace::modforms::{cm_trace_deviation, cm_trace_with, resolve_cache_dir, auto_precision, JCache};
use plustrace::ntheory::is_fundamental;
use plustrace::precision::PrecisionMode;
use plustrace::quadforms::{class_number_imaginary, cycles_csv, zagier_cycles, GenusCharacterSpec};
use plustrace::report::fmt_g;
use plustrace::spectral::phi_plus_report;
use plustrace::{Execution, Weight};

use crate::output::{CliError, Sink};
use crate::suites::{run_suite, Suite};
use crate::{Emit, GlobalOpts};

type CmdResult = Result<(), CliError>;

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}

#[derive(ValueEnum, Debug, Clone, Copy)]
pub enum WeightModeArg {
    InvC,
    InvSqrtC,
}

impl From<WeightModeArg> for WeightMode {
    fn from(w: WeightModeArg) -> Self {
        match w {
            WeightModeArg::InvC => WeightMode::InvC,
            WeightModeArg::InvSqrtC => WeightMode::InvSqrtC,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy)]
pub enum MethodArg {
    Naive,
    Factored,
}

impl From<MethodArg> for KloostermanMethod {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Naive => KloostermanMethod::Naive,
            MethodArg::Factored => KloostermanMethod::Factored,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceMethodArg {
    Direct,
    Series,
    SurfaceDirect,
    SurfaceSeries,
}

impl From<TraceMethodArg> for TraceMethod {
    fn from(m: TraceMethodArg) -> Self {
        match m {
            TraceMethodArg::Direct => TraceMethod::Direct,
            TraceMethodArg::Series => TraceMethod::Series,
            TraceMethodArg::SurfaceDirect => TraceMethod::SurfaceDirect,
            TraceMethodArg::SurfaceSeries => TraceMethod::SurfaceSeries,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrecisionArg {
    Auto,
    Double,
    Extended,
}

#[derive(Args, Debug, Clone)]
pub struct PrecisionOpts {
    /// Floating-point precision.
    #[arg(long, value_enum, default_value_t = PrecisionArg::Auto)]
    pub precision: PrecisionArg,
    /// Mantissa bits for extended precision (default: chosen from the problem size).
    #[arg(long)]
    pub bits: Option<usize>,
}

fn value_name<T: ValueEnum>(v: T) -> String {
    v.to_possible_value().map(|p| p.get_name().to_string()).unwrap_or_default()
}

fn exec_mode() -> Execution {
    Execution::Parallel
}

fn stream_config(cap: f64, method: MethodArg) -> StreamConfig {
    StreamConfig { cap, ..StreamConfig::default() }.with_method(method.into()).with_exec(exec_mode())
}

fn parse_weight(k: &str) -> Result<Weight, CliError> {
    Weight::parse(k).map_err(CliError::from)
}

fn cutoff_arg(x: f64) -> Result<f64, CliError> {
    if !(x.is_finite() && x >= 0.0) {
        return Err(invalid(format!("cutoff must be a finite nonnegative number, got {x}")));
    }
    Ok(x)
}

fn emit_stream(
    out: &mut Sink,
    emit: Emit,
    stream: PartialSumStream,
) -> CmdResult {
    match emit {
        Emit::Csv => {
            out.line("c,term,cumulative")?;
            for (i, r) in stream.enumerate() {
                let r = r?;
                out.line(&format!("{},{},{}", r.x, fmt_g(r.term), fmt_g(r.value)))?;
                if i % 1024 == 1023 {
                    out.flush()?;
                }
            }
        }
        Emit::Json => {
            let rows = stream
                .map(|r| r.map(|r| json!({"c": r.x, "term": r.term, "cumulative": r.value})))
                .collect::<Result<Vec<_>, _>>()?;
            out.json(&rows)?;
        }
    }
    Ok(())
}

#[derive(Args, Debug)]
pub struct KloostermanArgs {
    /// Weight k: 0.5 or -0.5 (also 1/2, -1/2).
    #[arg(long, allow_hyphen_values = true, default_value = "0.5")]
    pub k: String,
    #[arg(long, allow_hyphen_values = true)]
    pub m: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub n: i64,
    /// Largest modulus c; all c ≡ 0 (mod 4) up to this value are summed.
    #[arg(long)]
    pub cmax: f64,
    /// Weight w(c) applied in the cumulative sum.
    #[arg(long, value_enum, default_value_t = WeightModeArg::InvC)]
    pub weight_mode: WeightModeArg,
    /// Evaluator for the individual sums.
    #[arg(long, value_enum, default_value_t = MethodArg::Naive)]
    pub method: MethodArg,
    /// Refuse cutoffs above this value.
    #[arg(long, default_value_t = DEFAULT_STREAM_CAP)]
    pub cap: f64,
}

pub fn kloosterman(a: &KloostermanArgs, out: &mut Sink) -> CmdResult {
    let weight = parse_weight(&a.k)?;
    let x = cutoff_arg(a.cmax)?;
    let fam = SumFamily::Kloosterman { weight, m: a.m, n: a.n };
    let stream = PartialSumStream::new(fam, x, a.weight_mode.into(), stream_config(a.cap, a.method))?;
    out.provenance(
        "kloosterman",
        &[
            ("k", fmt_g(weight.k())),
            ("m", a.m.to_string()),
            ("n", a.n.to_string()),
            ("cmax", fmt_g(x)),
            ("weight_mode", value_name(a.weight_mode)),
            ("method", value_name(a.method)),
        ],
    )?;
    let emit = out.emit_or(Emit::Csv);
    emit_stream(out, emit, stream)
}

#[derive(Args, Debug)]
pub struct WeylArgs {
    /// Positive discriminant D = d·d′.
    #[arg(long = "D")]
    pub disc: i64,
    /// Fundamental discriminant d dividing D.
    #[arg(long, allow_hyphen_values = true, default_value_t = 1)]
    pub d: i64,
    #[arg(long, default_value_t = 1)]
    pub m: i64,
    #[arg(long)]
    pub cmax: f64,
    #[arg(long, value_enum, default_value_t = WeightModeArg::InvSqrtC)]
    pub weight_mode: WeightModeArg,
    #[arg(long, default_value_t = DEFAULT_STREAM_CAP)]
    pub cap: f64,
}

pub fn weyl(a: &WeylArgs, out: &mut Sink) -> CmdResult {
    let spec = GenusCharacterSpec::new(a.disc, a.d)?;
    let x = cutoff_arg(a.cmax)?;
    let fam = SumFamily::Weyl { m: a.m, spec };
    let stream = PartialSumStream::new(fam, x, a.weight_mode.into(), stream_config(a.cap, MethodArg::Naive))?;
    out.provenance(
        "weyl",
        &[
            ("D", a.disc.to_string()),
            ("d", a.d.to_string()),
            ("m", a.m.to_string()),
            ("cmax", fmt_g(x)),
            ("weight_mode", value_name(a.weight_mode)),
        ],
    )?;
    let emit = out.emit_or(Emit::Csv);
    emit_stream(out, emit, stream)
}

#[derive(Args, Debug)]
pub struct TraceArgs {
    #[arg(long = "D")]
    pub disc: i64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 1)]
    pub d: i64,
    #[arg(long, default_value_t = 1)]
    pub m: u32,
    #[arg(long, value_enum, default_value_t = TraceMethodArg::Direct)]
    pub method: TraceMethodArg,
    #[command(flatten)]
    pub common: TraceCommon,
}

#[derive(Args, Debug, Clone)]
pub struct TraceCommon {
    /// Series cutoff X.
    #[arg(long, default_value_t = DEFAULT_CUTOFF)]
    pub cutoff: f64,
    /// Absolute quadrature tolerance (direct methods).
    #[arg(long)]
    pub tol: Option<f64>,
    /// Quadrature node budget (direct methods).
    #[arg(long)]
    pub max_nodes: Option<usize>,
    /// Report the raw partial sum without the smoothed tail correction.
    #[arg(long)]
    pub no_tail_correction: bool,
    /// Gauss order per dimension for the direct surface integral.
    #[arg(long, default_value_t = 48)]
    pub surface_order: usize,
    #[command(flatten)]
    pub precision: PrecisionOpts,
}

impl TraceCommon {
    fn settings(&self, disc: i64, m: u32, method: TraceMethod) -> Result<TraceSettings, CliError> {
        let cutoff = cutoff_arg(self.cutoff)?;
        let auto = QuadratureSpec::auto(disc.max(1), m);
        let surface = matches!(method, TraceMethod::SurfaceDirect | TraceMethod::SurfaceSeries);
        let mut q = match self.precision.precision {
            // Surface quadrature has no extended path.
            PrecisionArg::Auto if surface => QuadratureSpec::default(),
            PrecisionArg::Auto => auto,
            PrecisionArg::Double => QuadratureSpec::default(),
            PrecisionArg::Extended => {
                let bits = match auto.precision_mode {
                    PrecisionMode::Extended { bits } => bits,
                    PrecisionMode::Double => 128,
                };
                QuadratureSpec {
                    scheme: QuadratureScheme::CompositeGauss,
                    precision_mode: PrecisionMode::Extended { bits },
                    ..auto
                }
            }
        };
        if let Some(b) = self.precision.bits {
            if q.precision_mode == PrecisionMode::Double {
                return Err(invalid("--bits needs extended precision"));
            }
            q.precision_mode = PrecisionMode::Extended { bits: b };
        }
        if let Some(t) = self.tol {
            q.abs_tol = t;
        }
        if let Some(n) = self.max_nodes {
            q.max_nodes = n;
        }
        q.validate()?;
        Ok(TraceSettings {
            quadrature: Some(q),
            cutoff,
            tail_correction: !self.no_tail_correction,
            surface_order: self.surface_order,
            exec: exec_mode(),
        })
    }

    fn provenance(&self, s: &TraceSettings) -> Vec<(&'static str, String)> {
        let q = s.quadrature.expect("settings carry a quadrature spec");
        let prec = match q.precision_mode {
            PrecisionMode::Double => "double".to_string(),
            PrecisionMode::Extended { bits } => format!("extended({bits} bits)"),
        };
        vec![
            ("cutoff", fmt_g(s.cutoff)),
            ("tail_correction", s.tail_correction.to_string()),
            ("quadrature", match q.scheme {
                QuadratureScheme::AdaptiveGauss => "adaptive_gauss".to_string(),
                QuadratureScheme::CompositeGauss => "composite_gauss".to_string(),
            }),
            ("abs_tol", fmt_g(q.abs_tol)),
            ("max_nodes", q.max_nodes.to_string()),
            ("precision", prec),
            ("surface_order", s.surface_order.to_string()),
        ]
    }
}

const TRACE_HEADER: &str = "D,d,m,method,value,main_term,residual,normalized_value,cutoff_or_tol,error_estimate,in_hypotheses";

fn trace_csv(r: &TraceReport) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{},{}",
        r.disc,
        r.d,
        r.m,
        r.method.as_str(),
        fmt_g(r.value),
        fmt_g(r.main_term),
        fmt_g(r.residual),
        fmt_g(r.normalized_value),
        fmt_g(r.cutoff_or_tol),
        fmt_g(r.error_estimate),
        r.in_hypotheses
    )
}

fn emit_trace(cmd: &str, disc: i64, d: i64, m: u32, method: TraceMethod, common: &TraceCommon, out: &mut Sink) -> CmdResult {
    let settings = common.settings(disc, m, method)?;
    let report = trace(disc, d, m, method, &settings)?;
    let mut params = vec![
        ("D", disc.to_string()),
        ("d", d.to_string()),
        ("m", m.to_string()),
        ("method", method.as_str().to_string()),
    ];
    params.extend(common.provenance(&settings));
    out.provenance(cmd, &params)?;
    match out.emit_or(Emit::Json) {
        Emit::Json => out.json(&report),
        Emit::Csv => {
            out.line(TRACE_HEADER)?;
            out.line(&trace_csv(&report))
        }
    }
}

pub fn trace_cmd(a: &TraceArgs, out: &mut Sink) -> CmdResult {
    emit_trace("trace", a.disc, a.d, a.m, a.method.into(), &a.common, out)
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurfaceMethodArg {
    Direct,
    Series,
}

#[derive(Args, Debug)]
pub struct SurfaceArgs {
    #[arg(long = "D")]
    pub disc: i64,
    /// Negative fundamental discriminant d dividing D.
    #[arg(long, allow_hyphen_values = true)]
    pub d: i64,
    #[arg(long, default_value_t = 1)]
    pub m: u32,
    #[arg(long, value_enum, default_value_t = SurfaceMethodArg::Direct)]
    pub method: SurfaceMethodArg,
    #[command(flatten)]
    pub common: TraceCommon,
}

pub fn surface(a: &SurfaceArgs, out: &mut Sink) -> CmdResult {
    let method = match a.method {
        SurfaceMethodArg::Direct => TraceMethod::SurfaceDirect,
        SurfaceMethodArg::Series => TraceMethod::SurfaceSeries,
    };
    emit_trace("surface", a.disc, a.d, a.m, method, &a.common, out)
}

#[derive(Args, Debug)]
pub struct CmArgs {
    /// Negative discriminant, or the upper end of a range with --dmin.
    #[arg(long, allow_hyphen_values = true)]
    pub d: i64,
    /// Lower end of a range of discriminants [dmin, d].
    #[arg(long, allow_hyphen_values = true)]
    pub dmin: Option<i64>,
    /// Keep only fundamental discriminants in a range.
    #[arg(long)]
    pub fundamental: bool,
    #[arg(long, default_value_t = 1)]
    pub m: u32,
    #[command(flatten)]
    pub precision: PrecisionOpts,
}

#[derive(Serialize)]
struct CmRow {
    d: i64,
    m: u32,
    class_number: usize,
    trace: f64,
    deviation: Option<f64>,
    deviation_over_h: Option<f64>,
}

pub fn cm(a: &CmArgs, out: &mut Sink) -> CmdResult {
    if a.m == 0 {
        return Err(invalid("m must be positive"));
    }
    let discs: Vec<i64> = match a.dmin {
        None => vec![a.d],
        Some(lo) => {
            if lo > a.d {
                return Err(invalid(format!("empty range [{lo}, {}]", a.d)));
            }
            (lo..=a.d.min(-1))
                .filter(|&d| plustrace::ntheory::is_discriminant(d) && (!a.fundamental || is_fundamental(d)))
                .collect()
        }
    };
    let mode = |d: i64| -> Result<PrecisionMode, CliError> {
        let auto = auto_precision(d, a.m);
        Ok(match (a.precision.precision, a.precision.bits) {
            (PrecisionArg::Double, None) => PrecisionMode::Double,
            (PrecisionArg::Double, Some(_)) => return Err(invalid("--bits needs extended precision")),
            (_, Some(bits)) if bits >= 64 => PrecisionMode::Extended { bits },
            (_, Some(bits)) => return Err(invalid(format!("extended precision needs ≥ 64 bits, got {bits}"))),
            (PrecisionArg::Auto, None) => auto,
            (PrecisionArg::Extended, None) => match auto {
                PrecisionMode::Double => PrecisionMode::Extended { bits: 128 },
                e => e,
            },
        })
    };
    out.provenance(
        "cm",
        &[
            ("d", a.d.to_string()),
            ("dmin", a.dmin.map(|v| v.to_string()).unwrap_or_else(|| "-".into())),
            ("m", a.m.to_string()),
            ("precision", value_name(a.precision.precision)),
        ],
    )?;
    let rows = discs
        .iter()
        .map(|&d| {
            let h = class_number_imaginary(d)?;
            let t = cm_trace_with(d, a.m, mode(d)?)?;
            let dev = if a.m == 1 { Some(cm_trace_deviation(d)?) } else { None };
            Ok(CmRow { d, m: a.m, class_number: h, trace: t, deviation: dev, deviation_over_h: dev.map(|v| v / h as f64) })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    match out.emit_or(Emit::Csv) {
        Emit::Json => out.json(&rows),
        Emit::Csv => {
            out.line("d,m,class_number,trace,deviation,deviation_over_h")?;
            let opt = |v: Option<f64>| v.map(fmt_g).unwrap_or_default();
            for r in &rows {
                out.line(&format!(
                    "{},{},{},{},{},{}",
                    r.d,
                    r.m,
                    r.class_number,
                    fmt_g(r.trace),
                    opt(r.deviation),
                    opt(r.deviation_over_h)
                ))?;
            }
            Ok(())
        }
    }
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    /// Smallest discriminant.
    #[arg(long = "Dmin", default_value_t = 5)]
    pub dmin: i64,
    /// Largest discriminant.
    #[arg(long = "Dmax")]
    pub dmax: i64,
    #[arg(long, default_value_t = 1)]
    pub m: u32,
    /// Fixed fundamental factor d (default 1).
    #[arg(long, allow_hyphen_values = true)]
    pub d: Option<i64>,
    #[arg(long, value_enum, default_value_t = TraceMethodArg::Series)]
    pub method: TraceMethodArg,
    #[command(flatten)]
    pub common: TraceCommon,
}

pub fn scan(a: &ScanArgs, out: &mut Sink) -> CmdResult {
    if a.dmin > a.dmax {
        return Err(invalid(format!("empty range [{}, {}]", a.dmin, a.dmax)));
    }
    if a.m == 0 {
        return Err(invalid("m must be positive"));
    }
    let method: TraceMethod = a.method.into();
    let selector = match a.d {
        None | Some(1) => DSelector::Trivial,
        Some(d) => DSelector::Fixed(d),
    };
    let discs = odd_fundamental_discriminants(a.dmin, a.dmax);
    let mut params = vec![
        ("Dmin", a.dmin.to_string()),
        ("Dmax", a.dmax.to_string()),
        ("d", a.d.unwrap_or(1).to_string()),
        ("m", a.m.to_string()),
        ("method", method.as_str().to_string()),
        ("discriminants", "odd fundamental".to_string()),
    ];
    let base = a.common.settings(a.dmax.max(5), a.m, method)?;
    params.extend(a.common.provenance(&base));
    out.provenance("scan", &params)?;
    let emit = out.emit_or(Emit::Csv);
    if emit == Emit::Csv {
        out.line(scan_csv_header())?;
    }
    let mut json_rows = Vec::new();
    let mut io_err: Option<CliError> = None;
    // Quadrature settings depend on D; consecutive D sharing the same settings form one block.
    let mut per_d: Vec<(i64, TraceSettings)> = Vec::with_capacity(discs.len());
    for &disc in &discs {
        per_d.push((disc, a.common.settings(disc, a.m, method)?));
    }
    let mut i = 0;
    while i < per_d.len() {
        let s = per_d[i].1;
        let mut j = i;
        while j < per_d.len() && per_d[j].1 == s {
            j += 1;
        }
        let block: Vec<i64> = per_d[i..j].iter().map(|p| p.0).collect();
        asymptotic_scan_each(&block, selector, a.m, method, &s, |row| {
            if io_err.is_some() {
                return;
            }
            let res = match emit {
                Emit::Csv => out.line(&row.csv()).and_then(|_| out.flush()),
                Emit::Json => {
                    json_rows.push(row.clone());
                    Ok(())
                }
            };
            if let Err(e) = res {
                io_err = Some(e);
            }
        });
        if let Some(e) = io_err {
            return Err(e);
        }
        i = j;
    }
    if emit == Emit::Json {
        out.json(&json_rows)?;
    }
    Ok(())
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    /// Smaller grids for the Weil, vanishing and φ⁺ suites.
    #[arg(long)]
    pub quick: bool,
}

pub fn verify(a: &VerifyArgs, out: &mut Sink) -> CmdResult {
    out.provenance(
        "verify",
        &[("suite", value_name(a.suite)), ("quick", a.quick.to_string())],
    )?;
    let results = run_suite(a.suite, a.quick)?;
    match out.emit_or(Emit::Csv) {
        Emit::Json => out.json(&results)?,
        Emit::Csv => {
            out.line("suite,checks,failures,max_error,tolerance,pass")?;
            for r in &results {
                out.line(&format!(
                    "{},{},{},{},{},{}",
                    r.suite,
                    r.checks,
                    r.failures,
                    fmt_g(r.max_error),
                    fmt_g(r.tolerance),
                    r.pass()
                ))?;
            }
        }
    }
    let failed: Vec<&str> = results.iter().filter(|r| !r.pass()).map(|r| r.suite).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        out.flush()?;
        Err(CliError::Compute(format!("verification failed: {}", failed.join(", "))))
    }
}

#[derive(Args, Debug)]
pub struct PhiPlusArgs {
    /// One or more n > 0 with n ≡ 0, 1 (mod 4), comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub n: Vec<i64>,
    /// Real part of s (needs Re s > 3/4).
    #[arg(long, default_value_t = 1.25)]
    pub s: f64,
    /// Imaginary part of s.
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub s_im: f64,
    #[arg(long, default_value_t = DEFAULT_CUTOFF)]
    pub cutoff: f64,
}

pub fn phiplus(a: &PhiPlusArgs, out: &mut Sink) -> CmdResult {
    let cutoff = cutoff_arg(a.cutoff)?;
    let s = Complex64::new(a.s, a.s_im);
    let reports = a
        .n
        .iter()
        .map(|&n| phi_plus_report(n, s, cutoff, exec_mode()))
        .collect::<Result<Vec<_>, _>>()?;
    let ns: Vec<String> = a.n.iter().map(|n| n.to_string()).collect();
    out.provenance(
        "phiplus",
        &[("n", ns.join(";")), ("s", format!("{}+{}i", fmt_g(a.s), fmt_g(a.s_im))), ("cutoff", fmt_g(cutoff))],
    )?;
    match out.emit_or(Emit::Json) {
        Emit::Json => out.json(&reports)?,
        Emit::Csv => {
            out.line("n,s_re,s_im,cutoff,series_re,series_im,closed_re,closed_im,diff,tail_bound,pass")?;
            for r in &reports {
                out.line(&format!(
                    "{},{},{},{},{},{},{},{},{},{},{}",
                    r.n,
                    fmt_g(r.s_re),
                    fmt_g(r.s_im),
                    fmt_g(r.cutoff),
                    fmt_g(r.series_re),
                    fmt_g(r.series_im),
                    fmt_g(r.closed_re),
                    fmt_g(r.closed_im),
                    fmt_g(r.diff),
                    fmt_g(r.tail_bound),
                    r.pass
                ))?;
            }
        }
    }
    Ok(())
}

#[derive(Args, Debug)]
pub struct CyclesArgs {
    #[arg(long = "D")]
    pub disc: i64,
}

pub fn cycles(a: &CyclesArgs, out: &mut Sink) -> CmdResult {
    let cyc = zagier_cycles(a.disc)?;
    out.provenance("cycles", &[("D", a.disc.to_string())])?;
    match out.emit_or(Emit::Csv) {
        Emit::Json => out.json(&cyc),
        Emit::Csv => {
            let body = cycles_csv(&cyc, true);
            out.line(body.trim_end())
        }
    }
}

#[derive(Args, Debug)]
pub struct JcoeffsArgs {
    /// Highest exponent N; coefficients c(-1..=N) are emitted.
    #[arg(long = "N")]
    pub n: usize,
    /// Compute without reading or writing the cache.
    #[arg(long)]
    pub no_cache: bool,
}

pub fn jcoeffs(a: &JcoeffsArgs, g: &GlobalOpts, out: &mut Sink) -> CmdResult {
    let series = if a.no_cache {
        plustrace::modforms::j_coefficients(a.n)?
    } else {
        let dir = resolve_cache_dir(g.cache_dir.as_deref())
            .ok_or_else(|| CliError::Compute("no cache directory could be determined".into()))?;
        JCache::new(dir).j_coefficients(a.n)?
    };
    out.provenance("jcoeffs", &[("N", a.n.to_string())])?;
    let rows: Vec<(i64, String)> =
        (-1..=a.n as i64).map(|k| (k, series.coeff(k).to_string())).collect();
    match out.emit_or(Emit::Csv) {
        Emit::Json => out.json(&json!({"kind": "j_qexp", "N": a.n, "coeffs": rows.iter().map(|r| &r.1).collect::<Vec<_>>()})),
        Emit::Csv => {
            out.line("n,coefficient")?;
            for (k, c) in &rows {
                out.line(&format!("{k},{c}"))?;
            }
            Ok(())
        }
    }
}
