//! Trend scans of traces over ranges of discriminants.

use serde::{Deserialize, Serialize};

use super::{trace, TraceMethod, TraceReport, TraceSettings};
use crate::exec::{ordered_map, Execution};
use crate::ntheory::is_fundamental;
use crate::report::fmt_g;

/// Exponent of D in the error term of the cycle-integral asymptotic.
pub const RESIDUAL_EXPONENT: f64 = 13.0 / 27.0;

/// Which factor d of D each row uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DSelector {
    /// d = 1.
    Trivial,
    /// A fixed d; rows where d does not divide D report an error.
    Fixed(i64),
}

impl DSelector {
    fn pick(self) -> i64 {
        match self {
            DSelector::Trivial => 1,
            DSelector::Fixed(d) => d,
        }
    }
}

/// One scan row; `error` is set and the numeric fields are absent when the row failed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    #[serde(rename = "D")]
    pub disc: i64,
    pub d: i64,
    pub m: u32,
    pub method: TraceMethod,
    pub report: Option<TraceReport>,
    pub error: Option<String>,
}

impl ScanRow {
    /// residual / |main_term|.
    pub fn relative_residual(&self) -> Option<f64> {
        self.report.map(|r| r.residual / r.main_term.abs())
    }

    /// residual / D^{13/27}.
    pub fn scaled_residual(&self) -> Option<f64> {
        self.report.map(|r| r.residual / (r.disc as f64).powf(RESIDUAL_EXPONENT))
    }

    pub fn csv(&self) -> String {
        let opt = |v: Option<f64>| v.map(fmt_g).unwrap_or_default();
        let r = self.report;
        format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            self.disc,
            self.d,
            self.m,
            self.method.as_str(),
            opt(r.map(|r| r.value)),
            opt(r.map(|r| r.main_term)),
            opt(r.map(|r| r.residual)),
            opt(r.map(|r| r.cutoff_or_tol)),
            opt(self.relative_residual()),
            opt(self.scaled_residual()),
            self.error.as_deref().unwrap_or("").replace(',', ";"),
        )
    }
}

pub fn scan_csv_header() -> &'static str {
    "D,d,m,method,value,main_term,residual,cutoff_or_tol,residual_over_main,residual_over_D13_27,error"
}

/// Odd fundamental discriminants in [lo, hi].
pub fn odd_fundamental_discriminants(lo: i64, hi: i64) -> Vec<i64> {
    (lo.max(1)..=hi).filter(|&d| d % 2 == 1 && is_fundamental(d) && d != 1).collect()
}

/// Rows in order, emitted chunk by chunk to `emit` as they complete.
pub fn asymptotic_scan_each(
    discs: &[i64],
    selector: DSelector,
    m: u32,
    method: TraceMethod,
    settings: &TraceSettings,
    mut emit: impl FnMut(&ScanRow),
) {
    let chunk = if settings.exec == Execution::Parallel { 16 } else { 1 };
    // Rows run in parallel; each trace runs sequentially inside.
    let inner = TraceSettings { exec: Execution::Sequential, ..*settings };
    for block in discs.chunks(chunk) {
        let rows = ordered_map(settings.exec, block, |&disc| {
            let d = selector.pick();
            match trace(disc, d, m, method, &inner) {
                Ok(r) => ScanRow { disc, d, m, method, report: Some(r), error: None },
                Err(e) => ScanRow { disc, d, m, method, report: None, error: Some(e.to_string()) },
            }
        });
        for r in &rows {
            emit(r);
        }
    }
}

/// All rows of a scan; per-row failures are recorded, not propagated.
pub fn asymptotic_scan(discs: &[i64], selector: DSelector, m: u32, method: TraceMethod, settings: &TraceSettings) -> Vec<ScanRow> {
    let mut out = Vec::with_capacity(discs.len());
    asymptotic_scan_each(discs, selector, m, method, settings, |r| out.push(r.clone()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_and_error_rows() {
        assert!(asymptotic_scan(&[], DSelector::Trivial, 1, TraceMethod::Direct, &TraceSettings::default()).is_empty());
        let rows = asymptotic_scan(&[5, 16], DSelector::Trivial, 1, TraceMethod::Direct, &TraceSettings::default());
        assert!(rows[0].report.is_some());
        assert!(rows[1].error.is_some());
        assert!(rows[0].csv().starts_with("5,1,1,direct,"));
        assert_eq!(rows[0].csv().split(',').count(), scan_csv_header().split(',').count());
    }

    #[test]
    fn odd_fundamentals() {
        assert_eq!(odd_fundamental_discriminants(1, 30), vec![5, 13, 17, 21, 29]);
    }
}
