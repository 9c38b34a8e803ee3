//! Verification suites run by `plustrace verify`.

use clap::ValueEnum;
use num_complex::Complex64;
use serde::Serialize;

use plustrace::exec::ordered_map;
use plustrace::kloosterman::{
    s_plus_from_table, s_theta_infinity, weil_bound, weyl_sum, weyl_via_kohnen, KloostermanMethod,
    KloostermanTable, REALITY_TOL,
};
use plustrace::modforms::cm_trace;
use plustrace::ntheory::{is_discriminant, is_fundamental};
use plustrace::quadforms::GenusCharacterSpec;
use plustrace::spectral::{phi_plus_report, vanishing_predicted, VANISHING_TOL};
use plustrace::{Execution, Weight};

use crate::output::CliError;

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Kohnen,
    Weil,
    Vanishing,
    Cm,
    Phiplus,
    All,
}

/// Outcome of one suite.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteResult {
    pub suite: &'static str,
    pub checks: usize,
    pub failures: usize,
    pub max_error: f64,
    pub tolerance: f64,
}

impl SuiteResult {
    pub fn pass(&self) -> bool {
        self.failures == 0 && self.checks > 0
    }
}

struct Tally {
    checks: usize,
    failures: usize,
    max_error: f64,
}

impl Tally {
    fn new() -> Self {
        Tally { checks: 0, failures: 0, max_error: 0.0 }
    }

    fn record(&mut self, err: f64, ok: bool) {
        self.checks += 1;
        if !ok || err.is_nan() {
            self.failures += 1;
        }
        self.max_error = self.max_error.max(err);
    }

    fn merge(&mut self, o: Tally) {
        self.checks += o.checks;
        self.failures += o.failures;
        self.max_error = self.max_error.max(o.max_error);
    }

    fn finish(self, suite: &'static str, tolerance: f64) -> SuiteResult {
        SuiteResult { suite, checks: self.checks, failures: self.failures, max_error: self.max_error, tolerance }
    }
}

const KOHNEN_TOL: f64 = 1e-9;

fn kohnen() -> Result<SuiteResult, CliError> {
    let mut t = Tally::new();
    for (d, dp) in [(1, 5), (5, 1), (1, 13), (13, 1), (-3, -7), (-7, -3)] {
        let spec = GenusCharacterSpec::new(d * dp, d)?;
        for m in 1..=4 {
            for c in (4..=400u64).step_by(4) {
                let a = weyl_sum(m, &spec, c)?;
                let b = weyl_via_kohnen(m, &spec, c, KloostermanMethod::Naive)?;
                let e = (a - b).abs();
                t.record(e, e < KOHNEN_TOL);
            }
        }
    }
    Ok(t.finish("kohnen", KOHNEN_TOL))
}

/// Largest ratio |S⁺|/bound over admissible m, n ≤ 40 and 4 | c ≤ cmax; `max_error` is that ratio.
fn weil(cmax: u64) -> Result<SuiteResult, CliError> {
    let cs: Vec<u64> = (4..=cmax).step_by(4).collect();
    let mut total = Tally::new();
    for wt in [Weight::Half, Weight::MinusHalf] {
        let ms: Vec<i64> = (1..=40).filter(|&m| is_discriminant(wt.sign() * m)).collect();
        let parts = ordered_map(Execution::Parallel, &cs, |&c| -> Result<Tally, CliError> {
            let table = KloostermanTable::new(c, wt)?;
            let mut t = Tally::new();
            for &m in &ms {
                for &n in &ms {
                    let s = s_plus_from_table(&table, m, n);
                    let ratio = s.norm() / weil_bound(m, n, c);
                    t.record(ratio, ratio <= 1.0 && s.im.abs() < REALITY_TOL);
                }
            }
            Ok(t)
        });
        for p in parts {
            total.merge(p?);
        }
    }
    Ok(total.finish("weil", 1.0))
}

fn vanishing(cmax: u64) -> Result<SuiteResult, CliError> {
    let mut t = Tally::new();
    for wt in [Weight::Half, Weight::MinusHalf] {
        for c in (16..=cmax).step_by(8) {
            for n in 1..=64 {
                if !vanishing_predicted(n, c) {
                    continue;
                }
                let v: Complex64 = s_theta_infinity(0, n, c, wt)?;
                t.record(v.norm(), v.norm() < VANISHING_TOL);
            }
        }
    }
    Ok(t.finish("vanishing", VANISHING_TOL))
}

const CM_TOL: f64 = 1e-6;

fn cm() -> Result<SuiteResult, CliError> {
    let mut t = Tally::new();
    for (d, want) in [(-3, -248.0), (-4, 492.0), (-7, -4119.0), (-8, 7256.0)] {
        let e = (cm_trace(d, 1)? - want).abs();
        t.record(e, e < CM_TOL);
    }
    for d in (-200..0).filter(|&d| is_fundamental(d)) {
        let v = cm_trace(d, 1)?;
        let e = (v - v.round()).abs();
        t.record(e, e < CM_TOL);
    }
    Ok(t.finish("cm", CM_TOL))
}

fn phiplus(cutoff: f64) -> Result<SuiteResult, CliError> {
    let mut t = Tally::new();
    for n in [5, 8, 13, 45] {
        for s in [1.25, 1.5] {
            let r = phi_plus_report(n, Complex64::new(s, 0.0), cutoff, Execution::Parallel)?;
            t.record(r.diff / r.tail_bound, r.pass);
        }
    }
    Ok(t.finish("phiplus", 1.0))
}

/// Grid sizes; `quick` shrinks the Weil, vanishing and φ⁺ grids.
pub fn run_suite(suite: Suite, quick: bool) -> Result<Vec<SuiteResult>, CliError> {
    let (weil_c, van_c, cutoff) = if quick { (200, 128, 1e4) } else { (2000, 512, 1e5) };
    let one = |s: Suite| -> Result<SuiteResult, CliError> {
        match s {
            Suite::Kohnen => kohnen(),
            Suite::Weil => weil(weil_c),
            Suite::Vanishing => vanishing(van_c),
            Suite::Cm => cm(),
            Suite::Phiplus => phiplus(cutoff),
            Suite::All => unreachable!(),
        }
    };
    match suite {
        Suite::All => [Suite::Kohnen, Suite::Weil, Suite::Vanishing, Suite::Cm, Suite::Phiplus]
            .into_iter()
            .map(one)
            .collect(),
        s => Ok(vec![one(s)?]),
    }
}
