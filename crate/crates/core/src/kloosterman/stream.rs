//! Streaming partial sums over the admissible moduli c ≡ 0 (mod 4).

use serde::{Deserialize, Serialize};

use super::{s_plus_signed, weyl_sum_with, KloostermanMethod, RootMethod};
use crate::error::{Error, Result};
use crate::exec::{try_ordered_map, Execution};
use crate::ntheory::{Sieve, Weight};
use crate::quadforms::GenusCharacterSpec;

/// Default cap on the cutoff X.
pub const DEFAULT_STREAM_CAP: f64 = 1e6;

/// Weight applied to each term before accumulation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightMode {
    InvC,
    InvSqrtC,
}

impl WeightMode {
    pub fn apply(self, c: u64) -> f64 {
        match self {
            WeightMode::InvC => 1.0 / c as f64,
            WeightMode::InvSqrtC => 1.0 / (c as f64).sqrt(),
        }
    }
}

/// The sequence of terms being summed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum SumFamily {
    /// S_k^+(m, n, c).
    Kloosterman { weight: Weight, m: i64, n: i64 },
    /// T_m(d′, d; c).
    Weyl { m: i64, spec: GenusCharacterSpec },
}

impl SumFamily {
    fn validate(&self) -> Result<()> {
        match *self {
            SumFamily::Kloosterman { weight, m, n } => super::check_admissible(weight, m, n, 4),
            SumFamily::Weyl { m, spec } => {
                if m <= 0 || spec.disc <= 0 {
                    return Err(Error::Domain("Weyl sums need m > 0 and D > 0".into()));
                }
                Ok(())
            }
        }
    }

    fn term(&self, c: u64, cfg: &StreamConfig, sieve: &Sieve) -> Result<f64> {
        match *self {
            SumFamily::Kloosterman { weight, m, n } => s_plus_signed(weight, m, n, c, cfg.method),
            SumFamily::Weyl { m, spec } => weyl_sum_with(m, &spec, c, cfg.roots, Some(sieve)),
        }
    }
}

/// Execution settings for a partial-sum scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StreamConfig {
    pub cap: f64,
    pub method: KloostermanMethod,
    pub roots: RootMethod,
    pub exec: Execution,
    /// Number of moduli evaluated per batch.
    pub chunk: usize,
}

impl Default for StreamConfig {
    fn default() -> Self {
        StreamConfig {
            cap: DEFAULT_STREAM_CAP,
            method: KloostermanMethod::Naive,
            roots: RootMethod::Auto,
            exec: Execution::Parallel,
            chunk: 2048,
        }
    }
}

impl StreamConfig {
    /// Selects the exponential-sum evaluator.
    pub fn with_method(mut self, method: KloostermanMethod) -> Self {
        self.method = method;
        self
    }

    pub fn with_exec(mut self, exec: Execution) -> Self {
        self.exec = exec;
        self
    }
}

/// One cumulative value S(x) = Σ_{4|c ≤ x} w(c)·term(c), recorded at x = c.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PartialSumRecord {
    pub x: u64,
    /// Unweighted term at c = x.
    pub term: f64,
    pub value: f64,
    pub weight_mode: WeightMode,
}

/// Iterator over partial sums; terms are evaluated in batches.
pub struct PartialSumStream {
    family: SumFamily,
    mode: WeightMode,
    cfg: StreamConfig,
    sieve: Sieve,
    next_c: u64,
    last_c: u64,
    acc: f64,
    buffer: std::vec::IntoIter<PartialSumRecord>,
    failed: bool,
}

impl PartialSumStream {
    pub fn new(family: SumFamily, x: f64, mode: WeightMode, cfg: StreamConfig) -> Result<Self> {
        if !(x.is_finite()) || x > cfg.cap {
            return Err(Error::Resource(format!("cutoff {x} exceeds the cap {}", cfg.cap)));
        }
        family.validate()?;
        let last_c = if x < 4.0 { 0 } else { (x.floor() as u64) / 4 * 4 };
        Ok(PartialSumStream {
            family,
            mode,
            cfg,
            sieve: Sieve::new(last_c.max(4) as usize),
            next_c: 4,
            last_c,
            acc: 0.0,
            buffer: Vec::new().into_iter(),
            failed: false,
        })
    }

    fn refill(&mut self) -> Result<bool> {
        if self.next_c > self.last_c {
            return Ok(false);
        }
        let chunk = self.cfg.chunk.max(1) as u64;
        let end = (self.next_c + 4 * (chunk - 1)).min(self.last_c);
        let cs: Vec<u64> = (self.next_c..=end).step_by(4).collect();
        self.next_c = end + 4;
        let family = self.family;
        let cfg = self.cfg;
        let sieve = &self.sieve;
        let terms = try_ordered_map(cfg.exec, &cs, |&c| family.term(c, &cfg, sieve))?;
        let mut recs = Vec::with_capacity(cs.len());
        for (c, t) in cs.into_iter().zip(terms) {
            self.acc += t * self.mode.apply(c);
            recs.push(PartialSumRecord { x: c, term: t, value: self.acc, weight_mode: self.mode });
        }
        self.buffer = recs.into_iter();
        Ok(true)
    }
}

impl Iterator for PartialSumStream {
    type Item = Result<PartialSumRecord>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed {
            return None;
        }
        loop {
            if let Some(r) = self.buffer.next() {
                return Some(Ok(r));
            }
            match self.refill() {
                Ok(true) => continue,
                Ok(false) => return None,
                Err(e) => {
                    self.failed = true;
                    return Some(Err(e));
                }
            }
        }
    }
}

/// Collects the full stream.
pub fn partial_sums(family: SumFamily, x: f64, mode: WeightMode, cfg: StreamConfig) -> Result<Vec<PartialSumRecord>> {
    PartialSumStream::new(family, x, mode, cfg)?.collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam() -> SumFamily {
        SumFamily::Kloosterman { weight: Weight::Half, m: 1, n: 5 }
    }

    #[test]
    fn small_cutoffs() {
        let cfg = StreamConfig::default();
        assert!(partial_sums(fam(), 3.9, WeightMode::InvC, cfg).unwrap().is_empty());
        let r = partial_sums(fam(), 4.0, WeightMode::InvC, cfg).unwrap();
        assert_eq!(r.len(), 1);
        assert!((r[0].value + 2f64.sqrt() / 2.0).abs() < 1e-12);
        assert!(matches!(partial_sums(fam(), 2e6, WeightMode::InvC, cfg), Err(Error::Resource(_))));
    }

    #[test]
    fn deterministic_across_execution_modes() {
        let base = StreamConfig { chunk: 37, ..StreamConfig::default() };
        let a = partial_sums(fam(), 3000.0, WeightMode::InvC, base.with_exec(Execution::Sequential)).unwrap();
        let b = partial_sums(fam(), 3000.0, WeightMode::InvC, base.with_exec(Execution::Parallel)).unwrap();
        let c = partial_sums(
            fam(),
            3000.0,
            WeightMode::InvC,
            base.with_method(KloostermanMethod::Factored).with_exec(Execution::Parallel),
        )
        .unwrap();
        assert_eq!(a, b);
        for (x, y) in a.iter().zip(&c) {
            assert!((x.value - y.value).abs() < 1e-9);
        }
    }

    #[test]
    fn inadmissible_family_rejected() {
        let bad = SumFamily::Kloosterman { weight: Weight::Half, m: 2, n: 5 };
        assert!(PartialSumStream::new(bad, 100.0, WeightMode::InvC, StreamConfig::default()).is_err());
    }
}
