//! Gauss–Legendre rules: adaptive in double precision, composite at any precision.

use std::collections::{BinaryHeap, HashMap};
use std::sync::{Arc, Mutex};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::precision::{Cx, MpReal, Real};

/// Nodes per panel of the adaptive rule.
pub const ADAPTIVE_ORDER: usize = 20;

/// Nodes and weights on [−1, 1], computed by Newton iteration on Pₙ.
pub fn gauss_legendre<R: Real>(n: usize, ctx: R::Ctx, newton_steps: usize) -> Vec<(R, R)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let guess = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut x = R::from_f64(refine_f64(n, guess), ctx);
        for _ in 0..newton_steps {
            let (p, d) = legendre_r(n, &x, ctx);
            x = x.clone() - p / d;
        }
        let (_, d) = legendre_r(n, &x, ctx);
        let w = R::from_f64(2.0, ctx) / ((R::one(ctx) - x.clone() * x.clone()) * d.clone() * d);
        out.push((x, w));
    }
    out
}

fn refine_f64(n: usize, mut x: f64) -> f64 {
    for _ in 0..100 {
        let (p, d) = legendre_r(n, &x, ());
        let dx = p / d;
        x -= dx;
        if dx.abs() < 1e-16 {
            break;
        }
    }
    x
}

/// (Pₙ(x), Pₙ′(x)) by the three-term recurrence.
fn legendre_r<R: Real>(n: usize, x: &R, ctx: R::Ctx) -> (R, R) {
    let mut p0 = R::one(ctx);
    let mut p1 = x.clone();
    for k in 1..n {
        let kf = k as f64;
        // Exact integer factors; the quotient is taken at the working precision.
        let p2 = ((x.clone() * p1.clone()).scale(2.0 * kf + 1.0) - p0.scale(kf)) / R::from_f64(kf + 1.0, ctx);
        p0 = p1;
        p1 = p2;
    }
    let d = (x.clone() * p1.clone() - p0).scale(n as f64) / (x.clone() * x.clone() - R::one(ctx));
    (p1, d)
}

type Rule<R> = Arc<Vec<(R, R)>>;
type RuleCache<K, R> = Mutex<Option<HashMap<K, Rule<R>>>>;

static F64_RULES: RuleCache<usize, f64> = Mutex::new(None);
static MP_RULES: RuleCache<(usize, usize), MpReal> = Mutex::new(None);

/// Cached double-precision rule.
pub fn rule_f64(n: usize) -> Arc<Vec<(f64, f64)>> {
    let mut g = F64_RULES.lock().unwrap_or_else(|e| e.into_inner());
    Arc::clone(g.get_or_insert_with(HashMap::new).entry(n).or_insert_with(|| Arc::new(gauss_legendre(n, (), 0))))
}

/// Cached extended-precision rule.
pub fn rule_mp(n: usize, bits: usize) -> Arc<Vec<(MpReal, MpReal)>> {
    let mut g = MP_RULES.lock().unwrap_or_else(|e| e.into_inner());
    Arc::clone(g.get_or_insert_with(HashMap::new).entry((n, bits)).or_insert_with(|| {
        let steps = ((bits as f64 / 48.0).log2().ceil().max(0.0) as usize) + 2;
        Arc::new(gauss_legendre(n, bits, steps))
    }))
}

fn gauss_panel(f: &impl Fn(f64) -> Result<Complex64>, a: f64, b: f64, rule: &[(f64, f64)]) -> Result<Complex64> {
    let h = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut acc = Complex64::new(0.0, 0.0);
    for &(x, w) in rule {
        acc += f(mid + h * x)? * w;
    }
    Ok(acc * h)
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: Complex64,
    pub error: f64,
    pub nodes: usize,
}

struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, o: &Self) -> bool {
        self.error == o.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Panel {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.error.total_cmp(&o.error)
    }
}

/// Globally adaptive bisection; each panel's error is the change from splitting it.
pub fn adaptive_gauss(
    f: impl Fn(f64) -> Result<Complex64>,
    a: f64,
    b: f64,
    abs_tol: f64,
    max_nodes: usize,
) -> Result<Integral> {
    let rule = rule_f64(ADAPTIVE_ORDER);
    let n = rule.len();
    let make = |a: f64, b: f64, coarse: Complex64| -> Result<(Panel, Panel)> {
        let m = 0.5 * (a + b);
        let l = gauss_panel(&f, a, m, &rule)?;
        let r = gauss_panel(&f, m, b, &rule)?;
        let err = (l + r - coarse).norm() / 2.0;
        Ok((Panel { a, b: m, value: l, error: err }, Panel { a: m, b, value: r, error: err }))
    };
    let whole = gauss_panel(&f, a, b, &rule)?;
    let (l, r) = make(a, b, whole)?;
    let mut nodes = 3 * n;
    let mut heap = BinaryHeap::from([l, r]);
    loop {
        let error: f64 = heap.iter().map(|p| p.error).sum();
        if error <= abs_tol {
            // Sum in a deterministic order.
            let mut panels: Vec<_> = heap.into_vec();
            panels.sort_by(|x, y| x.a.total_cmp(&y.a));
            let value = panels.iter().fold(Complex64::new(0.0, 0.0), |s, p| s + p.value);
            return Ok(Integral { value, error, nodes });
        }
        if nodes + 2 * n > max_nodes {
            return Err(Error::Accuracy(format!(
                "estimated error {error:.3e} above {abs_tol:.3e} after {nodes} nodes"
            )));
        }
        let worst = heap.pop().expect("non-empty");
        let (l, r) = make(worst.a, worst.b, worst.value)?;
        nodes += 2 * n;
        heap.push(l);
        heap.push(r);
    }
}

/// Composite rule with `panels` equal panels at any precision.
pub fn composite_gauss<R: Real>(
    f: &impl Fn(&R) -> Result<Cx<R>>,
    a: &R,
    b: &R,
    panels: usize,
    rule: &[(R, R)],
) -> Result<Cx<R>> {
    let ctx = a.ctx();
    let width = (b.clone() - a.clone()) / R::from_f64(panels as f64, ctx);
    let half = width.scale(0.5);
    let mut acc = Cx::zero(ctx);
    for p in 0..panels {
        let mid = a.clone() + width.scale(p as f64) + half.clone();
        let mut panel = Cx::zero(ctx);
        for (x, w) in rule {
            let v = f(&(mid.clone() + half.clone() * x.clone()))?;
            panel = panel.add(&v.scale(w));
        }
        acc = acc.add(&panel.scale(&half));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rules_integrate_polynomials_exactly() {
        let r = rule_f64(10);
        let s: f64 = r.iter().map(|(x, w)| w * x.powi(18)).sum();
        assert!((s - 2.0 / 19.0).abs() < 1e-15);
        let wsum: f64 = r.iter().map(|(_, w)| w).sum();
        assert!((wsum - 2.0).abs() < 1e-14);
        let m = rule_mp(12, 200);
        let s = m.iter().fold(MpReal::zero(200), |s, (x, w)| {
            let x2 = x.clone() * x.clone();
            let x4 = x2.clone() * x2;
            s + w.clone() * x4.clone() * x4.clone() * x4
        });
        assert!((s.to_f64() - 2.0 / 13.0).abs() < 1e-16);
    }

    #[test]
    fn adaptive_handles_peaks() {
        let f = |x: f64| Ok(Complex64::new(1.0 / (1e-4 + x * x), 0.0));
        let r = adaptive_gauss(f, -1.0, 1.0, 1e-9, 100_000).unwrap();
        let exact = 2.0 * (1.0 / 1e-2) * (1.0f64 / 1e-2).atan();
        assert!((r.value.re - exact).abs() < 1e-8, "{}", r.value.re);
        assert!(adaptive_gauss(f, -1.0, 1.0, 1e-14, 200).is_err());
    }

    #[test]
    fn composite_mp() {
        let bits = 160;
        let rule = rule_mp(16, bits);
        let f = |x: &MpReal| Ok(Cx::new(x.exp(), MpReal::zero(bits)));
        let v = composite_gauss(&f, &MpReal::zero(bits), &MpReal::one(bits), 4, &rule).unwrap();
        assert!((v.re.to_f64() - (std::f64::consts::E - 1.0)).abs() < 1e-15);
    }
}
