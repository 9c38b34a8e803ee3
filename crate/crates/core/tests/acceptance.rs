//! End-to-end acceptance checks, one line per criterion.
//!
//! Runs as a plain binary (`harness = false`) and exits nonzero if any check fails.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_complex::Complex64;

use plustrace::exec::ordered_map;
use plustrace::geodesics::{
    asymptotic_scan, nu_mass, odd_fundamental_discriminants, trace, trace_cycle, DSelector, TraceMethod,
    TraceSettings,
};
use plustrace::kloosterman::{
    partial_sums, s_plus_from_table, s_theta_infinity, weil_bound, weyl_sum, weyl_via_kohnen, KloostermanMethod,
    KloostermanTable, StreamConfig, SumFamily, WeightMode,
};
use plustrace::modforms::{cm_trace, cm_trace_deviation, faber_polynomial, j_coefficients};
use plustrace::ntheory::{is_discriminant, is_fundamental};
use plustrace::quadforms::{class_number_imaginary, GenusCharacterSpec};
use plustrace::spectral::phi_plus_report;
use plustrace::{Execution, Weight};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn within(elapsed: Duration, limit: f64) -> bool {
    elapsed.as_secs_f64() < limit
}

fn c1_cm_traces() -> Outcome {
    let t0 = Instant::now();
    let mut worst = 0.0f64;
    for (d, want) in [(-3, -248.0), (-4, 492.0), (-7, -4119.0), (-8, 7256.0)] {
        let v = cm_trace(d, 1).expect("cm trace");
        worst = worst.max((v - want).abs());
    }
    let dt = t0.elapsed();
    outcome(worst < 1e-6 && within(dt, 1.0), format!("max error {worst:.2e}, {:.3} s", dt.as_secs_f64()))
}

fn c2_qexp() -> Outcome {
    let j = j_coefficients(2).expect("j coefficients");
    let exact = j.coeff(1) == BigInt::from(196884) && j.coeff(2) == BigInt::from(21493760);
    let p2 = faber_polynomial(2).expect("faber");
    let want: Vec<BigInt> = [1, -1488, 159768].into_iter().map(BigInt::from).collect();
    let faber_ok = p2.coeffs_descending() == want;
    outcome(
        exact && faber_ok,
        format!("c(1)={}, c(2)={}, P_2 = {:?}", j.coeff(1), j.coeff(2), p2.coeffs_descending()),
    )
}

fn c3_real_quadratic() -> Outcome {
    let t0 = Instant::now();
    let s = TraceSettings::default();
    let mut worst = 0.0f64;
    let mut vals = Vec::new();
    for (disc, want) in [(5, -11.5417), (8, -19.1374), (13, -23.4094), (17, -43.9449)] {
        let r = trace_cycle(disc, 1, 1, TraceMethod::Direct, &s).expect("trace");
        worst = worst.max((r.normalized() - want).abs());
        vals.push(format!("{disc}:{:.4}", r.normalized()));
    }
    let dt = t0.elapsed();
    outcome(
        worst < 5e-3 && within(dt, 30.0),
        format!("{} max error {worst:.2e}, {:.2} s", vals.join(" "), dt.as_secs_f64()),
    )
}

fn c4_kohnen() -> Outcome {
    let t0 = Instant::now();
    let mut worst = 0.0f64;
    let mut checks = 0;
    for (d, dp) in [(1, 5), (5, 1), (1, 13), (13, 1), (-3, -7), (-7, -3)] {
        let spec = GenusCharacterSpec::new(d * dp, d).expect("spec");
        for m in 1..=4 {
            for c in (4..=400u64).step_by(4) {
                let a = weyl_sum(m, &spec, c).expect("weyl");
                let b = weyl_via_kohnen(m, &spec, c, KloostermanMethod::Naive).expect("kohnen");
                worst = worst.max((a - b).abs());
                checks += 1;
            }
        }
    }
    let dt = t0.elapsed();
    outcome(
        worst < 1e-9 && within(dt, 60.0),
        format!("{checks} checks, max diff {worst:.2e}, {:.2} s", dt.as_secs_f64()),
    )
}

fn c5_weil() -> Outcome {
    let cs: Vec<u64> = (4..=2000).step_by(4).collect();
    let mut violations = 0usize;
    let mut checks = 0usize;
    let mut worst_ratio = 0.0f64;
    let mut worst_im = 0.0f64;
    for wt in [Weight::Half, Weight::MinusHalf] {
        let ms: Vec<i64> = (1..=40).filter(|&m| is_discriminant(wt.sign() * m)).collect();
        let parts = ordered_map(Execution::Parallel, &cs, |&c| {
            let table = KloostermanTable::new(c, wt).expect("table");
            let (mut v, mut n, mut r, mut im) = (0usize, 0usize, 0.0f64, 0.0f64);
            for &a in &ms {
                for &b in &ms {
                    let s = s_plus_from_table(&table, a, b);
                    let ratio = s.norm() / weil_bound(a, b, c);
                    if ratio > 1.0 || s.im.abs() >= 1e-10 {
                        v += 1;
                    }
                    n += 1;
                    r = r.max(ratio);
                    im = im.max(s.im.abs());
                }
            }
            (v, n, r, im)
        });
        for (v, n, r, im) in parts {
            violations += v;
            checks += n;
            worst_ratio = worst_ratio.max(r);
            worst_im = worst_im.max(im);
        }
    }
    outcome(
        violations == 0,
        format!("{checks} sums, {violations} violations, max |S|/bound {worst_ratio:.3}, max |Im| {worst_im:.2e}"),
    )
}

fn c6_vanishing() -> Outcome {
    let mut checks = 0;
    let mut worst = 0.0f64;
    for c in (8..=512u64).step_by(8) {
        for n in 1..=64i64 {
            let predicted = (c % 16 == 8 && n % 4 == 0) || (c % 16 == 0 && n % 4 == 1);
            if !predicted {
                continue;
            }
            let v = s_theta_infinity(0, n, c, Weight::Half).expect("theta sum");
            worst = worst.max(v.norm());
            checks += 1;
        }
    }
    outcome(worst < 1e-10, format!("{checks} cases, max |S| {worst:.2e}"))
}

fn c7_phi_plus() -> Outcome {
    let t0 = Instant::now();
    let mut ok = true;
    let mut worst = 0.0f64;
    for n in [5, 8, 13, 45] {
        for s in [1.25, 1.5] {
            let r = phi_plus_report(n, Complex64::new(s, 0.0), 1e5, Execution::Parallel).expect("phi+");
            ok &= r.diff <= r.tail_bound;
            worst = worst.max(r.diff / r.tail_bound);
        }
    }
    let dt = t0.elapsed();
    outcome(
        ok && within(dt, 120.0),
        format!("max diff/tail_bound {worst:.2e}, {:.2} s", dt.as_secs_f64()),
    )
}

fn c8_surface_identity() -> Outcome {
    let a = nu_mass(21, -3).expect("nu mass");
    let b = nu_mass(33, -3).expect("nu mass");
    let third = 1.0 / 3.0;
    outcome(
        (a - third).abs() <= 2e-2 && (b - third).abs() <= 2e-2,
        format!("nu_mass(21,-3) = {a:.6}, nu_mass(33,-3) = {b:.6}"),
    )
}

fn c9_method_agreement() -> Outcome {
    let s = TraceSettings::default();
    let mut ok = true;
    let mut parts = Vec::new();
    for disc in [5, 13, 17] {
        let direct = trace_cycle(disc, 1, 1, TraceMethod::Direct, &s).expect("direct");
        let series = trace_cycle(disc, 1, 1, TraceMethod::Series, &s).expect("series");
        let diff = (direct.value - series.value).abs();
        ok &= diff <= 5e-2;
        parts.push(format!("D={disc}: {diff:.2e}"));
    }
    let sd = trace(21, -3, 1, TraceMethod::SurfaceDirect, &s).expect("surface direct");
    let ss = trace(21, -3, 1, TraceMethod::SurfaceSeries, &s).expect("surface series");
    let diff = (sd.value - ss.value).abs();
    let tol = sd.error_estimate + ss.error_estimate;
    ok &= diff <= tol;
    parts.push(format!("surface(21,-3): {diff:.2e} <= {tol:.2e}"));
    outcome(ok, parts.join(", "))
}

fn c10_growth() -> Outcome {
    let t0 = Instant::now();
    let cfg = StreamConfig::default().with_method(KloostermanMethod::Factored);
    let fam = SumFamily::Kloosterman { weight: Weight::Half, m: 1, n: 5 };
    let recs = partial_sums(fam, 1e5, WeightMode::InvC, cfg).expect("partial sums");
    let sup = recs
        .iter()
        .filter(|r| r.x >= 1000)
        .map(|r| r.value.abs() / (r.x as f64).powf(0.45))
        .fold(0.0f64, f64::max);
    // Envelope: max |S(x)| over dyadic blocks [2^k, 2^{k+1}) inside [10^3, 10^5].
    let mut pts = Vec::new();
    let mut lo = 1024u64;
    while lo * 2 <= 100_000 {
        let hi = lo * 2;
        let env = recs.iter().filter(|r| r.x >= lo && r.x < hi).map(|r| r.value.abs()).fold(0.0f64, f64::max);
        pts.push(((hi as f64).ln(), env.ln()));
        lo = hi;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let slope = sxy / sxx;
    let dt = t0.elapsed();
    outcome(
        sup < 1.0 && slope <= 0.45 && within(dt, 600.0),
        format!("sup |S|/x^0.45 = {sup:.4}, envelope slope {slope:.3}, {:.2} s", dt.as_secs_f64()),
    )
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(|a, b| a.total_cmp(b));
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

fn c11_trends() -> Outcome {
    let discs = odd_fundamental_discriminants(5, 500);
    let rows = asymptotic_scan(&discs, DSelector::Trivial, 1, TraceMethod::Series, &TraceSettings::default());
    let failed = rows.iter().filter(|r| r.report.is_none()).count();
    let rel: Vec<(i64, f64)> = rows.iter().filter_map(|r| r.relative_residual().map(|v| (r.disc, v.abs()))).collect();
    let half = rel.len() / 2;
    let lower = median(rel[..half].iter().map(|p| p.1).collect());
    let upper = median(rel[half..].iter().map(|p| p.1).collect());

    let ds: Vec<i64> = (-3000..=-2000).filter(|&d| is_fundamental(d)).collect();
    let devs = ordered_map(Execution::Parallel, &ds, |&d| {
        cm_trace_deviation(d).expect("deviation") / class_number_imaginary(d).expect("class number") as f64
    });
    let mean = devs.iter().sum::<f64>() / devs.len() as f64;
    let dev_ok = (mean + 24.0).abs() <= 0.3 * 24.0;
    outcome(
        failed == 0 && upper < lower && dev_ok,
        format!(
            "{} discriminants, median |res/main| lower {lower:.4} upper {upper:.4}; mean deviation/h {mean:.3} over {} d",
            rel.len(),
            devs.len()
        ),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 11] = [
        ("CM traces", c1_cm_traces),
        ("q-expansion exactness", c2_qexp),
        ("real-quadratic traces", c3_real_quadratic),
        ("Kohnen identity", c4_kohnen),
        ("Weil bound and reality", c5_weil),
        ("vanishing of S(0,n,c)", c6_vanishing),
        ("phi+ closed form", c7_phi_plus),
        ("surface identity", c8_surface_identity),
        ("method agreement", c9_method_agreement),
        ("partial-sum growth", c10_growth),
        ("asymptotic trends", c11_trends),
    ];
    let mut failures = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        if !o.pass {
            failures += 1;
        }
        println!("criterion {:>2} {:<24} {}  {}", i + 1, name, if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
