//! Property-based checks of the structural invariants.

use num_bigint::BigInt;
use num_complex::Complex64;
use proptest::prelude::*;

use plustrace::geodesics::winding_number;
use plustrace::kloosterman::{
    partial_sums, s_plus_complex, s_theta_infinity_with, weil_bound, KloostermanMethod, StreamConfig, SumFamily,
    WeightMode,
};
use plustrace::modforms::{eval_jm, mobius, reduce_to_fundamental_domain};
use plustrace::ntheory::{fund_decompose, is_discriminant, is_fundamental, is_square, kronecker};
use plustrace::quadforms::{
    fundamental_automorph, genus_character, zagier_reduce, ClassIndex, GenusCharacterSpec, QuadForm,
};
use plustrace::{Execution, Weight};

type Mat = [[i64; 2]; 2];

fn mat_mul(a: Mat, b: Mat) -> Mat {
    [
        [a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]],
        [a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]],
    ]
}

/// Products of T^k and S with entries bounded by 20.
fn sl2z() -> impl Strategy<Value = Mat> {
    prop::collection::vec((-3i64..=3, any::<bool>()), 1..6)
        .prop_map(|word| {
            word.into_iter().fold([[1, 0], [0, 1]], |acc, (k, s)| {
                let g = if s { [[0, -1], [1, 0]] } else { [[1, k], [0, 1]] };
                mat_mul(acc, g)
            })
        })
        .prop_filter("entries bounded by 20", |g| g.iter().flatten().all(|v| v.abs() <= 20))
}

fn weight() -> impl Strategy<Value = Weight> {
    prop_oneof![Just(Weight::Half), Just(Weight::MinusHalf)]
}

/// An admissible (weight, m, n, c).
fn kloosterman_query() -> impl Strategy<Value = (Weight, i64, i64, u64)> {
    (weight(), 1i64..200, 1i64..200, 1u64..300).prop_filter_map("admissible", |(w, m, n, c)| {
        let ok = is_discriminant(w.sign() * m) && is_discriminant(w.sign() * n);
        ok.then_some((w, m, n, 4 * c))
    })
}

/// Positive nonsquare discriminants.
fn real_disc() -> impl Strategy<Value = i64> {
    (2i64..400).prop_filter("nonsquare discriminant", |&d| is_discriminant(d) && !is_square(d))
}

fn indefinite_form() -> impl Strategy<Value = QuadForm> {
    (real_disc(), 1i64..6, -10i64..10).prop_filter_map("form with the discriminant", |(d, a, b)| {
        let num = b * b - d;
        (num % (4 * a) == 0).then(|| QuadForm::new(a, b, num / (4 * a)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn kronecker_is_multiplicative(a in -1_000_000i64..1_000_000, m in 1i64..10_000, n in 1i64..10_000) {
        prop_assert_eq!(kronecker(a, m * n), kronecker(a, m) * kronecker(a, n));
        prop_assert!(kronecker(a, m).abs() <= 1);
    }

    #[test]
    fn decomposition_round_trip(n in 1u64..=100_000_000, w in weight()) {
        let signed = w.sign() * n as i64;
        prop_assume!(is_discriminant(signed));
        let f = fund_decompose(n, w).unwrap();
        prop_assert!(is_fundamental(f.d));
        prop_assert_eq!(f.d * (f.w * f.w) as i64, signed);
    }

    #[test]
    fn decomposition_rejects_beyond_factor_limit(n in 100_000_001u64..1_000_000_000, w in weight()) {
        prop_assert!(fund_decompose(n, w).is_err());
    }

    #[test]
    fn kloosterman_real_symmetric_bounded((w, m, n, c) in kloosterman_query()) {
        let s = s_plus_complex(w, m, n, c, KloostermanMethod::Naive).unwrap();
        let t = s_plus_complex(w, n, m, c, KloostermanMethod::Naive).unwrap();
        prop_assert!(s.im.abs() < 1e-10);
        prop_assert!((s - t).norm() < 1e-10);
        prop_assert!(s.norm() <= weil_bound(m, n, c));
        let flipped = s_plus_complex(w.flip(), -m, -n, c, KloostermanMethod::Naive).unwrap();
        prop_assert!((s - flipped).norm() < 1e-10);
    }

    #[test]
    fn factored_matches_naive(m in -60i64..60, n in -60i64..60, c in 1u64..1024, w in weight()) {
        let a = s_theta_infinity_with(m, n, 4 * c, w, KloostermanMethod::Naive).unwrap();
        let b = s_theta_infinity_with(m, n, 4 * c, w, KloostermanMethod::Factored).unwrap();
        prop_assert!((a - b).norm() < 1e-9, "{} vs {}", a, b);
    }

    #[test]
    fn partial_sums_are_append_only(x1 in 4.0f64..3000.0, extra in 0.0f64..3000.0) {
        let fam = SumFamily::Kloosterman { weight: Weight::Half, m: 1, n: 5 };
        let cfg = StreamConfig::default().with_exec(Execution::Sequential);
        let a = partial_sums(fam, x1, WeightMode::InvSqrtC, cfg).unwrap();
        let b = partial_sums(fam, x1 + extra, WeightMode::InvSqrtC, cfg).unwrap();
        prop_assert_eq!(&b[..a.len()], &a[..]);
        prop_assert!(a.iter().all(|r| r.x % 4 == 0 && r.x as f64 <= x1));
    }

    #[test]
    fn reduction_lands_in_the_domain(x in -50.0f64..50.0, y in 1e-3f64..10.0) {
        let z = Complex64::new(x, y);
        let p = reduce_to_fundamental_domain(z).unwrap();
        prop_assert!(p.in_domain());
        let [[a, b], [c, d]] = p.word;
        prop_assert_eq!(a * d - b * c, 1);
        let w = mobius(p.word, z);
        prop_assert!((w - p.z()).norm() < 1e-9 * w.norm().max(1.0));
    }

    #[test]
    fn jm_is_modular(m in 1u32..=4, x in -0.5f64..0.5, y in 0.2f64..5.0, g in sl2z()) {
        let z = Complex64::new(x, y);
        let a = eval_jm(m, z).unwrap();
        let b = eval_jm(m, mobius(g, z)).unwrap();
        prop_assert!((a - b).norm() <= 1e-6 * a.norm().max(1.0), "{} vs {}", a, b);
    }

    #[test]
    fn winding_numbers_are_invariant(q in indefinite_form(), x in -0.5f64..0.5, y in 0.1f64..3.0, g in sl2z()) {
        let z = Complex64::new(x, y);
        if let (Ok(a), Ok(b)) = (winding_number(&q, z), winding_number(&q, mobius(g, z))) {
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn genus_character_and_class_are_invariant(q in indefinite_form(), g in sl2z()) {
        let d = q.disc();
        let moved = q.act(g);
        prop_assert_eq!(moved.disc(), d);
        let index = ClassIndex::new(d).unwrap();
        prop_assert_eq!(index.class_of(&q).unwrap(), index.class_of(&moved).unwrap());
        let r = zagier_reduce(&moved).unwrap();
        prop_assert!(r.a > 0 && r.c > 0 && r.a + r.b + r.c < 0);
        for f in (-d..=d).filter(|&f| f != 0 && d % f == 0 && is_fundamental(f)) {
            if let Ok(spec) = GenusCharacterSpec::new(d, f) {
                prop_assert_eq!(genus_character(&spec, &q).unwrap(), genus_character(&spec, &moved).unwrap());
            }
        }
    }

    #[test]
    fn pell_units_solve_the_equation(d in real_disc()) {
        let u = fundamental_automorph(d).unwrap();
        let t = BigInt::from(u.t.clone());
        let v = BigInt::from(u.u.clone());
        prop_assert_eq!(&t * &t - BigInt::from(d) * &v * &v, BigInt::from(4));
        prop_assert!(u.log_eps > 0.0);
    }
}

#[test]
fn factored_matches_naive_for_every_modulus() {
    for c in (4..=4096u64).step_by(4) {
        for w in [Weight::Half, Weight::MinusHalf] {
            for (m, n) in [(0, 5), (1, 5), (5, 1), (4, 8), (-3, -7), (12, 13)] {
                let a = s_theta_infinity_with(m, n, c, w, KloostermanMethod::Naive).unwrap();
                let b = s_theta_infinity_with(m, n, c, w, KloostermanMethod::Factored).unwrap();
                assert!((a - b).norm() < 1e-9, "c={c} m={m} n={n}");
            }
        }
    }
}
