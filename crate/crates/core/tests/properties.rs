mod common;

use common::fixed_point::largest_solution;
use effbound::arith::{Dyadic, Interval};
use effbound::baker::{matveev_log_lower_bound, petho_deweger_bound, MatveevInput};
use effbound::height::{abs_log_height, log_star, AlgebraicNumber, QuadraticElement};
use effbound::instance::factor_over_primes;
use effbound::recurrence::{analyze_spectrum, RecurrenceSpec, SpectralConfig};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use proptest::prelude::*;

const P: u32 = 192;

fn slack() -> Dyadic {
    Dyadic::one().ldexp(-100)
}

fn quad() -> impl Strategy<Value = QuadraticElement> {
    (-9i64..=9, 1i64..=6, -9i64..=9, 1i64..=6, prop::sample::select(vec![2i64, 3, 5, 6, 7, -1, -2, -3]))
        .prop_filter("nonzero", |(a, _, b, _, _)| *a != 0 || *b != 0)
        .prop_map(|(a, ad, b, bd, d)| {
            QuadraticElement::new(BigRational::new(a.into(), ad.into()), BigRational::new(b.into(), bd.into()), d.into())
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn petho_deweger_dominates_largest_solution(u in 0.0f64..1e6, v in 0.0f64..1e3, h in 1u32..=6) {
        let x0 = largest_solution(u, v, h as i32);
        let b = petho_deweger_bound(&Interval::from_f64(u, 128), &Interval::from_f64(v, 128), h).unwrap();
        prop_assert!(x0 < b.to_f64(), "u={u} v={v} h={h} x0={x0} bound={}", b.to_f64());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn height_of_product_is_subadditive(x in quad(), y in quad()) {
        let y = QuadraticElement::new(y.a, y.b, x.d.clone());
        let lhs = x.mul(&y).height(P).unwrap();
        let rhs = &x.height(P).unwrap() + &y.height(P).unwrap();
        prop_assert!(lhs.lo() <= &rhs.hi().add(&slack()));
    }

    #[test]
    fn height_of_sum_is_bounded(x in quad(), y in quad()) {
        let y = QuadraticElement::new(y.a, y.b, x.d.clone());
        let lhs = x.add(&y).height(P).unwrap();
        let ln2 = Interval::from_int(2, P).ln().unwrap();
        let rhs = &(&ln2 + &x.height(P).unwrap()) + &y.height(P).unwrap();
        prop_assert!(lhs.lo() <= &rhs.hi().add(&slack()));
    }

    #[test]
    fn height_of_power_scales(x in quad(), e in -4i64..=4) {
        let lhs = x.pow(e).height(P).unwrap();
        let rhs = &Interval::from_int(e.abs(), P) * &x.height(P).unwrap();
        let tol = Dyadic::one().ldexp(-60);
        prop_assert!(lhs.lo() <= &rhs.hi().add(&tol) && rhs.lo() <= &lhs.hi().add(&tol));
    }

    #[test]
    fn log_star_is_monotone(a in 1e-6f64..1e6, b in 1e-6f64..1e6) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let la = log_star(&Interval::from_f64(lo, 128)).unwrap();
        let lb = log_star(&Interval::from_f64(hi, 128)).unwrap();
        prop_assert!(la.lo() <= lb.hi());
        prop_assert!(!la.is_negative() && !lb.is_negative());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn factoring_round_trips(w in prop::sample::select(vec![1i64, -1, 3, -3, 11, 77, -91]),
                             z in prop::collection::vec(0u32..40, 3)) {
        let primes: Vec<BigInt> = vec![2.into(), 5.into(), 13.into()];
        let mut v = BigInt::from(w);
        for (p, &e) in primes.iter().zip(&z) {
            v *= num_traits::pow(p.clone(), e as usize);
        }
        let got = factor_over_primes(&v, &w.into(), &primes).unwrap().unwrap();
        prop_assert_eq!(got, z.iter().map(|&e| e as u64).collect::<Vec<_>>());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn terms_follow_the_recurrence(a in prop::collection::vec(-5i64..=5, 2..=4),
                                   u0 in prop::collection::vec(-5i64..=5, 4)) {
        let d = a.len();
        let mut a = a;
        if a[d - 1] == 0 { a[d - 1] = 1; }
        let spec = match RecurrenceSpec::from_i64s(&a, &u0[..d]) { Ok(s) => s, Err(_) => return Ok(()) };
        let t = spec.terms(40);
        for n in d..40 {
            let expect: BigInt = (1..=d).map(|i| BigInt::from(a[i - 1]) * &t[n - i]).sum();
            prop_assert_eq!(&t[n], &expect);
            prop_assert_eq!(&spec.term(n), &expect);
        }
    }

    #[test]
    fn matveev_is_decreasing(d in 1u64..6, t in 1usize..4, a in 0.2f64..5.0, b in 1.0f64..1e6) {
        let mk = |d: u64, t: usize, a: f64, b: f64| MatveevInput {
            d,
            a: vec![Interval::from_f64(a, 128); t],
            b: Interval::from_f64(b, 128),
        };
        let base = matveev_log_lower_bound(&mk(d, t, a, b)).unwrap();
        for other in [mk(d + 1, t, a, b), mk(d, t + 1, a, b), mk(d, t, 2.0 * a, b), mk(d, t, a, 2.0 * b)] {
            prop_assert!(matveev_log_lower_bound(&other).unwrap().certainly_lt(&base));
        }
    }
}

#[test]
fn prime_heights_are_logs() {
    for p in [2i64, 3, 5, 7, 101] {
        let eta = AlgebraicNumber::rational(&BigRational::from_integer(p.into()), 256).unwrap();
        let h = abs_log_height(&eta, 256).unwrap();
        assert!(h.overlaps(&Interval::from_int(p, 256).ln().unwrap()));
        assert!(h.width_f64() < 1e-60);
    }
    let phi = AlgebraicNumber::new(
        &effbound::poly::IntPoly::from_i64s(&[-1, -1, 1]),
        Complex64::new(1.6, 0.0),
        256,
    )
    .unwrap();
    assert!((abs_log_height(&phi, 256).unwrap().to_f64() - 0.5 * 1.618033988749895f64.ln()).abs() < 1e-15);
}

#[test]
fn roots_are_roots_and_decisions_are_stable() {
    let specs: [(&[i64], &[i64]); 4] =
        [(&[1, 1], &[0, 1]), (&[1, 1, 1], &[0, 1, 1]), (&[2, 1], &[0, 1]), (&[1, 0, 1, 1], &[0, 0, 1, 2])];
    for (a, u0) in specs {
        let spec = RecurrenceSpec::from_i64s(a, u0).unwrap();
        let lo = analyze_spectrum(&spec, &SpectralConfig::with_precision(128));
        let hi = analyze_spectrum(&spec, &SpectralConfig::with_precision(512));
        match (lo, hi) {
            (Ok(lo), Ok(hi)) => {
                for r in &hi.roots {
                    assert!(hi.polynomial.eval_complex(&r.to_complex()).contains_zero());
                }
                assert_eq!(lo.degree_bound, hi.degree_bound);
                assert!(lo.alpha.overlaps(&hi.alpha));
                assert!(hi.alpha.width_f64() <= lo.alpha.width_f64());
                assert!(lo.h_alpha.overlaps(&hi.h_alpha));
            }
            (Err(a), Err(b)) => assert_eq!(std::mem::discriminant(&a), std::mem::discriminant(&b)),
            (a, b) => panic!("decision changed with precision: {:?} vs {:?}", a.is_ok(), b.is_ok()),
        }
    }
}
