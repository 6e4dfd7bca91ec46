mod common;

use common::q;
use ibeta::constructions::{family_params, FamilyIndex};
use ibeta::dynamics::{kneading_pair, project, step, tau_expansion, tau_tilde_expansion, Status, Variant};
use ibeta::exactnum::{isolate_roots, Field, IntPoly, RationalInterval, Sign};
use ibeta::Params;
use proptest::prelude::*;

fn field(coeffs: &[i64]) -> Field {
    Field::new(isolate_roots(&IntPoly::from_i64s(coeffs), &RationalInterval::from_ints(1, 2))[0].clone())
}

fn sample_params() -> Vec<Params> {
    let mut out = Vec::new();
    for f in [field(&[-1, -1, 1]), field(&[-1, -1, -1, 1]), field(&[-1, 0, -1, 0, 1])] {
        let room = f.from_int(2) - f.beta();
        for j in 1..8 {
            out.push(Params::new(&f, room.scale(&q(j, 8))).unwrap());
        }
    }
    out
}

#[test]
fn orbits_stay_in_their_intervals() {
    for params in sample_params() {
        let f = params.field();
        for j in 0..=10 {
            for variant in [Variant::Plus, Variant::Minus] {
                let mut x = f.from_rational_value(q(j, 10));
                for _ in 0..50 {
                    let (_, y) = step(&params, &x, variant).unwrap();
                    assert_ne!(y.sign(), Sign::Negative);
                    assert_ne!((f.one() - &y).sign(), Sign::Negative);
                    x = y;
                }
            }
        }
        // Extended model: the endpoints are fixed and interior points stay inside.
        let (lo, hi) = params.extended_domain();
        for j in 0..=10 {
            let mut x = &lo + &(&hi - &lo).scale(&q(j, 10));
            for _ in 0..30 {
                let s = if x.compare(params.p()).unwrap().is_le() { 0 } else { 1 };
                x = &(&x * params.beta()) + &(params.alpha() - &f.from_int(s));
                assert!(x.compare(&lo).unwrap().is_ge() && x.compare(&hi).unwrap().is_le());
            }
            assert!(tau_tilde_expansion(&params, &x, Variant::Minus, 64).is_ok());
        }
    }
}

#[test]
fn projection_inverts_expansion() {
    for params in sample_params() {
        let f = params.field();
        for j in 0..=12 {
            let x = f.from_rational_value(q(j, 12));
            for variant in [Variant::Plus, Variant::Minus] {
                let res = tau_expansion(&params, &x, variant, 400).unwrap();
                if let Some(w) = res.word() {
                    assert_eq!(project(&params, w), x);
                }
            }
        }
    }
}

#[test]
fn kneading_words_start_with_01_and_10() {
    for params in sample_params() {
        let (minus, plus) = kneading_pair(&params, 64);
        assert_eq!(minus.expansion.prefix(2).to_string(), "01");
        assert_eq!(plus.expansion.prefix(2).to_string(), "10");
    }
}

#[test]
fn periodic_certificates_return_to_p() {
    let mut points = sample_params();
    for (n, k) in [(2, 0), (3, 1), (2, 2)] {
        points.push(family_params(FamilyIndex::new(n, k).unwrap()));
    }
    for params in points {
        let (minus, plus) = kneading_pair(&params, 600);
        for (res, variant) in [(minus, Variant::Minus), (plus, Variant::Plus)] {
            if res.status != Status::Periodic {
                continue;
            }
            // After the first step the orbit leaves p; `cycle_len` steps bring it back.
            let mut x = params.p().clone();
            for i in 0..res.cycle_len {
                let s = res.expansion.symbol(i).unwrap();
                x = &(&x * params.beta()) + &(params.alpha() - &params.field().from_int(s as i64));
            }
            assert_eq!(&x, params.p(), "{variant:?}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn mirror_swaps_and_stars_invariants(bn in 11i64..20, num in 1i64..20) {
        let beta = q(bn, 10);
        let alpha = (q(2, 1) - &beta) * q(num, 20);
        let params = Params::from_rationals(&beta, &alpha).unwrap();
        let (m1, p1) = kneading_pair(&params, 200);
        let (m2, p2) = kneading_pair(&params.mirror(), 200);
        prop_assert_eq!(m1.expansion, p2.expansion.star());
        prop_assert_eq!(p1.expansion, m2.expansion.star());
        prop_assert_eq!(m1.status, p2.status);
    }
}
