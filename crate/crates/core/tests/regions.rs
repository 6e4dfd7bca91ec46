mod common;

use common::q;
use ibeta::exactnum::{isolate_roots, Field, IntPoly, RationalInterval, Sign};
use ibeta::transitivity::{candidate_regions, in_region, region_bounds, transitivity_verdict, RegionId};
use ibeta::Params;

fn power_ok(params: &Params, n: u32) -> bool {
    let bn = params.beta().pow(n as i64).unwrap();
    let f = params.field();
    (&bn - f.one()).sign() == Sign::Positive && (f.from_int(2) - &bn).sign() != Sign::Negative
}

#[test]
fn verdicts_are_symmetric_and_witnesses_respect_the_power_bound() {
    for b in 101..200 {
        if b % 7 != 0 {
            continue;
        }
        let beta = q(b, 100);
        for a in 1..20 {
            let alpha = (q(2, 1) - &beta) * q(a, 20);
            let params = Params::from_rationals(&beta, &alpha).unwrap();
            let v = transitivity_verdict(&params);
            let w = transitivity_verdict(&params.mirror());
            assert_eq!(v.transitive, w.transitive, "β = {beta}, α = {alpha}");
            if let Some(r) = v.witness {
                assert!(power_ok(&params, r.n()));
                // The mirrored point lies in the mirrored region.
                assert!(in_region(&params.mirror(), RegionId::new(r.n() - r.k(), r.n()).unwrap()));
            }
            for r in candidate_regions(&params) {
                assert!(power_ok(&params, r.n()));
            }
        }
    }
}

#[test]
fn bounds_pinch_where_beta_to_the_n_is_two() {
    for n in 2..=5u32 {
        let mut c = vec![0i64; n as usize + 1];
        c[0] = -2;
        c[n as usize] = 1;
        let beta = isolate_roots(&IntPoly::from_i64s(&c), &RationalInterval::from_ints(1, 2))[0].clone();
        let f = Field::new(beta);
        let params = Params::new(&f, f.from_rational_value(q(1, 4))).unwrap();
        let r = RegionId::new(1, n).unwrap();
        let (lo, hi) = region_bounds(&params, r);
        assert_eq!(lo, hi, "n = {n}");
        let at = Params::new(&f, lo.clone()).unwrap();
        assert!(in_region(&at, r));
        let off = Params::new(&f, &lo + &f.from_rational_value(q(1, 10_000))).unwrap();
        assert!(!in_region(&off, r));
    }
}
