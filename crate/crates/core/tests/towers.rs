use proptest::prelude::*;
use sgff_core::laurent::LaurentPoly;
use sgff_core::scalars::{pit_sample, Fp, Rational, Scalar};
use sgff_core::towers::*;

fn lay() -> Layout {
    Layout::new(3, 6, 0, 0)
}

#[test]
fn primary_and_shifts_are_towers() {
    let lay = lay();
    for m in [0, 1, -1] {
        let src = ShiftedPrimary { m };
        for n in 1..=2 {
            let v = check_recurrence::<Rational, _>(&src, &lay, n, CheckMode::Formal).unwrap();
            assert!(v.holds, "m = {m}, n = {n}");
        }
        for seed in 0..3 {
            let v = check_recurrence::<Rational, _>(&src, &lay, 3, CheckMode::Pit { seed }).unwrap();
            assert!(v.holds && v.witness.is_none(), "m = {m}, seed {seed}");
        }
    }
    assert!(check_recurrence::<Rational, _>(&Primary, &lay, 2, CheckMode::Formal).unwrap().holds);
}

#[test]
fn unsigned_shift_breaks_the_recurrence() {
    struct Unsigned;
    impl TowerSource<Rational> for Unsigned {
        fn charge(&self) -> i64 {
            0
        }
        fn component(&self, lay: &Layout, n: usize, roots: &[LaurentPoly<Rational>]) -> sgff_core::Result<Option<TowerComponent<Rational>>> {
            let src = ShiftedPrimary { m: 1 };
            let c = TowerSource::<Rational>::component(&src, lay, n, roots)?;
            Ok(c.map(|c| c.scale(&Rational::from_i64(src.sign(n)))))
        }
    }
    let v = check_recurrence::<Rational, _>(&Unsigned, &lay(), 2, CheckMode::Formal).unwrap();
    assert!(!v.holds);
    assert!(v.witness.is_some_and(|w| !w.is_zero()));
}

#[test]
fn recurrence_needs_positive_n() {
    assert!(check_recurrence::<Rational, _>(&Primary, &lay(), 0, CheckMode::Formal).is_err());
}

#[test]
fn stored_tower_replays_its_source() {
    let lay = lay();
    let t = Tower::<Rational>::from_source(&ShiftedPrimary { m: -1 }, &lay, 2, "<Phi>").unwrap();
    assert_eq!(t.n_max(), 2);
    assert!(check_recurrence::<Rational, _>(&t, &lay, 2, CheckMode::Formal).unwrap().holds);
    assert!(t.get(5).is_err());
}

#[test]
fn im_series_matches_root_ratio() {
    for n in 1..=2 {
        let lay = Layout::new(1, 2 * n, 1, 1);
        let roots = lay.const_roots(&pit_sample::<Rational>(n as u64, 2 * n));
        assert!(check_im_consistency(&lay, &roots, 5).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn components_are_alternating(m in -2i64..=2, n in 1usize..=3, seed in 0u64..10_000) {
        let lay = lay();
        let roots = lay.const_roots(&pit_sample::<Fp>(seed, 2 * n));
        let c = TowerSource::<Fp>::component(&ShiftedPrimary { m }, &lay, n, &roots).unwrap().unwrap();
        for i in 0..n {
            for j in i + 1..n {
                let swapped = c.num.swap_vars(lay.s[i], lay.s[j]);
                prop_assert_eq!(swapped, -&c.num);
            }
        }
    }

    #[test]
    fn recurrence_holds_at_random_points(m in -2i64..=2, n in 1usize..=3, seed in 0u64..10_000) {
        let v = check_recurrence::<Fp, _>(&ShiftedPrimary { m }, &lay(), n, CheckMode::Pit { seed }).unwrap();
        prop_assert!(v.holds);
    }
}
