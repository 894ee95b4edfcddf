use proptest::prelude::*;
use sgff_core::exact_residue::*;
use sgff_core::laurent::LaurentPoly;
use sgff_core::scalars::{pit_sample, rat, AlphaLine, Consts, Fp, Rational, Scalar};
use sgff_core::towers::Layout;

fn consts<F: Scalar>(seed: u64) -> Consts<F> {
    Consts::generic(&rat(2, 5), AlphaLine::Generic, seed)
}

fn random_z<F: Scalar>(lay: &Layout, slot: usize, lo: i32, hi: i32, seed: u64) -> LaurentPoly<F> {
    let v = pit_sample::<F>(seed, (hi - lo + 1) as usize);
    let mut z = LaurentPoly::zero(&lay.vars);
    for (d, c) in (lo..=hi).zip(v) {
        z = &z + &LaurentPoly::var_pow(&lay.vars, slot, d).scale(&c);
    }
    z
}

#[test]
fn exact_forms_at_unit_a_have_no_residue() {
    let order = 6;
    for n in 1..=3 {
        let lay = Layout::new(1, 2 * n, 1, 1);
        let c = consts::<Rational>(3);
        let vals = pit_sample::<Rational>(40 + n as u64, 2 * n);
        let roots = lay.const_roots(&vals);
        let series = compute_asymptotics(&lay.vars, &roots, &roots, order, &c).unwrap();
        let s = lay.s[0];
        for seed in 0..10 {
            let z = random_z(&lay, s, -3, 0, 100 * n as u64 + seed);
            let d = d_big(&z, s, &roots, &Rational::one(), &c.big_q).unwrap();
            for which in [Which::Plus, Which::Minus] {
                assert!(res_big(&d, s, &series, which).unwrap().is_zero(), "n = {n}, seed {seed}, {which:?}");
            }
        }
    }
}

#[test]
fn truncation_is_reported() {
    let lay = Layout::new(1, 2, 1, 1);
    let c = consts::<Rational>(3);
    let roots = lay.const_roots(&pit_sample::<Rational>(1, 2));
    let series = compute_asymptotics(&lay.vars, &roots, &roots, 2, &c).unwrap();
    let high = LaurentPoly::var_pow(&lay.vars, lay.s[0], 9);
    assert!(res_big(&high, lay.s[0], &series, Which::Plus).is_err());
}

#[test]
fn second_residue_at_shifted_pole() {
    for n in 1..=3 {
        let c = consts::<Rational>(9);
        let vals = pit_sample::<Rational>(n as u64, 2 * n);
        let ell: Coeffs<Rational> = [(0, Rational::one())].into_iter().collect();
        let w0 = c.fq.powi(4 * n as i64 + 4).unwrap();
        let res = split_residues(&ell, 2, &vals, &c.fq, &w0).unwrap();
        let lay = Layout::new(1, 2 * n, 1, 1);
        let roots = lay.const_roots(&vals);
        let series = compute_asymptotics(&lay.vars, &roots, &roots, 2, &c).unwrap();
        let x1 = series.x_plus[1].constant_term();
        let sigma1: Rational = vals.iter().cloned().sum();
        assert_eq!(x1, sigma1 / (c.fq.clone() * c.fq.clone() + Rational::one()));
        assert_eq!(res.get(&-1).cloned().unwrap(), -x1, "n = {n}");
    }
}

#[test]
fn first_residue_is_minus_one() {
    for n in 1..=3 {
        let c = consts::<Rational>(5);
        let vals = pit_sample::<Rational>(7 + n as u64, 2 * n);
        let ell: Coeffs<Rational> = [(0, Rational::one())].into_iter().collect();
        let w0 = c.fq.powi(4 * n as i64).unwrap();
        let res = split_residues(&ell, 1, &vals, &c.fq, &w0).unwrap();
        assert_eq!(res.get(&0).cloned().unwrap(), rat(-1, 1), "n = {n}");
    }
}

#[test]
fn asymptotics_are_symmetric_in_the_roots() {
    let lay = Layout::new(1, 4, 1, 1);
    let c = consts::<Fp>(2);
    let vals = pit_sample::<Fp>(8, 4);
    let mut rev = vals.clone();
    rev.reverse();
    let a = compute_asymptotics(&lay.vars, &lay.const_roots(&vals), &lay.const_roots(&vals), 5, &c).unwrap();
    let b = compute_asymptotics(&lay.vars, &lay.const_roots(&rev), &lay.const_roots(&rev), 5, &c).unwrap();
    for k in 0..=5 {
        assert_eq!(a.x_plus[k], b.x_plus[k]);
        assert_eq!(a.x_minus[k], b.x_minus[k]);
        assert_eq!(a.big_x_plus[k], b.big_x_plus[k]);
        assert_eq!(a.big_x_minus[k], b.big_x_minus[k]);
    }
}

fn alternating_pair<F: Scalar>(lay: &Layout, seed: u64) -> LaurentPoly<F> {
    let (s1, s2) = (lay.s[0], lay.s[1]);
    let v = pit_sample::<F>(seed, 12);
    let mut f = LaurentPoly::zero(&lay.vars);
    for (i, c) in v.into_iter().enumerate() {
        let e1 = i as i32 % 4 - 1;
        let e2 = i as i32 / 4 + 1;
        f = &f + &(&LaurentPoly::var_pow(&lay.vars, s1, e1) * &LaurentPoly::var_pow(&lay.vars, s2, e2)).scale(&c);
    }
    &f - &f.swap_vars(s1, s2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn window_reduction_is_certified_and_idempotent(seed in 0u64..100_000, n in 1usize..=2, lo in -4i32..0, hi in 0i32..8) {
        let lay = Layout::new(1, 2 * n, 1, 1);
        let c = consts::<Fp>(seed);
        let roots = lay.const_roots(&pit_sample::<Fp>(seed + 1, 2 * n));
        let s = lay.s[0];
        let l = random_z(&lay, s, lo, hi, seed + 2);
        let red = reduce_to_window(&l, &[s], &roots, &c.big_a, &c.big_q).unwrap();
        prop_assert_eq!(red.reconstruct(&roots, &c.big_a, &c.big_q).unwrap(), l);
        if !red.reduced.is_zero() {
            prop_assert!(red.reduced.min_degree(s).unwrap() >= 0);
            prop_assert!(red.reduced.max_degree(s).unwrap() < 2 * n as i32);
        }
        let again = reduce_to_window(&red.reduced, &[s], &roots, &c.big_a, &c.big_q).unwrap();
        prop_assert!(again.certificate.is_empty());
        prop_assert_eq!(again.reduced, red.reduced);
    }

    #[test]
    fn frak_reduction_is_certified(seed in 0u64..100_000, lo in -3i32..0, hi in 0i32..6) {
        let lay = Layout::new(1, 2, 1, 1);
        let c = consts::<Fp>(seed);
        let roots = lay.const_roots(&pit_sample::<Fp>(seed + 1, 2));
        let s = lay.s[0];
        let l = random_z(&lay, s, lo, hi, seed + 2);
        let red = reduce_frak_to_window(&l, &[s], &roots, &c.a, &c.fq).unwrap();
        prop_assert_eq!(red.reconstruct(&roots, &c.a, &c.fq).unwrap(), l);
    }

    #[test]
    fn exact_forms_vanish_under_both_residues(seed in 0u64..100_000, n in 1usize..=2) {
        let lay = Layout::new(1, 2 * n, 1, 1);
        let c = consts::<Fp>(seed);
        let roots = lay.const_roots(&pit_sample::<Fp>(seed + 1, 2 * n));
        let series = compute_asymptotics(&lay.vars, &roots, &roots, 6, &c).unwrap();
        let s = lay.s[0];
        let z = random_z(&lay, s, -2, 1, seed + 3);
        let d = d_big(&z, s, &roots, &Fp::one(), &c.big_q).unwrap();
        prop_assert!(res_big(&d, s, &series, Which::Plus).unwrap().is_zero());
        prop_assert!(res_big(&d, s, &series, Which::Minus).unwrap().is_zero());
    }

    #[test]
    fn residues_square_to_zero(seed in 0u64..100_000, n in 1usize..=2) {
        let lay = Layout::new(2, 2 * n, 1, 1);
        let c = consts::<Fp>(seed);
        let roots = lay.const_roots(&pit_sample::<Fp>(seed + 1, 2 * n));
        let series = compute_asymptotics(&lay.vars, &roots, &roots, 8, &c).unwrap();
        let f = alternating_pair::<Fp>(&lay, seed + 5);
        let slots = [lay.s[0], lay.s[1]];
        for which in [Which::Plus, Which::Minus] {
            let once = res_big_wedge(&f, &slots, &series, which).unwrap();
            let twice = res_big(&once, slots[0], &series, which).unwrap();
            prop_assert!(twice.is_zero(), "{:?}", which);
        }
    }
}
