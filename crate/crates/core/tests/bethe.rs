use proptest::prelude::*;
use sgff_core::bethe::*;
use sgff_core::scalars::{pit_sample, rat, Complex256, Fp, Rational, Scalar};

#[test]
fn c_operators_commute() {
    for sites in 2..=4 {
        let v = pit_sample::<Fp>(sites as u64, sites + 3);
        let (b, t1, t2, q) = (&v[..sites], &v[sites], &v[sites + 1], &v[sites + 2]);
        let c1 = monodromy_c(t1, b, q).unwrap();
        let c2 = monodromy_c(t2, b, q).unwrap();
        assert!(c1.mul(&c2).sub(&c2.mul(&c1)).data.iter().all(|x| x.is_zero()), "{sites} sites");
    }
}

#[test]
fn hlba_transfer_matrices_commute() {
    let v = pit_sample::<Fp>(17, 8);
    let (b, q, x) = (&v[..4], &v[6], &v[7]);
    let t1 = hlba_transfer(&v[4], x, b, q).unwrap();
    let t2 = hlba_transfer(&v[5], x, b, q).unwrap();
    assert!(t1.mul(&t2).sub(&t2.mul(&t1)).data.iter().all(|x| x.is_zero()));
    assert_eq!(t1.weight_shift(), Some(0));
}

#[test]
fn izergin_matches_direct_exactly() {
    for n in 1..=2 {
        for s in 0..3 {
            let v = pit_sample::<Rational>(10 * n as u64 + s, 4 * n + 1);
            let c = dwpf_check(&v[..2 * n], &v[2 * n..4 * n], &v[4 * n]).unwrap();
            assert!(c.agree, "{c:?}");
        }
    }
}

#[test]
fn izergin_matches_direct_in_high_precision() {
    let cx = |p: i64, q: i64| Complex256::from_rational(&rat(p, q));
    let q = cx(3, 5) + Complex256::imag_unit().unwrap() * cx(4, 5);
    let betas = [cx(1, 1), cx(3, 2), cx(-2, 3), cx(5, 4)];
    let taus = [cx(7, 3), cx(-1, 5), cx(9, 7), cx(2, 9)];
    for n in 1..=2 {
        let c = dwpf_check(&taus[..2 * n], &betas[..2 * n], &q).unwrap();
        assert!(c.agree, "{c:?}");
    }
}

#[test]
fn coinciding_roots_by_perturbation() {
    let cx = |p: i64, q: i64| Complex256::from_rational(&rat(p, q));
    let q = cx(3, 5) + Complex256::imag_unit().unwrap() * cx(4, 5);
    let betas = [cx(1, 1), cx(3, 2), cx(-2, 3), cx(5, 4)];
    let taus = [cx(7, 3), cx(7, 3), cx(9, 7), cx(2, 9)];
    assert!(dwpf_izergin(&taus, &betas, &q).is_err());
    let direct = dwpf_direct(&taus, &betas, &q).unwrap();
    let eps = Complex256::from_rational(&rat(1, 1 << 62)) * Complex256::from_rational(&rat(1, 1 << 62));
    let limit = dwpf_izergin_limit(&taus, &betas, &q, &eps).unwrap();
    let diff = (limit - direct.clone()).log2_abs();
    assert!(diff <= direct.log2_abs() - 100.0, "diff 2^{diff}");
}

#[test]
fn single_partition_at_one() {
    let v = pit_sample::<Fp>(3, 3);
    let r = ell_from_bethe(&v[..1], &v[1..], &Fp::from_i64(5), &Fp::from_i64(11)).unwrap().result;
    assert!(r.decomposable && r.proportional && r.constant.is_none());
}

#[test]
fn ell_is_decomposable_for_random_roots() {
    for n in 2..=3 {
        let fit = fit_c_q(n, 5, &Fp::from_i64(7), &Fp::from_i64(12345), 3).unwrap();
        assert!(fit.decomposable && fit.proportional && fit.sample_independent, "{fit:?}");
    }
}

#[test]
fn constant_is_independent_of_a() {
    let q = Fp::from_i64(4321);
    let v = pit_sample::<Fp>(77, 6);
    let c = |a: i64| ell_from_bethe(&v[..2], &v[2..], &Fp::from_i64(a), &q).unwrap().constant.unwrap();
    assert_eq!(c(3), c(19));
}

#[test]
fn a_equal_one_kills_the_sum() {
    let v = pit_sample::<Fp>(78, 6);
    let r = ell_from_bethe(&v[..2], &v[2..], &Fp::one(), &Fp::from_i64(9)).unwrap().result;
    assert_eq!(r.nonzero_coordinates, 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn izergin_equals_direct(seed in 0u64..1_000_000, sites in 1usize..=4) {
        let v = pit_sample::<Fp>(seed, 2 * sites + 1);
        let c = dwpf_check(&v[..sites], &v[sites..2 * sites], &v[2 * sites]).unwrap();
        prop_assert!(c.agree);
    }

    #[test]
    fn s_matrix_conserves_weight(seed in 0u64..1_000_000) {
        let v = pit_sample::<Fp>(seed, 3);
        let s = s_matrix_tilde(&v[0], &v[1], &v[2]).unwrap();
        for (i, row) in s.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                let w = |k: usize| (k as i32 & 1) + (k as i32 >> 1);
                prop_assert!(x.is_zero() || w(i) == w(j));
            }
        }
    }

    #[test]
    fn c_moves_weight_by_two(seed in 0u64..1_000_000, sites in 1usize..=3) {
        let v = pit_sample::<Fp>(seed, sites + 2);
        let c = monodromy_c(&v[0], &v[1..=sites], &v[sites + 1]).unwrap();
        prop_assert_eq!(c.weight_shift(), Some(2));
    }
}
