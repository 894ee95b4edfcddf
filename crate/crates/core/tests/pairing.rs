use sgff_core::pairing::{verify_det_identity, Partition};
use sgff_core::scalars::{rat, Fp, Rational};

#[test]
fn det_identity_two_by_two_exact() {
    let r = verify_det_identity::<Rational>(2, 2, &rat(2, 5), 0, 0).unwrap();
    assert!(r.holds, "{r:?}");
}

#[test]
fn det_identity_three_two_random() {
    let r = verify_det_identity::<Fp>(3, 2, &Fp::new(7), 3, 11).unwrap();
    assert!(r.holds, "{r:?}");
}

#[test]
fn odd_k_flips_the_sign() {
    let r = verify_det_identity::<Fp>(3, 3, &Fp::new(7), 2, 5).unwrap();
    assert_eq!(r.sign, Some(-1));
}

#[test]
fn partitions_are_balanced() {
    for n in 1..=3 {
        let all = Partition::all(n);
        assert_eq!(all.len(), [2, 6, 20][n - 1]);
        assert!(all.iter().all(|p| p.minus.len() == n && p.plus.len() == n));
    }
}
