use proptest::prelude::*;
use sgff_core::fermions::*;
use sgff_core::scalars::{rat, AlphaLine, Consts, Rational};
use sgff_core::towers::Layout;

const BARE: [&str; 4] = ["psi*0(Z1)", "psi*0(Z2)", "chi*0(X1)", "chi*0(X2)"];

fn two_factor_words() -> Vec<FermionWord> {
    let mut out = Vec::new();
    for a in BARE {
        for b in BARE.into_iter().filter(|&b| b != a) {
            out.push(FermionWord::parse(&format!("{a} {b}")).unwrap());
        }
    }
    out
}

#[test]
fn c_polynomial_invariants() {
    let lay = Layout::new(2, 6, 1, 1);
    for n in 1..=3 {
        let inv = c_invariants(&lay, n, &rat(3, 7)).unwrap();
        assert!(inv.all_hold(), "{inv:?}");
    }
}

#[test]
fn c_one_closed_form() {
    let lay = Layout::new(1, 2, 1, 1);
    let nu = rat(5, 9);
    let c = c_poly(&lay, lay.z[0], lay.s[0], &lay.formal_roots(1), &nu).unwrap();
    let v = |i| lay.var::<Rational>(i);
    let (b1, b2, z) = (v(lay.b[0]), v(lay.b[1]), v(lay.z[0]));
    let want = (&(&(&b1 + &b2) * &(&b1 * &b2)) * &z).scale(&-(rat(1, 1) / nu));
    assert_eq!(c, want);
}

#[test]
fn determinant_formula_matches_iteration() {
    let nu = rat(2, 5);
    for n in 0..=2 {
        let lay = Layout::for_words(n.max(1), 2);
        let roots = lay.formal_roots::<Rational>(n);
        for w in two_factor_words() {
            let det = apply_bare_determinant(&lay, &w, &roots, &nu).unwrap();
            match apply_bare_sequential(&lay, &w, &roots, &nu).unwrap() {
                Some(seq) => assert!(det.same_as(&seq), "n = {n}: {w}"),
                None => assert!(det.num.is_zero(), "n = {n}: {w}"),
            }
        }
    }
}

#[test]
fn repeated_bare_field_vanishes() {
    let lay = Layout::for_words(1, 2);
    let roots = lay.formal_roots::<Rational>(1);
    let w = FermionWord::parse("psi*0(Z1) psi*0(Z1)").unwrap();
    assert!(apply_bare_determinant(&lay, &w, &roots, &rat(2, 5)).unwrap().num.is_zero());
}

#[test]
fn shift_by_one_holds_with_certificate() {
    let c = Consts::<Rational>::generic(&rat(2, 5), AlphaLine::Generic, 23);
    for n in 0..=2 {
        let lay = Layout::for_words(n.max(1), 2);
        let ctx = WordContext::new(&lay, lay.formal_roots(n), &c, 8).unwrap();
        let id = shift_identity(&ctx, 1).unwrap();
        assert!(id.dressed_exact && id.modified_matches && id.certificate_valid, "n = {n}");
    }
}

#[test]
fn shift_by_minus_one_has_opposite_sign() {
    let c = Consts::<Rational>::generic(&rat(3, 7), AlphaLine::Generic, 29);
    for n in 0..=2 {
        let lay = Layout::for_words(n.max(1), 2);
        let ctx = WordContext::new(&lay, lay.formal_roots(n), &c, 8).unwrap();
        let id = shift_identity(&ctx, -1).unwrap();
        assert_eq!(id.sign, Some(-1), "n = {n}");
        assert!(!id.dressed_exact);
    }
    let lay = Layout::for_words(1, 2);
    let ctx = WordContext::new(&lay, lay.formal_roots(1), &c, 8).unwrap();
    assert!(shift_identity(&ctx, 2).is_err());
}

#[test]
fn word_parsing_rejects_mixtures() {
    assert!(FermionWord::parse("psi*0(Z1) chi*[1]").is_err());
    assert!(FermionWord::parse("phi*[1]").is_err());
    let w = FermionWord::parse("psi*[3] chibar*[1]").unwrap();
    assert_eq!(FermionWord::parse(&w.to_string()).unwrap(), w);
    assert_eq!(w.weight(), rat(1, 1));
}

fn creation_word() -> impl Strategy<Value = String> {
    let tok = prop_oneof![
        (0i32..3).prop_map(|k| format!("psi*[{}]", 2 * k + 1)),
        (0i32..3).prop_map(|k| format!("chi*[{}]", 2 * k + 1)),
        (0i32..3).prop_map(|k| format!("psi[{}]", 2 * k + 1)),
        (0i32..3).prop_map(|k| format!("chi[{}]", 2 * k + 1)),
    ];
    prop::collection::vec(tok, 0..5).prop_map(|v| v.join(" "))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_order_preserves_charge(s in creation_word()) {
        let w = FermionWord::parse(&s).unwrap();
        for (sign, t) in w.normal_order().unwrap() {
            prop_assert!(sign == 1 || sign == -1);
            prop_assert!(t.is_creation_only());
            prop_assert_eq!(t.charge(), w.charge());
        }
    }

    #[test]
    fn normal_order_is_idempotent(s in creation_word()) {
        let w = FermionWord::parse(&s).unwrap();
        for (_, t) in w.normal_order().unwrap() {
            let again = t.normal_order().unwrap();
            prop_assert_eq!(again.len(), 1);
            prop_assert_eq!(&again[0].1, &t);
        }
    }
}
