use proptest::prelude::*;
use sgff_core::scalars::{rat, Rational, Scalar};
use sgff_core::virasoro::*;
use sgff_core::SgffError;

fn nu() -> Nu {
    Nu::w()
}

fn r(p: i64, q: i64) -> Nu {
    Nu::from_rational(&rat(p, q))
}

#[test]
fn w2_has_the_reference_form() {
    let a12 = kac_alpha(0, &nu()).unwrap();
    let w2 = singular_vector(2, &a12, &nu()).unwrap();
    assert_eq!(w2.coeff(&[2]), Nu::one());
    assert_eq!(w2.coeff(&[1, 1]), -(Nu::one() - nu()).inv().unwrap());
    assert_eq!(w2.terms.len(), 2);
}

#[test]
fn singular_vectors_are_killed_by_all_positive_modes() {
    for (level, m) in [(2u32, 0usize), (4, 1)] {
        let al = kac_alpha(m, &nu()).unwrap();
        let v = singular_vector(level, &al, &nu()).unwrap();
        let verma = Verma::at(&al, &nu()).unwrap();
        for k in 1..=level as i64 {
            assert!(verma.act(k, &v).is_zero(), "l_{k} at level {level}");
        }
    }
}

#[test]
fn level_four_is_unique_at_alpha_14() {
    let al = kac_alpha(1, &nu()).unwrap();
    assert_eq!(Verma::at(&al, &nu()).unwrap().singular_space(4).len(), 1);
    let w4 = singular_vector(4, &al, &nu()).unwrap();
    assert_eq!(w4.coeff(&[2, 2]), r(1, 2));
}

#[test]
fn w2_descendants_are_not_singular_at_generic_nu() {
    let a12 = kac_alpha(0, &nu()).unwrap();
    assert!(Verma::at(&a12, &nu()).unwrap().singular_space(4).is_empty());
}

#[test]
fn generic_alpha_has_no_level_two_vector() {
    let e = singular_vector(2, &r(7, 3), &nu()).unwrap_err();
    assert!(matches!(e, SgffError::Kac(_)));
}

#[test]
fn kac_line_sweep() {
    for (p, q) in [(1, 3), (2, 5), (3, 7), (5, 9), (1, 7), (4, 11)] {
        let nu = rat(p, q);
        let a12 = kac_alpha(0, &nu).unwrap();
        let a14 = kac_alpha(1, &nu).unwrap();
        let dim = |al: &Rational, lvl| Verma::at(al, &nu).unwrap().singular_space(lvl).len();
        assert_eq!(dim(&a12, 2), 1, "nu = {nu}");
        assert_eq!(dim(&a14, 4), 1, "nu = {nu}");
        // level 2 degenerates exactly at the roots of 16Δ² + 2(c−5)Δ + c
        for al in [a14.clone(), rat(13, 17), rat(p + 3, q + 1)] {
            let k = cft_constants(&al, &nu).unwrap();
            let kac2 = rat(16, 1) * &k.delta * &k.delta + rat(2, 1) * (&k.c - rat(5, 1)) * &k.delta + &k.c;
            assert_eq!(dim(&al, 2), usize::from(kac2.is_zero()), "nu = {nu}, alpha = {al}");
        }
        let generic = rat(13, 17);
        assert!(matches!(singular_vector(2, &generic, &nu), Err(SgffError::Kac(_))));
        assert!(matches!(singular_vector(4, &generic, &nu), Err(SgffError::Kac(_))));
    }
}

#[test]
fn cft_constant_limits() {
    let k = cft_constants(&Rational::from_integer(0.into()), &rat(1, 1000)).unwrap();
    assert!(k.delta.is_zero());
    assert!((k.c - Rational::from_integer(1.into())) < rat(1, 100_000));
}

#[test]
fn principal_branch_is_nonnegative() {
    let nu = rat(7, 8);
    let al = kac_alpha(1, &nu).unwrap();
    let d = principal_d(&al, &nu).unwrap();
    assert!(d >= Rational::from_integer(0.into()));
    let k = cft_constants(&al, &nu).unwrap();
    assert_eq!(d.clone() * d, k.d_squared);
}

#[test]
fn psi13_coefficient_at_alpha_14() {
    let al = kac_alpha(1, &nu()).unwrap();
    let k = cft_constants(&al, &nu()).unwrap();
    assert_eq!(k.psi_coefficient(-1), -w4_reference_coefficient());
}

#[test]
fn dictionary_registry_holds() {
    for id in DictionaryId::ALL {
        let c = dictionary_check(id);
        assert!(c.holds, "{}: {}", id.name(), c.detail);
        if let Some(b) = c.branch {
            assert_eq!(b, DBranch::Plus, "{}", id.name());
        }
    }
}

#[test]
fn null_table_rows() {
    let t = null_table(8).unwrap();
    assert_eq!(t.len(), 10);
    let row = |module: usize, level: u32| t.iter().find(|r| r.module == module && r.level == level).unwrap();
    let texts = |module, level| row(module, level).vectors.iter().map(|v| v.to_string()).collect::<Vec<_>>();
    assert_eq!(texts(2, 6), vec!["Ψ_{5,1}", "Ψ_{1,5} + [((-4)*ν^2 + 16)/((1)*ν^2 + -16)] Ψ_{3,3}"]);
    assert_eq!(texts(4, 4), vec!["Ψ_{1,3}"]);
    assert_eq!(texts(8, 8), vec!["Ψ_{1,7}"]);
    let comp = &row(2, 8).vectors[1].terms[1];
    let v2 = nu() * nu();
    assert_eq!(comp.coefficient, -(r(9, 1) * (v2.clone() - r(4, 1))) * (v2 - r(36, 1)).inv().unwrap());
    assert_eq!(null_table(4).unwrap().len(), 3);
}

#[test]
fn null_table_links_every_entry() {
    let t = null_table(8).unwrap();
    assert!(null_table_consistent(&t).unwrap());
    let w2l2 = &t[0].vectors[0];
    assert_eq!(w2l2.link.as_ref().unwrap().base, "chi*[3] chi*[1]");
}

#[test]
fn null_table_stops_at_eight() {
    assert!(matches!(null_table(9), Err(SgffError::Unsupported(_))));
}

#[test]
fn dictionary_names_round_trip() {
    for id in DictionaryId::ALL {
        assert_eq!(DictionaryId::parse(id.name()).unwrap(), id);
    }
    assert!(DictionaryId::parse("psi99").is_err());
}

fn monomial() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(1u32..4, 0..4).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn commutators_close(m in -3i64..=3, n in -3i64..=3, mono in monomial(), c in -20i64..20, h in -20i64..20) {
        let verma = Verma::new(rat(c, 3), rat(h, 7));
        let v = VermaVector::monomial(mono, Rational::from_integer(1.into()));
        prop_assert!(verma.commutator_defect(m, n, &v).is_zero());
    }

    #[test]
    fn lowering_adds_level(k in 1i64..5, mono in monomial()) {
        let verma = Verma::new(rat(1, 2), rat(1, 5));
        let v = VermaVector::monomial(mono, Rational::from_integer(1.into()));
        let w = verma.act(-k, &v);
        prop_assert!(w.terms.keys().all(|p| p.iter().sum::<u32>() == v.level + k as u32));
        prop_assert!(w.terms.keys().all(|p| p.windows(2).all(|x| x[0] >= x[1])));
    }
}
