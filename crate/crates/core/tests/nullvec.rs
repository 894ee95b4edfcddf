use sgff_core::error::SgffError;
use sgff_core::fermions::FermionWord;
use sgff_core::nullvec::{
    c_even_identities, c_even_wedge_check, catalan, circ_pairing, generate_null_family, half_bases, lr_image, psibar1_kernel,
    reduced_space_dimension, verify_null, verify_null_on_line, Chirality, NullFamily,
};
use sgff_core::scalars::AlphaLine;
use sgff_core::pairing::{ell_basis, Partition};
use sgff_core::scalars::{pit_sample, rat, Fp, Rational, Scalar};
use sgff_core::towers::Layout;

#[test]
fn ell_circ_ell_vanishes() {
    for n in 2..=3 {
        let lay = Layout::new(n, 2 * n, 1, 1);
        let vals = pit_sample::<Rational>(21, 2 * n + 1);
        let roots = lay.const_roots(&vals[..2 * n]);
        let fq = &vals[2 * n];
        let parts = Partition::all(n);
        let hb = half_bases(&lay, &roots, &parts[0], fq).unwrap();
        assert!(hb.decomposition_ok);
        for p in &parts[1..] {
            let b = ell_basis(&lay, lay.s[0], &roots, p, &Rational::from_i64(1), fq).unwrap();
            for i in 1..n {
                for j in 1..n {
                    assert!(circ_pairing(&b.ell[i], &b.ell[j], &hb).unwrap().is_zero(), "n={n} {p:?} {i} {j}");
                }
            }
        }
    }
}

#[test]
fn reduced_dimension_is_catalan() {
    assert_eq!(reduced_space_dimension(2, 4).unwrap(), 2);
    assert_eq!(reduced_space_dimension(3, 4).unwrap(), 5);
    assert_eq!(catalan(3), 5);
}

#[test]
fn psibar1_kernel_is_exact() {
    for n in 1..=3 {
        let k = psibar1_kernel::<Rational>(n, &rat(2, 5), 3).unwrap();
        assert!(k.c_minus_linear_vanishes && k.c_linear_is_exact, "{k:?}");
    }
}

#[test]
fn c_even_identities_hold() {
    let c = c_even_identities::<Rational>(2, &rat(2, 5), 8, 3).unwrap();
    assert!(c.no_cross_terms, "{c:?}");
    assert!(c.even_kernel_identity, "{c:?}");
}

fn all_templates(m: usize, ch: Chirality) -> Vec<sgff_core::nullvec::NullTemplate> {
    generate_null_family(m, ch, 5).unwrap()
}

#[test]
fn right_families_certify_by_sampling() {
    let nu = rat(2, 5);
    for m in 0..=1 {
        let ts = all_templates(m, Chirality::Right);
        assert!(ts.iter().any(|t| t.family == NullFamily::CEven));
        assert!(ts.iter().any(|t| t.family == NullFamily::ChiOne));
        for t in ts {
            let v = verify_null::<Fp>(&t, &[1, 2, 3], &nu, 1, 5).unwrap();
            assert!(v.holds, "{v:?}");
        }
    }
}

#[test]
fn left_families_certify_by_sampling() {
    let nu = rat(3, 7);
    for m in 0..=1 {
        let ts = all_templates(m, Chirality::Left);
        assert!(ts.iter().any(|t| t.family == NullFamily::CEvenBar));
        assert!(ts.iter().any(|t| t.family == NullFamily::PsiBarOne));
        for t in ts {
            let v = verify_null::<Fp>(&t, &[1, 2, 3], &nu, 1, 11).unwrap();
            assert!(v.holds, "{v:?}");
        }
    }
}

#[test]
fn symbolic_certificates_at_two() {
    let nu = rat(2, 5);
    let start = std::time::Instant::now();
    for (m, ch) in [(0, Chirality::Right), (0, Chirality::Left), (1, Chirality::Right), (1, Chirality::Left)] {
        for family in [NullFamily::PsiBarOne, NullFamily::ChiOne, NullFamily::CEven, NullFamily::CEvenBar] {
            if let Some(t) = all_templates(m, ch).into_iter().find(|t| t.family == family) {
                let v = verify_null::<Rational>(&t, &[2], &nu, 0, 2).unwrap();
                assert!(v.holds, "{v:?}");
            }
        }
    }
    eprintln!("symbolic runs: {:?}", start.elapsed());
}

#[test]
fn chi_one_mirrors_to_psibar_one() {
    let key = |w: &FermionWord| {
        let mut f: Vec<String> = w.to_string().split(' ').map(String::from).collect();
        f.sort();
        f.join(" ")
    };
    let mut right: Vec<String> = all_templates(0, Chirality::Right)
        .into_iter()
        .filter(|t| t.family == NullFamily::ChiOne)
        .map(|t| key(&lr_image(&FermionWord::parse(&t.base).unwrap())))
        .collect();
    let mut left: Vec<String> = all_templates(0, Chirality::Left)
        .into_iter()
        .filter(|t| t.family == NullFamily::PsiBarOne && t.base.contains("bar"))
        .map(|t| key(&FermionWord::parse(&t.base).unwrap()))
        .collect();
    right.sort();
    left.sort();
    assert_eq!(right, left);
}

#[test]
fn even_multiples_are_unsupported() {
    let t = &all_templates(0, Chirality::Right)[0];
    let err = verify_null_on_line::<Fp>(t, &[1], &rat(2, 5), AlphaLine::OnLine { k: 2, m: 0 }, 1, 1).unwrap_err();
    assert!(matches!(err, SgffError::Unsupported(_)), "{err}");
}

#[test]
fn c_even_pair_acts_as_riemann_wedge() {
    for (n, w) in [
        (2, "chi*[3] chi*[1]"),
        (3, "chi*[3] chi*[1]"),
        (3, "chi*[5] chi*[3]"),
        (3, "psi*[1] chi*[5] chi*[3] chi*[1]"),
    ] {
        let word = FermionWord::parse(w).unwrap();
        let r = c_even_wedge_check::<Fp>(&word, n, &rat(2, 5), 12, 4).unwrap();
        assert!(r.holds && r.exact_rest_is_d_one, "{r:?}");
    }
    let exact = c_even_wedge_check::<Rational>(&FermionWord::parse("chi*[3] chi*[1]").unwrap(), 2, &rat(2, 5), 12, 4).unwrap();
    assert!(exact.holds && exact.exact_rest_is_d_one);
}

#[test]
fn c_even_wedge_rejects_high_modes() {
    let word = FermionWord::parse("chi*[5] chi*[1]").unwrap();
    assert!(c_even_wedge_check::<Fp>(&word, 2, &rat(2, 5), 12, 4).is_err());
}
