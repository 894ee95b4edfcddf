//! Acceptance criteria, one line per criterion.  Runs without the libtest harness
//! so the verdict lines are always printed.

use sgff_core::bethe::{dwpf_check, fit_c_q};
use sgff_core::exact_residue::{compute_asymptotics, d_big, res_big, split_residues, Coeffs, Which};
use sgff_core::fermions::{
    apply_bare_determinant, apply_bare_sequential, c_invariants, c_poly, shift_identity, FermionWord, WordContext,
};
use sgff_core::laurent::LaurentPoly;
use sgff_core::nullvec::{
    generate_null_family, half_bases, circ_pairing, reduced_space_dimension, verify_null, Chirality, NullFamily,
};
use sgff_core::pairing::{ell_basis, omega0_pm_identity, verify_det_identity, Partition};
use sgff_core::scalars::{pit_sample, rat, AlphaLine, Complex256, Consts, Fp, ParameterPoint, Rational, Scalar};
use sgff_core::towers::{check_recurrence, CheckMode, Layout, Primary, ShiftedPrimary};
use sgff_core::virasoro::{
    cft_constants, dictionary_check, kac_alpha, null_table, null_table_consistent, singular_vector,
    w4_reference_coefficient, DictionaryId, Nu,
};
use sgff_core::Result;
use std::process::ExitCode;
use std::time::{Duration, Instant};

type Outcome = Result<(bool, String)>;

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn nu() -> Rational {
    rat(2, 5)
}

fn c1_towers() -> Outcome {
    let lay = Layout::new(3, 6, 0, 0);
    let mut bad = Vec::new();
    for m in [0i64, 1, -1] {
        let src = ShiftedPrimary { m };
        for n in 1..=2 {
            if !check_recurrence::<Rational, _>(&src, &lay, n, CheckMode::Formal)?.holds {
                bad.push(format!("m={m} n={n}"));
            }
        }
        for seed in 0..3 {
            if !check_recurrence::<Rational, _>(&src, &lay, 3, CheckMode::Pit { seed })?.holds {
                bad.push(format!("m={m} n=3 seed={seed}"));
            }
        }
    }
    let primary = (1..=2).all(|n| {
        check_recurrence::<Rational, _>(&Primary, &lay, n, CheckMode::Formal).is_ok_and(|v| v.holds)
    });
    Ok((bad.is_empty() && primary, format!("M0, M1, M-1: 2 formal levels + 3 samples at n=3; failures {bad:?}")))
}

fn c2_c_poly() -> Outcome {
    let lay = Layout::new(2, 6, 1, 1);
    let nu = nu();
    let mut ok = true;
    for n in 1..=3 {
        ok &= c_invariants(&lay, n, &nu)?.all_hold();
    }
    let roots = lay.formal_roots::<Rational>(1);
    let c = c_poly(&lay, lay.z[0], lay.s[0], &roots, &nu)?;
    let v = |i| lay.var::<Rational>(i);
    let (b1, b2, z) = (v(lay.b[0]), v(lay.b[1]), v(lay.z[0]));
    let want = (&(&(&b1 + &b2) * &(&b1 * &b2)) * &z).scale(&-(Rational::one() / nu));
    let c1 = c == want;
    Ok((ok && c1, format!("invariants n<=3: {ok}; C1 closed form: {c1}")))
}

fn c3_determinant() -> Outcome {
    let bare = ["psi*0(Z1)", "psi*0(Z2)", "chi*0(X1)", "chi*0(X2)"];
    let nu = nu();
    let mut count = 0;
    let mut bad = Vec::new();
    for n in 0..=2 {
        let lay = Layout::for_words(n.max(1), 2);
        let roots = lay.formal_roots::<Rational>(n);
        for a in bare {
            for b in bare.into_iter().filter(|&b| b != a) {
                let w = FermionWord::parse(&format!("{a} {b}"))?;
                let det = apply_bare_determinant(&lay, &w, &roots, &nu)?;
                let same = match apply_bare_sequential(&lay, &w, &roots, &nu)? {
                    Some(seq) => det.same_as(&seq),
                    None => det.num.is_zero(),
                };
                count += 1;
                if !same {
                    bad.push(format!("n={n} {w}"));
                }
            }
        }
    }
    Ok((bad.is_empty(), format!("{count} words, mismatches {bad:?}")))
}

fn c4_shift() -> Outcome {
    let c = Consts::<Rational>::generic(&nu(), AlphaLine::Generic, 11);
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for n in 0..=3 {
        let lay = Layout::for_words(n.max(1), 2);
        let ctx = WordContext::new(&lay, lay.formal_roots(n), &c, 8)?;
        let p = shift_identity(&ctx, 1)?;
        plus.push(p.dressed_exact && p.modified_matches && p.certificate_valid);
        let m = shift_identity(&ctx, -1)?;
        minus.push((m.sign, m.certificate_valid, m.modified_matches));
    }
    let plus_ok = plus.iter().all(|&b| b);
    let minus_ok = minus.iter().all(|&(s, cert, modm)| s == Some(1) && cert && modm);
    Ok((
        plus_ok && minus_ok,
        format!("m=+1 per n: {plus:?}; m=-1 (sign, certificate, modified) per n: {minus:?}, expected sign +1"),
    ))
}

fn c5_residues() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    let ell: Coeffs<Rational> = [(0, Rational::one())].into_iter().collect();
    for n in 1..=3usize {
        let c = Consts::<Rational>::generic(&nu(), AlphaLine::Generic, 5 + n as u64);
        let vals = pit_sample::<Rational>(30 + n as u64, 2 * n);
        let r1 = split_residues(&ell, 1, &vals, &c.fq, &c.fq.powi(4 * n as i64)?)?;
        ok &= r1.get(&0) == Some(&rat(-1, 1));
        let lay = Layout::new(1, 2 * n, 1, 1);
        let roots = lay.const_roots(&vals);
        let series = compute_asymptotics(&lay.vars, &roots, &roots, 6, &c)?;
        let sigma1: Rational = vals.iter().cloned().sum();
        let oracle = sigma1 / (c.fq.clone() * c.fq.clone() + Rational::one());
        ok &= series.x_plus[1].constant_term() == oracle;
        let r2 = split_residues(&ell, 2, &vals, &c.fq, &c.fq.powi(4 * n as i64 + 4)?)?;
        ok &= r2.get(&-1) == Some(&-oracle);
        let s = lay.s[0];
        for t in 0..10u64 {
            let coeffs = pit_sample::<Rational>(1000 * n as u64 + t, 4);
            let mut z = LaurentPoly::zero(&lay.vars);
            for (d, k) in (-3..=0).zip(coeffs) {
                z = &z + &LaurentPoly::var_pow(&lay.vars, s, d).scale(&k);
            }
            let d = d_big(&z, s, &roots, &Rational::one(), &c.big_q)?;
            for which in [Which::Plus, Which::Minus] {
                ok &= res_big(&d, s, &series, which)?.is_zero();
            }
        }
        notes.push(format!("n={n}:{ok}"));
    }
    Ok((ok, format!("res n1 = -1, res n2 = -x1+, Res±D1[Z] = 0 (10 Z, K=6): {}", notes.join(" "))))
}

fn c6_hhh() -> Outcome {
    let exact = verify_det_identity::<Rational>(2, 2, &nu(), 0, 0)?;
    let pit = verify_det_identity::<Fp>(3, 2, &Fp::from_rational(&nu()), 3, 13)?;
    Ok((exact.holds && pit.holds, format!("(2,2) symbolic sign {:?}; (3,2) 3 samples sign {:?}", exact.sign, pit.sign)))
}

fn c7_omega0() -> Outcome {
    let points = [(rat(2, 5), rat(3, 7)), (rat(3, 7), rat(5, 11)), (rat(5, 9), rat(2, 9))];
    let mut worst = f64::NEG_INFINITY;
    let mut ok = true;
    for (i, (nu, alpha)) in points.iter().enumerate() {
        let p = ParameterPoint::new(nu.clone(), Some(alpha.clone()))?;
        let c = Consts::<Complex256>::at_point(&p)?;
        for n in 1..=2 {
            let lay = Layout::new(n, 2 * n, 1, 1);
            let roots = lay.const_roots(&pit_sample::<Complex256>(i as u64 + 10 * n as u64, 2 * n));
            let r = omega0_pm_identity(&lay, &roots, &c, alpha, 6, 100.0)?;
            ok &= r.holds;
            worst = worst.max(r.plus_error_log2).max(r.minus_error_log2);
        }
    }
    Ok((ok, format!("3 points, n<=2, order 6, worst relative error 2^{worst:.1}")))
}

fn c8_nullvec() -> Outcome {
    let nu = nu();
    let mut total = 0;
    let mut bad = Vec::new();
    for m in 0..=1 {
        for ch in [Chirality::Right, Chirality::Left] {
            for t in generate_null_family(m, ch, 5)? {
                let exact = verify_null::<Rational>(&t, &[1, 2], &nu, 0, 2)?;
                let pit = verify_null::<Fp>(&t, &[3], &nu, 3, 7)?;
                total += 1;
                if !(exact.holds && pit.holds) {
                    bad.push(t.base.clone());
                }
            }
        }
    }
    let families = {
        let right = generate_null_family(1, Chirality::Right, 5)?;
        let left = generate_null_family(1, Chirality::Left, 5)?;
        right.iter().any(|t| t.family == NullFamily::CEven)
            && right.iter().any(|t| t.family == NullFamily::ChiOne)
            && left.iter().any(|t| t.family == NullFamily::PsiBarOne)
    };
    let mut circ = true;
    for n in 2..=3 {
        let lay = Layout::new(n, 2 * n, 1, 1);
        let vals = pit_sample::<Rational>(21, 2 * n + 1);
        let roots = lay.const_roots(&vals[..2 * n]);
        let fq = &vals[2 * n];
        let parts = Partition::all(n);
        let hb = half_bases(&lay, &roots, &parts[0], fq)?;
        circ &= hb.decomposition_ok;
        for p in &parts[1..] {
            let b = ell_basis(&lay, lay.s[0], &roots, p, &Rational::one(), fq)?;
            for i in 1..n {
                for j in 1..n {
                    circ &= circ_pairing(&b.ell[i], &b.ell[j], &hb)?.is_zero();
                }
            }
        }
    }
    let dims = (reduced_space_dimension(2, 4)?, reduced_space_dimension(3, 4)?);
    Ok((
        bad.is_empty() && families && circ && dims == (2, 5),
        format!("{total} templates (exact n<=2, 3 samples n=3), failures {bad:?}; l∘l=0: {circ}; dims {dims:?}"),
    ))
}

fn c9_bethe() -> Outcome {
    let mut izergin = true;
    for n in 1..=2 {
        for s in 0..3 {
            let v = pit_sample::<Rational>(10 * n as u64 + s, 4 * n + 1);
            izergin &= dwpf_check(&v[..2 * n], &v[2 * n..4 * n], &v[4 * n])?.agree;
        }
    }
    let mut plucker = true;
    for n in 2..=3 {
        let f = fit_c_q(n, 5, &Fp::from_i64(7), &Fp::from_i64(12345), 3)?;
        plucker &= f.decomposable && f.proportional && f.sample_independent;
    }
    Ok((izergin && plucker, format!("Izergin = direct (n<=2): {izergin}; Plücker n=2,3 at 5 points: {plucker}")))
}

fn c10_virasoro() -> Outcome {
    let nu = Nu::w();
    let a12 = kac_alpha(0, &nu)?;
    let w2 = singular_vector(2, &a12, &nu)?;
    let w2_ok = w2.terms.len() == 2
        && w2.coeff(&[2]) == Nu::one()
        && w2.coeff(&[1, 1]) == -(Nu::one() - nu.clone()).inv().expect("1 - ν ≠ 0");
    let a14 = kac_alpha(1, &nu)?;
    let w4_ok = cft_constants(&a14, &nu)?.psi_coefficient(-1) == -w4_reference_coefficient();
    let lw2 = dictionary_check(DictionaryId::Psi31VsLw2);
    let table = null_table(8)?;
    let table_ok = table.len() == 10 && null_table_consistent(&table)?;
    Ok((
        w2_ok && w4_ok && lw2.holds && table_ok,
        format!("w2: {w2_ok}; w4 coefficient: {w4_ok}; Ψ31 vs l-2 w2: {}; null table to level 8: {table_ok}", lw2.holds),
    ))
}

fn criteria() -> Vec<Criterion> {
    let s = Duration::from_secs;
    vec![
        Criterion { id: 1, name: "tower recurrence", limit: s(5), run: c1_towers },
        Criterion { id: 2, name: "C-polynomial invariants", limit: s(1), run: c2_c_poly },
        Criterion { id: 3, name: "determinant vs iterated action", limit: s(10), run: c3_determinant },
        Criterion { id: 4, name: "shift identities at m = 1", limit: s(30), run: c4_shift },
        Criterion { id: 5, name: "residues", limit: s(10), run: c5_residues },
        Criterion { id: 6, name: "determinant pairing identity", limit: s(60), run: c6_hhh },
        Criterion { id: 7, name: "omega0 expansions", limit: s(30), run: c7_omega0 },
        Criterion { id: 8, name: "null vectors", limit: s(120), run: c8_nullvec },
        Criterion { id: 9, name: "Izergin and Plücker", limit: s(60), run: c9_bethe },
        Criterion { id: 10, name: "Virasoro", limit: s(10), run: c10_virasoro },
    ]
}

fn main() -> ExitCode {
    let filter: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for c in criteria().into_iter().filter(|c| filter.is_empty() || filter.contains(&c.id)) {
        let start = Instant::now();
        let out = (c.run)();
        let took = start.elapsed();
        let (ok, detail) = match out {
            Ok((ok, d)) => (ok && took <= c.limit, d),
            Err(e) => (false, format!("error: {e}")),
        };
        if !ok {
            failed += 1;
        }
        let verdict = if ok { "PASS" } else { "FAIL" };
        println!("{verdict} [{:>2}] {} ({:.2?} / {:?}) {detail}", c.id, c.name, took, c.limit);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criterion(s) failed");
        ExitCode::FAILURE
    }
}
