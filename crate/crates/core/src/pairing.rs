//! The formal pairing of `𝔰`-polynomials with `S`-polynomials, the ℓ-basis of a
//! balanced partition, the ω-polynomial and the determinant identities built on them.
//!
//! `𝔰`-polynomials live in the `S`-slots of the layout; the two sides never meet in
//! one polynomial, so sharing the variable names is harmless.

use crate::error::{Result, SgffError};
use crate::exact_residue::{reduce_frak_to_window, reduce_to_window};
use crate::fermions::{apply_bare_determinant, c_pm, c_poly, Branch, FermionWord};
use crate::laurent::{det, permutations, wedge, wedge_basis, LaurentPoly};
use crate::scalars::{pit_sample, Consts, Scalar};
use crate::towers::{Layout, Primary, TowerComponent, TowerSource};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;

/// `I(m, l)`, the pairing of `𝔰^m` with `S^l`.
pub type Symbol = (i32, i32);

/// A polynomial in the free symbols `I(m,l)` with polynomial coefficients.
/// Keys are sorted multisets of symbols.
#[derive(Clone, Debug)]
pub struct FormalPairingValue<F: Scalar> {
    terms: BTreeMap<Vec<Symbol>, LaurentPoly<F>>,
}

impl<F: Scalar> PartialEq for FormalPairingValue<F> {
    fn eq(&self, o: &Self) -> bool {
        self.sub(o).is_zero()
    }
}

impl<F: Scalar> FormalPairingValue<F> {
    pub fn zero() -> Self {
        FormalPairingValue { terms: BTreeMap::new() }
    }

    pub fn symbol(m: i32, l: i32, coeff: LaurentPoly<F>) -> Self {
        let mut v = Self::zero();
        v.add_term(vec![(m, l)], coeff);
        v
    }

    pub fn terms(&self) -> &BTreeMap<Vec<Symbol>, LaurentPoly<F>> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, mut key: Vec<Symbol>, c: LaurentPoly<F>) {
        if c.is_zero() {
            return;
        }
        key.sort();
        match self.terms.remove(&key) {
            Some(old) => {
                let s = &old + &c;
                if !s.is_zero() {
                    self.terms.insert(key, s);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(k.clone(), -c);
        }
        out
    }

    pub fn scale(&self, c: &F) -> Self {
        let mut out = Self::zero();
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v.scale(c));
        }
        out
    }

    /// Renames every symbol `I(m,l) → I(m, l+k)`.
    pub fn shift_l(&self, k: i32) -> Self {
        let mut out = Self::zero();
        for (key, v) in &self.terms {
            out.add_term(key.iter().map(|&(m, l)| (m, l + k)).collect(), v.clone());
        }
        out
    }
}

impl<F: Scalar> fmt::Display for FormalPairingValue<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| {
                let syms: Vec<String> = k.iter().map(|(m, l)| format!("I({m},{l})")).collect();
                format!("({c})*{}", syms.join("*"))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<F: Scalar> Serialize for FormalPairingValue<F> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (k, c) in &self.terms {
            seq.serialize_element(&(k, c.to_string()))?;
        }
        seq.end()
    }
}

/// How the two arguments are prepared before expansion.
pub enum Backend<'a, F: Scalar> {
    /// Plain bilinear expansion.
    Formal,
    /// Both sides reduced to their degree windows first, so exact forms pair to zero.
    Reduced {
        frak_roots: &'a [LaurentPoly<F>],
        roots: &'a [LaurentPoly<F>],
        consts: &'a Consts<F>,
    },
}

/// `(ℓ, L)` for alternating `ℓ` in `l_slots` and `L` in `s_slots`: the sum over monomial
/// wedges of the determinants `det[I(m_i, l_j)]`.
pub fn pair<F: Scalar>(
    ell: &LaurentPoly<F>,
    l_slots: &[usize],
    big_l: &LaurentPoly<F>,
    s_slots: &[usize],
    backend: &Backend<'_, F>,
) -> Result<FormalPairingValue<F>> {
    if l_slots.len() != s_slots.len() {
        return Err(SgffError::Precondition(format!(
            "pairing needs matching arities, got {} and {}",
            l_slots.len(),
            s_slots.len()
        )));
    }
    let (ell, big_l) = match backend {
        Backend::Formal => (ell.clone(), big_l.clone()),
        Backend::Reduced { frak_roots, roots, consts } => (
            reduce_frak_to_window(ell, l_slots, frak_roots, &consts.a, &consts.fq)?.reduced,
            reduce_to_window(big_l, s_slots, roots, &consts.big_a, &consts.big_q)?.reduced,
        ),
    };
    let lw = wedge_basis(&ell, l_slots);
    let sw = wedge_basis(&big_l, s_slots);
    let perms = permutations(l_slots.len());
    let mut out = FormalPairingValue::zero();
    for (m, cm) in &lw {
        for (e, ce) in &sw {
            let c = cm * ce;
            for (p, sign) in &perms {
                let key: Vec<Symbol> = (0..m.len()).map(|i| (m[i], e[p[i]])).collect();
                out.add_term(key, c.scale(&F::from_i64(*sign)));
            }
        }
    }
    Ok(out)
}

/// `(ℓ_1∧…∧ℓ_n, L)` for abstract linear functionals with `(ℓ_r, S^s) = g(r, s)`.
pub fn pair_pure_wedge<F: Scalar>(
    big_l: &LaurentPoly<F>,
    s_slots: &[usize],
    g: impl Fn(usize, i32) -> Result<LaurentPoly<F>>,
) -> Result<LaurentPoly<F>> {
    let vars = big_l.vars();
    let mut acc = LaurentPoly::zero(vars);
    for (e, c) in wedge_basis(big_l, s_slots) {
        let m: Vec<Vec<LaurentPoly<F>>> = (0..s_slots.len())
            .map(|r| e.iter().map(|&s| g(r, s)).collect::<Result<_>>())
            .collect::<Result<_>>()?;
        acc = &acc + &(&c * &det(vars, &m));
    }
    Ok(acc)
}

// ---------------------------------------------------------------- ℓ-basis

/// A balanced partition `I⁻ ⊔ I⁺` of the root indices `0..2n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Partition {
    pub minus: Vec<usize>,
    pub plus: Vec<usize>,
}

impl Partition {
    pub fn new(minus: Vec<usize>, plus: Vec<usize>) -> Result<Self> {
        let n2 = minus.len() + plus.len();
        let mut all: Vec<usize> = minus.iter().chain(&plus).copied().collect();
        all.sort();
        if minus.len() != plus.len() || all != (0..n2).collect::<Vec<_>>() {
            return Err(SgffError::Precondition("partition must split 0..2n into equal halves".into()));
        }
        Ok(Partition { minus, plus })
    }

    /// Every balanced partition of `0..2n`, `I⁻` in lexicographic order.
    pub fn all(n: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        for mask in 0u32..(1 << (2 * n)) {
            if mask.count_ones() as usize != n {
                continue;
            }
            let minus = (0..2 * n).filter(|i| mask & (1 << i) != 0).collect();
            let plus = (0..2 * n).filter(|i| mask & (1 << i) == 0).collect();
            out.push(Partition { minus, plus });
        }
        out.sort_by(|a, b| a.minus.cmp(&b.minus));
        out
    }

    pub fn n(&self) -> usize {
        self.minus.len()
    }
}

/// The polynomials `ℓ_{I,0..n−1}` in one variable, with both consistency checks.
#[derive(Clone, Debug, Serialize)]
pub struct EllBasis<F: Scalar> {
    pub partition: Partition,
    pub n: usize,
    pub var: usize,
    pub ell: Vec<LaurentPoly<F>>,
    /// `Σ_i (𝔮²t)^{n−i} ℓ_i` equals the closed generating function.
    pub generating_ok: bool,
    /// `ℓ_0 = (a^{−1} − a)𝔮^{−2n} p_{I⁺}(𝔰𝔮²)`.
    pub ell0_ok: bool,
}

fn prod_linear<F: Scalar>(lay: &Layout, v: usize, roots: &[LaurentPoly<F>], idx: &[usize]) -> LaurentPoly<F> {
    let x = lay.var::<F>(v);
    idx.iter().fold(lay.one(), |acc, &j| &acc * &(&x - &roots[j]))
}

/// `[𝔰^{k} f]_≥`.
fn poly_part<F: Scalar>(lay: &Layout, f: &LaurentPoly<F>, v: usize, k: i32) -> LaurentPoly<F> {
    let mut e = vec![0; lay.vars.len()];
    e[v] = k;
    f.mul_monomial(&e, &F::one()).truncate(v, 0, i32::MAX)
}

/// Builds the ℓ-basis in variable `v` from the defining sums, and cross-checks it
/// against the generating function in `t = lay.t`.
pub fn ell_basis<F: Scalar>(
    lay: &Layout,
    v: usize,
    frak_roots: &[LaurentPoly<F>],
    partition: &Partition,
    a: &F,
    fq: &F,
) -> Result<EllBasis<F>> {
    let n = partition.n();
    if frak_roots.len() != 2 * n {
        return Err(SgffError::Precondition(format!("partition of {} roots needs {} roots", 2 * n, frak_roots.len())));
    }
    let a_inv = a.inv().ok_or_else(|| SgffError::Domain("a = 0".into()))?;
    let q2 = fq.clone() * fq.clone();
    let pm = prod_linear(lay, v, frak_roots, &partition.minus);
    let pp = prod_linear(lay, v, frak_roots, &partition.plus);
    let pp_q = pp.scale_var(v, &q2)?;
    let mut ell = Vec::with_capacity(n);
    for i in 0..n {
        let k = i as i32 - n as i32;
        let ppi = poly_part(lay, &pp, v, k);
        let pmi = poly_part(lay, &pm, v, k);
        let first = &pm * &(&ppi - &ppi.scale_var(v, &q2)?);
        let second = (&pp_q * &(&pmi - &pmi.scale_var(v, &q2)?.scale(&(a.clone() * a.clone())))).scale(&q2.powi(2 * k as i64 / 2)?);
        ell.push((&first + &second).scale(&a_inv));
    }

    let ell0 = pp_q.scale(&((a_inv.clone() - a.clone()) * q2.powi(-(n as i64))?));
    let ell0_ok = ell0 == ell[0];

    // (t − 𝔮²𝔰)(𝔮²t − 𝔰)(t − 𝔰)·Σ_i (𝔮²t)^{n−i}ℓ_i against the cleared closed form.
    let t = lay.var::<F>(lay.t);
    let s = lay.var::<F>(v);
    let qt = t.scale(&q2);
    let qs = s.scale(&q2);
    let mut lhs = lay.zero();
    for (i, li) in ell.iter().enumerate() {
        lhs = &lhs + &(&qt.pow((n - i) as u32) * li);
    }
    let d1 = &t - &qs;
    let d2 = &qt - &s;
    let d3 = &t - &s;
    lhs = &(&(&lhs * &d1) * &d2) * &d3;
    let p = &pm * &pp;
    let p_qs = p.scale_var(v, &q2)?;
    let pp_qt = pp.rename(v, lay.t).scale_var(lay.t, &q2)?;
    let pm_t = pm.rename(v, lay.t);
    let mut rhs = (&(&(&t * &d2) * &d3) * &p_qs).scale(a);
    rhs = &rhs - &(&(&(&qt * &d1) * &d3) * &p).scale(&a_inv);
    let bracket1 = &(&(&qt * &d1) * &d3) - &(&(&t * &d1) * &d2);
    rhs = &rhs + &(&(&pp_qt * &pm) * &bracket1).scale(&a_inv);
    let bracket2 = &(&(&t * &d1) * &d2).scale(&a_inv) - &(&(&t * &d2) * &d3).scale(a);
    rhs = &rhs + &(&(&pm_t * &pp_q) * &bracket2);
    let generating_ok = lhs == rhs;

    Ok(EllBasis { partition: partition.clone(), n, var: v, ell, generating_ok, ell0_ok })
}

impl<F: Scalar> EllBasis<F> {
    /// `ℓ_{I,0} ∧ … ∧ ℓ_{I,n−1}` in the given slots.
    pub fn wedge(&self, slots: &[usize]) -> LaurentPoly<F> {
        wedge(&self.ell, self.var, slots)
    }

    /// `ℓ_{I,1} ∧ … ∧ ℓ_{I,n−1}`.
    pub fn reduced_wedge(&self, slots: &[usize]) -> LaurentPoly<F> {
        if self.n == 1 {
            return LaurentPoly::one(self.ell[0].vars());
        }
        wedge(&self.ell[1..], self.var, slots)
    }
}

/// `(ℓ, L)_{α+kξ}` against `(−1)^{kn}(ℓ, L·ΠS_j^k)_α` in the formal model, where the
/// shift sends `a → (−1)^k a` and `I(m,l) → I(m,l+k)`.
#[derive(Clone, Debug, Serialize)]
pub struct ShiftCheck {
    pub n: usize,
    pub k: i32,
    pub holds: bool,
}

pub fn shift_alpha_check<F: Scalar>(
    lay: &Layout,
    frak_roots: &[LaurentPoly<F>],
    partition: &Partition,
    big_l: &LaurentPoly<F>,
    consts: &Consts<F>,
    k: i32,
) -> Result<ShiftCheck> {
    let n = partition.n();
    let slots = &lay.s[..n];
    let a_shift = if k.rem_euclid(2) == 1 { -consts.a.clone() } else { consts.a.clone() };
    let shifted = ell_basis(lay, slots[0], frak_roots, partition, &a_shift, &consts.fq)?.wedge(slots);
    let plain = ell_basis(lay, slots[0], frak_roots, partition, &consts.a, &consts.fq)?.wedge(slots);
    let lhs = pair(&shifted, slots, big_l, slots, &Backend::Formal)?.shift_l(k);
    let mut twist = vec![0; lay.vars.len()];
    for &s in slots {
        twist[s] = k;
    }
    let sign = if (k as i64 * n as i64).rem_euclid(2) == 0 { F::one() } else { -F::one() };
    let rhs = pair(&plain, slots, &big_l.mul_monomial(&twist, &F::one()), slots, &Backend::Formal)?.scale(&sign);
    Ok(ShiftCheck { n, k, holds: lhs == rhs })
}

// ---------------------------------------------------------------- ω-polynomial

/// The numerator of `L^{(n)}_{Z,X}`: the `(n+1)×(n+1)` determinant with first row
/// `(0, C(z,S_1), …)` and rows `(x^{2r−1}, S_j^{2r−1})`, over `P(−z)P(−x)`.
pub fn omega_polynomial<F: Scalar>(
    lay: &Layout,
    n: usize,
    z: usize,
    x: usize,
    roots: &[LaurentPoly<F>],
    nu: &F,
) -> Result<TowerComponent<F>> {
    if n == 0 {
        return Err(SgffError::Precondition("the ω-polynomial needs n ≥ 1".into()));
    }
    let slots = &lay.s[..n];
    let mut m = Vec::with_capacity(n + 1);
    let mut top = vec![lay.zero()];
    for &s in slots {
        top.push(c_poly(lay, z, s, roots, nu)?);
    }
    m.push(top);
    for r in 1..=n as i32 {
        let mut row = vec![LaurentPoly::var_pow(&lay.vars, x, 2 * r - 1)];
        row.extend(slots.iter().map(|&s| LaurentPoly::var_pow(&lay.vars, s, 2 * r - 1)));
        m.push(row);
    }
    let num = det(&lay.vars, &m);
    let den = &lay.p(z, -1, roots) * &lay.p(x, -1, roots);
    Ok(TowerComponent { l: n, n, num, den })
}

/// Outcome of the determinant identity over the free symbols `g_{r,s} = (ℓ_r, S^s)`.
#[derive(Clone, Debug, Serialize)]
pub struct DetIdentity {
    pub n: usize,
    pub k: usize,
    /// Fully symbolic, or the number of random evaluations.
    pub symbolic: bool,
    pub samples: usize,
    /// `ε` with `det[(ℓ,L_{Z_i,X_j})]·(ℓ,M_0)^{1−k}... = ε·(ℓ, ψ*…χ*M_0)` over all samples,
    /// or `None` when neither sign fits.
    pub sign: Option<i64>,
    /// The identity holds with `ε = +1`.
    pub holds: bool,
}

/// `det_{k×k}[(ℓ, L_{Z_i,X_j})/(ℓ,M_0)] = (ℓ, ψ*_0(Z_1)…ψ*_0(Z_k)χ*_0(X_k)…χ*_0(X_1)M_0)/(ℓ,M_0)`
/// with `ℓ` a pure wedge of abstract functionals.  `samples = 0` runs the full symbolic
/// expansion; otherwise every variable is replaced by random values, `samples` times.
pub fn verify_det_identity<F: Scalar>(n: usize, k: usize, nu: &F, samples: usize, seed: u64) -> Result<DetIdentity> {
    if k == 0 || k > n {
        return Err(SgffError::Precondition(format!("need 1 ≤ k ≤ n, got k = {k}, n = {n}")));
    }
    let g_names: Vec<String> = (1..=n).flat_map(|r| (0..2 * n).map(move |s| format!("g{r}_{s}"))).collect();
    let lay = Layout::with_extra(n, 2 * n, k, k, &g_names);
    let g_var = |r: usize, s: i32| -> Result<usize> {
        if !(0..2 * n as i32).contains(&s) {
            return Err(SgffError::Structure(format!("S^{s} lies outside the degree window")));
        }
        Ok(lay.extra[r * 2 * n + s as usize])
    };
    let word_text: Vec<String> = (1..=k)
        .map(|i| format!("psi*0(Z{i})"))
        .chain((1..=k).rev().map(|j| format!("chi*0(X{j})")))
        .collect();
    let word = FermionWord::parse(&word_text.join(" "))?;
    let slots = lay.s[..n].to_vec();

    let run = |roots: &[LaurentPoly<F>], point: Option<&[F]>| -> Result<(LaurentPoly<F>, LaurentPoly<F>)> {
        // Variables are evaluated (PIT) or kept (symbolic) before pairing.
        let fix = |p: &LaurentPoly<F>| -> Result<LaurentPoly<F>> {
            let Some(vals) = point else { return Ok(p.clone()) };
            let mut q = p.clone();
            for v in lay.z.iter().chain(&lay.x) {
                q = q.eval_var(*v, &vals[*v])?;
            }
            Ok(q)
        };
        let g = |r: usize, s: i32| -> Result<LaurentPoly<F>> {
            let v = g_var(r, s)?;
            Ok(match point {
                Some(vals) => lay.constant(vals[v].clone()),
                None => lay.var(v),
            })
        };
        let m0 = Primary.component(&lay, n, roots)?.expect("primary tower");
        let pm0 = pair_pure_wedge(&fix(&m0.num)?, &slots, g)?;
        let mut m = Vec::with_capacity(k);
        for i in 0..k {
            let mut row = Vec::with_capacity(k);
            for j in 0..k {
                let om = omega_polynomial(&lay, n, lay.z[i], lay.x[j], roots, nu)?;
                row.push(pair_pure_wedge(&fix(&om.num)?, &slots, g)?);
            }
            m.push(row);
        }
        let lhs = det(&lay.vars, &m);
        let full = apply_bare_determinant(&lay, &word, roots, nu)?;
        let mut rhs = pair_pure_wedge(&fix(&full.num)?, &slots, g)?;
        for _ in 1..k {
            rhs = &rhs * &pm0;
        }
        Ok((lhs, rhs))
    };

    let mut plus = true;
    let mut minus = true;
    if samples == 0 {
        let roots = lay.formal_roots::<F>(n);
        let (l, r) = run(&roots, None)?;
        plus = l == r;
        minus = l == -&r;
    } else {
        for t in 0..samples {
            let vals = pit_sample::<F>(seed.wrapping_add(t as u64), lay.vars.len());
            let roots = lay.const_roots(&lay.b.iter().map(|&b| vals[b].clone()).collect::<Vec<_>>());
            let (l, r) = run(&roots, Some(&vals))?;
            plus &= l.agrees_with(&r);
            minus &= l.agrees_with(&-&r);
        }
    }
    let sign = match (plus, minus) {
        (true, _) => Some(1),
        (false, true) => Some(-1),
        _ => None,
    };
    Ok(DetIdentity { n, k, symbolic: samples == 0, samples, sign, holds: sign == Some(1) })
}

// ---------------------------------------------------------------- ω_{0,±}

/// Order-by-order comparison of `δ⁻_ζ δ⁻_ξ` applied to the truncated cot series with
/// `C_±(Z,X)/(P(−Z)P(−X))`.
#[derive(Clone, Debug, Serialize)]
pub struct Omega0Check {
    pub n: usize,
    pub order: usize,
    /// `log2` of the relative error, `−∞` when exact.
    pub plus_error_log2: f64,
    pub minus_error_log2: f64,
    pub holds: bool,
}

/// `cot(πr)` from `exp(iπr)`.
fn cot_pi<F: Scalar>(r: &crate::scalars::Rational) -> Result<F> {
    let i = F::imag_unit().ok_or_else(|| SgffError::Unsupported(format!("{} has no imaginary unit", F::NAME)))?;
    let e = F::exp_i_pi(r).ok_or_else(|| SgffError::Unsupported(format!("exp(iπr) is not representable in {}", F::NAME)))?;
    let ei = e.inv().ok_or_else(|| SgffError::Domain("exp(iπr) = 0".into()))?;
    (i * (e.clone() + ei.clone())).div(&(e - ei))
}

/// Needs a backend with `exp(iπr)` (complex numbers); `consts` must come from
/// [`Consts::at_point`] at the given `alpha`.
pub fn omega0_pm_identity<F: Scalar>(
    lay: &Layout,
    roots: &[LaurentPoly<F>],
    consts: &Consts<F>,
    alpha: &crate::scalars::Rational,
    order: usize,
    tolerance_bits: f64,
) -> Result<Omega0Check> {
    let n = roots.len() / 2;
    let (z, x) = (lay.z[0], lay.x[0]);
    let nu = &consts.nu_exact;
    let one = crate::scalars::Rational::from_integer(1.into());
    // ζ → ζq acts as Z → Z·q^{1/ν} = Z·exp(iπ).
    let shift = F::exp_i_pi(&one).ok_or_else(|| SgffError::Unsupported("exp(iπ) not representable".into()))?;
    let i = F::imag_unit().ok_or_else(|| SgffError::Unsupported("no imaginary unit".into()))?;
    let pref = i.div(&(F::from_i64(4) * consts.nu.clone()))?;
    let pz = lay.p(z, 1, roots);
    let pmz = lay.p(z, -1, roots);
    let px = lay.p(x, 1, roots);
    let pmx = lay.p(x, -1, roots);
    // P(−Z)P(−X)·δ⁻_ζδ⁻_ξ f.
    let delta2 = |f: &LaurentPoly<F>| -> Result<LaurentPoly<F>> {
        let fz = f.scale_var(z, &shift)?;
        let fx = f.scale_var(x, &shift)?;
        let fzx = fz.scale_var(x, &shift)?;
        let t1 = &(&pmz * &pmx) * &fzx;
        let t2 = &(&pmz * &px) * &fz;
        let t3 = &(&pz * &pmx) * &fx;
        let t4 = &(&pz * &px) * f;
        Ok(&(&(&t1 - &t2) - &t3) + &t4)
    };
    let mut f_plus = lay.zero();
    let mut f_minus = lay.zero();
    for j in 0..=order as i64 {
        let sign = if j % 2 == 0 { F::one() } else { -F::one() };
        let jr = crate::scalars::Rational::from_integer(j.into());
        let two_nu = nu * crate::scalars::Rational::from_integer(2.into());
        let mut e = vec![0; lay.vars.len()];
        e[x] = j as i32;
        e[z] = -(j as i32);
        let c = cot_pi::<F>(&((alpha * nu + &jr) / &two_nu))?;
        f_plus = &f_plus + &LaurentPoly::monomial(&lay.vars, e.clone(), sign.clone() * c);
        if j >= 1 {
            let c = cot_pi::<F>(&((alpha * nu - &jr) / &two_nu))?;
            e[x] = -(j as i32);
            e[z] = j as i32;
            f_minus = &f_minus + &LaurentPoly::monomial(&lay.vars, e, sign * c);
        }
    }
    let lhs_plus = delta2(&f_plus)?.scale(&-pref.clone());
    let lhs_minus = delta2(&f_minus)?.scale(&pref);
    let rhs_plus = c_pm(lay, Branch::Plus, z, x, roots, consts, order as i32)?;
    let rhs_minus = c_pm(lay, Branch::Minus, z, x, roots, consts, order as i32)?;
    let ep = lhs_plus.rel_error_log2(&rhs_plus);
    let em = lhs_minus.rel_error_log2(&rhs_minus);
    Ok(Omega0Check { n, order, plus_error_log2: ep, minus_error_log2: em, holds: ep <= -tolerance_bits && em <= -tolerance_bits })
}
