//! Exact forms, reduction to the degree window `0..2n`, the asymptotic series of
//! the integration kernel, the residue functionals and the m/n split.

use crate::error::{Result, SgffError};
use crate::laurent::{elementary, p_of, LaurentPoly, Vars};
use crate::linalg::solve;
use crate::ratfunc::RatFunc;
use crate::scalars::{Consts, Scalar};
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    /// `𝔰`-variable, operator `D_a`.
    Frak,
    /// `S`-variable, operator `D_A`.
    Big,
}

#[derive(Clone, Debug)]
pub struct ExactForm<F> {
    pub side: Side,
    pub generator: LaurentPoly<F>,
    pub expanded: LaurentPoly<F>,
}

/// `D_A[Z](S) = Z(S)P(S) − A·Z(SQ)P(−S)` in variable `s`.
pub fn d_big<F: Scalar>(z: &LaurentPoly<F>, s: usize, roots: &[LaurentPoly<F>], big_a: &F, big_q: &F) -> Result<LaurentPoly<F>> {
    let vars = z.vars();
    let shifted = z.scale_var(s, big_q)?;
    Ok(&(z * &p_of(vars, s, 1, roots)) - &(&shifted * &p_of(vars, s, -1, roots)).scale(big_a))
}

/// `D_a[z](𝔰) = a^{−2}p(𝔰)z(𝔰) − p(𝔰𝔮²)z(𝔰𝔮⁴)` in variable `s`.
pub fn d_frak<F: Scalar>(z: &LaurentPoly<F>, s: usize, roots: &[LaurentPoly<F>], a: &F, fq: &F) -> Result<LaurentPoly<F>> {
    let vars = z.vars();
    let p = p_of(vars, s, 1, roots);
    let a2 = a.clone() * a.clone();
    let fq2 = fq.clone() * fq.clone();
    let first = (&p * z).scale(&a2.inv().ok_or_else(|| SgffError::Domain("a = 0".into()))?);
    let second = &p.scale_var(s, &fq2)? * &z.scale_var(s, &(fq2.clone() * fq2.clone()))?;
    Ok(&first - &second)
}

pub fn big_exact_form<F: Scalar>(z: &LaurentPoly<F>, s: usize, roots: &[LaurentPoly<F>], c: &Consts<F>) -> Result<ExactForm<F>> {
    Ok(ExactForm { side: Side::Big, generator: z.clone(), expanded: d_big(z, s, roots, &c.big_a, &c.big_q)? })
}

pub fn frak_exact_form<F: Scalar>(z: &LaurentPoly<F>, s: usize, roots: &[LaurentPoly<F>], c: &Consts<F>) -> Result<ExactForm<F>> {
    Ok(ExactForm { side: Side::Frak, generator: z.clone(), expanded: d_frak(z, s, roots, &c.a, &c.fq)? })
}

// ---------------------------------------------------------------- window reduction

/// One step of a reduction: `cofactor · D_A[S_slot^k]`.
#[derive(Clone, Debug)]
pub struct CertificateTerm<F> {
    pub slot: usize,
    pub k: i32,
    pub cofactor: LaurentPoly<F>,
}

#[derive(Clone, Debug)]
pub struct WindowReduction<F> {
    pub side: Side,
    pub reduced: LaurentPoly<F>,
    pub certificate: Vec<CertificateTerm<F>>,
}

impl<F: Scalar> WindowReduction<F> {
    /// `reduced + Σ cofactor·D[s^k]`, which must give back the input.  The constants
    /// are `(A, Q)` on the `S` side and `(a, 𝔮)` on the `𝔰` side.
    pub fn reconstruct(&self, roots: &[LaurentPoly<F>], c1: &F, c2: &F) -> Result<LaurentPoly<F>> {
        let vars = self.reduced.vars();
        let mut acc = self.reduced.clone();
        for t in &self.certificate {
            let g = LaurentPoly::var_pow(vars, t.slot, t.k);
            let d = match self.side {
                Side::Big => d_big(&g, t.slot, roots, c1, c2)?,
                Side::Frak => d_frak(&g, t.slot, roots, c1, c2)?,
            };
            acc = &acc + &(&t.cofactor * &d);
        }
        Ok(acc)
    }
}

/// Reduces every listed slot of `l` into the window `0 ≤ deg ≤ 2n−1` modulo
/// `Q`-exact forms, highest degrees first.  `roots` must be monomials.
pub fn reduce_to_window<F: Scalar>(
    l: &LaurentPoly<F>,
    slots: &[usize],
    roots: &[LaurentPoly<F>],
    big_a: &F,
    big_q: &F,
) -> Result<WindowReduction<F>> {
    // D_A[S^k] = Σ_j p_j (1 − A Q^k (−1)^j) S^{j+k}.
    let coef = |k: i32, j: i32| -> Result<F> {
        let aqk = big_a.clone() * big_q.powi(k as i64)?;
        Ok(if j % 2 == 0 { F::one() - aqk } else { F::one() + aqk })
    };
    reduce_generic(l, slots, roots, Side::Big, coef)
}

/// The same reduction modulo `q`-exact forms in `𝔰`.
pub fn reduce_frak_to_window<F: Scalar>(
    l: &LaurentPoly<F>,
    slots: &[usize],
    frak_roots: &[LaurentPoly<F>],
    a: &F,
    fq: &F,
) -> Result<WindowReduction<F>> {
    // D_a[𝔰^k] = Σ_j p_j (a^{−2} − 𝔮^{2j+4k}) 𝔰^{j+k}.
    let a_inv2 = (a.clone() * a.clone()).inv().ok_or_else(|| SgffError::Domain("a = 0".into()))?;
    let coef = |k: i32, j: i32| -> Result<F> { Ok(a_inv2.clone() - fq.powi((2 * j + 4 * k) as i64)?) };
    reduce_generic(l, slots, frak_roots, Side::Frak, coef)
}

fn reduce_generic<F: Scalar>(
    l: &LaurentPoly<F>,
    slots: &[usize],
    roots: &[LaurentPoly<F>],
    side: Side,
    coef: impl Fn(i32, i32) -> Result<F>,
) -> Result<WindowReduction<F>> {
    let vars = l.vars().clone();
    let two_n = roots.len() as i32;
    let p = elementary(&vars, roots);
    // P(S) = Σ_j p_j S^j with p_j = (−1)^{2n−j} e_{2n−j}.
    let pc: Vec<LaurentPoly<F>> = (0..=two_n)
        .map(|j| {
            let e = &p[(two_n - j) as usize];
            if (two_n - j) % 2 == 0 {
                e.clone()
            } else {
                -e
            }
        })
        .collect();
    let p0_inv = pc[0].monomial_inverse()?;
    let mut cur = l.clone();
    let mut cert = Vec::new();
    let resonance = |k: i32| SgffError::Resonance(format!("degenerate exact form D[s^{k}] in the {side:?} variable"));
    for &slot in slots {
        let mut parts = cur.split_by(slot);
        loop {
            let Some((&d, _)) = parts.iter().next_back() else { break };
            if d < two_n {
                break;
            }
            let c = parts.remove(&d).expect("present");
            let k = d - two_n;
            let li = coef(k, two_n)?.inv().ok_or_else(|| resonance(k))?;
            let factor = c.scale(&li);
            for j in 0..two_n {
                let t = (&factor * &pc[j as usize]).scale(&coef(k, j)?);
                sub_into(&mut parts, j + k, &t);
            }
            cert.push(CertificateTerm { slot, k, cofactor: factor });
        }
        loop {
            let Some((&d, _)) = parts.iter().next() else { break };
            if d >= 0 {
                break;
            }
            let c = parts.remove(&d).expect("present");
            let k = d;
            let li = coef(k, 0)?.inv().ok_or_else(|| resonance(k))?;
            let factor = (&c * &p0_inv).scale(&li);
            for j in 1..=two_n {
                let t = (&factor * &pc[j as usize]).scale(&coef(k, j)?);
                sub_into(&mut parts, j + k, &t);
            }
            cert.push(CertificateTerm { slot, k, cofactor: factor });
        }
        let mut next = LaurentPoly::zero(&vars);
        for (d, c) in parts {
            let mut e = vec![0; vars.len()];
            e[slot] = d;
            next = &next + &c.mul_monomial(&e, &F::one());
        }
        cur = next;
    }
    Ok(WindowReduction { side, reduced: cur, certificate: cert })
}

fn sub_into<F: Scalar>(parts: &mut BTreeMap<i32, LaurentPoly<F>>, d: i32, t: &LaurentPoly<F>) {
    if t.is_zero() {
        return;
    }
    let e = parts.entry(d).or_insert_with(|| LaurentPoly::zero(t.vars()));
    *e = &*e - t;
    if e.is_zero() {
        parts.remove(&d);
    }
}

// ---------------------------------------------------------------- asymptotics

/// The four asymptotic series.  The `S`-side coefficients are Laurent polynomials
/// in the `B`-roots, the `𝔰`-side ones in the `𝔟`-roots.
#[derive(Clone, Debug, Serialize)]
pub struct AsymptoticSeries<F: Scalar> {
    pub n: usize,
    pub order: usize,
    /// `x⁺_k`, coefficient of `𝔰^{−k}`.
    pub x_plus: Vec<LaurentPoly<F>>,
    /// `x⁻_k`, coefficient of `𝔰^{k}` inside the bracket.
    pub x_minus: Vec<LaurentPoly<F>>,
    /// `X⁺_k`, coefficient of `S^{−k}`.
    pub big_x_plus: Vec<LaurentPoly<F>>,
    /// `X⁻_k`, coefficient of `S^{k}` inside the bracket.
    pub big_x_minus: Vec<LaurentPoly<F>>,
    /// Prefactor of `X⁻`: `Π B_j^{−1}`.
    pub big_minus_prefactor: LaurentPoly<F>,
    /// Prefactor of `x⁻`, kept symbolically.
    pub frak_minus_prefactor: String,
}

/// Solves `Σ_i c_i·λ^i·f_{k−i} = Σ_i c_i·g_{k−i}` order by order with `c_0 = 1`.
fn functional_recursion<F: Scalar>(
    vars: &Vars,
    order: usize,
    lambda: &F,
    f: &[LaurentPoly<F>],
    g: &[LaurentPoly<F>],
    what: &str,
) -> Result<Vec<LaurentPoly<F>>> {
    let get = |v: &[LaurentPoly<F>], m: usize| v.get(m).cloned().unwrap_or_else(|| LaurentPoly::zero(vars));
    let mut c = vec![LaurentPoly::one(vars)];
    for k in 1..=order {
        let mut rhs = LaurentPoly::zero(vars);
        for (i, ci) in c.iter().enumerate() {
            let li = lambda.powi(i as i64)?;
            rhs = &rhs + &(ci * &(&get(g, k - i) - &get(f, k - i).scale(&li)));
        }
        let den = lambda.powi(k as i64)? - F::one();
        let inv = den
            .inv()
            .ok_or_else(|| SgffError::Resonance(format!("{what}: resonant denominator at order {k}")))?;
        c.push(rhs.scale(&inv));
    }
    Ok(c)
}

fn scaled_elementary<F: Scalar>(e: &[LaurentPoly<F>], r: &F) -> Result<Vec<LaurentPoly<F>>> {
    e.iter().enumerate().map(|(m, x)| Ok(x.scale(&r.powi(m as i64)?))).collect()
}

/// Order-by-order solution of both functional equations up to order `order`.
pub fn compute_asymptotics<F: Scalar>(
    vars: &Vars,
    roots: &[LaurentPoly<F>],
    frak_roots: &[LaurentPoly<F>],
    order: usize,
    c: &Consts<F>,
) -> Result<AsymptoticSeries<F>> {
    if order == 0 || roots.is_empty() {
        return Err(SgffError::Domain("asymptotics need n ≥ 1 and order ≥ 1".into()));
    }
    let n = roots.len() / 2;
    let one = F::one();
    let qi = c.big_q.inv().ok_or_else(|| SgffError::Domain("Q = 0".into()))?;
    let fq2 = c.fq.clone() * c.fq.clone();
    let fq4 = fq2.clone() * fq2.clone();
    let fq2i = fq2.inv().ok_or_else(|| SgffError::Domain("𝔮 = 0".into()))?;
    let fq4i = fq2i.clone() * fq2i.clone();

    let e_big = elementary(vars, roots);
    let inv_roots: Vec<_> = roots.iter().map(|r| r.monomial_inverse()).collect::<Result<_>>()?;
    let e_big_inv = elementary(vars, &inv_roots);
    let e_frak = elementary(vars, frak_roots);
    let inv_frak: Vec<_> = frak_roots.iter().map(|r| r.monomial_inverse()).collect::<Result<_>>()?;
    let e_frak_inv = elementary(vars, &inv_frak);

    // X⁺(SQ)Π(1 − B u/Q) = X⁺(S)Π(1 + B u), u = 1/S.
    let big_x_plus = functional_recursion(
        vars,
        order,
        &qi,
        &scaled_elementary(&e_big, &(-qi.clone()))?,
        &e_big,
        "X+",
    )?;
    // X⁻(SQ)Π(1 − SQ/B) = X⁻(S)Π(1 + S/B).
    let big_x_minus = functional_recursion(
        vars,
        order,
        &c.big_q,
        &scaled_elementary(&e_big_inv, &(-c.big_q.clone()))?,
        &e_big_inv,
        "X-",
    )?;
    // x⁺(𝔰𝔮⁴)Π(1 − 𝔟v𝔮^{−4}) = x⁺(𝔰)Π(1 − 𝔟v𝔮^{−2}), v = 1/𝔰.
    let x_plus = functional_recursion(
        vars,
        order,
        &fq4i,
        &scaled_elementary(&e_frak, &(-fq4i.clone()))?,
        &scaled_elementary(&e_frak, &(-fq2i.clone()))?,
        "x+",
    )?;
    // x⁻(𝔰𝔮⁴)Π(1 − 𝔰𝔮⁴/𝔟) = x⁻(𝔰)Π(1 − 𝔰𝔮²/𝔟).
    let x_minus = functional_recursion(
        vars,
        order,
        &fq4,
        &scaled_elementary(&e_frak_inv, &(-fq4.clone()))?,
        &scaled_elementary(&e_frak_inv, &(-fq2))?,
        "x-",
    )?;
    let _ = one;
    let mut pref = LaurentPoly::one(vars);
    for r in &inv_roots {
        pref = &pref * r;
    }
    Ok(AsymptoticSeries {
        n,
        order,
        x_plus,
        x_minus,
        big_x_plus,
        big_x_minus,
        big_minus_prefactor: pref,
        frak_minus_prefactor: format!("q^{n}*prod(b_j^(-1/2))"),
    })
}

// ---------------------------------------------------------------- residues

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Which {
    Plus,
    Minus,
}

fn series_coeff<F: Scalar>(series: &[LaurentPoly<F>], k: i32, order: usize) -> Result<Option<&LaurentPoly<F>>> {
    if k < 0 {
        return Ok(None);
    }
    if k as usize > order {
        return Err(SgffError::Truncation(format!("needs series order {k}, have {order}")));
    }
    Ok(Some(&series[k as usize]))
}

/// `Res₊[N] = [S⁰] X⁺(S)S^{−2n}N(S)` and `Res₋[N] = [S⁰] X⁻(S)N(S)` in variable `s`.
pub fn res_big<F: Scalar>(nn: &LaurentPoly<F>, s: usize, series: &AsymptoticSeries<F>, which: Which) -> Result<LaurentPoly<F>> {
    let two_n = 2 * series.n as i32;
    let mut acc = LaurentPoly::zero(nn.vars());
    for (d, part) in nn.split_by(s) {
        let k = match which {
            Which::Plus => d - two_n,
            Which::Minus => -d,
        };
        let src = match which {
            Which::Plus => &series.big_x_plus,
            Which::Minus => &series.big_x_minus,
        };
        if let Some(x) = series_coeff(src, k, series.order)? {
            acc = &acc + &(&part * x);
        }
    }
    Ok(match which {
        Which::Plus => acc,
        Which::Minus => &acc * &series.big_minus_prefactor,
    })
}

/// `res₊[ℓ] = [𝔰⁰] x⁺(𝔰)𝔰^{−n}ℓ(𝔰)`; `res₋[ℓ] = [𝔰⁰] x⁻(𝔰)ℓ(𝔰)` without the
/// constant prefactor of `x⁻`.
pub fn res_frak<F: Scalar>(l: &LaurentPoly<F>, s: usize, series: &AsymptoticSeries<F>, which: Which) -> Result<LaurentPoly<F>> {
    let n = series.n as i32;
    let mut acc = LaurentPoly::zero(l.vars());
    for (d, part) in l.split_by(s) {
        let (k, src) = match which {
            Which::Plus => (d - n, &series.x_plus),
            Which::Minus => (-d, &series.x_minus),
        };
        if let Some(x) = series_coeff(src, k, series.order)? {
            acc = &acc + &(&part * x);
        }
    }
    Ok(acc)
}

/// Extension to alternating polynomials: residue in the first slot, the remaining
/// slots shifted down by one.
pub fn res_big_wedge<F: Scalar>(
    nn: &LaurentPoly<F>,
    slots: &[usize],
    series: &AsymptoticSeries<F>,
    which: Which,
) -> Result<LaurentPoly<F>> {
    let r = res_big(nn, slots[0], series, which)?;
    Ok(shift_slots_down(&r, slots))
}

pub fn res_frak_wedge<F: Scalar>(
    l: &LaurentPoly<F>,
    slots: &[usize],
    series: &AsymptoticSeries<F>,
    which: Which,
) -> Result<LaurentPoly<F>> {
    let r = res_frak(l, slots[0], series, which)?;
    Ok(shift_slots_down(&r, slots))
}

/// Renames `slots[i] → slots[i−1]` for `i ≥ 1` (slot 0 must be absent).
pub fn shift_slots_down<F: Scalar>(f: &LaurentPoly<F>, slots: &[usize]) -> LaurentPoly<F> {
    let mut map: Vec<usize> = (0..f.vars().len()).collect();
    for i in 1..slots.len() {
        map[slots[i]] = slots[i - 1];
    }
    if let Some(&first) = slots.first() {
        map[first] = *slots.last().expect("nonempty");
    }
    f.remap(&map)
}

// ---------------------------------------------------------------- m/n split

/// Laurent polynomial in one variable as exponent → coefficient.
pub type Coeffs<G> = BTreeMap<i32, G>;

#[derive(Clone, Debug)]
pub struct Split<G> {
    pub m: Coeffs<G>,
    pub n: Coeffs<G>,
}

fn windows(j: i32, k: i32, two_n: i32) -> ((i32, i32), (i32, i32)) {
    let m = (j - k + 1, j + two_n - k);
    let n = if k >= 1 { (j - k + 1, j) } else { (j, j - k + 1) };
    (m, n)
}

/// Solves `p(𝔰𝔮^{−2})ℓ(𝔰) = m(𝔰) + a^{−2}p(𝔰)n(𝔰𝔮^{−4}) − p(𝔰𝔮^{−2})n(𝔰)` with `m` and
/// `n` in the windows attached to `k`, monomial by monomial of `ℓ`.
pub fn mn_split<G: Scalar>(ell: &Coeffs<G>, k: i32, frak_roots: &[G], fq: &G, a_inv2: &G) -> Result<Split<G>> {
    let two_n = frak_roots.len() as i32;
    // p(𝔰) = Σ_i p_i 𝔰^i
    let mut e = vec![G::one()];
    for b in frak_roots {
        let mut nx = e.clone();
        nx.push(G::zero());
        for i in 1..nx.len() {
            nx[i] = e.get(i).cloned().unwrap_or_else(G::zero) + e[i - 1].clone() * b.clone();
        }
        e = nx;
    }
    let pc: Vec<G> = (0..=two_n)
        .map(|i| {
            let v = e[(two_n - i) as usize].clone();
            if (two_n - i) % 2 == 0 {
                v
            } else {
                -v
            }
        })
        .collect();
    let fq2i = (fq.clone() * fq.clone()).inv().ok_or_else(|| SgffError::Domain("𝔮 = 0".into()))?;
    let pcoef = |i: i32| -> G { if (0..=two_n).contains(&i) { pc[i as usize].clone() } else { G::zero() } };
    let mut total = Split { m: Coeffs::new(), n: Coeffs::new() };
    for (&j, lj) in ell {
        if lj.is_zero() {
            continue;
        }
        let ((m0, m1), (n0, n1)) = windows(j, k, two_n);
        let unknowns: Vec<(bool, i32)> =
            (m0..=m1).map(|t| (true, t)).chain((n0..=n1).map(|t| (false, t))).collect();
        let lo = m0.min(n0).min(j);
        let hi = m1.max(n1 + two_n).max(j + two_n);
        let rows: Vec<i32> = (lo..=hi).collect();
        let mut a = vec![vec![G::zero(); unknowns.len()]; rows.len()];
        let mut rhs = vec![G::zero(); rows.len()];
        for (r, &pw) in rows.iter().enumerate() {
            rhs[r] = pcoef(pw - j) * fq2i.powi((pw - j) as i64)? * lj.clone();
            for (u, &(is_m, t)) in unknowns.iter().enumerate() {
                a[r][u] = if is_m {
                    if pw == t {
                        G::one()
                    } else {
                        G::zero()
                    }
                } else {
                    let pi = pcoef(pw - t);
                    a_inv2.clone() * pi.clone() * fq2i.powi(2 * t as i64)? - pi * fq2i.powi((pw - t) as i64)?
                };
            }
        }
        let x = solve(&a, &rhs).ok_or_else(|| SgffError::Split(format!("no split for 𝔰^{j} with k = {k}")))?;
        if unknowns.len() > rows.len() || crate::linalg::rank(&a) < unknowns.len() {
            return Err(SgffError::Split(format!("split for 𝔰^{j} with k = {k} is not unique")));
        }
        for (&(is_m, t), v) in unknowns.iter().zip(x) {
            let target = if is_m { &mut total.m } else { &mut total.n };
            let cur = target.remove(&t).unwrap_or_else(G::zero) + v;
            if !cur.is_zero() {
                target.insert(t, cur);
            }
        }
    }
    Ok(total)
}

/// Residues `res_{a²=w0} n(𝔰) da²/a²`, coefficientwise, with `a²` kept formal.
pub fn split_residues<F: Scalar>(
    ell: &Coeffs<F>,
    k: i32,
    frak_roots: &[F],
    fq: &F,
    w0: &F,
) -> Result<Coeffs<F>> {
    let lift = |c: &F| RatFunc::constant(c.clone());
    let ell_w: Coeffs<RatFunc<F>> = ell.iter().map(|(e, c)| (*e, lift(c))).collect();
    let roots_w: Vec<RatFunc<F>> = frak_roots.iter().map(lift).collect();
    let a_inv2 = RatFunc::<F>::w().inv().expect("w ≠ 0");
    let sp = mn_split(&ell_w, k, &roots_w, &lift(fq), &a_inv2)?;
    let mut out = Coeffs::new();
    for (e, c) in sp.n {
        let r = c.residue_dlog(w0)?;
        if !r.is_zero() {
            out.insert(e, r);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{pit_sample, rat, AlphaLine, Rational};
    use crate::towers::Layout;

    fn consts(line: AlphaLine) -> Consts<Rational> {
        Consts::generic(&rat(2, 5), line, 11)
    }

    #[test]
    fn s_to_the_2n_reduces_with_certificate() {
        let lay = Layout::new(1, 4, 1, 1);
        let c = consts(AlphaLine::Generic);
        let roots = lay.formal_roots::<Rational>(2);
        let s = lay.s[0];
        let l = LaurentPoly::var_pow(&lay.vars, s, 4);
        let red = reduce_to_window(&l, &[s], &roots, &c.big_a, &c.big_q).unwrap();
        assert!(red.reduced.max_degree(s).unwrap() <= 3);
        assert_eq!(red.certificate.len(), 1);
        assert_eq!(red.reconstruct(&roots, &c.big_a, &c.big_q).unwrap(), l);
    }

    #[test]
    fn frak_side_reduces_both_ends() {
        let lay = Layout::new(1, 2, 1, 1);
        let c = consts(AlphaLine::Generic);
        let roots = lay.formal_roots::<Rational>(1);
        let s = lay.s[0];
        let l = &LaurentPoly::var_pow(&lay.vars, s, 3) + &LaurentPoly::var_pow(&lay.vars, s, -2);
        let red = reduce_frak_to_window(&l, &[s], &roots, &c.a, &c.fq).unwrap();
        assert_eq!(red.side, Side::Frak);
        assert!(red.reduced.max_degree(s).unwrap() < roots.len() as i32);
        assert!(red.reduced.min_degree(s).unwrap() >= 0);
        assert_eq!(red.reconstruct(&roots, &c.a, &c.fq).unwrap(), l);
    }

    #[test]
    fn resonance_at_a_equal_one() {
        let lay = Layout::new(1, 2, 1, 1);
        let c = consts(AlphaLine::OnLine { k: 0, m: 0 });
        let roots = lay.formal_roots::<Rational>(1);
        let s = lay.s[0];
        let l = LaurentPoly::var_pow(&lay.vars, s, 2);
        assert!(matches!(
            reduce_to_window(&l, &[s], &roots, &c.big_a, &c.big_q),
            Err(SgffError::Resonance(_))
        ));
    }

    #[test]
    fn first_x_plus_coefficient() {
        let lay = Layout::new(1, 4, 1, 1);
        let c = consts(AlphaLine::Generic);
        let vals: Vec<Rational> = pit_sample(3, 4);
        let br = lay.const_roots(&vals);
        let fr = lay.const_roots(&vals);
        let a = compute_asymptotics(&lay.vars, &br, &fr, 4, &c).unwrap();
        let s1: Rational = vals.iter().cloned().sum();
        let fq2 = c.fq.clone() * c.fq.clone();
        assert_eq!(a.x_plus[1].constant_term(), s1 / (fq2 + rat(1, 1)));
        assert_eq!(a.big_x_plus[0].constant_term(), rat(1, 1));
    }

    #[test]
    fn n1_matches_closed_form_and_residue() {
        let c = consts(AlphaLine::Generic);
        let roots: Vec<Rational> = pit_sample(5, 4);
        let ell: Coeffs<Rational> = [(0, rat(1, 1))].into_iter().collect();
        let a2i = (c.a.clone() * c.a.clone()).inv().unwrap();
        let sp = mn_split(&ell, 1, &roots, &c.fq, &a2i).unwrap();
        let fq4n = c.fq.powi(8).unwrap();
        let expect = (a2i * fq4n.clone() - rat(1, 1)).inv().unwrap();
        assert_eq!(sp.n.get(&0).cloned().unwrap(), expect);
        let res = split_residues(&ell, 1, &roots, &c.fq, &fq4n).unwrap();
        assert_eq!(res.get(&0).cloned().unwrap(), rat(-1, 1));
    }
}
