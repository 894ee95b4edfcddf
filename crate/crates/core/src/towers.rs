//! Towers of antisymmetric Laurent polynomials, the primary and shifted-primary
//! towers, the specialization recurrence, and the integrals-of-motion action.

use crate::error::{Result, SgffError};
use crate::laurent::{monomial_wedge, p_of, LaurentPoly, Vars};
use crate::scalars::{pit_sample, Scalar};
use crate::series::PowerSeries;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::collections::BTreeMap;

/// Variable layout shared by a computation: `S1..`, `B1..`, `Z1..`, `X1..`, `T`.
#[derive(Clone, Debug)]
pub struct Layout {
    pub vars: Vars,
    pub s: Vec<usize>,
    pub b: Vec<usize>,
    pub z: Vec<usize>,
    pub x: Vec<usize>,
    /// An auxiliary variable (series parameter, spectral variable, ...).
    pub t: usize,
    /// Caller-named variables appended after `T`.
    pub extra: Vec<usize>,
}

impl Layout {
    pub fn new(ns: usize, nb: usize, nz: usize, nx: usize) -> Self {
        Self::with_extra(ns, nb, nz, nx, &[] as &[&str])
    }

    pub fn with_extra<S: AsRef<str>>(ns: usize, nb: usize, nz: usize, nx: usize, extra: &[S]) -> Self {
        let mut names = Vec::new();
        let mut push = |prefix: &str, k: usize| -> Vec<usize> {
            (1..=k)
                .map(|i| {
                    names.push(format!("{prefix}{i}"));
                    names.len() - 1
                })
                .collect()
        };
        let s = push("S", ns);
        let b = push("B", nb);
        let z = push("Z", nz);
        let x = push("X", nx);
        names.push("T".to_string());
        let t = names.len() - 1;
        let extra = extra
            .iter()
            .map(|e| {
                names.push(e.as_ref().to_string());
                names.len() - 1
            })
            .collect();
        Layout { vars: Vars::new(&names), s, b, z, x, t, extra }
    }

    /// Layout large enough for words with `k` generating variables of each kind at `n_max`.
    pub fn for_words(n_max: usize, k: usize) -> Self {
        Layout::new(n_max + 2 * k + 1, 2 * n_max, k.max(1), k.max(1))
    }

    pub fn n_max(&self) -> usize {
        self.b.len() / 2
    }

    /// `B_1, …, B_{2n}` as formal variables.
    pub fn formal_roots<F: Scalar>(&self, n: usize) -> Vec<LaurentPoly<F>> {
        assert!(2 * n <= self.b.len(), "layout holds only {} B-variables", self.b.len());
        self.b[..2 * n].iter().map(|&i| LaurentPoly::var(&self.vars, i)).collect()
    }

    /// Numeric roots as constant polynomials.
    pub fn const_roots<F: Scalar>(&self, vals: &[F]) -> Vec<LaurentPoly<F>> {
        vals.iter().map(|v| LaurentPoly::constant(&self.vars, v.clone())).collect()
    }

    pub fn var<F: Scalar>(&self, i: usize) -> LaurentPoly<F> {
        LaurentPoly::var(&self.vars, i)
    }

    pub fn constant<F: Scalar>(&self, c: F) -> LaurentPoly<F> {
        LaurentPoly::constant(&self.vars, c)
    }

    pub fn one<F: Scalar>(&self) -> LaurentPoly<F> {
        LaurentPoly::one(&self.vars)
    }

    pub fn zero<F: Scalar>(&self) -> LaurentPoly<F> {
        LaurentPoly::zero(&self.vars)
    }

    /// `P(±x)` over the roots.
    pub fn p<F: Scalar>(&self, x: usize, sign: i64, roots: &[LaurentPoly<F>]) -> LaurentPoly<F> {
        p_of(&self.vars, x, sign, roots)
    }
}

/// Product of the roots (each root must be a monomial when `power < 0`).
pub fn root_power_product<F: Scalar>(lay: &Layout, roots: &[LaurentPoly<F>], power: i32) -> Result<LaurentPoly<F>> {
    let mut acc = lay.one();
    for r in roots {
        let f = if power >= 0 { r.pow(power as u32) } else { r.monomial_inverse()?.pow((-power) as u32) };
        acc = &acc * &f;
    }
    Ok(acc)
}

/// Power sum `Σ_j b_j^k` (negative `k` needs monomial roots).
pub fn power_sum<F: Scalar>(lay: &Layout, roots: &[LaurentPoly<F>], k: i32) -> Result<LaurentPoly<F>> {
    let mut acc = lay.zero();
    for r in roots {
        let f = if k >= 0 { r.pow(k as u32) } else { r.monomial_inverse()?.pow((-k) as u32) };
        acc = &acc + &f;
    }
    Ok(acc)
}

/// One component `L^{(l,n)} = num/den`; `den` is free of `S`.
#[derive(Clone, Debug)]
pub struct TowerComponent<F> {
    pub l: usize,
    pub n: usize,
    pub num: LaurentPoly<F>,
    pub den: LaurentPoly<F>,
}

impl<F: Scalar> TowerComponent<F> {
    pub fn polynomial(l: usize, n: usize, num: LaurentPoly<F>) -> Self {
        let den = LaurentPoly::one(num.vars());
        TowerComponent { l, n, num, den }
    }

    /// Cross-multiplied equality.
    pub fn same_as(&self, o: &Self) -> bool {
        self.l == o.l && (&self.num * &o.den).agrees_with(&(&o.num * &self.den))
    }

    pub fn scale(&self, c: &F) -> Self {
        TowerComponent { l: self.l, n: self.n, num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn mul_poly(&self, f: &LaurentPoly<F>) -> Self {
        TowerComponent { l: self.l, n: self.n, num: &self.num * f, den: self.den.clone() }
    }

    /// Substitutes polynomials for the first `2n` B variables.
    pub fn at_roots(&self, lay: &Layout, roots: &[LaurentPoly<F>]) -> Result<Self> {
        let mut num = self.num.clone();
        let mut den = self.den.clone();
        for (j, r) in roots.iter().enumerate() {
            let bj = lay.b[j];
            if *r == lay.var::<F>(bj) {
                continue;
            }
            num = num.subs_poly(bj, r)?;
            den = den.subs_poly(bj, r)?;
        }
        Ok(TowerComponent { l: self.l, n: self.n, num, den })
    }
}

impl<F: Scalar> Serialize for TowerComponent<F> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("TowerComponent", 4)?;
        st.serialize_field("l", &self.l)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("num", &self.num)?;
        st.serialize_field("den", &self.den)?;
        st.end()
    }
}

/// Anything that produces tower components for arbitrary root data.
pub trait TowerSource<F: Scalar> {
    fn charge(&self) -> i64;
    /// The `2n`-particle component over the given roots; `None` when `l < 0`.
    fn component(&self, lay: &Layout, n: usize, roots: &[LaurentPoly<F>]) -> Result<Option<TowerComponent<F>>>;
}

/// A truncated tower with stored components over the formal roots of its layout.
#[derive(Clone, Debug)]
pub struct Tower<F> {
    pub charge: i64,
    /// Opaque normalization symbol, e.g. `<Phi_alpha>`.
    pub label: String,
    pub components: BTreeMap<usize, TowerComponent<F>>,
}

impl<F: Scalar> Tower<F> {
    /// Collects the components `n ≤ n_max` of a source over formal roots.
    pub fn from_source<T: TowerSource<F>>(src: &T, lay: &Layout, n_max: usize, label: &str) -> Result<Self> {
        let mut components = BTreeMap::new();
        for n in 0..=n_max {
            if let Some(c) = src.component(lay, n, &lay.formal_roots(n))? {
                components.insert(n, c);
            }
        }
        Ok(Tower { charge: src.charge(), label: label.to_string(), components })
    }

    pub fn get(&self, n: usize) -> Result<&TowerComponent<F>> {
        self.components
            .get(&n)
            .ok_or_else(|| SgffError::Structure(format!("tower has no component with n = {n}")))
    }

    pub fn n_max(&self) -> usize {
        self.components.keys().next_back().copied().unwrap_or(0)
    }
}

impl<F: Scalar> TowerSource<F> for Tower<F> {
    fn charge(&self) -> i64 {
        self.charge
    }
    fn component(&self, lay: &Layout, n: usize, roots: &[LaurentPoly<F>]) -> Result<Option<TowerComponent<F>>> {
        if (n as i64) + self.charge < 0 {
            return Ok(None);
        }
        Ok(Some(self.get(n)?.at_roots(lay, roots)?))
    }
}

impl<F: Scalar> Serialize for Tower<F> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Tower", 3)?;
        st.serialize_field("charge", &self.charge)?;
        st.serialize_field("label", &self.label)?;
        let comps: Vec<&TowerComponent<F>> = self.components.values().collect();
        st.serialize_field("components", &comps)?;
        st.end()
    }
}

/// `M_0`: the primary tower `S ∧ S³ ∧ … ∧ S^{2n−1}` (unit normalization).
#[derive(Clone, Copy, Debug, Default)]
pub struct Primary;

impl<F: Scalar> TowerSource<F> for Primary {
    fn charge(&self) -> i64 {
        0
    }
    fn component(&self, lay: &Layout, n: usize, _roots: &[LaurentPoly<F>]) -> Result<Option<TowerComponent<F>>> {
        let powers: Vec<i32> = (0..n as i32).map(|j| 2 * j + 1).collect();
        Ok(Some(TowerComponent::polynomial(n, n, wedge_or_one(lay, &powers)?)))
    }
}

/// `M_m`: `(−1)^{m(n+1)} S^{2m+1} ∧ S^{2m+3} ∧ … ∧ S^{2n+2m−1} Π_j B_j^{−m}`.
///
/// The sign makes the sequence a tower for every `m` and is `+1` at `n = 1`.
#[derive(Clone, Copy, Debug)]
pub struct ShiftedPrimary {
    pub m: i64,
}

impl ShiftedPrimary {
    pub fn sign(&self, n: usize) -> i64 {
        if (self.m * (n as i64 + 1)).rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }
}

impl<F: Scalar> TowerSource<F> for ShiftedPrimary {
    fn charge(&self) -> i64 {
        0
    }
    fn component(&self, lay: &Layout, n: usize, roots: &[LaurentPoly<F>]) -> Result<Option<TowerComponent<F>>> {
        let m = self.m as i32;
        let powers: Vec<i32> = (0..n as i32).map(|j| 2 * j + 2 * m + 1).collect();
        let w = wedge_or_one(lay, &powers)?;
        let b = root_power_product(lay, roots, -m)?;
        let num = (&w * &b).scale(&F::from_i64(self.sign(n)));
        Ok(Some(TowerComponent::polynomial(n, n, num)))
    }
}

fn wedge_or_one<F: Scalar>(lay: &Layout, powers: &[i32]) -> Result<LaurentPoly<F>> {
    if powers.len() > lay.s.len() {
        return Err(SgffError::Structure(format!("layout holds only {} S-variables", lay.s.len())));
    }
    if powers.is_empty() {
        return Ok(lay.one());
    }
    Ok(monomial_wedge(&lay.vars, powers, &lay.s[..powers.len()]))
}

/// How a recurrence or identity is tested.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckMode {
    /// Formal B variables throughout.
    Formal,
    /// Random numeric roots drawn from the seed.
    Pit { seed: u64 },
}

#[derive(Clone, Debug)]
pub struct RecurrenceVerdict<F> {
    pub n: usize,
    pub holds: bool,
    /// Cross-multiplied difference of the two sides when the check fails.
    pub witness: Option<LaurentPoly<F>>,
}

/// Tests `L^{(l,n)}(…, S_l = B | …, B, −B) = (−1)^c B Π_{p<l}(B² − S_p²) L^{(l−1,n−1)}`.
pub fn check_recurrence<F: Scalar, T: TowerSource<F> + ?Sized>(
    src: &T,
    lay: &Layout,
    n: usize,
    mode: CheckMode,
) -> Result<RecurrenceVerdict<F>> {
    if n == 0 {
        return Err(SgffError::Precondition("the recurrence links n ≥ 1 to n − 1".into()));
    }
    let c = src.charge();
    let l = n as i64 + c;
    if l < 1 {
        return Err(SgffError::Precondition(format!("component (l = {l}, n = {n}) is not constrained")));
    }
    let l = l as usize;
    if l > lay.s.len() {
        return Err(SgffError::Structure(format!("layout holds only {} S-variables", lay.s.len())));
    }
    let sl = lay.s[l - 1];
    let (upper, lower, bvar) = match mode {
        CheckMode::Formal => {
            let up = src
                .component(lay, n, &lay.formal_roots(n))?
                .ok_or_else(|| SgffError::Structure(format!("missing component n = {n}")))?;
            let lo = src
                .component(lay, n - 1, &lay.formal_roots(n - 1))?
                .ok_or_else(|| SgffError::Structure(format!("missing component n = {}", n - 1)))?;
            let b1 = lay.b[2 * n - 2];
            let b2 = lay.b[2 * n - 1];
            let mut e = vec![0; lay.vars.len()];
            e[b1] = 1;
            let spec = |p: &LaurentPoly<F>| -> Result<LaurentPoly<F>> {
                p.subs_monomial(b2, &-F::one(), &e)?.subs_monomial(sl, &F::one(), &e)
            };
            let up = TowerComponent { l, n, num: spec(&up.num)?, den: spec(&up.den)? };
            (up, lo, lay.var::<F>(b1))
        }
        CheckMode::Pit { seed } => {
            let vals: Vec<F> = pit_sample(seed, 2 * n - 1);
            let beta = vals[2 * n - 2].clone();
            let mut roots = lay.const_roots(&vals[..2 * n - 2]);
            let lo = src
                .component(lay, n - 1, &roots)?
                .ok_or_else(|| SgffError::Structure(format!("missing component n = {}", n - 1)))?;
            roots.push(lay.constant(beta.clone()));
            roots.push(lay.constant(-beta.clone()));
            let up = src
                .component(lay, n, &roots)?
                .ok_or_else(|| SgffError::Structure(format!("missing component n = {n}")))?;
            let up = TowerComponent { l, n, num: up.num.eval_var(sl, &beta)?, den: up.den.eval_var(sl, &beta)? };
            (up, lo, lay.constant(beta))
        }
    };
    let mut factor = bvar.scale(&F::from_i64(if c.rem_euclid(2) == 0 { 1 } else { -1 }));
    for p in 0..l - 1 {
        let sp = lay.var::<F>(lay.s[p]);
        factor = &factor * &(&(&bvar * &bvar) - &(&sp * &sp));
    }
    let lhs = &upper.num * &lower.den;
    let rhs = &(&factor * &lower.num) * &upper.den;
    let holds = lhs.agrees_with(&rhs);
    Ok(RecurrenceVerdict { n, holds, witness: (!holds).then(|| &lhs - &rhs) })
}

// ---------------------------------------------------------------- integrals of motion

/// Variables `I1, I3, …` and `Ib1, Ib3, …` in which IM polynomials are written.
pub fn im_vars(jmax: usize) -> Vars {
    let mut names: Vec<String> = (1..=jmax).map(|j| format!("I{}", 2 * j - 1)).collect();
    names.extend((1..=jmax).map(|j| format!("Ib{}", 2 * j - 1)));
    Vars::new(&names)
}

/// Evaluates an IM polynomial at `I_{2j−1} = Σ b^{2j−1}`, `Ī_{2j−1} = Σ b^{−(2j−1)}`.
pub fn im_evaluate<F: Scalar>(f: &LaurentPoly<F>, lay: &Layout, roots: &[LaurentPoly<F>]) -> Result<LaurentPoly<F>> {
    let jmax = f.vars().len() / 2;
    let mut images = Vec::with_capacity(2 * jmax);
    for j in 1..=jmax {
        images.push(power_sum(lay, roots, 2 * j as i32 - 1)?);
    }
    for j in 1..=jmax {
        images.push(power_sum(lay, roots, -(2 * j as i32 - 1))?);
    }
    let mut acc = lay.zero();
    for (e, c) in f.terms() {
        let mut t = lay.constant(c.clone());
        for (k, &p) in e.iter().enumerate() {
            if p < 0 {
                return Err(SgffError::Domain("IM polynomials must be polynomial in I, Ī".into()));
            }
            if p > 0 {
                t = &t * &images[k].pow(p as u32);
            }
        }
        acc = &acc + &t;
    }
    Ok(acc)
}

/// A tower multiplied by an IM polynomial, evaluated at each component's own `n`.
pub struct ImMultiplied<'a, F, T: ?Sized> {
    pub inner: &'a T,
    pub f: LaurentPoly<F>,
}

impl<F: Scalar, T: TowerSource<F> + ?Sized> TowerSource<F> for ImMultiplied<'_, F, T> {
    fn charge(&self) -> i64 {
        self.inner.charge()
    }
    fn component(&self, lay: &Layout, n: usize, roots: &[LaurentPoly<F>]) -> Result<Option<TowerComponent<F>>> {
        let Some(c) = self.inner.component(lay, n, roots)? else { return Ok(None) };
        Ok(Some(c.mul_poly(&im_evaluate(&self.f, lay, roots)?)))
    }
}

/// `L^{(l,n)} ↦ f(I, Ī) L^{(l,n)}` on a stored tower.
pub fn im_multiply<F: Scalar>(t: &Tower<F>, f: &LaurentPoly<F>, lay: &Layout) -> Result<Tower<F>> {
    let mut components = BTreeMap::new();
    for (&n, c) in &t.components {
        components.insert(n, c.mul_poly(&im_evaluate(f, lay, &lay.formal_roots(n))?));
    }
    Ok(Tower { charge: t.charge, label: t.label.clone(), components })
}

/// Eigenvalues and generating exponents of the local integrals of motion.
#[derive(Clone, Debug)]
pub struct ImSeries<F> {
    pub n: usize,
    /// `I_{2j−1,n}` for `j = 1..`.
    pub i: Vec<LaurentPoly<F>>,
    /// `Ī_{2j−1,n}` for `j = 1..`.
    pub ibar: Vec<LaurentPoly<F>>,
    /// `X_n` as a series in `Z^{−1}`.
    pub x: PowerSeries<F>,
    /// `X̄_n` as a series in `Z`.
    pub xbar: PowerSeries<F>,
}

pub fn im_series<F: Scalar>(lay: &Layout, roots: &[LaurentPoly<F>], order: usize) -> Result<ImSeries<F>> {
    let n = roots.len() / 2;
    let jmax = order / 2;
    let mut i = Vec::new();
    let mut ibar = Vec::new();
    let mut x = vec![lay.zero(); order];
    let mut xbar = vec![lay.zero(); order];
    for j in 1..=jmax {
        let k = 2 * j - 1;
        let ij = power_sum(lay, roots, k as i32)?;
        let ib = power_sum(lay, roots, -(k as i32))?;
        let w = F::from_i64(k as i64)
            .inv()
            .ok_or_else(|| SgffError::Domain(format!("{k} is not invertible in {}", F::NAME)))?;
        if k < order {
            x[k] = ij.scale(&w);
            xbar[k] = ib.scale(&w);
        }
        i.push(ij);
        ibar.push(ib);
    }
    Ok(ImSeries {
        n,
        i,
        ibar,
        x: PowerSeries::from_coeffs(&lay.vars, order, x),
        xbar: PowerSeries::from_coeffs(&lay.vars, order, xbar),
    })
}

/// `sqrt(P(−Z)/P(Z))` at `Z → ∞` (series in `Z^{−1}`) and at `Z → 0` (series in `Z`).
pub fn sqrt_p_ratio<F: Scalar>(
    lay: &Layout,
    roots: &[LaurentPoly<F>],
    order: usize,
) -> Result<(PowerSeries<F>, PowerSeries<F>)> {
    let v = &lay.vars;
    let plus: Vec<LaurentPoly<F>> = roots.to_vec();
    let minus: Vec<LaurentPoly<F>> = roots.iter().map(|b| -b).collect();
    // Π(1 + b u)/(1 − b u).
    let num = PowerSeries::product_of_binomials(v, order, 1, &plus);
    let den = PowerSeries::product_of_binomials(v, order, 1, &minus);
    let at_inf = num.mul(&den.inv()?).sqrt()?;
    let inv: Vec<LaurentPoly<F>> = roots.iter().map(|b| b.monomial_inverse()).collect::<Result<_>>()?;
    let minus_inv: Vec<LaurentPoly<F>> = inv.iter().map(|b| -b).collect();
    let num0 = PowerSeries::product_of_binomials(v, order, 1, &inv);
    let den0 = PowerSeries::product_of_binomials(v, order, 1, &minus_inv);
    let at_zero = num0.mul(&den0.inv()?).sqrt()?;
    Ok((at_inf, at_zero))
}

/// Checks `exp(X_n) = sqrt(P(−Z)/P(Z))` at both ends to the given order.
pub fn check_im_consistency<F: Scalar>(lay: &Layout, roots: &[LaurentPoly<F>], order: usize) -> Result<bool> {
    let im = im_series(lay, roots, order)?;
    let (inf, zero) = sqrt_p_ratio(lay, roots, order)?;
    Ok(im.x.exp()?.agrees_with(&inf) && im.xbar.exp()?.agrees_with(&zero))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Rational;

    #[test]
    fn primary_components() {
        let lay = Layout::new(3, 6, 0, 0);
        let t = Tower::<Rational>::from_source(&Primary, &lay, 2, "<Phi>").unwrap();
        assert_eq!(t.get(0).unwrap().num, lay.one());
        assert_eq!(t.get(1).unwrap().num, lay.var(lay.s[0]));
    }

    #[test]
    fn shifted_minus_one_at_n_one() {
        let lay = Layout::new(3, 6, 0, 0);
        let c = TowerSource::<Rational>::component(&ShiftedPrimary { m: -1 }, &lay, 1, &lay.formal_roots(1))
            .unwrap()
            .unwrap();
        let mut e = vec![0; lay.vars.len()];
        e[lay.s[0]] = -1;
        e[lay.b[0]] = 1;
        e[lay.b[1]] = 1;
        assert_eq!(c.num, LaurentPoly::monomial(&lay.vars, e, Rational::from_integer(1.into())));
    }

    #[test]
    fn recurrence_of_primary_tower() {
        let lay = Layout::new(3, 6, 0, 0);
        for n in 1..=2 {
            assert!(check_recurrence::<Rational, _>(&Primary, &lay, n, CheckMode::Formal).unwrap().holds);
        }
        assert!(check_recurrence::<Rational, _>(&Primary, &lay, 3, CheckMode::Pit { seed: 3 }).unwrap().holds);
    }
}
