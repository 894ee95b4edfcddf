//! The polynomial `C_n`, the bare actions `ψ*_0`, `χ*_0`, the dressed kernels
//! `C_±`, fermionic words and their determinant action on the primary tower.

use crate::error::{Result, SgffError};
use crate::exact_residue::{reduce_to_window, WindowReduction};
use crate::laurent::{det, wedge_basis, LaurentPoly};
use crate::scalars::{rat, Consts, Rational, Scalar};
use crate::series::PowerSeries;
use crate::towers::{root_power_product, Layout, Primary, ShiftedPrimary, TowerComponent, TowerSource};
use serde::Serialize;
use std::fmt;

// ---------------------------------------------------------------- C_n

/// `C_n(Z,S) = Z/(4ν) Σ_{ε} P(ε₁Z)P(ε₂S)/(ε₁Z + ε₂S)`, a polynomial.
pub fn c_poly<F: Scalar>(lay: &Layout, z: usize, s: usize, roots: &[LaurentPoly<F>], nu: &F) -> Result<LaurentPoly<F>> {
    let (pz, mz) = (lay.p(z, 1, roots), lay.p(z, -1, roots));
    let (ps, ms) = (lay.p(s, 1, roots), lay.p(s, -1, roots));
    let n1 = &(&pz * &ps) - &(&mz * &ms);
    let n2 = &(&pz * &ms) - &(&mz * &ps);
    let q1 = n1.div_linear(z, Some(s), &-F::one())?;
    let q2 = n2.div_linear(z, Some(s), &F::one())?;
    let f = &(&q1 + &q2) * &lay.var::<F>(z);
    Ok(f.scale(&(F::from_i64(4) * nu.clone()).inv().ok_or_else(|| SgffError::Domain("ν = 0".into()))?))
}

/// Outcome of the structural checks on `C_n`.
#[derive(Clone, Debug, Serialize)]
pub struct CInvariants {
    pub n: usize,
    pub odd_in_z: bool,
    pub even_in_s: bool,
    pub degree_z: Option<i32>,
    pub degree_s: Option<i32>,
    pub homogeneous_degree: bool,
    /// `C_n` at `B_{2n−1} = B`, `B_{2n} = −B` against `(Z²−B²)(S²−B²)C_{n−1}`.
    pub specialization: bool,
}

impl CInvariants {
    pub fn all_hold(&self) -> bool {
        let n = self.n as i32;
        self.odd_in_z
            && self.even_in_s
            && self.degree_z == Some(2 * n - 1)
            && self.degree_s == Some(2 * n - 2)
            && self.homogeneous_degree
            && self.specialization
    }
}

/// Parity, degree bounds, total degree `4n` in `(Z, S, B)` and the specialization
/// `B_{2n−1} = B, B_{2n} = −B` against `(Z²−B²)(S²−B²)C_{n−1}`.
pub fn c_invariants<F: Scalar>(lay: &Layout, n: usize, nu: &F) -> Result<CInvariants> {
    if n == 0 {
        return Err(SgffError::Precondition("C_0 vanishes; invariants start at n = 1".into()));
    }
    let (z, s) = (lay.z[0], lay.s[0]);
    let roots = lay.formal_roots(n);
    let c = c_poly(lay, z, s, &roots, nu)?;
    let odd_in_z = (&c + &c.negate_var(z)).is_zero();
    let even_in_s = c.negate_var(s) == c;
    let mut deg_vars = vec![z, s];
    deg_vars.extend_from_slice(&lay.b[..2 * n]);
    let homogeneous_degree = n == 0 || c.total_degree_range(&deg_vars) == Some((4 * n as i32, 4 * n as i32));
    let specialization = if n == 0 {
        true
    } else {
        let bb = lay.var::<F>(lay.b[2 * n - 2]);
        let mut spec_roots = lay.formal_roots::<F>(n - 1);
        spec_roots.push(bb.clone());
        spec_roots.push(-&bb);
        let lhs = c_poly(lay, z, s, &spec_roots, nu)?;
        let lower = c_poly(lay, z, s, &lay.formal_roots(n - 1), nu)?;
        let sq = |v: usize| {
            let x = lay.var::<F>(v);
            &(&x * &x) - &(&bb * &bb)
        };
        lhs.agrees_with(&(&(&sq(z) * &sq(s)) * &lower))
    };
    Ok(CInvariants {
        n,
        odd_in_z,
        even_in_s,
        degree_z: c.max_degree(z),
        degree_s: c.max_degree(s),
        homogeneous_degree,
        specialization,
    })
}

// ---------------------------------------------------------------- bare actions

fn shift_slots_up<F: Scalar>(f: &LaurentPoly<F>, slots: &[usize], from: usize) -> LaurentPoly<F> {
    // Slot i (0-based, i ≥ from) moves to i+1; `slots` must hold one spare slot.
    let mut map: Vec<usize> = (0..f.vars().len()).collect();
    for i in from..slots.len() - 1 {
        map[slots[i]] = slots[i + 1];
    }
    map[slots[slots.len() - 1]] = slots[from];
    f.remap(&map)
}

/// `Σ_j (−1)^{j−1} K(S_j) L(S_1,…,Ŝ_j,…,S_{l+1})` for a one-slot kernel `K(S)` built by `kernel`.
fn insert_kernel<F: Scalar>(
    lay: &Layout,
    num: &LaurentPoly<F>,
    l: usize,
    kernel: impl Fn(usize) -> Result<LaurentPoly<F>>,
) -> Result<LaurentPoly<F>> {
    if l + 1 > lay.s.len() {
        return Err(SgffError::Structure(format!("layout holds only {} S-variables", lay.s.len())));
    }
    let slots = &lay.s[..=l];
    let mut acc = lay.zero();
    for j in 0..=l {
        let rest = shift_slots_up(num, slots, j);
        let t = &kernel(slots[j])? * &rest;
        if j % 2 == 0 {
            acc = &acc + &t;
        } else {
            acc = &acc - &t;
        }
    }
    Ok(acc)
}

fn check_fresh<F: Scalar>(c: &TowerComponent<F>, v: usize, what: &str) -> Result<()> {
    let present = |p: &LaurentPoly<F>| p.any_term(|e| e[v] != 0);
    if present(&c.num) || present(&c.den) {
        return Err(SgffError::Structure(format!("{what} variable already occurs in the component")));
    }
    Ok(())
}

/// `ψ*_0(Z)` on one component: `L^{(l,n)} → L^{(l+1,n)}`.
pub fn apply_psi0<F: Scalar>(
    lay: &Layout,
    c: &TowerComponent<F>,
    z: usize,
    roots: &[LaurentPoly<F>],
    nu: &F,
) -> Result<TowerComponent<F>> {
    let num = insert_kernel(lay, &c.num, c.l, |s| c_poly(lay, z, s, roots, nu))?;
    let den = &c.den * &lay.p(z, -1, roots);
    Ok(TowerComponent { l: c.l + 1, n: c.n, num, den })
}

/// `χ*_0(X)` on one component: `L^{(l,n)} → L^{(l−1,n)}`, or `None` when `l = 0`.
pub fn apply_chi0<F: Scalar>(
    lay: &Layout,
    c: &TowerComponent<F>,
    x: usize,
    roots: &[LaurentPoly<F>],
) -> Result<Option<TowerComponent<F>>> {
    if c.l == 0 {
        return Ok(None);
    }
    check_fresh(c, x, "chi")?;
    let f = first_slot_to(lay, &c.num, c.l, x);
    let odd = (&f - &f.negate_var(x)).scale(&F::from_i64(2).inv().expect("2 ≠ 0"));
    let den = &c.den * &lay.p(x, -1, roots);
    Ok(Some(TowerComponent { l: c.l - 1, n: c.n, num: odd, den }))
}

/// Renames slot 1 to `x` and shifts the remaining slots down.
fn first_slot_to<F: Scalar>(lay: &Layout, f: &LaurentPoly<F>, l: usize, x: usize) -> LaurentPoly<F> {
    let mut map: Vec<usize> = (0..f.vars().len()).collect();
    map[lay.s[0]] = x;
    map[x] = lay.s[0];
    for i in 1..l {
        map[lay.s[i]] = lay.s[i - 1];
    }
    if l >= 1 {
        map[x] = lay.s[l - 1];
    }
    f.remap(&map)
}

/// `ψ*_0(Z)` applied to a source tower.
pub struct Psi0On<'a, F, T: ?Sized> {
    pub inner: &'a T,
    pub z: usize,
    pub nu: F,
}

impl<F: Scalar, T: TowerSource<F> + ?Sized> TowerSource<F> for Psi0On<'_, F, T> {
    fn charge(&self) -> i64 {
        self.inner.charge() + 1
    }
    fn component(&self, lay: &Layout, n: usize, roots: &[LaurentPoly<F>]) -> Result<Option<TowerComponent<F>>> {
        match self.inner.component(lay, n, roots)? {
            Some(c) => Ok(Some(apply_psi0(lay, &c, self.z, roots, &self.nu)?)),
            None => Ok(None),
        }
    }
}

/// `χ*_0(X)` applied to a source tower.
pub struct Chi0On<'a, T: ?Sized> {
    pub inner: &'a T,
    pub x: usize,
}

impl<F: Scalar, T: TowerSource<F> + ?Sized> TowerSource<F> for Chi0On<'_, T> {
    fn charge(&self) -> i64 {
        self.inner.charge() - 1
    }
    fn component(&self, lay: &Layout, n: usize, roots: &[LaurentPoly<F>]) -> Result<Option<TowerComponent<F>>> {
        match self.inner.component(lay, n, roots)? {
            Some(c) => apply_chi0(lay, &c, self.x, roots),
            None => Ok(None),
        }
    }
}

// ---------------------------------------------------------------- τ± and C±

/// Coefficient of `x^l` in `τ_+` (`l ≥ 0`) or `τ_−` (`l ≤ −1`).
pub fn tau_coeff<F: Scalar>(consts: &Consts<F>, l: i64) -> Result<F> {
    let half = F::from_i64(2).inv().expect("2 ≠ 0");
    let sign = if l.rem_euclid(2) == 0 { F::one() } else { -F::one() };
    let t = consts.t_coeff(l)? * half * sign;
    Ok(if l >= 0 { -t } else { t })
}

/// The first `order` coefficients of `τ_+` (powers `0..order`) and `τ_−` (powers `−1, −2, …`).
pub fn tau_series<F: Scalar>(consts: &Consts<F>, order: usize) -> Result<(Vec<F>, Vec<F>)> {
    let plus = (0..order as i64).map(|l| tau_coeff(consts, l)).collect::<Result<_>>()?;
    let minus = (1..=order as i64).map(|l| tau_coeff(consts, -l)).collect::<Result<_>>()?;
    Ok((plus, minus))
}

/// Coefficients of `x^m`, `m = 0..order`, of `x τ_+(x) − x^{−1} τ_−(x^{−1})`.
pub fn tau_cross_term<F: Scalar>(consts: &Consts<F>, order: usize) -> Result<Vec<F>> {
    let (plus, minus) = tau_series(consts, order + 1)?;
    Ok((0..=order)
        .map(|m| {
            let a = if m >= 1 { plus[m - 1].clone() } else { F::zero() };
            a - minus[m].clone()
        })
        .collect())
}

/// Which of the two dressed kernels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Branch {
    /// `C_+`, expanded at `Z → ∞`.
    Plus,
    /// `C_−`, expanded at `Z → 0`.
    Minus,
}

/// `C_±(Z,Y)` truncated to the `Z`-powers that can reach mode `a`:
/// powers `≥ 2n − a` for `C_+`, `≤ a` for `C_−`.
pub fn c_pm<F: Scalar>(
    lay: &Layout,
    branch: Branch,
    z: usize,
    y: usize,
    roots: &[LaurentPoly<F>],
    consts: &Consts<F>,
    a: i32,
) -> Result<LaurentPoly<F>> {
    let half = F::from_i64(2).inv().expect("2 ≠ 0");
    let parts = |v: usize| {
        let (p, m) = (lay.p(v, 1, roots), lay.p(v, -1, roots));
        ((&p + &m).scale(&half), (&p - &m).scale(&half))
    };
    let (ez, oz) = parts(z);
    let (ey, oy) = parts(y);
    let ee = &ez * &ey;
    let oo = &oz * &oy;
    let ls: Vec<i64> = match branch {
        Branch::Plus => (0..=a.max(-1) as i64).collect(),
        Branch::Minus => (1..=a.max(0) as i64).map(|l| -l).collect(),
    };
    let mut acc = lay.zero();
    for l in ls {
        let c = tau_coeff(consts, l)? * F::from_i64(2);
        let base = if l.rem_euclid(2) == 1 { &ee } else { &oo };
        let mut e = vec![0; lay.vars.len()];
        e[y] = l as i32;
        e[z] = -(l as i32);
        acc = &acc + &base.mul_monomial(&e, &c);
    }
    Ok(acc)
}

// ---------------------------------------------------------------- mode extraction

/// Expansion coefficients of `1/sqrt(P(Z)P(−Z))` at both ends.
#[derive(Clone, Debug)]
pub struct ModeSeries<F: Scalar> {
    pub n: usize,
    /// `r_j` with `R_∞(Z) = Σ_j r_j Z^{−2n−2j}`.
    pub at_inf: Vec<LaurentPoly<F>>,
    /// `r̄_j` with `R_0(Z) = Σ_j r̄_j Z^{2j}` (the `σ_{2n}^{−1}` included).
    pub at_zero: Vec<LaurentPoly<F>>,
}

impl<F: Scalar> ModeSeries<F> {
    pub fn new(lay: &Layout, roots: &[LaurentPoly<F>], order: usize) -> Result<Self> {
        let v = &lay.vars;
        let sq: Vec<LaurentPoly<F>> = roots.iter().map(|b| -&(b * b)).collect();
        let inf = PowerSeries::product_of_binomials(v, order, 1, &sq).sqrt()?.inv()?;
        let sq0: Vec<LaurentPoly<F>> = roots
            .iter()
            .map(|b| b.monomial_inverse().map(|i| -&(&i * &i)))
            .collect::<Result<_>>()?;
        let sigma_inv = root_power_product(lay, roots, -1)?;
        let zero = PowerSeries::product_of_binomials(v, order, 1, &sq0).sqrt()?.inv()?;
        Ok(ModeSeries {
            n: roots.len() / 2,
            at_inf: inf.coeffs().to_vec(),
            at_zero: zero.coeffs().iter().map(|c| c * &sigma_inv).collect(),
        })
    }

    /// Coefficient of `v^{−a}` in `f·R_∞(v)`; `f` must be a Laurent polynomial in `v`.
    pub fn mode_inf(&self, f: &LaurentPoly<F>, v: usize, a: i32) -> Result<LaurentPoly<F>> {
        let Some(hi) = f.max_degree(v) else { return Ok(LaurentPoly::zero(f.vars())) };
        let mut acc = LaurentPoly::zero(f.vars());
        let mut j = 0;
        loop {
            let d = -a + 2 * self.n as i32 + 2 * j as i32;
            if d > hi {
                break;
            }
            let r = self.at_inf.get(j).ok_or_else(|| trunc(a, self.at_inf.len()))?;
            acc = &acc + &(&f.coeff_of(v, d) * r);
            j += 1;
        }
        Ok(acc)
    }

    /// Coefficient of `v^{a}` in `f·R_0(v)`.
    pub fn mode_zero(&self, f: &LaurentPoly<F>, v: usize, a: i32) -> Result<LaurentPoly<F>> {
        let Some(lo) = f.min_degree(v) else { return Ok(LaurentPoly::zero(f.vars())) };
        let mut acc = LaurentPoly::zero(f.vars());
        let mut j = 0;
        loop {
            let d = a - 2 * j as i32;
            if d < lo {
                break;
            }
            let r = self.at_zero.get(j).ok_or_else(|| trunc(a, self.at_zero.len()))?;
            acc = &acc + &(&f.coeff_of(v, d) * r);
            j += 1;
        }
        Ok(acc)
    }
}

fn trunc(a: i32, order: usize) -> SgffError {
    SgffError::Truncation(format!("mode {a} needs more than {order} terms of 1/sqrt(P(Z)P(−Z))"))
}

// ---------------------------------------------------------------- words

/// The four fermion species.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Species {
    Psi,
    PsiBar,
    Chi,
    ChiBar,
}

impl Species {
    fn name(self) -> &'static str {
        match self {
            Species::Psi => "psi",
            Species::PsiBar => "psibar",
            Species::Chi => "chi",
            Species::ChiBar => "chibar",
        }
    }

    /// `+1` for ψ-type creation operators, `−1` for χ-type.
    fn charge(self) -> i64 {
        match self {
            Species::Psi | Species::PsiBar => 1,
            Species::Chi | Species::ChiBar => -1,
        }
    }

    /// Position in the canonical order ψ*, ψ̄*, χ̄*, χ*.
    fn rank(self) -> u8 {
        match self {
            Species::Psi => 0,
            Species::PsiBar => 1,
            Species::ChiBar => 2,
            Species::Chi => 3,
        }
    }
}

/// Mode index (odd, positive) or a generating variable of a bare field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Mode {
    Index(i32),
    /// `ψ*_0(Z_k)` / `χ*_0(X_k)` with a 1-based variable number.
    Bare(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Fermion {
    pub species: Species,
    pub creation: bool,
    pub mode: Mode,
}

impl Fermion {
    pub fn creation(species: Species, index: i32) -> Self {
        Fermion { species, creation: true, mode: Mode::Index(index) }
    }

    fn charge(&self) -> i64 {
        if self.creation {
            self.species.charge()
        } else {
            -self.species.charge()
        }
    }
}

impl fmt::Display for Fermion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let star = if self.creation { "*" } else { "" };
        match self.mode {
            Mode::Index(i) => write!(f, "{}{star}[{i}]", self.species.name()),
            Mode::Bare(k) => {
                let v = if self.species == Species::Psi { "Z" } else { "X" };
                write!(f, "{}*0({v}{k})", self.species.name())
            }
        }
    }
}

/// A product of fermions, leftmost factor acting last.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FermionWord {
    pub factors: Vec<Fermion>,
}

impl fmt::Display for FermionWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl FermionWord {
    pub fn new(factors: Vec<Fermion>) -> Self {
        FermionWord { factors }
    }

    /// Parses tokens such as `psi*[1] chibar*[3] chi[1]` or `psi*0(Z1) chi*0(X1)`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut factors = Vec::new();
        for tok in s.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
            factors.push(parse_factor(tok)?);
        }
        let w = FermionWord { factors };
        let bare = w.factors.iter().filter(|f| matches!(f.mode, Mode::Bare(_))).count();
        if bare != 0 && bare != w.factors.len() {
            return Err(SgffError::Usage("bare and mode fermions cannot be mixed in one word".into()));
        }
        Ok(w)
    }

    pub fn charge(&self) -> i64 {
        self.factors.iter().map(|f| f.charge()).sum()
    }

    pub fn is_bare(&self) -> bool {
        !self.factors.is_empty() && self.factors.iter().all(|f| matches!(f.mode, Mode::Bare(_)))
    }

    pub fn is_creation_only(&self) -> bool {
        self.factors.iter().all(|f| f.creation)
    }

    /// `m = ½(#ψ* − #χ* + #χ̄* − #ψ̄*)`, a half-integer in general.
    pub fn weight(&self) -> Rational {
        let count = |s: Species| self.factors.iter().filter(|f| f.creation && f.species == s).count() as i64;
        rat(count(Species::Psi) - count(Species::Chi) + count(Species::ChiBar) - count(Species::PsiBar), 2)
    }

    /// Moves annihilators to the right with the canonical anticommutators; each
    /// annihilator reaching the primary state gives zero, as does a repeated mode.
    pub fn normal_order(&self) -> Result<Vec<(i64, FermionWord)>> {
        if self.is_bare() {
            return Ok(vec![(1, self.clone())]);
        }
        let mut out = Vec::new();
        normal_rec(self.factors.clone(), 1, &mut out);
        Ok(out)
    }
}

fn normal_rec(f: Vec<Fermion>, sign: i64, out: &mut Vec<(i64, FermionWord)>) {
    let Some(i) = f.iter().rposition(|x| !x.creation) else {
        let repeated = f.iter().enumerate().any(|(k, x)| matches!(x.mode, Mode::Index(_)) && f[k + 1..].contains(x));
        if !repeated {
            out.push((sign, FermionWord { factors: f }));
        }
        return;
    };
    if i + 1 == f.len() {
        return;
    }
    let (ann, cre) = (f[i], f[i + 1]);
    if ann.species == cre.species && ann.mode == cre.mode {
        let mut g = f.clone();
        g.drain(i..=i + 1);
        normal_rec(g, sign, out);
    }
    let mut g = f;
    g.swap(i, i + 1);
    normal_rec(g, -sign, out);
}

fn parse_factor(tok: &str) -> Result<Fermion> {
    let bad = || SgffError::Usage(format!("cannot parse fermion `{tok}`"));
    let (head, rest) = match tok.find(['[', '(']) {
        Some(p) => tok.split_at(p),
        None => return Err(bad()),
    };
    let (name, creation, bare) = if let Some(h) = head.strip_suffix("*0") {
        (h, true, true)
    } else if let Some(h) = head.strip_suffix('*') {
        (h, true, false)
    } else {
        (head, false, false)
    };
    let species = match name {
        "psi" => Species::Psi,
        "psibar" => Species::PsiBar,
        "chi" => Species::Chi,
        "chibar" => Species::ChiBar,
        _ => return Err(bad()),
    };
    if bare {
        let inner = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
        let (v, k) = inner.split_at(1.min(inner.len()));
        let want = match species {
            Species::Psi => "Z",
            Species::Chi => "X",
            _ => return Err(SgffError::Usage(format!("`{tok}`: only psi*0 and chi*0 exist"))),
        };
        if v != want {
            return Err(bad());
        }
        let k: usize = k.parse().map_err(|_| bad())?;
        if k == 0 {
            return Err(bad());
        }
        return Ok(Fermion { species, creation, mode: Mode::Bare(k) });
    }
    let inner = rest.strip_prefix('[').and_then(|r| r.strip_suffix(']')).ok_or_else(bad)?;
    let i: i32 = inner.parse().map_err(|_| bad())?;
    if i <= 0 || i % 2 == 0 {
        return Err(SgffError::Usage(format!("`{tok}`: mode indices are positive odd integers")));
    }
    Ok(Fermion { species, creation, mode: Mode::Index(i) })
}

/// Stable sort of the factors into ψ*, ψ̄*, χ̄*, χ* blocks and the sign of that reordering.
fn canonicalize(factors: &[Fermion]) -> (Vec<Fermion>, i64) {
    let mut idx: Vec<usize> = (0..factors.len()).collect();
    idx.sort_by_key(|&i| factors[i].species.rank());
    let mut inv = 0;
    for a in 0..idx.len() {
        for b in a + 1..idx.len() {
            if idx[a] > idx[b] {
                inv += 1;
            }
        }
    }
    (idx.iter().map(|&i| factors[i]).collect(), if inv % 2 == 0 { 1 } else { -1 })
}

// ---------------------------------------------------------------- word actions

/// How the `S`-columns of the determinant are filled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Variant {
    /// `C_±` throughout.
    Dressed,
    /// `C_n` in the `S`-columns, `C_±` in the fermion-fermion block.
    Modified,
}

/// Kernel and parameters shared by the word actions at one `n`.
pub struct WordContext<'a, F: Scalar> {
    pub lay: &'a Layout,
    pub roots: Vec<LaurentPoly<F>>,
    pub consts: &'a Consts<F>,
    pub modes: ModeSeries<F>,
}

impl<'a, F: Scalar> WordContext<'a, F> {
    /// `order` terms of `1/sqrt(P(Z)P(−Z))` at each end.
    pub fn new(lay: &'a Layout, roots: Vec<LaurentPoly<F>>, consts: &'a Consts<F>, order: usize) -> Result<Self> {
        let modes = ModeSeries::new(lay, &roots, order)?;
        Ok(WordContext { lay, roots, consts, modes })
    }

    pub fn n(&self) -> usize {
        self.roots.len() / 2
    }

    fn z(&self) -> usize {
        self.lay.z[0]
    }

    fn x(&self) -> usize {
        self.lay.x[0]
    }

    /// Mode `a` of a ψ-type field against `K(Z, y)`, where `K` is `C_±` or `C_n`.
    fn row_kernel(&self, sp: Species, a: i32, y: usize, use_c: bool) -> Result<LaurentPoly<F>> {
        let z = self.z();
        let branch = if sp == Species::Psi { Branch::Plus } else { Branch::Minus };
        let k = if use_c {
            c_poly(self.lay, z, y, &self.roots, &self.consts.nu)?
        } else {
            c_pm(self.lay, branch, z, y, &self.roots, self.consts, a)?
        };
        match branch {
            Branch::Plus => self.modes.mode_inf(&k, z, a),
            Branch::Minus => self.modes.mode_zero(&k, z, a),
        }
    }

    /// Mode `b` of a χ-type field on a polynomial in the variable `x`.
    fn col_mode(&self, sp: Species, f: &LaurentPoly<F>, x: usize, b: i32) -> Result<LaurentPoly<F>> {
        match sp {
            Species::Chi => self.modes.mode_inf(f, x, b),
            _ => self.modes.mode_zero(f, x, b),
        }
    }

    /// The dressed (or modified) determinant action of a creation-only mode word on `M_0`.
    pub fn apply_determinant(&self, word: &FermionWord, variant: Variant) -> Result<TowerComponent<F>> {
        let lay = self.lay;
        let n = self.n();
        if !word.is_creation_only() || word.is_bare() {
            return Err(SgffError::Precondition("determinant action needs creation-only mode words".into()));
        }
        let (canon, sign) = canonicalize(&word.factors);
        let rows: Vec<&Fermion> = canon.iter().filter(|f| f.species.charge() == 1).collect();
        // Columns X_1..X_{k'}: χ* in reversed word order, then χ̄* in reversed word order.
        let mut cols: Vec<&Fermion> = canon.iter().filter(|f| f.species == Species::Chi).rev().collect();
        cols.extend(canon.iter().filter(|f| f.species == Species::ChiBar).rev());
        let (k, kp) = (rows.len(), cols.len());
        if n + k < kp {
            return Ok(TowerComponent::polynomial(0, n, lay.zero()));
        }
        let l = n + k - kp;
        if l > lay.s.len() {
            return Err(SgffError::Structure(format!("layout holds only {} S-variables", lay.s.len())));
        }
        let (z, x) = (self.z(), self.x());
        let idx = |f: &Fermion| match f.mode {
            Mode::Index(i) => i,
            Mode::Bare(_) => unreachable!("checked"),
        };
        let mut m: Vec<Vec<LaurentPoly<F>>> = Vec::with_capacity(k + n);
        for r in &rows {
            let a = idx(r);
            let mut row = Vec::with_capacity(kp + l);
            // Fermion-fermion block: only ψ*χ̄* and ψ̄*χ* pairs contract.
            for c in &cols {
                let pairs = matches!((r.species, c.species), (Species::Psi, Species::ChiBar) | (Species::PsiBar, Species::Chi));
                if !pairs {
                    row.push(lay.zero());
                    continue;
                }
                let kz = self.row_kernel(r.species, a, x, false)?;
                row.push(self.col_mode(c.species, &kz, x, idx(c))?);
            }
            for &s in &lay.s[..l] {
                row.push(self.row_kernel(r.species, a, s, variant == Variant::Modified)?);
            }
            m.push(row);
        }
        for rr in 1..=n as i32 {
            let mut row = Vec::with_capacity(kp + l);
            for c in &cols {
                let f = LaurentPoly::var_pow(&lay.vars, x, 2 * rr - 1);
                row.push(self.col_mode(c.species, &f, x, idx(c))?);
            }
            for &s in &lay.s[..l] {
                row.push(LaurentPoly::var_pow(&lay.vars, s, 2 * rr - 1));
            }
            m.push(row);
        }
        let _ = z;
        let d = det(&lay.vars, &m);
        let kk = if (k * kp) % 2 == 0 { 1 } else { -1 };
        Ok(TowerComponent::polynomial(l, n, d.scale(&F::from_i64(sign * kk))))
    }

    /// Linear combination over the normal-ordered words.
    pub fn apply_word(&self, word: &FermionWord, variant: Variant) -> Result<TowerComponent<F>> {
        let l = (self.n() as i64 + word.charge()).max(0) as usize;
        let mut acc = TowerComponent::polynomial(l, self.n(), self.lay.zero());
        for (s, w) in word.normal_order()? {
            let c = if w.factors.is_empty() {
                Primary.component(self.lay, self.n(), &self.roots)?.expect("primary")
            } else {
                self.apply_determinant(&w, variant)?
            };
            acc.num = &acc.num + &c.num.scale(&F::from_i64(s));
        }
        Ok(acc)
    }

    /// Sequential action of the primed fields (one-fermion kernels without the Bogolubov
    /// block), rightmost factor first.
    pub fn apply_primed(&self, word: &FermionWord) -> Result<Option<TowerComponent<F>>> {
        if !word.is_creation_only() || word.is_bare() {
            return Err(SgffError::Precondition("primed action needs creation-only mode words".into()));
        }
        let lay = self.lay;
        let mut cur = Primary.component(lay, self.n(), &self.roots)?.expect("primary");
        for f in word.factors.iter().rev() {
            let Mode::Index(a) = f.mode else { unreachable!("checked") };
            cur = match f.species {
                Species::Psi | Species::PsiBar => {
                    let num = insert_kernel(lay, &cur.num, cur.l, |s| self.row_kernel(f.species, a, s, false))?;
                    TowerComponent { l: cur.l + 1, n: cur.n, num, den: cur.den }
                }
                Species::Chi | Species::ChiBar => {
                    if cur.l == 0 {
                        return Ok(None);
                    }
                    let x = self.x();
                    let g = first_slot_to(lay, &cur.num, cur.l, x);
                    let num = self.col_mode(f.species, &g, x, a)?;
                    TowerComponent { l: cur.l - 1, n: cur.n, num, den: cur.den }
                }
            };
        }
        Ok(Some(cur))
    }
}

/// The bare determinant formula for a word of `ψ*_0(Z_i)`, `χ*_0(X_j)` on `M_0`.
pub fn apply_bare_determinant<F: Scalar>(
    lay: &Layout,
    word: &FermionWord,
    roots: &[LaurentPoly<F>],
    nu: &F,
) -> Result<TowerComponent<F>> {
    if !word.is_bare() {
        return Err(SgffError::Precondition("bare determinant needs psi*0/chi*0 factors".into()));
    }
    let n = roots.len() / 2;
    let (canon, sign) = canonicalize(&word.factors);
    let var_of = |f: &Fermion| -> Result<usize> {
        let Mode::Bare(k) = f.mode else { unreachable!("checked") };
        let pool = if f.species == Species::Psi { &lay.z } else { &lay.x };
        pool.get(k - 1).copied().ok_or_else(|| SgffError::Structure(format!("layout lacks variable {f}")))
    };
    let rows: Vec<usize> = canon.iter().filter(|f| f.species == Species::Psi).map(var_of).collect::<Result<_>>()?;
    let cols: Vec<usize> = canon.iter().filter(|f| f.species == Species::Chi).rev().map(var_of).collect::<Result<_>>()?;
    let (k, kp) = (rows.len(), cols.len());
    if n + k < kp {
        return Ok(TowerComponent::polynomial(0, n, lay.zero()));
    }
    let l = n + k - kp;
    if l > lay.s.len() {
        return Err(SgffError::Structure(format!("layout holds only {} S-variables", lay.s.len())));
    }
    let mut m = Vec::with_capacity(k + n);
    let mut den = lay.one();
    for &z in &rows {
        let mut row: Vec<LaurentPoly<F>> = cols.iter().map(|_| lay.zero()).collect();
        for &s in &lay.s[..l] {
            row.push(c_poly(lay, z, s, roots, nu)?);
        }
        m.push(row);
        den = &den * &lay.p(z, -1, roots);
    }
    for &x in &cols {
        den = &den * &lay.p(x, -1, roots);
    }
    for r in 1..=n as i32 {
        let mut row: Vec<LaurentPoly<F>> = cols.iter().map(|&x| LaurentPoly::var_pow(&lay.vars, x, 2 * r - 1)).collect();
        for &s in &lay.s[..l] {
            row.push(LaurentPoly::var_pow(&lay.vars, s, 2 * r - 1));
        }
        m.push(row);
    }
    let d = det(&lay.vars, &m);
    let kk = if (k * kp) % 2 == 0 { 1 } else { -1 };
    Ok(TowerComponent { l, n, num: d.scale(&F::from_i64(sign * kk)), den })
}

/// Iterated `ψ*_0` / `χ*_0` on `M_0`, rightmost factor first.
pub fn apply_bare_sequential<F: Scalar>(
    lay: &Layout,
    word: &FermionWord,
    roots: &[LaurentPoly<F>],
    nu: &F,
) -> Result<Option<TowerComponent<F>>> {
    if !word.is_bare() {
        return Err(SgffError::Precondition("bare action needs psi*0/chi*0 factors".into()));
    }
    let n = roots.len() / 2;
    let mut cur = Primary.component(lay, n, roots)?.expect("primary");
    for f in word.factors.iter().rev() {
        let Mode::Bare(k) = f.mode else { unreachable!("checked") };
        cur = if f.species == Species::Psi {
            let z = *lay.z.get(k - 1).ok_or_else(|| SgffError::Structure("layout lacks Z variable".into()))?;
            apply_psi0(lay, &cur, z, roots, nu)?
        } else {
            let x = *lay.x.get(k - 1).ok_or_else(|| SgffError::Structure("layout lacks X variable".into()))?;
            match apply_chi0(lay, &cur, x, roots)? {
                Some(c) => c,
                None => return Ok(None),
            }
        };
    }
    Ok(Some(cur))
}

// ---------------------------------------------------------------- mode polynomials

/// `p_{2j−1}(S)` (the `Z^{2n−2j+1}` coefficient of `C_+`) or `p̄_{2j−1}(S)`
/// (the `Z^{2j−1}` coefficient of `C_−`).
pub fn mode_polynomial<F: Scalar>(
    lay: &Layout,
    branch: Branch,
    j: usize,
    roots: &[LaurentPoly<F>],
    consts: &Consts<F>,
) -> Result<LaurentPoly<F>> {
    let n = roots.len() / 2;
    let (z, s) = (lay.z[0], lay.s[0]);
    let (pw, bound) = match branch {
        Branch::Plus => (2 * n as i32 - 2 * j as i32 + 1, 2 * j as i32 - 1),
        Branch::Minus => (2 * j as i32 - 1, 2 * j as i32 - 1),
    };
    Ok(c_pm(lay, branch, z, s, roots, consts, bound)?.coeff_of(z, pw))
}

/// Order-by-order comparison of `C_±` with `C_n` modulo `Q`-exact forms in `S`.
#[derive(Clone, Debug, Serialize)]
pub struct KernelExpansion {
    pub n: usize,
    pub branch: Branch,
    /// `Z`-powers whose `C_± − C_n` coefficient reduces to zero.
    pub matching_powers: Vec<i32>,
    pub failing_powers: Vec<i32>,
    /// `p_{2j−1}` has top term `t_{2j−1} S^{2n+2j−1}`, `p̄_{2j−1}` bottom term `−σ² t_{1−2j} S^{1−2j}`.
    pub top_coefficients: bool,
}

impl KernelExpansion {
    pub fn holds(&self) -> bool {
        self.failing_powers.is_empty() && self.top_coefficients
    }
}

/// Checks `C_± ≡ C_n` coefficientwise in `Z` over `depth` odd powers beyond the polynomial range.
pub fn check_kernel_expansion<F: Scalar>(
    lay: &Layout,
    branch: Branch,
    roots: &[LaurentPoly<F>],
    consts: &Consts<F>,
    depth: usize,
) -> Result<KernelExpansion> {
    let n = roots.len() / 2;
    let (z, s) = (lay.z[0], lay.s[0]);
    let c = c_poly(lay, z, s, roots, &consts.nu)?;
    let powers: Vec<i32> = match branch {
        Branch::Plus => (0..n + depth).map(|i| 2 * n as i32 - 1 - 2 * i as i32).collect(),
        Branch::Minus => (0..n + depth).map(|i| 2 * i as i32 + 1).collect(),
    };
    let bound = match branch {
        Branch::Plus => 2 * n as i32 - powers.last().copied().unwrap_or(0),
        Branch::Minus => powers.last().copied().unwrap_or(0),
    };
    let cpm = c_pm(lay, branch, z, s, roots, consts, bound)?;
    let mut matching = Vec::new();
    let mut failing = Vec::new();
    for &pw in &powers {
        let d = &cpm.coeff_of(z, pw) - &c.coeff_of(z, pw);
        let red = reduce_to_window(&d, &[s], roots, &consts.big_a, &consts.big_q)?;
        if red.reduced.is_zero() {
            matching.push(pw);
        } else {
            failing.push(pw);
        }
    }
    let sigma = root_power_product(lay, roots, 1)?;
    let mut top = true;
    for j in 1..=n {
        let p = mode_polynomial(lay, branch, j, roots, consts)?;
        let (deg, want) = match branch {
            Branch::Plus => (2 * (n + j) as i32 - 1, lay.constant(consts.t_coeff(2 * j as i64 - 1)?)),
            Branch::Minus => (1 - 2 * j as i32, -&(&sigma * &sigma).scale(&consts.t_coeff(1 - 2 * j as i64)?)),
        };
        let got = p.coeff_of(s, deg);
        top &= got.agrees_with(&want)
            && match branch {
                Branch::Plus => p.max_degree(s) == Some(deg),
                Branch::Minus => p.min_degree(s) == Some(deg),
            };
    }
    Ok(KernelExpansion { n, branch, matching_powers: matching, failing_powers: failing, top_coefficients: top })
}

// ---------------------------------------------------------------- leading term

/// Predicted leading wedge of a Fourier-mode word on `M_0`.
#[derive(Clone, Debug, Serialize)]
pub struct LeadingTerm<F: Scalar> {
    #[serde(serialize_with = "ser_display")]
    pub weight: Rational,
    /// Exponents `S^{−a_k} ∧ … ∧ (holes) ∧ … ∧ S^{2n+a_1}` in the order written.
    pub exponents: Vec<i32>,
    /// Power of `Π B_j` in the prefactor: `#ψ̄* − #χ̄*`, which is `q − p` on the `(n,n)` component.
    pub b_power: i64,
    /// `Π_{j≤p} t_{a_j} Π_{j>p} t_{−a_j}`.
    #[serde(serialize_with = "ser_display")]
    pub coefficient: F,
}

fn ser_display<F: fmt::Display, S: serde::Serializer>(v: &F, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// The leading term; the mode orderings must hold.
pub fn leading_term<F: Scalar>(word: &FermionWord, n: usize, consts: &Consts<F>) -> Result<LeadingTerm<F>> {
    if !word.is_creation_only() || word.is_bare() {
        return Err(SgffError::Precondition("leading term needs creation-only mode words".into()));
    }
    let (canon, _) = canonicalize(&word.factors);
    let modes = |sp: Species| -> Vec<i32> {
        canon
            .iter()
            .filter(|f| f.species == sp)
            .map(|f| match f.mode {
                Mode::Index(i) => i,
                Mode::Bare(_) => unreachable!("checked"),
            })
            .collect()
    };
    let a_psi = modes(Species::Psi);
    let a_bar = modes(Species::PsiBar);
    // Word order χ̄*(b_k)…χ̄*(b_{q+1}) χ*(b_q)…χ*(b_1).
    let b_chi: Vec<i32> = modes(Species::Chi).into_iter().rev().collect();
    let b_bar: Vec<i32> = modes(Species::ChiBar).into_iter().rev().collect();
    let dec = |v: &[i32]| v.windows(2).all(|w| w[0] > w[1]);
    let inc = |v: &[i32]| v.windows(2).all(|w| w[0] < w[1]);
    let two_n = 2 * n as i32;
    let mut ok = dec(&a_psi) && inc(&a_bar) && inc(&b_chi) && dec(&b_bar);
    if let (Some(&bq), Some(&bq1)) = (b_chi.last(), b_bar.first()) {
        ok &= two_n - bq > bq1;
    }
    ok &= b_chi.iter().chain(&b_bar).all(|&b| b < two_n);
    if !ok {
        return Err(SgffError::Precondition(format!("mode ordering violated in `{word}` at n = {n}")));
    }
    let mut holes: Vec<i32> = b_bar.clone();
    holes.extend(b_chi.iter().map(|b| two_n - b));
    let mut exps: Vec<i32> = a_bar.iter().rev().map(|a| -a).collect();
    exps.extend((0..n as i32).map(|j| 2 * j + 1).filter(|e| !holes.contains(e)));
    exps.extend(a_psi.iter().rev().map(|a| two_n + a));
    let mut coefficient = F::one();
    for &a in &a_psi {
        coefficient = coefficient * consts.t_coeff(a as i64)?;
    }
    for &a in &a_bar {
        coefficient = coefficient * consts.t_coeff(-a as i64)?;
    }
    Ok(LeadingTerm {
        weight: word.weight(),
        exponents: exps,
        b_power: a_bar.len() as i64 - b_bar.len() as i64,
        coefficient,
    })
}

/// Sign `s` with `coefficient of the leading wedge = s·coefficient·Π B^{b_power}`, if any.
pub fn leading_term_sign<F: Scalar>(ctx: &WordContext<'_, F>, word: &FermionWord) -> Result<Option<i64>> {
    let lt = leading_term(word, ctx.n(), ctx.consts)?;
    let c = ctx.apply_determinant(word, Variant::Dressed)?;
    let slots = &ctx.lay.s[..c.l];
    let mut sorted = lt.exponents.clone();
    sorted.sort();
    let mut inv = 0;
    for i in 0..lt.exponents.len() {
        for j in i + 1..lt.exponents.len() {
            if lt.exponents[i] > lt.exponents[j] {
                inv += 1;
            }
        }
    }
    let perm_sign = if inv % 2 == 0 { 1 } else { -1 };
    let basis = wedge_basis(&c.num, slots);
    let got = basis.get(&sorted).cloned().unwrap_or_else(|| ctx.lay.zero());
    let want = root_power_product(ctx.lay, &ctx.roots, lt.b_power as i32)?.scale(&lt.coefficient);
    for s in [1, -1] {
        if got.agrees_with(&want.scale(&F::from_i64(s * perm_sign))) {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------- shifted primaries

/// `ψ*_1χ̄*_1 M_0` against `t_1 M_1` (`m = 1`) or `ψ̄*_1χ*_1 M_0` against `t_{−1} M_{−1}` (`m = −1`).
#[derive(Clone, Debug)]
pub struct ShiftIdentity<F: Scalar> {
    pub n: usize,
    pub m: i64,
    /// Dressed word equals `t_m M_m` exactly.
    pub dressed_exact: bool,
    /// Sign `s` with dressed word `= s·t_m M_m`, if proportional.
    pub sign: Option<i64>,
    /// Modified word equals the window reduction of `t_m M_m`.
    pub modified_matches: bool,
    /// The reduction of `t_m M_m` into the window and its exact-form certificate.
    pub certificate: WindowReduction<F>,
    /// The certificate rebuilds `t_m M_m`.
    pub certificate_valid: bool,
}

pub fn shift_identity<F: Scalar>(ctx: &WordContext<'_, F>, m: i64) -> Result<ShiftIdentity<F>> {
    let word = match m {
        1 => FermionWord::new(vec![Fermion::creation(Species::Psi, 1), Fermion::creation(Species::ChiBar, 1)]),
        -1 => FermionWord::new(vec![Fermion::creation(Species::PsiBar, 1), Fermion::creation(Species::Chi, 1)]),
        _ => return Err(SgffError::Unsupported(format!("shift identity only for m = ±1, got {m}"))),
    };
    let n = ctx.n();
    let lay = ctx.lay;
    let target = ShiftedPrimary { m }.component(lay, n, &ctx.roots)?.expect("shifted primary");
    let t = ctx.consts.t_coeff(m)?;
    let rhs = target.num.scale(&t);
    let dressed = ctx.apply_determinant(&word, Variant::Dressed)?;
    let sign = [1, -1].into_iter().find(|&s| dressed.num.agrees_with(&rhs.scale(&F::from_i64(s))));
    let modified = ctx.apply_determinant(&word, Variant::Modified)?;
    let slots = &lay.s[..n];
    let certificate = reduce_to_window(&rhs, slots, &ctx.roots, &ctx.consts.big_a, &ctx.consts.big_q)?;
    let certificate_valid = certificate.reconstruct(&ctx.roots, &ctx.consts.big_a, &ctx.consts.big_q)?.agrees_with(&rhs);
    let modified_matches = match sign {
        Some(s) => modified.num.agrees_with(&certificate.reduced.scale(&F::from_i64(s))),
        None => false,
    };
    Ok(ShiftIdentity {
        n,
        m,
        dressed_exact: sign == Some(1),
        sign,
        modified_matches,
        certificate,
        certificate_valid,
    })
}
