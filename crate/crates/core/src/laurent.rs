//! Sparse multivariate Laurent polynomials and their alternating (wedge) forms.

use crate::error::{Result, SgffError};
use crate::scalars::{agrees, Scalar, TOLERANCE_BITS};
use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

/// Ordered list of variable names shared by every polynomial of a computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vars(Arc<Vec<String>>);

impl Vars {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Self {
        Vars(Arc::new(names.iter().map(|s| s.as_ref().to_string()).collect()))
    }
    pub fn len(&self) -> usize {
        self.0.len()
    }
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
    pub fn names(&self) -> &[String] {
        &self.0
    }
    pub fn index(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }
    /// Index of `name`, panicking on unknown names (a programming error).
    pub fn idx(&self, name: &str) -> usize {
        self.index(name).unwrap_or_else(|| panic!("unknown variable {name}"))
    }
    fn same(&self, o: &Vars) -> bool {
        Arc::ptr_eq(&self.0, &o.0) || self.0 == o.0
    }
}

pub type Exps = Vec<i32>;

/// Laurent polynomial: exponent vectors (negative entries allowed) to coefficients.
#[derive(Clone, Debug)]
pub struct LaurentPoly<F> {
    vars: Vars,
    terms: BTreeMap<Exps, F>,
}

impl<F: Scalar> PartialEq for LaurentPoly<F> {
    fn eq(&self, o: &Self) -> bool {
        self.vars.same(&o.vars) && self.terms == o.terms
    }
}

impl<F: Scalar> LaurentPoly<F> {
    pub fn zero(vars: &Vars) -> Self {
        LaurentPoly { vars: vars.clone(), terms: BTreeMap::new() }
    }
    pub fn constant(vars: &Vars, c: F) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(vec![0; vars.len()], c);
        p
    }
    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, F::one())
    }
    pub fn var(vars: &Vars, i: usize) -> Self {
        Self::var_pow(vars, i, 1)
    }
    pub fn var_pow(vars: &Vars, i: usize, e: i32) -> Self {
        let mut x = vec![0; vars.len()];
        x[i] = e;
        Self::monomial(vars, x, F::one())
    }
    pub fn monomial(vars: &Vars, exps: Exps, c: F) -> Self {
        assert_eq!(exps.len(), vars.len());
        let mut p = Self::zero(vars);
        p.add_term(exps, c);
        p
    }
    /// Univariate polynomial Σ c_k x^{lo+k}.
    pub fn univariate(vars: &Vars, i: usize, lo: i32, coeffs: &[F]) -> Self {
        let mut p = Self::zero(vars);
        for (k, c) in coeffs.iter().enumerate() {
            let mut x = vec![0; vars.len()];
            x[i] = lo + k as i32;
            p.add_term(x, c.clone());
        }
        p
    }
    pub fn from_terms(vars: &Vars, terms: impl IntoIterator<Item = (Exps, F)>) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }
    pub fn terms(&self) -> &BTreeMap<Exps, F> {
        &self.terms
    }
    pub fn into_terms(self) -> BTreeMap<Exps, F> {
        self.terms
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn coeff(&self, exps: &[i32]) -> F {
        self.terms.get(exps).cloned().unwrap_or_else(F::zero)
    }
    /// Constant term.
    pub fn constant_term(&self) -> F {
        self.coeff(&vec![0; self.vars.len()])
    }

    pub fn add_term(&mut self, exps: Exps, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(v) => {
                let s = v.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&exps);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    fn check(&self, o: &Self) {
        assert!(self.vars.same(&o.vars), "polynomials over different variable lists");
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        let terms = self
            .terms
            .iter()
            .filter_map(|(e, v)| {
                let w = v.clone() * c.clone();
                (!w.is_zero()).then(|| (e.clone(), w))
            })
            .collect();
        LaurentPoly { vars: self.vars.clone(), terms }
    }

    pub fn add_scaled(&mut self, o: &Self, c: &F) {
        self.check(o);
        for (e, v) in &o.terms {
            self.add_term(e.clone(), v.clone() * c.clone());
        }
    }

    pub fn mul_monomial(&self, exps: &[i32], c: &F) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, v)| (e.iter().zip(exps).map(|(a, b)| a + b).collect(), v.clone() * c.clone()))
            .filter(|(_, v): &(Exps, F)| !v.is_zero())
            .collect();
        LaurentPoly { vars: self.vars.clone(), terms }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.vars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Inverse of a single-term polynomial.
    pub fn monomial_inverse(&self) -> Result<Self> {
        if self.terms.len() != 1 {
            return Err(SgffError::Domain("only monomials are invertible".into()));
        }
        let (e, c) = self.terms.iter().next().expect("one term");
        let ci = c.inv().ok_or_else(|| SgffError::Domain("zero coefficient".into()))?;
        Ok(Self::monomial(&self.vars, e.iter().map(|x| -x).collect(), ci))
    }

    /// (min, max) exponent of variable `i` over all terms.
    pub fn degree_range(&self, i: usize) -> Option<(i32, i32)> {
        let mut it = self.terms.keys().map(|e| e[i]);
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), x| (lo.min(x), hi.max(x))))
    }
    pub fn max_degree(&self, i: usize) -> Option<i32> {
        self.degree_range(i).map(|r| r.1)
    }
    pub fn min_degree(&self, i: usize) -> Option<i32> {
        self.degree_range(i).map(|r| r.0)
    }
    /// Total degree range over a set of variables.
    pub fn total_degree_range(&self, vars: &[usize]) -> Option<(i32, i32)> {
        let mut it = self.terms.keys().map(|e| vars.iter().map(|&i| e[i]).sum::<i32>());
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), x| (lo.min(x), hi.max(x))))
    }

    /// Coefficient of `x_i^e`, as a polynomial with `x_i` removed.
    pub fn coeff_of(&self, i: usize, e: i32) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(x, _)| x[i] == e)
            .map(|(x, c)| {
                let mut y = x.clone();
                y[i] = 0;
                (y, c.clone())
            })
            .collect();
        LaurentPoly { vars: self.vars.clone(), terms }
    }

    /// Groups the terms by the exponent of `x_i`.
    pub fn split_by(&self, i: usize) -> BTreeMap<i32, Self> {
        let mut out: BTreeMap<i32, Self> = BTreeMap::new();
        for (x, c) in &self.terms {
            let mut y = x.clone();
            y[i] = 0;
            out.entry(x[i])
                .or_insert_with(|| Self::zero(&self.vars))
                .terms
                .insert(y, c.clone());
        }
        out
    }

    /// Keeps the terms with `lo <= deg_{x_i} <= hi`.
    pub fn truncate(&self, i: usize, lo: i32, hi: i32) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(x, _)| x[i] >= lo && x[i] <= hi)
            .map(|(x, c)| (x.clone(), c.clone()))
            .collect();
        LaurentPoly { vars: self.vars.clone(), terms }
    }

    pub fn map_coeffs(&self, f: impl Fn(&F) -> F) -> Self {
        let mut p = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            p.add_term(e.clone(), f(c));
        }
        p
    }

    /// `x_i → c·x_i`.
    pub fn scale_var(&self, i: usize, c: &F) -> Result<Self> {
        let ci = c.inv().ok_or_else(|| SgffError::Domain("scaling a variable by zero".into()))?;
        let mut p = Self::zero(&self.vars);
        let mut cache: BTreeMap<i32, F> = BTreeMap::new();
        for (e, v) in &self.terms {
            let k = e[i];
            let f = cache
                .entry(k)
                .or_insert_with(|| if k >= 0 { c.powi(k as i64).unwrap() } else { ci.powi(-k as i64).unwrap() })
                .clone();
            p.add_term(e.clone(), v.clone() * f);
        }
        Ok(p)
    }

    /// `x_i → -x_i`.
    pub fn negate_var(&self, i: usize) -> Self {
        let mut p = Self::zero(&self.vars);
        for (e, v) in &self.terms {
            let w = if e[i].rem_euclid(2) == 1 { -v.clone() } else { v.clone() };
            p.terms.insert(e.clone(), w);
        }
        p
    }

    /// `x_i → c·Π_j x_j^{m_j}` (requires `m_i = 0` or a pure rescaling).
    pub fn subs_monomial(&self, i: usize, c: &F, m: &[i32]) -> Result<Self> {
        let ci = c.inv().ok_or_else(|| SgffError::Domain("monomial substitution by zero".into()))?;
        let mut p = Self::zero(&self.vars);
        for (e, v) in &self.terms {
            let k = e[i];
            let f = if k >= 0 { c.powi(k as i64)? } else { ci.powi(-k as i64)? };
            let mut y = e.clone();
            y[i] = 0;
            for (j, mj) in m.iter().enumerate() {
                y[j] += k * mj;
            }
            p.add_term(y, v.clone() * f);
        }
        Ok(p)
    }

    /// Substitutes a scalar for `x_i`.
    pub fn eval_var(&self, i: usize, val: &F) -> Result<Self> {
        let mut m = vec![0; self.vars.len()];
        m[i] = 0;
        self.subs_monomial(i, val, &m)
    }

    /// Substitutes scalars for every variable.
    pub fn evaluate(&self, vals: &[F]) -> Result<F> {
        let mut acc = F::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (k, v) in e.iter().zip(vals) {
                if *k != 0 {
                    t = t * v.powi(*k as i64)?;
                }
            }
            acc = acc + t;
        }
        Ok(acc)
    }

    /// Substitutes a polynomial for `x_i`; negative powers need a monomial.
    pub fn subs_poly(&self, i: usize, q: &Self) -> Result<Self> {
        self.check(q);
        let parts = self.split_by(i);
        let mut out = Self::zero(&self.vars);
        let qinv = if parts.keys().any(|&k| k < 0) { Some(q.monomial_inverse()?) } else { None };
        for (k, part) in parts {
            let pw = if k >= 0 { q.pow(k as u32) } else { qinv.as_ref().expect("checked").pow((-k) as u32) };
            out = &out + &(&part * &pw);
        }
        Ok(out)
    }

    /// Moves the exponent of variable `i` to `map[i]` (exponents add on collisions).
    pub fn remap(&self, map: &[usize]) -> Self {
        let n = self.vars.len();
        let mut p = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            let mut y = vec![0; n];
            for (i, k) in e.iter().enumerate() {
                y[map[i]] += k;
            }
            p.add_term(y, c.clone());
        }
        p
    }

    /// Renames variable `from` to `to` (which must be absent).
    pub fn rename(&self, from: usize, to: usize) -> Self {
        let mut map: Vec<usize> = (0..self.vars.len()).collect();
        map[from] = to;
        map[to] = from;
        self.remap(&map)
    }

    pub fn swap_vars(&self, i: usize, j: usize) -> Self {
        self.rename(i, j)
    }

    /// Applies a permutation to a list of slots: slot `slots[k]` goes to `slots[perm[k]]`.
    pub fn permute_slots(&self, slots: &[usize], perm: &[usize]) -> Self {
        let mut map: Vec<usize> = (0..self.vars.len()).collect();
        for (k, &s) in slots.iter().enumerate() {
            map[s] = slots[perm[k]];
        }
        self.remap(&map)
    }

    /// Exact division by `x_i − r·x_j` (or by `x_i − r` when `j` is `None`).
    pub fn div_linear(&self, i: usize, j: Option<usize>, r: &F) -> Result<Self> {
        let mut rem = self.clone();
        let mut q = Self::zero(&self.vars);
        let mut lin_r = vec![0; self.vars.len()];
        if let Some(j) = j {
            lin_r[j] = 1;
        }
        let divisor = {
            let mut d = Self::var(&self.vars, i);
            d.add_term(lin_r.clone(), -r.clone());
            d
        };
        let lo = self.min_degree(i).unwrap_or(0);
        while let Some((e, c)) = rem
            .terms
            .iter()
            .max_by_key(|(e, _)| (e[i], (*e).clone()))
            .map(|(e, c)| (e.clone(), c.clone()))
        {
            if e[i] <= lo {
                return Err(SgffError::Domain("inexact division by a linear form".into()));
            }
            let mut m = e.clone();
            m[i] -= 1;
            let t = Self::monomial(&self.vars, m, c);
            rem = &rem - &(&t * &divisor);
            q = &q + &t;
        }
        Ok(q)
    }

    /// log2 of the largest coefficient modulus.
    pub fn max_log2(&self) -> f64 {
        self.terms.values().map(|c| c.log2_abs()).fold(f64::NEG_INFINITY, f64::max)
    }

    /// Equality test: exact for exact backends, relative for inexact ones.
    pub fn agrees_with(&self, o: &Self) -> bool {
        let d = self - o;
        let scale = self.max_log2().max(o.max_log2());
        agrees::<F>(d.max_log2(), scale, TOLERANCE_BITS)
    }

    /// Relative discrepancy `log2(|a−b| / max|a|,|b|)`.
    pub fn rel_error_log2(&self, o: &Self) -> f64 {
        let d = self - o;
        d.max_log2() - self.max_log2().max(o.max_log2()).max(0.0)
    }

    /// Converts the coefficients to another field.
    pub fn convert<G: Scalar>(&self, vars: &Vars, f: impl Fn(&F) -> G) -> LaurentPoly<G> {
        let mut p = LaurentPoly::zero(vars);
        for (e, c) in &self.terms {
            p.add_term(e.clone(), f(c));
        }
        p
    }

    /// Largest absolute exponent occurring for `x_i` at which `pred` holds.
    pub fn any_term(&self, pred: impl Fn(&[i32]) -> bool) -> bool {
        self.terms.keys().any(|e| pred(e))
    }
}

impl<F: Scalar> Add for &LaurentPoly<F> {
    type Output = LaurentPoly<F>;
    fn add(self, o: &LaurentPoly<F>) -> LaurentPoly<F> {
        self.check(o);
        let (big, small) = if self.len() >= o.len() { (self, o) } else { (o, self) };
        let mut p = big.clone();
        for (e, c) in &small.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }
}

impl<F: Scalar> Sub for &LaurentPoly<F> {
    type Output = LaurentPoly<F>;
    fn sub(self, o: &LaurentPoly<F>) -> LaurentPoly<F> {
        self.check(o);
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(e.clone(), -c.clone());
        }
        p
    }
}

impl<F: Scalar> Neg for &LaurentPoly<F> {
    type Output = LaurentPoly<F>;
    fn neg(self) -> LaurentPoly<F> {
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }
}

impl<F: Scalar> Mul for &LaurentPoly<F> {
    type Output = LaurentPoly<F>;
    fn mul(self, o: &LaurentPoly<F>) -> LaurentPoly<F> {
        self.check(o);
        let mut p = LaurentPoly::zero(&self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Exps = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                p.add_term(e, c1.clone() * c2.clone());
            }
        }
        p
    }
}

impl<F: Scalar> fmt::Display for LaurentPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (k, name) in e.iter().zip(self.vars.names()) {
                match k {
                    0 => {}
                    1 => write!(f, "*{name}")?,
                    _ => write!(f, "*{name}^{k}")?,
                }
            }
        }
        Ok(())
    }
}

/// Canonical JSON term list: `{"vars": [...], "terms": [{"exp": [...], "coeff": "..."}]}`.
impl<F: Scalar> Serialize for LaurentPoly<F> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Terms<'a, F>(&'a BTreeMap<Exps, F>);
        impl<F: Scalar> Serialize for Terms<'_, F> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let mut seq = s.serialize_seq(Some(self.0.len()))?;
                for (e, c) in self.0 {
                    seq.serialize_element(&serde_json::json!({"exp": e, "coeff": c.to_string()}))?;
                }
                seq.end()
            }
        }
        let mut m = s.serialize_map(Some(2))?;
        m.serialize_entry("vars", self.vars.names())?;
        m.serialize_entry("terms", &Terms(&self.terms))?;
        m.end()
    }
}

// ---------------------------------------------------------------- determinants

/// Determinant of a square matrix of polynomials, by expansion over column subsets.
pub fn det<F: Scalar>(vars: &Vars, m: &[Vec<LaurentPoly<F>>]) -> LaurentPoly<F> {
    let n = m.len();
    if n == 0 {
        return LaurentPoly::one(vars);
    }
    assert!(n <= 20 && m.iter().all(|r| r.len() == n), "square matrix expected");
    // minors[mask] = det of rows n-|mask|.. with columns in mask.
    let mut minors: Vec<Option<LaurentPoly<F>>> = vec![None; 1 << n];
    minors[0] = Some(LaurentPoly::one(vars));
    let mut masks: Vec<usize> = (1..(1usize << n)).collect();
    masks.sort_by_key(|m| m.count_ones());
    for mask in masks {
        let r = n - mask.count_ones() as usize;
        let mut acc = LaurentPoly::zero(vars);
        let mut sign_pos = 0;
        for c in 0..n {
            if mask & (1 << c) == 0 {
                continue;
            }
            let rest = mask & !(1 << c);
            let entry = &m[r][c];
            if !entry.is_zero() {
                if let Some(minor) = &minors[rest] {
                    if !minor.is_zero() {
                        let t = entry * minor;
                        if sign_pos % 2 == 0 {
                            acc = &acc + &t;
                        } else {
                            acc = &acc - &t;
                        }
                    }
                }
            }
            sign_pos += 1;
        }
        minors[mask] = Some(acc);
    }
    minors[(1 << n) - 1].take().expect("full minor")
}

/// Determinant of a scalar matrix by Gaussian elimination.
pub fn det_scalar<F: Scalar>(m: &[Vec<F>]) -> F {
    let n = m.len();
    let mut a: Vec<Vec<F>> = m.to_vec();
    let mut d = F::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return F::zero();
        };
        if piv != col {
            a.swap(piv, col);
            d = -d;
        }
        let inv = a[col][col].inv().expect("nonzero pivot");
        d = d * a[col][col].clone();
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone() * inv.clone();
            for c in col..n {
                let v = a[r][c].clone() - f.clone() * a[col][c].clone();
                a[r][c] = v;
            }
        }
    }
    d
}

/// Permutations of `0..n` with their signs.
pub fn permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, n: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, n, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], n, &mut out);
    out.into_iter()
        .map(|p| {
            let mut inv = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if p[i] > p[j] {
                        inv += 1;
                    }
                }
            }
            let s = if inv % 2 == 0 { 1 } else { -1 };
            (p, s)
        })
        .collect()
}

/// Σ_σ sgn(σ) f(x_σ(1), …, x_σ(l)) over the listed slot variables, times `weight`.
pub fn skew_symmetrize<F: Scalar>(f: &LaurentPoly<F>, slots: &[usize], weight: Option<&F>) -> LaurentPoly<F> {
    let mut acc = LaurentPoly::zero(f.vars());
    for (perm, s) in permutations(slots.len()) {
        let g = f.permute_slots(slots, &perm);
        if s > 0 {
            acc = &acc + &g;
        } else {
            acc = &acc - &g;
        }
    }
    match weight {
        Some(w) => acc.scale(w),
        None => acc,
    }
}

/// `f_1 ∧ … ∧ f_l = det[f_i(S_j)]`; each factor is a polynomial in `x`, placed into `slots`.
pub fn wedge<F: Scalar>(factors: &[LaurentPoly<F>], x: usize, slots: &[usize]) -> LaurentPoly<F> {
    assert_eq!(factors.len(), slots.len());
    let vars = match factors.first() {
        Some(f) => f.vars().clone(),
        None => panic!("wedge of no factors needs a variable list; use LaurentPoly::one"),
    };
    let m: Vec<Vec<LaurentPoly<F>>> = factors
        .iter()
        .map(|f| slots.iter().map(|&s| if s == x { f.clone() } else { f.rename(x, s) }).collect())
        .collect();
    det(&vars, &m)
}

/// Wedge of monomials `S^{m_1} ∧ … ∧ S^{m_l}` in the slots.
pub fn monomial_wedge<F: Scalar>(vars: &Vars, powers: &[i32], slots: &[usize]) -> LaurentPoly<F> {
    let mut acc = LaurentPoly::zero(vars);
    for (perm, s) in permutations(slots.len()) {
        let mut e = vec![0; vars.len()];
        for (i, &p) in perm.iter().enumerate() {
            e[slots[p]] = powers[i];
        }
        acc.add_term(e, F::from_i64(s));
    }
    acc
}

/// Expansion of an alternating polynomial over the monomial wedges:
/// strictly increasing exponent tuples to coefficient polynomials (slots removed).
pub fn wedge_basis<F: Scalar>(f: &LaurentPoly<F>, slots: &[usize]) -> BTreeMap<Vec<i32>, LaurentPoly<F>> {
    let mut out: BTreeMap<Vec<i32>, LaurentPoly<F>> = BTreeMap::new();
    for (e, c) in f.terms() {
        let key: Vec<i32> = slots.iter().map(|&s| e[s]).collect();
        if key.windows(2).all(|w| w[0] < w[1]) {
            let mut rest = e.clone();
            for &s in slots {
                rest[s] = 0;
            }
            out.entry(key).or_insert_with(|| LaurentPoly::zero(f.vars())).add_term(rest, c.clone());
        }
    }
    out
}

/// Rebuilds a polynomial from a wedge-basis expansion.
pub fn from_wedge_basis<F: Scalar>(
    vars: &Vars,
    basis: &BTreeMap<Vec<i32>, LaurentPoly<F>>,
    slots: &[usize],
) -> LaurentPoly<F> {
    let mut acc = LaurentPoly::zero(vars);
    for (k, c) in basis {
        acc = &acc + &(&monomial_wedge(vars, k, slots) * c);
    }
    acc
}

/// Checks antisymmetry under every adjacent transposition of the slots.
pub fn is_antisymmetric<F: Scalar>(f: &LaurentPoly<F>, slots: &[usize]) -> bool {
    slots.windows(2).all(|w| {
        let g = f.swap_vars(w[0], w[1]);
        (&g + f).is_zero()
    })
}

/// Checks symmetry under every adjacent transposition of the given variables.
pub fn is_symmetric<F: Scalar>(f: &LaurentPoly<F>, vars: &[usize]) -> bool {
    vars.windows(2).all(|w| f.swap_vars(w[0], w[1]) == *f)
}

// ---------------------------------------------------------------- P and p

/// `Π_j (s·x − b_j)` for given root polynomials `b_j` (variables or constants).
pub fn root_product<F: Scalar>(vars: &Vars, x: &LaurentPoly<F>, roots: &[LaurentPoly<F>]) -> LaurentPoly<F> {
    let mut acc = LaurentPoly::one(vars);
    for b in roots {
        acc = &acc * &(x - b);
    }
    acc
}

/// P(±x) = Π (±x − B_j) in variable `x`.
pub fn p_of<F: Scalar>(vars: &Vars, x: usize, sign: i64, roots: &[LaurentPoly<F>]) -> LaurentPoly<F> {
    let xv = LaurentPoly::var(vars, x).scale(&F::from_i64(sign));
    root_product(vars, &xv, roots)
}

/// Elementary symmetric polynomials e_0..e_k of the roots.
pub fn elementary<F: Scalar>(vars: &Vars, roots: &[LaurentPoly<F>]) -> Vec<LaurentPoly<F>> {
    let mut e = vec![LaurentPoly::one(vars)];
    for b in roots {
        let mut next = e.clone();
        next.push(LaurentPoly::zero(vars));
        for k in 1..next.len() {
            next[k] = &e.get(k).cloned().unwrap_or_else(|| LaurentPoly::zero(vars)) + &(&e[k - 1] * b);
        }
        e = next;
    }
    e
}

/// The pair (P(S), p(𝔰)) built over the given roots.
pub fn p_polynomials<F: Scalar>(
    vars: &Vars,
    s: usize,
    big_roots: &[LaurentPoly<F>],
    frak_s: usize,
    frak_roots: &[LaurentPoly<F>],
) -> (LaurentPoly<F>, LaurentPoly<F>) {
    (p_of(vars, s, 1, big_roots), p_of(vars, frak_s, 1, frak_roots))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{rat, Rational};

    fn vs() -> Vars {
        Vars::new(&["S1", "S2", "S3", "B1", "B2", "x"])
    }

    #[test]
    fn wedge_of_s_s3() {
        let v = vs();
        let x = v.idx("x");
        let f1 = LaurentPoly::<Rational>::var(&v, x);
        let f3 = LaurentPoly::var_pow(&v, x, 3);
        let w = wedge(&[f1.clone(), f3], x, &[0, 1]);
        let expect = &(&LaurentPoly::var(&v, 0) * &LaurentPoly::var_pow(&v, 1, 3))
            - &(&LaurentPoly::var_pow(&v, 0, 3) * &LaurentPoly::var(&v, 1));
        assert_eq!(w, expect);
        assert!(wedge(&[f1.clone(), f1], x, &[0, 1]).is_zero());
    }

    #[test]
    fn wedge_value_matches_scalar_determinant() {
        let v = vs();
        let x = v.idx("x");
        let fs: Vec<_> = [1, 3, 5].iter().map(|&k| LaurentPoly::<Rational>::var_pow(&v, x, k)).collect();
        let w = wedge(&fs, x, &[0, 1, 2]);
        let pt = [rat(1, 1), rat(2, 1), rat(3, 1), rat(0, 1), rat(0, 1), rat(0, 1)];
        let val = w.evaluate(&pt).unwrap();
        let m: Vec<Vec<Rational>> = [1i64, 3, 5]
            .iter()
            .map(|&k| (1..=3).map(|s: i64| rat(s.pow(k as u32), 1)).collect())
            .collect();
        assert_eq!(val, det_scalar(&m));
    }

    #[test]
    fn skew_examples() {
        let v = vs();
        let x1 = LaurentPoly::<Rational>::var(&v, 0);
        let x2 = LaurentPoly::var(&v, 1);
        assert_eq!(skew_symmetrize(&x1, &[0, 1], None), &x1 - &x2);
        let f = &x1 * &x2.pow(2);
        assert_eq!(skew_symmetrize(&f, &[0, 1], None), &f - &(&x1.pow(2) * &x2));
        let a = &x1 - &x2;
        assert_eq!(skew_symmetrize(&a, &[0, 1], None), a.scale(&rat(2, 1)));
    }

    #[test]
    fn p_polynomial_n1() {
        let v = vs();
        let (b1, b2) = (v.idx("B1"), v.idx("B2"));
        let roots = [LaurentPoly::<Rational>::var(&v, b1), LaurentPoly::var(&v, b2)];
        let p = p_of(&v, 0, 1, &roots);
        let s = LaurentPoly::var(&v, 0);
        let e = elementary(&v, &roots);
        let expect = &(&s.pow(2) - &(&e[1] * &s)) + &e[2];
        assert_eq!(p, expect);
        assert!(p.subs_poly(0, &roots[0]).unwrap().is_zero());
    }

    #[test]
    fn linear_division_roundtrip() {
        let v = vs();
        let s1 = LaurentPoly::<Rational>::var(&v, 0);
        let s2 = LaurentPoly::var(&v, 1);
        let f = &(&s1.pow(3) + &s2.pow(3)) * &s1;
        let q = (&s1.pow(3) + &s2.pow(3)).div_linear(0, Some(1), &rat(-1, 1)).unwrap();
        assert_eq!(&q * &(&s1 + &s2), &s1.pow(3) + &s2.pow(3));
        assert!(f.div_linear(0, Some(1), &rat(1, 1)).is_err());
    }

    #[test]
    fn wedge_basis_roundtrip() {
        let v = vs();
        let x = v.idx("x");
        let b = LaurentPoly::<Rational>::var(&v, v.idx("B1"));
        let f1 = &LaurentPoly::var(&v, x) + &b;
        let f2 = &LaurentPoly::var_pow(&v, x, -2) - &LaurentPoly::var_pow(&v, x, 4);
        let w = wedge(&[f1, f2], x, &[0, 1]);
        let basis = wedge_basis(&w, &[0, 1]);
        assert_eq!(from_wedge_basis(&v, &basis, &[0, 1]), w);
        assert!(is_antisymmetric(&w, &[0, 1]));
    }
}
