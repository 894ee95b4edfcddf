//! Small inhomogeneous chains for the higher-level Bethe ansatz: the isotopic
//! two-soliton S-matrix, monodromy entries, domain-wall partition functions
//! and the Grassmannian property of `ℓ^{(n)}_{u}`.
//!
//! Spectral parameters are passed through their square roots (`𝔟 = β²`,
//! `𝔲 = υ²`, `𝔱 = τ²`), so the `√(𝔟_i𝔟_j)` weights stay in the field.
//! Chain basis: bit `k` of a state index is set when site `k` is up.

use crate::error::{Result, SgffError};
use crate::linalg::determinant;
use crate::pairing::{ell_basis, Partition};
use crate::scalars::{agrees, Scalar, TOLERANCE_BITS};
use crate::towers::Layout;
use serde::Serialize;

// ---------------------------------------------------------------- S-matrix

/// The three coefficients of `S̃_{i,j}`: diagonal `1`, transmission `f`, exchange `g`.
#[derive(Clone, Debug, PartialEq)]
pub struct SWeights<F> {
    pub f: F,
    pub g: F,
}

/// Weights of `S̃_{i,j}(𝔟_i/𝔟_j)` for `𝔟_i = βi²`, `𝔟_j = βj²`.
pub fn s_weights<F: Scalar>(beta_i: &F, beta_j: &F, q: &F) -> Result<SWeights<F>> {
    let qi = q.inv().ok_or_else(|| SgffError::Domain("𝔮 = 0".into()))?;
    let (bi, bj) = (beta_i.clone() * beta_i.clone(), beta_j.clone() * beta_j.clone());
    let den = bi.clone() * qi.clone() - bj.clone() * q.clone();
    let inv = den.inv().ok_or_else(|| SgffError::Resonance("S̃ pole: 𝔟_i𝔮^{−1} = 𝔟_j𝔮".into()))?;
    Ok(SWeights {
        f: (bi - bj) * inv.clone(),
        g: beta_i.clone() * beta_j.clone() * (qi - q.clone()) * inv,
    })
}

/// `S̃` as a 4×4 matrix on `(C²)_i ⊗ (C²)_j`, basis `↑↑, ↑↓, ↓↑, ↓↓`.
pub fn s_matrix_tilde<F: Scalar>(beta_i: &F, beta_j: &F, q: &F) -> Result<[[F; 4]; 4]> {
    let w = s_weights(beta_i, beta_j, q)?;
    let (o, z) = (F::one(), F::zero());
    Ok([
        [o.clone(), z.clone(), z.clone(), z.clone()],
        [z.clone(), w.f.clone(), w.g.clone(), z.clone()],
        [z.clone(), w.g.clone(), w.f.clone(), z.clone()],
        [z.clone(), z.clone(), z, o],
    ])
}

/// The 2×2 block of `S̃` on `span(↑↓, ↓↑)`.
pub fn middle_block<F: Scalar>(beta_i: &F, beta_j: &F, q: &F) -> Result<[[F; 2]; 2]> {
    let w = s_weights(beta_i, beta_j, q)?;
    Ok([[w.f.clone(), w.g.clone()], [w.g, w.f]])
}

// ---------------------------------------------------------------- operators

/// Dense operator on `(C²)^{⊗sites}`, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinChainOperator<F> {
    pub sites: usize,
    pub data: Vec<F>,
}

impl<F: Scalar> SpinChainOperator<F> {
    pub fn zero(sites: usize) -> Self {
        let d = 1 << sites;
        SpinChainOperator { sites, data: vec![F::zero(); d * d] }
    }

    pub fn dim(&self) -> usize {
        1 << self.sites
    }

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.dim() + c]
    }

    pub fn mul(&self, o: &Self) -> Self {
        let d = self.dim();
        let mut out = Self::zero(self.sites);
        for r in 0..d {
            for k in 0..d {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..d {
                    let b = o.get(k, c);
                    if !b.is_zero() {
                        out.data[r * d + c] = out.data[r * d + c].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        let data = self.data.iter().zip(&o.data).map(|(a, b)| a.clone() - b.clone()).collect();
        SpinChainOperator { sites: self.sites, data }
    }

    /// `Σσ³` change common to every nonzero entry, if there is one.
    pub fn weight_shift(&self) -> Option<i64> {
        let w = |i: usize| 2 * i.count_ones() as i64 - self.sites as i64;
        let mut shift = None;
        for r in 0..self.dim() {
            for c in 0..self.dim() {
                if self.get(r, c).is_zero() {
                    continue;
                }
                let d = w(r) - w(c);
                match shift {
                    None => shift = Some(d),
                    Some(s) if s != d => return None,
                    _ => {}
                }
            }
        }
        shift
    }

    /// Largest `log2|entry|`.
    pub fn max_log(&self) -> f64 {
        self.data.iter().map(|x| x.log2_abs()).fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn approx_zero(&self, scale_log2: f64) -> bool {
        agrees::<F>(self.max_log(), scale_log2, TOLERANCE_BITS)
    }
}

/// Entry of the monodromy `S̃_{a,N}(𝔱/𝔟_N)⋯S̃_{a,1}(𝔱/𝔟_1)` in the auxiliary space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Entry {
    A,
    B,
    C,
    D,
}

impl Entry {
    /// (auxiliary out, auxiliary in), `true` for up.
    fn aux(self) -> (bool, bool) {
        match self {
            Entry::A => (true, true),
            Entry::B => (true, false),
            Entry::C => (false, true),
            Entry::D => (false, false),
        }
    }
}

/// Applies one monodromy entry at `𝔱 = τ²` to a chain vector, site by site.
pub fn apply_entry<F: Scalar>(entry: Entry, tau: &F, betas: &[F], q: &F, v: &[F]) -> Result<Vec<F>> {
    let n = betas.len();
    let d = 1usize << n;
    if v.len() != d {
        return Err(SgffError::Precondition(format!("vector of length {} on {n} sites", v.len())));
    }
    let (out_up, in_up) = entry.aux();
    // Index aux·2^N + chain, aux bit set for up.
    let mut w = vec![F::zero(); 2 * d];
    let off = if in_up { d } else { 0 };
    w[off..off + d].clone_from_slice(v);
    for (k, beta) in betas.iter().enumerate() {
        let sw = s_weights(tau, beta, q)?;
        let bit = 1usize << k;
        let mut nw = vec![F::zero(); 2 * d];
        for (idx, x) in w.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let (aux_up, chain) = (idx >= d, idx % d);
            let site_up = chain & bit != 0;
            if aux_up == site_up {
                nw[idx] = nw[idx].clone() + x.clone();
            } else {
                nw[idx] = nw[idx].clone() + sw.f.clone() * x.clone();
                let swapped = (if aux_up { 0 } else { d }) + (chain ^ bit);
                nw[swapped] = nw[swapped].clone() + sw.g.clone() * x.clone();
            }
        }
        w = nw;
    }
    let off = if out_up { d } else { 0 };
    Ok(w[off..off + d].to_vec())
}

/// One monodromy entry as a dense operator.
pub fn monodromy_entry<F: Scalar>(entry: Entry, tau: &F, betas: &[F], q: &F) -> Result<SpinChainOperator<F>> {
    let sites = betas.len();
    let d = 1usize << sites;
    let mut op = SpinChainOperator::zero(sites);
    for c in 0..d {
        let mut e = vec![F::zero(); d];
        e[c] = F::one();
        for (r, x) in apply_entry(entry, tau, betas, q, &e)?.into_iter().enumerate() {
            op.data[r * d + c] = x;
        }
    }
    Ok(op)
}

pub fn monodromy_c<F: Scalar>(tau: &F, betas: &[F], q: &F) -> Result<SpinChainOperator<F>> {
    monodromy_entry(Entry::C, tau, betas, q)
}

/// `T^{HLBA}(𝔱) = xA(𝔱) + x^{−1}D(𝔱)`.
pub fn hlba_transfer<F: Scalar>(tau: &F, x: &F, betas: &[F], q: &F) -> Result<SpinChainOperator<F>> {
    let xi = x.inv().ok_or_else(|| SgffError::Domain("twist x = 0".into()))?;
    let a = monodromy_entry(Entry::A, tau, betas, q)?;
    let d = monodromy_entry(Entry::D, tau, betas, q)?;
    let data = a.data.iter().zip(&d.data).map(|(p, r)| x.clone() * p.clone() + xi.clone() * r.clone()).collect();
    Ok(SpinChainOperator { sites: betas.len(), data })
}

// ---------------------------------------------------------------- DWPF

/// `⟨↑|C(𝔳_1)⋯C(𝔳_N)|↓⟩` by direct application, `𝔳_α = τ_α²`, `N` sites.
pub fn dwpf_direct<F: Scalar>(taus: &[F], betas: &[F], q: &F) -> Result<F> {
    let n = betas.len();
    if taus.len() != n {
        return Err(SgffError::Precondition(format!("{} C-operators on {n} sites", taus.len())));
    }
    let d = 1usize << n;
    let mut v = vec![F::zero(); d];
    v[0] = F::one();
    for t in taus.iter().rev() {
        v = apply_entry(Entry::C, t, betas, q, &v)?;
    }
    Ok(v[d - 1].clone())
}

/// The same quantity from the Izergin determinant.  With `λ, μ` the logarithms of
/// `τ, β` and `η = log 𝔮`, the normalized weights are `a = sinh(λ−μ−η)`,
/// `b = sinh(λ−μ)`, `c = −sinh η`; every product below is written in `τ, β, 𝔮`.
pub fn dwpf_izergin<F: Scalar>(taus: &[F], betas: &[F], q: &F) -> Result<F> {
    let n = betas.len();
    if taus.len() != n {
        return Err(SgffError::Precondition(format!("{} C-operators on {n} sites", taus.len())));
    }
    let two = F::from_i64(2);
    let qi = q.inv().ok_or_else(|| SgffError::Domain("𝔮 = 0".into()))?;
    let inv = |x: F, what: &str| x.inv().ok_or_else(|| SgffError::Resonance(what.to_string()));
    let sq = |x: &F| x.clone() * x.clone();
    // sinh(λ−μ−η), sinh(λ−μ)
    let wa = |t: &F, b: &F| -> Result<F> {
        Ok((sq(t) - sq(b) * sq(q)) * inv(two.clone() * t.clone() * b.clone() * q.clone(), "zero root")?)
    };
    let wb = |t: &F, b: &F| -> Result<F> { Ok((sq(t) - sq(b)) * inv(two.clone() * t.clone() * b.clone(), "zero root")?) };
    let wc = (qi.clone() - q.clone()) * inv(two.clone(), "char 2")?;
    let mut m = vec![vec![F::zero(); n]; n];
    for (al, t) in taus.iter().enumerate() {
        let ab: Vec<F> = betas.iter().map(|b| Ok(wa(t, b)? * wb(t, b)?)).collect::<Result<_>>()?;
        for k in 0..n {
            let rest = (0..n).filter(|&j| j != k).fold(F::one(), |acc, j| acc * ab[j].clone());
            m[al][k] = wc.clone() * rest;
        }
    }
    let mut den = F::one();
    for a in 0..n {
        for b in a + 1..n {
            den = den * wb(&taus[a], &taus[b])? * wb(&betas[b], &betas[a])?;
        }
    }
    let z_sinh = determinant(&m) * inv(den, "coinciding spectral parameters: use dwpf_izergin_limit")?;
    // Back to the weights of S̃: a common factor 2τβ per vertex, divided by 𝔳𝔮^{−1} − 𝔟𝔮.
    let mut scale = F::one();
    for t in taus {
        for b in betas {
            let a_s = sq(t) * qi.clone() - sq(b) * q.clone();
            scale = scale * two.clone() * t.clone() * b.clone() * inv(a_s, "S̃ pole")?;
        }
    }
    Ok(z_sinh * scale)
}

/// Izergin value with coinciding roots separated: `τ_α → τ_α(1 + αε)`.
pub fn dwpf_izergin_limit<F: Scalar>(taus: &[F], betas: &[F], q: &F, eps: &F) -> Result<F> {
    let moved: Vec<F> = taus
        .iter()
        .enumerate()
        .map(|(i, t)| t.clone() * (F::one() + F::from_i64(i as i64) * eps.clone()))
        .collect();
    dwpf_izergin(&moved, betas, q)
}

/// Both DWPF evaluations side by side.
#[derive(Clone, Debug, Serialize)]
pub struct DwpfCheck {
    pub sites: usize,
    pub direct: String,
    pub izergin: String,
    pub agree: bool,
}

pub fn dwpf_check<F: Scalar>(taus: &[F], betas: &[F], q: &F) -> Result<DwpfCheck> {
    let d = dwpf_direct(taus, betas, q)?;
    let z = dwpf_izergin(taus, betas, q)?;
    let diff = (d.clone() - z.clone()).log2_abs();
    Ok(DwpfCheck { sites: betas.len(), direct: d.to_string(), izergin: z.to_string(), agree: agrees::<F>(diff, d.log2_abs(), TOLERANCE_BITS) })
}

// ---------------------------------------------------------------- Grassmannian

/// `n`-subsets of `0..m` in lexicographic order.
pub fn subsets(m: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 0u64..(1 << m) {
        if mask.count_ones() as usize == n {
            out.push((0..m).filter(|i| mask & (1 << i) != 0).collect());
        }
    }
    out.sort();
    out
}

/// Sign and sorted form of an index list; `None` when an index repeats.
fn sorted_with_sign(mut v: Vec<usize>) -> Option<(bool, Vec<usize>)> {
    let mut odd = false;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] == v[j + 1] {
                return None;
            }
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                odd = !odd;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((odd, v))
}

/// Plücker coordinates of an `n`-vector in `Λⁿ F^m`, indexed by [`subsets`]`(m, n)`.
#[derive(Clone, Debug)]
pub struct PluckerVector<F> {
    pub m: usize,
    pub n: usize,
    pub coords: Vec<F>,
}

impl<F: Scalar> PluckerVector<F> {
    /// Maximal minors of an `n × m` matrix.
    pub fn from_rows(rows: &[Vec<F>]) -> Self {
        let n = rows.len();
        let m = rows.first().map_or(0, |r| r.len());
        let coords = subsets(m, n)
            .iter()
            .map(|j| determinant(&rows.iter().map(|r| j.iter().map(|&c| r[c].clone()).collect()).collect::<Vec<_>>()))
            .collect();
        PluckerVector { m, n, coords }
    }

    fn index(&self, j: &[usize]) -> usize {
        subsets(self.m, self.n).iter().position(|s| s == j).expect("subset")
    }

    /// Signed coordinate for an unordered index list.
    pub fn at(&self, j: Vec<usize>) -> F {
        match sorted_with_sign(j) {
            None => F::zero(),
            Some((odd, s)) => {
                let c = self.coords[self.index(&s)].clone();
                if odd {
                    -c
                } else {
                    c
                }
            }
        }
    }

    pub fn max_log(&self) -> f64 {
        self.coords.iter().map(|c| c.log2_abs()).fold(f64::NEG_INFINITY, f64::max)
    }

    /// Every quadratic Plücker relation `Σ_t (−1)^t p_{K∪l_t} p_{L∖l_t}` for
    /// `|K| = n−1`, `|L| = n+1`; returns (relations checked, all vanish).
    pub fn plucker_relations(&self) -> (usize, bool) {
        if self.n < 2 || self.m < self.n + 2 {
            return (0, true);
        }
        let scale = 2.0 * self.max_log();
        let mut count = 0;
        let mut ok = true;
        for k in subsets(self.m, self.n - 1) {
            for l in subsets(self.m, self.n + 1) {
                let mut acc = F::zero();
                for (t, &lt) in l.iter().enumerate() {
                    let mut a = k.clone();
                    a.push(lt);
                    let b: Vec<usize> = l.iter().copied().filter(|&x| x != lt).collect();
                    let term = self.at(a) * self.at(b);
                    acc = if t % 2 == 0 { acc + term } else { acc - term };
                }
                count += 1;
                ok &= agrees::<F>(acc.log2_abs(), scale, TOLERANCE_BITS);
            }
        }
        (count, ok)
    }
}

/// Outcome of [`ell_from_bethe`].
#[derive(Clone, Debug, Serialize)]
pub struct BetheEll {
    pub n: usize,
    /// Nonzero Plücker coordinates of `ℓ^{(n)}_{u}`.
    pub nonzero_coordinates: usize,
    pub relations_checked: usize,
    pub decomposable: bool,
    /// `∧_j(Σ_I w_I ℓ_{I,j})` is proportional to `R^{n−1}ℓ^{(n)}_{u}`, `R` the displayed prefactor.
    pub proportional: bool,
    /// `c(𝔮)^{n−1}`: the proportionality constant divided by `(Π_i√𝔲_i)^{n−1}`
    /// (`None` at `n = 1` or when `ℓ^{(n)}_{u} = 0`).
    pub constant: Option<String>,
}

/// Intermediate data of the partition sum.
pub struct BetheEllData<F> {
    pub result: BetheEll,
    pub ell: PluckerVector<F>,
    pub constant: Option<F>,
}

/// Builds `ℓ^{(n)}_{u} = Σ_I ℓ_{I} w_I` with `w_I = Π_{I⁻}√𝔟_i ⟨↑|ΠC(𝔲)Π_{I⁺}C(𝔟)|↓⟩ / Π_{I⁻×I⁺}(𝔟_i − 𝔟_j)`
/// in the Plücker coordinates of `Λⁿ span(𝔰⁰,…,𝔰^{2n−1})`, tests every quadratic Plücker
/// relation and compares with the wedge of the summed rows.  `a` must differ from `±1`,
/// otherwise every `ℓ_{I,0}` vanishes.
pub fn ell_from_bethe<F: Scalar>(upsilons: &[F], betas: &[F], a: &F, q: &F) -> Result<BetheEllData<F>> {
    let n = upsilons.len();
    if betas.len() != 2 * n || n == 0 {
        return Err(SgffError::Precondition(format!("{n} Bethe roots need {} inhomogeneities", 2 * n)));
    }
    let m = 2 * n;
    let lay = Layout::new(1, m, 1, 1);
    let sv = lay.s[0];
    let bs: Vec<F> = betas.iter().map(|b| b.clone() * b.clone()).collect();
    let frak = lay.const_roots(&bs);
    let mut total: Option<PluckerVector<F>> = None;
    let mut summed = vec![vec![F::zero(); m]; n];
    for part in Partition::all(n) {
        let basis = ell_basis(&lay, sv, &frak, &part, a, q)?;
        let mut rows = vec![vec![F::zero(); m]; n];
        for (j, l) in basis.ell.iter().enumerate() {
            for (e, c) in l.terms() {
                let k = e[sv];
                if k < 0 || k as usize >= m {
                    return Err(SgffError::Structure(format!("ℓ_{{I,{j}}} has degree {k} outside 0..{}", m - 1)));
                }
                rows[j][k as usize] = c.clone();
            }
        }
        let mut taus: Vec<F> = upsilons.to_vec();
        taus.extend(part.plus.iter().map(|&j| betas[j].clone()));
        let mut w = dwpf_direct(&taus, betas, q)?;
        for &i in &part.minus {
            w = w * betas[i].clone();
            for &j in &part.plus {
                w = w * (bs[i].clone() - bs[j].clone()).inv().ok_or_else(|| SgffError::Resonance("𝔟_i = 𝔟_j".into()))?;
            }
        }
        let pv = PluckerVector::from_rows(&rows);
        total = Some(match total {
            None => PluckerVector { m, n, coords: pv.coords.iter().map(|c| c.clone() * w.clone()).collect() },
            Some(t) => PluckerVector {
                m,
                n,
                coords: t.coords.iter().zip(&pv.coords).map(|(x, c)| x.clone() + c.clone() * w.clone()).collect(),
            },
        });
        for j in 0..n {
            for k in 0..m {
                summed[j][k] = summed[j][k].clone() + rows[j][k].clone() * w.clone();
            }
        }
    }
    let ell = total.expect("at least one partition");
    let (relations_checked, decomposable) = ell.plucker_relations();

    // R = Π_{i,j}(𝔲_i − 𝔲_j𝔮²) / Π_{i,j}(𝔲_i − 𝔟_j𝔮²)
    let q2 = q.clone() * q.clone();
    let us: Vec<F> = upsilons.iter().map(|u| u.clone() * u.clone()).collect();
    let mut r = F::one();
    for ui in &us {
        for uj in &us {
            r = r * (ui.clone() - uj.clone() * q2.clone());
        }
        for b in &bs {
            r = r * (ui.clone() - b.clone() * q2.clone())
                .inv()
                .ok_or_else(|| SgffError::Resonance("𝔲_i = 𝔟_j𝔮²".into()))?;
        }
    }
    let wedge = PluckerVector::from_rows(&summed);
    let rn = r.powi(n as i64 - 1)?;
    let pivot = (0..ell.coords.len()).max_by(|&x, &y| ell.coords[x].log2_abs().total_cmp(&ell.coords[y].log2_abs()));
    let nonzero = ell.coords.iter().filter(|c| !c.is_zero()).count();
    let (proportional, constant) = match pivot {
        Some(p) if !ell.coords[p].is_zero() => {
            let k = wedge.coords[p].clone() * (rn.clone() * ell.coords[p].clone()).inv().expect("nonzero");
            let scale = wedge.max_log();
            let ok = ell.coords.iter().zip(&wedge.coords).all(|(l, w)| {
                let d = w.clone() - k.clone() * rn.clone() * l.clone();
                agrees::<F>(d.log2_abs(), scale, TOLERANCE_BITS)
            });
            (ok, Some(k))
        }
        _ => (wedge.coords.iter().all(|c| c.is_zero()), None),
    };
    let root_u = upsilons.iter().fold(F::one(), |acc, u| acc * u.clone()).powi(n as i64 - 1)?;
    let constant = constant.map(|k| k * root_u.inv().expect("nonzero Bethe roots"));
    let result = BetheEll {
        n,
        nonzero_coordinates: nonzero,
        relations_checked,
        decomposable,
        proportional,
        constant: if n > 1 { constant.as_ref().map(|c| c.to_string()) } else { None },
    };
    Ok(BetheEllData { result, ell, constant: if n > 1 { constant } else { None } })
}

/// `c(𝔮)^{n−1}` fitted at one sample and compared across the others (fixed `𝔮`, `a`).
#[derive(Clone, Debug, Serialize)]
pub struct ConstantFit {
    pub n: usize,
    pub samples: usize,
    pub value: Option<String>,
    pub decomposable: bool,
    pub proportional: bool,
    pub sample_independent: bool,
}

pub fn fit_c_q<F: Scalar>(n: usize, samples: usize, a: &F, q: &F, seed: u64) -> Result<ConstantFit> {
    let mut first: Option<F> = None;
    let (mut decomposable, mut proportional, mut sample_independent) = (true, true, true);
    for t in 0..samples as u64 {
        let v = crate::scalars::pit_sample::<F>(seed.wrapping_mul(1000).wrapping_add(t), 3 * n);
        let d = ell_from_bethe(&v[..n], &v[n..], a, q)?;
        decomposable &= d.result.decomposable;
        proportional &= d.result.proportional;
        match (&first, d.constant) {
            (None, c) => first = c,
            (Some(f), Some(c)) => {
                let diff = (c.clone() - f.clone()).log2_abs();
                sample_independent &= agrees::<F>(diff, f.log2_abs(), TOLERANCE_BITS);
            }
            (Some(_), None) => sample_independent = false,
        }
    }
    Ok(ConstantFit { n, samples, value: first.map(|c| c.to_string()), decomposable, proportional, sample_independent })
}

/// `ρ(ζ) = P(Z)/P(−Z)` at a point, `P(Z) = Π(Z − B_j)`.
pub fn rho_infinite<F: Scalar>(z: &F, roots: &[F]) -> Result<F> {
    let num = roots.iter().fold(F::one(), |acc, b| acc * (z.clone() - b.clone()));
    let den = roots.iter().fold(F::one(), |acc, b| acc * (-z.clone() - b.clone()));
    Ok(num * den.inv().ok_or_else(|| SgffError::Resonance("P(−Z) = 0".into()))?)
}
