//! The check batteries behind `sgff verify`, their configuration and the
//! `sgff-report/1` report format.

use crate::bethe::{dwpf_check, fit_c_q};
use crate::error::{Result, SgffError};
use crate::exact_residue::{compute_asymptotics, d_big, reduce_to_window, res_big, split_residues, Coeffs, Which};
use crate::fermions::{
    apply_bare_determinant, apply_bare_sequential, c_invariants, c_poly, shift_identity, FermionWord, WordContext,
};
use crate::laurent::LaurentPoly;
use crate::nullvec::{
    c_even_identities, catalan, circ_pairing, generate_null_family, half_bases, psibar1_kernel, reduced_space_dimension,
    verify_null, Chirality,
};
use crate::pairing::{ell_basis, omega0_pm_identity, verify_det_identity, Partition};
use crate::scalars::{pit_sample, rat, AlphaLine, Complex, Consts, Fp, ParameterPoint, Rational, Scalar, TOLERANCE_BITS};
use crate::towers::{check_im_consistency, check_recurrence, CheckMode, Layout, ShiftedPrimary};
use crate::virasoro::{dictionary_check, null_table, null_table_consistent, DictionaryId};
use serde::Serialize;
use sha2::{Digest, Sha256};
use std::time::Instant;

pub const SCHEMA: &str = "sgff-report/1";

/// Run parameters shared by every suite.
#[derive(Clone, Debug, PartialEq)]
pub struct Config {
    pub nu: Rational,
    /// `None` lets each check pick its own generic value.
    pub alpha: Option<Rational>,
    pub n_max: usize,
    pub order: usize,
    pub samples: usize,
    pub seed: u64,
    pub precision_bits: u32,
    pub level_max: u32,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            nu: rat(2, 5),
            alpha: None,
            n_max: 3,
            order: 8,
            samples: 3,
            seed: 1,
            precision_bits: 256,
            level_max: 8,
        }
    }
}

impl Config {
    pub fn validate(&self) -> Result<()> {
        ParameterPoint::new(self.nu.clone(), self.alpha.clone()).map_err(|e| SgffError::Usage(e.to_string()))?;
        if self.n_max == 0 {
            return Err(SgffError::Usage("n_max must be at least 1".into()));
        }
        if self.order == 0 {
            return Err(SgffError::Usage("order must be at least 1".into()));
        }
        if ![128, 256, 512].contains(&self.precision_bits) {
            return Err(SgffError::Usage(format!("precision_bits must be 128, 256 or 512, got {}", self.precision_bits)));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Towers,
    ExactResidue,
    Fermions,
    Pairing,
    Nullvec,
    Bethe,
    Virasoro,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Towers,
        Suite::ExactResidue,
        Suite::Fermions,
        Suite::Pairing,
        Suite::Nullvec,
        Suite::Bethe,
        Suite::Virasoro,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Towers => "towers",
            Suite::ExactResidue => "exact-residue",
            Suite::Fermions => "fermions",
            Suite::Pairing => "pairing",
            Suite::Nullvec => "nullvec",
            Suite::Bethe => "bethe",
            Suite::Virasoro => "virasoro",
        }
    }

    /// Parses a suite name; `all` gives every suite.
    pub fn parse_selection(s: &str) -> Result<Vec<Suite>> {
        if s == "all" {
            return Ok(Suite::ALL.to_vec());
        }
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .map(|x| vec![x])
            .ok_or_else(|| SgffError::Usage(format!("unknown suite `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Params {
    pub nu: String,
    pub alpha: String,
    pub n: Option<usize>,
    pub seed: u64,
    pub order: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Error,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub anchor: String,
    pub params: Params,
    pub verdict: Verdict,
    pub detail: String,
    /// First 16 hex digits of the SHA-256 of the witness text.
    pub witness_hash: String,
    pub wall_ms: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Aggregate {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub errors: usize,
    pub verdict: Verdict,
    pub wall_ms: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConfigEcho {
    pub nu: String,
    pub alpha: Option<String>,
    pub n_max: usize,
    pub order: usize,
    pub samples: usize,
    pub seed: u64,
    pub precision_bits: u32,
    pub level_max: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub schema: &'static str,
    pub suite: String,
    pub config: ConfigEcho,
    pub checks: Vec<CheckRecord>,
    pub aggregate: Aggregate,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.aggregate.verdict == Verdict::Pass
    }
}

pub fn witness_hash(text: &str) -> String {
    let digest = Sha256::digest(text.as_bytes());
    digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

/// What a single check hands back: verdict, a short detail line and the witness text.
struct Outcome {
    holds: bool,
    detail: String,
    witness: String,
}

impl Outcome {
    fn new(holds: bool, detail: impl Into<String>) -> Self {
        let detail = detail.into();
        Outcome { holds, witness: detail.clone(), detail }
    }

    fn with_witness(mut self, w: impl Into<String>) -> Self {
        self.witness = w.into();
        self
    }
}

struct Battery<'a> {
    cfg: &'a Config,
    suite: Suite,
    out: Vec<CheckRecord>,
}

impl<'a> Battery<'a> {
    fn params(&self, alpha: &str, n: Option<usize>, order: Option<usize>) -> Params {
        Params { nu: self.cfg.nu.to_string(), alpha: alpha.to_string(), n, seed: self.cfg.seed, order }
    }

    fn check(&mut self, key: &str, anchor: &str, params: Params, f: impl FnOnce() -> Result<Outcome>) {
        let start = Instant::now();
        let res = f();
        let wall_ms = start.elapsed().as_secs_f64() * 1e3;
        let (verdict, detail, witness) = match res {
            Ok(o) => (if o.holds { Verdict::Pass } else { Verdict::Fail }, o.detail, o.witness),
            Err(e) => (Verdict::Error, e.to_string(), e.to_string()),
        };
        self.out.push(CheckRecord {
            id: format!("{}/{key}", self.suite.name()),
            anchor: anchor.to_string(),
            params,
            verdict,
            detail,
            witness_hash: witness_hash(&witness),
            wall_ms,
        });
    }
}

/// Runs the named suite (or `all`).
pub fn run_suite(name: &str, cfg: &Config) -> Result<SuiteReport> {
    cfg.validate()?;
    let suites = Suite::parse_selection(name)?;
    let start = Instant::now();
    let mut checks = Vec::new();
    for s in suites {
        let mut b = Battery { cfg, suite: s, out: Vec::new() };
        match s {
            Suite::Towers => towers(&mut b),
            Suite::ExactResidue => exact_residue(&mut b),
            Suite::Fermions => fermions(&mut b),
            Suite::Pairing => pairing(&mut b),
            Suite::Nullvec => nullvec(&mut b),
            Suite::Bethe => bethe(&mut b),
            Suite::Virasoro => virasoro(&mut b),
        }
        checks.extend(b.out);
    }
    checks.sort_by(|a, b| a.id.cmp(&b.id));
    let count = |v: Verdict| checks.iter().filter(|c| c.verdict == v).count();
    let (passed, failed, errors) = (count(Verdict::Pass), count(Verdict::Fail), count(Verdict::Error));
    let verdict = if errors > 0 {
        Verdict::Error
    } else if failed > 0 {
        Verdict::Fail
    } else {
        Verdict::Pass
    };
    Ok(SuiteReport {
        schema: SCHEMA,
        suite: name.to_string(),
        config: ConfigEcho {
            nu: cfg.nu.to_string(),
            alpha: cfg.alpha.as_ref().map(|a| a.to_string()),
            n_max: cfg.n_max,
            order: cfg.order,
            samples: cfg.samples,
            seed: cfg.seed,
            precision_bits: cfg.precision_bits,
            level_max: cfg.level_max,
        },
        aggregate: Aggregate {
            total: checks.len(),
            passed,
            failed,
            errors,
            verdict,
            wall_ms: start.elapsed().as_secs_f64() * 1e3,
        },
        checks,
    })
}

fn sample_seeds(cfg: &Config) -> Vec<u64> {
    (0..cfg.samples.max(1) as u64).map(|i| cfg.seed.wrapping_mul(7919).wrapping_add(i)).collect()
}

// ---------------------------------------------------------------- towers

fn towers(b: &mut Battery) {
    let cfg = b.cfg;
    let lay = Layout::new(cfg.n_max, 2 * cfg.n_max, 0, 0);
    for m in [-1i64, 0, 1] {
        for n in 1..=cfg.n_max {
            let anchor = format!("specialization recurrence of the shifted primary tower M_{m}");
            let p = b.params("generic", Some(n), None);
            b.check(&format!("recurrence/m={m}/n={n}"), &anchor, p, || {
                let src = ShiftedPrimary { m };
                if n <= 2 {
                    let v = check_recurrence::<Rational, _>(&src, &lay, n, CheckMode::Formal)?;
                    let w = v.witness.map(|w| w.to_string()).unwrap_or_default();
                    return Ok(Outcome::new(v.holds, "formal roots").with_witness(w));
                }
                let seeds = sample_seeds(cfg);
                let mut holds = true;
                for &seed in &seeds {
                    holds &= check_recurrence::<Rational, _>(&src, &lay, n, CheckMode::Pit { seed })?.holds;
                }
                Ok(Outcome::new(holds, format!("{} random root samples", seeds.len())))
            });
        }
    }
    for n in 1..=cfg.n_max.min(2) {
        let p = b.params("generic", Some(n), Some(cfg.order));
        b.check(&format!("im-series/n={n}"), "integrals-of-motion series against the root ratio", p, || {
            let lay = Layout::new(1, 2 * n, 1, 1);
            let roots = lay.const_roots(&pit_sample::<Rational>(cfg.seed, 2 * n));
            Ok(Outcome::new(check_im_consistency(&lay, &roots, cfg.order)?, "exponentiated series agree"))
        });
    }
}

// ---------------------------------------------------------------- exact-residue

fn exact_residue(b: &mut Battery) {
    let cfg = b.cfg;
    let ell: Coeffs<Rational> = [(0, Rational::one())].into_iter().collect();
    for n in 1..=cfg.n_max {
        let consts = Consts::<Rational>::generic(&cfg.nu, AlphaLine::Generic, cfg.seed);
        let vals = pit_sample::<Rational>(cfg.seed.wrapping_add(n as u64), 2 * n);
        let p = b.params("generic", Some(n), None);
        b.check(&format!("split-residue-1/n={n}"), "residue of the first split coefficient at a² = q^{4n}", p, || {
            let r = split_residues(&ell, 1, &vals, &consts.fq, &consts.fq.powi(4 * n as i64)?)?;
            let got = r.get(&0).cloned().unwrap_or_else(Rational::zero);
            Ok(Outcome::new(got == rat(-1, 1), format!("residue = {got}")))
        });
        let p = b.params("generic", Some(n), Some(cfg.order));
        b.check(&format!("split-residue-2/n={n}"), "residue of the second split coefficient at a² = q^{4n+4}", p, || {
            let lay = Layout::new(1, 2 * n, 1, 1);
            let roots = lay.const_roots(&vals);
            let series = compute_asymptotics(&lay.vars, &roots, &roots, cfg.order, &consts)?;
            let sigma1: Rational = vals.iter().cloned().sum();
            let oracle = sigma1 / (consts.fq.clone() * consts.fq.clone() + Rational::one());
            let x1 = series.x_plus[1].constant_term();
            let r = split_residues(&ell, 2, &vals, &consts.fq, &consts.fq.powi(4 * n as i64 + 4)?)?;
            let got = r.get(&-1).cloned().unwrap_or_else(Rational::zero);
            Ok(Outcome::new(x1 == oracle && got == -oracle, format!("coefficient of s^-1 = {got}")))
        });
        let p = b.params("generic", Some(n), Some(cfg.order));
        b.check(&format!("exact-forms-vanish/n={n}"), "both residues annihilate D_1[Z] for random Z", p, || {
            let lay = Layout::new(1, 2 * n, 1, 1);
            let roots = lay.const_roots(&vals);
            let series = compute_asymptotics(&lay.vars, &roots, &roots, cfg.order, &consts)?;
            let s = lay.s[0];
            let mut holds = true;
            for t in 0..10u64 {
                let z = random_laurent(&lay, s, -3, 0, cfg.seed.wrapping_mul(31).wrapping_add(t));
                let d = d_big(&z, s, &roots, &Rational::one(), &consts.big_q)?;
                for which in [Which::Plus, Which::Minus] {
                    holds &= res_big(&d, s, &series, which)?.is_zero();
                }
            }
            Ok(Outcome::new(holds, "10 random Z"))
        });
        let p = b.params("generic", Some(n), None);
        b.check(&format!("window-reduction/n={n}"), "reduction into the degree window with a valid certificate", p, || {
            let lay = Layout::new(1, 2 * n, 1, 1);
            let roots = lay.const_roots(&vals);
            let s = lay.s[0];
            let l = random_laurent(&lay, s, -2, 2 * n as i32 + 3, cfg.seed);
            let red = reduce_to_window(&l, &[s], &roots, &consts.big_a, &consts.big_q)?;
            let rebuilt = red.reconstruct(&roots, &consts.big_a, &consts.big_q)? == l;
            let again = reduce_to_window(&red.reduced, &[s], &roots, &consts.big_a, &consts.big_q)?;
            let idem = again.certificate.is_empty() && again.reduced == red.reduced;
            Ok(Outcome::new(rebuilt && idem, format!("{} certificate terms", red.certificate.len()))
                .with_witness(red.reduced.to_string()))
        });
    }
}

fn random_laurent<F: Scalar>(lay: &Layout, slot: usize, lo: i32, hi: i32, seed: u64) -> LaurentPoly<F> {
    let v = pit_sample::<F>(seed, (hi - lo + 1) as usize);
    let mut z = LaurentPoly::zero(&lay.vars);
    for (d, c) in (lo..=hi).zip(v) {
        z = &z + &LaurentPoly::var_pow(&lay.vars, slot, d).scale(&c);
    }
    z
}

// ---------------------------------------------------------------- fermions

fn fermions(b: &mut Battery) {
    let cfg = b.cfg;
    let nu = cfg.nu.clone();
    for n in 1..=cfg.n_max {
        let p = b.params("generic", Some(n), None);
        b.check(&format!("c-invariants/n={n}"), "parity, degrees and specialization of the kernel C", p, || {
            let lay = Layout::new(2, 2 * cfg.n_max, 1, 1);
            let inv = c_invariants(&lay, n, &nu)?;
            Ok(Outcome::new(inv.all_hold(), format!("{inv:?}")))
        });
    }
    let p = b.params("generic", Some(1), None);
    b.check("c-one", "closed form of C at one particle pair", p, || {
        let lay = Layout::new(1, 2, 1, 1);
        let c = c_poly(&lay, lay.z[0], lay.s[0], &lay.formal_roots(1), &nu)?;
        let v = |i| lay.var::<Rational>(i);
        let (b1, b2, z) = (v(lay.b[0]), v(lay.b[1]), v(lay.z[0]));
        let want = (&(&(&b1 + &b2) * &(&b1 * &b2)) * &z).scale(&-(Rational::one() / nu.clone()));
        Ok(Outcome::new(c == want, "C_1 = -(1/nu)(B1+B2)B1B2 Z").with_witness(c.to_string()))
    });
    for n in 0..=cfg.n_max.min(2) {
        let p = b.params("generic", Some(n), None);
        b.check(&format!("determinant/n={n}"), "determinant formula against iterated bare actions", p, || {
            let bare = ["psi*0(Z1)", "psi*0(Z2)", "chi*0(X1)", "chi*0(X2)"];
            let lay = Layout::for_words(n.max(1), 2);
            let roots = lay.formal_roots::<Rational>(n);
            let mut bad = Vec::new();
            for x in bare {
                for y in bare.into_iter().filter(|&y| y != x) {
                    let w = FermionWord::parse(&format!("{x} {y}"))?;
                    let det = apply_bare_determinant(&lay, &w, &roots, &nu)?;
                    let same = match apply_bare_sequential(&lay, &w, &roots, &nu)? {
                        Some(seq) => det.same_as(&seq),
                        None => det.num.is_zero(),
                    };
                    if !same {
                        bad.push(w.to_string());
                    }
                }
            }
            Ok(Outcome::new(bad.is_empty(), format!("12 two-factor words, mismatches {bad:?}")))
        });
    }
    let consts = Consts::<Rational>::generic(&nu, AlphaLine::Generic, cfg.seed);
    for n in 0..=cfg.n_max {
        for m in [1i64, -1] {
            let anchor = if m == 1 {
                "psi*_1 chibar*_1 M_0 = t_1 M_1 modulo Q-exact forms"
            } else {
                "psibar*_1 chi*_1 M_0 = +t_(-1) M_(-1) modulo Q-exact forms, with the stated sign"
            };
            let p = b.params("generic", Some(n), Some(cfg.order));
            b.check(&format!("shift/m={m}/n={n}"), anchor, p, || {
                let lay = Layout::for_words(n.max(1), 2);
                let ctx = WordContext::new(&lay, lay.formal_roots(n), &consts, cfg.order)?;
                let id = shift_identity(&ctx, m)?;
                let holds = id.dressed_exact && id.modified_matches && id.certificate_valid;
                let detail = format!(
                    "computed sign {:?}, modified form matches {}, certificate {} terms valid {}",
                    id.sign,
                    id.modified_matches,
                    id.certificate.certificate.len(),
                    id.certificate_valid
                );
                Ok(Outcome::new(holds, detail).with_witness(id.certificate.reduced.to_string()))
            });
        }
    }
}

// ---------------------------------------------------------------- pairing

fn pairing(b: &mut Battery) {
    let cfg = b.cfg;
    for n in 2..=cfg.n_max {
        let p = b.params("generic", Some(n), None);
        b.check(&format!("det-identity/n={n}/k=2"), "2x2 determinant of pairings against the two-pair word", p, || {
            let r = if n == 2 {
                verify_det_identity::<Rational>(n, 2, &cfg.nu, 0, cfg.seed)?
            } else {
                verify_det_identity::<Fp>(n, 2, &Fp::from_rational(&cfg.nu), cfg.samples.max(1), cfg.seed)?
            };
            let mode = if r.symbolic { "symbolic".to_string() } else { format!("{} samples", r.samples) };
            Ok(Outcome::new(r.holds, format!("{mode}, sign {:?}", r.sign)))
        });
    }
    let alpha = cfg.alpha.clone().unwrap_or_else(|| rat(3, 7));
    for n in 1..=cfg.n_max.min(2) {
        let p = b.params(&alpha.to_string(), Some(n), Some(cfg.order));
        b.check(&format!("omega0-pm/n={n}"), "omega_0± expansions against C±/(P(-Z)P(-X))", p, || {
            match cfg.precision_bits {
                128 => omega0::<128>(cfg, &alpha, n),
                512 => omega0::<512>(cfg, &alpha, n),
                _ => omega0::<256>(cfg, &alpha, n),
            }
        });
    }
}

fn omega0<const P: usize>(cfg: &Config, alpha: &Rational, n: usize) -> Result<Outcome> {
    let point = ParameterPoint::new(cfg.nu.clone(), Some(alpha.clone()))?;
    let c = Consts::<Complex<P>>::at_point(&point)?;
    let lay = Layout::new(n, 2 * n, 1, 1);
    let roots = lay.const_roots(&pit_sample::<Complex<P>>(cfg.seed, 2 * n));
    let r = omega0_pm_identity(&lay, &roots, &c, alpha, cfg.order, TOLERANCE_BITS)?;
    Ok(Outcome::new(
        r.holds,
        format!("relative errors 2^{:.1} and 2^{:.1}", r.plus_error_log2, r.minus_error_log2),
    ))
}

// ---------------------------------------------------------------- nullvec

fn nullvec(b: &mut Battery) {
    let cfg = b.cfg;
    let nu = cfg.nu.clone();
    let ns: Vec<usize> = (1..=cfg.n_max).collect();
    for m in 0..=1usize {
        for ch in [Chirality::Right, Chirality::Left] {
            let templates = match generate_null_family(m, ch, 5) {
                Ok(t) => t,
                Err(e) => {
                    let p = b.params("xi", None, None);
                    b.check(&format!("templates/m={m}/{ch:?}"), "null-vector template generation", p, || Err(e));
                    continue;
                }
            };
            for (i, t) in templates.iter().enumerate() {
                let key = format!("null/m={m}/{}/{i:02}", format!("{ch:?}").to_lowercase());
                let anchor = format!("{:?} template on {} is a null vector", t.family, t.base);
                let p = b.params("(2m+1)xi", Some(cfg.n_max), None);
                b.check(&key, &anchor, p, || {
                    let exact: Vec<usize> = ns.iter().copied().filter(|&n| n <= 2).collect();
                    let sampled: Vec<usize> = ns.iter().copied().filter(|&n| n > 2).collect();
                    let mut holds = true;
                    let mut kinds = Vec::new();
                    if !exact.is_empty() {
                        let v = verify_null::<Rational>(t, &exact, &nu, 0, cfg.seed)?;
                        holds &= v.holds;
                        kinds.extend(v.results.iter().map(|r| format!("n={}:{:?}", r.n, r.kinds)));
                    }
                    if !sampled.is_empty() {
                        let v = verify_null::<Fp>(t, &sampled, &nu, cfg.samples.max(1), cfg.seed)?;
                        holds &= v.holds;
                        kinds.extend(v.results.iter().map(|r| format!("n={}:{:?}", r.n, r.kinds)));
                    }
                    Ok(Outcome::new(holds, kinds.join(" ")))
                });
            }
        }
    }
    for n in 2..=cfg.n_max {
        let p = b.params("generic", Some(n), None);
        b.check(&format!("ell-circ-ell/n={n}"), "the circ pairing vanishes on the ell basis", p, || {
            let lay = Layout::new(n, 2 * n, 1, 1);
            let vals = pit_sample::<Rational>(cfg.seed, 2 * n + 1);
            let roots = lay.const_roots(&vals[..2 * n]);
            let fq = &vals[2 * n];
            let parts = Partition::all(n);
            let hb = half_bases(&lay, &roots, &parts[0], fq)?;
            let mut holds = hb.decomposition_ok;
            for part in &parts[1..] {
                let basis = ell_basis(&lay, lay.s[0], &roots, part, &Rational::one(), fq)?;
                for i in 1..n {
                    for j in 1..n {
                        holds &= circ_pairing(&basis.ell[i], &basis.ell[j], &hb)?.is_zero();
                    }
                }
            }
            Ok(Outcome::new(holds, format!("{} partitions", parts.len())))
        });
        let p = b.params("generic", Some(n), None);
        b.check(&format!("reduced-dimension/n={n}"), "dimension of the reduced space is Catalan", p, || {
            let d = reduced_space_dimension(n, cfg.seed)?;
            Ok(Outcome::new(d == catalan(n), format!("dimension {d}, Catalan {}", catalan(n))))
        });
    }
    for n in 1..=cfg.n_max {
        let p = b.params("xi", Some(n), None);
        b.check(&format!("psibar1-kernel/n={n}"), "linear Z terms behind the psibar*_1 null vectors", p, || {
            let k = psibar1_kernel::<Rational>(n, &nu, cfg.seed)?;
            Ok(Outcome::new(k.c_minus_linear_vanishes && k.c_linear_is_exact, format!("{k:?}")))
        });
    }
    let p = b.params("xi", Some(2), Some(cfg.order));
    b.check("c-even-identities/n=2", "scalar and kernel identities behind C_even", p, || {
        let c = c_even_identities::<Rational>(2, &nu, cfg.order, cfg.seed)?;
        Ok(Outcome::new(c.no_cross_terms && c.even_kernel_identity, format!("{c:?}")))
    });
}

// ---------------------------------------------------------------- bethe

fn bethe(b: &mut Battery) {
    let cfg = b.cfg;
    for n in 1..=cfg.n_max.min(2) {
        let p = b.params("generic", Some(n), None);
        b.check(&format!("izergin/n={n}"), "Izergin determinant against the direct partition function", p, || {
            let mut agree = true;
            for seed in sample_seeds(cfg) {
                let v = pit_sample::<Rational>(seed, 4 * n + 1);
                agree &= dwpf_check(&v[..2 * n], &v[2 * n..4 * n], &v[4 * n])?.agree;
            }
            Ok(Outcome::new(agree, format!("{} exact samples", sample_seeds(cfg).len())))
        });
    }
    for n in 2..=cfg.n_max {
        let p = b.params("generic", Some(n), None);
        b.check(&format!("plucker/n={n}"), "Bethe covector wedge is decomposable and proportional to ell", p, || {
            let fit = fit_c_q(n, cfg.samples.max(2), &Fp::from_i64(7), &Fp::from_i64(12345), cfg.seed)?;
            let holds = fit.decomposable && fit.proportional && fit.sample_independent;
            Ok(Outcome::new(holds, format!("{fit:?}")))
        });
    }
}

// ---------------------------------------------------------------- virasoro

fn virasoro(b: &mut Battery) {
    let cfg = b.cfg;
    for id in DictionaryId::ALL {
        let p = b.params("kac", None, None);
        b.check(&format!("dictionary/{}", id.name()), "Virasoro dictionary identity over Q(nu)", p, || {
            let c = dictionary_check(id);
            Ok(Outcome::new(c.holds, format!("{} (branch {:?})", c.detail, c.branch)))
        });
    }
    let p = b.params("kac", None, None);
    b.check(&format!("null-table/level<={}", cfg.level_max), "null table linked to translated templates", p, || {
        let rows = null_table(cfg.level_max)?;
        let text: Vec<String> = rows
            .iter()
            .map(|r| {
                let v: Vec<String> = r.vectors.iter().map(|v| v.to_string()).collect();
                format!("W{} L{}: {}", r.module, r.level, v.join("; "))
            })
            .collect();
        Ok(Outcome::new(null_table_consistent(&rows)?, format!("{} rows", rows.len())).with_witness(text.join("\n")))
    });
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> Config {
        Config { n_max: 2, samples: 1, ..Config::default() }
    }

    #[test]
    fn unknown_suite_is_usage() {
        assert!(matches!(run_suite("nope", &small()), Err(SgffError::Usage(_))));
    }

    #[test]
    fn bad_precision_is_usage() {
        let cfg = Config { precision_bits: 100, ..small() };
        assert!(matches!(run_suite("towers", &cfg), Err(SgffError::Usage(_))));
    }

    #[test]
    fn checks_are_sorted_and_hashed() {
        let r = run_suite("towers", &small()).unwrap();
        assert!(r.passed());
        assert!(r.checks.windows(2).all(|w| w[0].id < w[1].id));
        assert!(r.checks.iter().all(|c| c.witness_hash.len() == 16));
        assert_eq!(r.schema, SCHEMA);
    }

    #[test]
    fn reports_repeat_for_a_seed() {
        let a = run_suite("exact-residue", &small()).unwrap();
        let b = run_suite("exact-residue", &small()).unwrap();
        let key = |r: &SuiteReport| r.checks.iter().map(|c| (c.id.clone(), c.witness_hash.clone())).collect::<Vec<_>>();
        assert_eq!(key(&a), key(&b));
    }
}
