//! Coefficient fields and the coupling constants built from `nu` and `alpha`.
//!
//! Four backends implement [`Scalar`]:
//! - [`Rational`]: exact rationals,
//! - [`Fp`]: the prime field of order 2^64 - 2^32 + 1, for fast identity testing,
//! - [`Gaussian`]: exact rationals adjoined with `i`,
//! - [`Complex`]: complex numbers with `P` bits of binary precision.
//!
//! The constants `q, Q, 𝔮, A, a` are unit complex numbers.  Exact backends
//! cannot hold them, so [`Consts::generic`] draws them as independent random
//! field elements, imposing only the algebraic relations that hold on the
//! chosen line of `alpha`.  [`Consts::at_point`] evaluates them for real.

use crate::error::{Result, SgffError};
use astro_float::{BigFloat, Consts as AfConsts, RoundingMode};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::cell::RefCell;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub type Rational = BigRational;

/// Field operations required by the polynomial layer.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    const NAME: &'static str;
    /// Exact backends decide equality; inexact ones compare within tolerance.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Option<Self>;
    /// `exp(iπr)` when representable.
    fn exp_i_pi(_r: &Rational) -> Option<Self> {
        None
    }
    fn imag_unit() -> Option<Self> {
        None
    }
    /// Binary logarithm of the modulus; only meaningful for inexact backends.
    fn log2_abs(&self) -> f64 {
        if self.is_zero() {
            f64::NEG_INFINITY
        } else {
            0.0
        }
    }
    fn sqrt(&self) -> Option<Self> {
        None
    }
    /// A random element for identity testing.
    fn sample(rng: &mut ChaCha8Rng) -> Self {
        Self::from_rational(&random_rational(rng))
    }

    fn is_one(&self) -> bool {
        (self.clone() - Self::one()).is_zero()
    }
    fn div(&self, other: &Self) -> Result<Self> {
        other
            .inv()
            .map(|i| self.clone() * i)
            .ok_or_else(|| SgffError::Resonance(format!("division by zero in {}", Self::NAME)))
    }
    fn powi(&self, e: i64) -> Result<Self> {
        let base = if e < 0 {
            self.inv()
                .ok_or_else(|| SgffError::Resonance("zero raised to a negative power".into()))?
        } else {
            self.clone()
        };
        let mut k = e.unsigned_abs();
        let mut acc = Self::one();
        let mut b = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * b.clone();
            }
            b = b.clone() * b;
            k >>= 1;
        }
        Ok(acc)
    }
}

pub fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let p: i64 = rng.gen_range(-997..=997);
        let q: i64 = rng.gen_range(1..=991);
        if p != 0 {
            return Rational::new(BigInt::from(p), BigInt::from(q));
        }
    }
}

pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

impl Scalar for Rational {
    const NAME: &'static str = "exact-rational";
    const EXACT: bool = true;
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer().sqrt();
        let d = self.denom().sqrt();
        (&n * &n == *self.numer() && &d * &d == *self.denom()).then(|| Rational::new(n, d))
    }
}

// ---------------------------------------------------------------- prime field

const GOLDILOCKS: u64 = 0xFFFF_FFFF_0000_0001;

/// Element of the prime field of order 2^64 - 2^32 + 1.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Fp(u64);

impl Fp {
    pub const MODULUS: u64 = GOLDILOCKS;
    pub fn new(v: u64) -> Self {
        Fp(v % GOLDILOCKS)
    }
    pub fn value(self) -> u64 {
        self.0
    }
    fn pow_u(self, mut e: u64) -> Fp {
        let mut acc = Fp(1);
        let mut b = self;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b;
            }
            b = b * b;
            e >>= 1;
        }
        acc
    }
    fn from_bigint(v: &BigInt) -> Fp {
        let m = BigInt::from(GOLDILOCKS);
        Fp(v.mod_floor(&m).to_u64().unwrap_or(0))
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, o: Fp) -> Fp {
        Fp(((self.0 as u128 + o.0 as u128) % GOLDILOCKS as u128) as u64)
    }
}
impl Sub for Fp {
    type Output = Fp;
    fn sub(self, o: Fp) -> Fp {
        Fp(((self.0 as u128 + GOLDILOCKS as u128 - o.0 as u128) % GOLDILOCKS as u128) as u64)
    }
}
impl Mul for Fp {
    type Output = Fp;
    fn mul(self, o: Fp) -> Fp {
        Fp(((self.0 as u128 * o.0 as u128) % GOLDILOCKS as u128) as u64)
    }
}
impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        if self.0 == 0 {
            self
        } else {
            Fp(GOLDILOCKS - self.0)
        }
    }
}

impl Scalar for Fp {
    const NAME: &'static str = "prime-field";
    const EXACT: bool = true;
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1)
    }
    fn from_i64(v: i64) -> Self {
        Fp::from_bigint(&BigInt::from(v))
    }
    fn from_rational(r: &Rational) -> Self {
        let n = Fp::from_bigint(r.numer());
        let d = Fp::from_bigint(r.denom());
        n * d.inv().expect("denominator divisible by the field modulus")
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn inv(&self) -> Option<Self> {
        (self.0 != 0).then(|| self.pow_u(GOLDILOCKS - 2))
    }
    fn imag_unit() -> Option<Self> {
        // 7 generates the multiplicative group.
        Some(Fp(7).pow_u((GOLDILOCKS - 1) / 4))
    }
    fn sample(rng: &mut ChaCha8Rng) -> Self {
        loop {
            let v: u64 = rng.gen();
            if v < GOLDILOCKS && v > 1 {
                return Fp(v);
            }
        }
    }
}

// ---------------------------------------------------------------- reals

/// Real coefficient type underlying [`Cx`].
pub trait Real:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    const CNAME: &'static str;
    const EXACT: bool;
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(r: &Rational) -> Self;
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Option<Self>;
    fn cos_sin_pi(r: &Rational) -> Option<(Self, Self)>;
    fn log2_abs(&self) -> f64;
    fn sqrt(&self) -> Option<Self>;
    fn is_nonneg(&self) -> bool;
}

impl Real for Rational {
    const CNAME: &'static str = "exact-gaussian-rational";
    const EXACT: bool = true;
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn inv(&self) -> Option<Self> {
        <Rational as Scalar>::inv(self)
    }
    fn cos_sin_pi(r: &Rational) -> Option<(Self, Self)> {
        let two = Rational::from_integer(BigInt::from(2));
        let t = r - (r / &two).floor() * &two;
        let h = &t * &two;
        if !h.is_integer() {
            return None;
        }
        let (c, s) = match h.to_integer().to_i64()? {
            0 => (1, 0),
            1 => (0, 1),
            2 => (-1, 0),
            _ => (0, -1),
        };
        Some((
            Rational::from_integer(BigInt::from(c)),
            Rational::from_integer(BigInt::from(s)),
        ))
    }
    fn log2_abs(&self) -> f64 {
        if Zero::is_zero(self) {
            f64::NEG_INFINITY
        } else {
            self.abs().to_f64().map(f64::log2).unwrap_or(0.0)
        }
    }
    fn sqrt(&self) -> Option<Self> {
        <Rational as Scalar>::sqrt(self)
    }
    fn is_nonneg(&self) -> bool {
        !self.is_negative()
    }
}

thread_local! {
    static AF_CONSTS: RefCell<AfConsts> = RefCell::new(AfConsts::new().expect("astro-float constants"));
}

const RM: RoundingMode = RoundingMode::ToEven;

/// Binary floating point with `P` bits of mantissa.
#[derive(Clone, Debug)]
pub struct HpReal<const P: usize>(BigFloat);

impl<const P: usize> PartialEq for HpReal<P> {
    fn eq(&self, o: &Self) -> bool {
        self.0 == o.0
    }
}

impl<const P: usize> HpReal<P> {
    pub fn from_f64(v: f64) -> Self {
        HpReal(BigFloat::from_f64(v, P))
    }
    fn from_bigint(v: &BigInt) -> Self {
        let (sign, digits) = v.to_u64_digits();
        let base = BigFloat::from_u128(1u128 << 64, P);
        let mut acc = BigFloat::from_u64(0, P);
        for d in digits.iter().rev() {
            acc = acc.mul(&base, P, RM).add(&BigFloat::from_u64(*d, P), P, RM);
        }
        if sign == num_bigint::Sign::Minus {
            acc = acc.neg();
        }
        HpReal(acc)
    }
    pub fn to_f64(&self) -> f64 {
        if self.0.is_zero() {
            return 0.0;
        }
        let s = format!("{}", self.0);
        s.parse::<f64>().unwrap_or(f64::NAN)
    }
    pub fn pi() -> Self {
        AF_CONSTS.with(|c| HpReal(c.borrow_mut().pi(P, RM)))
    }
}

impl<const P: usize> fmt::Display for HpReal<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.40e}", self.to_f64())
    }
}

impl<const P: usize> Add for HpReal<P> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        HpReal(self.0.add(&o.0, P, RM))
    }
}
impl<const P: usize> Sub for HpReal<P> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        HpReal(self.0.sub(&o.0, P, RM))
    }
}
impl<const P: usize> Mul for HpReal<P> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        HpReal(self.0.mul(&o.0, P, RM))
    }
}
impl<const P: usize> Neg for HpReal<P> {
    type Output = Self;
    fn neg(self) -> Self {
        HpReal(self.0.neg())
    }
}

impl<const P: usize> Real for HpReal<P> {
    const CNAME: &'static str = "complex";
    const EXACT: bool = false;
    fn zero() -> Self {
        HpReal(BigFloat::from_u64(0, P))
    }
    fn one() -> Self {
        HpReal(BigFloat::from_u64(1, P))
    }
    fn from_rational(r: &Rational) -> Self {
        let n = Self::from_bigint(r.numer());
        let d = Self::from_bigint(r.denom());
        HpReal(n.0.div(&d.0, P, RM))
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn inv(&self) -> Option<Self> {
        (!self.0.is_zero()).then(|| HpReal(BigFloat::from_u64(1, P).div(&self.0, P, RM)))
    }
    fn cos_sin_pi(r: &Rational) -> Option<(Self, Self)> {
        // Reduce modulo 2 exactly, then evaluate with a guard margin.
        let two = Rational::from_integer(BigInt::from(2));
        let t = r - (r / &two).floor() * &two;
        if let Some(exact) = <Rational as Real>::cos_sin_pi(&t) {
            return Some((Self::from_rational(&exact.0), Self::from_rational(&exact.1)));
        }
        let x = Self::pi().0.mul(&Self::from_rational(&t).0, P, RM);
        AF_CONSTS.with(|c| {
            let mut cc = c.borrow_mut();
            let cs = x.cos(P, RM, &mut cc);
            let sn = x.sin(P, RM, &mut cc);
            Some((HpReal(cs), HpReal(sn)))
        })
    }
    fn log2_abs(&self) -> f64 {
        if self.0.is_zero() {
            return f64::NEG_INFINITY;
        }
        self.0.exponent().map(|e| e as f64).unwrap_or(0.0)
    }
    fn sqrt(&self) -> Option<Self> {
        (!self.0.is_negative()).then(|| HpReal(self.0.sqrt(P, RM)))
    }
    fn is_nonneg(&self) -> bool {
        !self.0.is_negative()
    }
}

// ---------------------------------------------------------------- complex

/// `re + i·im` over a real coefficient type.
#[derive(Clone, Debug, PartialEq)]
pub struct Cx<R> {
    pub re: R,
    pub im: R,
}

pub type Gaussian = Cx<Rational>;
pub type Complex<const P: usize> = Cx<HpReal<P>>;
pub type Complex256 = Complex<256>;

impl<R: Real> Cx<R> {
    pub fn new(re: R, im: R) -> Self {
        Cx { re, im }
    }
    pub fn conj(&self) -> Self {
        Cx::new(self.re.clone(), -self.im.clone())
    }
}

impl<R: Real> fmt::Display for Cx<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})+({})*i", self.re, self.im)
    }
}

impl<R: Real> Add for Cx<R> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Cx::new(self.re + o.re, self.im + o.im)
    }
}
impl<R: Real> Sub for Cx<R> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Cx::new(self.re - o.re, self.im - o.im)
    }
}
impl<R: Real> Mul for Cx<R> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let re = self.re.clone() * o.re.clone() - self.im.clone() * o.im.clone();
        let im = self.re * o.im + self.im * o.re;
        Cx::new(re, im)
    }
}
impl<R: Real> Neg for Cx<R> {
    type Output = Self;
    fn neg(self) -> Self {
        Cx::new(-self.re, -self.im)
    }
}

impl<R: Real> Scalar for Cx<R> {
    const NAME: &'static str = R::CNAME;
    const EXACT: bool = R::EXACT;
    fn zero() -> Self {
        Cx::new(R::zero(), R::zero())
    }
    fn one() -> Self {
        Cx::new(R::one(), R::zero())
    }
    fn from_i64(v: i64) -> Self {
        Cx::new(R::from_rational(&Rational::from_integer(BigInt::from(v))), R::zero())
    }
    fn from_rational(r: &Rational) -> Self {
        Cx::new(R::from_rational(r), R::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn inv(&self) -> Option<Self> {
        let n = self.re.clone() * self.re.clone() + self.im.clone() * self.im.clone();
        let ni = n.inv()?;
        Some(Cx::new(self.re.clone() * ni.clone(), -(self.im.clone() * ni)))
    }
    fn exp_i_pi(r: &Rational) -> Option<Self> {
        R::cos_sin_pi(r).map(|(c, s)| Cx::new(c, s))
    }
    fn imag_unit() -> Option<Self> {
        Some(Cx::new(R::zero(), R::one()))
    }
    fn log2_abs(&self) -> f64 {
        self.re.log2_abs().max(self.im.log2_abs())
    }
    fn sqrt(&self) -> Option<Self> {
        // Principal branch.
        if self.im.is_zero() {
            if self.re.is_nonneg() {
                return self.re.sqrt().map(|s| Cx::new(s, R::zero()));
            }
            return (-self.re.clone()).sqrt().map(|s| Cx::new(R::zero(), s));
        }
        let norm = (self.re.clone() * self.re.clone() + self.im.clone() * self.im.clone()).sqrt()?;
        let half = R::from_rational(&rat(1, 2));
        let u = ((norm.clone() + self.re.clone()) * half.clone()).sqrt()?;
        let v = ((norm - self.re.clone()) * half).sqrt()?;
        let v = if self.im.is_nonneg() { v } else { -v };
        Some(Cx::new(u, v))
    }
}

/// Relative agreement test used by every identity check.
///
/// Exact backends require `diff == 0`; inexact ones accept
/// `log2|diff| <= log2(scale) - bits`.
pub fn agrees<F: Scalar>(diff_log2: f64, scale_log2: f64, bits: f64) -> bool {
    if F::EXACT {
        diff_log2 == f64::NEG_INFINITY
    } else {
        diff_log2 == f64::NEG_INFINITY || diff_log2 <= scale_log2.max(0.0) - bits
    }
}

/// Default relative tolerance, in bits, for inexact comparisons.
pub const TOLERANCE_BITS: f64 = 100.0;

// ---------------------------------------------------------------- parameters

/// Coupling data. `alpha = None` means "generic".
#[derive(Clone, Debug, PartialEq)]
pub struct ParameterPoint {
    pub nu: Rational,
    pub alpha: Option<Rational>,
    /// ν = 1/2, the free-fermion point.
    pub free_fermion: bool,
    pub a_squared_is_one: bool,
}

impl ParameterPoint {
    pub fn new(nu: Rational, alpha: Option<Rational>) -> Result<Self> {
        if nu <= <Rational as Zero>::zero() || nu >= <Rational as One>::one() {
            return Err(SgffError::Domain(format!("nu = {nu} outside (0,1)")));
        }
        let free_fermion = nu == rat(1, 2);
        let a_squared_is_one = match &alpha {
            Some(al) => (al * &nu / (<Rational as One>::one() - &nu)).is_integer(),
            None => false,
        };
        Ok(ParameterPoint { nu, alpha, free_fermion, a_squared_is_one })
    }

    /// ξ = (1−ν)/ν.
    pub fn xi(&self) -> Rational {
        (<Rational as One>::one() - &self.nu) / &self.nu
    }

    /// Decomposes α = kξ + 2m when possible.
    pub fn kac_line(&self) -> Option<(i64, i64)> {
        let al = self.alpha.as_ref()?;
        let xi = self.xi();
        for k in (0i64..=32).map(|j| if j % 2 == 0 { j / 2 } else { -(j + 1) / 2 }) {
            let rest = al - Rational::from_integer(BigInt::from(k)) * &xi;
            let half = rest / Rational::from_integer(BigInt::from(2));
            if half.is_integer() {
                return half.to_integer().to_i64().map(|m| (k, m));
            }
        }
        None
    }
}

/// Relation imposed on the random constants of the generic model.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlphaLine {
    /// A and a independent of Q and 𝔮.
    Generic,
    /// α = kξ + 2m (A = Q^k, a = (−1)^k 𝔮^{2m}).
    OnLine { k: i64, m: i64 },
}

/// The derived constants in a chosen field.
#[derive(Clone, Debug)]
pub struct Consts<F> {
    pub nu: F,
    pub nu_exact: Rational,
    /// Lattice q; `None` in the generic model.
    pub q: Option<F>,
    pub big_q: F,
    pub big_a: F,
    pub fq: F,
    pub a: F,
}

impl<F: Scalar> Consts<F> {
    /// Evaluates the unit constants at the given point.
    pub fn at_point(p: &ParameterPoint) -> Result<Self> {
        let alpha = p
            .alpha
            .clone()
            .ok_or_else(|| SgffError::Domain("numeric constants need a value of alpha".into()))?;
        let one = <Rational as One>::one();
        let ex = |r: Rational| {
            F::exp_i_pi(&r).ok_or_else(|| {
                SgffError::Unsupported(format!("exp(iπ·{r}) is not representable in {}", F::NAME))
            })
        };
        Ok(Consts {
            nu: F::from_rational(&p.nu),
            nu_exact: p.nu.clone(),
            q: Some(ex(p.nu.clone())?),
            big_q: ex(p.xi())?,
            big_a: ex(alpha.clone())?,
            fq: ex(&one / (&one - &p.nu))?,
            a: ex(&p.nu * &alpha / (&one - &p.nu))?,
        })
    }

    /// Independent random unit constants (the generic model).
    pub fn generic(nu: &Rational, line: AlphaLine, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5167_ff00_c0de_0001);
        let big_q = F::sample(&mut rng);
        let fq = F::sample(&mut rng);
        let (big_a, a) = match line {
            AlphaLine::Generic => (F::sample(&mut rng), F::sample(&mut rng)),
            AlphaLine::OnLine { k, m } => {
                let sign = if k.rem_euclid(2) == 0 { F::one() } else { -F::one() };
                (
                    big_q.powi(k).expect("nonzero sample"),
                    sign * fq.powi(2 * m).expect("nonzero sample"),
                )
            }
        };
        Consts { nu: F::from_rational(nu), nu_exact: nu.clone(), q: None, big_q, big_a, fq, a }
    }

    /// Shifts α by kξ: A → A·Q^k, a → (−1)^k a.
    pub fn shift_alpha(&self, k: i64) -> Self {
        let mut c = self.clone();
        c.big_a = self.big_a.clone() * self.big_q.powi(k).expect("Q is nonzero");
        if k.rem_euclid(2) == 1 {
            c.a = -self.a.clone();
        }
        c
    }

    /// `i·cot(π/2·(α + l/ν))`, written as `−(w+1)/(w−1)` with `w = A(−Q)^l`.
    pub fn icot(&self, l: i64) -> Result<F> {
        let w = self.big_a.clone() * (-self.big_q.clone()).powi(l)?;
        let den = w.clone() - F::one();
        if den.is_zero() {
            return Err(SgffError::Resonance(format!("cot pole at l = {l}")));
        }
        Ok(-(w + F::one()) * den.inv().expect("checked"))
    }

    /// `(i/ν)·cot(π/2·(α + l/ν))`.
    pub fn t_coeff(&self, l: i64) -> Result<F> {
        self.icot(l)?.div(&self.nu)
    }
}

/// Deterministic distinct nonzero values with `v_i ≠ ±v_j`.
pub fn pit_sample<F: Scalar>(seed: u64, count: usize) -> Vec<F> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<F> = Vec::with_capacity(count);
    while out.len() < count {
        let v = F::sample(&mut rng);
        if v.is_zero() {
            continue;
        }
        let clash = out
            .iter()
            .any(|w| (w.clone() - v.clone()).is_zero() || (w.clone() + v.clone()).is_zero());
        if !clash {
            out.push(v);
        }
    }
    out
}

/// Named assignment form of [`pit_sample`].
pub fn pit_assignment<F: Scalar>(seed: u64, names: &[&str]) -> Vec<(String, F)> {
    names
        .iter()
        .map(|s| s.to_string())
        .zip(pit_sample::<F>(seed, names.len()))
        .collect()
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || SgffError::Usage(format!("not a rational number: {s}"));
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        Ok(Rational::new(p, q))
    } else {
        let p: BigInt = s.parse().map_err(|_| bad())?;
        Ok(Rational::from_integer(p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_inverse_and_unit() {
        let x = Fp::from_i64(-12345);
        assert!((x * x.inv().unwrap()).is_one());
        let i = Fp::imag_unit().unwrap();
        assert_eq!(i * i, -Fp::one());
    }

    #[test]
    fn nu_two_fifths_gives_big_q_minus_i() {
        let p = ParameterPoint::new(rat(2, 5), Some(rat(0, 1))).unwrap();
        let c = Consts::<Gaussian>::at_point(&p);
        // 𝔮 = exp(5πi/3) is not Gaussian.
        assert!(c.is_err());
        let q = Gaussian::exp_i_pi(&p.xi()).unwrap();
        assert_eq!(q, Cx::new(rat(0, 1), rat(-1, 1)));
        assert!(p.a_squared_is_one);
    }

    #[test]
    fn alpha_xi_gives_a_minus_one() {
        let nu = rat(2, 5);
        let xi = (<Rational as One>::one() - &nu) / &nu;
        let p = ParameterPoint::new(nu, Some(xi)).unwrap();
        assert!(p.a_squared_is_one);
        let c = Consts::<Complex256>::at_point(&p).unwrap();
        assert!((c.a.clone() + Complex256::one()).log2_abs() < -200.0);
        assert!((c.big_a.clone() - c.big_q.clone()).log2_abs() < -200.0);
        assert_eq!(p.kac_line(), Some((1, 0)));
    }

    #[test]
    fn bad_nu_is_domain_error() {
        assert!(matches!(ParameterPoint::new(rat(3, 2), None), Err(SgffError::Domain(_))));
        assert!(ParameterPoint::new(rat(1, 2), None).unwrap().free_fermion);
    }

    #[test]
    fn generic_icot_matches_trig() {
        let p = ParameterPoint::new(rat(2, 5), Some(rat(3, 7))).unwrap();
        let c = Consts::<Complex256>::at_point(&p).unwrap();
        // i·cot(πα/2) from the closed form against w = A.
        let v = c.icot(0).unwrap();
        let x = 3.0 * std::f64::consts::PI / 14.0;
        assert!(v.re.to_f64().abs() < 1e-30);
        assert!((v.im.to_f64() - 1.0 / x.tan()).abs() < 1e-12);
    }

    #[test]
    fn pit_is_deterministic_and_clash_free() {
        let a: Vec<Rational> = pit_sample(1, 4);
        let b: Vec<Rational> = pit_sample(1, 4);
        assert_eq!(a, b);
        for i in 0..4 {
            for j in 0..i {
                assert!(a[i] != a[j] && a[i] != -a[j].clone());
            }
        }
    }

    #[test]
    fn hp_reduces_rationals() {
        let x = HpReal::<256>::from_rational(&rat(1, 3));
        let y = x.clone() + x.clone() + x;
        assert!((y - HpReal::one()).log2_abs() < -250.0);
    }
}
