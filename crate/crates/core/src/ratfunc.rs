//! Dense univariate polynomials and rational functions over an exact field.
//!
//! [`RatFunc`] is itself a [`Scalar`], so linear algebra over `F(w)` reuses the
//! generic code paths.  Used for the `a²`-dependence of the m/n split and for the
//! `ν`-dependence of Verma-module computations.

use crate::error::{Result, SgffError};
use crate::scalars::{Rational, Scalar};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Coefficients from degree 0 upwards, without trailing zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<F>(Vec<F>);

impl<F: Scalar> Poly<F> {
    pub fn new(mut c: Vec<F>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly(c)
    }

    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn constant(c: F) -> Self {
        Poly::new(vec![c])
    }

    /// The variable `w`.
    pub fn x() -> Self {
        Poly(vec![F::zero(), F::one()])
    }

    pub fn coeffs(&self) -> &[F] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, `-1` for zero.
    pub fn degree(&self) -> i64 {
        self.0.len() as i64 - 1
    }

    pub fn lead(&self) -> F {
        self.0.last().cloned().unwrap_or_else(F::zero)
    }

    pub fn eval(&self, x: &F) -> F {
        self.0.iter().rev().fold(F::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * F::from_i64(k as i64))
                .collect(),
        )
    }

    pub fn scale(&self, c: &F) -> Self {
        Poly::new(self.0.iter().map(|x| x.clone() * c.clone()).collect())
    }

    /// Quotient and remainder.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        if d.is_zero() {
            return Err(SgffError::Resonance("polynomial division by zero".into()));
        }
        let inv = d.lead().inv().expect("nonzero leading coefficient");
        let mut r = self.0.clone();
        let dd = d.0.len();
        if r.len() < dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut q = vec![F::zero(); r.len() - dd + 1];
        for k in (0..q.len()).rev() {
            let c = r[k + dd - 1].clone() * inv.clone();
            if !c.is_zero() {
                for (j, dj) in d.0.iter().enumerate() {
                    r[k + j] = r[k + j].clone() - c.clone() * dj.clone();
                }
            }
            q[k] = c;
        }
        r.truncate(dd - 1);
        Ok((Poly::new(q), Poly::new(r)))
    }

    pub fn monic(&self) -> Self {
        match self.lead().inv() {
            Some(i) => self.scale(&i),
            None => self.clone(),
        }
    }

    pub fn gcd(a: &Self, b: &Self) -> Self {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = x.div_rem(&y).expect("nonzero divisor").1;
            x = y;
            y = r;
        }
        x.monic()
    }
}

impl<F: Scalar> Add for &Poly<F> {
    type Output = Poly<F>;
    fn add(self, o: &Poly<F>) -> Poly<F> {
        let n = self.0.len().max(o.0.len());
        Poly::new(
            (0..n)
                .map(|k| {
                    let a = self.0.get(k).cloned().unwrap_or_else(F::zero);
                    let b = o.0.get(k).cloned().unwrap_or_else(F::zero);
                    a + b
                })
                .collect(),
        )
    }
}

impl<F: Scalar> Neg for &Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        Poly(self.0.iter().map(|c| -c.clone()).collect())
    }
}

impl<F: Scalar> Sub for &Poly<F> {
    type Output = Poly<F>;
    fn sub(self, o: &Poly<F>) -> Poly<F> {
        self + &(-o)
    }
}

impl<F: Scalar> Mul for &Poly<F> {
    type Output = Poly<F>;
    fn mul(self, o: &Poly<F>) -> Poly<F> {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![F::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] = c[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(c)
    }
}

impl<F: Scalar> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*w")?,
                _ => write!(f, "({c})*w^{k}")?,
            }
        }
        Ok(())
    }
}

/// `num/den` in lowest terms with monic denominator.
#[derive(Clone, Debug, PartialEq)]
pub struct RatFunc<F> {
    num: Poly<F>,
    den: Poly<F>,
}

impl<F: Scalar> RatFunc<F> {
    pub fn new(num: Poly<F>, den: Poly<F>) -> Result<Self> {
        if den.is_zero() {
            return Err(SgffError::Resonance("rational function with zero denominator".into()));
        }
        if num.is_zero() {
            return Ok(RatFunc { num, den: Poly::constant(F::one()) });
        }
        let g = Poly::gcd(&num, &den);
        let n = num.div_rem(&g)?.0;
        let d = den.div_rem(&g)?.0;
        let li = d.lead().inv().expect("nonzero");
        Ok(RatFunc { num: n.scale(&li), den: d.scale(&li) })
    }

    pub fn from_poly(p: Poly<F>) -> Self {
        RatFunc { num: p, den: Poly::constant(F::one()) }
    }

    /// The variable `w`.
    pub fn w() -> Self {
        Self::from_poly(Poly::x())
    }

    pub fn constant(c: F) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn num(&self) -> &Poly<F> {
        &self.num
    }

    pub fn den(&self) -> &Poly<F> {
        &self.den
    }

    pub fn eval(&self, x: &F) -> Result<F> {
        self.num.eval(x).div(&self.den.eval(x))
    }

    /// `res_{w=w0} f(w) dw/w`; `w0 ≠ 0`, the pole at `w0` must be at most simple.
    pub fn residue_dlog(&self, w0: &F) -> Result<F> {
        let d0 = self.den.eval(w0);
        if !d0.is_zero() {
            return Ok(F::zero());
        }
        let dd = self.den.derivative().eval(w0);
        if dd.is_zero() {
            return Err(SgffError::Unsupported("pole of order higher than one".into()));
        }
        self.num.eval(w0).div(&(w0.clone() * dd))
    }
}

impl<F: Scalar> fmt::Display for RatFunc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl<F: Scalar> Add for RatFunc<F> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        if self.den == o.den {
            return RatFunc::new(&self.num + &o.num, self.den).expect("nonzero den");
        }
        RatFunc::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den).expect("nonzero den")
    }
}

impl<F: Scalar> Neg for RatFunc<F> {
    type Output = Self;
    fn neg(self) -> Self {
        RatFunc { num: -&self.num, den: self.den }
    }
}

impl<F: Scalar> Sub for RatFunc<F> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<F: Scalar> Mul for RatFunc<F> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        RatFunc::new(&self.num * &o.num, &self.den * &o.den).expect("nonzero den")
    }
}

impl<F: Scalar> Scalar for RatFunc<F> {
    const NAME: &'static str = "rational-function";
    const EXACT: bool = F::EXACT;

    fn zero() -> Self {
        Self::constant(F::zero())
    }
    fn one() -> Self {
        Self::constant(F::one())
    }
    fn from_i64(v: i64) -> Self {
        Self::constant(F::from_i64(v))
    }
    fn from_rational(r: &Rational) -> Self {
        Self::constant(F::from_rational(r))
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            None
        } else {
            RatFunc::new(self.den.clone(), self.num.clone()).ok()
        }
    }
    fn imag_unit() -> Option<Self> {
        F::imag_unit().map(Self::constant)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    type R = RatFunc<Rational>;

    #[test]
    fn normalizes_to_lowest_terms() {
        let w = R::w();
        let one = R::one();
        let f = (w.clone() * w.clone() - one.clone()) * (w.clone() - one.clone()).inv().unwrap();
        assert_eq!(f, w + one);
    }

    #[test]
    fn simple_pole_residue() {
        // w/(c − w) dw/w has residue −1 at w = c.
        let c = R::constant(Rational::from_integer(7.into()));
        let w = R::w();
        let f = w.clone() * (c - w).inv().unwrap();
        assert_eq!(f.residue_dlog(&Rational::from_integer(7.into())).unwrap(), rat(-1, 1));
    }
}
