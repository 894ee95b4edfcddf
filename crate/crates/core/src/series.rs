//! Truncated power series `Σ_{k<K} c_k u^k` whose coefficients are Laurent
//! polynomials in the remaining variables.

use crate::error::{Result, SgffError};
use crate::laurent::{LaurentPoly, Vars};
use crate::scalars::Scalar;

#[derive(Clone, Debug)]
pub struct PowerSeries<F> {
    vars: Vars,
    coeffs: Vec<LaurentPoly<F>>,
}

impl<F: Scalar> PartialEq for PowerSeries<F> {
    fn eq(&self, o: &Self) -> bool {
        self.coeffs == o.coeffs
    }
}

impl<F: Scalar> PowerSeries<F> {
    pub fn zero(vars: &Vars, order: usize) -> Self {
        PowerSeries { vars: vars.clone(), coeffs: vec![LaurentPoly::zero(vars); order] }
    }

    pub fn one(vars: &Vars, order: usize) -> Self {
        let mut s = Self::zero(vars, order);
        if order > 0 {
            s.coeffs[0] = LaurentPoly::one(vars);
        }
        s
    }

    /// Series with the given leading coefficients, padded with zeros.
    pub fn from_coeffs(vars: &Vars, order: usize, cs: Vec<LaurentPoly<F>>) -> Self {
        let mut s = Self::zero(vars, order);
        for (k, c) in cs.into_iter().enumerate().take(order) {
            s.coeffs[k] = c;
        }
        s
    }

    /// `1 + c·u^k`.
    pub fn binomial(vars: &Vars, order: usize, k: usize, c: LaurentPoly<F>) -> Self {
        let mut s = Self::one(vars, order);
        if k < order {
            s.coeffs[k] = &s.coeffs[k] + &c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[LaurentPoly<F>] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &LaurentPoly<F> {
        &self.coeffs[k]
    }

    pub fn add(&self, o: &Self) -> Self {
        let order = self.order().min(o.order());
        let coeffs = (0..order).map(|k| &self.coeffs[k] + &o.coeffs[k]).collect();
        PowerSeries { vars: self.vars.clone(), coeffs }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let order = self.order().min(o.order());
        let coeffs = (0..order).map(|k| &self.coeffs[k] - &o.coeffs[k]).collect();
        PowerSeries { vars: self.vars.clone(), coeffs }
    }

    pub fn scale(&self, c: &F) -> Self {
        PowerSeries { vars: self.vars.clone(), coeffs: self.coeffs.iter().map(|x| x.scale(c)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let order = self.order().min(o.order());
        let mut out = Self::zero(&self.vars, order);
        for i in 0..order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..order - i {
                if !o.coeffs[j].is_zero() {
                    out.coeffs[i + j] = &out.coeffs[i + j] + &(&self.coeffs[i] * &o.coeffs[j]);
                }
            }
        }
        out
    }

    fn int_inv(k: usize) -> Result<F> {
        F::from_i64(k as i64)
            .inv()
            .ok_or_else(|| SgffError::Domain(format!("{k} is not invertible in {}", F::NAME)))
    }

    fn require_unit_constant(&self, what: &str) -> Result<()> {
        if self.order() > 0 && self.coeffs[0] != LaurentPoly::one(&self.vars) {
            return Err(SgffError::Domain(format!("{what} needs constant term 1")));
        }
        Ok(())
    }

    /// Multiplicative inverse of a series with constant term 1.
    pub fn inv(&self) -> Result<Self> {
        self.require_unit_constant("inverse")?;
        let order = self.order();
        let mut h = Self::zero(&self.vars, order);
        if order == 0 {
            return Ok(h);
        }
        h.coeffs[0] = LaurentPoly::one(&self.vars);
        for k in 1..order {
            let mut acc = LaurentPoly::zero(&self.vars);
            for j in 1..=k {
                if !self.coeffs[j].is_zero() && !h.coeffs[k - j].is_zero() {
                    acc = &acc - &(&self.coeffs[j] * &h.coeffs[k - j]);
                }
            }
            h.coeffs[k] = acc;
        }
        Ok(h)
    }

    /// Square root with constant term 1.
    pub fn sqrt(&self) -> Result<Self> {
        self.require_unit_constant("square root")?;
        let order = self.order();
        let mut g = Self::zero(&self.vars, order);
        if order == 0 {
            return Ok(g);
        }
        g.coeffs[0] = LaurentPoly::one(&self.vars);
        let half = Self::int_inv(2)?;
        for k in 1..order {
            let mut acc = self.coeffs[k].clone();
            for j in 1..k {
                if !g.coeffs[j].is_zero() && !g.coeffs[k - j].is_zero() {
                    acc = &acc - &(&g.coeffs[j] * &g.coeffs[k - j]);
                }
            }
            g.coeffs[k] = acc.scale(&half);
        }
        Ok(g)
    }

    /// `exp` of a series without constant term.
    pub fn exp(&self) -> Result<Self> {
        if self.order() > 0 && !self.coeffs[0].is_zero() {
            return Err(SgffError::Domain("exp needs a vanishing constant term".into()));
        }
        let order = self.order();
        let mut e = Self::zero(&self.vars, order);
        if order == 0 {
            return Ok(e);
        }
        e.coeffs[0] = LaurentPoly::one(&self.vars);
        for k in 1..order {
            let mut acc = LaurentPoly::zero(&self.vars);
            for j in 1..=k {
                if !self.coeffs[j].is_zero() && !e.coeffs[k - j].is_zero() {
                    let t = (&self.coeffs[j] * &e.coeffs[k - j]).scale(&F::from_i64(j as i64));
                    acc = &acc + &t;
                }
            }
            e.coeffs[k] = acc.scale(&Self::int_inv(k)?);
        }
        Ok(e)
    }

    /// Product `Π_j (1 + c_j u^k)` over the given coefficients.
    pub fn product_of_binomials(vars: &Vars, order: usize, k: usize, cs: &[LaurentPoly<F>]) -> Self {
        let mut acc = Self::one(vars, order);
        for c in cs {
            acc = acc.mul(&Self::binomial(vars, order, k, c.clone()));
        }
        acc
    }

    pub fn agrees_with(&self, o: &Self) -> bool {
        self.order() == o.order() && self.coeffs.iter().zip(&o.coeffs).all(|(a, b)| a.agrees_with(b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{rat, Rational};

    #[test]
    fn sqrt_squares_back() {
        let v = Vars::new(&["b"]);
        let b = LaurentPoly::<Rational>::var(&v, 0);
        let f = PowerSeries::from_coeffs(&v, 6, vec![LaurentPoly::one(&v), b.clone(), b.pow(3)]);
        let g = f.sqrt().unwrap();
        assert_eq!(g.mul(&g), f);
        assert_eq!(f.mul(&f.inv().unwrap()), PowerSeries::one(&v, 6));
    }

    #[test]
    fn exp_of_u_is_exponential() {
        let v = Vars::new(&["b"]);
        let u = PowerSeries::<Rational>::from_coeffs(&v, 5, vec![LaurentPoly::zero(&v), LaurentPoly::one(&v)]);
        let e = u.exp().unwrap();
        assert_eq!(e.coeff(4).constant_term(), rat(1, 24));
    }
}
