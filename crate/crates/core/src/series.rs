//! Truncated formal power series over a field-like coefficient type.
//!
//! Used for the generating function `G(z)` written in the variable `w = 1/z`,
//! and for the Lagrange inversion that produces free cumulants.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Coefficient types usable in [`Series`]: exact rationals or doubles.
pub trait Coeff:
    Clone
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_i64(v: i64) -> Self;
}

impl Coeff for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }
}

impl Coeff for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}

/// `coeffs[i]` is the coefficient of `w^i`; terms beyond `len()` are unknown.
#[derive(Clone, Debug, PartialEq)]
pub struct Series<T> {
    coeffs: Vec<T>,
}

impl<T: Coeff> Series<T> {
    pub fn new(coeffs: Vec<T>) -> Self {
        Series { coeffs }
    }

    pub fn one(len: usize) -> Self {
        let mut coeffs = vec![T::zero(); len];
        if len > 0 {
            coeffs[0] = T::one();
        }
        Series { coeffs }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn truncate(mut self, len: usize) -> Self {
        self.coeffs.truncate(len);
        self
    }

    pub fn mul(&self, other: &Series<T>) -> Series<T> {
        let len = self.len().min(other.len());
        let mut out = vec![T::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Series { coeffs: out }
    }

    pub fn scale(&self, c: &T) -> Series<T> {
        Series { coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect() }
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn inverse(&self) -> Option<Series<T>> {
        let a0 = self.coeffs.first()?.clone();
        if a0.is_zero() {
            return None;
        }
        let len = self.len();
        let mut out: Vec<T> = Vec::with_capacity(len);
        out.push(T::one() / a0.clone());
        for n in 1..len {
            let mut acc = T::zero();
            for k in 1..=n {
                acc = acc + self.coeffs[k].clone() * out[n - k].clone();
            }
            out.push(-acc / a0.clone());
        }
        Some(Series { coeffs: out })
    }

    pub fn pow(&self, e: usize) -> Series<T> {
        let mut acc = Series::one(self.len());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `exp(P)` for a series with zero constant term, via `F' = P'F`.
    pub fn exp(&self) -> Option<Series<T>> {
        if !self.coeffs.first()?.is_zero() {
            return None;
        }
        let len = self.len();
        let mut out = vec![T::zero(); len];
        out[0] = T::one();
        for n in 1..len {
            let mut acc = T::zero();
            for k in 1..=n {
                acc = acc + T::from_i64(k as i64) * self.coeffs[k].clone() * out[n - k].clone();
            }
            out[n] = acc / T::from_i64(n as i64);
        }
        Some(Series { coeffs: out })
    }

    /// Given `h(w) = w·A(w)` with `A(0) = 1` (passed as `A`), returns `B` such that the
    /// compositional inverse is `h⁻¹(u) = u·B(u)`, by Lagrange inversion:
    /// `[u^{j+1}] h⁻¹ = 1/(j+1) · [w^j] A(w)^{-(j+1)}`.
    pub fn lagrange_inverse_factor(a: &Series<T>) -> Option<Series<T>> {
        let inv = a.inverse()?;
        let len = a.len();
        let mut out = Vec::with_capacity(len);
        let mut power = Series::one(len);
        for j in 0..len {
            power = power.mul(&inv);
            out.push(power.coeff(j) / T::from_i64(j as i64 + 1));
        }
        Some(Series { coeffs: out })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::util::{rat, rat_frac};

    #[test]
    fn inverse_of_one_minus_w() {
        let s = Series::new(vec![rat(1), rat(-1), rat(0), rat(0)]);
        let inv = s.inverse().unwrap();
        assert_eq!(inv.coeffs(), &[rat(1), rat(1), rat(1), rat(1)]);
    }

    #[test]
    fn exp_of_w() {
        let s = Series::new(vec![rat(0), rat(1), rat(0), rat(0), rat(0)]);
        let e = s.exp().unwrap();
        assert_eq!(e.coeffs(), &[rat(1), rat(1), rat_frac(1, 2), rat_frac(1, 6), rat_frac(1, 24)]);
    }

    #[test]
    fn lagrange_inverts_catalan() {
        // h(w) = w/(1-w) has inverse u/(1+u): B = 1 - u + u² - …
        let a = Series::new(vec![rat(1); 6]);
        let b = Series::lagrange_inverse_factor(&a).unwrap();
        let expect: Vec<_> = (0..6).map(|j| rat(if j % 2 == 0 { 1 } else { -1 })).collect();
        assert_eq!(b.coeffs(), expect.as_slice());
    }
}
