//! Generating functions, free cumulants and transition measures of diagrams.
//!
//! A generating function `G(z) = Σ_{j≥0} M_j z^{-j-1}` is stored as the vector
//! `[M_0, M_1, …]`: the coefficients of `z^{-1}, z^{-2}, …`. For a partition
//! `M_j` is the `j`-th moment of the transition measure.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::diagram::ContinuousDiagram;
use crate::error::{invalid, Result};
use crate::partition::Partition;
use crate::series::{Coeff, Series};
use crate::util::binomial;

/// Default truncation order for free cumulant computations.
pub const DEFAULT_SERIES_ORDER: usize = 12;

/// `∏(1 − y w) / ∏(1 − x w)` expanded to `order` terms: the coefficients of
/// `z^{-1} … z^{-order}` of `G(z) = ∏(z − y_i)/∏(z − x_i)`.
fn product_form<T: Coeff>(minima: &[T], maxima: &[T], order: usize) -> Series<T> {
    let mut num = Series::one(order);
    for y in maxima {
        let mut f = vec![T::zero(); order];
        f[0] = T::one();
        if order > 1 {
            f[1] = -y.clone();
        }
        num = num.mul(&Series::new(f));
    }
    let mut den = Series::one(order);
    for x in minima {
        let mut f = vec![T::zero(); order];
        f[0] = T::one();
        if order > 1 {
            f[1] = -x.clone();
        }
        den = den.mul(&Series::new(f));
    }
    num.mul(&den.inverse().expect("constant term is 1"))
}

fn check_order(order: usize) -> Result<()> {
    if order < 1 {
        return invalid("series order must be at least 1");
    }
    Ok(())
}

/// Exact coefficients of `G_λ` from the rational product form.
pub fn generating_series(p: &Partition, order: usize) -> Result<Vec<BigRational>> {
    check_order(order)?;
    let c = p.interlacing();
    let minima: Vec<BigRational> = c.minima.iter().map(|&x| BigRational::from_i64(x)).collect();
    let maxima: Vec<BigRational> = c.maxima.iter().map(|&y| BigRational::from_i64(y)).collect();
    Ok(product_form(&minima, &maxima, order).into_coeffs())
}

/// Exact coefficients of `G_λ` from `(1/z)·exp(Σ p_k/k · z^{-k})`.
pub fn generating_series_exp_form(p: &Partition, order: usize) -> Result<Vec<BigRational>> {
    check_order(order)?;
    let mut log = vec![BigRational::zero(); order];
    for (k, slot) in log.iter_mut().enumerate().skip(1) {
        *slot = BigRational::new(p.moment_p(k as u32), BigInt::from(k));
    }
    Ok(Series::new(log).exp().expect("zero constant term").into_coeffs())
}

/// Coefficients of `G_Ω(z) = (z − √(z² − 4))/2`: Catalan numbers at even orders.
pub fn lskv_generating_series(order: usize) -> Result<Vec<BigRational>> {
    check_order(order)?;
    Ok((0..order)
        .map(|j| {
            if j % 2 == 1 {
                BigRational::zero()
            } else {
                let m = j / 2;
                let cat = binomial(2 * m, m) / (m + 1);
                BigRational::from_integer(BigInt::from(cat))
            }
        })
        .collect())
}

/// Floating-point coefficients of `G_ω` for a continuous diagram.
pub fn diagram_generating_series(d: &ContinuousDiagram, order: usize) -> Result<Vec<f64>> {
    check_order(order)?;
    match d {
        ContinuousDiagram::PiecewiseLinear(p) => {
            Ok(product_form(p.minima(), p.maxima(), order).into_coeffs())
        }
        ContinuousDiagram::ClosedFormLskv => Ok(lskv_generating_series(order)?
            .iter()
            .map(crate::util::rat_to_f64)
            .collect()),
    }
}

/// Free cumulants `[R_2, …, R_kmax]` from `G` coefficients `[M_0, …]` by Lagrange
/// inversion of `h(w) = w·Σ M_j w^j`.
pub fn free_cumulants_from_series<T: Coeff>(g: &[T], kmax: usize) -> Result<Vec<T>> {
    if kmax < 2 {
        return invalid("kmax must be at least 2");
    }
    if g.len() < kmax + 1 {
        return invalid(format!(
            "series of order {} is too short for free cumulants up to {kmax}",
            g.len()
        ));
    }
    if g[0] != T::one() {
        return invalid("generating function must start with 1/z");
    }
    let a = Series::new(g[..=kmax].to_vec());
    let b = Series::lagrange_inverse_factor(&a).expect("A(0) = 1");
    // h⁻¹(u) = u·B(u) = u / C(u) with C(u) = 1 + Σ R_k u^k
    let c = b.inverse().expect("B(0) = 1");
    Ok((2..=kmax).map(|k| c.coeff(k)).collect())
}

/// Exact free cumulants `R_2..R_kmax` of a partition.
pub fn free_cumulants(p: &Partition, kmax: usize) -> Result<Vec<BigRational>> {
    let g = generating_series(p, kmax.max(2) + 1)?;
    free_cumulants_from_series(&g, kmax)
}

/// Free cumulants of a continuous diagram in floating point.
pub fn diagram_free_cumulants(d: &ContinuousDiagram, kmax: usize) -> Result<Vec<f64>> {
    let g = diagram_generating_series(d, kmax.max(2) + 1)?;
    free_cumulants_from_series(&g, kmax)
}

/// Free cumulants of a probability measure from its moments `[M_0 = 1, M_1, …]`,
/// by the noncrossing-partition recursion on the block containing the first point:
/// `M_n = Σ_{s=1}^{n} κ_s · [z^{n−s}] M(z)^s`.
pub fn free_cumulants_from_moments<T: Coeff>(moments: &[T], kmax: usize) -> Result<Vec<T>> {
    if moments.len() < kmax + 1 {
        return invalid("not enough moments");
    }
    let m = Series::new(moments[..=kmax].to_vec());
    let mut powers = vec![Series::one(kmax + 1)];
    for s in 1..=kmax {
        powers.push(powers[s - 1].mul(&m));
    }
    let mut kappa: Vec<T> = vec![T::zero(); kmax + 1];
    for n in 1..=kmax {
        let mut acc = moments[n].clone();
        for s in 1..n {
            acc = acc - kappa[s].clone() * powers[s].coeff(n - s);
        }
        kappa[n] = acc;
    }
    Ok(kappa)
}

/// Finite atomic probability measure, or the semicircle law.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum TransitionMeasure {
    Atomic(Vec<Atom>),
    Semicircle,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Atom {
    pub location: i64,
    #[serde(serialize_with = "ser_rat")]
    pub weight: BigRational,
}

fn ser_rat<S: serde::Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// Partial fractions of `G_λ`: atoms at the minima `x_i` with weights
/// `∏_j (x_i − y_j) / ∏_{j≠i} (x_i − x_j)`.
pub fn transition_measure(p: &Partition) -> TransitionMeasure {
    let c = p.interlacing();
    let atoms = c
        .minima
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let mut w = BigRational::one();
            for &y in &c.maxima {
                w *= BigRational::from_i64(x - y);
            }
            for (j, &xj) in c.minima.iter().enumerate() {
                if j != i {
                    w /= BigRational::from_i64(x - xj);
                }
            }
            Atom { location: x, weight: w }
        })
        .collect();
    TransitionMeasure::Atomic(atoms)
}

impl TransitionMeasure {
    pub fn semicircle() -> Self {
        TransitionMeasure::Semicircle
    }

    /// Exact moments `M_0..=M_kmax`; the semicircle gives Catalan numbers.
    pub fn moments(&self, kmax: usize) -> Vec<BigRational> {
        match self {
            TransitionMeasure::Atomic(atoms) => (0..=kmax)
                .map(|j| {
                    atoms.iter().fold(BigRational::zero(), |acc, a| {
                        acc + &a.weight * BigRational::from_i64(a.location).pow(j as i32)
                    })
                })
                .collect(),
            TransitionMeasure::Semicircle => {
                lskv_generating_series(kmax + 1).expect("order ≥ 1")
            }
        }
    }

    pub fn total_mass(&self) -> BigRational {
        self.moments(0).remove(0)
    }

    /// Free cumulants `R_2..=R_kmax` through the moment recursion.
    pub fn free_cumulants(&self, kmax: usize) -> Result<Vec<BigRational>> {
        if kmax < 2 {
            return invalid("kmax must be at least 2");
        }
        let k = free_cumulants_from_moments(&self.moments(kmax), kmax)?;
        Ok(k[2..].to_vec())
    }
}
