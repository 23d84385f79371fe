//! Continuous Young diagrams: rescaled partition profiles and the limit curve Ω.

use std::f64::consts::PI;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{invalid, Result};
use crate::partition::Partition;
use crate::util::binomial;

/// Grid step used by [`sup_distance`].
pub const SUP_GRID_STEP: f64 = 1e-3;

/// The limit shape `Ω(s) = (2/π)(s·arcsin(s/2) + √(4−s²))` on `[-2, 2]`, `|s|` outside.
pub fn lskv_profile(s: f64) -> f64 {
    if s.abs() >= 2.0 {
        return s.abs();
    }
    2.0 / PI * (s * (s / 2.0).asin() + (4.0 - s * s).sqrt())
}

/// `p_k(Ω)`: the central binomial `C(k, k/2)` for even `k`, zero for odd `k`.
pub fn lskv_moment(k: u32) -> u64 {
    if k % 2 == 1 {
        return 0;
    }
    let k = k as usize;
    let b = binomial(k, k / 2);
    u64::try_from(b).expect("central binomial overflows u64")
}

/// Piecewise-linear profile with slopes ±1, determined by its corners.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RescaledProfile {
    minima: Vec<f64>,
    maxima: Vec<f64>,
    /// `(s, ω(s))` at every corner, increasing in `s`.
    vertices: Vec<(f64, f64)>,
}

impl RescaledProfile {
    pub fn from_corners(minima: Vec<f64>, maxima: Vec<f64>) -> Self {
        let mut xs: Vec<f64> = minima.iter().chain(maxima.iter()).copied().collect();
        xs.sort_by(|a, b| a.total_cmp(b));
        let vertices = xs
            .iter()
            .map(|&s| {
                let v = minima.iter().map(|x| (s - x).abs()).sum::<f64>()
                    - maxima.iter().map(|y| (s - y).abs()).sum::<f64>();
                (s, v)
            })
            .collect();
        RescaledProfile { minima, maxima, vertices }
    }

    pub fn minima(&self) -> &[f64] {
        &self.minima
    }

    pub fn maxima(&self) -> &[f64] {
        &self.maxima
    }

    pub fn vertices(&self) -> &[(f64, f64)] {
        &self.vertices
    }

    pub fn eval(&self, s: f64) -> f64 {
        let v = &self.vertices;
        let (first, last) = match (v.first(), v.last()) {
            (Some(f), Some(l)) => (f, l),
            _ => return s.abs(),
        };
        if s <= first.0 || s >= last.0 {
            return s.abs();
        }
        let idx = v.partition_point(|&(x, _)| x <= s);
        let (x0, y0) = v[idx - 1];
        let (x1, y1) = v[idx];
        y0 + (y1 - y0) * (s - x0) / (x1 - x0)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ContinuousDiagram {
    PiecewiseLinear(RescaledProfile),
    ClosedFormLskv,
}

impl ContinuousDiagram {
    pub fn lskv() -> Self {
        ContinuousDiagram::ClosedFormLskv
    }

    /// The unrescaled profile of a partition (`t = 1`).
    pub fn of_partition(p: &Partition) -> Self {
        let c = p.interlacing();
        ContinuousDiagram::PiecewiseLinear(RescaledProfile::from_corners(
            c.minima.iter().map(|&x| x as f64).collect(),
            c.maxima.iter().map(|&y| y as f64).collect(),
        ))
    }

    pub fn eval(&self, s: f64) -> f64 {
        match self {
            ContinuousDiagram::PiecewiseLinear(p) => p.eval(s),
            ContinuousDiagram::ClosedFormLskv => lskv_profile(s),
        }
    }

    /// Support of `ω(s) − |s|` (the corner range for a profile).
    pub fn support(&self) -> (f64, f64) {
        match self {
            ContinuousDiagram::PiecewiseLinear(p) => match (p.vertices.first(), p.vertices.last()) {
                (Some(a), Some(b)) => (a.0, b.0),
                _ => (0.0, 0.0),
            },
            ContinuousDiagram::ClosedFormLskv => (-2.0, 2.0),
        }
    }

    /// Breakpoints where the profile is not smooth.
    pub fn breakpoints(&self) -> Vec<f64> {
        match self {
            ContinuousDiagram::PiecewiseLinear(p) => p.vertices.iter().map(|v| v.0).collect(),
            ContinuousDiagram::ClosedFormLskv => vec![-2.0, 2.0],
        }
    }

    /// `𝒜(ω) = ∫ (ω(s) − |s|) ds`.
    pub fn area(&self) -> f64 {
        match self {
            ContinuousDiagram::PiecewiseLinear(p) => {
                let v = &p.vertices;
                if v.len() < 2 {
                    return 0.0;
                }
                let trapezoids: f64 =
                    v.windows(2).map(|w| 0.5 * (w[0].1 + w[1].1) * (w[1].0 - w[0].0)).sum();
                let (a, b) = (v[0].0, v[v.len() - 1].0);
                trapezoids - abs_integral(a, b)
            }
            ContinuousDiagram::ClosedFormLskv => 2.0,
        }
    }

    /// Interlacing moment `p_k(ω) = ∫ σ''(s) s^k ds` as a double.
    pub fn moment(&self, k: u32) -> f64 {
        match self {
            ContinuousDiagram::PiecewiseLinear(p) => {
                let k = k as i32;
                p.minima.iter().map(|x| x.powi(k)).sum::<f64>()
                    - p.maxima.iter().map(|y| y.powi(k)).sum::<f64>()
            }
            ContinuousDiagram::ClosedFormLskv => lskv_moment(k) as f64,
        }
    }
}

fn abs_integral(a: f64, b: f64) -> f64 {
    let prim = |s: f64| 0.5 * s * s.abs();
    prim(b) - prim(a)
}

/// `ω^t(s) = ω(√t·s)/√t` for the profile of `p`; corners move to `x/√t`.
pub fn rescale(p: &Partition, t: f64) -> Result<ContinuousDiagram> {
    if !(t > 0.0 && t.is_finite()) {
        return invalid(format!("rescaling parameter must be positive, got {t}"));
    }
    let r = t.sqrt();
    let c = p.interlacing();
    Ok(ContinuousDiagram::PiecewiseLinear(RescaledProfile::from_corners(
        c.minima.iter().map(|&x| x as f64 / r).collect(),
        c.maxima.iter().map(|&y| y as f64 / r).collect(),
    )))
}

/// `λ* = λ^n`, the area-2 rescaling of a partition of size `n ≥ 1`.
pub fn rescale_to_unit(p: &Partition) -> Result<ContinuousDiagram> {
    rescale(p, p.size() as f64)
}

/// A number `rational · √radicand`, used for exact moments of rescaled diagrams.
#[derive(Clone, Debug, PartialEq)]
pub struct SurdValue {
    pub rational: BigRational,
    pub radicand: BigRational,
}

impl SurdValue {
    fn normalize(mut self) -> Self {
        if let Some(root) = rational_sqrt(&self.radicand) {
            self.rational *= root;
            self.radicand = BigRational::one();
        }
        if self.rational.is_zero() {
            self.radicand = BigRational::one();
        }
        self
    }

    /// Multiplies by `√x` for a nonnegative rational `x`.
    pub fn mul_sqrt(&self, x: &BigRational) -> SurdValue {
        SurdValue { rational: self.rational.clone(), radicand: &self.radicand * x }.normalize()
    }

    pub fn to_f64(&self) -> f64 {
        crate::util::rat_to_f64(&self.rational) * crate::util::rat_to_f64(&self.radicand).sqrt()
    }
}

fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let (n, d) = (r.numer(), r.denom());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    (&sn * &sn == *n && &sd * &sd == *d).then(|| BigRational::new(sn, sd))
}

/// Exact `p_k(λ^t) = t^{-k/2} p_k(λ)` for a positive rational `t`.
pub fn rescaled_moment_exact(p: &Partition, t: &BigRational, k: u32) -> Result<SurdValue> {
    if !t.is_positive() {
        return invalid("rescaling parameter must be positive");
    }
    let pk = BigRational::from_integer(p.moment_p(k));
    let half = (k / 2) as i32;
    let rational = pk / t.pow(half);
    let radicand = if k % 2 == 1 { t.recip() } else { BigRational::one() };
    Ok(SurdValue { rational, radicand }.normalize())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SupDistance {
    pub value: f64,
    pub grid_step: f64,
    /// Bound on the gap between the grid maximum and the true supremum.
    pub error_bound: f64,
}

/// `‖d − reference‖_∞` on breakpoints plus a uniform grid over the joint support.
pub fn sup_distance(d: &ContinuousDiagram, reference: &ContinuousDiagram) -> SupDistance {
    let (a1, b1) = d.support();
    let (a2, b2) = reference.support();
    let (a, b) = (a1.min(a2), b1.max(b2));
    let mut best = 0.0f64;
    let mut check = |s: f64| {
        let diff = (d.eval(s) - reference.eval(s)).abs();
        if diff > best {
            best = diff;
        }
    };
    for s in d.breakpoints().into_iter().chain(reference.breakpoints()) {
        check(s);
    }
    let steps = ((b - a) / SUP_GRID_STEP).ceil() as usize;
    for i in 0..=steps {
        check((a + i as f64 * SUP_GRID_STEP).min(b));
    }
    SupDistance { value: best, grid_step: SUP_GRID_STEP, error_bound: 2.0 * SUP_GRID_STEP }
}

/// CSV with columns `s,omega_s` sampled on the breakpoints plus a uniform grid.
pub fn profile_csv(d: &ContinuousDiagram, step: f64) -> String {
    let (a, b) = d.support();
    let (a, b) = (a.min(-2.0) - 0.5, b.max(2.0) + 0.5);
    let mut points = d.breakpoints();
    let steps = ((b - a) / step).ceil() as usize;
    points.extend((0..=steps).map(|i| (a + i as f64 * step).min(b)));
    points.sort_by(|x, y| x.total_cmp(y));
    points.dedup();
    let mut out = String::from("s,omega_s\n");
    for s in points {
        out.push_str(&format!("{s},{}\n", d.eval(s)));
    }
    out
}
