//! Real radial solutions of the `A_{r−1}`-spin equation `W = x^r`.
//!
//! Near a Ramond point the radial equation is
//! `dũ/dρ = −2r ũ^{r−1} ρ^{2/r−1}` with the closed-form family
//! `ũ = (r²(r−2)ρ^{2/r} + C)^{−1/(r−2)}`. On the sphere with the Fubini–Study
//! metric the same equation picks up the factor `(1+ρ²)^{−2/r}` and is solved by
//!
//! ```text
//! ũ₀(ρ) = [2r(r−2)·I(ρ) + u₀^{−(r−2)}]^{−1/(r−2)},
//! I(ρ)  = ∫_0^ρ τ^{2/r−1}(1+τ²)^{−2/r} dτ.
//! ```
//!
//! With `σ = τ^{2/r}` the integrand of `I` becomes the smooth weight
//! `(r/2)(1+σ^r)^{−2/r}`, and the inversion `σ ↦ 1/σ` maps `[1,∞)` back onto
//! `(0,1]` with the same weight. Every integral here is therefore over `[0,1]`
//! with a bounded integrand, and `I(∞) = r∫_0^1 (1+σ^r)^{−2/r} dσ = ½B(1/r,1/r)`.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use thiserror::Error;

use crate::quadrature::{integrate, QuadConfig, QuadratureError};
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RadialError {
    #[error("r = {0} is not supported; the radial family needs r ≥ 3")]
    InvalidR(u32),
    #[error("{name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },
    #[error("ρ must be positive for the singular limit")]
    InvalidRho,
    #[error("fit window [{lo}, {hi}] must satisfy 0 < lo, hi ≤ 1 and hi ≥ 10·lo")]
    WindowTooSmall { lo: f64, hi: f64 },
    #[error("profile has fewer than 5 samples")]
    ProfileTooShort,
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
}

fn check_positive<F: Real>(name: &'static str, v: F) -> Result<(), RadialError> {
    if v > F::zero() && v.is_finite() {
        Ok(())
    } else {
        Err(RadialError::NonPositive { name, value: v.to_f64().unwrap_or(f64::NAN) })
    }
}

/// Which member of the radial family a profile samples.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Family<F> {
    /// Local Ramond model with constant `C > 0`.
    Local { c: F },
    /// Global sphere solution with `ũ₀(0) = u0`.
    Global { u0: F },
    /// The `u0 → ∞` limit.
    SingularLimit,
}

/// `A_{r−1}` radial model with `I(∞)` cached.
#[derive(Debug, Clone)]
pub struct RadialModel<F> {
    r: u32,
    quad: QuadConfig<F>,
    i_inf: F,
}

impl<F: Real> RadialModel<F> {
    pub fn new(r: u32, quad: QuadConfig<F>) -> Result<Self, RadialError> {
        if r < 3 {
            return Err(RadialError::InvalidR(r));
        }
        let mut m = Self { r, quad, i_inf: F::zero() };
        m.i_inf = m.rf() * m.partial(F::one())?;
        Ok(m)
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    fn rf(&self) -> F {
        F::from_u32(self.r).unwrap()
    }

    /// `2r(r−2)`.
    fn coupling(&self) -> F {
        F::lit(2.0) * self.rf() * (self.rf() - F::lit(2.0))
    }

    fn exponent(&self) -> F {
        self.rf() - F::lit(2.0)
    }

    fn weight(&self, sigma: F) -> F {
        (F::one() + sigma.powi(self.r as i32)).powf(-F::lit(2.0) / self.rf())
    }

    /// `∫_0^x (1+σ^r)^{−2/r} dσ` for `0 ≤ x ≤ 1`.
    fn partial(&self, x: F) -> Result<F, QuadratureError> {
        Ok(integrate(|s| self.weight(s), F::zero(), x, &self.quad)?.value)
    }

    /// `I(∞) = ½B(1/r,1/r)`.
    pub fn integral_inf(&self) -> F {
        self.i_inf
    }

    /// `I(ρ)` for `ρ ≥ 0`.
    pub fn integral(&self, rho: F) -> Result<F, RadialError> {
        if rho.is_infinite() {
            return Ok(self.i_inf);
        }
        let half_r = self.rf() / F::lit(2.0);
        let e = F::lit(2.0) / self.rf();
        if rho <= F::one() {
            Ok(half_r * self.partial(rho.powf(e))?)
        } else {
            Ok(self.i_inf - half_r * self.partial(rho.powf(-e))?)
        }
    }

    pub fn local_solution(&self, c: F, rho: F) -> Result<F, RadialError> {
        check_positive("C", c)?;
        let r = self.rf();
        Ok((r * r * (r - F::lit(2.0)) * rho.powf(F::lit(2.0) / r) + c).powf(-F::one() / self.exponent()))
    }

    fn solution_at(&self, i: F, u0: F) -> F {
        (self.coupling() * i + u0.powf(-self.exponent())).powf(-F::one() / self.exponent())
    }

    pub fn global_solution(&self, u0: F, rho: F) -> Result<F, RadialError> {
        check_positive("u0", u0)?;
        Ok(self.solution_at(self.integral(rho)?, u0))
    }

    /// `lim_{ρ→∞} ũ₀(ρ)`.
    pub fn global_at_infinity(&self, u0: F) -> Result<F, RadialError> {
        check_positive("u0", u0)?;
        Ok(self.solution_at(self.i_inf, u0))
    }

    pub fn singular_limit(&self, rho: F) -> Result<F, RadialError> {
        if rho.is_nan() || rho <= F::zero() {
            return Err(RadialError::InvalidRho);
        }
        Ok((self.coupling() * self.integral(rho)?).powf(-F::one() / self.exponent()))
    }

    pub fn evaluate(&self, family: Family<F>, rho: F) -> Result<F, RadialError> {
        match family {
            Family::Local { c } => self.local_solution(c, rho),
            Family::Global { u0 } => self.global_solution(u0, rho),
            Family::SingularLimit => self.singular_limit(rho),
        }
    }

    /// Total residue `R = ũ₁^r(0) + ũ₀^r(0)` of the global solution. Across
    /// the chart change `ũ₁^r = −ũ₀^r`, so `R = u0^r − ũ₀(∞)^r`; evaluated as
    /// `−u0^r·expm1(−(r/(r−2))·ln1p(2r(r−2)I(∞)u0^{r−2}))` to stay accurate for small `u0`.
    pub fn residue_pair(&self, u0: F) -> Result<F, RadialError> {
        check_positive("u0", u0)?;
        let x = self.coupling() * self.i_inf * u0.powf(self.exponent());
        let a = self.rf() / self.exponent();
        Ok(-u0.powi(self.r as i32) * (-a * x.ln_1p()).exp_m1())
    }

    /// `‖∂W/∂u‖²₂` over the sphere for the global solution.
    ///
    /// In the chart `z` the pointwise density is
    /// `|∂W/∂ũ|²·ρ^{2/r−2}(1+ρ²)^{−2/r}` (the metric factors of `dz̄` and the
    /// area form cancel, leaving those of `e = (dz/z)^{1/r}`). After
    /// `σ = ρ^{2/r}` this is `πr³∫_0^∞ (1+σ^r)^{−2/r} ũ^{2r−2} dσ`; the half
    /// `σ > 1` is folded back by `σ ↦ 1/σ`. The inner part is split on a
    /// geometric grid because for large `u0` the integrand peaks at `σ ≈ u0^{−(r−2)}`.
    pub fn energy(&self, u0: F) -> Result<F, RadialError> {
        check_positive("u0", u0)?;
        let r = self.rf();
        let half_r = r / F::lit(2.0);
        let power = 2 * self.r as i32 - 2;
        let piece_cfg = QuadConfig { abs_tol: F::zero(), rel_tol: self.quad.abs_tol.max(F::epsilon() * F::lit(100.0)), ..self.quad };
        let inner = |s: F| -> F {
            let j = self.partial(s).unwrap_or(F::nan());
            self.weight(s) * self.solution_at(half_r * j, u0).powi(power)
        };
        let outer = |v: F| -> F {
            let j = self.partial(v).unwrap_or(F::nan());
            self.weight(v) * self.solution_at(self.i_inf - half_r * j, u0).powi(power)
        };
        let mut total = integrate(outer, F::zero(), F::one(), &piece_cfg)?.value;
        let tenth = F::lit(0.1);
        let floor = F::min_positive_value().sqrt();
        let mut hi = F::one();
        while hi > floor {
            let lo = hi * tenth;
            total = total + integrate(inner, lo, hi, &piece_cfg)?.value;
            hi = lo;
        }
        total = total + integrate(inner, F::zero(), hi, &piece_cfg)?.value;
        Ok(F::PI() * r * r * r * total)
    }

    /// Least-squares slope of `ln|u|` against `ln ρ` for the singular limit,
    /// with `|u| = ũ·ρ^{−1/r}` (Ramond metric factor).
    pub fn blowup_exponent(&self, lo: F, hi: F) -> Result<F, RadialError> {
        if lo.is_nan() || lo <= F::zero() || hi > F::one() || hi < lo * F::lit(10.0) {
            return Err(RadialError::WindowTooSmall {
                lo: lo.to_f64().unwrap_or(f64::NAN),
                hi: hi.to_f64().unwrap_or(f64::NAN),
            });
        }
        let n = 41;
        let grid = log_grid(lo, hi, n);
        let mut pts = Vec::with_capacity(n);
        for &rho in &grid {
            let u = self.singular_limit(rho)? * rho.powf(-F::one() / self.rf());
            pts.push((rho.ln(), u.ln()));
        }
        let nf = F::from_usize(n).unwrap();
        let mx = pts.iter().fold(F::zero(), |s, p| s + p.0) / nf;
        let my = pts.iter().fold(F::zero(), |s, p| s + p.1) / nf;
        let sxy = pts.iter().fold(F::zero(), |s, p| s + (p.0 - mx) * (p.1 - my));
        let sxx = pts.iter().fold(F::zero(), |s, p| s + (p.0 - mx) * (p.0 - mx));
        Ok(sxy / sxx)
    }

    /// `ũ(ε(1−θ)) / ũ(ε)`; the angular ratio is 1 for radial profiles.
    pub fn harnack_ratio(&self, family: Family<F>, theta: F, eps: F) -> Result<F, RadialError> {
        if theta == F::zero() {
            return Ok(F::one());
        }
        Ok(self.evaluate(family, eps * (F::one() - theta))? / self.evaluate(family, eps)?)
    }

    /// Harnack ratios at `ε = 2^{−k}`, `k = 1..=levels`.
    pub fn harnack_sweep(&self, family: Family<F>, theta: F, levels: u32) -> Result<HarnackReport<F>, RadialError> {
        let mut eps = Vec::new();
        let mut ratios = Vec::new();
        for k in 1..=levels {
            let e = F::lit(2.0).powi(-(k as i32));
            eps.push(e);
            ratios.push(self.harnack_ratio(family, theta, e)?);
        }
        let max_ratio = ratios.iter().copied().fold(F::zero(), F::max);
        let n = ratios.len();
        let bounded = max_ratio.is_finite()
            && n >= 2
            && (ratios[n - 1] - ratios[n - 2]).abs() <= F::lit(1e-3) * ratios[n - 1];
        Ok(HarnackReport { eps, ratios, max_ratio, bounded })
    }

    /// Samples `family` on `grid`; global profiles also carry their residue and energy.
    pub fn profile(&self, family: Family<F>, grid: &[F]) -> Result<RadialProfile<F>, RadialError> {
        let samples = grid.iter().map(|&rho| Ok((rho, self.evaluate(family, rho)?))).collect::<Result<Vec<_>, RadialError>>()?;
        let (residue, energy) = match family {
            Family::Global { u0 } => (Some(self.residue_pair(u0)?), Some(self.energy(u0)?)),
            _ => (None, None),
        };
        Ok(RadialProfile { r: self.r, family, samples, residue, energy, quadrature_tolerance: self.quad.abs_tol })
    }

    pub fn identity_check(&self, u0: F) -> Result<IdentityReport<F>, RadialError> {
        let residue = self.residue_pair(u0)?;
        let energy = self.energy(u0)?;
        let target = F::PI() * residue;
        Ok(IdentityReport { r: self.r, u0, residue, energy, rel_err: ((energy - target) / target).abs() })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HarnackReport<F> {
    pub eps: Vec<F>,
    pub ratios: Vec<F>,
    pub max_ratio: F,
    /// The last two ratios agree to 10⁻³, i.e. the sequence has settled.
    pub bounded: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityReport<F> {
    pub r: u32,
    pub u0: F,
    #[serde(rename = "R")]
    pub residue: F,
    #[serde(rename = "E")]
    pub energy: F,
    pub rel_err: F,
}

/// A sampled radial solution `ρ ↦ ũ(ρ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialProfile<F> {
    pub r: u32,
    pub family: Family<F>,
    pub samples: Vec<(F, F)>,
    pub residue: Option<F>,
    pub energy: Option<F>,
    pub quadrature_tolerance: F,
}

impl<F: Real> RadialProfile<F> {
    pub fn from_samples(r: u32, family: Family<F>, samples: Vec<(F, F)>) -> Self {
        Self { r, family, samples, residue: None, energy: None, quadrature_tolerance: F::zero() }
    }

    /// CSV with header `rho,u_tilde,u_norm`, where `u_norm = ũ·ρ^{−1/r}`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("rho,u_tilde,u_norm\n");
        let inv_r = F::one() / F::from_u32(self.r).unwrap();
        for &(rho, u) in &self.samples {
            let _ = writeln!(out, "{},{},{}", rho, u, u * rho.powf(-inv_r));
        }
        out
    }
}

/// `n` points from `lo` to `hi`, equally spaced in `ln ρ`.
pub fn log_grid<F: Real>(lo: F, hi: F, n: usize) -> Vec<F> {
    if n == 1 {
        return vec![lo];
    }
    let (a, b) = (lo.ln(), hi.ln());
    let step = (b - a) / F::from_usize(n - 1).unwrap();
    (0..n)
        .map(|i| match i {
            0 => lo,
            i if i + 1 == n => hi,
            i => (a + step * F::from_usize(i).unwrap()).exp(),
        })
        .collect()
}

/// Derivative at `t[i]` of the Lagrange interpolant through five neighbouring samples.
fn five_point_derivative<F: Real>(t: &[F], y: &[F], i: usize) -> F {
    let n = t.len();
    let start = i.saturating_sub(2).min(n - 5);
    let idx: Vec<usize> = (start..start + 5).collect();
    let x = t[i];
    let mut d = F::zero();
    for &j in &idx {
        // L_j'(x) = Σ_{m≠j} 1/(t_j − t_m) Π_{k≠j,m} (x − t_k)/(t_j − t_k)
        let mut lj = F::zero();
        for &m in &idx {
            if m == j {
                continue;
            }
            let mut prod = F::one() / (t[j] - t[m]);
            for &k in &idx {
                if k != j && k != m {
                    prod = prod * (x - t[k]) / (t[j] - t[k]);
                }
            }
            lj = lj + prod;
        }
        d = d + y[j] * lj;
    }
    d
}

/// `max |dũ/dρ + 2r ũ^{r−1} ρ^{2/r−1} g(ρ)|` over the samples, with the
/// derivative from fourth-order finite differences in `ln ρ`; `g = 1` for the
/// local model and `(1+ρ²)^{−2/r}` otherwise.
pub fn ode_residual<F: Real>(profile: &RadialProfile<F>) -> Result<F, RadialError> {
    if profile.samples.len() < 5 {
        return Err(RadialError::ProfileTooShort);
    }
    let r = F::from_u32(profile.r).unwrap();
    let t: Vec<F> = profile.samples.iter().map(|s| s.0.ln()).collect();
    let y: Vec<F> = profile.samples.iter().map(|s| s.1).collect();
    let two = F::lit(2.0);
    let mut worst = F::zero();
    for (i, &(rho, u)) in profile.samples.iter().enumerate() {
        let du = five_point_derivative(&t, &y, i) / rho;
        let sphere = match profile.family {
            Family::Local { .. } => F::one(),
            _ => (F::one() + rho * rho).powf(-two / r),
        };
        let rhs = two * r * u.powi(profile.r as i32 - 1) * rho.powf(two / r - F::one()) * sphere;
        worst = worst.max((du + rhs).abs());
    }
    Ok(worst)
}

/// `ũ ∈ L^p_1` near a Ramond point iff `p < 2/(1 − 1/r) = 2r/(r−1)`.
pub fn lp1_membership(r: u32, p: &BigRational) -> bool {
    let r = BigInt::from(r);
    let threshold = BigRational::new(BigInt::from(2) * &r, r - 1);
    p < &threshold
}

/// Free-function forms with the default tolerance.
pub fn local_solution(r: u32, c: f64, rho: f64) -> Result<f64, RadialError> {
    if r < 3 {
        return Err(RadialError::InvalidR(r));
    }
    let model = RadialModel { r, quad: QuadConfig::default(), i_inf: f64::NAN };
    model.local_solution(c, rho)
}

pub fn global_solution(r: u32, u0: f64, rho: f64) -> Result<f64, RadialError> {
    RadialModel::new(r, QuadConfig::default())?.global_solution(u0, rho)
}

pub fn singular_limit(r: u32, rho: f64) -> Result<f64, RadialError> {
    RadialModel::new(r, QuadConfig::default())?.singular_limit(rho)
}

pub fn residue_pair(r: u32, u0: f64) -> Result<f64, RadialError> {
    RadialModel::new(r, QuadConfig::default())?.residue_pair(u0)
}

pub fn energy(r: u32, u0: f64) -> Result<f64, RadialError> {
    RadialModel::new(r, QuadConfig::default())?.energy(u0)
}
