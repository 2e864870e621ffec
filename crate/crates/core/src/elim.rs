//! Elimination of the gradient system `∂_i W(x) = s_i` and root bounds for the
//! resulting univariate polynomials.
//!
//! For a non-degenerate `W` in at most two variables, [`elimination_poly`]
//! produces `p_i(x_i; s)` that vanishes whenever `∇W(u) = s`, has a constant
//! leading coefficient in `x_i` and is quasi-homogeneous with
//! `wt(x_i) = q_i`, `wt(s_j) = 1 − q_j`. [`gradient_bound`] turns it into a
//! certified radius via a diagonally scaled Geršgorin estimate.

use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::poly::MPoly;
use crate::polyparse::QHPolynomial;
use crate::quasihom::{infer_weights, WeightError};
use crate::scalar::{Coeff, Real};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ElimError {
    #[error("both polynomials are constant in the eliminated variable")]
    BothConstantInVar,
    #[error("exact elimination supports at most two variables, got {0}")]
    UnsupportedArity(usize),
    #[error("variable index {0} out of range")]
    BadVariable(usize),
    #[error("expected {expected} gradient values, got {got}")]
    WrongArity { expected: usize, got: usize },
    #[error(transparent)]
    Weights(#[from] WeightError),
}

/// Determinant by fraction-free (Bareiss) elimination; entries must live in an
/// integral domain where the intermediate divisions are exact.
pub fn bareiss_determinant<C: Coeff>(mut m: Vec<Vec<MPoly<C>>>, vars: &[String]) -> MPoly<C> {
    let n = m.len();
    if n == 0 {
        return MPoly::constant(vars.to_vec(), C::one());
    }
    let mut prev = MPoly::constant(vars.to_vec(), C::one());
    let mut negate = false;
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    negate = !negate;
                }
                None => return MPoly::zero(vars.to_vec()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev).expect("Bareiss step divides exactly");
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Resultant of `f` and `g` with respect to variable `var`, as the
/// determinant of their Sylvester matrix.
///
/// When exactly one argument is constant in `var` the convention
/// `Res(a, g) = a^{deg g}`, `Res(f, b) = b^{deg f}` applies.
pub fn sylvester_resultant<C: Coeff>(f: &MPoly<C>, g: &MPoly<C>, var: usize) -> Result<MPoly<C>, ElimError> {
    if var >= f.nvars() {
        return Err(ElimError::BadVariable(var));
    }
    let m = f.degree_in(var).unwrap_or(0);
    let n = g.degree_in(var).unwrap_or(0);
    match (m, n) {
        (0, 0) => return Err(ElimError::BothConstantInVar),
        (_, 0) => return Ok(g.pow(m)),
        (0, _) => return Ok(f.pow(n)),
        _ => {}
    }
    let (m, n) = (m as usize, n as usize);
    let vars = f.vars().to_vec();
    let zero = MPoly::zero(vars.clone());
    let fc = f.coefficients_in(var);
    let gc = g.coefficients_in(var);
    let size = m + n;
    let mut mat = vec![vec![zero; size]; size];
    for r in 0..n {
        for (k, c) in fc.iter().rev().enumerate() {
            mat[r][r + k] = c.clone();
        }
    }
    for r in 0..m {
        for (k, c) in gc.iter().rev().enumerate() {
            mat[n + r][r + k] = c.clone();
        }
    }
    Ok(bareiss_determinant(mat, &vars))
}

/// `p_i ∈ ℚ[s_1..s_t][x_i]` over the variables `(x_i, s_1, …, s_t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct EliminationPoly {
    pub poly: MPoly<BigRational>,
    /// Index of `x_i` in the source polynomial.
    pub source_var: usize,
}

impl EliminationPoly {
    pub fn degree(&self) -> u32 {
        self.poly.degree_in(0).unwrap_or(0)
    }

    /// `c[k]` is the coefficient of `x_i^k`, a polynomial in the `s_j`
    /// (still written over the full variable list, with `x_i` exponent 0).
    pub fn coefficients(&self) -> Vec<MPoly<BigRational>> {
        self.poly.coefficients_in(0)
    }

    pub fn leading_coefficient(&self) -> MPoly<BigRational> {
        self.coefficients().pop().expect("non-zero polynomial")
    }

    /// Evaluates the coefficients at complex gradient values `s`.
    pub fn coefficients_at(&self, s: &[Complex64]) -> Vec<Complex64> {
        let mut point = vec![Complex64::zero()];
        point.extend_from_slice(s);
        self.coefficients()
            .iter()
            .map(|c| c.eval_with(&point, |q| Complex64::new(q.to_f64().unwrap_or(f64::NAN), 0.0)))
            .collect()
    }

    pub fn text(&self) -> String {
        self.poly.format_in(0)
    }
}

fn gradient_names(vars: &[String]) -> Vec<String> {
    let plain: Vec<String> = (1..=vars.len()).map(|j| format!("s{j}")).collect();
    if plain.iter().any(|s| vars.contains(s)) {
        (1..=vars.len()).map(|j| format!("grad_{j}")).collect()
    } else {
        plain
    }
}

/// Eliminates every variable except `var` from `∂_j W − s_j = 0`.
///
/// The result is scaled by ±1 so that its leading `x_i`-coefficient is positive.
pub fn elimination_poly(p: &QHPolynomial, var: usize) -> Result<EliminationPoly, ElimError> {
    let t = p.nvars();
    if t > 2 {
        return Err(ElimError::UnsupportedArity(t));
    }
    if var >= t {
        return Err(ElimError::BadVariable(var));
    }
    infer_weights(p)?;
    let s_names = gradient_names(p.variables());
    let mut full = p.variables().to_vec();
    full.extend(s_names.iter().cloned());
    let w = p.to_mpoly().embed(&full).expect("superset of variables");
    let f: Vec<MPoly<BigRational>> =
        (0..t).map(|j| &w.derivative(j) - &MPoly::var(full.clone(), t + j)).collect();
    let eliminated = if t == 1 { f[0].clone() } else { sylvester_resultant(&f[0], &f[1], 1 - var)? };
    let mut out_vars = vec![p.variables()[var].clone()];
    out_vars.extend(s_names);
    let keep: Vec<usize> = std::iter::once(var).chain(t..2 * t).collect();
    let poly = MPoly::from_terms(
        out_vars,
        eliminated.terms().map(|(e, c)| (keep.iter().map(|&i| e[i]).collect(), c.clone())),
    );
    let lead = poly.coefficients_in(0).pop().expect("non-zero elimination polynomial");
    let sign_negative = lead.leading_term().is_some_and(|(_, c)| c.is_negative());
    let poly = if sign_negative { -poly } else { poly };
    Ok(EliminationPoly { poly, source_var: var })
}

/// `f(x) = x^N + Σ_{l=1}^N α_l x^{l−1}` with positive scaling weights `ρ_1..ρ_N`.
#[derive(Debug, Clone, PartialEq)]
pub struct RootBoundInput<F> {
    alpha: Vec<Complex<F>>,
    rho: Vec<F>,
}

impl<F: Real> RootBoundInput<F> {
    /// `None` unless both sequences have the same positive length and every `ρ_l > 0`.
    pub fn new(alpha: Vec<Complex<F>>, rho: Vec<F>) -> Option<Self> {
        if alpha.is_empty() || alpha.len() != rho.len() || rho.iter().any(|r| r.is_nan() || *r <= F::zero()) {
            return None;
        }
        Some(Self { alpha, rho })
    }

    pub fn unit(alpha: Vec<Complex<F>>) -> Option<Self> {
        let n = alpha.len();
        Self::new(alpha, vec![F::one(); n])
    }

    pub fn degree(&self) -> usize {
        self.alpha.len()
    }

    pub fn alpha(&self) -> &[Complex<F>] {
        &self.alpha
    }
}

/// Geršgorin radius for `diag(ρ) · companion(f) · diag(ρ)^{-1}`:
/// `D = max(ρ_1|α_1|/ρ_N, max_{l≥2}(ρ_l/ρ_{l−1} + ρ_l|α_l|/ρ_N))`.
/// Every root of `f` satisfies `|z| ≤ D`.
pub fn gershgorin_bound<F: Real>(input: &RootBoundInput<F>) -> F {
    let rho = &input.rho;
    let alpha = &input.alpha;
    let n = rho.len();
    let rn = rho[n - 1];
    let mut d = rho[0] * alpha[0].norm() / rn;
    for l in 1..n {
        d = d.max(rho[l] / rho[l - 1] + rho[l] * alpha[l].norm() / rn);
    }
    d
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VariableBound {
    pub variable: String,
    pub degree: u32,
    /// Certified radius: every `u` with `∇W(u) = s` has `|u_i| ≤ radius`.
    pub radius: f64,
    /// The Geršgorin value before the `p_i = x^N` shortcut.
    pub gershgorin_radius: f64,
    /// `radius / (Σ|s_j| + 1)^{δ_i}`.
    pub constant: f64,
    pub delta: f64,
}

/// Certified bounds on `|u_i|` over the solutions of `∇W(u) = s` (at most two variables).
pub fn gradient_bound(p: &QHPolynomial, s: &[Complex64]) -> Result<Vec<VariableBound>, ElimError> {
    let t = p.nvars();
    if t > 2 {
        return Err(ElimError::UnsupportedArity(t));
    }
    if s.len() != t {
        return Err(ElimError::WrongArity { expected: t, got: s.len() });
    }
    let weights = infer_weights(p)?;
    let scale = s.iter().map(|z| z.norm()).sum::<f64>() + 1.0;
    (0..t)
        .map(|i| {
            let e = elimination_poly(p, i)?;
            let c = e.coefficients_at(s);
            let n = c.len() - 1;
            let lead = c[n];
            let alpha: Vec<Complex64> = c[..n].iter().map(|ck| ck / lead).collect();
            let delta = weights.delta_i[i].to_f64().unwrap_or(f64::NAN);
            let rho: Vec<f64> = (1..=n).map(|l| scale.powf(l as f64 * delta)).collect();
            let all_zero = alpha.iter().all(|a| a.is_zero());
            let input = RootBoundInput::new(alpha, rho).expect("positive weights");
            let gersh = gershgorin_bound(&input);
            // p_i = c·x^N has the single root 0.
            let radius = if all_zero { 0.0 } else { gersh };
            Ok(VariableBound {
                variable: p.variables()[i].clone(),
                degree: n as u32,
                radius,
                gershgorin_radius: gersh,
                constant: radius / scale.powf(delta),
                delta,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GrowthVerdict {
    Stabilized,
    Unbounded,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalConfig {
    pub samples_per_level: usize,
    /// Polydisc radii are `2^k` for `k` in this inclusive range.
    pub min_log2_radius: i32,
    pub max_log2_radius: i32,
    pub seed: u64,
    /// Number of final doublings inspected by the verdict.
    pub window: usize,
    /// Running-sup growth per doubling at or below which a ratio counts as settled.
    pub stable_growth: f64,
    /// Growth per doubling at or above which a ratio counts as diverging.
    pub unbounded_growth: f64,
}

impl Default for EmpiricalConfig {
    fn default() -> Self {
        Self {
            samples_per_level: 4000,
            min_log2_radius: -2,
            max_log2_radius: 14,
            seed: 0,
            window: 4,
            stable_growth: 1.02,
            unbounded_growth: 1.25,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmpiricalBound {
    pub variables: Vec<String>,
    pub radii: Vec<f64>,
    /// `running_sup[level][i]`: sup of `|u_i| / (Σ_j|∂_jW(u)| + 1)^{δ_i}` over all samples up to that level.
    pub running_sup: Vec<Vec<f64>>,
    pub verdicts: Vec<GrowthVerdict>,
    pub verdict: GrowthVerdict,
}

const CHUNK: usize = 512;

/// Samples the gradient-bound ratio over polydiscs of doubling radius.
///
/// Each level also probes the points `R·e_j` on the coordinate axes. The
/// result is a deterministic function of the configuration.
pub fn empirical_bound(p: &QHPolynomial, config: &EmpiricalConfig) -> Result<EmpiricalBound, ElimError> {
    let weights = infer_weights(p)?;
    let t = p.nvars();
    let delta: Vec<f64> = weights.delta_i.iter().map(|d| d.to_f64().unwrap_or(f64::NAN)).collect();
    let grads: Vec<MPoly<Complex64>> = (0..t)
        .map(|j| p.to_mpoly().derivative(j).map_coeffs(|c| Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0)))
        .collect();
    let ratios = |u: &[Complex64]| -> Vec<f64> {
        let gsum: f64 = grads.iter().map(|g| g.eval(u).norm()).sum::<f64>() + 1.0;
        (0..t).map(|i| u[i].norm() / gsum.powf(delta[i])).collect()
    };
    let mut radii = Vec::new();
    let mut running_sup: Vec<Vec<f64>> = Vec::new();
    let mut current = vec![0.0f64; t];
    for (level, k) in (config.min_log2_radius..=config.max_log2_radius).enumerate() {
        let radius = 2f64.powi(k);
        let chunks = config.samples_per_level.div_ceil(CHUNK);
        let level_max = (0..chunks)
            .into_par_iter()
            .map(|chunk| {
                let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
                rng.set_stream(((level as u64) << 32) | chunk as u64);
                let count = CHUNK.min(config.samples_per_level - chunk * CHUNK);
                let mut best = vec![0.0f64; t];
                let mut u = vec![Complex64::zero(); t];
                for _ in 0..count {
                    for z in u.iter_mut() {
                        let r = radius * rng.gen::<f64>().sqrt();
                        let theta = std::f64::consts::TAU * rng.gen::<f64>();
                        *z = Complex64::from_polar(r, theta);
                    }
                    for (b, v) in best.iter_mut().zip(ratios(&u)) {
                        *b = b.max(v);
                    }
                }
                best
            })
            .reduce(|| vec![0.0; t], |a, b| a.iter().zip(&b).map(|(x, y)| x.max(*y)).collect());
        for (c, v) in current.iter_mut().zip(&level_max) {
            *c = c.max(*v);
        }
        for j in 0..t {
            let mut axis = vec![Complex64::zero(); t];
            axis[j] = Complex64::new(radius, 0.0);
            for (c, v) in current.iter_mut().zip(ratios(&axis)) {
                *c = c.max(v);
            }
        }
        radii.push(radius);
        running_sup.push(current.clone());
    }
    let verdicts: Vec<GrowthVerdict> = (0..t)
        .map(|i| {
            let series: Vec<f64> = running_sup.iter().map(|row| row[i]).collect();
            growth_verdict(&series, config)
        })
        .collect();
    let verdict = if verdicts.contains(&GrowthVerdict::Unbounded) {
        GrowthVerdict::Unbounded
    } else if verdicts.iter().all(|v| *v == GrowthVerdict::Stabilized) {
        GrowthVerdict::Stabilized
    } else {
        GrowthVerdict::Inconclusive
    };
    Ok(EmpiricalBound { variables: p.variables().to_vec(), radii, running_sup, verdicts, verdict })
}

fn growth_verdict(series: &[f64], config: &EmpiricalConfig) -> GrowthVerdict {
    if series.len() <= config.window {
        return GrowthVerdict::Inconclusive;
    }
    let tail = &series[series.len() - config.window - 1..];
    let growth: Vec<f64> = tail.windows(2).map(|w| if w[0] > 0.0 { w[1] / w[0] } else { f64::INFINITY }).collect();
    if growth.iter().all(|g| *g >= config.unbounded_growth) {
        GrowthVerdict::Unbounded
    } else if growth.iter().all(|g| *g <= config.stable_growth) {
        GrowthVerdict::Stabilized
    } else {
        GrowthVerdict::Inconclusive
    }
}
