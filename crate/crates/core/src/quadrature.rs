//! Globally adaptive Gauss–Kronrod (7/15) quadrature on finite intervals.

use thiserror::Error;

use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq, Error)]
#[error("quadrature failed: error estimate {estimate:e} above tolerance {tolerance:e} after {intervals} intervals")]
pub struct QuadratureError {
    pub estimate: f64,
    pub tolerance: f64,
    pub intervals: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig<F> {
    pub abs_tol: F,
    pub rel_tol: F,
    pub max_intervals: usize,
}

impl<F: Real> QuadConfig<F> {
    pub fn with_tol(abs_tol: F) -> Self {
        Self { abs_tol, rel_tol: F::epsilon() * F::lit(50.0), max_intervals: 2000 }
    }
}

impl Default for QuadConfig<f64> {
    fn default() -> Self {
        Self::with_tol(1e-10)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quad<F> {
    pub value: F,
    pub error: F,
    pub intervals: usize,
}

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
// Gauss weights for the odd Kronrod nodes (indices 1, 3, 5, 7).
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

fn kronrod<F: Real>(f: &impl Fn(F) -> F, a: F, b: F) -> (F, F) {
    let half = (b - a) / F::lit(2.0);
    let mid = (a + b) / F::lit(2.0);
    let fc = f(mid);
    let mut k = fc * F::lit(WGK[7]);
    let mut g = fc * F::lit(WG[3]);
    for j in 0..7 {
        let dx = half * F::lit(XGK[j]);
        let s = f(mid - dx) + f(mid + dx);
        k = k + s * F::lit(WGK[j]);
        if j % 2 == 1 {
            g = g + s * F::lit(WG[j / 2]);
        }
    }
    (k * half, ((k - g) * half).abs())
}

/// `∫_a^b f`, bisecting the interval with the largest error estimate until
/// the total estimate is below `max(abs_tol, rel_tol·|I|)`.
pub fn integrate<F: Real>(f: impl Fn(F) -> F, a: F, b: F, cfg: &QuadConfig<F>) -> Result<Quad<F>, QuadratureError> {
    if a == b {
        return Ok(Quad { value: F::zero(), error: F::zero(), intervals: 0 });
    }
    let (v, e) = kronrod(&f, a, b);
    let mut pieces = vec![(a, b, v, e)];
    loop {
        let total: F = pieces.iter().fold(F::zero(), |s, p| s + p.2);
        let err: F = pieces.iter().fold(F::zero(), |s, p| s + p.3);
        let target = cfg.abs_tol.max(cfg.rel_tol * total.abs());
        if err <= target {
            return Ok(Quad { value: total, error: err, intervals: pieces.len() });
        }
        if pieces.len() >= cfg.max_intervals || !err.is_finite() {
            return Err(QuadratureError {
                estimate: err.to_f64().unwrap_or(f64::NAN),
                tolerance: target.to_f64().unwrap_or(f64::NAN),
                intervals: pieces.len(),
            });
        }
        let worst = (0..pieces.len())
            .max_by(|&i, &j| pieces[i].3.partial_cmp(&pieces[j].3).unwrap_or(std::cmp::Ordering::Equal))
            .expect("non-empty");
        let (lo, hi, _, _) = pieces.swap_remove(worst);
        let mid = (lo + hi) / F::lit(2.0);
        if !(mid > lo && mid < hi) {
            return Err(QuadratureError {
                estimate: err.to_f64().unwrap_or(f64::NAN),
                tolerance: target.to_f64().unwrap_or(f64::NAN),
                intervals: pieces.len(),
            });
        }
        let (v1, e1) = kronrod(&f, lo, mid);
        let (v2, e2) = kronrod(&f, mid, hi);
        pieces.push((lo, mid, v1, e1));
        pieces.push((mid, hi, v2, e2));
    }
}
