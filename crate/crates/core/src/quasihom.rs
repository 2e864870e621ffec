//! Weight systems, non-degeneracy, diagonal symmetries and growth exponents
//! of a quasi-homogeneous superpotential.
//!
//! The diagonal symmetry group is computed as the lattice
//! `{a ∈ [0,1)^t : B·a ∈ ℤ^s}` where `B` is the exponent matrix. It is sometimes
//! stated that this group sits inside `μ_{d/k_1} × … × μ_{d/k_t}`; that product
//! is not even defined when some `d/k_j` is not an integer (for
//! `x^n + x*y^2`, `d/k_y = 2n/(n-1)`), so nothing here relies on it.

use std::fmt;

use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::elim::sylvester_resultant;
use crate::linalg::{self, Solution};
use crate::poly::MPoly;
use crate::polyparse::QHPolynomial;
use crate::roots::{polynomial_roots, rational_gcd};
use crate::scalar::{rat, rat_int, rational_str};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeightError {
    #[error("no weight system: B·q = 1 has no solution")]
    NoWeightSystem,
    #[error("weights not unique: exponent matrix has rank {rank} < {nvars}")]
    NonUniqueWeights { rank: usize, nvars: usize },
    #[error("weight of {variable} is {weight}, outside (0,1)")]
    WeightOutOfRange { variable: String, weight: BigRational },
    #[error("exponent matrix is rank deficient")]
    RankDeficient,
}

/// Fractional degrees and every exponent derived from them.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightProfile {
    #[serde(with = "rational_str::vec")]
    pub q: Vec<BigRational>,
    pub d: u64,
    pub k: Vec<u64>,
    #[serde(with = "rational_str")]
    pub delta: BigRational,
    #[serde(with = "rational_str::vec")]
    pub delta_i: Vec<BigRational>,
    #[serde(with = "rational_str")]
    pub delta0: BigRational,
    /// `q/(1-2q)`, present only when `q < 1/2`.
    #[serde(serialize_with = "rational_str::opt_vec::serialize")]
    pub kappa: Vec<Option<BigRational>>,
    #[serde(with = "rational_str")]
    pub lp1_range_sup: BigRational,
    #[serde(with = "rational_str::vec")]
    pub lp_range_sup: Vec<BigRational>,
}

impl WeightProfile {
    fn from_weights(q: Vec<BigRational>) -> Self {
        let d = q.iter().fold(BigInt::one(), |acc, qi| acc.lcm(qi.denom()));
        let k: Vec<u64> = q
            .iter()
            .map(|qi| (qi * BigRational::from_integer(d.clone())).to_integer().to_u64().expect("weight numerator fits u64"))
            .collect();
        let one = BigRational::one();
        let two = rat_int(2);
        let half = rat(1, 2);
        let delta = q.iter().min().cloned().expect("at least one variable");
        let min_co = q.iter().map(|qi| &one - qi).min().expect("at least one variable");
        let delta_i: Vec<BigRational> = q.iter().map(|qi| qi / &min_co).collect();
        let delta0 = delta_i.iter().max().cloned().expect("at least one variable");
        let kappa = q.iter().map(|qi| (qi < &half).then(|| qi / (&one - &two * qi))).collect();
        let lp1_range_sup = &two / (&one - &delta);
        let lp_range_sup = q.iter().map(|qi| &two * (&one - &two * qi) / qi).collect();
        Self {
            q,
            d: d.to_u64().expect("degree fits u64"),
            k,
            delta,
            delta_i,
            delta0,
            kappa,
            lp1_range_sup,
            lp_range_sup,
        }
    }
}

/// Solves `B·q = (1,…,1)` exactly.
pub fn infer_weights(p: &QHPolynomial) -> Result<WeightProfile, WeightError> {
    let b = linalg::from_u32(&p.exponent_matrix());
    let ones = vec![BigRational::one(); p.nmonomials()];
    let q = match linalg::solve(&b, &ones) {
        Solution::Unique(q) => q,
        Solution::Inconsistent => return Err(WeightError::NoWeightSystem),
        Solution::Underdetermined(rank) => return Err(WeightError::NonUniqueWeights { rank, nvars: p.nvars() }),
    };
    for (v, qi) in p.variables().iter().zip(&q) {
        if !qi.is_positive() || qi >= &BigRational::one() {
            return Err(WeightError::WeightOutOfRange { variable: v.clone(), weight: qi.clone() });
        }
    }
    Ok(WeightProfile::from_weights(q))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthExponents {
    #[serde(with = "rational_str::vec")]
    pub delta_i: Vec<BigRational>,
    #[serde(with = "rational_str")]
    pub delta0: BigRational,
    #[serde(serialize_with = "rational_str::opt_vec::serialize")]
    pub kappa: Vec<Option<BigRational>>,
}

pub fn growth_exponents(p: &QHPolynomial) -> Result<GrowthExponents, WeightError> {
    let w = infer_weights(p)?;
    Ok(GrowthExponents { delta_i: w.delta_i, delta0: w.delta0, kappa: w.kappa })
}

/// Integrability ranges; every upper endpoint is open.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompactnessRanges {
    /// `L^p_1` compactness holds for `2 ≤ p < lp1_sup`.
    #[serde(with = "rational_str")]
    pub lp1_sup: BigRational,
    /// Per-variable `L^{p_i}` compactness holds for `1 < p_i < lp_sup[i]`.
    #[serde(with = "rational_str::vec")]
    pub lp_sup: Vec<BigRational>,
    /// All `q_i ≤ 1/2`.
    pub inner_applicable: bool,
    /// All `q_i < 1/2`.
    pub strong_weak_applicable: bool,
}

impl CompactnessRanges {
    pub fn lp1_contains(&self, p: &BigRational) -> bool {
        p >= &rat_int(2) && p < &self.lp1_sup
    }

    pub fn lp_contains(&self, var: usize, p: &BigRational) -> bool {
        p > &BigRational::one() && p < &self.lp_sup[var]
    }
}

pub fn compactness_ranges(p: &QHPolynomial) -> Result<CompactnessRanges, WeightError> {
    let w = infer_weights(p)?;
    let half = rat(1, 2);
    Ok(CompactnessRanges {
        lp1_sup: w.lp1_range_sup,
        lp_sup: w.lp_range_sup,
        inner_applicable: w.q.iter().all(|q| q <= &half),
        strong_weak_applicable: w.q.iter().all(|q| q < &half),
    })
}

/// Symbolic `Σ q_i x_i ∂_i W − W`; identically zero for a weight system of `W`.
pub fn euler_residual_symbolic(p: &QHPolynomial, w: &WeightProfile) -> MPoly<BigRational> {
    let poly = p.to_mpoly();
    let vars = poly.vars().to_vec();
    let mut acc = -&poly;
    for (i, qi) in w.q.iter().enumerate() {
        let xi = MPoly::var(vars.clone(), i);
        acc = &acc + &(&xi * &poly.derivative(i)).scale(qi);
    }
    acc
}

/// Floating-point `Σ q_i x_i ∂_i W(x) − W(x)` at a complex point.
pub fn euler_check(p: &QHPolynomial, point: &[Complex64]) -> Result<Complex64, WeightError> {
    let w = infer_weights(p)?;
    let poly = p.to_mpoly();
    let lift = |c: &BigRational| Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0);
    let mut acc = -poly.eval_with(point, lift);
    for (i, qi) in w.q.iter().enumerate() {
        let di = poly.derivative(i).eval_with(point, lift);
        acc += point[i] * di * qi.to_f64().unwrap_or(f64::NAN);
    }
    Ok(acc)
}

/// A diagonal symmetry `h = diag(e^{2πi a_1}, …, e^{2πi a_t})` stored by its phases in `[0,1)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PhaseVector(#[serde(with = "rational_str::vec")] pub Vec<BigRational>);

fn frac(q: &BigRational) -> BigRational {
    q - q.floor()
}

impl PhaseVector {
    pub fn identity(t: usize) -> Self {
        Self(vec![BigRational::zero(); t])
    }

    pub fn phases(&self) -> &[BigRational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn in_unit_box(&self) -> bool {
        self.0.iter().all(|a| !a.is_negative() && a < &BigRational::one())
    }

    /// Componentwise product of group elements, i.e. phase addition mod 1.
    pub fn compose(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| frac(&(a + b))).collect())
    }

    pub fn inverse(&self) -> Self {
        Self(self.0.iter().map(|a| frac(&-a)).collect())
    }

    /// Whether `h` fixes every monomial, i.e. `B·a ∈ ℤ^s`.
    pub fn fixes(&self, p: &QHPolynomial) -> bool {
        self.0.len() == p.nvars()
            && p.monomials().iter().all(|m| {
                let s: BigRational =
                    m.exponents.iter().zip(&self.0).map(|(&b, a)| a * BigRational::from_integer(b.into())).sum();
                s.is_integer()
            })
    }

    /// Order of `h` in the group: lcm of the phase denominators.
    pub fn order(&self) -> BigInt {
        self.0.iter().fold(BigInt::one(), |acc, a| acc.lcm(a.denom()))
    }
}

impl fmt::Display for PhaseVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Enumerates the diagonal symmetry group, sorted lexicographically.
pub fn symmetry_group(p: &QHPolynomial) -> Result<Vec<PhaseVector>, WeightError> {
    let rows = p.exponent_matrix();
    let t = p.nvars();
    // Greedily pick t independent rows.
    let mut chosen: Vec<usize> = Vec::new();
    for i in 0..rows.len() {
        let mut trial: Vec<Vec<u32>> = chosen.iter().map(|&j| rows[j].clone()).collect();
        trial.push(rows[i].clone());
        if linalg::rank(&linalg::from_u32(&trial)) == trial.len() {
            chosen.push(i);
            if chosen.len() == t {
                break;
            }
        }
    }
    if chosen.len() < t {
        return Err(WeightError::RankDeficient);
    }
    let square: Vec<Vec<u32>> = chosen.iter().map(|&j| rows[j].clone()).collect();
    let inv = linalg::inverse(&linalg::from_u32(&square)).ok_or(WeightError::RankDeficient)?;
    // a ∈ [0,1)^t forces 0 ≤ (B'a)_i < Σ_j b_ij.
    let bounds: Vec<u64> = square.iter().map(|r| r.iter().map(|&b| b as u64).sum()).collect();
    let mut out = Vec::new();
    let mut m = vec![0u64; t];
    'outer: loop {
        let mv: Vec<BigRational> = m.iter().map(|&v| BigRational::from_integer(v.into())).collect();
        let a = PhaseVector(linalg::mat_vec(&inv, &mv));
        if a.in_unit_box() && a.fixes(p) {
            out.push(a);
        }
        for i in 0..t {
            m[i] += 1;
            if m[i] < bounds[i] {
                continue 'outer;
            }
            m[i] = 0;
        }
        break;
    }
    out.sort();
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Proved,
    Refuted,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NondegeneracyReport {
    pub weights_unique: bool,
    pub isolated_singularity: Verdict,
    /// A non-zero common zero of all partial derivatives, when one was found.
    #[serde(serialize_with = "serialize_witness")]
    pub witness: Option<Vec<Complex64>>,
}

fn serialize_witness<S: serde::Serializer>(w: &Option<Vec<Complex64>>, s: S) -> Result<S::Ok, S::Error> {
    match w {
        None => s.serialize_none(),
        Some(v) => {
            let pairs: Vec<[f64; 2]> = v.iter().map(|z| [z.re, z.im]).collect();
            s.serialize_some(&pairs)
        }
    }
}

impl NondegeneracyReport {
    pub fn is_nondegenerate(&self) -> bool {
        self.weights_unique && self.isolated_singularity == Verdict::Proved
    }

    pub fn is_degenerate(&self) -> bool {
        !self.weights_unique || self.isolated_singularity == Verdict::Refuted
    }
}

/// Decides whether `W` is non-degenerate: unique weights and an isolated
/// critical point at the origin.
///
/// One and two variables are decided exactly. With three or more variables a
/// seeded Gauss–Newton search hunts for a non-zero critical point; failing to
/// find one yields `Inconclusive`.
pub fn check_nondegenerate(p: &QHPolynomial, seed: u64) -> Result<NondegeneracyReport, WeightError> {
    match infer_weights(p) {
        Ok(_) => {}
        Err(WeightError::NonUniqueWeights { .. }) => {
            return Ok(NondegeneracyReport {
                weights_unique: false,
                isolated_singularity: Verdict::Inconclusive,
                witness: None,
            })
        }
        Err(e) => return Err(e),
    }
    let poly = p.to_mpoly();
    let grads: Vec<MPoly<BigRational>> = (0..p.nvars()).map(|i| poly.derivative(i)).collect();
    let (verdict, witness) = match p.nvars() {
        // W = c x^d with d ≥ 2: the derivative vanishes only at 0.
        1 => (Verdict::Proved, None),
        2 => two_variable_check(&grads),
        _ => newton_search(&grads, seed),
    };
    Ok(NondegeneracyReport { weights_unique: true, isolated_singularity: verdict, witness })
}

fn is_monomial(r: &MPoly<BigRational>) -> bool {
    r.num_terms() == 1
}

fn two_variable_check(grads: &[MPoly<BigRational>]) -> (Verdict, Option<Vec<Complex64>>) {
    let (f, g) = (&grads[0], &grads[1]);
    let rx = sylvester_resultant(f, g, 1);
    let ry = sylvester_resultant(f, g, 0);
    match (rx, ry) {
        // With s = 0 both resultants are quasi-homogeneous in one variable, so
        // they are zero or a single monomial. A monomial in x vanishes only at
        // x = 0, ruling out common zeros off the y-axis; symmetrically for y.
        (Ok(rx), Ok(ry)) if is_monomial(&rx) && is_monomial(&ry) => (Verdict::Proved, None),
        _ => match two_variable_witness(f, g) {
            Some(w) => (Verdict::Refuted, Some(w)),
            None => (Verdict::Inconclusive, None),
        },
    }
}

fn two_variable_witness(f: &MPoly<BigRational>, g: &MPoly<BigRational>) -> Option<Vec<Complex64>> {
    let zero = BigRational::zero;
    for point in [[zero(), BigRational::one()], [BigRational::one(), zero()]] {
        if f.eval(&point).is_zero() && g.eval(&point).is_zero() {
            return Some(point.iter().map(|c| Complex64::new(c.to_f64().unwrap(), 0.0)).collect());
        }
    }
    // Fix one coordinate to 1 and look for a common root in the other.
    for fixed in [0usize, 1] {
        let free = 1 - fixed;
        let restrict = |h: &MPoly<BigRational>| -> Vec<BigRational> {
            h.coefficients_in(free)
                .iter()
                .map(|c| {
                    let mut pt = vec![zero(), zero()];
                    pt[fixed] = BigRational::one();
                    c.eval(&pt)
                })
                .collect()
        };
        let gcd = rational_gcd(&restrict(f), &restrict(g));
        if gcd.len() >= 2 {
            let coeffs: Vec<Complex64> = gcd.iter().map(|c| Complex64::new(c.to_f64().unwrap(), 0.0)).collect();
            let root = polynomial_roots(&coeffs)[0];
            let mut w = vec![Complex64::new(1.0, 0.0); 2];
            w[free] = root;
            return Some(w);
        }
    }
    None
}

fn newton_search(grads: &[MPoly<BigRational>], seed: u64) -> (Verdict, Option<Vec<Complex64>>) {
    let t = grads.len();
    let to_c = |h: &MPoly<BigRational>| h.map_coeffs(|c| Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0));
    let g: Vec<MPoly<Complex64>> = grads.iter().map(to_c).collect();
    let hess: Vec<Vec<MPoly<Complex64>>> =
        grads.iter().map(|gi| (0..t).map(|j| to_c(&gi.derivative(j))).collect()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut normal = || Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    for _attempt in 0..64 {
        let l: Vec<Complex64> = (0..t).map(|_| normal()).collect();
        let mut x: Vec<Complex64> = (0..t).map(|_| normal()).collect();
        let mut lambda = 1e-3;
        for _ in 0..200 {
            let mut resid: Vec<Complex64> = g.iter().map(|gi| gi.eval(&x)).collect();
            resid.push(l.iter().zip(&x).map(|(a, b)| a * b).sum::<Complex64>() - 1.0);
            let norm = resid.iter().map(|r| r.norm()).fold(0.0, f64::max);
            let xnorm = x.iter().map(|v| v.norm()).fold(0.0, f64::max);
            if !norm.is_finite() || xnorm > 1e8 {
                break;
            }
            if norm < 1e-12 {
                return (Verdict::Refuted, Some(x));
            }
            let jac = DMatrix::from_fn(t + 1, t, |r, c| if r < t { hess[r][c].eval(&x) } else { l[c] });
            let f = DVector::from_vec(resid);
            let jh = jac.adjoint();
            let mut normal_eq = &jh * &jac;
            for d in 0..t {
                normal_eq[(d, d)] += lambda;
            }
            let Some(step) = normal_eq.lu().solve(&(-(&jh * &f))) else { break };
            for (xi, si) in x.iter_mut().zip(step.iter()) {
                *xi += si;
            }
            lambda *= 0.5;
        }
    }
    (Verdict::Inconclusive, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyparse::parse_poly;

    fn qh(s: &str) -> QHPolynomial {
        parse_poly(s, None).unwrap()
    }

    #[test]
    fn weights_of_named_superpotentials() {
        for r in 3..=10 {
            assert_eq!(infer_weights(&qh(&format!("x^{r}"))).unwrap().q, vec![rat(1, r)]);
        }
        assert_eq!(infer_weights(&qh("x^4 + x*y^2")).unwrap().q, vec![rat(1, 4), rat(3, 8)]);
        assert_eq!(infer_weights(&qh("x^3 + x*y^3")).unwrap().q, vec![rat(1, 3), rat(2, 9)]);
        let w = infer_weights(&qh("x^3 + x*y^3")).unwrap();
        assert_eq!((w.d, w.k.clone()), (9, vec![3, 2]));
    }

    #[test]
    fn weight_errors() {
        assert_eq!(infer_weights(&qh("x^2 + x^3")), Err(WeightError::NoWeightSystem));
        assert!(matches!(infer_weights(&qh("x*y")), Err(WeightError::NonUniqueWeights { rank: 1, nvars: 2 })));
        assert!(matches!(infer_weights(&qh("x")), Err(WeightError::WeightOutOfRange { .. })));
        // q_x = 1/2 forces q_y = -1/2
        assert!(matches!(infer_weights(&qh("x^2 + x^3*y")), Err(WeightError::WeightOutOfRange { .. })));
    }

    #[test]
    fn growth_exponents_examples() {
        for r in 3..=9i64 {
            let g = growth_exponents(&qh(&format!("x^{r}"))).unwrap();
            assert_eq!(g.kappa, vec![Some(rat(1, r - 2))]);
        }
        for n in 3..=8i64 {
            let g = growth_exponents(&qh(&format!("x^{n} + x*y^2"))).unwrap();
            assert_eq!(g.kappa, vec![Some(rat(1, n - 2)), Some(rat(n - 1, 2))]);
        }
        let e7 = growth_exponents(&qh("x^3 + x*y^3")).unwrap();
        assert_eq!(e7.kappa, vec![Some(rat_int(1)), Some(rat(2, 5))]);
        assert_eq!(e7.delta_i, vec![rat(1, 2), rat(1, 3)]);
        assert_eq!(e7.delta0, rat(1, 2));
        let a1 = growth_exponents(&qh("x^2")).unwrap();
        assert_eq!(a1.kappa, vec![None]);
    }

    #[test]
    fn compactness_examples() {
        let c = compactness_ranges(&qh("x^5")).unwrap();
        assert_eq!(c.lp_sup, vec![rat_int(6)]);
        let e7 = compactness_ranges(&qh("x^3 + x*y^3")).unwrap();
        assert_eq!(e7.lp_sup, vec![rat_int(2), rat_int(5)]);
        assert!(e7.lp_contains(1, &rat(49, 10)));
        assert!(!e7.lp_contains(1, &rat_int(5)));
        let a1 = compactness_ranges(&qh("x^2")).unwrap();
        assert!(a1.inner_applicable);
        assert!(!a1.strong_weak_applicable);
        // L^p_1: 2 ≤ p < 2/(1-δ); for x^3, δ = 1/3 → sup 3.
        let a2 = compactness_ranges(&qh("x^3")).unwrap();
        assert_eq!(a2.lp1_sup, rat_int(3));
        assert!(a2.lp1_contains(&rat_int(2)));
        assert!(!a2.lp1_contains(&rat_int(3)));
    }

    #[test]
    fn group_examples() {
        let a2 = symmetry_group(&qh("x^3")).unwrap();
        assert_eq!(a2, vec![PhaseVector(vec![rat_int(0)]), PhaseVector(vec![rat(1, 3)]), PhaseVector(vec![rat(2, 3)])]);
        let d4 = symmetry_group(&qh("x^3 + x*y^2")).unwrap();
        let expect: Vec<PhaseVector> = [(0, 1, 0, 1), (0, 1, 1, 2), (1, 3, 1, 3), (1, 3, 5, 6), (2, 3, 1, 6), (2, 3, 2, 3)]
            .iter()
            .map(|&(a, b, c, d)| PhaseVector(vec![rat(a, b), rat(c, d)]))
            .collect();
        assert_eq!(d4, expect);
        assert_eq!(symmetry_group(&qh("x^3 + y^4")).unwrap().len(), 12);
        assert_eq!(symmetry_group(&qh("x^2*y^2")), Err(WeightError::RankDeficient));
    }

    #[test]
    fn nondegeneracy_examples() {
        let d4 = check_nondegenerate(&qh("x^3 + x*y^2"), 0).unwrap();
        assert_eq!(d4.isolated_singularity, Verdict::Proved);
        assert!(d4.is_nondegenerate());
        let bad = check_nondegenerate(&qh("x^2*y^2 + x^4"), 0).unwrap();
        assert_eq!(bad.isolated_singularity, Verdict::Refuted);
        let w = bad.witness.unwrap();
        assert_eq!(w[0], Complex64::new(0.0, 0.0));
        assert!(w[1].norm() > 0.0);
        assert!(check_nondegenerate(&qh("x^2"), 0).unwrap().is_nondegenerate());
        let xy = check_nondegenerate(&qh("x*y"), 0).unwrap();
        assert!(!xy.weights_unique);
    }

    #[test]
    fn two_variable_witness_off_axes() {
        // (x^2 - y^3)^2: the curve x^2 = y^3 is singular.
        let p = qh("x^4 - 2*x^2*y^3 + y^6");
        let r = check_nondegenerate(&p, 0).unwrap();
        assert_eq!(r.isolated_singularity, Verdict::Refuted);
        let w = r.witness.unwrap();
        let poly = p.to_mpoly().map_coeffs(|c| Complex64::new(c.to_f64().unwrap(), 0.0));
        for i in 0..2 {
            assert!(poly.derivative(i).eval(&w).norm() < 1e-9);
        }
    }

    #[test]
    fn three_variable_search() {
        let bad = check_nondegenerate(&qh("x^3 + y^3 + x*y*z"), 7).unwrap();
        assert_eq!(bad.isolated_singularity, Verdict::Refuted);
        let w = bad.witness.unwrap();
        assert!(w[0].norm() < 1e-6 && w[1].norm() < 1e-6 && w[2].norm() > 1e-3);
        let fermat = check_nondegenerate(&qh("x^3 + y^3 + z^3"), 7).unwrap();
        assert_eq!(fermat.isolated_singularity, Verdict::Inconclusive);
    }

    #[test]
    fn euler_relation() {
        let p = qh("x^3 + x*y^2");
        let w = infer_weights(&p).unwrap();
        assert!(euler_residual_symbolic(&p, &w).is_zero());
        let r = euler_check(&qh("x^3"), &[Complex64::new(2.0, 0.0)]).unwrap();
        assert_eq!(r, Complex64::new(0.0, 0.0));
        let r = euler_check(&qh("x^3 + y^4"), &[Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)]).unwrap();
        assert!(r.norm() < 1e-14);
    }
}
