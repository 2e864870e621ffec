//! Combinatorics of W-spin structures on marked orbicurves.
//!
//! A mark `z_l` carries a decoration `h_l ∈ H` given by phases
//! `a_j(h_l) ∈ [0,1)`. Orbifold orders are never stored; they are the lcm of
//! the phase denominators.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::polyparse::{parse_poly, ParseError, QHPolynomial};
use crate::quasihom::{infer_weights, PhaseVector, WeightError, WeightProfile};
use crate::scalar::{rat_int, rat_to_f64, rational_str};

/// Multiplicity of each integer eigenvalue of the cylinder operator `∂̄`:
/// the Fourier mode `e^{inθ}` spans a one-dimensional eigenspace.
pub const SPECTRAL_MULTIPLICITY: u64 = 1;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CurveError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("superpotential has non-unique weights (exponent matrix rank deficient)")]
    RankDeficient,
    #[error(transparent)]
    Weights(WeightError),
    #[error("decoration {phases} at mark {label:?} is not a diagonal symmetry")]
    DecorationNotInGroup { label: String, phases: String },
    #[error("duplicate mark label {0:?}")]
    DuplicateLabel(String),
    #[error("no variable with index {0}")]
    BadVariable(usize),
    #[error("p = {0} must exceed 1")]
    InvalidP(BigRational),
    #[error("p = {p} outside the admissible range ({lo}, {hi})")]
    POutOfRange { p: String, lo: String, hi: String },
    #[error("weights at p = {0} touch the spectrum")]
    NotFredholm(BigRational),
    #[error("weight component {0} is an integer")]
    SpectrumTouched(BigRational),
    #[error("weight vectors are not ordered componentwise or differ in length")]
    NotOrdered,
    #[error("no boundary value supplied for Ramond mark {0:?}")]
    MissingBoundaryValue(String),
    #[error("boundary value at mark {label:?} has {got} components, expected {expected}")]
    BoundaryArity { label: String, got: usize, expected: usize },
}

impl From<WeightError> for CurveError {
    fn from(e: WeightError) -> Self {
        match e {
            WeightError::NonUniqueWeights { .. } | WeightError::RankDeficient => Self::RankDeficient,
            other => Self::Weights(other),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mark {
    pub label: String,
    pub decoration: PhaseVector,
}

/// A genus-`g` curve with decorated marks and its superpotential.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinCurveSpec {
    genus: u32,
    marks: Vec<Mark>,
    superpotential: QHPolynomial,
    weights: WeightProfile,
}

/// On-disk form: `{genus, superpotential, marks: [{label, phases: ["p/q", …]}]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSpecFile {
    pub genus: u32,
    pub superpotential: String,
    pub marks: Vec<MarkFile>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MarkFile {
    pub label: String,
    #[serde(with = "rational_str::vec")]
    pub phases: Vec<BigRational>,
}

impl SpinCurveSpec {
    pub fn new(genus: u32, superpotential: QHPolynomial, marks: Vec<Mark>) -> Result<Self, CurveError> {
        let weights = infer_weights(&superpotential)?;
        let mut seen = HashSet::new();
        for m in &marks {
            if !seen.insert(m.label.as_str()) {
                return Err(CurveError::DuplicateLabel(m.label.clone()));
            }
            let d = &m.decoration;
            if d.len() != superpotential.nvars() || !d.in_unit_box() || !d.fixes(&superpotential) {
                return Err(CurveError::DecorationNotInGroup { label: m.label.clone(), phases: d.to_string() });
            }
        }
        Ok(Self { genus, marks, superpotential, weights })
    }

    pub fn from_file(file: &CurveSpecFile) -> Result<Self, CurveError> {
        let w = parse_poly(&file.superpotential, None)?;
        let marks = file
            .marks
            .iter()
            .map(|m| Mark { label: m.label.clone(), decoration: PhaseVector(m.phases.clone()) })
            .collect();
        Self::new(file.genus, w, marks)
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn marks(&self) -> &[Mark] {
        &self.marks
    }

    pub fn superpotential(&self) -> &QHPolynomial {
        &self.superpotential
    }

    pub fn weights(&self) -> &WeightProfile {
        &self.weights
    }

    fn check_var(&self, j: usize) -> Result<(), CurveError> {
        if j < self.superpotential.nvars() {
            Ok(())
        } else {
            Err(CurveError::BadVariable(j))
        }
    }

    /// `c_{jl} = a_j(h_l) − q_j`.
    pub fn c(&self, j: usize, l: usize) -> BigRational {
        &self.marks[l].decoration.0[j] - &self.weights.q[j]
    }
}

/// Ramond/NS data of a single mark.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MarkRow {
    pub label: String,
    #[serde(with = "rational_str::vec")]
    pub a: Vec<BigRational>,
    #[serde(with = "rational_str::vec")]
    pub c: Vec<BigRational>,
    /// Per variable: `a_j(h_l) = 0`.
    pub ramond: Vec<bool>,
    /// Per monomial, in canonical order.
    pub monomial_ramond: Vec<bool>,
}

impl MarkRow {
    pub fn any_ramond_monomial(&self) -> bool {
        self.monomial_ramond.iter().any(|&b| b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MarkClassification {
    pub marks: Vec<MarkRow>,
}

pub fn classify_marks(spec: &SpinCurveSpec) -> MarkClassification {
    let w = &spec.superpotential;
    let marks = spec
        .marks
        .iter()
        .enumerate()
        .map(|(l, m)| {
            let a = m.decoration.0.clone();
            let ramond: Vec<bool> = a.iter().map(Zero::is_zero).collect();
            let monomial_ramond = w
                .monomials()
                .iter()
                .map(|mono| mono.exponents.iter().zip(&ramond).all(|(&b, &r)| b == 0 || r))
                .collect();
            let c = (0..w.nvars()).map(|j| spec.c(j, l)).collect();
            MarkRow { label: m.label.clone(), a, c, ramond, monomial_ramond }
        })
        .collect();
    MarkClassification { marks }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    #[serde(with = "rational_str::vec")]
    pub deg: Vec<BigRational>,
    pub admissible: bool,
}

/// `deg|L_j| = q_j(2g−2+k) − Σ_l a_j(h_l)`.
///
/// This is the unique solution of `Σ_j b_ij deg_j = 2g−2 − Σ_l Σ_j b_ij c_jl`
/// for all monomials, using `Σ_j b_ij q_j = 1`.
pub fn bundle_degrees(spec: &SpinCurveSpec) -> DegreeReport {
    let k = spec.marks.len() as i64;
    let euler = rat_int(2 * spec.genus as i64 - 2 + k);
    let deg: Vec<BigRational> = spec
        .weights
        .q
        .iter()
        .enumerate()
        .map(|(j, qj)| {
            let phases: BigRational = spec.marks.iter().map(|m| m.decoration.0[j].clone()).sum();
            qj * &euler - phases
        })
        .collect();
    let admissible = deg.iter().all(BigRational::is_integer);
    DegreeReport { deg, admissible }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MarkWeight {
    pub label: String,
    /// `κ_{j,l}(p) = −a_j(h_l) + q_j − 2/p`.
    #[serde(with = "rational_str")]
    pub kappa: BigRational,
    /// `a_j(h_l) − q_j + 2/p ∉ ℤ`.
    pub off_spectrum: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FredholmReport {
    pub variable: usize,
    #[serde(with = "rational_str")]
    pub p: BigRational,
    pub marks: Vec<MarkWeight>,
    /// Open upper bound on `p`: `2/q_j` if some `c_jl < 0`, otherwise none.
    #[serde(serialize_with = "serialize_opt_rational")]
    pub p_sup: Option<BigRational>,
    pub p_in_range: bool,
    pub valid: bool,
}

fn serialize_opt_rational<S: serde::Serializer>(v: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(q) => s.serialize_str(&q.to_string()),
        None => s.serialize_none(),
    }
}

pub fn fredholm_weights(spec: &SpinCurveSpec, j: usize, p: &BigRational) -> Result<FredholmReport, CurveError> {
    spec.check_var(j)?;
    if p <= &BigRational::one() {
        return Err(CurveError::InvalidP(p.clone()));
    }
    let two_over_p = rat_int(2) / p;
    let q = &spec.weights.q[j];
    let marks: Vec<MarkWeight> = spec
        .marks
        .iter()
        .enumerate()
        .map(|(l, m)| {
            let shifted = spec.c(j, l) + &two_over_p;
            MarkWeight { label: m.label.clone(), kappa: -&shifted, off_spectrum: !shifted.is_integer() }
        })
        .collect();
    let p_sup = (0..spec.marks.len()).any(|l| spec.c(j, l).is_negative()).then(|| rat_int(2) / q);
    let p_in_range = p_sup.as_ref().is_none_or(|sup| p < sup);
    let valid = p_in_range && marks.iter().all(|m| m.off_spectrum);
    Ok(FredholmReport { variable: j, p: p.clone(), marks, p_sup, p_in_range, valid })
}

/// `N(κ₁,κ₂) = Σ_ends d·#(ℤ ∩ (κ₁, κ₂))` with `d = SPECTRAL_MULTIPLICITY`.
pub fn index_change(kappa1: &[BigRational], kappa2: &[BigRational]) -> Result<u64, CurveError> {
    if kappa1.len() != kappa2.len() {
        return Err(CurveError::NotOrdered);
    }
    let mut total = BigInt::zero();
    for (a, b) in kappa1.iter().zip(kappa2) {
        for k in [a, b] {
            if k.is_integer() {
                return Err(CurveError::SpectrumTouched(k.clone()));
            }
        }
        if a > b {
            return Err(CurveError::NotOrdered);
        }
        total += b.floor().to_integer() - a.floor().to_integer();
    }
    let n: u64 = total.try_into().expect("count is non-negative and small");
    Ok(n * SPECTRAL_MULTIPLICITY)
}

/// `#{l : c_jl < 0}`, valid for `2 < p < 2/(1−δ̄_j)` with `δ̄_j = min_{c_jl>0} c_jl`
/// and Fredholm weights at `p`.
pub fn index_shift(spec: &SpinCurveSpec, j: usize, p: &BigRational) -> Result<u64, CurveError> {
    spec.check_var(j)?;
    let two = rat_int(2);
    let delta_bar = (0..spec.marks.len()).map(|l| spec.c(j, l)).filter(Signed::is_positive).min();
    let hi = delta_bar.as_ref().map(|d| &two / (BigRational::one() - d));
    let above = p > &two;
    let below = hi.as_ref().is_none_or(|h| p < h);
    if !(above && below) {
        return Err(CurveError::POutOfRange {
            p: p.to_string(),
            lo: two.to_string(),
            hi: hi.map_or_else(|| "inf".to_string(), |h| h.to_string()),
        });
    }
    if !fredholm_weights(spec, j, p)?.valid {
        return Err(CurveError::NotFredholm(p.clone()));
    }
    Ok((0..spec.marks.len()).filter(|&l| spec.c(j, l).is_negative()).count() as u64)
}

/// `R = Σ_{l Ramond} Σ_{W_i Ramond at l} W_i(ũ(z_l))`.
///
/// `boundary_values` is keyed by mark label; only marks where some monomial is
/// Ramond are read.
pub fn residue_sum(spec: &SpinCurveSpec, boundary_values: &HashMap<String, Vec<Complex64>>) -> Result<Complex64, CurveError> {
    let classes = classify_marks(spec);
    let monos = spec.superpotential.monomials();
    let t = spec.superpotential.nvars();
    let mut total = Complex64::new(0.0, 0.0);
    for row in classes.marks.iter().filter(|r| r.any_ramond_monomial()) {
        let u = boundary_values.get(&row.label).ok_or_else(|| CurveError::MissingBoundaryValue(row.label.clone()))?;
        if u.len() != t {
            return Err(CurveError::BoundaryArity { label: row.label.clone(), got: u.len(), expected: t });
        }
        for (mono, _) in monos.iter().zip(&row.monomial_ramond).filter(|(_, &r)| r) {
            let value = mono
                .exponents
                .iter()
                .zip(u)
                .fold(Complex64::new(rat_to_f64(&mono.coeff), 0.0), |acc, (&b, z)| acc * z.powu(b));
            total += value;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn spec(w: &str, genus: u32, phases: &[&[(i64, i64)]]) -> Result<SpinCurveSpec, CurveError> {
        let p = parse_poly(w, None).unwrap();
        let marks = phases
            .iter()
            .enumerate()
            .map(|(l, ph)| Mark {
                label: format!("z{l}"),
                decoration: PhaseVector(ph.iter().map(|&(n, d)| rat(n, d)).collect()),
            })
            .collect();
        SpinCurveSpec::new(genus, p, marks)
    }

    #[test]
    fn classification_examples() {
        let s = spec("x^3", 0, &[&[(0, 1)], &[(1, 3)]]).unwrap();
        let c = classify_marks(&s);
        assert!(c.marks[0].ramond[0]);
        assert_eq!(c.marks[0].c[0], rat(-1, 3));
        assert!(!c.marks[1].ramond[0]);
        assert_eq!(c.marks[1].c[0], rat(0, 1));

        let d4 = spec("x^3+x*y^2", 0, &[&[(0, 1), (1, 2)]]).unwrap();
        let row = &classify_marks(&d4).marks[0];
        assert_eq!(row.ramond, vec![true, false]);
        // canonical order: x^3, x*y^2
        assert_eq!(row.monomial_ramond, vec![true, false]);
    }

    #[test]
    fn rejects_bad_decorations() {
        assert!(matches!(spec("x^3", 0, &[&[(1, 2)]]), Err(CurveError::DecorationNotInGroup { .. })));
        assert!(matches!(spec("x^3", 0, &[&[(1, 1)]]), Err(CurveError::DecorationNotInGroup { .. })));
        let p = parse_poly("x^3", None).unwrap();
        let m = Mark { label: "a".into(), decoration: PhaseVector(vec![rat(1, 3)]) };
        assert_eq!(SpinCurveSpec::new(0, p, vec![m.clone(), m]), Err(CurveError::DuplicateLabel("a".into())));
        let deg = parse_poly("x^2*y^2", None).unwrap();
        assert_eq!(SpinCurveSpec::new(0, deg, vec![]), Err(CurveError::RankDeficient));
    }

    #[test]
    fn degree_examples() {
        let s = spec("x^3", 0, &[&[(1, 3)], &[(1, 3)], &[(2, 3)]]).unwrap();
        assert_eq!(bundle_degrees(&s), DegreeReport { deg: vec![rat(-1, 1)], admissible: true });
        let s = spec("x^3", 0, &[&[(1, 3)], &[(1, 3)], &[(1, 3)]]).unwrap();
        assert_eq!(bundle_degrees(&s), DegreeReport { deg: vec![rat(-2, 3)], admissible: false });
        let s = spec("x^3+x*y^3", 1, &[]).unwrap();
        assert_eq!(bundle_degrees(&s).deg, vec![rat(0, 1), rat(0, 1)]);
    }

    #[test]
    fn fredholm_examples() {
        let s = spec("x^3", 0, &[&[(0, 1)]]).unwrap();
        let forbidden: Vec<BigRational> = (11..60)
            .map(|n| rat(n, 10))
            .filter(|p| !fredholm_weights(&s, 0, p).unwrap().marks[0].off_spectrum)
            .collect();
        assert_eq!(forbidden, vec![rat(3, 2)]);
        let r = fredholm_weights(&s, 0, &rat(2, 1)).unwrap();
        assert_eq!(r.p_sup, Some(rat(6, 1)));
        assert!(r.valid);
        assert!(!fredholm_weights(&s, 0, &rat(6, 1)).unwrap().valid);

        let ns = spec("x^3", 0, &[&[(2, 3)]]).unwrap();
        let r = fredholm_weights(&ns, 0, &rat(2, 1)).unwrap();
        assert_eq!(r.marks[0].kappa, rat(-4, 3));
        assert!(r.valid);
        assert_eq!(r.p_sup, None);
        // a−q+2/p = 1 at p = 3
        assert!(!fredholm_weights(&ns, 0, &rat(3, 1)).unwrap().valid);
        assert_eq!(fredholm_weights(&ns, 0, &rat(1, 1)), Err(CurveError::InvalidP(rat(1, 1))));
    }

    #[test]
    fn index_change_examples() {
        assert_eq!(index_change(&[rat(-1, 2)], &[rat(3, 2)]), Ok(2));
        assert_eq!(index_change(&[rat(1, 5)], &[rat(4, 5)]), Ok(0));
        assert_eq!(index_change(&[rat(-1, 2), rat(-1, 2)], &[rat(1, 2), rat(3, 2)]), Ok(3));
        assert_eq!(index_change(&[rat(1, 1)], &[rat(3, 2)]), Err(CurveError::SpectrumTouched(rat(1, 1))));
        assert_eq!(index_change(&[rat(3, 2)], &[rat(1, 2)]), Err(CurveError::NotOrdered));
    }

    #[test]
    fn index_shift_examples() {
        let s = spec("x^3", 0, &[&[(0, 1)], &[(1, 3)], &[(2, 3)]]).unwrap();
        // δ̄ = 1/3 so 2 < p < 3; the a = 1/3 mark touches the spectrum only at p = 2
        assert_eq!(index_shift(&s, 0, &rat(5, 2)), Ok(1));
        assert!(matches!(index_shift(&s, 0, &rat(3, 1)), Err(CurveError::POutOfRange { .. })));
        let ns = spec("x^3", 0, &[&[(2, 3)], &[(2, 3)]]).unwrap();
        assert_eq!(index_shift(&ns, 0, &rat(5, 2)), Ok(0));
        let d4 = spec("x^3+x*y^2", 0, &[&[(0, 1), (1, 2)], &[(0, 1), (1, 2)]]).unwrap();
        assert_eq!(index_shift(&d4, 0, &rat(5, 2)), Ok(2));
    }

    #[test]
    fn residue_examples() {
        let s = spec("x^3", 0, &[&[(0, 1)], &[(0, 1)]]).unwrap();
        let zero: HashMap<_, _> = [("z0".to_string(), vec![Complex64::new(0.0, 0.0)]), ("z1".to_string(), vec![Complex64::new(0.0, 0.0)])].into();
        assert_eq!(residue_sum(&s, &zero).unwrap(), Complex64::new(0.0, 0.0));
        let (u1, u0) = (Complex64::new(0.5, 0.2), Complex64::new(1.1, 0.0));
        let vals: HashMap<_, _> = [("z0".to_string(), vec![u1]), ("z1".to_string(), vec![u0])].into();
        assert!((residue_sum(&s, &vals).unwrap() - (u1.powu(3) + u0.powu(3))).norm() < 1e-15);
        let missing: HashMap<_, _> = [("z0".to_string(), vec![u1])].into();
        assert_eq!(residue_sum(&s, &missing), Err(CurveError::MissingBoundaryValue("z1".into())));

        let d4 = spec("x^3+x*y^2", 0, &[&[(0, 1), (1, 2)]]).unwrap();
        let (wx, wy) = (Complex64::new(0.7, -0.3), Complex64::new(2.0, 1.0));
        let vals: HashMap<_, _> = [("z0".to_string(), vec![wx, wy])].into();
        assert!((residue_sum(&d4, &vals).unwrap() - wx.powu(3)).norm() < 1e-15);
    }

    #[test]
    fn spec_file_round_trip() {
        let json = r#"{"genus":0,"superpotential":"x^3","marks":[{"label":"p","phases":["1/3"]},{"label":"q","phases":["2/3"]}]}"#;
        let file: CurveSpecFile = serde_json::from_str(json).unwrap();
        let s = SpinCurveSpec::from_file(&file).unwrap();
        assert_eq!(s.marks()[1].decoration.0, vec![rat(2, 3)]);
        assert_eq!(serde_json::to_string(&file).unwrap(), json);
    }
}
