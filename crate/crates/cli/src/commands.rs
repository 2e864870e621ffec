use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use wspin::elim::{ElimError, EmpiricalConfig};
use wspin::orbicurve::{CurveError, CurveSpecFile};
use wspin::polyparse::ParseError;
use wspin::quadrature::QuadConfig;
use wspin::quasihom::WeightError;
use wspin::radial::{log_grid, Family, RadialError, RadialModel, RadialProfile};
use wspin::scalar::parse_rational;
use wspin::{
    bundle_degrees, check_nondegenerate, classify_marks, compactness_ranges, elimination_poly, empirical_bound,
    gradient_bound, index_shift, infer_weights, parse_poly, symmetry_group, QHPolynomial, SpinCurveSpec,
};

use crate::args::{Grid, ProfileArgs, SolveArgs};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Domain(String),
    #[error("{0}")]
    Numeric(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Input(_) => 2,
            Self::Domain(_) => 3,
            Self::Numeric(_) => 4,
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        Self::Input(format!("parse error: {e}"))
    }
}

impl From<WeightError> for CliError {
    fn from(e: WeightError) -> Self {
        Self::Domain(e.to_string())
    }
}

impl From<ElimError> for CliError {
    fn from(e: ElimError) -> Self {
        match e {
            ElimError::BadVariable(_) | ElimError::WrongArity { .. } => Self::Input(e.to_string()),
            _ => Self::Domain(e.to_string()),
        }
    }
}

impl From<RadialError> for CliError {
    fn from(e: RadialError) -> Self {
        match e {
            RadialError::Quadrature(_) => Self::Numeric(e.to_string()),
            _ => Self::Input(e.to_string()),
        }
    }
}

impl From<CurveError> for CliError {
    fn from(e: CurveError) -> Self {
        match e {
            CurveError::Parse(_) | CurveError::DuplicateLabel(_) | CurveError::InvalidP(_) => Self::Input(e.to_string()),
            _ => Self::Domain(e.to_string()),
        }
    }
}

/// A command's result. `failure` is set when the report is still worth
/// printing but the run must exit non-zero.
#[derive(Debug)]
pub struct Report {
    pub json: Value,
    /// Native CSV rendering, when the command has a natural table.
    pub csv: Option<String>,
    /// Profile CSV for `solve`, written to `--out`.
    pub attachment: Option<String>,
    pub failure: Option<CliError>,
}

impl Report {
    fn new(json: Value) -> Self {
        Self { json, csv: None, attachment: None, failure: None }
    }
}

fn to_value(v: &impl Serialize) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn parse(text: &str) -> Result<QHPolynomial, CliError> {
    Ok(parse_poly(text, None)?)
}

pub fn analyze(text: &str, seed: u64) -> Result<Report, CliError> {
    let p = parse(text)?;
    let nondeg = check_nondegenerate(&p, seed)?;
    let weights = match infer_weights(&p) {
        Ok(w) => w,
        Err(e) => {
            let mut report = Report::new(json!({
                "polynomial": p.to_string(),
                "variables": p.variables(),
                "nondegenerate": to_value(&nondeg),
            }));
            report.failure = Some(CliError::Domain(e.to_string()));
            return Ok(report);
        }
    };
    let ranges = compactness_ranges(&p)?;
    let group = symmetry_group(&p)?;
    let w = to_value(&weights);
    let mut report = Report::new(json!({
        "polynomial": p.to_string(),
        "variables": p.variables(),
        "q": w["q"],
        "d": weights.d,
        "k": weights.k,
        "delta": w["delta"],
        "delta_i": w["delta_i"],
        "delta0": w["delta0"],
        "kappa_i": w["kappa"],
        "lp1_sup": ranges.lp1_sup.to_string(),
        "lp_sup": w["lp_range_sup"],
        "group_order": group.len(),
        "nondegenerate": to_value(&nondeg),
    }));
    if nondeg.is_degenerate() {
        report.failure = Some(CliError::Domain(format!("{p} is degenerate")));
    }
    Ok(report)
}

pub fn group(text: &str) -> Result<Report, CliError> {
    let p = parse(text)?;
    let h = symmetry_group(&p)?;
    let mut report = Report::new(json!({
        "polynomial": p.to_string(),
        "variables": p.variables(),
        "order": h.len(),
        "elements": to_value(&h),
    }));
    let mut csv = p.variables().join(",");
    csv.push('\n');
    for a in &h {
        let row: Vec<String> = a.phases().iter().map(ToString::to_string).collect();
        csv.push_str(&row.join(","));
        csv.push('\n');
    }
    report.csv = Some(csv);
    Ok(report)
}

pub fn curve(path: &Path, p_text: &str) -> Result<Report, CliError> {
    let raw = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let file: CurveSpecFile =
        serde_json::from_str(&raw).map_err(|e| CliError::Input(format!("malformed curve spec: {e}")))?;
    let p = parse_rational(p_text).ok_or_else(|| CliError::Input(format!("bad exponent {p_text:?}")))?;
    let spec = SpinCurveSpec::from_file(&file)?;
    let classes = classify_marks(&spec);
    let degrees = bundle_degrees(&spec);
    let w = spec.superpotential();
    let shifts: Vec<Value> = (0..w.nvars())
        .map(|j| match index_shift(&spec, j, &p) {
            Ok(n) => json!({ "variable": w.variables()[j], "shift": n, "reason": null }),
            Err(e) => json!({ "variable": w.variables()[j], "shift": null, "reason": e.to_string() }),
        })
        .collect();
    let degrees_json = to_value(&degrees);
    Ok(Report::new(json!({
        "genus": spec.genus(),
        "superpotential": w.to_string(),
        "variables": w.variables(),
        "q": to_value(&spec.weights())["q"],
        "marks": to_value(&classes.marks),
        "degrees": degrees_json["deg"],
        "admissible": degrees.admissible,
        "p": p.to_string(),
        "index_shift": shifts,
    })))
}

pub fn eliminate(text: &str, var: &str) -> Result<Report, CliError> {
    let p = parse(text)?;
    let index = p
        .variables()
        .iter()
        .position(|v| v == var)
        .ok_or_else(|| CliError::Input(format!("{var:?} is not a variable of {p}")))?;
    let e = elimination_poly(&p, index)?;
    Ok(Report::new(json!({
        "polynomial": p.to_string(),
        "variable": var,
        "gradient_variables": &e.poly.vars()[1..],
        "degree": e.degree(),
        "elimination_polynomial": e.text(),
        "leading_coefficient": e.leading_coefficient().to_string(),
    })))
}

pub fn bound(text: &str, s: &[String], empirical: bool, samples: usize, seed: u64) -> Result<Report, CliError> {
    let p = parse(text)?;
    if empirical {
        let cfg = EmpiricalConfig { samples_per_level: samples, seed, ..EmpiricalConfig::default() };
        let b = empirical_bound(&p, &cfg)?;
        return Ok(Report::new(json!({
            "polynomial": p.to_string(),
            "mode": "empirical",
            "seed": seed,
            "empirical": to_value(&b),
        })));
    }
    let values: Vec<Complex64> = if s.is_empty() {
        vec![Complex64::new(0.0, 0.0); p.nvars()]
    } else {
        s.iter()
            .map(|t| Complex64::from_str(t.trim()).map_err(|_| CliError::Input(format!("bad gradient value {t:?}"))))
            .collect::<Result<_, _>>()?
    };
    let bounds = gradient_bound(&p, &values)?;
    if let Some(b) = bounds.iter().find(|b| !b.radius.is_finite()) {
        return Err(CliError::Numeric(format!("bound for {} is not finite", b.variable)));
    }
    let s_json: Vec<[f64; 2]> = values.iter().map(|z| [z.re, z.im]).collect();
    Ok(Report::new(json!({
        "polynomial": p.to_string(),
        "mode": "certified",
        "s": s_json,
        "bounds": to_value(&bounds),
    })))
}

fn grid_points(g: &Grid) -> Result<Vec<f64>, CliError> {
    if !(g.rho_min > 0.0 && g.rho_max > g.rho_min && g.points >= 2) {
        return Err(CliError::Input("grid needs 0 < rho-min < rho-max and at least 2 points".into()));
    }
    Ok(log_grid(g.rho_min, g.rho_max, g.points))
}

fn model(r: u32) -> Result<RadialModel<f64>, CliError> {
    Ok(RadialModel::new(r, QuadConfig::default())?)
}

fn identity_failure(rel_err: f64, tol: f64) -> Option<CliError> {
    (rel_err.is_nan() || rel_err > tol).then(|| CliError::Numeric(format!("identity relative error {rel_err:e} exceeds {tol:e}")))
}

pub fn solve(args: &SolveArgs, tol: f64) -> Result<Report, CliError> {
    let m = model(args.r)?;
    let grid = grid_points(&args.grid)?;
    let profile = m.profile(Family::Global { u0: args.u0 }, &grid)?;
    let rep = m.identity_check(args.u0)?;
    let mut report = Report::new(to_value(&rep));
    report.attachment = Some(profile.to_csv());
    report.failure = identity_failure(rep.rel_err, tol);
    Ok(report)
}

pub fn identity(r: u32, u0: f64, tol: f64) -> Result<Report, CliError> {
    let rep = model(r)?.identity_check(u0)?;
    let mut report = Report::new(to_value(&rep));
    report.failure = identity_failure(rep.rel_err, tol);
    Ok(report)
}

fn profile_json(p: &RadialProfile<f64>) -> Value {
    let inv_r = 1.0 / p.r as f64;
    let samples: Vec<[f64; 3]> = p.samples.iter().map(|&(rho, u)| [rho, u, u * rho.powf(-inv_r)]).collect();
    let mut obj = BTreeMap::new();
    obj.insert("r", json!(p.r));
    obj.insert("family", to_value(&p.family));
    obj.insert("samples", json!(samples));
    obj.insert("residue", json!(p.residue));
    obj.insert("energy", json!(p.energy));
    obj.insert("quadrature_tolerance", json!(p.quadrature_tolerance));
    to_value(&obj)
}

pub fn profile(args: &ProfileArgs) -> Result<Report, CliError> {
    let m = model(args.r)?;
    let grid = grid_points(&args.grid)?;
    let family = match (args.u0, args.c, args.singular) {
        (Some(u0), None, false) => Family::Global { u0 },
        (None, Some(c), false) => Family::Local { c },
        (None, None, true) => Family::SingularLimit,
        _ => return Err(CliError::Input("choose exactly one of --u0, --c, --singular".into())),
    };
    let p = m.profile(family, &grid)?;
    let mut report = Report::new(profile_json(&p));
    report.csv = Some(p.to_csv());
    Ok(report)
}
