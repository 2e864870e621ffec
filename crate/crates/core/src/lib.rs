//! Algebraic and numerical toolkit for the W-spin equation
//! `∂̄u_i + ∂W/∂u_i‾ = 0` with a quasi-homogeneous superpotential `W`.
//!
//! - [`polyparse`]: text grammar and canonical form for `W`.
//! - [`quasihom`]: weights, growth exponents, symmetry group, non-degeneracy.
//! - [`elim`]: resultants, elimination polynomials and root bounds for the gradient system.
//! - [`orbicurve`]: Ramond/NS classification, bundle degrees and index bookkeeping on marked curves.
//! - [`radial`]: radial `A_{r−1}` solutions, residue and energy.
//!
//! Exact work uses [`Q`] (arbitrary-precision rationals). Numeric code is
//! generic over [`scalar::Real`]; the `*64` aliases fix it to `f64`.

pub mod elim;
pub mod linalg;
pub mod orbicurve;
pub mod poly;
pub mod polyparse;
pub mod quadrature;
pub mod quasihom;
pub mod radial;
pub mod roots;
pub mod scalar;

pub use elim::{elimination_poly, empirical_bound, gershgorin_bound, gradient_bound, sylvester_resultant};
pub use orbicurve::{bundle_degrees, classify_marks, fredholm_weights, index_change, index_shift, residue_sum, SpinCurveSpec};
pub use polyparse::{format_poly, parse_poly, QHPolynomial};
pub use quasihom::{check_nondegenerate, compactness_ranges, growth_exponents, infer_weights, symmetry_group, PhaseVector};
pub use radial::{lp1_membership, ode_residual, Family, RadialProfile};

/// Exact rational scalar.
pub type Q = num_rational::BigRational;
/// Sparse multivariate polynomial over `Q`.
pub type QPoly = poly::MPoly<Q>;
pub type RadialModel64 = radial::RadialModel<f64>;
pub type RadialModel32 = radial::RadialModel<f32>;
pub type RootBoundInput64 = elim::RootBoundInput<f64>;
pub type QuadConfig64 = quadrature::QuadConfig<f64>;
