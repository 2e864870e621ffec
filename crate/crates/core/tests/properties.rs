mod common;

use std::collections::HashMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Signed;
use proptest::prelude::*;

use common::{ade_family, rat};
use wspin::elim::RootBoundInput;
use wspin::orbicurve::Mark;
use wspin::poly::MPoly;
use wspin::quadrature::QuadConfig;
use wspin::quasihom::euler_check;
use wspin::radial::{log_grid, RadialModel};
use wspin::{
    bundle_degrees, classify_marks, fredholm_weights, gershgorin_bound, index_change, lp1_membership, ode_residual,
    parse_poly, residue_sum, sylvester_resultant, symmetry_group, Family, PhaseVector, QHPolynomial, RadialProfile,
    SpinCurveSpec,
};

fn family() -> Vec<QHPolynomial> {
    ade_family(7).into_iter().map(|(_, p)| p).collect()
}

fn any_rational() -> impl Strategy<Value = BigRational> {
    (-30i64..=30, 1i64..=9).prop_map(|(n, d)| rat(n, d))
}

fn any_polynomial() -> impl Strategy<Value = QHPolynomial> {
    let term = (any_rational(), prop::collection::vec(0u32..5, 3));
    prop::collection::vec(term, 1..6).prop_filter_map("zero polynomial", |terms| {
        let vars = ["x", "y", "z"].map(String::from).to_vec();
        QHPolynomial::new(vars, terms).ok()
    })
}

/// A random spec built on an ADE superpotential with decorations drawn from its group.
fn any_spec() -> impl Strategy<Value = SpinCurveSpec> {
    let n = family().len();
    (0..n, 0u32..=3, prop::collection::vec(any::<prop::sample::Index>(), 0..=5)).prop_map(|(i, genus, picks)| {
        let p = family().swap_remove(i);
        let h = symmetry_group(&p).unwrap();
        let marks = picks
            .iter()
            .enumerate()
            .map(|(l, ix)| Mark { label: format!("z{l}"), decoration: ix.get(&h).clone() })
            .collect();
        SpinCurveSpec::new(genus, p, marks).unwrap()
    })
}

/// Non-integer rational weights.
fn off_spectrum() -> impl Strategy<Value = BigRational> {
    any_rational().prop_filter("integer", |q| !q.is_integer())
}

fn univariate(vars: &[String], coeffs: &[i64]) -> MPoly<BigRational> {
    MPoly::from_terms(
        vars.to_vec(),
        coeffs.iter().enumerate().map(|(k, &c)| (vec![k as u32, 0], BigRational::from_integer(BigInt::from(c)))),
    )
}

fn bivariate(vars: &[String], coeffs: &[(i64, u32, u32)]) -> MPoly<BigRational> {
    MPoly::from_terms(
        vars.to_vec(),
        coeffs.iter().map(|&(c, a, b)| (vec![a, b], BigRational::from_integer(BigInt::from(c)))),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn format_then_parse_is_identity(p in any_polynomial()) {
        let text = p.to_string();
        let back = parse_poly(&text, Some(p.variables())).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn euler_identity_at_random_points(i in 0usize..16, re in prop::collection::vec(-2.0f64..2.0, 4)) {
        let p = family().swap_remove(i % family().len());
        let point: Vec<Complex64> = (0..p.nvars()).map(|j| Complex64::new(re[2 * j], re[2 * j + 1])).collect();
        let residual = euler_check(&p, &point).unwrap();
        prop_assert!(residual.norm() < 1e-9);
    }

    #[test]
    fn degree_identity_holds_exactly(spec in any_spec()) {
        let report = bundle_degrees(&spec);
        let classes = classify_marks(&spec);
        let target = BigRational::from_integer(BigInt::from(2 * spec.genus() as i64 - 2));
        for mono in spec.superpotential().monomials() {
            let b: Vec<BigRational> = mono.exponents.iter().map(|&e| BigRational::from_integer(e.into())).collect();
            let lhs: BigRational = b.iter().zip(&report.deg).map(|(b, d)| b * d).sum();
            let twist: BigRational = classes.marks.iter().flat_map(|row| b.iter().zip(&row.c).map(|(b, c)| b * c)).sum();
            prop_assert_eq!(lhs + twist, target.clone());
        }
        prop_assert_eq!(report.admissible, report.deg.iter().all(|d| d.is_integer()));
    }

    #[test]
    fn monomial_flag_is_conjunction(spec in any_spec()) {
        let classes = classify_marks(&spec);
        for (row, mark) in classes.marks.iter().zip(spec.marks()) {
            for (flag, mono) in row.monomial_ramond.iter().zip(spec.superpotential().monomials()) {
                let mut expect = true;
                for (j, &b) in mono.exponents.iter().enumerate() {
                    if b > 0 && mark.decoration.0[j] != rat(0, 1) {
                        expect = false;
                    }
                }
                prop_assert_eq!(*flag, expect);
            }
        }
    }

    #[test]
    fn index_change_is_additive(
        a in prop::collection::vec(off_spectrum(), 1..4),
        gaps in prop::collection::vec((off_spectrum(), off_spectrum()), 3),
    ) {
        let n = a.len();
        let b: Vec<BigRational> = a.iter().zip(&gaps).map(|(x, g)| x + g.0.abs()).collect();
        let c: Vec<BigRational> = b.iter().zip(&gaps).map(|(x, g)| x + g.1.abs()).collect();
        prop_assume!(b[..n].iter().chain(&c[..n]).all(|q| !q.is_integer()));
        let whole = index_change(&a, &c[..n]).unwrap();
        let split = index_change(&a, &b[..n]).unwrap() + index_change(&b[..n], &c[..n]).unwrap();
        prop_assert_eq!(whole, split);
    }

    #[test]
    fn fredholm_condition_ignores_integer_shifts(spec in any_spec(), num in 11i64..80) {
        let p = rat(num, 10);
        for j in 0..spec.superpotential().nvars() {
            let report = fredholm_weights(&spec, j, &p).unwrap();
            for m in &report.marks {
                // κ and κ − 1 sit on the spectrum together
                let shifted = &m.kappa - rat(1, 1);
                prop_assert_eq!(m.off_spectrum, !shifted.is_integer());
            }
        }
    }

    #[test]
    fn residue_ignores_label_order(values in prop::collection::vec((-1.5f64..1.5, -1.5f64..1.5), 6), k in 1usize..4) {
        let p = common::poly("x^3+x*y^2");
        let ramond = PhaseVector(vec![rat(0, 1), rat(1, 2)]);
        let full = PhaseVector(vec![rat(0, 1), rat(0, 1)]);
        let decorations = [ramond, full.clone(), full];
        let build = |order: &[usize]| {
            let marks = order.iter().map(|&l| Mark { label: format!("z{l}"), decoration: decorations[l].clone() }).collect();
            SpinCurveSpec::new(0, p.clone(), marks).unwrap()
        };
        let forward: Vec<usize> = (0..k).collect();
        let backward: Vec<usize> = forward.iter().rev().copied().collect();
        let mut bv = HashMap::new();
        for l in 0..k {
            bv.insert(format!("z{l}"), vec![Complex64::new(values[2 * l].0, values[2 * l].1), Complex64::new(values[2 * l + 1].0, values[2 * l + 1].1)]);
        }
        let a = residue_sum(&build(&forward), &bv).unwrap();
        let b = residue_sum(&build(&backward), &bv).unwrap();
        prop_assert!((a - b).norm() < 1e-12);
        let single: Complex64 = (0..k).map(|l| residue_sum(&build(&[l]), &bv).unwrap()).sum();
        prop_assert!((a - single).norm() < 1e-12);
    }

    #[test]
    fn gershgorin_contains_aberth_roots(
        alpha in prop::collection::vec((-50.0f64..50.0, -50.0f64..50.0), 1..9),
        rho in prop::collection::vec(0.05f64..20.0, 8),
    ) {
        let alpha: Vec<Complex64> = alpha.into_iter().map(|(a, b)| Complex64::new(a, b)).collect();
        let n = alpha.len();
        let mut coeffs = alpha.clone();
        coeffs.push(Complex64::new(1.0, 0.0));
        let roots = wspin::roots::polynomial_roots(&coeffs);
        let d = gershgorin_bound(&RootBoundInput::new(alpha, rho[..n].to_vec()).unwrap());
        for z in roots {
            prop_assert!(z.norm() <= d * (1.0 + 1e-9));
        }
    }

    #[test]
    fn resultant_is_multiplicative(
        f1 in prop::collection::vec(-5i64..=5, 2..4),
        f2 in prop::collection::vec(-5i64..=5, 2..4),
        g in prop::collection::vec((-5i64..=5, 0u32..3, 0u32..3), 1..5),
    ) {
        let vars = vec!["x".to_string(), "y".to_string()];
        prop_assume!(*f1.last().unwrap() != 0 && *f2.last().unwrap() != 0);
        let f1 = univariate(&vars, &f1);
        let f2 = univariate(&vars, &f2);
        let g = bivariate(&vars, &g);
        prop_assume!(g.degree_in(0).unwrap_or(0) > 0);
        let lhs = sylvester_resultant(&(&f1 * &f2), &g, 0).unwrap();
        let rhs = &sylvester_resultant(&f1, &g, 0).unwrap() * &sylvester_resultant(&f2, &g, 0).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn symmetry_group_closed(i in 0usize..16, a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let p = family().swap_remove(i % family().len());
        let h = symmetry_group(&p).unwrap();
        let (a, b) = (a.get(&h), b.get(&h));
        prop_assert!(h.contains(&a.compose(b)));
        prop_assert!(h.contains(&a.inverse()));
        prop_assert_eq!(a.compose(&a.inverse()), PhaseVector::identity(p.nvars()));
    }

    #[test]
    fn lp1_membership_monotone(r in 3u32..12, n1 in 11i64..200, n2 in 11i64..200) {
        let (lo, hi) = if n1 <= n2 { (rat(n1, 10), rat(n2, 10)) } else { (rat(n2, 10), rat(n1, 10)) };
        if lp1_membership(r, &hi) {
            prop_assert!(lp1_membership(r, &lo));
        }
        let threshold = rat(2 * r as i64, r as i64 - 1);
        prop_assert!(!lp1_membership(r, &threshold));
        prop_assert_eq!(lp1_membership(r, &hi), hi < threshold);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn global_family_is_ordered(r in 3u32..8, u0 in 0.1f64..5.0, bump in 0.01f64..2.0, rho in 1e-4f64..1e3) {
        let m = RadialModel::new(r, QuadConfig::default()).unwrap();
        let lower = m.global_solution(u0, rho).unwrap();
        let upper = m.global_solution(u0 + bump, rho).unwrap();
        prop_assert!(lower < upper);
        prop_assert!(upper < m.singular_limit(rho).unwrap());
        prop_assert!(m.residue_pair(u0).unwrap() < m.residue_pair(u0 + bump).unwrap());
        prop_assert!(m.residue_pair(u0).unwrap() > 0.0);
    }

    #[test]
    fn generated_profiles_solve_the_ode(r in 3u32..8, u0 in 0.1f64..3.0) {
        let m = RadialModel::new(r, QuadConfig::default()).unwrap();
        let grid = log_grid(0.1, 10.0, 2001);
        let prof = m.profile(Family::Global { u0 }, &grid).unwrap();
        prop_assert!(prof.samples.windows(2).all(|w| w[1].1 <= w[0].1 && w[1].1 > 0.0));
        prop_assert!(ode_residual(&prof).unwrap() < 1e-6);
        let sing = m.profile(Family::SingularLimit, &grid).unwrap();
        prop_assert!(ode_residual(&sing).unwrap() < 1e-6);
    }

    #[test]
    fn local_model_is_scale_invariant(r in 3u32..8, c in 0.1f64..10.0, eps in 0.01f64..100.0) {
        let m = RadialModel::new(r, QuadConfig::default()).unwrap();
        let grid = log_grid(0.1, 10.0, 2001);
        let factor = eps.powf(2.0 / (r as f64 * (r as f64 - 2.0)));
        let samples = grid.iter().map(|&rho| (rho, factor * m.local_solution(c, eps * rho).unwrap())).collect();
        let scaled = RadialProfile::from_samples(r, Family::Local { c }, samples);
        prop_assert!(ode_residual(&scaled).unwrap() < 1e-6);
    }
}
