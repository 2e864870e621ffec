//! Univariate helpers: simultaneous complex root finding and rational gcd.

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::scalar::Real;

fn horner<F: Real>(coeffs: &[Complex<F>], z: Complex<F>) -> (Complex<F>, Complex<F>) {
    let mut p = Complex::zero();
    let mut dp = Complex::zero();
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + *c;
    }
    (p, dp)
}

/// All complex roots of `Σ coeffs[k] x^k` (Aberth–Ehrlich iteration).
///
/// Exact zero roots are split off first; leading zero coefficients are ignored.
pub fn polynomial_roots<F: Real>(coeffs: &[Complex<F>]) -> Vec<Complex<F>> {
    let mut hi = coeffs.len();
    while hi > 0 && coeffs[hi - 1].is_zero() {
        hi -= 1;
    }
    let lo = coeffs[..hi].iter().take_while(|c| c.is_zero()).count();
    let mut roots = vec![Complex::zero(); lo];
    let p = &coeffs[lo..hi];
    let n = p.len().saturating_sub(1);
    if n == 0 {
        return roots;
    }
    let lead = p[n];
    let monic: Vec<Complex<F>> = p.iter().map(|c| *c / lead).collect();
    let radius = F::one() + monic[..n].iter().map(|c| c.norm()).fold(F::zero(), F::max);
    let start = radius / F::lit(2.0);
    let mut z: Vec<Complex<F>> = (0..n)
        .map(|k| {
            let theta = F::TAU() * (F::from_usize(k).unwrap() + F::lit(0.25)) / F::from_usize(n).unwrap();
            Complex::from_polar(start, theta)
        })
        .collect();
    let eps = F::epsilon() * F::lit(8.0);
    for _ in 0..1000 {
        let mut moved = F::zero();
        for k in 0..n {
            let (pk, dpk) = horner(&monic, z[k]);
            if pk.is_zero() {
                continue;
            }
            let w = pk / dpk;
            let s: Complex<F> =
                (0..n).filter(|&j| j != k).map(|j| Complex::<F>::one() / (z[k] - z[j])).fold(Complex::zero(), |a, b| a + b);
            let step = w / (Complex::<F>::one() - w * s);
            if step.re.is_finite() && step.im.is_finite() {
                z[k] = z[k] - step;
                moved = moved.max(step.norm() / (F::one() + z[k].norm()));
            }
        }
        if moved <= eps {
            break;
        }
    }
    roots.extend(z);
    roots
}

/// Greatest common divisor of two univariate rational polynomials
/// (ascending coefficients), normalized monic; the empty vector is zero.
pub fn rational_gcd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
        while v.last().is_some_and(Zero::is_zero) {
            v.pop();
        }
        v
    }
    fn rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let mut r = a.to_vec();
        let db = b.len() - 1;
        let lb = b[db].clone();
        while r.len() > db {
            let f = r.last().unwrap().clone() / lb.clone();
            let shift = r.len() - 1 - db;
            for (i, bi) in b.iter().enumerate() {
                r[shift + i] = r[shift + i].clone() - f.clone() * bi.clone();
            }
            r.pop();
            r = trim(r);
        }
        r
    }
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let r = rem(&x, &y);
        x = y;
        y = r;
    }
    if let Some(l) = x.last().cloned() {
        for c in x.iter_mut() {
            *c = c.clone() / l.clone();
        }
        debug_assert!(x.last().unwrap().is_one());
    }
    x
}
