#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use wspin::{parse_poly, QHPolynomial};

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn poly(text: &str) -> QHPolynomial {
    parse_poly(text, None).expect("test polynomial parses")
}

/// `x^r`.
pub fn a_type(r: u32) -> QHPolynomial {
    poly(&format!("x^{r}"))
}

/// `x^n + x*y^2`.
pub fn d_type(n: u32) -> QHPolynomial {
    poly(&format!("x^{n}+x*y^2"))
}

pub fn e6() -> QHPolynomial {
    poly("x^3+y^4")
}

pub fn e7() -> QHPolynomial {
    poly("x^3+x*y^3")
}

pub fn e8() -> QHPolynomial {
    poly("x^3+y^5")
}

/// Every ADE superpotential with parameter at most `max`, with its label.
pub fn ade_family(max: u32) -> Vec<(String, QHPolynomial)> {
    let mut out: Vec<(String, QHPolynomial)> = (2..=max).map(|r| (format!("x^{r}"), a_type(r))).collect();
    out.extend((2..=max).map(|n| (format!("x^{n}+x*y^2"), d_type(n))));
    out.push(("E6".into(), e6()));
    out.push(("E7".into(), e7()));
    out.push(("E8".into(), e8()));
    out
}

/// The two-variable members of [`ade_family`].
pub fn ade_two_variable(max: u32) -> Vec<(String, QHPolynomial)> {
    ade_family(max).into_iter().filter(|(_, p)| p.nvars() == 2).collect()
}
