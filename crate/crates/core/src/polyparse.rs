//! Text grammar for quasi-homogeneous polynomials with exact rational coefficients.
//!
//! ```text
//! poly   := ('+'|'-')? term (('+'|'-') term)*
//! term   := coeff ('*'? factor) ('*' factor)* | factor ('*' factor)*  | coeff
//! factor := ident ('^' nat)?
//! coeff  := int | int '/' nat
//! ```
//!
//! Identifiers are an ASCII letter followed by letters, digits or `_`.
//! Juxtaposed letters form one identifier: `xy` is a variable, not `x*y`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::poly::{write_terms, MPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("negative exponent at {pos}")]
    NegativeExponent { pos: usize },
    #[error("unknown variable {name:?} at {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("duplicate variable {0:?} in variable list")]
    DuplicateVariable(String),
    #[error("polynomial is zero")]
    ZeroPolynomial,
}

impl ParseError {
    pub fn position(&self) -> Option<usize> {
        match self {
            Self::Syntax { pos, .. } | Self::NegativeExponent { pos } | Self::UnknownVariable { pos, .. } => {
                Some(*pos)
            }
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub coeff: BigRational,
    pub exponents: Vec<u32>,
}

/// Polynomial `W = Σ c_i Π x_j^{b_ij}` in canonical form: no zero
/// coefficients, no repeated exponent tuples, monomials in lex-descending
/// exponent order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QHPolynomial {
    variables: Vec<String>,
    monomials: Vec<Monomial>,
}

fn canonical_order(a: &[u32], b: &[u32]) -> Ordering {
    b.cmp(a)
}

impl QHPolynomial {
    /// Builds a canonical polynomial from raw terms; repeated exponents are merged.
    pub fn new(variables: Vec<String>, terms: Vec<(BigRational, Vec<u32>)>) -> Result<Self, ParseError> {
        for (i, v) in variables.iter().enumerate() {
            if variables[..i].contains(v) {
                return Err(ParseError::DuplicateVariable(v.clone()));
            }
        }
        let mp = MPoly::from_terms(variables.clone(), terms.into_iter().map(|(c, e)| (e, c)));
        Self::from_mpoly(&mp)
    }

    pub fn from_mpoly(p: &MPoly<BigRational>) -> Result<Self, ParseError> {
        if p.is_zero() {
            return Err(ParseError::ZeroPolynomial);
        }
        let mut monomials: Vec<Monomial> =
            p.terms().map(|(e, c)| Monomial { coeff: c.clone(), exponents: e.clone() }).collect();
        monomials.sort_by(|a, b| canonical_order(&a.exponents, &b.exponents));
        Ok(Self { variables: p.vars().to_vec(), monomials })
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    /// Number of variables `t`.
    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    /// Number of monomials `s`.
    pub fn nmonomials(&self) -> usize {
        self.monomials.len()
    }

    /// The `s × t` exponent matrix; row `i` is the exponent tuple of monomial `i`.
    pub fn exponent_matrix(&self) -> Vec<Vec<u32>> {
        self.monomials.iter().map(|m| m.exponents.clone()).collect()
    }

    pub fn to_mpoly(&self) -> MPoly<BigRational> {
        MPoly::from_terms(
            self.variables.clone(),
            self.monomials.iter().map(|m| (m.exponents.clone(), m.coeff.clone())),
        )
    }
}

impl fmt::Display for QHPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let order: Vec<usize> = (0..self.nvars()).collect();
        let text = write_terms(&self.variables, self.monomials.iter().map(|m| (&m.exponents, &m.coeff)), &order);
        f.write_str(&text)
    }
}

pub fn format_poly(p: &QHPolynomial) -> String {
    p.to_string()
}

/// Parses `text`; variable order is `variables` when given, otherwise order of first appearance.
pub fn parse_poly(text: &str, variables: Option<&[String]>) -> Result<QHPolynomial, ParseError> {
    let mut parser = Parser { src: text.as_bytes(), pos: 0, vars: Vec::new(), fixed: variables.is_some() };
    if let Some(vs) = variables {
        for (i, v) in vs.iter().enumerate() {
            if vs[..i].contains(v) {
                return Err(ParseError::DuplicateVariable(v.clone()));
            }
        }
        parser.vars = vs.to_vec();
    }
    let raw = parser.poly()?;
    let t = parser.vars.len();
    let terms = raw
        .into_iter()
        .map(|(c, factors)| {
            let mut e = vec![0u32; t];
            for (i, k) in factors {
                e[i] += k;
            }
            (e, c)
        })
        .collect::<Vec<_>>();
    QHPolynomial::from_mpoly(&MPoly::from_terms(parser.vars, terms))
}

type RawTerm = (BigRational, Vec<(usize, u32)>);

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: Vec<String>,
    fixed: bool,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax { pos: self.pos, msg: msg.into() })
    }

    fn poly(&mut self) -> Result<Vec<RawTerm>, ParseError> {
        let mut terms = Vec::new();
        let mut sign = BigRational::one();
        match self.peek() {
            Some(b'-') => {
                sign = -sign;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        loop {
            let (c, f) = self.term()?;
            terms.push((c * sign.clone(), f));
            match self.peek() {
                None => return Ok(terms),
                Some(b'+') => {
                    self.pos += 1;
                    sign = BigRational::one();
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = -BigRational::one();
                }
                Some(_) => return self.err("expected '+', '-' or end of input"),
            }
        }
    }

    fn term(&mut self) -> Result<RawTerm, ParseError> {
        let mut factors = Vec::new();
        let coeff = match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let c = self.coeff()?;
                match self.peek() {
                    Some(b'*') => {
                        self.pos += 1;
                        factors.push(self.factor()?);
                    }
                    Some(c) if c.is_ascii_alphabetic() => factors.push(self.factor()?),
                    _ => return Ok((c, factors)),
                }
                c
            }
            Some(c) if c.is_ascii_alphabetic() => {
                factors.push(self.factor()?);
                BigRational::one()
            }
            Some(_) => return self.err("expected coefficient or variable"),
            None => return self.err("unexpected end of input"),
        };
        while self.peek() == Some(b'*') {
            self.pos += 1;
            factors.push(self.factor()?);
        }
        if let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() {
                return self.err("implicit multiplication is not allowed; use '*'");
            }
        }
        Ok((coeff, factors))
    }

    fn digits(&mut self) -> Result<&str, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits"))
    }

    fn coeff(&mut self) -> Result<BigRational, ParseError> {
        let num: BigInt = self.digits()?.parse().expect("digits parse");
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let at = {
                self.skip_ws();
                self.pos
            };
            let den: BigInt = self.digits()?.parse().expect("digits parse");
            if den.is_zero() {
                return Err(ParseError::Syntax { pos: at, msg: "zero denominator".into() });
            }
            return Ok(BigRational::new(num, den));
        }
        Ok(BigRational::from_integer(num))
    }

    fn factor(&mut self) -> Result<(usize, u32), ParseError> {
        self.skip_ws();
        let start = self.pos;
        match self.src.get(self.pos) {
            Some(c) if c.is_ascii_alphabetic() => {}
            _ => return self.err("expected variable"),
        }
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii ident");
        let index = match self.vars.iter().position(|v| v == name) {
            Some(i) => i,
            None if self.fixed => {
                return Err(ParseError::UnknownVariable { name: name.to_string(), pos: start })
            }
            None => {
                self.vars.push(name.to_string());
                self.vars.len() - 1
            }
        };
        let mut exp = 1;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            if self.peek() == Some(b'-') {
                return Err(ParseError::NegativeExponent { pos: self.pos });
            }
            let at = self.pos;
            let d = self.digits()?;
            exp = d.parse().map_err(|_| ParseError::Syntax { pos: at, msg: "exponent too large".into() })?;
        }
        Ok((index, exp))
    }
}
