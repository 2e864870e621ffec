//! Sparse multivariate polynomials over a generic coefficient ring.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::scalar::Coeff;

/// Exponent tuple, one entry per variable.
pub type Exponents = Vec<u32>;

/// A polynomial stored as a map from exponent tuple to non-zero coefficient.
///
/// The map's natural order is lexicographic ascending, so the lex-leading
/// term is the last entry.
#[derive(Clone, Debug, PartialEq)]
pub struct MPoly<C> {
    vars: Vec<String>,
    terms: BTreeMap<Exponents, C>,
}

impl<C: Coeff> MPoly<C> {
    pub fn zero(vars: Vec<String>) -> Self {
        Self { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: Vec<String>, c: C) -> Self {
        let n = vars.len();
        Self::from_terms(vars, [(vec![0; n], c)])
    }

    pub fn var(vars: Vec<String>, index: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[index] = 1;
        Self::from_terms(vars, [(e, C::one())])
    }

    /// Builds a polynomial, merging repeated exponents and dropping zeros.
    pub fn from_terms(vars: Vec<String>, terms: impl IntoIterator<Item = (Exponents, C)>) -> Self {
        let mut map: BTreeMap<Exponents, C> = BTreeMap::new();
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent arity mismatch");
            match map.remove(&e) {
                Some(prev) => {
                    let sum = prev + c;
                    if !sum.is_zero() {
                        map.insert(e, sum);
                    }
                }
                None if !c.is_zero() => {
                    map.insert(e, c);
                }
                None => {}
            }
        }
        Self { vars, terms: map }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponents, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&k| k == 0))
    }

    /// Coefficient of the given exponent tuple (zero when absent).
    pub fn coeff(&self, e: &[u32]) -> C {
        self.terms.get(e).cloned().unwrap_or_else(C::zero)
    }

    /// Lex-leading term.
    pub fn leading_term(&self) -> Option<(&Exponents, &C)> {
        self.terms.iter().next_back()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[var]).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_terms(self.vars.clone(), self.terms.iter().map(|(e, a)| (e.clone(), a.clone() * c.clone())))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::constant(self.vars.clone(), C::one());
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> Self {
        let terms = self.terms.iter().filter(|(e, _)| e[var] > 0).map(|(e, c)| {
            let mut e2 = e.clone();
            let k = e2[var];
            e2[var] -= 1;
            (e2, c.clone() * C::from_u32(k).expect("exponent fits coefficient ring"))
        });
        Self::from_terms(self.vars.clone(), terms)
    }

    /// Views the polynomial as univariate in `var`; entry `k` is the
    /// coefficient of `var^k`, expressed over the same variable list.
    pub fn coefficients_in(&self, var: usize) -> Vec<Self> {
        let deg = self.degree_in(var).unwrap_or(0) as usize;
        let mut out = vec![Self::zero(self.vars.clone()); deg + 1];
        for (e, c) in &self.terms {
            let k = e[var] as usize;
            let mut e2 = e.clone();
            e2[var] = 0;
            out[k].terms.insert(e2, c.clone());
        }
        out
    }

    /// Re-expresses the polynomial over `new_vars`; every current variable
    /// must appear there.
    pub fn embed(&self, new_vars: &[String]) -> Option<Self> {
        let map: Option<Vec<usize>> =
            self.vars.iter().map(|v| new_vars.iter().position(|w| w == v)).collect();
        let map = map?;
        let terms = self.terms.iter().map(|(e, c)| {
            let mut e2 = vec![0; new_vars.len()];
            for (i, &k) in e.iter().enumerate() {
                e2[map[i]] += k;
            }
            (e2, c.clone())
        });
        Some(Self::from_terms(new_vars.to_vec(), terms))
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> MPoly<D> {
        MPoly::from_terms(self.vars.clone(), self.terms.iter().map(|(e, c)| (e.clone(), f(c))))
    }

    /// Evaluates at `point`, lifting coefficients with `lift`.
    pub fn eval_with<T>(&self, point: &[T], lift: impl Fn(&C) -> T) -> T
    where
        T: Clone + Zero + One + Mul<Output = T> + Add<Output = T>,
    {
        assert_eq!(point.len(), self.vars.len());
        self.terms.iter().fold(T::zero(), |acc, (e, c)| {
            let mut m = lift(c);
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    m = m * x.clone();
                }
            }
            acc + m
        })
    }

    pub fn eval(&self, point: &[C]) -> C {
        self.eval_with(point, |c| c.clone())
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a
    /// remainder. Uses the lex-leading term as the reduction pivot.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (lead_e, lead_c) = divisor.leading_term()?;
        let lead_e = lead_e.clone();
        let lead_c = lead_c.clone();
        let mut rem = self.clone();
        let mut quot = Self::zero(self.vars.clone());
        while let Some((e, c)) = rem.leading_term() {
            if e.iter().zip(&lead_e).any(|(a, b)| a < b) {
                return None;
            }
            let qe: Exponents = e.iter().zip(&lead_e).map(|(a, b)| a - b).collect();
            let qc = c.clone() / lead_c.clone();
            let step = Self::from_terms(self.vars.clone(), [(qe, qc)]);
            rem = &rem - &(&step * divisor);
            quot = &quot + &step;
        }
        Some(quot)
    }
}

impl<C: Coeff> Add for &MPoly<C> {
    type Output = MPoly<C>;
    fn add(self, rhs: Self) -> MPoly<C> {
        debug_assert_eq!(self.vars, rhs.vars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            match out.terms.remove(e) {
                Some(prev) => {
                    let s = prev + c.clone();
                    if !s.is_zero() {
                        out.terms.insert(e.clone(), s);
                    }
                }
                None => {
                    out.terms.insert(e.clone(), c.clone());
                }
            }
        }
        out
    }
}

impl<C: Coeff> Sub for &MPoly<C> {
    type Output = MPoly<C>;
    fn sub(self, rhs: Self) -> MPoly<C> {
        self + &(-rhs)
    }
}

impl<C: Coeff> Neg for &MPoly<C> {
    type Output = MPoly<C>;
    fn neg(self) -> MPoly<C> {
        MPoly { vars: self.vars.clone(), terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect() }
    }
}

impl<C: Coeff> Mul for &MPoly<C> {
    type Output = MPoly<C>;
    fn mul(self, rhs: Self) -> MPoly<C> {
        debug_assert_eq!(self.vars, rhs.vars);
        let mut acc: BTreeMap<Exponents, C> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                let c = ca.clone() * cb.clone();
                let entry = acc.entry(e).or_insert_with(C::zero);
                *entry = entry.clone() + c;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        MPoly { vars: self.vars.clone(), terms: acc }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<C: Coeff> $tr for MPoly<C> {
            type Output = MPoly<C>;
            fn $m(self, rhs: Self) -> MPoly<C> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<C: Coeff> Neg for MPoly<C> {
    type Output = MPoly<C>;
    fn neg(self) -> MPoly<C> {
        -&self
    }
}

fn write_monomial(out: &mut String, vars: &[String], e: &[u32], order: &[usize]) {
    let mut first = true;
    for &i in order {
        let k = e[i];
        if k == 0 {
            continue;
        }
        if !first {
            out.push('*');
        }
        first = false;
        out.push_str(&vars[i]);
        if k > 1 {
            out.push('^');
            out.push_str(&k.to_string());
        }
    }
}

/// Writes `terms` (already in display order) in the polyparse grammar.
pub(crate) fn write_terms<'a>(
    vars: &[String],
    terms: impl Iterator<Item = (&'a Exponents, &'a BigRational)>,
    factor_order: &[usize],
) -> String {
    let mut out = String::new();
    for (n, (e, c)) in terms.enumerate() {
        let neg = c.is_negative();
        match (n, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let mag = c.abs();
        let constant = e.iter().all(|&k| k == 0);
        if constant {
            out.push_str(&mag.to_string());
        } else {
            if !mag.is_one() {
                out.push_str(&mag.to_string());
                out.push('*');
            }
            write_monomial(&mut out, vars, e, factor_order);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl MPoly<BigRational> {
    /// Text form with terms sorted by descending power of `main`, ties in
    /// lex-descending order; inside a term `main` is written last.
    pub fn format_in(&self, main: usize) -> String {
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| b[main].cmp(&a[main]).then_with(|| b.cmp(a)));
        let mut order: Vec<usize> = (0..self.nvars()).filter(|&i| i != main).collect();
        order.push(main);
        write_terms(&self.vars, terms.into_iter(), &order)
    }
}

impl fmt::Display for MPoly<BigRational> {
    /// Lex-descending order in the stored variable order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let order: Vec<usize> = (0..self.nvars()).collect();
        f.write_str(&write_terms(&self.vars, self.terms.iter().rev(), &order))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int};

    fn xy() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }

    #[test]
    fn arithmetic_and_display() {
        let x = MPoly::<BigRational>::var(xy(), 0);
        let y = MPoly::<BigRational>::var(xy(), 1);
        let p = &(&x * &x).pow(1) + &(&x * &y.pow(2));
        assert_eq!(p.to_string(), "x^2 + x*y^2");
        let q = &p - &p;
        assert!(q.is_zero());
        assert_eq!(q.to_string(), "0");
        let r = &y.scale(&rat(-1, 3)) + &MPoly::constant(xy(), rat_int(2));
        assert_eq!(r.to_string(), "-1/3*y + 2");
    }

    #[test]
    fn exact_division() {
        let x = MPoly::<BigRational>::var(xy(), 0);
        let y = MPoly::<BigRational>::var(xy(), 1);
        let a = &x + &y;
        let b = &x - &y.scale(&rat_int(2));
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!(prod.div_exact(&b), Some(a.clone()));
        assert_eq!((&prod + &y).div_exact(&a), None);
    }

    #[test]
    fn coefficients_and_derivative() {
        let x = MPoly::<BigRational>::var(xy(), 0);
        let y = MPoly::<BigRational>::var(xy(), 1);
        let p = &(&x.pow(3) + &(&x * &y.pow(2))) + &y;
        let cs = p.coefficients_in(1);
        assert_eq!(cs.len(), 3);
        assert_eq!(cs[0], x.pow(3));
        assert_eq!(cs[1], MPoly::constant(xy(), rat_int(1)));
        assert_eq!(cs[2], x);
        let dx = p.derivative(0);
        assert_eq!(dx.to_string(), "3*x^2 + y^2");
        assert_eq!(p.eval(&[rat_int(2), rat_int(1)]), rat_int(8 + 2 + 1));
    }

    #[test]
    fn main_variable_format() {
        let vars: Vec<String> = vec!["x".into(), "s1".into(), "s2".into()];
        let x = MPoly::<BigRational>::var(vars.clone(), 0);
        let s1 = MPoly::<BigRational>::var(vars.clone(), 1);
        let s2 = MPoly::<BigRational>::var(vars.clone(), 2);
        let p = &(&x.pow(4).scale(&rat_int(12)) - &(&s1 * &x.pow(2)).scale(&rat_int(4))) + &s2.pow(2);
        assert_eq!(p.format_in(0), "12*x^4 - 4*s1*x^2 + s2^2");
    }
}
