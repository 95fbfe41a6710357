use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::parse::{parse_expr, ExprRing};
use super::scalar::Scalar;
use super::PolyError;

/// Sparse single-variable Laurent polynomial. Exponents may be negative;
/// zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Univariate<R> {
    coeffs: BTreeMap<i64, R>,
}

/// Laurent polynomial over the integers (Hecke coefficients, Poincaré polynomials).
pub type LaurentPoly = Univariate<BigInt>;

/// Polynomial with rational coefficients (class coefficients in `q`).
pub type QPoly = Univariate<BigRational>;

impl<R: Scalar> Default for Univariate<R> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<R: Scalar> Univariate<R> {
    pub fn zero() -> Self {
        Self { coeffs: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(R::one())
    }

    pub fn constant(c: R) -> Self {
        Self::monomial(c, 0)
    }

    /// The variable itself.
    pub fn var() -> Self {
        Self::monomial(R::one(), 1)
    }

    pub fn monomial(c: R, exp: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(exp, c);
        }
        Self { coeffs }
    }

    /// Builds from `(exponent, coefficient)` pairs, merging repeats.
    pub fn from_terms<I: IntoIterator<Item = (i64, R)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exp: i64, c: R) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&exp) {
            Some(existing) => {
                let sum = existing.clone() + c;
                if sum.is_zero() {
                    self.coeffs.remove(&exp);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.coeffs.insert(exp, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn coeff(&self, exp: i64) -> R {
        self.coeffs.get(&exp).cloned().unwrap_or_else(R::zero)
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &R)> + '_ {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn low_degree(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// True when no negative exponents occur.
    pub fn is_polynomial(&self) -> bool {
        self.low_degree().is_none_or(|e| e >= 0)
    }

    /// `(degree, leading coefficient)`.
    pub fn leading_data(&self) -> Result<(i64, R), PolyError> {
        self.coeffs.iter().next_back().map(|(e, c)| (*e, c.clone())).ok_or(PolyError::ZeroPolynomial)
    }

    pub fn scale(&self, c: &R) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { coeffs: self.coeffs.iter().map(|(e, v)| (*e, v.clone() * c.clone())).collect() }
    }

    /// Multiplies by `var^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self { coeffs: self.coeffs.iter().map(|(e, v)| (e + k, v.clone())).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes `var -> -var`.
    pub fn negate_var(&self) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, v)| (*e, if e.rem_euclid(2) == 1 { -v.clone() } else { v.clone() }))
                .collect(),
        }
    }

    pub fn map_coeffs<S: Scalar>(&self, f: impl Fn(&R) -> S) -> Univariate<S> {
        Univariate::from_terms(self.coeffs.iter().map(|(e, c)| (*e, f(c))))
    }

    /// True when all coefficients are nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }

    /// Sum of coefficients.
    pub fn coeff_sum(&self) -> R {
        self.coeffs.values().fold(R::zero(), |a, c| a + c.clone())
    }

    /// Renders with `var` as the variable name, e.g. `q^2+q+1`, `x-1`, `x^-1`.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.coeffs.iter().rev().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push(if negative { '-' } else { '+' });
            }
            let power = match *e {
                0 => String::new(),
                1 => var.to_string(),
                k => format!("{var}^{k}"),
            };
            if power.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&power);
            } else {
                out.push_str(&format!("{mag}*{power}"));
            }
        }
        out
    }
}

impl<R: Scalar> Add for &Univariate<R> {
    type Output = Univariate<R>;
    fn add(self, rhs: Self) -> Univariate<R> {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<R: Scalar> Sub for &Univariate<R> {
    type Output = Univariate<R>;
    fn sub(self, rhs: Self) -> Univariate<R> {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl<R: Scalar> Mul for &Univariate<R> {
    type Output = Univariate<R>;
    fn mul(self, rhs: Self) -> Univariate<R> {
        let mut out = Univariate::zero();
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &rhs.coeffs {
                out.add_term(ea + eb, ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<R: Scalar> Neg for &Univariate<R> {
    type Output = Univariate<R>;
    fn neg(self) -> Univariate<R> {
        Univariate { coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c.clone())).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<R: Scalar> $tr for Univariate<R> {
            type Output = Univariate<R>;
            fn $m(self, rhs: Self) -> Univariate<R> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<R: Scalar> Neg for Univariate<R> {
    type Output = Univariate<R>;
    fn neg(self) -> Univariate<R> {
        -&self
    }
}

impl LaurentPoly {
    pub fn to_rational(&self) -> QPoly {
        self.map_coeffs(|c| BigRational::from_integer(c.clone()))
    }

    /// Exact evaluation at a nonzero rational (or at zero when no negative
    /// exponents occur).
    pub fn eval(&self, value: &BigRational) -> Result<BigRational, PolyError> {
        self.to_rational().eval(value)
    }

    /// `x -> x^{-1}`.
    pub fn bar(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|(e, c)| (-e, c.clone())).collect() }
    }
}

impl QPoly {
    pub fn eval(&self, value: &BigRational) -> Result<BigRational, PolyError> {
        if value.is_zero() && !self.is_polynomial() {
            return Err(PolyError::ZeroEvaluation);
        }
        let mut acc = BigRational::zero();
        for (e, c) in &self.coeffs {
            let p = if *e >= 0 {
                num_traits::pow(value.clone(), *e as usize)
            } else {
                num_traits::pow(value.recip(), (-*e) as usize)
            };
            acc += c.clone() * p;
        }
        Ok(acc)
    }

    /// Returns the integer-coefficient version if every coefficient is integral.
    pub fn to_integer(&self) -> Option<LaurentPoly> {
        if self.coeffs.values().all(|c| c.is_integer()) {
            Some(self.map_coeffs(|c| c.to_integer()))
        } else {
            None
        }
    }

    /// Euclidean division for polynomials (no negative exponents).
    pub fn div_rem(&self, divisor: &QPoly) -> Result<(QPoly, QPoly), PolyError> {
        if !self.is_polynomial() || !divisor.is_polynomial() {
            return Err(PolyError::NotPolynomial);
        }
        let (dd, dc) = divisor.leading_data()?;
        let mut rem = self.clone();
        let mut quot = QPoly::zero();
        while let Some((re, rc)) = rem.coeffs.iter().next_back().map(|(e, c)| (*e, c.clone())) {
            if re < dd {
                break;
            }
            let factor = rc / dc.clone();
            let step = QPoly::monomial(factor, re - dd);
            rem = &rem - &(&step * divisor);
            quot = &quot + &step;
        }
        Ok((quot, rem))
    }

    /// Exact quotient; errors when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &QPoly) -> Result<QPoly, PolyError> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(PolyError::InexactDivision)
        }
    }

    pub fn parse(input: &str, var: &str) -> Result<QPoly, PolyError> {
        parse_expr::<QPoly>(input, &var.to_string())
    }
}

impl LaurentPoly {
    pub fn parse(input: &str, var: &str) -> Result<LaurentPoly, PolyError> {
        QPoly::parse(input, var)?
            .to_integer()
            .ok_or_else(|| PolyError::Parse(format!("non-integer coefficient in {input:?}")))
    }
}

impl<R: Scalar> fmt::Display for Univariate<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("x"))
    }
}

impl ExprRing for QPoly {
    type Ctx = String;

    fn from_number(_: &String, v: &BigRational) -> Result<Self, PolyError> {
        Ok(QPoly::constant(v.clone()))
    }

    fn from_ident(var: &String, name: &str) -> Result<Self, PolyError> {
        if name == var {
            Ok(QPoly::var())
        } else {
            Err(PolyError::UnknownVariable(name.to_string()))
        }
    }

    fn add(self, other: Self) -> Result<Self, PolyError> {
        Ok(&self + &other)
    }

    fn mul(self, other: Self) -> Result<Self, PolyError> {
        Ok(&self * &other)
    }

    fn neg(self) -> Self {
        -&self
    }

    fn pow(self, exp: i64) -> Result<Self, PolyError> {
        if exp >= 0 {
            return Ok(Univariate::pow(&self, exp as u32));
        }
        if self.num_terms() != 1 {
            return Err(PolyError::Parse("negative power of a non-monomial".into()));
        }
        let (e, c) = self.leading_data()?;
        Ok(Univariate::pow(&QPoly::monomial(c.recip(), -e), (-exp) as u32))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::scalar::rational;

    fn l(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(e, c)| (e, BigInt::from(c))))
    }

    #[test]
    fn laurent_product_with_negative_exponent() {
        // (x - 1) * x^-1 = 1 - x^-1
        let p = &l(&[(1, 1), (0, -1)]) * &l(&[(-1, 1)]);
        assert_eq!(p, l(&[(0, 1), (-1, -1)]));
    }

    #[test]
    fn adding_zero_is_identity() {
        let p = l(&[(2, 3), (0, -1)]);
        assert_eq!(&p + &LaurentPoly::zero(), p);
    }

    #[test]
    fn evaluation_examples() {
        let q1 = l(&[(1, 1), (0, 1)]);
        assert_eq!(q1.eval(&rational(1, 1)).unwrap(), rational(2, 1));
        let q2 = l(&[(2, 1), (1, 1), (0, 1)]);
        assert_eq!(q2.eval(&rational(2, 1)).unwrap(), rational(7, 1));
        let inv = l(&[(-1, 1), (0, 1)]);
        assert_eq!(inv.eval(&rational(2, 1)).unwrap(), rational(3, 2));
        assert_eq!(inv.eval(&rational(0, 1)), Err(PolyError::ZeroEvaluation));
    }

    #[test]
    fn leading_data_examples() {
        assert_eq!(l(&[(2, 1), (1, 1)]).leading_data().unwrap(), (2, BigInt::from(1)));
        assert_eq!(l(&[(5, 3)]).leading_data().unwrap(), (5, BigInt::from(3)));
        assert_eq!(LaurentPoly::zero().leading_data(), Err(PolyError::ZeroPolynomial));
    }

    #[test]
    fn rendering() {
        assert_eq!(l(&[(2, 1), (1, 1), (0, 1)]).render("q"), "q^2+q+1");
        assert_eq!(l(&[(1, 1), (0, -1)]).render("x"), "x-1");
        assert_eq!(l(&[(-1, 1)]).render("x"), "x^-1");
        assert_eq!(l(&[(3, -2), (0, 5)]).render("q"), "-2*q^3+5");
        assert_eq!(LaurentPoly::zero().render("q"), "0");
        let r = QPoly::monomial(rational(1, 3), 1);
        assert_eq!(r.render("q"), "1/3*q");
    }

    #[test]
    fn parse_round_trips_rendering() {
        for s in ["q^2+q+1", "x-1", "-2*q^3+5", "1/3*q", "0", "-7+q^-2"] {
            let var = if s.contains('x') { "x" } else { "q" };
            let p = QPoly::parse(s, var).unwrap();
            assert_eq!(p.render(var), s);
        }
        assert_eq!(QPoly::parse("(q+1)^2", "q").unwrap().render("q"), "q^2+2*q+1");
        assert!(QPoly::parse("q+t", "q").is_err());
    }

    #[test]
    fn division() {
        let a = QPoly::parse("q^3-1", "q").unwrap();
        let b = QPoly::parse("q-1", "q").unwrap();
        assert_eq!(a.div_exact(&b).unwrap().render("q"), "q^2+q+1");
        let (_, r) = QPoly::parse("q^2+1", "q").unwrap().div_rem(&b).unwrap();
        assert_eq!(r.render("q"), "2");
        assert!(QPoly::parse("q^2+1", "q").unwrap().div_exact(&b).is_err());
    }
}
