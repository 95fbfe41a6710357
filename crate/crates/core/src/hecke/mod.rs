//! The Iwahori–Hecke algebra of `S_n` over `Z[x, x^{-1}]`, with quadratic
//! relation `(T_s - x)(T_s + 1) = 0`, in the basis `{T_w}`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::permgroup::{all_elements, PermError, Permutation};
use crate::polyring::parse::{parse_expr, ExprRing};
use crate::polyring::{LaurentPoly, PolyError};
use crate::schubert::render_combination;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HeckeError {
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A finite sum `Σ c_w T_w` with Laurent polynomial coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeckeElement {
    n: usize,
    coords: BTreeMap<Permutation, LaurentPoly>,
}

fn x_poly() -> LaurentPoly {
    LaurentPoly::var()
}

fn int(c: i64) -> LaurentPoly {
    LaurentPoly::constant(BigInt::from(c))
}

impl HeckeElement {
    pub fn zero(n: usize) -> Self {
        HeckeElement { n, coords: BTreeMap::new() }
    }

    /// The basis element `T_w`.
    pub fn t(w: &Permutation) -> Self {
        Self::scalar_t(w, LaurentPoly::one())
    }

    pub fn scalar_t(w: &Permutation, c: LaurentPoly) -> Self {
        let mut e = Self::zero(w.n());
        e.add_term(w, &c);
        e
    }

    pub fn one(n: usize) -> Self {
        Self::t(&Permutation::identity(n))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn add_term(&mut self, w: &Permutation, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let slot = self.coords.entry(w.clone()).or_insert_with(LaurentPoly::zero);
        *slot = &*slot + c;
        if slot.is_zero() {
            self.coords.remove(w);
        }
    }

    pub fn coeff(&self, w: &Permutation) -> LaurentPoly {
        self.coords.get(w).cloned().unwrap_or_else(LaurentPoly::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &LaurentPoly)> + '_ {
        self.coords.iter()
    }

    fn check(&self, other: &HeckeElement) -> Result<(), HeckeError> {
        if self.n != other.n {
            Err(HeckeError::RankMismatch { left: self.n, right: other.n })
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &HeckeElement) -> Result<HeckeElement, HeckeError> {
        self.check(other)?;
        let mut out = self.clone();
        for (w, c) in &other.coords {
            out.add_term(w, c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &LaurentPoly) -> HeckeElement {
        let mut out = HeckeElement::zero(self.n);
        for (w, d) in &self.coords {
            out.add_term(w, &(c * d));
        }
        out
    }

    /// `self * T_{s_i}`.
    pub fn mul_simple(&self, i: usize) -> HeckeElement {
        let x = x_poly();
        let xm1 = &x - &LaurentPoly::one();
        let mut out = HeckeElement::zero(self.n);
        for (w, c) in &self.coords {
            let ws = w.mul_simple(i).expect("index checked by caller");
            if w.has_descent(i) {
                out.add_term(&ws, &(&x * c));
                out.add_term(w, &(&xm1 * c));
            } else {
                out.add_term(&ws, c);
            }
        }
        out
    }

    /// `self * T_{s_i}^{-1}` with `T_s^{-1} = x^{-1} T_s + (x^{-1} - 1)`.
    pub fn mul_simple_inverse(&self, i: usize) -> HeckeElement {
        let xinv = LaurentPoly::monomial(BigInt::one(), -1);
        let shifted = self.mul_simple(i).scale(&xinv);
        let rest = self.scale(&(&xinv - &LaurentPoly::one()));
        shifted.add(&rest).expect("same rank")
    }

    /// Right multiplication by `T_v`, along a reduced word of `v`.
    pub fn mul_t(&self, v: &Permutation) -> HeckeElement {
        v.reduced_word().into_iter().fold(self.clone(), |acc, i| acc.mul_simple(i))
    }

    pub fn mul(&self, other: &HeckeElement) -> Result<HeckeElement, HeckeError> {
        self.check(other)?;
        let mut out = HeckeElement::zero(self.n);
        for (v, c) in &other.coords {
            for (w, d) in self.mul_t(v).coords {
                out.add_term(&w, &(&d * c));
            }
        }
        Ok(out)
    }

    /// Coefficients evaluated at `x = value`.
    pub fn eval(&self, value: &BigRational) -> Result<BTreeMap<Permutation, BigRational>, HeckeError> {
        let mut out = BTreeMap::new();
        for (w, c) in &self.coords {
            let v = c.eval(value)?;
            if !v.is_zero() {
                out.insert(w.clone(), v);
            }
        }
        Ok(out)
    }

    /// Longest basis elements first, e.g. `(x-1)*T[s1] + x*T[id]`.
    pub fn render(&self) -> String {
        render_combination(self.coords.iter().rev().map(|(w, c)| (c, format!("T[{}]", w.word_string()))), "x")
    }

    pub fn parse(input: &str, n: usize) -> Result<HeckeElement, HeckeError> {
        parse_expr::<HeckeExpr>(input, &n).map(|h| h.0).map_err(|e| match e {
            PolyError::Parse(msg) if msg.starts_with("perm:") => {
                HeckeError::Perm(PermError::Parse(msg.trim_start_matches("perm:").to_string()))
            }
            other => HeckeError::Poly(other),
        })
    }
}

impl fmt::Display for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// `T_w^{-1} = T_{a_r}^{-1} .. T_{a_1}^{-1}` for `w = s_{a_1} .. s_{a_r}`.
pub fn t_inverse(w: &Permutation) -> HeckeElement {
    let word = w.reduced_word();
    word.iter().rev().fold(HeckeElement::one(w.n()), |acc, &i| acc.mul_simple_inverse(i))
}

pub fn t_mul(a: &HeckeElement, b: &HeckeElement) -> Result<HeckeElement, HeckeError> {
    a.mul(b)
}

/// `R_{1,w} = (-x)^{l(w)} (T_{w^{-1}}^{-1} : T_id)`.
pub fn r_polynomial(w: &Permutation) -> LaurentPoly {
    let inv = t_inverse(&w.inverse());
    let c = inv.coeff(&Permutation::identity(w.n()));
    let sign = if w.length().is_multiple_of(2) { 1 } else { -1 };
    c.shift(w.length() as i64).scale(&BigInt::from(sign))
}

/// Coefficient of `T_{w'^{-1}}` in `T_w T_{w'^{-1}}`.
pub fn f_coefficient(w: &Permutation, w_prime: &Permutation) -> Result<LaurentPoly, HeckeError> {
    if w.n() != w_prime.n() {
        return Err(HeckeError::RankMismatch { left: w.n(), right: w_prime.n() });
    }
    let target = w_prime.inverse();
    Ok(HeckeElement::t(w).mul_t(&target).coeff(&target))
}

/// `f_w = Σ_{w'} f_{w,w'}`.
pub fn f_w(w: &Permutation) -> LaurentPoly {
    all_elements(w.n()).fold(LaurentPoly::zero(), |acc, wp| &acc + &f_coefficient(w, &wp).expect("same rank"))
}

/// Newtype so the expression reader can evaluate into the algebra.
struct HeckeExpr(HeckeElement);

impl ExprRing for HeckeExpr {
    type Ctx = usize;

    fn from_number(ctx: &usize, v: &BigRational) -> Result<Self, PolyError> {
        if !v.is_integer() {
            return Err(PolyError::Parse(format!("non-integer coefficient {v}")));
        }
        Ok(HeckeExpr(HeckeElement::scalar_t(&Permutation::identity(*ctx), LaurentPoly::constant(v.to_integer()))))
    }

    fn from_ident(ctx: &usize, name: &str) -> Result<Self, PolyError> {
        match name {
            "x" => Ok(HeckeExpr(HeckeElement::scalar_t(&Permutation::identity(*ctx), x_poly()))),
            other => Err(PolyError::UnknownVariable(other.to_string())),
        }
    }

    fn from_indexed(ctx: &usize, name: &str, content: &str) -> Result<Self, PolyError> {
        if name != "T" {
            return Err(PolyError::UnknownVariable(format!("{name}[{content}]")));
        }
        let w = Permutation::parse(content, *ctx).map_err(|e| PolyError::Parse(format!("perm:{e}")))?;
        Ok(HeckeExpr(HeckeElement::t(&w)))
    }

    fn add(self, other: Self) -> Result<Self, PolyError> {
        Ok(HeckeExpr(self.0.add(&other.0).expect("same rank")))
    }

    fn mul(self, other: Self) -> Result<Self, PolyError> {
        Ok(HeckeExpr(self.0.mul(&other.0).expect("same rank")))
    }

    fn neg(self) -> Self {
        HeckeExpr(self.0.scale(&int(-1)))
    }

    fn pow(self, exp: i64) -> Result<Self, PolyError> {
        let n = self.0.n;
        let base = if exp >= 0 {
            self.0
        } else {
            invert(&self.0).ok_or_else(|| PolyError::Parse("only T[w] and x^k are invertible here".into()))?
        };
        let mut acc = HeckeElement::one(n);
        for _ in 0..exp.unsigned_abs() {
            acc = acc.mul(&base).expect("same rank");
        }
        Ok(HeckeExpr(acc))
    }
}

/// Inverse of `±x^k T_w`.
fn invert(h: &HeckeElement) -> Option<HeckeElement> {
    if h.coords.len() != 1 {
        return None;
    }
    let (w, c) = h.coords.iter().next()?;
    if c.num_terms() != 1 {
        return None;
    }
    let (k, a) = c.terms().next()?;
    if !a.abs().is_one() {
        return None;
    }
    let unit_inv = LaurentPoly::monomial(a.clone(), -k);
    Some(t_inverse(w).scale(&unit_inv))
}
