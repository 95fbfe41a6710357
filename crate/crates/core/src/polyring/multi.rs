use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use super::parse::{parse_expr, ExprRing};
use super::univariate::QPoly;
use super::PolyError;

/// A variable of the polynomial ring `Q[x1..xn, y1..yn, q]`. Indices are 1-based.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Var {
    X(usize),
    Y(usize),
    Q,
}

/// Which bank of variables an operator acts on.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Bank {
    X,
    Y,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::X(i) => write!(f, "x{i}"),
            Var::Y(i) => write!(f, "y{i}"),
            Var::Q => f.write_str("q"),
        }
    }
}

/// Exponent vector `[x1..xn, y1..yn, q]`.
pub type Exponents = SmallVec<[u16; 17]>;

/// Sparse polynomial in `x1..xn, y1..yn, q` with exact rational coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiPoly {
    n: usize,
    terms: BTreeMap<Exponents, BigRational>,
}

fn slot(n: usize, v: Var) -> Result<usize, PolyError> {
    match v {
        Var::X(i) if (1..=n).contains(&i) => Ok(i - 1),
        Var::Y(i) if (1..=n).contains(&i) => Ok(n + i - 1),
        Var::Q => Ok(2 * n),
        other => Err(PolyError::UnknownVariable(other.to_string())),
    }
}

fn var_of_slot(n: usize, s: usize) -> Var {
    if s < n {
        Var::X(s + 1)
    } else if s < 2 * n {
        Var::Y(s - n + 1)
    } else {
        Var::Q
    }
}

impl MultiPoly {
    pub fn zero(n: usize) -> Self {
        Self { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, BigRational::one())
    }

    pub fn constant(n: usize, c: BigRational) -> Self {
        let mut p = Self::zero(n);
        p.add_term(Self::unit_exponents(n), c);
        p
    }

    pub fn var(n: usize, v: Var) -> Result<Self, PolyError> {
        let mut e = Self::unit_exponents(n);
        e[slot(n, v)?] = 1;
        let mut p = Self::zero(n);
        p.add_term(e, BigRational::one());
        Ok(p)
    }

    pub fn x(n: usize, i: usize) -> Self {
        Self::var(n, Var::X(i)).expect("x index out of range")
    }

    pub fn y(n: usize, i: usize) -> Self {
        Self::var(n, Var::Y(i)).expect("y index out of range")
    }

    pub fn q(n: usize) -> Self {
        Self::var(n, Var::Q).expect("q always exists")
    }

    fn unit_exponents(n: usize) -> Exponents {
        SmallVec::from_elem(0, 2 * n + 1)
    }

    /// Number of x (and y) variables.
    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn var_count(&self) -> usize {
        2 * self.n + 1
    }

    pub fn add_term(&mut self, e: Exponents, c: BigRational) {
        debug_assert_eq!(e.len(), 2 * self.n + 1);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigRational)> + '_ {
        self.terms.iter()
    }

    pub fn exponent(&self, e: &Exponents, v: Var) -> u16 {
        slot(self.n, v).map(|s| e[s]).unwrap_or(0)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().map(|&d| d as u32).sum()).max()
    }

    /// True when every term has the same total degree in the given bank.
    pub fn is_homogeneous_in(&self, bank: Bank) -> bool {
        let range = self.bank_range(bank);
        let mut degs = self.terms.keys().map(|e| e[range.clone()].iter().map(|&d| d as u32).sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    fn bank_range(&self, bank: Bank) -> std::ops::Range<usize> {
        match bank {
            Bank::X => 0..self.n,
            Bank::Y => self.n..2 * self.n,
        }
    }

    /// True if no variable of `bank` occurs.
    pub fn free_of(&self, bank: Bank) -> bool {
        let range = self.bank_range(bank);
        self.terms.keys().all(|e| e[range.clone()].iter().all(|&d| d == 0))
    }

    pub fn free_of_q(&self) -> bool {
        self.terms.keys().all(|e| e[2 * self.n] == 0)
    }

    /// Constant term.
    pub fn constant_term(&self) -> BigRational {
        self.terms.get(&Self::unit_exponents(self.n)).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Variables appearing with positive exponent.
    pub fn variables(&self) -> Vec<Var> {
        let mut seen = vec![false; self.var_count()];
        for e in self.terms.keys() {
            for (s, &d) in e.iter().enumerate() {
                if d > 0 {
                    seen[s] = true;
                }
            }
        }
        seen.iter().enumerate().filter(|(_, &b)| b).map(|(s, _)| var_of_slot(self.n, s)).collect()
    }

    fn check_shape(&self, other: &MultiPoly) -> Result<(), PolyError> {
        if self.n != other.n {
            Err(PolyError::ShapeMismatch { left: self.n, right: other.n })
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_shape(other)?;
        let mut acc: HashMap<Exponents, BigRational> = HashMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponents = ea.iter().zip(eb.iter()).map(|(a, b)| a + b).collect();
                *acc.entry(e).or_insert_with(BigRational::zero) += ca * cb;
            }
        }
        Ok(MultiPoly { n: self.n, terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() })
    }

    pub fn scale(&self, c: &BigRational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.n);
        }
        MultiPoly { n: self.n, terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(self.n);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Simultaneous substitution of every variable occurring in `self`.
    pub fn substitute(&self, sub: &Substitution) -> Result<MultiPoly, PolyError> {
        if sub.n != self.n {
            return Err(PolyError::ShapeMismatch { left: self.n, right: sub.n });
        }
        for v in self.variables() {
            if !sub.images.contains_key(&v) {
                return Err(PolyError::MissingAssignment(v.to_string()));
            }
        }
        if let Some(linear) = sub.signed_renaming(self.n) {
            let mut out = MultiPoly::zero(self.n);
            for (e, c) in &self.terms {
                let mut ne = Self::unit_exponents(self.n);
                let mut negative = false;
                for (s, &d) in e.iter().enumerate() {
                    if d == 0 {
                        continue;
                    }
                    let (target, neg) = linear[s].expect("checked above");
                    ne[target] += d;
                    negative ^= neg && d % 2 == 1;
                }
                out.add_term(ne, if negative { -c.clone() } else { c.clone() });
            }
            return Ok(out);
        }
        let mut powers: HashMap<(usize, u16), MultiPoly> = HashMap::new();
        let mut out = MultiPoly::zero(self.n);
        for (e, c) in &self.terms {
            let mut term = MultiPoly::constant(self.n, c.clone());
            for (s, &d) in e.iter().enumerate() {
                if d == 0 {
                    continue;
                }
                let image = &sub.images[&var_of_slot(self.n, s)];
                let p = powers.entry((s, d)).or_insert_with(|| image.pow(d as u32));
                term = &term * p;
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Groups terms by the power of `q`; each value is free of `q`.
    pub fn split_by_q(&self) -> BTreeMap<u16, MultiPoly> {
        let qs = 2 * self.n;
        let mut out: BTreeMap<u16, MultiPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut stripped = e.clone();
            let d = stripped[qs];
            stripped[qs] = 0;
            out.entry(d).or_insert_with(|| MultiPoly::zero(self.n)).add_term(stripped, c.clone());
        }
        out
    }

    /// Reads a `q`-free polynomial as a univariate polynomial in `q` when
    /// no x/y variables occur.
    pub fn as_q_poly(&self) -> Option<QPoly> {
        if !(self.free_of(Bank::X) && self.free_of(Bank::Y)) {
            return None;
        }
        Some(QPoly::from_terms(self.terms.iter().map(|(e, c)| (e[2 * self.n] as i64, c.clone()))))
    }

    pub fn parse(input: &str, n: usize) -> Result<MultiPoly, PolyError> {
        parse_expr::<MultiPoly>(input, &n)
    }

    /// Terms in graded lexicographic order (highest first), variables ordered
    /// `x1 > .. > xn > y1 > .. > yn > q`.
    fn sorted_terms(&self) -> Vec<(&Exponents, &BigRational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| grlex_desc(a, b));
        v
    }
}

fn grlex_desc(a: &Exponents, b: &Exponents) -> Ordering {
    let da: u32 = a.iter().map(|&d| d as u32).sum();
    let db: u32 = b.iter().map(|&d| d as u32).sum();
    db.cmp(&da).then_with(|| b.cmp(a))
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let factors: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &d)| d > 0)
                .map(|(s, &d)| {
                    let v = var_of_slot(self.n, s);
                    if d == 1 {
                        v.to_string()
                    } else {
                        format!("{v}^{d}")
                    }
                })
                .collect();
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&factors.join("*"))?;
            } else {
                write!(f, "{mag}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_add(rhs).expect("polynomial rank mismatch")
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_sub(rhs).expect("polynomial rank mismatch")
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_mul(rhs).expect("polynomial rank mismatch")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly { n: self.n, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect() }
    }
}

impl ExprRing for MultiPoly {
    type Ctx = usize;

    fn from_number(n: &usize, v: &BigRational) -> Result<Self, PolyError> {
        Ok(MultiPoly::constant(*n, v.clone()))
    }

    fn from_ident(n: &usize, name: &str) -> Result<Self, PolyError> {
        let var = if name == "q" {
            Var::Q
        } else {
            let (bank, idx) = name.split_at(1);
            let idx: usize = idx.parse().map_err(|_| PolyError::UnknownVariable(name.to_string()))?;
            match bank {
                "x" => Var::X(idx),
                "y" => Var::Y(idx),
                _ => return Err(PolyError::UnknownVariable(name.to_string())),
            }
        };
        MultiPoly::var(*n, var)
    }

    fn add(self, other: Self) -> Result<Self, PolyError> {
        self.try_add(&other)
    }

    fn mul(self, other: Self) -> Result<Self, PolyError> {
        self.try_mul(&other)
    }

    fn neg(self) -> Self {
        -&self
    }

    fn pow(self, exp: i64) -> Result<Self, PolyError> {
        if exp < 0 {
            return Err(PolyError::Parse("negative exponent in a polynomial".into()));
        }
        Ok(MultiPoly::pow(&self, exp as u32))
    }
}

/// Per-variable replacement map for [`MultiPoly::substitute`].
#[derive(Clone, Debug)]
pub struct Substitution {
    n: usize,
    images: BTreeMap<Var, MultiPoly>,
}

impl Substitution {
    pub fn empty(n: usize) -> Self {
        Self { n, images: BTreeMap::new() }
    }

    /// Every variable maps to itself.
    pub fn identity(n: usize) -> Self {
        let mut s = Self::empty(n);
        for i in 1..=n {
            s.images.insert(Var::X(i), MultiPoly::x(n, i));
            s.images.insert(Var::Y(i), MultiPoly::y(n, i));
        }
        s.images.insert(Var::Q, MultiPoly::q(n));
        s
    }

    pub fn set(mut self, v: Var, image: MultiPoly) -> Result<Self, PolyError> {
        slot(self.n, v)?;
        if image.rank() != self.n {
            return Err(PolyError::ShapeMismatch { left: self.n, right: image.rank() });
        }
        self.images.insert(v, image);
        Ok(self)
    }

    pub fn get(&self, v: Var) -> Option<&MultiPoly> {
        self.images.get(&v)
    }

    /// `self` after `first`: each variable maps to `first(v)` with `self` applied.
    pub fn after(&self, first: &Substitution) -> Result<Substitution, PolyError> {
        let mut out = Substitution::empty(self.n);
        for (v, img) in &first.images {
            out.images.insert(*v, img.substitute(self)?);
        }
        // variables not touched by `first` pass through to `self`
        for (v, img) in &self.images {
            out.images.entry(*v).or_insert_with(|| img.clone());
        }
        Ok(out)
    }

    /// `Some(target slot, negated)` per slot when every image is `±` a single variable.
    fn signed_renaming(&self, n: usize) -> Option<Vec<Option<(usize, bool)>>> {
        let mut out = vec![None; 2 * n + 1];
        for (v, img) in &self.images {
            if img.terms.len() != 1 {
                return None;
            }
            let (e, c) = img.terms.iter().next()?;
            let neg = if c.is_one() {
                false
            } else if (-c).is_one() {
                true
            } else {
                return None;
            };
            let mut target = None;
            for (s, &d) in e.iter().enumerate() {
                match d {
                    0 => {}
                    1 if target.is_none() => target = Some(s),
                    _ => return None,
                }
            }
            out[slot(n, *v).ok()?] = Some((target?, neg));
        }
        Some(out)
    }
}

/// Converts an integer into a rational constant polynomial.
pub fn int_const(n: usize, v: i64) -> MultiPoly {
    MultiPoly::constant(n, BigRational::from_integer(BigInt::from(v)))
}
