use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::permgroup::Permutation;
use crate::polyring::{QPoly, Scalar, Univariate};

/// How the keys of a [`SchubertVector`] are read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Basis {
    /// Key `w` stands for the Schubert polynomial `S_w`.
    Polynomial,
    /// Key `a` stands for the Schubert cycle `[C_a]`, i.e. `S_{w0 a}`.
    Cycle,
}

/// A class in `Z[x]/J`: a finite combination of Schubert basis elements
/// with coefficients in `Q[q]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SchubertVector {
    pub n: usize,
    pub basis: Basis,
    entries: BTreeMap<Permutation, QPoly>,
}

impl SchubertVector {
    pub fn zero(n: usize, basis: Basis) -> Self {
        SchubertVector { n, basis, entries: BTreeMap::new() }
    }

    pub fn from_entries<I: IntoIterator<Item = (Permutation, QPoly)>>(n: usize, basis: Basis, it: I) -> Self {
        let mut v = Self::zero(n, basis);
        for (w, c) in it {
            v.add(&w, &c);
        }
        v
    }

    pub fn add(&mut self, w: &Permutation, c: &QPoly) {
        if c.is_zero() {
            return;
        }
        let slot = self.entries.entry(w.clone()).or_insert_with(QPoly::zero);
        *slot = &*slot + c;
        if slot.is_zero() {
            self.entries.remove(w);
        }
    }

    pub fn add_scaled(&mut self, other: &SchubertVector, c: &QPoly) {
        assert_eq!(self.basis, other.basis, "adding vectors in different bases");
        for (w, d) in &other.entries {
            self.add(w, &(c * d));
        }
    }

    pub fn get(&self, w: &Permutation) -> QPoly {
        self.entries.get(w).cloned().unwrap_or_else(QPoly::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Permutation, &QPoly)> + '_ {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Switches between `S_w` and `[C_{w0 w}]` labels.
    pub fn to_basis(&self, basis: Basis) -> SchubertVector {
        if basis == self.basis {
            return self.clone();
        }
        let w0 = Permutation::longest(self.n);
        SchubertVector { n: self.n, basis, entries: self.entries.iter().map(|(w, c)| (&w0 * w, c.clone())).collect() }
    }

    pub fn map_coeffs(&self, f: impl Fn(&QPoly) -> QPoly) -> SchubertVector {
        SchubertVector::from_entries(self.n, self.basis, self.entries.iter().map(|(w, c)| (w.clone(), f(c))))
    }

    pub fn scale(&self, c: &BigRational) -> SchubertVector {
        self.map_coeffs(|p| p.scale(c))
    }

    /// Substitutes a value for `q` in every coefficient.
    pub fn eval_q(&self, value: &BigRational) -> SchubertVector {
        self.map_coeffs(|p| QPoly::constant(p.eval(value).expect("coefficients are polynomials")))
    }

    /// Common length of all keys, if the vector is homogeneous.
    pub fn homogeneous_length(&self) -> Option<usize> {
        let mut lengths = self.entries.keys().map(|w| w.length());
        let first = lengths.next()?;
        lengths.all(|l| l == first).then_some(first)
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.entries.values().all(|c| c.terms().all(|(_, r)| r.is_integer()))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.values().all(|c| c.is_nonnegative())
    }

    pub fn is_constant(&self) -> bool {
        self.entries.values().all(|c| c.terms().all(|(e, _)| e == 0))
    }

    /// Text form such as `q*[s1 s2] + [s2 s1]` or `(q+1)*[id]`.
    pub fn render(&self) -> String {
        render_combination(self.entries.iter().map(|(w, c)| (c, format!("[{}]", w.word_string()))), "q")
    }
}

impl fmt::Display for SchubertVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Renders `Σ c_k * b_k`, parenthesising multi-term coefficients.
pub fn render_combination<'a, R: Scalar + 'a>(
    terms: impl IntoIterator<Item = (&'a Univariate<R>, String)>,
    var: &str,
) -> String {
    let mut out = String::new();
    for (c, basis) in terms {
        if c.is_zero() {
            continue;
        }
        let single_negative = c.num_terms() == 1 && c.terms().all(|(_, r)| r.is_negative());
        let mag = if single_negative { -c } else { c.clone() };
        let body = if mag.is_one() {
            basis
        } else if mag.num_terms() == 1 {
            format!("{}*{basis}", mag.render(var))
        } else {
            format!("({})*{basis}", mag.render(var))
        };
        match (out.is_empty(), single_negative) {
            (true, false) => {}
            (true, true) => out.push('-'),
            (false, false) => out.push_str(" + "),
            (false, true) => out.push_str(" - "),
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        "0".to_string()
    } else {
        out
    }
}

pub(crate) fn int_qpoly(c: i128) -> QPoly {
    QPoly::constant(BigRational::from_integer(BigInt::from(c)))
}

pub(crate) fn q_power(k: usize) -> QPoly {
    QPoly::monomial(BigRational::one(), k as i64)
}
