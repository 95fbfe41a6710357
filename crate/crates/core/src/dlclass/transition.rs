use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::{class_x, DlError};
use crate::permgroup::{all_elements, Permutation, Twist};
use crate::polyring::QPoly;
use crate::schubert::{FlagRing, SchubertVector};

/// Columns are `[X(w)]` in the basis `[C_a]`; rows and columns are indexed
/// by `W` in (length, one-line) order.
#[derive(Debug, Clone)]
pub struct TransitionMatrix {
    pub n: usize,
    pub twist: Twist,
    pub order: Vec<Permutation>,
    pub columns: Vec<SchubertVector>,
    pub det: QPoly,
    pub factorization: DetFactorization,
}

impl TransitionMatrix {
    pub fn entry(&self, row: usize, col: usize) -> QPoly {
        self.columns[col].get(&self.order[row])
    }

    pub fn size(&self) -> usize {
        self.order.len()
    }

    pub fn at_q(&self, value: &BigRational) -> Vec<Vec<BigRational>> {
        (0..self.size())
            .map(|r| (0..self.size()).map(|c| self.entry(r, c).eval(value).expect("polynomial entries")).collect())
            .collect()
    }

    /// Whether the matrix at `q = 0` is the permutation matrix of `w ↦ w^{-1}`.
    pub fn is_inverse_permutation_at_zero(&self) -> bool {
        let m = self.at_q(&BigRational::zero());
        self.order.iter().enumerate().all(|(c, w)| {
            let target = w.inverse();
            (0..self.size()).all(|r| {
                let expected = if self.order[r] == target { BigRational::one() } else { BigRational::zero() };
                m[r][c] == expected
            })
        })
    }
}

pub fn transition_matrix(ring: &FlagRing, twist: Twist) -> Result<TransitionMatrix, DlError> {
    let n = ring.n();
    let order: Vec<Permutation> = all_elements(n).collect();
    let columns: Vec<SchubertVector> = order.par_iter().map(|w| class_x(ring, w, twist)).collect::<Result<_, _>>()?;
    // classes are homogeneous of degree l(w), so the matrix is block diagonal by length
    let mut det = QPoly::one();
    let mut start = 0;
    while start < order.len() {
        let len = order[start].length();
        let end = start + order[start..].iter().take_while(|w| w.length() == len).count();
        let block: Vec<Vec<QPoly>> =
            (start..end).map(|r| (start..end).map(|c| columns[c].get(&order[r])).collect()).collect();
        det = &det * &bareiss_det(block);
        start = end;
    }
    let factorization = factor_det(&det, 2 * n);
    Ok(TransitionMatrix { n, twist, order, columns, det, factorization })
}

/// Fraction-free elimination; every division is exact.
pub fn bareiss_det(mut a: Vec<Vec<QPoly>>) -> QPoly {
    let m = a.len();
    if m == 0 {
        return QPoly::one();
    }
    let mut negate = false;
    let mut prev = QPoly::one();
    for k in 0..m - 1 {
        if a[k][k].is_zero() {
            match (k + 1..m).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return QPoly::zero(),
            }
        }
        for i in k + 1..m {
            for j in k + 1..m {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[m - 1][m - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// The `d`-th cyclotomic polynomial.
pub fn cyclotomic(d: usize) -> QPoly {
    let one = BigRational::one();
    let mut p = &QPoly::monomial(one.clone(), d as i64) - &QPoly::one();
    for e in (1..d).filter(|e| d.is_multiple_of(*e)) {
        p = p.div_exact(&cyclotomic(e)).expect("Φ_e divides q^d - 1");
    }
    p
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum DetFactor {
    Q,
    Cyclotomic(usize),
}

impl DetFactor {
    pub fn poly(self) -> QPoly {
        match self {
            DetFactor::Q => QPoly::monomial(BigRational::one(), 1),
            DetFactor::Cyclotomic(d) => cyclotomic(d),
        }
    }
}

/// `det = unit · Π factor^mult · remainder`, with `remainder` free of the
/// trial factors.
#[derive(Debug, Clone, PartialEq)]
pub struct DetFactorization {
    pub unit: BigRational,
    pub factors: Vec<(DetFactor, u32)>,
    pub remainder: QPoly,
}

impl DetFactorization {
    pub fn is_complete(&self) -> bool {
        self.remainder.is_one()
    }

    /// Distinct factors, i.e. the support of the radical.
    pub fn radical(&self) -> Vec<DetFactor> {
        self.factors.iter().map(|&(f, _)| f).collect()
    }

    /// Factors rendered without the sign, e.g. `(q-1)*(q+1)^2`.
    pub fn render_unsigned(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        let mag = self.unit.abs();
        if !mag.is_one() {
            parts.push(mag.to_string());
        }
        for &(f, m) in &self.factors {
            let body = match f {
                DetFactor::Q => "q".to_string(),
                other => format!("({})", other.poly().render("q")),
            };
            parts.push(if m == 1 { body } else { format!("{body}^{m}") });
        }
        if !self.remainder.is_one() {
            parts.push(format!("({})", self.remainder.render("q")));
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Display for DetFactorization {
    /// Up to sign, which depends on the ordering of the bases.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "±{}", self.render_unsigned())
    }
}

/// Trial division by `q` and by `Φ_d` for `d <= max_d`.
pub fn factor_det(det: &QPoly, max_d: usize) -> DetFactorization {
    assert!(!det.is_zero(), "determinant vanishes");
    let mut rest = det.clone();
    let mut factors = Vec::new();
    for f in std::iter::once(DetFactor::Q).chain((1..=max_d).map(DetFactor::Cyclotomic)) {
        let p = f.poly();
        let mut mult = 0;
        loop {
            let (quot, rem) = rest.div_rem(&p).expect("nonzero divisor");
            if !rem.is_zero() {
                break;
            }
            rest = quot;
            mult += 1;
        }
        if mult > 0 {
            factors.push((f, mult));
        }
    }
    let (unit, remainder) = match rest.degree() {
        Some(0) => (rest.coeff(0), QPoly::one()),
        _ => {
            let lead = rest.leading_data().expect("nonzero").1;
            (lead.clone(), rest.scale(&(BigRational::one() / lead)))
        }
    };
    DetFactorization { unit, factors, remainder }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn int(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    #[test]
    fn cyclotomic_small() {
        assert_eq!(cyclotomic(1).render("q"), "q-1");
        assert_eq!(cyclotomic(2).render("q"), "q+1");
        assert_eq!(cyclotomic(3).render("q"), "q^2+q+1");
        assert_eq!(cyclotomic(6).render("q"), "q^2-q+1");
    }

    #[test]
    fn rank_two_determinant() {
        let ring = FlagRing::new(2).unwrap();
        let t = transition_matrix(&ring, Twist::Trivial).unwrap();
        assert_eq!(t.factorization.to_string(), "±(q+1)");
        assert!(t.is_inverse_permutation_at_zero());
    }

    #[test]
    fn bareiss_with_pivoting() {
        let c = |v: i64| QPoly::constant(int(v));
        let m = vec![vec![c(0), c(1)], vec![c(1), c(0)]];
        assert_eq!(bareiss_det(m), c(-1));
        let m = vec![vec![c(2), c(3), c(1)], vec![c(4), c(1), c(5)], vec![c(0), c(2), c(7)]];
        assert_eq!(bareiss_det(m), c(2 * (7 - 10) - 3 * 28 + 8));
    }
}
