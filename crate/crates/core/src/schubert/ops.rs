use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use super::kernel::{self, pack, unpack, XPoly, MAX_RANK};
use super::vector::{q_power, Basis, SchubertVector};
use super::SchubertError;
use crate::permgroup::Permutation;
use crate::polyring::{Bank, Exponents, MultiPoly, Substitution, Var};

fn check_rank(n: usize) -> Result<(), SchubertError> {
    if (1..=MAX_RANK).contains(&n) {
        Ok(())
    } else {
        Err(SchubertError::RankOutOfRange(n))
    }
}

fn bank_slot(n: usize, bank: Bank, i: usize) -> usize {
    match bank {
        Bank::X => i - 1,
        Bank::Y => n + i - 1,
    }
}

/// `x1^{n-1} x2^{n-2} .. x_{n-1}`.
pub fn staircase(n: usize) -> MultiPoly {
    let mut e: Exponents = smallvec::smallvec![0; 2 * n + 1];
    for i in 1..n {
        e[i - 1] = (n - i) as u16;
    }
    let mut p = MultiPoly::zero(n);
    p.add_term(e, BigRational::one());
    p
}

/// `(f - s_i f) / (v_i - v_{i+1})` in the chosen bank.
pub fn divided_difference(i: usize, f: &MultiPoly, bank: Bank) -> Result<MultiPoly, SchubertError> {
    let n = f.rank();
    if i == 0 || i >= n {
        return Err(SchubertError::InvalidIndex { index: i, n });
    }
    let (si, sj) = (bank_slot(n, bank, i), bank_slot(n, bank, i + 1));
    let mut out = MultiPoly::zero(n);
    for (e, c) in f.terms() {
        let (a, b) = (e[si], e[sj]);
        if a == b {
            continue;
        }
        // (u^a v^b - u^b v^a)/(u - v) = u^lo v^lo Σ_j u^{hi-lo-1-j} v^j, negated if a < b
        let (hi, lo, coeff) = if a > b { (a, b, c.clone()) } else { (b, a, -c.clone()) };
        for j in 0..hi - lo {
            let mut ne = e.clone();
            ne[si] = hi - 1 - j;
            ne[sj] = lo + j;
            out.add_term(ne, coeff.clone());
        }
    }
    Ok(out)
}

/// `∂_w = ∂_{a1} ∘ .. ∘ ∂_{ar}` for `w = s_{a1} .. s_{ar}`; the rightmost
/// operator acts first, so `∂_w S_{w'} = S_{w' w^{-1}}`.
pub fn divided_difference_word(w: &Permutation, f: &MultiPoly, bank: Bank) -> Result<MultiPoly, SchubertError> {
    divided_difference_along(&w.reduced_word(), f, bank)
}

/// Same as [`divided_difference_word`] for an explicit word.
pub fn divided_difference_along(word: &[usize], f: &MultiPoly, bank: Bank) -> Result<MultiPoly, SchubertError> {
    let mut g = f.clone();
    for &i in word.iter().rev() {
        if g.is_zero() {
            break;
        }
        g = divided_difference(i, &g, bank)?;
    }
    Ok(g)
}

fn from_xpoly(p: &XPoly, n: usize, bank: Bank) -> MultiPoly {
    let mut out = MultiPoly::zero(n);
    for (&m, &c) in &p.terms {
        let mut e: Exponents = smallvec::smallvec![0; 2 * n + 1];
        for (k, d) in unpack(m, n).into_iter().enumerate() {
            e[bank_slot(n, bank, k + 1)] = d as u16;
        }
        out.add_term(e, BigRational::from_integer(BigInt::from(c)));
    }
    out
}

/// The Schubert polynomial `S_w(x) = ∂_{w^{-1} w0}(staircase)`.
pub fn schubert_poly(w: &Permutation) -> MultiPoly {
    schubert_poly_in(w, Bank::X)
}

pub fn schubert_poly_in(w: &Permutation, bank: Bank) -> MultiPoly {
    let n = w.n();
    if n <= MAX_RANK {
        from_xpoly(kernel::table(n).poly(w), n, bank)
    } else {
        let w0 = Permutation::longest(n);
        let seed = staircase(n);
        let seed = match bank {
            Bank::X => seed,
            Bank::Y => set_x_to_y(&seed),
        };
        divided_difference_word(&(&w.inverse() * &w0), &seed, bank).expect("indices in range")
    }
}

/// `Π_{i+j <= n} (x_i - s y_j)` for a scalar `s` (a constant or `q`).
pub fn double_schubert_w0(n: usize, y_scale: &MultiPoly) -> MultiPoly {
    let mut acc = MultiPoly::one(n);
    for i in 1..n {
        for j in 1..=n - i {
            let factor = &MultiPoly::x(n, i) - &(y_scale * &MultiPoly::y(n, j));
            acc = &acc * &factor;
        }
    }
    acc
}

fn bank_renaming(n: usize, f: impl Fn(Var) -> MultiPoly) -> Substitution {
    let mut sub = Substitution::empty(n);
    for i in 1..=n {
        for v in [Var::X(i), Var::Y(i)] {
            sub = sub.set(v, f(v)).expect("variable in range");
        }
    }
    sub.set(Var::Q, MultiPoly::q(n)).expect("q in range")
}

/// `y_i ↦ -y_{n-i+1}`.
pub fn omega_y(f: &MultiPoly) -> MultiPoly {
    let n = f.rank();
    let sub = bank_renaming(n, |v| match v {
        Var::Y(i) => -&MultiPoly::y(n, n + 1 - i),
        other => MultiPoly::var(n, other).expect("in range"),
    });
    f.substitute(&sub).expect("total substitution")
}

/// `y_i ↦ x_i`.
pub fn set_y_to_x(f: &MultiPoly) -> MultiPoly {
    let n = f.rank();
    let sub = bank_renaming(n, |v| match v {
        Var::Y(i) => MultiPoly::x(n, i),
        other => MultiPoly::var(n, other).expect("in range"),
    });
    f.substitute(&sub).expect("total substitution")
}

fn set_x_to_y(f: &MultiPoly) -> MultiPoly {
    let n = f.rank();
    let sub = bank_renaming(n, |v| match v {
        Var::X(i) => MultiPoly::y(n, i),
        other => MultiPoly::var(n, other).expect("in range"),
    });
    f.substitute(&sub).expect("total substitution")
}

/// Clears denominators of a `q`-free x-polynomial: returns `(p, d)` with
/// `f = p / d`.
pub(crate) fn to_xpoly(f: &MultiPoly) -> Result<(XPoly, BigInt), SchubertError> {
    let n = f.rank();
    if !f.free_of(Bank::Y) || !f.free_of_q() {
        return Err(SchubertError::NotInXBank);
    }
    let den = f.terms().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let mut p = XPoly::default();
    for (e, c) in f.terms() {
        let exps: Vec<u32> = e[..n].iter().map(|&d| d as u32).collect();
        if exps.iter().any(|&d| d > 255) {
            return Err(SchubertError::DegreeTooLarge);
        }
        let scaled = (c * BigRational::from_integer(den.clone())).to_integer();
        let c = scaled.to_i128().ok_or(SchubertError::CoefficientOverflow)?;
        p.add_term(pack(&exps), c);
    }
    Ok((p, den))
}

/// Coefficients `c_w` with `f ≡ Σ c_w S_w (mod J)`; `f` may involve `q`,
/// in which case the coefficients are polynomials in `q`.
pub fn expand_in_schubert_basis(f: &MultiPoly) -> Result<SchubertVector, SchubertError> {
    let n = f.rank();
    check_rank(n)?;
    if !f.free_of(Bank::Y) {
        return Err(SchubertError::NotInXBank);
    }
    let table = kernel::table(n);
    let mut out = SchubertVector::zero(n, Basis::Polynomial);
    for (d, part) in f.split_by_q() {
        let (p, den) = to_xpoly(&part)?;
        for (k, c) in table.expand(&p) {
            let coeff = BigRational::new(BigInt::from(c), den.clone());
            out.add(&table.perms[k], &q_power(d as usize).scale(&coeff));
        }
    }
    Ok(out)
}

/// Normal form of `f` modulo `J` (x-bank, `q`-free).
pub fn reduce_mod_j(f: &MultiPoly) -> Result<MultiPoly, SchubertError> {
    let n = f.rank();
    check_rank(n)?;
    let (p, den) = to_xpoly(f)?;
    let r = kernel::table(n).reduce(&p);
    Ok(from_xpoly(&r, n, Bank::X).scale(&BigRational::new(BigInt::one(), den)))
}

/// `c_w` computed as the constant term of `∂_w` applied to the normal form.
pub fn coefficient_by_divided_difference(w: &Permutation, f: &MultiPoly) -> Result<BigRational, SchubertError> {
    let g = reduce_mod_j(f)?;
    Ok(divided_difference_word(w, &g, Bank::X)?.constant_term())
}

/// The polynomial `Σ c_w(q) S_w(x)` represented by a vector.
pub fn vector_to_poly(v: &SchubertVector) -> MultiPoly {
    let v = v.to_basis(Basis::Polynomial);
    let mut acc = MultiPoly::zero(v.n);
    for (w, c) in v.entries() {
        let mut coeff = MultiPoly::zero(v.n);
        for (e, r) in c.terms() {
            coeff = &coeff + &(&MultiPoly::q(v.n).pow(e as u32) * &MultiPoly::constant(v.n, r.clone()));
        }
        acc = &acc + &(&coeff * &schubert_poly(w));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str, n: usize) -> MultiPoly {
        MultiPoly::parse(s, n).unwrap()
    }

    #[test]
    fn staircase_examples() {
        assert_eq!(staircase(2), poly("x1", 2));
        assert_eq!(staircase(3), poly("x1^2*x2", 3));
        assert_eq!(staircase(4), poly("x1^3*x2^2*x3", 4));
    }

    #[test]
    fn divided_difference_examples() {
        assert_eq!(divided_difference(1, &poly("x1", 3), Bank::X).unwrap(), MultiPoly::one(3));
        assert!(divided_difference(1, &poly("x1*x2", 3), Bank::X).unwrap().is_zero());
        assert_eq!(divided_difference(1, &poly("x1^2*x2", 3), Bank::X).unwrap(), poly("x1*x2", 3));
        assert_eq!(divided_difference(2, &poly("y2", 3), Bank::Y).unwrap(), MultiPoly::one(3));
        assert!(divided_difference(3, &poly("x1", 3), Bank::X).is_err());
    }

    #[test]
    fn word_examples() {
        let w0 = Permutation::longest(4);
        assert_eq!(divided_difference_word(&w0, &staircase(4), Bank::X).unwrap(), MultiPoly::one(4));
        let s1 = Permutation::simple(3, 1).unwrap();
        let s2 = Permutation::simple(3, 2).unwrap();
        let s1s2 = Permutation::parse("s1 s2", 3).unwrap();
        assert_eq!(schubert_poly(&s1s2), poly("x1*x2", 3));
        // S_{s1 s2} = x1 x2 is symmetric in x1, x2
        assert!(divided_difference_word(&s1, &schubert_poly(&s1s2), Bank::X).unwrap().is_zero());
        assert_eq!(divided_difference_word(&s2, &schubert_poly(&s1s2), Bank::X).unwrap(), schubert_poly(&s1));
        let low = poly("x1*x2 + x3", 3);
        assert!(divided_difference_word(&Permutation::longest(3), &low, Bank::X).unwrap().is_zero());
    }

    #[test]
    fn schubert_poly_examples() {
        assert_eq!(schubert_poly(&Permutation::identity(4)), MultiPoly::one(4));
        for n in 2..=5 {
            assert_eq!(schubert_poly(&Permutation::simple(n, 1).unwrap()), poly("x1", n));
        }
        let w = Permutation::from_window(&[3, 1, 2]).unwrap();
        assert_eq!(schubert_poly(&w), poly("x1^2", 3));
        assert_eq!(w.to_string(), "s2 s1");
    }

    #[test]
    fn double_schubert_examples() {
        let n = 3;
        let s = poly("q", n);
        let expected = poly("(x1 - q*y1)*(x1 - q*y2)*(x2 - q*y1)", n);
        assert_eq!(double_schubert_w0(n, &s), expected);
        assert_eq!(double_schubert_w0(2, &poly("q", 2)), poly("x1 - q*y1", 2));
        assert_eq!(double_schubert_w0(4, &MultiPoly::zero(4)), staircase(4));
    }

    #[test]
    fn omega_examples() {
        assert_eq!(omega_y(&poly("y1", 2)), poly("-y2", 2));
        let f = poly("y1^2*y3 - 3*x2*y2 + q", 3);
        assert_eq!(omega_y(&omega_y(&f)), f);
    }

    #[test]
    fn expansion_examples() {
        let n = 3;
        let v = expand_in_schubert_basis(&MultiPoly::one(n)).unwrap();
        assert_eq!(v.render(), "[id]");
        let v = expand_in_schubert_basis(&poly("x1^2", n)).unwrap();
        assert_eq!(v.render(), "[s2 s1]");
        let v = expand_in_schubert_basis(&poly("x1*(x1+x2)", n)).unwrap();
        assert_eq!(v.render(), "[s1 s2] + [s2 s1]");
        let v = expand_in_schubert_basis(&poly("1/2*x1 + q*x3", n)).unwrap();
        // x3 ≡ -x1 - x2 = -S_{s2}
        assert_eq!(v.render(), "-q*[s2] + 1/2*[s1]");
        assert!(expand_in_schubert_basis(&poly("y1", n)).is_err());
    }
}
