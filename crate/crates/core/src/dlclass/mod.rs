//! Classes of Deligne–Lusztig varieties `X(w)` and of the varieties
//! `Y_{w,s}` (regular semisimple) and `Y_{w,u}` (regular unipotent) in the
//! Chow group of the flag variety of `GL_n`, in the basis of Schubert
//! cycles `[C_a]`.
//!
//! Two independent computations are provided: summing structure constants
//! over admissible pairs, and applying divided differences to the double
//! Schubert polynomial of `w0`.

mod equality;
mod report;
mod transition;

pub use equality::{equality_classes, equality_classes_streaming, EqualityGroup, Explanation};
pub use report::{ClassKind, ClassReport, ComponentCount, ComputationPath};
pub use transition::{cyclotomic, factor_det, transition_matrix, DetFactor, DetFactorization, TransitionMatrix};

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::permgroup::{
    all_elements, apply_twist, coset_data, factorial, parabolic_order, twisted_support_closure, PermError, Permutation,
    Twist,
};
use crate::polyring::{LaurentPoly, MultiPoly, PolyError, QPoly};
use crate::schubert::{
    divided_difference_word, double_schubert_w0, expand_in_schubert_basis, omega_y, set_y_to_x, Basis, FlagRing,
    SchubertError, SchubertVector,
};

#[derive(Debug, Error)]
pub enum DlError {
    #[error("rank mismatch: ring has n = {ring}, element has n = {element}")]
    RankMismatch { ring: usize, element: usize },
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Schubert(#[from] SchubertError),
    #[error("malformed report: {0}")]
    Report(String),
    #[error("class identity violated: {0}")]
    ClosureViolation(String),
}

fn check(ring: &FlagRing, w: &Permutation) -> Result<(), DlError> {
    if ring.n() != w.n() {
        Err(DlError::RankMismatch { ring: ring.n(), element: w.n() })
    } else {
        Ok(())
    }
}

/// Pairs `(u, v)` with `u w δ(v)^{-1} = w0` and `l(u) + l(v) = l(w0) - l(w)`,
/// found by solving `u = w0 δ(v) w^{-1}` for each `v`.
pub fn admissible_pairs(w: &Permutation, twist: Twist) -> Vec<(Permutation, Permutation)> {
    let n = w.n();
    let w0 = Permutation::longest(n);
    let budget = w0.length() - w.length();
    let w_inv = w.inverse();
    all_elements(n)
        .take_while(|v| v.length() <= budget)
        .filter_map(|v| {
            let u = &(&w0 * &apply_twist(twist, &v)) * &w_inv;
            (u.length() + v.length() == budget).then_some((u, v))
        })
        .collect()
}

/// `[X(w)] = Σ [C_{w0 u}]·[C_{w0 v}] q^{l(v)}` over admissible pairs.
pub fn class_x(ring: &FlagRing, w: &Permutation, twist: Twist) -> Result<SchubertVector, DlError> {
    check(ring, w)?;
    let table = ring.table();
    let mut acc: BTreeMap<(u32, usize), i128> = BTreeMap::new();
    for (u, v) in admissible_pairs(w, twist) {
        let d = v.length();
        for &(k, c) in ring.product_indices(table.index_of(&u), table.index_of(&v)).iter() {
            *acc.entry((k, d)).or_insert(0) += c;
        }
    }
    let mut out = SchubertVector::zero(w.n(), Basis::Polynomial);
    for ((k, d), c) in acc {
        let coeff = QPoly::monomial(BigRational::from_integer(BigInt::from(c)), d as i64);
        out.add(&table.perms[k as usize], &coeff);
    }
    Ok(out.to_basis(Basis::Cycle))
}

/// `[Y_{w,s}]`: the untwisted class at `q = 1`.
pub fn class_y_ss(ring: &FlagRing, w: &Permutation) -> Result<SchubertVector, DlError> {
    Ok(class_x(ring, w, Twist::Trivial)?.eval_q(&BigRational::from_integer(1.into())))
}

/// `[Y_{w,u}] = |W_I|/|W| · [Y_{w,s}]` with `I = supp(w)`.
pub fn class_y_unip(ring: &FlagRing, w: &Permutation) -> Result<SchubertVector, DlError> {
    Ok(class_y_ss(ring, w)?.scale(&unip_scale(w)))
}

pub fn unip_scale(w: &Permutation) -> BigRational {
    let n = w.n();
    BigRational::new(parabolic_order(&w.support(), n).into(), factorial(n).into())
}

/// `(ω_y ∂_w^x S_{w0}(x; -qy))_{y = x}` for the trivial twist, and the same
/// without `ω_y` for conjugation by `w0`.
pub fn class_via_divided_diff(w: &Permutation, twist: Twist) -> Result<SchubertVector, DlError> {
    let n = w.n();
    let neg_q = -&MultiPoly::q(n);
    let seed = double_schubert_w0(n, &neg_q);
    let mut f = divided_difference_word(w, &seed, crate::polyring::Bank::X)?;
    if twist == Twist::Trivial {
        f = omega_y(&f);
    }
    let f = set_y_to_x(&f);
    Ok(expand_in_schubert_basis(&f)?.to_basis(Basis::Cycle))
}

/// Poincaré polynomial of `W/W_I` for `I` the twisted support closure.
pub fn components_x(w: &Permutation, twist: Twist) -> LaurentPoly {
    let closure = twisted_support_closure(twist, w);
    coset_data(&closure, w.n()).expect("support indices are valid").poincare
}

/// `|W / W_{supp(w)}|`.
pub fn components_y_ss(w: &Permutation) -> u64 {
    factorial(w.n()) / parabolic_order(&w.support(), w.n())
}

/// `Σ_{δ(v) = v} q^{l(v)}`.
pub fn fixed_point_poincare(n: usize, twist: Twist) -> LaurentPoly {
    let mut p = LaurentPoly::zero();
    for v in all_elements(n).filter(|v| apply_twist(twist, v) == *v) {
        p.add_term(v.length() as i64, BigInt::from(1));
    }
    p
}
