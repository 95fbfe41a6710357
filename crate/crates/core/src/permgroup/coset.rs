use std::collections::BTreeSet;

use num_bigint::BigInt;

use super::{all_elements, factorial, PermError, Permutation};
use crate::polyring::LaurentPoly;

/// Minimal-length representatives of `W / W_I`.
#[derive(Debug, Clone, PartialEq)]
pub struct CosetData {
    pub subset_i: BTreeSet<usize>,
    pub min_representatives: Vec<Permutation>,
    pub poincare: LaurentPoly,
}

/// Representatives are the `w` with no right descent in `I`.
pub fn coset_data(subset_i: &BTreeSet<usize>, n: usize) -> Result<CosetData, PermError> {
    if n == 0 {
        return Err(PermError::ZeroRank);
    }
    if let Some(&bad) = subset_i.iter().find(|&&i| i == 0 || i >= n) {
        return Err(PermError::InvalidIndex { index: bad, n });
    }
    let reps: Vec<Permutation> = all_elements(n).filter(|w| subset_i.iter().all(|&i| !w.has_descent(i))).collect();
    let mut poincare = LaurentPoly::zero();
    for w in &reps {
        poincare.add_term(w.length() as i64, BigInt::from(1));
    }
    Ok(CosetData { subset_i: subset_i.clone(), min_representatives: reps, poincare })
}

/// `|W_I|`: product of factorials of the block sizes cut out by `I`.
pub fn parabolic_order(subset_i: &BTreeSet<usize>, n: usize) -> u64 {
    let mut order = 1;
    let mut block = 1;
    for i in 1..n {
        if subset_i.contains(&i) {
            block += 1;
        } else {
            order *= factorial(block);
            block = 1;
        }
    }
    order * factorial(block)
}

/// `Σ_{w ∈ S_n} q^{l(w)} = Π_{k=1}^{n} (1 + q + .. + q^{k-1})`.
pub fn poincare_polynomial(n: usize) -> LaurentPoly {
    let mut acc = LaurentPoly::one();
    for k in 1..=n {
        let factor = LaurentPoly::from_terms((0..k as i64).map(|e| (e, BigInt::from(1))));
        acc = &acc * &factor;
    }
    acc
}
