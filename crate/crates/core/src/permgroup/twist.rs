use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{PermError, Permutation};

/// The automorphism `δ` of `S_n` induced by Frobenius.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Twist {
    Trivial,
    #[serde(rename = "w0")]
    ConjByW0,
}

impl Twist {
    /// Order of `δ` as a group automorphism of `S_n`.
    pub fn order(self, n: usize) -> usize {
        match self {
            Twist::ConjByW0 if n > 2 => 2,
            _ => 1,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Twist::Trivial => "trivial",
            Twist::ConjByW0 => "w0",
        }
    }
}

impl fmt::Display for Twist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Twist {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "trivial" | "id" | "split" => Ok(Twist::Trivial),
            "w0" | "conj" | "conjbyw0" | "nonsplit" => Ok(Twist::ConjByW0),
            other => Err(PermError::Parse(format!("unknown twist {other:?}"))),
        }
    }
}

/// `δ(w)`; for `ConjByW0` this is `w0 w w0`, i.e. `k ↦ n+1-w(n+1-k)`.
pub fn apply_twist(t: Twist, w: &Permutation) -> Permutation {
    match t {
        Twist::Trivial => w.clone(),
        Twist::ConjByW0 => {
            let n = w.n();
            let values: Vec<usize> = (1..=n).map(|k| n + 1 - w.at(n + 1 - k)).collect();
            Permutation::from_window(&values).expect("conjugate of a permutation")
        }
    }
}

/// Union of `supp(δ^k(w))` over `k >= 0`.
pub fn twisted_support_closure(t: Twist, w: &Permutation) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    let mut cur = w.clone();
    for _ in 0..t.order(w.n()) {
        out.extend(cur.support());
        cur = apply_twist(t, &cur);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twist_examples() {
        let s1 = Permutation::simple(3, 1).unwrap();
        let s2 = Permutation::simple(3, 2).unwrap();
        assert_eq!(apply_twist(Twist::Trivial, &s1), s1);
        assert_eq!(apply_twist(Twist::ConjByW0, &s1), s2);
        let w0 = Permutation::longest(3);
        assert_eq!(apply_twist(Twist::ConjByW0, &w0), w0);
    }

    #[test]
    fn closure_examples() {
        let s1 = Permutation::simple(4, 1).unwrap();
        let s2 = Permutation::simple(4, 2).unwrap();
        assert_eq!(twisted_support_closure(Twist::Trivial, &s1), BTreeSet::from([1]));
        assert_eq!(twisted_support_closure(Twist::ConjByW0, &s1), BTreeSet::from([1, 3]));
        assert_eq!(twisted_support_closure(Twist::ConjByW0, &s2), BTreeSet::from([2]));
    }

    #[test]
    fn parse_and_serde() {
        assert_eq!("w0".parse::<Twist>().unwrap(), Twist::ConjByW0);
        assert_eq!("Trivial".parse::<Twist>().unwrap(), Twist::Trivial);
        assert!("frob".parse::<Twist>().is_err());
        assert_eq!(serde_json::to_string(&Twist::ConjByW0).unwrap(), "\"w0\"");
    }
}
