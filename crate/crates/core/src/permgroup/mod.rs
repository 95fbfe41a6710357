//! The symmetric group `S_n` as a Coxeter group with simple reflections
//! `s_i = (i, i+1)`.
//!
//! Permutations are stored in one-line notation and composed as functions,
//! `(u * v)(k) = u(v(k))`. Right multiplication by `s_i` swaps positions
//! `i, i+1`; left multiplication swaps the values `i, i+1`.

mod coset;
mod twist;

pub use coset::{coset_data, parabolic_order, poincare_polynomial, CosetData};
pub use twist::{apply_twist, twisted_support_closure, Twist};

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("cannot parse permutation {0:?}")]
    Parse(String),
    #[error("rank mismatch: S_{left} vs S_{right}")]
    RankMismatch { left: usize, right: usize },
    #[error("simple index {index} out of range for S_{n}")]
    InvalidIndex { index: usize, n: usize },
    #[error("{0:?} is not a permutation of 1..n")]
    NotBijection(Vec<usize>),
    #[error("rank must be at least 1")]
    ZeroRank,
}

pub type Window = SmallVec<[u8; 8]>;

/// An element of `S_n` in one-line notation, `w(i) = window[i-1]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    window: Window,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { window: (1..=n as u8).collect() }
    }

    /// The longest element `[n, n-1, .., 1]`.
    pub fn longest(n: usize) -> Self {
        Permutation { window: (1..=n as u8).rev().collect() }
    }

    pub fn simple(n: usize, i: usize) -> Result<Self, PermError> {
        Self::identity(n).mul_simple(i)
    }

    pub fn from_window(values: &[usize]) -> Result<Self, PermError> {
        let n = values.len();
        if n == 0 {
            return Err(PermError::ZeroRank);
        }
        let mut seen = vec![false; n + 1];
        for &v in values {
            if v == 0 || v > n || seen[v] || v > u8::MAX as usize {
                return Err(PermError::NotBijection(values.to_vec()));
            }
            seen[v] = true;
        }
        Ok(Permutation { window: values.iter().map(|&v| v as u8).collect() })
    }

    /// Product `s_{a1} s_{a2} ... s_{ar}`; the word need not be reduced.
    pub fn from_word(n: usize, word: &[usize]) -> Result<Self, PermError> {
        if n == 0 {
            return Err(PermError::ZeroRank);
        }
        let mut w = Self::identity(n);
        for &i in word {
            w = w.mul_simple(i)?;
        }
        Ok(w)
    }

    /// Accepts `id`, one-line forms (`2,3,1`, `[2,3,1]`, `231`) and words
    /// (`s1 s2`, `s1s2`, `s_1*s_2`).
    pub fn parse(input: &str, n: usize) -> Result<Self, PermError> {
        let err = || PermError::Parse(input.to_string());
        let s = input.trim();
        if n == 0 {
            return Err(PermError::ZeroRank);
        }
        if s.is_empty() || s == "id" || s == "e" {
            return Ok(Self::identity(n));
        }
        if s.starts_with('s') || s.starts_with('S') {
            let mut word = Vec::new();
            for piece in s.split(['s', 'S']).skip(1) {
                let digits = piece.trim().trim_start_matches('_').trim_end_matches(['*', '.', ' ']);
                let i: usize = digits.trim().parse().map_err(|_| err())?;
                word.push(i);
            }
            return Self::from_word(n, &word);
        }
        let body = s.trim_start_matches(['[', '(']).trim_end_matches([']', ')']);
        let values: Vec<usize> = if body.contains([',', ' ']) {
            body.split([',', ' '])
                .filter(|p| !p.is_empty())
                .map(|p| p.trim().parse().map_err(|_| err()))
                .collect::<Result<_, _>>()?
        } else if body.len() == n && body.chars().all(|c| c.is_ascii_digit()) {
            body.chars().map(|c| c as usize - '0' as usize).collect()
        } else {
            return Err(err());
        };
        if values.len() != n {
            return Err(PermError::RankMismatch { left: values.len(), right: n });
        }
        Self::from_window(&values)
    }

    pub fn n(&self) -> usize {
        self.window.len()
    }

    pub fn window(&self) -> &[u8] {
        &self.window
    }

    /// `w(i)` for `1 <= i <= n`.
    pub fn at(&self, i: usize) -> usize {
        self.window[i - 1] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.window.iter().enumerate().all(|(k, &v)| v as usize == k + 1)
    }

    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        if self.n() != other.n() {
            return Err(PermError::RankMismatch { left: self.n(), right: other.n() });
        }
        Ok(Permutation { window: other.window.iter().map(|&k| self.window[k as usize - 1]).collect() })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv: Window = SmallVec::from_elem(0, self.n());
        for (k, &v) in self.window.iter().enumerate() {
            inv[v as usize - 1] = k as u8 + 1;
        }
        Permutation { window: inv }
    }

    /// Inversion count.
    pub fn length(&self) -> usize {
        let w = &self.window;
        let mut count = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Right descents: `i` with `w(i) > w(i+1)`, i.e. `l(w s_i) < l(w)`.
    pub fn descents(&self) -> Vec<usize> {
        (1..self.n()).filter(|&i| self.window[i - 1] > self.window[i]).collect()
    }

    /// Left descents: `i` with `l(s_i w) < l(w)`.
    pub fn left_descents(&self) -> Vec<usize> {
        self.inverse().descents()
    }

    pub fn has_descent(&self, i: usize) -> bool {
        self.window[i - 1] > self.window[i]
    }

    fn check_index(&self, i: usize) -> Result<(), PermError> {
        if i == 0 || i >= self.n() {
            Err(PermError::InvalidIndex { index: i, n: self.n() })
        } else {
            Ok(())
        }
    }

    /// `w * s_i`.
    pub fn mul_simple(&self, i: usize) -> Result<Permutation, PermError> {
        self.check_index(i)?;
        let mut window = self.window.clone();
        window.swap(i - 1, i);
        Ok(Permutation { window })
    }

    /// `s_i * w`.
    pub fn simple_mul(&self, i: usize) -> Result<Permutation, PermError> {
        self.check_index(i)?;
        let window = self
            .window
            .iter()
            .map(|&v| match v as usize {
                x if x == i => v + 1,
                x if x == i + 1 => v - 1,
                _ => v,
            })
            .collect();
        Ok(Permutation { window })
    }

    /// Lexicographically smallest reduced word.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut word = Vec::with_capacity(self.length());
        let mut pos: Window = self.inverse().window;
        // pos[v-1] = position of value v; left descent i iff pos[i] > pos[i+1]
        loop {
            match (1..self.n()).find(|&i| pos[i - 1] > pos[i]) {
                Some(i) => {
                    word.push(i);
                    pos.swap(i - 1, i);
                }
                None => return word,
            }
        }
    }

    /// Simple indices occurring in a reduced word: `i` lies in the support
    /// iff `w` does not stabilise `{1..i}`.
    pub fn support(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        let mut max = 0;
        for i in 1..self.n() {
            max = max.max(self.window[i - 1] as usize);
            if max > i {
                out.insert(i);
            }
        }
        out
    }

    /// Lehmer code `c_i = #{j > i : w(j) < w(i)}`.
    pub fn code(&self) -> Vec<usize> {
        let w = &self.window;
        (0..w.len()).map(|i| w[i + 1..].iter().filter(|&&v| v < w[i]).count()).collect()
    }

    /// Strong Bruhat order by the rank-matrix criterion.
    pub fn bruhat_leq(&self, other: &Permutation) -> Result<bool, PermError> {
        let n = self.n();
        if n != other.n() {
            return Err(PermError::RankMismatch { left: n, right: other.n() });
        }
        let lu = self.length();
        let lv = other.length();
        if lu > lv {
            return Ok(false);
        }
        if lu == lv {
            return Ok(self == other);
        }
        // r_w(i, k) = #{j <= i : w(j) >= k}
        let mut cu = vec![0i32; n + 2];
        let mut cv = vec![0i32; n + 2];
        for i in 0..n {
            cu[1..=self.window[i] as usize].iter_mut().for_each(|c| *c += 1);
            cv[1..=other.window[i] as usize].iter_mut().for_each(|c| *c += 1);
            if (1..=n).any(|k| cu[k] > cv[k]) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Index in `0..n!` via the factorial number system on the Lehmer code.
    pub fn rank_index(&self) -> usize {
        let code = self.code();
        let n = code.len();
        let mut idx = 0;
        for (i, c) in code.iter().enumerate() {
            idx = idx * (n - i) + c;
        }
        idx
    }

    pub fn from_rank_index(n: usize, mut idx: usize) -> Permutation {
        let mut code = vec![0; n];
        for i in (0..n).rev() {
            let base = n - i;
            code[i] = idx % base;
            idx /= base;
        }
        let mut remaining: Vec<u8> = (1..=n as u8).collect();
        let window = code.iter().map(|&c| remaining.remove(c)).collect();
        Permutation { window }
    }

    /// Canonical text: lex-min reduced word (`s1 s2`), or `id`.
    pub fn word_string(&self) -> String {
        let word = self.reduced_word();
        if word.is_empty() {
            return "id".to_string();
        }
        word.iter().map(|i| format!("s{i}")).collect::<Vec<_>>().join(" ")
    }

    pub fn one_line_string(&self) -> String {
        self.window.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
    }
}

impl Ord for Permutation {
    /// Length first, then lexicographic on the one-line window.
    fn cmp(&self, other: &Self) -> Ordering {
        self.n()
            .cmp(&other.n())
            .then_with(|| self.length().cmp(&other.length()))
            .then_with(|| self.window.cmp(&other.window))
    }
}

impl PartialOrd for Permutation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    /// Panics on rank mismatch; use [`Permutation::compose`] to handle it.
    fn mul(self, rhs: &Permutation) -> Permutation {
        self.compose(rhs).expect("permutation rank mismatch")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.word_string())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.one_line_string())
    }
}

impl FromStr for Permutation {
    type Err = PermError;

    /// One-line notation only, since a word does not determine `n`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let body = s.trim().trim_start_matches('[').trim_end_matches(']');
        let n = body.split(',').filter(|p| !p.trim().is_empty()).count();
        Permutation::parse(body, n)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.one_line_string())
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Every element of `S_n`, sorted by length and then lexicographically.
pub fn all_elements(n: usize) -> impl Iterator<Item = Permutation> {
    let total: usize = (1..=n).product();
    let mut all: Vec<Permutation> = (0..total).map(|i| Permutation::from_rank_index(n, i)).collect();
    all.sort();
    all.into_iter()
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Permutation {
        Permutation::from_window(v).unwrap()
    }

    #[test]
    fn compose_examples() {
        let s1 = Permutation::simple(3, 1).unwrap();
        let s2 = Permutation::simple(3, 2).unwrap();
        assert_eq!(&s1 * &s2, p(&[2, 3, 1]));
        assert_eq!(&s2 * &s1, p(&[3, 1, 2]));
        assert!((&s1 * &s1).is_identity());
        let w = p(&[3, 1, 2]);
        assert_eq!(&w * &Permutation::identity(3), w);
        assert!(s1.compose(&Permutation::identity(4)).is_err());
    }

    #[test]
    fn length_examples() {
        assert_eq!(p(&[3, 2, 1]).length(), 3);
        assert_eq!(Permutation::identity(5).length(), 0);
        assert_eq!(p(&[2, 3, 1]).length(), 2);
    }

    #[test]
    fn reduced_word_examples() {
        assert!(Permutation::identity(4).reduced_word().is_empty());
        assert_eq!(p(&[2, 3, 1]).reduced_word(), vec![1, 2]);
        assert_eq!(p(&[3, 2, 1]).reduced_word(), vec![1, 2, 1]);
    }

    #[test]
    fn support_examples() {
        let w = Permutation::from_word(4, &[1, 3]).unwrap();
        assert_eq!(w.support(), BTreeSet::from([1, 3]));
        assert!(Permutation::identity(3).support().is_empty());
        assert_eq!(p(&[3, 2, 1]).support(), BTreeSet::from([1, 2]));
    }

    #[test]
    fn bruhat_examples() {
        let s1 = Permutation::simple(3, 1).unwrap();
        let s2 = Permutation::simple(3, 2).unwrap();
        let s1s2 = &s1 * &s2;
        assert!(s1.bruhat_leq(&s1s2).unwrap());
        assert!(!s1.bruhat_leq(&s2).unwrap());
        for w in all_elements(3) {
            assert!(Permutation::identity(3).bruhat_leq(&w).unwrap());
        }
    }

    #[test]
    fn parse_forms() {
        let w = p(&[2, 3, 1]);
        assert_eq!(Permutation::parse("2,3,1", 3).unwrap(), w);
        assert_eq!(Permutation::parse("[2, 3, 1]", 3).unwrap(), w);
        assert_eq!(Permutation::parse("231", 3).unwrap(), w);
        assert_eq!(Permutation::parse("s1 s2", 3).unwrap(), w);
        assert_eq!(Permutation::parse("s1s2", 3).unwrap(), w);
        assert_eq!(Permutation::parse("s_1*s_2", 3).unwrap(), w);
        assert!(Permutation::parse("id", 3).unwrap().is_identity());
        assert!(Permutation::parse("s3", 3).is_err());
        assert!(Permutation::parse("2,2,1", 3).is_err());
        assert!(Permutation::parse("x1", 3).is_err());
        assert_eq!(w.to_string(), "s1 s2");
        assert_eq!(Permutation::identity(3).to_string(), "id");
    }

    #[test]
    fn rank_index_roundtrip() {
        for i in 0..120 {
            assert_eq!(Permutation::from_rank_index(5, i).rank_index(), i);
        }
    }

    #[test]
    fn all_elements_examples() {
        assert_eq!(all_elements(1).count(), 1);
        let lengths: Vec<usize> = all_elements(3).map(|w| w.length()).collect();
        assert_eq!(lengths, vec![0, 1, 1, 2, 2, 3]);
        assert_eq!(all_elements(4).count(), 24);
    }

    #[test]
    fn serde_uses_one_line() {
        let w = p(&[2, 3, 1]);
        let json = serde_json::to_string(&w).unwrap();
        assert_eq!(json, "\"2,3,1\"");
        let back: Permutation = serde_json::from_str(&json).unwrap();
        assert_eq!(back, w);
    }
}
