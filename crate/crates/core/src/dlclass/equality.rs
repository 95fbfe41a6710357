use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use rayon::prelude::*;

use super::{class_y_ss, DlError};
use crate::permgroup::{all_elements, Permutation};
use crate::schubert::FlagRing;

/// Why the members of a group share a class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Explanation {
    /// Connected by `w ↦ w^{-1}` alone.
    Inverse,
    /// Connected by `ab ↦ ba` for `supp(a) ∩ supp(b) = ∅` alone.
    DisjointSupport,
    /// Connected only when both moves are combined.
    Mixed,
    /// Not connected by either move.
    Exceptional,
}

impl Explanation {
    pub fn as_str(self) -> &'static str {
        match self {
            Explanation::Inverse => "inverse",
            Explanation::DisjointSupport => "disjoint-support",
            Explanation::Mixed => "mixed",
            Explanation::Exceptional => "exceptional",
        }
    }
}

impl fmt::Display for Explanation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Explanation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "inverse" => Ok(Explanation::Inverse),
            "disjoint-support" => Ok(Explanation::DisjointSupport),
            "mixed" => Ok(Explanation::Mixed),
            "exceptional" => Ok(Explanation::Exceptional),
            other => Err(format!("unknown explanation {other:?}")),
        }
    }
}

/// Elements of `S_n` (at least two) with identical `[Y_{w,s}]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EqualityGroup {
    pub members: Vec<Permutation>,
    pub explanation: Explanation,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(size: usize) -> Self {
        UnionFind { parent: (0..size).collect() }
    }

    fn find(&mut self, mut a: usize) -> usize {
        while self.parent[a] != a {
            self.parent[a] = self.parent[self.parent[a]];
            a = self.parent[a];
        }
        a
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    fn connected(&mut self, items: &[usize]) -> bool {
        let root = self.find(items[0]);
        items.iter().all(|&i| self.find(i) == root)
    }
}

type ClassKey = Vec<(Permutation, BigRational)>;

/// All nontrivial groups, in (length, one-line) order of their first member.
pub fn equality_classes(ring: &FlagRing) -> Result<Vec<EqualityGroup>, DlError> {
    equality_classes_streaming(ring, |_| {})
}

/// As [`equality_classes`], calling `emit` as soon as each group is known.
/// Classes are homogeneous of degree `l(w)`, so groups are settled one
/// length at a time.
pub fn equality_classes_streaming(
    ring: &FlagRing,
    mut emit: impl FnMut(&EqualityGroup),
) -> Result<Vec<EqualityGroup>, DlError> {
    let n = ring.n();
    let elements: Vec<Permutation> = all_elements(n).collect();
    let index: HashMap<&Permutation, usize> = elements.iter().enumerate().map(|(k, w)| (w, k)).collect();
    let supports: Vec<_> = elements.iter().map(|w| w.support()).collect();

    let mut by_inverse = UnionFind::new(elements.len());
    let mut by_exchange = UnionFind::new(elements.len());
    let mut by_both = UnionFind::new(elements.len());
    for (k, w) in elements.iter().enumerate() {
        let inv = index[&w.inverse()];
        by_inverse.union(k, inv);
        by_both.union(k, inv);
        let lw = w.length();
        for (j, a) in elements.iter().enumerate().take_while(|(_, a)| a.length() <= lw) {
            let b = &a.inverse() * w;
            if a.length() + b.length() != lw {
                continue;
            }
            let kb = index[&b];
            if supports[j].is_disjoint(&supports[kb]) {
                let other = index[&(&b * a)];
                by_exchange.union(k, other);
                by_both.union(k, other);
            }
        }
    }

    let mut out = Vec::new();
    let mut start = 0;
    while start < elements.len() {
        let len = elements[start].length();
        let end = start + elements[start..].iter().take_while(|w| w.length() == len).count();
        let keys: Vec<ClassKey> = elements[start..end]
            .par_iter()
            .map(|w| {
                let v = class_y_ss(ring, w)?;
                Ok(v.entries().map(|(a, c)| (a.clone(), c.coeff(0))).collect())
            })
            .collect::<Result<_, DlError>>()?;
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        let mut first_of: HashMap<&ClassKey, usize> = HashMap::new();
        for (offset, key) in keys.iter().enumerate() {
            let k = start + offset;
            let leader = *first_of.entry(key).or_insert(k);
            groups.entry(leader).or_default().push(k);
        }
        for k in start..end {
            let leader = first_of[&keys[k - start]];
            let root = by_both.find(k);
            let root_leader = first_of[&keys[root - start]];
            if leader != root_leader {
                return Err(DlError::ClosureViolation(format!(
                    "{} and {} are related by the proven moves but have different classes",
                    elements[k], elements[root]
                )));
            }
        }
        for members in groups.into_values().filter(|m| m.len() > 1) {
            let explanation = if by_inverse.connected(&members) {
                Explanation::Inverse
            } else if by_exchange.connected(&members) {
                Explanation::DisjointSupport
            } else if by_both.connected(&members) {
                Explanation::Mixed
            } else {
                Explanation::Exceptional
            };
            let group = EqualityGroup { members: members.iter().map(|&k| elements[k].clone()).collect(), explanation };
            emit(&group);
            out.push(group);
        }
        start = end;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_three_has_one_group() {
        let ring = FlagRing::new(3).unwrap();
        let groups = equality_classes(&ring).unwrap();
        assert_eq!(groups.len(), 1);
        let names: Vec<String> = groups[0].members.iter().map(|w| w.to_string()).collect();
        assert_eq!(names, vec!["s1 s2", "s2 s1"]);
        assert_eq!(groups[0].explanation, Explanation::Inverse);
    }

    #[test]
    fn rank_two_has_none() {
        let ring = FlagRing::new(2).unwrap();
        assert!(equality_classes(&ring).unwrap().is_empty());
    }
}
