//! Packed integer polynomials in `x1..xn` (`n <= 8`).
//!
//! A monomial is a `u64` with one byte per variable and `x1` in the most
//! significant byte, so integer order on the packed word is lexicographic
//! order with `x1 > x2 > .. > xn`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use crate::permgroup::{all_elements, Permutation};

pub const MAX_RANK: usize = 8;

pub type Mono = u64;

#[inline]
pub fn shift(i: usize) -> u32 {
    (8 * (MAX_RANK - i)) as u32
}

#[inline]
pub fn exp(m: Mono, i: usize) -> u32 {
    ((m >> shift(i)) & 0xff) as u32
}

#[inline]
pub fn unit(i: usize, e: u32) -> Mono {
    (e as u64) << shift(i)
}

pub fn pack(exps: &[u32]) -> Mono {
    exps.iter().enumerate().map(|(k, &e)| unit(k + 1, e)).sum()
}

pub fn unpack(m: Mono, n: usize) -> Vec<u32> {
    (1..=n).map(|i| exp(m, i)).collect()
}

/// Sparse integer polynomial keyed by packed monomial.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct XPoly {
    pub terms: BTreeMap<Mono, i128>,
}

impl XPoly {
    pub fn one() -> Self {
        XPoly { terms: BTreeMap::from([(0, 1)]) }
    }

    pub fn monomial(m: Mono, c: i128) -> Self {
        let mut p = XPoly::default();
        p.add_term(m, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Mono, c: i128) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry(m).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&m);
        }
    }

    pub fn add_scaled(&mut self, other: &XPoly, c: i128) {
        for (&m, &d) in &other.terms {
            self.add_term(m, c * d);
        }
    }

    pub fn mul(&self, other: &XPoly) -> XPoly {
        let mut acc: HashMap<Mono, i128> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (&a, &ca) in &self.terms {
            for (&b, &cb) in &other.terms {
                *acc.entry(a + b).or_insert(0) += ca * cb;
            }
        }
        from_map(acc)
    }

    /// `∂_i`, exact on each monomial.
    pub fn divided_difference(&self, i: usize) -> XPoly {
        let mut acc: HashMap<Mono, i128> = HashMap::new();
        for (&m, &c) in &self.terms {
            let a = exp(m, i);
            let b = exp(m, i + 1);
            if a == b {
                continue;
            }
            let rest = m - unit(i, a) - unit(i + 1, b);
            let (hi, lo, sign) = if a > b { (a, b, 1) } else { (b, a, -1) };
            for j in 0..hi - lo {
                let mono = rest + unit(i, hi - 1 - j) + unit(i + 1, lo + j);
                *acc.entry(mono).or_insert(0) += sign * c;
            }
        }
        from_map(acc)
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|&m| (0..MAX_RANK).map(|k| ((m >> (8 * k)) & 0xff) as u32).sum()).max()
    }
}

fn from_map(acc: HashMap<Mono, i128>) -> XPoly {
    XPoly { terms: acc.into_iter().filter(|&(_, c)| c != 0).collect() }
}

/// Schubert polynomials of `S_n` and the normal form modulo the ideal `J`
/// of positive-degree symmetric polynomials.
pub struct SchubertTable {
    pub n: usize,
    pub perms: Vec<Permutation>,
    pub polys: Vec<XPoly>,
    index: HashMap<Permutation, usize>,
    by_code: HashMap<Mono, usize>,
    /// `relations[i] = x_i^{n-i+1} - h_{n-i+1}(x_1..x_i)`, indexed from 1.
    relations: Vec<Vec<(Mono, i128)>>,
}

impl SchubertTable {
    pub fn build(n: usize) -> SchubertTable {
        assert!((1..=MAX_RANK).contains(&n), "rank {n} outside 1..={MAX_RANK}");
        let perms: Vec<Permutation> = all_elements(n).collect();
        let index: HashMap<Permutation, usize> = perms.iter().enumerate().map(|(k, w)| (w.clone(), k)).collect();
        let mut polys: Vec<Option<XPoly>> = vec![None; perms.len()];
        let w0 = Permutation::longest(n);
        let stair: Vec<u32> = (0..n).map(|k| (n - 1 - k) as u32).collect();
        polys[index[&w0]] = Some(XPoly::monomial(pack(&stair), 1));
        // perms are sorted by length, so walking backwards sees w s_i before w
        for k in (0..perms.len()).rev() {
            if polys[k].is_some() {
                continue;
            }
            let w = &perms[k];
            let i = (1..n).find(|&i| !w.has_descent(i)).expect("non-maximal element has an ascent");
            let up = w.mul_simple(i).expect("valid index");
            let parent = polys[index[&up]].as_ref().expect("longer element computed first");
            polys[k] = Some(parent.divided_difference(i));
        }
        let polys: Vec<XPoly> = polys.into_iter().map(|p| p.expect("filled")).collect();
        let by_code = perms
            .iter()
            .enumerate()
            .map(|(k, w)| {
                let code: Vec<u32> = w.code().iter().map(|&c| c as u32).collect();
                (pack(&code), k)
            })
            .collect();
        let mut relations = vec![Vec::new(); n + 1];
        for (i, rel) in relations.iter_mut().enumerate().skip(1) {
            let k = (n - i + 1) as u32;
            for mono in monomials_of_degree(i, k) {
                if mono != unit(i, k) {
                    rel.push((mono, -1));
                }
            }
        }
        SchubertTable { n, perms, polys, index, by_code, relations }
    }

    pub fn len(&self) -> usize {
        self.perms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perms.is_empty()
    }

    pub fn index_of(&self, w: &Permutation) -> usize {
        self.index[w]
    }

    pub fn poly(&self, w: &Permutation) -> &XPoly {
        &self.polys[self.index[w]]
    }

    /// Normal form modulo `J`: every surviving monomial satisfies
    /// `deg_{x_i} <= n - i`.
    pub fn reduce(&self, f: &XPoly) -> XPoly {
        let n = self.n;
        let mut cur: HashMap<Mono, i128> = f.terms.iter().map(|(&m, &c)| (m, c)).collect();
        for i in (1..=n).rev() {
            let cap = (n - i) as u32;
            let lead = unit(i, cap + 1);
            loop {
                let bad: Vec<Mono> = cur.keys().copied().filter(|&m| exp(m, i) > cap).collect();
                if bad.is_empty() {
                    break;
                }
                for m in bad {
                    // earlier steps in this pass may have changed this coefficient
                    let Some(c) = cur.remove(&m) else { continue };
                    let base = m - lead;
                    for &(r, rc) in &self.relations[i] {
                        let e = cur.entry(base + r).or_insert(0);
                        *e += c * rc;
                    }
                }
                cur.retain(|_, c| *c != 0);
            }
        }
        from_map(cur)
    }

    /// Coefficients of `f mod J` in the Schubert basis, as
    /// `(table index, coefficient)` sorted by index.
    pub fn expand(&self, f: &XPoly) -> Vec<(usize, i128)> {
        let mut g = self.reduce(f);
        let mut out = Vec::new();
        // the lex-smallest monomial of S_w is x^{code(w)}
        while let Some((&m, &c)) = g.terms.first_key_value() {
            let k = *self.by_code.get(&m).expect("normal form monomial is a Lehmer code");
            out.push((k, c));
            g.add_scaled(&self.polys[k], -c);
        }
        out.sort_unstable();
        out
    }
}

/// All monomials of total degree `k` in `x_1..x_m`.
fn monomials_of_degree(m: usize, k: u32) -> Vec<Mono> {
    fn rec(i: usize, m: usize, left: u32, acc: Mono, out: &mut Vec<Mono>) {
        if i == m {
            out.push(acc + unit(i, left));
            return;
        }
        for e in 0..=left {
            rec(i + 1, m, left - e, acc + unit(i, e), out);
        }
    }
    let mut out = Vec::new();
    rec(1, m, k, 0, &mut out);
    out
}

/// Shared per-rank table.
pub fn table(n: usize) -> Arc<SchubertTable> {
    static TABLES: OnceLock<Mutex<HashMap<usize, Arc<SchubertTable>>>> = OnceLock::new();
    let tables = TABLES.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = tables.lock().expect("table lock").get(&n) {
        return Arc::clone(t);
    }
    let built = Arc::new(SchubertTable::build(n));
    let mut guard = tables.lock().expect("table lock");
    Arc::clone(guard.entry(n).or_insert(built))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> XPoly {
        XPoly::monomial(unit(i, 1), 1)
    }

    #[test]
    fn small_schubert_polynomials() {
        let t = table(3);
        let p = |v: &[usize]| Permutation::from_window(v).unwrap();
        assert_eq!(t.poly(&p(&[1, 2, 3])), &XPoly::one());
        assert_eq!(t.poly(&p(&[2, 1, 3])), &x(1));
        let mut s132 = x(1);
        s132.add_scaled(&x(2), 1);
        assert_eq!(t.poly(&p(&[1, 3, 2])), &s132);
        assert_eq!(t.poly(&p(&[3, 1, 2])), &x(1).mul(&x(1)));
        assert_eq!(t.poly(&p(&[2, 3, 1])), &x(1).mul(&x(2)));
    }

    #[test]
    fn reduction_kills_symmetric_functions() {
        let t = table(3);
        let mut e1 = x(1);
        e1.add_scaled(&x(2), 1);
        e1.add_scaled(&x(3), 1);
        assert!(t.reduce(&e1).is_zero());
        let x1cubed = x(1).mul(&x(1)).mul(&x(1));
        assert!(t.reduce(&x1cubed).is_zero());
    }

    #[test]
    fn expansion_of_x1_squared() {
        let t = table(3);
        let e = t.expand(&x(1).mul(&x(1)));
        let w = Permutation::from_window(&[3, 1, 2]).unwrap();
        assert_eq!(e, vec![(t.index_of(&w), 1)]);
    }
}
