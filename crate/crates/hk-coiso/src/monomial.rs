//! Degree-k monomials as sorted index multisets, with graded-lex enumeration.
//!
//! A monomial over `s` symbols is the multiset of its factor indices, stored
//! as a nondecreasing vector. Within a fixed degree the derived `Ord` is the
//! graded-lex order used everywhere for bases and canonical output.

use std::collections::HashMap;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    pub fn new(mut indices: Vec<u16>) -> Self {
        indices.sort_unstable();
        Monomial(indices)
    }

    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(i: usize) -> Self {
        Monomial(vec![i as u16])
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn indices(&self) -> &[u16] {
        &self.0
    }

    /// Product of two monomials (multiset union).
    pub fn merge(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            if self.0[i] <= other.0[j] {
                out.push(self.0[i]);
                i += 1;
            } else {
                out.push(other.0[j]);
                j += 1;
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// Monomial with the factors at positions `a` and `b` removed (a < b).
    pub fn without_pair(&self, a: usize, b: usize) -> Monomial {
        debug_assert!(a < b && b < self.0.len());
        let mut v = Vec::with_capacity(self.0.len() - 2);
        for (k, &x) in self.0.iter().enumerate() {
            if k != a && k != b {
                v.push(x);
            }
        }
        Monomial(v)
    }

    /// Monomial with the factor at position `a` removed.
    pub fn without(&self, a: usize) -> Monomial {
        let mut v = self.0.clone();
        v.remove(a);
        Monomial(v)
    }

    pub fn exponents(&self, num_symbols: usize) -> Vec<u32> {
        let mut e = vec![0u32; num_symbols];
        for &i in &self.0 {
            e[i as usize] += 1;
        }
        e
    }

    pub fn from_exponents(exps: &[u32]) -> Monomial {
        let mut v = Vec::new();
        for (i, &e) in exps.iter().enumerate() {
            for _ in 0..e {
                v.push(i as u16);
            }
        }
        Monomial(v)
    }
}

/// All degree-`degree` monomials over `num_symbols` symbols in graded-lex
/// order; the count is C(num_symbols + degree - 1, degree).
pub fn enumerate_monomials(num_symbols: usize, degree: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(degree);
    fn rec(out: &mut Vec<Monomial>, cur: &mut Vec<u16>, from: usize, left: usize, n: usize) {
        if left == 0 {
            out.push(Monomial(cur.clone()));
            return;
        }
        for i in from..n {
            cur.push(i as u16);
            rec(out, cur, i, left - 1, n);
            cur.pop();
        }
    }
    rec(&mut out, &mut cur, 0, degree, num_symbols);
    out
}

/// An enumerated monomial basis with O(1) rank lookup.
#[derive(Clone, Debug)]
pub struct MonomialBasis {
    list: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    pub num_symbols: usize,
    pub degree: usize,
}

impl MonomialBasis {
    pub fn new(num_symbols: usize, degree: usize) -> Self {
        let list = enumerate_monomials(num_symbols, degree);
        let index = list
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        MonomialBasis {
            list,
            index,
            num_symbols,
            degree,
        }
    }

    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }

    pub fn get(&self, i: usize) -> &Monomial {
        &self.list[i]
    }

    pub fn rank(&self, m: &Monomial) -> usize {
        self.index[m]
    }

    pub fn iter(&self) -> impl Iterator<Item = &Monomial> {
        self.list.iter()
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= (n - i) as u128;
        den *= (i + 1) as u128;
    }
    (num / den) as usize
}

/// dim S^k of an s-dimensional space.
pub fn sym_dim(s: usize, k: usize) -> usize {
    binomial(s + k.saturating_sub(1), k)
}
