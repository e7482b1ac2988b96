//! Finite symbolic model of zero-cycles on symmetric products of a pointed
//! surface: the free Q-vector space on degree-n monomials in finitely many
//! point symbols. Pushing in the marked point and the deletion
//! correspondence satisfy σ∘push − push∘σ = Id, which yields a canonical
//! splitting, an increasing-image filtration N, and an opposite filtration
//! built from kernels of the deletion operator; the latter does not depend
//! on which point is marked.

use std::collections::BTreeMap;
use std::fmt;

use num::Zero;

use crate::error::{Error, Result};
use crate::matrix::{Matrix, RowSpace};
use crate::monomial::{Monomial, MonomialBasis};
use crate::rat::{rat_int, Rat};

/// Ordered point symbols; index 0 is the default marked point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointAlphabet {
    names: Vec<String>,
}

impl PointAlphabet {
    pub fn new(names: Vec<String>) -> Result<Self> {
        if names.len() < 2 {
            return Err(Error::InvalidInput(
                "alphabet needs the marked point and at least one other".into(),
            ));
        }
        for (k, n) in names.iter().enumerate() {
            if names[..k].contains(n) {
                return Err(Error::InvalidInput(format!("duplicate point name {n:?}")));
            }
        }
        Ok(PointAlphabet { names })
    }

    /// `o, x1, …, xm`.
    pub fn with_points(m: usize) -> Self {
        let mut names = vec!["o".to_string()];
        for j in 1..=m {
            names.push(format!("x{j}"));
        }
        PointAlphabet { names }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }
}

/// A formal Q-combination of degree-`level` monomials in the point symbols.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ZeroCycle {
    num_symbols: usize,
    level: usize,
    terms: BTreeMap<Monomial, Rat>,
}

impl ZeroCycle {
    pub fn zero(num_symbols: usize, level: usize) -> Self {
        ZeroCycle {
            num_symbols,
            level,
            terms: BTreeMap::new(),
        }
    }

    /// The empty product at level 0.
    pub fn unit(num_symbols: usize) -> Self {
        let mut z = ZeroCycle::zero(num_symbols, 0);
        z.add_term(Monomial::one(), rat_int(1));
        z
    }

    /// A single point as a level-1 cycle.
    pub fn point(num_symbols: usize, idx: usize) -> Self {
        assert!(idx < num_symbols);
        let mut z = ZeroCycle::zero(num_symbols, 1);
        z.add_term(Monomial::var(idx), rat_int(1));
        z
    }

    /// A monomial cycle from symbol indices.
    pub fn from_indices(num_symbols: usize, indices: &[usize]) -> Self {
        let mut z = ZeroCycle::zero(num_symbols, indices.len());
        z.add_term(
            Monomial::new(indices.iter().map(|&i| i as u16).collect()),
            rat_int(1),
        );
        z
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn num_symbols(&self) -> usize {
        self.num_symbols
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        assert_eq!(m.degree(), self.level, "monomial level mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &ZeroCycle) -> ZeroCycle {
        assert_eq!(self.level, other.level);
        assert_eq!(self.num_symbols, other.num_symbols);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &ZeroCycle) -> ZeroCycle {
        self.add(&other.scale(&rat_int(-1)))
    }

    pub fn scale(&self, t: &Rat) -> ZeroCycle {
        let mut out = ZeroCycle::zero(self.num_symbols, self.level);
        if t.is_zero() {
            return out;
        }
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), c * t);
        }
        out
    }

    /// External product of cycles (levels add).
    pub fn mul(&self, other: &ZeroCycle) -> ZeroCycle {
        assert_eq!(self.num_symbols, other.num_symbols);
        let mut out = ZeroCycle::zero(self.num_symbols, self.level + other.level);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.merge(m2), c1 * c2);
            }
        }
        out
    }

    /// The pushforward that multiplies every monomial by the marked point.
    pub fn push_marked(&self, marked: usize) -> ZeroCycle {
        assert!(marked < self.num_symbols);
        let mut out = ZeroCycle::zero(self.num_symbols, self.level + 1);
        for (m, c) in &self.terms {
            out.add_term(m.merge(&Monomial::var(marked)), c.clone());
        }
        out
    }

    pub fn push_o(&self) -> ZeroCycle {
        self.push_marked(0)
    }

    /// The deletion correspondence: a degree-n monomial maps to the sum of
    /// its n degree-(n−1) sub-monomials, with multiplicity.
    pub fn sigma_pull(&self) -> ZeroCycle {
        assert!(self.level >= 1, "sigma_pull needs level >= 1");
        let mut out = ZeroCycle::zero(self.num_symbols, self.level - 1);
        for (m, c) in &self.terms {
            for pos in 0..m.degree() {
                out.add_term(m.without(pos), c.clone());
            }
        }
        out
    }

    pub fn coeffs_on(&self, basis: &MonomialBasis) -> Vec<Rat> {
        assert_eq!(basis.degree, self.level);
        let mut v = vec![Rat::zero(); basis.len()];
        for (m, c) in &self.terms {
            v[basis.rank(m)] = c.clone();
        }
        v
    }

    pub fn from_coords(num_symbols: usize, basis: &MonomialBasis, coords: &[Rat]) -> ZeroCycle {
        let mut z = ZeroCycle::zero(num_symbols, basis.degree);
        for (i, c) in coords.iter().enumerate() {
            z.add_term(basis.get(i).clone(), c.clone());
        }
        z
    }

    /// Splits the cycle into components (k = 0..=level) by expanding each
    /// factor as (x − o) + o around the marked point: component k carries
    /// k marked factors, lies in the image of the k-fold push, and its
    /// push-preimage is killed by the deletion operator.
    pub fn decompose(&self, marked: usize) -> Vec<ZeroCycle> {
        let n = self.level;
        let mut comps = vec![ZeroCycle::zero(self.num_symbols, n); n + 1];
        let marked_point = ZeroCycle::point(self.num_symbols, marked);
        for (m, c) in &self.terms {
            let idx = m.indices();
            for mask in 0u32..(1 << n) {
                let t: Vec<usize> = (0..n).filter(|&p| mask & (1 << p) != 0).collect();
                let k = n - t.len();
                // Π_{j∈T} (x_j − o) · o^k
                let mut poly = ZeroCycle::unit(self.num_symbols);
                for &p in &t {
                    let factor = ZeroCycle::point(self.num_symbols, idx[p] as usize)
                        .sub(&marked_point);
                    poly = poly.mul(&factor);
                }
                for _ in 0..k {
                    poly = poly.push_marked(marked);
                }
                comps[k] = comps[k].add(&poly.scale(c));
            }
        }
        comps
    }

    pub fn display(&self, alphabet: &PointAlphabet) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mono = if m.degree() == 0 {
                "1".to_string()
            } else {
                let exps = m.exponents(self.num_symbols);
                exps.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| {
                        if e == 1 {
                            alphabet.name(i).to_string()
                        } else {
                            format!("{}^{}", alphabet.name(i), e)
                        }
                    })
                    .collect::<Vec<_>>()
                    .join("*")
            };
            let coeff = crate::rat::format_rat(c);
            let (sign, abs) = match coeff.strip_prefix('-') {
                Some(rest) => ("-", rest.to_string()),
                None => ("+", coeff),
            };
            if k == 0 {
                if sign == "-" {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {} ", sign));
            }
            if abs == "1" && mono != "1" {
                out.push_str(&mono);
            } else if mono == "1" {
                out.push_str(&abs);
            } else {
                out.push_str(&format!("{abs}*{mono}"));
            }
        }
        out
    }
}

impl fmt::Display for ZeroCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // default display with generic names
        let alphabet = PointAlphabet::with_points(self.num_symbols.saturating_sub(1));
        f.write_str(&self.display(&alphabet))
    }
}

/// Symmetrized external product of level-1 degree-zero cycles.
pub fn star_product(num_symbols: usize, factors: &[ZeroCycle]) -> Result<ZeroCycle> {
    let mut out = ZeroCycle::unit(num_symbols);
    for d in factors {
        if d.level() != 1 {
            return Err(Error::WrongDegree {
                expected: 1,
                got: d.level(),
            });
        }
        let total: Rat = d.terms().values().cloned().sum();
        if !total.is_zero() {
            return Err(Error::NotDegreeZero);
        }
        out = out.mul(d);
    }
    Ok(out)
}

pub fn level_basis(num_symbols: usize, level: usize) -> MonomialBasis {
    MonomialBasis::new(num_symbols, level)
}

/// Matrix of the deletion operator from level `level` to `level − 1`.
pub fn sigma_matrix(num_symbols: usize, level: usize) -> Matrix {
    assert!(level >= 1);
    let dom = level_basis(num_symbols, level);
    let cod = level_basis(num_symbols, level - 1);
    let mut m = Matrix::zero(cod.len(), dom.len());
    for j in 0..dom.len() {
        let z = ZeroCycle::from_indices(
            num_symbols,
            &dom.get(j).indices().iter().map(|&i| i as usize).collect::<Vec<_>>(),
        );
        for (mono, c) in z.sigma_pull().terms() {
            m[(cod.rank(mono), j)] = c.clone();
        }
    }
    m
}

/// Matrix of the marked-point pushforward from level `level` to `level + 1`.
pub fn push_matrix(num_symbols: usize, level: usize, marked: usize) -> Matrix {
    let dom = level_basis(num_symbols, level);
    let cod = level_basis(num_symbols, level + 1);
    let mut m = Matrix::zero(cod.len(), dom.len());
    let mark = Monomial::var(marked);
    for j in 0..dom.len() {
        m[(cod.rank(&dom.get(j).merge(&mark)), j)] = rat_int(1);
    }
    m
}

/// Checks σ∘push − push∘σ = Id as matrices on the full level-(n−1) model.
pub fn verify_commutation(num_symbols: usize, n: usize, marked: usize) -> bool {
    assert!(n >= 2);
    let lhs = sigma_matrix(num_symbols, n).mul(&push_matrix(num_symbols, n - 1, marked));
    let rhs = push_matrix(num_symbols, n - 2, marked).mul(&sigma_matrix(num_symbols, n - 1));
    let dim = level_basis(num_symbols, n - 1).len();
    let mut diff = lhs;
    for i in 0..dim {
        for j in 0..dim {
            let v = &diff[(i, j)] - &rhs[(i, j)];
            diff[(i, j)] = v;
        }
    }
    diff == Matrix::identity(dim)
}

/// Kernel of the deletion operator at a level; at level 0 the whole
/// (one-dimensional) space by convention.
pub fn kernel_sigma(num_symbols: usize, level: usize) -> RowSpace {
    if level == 0 {
        return RowSpace::full(1);
    }
    RowSpace::new(sigma_matrix(num_symbols, level).nullspace())
}

/// Image of the k-fold marked-point push from level n−k, as a subspace of
/// the level-n model.
pub fn filtration_n(num_symbols: usize, n: usize, k: usize, marked: usize) -> RowSpace {
    assert!(k <= n);
    let dom = level_basis(num_symbols, n - k);
    let rows: Vec<Vec<Rat>> = (0..dom.len())
        .map(|j| {
            let mut z = ZeroCycle::from_indices(
                num_symbols,
                &dom.get(j).indices().iter().map(|&i| i as usize).collect::<Vec<_>>(),
            );
            for _ in 0..k {
                z = z.push_marked(marked);
            }
            z.coeffs_on(&level_basis(num_symbols, n))
        })
        .collect();
    RowSpace::from_vectors(rows, level_basis(num_symbols, n).len())
}

/// The k-th component space of the canonical splitting: the k-fold push of
/// the deletion kernel at level n−k.
pub fn component_space(num_symbols: usize, n: usize, k: usize, marked: usize) -> RowSpace {
    assert!(k <= n);
    let ker = kernel_sigma(num_symbols, n - k);
    let level_nk = level_basis(num_symbols, n - k);
    let rows: Vec<Vec<Rat>> = (0..ker.dim())
        .map(|r| {
            let mut z = ZeroCycle::from_coords(num_symbols, &level_nk, ker.basis().row(r));
            for _ in 0..k {
                z = z.push_marked(marked);
            }
            z.coeffs_on(&level_basis(num_symbols, n))
        })
        .collect();
    RowSpace::from_vectors(rows, level_basis(num_symbols, n).len())
}

/// The opposite filtration: the sum of component spaces with at most n−i
/// marked factors. Decreasing in i; independent of the marked point.
pub fn filtration_fbb(num_symbols: usize, n: usize, i: usize, marked: usize) -> RowSpace {
    let ambient = level_basis(num_symbols, n).len();
    let mut total = RowSpace::from_vectors(Vec::new(), ambient);
    if i > n {
        return total;
    }
    for k in 0..=(n - i) {
        total = total.join(&component_space(num_symbols, n, k, marked));
    }
    total
}

/// Matrix of the projector onto the k-th component of the splitting.
pub fn projector_matrix(num_symbols: usize, n: usize, k: usize, marked: usize) -> Matrix {
    let basis = level_basis(num_symbols, n);
    let mut m = Matrix::zero(basis.len(), basis.len());
    for j in 0..basis.len() {
        let z = ZeroCycle::from_indices(
            num_symbols,
            &basis.get(j).indices().iter().map(|&i| i as usize).collect::<Vec<_>>(),
        );
        let comp = &z.decompose(marked)[k];
        for (mono, c) in comp.terms() {
            m[(basis.rank(mono), j)] = c.clone();
        }
    }
    m
}
