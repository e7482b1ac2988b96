//! Truncated symmetric algebra over a quadratic space: exact sparse
//! polynomials in the basis classes, the contraction Laplacian of the form,
//! harmonic subspaces, and the dual-class power decomposition
//! S^k = Harm^k ⊕ c·S^{k-2}.

use std::collections::BTreeMap;
use std::fmt;

use num::Zero;

use crate::error::{Error, Result};
use crate::matrix::{Matrix, RowSpace};
use crate::monomial::{sym_dim, Monomial, MonomialBasis};
use crate::quadratic_space::{dual_class, same_space, ClassVector, Space};
use crate::rat::{format_rat, rat_int, Rat};

/// A homogeneous element of S^k V in the monomial basis of the owning space.
/// Stored sparsely; zero coefficients are never kept.
#[derive(Clone, Debug)]
pub struct SymElement {
    space: Space,
    degree: usize,
    terms: BTreeMap<Monomial, Rat>,
}

impl PartialEq for SymElement {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree
            && same_space(&self.space, &other.space)
            && self.terms == other.terms
    }
}
impl Eq for SymElement {}

impl SymElement {
    pub fn zero(space: &Space, degree: usize) -> Self {
        SymElement {
            space: space.clone(),
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// The unit 1 ∈ S⁰V.
    pub fn one(space: &Space) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::one(), rat_int(1));
        SymElement {
            space: space.clone(),
            degree: 0,
            terms,
        }
    }

    /// The basis class e_i as a degree-1 element.
    pub fn variable(space: &Space, i: usize) -> Self {
        assert!(i < space.dim());
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(i), rat_int(1));
        SymElement {
            space: space.clone(),
            degree: 1,
            terms,
        }
    }

    /// The degree-1 element with the coordinates of `v`.
    pub fn linear(space: &Space, v: &ClassVector) -> Self {
        assert_eq!(v.dim(), space.dim());
        let mut el = SymElement::zero(space, 1);
        for (i, c) in v.coords.iter().enumerate() {
            el.add_term(Monomial::var(i), c.clone());
        }
        el
    }

    pub fn from_terms(space: &Space, degree: usize, terms: BTreeMap<Monomial, Rat>) -> Self {
        let mut el = SymElement::zero(space, degree);
        for (m, c) in terms {
            el.add_term(m, c);
        }
        el
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        assert_eq!(m.degree(), self.degree, "monomial degree mismatch");
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
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

    pub fn add_term_mono(&mut self, indices: &[usize], c: Rat) {
        self.add_term(
            Monomial::new(indices.iter().map(|&i| i as u16).collect()),
            c,
        );
    }

    pub fn add(&self, other: &SymElement) -> SymElement {
        assert_eq!(self.degree, other.degree, "degrees differ");
        assert!(same_space(&self.space, &other.space), "spaces differ");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &SymElement) -> SymElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> SymElement {
        self.scale(&rat_int(-1))
    }

    pub fn scale(&self, t: &Rat) -> SymElement {
        let mut out = SymElement::zero(&self.space, self.degree);
        if t.is_zero() {
            return out;
        }
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), c * t);
        }
        out
    }

    /// Commutative product in the symmetric algebra.
    pub fn mul(&self, other: &SymElement) -> Result<SymElement> {
        if !same_space(&self.space, &other.space) {
            return Err(Error::SpaceMismatch);
        }
        let mut out = SymElement::zero(&self.space, self.degree + other.degree);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.merge(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: usize) -> SymElement {
        let mut out = SymElement::one(&self.space);
        for _ in 0..k {
            out = out.mul(self).expect("same space");
        }
        out
    }

    /// Contraction of two factors with the form: on a product of classes,
    /// Δ(v₁⋯v_k) = 2 Σ_{a<b} q(v_a, v_b) · v₁⋯v̂_a⋯v̂_b⋯v_k, so that
    /// Δ(v^k) = k(k−1) q(v) v^{k−2} and Δ vanishes on powers of isotropic
    /// classes.
    pub fn laplacian(&self) -> Result<SymElement> {
        if self.degree < 2 {
            return Err(Error::DegreeTooLow {
                min: 2,
                got: self.degree,
            });
        }
        let mut out = SymElement::zero(&self.space, self.degree - 2);
        let two = rat_int(2);
        for (m, c) in &self.terms {
            let idx = m.indices();
            for a in 0..idx.len() {
                for b in a + 1..idx.len() {
                    let g = self.space.gram_entry(idx[a] as usize, idx[b] as usize);
                    if g.is_zero() {
                        continue;
                    }
                    out.add_term(m.without_pair(a, b), c * g * &two);
                }
            }
        }
        Ok(out)
    }

    /// Coefficient vector with respect to an enumerated monomial basis.
    pub fn coeffs_on(&self, basis: &MonomialBasis) -> Vec<Rat> {
        assert_eq!(basis.degree, self.degree);
        let mut v = vec![Rat::zero(); basis.len()];
        for (m, c) in &self.terms {
            v[basis.rank(m)] = c.clone();
        }
        v
    }

    pub fn from_coords(space: &Space, basis: &MonomialBasis, coords: &[Rat]) -> SymElement {
        assert_eq!(coords.len(), basis.len());
        let mut el = SymElement::zero(space, basis.degree);
        for (i, c) in coords.iter().enumerate() {
            el.add_term(basis.get(i).clone(), c.clone());
        }
        el
    }

    /// Substitutes each variable of this element's space by a class of the
    /// target space (a symmetric-power pushforward of a linear map).
    pub fn map_linear(&self, target: &Space, images: &[ClassVector]) -> Result<SymElement> {
        if images.len() != self.space.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.space.dim(),
                got: images.len(),
            });
        }
        let image_forms: Vec<SymElement> = images
            .iter()
            .map(|v| SymElement::linear(target, v))
            .collect();
        let mut out = SymElement::zero(target, self.degree);
        for (m, c) in &self.terms {
            let mut prod = SymElement::one(target);
            for &i in m.indices() {
                prod = prod.mul(&image_forms[i as usize])?;
            }
            out = out.add(&prod.scale(c));
        }
        Ok(out)
    }

    /// Serialized form: one `{ "monomial": [exponents], "coeff": "p/q" }`
    /// object per term.
    pub fn json_terms(&self) -> serde_json::Value {
        let dim = self.space.dim();
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(m, c)| {
                    serde_json::json!({
                        "monomial": m.exponents(dim),
                        "coeff": format_rat(c),
                    })
                })
                .collect(),
        )
    }
}

impl fmt::Display for SymElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mono = if m.degree() == 0 {
                String::new()
            } else {
                let exps = m.exponents(self.space.dim());
                exps.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| {
                        if e == 1 {
                            format!("e{}", i + 1)
                        } else {
                            format!("e{}^{}", i + 1, e)
                        }
                    })
                    .collect::<Vec<_>>()
                    .join("*")
            };
            let coeff = format_rat(c);
            let (sign, abs) = match coeff.strip_prefix('-') {
                Some(rest) => ("-", rest.to_string()),
                None => ("+", coeff),
            };
            if k == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", sign)?;
            }
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs == "1" {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

/// The ordered degree-k monomial basis of S^k V.
pub fn monomial_basis(space: &Space, k: usize) -> MonomialBasis {
    MonomialBasis::new(space.dim(), k)
}

/// A subspace of S^k V with a canonical reduced-echelon basis.
#[derive(Clone, Debug)]
pub struct Subspace {
    space: Space,
    degree: usize,
    basis: MonomialBasis,
    row_space: RowSpace,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree
            && same_space(&self.space, &other.space)
            && self.row_space == other.row_space
    }
}
impl Eq for Subspace {}

impl Subspace {
    pub fn from_elements(space: &Space, degree: usize, elements: &[SymElement]) -> Subspace {
        let basis = monomial_basis(space, degree);
        let rows: Vec<Vec<Rat>> = elements.iter().map(|e| e.coeffs_on(&basis)).collect();
        let row_space = RowSpace::from_vectors(rows, basis.len());
        Subspace {
            space: space.clone(),
            degree,
            basis,
            row_space,
        }
    }

    pub fn from_row_space(space: &Space, degree: usize, row_space: RowSpace) -> Subspace {
        let basis = monomial_basis(space, degree);
        assert_eq!(row_space.ambient_dim(), basis.len());
        Subspace {
            space: space.clone(),
            degree,
            basis,
            row_space,
        }
    }

    pub fn full(space: &Space, degree: usize) -> Subspace {
        let basis = monomial_basis(space, degree);
        Subspace {
            space: space.clone(),
            degree,
            row_space: RowSpace::full(basis.len()),
            basis,
        }
    }

    pub fn dim(&self) -> usize {
        self.row_space.dim()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn row_space(&self) -> &RowSpace {
        &self.row_space
    }

    pub fn elements(&self) -> Vec<SymElement> {
        (0..self.row_space.dim())
            .map(|i| {
                SymElement::from_coords(&self.space, &self.basis, self.row_space.basis().row(i))
            })
            .collect()
    }

    pub fn contains(&self, el: &SymElement) -> bool {
        el.degree() == self.degree && self.row_space.contains_vec(&el.coeffs_on(&self.basis))
    }

    pub fn join(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.degree, other.degree);
        Subspace {
            space: self.space.clone(),
            degree: self.degree,
            basis: self.basis.clone(),
            row_space: self.row_space.join(&other.row_space),
        }
    }

    pub fn intersection_dim(&self, other: &Subspace) -> usize {
        self.row_space.intersection_dim(&other.row_space)
    }
}

/// Matrix of the Laplacian S^k V → S^{k-2} V on monomial bases.
pub fn laplacian_matrix(space: &Space, k: usize) -> Matrix {
    assert!(k >= 2);
    let dom = monomial_basis(space, k);
    let cod = monomial_basis(space, k - 2);
    let mut m = Matrix::zero(cod.len(), dom.len());
    for j in 0..dom.len() {
        let el = SymElement::from_coords(space, &dom, &unit_vec(dom.len(), j));
        let image = el.laplacian().expect("degree >= 2");
        for (mono, c) in image.terms() {
            m[(cod.rank(mono), j)] = c.clone();
        }
    }
    m
}

/// Matrix of multiplication by `f` from S^k V to S^{k + deg f} V.
pub fn mul_matrix(space: &Space, f: &SymElement, k: usize) -> Matrix {
    let dom = monomial_basis(space, k);
    let cod = monomial_basis(space, k + f.degree());
    let mut m = Matrix::zero(cod.len(), dom.len());
    for j in 0..dom.len() {
        for (mono, c) in f.terms() {
            m[(cod.rank(&mono.merge(dom.get(j))), j)] = c.clone();
        }
    }
    m
}

fn unit_vec(len: usize, j: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); len];
    v[j] = rat_int(1);
    v
}

/// Kernel of the Laplacian on S^k V; all of S^k V for k < 2.
pub fn harmonic_subspace(space: &Space, k: usize) -> Subspace {
    if k < 2 {
        return Subspace::full(space, k);
    }
    let ker = laplacian_matrix(space, k).nullspace();
    Subspace::from_row_space(space, k, RowSpace::new(ker))
}

/// dim Harm^k of a d-dimensional nondegenerate space, in closed form.
pub fn harmonic_dim(d: usize, k: usize) -> usize {
    if k < 2 {
        sym_dim(d, k)
    } else {
        sym_dim(d, k) - sym_dim(d, k - 2)
    }
}

/// The unique components h_j ∈ Harm^{k-2j} with p = Σ_j c^j · h_j, where c
/// is the dual class of the form. Exists and is unique for nondegenerate q.
pub fn c_power_decompose(space: &Space, p: &SymElement) -> Vec<SymElement> {
    let k = p.degree();
    let basis_k = monomial_basis(space, k);
    let c = dual_class(space);
    let mut columns: Vec<Vec<Rat>> = Vec::new();
    let mut harm_elements: Vec<Vec<SymElement>> = Vec::new();
    for j in 0..=k / 2 {
        let harm = harmonic_subspace(space, k - 2 * j);
        let cj = c.pow(j);
        let elems = harm.elements();
        for h in &elems {
            let lifted = cj.mul(h).expect("same space");
            columns.push(lifted.coeffs_on(&basis_k));
        }
        harm_elements.push(elems);
    }
    debug_assert_eq!(columns.len(), basis_k.len());
    let mat = Matrix::from_rows(columns).transpose();
    let sol = mat
        .solve_unique(&p.coeffs_on(&basis_k))
        .expect("c-power decomposition is a bijection for nondegenerate forms");
    let mut out = Vec::new();
    let mut offset = 0;
    for (j, elems) in harm_elements.iter().enumerate() {
        let mut h = SymElement::zero(space, k - 2 * j);
        for e in elems {
            h = h.add(&e.scale(&sol[offset]));
            offset += 1;
        }
        out.push(h);
    }
    out
}

/// Echelon span of { v^k : v ∈ samples }; every sample must be isotropic.
pub fn isotropic_power_span(
    space: &Space,
    k: usize,
    samples: &[ClassVector],
) -> Result<Subspace> {
    for v in samples {
        if !space.q(v)?.is_zero() {
            return Err(Error::NotIsotropic);
        }
    }
    let elements: Vec<SymElement> = samples
        .iter()
        .map(|v| SymElement::linear(space, v).pow(k))
        .collect();
    Ok(Subspace::from_elements(space, k, &elements))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;
    use crate::quadratic_space::{sample_isotropic, QuadraticSpace};
    use crate::rat::rat_frac;

    /// Independent contraction oracle: Σ_{i,j} gram_{ij} ∂_i ∂_j computed on
    /// exponent vectors, a different code path than the pair loop.
    fn laplacian_oracle(space: &Space, p: &SymElement) -> SymElement {
        let d = space.dim();
        let mut out = SymElement::zero(space, p.degree() - 2);
        for (m, c) in p.terms() {
            let exps = m.exponents(d);
            for i in 0..d {
                for j in 0..d {
                    // ∂_i ∂_j of the monomial
                    let mut e = exps.clone();
                    if e[j] == 0 {
                        continue;
                    }
                    let factor_j = rat_int(e[j] as i64);
                    e[j] -= 1;
                    if e[i] == 0 {
                        continue;
                    }
                    let factor_i = rat_int(e[i] as i64);
                    e[i] -= 1;
                    let g = space.gram_entry(i, j);
                    out.add_term(
                        Monomial::from_exponents(&e),
                        c * &factor_i * &factor_j * g,
                    );
                }
            }
        }
        out
    }

    #[test]
    fn multiply_examples() {
        let u = presets::space_u().unwrap();
        let e1 = SymElement::variable(&u, 0);
        let e2 = SymElement::variable(&u, 1);
        let prod = e1.mul(&e2).unwrap();
        let mut expect = SymElement::zero(&u, 2);
        expect.add_term_mono(&[0, 1], rat_int(1));
        assert_eq!(prod, expect);

        // identity
        let one = SymElement::one(&u);
        assert_eq!(prod.mul(&one).unwrap(), prod);

        // c·c = 4 e1² e2² in U
        let c = dual_class(&u);
        let c2 = c.mul(&c).unwrap();
        let mut expect = SymElement::zero(&u, 4);
        expect.add_term_mono(&[0, 0, 1, 1], rat_int(4));
        assert_eq!(c2, expect);
    }

    #[test]
    fn multiply_rejects_foreign_space() {
        let u = presets::space_u().unwrap();
        let other = QuadraticSpace::new(Matrix::identity(2)).unwrap();
        let a = SymElement::variable(&u, 0);
        let b = SymElement::variable(&other, 0);
        assert_eq!(a.mul(&b).unwrap_err(), Error::SpaceMismatch);
    }

    #[test]
    fn laplacian_examples() {
        let u = presets::space_u().unwrap();
        let e1e2 = SymElement::variable(&u, 0).mul(&SymElement::variable(&u, 1)).unwrap();
        let lap = e1e2.laplacian().unwrap();
        let mut expect = SymElement::zero(&u, 0);
        expect.add_term(Monomial::one(), rat_int(2));
        assert_eq!(lap, expect, "Δ(e1 e2) = 2 on U");

        let e1sq = SymElement::variable(&u, 0).pow(2);
        assert!(e1sq.laplacian().unwrap().is_zero(), "Δ(e1²) = 0 on U");

        let e1 = SymElement::variable(&u, 0);
        assert_eq!(
            e1.laplacian().unwrap_err(),
            Error::DegreeTooLow { min: 2, got: 1 }
        );
    }

    #[test]
    fn laplacian_of_dual_class_is_twice_dim() {
        for space in [
            presets::space_u().unwrap(),
            presets::space_u_m2().unwrap(),
            presets::space_u2_m2().unwrap(),
            QuadraticSpace::new(Matrix::identity(3)).unwrap(),
        ] {
            let c = dual_class(&space);
            let lap = c.laplacian().unwrap();
            let mut expect = SymElement::zero(&space, 0);
            expect.add_term(Monomial::one(), rat_int(2 * space.dim() as i64));
            assert_eq!(lap, expect, "Δ(c) = 2·dim");
            assert_eq!(lap, laplacian_oracle(&space, &c));
        }
    }

    #[test]
    fn laplacian_matches_contraction_oracle() {
        let s = presets::space_u_m2().unwrap();
        // a messy element of S³
        let mut p = SymElement::zero(&s, 3);
        p.add_term_mono(&[0, 0, 1], rat_int(3));
        p.add_term_mono(&[0, 1, 2], rat_frac(-1, 2));
        p.add_term_mono(&[2, 2, 2], rat_frac(5, 7));
        p.add_term_mono(&[1, 1, 2], rat_int(1));
        assert_eq!(p.laplacian().unwrap(), laplacian_oracle(&s, &p));
    }

    #[test]
    fn laplacian_kills_isotropic_powers() {
        let s = presets::space_u2_m2().unwrap();
        for v in sample_isotropic(&s, 11, 6, None).unwrap() {
            let p = SymElement::linear(&s, &v).pow(4);
            assert!(p.laplacian().unwrap().is_zero());
        }
    }

    #[test]
    fn harmonic_subspace_examples() {
        let u = presets::space_u().unwrap();
        // U, k=2: {e1², e2²}
        let h2 = harmonic_subspace(&u, 2);
        let expect = Subspace::from_elements(
            &u,
            2,
            &[
                SymElement::variable(&u, 0).pow(2),
                SymElement::variable(&u, 1).pow(2),
            ],
        );
        assert_eq!(h2, expect);
        assert_eq!(h2.dim(), 2);

        // k=1 is everything
        let h1 = harmonic_subspace(&u, 1);
        assert_eq!(h1.dim(), 2);

        // U ⊕ <-2>, k=2: dim 5
        let s = presets::space_u_m2().unwrap();
        assert_eq!(harmonic_subspace(&s, 2).dim(), 5);
        assert_eq!(harmonic_dim(3, 2), 5);
    }

    #[test]
    fn harmonic_dim_closed_form_matches_kernel() {
        for space in [presets::space_u_m2().unwrap(), presets::space_u2_m2().unwrap()] {
            for k in 0..=4 {
                assert_eq!(
                    harmonic_subspace(&space, k).dim(),
                    harmonic_dim(space.dim(), k),
                    "dim {} k {}",
                    space.dim(),
                    k
                );
            }
        }
    }

    #[test]
    fn c_power_decompose_examples() {
        let u = presets::space_u().unwrap();
        let c = dual_class(&u);

        // e1 e2 = (1/2)·c, harmonic part zero
        let mut e1e2 = SymElement::zero(&u, 2);
        e1e2.add_term_mono(&[0, 1], rat_int(1));
        let comps = c_power_decompose(&u, &e1e2);
        assert_eq!(comps.len(), 2);
        assert!(comps[0].is_zero());
        let mut half = SymElement::zero(&u, 0);
        half.add_term(Monomial::one(), rat_frac(1, 2));
        assert_eq!(comps[1], half);

        // harmonic input is reproduced in the top slot
        let e1sq = SymElement::variable(&u, 0).pow(2);
        let comps = c_power_decompose(&u, &e1sq);
        assert_eq!(comps[0], e1sq);
        assert!(comps[1].is_zero());

        // reassembly for a random-ish element of S⁴
        let s = presets::space_u_m2().unwrap();
        let mut p = SymElement::zero(&s, 4);
        p.add_term_mono(&[0, 0, 1, 2], rat_int(3));
        p.add_term_mono(&[1, 1, 2, 2], rat_frac(-2, 3));
        p.add_term_mono(&[0, 1, 1, 2], rat_int(1));
        let comps = c_power_decompose(&s, &p);
        let c = dual_class(&s);
        let mut rebuilt = SymElement::zero(&s, 4);
        for (j, h) in comps.iter().enumerate() {
            rebuilt = rebuilt.add(&c.pow(j).mul(h).unwrap());
            if !h.is_zero() && h.degree() >= 2 {
                assert!(h.laplacian().unwrap().is_zero(), "component {} harmonic", j);
            }
        }
        assert_eq!(rebuilt, p);
    }

    #[test]
    fn c_multiplication_plus_harmonics_is_direct_sum() {
        for space in [presets::space_u_m2().unwrap(), presets::space_u2_m2().unwrap()] {
            let c = dual_class(&space);
            for k in 2..=4 {
                let harm = harmonic_subspace(&space, k);
                let c_part = Subspace::from_row_space(
                    &space,
                    k,
                    RowSpace::new(mul_matrix(&space, &c, k - 2).transpose()),
                );
                assert_eq!(c_part.dim(), sym_dim(space.dim(), k - 2), "c· is injective");
                assert_eq!(harm.intersection_dim(&c_part), 0);
                assert_eq!(
                    harm.dim() + c_part.dim(),
                    sym_dim(space.dim(), k),
                    "S^k = Harm^k ⊕ c·S^(k-2)"
                );
            }
        }
    }

    #[test]
    fn commutator_scalar_independent_of_element() {
        // Δ(c·p) − c·Δ(p) = κ(dim, k)·p; derive κ by expansion and check it
        // does not depend on p.
        for space in [presets::space_u().unwrap(), presets::space_u_m2().unwrap()] {
            let c = dual_class(&space);
            for k in 2..=3 {
                let basis = monomial_basis(&space, k);
                let mut kappa: Option<Rat> = None;
                for idx in 0..basis.len() {
                    let p = SymElement::from_coords(&space, &basis, &unit_vec(basis.len(), idx));
                    let lhs = c
                        .mul(&p)
                        .unwrap()
                        .laplacian()
                        .unwrap()
                        .sub(&c.mul(&p.laplacian().unwrap()).unwrap());
                    // lhs must be κ·p with κ constant across basis elements
                    let ratio = {
                        let (m0, c0) = p.terms().iter().next().unwrap();
                        lhs.terms().get(m0).cloned().unwrap_or_else(Rat::zero) / c0.clone()
                    };
                    assert_eq!(lhs, p.scale(&ratio), "commutator is scalar on p");
                    match &kappa {
                        None => kappa = Some(ratio),
                        Some(k0) => assert_eq!(*k0, ratio, "κ independent of p"),
                    }
                }
                // κ = 2·dim + 4k for this scaling of Δ
                assert_eq!(
                    kappa.unwrap(),
                    rat_int(2 * space.dim() as i64 + 4 * k as i64)
                );
            }
        }
    }

    #[test]
    fn isotropic_power_span_examples() {
        let u = presets::space_u().unwrap();
        let samples = sample_isotropic(&u, 5, 10, None).unwrap();
        let span = isotropic_power_span(&u, 3, &samples).unwrap();
        assert_eq!(span, harmonic_subspace(&u, 3), "span = Harm³ = {{e1³, e2³}}");
        assert_eq!(span.dim(), 2);

        // a single sample spans a line
        let single = isotropic_power_span(&u, 3, &samples[..1]).unwrap();
        assert_eq!(single.dim(), 1);

        // non-isotropic sample is rejected
        let bad = ClassVector::from_ints(&[1, 1]);
        assert_eq!(
            isotropic_power_span(&u, 2, &[bad]).unwrap_err(),
            Error::NotIsotropic
        );

        // rank 3, k=2, plenty of samples: span equals the harmonic subspace
        let s = presets::space_u_m2().unwrap();
        let samples = sample_isotropic(&s, 5, 8, None).unwrap();
        assert_eq!(
            isotropic_power_span(&s, 2, &samples).unwrap(),
            harmonic_subspace(&s, 2)
        );
    }

    #[test]
    fn subspace_membership_and_join() {
        let u = presets::space_u().unwrap();
        let h = harmonic_subspace(&u, 2);
        assert!(h.contains(&SymElement::variable(&u, 0).pow(2)));
        assert!(!h.contains(&dual_class(&u)));
        let full = Subspace::full(&u, 2);
        let joined = h.join(&Subspace::from_elements(&u, 2, &[dual_class(&u)]));
        assert_eq!(joined, full);
    }

    #[test]
    fn display_is_readable() {
        let u = presets::space_u().unwrap();
        let c = dual_class(&u);
        assert_eq!(c.to_string(), "2*e1*e2");
        let p = SymElement::variable(&u, 0).pow(2).sub(&c);
        assert_eq!(p.to_string(), "e1^2 - 2*e1*e2");
        assert_eq!(SymElement::zero(&u, 2).to_string(), "0");
    }
}
