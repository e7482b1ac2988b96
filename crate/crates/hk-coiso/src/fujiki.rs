//! Polarized top-degree integration on S^{2n}V.
//!
//! The functional is the full polarization of λ ↦ μ·q(λ)^n: on 2n classes
//! it sums q-products over perfect matchings, normalized so that the
//! diagonal value is exactly μ·q(λ)^n. Linear extension over monomials
//! integrates any element of S^{2n}V, which makes the pairing
//! (p, r) ↦ ∫ p·r on S^aV × S^{2n-a}V computable; its kernels recover the
//! degree-bounded injectivity of the algebra generated in degree two and
//! the harmonic kernel in degree n+1.

use std::sync::OnceLock;

use num::Zero;
use rand::Rng;
use rand::SeedableRng;

use crate::error::{Error, Result};
use crate::matrix::{Matrix, RowSpace};
use crate::monomial::{Monomial, MonomialBasis};
use crate::quadratic_space::{dual_class, same_space, ClassVector, Space, SplitSpace};
use crate::rat::{rat_int, Rat};
use crate::sym_algebra::{monomial_basis, SymElement, Subspace};

/// Top-degree integration functional on a 2n-dimensional model with
/// constant μ ≠ 0.
#[derive(Debug)]
pub struct IntegrationFunctional {
    space: Space,
    n: usize,
    mu: Rat,
    table: OnceLock<(MonomialBasis, Vec<Rat>)>,
}

impl IntegrationFunctional {
    pub fn new(space: &Space, n: usize, mu: Rat) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("n must be positive".into()));
        }
        if mu.is_zero() {
            return Err(Error::InvalidInput("mu must be nonzero".into()));
        }
        Ok(IntegrationFunctional {
            space: space.clone(),
            n,
            mu,
            table: OnceLock::new(),
        })
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mu(&self) -> &Rat {
        &self.mu
    }

    /// Full polarization of λ ↦ μ·q(λ)^n: a matching sum over the 2n
    /// arguments divided by (2n−1)!!, so the diagonal value is μ·q(λ)^n.
    pub fn integrate_vectors(&self, vectors: &[ClassVector]) -> Result<Rat> {
        if vectors.len() != 2 * self.n {
            return Err(Error::ArityMismatch {
                expected: 2 * self.n,
                got: vectors.len(),
            });
        }
        let mut pairings = Matrix::zero(vectors.len(), vectors.len());
        for i in 0..vectors.len() {
            for j in i..vectors.len() {
                let q = self.space.pair(&vectors[i], &vectors[j])?;
                pairings[(i, j)] = q.clone();
                pairings[(j, i)] = q;
            }
        }
        let positions: Vec<usize> = (0..vectors.len()).collect();
        let sum = matching_sum(&positions, &|i, j| pairings[(i, j)].clone());
        Ok(&self.mu * sum / double_factorial_odd(self.n))
    }

    fn monomial_table(&self) -> &(MonomialBasis, Vec<Rat>) {
        self.table.get_or_init(|| {
            let basis = monomial_basis(&self.space, 2 * self.n);
            let norm = double_factorial_odd(self.n);
            let values = basis
                .iter()
                .map(|m| {
                    let idx = m.indices();
                    let positions: Vec<usize> = (0..idx.len()).collect();
                    let sum = matching_sum(&positions, &|a, b| {
                        self.space
                            .gram_entry(idx[a] as usize, idx[b] as usize)
                            .clone()
                    });
                    &self.mu * sum / norm.clone()
                })
                .collect();
            (basis, values)
        })
    }

    /// The integral of a monomial of degree 2n.
    pub fn integrate_monomial(&self, m: &Monomial) -> Result<Rat> {
        if m.degree() != 2 * self.n {
            return Err(Error::WrongDegree {
                expected: 2 * self.n,
                got: m.degree(),
            });
        }
        let (basis, values) = self.monomial_table();
        Ok(values[basis.rank(m)].clone())
    }

    /// Linear extension of the polarized integral over S^{2n}V.
    pub fn integrate(&self, p: &SymElement) -> Result<Rat> {
        if !same_space(&self.space, p.space()) {
            return Err(Error::SpaceMismatch);
        }
        if p.degree() != 2 * self.n {
            return Err(Error::WrongDegree {
                expected: 2 * self.n,
                got: p.degree(),
            });
        }
        let (basis, values) = self.monomial_table();
        let mut total = Rat::zero();
        for (m, c) in p.terms() {
            total += c * &values[basis.rank(m)];
        }
        Ok(total)
    }

    /// The constant μ_i with ∫ c^i·λ^{2n−2i} = μ_i·q(λ)^{n−i}, determined at
    /// one anisotropic λ and verified at three more; μ_0 = μ.
    pub fn mu_i(&self, i: usize) -> Result<Rat> {
        if i > self.n {
            return Err(Error::InvalidInput(format!(
                "mu_i needs 0 <= i <= n, got {i}"
            )));
        }
        let c_pow = dual_class(&self.space).pow(i);
        let value_at = |lambda: &ClassVector| -> Result<Rat> {
            let p = c_pow
                .mul(&SymElement::linear(&self.space, lambda).pow(2 * (self.n - i)))
                .expect("same space");
            self.integrate(&p)
        };
        let base = anisotropic_vector(&self.space);
        let q_base = self.space.q(&base)?;
        let mu_i = value_at(&base)? / num::pow::pow(q_base, self.n - i);

        // verify the defining identity at further sample vectors
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x00F5_1A11 + i as u64);
        let mut checked = 0;
        while checked < 3 {
            let lambda = ClassVector::from_ints(
                &(0..self.space.dim())
                    .map(|_| rng.random_range(-3..=3))
                    .collect::<Vec<_>>(),
            );
            let q = self.space.q(&lambda)?;
            if q.is_zero() {
                continue;
            }
            if value_at(&lambda)? != &mu_i * num::pow::pow(q, self.n - i) {
                return Err(Error::InconsistentConstant);
            }
            checked += 1;
        }
        Ok(mu_i)
    }

    /// ∫ α^{n−i+1} · β^{n−1} · P for a degree-i element P of the ambient
    /// space of `split`.
    pub fn fujiki_evaluate(
        &self,
        split: &SplitSpace,
        p: &SymElement,
        alpha: &ClassVector,
        beta: &ClassVector,
    ) -> Result<Rat> {
        if !same_space(&self.space, &split.ambient) || !same_space(&self.space, p.space()) {
            return Err(Error::SpaceMismatch);
        }
        let i = p.degree();
        if i > self.n {
            return Err(Error::WrongDegree {
                expected: self.n,
                got: i,
            });
        }
        let a = SymElement::linear(&self.space, alpha).pow(self.n - i + 1);
        let b = SymElement::linear(&self.space, beta).pow(self.n - 1);
        let prod = a.mul(&b)?.mul(p)?;
        self.integrate(&prod)
    }

    /// Matrix of (p, r) ↦ ∫ p·r on the monomial bases of S^aV × S^{2n−a}V.
    pub fn gorenstein_pairing(&self, a: usize) -> Result<Matrix> {
        if a > 2 * self.n {
            return Err(Error::WrongDegree {
                expected: 2 * self.n,
                got: a,
            });
        }
        let left = monomial_basis(&self.space, a);
        let right = monomial_basis(&self.space, 2 * self.n - a);
        let (basis, values) = self.monomial_table();
        let mut m = Matrix::zero(left.len(), right.len());
        for r in 0..left.len() {
            for c in 0..right.len() {
                m[(r, c)] = values[basis.rank(&left.get(r).merge(right.get(c)))].clone();
            }
        }
        Ok(m)
    }

    /// Left kernel of the Gorenstein pairing on S^aV, as a subspace.
    pub fn gorenstein_left_kernel(&self, a: usize) -> Result<Subspace> {
        let pairing = self.gorenstein_pairing(a)?;
        let kernel = pairing.transpose().nullspace();
        Ok(Subspace::from_row_space(
            &self.space,
            a,
            RowSpace::new(kernel),
        ))
    }
}

/// Sum over perfect matchings of the positions, of the product of pairings.
fn matching_sum(positions: &[usize], pair: &impl Fn(usize, usize) -> Rat) -> Rat {
    if positions.is_empty() {
        return rat_int(1);
    }
    let first = positions[0];
    let rest = &positions[1..];
    let mut total = Rat::zero();
    for (k, &partner) in rest.iter().enumerate() {
        let weight = pair(first, partner);
        if weight.is_zero() {
            continue;
        }
        let mut remaining = Vec::with_capacity(rest.len() - 1);
        remaining.extend_from_slice(&rest[..k]);
        remaining.extend_from_slice(&rest[k + 1..]);
        total += weight * matching_sum(&remaining, pair);
    }
    total
}

/// (2n−1)!! as a rational.
fn double_factorial_odd(n: usize) -> Rat {
    let mut v: i64 = 1;
    let mut k: i64 = 2 * n as i64 - 1;
    while k > 1 {
        v *= k;
        k -= 2;
    }
    rat_int(v)
}

/// A deterministic vector with q(λ) ≠ 0: a basis vector when one works,
/// otherwise a sum of two.
fn anisotropic_vector(space: &Space) -> ClassVector {
    for i in 0..space.dim() {
        if !space.gram_entry(i, i).is_zero() {
            return ClassVector::basis_vector(space.dim(), i);
        }
    }
    for i in 0..space.dim() {
        for j in i + 1..space.dim() {
            if !space.gram_entry(i, j).is_zero() {
                let v = ClassVector::basis_vector(space.dim(), i)
                    .add(&ClassVector::basis_vector(space.dim(), j));
                debug_assert!(!space.q(&v).unwrap().is_zero());
                return v;
            }
        }
    }
    unreachable!("a nondegenerate form is nonzero on some basis vector or pair sum")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;
    use crate::quadratic_space::sample_isotropic;
    use crate::sym_algebra::harmonic_subspace;

    fn seeded_vectors(space: &Space, seed: u64, count: usize) -> Vec<ClassVector> {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        (0..count)
            .map(|_| {
                ClassVector::from_ints(
                    &(0..space.dim())
                        .map(|_| rng.random_range(-5..=5))
                        .collect::<Vec<_>>(),
                )
            })
            .collect()
    }

    /// Brute-force polarization oracle: expand ∫(λ1+…+λ2n)^{2n} style
    /// diagonal evaluations are circular, so instead expand the product of
    /// linear forms into monomials and integrate monomial-by-monomial with
    /// an independently coded matching enumeration (bitmask, not recursion).
    fn matching_sum_bitmask(indices: &[u16], gram_pair: &impl Fn(usize, usize) -> Rat) -> Rat {
        // enumerate matchings: repeatedly match the lowest unused position
        let k = indices.len();
        fn rec(
            used: u32,
            k: usize,
            indices: &[u16],
            gram_pair: &impl Fn(usize, usize) -> Rat,
        ) -> Rat {
            let first = match (0..k).find(|&i| used & (1 << i) == 0) {
                Some(f) => f,
                None => return rat_int(1),
            };
            let mut total = Rat::zero();
            for j in first + 1..k {
                if used & (1 << j) != 0 {
                    continue;
                }
                let w = gram_pair(indices[first] as usize, indices[j] as usize);
                total += w * rec(used | (1 << first) | (1 << j), k, indices, gram_pair);
            }
            total
        }
        rec(0, k, indices, gram_pair)
    }

    #[test]
    fn diagonal_contract_on_random_vectors() {
        for (name, n) in [("u", 1usize), ("u-m2", 2), ("u2-m2", 2), ("u2-m2", 3)] {
            let space = presets::space(name).unwrap();
            let f = IntegrationFunctional::new(&space, n, rat_int(1)).unwrap();
            for lambda in seeded_vectors(&space, 42, 20) {
                let vs = vec![lambda.clone(); 2 * n];
                let q = space.q(&lambda).unwrap();
                assert_eq!(
                    f.integrate_vectors(&vs).unwrap(),
                    num::pow::pow(q.clone(), n),
                    "∫λ^(2n) = q(λ)^n on {name}, n={n}"
                );
                // and through the monomial expansion path
                let p = SymElement::linear(&space, &lambda).pow(2 * n);
                assert_eq!(f.integrate(&p).unwrap(), num::pow::pow(q, n));
            }
        }
    }

    #[test]
    fn isotropic_diagonal_vanishes() {
        let space = presets::space_u2_m2().unwrap();
        let f = IntegrationFunctional::new(&space, 2, rat_int(1)).unwrap();
        for v in sample_isotropic(&space, 1, 5, None).unwrap() {
            let vs = vec![v.clone(); 4];
            assert!(f.integrate_vectors(&vs).unwrap().is_zero());
        }
    }

    #[test]
    fn single_matching_case_n1() {
        let space = presets::space_u().unwrap();
        let f = IntegrationFunctional::new(&space, 1, rat_int(1)).unwrap();
        let e1 = ClassVector::basis_vector(2, 0);
        let e2 = ClassVector::basis_vector(2, 1);
        // one matching, normalization 1!! = 1: the value is q(e1, e2) = 1
        assert_eq!(f.integrate_vectors(&[e1, e2]).unwrap(), rat_int(1));
    }

    #[test]
    fn arity_and_degree_errors() {
        let space = presets::space_u().unwrap();
        let f = IntegrationFunctional::new(&space, 1, rat_int(1)).unwrap();
        let e1 = ClassVector::basis_vector(2, 0);
        assert_eq!(
            f.integrate_vectors(&[e1]).unwrap_err(),
            Error::ArityMismatch {
                expected: 2,
                got: 1
            }
        );
        let p = SymElement::variable(&space, 0);
        assert_eq!(
            f.integrate(&p).unwrap_err(),
            Error::WrongDegree {
                expected: 2,
                got: 1
            }
        );
    }

    #[test]
    fn integrate_matches_bitmask_oracle() {
        let space = presets::space_u_m2().unwrap();
        let n = 2;
        let f = IntegrationFunctional::new(&space, n, rat_int(1)).unwrap();
        let basis = monomial_basis(&space, 2 * n);
        let norm = double_factorial_odd(n);
        for m in basis.iter() {
            let expect = matching_sum_bitmask(m.indices(), &|a, b| {
                space.gram_entry(a, b).clone()
            }) / norm.clone();
            assert_eq!(f.integrate_monomial(m).unwrap(), expect);
        }
    }

    #[test]
    fn top_harmonics_integrate_to_zero() {
        let space = presets::space_u_m2().unwrap();
        let f = IntegrationFunctional::new(&space, 1, rat_int(1)).unwrap();
        for h in harmonic_subspace(&space, 2).elements() {
            assert!(f.integrate(&h).unwrap().is_zero());
        }
    }

    #[test]
    fn mu_constants() {
        let space = presets::space_u2_m2().unwrap();
        for n in [2usize, 3] {
            let f = IntegrationFunctional::new(&space, n, rat_int(1)).unwrap();
            assert_eq!(f.mu_i(0).unwrap(), rat_int(1), "μ_0 = μ");
            for i in 0..=n {
                let mu_i = f.mu_i(i).unwrap();
                assert!(!mu_i.is_zero(), "μ_i nonzero, n={n} i={i}");
            }
            // μ_n = ∫ c^n
            let c = dual_class(&space);
            assert_eq!(f.mu_i(n).unwrap(), f.integrate(&c.pow(n)).unwrap());
        }
    }

    #[test]
    fn mu_scales_integrals_linearly() {
        let space = presets::space_u_m2().unwrap();
        let f1 = IntegrationFunctional::new(&space, 2, rat_int(1)).unwrap();
        let f5 = IntegrationFunctional::new(&space, 2, rat_int(5)).unwrap();
        let c2 = dual_class(&space).pow(2);
        assert_eq!(
            f5.integrate(&c2).unwrap(),
            f1.integrate(&c2).unwrap() * rat_int(5)
        );
    }

    #[test]
    fn integrate_vectors_is_symmetric() {
        let space = presets::space_u_m2().unwrap();
        let f = IntegrationFunctional::new(&space, 2, rat_int(1)).unwrap();
        let vs = seeded_vectors(&space, 9, 4);
        let base = f.integrate_vectors(&vs).unwrap();
        let mut perm = vs.clone();
        perm.swap(0, 3);
        perm.swap(1, 2);
        assert_eq!(f.integrate_vectors(&perm).unwrap(), base);
    }

    #[test]
    fn gorenstein_kernels() {
        let space = presets::space_u_m2().unwrap();
        let n = 2;
        let f = IntegrationFunctional::new(&space, n, rat_int(1)).unwrap();
        for a in 0..=n {
            let pairing = f.gorenstein_pairing(a).unwrap();
            assert_eq!(
                pairing.rank(),
                pairing.nrows(),
                "no left kernel in degree {a} <= n"
            );
        }
        let kernel = f.gorenstein_left_kernel(n + 1).unwrap();
        assert_eq!(kernel, harmonic_subspace(&space, n + 1), "kernel = Harm^(n+1)");
    }

    #[test]
    fn fujiki_evaluate_vanishing_structure() {
        // α isotropic in tr and β with q(α,β)=0 forces the value to vanish
        // for P a polynomial in NS classes.
        let input = presets::load("u2-m2").unwrap();
        let split = input.split().unwrap();
        let space = split.ambient.clone();
        let n = 2;
        let f = IntegrationFunctional::new(&space, n, rat_int(1)).unwrap();
        let l = input.l_class().unwrap();
        let p = SymElement::linear(&space, &l); // degree 1, P = l
        let alpha = ClassVector::basis_vector(5, 0); // isotropic, in tr
        for beta in [
            ClassVector::basis_vector(5, 0),
            ClassVector::basis_vector(5, 2),
            ClassVector::basis_vector(5, 4),
            ClassVector::from_ints(&[3, 0, 1, -2, 5]),
        ] {
            let orthogonal = space.pair(&alpha, &beta).unwrap().is_zero();
            let value = f.fujiki_evaluate(&split, &p, &alpha, &beta).unwrap();
            if orthogonal {
                assert!(value.is_zero(), "q(α,β)=0 forces vanishing");
            }
        }
        // P = l of degree 1 = i: all evaluations vanish for isotropic α ⊥ NS
        // (this is the divisor-class case checked again in coisotropic tests)
        let beta = ClassVector::from_ints(&[1, 2, 3, 4, 5]);
        assert!(f
            .fujiki_evaluate(&split, &p, &alpha, &beta)
            .unwrap()
            .is_zero());
    }
}
