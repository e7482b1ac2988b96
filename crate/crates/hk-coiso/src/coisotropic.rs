//! Spaces of degree-2i classes killed in the degree-(2n+2) quotient model by
//! every (n−i+1)-st power of a transcendental quadric class.
//!
//! The model of H^{2n+2} is S^{n+1}V modulo its harmonic subspace, so a
//! product lands at zero there exactly when it is itself harmonic, i.e.
//! killed by one application of the Laplacian. The quantification over
//! quadric classes is replaced by a basis of the transcendental harmonic
//! space their powers span; a second, independent route evaluates the
//! polarized integral against sampled isotropic classes and a spanning
//! family of auxiliary classes.

use std::fmt;
use std::str::FromStr;

use num::Zero;

use crate::error::{Error, Result};
use crate::fujiki::IntegrationFunctional;
use crate::matrix::Matrix;
use crate::monomial::sym_dim;
use crate::quadratic_space::{dual_class, sample_isotropic, same_space, ClassVector, SplitSpace};
use crate::rat::{rat_int, Rat};
use crate::sym_algebra::{
    harmonic_dim, harmonic_subspace, laplacian_matrix, monomial_basis, mul_matrix,
    isotropic_power_span, SymElement, Subspace,
};

/// Which polynomial family the candidate classes are drawn from.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GeneratorMode {
    /// Weighted-degree-i polynomials in the dual class and l.
    CL,
    /// Weighted-degree-i polynomials in the dual class, l and e.
    CLE,
    /// All of S^i V (model-level exploration).
    Full,
}

impl fmt::Display for GeneratorMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GeneratorMode::CL => "cl",
            GeneratorMode::CLE => "cle",
            GeneratorMode::Full => "full",
        })
    }
}

impl FromStr for GeneratorMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cl" => Ok(GeneratorMode::CL),
            "cle" => Ok(GeneratorMode::CLE),
            "full" => Ok(GeneratorMode::Full),
            other => Err(Error::InvalidInput(format!(
                "unknown mode {other:?}; expected cl, cle or full"
            ))),
        }
    }
}

/// A fully validated coisotropy computation: the split space, degrees n and
/// i, the candidate family, and the distinguished NS classes.
#[derive(Clone, Debug)]
pub struct CoisotropicProblem {
    pub split: SplitSpace,
    pub n: usize,
    pub i: usize,
    pub mode: GeneratorMode,
    pub l: ClassVector,
    pub e: Option<ClassVector>,
}

impl CoisotropicProblem {
    pub fn new(
        split: SplitSpace,
        n: usize,
        i: usize,
        mode: GeneratorMode,
        l: ClassVector,
        e: Option<ClassVector>,
    ) -> Result<Self> {
        if n == 0 || i == 0 || i > n {
            return Err(Error::InvalidInput(format!(
                "need 1 <= i <= n, got n={n}, i={i}"
            )));
        }
        let ns = split.ns_row_space();
        if !ns.contains_vec(&l.coords) {
            return Err(Error::InvalidInput("l must lie in NS".into()));
        }
        if split.ambient.q(&l)?.is_zero() {
            return Err(Error::InvalidInput("l must have q(l) != 0".into()));
        }
        if let Some(e) = &e {
            if !ns.contains_vec(&e.coords) {
                return Err(Error::InvalidInput("e must lie in NS".into()));
            }
            let pair_rank = Matrix::from_rows(vec![l.coords.clone(), e.coords.clone()]).rank();
            if pair_rank != 2 {
                return Err(Error::NotIndependent);
            }
        }
        if mode == GeneratorMode::CLE && e.is_none() {
            return Err(Error::InvalidInput(
                "mode cle needs a second NS class e".into(),
            ));
        }
        Ok(CoisotropicProblem {
            split,
            n,
            i,
            mode,
            l,
            e,
        })
    }

    fn ensure_tr_big_enough(&self) -> Result<()> {
        if self.split.tr_dim() < 3 {
            return Err(Error::TrTooSmall {
                dim: self.split.tr_dim(),
            });
        }
        Ok(())
    }

    /// Basis of the degree-d harmonic space of the transcendental part,
    /// expressed in ambient variables.
    fn tr_harmonics_in_ambient(&self, d: usize) -> Result<Vec<SymElement>> {
        let tr_space = self
            .split
            .tr_space()
            .ok_or(Error::TrTooSmall { dim: 0 })?;
        let harm = harmonic_subspace(tr_space, d);
        harm.elements()
            .iter()
            .map(|h| h.map_linear(&self.split.ambient, &self.split.tr_basis))
            .collect()
    }

    /// Candidate generators with printable labels, in the canonical order:
    /// lower total degree first, then lexicographic with c before l before e.
    pub fn candidate_generators(&self) -> Result<(Vec<String>, Vec<SymElement>)> {
        let space = &self.split.ambient;
        match self.mode {
            GeneratorMode::Full => {
                let basis = monomial_basis(space, self.i);
                let labels = basis
                    .iter()
                    .map(|m| {
                        SymElement::from_coords(
                            space,
                            &basis,
                            &unit_coords(basis.len(), basis.rank(m)),
                        )
                        .to_string()
                    })
                    .collect();
                let gens = (0..basis.len())
                    .map(|j| {
                        SymElement::from_coords(space, &basis, &unit_coords(basis.len(), j))
                    })
                    .collect();
                Ok((labels, gens))
            }
            GeneratorMode::CL | GeneratorMode::CLE => {
                let with_e = self.mode == GeneratorMode::CLE;
                let mut exps: Vec<(u32, u32, u32)> = Vec::new();
                for a in 0..=(self.i / 2) {
                    let rem = (self.i - 2 * a) as u32;
                    if with_e {
                        for b in (0..=rem).rev() {
                            exps.push((a as u32, b, rem - b));
                        }
                    } else {
                        exps.push((a as u32, rem, 0));
                    }
                }
                exps.sort_by(|x, y| {
                    let tx = x.0 + x.1 + x.2;
                    let ty = y.0 + y.1 + y.2;
                    tx.cmp(&ty).then_with(|| y.cmp(x))
                });
                let c = dual_class(space);
                let l = SymElement::linear(space, &self.l);
                let e = self.e.as_ref().map(|e| SymElement::linear(space, e));
                let mut labels = Vec::new();
                let mut gens = Vec::new();
                for &(a, b, d) in &exps {
                    labels.push(power_label(a, b, d));
                    let mut g = c.pow(a as usize).mul(&l.pow(b as usize))?;
                    if d > 0 {
                        g = g.mul(&e.as_ref().expect("cle mode has e").pow(d as usize))?;
                    }
                    gens.push(g);
                }
                Ok((labels, gens))
            }
        }
    }
}

fn unit_coords(len: usize, j: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); len];
    v[j] = rat_int(1);
    v
}

fn power_label(a: u32, b: u32, d: u32) -> String {
    let mut parts = Vec::new();
    for (sym, exp) in [("c", a), ("l", b), ("e", d)] {
        match exp {
            0 => {}
            1 => parts.push(sym.to_string()),
            k => parts.push(format!("{sym}^{k}")),
        }
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

/// The computed space of coisotropic candidates: a reduced-echelon
/// coefficient basis over labelled generators, plus the classes themselves.
#[derive(Clone, Debug)]
pub struct CoisotropicSpace {
    pub n: usize,
    pub i: usize,
    pub mode: GeneratorMode,
    pub labels: Vec<String>,
    pub coeff_basis: Matrix,
    pub elements: Vec<SymElement>,
}

impl CoisotropicSpace {
    pub fn dimension(&self) -> usize {
        self.coeff_basis.nrows()
    }
}

impl PartialEq for CoisotropicSpace {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.i == other.i
            && self.labels == other.labels
            && self.coeff_basis == other.coeff_basis
    }
}
impl Eq for CoisotropicSpace {}

/// Tests the defining condition: every product with a transcendental
/// harmonic of degree n−i+1 must be harmonic in degree n+1 (equivalently,
/// zero in the quotient model of H^{2n+2}).
pub fn is_coisotropic(problem: &CoisotropicProblem, z: &SymElement) -> Result<bool> {
    if !same_space(z.space(), &problem.split.ambient) {
        return Err(Error::SpaceMismatch);
    }
    if z.degree() != problem.i {
        return Err(Error::WrongDegree {
            expected: problem.i,
            got: z.degree(),
        });
    }
    problem.ensure_tr_big_enough()?;
    for h in problem.tr_harmonics_in_ambient(problem.n - problem.i + 1)? {
        if !h.mul(z)?.laplacian()?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Kernel of the stacked maps z ↦ Δ(h·z) over the given generators,
/// returned as canonical reduced-echelon coefficient rows.
fn coisotropy_kernel(
    problem: &CoisotropicProblem,
    gens: &[SymElement],
) -> Result<Matrix> {
    let space = &problem.split.ambient;
    let harmonics = problem.tr_harmonics_in_ambient(problem.n - problem.i + 1)?;
    let out_basis = monomial_basis(space, problem.n - 1);
    let mut m = Matrix::zero(harmonics.len() * out_basis.len(), gens.len());
    for (col, w) in gens.iter().enumerate() {
        for (block, h) in harmonics.iter().enumerate() {
            let image = h.mul(w)?.laplacian()?;
            for (mono, coeff) in image.terms() {
                m[(block * out_basis.len() + out_basis.rank(mono), col)] = coeff.clone();
            }
        }
    }
    Ok(m.nullspace())
}

fn space_from_kernel(
    problem: &CoisotropicProblem,
    labels: Vec<String>,
    gens: &[SymElement],
    kernel: Matrix,
) -> CoisotropicSpace {
    let elements = (0..kernel.nrows())
        .map(|r| {
            let mut el = SymElement::zero(&problem.split.ambient, problem.i);
            for (g, coeff) in gens.iter().zip(kernel.row(r)) {
                el = el.add(&g.scale(coeff));
            }
            el
        })
        .collect();
    CoisotropicSpace {
        n: problem.n,
        i: problem.i,
        mode: problem.mode,
        labels,
        coeff_basis: kernel,
        elements,
    }
}

/// The space of coisotropic candidates, computed through the harmonic
/// membership test.
pub fn coisotropic_space(problem: &CoisotropicProblem) -> Result<CoisotropicSpace> {
    problem.ensure_tr_big_enough()?;
    let (labels, gens) = problem.candidate_generators()?;
    ensure_independent(problem, &gens)?;
    let kernel = coisotropy_kernel(problem, &gens)?;
    Ok(space_from_kernel(problem, labels, &gens, kernel))
}

fn ensure_independent(problem: &CoisotropicProblem, gens: &[SymElement]) -> Result<()> {
    let sub = Subspace::from_elements(&problem.split.ambient, problem.i, gens);
    if sub.dim() != gens.len() {
        return Err(Error::NotIndependent);
    }
    Ok(())
}

/// The same space computed independently through the polarized integral:
/// z is kept iff ∫ α^{n−i+1}·β^{n−1}·z = 0 for sampled isotropic α in the
/// transcendental part and a family of β whose (n−1)-st powers span
/// S^{n−1}V.
pub fn coisotropic_space_via_fujiki(
    problem: &CoisotropicProblem,
    seed: u64,
) -> Result<CoisotropicSpace> {
    let split = &problem.split;
    let space = &split.ambient;
    let (n, i) = (problem.n, problem.i);
    let tr_space = split.tr_space().ok_or(Error::NoIsotropicVector)?;
    let power = n - i + 1;

    // isotropic classes in tr whose powers span the tr harmonic space
    let target = harmonic_dim(split.tr_dim(), power);
    let mut samples = sample_isotropic(tr_space, seed, target + 3, None)?;
    let mut span_dim = isotropic_power_span(tr_space, power, &samples)?.dim();
    let mut retry = 0;
    while span_dim < target && retry < 3 {
        retry += 1;
        let more = sample_isotropic(tr_space, seed + retry, (target + 3) * (retry as usize + 1), None)?;
        samples = more;
        span_dim = isotropic_power_span(tr_space, power, &samples)?.dim();
    }
    if span_dim < target {
        return Err(Error::NoIsotropicVector);
    }

    // auxiliary classes whose (n-1)-st powers span S^{n-1}V
    let betas = spanning_power_family(space, n - 1);

    let f = IntegrationFunctional::new(space, n, rat_int(1))?;
    let (labels, gens) = problem.candidate_generators()?;
    ensure_independent(problem, &gens)?;

    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for alpha in &samples {
        let alpha_ambient = split.tr_to_ambient(alpha);
        let a_pow = SymElement::linear(space, &alpha_ambient).pow(power);
        for beta in &betas {
            let b_pow = SymElement::linear(space, beta).pow(n - 1);
            let prod = a_pow.mul(&b_pow)?;
            let row: Vec<Rat> = gens
                .iter()
                .map(|w| f.integrate(&prod.mul(w)?))
                .collect::<Result<_>>()?;
            rows.push(row);
        }
    }
    let kernel = Matrix::from_rows(rows).nullspace();
    Ok(space_from_kernel(problem, labels, &gens, kernel))
}

/// Deterministic family of classes whose k-th powers span S^k V.
fn spanning_power_family(space: &crate::quadratic_space::Space, k: usize) -> Vec<ClassVector> {
    let dim = space.dim();
    let target = sym_dim(dim, k);
    let basis = monomial_basis(space, k);
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    let mut chosen = Vec::new();
    let mut rank = 0usize;

    let mut try_vec = |v: ClassVector,
                       rows: &mut Vec<Vec<Rat>>,
                       chosen: &mut Vec<ClassVector>,
                       rank: &mut usize| {
        if *rank == target {
            return;
        }
        let p = SymElement::linear(space, &v).pow(k);
        rows.push(p.coeffs_on(&basis));
        let new_rank = Matrix::from_rows(rows.clone()).rank();
        if new_rank > *rank {
            *rank = new_rank;
            chosen.push(v);
        } else {
            rows.pop();
        }
    };

    for c in 0..dim {
        try_vec(
            ClassVector::basis_vector(dim, c),
            &mut rows,
            &mut chosen,
            &mut rank,
        );
    }
    'outer: for a in 0..dim {
        for b in a + 1..dim {
            for sgn in [1i64, -1] {
                let mut coords = vec![0i64; dim];
                coords[a] = 1;
                coords[b] = sgn;
                try_vec(
                    ClassVector::from_ints(&coords),
                    &mut rows,
                    &mut chosen,
                    &mut rank,
                );
                if rank == target {
                    break 'outer;
                }
            }
        }
    }
    use rand::Rng;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xBE7A);
    let mut guard = 0;
    while rank < target && guard < 10_000 {
        guard += 1;
        let v = ClassVector::from_ints(
            &(0..dim)
                .map(|_| rng.random_range(-3..=3))
                .collect::<Vec<_>>(),
        );
        try_vec(v, &mut rows, &mut chosen, &mut rank);
    }
    assert_eq!(rank, target, "power family must span S^k");
    chosen
}

/// Coefficient λ₀ of l^i for a nonzero coisotropic class in the span of
/// { l^{i−2j}·c_tr^j }; a vanishing λ₀ would contradict the structure
/// theorem, so it raises.
pub fn lambda0_check(problem: &CoisotropicProblem, z: &SymElement) -> Result<Rat> {
    if z.degree() != problem.i {
        return Err(Error::WrongDegree {
            expected: problem.i,
            got: z.degree(),
        });
    }
    if z.is_zero() {
        return Err(Error::ZeroClass);
    }
    let (_, gens) = l_ctr_family(problem)?;
    let basis = monomial_basis(&problem.split.ambient, problem.i);
    let cols = Matrix::from_rows(gens.iter().map(|g| g.coeffs_on(&basis)).collect()).transpose();
    let coords = cols
        .solve_unique(&z.coeffs_on(&basis))
        .ok_or(Error::NotInSpan)?;
    if !is_coisotropic(problem, z)? {
        return Err(Error::NotCoisotropic);
    }
    let lambda0 = coords[0].clone();
    if lambda0.is_zero() {
        return Err(Error::ViolatesTheorem(
            "nonzero coisotropic class in the l/c_tr span has no l^i term".into(),
        ));
    }
    Ok(lambda0)
}

fn l_ctr_family(problem: &CoisotropicProblem) -> Result<(Vec<String>, Vec<SymElement>)> {
    let space = &problem.split.ambient;
    let l = SymElement::linear(space, &problem.l);
    let mut labels = Vec::new();
    let mut gens = Vec::new();
    for j in 0..=(problem.i / 2) {
        let mut label_parts = Vec::new();
        match problem.i - 2 * j {
            0 => {}
            1 => label_parts.push("l".to_string()),
            k => label_parts.push(format!("l^{k}")),
        }
        match j {
            0 => {}
            1 => label_parts.push("c_tr".to_string()),
            k => label_parts.push(format!("c_tr^{k}")),
        }
        labels.push(if label_parts.is_empty() {
            "1".to_string()
        } else {
            label_parts.join("*")
        });
        gens.push(
            l.pow(problem.i - 2 * j)
                .mul(&problem.split.c_tr.pow(j))?,
        );
    }
    Ok((labels, gens))
}

/// The coisotropic subspace of span{ l^{i−2j}·c_tr^j }. The structure
/// theorem says it has dimension at most one and its nonzero members keep
/// a nonzero l^i coefficient.
pub fn coisotropic_l_ctr_family(problem: &CoisotropicProblem) -> Result<CoisotropicSpace> {
    problem.ensure_tr_big_enough()?;
    let (labels, gens) = l_ctr_family(problem)?;
    ensure_independent(problem, &gens)?;
    let kernel = coisotropy_kernel(problem, &gens)?;
    Ok(space_from_kernel(problem, labels, &gens, kernel))
}

/// Whether multiplication by c_tr is injective from S^{n−1}V into the
/// degree-(n+1) quotient model (full column rank of the composite with the
/// Laplacian, whose kernel is exactly the harmonic subspace).
pub fn cup_ctr_injective(split: &SplitSpace, n: usize) -> Result<bool> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be positive".into()));
    }
    let space = &split.ambient;
    let mult = mul_matrix(space, &split.c_tr, n - 1);
    let lap = laplacian_matrix(space, n + 1);
    let composite = lap.mul(&mult);
    Ok(composite.rank() == sym_dim(space.dim(), n - 1))
}

/// The graded refinement on the transcendental part: multiplication by its
/// own dual class from S^{k−1}(V_tr) into the degree-(k+1) quotient model
/// of the transcendental space.
pub fn cup_ctr_injective_graded(split: &SplitSpace, k: usize) -> Result<bool> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be positive".into()));
    }
    let tr_space = split
        .tr_space()
        .ok_or_else(|| Error::InvalidInput("split has empty transcendental part".into()))?;
    let c_local = dual_class(tr_space);
    let mult = mul_matrix(tr_space, &c_local, k - 1);
    let lap = laplacian_matrix(tr_space, k + 1);
    let composite = lap.mul(&mult);
    Ok(composite.rank() == sym_dim(tr_space.dim(), k - 1))
}
