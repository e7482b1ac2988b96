//! Rational quadratic spaces: Gram data, the pairing, orthogonal splittings
//! along a chosen nondegenerate sublattice, the dual class of the form, and
//! seeded generation of rational isotropic vectors.

use std::sync::Arc;

use num::{Signed, Zero};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::matrix::{Matrix, RowSpace};
use crate::rat::{parse_rat, rat_int, Rat};
use crate::sym_algebra::SymElement;

/// Shared handle to an immutable quadratic space.
pub type Space = Arc<QuadraticSpace>;

/// A finite-rank rational vector space with a nondegenerate symmetric form.
#[derive(Debug)]
pub struct QuadraticSpace {
    dim: usize,
    gram: Matrix,
    gram_inv: Matrix,
}

impl PartialEq for QuadraticSpace {
    fn eq(&self, other: &Self) -> bool {
        self.gram == other.gram
    }
}
impl Eq for QuadraticSpace {}

impl QuadraticSpace {
    /// Validates and wraps a symmetric nondegenerate Gram matrix.
    pub fn new(gram: Matrix) -> Result<Space> {
        if gram.nrows() != gram.ncols() || !gram.is_symmetric() {
            return Err(Error::NonSymmetric);
        }
        let gram_inv = gram.inverse().ok_or(Error::Degenerate)?;
        Ok(Arc::new(QuadraticSpace {
            dim: gram.nrows(),
            gram,
            gram_inv,
        }))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn gram_inv(&self) -> &Matrix {
        &self.gram_inv
    }

    /// The symmetric pairing q(x, y) = xᵀ · gram · y.
    pub fn pair(&self, x: &ClassVector, y: &ClassVector) -> Result<Rat> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.dim(),
            });
        }
        if y.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: y.dim(),
            });
        }
        let gy = self.gram.mul_vec(&y.coords);
        Ok(x.coords.iter().zip(&gy).map(|(a, b)| a * b).sum())
    }

    pub fn q(&self, x: &ClassVector) -> Result<Rat> {
        self.pair(x, x)
    }

    pub fn gram_entry(&self, i: usize, j: usize) -> &Rat {
        &self.gram[(i, j)]
    }
}

pub fn same_space(a: &Space, b: &Space) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A degree-2 class, i.e. a coordinate vector in a quadratic space.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClassVector {
    pub coords: Vec<Rat>,
}

impl ClassVector {
    pub fn new(coords: Vec<Rat>) -> Self {
        ClassVector { coords }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        ClassVector {
            coords: coords.iter().map(|&c| rat_int(c)).collect(),
        }
    }

    pub fn basis_vector(dim: usize, i: usize) -> Self {
        let mut coords = vec![Rat::zero(); dim];
        coords[i] = rat_int(1);
        ClassVector { coords }
    }

    pub fn zero(dim: usize) -> Self {
        ClassVector {
            coords: vec![Rat::zero(); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Rat::is_zero)
    }

    pub fn add(&self, other: &ClassVector) -> ClassVector {
        assert_eq!(self.dim(), other.dim());
        ClassVector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scale(&self, t: &Rat) -> ClassVector {
        ClassVector {
            coords: self.coords.iter().map(|c| c * t).collect(),
        }
    }

    /// Primitive representative of the line through this vector: integral
    /// coordinates with content 1 and positive leading entry.
    pub fn primitive_normalize(&self) -> ClassVector {
        use num::bigint::BigInt;
        let lcm = crate::rat::denom_lcm(&self.coords);
        let ints: Vec<BigInt> = self
            .coords
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let mut gcd = BigInt::zero();
        for v in &ints {
            gcd = num::integer::gcd(gcd, v.abs());
        }
        if gcd.is_zero() {
            return self.clone();
        }
        let sign = ints
            .iter()
            .find(|v| !v.is_zero())
            .map_or(BigInt::from(1), |v| {
                if v.is_negative() {
                    BigInt::from(-1)
                } else {
                    BigInt::from(1)
                }
            });
        let div = gcd * sign;
        ClassVector {
            coords: ints
                .into_iter()
                .map(|v| Rat::from_integer(v / &div))
                .collect(),
        }
    }
}

/// An ambient space split orthogonally as NS ⊕ tr, with the dual class of
/// the form decomposed along the splitting.
#[derive(Clone, Debug)]
pub struct SplitSpace {
    pub ambient: Space,
    pub ns_basis: Vec<ClassVector>,
    pub tr_basis: Vec<ClassVector>,
    ns_space: Space,
    tr_space: Option<Space>,
    pub c: SymElement,
    pub c_tr: SymElement,
    pub c_alg: SymElement,
}

impl SplitSpace {
    pub fn rho(&self) -> usize {
        self.ns_basis.len()
    }

    pub fn tr_dim(&self) -> usize {
        self.tr_basis.len()
    }

    /// The NS part as a quadratic space in its own basis.
    pub fn ns_space(&self) -> &Space {
        &self.ns_space
    }

    /// The transcendental part as a quadratic space in the `tr_basis`
    /// coordinates; `None` when NS is the whole space.
    pub fn tr_space(&self) -> Option<&Space> {
        self.tr_space.as_ref()
    }

    /// Ambient coordinates of a vector given in `tr_basis` coordinates.
    pub fn tr_to_ambient(&self, v: &ClassVector) -> ClassVector {
        assert_eq!(v.dim(), self.tr_basis.len());
        let mut out = ClassVector::zero(self.ambient.dim());
        for (coef, basis_vec) in v.coords.iter().zip(&self.tr_basis) {
            out = out.add(&basis_vec.scale(coef));
        }
        out
    }

    pub fn ns_row_space(&self) -> RowSpace {
        RowSpace::from_vectors(
            self.ns_basis.iter().map(|v| v.coords.clone()).collect(),
            self.ambient.dim(),
        )
    }
}

/// Splits a space along a nondegenerate sublattice: the complement basis is
/// the exact q-orthogonal complement, and the dual class decomposes as
/// c = c_tr + c_alg along the two pieces.
pub fn split_ns(space: &Space, ns_basis: Vec<ClassVector>) -> Result<SplitSpace> {
    let dim = space.dim();
    for v in &ns_basis {
        if v.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: v.dim(),
            });
        }
    }
    if ns_basis.is_empty() {
        return Err(Error::InvalidInput("ns_basis must be nonempty".into()));
    }
    let ns_rows = Matrix::from_rows(ns_basis.iter().map(|v| v.coords.clone()).collect());
    if ns_rows.rank() != ns_basis.len() {
        return Err(Error::NotIndependent);
    }
    let ns_gram = ns_rows.mul(space.gram()).mul(&ns_rows.transpose());
    let ns_space = QuadraticSpace::new(ns_gram).map_err(|e| match e {
        Error::Degenerate => Error::DegenerateNs,
        other => other,
    })?;

    // tr = exact kernel of x ↦ (q(ns_j, x))_j.
    let tr_rows = ns_rows.mul(space.gram()).nullspace();
    let tr_basis: Vec<ClassVector> = (0..tr_rows.nrows())
        .map(|i| ClassVector::new(tr_rows.row(i).to_vec()))
        .collect();
    debug_assert_eq!(ns_basis.len() + tr_basis.len(), dim);
    let tr_space = if tr_basis.is_empty() {
        None
    } else {
        let tr_gram = tr_rows.mul(space.gram()).mul(&tr_rows.transpose());
        Some(QuadraticSpace::new(tr_gram)?)
    };

    let c = dual_class(space);
    let c_alg = dual_class_on_sublattice(space, &ns_space, &ns_basis);
    let c_tr = match &tr_space {
        Some(trs) => dual_class_on_sublattice(space, trs, &tr_basis),
        None => SymElement::zero(space, 2),
    };
    debug_assert_eq!(c_tr.add(&c_alg), c, "dual class must split along NS ⊕ tr");

    Ok(SplitSpace {
        ambient: space.clone(),
        ns_basis,
        tr_basis,
        ns_space,
        tr_space,
        c,
        c_tr,
        c_alg,
    })
}

/// The degree-2 element whose coefficient tensor is the inverse Gram matrix:
/// the monomial x_i x_j (i < j) carries 2·(gram⁻¹)_{ij}, the diagonal x_i²
/// carries (gram⁻¹)_{ii}.
pub fn dual_class(space: &Space) -> SymElement {
    let inv = space.gram_inv();
    let mut el = SymElement::zero(space, 2);
    for i in 0..space.dim() {
        for j in i..space.dim() {
            let coeff = if i == j {
                inv[(i, j)].clone()
            } else {
                &inv[(i, j)] * &rat_int(2)
            };
            el.add_term_mono(&[i, j], coeff);
        }
    }
    el
}

/// Dual class of the form restricted to a sublattice, expressed in ambient
/// variables: Σ (g_sub⁻¹)_{ab} · v_a · v_b over the sublattice basis.
fn dual_class_on_sublattice(
    space: &Space,
    sub_space: &Space,
    basis: &[ClassVector],
) -> SymElement {
    let inv = sub_space.gram_inv();
    let mut el = SymElement::zero(space, 2);
    for a in 0..basis.len() {
        for b in 0..basis.len() {
            let la = SymElement::linear(space, &basis[a]);
            let lb = SymElement::linear(space, &basis[b]);
            let prod = la.mul(&lb).expect("same space").scale(&inv[(a, b)]);
            el = el.add(&prod);
        }
    }
    el
}

/// Finds a rational isotropic vector deterministically: a zero on the Gram
/// diagonal first, then a bounded search over small integer vectors.
pub fn find_isotropic(space: &Space) -> Option<ClassVector> {
    for i in 0..space.dim() {
        if space.gram_entry(i, i).is_zero() {
            return Some(ClassVector::basis_vector(space.dim(), i));
        }
    }
    if space.dim() > 6 {
        return None; // diagonal search only at high rank
    }
    // odometer over entries in -2..=2
    let dim = space.dim();
    let mut digits = vec![0i64; dim];
    loop {
        let mut k = 0;
        loop {
            if k == dim {
                return None;
            }
            if digits[k] < 4 {
                digits[k] += 1;
                break;
            }
            digits[k] = 0;
            k += 1;
        }
        let v = ClassVector::from_ints(&digits.iter().map(|&d| d - 2).collect::<Vec<_>>());
        if !v.is_zero() && space.q(&v).unwrap().is_zero() {
            return Some(v.primitive_normalize());
        }
    }
}

/// Seeded list of pairwise non-proportional rational isotropic vectors,
/// produced by the line-through-point parametrization of the quadric from a
/// base isotropic vector: w ↦ 2q(v₀,w)·w − q(w)·v₀.
///
/// Fewer than `count` vectors are returned only when the quadric carries
/// fewer rational lines (the rank-2 hyperbolic plane has exactly two).
pub fn sample_isotropic(
    space: &Space,
    seed: u64,
    count: usize,
    hint: Option<&ClassVector>,
) -> Result<Vec<ClassVector>> {
    use rand::Rng;
    use rand::SeedableRng;

    let base = match hint {
        Some(v) => {
            if v.dim() != space.dim() {
                return Err(Error::DimensionMismatch {
                    expected: space.dim(),
                    got: v.dim(),
                });
            }
            if !space.q(v)?.is_zero() || v.is_zero() {
                return Err(Error::NotIsotropic);
            }
            v.clone()
        }
        None => find_isotropic(space).ok_or(Error::NoIsotropicVector)?,
    };

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut seen: Vec<ClassVector> = Vec::new();
    let mut out: Vec<ClassVector> = Vec::new();
    let mut push = |v: ClassVector, seen: &mut Vec<ClassVector>, out: &mut Vec<ClassVector>| {
        let norm = v.primitive_normalize();
        if !seen.contains(&norm) {
            seen.push(norm);
            out.push(v);
        }
    };
    push(base.clone(), &mut seen, &mut out);

    let mut attempts = 0usize;
    let max_attempts = 400 * count.max(1) + 400;
    while out.len() < count && attempts < max_attempts {
        attempts += 1;
        let w = ClassVector::from_ints(
            &(0..space.dim())
                .map(|_| rng.random_range(-4..=4))
                .collect::<Vec<_>>(),
        );
        let qw_base = space.pair(&base, &w)?;
        if qw_base.is_zero() {
            continue;
        }
        let qw = space.q(&w)?;
        let v = w
            .scale(&(&qw_base * &rat_int(2)))
            .add(&base.scale(&(-qw)));
        debug_assert!(space.q(&v).unwrap().is_zero());
        push(v, &mut seen, &mut out);
    }
    Ok(out)
}

/// JSON description of a space: Gram matrix, optional NS basis, optional
/// isotropic hint and distinguished NS classes. Rationals are `"p/q"`
/// strings (plain JSON integers are also accepted).
#[derive(Clone, Debug)]
pub struct SpaceInput {
    pub gram: Matrix,
    pub ns_basis: Vec<ClassVector>,
    pub isotropic_hint: Option<ClassVector>,
    pub l: Option<ClassVector>,
    pub e: Option<ClassVector>,
}

impl SpaceInput {
    pub fn from_json_str(s: &str) -> Result<SpaceInput> {
        let v: Value =
            serde_json::from_str(s).map_err(|e| Error::InvalidInput(format!("bad JSON: {e}")))?;
        let obj = v
            .as_object()
            .ok_or_else(|| Error::InvalidInput("top level must be an object".into()))?;
        let gram_rows = value_matrix(
            obj.get("gram")
                .ok_or_else(|| Error::InvalidInput("missing \"gram\"".into()))?,
        )?;
        let gram = Matrix::from_rows(gram_rows);
        let ns_basis = match obj.get("ns_basis") {
            Some(v) => value_matrix(v)?.into_iter().map(ClassVector::new).collect(),
            None => Vec::new(),
        };
        let opt_vec = |key: &str| -> Result<Option<ClassVector>> {
            match obj.get(key) {
                Some(v) => Ok(Some(ClassVector::new(value_row(v)?))),
                None => Ok(None),
            }
        };
        Ok(SpaceInput {
            gram,
            ns_basis,
            isotropic_hint: opt_vec("isotropic_hint")?,
            l: opt_vec("l")?,
            e: opt_vec("e")?,
        })
    }

    pub fn space(&self) -> Result<Space> {
        QuadraticSpace::new(self.gram.clone())
    }

    pub fn split(&self) -> Result<SplitSpace> {
        let space = self.space()?;
        if self.ns_basis.is_empty() {
            return Err(Error::InvalidInput(
                "space description has no ns_basis".into(),
            ));
        }
        split_ns(&space, self.ns_basis.clone())
    }

    /// The distinguished NS class: explicit `l` or the first NS generator.
    pub fn l_class(&self) -> Result<ClassVector> {
        match &self.l {
            Some(l) => Ok(l.clone()),
            None => self
                .ns_basis
                .first()
                .cloned()
                .ok_or_else(|| Error::InvalidInput("no NS generator to use as l".into())),
        }
    }

    /// The secondary NS class: explicit `e` or the second NS generator.
    pub fn e_class(&self) -> Option<ClassVector> {
        self.e.clone().or_else(|| self.ns_basis.get(1).cloned())
    }
}

fn value_rat(v: &Value) -> Result<Rat> {
    match v {
        Value::String(s) => parse_rat(s),
        Value::Number(n) => n
            .as_i64()
            .map(rat_int)
            .ok_or_else(|| Error::BadRational(n.to_string())),
        other => Err(Error::BadRational(other.to_string())),
    }
}

fn value_row(v: &Value) -> Result<Vec<Rat>> {
    v.as_array()
        .ok_or_else(|| Error::InvalidInput("expected an array of rationals".into()))?
        .iter()
        .map(value_rat)
        .collect()
}

fn value_matrix(v: &Value) -> Result<Vec<Vec<Rat>>> {
    v.as_array()
        .ok_or_else(|| Error::InvalidInput("expected an array of rows".into()))?
        .iter()
        .map(value_row)
        .collect()
}
