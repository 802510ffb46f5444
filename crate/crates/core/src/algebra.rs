//! Finite-dimensional unital associative algebras given by structure
//! constants, their elements, ideals and quotients.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::group::{FiniteGroup, GroupError};
use crate::linalg::{axpy, is_zero_vec, zero_vec, Matrix, Subspace};
use crate::scalar::{FieldSpec, Scalar};
use crate::unipoly::UniPoly;

/// Basis triples above this dimension are sampled instead of checked exhaustively.
pub const ASSOCIATIVITY_EXHAUSTIVE_DIM: usize = 16;
const ASSOCIATIVITY_SAMPLES: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("structure constants are not associative at basis triple ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("given unity is not a two-sided identity")]
    NoUnity,
    #[error("scalar from {found} in an algebra over {expected}")]
    FieldMismatch { expected: FieldSpec, found: FieldSpec },
    #[error("coordinate vector has length {found}, algebra dimension is {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("{what} exceeds cap {cap}")]
    CapExceeded { what: String, cap: u64 },
    #[error("element is not invertible")]
    NotInvertible,
    #[error("subspace is not a two-sided ideal")]
    NotAnIdeal,
    #[error("the ideal is the whole algebra")]
    ImproperIdeal,
    #[error("operation needs a group algebra")]
    NotAGroupAlgebra,
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    GroupAlgebra(FiniteGroup),
    Matrix(usize),
    Quotient,
    DirectSum,
    TruncNilFree(usize),
}

/// Coordinates of an algebra element against the algebra's basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element(pub Vec<Scalar>);

impl Element {
    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAlgebra {
    field: FieldSpec,
    dim: usize,
    // sparse structure constants, indexed by i * dim + j: b_i b_j = sum c_k b_k
    table: Vec<Vec<(usize, Scalar)>>,
    unity: Vec<Scalar>,
    labels: Vec<String>,
    provenance: Provenance,
}

/// Two-sided ideal, stored as a reduced echelon basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealBasis {
    space: Subspace,
}

impl IdealBasis {
    pub fn zero(field: FieldSpec, dim: usize) -> Self {
        IdealBasis { space: Subspace::new(field, dim) }
    }

    pub fn rank(&self) -> usize {
        self.space.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.space.is_zero()
    }

    pub fn basis(&self) -> Vec<Element> {
        self.space.basis().iter().map(|v| Element(v.clone())).collect()
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn contains(&self, x: &Element) -> bool {
        self.space.contains(&x.0)
    }

    pub fn field(&self) -> FieldSpec {
        self.space.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.space.ambient_dim()
    }
}

/// The canonical map `A -> A/I`, together with a linear section.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Projection {
    ideal_rank: usize,
    // indices of the basis vectors of A that map to the quotient basis
    complement: Vec<usize>,
    // inverse of [ideal basis | complement unit vectors]
    change_of_basis: Matrix,
}

impl Projection {
    pub fn apply(&self, x: &Element) -> Element {
        let c = self.change_of_basis.mul_vec(&x.0);
        Element(c[self.ideal_rank..].to_vec())
    }

    /// Section `A/I -> A` through the complement basis vectors.
    pub fn lift(&self, y: &Element, source_dim: usize) -> Element {
        let field = self.change_of_basis[(0, 0)].field();
        let mut v = zero_vec(field, source_dim);
        for (c, &i) in y.0.iter().zip(&self.complement) {
            v[i] = c.clone();
        }
        Element(v)
    }

    pub fn complement(&self) -> &[usize] {
        &self.complement
    }
}

impl FiniteAlgebra {
    /// Builds and validates an algebra from dense structure constants
    /// `c[i][j][k]`.
    pub fn from_structure(
        field: FieldSpec,
        constants: &[Vec<Vec<Scalar>>],
        unity: Vec<Scalar>,
        labels: Vec<String>,
        provenance: Provenance,
    ) -> Result<Self, AlgebraError> {
        let dim = constants.len();
        let mut table = Vec::with_capacity(dim * dim);
        for row in constants {
            if row.len() != dim {
                return Err(AlgebraError::DimensionMismatch { expected: dim, found: row.len() });
            }
            for cell in row {
                if cell.len() != dim {
                    return Err(AlgebraError::DimensionMismatch { expected: dim, found: cell.len() });
                }
                let mut sparse = Vec::new();
                for (k, c) in cell.iter().enumerate() {
                    if c.field() != field {
                        return Err(AlgebraError::FieldMismatch { expected: field, found: c.field() });
                    }
                    if !c.is_zero() {
                        sparse.push((k, c.clone()));
                    }
                }
                table.push(sparse);
            }
        }
        FiniteAlgebra::from_sparse(field, dim, table, unity, labels, provenance)
    }

    fn from_sparse(
        field: FieldSpec,
        dim: usize,
        table: Vec<Vec<(usize, Scalar)>>,
        unity: Vec<Scalar>,
        labels: Vec<String>,
        provenance: Provenance,
    ) -> Result<Self, AlgebraError> {
        if unity.len() != dim {
            return Err(AlgebraError::DimensionMismatch { expected: dim, found: unity.len() });
        }
        let labels = if labels.len() == dim {
            labels
        } else {
            (0..dim).map(|i| format!("b{i}")).collect()
        };
        let alg = FiniteAlgebra { field, dim, table, unity, labels, provenance };
        alg.validate()?;
        Ok(alg)
    }

    fn validate(&self) -> Result<(), AlgebraError> {
        let one = self.one();
        for i in 0..self.dim {
            let b = self.basis_element(i);
            if self.mul(&one, &b) != b || self.mul(&b, &one) != b {
                return Err(AlgebraError::NoUnity);
            }
        }
        let check = |i: usize, j: usize, k: usize| -> Result<(), AlgebraError> {
            let (bi, bj, bk) = (self.basis_element(i), self.basis_element(j), self.basis_element(k));
            let left = self.mul(&self.mul(&bi, &bj), &bk);
            let right = self.mul(&bi, &self.mul(&bj, &bk));
            if left != right {
                return Err(AlgebraError::NotAssociative(i, j, k));
            }
            Ok(())
        };
        if self.dim <= ASSOCIATIVITY_EXHAUSTIVE_DIM {
            for i in 0..self.dim {
                for j in 0..self.dim {
                    for k in 0..self.dim {
                        check(i, j, k)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0xa55c_0c1a);
            for _ in 0..ASSOCIATIVITY_SAMPLES {
                let (i, j, k) = (
                    rng.gen_range(0..self.dim),
                    rng.gen_range(0..self.dim),
                    rng.gen_range(0..self.dim),
                );
                check(i, j, k)?;
            }
        }
        Ok(())
    }

    /// `F G`, basis in the group's element order.
    pub fn group_algebra(field: FieldSpec, group: &FiniteGroup) -> Self {
        let n = group.order();
        let table = (0..n * n)
            .map(|ij| vec![(group.mul(ij / n, ij % n), field.one())])
            .collect();
        let mut unity = zero_vec(field, n);
        unity[group.identity()] = field.one();
        FiniteAlgebra::from_sparse(
            field,
            n,
            table,
            unity,
            group.labels().to_vec(),
            Provenance::GroupAlgebra(group.clone()),
        )
        .expect("group algebras are associative and unital")
    }

    /// `M_n(F)` on matrix units `e_ij` (index `i n + j`), `1 <= n <= 4`.
    pub fn matrix_algebra(field: FieldSpec, n: usize) -> Result<Self, AlgebraError> {
        if !(1..=4).contains(&n) {
            return Err(AlgebraError::CapExceeded { what: format!("matrix size {n}"), cap: 4 });
        }
        let dim = n * n;
        let mut table = vec![Vec::new(); dim * dim];
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    // e_ij e_jl = e_il
                    table[(i * n + j) * dim + (j * n + l)] = vec![(i * n + l, field.one())];
                }
            }
        }
        let mut unity = zero_vec(field, dim);
        for i in 0..n {
            unity[i * n + i] = field.one();
        }
        let labels = (0..dim).map(|x| format!("e{}{}", x / n + 1, x % n + 1)).collect();
        FiniteAlgebra::from_sparse(field, dim, table, unity, labels, Provenance::Matrix(n))
    }

    /// `F<a, b : a^2 = b^2 = 0>` truncated above total degree `degree`.
    ///
    /// Basis: `1`, then the two alternating words of each length `1..=degree`
    /// (the one starting with `a` first).
    pub fn trunc_nil_free(field: FieldSpec, degree: usize) -> Result<Self, AlgebraError> {
        if !(2..=12).contains(&degree) {
            return Err(AlgebraError::CapExceeded { what: format!("truncation degree {degree}"), cap: 12 });
        }
        let dim = 1 + 2 * degree;
        // (length, starts with b)
        let word = |idx: usize| -> (usize, bool) {
            if idx == 0 {
                (0, false)
            } else {
                ((idx + 1) / 2, idx % 2 == 0)
            }
        };
        let index = |len: usize, starts_b: bool| -> usize {
            if len == 0 {
                0
            } else {
                2 * len - 1 + usize::from(starts_b)
            }
        };
        let mut table = vec![Vec::new(); dim * dim];
        for x in 0..dim {
            for y in 0..dim {
                let (l1, s1) = word(x);
                let (l2, s2) = word(y);
                let product = if l1 == 0 {
                    Some(y)
                } else if l2 == 0 {
                    Some(x)
                } else {
                    let last_is_b = if l1 % 2 == 1 { s1 } else { !s1 };
                    (last_is_b != s2 && l1 + l2 <= degree).then(|| index(l1 + l2, s1))
                };
                if let Some(k) = product {
                    table[x * dim + y] = vec![(k, field.one())];
                }
            }
        }
        let mut unity = zero_vec(field, dim);
        unity[0] = field.one();
        let labels = (0..dim)
            .map(|idx| {
                let (len, starts_b) = word(idx);
                if len == 0 {
                    return "1".to_string();
                }
                (0..len)
                    .map(|p| if (p % 2 == 0) != starts_b { 'a' } else { 'b' })
                    .collect()
            })
            .collect();
        FiniteAlgebra::from_sparse(field, dim, table, unity, labels, Provenance::TruncNilFree(degree))
    }

    pub fn direct_sum(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Result<Self, AlgebraError> {
        if a.field != b.field {
            return Err(AlgebraError::FieldMismatch { expected: a.field, found: b.field });
        }
        let dim = a.dim + b.dim;
        let mut table = vec![Vec::new(); dim * dim];
        for i in 0..a.dim {
            for j in 0..a.dim {
                table[i * dim + j] = a.table[i * a.dim + j].clone();
            }
        }
        for i in 0..b.dim {
            for j in 0..b.dim {
                table[(a.dim + i) * dim + a.dim + j] = b.table[i * b.dim + j]
                    .iter()
                    .map(|(k, c)| (a.dim + k, c.clone()))
                    .collect();
            }
        }
        let mut unity = a.unity.clone();
        unity.extend(b.unity.iter().cloned());
        let labels = a
            .labels
            .iter()
            .map(|l| format!("({l},0)"))
            .chain(b.labels.iter().map(|l| format!("(0,{l})")))
            .collect();
        FiniteAlgebra::from_sparse(a.field, dim, table, unity, labels, Provenance::DirectSum)
    }

    /// `A/I`; the quotient basis is the image of the first basis vectors of
    /// `A` that are independent modulo `I`, in basis order.
    pub fn quotient(&self, ideal: &IdealBasis) -> Result<(FiniteAlgebra, Projection), AlgebraError> {
        if !self.is_ideal(ideal.space()) {
            return Err(AlgebraError::NotAnIdeal);
        }
        if ideal.rank() == self.dim {
            return Err(AlgebraError::ImproperIdeal);
        }
        let mut span = ideal.space().clone();
        let mut complement = Vec::new();
        for i in 0..self.dim {
            if span.insert(&self.basis_element(i).0) {
                complement.push(i);
            }
        }
        let mut columns: Vec<Vec<Scalar>> = ideal.space().basis().to_vec();
        columns.extend(complement.iter().map(|&i| self.basis_element(i).0));
        let change_of_basis = Matrix::from_columns(self.field, self.dim, &columns)
            .inverse()
            .expect("ideal basis plus complement spans A");
        let proj = Projection { ideal_rank: ideal.rank(), complement: complement.clone(), change_of_basis };
        let qdim = complement.len();
        let mut table = Vec::with_capacity(qdim * qdim);
        for &i in &complement {
            for &j in &complement {
                let prod = self.mul(&self.basis_element(i), &self.basis_element(j));
                let img = proj.apply(&prod);
                table.push(
                    img.0
                        .into_iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .collect(),
                );
            }
        }
        let unity = proj.apply(&self.one()).0;
        let labels = complement.iter().map(|&i| format!("[{}]", self.labels[i])).collect();
        let q = FiniteAlgebra::from_sparse(self.field, qdim, table, unity, labels, Provenance::Quotient)?;
        Ok((q, proj))
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn group(&self) -> Option<&FiniteGroup> {
        match &self.provenance {
            Provenance::GroupAlgebra(g) => Some(g),
            _ => None,
        }
    }

    /// Number of elements, if finite and representable.
    pub fn size(&self) -> Option<u64> {
        let p = self.field.size()?;
        p.checked_pow(self.dim as u32)
    }

    /// Dense structure constant `c[i][j][k]`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.table[i * self.dim + j]
            .iter()
            .find(|(kk, _)| *kk == k)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn element(&self, coords: Vec<Scalar>) -> Result<Element, AlgebraError> {
        if coords.len() != self.dim {
            return Err(AlgebraError::DimensionMismatch { expected: self.dim, found: coords.len() });
        }
        if let Some(c) = coords.iter().find(|c| c.field() != self.field) {
            return Err(AlgebraError::FieldMismatch { expected: self.field, found: c.field() });
        }
        Ok(Element(coords))
    }

    pub fn element_from_i64s(&self, coords: &[i64]) -> Result<Element, AlgebraError> {
        self.element(coords.iter().map(|&c| self.field.from_i64(c)).collect())
    }

    pub fn zero(&self) -> Element {
        Element(zero_vec(self.field, self.dim))
    }

    pub fn one(&self) -> Element {
        Element(self.unity.clone())
    }

    pub fn basis_element(&self, i: usize) -> Element {
        let mut v = zero_vec(self.field, self.dim);
        v[i] = self.field.one();
        Element(v)
    }

    pub fn basis_by_label(&self, label: &str) -> Option<Element> {
        self.labels.iter().position(|l| l == label).map(|i| self.basis_element(i))
    }

    /// Readable combination of basis labels, e.g. `i + 2*(-1)`.
    pub fn format_element(&self, x: &Element) -> String {
        let mut out = String::new();
        for (c, label) in x.0.iter().zip(&self.labels) {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mag = c.abs();
            if !mag.is_one() {
                out.push_str(&format!("{mag}*"));
            }
            if label.starts_with('-') {
                out.push_str(&format!("({label})"));
            } else {
                out.push_str(label);
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    pub fn scalar(&self, c: &Scalar) -> Element {
        Element(self.unity.iter().map(|u| u * c).collect())
    }

    pub fn add(&self, a: &Element, b: &Element) -> Element {
        Element(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }

    pub fn sub(&self, a: &Element, b: &Element) -> Element {
        Element(a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect())
    }

    pub fn neg(&self, a: &Element) -> Element {
        Element(a.0.iter().map(|x| -x).collect())
    }

    pub fn scale(&self, c: &Scalar, a: &Element) -> Element {
        Element(a.0.iter().map(|x| c * x).collect())
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        let mut out = zero_vec(self.field, self.dim);
        for (i, x) in a.0.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.0.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let cell = &self.table[i * self.dim + j];
                if cell.is_empty() {
                    continue;
                }
                let xy = x * y;
                for (k, c) in cell {
                    out[*k] += &(&xy * c);
                }
            }
        }
        Element(out)
    }

    pub fn pow(&self, a: &Element, mut e: u64) -> Element {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// `ab - ba`
    pub fn commutator(&self, a: &Element, b: &Element) -> Element {
        self.sub(&self.mul(a, b), &self.mul(b, a))
    }

    /// Matrix of `y -> x y` (column `j` is `x b_j`).
    pub fn left_mul_matrix(&self, x: &Element) -> Matrix {
        let cols: Vec<Vec<Scalar>> =
            (0..self.dim).map(|j| self.mul(x, &self.basis_element(j)).0).collect();
        Matrix::from_columns(self.field, self.dim, &cols)
    }

    /// Two-sided inverse, if any.
    pub fn inverse(&self, x: &Element) -> Option<Element> {
        self.left_mul_matrix(x).solve(&self.unity).map(Element)
    }

    pub fn is_unit(&self, x: &Element) -> bool {
        self.inverse(x).is_some()
    }

    /// `u^-1 v^-1 u v`
    pub fn group_commutator(&self, u: &Element, v: &Element) -> Result<Element, AlgebraError> {
        let ui = self.inverse(u).ok_or(AlgebraError::NotInvertible)?;
        let vi = self.inverse(v).ok_or(AlgebraError::NotInvertible)?;
        Ok(self.mul(&self.mul(&self.mul(&ui, &vi), u), v))
    }

    pub fn is_central(&self, x: &Element) -> bool {
        (0..self.dim).all(|i| {
            let b = self.basis_element(i);
            self.mul(x, &b) == self.mul(&b, x)
        })
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| self.is_central(&self.basis_element(i)))
    }

    /// Monic minimal polynomial of `x`.
    pub fn minimal_polynomial(&self, x: &Element) -> UniPoly {
        let mut powers = vec![self.one().0];
        let mut span = Subspace::new(self.field, self.dim);
        span.insert(&powers[0]);
        loop {
            let next = self.mul(&Element(powers.last().unwrap().clone()), x).0;
            if span.contains(&next) {
                powers.push(next);
                let m = Matrix::from_columns(self.field, self.dim, &powers);
                let ns = m.nullspace();
                debug_assert_eq!(ns.len(), 1);
                return UniPoly::from_dense(self.field, &ns[0])
                    .expect("nullspace vector is nonzero")
                    .monic();
            }
            span.insert(&next);
            powers.push(next);
        }
    }

    pub fn is_ideal(&self, s: &Subspace) -> bool {
        s.basis().iter().all(|v| {
            let x = Element(v.clone());
            (0..self.dim).all(|i| {
                let b = self.basis_element(i);
                s.contains(&self.mul(&b, &x).0) && s.contains(&self.mul(&x, &b).0)
            })
        })
    }

    /// Smallest two-sided ideal containing `gens`.
    pub fn ideal_generated_by(&self, gens: &[Element]) -> IdealBasis {
        let mut space = Subspace::new(self.field, self.dim);
        let mut queue: Vec<Vec<Scalar>> = Vec::new();
        for g in gens {
            if space.insert(&g.0) {
                queue.push(g.0.clone());
            }
        }
        while let Some(v) = queue.pop() {
            let x = Element(v);
            for i in 0..self.dim {
                let b = self.basis_element(i);
                for y in [self.mul(&b, &x), self.mul(&x, &b)] {
                    if space.insert(&y.0) {
                        queue.push(y.0);
                    }
                }
            }
        }
        IdealBasis { space }
    }

    /// Wraps a subspace already known to be an ideal.
    pub fn ideal_from_subspace(&self, space: Subspace) -> Result<IdealBasis, AlgebraError> {
        if space.ambient_dim() != self.dim {
            return Err(AlgebraError::DimensionMismatch { expected: self.dim, found: space.ambient_dim() });
        }
        if !self.is_ideal(&space) {
            return Err(AlgebraError::NotAnIdeal);
        }
        Ok(IdealBasis { space })
    }

    /// Ideal of `FG` generated by `h - 1` for `h` in the subgroup `H`.
    pub fn augmentation_ideal_of_subgroup(&self, h: &[usize]) -> Result<IdealBasis, AlgebraError> {
        let group = self.group().ok_or(AlgebraError::NotAGroupAlgebra)?;
        if !group.is_subgroup(h) {
            return Err(GroupError::NotASubgroup.into());
        }
        let one = self.one();
        let gens: Vec<Element> =
            h.iter().map(|&g| self.sub(&self.basis_element(g), &one)).collect();
        Ok(self.ideal_generated_by(&gens))
    }

    /// `I * K` as the span of pairwise basis products.
    pub fn subspace_product(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let mut out = Subspace::new(self.field, self.dim);
        for x in a.basis() {
            for y in b.basis() {
                out.insert(&self.mul(&Element(x.clone()), &Element(y.clone())).0);
            }
        }
        out
    }

    /// All elements, last coordinate varying fastest (lexicographic order).
    pub fn elements(&self, cap: u64) -> Result<ElementIter, AlgebraError> {
        let size = self.size().filter(|&s| s <= cap).ok_or_else(|| AlgebraError::CapExceeded {
            what: format!("element count of a {}-dimensional algebra over {}", self.dim, self.field),
            cap,
        })?;
        Ok(ElementIter::new(self.field, (0..self.dim).map(|i| self.basis_element(i).0).collect(), size))
    }

    /// All elements of a subspace, as combinations of its basis.
    pub fn subspace_elements(&self, s: &Subspace, cap: u64) -> Result<ElementIter, AlgebraError> {
        let size = self
            .field
            .size()
            .and_then(|p| p.checked_pow(s.rank() as u32))
            .filter(|&n| n <= cap)
            .ok_or_else(|| AlgebraError::CapExceeded {
                what: format!("element count of a rank-{} subspace over {}", s.rank(), self.field),
                cap,
            })?;
        Ok(ElementIter::new(self.field, s.basis().to_vec(), size))
    }

    /// Uniform element with coordinates from `F_p`, or from `-3..=3` over `Q`.
    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Element {
        Element(
            (0..self.dim)
                .map(|_| match self.field.size() {
                    Some(p) => self.field.residue(rng.gen_range(0..p)),
                    None => self.field.from_i64(rng.gen_range(-3..=3)),
                })
                .collect(),
        )
    }
}

/// Odometer over `F_p`-combinations of a list of vectors.
pub struct ElementIter {
    field: FieldSpec,
    basis: Vec<Vec<Scalar>>,
    digits: Vec<u64>,
    remaining: u64,
    p: u64,
}

impl ElementIter {
    fn new(field: FieldSpec, basis: Vec<Vec<Scalar>>, size: u64) -> Self {
        let p = field.size().expect("finite field");
        ElementIter { field, digits: vec![0; basis.len()], basis, remaining: size, p }
    }

    pub fn len(&self) -> u64 {
        self.remaining
    }

    pub fn is_empty(&self) -> bool {
        self.remaining == 0
    }
}

impl Iterator for ElementIter {
    type Item = Element;

    fn next(&mut self) -> Option<Element> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let n = self.basis.first().map_or(0, Vec::len);
        let mut v = zero_vec(self.field, n);
        for (d, b) in self.digits.iter().zip(&self.basis) {
            if *d != 0 {
                axpy(&mut v, &self.field.residue(*d), b);
            }
        }
        for d in self.digits.iter_mut().rev() {
            *d += 1;
            if *d < self.p {
                break;
            }
            *d = 0;
        }
        Some(Element(v))
    }
}
