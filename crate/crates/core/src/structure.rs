//! Jacobson radical, nilpotency, unit groups, idempotents, and derived
//! series of finite-dimensional algebras.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::{AlgebraError, Element, FiniteAlgebra, IdealBasis};
use crate::group::FiniteGroup;
use crate::linalg::{Matrix, Subspace};
use crate::scalar::Scalar;

/// Default ceiling on enumerated elements.
pub const DEFAULT_CAP: u64 = 1_000_000;
const SAMPLING_BUDGET_PER_UNIT: u64 = 100_000;
const ADJOINT_EXHAUSTIVE_TRIPLES: u64 = 1_000_000;
const ADJOINT_SAMPLED_TRIPLES: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("radical computation infeasible: {0}")]
    Infeasible(String),
    #[error("kernel ideal is not nilpotent")]
    NotNilKernel,
    #[error("operation needs a complete unit enumeration")]
    IncompleteUnits,
    #[error("no unit found within the sampling budget")]
    SamplingExhausted,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

impl StructureError {
    pub fn is_cap(&self) -> bool {
        matches!(
            self,
            StructureError::Infeasible(_) | StructureError::Algebra(AlgebraError::CapExceeded { .. })
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadicalMethod {
    TraceForm,
    BruteQuasiRegular,
    Hybrid,
}

impl RadicalMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            RadicalMethod::TraceForm => "traceForm",
            RadicalMethod::BruteQuasiRegular => "bruteQuasiRegular",
            RadicalMethod::Hybrid => "hybrid",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadicalCertificate {
    pub ideal: IdealBasis,
    pub nilpotency_index: usize,
    pub method: RadicalMethod,
    pub quotient_semisimple_checked: bool,
}

/// Least `t` with `I^t = 0`; `None` when the powers stabilize at a nonzero
/// space. The zero ideal has index 1.
pub fn nilpotency_index(alg: &FiniteAlgebra, ideal: &IdealBasis) -> Option<usize> {
    power_index(alg, ideal.space())
}

// Works for any subspace closed under multiplication by itself on one side.
fn power_index(alg: &FiniteAlgebra, s: &Subspace) -> Option<usize> {
    let mut power = s.clone();
    let mut t = 1;
    while !power.is_zero() {
        let next = alg.subspace_product(&power, s);
        if next.rank() == power.rank() {
            return None;
        }
        power = next;
        t += 1;
    }
    Some(t)
}

/// Radical of the form `T(x, y) = tr(L_{xy})`.
pub fn trace_form_radical(alg: &FiniteAlgebra) -> Subspace {
    let n = alg.dim();
    let field = alg.field();
    let traces: Vec<Scalar> = (0..n)
        .map(|k| {
            let mut t = field.zero();
            for j in 0..n {
                t += &alg.structure_constant(k, j, j);
            }
            t
        })
        .collect();
    let mut gram = Matrix::zeros(field, n, n);
    for i in 0..n {
        for j in 0..n {
            let prod = alg.mul(&alg.basis_element(i), &alg.basis_element(j));
            let mut acc = field.zero();
            for (c, t) in prod.0.iter().zip(&traces) {
                acc += &(c * t);
            }
            gram[(i, j)] = acc;
        }
    }
    Subspace::spanned_by(field, n, gram.nullspace().iter())
}

/// Largest two-sided ideal contained in the subspace `k`.
pub fn largest_ideal_in(alg: &FiniteAlgebra, k: &Subspace) -> Subspace {
    let n = alg.dim();
    let field = alg.field();
    if k.is_zero() {
        return Subspace::new(field, n);
    }
    if k.rank() == n {
        return k.clone();
    }
    let annihilators = Matrix::from_rows(field, k.basis()).nullspace();
    let mut constraints = Subspace::new(field, n);
    'outer: for i in 0..n {
        let bi = alg.basis_element(i);
        let left: Vec<Element> = (0..n).map(|l| alg.mul(&bi, &alg.basis_element(l))).collect();
        for j in 0..n {
            let bj = alg.basis_element(j);
            let images: Vec<Element> = left.iter().map(|x| alg.mul(x, &bj)).collect();
            for phi in &annihilators {
                let row: Vec<Scalar> = images
                    .iter()
                    .map(|w| {
                        let mut acc = field.zero();
                        for (a, b) in phi.iter().zip(&w.0) {
                            acc += &(a * b);
                        }
                        acc
                    })
                    .collect();
                constraints.insert(&row);
                if constraints.rank() == n {
                    break 'outer;
                }
            }
        }
    }
    let m = Matrix::from_rows(field, constraints.basis());
    Subspace::spanned_by(field, n, m.nullspace().iter())
}

/// Nilpotent elements of the center. Only meaningful in characteristic `p`,
/// where `z -> z^p` is linear on the center.
fn central_nil_part(alg: &FiniteAlgebra) -> Subspace {
    let n = alg.dim();
    let field = alg.field();
    let p = field.characteristic();
    // column l of the system is [b_l, b_i] coordinates stacked over i
    let mut sys = Matrix::zeros(field, n * n, n);
    for l in 0..n {
        let bl = alg.basis_element(l);
        for i in 0..n {
            let c = alg.commutator(&bl, &alg.basis_element(i));
            for (k, v) in c.0.into_iter().enumerate() {
                sys[(i * n + k, l)] = v;
            }
        }
    }
    let center = Subspace::spanned_by(field, n, sys.nullspace().iter());
    if p == 0 || center.is_zero() {
        return Subspace::new(field, n);
    }
    let d = center.rank();
    let mut reach = p;
    while reach < d as u64 {
        reach = reach.saturating_mul(p);
    }
    // matrix of Frobenius^m on center coordinates
    let cols: Vec<Vec<Scalar>> = center
        .basis()
        .iter()
        .map(|z| {
            let img = alg.pow(&Element(z.clone()), reach);
            center.coordinates(&img.0).expect("center is a subalgebra")
        })
        .collect();
    let frob = Matrix::from_columns(field, d, &cols);
    let kernel = frob.nullspace();
    let vectors: Vec<Vec<Scalar>> = kernel
        .iter()
        .map(|c| {
            let mut v = crate::linalg::zero_vec(field, n);
            for (coef, b) in c.iter().zip(center.basis()) {
                crate::linalg::axpy(&mut v, coef, b);
            }
            v
        })
        .collect();
    Subspace::spanned_by(field, n, vectors.iter())
}

/// `{x : x^(p^k) in [A,A]}` for `p^k >= dim A`. In characteristic `p` the
/// map `x -> x^p` is additive modulo `[A,A]`, so this is a subspace, and it
/// contains every nilpotent element.
pub fn p_power_commutator_space(alg: &FiniteAlgebra) -> Subspace {
    let n = alg.dim();
    let field = alg.field();
    let p = field.characteristic();
    assert!(p > 0, "needs positive characteristic");
    let mut brackets = Subspace::new(field, n);
    for i in 0..n {
        for j in i + 1..n {
            brackets.insert(&alg.commutator(&alg.basis_element(i), &alg.basis_element(j)).0);
        }
    }
    let mut reach = p;
    while reach < n as u64 {
        reach = reach.saturating_mul(p);
    }
    let cols: Vec<Vec<Scalar>> =
        (0..n).map(|i| brackets.reduce(&alg.pow(&alg.basis_element(i), reach).0)).collect();
    Subspace::spanned_by(field, n, Matrix::from_columns(field, n, &cols).nullspace().iter())
}

// x lies in J exactly when the left ideal Ax is nilpotent.
fn in_radical(alg: &FiniteAlgebra, x: &Element) -> bool {
    let n = alg.dim();
    let left: Vec<Vec<Scalar>> = (0..n).map(|i| alg.mul(&alg.basis_element(i), x).0).collect();
    let s = Subspace::spanned_by(alg.field(), n, left.iter());
    power_index(alg, &s).is_some()
}

fn radical_ideal(alg: &FiniteAlgebra, cap: u64) -> Result<(IdealBasis, RadicalMethod), StructureError> {
    let field = alg.field();
    let p = field.characteristic();
    if p == 0 || p > alg.dim() as u64 {
        let k = trace_form_radical(alg);
        return Ok((alg.ideal_from_subspace(k)?, RadicalMethod::TraceForm));
    }
    let mut s = IdealBasis::zero(field, alg.dim());
    loop {
        let (b, proj) = alg.quotient(&s)?;
        let k = trace_form_radical(&b);
        let found = if p > b.dim() as u64 {
            k
        } else {
            let ideal = largest_ideal_in(&b, &k.intersection(&p_power_commutator_space(&b)));
            if ideal.is_zero() {
                break;
            }
            if power_index(&b, &ideal).is_some() {
                ideal
            } else {
                let nil = central_nil_part(&b);
                if !nil.is_zero() {
                    let gens: Vec<Element> = nil.basis().iter().map(|v| Element(v.clone())).collect();
                    b.ideal_generated_by(&gens).space().clone()
                } else {
                    let mut hit = None;
                    let iter = b.subspace_elements(&ideal, cap).map_err(|_| {
                        StructureError::Infeasible(format!(
                            "{}^{} candidates exceed cap {cap}",
                            p,
                            ideal.rank()
                        ))
                    })?;
                    for x in iter.skip(1) {
                        if in_radical(&b, &x) {
                            hit = Some(x);
                            break;
                        }
                    }
                    match hit {
                        Some(x) => b.ideal_generated_by(&[x]).space().clone(),
                        None => break,
                    }
                }
            }
        };
        if found.is_zero() {
            break;
        }
        let mut gens = s.basis();
        gens.extend(found.basis().iter().map(|v| proj.lift(&Element(v.clone()), alg.dim())));
        s = alg.ideal_generated_by(&gens);
        if p > b.dim() as u64 {
            break;
        }
    }
    Ok((s, RadicalMethod::Hybrid))
}

/// `J(A)` with a self-checked certificate.
pub fn jacobson_radical(alg: &FiniteAlgebra) -> Result<RadicalCertificate, StructureError> {
    jacobson_radical_with_cap(alg, DEFAULT_CAP)
}

pub fn jacobson_radical_with_cap(alg: &FiniteAlgebra, cap: u64) -> Result<RadicalCertificate, StructureError> {
    let (ideal, method) = radical_ideal(alg, cap)?;
    assert!(alg.is_ideal(ideal.space()), "radical is not an ideal");
    let nilpotency_index = nilpotency_index(alg, &ideal).expect("radical is nilpotent");
    if !ideal.is_zero() {
        let (q, _) = alg.quotient(&ideal)?;
        let (again, _) = radical_ideal(&q, cap)?;
        assert!(again.is_zero(), "quotient by the radical is not semisimple");
    }
    Ok(RadicalCertificate { ideal, nilpotency_index, method, quotient_semisimple_checked: true })
}

/// `{x : 1 - ax invertible for all a}` by full enumeration of `A`.
pub fn quasi_regular_radical(alg: &FiniteAlgebra, cap: u64) -> Result<RadicalCertificate, StructureError> {
    let elements: Vec<Element> = alg.elements(cap)?.collect();
    let one = alg.one();
    let quasi: BTreeSet<&Element> = elements
        .iter()
        .filter(|y| alg.is_unit(&alg.sub(&one, y)))
        .collect();
    let members: Vec<&Element> = elements
        .iter()
        .filter(|x| elements.iter().all(|a| quasi.contains(&alg.mul(a, x))))
        .collect();
    let space = Subspace::spanned_by(alg.field(), alg.dim(), members.iter().map(|e| &e.0));
    debug_assert_eq!(Some(members.len() as u64), alg.field().size().map(|p| p.pow(space.rank() as u32)));
    let ideal = alg.ideal_from_subspace(space)?;
    let nilpotency_index = nilpotency_index(alg, &ideal).expect("radical is nilpotent");
    Ok(RadicalCertificate {
        ideal,
        nilpotency_index,
        method: RadicalMethod::BruteQuasiRegular,
        quotient_semisimple_checked: false,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitSet {
    /// `(unit, inverse)` pairs in lexicographic order of the unit.
    pub units: Vec<(Element, Element)>,
    /// Group exponent, known when the enumeration is complete.
    pub exponent: Option<u64>,
    pub complete: bool,
}

impl UnitSet {
    pub fn len(&self) -> usize {
        self.units.len()
    }

    pub fn is_empty(&self) -> bool {
        self.units.is_empty()
    }

    pub fn elements(&self) -> impl Iterator<Item = &Element> {
        self.units.iter().map(|(u, _)| u)
    }
}

/// Multiplicative order of a unit, searched up to `bound`.
pub fn unit_order(alg: &FiniteAlgebra, u: &Element, bound: u64) -> Option<u64> {
    let one = alg.one();
    let mut x = u.clone();
    for k in 1..=bound {
        if x == one {
            return Some(k);
        }
        x = alg.mul(&x, u);
    }
    None
}

pub fn enumerate_units(alg: &FiniteAlgebra, cap: u64) -> Result<UnitSet, StructureError> {
    let mut units = Vec::new();
    for x in alg.elements(cap)? {
        if let Some(inv) = alg.inverse(&x) {
            units.push((x, inv));
        }
    }
    let bound = units.len() as u64;
    let exponent = units
        .iter()
        .map(|(u, _)| unit_order(alg, u, bound).expect("unit order divides the group order"))
        .fold(1u64, |acc, o| acc.lcm(&o));
    Ok(UnitSet { units, exponent: Some(exponent), complete: true })
}

/// Seeded rejection sample of `count` units (repeats allowed).
pub fn sample_units(alg: &FiniteAlgebra, count: usize, seed: u64) -> Result<UnitSet, StructureError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let budget = SAMPLING_BUDGET_PER_UNIT.saturating_mul(count.max(1) as u64);
    let mut tries = 0u64;
    let mut units = Vec::with_capacity(count);
    while units.len() < count {
        if tries >= budget {
            return Err(StructureError::SamplingExhausted);
        }
        tries += 1;
        let x = alg.random_element(&mut rng);
        if let Some(inv) = alg.inverse(&x) {
            units.push((x, inv));
        }
    }
    Ok(UnitSet { units, exponent: None, complete: false })
}

fn tag_idempotents<I: Iterator<Item = Element>>(alg: &FiniteAlgebra, it: I) -> Vec<(Element, bool)> {
    it.filter(|e| &alg.mul(e, e) == e)
        .map(|e| {
            let central = alg.is_central(&e);
            (e, central)
        })
        .collect()
}

/// All idempotents with a centrality flag.
pub fn idempotent_scan(alg: &FiniteAlgebra, cap: u64) -> Result<Vec<(Element, bool)>, StructureError> {
    Ok(tag_idempotents(alg, alg.elements(cap)?))
}

/// Subalgebra generated by `1` and `gens`.
pub fn generated_subalgebra(alg: &FiniteAlgebra, gens: &[Element]) -> Subspace {
    let mut span = Subspace::new(alg.field(), alg.dim());
    let mut queue = Vec::new();
    for x in core::iter::once(alg.one()).chain(gens.iter().cloned()) {
        if span.insert(&x.0) {
            queue.push(x);
        }
    }
    while let Some(u) = queue.pop() {
        for g in gens {
            let v = alg.mul(&u, g);
            if span.insert(&v.0) {
                queue.push(v);
            }
        }
    }
    span
}

/// Idempotent scan restricted to the subalgebra generated by `gens`;
/// centrality is still tested in the whole algebra.
pub fn idempotent_scan_in_subalgebra(
    alg: &FiniteAlgebra,
    gens: &[Element],
    cap: u64,
) -> Result<Vec<(Element, bool)>, StructureError> {
    let sub = generated_subalgebra(alg, gens);
    Ok(tag_idempotents(alg, alg.subspace_elements(&sub, cap)?))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpimorphismReport {
    pub holds: bool,
    /// `(unit of A/I, lift in A, inverse of the lift)`
    pub lifts: Vec<(Element, Element, Element)>,
    pub quotient_units: usize,
    pub source_units: Option<usize>,
    /// `|1 + I|`
    pub kernel_size: u64,
}

/// Checks that `U(A) -> U(A/I)` is onto for a nilpotent ideal `I`.
pub fn unit_epimorphism_check(
    alg: &FiniteAlgebra,
    ideal: &IdealBasis,
    cap: u64,
) -> Result<EpimorphismReport, StructureError> {
    if nilpotency_index(alg, ideal).is_none() {
        return Err(StructureError::NotNilKernel);
    }
    let (q, proj) = alg.quotient(ideal)?;
    let qunits = enumerate_units(&q, cap)?;
    let mut holds = true;
    let mut lifts = Vec::with_capacity(qunits.len());
    for (y, _) in &qunits.units {
        let lift = proj.lift(y, alg.dim());
        match alg.inverse(&lift) {
            Some(inv) if proj.apply(&lift) == *y => lifts.push((y.clone(), lift, inv)),
            _ => holds = false,
        }
    }
    let kernel_size = alg
        .field()
        .size()
        .and_then(|p| p.checked_pow(ideal.rank() as u32))
        .unwrap_or(u64::MAX);
    let mut source_units = None;
    if let Ok(units) = enumerate_units(alg, cap) {
        let image: BTreeSet<Element> = units.elements().map(|u| proj.apply(u)).collect();
        let target: BTreeSet<Element> = qunits.elements().cloned().collect();
        holds &= image == target;
        holds &= units.len() as u64 == qunits.len() as u64 * kernel_size;
        source_units = Some(units.len());
    }
    Ok(EpimorphismReport { holds, lifts, quotient_units: qunits.len(), source_units, kernel_size })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjointReport {
    pub holds: bool,
    pub order: u64,
    pub exponent: u64,
    /// Whether associativity was checked on all triples.
    pub associativity_exhaustive: bool,
}

/// `r o s = r + s + rs` on a nilpotent ideal: group axioms, and `x -> 1 + x`
/// as a homomorphism into the units.
pub fn adjoint_group_check(
    alg: &FiniteAlgebra,
    ideal: &IdealBasis,
    cap: u64,
) -> Result<AdjointReport, StructureError> {
    if nilpotency_index(alg, ideal).is_none() {
        return Err(StructureError::NotNilKernel);
    }
    let elems: Vec<Element> = alg.subspace_elements(ideal.space(), cap)?.collect();
    let set: BTreeSet<&Element> = elems.iter().collect();
    let circ = |r: &Element, s: &Element| alg.add(&alg.add(r, s), &alg.mul(r, s));
    let zero = alg.zero();
    let one = alg.one();
    let mut holds = true;
    for r in &elems {
        holds &= circ(&zero, r) == *r && circ(r, &zero) == *r;
        let shifted = alg.add(&one, r);
        match alg.inverse(&shifted) {
            Some(inv) => {
                let s = alg.sub(&inv, &one);
                holds &= set.contains(&s) && circ(r, &s) == zero && circ(&s, r) == zero;
            }
            None => holds = false,
        }
        for s in &elems {
            let rs = circ(r, s);
            holds &= set.contains(&rs);
            holds &= alg.mul(&shifted, &alg.add(&one, s)) == alg.add(&one, &rs);
        }
        if !holds {
            break;
        }
    }
    let n = elems.len() as u64;
    let associativity_exhaustive = n.saturating_pow(3) <= ADJOINT_EXHAUSTIVE_TRIPLES;
    if holds {
        let assoc = |a: &Element, b: &Element, c: &Element| circ(&circ(a, b), c) == circ(a, &circ(b, c));
        if associativity_exhaustive {
            holds = elems
                .iter()
                .all(|a| elems.iter().all(|b| elems.iter().all(|c| assoc(a, b, c))));
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0xad01);
            holds = (0..ADJOINT_SAMPLED_TRIPLES).all(|_| {
                let pick = |rng: &mut ChaCha8Rng| &elems[rng.gen_range(0..elems.len())];
                let (a, b, c) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
                assoc(a, b, c)
            });
        }
    }
    let exponent = elems
        .iter()
        .filter_map(|r| unit_order(alg, &alg.add(&one, r), n))
        .fold(1u64, |acc, o| acc.lcm(&o));
    Ok(AdjointReport { holds, order: n, exponent, associativity_exhaustive })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieSeries {
    /// Ranks of `[A,A]`, `[[A,A],[A,A]]`, ... until zero or stable.
    pub ranks: Vec<usize>,
    pub soluble: bool,
}

pub fn lie_derived_series(alg: &FiniteAlgebra) -> LieSeries {
    let n = alg.dim();
    let mut current =
        Subspace::spanned_by(alg.field(), n, (0..n).map(|i| alg.basis_element(i).0).collect::<Vec<_>>().iter());
    let mut ranks = Vec::new();
    loop {
        let basis = current.basis().to_vec();
        let mut next = Subspace::new(alg.field(), n);
        for (i, u) in basis.iter().enumerate() {
            for v in &basis[i + 1..] {
                next.insert(&alg.commutator(&Element(u.clone()), &Element(v.clone())).0);
            }
        }
        let r = next.rank();
        let stable = r == current.rank();
        ranks.push(r);
        if r == 0 || stable {
            break;
        }
        current = next;
    }
    let soluble = ranks.last() == Some(&0);
    LieSeries { ranks, soluble }
}

/// The unit group as an abstract group; element `i` is `units.units[i]`.
pub fn unit_group(alg: &FiniteAlgebra, units: &UnitSet) -> Result<FiniteGroup, StructureError> {
    if !units.complete {
        return Err(StructureError::IncompleteUnits);
    }
    let index: BTreeMap<&Element, usize> = units.elements().enumerate().map(|(i, u)| (u, i)).collect();
    let table: Vec<Vec<usize>> = units
        .elements()
        .map(|a| units.elements().map(|b| index[&alg.mul(a, b)]).collect())
        .collect();
    let labels = units
        .elements()
        .map(|u| {
            let parts: Vec<String> = u.0.iter().map(|c| format!("{c}")).collect();
            format!("[{}]", parts.join(","))
        })
        .collect();
    FiniteGroup::from_table("U", labels, table)
        .map_err(|e| StructureError::Algebra(AlgebraError::Group(e)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSeries {
    /// Orders of `G'`, `G''`, ... until trivial or stable.
    pub orders: Vec<usize>,
    pub soluble: bool,
    /// Elements of `G'` as indices into the unit list.
    pub derived: Vec<usize>,
    pub derived_exponent: u64,
}

impl GroupSeries {
    pub fn derived_is_p_group(&self, p: u64) -> bool {
        let mut n = self.derived.len() as u64;
        while n > 1 && n % p == 0 {
            n /= p;
        }
        n == 1
    }
}

fn derived_of(g: &FiniteGroup, h: &[usize]) -> Vec<usize> {
    let comms: BTreeSet<usize> = h
        .iter()
        .flat_map(|&a| h.iter().map(move |&b| (a, b)))
        .map(|(a, b)| g.commutator(a, b))
        .collect();
    g.generated_subgroup(comms)
}

pub fn group_derived_series(alg: &FiniteAlgebra, units: &UnitSet) -> Result<GroupSeries, StructureError> {
    let g = unit_group(alg, units)?;
    Ok(derived_series_of_group(&g))
}

pub fn derived_series_of_group(g: &FiniteGroup) -> GroupSeries {
    let mut current: Vec<usize> = (0..g.order()).collect();
    let mut orders = Vec::new();
    let mut derived = Vec::new();
    loop {
        let next = derived_of(g, &current);
        if orders.is_empty() {
            derived = next.clone();
        }
        orders.push(next.len());
        if next.len() == 1 || next.len() == current.len() {
            break;
        }
        current = next;
    }
    let derived_exponent = derived.iter().map(|&x| g.element_order(x) as u64).fold(1, |a, o| a.lcm(&o));
    GroupSeries { soluble: orders.last() == Some(&1), orders, derived, derived_exponent }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::group_catalog;
    use crate::scalar::FieldSpec;

    fn f(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    fn ga(field: FieldSpec, g: &str) -> FiniteAlgebra {
        FiniteAlgebra::group_algebra(field, &group_catalog(g).unwrap())
    }

    // F_3[t]/(t^3) as F_3 C9 modulo (g - 1)^3
    fn truncated_poly_f3() -> (FiniteAlgebra, Element) {
        let a = ga(f(3), "C9");
        let t = a.sub(&a.basis_element(1), &a.one());
        let ideal = a.ideal_generated_by(&[a.pow(&t, 3)]);
        let (q, proj) = a.quotient(&ideal).unwrap();
        let t = proj.apply(&t);
        (q, t)
    }

    #[test]
    fn radical_examples() {
        let cert = jacobson_radical(&ga(f(3), "Q8")).unwrap();
        assert!(cert.ideal.is_zero());
        assert_eq!(cert.nilpotency_index, 1);
        assert_eq!(cert.method, RadicalMethod::Hybrid);

        let a = ga(f(2), "C2");
        let cert = jacobson_radical(&a).unwrap();
        assert_eq!(cert.ideal.rank(), 1);
        assert!(cert.ideal.contains(&a.element_from_i64s(&[1, 1]).unwrap()));
        assert_eq!(cert.nilpotency_index, 2);

        let cert = jacobson_radical(&ga(FieldSpec::Rational, "Q8")).unwrap();
        assert!(cert.ideal.is_zero());
        assert_eq!(cert.method, RadicalMethod::TraceForm);
    }

    #[test]
    fn radical_of_local_group_algebras() {
        for g in ["D4", "Q8", "C4", "C2xC2"] {
            let a = ga(f(2), g);
            let cert = jacobson_radical(&a).unwrap();
            assert_eq!(cert.ideal.rank(), a.dim() - 1, "{g}");
        }
        let cert = jacobson_radical(&ga(f(2), "S3")).unwrap();
        assert_eq!(cert.ideal.rank(), 1);
        assert_eq!(cert.nilpotency_index, 2);
    }

    #[test]
    fn brute_radical_agrees() {
        for (p, g) in [(2, "C2"), (2, "S3"), (3, "C3"), (2, "C4"), (3, "C2xC2")] {
            let a = ga(f(p), g);
            let fast = jacobson_radical(&a).unwrap();
            let brute = quasi_regular_radical(&a, DEFAULT_CAP).unwrap();
            assert_eq!(fast.ideal, brute.ideal, "F{p}{g}");
        }
    }

    #[test]
    fn nilpotency_examples() {
        let m = FiniteAlgebra::matrix_algebra(f(2), 2).unwrap();
        assert_eq!(nilpotency_index(&m, &IdealBasis::zero(m.field(), 4)), Some(1));
        assert_eq!(nilpotency_index(&m, &m.ideal_generated_by(&[m.one()])), None);
        let (t, x) = truncated_poly_f3();
        assert_eq!(nilpotency_index(&t, &t.ideal_generated_by(&[x])), Some(3));
    }

    #[test]
    fn unit_examples() {
        let a = ga(f(2), "C2");
        let u = enumerate_units(&a, DEFAULT_CAP).unwrap();
        assert_eq!(u.len(), 2);
        assert_eq!(u.exponent, Some(2));

        let m = FiniteAlgebra::matrix_algebra(f(2), 2).unwrap();
        let u = enumerate_units(&m, DEFAULT_CAP).unwrap();
        assert_eq!(u.len(), 6);
        assert_eq!(u.exponent, Some(6));

        let (t, _) = truncated_poly_f3();
        assert_eq!(t.dim(), 3);
        let u = enumerate_units(&t, DEFAULT_CAP).unwrap();
        assert_eq!(u.len(), 18);
        assert_eq!(u.exponent, Some(6));

        assert!(enumerate_units(&ga(f(3), "Q8"), 1000).unwrap_err().is_cap());
    }

    #[test]
    fn sampled_units_are_deterministic() {
        let a = ga(f(2), "C2");
        let s1 = sample_units(&a, 10, 7).unwrap();
        let s2 = sample_units(&a, 10, 7).unwrap();
        assert_eq!(s1, s2);
        assert!(!s1.complete);
        let all = enumerate_units(&a, DEFAULT_CAP).unwrap();
        assert!(s1.elements().all(|x| all.elements().any(|y| y == x)));
    }

    #[test]
    fn idempotent_examples() {
        let a = ga(f(2), "C3");
        let ids = idempotent_scan(&a, DEFAULT_CAP).unwrap();
        let e = a.element_from_i64s(&[0, 1, 1]).unwrap();
        assert!(ids.contains(&(e, true)));
        assert!(ids.contains(&(a.zero(), true)) && ids.contains(&(a.one(), true)));

        let m = FiniteAlgebra::matrix_algebra(f(2), 2).unwrap();
        let ids = idempotent_scan(&m, DEFAULT_CAP).unwrap();
        assert!(ids.contains(&(m.basis_by_label("e11").unwrap(), false)));

        let q = ga(f(3), "Q8");
        let i = q.basis_by_label("i").unwrap();
        // F_3<i> is commutative and its idempotents are central in F_3 Q8
        let sub = idempotent_scan_in_subalgebra(&q, &[i.clone()], DEFAULT_CAP).unwrap();
        assert_eq!(generated_subalgebra(&q, &[i.clone()]).rank(), 4);
        assert!(sub.iter().all(|(_, c)| *c));
        let j = q.basis_by_label("j").unwrap();
        let all = idempotent_scan_in_subalgebra(&q, &[i, j], DEFAULT_CAP).unwrap();
        assert!(all.iter().any(|(_, c)| !c));
    }

    #[test]
    fn epimorphism_examples() {
        let (t, x) = truncated_poly_f3();
        let i = t.ideal_generated_by(&[x]);
        let rep = unit_epimorphism_check(&t, &i, DEFAULT_CAP).unwrap();
        assert!(rep.holds);
        assert_eq!((rep.quotient_units, rep.kernel_size, rep.source_units), (2, 9, Some(18)));

        let a = ga(f(2), "C2");
        let j = jacobson_radical(&a).unwrap().ideal;
        let rep = unit_epimorphism_check(&a, &j, DEFAULT_CAP).unwrap();
        assert!(rep.holds);
        assert_eq!(rep.lifts.len(), 1);
        let rep = unit_epimorphism_check(&a, &IdealBasis::zero(a.field(), 2), DEFAULT_CAP).unwrap();
        assert!(rep.holds);

        let m = FiniteAlgebra::matrix_algebra(f(2), 2).unwrap();
        let whole = m.ideal_generated_by(&[m.one()]);
        assert_eq!(unit_epimorphism_check(&m, &whole, DEFAULT_CAP), Err(StructureError::NotNilKernel));
    }

    #[test]
    fn adjoint_examples() {
        let a = ga(f(2), "C2");
        let j = jacobson_radical(&a).unwrap().ideal;
        let rep = adjoint_group_check(&a, &j, DEFAULT_CAP).unwrap();
        assert!(rep.holds);
        assert_eq!((rep.order, rep.exponent), (2, 2));

        let (t, x) = truncated_poly_f3();
        let rep = adjoint_group_check(&t, &t.ideal_generated_by(&[x]), DEFAULT_CAP).unwrap();
        assert!(rep.holds);
        assert_eq!((rep.order, rep.exponent), (9, 3));
    }

    #[test]
    fn derived_series_examples() {
        let a = ga(f(2), "C4");
        assert_eq!(lie_derived_series(&a), LieSeries { ranks: alloc::vec![0], soluble: true });
        let m2 = FiniteAlgebra::matrix_algebra(f(2), 2).unwrap();
        assert_eq!(lie_derived_series(&m2).ranks, [3, 1, 0]);
        let m3 = FiniteAlgebra::matrix_algebra(f(3), 2).unwrap();
        let s = lie_derived_series(&m3);
        assert_eq!(s.ranks, [3, 3]);
        assert!(!s.soluble);

        let d = ga(f(2), "D4");
        let u = enumerate_units(&d, DEFAULT_CAP).unwrap();
        assert_eq!(u.len(), 128);
        let series = group_derived_series(&d, &u).unwrap();
        assert!(series.derived_is_p_group(2));
        assert!(series.soluble);
        assert!(series.derived_exponent.is_power_of_two());
    }
}
