//! Evaluation of Laurent polynomial identities, group identities and
//! standard identities on finite-dimensional algebras, and the derivation of
//! univariate identities from a qualifying LPI.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::{AlgebraError, Element, FiniteAlgebra, Provenance};
use crate::laurent::{for_each_permutation, LaurentError, LaurentPoly, QualifyReport};
use crate::linalg::{Matrix, Subspace};
use crate::scalar::Scalar;
use crate::structure::{self, StructureError, UnitSet};
use crate::unipoly::{UniPoly, UniPolyError};
use crate::word::{all_words_up_to, ReducedWord};

/// Exhaustive checks run when the tuple count stays at or below this.
pub const EXHAUSTIVE_TUPLE_LIMIT: u64 = 10_000_000;
pub const DEFAULT_SAMPLES: usize = 10_000;
/// Random confirmations attached to a structural certificate.
pub const STRUCTURAL_CONFIRMATIONS: usize = 100;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdentityError {
    #[error("no value assigned to x{0}")]
    MissingAssignment(u32),
    #[error("assigned element is not a unit")]
    NotAUnit,
    #[error("expected {expected} arguments, got {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("{what} exceeds cap {cap}")]
    CapExceeded { what: String, cap: u64 },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("certificate failed: {0}")]
    CertificateFailed(String),
    #[error("truncation degree {degree} is below word length {length}")]
    TruncationTooLow { degree: usize, length: usize },
    #[error("collapsed polynomial vanished")]
    CollapseVanished,
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    UniPoly(#[from] UniPolyError),
}

impl IdentityError {
    pub fn is_cap(&self) -> bool {
        match self {
            IdentityError::CapExceeded { .. } => true,
            IdentityError::Structure(e) => e.is_cap(),
            IdentityError::Algebra(AlgebraError::CapExceeded { .. }) => true,
            _ => false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckMode {
    Exhaustive,
    MultilinearBasis,
    Sampled { count: usize, seed: u64 },
    Structural,
}

impl CheckMode {
    pub fn name(&self) -> &'static str {
        match self {
            CheckMode::Exhaustive => "exhaustive",
            CheckMode::MultilinearBasis => "multilinearBasis",
            CheckMode::Sampled { .. } => "sampled",
            CheckMode::Structural => "structural",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// Inputs (in variable order) with a nonzero output.
    Tuple { inputs: Vec<Element>, value: Element },
    /// Basis indices with a nonzero output.
    BasisTuple { indices: Vec<usize>, value: Element },
    Scalar { lambda: Scalar, value: Scalar },
    /// A nonzero combination of words vanishing at the evaluated pair.
    Relation(LaurentPoly),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckVerdict {
    pub holds: bool,
    pub mode: CheckMode,
    pub witness: Option<Witness>,
    pub tuples_checked: u64,
}

impl CheckVerdict {
    fn pass(mode: CheckMode, tuples_checked: u64) -> Self {
        CheckVerdict { holds: true, mode, witness: None, tuples_checked }
    }

    fn fail(mode: CheckMode, witness: Witness, tuples_checked: u64) -> Self {
        CheckVerdict { holds: false, mode, witness: Some(witness), tuples_checked }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeRequest {
    Auto,
    Exhaustive,
    Sampled,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOptions {
    /// Ceiling on enumerated algebra elements.
    pub cap: u64,
    pub tuple_limit: u64,
    pub samples: usize,
    pub seed: u64,
    pub mode: ModeRequest,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            cap: structure::DEFAULT_CAP,
            tuple_limit: EXHAUSTIVE_TUPLE_LIMIT,
            samples: DEFAULT_SAMPLES,
            seed: 0,
            mode: ModeRequest::Auto,
        }
    }
}

/// A unit together with its inverse.
pub type UnitPair = (Element, Element);

/// Attaches inverses to a tuple of elements.
pub fn as_units(alg: &FiniteAlgebra, elems: &[Element]) -> Result<Vec<UnitPair>, IdentityError> {
    elems
        .iter()
        .map(|x| alg.inverse(x).map(|inv| (x.clone(), inv)).ok_or(IdentityError::NotAUnit))
        .collect()
}

/// Value of `w` with `x_i` assigned to `assignment[i - 1]`.
pub fn eval_word(
    alg: &FiniteAlgebra,
    w: &ReducedWord,
    assignment: &[UnitPair],
) -> Result<Element, IdentityError> {
    let mut acc = alg.one();
    for s in w.syllables() {
        let (u, inv) = assignment
            .get(s.var as usize - 1)
            .ok_or(IdentityError::MissingAssignment(s.var))?;
        let base = if s.exp < 0 { inv } else { u };
        acc = alg.mul(&acc, &alg.pow(base, s.exp.unsigned_abs()));
    }
    Ok(acc)
}

pub fn eval_lpi(
    alg: &FiniteAlgebra,
    p: &LaurentPoly,
    assignment: &[UnitPair],
) -> Result<Element, IdentityError> {
    if p.field() != alg.field() {
        return Err(AlgebraError::FieldMismatch { expected: alg.field(), found: p.field() }.into());
    }
    let mut acc = alg.zero();
    for (w, c) in p.terms() {
        let v = eval_word(alg, w, assignment)?;
        acc = alg.add(&acc, &alg.scale(c, &v));
    }
    Ok(acc)
}

// Trivial units of a group algebra come first, so that witnesses are
// reported on group elements whenever a group tuple fails.
fn ordered_units(alg: &FiniteAlgebra, units: &UnitSet) -> Vec<UnitPair> {
    let Some(g) = alg.group() else {
        return units.units.clone();
    };
    let trivial: Vec<Element> = (0..g.order()).map(|i| alg.basis_element(i)).collect();
    let set: BTreeSet<&Element> = trivial.iter().collect();
    let mut out: Vec<UnitPair> = trivial
        .iter()
        .map(|x| (x.clone(), alg.basis_element(g.inv(x.0.iter().position(|c| c.is_one()).unwrap()))))
        .collect();
    out.extend(units.units.iter().filter(|(u, _)| !set.contains(u)).cloned());
    out
}

enum Pool {
    Complete(Vec<UnitPair>),
    Sampled(Vec<UnitPair>),
}

fn unit_pool(
    alg: &FiniteAlgebra,
    arity: usize,
    opts: &CheckOptions,
) -> Result<(Pool, CheckMode), IdentityError> {
    let enumerated = if opts.mode == ModeRequest::Sampled {
        None
    } else {
        match structure::enumerate_units(alg, opts.cap) {
            Ok(u) => Some(u),
            Err(e) if e.is_cap() && opts.mode == ModeRequest::Auto => None,
            Err(e) => return Err(e.into()),
        }
    };
    if let Some(units) = enumerated {
        let count = (units.len() as u64).checked_pow(arity as u32);
        let within = count.is_some_and(|c| c <= opts.tuple_limit);
        if within || opts.mode == ModeRequest::Exhaustive {
            if !within {
                return Err(IdentityError::CapExceeded {
                    what: format!("{}^{} unit tuples", units.len(), arity),
                    cap: opts.tuple_limit,
                });
            }
            return Ok((Pool::Complete(ordered_units(alg, &units)), CheckMode::Exhaustive));
        }
        return Ok((
            Pool::Sampled(ordered_units(alg, &units)),
            CheckMode::Sampled { count: opts.samples, seed: opts.seed },
        ));
    }
    let sample = structure::sample_units(alg, opts.samples.max(1) * arity.max(1), opts.seed)?;
    Ok((Pool::Sampled(sample.units), CheckMode::Sampled { count: opts.samples, seed: opts.seed }))
}

/// Runs `f` on unit tuples of the given arity; the first nonzero value wins.
fn check_on_units<F>(
    alg: &FiniteAlgebra,
    arity: usize,
    opts: &CheckOptions,
    mut f: F,
) -> Result<CheckVerdict, IdentityError>
where
    F: FnMut(&[UnitPair]) -> Result<Element, IdentityError>,
{
    let (pool, mode) = unit_pool(alg, arity, opts)?;
    let mut checked = 0u64;
    let mut tuple: Vec<UnitPair> = Vec::with_capacity(arity);
    let mut report = |tuple: &[UnitPair], checked: u64| -> Result<Option<CheckVerdict>, IdentityError> {
        let value = f(tuple)?;
        if value.is_zero() {
            return Ok(None);
        }
        let inputs = tuple.iter().map(|(u, _)| u.clone()).collect();
        Ok(Some(CheckVerdict::fail(mode, Witness::Tuple { inputs, value }, checked)))
    };
    match pool {
        Pool::Complete(units) => {
            let n = units.len();
            let mut digits = vec![0usize; arity];
            loop {
                tuple.clear();
                tuple.extend(digits.iter().map(|&d| units[d].clone()));
                checked += 1;
                if let Some(v) = report(&tuple, checked)? {
                    return Ok(v);
                }
                let mut pos = arity;
                loop {
                    if pos == 0 {
                        return Ok(CheckVerdict::pass(mode, checked));
                    }
                    pos -= 1;
                    digits[pos] += 1;
                    if digits[pos] < n {
                        break;
                    }
                    digits[pos] = 0;
                }
            }
        }
        Pool::Sampled(units) => {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            for _ in 0..opts.samples {
                tuple.clear();
                for _ in 0..arity {
                    tuple.push(units[rng.gen_range(0..units.len())].clone());
                }
                checked += 1;
                if let Some(v) = report(&tuple, checked)? {
                    return Ok(v);
                }
            }
            Ok(CheckVerdict::pass(mode, checked))
        }
    }
}

fn lpi_arity(p: &LaurentPoly) -> usize {
    p.max_var().max(1) as usize
}

/// Does `P` vanish on all (or sampled) unit tuples of `A`?
pub fn check_lpi(alg: &FiniteAlgebra, p: &LaurentPoly, opts: &CheckOptions) -> Result<CheckVerdict, IdentityError> {
    let verdict = check_on_units(alg, lpi_arity(p), opts, |t| eval_lpi(alg, p, t))?;
    if let Some(Witness::Tuple { inputs, .. }) = &verdict.witness {
        debug_assert!(!eval_lpi(alg, p, &as_units(alg, inputs)?)?.is_zero());
    }
    Ok(verdict)
}

/// `check_lpi` for `P = 1 - w`.
pub fn check_group_identity(
    alg: &FiniteAlgebra,
    w: &ReducedWord,
    opts: &CheckOptions,
) -> Result<CheckVerdict, IdentityError> {
    let p = LaurentPoly::from_group_identity(alg.field(), w)?;
    check_lpi(alg, &p, opts)
}

/// `S_n(x_1, ..., x_n) = sum_sigma sgn(sigma) x_sigma(1) ... x_sigma(n)` for
/// even `n <= 6`.
pub fn standard_identity_eval(alg: &FiniteAlgebra, args: &[Element]) -> Result<Element, IdentityError> {
    let n = args.len();
    if n == 0 || n % 2 == 1 || n > 6 {
        return Err(IdentityError::ArityMismatch { expected: (n + n % 2).clamp(2, 6), found: n });
    }
    let mut acc = alg.zero();
    for_each_permutation(n, |perm, even| {
        let mut prod = args[perm[0]].clone();
        for &i in &perm[1..] {
            prod = alg.mul(&prod, &args[i]);
        }
        acc = if even { alg.add(&acc, &prod) } else { alg.sub(&acc, &prod) };
    });
    Ok(acc)
}

fn check_m(m: usize) -> Result<(), IdentityError> {
    if !(1..=3).contains(&m) {
        return Err(IdentityError::ArityMismatch { expected: 2 * m.clamp(1, 3), found: 2 * m });
    }
    Ok(())
}

// Strictly increasing index tuples; by alternation they decide all basis tuples.
fn for_each_increasing<F: FnMut(&[usize]) -> bool>(n: usize, k: usize, mut f: F) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if !f(&idx) {
            return;
        }
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn basis_tuple_budget(alg: &FiniteAlgebra, m: usize) -> Result<(), IdentityError> {
    let total = (alg.dim() as u64).checked_pow(2 * m as u32);
    if total.map_or(true, |t| t > EXHAUSTIVE_TUPLE_LIMIT) {
        return Err(IdentityError::CapExceeded {
            what: format!("{}^{} basis tuples", alg.dim(), 2 * m),
            cap: EXHAUSTIVE_TUPLE_LIMIT,
        });
    }
    Ok(())
}

/// `S_{2m}` on basis tuples. Tuples with a repeated index vanish and
/// permuted tuples agree up to sign, so only increasing tuples are evaluated.
pub fn check_multilinear_identity(alg: &FiniteAlgebra, m: usize) -> Result<CheckVerdict, IdentityError> {
    check_m(m)?;
    basis_tuple_budget(alg, m)?;
    let basis: Vec<Element> = (0..alg.dim()).map(|i| alg.basis_element(i)).collect();
    let mut checked = 0u64;
    let mut witness = None;
    let mut err = None;
    for_each_increasing(alg.dim(), 2 * m, |idx| {
        checked += 1;
        let args: Vec<Element> = idx.iter().map(|&i| basis[i].clone()).collect();
        match standard_identity_eval(alg, &args) {
            Ok(v) if v.is_zero() => true,
            Ok(value) => {
                witness = Some(Witness::BasisTuple { indices: idx.to_vec(), value });
                false
            }
            Err(e) => {
                err = Some(e);
                false
            }
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    Ok(match witness {
        Some(w) => CheckVerdict::fail(CheckMode::MultilinearBasis, w, checked),
        None => CheckVerdict::pass(CheckMode::MultilinearBasis, checked),
    })
}

/// Structural certificate for `(S_{2m})^t = 0`: every basis value of
/// `S_{2m}` lies in `J(A)` and `J(A)^t = 0`. Also confirmed on seeded random
/// tuples.
pub fn check_power_standard_identity(
    alg: &FiniteAlgebra,
    m: usize,
    t: usize,
    seed: u64,
) -> Result<CheckVerdict, IdentityError> {
    check_m(m)?;
    basis_tuple_budget(alg, m)?;
    let cert = structure::jacobson_radical(alg)?;
    if cert.nilpotency_index > t {
        return Err(IdentityError::CertificateFailed(format!(
            "J^{t} is nonzero (nilpotency index {})",
            cert.nilpotency_index
        )));
    }
    let basis: Vec<Element> = (0..alg.dim()).map(|i| alg.basis_element(i)).collect();
    let mut checked = 0u64;
    let mut offending = None;
    for_each_increasing(alg.dim(), 2 * m, |idx| {
        checked += 1;
        let args: Vec<Element> = idx.iter().map(|&i| basis[i].clone()).collect();
        let v = standard_identity_eval(alg, &args).expect("arity checked");
        if cert.ideal.contains(&v) {
            true
        } else {
            offending = Some(idx.to_vec());
            false
        }
    });
    if let Some(idx) = offending {
        return Err(IdentityError::CertificateFailed(format!(
            "S_{} on basis tuple {:?} is not in the radical",
            2 * m,
            idx
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..STRUCTURAL_CONFIRMATIONS {
        let args: Vec<Element> = (0..2 * m).map(|_| alg.random_element(&mut rng)).collect();
        checked += 1;
        let s = standard_identity_eval(alg, &args)?;
        let value = alg.pow(&s, t as u64);
        if !value.is_zero() {
            return Ok(CheckVerdict::fail(CheckMode::Structural, Witness::Tuple { inputs: args, value }, checked));
        }
    }
    Ok(CheckVerdict::pass(CheckMode::Structural, checked))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonmatrixWitness {
    pub lambda: Scalar,
    pub value: Scalar,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationTrace {
    pub input: LaurentPoly,
    pub qualify: QualifyReport,
    /// `x_var -> x_var^k`; `k = 1` means no substitution was needed.
    pub substitution: (u32, i64),
    pub substituted: LaurentPoly,
    pub f0: UniPoly,
    pub l: i64,
    pub r: i64,
    pub f1: UniPoly,
    pub g: UniPoly,
    pub nonmatrix: Option<NonmatrixWitness>,
}

/// Collapses a qualifying two-variable LPI to univariate identities:
/// `f0(a) = P(a, a)`, `f1 = a^-l f0` (when `l < 0`), `g(x) = f1(1 + x)`.
pub fn derive_identities(p: &LaurentPoly) -> Result<DerivationTrace, IdentityError> {
    let qualify = p.qualify();
    let sub = p.ensure_nonzero_totals()?;
    let totals: Vec<i64> = sub.poly.nonconstant_words().map(|(w, _)| w.exp_sums().total).collect();
    let f0 = UniPoly::from_terms(
        p.field(),
        sub.poly.terms().iter().map(|(w, c)| (w.exp_sums().total, c.clone())),
    )
    .map_err(|_| IdentityError::CollapseVanished)?;
    let l = totals.iter().copied().min().unwrap_or(0);
    let r = totals.iter().copied().max().unwrap_or(0);
    let f1 = if l < 0 { f0.shift(-l) } else { f0.clone() };
    let g = f1.compose_one_plus_x()?;
    let nonmatrix = nonmatrix_witness(&f1).ok();
    Ok(DerivationTrace {
        input: p.clone(),
        qualify,
        substitution: (sub.var, sub.k),
        substituted: sub.poly,
        f0,
        l,
        r,
        f1,
        g,
        nonmatrix,
    })
}

/// `f(x)` in the algebra; negative exponents use `x_inv`.
pub fn eval_unipoly(
    alg: &FiniteAlgebra,
    f: &UniPoly,
    x: &Element,
    x_inv: Option<&Element>,
) -> Result<Element, IdentityError> {
    let mut acc = alg.zero();
    for (e, c) in f.coefficients() {
        let term = if *e >= 0 {
            alg.pow(x, *e as u64)
        } else {
            alg.pow(x_inv.ok_or(IdentityError::NotAUnit)?, e.unsigned_abs())
        };
        acc = alg.add(&acc, &alg.scale(c, &term));
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedVerdicts {
    /// `f1(u) = 0` on units.
    pub units: CheckVerdict,
    /// `g(j) = 0` on the radical.
    pub radical: CheckVerdict,
    /// `f1(u) = u^-l f0(u)` on units.
    pub consistency: CheckVerdict,
}

impl DerivedVerdicts {
    pub fn holds(&self) -> bool {
        self.units.holds && self.radical.holds && self.consistency.holds
    }
}

pub fn verify_derived(
    alg: &FiniteAlgebra,
    trace: &DerivationTrace,
    opts: &CheckOptions,
) -> Result<DerivedVerdicts, IdentityError> {
    let (pool, mode) = unit_pool(alg, 1, opts)?;
    let units = match pool {
        Pool::Complete(u) | Pool::Sampled(u) => u,
    };
    let mut unit_verdict = CheckVerdict::pass(mode, 0);
    let mut consistency = CheckVerdict::pass(mode, 0);
    for (u, inv) in &units {
        let v1 = eval_unipoly(alg, &trace.f1, u, Some(inv))?;
        unit_verdict.tuples_checked += 1;
        if unit_verdict.holds && !v1.is_zero() {
            unit_verdict = CheckVerdict::fail(
                mode,
                Witness::Tuple { inputs: vec![u.clone()], value: v1.clone() },
                unit_verdict.tuples_checked,
            );
        }
        let v0 = eval_unipoly(alg, &trace.f0, u, Some(inv))?;
        let shifted = if trace.l < 0 { alg.mul(&alg.pow(u, trace.l.unsigned_abs()), &v0) } else { v0 };
        consistency.tuples_checked += 1;
        let diff = alg.sub(&v1, &shifted);
        if consistency.holds && !diff.is_zero() {
            consistency = CheckVerdict::fail(
                mode,
                Witness::Tuple { inputs: vec![u.clone()], value: diff },
                consistency.tuples_checked,
            );
        }
    }
    let cert = structure::jacobson_radical_with_cap(alg, opts.cap)?;
    let (elems, rmode): (Vec<Element>, CheckMode) = match alg.subspace_elements(cert.ideal.space(), opts.cap) {
        Ok(it) => (it.collect(), CheckMode::Exhaustive),
        Err(_) => {
            // spanning samples: the basis plus seeded combinations
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            let basis = cert.ideal.basis();
            let mut v = basis.clone();
            for _ in 0..opts.samples {
                let mut x = alg.zero();
                for b in &basis {
                    let c = alg.random_element(&mut rng).0[0].clone();
                    x = alg.add(&x, &alg.scale(&c, b));
                }
                v.push(x);
            }
            (v, CheckMode::Sampled { count: opts.samples, seed: opts.seed })
        }
    };
    let mut radical = CheckVerdict::pass(rmode, 0);
    for j in &elems {
        radical.tuples_checked += 1;
        let v = eval_unipoly(alg, &trace.g, j, None)?;
        if !v.is_zero() {
            radical = CheckVerdict::fail(
                rmode,
                Witness::Tuple { inputs: vec![j.clone()], value: v },
                radical.tuples_checked,
            );
            break;
        }
    }
    Ok(DerivedVerdicts { units: unit_verdict, radical, consistency })
}

/// A scalar `lambda` with `f1(lambda) != 0`. Nonzero candidates come first
/// (`1..=deg+1` over `Q`, all of `F_p^*` otherwise), then `0`.
pub fn nonmatrix_witness(f1: &UniPoly) -> Result<NonmatrixWitness, IdentityError> {
    if !f1.has_nonnegative_exponents() {
        return Err(IdentityError::PreconditionViolated("f1 has negative exponents".into()));
    }
    let field = f1.field();
    let candidates: Vec<Scalar> = match field.size() {
        Some(p) => (1..p).chain([0]).map(|i| field.residue(i)).collect(),
        None => (1..=f1.degree() + 1).chain([0]).map(|i| field.from_i64(i)).collect(),
    };
    for lambda in candidates {
        let value = f1.eval(&lambda).expect("nonnegative exponents");
        if !value.is_zero() {
            return Ok(NonmatrixWitness { lambda, value });
        }
    }
    Err(IdentityError::PreconditionViolated(format!("every scalar of {field} is a root of f1")))
}

/// `f1([a, b])` in `M_2` at `a = lambda e12`, `b = e21`; the `(1,1)` entry is
/// `f1(lambda)`.
pub fn nonmatrix_matrix(f1: &UniPoly, lambda: &Scalar) -> Result<Element, IdentityError> {
    let m = FiniteAlgebra::matrix_algebra(f1.field(), 2)?;
    let a = m.scale(lambda, &m.basis_by_label("e12").expect("matrix unit"));
    let b = m.basis_by_label("e21").expect("matrix unit");
    let c = m.commutator(&a, &b);
    eval_unipoly(&m, f1, &c, None)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct P1Result {
    pub g: UniPoly,
    pub square_zero: usize,
    pub verdict: CheckVerdict,
}

/// Empirical annihilator: lcm of the minimal polynomials of `ab` over all
/// square-zero pairs `(a, b)`, verified on every pair.
pub fn derive_p1_poly(
    alg: &FiniteAlgebra,
    lpi: &LaurentPoly,
    opts: &CheckOptions,
) -> Result<P1Result, IdentityError> {
    if !lpi.qualify().qualifies {
        return Err(IdentityError::PreconditionViolated(format!("{lpi} is not qualifying")));
    }
    let lpi_verdict = check_lpi(alg, lpi, opts)?;
    if !lpi_verdict.holds {
        return Err(IdentityError::PreconditionViolated(format!("{lpi} is not an identity of the units")));
    }
    let square_zero: Vec<Element> = alg.elements(opts.cap)?.filter(|a| alg.mul(a, a).is_zero()).collect();
    let pairs = (square_zero.len() as u64).pow(2);
    if pairs > opts.tuple_limit {
        return Err(IdentityError::CapExceeded { what: format!("{pairs} square-zero pairs"), cap: opts.tuple_limit });
    }
    let mut products = BTreeSet::new();
    for a in &square_zero {
        for b in &square_zero {
            products.insert(alg.mul(a, b));
        }
    }
    let mut g = UniPoly::monomial(alg.field(), 1);
    for x in &products {
        g = g.lcm(&alg.minimal_polynomial(x))?;
    }
    let mut verdict = CheckVerdict::pass(CheckMode::Exhaustive, 0);
    'outer: for a in &square_zero {
        for b in &square_zero {
            verdict.tuples_checked += 1;
            let value = eval_unipoly(alg, &g, &alg.mul(a, b), None)?;
            if !value.is_zero() {
                verdict = CheckVerdict::fail(
                    CheckMode::Exhaustive,
                    Witness::Tuple { inputs: vec![a.clone(), b.clone()], value },
                    verdict.tuples_checked,
                );
                break 'outer;
            }
        }
    }
    Ok(P1Result { g, square_zero: square_zero.len(), verdict })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealPiResult {
    /// Rank of `bacA`.
    pub rank: usize,
    pub annihilator: UniPoly,
    pub verdict: CheckVerdict,
}

/// Univariate annihilator of every element of `bacA`, for `a^2 = 0`, `bc = 0`.
pub fn check_ideal_pi(
    alg: &FiniteAlgebra,
    a: &Element,
    b: &Element,
    c: &Element,
    cap: u64,
) -> Result<IdealPiResult, IdentityError> {
    if !alg.mul(a, a).is_zero() {
        return Err(IdentityError::PreconditionViolated("a^2 != 0".into()));
    }
    if !alg.mul(b, c).is_zero() {
        return Err(IdentityError::PreconditionViolated("bc != 0".into()));
    }
    let bac = alg.mul(&alg.mul(b, a), c);
    let vectors: Vec<Vec<Scalar>> = (0..alg.dim()).map(|i| alg.mul(&bac, &alg.basis_element(i)).0).collect();
    let space = Subspace::spanned_by(alg.field(), alg.dim(), vectors.iter());
    let mut annihilator = UniPoly::monomial(alg.field(), 1);
    let mut checked = 0u64;
    let mut witness = None;
    for x in alg.subspace_elements(&space, cap)? {
        checked += 1;
        annihilator = annihilator.lcm(&alg.minimal_polynomial(&x))?;
        if witness.is_none() && annihilator.degree() > alg.dim() as i64 {
            witness = Some(x);
        }
    }
    let verdict = match witness {
        Some(x) => {
            let value = eval_unipoly(alg, &annihilator, &x, None)?;
            // the lcm still annihilates x; the witness marks where the degree bound broke
            CheckVerdict::fail(CheckMode::Exhaustive, Witness::Tuple { inputs: vec![x], value }, checked)
        }
        None => CheckVerdict::pass(CheckMode::Exhaustive, checked),
    };
    Ok(IdealPiResult { rank: space.rank(), annihilator, verdict })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemiprimeReport {
    pub semiprime: bool,
    pub nilpotents: usize,
    /// `bac = 0` for all `bc = 0` and nilpotent `a`; a failure carries `(b, a, c)`.
    pub verdict: CheckVerdict,
}

fn is_nilpotent(alg: &FiniteAlgebra, x: &Element) -> bool {
    alg.pow(x, alg.dim() as u64).is_zero()
}

/// Tests `bc = 0 => bac = 0` for nilpotent `a`. For fixed `b` the condition
/// is linear in `c`, so `c` runs over a basis of the right annihilator of `b`.
pub fn semiprime_lpi_consequences(alg: &FiniteAlgebra, opts: &CheckOptions) -> Result<SemiprimeReport, IdentityError> {
    let semiprime = structure::jacobson_radical_with_cap(alg, opts.cap)?.ideal.is_zero();
    let all: Vec<Element> = alg.elements(opts.cap)?.collect();
    let nilpotents: Vec<&Element> = all.iter().filter(|x| !x.is_zero() && is_nilpotent(alg, x)).collect();
    let mut checked = 0u64;
    for b in &all {
        if b.is_zero() || nilpotents.is_empty() {
            continue;
        }
        let ann = alg.left_mul_matrix(b).nullspace();
        for c in &ann {
            let c = Element(c.clone());
            for a in &nilpotents {
                checked += 1;
                let value = alg.mul(&alg.mul(b, a), &c);
                if !value.is_zero() {
                    let inputs = vec![b.clone(), (*a).clone(), c];
                    return Ok(SemiprimeReport {
                        semiprime,
                        nilpotents: nilpotents.len(),
                        verdict: CheckVerdict::fail(CheckMode::Exhaustive, Witness::Tuple { inputs, value }, checked),
                    });
                }
            }
        }
    }
    Ok(SemiprimeReport {
        semiprime,
        nilpotents: nilpotents.len(),
        verdict: CheckVerdict::pass(CheckMode::Exhaustive, checked),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreePairResult {
    pub words: usize,
    pub rank: usize,
    pub verdict: CheckVerdict,
}

/// Evaluates all reduced words of length `<= max_len` at `g1 = 1 + a`,
/// `g2 = 1 + b` in the truncated algebra and tests linear independence.
/// A dependency is returned as a vanishing Laurent polynomial.
pub fn free_pair_witness(alg: &FiniteAlgebra, max_len: usize) -> Result<FreePairResult, IdentityError> {
    let Provenance::TruncNilFree(degree) = alg.provenance() else {
        return Err(IdentityError::PreconditionViolated("needs a truncated nil-generated free algebra".into()));
    };
    if *degree < max_len {
        return Err(IdentityError::TruncationTooLow { degree: *degree, length: max_len });
    }
    let (alpha, beta) = (alg.basis_element(1), alg.basis_element(2));
    let one = alg.one();
    let gens = [
        (alg.add(&one, &alpha), alg.sub(&one, &alpha)),
        (alg.add(&one, &beta), alg.sub(&one, &beta)),
    ];
    let words = all_words_up_to(2, max_len);
    let mut cols = Vec::with_capacity(words.len());
    for w in &words {
        cols.push(eval_word(alg, w, &gens)?.0);
    }
    let m = Matrix::from_columns(alg.field(), alg.dim(), &cols);
    let rank = m.rank();
    let n = words.len() as u64;
    if rank == words.len() {
        return Ok(FreePairResult { words: words.len(), rank, verdict: CheckVerdict::pass(CheckMode::Exhaustive, n) });
    }
    let relation = m.nullspace().into_iter().next().expect("rank deficit");
    let poly = LaurentPoly::normalize(alg.field(), words.iter().cloned().zip(relation))?;
    debug_assert!(eval_lpi(alg, &poly, &gens)?.is_zero());
    Ok(FreePairResult {
        words: words.len(),
        rank,
        verdict: CheckVerdict::fail(CheckMode::Exhaustive, Witness::Relation(poly), n),
    })
}

/// `(x1, x2)^(p^k)` as a word.
pub fn commutator_power_word(p: u64, k: u32) -> ReducedWord {
    let c = ReducedWord::commutator(&ReducedWord::var(1), &ReducedWord::var(2));
    c.pow(p.pow(k) as i64)
}

/// Least `k` in `1..=k_max` with `(x, y)^(p^k) = 1` on the units, with the
/// verdict of every attempt.
pub fn least_commutator_power(
    alg: &FiniteAlgebra,
    p: u64,
    k_max: u32,
    opts: &CheckOptions,
) -> Result<(Option<u32>, Vec<CheckVerdict>), IdentityError> {
    let mut verdicts = Vec::new();
    for k in 1..=k_max {
        let v = check_group_identity(alg, &commutator_power_word(p, k), opts)?;
        let holds = v.holds;
        verdicts.push(v);
        if holds {
            return Ok((Some(k), verdicts));
        }
    }
    Ok((None, verdicts))
}

/// Value of `S_{2m}` on random elements against its multilinear expansion
/// over basis coordinates.
pub fn multilinear_expansion_agrees(alg: &FiniteAlgebra, m: usize, samples: usize, seed: u64) -> Result<bool, IdentityError> {
    check_m(m)?;
    let n = alg.dim();
    let k = 2 * m;
    let basis: Vec<Element> = (0..n).map(|i| alg.basis_element(i)).collect();
    let mut cache: BTreeMap<Vec<usize>, Element> = BTreeMap::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let args: Vec<Element> = (0..k).map(|_| alg.random_element(&mut rng)).collect();
        let direct = standard_identity_eval(alg, &args)?;
        let mut expanded = alg.zero();
        let mut idx = vec![0usize; k];
        loop {
            let mut coef = alg.field().one();
            for (j, &i) in idx.iter().enumerate() {
                coef = &coef * &args[j].0[i];
            }
            if !coef.is_zero() {
                let v = match cache.get(&idx) {
                    Some(v) => v.clone(),
                    None => {
                        let tuple: Vec<Element> = idx.iter().map(|&i| basis[i].clone()).collect();
                        let v = standard_identity_eval(alg, &tuple)?;
                        cache.insert(idx.clone(), v.clone());
                        v
                    }
                };
                expanded = alg.add(&expanded, &alg.scale(&coef, &v));
            }
            let mut pos = k;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < n {
                    break;
                }
                idx[pos] = 0;
            }
            if pos == 0 && idx[0] == 0 {
                break;
            }
        }
        if direct != expanded {
            return Ok(false);
        }
    }
    Ok(true)
}
