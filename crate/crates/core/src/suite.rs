//! Frozen verification suites. Each suite runs a fixed list of instances and
//! emits one row per assertion.

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::algebra::{Element, FiniteAlgebra, IdealBasis};
use crate::group::{group_catalog, FiniteGroup};
use crate::identity::{self, CheckMode, CheckOptions, CheckVerdict, ModeRequest, Witness};
use crate::laurent::LaurentPoly;
use crate::linalg::{Matrix, Subspace};
use crate::scalar::FieldSpec;
use crate::structure::{self, DEFAULT_CAP};
use crate::unipoly::UniPoly;
use crate::word::ReducedWord;

/// Version of the frozen instance list below.
pub const MANIFEST_VERSION: &str = "1";

pub const SUITE_NAMES: [&str; 12] = [
    "AL-LPI",
    "MASCHKE",
    "N2-1",
    "N2-2",
    "S3-DERIVE",
    "S3-NONMATRIX",
    "S3-P1",
    "R1-EPI",
    "ADJOINT",
    "FREE-PAIR",
    "S2-IDEMPOTENT",
    "Y3-FINITE",
];

const N2_1_SEED: u64 = 21;
const N2_2_SEED: u64 = 22;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SuiteError {
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("{instance}: {message}")]
    Engine { instance: String, message: String, cap: bool },
}

impl SuiteError {
    pub fn is_cap(&self) -> bool {
        matches!(self, SuiteError::Engine { cap: true, .. })
    }
}

trait Context<T> {
    fn ctx(self, instance: &str) -> Result<T, SuiteError>;
}

impl<T> Context<T> for Result<T, identity::IdentityError> {
    fn ctx(self, instance: &str) -> Result<T, SuiteError> {
        self.map_err(|e| SuiteError::Engine { instance: instance.to_string(), cap: e.is_cap(), message: e.to_string() })
    }
}

impl<T> Context<T> for Result<T, structure::StructureError> {
    fn ctx(self, instance: &str) -> Result<T, SuiteError> {
        self.map_err(|e| SuiteError::Engine { instance: instance.to_string(), cap: e.is_cap(), message: e.to_string() })
    }
}

impl<T> Context<T> for Result<T, crate::algebra::AlgebraError> {
    fn ctx(self, instance: &str) -> Result<T, SuiteError> {
        self.map_err(|e| SuiteError::Engine {
            instance: instance.to_string(),
            cap: matches!(e, crate::algebra::AlgebraError::CapExceeded { .. }),
            message: e.to_string(),
        })
    }
}

impl<T> Context<T> for Result<T, crate::unipoly::UniPolyError> {
    fn ctx(self, instance: &str) -> Result<T, SuiteError> {
        self.map_err(|e| SuiteError::Engine { instance: instance.to_string(), cap: false, message: e.to_string() })
    }
}

impl<T> Context<T> for Result<T, crate::group::GroupError> {
    fn ctx(self, instance: &str) -> Result<T, SuiteError> {
        self.map_err(|e| SuiteError::Engine { instance: instance.to_string(), cap: false, message: e.to_string() })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportRow {
    pub suite: String,
    pub instance: String,
    pub assertion: String,
    pub paper_ref: String,
    pub mode: String,
    pub tuples_checked: u64,
    pub holds: bool,
    pub witness: Option<String>,
    pub certificate: Option<String>,
    pub seed: Option<u64>,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: String,
    pub rows: Vec<ReportRow>,
}

impl SuiteReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(|r| r.holds)
    }
}

struct Recorder<'a> {
    suite: &'static str,
    paper_ref: &'static str,
    clock: &'a dyn Fn() -> u64,
    mark: u64,
    rows: Vec<ReportRow>,
}

impl<'a> Recorder<'a> {
    fn new(suite: &'static str, paper_ref: &'static str, clock: &'a dyn Fn() -> u64) -> Self {
        let mark = clock();
        Recorder { suite, paper_ref, clock, mark, rows: Vec::new() }
    }

    fn row(&mut self, instance: &str, assertion: impl Into<String>) -> RowBuilder<'_, 'a> {
        RowBuilder {
            rec: self,
            row: ReportRow {
                suite: String::new(),
                instance: instance.to_string(),
                assertion: assertion.into(),
                paper_ref: String::new(),
                mode: "exhaustive".to_string(),
                tuples_checked: 0,
                holds: false,
                witness: None,
                certificate: None,
                seed: None,
                elapsed_ms: 0,
            },
        }
    }

    fn finish(self) -> SuiteReport {
        SuiteReport { suite: self.suite.to_string(), rows: self.rows }
    }
}

struct RowBuilder<'r, 'a> {
    rec: &'r mut Recorder<'a>,
    row: ReportRow,
}

impl RowBuilder<'_, '_> {
    fn verdict(mut self, alg: Option<&FiniteAlgebra>, v: &CheckVerdict) -> Self {
        self.row.mode = v.mode.name().to_string();
        if let CheckMode::Sampled { seed, .. } = v.mode {
            self.row.seed = Some(seed);
        }
        self.row.tuples_checked = v.tuples_checked;
        self.row.holds = v.holds;
        self.row.witness = v.witness.as_ref().map(|w| describe_witness(alg, w));
        self
    }

    fn mode(mut self, mode: &str) -> Self {
        self.row.mode = mode.to_string();
        self
    }

    fn tuples(mut self, n: u64) -> Self {
        self.row.tuples_checked = n;
        self
    }

    fn seed(mut self, seed: u64) -> Self {
        self.row.seed = Some(seed);
        self
    }

    fn witness(mut self, w: impl Into<String>) -> Self {
        self.row.witness = Some(w.into());
        self
    }

    fn certificate(mut self, c: impl Into<String>) -> Self {
        self.row.certificate = Some(c.into());
        self
    }

    fn holds(mut self, h: bool) -> Self {
        self.row.holds = h;
        self
    }

    fn emit(self) {
        let RowBuilder { rec, mut row } = self;
        let now = (rec.clock)();
        row.elapsed_ms = now.saturating_sub(rec.mark);
        rec.mark = now;
        row.suite = rec.suite.to_string();
        row.paper_ref = rec.paper_ref.to_string();
        rec.rows.push(row);
    }
}

fn tuple_string(alg: Option<&FiniteAlgebra>, inputs: &[Element]) -> String {
    let parts: Vec<String> = inputs
        .iter()
        .map(|x| match alg {
            Some(a) => a.format_element(x),
            None => format!("{:?}", x.0),
        })
        .collect();
    format!("({})", parts.join(", "))
}

fn show<T: core::fmt::Display>(v: Option<T>) -> String {
    v.map_or_else(|| "none".into(), |v| v.to_string())
}

pub fn describe_witness(alg: Option<&FiniteAlgebra>, w: &Witness) -> String {
    match w {
        Witness::Tuple { inputs, value } => {
            let v = alg.map_or_else(|| format!("{:?}", value.0), |a| a.format_element(value));
            format!("{} -> {}", tuple_string(alg, inputs), v)
        }
        Witness::BasisTuple { indices, value } => {
            let labels: Vec<String> = indices
                .iter()
                .map(|&i| alg.map_or_else(|| format!("b{i}"), |a| a.labels()[i].clone()))
                .collect();
            let v = alg.map_or_else(|| format!("{:?}", value.0), |a| a.format_element(value));
            format!("({}) -> {}", labels.join(", "), v)
        }
        Witness::Scalar { lambda, value } => format!("lambda = {lambda} -> {value}"),
        Witness::Relation(p) => format!("vanishing relation {p}"),
    }
}

fn prime(p: u64) -> FieldSpec {
    FieldSpec::prime(p).expect("small prime")
}

fn group(name: &str) -> FiniteGroup {
    group_catalog(name).expect("catalog group")
}

fn group_algebra(p: u64, name: &str) -> FiniteAlgebra {
    FiniteAlgebra::group_algebra(prime(p), &group(name))
}

fn matrix(p: u64, n: usize) -> FiniteAlgebra {
    FiniteAlgebra::matrix_algebra(prime(p), n).expect("small matrix algebra")
}

/// `F_3[t]/(t^3)`, realized as `F_3 C9 / ((g - 1)^3)`, with the image of `t`.
pub fn truncated_polynomial_f3() -> (FiniteAlgebra, Element) {
    let a = group_algebra(3, "C9");
    let t = a.sub(&a.basis_element(1), &a.one());
    let ideal = a.ideal_generated_by(&[a.pow(&t, 3)]);
    let (q, proj) = a.quotient(&ideal).expect("proper ideal");
    let t = proj.apply(&t);
    (q, t)
}

/// `1 - x1^n` over `field`.
pub fn one_minus_power(field: FieldSpec, n: i64) -> LaurentPoly {
    LaurentPoly::from_group_identity(field, &ReducedWord::from_pairs(&[(1, n)])).expect("nontrivial word")
}

fn exhaustive() -> CheckOptions {
    CheckOptions { mode: ModeRequest::Exhaustive, ..CheckOptions::default() }
}

/// Runs one suite. `clock` returns milliseconds from any fixed origin.
pub fn run_suite(name: &str, clock: &dyn Fn() -> u64) -> Result<SuiteReport, SuiteError> {
    let run: Box<dyn Fn(&dyn Fn() -> u64) -> Result<SuiteReport, SuiteError>> = match name {
        "AL-LPI" => Box::new(al_lpi),
        "MASCHKE" => Box::new(maschke),
        "N2-1" => Box::new(n2_1),
        "N2-2" => Box::new(n2_2),
        "S3-DERIVE" => Box::new(s3_derive),
        "S3-NONMATRIX" => Box::new(s3_nonmatrix),
        "S3-P1" => Box::new(s3_p1),
        "R1-EPI" => Box::new(r1_epi),
        "ADJOINT" => Box::new(adjoint),
        "FREE-PAIR" => Box::new(free_pair),
        "S2-IDEMPOTENT" => Box::new(s2_idempotent),
        "Y3-FINITE" => Box::new(y3_finite),
        _ => return Err(SuiteError::UnknownSuite(name.to_string())),
    };
    run(clock)
}

fn al_lpi(clock: &dyn Fn() -> u64) -> Result<SuiteReport, SuiteError> {
    let mut rec = Recorder::new("AL-LPI", "Amitsur-Levitzki LPI of U(M_n(K))", clock);
    let inst = "M2(F2), AL(2)";
    let m = matrix(2, 2);
    let p = LaurentPoly::amitsur_levitzki(2, prime(2)).map_err(|e| SuiteError::Engine {
        instance: inst.into(),
        message: e.to_string(),
        cap: false,
    })?;
    let q = p.qualify();
    rec.row(inst, "constant coefficient is +1")
        .mode("structural")
        .holds(q.constant_coefficient.is_one())
        .certificate(format!("constant = {}", q.constant_coefficient))
        .emit();
    let nonconstant = p.nonconstant_words().count();
    rec.row(inst, "every nonconstant word has zero exponent sum in every variable")
        .mode("structural")
        .tuples(nonconstant as u64)
        .holds(q.offending_words.len() == nonconstant)
        .certificate(format!("{} of {} words balanced", q.offending_words.len(), nonconstant))
        .emit();
    let v = identity::check_lpi(&m, &p, &exhaustive()).ctx(inst)?;
    let all = v.tuples_checked == 1296;
    rec.row(inst, "vanishes on all 6^4 unit tuples")
        .verdict(Some(&m), &v)
        .holds(v.holds && all)
        .emit();
    Ok(rec.finish())
}

fn maschke(clock: &dyn Fn() -> u64) -> Result<SuiteReport, SuiteError> {
    let mut rec = Recorder::new("MASCHKE", "Maschke semisimplicity of FG for char F not dividing |G|", clock);
    for (inst, field) in [("F3Q8", prime(3)), ("QQ8", FieldSpec::Rational)] {
        let a = FiniteAlgebra::group_algebra(field, &group("Q8"));
        let cert = structure::jacobson_radical(&a).ctx(inst)?;
        rec.row(inst, "J = 0")
            .mode("structural")
            .holds(cert.ideal.is_zero())
            .certificate(format!("rank {}, method {}", cert.ideal.rank(), cert.method.as_str()))
            .emit();
    }
    let inst = "F2Q8";
    let a = group_algebra(2, "Q8");
    let cert = structure::jacobson_radical(&a).ctx(inst)?;
    rec.row(inst, "J != 0")
        .mode("structural")
        .holds(!cert.ideal.is_zero())
        .certificate(format!(
            "rank {}, nilpotency index {}, method {}",
            cert.ideal.rank(),
            cert.nilpotency_index,
            cert.method.as_str()
        ))
        .emit();
    let brute = structure::quasi_regular_radical(&a, DEFAULT_CAP).ctx(inst)?;
    let size = a.size().unwrap_or(0);
    rec.row(inst, "J equals the quasi-regular set {x : 1 - ax invertible for all a}")
        .tuples(size * size)
        .holds(brute.ideal == cert.ideal)
        .certificate(format!("brute rank {}", brute.ideal.rank()))
        .emit();
    let index = brute_nilpotency_index(&a, &brute.ideal);
    rec.row(inst, "nilpotency index by brute force matches the certificate")
        .tuples(brute.ideal.rank() as u64)
        .holds(index == Some(cert.nilpotency_index))
        .certificate(format!("brute index {}", show(index)))
        .emit();
    Ok(rec.finish())
}

// I^t spanned by t-fold products of basis vectors, built one factor at a time.
fn brute_nilpotency_index(alg: &FiniteAlgebra, ideal: &IdealBasis) -> Option<usize> {
    let basis = ideal.basis();
    let mut products: Vec<Element> = basis.clone();
    let mut t = 1;
    let mut last_rank = usize::MAX;
    loop {
        let span = Subspace::spanned_by(alg.field(), alg.dim(), products.iter().map(|e| &e.0));
        if span.is_zero() {
            return Some(t);
        }
        if span.rank() == last_rank {
            return None;
        }
        last_rank = span.rank();
        let reps: Vec<Element> = span.basis().iter().map(|v| Element(v.clone())).collect();
        products = reps.iter().flat_map(|p| basis.iter().map(move |b| (p, b))).map(|(p, b)| alg.mul(p, b)).collect();
        t += 1;
    }
}

fn n2_1(clock: &dyn Fn() -> u64) -> Result<SuiteReport, SuiteError> {
    let mut rec = Recorder::new("N2-1", "power of the standard identity (S_2m)^t = 0 on FG", clock);
    let inst = "F2S3";
    let a = group_algebra(2, "S3");
    let cert = structure::jacobson_radical(&a).ctx(inst)?;
    let t = cert.nilpotency_index;
    rec.row(inst, "J computed and nilpotent")
        .mode("structural")
        .holds(true)
        .certificate(format!("rank {}, nilpotency index {t}", cert.ideal.rank()))
        .emit();
    let (q, _) = a.quotient(&cert.ideal).ctx(inst)?;
    let mut least = None;
    let mut checked = 0;
    for m in 1..=2 {
        let v = identity::check_multilinear_identity(&q, m).ctx(inst)?;
        checked += v.tuples_checked;
        if v.holds {
            least = Some(m);
            break;
        }
    }
    rec.row(inst, "least m <= 2 with S_2m vanishing on basis tuples of A/J")
        .mode("multilinearBasis")
        .tuples(checked)
        .holds(least.is_some())
        .certificate(format!("m = {}", show(least)))
        .emit();
    let Some(m) = least else { return Ok(rec.finish()) };
    let v = identity::check_power_standard_identity(&a, m, t, N2_1_SEED).ctx(inst)?;
    rec.row(inst, format!("(S_{})^{} = 0 on A", 2 * m, t))
        .verdict(Some(&a), &v)
        .seed(N2_1_SEED)
        .certificate(format!(
            "S_{} of every basis tuple lies in J, J^{} = 0, {} random confirmations",
            2 * m,
            t,
            identity::STRUCTURAL_CONFIRMATIONS
        ))
        .emit();
    Ok(rec.finish())
}

fn n2_2(clock: &dyn Fn() -> u64) -> Result<SuiteReport, SuiteError> {
    let mut rec = Recorder::new("N2-2", "[x,y]^t = 0 and (x,y)^(p^k) = 1 for p-abelian G", clock);
    let inst = "F2D4";
    let a = group_algebra(2, "D4");
    let g = a.group().expect("group algebra").clone();
    let cert = structure::jacobson_radical(&a).ctx(inst)?;
    let t = cert.nilpotency_index;
    let mut offending = None;
    let mut checked = 0;
    'outer: for i in 0..a.dim() {
        for j in 0..a.dim() {
            checked += 1;
            let c = a.commutator(&a.basis_element(i), &a.basis_element(j));
            if !cert.ideal.contains(&c) {
                offending = Some((i, j));
                break 'outer;
            }
        }
    }
    let mut row = rec
        .row(inst, "A/J is commutative: [x,y] in J for all basis pairs")
        .tuples(checked)
        .holds(offending.is_none())
        .certificate(format!("J rank {}, nilpotency index {t}", cert.ideal.rank()));
    if let Some((i, j)) = offending {
        row = row.witness(format!("({}, {})", a.labels()[i], a.labels()[j]));
    }
    row.emit();
    let v = identity::check_power_standard_identity(&a, 1, t, N2_2_SEED).ctx(inst)?;
    rec.row(inst, format!("[x,y]^{t} = 0"))
        .verdict(Some(&a), &v)
        .seed(N2_2_SEED)
        .certificate(format!("[b_i,b_j] in J for all pairs and J^{t} = 0"))
        .emit();
    let (k, verdicts) = identity::least_commutator_power(&a, 2, 3, &exhaustive()).ctx(inst)?;
    let last = verdicts.last().expect("at least one attempt");
    rec.row(inst, "(x,y)^(2^k) = 1 on U(A) for the least k <= 3")
        .verdict(Some(&a), last)
        .tuples(verdicts.iter().map(|v| v.tuples_checked).sum())
        .holds(k.is_some())
        .certificate(format!("k = {}", show(k)))
        .emit();
    let derived = g.derived_subgroup();
    let labels: Vec<&str> = derived.iter().map(|&x| g.label(x)).collect();
    let r2 = g.index_of("r2").expect("dihedral label");
    rec.row(inst, "G' = {1, r2} is a 2-group")
        .mode("structural")
        .tuples((g.order() * g.order()) as u64)
        .holds(derived == [g.identity(), r2] && g.is_p_group(&derived, 2))
        .certificate(format!("G' = {{{}}}", labels.join(", ")))
        .emit();
    let delta = a.augmentation_ideal_of_subgroup(&derived).ctx(inst)?;
    let idx = structure::nilpotency_index(&a, &delta);
    rec.row(inst, "ideal generated by the augmentation ideal of G' is nilpotent")
        .mode("structural")
        .holds(idx.is_some())
        .certificate(format!("rank {}, nilpotency index {}", delta.rank(), show(idx)))
        .emit();

    let inst = "F3Q8";
    let q = group_algebra(3, "Q8");
    let (k, verdicts) = identity::least_commutator_power(&q, 3, 3, &exhaustive()).ctx(inst)?;
    let ij = [q.basis_by_label("i").expect("label"), q.basis_by_label("j").expect("label")];
    let all_ij = verdicts
        .iter()
        .all(|v| matches!(&v.witness, Some(Witness::Tuple { inputs, .. }) if inputs[..] == ij[..]));
    let first = verdicts.first().expect("at least one attempt");
    rec.row(inst, "(x,y)^(3^k) = 1 fails for every k <= 3 with witness (i, j)")
        .verdict(Some(&q), first)
        .tuples(verdicts.iter().map(|v| v.tuples_checked).sum())
        .holds(k.is_none() && all_ij)
        .emit();
    Ok(rec.finish())
}

fn s3_derive(clock: &dyn Fn() -> u64) -> Result<SuiteReport, SuiteError> {
    let mut rec = Recorder::new("S3-DERIVE", "univariate identities of U(A) and J(A) determined by P", clock);
    let (t3, _) = truncated_polynomial_f3();
    let instances = [
        ("F2C2, 1 - x1^2", group_algebra(2, "C2"), one_minus_power(prime(2), 2)),
        ("F3[t]/(t^3), 1 - x1^6", t3, one_minus_power(prime(3), 6)),
        ("M2(F2), 1 - x1^6", matrix(2, 2), one_minus_power(prime(2), 6)),
    ];
    for (inst, alg, p) in instances {
        let v = identity::check_lpi(&alg, &p, &exhaustive()).ctx(inst)?;
        rec.row(inst, "P is an LPI of U(A)").verdict(Some(&alg), &v).emit();
        let trace = identity::derive_identities(&p).ctx(inst)?;
        let d = identity::verify_derived(&alg, &trace, &exhaustive()).ctx(inst)?;
        rec.row(inst, format!("f1 = {} vanishes on every unit", trace.f1))
            .verdict(Some(&alg), &d.units)
            .holds(d.units.holds && d.consistency.holds)
            .certificate(format!("f0 = {}, l = {}, r = {}", trace.f0, trace.l, trace.r))
            .emit();
        rec.row(inst, format!("g = {} vanishes on every element of J", trace.g))
            .verdict(Some(&alg), &d.radical)
            .emit();
        let g0 = trace.g.coefficient(0);
        rec.row(inst, "g(0) = 0")
            .mode("structural")
            .holds(g0.is_zero())
            .certificate(format!("g(0) = {g0}"))
            .emit();
    }
    Ok(rec.finish())
}

fn s3_nonmatrix(clock: &dyn Fn() -> u64) -> Result<SuiteReport, SuiteError> {
    let mut rec = Recorder::new("S3-NONMATRIX", "f([x,y]) is a nonmatrix identity over an infinite field", clock);
    let inst = "Q, f1 = 1 - a^6";
    let q = FieldSpec::Rational;
    let f1 = UniPoly::from_i64s(q, &[(0, 1), (6, -1)]).expect("nonzero");
    let w = identity::nonmatrix_witness(&f1).ctx(inst)?;
    rec.row(inst, "some lambda has f1(lambda) != 0")
        .mode("exhaustive")
        .holds(!w.value.is_zero())
        .witness(format!("lambda = {}, f1(lambda) = {}", w.lambda, w.value))
        .emit();
    let m = FiniteAlgebra::matrix_algebra(q, 2).ctx(inst)?;
    let value = identity::nonmatrix_matrix(&f1, &w.lambda).ctx(inst)?;
    let entry = value.0[0].clone();
    rec.row(inst, "f1([lambda e12, e21]) has (1,1) entry f1(lambda) != 0 in M2(Q)")
        .mode("structural")
        .holds(entry == w.value && !entry.is_zero())
        .witness(m.format_element(&value))
        .emit();
    Ok(rec.finish())
}

fn s3_p1(clock: &dyn Fn() -> u64) -> Result<SuiteReport, SuiteError> {
    let mut rec = Recorder::new("S3-P1", "property P1: g(ab) = 0 whenever a^2 = b^2 = 0", clock);
    let inst = "M2(F2), 1 - x1^6";
    let m = matrix(2, 2);
    let lpi = one_minus_power(prime(2), 6);
    let r = identity::derive_p1_poly(&m, &lpi, &exhaustive()).ctx(inst)?;
    rec.row(inst, format!("empirical annihilator g = {} kills ab for all square-zero pairs", r.g))
        .verdict(Some(&m), &r.verdict)
        .certificate(format!("{} square-zero elements, deg g = {}", r.square_zero, r.g.degree()))
        .emit();
    let x2x = UniPoly::from_i64s(prime(2), &[(2, 1), (1, 1)]).expect("nonzero");
    let divides = x2x.divides(&r.g).ctx(inst)?;
    rec.row(inst, "x^2 + x divides g").mode("structural").holds(divides).emit();
    Ok(rec.finish())
}

fn epi_instances() -> Vec<(&'static str, FiniteAlgebra, IdealBasis)> {
    let (t3, t) = truncated_polynomial_f3();
    let ideal = t3.ideal_generated_by(&[t]);
    let c2 = group_algebra(2, "C2");
    let j = structure::jacobson_radical(&c2).expect("small radical").ideal;
    vec![("F3[t]/(t^3), I = (t)", t3, ideal), ("F2C2, I = J", c2, j)]
}

fn r1_epi(clock: &dyn Fn() -> u64) -> Result<SuiteReport, SuiteError> {
    let mut rec = Recorder::new("R1-EPI", "a nil ideal induces an epimorphism U(R) -> U(R/I)", clock);
    for (inst, alg, ideal) in epi_instances() {
        let r = structure::unit_epimorphism_check(&alg, &ideal, DEFAULT_CAP).ctx(inst)?;
        let lifts: Vec<String> = r.lifts.iter().map(|(_, l, _)| alg.format_element(l)).collect();
        rec.row(inst, "U(A) -> U(A/I) is onto, every unit lifts")
            .tuples(r.quotient_units as u64)
            .holds(r.holds && r.lifts.len() == r.quotient_units)
            .certificate(format!(
                "|U(A/I)| = {}, |U(A)| = {:?}, |1 + I| = {}, lifts [{}]",
                r.quotient_units,
                r.source_units,
                r.kernel_size,
                lifts.join("; ")
            ))
            .emit();
    }
    Ok(rec.finish())
}

fn adjoint(clock: &dyn Fn() -> u64) -> Result<SuiteReport, SuiteError> {
    let mut rec = Recorder::new("ADJOINT", "adjoint group r o s = r + s + rs of a nil ideal", clock);
    for (inst, alg, ideal) in epi_instances() {
        let r = structure::adjoint_group_check(&alg, &ideal, DEFAULT_CAP).ctx(inst)?;
        rec.row(inst, "(I, o) is a group and x -> 1 + x is an isomorphism onto 1 + I")
            .mode(if r.associativity_exhaustive { "exhaustive" } else { "sampled" })
            .tuples(r.order * r.order)
            .holds(r.holds)
            .certificate(format!("order {}, exponent {}", r.order, r.exponent))
            .emit();
    }
    Ok(rec.finish())
}

fn free_pair(clock: &dyn Fn() -> u64) -> Result<SuiteReport, SuiteError> {
    let mut rec = Recorder::new("FREE-PAIR", "free subgroup of the units of K[a, b : a^2 = b^2 = 0]", clock);
    let inst = "trunc(Q, D = 6), g1 = 1 + a, g2 = 1 + b, words of length <= 4";
    let alg = FiniteAlgebra::trunc_nil_free(FieldSpec::Rational, 6).ctx(inst)?;
    let r = identity::free_pair_witness(&alg, 4).ctx(inst)?;
    rec.row(inst, "reduced words evaluate to linearly independent vectors")
        .verdict(Some(&alg), &r.verdict)
        .certificate(format!("rank {} of {} words, algebra dimension {}", r.rank, r.words, alg.dim()))
        .emit();
    Ok(rec.finish())
}

const ABELIAN_SCAN: [&str; 16] = [
    "C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "C10", "C11", "C12", "C2xC2", "C2xC4", "C2xC2xC2", "C3xC3",
];

fn s2_idempotent(clock: &dyn Fn() -> u64) -> Result<SuiteReport, SuiteError> {
    let mut rec = Recorder::new("S2-IDEMPOTENT", "idempotents are central under a qualifying LPI", clock);
    for (inst, alg) in [("F3Q8", group_algebra(3, "Q8")), ("M2(F2)", matrix(2, 2))] {
        let ids = structure::idempotent_scan(&alg, DEFAULT_CAP).ctx(inst)?;
        let nc = ids.iter().find(|(_, c)| !c);
        let mut row = rec
            .row(inst, "a non-central idempotent exists")
            .tuples(alg.size().unwrap_or(0))
            .holds(nc.is_some())
            .certificate(format!("{} idempotents", ids.len()));
        if let Some((e, _)) = nc {
            row = row.witness(alg.format_element(e));
        }
        row.emit();
    }
    let mut scanned = 0u64;
    let mut bad = None;
    let mut count = 0;
    for p in [2u64, 3] {
        for name in ABELIAN_SCAN {
            let alg = group_algebra(p, name);
            if alg.size().is_none_or(|s| s > DEFAULT_CAP) {
                continue;
            }
            count += 1;
            let inst = format!("F{p}{name}");
            let ids = structure::idempotent_scan(&alg, DEFAULT_CAP).ctx(&inst)?;
            scanned += alg.size().unwrap_or(0);
            if let Some((e, _)) = ids.iter().find(|(_, c)| !c) {
                bad = Some(format!("{inst}: {}", alg.format_element(e)));
                break;
            }
        }
    }
    let mut row = rec
        .row("commutative catalog group algebras over F2, F3", "every idempotent is central")
        .tuples(scanned)
        .holds(bad.is_none())
        .certificate(format!("{count} algebras scanned"));
    if let Some(b) = bad {
        row = row.witness(b);
    }
    row.emit();
    let inst = "F2C3";
    let a = group_algebra(2, "C3");
    let e = a.add(&a.basis_element(1), &a.basis_element(2));
    let idem = a.mul(&e, &e) == e;
    rec.row(inst, "g + g^2 is a central idempotent")
        .mode("structural")
        .holds(idem && a.is_central(&e))
        .emit();
    Ok(rec.finish())
}

fn y3_finite(clock: &dyn Fn() -> u64) -> Result<SuiteReport, SuiteError> {
    let mut rec = Recorder::new("Y3-FINITE", "p-abelian groups and nil commutator ideals, finite instances", clock);
    let inst = "F2D4";
    let a = group_algebra(2, "D4");
    let g = a.group().expect("group algebra").clone();
    let derived = g.derived_subgroup();
    let exp = derived.iter().map(|&x| g.element_order(x)).max().unwrap_or(1);
    rec.row(inst, "G' is a 2-group of finite exponent")
        .mode("structural")
        .holds(g.is_p_group(&derived, 2))
        .certificate(format!("|G'| = {}, exponent {exp}", derived.len()))
        .emit();
    let mut gens = Vec::new();
    for i in 0..a.dim() {
        for j in i + 1..a.dim() {
            gens.push(a.commutator(&a.basis_element(i), &a.basis_element(j)));
        }
    }
    let ideal = a.ideal_generated_by(&gens);
    let idx = structure::nilpotency_index(&a, &ideal);
    rec.row(inst, "[FG,FG]FG is nilpotent")
        .mode("structural")
        .holds(idx.is_some())
        .certificate(format!("rank {}, nilpotency index {}", ideal.rank(), show(idx)))
        .emit();
    let units = structure::enumerate_units(&a, DEFAULT_CAP).ctx(inst)?;
    let series = structure::group_derived_series(&a, &units).ctx(inst)?;
    rec.row(inst, "U(FG)' is a 2-group of finite exponent")
        .tuples((units.len() * units.len()) as u64)
        .holds(series.derived_is_p_group(2))
        .certificate(format!(
            "|U| = {}, |U'| = {}, exponent {}, derived orders {:?}",
            units.len(),
            series.derived.len(),
            series.derived_exponent,
            series.orders
        ))
        .emit();
    let (pg, normal) = g.p_subgroup_closure(2);
    rec.row("D4", "P_G for p = 2 is all of D4")
        .mode("structural")
        .holds(pg.len() == g.order() && normal)
        .emit();
    let c6 = group("C6");
    let (pc, normal) = c6.p_subgroup_closure(2);
    rec.row("C6", "P_G for p = 2 is the subgroup of order 2")
        .mode("structural")
        .holds(pc.len() == 2 && normal)
        .certificate(format!(
            "P_G = {{{}}}",
            pc.iter().map(|&x| c6.label(x)).collect::<Vec<_>>().join(", ")
        ))
        .emit();
    let inst = "F2C6 -> F2[C6/P_G]";
    let (holds, cert) = group_quotient_reconstruction(prime(2), &c6, &pc).ctx(inst)?;
    rec.row(inst, "F(G/P_G) is FG modulo the ideal of P_G, through the coset map")
        .tuples((c6.order() * c6.order()) as u64)
        .holds(holds)
        .certificate(cert)
        .emit();
    Ok(rec.finish())
}

/// Checks that the coset map induces `FG / Δ(P) ≅ F[G/P]`: it is
/// multiplicative on basis pairs and its kernel is the ideal of `P`.
fn group_quotient_reconstruction(
    field: FieldSpec,
    g: &FiniteGroup,
    p: &[usize],
) -> Result<(bool, String), crate::algebra::AlgebraError> {
    let fg = FiniteAlgebra::group_algebra(field, g);
    let (gp, coset_of) = g.quotient(p)?;
    let fgp = FiniteAlgebra::group_algebra(field, &gp);
    let image = |x: &Element| -> Element {
        let mut v = fgp.zero();
        for (i, c) in x.0.iter().enumerate() {
            v.0[coset_of[i]] += c;
        }
        v
    };
    let mut multiplicative = true;
    for i in 0..fg.dim() {
        for j in 0..fg.dim() {
            let (bi, bj) = (fg.basis_element(i), fg.basis_element(j));
            multiplicative &= image(&fg.mul(&bi, &bj)) == fgp.mul(&image(&bi), &image(&bj));
        }
    }
    let cols: Vec<Vec<_>> = (0..fg.dim()).map(|i| image(&fg.basis_element(i)).0).collect();
    let kernel = Matrix::from_columns(field, fgp.dim(), &cols).nullspace();
    let kernel = Subspace::spanned_by(field, fg.dim(), kernel.iter());
    let delta = fg.augmentation_ideal_of_subgroup(p)?;
    let (q, _) = fg.quotient(&delta)?;
    let same_kernel = &kernel == delta.space();
    let holds = multiplicative && same_kernel && q.dim() == gp.order();
    let reps: BTreeSet<usize> = coset_of.iter().copied().collect();
    Ok((
        holds,
        format!("|G/P| = {}, dim FG/ker = {}, kernel rank {}", reps.len(), q.dim(), kernel.rank()),
    ))
}
