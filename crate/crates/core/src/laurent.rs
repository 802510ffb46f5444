//! Laurent polynomials: nonzero elements of the group algebra of a free group.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::scalar::{FieldSpec, Scalar};
use crate::word::{ReducedWord, Syllable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("all coefficients cancel; the zero element is not a Laurent polynomial")]
    ZeroElement,
    #[error("coefficient from {found} in a polynomial over {expected}")]
    FieldMismatch { expected: FieldSpec, found: FieldSpec },
    #[error("the word {0} has zero exponent sum in every variable, or there is no constant term")]
    NotQualifying(ReducedWord),
    #[error("polynomial uses x{0}; apply the two-variable reduction first")]
    TooManyVariables(u32),
    #[error("1 - w with w = 1 is the zero element")]
    TrivialIdentity,
    #[error("Amitsur-Levitzki polynomial requested for n = {0}; supported range is 1..=3")]
    CapExceeded(usize),
}

/// A finite nonzero combination of reduced words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    field: FieldSpec,
    terms: BTreeMap<ReducedWord, Scalar>,
}

/// Outcome of testing the exponent-sum condition on the nonconstant words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QualifyReport {
    pub has_constant_term: bool,
    pub constant_coefficient: Scalar,
    /// Nonconstant words whose exponent sum vanishes in every variable.
    pub offending_words: Vec<ReducedWord>,
    pub qualifies: bool,
}

/// Result of [`LaurentPoly::ensure_nonzero_totals`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSubstitution {
    pub poly: LaurentPoly,
    pub var: u32,
    pub k: i64,
}

impl LaurentPoly {
    /// Collects like words and drops zero coefficients.
    pub fn normalize<I>(field: FieldSpec, raw: I) -> Result<Self, LaurentError>
    where
        I: IntoIterator<Item = (ReducedWord, Scalar)>,
    {
        let mut terms: BTreeMap<ReducedWord, Scalar> = BTreeMap::new();
        for (w, c) in raw {
            if c.field() != field {
                return Err(LaurentError::FieldMismatch { expected: field, found: c.field() });
            }
            let w = ReducedWord::reduce(w.syllables().iter().copied());
            match terms.get_mut(&w) {
                Some(acc) => *acc += &c,
                None => {
                    terms.insert(w, c);
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        if terms.is_empty() {
            return Err(LaurentError::ZeroElement);
        }
        Ok(LaurentPoly { field, terms })
    }

    /// `1 - w`.
    pub fn from_group_identity(field: FieldSpec, w: &ReducedWord) -> Result<Self, LaurentError> {
        if w.is_identity() {
            return Err(LaurentError::TrivialIdentity);
        }
        LaurentPoly::normalize(
            field,
            [(ReducedWord::identity(), field.one()), (w.clone(), -&field.one())],
        )
    }

    /// `S_2n(x_1, ..., x_2n) (x_1 ... x_2n)^-1`, expanded and collected.
    pub fn amitsur_levitzki(n: usize, field: FieldSpec) -> Result<Self, LaurentError> {
        if !(1..=3).contains(&n) {
            return Err(LaurentError::CapExceeded(n));
        }
        let m = 2 * n;
        let tail = ReducedWord::reduce((1..=m as u32).rev().map(|v| Syllable::new(v, -1)));
        let mut raw = Vec::new();
        for_each_permutation(m, |perm, sign| {
            let head = ReducedWord::reduce(perm.iter().map(|&i| Syllable::new(i as u32 + 1, 1)));
            let c = if sign { field.one() } else { -&field.one() };
            raw.push((head.mul(&tail), c));
        });
        LaurentPoly::normalize(field, raw)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn terms(&self) -> &BTreeMap<ReducedWord, Scalar> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_coefficient(&self) -> Scalar {
        self.terms
            .get(&ReducedWord::identity())
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn nonconstant_words(&self) -> impl Iterator<Item = (&ReducedWord, &Scalar)> {
        self.terms.iter().filter(|(w, _)| !w.is_identity())
    }

    pub fn max_var(&self) -> u32 {
        self.terms.keys().map(ReducedWord::max_var).max().unwrap_or(0)
    }

    /// Sum of all coefficients, i.e. the value at `x_i = 1`.
    pub fn coefficient_sum(&self) -> Scalar {
        let mut acc = self.field.zero();
        for c in self.terms.values() {
            acc += c;
        }
        acc
    }

    pub fn qualify(&self) -> QualifyReport {
        let constant = self.constant_coefficient();
        let has_constant_term = !constant.is_zero();
        let offending_words: Vec<ReducedWord> = self
            .nonconstant_words()
            .filter(|(w, _)| w.exp_sums().per_variable.values().all(|&e| e == 0))
            .map(|(w, _)| w.clone())
            .collect();
        let qualifies = has_constant_term && offending_words.is_empty();
        QualifyReport {
            has_constant_term,
            constant_coefficient: constant,
            offending_words,
            qualifies,
        }
    }

    /// Image of every word under [`ReducedWord::two_variable_reduction`].
    pub fn two_variable_reduction(&self) -> LaurentPoly {
        LaurentPoly::normalize(
            self.field,
            self.terms.iter().map(|(w, c)| (w.two_variable_reduction(), c.clone())),
        )
        .expect("an injective word map keeps the polynomial nonzero")
    }

    pub fn power_substitution(&self, var: u32, k: i64) -> LaurentPoly {
        LaurentPoly::normalize(
            self.field,
            self.terms.iter().map(|(w, c)| (w.power_substitution(var, k), c.clone())),
        )
        .expect("x -> x^k is injective on the free group")
    }

    /// Makes every nonconstant word's total exponent sum nonzero by
    /// substituting `x_var -> x_var^k` with the least `k >= 2`, trying `x1`
    /// before `x2`. Returns `k = 1` (and `var = 1`) when nothing is needed.
    pub fn ensure_nonzero_totals(&self) -> Result<PowerSubstitution, LaurentError> {
        let max = self.max_var();
        if max > 2 {
            return Err(LaurentError::TooManyVariables(max));
        }
        let report = self.qualify();
        if let Some(w) = report.offending_words.first() {
            return Err(LaurentError::NotQualifying(w.clone()));
        }
        if !report.has_constant_term {
            return Err(LaurentError::NotQualifying(ReducedWord::identity()));
        }
        let sums: Vec<(i64, i64)> = self
            .nonconstant_words()
            .map(|(w, _)| {
                let s = w.exp_sums();
                (s.get(1), s.get(2))
            })
            .collect();
        if sums.iter().all(|&(a, b)| a + b != 0) {
            return Ok(PowerSubstitution { poly: self.clone(), var: 1, k: 1 });
        }
        // Each word rules out at most one k, so the bound is always reached.
        let bound = 2 + sums.len() as i64;
        for var in [1u32, 2] {
            for k in 2..=bound {
                let ok = sums.iter().all(|&(a, b)| {
                    if var == 1 {
                        k * a + b != 0
                    } else {
                        a + k * b != 0
                    }
                });
                if ok {
                    return Ok(PowerSubstitution { poly: self.power_substitution(var, k), var, k });
                }
            }
        }
        unreachable!("a qualifying polynomial always admits a substitution")
    }
}

/// Heap's algorithm; `sign` is true for even permutations.
pub(crate) fn for_each_permutation<F: FnMut(&[usize], bool)>(n: usize, mut f: F) {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut c = alloc::vec![0usize; n];
    let mut even = true;
    f(&perm, even);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            even = !even;
            f(&perm, even);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            if w.is_identity() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "{mag}*{w}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn w(p: &[(u32, i64)]) -> ReducedWord {
        ReducedWord::from_pairs(p)
    }

    fn lp(field: FieldSpec, t: &[(&[(u32, i64)], i64)]) -> Result<LaurentPoly, LaurentError> {
        LaurentPoly::normalize(field, t.iter().map(|(p, c)| (w(p), field.from_i64(*c))))
    }

    fn commutator() -> ReducedWord {
        w(&[(1, -1), (2, -1), (1, 1), (2, 1)])
    }

    #[test]
    fn normalize_examples() {
        let f3 = FieldSpec::prime(3).unwrap();
        assert_eq!(lp(f3, &[(&[(1, 1)], 1), (&[(1, 1)], 2)]), Err(LaurentError::ZeroElement));

        let q = FieldSpec::Rational;
        let p = lp(q, &[(&[], 2), (&[(1, 1), (2, 1)], -1), (&[(1, -1)], -1)]).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p.constant_coefficient(), q.from_i64(2));
        assert_eq!(p.terms()[&w(&[(1, -1)])], q.from_i64(-1));

        let p = lp(q, &[(&[(1, 1), (2, 1), (2, -1)], 1), (&[(1, 1)], 1)]).unwrap();
        assert_eq!(p.terms().len(), 1);
        assert_eq!(p.terms()[&w(&[(1, 1)])], q.from_i64(2));

        let f5 = FieldSpec::prime(5).unwrap();
        assert!(matches!(
            LaurentPoly::normalize(q, [(ReducedWord::identity(), f5.one())]),
            Err(LaurentError::FieldMismatch { .. })
        ));
    }

    #[test]
    fn normalize_is_idempotent() {
        let q = FieldSpec::Rational;
        let p = lp(q, &[(&[], 2), (&[(1, 1), (2, 1)], -1), (&[(1, -1)], -1)]).unwrap();
        let again = LaurentPoly::normalize(q, p.terms().clone()).unwrap();
        assert_eq!(again, p);
    }

    #[test]
    fn qualify_examples() {
        let q = FieldSpec::Rational;
        let gi = LaurentPoly::from_group_identity(q, &commutator()).unwrap();
        let r = gi.qualify();
        assert!(!r.qualifies);
        assert_eq!(r.offending_words, alloc::vec![commutator()]);

        let p = lp(q, &[(&[], 2), (&[(1, 1), (2, 1)], -1), (&[(1, -1)], -1)]).unwrap();
        assert!(p.qualify().qualifies);

        let p = lp(q, &[(&[(1, 1)], 1), (&[(2, 1)], -1)]).unwrap();
        let r = p.qualify();
        assert!(!r.has_constant_term);
        assert!(!r.qualifies);
        assert!(r.constant_coefficient.is_zero());
    }

    #[test]
    fn ensure_nonzero_totals_examples() {
        let q = FieldSpec::Rational;
        let p = lp(q, &[(&[], 1), (&[(1, 1), (2, -1)], -1)]).unwrap();
        let s = p.ensure_nonzero_totals().unwrap();
        assert_eq!((s.var, s.k), (1, 2));
        let word = s.poly.nonconstant_words().next().unwrap().0.clone();
        assert_eq!(word, w(&[(1, 2), (2, -1)]));
        assert_eq!(word.exp_sums().total, 1);
        assert_eq!(s.poly.constant_coefficient(), p.constant_coefficient());

        let p = lp(q, &[(&[], 2), (&[(1, 1), (2, 1)], -1), (&[(1, -1)], -1)]).unwrap();
        let s = p.ensure_nonzero_totals().unwrap();
        assert_eq!(s.k, 1);
        assert_eq!(s.poly, p);

        let gi = LaurentPoly::from_group_identity(q, &commutator()).unwrap();
        assert!(matches!(gi.ensure_nonzero_totals(), Err(LaurentError::NotQualifying(_))));

        let three = lp(q, &[(&[], 1), (&[(3, 1)], -1)]).unwrap();
        assert_eq!(three.ensure_nonzero_totals(), Err(LaurentError::TooManyVariables(3)));
    }

    #[test]
    fn ensure_nonzero_totals_skips_blocked_k() {
        // x1^1 x2^-2 has total 2 - 2 = 0 at k = 2, so k = 3 is the least choice.
        let q = FieldSpec::Rational;
        let p = lp(q, &[(&[], 1), (&[(1, 1), (2, -2)], -1), (&[(1, 1), (2, -1)], 1)]).unwrap();
        let s = p.ensure_nonzero_totals().unwrap();
        assert_eq!((s.var, s.k), (1, 3));
        assert!(s.poly.nonconstant_words().all(|(w, _)| w.exp_sums().total != 0));
    }

    #[test]
    fn group_identity_examples() {
        let q = FieldSpec::Rational;
        let p = LaurentPoly::from_group_identity(q, &w(&[(1, 6)])).unwrap();
        assert_eq!(p.to_string(), "1 - x1^6");
        let sq = commutator().pow(2);
        let p = LaurentPoly::from_group_identity(q, &sq).unwrap();
        assert_eq!(
            p.to_string(),
            "1 - x1^-1*x2^-1*x1*x2*x1^-1*x2^-1*x1*x2"
        );
        assert_eq!(
            LaurentPoly::from_group_identity(q, &ReducedWord::identity()),
            Err(LaurentError::TrivialIdentity)
        );
    }

    #[test]
    fn amitsur_levitzki_examples() {
        let q = FieldSpec::Rational;
        let p1 = LaurentPoly::amitsur_levitzki(1, q).unwrap();
        let expected = lp(q, &[(&[], 1), (&[(2, 1), (1, 1), (2, -1), (1, -1)], -1)]).unwrap();
        assert_eq!(p1, expected);

        let p2 = LaurentPoly::amitsur_levitzki(2, q).unwrap();
        assert_eq!(p2.len(), 24);
        assert_eq!(p2.constant_coefficient(), q.one());
        for (w, _) in p2.nonconstant_words() {
            assert!(w.exp_sums().per_variable.values().all(|&e| e == 0));
        }
        let r = p2.qualify();
        assert!(!r.qualifies);
        assert_eq!(r.offending_words.len(), 23);

        assert_eq!(LaurentPoly::amitsur_levitzki(3, q).unwrap().len(), 720);
        assert_eq!(LaurentPoly::amitsur_levitzki(4, q), Err(LaurentError::CapExceeded(4)));
        assert_eq!(LaurentPoly::amitsur_levitzki(0, q), Err(LaurentError::CapExceeded(0)));
    }

    #[test]
    fn display_order_and_signs() {
        let q = FieldSpec::Rational;
        let p = lp(q, &[(&[(1, 1), (2, 1)], -1), (&[], 2), (&[(1, -1)], -1)]).unwrap();
        assert_eq!(p.to_string(), "2 - x1^-1 - x1*x2");
        let p = lp(q, &[(&[], -1), (&[(1, 1)], 3)]).unwrap();
        assert_eq!(p.to_string(), "-1 + 3*x1");
        let f3 = FieldSpec::prime(3).unwrap();
        let p = lp(f3, &[(&[], 1), (&[(1, 1)], -1)]).unwrap();
        assert_eq!(p.to_string(), "1 + 2*x1");
    }
}
