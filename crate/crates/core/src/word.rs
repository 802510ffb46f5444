//! Freely reduced words in the free group on `x1, x2, ...`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("no image given for variable x{0}")]
    MissingImage(u32),
}

/// A run of one variable: `x_var^exp`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syllable {
    pub var: u32,
    pub exp: i64,
}

impl Syllable {
    pub fn new(var: u32, exp: i64) -> Self {
        Syllable { var, exp }
    }
}

/// A freely reduced word, run-length encoded.
///
/// Adjacent syllables always name different variables and no exponent is
/// zero; the empty word is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ReducedWord {
    syllables: Vec<Syllable>,
}

/// Per-variable and total exponent sums of a word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpSumReport {
    pub per_variable: BTreeMap<u32, i64>,
    pub total: i64,
}

impl ExpSumReport {
    pub fn get(&self, var: u32) -> i64 {
        self.per_variable.get(&var).copied().unwrap_or(0)
    }
}

impl ReducedWord {
    pub fn identity() -> Self {
        ReducedWord::default()
    }

    pub fn var(var: u32) -> Self {
        ReducedWord::reduce([Syllable::new(var, 1)])
    }

    /// Free reduction of an arbitrary syllable list (zero exponents allowed).
    pub fn reduce<I: IntoIterator<Item = Syllable>>(raw: I) -> Self {
        let mut stack: Vec<Syllable> = Vec::new();
        for s in raw {
            if s.exp == 0 {
                continue;
            }
            match stack.last_mut() {
                Some(top) if top.var == s.var => {
                    top.exp += s.exp;
                    if top.exp == 0 {
                        stack.pop();
                    }
                }
                _ => stack.push(s),
            }
        }
        ReducedWord { syllables: stack }
    }

    pub fn from_pairs(pairs: &[(u32, i64)]) -> Self {
        ReducedWord::reduce(pairs.iter().map(|&(v, e)| Syllable::new(v, e)))
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Letter length `sum |exp|`.
    pub fn len(&self) -> u64 {
        self.syllables.iter().map(|s| s.exp.unsigned_abs()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.is_identity()
    }

    pub fn max_var(&self) -> u32 {
        self.syllables.iter().map(|s| s.var).max().unwrap_or(0)
    }

    pub fn mul(&self, other: &ReducedWord) -> ReducedWord {
        ReducedWord::reduce(self.syllables.iter().chain(&other.syllables).copied())
    }

    pub fn inverse(&self) -> ReducedWord {
        ReducedWord {
            syllables: self
                .syllables
                .iter()
                .rev()
                .map(|s| Syllable::new(s.var, -s.exp))
                .collect(),
        }
    }

    pub fn pow(&self, n: i64) -> ReducedWord {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut raw = Vec::new();
        for _ in 0..n.unsigned_abs() {
            raw.extend_from_slice(&base.syllables);
        }
        ReducedWord::reduce(raw)
    }

    /// Group commutator `u^-1 v^-1 u v`.
    pub fn commutator(u: &ReducedWord, v: &ReducedWord) -> ReducedWord {
        u.inverse().mul(&v.inverse()).mul(u).mul(v)
    }

    pub fn exp_sums(&self) -> ExpSumReport {
        let mut per_variable = BTreeMap::new();
        for s in &self.syllables {
            *per_variable.entry(s.var).or_insert(0) += s.exp;
        }
        let total = per_variable.values().sum();
        ExpSumReport { per_variable, total }
    }

    /// Image under the homomorphism `x_i -> images[i]`.
    pub fn substitute(&self, images: &BTreeMap<u32, ReducedWord>) -> Result<ReducedWord, WordError> {
        let mut raw = Vec::new();
        for s in &self.syllables {
            let img = images.get(&s.var).ok_or(WordError::MissingImage(s.var))?;
            let img = if s.exp < 0 { img.inverse() } else { img.clone() };
            for _ in 0..s.exp.unsigned_abs() {
                raw.extend_from_slice(&img.syllables);
            }
        }
        Ok(ReducedWord::reduce(raw))
    }

    /// `x_i -> x^-i y x^i`, with `x` as variable 1 and `y` as variable 2.
    pub fn two_variable_reduction(&self) -> ReducedWord {
        let mut raw = Vec::new();
        for s in &self.syllables {
            let i = s.var as i64;
            raw.push(Syllable::new(1, -i));
            raw.push(Syllable::new(2, s.exp));
            raw.push(Syllable::new(1, i));
        }
        ReducedWord::reduce(raw)
    }

    /// Replaces every syllable `(var, e)` by `(var, k e)`.
    pub fn power_substitution(&self, var: u32, k: i64) -> ReducedWord {
        ReducedWord::reduce(self.syllables.iter().map(|s| {
            if s.var == var {
                Syllable::new(s.var, s.exp * k)
            } else {
                *s
            }
        }))
    }
}

// Graded: letter length, then syllable count, then syllables lexicographically.
impl Ord for ReducedWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then(self.syllables.len().cmp(&other.syllables.len()))
            .then_with(|| self.syllables.cmp(&other.syllables))
    }
}

impl PartialOrd for ReducedWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return f.write_str("1");
        }
        for (i, s) in self.syllables.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if s.exp == 1 {
                write!(f, "x{}", s.var)?;
            } else {
                write!(f, "x{}^{}", s.var, s.exp)?;
            }
        }
        Ok(())
    }
}

/// All reduced words of letter length `<= max_len` over `vars` variables with
/// letters `x_i^{+-1}`, in graded order.
pub fn all_words_up_to(vars: u32, max_len: usize) -> Vec<ReducedWord> {
    let mut out = alloc::vec![ReducedWord::identity()];
    let mut frontier: Vec<Vec<(u32, i64)>> = alloc::vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for letters in &frontier {
            for v in 1..=vars {
                for e in [1i64, -1] {
                    if let Some(&(lv, le)) = letters.last() {
                        if lv == v && le == -e {
                            continue;
                        }
                    }
                    let mut w = letters.clone();
                    w.push((v, e));
                    next.push(w);
                }
            }
        }
        out.extend(next.iter().map(|w| ReducedWord::from_pairs(w)));
        frontier = next;
    }
    out.sort();
    out
}
