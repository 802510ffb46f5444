//! Univariate polynomials with integer (possibly negative) exponents.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::scalar::{FieldSpec, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UniPolyError {
    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("operation needs nonnegative exponents (found x^{0})")]
    NegativeExponent(i64),
}

/// Nonzero Laurent polynomial in one variable over an exact field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    field: FieldSpec,
    coeffs: BTreeMap<i64, Scalar>,
}

impl UniPoly {
    pub fn from_terms<I>(field: FieldSpec, terms: I) -> Result<Self, UniPolyError>
    where
        I: IntoIterator<Item = (i64, Scalar)>,
    {
        let mut coeffs: BTreeMap<i64, Scalar> = BTreeMap::new();
        for (e, c) in terms {
            assert_eq!(c.field(), field, "coefficient field mismatch");
            match coeffs.get_mut(&e) {
                Some(acc) => *acc += &c,
                None => {
                    coeffs.insert(e, c);
                }
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        if coeffs.is_empty() {
            return Err(UniPolyError::ZeroPolynomial);
        }
        Ok(UniPoly { field, coeffs })
    }

    pub fn from_i64s(field: FieldSpec, terms: &[(i64, i64)]) -> Result<Self, UniPolyError> {
        UniPoly::from_terms(field, terms.iter().map(|&(e, c)| (e, field.from_i64(c))))
    }

    pub fn monomial(field: FieldSpec, e: i64) -> Self {
        UniPoly { field, coeffs: BTreeMap::from([(e, field.one())]) }
    }

    /// Dense coefficients, lowest degree first. Leading coefficient nonzero.
    pub fn from_dense(field: FieldSpec, dense: &[Scalar]) -> Result<Self, UniPolyError> {
        UniPoly::from_terms(
            field,
            dense.iter().enumerate().map(|(i, c)| (i as i64, c.clone())),
        )
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn coefficients(&self) -> &BTreeMap<i64, Scalar> {
        &self.coeffs
    }

    pub fn coefficient(&self, e: i64) -> Scalar {
        self.coeffs.get(&e).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn min_exp(&self) -> i64 {
        *self.coeffs.keys().next().expect("nonzero polynomial")
    }

    pub fn max_exp(&self) -> i64 {
        *self.coeffs.keys().next_back().expect("nonzero polynomial")
    }

    /// Degree of an ordinary polynomial.
    pub fn degree(&self) -> i64 {
        self.max_exp()
    }

    pub fn has_nonnegative_exponents(&self) -> bool {
        self.min_exp() >= 0
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: i64) -> UniPoly {
        UniPoly {
            field: self.field,
            coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn to_dense(&self) -> Result<Vec<Scalar>, UniPolyError> {
        if self.min_exp() < 0 {
            return Err(UniPolyError::NegativeExponent(self.min_exp()));
        }
        let mut d = vec![self.field.zero(); self.max_exp() as usize + 1];
        for (e, c) in &self.coeffs {
            d[*e as usize] = c.clone();
        }
        Ok(d)
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        let mut terms = Vec::new();
        for (a, c) in &self.coeffs {
            for (b, d) in &other.coeffs {
                terms.push((a + b, c * d));
            }
        }
        // product of nonzero polynomials over a field is nonzero
        UniPoly::from_terms(self.field, terms).expect("integral domain")
    }

    /// `f(1 + x)` for an ordinary polynomial `f`.
    pub fn compose_one_plus_x(&self) -> Result<UniPoly, UniPolyError> {
        let dense = self.to_dense()?;
        let one_plus_x = vec![self.field.one(), self.field.one()];
        let mut acc: Vec<Scalar> = vec![self.field.zero()];
        for c in dense.iter().rev() {
            acc = dense_mul(&acc, &one_plus_x);
            acc[0] += c;
        }
        UniPoly::from_dense(self.field, &acc)
    }

    /// Value at a scalar; `None` when `lambda = 0` meets a negative exponent.
    pub fn eval(&self, lambda: &Scalar) -> Option<Scalar> {
        let mut acc = self.field.zero();
        let inv = if lambda.is_zero() { None } else { lambda.inv().ok() };
        for (e, c) in &self.coeffs {
            let term = if *e >= 0 {
                lambda.pow(*e as u64)
            } else {
                inv.as_ref()?.pow(e.unsigned_abs())
            };
            acc += &(c * &term);
        }
        Some(acc)
    }

    pub fn monic(&self) -> UniPoly {
        let lead = self.coeffs.values().next_back().unwrap().inv().unwrap();
        UniPoly {
            field: self.field,
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, c * &lead)).collect(),
        }
    }

    /// Monic gcd of two ordinary polynomials.
    pub fn gcd(&self, other: &UniPoly) -> Result<UniPoly, UniPolyError> {
        let mut a = self.to_dense()?;
        let mut b = other.to_dense()?;
        while !is_zero_dense(&b) {
            let r = dense_rem(&a, &b);
            a = b;
            b = r;
        }
        Ok(UniPoly::from_dense(self.field, &a)?.monic())
    }

    /// Monic least common multiple of two ordinary polynomials.
    pub fn lcm(&self, other: &UniPoly) -> Result<UniPoly, UniPolyError> {
        let g = self.gcd(other)?.to_dense()?;
        let prod = self.mul(other).to_dense()?;
        let (q, r) = dense_divrem(&prod, &g);
        debug_assert!(is_zero_dense(&r));
        Ok(UniPoly::from_dense(self.field, &q)?.monic())
    }

    /// Whether `self` divides `other` (ordinary polynomials).
    pub fn divides(&self, other: &UniPoly) -> Result<bool, UniPolyError> {
        let (_, r) = dense_divrem(&other.to_dense()?, &self.to_dense()?);
        Ok(is_zero_dense(&r))
    }
}

fn is_zero_dense(a: &[Scalar]) -> bool {
    a.iter().all(Scalar::is_zero)
}

fn trim(mut a: Vec<Scalar>) -> Vec<Scalar> {
    while a.len() > 1 && a.last().is_some_and(Scalar::is_zero) {
        a.pop();
    }
    a
}

fn dense_mul(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let field = a[0].field();
    let mut out = vec![field.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += &(x * y);
        }
    }
    out
}

fn dense_divrem(a: &[Scalar], b: &[Scalar]) -> (Vec<Scalar>, Vec<Scalar>) {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let field = b[0].field();
    let lead_inv = b.last().unwrap().inv().expect("nonzero divisor");
    if r.len() < b.len() {
        return (vec![field.zero()], r);
    }
    let mut q = vec![field.zero(); r.len() - b.len() + 1];
    for k in (0..q.len()).rev() {
        let c = &r[k + b.len() - 1] * &lead_inv;
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            let t = &c * bj;
            r[k + j] -= &t;
        }
        q[k] = c;
    }
    (trim(q), trim(r))
}

fn dense_rem(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    dense_divrem(a, b).1
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (e, c)) in self.coeffs.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            match (*e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => f.write_str("x")?,
                (1, false) => write!(f, "{mag}*x")?,
                (_, true) => write!(f, "x^{e}")?,
                (_, false) => write!(f, "{mag}*x^{e}")?,
            }
        }
        Ok(())
    }
}
