//! Exact scalars: prime fields `F_p` and the rationals.
//!
//! A [`Scalar`] carries enough information to recover its field, so zero in
//! `F_3` and zero in `Q` are different values. Mixing fields in arithmetic is a
//! programming error and panics through the operator impls; the checked entry
//! points ([`Scalar::arith`], [`Scalar::inv`]) report it as an error instead.

use alloc::string::{String, ToString};
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Largest modulus accepted for a prime field.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("modulus {0} is not a prime in [2, 2^31 - 1]")]
    NonPrimeModulus(u64),
    #[error("scalars from different fields: {0} and {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("division by zero in {0}")]
    DivisionByZero(FieldSpec),
    #[error("cannot parse scalar literal `{0}`")]
    BadLiteral(String),
    #[error("cannot parse field tag `{0}` (expected F<p> or Q)")]
    BadFieldTag(String),
}

/// A prime field `F_p` or the rationals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Prime(u32),
    Rational,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self, ScalarError> {
        if p > MAX_PRIME || !is_prime(p) {
            return Err(ScalarError::NonPrimeModulus(p));
        }
        Ok(FieldSpec::Prime(p as u32))
    }

    pub fn rational() -> Self {
        FieldSpec::Rational
    }

    pub fn characteristic(&self) -> u64 {
        match *self {
            FieldSpec::Prime(p) => p as u64,
            FieldSpec::Rational => 0,
        }
    }

    /// Number of elements, `None` for `Q`.
    pub fn size(&self) -> Option<u64> {
        match *self {
            FieldSpec::Prime(p) => Some(p as u64),
            FieldSpec::Rational => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.size().is_some()
    }

    pub fn zero(&self) -> Scalar {
        match *self {
            FieldSpec::Prime(p) => Scalar::Mod { value: 0, modulus: p },
            FieldSpec::Rational => Scalar::Rat(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match *self {
            FieldSpec::Prime(p) => Scalar::Mod {
                value: n.rem_euclid(p as i64) as u32,
                modulus: p,
            },
            FieldSpec::Rational => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match *self {
            FieldSpec::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(p));
                Scalar::Mod {
                    value: r.to_u32().expect("residue fits in u32"),
                    modulus: p,
                }
            }
            FieldSpec::Rational => Scalar::Rat(BigRational::from_integer(n.clone())),
        }
    }

    /// `num / den` in this field.
    pub fn fraction(&self, num: &BigInt, den: &BigInt) -> Result<Scalar, ScalarError> {
        let d = self.from_bigint(den);
        if d.is_zero() {
            return Err(ScalarError::DivisionByZero(*self));
        }
        Ok(&self.from_bigint(num) * &d.inv()?)
    }

    /// The `index`-th residue of a prime field (`0..p`). Panics over `Q`.
    pub fn residue(&self, index: u64) -> Scalar {
        match *self {
            FieldSpec::Prime(p) => Scalar::Mod {
                value: (index % p as u64) as u32,
                modulus: p,
            },
            FieldSpec::Rational => panic!("residue enumeration requires a finite field"),
        }
    }

    /// Parses an integer or `a/b` literal into this field.
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar, ScalarError> {
        let bad = || ScalarError::BadLiteral(text.to_string());
        let text = text.trim();
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (text, "1"),
        };
        let num = BigInt::from_str(num).map_err(|_| bad())?;
        let den = BigInt::from_str(den).map_err(|_| bad())?;
        self.fraction(&num, &den)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "F{p}"),
            FieldSpec::Rational => f.write_str("Q"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t == "Q" {
            return Ok(FieldSpec::Rational);
        }
        let digits = t
            .strip_prefix('F')
            .ok_or_else(|| ScalarError::BadFieldTag(t.to_string()))?;
        let p: u64 = digits
            .parse()
            .map_err(|_| ScalarError::BadFieldTag(t.to_string()))?;
        FieldSpec::prime(p)
    }
}

/// An element of a [`FieldSpec`] in canonical form.
///
/// Residues satisfy `0 <= value < modulus`; rationals are kept reduced with a
/// positive denominator (guaranteed by `BigRational`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Mod { value: u32, modulus: u32 },
    Rat(BigRational),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Mod { modulus, .. } => FieldSpec::Prime(*modulus),
            Scalar::Rat(_) => FieldSpec::Rational,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Mod { value, .. } => *value == 0,
            Scalar::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Mod { value, .. } => *value == 1,
            Scalar::Rat(r) => r.is_one(),
        }
    }

    /// Residue of a prime-field scalar.
    pub fn residue_value(&self) -> Option<u32> {
        match self {
            Scalar::Mod { value, .. } => Some(*value),
            Scalar::Rat(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rat(r) => Some(r),
            Scalar::Mod { .. } => None,
        }
    }

    /// True when the printed form starts with a minus sign (rationals only).
    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_negative())
    }

    pub fn abs(&self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(r.abs()),
            m => m.clone(),
        }
    }

    /// Checked binary operation.
    pub fn arith(&self, other: &Scalar, op: ArithOp) -> Result<Scalar, ScalarError> {
        if self.field() != other.field() {
            return Err(ScalarError::FieldMismatch(self.field(), other.field()));
        }
        Ok(match op {
            ArithOp::Add => self + other,
            ArithOp::Sub => self - other,
            ArithOp::Mul => self * other,
        })
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero(self.field()));
        }
        Ok(match self {
            Scalar::Mod { value, modulus } => Scalar::Mod {
                value: pow_mod(*value as u64, *modulus as u64 - 2, *modulus as u64) as u32,
                modulus: *modulus,
            },
            Scalar::Rat(r) => Scalar::Rat(r.recip()),
        })
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

#[track_caller]
fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("field mismatch: {} vs {}", a.field(), b.field())
}

impl Add for &Scalar {
    type Output = Scalar;

    #[inline]
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Mod { value: a, modulus: p }, Scalar::Mod { value: b, modulus: q }) if p == q => {
                Scalar::Mod {
                    value: ((*a as u64 + *b as u64) % *p as u64) as u32,
                    modulus: *p,
                }
            }
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            _ => mismatch(self, rhs),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;

    #[inline]
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Mod { value: a, modulus: p }, Scalar::Mod { value: b, modulus: q }) if p == q => {
                Scalar::Mod {
                    value: ((*a as u64 + *p as u64 - *b as u64) % *p as u64) as u32,
                    modulus: *p,
                }
            }
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a - b),
            _ => mismatch(self, rhs),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;

    #[inline]
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Mod { value: a, modulus: p }, Scalar::Mod { value: b, modulus: q }) if p == q => {
                Scalar::Mod {
                    value: ((*a as u64 * *b as u64) % *p as u64) as u32,
                    modulus: *p,
                }
            }
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        match self {
            Scalar::Mod { value, modulus } => Scalar::Mod {
                value: (*modulus - *value) % *modulus,
                modulus: *modulus,
            },
            Scalar::Rat(r) => Scalar::Rat(-r),
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    #[inline]
    fn add_assign(&mut self, rhs: &Scalar) {
        match (&mut *self, rhs) {
            (Scalar::Mod { value: a, modulus: p }, Scalar::Mod { value: b, modulus: q }) if p == q => {
                *a = ((*a as u64 + *b as u64) % *p as u64) as u32;
            }
            (Scalar::Rat(a), Scalar::Rat(b)) => *a += b,
            _ => mismatch(self, rhs),
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Mod { value, .. } => write!(f, "{value}"),
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64, d: i64) -> Scalar {
        FieldSpec::Rational
            .fraction(&BigInt::from(n), &BigInt::from(d))
            .unwrap()
    }

    #[test]
    fn field_make() {
        let f3 = FieldSpec::prime(3).unwrap();
        assert_eq!(f3.characteristic(), 3);
        assert_eq!(FieldSpec::rational().characteristic(), 0);
        assert_eq!(FieldSpec::prime(4), Err(ScalarError::NonPrimeModulus(4)));
        assert!(FieldSpec::prime(1).is_err());
        assert!(FieldSpec::prime(MAX_PRIME).is_ok());
        assert!(FieldSpec::prime(MAX_PRIME + 2).is_err());
    }

    #[test]
    fn arith_examples() {
        let f3 = FieldSpec::prime(3).unwrap();
        let f5 = FieldSpec::prime(5).unwrap();
        assert_eq!(
            f3.from_i64(2).arith(&f3.from_i64(2), ArithOp::Add).unwrap(),
            f3.from_i64(1)
        );
        assert_eq!(q(1, 2).arith(&q(2, 3), ArithOp::Mul).unwrap(), q(1, 3));
        assert!(f5.from_i64(2).arith(&f5.from_i64(2), ArithOp::Sub).unwrap().is_zero());
        assert_eq!(
            f3.one().arith(&f5.one(), ArithOp::Add),
            Err(ScalarError::FieldMismatch(f3, f5))
        );
    }

    #[test]
    fn inverse_examples() {
        let f5 = FieldSpec::prime(5).unwrap();
        let f3 = FieldSpec::prime(3).unwrap();
        assert_eq!(f5.from_i64(2).inv().unwrap(), f5.from_i64(3));
        assert_eq!(q(1, 1).inv().unwrap(), q(1, 1));
        assert_eq!(f3.zero().inv(), Err(ScalarError::DivisionByZero(f3)));
    }

    #[test]
    fn inverse_law_randomized() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5ca1a);
        for p in [2u64, 3, 5, 7, 101, MAX_PRIME] {
            let f = FieldSpec::prime(p).unwrap();
            for _ in 0..1000 {
                let a = f.residue(rng.gen_range(1..p));
                assert!((&a * &a.inv().unwrap()).is_one());
            }
        }
        for _ in 0..1000 {
            let n = rng.gen_range(-1000i64..1000);
            let d = rng.gen_range(1i64..1000);
            if n == 0 {
                continue;
            }
            let a = q(n, d);
            assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn characteristic_law() {
        for p in [2u64, 3, 5, 7] {
            let f = FieldSpec::prime(p).unwrap();
            let mut acc = f.zero();
            for k in 1..=p {
                acc += &f.one();
                assert_eq!(acc.is_zero(), k == p);
            }
        }
        let mut acc = FieldSpec::Rational.zero();
        for _ in 0..100 {
            acc += &FieldSpec::Rational.one();
            assert!(!acc.is_zero());
        }
    }

    #[test]
    fn print_parse_roundtrip() {
        let f7 = FieldSpec::prime(7).unwrap();
        for v in 0..7 {
            let s = f7.residue(v);
            assert_eq!(f7.parse_scalar(&s.to_string()).unwrap(), s);
        }
        for (n, d) in [(0, 1), (-3, 6), (5, 1), (7, -21), (123456789, 1000)] {
            let s = q(n, d);
            assert_eq!(FieldSpec::Rational.parse_scalar(&s.to_string()).unwrap(), s);
        }
        assert_eq!(q(-3, 6).to_string(), "-1/2");
    }

    #[test]
    fn field_tags() {
        assert_eq!("F3".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(3));
        assert_eq!("Q".parse::<FieldSpec>().unwrap(), FieldSpec::Rational);
        assert!("F4".parse::<FieldSpec>().is_err());
        assert!("R".parse::<FieldSpec>().is_err());
        assert_eq!(FieldSpec::Prime(5).to_string(), "F5");
    }

    #[test]
    fn fraction_with_zero_denominator_mod_p() {
        let f2 = FieldSpec::prime(2).unwrap();
        assert!(matches!(
            f2.parse_scalar("1/2"),
            Err(ScalarError::DivisionByZero(_))
        ));
        let f3 = FieldSpec::prime(3).unwrap();
        assert_eq!(f3.parse_scalar("1/2").unwrap(), f3.from_i64(2));
    }
}
