//! Scalar fields: exact rationals and a word-size prime field.
//!
//! Every algorithm in this crate is generic over [`Scalar`]. Each field
//! operation bumps a thread-local counter so that callers can measure
//! arithmetic cost with [`count_ops`] independently of wall time.

use std::cell::Cell;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

thread_local! {
    static OPS: Cell<u64> = const { Cell::new(0) };
}

#[inline]
fn tick() {
    OPS.with(|c| c.set(c.get() + 1));
}

/// Number of scalar operations performed on this thread so far.
pub fn op_count() -> u64 {
    OPS.with(|c| c.get())
}

/// Runs `f` and returns its result along with the number of scalar
/// operations it performed on the current thread.
pub fn count_ops<R>(f: impl FnOnce() -> R) -> (R, u64) {
    let start = op_count();
    let out = f();
    (out, op_count() - start)
}

/// A field of characteristic zero (or large characteristic) with exact
/// arithmetic.
pub trait Scalar: Clone + PartialEq + Eq + std::hash::Hash + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul(&r))
    }

    /// `self += a * b`.
    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self = self.add(&a.mul(b));
    }

    /// `self -= a * b`.
    fn sub_mul(&mut self, a: &Self, b: &Self) {
        *self = self.sub(&a.mul(b));
    }
}

/// Exact rational number, always in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_big(num: BigInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Rational(BigRational::new(num, den))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Canonical text form: `p` for integers, `p/q` otherwise.
impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let bad = || Error::Parse(format!("invalid rational {s:?}"));
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        Ok(Rational(BigRational::new(num, den)))
    }
}

impl Scalar for Rational {
    fn zero() -> Self {
        Rational(BigRational::zero())
    }
    fn one() -> Self {
        Rational(BigRational::one())
    }
    fn from_i64(v: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(v)))
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn is_one(&self) -> bool {
        self.0.is_one()
    }
    fn add(&self, rhs: &Self) -> Self {
        tick();
        Rational(&self.0 + &rhs.0)
    }
    fn sub(&self, rhs: &Self) -> Self {
        tick();
        Rational(&self.0 - &rhs.0)
    }
    fn mul(&self, rhs: &Self) -> Self {
        tick();
        Rational(&self.0 * &rhs.0)
    }
    fn neg(&self) -> Self {
        Rational(-&self.0)
    }
    fn inv(&self) -> Option<Self> {
        if self.0.is_zero() {
            None
        } else {
            tick();
            Some(Rational(self.0.recip()))
        }
    }
    fn add_mul(&mut self, a: &Self, b: &Self) {
        tick();
        tick();
        self.0 += &a.0 * &b.0;
    }
    fn sub_mul(&mut self, a: &Self, b: &Self) {
        tick();
        tick();
        self.0 -= &a.0 * &b.0;
    }
}

/// The Mersenne prime 2^61 - 1.
pub const FP_MODULUS: u64 = (1 << 61) - 1;

/// Element of the prime field of order [`FP_MODULUS`].
///
/// Used for stress runs and operation-count benchmarks at sizes where exact
/// rational coefficients grow too large.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fp(u64);

impl Fp {
    pub fn new(v: u64) -> Self {
        Fp(v % FP_MODULUS)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    #[inline]
    fn reduce128(x: u128) -> u64 {
        let lo = (x as u64) & FP_MODULUS;
        let hi = (x >> 61) as u64;
        let mut r = lo + (hi & FP_MODULUS) + (hi >> 61);
        while r >= FP_MODULUS {
            r -= FP_MODULUS;
        }
        r
    }

    fn pow(self, mut e: u64) -> Fp {
        let mut base = self.0;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = Self::reduce128(acc as u128 * base as u128);
            }
            base = Self::reduce128(base as u128 * base as u128);
            e >>= 1;
        }
        Fp(acc)
    }

    /// Image of a rational number, `None` when the denominator vanishes.
    pub fn from_rational(q: &Rational) -> Option<Fp> {
        let p = BigInt::from(FP_MODULUS);
        let reduce = |v: &BigInt| {
            let r = ((v % &p) + &p) % &p;
            Fp(r.to_u64().expect("reduced value fits"))
        };
        let num = reduce(q.numer());
        let den = reduce(q.denom());
        if den.0 == 0 {
            return None;
        }
        Some(Fp(Self::reduce128(num.0 as u128 * den.pow(FP_MODULUS - 2).0 as u128)))
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Scalar for Fp {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1)
    }
    fn from_i64(v: i64) -> Self {
        let m = FP_MODULUS as i128;
        Fp((((v as i128) % m + m) % m) as u64)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, rhs: &Self) -> Self {
        tick();
        let s = self.0 + rhs.0;
        Fp(if s >= FP_MODULUS { s - FP_MODULUS } else { s })
    }
    fn sub(&self, rhs: &Self) -> Self {
        tick();
        Fp(if self.0 >= rhs.0 {
            self.0 - rhs.0
        } else {
            self.0 + FP_MODULUS - rhs.0
        })
    }
    fn mul(&self, rhs: &Self) -> Self {
        tick();
        Fp(Self::reduce128(self.0 as u128 * rhs.0 as u128))
    }
    fn neg(&self) -> Self {
        Fp(if self.0 == 0 { 0 } else { FP_MODULUS - self.0 })
    }
    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            tick();
            Some(self.pow(FP_MODULUS - 2))
        }
    }
}

/// Scalars that rational data (fixtures, command-line input) can be mapped
/// into.
pub trait FromRational: Scalar {
    /// `None` when the denominator vanishes in this field.
    fn from_rational(q: &Rational) -> Option<Self>;
}

impl FromRational for Rational {
    fn from_rational(q: &Rational) -> Option<Self> {
        Some(q.clone())
    }
}

impl FromRational for Fp {
    fn from_rational(q: &Rational) -> Option<Self> {
        Fp::from_rational(q)
    }
}

/// Integer-valued helper used by tests and fixtures.
pub fn scalars<S: Scalar>(values: &[i64]) -> Vec<S> {
    values.iter().map(|&v| S::from_i64(v)).collect()
}
