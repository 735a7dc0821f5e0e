//! Dense univariate polynomials over a [`Scalar`] field.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Below this length products use the schoolbook method.
const KARATSUBA_THRESHOLD: usize = 24;

/// Polynomial with coefficients in ascending degree order.
///
/// The coefficient list never ends in a zero; the zero polynomial is the
/// empty list.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> Poly<S> {
    pub fn new(mut coeffs: Vec<S>) -> Self {
        trim(&mut coeffs);
        Poly { coeffs }
    }

    pub fn from_i64(values: &[i64]) -> Self {
        Self::new(values.iter().map(|&v| S::from_i64(v)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(S::one())
    }

    pub fn constant(c: S) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(c: S, k: usize) -> Self {
        let mut coeffs = vec![S::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `x^k - 1`.
    pub fn x_pow_minus_one(k: usize) -> Self {
        let mut coeffs = vec![S::zero(); k + 1];
        coeffs[0] = S::one().neg();
        coeffs[k] = S::one();
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    /// Coefficient of `x^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> S {
        self.coeffs.get(k).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&S> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    /// Coefficients padded with zeros (or truncated) to exactly `len` entries.
    pub fn to_dense(&self, len: usize) -> Vec<S> {
        let mut out = self.coeffs.clone();
        out.resize(len, S::zero());
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self::new(add_slices(&self.coeffs, &rhs.coeffs))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let out = (0..n)
            .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a.sub(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.neg(),
                (None, None) => unreachable!(),
            })
            .collect();
        Self::new(out)
    }

    pub fn neg(&self) -> Self {
        Poly { coeffs: self.coeffs.iter().map(S::neg).collect() }
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self::new(mul_slices(&self.coeffs, &rhs.coeffs))
    }

    /// Quotient and remainder with `deg r < deg b`.
    pub fn divmod(&self, b: &Self) -> Result<(Self, Self)> {
        let db = b.degree().ok_or(Error::DivisionByZero)?;
        let mut r = self.coeffs.clone();
        if r.len() <= db {
            return Ok((Self::zero(), self.clone()));
        }
        let lead_inv = if b.is_monic() {
            None
        } else {
            Some(b.coeffs[db].inv().expect("nonzero leading coefficient"))
        };
        let mut q = vec![S::zero(); r.len() - db];
        for k in (0..q.len()).rev() {
            let top = r[k + db].clone();
            if top.is_zero() {
                continue;
            }
            let c = match &lead_inv {
                Some(li) => top.mul(li),
                None => top,
            };
            for (i, bi) in b.coeffs[..db].iter().enumerate() {
                if !bi.is_zero() {
                    r[k + i].sub_mul(&c, bi);
                }
            }
            r[k + db] = S::zero();
            q[k] = c;
        }
        r.truncate(db);
        Ok((Self::new(q), Self::new(r)))
    }

    pub fn rem(&self, b: &Self) -> Result<Self> {
        Ok(self.divmod(b)?.1)
    }

    /// Scales to a monic polynomial; the zero polynomial is returned as is.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) if !l.is_one() => self.scale(&l.inv().expect("nonzero")),
            _ => self.clone(),
        }
    }

    /// Extended gcd: `(g, u, v)` with `g` monic and `g = u*a + v*b`.
    pub fn extgcd(a: &Self, b: &Self) -> Result<(Self, Self, Self)> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::ZeroGcd);
        }
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut u0, mut u1) = (Self::one(), Self::zero());
        let (mut v0, mut v1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1)?;
            let u2 = u0.sub(&q.mul(&u1));
            let v2 = v0.sub(&q.mul(&v1));
            r0 = std::mem::replace(&mut r1, r);
            u0 = std::mem::replace(&mut u1, u2);
            v0 = std::mem::replace(&mut v1, v2);
        }
        let lead = r0.leading().expect("nonzero gcd").clone();
        let li = lead.inv().expect("nonzero");
        Ok((r0.scale(&li), u0.scale(&li), v0.scale(&li)))
    }

    pub fn gcd(a: &Self, b: &Self) -> Result<Self> {
        Ok(Self::extgcd(a, b)?.0)
    }

    /// Inverse of `self` modulo `m`, `None` when they share a factor.
    pub fn inv_mod(&self, m: &Self) -> Result<Option<Self>> {
        let a = self.rem(m)?;
        if a.is_zero() {
            return Ok(None);
        }
        let (g, u, _) = Self::extgcd(&a, m)?;
        if g.degree() != Some(0) {
            return Ok(None);
        }
        Ok(Some(u.rem(m)?))
    }

    pub fn eval(&self, x: &S) -> S {
        let mut acc = S::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.mul(&S::from_i64(i as i64)))
                .collect(),
        )
    }
}

impl<S: fmt::Debug> fmt::Debug for Poly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}

impl<S: Scalar> fmt::Display for Poly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{k}")?,
            }
        }
        Ok(())
    }
}

fn trim<S: Scalar>(v: &mut Vec<S>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

pub(crate) fn add_slices<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o = o.add(s);
    }
    out
}

fn add_into<S: Scalar>(dst: &mut [S], src: &[S]) {
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d = d.add(s);
        }
    }
}

fn sub_into<S: Scalar>(dst: &mut [S], src: &[S]) {
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d = d.sub(s);
        }
    }
}

fn schoolbook<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    let mut out = vec![S::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                out[i + j].add_mul(ai, bj);
            }
        }
    }
    out
}

/// Raw product of coefficient slices (no trimming): schoolbook for short
/// inputs, Karatsuba otherwise.
pub fn mul_slices<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let (a, b) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    if b.len() < KARATSUBA_THRESHOLD {
        return schoolbook(a, b);
    }
    if a.len() >= 2 * b.len() {
        let mut out = vec![S::zero(); a.len() + b.len() - 1];
        for (k, chunk) in a.chunks(b.len()).enumerate() {
            let p = mul_slices(chunk, b);
            add_into(&mut out[k * b.len()..], &p);
        }
        return out;
    }
    let h = a.len() / 2;
    let (a0, a1) = a.split_at(h);
    let (b0, b1) = b.split_at(h.min(b.len()));
    let z0 = mul_slices(a0, b0);
    let z2 = mul_slices(a1, b1);
    let mut z1 = mul_slices(&add_slices(a0, a1), &add_slices(b0, b1));
    sub_into(&mut z1, &z0);
    sub_into(&mut z1, &z2);
    let mut out = vec![S::zero(); a.len() + b.len() - 1];
    add_into(&mut out, &z0);
    add_into(&mut out[h..], &z1);
    add_into(&mut out[2 * h..], &z2);
    out
}

/// Values of the linear form `alpha -> ell(a * alpha mod P)` on the power
/// basis `1, x, ..., x^{n-1}`, where `ell` is given by its values on that
/// basis and `P` is the monic `modulus` of degree `n`.
///
/// This is the transpose of multiplication by `a` in `F[x]/<P>`: the output
/// `res` satisfies `<res, b> = <ell, a*b mod P>` for every `b`.
pub fn transposed_mul_core<S: Scalar>(a: &Poly<S>, ell: &[S], modulus: &Poly<S>) -> Result<Vec<S>> {
    let n = modulus.degree().ok_or(Error::DivisionByZero)?;
    if !modulus.is_monic() {
        return Err(Error::InvalidModulus("modulus must be monic".into()));
    }
    if ell.len() != n {
        return Err(Error::LengthMismatch { expected: n, found: ell.len() });
    }
    let a = if a.coeffs.len() > n { a.rem(modulus)? } else { a.clone() };
    if a.is_zero() {
        return Ok(vec![S::zero(); n]);
    }
    let len = a.coeffs.len();
    // values ell(x^j) for j < n + len - 1, extended through x^n = -sum P_i x^i
    let mut seq = ell.to_vec();
    let low = &modulus.coeffs[..n];
    for j in n..n + len - 1 {
        let mut acc = S::zero();
        for (i, p) in low.iter().enumerate() {
            if !p.is_zero() {
                acc.sub_mul(p, &seq[j - n + i]);
            }
        }
        seq.push(acc);
    }
    let rev: Vec<S> = a.coeffs.iter().rev().cloned().collect();
    let prod = mul_slices(&rev, &seq);
    Ok(prod[len - 1..len - 1 + n].to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    type P = Poly<Rational>;

    fn p(v: &[i64]) -> P {
        P::from_i64(v)
    }

    #[test]
    fn products() {
        assert_eq!(p(&[1, 1]).mul(&p(&[-1, 1])), p(&[-1, 0, 1]));
        assert!(P::zero().mul(&p(&[2, 0, 0, 1])).is_zero());
        assert_eq!(p(&[1, 1, 1]).mul(&p(&[-1, 1])), p(&[-1, 0, 0, 1]));
    }

    #[test]
    fn karatsuba_matches_schoolbook() {
        let a: Vec<Rational> = (0..61).map(|i| Rational::from_i64((i * 7 % 13) - 6)).collect();
        let b: Vec<Rational> = (0..40).map(|i| Rational::from_i64((i * 5 % 11) - 5)).collect();
        assert_eq!(mul_slices(&a, &b), schoolbook(&a, &b));
        assert_eq!(mul_slices(&b, &a[..25]), schoolbook(&b, &a[..25]));
    }

    #[test]
    fn division() {
        assert_eq!(p(&[-1, 0, 0, 1]).divmod(&p(&[-1, 1])).unwrap(), (p(&[1, 1, 1]), P::zero()));
        assert_eq!(p(&[0, 1]).divmod(&p(&[0, 0, 1])).unwrap(), (P::zero(), p(&[0, 1])));
        assert_eq!(p(&[-1, 0, 0, 0, 1]).divmod(&p(&[1, 0, 1])).unwrap(), (p(&[-1, 0, 1]), P::zero()));
        assert_eq!(p(&[1]).divmod(&P::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn gcds() {
        assert_eq!(P::extgcd(&p(&[1, 0, 1]), &p(&[0, 1])).unwrap().0, P::one());
        assert_eq!(P::gcd(&p(&[-1, 0, 1]), &p(&[-1, 1])).unwrap(), p(&[-1, 1]));
        assert_eq!(P::gcd(&p(&[-1, 0, 0, 0, 1]), &p(&[1, 0, 1])).unwrap(), p(&[1, 0, 1]));
        assert_eq!(P::extgcd(&P::zero(), &P::zero()), Err(Error::ZeroGcd));
        // scaling of the gcd: 2x - 2 and x - 1 share the monic factor x - 1
        assert_eq!(P::gcd(&p(&[-2, 2]), &p(&[-3, 3])).unwrap(), p(&[-1, 1]));
    }

    #[test]
    fn transposed_identity_and_rotation() {
        let m = p(&[1, 0, 1]);
        let ell = vec![Rational::from_i64(3), Rational::from_i64(5)];
        assert_eq!(transposed_mul_core(&P::one(), &ell, &m).unwrap(), ell);
        // x * (b0 + b1 x) = -b1 + b0 x mod x^2+1
        let out = transposed_mul_core(&p(&[0, 1]), &ell, &m).unwrap();
        assert_eq!(out, vec![Rational::from_i64(5), Rational::from_i64(-3)]);
        assert_eq!(
            transposed_mul_core(&P::one(), &ell[..1], &m),
            Err(Error::LengthMismatch { expected: 2, found: 1 })
        );
    }

    #[test]
    fn transposed_duality_cyclotomic5() {
        let m = p(&[1, 1, 1, 1, 1]);
        let a = p(&[2, -1, 3, 4]);
        let ell: Vec<Rational> = [1, -2, 5, 7].iter().map(|&v| Rational::from_i64(v)).collect();
        let t = transposed_mul_core(&a, &ell, &m).unwrap();
        for b in [p(&[1]), p(&[0, 0, 1]), p(&[3, -1, 0, 2]), p(&[-5, 4, 1, 1])] {
            let ab = a.mul(&b).rem(&m).unwrap();
            let lhs: Rational = (0..4).fold(Rational::zero(), |acc, k| acc.add(&t[k].mul(&b.coeff(k))));
            let rhs: Rational = (0..4).fold(Rational::zero(), |acc, k| acc.add(&ell[k].mul(&ab.coeff(k))));
            assert_eq!(lhs, rhs);
        }
    }
}
