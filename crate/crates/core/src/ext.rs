//! The extension `K = F[x]/<P>`, its elements, linear forms `K -> F` and
//! automorphisms given by the image of the generator.
//!
//! Automorphisms are applied by baby-step/giant-step modular composition
//! with a tunable block size `t` (default `ceil(sqrt(n))`).

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::{self, Poly};
use crate::scalar::Scalar;

/// `K = F[x]/<P>` with `P` monic and squarefree of degree `n >= 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionField<S> {
    modulus: Poly<S>,
    n: usize,
    block: Option<usize>,
}

/// Element of `K` on the power basis `1, xi, ..., xi^{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtElem<S> {
    coeffs: Vec<S>,
}

/// `F`-linear form on `K`, stored by its values on the power basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm<S> {
    values: Vec<S>,
}

/// Field automorphism of `K`, stored as the image `gamma = g(xi)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism<S> {
    gamma: ExtElem<S>,
}

impl<S: Scalar> ExtElem<S> {
    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    pub fn to_poly(&self) -> Poly<S> {
        Poly::new(self.coeffs.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(S::is_zero)
    }
}

impl<S: Scalar> fmt::Display for ExtElem<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, &self.coeffs)
    }
}

pub(crate) fn write_list<S: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[S]) -> fmt::Result {
    for (i, c) in items.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{c}")?;
    }
    Ok(())
}

impl<S: Scalar> fmt::Display for LinearForm<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, &self.values)
    }
}

impl<S: Scalar> LinearForm<S> {
    pub fn new(values: Vec<S>) -> Self {
        LinearForm { values }
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `ell(a)`.
    pub fn apply(&self, a: &ExtElem<S>) -> S {
        dot(&self.values, &a.coeffs)
    }
}

impl<S: Scalar> Automorphism<S> {
    pub fn gamma(&self) -> &ExtElem<S> {
        &self.gamma
    }
}

pub(crate) fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    let mut acc = S::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc.add_mul(x, y);
        }
    }
    acc
}

impl<S: Scalar> ExtensionField<S> {
    pub fn new(modulus: Poly<S>) -> Result<Self> {
        let n = match modulus.degree() {
            Some(d) if d >= 2 => d,
            _ => return Err(Error::InvalidModulus("degree must be at least 2".into())),
        };
        if !modulus.is_monic() {
            return Err(Error::InvalidModulus("modulus must be monic".into()));
        }
        let g = Poly::gcd(&modulus, &modulus.derivative())?;
        if g.degree() != Some(0) {
            return Err(Error::InvalidModulus("modulus is not squarefree".into()));
        }
        Ok(ExtensionField { modulus, n, block: None })
    }

    /// Overrides the baby-step block size used by modular composition.
    pub fn with_block_size(mut self, t: usize) -> Self {
        self.block = Some(t.clamp(1, self.n));
        self
    }

    pub fn block_size(&self) -> usize {
        self.block.unwrap_or_else(|| ceil_sqrt(self.n))
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> &Poly<S> {
        &self.modulus
    }

    /// Builds an element from exactly `n` coordinates.
    pub fn elem(&self, coeffs: Vec<S>) -> Result<ExtElem<S>> {
        if coeffs.len() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, found: coeffs.len() });
        }
        Ok(ExtElem { coeffs })
    }

    pub fn elem_i64(&self, coeffs: &[i64]) -> Result<ExtElem<S>> {
        self.elem(coeffs.iter().map(|&c| S::from_i64(c)).collect())
    }

    /// Reduces an arbitrary polynomial modulo `P`.
    pub fn reduce(&self, p: &Poly<S>) -> ExtElem<S> {
        let r = if p.coeffs().len() > self.n { p.rem(&self.modulus).expect("nonzero modulus") } else { p.clone() };
        ExtElem { coeffs: r.to_dense(self.n) }
    }

    fn reduce_vec(&self, v: Vec<S>) -> ExtElem<S> {
        self.reduce(&Poly::new(v))
    }

    pub fn zero(&self) -> ExtElem<S> {
        ExtElem { coeffs: vec![S::zero(); self.n] }
    }

    pub fn one(&self) -> ExtElem<S> {
        self.constant(S::one())
    }

    pub fn constant(&self, c: S) -> ExtElem<S> {
        let mut e = self.zero();
        e.coeffs[0] = c;
        e
    }

    /// The generator `xi`, image of `x`.
    pub fn xi(&self) -> ExtElem<S> {
        let mut e = self.zero();
        e.coeffs[1] = S::one();
        e
    }

    pub fn add(&self, a: &ExtElem<S>, b: &ExtElem<S>) -> ExtElem<S> {
        ExtElem { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x.add(y)).collect() }
    }

    pub fn sub(&self, a: &ExtElem<S>, b: &ExtElem<S>) -> ExtElem<S> {
        ExtElem { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x.sub(y)).collect() }
    }

    pub fn neg(&self, a: &ExtElem<S>) -> ExtElem<S> {
        ExtElem { coeffs: a.coeffs.iter().map(S::neg).collect() }
    }

    pub fn scale(&self, c: &S, a: &ExtElem<S>) -> ExtElem<S> {
        ExtElem { coeffs: a.coeffs.iter().map(|x| x.mul(c)).collect() }
    }

    pub fn mul(&self, a: &ExtElem<S>, b: &ExtElem<S>) -> ExtElem<S> {
        self.reduce_vec(poly::mul_slices(&a.coeffs, &b.coeffs))
    }

    pub fn inv(&self, a: &ExtElem<S>) -> Result<ExtElem<S>> {
        match a.to_poly().inv_mod(&self.modulus)? {
            Some(u) => Ok(self.reduce(&u)),
            None => Err(Error::ZeroDivisor),
        }
    }

    pub fn pow(&self, a: &ExtElem<S>, mut e: u64) -> ExtElem<S> {
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

    /// Whether `gamma` is a root of `P` in `K`.
    pub fn is_root(&self, gamma: &ExtElem<S>) -> bool {
        let mut acc = self.zero();
        for c in self.modulus.coeffs().iter().rev() {
            acc = self.mul(&acc, gamma);
            acc.coeffs[0] = acc.coeffs[0].add(c);
        }
        acc.is_zero()
    }

    /// Validated automorphism `xi -> gamma`; `index` names the generator in
    /// error messages.
    pub fn automorphism(&self, gamma: ExtElem<S>, index: usize) -> Result<Automorphism<S>> {
        if gamma.coeffs.len() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, found: gamma.coeffs.len() });
        }
        if !self.is_root(&gamma) {
            return Err(Error::InvalidAutomorphism { index });
        }
        Ok(Automorphism { gamma })
    }

    pub fn identity(&self) -> Automorphism<S> {
        Automorphism { gamma: self.xi() }
    }

    /// `g(a) = a(gamma) mod P`.
    pub fn apply_aut(&self, g: &Automorphism<S>, a: &ExtElem<S>) -> ExtElem<S> {
        self.apply_aut_with_block(g, a, self.block_size())
    }

    pub fn apply_aut_with_block(&self, g: &Automorphism<S>, a: &ExtElem<S>, t: usize) -> ExtElem<S> {
        self.multi_apply_with_block(g, std::slice::from_ref(a), t).pop().expect("one output")
    }

    /// `g o h`, the automorphism applying `h` first.
    pub fn compose(&self, g: &Automorphism<S>, h: &Automorphism<S>) -> Automorphism<S> {
        Automorphism { gamma: self.apply_aut(g, &h.gamma) }
    }

    /// `g^k` by repeated squaring.
    pub fn aut_pow(&self, g: &Automorphism<S>, mut k: u64) -> Automorphism<S> {
        let mut base = g.clone();
        let mut acc = self.identity();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.compose(&base, &acc);
            }
            k >>= 1;
            if k > 0 {
                base = self.compose(&base, &base);
            }
        }
        acc
    }

    /// `gamma^0, ..., gamma^count` (inclusive).
    fn gamma_powers(&self, gamma: &ExtElem<S>, count: usize) -> Vec<ExtElem<S>> {
        let mut pows = Vec::with_capacity(count + 1);
        pows.push(self.one());
        for i in 0..count {
            let next = self.mul(&pows[i], gamma);
            pows.push(next);
        }
        pows
    }

    /// `g(alpha_1), ..., g(alpha_s)` with one shared matrix product.
    pub fn multi_apply(&self, g: &Automorphism<S>, alphas: &[ExtElem<S>]) -> Vec<ExtElem<S>> {
        self.multi_apply_with_block(g, alphas, self.block_size())
    }

    pub fn multi_apply_with_block(&self, g: &Automorphism<S>, alphas: &[ExtElem<S>], t: usize) -> Vec<ExtElem<S>> {
        if alphas.is_empty() {
            return Vec::new();
        }
        let n = self.n;
        let t = t.clamp(1, n);
        let chunks = n.div_ceil(t);
        let pows = self.gamma_powers(&g.gamma, t);
        let mut a = Matrix::zeros(alphas.len() * chunks, t);
        for (k, alpha) in alphas.iter().enumerate() {
            for (j, c) in alpha.coeffs.iter().enumerate() {
                if !c.is_zero() {
                    a.set(k * chunks + j / t, j % t, c.clone());
                }
            }
        }
        let gm = Matrix::from_rows(pows[..t].iter().map(|p| p.coeffs.clone()).collect()).expect("rectangular");
        let b = a.mul(&gm).expect("shapes agree");
        let giant = &pows[t];
        (0..alphas.len())
            .map(|k| {
                let mut acc = ExtElem { coeffs: b.row(k * chunks + chunks - 1).to_vec() };
                for j in (0..chunks - 1).rev() {
                    acc = self.mul(&acc, giant);
                    acc = self.add(&acc, &ExtElem { coeffs: b.row(k * chunks + j).to_vec() });
                }
                acc
            })
            .collect()
    }

    /// The form `alpha -> ell(a * alpha)`.
    pub fn transposed_mul(&self, a: &ExtElem<S>, ell: &LinearForm<S>) -> Result<LinearForm<S>> {
        Ok(LinearForm::new(poly::transposed_mul_core(&a.to_poly(), &ell.values, &self.modulus)?))
    }

    /// `ell_1 o g, ..., ell_s o g`.
    pub fn transposed_apply(&self, g: &Automorphism<S>, ells: &[LinearForm<S>]) -> Result<Vec<LinearForm<S>>> {
        self.transposed_apply_with_block(g, ells, self.block_size())
    }

    pub fn transposed_apply_with_block(
        &self,
        g: &Automorphism<S>,
        ells: &[LinearForm<S>],
        t: usize,
    ) -> Result<Vec<LinearForm<S>>> {
        for ell in ells {
            if ell.len() != self.n {
                return Err(Error::LengthMismatch { expected: self.n, found: ell.len() });
            }
        }
        if ells.is_empty() {
            return Ok(Vec::new());
        }
        let n = self.n;
        let t = t.clamp(1, n);
        let chunks = n.div_ceil(t);
        let pows = self.gamma_powers(&g.gamma, t);
        let giant = &pows[t];
        let mut rows = Vec::with_capacity(ells.len() * chunks);
        for ell in ells {
            let mut cur = ell.clone();
            for j in 0..chunks {
                if j > 0 {
                    cur = self.transposed_mul(giant, &cur)?;
                }
                rows.push(cur.values.clone());
            }
        }
        let l = Matrix::from_rows(rows)?;
        let cols = Matrix::from_rows(pows[..t].iter().map(|p| p.coeffs.clone()).collect())?.transpose();
        let vals = l.mul(&cols)?;
        Ok((0..ells.len())
            .map(|k| {
                let mut out = Vec::with_capacity(n);
                for j in 0..chunks {
                    for i in 0..t {
                        if j * t + i < n {
                            out.push(vals.get(k * chunks + j, i).clone());
                        }
                    }
                }
                LinearForm::new(out)
            })
            .collect())
    }
}

pub(crate) fn ceil_sqrt(n: usize) -> usize {
    let mut r = (n as f64).sqrt() as usize;
    while r * r < n {
        r += 1;
    }
    while r > 0 && (r - 1) * (r - 1) >= n {
        r -= 1;
    }
    r.max(1)
}
