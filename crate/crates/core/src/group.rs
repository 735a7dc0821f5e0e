//! Polycyclic presentations, normal-form group elements and the group
//! algebra `F[G]`.
//!
//! An element is an exponent tuple `(i_1, ..., i_r)` with `0 <= i_k < e_k`
//! denoting `g_r^{i_r} ... g_1^{i_1}`. For metacyclic groups `g_1 = sigma`
//! and `g_2 = tau`, so `(i, j)` is `tau^j sigma^i`. Elements are enumerated
//! lexicographically on `(i_r, ..., i_1)`: the flat index is
//! `i_1 + e_1 * (i_2 + e_2 * (...))`.

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupKind {
    Abelian,
    /// `<sigma, tau | sigma^m = 1, tau^s = sigma^t, tau^-1 sigma tau = sigma^u>`.
    Metacyclic { m: usize, s: usize, t: usize, u: usize },
    /// Relative orders only; no group law is available.
    Polycyclic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    orders: Vec<usize>,
    strides: Vec<usize>,
    kind: GroupKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    exps: Vec<usize>,
}

impl GroupElement {
    pub fn new(exps: Vec<usize>) -> Self {
        GroupElement { exps }
    }

    pub fn exps(&self) -> &[usize] {
        &self.exps
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        crate::ext::write_list(f, &self.exps)?;
        write!(f, ")")
    }
}

fn pow_mod(base: usize, mut e: usize, m: usize) -> usize {
    let mut acc = 1 % m;
    let mut b = base % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

impl Presentation {
    fn build(orders: Vec<usize>, kind: GroupKind) -> Result<Self> {
        if orders.is_empty() {
            return Err(Error::InvalidPresentation("at least one generator is required".into()));
        }
        if let Some(k) = orders.iter().position(|&e| e < 2) {
            return Err(Error::InvalidPresentation(format!("relative order e_{} must be at least 2", k + 1)));
        }
        let mut strides = Vec::with_capacity(orders.len());
        let mut acc = 1usize;
        for &e in &orders {
            strides.push(acc);
            acc = acc
                .checked_mul(e)
                .ok_or_else(|| Error::InvalidPresentation("group order overflows".into()))?;
        }
        Ok(Presentation { orders, strides, kind })
    }

    pub fn abelian(orders: Vec<usize>) -> Result<Self> {
        Self::build(orders, GroupKind::Abelian)
    }

    pub fn polycyclic(orders: Vec<usize>) -> Result<Self> {
        Self::build(orders, GroupKind::Polycyclic)
    }

    /// Metacyclic presentation; checks `u, t <= m`, `gcd(u, m) = 1`,
    /// `u^s = 1 mod m`, `u^s = 1 mod t` and `u t = t mod m`.
    pub fn metacyclic(m: usize, s: usize, t: usize, u: usize) -> Result<Self> {
        if m < 2 || s < 2 {
            return Err(Error::InvalidPresentation("m and s must be at least 2".into()));
        }
        if t == 0 || t > m || u == 0 || u > m {
            return Err(Error::InvalidPresentation("need 1 <= t <= m and 1 <= u <= m".into()));
        }
        let u = u % m;
        if u.gcd(&m) != 1 {
            return Err(Error::RelationViolated("gcd(u, m) = 1".into()));
        }
        if pow_mod(u, s, t) != 1 % t {
            return Err(Error::RelationViolated("u^s = 1 mod t".into()));
        }
        if pow_mod(u, s, m) != 1 {
            return Err(Error::RelationViolated("u^s = 1 mod m".into()));
        }
        if (u * t) % m != t % m {
            return Err(Error::RelationViolated("u*t = t mod m".into()));
        }
        Self::build(vec![m, s], GroupKind::Metacyclic { m, s, t: t % m, u })
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn orders(&self) -> &[usize] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    /// Group order `n = e_1 ... e_r`.
    pub fn size(&self) -> usize {
        self.strides[self.rank() - 1] * self.orders[self.rank() - 1]
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement { exps: vec![0; self.rank()] }
    }

    /// `g_k` (0-based `k`).
    pub fn generator(&self, k: usize) -> GroupElement {
        let mut e = self.identity();
        e.exps[k] = 1;
        e
    }

    pub fn index(&self, g: &GroupElement) -> usize {
        g.exps.iter().zip(&self.strides).map(|(i, s)| i * s).sum()
    }

    pub fn element(&self, mut idx: usize) -> GroupElement {
        let exps = self
            .orders
            .iter()
            .map(|&e| {
                let i = idx % e;
                idx /= e;
                i
            })
            .collect();
        GroupElement { exps }
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.size()).map(|i| self.element(i))
    }

    pub fn is_valid(&self, g: &GroupElement) -> bool {
        g.exps.len() == self.rank() && g.exps.iter().zip(&self.orders).all(|(i, e)| i < e)
    }

    /// Normal form of `a * b`.
    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        match self.kind {
            GroupKind::Abelian => Ok(GroupElement {
                exps: a.exps.iter().zip(&b.exps).zip(&self.orders).map(|((x, y), e)| (x + y) % e).collect(),
            }),
            GroupKind::Metacyclic { m, s, t, u } => {
                let (i1, j1) = (a.exps[0], a.exps[1]);
                let (i2, j2) = (b.exps[0], b.exps[1]);
                // tau^j1 sigma^i1 tau^j2 sigma^i2 = tau^(j1+j2) sigma^(i1 u^j2 + i2)
                let fold = if j1 + j2 >= s { t } else { 0 };
                let i = (i1 * pow_mod(u, j2, m) + i2 + fold) % m;
                Ok(GroupElement { exps: vec![i, (j1 + j2) % s] })
            }
            GroupKind::Polycyclic => Err(self.unsupported()),
        }
    }

    pub fn inv(&self, a: &GroupElement) -> Result<GroupElement> {
        match self.kind {
            GroupKind::Abelian => Ok(GroupElement {
                exps: a.exps.iter().zip(&self.orders).map(|(x, e)| (e - x) % e).collect(),
            }),
            GroupKind::Metacyclic { m, s, t, u } => {
                let (i, j) = (a.exps[0], a.exps[1]);
                let jp = (s - j) % s;
                let fold = if j + jp >= s { t } else { 0 };
                let v = (i * pow_mod(u, jp, m) + fold) % m;
                Ok(GroupElement { exps: vec![(m - v) % m, jp] })
            }
            GroupKind::Polycyclic => Err(self.unsupported()),
        }
    }

    /// `sigma^i tau^j` rewritten in the normal form `tau^j sigma^(i u^j)`.
    pub fn sigma_tau(&self, i: usize, j: usize) -> Result<GroupElement> {
        match self.kind {
            GroupKind::Metacyclic { m, u, .. } => Ok(GroupElement { exps: vec![i * pow_mod(u, j, m) % m, j] }),
            _ => Err(Error::Unsupported("sigma/tau normal form needs a metacyclic presentation".into())),
        }
    }

    fn unsupported(&self) -> Error {
        Error::Unsupported("group law is only available for abelian and metacyclic presentations".into())
    }

    /// Flat-index multiplication table, `table[i * n + j] = index(g_i g_j)`.
    pub fn mul_table(&self) -> Result<Vec<usize>> {
        let elems: Vec<GroupElement> = self.elements().collect();
        let mut table = Vec::with_capacity(elems.len() * elems.len());
        for a in &elems {
            for b in &elems {
                table.push(self.index(&self.mul(a, b)?));
            }
        }
        Ok(table)
    }

    /// `inverse[i] = index(g_i^-1)`.
    pub fn inverse_table(&self) -> Result<Vec<usize>> {
        self.elements().map(|g| Ok(self.index(&self.inv(&g)?))).collect()
    }
}

/// Element of `F[G]`, dense over the enumeration of `G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlgebraElem<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> GroupAlgebraElem<S> {
    pub fn new(coeffs: Vec<S>) -> Self {
        GroupAlgebraElem { coeffs }
    }

    pub fn from_i64(values: &[i64]) -> Self {
        Self::new(values.iter().map(|&v| S::from_i64(v)).collect())
    }

    pub fn zero(n: usize) -> Self {
        Self::new(vec![S::zero(); n])
    }

    /// The basis element `delta_g` for the flat index `idx`.
    pub fn delta(n: usize, idx: usize) -> Self {
        let mut e = Self::zero(n);
        e.coeffs[idx] = S::one();
        e
    }

    pub fn one(n: usize) -> Self {
        Self::delta(n, 0)
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(S::is_zero)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self::new(self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.add(b)).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self::new(self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.sub(b)).collect())
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }
}

impl<S: Scalar> fmt::Display for GroupAlgebraElem<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::ext::write_list(f, &self.coeffs)
    }
}

fn check_len<S>(gp: &Presentation, a: &GroupAlgebraElem<S>) -> Result<()> {
    if a.coeffs.len() != gp.size() {
        return Err(Error::LengthMismatch { expected: gp.size(), found: a.coeffs.len() });
    }
    Ok(())
}

/// Schoolbook product in `F[G]`.
pub fn ga_mul<S: Scalar>(gp: &Presentation, a: &GroupAlgebraElem<S>, b: &GroupAlgebraElem<S>) -> Result<GroupAlgebraElem<S>> {
    check_len(gp, a)?;
    check_len(gp, b)?;
    let n = gp.size();
    let mut out = vec![S::zero(); n];
    for (i, x) in a.coeffs.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let gi = gp.element(i);
        for (j, y) in b.coeffs.iter().enumerate() {
            if !y.is_zero() {
                let k = gp.index(&gp.mul(&gi, &gp.element(j))?);
                out[k].add_mul(x, y);
            }
        }
    }
    Ok(GroupAlgebraElem::new(out))
}

/// Multiplication matrix of `beta`: rows indexed by `g_i`, columns by the
/// labels `g_j^-1`, entry `(i, j) = beta_{g_i g_j}`. It maps
/// [`column_coords`] of `eta` to the coordinates of `beta * eta`.
pub fn mult_matrix<S: Scalar>(gp: &Presentation, beta: &GroupAlgebraElem<S>) -> Result<Matrix<S>> {
    check_len(gp, beta)?;
    let n = gp.size();
    let table = gp.mul_table()?;
    let data = table.iter().map(|&k| beta.coeffs[k].clone()).collect();
    Matrix::new(n, n, data)
}

/// `v_j = eta_{g_j^-1}`, the input layout of [`mult_matrix`].
pub fn column_coords<S: Scalar>(gp: &Presentation, eta: &GroupAlgebraElem<S>) -> Result<Vec<S>> {
    check_len(gp, eta)?;
    Ok(gp.inverse_table()?.iter().map(|&k| eta.coeffs[k].clone()).collect())
}

/// Inverse of [`column_coords`].
pub fn from_column_coords<S: Scalar>(gp: &Presentation, v: &[S]) -> Result<GroupAlgebraElem<S>> {
    let inv = gp.inverse_table()?;
    if v.len() != inv.len() {
        return Err(Error::LengthMismatch { expected: inv.len(), found: v.len() });
    }
    let mut out = vec![S::zero(); inv.len()];
    for (j, &k) in inv.iter().enumerate() {
        out[k] = v[j].clone();
    }
    Ok(GroupAlgebraElem::new(out))
}
