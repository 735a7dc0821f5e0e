//! Metacyclic group algebras: the block-Hankel multiplication matrix,
//! unit testing and division.
//!
//! With `G = <sigma, tau>` of orders `m` and `s`, left multiplication by
//! `beta` in suitable row and column orders is an `outer x outer` grid of
//! `inner x inner` Hankel blocks:
//!
//! * [`Ordering::TauOuter`]: rows `tau^u sigma^a`, column labels
//!   `(sigma^b tau^v)^-1`, entry `beta` at `tau^u sigma^(a+b) tau^v`
//!   (`outer = s`, `inner = m`);
//! * [`Ordering::SigmaOuter`]: rows `sigma^a tau^u`, column labels
//!   `(tau^j sigma^i)^-1`, entry `beta` at `sigma^a tau^(u+j) sigma^i`
//!   (`outer = m`, `inner = s`).

use crate::error::{Error, Result};
use crate::group::{GroupAlgebraElem, GroupElement, GroupKind, Presentation};
use crate::matrix::{Matrix, Solution};
use crate::poly;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ordering {
    SigmaOuter,
    TauOuter,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HankelBlockMatrix<S> {
    pub ordering: Ordering,
    pub outer: usize,
    pub inner: usize,
    /// `blocks[u * outer + v][l]`: value on anti-diagonal `l` of block `(u, v)`.
    pub blocks: Vec<Vec<S>>,
    /// Group index of the element labelling each dense row.
    pub row_elems: Vec<usize>,
    /// Group index of `h` for each dense column (the column label is `h^-1`).
    pub col_elems: Vec<usize>,
}

fn params(gp: &Presentation) -> Result<(usize, usize)> {
    match gp.kind() {
        GroupKind::Metacyclic { m, s, .. } => Ok((m, s)),
        _ => Err(Error::Unsupported("block-Hankel structure needs a metacyclic presentation".into())),
    }
}

fn power(gp: &Presentation, g: &GroupElement, k: usize) -> Result<GroupElement> {
    let mut acc = gp.identity();
    for _ in 0..k {
        acc = gp.mul(&acc, g)?;
    }
    Ok(acc)
}

/// The ordering with fewer blocks per side (ties go to `TauOuter`).
pub fn preferred_ordering(gp: &Presentation) -> Result<Ordering> {
    let (m, s) = params(gp)?;
    Ok(if s <= m { Ordering::TauOuter } else { Ordering::SigmaOuter })
}

pub fn build_hankel<S: Scalar>(
    gp: &Presentation,
    beta: &GroupAlgebraElem<S>,
    ordering: Ordering,
) -> Result<HankelBlockMatrix<S>> {
    let (m, s) = params(gp)?;
    if beta.len() != gp.size() {
        return Err(Error::LengthMismatch { expected: gp.size(), found: beta.len() });
    }
    let sigma = gp.generator(0);
    let tau = gp.generator(1);
    let (outer, inner) = match ordering {
        Ordering::TauOuter => (s, m),
        Ordering::SigmaOuter => (m, s),
    };
    let mut blocks = Vec::with_capacity(outer * outer);
    for u in 0..outer {
        for v in 0..outer {
            let mut diag = Vec::with_capacity(2 * inner - 1);
            for l in 0..2 * inner - 1 {
                let g = match ordering {
                    Ordering::TauOuter => {
                        let left = gp.mul(&power(gp, &tau, u)?, &power(gp, &sigma, l % m)?)?;
                        gp.mul(&left, &power(gp, &tau, v)?)?
                    }
                    Ordering::SigmaOuter => {
                        let left = gp.mul(&power(gp, &sigma, u)?, &power(gp, &tau, l)?)?;
                        gp.mul(&left, &power(gp, &sigma, v)?)?
                    }
                };
                diag.push(beta.coeffs()[gp.index(&g)].clone());
            }
            blocks.push(diag);
        }
    }
    let mut row_elems = Vec::with_capacity(gp.size());
    let mut col_elems = Vec::with_capacity(gp.size());
    for u in 0..outer {
        for a in 0..inner {
            let (row, col) = match ordering {
                Ordering::TauOuter => (GroupElement::new(vec![a, u]), gp.sigma_tau(a, u)?),
                Ordering::SigmaOuter => (gp.sigma_tau(u, a)?, GroupElement::new(vec![u, a])),
            };
            row_elems.push(gp.index(&row));
            col_elems.push(gp.index(&col));
        }
    }
    Ok(HankelBlockMatrix { ordering, outer, inner, blocks, row_elems, col_elems })
}

impl<S: Scalar> HankelBlockMatrix<S> {
    pub fn size(&self) -> usize {
        self.outer * self.inner
    }

    pub fn to_dense(&self) -> Matrix<S> {
        let n = self.size();
        let mut out = Matrix::zeros(n, n);
        for u in 0..self.outer {
            for v in 0..self.outer {
                let diag = &self.blocks[u * self.outer + v];
                for a in 0..self.inner {
                    for b in 0..self.inner {
                        out.set(u * self.inner + a, v * self.inner + b, diag[a + b].clone());
                    }
                }
            }
        }
        out
    }

    /// Product with a vector, one polynomial multiplication per block.
    pub fn matvec(&self, v: &[S]) -> Result<Vec<S>> {
        let n = self.size();
        if v.len() != n {
            return Err(Error::LengthMismatch { expected: n, found: v.len() });
        }
        let k = self.inner;
        let mut out = vec![S::zero(); n];
        for vb in 0..self.outer {
            let rev: Vec<S> = v[vb * k..(vb + 1) * k].iter().rev().cloned().collect();
            if rev.iter().all(S::is_zero) {
                continue;
            }
            for ub in 0..self.outer {
                let prod = poly::mul_slices(&self.blocks[ub * self.outer + vb], &rev);
                for (a, y) in out[ub * k..(ub + 1) * k].iter_mut().enumerate() {
                    *y = y.add(&prod[a + k - 1]);
                }
            }
        }
        Ok(out)
    }

    /// Right-hand side layout: `y_r = eta_{row_elems[r]}`.
    pub fn rhs(&self, eta: &GroupAlgebraElem<S>) -> Vec<S> {
        self.row_elems.iter().map(|&i| eta.coeffs()[i].clone()).collect()
    }

    /// Reads a solution `x` back into `F[G]`: `zeta_{h^-1} = x_c` for
    /// `h = col_elems[c]`.
    pub fn read_solution(&self, gp: &Presentation, x: &[S]) -> Result<GroupAlgebraElem<S>> {
        let mut out = vec![S::zero(); gp.size()];
        for (c, &h) in self.col_elems.iter().enumerate() {
            out[gp.index(&gp.inv(&gp.element(h))?)] = x[c].clone();
        }
        Ok(GroupAlgebraElem::new(out))
    }

    /// Coordinates `x` with `self * x` the coordinates of `beta * zeta`.
    pub fn input_coords(&self, gp: &Presentation, zeta: &GroupAlgebraElem<S>) -> Result<Vec<S>> {
        self.col_elems
            .iter()
            .map(|&h| Ok(zeta.coeffs()[gp.index(&gp.inv(&gp.element(h))?)].clone()))
            .collect()
    }
}

pub fn is_unit_metacyclic<S: Scalar>(gp: &Presentation, beta: &GroupAlgebraElem<S>) -> Result<bool> {
    let h = build_hankel(gp, beta, preferred_ordering(gp)?)?;
    Ok(h.to_dense().rank() == h.size())
}

/// `zeta` with `beta * zeta = eta`, by exact elimination on the dense
/// expansion of the block-Hankel matrix.
pub fn divide_metacyclic<S: Scalar>(
    gp: &Presentation,
    beta: &GroupAlgebraElem<S>,
    eta: &GroupAlgebraElem<S>,
) -> Result<GroupAlgebraElem<S>> {
    if eta.len() != gp.size() {
        return Err(Error::LengthMismatch { expected: gp.size(), found: eta.len() });
    }
    let h = build_hankel(gp, beta, preferred_ordering(gp)?)?;
    match h.to_dense().solve(&h.rhs(eta))? {
        Solution::Unique(x) => h.read_solution(gp, &x),
        Solution::Singular(_) => Err(Error::SingularMultiplication),
    }
}

/// A nonzero `zeta` with `beta * zeta = 0` when `beta` is not a unit.
pub fn kernel_metacyclic<S: Scalar>(gp: &Presentation, beta: &GroupAlgebraElem<S>) -> Result<Option<GroupAlgebraElem<S>>> {
    let h = build_hankel(gp, beta, preferred_ordering(gp)?)?;
    match h.to_dense().kernel_vector() {
        Some(x) => Ok(Some(h.read_solution(gp, &x)?)),
        None => Ok(None),
    }
}
