//! Iterated automorphism evaluation, its transpose, and the projected orbit
//! sum `s_{alpha,ell} = sum_g ell(g(alpha)) g`.

use crate::error::{Error, Result};
use crate::ext::{Automorphism, ExtElem, ExtensionField, LinearForm};
use crate::galois::GaloisExtension;
use crate::group::GroupAlgebraElem;
use crate::matrix::Matrix;
use crate::scalar::Scalar;

fn box_size(orders: &[usize]) -> usize {
    orders.iter().product()
}

fn check_box<T>(orders: &[usize], gens: usize, items: &[T]) -> Result<()> {
    if orders.len() != gens {
        return Err(Error::LengthMismatch { expected: gens, found: orders.len() });
    }
    if items.len() != box_size(orders) {
        return Err(Error::LengthMismatch { expected: box_size(orders), found: items.len() });
    }
    Ok(())
}

/// Flat indices `i` of a box (first coordinate fastest) whose `t`-th
/// coordinate has bit `m` set.
fn select(orders: &[usize], t: usize, m: u32) -> Vec<usize> {
    let stride: usize = orders[..t].iter().product();
    (0..box_size(orders)).filter(|&i| (((i / stride) % orders[t]) >> m) & 1 == 1).collect()
}

fn bit_length(x: usize) -> u32 {
    usize::BITS - x.leading_zeros()
}

/// `g_r^{i_r} ... g_1^{i_1}(alpha_i)` for every `i` in the box
/// `0 <= i_k < orders[k]`. Seeds are indexed with `i_1` fastest.
///
/// Each exponent is processed bit by bit: all seeds whose `t`-th exponent has
/// bit `m` set go through one [`ExtensionField::multi_apply`] call with
/// `g_t^{2^m}`.
pub fn iterated_eval<S: Scalar>(
    k: &ExtensionField<S>,
    gens: &[Automorphism<S>],
    orders: &[usize],
    seeds: &[ExtElem<S>],
) -> Result<Vec<ExtElem<S>>> {
    check_box(orders, gens.len(), seeds)?;
    let mut vals = seeds.to_vec();
    for (t, g) in gens.iter().enumerate() {
        let bits = bit_length(orders[t].saturating_sub(1));
        let mut h = g.clone();
        for m in 0..bits {
            if m > 0 {
                h = k.compose(&h, &h);
            }
            let idx = select(orders, t, m);
            let batch: Vec<ExtElem<S>> = idx.iter().map(|&i| vals[i].clone()).collect();
            for (i, v) in idx.into_iter().zip(k.multi_apply(&h, &batch)) {
                vals[i] = v;
            }
        }
    }
    Ok(vals)
}

/// `ell_i o g_r^{i_r} ... g_1^{i_1}` for every `i` in the box; the mirror of
/// [`iterated_eval`] with generators taken in reverse order.
pub fn iterated_coeval<S: Scalar>(
    k: &ExtensionField<S>,
    gens: &[Automorphism<S>],
    orders: &[usize],
    forms: &[LinearForm<S>],
) -> Result<Vec<LinearForm<S>>> {
    check_box(orders, gens.len(), forms)?;
    let mut vals = forms.to_vec();
    for (t, g) in gens.iter().enumerate().rev() {
        let bits = bit_length(orders[t].saturating_sub(1));
        let powers: Vec<Automorphism<S>> = std::iter::successors(Some(g.clone()), |h| Some(k.compose(h, h)))
            .take(bits as usize)
            .collect();
        for m in (0..bits).rev() {
            let idx = select(orders, t, m);
            let batch: Vec<LinearForm<S>> = idx.iter().map(|&i| vals[i].clone()).collect();
            for (i, v) in idx.into_iter().zip(k.transposed_apply(&powers[m as usize], &batch)?) {
                vals[i] = v;
            }
        }
    }
    Ok(vals)
}

/// Baby-step/giant-step split of the normal-form index box.
///
/// With `z` the first level where `(e_1 ... e_z)^2 >= n`, every exponent
/// `i_z` is written `s_z j_z + i'_z`. The baby box runs over
/// `(i_1, ..., i_{z-1}, i'_z)` and the giant box over `(j_z, i_{z+1}, ..., i_r)`
/// with `g_z^{s_z}` as its first generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPlan {
    orders: Vec<usize>,
    /// 0-based split level.
    pub z: usize,
    pub s_z: usize,
    pub baby_orders: Vec<usize>,
    pub giant_orders: Vec<usize>,
}

impl OrbitPlan {
    pub fn new(orders: &[usize]) -> Self {
        let n: usize = orders.iter().product();
        let mut prefix = 1usize;
        let mut z = 0;
        while z + 1 < orders.len() && (prefix * orders[z]).pow(2) < n {
            prefix *= orders[z];
            z += 1;
        }
        let s_z = (1..=orders[z]).find(|s| (s * prefix).pow(2) >= n).unwrap_or(orders[z]);
        let mut baby_orders = orders[..z].to_vec();
        baby_orders.push(s_z);
        let mut giant_orders = vec![orders[z].div_ceil(s_z)];
        giant_orders.extend_from_slice(&orders[z + 1..]);
        let plan = OrbitPlan { orders: orders.to_vec(), z, s_z, baby_orders, giant_orders };
        assert!(plan.baby_size().pow(2) <= 4 * n, "baby box exceeds 2 sqrt(n)");
        assert!(plan.giant_size().pow(2) <= 4 * n, "giant box exceeds 2 sqrt(n)");
        plan
    }

    pub fn baby_size(&self) -> usize {
        box_size(&self.baby_orders)
    }

    pub fn giant_size(&self) -> usize {
        box_size(&self.giant_orders)
    }

    /// Flat group index of the pair (baby `b`, giant `g`), `None` when the
    /// combined exponent `i_z` overshoots `e_z`.
    pub fn full_index(&self, b: usize, g: usize) -> Option<usize> {
        let prefix: usize = self.orders[..self.z].iter().product();
        let (low, i_prime) = (b % prefix, b / prefix);
        let giant_z = self.giant_orders[0];
        let (j_z, high) = (g % giant_z, g / giant_z);
        let i_z = self.s_z * j_z + i_prime;
        let e_z = self.orders[self.z];
        (i_z < e_z).then(|| low + prefix * (i_z + e_z * high))
    }

    pub fn baby_gens<S: Scalar>(&self, ext: &GaloisExtension<S>) -> Vec<Automorphism<S>> {
        ext.generators()[..=self.z].to_vec()
    }

    pub fn giant_gens<S: Scalar>(&self, ext: &GaloisExtension<S>) -> Vec<Automorphism<S>> {
        let gens = ext.generators();
        let mut out = vec![ext.field().aut_pow(&gens[self.z], self.s_z as u64)];
        out.extend_from_slice(&gens[self.z + 1..]);
        out
    }

    /// The baby orbit `g_z^{i'_z} ... g_1^{i_1}(alpha)`.
    pub fn baby_orbit<S: Scalar>(&self, ext: &GaloisExtension<S>, alpha: &ExtElem<S>) -> Result<Vec<ExtElem<S>>> {
        let seeds = vec![alpha.clone(); self.baby_size()];
        iterated_eval(ext.field(), &self.baby_gens(ext), &self.baby_orders, &seeds)
    }
}

fn check_inputs<S: Scalar>(ext: &GaloisExtension<S>, alpha: &ExtElem<S>, ell: &LinearForm<S>) -> Result<()> {
    let n = ext.degree();
    if alpha.coeffs().len() != n {
        return Err(Error::LengthMismatch { expected: n, found: alpha.coeffs().len() });
    }
    if ell.len() != n {
        return Err(Error::LengthMismatch { expected: n, found: ell.len() });
    }
    Ok(())
}

/// `s_{alpha,ell}` through the baby-step/giant-step split: baby orbit,
/// giant co-orbit of `ell`, then one matrix product.
pub fn project_orbit_sum<S: Scalar>(
    ext: &GaloisExtension<S>,
    alpha: &ExtElem<S>,
    ell: &LinearForm<S>,
) -> Result<GroupAlgebraElem<S>> {
    check_inputs(ext, alpha, ell)?;
    let n = ext.degree();
    let plan = OrbitPlan::new(ext.presentation().orders());
    let baby = plan.baby_orbit(ext, alpha)?;
    let forms = vec![ell.clone(); plan.giant_size()];
    let giant = iterated_coeval(ext.field(), &plan.giant_gens(ext), &plan.giant_orders, &forms)?;
    let lm = Matrix::from_rows(giant.into_iter().map(|f| f.values().to_vec()).collect())?;
    let bm = Matrix::from_rows(baby.into_iter().map(ExtElem::into_coeffs).collect())?.transpose();
    let vals = lm.mul(&bm)?;
    let mut out = vec![S::zero(); n];
    for g in 0..plan.giant_size() {
        for b in 0..plan.baby_size() {
            if let Some(idx) = plan.full_index(b, g) {
                out[idx] = vals.get(g, b).clone();
            }
        }
    }
    Ok(GroupAlgebraElem::new(out))
}

/// `s_{alpha,ell}` by applying every group element separately.
pub fn brute_orbit_sum<S: Scalar>(
    ext: &GaloisExtension<S>,
    alpha: &ExtElem<S>,
    ell: &LinearForm<S>,
) -> Result<GroupAlgebraElem<S>> {
    check_inputs(ext, alpha, ell)?;
    let k = ext.field();
    Ok(GroupAlgebraElem::new(
        ext.all_automorphisms().iter().map(|g| ell.apply(&k.apply_aut(g, alpha))).collect(),
    ))
}

/// Dispatches to [`brute_orbit_sum`] below `threshold` and to
/// [`project_orbit_sum`] otherwise.
pub fn orbit_sum<S: Scalar>(
    ext: &GaloisExtension<S>,
    alpha: &ExtElem<S>,
    ell: &LinearForm<S>,
    threshold: usize,
) -> Result<GroupAlgebraElem<S>> {
    if ext.degree() < threshold {
        brute_orbit_sum(ext, alpha, ell)
    } else {
        project_orbit_sum(ext, alpha, ell)
    }
}
