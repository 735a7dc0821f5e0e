//! Abelian group algebras as products of cyclotomic residue rings.
//!
//! For an abelian `G` the algebra `F[G]` is isomorphic to a product of
//! `F[z]/<Phi_d(z)>`. [`AbelianDecomposition`] records the chain of maps
//! realizing that isomorphism:
//!
//! 1. composite generator orders are split into prime powers by CRT on
//!    exponents;
//! 2. each variable `y` of order `p^b` is split along
//!    `y^{p^b} - 1 = Phi_1 Phi_p ... Phi_{p^b}`;
//! 3. inside one prime, variables of smaller level are evaluated at powers of
//!    the variable of largest level ([`SamePrimeSplit`]);
//! 4. the remaining one variable per prime is merged across primes
//!    ([`CoprimeMerge`]).
//!
//! Units are then detected and inverted componentwise with extended gcds.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::group::{GroupAlgebraElem, GroupKind, Presentation};
use crate::poly::{self, Poly};
use crate::scalar::Scalar;

/// Prime factorization by trial division, primes ascending.
pub fn factorize(mut n: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Euler's totient.
pub fn totient(n: usize) -> usize {
    factorize(n).iter().fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

fn cyclotomic_int(d: usize) -> Vec<i64> {
    static MEMO: OnceLock<Mutex<HashMap<usize, Vec<i64>>>> = OnceLock::new();
    let memo = MEMO.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(c) = memo.lock().expect("cyclotomic memo").get(&d) {
        return c.clone();
    }
    let mut num = vec![0i128; d + 1];
    num[0] = -1;
    num[d] = 1;
    for e in (1..d).filter(|e| d.is_multiple_of(*e)) {
        let div = cyclotomic_int(e);
        let dd = div.len() - 1;
        let mut q = vec![0i128; num.len() - dd];
        for k in (0..q.len()).rev() {
            let c = num[k + dd];
            q[k] = c;
            for (i, &b) in div.iter().enumerate() {
                num[k + i] -= c * b as i128;
            }
        }
        debug_assert!(num[..dd].iter().all(|&r| r == 0));
        num = q;
    }
    let out: Vec<i64> = num.into_iter().map(|c| i64::try_from(c).expect("coefficient fits")).collect();
    memo.lock().expect("cyclotomic memo").insert(d, out.clone());
    out
}

/// The cyclotomic polynomial `Phi_d`, computed as `(x^d - 1)` divided by
/// `Phi_e` for the proper divisors `e` of `d` (memoized).
pub fn cyclotomic<S: Scalar>(d: usize) -> Poly<S> {
    assert!(d >= 1, "cyclotomic order must be positive");
    Poly::from_i64(&cyclotomic_int(d))
}

/// A factor `F[z]/<Phi_d(z)>` of the decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicFactor<S> {
    pub order: usize,
    pub phi: Poly<S>,
}

impl<S: Scalar> CyclotomicFactor<S> {
    pub fn new(order: usize) -> Self {
        CyclotomicFactor { order, phi: cyclotomic(order) }
    }

    pub fn dim(&self) -> usize {
        totient(self.order)
    }
}

fn reduce_dense<S: Scalar>(coeffs: Vec<S>, modulus: &Poly<S>) -> Vec<S> {
    let d = modulus.degree().expect("nonzero modulus");
    let p = Poly::new(coeffs);
    let r = if p.coeffs().len() > d { p.rem(modulus).expect("nonzero modulus") } else { p };
    r.to_dense(d)
}

/// `a * b mod m` on dense coefficient vectors of length `deg m`.
fn mulmod<S: Scalar>(a: &[S], b: &[S], m: &Poly<S>) -> Vec<S> {
    reduce_dense(poly::mul_slices(a, b), m)
}

/// `F[x, x']/<Phi_m(x), Phi_m'(x')> -> F[z]/<Phi_{mm'}(z)>` for coprime
/// `m, m'`, sending `x x'` to `z`.
///
/// With `a m + a' m' = 1` the images are `x -> z^{a'm'}` and
/// `x' -> z^{am}`; both relations are checked at construction.
#[derive(Clone, Debug)]
pub struct CoprimeMerge<S> {
    pub m: usize,
    pub mp: usize,
    /// Exponents of `z` assigned to `x` and `x'`.
    pub images: (usize, usize),
    phi_m: Poly<S>,
    phi_mp: Poly<S>,
    phi: Poly<S>,
}

impl<S: Scalar> CoprimeMerge<S> {
    pub fn new(m: usize, mp: usize) -> Result<Self> {
        if m.gcd(&mp) != 1 {
            return Err(Error::InvalidPresentation(format!("orders {m} and {mp} are not coprime")));
        }
        let mm = m * mp;
        let g = (m as i64).extended_gcd(&(mp as i64));
        let (a, ap) = (g.x, g.y);
        let ex = (ap * mp as i64).rem_euclid(mm as i64) as usize;
        let exp = (a * m as i64).rem_euclid(mm as i64) as usize;
        let merge = CoprimeMerge {
            m,
            mp,
            images: (ex, exp),
            phi_m: cyclotomic(m),
            phi_mp: cyclotomic(mp),
            phi: cyclotomic(mm),
        };
        assert_eq!(ex * m % mm, 0, "image of x must have order dividing m");
        assert!(merge.substitute(&merge.phi_m, ex).iter().all(S::is_zero), "Phi_m(gamma(x)) = 0");
        assert!(merge.substitute(&merge.phi_mp, exp).iter().all(S::is_zero), "Phi_m'(gamma(x')) = 0");
        Ok(merge)
    }

    /// `f(z^e) mod Phi_{mm'}`.
    fn substitute(&self, f: &Poly<S>, e: usize) -> Vec<S> {
        let mm = self.m * self.mp;
        let mut acc = vec![S::zero(); mm];
        for (k, c) in f.coeffs().iter().enumerate() {
            let i = k * e % mm;
            acc[i] = acc[i].add(c);
        }
        reduce_dense(acc, &self.phi)
    }

    pub fn input_dims(&self) -> (usize, usize) {
        (totient(self.m), totient(self.mp))
    }

    pub fn output_dim(&self) -> usize {
        totient(self.m * self.mp)
    }

    /// `block[a + phi(m) b]` is the coefficient of `x^a x'^b`.
    pub fn forward(&self, block: &[S]) -> Vec<S> {
        let mm = self.m * self.mp;
        let (dm, _) = self.input_dims();
        let mut acc = vec![S::zero(); mm];
        for (idx, c) in block.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (a, b) = (idx % dm, idx / dm);
            let e = (a * self.images.0 + b * self.images.1) % mm;
            acc[e] = acc[e].add(c);
        }
        reduce_dense(acc, &self.phi)
    }

    /// Replaces `z^k` by `x^{k mod m} x'^{k mod m'}` and reduces.
    pub fn backward(&self, r: &[S]) -> Vec<S> {
        let (dm, dmp) = self.input_dims();
        let mut grid = vec![vec![S::zero(); self.m]; self.mp];
        for (k, c) in r.iter().enumerate() {
            let cell = &mut grid[k % self.mp][k % self.m];
            *cell = cell.add(c);
        }
        let rows: Vec<Vec<S>> = grid.into_iter().map(|row| reduce_dense(row, &self.phi_m)).collect();
        let mut out = vec![S::zero(); dm * dmp];
        for a in 0..dm {
            let col: Vec<S> = rows.iter().map(|row| row[a].clone()).collect();
            for (b, c) in reduce_dense(col, &self.phi_mp).into_iter().enumerate() {
                out[a + dm * b] = c;
            }
        }
        out
    }
}

/// `A[y]/<Phi_{p^c'}(y)> -> A^{phi(p^c')}` with `A = F[x]/<Phi_{p^c}(x)>`,
/// `c >= c' >= 1`, evaluating `y` at `rho_i = x^{i p^{c-c'}}` for the `i`
/// prime to `p`. The inverse is Lagrange interpolation over `A`.
#[derive(Clone, Debug)]
pub struct SamePrimeSplit<S> {
    pub p: usize,
    pub c: usize,
    pub cy: usize,
    /// Exponents `i p^{c-c'}` of the evaluation points.
    pub roots: Vec<usize>,
    phi: Poly<S>,
    /// `weights[r][k]`: coefficient of `y^k` in `N_r(y) / N_r(rho_r)`.
    weights: Vec<Vec<Vec<S>>>,
}

impl<S: Scalar> SamePrimeSplit<S> {
    pub fn new(p: usize, c: usize, cy: usize) -> Result<Self> {
        if cy == 0 || cy > c {
            return Err(Error::Interpolation(format!("need 1 <= c' <= c, got c = {c}, c' = {cy}")));
        }
        let big = p.pow(c as u32);
        let small = p.pow(cy as u32);
        let step = p.pow((c - cy) as u32);
        let roots: Vec<usize> = (1..small).filter(|i| i % p != 0).map(|i| i * step).collect();
        let phi: Poly<S> = cyclotomic(big);
        let d = totient(big);
        let phi_y: Poly<S> = cyclotomic(small);
        let k = totient(small);
        let monomial = |e: usize| {
            let mut v = vec![S::zero(); big];
            v[e % big] = S::one();
            reduce_dense(v, &phi)
        };
        let embed = |s: &S| {
            let mut v = vec![S::zero(); d];
            v[0] = s.clone();
            v
        };
        let mut weights = Vec::with_capacity(roots.len());
        for &e in &roots {
            let rho = monomial(e);
            // synthetic division of Phi_{p^c'}(y) by (y - rho)
            let mut q = vec![vec![S::zero(); d]; k];
            q[k - 1] = embed(&phi_y.coeff(k));
            for j in (1..k).rev() {
                let t = mulmod(&rho, &q[j], &phi);
                q[j - 1] = t.iter().zip(embed(&phi_y.coeff(j))).map(|(a, b)| a.add(&b)).collect();
            }
            let rem = mulmod(&rho, &q[0], &phi);
            let rem: Vec<S> = rem.iter().zip(embed(&phi_y.coeff(0))).map(|(a, b)| a.add(&b)).collect();
            if rem.iter().any(|x| !x.is_zero()) {
                return Err(Error::Interpolation(format!("x^{e} is not a root of Phi_{small}")));
            }
            let mut at_rho = vec![S::zero(); d];
            for coef in q.iter().rev() {
                at_rho = mulmod(&at_rho, &rho, &phi);
                at_rho = at_rho.iter().zip(coef).map(|(a, b)| a.add(b)).collect();
            }
            let w = Poly::new(at_rho)
                .inv_mod(&phi)?
                .ok_or_else(|| Error::Interpolation(format!("Vandermonde node x^{e} is degenerate")))?
                .to_dense(d);
            weights.push(q.iter().map(|qj| mulmod(qj, &w, &phi)).collect());
        }
        Ok(SamePrimeSplit { p, c, cy, roots, phi, weights })
    }

    /// `(phi(p^c), phi(p^c'))`.
    pub fn dims(&self) -> (usize, usize) {
        (totient(self.p.pow(self.c as u32)), self.roots.len())
    }

    /// `block[l + D k]` is the `x^l y^k` coefficient; the output holds the
    /// value at `rho_r` in `out[l + D r]`.
    pub fn forward(&self, block: &[S]) -> Vec<S> {
        let (d, k) = self.dims();
        let big = self.p.pow(self.c as u32);
        let mut out = Vec::with_capacity(d * k);
        for &e in &self.roots {
            let mut acc = vec![S::zero(); big];
            for j in 0..k {
                let shift = j * e;
                for l in 0..d {
                    let c = &block[l + d * j];
                    if !c.is_zero() {
                        let i = (l + shift) % big;
                        acc[i] = acc[i].add(c);
                    }
                }
            }
            out.extend(reduce_dense(acc, &self.phi));
        }
        out
    }

    pub fn backward(&self, values: &[S]) -> Vec<S> {
        let (d, k) = self.dims();
        let mut out = vec![S::zero(); d * k];
        for (r, w) in self.weights.iter().enumerate() {
            let v = &values[d * r..d * (r + 1)];
            if v.iter().all(S::is_zero) {
                continue;
            }
            for (j, wj) in w.iter().enumerate() {
                for (l, c) in mulmod(v, wj, &self.phi).into_iter().enumerate() {
                    out[l + d * j] = out[l + d * j].add(&c);
                }
            }
        }
        out
    }
}

/// Dense tensor, axis 0 varying fastest.
#[derive(Clone, Debug)]
struct Tensor<S> {
    dims: Vec<usize>,
    data: Vec<S>,
}

fn strides(dims: &[usize]) -> Vec<usize> {
    let mut s = Vec::with_capacity(dims.len());
    let mut acc = 1;
    for &d in dims {
        s.push(acc);
        acc *= d;
    }
    s
}

/// Base offsets of all fibers along `axis`, in a fixed order that depends
/// only on the other dimensions.
fn fiber_bases(dims: &[usize], axis: usize) -> Vec<usize> {
    let st = strides(dims);
    let mut bases = vec![0usize];
    for (a, (&d, &s)) in dims.iter().zip(&st).enumerate() {
        if a == axis {
            continue;
        }
        bases = (0..d).flat_map(|i| bases.iter().map(move |b| b + i * s)).collect();
    }
    bases
}

impl<S: Scalar> Tensor<S> {
    /// Axis `a` of the result is axis `perm[a]` of `self`.
    fn permute(&self, perm: &[usize]) -> Self {
        let dims: Vec<usize> = perm.iter().map(|&a| self.dims[a]).collect();
        let src = strides(&self.dims);
        let jump: Vec<usize> = perm.iter().map(|&a| src[a]).collect();
        let mut data = Vec::with_capacity(self.data.len());
        let mut idx = vec![0usize; dims.len()];
        let mut off = 0usize;
        for _ in 0..self.data.len() {
            data.push(self.data[off].clone());
            for a in 0..dims.len() {
                idx[a] += 1;
                off += jump[a];
                if idx[a] < dims[a] {
                    break;
                }
                off -= jump[a] * dims[a];
                idx[a] = 0;
            }
        }
        Tensor { dims, data }
    }

    /// Applies `f` to every contiguous block spanned by the first `front`
    /// axes, which are replaced by `new_front`.
    fn map_blocks(&self, front: usize, new_front: &[usize], f: impl Fn(&[S]) -> Vec<S>) -> Self {
        let size: usize = self.dims[..front].iter().product();
        let mut dims = new_front.to_vec();
        dims.extend_from_slice(&self.dims[front..]);
        let data = self.data.chunks(size.max(1)).flat_map(&f).collect();
        Tensor { dims, data }
    }

    fn fiber(&self, base: usize, axis: usize) -> Vec<S> {
        let s = strides(&self.dims)[axis];
        (0..self.dims[axis]).map(|i| self.data[base + i * s].clone()).collect()
    }

    fn map_fibers(&self, axis: usize, new_len: usize, f: impl Fn(Vec<S>) -> Vec<S>) -> Self {
        let mut dims = self.dims.clone();
        dims[axis] = new_len;
        let out_stride = strides(&dims)[axis];
        let mut data = vec![S::zero(); dims.iter().product()];
        for (b_in, b_out) in fiber_bases(&self.dims, axis).into_iter().zip(fiber_bases(&dims, axis)) {
            for (i, v) in f(self.fiber(b_in, axis)).into_iter().enumerate() {
                data[b_out + i * out_stride] = v;
            }
        }
        Tensor { dims, data }
    }
}

fn invert_perm(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (a, &p) in perm.iter().enumerate() {
        inv[p] = a;
    }
    inv
}

/// One prime-power variable after the exponent CRT split.
#[derive(Clone, Debug)]
struct Axis<S> {
    prime: usize,
    level: usize,
    /// `phi[c] = Phi_{p^c}`.
    phi: Vec<Poly<S>>,
    /// CRT idempotents modulo `y^{p^b} - 1`, dense of length `p^b`.
    idempotents: Vec<Vec<S>>,
}

impl<S: Scalar> Axis<S> {
    fn new(prime: usize, level: usize) -> Result<Self> {
        let q = prime.pow(level as u32);
        let phi: Vec<Poly<S>> = (0..=level).map(|c| cyclotomic(prime.pow(c as u32))).collect();
        let full = Poly::x_pow_minus_one(q);
        let mut idempotents = Vec::with_capacity(phi.len());
        for f in &phi {
            let (cofactor, r) = full.divmod(f)?;
            debug_assert!(r.is_zero());
            let inv = cofactor
                .inv_mod(f)?
                .ok_or_else(|| Error::Interpolation("cyclotomic factors are not coprime".into()))?;
            idempotents.push(cofactor.mul(&inv).rem(&full)?.to_dense(q));
        }
        Ok(Axis { prime, level, phi, idempotents })
    }

    fn order(&self) -> usize {
        self.prime.pow(self.level as u32)
    }

    /// `f mod Phi_{p^c}` for `f` of length `p^b`.
    fn split(&self, f: &[S], c: usize) -> Vec<S> {
        let qc = self.prime.pow(c as u32);
        let mut folded = vec![S::zero(); qc];
        for (i, v) in f.iter().enumerate() {
            if !v.is_zero() {
                folded[i % qc] = folded[i % qc].add(v);
            }
        }
        reduce_dense(folded, &self.phi[c])
    }

    fn join(&self, parts: &[Vec<S>]) -> Vec<S> {
        let q = self.order();
        let mut out = vec![S::zero(); q];
        for (r, e) in parts.iter().zip(&self.idempotents) {
            let prod = poly::mul_slices(r, e);
            for (i, v) in prod.into_iter().enumerate() {
                if !v.is_zero() {
                    out[i % q] = out[i % q].add(&v);
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
enum StepKind<S> {
    Permute,
    Theta(SamePrimeSplit<S>),
    Merge(CoprimeMerge<S>),
}

#[derive(Clone, Debug)]
struct Step<S> {
    perm: Vec<usize>,
    /// Tensor dimensions before the step.
    dims_in: Vec<usize>,
    kind: StepKind<S>,
}

/// Replayable transform for one CRT component (fixed level per axis).
#[derive(Clone, Debug)]
struct Component<S> {
    levels: Vec<usize>,
    dims: Vec<usize>,
    steps: Vec<Step<S>>,
    order: usize,
    copies: usize,
}

impl<S: Scalar> Component<S> {
    fn build(axes: &[Axis<S>], levels: Vec<usize>) -> Result<Self> {
        let dims: Vec<usize> = axes.iter().zip(&levels).map(|(a, &c)| totient(a.prime.pow(c as u32))).collect();
        // labels[pos] = original axis now at position pos
        let mut labels: Vec<usize> = (0..axes.len()).collect();
        let mut cur = dims.clone();
        let mut steps = Vec::new();
        let mut values: Vec<(usize, usize)> = Vec::new();
        let front = |labels: &[usize], first: &[usize]| -> Vec<usize> {
            let mut perm: Vec<usize> =
                first.iter().map(|f| labels.iter().position(|l| l == f).expect("label present")).collect();
            let rest: Vec<usize> = (0..labels.len()).filter(|p| !perm.contains(p)).collect();
            perm.extend(rest);
            perm
        };
        let mut primes: Vec<usize> = axes.iter().map(|a| a.prime).collect();
        primes.sort_unstable();
        primes.dedup();
        for p in primes {
            let group: Vec<usize> = (0..axes.len()).filter(|&j| axes[j].prime == p && levels[j] >= 1).collect();
            let Some(&lead) = group.iter().max_by_key(|&&j| (levels[j], std::cmp::Reverse(j))) else {
                continue;
            };
            for &y in group.iter().filter(|&&y| y != lead) {
                let perm = front(&labels, &[lead, y]);
                steps.push(Step {
                    perm: perm.clone(),
                    dims_in: cur.clone(),
                    kind: StepKind::Theta(SamePrimeSplit::new(p, levels[lead], levels[y])?),
                });
                labels = perm.iter().map(|&q| labels[q]).collect();
                cur = perm.iter().map(|&q| cur[q]).collect();
            }
            values.push((lead, p.pow(levels[lead] as u32)));
        }
        let mut order = 1;
        if let Some(&(acc, m0)) = values.first() {
            order = m0;
            for &(next, m) in &values[1..] {
                let perm = front(&labels, &[acc, next]);
                let merge = CoprimeMerge::new(order, m)?;
                let out_dim = merge.output_dim();
                steps.push(Step { perm: perm.clone(), dims_in: cur.clone(), kind: StepKind::Merge(merge) });
                labels = perm.iter().map(|&q| labels[q]).collect();
                cur = perm.iter().map(|&q| cur[q]).collect();
                labels.remove(1);
                cur.remove(1);
                cur[0] = out_dim;
                order *= m;
            }
            let perm = front(&labels, &[acc]);
            steps.push(Step { perm: perm.clone(), dims_in: cur.clone(), kind: StepKind::Permute });
            cur = perm.iter().map(|&q| cur[q]).collect();
        }
        let copies = cur.iter().product::<usize>() / totient(order);
        Ok(Component { levels, dims, steps, order, copies })
    }

    fn forward(&self, mut t: Tensor<S>) -> Vec<Vec<S>> {
        for step in &self.steps {
            t = t.permute(&step.perm);
            t = match &step.kind {
                StepKind::Permute => t,
                StepKind::Theta(th) => {
                    let (d, k) = th.dims();
                    t.map_blocks(2, &[d, k], |b| th.forward(b))
                }
                StepKind::Merge(mg) => t.map_blocks(2, &[mg.output_dim()], |b| mg.forward(b)),
            };
        }
        t.data.chunks(totient(self.order)).map(<[S]>::to_vec).collect()
    }

    fn backward(&self, residues: &[Vec<S>]) -> Tensor<S> {
        let data: Vec<S> = residues.iter().flatten().cloned().collect();
        let dims = match self.steps.last() {
            Some(last) => last.perm.iter().map(|&q| last.dims_in[q]).collect(),
            None => self.dims.clone(),
        };
        let mut t = Tensor { dims, data };
        for step in self.steps.iter().rev() {
            let permuted: Vec<usize> = step.perm.iter().map(|&q| step.dims_in[q]).collect();
            t = match &step.kind {
                StepKind::Permute => t,
                StepKind::Theta(th) => t.map_blocks(2, &permuted[..2], |b| th.backward(b)),
                StepKind::Merge(mg) => t.map_blocks(1, &permuted[..2], |b| mg.backward(b)),
            };
            t = t.permute(&invert_perm(&step.perm));
        }
        t
    }
}

/// The isomorphism `F[G] -> prod_j F[z]/<Phi_{d_j}(z)>` for an abelian `G`,
/// with enough recorded data to apply it in both directions.
#[derive(Clone, Debug)]
pub struct AbelianDecomposition<S> {
    presentation: Presentation,
    axes: Vec<Axis<S>>,
    /// `crt[i]` is the flat index, over the prime-power axes, of group
    /// element `i`.
    crt: Vec<usize>,
    components: Vec<Component<S>>,
    factors: Vec<CyclotomicFactor<S>>,
    /// Sorted factor position to unsorted (construction) position.
    sorted: Vec<usize>,
}

impl<S: Scalar> AbelianDecomposition<S> {
    pub fn new(gp: &Presentation) -> Result<Self> {
        if gp.kind() != GroupKind::Abelian {
            return Err(Error::Unsupported("abelian decomposition needs an abelian presentation".into()));
        }
        let mut axes = Vec::new();
        let mut owner = Vec::new();
        for (k, &e) in gp.orders().iter().enumerate() {
            for (p, b) in factorize(e) {
                axes.push(Axis::new(p, b as usize)?);
                owner.push(k);
            }
        }
        let qs: Vec<usize> = axes.iter().map(Axis::order).collect();
        let st = strides(&qs);
        let crt = gp
            .elements()
            .map(|g| (0..axes.len()).map(|a| (g.exps()[owner[a]] % qs[a]) * st[a]).sum())
            .collect();
        let mut level_sets: Vec<Vec<usize>> = vec![Vec::new()];
        for a in &axes {
            level_sets = (0..=a.level)
                .flat_map(|c| {
                    level_sets.iter().map(move |prefix| {
                        let mut v = prefix.clone();
                        v.push(c);
                        v
                    })
                })
                .collect();
        }
        let components = level_sets
            .into_iter()
            .map(|levels| Component::build(&axes, levels))
            .collect::<Result<Vec<_>>>()?;
        let unsorted: Vec<usize> =
            components.iter().flat_map(|c| std::iter::repeat_n(c.order, c.copies)).collect();
        let mut sorted: Vec<usize> = (0..unsorted.len()).collect();
        sorted.sort_by_key(|&i| unsorted[i]);
        let factors = sorted.iter().map(|&i| CyclotomicFactor::new(unsorted[i])).collect();
        Ok(AbelianDecomposition { presentation: gp.clone(), axes, crt, components, factors, sorted })
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn factors(&self) -> &[CyclotomicFactor<S>] {
        &self.factors
    }

    /// The orders `d_j`, sorted ascending.
    pub fn orders(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.order).collect()
    }

    pub fn dimension(&self) -> usize {
        self.factors.iter().map(CyclotomicFactor::dim).sum()
    }

    pub fn forward(&self, beta: &GroupAlgebraElem<S>) -> Result<Vec<Poly<S>>> {
        let n = self.presentation.size();
        if beta.len() != n {
            return Err(Error::LengthMismatch { expected: n, found: beta.len() });
        }
        let mut data = vec![S::zero(); n];
        for (i, c) in beta.coeffs().iter().enumerate() {
            data[self.crt[i]] = c.clone();
        }
        let mut comps = vec![Tensor { dims: self.axes.iter().map(Axis::order).collect(), data }];
        for (j, axis) in self.axes.iter().enumerate() {
            let mut next = Vec::with_capacity(comps.len() * (axis.level + 1));
            for c in 0..=axis.level {
                let len = totient(axis.prime.pow(c as u32));
                next.extend(comps.iter().map(|t| t.map_fibers(j, len, |f| axis.split(&f, c))));
            }
            comps = next;
        }
        let unsorted: Vec<Vec<S>> =
            comps.into_iter().zip(&self.components).flat_map(|(t, comp)| comp.forward(t)).collect();
        Ok(self.sorted.iter().map(|&i| Poly::new(unsorted[i].clone())).collect())
    }

    pub fn backward(&self, residues: &[Poly<S>]) -> Result<GroupAlgebraElem<S>> {
        if residues.len() != self.factors.len() {
            return Err(Error::LengthMismatch { expected: self.factors.len(), found: residues.len() });
        }
        let mut unsorted = vec![Vec::new(); residues.len()];
        for ((r, f), &i) in residues.iter().zip(&self.factors).zip(&self.sorted) {
            let d = f.dim();
            if r.coeffs().len() > d {
                return Err(Error::LengthMismatch { expected: d, found: r.coeffs().len() });
            }
            unsorted[i] = r.to_dense(d);
        }
        let mut offset = 0;
        let mut comps = Vec::with_capacity(self.components.len());
        for comp in &self.components {
            comps.push(comp.backward(&unsorted[offset..offset + comp.copies]));
            offset += comp.copies;
        }
        for (j, axis) in self.axes.iter().enumerate().rev() {
            let len = comps.len() / (axis.level + 1);
            let mut prev = Vec::with_capacity(len);
            for o in 0..len {
                let parts: Vec<&Tensor<S>> = (0..=axis.level).map(|c| &comps[o + len * c]).collect();
                let mut dims = parts[0].dims.clone();
                dims[j] = axis.order();
                let out_stride = strides(&dims)[j];
                let mut data = vec![S::zero(); dims.iter().product()];
                let bases: Vec<Vec<usize>> = parts.iter().map(|t| fiber_bases(&t.dims, j)).collect();
                for (f, b_out) in fiber_bases(&dims, j).into_iter().enumerate() {
                    let fibers: Vec<Vec<S>> = parts.iter().zip(&bases).map(|(t, b)| t.fiber(b[f], j)).collect();
                    for (i, v) in axis.join(&fibers).into_iter().enumerate() {
                        data[b_out + i * out_stride] = v;
                    }
                }
                prev.push(Tensor { dims, data });
            }
            comps = prev;
        }
        let t = comps.pop().expect("single tensor");
        Ok(GroupAlgebraElem::new(self.crt.iter().map(|&k| t.data[k].clone()).collect()))
    }

    /// Index of the first factor where `beta` is not invertible.
    pub fn first_non_unit(&self, beta: &GroupAlgebraElem<S>) -> Result<Option<usize>> {
        for (j, (r, f)) in self.forward(beta)?.iter().zip(&self.factors).enumerate() {
            if r.inv_mod(&f.phi)?.is_none() {
                return Ok(Some(j));
            }
        }
        Ok(None)
    }

    pub fn is_unit(&self, beta: &GroupAlgebraElem<S>) -> Result<bool> {
        Ok(self.first_non_unit(beta)?.is_none())
    }

    /// `beta^{-1} eta`, componentwise.
    pub fn divide(&self, beta: &GroupAlgebraElem<S>, eta: &GroupAlgebraElem<S>) -> Result<GroupAlgebraElem<S>> {
        let rb = self.forward(beta)?;
        let re = self.forward(eta)?;
        let mut out = Vec::with_capacity(rb.len());
        for (j, ((b, e), f)) in rb.iter().zip(&re).zip(&self.factors).enumerate() {
            let inv = b.inv_mod(&f.phi)?.ok_or(Error::NotAUnit { factor: j, order: f.order })?;
            out.push(inv.mul(e).rem(&f.phi)?);
        }
        self.backward(&out)
    }

    pub fn inverse(&self, beta: &GroupAlgebraElem<S>) -> Result<GroupAlgebraElem<S>> {
        self.divide(beta, &GroupAlgebraElem::one(self.presentation.size()))
    }

    /// Componentwise product of two residue lists.
    pub fn mul_residues(&self, a: &[Poly<S>], b: &[Poly<S>]) -> Result<Vec<Poly<S>>> {
        a.iter().zip(b).zip(&self.factors).map(|((x, y), f)| x.mul(y).rem(&f.phi)).collect()
    }

    /// Levels `c` per prime-power axis of every CRT component, for
    /// diagnostics.
    pub fn component_levels(&self) -> Vec<Vec<usize>> {
        self.components.iter().map(|c| c.levels.clone()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    type P = Poly<Rational>;

    #[test]
    fn cyclotomic_values() {
        assert_eq!(cyclotomic::<Rational>(1), P::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic::<Rational>(2), P::from_i64(&[1, 1]));
        assert_eq!(cyclotomic::<Rational>(6), P::from_i64(&[1, -1, 1]));
        assert_eq!(cyclotomic::<Rational>(12), P::from_i64(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic::<Rational>(105).coeff(7), Rational::from_i64(-2));
        assert_eq!(totient(60), 16);
    }

    #[test]
    fn coprime_merge_two_three() {
        let m = CoprimeMerge::<Rational>::new(2, 3).unwrap();
        assert_eq!(m.images, (3, 4));
        assert_eq!(m.forward(&[Rational::one(), Rational::zero()]), vec![Rational::one(), Rational::zero()]);
        assert!(CoprimeMerge::<Rational>::new(2, 4).is_err());
    }

    #[test]
    fn same_prime_examples() {
        let s = SamePrimeSplit::<Rational>::new(2, 2, 1).unwrap();
        assert_eq!(s.roots, vec![2]);
        // a(x) + b(x) y reduces mod y + 1 to a - b, which is also its value at -1
        let block: Vec<Rational> = [-2, 3].iter().map(|&v| Rational::from_i64(v)).collect();
        assert_eq!(s.forward(&block), block);
        assert_eq!(s.backward(&block), block);
        let s3 = SamePrimeSplit::<Rational>::new(3, 1, 1).unwrap();
        assert_eq!(s3.roots, vec![1, 2]);
        // y -> x^3 and y -> x^6 in F[x]/Phi_9
        let s9 = SamePrimeSplit::<Rational>::new(3, 2, 1).unwrap();
        assert_eq!(s9.roots, vec![3, 6]);
        let y: Vec<Rational> = [0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0].iter().map(|&v| Rational::from_i64(v)).collect();
        let vals = s9.forward(&y);
        let phi9 = cyclotomic::<Rational>(9);
        assert_eq!(vals[..6].to_vec(), P::monomial(Rational::one(), 3).to_dense(6));
        assert_eq!(vals[6..].to_vec(), P::monomial(Rational::one(), 6).rem(&phi9).unwrap().to_dense(6));
        assert_eq!(s9.backward(&vals), y);
    }

    #[test]
    fn factor_lists() {
        let dec = |o: Vec<usize>| AbelianDecomposition::<Rational>::new(&Presentation::abelian(o).unwrap()).unwrap();
        assert_eq!(dec(vec![4]).orders(), vec![1, 2, 4]);
        assert_eq!(dec(vec![6]).orders(), vec![1, 2, 3, 6]);
        assert_eq!(dec(vec![2, 2]).orders(), vec![1, 2, 2, 2]);
        assert_eq!(dec(vec![3, 9]).dimension(), 27);
        let z4 = dec(vec![4]);
        let x = GroupAlgebraElem::<Rational>::delta(4, 1);
        assert_eq!(z4.forward(&x).unwrap(), vec![P::from_i64(&[1]), P::from_i64(&[-1]), P::from_i64(&[0, 1])]);
        assert_eq!(z4.inverse(&x).unwrap(), GroupAlgebraElem::delta(4, 3));
        for orders in [vec![60], vec![2, 4], vec![9, 3], vec![4, 6], vec![8, 2, 2], vec![25, 5]] {
            let gp = Presentation::abelian(orders).unwrap();
            let d = AbelianDecomposition::<Rational>::new(&gp).unwrap();
            let n = gp.size();
            assert_eq!(d.dimension(), n);
            let a = GroupAlgebraElem::<Rational>::from_i64(&(0..n as i64).map(|i| (i * 7 + 3) % 11 - 5).collect::<Vec<_>>());
            let b = GroupAlgebraElem::<Rational>::from_i64(&(0..n as i64).map(|i| (i * i + 1) % 7 - 3).collect::<Vec<_>>());
            let (fa, fb) = (d.forward(&a).unwrap(), d.forward(&b).unwrap());
            assert_eq!(d.backward(&fa).unwrap(), a);
            let ab = crate::group::ga_mul(&gp, &a, &b).unwrap();
            assert_eq!(d.forward(&ab).unwrap(), d.mul_residues(&fa, &fb).unwrap());
        }
        let all = GroupAlgebraElem::<Rational>::from_i64(&[1, 1, 1, 1]);
        assert_eq!(z4.divide(&all, &x), Err(Error::NotAUnit { factor: 1, order: 2 }));
    }
}
