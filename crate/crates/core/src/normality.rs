//! Normality testing and conversions between the power basis and a normal
//! basis.
//!
//! `alpha` is normal iff its orbit sum is a unit of `K[G]`. Projecting with
//! a random linear form `ell` gives `s_{alpha,ell}` in `F[G]`; if that is a
//! unit, `alpha` is certainly normal. If `alpha` is normal, a uniform `ell`
//! with coordinates in `X` fails with probability at most `n / |X|`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::abelian::AbelianDecomposition;
use crate::error::{Error, Result};
use crate::ext::{ExtElem, LinearForm};
use crate::galois::GaloisExtension;
use crate::group::{GroupAlgebraElem, GroupKind, Presentation};
use crate::matrix::Matrix;
use crate::metacyclic;
use crate::orbit::{self, iterated_eval, OrbitPlan};
use crate::scalar::Scalar;

pub const DEFAULT_SAMPLE_SIZE: u64 = 1 << 20;
pub const DEFAULT_TRIALS: usize = 2;
pub const DEFAULT_BUDGET: usize = 16;
pub const DEFAULT_ORACLE_GUARD: usize = 64;

#[derive(Clone, Debug, PartialEq)]
pub struct RandomConfig {
    /// `|X|`; samples are drawn from `{0, ..., |X| - 1}`.
    pub sample_size: u64,
    /// Independent `ell` draws before reporting "probably not normal".
    pub trials: usize,
    /// Attempts for searches and conversions that redraw on failure.
    pub budget: usize,
    pub seed: u64,
    /// Orbit sums for `n` below this use the brute-force path.
    pub brute_below: usize,
}

impl Default for RandomConfig {
    fn default() -> Self {
        RandomConfig {
            sample_size: DEFAULT_SAMPLE_SIZE,
            trials: DEFAULT_TRIALS,
            budget: DEFAULT_BUDGET,
            seed: 0,
            brute_below: 0,
        }
    }
}

impl RandomConfig {
    pub fn with_seed(seed: u64) -> Self {
        RandomConfig { seed, ..Self::default() }
    }

    /// Grows `|X|` so that the per-draw failure bound `n / |X|` is at most
    /// `epsilon`.
    pub fn with_epsilon(mut self, epsilon: f64, n: usize) -> Self {
        let need = (n as f64 / epsilon).ceil();
        if need.is_finite() && need > self.sample_size as f64 {
            self.sample_size = need.min(u64::MAX as f64) as u64;
        }
        self
    }

    /// Per-draw failure probability bound `n / |X|`.
    pub fn bound(&self, n: usize) -> f64 {
        n as f64 / self.sample_size as f64
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum NormalityVerdict<S> {
    /// `s_{alpha,ell}` is a unit for this `ell`; the verdict is certain.
    Normal { certificate: LinearForm<S>, trials: usize },
    /// Every draw gave a non-unit. Wrong with probability at most
    /// `bound^trials`.
    ProbablyNotNormal { trials: usize, bound: f64 },
    /// Established by the dense oracle.
    NotNormalCertified,
}

impl<S> NormalityVerdict<S> {
    pub fn is_normal(&self) -> bool {
        matches!(self, NormalityVerdict::Normal { .. })
    }
}

/// Unit test and division in `F[G]` for the supported group kinds.
#[derive(Clone, Debug)]
pub enum GroupAlgebra<S> {
    Abelian(AbelianDecomposition<S>),
    Metacyclic(Presentation),
}

impl<S: Scalar> GroupAlgebra<S> {
    pub fn new(gp: &Presentation) -> Result<Self> {
        match gp.kind() {
            GroupKind::Abelian => Ok(GroupAlgebra::Abelian(AbelianDecomposition::new(gp)?)),
            GroupKind::Metacyclic { .. } => Ok(GroupAlgebra::Metacyclic(gp.clone())),
            GroupKind::Polycyclic => {
                Err(Error::Unsupported("unit testing needs an abelian or metacyclic presentation".into()))
            }
        }
    }

    pub fn is_unit(&self, beta: &GroupAlgebraElem<S>) -> Result<bool> {
        match self {
            GroupAlgebra::Abelian(d) => d.is_unit(beta),
            GroupAlgebra::Metacyclic(gp) => metacyclic::is_unit_metacyclic(gp, beta),
        }
    }

    pub fn divide(&self, beta: &GroupAlgebraElem<S>, eta: &GroupAlgebraElem<S>) -> Result<GroupAlgebraElem<S>> {
        match self {
            GroupAlgebra::Abelian(d) => d.divide(beta, eta),
            GroupAlgebra::Metacyclic(gp) => metacyclic::divide_metacyclic(gp, beta, eta),
        }
    }
}

fn draw<S: Scalar>(rng: &mut ChaCha8Rng, n: usize, size: u64) -> Vec<S> {
    (0..n).map(|_| S::from_i64(rng.gen_range(0..size.max(1)) as i64)).collect()
}

/// Normality tester bound to one extension.
#[derive(Clone, Debug)]
pub struct Normality<'a, S> {
    ext: &'a GaloisExtension<S>,
    algebra: GroupAlgebra<S>,
}

impl<'a, S: Scalar> Normality<'a, S> {
    pub fn new(ext: &'a GaloisExtension<S>) -> Result<Self> {
        Ok(Normality { ext, algebra: GroupAlgebra::new(ext.presentation())? })
    }

    pub fn algebra(&self) -> &GroupAlgebra<S> {
        &self.algebra
    }

    pub fn random_form(&self, rng: &mut ChaCha8Rng, cfg: &RandomConfig) -> LinearForm<S> {
        LinearForm::new(draw(rng, self.ext.degree(), cfg.sample_size))
    }

    pub fn random_element(&self, rng: &mut ChaCha8Rng, cfg: &RandomConfig) -> ExtElem<S> {
        self.ext.field().elem(draw(rng, self.ext.degree(), cfg.sample_size)).expect("n coordinates")
    }

    /// Whether `s_{alpha,ell}` is a unit, which certifies that `alpha` is
    /// normal.
    pub fn certifies(&self, alpha: &ExtElem<S>, ell: &LinearForm<S>, cfg: &RandomConfig) -> Result<bool> {
        let s = orbit::orbit_sum(self.ext, alpha, ell, cfg.brute_below)?;
        self.algebra.is_unit(&s)
    }

    pub fn is_normal_mc_with(
        &self,
        alpha: &ExtElem<S>,
        cfg: &RandomConfig,
        rng: &mut ChaCha8Rng,
    ) -> Result<NormalityVerdict<S>> {
        for trial in 1..=cfg.trials {
            let ell = self.random_form(rng, cfg);
            if self.certifies(alpha, &ell, cfg)? {
                return Ok(NormalityVerdict::Normal { certificate: ell, trials: trial });
            }
        }
        Ok(NormalityVerdict::ProbablyNotNormal { trials: cfg.trials, bound: cfg.bound(self.ext.degree()) })
    }

    pub fn is_normal_mc(&self, alpha: &ExtElem<S>, cfg: &RandomConfig) -> Result<NormalityVerdict<S>> {
        self.is_normal_mc_with(alpha, cfg, &mut cfg.rng())
    }

    /// Draws random elements until one is certified normal.
    pub fn find_normal(&self, cfg: &RandomConfig) -> Result<(ExtElem<S>, NormalityVerdict<S>)> {
        let mut rng = cfg.rng();
        for _ in 0..cfg.budget {
            let alpha = self.random_element(&mut rng, cfg);
            let verdict = self.is_normal_mc_with(&alpha, cfg, &mut rng)?;
            if verdict.is_normal() {
                return Ok((alpha, verdict));
            }
        }
        Err(Error::BudgetExhausted { attempts: cfg.budget })
    }

    /// `sum_i c_i g_i(alpha)` for the coefficient vector `c` (group
    /// enumeration order).
    pub fn normal_to_power(&self, alpha: &ExtElem<S>, coeffs: &GroupAlgebraElem<S>) -> Result<ExtElem<S>> {
        normal_to_power(self.ext, alpha, coeffs)
    }

    /// Coefficients `c` with `sum_i c_i g_i(alpha) = u`, from
    /// `s_{alpha,ell} u' = s_{u,ell}` and `u' = sum_i c_i g_i^-1`.
    pub fn power_to_normal(&self, alpha: &ExtElem<S>, u: &ExtElem<S>, cfg: &RandomConfig) -> Result<GroupAlgebraElem<S>> {
        let gp = self.ext.presentation();
        let mut rng = cfg.rng();
        for _ in 0..cfg.budget {
            let ell = self.random_form(&mut rng, cfg);
            let sa = orbit::orbit_sum(self.ext, alpha, &ell, cfg.brute_below)?;
            if !self.algebra.is_unit(&sa)? {
                continue;
            }
            let su = orbit::orbit_sum(self.ext, u, &ell, cfg.brute_below)?;
            let up = self.algebra.divide(&sa, &su)?;
            let inv = gp.inverse_table()?;
            return Ok(GroupAlgebraElem::new(inv.iter().map(|&k| up.coeffs()[k].clone()).collect()));
        }
        Err(Error::BudgetExhausted { attempts: cfg.budget })
    }
}

pub fn is_normal_mc<S: Scalar>(ext: &GaloisExtension<S>, alpha: &ExtElem<S>, cfg: &RandomConfig) -> Result<NormalityVerdict<S>> {
    Normality::new(ext)?.is_normal_mc(alpha, cfg)
}

pub fn find_normal<S: Scalar>(ext: &GaloisExtension<S>, cfg: &RandomConfig) -> Result<(ExtElem<S>, NormalityVerdict<S>)> {
    Normality::new(ext)?.find_normal(cfg)
}

pub fn power_to_normal<S: Scalar>(
    ext: &GaloisExtension<S>,
    alpha: &ExtElem<S>,
    u: &ExtElem<S>,
    cfg: &RandomConfig,
) -> Result<GroupAlgebraElem<S>> {
    Normality::new(ext)?.power_to_normal(alpha, u, cfg)
}

/// `sum_i c_i g_i(alpha)`: baby orbit of `alpha`, one matrix product
/// forming the partial sums `H_J`, then the giant steps applied to the
/// `H_J` in one iterated evaluation.
pub fn normal_to_power<S: Scalar>(
    ext: &GaloisExtension<S>,
    alpha: &ExtElem<S>,
    coeffs: &GroupAlgebraElem<S>,
) -> Result<ExtElem<S>> {
    let n = ext.degree();
    if coeffs.len() != n {
        return Err(Error::LengthMismatch { expected: n, found: coeffs.len() });
    }
    let k = ext.field();
    let plan = OrbitPlan::new(ext.presentation().orders());
    let baby = plan.baby_orbit(ext, alpha)?;
    let mut u = Matrix::zeros(plan.giant_size(), plan.baby_size());
    for g in 0..plan.giant_size() {
        for b in 0..plan.baby_size() {
            if let Some(i) = plan.full_index(b, g) {
                u.set(g, b, coeffs.coeffs()[i].clone());
            }
        }
    }
    let gamma = Matrix::from_rows(baby.into_iter().map(ExtElem::into_coeffs).collect())?;
    let h = u.mul(&gamma)?;
    let seeds = (0..plan.giant_size()).map(|g| k.elem(h.row(g).to_vec())).collect::<Result<Vec<_>>>()?;
    let images = iterated_eval(k, &plan.giant_gens(ext), &plan.giant_orders, &seeds)?;
    Ok(images.iter().fold(k.zero(), |acc, x| k.add(&acc, x)))
}

/// `sum_i c_i g_i(alpha)` with one automorphism application per group
/// element.
pub fn normal_to_power_brute<S: Scalar>(
    ext: &GaloisExtension<S>,
    alpha: &ExtElem<S>,
    coeffs: &GroupAlgebraElem<S>,
) -> Result<ExtElem<S>> {
    let n = ext.degree();
    if coeffs.len() != n {
        return Err(Error::LengthMismatch { expected: n, found: coeffs.len() });
    }
    let k = ext.field();
    let mut acc = k.zero();
    for (g, c) in ext.all_automorphisms().iter().zip(coeffs.coeffs()) {
        if !c.is_zero() {
            acc = k.add(&acc, &k.scale(c, &k.apply_aut(g, alpha)));
        }
    }
    Ok(acc)
}

/// The matrix of `S_alpha` over `K`: entry `(i, j)` is `g_i(g_j(alpha))`.
pub fn orbit_matrix<S: Scalar>(ext: &GaloisExtension<S>, alpha: &ExtElem<S>) -> Vec<Vec<ExtElem<S>>> {
    let k = ext.field();
    let auts = ext.all_automorphisms();
    let conjugates: Vec<ExtElem<S>> = auts.iter().map(|g| k.apply_aut(g, alpha)).collect();
    auts.iter().map(|g| k.multi_apply(g, &conjugates)).collect()
}

/// Dense oracle: `alpha` is normal iff the orbit matrix over `K` is
/// nonsingular. Refuses degrees above `guard`.
pub fn is_normal_oracle<S: Scalar>(ext: &GaloisExtension<S>, alpha: &ExtElem<S>, guard: usize) -> Result<bool> {
    let n = ext.degree();
    if n > guard {
        return Err(Error::GuardExceeded { n, guard });
    }
    let k = ext.field();
    let mut m = orbit_matrix(ext, alpha);
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Ok(false);
        };
        m.swap(p, col);
        let inv = k.inv(&m[col][col])?;
        let pivot_row: Vec<ExtElem<S>> = m[col][col + 1..].iter().map(|x| k.mul(x, &inv)).collect();
        for row in m[col + 1..].iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (j, pv) in pivot_row.iter().enumerate() {
                let t = k.mul(&f, pv);
                row[col + 1 + j] = k.sub(&row[col + 1 + j], &t);
            }
        }
    }
    Ok(true)
}
