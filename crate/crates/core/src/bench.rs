//! Operation-count benchmarks over three families: cyclic extensions of
//! degree `2^k`, multiquadratic fields with group `(Z/2)^k`, and dihedral
//! group algebras.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::Rng;

use crate::abelian::AbelianDecomposition;
use crate::error::{Error, Result};
use crate::ext::{ExtElem, ExtensionField, LinearForm};
use crate::galois::GaloisExtension;
use crate::group::{GroupAlgebraElem, Presentation};
use crate::matrix::{Matrix, Solution};
use crate::metacyclic::{self, build_hankel, preferred_ordering};
use crate::normality::{is_normal_oracle, RandomConfig};
use crate::orbit::project_orbit_sum;
use crate::poly::Poly;
use crate::scalar::{count_ops, FromRational, Rational, Scalar};

pub const CSV_HEADER: &str = "family,n,phase,ops,millis";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Cyclic,
    ElementaryAbelian,
    Dihedral,
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cyclic" => Ok(Family::Cyclic),
            "elementary-abelian" => Ok(Family::ElementaryAbelian),
            "dihedral" => Ok(Family::Dihedral),
            other => Err(Error::Parse(format!("unknown family {other:?}"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Cyclic => "cyclic",
            Family::ElementaryAbelian => "elementary-abelian",
            Family::Dihedral => "dihedral",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchRow {
    pub family: Family,
    pub n: usize,
    pub phase: &'static str,
    pub ops: u64,
    pub millis: u128,
}

impl fmt::Display for BenchRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{},{}", self.family, self.n, self.phase, self.ops, self.millis)
    }
}

fn map_poly<S: FromRational>(p: &Poly<Rational>) -> Result<Poly<S>> {
    let coeffs = p
        .coeffs()
        .iter()
        .map(|q| S::from_rational(q).ok_or_else(|| Error::InvalidModulus("denominator vanishes".into())))
        .collect::<Result<Vec<_>>>()?;
    Ok(Poly::new(coeffs))
}

fn poly_i64(c: &[i64]) -> Poly<Rational> {
    Poly::from_i64(c)
}

/// `Q(zeta + zeta^-1)` for a primitive `4n`-th root of unity `zeta`: cyclic
/// of degree `n = 2^k`, with `xi = 2 cos(2 pi / 4n)` and generator
/// `xi -> 2 cos(10 pi / 4n)`.
pub fn cyclic_extension<S: FromRational>(n: usize) -> Result<GaloisExtension<S>> {
    if n < 2 || !n.is_power_of_two() {
        return Err(Error::Unsupported(format!("cyclic family needs a power of two >= 2, got {n}")));
    }
    let mut p = poly_i64(&[-2, 0, 1]);
    let sub = poly_i64(&[-2, 0, 1]);
    while p.degree() < Some(n) {
        let mut acc = Poly::zero();
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(&sub).add(&Poly::constant(c.clone()));
        }
        p = acc;
    }
    let field = ExtensionField::new(map_poly::<S>(&p)?)?;
    let xi = field.xi();
    let dickson5 = [0i64, 5, 0, -5, 0, 1].iter().rev().fold(field.zero(), |acc, &c| {
        field.add(&field.mul(&acc, &xi), &field.constant(S::from_i64(c)))
    });
    GaloisExtension::new_unchecked(field, Presentation::abelian(vec![n])?, vec![dickson5])
}

fn first_primes(k: usize) -> Vec<i64> {
    let mut out = Vec::with_capacity(k);
    let mut c = 2i64;
    while out.len() < k {
        if (2..c).take_while(|d| d * d <= c).all(|d| c % d != 0) {
            out.push(c);
        }
        c += 1;
    }
    out
}

/// Product of two elements of `Q(sqrt p_1, ..., sqrt p_k)` in the basis
/// `sqrt(prod_{i in S} p_i)` indexed by bitmasks `S`.
fn mq_mul(primes: &[i64], a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len()];
    for (s, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
        for (t, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
            let common: i64 = (0..primes.len()).filter(|i| (s & t) >> i & 1 == 1).map(|i| primes[i]).product();
            out[s ^ t].add_mul(&x.mul(y), &Rational::from_i64(common));
        }
    }
    out
}

/// `Q(sqrt 2, sqrt 3, ..., sqrt p_k)` with `xi = sum sqrt p_i` and the sign
/// flips as generators.
pub fn multiquadratic_extension<S: FromRational>(k: usize) -> Result<GaloisExtension<S>> {
    if k == 0 {
        return Err(Error::Unsupported("multiquadratic family needs k >= 1".into()));
    }
    let primes = first_primes(k);
    let n = 1usize << k;
    let mut xi = vec![Rational::zero(); n];
    for i in 0..k {
        xi[1 << i] = Rational::one();
    }
    let mut powers = vec![{
        let mut one = vec![Rational::zero(); n];
        one[0] = Rational::one();
        one
    }];
    for _ in 0..n {
        let next = mq_mul(&primes, powers.last().expect("nonempty"), &xi);
        powers.push(next);
    }
    // Columns are xi^0..xi^{n-1} in the radical basis.
    let basis = Matrix::from_rows((0..n).map(|r| (0..n).map(|c| powers[c][r].clone()).collect()).collect())?;
    let solve = |target: &[Rational]| -> Result<Vec<Rational>> {
        match basis.solve(target)? {
            Solution::Unique(x) => Ok(x),
            Solution::Singular(_) => Err(Error::InvalidModulus("xi does not generate".into())),
        }
    };
    let low = solve(&powers[n])?;
    let mut modulus: Vec<Rational> = low.iter().map(Rational::neg).collect();
    modulus.push(Rational::one());
    let field = ExtensionField::new(map_poly::<S>(&Poly::new(modulus))?)?;
    let mut gammas = Vec::with_capacity(k);
    for i in 0..k {
        let mut img = xi.clone();
        img[1 << i] = Rational::from_i64(-1);
        let coeffs = solve(&img)?
            .iter()
            .map(|q| S::from_rational(q).ok_or_else(|| Error::InvalidModulus("denominator vanishes".into())))
            .collect::<Result<Vec<S>>>()?;
        gammas.push(field.elem(coeffs)?);
    }
    GaloisExtension::new_unchecked(field, Presentation::abelian(vec![2; k])?, gammas)
}

/// The dihedral group of order `2m` as `<sigma, tau | sigma^m, tau^2, tau^-1 sigma tau = sigma^-1>`.
pub fn dihedral(m: usize) -> Result<Presentation> {
    Presentation::metacyclic(m, 2, m, m - 1)
}

fn timed<R>(f: impl FnOnce() -> R) -> (R, u64, u128) {
    let start = Instant::now();
    let (r, ops) = count_ops(f);
    (r, ops, start.elapsed().as_millis())
}

fn random_vec<S: Scalar>(rng: &mut impl Rng, n: usize, bound: u64) -> Vec<S> {
    (0..n).map(|_| S::from_i64(rng.gen_range(0..bound) as i64)).collect()
}

/// Phases `project` (orbit sum), `unit` (abelian unit test), `setup`
/// (decomposition precomputation) and optionally `oracle` (orbit matrix and
/// elimination over `K`).
pub fn run_abelian<S: Scalar>(
    family: Family,
    ext: &GaloisExtension<S>,
    cfg: &RandomConfig,
    oracle: bool,
) -> Result<Vec<BenchRow>> {
    let n = ext.degree();
    let mut rng = cfg.rng();
    let alpha: ExtElem<S> = ext.field().elem(random_vec(&mut rng, n, cfg.sample_size))?;
    let ell = LinearForm::new(random_vec(&mut rng, n, cfg.sample_size));
    let mut rows = Vec::new();
    let mut push = |phase, ops, millis| rows.push(BenchRow { family, n, phase, ops, millis });
    let (s, ops, ms) = timed(|| project_orbit_sum(ext, &alpha, &ell));
    let s = s?;
    push("project", ops, ms);
    let (dec, ops, ms) = timed(|| AbelianDecomposition::<S>::new(ext.presentation()));
    let dec = dec?;
    push("setup", ops, ms);
    let (unit, ops, ms) = timed(|| dec.is_unit(&s));
    unit?;
    push("unit", ops, ms);
    if oracle {
        let (r, ops, ms) = timed(|| is_normal_oracle(ext, &alpha, usize::MAX));
        r?;
        push("oracle", ops, ms);
    }
    Ok(rows)
}

/// Unit test of a random element of the dihedral group algebra of order
/// `2m`, returning the rows and the block ordering used.
pub fn run_dihedral<S: Scalar>(m: usize, cfg: &RandomConfig) -> Result<(Vec<BenchRow>, metacyclic::Ordering)> {
    let gp = dihedral(m)?;
    let n = gp.size();
    let mut rng = cfg.rng();
    let beta = GroupAlgebraElem::new(random_vec::<S>(&mut rng, n, cfg.sample_size));
    let ordering = preferred_ordering(&gp)?;
    let (h, ops_build, ms_build) = timed(|| build_hankel(&gp, &beta, ordering));
    let h = h?;
    let (rank, ops, ms) = timed(|| h.to_dense().rank());
    let _ = rank;
    let rows = vec![
        BenchRow { family: Family::Dihedral, n, phase: "hankel", ops: ops_build, millis: ms_build },
        BenchRow { family: Family::Dihedral, n, phase: "unit", ops, millis: ms },
    ];
    Ok((rows, ordering))
}

/// Runs one family at the given sizes (`n` for cyclic and elementary-abelian,
/// `m` for dihedral of order `2m`). `log` receives human-readable notes.
pub fn run<S: FromRational>(
    family: Family,
    sizes: &[usize],
    cfg: &RandomConfig,
    oracle: bool,
    mut log: impl FnMut(String),
) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::new();
    for &size in sizes {
        match family {
            Family::Cyclic => rows.extend(run_abelian(family, &cyclic_extension::<S>(size)?, cfg, oracle)?),
            Family::ElementaryAbelian => {
                if !size.is_power_of_two() || size < 2 {
                    return Err(Error::Unsupported(format!("elementary-abelian needs a power of two >= 2, got {size}")));
                }
                let k = size.trailing_zeros() as usize;
                rows.extend(run_abelian(family, &multiquadratic_extension::<S>(k)?, cfg, oracle)?);
            }
            Family::Dihedral => {
                let (r, ordering) = run_dihedral::<S>(size, cfg)?;
                let (outer, inner) = match ordering {
                    metacyclic::Ordering::TauOuter => (2, size),
                    metacyclic::Ordering::SigmaOuter => (size, 2),
                };
                log(format!("dihedral n={}: ordering {ordering:?}, outer={outer}, inner={inner}", 2 * size));
                rows.extend(r);
            }
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Fp;

    #[test]
    fn families_validate() {
        for n in [2, 4, 8, 16] {
            let ext = cyclic_extension::<Rational>(n).unwrap();
            let full = GaloisExtension::new(ext.field().clone(), ext.presentation().clone(), vec![ext.generators()[0].gamma().clone()]);
            assert!(full.is_ok(), "cyclic {n}");
        }
        assert_eq!(cyclic_extension::<Rational>(4).unwrap().field().modulus(), &poly_i64(&[2, 0, -4, 0, 1]));
        for k in 1..=3 {
            let ext = multiquadratic_extension::<Rational>(k).unwrap();
            let gammas = ext.generators().iter().map(|g| g.gamma().clone()).collect();
            assert!(GaloisExtension::new(ext.field().clone(), ext.presentation().clone(), gammas).is_ok(), "k = {k}");
        }
        assert_eq!(multiquadratic_extension::<Rational>(2).unwrap().field().modulus(), &poly_i64(&[1, 0, -10, 0, 1]));
        cyclic_extension::<Fp>(64).unwrap();
    }

    #[test]
    fn rows_and_ordering() {
        let cfg = RandomConfig::with_seed(1);
        let mut notes = Vec::new();
        let rows = run::<Fp>(Family::Dihedral, &[8], &cfg, false, |s| notes.push(s)).unwrap();
        assert_eq!(rows.len(), 2);
        assert!(notes[0].contains("TauOuter, outer=2"));
        let rows = run::<Fp>(Family::Cyclic, &[8], &cfg, true, |_| ()).unwrap();
        let phases: Vec<_> = rows.iter().map(|r| r.phase).collect();
        assert_eq!(phases, ["project", "setup", "unit", "oracle"]);
        assert!(rows[0].to_string().starts_with("cyclic,8,project,"));
    }
}
