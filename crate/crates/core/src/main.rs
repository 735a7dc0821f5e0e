use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use galnorm::bench::{self, Family};
use galnorm::error::Error;
use galnorm::fixture::{builtin, parse_coeffs, Fixture, BUILTIN};
use galnorm::galois::GaloisExtension;
use galnorm::group::{ga_mul, GroupAlgebraElem, Presentation};
use galnorm::normality::{is_normal_oracle, GroupAlgebra, Normality, NormalityVerdict, RandomConfig, DEFAULT_ORACLE_GUARD};
use galnorm::scalar::{count_ops, Fp, Rational};

const EXIT_NOT_NORMAL: u8 = 2;
const EXIT_NOT_UNIT: u8 = 3;
const EXIT_INVALID_FIXTURE: u8 = 4;
const EXIT_BUDGET: u8 = 5;

/// Normal elements and normal-basis conversion for abelian and metacyclic
/// Galois extensions over Q.
#[derive(Parser)]
#[command(name = "galnorm", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Random {
    /// RNG seed (falls back to GALNORM_SEED, then 0)
    #[arg(long)]
    seed: Option<u64>,
    /// Target failure bound per draw; grows the sample set to ceil(n / epsilon)
    #[arg(long)]
    epsilon: Option<f64>,
    /// Size of the sample set X = {0, ..., size - 1}
    #[arg(long)]
    sample_size: Option<u64>,
    /// Linear-form draws before reporting "probably not normal"
    #[arg(long)]
    trials: Option<usize>,
    /// Attempts for searches and conversions
    #[arg(long)]
    budget: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Check a fixture: squarefree modulus, automorphism roots and relations
    Validate {
        /// Fixture path, or builtin:NAME
        fixture: String,
    },
    /// Monte Carlo normality test with certificate
    NormalTest {
        fixture: String,
        /// Power-basis coordinates of alpha, comma-separated p/q
        #[arg(allow_hyphen_values = true)]
        alpha: String,
        /// Also run the dense determinant oracle
        #[arg(long)]
        oracle: bool,
        /// Largest degree the oracle accepts
        #[arg(long, default_value_t = DEFAULT_ORACLE_GUARD)]
        guard: usize,
        #[command(flatten)]
        random: Random,
    },
    /// Search for a normal element
    FindNormal {
        fixture: String,
        #[command(flatten)]
        random: Random,
    },
    /// Convert between the power basis and the normal basis of alpha
    Convert {
        fixture: String,
        #[arg(allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, value_enum)]
        direction: Direction,
        /// Group-enumeration coefficients (to-power) or power-basis coordinates (to-normal)
        #[arg(allow_hyphen_values = true)]
        coeffs: String,
        #[command(flatten)]
        random: Random,
    },
    /// Group-algebra inversion and division
    Ga {
        /// abelian:E1,E2,..., metacyclic:M,S,T,U, a fixture path or builtin:NAME
        group: String,
        #[command(subcommand)]
        op: GaOp,
    },
    /// Operation-count benchmark, CSV on stdout
    Bench {
        #[arg(value_parser = parse_family)]
        family: Family,
        /// Degrees n (cyclic, elementary-abelian) or m for dihedral of order 2m
        #[arg(long, value_delimiter = ',', default_values_t = [16, 32, 64])]
        sizes: Vec<usize>,
        /// Include the dense oracle phase
        #[arg(long)]
        oracle: bool,
        /// Coefficient field
        #[arg(long, value_enum, default_value_t = BenchField::Fp)]
        field: BenchField,
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Subcommand)]
enum GaOp {
    Invert {
        #[arg(allow_hyphen_values = true)]
        beta: String,
    },
    Divide {
        #[arg(allow_hyphen_values = true)]
        beta: String,
        #[arg(allow_hyphen_values = true)]
        eta: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Direction {
    ToPower,
    ToNormal,
}

#[derive(Clone, Copy, ValueEnum)]
enum BenchField {
    Rational,
    Fp,
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotAUnit { .. } | Error::SingularMultiplication => EXIT_NOT_UNIT,
            Error::BudgetExhausted { .. } => EXIT_BUDGET,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

fn invalid_fixture(e: Error) -> Failure {
    Failure { code: EXIT_INVALID_FIXTURE, message: e.to_string() }
}

fn read_fixture(spec: &str) -> Result<Fixture, Failure> {
    if let Some(name) = spec.strip_prefix("builtin:") {
        return builtin(name).ok_or_else(|| {
            let names: Vec<_> = BUILTIN.iter().map(|(n, _)| *n).collect();
            invalid_fixture(Error::Parse(format!("no builtin fixture {name:?}; available: {}", names.join(", "))))
        });
    }
    let src = std::fs::read_to_string(spec)
        .map_err(|e| invalid_fixture(Error::Parse(format!("{spec}: {e}"))))?;
    Fixture::from_json(&src).map_err(invalid_fixture)
}

fn load(spec: &str) -> Result<GaloisExtension<Rational>, Failure> {
    read_fixture(spec)?.load().map_err(invalid_fixture)
}

fn seed(explicit: Option<u64>) -> Result<u64, Failure> {
    if let Some(s) = explicit {
        return Ok(s);
    }
    match std::env::var("GALNORM_SEED") {
        Ok(v) => v.trim().parse().map_err(|_| Failure { code: 1, message: format!("GALNORM_SEED: not an integer: {v:?}") }),
        Err(_) => Ok(0),
    }
}

fn config(r: &Random, n: usize) -> Result<RandomConfig, Failure> {
    let mut cfg = RandomConfig::with_seed(seed(r.seed)?);
    if let Some(size) = r.sample_size {
        cfg.sample_size = size;
    }
    if let Some(eps) = r.epsilon {
        if eps.is_nan() || eps <= 0.0 {
            return Err(Failure { code: 1, message: "--epsilon must be positive".into() });
        }
        cfg = cfg.with_epsilon(eps, n);
    }
    if let Some(t) = r.trials {
        cfg.trials = t;
    }
    if let Some(b) = r.budget {
        cfg.budget = b;
    }
    Ok(cfg)
}

fn elem(ext: &GaloisExtension<Rational>, src: &str) -> Result<galnorm::ext::ExtElem<Rational>, Failure> {
    Ok(ext.field().elem(parse_coeffs(src)?)?)
}

fn ga_elem(n: usize, src: &str) -> Result<GroupAlgebraElem<Rational>, Failure> {
    let c = parse_coeffs(src)?;
    if c.len() != n {
        return Err(Error::LengthMismatch { expected: n, found: c.len() }.into());
    }
    Ok(GroupAlgebraElem::new(c))
}

fn parse_group(spec: &str) -> Result<Presentation, Failure> {
    let ints = |s: &str| -> Result<Vec<usize>, Failure> {
        s.split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("group: bad integer {t:?}")).into()))
            .collect()
    };
    if let Some(rest) = spec.strip_prefix("abelian:") {
        return Presentation::abelian(ints(rest)?).map_err(invalid_fixture);
    }
    if let Some(rest) = spec.strip_prefix("metacyclic:") {
        let p = ints(rest)?;
        if p.len() != 4 {
            return Err(invalid_fixture(Error::Parse("metacyclic group needs m,s,t,u".into())));
        }
        return Presentation::metacyclic(p[0], p[1], p[2], p[3]).map_err(invalid_fixture);
    }
    read_fixture(spec)?.presentation().map_err(invalid_fixture)
}

fn report_ops(phase: &str, ops: u64, start: Instant) {
    println!("ops[{phase}]: {ops}");
    println!("millis: {}", start.elapsed().as_millis());
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Validate { fixture } => {
            let ext = load(&fixture)?;
            let gp = ext.presentation();
            println!("valid: degree {}, group {:?} with orders {:?}", ext.degree(), gp.kind(), gp.orders());
            Ok(0)
        }
        Command::NormalTest { fixture, alpha, oracle, guard, random } => {
            let start = Instant::now();
            let ext = load(&fixture)?;
            let cfg = config(&random, ext.degree())?;
            let alpha = elem(&ext, &alpha)?;
            let tester = Normality::new(&ext)?;
            let (verdict, ops) = count_ops(|| tester.is_normal_mc(&alpha, &cfg));
            let mut verdict = verdict?;
            let oracle_says = if oracle { Some(is_normal_oracle(&ext, &alpha, guard)?) } else { None };
            if oracle_says == Some(false) {
                verdict = NormalityVerdict::NotNormalCertified;
            }
            let code = match &verdict {
                NormalityVerdict::Normal { certificate, trials } => {
                    println!("verdict: Normal");
                    println!("certificate: {certificate}");
                    println!("trials: {trials}");
                    0
                }
                NormalityVerdict::ProbablyNotNormal { trials, bound } => {
                    println!("verdict: ProbablyNotNormal");
                    println!("trials: {trials}");
                    println!("bound: {bound:e}");
                    EXIT_NOT_NORMAL
                }
                NormalityVerdict::NotNormalCertified => {
                    println!("verdict: NotNormalCertified");
                    EXIT_NOT_NORMAL
                }
            };
            if let Some(o) = oracle_says {
                println!("oracle: {}", if o { "normal" } else { "not normal" });
            }
            report_ops("test", ops, start);
            Ok(code)
        }
        Command::FindNormal { fixture, random } => {
            let start = Instant::now();
            let ext = load(&fixture)?;
            let cfg = config(&random, ext.degree())?;
            let ((alpha, verdict), ops) = {
                let (r, ops) = count_ops(|| Normality::new(&ext)?.find_normal(&cfg));
                (r?, ops)
            };
            println!("alpha: {alpha}");
            if let NormalityVerdict::Normal { certificate, trials } = verdict {
                println!("certificate: {certificate}");
                println!("trials: {trials}");
            }
            report_ops("search", ops, start);
            Ok(0)
        }
        Command::Convert { fixture, alpha, direction, coeffs, random } => {
            let start = Instant::now();
            let ext = load(&fixture)?;
            let cfg = config(&random, ext.degree())?;
            let alpha = elem(&ext, &alpha)?;
            let tester = Normality::new(&ext)?;
            match direction {
                Direction::ToPower => {
                    let c = ga_elem(ext.degree(), &coeffs)?;
                    let (u, ops) = count_ops(|| tester.normal_to_power(&alpha, &c));
                    println!("{}", u?);
                    report_ops("to-power", ops, start);
                }
                Direction::ToNormal => {
                    let u = elem(&ext, &coeffs)?;
                    let (c, ops) = count_ops(|| tester.power_to_normal(&alpha, &u, &cfg));
                    println!("{}", c?);
                    report_ops("to-normal", ops, start);
                }
            }
            Ok(0)
        }
        Command::Ga { group, op } => {
            let gp = parse_group(&group)?;
            let n = gp.size();
            let algebra = GroupAlgebra::<Rational>::new(&gp)?;
            let (beta, eta) = match &op {
                GaOp::Invert { beta } => (ga_elem(n, beta)?, GroupAlgebraElem::one(n)),
                GaOp::Divide { beta, eta } => (ga_elem(n, beta)?, ga_elem(n, eta)?),
            };
            let q = algebra.divide(&beta, &eta)?;
            if ga_mul(&gp, &beta, &q)? != eta {
                return Err(Failure { code: 1, message: "internal error: quotient check failed".into() });
            }
            println!("{q}");
            Ok(0)
        }
        Command::Bench { family, sizes, oracle, field, seed: s } => {
            let cfg = RandomConfig::with_seed(seed(s)?);
            let log = |msg: String| eprintln!("{msg}");
            let rows = match field {
                BenchField::Fp => bench::run::<Fp>(family, &sizes, &cfg, oracle, log)?,
                BenchField::Rational => bench::run::<Rational>(family, &sizes, &cfg, oracle, log)?,
            };
            println!("{}", bench::CSV_HEADER);
            for r in rows {
                println!("{r}");
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
