use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde::Serialize;

use ponzeta::appendix::{
    absolute_derivation, gauss_sum, k_moment, l_function, partition_function, CoefficientSpec,
    DirichletCharacter, MomentMethod, MomentSpec,
};
use ponzeta::arith::{Exponent, Precision, Surd};
use ponzeta::fock::{basis_convert, Amplitude, Basis, FockVec};
use ponzeta::pon::{
    apply_pon, compose_pons, geometric_annihilate_inverse, geometric_create, Flavor, PonOp,
};
use ponzeta::special::gamma;
use ponzeta::verify::{self, Suite, DEFAULT_SEED};
use ponzeta::weyl::{commutator, diagonal_poly, normal_order, parse, NormalForm};
use ponzeta::zeta::{
    euler_factor, euler_product, mellin_kernel, power_tower_relation, zeta_p_quantum,
    zeta_quantum, zeta_via_states, SpectralParams,
};
use ponzeta::Error;

mod output;

use output::{emit, emit_numeric, Format, Numeric};

/// Ladder-operator algebra, quantum p-ons and operator representations of zeta.
#[derive(Debug, Parser)]
#[command(name = "ponzeta", version)]
struct Cli {
    #[command(flatten)]
    config: RunConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct RunConfig {
    /// Working precision in bits for high-precision results
    #[arg(long, global = true, env = "PONZETA_PRECISION", default_value_t = 128,
          value_parser = clap::value_parser!(u64).range(24..=1 << 20))]
    precision: u64,
    /// Fock-space cutoff N (number of states or terms)
    #[arg(short = 'N', long, global = true, default_value_t = 64,
          value_parser = clap::value_parser!(u64).range(1..))]
    cutoff: u64,
    /// Prime bound P (defaults to the cutoff)
    #[arg(short = 'P', long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    prime_bound: Option<u64>,
    /// Geometric series depth K
    #[arg(short = 'K', long, global = true, default_value_t = 64,
          value_parser = clap::value_parser!(u32).range(1..))]
    depth: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Relative tolerance for numerical quadrature
    #[arg(long, global = true, default_value_t = 1e-9, value_parser = positive_f64)]
    tolerance: f64,
}

impl RunConfig {
    fn precision(&self) -> Precision {
        Precision::new(self.precision as usize).expect("range-checked by clap")
    }

    fn prime_bound(&self) -> u64 {
        self.prime_bound.unwrap_or(self.cutoff)
    }
}

fn positive_f64(text: &str) -> Result<f64, String> {
    match text.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        _ => Err(format!("{text:?} is not a positive number")),
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Rewrite an operator expression in normal order
    NormalOrder {
        expr: String,
        /// Fail unless the result is a polynomial in n
        #[arg(long)]
        diagonal: bool,
    },
    /// Normal-ordered commutator [x, y]
    Commutator {
        x: String,
        y: String,
        #[arg(long)]
        diagonal: bool,
    },
    /// Evaluate zeta(s) through an operator representation
    Zeta {
        #[arg(allow_hyphen_values = true)]
        s: String,
        #[arg(long, value_enum, default_value_t = ZetaMethod::StateSum)]
        method: ZetaMethod,
    },
    /// A single Euler factor 1/(1 - p^-s)
    EulerFactor {
        p: u64,
        #[arg(allow_hyphen_values = true)]
        s: String,
        /// Use the quantum p-on geometric series instead of the spectral one
        #[arg(long)]
        quantum: bool,
    },
    /// Quantum p-on endomorphisms on divided-power states
    Pon {
        #[command(subcommand)]
        action: PonCommand,
    },
    /// Partial sum of a Dirichlet L-series
    Lfunction {
        #[arg(allow_hyphen_values = true)]
        s: String,
        /// `mod8`, `principal:<q>` or `<q>:<v0>,<v1>,...`
        #[arg(long, default_value = "mod8")]
        character: String,
    },
    /// Mellin integral of exp(-beta n) against beta^(s-1)
    Mellin {
        #[arg(allow_hyphen_values = true)]
        s: String,
        n: u64,
    },
    /// Mellin moment K[s] of a partition function
    Moment {
        #[arg(allow_hyphen_values = true)]
        s: String,
        #[command(flatten)]
        coefficients: CoefficientArgs,
        #[arg(long, value_enum, default_value_t = MomentKind::Quadrature)]
        method: MomentKind,
    },
    /// Partition function Z[beta] truncated at N
    Partition {
        beta: f64,
        #[command(flatten)]
        coefficients: CoefficientArgs,
    },
    /// Quadratic Gauss sum for an odd prime
    Gauss { p: u64 },
    /// Absolute derivation d/dp of n
    Absder { p: u64, n: u64 },
    /// Both sides of the power-tower relation for m^l
    Tower {
        m: u64,
        ell: u32,
        #[arg(allow_hyphen_values = true)]
        s: String,
    },
    /// Run invariant suites
    Verify {
        /// weyl, pon, zeta, appendix or all
        #[arg(default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Debug, Subcommand)]
enum PonCommand {
    /// Apply A_m† or A_m to a state given as `n` or `n:coeff` terms
    Apply {
        flavor: FlavorArg,
        m: u64,
        #[arg(required = true)]
        state: Vec<String>,
    },
    /// Reduce a word of same-flavor p-ons to a single one
    Compose {
        flavor: FlavorArg,
        indices: Vec<u64>,
    },
    /// Product over primes <= P of the geometric p-on series (or its inverse)
    Geometric {
        #[arg(default_value = "1")]
        state: Vec<String>,
        #[arg(long)]
        inverse: bool,
        /// Basis of the printed result
        #[arg(long, value_enum, default_value_t = BasisArg::DividedPower)]
        basis: BasisArg,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ZetaMethod {
    StateSum,
    Euler,
    Quantum,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MomentKind {
    Quadrature,
    Series,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FlavorArg {
    Create,
    Annihilate,
}

impl From<FlavorArg> for Flavor {
    fn from(f: FlavorArg) -> Self {
        match f {
            FlavorArg::Create => Flavor::Create,
            FlavorArg::Annihilate => Flavor::Annihilate,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum BasisArg {
    Number,
    DividedPower,
}

#[derive(Debug, Args)]
struct CoefficientArgs {
    /// `one`, `mod8`, or a period `c1,c2,...`
    #[arg(long, default_value = "one")]
    coefficients: String,
    /// Explicit table file with lines `E c_E`
    #[arg(long, conflicts_with = "coefficients")]
    table: Option<PathBuf>,
}

impl CoefficientArgs {
    fn spec(&self) -> Result<CoefficientSpec, CliError> {
        match &self.table {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
                Ok(CoefficientSpec::from_table_text(&text).map_err(Error::from)?)
            }
            None => Ok(self.coefficients.parse().map_err(Error::from)?),
        }
    }
}

#[derive(Debug)]
enum CliError {
    Lib(Error),
    /// Malformed command-line input not covered by the library parsers.
    Input(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Input(msg) => f.write_str(msg),
        }
    }
}

impl<E: Into<Error>> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError::Lib(e.into())
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(e) => e.class().exit_code() as u8,
            CliError::Input(_) => 2,
        }
    }
}

fn exponent(text: &str) -> Result<Exponent, CliError> {
    Ok(text.parse::<Exponent>()?)
}

#[derive(Serialize)]
struct TermOut {
    create: u32,
    annihilate: u32,
    coeff: String,
}

#[derive(Serialize)]
struct NormalOut {
    normal_form: String,
    terms: Vec<TermOut>,
    diagonal: Option<String>,
}

fn show_normal_form(config: &RunConfig, nf: NormalForm, require_diagonal: bool) -> Result<(), CliError> {
    let diagonal = match diagonal_poly(&nf) {
        Ok(poly) => Some(poly.to_string()),
        Err(e) if require_diagonal => return Err(e.into()),
        Err(_) => None,
    };
    let out = NormalOut {
        normal_form: nf.to_string(),
        terms: nf
            .terms()
            .map(|(j, k, c)| TermOut {
                create: j,
                annihilate: k,
                coeff: c.to_string(),
            })
            .collect(),
        diagonal,
    };
    emit(config.format, &out, |o| match &o.diagonal {
        Some(d) => format!("{}\ndiagonal: {d}", o.normal_form),
        None => o.normal_form.clone(),
    });
    Ok(())
}

/// Parses `n` or `n:coeff` terms into a divided-power vector.
fn parse_state(terms: &[String], cutoff: u64) -> Result<FockVec<BigRational>, CliError> {
    let mut v = FockVec::new(Basis::DividedPower, cutoff);
    for term in terms {
        let (index, coeff) = term.split_once(':').unwrap_or((term.as_str(), "1"));
        let bad = || CliError::Input(format!("invalid state term {term:?} (expected `n` or `n:coeff`)"));
        let n: u64 = index.trim().parse().map_err(|_| bad())?;
        let c: BigRational = coeff.trim().parse().map_err(|_| bad())?;
        v.add_to(n, c)?;
    }
    Ok(v)
}

#[derive(Serialize)]
struct AmpOut {
    n: u64,
    amp: String,
}

#[derive(Serialize)]
struct VectorOut {
    basis: String,
    cutoff: u64,
    amplitudes: Vec<AmpOut>,
}

fn render_vector<T: Amplitude>(v: &FockVec<T>) -> VectorOut {
    VectorOut {
        basis: v.basis().to_string(),
        cutoff: v.cutoff(),
        amplitudes: v
            .iter()
            .map(|(n, x)| AmpOut { n, amp: x.to_string() })
            .collect(),
    }
}

fn vector_text(v: &VectorOut) -> String {
    if v.amplitudes.is_empty() {
        return "0".into();
    }
    let name = |n: u64| if v.basis == "number" { format!("|{n}>") } else { format!("e_{n}") };
    let mut out = String::new();
    for (i, a) in v.amplitudes.iter().enumerate() {
        let (negative, magnitude) = match a.amp.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, a.amp.as_str()),
        };
        match (i, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if magnitude != "1" {
            out.push_str(&format!("({magnitude})*"));
        }
        out.push_str(&name(a.n));
    }
    out
}

fn run_pon(config: &RunConfig, action: &PonCommand) -> Result<(), CliError> {
    let n = config.cutoff;
    match action {
        PonCommand::Apply { flavor, m, state } => {
            let op = PonOp::new((*flavor).into(), *m)?;
            let v = parse_state(state, n)?;
            let image = apply_pon(&op, &v)?;
            emit(config.format, &render_vector(&image), vector_text);
        }
        PonCommand::Compose { flavor, indices } => {
            let flavor = Flavor::from(*flavor);
            let ops = indices
                .iter()
                .map(|&m| PonOp::new(flavor, m))
                .collect::<Result<Vec<_>, _>>()?;
            let op = compose_pons(flavor, &ops)?;
            #[derive(Serialize)]
            struct ComposeOut {
                operator: String,
                index: u64,
            }
            let out = ComposeOut {
                operator: op.to_string(),
                index: op.index(),
            };
            emit(config.format, &out, |o| o.operator.clone());
        }
        PonCommand::Geometric { state, inverse, basis } => {
            let v = parse_state(state, n)?;
            let image = if *inverse {
                geometric_annihilate_inverse(config.prime_bound(), &v, n)?
            } else {
                geometric_create(config.prime_bound(), &v, n)?
            };
            let out = match basis {
                BasisArg::DividedPower => render_vector(&image),
                BasisArg::Number => {
                    let surd = FockVec::from_amps(
                        Basis::DividedPower,
                        n,
                        image.iter().map(|(k, x)| (k, Surd::from_rational(x.clone()))),
                    )?;
                    render_vector(&basis_convert(&surd, Basis::Number)?)
                }
            };
            emit(config.format, &out, vector_text);
        }
    }
    Ok(())
}

fn parse_character(text: &str) -> Result<DirichletCharacter, CliError> {
    if text == "mod8" {
        return Ok(DirichletCharacter::mod8());
    }
    let bad = || CliError::Input(format!("invalid character {text:?}"));
    let (head, tail) = text.split_once(':').ok_or_else(bad)?;
    if head == "principal" {
        return Ok(DirichletCharacter::principal(tail.parse().map_err(|_| bad())?));
    }
    let modulus: u64 = head.parse().map_err(|_| bad())?;
    let values = tail
        .split(',')
        .map(|v| v.trim().parse::<i8>().map_err(|_| bad()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(DirichletCharacter::new(modulus, values)?)
}

#[derive(Serialize)]
struct MellinOut {
    #[serde(flatten)]
    numeric: Numeric,
    /// Integral divided by Gamma(s); the spectral eigenvalue n^-s.
    normalized_re: f64,
    normalized_im: f64,
}

#[derive(Serialize)]
struct GaussOut {
    #[serde(flatten)]
    numeric: Numeric,
    legendre_re: f64,
    legendre_im: f64,
    discrepancy: f64,
}

#[derive(Serialize)]
struct TowerOut {
    lhs: String,
    rhs: String,
    equal: bool,
    lhs_f64: f64,
    rhs_f64: f64,
}

#[derive(Serialize)]
struct CheckOut {
    suite: String,
    name: String,
    passed: bool,
    detail: String,
    elapsed_ms: f64,
}

/// Returns whether every verification passed (always true for other commands).
fn run(cli: &Cli) -> Result<bool, CliError> {
    let config = &cli.config;
    let prec = config.precision();
    match &cli.command {
        Command::NormalOrder { expr, diagonal } => {
            show_normal_form(config, normal_order(&parse(expr)?), *diagonal)?;
        }
        Command::Commutator { x, y, diagonal } => {
            show_normal_form(config, commutator(&parse(x)?, &parse(y)?), *diagonal)?;
        }
        Command::Zeta { s, method } => {
            let s = exponent(s)?;
            let label = s.to_string();
            let r = match method {
                ZetaMethod::StateSum => {
                    zeta_via_states(&SpectralParams::new(s, config.cutoff, prec, config.depth)?)?
                }
                ZetaMethod::Euler => euler_product(&s, config.prime_bound(), config.depth, prec)?,
                ZetaMethod::Quantum => {
                    let params = SpectralParams::new(s, config.cutoff, prec, config.depth)?;
                    zeta_quantum(&params, config.prime_bound())?
                }
            };
            let out = Numeric::from_hp(&r.value, r.tail_bound, r.terms_used, r.method.tag(), label);
            emit_numeric(config.format, &out);
        }
        Command::EulerFactor { p, s, quantum } => {
            let s = exponent(s)?;
            let (r, method) = if *quantum {
                (zeta_p_quantum(*p, &s, config.depth, prec)?, "quantum-factor")
            } else {
                (euler_factor(*p, &s, config.depth, prec)?, "euler-factor")
            };
            let out = Numeric::from_hp(&r.value, r.tail_bound, r.terms as u64 + 1, method, s.to_string());
            emit_numeric(config.format, &out);
        }
        Command::Pon { action } => run_pon(config, action)?,
        Command::Lfunction { s, character } => {
            let s = exponent(s)?;
            let chi = parse_character(character)?;
            let r = l_function(&s, &chi, config.cutoff)?;
            let out = Numeric::from_f64(r.value.re, r.value.im, r.tail_bound, r.terms, "l-series", s.to_string());
            emit_numeric(config.format, &out);
        }
        Command::Mellin { s, n } => {
            let s = exponent(s)?;
            let r = mellin_kernel(&s, *n, config.tolerance)?;
            let normalized = r.value / gamma(num_complex_of(&s));
            let out = MellinOut {
                numeric: Numeric::from_f64(
                    r.value.re,
                    r.value.im,
                    r.error_estimate,
                    r.evaluations as u64,
                    "mellin-quadrature",
                    s.to_string(),
                ),
                normalized_re: normalized.re,
                normalized_im: normalized.im,
            };
            emit(config.format, &out, |o| {
                format!("{}\nnormalized: {} + {}i", o.numeric.text(), o.normalized_re, o.normalized_im)
            });
        }
        Command::Moment { s, coefficients, method } => {
            let s = exponent(s)?;
            let method = match method {
                MomentKind::Quadrature => MomentMethod::Quadrature,
                MomentKind::Series => MomentMethod::Series,
            };
            let mut spec = MomentSpec::new(coefficients.spec()?, s.clone(), method);
            spec.tolerance = config.tolerance;
            let r = k_moment(&spec)?;
            let out = Numeric::from_f64(r.value.re, r.value.im, r.error_estimate, 0, &format!("moment-{}", r.method), s.to_string());
            emit_numeric(config.format, &out);
        }
        Command::Partition { beta, coefficients } => {
            let r = partition_function(&coefficients.spec()?, *beta, config.cutoff)?;
            let out = Numeric::from_f64(r.value, 0.0, r.tail_bound, r.terms, "partition", beta.to_string());
            emit_numeric(config.format, &out);
        }
        Command::Gauss { p } => {
            let g = gauss_sum(*p)?;
            let v = g.value();
            let out = GaussOut {
                numeric: Numeric::from_f64(v.re, v.im, 0.0, *p, "gauss-sum", p.to_string()),
                legendre_re: g.legendre.re,
                legendre_im: g.legendre.im,
                discrepancy: g.discrepancy(),
            };
            emit(config.format, &out, |o| format!("{}\ndiscrepancy: {:e}", o.numeric.text(), o.discrepancy));
        }
        Command::Absder { p, n } => {
            let value = absolute_derivation(*p, *n)?;
            #[derive(Serialize)]
            struct AbsderOut {
                p: u64,
                n: u64,
                value: u128,
            }
            emit(config.format, &AbsderOut { p: *p, n: *n, value }, |o| o.value.to_string());
        }
        Command::Tower { m, ell, s } => {
            let s = exponent(s)?;
            if !s.is_real() {
                return Err(CliError::Input("the exact tower relation needs a real s".into()));
            }
            let (lhs, rhs) = power_tower_relation(*m, *ell, s.re())?;
            let out = TowerOut {
                equal: lhs == rhs,
                lhs_f64: lhs.to_f64(),
                rhs_f64: rhs.to_f64(),
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            };
            emit(config.format, &out, |o| format!("lhs: {}\nrhs: {}\nequal: {}", o.lhs, o.rhs, o.equal));
        }
        Command::Verify { suite, seed } => {
            let results = if suite == "all" {
                verify::run_all(*seed)
            } else {
                let suite: Suite = suite.parse().map_err(CliError::Input)?;
                verify::run(suite, *seed)
            };
            let all_passed = results.iter().all(|r| r.passed);
            let out: Vec<CheckOut> = results
                .into_iter()
                .map(|r| CheckOut {
                    suite: r.suite.to_string(),
                    name: r.name.to_string(),
                    passed: r.passed,
                    detail: r.detail,
                    elapsed_ms: r.elapsed.as_secs_f64() * 1e3,
                })
                .collect();
            emit(config.format, &out, |checks| {
                checks
                    .iter()
                    .map(|c| {
                        let verdict = if c.passed { "PASS" } else { "FAIL" };
                        format!("{verdict} {}: {} ({})", c.suite, c.name, c.detail)
                    })
                    .collect::<Vec<_>>()
                    .join("\n")
            });
            return Ok(all_passed);
        }
    }
    Ok(true)
}

fn num_complex_of(s: &Exponent) -> num_complex::Complex64 {
    num_complex::Complex64::new(s.re_f64(), s.im_f64())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
