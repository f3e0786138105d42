//! The spectral operator `(a†a)^{−s}` and operator representations of `ζ(s)`,
//! its Euler factors and partial Euler products.
//!
//! `(a†a)^{−s}` acts as `n^{−s}` on the `n`-th basis vector and annihilates
//! the vacuum. It is diagonal in both the number and divided-power bases.
//! All sums run in ascending index order so that results are reproducible
//! bit for bit at a given precision.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::primes::{is_prime, primes_up_to};
use crate::arith::{factorial, Exponent, HpComplex, PowerValue, Precision};
use crate::fock::{apply, apply_bra, Basis, FockError, FockVec};
use crate::pon::{geometric_annihilate_bra, geometric_create, geometric_series, PonError};
use crate::special::{exp_sinh, tanh_sinh, QuadratureError, QuadratureResult};
use crate::weyl::NormalForm;

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum ZetaError {
    #[error("series diverges for s = {s}: {reason}")]
    DivergentParameters { s: String, reason: &'static str },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime bound {prime_bound} is smaller than the cutoff {cutoff}")]
    PrimeBoundTooSmall { prime_bound: u64, cutoff: u64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
    #[error(transparent)]
    Fock(#[from] FockError),
    #[error(transparent)]
    Pon(PonError),
}

impl From<PonError> for ZetaError {
    fn from(e: PonError) -> Self {
        match e {
            PonError::PrimeBoundTooSmall { prime_bound, cutoff } => {
                ZetaError::PrimeBoundTooSmall { prime_bound, cutoff }
            }
            PonError::Fock(f) => ZetaError::Fock(f),
            other => ZetaError::Pon(other),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    StateSum,
    EulerProduct,
    QuantumEuler,
}

impl Method {
    pub fn tag(self) -> &'static str {
        match self {
            Method::StateSum => "state-sum",
            Method::EulerProduct => "euler-product",
            Method::QuantumEuler => "quantum-euler",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Inputs shared by the `ζ` evaluators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralParams {
    s: Exponent,
    cutoff: u64,
    precision: Precision,
    depth: u32,
}

impl SpectralParams {
    /// Requires `Re(s) > 1`, `cutoff ≥ 1`, `depth ≥ 1`.
    pub fn new(s: Exponent, cutoff: u64, precision: Precision, depth: u32) -> Result<Self, ZetaError> {
        require_re_above(&s, 1, "the Dirichlet series needs Re(s) > 1")?;
        if cutoff == 0 {
            return Err(ZetaError::InvalidParameter("cutoff must be at least 1"));
        }
        if depth == 0 {
            return Err(ZetaError::InvalidParameter("depth must be at least 1"));
        }
        Ok(SpectralParams {
            s,
            cutoff,
            precision,
            depth,
        })
    }

    pub fn s(&self) -> &Exponent {
        &self.s
    }

    pub fn cutoff(&self) -> u64 {
        self.cutoff
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }
}

#[derive(Clone, Debug)]
pub struct ZetaResult {
    pub value: HpComplex,
    pub terms_used: u64,
    /// Upper bound on `|value − ζ(s)|`.
    pub tail_bound: f64,
    pub method: Method,
}

/// A single Euler factor together with its truncation bound.
#[derive(Clone, Debug)]
pub struct FactorResult {
    pub value: HpComplex,
    /// Number of geometric terms summed (`k = 0..terms`).
    pub terms: u32,
    /// Upper bound on `|value − 1/(1 − p^{−s})|`.
    pub tail_bound: f64,
}

fn require_re_above(s: &Exponent, bound: i64, reason: &'static str) -> Result<(), ZetaError> {
    if s.re() > &BigRational::from_integer(bound.into()) {
        Ok(())
    } else {
        Err(ZetaError::DivergentParameters {
            s: s.to_string(),
            reason,
        })
    }
}

fn require_prime(p: u64) -> Result<(), ZetaError> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(ZetaError::NotPrime(p))
    }
}

/// `(a†a)^{−s}` on a vector with exact amplitudes, producing high-precision amplitudes.
pub fn spectral_power(
    s: &Exponent,
    v: &FockVec<BigRational>,
    prec: Precision,
) -> Result<FockVec<HpComplex>, FockError> {
    FockVec::from_amps(
        v.basis(),
        v.cutoff(),
        v.iter().filter(|&(n, _)| n > 0).map(|(n, x)| {
            let eig = HpComplex::int_pow_neg(n, s, prec);
            let amp = if x.is_one() { eig } else { eig.mul_rational(x) };
            (n, amp)
        }),
    )
}

/// `(a†a)^{−k}` for an integer `k`, exactly.
pub fn spectral_power_exact(k: i64, v: &FockVec<BigRational>) -> FockVec<BigRational> {
    let mut out = FockVec::new(v.basis(), v.cutoff());
    for (n, x) in v.iter().filter(|&(n, _)| n > 0) {
        let eig = BigRational::from_integer(BigInt::from(n)).pow(-(k as i32));
        out.add_to(n, x * eig).expect("index already within cutoff");
    }
    out
}

/// `Σ_n bra_n · ket_n`, ascending `n`.
fn pair_hp(bra: &FockVec<BigRational>, ket: &FockVec<HpComplex>, prec: Precision) -> HpComplex {
    let mut acc = HpComplex::zero(prec);
    for (n, x) in bra.iter() {
        if let Some(y) = ket.get(n) {
            let term = if x.is_one() { y.clone() } else { y.mul_rational(x) };
            acc = acc.add(&term);
        }
    }
    acc
}

fn ladder(j: u32, k: u32) -> NormalForm {
    NormalForm::monomial(j, k, BigRational::one())
}

fn vacuum(cutoff: u64) -> Result<FockVec<BigRational>, FockError> {
    FockVec::basis_vector(Basis::DividedPower, 0, cutoff)
}

/// `∫_0^∞ β^{s−1} e^{−βn} dβ = Γ(s) n^{−s}`, by quadrature split at `β = 1`.
pub fn mellin_kernel(s: &Exponent, n: u64, rel_tol: f64) -> Result<QuadratureResult, ZetaError> {
    require_re_above(s, 0, "the Mellin integral needs Re(s) > 0")?;
    if n == 0 {
        return Err(ZetaError::InvalidParameter("the Mellin kernel needs n >= 1"));
    }
    let s = Complex64::new(s.re_f64(), s.im_f64());
    let nf = n as f64;
    let f = |beta: f64| Complex64::new(beta, 0.0).powc(s - 1.0) * (-beta * nf).exp();
    let low = tanh_sinh(|b, _, _| f(b), 0.0, 1.0, rel_tol)?;
    let high = exp_sinh(|b, _| f(b), 1.0, rel_tol)?;
    Ok(QuadratureResult {
        value: low.value + high.value,
        error_estimate: low.error_estimate + high.error_estimate,
        evaluations: low.evaluations + high.evaluations,
    })
}

/// `⟨n| ∫ β^{s−1} e^{−β a†a} dβ |m⟩`; off-diagonal elements vanish by orthogonality.
pub fn mellin_matrix_element(
    s: &Exponent,
    n: u64,
    m: u64,
    rel_tol: f64,
) -> Result<Complex64, ZetaError> {
    if n != m {
        return Ok(Complex64::new(0.0, 0.0));
    }
    Ok(mellin_kernel(s, n, rel_tol)?.value)
}

/// `Σ_{n>N} n^{−σ} ≤ N^{1−σ}/(σ−1)`.
pub fn state_sum_tail(sigma: f64, cutoff: u64) -> f64 {
    (cutoff as f64).powf(1.0 - sigma) / (sigma - 1.0)
}

/// `⟨0| a/(1−a) (a†a)^{−s} (e^{a†} − 1) |0⟩` truncated at `N`.
///
/// The ket is built from the Taylor recursion `t_n = a† t_{n−1} / n`, the
/// bra from repeated right action of `a` on `⟨0|`.
pub fn zeta_via_states(params: &SpectralParams) -> Result<ZetaResult, ZetaError> {
    let n_max = params.cutoff;
    let create = ladder(1, 0);
    let annihilate = ladder(0, 1);

    let mut ket = FockVec::new(Basis::DividedPower, n_max);
    let mut term = vacuum(n_max)?;
    for n in 1..=n_max {
        term = apply(&create, &term)?.scale(&BigRational::new(1.into(), n.into()));
        for (k, x) in term.iter() {
            ket.add_to(k, x.clone())?;
        }
    }

    let mut bra = FockVec::new(Basis::DividedPower, n_max);
    let mut word = vacuum(n_max)?;
    for _ in 1..=n_max {
        word = apply_bra(&annihilate, &word)?;
        for (l, x) in word.iter() {
            bra.add_to(l, x.clone())?;
        }
    }

    let image = spectral_power(&params.s, &ket, params.precision)?;
    Ok(ZetaResult {
        value: pair_hp(&bra, &image, params.precision),
        terms_used: n_max,
        tail_bound: state_sum_tail(params.s.re_f64(), n_max),
        method: Method::StateSum,
    })
}

/// Largest `K' ≤ K` with `p^{K'}` representable, and `p^{K'}`.
fn representable_depth(p: u64, depth: u32) -> (u32, u64) {
    let mut k = 0;
    let mut power = 1u64;
    while k < depth {
        match power.checked_mul(p) {
            Some(next) => {
                power = next;
                k += 1;
            }
            None => break,
        }
    }
    (k, power)
}

fn geometric_tail(p: u64, sigma: f64, terms: u32) -> f64 {
    let r = (p as f64).powf(-sigma);
    r.powi(terms as i32 + 1) / (1.0 - r)
}

/// `(1/p!) ⟨0| a_p (Σ_{k=0..K} (a†a)^{−ks}) a_p† |0⟩ = Σ_{k=0..K} p^{−ks}`.
pub fn euler_factor(p: u64, s: &Exponent, depth: u32, prec: Precision) -> Result<FactorResult, ZetaError> {
    require_prime(p)?;
    require_re_above(s, 0, "the Euler factor needs |p^-s| < 1")?;
    let pu = u32::try_from(p).map_err(|_| ZetaError::InvalidParameter("prime too large for a p-on"))?;
    let cutoff = p;
    // a_p†|0⟩ = p! e_p; the prefactor 1/p! is applied exactly.
    let ket = apply(&ladder(pu, 0), &vacuum(cutoff)?)?;
    let ket = ket.scale(&BigRational::new(1.into(), factorial(p).into()));
    let bra = apply_bra(&ladder(0, pu), &vacuum(cutoff)?)?;

    let mut value = HpComplex::zero(prec);
    for k in 0..=depth {
        let ks = s.scale(&BigRational::from_integer(k.into()));
        let image = if k == 0 {
            FockVec::from_amps(
                ket.basis(),
                cutoff,
                ket.iter().map(|(n, x)| (n, HpComplex::from_rational(x, prec))),
            )?
        } else {
            spectral_power(&ks, &ket, prec)?
        };
        value = value.add(&pair_hp(&bra, &image, prec));
    }
    Ok(FactorResult {
        value,
        terms: depth,
        tail_bound: geometric_tail(p, s.re_f64(), depth),
    })
}

/// Exact `Σ_{k=0..K} p^{−ks}` for an integer `s`, by the same operator route.
pub fn euler_factor_exact(p: u64, s: i64, depth: u32) -> Result<BigRational, ZetaError> {
    require_prime(p)?;
    if s <= 0 {
        return Err(ZetaError::DivergentParameters {
            s: s.to_string(),
            reason: "the Euler factor needs |p^-s| < 1",
        });
    }
    let pu = u32::try_from(p).map_err(|_| ZetaError::InvalidParameter("prime too large for a p-on"))?;
    let ket = apply(&ladder(pu, 0), &vacuum(p)?)?;
    let bra = apply_bra(&ladder(0, pu), &vacuum(p)?)?;
    let mut total = BigRational::zero();
    for k in 0..=depth as i64 {
        let image = spectral_power_exact(k * s, &ket);
        total += crate::fock::pair(&bra, &image)?;
    }
    Ok(total / BigRational::from_integer(factorial(p).into()))
}

/// Bound on `|∏_{p≤P} f_p − ζ(s)|` given per-factor errors `eps`.
fn product_tail(primes: &[u64], eps: &[f64], sigma: f64, prime_bound: u64) -> f64 {
    let bounds: Vec<f64> = primes
        .iter()
        .map(|&p| 1.0 / (1.0 - (p as f64).powf(-sigma)))
        .collect();
    let full: f64 = bounds.iter().product();
    let truncation: f64 = eps
        .iter()
        .zip(&bounds)
        .map(|(e, b)| e * full / b)
        .sum();
    // Primes above P: ∏_{p>P} 1/(1−p^{−σ}) − 1 ≤ exp(T / (1 − (P+1)^{−σ})) − 1
    // with T = Σ_{n>P} n^{−σ} ≤ P^{1−σ}/(σ−1).
    let p = prime_bound.max(1);
    let t = state_sum_tail(sigma, p);
    let log_rest = t / (1.0 - ((p + 1) as f64).powf(-sigma));
    truncation + full * log_rest.exp_m1()
}

/// `∏_{p ≤ P} ζ_p(s)` with each factor from [`euler_factor`], ascending `p`.
pub fn euler_product(s: &Exponent, prime_bound: u64, depth: u32, prec: Precision) -> Result<ZetaResult, ZetaError> {
    require_re_above(s, 1, "the Euler product needs Re(s) > 1")?;
    let primes = primes_up_to(prime_bound);
    let mut value = HpComplex::one(prec);
    let mut eps = Vec::with_capacity(primes.len());
    for &p in &primes {
        let factor = euler_factor(p, s, depth, prec)?;
        value = value.mul(&factor.value);
        eps.push(factor.tail_bound);
    }
    Ok(ZetaResult {
        value,
        terms_used: primes.len() as u64,
        tail_bound: product_tail(&primes, &eps, s.re_f64(), prime_bound),
        method: Method::EulerProduct,
    })
}

/// Exact partial Euler product for integer `s`, multiplying factors in the given order.
pub fn euler_product_exact(s: i64, primes: &[u64], depth: u32) -> Result<BigRational, ZetaError> {
    primes
        .iter()
        .try_fold(BigRational::one(), |acc, &p| Ok(acc * euler_factor_exact(p, s, depth)?))
}

/// `⟨0| a (1/(1−A_p)) (a†a)^{−s} (1/(1−A_p†)) a† |0⟩` with both geometric
/// series expanded through `A_{p^k}`, `k ≤ depth`.
///
/// Indices are limited to `u64`, so very deep series for large `p` stop
/// early; the returned `terms` and `tail_bound` reflect what was summed.
pub fn zeta_p_quantum(p: u64, s: &Exponent, depth: u32, prec: Precision) -> Result<FactorResult, ZetaError> {
    require_prime(p)?;
    require_re_above(s, 0, "the Euler factor needs |p^-s| < 1")?;
    let (terms, cutoff) = representable_depth(p, depth);
    let e1 = apply(&ladder(1, 0), &vacuum(cutoff)?)?;
    let f1 = apply_bra(&ladder(0, 1), &vacuum(cutoff)?)?;
    let ket = geometric_series(&[p], &e1, cutoff)?;
    // f_ℓ ∘ A_m = f_{ℓm}, so the bra series uses the same index map.
    let bra = geometric_series(&[p], &f1, cutoff)?;
    let image = spectral_power(s, &ket, prec)?;
    Ok(FactorResult {
        value: pair_hp(&bra, &image, prec),
        terms,
        tail_bound: geometric_tail(p, s.re_f64(), terms),
    })
}

/// `⟨0| a ∏_q (1/(1−A_q)) (a†a)^{−s} ∏_p (1/(1−A_p†)) a† |0⟩` truncated at `N`,
/// with both products over primes `≤ P`.
pub fn zeta_quantum(params: &SpectralParams, prime_bound: u64) -> Result<ZetaResult, ZetaError> {
    let n_max = params.cutoff;
    if prime_bound < n_max {
        return Err(ZetaError::PrimeBoundTooSmall {
            prime_bound,
            cutoff: n_max,
        });
    }
    let e1 = apply(&ladder(1, 0), &vacuum(n_max)?)?;
    let f1 = apply_bra(&ladder(0, 1), &vacuum(n_max)?)?;
    let ket = geometric_create(prime_bound, &e1, n_max)?;
    let bra = geometric_annihilate_bra(prime_bound, &f1, n_max)?;
    let image = spectral_power(&params.s, &ket, params.precision)?;
    Ok(ZetaResult {
        value: pair_hp(&bra, &image, params.precision),
        terms_used: n_max,
        tail_bound: state_sum_tail(params.s.re_f64(), n_max),
        method: Method::QuantumEuler,
    })
}

/// Both sides of `(1/M!)⟨0|a_M (a†a)^{−s} a_M†|0⟩ = (1/m!)⟨0|a_m (a†a)^{−sℓ} a_m†|0⟩`
/// with `M = m^ℓ`, exactly, for real rational `s`.
pub fn power_tower_relation(m: u64, ell: u32, s: &BigRational) -> Result<(PowerValue, PowerValue), ZetaError> {
    if m < 2 || ell == 0 {
        return Err(ZetaError::InvalidParameter("the tower needs m >= 2 and l >= 1"));
    }
    if !s.is_positive() {
        return Err(ZetaError::DivergentParameters {
            s: s.to_string(),
            reason: "the tower relation needs Re(s) > 0",
        });
    }
    let big = m
        .checked_pow(ell)
        .ok_or(ZetaError::InvalidParameter("m^l overflows"))?;
    let lhs = tower_side(big, s)?;
    let rhs = tower_side(m, &(s * BigRational::from_integer(ell.into())))?;
    Ok((lhs, rhs))
}

/// `(1/M!)⟨0|a_M (a†a)^{−t} a_M†|0⟩` as an exact power.
fn tower_side(big: u64, t: &BigRational) -> Result<PowerValue, ZetaError> {
    let order = u32::try_from(big).map_err(|_| ZetaError::InvalidParameter("p-on order too large"))?;
    let ket = apply(&ladder(order, 0), &vacuum(big)?)?;
    let bra = apply_bra(&ladder(0, order), &vacuum(big)?)?;
    let weight = crate::fock::pair(&bra, &ket)?;
    let fact = BigInt::from(factorial(big));
    // The weight is an integer multiple of M!; exact integer division avoids a huge gcd.
    let normalized = if weight.is_integer() && (weight.numer() % &fact).is_zero() {
        BigRational::from_integer(weight.numer() / &fact)
    } else {
        weight / BigRational::from_integer(fact)
    };
    Ok(PowerValue::power(big, &-t).scale(&normalized))
}

/// High-precision version of [`power_tower_relation`] for complex `s`.
pub fn power_tower_relation_hp(
    m: u64,
    ell: u32,
    s: &Exponent,
    prec: Precision,
) -> Result<(HpComplex, HpComplex), ZetaError> {
    if m < 2 || ell == 0 {
        return Err(ZetaError::InvalidParameter("the tower needs m >= 2 and l >= 1"));
    }
    require_re_above(s, 0, "the tower relation needs Re(s) > 0")?;
    let big = m
        .checked_pow(ell)
        .ok_or(ZetaError::InvalidParameter("m^l overflows"))?;
    let lhs = HpComplex::int_pow_neg(big, s, prec);
    let rhs = HpComplex::int_pow_neg(m, &s.scale(&BigRational::from_integer(ell.into())), prec);
    Ok((lhs, rhs))
}
