//! Invariant suites. Each check compares a library route against an
//! independent oracle and reports the first counterexample on failure.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::appendix::{
    absolute_derivation, character_mod8, gauss_sum, k_moment, l_function, CoefficientSpec,
    DirichletCharacter, MomentMethod, MomentSpec,
};
use crate::arith::primes::{is_prime, mobius, primes_up_to};
use crate::arith::{factorial, Exponent, PowerValue, Precision, Surd};
use crate::fock::{
    apply, basis_convert, from_monomial, matrix_element, to_monomial, Basis, FockVec,
    TruncatedMatrix,
};
use crate::pon::{
    apply_pon, compose_pons, geometric_annihilate_inverse, geometric_create, Flavor, PonOp,
};
use crate::special::{gamma, zeta};
use crate::weyl::random::{random_expr, random_word};
use crate::weyl::{commutator, diagonal_poly, normal_order, DiagonalPoly, Expr, NormalForm};
use crate::zeta::{
    euler_factor, euler_factor_exact, euler_product, euler_product_exact, mellin_kernel,
    power_tower_relation, zeta_p_quantum, zeta_quantum, zeta_via_states, SpectralParams,
};

/// Seed used by the CLI and the test suite.
pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Weyl,
    Pon,
    Zeta,
    Appendix,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Weyl, Suite::Pon, Suite::Zeta, Suite::Appendix];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Weyl => "weyl",
            Suite::Pon => "pon",
            Suite::Zeta => "zeta",
            Suite::Appendix => "appendix",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub suite: Suite,
    pub name: &'static str,
    pub passed: bool,
    /// Summary on success, first counterexample on failure.
    pub detail: String,
    pub elapsed: Duration,
}

type Outcome = Result<String, String>;
type Check = fn(&mut ChaCha8Rng) -> Outcome;

fn record(suite: Suite, name: &'static str, outcome: Outcome, elapsed: Duration) -> CheckResult {
    let (passed, detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CheckResult {
        suite,
        name,
        passed,
        detail,
        elapsed,
    }
}

fn ensure(cond: bool, counterexample: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(counterexample())
    }
}

fn err_string<E: fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Runs one suite with the given seed for its random cases.
pub fn run(suite: Suite, seed: u64) -> Vec<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let checks: Vec<(&'static str, Check)> = match suite {
        Suite::Weyl => vec![
            ("canonical relations", |_| weyl_canonical()),
            ("squared and cubed p-on commutators", |_| weyl_low_order()),
            ("diagonal p-on products, l <= 10", |_| weyl_diagonal_products()),
            ("number-operator commutators, l <= 10", |_| weyl_number_commutators()),
            ("[a, ad^l] = l ad^(l-1), l <= 10", |_| weyl_ladder_induction()),
            ("normal order is idempotent", weyl_idempotent),
            ("rewrite product equals PBW product", weyl_homomorphism),
            ("truncated-matrix oracle, N = 40", weyl_matrix_oracle),
        ],
        Suite::Pon => vec![
            ("composition examples", |_| pon_compose()),
            ("commutativity, m, n <= 50", pon_commutativity),
            ("power law, k <= 4", pon_power_law),
            ("divisibility kernel", |_| pon_kernel()),
            ("monomial-basis definition", pon_monomial_definition),
            ("geometric product at N = P = 100", |_| pon_geometric()),
            ("Mobius expansion of the inverse", |_| pon_mobius()),
            ("number-basis normalization", |_| pon_number_basis()),
            ("multiplication by x^p", fock_monomial),
            ("ladder adjointness", |_| fock_adjoint()),
        ],
        Suite::Zeta => vec![
            ("state sums within tail bounds", |_| zeta_state_sums()),
            ("state sums increase with N", |_| zeta_monotone_states()),
            ("Mellin kernel normalization", |_| zeta_mellin()),
            ("Euler factors, p <= 50", |_| zeta_factors()),
            ("exact Euler factors", |_| zeta_exact_factors()),
            ("quantum factors equal Euler factors", |_| zeta_quantum_factors()),
            ("product ordering", zeta_product_order),
            ("partial products bounded and increasing", |_| zeta_partial_products()),
            ("quantum product equals state sum", |_| zeta_quantum_product()),
            ("power tower, m <= 10, l <= 4", |_| zeta_power_tower()),
        ],
        Suite::Appendix => vec![
            ("moment quadrature against zeta", |_| appendix_moments()),
            ("mod-8 moment identity", |_| appendix_mod8_moment()),
            ("mod-8 coefficient table", |_| appendix_table()),
            ("character periodicity and multiplicativity", |_| appendix_character()),
            ("L(2, chi_8) closed form", |_| appendix_l_value()),
            ("Leibniz rule", appendix_leibniz),
            ("Gauss sums, p < 200", |_| appendix_gauss()),
            ("moment and state sum agree", |_| appendix_consistency()),
        ],
    };
    checks
        .into_iter()
        .map(|(name, check)| {
            let start = Instant::now();
            let outcome = check(&mut rng);
            record(suite, name, outcome, start.elapsed())
        })
        .collect()
}

/// Runs every suite.
pub fn run_all(seed: u64) -> Vec<CheckResult> {
    Suite::ALL.into_iter().flat_map(|s| run(s, seed)).collect()
}

fn int(k: i64) -> BigRational {
    BigRational::from_integer(k.into())
}

fn nf_of(text: &str) -> NormalForm {
    normal_order(&crate::weyl::parse(text).expect("built-in expression"))
}

// ---- weyl ----

fn weyl_canonical() -> Outcome {
    let cases = [
        (Expr::a(), Expr::ad(), NormalForm::one()),
        (Expr::ad(), Expr::ad(), NormalForm::zero()),
        (Expr::a(), Expr::a(), NormalForm::zero()),
        (Expr::n(), Expr::ad(), nf_of("ad")),
        (Expr::n(), Expr::a(), nf_of("-1*a")),
    ];
    for (x, y, want) in cases {
        let got = commutator(&x, &y);
        ensure(got == want, || format!("[{x}, {y}] = {got}, expected {want}"))?;
    }
    Ok("[a, ad] = 1, [n, ad] = ad, [n, a] = -a".into())
}

fn weyl_low_order() -> Outcome {
    let cases = [(2, vec![2, 4]), (3, vec![6, 9, 9])];
    for (ell, coeffs) in cases {
        let nf = commutator(&Expr::a_pow(ell), &Expr::ad_pow(ell));
        let want = DiagonalPoly::new(coeffs.into_iter().map(int).collect());
        let got = diagonal_poly(&nf).map_err(err_string)?;
        ensure(got == want, || format!("[a_{ell}, a_{ell}†] = {got}, expected {want}"))?;
    }
    Ok("[a_2, a_2†] = 4n+2, [a_3, a_3†] = 9n^2+9n+6".into())
}

/// `∏_{i ∈ shifts} (n + i)` evaluated directly.
fn shifted_product(n: u64, shifts: impl Iterator<Item = i64>) -> BigRational {
    shifts.map(|i| int(n as i64 + i)).fold(BigRational::one(), |a, b| a * b)
}

fn weyl_diagonal_products() -> Outcome {
    for ell in 1..=10u32 {
        let l = ell as i64;
        let lowering = normal_order(&Expr::a_pow(ell).mul(Expr::ad_pow(ell)));
        let raising = normal_order(&Expr::ad_pow(ell).mul(Expr::a_pow(ell)));
        let cases = [
            (&lowering, DiagonalPoly::product_of_shifts(1..=l), (1..=l).collect::<Vec<_>>()),
            (&raising, DiagonalPoly::product_of_shifts((0..l).map(|i| -i)), (0..l).map(|i| -i).collect()),
        ];
        for (nf, want, shifts) in cases {
            let got = diagonal_poly(nf).map_err(err_string)?;
            ensure(got == want, || format!("l = {ell}: {got}, expected {want}"))?;
            // Diagonal matrix elements from the ladder action.
            for n in 0..=12u64 {
                let m: BigRational =
                    matrix_element(n, nf, n, 12 + ell as u64).map_err(err_string)?;
                let direct = shifted_product(n, shifts.iter().copied());
                ensure(m == direct, || format!("l = {ell}, <{n}|..|{n}> = {m}, expected {direct}"))?;
            }
        }
    }
    Ok("a_l a_l† = (n+1)...(n+l) and a_l† a_l = n(n-1)...(n-l+1)".into())
}

fn weyl_number_commutators() -> Outcome {
    for ell in 1..=10u32 {
        let l = int(ell as i64);
        let up = commutator(&Expr::n(), &Expr::ad_pow(ell));
        let want = NormalForm::monomial(ell, 0, l.clone());
        ensure(up == want, || format!("[n, a_{ell}†] = {up}"))?;
        let down = commutator(&Expr::n(), &Expr::a_pow(ell));
        let want = NormalForm::monomial(0, ell, -l);
        ensure(down == want, || format!("[n, a_{ell}] = {down}"))?;
    }
    Ok("[n, a_l†] = l a_l†, [n, a_l] = -l a_l".into())
}

fn weyl_ladder_induction() -> Outcome {
    for ell in 1..=10u32 {
        let got = commutator(&Expr::a(), &Expr::ad_pow(ell));
        let want = NormalForm::monomial(ell - 1, 0, int(ell as i64));
        ensure(got == want, || format!("[a, ad^{ell}] = {got}"))?;
    }
    Ok("holds for l = 1..10".into())
}

const RANDOM_CASES: usize = 200;

fn weyl_idempotent(rng: &mut ChaCha8Rng) -> Outcome {
    for _ in 0..RANDOM_CASES {
        let expr = random_expr(rng, 6);
        let nf = normal_order(&expr);
        let again = normal_order(&nf.to_expr());
        ensure(again == nf, || format!("{expr}: {nf} then {again}"))?;
    }
    Ok(format!("{RANDOM_CASES} random expressions"))
}

fn weyl_homomorphism(rng: &mut ChaCha8Rng) -> Outcome {
    for _ in 0..RANDOM_CASES {
        let x = random_expr(rng, 3);
        let y = random_expr(rng, 3);
        let product = normal_order(&x.clone().mul(y.clone()));
        let (nx, ny) = (normal_order(&x), normal_order(&y));
        let pbw = nx.pbw_mul(&ny);
        let rewrite = nx.rewrite_mul(&ny);
        ensure(product == pbw && pbw == rewrite, || {
            format!("({x})*({y}): tree {product}, pbw {pbw}, rewrite {rewrite}")
        })?;
    }
    Ok(format!("{RANDOM_CASES} random pairs of degree <= 3 each"))
}

fn matrix_oracle_case(expr: &Expr, cutoff: u64) -> Result<usize, String> {
    let nf = normal_order(expr);
    let canonical =
        TruncatedMatrix::<BigRational>::from_normal_form(&nf, cutoff, Basis::DividedPower).map_err(err_string)?;
    let generators = TruncatedMatrix::<BigRational>::from_expr_generators(expr, cutoff, Basis::DividedPower)
        .map_err(err_string)?;
    match canonical.first_mismatch(&generators) {
        None => Ok(generators.overflow_count()),
        Some((m, n)) => Err(format!(
            "{expr}: entry ({m}, {n}) is {} from the normal form but {} from generators",
            canonical.entry(m, n),
            generators.entry(m, n)
        )),
    }
}

fn weyl_matrix_oracle(rng: &mut ChaCha8Rng) -> Outcome {
    let mut skipped = 0;
    for i in 0..RANDOM_CASES {
        let expr = if i % 2 == 0 { random_word(rng, 6) } else { random_expr(rng, 6) };
        skipped += matrix_oracle_case(&expr, 40)?;
    }
    Ok(format!("{RANDOM_CASES} random expressions, {skipped} overflow columns skipped"))
}

// ---- pon ----

fn pon(flavor: Flavor, m: u64) -> PonOp {
    PonOp::new(flavor, m).expect("index is positive")
}

fn pon_compose() -> Outcome {
    let c = |m| pon(Flavor::Create, m);
    let cases: [(Vec<PonOp>, u64); 3] = [(vec![c(2), c(3)], 6), (vec![c(2), c(2)], 4), (vec![], 1)];
    for (ops, want) in cases {
        let got = compose_pons(Flavor::Create, &ops).map_err(err_string)?;
        ensure(got.index() == want, || format!("{ops:?} composed to {got}"))?;
    }
    Ok("A_2† A_3† = A_6†, A_2† A_2† = A_4†, empty word = A_1".into())
}

fn random_dp_vector(rng: &mut ChaCha8Rng, max_index: u64, cutoff: u64) -> FockVec<BigRational> {
    let mut v = FockVec::new(Basis::DividedPower, cutoff);
    for _ in 0..rng.gen_range(1..=5) {
        let n = rng.gen_range(1..=max_index.max(1));
        let c = rng.gen_range(-9i64..=9);
        v.add_to(n, int(c)).expect("index within cutoff");
    }
    v
}

fn pon_commutativity(rng: &mut ChaCha8Rng) -> Outcome {
    const CUTOFF: u64 = 200;
    for _ in 0..RANDOM_CASES {
        let (m, n) = (rng.gen_range(1..=50u64), rng.gen_range(1..=50u64));
        let v = random_dp_vector(rng, (CUTOFF / (m * n)).max(1), CUTOFF.max(m * n));
        for flavor in [Flavor::Create, Flavor::Annihilate] {
            let mn = apply_pon(&pon(flavor, m), &apply_pon(&pon(flavor, n), &v).map_err(err_string)?)
                .map_err(err_string)?;
            let nm = apply_pon(&pon(flavor, n), &apply_pon(&pon(flavor, m), &v).map_err(err_string)?)
                .map_err(err_string)?;
            let joint = apply_pon(&pon(flavor, m * n), &v).map_err(err_string)?;
            ensure(mn == joint && nm == joint, || format!("{flavor:?}, m = {m}, n = {n}, v = {v:?}"))?;
        }
    }
    Ok(format!("{RANDOM_CASES} random (m, n, v), both flavors"))
}

fn pon_power_law(rng: &mut ChaCha8Rng) -> Outcome {
    const CUTOFF: u64 = 10_000;
    for _ in 0..RANDOM_CASES {
        let m = rng.gen_range(1..=10u64);
        let k = rng.gen_range(1..=4u32);
        let big = m.pow(k);
        let v = random_dp_vector(rng, (CUTOFF / big).max(1), CUTOFF);
        for flavor in [Flavor::Create, Flavor::Annihilate] {
            let mut iterated = v.clone();
            for _ in 0..k {
                iterated = apply_pon(&pon(flavor, m), &iterated).map_err(err_string)?;
            }
            let direct = apply_pon(&pon(flavor, big), &v).map_err(err_string)?;
            ensure(iterated == direct, || format!("{flavor:?}, m = {m}, k = {k}"))?;
        }
    }
    Ok(format!("{RANDOM_CASES} random (m, k)"))
}

fn pon_kernel() -> Outcome {
    for m in 1..=30u64 {
        for n in 1..=60u64 {
            let e = FockVec::<BigRational>::basis_vector(Basis::DividedPower, n, 60).map_err(err_string)?;
            let image = apply_pon(&pon(Flavor::Annihilate, m), &e).map_err(err_string)?;
            ensure(image.is_empty() == (n % m != 0), || format!("A_{m} e_{n} = {image:?}"))?;
        }
    }
    Ok("A_m e_n = 0 exactly when m does not divide n".into())
}

/// `A_m† (a†)^k|0⟩ = k!/(mk)! (a†)^{mk}|0⟩`, applied on monomial coefficients.
fn pon_monomial_definition(rng: &mut ChaCha8Rng) -> Outcome {
    const CUTOFF: u64 = 60;
    for _ in 0..50 {
        let m = rng.gen_range(1..=6u64);
        let v = random_dp_vector(rng, CUTOFF / m, CUTOFF);
        let coeffs = to_monomial(&v).map_err(err_string)?;
        let mapped = coeffs
            .iter()
            .map(|(&k, c)| {
                let ratio = BigRational::new(factorial(k).into(), factorial(m * k).into());
                (m * k, c * ratio)
            })
            .collect();
        let want = from_monomial(&mapped, CUTOFF).map_err(err_string)?;
        let got = apply_pon(&pon(Flavor::Create, m), &v).map_err(err_string)?;
        ensure(got == want, || format!("m = {m}, v = {v:?}"))?;
    }
    Ok("index map matches the factorial definition on 50 random vectors".into())
}

fn pon_geometric() -> Outcome {
    const N: u64 = 100;
    let e1 = FockVec::<BigRational>::basis_vector(Basis::DividedPower, 1, N).map_err(err_string)?;
    let sum = geometric_create(N, &e1, N).map_err(err_string)?;
    let want = FockVec::unit_sum(Basis::DividedPower, 1..=N, N).map_err(err_string)?;
    ensure(sum == want, || format!("geometric product on e_1 gave {sum:?}"))?;
    let back = geometric_annihilate_inverse(N, &sum, N).map_err(err_string)?;
    ensure(back == e1, || format!("inverse returned {back:?}"))?;
    Ok("e_1 -> e_1 + ... + e_100 -> e_1".into())
}

fn pon_mobius() -> Outcome {
    const N: u64 = 60;
    let e1 = FockVec::<BigRational>::basis_vector(Basis::DividedPower, 1, N).map_err(err_string)?;
    let got = geometric_annihilate_inverse(N, &e1, N).map_err(err_string)?;
    for n in 1..=N {
        let want = int(mobius(n) as i64);
        ensure(got.amp(n) == want, || format!("coefficient of e_{n} is {}, mu = {want}", got.amp(n)))?;
    }
    Ok(format!("coefficients are mu(n) for n <= {N}"))
}

fn pon_number_basis() -> Outcome {
    const N: u64 = 20;
    let e1 = FockVec::<Surd>::basis_vector(Basis::DividedPower, 1, N).map_err(err_string)?;
    let sum = geometric_create(N, &e1, N).map_err(err_string)?;
    let number = basis_convert(&sum, Basis::Number).map_err(err_string)?;
    for n in 1..=N {
        let a = number.amp(n);
        let squared = (a.clone() * a.clone()).as_rational();
        let want = BigRational::new(1.into(), factorial(n).into());
        ensure(squared.as_ref() == Some(&want), || format!("|{n}> amplitude {a}"))?;
    }
    let back = basis_convert(&number, Basis::DividedPower).map_err(err_string)?;
    ensure(back == sum, || "conversion does not round-trip".into())?;
    Ok(format!("amplitude of |n> squares to 1/n! for n <= {N}"))
}

fn fock_monomial(rng: &mut ChaCha8Rng) -> Outcome {
    const CUTOFF: u64 = 40;
    for _ in 0..50 {
        let p = rng.gen_range(1..=5u32);
        let v = random_dp_vector(rng, CUTOFF - p as u64, CUTOFF);
        let before = to_monomial(&v).map_err(err_string)?;
        let image = apply(&NormalForm::monomial(p, 0, BigRational::one()), &v).map_err(err_string)?;
        let after = to_monomial(&image).map_err(err_string)?;
        let shifted: std::collections::BTreeMap<u64, BigRational> =
            before.into_iter().map(|(k, c)| (k + p as u64, c)).collect();
        ensure(after == shifted, || format!("p = {p}, v = {v:?}"))?;
    }
    Ok("a_p† shifts monomial coefficients by p".into())
}

fn fock_adjoint() -> Outcome {
    const N: u64 = 20;
    let (up, down) = (nf_of("ad"), nf_of("a"));
    for m in 0..N {
        for n in 0..N {
            let x: Surd = matrix_element(m, &up, n, N).map_err(err_string)?;
            let y: Surd = matrix_element(n, &down, m, N).map_err(err_string)?;
            ensure(x == y, || format!("<{m}|ad|{n}> = {x} but <{n}|a|{m}> = {y}"))?;
        }
    }
    Ok(format!("<m|ad|n> = <n|a|m> for m, n < {N}"))
}

// ---- zeta ----

fn prec() -> Precision {
    Precision::default()
}

fn params(s: &str, cutoff: u64) -> Result<SpectralParams, String> {
    let s: Exponent = s.parse().map_err(err_string)?;
    SpectralParams::new(s, cutoff, prec(), 64).map_err(err_string)
}

fn zeta_state_sums() -> Outcome {
    let cases = [("2", 10_000u64, PI * PI / 6.0), ("4", 1_000, PI.powi(4) / 90.0), ("3", 500, 1.202_056_903_159_594_3)];
    for (s, n, oracle) in cases {
        let r = zeta_via_states(&params(s, n)?).map_err(err_string)?;
        let err = (r.value.re_f64() - oracle).abs();
        ensure(err <= r.tail_bound, || format!("s = {s}, N = {n}: error {err:e} > tail {:e}", r.tail_bound))?;
    }
    Ok("s = 2, 3, 4 within their tail bounds".into())
}

fn zeta_monotone_states() -> Outcome {
    let oracle = PI * PI / 6.0;
    let mut last = 0.0;
    for n in [1u64, 2, 5, 10, 50, 100, 500] {
        let r = zeta_via_states(&params("2", n)?).map_err(err_string)?;
        let v = r.value.re_f64();
        ensure(v > last && v <= oracle && oracle <= v + r.tail_bound, || {
            format!("N = {n}: value {v}, tail {}", r.tail_bound)
        })?;
        last = v;
    }
    Ok("value increases and value <= zeta(2) <= value + tail".into())
}

fn zeta_mellin() -> Outcome {
    for s in 2..=4i64 {
        let g = gamma(Complex64::new(s as f64, 0.0)).re;
        for n in 1..=20u64 {
            let k = mellin_kernel(&Exponent::real_integer(s), n, 1e-12).map_err(err_string)?;
            let eig = (n as f64).powi(-s as i32);
            let rel = (k.value.re / g - eig).abs() / eig;
            ensure(rel <= 1e-9, || format!("s = {s}, n = {n}: relative error {rel:e}"))?;
        }
    }
    Ok("integral / Gamma(s) = n^-s for s = 2, 3, 4 and n <= 20".into())
}

fn zeta_factors() -> Outcome {
    for p in primes_up_to(50) {
        for s in [2i64, 3] {
            let f = euler_factor(p, &Exponent::real_integer(s), 64, prec()).map_err(err_string)?;
            let closed = 1.0 / (1.0 - (p as f64).powi(-s as i32));
            let err = (f.value.re_f64() - closed).abs();
            ensure(err <= 1e-12, || format!("p = {p}, s = {s}: error {err:e}"))?;
        }
    }
    Ok("|factor - 1/(1 - p^-s)| <= 1e-12 for p <= 50, s = 2, 3".into())
}

fn zeta_exact_factors() -> Outcome {
    for p in primes_up_to(30) {
        for (s, depth) in [(2i64, 5u32), (3, 4), (10, 2)] {
            let got = euler_factor_exact(p, s, depth).map_err(err_string)?;
            let r = int(p as i64).pow(-(s as i32));
            let closed = (BigRational::one() - r.pow(depth as i32 + 1)) / (BigRational::one() - r);
            ensure(got == closed, || format!("p = {p}, s = {s}, K = {depth}: {got} vs {closed}"))?;
        }
    }
    Ok("truncated factors equal (1 - r^(K+1))/(1 - r) exactly".into())
}

fn zeta_quantum_factors() -> Outcome {
    for p in primes_up_to(50) {
        for s in ["2", "3", "2.5+1i"] {
            let s: Exponent = s.parse().map_err(err_string)?;
            let f = euler_factor(p, &s, 64, prec()).map_err(err_string)?;
            let q = zeta_p_quantum(p, &s, 64, prec()).map_err(err_string)?;
            let d = f.value.dist_f64(&q.value);
            ensure(d <= f.tail_bound + q.tail_bound + 1e-30, || format!("p = {p}, s = {s}: distance {d:e}"))?;
        }
    }
    Ok("agree within the geometric tails for p <= 50".into())
}

fn zeta_product_order(rng: &mut ChaCha8Rng) -> Outcome {
    let primes = primes_up_to(40);
    let forward = euler_product_exact(2, &primes, 6).map_err(err_string)?;
    for _ in 0..5 {
        let mut shuffled = primes.clone();
        shuffled.shuffle(rng);
        let other = euler_product_exact(2, &shuffled, 6).map_err(err_string)?;
        ensure(other == forward, || format!("order {shuffled:?} gives {other}"))?;
    }
    Ok("exact product independent of prime order".into())
}

fn zeta_partial_products() -> Outcome {
    let s = Exponent::real_integer(2);
    let oracle = zeta(Complex64::new(2.0, 0.0)).re;
    let mut last = 0.0;
    for bound in [2u64, 10, 100, 1000] {
        let r = euler_product(&s, bound, 64, prec()).map_err(err_string)?;
        let v = r.value.re_f64();
        ensure(v >= last && v <= oracle && oracle - v <= r.tail_bound, || {
            format!("P = {bound}: value {v}, tail {}", r.tail_bound)
        })?;
        last = v;
    }
    Ok("nondecreasing in P, below zeta(2), gap within tail".into())
}

fn zeta_quantum_product() -> Outcome {
    for s in ["2", "2.5+1i"] {
        let p = params(s, 100)?;
        let states = zeta_via_states(&p).map_err(err_string)?;
        let quantum = zeta_quantum(&p, 100).map_err(err_string)?;
        ensure(states.value.bits_eq(&quantum.value), || {
            format!("s = {s}: {} vs {}", states.value, quantum.value)
        })?;
    }
    Ok("bit-identical at N = P = 100".into())
}

fn zeta_power_tower() -> Outcome {
    let exponents = [int(1), int(2), BigRational::new(3.into(), 2.into()), BigRational::new(5.into(), 3.into())];
    for m in 2..=10u64 {
        for ell in 1..=4u32 {
            for s in &exponents {
                let (lhs, rhs) = power_tower_relation(m, ell, s).map_err(err_string)?;
                let direct = PowerValue::power(m, &-(s * int(ell as i64)));
                ensure(lhs == rhs && rhs == direct, || format!("m = {m}, l = {ell}, s = {s}: {lhs} vs {rhs}"))?;
            }
        }
    }
    Ok("lhs = rhs = m^(-s l) exactly".into())
}

// ---- appendix ----

fn relative(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

fn moment(spec: CoefficientSpec, s: i64) -> Result<Complex64, String> {
    let m = MomentSpec::new(spec, Exponent::real_integer(s), MomentMethod::Quadrature);
    Ok(k_moment(&m).map_err(err_string)?.value)
}

fn appendix_moments() -> Outcome {
    let zetas = [(2, PI * PI / 6.0), (3, 1.202_056_903_159_594_3), (4, PI.powi(4) / 90.0)];
    for (s, z) in zetas {
        let k = moment(CoefficientSpec::ConstantOne, s)?;
        let g = gamma(Complex64::new(s as f64, 0.0));
        let rel = relative(k / g, Complex64::new(z, 0.0));
        ensure(rel <= 1e-6, || format!("s = {s}: relative error {rel:e}"))?;
    }
    Ok("K[s]/Gamma(s) = zeta(s) for s = 2, 3, 4".into())
}

fn appendix_mod8_moment() -> Outcome {
    let k = moment(CoefficientSpec::Mod8, 2)?;
    let l = l_function(&Exponent::real_integer(2), &DirichletCharacter::mod8(), 100_000).map_err(err_string)?;
    let want = l.value + PI * PI / 6.0;
    let rel = relative(k, want);
    ensure(rel <= 1e-6, || format!("K[2] = {k}, Gamma(2)(L + zeta) = {want}"))?;
    Ok(format!("relative error {rel:.1e}"))
}

fn appendix_table() -> Outcome {
    const TABLE: [u64; 8] = [2, 1, 0, 1, 0, 1, 2, 1];
    for n in 1..=800u64 {
        let c = CoefficientSpec::Mod8.coeff(n);
        let from_character = if n % 2 == 0 { 1 } else { (1 + character_mod8(n)) as u64 };
        let want = TABLE[((n - 1) % 8) as usize];
        ensure(c == want && from_character == want, || format!("c_{n} = {c}, table {want}"))?;
    }
    Ok("c_n = 1 + chi(n) (odd n), 1 (even n) matches the table".into())
}

fn appendix_character() -> Outcome {
    for m in 1..=100u64 {
        let cm = character_mod8(m);
        ensure(character_mod8(m + 8) == cm, || format!("chi({}) != chi({m})", m + 8))?;
        for n in 1..=100u64 {
            let cmn = character_mod8(m * n);
            ensure(cmn == cm * character_mod8(n), || format!("chi({m}*{n}) = {cmn}"))?;
        }
    }
    Ok("periodic mod 8 and multiplicative for m, n <= 100".into())
}

fn appendix_l_value() -> Outcome {
    let l = l_function(&Exponent::real_integer(2), &DirichletCharacter::mod8(), 100_000).map_err(err_string)?;
    let closed = PI * PI / (8.0 * 2f64.sqrt());
    let err = (l.value.re - closed).abs();
    ensure(err <= l.tail_bound, || format!("L = {}, closed form {closed}, error {err:e}", l.value.re))?;
    Ok(format!("L(2, chi_8) = {:.12}", l.value.re))
}

fn appendix_leibniz(rng: &mut ChaCha8Rng) -> Outcome {
    for p in [2u64, 3, 5, 7] {
        for _ in 0..1000 {
            let (n, m) = (rng.gen_range(1..=1_000_000u64), rng.gen_range(1..=1_000_000u64));
            let d = |x| absolute_derivation(p, x).map_err(err_string);
            let lhs = d(n * m)?;
            let rhs = d(n)? * m as u128 + n as u128 * d(m)?;
            ensure(lhs == rhs, || format!("p = {p}, n = {n}, n' = {m}: {lhs} vs {rhs}"))?;
        }
    }
    Ok("1000 random pairs for each p in {2, 3, 5, 7}".into())
}

fn appendix_gauss() -> Outcome {
    for p in (3..200u64).filter(|&p| is_prime(p)) {
        let g = gauss_sum(p).map_err(err_string)?;
        let root = (p as f64).sqrt();
        let want = if p % 4 == 1 { Complex64::new(root, 0.0) } else { Complex64::new(0.0, root) };
        let err = (g.value() - want).norm();
        ensure(err <= 1e-9 && g.discrepancy() <= 1e-9, || {
            format!("p = {p}: {} (error {err:e}, routes differ by {:e})", g.value(), g.discrepancy())
        })?;
    }
    Ok("sqrt(p) or i sqrt(p) by p mod 4, both routes".into())
}

fn appendix_consistency() -> Outcome {
    for (s, n) in [(2i64, 10_000u64), (3, 1_000)] {
        let k = moment(CoefficientSpec::ConstantOne, s)?;
        let g = gamma(Complex64::new(s as f64, 0.0));
        let r = zeta_via_states(&params(&s.to_string(), n)?).map_err(err_string)?;
        let diff = (k / g - r.value.re_f64()).norm();
        ensure(diff <= r.tail_bound + 1e-8, || format!("s = {s}: difference {diff:e}, tail {:e}", r.tail_bound))?;
    }
    Ok("K[s]/Gamma(s) within the state-sum tail".into())
}
