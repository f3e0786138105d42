//! Partition functions `Z[β] = Σ_E c_E e^{−βE}` and their Mellin moments
//! `K[s] = ∫_0^∞ β^{s−1} Z[β] dβ = Γ(s) Σ_E c_E E^{−s}`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use super::character::character_mod8;
use super::AppendixError;
use crate::arith::Exponent;
use crate::special::{exp_sinh, gamma, hurwitz_zeta, tanh_sinh};

/// Default relative tolerance for the moment quadrature.
pub const DEFAULT_MOMENT_TOLERANCE: f64 = 1e-9;

/// Degeneracies `c_E` on the energies `E ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoefficientSpec {
    /// `c_E = 1`
    ConstantOne,
    /// `c_E = 1 + χ_8(E)` for odd `E`, `1` for even `E`.
    Mod8,
    /// `c_E = pattern[(E − 1) mod q]`.
    Periodic(Vec<u64>),
    /// Finitely many nonzero `c_E`.
    Explicit(BTreeMap<u64, u64>),
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct TableError {
    pub line: usize,
    pub message: String,
}

impl CoefficientSpec {
    pub fn coeff(&self, energy: u64) -> u64 {
        match self {
            CoefficientSpec::ConstantOne => 1,
            CoefficientSpec::Mod8 if energy % 2 == 0 => 1,
            CoefficientSpec::Mod8 => (1 + character_mod8(energy)) as u64,
            CoefficientSpec::Periodic(pattern) => pattern[((energy - 1) % pattern.len() as u64) as usize],
            CoefficientSpec::Explicit(table) => table.get(&energy).copied().unwrap_or(0),
        }
    }

    /// `c_1..c_q` for the periodic specs.
    pub fn period(&self) -> Option<Vec<u64>> {
        match self {
            CoefficientSpec::ConstantOne => Some(vec![1]),
            CoefficientSpec::Mod8 => Some((1..=8).map(|e| self.coeff(e)).collect()),
            CoefficientSpec::Periodic(pattern) => Some(pattern.clone()),
            CoefficientSpec::Explicit(_) => None,
        }
    }

    pub fn max_coeff(&self) -> u64 {
        match self {
            CoefficientSpec::Explicit(table) => table.values().copied().max().unwrap_or(0),
            _ => self.period().unwrap_or_default().into_iter().max().unwrap_or(0),
        }
    }

    /// Parses lines `E c_E` with strictly ascending `E ≥ 1`; `#` starts a comment.
    pub fn from_table_text(text: &str) -> Result<Self, TableError> {
        let mut table = BTreeMap::new();
        let mut last = 0u64;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: &str| TableError {
                line: i + 1,
                message: message.to_string(),
            };
            let mut fields = line.split_whitespace();
            let (Some(e), Some(c), None) = (fields.next(), fields.next(), fields.next()) else {
                return Err(err("expected two fields `E c_E`"));
            };
            let e: u64 = e.parse().map_err(|_| err("energy must be a positive integer"))?;
            let c: u64 = c.parse().map_err(|_| err("degeneracy must be a non-negative integer"))?;
            if e == 0 {
                return Err(err("energies start at 1"));
            }
            if e <= last {
                return Err(err("energies must be strictly ascending"));
            }
            last = e;
            if c > 0 {
                table.insert(e, c);
            }
        }
        Ok(CoefficientSpec::Explicit(table))
    }

    /// `Σ_r c_r e^{−βr} / (1 − e^{−βq})` for periodic specs, exact in `β`.
    fn resummed(&self, beta: f64) -> Option<f64> {
        let pattern = self.period()?;
        let q = pattern.len() as f64;
        let numer: f64 = pattern
            .iter()
            .enumerate()
            .map(|(i, &c)| c as f64 * (-beta * (i + 1) as f64).exp())
            .sum();
        Some(numer / -(-beta * q).exp_m1())
    }
}

impl FromStr for CoefficientSpec {
    type Err = AppendixError;

    /// `one`, `mod8`, or a comma-separated period such as `2,1,0,1`.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        match text.trim() {
            "one" | "constant-one" => Ok(CoefficientSpec::ConstantOne),
            "mod8" => Ok(CoefficientSpec::Mod8),
            other => {
                let pattern: Result<Vec<u64>, _> = other.split(',').map(|c| c.trim().parse()).collect();
                match pattern {
                    Ok(p) if !p.is_empty() => Ok(CoefficientSpec::Periodic(p)),
                    _ => Err(AppendixError::InvalidParameter(format!(
                        "unknown coefficient pattern {other:?} (use `one`, `mod8` or `c1,c2,...`)"
                    ))),
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PartitionValue {
    pub value: f64,
    pub terms: u64,
    /// `c_max e^{−βN} / (1 − e^{−β})`
    pub tail_bound: f64,
}

/// `Σ_{E=1}^{N} c_E e^{−βE}`, ascending `E`.
pub fn partition_function(spec: &CoefficientSpec, beta: f64, terms: u64) -> Result<PartitionValue, AppendixError> {
    if !(beta > 0.0) {
        return Err(AppendixError::InvalidParameter("beta must be positive".into()));
    }
    let value = match spec {
        CoefficientSpec::Explicit(table) => table
            .range(..=terms)
            .map(|(&e, &c)| c as f64 * (-beta * e as f64).exp())
            .sum(),
        _ => (1..=terms)
            .map(|e| spec.coeff(e) as f64 * (-beta * e as f64).exp())
            .sum(),
    };
    let tail_bound = spec.max_coeff() as f64 * (-beta * terms as f64).exp() / -(-beta).exp_m1();
    Ok(PartitionValue {
        value,
        terms,
        tail_bound,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MomentMethod {
    /// Numerical Mellin integral of `Z[β]`.
    Quadrature,
    /// `Γ(s) Σ c_E E^{−s}`.
    Series,
}

impl fmt::Display for MomentMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MomentMethod::Quadrature => "quadrature",
            MomentMethod::Series => "series",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MomentSpec {
    pub coefficients: CoefficientSpec,
    pub s: Exponent,
    /// Largest energy included for explicit tables.
    pub truncation: u64,
    pub tolerance: f64,
    pub method: MomentMethod,
}

impl MomentSpec {
    pub fn new(coefficients: CoefficientSpec, s: Exponent, method: MomentMethod) -> Self {
        MomentSpec {
            coefficients,
            s,
            truncation: u64::MAX,
            tolerance: DEFAULT_MOMENT_TOLERANCE,
            method,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MomentResult {
    pub value: Complex64,
    pub error_estimate: f64,
    pub method: MomentMethod,
}

fn explicit_terms(spec: &MomentSpec) -> Vec<(u64, u64)> {
    match &spec.coefficients {
        CoefficientSpec::Explicit(table) => table.range(..=spec.truncation).map(|(&e, &c)| (e, c)).collect(),
        _ => Vec::new(),
    }
}

fn check_convergence(spec: &MomentSpec) -> Result<Complex64, AppendixError> {
    let s = Complex64::new(spec.s.re_f64(), spec.s.im_f64());
    let infinite = spec.coefficients.period().is_some_and(|p| p.iter().any(|&c| c > 0));
    let bound = if infinite { 1.0 } else { 0.0 };
    if s.re <= bound {
        return Err(AppendixError::DivergentParameters {
            s: spec.s.to_string(),
            what: "the moment integral",
        });
    }
    Ok(s)
}

/// `K[s]` for the given coefficients.
///
/// The series method sums periodic specs in closed form through Hurwitz
/// zeta values. The quadrature method integrates `β^{s−1} Z[β]` over
/// `(0, 1]` and `[1, ∞)`; periodic `Z` is evaluated in resummed form so that
/// the integrand stays exact near `β = 0`.
pub fn k_moment(spec: &MomentSpec) -> Result<MomentResult, AppendixError> {
    let s = check_convergence(spec)?;
    match spec.method {
        MomentMethod::Series => {
            let sum = match spec.coefficients.period() {
                Some(pattern) => {
                    // Σ_E c_E E^{−s} = q^{−s} Σ_r c_r ζ(s, r/q)
                    let q = pattern.len() as f64;
                    let mut acc = Complex64::new(0.0, 0.0);
                    for (i, &c) in pattern.iter().enumerate() {
                        if c > 0 {
                            acc += hurwitz_zeta(s, (i + 1) as f64 / q) * c as f64;
                        }
                    }
                    acc * Complex64::new(q, 0.0).powc(-s)
                }
                None => explicit_terms(spec)
                    .into_iter()
                    .map(|(e, c)| Complex64::new(e as f64, 0.0).powc(-s) * c as f64)
                    .sum(),
            };
            Ok(MomentResult {
                value: gamma(s) * sum,
                error_estimate: 0.0,
                method: MomentMethod::Series,
            })
        }
        MomentMethod::Quadrature => {
            let table = explicit_terms(spec);
            let z = |beta: f64| -> f64 {
                spec.coefficients.resummed(beta).unwrap_or_else(|| {
                    table
                        .iter()
                        .map(|&(e, c)| c as f64 * (-beta * e as f64).exp())
                        .sum()
                })
            };
            let integrand = |beta: f64| Complex64::new(beta, 0.0).powc(s - 1.0) * z(beta);
            let low = tanh_sinh(|b, _, _| integrand(b), 0.0, 1.0, spec.tolerance)?;
            let high = exp_sinh(|b, _| integrand(b), 1.0, spec.tolerance)?;
            Ok(MomentResult {
                value: low.value + high.value,
                error_estimate: low.error_estimate + high.error_estimate,
                method: MomentMethod::Quadrature,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{E, LN_2, PI};

    #[test]
    fn mod8_table() {
        let c: Vec<u64> = (1..=8).map(|e| CoefficientSpec::Mod8.coeff(e)).collect();
        assert_eq!(c, vec![2, 1, 0, 1, 0, 1, 2, 1]);
    }

    #[test]
    fn partition_examples() {
        let z = partition_function(&CoefficientSpec::ConstantOne, 1.0, 60).unwrap();
        assert!((z.value - 1.0 / (E - 1.0)).abs() <= z.tail_bound + 1e-15);
        let single = CoefficientSpec::from_table_text("1 1\n").unwrap();
        let z = partition_function(&single, LN_2, 10).unwrap();
        assert!((z.value - 0.5).abs() < 1e-15);
        let z = partition_function(&CoefficientSpec::Mod8, 1.0, 3).unwrap();
        assert!((z.value - (2.0 / E + 1.0 / (E * E))).abs() < 1e-15);
        assert!(partition_function(&single, 0.0, 10).is_err());
    }

    #[test]
    fn table_parsing() {
        let spec = CoefficientSpec::from_table_text("# energies\n1 2\n\n3 0 # empty\n4 5\n").unwrap();
        assert_eq!(spec.coeff(1), 2);
        assert_eq!(spec.coeff(3), 0);
        assert_eq!(spec.coeff(4), 5);
        assert_eq!(CoefficientSpec::from_table_text("2 1\n1 1").unwrap_err().line, 2);
        assert_eq!(CoefficientSpec::from_table_text("0 1").unwrap_err().line, 1);
        assert!(CoefficientSpec::from_table_text("1 1 1").is_err());
    }

    #[test]
    fn moment_of_single_state_is_gamma() {
        let spec = CoefficientSpec::from_table_text("1 1").unwrap();
        for method in [MomentMethod::Series, MomentMethod::Quadrature] {
            let k = k_moment(&MomentSpec::new(spec.clone(), "2.5".parse().unwrap(), method)).unwrap();
            let g = gamma(Complex64::new(2.5, 0.0));
            assert!((k.value - g).norm() < 1e-9 * g.norm(), "{method}");
        }
    }

    #[test]
    fn moment_series_constant_one() {
        let k = k_moment(&MomentSpec::new(CoefficientSpec::ConstantOne, Exponent::real_integer(2), MomentMethod::Series)).unwrap();
        assert!((k.value.re - PI * PI / 6.0).abs() < 1e-13);
        let k = k_moment(&MomentSpec::new(CoefficientSpec::ConstantOne, Exponent::real_integer(3), MomentMethod::Series)).unwrap();
        assert!((k.value.re - 2.404_113_806_319_188_6).abs() < 1e-12);
    }

    #[test]
    fn quadrature_agrees_with_series() {
        for spec in [CoefficientSpec::ConstantOne, CoefficientSpec::Mod8] {
            for s in ["2", "3", "2.5+1i"] {
                let mut m = MomentSpec::new(spec.clone(), s.parse().unwrap(), MomentMethod::Series);
                let series = k_moment(&m).unwrap();
                m.method = MomentMethod::Quadrature;
                let quad = k_moment(&m).unwrap();
                assert!((series.value - quad.value).norm() < 1e-8, "{spec:?} {s}: {series:?} {quad:?}");
            }
        }
    }

    #[test]
    fn divergence_is_reported() {
        let spec = MomentSpec::new(CoefficientSpec::ConstantOne, Exponent::real_integer(1), MomentMethod::Series);
        assert!(matches!(k_moment(&spec), Err(AppendixError::DivergentParameters { .. })));
    }
}
