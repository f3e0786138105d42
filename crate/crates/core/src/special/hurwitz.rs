//! Hurwitz zeta `ζ(s, a) = Σ_{k≥0} (k + a)^{−s}` for `Re(s) > 1`, `a > 0`,
//! by Euler–Maclaurin summation.

use num_complex::Complex64;

/// Terms summed directly before the Euler–Maclaurin tail.
const DIRECT_TERMS: u32 = 24;

/// `B_{2j} / (2j)!` for `j = 1..=10`.
const BERNOULLI_OVER_FACTORIAL: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30_240.0,
    -1.0 / 1_209_600.0,
    1.0 / 47_900_160.0,
    -691.0 / 1_307_674_368_000.0,
    1.0 / 74_724_249_600.0,
    -3_617.0 / 10_670_622_842_880_000.0,
    43_867.0 / 5_109_094_217_170_944_000.0,
    -174_611.0 / 802_857_662_698_291_200_000.0,
];

pub fn hurwitz_zeta(s: Complex64, a: f64) -> Complex64 {
    assert!(a > 0.0, "Hurwitz zeta needs a > 0");
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 0..DIRECT_TERMS {
        sum += Complex64::new(k as f64 + a, 0.0).powc(-s);
    }
    let x = DIRECT_TERMS as f64 + a;
    let xs = Complex64::new(x, 0.0).powc(-s);
    sum += xs * x / (s - 1.0) + xs * 0.5;
    // Σ_j B_{2j}/(2j)! · s(s+1)…(s+2j−2) · x^{−s−2j+1}
    let mut rising = s;
    let mut power = xs / x;
    for (j, b) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        sum += rising * power * *b;
        let m = 2.0 * j as f64;
        rising *= (s + m + 1.0) * (s + m + 2.0);
        power /= x * x;
    }
    sum
}

/// Riemann zeta for `Re(s) > 1`.
pub fn zeta(s: Complex64) -> Complex64 {
    hurwitz_zeta(s, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn even_values() {
        let z2 = zeta(Complex64::new(2.0, 0.0));
        assert!((z2.re - PI * PI / 6.0).abs() < 1e-15);
        let z4 = zeta(Complex64::new(4.0, 0.0));
        assert!((z4.re - PI.powi(4) / 90.0).abs() < 1e-15);
    }

    #[test]
    fn apery_constant() {
        let z3 = zeta(Complex64::new(3.0, 0.0));
        assert!((z3.re - 1.202_056_903_159_594_3).abs() < 1e-15);
    }

    #[test]
    fn hurwitz_half_is_odd_part() {
        // ζ(s, 1/2) = (2^s − 1) ζ(s)
        let s = Complex64::new(2.5, 0.7);
        let lhs = hurwitz_zeta(s, 0.5);
        let rhs = (Complex64::new(2.0, 0.0).powc(s) - 1.0) * zeta(s);
        assert!((lhs - rhs).norm() < 1e-13);
    }
}
