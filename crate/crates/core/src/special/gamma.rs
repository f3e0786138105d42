//! Complex Gamma function (Lanczos approximation, g = 7, nine terms).

use std::f64::consts::PI;

use num_complex::Complex64;

const G: f64 = 7.0;
const COEFFS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// `Γ(z)` to roughly 15 significant digits away from the poles.
pub fn gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // Reflection: Γ(z) Γ(1 − z) = π / sin(πz)
        return PI / ((PI * z).sin() * gamma(1.0 - z));
    }
    let z = z - 1.0;
    let mut x = Complex64::new(COEFFS[0], 0.0);
    for (i, &c) in COEFFS.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + G + 0.5;
    (2.0 * PI).sqrt() * t.powc(z + 0.5) * (-t).exp() * x
}

#[cfg(test)]
mod tests {
    use super::*;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn factorials() {
        let mut f = 1.0;
        for n in 1..15 {
            assert!((gamma(re(n as f64)).re - f).abs() <= 1e-13 * f, "n = {n}");
            f *= n as f64;
        }
    }

    #[test]
    fn half_integers_and_reflection() {
        assert!((gamma(re(0.5)).re - PI.sqrt()).abs() < 1e-14);
        assert!((gamma(re(-0.5)).re + 2.0 * PI.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn complex_argument() {
        // |Γ(iy)|² = π / (y sinh(πy))
        let y = 1.3;
        let g = gamma(Complex64::new(0.0, y));
        let expected = PI / (y * (PI * y).sinh());
        assert!((g.norm_sqr() - expected).abs() < 1e-13);
    }
}
