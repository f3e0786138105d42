//! Dirichlet characters and partial sums of their L-functions.

use num_complex::Complex64;
use num_integer::Integer;

use super::AppendixError;
use crate::arith::Exponent;

/// `+1` for `n ≡ 1, 7 (mod 8)`, `−1` for `n ≡ 3, 5 (mod 8)`, `0` for even `n`.
pub fn character_mod8(n: u64) -> i8 {
    match n % 8 {
        1 | 7 => 1,
        3 | 5 => -1,
        _ => 0,
    }
}

/// A character given by its values on residues `0..modulus`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirichletCharacter {
    modulus: u64,
    values: Vec<i8>,
}

impl DirichletCharacter {
    /// Validates the table: values in `{−1, 0, 1}`, zero exactly off the
    /// units, `χ(1) = 1`, and complete multiplicativity on residues.
    pub fn new(modulus: u64, values: Vec<i8>) -> Result<Self, AppendixError> {
        let bad = |msg: &str| Err(AppendixError::InvalidParameter(format!("character mod {modulus}: {msg}")));
        if modulus == 0 || values.len() as u64 != modulus {
            return bad("need exactly one value per residue");
        }
        if values.iter().any(|v| !(-1..=1).contains(v)) {
            return bad("values must be -1, 0 or 1");
        }
        for (r, &v) in values.iter().enumerate() {
            let unit = (r as u64).gcd(&modulus) == 1;
            if unit != (v != 0) {
                return bad("must vanish exactly off the units");
            }
        }
        if values[(1 % modulus) as usize] != 1 {
            return bad("chi(1) must be 1");
        }
        for a in 0..modulus {
            for b in 0..modulus {
                let ab = (a * b % modulus) as usize;
                if values[ab] != values[a as usize] * values[b as usize] {
                    return bad("not multiplicative");
                }
            }
        }
        Ok(DirichletCharacter { modulus, values })
    }

    /// The principal character mod `modulus`; modulus 1 is the constant 1.
    pub fn principal(modulus: u64) -> Self {
        let values = (0..modulus.max(1))
            .map(|r| i8::from(r.gcd(&modulus) == 1))
            .collect();
        DirichletCharacter {
            modulus: modulus.max(1),
            values,
        }
    }

    pub fn mod8() -> Self {
        Self::new(8, (0..8).map(character_mod8).collect()).expect("the mod-8 table is a character")
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn eval(&self, n: u64) -> i8 {
        self.values[(n % self.modulus) as usize]
    }

    pub fn is_principal(&self) -> bool {
        self.values.iter().all(|&v| v >= 0)
    }

    /// `max_x |Σ_{n≤x} χ(n)|`, attained within one period.
    fn partial_sum_bound(&self) -> f64 {
        let mut acc = 0i64;
        let mut best = 0i64;
        for n in 1..=self.modulus {
            acc += self.eval(n) as i64;
            best = best.max(acc.abs());
        }
        best as f64
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LValue {
    pub value: Complex64,
    pub terms: u64,
    /// Upper bound on `|value − L(s, χ)|`.
    pub tail_bound: f64,
}

/// `Σ_{n=1}^{N} χ(n) n^{−s}`, ascending `n`, for `Re(s) > 1`.
///
/// The tail bound is `N^{1−σ}/(σ−1)` for principal characters and, by
/// partial summation, `H N^{−σ} (1 + |s|/σ)` otherwise, where `H` bounds the
/// character's partial sums.
pub fn l_function(s: &Exponent, chi: &DirichletCharacter, terms: u64) -> Result<LValue, AppendixError> {
    let sigma = s.re_f64();
    if sigma <= 1.0 {
        return Err(AppendixError::DivergentParameters {
            s: s.to_string(),
            what: "the L-series",
        });
    }
    if terms == 0 {
        return Err(AppendixError::InvalidParameter("need at least one term".into()));
    }
    let sc = Complex64::new(sigma, s.im_f64());
    let mut value = Complex64::new(0.0, 0.0);
    for n in 1..=terms {
        let c = chi.eval(n);
        if c != 0 {
            value += Complex64::new(n as f64, 0.0).powc(-sc) * c as f64;
        }
    }
    let nf = terms as f64;
    let tail_bound = if chi.is_principal() {
        nf.powf(1.0 - sigma) / (sigma - 1.0)
    } else {
        chi.partial_sum_bound() * nf.powf(-sigma) * (1.0 + s.abs_f64() / sigma)
    };
    Ok(LValue {
        value,
        terms,
        tail_bound,
    })
}
