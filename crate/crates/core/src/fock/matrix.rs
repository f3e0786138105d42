//! Truncated matrices on `span{0..=N}` with overflow tracking.

use std::collections::BTreeMap;

use num_rational::BigRational;

use super::ops::apply;
use super::{Amplitude, Basis, FockError, FockVec};
use crate::weyl::{Expr, Generator, NormalForm};

/// Sparse column-major matrix. Column `n` is flagged as overflow when its
/// true value depends on states above the cutoff; its stored entries are
/// then not trustworthy.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedMatrix<T> {
    cutoff: u64,
    basis: Basis,
    cols: Vec<BTreeMap<u64, T>>,
    overflow: Vec<bool>,
}

impl<T: Amplitude> TruncatedMatrix<T> {
    fn empty(cutoff: u64, basis: Basis) -> Self {
        let size = cutoff as usize + 1;
        TruncatedMatrix {
            cutoff,
            basis,
            cols: vec![BTreeMap::new(); size],
            overflow: vec![false; size],
        }
    }

    fn identity_scaled(cutoff: u64, basis: Basis, c: &T) -> Self {
        let mut m = Self::empty(cutoff, basis);
        if !c.is_zero() {
            for (n, col) in m.cols.iter_mut().enumerate() {
                col.insert(n as u64, c.clone());
            }
        }
        m
    }

    pub fn cutoff(&self) -> u64 {
        self.cutoff
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    /// Entry `(m, n)`; zero when absent.
    pub fn entry(&self, m: u64, n: u64) -> T {
        self.cols[n as usize].get(&m).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_overflow(&self, n: u64) -> bool {
        self.overflow[n as usize]
    }

    pub fn overflow_count(&self) -> usize {
        self.overflow.iter().filter(|&&o| o).count()
    }

    /// Matrix of a normal form. Each monomial moves an occupation down and
    /// then up, so no entry inside the window needs a state outside it.
    pub fn from_normal_form(nf: &NormalForm, cutoff: u64, basis: Basis) -> Result<Self, FockError> {
        let mut m = Self::empty(cutoff, basis);
        let room = cutoff + nf.max_raise() as u64;
        for n in 0..=cutoff {
            let ket = FockVec::<T>::basis_vector(basis, n, room)?;
            let image = apply(nf, &ket)?;
            for (row, x) in image.iter().filter(|&(row, _)| row <= cutoff) {
                m.cols[n as usize].insert(row, x.clone());
            }
        }
        Ok(m)
    }

    /// Matrix of a single generator, built from its ladder action alone.
    pub fn generator(g: Generator, cutoff: u64, basis: Basis) -> Result<Self, FockError> {
        let mut m = Self::empty(cutoff, basis);
        for n in 0..=cutoff {
            let col = &mut m.cols[n as usize];
            match g {
                Generator::Annihilate if n > 0 => {
                    let x = match basis {
                        Basis::Number => T::sqrt_of_product(&[n])?,
                        Basis::DividedPower => T::one(),
                    };
                    col.insert(n - 1, x);
                }
                Generator::Annihilate => {}
                Generator::Create if n == cutoff => m.overflow[n as usize] = true,
                Generator::Create => {
                    let x = match basis {
                        Basis::Number => T::sqrt_of_product(&[n + 1])?,
                        Basis::DividedPower => T::from_ratio(BigRational::from_integer((n + 1).into())),
                    };
                    col.insert(n + 1, x);
                }
                Generator::Number if n > 0 => {
                    col.insert(n, T::from_ratio(BigRational::from_integer(n.into())));
                }
                Generator::Number => {}
            }
        }
        Ok(m)
    }

    /// Evaluates an expression tree by multiplying truncated generator matrices.
    pub fn from_expr_generators(expr: &Expr, cutoff: u64, basis: Basis) -> Result<Self, FockError> {
        Ok(match expr {
            Expr::Gen(g) => Self::generator(*g, cutoff, basis)?,
            Expr::Scalar(q) => Self::identity_scaled(cutoff, basis, &T::from_ratio(q.clone())),
            Expr::Sum(xs) => {
                let mut acc = Self::empty(cutoff, basis);
                for x in xs {
                    acc = acc.add(&Self::from_expr_generators(x, cutoff, basis)?);
                }
                acc
            }
            Expr::Neg(x) => Self::from_expr_generators(x, cutoff, basis)?.scale(&-T::one()),
            Expr::Product(xs) => {
                let mut acc = Self::identity_scaled(cutoff, basis, &T::one());
                for x in xs {
                    acc = acc.mul(&Self::from_expr_generators(x, cutoff, basis)?);
                }
                acc
            }
            Expr::Power(x, k) => {
                let base = Self::from_expr_generators(x, cutoff, basis)?;
                let mut acc = Self::identity_scaled(cutoff, basis, &T::one());
                for _ in 0..*k {
                    acc = acc.mul(&base);
                }
                acc
            }
            Expr::Commutator(x, y) => {
                let x = Self::from_expr_generators(x, cutoff, basis)?;
                let y = Self::from_expr_generators(y, cutoff, basis)?;
                x.mul(&y).add(&y.mul(&x).scale(&-T::one()))
            }
        })
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (n, col) in rhs.cols.iter().enumerate() {
            out.overflow[n] |= rhs.overflow[n];
            for (&m, x) in col {
                accumulate(&mut out.cols[n], m, x.clone());
            }
        }
        out
    }

    pub fn scale(&self, c: &T) -> Self {
        let mut out = Self::empty(self.cutoff, self.basis);
        out.overflow = self.overflow.clone();
        for (n, col) in self.cols.iter().enumerate() {
            for (&m, x) in col {
                accumulate(&mut out.cols[n], m, c.clone() * x.clone());
            }
        }
        out
    }

    /// `self · rhs`; column `n` overflows if `rhs` column `n` does or if it
    /// touches a column of `self` that does.
    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::empty(self.cutoff, self.basis);
        for (n, col) in rhs.cols.iter().enumerate() {
            let mut flag = rhs.overflow[n];
            for (&m, y) in col {
                flag |= self.overflow[m as usize];
                for (&row, x) in &self.cols[m as usize] {
                    accumulate(&mut out.cols[n], row, x.clone() * y.clone());
                }
            }
            out.overflow[n] = flag;
        }
        out
    }

    /// First `(row, column)` where the two matrices differ, ignoring columns
    /// flagged as overflow in either.
    pub fn first_mismatch(&self, rhs: &Self) -> Option<(u64, u64)> {
        for n in 0..=self.cutoff.min(rhs.cutoff) {
            if self.is_overflow(n) || rhs.is_overflow(n) {
                continue;
            }
            let (a, b) = (&self.cols[n as usize], &rhs.cols[n as usize]);
            if a != b {
                let row = a
                    .keys()
                    .chain(b.keys())
                    .find(|m| a.get(m) != b.get(m))
                    .copied()
                    .unwrap_or(0);
                return Some((row, n));
            }
        }
        None
    }
}

fn accumulate<T: Amplitude>(col: &mut BTreeMap<u64, T>, m: u64, x: T) {
    if x.is_zero() {
        return;
    }
    let slot = col.entry(m).or_insert_with(T::zero);
    *slot = slot.clone() + x;
    if slot.is_zero() {
        col.remove(&m);
    }
}
