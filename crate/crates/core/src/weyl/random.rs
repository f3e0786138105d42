//! Seeded random expressions for property checks.

use num_rational::BigRational;
use rand::Rng;

use super::expr::{Expr, Generator};

const LETTERS: [Generator; 3] = [Generator::Annihilate, Generator::Create, Generator::Number];

/// A product of generators with total degree at most `max_degree` (`n̂` counts two).
pub fn random_word<R: Rng + ?Sized>(rng: &mut R, max_degree: u32) -> Expr {
    let target = rng.gen_range(0..=max_degree);
    let mut budget = target;
    let mut letters = Vec::new();
    while budget > 0 {
        let g = LETTERS[rng.gen_range(0..LETTERS.len())];
        let cost = if g == Generator::Number { 2 } else { 1 };
        if cost > budget {
            continue;
        }
        budget -= cost;
        letters.push(Expr::Gen(g));
    }
    Expr::product(letters)
}

fn random_scalar<R: Rng + ?Sized>(rng: &mut R) -> Expr {
    let num = rng.gen_range(-5i64..=5);
    let den = rng.gen_range(1i64..=3);
    Expr::Scalar(BigRational::new(num.into(), den.into()))
}

/// A random tree using every node kind, of degree at most `max_degree`.
pub fn random_expr<R: Rng + ?Sized>(rng: &mut R, max_degree: u32) -> Expr {
    random_node(rng, max_degree, 3)
}

fn random_node<R: Rng + ?Sized>(rng: &mut R, budget: u32, depth: u32) -> Expr {
    if depth == 0 || budget == 0 {
        return if budget == 0 || rng.gen_bool(0.2) {
            random_scalar(rng)
        } else {
            random_word(rng, budget)
        };
    }
    match rng.gen_range(0..6) {
        0 => random_word(rng, budget),
        1 => {
            let terms = rng.gen_range(2..=3);
            let mut xs: Vec<Expr> = (0..terms).map(|_| random_node(rng, budget, depth - 1)).collect();
            if rng.gen_bool(0.5) {
                let last = xs.pop().unwrap();
                xs.push(Expr::Neg(Box::new(last)));
            }
            Expr::Sum(xs)
        }
        2 => random_scalar(rng).mul(random_node(rng, budget, depth - 1)),
        3 => {
            let left = rng.gen_range(0..=budget);
            random_node(rng, left, depth - 1).mul(random_node(rng, budget - left, depth - 1))
        }
        4 => {
            let k = rng.gen_range(0..=3u32);
            let inner = if k == 0 { budget } else { budget / k };
            random_node(rng, inner, depth - 1).pow(k)
        }
        _ => {
            let left = rng.gen_range(0..=budget);
            Expr::commutator(
                random_node(rng, left, depth - 1),
                random_node(rng, budget - left, depth - 1),
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn respects_degree_budget() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..500 {
            assert!(random_word(&mut rng, 6).degree() <= 6);
            assert!(random_expr(&mut rng, 6).degree() <= 6);
        }
    }

    #[test]
    fn is_reproducible() {
        let a = random_expr(&mut ChaCha8Rng::seed_from_u64(3), 6);
        let b = random_expr(&mut ChaCha8Rng::seed_from_u64(3), 6);
        assert_eq!(a, b);
    }
}
