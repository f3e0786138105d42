//! Small-integer number theory: sieving, primality, factorization.

/// All primes `p <= bound`, ascending (sieve of Eratosthenes).
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let len = bound as usize + 1;
    let mut composite = vec![false; len];
    let mut primes = Vec::new();
    for i in 2..len {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        let mut j = i.saturating_mul(i);
        while j < len {
            composite[j] = true;
            j += i;
        }
    }
    primes
}

/// Deterministic primality test by trial division over 6k ± 1.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 || n % 3 == 0 {
        return false;
    }
    let mut d = 5u64;
    while d.checked_mul(d).map_or(false, |sq| sq <= n) {
        if n % d == 0 || n % (d + 2) == 0 {
            return false;
        }
        d += 6;
    }
    true
}

/// Prime factorization of `n >= 1` as ascending `(prime, exponent)` pairs.
/// `factorize(1)` is empty.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1, "factorize(0) is undefined");
    let mut out = Vec::new();
    let mut push = |p: u64, n: &mut u64| {
        let mut e = 0;
        while *n % p == 0 {
            *n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    };
    push(2, &mut n);
    push(3, &mut n);
    let mut d = 5u64;
    while d.checked_mul(d).map_or(false, |sq| sq <= n) {
        push(d, &mut n);
        push(d + 2, &mut n);
        d += 6;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Splits `n = p^ell * m` with `p ∤ m`; returns `(ell, m)`.
pub fn split_prime_power(p: u64, mut n: u64) -> (u32, u64) {
    debug_assert!(p >= 2 && n >= 1);
    let mut ell = 0;
    while n % p == 0 {
        n /= p;
        ell += 1;
    }
    (ell, n)
}

/// Möbius function.
pub fn mobius(n: u64) -> i8 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// If `n = r^k` with `k` maximal, returns `(r, k)`. `n = 1` gives `(1, 1)`.
pub fn perfect_power_root(n: u64) -> (u64, u32) {
    if n <= 1 {
        return (n, 1);
    }
    let f = factorize(n);
    let k = f.iter().fold(0u32, |g, &(_, e)| num_integer::gcd(g, e));
    let r = f.iter().map(|&(p, e)| p.pow(e / k)).product();
    (r, k)
}
