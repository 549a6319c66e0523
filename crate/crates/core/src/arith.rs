//! Small integer helpers: primality, factorization, modular powers.

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization as `(prime, exponent)` pairs in increasing prime order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// The largest power of `p` dividing `n`.
pub fn p_part(mut n: u64, p: u64) -> u64 {
    let mut part = 1;
    while n > 0 && n.is_multiple_of(p) {
        n /= p;
        part *= p;
    }
    part
}

/// True when `n` is a power of `p` (including `p^0 = 1`).
pub fn is_power_of(n: u64, p: u64) -> bool {
    n >= 1 && p_part(n, p) == n
}

/// Exponent `e` with `p^e = n`, if `n` is a power of `p`.
pub fn log_exact(n: u64, p: u64) -> Option<u32> {
    if !is_power_of(n, p) {
        return None;
    }
    let mut e = 0;
    let mut m = n;
    while m > 1 {
        m /= p;
        e += 1;
    }
    Some(e)
}

pub fn pow_mod(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n).into_iter().fold(n, |acc, (p, _)| acc / p * (p - 1))
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorization_and_parts() {
        assert_eq!(factorize(18), vec![(2, 1), (3, 2)]);
        assert_eq!(factorize(1), vec![]);
        assert_eq!(p_part(324, 3), 81);
        assert_eq!(p_part(324, 5), 1);
        assert!(is_power_of(1, 7));
        assert!(!is_power_of(18, 3));
        assert_eq!(log_exact(27, 3), Some(3));
    }

    #[test]
    fn totient_matches_count() {
        for n in 1..60u64 {
            let brute = (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64;
            assert_eq!(euler_phi(n), brute, "phi({n})");
        }
    }

    #[test]
    fn modular_power() {
        assert_eq!(pow_mod(8, 2, 9), 1);
        assert_eq!(pow_mod(2, 3, 7), 1);
        assert_eq!(pow_mod(4, 2, 5), 1);
    }
}
