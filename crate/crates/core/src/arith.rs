//! Small integer helpers shared by the group modules.

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors of `n`, ascending.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// True iff `n` is a power of `p` (including `p^0 = 1`).
pub fn is_power_of(mut n: u64, p: u64) -> bool {
    if n == 0 || p < 2 {
        return false;
    }
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// Splits `n` as `p^l * rest` with `rest` coprime to `p`; returns `rest`.
pub fn p_prime_part(mut n: u64, p: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    while n % p == 0 {
        n /= p;
    }
    n
}

/// Multiplicative order of `k` modulo `m`, if `k` is a unit.
pub fn mult_order(k: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(1);
    }
    if gcd(k % m, m) != 1 {
        return None;
    }
    let mut x = k % m;
    let mut ord = 1;
    while x != 1 {
        x = x * k % m;
        ord += 1;
    }
    Some(ord)
}

/// Least non-negative `x` with `a * x ≡ 1 (mod m)`, found by scanning.
pub fn inverse_mod(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    (0..m).find(|&x| (a % m) * x % m == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_divisors() {
        assert!(is_prime(2) && is_prime(31) && !is_prime(1) && !is_prime(21));
        assert_eq!(prime_divisors(48), vec![2, 3]);
        assert_eq!(prime_divisors(1), Vec::<u64>::new());
        assert!(is_power_of(1, 3) && is_power_of(64, 2) && !is_power_of(48, 2));
    }

    #[test]
    fn modular() {
        assert_eq!(mult_order(2, 7), Some(3));
        assert_eq!(mult_order(2, 8), None);
        assert_eq!(inverse_mod(3, 4), Some(3));
        assert_eq!(inverse_mod(3, 8), Some(3));
        assert_eq!(inverse_mod(2, 9), Some(5));
        assert_eq!(p_prime_part(6, 2), 3);
    }
}
