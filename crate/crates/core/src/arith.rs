//! Small integer utilities.

/// Euclidean gcd with `gcd(0, m) = m`.
pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Euler's totient by trial factorization.
pub fn euler_totient(m: u64) -> u64 {
    let mut rest = m;
    let mut phi = m;
    let mut prime = 2u64;
    while prime.saturating_mul(prime) <= rest {
        if rest.is_multiple_of(prime) {
            while rest.is_multiple_of(prime) {
                rest /= prime;
            }
            phi -= phi / prime;
        }
        prime += 1;
    }
    if rest > 1 {
        phi -= phi / rest;
    }
    phi
}

/// Divisors of `m` in ascending order.
pub fn divisors(m: u64) -> Vec<u64> {
    let mut low = Vec::new();
    let mut high = Vec::new();
    let mut k = 1u64;
    while k.saturating_mul(k) <= m {
        if m.is_multiple_of(k) {
            low.push(k);
            if k != m / k {
                high.push(m / k);
            }
        }
        k += 1;
    }
    low.extend(high.into_iter().rev());
    low
}

/// The exponent `e` with `base^e = value`, if any. `value = 1` gives `Some(0)`.
pub fn log_exact(value: u64, base: u64) -> Option<u32> {
    if value == 0 || base < 2 {
        return (value == 1).then_some(0);
    }
    let mut rest = value;
    let mut exponent = 0;
    while rest.is_multiple_of(base) {
        rest /= base;
        exponent += 1;
    }
    (rest == 1).then_some(exponent)
}

pub fn is_power_of(value: u64, base: u64) -> bool {
    log_exact(value, base).is_some()
}
