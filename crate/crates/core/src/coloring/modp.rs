//! Arithmetic in Z_p for small odd primes.

/// Multiplicative inverses mod 17 used by the reducer formulas.
pub const INV2_MOD17: u64 = 9;
pub const INV3_MOD17: u64 = 6;
pub const INV4_MOD17: u64 = 13;

/// Canonical representative of `x` in `[0, p)`.
pub fn reduce(x: i64, p: u64) -> u64 {
    x.rem_euclid(p as i64) as u64
}

pub fn add(a: u64, b: u64, p: u64) -> u64 {
    (a + b) % p
}

pub fn sub(a: u64, b: u64, p: u64) -> u64 {
    (a + p - b % p) % p
}

pub fn mul(a: u64, b: u64, p: u64) -> u64 {
    (a * b) % p
}

pub fn pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul(acc, base, p);
        }
        base = mul(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` mod prime `p`, or `None` when `a ≡ 0`.
pub fn inv(a: u64, p: u64) -> Option<u64> {
    if a.is_multiple_of(p) {
        None
    } else {
        Some(pow(a, p - 2, p))
    }
}

/// The color forced on the far under-strand: `2b - a`.
pub fn reflect(a: u64, b: u64, p: u64) -> u64 {
    sub(mul(2, b, p), a, p)
}

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
