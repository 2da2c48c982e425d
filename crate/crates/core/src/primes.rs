//! Rational primes: an odd-only bitset sieve with a Miller-Rabin fallback.

/// Primality table for `0..=limit`; queries above the limit use Miller-Rabin.
#[derive(Debug, Clone)]
pub struct PrimeTable {
    limit: u64,
    /// Bit `k` set means `2k + 1` is composite.
    composite: Vec<u64>,
}

impl PrimeTable {
    pub fn new(limit: u64) -> Self {
        let limit = limit.max(2);
        let half = (limit / 2 + 1) as usize;
        let mut composite = vec![0u64; half / 64 + 1];
        composite[0] |= 1; // 1 is not prime
        let mut i = 3u64;
        while i * i <= limit {
            let k = (i / 2) as usize;
            if composite[k / 64] >> (k % 64) & 1 == 0 {
                let mut j = i * i;
                while j <= limit {
                    let t = (j / 2) as usize;
                    composite[t / 64] |= 1 << (t % 64);
                    j += 2 * i;
                }
            }
            i += 2;
        }
        PrimeTable { limit, composite }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn is_prime(&self, n: u64) -> bool {
        if n < 2 {
            return false;
        }
        if n % 2 == 0 {
            return n == 2;
        }
        if n <= self.limit {
            let k = (n / 2) as usize;
            return self.composite[k / 64] >> (k % 64) & 1 == 0;
        }
        miller_rabin(n)
    }

    /// Primes `p < bound` with `bound <= limit + 1`.
    pub fn primes_below(&self, bound: u64) -> Vec<u64> {
        let mut out = Vec::new();
        if bound > 2 {
            out.push(2);
        }
        let mut p = 3;
        while p < bound {
            if self.is_prime(p) {
                out.push(p);
            }
            p += 2;
        }
        out
    }

    /// `Some((p, k))` when `n = p^k` with `p` prime and `k >= 1`.
    pub fn prime_power(&self, n: u64) -> Option<(u64, u32)> {
        if n < 2 {
            return None;
        }
        if self.is_prime(n) {
            return Some((n, 1));
        }
        let maxk = 64 - n.leading_zeros();
        for k in 2..=maxk {
            let r = integer_root(n, k);
            if r >= 2 && r.checked_pow(k) == Some(n) && self.is_prime(r) {
                return Some((r, k));
            }
        }
        None
    }
}

/// Floor of the `k`-th root.
pub fn integer_root(n: u64, k: u32) -> u64 {
    if k == 1 {
        return n;
    }
    let mut r = (n as f64).powf(1.0 / k as f64).round() as u64;
    while r > 0 && r.checked_pow(k).map_or(true, |v| v > n) {
        r -= 1;
    }
    while (r + 1).checked_pow(k).map_or(false, |v| v <= n) {
        r += 1;
    }
    r
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for all 64-bit integers.
pub fn miller_rabin(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'outer: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Prime factorization by trial division.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut k = 0;
            while n % p == 0 {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}
