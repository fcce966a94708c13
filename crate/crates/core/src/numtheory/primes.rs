use std::sync::{Mutex, OnceLock};

use crate::error::{Error, Result};

/// Default upper limit on how far a sieve may grow.
pub const DEFAULT_SIEVE_CAP: u64 = 10_000_000;

/// Sieve of Eratosthenes that grows on demand up to a hard cap.
#[derive(Debug, Clone)]
pub struct PrimeSieve {
    cap: u64,
    limit: u64,
    primes: Vec<u64>,
}

impl Default for PrimeSieve {
    fn default() -> Self {
        Self::with_cap(DEFAULT_SIEVE_CAP)
    }
}

impl PrimeSieve {
    pub fn with_cap(cap: u64) -> Self {
        PrimeSieve {
            cap,
            limit: 1,
            primes: Vec::new(),
        }
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    /// Sieves everything up to `bound` (inclusive).
    pub fn extend_to(&mut self, bound: u64) -> Result<()> {
        if bound <= self.limit {
            return Ok(());
        }
        if bound > self.cap {
            return Err(Error::SieveCap {
                cap: self.cap,
                what: format!("sieving up to {bound}"),
            });
        }
        // Grow geometrically so repeated small requests stay amortized.
        let target = bound.max(self.limit.saturating_mul(2)).min(self.cap);
        let n = target as usize;
        let mut composite = vec![false; n + 1];
        let mut i = 2usize;
        while i * i <= n {
            if !composite[i] {
                let mut j = i * i;
                while j <= n {
                    composite[j] = true;
                    j += i;
                }
            }
            i += 1;
        }
        self.primes = (2..=n)
            .filter(|&k| !composite[k])
            .map(|k| k as u64)
            .collect();
        self.limit = target;
        Ok(())
    }

    /// The `index`-th prime, counting from 1 (so `nth(1) == 2`).
    pub fn nth(&mut self, index: usize) -> Result<u64> {
        if index == 0 {
            return Err(Error::domain("prime index must be at least 1"));
        }
        while self.primes.len() < index {
            if self.limit >= self.cap {
                return Err(Error::SieveCap {
                    cap: self.cap,
                    what: format!("prime #{index} lies beyond the cap"),
                });
            }
            let next = self.limit.saturating_mul(2).max(64).min(self.cap);
            self.extend_to(next)?;
        }
        Ok(self.primes[index - 1])
    }

    /// All primes `<= bound`.
    pub fn primes_up_to(&mut self, bound: u64) -> Result<&[u64]> {
        self.extend_to(bound)?;
        let end = self.primes.partition_point(|&p| p <= bound);
        Ok(&self.primes[..end])
    }
}

fn shared() -> &'static Mutex<PrimeSieve> {
    static SIEVE: OnceLock<Mutex<PrimeSieve>> = OnceLock::new();
    SIEVE.get_or_init(|| Mutex::new(PrimeSieve::default()))
}

/// The `index`-th prime using a process-wide memoized sieve with the default cap.
pub fn nth_prime(index: usize) -> Result<u64> {
    shared()
        .lock()
        .unwrap_or_else(|e| e.into_inner())
        .nth(index)
}

/// Odd primes in `[3, bound]`, taken from the shared sieve.
pub fn odd_primes_up_to(bound: u64) -> Result<Vec<u64>> {
    let mut sieve = shared().lock().unwrap_or_else(|e| e.into_inner());
    Ok(sieve
        .primes_up_to(bound)?
        .iter()
        .copied()
        .filter(|&p| p != 2)
        .collect())
}

/// Deterministic trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) || n.is_multiple_of(3) {
        return false;
    }
    let mut d = 5u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) || n.is_multiple_of(d + 2) {
            return false;
        }
        d += 6;
    }
    true
}

/// Prime factorization as `(prime, exponent)` pairs in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}
