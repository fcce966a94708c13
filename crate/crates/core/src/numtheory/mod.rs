//! Exact arithmetic and the arithmetic functions the degree formulas are
//! written in: divisor counts and sums, the totient, primes, Gaussian
//! binomials, and the subgroup-count coefficients of elementary abelian and
//! Hamiltonian 2-groups.

mod primes;
mod rational;

pub use primes::{factorize, is_prime, nth_prime, odd_primes_up_to, PrimeSieve, DEFAULT_SIEVE_CAP};
pub use rational::{ExactRational, DEFAULT_DECIMAL_DIGITS};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};

fn require_positive(n: u64, what: &str) -> Result<()> {
    if n == 0 {
        Err(Error::domain(format!("{what} is undefined at 0")))
    } else {
        Ok(())
    }
}

/// Number of divisors of `n`.
pub fn tau(n: u64) -> Result<u64> {
    require_positive(n, "tau")?;
    Ok(factorize(n)
        .iter()
        .map(|&(_, e)| u64::from(e) + 1)
        .product())
}

/// Sum of the divisors of `n`.
pub fn sigma(n: u64) -> Result<u128> {
    require_positive(n, "sigma")?;
    Ok(factorize(n)
        .iter()
        .map(|&(p, e)| {
            let p = u128::from(p);
            // 1 + p + ... + p^e
            (0..=e)
                .fold((0u128, 1u128), |(acc, pk), _| (acc + pk, pk * p))
                .0
        })
        .product())
}

/// Euler's totient.
pub fn phi(n: u64) -> Result<u64> {
    require_positive(n, "phi")?;
    Ok(factorize(n)
        .iter()
        .map(|&(p, e)| (p - 1) * p.pow(e - 1))
        .product())
}

/// `base^exp` as a big integer.
pub fn big_pow(base: u64, exp: u32) -> BigInt {
    num_traits::pow(BigInt::from(base), exp as usize)
}

/// `σ(p^n) = (p^{n+1} − 1)/(p − 1)` for any base `p ≥ 2`, without overflow.
pub fn sigma_prime_power(p: u64, n: u32) -> BigInt {
    (big_pow(p, n + 1) - 1) / BigInt::from(p - 1)
}

/// The q-binomial coefficient: the number of `k`-dimensional subspaces of an
/// `n`-dimensional vector space over a field with `q` elements.
pub fn gaussian_binomial(n: u64, k: u64, q: u64) -> Result<BigUint> {
    if q < 2 {
        return Err(Error::domain(format!(
            "gaussian binomial needs q >= 2, got {q}"
        )));
    }
    if k > n {
        return Ok(BigUint::zero());
    }
    let k = k.min(n - k);
    let q = BigUint::from(q);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= num_traits::pow(q.clone(), (n - i) as usize) - 1u32;
        den *= num_traits::pow(q.clone(), (i + 1) as usize) - 1u32;
    }
    Ok(num / den)
}

/// `a_{α,p}`: the number of subgroups of the elementary abelian group `C_p^α`.
///
/// `alpha = -1` yields 0, which is the convention the Hamiltonian coefficient
/// needs at `n = 0`.
pub fn elem_abelian_subgroup_count(alpha: i64, p: u64) -> Result<BigUint> {
    if !is_prime(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    match alpha {
        a if a < -1 => Err(Error::domain(format!("rank {a} is below -1"))),
        -1 => Ok(BigUint::zero()),
        a => {
            let a = a as u64;
            (0..=a).try_fold(BigUint::zero(), |acc, k| {
                Ok(acc + gaussian_binomial(a, k, p)?)
            })
        }
    }
}

/// `b_{n,2} = |L(Q₈ × C₂ⁿ)|`, so that `|L(Q₈ × C₂ⁿ × A)| = b_{n,2} · |L(A)|` for odd `|A|`.
///
/// Subgroups without an element of order 4 lie in `Ω = ⟨-1⟩ × C₂ⁿ ≅ C₂^{n+1}`.
/// The rest contain `-1` and map onto the subgroups of `G/⟨-1⟩ ≅ C₂^{n+2}`
/// not inside `Ω/⟨-1⟩ ≅ C₂ⁿ`. Hence `b_{n,2} = a_{n+1,2} + a_{n+2,2} − a_{n,2}`.
pub fn b_coeff(n: u32) -> BigUint {
    let a = |alpha: u32| elem_abelian_subgroup_count(i64::from(alpha), 2).expect("2 is prime");
    a(n + 1) + a(n + 2) - a(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // Independent oracles: plain enumeration over 1..=n.
    fn divisors(n: u64) -> Vec<u64> {
        (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
    }

    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    #[test]
    fn tau_sigma_phi_examples() {
        assert_eq!(tau(1).unwrap(), 1);
        assert_eq!(tau(12).unwrap(), 6);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        for (p, k) in [(2u64, 5u32), (3, 4), (7, 2), (101, 1)] {
            assert_eq!(tau(p.pow(k)).unwrap(), u64::from(k) + 1);
            let expect = (p.pow(k + 1) - 1) / (p - 1);
            assert_eq!(sigma(p.pow(k)).unwrap(), u128::from(expect));
            assert_eq!(BigInt::from(expect), sigma_prime_power(p, k));
        }
        assert_eq!(sigma(1).unwrap(), 1);
        assert_eq!(sigma(12).unwrap(), 28);
        assert_eq!(phi(1).unwrap(), 1);
        assert_eq!(phi(12).unwrap(), 4);
        assert_eq!(phi(97).unwrap(), 96);
        assert!(tau(0).is_err() && sigma(0).is_err() && phi(0).is_err());
    }

    #[test]
    fn arithmetic_functions_match_enumeration() {
        for n in 1..=2000u64 {
            let ds = divisors(n);
            assert_eq!(tau(n).unwrap(), ds.len() as u64);
            assert_eq!(
                sigma(n).unwrap(),
                ds.iter().map(|&d| u128::from(d)).sum::<u128>()
            );
            assert_eq!(
                phi(n).unwrap(),
                (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64
            );
        }
    }

    #[test]
    fn tau_bound_up_to_a_million() {
        const N: usize = 1_000_000;
        let mut counts = vec![0u64; N + 1];
        for d in 1..=N {
            for m in (d..=N).step_by(d) {
                counts[m] += 1;
            }
        }
        for (n, &t) in counts.iter().enumerate().skip(1) {
            // τ(n) ≤ 2√n  ⇔  τ(n)² ≤ 4n
            assert!(t * t <= 4 * n as u64, "tau({n}) = {t}");
            if n % 97 == 0 {
                assert_eq!(tau(n as u64).unwrap(), t);
            }
        }
    }

    // q-Pascal recurrence: [n,k] = [n-1,k-1] + q^k [n-1,k].
    fn q_pascal(n: u64, k: u64, q: u64) -> BigUint {
        if k == 0 || k == n {
            return BigUint::one();
        }
        if k > n {
            return BigUint::zero();
        }
        q_pascal(n - 1, k - 1, q)
            + num_traits::pow(BigUint::from(q), k as usize) * q_pascal(n - 1, k, q)
    }

    #[test]
    fn gaussian_binomial_examples() {
        assert_eq!(gaussian_binomial(5, 0, 3).unwrap(), BigUint::one());
        assert_eq!(gaussian_binomial(2, 1, 2).unwrap(), BigUint::from(3u32));
        assert_eq!(gaussian_binomial(4, 2, 2).unwrap(), BigUint::from(35u32));
        assert_eq!(gaussian_binomial(2, 3, 2).unwrap(), BigUint::zero());
        assert!(gaussian_binomial(3, 1, 1).is_err());
        for q in [2, 3, 5] {
            for n in 0..9 {
                for k in 0..=n + 1 {
                    assert_eq!(gaussian_binomial(n, k, q).unwrap(), q_pascal(n, k, q));
                }
            }
        }
    }

    #[test]
    fn elementary_abelian_counts() {
        let c = |a, p| elem_abelian_subgroup_count(a, p).unwrap();
        assert_eq!(c(-1, 2), BigUint::zero());
        assert_eq!(c(0, 2), BigUint::one());
        assert_eq!(c(1, 2), BigUint::from(2u32));
        assert_eq!(c(2, 2), BigUint::from(5u32));
        assert_eq!(c(3, 2), BigUint::from(16u32));
        assert_eq!(c(2, 3), BigUint::from(6u32));
        assert!(elem_abelian_subgroup_count(2, 4).is_err());
        assert!(elem_abelian_subgroup_count(-2, 2).is_err());
    }

    /// `2^{n+2} + 1 + 8 Σ_{α=0}^{n-2} (2^{n-α} − 2^{2α+1} + 2^α) a_{α,2} + 2^{n+2} a_{n-1,2} + a_{n,2}`,
    /// a sum form that needs `a_{-1,2} = 0` at `n = 0`.
    fn b_sum_form(n: u32) -> BigInt {
        let a = |alpha: i64| BigInt::from(elem_abelian_subgroup_count(alpha, 2).unwrap());
        let two = |e: u32| big_pow(2, e);
        let n_i = i64::from(n);
        let sum: BigInt = (0..=n_i - 2)
            .map(|alpha| {
                let al = alpha as u32;
                (two(n - al) - two(2 * al + 1) + two(al)) * a(alpha)
            })
            .sum();
        two(n + 2) + 1 + 8 * sum + two(n + 2) * a(n_i - 1) + a(n_i)
    }

    #[test]
    fn b_coeff_small_values() {
        let want = [6u32, 19, 78, 425, 3132];
        for (n, w) in want.into_iter().enumerate() {
            assert_eq!(b_coeff(n as u32), BigUint::from(w), "n = {n}");
        }
    }

    #[test]
    fn sum_form_agrees_only_up_to_rank_two() {
        for n in 0..=2 {
            assert_eq!(b_sum_form(n), BigInt::from(b_coeff(n)), "n = {n}");
        }
        assert_eq!(b_sum_form(3), BigInt::from(233));
        assert!(b_sum_form(5) < BigInt::zero());
    }

    fn coprime_pair() -> impl Strategy<Value = (u64, u64)> {
        (1u64..=1_000_000, 1u64..=1_000_000).prop_filter("coprime", |&(a, b)| gcd(a, b) == 1)
    }

    proptest! {
        #[test]
        fn multiplicative_on_coprime_pairs((m, n) in coprime_pair()) {
            prop_assert_eq!(tau(m * n).unwrap(), tau(m).unwrap() * tau(n).unwrap());
            prop_assert_eq!(sigma(m * n).unwrap(), sigma(m).unwrap() * sigma(n).unwrap());
            prop_assert_eq!(phi(m * n).unwrap(), phi(m).unwrap() * phi(n).unwrap());
        }
    }
}
