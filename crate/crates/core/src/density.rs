//! Approximating targets in `(0, 1]` by products of cyclicity degrees
//! `cdeg(C_{p²} ⋊ C_p) = (p+1)/(p+2)` over distinct odd primes.
//!
//! The greedy scan keeps the running product `r ≥ target`: each odd prime is
//! taken iff `r·(p+1)/(p+2)` stays at or above the target. If `p` is skipped
//! then `r < target·(p+2)/(p+1)`, so `r − target < target/(p+1)`, and the scan
//! stops once `r − target ≤ ε`. That happens at the latest when `p + 1 > 1/ε`
//! and some prime near there is skipped, but the infinite product over all
//! odd primes diverges to zero so slowly that small targets need many primes
//! before skipping starts: a target is only reachable within `prime_bound`
//! when `∏_{3 ≤ p ≤ prime_bound} (p+1)/(p+2) < target`.
//!
//! Decisions compare fixed-point enclosures of `r` and fall back to exact
//! arithmetic only when an enclosure straddles the threshold.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::{
    factorize, is_prime, odd_primes_up_to, ExactRational, DEFAULT_DECIMAL_DIGITS,
};

/// Default largest prime the greedy scan may use.
pub const DEFAULT_PRIME_BOUND: u64 = 1_000_000;

/// A finite set of odd primes whose degree product approximates a target.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityApproximation {
    pub target: ExactRational,
    pub epsilon: ExactRational,
    pub primes: Vec<u64>,
    /// `∏ (p+1)/(p+2)` over `primes`.
    pub product: ExactRational,
    /// `product − target`.
    pub error: ExactRational,
    /// Number of primes examined.
    pub steps: u64,
    pub product_decimal: String,
    pub error_decimal: String,
}

/// `cdeg(C_{p²} ⋊ C_p) = (p+1)/(p+2)` for an odd prime `p`.
pub fn cdeg_mp(p: u64) -> Result<ExactRational> {
    if p < 3 || !is_prime(p) {
        return Err(Error::domain(format!(
            "cdeg_mp needs an odd prime, got {p}"
        )));
    }
    Ok(ExactRational::frac(p + 1, p + 2))
}

const FRAC_BITS: u32 = 100;

/// Lower and upper fixed-point bounds, scaled by `2^FRAC_BITS`, of a value in `[0, 2]`.
#[derive(Clone, Copy)]
struct Enclosure {
    lo: u128,
    hi: u128,
}

impl Enclosure {
    fn one() -> Self {
        Enclosure {
            lo: 1 << FRAC_BITS,
            hi: 1 << FRAC_BITS,
        }
    }

    fn of(x: &ExactRational) -> Self {
        let scaled = x.numer() << FRAC_BITS as usize;
        let (q, r) = scaled.div_rem(x.denom());
        let lo = q.to_u128().expect("value fits the fixed-point range");
        Enclosure {
            lo,
            hi: if r.is_zero() { lo } else { lo + 1 },
        }
    }

    /// Multiplies by `(p+1)/(p+2)`. Requires `p + 2 < 2^27`.
    fn times_factor(self, p: u64) -> Self {
        let (a, b) = (u128::from(p + 1), u128::from(p + 2));
        Enclosure {
            lo: self.lo * a / b,
            hi: (self.hi * a).div_ceil(b),
        }
    }
}

/// The exact product `∏ (p+1)/(p+2)`, kept as a prime-exponent map so the
/// reduced fraction can be rebuilt without big gcds.
#[derive(Default, Clone)]
struct FactorProduct {
    exponents: BTreeMap<u64, i64>,
}

impl FactorProduct {
    fn push(&mut self, p: u64) {
        for (q, e) in factorize(p + 1) {
            *self.exponents.entry(q).or_default() += i64::from(e);
        }
        for (q, e) in factorize(p + 2) {
            *self.exponents.entry(q).or_default() -= i64::from(e);
        }
    }

    fn value(&self) -> ExactRational {
        let mut num = Vec::new();
        let mut den = Vec::new();
        for (&q, &e) in &self.exponents {
            let power = num_traits::pow(BigUint::from(q), e.unsigned_abs() as usize);
            match e.signum() {
                1 => num.push(power),
                -1 => den.push(power),
                _ => {}
            }
        }
        ExactRational::from_reduced(product_tree(num).into(), product_tree(den).into())
    }
}

fn product_tree(mut xs: Vec<BigUint>) -> BigUint {
    if xs.is_empty() {
        return BigUint::one();
    }
    while xs.len() > 1 {
        xs = xs
            .chunks(2)
            .map(|c| {
                if c.len() == 2 {
                    &c[0] * &c[1]
                } else {
                    c[0].clone()
                }
            })
            .collect();
    }
    xs.pop().expect("nonempty")
}

/// `x − t` for a possibly huge reduced `x` and a small `t`, reduced without
/// a gcd on the large parts: a prime dividing both the numerator and the
/// denominator of the difference must divide the denominator of `t`.
fn difference(x: &ExactRational, t: &ExactRational) -> ExactRational {
    let mut num: BigInt = x.numer() * t.denom() - t.numer() * x.denom();
    let mut den: BigInt = x.denom() * t.denom();
    if num.is_zero() {
        return ExactRational::zero();
    }
    loop {
        let g = t.denom().gcd(&(&num % t.denom()));
        if g.is_one() {
            break;
        }
        let g2 = g.gcd(&(&den % &g));
        if g2.is_one() {
            break;
        }
        num /= &g2;
        den /= &g2;
    }
    ExactRational::from_reduced(num, den)
}

struct Greedy<'a> {
    target: &'a ExactRational,
    epsilon: &'a ExactRational,
    ceiling: ExactRational,
    target_enc: Enclosure,
    ceiling_enc: Enclosure,
    r: Enclosure,
    exact: FactorProduct,
    primes: Vec<u64>,
    steps: u64,
}

impl Greedy<'_> {
    /// `r · (p+1)/(p+2) ≥ target`
    fn accepts(&self, p: u64) -> bool {
        let c = self.r.times_factor(p);
        if c.lo >= self.target_enc.hi {
            true
        } else if c.hi < self.target_enc.lo {
            false
        } else {
            self.exact.value() * ExactRational::frac(p + 1, p + 2) >= *self.target
        }
    }

    /// `r − target ≤ ε`
    fn converged(&self) -> bool {
        if self.r.hi <= self.ceiling_enc.lo {
            true
        } else if self.r.lo > self.ceiling_enc.hi {
            false
        } else {
            self.exact.value() <= self.ceiling
        }
    }

    fn finish(self) -> DensityApproximation {
        let product = self.exact.value();
        let error = difference(&product, self.target);
        DensityApproximation {
            target: self.target.clone(),
            epsilon: self.epsilon.clone(),
            primes: self.primes,
            product_decimal: product.to_decimal(DEFAULT_DECIMAL_DIGITS),
            error_decimal: error.to_decimal(DEFAULT_DECIMAL_DIGITS),
            product,
            error,
            steps: self.steps,
        }
    }
}

/// Greedily picks odd primes `p ≤ prime_bound` until
/// `target ≤ ∏ (p+1)/(p+2) ≤ target + epsilon`.
///
/// Fails with [`Error::DensityExhausted`], carrying the best product found,
/// when the primes run out first.
pub fn approximate(
    target: &ExactRational,
    epsilon: &ExactRational,
    prime_bound: u64,
) -> Result<DensityApproximation> {
    if !target.is_positive() || *target > ExactRational::one() {
        return Err(Error::domain(format!("target {target} is not in (0, 1]")));
    }
    if !epsilon.is_positive() {
        return Err(Error::domain(format!("epsilon {epsilon} is not positive")));
    }
    let ceiling = target + epsilon;
    let capped = if ceiling > ExactRational::from(2) {
        ExactRational::from(2)
    } else {
        ceiling.clone()
    };
    let mut g = Greedy {
        target,
        epsilon,
        target_enc: Enclosure::of(target),
        ceiling_enc: Enclosure::of(&capped),
        ceiling,
        r: Enclosure::one(),
        exact: FactorProduct::default(),
        primes: Vec::new(),
        steps: 0,
    };
    if g.converged() {
        return Ok(g.finish());
    }
    for p in odd_primes_up_to(prime_bound)? {
        g.steps += 1;
        if g.accepts(p) {
            g.r = g.r.times_factor(p);
            g.exact.push(p);
            g.primes.push(p);
            if g.converged() {
                return Ok(g.finish());
            }
        }
    }
    Err(Error::DensityExhausted {
        bound: prime_bound,
        best: Box::new(g.finish()),
    })
}

/// One row of the divergence diagnostic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivergenceRow {
    pub index: usize,
    pub prime: u64,
    /// `Σ ln((p+2)/(p+1))` over the first `index` odd primes, as a decimal.
    pub log_sum: String,
    /// `∏ (p+1)/(p+2)` over the same primes.
    pub product: ExactRational,
}

const LOG_DIGITS: u32 = 40;

/// `ln((p+2)/(p+1)) · 10^LOG_DIGITS`, truncated, via
/// `ln((p+2)/(p+1)) = 2 atanh(1/(2p+3))`.
fn scaled_log_ratio(p: u64) -> BigInt {
    let scale = num_traits::pow(BigInt::from(10), LOG_DIGITS as usize + 5);
    let x = BigInt::from(2 * p + 3);
    let x2 = &x * &x;
    let mut power = x.clone();
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    loop {
        let term = &scale / (&power * (2 * k + 1));
        if term.is_zero() {
            break;
        }
        sum += term;
        power *= &x2;
        k += 1;
    }
    // Drop the guard digits.
    2 * sum / 100_000
}

fn render_scaled(v: &BigInt) -> String {
    let s = v.abs().to_string();
    let digits = LOG_DIGITS as usize;
    let padded = format!("{s:0>width$}", width = digits + 1);
    let (int, frac) = padded.split_at(padded.len() - digits);
    format!(
        "{}{int}.{}",
        if v.is_negative() { "-" } else { "" },
        &frac[..30]
    )
}

/// Partial sums of `Σ ln((p+2)/(p+1))` over the first `count` odd primes,
/// with the exact partial products. The sums are truncated to 30 decimals.
pub fn log_divergence_partial(count: usize) -> Result<Vec<DivergenceRow>> {
    let mut rows = Vec::with_capacity(count);
    let mut sum = BigInt::zero();
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for index in 1..=count {
        // The (index+1)-th prime is the index-th odd prime.
        let p = crate::numtheory::nth_prime(index + 1)?;
        sum += scaled_log_ratio(p);
        // gcd(N·a, D·b) = gcd(N, b)·gcd(a, D) when gcd(N, D) = gcd(a, b) = 1.
        let (a, b) = (BigUint::from(p + 1), BigUint::from(p + 2));
        let ga = a.gcd(&(&den % &a));
        let gb = b.gcd(&(&num % &b));
        num = (num / &gb) * (&a / &ga);
        den = (den / &ga) * (&b / &gb);
        rows.push(DivergenceRow {
            index,
            prime: p,
            log_sum: render_scaled(&sum),
            product: ExactRational::from_reduced(num.clone().into(), den.clone().into()),
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> ExactRational {
        s.parse().unwrap()
    }

    // Independent recomputation by plain rational multiplication.
    fn naive_product(primes: &[u64]) -> ExactRational {
        primes
            .iter()
            .map(|&p| ExactRational::frac(p + 1, p + 2))
            .product()
    }

    #[test]
    fn cdeg_mp_values() {
        assert_eq!(cdeg_mp(3).unwrap(), r("4/5"));
        assert_eq!(cdeg_mp(5).unwrap(), r("6/7"));
        assert!(cdeg_mp(2).is_err());
        assert!(cdeg_mp(9).is_err());
    }

    #[test]
    fn trivial_and_exact_targets() {
        let a = approximate(&r("1"), &r("1/10"), 100).unwrap();
        assert!(a.primes.is_empty());
        assert_eq!(a.error, ExactRational::zero());
        let a = approximate(&r("4/5"), &r("1/100"), 100).unwrap();
        assert_eq!(a.primes, vec![3]);
        assert_eq!(a.error, ExactRational::zero());
    }

    #[test]
    fn half_within_a_thousandth() {
        let eps = r("1/1000");
        let a = approximate(&r("1/2"), &eps, DEFAULT_PRIME_BOUND).unwrap();
        assert_eq!(a.product, naive_product(&a.primes));
        assert_eq!(a.error, &a.product - &r("1/2"));
        assert!(a.error >= ExactRational::zero() && a.error <= eps);
        assert!(a.primes.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn domain_errors() {
        assert!(approximate(&r("0"), &r("1/10"), 100).is_err());
        assert!(approximate(&r("3/2"), &r("1/10"), 100).is_err());
        assert!(approximate(&r("1/2"), &r("0"), 100).is_err());
    }

    #[test]
    fn exhaustion_carries_best_product() {
        let err = approximate(&r("1/2"), &r("1/1000000"), 50).unwrap_err();
        match err {
            Error::DensityExhausted { bound, best } => {
                assert_eq!(bound, 50);
                assert_eq!(best.product, naive_product(&best.primes));
                assert!(best.error > r("1/1000000"));
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn divergence_rows() {
        let rows = log_divergence_partial(1000).unwrap();
        assert_eq!(rows[0].product, r("4/5"));
        assert_eq!(rows[2].product, r("64/105"));
        assert!(rows[0].log_sum.starts_with("0.223143551314209755766295090"));
        let sums: Vec<f64> = rows.iter().map(|r| r.log_sum.parse().unwrap()).collect();
        assert!(sums.windows(2).all(|w| w[0] < w[1]));
        // ln(1/product) equals the partial sum.
        let last = rows.last().unwrap();
        assert!((-last.product.to_f64().ln() - sums[999]).abs() < 1e-9);
    }

    #[test]
    fn difference_matches_plain_subtraction() {
        let x = naive_product(&[3, 5, 7, 11, 13]);
        for t in ["1/2", "3/10", "7/20", "1/3"] {
            let t = r(t);
            assert_eq!(difference(&x, &t), &x - &t);
        }
    }
}
