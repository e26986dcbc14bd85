//! Exact big-integer combinatorics: binomials with arbitrary-size tops,
//! Gaussian binomials, GL orders and Stirling numbers of the second kind.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// `q^e` for a nonnegative exponent.
pub fn pow_u(q: u64, e: u32) -> BigInt {
    num_traits::pow(BigInt::from(q), e as usize)
}

/// `q^e` for any integer exponent, as a rational.
pub fn pow_i(q: u64, e: i64) -> BigRational {
    let p = pow_u(q, e.unsigned_abs() as u32);
    if e >= 0 {
        BigRational::from_integer(p)
    } else {
        BigRational::new(BigInt::one(), p)
    }
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `binom(n, k)` with `n` an arbitrary integer and `k` small, using the
/// convention `binom(n, k) = 0` when `k < 0` or `k > n` (for `n >= 0`).
pub fn binomial(n: &BigInt, k: i64) -> BigInt {
    if k < 0 || n.is_negative() || BigInt::from(k) > *n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc = acc.div_floor(&BigInt::from(i + 1));
    }
    acc
}

/// `binom(n, 0..=k_max)` built incrementally, zero past `n`.
pub fn binomial_row(n: &BigInt, k_max: usize) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(k_max + 1);
    let mut acc = if n.is_negative() { BigInt::zero() } else { BigInt::one() };
    for k in 0..=k_max {
        row.push(acc.clone());
        if !acc.is_zero() {
            acc *= n - k;
            acc /= k + 1;
        }
    }
    row
}

pub fn binomial_u(n: u64, k: i64) -> BigInt {
    binomial(&BigInt::from(n), k)
}

/// Gaussian binomial `[n r]_q = prod_{j<r} (q^{n-j} - 1)/(q^{r-j} - 1)`;
/// zero outside `0 <= r <= n`.
pub fn q_binomial(n: u32, r: i64, q: u64) -> BigInt {
    if r < 0 || r > n as i64 {
        return BigInt::zero();
    }
    let r = r as u32;
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..r {
        num *= pow_u(q, n - j) - 1;
        den *= pow_u(q, r - j) - 1;
    }
    let (quo, rem) = num.div_rem(&den);
    debug_assert!(rem.is_zero());
    quo
}

/// `|GL(n, q)| = prod_{j<n} (q^n - q^j)`; `g_0 = 1`.
pub fn gl_order(n: u32, q: u64) -> BigInt {
    (0..n).map(|j| pow_u(q, n) - pow_u(q, j)).product()
}

/// `prod_{j=1}^{upto} (q^{step*j - offset} - 1)`, the recurring products in
/// the group-order formulas. An empty range gives 1.
pub fn q_product(q: u64, upto: i64, step: u32, offset: u32) -> BigInt {
    (1..=upto.max(0) as u32).map(|j| pow_u(q, step * j - offset) - 1).product()
}

/// Stirling number of the second kind via the alternating sum
/// `S(h,t) = (1/t!) sum_j (-1)^(t-j) binom(t,j) j^h`; zero outside `0 <= t <= h`.
pub fn stirling2(h: u32, t: u32) -> BigInt {
    if t > h {
        return BigInt::zero();
    }
    let mut sum = BigInt::zero();
    for j in 0..=t {
        let term = binomial_u(t as u64, j as i64) * num_traits::pow(BigInt::from(j), h as usize);
        if (t - j) % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let (quo, rem) = sum.div_rem(&factorial(t));
    debug_assert!(rem.is_zero());
    quo
}
