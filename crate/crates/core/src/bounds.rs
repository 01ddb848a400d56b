//! Closed-form evaluation of the decoding and sample-complexity bounds,
//! exact binomial arithmetic for checking them, and a bisection solver for
//! threshold constants.
//!
//! Probability bounds are carried as base-2 exponents ([`BoundValue`]) so
//! that they stay meaningful for message lengths in the thousands.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::info::binary_entropy_unchecked as h;

/// A probability bound `2^log2_raw`, reported raw and clamped to `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundValue {
    pub raw: f64,
    pub clamped: f64,
    pub log2_raw: f64,
}

impl BoundValue {
    pub fn from_log2(log2_raw: f64) -> Self {
        let raw = log2_raw.exp2();
        Self {
            raw,
            clamped: raw.min(1.0),
            log2_raw,
        }
    }
}

fn check_beta(beta: f64) -> Result<()> {
    if !(0.0..=0.5).contains(&beta) {
        return domain(format!("beta must lie in [0, 1/2], got {beta}"));
    }
    Ok(())
}

fn check_delta(delta: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&delta) {
        return domain(format!("delta must lie in [0, 1], got {delta}"));
    }
    Ok(())
}

/// `P[X = Z] <= 2^(m - n)` for an n-bit message carried by m qubits.
pub fn nayak_bound(n: f64, m: f64) -> Result<BoundValue> {
    if !(n >= 1.0) || !n.is_finite() {
        return domain(format!("message length must be >= 1, got {n}"));
    }
    if !(m >= 0.0) || !m.is_finite() {
        return domain(format!("qubit count must be >= 0, got {m}"));
    }
    Ok(BoundValue::from_log2(m - n))
}

/// `P[d_H(X, Z) <= beta n] <= 2^m / 2^(n (1 - beta - H(beta)))`.
pub fn pac_nayak_bound(n: f64, m: f64, beta: f64) -> Result<BoundValue> {
    check_beta(beta)?;
    nayak_bound(n, m)?;
    if beta == 0.0 {
        return nayak_bound(n, m);
    }
    Ok(BoundValue::from_log2(m - n * (1.0 - beta - h(beta))))
}

/// Exact binomial coefficient.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Exact `sum_{i <= t} C(n, i)`.
pub fn binomial_partial_sum(n: u64, t: u64) -> BigUint {
    let mut sum = BigUint::zero();
    let mut term = BigUint::one();
    for i in 0..=t.min(n) {
        if i > 0 {
            term = term * BigUint::from(n - i + 1) / BigUint::from(i);
        }
        sum += &term;
    }
    sum
}

/// `log2 C(n, k)`: exact big-integer value for `n <= 64`, a sum of logarithms otherwise.
pub fn log2_binomial(n: u64, k: u64) -> Result<f64> {
    if k > n {
        return domain(format!("k = {k} exceeds n = {n}"));
    }
    if n <= 64 {
        return Ok(biguint_log2(&binomial(n, k)));
    }
    let k = k.min(n - k);
    let ln: f64 = (0..k).map(|i| ((n - i) as f64).ln() - ((i + 1) as f64).ln()).sum();
    Ok(ln / std::f64::consts::LN_2)
}

fn biguint_log2(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        x.to_f64().expect("finite").log2()
    } else {
        let shift = bits - 64;
        let top = (x >> shift).to_f64().expect("finite");
        top.log2() + shift as f64
    }
}

/// `n H(k/n)`, the base-2 exponent bounding `C(n, k)`.
pub fn binom_entropy_bound(n: u64, k: u64) -> Result<f64> {
    if k > n {
        return domain(format!("k = {k} exceeds n = {n}"));
    }
    if n == 0 {
        return Ok(0.0);
    }
    Ok(n as f64 * h(k as f64 / n as f64))
}

/// `n H(t/n)`, the base-2 exponent bounding `sum_{i <= t} C(n, i)` for `t <= n/2`.
pub fn binom_sum_entropy_bound(n: u64, t: u64) -> Result<f64> {
    if 2 * t > n {
        return domain(format!("partial-sum bound needs t <= n/2, got t = {t}, n = {n}"));
    }
    binom_entropy_bound(n, t)
}

/// Largest `t` with `2t <= n`, ie the range over which the sum bound applies.
pub fn half(n: u64) -> u64 {
    n / 2
}

/// `(1 - delta)(1 - H(eps)) n - H(delta)`: the mutual information any
/// decoder achieving `d_H <= eps n` with probability `1 - delta` must extract.
pub fn qpsc_lhs(n: f64, eps: f64, delta: f64) -> Result<f64> {
    if !(0.0..0.5).contains(&eps) {
        return domain(format!("eps must lie in [0, 1/2), got {eps}"));
    }
    check_delta(delta)?;
    Ok(information_requirement(n, eps, delta))
}

fn information_requirement(n: f64, eps: f64, delta: f64) -> f64 {
    (1.0 - delta) * (1.0 - h(eps)) * n - h(delta)
}

/// Minimum number of copies of an `ell`-qubit state needed to learn an
/// n-bit string to Hamming error `eps n` with probability `1 - delta`.
/// May be nonpositive, in which case the bound is vacuous.
pub fn pac_holevo_min_samples(n: f64, ell: f64, eps: f64, delta: f64) -> Result<f64> {
    if !(ell >= 1.0) {
        return domain(format!("qubits per copy must be >= 1, got {ell}"));
    }
    Ok(qpsc_lhs(n, eps, delta)? / ell)
}

/// `((1 - delta)(1 - H(beta)) 2^n - H(delta)) / n`, the argument of the
/// quantum sample-complexity lower bound for learning all of `F_n` under Zipf.
pub fn zipf_sample_lower_bound(n: u32, beta: f64, delta: f64) -> Result<f64> {
    if n == 0 || n > 1000 {
        return domain(format!("n must be in 1..=1000, got {n}"));
    }
    check_beta(beta)?;
    check_delta(delta)?;
    let big_n = (n as f64).exp2();
    Ok(information_requirement(big_n, beta, delta) / n as f64)
}

/// `ceil((N / eps) ln(N / delta))` samples for the memorization learner.
/// Values within `1e-9` (relative) of an integer are rounded to it first.
pub fn memorization_sample_count(domain_size: u64, eps: f64, delta: f64) -> Result<u64> {
    if domain_size == 0 {
        return domain("domain size must be >= 1");
    }
    if !(eps > 0.0 && eps <= 1.0) {
        return domain(format!("eps must lie in (0, 1], got {eps}"));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return domain(format!("delta must lie in (0, 1), got {delta}"));
    }
    let big_n = domain_size as f64;
    let x = (big_n / eps) * (big_n / delta).ln();
    let r = x.round();
    let m = if (x - r).abs() <= 1e-9 * r.max(1.0) { r } else { x.ceil() };
    Ok(m.max(0.0) as u64)
}

/// Bisection for a sign change of `f` on `[lo, hi]`, to interval width `tol`.
pub fn bisect_root(f: impl Fn(f64) -> f64, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    if !(lo < hi) || !(tol > 0.0) {
        return domain(format!("bad bracket [{lo}, {hi}] or tolerance {tol}"));
    }
    let (mut a, mut b) = (lo, hi);
    let (fa, fb) = (f(a), f(b));
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if !(fa * fb < 0.0) {
        return Err(Error::NoSignChange { lo, hi });
    }
    let rising = fb > 0.0;
    while b - a > tol {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if (fm > 0.0) == rising {
            b = mid;
        } else {
            a = mid;
        }
    }
    Ok(0.5 * (a + b))
}

pub const DEFAULT_BISECT_TOL: f64 = 1e-12;
