//! Exact binomial coefficients.

/// Binomial coefficient C(n, k) as an exact `u128`.
///
/// Returns 0 when `k > n`. Saturates at `u128::MAX` if the true value does
/// not fit; callers that need exactness keep `n` small enough (`n <= 64`
/// everywhere in the formula modules), while budget checks only compare
/// against limits far below the saturation point.
pub fn choose(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by i + 1, so the division stays exact.
        match acc.checked_mul((n - i) as u128) {
            Some(p) => acc = p / (i as u128 + 1),
            None => return u128::MAX,
        }
    }
    acc
}
