//! Exact integer combinatorics used by the parameter and bound formulas.

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// `C(n, k)`, zero when `k > n`; `None` on overflow.
pub fn binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) is exact at every step
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

/// Falling factorial `n (n-1) ... (n-k+1)`, i.e. `C(n,k) k!`; zero when `k > n`.
pub fn falling(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)?;
    }
    Some(acc)
}

pub fn factorial(n: u64) -> Option<u128> {
    falling(n, n)
}

pub fn checked_pow(base: u64, exp: u64) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base as u128)?;
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(binomial(9, 6), Some(84));
        assert_eq!(binomial(8, 5), Some(56));
        assert_eq!(binomial(13, 6), Some(1716));
        assert_eq!(binomial(3, 5), Some(0));
        assert_eq!(falling(9, 6), Some(60480));
        assert_eq!(falling(11, 6), Some(332640));
        assert_eq!(falling(3, 5), Some(0));
        assert_eq!(factorial(6), Some(720));
        assert_eq!(gcd(15, 8), 1);
        assert_eq!(gcd(15, 10), 5);
        assert_eq!(checked_pow(9, 6), Some(531441));
    }

    #[test]
    fn pascal_rule() {
        for n in 1..40u64 {
            for k in 1..n {
                assert_eq!(
                    binomial(n, k).unwrap(),
                    binomial(n - 1, k - 1).unwrap() + binomial(n - 1, k).unwrap()
                );
            }
        }
    }
}
