//! Small integer helpers shared by the field and group modules.

/// Distinct prime factors of `2^k - 1` for `k <= 16`.
const MERSENNE_PRIMES: [&[u64]; 17] = [
    &[],
    &[],
    &[3],
    &[7],
    &[3, 5],
    &[31],
    &[3, 7],
    &[127],
    &[3, 5, 17],
    &[7, 73],
    &[3, 11, 31],
    &[23, 89],
    &[3, 5, 7, 13],
    &[8191],
    &[3, 43, 127],
    &[7, 31, 151],
    &[3, 5, 17, 257],
];

/// Distinct prime factors of `n`, ascending, by trial division.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Distinct prime factors of `2^k - 1`.
pub fn mersenne_prime_factors(k: u32) -> Vec<u64> {
    match MERSENNE_PRIMES.get(k as usize) {
        Some(ps) => ps.to_vec(),
        None => prime_factors((1u64 << k) - 1),
    }
}

pub fn euler_phi(n: u64) -> u64 {
    prime_factors(n)
        .into_iter()
        .fold(n, |acc, p| acc / p * (p - 1))
}

/// Least `d >= 1` such that `is_one(d)`, given that `is_one(group_order)`
/// holds and `primes` are the distinct primes of `group_order`.
pub fn order_from_exponent(group_order: u64, primes: &[u64], is_one: impl Fn(u64) -> bool) -> u64 {
    let mut order = group_order;
    for &p in primes {
        while order % p == 0 && is_one(order / p) {
            order /= p;
        }
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mersenne_table_matches_trial_division() {
        for k in 1..=16 {
            assert_eq!(mersenne_prime_factors(k), prime_factors((1u64 << k) - 1), "k={k}");
        }
        assert_eq!(mersenne_prime_factors(32), vec![3, 5, 17, 257, 65537]);
    }

    #[test]
    fn phi_values() {
        assert_eq!(euler_phi(17), 16);
        assert_eq!(euler_phi(15), 8);
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(12), 4);
    }
}
