//! Exact even-index Bernoulli numbers.
//!
//! Computed from the tangent numbers with the integer-only recurrence of
//! Brent and Harvey, then cached as exact rationals. The cache only grows.

use std::sync::RwLock;

use rug::{Integer, Rational};

static CACHE: RwLock<Vec<Rational>> = RwLock::new(Vec::new());

/// Tangent numbers T_1..T_n.
fn tangent_numbers(n: usize) -> Vec<Integer> {
    let mut t = vec![Integer::new(); n + 1];
    if n == 0 {
        return t;
    }
    t[1] = Integer::from(1);
    for k in 2..=n {
        t[k] = Integer::from(&t[k - 1] * (k as u64 - 1));
    }
    for k in 2..=n {
        for j in k..=n {
            let a = Integer::from(&t[j - 1] * (j - k) as u64);
            t[j] *= (j - k + 2) as u64;
            t[j] += a;
        }
    }
    t
}

fn fill(count: usize) -> Vec<Rational> {
    let t = tangent_numbers(count);
    (1..=count)
        .map(|k| {
            // B_{2k} = (-1)^{k-1} 2k T_k / (2^{2k} (2^{2k} - 1))
            let num = Integer::from(&t[k] * (2 * k) as u64);
            let pow = Integer::from(1) << (2 * k as u32);
            let den = &pow * Integer::from(&pow - 1u32);
            let b = Rational::from((num, den));
            if k % 2 == 0 {
                -b
            } else {
                b
            }
        })
        .collect()
}

/// Returns B_2, B_4, ..., B_{2m} as exact rationals.
pub fn bernoulli_even(m: usize) -> Vec<Rational> {
    {
        let cache = CACHE.read().expect("bernoulli cache poisoned");
        if cache.len() >= m {
            return cache[..m].to_vec();
        }
    }
    let mut cache = CACHE.write().expect("bernoulli cache poisoned");
    if cache.len() < m {
        let target = m.max(2 * cache.len()).max(16);
        *cache = fill(target);
    }
    cache[..m].to_vec()
}

/// B_{2k} for k ≥ 1.
pub fn bernoulli_2k(k: usize) -> Rational {
    assert!(k >= 1);
    bernoulli_even(k).pop().expect("non-empty")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_values() {
        let b = bernoulli_even(6);
        let expect = [(1, 6), (-1, 30), (1, 42), (-1, 30), (5, 66), (-691, 2730)];
        for (got, (n, d)) in b.iter().zip(expect) {
            assert_eq!(*got, Rational::from((n, d)));
        }
    }

    #[test]
    fn growth_of_cache_keeps_prefix() {
        let small = bernoulli_even(10);
        let large = bernoulli_even(200);
        assert_eq!(&large[..10], &small[..]);
        // von Staudt–Clausen: primes p with (p-1) | 60 are 2,3,5,7,11,13,31,61.
        assert_eq!(*large[29].denom(), Integer::from(2u64 * 3 * 5 * 7 * 11 * 13 * 31 * 61));
    }
}
