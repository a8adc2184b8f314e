//! Reference values computed independently of the library's zeta and
//! finite-difference machinery.
#![allow(dead_code)]

use rug::ops::Pow;
use rug::{Float, Integer};
use stieltjes::mp::bernoulli_even;

/// γ_n from the limit definition
///   γ_n = lim_{m→∞} Σ_{k≤m} (ln k)^n / k - (ln m)^{n+1} / (n+1),
/// accelerated by Euler–Maclaurin on f(x) = (ln x)^n / x:
///   γ_n = Σ_{k<N} f(k) - (ln N)^{n+1}/(n+1) + f(N)/2 - Σ_j B_{2j}/(2j)! f^{(2j-1)}(N).
/// Derivatives are f^{(r)}(x) = x^{-1-r} Q_r(ln x) with integer polynomials
/// Q_0 = L^n, Q_{r+1} = -(1+r) Q_r + Q_r'.
pub fn stieltjes_limit_oracle(n: usize, digits: u32) -> Float {
    let prec = ((digits as f64 + 20.0 + 1.5 * n as f64) * 3.33) as u32 + 64;
    let big_n: u64 = 60 + 2 * n as u64;
    let ln = |k: u64| Float::with_val(prec, k).ln();
    let pow_int = |x: &Float, e: usize| -> Float {
        let mut r = Float::with_val(prec, 1);
        for _ in 0..e {
            r *= x;
        }
        r
    };

    let mut sum = Float::with_val(prec, 0);
    for k in 2..big_n {
        let lk = ln(k);
        sum += pow_int(&lk, n) / k;
    }
    if n == 0 {
        sum += 1u32;
    }
    let ln_n = ln(big_n);
    sum -= pow_int(&ln_n, n + 1) / (n as u64 + 1);
    sum += pow_int(&ln_n, n) / big_n / 2u32;

    let eval = |q: &[Integer], r: usize| -> Float {
        // x^{-1-r} Q(ln x) at x = N
        let mut acc = Float::with_val(prec, 0);
        let mut lp = Float::with_val(prec, 1);
        for c in q {
            acc += Float::with_val(prec, c * &lp);
            lp *= &ln_n;
        }
        let xp = Float::with_val(prec, big_n).pow(-(1 + r as i32));
        acc * xp
    };
    let step = |q: &[Integer], r: usize| -> Vec<Integer> {
        let mut out: Vec<Integer> = q.iter().map(|c| Integer::from(c * -(1 + r as i64))).collect();
        for (i, c) in q.iter().enumerate().skip(1) {
            out[i - 1] += Integer::from(c * i as u64);
        }
        out
    };

    let mut q: Vec<Integer> = vec![Integer::new(); n + 1];
    q[n] = Integer::from(1);
    // Q_1
    q = step(&q, 0);
    let tol = Float::with_val(prec, Float::i_exp(1, -(prec as i32) + 40));
    let bern = bernoulli_even(400);
    let mut inv_fact = Float::with_val(prec, 0.5); // 1/(2j)!
    let mut r = 1usize; // current derivative order 2j-1
    for (j, b) in bern.iter().enumerate() {
        let j = j + 1;
        let d = eval(&q, r);
        let term = Float::with_val(prec, b) * &inv_fact * d;
        sum -= &term;
        if Float::with_val(prec, term.abs_ref()) < tol {
            break;
        }
        q = step(&q, r);
        q = step(&q, r + 1);
        r += 2;
        inv_fact /= ((2 * j + 1) * (2 * j + 2)) as u64;
    }
    sum
}
