//! Stieltjes constants from finite differences of the regularized zeta.
//!
//! With a_k(ε) = Σ_{j=0}^{k} (-1)^j C(k,j) φ(1+jε), Newton's forward
//! interpolation of φ(1+xε) converted to powers of x through the signed
//! Stirling numbers of the first kind gives
//!
//!   γ_n = (-1)^n n!/ε^n Σ_{k≥n} (-1)^k a_k S_k^(n) / k!
//!       =        n!/ε^n Σ_{k≥n} a_k |S_k^(n)| / k!.
//!
//! The alternating binomial sum loses about k·log10(2) digits and the ε^-n
//! prefactor amplifies absolute error by n·log10(1/ε) digits, so the working
//! precision is raised by both amounts. Every published value is computed at
//! two working precisions and certified on the digits where they agree.

use std::ops::RangeInclusive;

use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};
use crate::mp::{bits_to_digits, digits_to_bits, ten_pow, Agreement, PrecisionContext};
use crate::zeta::phi_grid_prec;

/// Harmonic number H_k as an exact rational; H_0 = 0.
pub fn harmonic(k: u64) -> Rational {
    let mut h = Rational::new();
    for i in 1..=k {
        h += Rational::from((1, i));
    }
    h
}

/// Signed Stirling numbers of the first kind S_k^(n), 0 ≤ n ≤ k ≤ k_max.
#[derive(Debug, Clone)]
pub struct Stirling1Matrix {
    rows: Vec<Vec<Integer>>,
}

impl Stirling1Matrix {
    pub fn k_max(&self) -> usize {
        self.rows.len() - 1
    }

    /// S_k^(n); zero for n > k.
    pub fn get(&self, k: usize, n: usize) -> Integer {
        self.rows[k].get(n).cloned().unwrap_or_default()
    }

    pub fn row(&self, k: usize) -> &[Integer] {
        &self.rows[k]
    }
}

/// Next row of the signed triangle: S_{k+1}^(n) = S_k^(n-1) - k S_k^(n).
fn next_stirling_row(row: &[Integer], k: usize) -> Vec<Integer> {
    let mut next = vec![Integer::new(); row.len() + 1];
    for n in 0..next.len() {
        let mut v = Integer::new();
        if n >= 1 {
            v += &row[n - 1];
        }
        if n < row.len() {
            v -= Integer::from(&row[n] * k as u64);
        }
        next[n] = v;
    }
    next
}

pub fn stirling1(k_max: usize) -> Stirling1Matrix {
    let mut rows = Vec::with_capacity(k_max + 1);
    rows.push(vec![Integer::from(1)]);
    for k in 0..k_max {
        let next = next_stirling_row(&rows[k], k);
        rows.push(next);
    }
    Stirling1Matrix { rows }
}

/// a_0(ε), …, a_{k_max}(ε).
#[derive(Debug, Clone)]
pub struct AkTable {
    pub epsilon: Rational,
    pub k_max: usize,
    pub values: Vec<Float>,
    /// Absolute decimal digits the table is good for, given the working
    /// precision and the k·log10(2) loss of the largest difference.
    pub digits_certified: u32,
    pub certified: bool,
}

/// Computes the table by the alternating binomial sum over one shared grid
/// φ(1), φ(1+ε), …, φ(1+k_max·ε). The sum is evaluated as iterated forward
/// differences, a_k = (-1)^k Δ^k φ(1), which is the same expression term for
/// term.
pub fn a_coefficients(epsilon: &Rational, k_max: usize, ctx: &PrecisionContext) -> Result<AkTable> {
    if *epsilon <= 0 {
        return Err(Error::Domain("ε must be positive".into()));
    }
    let bits = ctx.bits();
    let grid = phi_grid_prec(&Rational::from(1), epsilon, k_max + 1, bits)?;
    let values = forward_differences(grid);
    let loss = (k_max as f64 * std::f64::consts::LOG10_2).ceil() as u32 + 2;
    let digits_certified = ctx.working_digits().saturating_sub(loss);
    Ok(AkTable {
        epsilon: epsilon.clone(),
        k_max,
        values,
        digits_certified,
        certified: digits_certified >= ctx.digits(),
    })
}

fn forward_differences(mut d: Vec<Float>) -> Vec<Float> {
    let len = d.len();
    let mut out = Vec::with_capacity(len);
    for m in 0..len {
        let a = if m % 2 == 0 { d[0].clone() } else { -d[0].clone() };
        out.push(a);
        for j in 0..len - m - 1 {
            let diff = Float::with_val(d[j].prec(), &d[j + 1] - &d[j]);
            d[j] = diff;
        }
    }
    out
}

/// γ_n with its certification record.
#[derive(Debug, Clone)]
pub struct StieltjesResult {
    pub n: usize,
    pub value: Float,
    pub epsilon: Rational,
    pub k_truncation: usize,
    pub digits_certified: u32,
    pub certified: bool,
    /// Why the result is uncertified, when it is.
    pub note: Option<String>,
}

pub fn default_epsilon() -> Rational {
    Rational::from((1, 32))
}

pub fn default_k_max(n_max: usize) -> usize {
    (4 * n_max).max(n_max + 80)
}

/// Internal digits: target + ⌈k_max·log10 2⌉ + ⌈n·log10(1/ε)⌉ + 30.
pub fn internal_digits(target: u32, n: usize, epsilon: &Rational, k_max: usize) -> u32 {
    let inv_eps = Float::with_val(64, epsilon).recip().log10().to_f64().max(0.0);
    target
        + (k_max as f64 * std::f64::consts::LOG10_2).ceil() as u32
        + (n as f64 * inv_eps).ceil() as u32
        + 30
}

const TAIL_TERMS: usize = 5;

struct SeriesSums {
    /// n!/ε^n Σ a_k |S_k^n|/k! per requested n
    values: Vec<Float>,
    /// magnitudes of the last TAIL_TERMS contributions per n
    tails: Vec<Vec<Float>>,
}

fn stieltjes_sums(table: &AkTable, ns: &RangeInclusive<usize>, prec: u32) -> SeriesSums {
    let n_lo = *ns.start();
    let n_hi = *ns.end();
    let count = n_hi - n_lo + 1;
    let mut sums = vec![Float::new(prec); count];
    let mut tails: Vec<Vec<Float>> = vec![Vec::new(); count];
    let mut row = vec![Integer::from(1)];
    let mut inv_fact = Float::with_val(prec, 1);
    for k in 0..=table.k_max {
        if k > 0 {
            row = next_stirling_row(&row, k - 1);
            inv_fact /= k as u64;
        }
        if k < n_lo {
            continue;
        }
        let w = Float::with_val(prec, &table.values[k] * &inv_fact);
        for n in n_lo..=n_hi.min(k) {
            let i = n - n_lo;
            let mut term = Float::with_val(prec, &w * &row[n]);
            if (k + n) % 2 == 1 {
                term = -term;
            }
            if k + TAIL_TERMS > table.k_max {
                tails[i].push(Float::with_val(prec, term.abs_ref()));
            }
            sums[i] += term;
        }
    }
    let eps = Float::with_val(prec, &table.epsilon);
    let mut scale = Float::with_val(prec, 1);
    let mut values = Vec::with_capacity(count);
    for n in 0..=n_hi {
        if n > 0 {
            scale *= n as u64;
            scale /= &eps;
        }
        if n >= n_lo {
            values.push(Float::with_val(prec, &sums[n - n_lo] * &scale));
            let i = n - n_lo;
            for t in tails[i].iter_mut() {
                *t *= &scale;
            }
        }
    }
    SeriesSums { values, tails }
}

/// γ_n for every n in `ns`, sharing one φ grid and one Stirling sweep.
///
/// `k_max` defaults to max(4·n_max, n_max + 80). Each value is computed at
/// two working precisions twenty digits apart; `digits_certified` counts
/// the agreeing significant digits. A result is flagged uncertified if
/// fewer than `ctx.digits()` agree or if any of the last five retained
/// series terms exceeds 10^-(digits+5) relative to the value.
///
/// The starting working precision follows [`internal_digits`]. When the
/// two runs disagree the guard is raised by the shortfall and the pair
/// recomputed, up to `ctx.max_digits()`. Once they agree, a failed
/// truncation test with a defaulted `k_max` extends the series by a quarter.
pub fn gamma_exact_range(
    ns: RangeInclusive<usize>,
    epsilon: &Rational,
    k_max: Option<usize>,
    ctx: &PrecisionContext,
) -> Result<Vec<StieltjesResult>> {
    if ns.is_empty() {
        return Ok(Vec::new());
    }
    if *epsilon <= 0 {
        return Err(Error::Domain("ε must be positive".into()));
    }
    let n_hi = *ns.end();
    let auto_k = k_max.is_none();
    let mut k_max = k_max.unwrap_or_else(|| default_k_max(n_hi));
    if k_max < n_hi {
        return Err(Error::Domain(format!("k_max = {k_max} is below n = {n_hi}")));
    }
    let mut extra = 0u32;
    loop {
        let digits = internal_digits(ctx.digits(), n_hi, epsilon, k_max) + extra;
        let results = dual_run(&ns, epsilon, k_max, ctx, digits)?;
        let short_tail = results.iter().any(|r| r.note.as_deref().is_some_and(|m| m.contains("k_max")));
        let min_agree = results.iter().map(|r| r.digits_certified).min().unwrap_or(0);
        if min_agree < ctx.digits() {
            let next = extra + ctx.digits() - min_agree + 10;
            if digits + next - extra + 20 <= ctx.max_digits() && extra < 4 * ctx.digits() + 400 {
                extra = next;
                continue;
            }
        } else if short_tail && auto_k && k_max < 8 * n_hi.max(20) {
            k_max += k_max / 4;
            continue;
        }
        return Ok(results);
    }
}

fn dual_run(
    ns: &RangeInclusive<usize>,
    epsilon: &Rational,
    k_max: usize,
    ctx: &PrecisionContext,
    digits: u32,
) -> Result<Vec<StieltjesResult>> {
    let lo_ctx = ctx.with_guard(digits - ctx.digits());
    let hi_ctx = lo_ctx.raised(20);

    let lo_table = a_coefficients(epsilon, k_max, &lo_ctx)?;
    let lo = stieltjes_sums(&lo_table, ns, lo_ctx.bits());
    drop(lo_table);
    let hi_table = a_coefficients(epsilon, k_max, &hi_ctx)?;
    let hi = stieltjes_sums(&hi_table, ns, hi_ctx.bits());

    let out_prec = digits_to_bits(ctx.digits() + 10);
    let trunc_tol = ten_pow(64, -(ctx.digits() as i64) - 5);
    let results = ns
        .clone()
        .enumerate()
        .map(|(i, n)| {
            let a = &lo.values[i];
            let b = &hi.values[i];
            let agree = a.agreeing_digits(b).min(bits_to_digits(lo_ctx.bits()));
            let mut note = None;
            let mag = Float::with_val(64, b.abs_ref());
            let worst_tail = hi.tails[i]
                .iter()
                .map(|t| Float::with_val(64, t / &mag))
                .fold(Float::with_val(64, 0), |acc, x| acc.max(&x));
            if worst_tail > trunc_tol {
                note = Some(format!(
                    "series not converged at k_max = {k_max} (tail term {:.3e} relative); increase k_max",
                    worst_tail.to_f64()
                ));
            } else if agree < ctx.digits() {
                note = Some(format!(
                    "only {agree} digits agree between working precisions; raise precision"
                ));
            }
            let mut value = b.clone();
            value.set_prec(out_prec);
            StieltjesResult {
                n,
                value,
                epsilon: epsilon.clone(),
                k_truncation: k_max,
                digits_certified: agree,
                certified: note.is_none(),
                note,
            }
        })
        .collect();
    Ok(results)
}

pub fn gamma_exact(
    n: usize,
    epsilon: &Rational,
    k_max: Option<usize>,
    ctx: &PrecisionContext,
) -> Result<StieltjesResult> {
    Ok(gamma_exact_range(n..=n, epsilon, k_max, ctx)?.remove(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mp::{euler_gamma, rational_to_float};
    use crate::zeta::zeta;
    use crate::mp::BigComplex;

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(30).unwrap()
    }

    #[test]
    fn harmonic_numbers() {
        assert_eq!(harmonic(0), Rational::new());
        assert_eq!(harmonic(1), Rational::from(1));
        assert_eq!(harmonic(5), Rational::from((137, 60)));
    }

    #[test]
    fn stirling_small_values() {
        let s = stirling1(20);
        assert_eq!(s.get(3, 2), -3);
        assert_eq!(s.get(4, 2), 11);
        for k in 0..=20 {
            assert_eq!(s.get(k, k), 1);
            if k >= 1 {
                assert_eq!(s.get(k, 0), 0);
            }
        }
    }

    #[test]
    fn stirling_rows_expand_falling_factorial() {
        let s = stirling1(20);
        for k in 0..=20usize {
            let mut falling = Integer::from(1);
            for i in 0..k {
                falling *= 7 - i as i64;
            }
            let mut poly = Integer::new();
            let mut xp = Integer::from(1);
            for n in 0..=k {
                poly += Integer::from(&s.get(k, n) * &xp);
                xp *= 7;
            }
            assert_eq!(poly, falling, "k = {k}");
        }
    }

    #[test]
    fn first_coefficients() {
        let eps = default_epsilon();
        let t = a_coefficients(&eps, 1, &ctx().raised(10)).unwrap();
        let p = ctx().raised(10).bits();
        assert_eq!(t.values[0], euler_gamma(p));
        let one_eps = BigComplex::from_real(rational_to_float(&Rational::from(&eps + 1u32), p));
        let direct = zeta(&one_eps, &ctx().raised(10)).unwrap();
        let phi_eps = Float::with_val(p, direct.re() - Float::with_val(p, &eps).recip());
        let expect = Float::with_val(p, &t.values[0] - &phi_eps);
        assert!(crate::mp::agreeing_digits(&t.values[1], &expect) >= 30);
    }

    #[test]
    fn insufficient_precision_is_flagged() {
        let t = a_coefficients(&default_epsilon(), 200, &ctx()).unwrap();
        assert!(!t.certified);
    }

    #[test]
    fn gamma_zero_is_euler() {
        let r = gamma_exact(0, &default_epsilon(), None, &ctx()).unwrap();
        assert!(r.certified, "{:?}", r.note);
        let p = r.value.prec();
        assert!(crate::mp::agreeing_digits(&r.value, &euler_gamma(p)) >= 30);
    }

    #[test]
    fn short_truncation_is_flagged() {
        let r = gamma_exact(5, &default_epsilon(), Some(8), &ctx()).unwrap();
        assert!(!r.certified);
        assert!(r.note.unwrap().contains("k_max"));
    }
}
