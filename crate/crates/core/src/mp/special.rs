//! Γ, ψ and ψ' for complex arguments.
//!
//! All three use the same scheme: reflection for Re z < 1/2, an upward
//! recurrence shift until |z| is large enough for the Stirling-type
//! asymptotic series to reach the target precision, then the series itself
//! truncated once terms fall below 2^-prec.

use rug::Float;

use super::bernoulli::bernoulli_even;
use super::complex::BigComplex;
use super::{pi, PrecisionContext};
use crate::error::{Error, Result};

/// Principal logarithm, Im ∈ (-π, π].
pub fn complex_log(z: &BigComplex, ctx: &PrecisionContext) -> Result<BigComplex> {
    if z.is_zero() {
        return Err(Error::Domain("logarithm of zero".into()));
    }
    Ok(z.clone().with_prec(ctx.bits()).ln())
}

pub fn gamma(z: &BigComplex, ctx: &PrecisionContext) -> Result<BigComplex> {
    gamma_prec(z, ctx.bits())
}

pub fn digamma(z: &BigComplex, ctx: &PrecisionContext) -> Result<BigComplex> {
    digamma_prec(z, ctx.bits())
}

pub fn trigamma(z: &BigComplex, ctx: &PrecisionContext) -> Result<BigComplex> {
    trigamma_prec(z, ctx.bits())
}

/// ln Γ(x) for real x > 0.
pub fn ln_gamma_real(x: &Float, ctx: &PrecisionContext) -> Float {
    Float::with_val(ctx.bits(), x).ln_gamma()
}

fn check_pole(z: &BigComplex) -> Result<()> {
    if z.im().is_zero() && z.re().is_integer() && *z.re() <= 0 {
        let n = z.re().to_integer().and_then(|i| i.to_i64()).unwrap_or(i64::MIN);
        return Err(Error::Pole(n));
    }
    Ok(())
}

/// Radius beyond which the asymptotic series reaches 2^-prec.
fn asymptotic_radius(prec: u32) -> f64 {
    prec as f64 * std::f64::consts::LN_2 / (2.0 * std::f64::consts::PI) + 2.0
}

/// Shift count so that |z + n| exceeds the asymptotic radius (Re z ≥ 1/2).
fn shift_count(z: &BigComplex, prec: u32) -> u32 {
    let r = asymptotic_radius(prec);
    let x = z.re().to_f64();
    let y = z.im().to_f64();
    if x.hypot(y) >= r {
        return 0;
    }
    let need = (r * r - y * y).max(0.0).sqrt() - x;
    need.ceil().max(0.0) as u32 + 1
}

/// Extra working bits to absorb the size of ln Γ before exponentiation.
fn magnitude_guard(z: &BigComplex) -> u32 {
    let m = z.abs().to_f64().max(2.0);
    ((m * m.ln()).log2().max(0.0)) as u32 + 16
}

fn sin_pi(z: &BigComplex, prec: u32) -> BigComplex {
    z.mul_real(&pi(prec)).sin()
}

/// Stirling series for ln Γ(w), |w| beyond the asymptotic radius, Re w > 0.
fn ln_gamma_asymptotic(w: &BigComplex, prec: u32) -> BigComplex {
    let half_ln_2pi = (pi(prec) * 2u32).ln() / 2u32;
    let lw = w.ln();
    let mut sum = (&w.add_real(&Float::with_val(prec, -0.5)) * &lw) - w;
    sum = sum.add_real(&half_ln_2pi);
    let tol = Float::with_val(prec, Float::i_exp(1, -(prec as i32)));
    let winv = w.recip();
    let winv2 = winv.square();
    let mut wpow = winv.clone();
    let scale = sum.abs().max(&Float::with_val(prec, 1));
    let mut m = 32usize;
    let mut j = 1usize;
    loop {
        let b = bernoulli_even(m);
        while j <= b.len() {
            let coef = Float::with_val(prec, &b[j - 1]) / ((2 * j) as u64 * (2 * j - 1) as u64);
            let term = wpow.mul_real(&coef);
            let done = term.abs() < Float::with_val(prec, &tol * &scale);
            sum = &sum + &term;
            if done {
                return sum;
            }
            wpow = &wpow * &winv2;
            j += 1;
        }
        m *= 2;
    }
}

/// Principal-branch ln Γ(z) for Re z ≥ 1/2, continuous in z.
pub(crate) fn ln_gamma_prec(z: &BigComplex, prec: u32) -> Result<BigComplex> {
    let half = Float::with_val(prec, 0.5);
    if *z.re() < half {
        return Err(Error::Domain("ln Γ only implemented for Re z ≥ 1/2".into()));
    }
    let wp = prec + 16;
    let z = z.clone().with_prec(wp);
    let n = shift_count(&z, wp);
    let mut g = ln_gamma_asymptotic(&z.add_i64(n as i64), wp);
    for j in 0..n {
        g = &g - &z.add_i64(j as i64).ln();
    }
    Ok(g.with_prec(prec))
}

pub(crate) fn gamma_prec(z: &BigComplex, prec: u32) -> Result<BigComplex> {
    check_pole(z)?;
    let wp = prec + magnitude_guard(z);
    let z = z.clone().with_prec(wp);
    let half = Float::with_val(wp, 0.5);
    if *z.re() < half {
        // Γ(z) = π / (sin(πz) Γ(1-z))
        let one_minus = (-&z).add_i64(1);
        let g = gamma_prec(&one_minus, wp)?;
        let s = sin_pi(&z, wp);
        let out = BigComplex::from_real(pi(wp)) / (&s * &g);
        return Ok(out.with_prec(prec));
    }
    let n = shift_count(&z, wp);
    let w = z.add_i64(n as i64);
    let mut g = ln_gamma_asymptotic(&w, wp).exp();
    if n > 0 {
        let mut prod = z.clone();
        for j in 1..n {
            prod = &prod * &z.add_i64(j as i64);
        }
        g = &g / &prod;
    }
    Ok(g.with_prec(prec))
}

pub(crate) fn digamma_prec(z: &BigComplex, prec: u32) -> Result<BigComplex> {
    check_pole(z)?;
    let wp = prec + 16;
    let z = z.clone().with_prec(wp);
    let half = Float::with_val(wp, 0.5);
    if *z.re() < half {
        // ψ(z) = ψ(1-z) - π cot(πz)
        let one_minus = (-&z).add_i64(1);
        let psi = digamma_prec(&one_minus, wp)?;
        let cot = z.mul_real(&pi(wp)).tan().recip();
        let out = &psi - &cot.mul_real(&pi(wp));
        return Ok(out.with_prec(prec));
    }
    let n = shift_count(&z, wp);
    let w = z.add_i64(n as i64);
    // ψ(w) ~ ln w - 1/(2w) - Σ B_{2j} / (2j w^{2j})
    let winv = w.recip();
    let winv2 = winv.square();
    let mut sum = &w.ln() - &winv.div_real(&Float::with_val(wp, 2));
    let tol = Float::with_val(wp, Float::i_exp(1, -(wp as i32)));
    let scale = sum.abs().max(&Float::with_val(wp, 1));
    let mut wpow = winv2.clone();
    let mut m = 32usize;
    let mut j = 1usize;
    'outer: loop {
        let b = bernoulli_even(m);
        while j <= b.len() {
            let coef = Float::with_val(wp, &b[j - 1]) / (2 * j) as u64;
            let term = wpow.mul_real(&coef);
            let done = term.abs() < Float::with_val(wp, &tol * &scale);
            sum = &sum - &term;
            if done {
                break 'outer;
            }
            wpow = &wpow * &winv2;
            j += 1;
        }
        m *= 2;
    }
    for k in 0..n {
        sum = &sum - &z.add_i64(k as i64).recip();
    }
    Ok(sum.with_prec(prec))
}

pub(crate) fn trigamma_prec(z: &BigComplex, prec: u32) -> Result<BigComplex> {
    check_pole(z)?;
    let wp = prec + 16;
    let z = z.clone().with_prec(wp);
    let half = Float::with_val(wp, 0.5);
    if *z.re() < half {
        // ψ'(z) = π² / sin²(πz) - ψ'(1-z)
        let one_minus = (-&z).add_i64(1);
        let t = trigamma_prec(&one_minus, wp)?;
        let s = sin_pi(&z, wp);
        let pi2 = BigComplex::from_real(pi(wp).square());
        let out = &(pi2 / s.square()) - &t;
        return Ok(out.with_prec(prec));
    }
    let n = shift_count(&z, wp);
    let w = z.add_i64(n as i64);
    // ψ'(w) ~ 1/w + 1/(2w²) + Σ B_{2j} / w^{2j+1}
    let winv = w.recip();
    let winv2 = winv.square();
    let mut sum = &winv + &winv2.div_real(&Float::with_val(wp, 2));
    let tol = Float::with_val(wp, Float::i_exp(1, -(wp as i32)));
    let scale = sum.abs();
    let mut wpow = &winv2 * &winv;
    let mut m = 32usize;
    let mut j = 1usize;
    'outer: loop {
        let b = bernoulli_even(m);
        while j <= b.len() {
            let coef = Float::with_val(wp, &b[j - 1]);
            let term = wpow.mul_real(&coef);
            let done = term.abs() < Float::with_val(wp, &tol * &scale);
            sum = &sum + &term;
            if done {
                break 'outer;
            }
            wpow = &wpow * &winv2;
            j += 1;
        }
        m *= 2;
    }
    for k in 0..n {
        sum = &sum + &z.add_i64(k as i64).square().recip();
    }
    Ok(sum.with_prec(prec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mp::{euler_gamma, Agreement};

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(40).unwrap()
    }

    fn c(re: f64, im: f64) -> BigComplex {
        BigComplex::with_val(ctx().bits(), re, im)
    }

    #[test]
    fn gamma_factorial_and_half() {
        let g5 = gamma(&c(5.0, 0.0), &ctx()).unwrap();
        assert!(g5.agreeing_digits(&c(24.0, 0.0)) >= 40);
        let gh = gamma(&c(0.5, 0.0), &ctx()).unwrap();
        let sqrt_pi = BigComplex::from_real(pi(ctx().bits()).sqrt());
        assert!(gh.agreeing_digits(&sqrt_pi) >= 40);
    }

    #[test]
    fn gamma_on_imaginary_line_matches_modulus_identity() {
        // |Γ(1+iy)|² = πy / sinh(πy), evaluated independently
        let p = ctx().bits();
        let y = Float::with_val(p, 10);
        let g = gamma(&c(1.0, 10.0), &ctx()).unwrap();
        let lhs = g.norm_sqr();
        let piy = pi(p) * &y;
        let rhs = Float::with_val(p, &piy / piy.clone().sinh());
        assert!(crate::mp::agreeing_digits(&lhs, &rhs) >= 38);
    }

    #[test]
    fn gamma_pole_is_reported() {
        assert!(matches!(gamma(&c(-3.0, 0.0), &ctx()), Err(Error::Pole(-3))));
        assert!(matches!(gamma(&c(0.0, 0.0), &ctx()), Err(Error::Pole(0))));
    }

    #[test]
    fn digamma_and_trigamma_at_one() {
        let p = ctx().bits();
        let psi1 = digamma(&c(1.0, 0.0), &ctx()).unwrap();
        let expect = BigComplex::from_real(-euler_gamma(p));
        assert!(psi1.agreeing_digits(&expect) >= 40);
        let t1 = trigamma(&c(1.0, 0.0), &ctx()).unwrap();
        let expect = BigComplex::from_real(pi(p).square() / 6u32);
        assert!(t1.agreeing_digits(&expect) >= 40);
    }

    #[test]
    fn digamma_harmonic_difference() {
        let p = ctx().bits();
        let d = &digamma(&c(6.0, 0.0), &ctx()).unwrap() - &digamma(&c(1.0, 0.0), &ctx()).unwrap();
        let h5 = BigComplex::from_real(Float::with_val(p, 137) / 60u32);
        assert!(d.agreeing_digits(&h5) >= 39);
    }

    #[test]
    fn reflection_region_agrees_with_recurrence() {
        let z = c(-2.3, 0.7);
        let g = gamma(&z, &ctx()).unwrap();
        let g1 = gamma(&z.add_i64(1), &ctx()).unwrap();
        assert!((&z * &g).agreeing_digits(&g1) >= 38);
        let psi = digamma(&z, &ctx()).unwrap();
        let psi1 = digamma(&z.add_i64(1), &ctx()).unwrap();
        assert!((&psi + &z.recip()).agreeing_digits(&psi1) >= 38);
        let t = trigamma(&z, &ctx()).unwrap();
        let t1 = trigamma(&z.add_i64(1), &ctx()).unwrap();
        assert!((&t - &z.square().recip()).agreeing_digits(&t1) >= 38);
    }

    #[test]
    fn complex_log_principal_branch() {
        let l = complex_log(&c(0.0, 1.0), &ctx()).unwrap();
        assert!(l.re().is_zero());
        let half_pi = pi(ctx().bits()) / 2u32;
        assert!(crate::mp::agreeing_digits(l.im(), &half_pi) >= 40);
        let l = complex_log(&c(-1.0, 0.0), &ctx()).unwrap();
        assert!(*l.im() > 0);
        assert!(complex_log(&c(0.0, 0.0), &ctx()).is_err());
    }
}
