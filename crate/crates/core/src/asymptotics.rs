//! Saddle-point asymptotics for a_k(ε) and γ_n, and the sign predictor for
//! astronomically large n.
//!
//! With s = s_n the upper saddle of [`saddle_for_n`] and c = ln(2πi):
//!
//!   γ_n ≈ √(2/π) n! Re[Γ(s) e^{-cs} / (sⁿ √(n+s+3/2))]                 (full)
//!   γ_n ≈ 2 n! Re[s^{s-n-3/2} (s+1/12) e^{-(c+1)s} / √(n+s+3/2)]       (refined)
//!   γ_n ≈ Re e^{φ_n},
//!   φ_n = ½ln(8π) - n + (n+½)ln n + (s-n-½)ln s - ½ln(n+s) - (c+1)s     (phase)
//!
//! All three are evaluated in logarithmic form so that n! and Γ(s) never
//! have to be formed directly.

use std::fmt;
use std::str::FromStr;

use rug::ops::Pow;
use rug::{Float, Integer, Rational};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::mp::{ln_gamma_prec, log10_abs, pi, BigComplex, PrecisionContext};
use crate::norlund_rice::{factorial, integrand_f};
use crate::saddle::{omega_d2, saddle_closed, saddle_for_n, saddle_refine, Branch, SaddlePoint};

/// Smallest k accepted by [`a_k_asymptotic`].
pub const K_MIN: u64 = 10;

/// Smallest n for which asymptotic sign claims are made.
pub const SIGN_FLOOR: u64 = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    Full,
    Refined,
    Phase,
}

#[derive(Debug, Clone)]
pub struct AsymptoticEstimate {
    pub n: Integer,
    pub value: Float,
    pub variant: Variant,
    pub saddle: SaddlePoint,
}

impl AsymptoticEstimate {
    pub fn sign(&self) -> i8 {
        if self.value.is_sign_negative() {
            -1
        } else {
            1
        }
    }

    pub fn log10_abs(&self) -> f64 {
        log10_abs(&self.value)
    }
}

#[derive(Debug, Clone)]
pub struct PhaseResult {
    pub n_description: String,
    pub phase: BigComplex,
    pub sign: i8,
    /// Im φ_n reduced to [0, 2π).
    pub im_mod_2pi: Float,
    /// Decimal places of `im_mod_2pi` stable under 20 extra guard digits.
    pub im_mod_2pi_digits: u32,
    pub certified: bool,
    /// Working decimal digits of the run.
    pub digits: u32,
}

/// ln(2πi) on the principal branch.
fn c_const(p: u32) -> BigComplex {
    let two_pi = pi(p) * 2u32;
    BigComplex::new(two_pi.ln(), pi(p) / 2u32)
}

fn re_exp(l: &BigComplex) -> Float {
    let p = l.prec();
    let (_, c) = l.im().clone().sin_cos(Float::new(p));
    l.re().clone().exp() * c
}

/// Steepest-descent value of a_k at a given saddle of f_k:
/// -Re[(k!/(πi)) √(2π/(-ω''(s))) f_k(s)], principal root.
pub fn a_k_asymptotic_at(saddle: &SaddlePoint, ctx: &PrecisionContext) -> Result<Float> {
    let epsilon = saddle
        .epsilon
        .as_ref()
        .ok_or_else(|| Error::Domain("a_k estimate needs a saddle with ε".into()))?;
    let k = saddle
        .n_or_k
        .to_usize()
        .ok_or_else(|| Error::Domain("k out of range".into()))?;
    let p = ctx.bits();
    let s = &saddle.location;
    let w2 = omega_d2(s, k, epsilon, ctx)?;
    let f = integrand_f(s, k, epsilon, ctx)?;
    let two_pi = BigComplex::from_real(pi(p) * 2u32);
    let root = (&two_pi / &(-&w2)).sqrt();
    let pi_i = BigComplex::new(Float::new(p), pi(p));
    let v = &(&root * &f).mul_real(&factorial(k, p)) / &pi_i;
    Ok(-v.re().clone())
}

/// a_k(ε) from the two conjugate saddles, evaluated at the upper saddle after
/// refinement on the full saddle equation.
pub fn a_k_asymptotic(k: u64, epsilon: &Rational, ctx: &PrecisionContext) -> Result<Float> {
    if k < K_MIN {
        return Err(Error::Domain(format!("a_k asymptotics need k ≥ {K_MIN}, got {k}")));
    }
    let start = saddle_closed(k, epsilon, Branch::Plus, ctx)?;
    let refined = saddle_refine(&start, ctx)?;
    a_k_asymptotic_at(&refined, ctx)
}

fn ln_factorial(n: &Integer, p: u32) -> Float {
    (Float::with_val(p, n) + 1u32).ln_gamma()
}

fn check_n(n: &Integer) -> Result<()> {
    if *n < 1 {
        return Err(Error::Domain(format!("asymptotic γ_n needs n ≥ 1, got {n}")));
    }
    Ok(())
}

/// √(2/π) n! Re[Γ(s_n) e^{-c s_n} / (s_nⁿ √(n+s_n+3/2))].
pub fn gamma_asymptotic(n: &Integer, ctx: &PrecisionContext) -> Result<AsymptoticEstimate> {
    check_n(n)?;
    let saddle = saddle_for_n(n, Branch::Plus, ctx)?;
    let p = ctx.bits() + guard_bits(n);
    let s = saddle.location.clone().with_prec(p);
    let nf = Float::with_val(p, n);
    let half = Float::with_val(p, 0.5);
    let mut l = ln_gamma_prec(&s, p)?;
    l = &l - &(&c_const(p) * &s);
    l = &l - &s.ln().mul_real(&nf);
    l = &l - &s.add_real(&nf).add_real(&Float::with_val(p, 1.5)).ln().mul_real(&half);
    let const_part = ln_factorial(n, p) + (Float::with_val(p, 2) / pi(p)).ln() / 2u32;
    l = l.add_real(&const_part);
    Ok(AsymptoticEstimate {
        n: n.clone(),
        value: Float::with_val(ctx.bits(), re_exp(&l)),
        variant: Variant::Full,
        saddle,
    })
}

/// 2 n! Re[s_n^{s_n-n-3/2} (s_n + 1/12) e^{-(c+1)s_n} / √(n+s_n+3/2)].
pub fn gamma_asymptotic_refined(n: &Integer, ctx: &PrecisionContext) -> Result<AsymptoticEstimate> {
    check_n(n)?;
    let saddle = saddle_for_n(n, Branch::Plus, ctx)?;
    let p = ctx.bits() + guard_bits(n);
    let s = saddle.location.clone().with_prec(p);
    let nf = Float::with_val(p, n);
    let half = Float::with_val(p, 0.5);
    let ls = s.ln();
    let shift: Float = Float::with_val(p, &nf) + 1.5;
    let expo = s.add_real(&-shift);
    let mut l = &expo * &ls;
    l = &l + &s.add_real(&(Float::with_val(p, 1) / 12u32)).ln();
    l = &l - &(&c_const(p).add_i64(1) * &s);
    l = &l - &s.add_real(&nf).add_real(&Float::with_val(p, 1.5)).ln().mul_real(&half);
    let const_part = ln_factorial(n, p) + Float::with_val(p, 2).ln();
    l = l.add_real(&const_part);
    Ok(AsymptoticEstimate {
        n: n.clone(),
        value: Float::with_val(ctx.bits(), re_exp(&l)),
        variant: Variant::Refined,
        saddle,
    })
}

/// Bits lost to the size of Im of the exponent, which is O(n).
fn guard_bits(n: &Integer) -> u32 {
    n.significant_bits() + 8
}

fn phase_value(n: &Integer, ctx: &PrecisionContext) -> Result<(BigComplex, SaddlePoint)> {
    let saddle = saddle_for_n(n, Branch::Plus, ctx)?;
    let p = ctx.bits();
    let s = saddle.location.clone();
    let nf = Float::with_val(p, n);
    let half = Float::with_val(p, 0.5);
    let ln_n = Float::with_val(p, nf.ln_ref());
    // ½ln(8π) - n + (n+½) ln n
    let real_part = (pi(p) * 8u32).ln() / 2u32 - &nf + Float::with_val(p, &nf + &half) * &ln_n;
    let ls = s.ln();
    let mut phi = &s.add_real(&-(Float::with_val(p, &nf + &half))) * &ls;
    phi = &phi - &s.add_real(&nf).ln().mul_real(&half);
    phi = &phi - &(&c_const(p).add_i64(1) * &s);
    Ok((phi.add_real(&real_part), saddle))
}

fn reduce_2pi(x: &Float) -> Float {
    let p = x.prec();
    let two_pi = pi(p) * 2u32;
    let q = Float::with_val(p, x / &two_pi).floor();
    let r = Float::with_val(p, x - Float::with_val(p, &q * &two_pi));
    if r.is_sign_negative() {
        r + two_pi
    } else {
        r
    }
}

/// Distance from θ ∈ [0, 2π) to the nearest zero of cos.
fn distance_to_cos_zero(theta: &Float) -> Float {
    let p = theta.prec();
    let half_pi = pi(p) / 2u32;
    let a = Float::with_val(p, theta - &half_pi).abs();
    let b = Float::with_val(p, theta - Float::with_val(p, &half_pi * 3u32)).abs();
    a.min(&b)
}

/// Working digits needed for the phase of an n with `decimal_digits`
/// digits: the terms of φ_n are of size n ln n and the sign needs
/// Im φ_n mod 2π to several places.
pub fn phase_digits(decimal_digits: u32) -> u32 {
    decimal_digits + 40
}

/// φ_n and the sign of cos(Im φ_n), certified by rerunning with 20 more
/// guard digits. The context's digit count is raised to at least
/// [`phase_digits`] of n.
pub fn phase(n: &Integer, ctx: &PrecisionContext) -> Result<PhaseResult> {
    check_n(n)?;
    let digits = ctx.digits().max(phase_digits(decimal_digit_count(n)));
    let run = ctx.with_digits(digits);
    let (phi_a, _) = phase_value(n, &run)?;
    let (phi_b, _) = phase_value(n, &run.raised(20))?;
    let ta = reduce_2pi(phi_a.im());
    let tb = reduce_2pi(phi_b.im());
    let p = tb.prec();
    let two_pi = pi(p) * 2u32;
    let mut diff = Float::with_val(p, &ta - &tb).abs();
    // a difference straddling 0 ≡ 2π
    let wrapped = Float::with_val(p, &two_pi - &diff);
    if wrapped < diff {
        diff = wrapped;
    }
    let cap = run.working_digits();
    let im_digits = if diff.is_zero() {
        cap
    } else {
        let l = -log10_abs(&diff);
        if l <= 0.0 {
            0
        } else {
            (l.floor() as u32).min(cap)
        }
    };
    let (_, cos) = tb.clone().sin_cos(Float::new(p));
    let sign = if cos.is_sign_negative() { -1 } else { 1 };
    let margin = distance_to_cos_zero(&tb);
    let uncertainty = crate::mp::ten_pow(64, -(im_digits as i64));
    let certified = im_digits >= 5 && margin > uncertainty;
    Ok(PhaseResult {
        n_description: describe(n),
        phase: phi_b,
        sign,
        im_mod_2pi: tb,
        im_mod_2pi_digits: im_digits,
        certified,
        digits: run.digits(),
    })
}

/// The phase form as an estimate of γ_n, e^{Re φ_n} cos(Im φ_n).
pub fn gamma_asymptotic_phase(n: &Integer, ctx: &PrecisionContext) -> Result<AsymptoticEstimate> {
    check_n(n)?;
    let run = ctx.with_digits(ctx.digits().max(phase_digits(decimal_digit_count(n))));
    let (phi, saddle) = phase_value(n, &run)?;
    Ok(AsymptoticEstimate {
        n: n.clone(),
        value: Float::with_val(ctx.bits(), re_exp(&phi)),
        variant: Variant::Phase,
        saddle,
    })
}

/// Sign of γ_n from the phase, for n given as a decimal integer, `AeM`
/// or `10^M`. Requires n ≥ 20.
pub fn sign_gamma(n_spec: &str, ctx: &PrecisionContext) -> Result<PhaseResult> {
    let spec: NSpec = n_spec.parse()?;
    let n = spec.value();
    if n < SIGN_FLOOR {
        return Err(Error::Domain(format!(
            "sign predictions need n ≥ {SIGN_FLOOR}; use the exact algorithm below that"
        )));
    }
    let mut result = phase(&n, ctx)?;
    result.n_description = spec.to_string();
    Ok(result)
}

fn decimal_digit_count(n: &Integer) -> u32 {
    if *n == 0 {
        1
    } else {
        // exact: compare against the power of ten at the estimated length
        let est = (n.significant_bits() as f64 * std::f64::consts::LOG10_2).floor() as u32;
        if *n >= Integer::from(10).pow(est) {
            est + 1
        } else {
            est
        }
    }
}

fn describe(n: &Integer) -> String {
    let digits = decimal_digit_count(n);
    if digits > 30 {
        let pow = Integer::from(10).pow(digits - 1);
        if *n == pow {
            return format!("10^{}", digits - 1);
        }
    }
    n.to_string()
}

/// An exactly specified positive integer: `mantissa · 10^exp10`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NSpec {
    pub mantissa: Integer,
    pub exp10: u32,
}

impl NSpec {
    pub fn value(&self) -> Integer {
        &self.mantissa * Integer::from(10).pow(self.exp10)
    }
}

impl fmt::Display for NSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp10 == 0 {
            write!(f, "{}", self.mantissa)
        } else if self.mantissa == 1 {
            write!(f, "10^{}", self.exp10)
        } else {
            write!(f, "{}e{}", self.mantissa, self.exp10)
        }
    }
}

impl FromStr for NSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::Parse(format!("cannot read {s:?} as an integer, AeM or 10^M"));
        let digits_only = |x: &str| !x.is_empty() && x.bytes().all(|b| b.is_ascii_digit());
        let (mantissa, exp10) = if let Some(m) = t.strip_prefix("10^") {
            if !digits_only(m) {
                return Err(bad());
            }
            (Integer::from(1), m.parse::<u32>().map_err(|_| bad())?)
        } else if let Some((a, b)) = t.split_once(['e', 'E']) {
            if !digits_only(a) || !digits_only(b) {
                return Err(bad());
            }
            (a.parse::<Integer>().map_err(|_| bad())?, b.parse::<u32>().map_err(|_| bad())?)
        } else {
            if !digits_only(t) {
                return Err(bad());
            }
            (t.parse::<Integer>().map_err(|_| bad())?, 0)
        };
        Ok(NSpec { mantissa, exp10 })
    }
}
