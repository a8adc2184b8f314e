//! Saddle points of the vertical-line integrand f_k(s,ε) and the
//! logarithmic derivatives used by the steepest-descent estimate.
//!
//! The closed-form saddles are
//!
//!   s_k = (k+3/2) / (ε W(±(k+3/2)/(2πi))),
//!
//! obtained after replacing ζ(εs) by 1. The "plus" saddle takes the
//! principal branch W₀ at (k+3/2)/(2πi), which lies on the negative
//! imaginary axis, and sits in the upper half plane; "minus" is its
//! conjugate. [`saddle_refine`] solves the full equation
//! p_k ζ(εs) + ε ζ'(εs) = 0 by Newton's method.

use rug::{Float, Integer, Rational};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::mp::{digamma_prec, pi, rational_to_float, trigamma_prec, BigComplex, PrecisionContext};
use crate::norlund_rice::{check_poles, g_prec};
use crate::zeta::zeta_jet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn sign(self) -> i64 {
        match self {
            Branch::Plus => 1,
            Branch::Minus => -1,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SaddlePoint {
    /// k for a_k saddles, n for the γ_n saddles.
    pub n_or_k: Integer,
    /// None for the ε-free saddles of the final γ_n formula.
    pub epsilon: Option<Rational>,
    pub branch: Branch,
    pub location: BigComplex,
    /// For a_k saddles |∂ω/∂s| at `location`; for γ_n saddles the relative
    /// residual of 3 + 2n + s(2 ln(2π/s) ± iπ) = 0.
    pub residual: Float,
}

// ---------------------------------------------------------------------------
// Lambert W

const SEED_PREC: u32 = 64;

fn halley_exp(w: &BigComplex, z: &BigComplex) -> BigComplex {
    let e = w.exp();
    let f = &(w * &e) - z;
    let w1 = w.add_i64(1);
    let w2 = w.add_i64(2);
    let den = &(&e * &w1) - &(&(&w2 * &f) / &w1.mul_i64(2));
    &f / &den
}

fn halley_log(w: &BigComplex, target: &BigComplex) -> BigComplex {
    let h = &(w + &w.ln()) - target;
    let h1 = &w.add_i64(1) / w;
    let h2 = -(w.square().recip());
    let num = (&h * &h1).mul_i64(2);
    let den = &h1.square().mul_i64(2) - &(&h * &h2);
    &num / &den
}

fn seed(z: &BigComplex, branch: i64) -> BigComplex {
    let p = SEED_PREC;
    let z = z.clone().with_prec(p);
    let e = Float::with_val(p, 1).exp();
    let near_branch_point = z.add_real(&Float::with_val(p, e.clone().recip()));
    let from_above = !z.im().is_sign_negative();
    if near_branch_point.abs() < 0.3 && (branch == 0 || from_above) {
        let mut q = near_branch_point.mul_real(&e).mul_i64(2).sqrt();
        if branch == -1 {
            q = -q;
        }
        let q2 = q.square();
        let q3 = &q2 * &q;
        let c = Float::with_val(p, 11) / 72u32;
        return (&(&q - &q2.div_real(&Float::with_val(p, 3))) + &q3.mul_real(&c)).add_i64(-1);
    }
    if branch == 0 && z.abs() < 0.3 {
        let z2 = z.square();
        let z3 = &z2 * &z;
        let z4 = z2.square();
        let c3 = Float::with_val(p, 1.5);
        let c4 = Float::with_val(p, 8) / 3u32;
        return &(&(&z - &z2) + &z3.mul_real(&c3)) - &z4.mul_real(&c4);
    }
    if branch == 0 && z.abs() <= 3 {
        let l = z.add_i64(1).ln();
        let corr = &l.add_i64(1).ln() / &l.add_i64(2);
        return &l * &(-corr).add_i64(1);
    }
    let two_pi_i = BigComplex::new(Float::new(p), pi(p) * 2u32);
    let l1 = &z.ln() + &two_pi_i.mul_i64(branch);
    let l2 = l1.ln();
    &(&l1 - &l2) + &(&l2 / &l1)
}

/// Relative residual |W e^W - z| / |z|, evaluated with enough extra bits
/// to absorb the growth of e^W.
pub fn lambert_residual(w: &BigComplex, z: &BigComplex) -> Float {
    let extra = (w.abs_max().to_f64().abs().max(1.0).log2().ceil() as u32) + 16;
    let p = w.prec().max(z.prec()) + extra;
    let wp = w.clone().with_prec(p);
    let zp = z.clone().with_prec(p);
    if zp.is_zero() {
        return wp.abs();
    }
    let r = &(&wp * &wp.exp()) - &zp;
    Float::with_val(w.prec(), r.abs() / zp.abs())
}

/// Lambert W on branch 0 or -1, with W(0) = 0 on branch 0.
///
/// A low-precision seed (series at 0, branch-point expansion near -1/e,
/// or the asymptotic L₁ - L₂ + L₂/L₁ expansion) is polished by Halley's
/// method while the precision is tripled, so only a bounded number of
/// steps run at the target precision. For |W| > 2 the iteration uses the
/// logarithmic form W + ln W = ln z + 2πim, which keeps huge arguments
/// away from overflow.
pub fn lambert_w(z: &BigComplex, branch: i64, ctx: &PrecisionContext) -> Result<BigComplex> {
    let w = lambert_w_prec(z, branch, ctx.bits())?;
    let res = lambert_residual(&w, z);
    let bound = crate::mp::ten_pow(64, -(ctx.digits() as i64) + 5);
    if res > bound {
        return Err(Error::NoConvergence {
            iterations: 0,
            last: format!("W = {w}, relative residual {:.3e}", res.to_f64()),
        });
    }
    Ok(w)
}

pub(crate) fn lambert_w_prec(z: &BigComplex, branch: i64, prec: u32) -> Result<BigComplex> {
    if branch != 0 && branch != -1 {
        return Err(Error::Domain(format!("Lambert W branch {branch} not supported")));
    }
    if !z.is_finite() {
        return Err(Error::Domain("Lambert W of a non-finite argument".into()));
    }
    if z.is_zero() {
        return if branch == 0 {
            Ok(BigComplex::zero(prec))
        } else {
            Err(Error::Domain("W₋₁(0) is undefined".into()))
        };
    }
    let target = prec + 16;
    let mut levels = vec![target];
    while *levels.last().unwrap() > 3 * SEED_PREC {
        let p = levels.last().unwrap().div_ceil(3);
        levels.push(p);
    }
    levels.push(SEED_PREC.min(target));
    levels.reverse();
    levels.dedup();

    let mut w = seed(z, branch);
    // the log form needs the branch offset m in W + ln W = ln z + 2πim
    let m = {
        let p = SEED_PREC;
        let zl = z.clone().with_prec(p);
        let d = &(&w + &w.ln()) - &zl.ln();
        (d.im().to_f64() / (2.0 * std::f64::consts::PI)).round() as i64
    };
    let mut iterations = 0usize;
    for (level, &p) in levels.iter().enumerate() {
        let zp = z.clone().with_prec(p);
        w.set_prec(p);
        let log_target = {
            let two_pi_i = BigComplex::new(Float::new(p), pi(p) * 2u32);
            &zp.ln() + &two_pi_i.mul_i64(m)
        };
        let max_steps = if level == 0 { 100 } else { 8 };
        let tol = Float::with_val(p, Float::i_exp(1, -(p as i32) + 6));
        let mut converged = false;
        for _ in 0..max_steps {
            iterations += 1;
            let use_log = w.abs_max() > 2;
            let dw = if use_log {
                halley_log(&w, &log_target)
            } else {
                halley_exp(&w, &zp)
            };
            if !dw.is_finite() {
                return Err(Error::NoConvergence {
                    iterations,
                    last: w.to_string(),
                });
            }
            w = &w - &dw;
            let scale = w.abs_max().max(&Float::with_val(p, Float::i_exp(1, -(p as i32))));
            if dw.abs_max() <= Float::with_val(p, &tol * &scale) {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::NoConvergence {
                iterations,
                last: w.to_string(),
            });
        }
    }
    Ok(w.with_prec(prec))
}

// ---------------------------------------------------------------------------
// Closed-form saddles

fn two_pi_i_inv(p: u32) -> BigComplex {
    // 1/(2πi) = -i/(2π)
    let two_pi = pi(p) * 2u32;
    BigComplex::new(Float::new(p), -two_pi.recip())
}

fn closed_location(a: &Float, eps: &Float, branch: Branch, prec: u32) -> Result<BigComplex> {
    let z = two_pi_i_inv(prec).mul_real(a);
    let w = lambert_w_prec(&z, 0, prec)?;
    let s = w.mul_real(eps).recip().mul_real(a);
    Ok(match branch {
        Branch::Plus => s,
        Branch::Minus => s.conj(),
    })
}

/// Relative residual of 3 + 2k + sε(2 ln(2π/(sε)) ± iπ) = 0, + for the
/// upper saddle.
pub fn saddle_eq1_residual(s: &BigComplex, k: &Integer, epsilon: &Float, branch: Branch) -> Float {
    let p = s.prec();
    let se = s.mul_real(epsilon);
    let a2 = Float::with_val(p, k) * 2u32 + 3u32;
    let two_pi = BigComplex::from_real(pi(p) * 2u32);
    let l = (&two_pi / &se).ln().mul_i64(2);
    let ipi = BigComplex::new(Float::new(p), pi(p)).mul_i64(branch.sign());
    let r = (&se * &(&l + &ipi)).add_real(&a2);
    r.abs() / a2
}

/// s_k for the a_k integrand, with the residual of the exact saddle
/// equation at that point.
pub fn saddle_closed(k: u64, epsilon: &Rational, branch: Branch, ctx: &PrecisionContext) -> Result<SaddlePoint> {
    if *epsilon <= 0 {
        return Err(Error::Domain("ε must be positive".into()));
    }
    let prec = ctx.bits();
    let a = Float::with_val(prec, k) + 1.5;
    let eps = rational_to_float(epsilon, prec);
    let location = closed_location(&a, &eps, branch, prec)?;
    let residual = omega_d1(&location, k as usize, epsilon, ctx)?.abs();
    Ok(SaddlePoint {
        n_or_k: Integer::from(k),
        epsilon: Some(epsilon.clone()),
        branch,
        location,
        residual,
    })
}

/// s_n = (n+3/2)/W(±(n+3/2)/(2πi)) for the final γ_n formula.
pub fn saddle_for_n(n: &Integer, branch: Branch, ctx: &PrecisionContext) -> Result<SaddlePoint> {
    if *n < 1 {
        return Err(Error::Domain(format!("saddle_for_n needs n ≥ 1, got {n}")));
    }
    let prec = ctx.bits();
    let a = Float::with_val(prec, n) + 1.5;
    let one = Float::with_val(prec, 1);
    let location = closed_location(&a, &one, branch, prec)?;
    let residual = saddle_eq1_residual(&location, n, &one, branch);
    Ok(SaddlePoint {
        n_or_k: n.clone(),
        epsilon: None,
        branch,
        location,
        residual,
    })
}

// ---------------------------------------------------------------------------
// Logarithmic derivatives

struct Parts {
    eps: Float,
    /// s ε
    se: BigComplex,
}

fn parts(s: &BigComplex, epsilon: &Rational, wp: u32) -> Parts {
    let eps = rational_to_float(epsilon, wp);
    let s = s.clone().with_prec(wp);
    let se = s.mul_real(&eps);
    Parts { eps, se }
}

fn p_prec(s: &BigComplex, k: usize, epsilon: &Rational, prec: u32, plus_form: bool) -> Result<BigComplex> {
    let wp = prec + 16;
    let Parts { eps, se } = parts(s, epsilon, wp);
    let s = s.clone().with_prec(wp);
    let two = Float::with_val(wp, 2);
    let half_eps = Float::with_val(wp, &eps / 2u32);
    let head = &digamma_prec(&s, wp)? - &digamma_prec(&s.add_i64(k as i64 + 1), wp)?;
    let reflected = if plus_form { se.add_i64(1) } else { (-&se).add_i64(1) };
    let mut tail = &digamma_prec(&se.div_real(&two), wp)? + &digamma_prec(&reflected.div_real(&two), wp)?;
    tail = tail.add_real(&-(pi(wp).ln() * 2u32));
    Ok((&head + &tail.mul_real(&half_eps)).with_prec(prec))
}

fn p1_prec(s: &BigComplex, k: usize, epsilon: &Rational, prec: u32, plus_form: bool) -> Result<BigComplex> {
    let wp = prec + 16;
    let Parts { eps, se } = parts(s, epsilon, wp);
    let s = s.clone().with_prec(wp);
    let two = Float::with_val(wp, 2);
    let q = Float::with_val(wp, &eps / 2u32).square();
    let head = &trigamma_prec(&s, wp)? - &trigamma_prec(&s.add_i64(k as i64 + 1), wp)?;
    let a = trigamma_prec(&se.div_real(&two), wp)?;
    let tail = if plus_form {
        &a + &trigamma_prec(&se.add_i64(1).div_real(&two), wp)?
    } else {
        &a - &trigamma_prec(&(-&se).add_i64(1).div_real(&two), wp)?
    };
    Ok((&head + &tail.mul_real(&q)).with_prec(prec))
}

/// p_k(s,ε) = ψ(s) - ψ(s+k+1) + (ε/2)(ψ(sε/2) + ψ((1-sε)/2) - 2 ln π).
pub fn p_fun(s: &BigComplex, k: usize, epsilon: &Rational, ctx: &PrecisionContext) -> Result<BigComplex> {
    p_prec(s, k, epsilon, ctx.bits(), false)
}

/// p_k⁽¹⁾(s,ε) = ψ'(s) - ψ'(s+k+1) + (ε/2)²(ψ'(sε/2) - ψ'((1-sε)/2)).
pub fn p1_fun(s: &BigComplex, k: usize, epsilon: &Rational, ctx: &PrecisionContext) -> Result<BigComplex> {
    p1_prec(s, k, epsilon, ctx.bits(), false)
}

fn zeta_at(s: &BigComplex, eps: &Float, order: u8, prec: u32) -> Result<Vec<BigComplex>> {
    let u = s.clone().with_prec(prec + 16).mul_real(eps);
    let jet = zeta_jet(&u, order, prec + 16)?;
    if jet[0].is_zero() {
        return Err(Error::Domain("ζ(εs) vanishes at the evaluation point".into()));
    }
    Ok(jet)
}

/// ∂f_k/∂s = g_k (p_k ζ(εs) + ε ζ'(εs)).
pub fn f_d1(s: &BigComplex, k: usize, epsilon: &Rational, ctx: &PrecisionContext) -> Result<BigComplex> {
    let prec = ctx.bits();
    let wp = prec + 16;
    let eps = rational_to_float(epsilon, wp);
    check_poles(s, &eps)?;
    let g = g_prec(s, k, &eps, wp)?;
    let p = p_prec(s, k, epsilon, wp, false)?;
    let z = zeta_jet(&s.clone().with_prec(wp).mul_real(&eps), 1, wp)?;
    let inner = &(&p * &z[0]) + &z[1].mul_real(&eps);
    Ok((&g * &inner).with_prec(prec))
}

/// ∂²f_k/∂s² = g_k (q_k ζ + q_k⁽¹⁾ ζ' + ε² ζ''), q_k = p_k² + p_k⁽¹⁾, q_k⁽¹⁾ = 2εp_k.
pub fn f_d2(s: &BigComplex, k: usize, epsilon: &Rational, ctx: &PrecisionContext) -> Result<BigComplex> {
    let prec = ctx.bits();
    let wp = prec + 16;
    let eps = rational_to_float(epsilon, wp);
    check_poles(s, &eps)?;
    let g = g_prec(s, k, &eps, wp)?;
    let p = p_prec(s, k, epsilon, wp, false)?;
    let p1 = p1_prec(s, k, epsilon, wp, false)?;
    let z = zeta_jet(&s.clone().with_prec(wp).mul_real(&eps), 2, wp)?;
    let q = &p.square() + &p1;
    let q1 = p.mul_real(&eps).mul_i64(2);
    let eps2 = Float::with_val(wp, eps.square_ref());
    let inner = &(&(&q * &z[0]) + &(&q1 * &z[1])) + &z[2].mul_real(&eps2);
    Ok((&g * &inner).with_prec(prec))
}

/// (πε/2) tan(πsε/2), bounded for large |Im s|.
fn tan_term(s: &BigComplex, eps: &Float, wp: u32) -> BigComplex {
    let c = Float::with_val(wp, pi(wp) * eps) / 2u32;
    s.clone().with_prec(wp).mul_real(&c).tan().mul_real(&c)
}

/// ∂ω/∂s = p̃_k - (πε/2) tan(πsε/2) + ε ζ'(εs)/ζ(εs), where p̃_k is p_k with
/// ψ((1+sε)/2) in place of ψ((1-sε)/2). The reflection formula
/// ψ((1+x)/2) - ψ((1-x)/2) = π tan(πx/2) makes this equal to
/// p_k + ε ζ'/ζ = f'/f.
pub fn omega_d1(s: &BigComplex, k: usize, epsilon: &Rational, ctx: &PrecisionContext) -> Result<BigComplex> {
    let prec = ctx.bits();
    let wp = prec + 16;
    let eps = rational_to_float(epsilon, wp);
    check_poles(s, &eps)?;
    let p = p_prec(s, k, epsilon, wp, true)?;
    let t = tan_term(s, &eps, wp);
    let z = zeta_at(s, &eps, 1, wp)?;
    let zr = &z[1] / &z[0];
    Ok((&(&p - &t) + &zr.mul_real(&eps)).with_prec(prec))
}

/// ∂²ω/∂s² = p̃_k⁽¹⁾ - (πε/2)²(1 + tan²(πsε/2)) + ε²(ζ''/ζ - (ζ'/ζ)²), the
/// derivative of [`omega_d1`]. p̃_k⁽¹⁾ carries ψ'(sε/2) + ψ'((1+sε)/2).
pub fn omega_d2(s: &BigComplex, k: usize, epsilon: &Rational, ctx: &PrecisionContext) -> Result<BigComplex> {
    let prec = ctx.bits();
    let wp = prec + 16;
    let eps = rational_to_float(epsilon, wp);
    check_poles(s, &eps)?;
    let p1 = p1_prec(s, k, epsilon, wp, true)?;
    let c = Float::with_val(wp, pi(wp) * &eps) / 2u32;
    let tan = s.clone().with_prec(wp).mul_real(&c).tan();
    let sec2 = tan.square().add_i64(1).mul_real(&Float::with_val(wp, c.square_ref()));
    let z = zeta_at(s, &eps, 2, wp)?;
    let r1 = &z[1] / &z[0];
    let r2 = &z[2] / &z[0];
    let eps2 = Float::with_val(wp, eps.square_ref());
    let zeta_part = (&r2 - &r1.square()).mul_real(&eps2);
    Ok((&(&p1 - &sec2) + &zeta_part).with_prec(prec))
}

/// Newton's method on ∂ω/∂s = 0 (the saddle equation with full zeta terms)
/// from `start`, until |∂ω/∂s| < 10^(-digits/2).
pub fn saddle_refine(start: &SaddlePoint, ctx: &PrecisionContext) -> Result<SaddlePoint> {
    let epsilon = start
        .epsilon
        .as_ref()
        .ok_or_else(|| Error::Domain("saddle_refine needs an a_k saddle with ε".into()))?;
    let k = start
        .n_or_k
        .to_usize()
        .ok_or_else(|| Error::Domain("k too large for refinement".into()))?;
    let prec = ctx.bits();
    let target = crate::mp::ten_pow(prec, -((ctx.digits() / 2) as i64));
    let mut s = start.location.clone().with_prec(prec);
    let mut trajectory = Vec::new();
    for _ in 0..60 {
        let d1 = omega_d1(&s, k, epsilon, ctx)?;
        let r = d1.abs();
        trajectory.push(format!("{:.6e}", r.to_f64()));
        if r < target {
            return Ok(SaddlePoint {
                n_or_k: start.n_or_k.clone(),
                epsilon: Some(epsilon.clone()),
                branch: start.branch,
                location: s,
                residual: r,
            });
        }
        let d2 = omega_d2(&s, k, epsilon, ctx)?;
        let step = &d1 / &d2;
        if !step.is_finite() {
            break;
        }
        s = &s - &step;
    }
    Err(Error::NoConvergence {
        iterations: trajectory.len(),
        last: format!("s = {s}, |ω'| trajectory [{}]", trajectory.join(", ")),
    })
}
