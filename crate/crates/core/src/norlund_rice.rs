//! Contour-integral representations of a_k(ε), used as an independent check
//! of the finite-difference coefficients.
//!
//! Rectangle form (alternating sum turned into residues at 0..k):
//!
//!   a_k = (-1)^k k!/(2πi) ∮_C φ(1+sε) / Π_{i=0}^{k}(s-i) ds
//!
//! Vertical-line form, after the functional equation and s → -s:
//!
//!   a_k = k!/(2πi) ∫_{1/2-i∞}^{1/2+i∞} f_k(s,ε) ds,
//!   f_k = g_k ζ(sε),  g_k = π^{1/2-sε} Γ(sε/2)/Γ((1-sε)/2) · Γ(s)/Γ(s+k+1).
//!
//! On Re s = -1/2 the same integral misses the double pole at 0, whose
//! residue is (γε + H_k)/(εk!).
//!
//! By the functional equation f_k(s,ε) = ζ(1-sε)/(s)_{k+1}, so on vertical
//! lines |f_k| falls off like t^{-k-1} up to the slowly varying zeta factor.
//! The decay is algebraic, not exponential, and the truncated tail is
//! estimated from that rate.

use rug::ops::Pow;
use rug::{Float, Rational};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::finite_diff::harmonic;
use crate::mp::{
    euler_gamma, gamma_prec, pi, rational_to_float, to_decimal, Agreement, BigComplex, PrecisionContext,
};
use crate::quadrature::{default_order, integrate_segment, Adaptive};
use crate::zeta::{phi_prec, zeta_jet};

/// Distance below which an argument counts as sitting on a pole.
const POLE_DISTANCE: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ContourKind {
    Rectangle,
    VerticalLine,
}

#[derive(Debug, Clone)]
pub struct ContourSpec {
    pub kind: ContourKind,
    /// Margin of the rectangle around [0, k].
    pub delta: Float,
    /// Re s of the vertical line.
    pub line_abscissa: Float,
    /// Upper limit T of |Im s| on the vertical line; picked automatically
    /// from the tail estimate when absent.
    pub truncation_height: Option<Float>,
    /// Relative accuracy target of the vertical-line integral, covering
    /// both quadrature and tail; 10^-digits when absent.
    pub tolerance: Option<Float>,
}

impl ContourSpec {
    /// Rectangle with δ = 1/2.
    pub fn rectangle() -> Self {
        ContourSpec {
            kind: ContourKind::Rectangle,
            delta: Float::with_val(64, 0.5),
            line_abscissa: Float::with_val(64, 0.5),
            truncation_height: None,
            tolerance: None,
        }
    }

    pub fn rectangle_with_delta(delta: Float) -> Result<Self> {
        if !(delta > 0 && delta < 1) {
            return Err(Error::Domain(format!("rectangle margin δ = {delta} must lie in (0, 1)")));
        }
        Ok(ContourSpec {
            delta,
            ..Self::rectangle()
        })
    }

    pub fn vertical_line(abscissa: Float, truncation_height: Option<Float>) -> Self {
        ContourSpec {
            kind: ContourKind::VerticalLine,
            delta: Float::with_val(64, 0.5),
            line_abscissa: abscissa,
            truncation_height,
            tolerance: None,
        }
    }

    pub fn with_tolerance(mut self, tolerance: Float) -> Self {
        self.tolerance = Some(tolerance);
        self
    }
}

/// A point evaluation of f_k.
#[derive(Debug, Clone)]
pub struct IntegrandSample {
    pub s: BigComplex,
    pub value: BigComplex,
    pub k: usize,
    pub epsilon: Rational,
}

fn distance_to_nonpositive_integer(z: &BigComplex) -> Option<(i64, f64)> {
    let re = z.re().to_f64();
    let im = z.im().to_f64();
    let m = re.round().min(0.0);
    if re > 0.5 {
        return None;
    }
    Some((m as i64, (re - m).hypot(im)))
}

pub(crate) fn check_poles(s: &BigComplex, epsilon: &Float) -> Result<()> {
    if let Some((m, d)) = distance_to_nonpositive_integer(s) {
        if d < POLE_DISTANCE {
            return Err(Error::Domain(format!("s is within {d:.1e} of the pole of Γ(s) at {m}")));
        }
    }
    let half_eps = epsilon.to_f64() / 2.0;
    let w = s.mul_real(&Float::with_val(s.prec(), epsilon)) / BigComplex::from_real(Float::with_val(s.prec(), 2));
    if let Some((m, d)) = distance_to_nonpositive_integer(&w) {
        if d / half_eps < POLE_DISTANCE {
            return Err(Error::Domain(format!(
                "s is within {:.1e} of the pole of Γ(sε/2) at s = {}",
                d / half_eps,
                (2 * m) as f64 / epsilon.to_f64()
            )));
        }
    }
    Ok(())
}

/// (s)_{k+1} = s(s+1)…(s+k) = Γ(s+k+1)/Γ(s).
fn pochhammer(s: &BigComplex, k: usize) -> BigComplex {
    let mut p = s.clone();
    for i in 1..=k {
        p = &p * &s.add_i64(i as i64);
    }
    p
}

pub(crate) fn g_prec(s: &BigComplex, k: usize, eps: &Float, prec: u32) -> Result<BigComplex> {
    let wp = prec + 20;
    let s = s.clone().with_prec(wp);
    let se = s.mul_real(eps);
    let two = Float::with_val(wp, 2);
    let ln_pi = pi(wp).ln();
    let half = Float::with_val(wp, 0.5);
    let pi_pow = (-&se).add_real(&half).mul_real(&ln_pi).exp();
    let num = gamma_prec(&se.div_real(&two), wp)?;
    let den = match gamma_prec(&(-&se).add_i64(1).div_real(&two), wp) {
        Ok(v) => v,
        // 1/Γ vanishes at its poles
        Err(Error::Pole(_)) => return Ok(BigComplex::zero(prec)),
        Err(e) => return Err(e),
    };
    let g = &(&pi_pow * &num) / &(&den * &pochhammer(&s, k));
    Ok(g.with_prec(prec))
}

pub fn integrand_g(s: &BigComplex, k: usize, epsilon: &Rational, ctx: &PrecisionContext) -> Result<BigComplex> {
    let prec = ctx.bits();
    let eps = rational_to_float(epsilon, prec + 20);
    check_poles(s, &eps)?;
    g_prec(s, k, &eps, prec)
}

pub(crate) fn f_prec(s: &BigComplex, k: usize, eps: &Float, prec: u32) -> Result<BigComplex> {
    let g = g_prec(s, k, eps, prec)?;
    let z = zeta_jet(&s.clone().with_prec(prec + 20).mul_real(eps), 0, prec + 20)?.swap_remove(0);
    Ok((&g * &z).with_prec(prec))
}

/// f_k(s,ε) = g_k(s,ε) ζ(sε).
pub fn integrand_f(s: &BigComplex, k: usize, epsilon: &Rational, ctx: &PrecisionContext) -> Result<BigComplex> {
    let prec = ctx.bits();
    let eps = rational_to_float(epsilon, prec + 20);
    check_poles(s, &eps)?;
    f_prec(s, k, &eps, prec)
}

pub fn sample_f(s: &BigComplex, k: usize, epsilon: &Rational, ctx: &PrecisionContext) -> Result<IntegrandSample> {
    Ok(IntegrandSample {
        s: s.clone(),
        value: integrand_f(s, k, epsilon, ctx)?,
        k,
        epsilon: epsilon.clone(),
    })
}

/// φ(1+sε)/Π_{i=0}^{k}(s-i), the integrand of the rectangle form.
pub fn rice_integrand(s: &BigComplex, k: usize, epsilon: &Rational, ctx: &PrecisionContext) -> Result<BigComplex> {
    let prec = ctx.bits();
    rice_prec(s, k, &rational_to_float(epsilon, prec + 20), prec)
}

fn rice_prec(s: &BigComplex, k: usize, eps: &Float, prec: u32) -> Result<BigComplex> {
    let wp = prec + 10;
    let s = s.clone().with_prec(wp);
    let mut prod = s.clone();
    for i in 1..=k {
        prod = &prod * &s.add_i64(-(i as i64));
    }
    if prod.is_zero() {
        return Err(Error::Domain("rectangle integrand evaluated at an enclosed pole".into()));
    }
    let phi = phi_prec(&s.mul_real(eps).add_i64(1), wp)?;
    Ok((&phi / &prod).with_prec(prec))
}

/// Digits lost to cancellation in a contour integral of a_k: the integral
/// is built from pieces of size O(1/k!) while a_k shrinks like ε^k.
fn cancellation_digits(k: usize, epsilon: &Rational) -> u32 {
    let inv = 1.0 / epsilon.to_f64();
    (k as f64 * inv.log10().max(0.0)).ceil() as u32 + 4
}

/// First guess at |a_k| used to set absolute quadrature tolerances.
fn assumed_scale(k: usize, epsilon: &Rational, prec: u32) -> Float {
    let e = rational_to_float(epsilon, prec);
    Float::with_val(prec, e.pow(k as u32)).min(&Float::with_val(prec, 1))
}

/// Runs `attempt` with an assumed magnitude of the result; if the result
/// comes out more than ten times smaller, reruns once with its magnitude.
fn with_scale<T, F>(initial: Float, mut attempt: F, magnitude: impl Fn(&T) -> Float) -> Result<T>
where
    F: FnMut(&Float) -> Result<T>,
{
    let first = attempt(&initial)?;
    let m = magnitude(&first);
    if m.is_zero() || Float::with_val(m.prec(), &m * 10u32) >= initial {
        return Ok(first);
    }
    attempt(&m)
}

pub(crate) fn factorial(k: usize, prec: u32) -> Float {
    let mut f = Float::with_val(prec, 1);
    for i in 2..=k as u64 {
        f *= i;
    }
    f
}

/// a_k(ε) from the rectangle around 0..k with margin δ, summing the four
/// sides in the order left, bottom, right, top. Each side is integrated by
/// adaptive Gauss–Legendre to an absolute tolerance scaled to |a_k|.
pub fn rect_contour_integral(
    k: usize,
    epsilon: &Rational,
    spec: &ContourSpec,
    ctx: &PrecisionContext,
) -> Result<BigComplex> {
    if spec.kind != ContourKind::Rectangle {
        return Err(Error::Domain("rect_contour_integral needs a rectangle contour".into()));
    }
    if !(spec.delta > 0 && spec.delta < 1) {
        return Err(Error::Domain("rectangle margin δ must lie in (0, 1)".into()));
    }
    if *epsilon <= 0 {
        return Err(Error::Domain("ε must be positive".into()));
    }
    let work = ctx.raised(cancellation_digits(k, epsilon));
    let prec = work.bits();
    let eps = rational_to_float(epsilon, prec + 20);
    let d = Float::with_val(prec, &spec.delta);
    let kf = Float::with_val(prec, k as u64);
    let corner = |re: &Float, im: &Float| BigComplex::new(Float::with_val(prec, re), Float::with_val(prec, im));
    let neg_d = Float::with_val(prec, -&d);
    let right = Float::with_val(prec, &kf + &d);
    let path = [
        corner(&neg_d, &d),
        corner(&neg_d, &neg_d),
        corner(&right, &neg_d),
        corner(&right, &d),
        corner(&neg_d, &d),
    ];
    let kfact = factorial(k, prec);
    let two_pi = Float::with_val(prec, pi(prec) * 2u32);
    let mut prefactor = Float::with_val(prec, &kfact / &two_pi);
    if k % 2 == 1 {
        prefactor = -prefactor;
    }

    let mut f = |s: &BigComplex| rice_prec(s, k, &eps, prec);
    let result = with_scale(
        assumed_scale(k, epsilon, prec),
        |scale| {
            // (-1)^k k!/(2πi) Σ sides
            let tol = Float::with_val(prec, scale * &crate::mp::ten_pow(prec, -(work.digits() as i64) - 3))
                / Float::with_val(prec, prefactor.abs_ref())
                / 4u32;
            let opts = Adaptive {
                order: default_order(prec),
                tolerance: tol,
                max_depth: 40,
                max_panels: 20_000,
            };
            let mut total = BigComplex::zero(prec);
            for w in path.windows(2) {
                let side = integrate_segment(&mut f, &w[0], &w[1], &opts)?;
                total = &total + &side.value;
            }
            // 1/(2πi) = -i/(2π)
            let value = BigComplex::new(total.im().clone(), Float::with_val(prec, -total.re()));
            Ok(value.mul_real(&prefactor))
        },
        |v: &BigComplex| v.abs(),
    )?;
    Ok(result.with_prec(ctx.bits()))
}

/// Both evaluations of the residue of f_k at s = 0.
#[derive(Debug, Clone)]
pub struct ResidueCheck {
    pub k: usize,
    pub epsilon: Rational,
    /// (γε + H_k)/(εk!)
    pub closed_form: Float,
    /// (1/2πi)∮ f_k ds on a small circle around 0.
    pub quadrature: BigComplex,
    pub radius: Float,
    pub nodes: usize,
    pub agreeing_digits: u32,
}

pub fn residue_closed_form(k: usize, epsilon: &Rational, prec: u32) -> Float {
    let eps = rational_to_float(epsilon, prec);
    let num = Float::with_val(prec, euler_gamma(prec) * &eps) + Float::with_val(prec, &harmonic(k as u64));
    num / (eps * factorial(k, prec))
}

/// Residue of f_k at 0 by the closed form and by the trapezoid rule on the
/// circle |s| = r, which converges like (r/R)^M with R the distance to the
/// next singularity. The two must agree to `ctx.digits()`.
pub fn residue_at_zero(k: usize, epsilon: &Rational, ctx: &PrecisionContext) -> Result<ResidueCheck> {
    if *epsilon <= 0 {
        return Err(Error::Domain("ε must be positive".into()));
    }
    let prec = ctx.bits();
    let wp = prec + 20;
    let closed = residue_closed_form(k, epsilon, wp);

    let eps = rational_to_float(epsilon, wp + 20);
    // next singularities: s = -1 from Γ(s), s = -2/ε from Γ(sε/2)
    let reach = (2.0 / epsilon.to_f64()).min(1.0);
    let r = reach / 4.0;
    let nodes = ((ctx.working_digits() as f64 + 10.0) / (reach / r).log10()).ceil() as usize + 8;
    let radius = Float::with_val(wp, r);
    let two_pi = Float::with_val(wp, pi(wp) * 2u32);
    let mut acc = BigComplex::zero(wp);
    for j in 0..nodes {
        let theta = Float::with_val(wp, &two_pi * j as u64) / nodes as u64;
        let (sin, cos) = theta.sin_cos(Float::new(wp));
        let s = BigComplex::new(Float::with_val(wp, &cos * &radius), Float::with_val(wp, &sin * &radius));
        // ds = i s dθ, so (1/2πi)∮ f ds = mean of f(s)·s
        let v = f_prec(&s, k, &eps, wp)?;
        acc = &acc + &(&v * &s);
    }
    let quad = acc.div_real(&Float::with_val(wp, nodes as u64));
    let agreeing = quad.agreeing_digits(&BigComplex::from_real(closed.clone()));
    if agreeing < ctx.digits() {
        return Err(Error::Consistency(format!(
            "residue closed form {} and circle quadrature {} agree to only {agreeing} digits",
            to_decimal(&closed, 25),
            quad
        )));
    }
    Ok(ResidueCheck {
        k,
        epsilon: epsilon.clone(),
        closed_form: Float::with_val(prec, &closed),
        quadrature: quad.with_prec(prec),
        radius: Float::with_val(prec, &radius),
        nodes,
        agreeing_digits: agreeing,
    })
}

/// Result of the truncated vertical-line integral.
#[derive(Debug, Clone)]
pub struct LineIntegral {
    /// k!/(2π) ∫_{-T}^{T} f_k(σ+it) dt, real by conjugate symmetry.
    pub value: Float,
    /// Estimate of the neglected |t| > T part, same scaling as `value`.
    pub tail_bound: Float,
    pub truncation_height: Float,
    pub abscissa: Float,
}

/// ∫_T^∞ |f_k(σ+it)| dt, scaled by k!/π, assuming |f_k| ≤ |f_k(σ+iT)|(T/t)^{k+1/2}.
/// The half power given up covers the slow growth of ζ(1-sε).
fn tail_estimate(f_at_t: &BigComplex, t: &Float, k: usize, kfact_over_pi: &Float) -> Float {
    let p = t.prec();
    let alpha_minus_one = Float::with_val(p, k as f64 - 0.5);
    Float::with_val(p, f_at_t.abs() * t) / alpha_minus_one * kfact_over_pi
}

/// k!/(2πi) ∫ f_k ds along Re s = σ, truncated at |Im s| = T.
///
/// For σ > 0 this is a_k(ε). For -1 < σ < 0 the double pole at 0 lies to
/// the right, and the value equals a_k - γ - H_k/ε. Requires k ≥ 1 so that
/// the integral converges absolutely. Without an explicit T the line is
/// extended over dyadic panels [T/2, T] until the tail estimate falls
/// below the relative tolerance (10^-digits unless the spec sets one);
/// with an explicit T a larger tail is an error.
pub fn vertical_line_integral(
    k: usize,
    epsilon: &Rational,
    spec: &ContourSpec,
    ctx: &PrecisionContext,
) -> Result<LineIntegral> {
    if spec.kind != ContourKind::VerticalLine {
        return Err(Error::Domain("vertical_line_integral needs a vertical-line contour".into()));
    }
    if k == 0 {
        return Err(Error::Domain("vertical-line integral diverges for k = 0".into()));
    }
    if *epsilon <= 0 {
        return Err(Error::Domain("ε must be positive".into()));
    }
    let work = ctx.raised(cancellation_digits(k, epsilon));
    let prec = work.bits();
    let sigma = Float::with_val(prec, &spec.line_abscissa);
    let eps = rational_to_float(epsilon, prec + 20);
    check_poles(&BigComplex::from_real(sigma.clone()), &eps)?;
    if let Some(t) = &spec.truncation_height {
        if *t <= 0 {
            return Err(Error::Domain("truncation height must be positive".into()));
        }
    }
    let kfact_over_pi = factorial(k, prec) / pi(prec);
    let rel_tol = match &spec.tolerance {
        Some(t) if *t > 0 => Float::with_val(prec, t),
        Some(_) => return Err(Error::Domain("tolerance must be positive".into())),
        None => crate::mp::ten_pow(prec, -(ctx.digits() as i64)),
    };
    let at = |t: &Float| BigComplex::new(sigma.clone(), Float::with_val(prec, t));
    let mut f = |s: &BigComplex| f_prec(s, k, &eps, prec);

    with_scale(
        assumed_scale(k, epsilon, prec),
        |scale| {
            let quad_tol = Float::with_val(prec, scale * &rel_tol) / 1000u32 / &kfact_over_pi;
            let mut lo = Float::with_val(prec, 0);
            let mut hi = Float::with_val(prec, 1);
            let mut total = Float::with_val(prec, 0);
            let mut panels = 0u32;
            loop {
                if let Some(t) = &spec.truncation_height {
                    if hi > *t {
                        hi = Float::with_val(prec, t);
                    }
                }
                let opts = Adaptive {
                    order: default_order(prec),
                    tolerance: Float::with_val(prec, &quad_tol / 64u32),
                    max_depth: 40,
                    max_panels: 50_000,
                };
                let seg = integrate_segment(&mut f, &at(&lo), &at(&hi), &opts)?;
                // ∫ f ds = i ∫ f dt along the line
                total += seg.value.im();
                panels += 1;
                let f_hi = f(&at(&hi))?;
                let value = Float::with_val(prec, &total * &kfact_over_pi);
                let tail = tail_estimate(&f_hi, &hi, k, &kfact_over_pi);
                let budget = Float::with_val(prec, value.abs_ref()) * &rel_tol;
                let done = match &spec.truncation_height {
                    Some(t) => {
                        if hi >= *t {
                            if tail > budget {
                                return Err(Error::Tail {
                                    bound: format!("{:.3e}", tail.to_f64()),
                                    tolerance: format!("{:.3e}", budget.to_f64()),
                                });
                            }
                            true
                        } else {
                            false
                        }
                    }
                    None => hi >= 8 && tail <= budget,
                };
                if done {
                    return Ok(LineIntegral {
                        value,
                        tail_bound: tail,
                        truncation_height: hi,
                        abscissa: sigma.clone(),
                    });
                }
                if panels > 60 {
                    return Err(Error::Tail {
                        bound: format!("{:.3e}", tail.to_f64()),
                        tolerance: format!("{:.3e}", budget.to_f64()),
                    });
                }
                lo = hi.clone();
                hi *= 2u32;
            }
        },
        |v: &LineIntegral| Float::with_val(prec, v.value.abs_ref()),
    )
    .map(|mut r| {
        r.value.set_prec(ctx.bits());
        r
    })
}

/// Verification report comparing an integral representation with the
/// finite-difference value of a_k. Numbers are decimal strings.
#[derive(Debug, Clone, Serialize)]
pub struct NrReport {
    pub k: usize,
    pub epsilon: String,
    pub contour: ContourKind,
    pub sum_value: String,
    pub integral_value: String,
    pub abs_error: String,
    pub rel_error: String,
    pub tail_bound: Option<String>,
}

fn report(
    k: usize,
    epsilon: &Rational,
    contour: ContourKind,
    sum: &Float,
    integral: &Float,
    tail: Option<&Float>,
    digits: usize,
) -> NrReport {
    let p = sum.prec().max(integral.prec());
    let abs = Float::with_val(p, sum - integral).abs();
    let rel = if sum.is_zero() {
        abs.clone()
    } else {
        Float::with_val(p, &abs / sum).abs()
    };
    NrReport {
        k,
        epsilon: epsilon.to_string(),
        contour,
        sum_value: to_decimal(sum, digits),
        integral_value: to_decimal(integral, digits),
        abs_error: to_decimal(&abs, 6),
        rel_error: to_decimal(&rel, 6),
        tail_bound: tail.map(|t| to_decimal(t, 6)),
    }
}

/// a_k from the alternating sum at enough precision to be accurate
/// relative to its own size.
fn reference_a_k(k: usize, epsilon: &Rational, ctx: &PrecisionContext) -> Result<Float> {
    let table = crate::finite_diff::a_coefficients(epsilon, k, &ctx.raised(cancellation_digits(k, epsilon) + 10))?;
    Ok(table.values[k].clone())
}

/// Rectangle integral against the alternating sum.
pub fn verify_rectangle(k: usize, epsilon: &Rational, ctx: &PrecisionContext) -> Result<NrReport> {
    let sum = reference_a_k(k, epsilon, ctx)?;
    let integral = rect_contour_integral(k, epsilon, &ContourSpec::rectangle(), ctx)?;
    Ok(report(
        k,
        epsilon,
        ContourKind::Rectangle,
        &sum,
        integral.re(),
        None,
        ctx.digits() as usize,
    ))
}

/// Vertical-line integral against the alternating sum; σ must be positive.
pub fn verify_line(k: usize, epsilon: &Rational, spec: &ContourSpec, ctx: &PrecisionContext) -> Result<NrReport> {
    if spec.line_abscissa <= 0 {
        return Err(Error::Domain("verification line must lie right of the pole at 0".into()));
    }
    let sum = reference_a_k(k, epsilon, ctx)?;
    let line = vertical_line_integral(k, epsilon, spec, ctx)?;
    Ok(report(
        k,
        epsilon,
        ContourKind::VerticalLine,
        &sum,
        &line.value,
        Some(&line.tail_bound),
        ctx.digits() as usize,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(30).unwrap()
    }

    #[test]
    fn pochhammer_factor() {
        // Γ(1)/Γ(5) = 1/24
        let s = BigComplex::from_real(Float::with_val(128, 1));
        let p = pochhammer(&s, 3);
        assert_eq!(*p.re(), 24);
    }

    #[test]
    fn residue_closed_form_examples() {
        let p = 200;
        let g = euler_gamma(p);
        let r = residue_closed_form(1, &Rational::from((1, 2)), p);
        assert!(crate::mp::agreeing_digits(&r, &Float::with_val(p, &g + 2u32)) >= 50);
        let r0 = residue_closed_form(0, &Rational::from(1), p);
        assert!(crate::mp::agreeing_digits(&r0, &g) >= 50);
    }

    #[test]
    fn poles_are_rejected() {
        let eps = Rational::from((1, 32));
        let s = BigComplex::with_val(128, -2, 0);
        assert!(matches!(integrand_g(&s, 3, &eps, &ctx()), Err(Error::Domain(_))));
        let s = BigComplex::with_val(128, -64, 0);
        assert!(integrand_g(&s, 100, &eps, &ctx()).is_err());
    }

    #[test]
    fn wrong_contour_kind() {
        let eps = Rational::from((1, 32));
        let line = ContourSpec::vertical_line(Float::with_val(64, 0.5), None);
        assert!(rect_contour_integral(3, &eps, &line, &ctx()).is_err());
        assert!(vertical_line_integral(3, &eps, &ContourSpec::rectangle(), &ctx()).is_err());
        assert!(vertical_line_integral(0, &eps, &line, &ctx()).is_err());
        assert!(ContourSpec::rectangle_with_delta(Float::with_val(64, 1.5)).is_err());
    }
}
