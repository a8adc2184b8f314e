//! Adaptive Gauss–Legendre quadrature for complex-valued integrands along
//! straight segments of the complex plane.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rug::Float;

use crate::error::{Error, Result};
use crate::mp::BigComplex;

/// Nodes on (-1, 1) and weights of the m-point Gauss–Legendre rule.
#[derive(Debug)]
pub struct GaussLegendre {
    pub nodes: Vec<Float>,
    pub weights: Vec<Float>,
}

type RuleCache = Mutex<HashMap<(usize, u32), Arc<GaussLegendre>>>;

fn cache() -> &'static RuleCache {
    static CACHE: OnceLock<RuleCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The m-point rule at `prec` bits, computed once by Newton iteration on
/// P_m and cached.
pub fn gauss_legendre(m: usize, prec: u32) -> Arc<GaussLegendre> {
    let key = (m, prec);
    if let Some(rule) = cache().lock().unwrap().get(&key) {
        return rule.clone();
    }
    let rule = Arc::new(build_rule(m, prec));
    cache().lock().unwrap().insert(key, rule.clone());
    rule
}

/// (P_m(x), P_m'(x)) by the three-term recurrence.
fn legendre(m: usize, x: &Float) -> (Float, Float) {
    let p = x.prec();
    let mut p0 = Float::with_val(p, 1);
    let mut p1 = x.clone();
    for j in 2..=m {
        let a = Float::with_val(p, x * &p1) * (2 * j - 1) as u64;
        let b = Float::with_val(p, &p0 * (j - 1) as u64);
        let p2 = (a - b) / j as u64;
        p0 = std::mem::replace(&mut p1, p2);
    }
    // P'_m = m (x P_m - P_{m-1}) / (x² - 1)
    let num = (Float::with_val(p, x * &p1) - &p0) * m as u64;
    let den = Float::with_val(p, x.square_ref()) - 1u32;
    (p1, num / den)
}

fn build_rule(m: usize, prec: u32) -> GaussLegendre {
    let wp = prec + 32;
    let half = m / 2;
    let mut nodes = Vec::with_capacity(m);
    let mut weights = Vec::with_capacity(m);
    let tol = Float::with_val(wp, Float::i_exp(1, -(prec as i32) - 8));
    for i in 0..half {
        let guess = ((i as f64 + 0.75) / (m as f64 + 0.5) * std::f64::consts::PI).cos();
        let mut x = Float::with_val(wp, guess);
        for _ in 0..200 {
            let (pm, dpm) = legendre(m, &x);
            let dx = Float::with_val(wp, &pm / &dpm);
            x -= &dx;
            if dx.abs() < tol {
                break;
            }
        }
        let (_, dpm) = legendre(m, &x);
        let one_minus = Float::with_val(wp, 1u32 - Float::with_val(wp, x.square_ref()));
        let w = Float::with_val(wp, 2u32) / (one_minus * dpm.square());
        nodes.push(x);
        weights.push(w);
    }
    let mut all_nodes = Vec::with_capacity(m);
    let mut all_weights = Vec::with_capacity(m);
    for i in 0..half {
        all_nodes.push(Float::with_val(prec, &nodes[i]));
        all_weights.push(Float::with_val(prec, &weights[i]));
    }
    if m % 2 == 1 {
        let (_, dpm) = legendre(m, &Float::with_val(wp, 0));
        all_nodes.push(Float::with_val(prec, 0));
        all_weights.push(Float::with_val(prec, Float::with_val(wp, 2u32) / dpm.square()));
    }
    for i in (0..half).rev() {
        all_nodes.push(Float::with_val(prec, -&nodes[i]));
        all_weights.push(Float::with_val(prec, &weights[i]));
    }
    GaussLegendre {
        nodes: all_nodes,
        weights: all_weights,
    }
}

/// Rule size suited to `prec` bits on a panel free of nearby singularities.
pub fn default_order(prec: u32) -> usize {
    ((prec as f64 / 5.0).ceil() as usize).clamp(16, 200)
}

/// Settings for [`integrate_segment`].
#[derive(Debug, Clone)]
pub struct Adaptive {
    pub order: usize,
    /// Absolute tolerance on the whole segment.
    pub tolerance: Float,
    pub max_depth: u32,
    pub max_panels: usize,
}

/// Integral along a segment together with the accumulated error estimate.
#[derive(Debug, Clone)]
pub struct SegmentIntegral {
    pub value: BigComplex,
    pub error: Float,
    pub panels: usize,
}

fn rule_on(
    f: &mut dyn FnMut(&BigComplex) -> Result<BigComplex>,
    rule: &GaussLegendre,
    a: &BigComplex,
    b: &BigComplex,
    prec: u32,
) -> Result<BigComplex> {
    let mid = (a + b).div_real(&Float::with_val(prec, 2));
    let half = (b - a).div_real(&Float::with_val(prec, 2));
    let mut acc = BigComplex::zero(prec);
    for (x, w) in rule.nodes.iter().zip(&rule.weights) {
        let s = &mid + &half.mul_real(x);
        let v = f(&s)?;
        acc = &acc + &v.mul_real(w);
    }
    Ok(&acc * &half)
}

/// ∫_a^b f(s) ds along the straight segment, by bisection until each panel's
/// rule agrees with the sum over its halves within a share of the
/// tolerance proportional to its length. Panels are summed in left-to-right
/// order.
pub fn integrate_segment(
    f: &mut dyn FnMut(&BigComplex) -> Result<BigComplex>,
    a: &BigComplex,
    b: &BigComplex,
    opts: &Adaptive,
) -> Result<SegmentIntegral> {
    let prec = a.prec().max(b.prec());
    let rule = gauss_legendre(opts.order, prec);
    let total_len = (b - a).abs();
    if total_len.is_zero() {
        return Ok(SegmentIntegral {
            value: BigComplex::zero(prec),
            error: Float::new(prec),
            panels: 0,
        });
    }
    let whole = rule_on(f, &rule, a, b, prec)?;
    // stack of (a, b, estimate, depth); processed left to right
    let mut stack = vec![(a.clone(), b.clone(), whole, 0u32)];
    let mut value = BigComplex::zero(prec);
    let mut error = Float::new(prec);
    let mut panels = 0usize;
    let two = Float::with_val(prec, 2);
    while let Some((lo, hi, est, depth)) = stack.pop() {
        let mid = (&lo + &hi).div_real(&two);
        let left = rule_on(f, &rule, &lo, &mid, prec)?;
        let right = rule_on(f, &rule, &mid, &hi, prec)?;
        let refined = &left + &right;
        let diff = (&refined - &est).abs();
        let share = Float::with_val(prec, &opts.tolerance * (&hi - &lo).abs()) / &total_len;
        panels += 1;
        if diff <= share || depth >= opts.max_depth {
            if diff > share {
                return Err(Error::Quadrature {
                    estimate: value.to_string(),
                    bound: format!("{:.3e}", diff.to_f64()),
                });
            }
            value = &value + &refined;
            error += diff;
            continue;
        }
        if panels > opts.max_panels {
            return Err(Error::Quadrature {
                estimate: (&value + &refined).to_string(),
                bound: format!("{:.3e}", diff.to_f64()),
            });
        }
        // right half first so the left half is popped next
        stack.push((mid.clone(), hi, right, depth + 1));
        stack.push((lo, mid, left, depth + 1));
    }
    Ok(SegmentIntegral { value, error, panels })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mp::pi;
    use rug::ops::Pow;

    #[test]
    fn rule_integrates_polynomials_exactly() {
        let prec = 256;
        let rule = gauss_legendre(10, prec);
        // ∫_{-1}^{1} x^18 dx = 2/19
        let mut acc = Float::with_val(prec, 0);
        for (x, w) in rule.nodes.iter().zip(&rule.weights) {
            acc += Float::with_val(prec, x.clone().pow(18u32)) * w;
        }
        let exact = Float::with_val(prec, 2) / 19u32;
        let err = Float::with_val(prec, &acc - &exact).abs();
        assert!(err < Float::with_val(prec, Float::i_exp(1, -240)));
    }

    #[test]
    fn weights_sum_to_two() {
        let rule = gauss_legendre(33, 200);
        let mut s = Float::with_val(200, 0);
        for w in &rule.weights {
            s += w;
        }
        assert!((s - 2u32).abs() < Float::with_val(200, Float::i_exp(1, -190)));
    }

    #[test]
    fn contour_around_pole() {
        // ∮ ds/s over the square with corners ±1 ± i is 2πi
        let prec = 200;
        let opts = Adaptive {
            order: 30,
            tolerance: Float::with_val(prec, Float::i_exp(1, -180)),
            max_depth: 30,
            max_panels: 10_000,
        };
        let c = |re: i32, im: i32| BigComplex::with_val(prec, re, im);
        let corners = [c(1, -1), c(1, 1), c(-1, 1), c(-1, -1), c(1, -1)];
        let mut total = BigComplex::zero(prec);
        let mut f = |s: &BigComplex| Ok(s.recip());
        for w in corners.windows(2) {
            total = &total + &integrate_segment(&mut f, &w[0], &w[1], &opts).unwrap().value;
        }
        let expect = BigComplex::new(Float::new(prec), pi(prec) * 2u32);
        assert!(total.rel_diff(&expect) < 1e-50);
    }
}
