//! Riemann zeta by Euler–Maclaurin summation.
//!
//! ζ(s) = Σ_{j<N} j^-s + N^{1-s}/(s-1) + N^-s/2
//!        + Σ_{m=1}^{M} B_{2m}/(2m)! · s(s+1)…(s+2m-2) · N^{-s-2m+1} + R
//!
//! N is picked from the working precision and |Im s|; M grows until the
//! correction terms drop below 2^-prec relative to the sum. If the terms
//! start growing first, N is doubled and the sum restarted. The same
//! expansion, differentiated term by term, gives ζ' and ζ''.
//!
//! The regularized function φ(s) = ζ(s) - 1/(s-1) is evaluated by merging
//! the pole into the N^{1-s}/(s-1) term, (N^{1-s} - 1)/(s-1) = expm1((1-s) ln N)/(s-1),
//! which is free of cancellation near s = 1.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rug::{Float, Rational};

use crate::error::{Error, Result};
use crate::mp::{bernoulli_even, euler_gamma, gamma_prec, pi, BigComplex, PrecisionContext};

/// ζ, ζ' or ζ'' at a point.
#[derive(Debug, Clone)]
pub struct ZetaValue {
    pub s: BigComplex,
    pub value: BigComplex,
    /// Derivative order, 0..=2.
    pub order: u8,
}

pub fn zeta(s: &BigComplex, ctx: &PrecisionContext) -> Result<BigComplex> {
    Ok(zeta_jet(s, 0, ctx.bits())?.swap_remove(0))
}

/// d^order ζ / ds^order for order 1 or 2.
pub fn zeta_deriv(s: &BigComplex, order: u8, ctx: &PrecisionContext) -> Result<BigComplex> {
    if !(1..=2).contains(&order) {
        return Err(Error::Domain(format!("derivative order {order} not in 1..=2")));
    }
    Ok(zeta_jet(s, order, ctx.bits())?.swap_remove(order as usize))
}

pub fn zeta_value(s: &BigComplex, order: u8, ctx: &PrecisionContext) -> Result<ZetaValue> {
    let value = if order == 0 {
        zeta(s, ctx)?
    } else {
        zeta_deriv(s, order, ctx)?
    };
    Ok(ZetaValue {
        s: s.clone(),
        value,
        order,
    })
}

/// ζ(s), ζ'(s), ... up to `order`, in that order.
pub fn zeta_jet(s: &BigComplex, order: u8, prec: u32) -> Result<Vec<BigComplex>> {
    if is_one(s) {
        return Err(Error::Pole(1));
    }
    em_sum(s, order, prec, false)
}

fn is_one(s: &BigComplex) -> bool {
    s.im().is_zero() && *s.re() == 1
}

/// Regularized zeta: ζ(s) - 1/(s-1), and Euler's constant at s = 1.
pub fn phi(s: &BigComplex, ctx: &PrecisionContext) -> Result<BigComplex> {
    phi_prec(s, ctx.bits())
}

pub(crate) fn phi_prec(s: &BigComplex, prec: u32) -> Result<BigComplex> {
    if is_one(s) {
        return Ok(BigComplex::from_real(euler_gamma(prec)));
    }
    Ok(em_sum(s, 0, prec, true)?.swap_remove(0))
}

/// |ζ(1+z) - π^{1/2+z} Γ(-z/2)/Γ((1+z)/2) ζ(-z)| / |ζ(1+z)|.
pub fn functional_eq_residual(z: &BigComplex, ctx: &PrecisionContext) -> Result<Float> {
    let p = ctx.bits();
    let z = z.clone().with_prec(p);
    let lhs = zeta(&z.add_i64(1), ctx).map_err(pole_to_domain)?;
    let half = Float::with_val(p, 0.5);
    let pi_pow = BigComplex::from_real(pi(p)).pow(&z.add_real(&half));
    let g_num = gamma_prec(&z.div_real(&Float::with_val(p, -2)), p).map_err(pole_to_domain)?;
    let g_den = gamma_prec(&z.add_i64(1).div_real(&Float::with_val(p, 2)), p).map_err(pole_to_domain)?;
    let zeta_neg = zeta(&-&z, ctx).map_err(pole_to_domain)?;
    let rhs = &(&pi_pow * &g_num) * &(&zeta_neg / &g_den);
    let num = (&lhs - &rhs).abs();
    let den = lhs.abs();
    if den.is_zero() {
        return Err(Error::Domain("ζ(1+z) vanishes; relative residual undefined".into()));
    }
    Ok(num / den)
}

fn pole_to_domain(e: Error) -> Error {
    match e {
        Error::Pole(n) => Error::Domain(format!("functional equation has a pole (at {n})")),
        other => other,
    }
}

/// Starting N for Euler–Maclaurin at `prec` bits and imaginary part `t`.
fn initial_terms(prec: u32, t: f64, re: f64) -> u64 {
    let base = (prec as f64 * std::f64::consts::LN_2 + t.abs()) / (2.0 * std::f64::consts::PI);
    (base + re.abs() / (2.0 * std::f64::consts::PI)).ceil() as u64 + 10
}

/// Extra bits for cancellation among terms when Re s < 1.
fn cancellation_guard(sigma: f64, n: u64, s_abs: f64) -> u32 {
    let spread = (1.0 - sigma).max(0.0) * (n as f64).log2();
    32 + spread.ceil() as u32 + (s_abs + 1.0).log2().ceil() as u32
}

/// complex expm1 without cancellation for small |x|.
fn expm1_complex(x: &BigComplex) -> BigComplex {
    let p = x.prec();
    let em1 = x.re().clone().exp_m1();
    let ea = x.re().clone().exp();
    let (sb, cb) = x.im().clone().sin_cos(Float::new(p));
    let half_b = Float::with_val(p, x.im() / 2u32);
    let s_half = half_b.sin();
    let re = Float::with_val(p, &em1 * &cb) - Float::with_val(p, s_half.square_ref()) * 2u32;
    let im = ea * sb;
    BigComplex::new(re, im)
}

struct Jet {
    v: [BigComplex; 3],
}

impl Jet {
    fn scale(&self, c: &Float, order: usize) -> Jet {
        let mut out = self.v.clone();
        for x in out.iter_mut().take(order + 1) {
            *x = x.mul_real(c);
        }
        Jet { v: out }
    }
}

/// j^w for j = 0..n (index 0 unused), exponentiating only at primes and
/// filling composites from j = p·(j/p) with p the smallest prime factor.
fn inverse_powers(w: &BigComplex, n: usize, wp: u32) -> Vec<BigComplex> {
    let logs = log_table(n, wp);
    let mut spf = vec![0usize; n.max(2)];
    for i in 2..n {
        if spf[i] == 0 {
            let mut j = i;
            while j < n {
                if spf[j] == 0 {
                    spf[j] = i;
                }
                j += i;
            }
        }
    }
    let mut out: Vec<BigComplex> = Vec::with_capacity(n);
    out.push(BigComplex::zero(wp));
    if n > 1 {
        out.push(BigComplex::one(wp));
    }
    for j in 2..n {
        let p = spf[j];
        let v = if p == j {
            w.mul_real(&logs[j]).exp()
        } else {
            &out[p] * &out[j / p]
        };
        out.push(v);
    }
    out
}

type LogCache = Mutex<HashMap<u32, Arc<Vec<Float>>>>;

/// ln j for j < n at `wp` bits, cached per precision; composites are sums
/// of cached logarithms of their factors.
fn log_table(n: usize, wp: u32) -> Arc<Vec<Float>> {
    static CACHE: OnceLock<LogCache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().unwrap().get(&wp) {
        if t.len() >= n {
            return t.clone();
        }
    }
    let len = n.max(64).next_power_of_two();
    let mut t: Vec<Float> = Vec::with_capacity(len);
    t.push(Float::new(wp));
    t.push(Float::new(wp));
    for j in 2..len {
        let p = (2..).take_while(|p| p * p <= j).find(|p| j % p == 0);
        let v = match p {
            Some(p) => Float::with_val(wp, &t[p] + &t[j / p]),
            None => Float::with_val(wp, j as u64).ln(),
        };
        t.push(v);
    }
    let t = Arc::new(t);
    let mut guard = cache.lock().unwrap();
    if guard.len() > 64 {
        guard.clear();
    }
    guard.insert(wp, t.clone());
    t
}

fn em_sum(s: &BigComplex, order: u8, prec: u32, regularize: bool) -> Result<Vec<BigComplex>> {
    let order = order as usize;
    let sigma = s.re().to_f64();
    let t = s.im().to_f64();
    let s_abs = sigma.hypot(t);
    let mut n_terms = initial_terms(prec, t, sigma);
    loop {
        let wp = prec + cancellation_guard(sigma, n_terms, s_abs);
        if let Some(v) = em_attempt(s, order, wp, n_terms, regularize)? {
            return Ok(v.into_iter().map(|x| x.with_prec(prec)).collect());
        }
        n_terms *= 2;
        if n_terms > 1 << 26 {
            return Err(Error::NoConvergence {
                iterations: n_terms as usize,
                last: format!("Euler–Maclaurin at s = {s}"),
            });
        }
    }
}

/// One Euler–Maclaurin pass with fixed N; `None` when the correction terms
/// start growing before reaching the tolerance.
fn em_attempt(
    s: &BigComplex,
    order: usize,
    wp: u32,
    n_terms: u64,
    regularize: bool,
) -> Result<Option<Vec<BigComplex>>> {
    let s = s.clone().with_prec(wp);
    let mut acc: Vec<BigComplex> = vec![BigComplex::zero(wp); order + 1];

    let neg_s = -&s;
    let logs = log_table(n_terms as usize, wp);
    let powers = inverse_powers(&neg_s, n_terms as usize, wp);
    for (j, term) in powers.iter().enumerate().skip(1) {
        acc[0] = &acc[0] + term;
        if order == 0 {
            continue;
        }
        let lj = &logs[j];
        if order >= 1 {
            acc[1] = &acc[1] - &term.mul_real(lj);
        }
        if order >= 2 {
            let l2 = Float::with_val(wp, lj.square_ref());
            acc[2] = &acc[2] + &term.mul_real(&l2);
        }
    }

    let n_f = Float::with_val(wp, n_terms);
    let ln_n = n_f.clone().ln();
    let ln_n2 = Float::with_val(wp, ln_n.square_ref());
    // E = N^-s and its derivatives
    let e0 = s.mul_real(&ln_n).exp().recip();
    let e_jet = Jet {
        v: [e0.clone(), e0.mul_real(&-ln_n.clone()), e0.mul_real(&ln_n2)],
    };

    // N^{1-s}/(s-1) or, regularized, (N^{1-s} - 1)/(s-1)
    let sm1 = s.add_i64(-1);
    let inv = sm1.recip();
    if regularize {
        let x = sm1.mul_real(&ln_n).mul_i64(-1);
        acc[0] = &acc[0] + &(&expm1_complex(&x) * &inv);
    } else {
        let ne = e0.mul_real(&n_f);
        acc[0] = &acc[0] + &(&ne * &inv);
        if order >= 1 {
            let inv2 = inv.square();
            let a1 = &ne * &(&inv.mul_real(&-ln_n.clone()) - &inv2);
            acc[1] = &acc[1] + &a1;
            if order >= 2 {
                let inv3 = &inv2 * &inv;
                let inner = &(&inv.mul_real(&ln_n2) + &inv2.mul_real(&Float::with_val(wp, &ln_n * 2u32)))
                    + &inv3.mul_i64(2);
                acc[2] = &acc[2] + &(&ne * &inner);
            }
        }
    }
    let half = Float::with_val(wp, 0.5);
    for (k, a) in acc.iter_mut().enumerate() {
        *a = &*a + &e_jet.v[k].mul_real(&half);
    }

    // Bernoulli corrections
    let tol = Float::with_val(wp, Float::i_exp(1, -(wp as i32) + 16));
    let inv_n2 = Float::with_val(wp, 1) / Float::with_val(wp, n_f.square_ref());
    // P = s(s+1)...(s+2m-2) with derivatives, starting at m = 1: P = s
    let mut p_jet = [s.clone(), BigComplex::one(wp), BigComplex::zero(wp)];
    // N^{-2m+1} and 1/(2m)!
    let mut npow = Float::with_val(wp, &n_f).recip();
    let mut inv_fact = Float::with_val(wp, 0.5);
    let mut prev_abs: Option<Float> = None;
    let mut m_cap = 64usize;
    let mut m = 1usize;
    loop {
        let b = bernoulli_even(m_cap);
        while m <= b.len() {
            let c = Float::with_val(wp, &b[m - 1]) * &inv_fact * &npow;
            // (P·E) jet
            let pe0 = &p_jet[0] * &e_jet.v[0];
            let mut pe = Jet {
                v: [pe0, BigComplex::zero(wp), BigComplex::zero(wp)],
            };
            if order >= 1 {
                pe.v[1] = &(&p_jet[1] * &e_jet.v[0]) + &(&p_jet[0] * &e_jet.v[1]);
            }
            if order >= 2 {
                pe.v[2] = &(&(&p_jet[2] * &e_jet.v[0]) + &(&p_jet[1] * &e_jet.v[1]).mul_i64(2))
                    + &(&p_jet[0] * &e_jet.v[2]);
            }
            let term = pe.scale(&c, order);
            let mut small = true;
            for k in 0..=order {
                let mag = Float::with_val(wp, term.v[k].abs_max() * 2u32);
                let scale = acc[k].abs_max();
                if scale.is_zero() || mag > Float::with_val(wp, &tol * &scale) {
                    small = false;
                }
                acc[k] = &acc[k] + &term.v[k];
            }
            if small {
                return Ok(Some(acc));
            }
            let mag0 = term.v[0].abs_max();
            if let Some(prev) = &prev_abs {
                if m > 4 && mag0 > *prev {
                    return Ok(None);
                }
            }
            prev_abs = Some(mag0);

            // advance P by (s+2m-1)(s+2m)
            for a in [2 * m as i64 - 1, 2 * m as i64] {
                let lin = s.add_i64(a);
                if order >= 2 {
                    p_jet[2] = &(&p_jet[2] * &lin) + &p_jet[1].mul_i64(2);
                }
                if order >= 1 {
                    p_jet[1] = &(&p_jet[1] * &lin) + &p_jet[0];
                }
                p_jet[0] = &p_jet[0] * &lin;
            }
            npow *= &inv_n2;
            inv_fact /= ((2 * m + 1) * (2 * m + 2)) as u64;
            m += 1;
        }
        m_cap *= 2;
    }
}

/// φ(start + j·step) for j = 0..count, real arguments, sharing the power
/// table across the grid: m^{-(start + j·step)} = m^{-start} · (m^{-step})^j.
///
/// The grid must stay at or to the right of s = 1.
pub fn phi_grid(start: &Rational, step: &Rational, count: usize, ctx: &PrecisionContext) -> Result<Vec<Float>> {
    phi_grid_prec(start, step, count, ctx.bits())
}

pub(crate) fn phi_grid_prec(start: &Rational, step: &Rational, count: usize, prec: u32) -> Result<Vec<Float>> {
    if *start < 1 || *step <= 0 {
        return Err(Error::Domain("φ grid must start at s ≥ 1 with a positive step".into()));
    }
    if count == 0 {
        return Ok(Vec::new());
    }
    let s_max = start + Rational::from(step * (count as u64 - 1));
    let s_max_f = s_max.to_f64();
    // recurrence error grows like count ulps
    let wp = prec + 24 + (count as f64).log2().ceil() as u32;
    let mut n_terms = initial_terms(wp, 0.0, s_max_f) * 3 / 2;
    loop {
        if let Some(v) = phi_grid_attempt(start, step, count, wp, n_terms)? {
            return Ok(v
                .into_iter()
                .map(|mut x| {
                    x.set_prec(prec);
                    x
                })
                .collect());
        }
        n_terms *= 2;
    }
}

fn phi_grid_attempt(start: &Rational, step: &Rational, count: usize, wp: u32, n_terms: u64) -> Result<Option<Vec<Float>>> {
    let s0 = Float::with_val(wp, start);
    let h = Float::with_val(wp, step);
    let points: Vec<Float> = (0..count)
        .map(|j| Float::with_val(wp, start + Rational::from(step * j as u64)))
        .collect();

    // power sums Σ_{m<N} m^{-s_j}
    let mut sums = vec![Float::new(wp); count];
    for m in 1..n_terms {
        let lm = Float::with_val(wp, m).ln();
        let mut cur = (-Float::with_val(wp, &s0 * &lm)).exp();
        let ratio = (-Float::with_val(wp, &h * &lm)).exp();
        for sum in sums.iter_mut() {
            *sum += &cur;
            cur *= &ratio;
        }
    }

    let n_f = Float::with_val(wp, n_terms);
    let ln_n = n_f.clone().ln();
    let inv_n2 = Float::with_val(wp, n_f.square_ref()).recip();
    let tol = Float::with_val(wp, Float::i_exp(1, -(wp as i32) + 24));
    let b = bernoulli_even(64);
    let mut bern = b;
    let mut out = Vec::with_capacity(count);
    for (j, s) in points.iter().enumerate() {
        if j == 0 && *start == 1 {
            out.push(euler_gamma(wp));
            continue;
        }
        let e = (-Float::with_val(wp, s * &ln_n)).exp();
        let sm1 = Float::with_val(wp, s - 1u32);
        let x = -Float::with_val(wp, &sm1 * &ln_n);
        let mut acc = Float::with_val(wp, &sums[j]);
        acc += Float::with_val(wp, x.exp_m1_ref()) / &sm1;
        acc += Float::with_val(wp, &e / 2u32);

        let mut p = s.clone();
        let mut npow = Float::with_val(wp, &n_f).recip();
        let mut inv_fact = Float::with_val(wp, 0.5);
        let mut prev: Option<Float> = None;
        let mut m = 1usize;
        loop {
            if m > bern.len() {
                bern = bernoulli_even(2 * bern.len());
            }
            let term = Float::with_val(wp, &bern[m - 1]) * &inv_fact * &npow * &p * &e;
            let mag = Float::with_val(wp, term.abs_ref());
            acc += &term;
            if mag < Float::with_val(wp, &tol * Float::with_val(wp, acc.abs_ref())) {
                break;
            }
            if let Some(pr) = &prev {
                if m > 4 && mag > *pr {
                    return Ok(None);
                }
            }
            prev = Some(mag);
            p *= Float::with_val(wp, s + (2 * m - 1) as u64);
            p *= Float::with_val(wp, s + (2 * m) as u64);
            npow *= &inv_n2;
            inv_fact /= ((2 * m + 1) * (2 * m + 2)) as u64;
            m += 1;
        }
        out.push(acc);
    }
    Ok(Some(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mp::Agreement;

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(40).unwrap()
    }

    fn c(re: f64, im: f64) -> BigComplex {
        BigComplex::with_val(ctx().bits(), re, im)
    }

    #[test]
    fn classical_values() {
        let p = ctx().bits();
        let z2 = zeta(&c(2.0, 0.0), &ctx()).unwrap();
        let pi2_6 = BigComplex::from_real(pi(p).square() / 6u32);
        assert!(z2.agreeing_digits(&pi2_6) >= 40);
        let z0 = zeta(&c(0.0, 0.0), &ctx()).unwrap();
        assert!(z0.agreeing_digits(&c(-0.5, 0.0)) >= 40);
        let zm1 = zeta(&c(-1.0, 0.0), &ctx()).unwrap();
        let expect = BigComplex::from_real(Float::with_val(p, -1) / 12u32);
        assert!(zm1.agreeing_digits(&expect) >= 40);
    }

    #[test]
    fn derivative_at_zero() {
        let p = ctx().bits();
        let d = zeta_deriv(&c(0.0, 0.0), 1, &ctx()).unwrap();
        let expect = BigComplex::from_real(-((pi(p) * 2u32).ln()) / 2u32);
        assert!(d.agreeing_digits(&expect) >= 40);
    }

    #[test]
    fn pole_is_rejected() {
        assert!(matches!(zeta(&c(1.0, 0.0), &ctx()), Err(Error::Pole(1))));
        assert!(matches!(zeta_deriv(&c(1.0, 0.0), 2, &ctx()), Err(Error::Pole(1))));
        assert!(zeta_deriv(&c(2.0, 0.0), 3, &ctx()).is_err());
    }

    #[test]
    fn phi_values() {
        let p = ctx().bits();
        let at_one = phi(&c(1.0, 0.0), &ctx()).unwrap();
        assert_eq!(*at_one.re(), euler_gamma(p));
        let at_two = phi(&c(2.0, 0.0), &ctx()).unwrap();
        let expect = BigComplex::from_real(pi(p).square() / 6u32 - 1u32);
        assert!(at_two.agreeing_digits(&expect) >= 39);
    }

    #[test]
    fn phi_is_smooth_through_one() {
        // |φ(1+h) - γ| ≈ |γ_1| h, decreasing with h; no cancellation blow-up
        let p = ctx().bits();
        let g = BigComplex::from_real(euler_gamma(p));
        let mut last = f64::INFINITY;
        for k in 2..=8 {
            let h = 10f64.powi(-k);
            for sign in [1.0, -1.0] {
                let v = phi(&c(1.0 + sign * h, 0.0), &ctx()).unwrap();
                let d = (&v - &g).abs().to_f64();
                assert!(d < h, "k={k}: {d}");
                assert!(d < last * 1.0001 || sign < 0.0);
                if sign > 0.0 {
                    last = d;
                }
            }
        }
    }

    #[test]
    fn phi_grid_matches_pointwise() {
        let ctx = ctx();
        let start = Rational::from(1);
        let step = Rational::from((1, 32));
        let grid = phi_grid(&start, &step, 40, &ctx).unwrap();
        for j in [0usize, 1, 7, 39] {
            let s = BigComplex::from_real(Float::with_val(ctx.bits(), Rational::from(&start + Rational::from(&step * j as u64))));
            let direct = phi(&s, &ctx).unwrap();
            assert!(
                crate::mp::agreeing_digits(&grid[j], direct.re()) >= 40,
                "j={j}"
            );
        }
    }

    #[test]
    fn functional_equation_holds() {
        let ctx = ctx();
        for z in [c(0.5, 0.0), c(3.0, 4.0), c(-0.25, 0.0)] {
            let r = functional_eq_residual(&z, &ctx).unwrap();
            assert!(r < 1e-35, "z={z:?}: {}", r.to_f64());
        }
        assert!(functional_eq_residual(&c(0.0, 0.0), &ctx).is_err());
    }
}
