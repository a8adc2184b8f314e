use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use stieltjes::mp::{pi, ten_pow, BigComplex, PrecisionContext};
use stieltjes::norlund_rice::integrand_f;
use stieltjes::saddle::*;

fn ctx() -> PrecisionContext {
    PrecisionContext::new(40).unwrap()
}

fn eps32() -> Rational {
    Rational::from((1, 32))
}

fn bound(ctx: &PrecisionContext) -> Float {
    ten_pow(64, -(ctx.digits() as i64) + 5)
}

/// w lies in the range of W₀: |Im w| < π and right of the curve ξ = -η cot η.
fn in_principal_range(w: &BigComplex) -> bool {
    let (x, y) = (w.re().to_f64(), w.im().to_f64());
    if y.abs() >= std::f64::consts::PI {
        return false;
    }
    if y == 0.0 {
        return x >= -1.0;
    }
    x > -y / y.tan()
}

fn random_z(rng: &mut ChaCha8Rng, prec: u32) -> BigComplex {
    let r = 10f64.powf(rng.gen_range(-3.0..8.0));
    let t = rng.gen_range(-3.1..3.1f64);
    BigComplex::with_val(prec, r * t.cos(), r * t.sin())
}

#[test]
fn lambert_w_random_principal() {
    let c = ctx();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let z = random_z(&mut rng, c.bits());
        let w = lambert_w(&z, 0, &c).unwrap();
        assert!(lambert_residual(&w, &z) < bound(&c), "z = {z}");
        assert!(in_principal_range(&w), "W₀({z}) = {w} outside the principal range");
    }
}

#[test]
fn lambert_w_random_lower_branch() {
    let c = ctx();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let z = random_z(&mut rng, c.bits());
        let w = lambert_w(&z, -1, &c).unwrap();
        assert!(lambert_residual(&w, &z) < bound(&c), "z = {z}");
        let w0 = lambert_w(&z, 0, &c).unwrap();
        assert!(w.rel_diff(&w0) > 1e-3, "branches coincide at {z}");
    }
}

#[test]
fn lambert_w_at_the_n_equals_one_argument() {
    let c = ctx();
    let p = c.bits();
    // (1 + 3/2)/(2πi) = -i (5/2)/(2π)
    let z = BigComplex::new(Float::new(p), -Float::with_val(p, 2.5) / (pi(p) * 2u32));
    let w = lambert_w(&z, 0, &c).unwrap();
    assert!(lambert_residual(&w, &z) < bound(&c));
}

#[test]
fn lambert_w_huge_argument() {
    let c = PrecisionContext::new(1100).unwrap();
    let p = c.bits();
    let z = BigComplex::new(Float::new(p), -(Float::with_val(p, 10).pow(1000u32) / (pi(p) * 2u32)));
    let w = lambert_w(&z, 0, &c).unwrap();
    assert!(lambert_residual(&w, &z) < bound(&c));
}

#[test]
fn closed_saddles_are_conjugate() {
    let c = ctx();
    for k in [0u64, 1, 10, 100] {
        let plus = saddle_closed(k, &eps32(), Branch::Plus, &c).unwrap();
        let minus = saddle_closed(k, &eps32(), Branch::Minus, &c).unwrap();
        assert!(plus.location.rel_diff(&minus.location.conj()) < 1e-45);
        assert!(*plus.location.im() > 0);
    }
}

#[test]
fn closed_saddle_scales_with_inverse_epsilon() {
    let c = ctx();
    let a = saddle_closed(30, &Rational::from((1, 16)), Branch::Plus, &c).unwrap();
    let b = saddle_closed(30, &eps32(), Branch::Plus, &c).unwrap();
    let half = b.location.div_real(&Float::with_val(c.bits(), 2));
    assert!(a.location.rel_diff(&half) < 1e-45);
}

#[test]
fn closed_saddles_solve_the_simplified_equation() {
    let c = ctx();
    let eps = Float::with_val(c.bits(), 1) / 32u32;
    for k in [0u64, 5, 25, 100, 200] {
        for branch in [Branch::Plus, Branch::Minus] {
            let sp = saddle_closed(k, &eps32(), branch, &c).unwrap();
            let r = saddle_eq1_residual(&sp.location, &Integer::from(k), &eps, branch);
            assert!(r < bound(&c), "k = {k}");
        }
    }
}

#[test]
fn closed_residual_is_small_relative_to_slope() {
    // |ω'| at the closed form, against the size (k+3/2)/|s| of its terms
    let c = ctx();
    for k in [10u64, 100] {
        let sp = saddle_closed(k, &eps32(), Branch::Plus, &c).unwrap();
        let scale = (k as f64 + 1.5) / sp.location.abs().to_f64();
        assert!(sp.residual.to_f64() / scale < 0.05, "k = {k}");
    }
}

#[test]
fn saddles_for_n_residual_and_half_planes() {
    let c = ctx();
    for n in 1u32..=250 {
        let n = Integer::from(n);
        let plus = saddle_for_n(&n, Branch::Plus, &c).unwrap();
        let minus = saddle_for_n(&n, Branch::Minus, &c).unwrap();
        assert!(plus.residual < bound(&c), "n = {n}");
        assert!(*plus.location.im() > 0 && *minus.location.im() < 0);
        assert!(plus.location.rel_diff(&minus.location.conj()) < 1e-45);
    }
}

#[test]
fn p_is_real_on_the_real_segment() {
    let c = ctx();
    for x in [0.3, 3.7, 17.0, 31.5] {
        let s = BigComplex::with_val(c.bits(), x, 0);
        let p = p_fun(&s, 5, &eps32(), &c).unwrap();
        assert!(p.im().clone().abs().to_f64() < 1e-45, "s = {x}");
        let p1 = p1_fun(&s, 5, &eps32(), &c).unwrap();
        assert!(p1.im().clone().abs().to_f64() < 1e-45);
    }
}

#[test]
fn p_difference_telescopes() {
    // p_3(s) - p_0(s) = ψ(s+1) - ψ(s+4) = -(1/3 + 1/4 + 1/5) at s = 2
    let c = ctx();
    let s = BigComplex::with_val(c.bits(), 2, 0);
    let d = &p_fun(&s, 3, &eps32(), &c).unwrap() - &p_fun(&s, 0, &eps32(), &c).unwrap();
    let expect = -(Float::with_val(c.bits(), 1) / 3u32 + Float::with_val(c.bits(), 1) / 4u32 + Float::with_val(c.bits(), 1) / 5u32);
    assert!(d.rel_diff(&BigComplex::from_real(expect)) < 1e-45);
}

fn probe_point(prec: u32) -> BigComplex {
    BigComplex::with_val(prec, 0.5, 10)
}

fn central(f: &dyn Fn(&BigComplex) -> BigComplex, s: &BigComplex, h: &Float) -> (BigComplex, BigComplex) {
    let sp = s.add_real(h);
    let sm = s.add_real(&-h.clone());
    let (fp, f0, fm) = (f(&sp), f(s), f(&sm));
    let h2 = Float::with_val(h.prec(), h * 2u32);
    let hh = Float::with_val(h.prec(), h.square_ref());
    let d1 = (&fp - &fm).div_real(&h2);
    let d2 = (&(&fp + &fm) - &f0.mul_i64(2)).div_real(&hh);
    (d1, d2)
}

#[test]
fn p1_matches_difference_of_p() {
    let c = ctx();
    let s = probe_point(c.bits());
    let h = Float::with_val(c.bits(), 1e-12);
    let (d1, _) = central(&|x| p_fun(x, 8, &eps32(), &c).unwrap(), &s, &h);
    let p1 = p1_fun(&s, 8, &eps32(), &c).unwrap();
    assert!(d1.rel_diff(&p1) < 1e-20);
}

#[test]
fn f_derivatives_match_differences() {
    let c = ctx();
    let s = probe_point(c.bits());
    let h = Float::with_val(c.bits(), 1e-10);
    let (d1, d2) = central(&|x| integrand_f(x, 8, &eps32(), &c).unwrap(), &s, &h);
    assert!(d1.rel_diff(&f_d1(&s, 8, &eps32(), &c).unwrap()) < 1e-17);
    assert!(d2.rel_diff(&f_d2(&s, 8, &eps32(), &c).unwrap()) < 1e-17);
}

#[test]
fn omega_derivatives_are_logarithmic_derivatives() {
    let c = ctx();
    let s = probe_point(c.bits());
    let f = integrand_f(&s, 8, &eps32(), &c).unwrap();
    let r1 = &f_d1(&s, 8, &eps32(), &c).unwrap() / &f;
    let r2 = &f_d2(&s, 8, &eps32(), &c).unwrap() / &f;
    let w1 = omega_d1(&s, 8, &eps32(), &c).unwrap();
    let w2 = omega_d2(&s, 8, &eps32(), &c).unwrap();
    assert!(w1.rel_diff(&r1) < 1e-40);
    assert!(w2.rel_diff(&(&r2 - &r1.square())) < 1e-40);
}

#[test]
fn f_d1_conjugate_symmetry() {
    let c = ctx();
    let s = BigComplex::with_val(c.bits(), 3.25, 41.5);
    let a = f_d1(&s, 12, &eps32(), &c).unwrap();
    let b = f_d1(&s.conj(), 12, &eps32(), &c).unwrap();
    assert!(a.rel_diff(&b.conj()) < 1e-45);
}

#[test]
fn refined_saddle_is_stationary() {
    let c = ctx();
    let start = saddle_closed(50, &eps32(), Branch::Plus, &c).unwrap();
    let r = saddle_refine(&start, &c).unwrap();
    assert!(r.residual.to_f64() < 1e-20);
    for d in [1i64, -1] {
        let off = omega_d1(&r.location.add_i64(d), 50, &eps32(), &c).unwrap();
        assert!(off.abs() > Float::with_val(64, &r.residual * 1_000_000u32));
    }
}

#[test]
fn conjugate_start_refines_to_conjugate() {
    let c = ctx();
    let a = saddle_refine(&saddle_closed(40, &eps32(), Branch::Plus, &c).unwrap(), &c).unwrap();
    let b = saddle_refine(&saddle_closed(40, &eps32(), Branch::Minus, &c).unwrap(), &c).unwrap();
    assert!(a.location.rel_diff(&b.location.conj()) < 1e-18);
}

#[test]
fn refine_requires_epsilon() {
    let c = ctx();
    let sp = saddle_for_n(&Integer::from(10), Branch::Plus, &c).unwrap();
    assert!(saddle_refine(&sp, &c).is_err());
}

/// Root of p_k = 0 near the closed form: the saddle with ζ(εs) set to 1.
fn zeta_free_saddle(k: u64, c: &PrecisionContext) -> BigComplex {
    let mut s = saddle_closed(k, &eps32(), Branch::Plus, c).unwrap().location;
    for _ in 0..50 {
        let p = p_fun(&s, k as usize, &eps32(), c).unwrap();
        let p1 = p1_fun(&s, k as usize, &eps32(), c).unwrap();
        let step = &p / &p1;
        s = &s - &step;
        if step.abs() < Float::with_val(64, 1e-30) * s.abs() {
            break;
        }
    }
    s
}

#[test]
fn zeta_terms_shift_the_saddle_less_as_k_grows() {
    let c = ctx();
    let mut last = f64::INFINITY;
    for k in [25u64, 50, 100, 200] {
        let refined = saddle_refine(&saddle_closed(k, &eps32(), Branch::Plus, &c).unwrap(), &c).unwrap();
        let free = zeta_free_saddle(k, &c);
        let d = refined.location.rel_diff(&free);
        assert!(d < last, "k = {k}: {d:e} not below {last:e}");
        last = d;
    }
    assert!(last < 1e-15);
}
