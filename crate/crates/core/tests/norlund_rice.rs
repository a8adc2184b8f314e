use rug::{Float, Rational};
use stieltjes::finite_diff::{a_coefficients, harmonic};
use stieltjes::mp::{agreeing_digits, euler_gamma, BigComplex, PrecisionContext};
use stieltjes::norlund_rice::*;
use stieltjes::zeta::zeta;

fn ctx() -> PrecisionContext {
    PrecisionContext::new(30).unwrap()
}

fn eps() -> Rational {
    Rational::from((1, 32))
}

/// a_k accurate relative to its own size.
fn a_k(k: usize) -> Float {
    let extra = (k as f64 * 32f64.log10()).ceil() as u32 + 20;
    a_coefficients(&eps(), k, &ctx().raised(extra)).unwrap().values[k].clone()
}

#[test]
fn integrand_matches_reflected_zeta() {
    // f_k(s,ε) = ζ(1-sε)/(s(s+1)…(s+k)) by the functional equation
    let c = ctx();
    let p = c.bits() + 20;
    for (re, im, k) in [(0.5, 0.0, 0usize), (0.5, 10.0, 8), (3.0, -7.5, 4), (-0.5, 2.0, 3)] {
        let s = BigComplex::with_val(p, re, im);
        let f = integrand_f(&s, k, &eps(), &c).unwrap();
        let e = Float::with_val(p, &eps());
        let w = (-&s.mul_real(&e)).add_i64(1);
        let mut poch = s.clone();
        for i in 1..=k {
            poch = &poch * &s.add_i64(i as i64);
        }
        let oracle = &zeta(&w, &c.raised(20)).unwrap() / &poch;
        assert!(f.rel_diff(&oracle) < 1e-28, "s = {re}+{im}i: {}", f.rel_diff(&oracle));
    }
}

#[test]
fn g_conjugate_symmetry() {
    let s = BigComplex::with_val(200, 0.7, 13.25);
    let a = integrand_g(&s, 5, &eps(), &ctx()).unwrap();
    let b = integrand_g(&s.conj(), 5, &eps(), &ctx()).unwrap();
    assert!(a.conj().rel_diff(&b) < 1e-28);
}

#[test]
fn rectangle_matches_alternating_sum() {
    for k in [0usize, 1, 5] {
        let v = rect_contour_integral(k, &eps(), &ContourSpec::rectangle(), &ctx()).unwrap();
        let a = a_k(k);
        let rel = Float::with_val(200, v.re() - &a).abs() / Float::with_val(200, a.abs_ref());
        assert!(rel < 1e-25, "k = {k}: rel {rel}");
        let im = Float::with_val(200, v.im().abs_ref()) / Float::with_val(200, a.abs_ref());
        assert!(im < 1e-25, "k = {k}: imaginary part {im}");
    }
}

#[test]
fn rectangle_k0_is_euler() {
    let v = rect_contour_integral(0, &eps(), &ContourSpec::rectangle(), &ctx()).unwrap();
    assert!(agreeing_digits(v.re(), &euler_gamma(v.prec())) >= 28);
}

#[test]
fn residue_identity() {
    for k in 0..=10 {
        let r = residue_at_zero(k, &eps(), &PrecisionContext::new(35).unwrap()).unwrap();
        assert!(r.agreeing_digits >= 30, "k = {k}");
    }
    let r = residue_at_zero(1, &Rational::from((1, 2)), &ctx()).unwrap();
    let g = euler_gamma(200);
    assert!(agreeing_digits(&r.closed_form, &Float::with_val(200, &g + 2u32)) >= 28);
}

#[test]
fn line_gives_a_k() {
    let k = 8;
    let spec = ContourSpec::vertical_line(Float::with_val(64, 0.5), None).with_tolerance(Float::with_val(64, 1e-10));
    let line = vertical_line_integral(k, &eps(), &spec, &PrecisionContext::new(20).unwrap()).unwrap();
    let a = a_k(k);
    let diff = Float::with_val(200, &line.value - &a).abs();
    let allowed = Float::with_val(200, &line.tail_bound * 2u32) + Float::with_val(200, a.abs_ref()) * 1e-12;
    assert!(diff <= allowed, "diff {diff} tail {}", line.tail_bound);
}

#[test]
fn line_shift_and_residue_cancellation() {
    let k = 4;
    let c = PrecisionContext::new(20).unwrap();
    let a = a_k(k);
    let tol = Float::with_val(200, a.abs_ref()) * 1e-9;
    let rel = Float::with_val(64, 1e-10);
    for sigma in [0.5, 1.0, 3.0] {
        let spec = ContourSpec::vertical_line(Float::with_val(64, sigma), None).with_tolerance(rel.clone());
        let v = vertical_line_integral(k, &eps(), &spec, &c).unwrap();
        assert!(Float::with_val(200, &v.value - &a).abs() < tol, "σ = {sigma}");
    }
    // Re s = -1/2 misses the residue at 0: a_k = γ + H_k/ε + integral
    let spec = ContourSpec::vertical_line(Float::with_val(64, -0.5), None).with_tolerance(rel);
    let v = vertical_line_integral(k, &eps(), &spec, &c).unwrap();
    let p = 200;
    let h = Float::with_val(p, harmonic(k as u64) / eps());
    let rebuilt = euler_gamma(p) + h + &v.value;
    let scale = Float::with_val(p, v.value.abs_ref());
    assert!(Float::with_val(p, &rebuilt - &a).abs() < scale * 1e-9);
}

#[test]
fn explicit_short_truncation_reports_tail() {
    let spec = ContourSpec::vertical_line(Float::with_val(64, 0.5), Some(Float::with_val(64, 4)));
    let r = vertical_line_integral(8, &eps(), &spec, &ctx());
    assert!(matches!(r, Err(stieltjes::Error::Tail { .. })));
}

#[test]
fn decay_on_the_line() {
    let c = ctx();
    let mut prev = None;
    for t in [50.0, 100.0, 200.0, 400.0, 800.0] {
        let s = BigComplex::with_val(c.bits(), 0.5, t);
        let v = integrand_f(&s, 8, &eps(), &c).unwrap().abs();
        if let Some(p) = prev {
            assert!(v < p);
        }
        prev = Some(v);
    }
}

#[test]
fn report_serializes() {
    let r = verify_rectangle(3, &eps(), &ctx()).unwrap();
    let json = serde_json::to_string(&r).unwrap();
    assert!(json.contains("\"rel_error\""));
    assert!(r.rel_error.parse::<f64>().unwrap() < 1e-25);
}
