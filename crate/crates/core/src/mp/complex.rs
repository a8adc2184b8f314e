use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rug::float::Constant;
use rug::Float;

/// Arbitrary-precision complex number with MPFR real and imaginary parts.
///
/// Both components always share the same precision. Arithmetic between
/// operands of different precision is carried out at the larger one.
#[derive(Clone, PartialEq)]
pub struct BigComplex {
    re: Float,
    im: Float,
}

impl BigComplex {
    pub fn new(re: Float, im: Float) -> Self {
        let prec = re.prec().max(im.prec());
        let mut out = BigComplex { re, im };
        out.set_prec(prec);
        out
    }

    pub fn with_val<R, I>(prec: u32, re: R, im: I) -> Self
    where
        Float: rug::Assign<R> + rug::Assign<I>,
    {
        BigComplex {
            re: Float::with_val(prec, re),
            im: Float::with_val(prec, im),
        }
    }

    pub fn from_real(re: Float) -> Self {
        let im = Float::new(re.prec());
        BigComplex { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        BigComplex::with_val(prec, 0, 0)
    }

    pub fn one(prec: u32) -> Self {
        BigComplex::with_val(prec, 1, 0)
    }

    pub fn i(prec: u32) -> Self {
        BigComplex::with_val(prec, 0, 1)
    }

    pub fn re(&self) -> &Float {
        &self.re
    }

    pub fn im(&self) -> &Float {
        &self.im
    }

    pub fn into_parts(self) -> (Float, Float) {
        (self.re, self.im)
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    pub fn set_prec(&mut self, prec: u32) {
        self.re.set_prec(prec);
        self.im.set_prec(prec);
    }

    pub fn with_prec(mut self, prec: u32) -> Self {
        self.set_prec(prec);
        self
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        BigComplex {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn norm_sqr(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, self.re.square_ref()) + Float::with_val(p, self.im.square_ref())
    }

    pub fn abs(&self) -> Float {
        self.re.clone().hypot(&self.im)
    }

    /// max(|re|, |im|), within a factor √2 of |z| and much cheaper.
    pub fn abs_max(&self) -> Float {
        let r = Float::with_val(self.prec(), self.re.abs_ref());
        let i = Float::with_val(self.prec(), self.im.abs_ref());
        r.max(&i)
    }

    /// Principal argument in (-π, π]; a signed zero imaginary part counts as +0.
    pub fn arg(&self) -> Float {
        if self.im.is_zero() {
            let p = self.prec();
            return if self.re.is_sign_negative() && !self.re.is_zero() {
                Float::with_val(p, Constant::Pi)
            } else {
                Float::new(p)
            };
        }
        self.im.clone().atan2(&self.re)
    }

    pub fn mul_real(&self, x: &Float) -> Self {
        let p = self.prec().max(x.prec());
        BigComplex {
            re: Float::with_val(p, &self.re * x),
            im: Float::with_val(p, &self.im * x),
        }
    }

    pub fn div_real(&self, x: &Float) -> Self {
        let p = self.prec().max(x.prec());
        BigComplex {
            re: Float::with_val(p, &self.re / x),
            im: Float::with_val(p, &self.im / x),
        }
    }

    pub fn add_real(&self, x: &Float) -> Self {
        let p = self.prec().max(x.prec());
        BigComplex {
            re: Float::with_val(p, &self.re + x),
            im: Float::with_val(p, &self.im),
        }
    }

    pub fn mul_i64(&self, k: i64) -> Self {
        BigComplex {
            re: self.re.clone() * k,
            im: self.im.clone() * k,
        }
    }

    pub fn add_i64(&self, k: i64) -> Self {
        BigComplex {
            re: self.re.clone() + k,
            im: self.im.clone(),
        }
    }

    /// Multiplication by the imaginary unit.
    pub fn mul_i(&self) -> Self {
        BigComplex {
            re: -self.im.clone(),
            im: self.re.clone(),
        }
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn recip(&self) -> Self {
        let d = self.norm_sqr();
        BigComplex {
            re: Float::with_val(self.prec(), &self.re / &d),
            im: -Float::with_val(self.prec(), &self.im / &d),
        }
    }

    pub fn exp(&self) -> Self {
        let p = self.prec();
        let m = self.re.clone().exp();
        let (s, c) = self.im.clone().sin_cos(Float::new(p));
        BigComplex {
            re: Float::with_val(p, &m * &c),
            im: Float::with_val(p, &m * &s),
        }
    }

    /// Principal logarithm. The caller guarantees `self != 0`.
    pub fn ln(&self) -> Self {
        BigComplex {
            re: self.abs().ln(),
            im: self.arg(),
        }
    }

    /// Principal square root (branch cut on the negative real axis, result
    /// in the closed right half-plane).
    pub fn sqrt(&self) -> Self {
        let p = self.prec();
        if self.is_zero() {
            return BigComplex::zero(p);
        }
        let r = self.abs();
        if !self.re.is_sign_negative() {
            let t = (Float::with_val(p, &r + &self.re) / 2u32).sqrt();
            let im = Float::with_val(p, &self.im / &t) / 2u32;
            BigComplex { re: t, im }
        } else {
            let t = (Float::with_val(p, &r - &self.re) / 2u32).sqrt();
            let re = Float::with_val(p, self.im.abs_ref()) / &t / 2u32;
            let im = if self.im.is_sign_negative() && !self.im.is_zero() {
                -t
            } else {
                t
            };
            BigComplex { re, im }
        }
    }

    /// `self^w` on the principal branch of the logarithm.
    pub fn pow(&self, w: &BigComplex) -> Self {
        (w * &self.ln()).exp()
    }

    pub fn pow_real(&self, w: &Float) -> Self {
        self.ln().mul_real(w).exp()
    }

    pub fn sin(&self) -> Self {
        let p = self.prec();
        let (s, c) = self.re.clone().sin_cos(Float::new(p));
        let (sh, ch) = self.im.clone().sinh_cosh(Float::new(p));
        BigComplex {
            re: s * ch,
            im: c * sh,
        }
    }

    pub fn cos(&self) -> Self {
        let p = self.prec();
        let (s, c) = self.re.clone().sin_cos(Float::new(p));
        let (sh, ch) = self.im.clone().sinh_cosh(Float::new(p));
        BigComplex {
            re: c * ch,
            im: -(s * sh),
        }
    }

    /// Tangent through `exp(±2iz)`, choosing the sign that keeps the
    /// exponential bounded by one so that large |Im z| cannot overflow.
    pub fn tan(&self) -> Self {
        let p = self.prec();
        let two_iz = self.mul_i().mul_i64(2);
        if !self.im.is_sign_negative() {
            let e = two_iz.exp();
            let num = e.add_i64(-1);
            let den = e.add_i64(1);
            (num / den).mul_i().mul_i64(-1)
        } else {
            let e = two_iz.mul_i64(-1).exp();
            let num = e.add_i64(-1);
            let den = e.add_i64(1);
            (num / den).mul_i()
        }
        .with_prec(p)
    }

    /// Relative distance |self - other| / max(|self|, |other|) as f64.
    pub fn rel_diff(&self, other: &BigComplex) -> f64 {
        let d = (self - other).abs();
        if d.is_zero() {
            return 0.0;
        }
        let scale = self.abs().max(&other.abs());
        if scale.is_zero() {
            return f64::INFINITY;
        }
        (d / scale).to_f64()
    }

    pub fn abs_diff(&self, other: &BigComplex) -> Float {
        (self - other).abs()
    }
}

impl From<Float> for BigComplex {
    fn from(re: Float) -> Self {
        BigComplex::from_real(re)
    }
}

impl fmt::Debug for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}i)", self.re.to_string_radix(10, Some(20)), self.im.to_string_radix(10, Some(20)))
    }
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision();
        let im_neg = self.im.is_sign_negative() && !self.im.is_zero();
        let im_abs = Float::with_val(self.prec(), self.im.abs_ref());
        write!(
            f,
            "{} {} {}i",
            self.re.to_string_radix(10, digits),
            if im_neg { "-" } else { "+" },
            im_abs.to_string_radix(10, digits)
        )
    }
}

impl Neg for BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        BigComplex {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Neg for &BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        -self.clone()
    }
}

impl Add<&BigComplex> for &BigComplex {
    type Output = BigComplex;
    fn add(self, rhs: &BigComplex) -> BigComplex {
        let p = self.prec().max(rhs.prec());
        BigComplex {
            re: Float::with_val(p, &self.re + &rhs.re),
            im: Float::with_val(p, &self.im + &rhs.im),
        }
    }
}

impl Sub<&BigComplex> for &BigComplex {
    type Output = BigComplex;
    fn sub(self, rhs: &BigComplex) -> BigComplex {
        let p = self.prec().max(rhs.prec());
        BigComplex {
            re: Float::with_val(p, &self.re - &rhs.re),
            im: Float::with_val(p, &self.im - &rhs.im),
        }
    }
}

impl Mul<&BigComplex> for &BigComplex {
    type Output = BigComplex;
    fn mul(self, rhs: &BigComplex) -> BigComplex {
        let p = self.prec().max(rhs.prec());
        let ac = Float::with_val(p, &self.re * &rhs.re);
        let bd = Float::with_val(p, &self.im * &rhs.im);
        let ad = Float::with_val(p, &self.re * &rhs.im);
        let bc = Float::with_val(p, &self.im * &rhs.re);
        BigComplex {
            re: ac - bd,
            im: ad + bc,
        }
    }
}

impl Div<&BigComplex> for &BigComplex {
    type Output = BigComplex;
    fn div(self, rhs: &BigComplex) -> BigComplex {
        let p = self.prec().max(rhs.prec());
        let d = rhs.norm_sqr();
        let ac = Float::with_val(p, &self.re * &rhs.re);
        let bd = Float::with_val(p, &self.im * &rhs.im);
        let bc = Float::with_val(p, &self.im * &rhs.re);
        let ad = Float::with_val(p, &self.re * &rhs.im);
        BigComplex {
            re: (ac + bd) / &d,
            im: (bc - ad) / &d,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<BigComplex> for BigComplex {
            type Output = BigComplex;
            fn $m(self, rhs: BigComplex) -> BigComplex {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&BigComplex> for BigComplex {
            type Output = BigComplex;
            fn $m(self, rhs: &BigComplex) -> BigComplex {
                (&self).$m(rhs)
            }
        }
        impl $tr<BigComplex> for &BigComplex {
            type Output = BigComplex;
            fn $m(self, rhs: BigComplex) -> BigComplex {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

/// Integer power by repeated squaring; used where exact small exponents
/// matter more than speed.
pub fn powi(z: &BigComplex, mut n: u32) -> BigComplex {
    let mut base = z.clone();
    let mut acc = BigComplex::one(z.prec());
    while n > 0 {
        if n & 1 == 1 {
            acc = &acc * &base;
        }
        base = base.square();
        n >>= 1;
    }
    acc
}

