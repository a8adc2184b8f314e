//! Arbitrary-precision substrate.
//!
//! Real scalars are MPFR floats ([`BigReal`]); complex scalars are
//! [`BigComplex`]. Every public numerical routine takes a
//! [`PrecisionContext`] that fixes the number of decimal digits the caller
//! wants plus the guard digits carried internally.

mod bernoulli;
mod complex;
mod special;

pub use bernoulli::{bernoulli_2k, bernoulli_even};
pub use complex::{powi, BigComplex};
pub use special::{complex_log, digamma, gamma, ln_gamma_real, trigamma};

pub(crate) use special::{digamma_prec, gamma_prec, ln_gamma_prec, trigamma_prec};

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Rational};

use crate::error::{Error, Result};

/// Real arbitrary-precision scalar. Finite values only; NaN and infinities
/// are treated as errors by the routines that produce them.
pub type BigReal = Float;

/// log2(10)
pub const LOG2_10: f64 = std::f64::consts::LOG2_10;

/// Binary precision needed to carry `digits` decimal digits.
pub fn digits_to_bits(digits: u32) -> u32 {
    (digits as f64 * LOG2_10).ceil() as u32 + 8
}

pub fn bits_to_digits(bits: u32) -> u32 {
    (bits as f64 / LOG2_10).floor() as u32
}

/// Requested decimal precision plus guard digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrecisionContext {
    digits: u32,
    guard: u32,
    max_digits: u32,
}

impl PrecisionContext {
    pub const MIN_DIGITS: u32 = 20;
    pub const DEFAULT_GUARD: u32 = 10;
    pub const DEFAULT_MAX_DIGITS: u32 = 2_000_000;

    pub fn new(digits: u32) -> Result<Self> {
        if digits < Self::MIN_DIGITS {
            return Err(Error::Precision(format!(
                "{digits} digits requested, at least {} required",
                Self::MIN_DIGITS
            )));
        }
        Ok(PrecisionContext {
            digits,
            guard: Self::DEFAULT_GUARD,
            max_digits: Self::DEFAULT_MAX_DIGITS.max(digits),
        })
    }

    pub fn with_guard(mut self, guard: u32) -> Self {
        self.guard = guard;
        self
    }

    /// Ceiling on `digits + guard` for automatic escalation.
    pub fn with_max_digits(mut self, max_digits: u32) -> Self {
        self.max_digits = max_digits.max(self.digits);
        self
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn guard(&self) -> u32 {
        self.guard
    }

    pub fn max_digits(&self) -> u32 {
        self.max_digits
    }

    pub fn working_digits(&self) -> u32 {
        self.digits + self.guard
    }

    /// Binary precision of all internal arithmetic.
    pub fn bits(&self) -> u32 {
        digits_to_bits(self.working_digits())
    }

    /// Same target, `extra` more guard digits.
    pub fn raised(&self, extra: u32) -> Self {
        PrecisionContext {
            guard: self.guard + extra,
            ..*self
        }
    }

    /// Same guard policy with a different target.
    pub fn with_digits(&self, digits: u32) -> Self {
        PrecisionContext {
            digits,
            max_digits: self.max_digits.max(digits),
            ..*self
        }
    }

    /// 10^-digits at working precision.
    pub fn tolerance(&self) -> Float {
        ten_pow(self.bits(), -(self.digits as i64))
    }
}

pub fn ten_pow(prec: u32, e: i64) -> Float {
    let ten = Float::with_val(prec, 10);
    if e >= 0 {
        ten.pow(e as u64 as u32)
    } else {
        let x: Float = ten.pow((-e) as u64 as u32);
        x.recip()
    }
}

pub fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

/// Euler's constant γ.
pub fn euler_gamma(prec: u32) -> Float {
    Float::with_val(prec, Constant::Euler)
}

pub fn ln_2pi(prec: u32) -> Float {
    (pi(prec) * 2u32).ln()
}

pub fn rational_to_float(q: &Rational, prec: u32) -> Float {
    Float::with_val(prec, q)
}

/// Decimal scientific notation with `digits` significant digits,
/// e.g. `5.772156649e-1`. Deterministic for a given value and digit count.
pub fn to_decimal(x: &Float, digits: usize) -> String {
    x.to_string_radix(10, Some(digits.max(1)))
}

/// log10|x| as f64, valid far outside the f64 range of `x` itself.
pub fn log10_abs(x: &Float) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    Float::with_val(64, x.abs_ref()).log10().to_f64()
}

/// Number of leading significant decimal digits on which `a` and `b` agree,
/// capped at the precision of the wider operand.
pub fn agreeing_digits(a: &Float, b: &Float) -> u32 {
    let cap = bits_to_digits(a.prec().max(b.prec()));
    if a == b {
        return cap;
    }
    let p = a.prec().max(b.prec());
    let diff = Float::with_val(p, a - b).abs();
    let scale = Float::with_val(p, a.abs_ref()).max(&Float::with_val(p, b.abs_ref()));
    if scale.is_zero() {
        return cap;
    }
    let rel = (diff / scale).log10().to_f64();
    if rel >= 0.0 {
        0
    } else {
        ((-rel).floor() as u32).min(cap)
    }
}

/// Values that can be compared for digit-level agreement.
pub trait Agreement {
    fn agreeing_digits(&self, other: &Self) -> u32;
}

impl Agreement for Float {
    fn agreeing_digits(&self, other: &Self) -> u32 {
        agreeing_digits(self, other)
    }
}

impl Agreement for BigComplex {
    fn agreeing_digits(&self, other: &Self) -> u32 {
        let cap = bits_to_digits(self.prec().max(other.prec()));
        let rel = self.rel_diff(other);
        if rel == 0.0 {
            cap
        } else if rel >= 1.0 {
            0
        } else {
            ((-rel.log10()).floor() as u32).min(cap)
        }
    }
}

/// A value together with the number of decimal digits verified stable under
/// recomputation with more guard digits.
#[derive(Debug, Clone)]
pub struct Certified<T> {
    pub value: T,
    pub digits: u32,
    pub context: PrecisionContext,
}

/// Evaluates `op` at `ctx` and at `ctx` with ten more guard digits. If the
/// two disagree within `ctx.digits()`, the guard is doubled and the pair
/// recomputed, up to the context's ceiling.
pub fn certify<T, F>(ctx: &PrecisionContext, op: F) -> Result<Certified<T>>
where
    T: Agreement,
    F: Fn(&PrecisionContext) -> Result<T>,
{
    let mut current = *ctx;
    loop {
        let a = op(&current)?;
        let check = current.raised(10);
        let b = op(&check)?;
        let digits = a.agreeing_digits(&b);
        if digits >= ctx.digits() {
            return Ok(Certified {
                value: b,
                digits,
                context: check,
            });
        }
        let next_guard = (current.guard() * 2).max(current.guard() + 10);
        if current.digits() + next_guard + 10 > current.max_digits() {
            return Err(Error::Uncertified(format!(
                "only {digits} of {} digits stable at guard {} (ceiling {} digits)",
                ctx.digits(),
                current.guard(),
                current.max_digits()
            )));
        }
        current = current.with_guard(next_guard);
    }
}
