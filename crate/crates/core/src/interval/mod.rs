//! Outward-rounded interval arithmetic over `f64`.
//!
//! Operator impls never fail; an overflowing bound becomes infinite and is
//! rejected by [`Interval::checked`], which every public evaluator calls
//! before returning. See [`round`] for the rounding strategy.

mod box5;
pub mod closed_form;
pub mod jet;
pub mod round;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
pub use box5::{Box5, Var};
pub use closed_form::{eval_g, eval_s, eval_v, grad_g, grad_v};
pub use jet::{freeze_mask, g_jet, g_jet_frozen, Jet};
pub use round::ROUNDING_STRATEGY;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "[f64; 2]", try_from = "[f64; 2]")]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl From<Interval> for [f64; 2] {
    fn from(i: Interval) -> Self {
        [i.lo, i.hi]
    }
}

impl TryFrom<[f64; 2]> for Interval {
    type Error = Error;
    fn try_from([lo, hi]: [f64; 2]) -> Result<Self> {
        Interval::new(lo, hi)
    }
}

impl Interval {
    /// Enclosure of pi: `f64::consts::PI` is the correctly rounded value and lies below pi.
    pub const PI: Interval = Interval {
        lo: std::f64::consts::PI,
        hi: 3.1415926535897936,
    };
    pub const ZERO: Interval = Interval { lo: 0.0, hi: 0.0 };
    pub const ONE: Interval = Interval { lo: 1.0, hi: 1.0 };

    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() {
            return Err(Error::DomainError("NaN interval bound".into()));
        }
        if !lo.is_finite() || !hi.is_finite() {
            return Err(Error::Overflow);
        }
        if lo > hi {
            return Err(Error::DomainError(format!("empty interval [{lo}, {hi}]")));
        }
        Ok(Interval { lo, hi })
    }

    /// Interval without validity checks; for internal use on bounds known to be ordered.
    #[inline]
    pub(crate) const fn raw(lo: f64, hi: f64) -> Self {
        Interval { lo, hi }
    }

    #[inline]
    pub fn point(x: f64) -> Self {
        Interval { lo: x, hi: x }
    }

    /// Tight enclosure of the rational `num/den`.
    pub fn ratio(num: i64, den: i64) -> Self {
        let (n, d) = (num as f64, den as f64);
        debug_assert!(n as i64 == num && d as i64 == den, "integers must be exact in f64");
        Interval::point(n) / Interval::point(d)
    }

    #[inline]
    pub fn lo(self) -> f64 {
        self.lo
    }

    #[inline]
    pub fn hi(self) -> f64 {
        self.hi
    }

    #[inline]
    pub fn width(self) -> f64 {
        self.hi - self.lo
    }

    #[inline]
    pub fn mid(self) -> f64 {
        0.5 * self.lo + 0.5 * self.hi
    }

    /// Largest absolute value in the interval.
    #[inline]
    pub fn mag(self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    #[inline]
    pub fn contains(self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    #[inline]
    pub fn contains_interval(self, other: Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    #[inline]
    pub fn hull(self, other: Interval) -> Interval {
        Interval::raw(self.lo.min(other.lo), self.hi.max(other.hi))
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    /// Rejects intervals whose bounds overflowed during evaluation.
    #[inline]
    pub fn checked(self) -> Result<Self> {
        if self.lo.is_nan() || self.hi.is_nan() {
            Err(Error::DomainError("NaN produced during interval evaluation".into()))
        } else if self.is_finite() {
            Ok(self)
        } else {
            Err(Error::Overflow)
        }
    }

    #[inline]
    pub fn certainly_pos(self) -> bool {
        self.lo > 0.0
    }

    #[inline]
    pub fn certainly_neg(self) -> bool {
        self.hi < 0.0
    }

    /// `x^2` with the even-power image (never negative).
    #[inline]
    pub fn sqr(self) -> Interval {
        use round::{mul_down, mul_up};
        if self.lo >= 0.0 {
            Interval::raw(mul_down(self.lo, self.lo), mul_up(self.hi, self.hi))
        } else if self.hi <= 0.0 {
            Interval::raw(mul_down(self.hi, self.hi), mul_up(self.lo, self.lo))
        } else {
            let m = self.mag();
            Interval::raw(0.0, mul_up(m, m))
        }
    }

    /// Integer power by repeated multiplication with even-power reflection.
    pub fn powi(self, n: u32) -> Interval {
        match n {
            0 => Interval::ONE,
            1 => self,
            _ if n % 2 == 0 => self.sqr().powi(n / 2),
            // odd powers are monotone
            _ => Interval::raw(Self::pow_mono(self.lo, n, false), Self::pow_mono(self.hi, n, true)),
        }
    }

    fn pow_mono(x: f64, n: u32, up: bool) -> f64 {
        let p = Interval::point(x);
        let mut acc = Interval::ONE;
        for _ in 0..n {
            acc = acc * p;
        }
        if up {
            acc.hi
        } else {
            acc.lo
        }
    }

    /// Square root; the argument must be certainly nonnegative.
    pub fn sqrt(self) -> Result<Interval> {
        if self.lo < 0.0 {
            return Err(Error::DomainError(format!("sqrt of interval with negative part [{}, {}]", self.lo, self.hi)));
        }
        Ok(self.sqrt_nonneg())
    }

    /// Square root assuming `lo >= 0`; a tiny negative `lo` is clamped to zero.
    #[inline]
    pub(crate) fn sqrt_nonneg(self) -> Interval {
        Interval::raw(round::sqrt_down(self.lo.max(0.0)), round::sqrt_up(self.hi))
    }

    /// Multiplies by an exact scalar.
    #[inline]
    pub fn scale(self, k: f64) -> Interval {
        self * Interval::point(k)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:.17e}, {:.17e}]", self.lo, self.hi)
    }
}

impl Add for Interval {
    type Output = Interval;
    #[inline]
    fn add(self, rhs: Interval) -> Interval {
        Interval::raw(round::add_down(self.lo, rhs.lo), round::add_up(self.hi, rhs.hi))
    }
}

impl Sub for Interval {
    type Output = Interval;
    #[inline]
    fn sub(self, rhs: Interval) -> Interval {
        Interval::raw(round::sub_down(self.lo, rhs.hi), round::sub_up(self.hi, rhs.lo))
    }
}

impl Neg for Interval {
    type Output = Interval;
    #[inline]
    fn neg(self) -> Interval {
        Interval::raw(-self.hi, -self.lo)
    }
}

impl Mul for Interval {
    type Output = Interval;
    #[inline]
    fn mul(self, rhs: Interval) -> Interval {
        use round::{mul_down, mul_up};
        let (a, b, c, d) = (self.lo, self.hi, rhs.lo, rhs.hi);
        if a >= 0.0 && c >= 0.0 {
            return Interval::raw(mul_down(a, c), mul_up(b, d));
        }
        let lo = mul_down(a, c).min(mul_down(a, d)).min(mul_down(b, c)).min(mul_down(b, d));
        let hi = mul_up(a, c).max(mul_up(a, d)).max(mul_up(b, c)).max(mul_up(b, d));
        Interval::raw(lo, hi)
    }
}

impl Div for Interval {
    type Output = Interval;
    /// Division by an interval containing zero yields the (non-finite) whole line.
    #[inline]
    fn div(self, rhs: Interval) -> Interval {
        use round::{div_down, div_up};
        if rhs.lo <= 0.0 && rhs.hi >= 0.0 {
            return Interval::raw(f64::NEG_INFINITY, f64::INFINITY);
        }
        let (a, b, c, d) = (self.lo, self.hi, rhs.lo, rhs.hi);
        let lo = div_down(a, c).min(div_down(a, d)).min(div_down(b, c)).min(div_down(b, d));
        let hi = div_up(a, c).max(div_up(a, d)).max(div_up(b, c)).max(div_up(b, d));
        Interval::raw(lo, hi)
    }
}

impl Add<f64> for Interval {
    type Output = Interval;
    #[inline]
    fn add(self, rhs: f64) -> Interval {
        self + Interval::point(rhs)
    }
}

impl Sub<f64> for Interval {
    type Output = Interval;
    #[inline]
    fn sub(self, rhs: f64) -> Interval {
        self - Interval::point(rhs)
    }
}

impl Mul<f64> for Interval {
    type Output = Interval;
    #[inline]
    fn mul(self, rhs: f64) -> Interval {
        self * Interval::point(rhs)
    }
}

/// Checked addition (`iadd`).
pub fn iadd(a: Interval, b: Interval) -> Result<Interval> {
    (a + b).checked()
}

/// Checked subtraction (`isub`).
pub fn isub(a: Interval, b: Interval) -> Result<Interval> {
    (a - b).checked()
}

/// Checked multiplication (`imul`).
pub fn imul(a: Interval, b: Interval) -> Result<Interval> {
    (a * b).checked()
}

/// Checked square root (`isqrt`).
pub fn isqrt(a: Interval) -> Result<Interval> {
    a.sqrt()?.checked()
}

/// Checked integer power (`ipow`).
pub fn ipow(a: Interval, n: u32) -> Result<Interval> {
    a.powi(n).checked()
}
