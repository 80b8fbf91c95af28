//! Certified minimization of a one-variable function by interval bisection.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Partial, Result};
use crate::interval::Interval;

/// A function with an interval extension and, optionally, one for its derivative.
pub trait IntervalFn: Sync {
    fn eval(&self, x: Interval) -> Interval;

    fn deriv(&self, _x: Interval) -> Option<Interval> {
        None
    }
}

impl<F: Fn(Interval) -> Interval + Sync> IntervalFn for F {
    fn eval(&self, x: Interval) -> Interval {
        self(x)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Min1d {
    /// Contains every global minimizer over the domain.
    pub argmin: Interval,
    /// Contains the global minimum value.
    pub min: Interval,
    pub evaluations: u64,
    pub rounds: u32,
}

/// State of a bisection that ran out of budget.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PartialMin1d {
    pub argmin: Interval,
    pub min_lower: f64,
    pub min_upper: f64,
    pub evaluations: u64,
}

pub const DEFAULT_MAX_EVALUATIONS: u64 = 2_000_000;

pub fn certify_min_1d(f: &dyn IntervalFn, domain: Interval, tol: f64) -> Result<Min1d> {
    certify_min_1d_with(f, domain, tol, DEFAULT_MAX_EVALUATIONS)
}

struct Piece {
    x: Interval,
    lower: f64,
}

/// Keeps subintervals whose lower bound does not exceed the best sampled
/// value, and drops those on which a derivative enclosure rules out a
/// minimizer. Stops once both enclosures are at most `tol` wide.
pub fn certify_min_1d_with(f: &dyn IntervalFn, domain: Interval, tol: f64, max_evaluations: u64) -> Result<Min1d> {
    if !domain.is_finite() {
        return Err(Error::DomainError("domain must be finite".into()));
    }
    if !(tol > 0.0) {
        return Err(Error::DomainError(format!("tolerance must be positive, got {tol}")));
    }
    let mut evals = 0u64;
    let mut upper = f64::INFINITY;
    let mut work = vec![domain];
    let mut rounds = 0;
    loop {
        rounds += 1;
        let mut pieces = Vec::with_capacity(work.len());
        for x in work.drain(..) {
            let (lower, up, x) = bound_piece(f, x, domain, &mut evals);
            upper = upper.min(up);
            if let Some(x) = x {
                pieces.push(Piece { x, lower });
            }
        }
        pieces.retain(|p| p.lower <= upper);
        if pieces.is_empty() {
            return Err(Error::CertificationFailed("every subinterval was discarded; the enclosure is unsound".into()));
        }
        let argmin = pieces.iter().skip(1).fold(pieces[0].x, |h, p| h.hull(p.x));
        let min_lower = pieces.iter().map(|p| p.lower).fold(f64::INFINITY, f64::min);
        if argmin.width() <= tol && upper - min_lower <= tol {
            return Ok(Min1d {
                argmin,
                min: Interval::new(min_lower, upper)?,
                evaluations: evals,
                rounds,
            });
        }
        if evals >= max_evaluations {
            return Err(Error::BudgetExceeded(Box::new(Partial::Bisection(PartialMin1d {
                argmin,
                min_lower,
                min_upper: upper,
                evaluations: evals,
            }))));
        }
        let mut progressed = false;
        for p in pieces {
            let m = p.x.mid();
            if m > p.x.lo() && m < p.x.hi() {
                work.push(Interval::new(p.x.lo(), m)?);
                work.push(Interval::new(m, p.x.hi())?);
                progressed = true;
            } else {
                work.push(p.x);
            }
        }
        if !progressed {
            return Err(Error::CertificationFailed(format!(
                "cannot narrow below floating-point resolution: argmin {argmin}, min in [{min_lower}, {upper}]"
            )));
        }
    }
}

/// Lower bound over `x`, an upper bound on the minimum from a sample, and
/// the part of `x` that may still hold a minimizer.
fn bound_piece(f: &dyn IntervalFn, x: Interval, domain: Interval, evals: &mut u64) -> (f64, f64, Option<Interval>) {
    let fx = f.eval(x);
    let fm = f.eval(Interval::point(x.mid()));
    *evals += 2;
    let mut lower = if fx.lo().is_nan() { f64::NEG_INFINITY } else { fx.lo() };
    let mut up = fm.hi();
    let Some(d) = f.deriv(x).filter(|d| d.is_finite()) else {
        return (lower, nan_to_inf(up), Some(x));
    };
    // monotone on x: only a domain endpoint inside x can be a minimizer
    if d.lo() > 0.0 || d.hi() < 0.0 {
        let end = if d.lo() > 0.0 { x.lo() } else { x.hi() };
        let fe = f.eval(Interval::point(end));
        *evals += 1;
        up = up.min(fe.hi());
        let at_edge = end == domain.lo() || end == domain.hi();
        let keep = at_edge.then(|| Interval::point(end));
        return (fe.lo(), nan_to_inf(up), keep);
    }
    let c = x.mid();
    let centred = fm + d * (x - c);
    if centred.lo() > lower {
        lower = centred.lo();
    }
    (lower, nan_to_inf(up), Some(x))
}

fn nan_to_inf(x: f64) -> f64 {
    if x.is_nan() {
        f64::INFINITY
    } else {
        x
    }
}

fn sqrt3() -> Interval {
    Interval::point(3.0).sqrt_nonneg()
}

/// `54 sqrt 3 (1 + r^2)^(3/2) / r`, the ratio of the five-vertex double pyramid.
pub struct Strange5Ratio;

impl IntervalFn for Strange5Ratio {
    fn eval(&self, r: Interval) -> Interval {
        let q = r.sqr() + 1.0;
        sqrt3() * 54.0 * q * q.sqrt_nonneg() / r
    }

    fn deriv(&self, r: Interval) -> Option<Interval> {
        let r2 = r.sqr();
        Some(sqrt3() * 54.0 * (r2 + 1.0).sqrt_nonneg() * (r2 * 2.0 - 1.0) / r2)
    }
}

/// `(pi + s)^3 / s`, whose square root times 18 is the Schwarz-rounding ratio.
pub struct SchwarzF;

impl IntervalFn for SchwarzF {
    fn eval(&self, s: Interval) -> Interval {
        (Interval::PI + s).powi(3) / s
    }

    fn deriv(&self, s: Interval) -> Option<Interval> {
        Some((s + Interval::PI).sqr() * (s * 2.0 - Interval::PI) / s.sqr())
    }
}

/// `36 t (2 + 1/t^2)^(3/2)`: the octahedral Jensen bound at half-axes `(t, 1, 1)`.
pub struct JensenSymmetric;

impl IntervalFn for JensenSymmetric {
    fn eval(&self, t: Interval) -> Interval {
        let q = Interval::ONE / t.sqr() + 2.0;
        t * 36.0 * q * q.sqrt_nonneg()
    }

    fn deriv(&self, t: Interval) -> Option<Interval> {
        let u = Interval::ONE / t.sqr();
        Some((u + 2.0).sqrt_nonneg() * 72.0 * (Interval::ONE - u))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_without_derivative() {
        let f = |x: Interval| (x - 0.25).sqr() + 1.0;
        let m = certify_min_1d(&f, Interval::new(-1.0, 2.0).unwrap(), 1e-4).unwrap();
        assert!(m.argmin.contains(0.25) && m.min.contains(1.0));
        assert!(m.argmin.width() <= 1e-4 && m.min.width() <= 1e-4);
    }

    #[test]
    fn monotone_function_minimum_at_endpoint() {
        struct Exp;
        impl IntervalFn for Exp {
            fn eval(&self, x: Interval) -> Interval {
                x * 3.0 + 1.0
            }
            fn deriv(&self, _x: Interval) -> Option<Interval> {
                Some(Interval::point(3.0))
            }
        }
        let m = certify_min_1d(&Exp, Interval::new(0.5, 4.0).unwrap(), 1e-9).unwrap();
        assert_eq!(m.argmin, Interval::point(0.5));
        assert!(m.min.contains(2.5));
    }
}
