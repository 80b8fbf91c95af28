//! Directed rounding without touching the FPU control word.
//!
//! Every primitive computes the round-to-nearest result and then recovers the
//! sign of the rounding error exactly (TwoSum for addition, an FMA residual
//! for multiplication, division and square root). The result is moved one
//! ulp outward only when the rounding error points the wrong way, so the
//! returned bound is the correctly directed rounding of the exact value.
//!
//! Near the underflow threshold the residuals are no longer exact; there the
//! result is nudged unconditionally.

/// Tag recorded in certificates describing how outward rounding was obtained.
pub const ROUNDING_STRATEGY: &str = "eft-directed: round-to-nearest + exact error sign (TwoSum/FMA residual), one-ulp outward step when needed";

const TINY: f64 = 1e-290;

#[inline]
fn two_sum_err(a: f64, b: f64, s: f64) -> f64 {
    let bb = s - a;
    (a - (s - bb)) + (b - bb)
}

#[inline]
pub fn add_down(a: f64, b: f64) -> f64 {
    let s = a + b;
    if !s.is_finite() {
        return s;
    }
    if two_sum_err(a, b, s) < 0.0 {
        s.next_down()
    } else {
        s
    }
}

#[inline]
pub fn add_up(a: f64, b: f64) -> f64 {
    let s = a + b;
    if !s.is_finite() {
        return s;
    }
    if two_sum_err(a, b, s) > 0.0 {
        s.next_up()
    } else {
        s
    }
}

#[inline]
pub fn sub_down(a: f64, b: f64) -> f64 {
    add_down(a, -b)
}

#[inline]
pub fn sub_up(a: f64, b: f64) -> f64 {
    add_up(a, -b)
}

#[inline]
fn mul_err(a: f64, b: f64, p: f64) -> Option<f64> {
    if a == 0.0 || b == 0.0 {
        return Some(0.0);
    }
    if p.abs() < TINY {
        return None;
    }
    Some(a.mul_add(b, -p))
}

#[inline]
pub fn mul_down(a: f64, b: f64) -> f64 {
    let p = a * b;
    if !p.is_finite() {
        return p;
    }
    match mul_err(a, b, p) {
        Some(e) if e >= 0.0 => p,
        _ => p.next_down(),
    }
}

#[inline]
pub fn mul_up(a: f64, b: f64) -> f64 {
    let p = a * b;
    if !p.is_finite() {
        return p;
    }
    match mul_err(a, b, p) {
        Some(e) if e <= 0.0 => p,
        _ => p.next_up(),
    }
}

/// Sign of `a/b - q` where `q` is the rounded quotient; `None` when inexact detection is unsafe.
#[inline]
fn div_err_sign(a: f64, b: f64, q: f64) -> Option<f64> {
    if a == 0.0 {
        return Some(0.0);
    }
    if q.abs() < TINY || a.abs() < TINY {
        return None;
    }
    let r = (-q).mul_add(b, a);
    Some(if b > 0.0 { r } else { -r })
}

#[inline]
pub fn div_down(a: f64, b: f64) -> f64 {
    let q = a / b;
    if !q.is_finite() {
        return q;
    }
    match div_err_sign(a, b, q) {
        Some(e) if e >= 0.0 => q,
        _ => q.next_down(),
    }
}

#[inline]
pub fn div_up(a: f64, b: f64) -> f64 {
    let q = a / b;
    if !q.is_finite() {
        return q;
    }
    match div_err_sign(a, b, q) {
        Some(e) if e <= 0.0 => q,
        _ => q.next_up(),
    }
}

#[inline]
pub fn sqrt_down(a: f64) -> f64 {
    let r = a.sqrt();
    if a == 0.0 || !r.is_finite() {
        return r;
    }
    if a < TINY {
        return r.next_down().max(0.0);
    }
    // r*r - a > 0 means r overshoots sqrt(a)
    if r.mul_add(r, -a) > 0.0 {
        r.next_down()
    } else {
        r
    }
}

#[inline]
pub fn sqrt_up(a: f64) -> f64 {
    let r = a.sqrt();
    if a == 0.0 || !r.is_finite() {
        return r;
    }
    if a < TINY {
        return r.next_up();
    }
    if r.mul_add(r, -a) < 0.0 {
        r.next_up()
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn exact(x: f64) -> BigRational {
        BigRational::from_float(x).unwrap()
    }

    #[test]
    fn exact_results_are_not_widened() {
        assert_eq!(add_down(1.0, 3.0), 4.0);
        assert_eq!(add_up(1.0, 3.0), 4.0);
        assert_eq!(mul_down(-3.0, 2.0), -6.0);
        assert_eq!(mul_up(-3.0, 2.0), -6.0);
        assert_eq!(sqrt_down(9.0), 3.0);
        assert_eq!(sqrt_up(9.0), 3.0);
        assert_eq!(div_down(1.0, 4.0), 0.25);
    }

    #[test]
    fn inexact_results_bracket() {
        assert!(add_down(0.1, 0.2) < add_up(0.1, 0.2));
        assert_eq!(add_up(0.1, 0.2), add_down(0.1, 0.2).next_up());
        assert!(div_down(1.0, 3.0) < div_up(1.0, 3.0));
        assert!(sqrt_down(2.0) < sqrt_up(2.0));
    }

    proptest! {
        #[test]
        fn directed_ops_bracket_exact_rationals(a in -1e6f64..1e6, b in -1e6f64..1e6) {
            let (ea, eb) = (exact(a), exact(b));
            let s = &ea + &eb;
            prop_assert!(exact(add_down(a, b)) <= s && s <= exact(add_up(a, b)));
            let p = &ea * &eb;
            prop_assert!(exact(mul_down(a, b)) <= p && p <= exact(mul_up(a, b)));
            if b != 0.0 {
                let q = &ea / &eb;
                prop_assert!(exact(div_down(a, b)) <= q && q <= exact(div_up(a, b)));
            }
        }

        #[test]
        fn directed_sqrt_brackets(a in 0f64..1e9) {
            let lo = exact(sqrt_down(a));
            let hi = exact(sqrt_up(a));
            let ea = exact(a);
            prop_assert!(&lo * &lo <= ea);
            prop_assert!(&hi * &hi >= ea);
        }
    }
}
