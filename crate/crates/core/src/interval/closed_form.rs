//! Interval extensions of the strange-polytope surface area `S`, volume `V`
//! and the certified quantity `G = S^3 - 188 V^2`, plus their gradients.

use super::{Box5, Interval};
use crate::error::Result;

/// Coefficient of `V^2` in `G`.
pub const G_VOLUME_WEIGHT: f64 = 188.0;

struct Parts {
    sa: Interval,
    sb: Interval,
    sc: Interval,
    d: Interval,
    area: Interval,
}

#[inline]
fn parts(b: &Box5) -> Parts {
    let [x1, x2, x3, y1, y2] = b.0;
    let d = x2 * y1 - x1 * y2;
    let a = x1.sqr() + y1.sqr();
    let bb = (x1 - x2).sqr() + (y1 - y2).sqr() + d.sqr();
    let c = y2.sqr() + (x3 - x2).sqr() + (x3 * y2).sqr();
    let area = x2 * y1 + (x3 - x1) * y2;
    Parts {
        sa: a.sqrt_nonneg(),
        sb: bb.sqrt_nonneg(),
        sc: c.sqrt_nonneg(),
        d,
        area,
    }
}

#[inline]
fn s_of(p: &Parts) -> Interval {
    (p.sa + p.sb + p.sc) * 2.0
}

#[inline]
fn v_of(area: Interval) -> Interval {
    (area * 2.0) / Interval::point(3.0)
}

#[inline]
fn g_of(s: Interval, v: Interval) -> Interval {
    s.powi(3) - v.sqr() * G_VOLUME_WEIGHT
}

/// Enclosure of the base area `x2 y1 - x1 y2 + x3 y2`.
pub fn eval_area(b: &Box5) -> Result<Interval> {
    (b.x2() * b.y1() + (b.x3() - b.x1()) * b.y2()).checked()
}

/// Enclosure of the closed-form surface area over the box.
pub fn eval_s(b: &Box5) -> Result<Interval> {
    s_of(&parts(b)).checked()
}

/// Enclosure of the closed-form volume `2/3 |Q|` over the box.
pub fn eval_v(b: &Box5) -> Result<Interval> {
    v_of(parts(b).area).checked()
}

/// Enclosure of `S^3 - 188 V^2` over the box.
pub fn eval_g(b: &Box5) -> Result<Interval> {
    let p = parts(b);
    g_of(s_of(&p), v_of(p.area)).checked()
}

/// Gradient of `V`; exact up to rounding of the factor 2/3.
pub fn grad_v(b: &Box5) -> [Interval; 5] {
    let [x1, x2, x3, y1, y2] = b.0;
    let k = Interval::ratio(2, 3);
    [-y2 * k, y1 * k, y2 * k, x2 * k, (x3 - x1) * k]
}

/// Everything the certifier needs from one pass over a box.
#[derive(Clone, Copy, Debug)]
pub struct GEval {
    pub s: Interval,
    pub v: Interval,
    pub g: Interval,
    pub area: Interval,
    /// Gradient of G; components are non-finite where a square root touches zero.
    pub grad_g: [Interval; 5],
}

/// Values and gradient of `G` over the box.
pub fn grad_g(b: &Box5) -> GEval {
    let [x1, x2, x3, y1, y2] = b.0;
    let p = parts(b);
    let s = s_of(&p);
    let v = v_of(p.area);
    let g = g_of(s, v);

    let dx12 = x1 - x2;
    let dy12 = y1 - y2;
    let dx32 = x3 - x2;
    let (sa, sb, sc, d) = (p.sa, p.sb, p.sc, p.d);
    let ds = [
        (x1 / sa + (dx12 - d * y2) / sb) * 2.0,
        ((d * y1 - dx12) / sb - dx32 / sc) * 2.0,
        ((dx32 + x3 * y2.sqr()) / sc) * 2.0,
        (y1 / sa + (dy12 + d * x2) / sb) * 2.0,
        ((-dy12 - d * x1) / sb + (y2 + x3.sqr() * y2) / sc) * 2.0,
    ];
    let dv = grad_v(b);
    let s2 = s.sqr() * 3.0;
    let v2 = v * (2.0 * G_VOLUME_WEIGHT);
    let grad = std::array::from_fn(|k| s2 * ds[k] - v2 * dv[k]);
    GEval {
        s,
        v,
        g,
        area: p.area,
        grad_g: grad,
    }
}
