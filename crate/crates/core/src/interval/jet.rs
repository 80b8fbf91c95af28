//! Second-order forward-mode differentiation over intervals in five
//! variables: value, gradient and (upper-triangular) Hessian enclosures.

use super::{Box5, Interval};

const N: usize = 5;
const H: usize = 15;

#[inline]
const fn idx(i: usize, j: usize) -> usize {
    // row-major upper triangle, i <= j
    i * N - i * (i + 1) / 2 + j
}

#[derive(Clone, Copy, Debug)]
pub struct Jet {
    pub v: Interval,
    pub g: [Interval; N],
    h: [Interval; H],
}

impl Jet {
    pub fn constant(c: Interval) -> Jet {
        Jet {
            v: c,
            g: [Interval::ZERO; N],
            h: [Interval::ZERO; H],
        }
    }

    pub fn var(k: usize, x: Interval) -> Jet {
        let mut j = Jet::constant(x);
        j.g[k] = Interval::ONE;
        j
    }

    /// The five coordinate jets of a box.
    pub fn vars(b: &Box5) -> [Jet; N] {
        std::array::from_fn(|k| Jet::var(k, b.0[k]))
    }

    /// Hessian entry (symmetric access).
    pub fn hess(&self, i: usize, j: usize) -> Interval {
        if i <= j {
            self.h[idx(i, j)]
        } else {
            self.h[idx(j, i)]
        }
    }

    pub fn is_finite(&self) -> bool {
        self.v.is_finite() && self.g.iter().all(|x| x.is_finite()) && self.h.iter().all(|x| x.is_finite())
    }

    pub fn add(&self, o: &Jet) -> Jet {
        Jet {
            v: self.v + o.v,
            g: std::array::from_fn(|k| self.g[k] + o.g[k]),
            h: std::array::from_fn(|k| self.h[k] + o.h[k]),
        }
    }

    pub fn sub(&self, o: &Jet) -> Jet {
        Jet {
            v: self.v - o.v,
            g: std::array::from_fn(|k| self.g[k] - o.g[k]),
            h: std::array::from_fn(|k| self.h[k] - o.h[k]),
        }
    }

    pub fn scale(&self, c: Interval) -> Jet {
        Jet {
            v: self.v * c,
            g: self.g.map(|x| x * c),
            h: self.h.map(|x| x * c),
        }
    }

    pub fn mul(&self, o: &Jet) -> Jet {
        let mut h = [Interval::ZERO; H];
        for i in 0..N {
            for j in i..N {
                let k = idx(i, j);
                h[k] = self.h[k] * o.v + self.v * o.h[k] + self.g[i] * o.g[j] + self.g[j] * o.g[i];
            }
        }
        Jet {
            v: self.v * o.v,
            g: std::array::from_fn(|k| self.g[k] * o.v + self.v * o.g[k]),
            h,
        }
    }

    /// Chain rule for `f(self)` given enclosures of `f`, `f'` and `f''` at `self.v`.
    fn compose(&self, f: Interval, df: Interval, d2f: Interval) -> Jet {
        let mut h = [Interval::ZERO; H];
        for i in 0..N {
            for j in i..N {
                let k = idx(i, j);
                let gg = if i == j { self.g[i].sqr() } else { self.g[i] * self.g[j] };
                h[k] = df * self.h[k] + d2f * gg;
            }
        }
        Jet {
            v: f,
            g: self.g.map(|x| df * x),
            h,
        }
    }

    pub fn sqr(&self) -> Jet {
        self.compose(self.v.sqr(), self.v * 2.0, Interval::point(2.0))
    }

    pub fn cube(&self) -> Jet {
        self.compose(self.v.powi(3), self.v.sqr() * 3.0, self.v * 6.0)
    }

    /// Square root; derivatives are unbounded where the argument reaches zero.
    pub fn sqrt(&self) -> Jet {
        let r = self.v.sqrt_nonneg();
        let d = Interval::ONE / (r * 2.0);
        let d2 = -(Interval::ONE / (r.powi(3) * 4.0));
        self.compose(r, d, d2)
    }

    /// Lower bound of the second-order expansion about the point `c` over
    /// the box, where `self` is the jet over the box and `at_c` the jet at `c`:
    /// `f(x) = f(c) + f'(c)(x - c) + 1/2 (x - c)' f''(xi) (x - c)`.
    pub fn taylor_lower(&self, at_c: &Jet, b: &Box5, c: &[f64; N]) -> f64 {
        let d: [Interval; N] = std::array::from_fn(|k| b.0[k] - c[k]);
        let mut acc = at_c.v;
        for k in 0..N {
            acc = acc + at_c.g[k] * d[k];
        }
        let mut quad = Interval::ZERO;
        for i in 0..N {
            quad = quad + self.h[idx(i, i)] * d[i].sqr();
            for j in i + 1..N {
                quad = quad + self.h[idx(i, j)] * (d[i] * d[j]) * 2.0;
            }
        }
        let lo = (acc + quad * 0.5).lo();
        if lo.is_nan() {
            f64::NEG_INFINITY
        } else {
            lo
        }
    }
}

/// A square-root term of `S` is frozen on a box when its argument's lower
/// bound is at most this fraction of its upper bound.
pub const FREEZE_RATIO: f64 = 1.0 / 16.0;

/// Which of the three square-root terms of `S` to freeze on the box.
pub fn freeze_mask(b: &Box5) -> u8 {
    let [x1, x2, x3, y1, y2] = b.0;
    let d = x2 * y1 - x1 * y2;
    let args = [
        x1.sqr() + y1.sqr(),
        (x1 - x2).sqr() + (y1 - y2).sqr() + d.sqr(),
        y2.sqr() + (x3 - x2).sqr() + (x3 * y2).sqr(),
    ];
    let mut m = 0;
    for (k, a) in args.iter().enumerate() {
        if a.lo() <= a.hi() * FREEZE_RATIO {
            m |= 1 << k;
        }
    }
    m
}

/// Jet of `G = S^3 - 188 V^2` over a box.
pub fn g_jet(b: &Box5) -> Jet {
    g_jet_frozen(b, 0, b)
}

/// Jet of a minorant of `G` on `outer`: each square-root term of `S`
/// selected by `mask` is replaced by the constant lower bound of that term
/// over `outer`. `S^3` is increasing in every term, so the result is at most
/// `G` at every point of `outer`. `b` is the box the jet is evaluated on
/// (`outer` itself or a point inside it).
pub fn g_jet_frozen(b: &Box5, mask: u8, outer: &Box5) -> Jet {
    let [x1, x2, x3, y1, y2] = Jet::vars(b);
    let d = x2.mul(&y1).sub(&x1.mul(&y2));
    let a = x1.sqr().add(&y1.sqr());
    let bb = x1.sub(&x2).sqr().add(&y1.sub(&y2).sqr()).add(&d.sqr());
    let c = y2.sqr().add(&x3.sub(&x2).sqr()).add(&x3.mul(&y2).sqr());
    let frozen = |k: usize, arg: Jet| -> Jet {
        if mask & (1 << k) == 0 {
            return arg.sqrt();
        }
        let [x1, x2, x3, y1, y2] = outer.0;
        let q = match k {
            0 => x1.sqr() + y1.sqr(),
            1 => (x1 - x2).sqr() + (y1 - y2).sqr() + (x2 * y1 - x1 * y2).sqr(),
            _ => y2.sqr() + (x3 - x2).sqr() + (x3 * y2).sqr(),
        };
        Jet::constant(Interval::point(q.sqrt_nonneg().lo()))
    };
    let s = frozen(0, a).add(&frozen(1, bb)).add(&frozen(2, c)).scale(Interval::point(2.0));
    let area = x2.mul(&y1).add(&x3.sub(&x1).mul(&y2));
    let v = area.scale(Interval::ratio(2, 3));
    s.cube().sub(&v.sqr().scale(Interval::point(super::closed_form::G_VOLUME_WEIGHT)))
}
