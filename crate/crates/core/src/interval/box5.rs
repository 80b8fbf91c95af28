use serde::{Deserialize, Serialize};

use super::Interval;
use crate::error::{Error, Result};

/// Coordinates of the strange-polytope parameter space, in storage order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Var {
    X1 = 0,
    X2 = 1,
    X3 = 2,
    Y1 = 3,
    Y2 = 4,
}

impl Var {
    pub const ALL: [Var; 5] = [Var::X1, Var::X2, Var::X3, Var::Y1, Var::Y2];

    pub fn name(self) -> &'static str {
        match self {
            Var::X1 => "x1",
            Var::X2 => "x2",
            Var::X3 => "x3",
            Var::Y1 => "y1",
            Var::Y2 => "y2",
        }
    }
}

/// A box in `(x1, x2, x3, y1, y2)` space.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Box5(pub [Interval; 5]);

impl Box5 {
    pub fn new(x1: Interval, x2: Interval, x3: Interval, y1: Interval, y2: Interval) -> Self {
        Box5([x1, x2, x3, y1, y2])
    }

    /// The cube `[lo, hi]^5`.
    pub fn cube(lo: f64, hi: f64) -> Result<Self> {
        let i = Interval::new(lo, hi)?;
        Ok(Box5([i; 5]))
    }

    pub fn point(p: [f64; 5]) -> Self {
        Box5(p.map(Interval::point))
    }

    pub fn from_bounds(b: [[f64; 2]; 5]) -> Result<Self> {
        let mut out = [Interval::ZERO; 5];
        for (o, [lo, hi]) in out.iter_mut().zip(b) {
            *o = Interval::new(lo, hi)?;
        }
        Ok(Box5(out))
    }

    /// Checks the ambient bound `0 <= lo <= hi <= coord_max` on every coordinate.
    pub fn within(&self, coord_max: f64) -> Result<()> {
        for (v, i) in Var::ALL.iter().zip(self.0) {
            if i.lo() < 0.0 || i.hi() > coord_max {
                return Err(Error::DomainError(format!(
                    "{} range {} leaves [0, {coord_max}]",
                    v.name(),
                    i
                )));
            }
        }
        Ok(())
    }

    #[inline]
    pub fn get(&self, v: Var) -> Interval {
        self.0[v as usize]
    }

    pub fn x1(&self) -> Interval {
        self.0[0]
    }
    pub fn x2(&self) -> Interval {
        self.0[1]
    }
    pub fn x3(&self) -> Interval {
        self.0[2]
    }
    pub fn y1(&self) -> Interval {
        self.0[3]
    }
    pub fn y2(&self) -> Interval {
        self.0[4]
    }

    pub fn mid(&self) -> [f64; 5] {
        self.0.map(Interval::mid)
    }

    pub fn widths(&self) -> [f64; 5] {
        self.0.map(Interval::width)
    }

    pub fn max_width(&self) -> f64 {
        self.widths().into_iter().fold(0.0, f64::max)
    }

    pub fn volume(&self) -> f64 {
        self.widths().iter().product()
    }

    pub fn contains(&self, p: &[f64; 5]) -> bool {
        self.0.iter().zip(p).all(|(i, &x)| i.contains(x))
    }

    pub fn contains_box(&self, other: &Box5) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a.contains_interval(*b))
    }

    /// Splits at the midpoint of coordinate `k`; the midpoint belongs to both halves.
    pub fn split(&self, k: usize) -> (Box5, Box5) {
        let i = self.0[k];
        let m = i.mid();
        let mut a = *self;
        let mut b = *self;
        a.0[k] = Interval::raw(i.lo(), m);
        b.0[k] = Interval::raw(m, i.hi());
        (a, b)
    }

    /// Point at fractional position `t` (each component in `[0,1]`) inside the box.
    pub fn at(&self, t: [f64; 5]) -> [f64; 5] {
        let mut p = [0.0; 5];
        for k in 0..5 {
            let i = self.0[k];
            p[k] = (i.lo() + t[k] * i.width()).clamp(i.lo(), i.hi());
        }
        p
    }

    pub fn bounds(&self) -> [[f64; 2]; 5] {
        self.0.map(|i| [i.lo(), i.hi()])
    }
}
