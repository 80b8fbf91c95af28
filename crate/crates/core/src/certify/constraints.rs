//! Interval-evaluable inequalities `c(p) >= 0` on the strange-polytope
//! parameters `p = (x1, x2, x3, y1, y2)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::interval::{Box5, Interval, Jet, Var};
use crate::strange::{Profile, Thresholds};

/// Three-valued outcome of a constraint over a box.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Truth {
    True,
    False,
    Unknown,
}

/// Each kind encodes one polynomial `c` with the constraint `c >= 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConstraintKind {
    /// `p[hi] - p[lo]`
    Order { lo: Var, hi: Var },
    /// `p[v]`
    NonNeg { v: Var },
    /// `x2 y1 - x1 y2`
    ConvexAtW1,
    /// `(x3 - x1) y2 - (x3 - x2) y1`
    ConvexAtW2,
    /// `area - min`
    AreaMin { min: f64 },
    /// `max - area`
    AreaMax { max: f64 },
    /// `max - p[v]`
    CoordMax { v: Var, max: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Constraint {
    /// Which numbered condition this belongs to (1 to 4).
    pub cond: u8,
    #[serde(flatten)]
    pub kind: ConstraintKind,
}

fn var_grad(v: Var, sign: f64) -> [Interval; 5] {
    let mut g = [Interval::ZERO; 5];
    g[v as usize] = Interval::point(sign);
    g
}

fn area(b: &Box5) -> Interval {
    b.x2() * b.y1() + (b.x3() - b.x1()) * b.y2()
}

fn area_grad(b: &Box5) -> [Interval; 5] {
    [-b.y2(), b.y1(), b.y2(), b.x2(), b.x3() - b.x1()]
}

impl Constraint {
    pub const fn new(cond: u8, kind: ConstraintKind) -> Self {
        Constraint { cond, kind }
    }

    /// Enclosure of `c` over the box.
    pub fn value(&self, b: &Box5) -> Interval {
        match self.kind {
            ConstraintKind::Order { lo, hi } => b.get(hi) - b.get(lo),
            ConstraintKind::NonNeg { v } => b.get(v),
            ConstraintKind::ConvexAtW1 => b.x2() * b.y1() - b.x1() * b.y2(),
            ConstraintKind::ConvexAtW2 => (b.x3() - b.x1()) * b.y2() - (b.x3() - b.x2()) * b.y1(),
            ConstraintKind::AreaMin { min } => area(b) - min,
            ConstraintKind::AreaMax { max } => Interval::point(max) - area(b),
            ConstraintKind::CoordMax { v, max } => Interval::point(max) - b.get(v),
        }
    }

    /// Enclosure of the gradient of `c` over the box.
    pub fn grad(&self, b: &Box5) -> [Interval; 5] {
        match self.kind {
            ConstraintKind::Order { lo, hi } => {
                let mut g = var_grad(hi, 1.0);
                g[lo as usize] = Interval::point(-1.0);
                g
            }
            ConstraintKind::NonNeg { v } => var_grad(v, 1.0),
            ConstraintKind::ConvexAtW1 => [-b.y2(), b.y1(), Interval::ZERO, b.x2(), -b.x1()],
            ConstraintKind::ConvexAtW2 => [-b.y2(), b.y1(), b.y2() - b.y1(), b.x2() - b.x3(), b.x3() - b.x1()],
            ConstraintKind::AreaMin { .. } => area_grad(b),
            ConstraintKind::AreaMax { .. } => area_grad(b).map(|g| -g),
            ConstraintKind::CoordMax { v, .. } => var_grad(v, -1.0),
        }
    }

    /// Value, gradient and Hessian of `c` from the coordinate jets.
    pub fn jet(&self, p: &[Jet; 5]) -> Jet {
        let [x1, x2, x3, y1, y2] = p;
        let area = || x2.mul(y1).add(&x3.sub(x1).mul(y2));
        match self.kind {
            ConstraintKind::Order { lo, hi } => p[hi as usize].sub(&p[lo as usize]),
            ConstraintKind::NonNeg { v } => p[v as usize],
            ConstraintKind::ConvexAtW1 => x2.mul(y1).sub(&x1.mul(y2)),
            ConstraintKind::ConvexAtW2 => x3.sub(x1).mul(y2).sub(&x3.sub(x2).mul(y1)),
            ConstraintKind::AreaMin { min } => area().sub(&Jet::constant(Interval::point(min))),
            ConstraintKind::AreaMax { max } => Jet::constant(Interval::point(max)).sub(&area()),
            ConstraintKind::CoordMax { v, max } => Jet::constant(Interval::point(max)).sub(&p[v as usize]),
        }
    }

    pub fn truth(&self, b: &Box5) -> (Truth, Interval) {
        let c = self.value(b);
        let t = if c.lo() >= 0.0 {
            Truth::True
        } else if c.hi() < 0.0 {
            Truth::False
        } else {
            Truth::Unknown
        };
        (t, c)
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ConstraintKind::Order { lo, hi } => write!(f, "cond{}: {} <= {}", self.cond, lo.name(), hi.name()),
            ConstraintKind::NonNeg { v } => write!(f, "cond{}: {} >= 0", self.cond, v.name()),
            ConstraintKind::ConvexAtW1 => write!(f, "cond{}: x2 y1 - x1 y2 >= 0", self.cond),
            ConstraintKind::ConvexAtW2 => write!(f, "cond{}: (x3 - x1) y2 - (x3 - x2) y1 >= 0", self.cond),
            ConstraintKind::AreaMin { min } => write!(f, "cond{}: area >= {min}", self.cond),
            ConstraintKind::AreaMax { max } => write!(f, "cond{}: area <= {max}", self.cond),
            ConstraintKind::CoordMax { v, max } => write!(f, "cond{}: {} <= {max}", self.cond, v.name()),
        }
    }
}

/// The feasible region as a conjunction of constraints.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ConstraintSet {
    pub constraints: Vec<Constraint>,
}

impl ConstraintSet {
    /// Ordering, convexity, area and coordinate bounds for the given thresholds.
    ///
    /// Decimal thresholds are widened by one ulp so the encoded region
    /// contains the exact decimal one.
    pub fn from_thresholds(t: &Thresholds) -> Self {
        use ConstraintKind::*;
        let mut c = vec![
            Constraint::new(1, NonNeg { v: Var::X1 }),
            Constraint::new(1, Order { lo: Var::X1, hi: Var::X2 }),
            Constraint::new(1, Order { lo: Var::X2, hi: Var::X3 }),
            Constraint::new(1, NonNeg { v: Var::Y1 }),
            Constraint::new(1, NonNeg { v: Var::Y2 }),
            Constraint::new(2, ConvexAtW1),
            Constraint::new(2, ConvexAtW2),
            Constraint::new(3, AreaMin { min: t.area_min.next_down() }),
        ];
        if let Some(max) = t.area_max {
            c.push(Constraint::new(3, AreaMax { max: max.next_up() }));
        }
        if t.coord_max.is_finite() {
            for v in [Var::X3, Var::Y1, Var::Y2] {
                c.push(Constraint::new(4, CoordMax { v, max: t.coord_max.next_up() }));
            }
        }
        ConstraintSet { constraints: c }
    }

    pub fn for_profile(p: Profile) -> Self {
        Self::from_thresholds(&p.thresholds())
    }

    pub fn six_vertex() -> Self {
        Self::for_profile(Profile::SixVertex)
    }

    pub fn len(&self) -> usize {
        self.constraints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }

    /// First certainly-violated constraint, if any.
    pub fn first_violated(&self, b: &Box5) -> Option<(usize, Interval)> {
        self.constraints.iter().enumerate().find_map(|(i, c)| match c.truth(b) {
            (Truth::False, v) => Some((i, v)),
            _ => None,
        })
    }

    /// Indices of constraints that are neither certainly true nor certainly false.
    pub fn unknown(&self, b: &Box5) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.constraints[i].truth(b).0 == Truth::Unknown).collect()
    }

    /// Pointwise membership.
    pub fn satisfied(&self, p: &[f64; 5]) -> bool {
        let b = Box5::point(*p);
        self.constraints.iter().all(|c| c.value(&b).hi() >= 0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_box_violates_area() {
        let cs = ConstraintSet::six_vertex();
        let b = Box5::cube(0.0, 0.1).unwrap();
        let (i, v) = cs.first_violated(&b).unwrap();
        assert_eq!(cs.constraints[i].cond, 3);
        assert!(v.hi() < 0.0);
    }

    #[test]
    fn gradients_match_finite_differences() {
        let cs = ConstraintSet::six_vertex();
        let p = [0.3, 0.7, 1.1, 0.9, 0.5];
        for c in &cs.constraints {
            let g = c.grad(&Box5::point(p));
            for k in 0..5 {
                let mut a = p;
                let mut b = p;
                a[k] -= 1e-6;
                b[k] += 1e-6;
                let fd = (c.value(&Box5::point(b)).mid() - c.value(&Box5::point(a)).mid()) / 2e-6;
                assert!((fd - g[k].mid()).abs() < 1e-8, "{c} d{k}");
                let j = c.jet(&Jet::vars(&Box5::point(p)));
                assert!((j.g[k].mid() - g[k].mid()).abs() < 1e-15);
                assert!((j.v.mid() - c.value(&Box5::point(p)).mid()).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn thresholds_are_widened_outward() {
        let cs = ConstraintSet::six_vertex();
        assert!(cs.satisfied(&[0.0, 0.411, 0.411, 1.0, 0.0]));
        assert!(cs.satisfied(&[0.0, 1.0, 6.5, 6.5, 6.5]));
        assert!(!cs.satisfied(&[0.0, 1.0, 6.6, 1.0, 1.0]));
    }
}
