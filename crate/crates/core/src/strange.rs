//! Double pyramids with apices `(0,0,+-1)` over a base polygon
//! `Q = [o, w1, ..., w5]` in the plane `z = 0`, where
//! `w1 = (x1, y1)`, `w2 = (x2, y2)`, `w3 = (x3, 0)`, `w4 = (x2, -y2)`,
//! `w5 = (x1, -y1)` and the origin `o` lies on the relative boundary of `Q`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{shoelace, Polygon2, Polytope3, Vec3};

/// Base-area lower bound for six-vertex bodies (ratio above 188 below it).
pub const SIX_VERTEX_AREA_MIN: f64 = 0.411;
/// Base-area upper bound for six-vertex bodies (ratio above 188 beyond it).
pub const SIX_VERTEX_AREA_MAX: f64 = 5.1;
/// Coordinate bound for six-vertex bodies (ratio above 188 beyond it).
pub const SIX_VERTEX_COORD_MAX: f64 = 6.5;
/// Base-area bounds for five-vertex bodies (ratio above 344 outside them).
pub const FIVE_VERTEX_AREA_MIN: f64 = 0.09;
pub const FIVE_VERTEX_AREA_MAX: f64 = 15.0;
/// Vertex-distance bound for five-vertex bodies (ratio above 344 beyond it).
pub const FIVE_VERTEX_COORD_MAX: f64 = 17.0;
/// The constants stated in the five-vertex optimality argument, which
/// disagree with the lemma constants above.
pub const FIVE_VERTEX_TEXT_AREA_MIN: f64 = 0.18;
pub const FIVE_VERTEX_TEXT_COORD_MAX: f64 = 11.0;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StrangeParams {
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
    pub y1: f64,
    pub y2: f64,
}

impl StrangeParams {
    pub const fn new(x1: f64, x2: f64, x3: f64, y1: f64, y2: f64) -> Self {
        StrangeParams { x1, x2, x3, y1, y2 }
    }

    pub fn from_array([x1, x2, x3, y1, y2]: [f64; 5]) -> Self {
        StrangeParams { x1, x2, x3, y1, y2 }
    }

    pub fn to_array(self) -> [f64; 5] {
        [self.x1, self.x2, self.x3, self.y1, self.y2]
    }

    /// Base polygon corners `o, w1, w2, w3, w4, w5` in the plane.
    pub fn base_points(&self) -> [[f64; 2]; 6] {
        let StrangeParams { x1, x2, x3, y1, y2 } = *self;
        [[0.0, 0.0], [x1, y1], [x2, y2], [x3, 0.0], [x2, -y2], [x1, -y1]]
    }

    /// `|Q| = x2 y1 - x1 y2 + x3 y2`.
    pub fn base_area(&self) -> f64 {
        self.x2 * self.y1 - self.x1 * self.y2 + self.x3 * self.y2
    }
}

/// Which numbered condition a parameter vector violates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Condition {
    /// `0 <= x1 <= x2 <= x3`, `y1, y2 >= 0`
    Ordering,
    /// `x2 y1 - x1 y2 >= 0` and `(x3 - x1) y2 - (x3 - x2) y1 >= 0`
    Convexity,
    /// base area at least `area_min` (and at most `area_max` when set)
    Area,
    /// `x3, y1, y2 <= coord_max`
    Bounded,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Condition::Ordering => "cond1 (ordering)",
            Condition::Convexity => "cond2 (convex position)",
            Condition::Area => "cond3 (base area)",
            Condition::Bounded => "cond4 (coordinate bound)",
        };
        f.write_str(s)
    }
}

/// Which of the two constant sets to use for five-vertex bodies.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FiveVertexConstants {
    /// Area in `[0.09, 15]`, coordinates at most 17.
    #[default]
    Lemma,
    /// Area at least 0.18, coordinates at most 11.
    TheoremText,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Profile {
    SixVertex,
    FiveVertex(FiveVertexConstants),
}

/// Thresholds for conditions 3 and 4.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    pub area_min: f64,
    pub area_max: Option<f64>,
    pub coord_max: f64,
}

impl Profile {
    pub fn thresholds(self) -> Thresholds {
        match self {
            Profile::SixVertex => Thresholds {
                area_min: SIX_VERTEX_AREA_MIN,
                area_max: None,
                coord_max: SIX_VERTEX_COORD_MAX,
            },
            Profile::FiveVertex(FiveVertexConstants::Lemma) => Thresholds {
                area_min: FIVE_VERTEX_AREA_MIN,
                area_max: Some(FIVE_VERTEX_AREA_MAX),
                coord_max: FIVE_VERTEX_COORD_MAX,
            },
            Profile::FiveVertex(FiveVertexConstants::TheoremText) => Thresholds {
                area_min: FIVE_VERTEX_TEXT_AREA_MIN,
                area_max: None,
                coord_max: FIVE_VERTEX_TEXT_COORD_MAX,
            },
        }
    }
}

/// All violated conditions, in numbering order.
pub fn violations(p: &StrangeParams, t: &Thresholds) -> Vec<Condition> {
    let StrangeParams { x1, x2, x3, y1, y2 } = *p;
    let mut out = Vec::new();
    if !(0.0 <= x1 && x1 <= x2 && x2 <= x3 && y1 >= 0.0 && y2 >= 0.0) {
        out.push(Condition::Ordering);
    }
    if !(x2 * y1 - x1 * y2 >= 0.0 && (x3 - x1) * y2 - (x3 - x2) * y1 >= 0.0) {
        out.push(Condition::Convexity);
    }
    let area = p.base_area();
    if !(area >= t.area_min && t.area_max.is_none_or(|m| area <= m)) {
        out.push(Condition::Area);
    }
    if !(x3 <= t.coord_max && y1 <= t.coord_max && y2 <= t.coord_max) {
        out.push(Condition::Bounded);
    }
    out
}

pub fn feasible_with(p: &StrangeParams, t: &Thresholds) -> bool {
    violations(p, t).is_empty()
}

pub fn feasible(p: &StrangeParams, profile: Profile) -> bool {
    feasible_with(p, &profile.thresholds())
}

/// Closed-form volume `2/3 (x2 y1 - x1 y2 + x3 y2)`.
pub fn strange_v(p: &StrangeParams) -> f64 {
    2.0 / 3.0 * p.base_area()
}

/// Closed-form surface area: four copies each of the lateral triangles
/// over `[o, w1]`, `[w1, w2]` and `[w2, w3]`.
pub fn strange_s(p: &StrangeParams) -> f64 {
    let StrangeParams { x1, x2, x3, y1, y2 } = *p;
    let d = x2 * y1 - x1 * y2;
    2.0 * (x1 * x1 + y1 * y1).sqrt()
        + 2.0 * ((x1 - x2).powi(2) + (y1 - y2).powi(2) + d * d).sqrt()
        + 2.0 * (y2 * y2 + (x3 - x2).powi(2) + x3 * x3 * y2 * y2).sqrt()
}

/// `S^3 - 188 V^2` from the closed forms.
pub fn strange_g(p: &StrangeParams) -> f64 {
    strange_s(p).powi(3) - 188.0 * strange_v(p).powi(2)
}

/// A realized strange body.
#[derive(Clone, Debug)]
pub struct StrangeBody {
    pub params: StrangeParams,
    pub polytope: Polytope3,
    /// Whether the origin is a corner of the base polygon.
    pub origin_is_vertex: bool,
    /// Names of the base points (`"o"`, `"w1"`, ...) that are not corners of the base.
    pub absorbed: Vec<&'static str>,
}

impl StrangeBody {
    pub fn apex_top(&self) -> Vec3 {
        Vec3::E3
    }

    pub fn apex_bottom(&self) -> Vec3 {
        -Vec3::E3
    }
}

const BASE_NAMES: [&str; 6] = ["o", "w1", "w2", "w3", "w4", "w5"];

/// Hull of the apices and the six base points.
pub fn realize(p: &StrangeParams) -> Result<StrangeBody> {
    let v = violations(
        p,
        &Thresholds {
            area_min: f64::NEG_INFINITY,
            area_max: None,
            coord_max: f64::INFINITY,
        },
    );
    if let Some(c) = v.first() {
        return Err(Error::DomainError(format!("parameters violate {c}")));
    }
    if !(strange_v(p) > 1e-12) {
        return Err(Error::DegenerateInput(format!("base area {} is not positive", p.base_area())));
    }
    let base = p.base_points();
    let mut pts = vec![Vec3::E3, -Vec3::E3];
    pts.extend(base.iter().map(|&[x, y]| Vec3::new(x, y, 0.0)));
    let polytope = Polytope3::hull(&pts)?;
    // o sits on the apex axis, so it is never a vertex of the body; extremeness
    // is decided in the base plane instead
    let tol = polytope.eps() * 10.0;
    let corners = Polygon2::hull(&base, tol).vertices;
    let is_corner = |q: [f64; 2]| corners.iter().any(|c| (c[0] - q[0]).hypot(c[1] - q[1]) <= tol);
    let mut absorbed = Vec::new();
    for (k, &q) in base.iter().enumerate() {
        if !is_corner(q) {
            absorbed.push(BASE_NAMES[k]);
        }
    }
    Ok(StrangeBody {
        params: *p,
        origin_is_vertex: is_corner([0.0, 0.0]),
        polytope,
        absorbed,
    })
}

/// Base area by the shoelace formula on `o, w5, w4, w3, w2, w1` (counterclockwise).
pub fn shoelace_area(p: &StrangeParams) -> f64 {
    let mut b = p.base_points();
    b[1..].reverse();
    shoelace(&b)
}

/// `54 sqrt 3 (1 + rho^2)^(3/2) / rho`: the ratio of the double pyramid over a
/// regular triangle of inradius `rho` centred at the origin with apices `+-e3`.
pub fn strange5_ratio(rho: f64) -> Result<f64> {
    if !(rho > 0.0) || !rho.is_finite() {
        return Err(Error::DomainError(format!("rho must be positive, got {rho}")));
    }
    Ok(54.0 * 3f64.sqrt() * (1.0 + rho * rho).powf(1.5) / rho)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formula_examples() {
        let p = StrangeParams::new(0.0, 1.0, 1.0, 1.0, 1.0);
        assert!((strange_v(&p) - 4.0 / 3.0).abs() < 1e-15);
        assert!((strange_s(&p) - (2.0 + 4.0 * 2f64.sqrt())).abs() < 1e-14);
        assert_eq!(strange_v(&StrangeParams::new(0.0, 0.0, 3.0, 0.0, 0.0)), 0.0);
        let q = StrangeParams::new(0.0, 0.0, 1.0, 0.0, 1.0);
        assert!((strange_s(&q) - (2.0 + 2.0 * 3f64.sqrt())).abs() < 1e-14);
    }

    #[test]
    fn feasibility_examples() {
        let six = Profile::SixVertex;
        assert!(feasible(&StrangeParams::new(0.0, 1.0, 1.0, 1.0, 1.0), six));
        let small = StrangeParams::new(0.0, 0.1, 0.2, 0.1, 0.1);
        assert_eq!(violations(&small, &six.thresholds()), vec![Condition::Area]);
        let far = StrangeParams::new(1.0, 2.0, 3.0, 1.0, 7.0);
        assert!(violations(&far, &six.thresholds()).contains(&Condition::Bounded));
        assert!(!feasible(&far, six));
    }

    #[test]
    fn five_vertex_constant_sets_differ() {
        let lemma = Profile::FiveVertex(FiveVertexConstants::Lemma).thresholds();
        let text = Profile::FiveVertex(FiveVertexConstants::TheoremText).thresholds();
        let p = StrangeParams::new(0.0, 0.15, 0.15, 0.4, 0.4); // area 0.12
        assert!(feasible_with(&p, &lemma));
        assert!(!feasible_with(&p, &text));
        let wide = StrangeParams::new(0.0, 1.0, 12.0, 1.0, 1.0);
        assert!(feasible_with(&wide, &lemma));
        assert!(!feasible_with(&wide, &text));
    }

    #[test]
    fn realize_absorbs_collinear_points() {
        let b = realize(&StrangeParams::new(0.0, 1.0, 1.0, 1.0, 1.0)).unwrap();
        assert_eq!(b.polytope.n_vertices(), 6);
        assert!(!b.origin_is_vertex);
        assert_eq!(b.absorbed, vec!["o", "w3"]);
        let gen = realize(&StrangeParams::new(0.2, 0.6, 1.0, 0.5, 0.4)).unwrap();
        assert_eq!(gen.polytope.n_vertices(), 7);
        assert!(gen.origin_is_vertex);
        assert!(gen.absorbed.is_empty());
        let line = realize(&StrangeParams::new(0.5, 1.0, 1.5, 0.5, 1.0)).unwrap();
        assert_eq!(line.absorbed, vec!["w1", "w5"]);
        assert!(realize(&StrangeParams::new(0.0, 0.0, 1.0, 0.0, 0.0)).is_err());
    }

    #[test]
    fn strange5_ratio_values() {
        let p0 = strange5_ratio(2f64.sqrt()).unwrap();
        assert!((p0 - 243.0 * 2f64.sqrt()).abs() < 1e-10);
        let one = strange5_ratio(1.0).unwrap();
        assert!((one - 54.0 * 3f64.sqrt() * 2f64.powf(1.5)).abs() < 1e-10);
        // the stationary point of (1 + r^2)^(3/2) / r is r^2 = 1/2
        let m = strange5_ratio(0.5f64.sqrt()).unwrap();
        assert!((m - 243.0).abs() < 1e-10);
        assert!(one > m && p0 > one);
        assert!(strange5_ratio(0.0).is_err());
        assert!(strange5_ratio(-1.0).is_err());
    }
}
