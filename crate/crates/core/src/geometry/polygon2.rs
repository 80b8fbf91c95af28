use serde::{Deserialize, Serialize};

pub type Point2 = [f64; 2];

#[inline]
pub fn cross2(o: Point2, a: Point2, b: Point2) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Convex polygon in the plane, counterclockwise, without repeated or collinear corners.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Polygon2 {
    pub vertices: Vec<Point2>,
}

impl Polygon2 {
    /// Convex hull of a point set (Andrew's monotone chain). Collinear points
    /// within `tol` of a hull edge are dropped.
    pub fn hull(points: &[Point2], tol: f64) -> Polygon2 {
        Polygon2 {
            vertices: hull_indices(points, tol).into_iter().map(|i| points[i]).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Shoelace area.
    pub fn area(&self) -> f64 {
        shoelace(&self.vertices).abs()
    }

    /// Point containment with boundary tolerance.
    pub fn contains(&self, p: Point2, tol: f64) -> bool {
        let n = self.vertices.len();
        if n < 3 {
            return false;
        }
        (0..n).all(|i| {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            let len = ((b[0] - a[0]).powi(2) + (b[1] - a[1]).powi(2)).sqrt();
            cross2(a, b, p) >= -tol * len.max(1e-300)
        })
    }
}

/// Signed shoelace area (positive for counterclockwise order).
pub fn shoelace(pts: &[Point2]) -> f64 {
    let n = pts.len();
    let mut s = 0.0;
    for i in 0..n {
        let a = pts[i];
        let b = pts[(i + 1) % n];
        s += a[0] * b[1] - a[1] * b[0];
    }
    0.5 * s
}

/// Indices of the convex hull corners of `points` in counterclockwise order.
///
/// A point counts as a corner only if it is farther than `tol` (distance) from
/// the line through its neighbours. Duplicates are removed first.
pub fn hull_indices(points: &[Point2], tol: f64) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..points.len()).collect();
    idx.sort_by(|&a, &b| {
        points[a][0]
            .total_cmp(&points[b][0])
            .then(points[a][1].total_cmp(&points[b][1]))
            .then(a.cmp(&b))
    });
    idx.dedup_by(|a, b| {
        let (p, q) = (points[*a], points[*b]);
        (p[0] - q[0]).abs() <= tol && (p[1] - q[1]).abs() <= tol
    });
    if idx.len() < 3 {
        return idx;
    }
    // signed distance of b from line (o, a) must be positive beyond tol for a left turn
    let left = |o: usize, a: usize, b: usize| {
        let (po, pa, pb) = (points[o], points[a], points[b]);
        let len = ((pb[0] - po[0]).powi(2) + (pb[1] - po[1]).powi(2)).sqrt();
        cross2(po, pa, pb) > tol * len
    };
    let mut lower: Vec<usize> = Vec::new();
    for &i in &idx {
        while lower.len() >= 2 && !left(lower[lower.len() - 2], lower[lower.len() - 1], i) {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &i in idx.iter().rev() {
        while upper.len() >= 2 && !left(upper[upper.len() - 2], upper[upper.len() - 1], i) {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}
