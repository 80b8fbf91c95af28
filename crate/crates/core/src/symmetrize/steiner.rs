use std::collections::BTreeSet;

use super::envelope::{envelopes, Envelopes, VERTICAL_TOL};
use crate::error::Result;
use crate::geometry::{Point2, Polytope3, Vec3};

/// Projected edges of the facets on one side of the plane.
fn side_edges(p: &Polytope3, u: Vec3, upper: bool) -> BTreeSet<(usize, usize)> {
    let mut out = BTreeSet::new();
    for f in p.facets() {
        let c = f.normal.dot(u);
        if (upper && c > VERTICAL_TOL) || (!upper && c < -VERTICAL_TOL) {
            let n = f.vertices.len();
            for k in 0..n {
                let (a, b) = (f.vertices[k], f.vertices[(k + 1) % n]);
                out.insert((a.min(b), a.max(b)));
            }
        }
    }
    out
}

fn segment_intersection(p: Point2, q: Point2, r: Point2, s: Point2, tol: f64) -> Option<Point2> {
    let d1 = [q[0] - p[0], q[1] - p[1]];
    let d2 = [s[0] - r[0], s[1] - r[1]];
    let den = d1[0] * d2[1] - d1[1] * d2[0];
    let scale = (d1[0].hypot(d1[1]) * d2[0].hypot(d2[1])).max(f64::MIN_POSITIVE);
    if den.abs() <= 1e-12 * scale {
        return None;
    }
    let w = [r[0] - p[0], r[1] - p[1]];
    let t = (w[0] * d2[1] - w[1] * d2[0]) / den;
    let v = (w[0] * d1[1] - w[1] * d1[0]) / den;
    (t >= -tol && t <= 1.0 + tol && v >= -tol && v <= 1.0 + tol).then(|| [p[0] + t * d1[0], p[1] + t * d1[1]])
}

/// Vertices of the overlay of the upper and lower facet subdivisions: the
/// projected vertices plus crossings of upper edges with lower edges.
pub fn overlay_candidates(p: &Polytope3, env: &Envelopes) -> Vec<Point2> {
    let proj: Vec<Point2> = p.vertices().iter().map(|&v| env.to_2d(v)).collect();
    let mut out = proj.clone();
    let up = side_edges(p, env.u, true);
    let lo = side_edges(p, env.u, false);
    for &(a, b) in &up {
        for &(c, d) in &lo {
            if a == c || a == d || b == c || b == d {
                continue;
            }
            if let Some(x) = segment_intersection(proj[a], proj[b], proj[c], proj[d], 1e-12) {
                out.push(x);
            }
        }
    }
    out
}

/// Steiner symmetral of `P` with respect to the plane `normal^perp` through the origin.
pub fn steiner_symmetral(p: &Polytope3, normal: Vec3) -> Result<Polytope3> {
    let env = envelopes(p, normal)?;
    let mut pts = Vec::new();
    for x in overlay_candidates(p, &env) {
        let half = 0.5 * env.chord_length(x);
        let base = env.to_plane(x);
        pts.push(base + env.u * half);
        if half > 0.0 {
            pts.push(base - env.u * half);
        }
    }
    Polytope3::hull(&pts)
}
