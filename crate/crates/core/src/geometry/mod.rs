//! Convex 3-polytope kernel: hulls, measures, triangulations, projections
//! and inscribed balls. Everything is tolerance-based `f64`; the hull
//! tolerance is `1e-9` times the bounding-box diagonal.

mod hull;
mod insphere;
pub mod io;
mod polygon2;
mod polytope;
mod projection;
mod triangulation;
mod vec3;

pub use hull::{convex_hull, HULL_REL_EPS};
pub use insphere::{insphere, Insphere};
pub use polygon2::{cross2, hull_indices, shoelace, Point2, Polygon2};
pub use polytope::{Facet, Polytope3};
pub use projection::{project, projection_frame};
pub use triangulation::TriangulatedBoundary;
pub use vec3::Vec3;

use crate::error::Result;

pub fn volume(p: &Polytope3) -> f64 {
    p.volume()
}

pub fn surface_area(p: &Polytope3) -> f64 {
    p.surface_area()
}

pub fn isoperimetric_ratio(p: &Polytope3) -> Result<f64> {
    p.isoperimetric_ratio()
}

pub fn triangulate_boundary(p: &Polytope3) -> TriangulatedBoundary {
    TriangulatedBoundary::fan(p)
}

pub fn vertex_degrees(t: &TriangulatedBoundary) -> Vec<usize> {
    t.vertex_degrees()
}

/// Standard test solids.
pub mod shapes {
    use super::{Polytope3, Vec3};

    pub fn cube_corners(h: f64) -> Vec<Vec3> {
        let mut v = Vec::new();
        for &x in &[-h, h] {
            for &y in &[-h, h] {
                for &z in &[-h, h] {
                    v.push(Vec3::new(x, y, z));
                }
            }
        }
        v
    }

    /// `[0,1]^3`.
    pub fn unit_cube() -> Polytope3 {
        let pts: Vec<Vec3> = cube_corners(0.5).into_iter().map(|p| p + Vec3::new(0.5, 0.5, 0.5)).collect();
        Polytope3::hull(&pts).unwrap()
    }

    /// `conv{+-a e1, +-b e2, +-c e3}` with vertex order `a e1, b e2, c e3, -a e1, -b e2, -c e3`.
    pub fn octahedron(a: f64, b: f64, c: f64) -> Polytope3 {
        Polytope3::hull(&[
            Vec3::new(a, 0.0, 0.0),
            Vec3::new(0.0, b, 0.0),
            Vec3::new(0.0, 0.0, c),
            Vec3::new(-a, 0.0, 0.0),
            Vec3::new(0.0, -b, 0.0),
            Vec3::new(0.0, 0.0, -c),
        ])
        .unwrap()
    }

    /// Regular tetrahedron with edge `2 sqrt 2`.
    pub fn regular_tetrahedron() -> Polytope3 {
        Polytope3::hull(&[
            Vec3::new(1.0, 1.0, 1.0),
            Vec3::new(1.0, -1.0, -1.0),
            Vec3::new(-1.0, 1.0, -1.0),
            Vec3::new(-1.0, -1.0, 1.0),
        ])
        .unwrap()
    }

    /// Double pyramid over a regular triangle with inradius `rho` centred at the
    /// origin, apices `(0, 0, +-1)`.
    pub fn triangle_bipyramid(rho: f64) -> Polytope3 {
        let r = 2.0 * rho;
        let mut pts = vec![Vec3::new(0.0, 0.0, 1.0), Vec3::new(0.0, 0.0, -1.0)];
        for k in 0..3 {
            let a = std::f64::consts::TAU * k as f64 / 3.0;
            pts.push(Vec3::new(r * a.cos(), r * a.sin(), 0.0));
        }
        Polytope3::hull(&pts).unwrap()
    }
}
