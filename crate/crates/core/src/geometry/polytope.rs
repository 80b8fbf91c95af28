use serde::{Deserialize, Serialize};

use super::hull::{self, HULL_REL_EPS};
use super::Vec3;
use crate::error::{Error, Result};

/// A polygonal facet: corner indices counterclockwise around the outward normal.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Facet {
    pub vertices: Vec<usize>,
    pub normal: Vec3,
    pub offset: f64,
}

impl Facet {
    /// Signed distance of `p` from the facet plane (positive outside).
    #[inline]
    pub fn signed_dist(&self, p: Vec3) -> f64 {
        self.normal.dot(p) - self.offset
    }
}

/// Convex polytope in R^3: extreme points plus polygonal facets.
///
/// Always built through [`Polytope3::hull`], so the invariants (extreme
/// vertices, outward normals, positive volume) hold by construction.
#[derive(Clone, Debug, PartialEq)]
pub struct Polytope3 {
    vertices: Vec<Vec3>,
    facets: Vec<Facet>,
    scale: f64,
}

impl Polytope3 {
    pub(crate) fn from_parts(vertices: Vec<Vec3>, facets: Vec<Facet>, scale: f64) -> Self {
        Polytope3 { vertices, facets, scale }
    }

    /// Convex hull of a point cloud.
    pub fn hull(points: &[Vec3]) -> Result<Self> {
        hull::convex_hull(points)
    }

    pub fn vertices(&self) -> &[Vec3] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// Bounding-box diagonal of the input the hull was built from.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Absolute geometric tolerance used by this polytope.
    pub fn eps(&self) -> f64 {
        HULL_REL_EPS * self.scale
    }

    pub fn centroid(&self) -> Vec3 {
        Vec3::centroid(self.vertices.iter())
    }

    pub fn facet_area(&self, f: &Facet) -> f64 {
        let v = &self.vertices;
        let a = v[f.vertices[0]];
        let mut s = Vec3::ZERO;
        for w in f.vertices[1..].windows(2) {
            s += (v[w[0]] - a).cross(v[w[1]] - a);
        }
        0.5 * s.norm()
    }

    /// Volume by a tetrahedron fan from the vertex centroid.
    pub fn volume(&self) -> f64 {
        let c = self.centroid();
        let v = &self.vertices;
        let mut vol = 0.0;
        for f in &self.facets {
            let a = v[f.vertices[0]] - c;
            for w in f.vertices[1..].windows(2) {
                vol += a.dot((v[w[0]] - c).cross(v[w[1]] - c));
            }
        }
        vol / 6.0
    }

    pub fn surface_area(&self) -> f64 {
        self.facets.iter().map(|f| self.facet_area(f)).sum()
    }

    /// `S^3 / V^2`.
    pub fn isoperimetric_ratio(&self) -> Result<f64> {
        let v = self.volume();
        if !(v > self.eps() * self.scale * self.scale) {
            return Err(Error::DegenerateInput(format!("volume {v} too small for a ratio")));
        }
        Ok(self.surface_area().powi(3) / (v * v))
    }

    pub fn diameter(&self) -> f64 {
        let v = &self.vertices;
        let mut d: f64 = 0.0;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                d = d.max(v[i].dist(v[j]));
            }
        }
        d
    }

    /// Largest vertex norm, i.e. the smallest `R` with `P` inside `R B^3`.
    pub fn circumradius_origin(&self) -> f64 {
        self.vertices.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Point membership with tolerance `tol` (absolute distance).
    pub fn contains(&self, p: Vec3, tol: f64) -> bool {
        self.facets.iter().all(|f| f.signed_dist(p) <= tol)
    }

    /// Chord `{t : x + t u in P}` of the line through `x` with direction `u`.
    pub fn chord(&self, x: Vec3, u: Vec3) -> Option<(f64, f64)> {
        let mut lo = f64::NEG_INFINITY;
        let mut hi = f64::INFINITY;
        let tol = self.eps();
        for f in &self.facets {
            let a = f.normal.dot(u);
            let b = f.offset - f.normal.dot(x);
            if a > 1e-12 {
                hi = hi.min(b / a);
            } else if a < -1e-12 {
                lo = lo.max(b / a);
            } else if b < -tol {
                return None;
            }
        }
        (lo <= hi + tol).then(|| if lo > hi { ((lo + hi) / 2.0, (lo + hi) / 2.0) } else { (lo, hi) })
    }

    /// Rebuilds the hull of the image of every vertex under `f`.
    pub fn map(&self, f: impl Fn(Vec3) -> Vec3) -> Result<Polytope3> {
        let pts: Vec<Vec3> = self.vertices.iter().map(|&v| f(v)).collect();
        Polytope3::hull(&pts)
    }

    pub fn translate(&self, t: Vec3) -> Result<Polytope3> {
        self.map(|v| v + t)
    }

    /// Index of the vertex closest to `p`.
    pub fn nearest_vertex(&self, p: Vec3) -> usize {
        (0..self.vertices.len())
            .min_by(|&a, &b| self.vertices[a].dist(p).total_cmp(&self.vertices[b].dist(p)))
            .unwrap()
    }

    /// Undirected edges of the facet polygons, each as `(i, j)` with `i < j`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut e: Vec<(usize, usize)> = self
            .facets
            .iter()
            .flat_map(|f| {
                let n = f.vertices.len();
                (0..n).map(move |k| {
                    let (a, b) = (f.vertices[k], f.vertices[(k + 1) % n]);
                    (a.min(b), a.max(b))
                })
            })
            .collect();
        e.sort_unstable();
        e.dedup();
        e
    }

    /// Same vertex set up to `tol`, ignoring order.
    pub fn same_vertex_set(&self, other: &Polytope3, tol: f64) -> bool {
        self.vertices.len() == other.vertices.len()
            && self
                .vertices
                .iter()
                .all(|v| other.vertices.iter().any(|w| v.dist(*w) <= tol))
    }

    /// Same polytope with vertex `k` moved to position `perm[k]`.
    pub(crate) fn reindexed(&self, perm: &[usize]) -> Polytope3 {
        let mut vertices = vec![Vec3::ZERO; self.vertices.len()];
        for (k, &v) in self.vertices.iter().enumerate() {
            vertices[perm[k]] = v;
        }
        let facets = self
            .facets
            .iter()
            .map(|f| Facet {
                vertices: f.vertices.iter().map(|&k| perm[k]).collect(),
                normal: f.normal,
                offset: f.offset,
            })
            .collect();
        Polytope3 {
            vertices,
            facets,
            scale: self.scale,
        }
    }

    /// Translation test: vertex sets agree after subtracting vertex centroids.
    pub fn is_translate_of(&self, other: &Polytope3, tol: f64) -> bool {
        let (ca, cb) = (self.centroid(), other.centroid());
        self.vertices.len() == other.vertices.len()
            && self
                .vertices
                .iter()
                .all(|&v| other.vertices.iter().any(|&w| (v - ca).dist(w - cb) <= tol))
    }
}
