use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::geometry::{project, projection_frame, Point2, Polygon2, Polytope3, Vec3};

/// Normal-direction threshold below which a facet counts as vertical.
pub(crate) const VERTICAL_TOL: f64 = 1e-12;

/// One affine piece `value(x) = a[0] x + a[1] y + a[2]` over a projected facet.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnvelopeCell {
    pub facet: usize,
    pub polygon: Polygon2,
    pub affine: [f64; 3],
}

impl EnvelopeCell {
    #[inline]
    pub fn value(&self, x: Point2) -> f64 {
        self.affine[0] * x[0] + self.affine[1] * x[1] + self.affine[2]
    }
}

/// Concave piecewise-affine function on the projection `K|L`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PiecewiseLinearEnvelope {
    pub domain: Polygon2,
    pub cells: Vec<EnvelopeCell>,
}

impl PiecewiseLinearEnvelope {
    /// Value at `x`; the minimum of the cell functions, valid on the domain.
    pub fn eval(&self, x: Point2) -> f64 {
        self.cells.iter().map(|c| c.value(x)).fold(f64::INFINITY, f64::min)
    }

    /// Index of a cell containing `x`.
    pub fn cell_at(&self, x: Point2, tol: f64) -> Option<usize> {
        self.cells.iter().position(|c| c.polygon.contains(x, tol))
    }
}

/// Upper envelope `f` and lower envelope `g` of `P` with respect to the plane
/// `normal^perp`: `P = {x + t u : -g(x) <= t <= f(x)}`, coordinates in the
/// frame of [`projection_frame`].
#[derive(Clone, Debug)]
pub struct Envelopes {
    pub u: Vec3,
    pub frame: (Vec3, Vec3),
    pub upper: PiecewiseLinearEnvelope,
    pub lower: PiecewiseLinearEnvelope,
}

impl Envelopes {
    pub fn to_plane(&self, x: Point2) -> Vec3 {
        self.frame.0 * x[0] + self.frame.1 * x[1]
    }

    pub fn to_2d(&self, p: Vec3) -> Point2 {
        [p.dot(self.frame.0), p.dot(self.frame.1)]
    }

    /// Chord length `f(x) + g(x)`, clamped at zero on the silhouette.
    pub fn chord_length(&self, x: Point2) -> f64 {
        (self.upper.eval(x) + self.lower.eval(x)).max(0.0)
    }
}

pub fn envelopes(p: &Polytope3, normal: Vec3) -> Result<Envelopes> {
    let frame = projection_frame(normal)?;
    let u = normal.normalized().expect("projection_frame rejects zero normals");
    let domain = project(p, u)?;
    let (e1, e2) = frame;
    let mut upper = Vec::new();
    let mut lower = Vec::new();
    for (k, f) in p.facets().iter().enumerate() {
        let c = f.normal.dot(u);
        if c.abs() <= VERTICAL_TOL {
            continue;
        }
        // on the facet plane: t = (d - (n.e1) x - (n.e2) y) / (n.u)
        let t = [-f.normal.dot(e1) / c, -f.normal.dot(e2) / c, f.offset / c];
        let pts: Vec<Point2> = f
            .vertices
            .iter()
            .map(|&i| {
                let v = p.vertices()[i];
                [v.dot(e1), v.dot(e2)]
            })
            .collect();
        let polygon = Polygon2::hull(&pts, p.eps());
        if polygon.len() < 3 {
            continue;
        }
        if c > 0.0 {
            upper.push(EnvelopeCell { facet: k, polygon, affine: t });
        } else {
            lower.push(EnvelopeCell {
                facet: k,
                polygon,
                affine: [-t[0], -t[1], -t[2]],
            });
        }
    }
    Ok(Envelopes {
        u,
        frame,
        upper: PiecewiseLinearEnvelope {
            domain: domain.clone(),
            cells: upper,
        },
        lower: PiecewiseLinearEnvelope { domain, cells: lower },
    })
}
