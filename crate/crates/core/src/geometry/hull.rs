//! Incremental 3D convex hull for small point sets.
//!
//! Visibility uses a plane-distance tolerance instead of exact predicates;
//! coplanar triangles of the raw hull are merged into polygonal facets and
//! every facet polygon is rebuilt from all input points lying on its plane.

use std::collections::{HashMap, HashSet};

use super::polygon2::hull_indices;
use super::{Facet, Polytope3, Vec3};
use crate::error::{Error, Result};

/// Relative plane-distance tolerance (times the bounding-box diagonal).
pub const HULL_REL_EPS: f64 = 1e-9;

struct Plane {
    normal: Vec3,
    offset: f64,
}

impl Plane {
    fn through(a: Vec3, b: Vec3, c: Vec3) -> Option<Plane> {
        let n = (b - a).cross(c - a).normalized()?;
        Some(Plane {
            normal: n,
            offset: n.dot(a),
        })
    }

    #[inline]
    fn dist(&self, p: Vec3) -> f64 {
        self.normal.dot(p) - self.offset
    }
}

pub(crate) fn bbox_diagonal(points: &[Vec3]) -> f64 {
    let mut lo = [f64::INFINITY; 3];
    let mut hi = [f64::NEG_INFINITY; 3];
    for p in points {
        for k in 0..3 {
            lo[k] = lo[k].min(p[k]);
            hi[k] = hi[k].max(p[k]);
        }
    }
    Vec3::new(hi[0] - lo[0], hi[1] - lo[1], hi[2] - lo[2]).norm()
}

/// Convex hull of `points`; the vertex list keeps input order.
pub fn convex_hull(points: &[Vec3]) -> Result<Polytope3> {
    if points.len() < 4 {
        return Err(Error::DegenerateInput(format!("need at least 4 points, got {}", points.len())));
    }
    if let Some(p) = points.iter().find(|p| !p.is_finite()) {
        return Err(Error::DegenerateInput(format!("non-finite point {p:?}")));
    }
    let scale = bbox_diagonal(points);
    if !(scale > 0.0) {
        return Err(Error::DegenerateInput("all points coincide".into()));
    }
    let eps = HULL_REL_EPS * scale;

    // dedupe, keeping the first occurrence
    let mut pts: Vec<Vec3> = Vec::with_capacity(points.len());
    for &p in points {
        if !pts.iter().any(|q| q.dist(p) <= eps) {
            pts.push(p);
        }
    }
    if pts.len() < 4 {
        return Err(Error::DegenerateInput("fewer than 4 distinct points".into()));
    }

    let seed = initial_simplex(&pts, eps)?;
    let mut faces: Vec<[usize; 3]> = Vec::new();
    {
        let [a, b, c, d] = seed;
        let inside = Vec3::centroid([pts[a], pts[b], pts[c], pts[d]].iter());
        for f in [[a, b, c], [a, b, d], [a, c, d], [b, c, d]] {
            let pl = Plane::through(pts[f[0]], pts[f[1]], pts[f[2]]).expect("seed faces are proper");
            faces.push(if pl.dist(inside) > 0.0 { [f[0], f[2], f[1]] } else { f });
        }
    }
    let mut planes: Vec<Plane> = faces
        .iter()
        .map(|f| Plane::through(pts[f[0]], pts[f[1]], pts[f[2]]).unwrap())
        .collect();

    for (i, &p) in pts.iter().enumerate() {
        if seed.contains(&i) {
            continue;
        }
        let visible: Vec<usize> = (0..faces.len()).filter(|&f| planes[f].dist(p) > eps).collect();
        if visible.is_empty() {
            continue;
        }
        let vis_edges: HashSet<(usize, usize)> = visible
            .iter()
            .flat_map(|&f| {
                let [a, b, c] = faces[f];
                [(a, b), (b, c), (c, a)]
            })
            .collect();
        let horizon: Vec<(usize, usize)> = visible
            .iter()
            .flat_map(|&f| {
                let [a, b, c] = faces[f];
                [(a, b), (b, c), (c, a)]
            })
            .filter(|&(a, b)| !vis_edges.contains(&(b, a)))
            .collect();
        let vis_set: HashSet<usize> = visible.into_iter().collect();
        let mut nf = Vec::with_capacity(faces.len());
        let mut np = Vec::with_capacity(faces.len());
        for (k, (f, pl)) in faces.into_iter().zip(planes).enumerate() {
            if !vis_set.contains(&k) {
                nf.push(f);
                np.push(pl);
            }
        }
        for (a, b) in horizon {
            // a horizon triangle can only be degenerate when p sits on the horizon edge line
            if let Some(pl) = Plane::through(pts[a], pts[b], p) {
                nf.push([a, b, i]);
                np.push(pl);
            }
        }
        faces = nf;
        planes = np;
    }

    let facets = merge_coplanar(&pts, &faces, &planes, eps);
    assemble(points, &pts, facets, eps, scale)
}

fn initial_simplex(pts: &[Vec3], eps: f64) -> Result<[usize; 4]> {
    let i0 = (0..pts.len())
        .min_by(|&a, &b| pts[a].x.total_cmp(&pts[b].x).then(a.cmp(&b)))
        .unwrap();
    let far = |f: &dyn Fn(Vec3) -> f64| {
        (0..pts.len())
            .map(|i| (i, f(pts[i])))
            .fold((0, -1.0), |best, c| if c.1 > best.1 { c } else { best })
    };
    let (i1, d1) = far(&|p| p.dist(pts[i0]));
    if d1 <= eps {
        return Err(Error::DegenerateInput("points coincide".into()));
    }
    let dir = (pts[i1] - pts[i0]) / d1;
    let (i2, d2) = far(&|p| (p - pts[i0]).cross(dir).norm());
    if d2 <= eps {
        return Err(Error::DegenerateInput("points are collinear".into()));
    }
    let pl = Plane::through(pts[i0], pts[i1], pts[i2]).unwrap();
    let (i3, d3) = far(&|p| pl.dist(p).abs());
    if d3 <= eps {
        return Err(Error::DegenerateInput("points are coplanar".into()));
    }
    Ok([i0, i1, i2, i3])
}

struct RawFacet {
    normal: Vec3,
    offset: f64,
}

/// Groups edge-adjacent triangles lying in a common plane.
fn merge_coplanar(pts: &[Vec3], faces: &[[usize; 3]], planes: &[Plane], eps: f64) -> Vec<RawFacet> {
    let n = faces.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    let mut edge_owner: HashMap<(usize, usize), usize> = HashMap::new();
    for (f, t) in faces.iter().enumerate() {
        for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])] {
            edge_owner.insert((a, b), f);
        }
    }
    for (f, t) in faces.iter().enumerate() {
        for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])] {
            if let Some(&g) = edge_owner.get(&(b, a)) {
                let coplanar = faces[g].iter().all(|&v| planes[f].dist(pts[v]).abs() <= eps)
                    && t.iter().all(|&v| planes[g].dist(pts[v]).abs() <= eps)
                    && planes[f].normal.dot(planes[g].normal) > 0.0;
                if coplanar {
                    let (rf, rg) = (find(&mut parent, f), find(&mut parent, g));
                    if rf != rg {
                        parent[rf.max(rg)] = rf.min(rg);
                    }
                }
            }
        }
    }
    let mut groups: Vec<(usize, Vec<usize>)> = Vec::new();
    for f in 0..n {
        let r = find(&mut parent, f);
        match groups.iter_mut().find(|(root, _)| *root == r) {
            Some((_, g)) => g.push(f),
            None => groups.push((r, vec![f])),
        }
    }
    groups
        .into_iter()
        .map(|(_, members)| {
            let mut nsum = Vec3::ZERO;
            for &f in &members {
                let [a, b, c] = faces[f];
                nsum += (pts[b] - pts[a]).cross(pts[c] - pts[a]);
            }
            let normal = nsum.normalized().unwrap_or(planes[members[0]].normal);
            let vs: HashSet<usize> = members.iter().flat_map(|&f| faces[f]).collect();
            let offset = vs.iter().map(|&v| normal.dot(pts[v])).sum::<f64>() / vs.len() as f64;
            RawFacet { normal, offset }
        })
        .collect()
}

/// Orthonormal in-plane basis `(u, v)` with `u x v = n`.
pub(crate) fn plane_basis(n: Vec3) -> (Vec3, Vec3) {
    let a = if n.x.abs() <= n.y.abs() && n.x.abs() <= n.z.abs() {
        Vec3::E1
    } else if n.y.abs() <= n.z.abs() {
        Vec3::E2
    } else {
        Vec3::E3
    };
    let u = (a - n * n.dot(a)).normalized().unwrap();
    let v = n.cross(u);
    (u, v)
}

fn assemble(original: &[Vec3], pts: &[Vec3], raw: Vec<RawFacet>, eps: f64, scale: f64) -> Result<Polytope3> {
    // facet corner lists in terms of deduped point indices
    let mut corner_lists: Vec<(Vec<usize>, Vec3, f64)> = Vec::new();
    for rf in raw {
        let on: Vec<usize> = (0..pts.len())
            .filter(|&i| (rf.normal.dot(pts[i]) - rf.offset).abs() <= eps)
            .collect();
        let (u, v) = plane_basis(rf.normal);
        let proj: Vec<[f64; 2]> = on.iter().map(|&i| [u.dot(pts[i]), v.dot(pts[i])]).collect();
        let corners: Vec<usize> = hull_indices(&proj, eps).into_iter().map(|k| on[k]).collect();
        if corners.len() >= 3 {
            corner_lists.push((corners, rf.normal, rf.offset));
        }
    }
    let mut used: Vec<usize> = corner_lists.iter().flat_map(|c| c.0.iter().copied()).collect();
    used.sort_unstable();
    used.dedup();
    // map deduped index -> first original index for ordering
    let first_orig = |p: Vec3| original.iter().position(|q| q.dist(p) <= eps).unwrap();
    used.sort_by_key(|&i| first_orig(pts[i]));
    let remap: HashMap<usize, usize> = used.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let vertices: Vec<Vec3> = used.iter().map(|&i| pts[i]).collect();
    let facets: Vec<Facet> = corner_lists
        .into_iter()
        .map(|(c, normal, offset)| Facet {
            vertices: c.iter().map(|i| remap[i]).collect(),
            normal,
            offset,
        })
        .collect();
    let poly = Polytope3::from_parts(vertices, facets, scale);
    if poly.vertices().len() < 4 || poly.facets().len() < 4 {
        return Err(Error::DegenerateInput("hull has fewer than 4 vertices or facets".into()));
    }
    let vol = poly.volume();
    if !(vol > eps * scale * scale) {
        return Err(Error::DegenerateInput(format!("hull volume {vol} is not positive")));
    }
    Ok(poly)
}
