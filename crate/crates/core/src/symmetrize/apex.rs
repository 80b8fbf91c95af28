use serde::{Deserialize, Serialize};

use super::steiner::steiner_symmetral;
use crate::error::{Error, Result};
use crate::geometry::{Polytope3, TriangulatedBoundary, Vec3};

/// Two vertices joined by an edge to every other vertex, such that every
/// triangle contains at least one of them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApexPair {
    pub i: usize,
    pub j: usize,
}

impl ApexPair {
    pub fn check(&self, t: &TriangulatedBoundary) -> Result<()> {
        let n = t.n_vertices();
        let (i, j) = (self.i, self.j);
        if i == j || i >= n || j >= n {
            return Err(Error::InvalidApexPair(format!("({i}, {j}) with {n} vertices")));
        }
        let adj = t.adjacency();
        if let Some(k) = (0..n).find(|&k| k != i && k != j && !(adj[i][k] && adj[j][k])) {
            return Err(Error::InvalidApexPair(format!("vertex {k} is not adjacent to both {i} and {j}")));
        }
        if let Some(tri) = t.triangles.iter().find(|tri| !tri.contains(&i) && !tri.contains(&j)) {
            return Err(Error::InvalidApexPair(format!("triangle {tri:?} avoids both {i} and {j}")));
        }
        Ok(())
    }
}

/// Lexicographically first apex pair, if any.
pub fn find_apex_pair(t: &TriangulatedBoundary) -> Option<ApexPair> {
    let n = t.n_vertices();
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| ApexPair { i, j }))
        .find(|p| p.check(t).is_ok())
}

/// Steiner symmetral along `v_j - v_i` for an apex pair. The result keeps the
/// vertex numbering of `t`: the apices stay at `i` and `j`, every other vertex
/// `k` becomes its projection onto the symmetry plane. The returned
/// triangulation carries the same index triples and is checked to tile the
/// boundary of the symmetral.
pub fn bipyramid_symmetral(t: &TriangulatedBoundary, pair: ApexPair) -> Result<(Polytope3, TriangulatedBoundary)> {
    pair.check(t)?;
    let p = &t.base;
    let (vi, vj) = (p.vertices()[pair.i], p.vertices()[pair.j]);
    let axis = vj - vi;
    let u = axis
        .normalized()
        .ok_or_else(|| Error::InvalidApexPair("apices coincide".into()))?;
    let sym = steiner_symmetral(p, u)?;
    let n = p.n_vertices();
    if sym.n_vertices() != n {
        return Err(Error::DegenerateInput(format!(
            "symmetral has {} vertices, expected {n}",
            sym.n_vertices()
        )));
    }
    let on_plane = |v: Vec3| v - u * v.dot(u);
    let foot = on_plane(vj);
    let expected: Vec<Vec3> = (0..n)
        .map(|k| {
            if k == pair.j {
                foot + axis * 0.5
            } else if k == pair.i {
                foot - axis * 0.5
            } else {
                on_plane(p.vertices()[k])
            }
        })
        .collect();
    let tol = 1e-7 * p.diameter().max(sym.diameter());
    // perm[k_sym] = k_original
    let mut perm = vec![usize::MAX; n];
    for (k, &e) in expected.iter().enumerate() {
        let s = sym.nearest_vertex(e);
        if sym.vertices()[s].dist(e) > tol || perm[s] != usize::MAX {
            return Err(Error::DegenerateInput(format!("vertex {k} has no counterpart in the symmetral")));
        }
        perm[s] = k;
    }
    let sym = sym.reindexed(&perm);

    // orient and validate: each triangle on one facet; areas add up per facet
    let mut facet_area = vec![0.0; sym.facets().len()];
    let mut triangles = Vec::with_capacity(t.triangles.len());
    for &[a, b, c] in &t.triangles {
        let (pa, pb, pc) = (sym.vertices()[a], sym.vertices()[b], sym.vertices()[c]);
        let f = sym
            .facets()
            .iter()
            .position(|f| [pa, pb, pc].iter().all(|&q| f.signed_dist(q).abs() <= tol))
            .ok_or_else(|| Error::DegenerateInput(format!("triangle {:?} is not on a facet of the symmetral", [a, b, c])))?;
        let nrm = (pb - pa).cross(pc - pa);
        facet_area[f] += 0.5 * nrm.norm();
        triangles.push(if nrm.dot(sym.facets()[f].normal) >= 0.0 { [a, b, c] } else { [a, c, b] });
    }
    for (f, &area) in sym.facets().iter().zip(&facet_area) {
        let expect = sym.facet_area(f);
        if (area - expect).abs() > 1e-7 * expect.max(tol * tol) {
            return Err(Error::DegenerateInput(format!("induced triangles cover {area} of a facet of area {expect}")));
        }
    }
    let tri = TriangulatedBoundary { base: sym.clone(), triangles };
    Ok((sym, tri))
}
