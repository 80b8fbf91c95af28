use super::apex::{bipyramid_symmetral, ApexPair};
use crate::error::{Error, Result};
use crate::geometry::{Polytope3, TriangulatedBoundary};

/// Outcome of three successive symmetrizations of an octahedral-type body.
#[derive(Clone, Debug)]
pub struct OctahedralReduction {
    /// Half-diagonals `t1, t2, t3` of the final body `conv{+-t_i u_i}`.
    pub t: [f64; 3],
    /// Antipodal vertex pairs `(v1, v4), (v2, v5), (v3, v6)` in input numbering.
    pub pairs: [(usize, usize); 3],
    pub result: Polytope3,
}

/// Labels the six vertices so that `v_i` and `v_{i+3}` are the non-adjacent
/// pairs, taking the lowest free index for each `v_i`.
pub fn antipodal_pairs(t: &TriangulatedBoundary) -> Result<[(usize, usize); 3]> {
    let n = t.n_vertices();
    let deg = t.vertex_degrees();
    if n != 6 || deg.iter().any(|&d| d != 4) {
        return Err(Error::NotOctahedralType(format!("{n} vertices with degrees {deg:?}")));
    }
    let adj = t.adjacency();
    let mut used = [false; 6];
    let mut pairs = [(0, 0); 3];
    for slot in pairs.iter_mut() {
        let a = (0..6).find(|&k| !used[k]).unwrap();
        let b = (0..6)
            .find(|&k| k != a && !adj[a][k])
            .ok_or_else(|| Error::NotOctahedralType(format!("vertex {a} is adjacent to all others")))?;
        if used[b] {
            return Err(Error::NotOctahedralType("non-adjacency is not a perfect matching".into()));
        }
        used[a] = true;
        used[b] = true;
        *slot = (a, b);
    }
    Ok(pairs)
}

/// Symmetrizes along `v4 - v1`, then `v5' - v2'`, then `v6'' - v3''`.
pub fn octahedral_pipeline(p: &Polytope3) -> Result<OctahedralReduction> {
    let mut tri = TriangulatedBoundary::fan(p);
    tri.validate()?;
    let pairs = antipodal_pairs(&tri)?;
    let mut body = p.clone();
    for &(a, b) in &pairs {
        let (next, next_tri) = bipyramid_symmetral(&tri, ApexPair { i: a, j: b })?;
        body = next;
        tri = next_tri;
    }
    let v = body.vertices();
    let t = pairs.map(|(a, b)| 0.5 * v[a].dist(v[b]));
    Ok(OctahedralReduction { t, pairs, result: body })
}

/// `S^3 / V^2` of `conv{+-t_i u_i}` for orthonormal `u_i`:
/// `27 V (sum 1/t_i^2)^(3/2)` with `V = 4/3 t1 t2 t3`.
pub fn jensen_bound(t: [f64; 3]) -> Result<f64> {
    if t.iter().any(|&x| !(x > 0.0) || !x.is_finite()) {
        return Err(Error::DomainError(format!("half-diagonals must be positive, got {t:?}")));
    }
    let v = 4.0 / 3.0 * t[0] * t[1] * t[2];
    let s: f64 = t.iter().map(|x| 1.0 / (x * x)).sum();
    Ok(27.0 * v * s.powf(1.5))
}
