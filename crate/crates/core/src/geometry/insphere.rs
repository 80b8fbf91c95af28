use serde::{Deserialize, Serialize};

use super::{Polytope3, Vec3};

/// Largest inscribed ball (Chebyshev center).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Insphere {
    pub center: Vec3,
    pub radius: f64,
    /// Facets whose plane lies at distance `radius` from the center (within tolerance).
    pub touching: Vec<usize>,
}

impl Insphere {
    pub fn touches_all(&self, p: &Polytope3) -> bool {
        self.touching.len() == p.facets().len()
    }
}

/// Dense simplex for `max c.z  s.t.  A z <= b, z >= 0` with `b >= 0`,
/// started from the slack basis. Bland's rule prevents cycling.
/// Returns `None` when unbounded.
pub(crate) fn simplex_max(a: &[Vec<f64>], b: &[f64], c: &[f64]) -> Option<Vec<f64>> {
    let m = a.len();
    let n = c.len();
    let w = n + m + 1;
    let mut t = vec![vec![0.0; w]; m + 1];
    for i in 0..m {
        t[i][..n].copy_from_slice(&a[i]);
        t[i][n + i] = 1.0;
        t[i][w - 1] = b[i];
    }
    for j in 0..n {
        t[m][j] = -c[j];
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    const TOL: f64 = 1e-12;
    for _ in 0..10_000 {
        let Some(col) = (0..n + m).find(|&j| t[m][j] < -TOL) else {
            break;
        };
        let mut row = None;
        let mut best = f64::INFINITY;
        for i in 0..m {
            if t[i][col] > TOL {
                let r = t[i][w - 1] / t[i][col];
                if r < best - 1e-15 || (r <= best + 1e-15 && row.is_some_and(|k: usize| basis[i] < basis[k])) {
                    best = r;
                    row = Some(i);
                }
            }
        }
        let r = row?;
        let p = t[r][col];
        for v in t[r].iter_mut() {
            *v /= p;
        }
        for i in 0..=m {
            if i != r {
                let f = t[i][col];
                if f != 0.0 {
                    for j in 0..w {
                        t[i][j] -= f * t[r][j];
                    }
                }
            }
        }
        basis[r] = col;
    }
    let mut z = vec![0.0; n];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n {
            z[bv] = t[i][w - 1];
        }
    }
    Some(z)
}

/// Chebyshev center of `P` from the LP `max r s.t. n_f . c + r <= d_f`.
pub fn insphere(p: &Polytope3) -> Insphere {
    let c0 = p.centroid();
    // shift to c = c0 + d+ - d-, so b_f = d_f - n_f.c0 > 0 and the origin is feasible
    let rows: Vec<Vec<f64>> = p
        .facets()
        .iter()
        .map(|f| {
            let n = f.normal;
            vec![n.x, n.y, n.z, -n.x, -n.y, -n.z, 1.0]
        })
        .collect();
    let b: Vec<f64> = p.facets().iter().map(|f| (-f.signed_dist(c0)).max(0.0)).collect();
    let cost = [0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0];
    let z = simplex_max(&rows, &b, &cost).expect("Chebyshev LP is bounded for a polytope");
    let center = c0 + Vec3::new(z[0] - z[3], z[1] - z[4], z[2] - z[5]);
    // recompute the radius from the center for consistency
    let dists: Vec<f64> = p.facets().iter().map(|f| -f.signed_dist(center)).collect();
    let radius = dists.iter().copied().fold(f64::INFINITY, f64::min);
    let tol = 1e-9 * p.scale().max(radius);
    let touching = dists
        .iter()
        .enumerate()
        .filter(|(_, &d)| d - radius <= tol)
        .map(|(i, _)| i)
        .collect();
    Insphere { center, radius, touching }
}
