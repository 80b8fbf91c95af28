use std::collections::{BTreeSet, HashMap};

use super::Polytope3;
use crate::error::{Error, Result};

/// Boundary triangulation using only polytope vertices.
#[derive(Clone, Debug)]
pub struct TriangulatedBoundary {
    pub base: Polytope3,
    pub triangles: Vec<[usize; 3]>,
}

impl TriangulatedBoundary {
    /// Fan triangulation of every facet from its lowest-index corner.
    pub fn fan(base: &Polytope3) -> Self {
        let mut triangles = Vec::new();
        for f in base.facets() {
            let c = &f.vertices;
            let start = (0..c.len()).min_by_key(|&k| c[k]).unwrap();
            let n = c.len();
            for k in 1..n - 1 {
                triangles.push([c[start], c[(start + k) % n], c[(start + k + 1) % n]]);
            }
        }
        TriangulatedBoundary {
            base: base.clone(),
            triangles,
        }
    }

    pub fn n_vertices(&self) -> usize {
        self.base.n_vertices()
    }

    /// Undirected edges `(i, j)`, `i < j`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let set: BTreeSet<(usize, usize)> = self
            .triangles
            .iter()
            .flat_map(|t| [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])])
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        set.into_iter().collect()
    }

    pub fn adjacency(&self) -> Vec<Vec<bool>> {
        let n = self.n_vertices();
        let mut adj = vec![vec![false; n]; n];
        for (a, b) in self.edges() {
            adj[a][b] = true;
            adj[b][a] = true;
        }
        adj
    }

    /// Number of triangulation edges at each vertex.
    pub fn vertex_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n_vertices()];
        for (a, b) in self.edges() {
            d[a] += 1;
            d[b] += 1;
        }
        d
    }

    /// Checks the closed-surface conditions: every edge in exactly two
    /// triangles with opposite orientations, degree sum `6n - 12`, and
    /// `3 <= d_i <= n - 1`.
    pub fn validate(&self) -> Result<()> {
        let n = self.n_vertices();
        let mut directed: HashMap<(usize, usize), usize> = HashMap::new();
        for t in &self.triangles {
            if t[0] == t[1] || t[1] == t[2] || t[0] == t[2] || t.iter().any(|&v| v >= n) {
                return Err(Error::DegenerateInput(format!("bad triangle {t:?}")));
            }
            for e in [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])] {
                *directed.entry(e).or_default() += 1;
            }
        }
        for (&(a, b), &c) in &directed {
            if c != 1 || directed.get(&(b, a)) != Some(&1) {
                return Err(Error::DegenerateInput(format!("edge ({a},{b}) is not shared by exactly two triangles")));
            }
        }
        let d = self.vertex_degrees();
        let sum: usize = d.iter().sum();
        if sum + 12 != 6 * n {
            return Err(Error::DegenerateInput(format!("degree sum {sum} != 6n-12 for n={n}")));
        }
        if let Some(bad) = d.iter().find(|&&x| x < 3 || x > n - 1) {
            return Err(Error::DegenerateInput(format!("vertex degree {bad} outside [3, n-1]")));
        }
        Ok(())
    }

    /// Combinatorial isomorphism: a vertex bijection mapping edges to edges
    /// and triangles to triangles. Returns the bijection when one exists.
    pub fn isomorphism(&self, other: &TriangulatedBoundary) -> Option<Vec<usize>> {
        let n = self.n_vertices();
        if n != other.n_vertices() || self.triangles.len() != other.triangles.len() {
            return None;
        }
        let (da, db) = (self.vertex_degrees(), other.vertex_degrees());
        let mut sa = da.clone();
        let mut sb = db.clone();
        sa.sort_unstable();
        sb.sort_unstable();
        if sa != sb {
            return None;
        }
        let (aa, ab) = (self.adjacency(), other.adjacency());
        let tri_b: BTreeSet<[usize; 3]> = other.triangles.iter().map(|t| sorted(*t)).collect();
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        fn search(
            k: usize,
            map: &mut Vec<usize>,
            used: &mut Vec<bool>,
            ctx: &(&[usize], &[usize], &Vec<Vec<bool>>, &Vec<Vec<bool>>, &[[usize; 3]], &BTreeSet<[usize; 3]>),
        ) -> bool {
            let (da, db, aa, ab, tri_a, tri_b) = *ctx;
            let n = da.len();
            if k == n {
                return tri_a
                    .iter()
                    .all(|t| tri_b.contains(&sorted([map[t[0]], map[t[1]], map[t[2]]])));
            }
            for c in 0..n {
                if used[c] || da[k] != db[c] {
                    continue;
                }
                if (0..k).any(|j| aa[k][j] != ab[c][map[j]]) {
                    continue;
                }
                map[k] = c;
                used[c] = true;
                if search(k + 1, map, used, ctx) {
                    return true;
                }
                used[c] = false;
            }
            map[k] = usize::MAX;
            false
        }
        let ctx = (&da[..], &db[..], &aa, &ab, &self.triangles[..], &tri_b);
        search(0, &mut map, &mut used, &ctx).then_some(map)
    }

    pub fn is_isomorphic(&self, other: &TriangulatedBoundary) -> bool {
        self.isomorphism(other).is_some()
    }
}

fn sorted(mut t: [usize; 3]) -> [usize; 3] {
    t.sort_unstable();
    t
}
