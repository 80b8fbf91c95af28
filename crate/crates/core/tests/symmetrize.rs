mod common;

use common::{random_in_ball, random_unit, rel_close};
use polyiso::geometry::{shapes, TriangulatedBoundary};
use polyiso::symmetrize::{
    bipyramid_symmetral, envelopes, find_apex_pair, jensen_bound, octahedral_pipeline, schwarz_lower_bound,
    steiner_symmetral, ApexPair,
};
use polyiso::{Error, Polytope3, Vec3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SQRT3: f64 = 1.732_050_807_568_877_2;

fn reflect(v: Vec3, u: Vec3) -> Vec3 {
    v - u * (2.0 * v.dot(u))
}

#[test]
fn envelopes_of_cube_and_octahedron() {
    let cube = shapes::unit_cube();
    let e = envelopes(&cube, Vec3::E3).unwrap();
    for x in [[0.1, 0.2], [0.5, 0.5], [0.9, 0.3]] {
        assert!((e.upper.eval(x) - 1.0).abs() < 1e-14);
        assert!(e.lower.eval(x).abs() < 1e-14);
    }
    let oct = shapes::octahedron(1.0, 1.0, 1.0);
    let e = envelopes(&oct, Vec3::E3).unwrap();
    assert_eq!(e.upper.cells.len(), 4);
    assert_eq!(e.lower.cells.len(), 4);
    for x in [[0.1f64, 0.2], [-0.3, 0.5], [0.0, -0.7]] {
        let expect = 1.0 - x[0].abs() - x[1].abs();
        assert!((e.upper.eval(x) - expect).abs() < 1e-14);
        assert!((e.lower.eval(x) - expect).abs() < 1e-14);
    }
}

#[test]
fn tetrahedron_envelopes_have_two_cells_and_linear_sum_on_overlay() {
    let tet = shapes::regular_tetrahedron();
    let e = envelopes(&tet, Vec3::E3).unwrap();
    assert_eq!(e.upper.cells.len(), 2);
    assert_eq!(e.lower.cells.len(), 2);
    // f + g is affine on every overlay cell: check midpoint-linearity on random
    // triangles inside a single (upper, lower) cell pair
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut checked = 0;
    while checked < 200 {
        let pts: Vec<[f64; 2]> = (0..3).map(|_| [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)]).collect();
        let cu = pts.iter().map(|&x| e.upper.cell_at(x, -1e-9)).collect::<Vec<_>>();
        let cl = pts.iter().map(|&x| e.lower.cell_at(x, -1e-9)).collect::<Vec<_>>();
        if cu.iter().any(Option::is_none) || cl.iter().any(Option::is_none) || cu.iter().any(|c| *c != cu[0]) || cl.iter().any(|c| *c != cl[0]) {
            continue;
        }
        let h = |x: [f64; 2]| e.upper.eval(x) + e.lower.eval(x);
        let m = [(pts[0][0] + pts[1][0] + pts[2][0]) / 3.0, (pts[0][1] + pts[1][1] + pts[2][1]) / 3.0];
        assert!((h(m) - (h(pts[0]) + h(pts[1]) + h(pts[2])) / 3.0).abs() < 1e-12);
        checked += 1;
    }
}

#[test]
fn envelope_invariants_on_random_bodies() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let pts: Vec<Vec3> = (0..rng.gen_range(4..=10)).map(|_| random_in_ball(&mut rng, 2.0)).collect();
        let Ok(p) = Polytope3::hull(&pts) else { continue };
        let u = random_unit(&mut rng);
        let e = envelopes(&p, u).unwrap();
        // continuity: every cell corner is reproduced by the min-of-affine formula
        for env in [&e.upper, &e.lower] {
            for c in &env.cells {
                for &x in &c.polygon.vertices {
                    assert!((c.value(x) - env.eval(x)).abs() < 1e-9);
                }
            }
        }
        for _ in 0..20 {
            let a = e.to_2d(p.vertices()[rng.gen_range(0..p.n_vertices())]);
            let b = e.to_2d(p.vertices()[rng.gen_range(0..p.n_vertices())]);
            let s = rng.gen_range(0.0..1.0);
            let m = [a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1])];
            // f + g >= 0 on the domain and both envelopes concave
            assert!(e.upper.eval(m) + e.lower.eval(m) >= -1e-9);
            for env in [&e.upper, &e.lower] {
                assert!(env.eval(m) >= (1.0 - s) * env.eval(a) + s * env.eval(b) - 1e-9);
            }
            // the chord through m agrees with the envelopes
            let (lo, hi) = p.chord(e.to_plane(m), e.u).unwrap();
            assert!((hi - e.upper.eval(m)).abs() < 1e-8 && (lo + e.lower.eval(m)).abs() < 1e-8);
        }
    }
}

#[test]
fn symmetral_fixed_points_and_translates() {
    let oct = shapes::octahedron(1.0, 1.0, 1.0);
    let s = steiner_symmetral(&oct, Vec3::E3).unwrap();
    assert!(s.same_vertex_set(&oct, 1e-12));

    let cube = shapes::unit_cube();
    let s = steiner_symmetral(&cube, Vec3::E3).unwrap();
    assert!(rel_close(s.volume(), 1.0, 1e-12) && rel_close(s.surface_area(), 6.0, 1e-12));
    assert!(s.vertices().iter().all(|v| (v.z.abs() - 0.5).abs() < 1e-12));
    assert!(s.is_translate_of(&cube, 1e-9));

    // the regular tetrahedron is mirror-symmetric across the bisector of any edge,
    // so symmetrizing along an edge gives back a translate
    let tet = shapes::regular_tetrahedron();
    let v = tet.vertices();
    let s = steiner_symmetral(&tet, v[0] - v[1]).unwrap();
    assert_eq!(s.n_vertices(), 4);
    assert!(rel_close(s.volume(), 8.0 / 3.0, 1e-12));
    assert!(rel_close(s.surface_area(), 8.0 * SQRT3, 1e-12));
    assert!(s.is_translate_of(&tet, 1e-9));
}

/// Monte-Carlo volume oracle: fraction of box samples inside the symmetral.
#[test]
fn symmetral_volume_matches_monte_carlo() {
    let tet = Polytope3::hull(&[
        Vec3::new(0.0, 0.0, 0.0),
        Vec3::new(2.0, 0.3, 0.1),
        Vec3::new(0.4, 1.5, -0.2),
        Vec3::new(0.5, 0.6, 1.8),
    ])
    .unwrap();
    let u = Vec3::new(0.3, -0.5, 0.8);
    let s = steiner_symmetral(&tet, u).unwrap();
    assert!(s.surface_area() < tet.surface_area());
    let mut lo = [f64::INFINITY; 3];
    let mut hi = [f64::NEG_INFINITY; 3];
    for v in s.vertices() {
        for k in 0..3 {
            lo[k] = lo[k].min(v[k]);
            hi[k] = hi[k].max(v[k]);
        }
    }
    let box_vol: f64 = (0..3).map(|k| hi[k] - lo[k]).product();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let n = 1_000_000;
    let mut hits = 0u64;
    for _ in 0..n {
        let p = Vec3::new(rng.gen_range(lo[0]..hi[0]), rng.gen_range(lo[1]..hi[1]), rng.gen_range(lo[2]..hi[2]));
        if s.contains(p, 0.0) {
            hits += 1;
        }
    }
    let frac = hits as f64 / n as f64;
    let est = frac * box_vol;
    let sigma = box_vol * (frac * (1.0 - frac) / n as f64).sqrt();
    assert!((est - tet.volume()).abs() <= 3.0 * sigma, "MC {est} +- {sigma} vs {}", tet.volume());
}

#[test]
fn apex_pairs_by_exhaustive_scan() {
    let brute = |t: &TriangulatedBoundary| {
        let n = t.n_vertices();
        let adj = t.adjacency();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let adj_ok = (0..n).filter(|&k| k != i && k != j).all(|k| adj[i][k] && adj[j][k]);
                let tri_ok = t.triangles.iter().all(|tr| tr.contains(&i) || tr.contains(&j));
                if adj_ok && tri_ok {
                    out.push((i, j));
                }
            }
        }
        out
    };
    // octahedron: exactly the three antipodal pairs
    let oct = TriangulatedBoundary::fan(&shapes::octahedron(1.0, 1.0, 1.0));
    assert_eq!(brute(&oct), vec![(0, 3), (1, 4), (2, 5)]);
    assert_eq!(find_apex_pair(&oct), Some(ApexPair { i: 0, j: 3 }));

    // triangle bipyramid: the apex pair and every pair of equator vertices
    let bip = TriangulatedBoundary::fan(&shapes::triangle_bipyramid(1.0));
    let all = brute(&bip);
    assert_eq!(all.len(), 4);
    let first = find_apex_pair(&bip).unwrap();
    assert_eq!((first.i, first.j), all[0]);

    // six vertices with a degree-3 vertex: the two degree-5 vertices
    let p = Polytope3::hull(&[
        Vec3::new(1.0, 0.0, 0.0),
        Vec3::new(-1.0, 0.0, 0.0),
        Vec3::new(0.0, 1.0, 0.0),
        Vec3::new(0.0, -1.0, 0.0),
        Vec3::new(0.0, 0.0, 1.0),
        Vec3::new(0.45, 0.45, 0.45),
    ])
    .unwrap();
    let t = TriangulatedBoundary::fan(&p);
    let deg = t.vertex_degrees();
    assert!(deg.contains(&3));
    let pair = find_apex_pair(&t).unwrap();
    assert_eq!((deg[pair.i], deg[pair.j]), (5, 5));
    assert_eq!(brute(&t), vec![(pair.i, pair.j)]);

    // the fan triangulation of the cube joins two opposite corners to everything
    let cube = TriangulatedBoundary::fan(&shapes::unit_cube());
    let found = find_apex_pair(&cube).map(|p| (p.i, p.j));
    assert_eq!(found, brute(&cube).first().copied());
}

#[test]
fn bipyramid_symmetral_cases() {
    // already a double pyramid with the pair as apices: a translate
    let bip = shapes::triangle_bipyramid(1.3).translate(Vec3::new(0.2, -0.1, 0.4)).unwrap();
    let t = TriangulatedBoundary::fan(&bip);
    let apices = ApexPair { i: 0, j: 1 };
    let (s, st) = bipyramid_symmetral(&t, apices).unwrap();
    assert!(s.is_translate_of(&bip, 1e-9));
    assert!(st.is_isomorphic(&t));

    // invalid pair
    let oct = TriangulatedBoundary::fan(&shapes::octahedron(1.0, 1.0, 1.0));
    assert!(matches!(bipyramid_symmetral(&oct, ApexPair { i: 0, j: 1 }), Err(Error::InvalidApexPair(_))));

    // simplex plus one point -> 5-vertex double pyramid
    let p = Polytope3::hull(&[
        Vec3::new(0.1, 0.2, -1.1),
        Vec3::new(-0.2, 0.1, 0.9),
        Vec3::new(1.0, 0.1, 0.2),
        Vec3::new(-0.6, 0.9, -0.1),
        Vec3::new(-0.4, -1.0, 0.3),
    ])
    .unwrap();
    let t = TriangulatedBoundary::fan(&p);
    let pair = find_apex_pair(&t).unwrap();
    let (s, st) = bipyramid_symmetral(&t, pair).unwrap();
    assert_eq!(s.n_vertices(), 5);
    assert!(rel_close(s.volume(), p.volume(), 1e-9));
    assert!(st.is_isomorphic(&t));
    st.validate().unwrap();
}

#[test]
fn degree_three_hexahedron_symmetrizes_to_strange_shape() {
    let p = Polytope3::hull(&[
        Vec3::new(1.0, 0.1, 0.0),
        Vec3::new(-1.0, 0.0, 0.2),
        Vec3::new(0.1, 1.0, 0.0),
        Vec3::new(0.0, -1.0, 0.1),
        Vec3::new(0.0, 0.2, 1.0),
        Vec3::new(0.5, 0.5, 0.55),
    ])
    .unwrap();
    let t = TriangulatedBoundary::fan(&p);
    let pair = find_apex_pair(&t).unwrap();
    let (s, st) = bipyramid_symmetral(&t, pair).unwrap();
    assert!(st.is_isomorphic(&t));
    let vi = s.vertices()[pair.i];
    let vj = s.vertices()[pair.j];
    let axis = (vj - vi).normalized().unwrap();
    let mid = (vi + vj) * 0.5;
    // all non-apex vertices lie in the plane through the apex midpoint
    for (k, v) in s.vertices().iter().enumerate() {
        if k != pair.i && k != pair.j {
            assert!((*v - mid).dot(axis).abs() < 1e-9);
        }
    }
    // rescaled so the apices are +-e, the apex foot lies on the base boundary
    let base: Vec<[f64; 2]> = {
        let (e1, e2) = polyiso::geometry::projection_frame(axis).unwrap();
        s.vertices()
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != pair.i && *k != pair.j)
            .map(|(_, v)| [(*v - mid).dot(e1), (*v - mid).dot(e2)])
            .collect()
    };
    // the base is the hull of these and the apex foot; the foot is on its boundary
    let mut with_foot = base.clone();
    with_foot.push([0.0, 0.0]);
    let poly = polyiso::geometry::Polygon2::hull(&with_foot, 1e-12);
    for b in &base {
        assert!(poly.vertices.iter().any(|v| (v[0] - b[0]).hypot(v[1] - b[1]) < 1e-12));
    }
    assert!(!poly.contains([0.0, 0.0], -1e-9), "apex foot must be on the boundary of the base");
}

#[test]
fn octahedral_pipeline_examples() {
    let r = octahedral_pipeline(&shapes::octahedron(1.0, 1.0, 1.0)).unwrap();
    for t in r.t {
        assert!((t - 1.0).abs() < 1e-12);
    }
    let r = octahedral_pipeline(&shapes::octahedron(2.0, 1.0, 1.0)).unwrap();
    assert!((r.t[0] - 2.0).abs() < 1e-12 && (r.t[1] - 1.0).abs() < 1e-12 && (r.t[2] - 1.0).abs() < 1e-12);
    assert!(matches!(octahedral_pipeline(&shapes::unit_cube()), Err(Error::NotOctahedralType(_))));
}

#[test]
fn jensen_bound_values() {
    assert!(rel_close(jensen_bound([1.0, 1.0, 1.0]).unwrap(), 108.0 * SQRT3, 1e-14));
    assert!(rel_close(jensen_bound([2.0, 1.0, 1.0]).unwrap(), 243.0, 1e-14));
    let hull_ratio = shapes::octahedron(2.0, 1.0, 1.0).isoperimetric_ratio().unwrap();
    assert!(rel_close(hull_ratio, 243.0, 1e-12));
    let j = jensen_bound([1.0, 1.0, 4.0]).unwrap();
    assert!(rel_close(j, 144.0 * (2.0f64 + 1.0 / 16.0).powf(1.5), 1e-14));
    assert!(rel_close(j, shapes::octahedron(1.0, 1.0, 4.0).isoperimetric_ratio().unwrap(), 1e-9));
    assert!(jensen_bound([0.0, 1.0, 1.0]).is_err());
}

#[test]
fn schwarz_bound_values() {
    let pi = std::f64::consts::PI;
    assert!(rel_close(schwarz_lower_bound(pi / 2.0).unwrap(), 27.0 * SQRT3 * pi, 1e-14));
    let a = schwarz_lower_bound(0.411).unwrap();
    assert!(a > 188.0 && a < 188.01);
    assert!(schwarz_lower_bound(15.0).unwrap() > 344.0);
    assert!(schwarz_lower_bound(0.0).is_err());
}

#[test]
fn symmetral_reflection_and_idempotence() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..100 {
        let pts: Vec<Vec3> = (0..rng.gen_range(4..=10)).map(|_| random_in_ball(&mut rng, 6.5)).collect();
        let Ok(p) = Polytope3::hull(&pts) else { continue };
        let u = random_unit(&mut rng);
        let s = steiner_symmetral(&p, u).unwrap();
        let tol = 1e-9 * p.diameter();
        let refl = s.map(|v| reflect(v, u)).unwrap();
        assert!(refl.same_vertex_set(&s, tol));
        let s2 = steiner_symmetral(&s, u).unwrap();
        assert!(s2.same_vertex_set(&s, tol));
        assert!(rel_close(s.volume(), p.volume(), 1e-8));
        assert!(s.surface_area() <= p.surface_area() * (1.0 + 1e-8));
        assert!(s.circumradius_origin() <= 6.5 + 1e-9);
    }
}
