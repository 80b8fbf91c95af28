use polyiso::geometry::{Polygon2, Polytope3};
use polyiso::strange::{
    feasible, realize, shoelace_area, strange5_ratio, strange_s, strange_v, Profile, StrangeParams,
};
use polyiso::Vec3;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_feasible(rng: &mut impl Rng) -> StrangeParams {
    loop {
        let mut xs = [rng.gen_range(0.0..6.5), rng.gen_range(0.0..6.5), rng.gen_range(0.0..6.5)];
        xs.sort_by(f64::total_cmp);
        // bias toward small bodies, where the area constraint bites
        let s = if rng.gen_bool(0.5) { 1.0 } else { 0.2 };
        let p = StrangeParams::new(xs[0] * s, xs[1] * s, xs[2] * s, rng.gen_range(0.0..6.5), rng.gen_range(0.0..6.5));
        if feasible(&p, Profile::SixVertex) {
            return p;
        }
    }
}

#[test]
fn closed_forms_match_hull() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..2000 {
        let p = random_feasible(&mut rng);
        let body = realize(&p).unwrap();
        let (s, v) = (strange_s(&p), strange_v(&p));
        assert!((s - body.polytope.surface_area()).abs() <= 1e-9 * s, "{p:?}");
        assert!((v - body.polytope.volume()).abs() <= 1e-9 * v, "{p:?}");
    }
}

#[test]
fn volume_is_two_thirds_of_shoelace_area() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..1000 {
        let p = random_feasible(&mut rng);
        let q = shoelace_area(&p);
        assert!((q - p.base_area()).abs() <= 1e-12 * q);
        assert!((strange_v(&p) - 2.0 / 3.0 * q).abs() <= 1e-12 * q);
    }
}

#[test]
fn base_boundary_visits_points_in_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..1000 {
        let p = random_feasible(&mut rng);
        let mut b = p.base_points();
        b[1..].reverse(); // o, w5, w4, w3, w2, w1 is counterclockwise
        for k in 0..6 {
            let (a, c, d) = (b[k], b[(k + 1) % 6], b[(k + 2) % 6]);
            let turn = (c[0] - a[0]) * (d[1] - a[1]) - (c[1] - a[1]) * (d[0] - a[0]);
            assert!(turn >= -1e-12, "{p:?} turns clockwise at {}", (k + 1) % 6);
        }
        let poly = Polygon2::hull(&b, 1e-12);
        assert!(!poly.contains([0.0, 0.0], -1e-9));
    }
}

#[test]
fn realize_is_mirror_symmetric() {
    let body = realize(&StrangeParams::new(0.5, 1.0, 2.0, 1.0, 1.0)).unwrap();
    let m = body.polytope.map(|v| Vec3::new(v.x, -v.y, v.z)).unwrap();
    assert!(m.same_vertex_set(&body.polytope, 1e-12));
}

#[test]
fn strange5_matches_bipyramid_geometry() {
    for rho in [0.1, 0.5, 0.5f64.sqrt(), 1.0, 2f64.sqrt(), 3.0, 20.0] {
        let r = 2.0 * rho;
        let mut pts = vec![Vec3::E3, -Vec3::E3];
        for k in 0..3 {
            let a = 2.0 * std::f64::consts::PI * k as f64 / 3.0;
            pts.push(Vec3::new(r * a.cos(), r * a.sin(), 0.0));
        }
        let geom = Polytope3::hull(&pts).unwrap().isoperimetric_ratio().unwrap();
        let f = strange5_ratio(rho).unwrap();
        assert!((geom - f).abs() <= 1e-9 * f, "rho {rho}: {geom} vs {f}");
    }
}

#[test]
fn strange5_lower_bound_on_grid() {
    let min = 243.0;
    let argmin = 0.5f64.sqrt();
    let mut rho: f64 = 0.01;
    while rho <= 100.0 {
        let f = strange5_ratio(rho).unwrap();
        assert!(f >= min * (1.0 - 1e-14));
        if (rho - argmin).abs() > 1e-3 {
            assert!(f > min);
        }
        rho *= 1.001;
    }
}
