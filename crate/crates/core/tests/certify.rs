use polyiso::certify::minimize::{certify_min_1d_with, JensenSymmetric, SchwarzF, Strange5Ratio};
use polyiso::certify::sampling::halton_min_g;
use polyiso::certify::{
    branch_and_bound, branch_and_bound_with, certify_lemma_distanceest, certify_lemma_volumeest, certify_min_1d,
    revalidate, Budget, Certificate, ConstraintKind, ConstraintSet, LeafStatus, RunOptions,
};
use polyiso::interval::eval_g;
use polyiso::strange::{feasible_with, strange_g, Profile, StrangeParams};
use polyiso::{Box5, Error, Interval, Partial};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{PI, SQRT_2};

fn g_oracle(p: [f64; 5]) -> f64 {
    let [x1, x2, x3, y1, y2] = p;
    let d = x2 * y1 - x1 * y2;
    let s = 2.0 * (x1 * x1 + y1 * y1).sqrt()
        + 2.0 * ((x1 - x2).powi(2) + (y1 - y2).powi(2) + d * d).sqrt()
        + 2.0 * (y2 * y2 + (x3 - x2).powi(2) + x3 * x3 * y2 * y2).sqrt();
    let v = 2.0 / 3.0 * (d + x3 * y2);
    s.powi(3) - 188.0 * v * v
}

// a corner of the domain away from the minimiser, cheap to certify
fn patch() -> Box5 {
    Box5::from_bounds([[1.0, 1.5], [1.25, 2.0], [2.0, 3.0], [1.0, 1.5], [0.5, 1.0]]).unwrap()
}

fn patch_cert(jobs: usize) -> Certificate {
    branch_and_bound_with(
        &patch(),
        &ConstraintSet::six_vertex(),
        3.44,
        &Budget::default(),
        &mut RunOptions { jobs: Some(jobs), ..Default::default() },
    )
    .unwrap()
}

#[test]
fn tiny_root_is_one_infeasible_leaf() {
    let root = Box5::cube(0.0, 0.1).unwrap();
    let cs = ConstraintSet::six_vertex();
    let c = branch_and_bound(&root, &cs, 3.44, &Budget::default()).unwrap();
    assert_eq!(c.leaves.len(), 1);
    match &c.leaves[0].status {
        LeafStatus::Infeasible { constraint, enclosure } => {
            assert!(matches!(cs.constraints[*constraint].kind, ConstraintKind::AreaMin { .. }));
            // area term is at most 0.1*0.1 + 0.1*0.1 = 0.02 over the box
            assert!(enclosure.hi() < 0.02 - 0.411 + 1e-12);
        }
        s => panic!("unexpected {s:?}"),
    }
    assert_eq!(c.global_margin, None);
    assert!(c.holds());
}

#[test]
fn point_like_root_is_one_verified_leaf() {
    let root = Box5::from_bounds([[0.0, 1e-9], [1.0, 1.0 + 1e-9], [1.0, 1.0 + 1e-9], [1.0, 1.0 + 1e-9], [1.0, 1.0 + 1e-9]])
        .unwrap();
    let c = branch_and_bound(&root, &ConstraintSet::six_vertex(), 3.44, &Budget::default()).unwrap();
    assert_eq!(c.leaves.len(), 1);
    let expect = (2.0 + 4.0 * SQRT_2).powi(3) - 188.0 * 16.0 / 9.0;
    assert!((expect - 114.679).abs() < 1e-3);
    let m = c.global_margin.unwrap();
    assert!(m <= expect && expect - m < 1e-5, "{m} vs {expect}");
}

#[test]
fn patch_certificate_is_sound_and_complete() {
    let c = patch_cert(1);
    assert!(c.holds());
    assert!(c.stats.verified > 0);

    // partition: leaf volumes add up to the root volume
    let total: f64 = c.leaves.iter().map(|l| l.bx.volume()).sum();
    assert!((total - c.root.volume()).abs() <= 1e-9 * c.root.volume());

    // pointwise soundness in every verified leaf
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let t = Profile::SixVertex.thresholds();
    let mut checked = 0;
    for l in &c.leaves {
        let LeafStatus::Verified { lower_bound, .. } = l.status else {
            continue;
        };
        assert!(lower_bound > 3.44);
        for _ in 0..32 {
            let p = l.bx.at(std::array::from_fn(|_| rng.gen()));
            if feasible_with(&StrangeParams::from_array(p), &t) {
                assert!(g_oracle(p) >= lower_bound - 1e-9 * g_oracle(p).abs(), "{p:?}");
                checked += 1;
            }
        }
    }
    assert!(checked > 1000);

    let min_leaf = c.leaves.iter().filter_map(|l| l.lower_bound()).fold(f64::INFINITY, f64::min);
    assert_eq!(c.global_margin, Some(min_leaf));
    let r = revalidate(&c).unwrap();
    assert_eq!(r.leaves, c.leaves.len());
    assert_eq!(r.global_margin, c.global_margin);

    // sampling can only overestimate the minimum
    let s = halton_min_g(&c.root, &c.constraints, 20_000);
    assert!(s.min_g >= c.global_margin.unwrap());
}

#[test]
fn certificates_round_trip_and_are_deterministic() {
    let a = patch_cert(1);
    let mut b = patch_cert(2);
    b.stats.seconds = a.stats.seconds;
    assert_eq!(a, b);
    let back = Certificate::from_json(&a.to_json().unwrap()).unwrap();
    assert_eq!(back, a);
    assert_eq!(revalidate(&back).unwrap().global_margin, a.global_margin);
    let v: serde_json::Value = serde_json::from_str(&a.to_json().unwrap()).unwrap();
    for key in ["claim", "threshold", "rounding", "root", "constraints", "leaves", "stats", "global_margin"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    let leaf = &v["leaves"][0];
    assert!(leaf["box"].as_array().unwrap().len() == 5);
    assert!(leaf["status"].is_string() && leaf.get("bound_or_violation").is_some());
}

#[test]
fn tampered_certificates_are_rejected() {
    let c = patch_cert(1);
    let mut missing = c.clone();
    missing.leaves.pop();
    assert!(revalidate(&missing).is_err());

    let mut inflated = c.clone();
    let i = inflated.leaves.iter().position(|l| l.is_verified()).unwrap();
    if let LeafStatus::Verified { lower_bound, .. } = &mut inflated.leaves[i].status {
        *lower_bound += 1e6;
    }
    assert!(revalidate(&inflated).is_err());

    let mut margin = c.clone();
    margin.global_margin = margin.global_margin.map(|m| m + 1.0);
    assert!(revalidate(&margin).is_err());

    let mut higher = c;
    higher.threshold = 1e12;
    assert!(revalidate(&higher).is_err());
}

#[test]
fn deeper_budget_keeps_verified_leaves() {
    let shallow = patch_cert(1);
    let deep = branch_and_bound(
        &patch(),
        &ConstraintSet::six_vertex(),
        3.44,
        &Budget { max_depth: 200, ..Budget::default() },
    )
    .unwrap();
    assert_eq!(shallow.leaves, deep.leaves);
}

#[test]
fn budget_exhaustion_reports_unresolved_bound() {
    let root = Box5::cube(0.0, 6.5).unwrap();
    let budget = Budget { max_boxes: 2000, ..Budget::default() };
    let err = branch_and_bound(&root, &ConstraintSet::six_vertex(), 3.44, &budget).unwrap_err();
    let Error::BudgetExceeded(p) = err else { panic!("{err}") };
    let Partial::Search(p) = *p else { panic!("wrong partial") };
    assert!(!p.unresolved.is_empty());
    assert!(p.certificate.stats.boxes <= 2000);
    let bound = p.min_unresolved_bound.unwrap();
    // the bound is a lower bound for G over the unresolved region
    let s = halton_min_g(&root, &ConstraintSet::six_vertex(), 5000);
    assert!(bound <= s.min_g);
    for u in &p.unresolved {
        assert!(u.lower_bound.unwrap() >= bound);
    }
    // resolved part plus unresolved part covers the root
    let vol: f64 = p.certificate.leaves.iter().map(|l| l.bx.volume()).sum::<f64>()
        + p.unresolved.iter().map(|u| u.bx.volume()).sum::<f64>();
    assert!((vol - root.volume()).abs() <= 1e-9 * root.volume());
}

#[test]
fn budget_limits_are_checked() {
    let root = Box5::cube(0.0, 6.5).unwrap();
    let cs = ConstraintSet::six_vertex();
    let depth = branch_and_bound(&root, &cs, 3.44, &Budget { max_depth: 3, ..Budget::default() });
    assert!(matches!(depth, Err(Error::BudgetExceeded(_))));
    let time = branch_and_bound(&root, &cs, 3.44, &Budget { max_seconds: 1e-9, ..Budget::default() });
    assert!(matches!(time, Err(Error::BudgetExceeded(_))));
    assert!(branch_and_bound(&root, &cs, f64::NAN, &Budget::default()).is_err());
}

#[test]
fn g_enclosures_contain_point_values() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20_000 {
        let lo: [f64; 5] = std::array::from_fn(|_| rng.gen_range(0.0..6.0));
        let w: [f64; 5] = std::array::from_fn(|_| rng.gen_range(0.0..0.5f64).powi(2));
        let b = Box5::from_bounds(std::array::from_fn(|i| [lo[i], lo[i] + w[i]])).unwrap();
        let p = b.at(std::array::from_fn(|_| rng.gen()));
        let g = eval_g(&b).unwrap();
        let exact = g_oracle(p);
        assert!(g.lo() <= exact + 1e-9 * exact.abs() && exact - 1e-9 * exact.abs() <= g.hi());
        assert!(g.contains(strange_g(&StrangeParams::from_array(p))) || g.width() == 0.0);
    }
}

#[test]
fn strange5_minimum_enclosures() {
    let m = certify_min_1d(&Strange5Ratio, Interval::new(0.1, 100.0).unwrap(), 1e-6).unwrap();
    assert!(m.argmin.width() <= 1e-6 && m.min.width() <= 1e-6);
    // d/dr of (1 + r^2)^(3/2) / r vanishes at r^2 = 1/2
    assert!(m.argmin.contains(0.5f64.sqrt()));
    let at = 54.0 * 3f64.sqrt() * 1.5f64.powf(1.5) / 0.5f64.sqrt();
    assert!((at - 243.0).abs() < 1e-9);
    assert!(m.min.contains(243.0));
    assert!(!m.argmin.contains(SQRT_2));
    assert!(!m.min.contains(243.0 * SQRT_2));
}

#[test]
fn schwarz_and_jensen_minima() {
    let m = certify_min_1d(&SchwarzF, Interval::new(0.05, 20.0).unwrap(), 1e-7).unwrap();
    assert!(m.argmin.contains(PI / 2.0));
    assert!(m.min.contains(27.0 * PI * PI / 4.0));
    assert!(m.argmin.width() <= 1e-7);

    let j = certify_min_1d(&JensenSymmetric, Interval::new(0.2, 5.0).unwrap(), 1e-7).unwrap();
    assert!(j.argmin.contains(1.0));
    assert!(j.min.contains(108.0 * 3f64.sqrt()));
    // finite differences agree that t = 1 is the minimiser
    let h = |t: f64| 36.0 * t * (2.0 + 1.0 / (t * t)).powf(1.5);
    assert!(h(1.0 - 1e-4) > h(1.0) && h(1.0 + 1e-4) > h(1.0));
}

#[test]
fn bisection_budget_and_domain_errors() {
    let tight = certify_min_1d_with(&SchwarzF, Interval::new(0.05, 20.0).unwrap(), 1e-12, 10);
    match tight {
        Err(Error::BudgetExceeded(p)) => {
            let Partial::Bisection(p) = *p else { panic!("wrong partial") };
            assert!(p.min_lower <= 27.0 * PI * PI / 4.0 && 27.0 * PI * PI / 4.0 <= p.min_upper);
        }
        r => panic!("{r:?}"),
    }
    assert!(certify_min_1d(&SchwarzF, Interval::new(0.05, 20.0).unwrap(), 0.0).is_err());
}

#[test]
fn volume_threshold_report() {
    let r = certify_lemma_volumeest().unwrap();
    assert_eq!(r.claims.len(), 8);
    assert!(r.all_certified());
    let f = |q: f64| 18.0 * ((PI + q).powi(3) / q).sqrt();
    for (c, (q, bound)) in r.claims.iter().zip([(0.411, 188.0), (5.1, 188.0), (0.09, 344.0), (15.0, 344.0)]) {
        assert!(c.enclosure.lo() > bound);
        assert!((c.enclosure.mid() - f(q)).abs() < 1e-9 * f(q));
        assert!(c.enclosure.width() < 1e-9);
    }
    assert!(r.claims[0].enclosure.hi() < 188.01);
    assert!((r.claims[1].enclosure.mid() - 188.58).abs() < 0.01);
    assert!((r.claims[2].enclosure.mid() - 348.56).abs() < 0.01);
}

#[test]
fn distance_threshold_report() {
    let r = certify_lemma_distanceest().unwrap();
    assert!(r.all_certified());
    assert!(r.claims[0].enclosure.contains(8.0 * 6.5f64.powi(3) / (3.4 * 3.4)));
    assert!((r.claims[0].enclosure.mid() - 190.0519).abs() < 1e-4);
    assert!((r.claims[1].enclosure.mid() - 393.04).abs() < 1e-9);
    assert!(r.claims[2].enclosure.lo() > 0.0);
}
