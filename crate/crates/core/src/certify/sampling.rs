//! Sampling oracles used to cross-check certificates.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use super::certificate::Certificate;
use super::constraints::ConstraintSet;
use crate::interval::Box5;
use crate::strange::{feasible, strange_g, Profile, StrangeParams};

const PRIMES: [u32; 5] = [2, 3, 5, 7, 11];

fn radical_inverse(mut i: u64, base: u32) -> f64 {
    let b = base as u64;
    let inv = 1.0 / base as f64;
    let mut f = inv;
    let mut r = 0.0;
    while i > 0 {
        r += (i % b) as f64 * f;
        i /= b;
        f *= inv;
    }
    r
}

/// Point `i` of the five-dimensional Halton sequence in `[0,1)^5`.
pub fn halton5(i: u64) -> [f64; 5] {
    PRIMES.map(|p| radical_inverse(i, p))
}

/// Uniform random parameters in `[0, coord_max]^5` (or a tenth of it when
/// `small`) conditioned on feasibility.
pub fn random_feasible(rng: &mut impl Rng, profile: Profile, small: bool) -> StrangeParams {
    let t = profile.thresholds();
    let m = if small { t.coord_max / 10.0 } else { t.coord_max };
    loop {
        let mut xs = [rng.gen_range(0.0..=m), rng.gen_range(0.0..=m), rng.gen_range(0.0..=m)];
        xs.sort_by(f64::total_cmp);
        let p = StrangeParams::new(xs[0], xs[1], xs[2], rng.gen_range(0.0..=m), rng.gen_range(0.0..=m));
        if feasible(&p, profile) {
            return p;
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SampleSummary {
    pub tried: u64,
    pub feasible: u64,
    pub min_g: f64,
    pub argmin: [f64; 5],
}

/// Walks the Halton sequence over `root` until `want` feasible points were
/// seen, tracking the least floating-point `G`. The sequence is sorted in the
/// x coordinates so that every draw satisfies the ordering condition.
pub fn halton_min_g(root: &Box5, cs: &ConstraintSet, want: u64) -> SampleSummary {
    let mut s = SampleSummary {
        tried: 0,
        feasible: 0,
        min_g: f64::INFINITY,
        argmin: [f64::NAN; 5],
    };
    let mut i = 1;
    while s.feasible < want {
        let mut u = halton5(i);
        i += 1;
        u[..3].sort_by(f64::total_cmp);
        let p = root.at(u);
        s.tried += 1;
        if !cs.satisfied(&p) {
            continue;
        }
        s.feasible += 1;
        let g = strange_g(&StrangeParams::from_array(p));
        if g < s.min_g {
            s.min_g = g;
            s.argmin = p;
        }
    }
    s
}

/// A sampled point inside a verified leaf where `G` does not exceed the threshold.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Counterexample {
    pub leaf: usize,
    pub point: [f64; 5],
    pub g: f64,
}

/// Draws `per_leaf` random points in every `stride`-th verified leaf and
/// evaluates `G` at the feasible ones.
pub fn spot_check_leaves(cert: &Certificate, per_leaf: usize, stride: usize, seed: u64) -> (u64, Option<Counterexample>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0;
    for (i, l) in cert.leaves.iter().enumerate().filter(|(_, l)| l.is_verified()).step_by(stride.max(1)) {
        for _ in 0..per_leaf {
            let t: [f64; 5] = std::array::from_fn(|_| rng.gen::<f64>());
            let p = l.bx.at(t);
            if !cert.constraints.satisfied(&p) {
                continue;
            }
            checked += 1;
            let g = strange_g(&StrangeParams::from_array(p));
            if !(g > cert.threshold) {
                return (checked, Some(Counterexample { leaf: i, point: p, g }));
            }
        }
    }
    (checked, None)
}
