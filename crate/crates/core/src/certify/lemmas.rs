//! Certified threshold checks behind the area and vertex-distance reductions.

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::minimize::{IntervalFn, SchwarzF};
use super::sampling::random_feasible;
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::strange::{realize, Profile};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = ">")]
    Greater,
    #[serde(rename = "<")]
    Less,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClaimCheck {
    pub label: String,
    /// Certified enclosure of the left-hand side (over the whole range for sign claims).
    pub enclosure: Interval,
    pub relation: Relation,
    pub bound: f64,
    pub certified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ClaimCheck {
    fn new(label: impl Into<String>, enclosure: Interval, relation: Relation, bound: f64) -> Self {
        let certified = match relation {
            Relation::Greater => enclosure.lo() > bound,
            Relation::Less => enclosure.hi() < bound,
        };
        ClaimCheck {
            label: label.into(),
            enclosure,
            relation,
            bound,
            certified,
            note: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub lemma: String,
    pub claims: Vec<ClaimCheck>,
}

impl LemmaReport {
    pub fn all_certified(&self) -> bool {
        self.claims.iter().all(|c| c.certified)
    }

    fn into_result(self) -> Result<Self> {
        match self.claims.iter().find(|c| !c.certified) {
            Some(c) => Err(Error::CertificationFailed(format!("{}: {}", self.lemma, c.label))),
            None => Ok(self),
        }
    }
}

/// `18 sqrt((pi + q)^3 / q)` over an enclosure of `q`.
pub fn schwarz_ratio(q: Interval) -> Interval {
    (SchwarzF.eval(q)).sqrt_nonneg() * 18.0
}

/// `(s + pi)^2 (2 s - pi) / s^2`
fn fprime_factored(s: Interval) -> Interval {
    (s + Interval::PI).sqr() * (s * 2.0 - Interval::PI) / s.sqr()
}

/// `(-pi^3 + 3 pi s^2 + 2 s^3) / s^2`
fn fprime_expanded(s: Interval) -> Interval {
    let pi = Interval::PI;
    (-pi.powi(3) + pi * s.sqr() * 3.0 + s.powi(3) * 2.0) / s.sqr()
}

/// Bisects `dom` until `f` has the requested strict sign on every piece.
/// Returns the hull of the piece enclosures and whether it succeeded.
fn certify_sign(f: fn(Interval) -> Interval, dom: Interval, negative: bool, max_pieces: usize) -> (Interval, bool, usize) {
    let mut stack = vec![dom];
    let mut hull: Option<Interval> = None;
    let mut pieces = 0;
    while let Some(x) = stack.pop() {
        let v = f(x);
        let ok = if negative { v.hi() < 0.0 } else { v.lo() > 0.0 };
        if ok || pieces + stack.len() >= max_pieces || x.width() == 0.0 {
            hull = Some(hull.map_or(v, |h| h.hull(v)));
            pieces += 1;
            if !ok {
                return (hull.unwrap_or(v), false, pieces);
            }
            continue;
        }
        let m = x.mid();
        stack.push(Interval::raw(m, x.hi()));
        stack.push(Interval::raw(x.lo(), m));
    }
    (hull.unwrap_or(Interval::ZERO), true, pieces)
}

/// The four area thresholds and the sign pattern of `f'`.
pub fn certify_lemma_volumeest() -> Result<LemmaReport> {
    let mut claims = Vec::new();
    for (num, den, bound, name) in [
        (411, 1000, 188.0, "0.411"),
        (51, 10, 188.0, "5.1"),
        (9, 100, 344.0, "0.09"),
        (15, 1, 344.0, "15"),
    ] {
        let q = Interval::ratio(num, den);
        claims.push(ClaimCheck::new(
            format!("18 sqrt(f({name})) > {bound}"),
            schwarz_ratio(q),
            Relation::Greater,
            bound,
        ));
    }
    let half_pi = Interval::PI * 0.5;
    let left = Interval::raw(Interval::ratio(1, 100).lo(), (half_pi - 0.01).hi());
    let right = Interval::raw((half_pi + 0.01).lo(), 20.0);
    for (form, f) in [("factored", fprime_factored as fn(Interval) -> Interval), ("expanded", fprime_expanded)] {
        for (range, dom, negative) in [("[0.01, pi/2 - 0.01]", left, true), ("[pi/2 + 0.01, 20]", right, false)] {
            let (enc, ok, pieces) = certify_sign(f, dom, negative, 1 << 16);
            let rel = if negative { Relation::Less } else { Relation::Greater };
            let mut c = ClaimCheck::new(format!("f' ({form}) {} 0 on {range}", if negative { "<" } else { ">" }), enc, rel, 0.0);
            c.certified = ok;
            c.note = Some(format!("{pieces} subintervals"));
            claims.push(c);
        }
    }
    LemmaReport {
        lemma: "volumeest".into(),
        claims,
    }
    .into_result()
}

/// Default sample count and seed for the geometric premise check.
pub const DISTANCEEST_SAMPLES: usize = 2000;
pub const DISTANCEEST_SEED: u64 = 17;

/// The two distance thresholds, exactly and by intervals, plus a sampled
/// check that `S(P) > 2 |v|` for every base corner `v` of a strange body.
pub fn certify_lemma_distanceest() -> Result<LemmaReport> {
    certify_lemma_distanceest_with(DISTANCEEST_SAMPLES, DISTANCEEST_SEED)
}

pub fn certify_lemma_distanceest_with(samples: usize, seed: u64) -> Result<LemmaReport> {
    let mut claims = Vec::new();
    for ((rn, rd), (vn, vd), bound) in [((13i64, 2i64), (17i64, 5i64), 188i64), ((17, 1), (10, 1), 344)] {
        let r = Ratio::new(rn, rd);
        let v = Ratio::new(vn, vd);
        let exact = Ratio::from_integer(8) * r * r * r / (v * v);
        let ri = Interval::ratio(rn, rd);
        let vi = Interval::ratio(vn, vd);
        let enc = ri.powi(3) * 8.0 / vi.sqr();
        let label = format!("8 * ({rn}/{rd})^3 / ({vn}/{vd})^2 > {bound}");
        let mut c = ClaimCheck::new(label, enc, Relation::Greater, bound as f64);
        c.certified &= exact > Ratio::from_integer(bound);
        c.note = Some(format!("exact value {exact}"));
        claims.push(c);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = f64::INFINITY;
    let mut checked = 0;
    while checked < samples {
        let small = rng.gen_bool(0.5);
        let p = random_feasible(&mut rng, Profile::SixVertex, small);
        let Ok(body) = realize(&p) else { continue };
        let s = body.polytope.surface_area();
        for [x, y] in p.base_points().into_iter().skip(1) {
            worst = worst.min(s - 2.0 * x.hypot(y));
        }
        checked += 1;
    }
    let mut c = ClaimCheck::new("S(P) - 2 |v_i| > 0 on sampled strange bodies", Interval::point(worst), Relation::Greater, 0.0);
    c.note = Some(format!("{samples} floating-point samples, seed {seed}; not a certified enclosure"));
    claims.push(c);
    LemmaReport {
        lemma: "distanceest".into(),
        claims,
    }
    .into_result()
}
