//! Level-synchronous branch and bound for `G(p) > threshold` over the
//! feasible part of a parameter box.

use std::io::Write;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::certificate::{canonical_sort, Certificate, Leaf, LeafStatus, Method, PartialCertificate, Stats, Unresolved};
use super::constraints::ConstraintSet;
use crate::error::{Error, Partial, Result};
use crate::interval::{eval_g, freeze_mask, g_jet_frozen, Box5, Interval, Jet, ROUNDING_STRATEGY};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Budget {
    pub max_boxes: u64,
    pub max_depth: u32,
    pub max_seconds: f64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_boxes: 10_000_000,
            max_depth: 120,
            max_seconds: 3600.0,
        }
    }
}

/// Run options that do not affect the certificate's content.
#[derive(Default)]
pub struct RunOptions<'a> {
    /// Worker threads; `None` uses the rayon default.
    pub jobs: Option<usize>,
    /// Receives one JSON line per leaf, in processing order.
    pub stream: Option<&'a mut dyn Write>,
    pub claim: Option<String>,
}

/// Coordinate to bisect: widest width relative to the root, lowest index on
/// ties. `None` when the box has no extent left in any splittable direction.
pub fn choose_split(b: &Box5, root_widths: &[f64; 5]) -> Option<usize> {
    let w = b.widths();
    let mut best = None;
    let mut best_rel = 0.0;
    for k in 0..5 {
        if root_widths[k] > 0.0 && w[k] > 0.0 {
            let rel = w[k] / root_widths[k];
            if rel > best_rel {
                best_rel = rel;
                best = Some(k);
            }
        }
    }
    let k = best?;
    // a box one ulp wide cannot be bisected further
    let m = b.0[k].mid();
    (m > b.0[k].lo() && m < b.0[k].hi()).then_some(k)
}

fn finite_or_neg_inf(x: f64) -> f64 {
    if x.is_nan() {
        f64::NEG_INFINITY
    } else {
        x
    }
}

/// Jet of `G - sum lambda_i c_i` over the box.
fn h_jet(b: &Box5, cs: &ConstraintSet, g: &Jet, mults: &[(usize, f64)]) -> Jet {
    if mults.is_empty() {
        return *g;
    }
    let vars = Jet::vars(b);
    let mut h = *g;
    for &(i, lam) in mults {
        h = h.sub(&cs.constraints[i].jet(&vars).scale(Interval::point(lam)));
    }
    h
}

/// Second-order lower bound of `G - sum lambda_i c_i` about the box centre.
fn taylor_lower(b: &Box5, cs: &ConstraintSet, mults: &[(usize, f64)], jb: &Jet, jc: &Jet) -> f64 {
    let c = b.mid();
    let cb = Box5::point(c);
    h_jet(b, cs, jb, mults).taylor_lower(&h_jet(&cb, cs, jc, mults), b, &c)
}

fn jets(b: &Box5, frozen: u8) -> (Jet, Jet) {
    (g_jet_frozen(b, frozen, b), g_jet_frozen(&Box5::point(b.mid()), frozen, b))
}

/// Recomputes the lower bound a leaf claims for the given method.
pub(crate) fn method_bound(b: &Box5, cs: &ConstraintSet, method: &Method) -> f64 {
    match method {
        Method::Natural => eval_g(b).map_or(f64::NEG_INFINITY, |g| finite_or_neg_inf(g.lo())),
        Method::Taylor { frozen } => {
            let (jb, jc) = jets(b, *frozen);
            taylor_lower(b, cs, &[], &jb, &jc)
        }
        Method::Lagrangian { frozen, multipliers } => {
            let (jb, jc) = jets(b, *frozen);
            taylor_lower(b, cs, multipliers, &jb, &jc)
        }
    }
}

/// Solves `min |g - A lambda|` over `lambda >= 0` by enumerating supports.
fn nnls(g: &[f64; 5], cols: &[[f64; 5]]) -> Vec<f64> {
    let n = cols.len();
    let resid = |lam: &[f64]| -> f64 {
        (0..5)
            .map(|k| {
                let r = g[k] - (0..n).map(|j| lam[j] * cols[j][k]).sum::<f64>();
                r * r
            })
            .sum()
    };
    let mut best = vec![0.0; n];
    let mut best_r = resid(&best);
    for mask in 1u32..(1 << n) {
        let sup: Vec<usize> = (0..n).filter(|j| mask & (1 << j) != 0).collect();
        let m = sup.len();
        if m > 5 {
            continue;
        }
        // normal equations on the support
        let mut a = vec![vec![0.0; m + 1]; m];
        for (r, &i) in sup.iter().enumerate() {
            for (c, &j) in sup.iter().enumerate() {
                a[r][c] = (0..5).map(|k| cols[i][k] * cols[j][k]).sum();
            }
            a[r][m] = (0..5).map(|k| cols[i][k] * g[k]).sum();
        }
        let Some(sol) = gauss(a) else { continue };
        if sol.iter().any(|&x| !(x >= 0.0) || !x.is_finite()) {
            continue;
        }
        let mut lam = vec![0.0; n];
        for (r, &i) in sup.iter().enumerate() {
            lam[i] = sol[r];
        }
        let r = resid(&lam);
        if r < best_r {
            best_r = r;
            best = lam;
        }
    }
    best
}

fn gauss(mut a: Vec<Vec<f64>>) -> Option<Vec<f64>> {
    let m = a.len();
    let scale = a.iter().flat_map(|r| r[..m].iter()).fold(0.0f64, |s, x| s.max(x.abs()));
    for c in 0..m {
        let p = (c..m).max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs()))?;
        if a[p][c].abs() <= 1e-12 * scale {
            return None;
        }
        a.swap(c, p);
        for r in c + 1..m {
            let f = a[r][c] / a[c][c];
            for k in c..=m {
                a[r][k] -= f * a[c][k];
            }
        }
    }
    let mut x = vec![0.0; m];
    for c in (0..m).rev() {
        let s: f64 = (c + 1..m).map(|k| a[c][k] * x[k]).sum();
        x[c] = (a[c][m] - s) / a[c][c];
    }
    Some(x)
}

/// Multipliers for the undecided constraints that best cancel the gradient
/// of `G` at the box centre.
fn multipliers(b: &Box5, cs: &ConstraintSet, unknown: &[usize], jc: &Jet) -> Vec<(usize, f64)> {
    let g = jc.g.map(|i| i.mid());
    if g.iter().any(|x| !x.is_finite()) {
        return Vec::new();
    }
    let vars = Jet::vars(&Box5::point(b.mid()));
    let cols: Vec<[f64; 5]> = unknown.iter().map(|&i| cs.constraints[i].jet(&vars).g.map(|x| x.mid())).collect();
    let lam = nnls(&g, &cols);
    unknown.iter().zip(lam).filter(|(_, l)| *l > 0.0).map(|(&i, l)| (i, l)).collect()
}

pub(crate) enum Outcome {
    Leaf(LeafStatus),
    /// Not resolved; carries the best lower bound on feasible `G` found.
    Split(f64),
}

/// Tries to resolve one box: infeasible, or verified by the cheapest
/// bound that clears the threshold.
pub(crate) fn bound_box(b: &Box5, cs: &ConstraintSet, threshold: f64) -> Outcome {
    if let Some((constraint, enclosure)) = cs.first_violated(b) {
        return Outcome::Leaf(LeafStatus::Infeasible { constraint, enclosure });
    }
    let natural = eval_g(b).map_or(f64::NEG_INFINITY, |g| finite_or_neg_inf(g.lo()));
    if natural > threshold {
        return Outcome::Leaf(LeafStatus::Verified {
            lower_bound: natural,
            method: Method::Natural,
        });
    }
    let frozen = freeze_mask(b);
    let (jb, jc) = jets(b, frozen);
    let taylor = taylor_lower(b, cs, &[], &jb, &jc);
    if taylor > threshold {
        return Outcome::Leaf(LeafStatus::Verified {
            lower_bound: taylor,
            method: Method::Taylor { frozen },
        });
    }
    let mut best = natural.max(taylor);
    let unknown = cs.unknown(b);
    if !unknown.is_empty() && jb.is_finite() {
        let mults = multipliers(b, cs, &unknown, &jc);
        if !mults.is_empty() {
            let lag = taylor_lower(b, cs, &mults, &jb, &jc);
            if lag > threshold {
                return Outcome::Leaf(LeafStatus::Verified {
                    lower_bound: lag,
                    method: Method::Lagrangian { frozen, multipliers: mults },
                });
            }
            best = best.max(lag);
        }
    }
    Outcome::Split(best)
}

/// Certifies `G > threshold` on every feasible point of `root` with the
/// default run options.
pub fn branch_and_bound(root: &Box5, cs: &ConstraintSet, threshold: f64, budget: &Budget) -> Result<Certificate> {
    branch_and_bound_with(root, cs, threshold, budget, &mut RunOptions::default())
}

#[derive(Clone, Copy)]
struct Node {
    bx: Box5,
    depth: u32,
    bound: f64,
}

pub fn branch_and_bound_with(
    root: &Box5,
    cs: &ConstraintSet,
    threshold: f64,
    budget: &Budget,
    run: &mut RunOptions<'_>,
) -> Result<Certificate> {
    if !threshold.is_finite() {
        return Err(Error::DomainError(format!("threshold must be finite, got {threshold}")));
    }
    if root.0.iter().any(|i| !i.is_finite()) {
        return Err(Error::DomainError("root box must be bounded".into()));
    }
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(run.jobs.unwrap_or(0))
        .build()
        .map_err(|e| Error::DomainError(format!("cannot start worker pool: {e}")))?;
    let root_w = root.widths();
    let mut stats = Stats::default();
    let mut leaves: Vec<Leaf> = Vec::new();
    let mut frontier = vec![Node {
        bx: *root,
        depth: 0,
        bound: f64::NEG_INFINITY,
    }];
    let mut unresolved: Vec<Unresolved> = Vec::new();
    let mut reason = None;

    while !frontier.is_empty() {
        let left = budget.max_boxes.saturating_sub(stats.boxes) as usize;
        let take = frontier.len().min(left);
        let outcomes: Vec<Outcome> =
            pool.install(|| frontier[..take].par_iter().map(|n| bound_box(&n.bx, cs, threshold)).collect());
        stats.boxes += take as u64;
        let mut next = Vec::new();
        for (n, o) in frontier[..take].iter().zip(outcomes) {
            match o {
                Outcome::Leaf(status) => {
                    let leaf = Leaf {
                        bx: n.bx,
                        depth: n.depth,
                        status,
                    };
                    if let Some(w) = run.stream.as_deref_mut() {
                        serde_json::to_writer(&mut *w, &leaf)?;
                        w.write_all(b"\n")?;
                    }
                    stats.max_depth = stats.max_depth.max(n.depth);
                    leaves.push(leaf);
                }
                Outcome::Split(bound) => {
                    let bound = bound.max(n.bound);
                    match choose_split(&n.bx, &root_w) {
                        None => {
                            return Err(Error::CertificationFailed(format!(
                                "box {:?} cannot be split further and its lower bound {bound} does not exceed {threshold}",
                                n.bx.bounds()
                            )))
                        }
                        Some(_) if n.depth >= budget.max_depth => {
                            reason.get_or_insert_with(|| format!("depth limit {} reached", budget.max_depth));
                            unresolved.push(Unresolved {
                                bx: n.bx,
                                depth: n.depth,
                                lower_bound: Some(bound).filter(|b| b.is_finite()),
                            });
                        }
                        Some(k) => {
                            let (a, b) = n.bx.split(k);
                            for bx in [a, b] {
                                next.push(Node {
                                    bx,
                                    depth: n.depth + 1,
                                    bound,
                                });
                            }
                        }
                    }
                }
            }
        }
        if take < frontier.len() {
            reason.get_or_insert_with(|| format!("box limit {} reached", budget.max_boxes));
        } else if start.elapsed().as_secs_f64() > budget.max_seconds && !next.is_empty() {
            reason.get_or_insert_with(|| format!("time limit {} s reached", budget.max_seconds));
        }
        if reason.is_some() {
            let pending = frontier[take..].iter().chain(next.iter());
            unresolved.extend(pending.map(|n| Unresolved {
                bx: n.bx,
                depth: n.depth,
                lower_bound: Some(n.bound).filter(|b| b.is_finite()),
            }));
            break;
        }
        frontier = next;
    }
    if let Some(w) = run.stream.as_deref_mut() {
        w.flush()?;
    }

    canonical_sort(&mut leaves);
    stats.leaves = leaves.len() as u64;
    stats.verified = leaves.iter().filter(|l| l.is_verified()).count() as u64;
    stats.infeasible = stats.leaves - stats.verified;
    stats.seconds = start.elapsed().as_secs_f64();
    let global_margin = leaves.iter().filter_map(Leaf::lower_bound).reduce(f64::min);
    let cert = Certificate {
        claim: run.claim.clone().unwrap_or_else(|| "mutant6".into()),
        threshold,
        rounding: ROUNDING_STRATEGY.into(),
        root: *root,
        constraints: cs.clone(),
        leaves,
        stats,
        global_margin,
    };
    match reason {
        None => Ok(cert),
        Some(reason) => {
            let min_unresolved_bound = unresolved
                .iter()
                .map(|u| u.lower_bound)
                .try_fold(f64::INFINITY, |m, b| b.map(|b| m.min(b)));
            Err(Error::BudgetExceeded(Box::new(Partial::Search(PartialCertificate {
                certificate: cert,
                unresolved,
                min_unresolved_bound,
                reason,
            }))))
        }
    }
}
