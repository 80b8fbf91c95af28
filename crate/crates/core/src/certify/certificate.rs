//! Certificates produced by the branch-and-bound, and their independent
//! re-validation.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::bnb::{choose_split, method_bound};
use super::constraints::ConstraintSet;
use crate::error::{Error, Result};
use crate::interval::{Box5, Interval};

/// How a verified leaf's lower bound was obtained.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Method {
    /// Natural interval extension of `G`.
    Natural,
    /// Second-order expansion about the box centre with a Hessian enclosure
    /// over the box, applied to `G` with the square-root terms of `S` named
    /// by the bits of `frozen` replaced by their lower bounds.
    Taylor { frozen: u8 },
    /// The same expansion of that minorant minus `sum lambda_i c_i` with
    /// `lambda_i >= 0`, which is at most `G` wherever every `c_i >= 0`.
    Lagrangian { frozen: u8, multipliers: Vec<(usize, f64)> },
}

#[derive(Clone, Debug, PartialEq)]
pub enum LeafStatus {
    /// Constraint `constraint` is certainly negative over the box.
    Infeasible { constraint: usize, enclosure: Interval },
    /// Every feasible point of the box has `G >= lower_bound`.
    Verified { lower_bound: f64, method: Method },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "LeafRepr", try_from = "LeafRepr")]
pub struct Leaf {
    pub bx: Box5,
    pub depth: u32,
    pub status: LeafStatus,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum StatusTag {
    Infeasible,
    Verified,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Evidence {
    Violation { constraint: usize, enclosure: Interval },
    Bound { lower_bound: f64, method: Method },
}

#[derive(Serialize, Deserialize)]
struct LeafRepr {
    #[serde(rename = "box")]
    bx: Box5,
    depth: u32,
    status: StatusTag,
    bound_or_violation: Evidence,
}

impl From<Leaf> for LeafRepr {
    fn from(l: Leaf) -> Self {
        let (status, ev) = match l.status {
            LeafStatus::Infeasible { constraint, enclosure } => {
                (StatusTag::Infeasible, Evidence::Violation { constraint, enclosure })
            }
            LeafStatus::Verified { lower_bound, method } => {
                (StatusTag::Verified, Evidence::Bound { lower_bound, method })
            }
        };
        LeafRepr {
            bx: l.bx,
            depth: l.depth,
            status,
            bound_or_violation: ev,
        }
    }
}

impl TryFrom<LeafRepr> for Leaf {
    type Error = String;

    fn try_from(r: LeafRepr) -> std::result::Result<Self, String> {
        let status = match (r.status, r.bound_or_violation) {
            (StatusTag::Infeasible, Evidence::Violation { constraint, enclosure }) => {
                LeafStatus::Infeasible { constraint, enclosure }
            }
            (StatusTag::Verified, Evidence::Bound { lower_bound, method }) => {
                LeafStatus::Verified { lower_bound, method }
            }
            _ => return Err("leaf status does not match its evidence".into()),
        };
        Ok(Leaf {
            bx: r.bx,
            depth: r.depth,
            status,
        })
    }
}

impl Leaf {
    pub fn lower_bound(&self) -> Option<f64> {
        match self.status {
            LeafStatus::Verified { lower_bound, .. } => Some(lower_bound),
            LeafStatus::Infeasible { .. } => None,
        }
    }

    pub fn is_verified(&self) -> bool {
        matches!(self.status, LeafStatus::Verified { .. })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Stats {
    /// Boxes examined, leaves and split boxes alike.
    pub boxes: u64,
    pub leaves: u64,
    pub infeasible: u64,
    pub verified: u64,
    pub max_depth: u32,
    pub seconds: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub claim: String,
    pub threshold: f64,
    pub rounding: String,
    pub root: Box5,
    pub constraints: ConstraintSet,
    /// Sorted by box bounds.
    pub leaves: Vec<Leaf>,
    pub stats: Stats,
    /// Least lower bound over the verified leaves; `None` if the whole root
    /// is infeasible.
    pub global_margin: Option<f64>,
}

impl Certificate {
    /// True when every leaf is resolved and the margin clears the threshold.
    pub fn holds(&self) -> bool {
        self.global_margin.map_or(true, |m| m > self.threshold)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

/// A box the search gave up on, with the best lower bound known for it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Unresolved {
    #[serde(rename = "box")]
    pub bx: Box5,
    pub depth: u32,
    pub lower_bound: Option<f64>,
}

/// What a run that hit its budget has established so far.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PartialCertificate {
    /// Leaves resolved so far; they do not cover the root.
    pub certificate: Certificate,
    pub unresolved: Vec<Unresolved>,
    /// Least lower bound over the unresolved boxes (`None` if some box has no finite bound).
    pub min_unresolved_bound: Option<f64>,
    pub reason: String,
}

pub(crate) fn bound_key(b: &Box5) -> [[u64; 2]; 5] {
    b.bounds().map(|[l, h]| [l.to_bits(), h.to_bits()])
}

pub(crate) fn canonical_sort(leaves: &mut [Leaf]) {
    leaves.sort_by(|a, b| {
        let (ka, kb) = (a.bx.bounds(), b.bx.bounds());
        ka.iter()
            .flatten()
            .zip(kb.iter().flatten())
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
}

/// Summary of a successful re-validation.
#[derive(Clone, Debug, PartialEq)]
pub struct Revalidation {
    pub leaves: usize,
    pub verified: usize,
    pub infeasible: usize,
    pub global_margin: Option<f64>,
}

/// Checks a certificate from scratch: the leaves must be exactly the
/// leaves of the bisection tree the split rule generates from the root,
/// and each leaf's evidence must re-evaluate to the stated outcome.
pub fn revalidate(cert: &Certificate) -> Result<Revalidation> {
    let fail = |m: String| Error::CertificationFailed(m);
    let cs = &cert.constraints;
    let mut index: HashMap<[[u64; 2]; 5], usize> = HashMap::with_capacity(cert.leaves.len());
    for (i, l) in cert.leaves.iter().enumerate() {
        if index.insert(bound_key(&l.bx), i).is_some() {
            return Err(fail(format!("leaf {i} is duplicated")));
        }
    }
    let root_w = cert.root.widths();
    let mut seen = vec![false; cert.leaves.len()];
    let mut stack = vec![(cert.root, 0u32)];
    let depth_cap = cert.leaves.iter().map(|l| l.depth).max().unwrap_or(0);
    while let Some((b, depth)) = stack.pop() {
        if let Some(&i) = index.get(&bound_key(&b)) {
            let l = &cert.leaves[i];
            if l.depth != depth {
                return Err(fail(format!("leaf {i} recorded at depth {} but found at {depth}", l.depth)));
            }
            seen[i] = true;
            continue;
        }
        let k = choose_split(&b, &root_w);
        if depth >= depth_cap || k.is_none() {
            return Err(fail(format!("region {:?} is not covered by any leaf", b.bounds())));
        }
        let (lo, hi) = b.split(k.unwrap_or(0));
        stack.push((hi, depth + 1));
        stack.push((lo, depth + 1));
    }
    if let Some(i) = seen.iter().position(|s| !s) {
        return Err(fail(format!("leaf {i} lies outside the bisection tree of the root")));
    }

    let mut margin: Option<f64> = None;
    let mut verified = 0;
    for (i, l) in cert.leaves.iter().enumerate() {
        match &l.status {
            LeafStatus::Infeasible { constraint, .. } => {
                let c = cs
                    .constraints
                    .get(*constraint)
                    .ok_or_else(|| fail(format!("leaf {i} cites unknown constraint {constraint}")))?;
                let v = c.value(&l.bx);
                if !(v.hi() < 0.0) {
                    return Err(fail(format!("leaf {i}: constraint {c} is not certainly violated ({v})")));
                }
            }
            LeafStatus::Verified { lower_bound, method } => {
                if let Method::Lagrangian { multipliers, .. } = method {
                    if multipliers.iter().any(|&(j, lam)| j >= cs.len() || !(lam >= 0.0) || !lam.is_finite()) {
                        return Err(fail(format!("leaf {i} has an invalid multiplier")));
                    }
                }
                let lb = method_bound(&l.bx, cs, method);
                if !(lb > cert.threshold) || !(lb >= *lower_bound) {
                    return Err(fail(format!(
                        "leaf {i}: recomputed bound {lb} does not support stated {lower_bound} > {}",
                        cert.threshold
                    )));
                }
                margin = Some(margin.map_or(*lower_bound, |m: f64| m.min(*lower_bound)));
                verified += 1;
            }
        }
    }
    if margin != cert.global_margin {
        return Err(fail(format!("global margin {:?} differs from leaf minimum {margin:?}", cert.global_margin)));
    }
    Ok(Revalidation {
        leaves: cert.leaves.len(),
        verified,
        infeasible: cert.leaves.len() - verified,
        global_margin: margin,
    })
}
