//! Steiner symmetrization of polytopes and the bounds built on it.

mod apex;
mod envelope;
mod octahedral;
mod steiner;

pub use apex::{bipyramid_symmetral, find_apex_pair, ApexPair};
pub use envelope::{envelopes, EnvelopeCell, Envelopes, PiecewiseLinearEnvelope};
pub use octahedral::{antipodal_pairs, jensen_bound, octahedral_pipeline, OctahedralReduction};
pub use steiner::{overlay_candidates, steiner_symmetral};

use crate::error::{Error, Result};

/// `18 sqrt((pi + q)^3 / q)`: the isoperimetric ratio of the Schwarz rounding
/// of a strange body with base area `q`, a lower bound for the body's own ratio.
pub fn schwarz_lower_bound(q: f64) -> Result<f64> {
    if !(q > 0.0) || !q.is_finite() {
        return Err(Error::DomainError(format!("base area must be positive, got {q}")));
    }
    let pi = std::f64::consts::PI;
    Ok(18.0 * ((pi + q).powi(3) / q).sqrt())
}
