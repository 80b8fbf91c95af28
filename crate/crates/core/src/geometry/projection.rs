use super::polygon2::Polygon2;
use super::{Polytope3, Vec3};
use crate::error::{Error, Result};

/// Orthonormal frame `(u1, u2)` of the plane `normal^perp`.
///
/// Gram-Schmidt on the two coordinate axes least parallel to the normal,
/// ordered by `|n . e_i|` ascending with ties broken by axis index.
pub fn projection_frame(normal: Vec3) -> Result<(Vec3, Vec3)> {
    let n = normal
        .normalized()
        .ok_or_else(|| Error::DegenerateInput("zero projection normal".into()))?;
    let mut axes = [0usize, 1, 2];
    axes.sort_by(|&a, &b| n[a].abs().total_cmp(&n[b].abs()).then(a.cmp(&b)));
    let a = Vec3::axis(axes[0]);
    let b = Vec3::axis(axes[1]);
    let u1 = (a - n * n.dot(a)).normalized().unwrap();
    let u2 = (b - n * n.dot(b) - u1 * u1.dot(b)).normalized().unwrap();
    Ok((u1, u2))
}

/// Orthogonal projection `P | normal^perp` in the frame of [`projection_frame`].
pub fn project(p: &Polytope3, normal: Vec3) -> Result<Polygon2> {
    let (u1, u2) = projection_frame(normal)?;
    let pts: Vec<[f64; 2]> = p.vertices().iter().map(|v| [v.dot(u1), v.dot(u2)]).collect();
    Ok(Polygon2::hull(&pts, p.eps()))
}
