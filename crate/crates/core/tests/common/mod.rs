#![allow(dead_code)]

use polyiso::Vec3;
use rand::Rng;

pub fn random_unit<R: Rng>(rng: &mut R) -> Vec3 {
    loop {
        let v = Vec3::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let n = v.norm();
        if n > 0.1 && n <= 1.0 {
            return v / n;
        }
    }
}

/// Uniform point in the ball of radius `r`.
pub fn random_in_ball<R: Rng>(rng: &mut R, r: f64) -> Vec3 {
    loop {
        let v = Vec3::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        if v.norm() <= 1.0 {
            return v * r;
        }
    }
}

/// Random rotation from a random unit quaternion.
pub fn random_rotation<R: Rng>(rng: &mut R) -> impl Fn(Vec3) -> Vec3 {
    let (mut a, mut b, mut c, mut d);
    loop {
        a = rng.gen_range(-1.0..1.0f64);
        b = rng.gen_range(-1.0..1.0f64);
        c = rng.gen_range(-1.0..1.0f64);
        d = rng.gen_range(-1.0..1.0f64);
        let n = (a * a + b * b + c * c + d * d).sqrt();
        if n > 0.1 && n <= 1.0 {
            a /= n;
            b /= n;
            c /= n;
            d /= n;
            break;
        }
    }
    let m = [
        [a * a + b * b - c * c - d * d, 2.0 * (b * c - a * d), 2.0 * (b * d + a * c)],
        [2.0 * (b * c + a * d), a * a - b * b + c * c - d * d, 2.0 * (c * d - a * b)],
        [2.0 * (b * d - a * c), 2.0 * (c * d + a * b), a * a - b * b - c * c + d * d],
    ];
    move |v: Vec3| {
        Vec3::new(
            m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
            m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z,
        )
    }
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}
