//! Small planar geometry helpers used by the 2-D paths.

pub type Vec2 = [f64; 2];

#[inline]
pub fn dot(a: Vec2, b: Vec2) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

#[inline]
pub fn cross(a: Vec2, b: Vec2) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

#[inline]
pub fn norm(a: Vec2) -> f64 {
    a[0].hypot(a[1])
}

#[inline]
pub fn scale(a: Vec2, t: f64) -> Vec2 {
    [a[0] * t, a[1] * t]
}

#[inline]
pub fn add(a: Vec2, b: Vec2) -> Vec2 {
    [a[0] + b[0], a[1] + b[1]]
}

#[inline]
pub fn sub(a: Vec2, b: Vec2) -> Vec2 {
    [a[0] - b[0], a[1] - b[1]]
}

/// Counterclockwise rotation by 90 degrees.
#[inline]
pub fn rot90(a: Vec2) -> Vec2 {
    [-a[1], a[0]]
}

/// Rotate `v` by the angle `delta`. When `v` is an exact unit vector this
/// preserves tiny `delta` faithfully, which plain `(cos θ, sin θ)` at
/// `θ = base + delta` cannot do once `delta` drops below the rounding of the
/// base angle.
#[inline]
pub fn rotate(v: Vec2, delta: f64) -> Vec2 {
    let (s, c) = delta.sin_cos();
    [c * v[0] - s * v[1], s * v[0] + c * v[1]]
}

#[inline]
pub fn angle_of(v: Vec2) -> f64 {
    v[1].atan2(v[0])
}

#[inline]
pub fn unit_from_angle(theta: f64) -> Vec2 {
    let (s, c) = theta.sin_cos();
    [c, s]
}

/// Shoelace area of a closed polygon (positive for counterclockwise).
pub fn polygon_area(verts: &[Vec2]) -> f64 {
    let n = verts.len();
    let mut terms = Vec::with_capacity(n);
    for i in 0..n {
        let j = (i + 1) % n;
        terms.push(cross(verts[i], verts[j]));
    }
    0.5 * crate::par::pairwise_sum(&terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotate_preserves_small_angles() {
        let u = rotate([0.0, 1.0], -1e-40);
        assert_eq!(u[0], 1e-40);
        assert!((u[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn square_area() {
        let sq = vec![[1.0, 1.0], [-1.0, 1.0], [-1.0, -1.0], [1.0, -1.0]];
        assert!((polygon_area(&sq) - 4.0).abs() < 1e-15);
    }
}
