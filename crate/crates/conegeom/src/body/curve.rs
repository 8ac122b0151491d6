//! Closed-form boundary parametrizations of the planar C²₊ bodies.
//!
//! These drive the boundary-parametrization quadrature route, which is kept
//! deliberately independent of the support-function (sphere) route: position,
//! normal, curvature and speed all come from the curve derivatives, never
//! from `h` and `f`.

use super::{Body, Kind};
use crate::error::{Error, Result};
use crate::geom2::Vec2;

/// Point data of a boundary curve γ(t), evaluated from `(cos t, sin t)`.
#[derive(Debug, Clone, Copy)]
pub struct CurvePoint {
    pub pos: Vec2,
    /// outward unit normal
    pub normal: Vec2,
    /// curve curvature κ at the point (positive for convex ccw curves)
    pub kappa: f64,
    /// |γ'(t)|
    pub speed: f64,
}

/// Boundary curve of a 2-D C²₊ body, counterclockwise, parametrized on
/// `[0, 2π)`. The parameter is passed as the unit vector `(cos t, sin t)` so
/// panel quadrature can resolve points arbitrarily close to the singular
/// parameters of l_r-type curves.
pub struct BoundaryCurve<'a> {
    body: &'a Body,
}

impl Body {
    /// Boundary parametrization (n = 2, C²₊ only).
    pub fn boundary_curve(&self) -> Result<BoundaryCurve<'_>> {
        if self.dim() != 2 {
            return Err(Error::InvalidArgument(
                "boundary curves are 2-D only".into(),
            ));
        }
        if self.is_polytope() {
            return Err(Error::UnsupportedSmoothness);
        }
        Ok(BoundaryCurve { body: self })
    }
}

impl BoundaryCurve<'_> {
    /// Parameters (as exact unit vectors) where the curve is not C²; panel
    /// endpoints for quadrature in t.
    pub fn breakpoints(&self) -> Vec<Vec2> {
        match &self.body.kind {
            Kind::LrBall { .. } | Kind::LrImage { .. } => {
                vec![[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]]
            }
            _ => Vec::new(),
        }
    }

    /// Evaluate at parameter `t` given as `cs = (cos t, sin t)`.
    pub fn eval(&self, cs: Vec2) -> CurvePoint {
        let (c, s) = (cs[0], cs[1]);
        match &self.body.kind {
            Kind::Ball { radius } => CurvePoint {
                pos: [radius * c, radius * s],
                normal: [c, s],
                kappa: 1.0 / radius,
                speed: *radius,
            },
            Kind::Ellipsoid { mat, abs_det, .. } => {
                let g1 = apply2(mat, [-s, c]);
                let speed = g1[0].hypot(g1[1]);
                CurvePoint {
                    pos: apply2(mat, [c, s]),
                    normal: [g1[1] / speed, -g1[0] / speed],
                    kappa: abs_det / (speed * speed * speed),
                    speed,
                }
            }
            Kind::LrBall { r, .. } => {
                let d = lr_curve_data(*r, c, s);
                finish(d.pos, d.d1, d.d2)
            }
            Kind::LrImage { t, abs_det, r, .. } => {
                let d = lr_curve_data(*r, c, s);
                let pos = apply2(t, d.pos);
                let d1 = apply2(t, d.d1);
                let speed = d1[0].hypot(d1[1]);
                // cross(T a, T b) = det T · cross(a, b)
                let cr = abs_det * (d.d1[0] * d.d2[1] - d.d1[1] * d.d2[0]);
                CurvePoint {
                    pos,
                    normal: [d1[1] / speed, -d1[0] / speed],
                    kappa: cr / (speed * speed * speed),
                    speed,
                }
            }
            Kind::Polytope(_) => unreachable!("constructor rejects polytopes"),
        }
    }
}

fn apply2(m: &super::matrix::Mat, v: Vec2) -> Vec2 {
    [
        m.get(0, 0) * v[0] + m.get(0, 1) * v[1],
        m.get(1, 0) * v[0] + m.get(1, 1) * v[1],
    ]
}

struct RawCurve {
    pos: Vec2,
    d1: Vec2,
    d2: Vec2,
}

/// Generalized-trigonometric parametrization of the l_r circle:
/// γ(t) = (sgn(c)|c|^e, sgn(s)|s|^e), e = 2/r.
fn lr_curve_data(r: f64, c: f64, s: f64) -> RawCurve {
    let e = 2.0 / r;
    let x = [c.signum() * c.abs().powf(e), s.signum() * s.abs().powf(e)];
    let d1 = [
        -e * c.abs().powf(e - 1.0) * s,
        e * s.abs().powf(e - 1.0) * c,
    ];
    let d2 = [
        e * (e - 1.0) * c.abs().powf(e - 2.0) * c.signum() * s * s - e * c.abs().powf(e - 1.0) * c,
        e * (e - 1.0) * s.abs().powf(e - 2.0) * s.signum() * c * c - e * s.abs().powf(e - 1.0) * s,
    ];
    RawCurve { pos: x, d1, d2 }
}

fn finish(pos: Vec2, d1: Vec2, d2: Vec2) -> CurvePoint {
    let speed = d1[0].hypot(d1[1]);
    CurvePoint {
        pos,
        normal: [d1[1] / speed, -d1[0] / speed],
        kappa: (d1[0] * d2[1] - d1[1] * d2[0]) / (speed * speed * speed),
        speed,
    }
}
