//! Convex bodies represented through their support functions.
//!
//! A body is a capability record: support function, gauge, and (for C²₊
//! bodies) support gradient, support Hessian and curvature function. Polars
//! and linear images are computed structurally (the polar of an l_r-ball is
//! the l_{r/(r-1)}-ball, the polar of `A·Bⁿ` is `A^{-T}·Bⁿ`, the polar of a
//! polygon is the dual polygon), so derived bodies are exact, never sampled.
//!
//! All evaluators are pure; bodies are immutable after construction.

pub mod curve;
pub mod descriptor;
pub(crate) mod matrix;
pub mod polytope;

use crate::error::{Error, Result};
use crate::geom2::{self, Vec2};
use crate::quad::QuadSettings;
use matrix::Mat;
use polytope::Polygon2;
use statrs::function::gamma::ln_gamma;

/// A unit vector in `S^{n-1}` (Euclidean norm 1 within 1e-12).
#[derive(Debug, Clone, PartialEq)]
pub struct Direction {
    coords: Vec<f64>,
}

impl Direction {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::InvalidArgument(
                "directions need dimension >= 2".into(),
            ));
        }
        let norm = coords.iter().map(|x| x * x).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidArgument(format!(
                "direction must be unit length (norm = {norm})"
            )));
        }
        Ok(Direction { coords })
    }

    /// Normalize an arbitrary nonzero vector.
    pub fn normalized(mut coords: Vec<f64>) -> Result<Self> {
        let norm = coords.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm < 1e-300 {
            return Err(Error::InvalidArgument(
                "cannot normalize zero vector".into(),
            ));
        }
        coords.iter_mut().for_each(|x| *x /= norm);
        Ok(Direction { coords })
    }

    pub(crate) fn new_unchecked(coords: Vec<f64>) -> Self {
        Direction { coords }
    }

    pub fn from_angle(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Direction { coords: vec![c, s] }
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Smoothness {
    Polytope,
    C2Plus,
}

#[derive(Debug, Clone)]
pub(crate) enum Kind {
    Ball {
        radius: f64,
    },
    /// `A · Bⁿ`; `mat` is A, oriented so det(A) > 0.
    Ellipsoid {
        mat: Mat,
        inv: Mat,
        abs_det: f64,
    },
    /// unit ball of l_r; `q = r/(r-1)` is the dual exponent (support = l_q norm)
    LrBall {
        r: f64,
        q: f64,
    },
    /// `T · B_r`, the only derived kind that stays lazy; det(T) > 0.
    LrImage {
        t: Mat,
        t_inv: Mat,
        abs_det: f64,
        r: f64,
        q: f64,
    },
    Polytope(Polygon2),
}

/// Extremes of the principal radii of curvature over the boundary.
#[derive(Debug, Clone, Copy)]
pub struct RollingRadii {
    pub r_inner: f64,
    pub r_outer: f64,
}

/// A convex body with the origin interior.
#[derive(Debug, Clone)]
pub struct Body {
    dim: usize,
    kind: Kind,
}

/// Volume of the unit Euclidean ball in dimension n.
pub fn unit_ball_volume(n: usize) -> f64 {
    let nf = n as f64;
    (std::f64::consts::PI.ln() * (nf / 2.0) - ln_gamma(nf / 2.0 + 1.0)).exp()
}

// --- l_q norm helpers (q > 1), written for general nonzero vectors ---------

fn lq_norm(x: &[f64], q: f64) -> f64 {
    x.iter().map(|v| v.abs().powf(q)).sum::<f64>().powf(1.0 / q)
}

fn lq_gradient(x: &[f64], q: f64) -> Vec<f64> {
    let s: f64 = x.iter().map(|v| v.abs().powf(q)).sum();
    let c = s.powf(1.0 / q - 1.0);
    x.iter()
        .map(|v| c * v.abs().powf(q - 1.0) * v.signum())
        .collect()
}

/// Quadratic form z' Hess(|.|_q)(w) z of the l_q norm at w.
fn lq_hessian_form(w: &[f64], z: &[f64], q: f64) -> f64 {
    let s: f64 = w.iter().map(|v| v.abs().powf(q)).sum();
    let g_dot_z: f64 = w
        .iter()
        .zip(z)
        .map(|(wv, zv)| wv.abs().powf(q - 1.0) * wv.signum() * zv)
        .sum();
    let diag: f64 = w
        .iter()
        .zip(z)
        .map(|(wv, zv)| wv.abs().powf(q - 2.0) * zv * zv)
        .sum();
    (1.0 - q) * s.powf(1.0 / q - 2.0) * g_dot_z * g_dot_z + (q - 1.0) * s.powf(1.0 / q - 1.0) * diag
}

fn lq_hessian(w: &[f64], q: f64) -> Mat {
    let n = w.len();
    let s: f64 = w.iter().map(|v| v.abs().powf(q)).sum();
    let g: Vec<f64> = w
        .iter()
        .map(|v| v.abs().powf(q - 1.0) * v.signum())
        .collect();
    let c1 = (1.0 - q) * s.powf(1.0 / q - 2.0);
    let c2 = (q - 1.0) * s.powf(1.0 / q - 1.0);
    let mut a = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            let mut v = c1 * g[i] * g[j];
            if i == j {
                v += c2 * w[i].abs().powf(q - 2.0);
            }
            a[i * n + j] = v;
        }
    }
    Mat { n, a }
}

impl Body {
    // ---------------------------------------------------------------- kinds

    pub fn ball(dim: usize, radius: f64) -> Result<Body> {
        if dim < 2 {
            return Err(Error::InvalidBody("dimension must be >= 2".into()));
        }
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::InvalidBody("ball radius must be positive".into()));
        }
        Ok(Body {
            dim,
            kind: Kind::Ball { radius },
        })
    }

    /// `A · Bⁿ` for an invertible matrix A (row-major rows).
    pub fn ellipsoid(rows: &[Vec<f64>]) -> Result<Body> {
        let mat = Mat::from_rows(rows)?;
        Self::ellipsoid_from_mat(mat)
    }

    fn ellipsoid_from_mat(mut mat: Mat) -> Result<Body> {
        let dim = mat.n;
        if dim < 2 {
            return Err(Error::InvalidBody("dimension must be >= 2".into()));
        }
        let det = mat.det();
        if det == 0.0 || !det.is_finite() {
            return Err(Error::InvalidBody("ellipsoid matrix is singular".into()));
        }
        if det < 0.0 {
            // flip one axis; the ball is symmetric so the body is unchanged
            for i in 0..dim {
                mat.a[i * dim + dim - 1] = -mat.a[i * dim + dim - 1];
            }
        }
        let inv = mat.inverse()?;
        let abs_det = mat.det().abs();
        Ok(Body {
            dim,
            kind: Kind::Ellipsoid { mat, inv, abs_det },
        })
    }

    /// Unit ball of `l_r` for `1 < r < ∞`. `r = 2` is the Euclidean ball.
    pub fn lr_ball(dim: usize, r: f64) -> Result<Body> {
        if dim < 2 {
            return Err(Error::InvalidBody("dimension must be >= 2".into()));
        }
        if !(r > 1.0) || !r.is_finite() {
            return Err(Error::InvalidBody(
                "l_r ball requires 1 < r < inf; r in {1, inf} must be entered as a polytope".into(),
            ));
        }
        if r == 2.0 {
            return Body::ball(dim, 1.0);
        }
        Ok(Body {
            dim,
            kind: Kind::LrBall {
                r,
                q: r / (r - 1.0),
            },
        })
    }

    /// Convex polygon from its vertices (2-D only); the vertex list is
    /// reordered counterclockwise and the polygon recentered at its centroid.
    pub fn polytope(vertices: Vec<Vec2>) -> Result<Body> {
        let poly = Polygon2::from_user_vertices(vertices)?;
        Ok(Body {
            dim: 2,
            kind: Kind::Polytope(poly),
        })
    }

    pub(crate) fn from_polygon(poly: Polygon2) -> Body {
        Body {
            dim: 2,
            kind: Kind::Polytope(poly),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn smoothness(&self) -> Smoothness {
        match self.kind {
            Kind::Polytope(_) => Smoothness::Polytope,
            _ => Smoothness::C2Plus,
        }
    }

    pub fn is_polytope(&self) -> bool {
        self.smoothness() == Smoothness::Polytope
    }

    pub(crate) fn polygon(&self) -> Option<&Polygon2> {
        match &self.kind {
            Kind::Polytope(p) => Some(p),
            _ => None,
        }
    }

    fn require_smooth(&self) -> Result<()> {
        if self.is_polytope() {
            Err(Error::UnsupportedSmoothness)
        } else {
            Ok(())
        }
    }

    fn check_dim(&self, len: usize) -> Result<()> {
        if len != self.dim {
            return Err(Error::InvalidArgument(format!(
                "expected dimension {}, got {}",
                self.dim, len
            )));
        }
        Ok(())
    }

    // ----------------------------------------------------------- evaluators

    /// Support function at a unit direction.
    pub fn support(&self, u: &Direction) -> Result<f64> {
        self.check_dim(u.dim())?;
        Ok(self.support_raw(u.coords()))
    }

    /// 1-homogeneous extension of the support function to arbitrary vectors.
    pub fn support_raw(&self, v: &[f64]) -> f64 {
        match &self.kind {
            Kind::Ball { radius } => radius * lq_norm(v, 2.0),
            Kind::Ellipsoid { mat, .. } => lq_norm(&mat.tmatvec(v), 2.0),
            Kind::LrBall { q, .. } => lq_norm(v, *q),
            Kind::LrImage { t, q, .. } => lq_norm(&t.tmatvec(v), *q),
            Kind::Polytope(p) => p.support([v[0], v[1]]),
        }
    }

    /// 2-D fast path.
    pub fn support2(&self, u: Vec2) -> f64 {
        match &self.kind {
            Kind::Ball { radius } => radius * geom2::norm(u),
            Kind::Ellipsoid { mat, .. } => {
                let w0 = mat.get(0, 0) * u[0] + mat.get(1, 0) * u[1];
                let w1 = mat.get(0, 1) * u[0] + mat.get(1, 1) * u[1];
                w0.hypot(w1)
            }
            Kind::LrBall { q, .. } => (u[0].abs().powf(*q) + u[1].abs().powf(*q)).powf(1.0 / *q),
            Kind::LrImage { t, q, .. } => {
                let w0 = t.get(0, 0) * u[0] + t.get(1, 0) * u[1];
                let w1 = t.get(0, 1) * u[0] + t.get(1, 1) * u[1];
                (w0.abs().powf(*q) + w1.abs().powf(*q)).powf(1.0 / *q)
            }
            Kind::Polytope(p) => p.support(u),
        }
    }

    /// Minkowski gauge ‖x‖_K (positively 1-homogeneous).
    pub fn gauge(&self, x: &[f64]) -> Result<f64> {
        self.check_dim(x.len())?;
        Ok(self.gauge_raw(x))
    }

    pub fn gauge_raw(&self, x: &[f64]) -> f64 {
        match &self.kind {
            Kind::Ball { radius } => lq_norm(x, 2.0) / radius,
            Kind::Ellipsoid { inv, .. } => lq_norm(&inv.matvec(x), 2.0),
            Kind::LrBall { r, .. } => lq_norm(x, *r),
            Kind::LrImage { t_inv, r, .. } => lq_norm(&t_inv.matvec(x), *r),
            Kind::Polytope(p) => p.gauge([x[0], x[1]]),
        }
    }

    /// Gradient of the support function: the boundary point with outer
    /// normal `u` (inverse Gauss map). C²₊ only.
    pub fn support_gradient(&self, u: &Direction) -> Result<Vec<f64>> {
        self.check_dim(u.dim())?;
        self.support_gradient_raw(u.coords())
    }

    pub fn support_gradient_raw(&self, v: &[f64]) -> Result<Vec<f64>> {
        self.require_smooth()?;
        Ok(match &self.kind {
            Kind::Ball { radius } => {
                let n = lq_norm(v, 2.0);
                v.iter().map(|x| radius * x / n).collect()
            }
            Kind::Ellipsoid { mat, .. } => {
                let w = mat.tmatvec(v);
                let n = lq_norm(&w, 2.0);
                mat.matvec(&w.iter().map(|x| x / n).collect::<Vec<_>>())
            }
            Kind::LrBall { q, .. } => lq_gradient(v, *q),
            Kind::LrImage { t, q, .. } => t.matvec(&lq_gradient(&t.tmatvec(v), *q)),
            Kind::Polytope(_) => unreachable!(),
        })
    }

    /// Boundary point with outer normal `u` (same as the support gradient).
    pub fn boundary_point(&self, u: &Direction) -> Result<Vec<f64>> {
        self.support_gradient(u)
    }

    /// 2-D fast path for the boundary point.
    pub fn boundary_point2(&self, u: Vec2) -> Result<Vec2> {
        let g = self.support_gradient_raw(&u)?;
        Ok([g[0], g[1]])
    }

    /// Euclidean Hessian of the 1-homogeneous support function at `v`.
    pub fn support_hessian(&self, v: &[f64]) -> Result<Mat> {
        self.require_smooth()?;
        self.check_dim(v.len())?;
        Ok(match &self.kind {
            Kind::Ball { radius } => {
                let n = lq_norm(v, 2.0);
                let d = v.len();
                let mut a = vec![0.0; d * d];
                for i in 0..d {
                    for j in 0..d {
                        let mut val = -v[i] * v[j] / (n * n);
                        if i == j {
                            val += 1.0;
                        }
                        a[i * d + j] = radius * val / n;
                    }
                }
                Mat { n: d, a }
            }
            Kind::Ellipsoid { mat, .. } => {
                // A (I - ww^T/|w|^2) A^T / |w|,  w = A^T v
                let w = mat.tmatvec(v);
                let nw = lq_norm(&w, 2.0);
                let d = v.len();
                let mut inner = vec![0.0; d * d];
                for i in 0..d {
                    for j in 0..d {
                        let mut val = -w[i] * w[j] / (nw * nw);
                        if i == j {
                            val += 1.0;
                        }
                        inner[i * d + j] = val / nw;
                    }
                }
                let inner = Mat { n: d, a: inner };
                mat.mul(&inner).mul(&mat.transpose())
            }
            Kind::LrBall { q, .. } => lq_hessian(v, *q),
            Kind::LrImage { t, q, .. } => {
                let w = t.tmatvec(v);
                t.mul(&lq_hessian(&w, *q)).mul(&t.transpose())
            }
            Kind::Polytope(_) => unreachable!(),
        })
    }

    /// Curvature function f_K(u): reciprocal Gauss curvature at the boundary
    /// point with normal `u`; the determinant of the tangential Hessian of
    /// the support function.
    pub fn curvature_fn(&self, u: &Direction) -> Result<f64> {
        self.check_dim(u.dim())?;
        self.require_smooth()?;
        let v = u.coords();
        match &self.kind {
            Kind::Ball { radius } => Ok(radius.powi(self.dim as i32 - 1)),
            Kind::Ellipsoid { abs_det, .. } => {
                let h = self.support_raw(v);
                Ok(abs_det * abs_det / h.powi(self.dim as i32 + 1))
            }
            _ => {
                if self.dim == 2 {
                    return self.curvature_fn2([v[0], v[1]]);
                }
                let hess = self.support_hessian(v)?;
                Ok(tangential_det(&hess, v))
            }
        }
    }

    /// 2-D fast path: f(u) = u⊥' Hess(h)(u) u⊥.
    pub fn curvature_fn2(&self, u: Vec2) -> Result<f64> {
        self.require_smooth()?;
        let up = geom2::rot90(u);
        Ok(match &self.kind {
            Kind::Ball { radius } => *radius,
            Kind::Ellipsoid { abs_det, .. } => {
                let h = self.support2(u);
                abs_det * abs_det / (h * h * h)
            }
            Kind::LrBall { q, .. } => lq_hessian_form(&u, &up, *q),
            Kind::LrImage { t, q, .. } => {
                let w = [
                    t.get(0, 0) * u[0] + t.get(1, 0) * u[1],
                    t.get(0, 1) * u[0] + t.get(1, 1) * u[1],
                ];
                let z = [
                    t.get(0, 0) * up[0] + t.get(1, 0) * up[1],
                    t.get(0, 1) * up[0] + t.get(1, 1) * up[1],
                ];
                lq_hessian_form(&w, &z, *q)
            }
            Kind::Polytope(_) => unreachable!(),
        })
    }

    // --------------------------------------------------------------- volume

    /// Exact volume (closed forms; shoelace for polygons).
    pub fn volume(&self) -> f64 {
        match &self.kind {
            Kind::Ball { radius } => unit_ball_volume(self.dim) * radius.powi(self.dim as i32),
            Kind::Ellipsoid { abs_det, .. } => unit_ball_volume(self.dim) * abs_det,
            Kind::LrBall { r, .. } => {
                crate::oracle::lr_volume(self.dim, *r).expect("constructor guarantees 1 < r < inf")
            }
            Kind::LrImage { abs_det, r, .. } => {
                abs_det
                    * crate::oracle::lr_volume(self.dim, *r)
                        .expect("constructor guarantees 1 < r < inf")
            }
            Kind::Polytope(p) => p.area(),
        }
    }

    /// Volume by quadrature of the sphere form `(1/n)∫ h f dσ` (C²₊), a
    /// cross-check route, not the primary one.
    pub fn volume_quadrature(&self, st: &QuadSettings) -> Result<f64> {
        self.require_smooth()?;
        let n = self.dim;
        let res = crate::quad::integrate_sphere(
            n,
            &self.integration_breakpoints2(),
            |v| {
                let h = self.support_raw(v);
                let f = if n == 2 {
                    self.curvature_fn2([v[0], v[1]]).unwrap_or(f64::NAN)
                } else {
                    let hess = self.support_hessian(v).unwrap();
                    tangential_det(&hess, v)
                };
                h * f
            },
            st,
        );
        Ok(res.require_finite()? / n as f64)
    }

    /// Volume of the polar body, by quadrature of `(1/n)∫ h^{-n} dσ`.
    pub fn polar_volume(&self, st: &QuadSettings) -> Result<f64> {
        let n = self.dim;
        let res = crate::quad::integrate_sphere(
            n,
            &self.integration_breakpoints2(),
            |v| self.support_raw(v).powi(-(n as i32)),
            st,
        );
        Ok(res.require_finite()? / n as f64)
    }

    // ------------------------------------------------------ derived bodies

    /// Polar body K° (structural, exact).
    pub fn polar(&self) -> Result<Body> {
        Ok(match &self.kind {
            Kind::Ball { radius } => Body {
                dim: self.dim,
                kind: Kind::Ball {
                    radius: 1.0 / radius,
                },
            },
            Kind::Ellipsoid { inv, .. } => Self::ellipsoid_from_mat(inv.transpose())?,
            Kind::LrBall { q, .. } => Body::lr_ball(self.dim, *q)?,
            Kind::LrImage { t_inv, r, .. } => {
                let tt = t_inv.transpose();
                Body::lr_ball(self.dim, r / (r - 1.0))?.linear_image_mat(tt)?
            }
            Kind::Polytope(p) => Body::from_polygon(p.polar()?),
        })
    }

    /// Image under an invertible linear map (row-major rows).
    pub fn linear_image(&self, rows: &[Vec<f64>]) -> Result<Body> {
        let t = Mat::from_rows(rows)?;
        if t.n != self.dim {
            return Err(Error::InvalidArgument(format!(
                "transform dimension {} does not match body dimension {}",
                t.n, self.dim
            )));
        }
        self.linear_image_mat(t)
    }

    fn linear_image_mat(&self, t: Mat) -> Result<Body> {
        let det = t.det();
        if det == 0.0 || !det.is_finite() {
            return Err(Error::InvalidArgument(
                "transform must be invertible".into(),
            ));
        }
        Ok(match &self.kind {
            Kind::Ball { radius } => {
                let mut m = t;
                m.a.iter_mut().for_each(|x| *x *= radius);
                Self::ellipsoid_from_mat(m)?
            }
            Kind::Ellipsoid { mat, .. } => Self::ellipsoid_from_mat(t.mul(mat))?,
            Kind::LrBall { r, q } => Self::lr_image_from_mat(t, *r, *q)?,
            Kind::LrImage { t: s, r, q, .. } => Self::lr_image_from_mat(t.mul(s), *r, *q)?,
            Kind::Polytope(p) => {
                let rows: [[f64; 2]; 2] = [[t.get(0, 0), t.get(0, 1)], [t.get(1, 0), t.get(1, 1)]];
                Body::from_polygon(p.linear_image(&rows)?)
            }
        })
    }

    fn lr_image_from_mat(mut t: Mat, r: f64, q: f64) -> Result<Body> {
        let dim = t.n;
        if t.det() < 0.0 {
            // flip one axis of the (sign-symmetric) l_r ball
            for i in 0..dim {
                t.a[i * dim + dim - 1] = -t.a[i * dim + dim - 1];
            }
        }
        let t_inv = t.inverse()?;
        let abs_det = t.det().abs();
        Ok(Body {
            dim,
            kind: Kind::LrImage {
                t,
                t_inv,
                abs_det,
                r,
                q,
            },
        })
    }

    // ------------------------------------------------- quadrature metadata

    /// Directions (exact unit vectors) at which circle integrands built from
    /// this body are singular or kinked; quadrature panels split here.
    pub fn integration_breakpoints2(&self) -> Vec<Vec2> {
        if self.dim != 2 {
            return Vec::new();
        }
        match &self.kind {
            Kind::Ball { .. } | Kind::Ellipsoid { .. } => Vec::new(),
            Kind::LrBall { .. } => vec![[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]],
            Kind::LrImage { t_inv, .. } => {
                // normals where a coordinate of T^T u vanishes: ±T^{-T} e_i
                let mut out = Vec::with_capacity(4);
                for i in 0..2 {
                    let v = [t_inv.get(i, 0), t_inv.get(i, 1)];
                    let n = geom2::norm(v);
                    out.push([v[0] / n, v[1] / n]);
                    out.push([-v[0] / n, -v[1] / n]);
                }
                out
            }
            Kind::Polytope(p) => p.edge_normals().to_vec(),
        }
    }

    /// If the curvature function is singular at the breakpoint directions,
    /// the exponent e with `f ~ dist^e` there (e < 0: f blows up; e > 0:
    /// f vanishes, i.e. the curvature blows up).
    pub fn curvature_exponent(&self) -> Option<f64> {
        match &self.kind {
            Kind::LrBall { q, .. } | Kind::LrImage { q, .. } => Some(q - 2.0),
            _ => None,
        }
    }

    // -------------------------------------------------------- rolling radii

    /// Extremes of the radius of curvature over the boundary (n = 2).
    /// Fails for bodies whose curvature is unbounded or degenerate.
    pub fn rolling_radii(&self) -> Result<RollingRadii> {
        self.require_smooth()?;
        if self.dim != 2 {
            return Err(Error::InvalidArgument(
                "rolling radii implemented for n = 2".into(),
            ));
        }
        if self.curvature_exponent().is_some() {
            return Err(Error::InvalidArgument(
                "curvature function is unbounded or vanishes; rolling radii degenerate".into(),
            ));
        }
        let mut m = 64usize;
        let mut prev: Option<(f64, f64)> = None;
        for _ in 0..20 {
            let mut lo = f64::INFINITY;
            let mut hi = f64::NEG_INFINITY;
            for j in 0..m {
                let th = 2.0 * std::f64::consts::PI * j as f64 / m as f64;
                let f = self.curvature_fn2(geom2::unit_from_angle(th))?;
                lo = lo.min(f);
                hi = hi.max(f);
            }
            if let Some((plo, phi)) = prev {
                if (lo - plo).abs() <= 1e-6 * lo.abs() && (hi - phi).abs() <= 1e-6 * hi.abs() {
                    return Ok(RollingRadii {
                        r_inner: lo,
                        r_outer: hi,
                    });
                }
            }
            prev = Some((lo, hi));
            m *= 2;
        }
        let (lo, hi) = prev.unwrap();
        Ok(RollingRadii {
            r_inner: lo,
            r_outer: hi,
        })
    }
}

/// Determinant of the Hessian restricted to the tangent space u⊥ (an
/// orthonormal basis built by Householder reflection).
pub(crate) fn tangential_det(hess: &Mat, u: &[f64]) -> f64 {
    let n = u.len();
    if n == 2 {
        let up = [-u[1], u[0]];
        let mut val = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                val += up[i] * hess.get(i, j) * up[j];
            }
        }
        return val;
    }
    // Householder vector mapping u to ±e_0
    let sign = if u[0] >= 0.0 { 1.0 } else { -1.0 };
    let mut w: Vec<f64> = u.to_vec();
    w[0] += sign;
    let wn: f64 = w.iter().map(|x| x * x).sum();
    // columns 1..n of P = I - 2 w w^T / (w^T w) form a basis of u⊥
    let basis: Vec<Vec<f64>> = (1..n)
        .map(|j| {
            let mut col = vec![0.0; n];
            for i in 0..n {
                col[i] = -2.0 * w[i] * w[j] / wn;
                if i == j {
                    col[i] += 1.0;
                }
            }
            col
        })
        .collect();
    let m = n - 1;
    let mut restricted = nalgebra::DMatrix::zeros(m, m);
    for a in 0..m {
        let hb: Vec<f64> = (0..n)
            .map(|i| (0..n).map(|k| hess.get(i, k) * basis[a][k]).sum())
            .collect();
        for b in 0..m {
            restricted[(a, b)] = basis[b].iter().zip(&hb).map(|(x, y)| x * y).sum();
        }
    }
    restricted.determinant()
}
