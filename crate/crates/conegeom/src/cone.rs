//! Boundary densities of the cone measures and their geometric checks.
//!
//! `Q_K = q_K μ_K` is the normalized cone measure of `K` itself, while
//! `P_K = p_K μ_K` pushes the cone measure of the polar body through the
//! Gauss maps. Both checks below compare the density route against an
//! independent geometric construction (fan areas of densely sampled
//! boundary arcs).

use crate::body::{Body, Smoothness};
use crate::divergence;
use crate::error::{Error, Result};
use crate::geom2::{cross, unit_from_angle, Vec2};
use crate::quad::QuadSettings;

/// Sphere-parametrized cone-measure densities of a C²₊ body.
///
/// With respect to `dσ` on `S^{n-1}`:
/// `p(u) = 1/(n |K°| h(u)^n)` and `q(u) = h(u) f(u)/(n |K|)`.
pub struct DensityPair {
    body: Body,
    /// |K|
    pub vol: f64,
    /// |K°|
    pub polar_vol: f64,
}

/// Build the density pair; polytopes are classified (`p ≡ 0` a.e.), not
/// evaluated pointwise.
pub fn density_pair(body: &Body) -> Result<DensityPair> {
    if body.smoothness() == Smoothness::Polytope {
        return Err(Error::PolytopeClassification);
    }
    let (vol, polar_vol) = divergence::volumes(body)?;
    Ok(DensityPair {
        body: body.clone(),
        vol,
        polar_vol,
    })
}

impl DensityPair {
    /// `p(u) dσ` density of P_K.
    pub fn p_sphere(&self, u: &[f64]) -> f64 {
        let n = self.body.dim() as f64;
        let h = self.body.support_raw(u);
        1.0 / (n * self.polar_vol * h.powf(n))
    }

    /// `q(u) dσ` density of Q_K.
    pub fn q_sphere(&self, u: &[f64]) -> f64 {
        let n = self.body.dim() as f64;
        let h = self.body.support_raw(u);
        let f = divergence::curvature_any(&self.body, u);
        h * f / (n * self.vol)
    }

    /// Normalization defect `|∫ p dσ − 1|`, `|∫ q dσ − 1|`.
    pub fn normalization_residuals(&self, st: &QuadSettings) -> Result<(f64, f64)> {
        let bps = self.body.integration_breakpoints2();
        let dim = self.body.dim();
        let p =
            crate::quad::integrate_sphere(dim, &bps, |u| self.p_sphere(u), st).require_finite()?;
        let q =
            crate::quad::integrate_sphere(dim, &bps, |u| self.q_sphere(u), st).require_finite()?;
        Ok(((p - 1.0).abs(), (q - 1.0).abs()))
    }
}

// ---------------------------------------------------------------------------
// geometric cone-measure checks (n = 2)
// ---------------------------------------------------------------------------

fn require_2d(body: &Body) -> Result<()> {
    if body.dim() != 2 {
        return Err(Error::InvalidArgument(
            "cone-measure checks are 2-D only".into(),
        ));
    }
    Ok(())
}

/// Boundary points of the arc with outer-normal angles in `[t0, t1]`,
/// sampled densely (smooth bodies), or the exact vertex chain (polytopes).
fn arc_polyline(body: &Body, t0: f64, t1: f64, samples: usize) -> Result<Vec<Vec2>> {
    if let Some(poly) = body.polygon() {
        // walk edges whose normal angle lies in [t0, t1]; arc endpoints are
        // vertices (the normal sweeps the vertex fan at a vertex)
        let mut pts = Vec::new();
        let m = poly.vertices().len();
        for i in 0..m {
            let ang = crate::geom2::angle_of(poly.edge_normals()[i]);
            let mut a = ang;
            while a < t0 - 1e-12 {
                a += 2.0 * std::f64::consts::PI;
            }
            // half-open [t0, t1): an edge sitting exactly on a partition
            // boundary belongs to the arc on its right
            if a < t1 - 1e-12 {
                pts.push((a, poly.vertices()[i], poly.vertices()[(i + 1) % m]));
            }
        }
        pts.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
        let mut out = Vec::new();
        for (_, v0, v1) in pts {
            if out.is_empty() {
                out.push(v0);
            }
            out.push(v1);
        }
        if out.is_empty() {
            return Err(Error::InvalidArgument(
                "arc contains no polytope edge normals".into(),
            ));
        }
        Ok(out)
    } else {
        let mut out = Vec::with_capacity(samples + 1);
        for j in 0..=samples {
            let t = t0 + (t1 - t0) * j as f64 / samples as f64;
            out.push(body.boundary_point2(unit_from_angle(t))?);
        }
        Ok(out)
    }
}

/// Area of the cone `{t·a : a ∈ arc, t ∈ [0,1]}` over a polyline arc
/// (rays from the origin contribute nothing to the shoelace sum).
fn fan_area(polyline: &[Vec2]) -> f64 {
    let mut acc = 0.0;
    for w in polyline.windows(2) {
        acc += cross(w[0], w[1]);
    }
    0.5 * acc
}

/// Normalized cone measure of the boundary arc with normal angles
/// `[t0, t1]`: the fan area over the arc divided by |K|. The polyline chord
/// deficit is Richardson-extrapolated away (fan areas at `m` and `2m`).
pub fn cone_measure_arc(body: &Body, t0: f64, t1: f64, samples: usize) -> Result<f64> {
    require_2d(body)?;
    if t1 <= t0 {
        return Err(Error::InvalidArgument("need t0 < t1".into()));
    }
    if body.polygon().is_some() {
        let pl = arc_polyline(body, t0, t1, samples.max(16))?;
        return Ok(fan_area(&pl) / body.volume());
    }
    let m = samples.max(16);
    let a1 = fan_area(&arc_polyline(body, t0, t1, m)?);
    let a2 = fan_area(&arc_polyline(body, t0, t1, 2 * m)?);
    Ok((4.0 * a2 - a1) / 3.0 / body.volume())
}

/// Max over a partition of ∂K into `partitions` arcs of
/// `|Q_K(arc) − cm_K(arc)|`. The Q side integrates the density `q`; the cm
/// side measures fan areas geometrically.
pub fn check_q_is_cone_measure(body: &Body, partitions: usize, st: &QuadSettings) -> Result<f64> {
    require_2d(body)?;
    let parts = partitions.max(2);
    let mut worst = 0.0f64;
    for k in 0..parts {
        let t0 = 2.0 * std::f64::consts::PI * k as f64 / parts as f64;
        let t1 = 2.0 * std::f64::consts::PI * (k + 1) as f64 / parts as f64;
        let cm = cone_measure_arc(body, t0, t1, 20_000)?;
        let q = q_measure_arc(body, t0, t1, st)?;
        worst = worst.max((q - cm).abs());
    }
    Ok(worst)
}

/// `Q_K` of the arc with normal angles in `[t0, t1]`.
fn q_measure_arc(body: &Body, t0: f64, t1: f64, st: &QuadSettings) -> Result<f64> {
    let n = 2.0;
    let vol = body.volume();
    if let Some(poly) = body.polygon() {
        // exact: sum of h_e · len_e / (n |K|) over edges with normal in range
        let m = poly.vertices().len();
        let mut acc = 0.0;
        for i in 0..m {
            let ang = crate::geom2::angle_of(poly.edge_normals()[i]);
            let mut a = ang;
            while a < t0 - 1e-12 {
                a += 2.0 * std::f64::consts::PI;
            }
            if a < t1 - 1e-12 {
                let v0 = poly.vertices()[i];
                let v1 = poly.vertices()[(i + 1) % m];
                let len = crate::geom2::norm(crate::geom2::sub(v1, v0));
                acc += poly.offsets()[i] * len;
            }
        }
        return Ok(acc / (n * vol));
    }
    // smooth: ∫ h f dθ / (n |K|) over the angle range, graded panels between
    // the body's breakpoints that fall inside the range
    let integrand = |u: Vec2| {
        let h = body.support2(u);
        let f = body.curvature_fn2(u).expect("smooth");
        h * f / (n * vol)
    };
    arc_integral(body, integrand, t0, t1, st)
}

/// Integrate a circle integrand over an angle interval, splitting at the
/// body's breakpoint directions (Gauss–Legendre per panel with doubling).
fn arc_integral<F>(body: &Body, g: F, t0: f64, t1: f64, st: &QuadSettings) -> Result<f64>
where
    F: Fn(Vec2) -> f64 + Sync,
{
    let mut cuts = vec![t0, t1];
    for b in body.integration_breakpoints2() {
        let mut a = crate::geom2::angle_of(b);
        while a < t0 {
            a += 2.0 * std::f64::consts::PI;
        }
        if a > t0 && a < t1 {
            cuts.push(a);
        }
    }
    cuts.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let mut total_prev: Option<f64> = None;
    let mut nodes = 64;
    for _ in 0..=st.max_doublings {
        let (x, w) = crate::quad::gauss_legendre(nodes);
        let mut total = 0.0;
        for seg in cuts.windows(2) {
            let (a, b) = (seg[0], seg[1]);
            let half = 0.5 * (b - a);
            let mid = 0.5 * (a + b);
            for (xi, wi) in x.iter().zip(&w) {
                total += g(unit_from_angle(mid + half * xi)) * wi * half;
            }
        }
        if let Some(p) = total_prev {
            if (total - p).abs() <= st.rtol * total.abs() + st.atol {
                return Ok(total);
            }
        }
        total_prev = Some(total);
        nodes *= 2;
    }
    Err(Error::NonConvergence(
        "arc integral did not converge".into(),
    ))
}

/// Max over a partition of `|P_K(arc) − cm_{K°}(dual arc)|`.
///
/// The dual arc is built via the gauge: the normal directions of the arc,
/// radially projected onto ∂K° (`u ↦ u / h_K(u)`, since the gauge of K° is
/// `h_K`), sampled densely and measured by fan areas on the polar body.
pub fn check_p_pushforward(body: &Body, partitions: usize, st: &QuadSettings) -> Result<f64> {
    require_2d(body)?;
    if body.smoothness() == Smoothness::Polytope {
        return Err(Error::UnsupportedSmoothness);
    }
    let polar_vol = body.polar()?.volume();
    let parts = partitions.max(2);
    let mut worst = 0.0f64;
    for k in 0..parts {
        let t0 = 2.0 * std::f64::consts::PI * k as f64 / parts as f64;
        let t1 = 2.0 * std::f64::consts::PI * (k + 1) as f64 / parts as f64;
        // P side: ∫ p dσ over the normal-angle range
        let n = 2.0;
        let p_val = arc_integral(
            body,
            |u| {
                let h = body.support2(u);
                1.0 / (n * polar_vol * h * h)
            },
            t0,
            t1,
            st,
        )?;
        // cm side: dual-arc polyline y(t) = u(t)/h(u(t)) on ∂K°, with the
        // chord deficit Richardson-extrapolated away
        let dual_fan = |samples: usize| -> f64 {
            let mut pl = Vec::with_capacity(samples + 1);
            for j in 0..=samples {
                let t = t0 + (t1 - t0) * j as f64 / samples as f64;
                let u = unit_from_angle(t);
                let h = body.support2(u);
                pl.push([u[0] / h, u[1] / h]);
            }
            fan_area(&pl)
        };
        let a1 = dual_fan(20_000);
        let a2 = dual_fan(40_000);
        let cm = (4.0 * a2 - a1) / 3.0 / polar_vol;
        worst = worst.max((p_val - cm).abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn st() -> QuadSettings {
        QuadSettings::default()
    }

    fn ellipse() -> Body {
        Body::ellipsoid(&[vec![2.0, 0.0], vec![0.0, 1.0]]).unwrap()
    }

    #[test]
    fn disk_densities_are_uniform() {
        let dp = density_pair(&Body::ball(2, 1.0).unwrap()).unwrap();
        for th in [0.0, 1.0, 2.5] {
            let u = unit_from_angle(th);
            assert_abs_diff_eq!(dp.p_sphere(&u), 1.0 / (2.0 * PI), epsilon = 1e-14);
            assert_abs_diff_eq!(dp.q_sphere(&u), 1.0 / (2.0 * PI), epsilon = 1e-14);
        }
        // ball of radius 2: still uniform and equal
        let dp = density_pair(&Body::ball(2, 2.0).unwrap()).unwrap();
        for th in [0.3, 4.0] {
            let u = unit_from_angle(th);
            assert_abs_diff_eq!(dp.p_sphere(&u), 1.0 / (2.0 * PI), epsilon = 1e-14);
            assert_abs_diff_eq!(dp.p_sphere(&u), dp.q_sphere(&u), epsilon = 1e-14);
        }
    }

    #[test]
    fn densities_normalize() {
        for body in [
            ellipse(),
            Body::lr_ball(2, 3.0).unwrap(),
            Body::ball(3, 1.3).unwrap(),
        ] {
            let dp = density_pair(&body).unwrap();
            let (rp, rq) = dp.normalization_residuals(&st()).unwrap();
            assert!(rp < 1e-8, "p normalization {rp}");
            assert!(rq < 1e-8, "q normalization {rq}");
        }
    }

    #[test]
    fn symmetric_bodies_have_even_densities() {
        let dp = density_pair(&ellipse()).unwrap();
        for th in [0.3, 1.1, 2.0] {
            let u = unit_from_angle(th);
            let mu = [-u[0], -u[1]];
            assert_abs_diff_eq!(dp.p_sphere(&u), dp.p_sphere(&mu), epsilon = 1e-14);
            assert_abs_diff_eq!(dp.q_sphere(&u), dp.q_sphere(&mu), epsilon = 1e-14);
        }
    }

    #[test]
    fn polytope_densities_classified() {
        let sq = Body::polytope(vec![[1.0, 1.0], [-1.0, 1.0], [-1.0, -1.0], [1.0, -1.0]]).unwrap();
        assert!(matches!(
            density_pair(&sq),
            Err(Error::PolytopeClassification)
        ));
    }

    #[test]
    fn disk_quarter_arc() {
        let disk = Body::ball(2, 1.0).unwrap();
        let cm = cone_measure_arc(&disk, 0.0, PI / 2.0, 10_000).unwrap();
        assert_abs_diff_eq!(cm, 0.25, epsilon = 1e-9);
        let full = cone_measure_arc(&disk, 0.0, 2.0 * PI, 10_000).unwrap();
        assert_abs_diff_eq!(full, 1.0, epsilon = 1e-9);
    }

    #[test]
    fn ellipse_arc_matches_q_measure() {
        let e = ellipse();
        let cm = cone_measure_arc(&e, 0.0, PI / 2.0, 50_000).unwrap();
        let q = q_measure_arc(&e, 0.0, PI / 2.0, &st()).unwrap();
        assert!((cm - q).abs() < 1e-6, "{cm} vs {q}");
    }

    #[test]
    fn q_is_cone_measure() {
        let disk = Body::ball(2, 1.0).unwrap();
        assert!(check_q_is_cone_measure(&disk, 8, &st()).unwrap() < 1e-9);
        let e = ellipse();
        assert!(check_q_is_cone_measure(&e, 16, &st()).unwrap() < 1e-6);
        // square: Q side exact on edges, cm side exact triangle fans
        let sq = Body::polytope(vec![[1.0, 1.0], [-1.0, 1.0], [-1.0, -1.0], [1.0, -1.0]]).unwrap();
        assert!(check_q_is_cone_measure(&sq, 4, &st()).unwrap() < 1e-9);
    }

    #[test]
    fn p_pushforward() {
        let disk = Body::ball(2, 1.0).unwrap();
        assert!(check_p_pushforward(&disk, 8, &st()).unwrap() < 1e-12);
        let b2 = Body::ball(2, 2.0).unwrap();
        assert!(check_p_pushforward(&b2, 8, &st()).unwrap() < 1e-10);
        let e = ellipse();
        assert!(check_p_pushforward(&e, 16, &st()).unwrap() < 1e-5);
        let sq = Body::polytope(vec![[1.0, 1.0], [-1.0, 1.0], [-1.0, -1.0], [1.0, -1.0]]).unwrap();
        assert!(check_p_pushforward(&sq, 4, &st()).is_err());
    }
}
