//! L_p-affine surface areas and the identity web around them.
//!
//! The sphere form `as_p(K) = ∫ f^{n/(n+p)} h^{-n(p-1)/(n+p)} dσ` is the
//! primary route for C²₊ bodies; polytopes are classified (`κ = 0` a.e.).
//! `as_p_via_renyi` recomputes the same quantity from the boundary-route
//! Rényi divergence, giving a discretization-independent cross-check of the
//! exponential identity connecting the two theories.

use crate::body::{Body, Smoothness};
use crate::divergence::{
    self, kl, mixed_breakpoints, renyi_boundary, sigma_integral, ExtendedValue, Pairing, Reason,
};
use crate::error::{Error, Result};
use crate::quad::{integrate_circle, integrate_sphere, Classification, QuadSettings};

/// The `p` parameter of `as_p`. `p = -n` is excluded; the two one-sided
/// limits at `-n` are essential suprema and get their own tags.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PParameter {
    Finite(f64),
    PlusInf,
    MinusInf,
    AtMinusNRight,
    AtMinusNLeft,
}

impl PParameter {
    /// A finite parameter for a body of dimension `n`; rejects `p = -n`.
    pub fn finite(p: f64, n: usize) -> Result<PParameter> {
        if p == -(n as f64) {
            return Err(Error::InvalidArgument(format!(
                "p = -n = {} is excluded",
                -(n as f64)
            )));
        }
        if !p.is_finite() {
            return Err(Error::InvalidArgument(
                "non-finite p; use PlusInf / MinusInf".into(),
            ));
        }
        Ok(PParameter::Finite(p))
    }
}

/// Parameter maps of the exponential identity: `p = nα/(1-α)` and back.
pub fn alpha_to_p(n: usize, alpha: f64) -> f64 {
    n as f64 * alpha / (1.0 - alpha)
}

pub fn p_to_alpha(n: usize, p: f64) -> f64 {
    p / (n as f64 + p)
}

/// L_p-affine surface area.
pub fn as_p(body: &Body, param: PParameter, st: &QuadSettings) -> Result<ExtendedValue> {
    let n = body.dim() as f64;
    if body.smoothness() == Smoothness::Polytope {
        return Ok(polytope_as_p(body, param)?);
    }
    match param {
        PParameter::Finite(p) => {
            if p == -n {
                return Err(Error::InvalidArgument("p = -n is excluded".into()));
            }
            let f_pow = n / (n + p);
            let h_pow = -n * (p - 1.0) / (n + p);
            let res = sigma_integral(body, f_pow, h_pow, st);
            match res.classification {
                Classification::Finite => Ok(ExtendedValue::finite(res.value)),
                Classification::PlusInfinity => {
                    Ok(ExtendedValue::infinite(1.0, Reason::Nonintegrable))
                }
                _ => Err(Error::NonConvergence(format!(
                    "as_p at p = {p} did not converge"
                ))),
            }
        }
        // as_{±∞} = ∫ h^{-n} dσ = n |K°|
        PParameter::PlusInf | PParameter::MinusInf => {
            let res = sigma_integral(body, 0.0, -n, st);
            Ok(ExtendedValue::finite(res.require_finite()?))
        }
        // lim_{p → -n⁺} as_p = ess sup h^{n+1} f
        PParameter::AtMinusNRight => node_sup_extended(body, 1.0, st),
        // lim_{p → -n⁻} as_p = ess sup κ / h^{n+1}
        PParameter::AtMinusNLeft => node_sup_extended(body, -1.0, st),
    }
}

fn node_sup_extended(body: &Body, f_sign: f64, st: &QuadSettings) -> Result<ExtendedValue> {
    if let Some(e) = body.curvature_exponent() {
        if f_sign * e < 0.0 {
            return Ok(ExtendedValue::infinite(1.0, Reason::Nonintegrable));
        }
    }
    let n = body.dim() as f64;
    let sup_of = |m: usize| -> f64 {
        (0..m)
            .map(|j| {
                let th = 2.0 * std::f64::consts::PI * (j as f64 + 0.5) / m as f64;
                let u = [th.cos(), th.sin()];
                let h = body.support2(u);
                let f = body.curvature_fn2(u).expect("smooth");
                if f_sign > 0.0 {
                    h.powf(n + 1.0) * f
                } else {
                    1.0 / (f * h.powf(n + 1.0))
                }
            })
            .fold(f64::NEG_INFINITY, f64::max)
    };
    if body.dim() != 2 {
        let rule = crate::quad::s2_rule(24).unwrap();
        let sup = rule
            .nodes
            .iter()
            .map(|d| {
                let h = body.support_raw(d.coords());
                let f = divergence::curvature_any(body, d.coords());
                if f_sign > 0.0 {
                    h.powf(n + 1.0) * f
                } else {
                    1.0 / (f * h.powf(n + 1.0))
                }
            })
            .fold(f64::NEG_INFINITY, f64::max);
        return Ok(ExtendedValue::with_reason(sup, Reason::NodeSup));
    }
    let _ = st;
    let sup = sup_of(1024).max(sup_of(2048));
    Ok(ExtendedValue::with_reason(sup, Reason::NodeSup))
}

fn polytope_as_p(body: &Body, param: PParameter) -> Result<ExtendedValue> {
    let n = body.dim() as f64;
    Ok(match param {
        PParameter::Finite(p) => {
            if p == -n {
                return Err(Error::InvalidArgument("p = -n is excluded".into()));
            }
            if p == 0.0 {
                ExtendedValue::with_reason(n * body.volume(), Reason::PolytopeRule)
            } else if p > 0.0 {
                ExtendedValue::with_reason(0.0, Reason::PolytopeRule)
            } else {
                ExtendedValue::infinite(1.0, Reason::PolytopeRule)
            }
        }
        // ∫ κ/h^n dμ with κ = 0 a.e.
        PParameter::PlusInf | PParameter::MinusInf => {
            ExtendedValue::with_reason(0.0, Reason::PolytopeRule)
        }
        PParameter::AtMinusNRight | PParameter::AtMinusNLeft => {
            return Err(Error::UnsupportedSmoothness)
        }
    })
}

/// `as_p` reconstructed from the boundary-route Rényi divergence:
/// `n |K|^{n/(n+p)} |K°|^{p/(n+p)} · exp(-(n/(n+p)) D_{p/(n+p)}(P‖Q))`.
pub fn as_p_via_renyi(body: &Body, p: f64, st: &QuadSettings) -> Result<ExtendedValue> {
    let n = body.dim() as f64;
    if body.dim() != 2 {
        return Err(Error::InvalidArgument(
            "the independent boundary route is 2-D only".into(),
        ));
    }
    if p == -n {
        return Err(Error::InvalidArgument("p = -n is excluded".into()));
    }
    let alpha = p / (n + p);
    let d = renyi_boundary(body, alpha, Pairing::PQ, st)?;
    let (v, w) = divergence::volumes(body)?;
    let value = n * v.powf(n / (n + p)) * w.powf(p / (n + p)) * (-(n / (n + p)) * d.value).exp();
    if value.is_finite() {
        Ok(ExtendedValue::finite(value))
    } else {
        Ok(ExtendedValue::infinite(value, Reason::Nonintegrable))
    }
}

/// Relative residuals of the exponential identity, both displayed forms,
/// with the divergences computed on the boundary parametrization:
/// `as_p/(n|K|^{n/(n+p)}|K°|^{p/(n+p)}) = exp(-(p/(n+p)) D_{n/(n+p)}(Q‖P))
///                                      = exp(-(n/(n+p)) D_{p/(n+p)}(P‖Q))`.
/// Returns `(qp_form, pq_form)`. Infinite values must agree in
/// classification; a mismatch reports `+∞`.
pub fn exponential_identity_residuals(
    body: &Body,
    p: f64,
    st: &QuadSettings,
) -> Result<(f64, f64)> {
    let n = body.dim() as f64;
    let asp = as_p(body, PParameter::finite(p, body.dim())?, st)?;
    let (v, w) = divergence::volumes(body)?;
    let normalized = asp.value / (n * v.powf(n / (n + p)) * w.powf(p / (n + p)));
    let d_qp = renyi_boundary(body, n / (n + p), Pairing::QP, st)?;
    let d_pq = renyi_boundary(body, p / (n + p), Pairing::PQ, st)?;
    let qp_side = (-(p / (n + p)) * d_qp.value).exp();
    let pq_side = (-(n / (n + p)) * d_pq.value).exp();
    let rel = |side: f64| -> f64 {
        if normalized.is_finite() && side.is_finite() {
            (normalized - side).abs() / normalized.abs()
        } else if normalized.is_infinite() && side.is_infinite() && normalized == side {
            0.0
        } else {
            f64::INFINITY
        }
    };
    Ok((rel(qp_side), rel(pq_side)))
}

/// Mixed p-affine surface area `∫ [Π h_i^{1-p} f_i]^{1/(n+p)} dσ`;
/// `p = +∞` degenerates to `∫ Π h_i^{-1} dσ`.
pub fn mixed_as_p(bodies: &[Body], param: PParameter, st: &QuadSettings) -> Result<ExtendedValue> {
    let n = check_bodies(bodies)? as f64;
    let dim = bodies[0].dim();
    let (per_f, per_h) = match param {
        PParameter::Finite(p) => {
            if p == -n {
                return Err(Error::InvalidArgument("p = -n is excluded".into()));
            }
            (1.0 / (n + p), (1.0 - p) / (n + p))
        }
        PParameter::PlusInf | PParameter::MinusInf => (0.0, -1.0),
        _ => {
            return Err(Error::InvalidArgument(
                "one-sided limits are not defined for the mixed surface area".into(),
            ))
        }
    };
    // non-integrability when the summed local exponents at a shared singular
    // direction drop to -1
    let mut dirs: Vec<(f64, f64)> = Vec::new();
    for b in bodies {
        if let Some(e) = b.curvature_exponent() {
            for d in b.integration_breakpoints2() {
                let ang = crate::geom2::angle_of(d);
                match dirs.iter_mut().find(|(a, _)| (*a - ang).abs() < 1e-12) {
                    Some(entry) => entry.1 += per_f * e,
                    None => dirs.push((ang, per_f * e)),
                }
            }
        }
    }
    if dirs.iter().any(|(_, tot)| *tot <= -1.0) {
        return Ok(ExtendedValue::infinite(1.0, Reason::Nonintegrable));
    }
    let bps = mixed_breakpoints(bodies);
    let res = if dim == 2 {
        integrate_circle(
            |u| {
                bodies
                    .iter()
                    .map(|b| {
                        let h = b.support2(u);
                        if per_f == 0.0 {
                            h.powf(per_h)
                        } else {
                            let f = b.curvature_fn2(u).expect("smooth");
                            f.powf(per_f) * h.powf(per_h)
                        }
                    })
                    .product::<f64>()
            },
            &bps,
            st,
        )
    } else {
        integrate_sphere(
            dim,
            &[],
            |v| {
                bodies
                    .iter()
                    .map(|b| {
                        let h = b.support_raw(v);
                        if per_f == 0.0 {
                            h.powf(per_h)
                        } else {
                            let f = divergence::curvature_any(b, v);
                            f.powf(per_f) * h.powf(per_h)
                        }
                    })
                    .product::<f64>()
            },
            st,
        )
    };
    match res.classification {
        Classification::Finite => Ok(ExtendedValue::finite(res.value)),
        Classification::PlusInfinity => Ok(ExtendedValue::infinite(1.0, Reason::Nonintegrable)),
        _ => Err(Error::NonConvergence("mixed as_p did not converge".into())),
    }
}

/// Dual mixed volume `(1/n) ∫ Π h_i^{-1} dσ`.
pub fn dual_mixed_volume(bodies: &[Body], st: &QuadSettings) -> Result<f64> {
    let n = check_bodies(bodies)? as f64;
    let v = mixed_as_p(bodies, PParameter::PlusInf, st)?;
    Ok(v.value / n)
}

fn check_bodies(bodies: &[Body]) -> Result<usize> {
    if bodies.is_empty() {
        return Err(Error::InvalidArgument("need at least one body".into()));
    }
    let n = bodies[0].dim();
    if bodies.len() != n {
        return Err(Error::InvalidArgument(format!(
            "mixed surface areas need n = {n} bodies in dimension {n}, got {}",
            bodies.len()
        )));
    }
    for b in bodies {
        if b.dim() != n {
            return Err(Error::InvalidArgument("dimension mismatch".into()));
        }
        if b.smoothness() == Smoothness::Polytope {
            return Err(Error::UnsupportedSmoothness);
        }
    }
    Ok(n)
}

/// The invariants `Ω_K` and `A_K`, through their KL representations
/// (the direct `p → ∞ / 0` limits survive as the diagnostic below).
#[derive(Debug, Clone, Copy)]
pub struct OmegaInvariants {
    /// Ω_K = (|K|/|K°|)^n exp(-n D_KL(P‖Q))
    pub omega: f64,
    /// A_K = (|K°|/|K|) exp(-D_KL(Q‖P))
    pub cal_a: f64,
}

pub fn omega(body: &Body, st: &QuadSettings) -> Result<OmegaInvariants> {
    let n = body.dim() as f64;
    let (v, w) = divergence::volumes(body)?;
    let d_pq = kl(body, Pairing::PQ, st)?;
    let d_qp = kl(body, Pairing::QP, st)?;
    if !d_pq.is_finite() || !d_qp.is_finite() {
        return Err(Error::NonConvergence(
            "KL divergence infinite; omega undefined".into(),
        ));
    }
    Ok(OmegaInvariants {
        omega: (v / w).powf(n) * (-n * d_pq.value).exp(),
        cal_a: (w / v) * (-d_qp.value).exp(),
    })
}

/// Residuals `|(as_p/(n|K°|))^{(n+p)/n} - (|K|/|K°|) e^{-D_KL(P‖Q)}|`
/// along an increasing `p` list; expected to decrease for large `p`.
pub fn omega_limit_diagnostic(body: &Body, p_list: &[f64], st: &QuadSettings) -> Result<Vec<f64>> {
    let n = body.dim() as f64;
    let (v, w) = divergence::volumes(body)?;
    let d_pq = kl(body, Pairing::PQ, st)?;
    let target = (v / w) * (-d_pq.value).exp();
    p_list
        .iter()
        .map(|&p| {
            let a = as_p(body, PParameter::finite(p, body.dim())?, st)?;
            Ok(((a.value / (n * w)).powf((n + p) / n) - target).abs())
        })
        .collect()
}

/// Relative residual of the duality `as_p(K) = as_{n²/p}(K°)`, both sides by
/// quadrature (the polar body's curvature comes from its own support
/// function).
pub fn duality_residual(body: &Body, p: f64, st: &QuadSettings) -> Result<f64> {
    if !(p > 0.0) {
        return Err(Error::InvalidArgument(
            "duality residual needs p > 0".into(),
        ));
    }
    let n = body.dim() as f64;
    let polar = body.polar()?;
    let a = as_p(body, PParameter::finite(p, body.dim())?, st)?;
    let b = as_p(&polar, PParameter::finite(n * n / p, body.dim())?, st)?;
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::NonConvergence("duality sides infinite".into()));
    }
    Ok((a.value - b.value).abs() / a.value.abs())
}

/// Relative residual of `as_p(TK) = |det T|^{(n-p)/(n+p)} as_p(K)`.
pub fn affine_invariance_residual(
    body: &Body,
    t_rows: &[Vec<f64>],
    p: f64,
    st: &QuadSettings,
) -> Result<f64> {
    let n = body.dim() as f64;
    let image = body.linear_image(t_rows)?;
    let det: f64 = {
        let m = crate::body::matrix::Mat::from_rows(t_rows)?;
        m.det()
    };
    let lhs = as_p(&image, PParameter::finite(p, body.dim())?, st)?;
    let rhs = as_p(body, PParameter::finite(p, body.dim())?, st)?;
    if !lhs.is_finite() || !rhs.is_finite() {
        return Err(Error::NonConvergence("as_p infinite under the map".into()));
    }
    let scaled = det.abs().powf((n - p) / (n + p)) * rhs.value;
    Ok((lhs.value - scaled).abs() / scaled.abs())
}

/// Both sides of the mixed-density convexity inequality (`p ≥ 0`,
/// `λ ∈ [0,1]`): LHS ≥ RHS with equality iff K = L (or trivial parameters).
#[derive(Debug, Clone, Copy)]
pub struct ConvexityCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

pub fn convexity_inequality_check(
    k: &Body,
    l: &Body,
    p: f64,
    lambda: f64,
    st: &QuadSettings,
) -> Result<ConvexityCheck> {
    if !(p >= 0.0) || !p.is_finite() {
        return Err(Error::InvalidArgument("need finite p >= 0".into()));
    }
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::InvalidArgument("lambda must lie in [0, 1]".into()));
    }
    if k.dim() != l.dim() {
        return Err(Error::InvalidArgument("dimension mismatch".into()));
    }
    if k.is_polytope() || l.is_polytope() {
        return Err(Error::UnsupportedSmoothness);
    }
    let n = k.dim() as f64;
    let (vk, wk) = divergence::volumes(k)?;
    let (vl, wl) = divergence::volumes(l)?;
    let mut bps = k.integration_breakpoints2();
    bps.extend(l.integration_breakpoints2());
    let dim = k.dim();
    let lhs_res = if dim == 2 {
        integrate_circle(
            |u| {
                let (hk, fk) = (k.support2(u), k.curvature_fn2(u).expect("smooth"));
                let (hl, fl) = (l.support2(u), l.curvature_fn2(u).expect("smooth"));
                let a = lambda * fk * hk / vk + (1.0 - lambda) * fl * hl / vl;
                let b = lambda / (hk.powf(n) * wk) + (1.0 - lambda) / (hl.powf(n) * wl);
                a.powf(n / (n + p)) * b.powf(p / (n + p))
            },
            &bps,
            st,
        )
    } else {
        integrate_sphere(
            dim,
            &[],
            |v| {
                let (hk, fk) = (k.support_raw(v), divergence::curvature_any(k, v));
                let (hl, fl) = (l.support_raw(v), divergence::curvature_any(l, v));
                let a = lambda * fk * hk / vk + (1.0 - lambda) * fl * hl / vl;
                let b = lambda / (hk.powf(n) * wk) + (1.0 - lambda) / (hl.powf(n) * wl);
                a.powf(n / (n + p)) * b.powf(p / (n + p))
            },
            st,
        )
    };
    let lhs = lhs_res.require_finite()?;
    let ak = as_p(k, PParameter::finite(p, dim)?, st)?;
    let al = as_p(l, PParameter::finite(p, dim)?, st)?;
    if !ak.is_finite() || !al.is_finite() {
        return Err(Error::NonConvergence(
            "as_p infinite in convexity check".into(),
        ));
    }
    let rhs = (ak.value / (vk.powf(n / (n + p)) * wk.powf(p / (n + p)))).powf(lambda)
        * (al.value / (vl.powf(n / (n + p)) * wl.powf(p / (n + p)))).powf(1.0 - lambda);
    Ok(ConvexityCheck {
        lhs,
        rhs,
        holds: lhs >= rhs - 1e-10,
    })
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

    fn square() -> Body {
        Body::polytope(vec![[1.0, 1.0], [-1.0, 1.0], [-1.0, -1.0], [1.0, -1.0]]).unwrap()
    }

    #[test]
    fn disk_as_p_is_perimeter_for_all_p() {
        let disk = Body::ball(2, 1.0).unwrap();
        for p in [-5.0, -1.0, 0.0, 0.5, 1.0, 2.0, 10.0] {
            let a = as_p(&disk, PParameter::finite(p, 2).unwrap(), &st()).unwrap();
            assert_abs_diff_eq!(a.value, 2.0 * PI, epsilon = 1e-9);
        }
        for param in [PParameter::PlusInf, PParameter::MinusInf] {
            let a = as_p(&disk, param, &st()).unwrap();
            assert_abs_diff_eq!(a.value, 2.0 * PI, epsilon = 1e-9);
        }
    }

    #[test]
    fn square_as_p_classification() {
        let sq = square();
        let a0 = as_p(&sq, PParameter::finite(0.0, 2).unwrap(), &st()).unwrap();
        assert_eq!(a0.value, 8.0);
        let a1 = as_p(&sq, PParameter::finite(1.0, 2).unwrap(), &st()).unwrap();
        assert_eq!(a1.value, 0.0);
        let aneg = as_p(&sq, PParameter::finite(-1.0, 2).unwrap(), &st()).unwrap();
        assert_eq!(aneg.value, f64::INFINITY);

        assert!(PParameter::finite(-2.0, 2).is_err());
    }

    #[test]
    fn ellipse_as_p_closed_form() {
        // as_p(T disk) = |det T|^{(n-p)/(n+p)} 2π with det = 2
        let e = ellipse();
        for p in [-5.0, 1.0, 2.0] {
            let a = as_p(&e, PParameter::finite(p, 2).unwrap(), &st()).unwrap();
            let want = 2.0f64.powf((2.0 - p) / (2.0 + p)) * 2.0 * PI;
            assert!(
                (a.value - want).abs() <= 1e-10 * want,
                "p={p}: {} vs {want}",
                a.value
            );
        }
    }

    #[test]
    fn lr_ball_as_p_against_frozen_reference() {
        // values pinned from the Gamma closed form through the exponential
        // identity (independent evaluation)
        let lr = Body::lr_ball(2, 3.0).unwrap();
        for (p, want) in [
            (-5.0, 5.311790199477),
            (0.5, 6.472791482163),
            (1.0, 6.190541919922),
            (2.0, 5.923843917544),
            (10.0, 5.581557236703),
        ] {
            let a = as_p(&lr, PParameter::finite(p, 2).unwrap(), &st()).unwrap();
            assert!(
                (a.value - want).abs() <= 1e-9 * want,
                "p={p}: {} vs {want}",
                a.value
            );
        }
        // p = -1 is non-integrable for r = 3
        let a = as_p(&lr, PParameter::finite(-1.0, 2).unwrap(), &st()).unwrap();
        assert_eq!(a.value, f64::INFINITY);
        assert_eq!(a.reason, Reason::Nonintegrable);
    }

    #[test]
    fn via_renyi_route_agrees() {
        let lr = Body::lr_ball(2, 3.0).unwrap();
        for p in [-5.0, 0.5, 1.0, 2.0, 10.0] {
            let a = as_p(&lr, PParameter::finite(p, 2).unwrap(), &st()).unwrap();
            let b = as_p_via_renyi(&lr, p, &st()).unwrap();
            assert!(
                (a.value - b.value).abs() <= 1e-7 * a.value,
                "p={p}: {} vs {}",
                a.value,
                b.value
            );
        }
        // infinite case: classifications agree
        let a = as_p(&lr, PParameter::finite(-1.0, 2).unwrap(), &st()).unwrap();
        let b = as_p_via_renyi(&lr, -1.0, &st()).unwrap();
        assert_eq!(a.value, b.value);
        // disk p=3
        let d = as_p_via_renyi(&Body::ball(2, 1.0).unwrap(), 3.0, &st()).unwrap();
        assert_abs_diff_eq!(d.value, 2.0 * PI, epsilon = 1e-9);
    }

    #[test]
    fn exponential_identity_both_forms() {
        for body in [ellipse(), Body::lr_ball(2, 3.0).unwrap()] {
            for p in [-5.0, 0.5, 1.0, 2.0, 10.0] {
                let (qp, pq) = exponential_identity_residuals(&body, p, &st()).unwrap();
                assert!(qp < 1e-7, "p={p} qp-form {qp}");
                assert!(pq < 1e-7, "p={p} pq-form {pq}");
            }
        }
    }

    #[test]
    fn parameter_maps_roundtrip() {
        for alpha in [0.1, 0.25, 0.5, 0.75, 0.9] {
            let p = alpha_to_p(2, alpha);
            assert!(p > 0.0);
            assert_abs_diff_eq!(p_to_alpha(2, p), alpha, epsilon = 1e-15);
        }
    }

    #[test]
    fn mixed_as_p_reductions() {
        let e = ellipse();
        for p in [1.0, 5.0] {
            let m = mixed_as_p(
                &[e.clone(), e.clone()],
                PParameter::finite(p, 2).unwrap(),
                &st(),
            )
            .unwrap();
            let single = as_p(&e, PParameter::finite(p, 2).unwrap(), &st()).unwrap();
            assert!(
                (m.value - single.value).abs() <= 1e-10 * single.value,
                "p={p}"
            );
        }
        let disk = Body::ball(2, 1.0).unwrap();
        let m = mixed_as_p(
            &[disk.clone(), disk.clone()],
            PParameter::finite(5.0, 2).unwrap(),
            &st(),
        )
        .unwrap();
        assert_abs_diff_eq!(m.value, 2.0 * PI, epsilon = 1e-9);
        // stability under rule doubling comes from the driver; spot-check a
        // mixed pair value is reproducible
        let a = mixed_as_p(
            &[disk.clone(), e.clone()],
            PParameter::finite(1.0, 2).unwrap(),
            &st(),
        )
        .unwrap();
        let b = mixed_as_p(&[disk, e], PParameter::finite(1.0, 2).unwrap(), &st()).unwrap();
        assert_eq!(a.value, b.value);
    }

    #[test]
    fn dual_mixed_volume_examples() {
        let disk = Body::ball(2, 1.0).unwrap();
        let v = dual_mixed_volume(&[disk.clone(), disk.clone()], &st()).unwrap();
        assert_abs_diff_eq!(v, PI, epsilon = 1e-9);
        let b2 = Body::ball(2, 2.0).unwrap();
        let v = dual_mixed_volume(&[b2.clone(), b2.clone()], &st()).unwrap();
        assert_abs_diff_eq!(v, PI / 4.0, epsilon = 1e-9);
        // all = K gives |K°|
        let e = ellipse();
        let v = dual_mixed_volume(&[e.clone(), e.clone()], &st()).unwrap();
        assert_abs_diff_eq!(v, PI / 2.0, epsilon = 1e-8);
        // definitional identity with mixed_as_p at p = ∞
        let disk = Body::ball(2, 1.0).unwrap();
        let m = mixed_as_p(&[disk.clone(), e.clone()], PParameter::PlusInf, &st()).unwrap();
        let dv = dual_mixed_volume(&[disk, e], &st()).unwrap();
        assert_abs_diff_eq!(dv, m.value / 2.0, epsilon = 1e-12);
    }

    #[test]
    fn omega_examples() {
        let disk = Body::ball(2, 1.0).unwrap();
        let o = omega(&disk, &st()).unwrap();
        assert_abs_diff_eq!(o.omega, 1.0, epsilon = 1e-9);
        assert_abs_diff_eq!(o.cal_a, 1.0, epsilon = 1e-9);
        // ball of radius 2: |K|/|K°| = 16, Ω = 16² = 256
        let b2 = Body::ball(2, 2.0).unwrap();
        let o = omega(&b2, &st()).unwrap();
        assert_abs_diff_eq!(o.omega, 256.0, epsilon = 1e-6);
        // ellipse = T(disk), det T = 2: Ω = |det T|^{2n} Ω_disk = 16
        let o = omega(&ellipse(), &st()).unwrap();
        assert_abs_diff_eq!(o.omega, 16.0, epsilon = 1e-8);
    }

    #[test]
    fn omega_limit_diagnostic_decreases() {
        // ellipsoids have D_α ≡ D_KL = 0, so their residuals are identically
        // zero (numerically < 1e-9); the genuinely decreasing case needs a
        // body whose divergences vary with α
        for body in [Body::ball(2, 1.0).unwrap(), ellipse()] {
            let resid = omega_limit_diagnostic(&body, &[10.0, 40.0, 160.0], &st()).unwrap();
            assert!(resid.iter().all(|r| *r < 1e-9), "{resid:?}");
        }
        let resid =
            omega_limit_diagnostic(&Body::lr_ball(2, 3.0).unwrap(), &[10.0, 40.0, 160.0], &st())
                .unwrap();
        assert!(
            resid[0] > resid[1] && resid[1] > resid[2],
            "lr residuals should decrease: {resid:?}"
        );
    }

    #[test]
    fn duality_examples() {
        let disk = Body::ball(2, 1.0).unwrap();
        assert!(duality_residual(&disk, 2.0, &st()).unwrap() < 1e-10);
        for p in [1.0, 2.0, 4.0] {
            assert!(duality_residual(&ellipse(), p, &st()).unwrap() < 1e-6);
            assert!(
                duality_residual(&Body::lr_ball(2, 3.0).unwrap(), p, &st()).unwrap() < 1e-6,
                "lr p={p}"
            );
        }
    }

    #[test]
    fn affine_invariance_examples() {
        let disk = Body::ball(2, 1.0).unwrap();
        let ident = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        assert!(affine_invariance_residual(&disk, &ident, 1.0, &st()).unwrap() < 1e-12);
        let t = vec![vec![2.0, 0.0], vec![0.0, 1.0]];
        assert!(affine_invariance_residual(&disk, &t, 1.0, &st()).unwrap() < 1e-7);
        let t = vec![vec![1.3, 0.4], vec![-0.2, 0.8]];
        assert!(
            affine_invariance_residual(&Body::lr_ball(2, 3.0).unwrap(), &t, 2.0, &st()).unwrap()
                < 1e-6,
            "transformed lr ball"
        );
    }

    #[test]
    fn convexity_inequality() {
        let disk = Body::ball(2, 1.0).unwrap();
        let e = ellipse();
        // K = L: equality (the λ-mixture degenerates)
        let c = convexity_inequality_check(&disk, &disk, 2.0, 0.5, &st()).unwrap();
        assert!(c.holds);
        assert!((c.lhs - c.rhs).abs() < 1e-10);
        let c = convexity_inequality_check(
            &Body::lr_ball(2, 3.0).unwrap(),
            &Body::lr_ball(2, 3.0).unwrap(),
            2.0,
            0.5,
            &st(),
        )
        .unwrap();
        assert!(c.holds);
        assert!((c.lhs - c.rhs).abs() < 1e-9, "lhs {} rhs {}", c.lhs, c.rhs);
        // λ = 0: equality
        let c = convexity_inequality_check(&disk, &e, 2.0, 0.0, &st()).unwrap();
        assert!(c.holds);
        assert!((c.lhs - c.rhs).abs() < 1e-10);
        // disk vs ellipse: both are affine balls with p = q, so the mixed
        // densities coincide and equality persists
        let c = convexity_inequality_check(&disk, &e, 2.0, 0.5, &st()).unwrap();
        assert!(c.holds);
        assert!((c.lhs - c.rhs).abs() < 1e-10, "lhs {} rhs {}", c.lhs, c.rhs);
        // a genuinely strict case needs a non-ellipsoid
        let c = convexity_inequality_check(&disk, &Body::lr_ball(2, 3.0).unwrap(), 2.0, 0.5, &st())
            .unwrap();
        assert!(c.holds);
        assert!(c.lhs > c.rhs + 1e-6, "lhs {} rhs {}", c.lhs, c.rhs);
    }
}
