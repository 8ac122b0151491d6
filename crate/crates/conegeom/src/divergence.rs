//! Rényi divergences of the cone measures of a convex body and its polar.
//!
//! The boundary of `K` carries the probability densities
//! `p(x) = κ(x) / (n|K°| <x,N(x)>^n)` and `q(x) = <x,N(x)> / (n|K|)` with
//! respect to surface measure. For C²₊ bodies everything is computed on the
//! sphere (`dμ = f dσ`, `<x,N> = h(u)`); polytopes have `κ = 0` almost
//! everywhere and every divergence is classified by rule rather than
//! integrated.
//!
//! Infinite values are classified *before* quadrature wherever the body
//! declares a curvature singularity exponent: an integrand carrying `f^a`
//! near a direction where `f ~ dist^e` is non-integrable exactly when
//! `a·e ≤ -1`, which reproduces the l_r threshold table.

use crate::body::{Body, Smoothness};
use crate::error::{Error, Result};
use crate::geom2::Vec2;
use crate::quad::{
    integrate_circle, integrate_sphere, Classification, IntegralResult, QuadSettings,
};

/// Which divergence direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pairing {
    /// D(P_K ‖ Q_K)
    PQ,
    /// D(Q_K ‖ P_K)
    QP,
}

impl Pairing {
    pub fn flipped(self) -> Pairing {
        match self {
            Pairing::PQ => Pairing::QP,
            Pairing::QP => Pairing::PQ,
        }
    }
}

/// Order of a Rényi divergence. `α = 1` must use [`Order::Kl`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Order {
    Finite(f64),
    Kl,
    PlusInf,
    MinusInf,
}

impl Order {
    /// A finite order; rejects `α = 1` (use [`Order::Kl`]).
    pub fn finite(alpha: f64) -> Result<Order> {
        if alpha == 1.0 {
            return Err(Error::InvalidArgument(
                "alpha = 1 is the KL case; use Order::Kl".into(),
            ));
        }
        if !alpha.is_finite() {
            return Err(Error::InvalidArgument(
                "non-finite alpha; use Order::PlusInf / Order::MinusInf".into(),
            ));
        }
        Ok(Order::Finite(alpha))
    }

    /// Map a real (possibly infinite) α to an order.
    pub fn from_alpha(alpha: f64) -> Order {
        if alpha == 1.0 {
            Order::Kl
        } else if alpha == f64::INFINITY {
            Order::PlusInf
        } else if alpha == f64::NEG_INFINITY {
            Order::MinusInf
        } else {
            Order::Finite(alpha)
        }
    }
}

/// Why a value is what it is, in particular why it is infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reason {
    Computed,
    /// polytope classification (κ = 0 a.e.)
    PolytopeRule,
    /// essential supremum approximated by node maxima
    NodeSup,
    /// classified by the curvature-singularity exponent
    Nonintegrable,
}

impl Reason {
    pub fn as_str(&self) -> &'static str {
        match self {
            Reason::Computed => "computed",
            Reason::PolytopeRule => "polytope_rule",
            Reason::NodeSup => "node_sup",
            Reason::Nonintegrable => "nonintegrable",
        }
    }
}

/// A finite real or ±∞ with the reason for the classification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtendedValue {
    pub value: f64,
    pub reason: Reason,
}

impl ExtendedValue {
    pub fn finite(value: f64) -> Self {
        debug_assert!(value.is_finite());
        ExtendedValue {
            value,
            reason: Reason::Computed,
        }
    }
    pub fn infinite(sign: f64, reason: Reason) -> Self {
        debug_assert!(reason != Reason::Computed);
        ExtendedValue {
            value: if sign >= 0.0 {
                f64::INFINITY
            } else {
                f64::NEG_INFINITY
            },
            reason,
        }
    }
    pub fn with_reason(value: f64, reason: Reason) -> Self {
        ExtendedValue { value, reason }
    }
    pub fn is_finite(&self) -> bool {
        self.value.is_finite()
    }
}

// ---------------------------------------------------------------------------
// sphere-form integrals
// ---------------------------------------------------------------------------

/// `∫_{S^{n-1}} f(u)^a h(u)^b dσ(u)` with singularity classification.
pub(crate) fn sigma_integral(
    body: &Body,
    f_pow: f64,
    h_pow: f64,
    st: &QuadSettings,
) -> IntegralResult {
    if nonintegrable(body, f_pow) {
        return IntegralResult::plus_infinity();
    }
    let n = body.dim();
    let bps = body.integration_breakpoints2();
    if n == 2 {
        integrate_circle(
            |u| {
                let h = body.support2(u);
                let f = body.curvature_fn2(u).expect("smooth body");
                pow_or_one(f, f_pow) * h.powf(h_pow)
            },
            &bps,
            st,
        )
    } else {
        integrate_sphere(
            n,
            &[],
            |v| {
                let h = body.support_raw(v);
                let f = curvature_any(body, v);
                pow_or_one(f, f_pow) * h.powf(h_pow)
            },
            st,
        )
    }
}

#[inline]
fn pow_or_one(base: f64, exp: f64) -> f64 {
    if exp == 0.0 {
        1.0
    } else {
        base.powf(exp)
    }
}

/// Is `f^a` non-integrable against the singular behavior of the curvature
/// function? (`f ~ dist^e` near the singular directions.)
pub(crate) fn nonintegrable(body: &Body, f_pow: f64) -> bool {
    match body.curvature_exponent() {
        Some(e) => f_pow * e <= -1.0,
        None => false,
    }
}

/// Is `f^a` essentially unbounded (sup = +∞)?
fn unbounded_ratio(body: &Body, f_pow: f64) -> bool {
    match body.curvature_exponent() {
        Some(e) => f_pow * e < 0.0,
        None => false,
    }
}

pub(crate) fn volumes(body: &Body) -> Result<(f64, f64)> {
    let v = body.volume();
    let w = body.polar()?.volume();
    Ok((v, w))
}

pub(crate) fn curvature_any(body: &Body, v: &[f64]) -> f64 {
    if body.dim() == 2 {
        body.curvature_fn2([v[0], v[1]]).expect("smooth body")
    } else {
        let hess = body.support_hessian(v).expect("smooth body");
        crate::body::tangential_det(&hess, v)
    }
}

// ---------------------------------------------------------------------------
// Hellinger integrals and finite-order divergences
// ---------------------------------------------------------------------------

/// Hellinger integral `∫ p^α q^{1-α} dμ` of the cone-measure densities
/// (C²₊ bodies). May be +∞; reported through the extended value.
pub fn hellinger(body: &Body, alpha: f64, st: &QuadSettings) -> Result<ExtendedValue> {
    if body.smoothness() == Smoothness::Polytope {
        return Err(Error::PolytopeClassification);
    }
    let res = hellinger_integral(body, alpha, Pairing::PQ, st)?;
    match res.classification {
        Classification::Finite => Ok(ExtendedValue::finite(res.value)),
        Classification::PlusInfinity => Ok(ExtendedValue::infinite(1.0, Reason::Nonintegrable)),
        _ => Err(Error::NonConvergence("hellinger integral failed".into())),
    }
}

/// The normalized Hellinger integral for either pairing:
/// PQ: `∫ f^{1-α} h^{1-α(n+1)} dσ / (n |K|^{1-α} |K°|^α)`;
/// QP: `∫ f^α h^{α(n+1)-n} dσ / (n |K|^α |K°|^{1-α})`.
fn hellinger_integral(
    body: &Body,
    alpha: f64,
    pairing: Pairing,
    st: &QuadSettings,
) -> Result<IntegralResult> {
    let n = body.dim() as f64;
    let (v, w) = volumes(body)?;
    let (f_pow, h_pow, norm) = match pairing {
        Pairing::PQ => (
            1.0 - alpha,
            1.0 - alpha * (n + 1.0),
            n * v.powf(1.0 - alpha) * w.powf(alpha),
        ),
        Pairing::QP => (
            alpha,
            alpha * (n + 1.0) - n,
            n * v.powf(alpha) * w.powf(1.0 - alpha),
        ),
    };
    let mut res = sigma_integral(body, f_pow, h_pow, st);
    if res.classification == Classification::Finite {
        res.value /= norm;
        res.err_estimate /= norm;
    }
    Ok(res)
}

/// Rényi divergence `D_α` of the cone measures of `body`, order `α` in
/// `[-∞, ∞]`, either direction. Polytopes are classified by rule.
pub fn renyi(
    body: &Body,
    order: Order,
    pairing: Pairing,
    st: &QuadSettings,
) -> Result<ExtendedValue> {
    if body.smoothness() == Smoothness::Polytope {
        return Ok(polytope_renyi(order, pairing));
    }
    match order {
        Order::Kl => kl(body, pairing, st),
        Order::Finite(alpha) => {
            if alpha == 1.0 {
                return Err(Error::InvalidArgument(
                    "alpha = 1 must use Order::Kl".into(),
                ));
            }
            let res = hellinger_integral(body, alpha, pairing, st)?;
            match res.classification {
                Classification::Finite => Ok(ExtendedValue::finite(res.value.ln() / (alpha - 1.0))),
                Classification::PlusInfinity => {
                    Ok(ExtendedValue::infinite(alpha - 1.0, Reason::Nonintegrable))
                }
                Classification::MinusInfinityLogDomain => {
                    Ok(ExtendedValue::infinite(1.0 - alpha, Reason::Nonintegrable))
                }
                Classification::Failed => Err(Error::NonConvergence(format!(
                    "renyi divergence at alpha = {alpha} did not converge"
                ))),
            }
        }
        Order::PlusInf => renyi_sup(body, pairing, st),
        Order::MinusInf => {
            // D_{-∞}(·‖·) = -D_{∞} with the arguments swapped
            let v = renyi_sup(body, pairing.flipped(), st)?;
            Ok(ExtendedValue::with_reason(-v.value, v.reason))
        }
    }
}

/// Kullback–Leibler divergence (`α = 1`).
pub fn kl(body: &Body, pairing: Pairing, st: &QuadSettings) -> Result<ExtendedValue> {
    if body.smoothness() == Smoothness::Polytope {
        return Ok(polytope_renyi(Order::Kl, pairing));
    }
    let n = body.dim() as f64;
    let (v, w) = volumes(body)?;
    let dim = body.dim();
    let bps = body.integration_breakpoints2();
    let res = match pairing {
        // ∫ p log(p/q): p_σ = 1/(n|K°|h^n), p/q = |K| / (|K°| f h^{n+1})
        Pairing::PQ => integrate_sphere(
            dim,
            &bps,
            |vv| {
                let h = body.support_raw(vv);
                let f = curvature_any(body, vv);
                let dens = 1.0 / (n * w * h.powf(n));
                dens * (v / (w * f * h.powf(n + 1.0))).ln()
            },
            st,
        ),
        // ∫ q log(q/p): q_σ = h f/(n|K|), q/p = |K°| f h^{n+1} / |K|
        Pairing::QP => integrate_sphere(
            dim,
            &bps,
            |vv| {
                let h = body.support_raw(vv);
                let f = curvature_any(body, vv);
                let dens = h * f / (n * v);
                dens * (w * f * h.powf(n + 1.0) / v).ln()
            },
            st,
        ),
    };
    match res.classification {
        Classification::Finite => Ok(ExtendedValue::finite(res.value)),
        Classification::PlusInfinity => Ok(ExtendedValue::infinite(1.0, Reason::Nonintegrable)),
        _ => Err(Error::NonConvergence("KL integral did not converge".into())),
    }
}

/// `D_∞`: log of the essential supremum of the density ratio, approximated
/// by node maxima with one refinement doubling.
fn renyi_sup(body: &Body, pairing: Pairing, st: &QuadSettings) -> Result<ExtendedValue> {
    let n = body.dim() as f64;
    let (v, w) = volumes(body)?;
    // q/p = |K°| f h^{n+1}/|K| carries f^{+1}; p/q carries f^{-1}
    let f_pow = match pairing {
        Pairing::QP => 1.0,
        Pairing::PQ => -1.0,
    };
    if unbounded_ratio(body, f_pow) {
        return Ok(ExtendedValue::infinite(1.0, Reason::Nonintegrable));
    }
    let ratio = |vv: &[f64]| -> f64 {
        let h = body.support_raw(vv);
        let f = curvature_any(body, vv);
        match pairing {
            Pairing::QP => w * f * h.powf(n + 1.0) / v,
            Pairing::PQ => v / (w * f * h.powf(n + 1.0)),
        }
    };
    let sup = node_sup(body.dim(), &ratio, st);
    Ok(ExtendedValue::with_reason(sup.ln(), Reason::NodeSup))
}

fn node_sup(dim: usize, g: &(dyn Fn(&[f64]) -> f64 + Sync), st: &QuadSettings) -> f64 {
    let eval_grid = |m: usize| -> f64 {
        match dim {
            2 => (0..m)
                .map(|j| {
                    let th = 2.0 * std::f64::consts::PI * (j as f64 + 0.5) / m as f64;
                    g(&[th.cos(), th.sin()])
                })
                .fold(f64::NEG_INFINITY, f64::max),
            3 => {
                let rule = crate::quad::s2_rule(((m as f64).sqrt() as usize).max(8)).unwrap();
                rule.nodes
                    .iter()
                    .map(|d| g(d.coords()))
                    .fold(f64::NEG_INFINITY, f64::max)
            }
            _ => {
                let rule = crate::quad::mc_rule(dim, st.mc_samples.max(1000), st.seed).unwrap();
                rule.nodes
                    .iter()
                    .map(|d| g(d.coords()))
                    .fold(f64::NEG_INFINITY, f64::max)
            }
        }
    };
    let a = eval_grid(1024);
    let b = eval_grid(2048);
    a.max(b)
}

/// Polytope classification table (κ = 0 a.e.).
fn polytope_renyi(order: Order, pairing: Pairing) -> ExtendedValue {
    match pairing {
        // Q‖P is +∞ at every order
        Pairing::QP => ExtendedValue::infinite(1.0, Reason::PolytopeRule),
        Pairing::PQ => match order {
            Order::Kl => ExtendedValue::with_reason(0.0, Reason::PolytopeRule),
            Order::Finite(alpha) => {
                if alpha == 0.0 {
                    ExtendedValue::with_reason(0.0, Reason::PolytopeRule)
                } else if alpha > 0.0 && alpha < 1.0 {
                    ExtendedValue::infinite(1.0, Reason::PolytopeRule)
                } else {
                    ExtendedValue::infinite(-1.0, Reason::PolytopeRule)
                }
            }
            Order::PlusInf | Order::MinusInf => ExtendedValue::infinite(-1.0, Reason::PolytopeRule),
        },
    }
}

/// Bhattacharyya coefficient `∫ √(pq) dμ`; satisfies `D_{1/2} = -2 log(·)`.
pub fn bhattacharyya(body: &Body, st: &QuadSettings) -> Result<f64> {
    let h = hellinger(body, 0.5, st)?;
    if !h.is_finite() {
        return Err(Error::NonConvergence(
            "Bhattacharyya coefficient diverged".into(),
        ));
    }
    Ok(h.value)
}

// ---------------------------------------------------------------------------
// skew duality
// ---------------------------------------------------------------------------

/// Outcome of the skew-duality check `D_α(Q‖P) = α/(1-α) · D_{1-α}(P‖Q)`.
#[derive(Debug, Clone, Copy)]
pub enum SkewOutcome {
    Residual(f64),
    /// one or both sides infinite; reports whether the classifications agree
    InfiniteSides {
        lhs: ExtendedValue,
        rhs: ExtendedValue,
        consistent: bool,
    },
}

/// Evaluate both sides of the skew identity from one shared quadrature.
///
/// The Hellinger integrands of `D_α(Q‖P)` and `D_{1-α}(P‖Q)` are the same
/// function of the boundary point, so both sides are assembled from a single
/// `sigma_integral` value; the residual isolates the order algebra.
pub fn skew_residual(body: &Body, alpha: f64, st: &QuadSettings) -> Result<SkewOutcome> {
    if alpha == 0.0 || alpha == 1.0 {
        return Err(Error::InvalidArgument(
            "skew residual needs alpha outside {0, 1}".into(),
        ));
    }
    if body.smoothness() == Smoothness::Polytope {
        let lhs = polytope_renyi(Order::Finite(alpha), Pairing::QP);
        let rhs = polytope_renyi(Order::Finite(1.0 - alpha), Pairing::PQ);
        return Ok(SkewOutcome::InfiniteSides {
            lhs,
            rhs,
            consistent: true,
        });
    }
    let n = body.dim() as f64;
    let (v, w) = volumes(body)?;
    // shared integral: ∫ f^α h^{α(n+1)-n} dσ appears in both sides
    let shared = sigma_integral(body, alpha, alpha * (n + 1.0) - n, st);
    match shared.classification {
        Classification::Finite => {
            let norm = n * v.powf(alpha) * w.powf(1.0 - alpha);
            let lhs = (shared.value / norm).ln() / (alpha - 1.0);
            let rhs_div = (shared.value / norm).ln() / ((1.0 - alpha) - 1.0);
            let rhs = alpha / (1.0 - alpha) * rhs_div;
            Ok(SkewOutcome::Residual((lhs - rhs).abs()))
        }
        Classification::PlusInfinity => {
            let lhs = ExtendedValue::infinite(alpha - 1.0, Reason::Nonintegrable);
            let scale = alpha / (1.0 - alpha);
            let rhs = ExtendedValue::infinite(scale * -alpha, Reason::Nonintegrable);
            Ok(SkewOutcome::InfiniteSides {
                lhs,
                rhs,
                consistent: lhs.value == rhs.value,
            })
        }
        _ => Err(Error::NonConvergence(
            "skew residual integral failed".into(),
        )),
    }
}

// ---------------------------------------------------------------------------
// boundary-parametrization route (independent discretization, n = 2)
// ---------------------------------------------------------------------------

/// Rényi divergence computed on the boundary parametrization: position,
/// normal, curvature and speed come from the curve derivatives, never from
/// `h` and `f`. This is the independent cross-check route.
pub fn renyi_boundary(
    body: &Body,
    alpha: f64,
    pairing: Pairing,
    st: &QuadSettings,
) -> Result<ExtendedValue> {
    if body.dim() != 2 {
        return Err(Error::InvalidArgument(
            "boundary-route divergences are 2-D only".into(),
        ));
    }
    if alpha == 1.0 {
        return Err(Error::InvalidArgument("use kl() for alpha = 1".into()));
    }
    let curve = body.boundary_curve()?;
    let n = 2.0f64;
    let (v, w) = volumes(body)?;
    let f_pow = match pairing {
        Pairing::QP => alpha,
        Pairing::PQ => 1.0 - alpha,
    };
    if nonintegrable(body, f_pow) {
        return Ok(ExtendedValue::infinite(alpha - 1.0, Reason::Nonintegrable));
    }
    let bps = curve.breakpoints();
    let res = integrate_circle(
        |cs: Vec2| {
            let p = curve.eval(cs);
            let hx = p.pos[0] * p.normal[0] + p.pos[1] * p.normal[1];
            let val = match pairing {
                Pairing::QP => p.kappa.powf(1.0 - alpha) / hx.powf(n - alpha * (n + 1.0)),
                Pairing::PQ => p.kappa.powf(alpha) / hx.powf(alpha * (n + 1.0) - 1.0),
            };
            val * p.speed
        },
        &bps,
        st,
    );
    match res.classification {
        Classification::Finite => {
            let norm = match pairing {
                Pairing::QP => n * v.powf(alpha) * w.powf(1.0 - alpha),
                Pairing::PQ => n * v.powf(1.0 - alpha) * w.powf(alpha),
            };
            Ok(ExtendedValue::finite(
                (res.value / norm).ln() / (alpha - 1.0),
            ))
        }
        Classification::PlusInfinity => {
            Ok(ExtendedValue::infinite(alpha - 1.0, Reason::Nonintegrable))
        }
        _ => Err(Error::NonConvergence(
            "boundary-route divergence did not converge".into(),
        )),
    }
}

// ---------------------------------------------------------------------------
// mixed-body divergences
// ---------------------------------------------------------------------------

fn check_mixed_bodies(bodies: &[Body]) -> Result<usize> {
    if bodies.is_empty() {
        return Err(Error::InvalidArgument("need at least one body".into()));
    }
    let n = bodies[0].dim();
    if bodies.len() != n {
        return Err(Error::InvalidArgument(format!(
            "mixed divergence needs n = {n} bodies in dimension {n}, got {}",
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

pub(crate) fn mixed_breakpoints(bodies: &[Body]) -> Vec<Vec2> {
    let mut out = Vec::new();
    for b in bodies {
        out.extend(b.integration_breakpoints2());
    }
    out.sort_by(|a, b| {
        crate::geom2::angle_of(*a)
            .partial_cmp(&crate::geom2::angle_of(*b))
            .unwrap()
    });
    out.dedup_by(|a, b| (crate::geom2::angle_of(*a) - crate::geom2::angle_of(*b)).abs() < 1e-12);
    out
}

fn mixed_nonintegrable(bodies: &[Body], f_pow: f64) -> bool {
    // at a shared singular direction the local exponents add
    let mut dirs: Vec<(f64, f64)> = Vec::new();
    for b in bodies {
        if let Some(e) = b.curvature_exponent() {
            for d in b.integration_breakpoints2() {
                let ang = crate::geom2::angle_of(d);
                match dirs.iter_mut().find(|(a, _)| (*a - ang).abs() < 1e-12) {
                    Some(entry) => entry.1 += f_pow * e,
                    None => dirs.push((ang, f_pow * e)),
                }
            }
        }
    }
    dirs.iter().any(|(_, tot)| *tot <= -1.0)
}

/// Mixed Rényi divergence of `n` bodies in dimension `n` (single-sphere
/// integral of the product densities). `α = 1` uses the KL displays.
pub fn mixed_renyi(
    bodies: &[Body],
    alpha: f64,
    pairing: Pairing,
    st: &QuadSettings,
) -> Result<ExtendedValue> {
    let n = check_mixed_bodies(bodies)? as f64;
    if alpha == 1.0 {
        return mixed_kl(bodies, pairing, st);
    }
    let dim = bodies[0].dim();
    let vols: Vec<(f64, f64)> = bodies.iter().map(volumes).collect::<Result<Vec<_>>>()?;
    let (f_pow, h_pow) = match pairing {
        Pairing::QP => (alpha / n, alpha / n - (1.0 - alpha)),
        Pairing::PQ => ((1.0 - alpha) / n, (1.0 - alpha) / n - alpha),
    };
    if mixed_nonintegrable(bodies, f_pow) {
        return Ok(ExtendedValue::infinite(alpha - 1.0, Reason::Nonintegrable));
    }
    let norm: f64 = n * vols
        .iter()
        .map(|(v, w)| match pairing {
            Pairing::QP => v.powf(alpha / n) * w.powf((1.0 - alpha) / n),
            Pairing::PQ => v.powf((1.0 - alpha) / n) * w.powf(alpha / n),
        })
        .product::<f64>();
    let bps = mixed_breakpoints(bodies);
    let res = if dim == 2 {
        integrate_circle(
            |u| {
                bodies
                    .iter()
                    .map(|b| {
                        let h = b.support2(u);
                        let f = b.curvature_fn2(u).expect("smooth");
                        f.powf(f_pow) * h.powf(h_pow)
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
                        let f = curvature_any(b, v);
                        f.powf(f_pow) * h.powf(h_pow)
                    })
                    .product::<f64>()
            },
            st,
        )
    };
    match res.classification {
        Classification::Finite => Ok(ExtendedValue::finite(
            (res.value / norm).ln() / (alpha - 1.0),
        )),
        Classification::PlusInfinity => {
            Ok(ExtendedValue::infinite(alpha - 1.0, Reason::Nonintegrable))
        }
        _ => Err(Error::NonConvergence(
            "mixed divergence did not converge".into(),
        )),
    }
}

/// The two `D_1` (KL) displays for mixed bodies.
fn mixed_kl(bodies: &[Body], pairing: Pairing, st: &QuadSettings) -> Result<ExtendedValue> {
    let n = check_mixed_bodies(bodies)? as f64;
    let dim = bodies[0].dim();
    let vols: Vec<(f64, f64)> = bodies.iter().map(volumes).collect::<Result<Vec<_>>>()?;
    let bps = mixed_breakpoints(bodies);
    let eval = |u: &[f64]| -> f64 {
        let mut dens = 1.0;
        let mut log_arg = 0.0;
        for (b, (v, w)) in bodies.iter().zip(&vols) {
            let h = b.support_raw(u);
            let f = curvature_any(b, u);
            match pairing {
                Pairing::QP => {
                    dens *= (f * h).powf(1.0 / n) / (n * v).powf(1.0 / n);
                    log_arg +=
                        ((w / v).powf(1.0 / n) * f.powf(1.0 / n) * h.powf(1.0 + 1.0 / n)).ln();
                }
                Pairing::PQ => {
                    dens *= 1.0 / (h * (n * w).powf(1.0 / n));
                    log_arg +=
                        ((v / w).powf(1.0 / n) / (f.powf(1.0 / n) * h.powf(1.0 + 1.0 / n))).ln();
                }
            }
        }
        dens * log_arg
    };
    let res = if dim == 2 {
        integrate_circle(|u| eval(&u), &bps, st)
    } else {
        integrate_sphere(dim, &[], eval, st)
    };
    match res.classification {
        Classification::Finite => Ok(ExtendedValue::finite(res.value)),
        Classification::PlusInfinity => Ok(ExtendedValue::infinite(1.0, Reason::Nonintegrable)),
        _ => Err(Error::NonConvergence("mixed KL did not converge".into())),
    }
}

/// Residual `|D_mixed(K_1..K_n) - Σ_i D(K_i)|` of the product-factorization
/// claim. With the single-sphere mixed definition the factorization holds
/// only when every body has `P = Q` (balls, ellipsoids); the residual is
/// reported, never asserted.
pub fn product_factorization_residual(
    bodies: &[Body],
    alpha: f64,
    pairing: Pairing,
    st: &QuadSettings,
) -> Result<f64> {
    if alpha < 0.0 {
        return Err(Error::InvalidArgument(
            "product factorization is reported for alpha >= 0".into(),
        ));
    }
    let mixed = mixed_renyi(bodies, alpha, pairing, st)?;
    let mut sum = 0.0;
    for b in bodies {
        let d = renyi(b, Order::from_alpha(alpha), pairing, st)?;
        if !d.is_finite() {
            return Err(Error::NonConvergence(
                "per-body divergence infinite; residual undefined".into(),
            ));
        }
        sum += d.value;
    }
    if !mixed.is_finite() {
        return Err(Error::NonConvergence(
            "mixed divergence infinite; residual undefined".into(),
        ));
    }
    Ok((mixed.value - sum).abs())
}
