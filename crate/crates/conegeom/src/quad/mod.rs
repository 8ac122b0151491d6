//! Quadrature over `S^{n-1}`.
//!
//! Dimension policy: the circle has a spectrally accurate equispaced rule
//! (with a panelized tanh-sinh variant when the integrand declares point
//! singularities), `S²` a Gauss–Legendre × equispaced-azimuth product rule,
//! and `n ≥ 4` seeded Monte Carlo with a standard-error estimate.
//!
//! All deterministic drivers double the resolution until two successive
//! values agree to tolerance (at most [`QuadSettings::max_doublings`]
//! doublings) and reduce node contributions with a fixed pairwise tree, so
//! results do not depend on thread scheduling.

mod gauss;
pub mod tanhsinh;

pub use gauss::gauss_legendre;

use crate::body::Direction;
use crate::error::{Error, Result};
use crate::geom2::{angle_of, unit_from_angle, Vec2};
use crate::par;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use statrs::function::gamma::ln_gamma;

/// Settings shared by every quadrature-backed computation.
#[derive(Debug, Clone, Copy)]
pub struct QuadSettings {
    /// relative convergence tolerance between successive refinements
    pub rtol: f64,
    /// absolute floor for the convergence test (integrals of size O(1))
    pub atol: f64,
    /// maximum number of resolution doublings
    pub max_doublings: u32,
    /// base node count of the equispaced circle rule (even, ≥ 8)
    pub circle_m0: usize,
    /// base polar-node count of the S² product rule
    pub s2_level0: usize,
    /// Monte Carlo sample count for n ≥ 4
    pub mc_samples: usize,
    /// seed for Monte Carlo rules
    pub seed: u64,
}

impl Default for QuadSettings {
    fn default() -> Self {
        QuadSettings {
            rtol: 1e-11,
            atol: 1e-13,
            max_doublings: 12,
            circle_m0: 16,
            s2_level0: 8,
            mc_samples: 200_000,
            seed: crate::DEFAULT_SEED,
        }
    }
}

/// Outcome classification of an integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Finite,
    /// some node evaluated to +∞ (or the integrand is non-integrable)
    PlusInfinity,
    /// the integral vanished and a downstream logarithm will be -∞
    MinusInfinityLogDomain,
    Failed,
}

/// Value + error estimate + classification of one integral.
#[derive(Debug, Clone, Copy)]
pub struct IntegralResult {
    pub value: f64,
    pub err_estimate: f64,
    pub classification: Classification,
}

impl IntegralResult {
    pub fn finite(value: f64, err: f64) -> Self {
        IntegralResult {
            value,
            err_estimate: err,
            classification: Classification::Finite,
        }
    }
    pub fn plus_infinity() -> Self {
        IntegralResult {
            value: f64::INFINITY,
            err_estimate: 0.0,
            classification: Classification::PlusInfinity,
        }
    }
    pub fn failed(value: f64, err: f64) -> Self {
        IntegralResult {
            value,
            err_estimate: err,
            classification: Classification::Failed,
        }
    }
    pub fn is_finite(&self) -> bool {
        self.classification == Classification::Finite
    }
    /// Finite value or a non-convergence error.
    pub fn require_finite(&self) -> Result<f64> {
        match self.classification {
            Classification::Finite => Ok(self.value),
            Classification::PlusInfinity => Err(Error::NonConvergence(
                "integral diverged to +infinity".into(),
            )),
            Classification::MinusInfinityLogDomain => {
                Err(Error::NonConvergence("integral vanished".into()))
            }
            Classification::Failed => Err(Error::NonConvergence(format!(
                "no convergence (last value {}, est err {})",
                self.value, self.err_estimate
            ))),
        }
    }
}

/// Surface area of the unit sphere `S^{n-1}`: `2 π^{n/2} / Γ(n/2)`.
pub fn sphere_surface_area(n: usize) -> f64 {
    let nf = n as f64;
    (std::f64::consts::PI.ln() * (nf / 2.0) + std::f64::consts::LN_2 - ln_gamma(nf / 2.0)).exp()
}

// ---------------------------------------------------------------------------
// explicit rules
// ---------------------------------------------------------------------------

/// Quadrature rule on `S^{n-1}`: nodes, surface-measure weights.
#[derive(Debug, Clone)]
pub struct SphereRule {
    pub dim: usize,
    pub nodes: Vec<Direction>,
    pub weights: Vec<f64>,
    pub kind: RuleKind,
}

#[derive(Debug, Clone, PartialEq)]
pub enum RuleKind {
    CircleTrapezoid,
    S2Product,
    MonteCarlo { seed: u64, samples: usize },
}

impl SphereRule {
    /// Apply the rule to an integrand (fixed pairwise reduction).
    pub fn apply<F>(&self, g: F) -> f64
    where
        F: Fn(&Direction) -> f64 + Sync,
    {
        let vals = par::map_range(self.nodes.len(), |i| g(&self.nodes[i]) * self.weights[i]);
        par::pairwise_sum(&vals)
    }

    pub fn weight_sum(&self) -> f64 {
        par::pairwise_sum(&self.weights)
    }
}

/// `m` equispaced angles on the circle, weights `2π/m`. Spectrally accurate
/// for smooth periodic integrands.
pub fn circle_rule(m: usize) -> Result<SphereRule> {
    if m < 8 || m % 2 != 0 {
        return Err(Error::InvalidArgument(format!(
            "circle rule needs even m >= 8, got {m}"
        )));
    }
    let w = 2.0 * std::f64::consts::PI / m as f64;
    let nodes = (0..m)
        .map(|j| {
            let u = unit_from_angle(2.0 * std::f64::consts::PI * j as f64 / m as f64);
            Direction::new_unchecked(vec![u[0], u[1]])
        })
        .collect();
    Ok(SphereRule {
        dim: 2,
        nodes,
        weights: vec![w; m],
        kind: RuleKind::CircleTrapezoid,
    })
}

/// Product rule on `S²`: `level` Gauss–Legendre nodes in the polar cosine ×
/// `2·level` equispaced azimuths (2·level² nodes). Exact for spherical
/// polynomials of degree up to `2·level - 1`.
pub fn s2_rule(level: usize) -> Result<SphereRule> {
    if level < 1 {
        return Err(Error::InvalidArgument("s2 rule needs level >= 1".into()));
    }
    let (z, wz) = gauss_legendre(level);
    let naz = 2 * level;
    let waz = 2.0 * std::f64::consts::PI / naz as f64;
    let mut nodes = Vec::with_capacity(2 * level * level);
    let mut weights = Vec::with_capacity(2 * level * level);
    for (zi, wzi) in z.iter().zip(&wz) {
        let rho = (1.0 - zi * zi).sqrt();
        for j in 0..naz {
            let phi = 2.0 * std::f64::consts::PI * j as f64 / naz as f64;
            nodes.push(Direction::new_unchecked(vec![
                rho * phi.cos(),
                rho * phi.sin(),
                *zi,
            ]));
            weights.push(wzi * waz);
        }
    }
    Ok(SphereRule {
        dim: 3,
        nodes,
        weights,
        kind: RuleKind::S2Product,
    })
}

/// Seeded Monte Carlo rule: `samples` directions from normalized standard
/// Gaussians drawn from ChaCha8 keyed with `seed`, each weighted
/// `|S^{n-1}|/samples`. Bitwise reproducible for fixed `(n, samples, seed)`.
pub fn mc_rule(n: usize, samples: usize, seed: u64) -> Result<SphereRule> {
    if n < 2 {
        return Err(Error::InvalidArgument("dimension must be >= 2".into()));
    }
    if samples < 1000 {
        return Err(Error::InvalidArgument(
            "Monte Carlo rule needs at least 1000 samples".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let w = sphere_surface_area(n) / samples as f64;
    let mut nodes = Vec::with_capacity(samples);
    while nodes.len() < samples {
        let mut v: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
        let nrm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if nrm < 1e-12 {
            continue;
        }
        v.iter_mut().for_each(|x| *x /= nrm);
        nodes.push(Direction::new_unchecked(v));
    }
    Ok(SphereRule {
        dim: n,
        nodes,
        weights: vec![w; samples],
        kind: RuleKind::MonteCarlo { seed, samples },
    })
}

// ---------------------------------------------------------------------------
// adaptive drivers
// ---------------------------------------------------------------------------

fn converged(curr: f64, prev: f64, st: &QuadSettings) -> bool {
    (curr - prev).abs() <= st.rtol * curr.abs() + st.atol
}

/// Integrate a circle integrand given as a function of the unit vector.
///
/// With empty `breakpoints` this is the equispaced (trapezoid) rule under
/// doubling. Non-empty `breakpoints` (exact unit vectors at the integrand's
/// singular or kink directions) switch to panelized tanh-sinh.
pub fn integrate_circle<F>(g: F, breakpoints: &[Vec2], st: &QuadSettings) -> IntegralResult
where
    F: Fn(Vec2) -> f64 + Sync,
{
    if breakpoints.is_empty() {
        integrate_circle_trapezoid(&g, st)
    } else {
        integrate_circle_panels(&g, breakpoints, st)
    }
}

fn integrate_circle_trapezoid<F>(g: &F, st: &QuadSettings) -> IntegralResult
where
    F: Fn(Vec2) -> f64 + Sync,
{
    let mut m = st.circle_m0.max(8);
    let mut prev: Option<f64> = None;
    for _ in 0..=st.max_doublings {
        let w = 2.0 * std::f64::consts::PI / m as f64;
        let vals = par::map_range(m, |j| {
            let u = unit_from_angle(2.0 * std::f64::consts::PI * j as f64 / m as f64);
            g(u)
        });
        if vals.iter().any(|v| v.is_nan()) {
            return IntegralResult::failed(f64::NAN, f64::INFINITY);
        }
        if vals.iter().any(|v| v.is_infinite()) {
            return IntegralResult::plus_infinity();
        }
        let total = par::pairwise_sum(&vals) * w;
        if let Some(p) = prev {
            if converged(total, p, st) {
                return IntegralResult::finite(total, (total - p).abs());
            }
        }
        prev = Some(total);
        m *= 2;
    }
    IntegralResult::failed(prev.unwrap_or(f64::NAN), f64::INFINITY)
}

fn integrate_circle_panels<F>(g: &F, breakpoints: &[Vec2], st: &QuadSettings) -> IntegralResult
where
    F: Fn(Vec2) -> f64 + Sync,
{
    // sort breakpoints by angle and drop duplicates
    let mut bps: Vec<Vec2> = breakpoints.to_vec();
    bps.sort_by(|a, b| angle_of(*a).partial_cmp(&angle_of(*b)).unwrap());
    bps.dedup_by(|a, b| (angle_of(*a) - angle_of(*b)).abs() < 1e-12);
    if bps.len() >= 2 {
        let first = angle_of(bps[0]) + 2.0 * std::f64::consts::PI;
        if (angle_of(*bps.last().unwrap()) - first).abs() < 1e-12 {
            bps.pop();
        }
    }
    let m = bps.len();
    let arcs: Vec<f64> = (0..m)
        .map(|i| {
            let a = angle_of(bps[i]);
            let b = angle_of(bps[(i + 1) % m]);
            let mut d = b - a;
            if d <= 0.0 {
                d += 2.0 * std::f64::consts::PI;
            }
            d
        })
        .collect();
    let mut prev: Option<f64> = None;
    for level in 3..=(3 + st.max_doublings) {
        match tanhsinh::integrate_level(g, &bps, &arcs, level) {
            None => return IntegralResult::plus_infinity(),
            Some(total) => {
                if !total.is_finite() {
                    return IntegralResult::plus_infinity();
                }
                if let Some(p) = prev {
                    if converged(total, p, st) {
                        return IntegralResult::finite(total, (total - p).abs());
                    }
                }
                prev = Some(total);
            }
        }
    }
    IntegralResult::failed(prev.unwrap_or(f64::NAN), f64::INFINITY)
}

/// Integrate over `S²` with the product rule under level doubling.
pub fn integrate_s2<F>(g: F, st: &QuadSettings) -> IntegralResult
where
    F: Fn(&Direction) -> f64 + Sync,
{
    let mut level = st.s2_level0.max(2);
    let mut prev: Option<f64> = None;
    for _ in 0..=st.max_doublings {
        let rule = match s2_rule(level) {
            Ok(r) => r,
            Err(_) => return IntegralResult::failed(f64::NAN, f64::INFINITY),
        };
        let vals = par::map_range(rule.nodes.len(), |i| g(&rule.nodes[i]) * rule.weights[i]);
        if vals.iter().any(|v| v.is_nan()) {
            return IntegralResult::failed(f64::NAN, f64::INFINITY);
        }
        if vals.iter().any(|v| v.is_infinite()) {
            return IntegralResult::plus_infinity();
        }
        let total = par::pairwise_sum(&vals);
        if let Some(p) = prev {
            if converged(total, p, st) {
                return IntegralResult::finite(total, (total - p).abs());
            }
        }
        prev = Some(total);
        level *= 2;
    }
    IntegralResult::failed(prev.unwrap_or(f64::NAN), f64::INFINITY)
}

/// Monte Carlo integration for `n ≥ 4`; the error estimate is the standard
/// error of the weighted mean.
pub fn integrate_mc<F>(n: usize, g: F, st: &QuadSettings) -> IntegralResult
where
    F: Fn(&Direction) -> f64 + Sync,
{
    let rule = match mc_rule(n, st.mc_samples, st.seed) {
        Ok(r) => r,
        Err(_) => return IntegralResult::failed(f64::NAN, f64::INFINITY),
    };
    let vals = par::map_range(rule.nodes.len(), |i| g(&rule.nodes[i]));
    if vals.iter().any(|v| v.is_nan()) {
        return IntegralResult::failed(f64::NAN, f64::INFINITY);
    }
    if vals.iter().any(|v| v.is_infinite()) {
        return IntegralResult::plus_infinity();
    }
    let area = sphere_surface_area(n);
    let nn = vals.len() as f64;
    let mean = par::pairwise_sum(&vals) / nn;
    let sq: Vec<f64> = vals.iter().map(|v| (v - mean) * (v - mean)).collect();
    let var = par::pairwise_sum(&sq) / (nn - 1.0);
    IntegralResult::finite(area * mean, area * (var / nn).sqrt())
}

/// Dimension-dispatched sphere integration. For `dim == 2` the integrand is
/// evaluated on exact unit vectors and `breakpoints` mark singular/kink
/// directions; higher dimensions ignore `breakpoints`.
pub fn integrate_sphere<F>(
    dim: usize,
    breakpoints: &[Vec2],
    g: F,
    st: &QuadSettings,
) -> IntegralResult
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    match dim {
        2 => integrate_circle(|u| g(&u), breakpoints, st),
        3 => integrate_s2(|d: &Direction| g(d.coords()), st),
        _ => integrate_mc(dim, |d: &Direction| g(d.coords()), st),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn circle_rule_validates_args() {
        assert!(circle_rule(7).is_err());
        assert!(circle_rule(6).is_err());
        assert!(circle_rule(16).is_ok());
    }

    #[test]
    fn circle_rule_integrates_one_and_cos_squared() {
        let r16 = circle_rule(16).unwrap();
        assert_abs_diff_eq!(r16.apply(|_| 1.0), 2.0 * PI, epsilon = 1e-14);
        let r32 = circle_rule(32).unwrap();
        let v = r32.apply(|u| u.coords()[0] * u.coords()[0]);
        assert_abs_diff_eq!(v, PI, epsilon = 1e-14);
    }

    #[test]
    fn circle_doubling_self_consistency_on_ellipse_support() {
        // support of the ellipse diag(2,1) under doubling stabilizes fast
        let h = |u: Vec2| (4.0 * u[0] * u[0] + u[1] * u[1]).sqrt();
        let r64 = circle_rule(64).unwrap();
        let r128 = circle_rule(128).unwrap();
        let v1 = r64.apply(|d| h([d.coords()[0], d.coords()[1]]));
        let v2 = r128.apply(|d| h([d.coords()[0], d.coords()[1]]));
        assert!((v1 - v2).abs() < 1e-12 * v2.abs());
    }

    #[test]
    fn s2_rule_basics() {
        let r = s2_rule(8).unwrap();
        assert_eq!(r.nodes.len(), 2 * 8 * 8);
        assert_abs_diff_eq!(r.weight_sum(), 4.0 * PI, epsilon = 1e-12);
        // ∫ u3² dσ = |S²|/3
        let v = r.apply(|d| d.coords()[2] * d.coords()[2]);
        assert_abs_diff_eq!(v, 4.0 * PI / 3.0, epsilon = 1e-12);
        // support of the unit 3-ball
        let v = r.apply(|_| 1.0);
        assert_abs_diff_eq!(v, 4.0 * PI, epsilon = 1e-12);
    }

    #[test]
    fn mc_rule_is_deterministic_and_unbiased_enough() {
        let a = mc_rule(4, 2000, 7).unwrap();
        let b = mc_rule(4, 2000, 7).unwrap();
        for (x, y) in a.nodes.iter().zip(&b.nodes) {
            assert_eq!(x.coords(), y.coords());
        }
        let c = mc_rule(4, 2000, 8).unwrap();
        assert!(a.nodes[0].coords() != c.nodes[0].coords());

        // |S³| = 2π² exactly by construction
        assert_abs_diff_eq!(a.weight_sum(), 2.0 * PI * PI, epsilon = 1e-10);
        // ∫ u1² = |S³|/4 within 3 standard errors
        let st = QuadSettings {
            mc_samples: 100_000,
            seed: 11,
            ..Default::default()
        };
        let res = integrate_mc(4, |d| d.coords()[0] * d.coords()[0], &st);
        let want = 2.0 * PI * PI / 4.0;
        assert!(
            (res.value - want).abs() < 3.0 * res.err_estimate,
            "{} vs {} (se {})",
            res.value,
            want,
            res.err_estimate
        );
    }

    #[test]
    fn mc_estimator_unbiased_over_seeds() {
        // mean over 50 seeds of ∫ u1² within 3 pooled standard errors
        let want = 2.0 * PI * PI / 4.0;
        let mut acc = 0.0;
        let mut var_acc = 0.0;
        let n_seeds = 50;
        for seed in 0..n_seeds {
            let st = QuadSettings {
                mc_samples: 2000,
                seed,
                ..Default::default()
            };
            let res = integrate_mc(4, |d| d.coords()[0] * d.coords()[0], &st);
            acc += res.value;
            var_acc += res.err_estimate * res.err_estimate;
        }
        let mean = acc / n_seeds as f64;
        let pooled_se = (var_acc).sqrt() / n_seeds as f64;
        assert!(
            (mean - want).abs() < 3.0 * pooled_se,
            "mean {mean} vs {want} (pooled se {pooled_se})"
        );
    }

    #[test]
    fn trapezoid_driver_converges_and_flags_infinity() {
        let st = QuadSettings::default();
        let res = integrate_circle(|_| 1.0, &[], &st);
        assert!(res.is_finite());
        assert_abs_diff_eq!(res.value, 2.0 * PI, epsilon = 1e-12);

        // h^{-2} of the unit disk
        let res = integrate_circle(|_u| 1.0f64, &[], &st);
        assert_abs_diff_eq!(res.value, 2.0 * PI, epsilon = 1e-12);

        // a node evaluating to +inf classifies as plus_infinity
        let res = integrate_circle(
            |u| if u[1].abs() < 0.3 { f64::INFINITY } else { 1.0 },
            &[],
            &st,
        );
        assert_eq!(res.classification, Classification::PlusInfinity);
    }

    #[test]
    fn spectral_convergence_beats_polynomial() {
        // error ratio between m and 2m below 1e-3 for the ellipse support;
        // measured at m = 16 where the error is still above roundoff (by
        // m = 64 it is already at machine precision)
        let h = |u: Vec2| (4.0 * u[0] * u[0] + u[1] * u[1]).sqrt();
        let apply = |m: usize| {
            circle_rule(m)
                .unwrap()
                .apply(|d| h([d.coords()[0], d.coords()[1]]))
        };
        let reference = apply(4096);
        let e16 = (apply(16) - reference).abs();
        let e32 = (apply(32) - reference).abs();
        assert!(e16 > 1e-13, "error must be measurable at m=16: {e16:.3e}");
        assert!(e32 <= 1e-3 * e16, "e16={e16:.3e} e32={e32:.3e}");
        // and by m = 64 the doubling error is at roundoff
        let e64 = (apply(64) - reference).abs();
        assert!(e64 < 1e-12, "e64={e64:.3e}");
    }

    #[test]
    fn sphere_area_values() {
        assert_abs_diff_eq!(sphere_surface_area(2), 2.0 * PI, epsilon = 1e-12);
        assert_abs_diff_eq!(sphere_surface_area(3), 4.0 * PI, epsilon = 1e-12);
        assert_abs_diff_eq!(sphere_surface_area(4), 2.0 * PI * PI, epsilon = 1e-12);
    }
}
