//! Closed-form ground truth.
//!
//! The unit ball of `l_r^n` admits exact Gamma-ratio expressions for the
//! Rényi divergences of its cone measures, with explicit thresholds beyond
//! which the divergences are infinite. Together with the Dirichlet volume
//! formula and the analytic chord geometry of the disk these serve as
//! independent oracles for the quadrature pipeline.

use crate::error::{Error, Result};
use statrs::function::gamma::ln_gamma;

/// Regime of a closed-form divergence value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Finite,
    PlusInf,
    MinusInf,
}

/// The (r, α) regime boundaries of Example l_r. Only the pair matching the
/// sign of `r - 2` is present; `r = 2` has no thresholds.
#[derive(Debug, Clone, Copy, Default)]
pub struct LrThresholds {
    /// `1 < r < 2`: D_α(P‖Q) = +∞ for α ≥ this.
    pub pq_plus_inf: Option<f64>,
    /// `1 < r < 2`: D_α(Q‖P) = −∞ for α ≤ this.
    pub qp_minus_inf: Option<f64>,
    /// `r > 2`: D_α(P‖Q) = −∞ for α ≤ this.
    pub pq_minus_inf: Option<f64>,
    /// `r > 2`: D_α(Q‖P) = +∞ for α ≥ this.
    pub qp_plus_inf: Option<f64>,
}

impl LrThresholds {
    pub fn for_r(r: f64) -> Self {
        let mut t = LrThresholds::default();
        if r < 2.0 {
            t.pq_plus_inf = Some(1.0 / (2.0 - r));
            t.qp_minus_inf = Some(-(r - 1.0) / (2.0 - r));
        } else if r > 2.0 {
            t.pq_minus_inf = Some(-1.0 / (r - 2.0));
            t.qp_plus_inf = Some((r - 1.0) / (r - 2.0));
        }
        t
    }
}

/// Result of the closed-form l_r divergence.
#[derive(Debug, Clone, Copy)]
pub struct LrOracleResult {
    pub value: f64,
    pub regime: Regime,
    pub thresholds: LrThresholds,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LrDirection {
    /// D_α(P‖Q)
    PQ,
    /// D_α(Q‖P)
    QP,
}

/// Closed-form Rényi divergence of the cone measures of the unit `l_r^n` ball.
///
/// Classifies the regime first; in the finite regime evaluates the Gamma-ratio
/// expression in log space. `α = 1` (KL) has no closed form here.
pub fn lr_renyi_closed_form(
    n: usize,
    r: f64,
    alpha: f64,
    dir: LrDirection,
) -> Result<LrOracleResult> {
    if !(r > 1.0) || !r.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "l_r closed form requires 1 < r < inf, got r = {r}"
        )));
    }
    if alpha == 1.0 {
        return Err(Error::InvalidArgument(
            "the KL case of the l_r closed form is not available".into(),
        ));
    }
    if n < 2 {
        return Err(Error::InvalidArgument("dimension must be >= 2".into()));
    }
    let thresholds = LrThresholds::for_r(r);
    let regime = match dir {
        LrDirection::PQ => {
            if let Some(t) = thresholds.pq_plus_inf {
                if alpha >= t {
                    Regime::PlusInf
                } else {
                    Regime::Finite
                }
            } else if let Some(t) = thresholds.pq_minus_inf {
                if alpha <= t {
                    Regime::MinusInf
                } else {
                    Regime::Finite
                }
            } else {
                Regime::Finite
            }
        }
        LrDirection::QP => {
            if let Some(t) = thresholds.qp_minus_inf {
                if alpha <= t {
                    Regime::MinusInf
                } else {
                    Regime::Finite
                }
            } else if let Some(t) = thresholds.qp_plus_inf {
                if alpha >= t {
                    Regime::PlusInf
                } else {
                    Regime::Finite
                }
            } else {
                Regime::Finite
            }
        }
    };
    let value = match regime {
        Regime::PlusInf => f64::INFINITY,
        Regime::MinusInf => f64::NEG_INFINITY,
        Regime::Finite => {
            let nf = n as f64;
            let a = alpha;
            // log of the bracket, assembled from ln Γ.
            let base_p = ln_gamma(nf / r) - nf * ln_gamma(1.0 / r);
            let base_q = ln_gamma(nf * (1.0 - 1.0 / r)) - nf * ln_gamma(1.0 - 1.0 / r);
            let lg = match dir {
                LrDirection::PQ => {
                    let x = (1.0 - a) / r + a * (1.0 - 1.0 / r);
                    (1.0 - a) * base_p + a * base_q + nf * ln_gamma(x) - ln_gamma(nf * x)
                }
                LrDirection::QP => {
                    let y = a / r + (1.0 - a) * (1.0 - 1.0 / r);
                    a * base_p + (1.0 - a) * base_q + nf * ln_gamma(y) - ln_gamma(nf * y)
                }
            };
            lg / (a - 1.0)
        }
    };
    Ok(LrOracleResult {
        value,
        regime,
        thresholds,
    })
}

/// Volume of the unit `l_r^n` ball: `2^n Γ(1+1/r)^n / Γ(1+n/r)`.
pub fn lr_volume(n: usize, r: f64) -> Result<f64> {
    if !(r > 1.0) || !r.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "l_r volume requires 1 < r < inf, got r = {r}"
        )));
    }
    let nf = n as f64;
    Ok((nf * std::f64::consts::LN_2 + nf * ln_gamma(1.0 + 1.0 / r) - ln_gamma(1.0 + nf / r)).exp())
}

/// Analytic surface body of the disk of radius `ρ` with weight `f ≡ 1`:
/// cutting caps of arc length `s` leaves the disk of radius `ρ cos(s/2ρ)`.
#[derive(Debug, Clone, Copy)]
pub struct DiskSurfaceBodyLaw {
    pub radius: f64,
    pub area_deficit: f64,
}

pub fn disk_surface_body_law(rho: f64, s: f64) -> Result<DiskSurfaceBodyLaw> {
    if !(rho > 0.0) {
        return Err(Error::InvalidArgument("radius must be positive".into()));
    }
    if !(s >= 0.0 && s < std::f64::consts::PI * rho) {
        return Err(Error::InvalidArgument(format!(
            "s must lie in [0, pi*rho), got {s}"
        )));
    }
    let half = s / (2.0 * rho);
    Ok(DiskSurfaceBodyLaw {
        radius: rho * half.cos(),
        area_deficit: std::f64::consts::PI * rho * rho * half.sin() * half.sin(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn lgamma_reference_values() {
        // ln Γ(1/2) = ln sqrt(pi); ln Γ(5) = ln 24
        assert_abs_diff_eq!(ln_gamma(0.5), (PI.sqrt()).ln(), epsilon = 1e-14);
        assert_abs_diff_eq!(ln_gamma(5.0), 24.0f64.ln(), epsilon = 1e-13);
        // relative accuracy on a large argument: Γ(101) = 100!
        let want = (1..=100).map(|k| (k as f64).ln()).sum::<f64>();
        assert!((ln_gamma(101.0) - want).abs() / want < 1e-13);
    }

    #[test]
    fn r2_collapses_to_zero_for_any_order() {
        for n in [2usize, 3, 7, 50] {
            for alpha in [-3.0, -0.5, 0.0, 0.25, 0.9, 2.0, 10.0] {
                for dir in [LrDirection::PQ, LrDirection::QP] {
                    let res = lr_renyi_closed_form(n, 2.0, alpha, dir).unwrap();
                    assert_eq!(res.regime, Regime::Finite);
                    assert!(res.value.abs() < 1e-10, "n={n} alpha={alpha}");
                }
            }
        }
    }

    #[test]
    fn r3_thresholds() {
        // QP hits +inf at alpha >= (r-1)/(r-2) = 2
        let res = lr_renyi_closed_form(2, 3.0, 2.0, LrDirection::QP).unwrap();
        assert_eq!(res.regime, Regime::PlusInf);
        let res = lr_renyi_closed_form(2, 3.0, 1.99, LrDirection::QP).unwrap();
        assert_eq!(res.regime, Regime::Finite);
        // PQ hits -inf at alpha <= -1/(r-2) = -1
        let res = lr_renyi_closed_form(2, 3.0, -1.0, LrDirection::PQ).unwrap();
        assert_eq!(res.regime, Regime::MinusInf);
        let res = lr_renyi_closed_form(2, 3.0, -0.99, LrDirection::PQ).unwrap();
        assert_eq!(res.regime, Regime::Finite);
    }

    #[test]
    fn r_below_two_thresholds() {
        // r = 1.5: PQ = +inf for alpha >= 2, QP = -inf for alpha <= -1
        let t = LrThresholds::for_r(1.5);
        assert_abs_diff_eq!(t.pq_plus_inf.unwrap(), 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(t.qp_minus_inf.unwrap(), -1.0, epsilon = 1e-15);
        let res = lr_renyi_closed_form(2, 1.5, 2.3, LrDirection::PQ).unwrap();
        assert_eq!(res.regime, Regime::PlusInf);
        let res = lr_renyi_closed_form(2, 1.5, -1.1, LrDirection::QP).unwrap();
        assert_eq!(res.regime, Regime::MinusInf);
    }

    #[test]
    fn skew_identity_exact_in_closed_form() {
        // D_α(Q‖P) = α/(1-α) D_{1-α}(P‖Q)
        for r in [1.4, 3.0, 5.0] {
            for alpha in [-0.5, 0.25, 0.6, 0.9] {
                let lhs = lr_renyi_closed_form(2, r, alpha, LrDirection::QP).unwrap();
                let rhs = lr_renyi_closed_form(2, r, 1.0 - alpha, LrDirection::PQ).unwrap();
                if lhs.regime == Regime::Finite && rhs.regime == Regime::Finite {
                    let want = alpha / (1.0 - alpha) * rhs.value;
                    assert!(
                        (lhs.value - want).abs() < 1e-10,
                        "r={r} alpha={alpha}: {} vs {}",
                        lhs.value,
                        want
                    );
                }
            }
        }
    }

    #[test]
    fn threshold_approach_diverges_monotonically() {
        // approach the QP threshold alpha = 2 (r = 3) from below
        let mut prev = f64::NEG_INFINITY;
        for k in 1..=10 {
            let alpha = 2.0 - 0.5f64.powi(k);
            let v = lr_renyi_closed_form(2, 3.0, alpha, LrDirection::QP)
                .unwrap()
                .value;
            assert!(v > prev, "not monotone at k={k}");
            prev = v;
        }
        assert!(prev > 2.0, "should blow up near the threshold");
    }

    #[test]
    fn lr_volume_values() {
        assert_abs_diff_eq!(lr_volume(2, 2.0).unwrap(), PI, epsilon = 1e-13);
        assert_abs_diff_eq!(lr_volume(3, 2.0).unwrap(), 4.0 * PI / 3.0, epsilon = 1e-13);
        // 4 Γ(4/3)² / Γ(5/3)
        assert_abs_diff_eq!(
            lr_volume(2, 3.0).unwrap(),
            3.53327750057090,
            epsilon = 1e-12
        );
    }

    #[test]
    fn disk_law() {
        let l = disk_surface_body_law(1.0, 0.5).unwrap();
        assert_abs_diff_eq!(l.radius, 0.25f64.cos(), epsilon = 1e-15);
        let l0 = disk_surface_body_law(1.0, 0.0).unwrap();
        assert_eq!(l0.area_deficit, 0.0);
        // deficit / s^2 -> pi/4 as s -> 0
        let s = 1e-4;
        let l = disk_surface_body_law(1.0, s).unwrap();
        assert_abs_diff_eq!(l.area_deficit / (s * s), PI / 4.0, epsilon = 1e-8);
    }

    #[test]
    fn alpha_one_unsupported() {
        assert!(lr_renyi_closed_form(2, 3.0, 1.0, LrDirection::PQ).is_err());
    }
}
