//! Cone measures, Rényi divergences and L_p-affine surface areas of convex bodies.
//!
//! A convex body `K` with the origin in its interior carries two natural
//! probability measures on its boundary: the normalized cone measure of `K`
//! itself and the pullback of the cone measure of the polar body `K°` through
//! the Gauss map. This crate computes Rényi divergences `D_α` between those
//! two measures for every order `α ∈ [-∞, ∞]`, the L_p-affine and mixed
//! p-affine surface areas they are exponentials of, and the planar
//! surface-body / illumination-surface-body constructions whose first-order
//! volume expansions recover the same quantities geometrically.
//!
//! The identity web connecting all of these is verified numerically by the
//! [`verify`] module, which the `conegeom` CLI exposes as `conegeom verify`.
//!
//! # Layout
//!
//! * [`body`]: support functions, gauges, curvature functions, polars,
//!   linear images; the supported body kinds (balls, ellipsoids, l_r-balls,
//!   2-D polytopes and linear images of l_r-balls).
//! * [`quad`]: quadrature on `S^{n-1}`: spectrally accurate circle rules,
//!   panelized tanh-sinh rules for integrands with known point singularities,
//!   a Gauss–Legendre × trapezoid product rule on `S²`, and seeded Monte
//!   Carlo for higher dimensions.
//! * [`cone`]: the boundary densities `p_K`, `q_K` and cone-measure checks.
//! * [`divergence`]: Rényi divergences, Hellinger integrals, KL, mixed-body
//!   divergences.
//! * [`affine`]: L_p-affine surface areas, mixed p-affine surface areas,
//!   dual mixed volumes, the `Ω_K` / `A_K` invariants and identity residuals.
//! * [`surface`]: surface bodies `K_{f,s}`, illumination surface bodies
//!   `K^{f,s}`, weighted boundary measures and the s→0 limit extrapolation.
//! * [`oracle`]: closed-form ground truth (Gamma formulas for l_r-balls,
//!   Dirichlet volumes, the analytic disk surface-body law).
//! * [`verify`]: the acceptance suite run by `conegeom verify`.

pub mod affine;
pub mod body;
pub mod cone;
pub mod divergence;
mod error;
pub mod geom2;
pub mod oracle;
pub mod par;
pub mod quad;
pub mod record;
pub mod surface;
pub mod verify;

pub use body::{Body, Direction, RollingRadii};
pub use divergence::{ExtendedValue, Order, Pairing, Reason};
pub use error::{Error, Result};
pub use quad::{IntegralResult, QuadSettings};

/// Default RNG seed for every seeded computation in the crate (Monte Carlo
/// rules, random test transforms). Override with `--seed` in the CLI.
pub const DEFAULT_SEED: u64 = 0x1CEB00DA;
