//! Property and invariant tests across modules.

use conegeom::affine::{self, PParameter};
use conegeom::body::{Body, Direction};
use conegeom::divergence::{self, Order, Pairing};
use conegeom::geom2::unit_from_angle;
use conegeom::quad::{integrate_circle, QuadSettings};
use proptest::prelude::*;

fn st() -> QuadSettings {
    QuadSettings::default()
}

fn ellipse() -> Body {
    Body::ellipsoid(&[vec![2.0, 0.0], vec![0.0, 1.0]]).unwrap()
}

fn lr3() -> Body {
    Body::lr_ball(2, 3.0).unwrap()
}

fn square() -> Body {
    Body::polytope(vec![[1.0, 1.0], [-1.0, 1.0], [-1.0, -1.0], [1.0, -1.0]]).unwrap()
}

fn test_bodies() -> Vec<Body> {
    vec![
        Body::ball(2, 2.0).unwrap(),
        ellipse(),
        lr3(),
        Body::lr_ball(2, 1.4).unwrap(),
        square(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(250))]

    #[test]
    fn support_subadditive(
        ux in -1.0f64..1.0, uy in -1.0f64..1.0,
        vx in -1.0f64..1.0, vy in -1.0f64..1.0,
    ) {
        prop_assume!(ux.hypot(uy) > 1e-3 && vx.hypot(vy) > 1e-3);
        for body in test_bodies() {
            let huv = body.support_raw(&[ux + vx, uy + vy]);
            let hu = body.support_raw(&[ux, uy]);
            let hv = body.support_raw(&[vx, vy]);
            prop_assert!(huv <= hu + hv + 1e-10, "{huv} > {hu} + {hv}");
        }
    }

    #[test]
    fn gauge_is_positively_homogeneous(
        x in -2.0f64..2.0, y in -2.0f64..2.0, t in 1e-3f64..100.0,
    ) {
        prop_assume!(x.hypot(y) > 1e-3);
        for body in test_bodies() {
            let g1 = body.gauge_raw(&[t * x, t * y]);
            let g2 = t * body.gauge_raw(&[x, y]);
            prop_assert!((g1 - g2).abs() <= 1e-12 * g2.abs().max(1.0));
        }
    }

    #[test]
    fn contained_points_respect_support(theta in 0.0f64..std::f64::consts::TAU,
                                        px in -3.0f64..3.0, py in -3.0f64..3.0) {
        // any x with gauge(x) <= 1 satisfies <x,u> <= h(u)
        for body in test_bodies() {
            let g = body.gauge_raw(&[px, py]);
            prop_assume!(g > 1e-6);
            let x = [px / g, py / g]; // on the boundary
            let u = unit_from_angle(theta);
            let h = body.support2(u);
            prop_assert!(x[0] * u[0] + x[1] * u[1] <= h + 1e-10 * h.abs());
        }
    }

    #[test]
    fn bipolar_support_matches(theta in 0.0f64..std::f64::consts::TAU) {
        for body in test_bodies() {
            let pp = body.polar().unwrap().polar().unwrap();
            let u = Direction::from_angle(theta);
            let a = body.support(&u).unwrap();
            let b = pp.support(&u).unwrap();
            prop_assert!((a - b).abs() <= 1e-9 * a.abs(), "{a} vs {b}");
        }
    }

    #[test]
    fn gradient_matches_finite_differences(theta in 0.0f64..std::f64::consts::TAU) {
        // central differences of the 1-homogeneous support extension
        let step = 1e-6;
        for body in [Body::ball(2, 2.0).unwrap(), ellipse(), lr3()] {
            let u = unit_from_angle(theta);
            let grad = body.support_gradient_raw(&u).unwrap();
            for k in 0..2 {
                let mut up = [u[0], u[1]];
                let mut dn = [u[0], u[1]];
                up[k] += step;
                dn[k] -= step;
                let fd = (body.support_raw(&up) - body.support_raw(&dn)) / (2.0 * step);
                prop_assert!((fd - grad[k]).abs() < 1e-6, "component {k}: {fd} vs {}", grad[k]);
            }
        }
    }
}

#[test]
fn curvature_identity_against_polyline_perimeter() {
    // ∫ (h + h'') dθ equals the boundary arc length for n = 2
    for body in [ellipse(), lr3()] {
        let res = integrate_circle(
            |u| body.curvature_fn2(u).unwrap(),
            &body.integration_breakpoints2(),
            &st(),
        );
        let total_f = res.require_finite().unwrap();
        let m = 400_000;
        let mut perimeter = 0.0;
        let mut prev = body.boundary_point2(unit_from_angle(0.0)).unwrap();
        for j in 1..=m {
            let t = 2.0 * std::f64::consts::PI * j as f64 / m as f64;
            let p = body.boundary_point2(unit_from_angle(t)).unwrap();
            perimeter += (p[0] - prev[0]).hypot(p[1] - prev[1]);
            prev = p;
        }
        assert!(
            (total_f - perimeter).abs() < 1e-8 * perimeter,
            "∫f = {total_f} vs polyline {perimeter}"
        );
    }
}

#[test]
fn renyi_monotone_in_alpha() {
    // α ↦ D_α(P‖Q) is nondecreasing on (0,1); ellipsoids sit at 0 identically
    for body in [ellipse(), lr3()] {
        let mut prev = f64::NEG_INFINITY;
        for k in 1..=9 {
            let alpha = 0.1 * k as f64;
            let d = divergence::renyi(&body, Order::Finite(alpha), Pairing::PQ, &st())
                .unwrap()
                .value;
            assert!(d >= prev - 1e-10, "alpha={alpha}: {d} < previous {prev}");
            prev = d;
        }
    }
}

#[test]
fn alpha_zero_special_cases() {
    for body in [ellipse(), lr3(), Body::ball(3, 1.5).unwrap()] {
        // D_0(P‖Q) = 0 for every C2+ body
        let d = divergence::renyi(&body, Order::Finite(0.0), Pairing::PQ, &st()).unwrap();
        assert!(d.value.abs() < 1e-9, "PQ alpha=0: {}", d.value);
        // D_0(Q‖P) = -log(as_∞/(n|K°|)) = 0 for C2+ bodies
        let d = divergence::renyi(&body, Order::Finite(0.0), Pairing::QP, &st()).unwrap();
        assert!(d.value.abs() < 1e-8, "QP alpha=0: {}", d.value);
    }
}

#[test]
fn polar_skew_duality() {
    // (1-α) D_α(Q_{K°}‖P_{K°}) = α D_{1-α}(Q_K‖P_K)
    for body in [ellipse(), lr3()] {
        let polar = body.polar().unwrap();
        for alpha in [0.25, 0.4, 0.75] {
            let lhs = (1.0 - alpha)
                * divergence::renyi(&polar, Order::Finite(alpha), Pairing::QP, &st())
                    .unwrap()
                    .value;
            let rhs = alpha
                * divergence::renyi(&body, Order::Finite(1.0 - alpha), Pairing::QP, &st())
                    .unwrap()
                    .value;
            assert!((lhs - rhs).abs() < 1e-7, "alpha={alpha}: {lhs} vs {rhs}");
        }
        // and the P‖Q variant
        for alpha in [0.25, 0.75] {
            let lhs = (1.0 - alpha)
                * divergence::renyi(&polar, Order::Finite(alpha), Pairing::PQ, &st())
                    .unwrap()
                    .value;
            let rhs = alpha
                * divergence::renyi(&body, Order::Finite(1.0 - alpha), Pairing::PQ, &st())
                    .unwrap()
                    .value;
            assert!((lhs - rhs).abs() < 1e-7, "PQ alpha={alpha}: {lhs} vs {rhs}");
        }
    }
}

#[test]
fn as_p_position_invariance_of_polytope_classification() {
    // translating the vertex list before automatic recentering changes
    // nothing: as_0 = n|K| exactly, as_1 = 0
    let translated = Body::polytope(vec![[4.0, 3.5], [2.0, 3.5], [2.0, 1.5], [4.0, 1.5]]).unwrap();
    let a0 = affine::as_p(&translated, PParameter::finite(0.0, 2).unwrap(), &st()).unwrap();
    assert_eq!(a0.value, 8.0);
    let a1 = affine::as_p(&translated, PParameter::finite(1.0, 2).unwrap(), &st()).unwrap();
    assert_eq!(a1.value, 0.0);
}

#[test]
fn extended_values_carry_reasons() {
    // ±∞ values never claim to be plainly "computed"
    let sq = square();
    for alpha in [-1.0, 0.5, 2.0] {
        for pairing in [Pairing::PQ, Pairing::QP] {
            let d = divergence::renyi(&sq, Order::Finite(alpha), pairing, &st()).unwrap();
            if !d.value.is_finite() {
                assert_ne!(d.reason, divergence::Reason::Computed);
            }
        }
    }
    let d = divergence::renyi(&lr3(), Order::Finite(2.0), Pairing::QP, &st()).unwrap();
    assert_eq!(d.reason, divergence::Reason::Nonintegrable);
}

#[test]
fn theorem_equivalence_on_surface_bodies() {
    // c2 · extrapolated limit vs the quadratured weighted-curvature integral
    // for a sample of (body, weight) pairs at module tolerances
    use conegeom::surface::{limit_quotient, BoundaryWeight, SurfaceOptions, WeightSpec};
    let grid: Vec<f64> = (0..8).map(|j| 0.1 * 0.5f64.powi(j)).collect();
    let opts = SurfaceOptions {
        boundary_cells: 1 << 13,
        ..Default::default()
    };
    let cases: Vec<(Body, WeightSpec, &str)> = vec![
        (lr3(), WeightSpec::Const(1.0), "lr f=1"),
        (ellipse(), WeightSpec::FP { p: 1.0 }, "ellipse f_1"),
        (ellipse(), WeightSpec::FP { p: 2.0 }, "ellipse f_2"),
    ];
    for (body, spec, label) in cases {
        let w = BoundaryWeight::new(&body, spec).unwrap();
        let r = limit_quotient(&body, &w, &grid, &opts).unwrap();
        let rel = (r.limit - r.rhs_integral).abs() / r.rhs_integral.abs();
        assert!(
            rel < 0.02,
            "{label}: {} vs {} (rel {rel})",
            r.limit,
            r.rhs_integral
        );
    }
}

#[test]
fn illumination_limit_matches_surface_limit() {
    // the illumination variant extrapolates to the same weighted integral
    use conegeom::surface::{limit_quotient, BoundaryWeight, SurfaceOptions, WeightSpec};
    let grid: Vec<f64> = (0..6).map(|j| 0.1 * 0.5f64.powi(j)).collect();
    let opts = SurfaceOptions {
        boundary_cells: 1 << 13,
        illumination: true,
        ..Default::default()
    };
    let disk = Body::ball(2, 1.0).unwrap();
    let w = BoundaryWeight::new(&disk, WeightSpec::Const(1.0)).unwrap();
    let r = limit_quotient(&disk, &w, &grid, &opts).unwrap();
    let ill = r.illumination_limit.unwrap();
    let want = 2.0 * std::f64::consts::PI;
    assert!(
        (ill - want).abs() < 0.02 * want,
        "illumination limit {ill} vs {want}"
    );
    let e = ellipse();
    let w = BoundaryWeight::new(&e, WeightSpec::Const(1.0)).unwrap();
    let r = limit_quotient(&e, &w, &grid, &opts).unwrap();
    let ill = r.illumination_limit.unwrap();
    assert!(
        (ill - want).abs() < 0.02 * want,
        "ellipse illumination limit {ill} vs {want}"
    );
}

#[test]
fn weight_scaling_law() {
    // replacing f by c·f divides the RHS exactly by c² and the extrapolated
    // limit within 1%
    use conegeom::surface::{limit_quotient, BoundaryWeight, SurfaceOptions, WeightSpec};
    let grid: Vec<f64> = (0..8).map(|j| 0.1 * 0.5f64.powi(j)).collect();
    let opts = SurfaceOptions {
        boundary_cells: 1 << 13,
        ..Default::default()
    };
    let e = ellipse();
    let w1 = BoundaryWeight::new(&e, WeightSpec::Const(1.0)).unwrap();
    let w3 = BoundaryWeight::new(&e, WeightSpec::Const(3.0)).unwrap();
    let r1 = limit_quotient(&e, &w1, &grid, &opts).unwrap();
    let r3 = limit_quotient(&e, &w3, &grid, &opts).unwrap();
    assert!((r3.rhs_integral - r1.rhs_integral / 9.0).abs() < 1e-10 * r1.rhs_integral);
    assert!(
        (r3.limit - r1.limit / 9.0).abs() < 0.01 * (r1.limit / 9.0),
        "{} vs {}",
        r3.limit,
        r1.limit / 9.0
    );
}

#[test]
fn mixed_weight_reproduces_mixed_surface_area() {
    // carrier-independence: the weighted limit equals as_p(K1, K2) whether
    // the carrier is the disk or the ellipse
    use conegeom::surface::{limit_quotient, BoundaryWeight, SurfaceOptions, WeightSpec};
    let grid: Vec<f64> = (0..7).map(|j| 0.1 * 0.5f64.powi(j)).collect();
    let opts = SurfaceOptions {
        boundary_cells: 1 << 13,
        ..Default::default()
    };
    let disk = Body::ball(2, 1.0).unwrap();
    let e = ellipse();
    let p = 1.0;
    let target = affine::mixed_as_p(
        &[disk.clone(), e.clone()],
        PParameter::finite(p, 2).unwrap(),
        &st(),
    )
    .unwrap()
    .value;
    for carrier in [disk.clone(), e.clone()] {
        let w = BoundaryWeight::new(
            &carrier,
            WeightSpec::Mixed {
                bodies: vec![disk.clone(), e.clone()],
                p,
            },
        )
        .unwrap();
        let r = limit_quotient(&carrier, &w, &grid, &opts).unwrap();
        let rel = (r.limit - target).abs() / target;
        assert!(
            rel < 0.02,
            "carrier dim change: {} vs {target} (rel {rel})",
            r.limit
        );
    }
}

#[test]
fn bhattacharyya_equals_normalized_as_n() {
    // ∫ √(pq) dμ = as_n(K) / (n √(|K| |K°|))
    for body in [ellipse(), lr3()] {
        let b = divergence::bhattacharyya(&body, &st()).unwrap();
        let a = affine::as_p(&body, PParameter::finite(2.0, 2).unwrap(), &st()).unwrap();
        let v = body.volume();
        let w = body.polar().unwrap().volume();
        let want = a.value / (2.0 * (v * w).sqrt());
        assert!((b - want).abs() < 1e-8, "{b} vs {want}");
    }
}

#[test]
fn lr_volume_against_rejection_sampling() {
    // Dirichlet volume formula vs a Monte Carlo hit count within 3 standard
    // errors (1e6 points in the bounding square)
    use rand::Rng;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(conegeom::DEFAULT_SEED);
    let n_pts = 1_000_000usize;
    let mut hits = 0usize;
    for _ in 0..n_pts {
        let x: f64 = rng.random_range(-1.0..1.0);
        let y: f64 = rng.random_range(-1.0..1.0);
        if x.abs().powi(3) + y.abs().powi(3) <= 1.0 {
            hits += 1;
        }
    }
    let frac = hits as f64 / n_pts as f64;
    let est = 4.0 * frac;
    let se = 4.0 * (frac * (1.0 - frac) / n_pts as f64).sqrt();
    let want = conegeom::oracle::lr_volume(2, 3.0).unwrap();
    assert!(
        (est - want).abs() < 3.0 * se,
        "MC {est} vs closed form {want} (se {se})"
    );
}

#[test]
fn polytope_limit_extrapolation_rejected() {
    use conegeom::surface::{limit_quotient, BoundaryWeight, SurfaceOptions, WeightSpec};
    let sq = square();
    let w = BoundaryWeight::new(&sq, WeightSpec::Const(1.0)).unwrap();
    let grid: Vec<f64> = (0..4).map(|j| 0.1 * 0.5f64.powi(j)).collect();
    assert!(limit_quotient(&sq, &w, &grid, &SurfaceOptions::default()).is_err());
}

#[test]
fn minimal_function_bounds() {
    use conegeom::surface::{minimal_function_check, BoundaryWeight, KlVariant, WeightSpec};
    let disk = Body::ball(2, 1.0).unwrap();
    let w = BoundaryWeight::new(&disk, WeightSpec::Const(1.0)).unwrap();
    let c = minimal_function_check(&disk, &w, 4096).unwrap();
    assert!((c.min_mf_lower - 1.0).abs() < 1e-12);
    assert!((c.integrability_bound - 2.0 * std::f64::consts::PI).abs() < 1e-6);

    let e = ellipse();
    let w = BoundaryWeight::new(&e, WeightSpec::Const(1.0)).unwrap();
    let c = minimal_function_check(&e, &w, 4096).unwrap();
    // perimeter / r_inner with r_inner = b²/a = 1/2
    let perim = 9.688448220547675; // ellipse (2,1) perimeter
    assert!(c.integrability_bound <= perim / 0.5 + 1e-6);

    // f_QP has a positive lower bound on the ellipse, hence a finite bound
    let w = BoundaryWeight::new(
        &e,
        WeightSpec::FKl {
            variant: KlVariant::Qp,
        },
    )
    .unwrap();
    let c = minimal_function_check(&e, &w, 4096).unwrap();
    assert!(c.min_mf_lower > 0.0);
    assert!(c.integrability_bound.is_finite());
}
