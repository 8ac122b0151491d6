//! Rayon vs sequential on the data-parallel kernels: Monte Carlo sphere
//! integration, divergence sweeps over singular bodies, and per-direction
//! surface-body offset searches.
//!
//! With the default `parallel` feature both variants run (the sequential one
//! through the runtime switch); built with `--no-default-features` only the
//! sequential path exists and both labels measure it.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use conegeom::affine::{self, PParameter};
use conegeom::divergence::{self, Order, Pairing};
use conegeom::par::set_parallel;
use conegeom::quad::{integrate_mc, QuadSettings};
use conegeom::surface::{BoundaryWeight, SurfaceOptions, WeightSpec};
use conegeom::Body;

fn bench_pair<F: Fn() -> f64>(c: &mut Criterion, name: &str, f: F) {
    let mut group = c.benchmark_group(name);
    group.sample_size(10);
    group.bench_function("parallel", |b| {
        set_parallel(true);
        b.iter(|| black_box(f()))
    });
    group.bench_function("sequential", |b| {
        set_parallel(false);
        b.iter(|| black_box(f()))
    });
    set_parallel(true);
    group.finish();
}

fn monte_carlo(c: &mut Criterion) {
    let st = QuadSettings {
        mc_samples: 200_000,
        ..Default::default()
    };
    bench_pair(c, "mc_integrate_s3_u1_squared", || {
        integrate_mc(4, |d| d.coords()[0] * d.coords()[0], &st).value
    });
}

fn divergence_sweep(c: &mut Criterion) {
    let lr = Body::lr_ball(2, 3.0).unwrap();
    let st = QuadSettings::default();
    let alphas = [-0.5, 0.25, 0.5, 0.9, 1.5];
    bench_pair(c, "lr_divergence_alpha_sweep", || {
        alphas
            .iter()
            .map(|&a| {
                divergence::renyi(&lr, Order::Finite(a), Pairing::QP, &st)
                    .unwrap()
                    .value
            })
            .sum()
    });
}

fn asp_sweep(c: &mut Criterion) {
    let lr = Body::lr_ball(2, 3.0).unwrap();
    let st = QuadSettings::default();
    bench_pair(c, "lr_asp_sweep", || {
        [0.5, 1.0, 2.0, 10.0]
            .iter()
            .map(|&p| {
                affine::as_p(&lr, PParameter::finite(p, 2).unwrap(), &st)
                    .unwrap()
                    .value
            })
            .sum()
    });
}

fn surface_offsets(c: &mut Criterion) {
    let e = Body::ellipsoid(&[vec![2.0, 0.0], vec![0.0, 1.0]]).unwrap();
    let w = BoundaryWeight::new(&e, WeightSpec::Const(1.0)).unwrap();
    let opts = SurfaceOptions {
        boundary_cells: 1 << 13,
        directions: 256,
        max_direction_doublings: 0,
        ..Default::default()
    };
    bench_pair(c, "surface_body_offsets_256_dirs", || {
        conegeom::geom2::polygon_area(
            &conegeom::surface::surface_body(&e, &w, 0.05, &opts).unwrap(),
        )
    });
}

criterion_group!(
    benches,
    monte_carlo,
    divergence_sweep,
    asp_sweep,
    surface_offsets
);
criterion_main!(benches);
