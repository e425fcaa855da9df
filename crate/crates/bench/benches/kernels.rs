use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use quatsphere_core::harmonic::{joint_eigenspaces_all, projection_kernel_bruteforce};
use quatsphere_core::multiplier::{ball_volume_mc, resolvent_diag_sum};
use quatsphere_core::ops::{fischer_inner, gamma_op, sphere_inner};
use quatsphere_core::quat::SpherePoint;
use quatsphere_core::scalar::Rat;
use quatsphere_core::zonal::{gamma_coeffs, weight2_step, zonal_z_poly, KernelPoly};
use quatsphere_core::CRat;
use std::hint::black_box;

fn bench_zonal_expansion(c: &mut Criterion) {
    c.bench_function("zonal_z_poly n=2 (6,2)", |b| {
        b.iter(|| black_box(zonal_z_poly(2, 6, 2)));
    });
}

fn bench_exact_operators(c: &mut Criterion) {
    let z = zonal_z_poly(2, 5, 1);
    c.bench_function("gamma_op on zonal (5,1)", |b| {
        b.iter(|| black_box(gamma_op(&z)));
    });
    let z2 = zonal_z_poly(2, 4, 1);
    c.bench_function("sphere_inner zonal (5,1) x (4,1)", |b| {
        b.iter(|| black_box(sphere_inner(&z, &z2)));
    });
    c.bench_function("fischer_inner zonal (5,1) x (5,1)", |b| {
        b.iter(|| black_box(fischer_inner(&z, &z)));
    });
}

fn bench_eigenspaces(c: &mut Criterion) {
    let mut g = c.benchmark_group("eigenspaces");
    g.sample_size(10);
    g.bench_function("joint_eigenspaces_all n=2 h=4", |b| {
        b.iter(|| black_box(joint_eigenspaces_all(2, 4).unwrap()));
    });
    g.bench_function("projection_kernel (2,3,1)", |b| {
        b.iter_batched(
            || joint_eigenspaces_all(2, 3).unwrap().pop().unwrap(),
            |space| {
                black_box(
                    projection_kernel_bruteforce(&space, &SpherePoint::<Rat>::basepoint(2)).unwrap(),
                )
            },
            BatchSize::SmallInput,
        );
    });
    g.finish();
}

fn bench_coefficient_algebra(c: &mut Criterion) {
    let mut kp = KernelPoly::<CRat>::zero(2);
    for h in 0..=20u32 {
        for m in 0..=h / 2 {
            kp.insert_add(
                quatsphere_core::SpectralIndex::new(h, m).unwrap(),
                CRat::from_int((h + m + 1) as i64),
            );
        }
    }
    c.bench_function("weight2_step on 121-index kernel polynomial", |b| {
        b.iter(|| black_box(weight2_step(&kp)));
    });
    c.bench_function("gamma_coeffs n=2 (40,13)", |b| {
        b.iter(|| black_box(gamma_coeffs(2, 40, 13)));
    });
}

fn bench_scans(c: &mut Criterion) {
    let mut g = c.benchmark_group("scans");
    g.sample_size(10);
    g.bench_function("ball_volume_mc 1e6 samples", |b| {
        b.iter(|| black_box(ball_volume_mc(2, &[0.3, 0.4, 0.5], 1_000_000, 42)));
    });
    g.bench_function("resolvent_diag_sum r=1/8", |b| {
        b.iter(|| black_box(resolvent_diag_sum(2, 0.125, 3, 1e-10, 1).unwrap()));
    });
    g.finish();
}

criterion_group!(
    benches,
    bench_zonal_expansion,
    bench_exact_operators,
    bench_eigenspaces,
    bench_coefficient_algebra,
    bench_scans
);
criterion_main!(benches);
