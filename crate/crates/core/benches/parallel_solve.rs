//! Parallel vs sequential throughput on the two data-parallel surfaces:
//! batch spectrum solves and family-grid sweeps.
//!
//! With the default `parallel` feature the "parallel" series runs on
//! rayon; built with `--no-default-features` both series are sequential
//! and should coincide.

use std::f64::consts::PI;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::rngs::StdRng;
use rand::SeedableRng;

use bc_spectra_core::solver::{solve_spectrum, ScanWindow, Tolerances};
use bc_spectra_core::symmetry::parity_family;
use bc_spectra_core::{exec, sample, Unitary2};

fn batch_spectra(c: &mut Criterion) {
    let mut rng = StdRng::seed_from_u64(0xbe9c_0001);
    let batch: Vec<Unitary2> = (0..48).map(|_| sample::random_unitary(&mut rng)).collect();
    let window = ScanWindow {
        x_max: 15.0 * PI,
        kappa_max: 40.0,
    };
    let tol = Tolerances::default();
    let solve = |u: &Unitary2| {
        solve_spectrum(u, &window, &tol)
            .map(|s| s.points.len())
            .unwrap_or(0)
    };

    let mut group = c.benchmark_group("batch_spectra_48");
    group.sample_size(20);
    group.bench_function(BenchmarkId::new("parallel", 48), |b| {
        b.iter(|| exec::map_slice(&batch, solve).iter().sum::<usize>())
    });
    group.bench_function(BenchmarkId::new("sequential", 48), |b| {
        b.iter(|| exec::map_slice_seq(&batch, solve).iter().sum::<usize>())
    });
    group.finish();
}

fn sweep_ground_state(c: &mut Criterion) {
    let (rows, cols) = (20usize, 20usize);
    let window = ScanWindow {
        x_max: 6.0 * PI,
        kappa_max: 30.0,
    };
    let tol = Tolerances::default();
    let cell = |idx: usize| {
        let eta = (idx / cols) as f64 * PI / rows as f64;
        let theta = (idx % cols) as f64 * 2.0 * PI / cols as f64;
        let u = parity_family(eta, theta);
        solve_spectrum(&u, &window, &tol)
            .map(|s| s.eigenvalues_expanded()[0])
            .unwrap_or(f64::NAN)
    };

    let mut group = c.benchmark_group("sweep_ground_state_20x20");
    group.sample_size(20);
    group.bench_function(BenchmarkId::new("parallel", rows * cols), |b| {
        b.iter(|| {
            exec::map_range(rows * cols, cell)
                .iter()
                .fold(0.0_f64, |acc, v| acc + v.abs())
        })
    });
    group.bench_function(BenchmarkId::new("sequential", rows * cols), |b| {
        b.iter(|| {
            exec::map_range_seq(rows * cols, cell)
                .iter()
                .fold(0.0_f64, |acc, v| acc + v.abs())
        })
    });
    group.finish();
}

criterion_group!(benches, batch_spectra, sweep_ground_state);
criterion_main!(benches);
