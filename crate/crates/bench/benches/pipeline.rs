//! End-to-end timings for the estimation pipeline on simulated data.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use robustiv::clique::max_cliques;
use robustiv::control_function::{cf_fit, BasisSpec};
use robustiv::endogeneity::endo_test;
use robustiv::probit_cf::probit_cf_fit;
use robustiv::regression::{probit_fit, reduced_form_fit};
use robustiv::tsht::{select_relevant, tsht};
use robustiv::uniform_ci::{sampling_ci, searching_ci};
use robustiv::{AnalysisOptions, DMatrix, DVector, Grid, SamplingOptions};

use robustiv_bench::{linear_dataset, probit_dataset, random_graph};

fn bench_reduced_form(c: &mut Criterion) {
    let ds = linear_dataset(2000, 1);
    c.bench_function("reduced_form_fit n=2000 p_z=10", |b| {
        b.iter(|| reduced_form_fit(black_box(&ds)).unwrap())
    });
}

fn bench_tsht(c: &mut Criterion) {
    let ds = linear_dataset(2000, 2);
    let opts = AnalysisOptions::default();
    c.bench_function("tsht n=2000 p_z=10", |b| {
        b.iter(|| tsht(black_box(&ds), &opts).unwrap())
    });
}

fn bench_intervals(c: &mut Criterion) {
    let ds = linear_dataset(2000, 3);
    let opts = AnalysisOptions::default();
    let rf = reduced_form_fit(&ds).unwrap();
    let s_hat = select_relevant(&rf, opts.lambda1(ds.n())).unwrap();
    let base = Grid::default_for(&rf, &s_hat).unwrap();
    let grid = Grid::new(base.lo, base.hi, 2001).unwrap();
    c.bench_function("searching_ci 2001 grid points", |b| {
        b.iter(|| searching_ci(black_box(&rf), &s_hat, 0.05, Some(grid)).unwrap())
    });
    let sampling = SamplingOptions { m: 500, ..Default::default() };
    c.bench_function("sampling_ci M=500", |b| {
        b.iter(|| sampling_ci(black_box(&rf), &s_hat, 0.05, Some(grid), &sampling).unwrap())
    });
}

fn bench_endo_test(c: &mut Criterion) {
    let ds = linear_dataset(2000, 4);
    let opts = AnalysisOptions::default();
    c.bench_function("endo_test n=2000", |b| {
        b.iter(|| endo_test(black_box(&ds), true, None, &opts).unwrap())
    });
}

fn bench_max_cliques(c: &mut Criterion) {
    let g = random_graph(18, 0.5, 5);
    c.bench_function("max_cliques 18 vertices", |b| {
        b.iter(|| max_cliques(black_box(&g)).unwrap())
    });
}

fn bench_probit(c: &mut Criterion) {
    let ds = probit_dataset(2000, 6);
    let n = ds.n();
    let design = DMatrix::from_fn(n, 2 + ds.p_z(), |i, j| match j {
        0 => 1.0,
        1 => ds.d()[i],
        _ => ds.z()[(i, j - 2)],
    });
    let y = DVector::from_fn(n, |i, _| ds.y()[i]);
    c.bench_function("probit_fit n=2000 p=7", |b| {
        b.iter(|| probit_fit(black_box(&design), black_box(&y)).unwrap())
    });
    let opts = AnalysisOptions::default();
    c.bench_function("probit_cf_fit n=2000", |b| {
        b.iter(|| probit_cf_fit(black_box(&ds), false, &opts).unwrap())
    });
}

fn bench_control_function(c: &mut Criterion) {
    let ds = linear_dataset(2000, 7);
    let spec = BasisSpec { d_powers: vec![1, 2], z_powers: vec![1, 2], x_powers: vec![1] };
    c.bench_function("cf_fit quadratic n=2000", |b| {
        b.iter(|| cf_fit(black_box(&ds), &spec).unwrap())
    });
}

criterion_group!(
    benches,
    bench_reduced_form,
    bench_tsht,
    bench_intervals,
    bench_endo_test,
    bench_max_cliques,
    bench_probit,
    bench_control_function
);
criterion_main!(benches);
