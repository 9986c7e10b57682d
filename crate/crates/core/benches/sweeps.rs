use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use kspringer::exec::{self, Mode};
use kspringer::grading::{grade, parabolic};
use kspringer::oracle::{coordinate_ring_dims, principal_nilpotent_search, realize};
use kspringer::pipeline::{principal_gradings, vanishing_sample};
use kspringer::realform::{k_root_datum, standard_form_catalog};
use kspringer::rootdata::set_cache_dir;
use kspringer::series::verify_vanishing;

const MODES: [(&str, Mode); 2] = [
    ("sequential", Mode::Sequential),
    ("parallel", Mode::Parallel),
];

fn lambda_sweep(c: &mut Criterion) {
    let cd = standard_form_catalog("su(2,2)").unwrap().decomposition();
    let kd = k_root_datum(&cd).unwrap();
    let gd = grade(&cd, &kd, &[4, -6, 4]).unwrap();
    let pd = parabolic(&gd, &kd);
    let sample = vanishing_sample(&pd, &kd, 4);
    let mut g = c.benchmark_group("lambda_sweep_su22");
    g.sample_size(10);
    for (name, mode) in MODES {
        g.bench_function(BenchmarkId::new(name, sample.len()), |b| {
            exec::set_mode(mode);
            b.iter(|| {
                exec::map(&sample, |l| {
                    verify_vanishing(l, &gd, &pd, &kd, 6).unwrap().verdict
                })
            });
        });
    }
    g.finish();
}

fn candidate_gradings(c: &mut Criterion) {
    let cd = standard_form_catalog("so*(6)").unwrap().decomposition();
    let kd = k_root_datum(&cd).unwrap();
    let real = realize("so*(6)").unwrap();
    let mut g = c.benchmark_group("candidate_gradings_so6");
    g.sample_size(10);
    for (name, mode) in MODES {
        g.bench_function(name, |b| {
            exec::set_mode(mode);
            b.iter(|| {
                principal_gradings(&cd, &kd, &real, black_box(0))
                    .unwrap()
                    .len()
            });
        });
    }
    g.finish();
}

fn degrees(c: &mut Criterion) {
    let real = realize("su(2,2)").unwrap();
    let cd = real.form.decomposition();
    let kd = k_root_datum(&cd).unwrap();
    let x = principal_gradings(&cd, &kd, &real, 0).unwrap().remove(0).x;
    let mut g = c.benchmark_group("oracle_degrees_su22");
    g.sample_size(10);
    for kmax in [2, 4] {
        for (name, mode) in MODES {
            g.bench_function(BenchmarkId::new(name, kmax), |b| {
                exec::set_mode(mode);
                b.iter(|| coordinate_ring_dims(&real, &x, kmax, black_box(0)).unwrap());
            });
        }
    }
    g.finish();
}

fn random_trials(c: &mut Criterion) {
    let real = realize("sp(4,R)").unwrap();
    let mut g = c.benchmark_group("principal_search_sp4r");
    g.sample_size(10);
    for (name, mode) in MODES {
        g.bench_function(name, |b| {
            exec::set_mode(mode);
            b.iter(|| {
                principal_nilpotent_search(&real, black_box(0))
                    .unwrap()
                    .orbit_dim
            });
        });
    }
    g.finish();
}

fn setup(c: &mut Criterion) {
    set_cache_dir(None);
    lambda_sweep(c);
    candidate_gradings(c);
    degrees(c);
    random_trials(c);
}

criterion_group!(benches, setup);
criterion_main!(benches);
