use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hypercert::nadel::{fermat_deformation, h0_sym_cotangent_p3, solve_connection, DEFAULT_H0_CAP};
use hypercert::thresholds::degree_sweep;
use hypercert::Exec;
use std::hint::black_box;

const STRATEGIES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn sweep(c: &mut Criterion) {
    let mut g = c.benchmark_group("degree_sweep_5_200");
    for (name, exec) in STRATEGIES {
        g.bench_function(name, |b| {
            b.iter(|| degree_sweep(5, black_box(200), exec).unwrap())
        });
    }
    g.finish();
}

fn sections(c: &mut Criterion) {
    let mut g = c.benchmark_group("h0_sym_cotangent_p3");
    for (m, k) in [(3u32, 7i64), (4, 9)] {
        for (name, exec) in STRATEGIES {
            g.bench_with_input(
                BenchmarkId::new(name, format!("m{m}_k{k}")),
                &(m, k),
                |b, &(m, k)| b.iter(|| h0_sym_cotangent_p3(m, k, DEFAULT_H0_CAP, exec).unwrap()),
            );
        }
    }
    g.finish();
}

fn connection(c: &mut Criterion) {
    let mut g = c.benchmark_group("solve_connection");
    g.sample_size(10);
    for (d, k) in [(5u32, [2u32, 1, 1, 1]), (8, [2, 2, 2, 2])] {
        let fam = fermat_deformation(d, k).unwrap();
        for (name, exec) in STRATEGIES {
            g.bench_with_input(BenchmarkId::new(name, format!("d{d}")), &fam, |b, fam| {
                b.iter(|| solve_connection(fam, exec).unwrap())
            });
        }
    }
    g.finish();
}

criterion_group!(benches, sweep, sections, connection);
criterion_main!(benches);
