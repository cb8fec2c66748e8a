use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use fdt_core::delivery::{execute, plan_delivery};
use fdt_core::lp::{brute_force_optimum, build_lp, solve_simplex};
use fdt_core::placement::{minimal_file_size, place_caches, split_files, Library};
use fdt_core::rat::rat;
use fdt_core::theorem::closed_form_ratios;
use fdt_core::verify::feasible_grid;
use fdt_core::CacheBudget;

fn budget(nr: i64, dr: i64, nt: i64, dt: i64) -> CacheBudget {
    CacheBudget::new(rat(nr, dr), rat(nt, dt)).unwrap()
}

fn bench_simplex(c: &mut Criterion) {
    let problems: Vec<_> = [
        budget(2, 5, 2, 5),
        budget(1, 4, 1, 2),
        budget(7, 60, 31, 60),
    ]
    .iter()
    .map(|b| build_lp(b).unwrap())
    .collect();
    c.bench_function("simplex_three_budgets", |bench| {
        bench.iter(|| {
            for p in &problems {
                std::hint::black_box(solve_simplex(p));
            }
        })
    });
}

fn bench_oracle(c: &mut Criterion) {
    let p = build_lp(&budget(2, 5, 2, 5)).unwrap();
    c.bench_function("brute_force_455_bases", |bench| {
        bench.iter(|| std::hint::black_box(brute_force_optimum(&p).unwrap()))
    });
}

fn bench_grid_sweep(c: &mut Criterion) {
    let step = rat(1, 12);
    c.bench_function("lp_sweep_step_1_12", |bench| {
        bench.iter(|| {
            for b in feasible_grid(&step) {
                std::hint::black_box(solve_simplex(&build_lp(&b).unwrap()));
            }
        })
    });
}

fn bench_simulation(c: &mut Criterion) {
    let b = budget(2, 5, 2, 5);
    let ratios = closed_form_ratios(&b).unwrap();
    let file_size = minimal_file_size(&ratios);
    let library = Library::random(3, file_size, 7);
    c.bench_function("simulate_r2_minimal_f", |bench| {
        bench.iter_batched(
            || split_files(&ratios, &library).unwrap(),
            |layout| {
                let caches = place_caches(&layout, &library);
                let demand = [0usize, 1, 2];
                let plan = plan_delivery(&layout, &library, &demand).unwrap();
                std::hint::black_box(execute(&plan, &caches, &layout, &library, &demand).unwrap())
            },
            BatchSize::SmallInput,
        )
    });
}

criterion_group!(
    benches,
    bench_simplex,
    bench_oracle,
    bench_grid_sweep,
    bench_simulation
);
criterion_main!(benches);
