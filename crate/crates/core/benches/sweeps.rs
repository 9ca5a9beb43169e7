//! Criterion benches for the data-parallel sweeps.
//!
//! With the default `parallel` feature each workload runs twice: once on the
//! global rayon pool and once pinned to a single thread, so one `cargo bench`
//! compares the two.  Built with `--no-default-features` the same workloads
//! run on the plain sequential path.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use klab_core::catalog;
use klab_core::experiments::theorem11_sweep;
use klab_core::kclass::{g_poly, knutson_coeffs};
use klab_core::lorentzian::is_lorentzian;
use klab_core::matroid::Matroid;
use klab_core::polymatroid::Polymatroid;
use klab_core::subset::Subset;

fn bench_modes<F>(c: &mut Criterion, name: &str, work: F)
where
    F: Fn() + Send + Sync,
{
    #[cfg(feature = "parallel")]
    {
        let mut group = c.benchmark_group(name);
        group.bench_function("rayon", |b| b.iter(&work));
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .expect("single-thread pool");
        group.bench_function("one-thread", |b| b.iter(|| pool.install(&work)));
        group.finish();
    }
    #[cfg(not(feature = "parallel"))]
    {
        c.bench_function(&format!("{name}/sequential"), |b| b.iter(&work));
    }
}

fn validation(c: &mut Criterion) {
    let table = Matroid::uniform(6, 12).unwrap().rank_table().to_vec();
    bench_modes(c, "validate/u6_12", move || {
        black_box(Matroid::from_rank_table(12, table.clone()).unwrap());
    });
}

fn theorem11(c: &mut Criterion) {
    let pairs = catalog::pairs("sums").unwrap();
    bench_modes(c, "theorem11/sums_k3", move || {
        let report = theorem11_sweep(&pairs, 3).unwrap();
        assert!(black_box(report).mismatches.is_empty());
    });
}

fn kclass_and_lorentzian(c: &mut Criterion) {
    let u36 = Matroid::uniform(3, 6).unwrap();
    let p = Polymatroid::restriction(
        &u36,
        &[
            Subset::from_elements([0, 1]),
            Subset::from_elements([2, 3]),
            Subset::from_elements([4, 5]),
            Subset::full(6),
        ],
    )
    .unwrap();
    bench_modes(c, "knutson/u36_restriction", {
        let p = p.clone();
        move || {
            black_box(knutson_coeffs(&p));
        }
    });
    let g = g_poly(&p).normalize().unwrap();
    bench_modes(c, "lorentzian/u36_gpoly", move || {
        assert!(is_lorentzian(black_box(&g)).verdict);
    });
}

fn lattice_enumeration(c: &mut Criterion) {
    let u48 = Matroid::uniform(4, 8).unwrap();
    let p = Polymatroid::restriction(
        &u48,
        &[
            Subset::from_elements([0, 1, 2]),
            Subset::from_elements([2, 3, 4]),
            Subset::from_elements([4, 5, 6]),
            Subset::from_elements([6, 7]),
        ],
    )
    .unwrap();
    bench_modes(c, "lattice/independence_points", move || {
        black_box(p.independence_points());
    });
}

criterion_group!(benches, validation, theorem11, kclass_and_lorentzian, lattice_enumeration);
criterion_main!(benches);
