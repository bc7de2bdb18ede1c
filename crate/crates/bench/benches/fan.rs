use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use permcong::fan::SHELLING_SEEDS;
use permcong::{build_fan, check_fan_poset_properties};
use permcong_bench::congruence;

fn fans(c: &mut Criterion) {
    let mut group = c.benchmark_group("build_fan");
    group.sample_size(10);
    for name in ["tamari", "twisted-baxter", "trivial"] {
        let cong = congruence(name, 5);
        group.bench_with_input(BenchmarkId::new(name, 5), &cong, |b, cong| {
            b.iter(|| build_fan(cong.clone()).unwrap())
        });
    }
    group.finish();

    let fan = build_fan(congruence("tamari", 5)).unwrap();
    let mut group = c.benchmark_group("fan_checks");
    group.sample_size(10);
    group.bench_function("tamari/5", |b| {
        b.iter(|| check_fan_poset_properties(&fan, &SHELLING_SEEDS))
    });
    group.finish();
}

criterion_group!(benches, fans);
criterion_main!(benches);
