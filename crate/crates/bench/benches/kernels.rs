use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use multisupp_core::arrangement::random::sample_arrangement;
use multisupp_core::arrangement::DEFAULT_TRIALS;
use multisupp_core::flagvariety::{flag_support, monk_chain_count, schubert_divisor_degree};
use multisupp_core::polymatroid::{base_polytope_points, ingleton_check};
use multisupp_core::{IngletonMode, RankFunction, RationalMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> RationalMatrix {
    let data: Vec<Vec<i64>> = (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(-5..=5)).collect())
        .collect();
    RationalMatrix::from_i64_rows(cols, &data).unwrap()
}

fn rank(c: &mut Criterion) {
    let mut group = c.benchmark_group("rank");
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for size in [4, 8, 16] {
        let m = random_matrix(&mut rng, size, size);
        group.bench_with_input(BenchmarkId::from_parameter(size), &m, |b, m| {
            b.iter(|| black_box(m).rank())
        });
    }
    group.finish();
}

fn base_polytope(c: &mut Criterion) {
    let mut group = c.benchmark_group("base_polytope");
    for (k, n) in [(3, 6), (4, 8), (5, 10)] {
        let f = RankFunction::uniform_matroid(k, n).unwrap();
        group.bench_with_input(BenchmarkId::new("uniform", format!("U{k},{n}")), &f, |b, f| {
            b.iter(|| base_polytope_points(black_box(f)).unwrap())
        });
    }
    group.finish();
}

fn ingleton(c: &mut Criterion) {
    let vamos = RankFunction::vamos();
    let mut group = c.benchmark_group("ingleton");
    group.bench_function("vamos/elements", |b| {
        b.iter(|| ingleton_check(black_box(&vamos), IngletonMode::Elements))
    });
    group.sample_size(10);
    group.bench_function("vamos/subsets", |b| {
        b.iter(|| ingleton_check(black_box(&vamos), IngletonMode::Subsets))
    });
    group.finish();
}

fn flag_degrees(c: &mut Criterion) {
    let mut group = c.benchmark_group("flag_degrees");
    let a = [2u32, 2, 2];
    group.bench_function("reduce/n3", |b| b.iter(|| schubert_divisor_degree(black_box(&a))));
    group.bench_function("monk/n3", |b| b.iter(|| monk_chain_count(black_box(&a))));
    group.sample_size(10);
    group.bench_function("support/n4", |b| b.iter(|| flag_support(black_box(4)).unwrap()));
    group.finish();
}

fn li_oracle(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let arr = sample_arrangement(&mut rng, 4, 8, 5);
    let li = arr.li_rank().unwrap();
    let a: Vec<u32> = base_polytope_points(&li)
        .unwrap()
        .iter()
        .find(|p| p.iter().sum::<u32>() as usize + 1 == arr.ambient_dim())
        .cloned()
        .unwrap_or_else(|| vec![0; arr.n()]);
    let mut group = c.benchmark_group("li_oracle");
    group.bench_function("member/n4_d8", |b| {
        b.iter(|| arr.generic_selection_coefficient(black_box(&a), 3, DEFAULT_TRIALS))
    });
    group.bench_function("li_rank/n4_d8", |b| b.iter(|| black_box(&arr).li_rank().unwrap()));
    group.finish();
}

criterion_group!(benches, rank, base_polytope, ingleton, flag_degrees, li_oracle);
criterion_main!(benches);
