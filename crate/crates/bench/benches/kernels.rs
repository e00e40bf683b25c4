use criterion::{black_box, criterion_group, criterion_main, BatchSize, Criterion};

use grpalg_core::algebra::{AlgElem, Side};
use grpalg_core::catalog::top;
use grpalg_core::cyclotomic::CycNum;
use grpalg_core::ideal::solve_in_algebra;
use grpalg_core::lemmas::{definitions, verify_lemma, VerifyConfig};
use grpalg_core::modlab::{build_module, ModSpec, ModuleKind};

fn cyclotomic(c: &mut Criterion) {
    let a = CycNum::zeta(21, 1).try_add(&CycNum::from_int(21, 3)).unwrap();
    let b = CycNum::zeta(21, 5).try_sub(&CycNum::zeta(21, 13)).unwrap();
    c.bench_function("cyc21_mul", |bch| bch.iter(|| black_box(&a).try_mul(black_box(&b)).unwrap()));
    c.bench_function("cyc21_inv", |bch| bch.iter(|| black_box(&a).inv().unwrap()));
}

fn group_algebra(c: &mut Criterion) {
    let t = top("psl27").unwrap();
    let e2 = t.chi(2).central_idempotent(7).unwrap();
    let e4 = t.chi(4).central_idempotent(7).unwrap();
    c.bench_function("psl27_central_idempotent_chi2", |bch| bch.iter(|| t.chi(2).central_idempotent(7).unwrap()));
    c.bench_function("psl27_alg_mul", |bch| bch.iter(|| black_box(&e2) * black_box(&e4)));
    let one = AlgElem::one(&t.group, 7);
    c.bench_function("psl27_conj_by", |bch| bch.iter(|| black_box(&e2).conj_by(17)));
    c.bench_function("psl27_is_central", |bch| bch.iter(|| black_box(&one).is_central()));
}

fn solver(c: &mut Criterion) {
    let d = definitions("2.1").unwrap();
    let lhs = d.elem("eC7_1") * d.elem("eD4");
    let rhs = d.elem("eD4").clone();
    let mut g = c.benchmark_group("solver");
    g.sample_size(10);
    g.bench_function("psl27_left_solve_2_1_5", |bch| bch.iter(|| solve_in_algebra(&lhs, &rhs, Side::Left).unwrap()));
    g.finish();
}

fn lemma_suites(c: &mut Criterion) {
    let cfg = VerifyConfig::default();
    let mut g = c.benchmark_group("lemma");
    g.sample_size(10);
    for id in ["2.3", "4.3"] {
        g.bench_function(id, |bch| bch.iter(|| verify_lemma(id, &cfg).unwrap()));
    }
    g.finish();
}

fn module_lab(c: &mut Criterion) {
    let mut g = c.benchmark_group("modlab");
    g.sample_size(10);
    let spec = ModSpec::new("psl27", ModuleKind::Regular).unwrap();
    let e = top("psl27").unwrap().chi(6).central_idempotent(7).unwrap();
    g.bench_function("psl27_regular_build", |bch| bch.iter(|| build_module(&spec).unwrap()));
    g.bench_function("psl27_regular_rank_chi6", |bch| {
        bch.iter_batched(|| build_module(&spec).unwrap(), |m| m.image_dim(&e).unwrap(), BatchSize::LargeInput)
    });
    g.finish();
}

criterion_group!(benches, cyclotomic, group_algebra, solver, lemma_suites, module_lab);
criterion_main!(benches);
