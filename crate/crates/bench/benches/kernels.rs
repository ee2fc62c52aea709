use criterion::{black_box, criterion_group, criterion_main, Criterion};
use pseudoalg::annihilation::{annihilation_bracket, AnnihilationElement, TruncatedSeries};
use pseudoalg::cohomology::solve_central_extensions;
use pseudoalg::constructions::Wd;
use pseudoalg::lie::catalog::{abelian, sl2};
use pseudoalg::pseudo::{gen_elem, pseudobracket, random_pbw, Pseudoalgebra};
use pseudoalg::{Direction, Hopf, MultiIndex, Tensor};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn hopf(c: &mut Criterion) {
    let h = Hopf::new(sl2());
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let a = random_pbw(&mut rng, 3, 6, 3);
    let b = random_pbw(&mut rng, 3, 6, 3);
    c.bench_function("sl2 product, degree 3", |bch| bch.iter(|| h.mul(black_box(&a), black_box(&b))));
    c.bench_function("sl2 antipode, degree 3", |bch| bch.iter(|| h.antipode(black_box(&a))));
    let t = Tensor::random(&mut rng, 3, 2, 6, 3);
    c.bench_function("sl2 Fourier, degree 3", |bch| bch.iter(|| t.fourier(&h, Direction::Forward).unwrap()));
}

fn brackets(c: &mut Criterion) {
    let wd = Wd::new(Hopf::new(sl2()));
    let h = wd.hopf().clone();
    let x = gen_elem(&h, &0usize).left_mul(&h, &h.gen(1));
    let y = gen_elem(&h, &2usize).left_mul(&h, &h.gen(0));
    c.bench_function("W(sl2) pseudobracket", |bch| bch.iter(|| pseudobracket(&wd, black_box(&x), black_box(&y))));

    let line = Wd::new(Hopf::new(abelian(2)));
    let u = AnnihilationElement::single(TruncatedSeries::monomial(MultiIndex::from_slice(&[2, 1]), 6), 0usize);
    let v = AnnihilationElement::single(TruncatedSeries::monomial(MultiIndex::from_slice(&[1, 3]), 6), 1usize);
    c.bench_function("A(W(abelian2)) bracket at D = 6", |bch| {
        bch.iter(|| annihilation_bracket(&line, &u, &v).unwrap())
    });
}

fn cohomology(c: &mut Criterion) {
    let wd = Wd::new(Hopf::new(abelian(1)));
    let mut g = c.benchmark_group("central extensions");
    g.sample_size(10);
    g.bench_function("W(abelian1), dmax 4", |bch| bch.iter(|| solve_central_extensions(&wd, 4).unwrap()));
    g.finish();
}

criterion_group!(kernels, hopf, brackets, cohomology);
criterion_main!(kernels);
