use proptest::prelude::*;
use pseudoalg::lie::catalog::kernel_catalog;
use pseudoalg::pseudo::{random_element, random_pbw};
use pseudoalg::{Direction, Hopf, Tensor, QE};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn setup(alg: usize, seed: u64) -> (Hopf, ChaCha8Rng) {
    let lie = kernel_catalog().swap_remove(alg);
    (Hopf::new(lie), ChaCha8Rng::seed_from_u64(seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn product_is_associative(alg in 0usize..6, seed in any::<u64>()) {
        let (h, mut rng) = setup(alg, seed);
        let [a, b, c] = [0, 1, 2].map(|_| random_pbw(&mut rng, h.dim(), 3, 2));
        prop_assert_eq!(h.mul(&h.mul(&a, &b), &c), h.mul(&a, &h.mul(&b, &c)));
    }

    #[test]
    fn coproduct_is_multiplicative(alg in 0usize..6, seed in any::<u64>()) {
        let (h, mut rng) = setup(alg, seed);
        let a = random_pbw(&mut rng, h.dim(), 3, 2);
        let b = random_pbw(&mut rng, h.dim(), 3, 2);
        prop_assert_eq!(h.coproduct(&h.mul(&a, &b)), h.coproduct(&a).mul(&h, &h.coproduct(&b)));
    }

    #[test]
    fn antipode_reverses_products(alg in 0usize..6, seed in any::<u64>()) {
        let (h, mut rng) = setup(alg, seed);
        let a = random_pbw(&mut rng, h.dim(), 3, 2);
        let b = random_pbw(&mut rng, h.dim(), 3, 2);
        prop_assert_eq!(h.antipode(&h.mul(&a, &b)), h.mul(&h.antipode(&b), &h.antipode(&a)));
    }

    /// `(f h_(1) ⊗ g h_(2)) ⊗_H m = (f ⊗ g) ⊗_H h m`
    #[test]
    fn quotient_is_balanced(alg in 0usize..6, seed in any::<u64>()) {
        let (h, mut rng) = setup(alg, seed);
        let t = Tensor::random(&mut rng, h.dim(), 2, 3, 2);
        let x = random_pbw(&mut rng, h.dim(), 2, 2);
        let gens = [0usize, 1];
        let m = random_element(&mut rng, &h, &gens, 2, 1);
        let lhs = QE::from_tensor(&h, &t.mul(&h, &h.coproduct(&x)), &m);
        let rhs = QE::from_tensor(&h, &t, &m.left_mul(&h, &x));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn swap_is_an_involution(alg in 0usize..6, seed in any::<u64>()) {
        let (h, mut rng) = setup(alg, seed);
        let t = Tensor::random(&mut rng, h.dim(), 2, 3, 2);
        let m = random_element(&mut rng, &h, &[0usize], 2, 1);
        let x = QE::from_tensor(&h, &t, &m);
        let back = x.permute(&h, &[1, 0]).unwrap().permute(&h, &[1, 0]).unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn fourier_round_trip(alg in 0usize..6, seed in any::<u64>()) {
        let (h, mut rng) = setup(alg, seed);
        let t = Tensor::random(&mut rng, h.dim(), 2, 4, 3);
        let f = t.fourier(&h, Direction::Forward).unwrap();
        prop_assert_eq!(f.fourier(&h, Direction::Inverse).unwrap(), t);
    }
}
