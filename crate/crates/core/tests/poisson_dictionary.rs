use std::collections::BTreeMap;

use num_traits::Zero;
use proptest::prelude::*;
use pseudoalg::poisson::{p_from_q, poisson_to_pseudo, pseudo_to_poisson, q_from_p, PoissonBracketSpec, Poly};
use pseudoalg::rational::binomial;
use pseudoalg::{q, Q};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_poly(rng: &mut impl Rng, n: usize, terms: usize, deg: u32) -> Poly {
    let mut p = Poly::zero(2 * n);
    for _ in 0..terms {
        let e: Vec<u32> = (0..2 * n).map(|_| rng.gen_range(0..=deg)).collect();
        p.add_term(e, Q::new(rng.gen_range(-5..=5).into(), rng.gen_range(1..=3).into()));
    }
    p
}

/// `λ^a ∂^b ↦ (-z)^a (z+w)^b`, expanded with the binomial theorem one variable at a time.
fn oracle(p: &Poly, n: usize) -> BTreeMap<Vec<u32>, Q> {
    let mut out: BTreeMap<Vec<u32>, Q> = BTreeMap::new();
    for (e, c) in p.terms() {
        // per variable: list of (exponent of z_i, exponent of w_i, coefficient)
        let mut acc: Vec<(Vec<u32>, Q)> = vec![(vec![0; 2 * n], c.clone())];
        for i in 0..n {
            let (a, b) = (e[i], e[n + i]);
            let sign = if a % 2 == 0 { q(1) } else { q(-1) };
            let mut next = Vec::new();
            for (m, v) in &acc {
                for k in 0..=b {
                    let mut m2 = m.clone();
                    m2[i] += a + k;
                    m2[n + i] += b - k;
                    next.push((m2, v * &sign * Q::from_integer(binomial(b, k))));
                }
            }
            acc = next;
        }
        for (m, v) in acc {
            *out.entry(m).or_insert_with(Q::zero) += v;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

#[test]
fn substitution_matches_binomial_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for trial in 0..20 {
        let n = 1 + trial % 3;
        let qp = random_poly(&mut rng, n, 4, 3);
        let got: BTreeMap<Vec<u32>, Q> = p_from_q(&qp).terms().map(|(e, c)| (e.clone(), c.clone())).collect();
        assert_eq!(got, oracle(&qp, n));
    }
}

#[test]
fn substitution_matches_evaluation() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let qp = random_poly(&mut rng, 2, 5, 3);
    let p = p_from_q(&qp);
    for _ in 0..10 {
        let z: Vec<Q> = (0..2).map(|_| q(rng.gen_range(-4..=4))).collect();
        let w: Vec<Q> = (0..2).map(|_| q(rng.gen_range(-4..=4))).collect();
        let lam: Vec<Q> = z.iter().map(|x| -x).collect();
        let del: Vec<Q> = z.iter().zip(&w).map(|(a, b)| a + b).collect();
        let at_p: Vec<Q> = z.iter().chain(&w).cloned().collect();
        let at_q: Vec<Q> = lam.iter().chain(&del).cloned().collect();
        assert_eq!(p.eval(&at_p), qp.eval(&at_q));
    }
}

proptest! {
    #[test]
    fn inverse_substitution(seed in 0u64..1000, n in 1usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let qp = random_poly(&mut rng, n, 3, 3);
        prop_assert_eq!(q_from_p(&p_from_q(&qp)), qp);
    }

    /// Any table survives the trip through `(H⊗H) ⊗_H L`, whatever its axioms.
    #[test]
    fn pseudo_round_trip(seed in 0u64..1000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut spec = PoissonBracketSpec::new("random", 2, 1);
        for i in 0..2 {
            for j in 0..2 {
                let k = rng.gen_range(0..2);
                spec.add(i, j, k, &random_poly(&mut rng, 1, 2, 2));
            }
        }
        let img = poisson_to_pseudo(&spec).unwrap();
        let back = pseudo_to_poisson(&img.structure, None).unwrap();
        prop_assert_eq!(back.q, spec.q);
    }
}
