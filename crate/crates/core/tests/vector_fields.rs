//! `A(W(d))` for abelian `d` against polynomial vector fields, bracket computed by hand:
//! `x ⊗_H ∂_a ↦ x ∂/∂t_a` with `t_I = t^I` ordinary monomials.

use std::collections::BTreeMap;

use num_traits::Zero;
use pseudoalg::annihilation::{annihilation_bracket, AnnihilationElement, TruncatedSeries};
use pseudoalg::constructions::Wd;
use pseudoalg::lie::catalog::abelian;
use pseudoalg::{q, Hopf, MultiIndex, Q};

type Field = BTreeMap<(Vec<u32>, usize), Q>;

fn add(f: &mut Field, k: (Vec<u32>, usize), c: Q) {
    let e = f.entry(k.clone()).or_insert_with(Q::zero);
    *e += c;
    if e.is_zero() {
        f.remove(&k);
    }
}

/// `x ∂_a(y) ∂_b - y ∂_b(x) ∂_a` for monomial coefficients.
fn lie_bracket(x: &[u32], a: usize, y: &[u32], b: usize) -> Field {
    let mut out = Field::new();
    let mul = |u: &[u32], v: &[u32]| -> Vec<u32> { u.iter().zip(v).map(|(p, q)| p + q).collect() };
    if y[a] > 0 {
        let mut dy = y.to_vec();
        dy[a] -= 1;
        add(&mut out, (mul(x, &dy), b), q(y[a] as i64));
    }
    if x[b] > 0 {
        let mut dx = x.to_vec();
        dx[b] -= 1;
        add(&mut out, (mul(&dx, y), a), q(-(x[b] as i64)));
    }
    out
}

fn field_of(u: &AnnihilationElement<usize>, below: u32) -> Field {
    let mut f = Field::new();
    for (a, x) in u.components() {
        for (i, c) in x.terms() {
            if i.degree() <= below {
                add(&mut f, (i.as_slice().to_vec(), *a), c.clone());
            }
        }
    }
    f
}

fn cross_check(n: usize, cutoff: u32) {
    let wd = Wd::new(Hopf::new(abelian(n)));
    let monos = MultiIndex::all_up_to(n, cutoff);
    for i in &monos {
        for j in &monos {
            for a in 0..n {
                for b in 0..n {
                    let u = AnnihilationElement::single(TruncatedSeries::monomial(i.clone(), cutoff), a);
                    let v = AnnihilationElement::single(TruncatedSeries::monomial(j.clone(), cutoff), b);
                    let r = annihilation_bracket(&wd, &u, &v).unwrap();
                    let d = r.cutoff();
                    let mut expect = lie_bracket(i.as_slice(), a, j.as_slice(), b);
                    expect.retain(|(m, _), _| m.iter().sum::<u32>() <= d);
                    assert_eq!(field_of(&r, d), expect, "t_{i:?} ∂{a}, t_{j:?} ∂{b}");
                }
            }
        }
    }
}

#[test]
fn line_matches_vector_fields() {
    cross_check(1, 6);
}

#[test]
fn plane_matches_vector_fields() {
    cross_check(2, 4);
}

#[test]
fn euler_field_example() {
    // [∂_t, (t²/2) ∂_t] = t ∂_t
    let wd = Wd::new(Hopf::new(abelian(1)));
    let one = AnnihilationElement::single(TruncatedSeries::one(1, 5), 0usize);
    let half_sq = AnnihilationElement::single(TruncatedSeries::divided(MultiIndex::from_slice(&[2]), 5), 0usize);
    let r = annihilation_bracket(&wd, &one, &half_sq).unwrap();
    let expect = AnnihilationElement::single(TruncatedSeries::monomial(MultiIndex::from_slice(&[1]), 5), 0usize);
    assert!(r.sub(&expect.truncate(r.cutoff()).unwrap()).is_zero());
}
