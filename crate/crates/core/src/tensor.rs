//! Tensor powers `H^{⊗n}` and the Fourier transform on `H ⊗ H`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::multiindex::MultiIndex;
use crate::pbw::{Hopf, PbwElem};
use crate::rational::{fmt_coeff_prefix, join_signed, q, Q};
use crate::report::Report;

pub type Slots = SmallVec<[MultiIndex; 4]>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tensor {
    arity: usize,
    terms: BTreeMap<Slots, Q>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

/// Calls `f` on every term of `c · a_1 ⊗ ... ⊗ a_n`.
pub fn expand_product(parts: &[&PbwElem], c: &Q, f: &mut impl FnMut(Slots, Q)) {
    fn rec(parts: &[&PbwElem], k: usize, cur: &mut Slots, c: Q, f: &mut impl FnMut(Slots, Q)) {
        if k == parts.len() {
            f(cur.clone(), c);
            return;
        }
        for (i, v) in parts[k].terms() {
            cur.push(i.clone());
            rec(parts, k + 1, cur, &c * v, f);
            cur.pop();
        }
    }
    if c.is_zero() {
        return;
    }
    rec(parts, 0, &mut Slots::new(), c.clone(), f);
}

impl Tensor {
    pub fn zero(arity: usize) -> Self {
        Tensor { arity, terms: BTreeMap::new() }
    }

    /// `a_1 ⊗ ... ⊗ a_n`.
    pub fn from_factors(parts: &[PbwElem]) -> Self {
        let mut t = Tensor::zero(parts.len());
        let refs: Vec<&PbwElem> = parts.iter().collect();
        expand_product(&refs, &q(1), &mut |s, c| t.add_term(s, c));
        t
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Slots, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, slots: &[MultiIndex]) -> Q {
        let key: Slots = slots.iter().cloned().collect();
        self.terms.get(&key).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, slots: Slots, c: Q) {
        debug_assert_eq!(slots.len(), self.arity);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(slots) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Tensor, c: &Q) {
        assert_eq!(self.arity, other.arity);
        for (s, v) in &other.terms {
            self.add_term(s.clone(), v * c);
        }
    }

    pub fn add(&self, other: &Tensor) -> Tensor {
        let mut out = self.clone();
        out.add_scaled(other, &q(1));
        out
    }

    pub fn sub(&self, other: &Tensor) -> Tensor {
        let mut out = self.clone();
        out.add_scaled(other, &q(-1));
        out
    }

    pub fn scale(&self, c: &Q) -> Tensor {
        let mut out = Tensor::zero(self.arity);
        out.add_scaled(self, c);
        out
    }

    /// Componentwise product in the algebra `H^{⊗n}`.
    pub fn mul(&self, hopf: &Hopf, other: &Tensor) -> Tensor {
        assert_eq!(self.arity, other.arity);
        let mut out = Tensor::zero(self.arity);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let prods: Vec<_> = a.iter().zip(b.iter()).map(|(x, y)| hopf.mono_mul(x, y)).collect();
                let refs: Vec<&PbwElem> = prods.iter().map(|p| p.as_ref()).collect();
                expand_product(&refs, &(ca * cb), &mut |s, c| out.add_term(s, c));
            }
        }
        out
    }

    /// `t ⊗ u`.
    pub fn outer(&self, other: &Tensor) -> Tensor {
        let mut out = Tensor::zero(self.arity + other.arity);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let mut s = a.clone();
                s.extend(b.iter().cloned());
                out.add_term(s, ca * cb);
            }
        }
        out
    }

    /// Places input slot `k` at output position `perm[k]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Tensor> {
        check_perm(perm, self.arity)?;
        let mut out = Tensor::zero(self.arity);
        for (s, c) in &self.terms {
            let mut t: Slots = s.clone();
            for (k, &p) in perm.iter().enumerate() {
                t[p] = s[k].clone();
            }
            out.add_term(t, c.clone());
        }
        Ok(out)
    }

    /// Random tensor with at most `terms` monomials of degree `≤ deg` per slot.
    pub fn random(rng: &mut impl Rng, n: usize, arity: usize, terms: usize, deg: u32) -> Tensor {
        let monos = MultiIndex::all_up_to(n, deg);
        let mut t = Tensor::zero(arity);
        for _ in 0..terms {
            let s: Slots = (0..arity).map(|_| monos[rng.gen_range(0..monos.len())].clone()).collect();
            t.add_term(s, Q::from_integer(rng.gen_range(-3i64..=3).into()));
        }
        t
    }

    /// Applies `Δ` to slot `k`, raising the arity by one.
    pub fn coproduct_at(&self, k: usize) -> Tensor {
        let mut out = Tensor::zero(self.arity + 1);
        for (s, c) in &self.terms {
            for parts in s[k].compositions(2) {
                let mut t: Slots = Slots::new();
                t.extend(s[..k].iter().cloned());
                t.extend(parts);
                t.extend(s[k + 1..].iter().cloned());
                out.add_term(t, c.clone());
            }
        }
        out
    }

    /// Applies the antipode to slot `k`.
    pub fn antipode_at(&self, hopf: &Hopf, k: usize) -> Tensor {
        self.map_slot(hopf, k, |i| hopf.antipode_mono(i).as_ref().clone())
    }

    /// Replaces slot `k` by `f(slot)`, linearly.
    pub fn map_slot(&self, _hopf: &Hopf, k: usize, f: impl Fn(&MultiIndex) -> PbwElem) -> Tensor {
        let mut out = Tensor::zero(self.arity);
        for (s, c) in &self.terms {
            for (i, v) in f(&s[k]).terms() {
                let mut t = s.clone();
                t[k] = i.clone();
                out.add_term(t, c * v);
            }
        }
        out
    }

    /// Multiplies slots `k` and `k+1` together, lowering the arity by one.
    pub fn multiply_adjacent(&self, hopf: &Hopf, k: usize) -> Tensor {
        let mut out = Tensor::zero(self.arity - 1);
        for (s, c) in &self.terms {
            for (i, v) in hopf.mono_mul(&s[k], &s[k + 1]).terms() {
                let mut t: Slots = Slots::new();
                t.extend(s[..k].iter().cloned());
                t.push(i.clone());
                t.extend(s[k + 2..].iter().cloned());
                out.add_term(t, c * v);
            }
        }
        out
    }

    /// Fourier transform `F_ij` acting on slots `i`, `j`:
    /// forward `x_i ↦ x_i S(x_j(1))`, `x_j ↦ x_j(2)`; inverse uses `x_j(1)` without `S`.
    pub fn fourier_ij(&self, hopf: &Hopf, i: usize, j: usize, dir: Direction) -> Tensor {
        let mut out = Tensor::zero(self.arity);
        for (s, c) in &self.terms {
            for parts in s[j].compositions(2) {
                let left = match dir {
                    Direction::Forward => hopf.mul_antipode(&s[i], &parts[0]),
                    Direction::Inverse => hopf.mono_mul(&s[i], &parts[0]),
                };
                for (m, v) in left.terms() {
                    let mut t = s.clone();
                    t[i] = m.clone();
                    t[j] = parts[1].clone();
                    out.add_term(t, c * v);
                }
            }
        }
        out
    }

    /// `F(f ⊗ g) = f S(g_(1)) ⊗ g_(2)` and its inverse `f ⊗ g ↦ f g_(1) ⊗ g_(2)`.
    pub fn fourier(&self, hopf: &Hopf, dir: Direction) -> Result<Tensor> {
        if self.arity != 2 {
            return Err(Error::Input(format!("Fourier transform needs arity 2, got {}", self.arity)));
        }
        Ok(self.fourier_ij(hopf, 0, 1, dir))
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.keys().flat_map(|s| s.iter().map(|i| i.degree())).max().unwrap_or(0)
    }

    pub fn render(&self) -> String {
        let terms = self.terms.iter().map(|(s, c)| format!("{}({})", fmt_coeff_prefix(c), render_slots(s))).collect();
        join_signed(terms)
    }
}

pub(crate) fn render_slots(s: &[MultiIndex]) -> String {
    s.iter().map(|i| if i.is_zero() { "1".to_string() } else { format!("d^{i}") }).collect::<Vec<_>>().join(" # ")
}

pub(crate) fn check_perm(perm: &[usize], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(Error::Input(format!("permutation of length {} on arity {n}", perm.len())));
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || seen[p] {
            return Err(Error::Input("not a permutation".into()));
        }
        seen[p] = true;
    }
    Ok(())
}

impl fmt::Debug for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// `F⁻¹F = id = FF⁻¹` on random elements of `H⊗H` and the braid relation on `H^{⊗3}`.
pub fn verify_fourier(hopf: &Hopf, seed: u64, samples: usize, deg: u32) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = Report::new(format!("Fourier on U({})", hopf.lie().name()));
    for _ in 0..samples {
        let t = Tensor::random(&mut rng, hopf.dim(), 2, 4, deg);
        let f = t.fourier_ij(hopf, 0, 1, Direction::Forward);
        let fi = t.fourier_ij(hopf, 0, 1, Direction::Inverse);
        let ok =
            f.fourier_ij(hopf, 0, 1, Direction::Inverse) == t && fi.fourier_ij(hopf, 0, 1, Direction::Forward) == t;
        rep.record("fourier-inverse", ok, || t.render());
        let u = Tensor::random(&mut rng, hopf.dim(), 3, 3, deg);
        let fw = Direction::Forward;
        let lhs = u.fourier_ij(hopf, 1, 2, fw).fourier_ij(hopf, 0, 2, fw).fourier_ij(hopf, 0, 1, fw);
        let rhs = u.fourier_ij(hopf, 0, 1, fw).fourier_ij(hopf, 1, 2, fw);
        rep.record("fourier-braid", lhs == rhs, || u.render());
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::catalog::*;

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::from_slice(v)
    }

    #[test]
    fn fourier_of_primitive() {
        let h = Hopf::new(abelian(1));
        let t = Tensor::from_factors(&[h.one(), h.gen(0)]);
        let f = t.fourier(&h, Direction::Forward).unwrap();
        let expect = Tensor::from_factors(&[h.gen(0).neg(), h.one()]).add(&t);
        assert_eq!(f, expect);
        let g = Tensor::from_factors(&[h.gen(0), h.one()]);
        assert_eq!(g.fourier(&h, Direction::Forward).unwrap(), g);
    }

    #[test]
    fn fourier_rejects_wrong_arity() {
        let h = Hopf::new(abelian(1));
        let t = Tensor::from_factors(&[h.one(), h.one(), h.one()]);
        assert!(t.fourier(&h, Direction::Forward).is_err());
    }

    #[test]
    fn permutation_places_slots() {
        let h = Hopf::new(abelian(2));
        let t = Tensor::from_factors(&[h.gen(0), h.gen(1), h.one()]);
        let p = t.permute(&[2, 0, 1]).unwrap();
        assert_eq!(p.coeff(&[mi(&[0, 1]), mi(&[0, 0]), mi(&[1, 0])]), q(1));
    }

    #[test]
    fn fourier_suite_on_kernel_algebras() {
        for lie in kernel_catalog() {
            let h = Hopf::new(lie);
            let rep = verify_fourier(&h, 3, 4, 2);
            assert!(rep.passed(), "{}", rep.render_text());
        }
    }
}
