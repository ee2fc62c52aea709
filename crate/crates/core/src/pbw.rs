//! The Hopf algebra `H = U(d)` in the divided-power PBW basis `∂^(I) = ∂^I / I!`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use parking_lot::RwLock;

use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::multiindex::MultiIndex;
use crate::rational::{binomial, fmt_coeff_prefix, join_signed, q, Q};
use crate::report::Report;

/// An element `Σ c_I ∂^(I)` of `H`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PbwElem {
    terms: BTreeMap<MultiIndex, Q>,
}

impl PbwElem {
    pub fn zero() -> Self {
        PbwElem { terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::mono(MultiIndex::zero(n), q(1))
    }

    pub fn mono(i: MultiIndex, c: Q) -> Self {
        let mut e = Self::zero();
        e.add_term(i, c);
        e
    }

    /// The generator `∂_i`.
    pub fn gen(n: usize, i: usize) -> Self {
        Self::mono(MultiIndex::unit(n, i), q(1))
    }

    /// The element `Σ v_i ∂_i` of `d ⊂ H`.
    pub fn from_vector(v: &[Q]) -> Self {
        let mut e = Self::zero();
        for (i, c) in v.iter().enumerate() {
            e.add_term(MultiIndex::unit(v.len(), i), c.clone());
        }
        e
    }

    pub fn scalar(n: usize, c: Q) -> Self {
        Self::mono(MultiIndex::zero(n), c)
    }

    pub fn add_term(&mut self, i: MultiIndex, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(i) {
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

    pub fn add_scaled(&mut self, other: &PbwElem, c: &Q) {
        for (i, v) in &other.terms {
            self.add_term(i.clone(), v * c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Q)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: &MultiIndex) -> Q {
        self.terms.get(i).cloned().unwrap_or_else(Q::zero)
    }

    /// Coefficient of `∂^(0)`.
    pub fn counit(&self) -> Q {
        self.terms.iter().find(|(i, _)| i.is_zero()).map(|(_, c)| c.clone()).unwrap_or_else(Q::zero)
    }

    /// Filtration degree, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|i| i.degree()).max()
    }

    pub fn scale(&self, c: &Q) -> PbwElem {
        if c.is_zero() {
            return PbwElem::zero();
        }
        PbwElem { terms: self.terms.iter().map(|(i, v)| (i.clone(), v * c)).collect() }
    }

    pub fn neg(&self) -> PbwElem {
        self.scale(&q(-1))
    }

    pub fn add(&self, other: &PbwElem) -> PbwElem {
        let mut out = self.clone();
        out.add_scaled(other, &q(1));
        out
    }

    pub fn sub(&self, other: &PbwElem) -> PbwElem {
        let mut out = self.clone();
        out.add_scaled(other, &q(-1));
        out
    }

    /// Coordinates in `d` if the element is a linear combination of generators.
    pub fn as_vector(&self, n: usize) -> Option<Vec<Q>> {
        let mut v = vec![Q::zero(); n];
        for (i, c) in &self.terms {
            if i.degree() != 1 {
                return None;
            }
            let k = i.as_slice().iter().position(|&x| x == 1).expect("degree one");
            v[k] = c.clone();
        }
        Some(v)
    }

    /// Renders with `d^(i,j)` monomials, e.g. `2*d^(1,0) - 1/2`.
    pub fn render(&self) -> String {
        let terms = self
            .terms
            .iter()
            .map(
                |(i, c)| {
                    if i.is_zero() {
                        crate::rational::fmt_q(c)
                    } else {
                        format!("{}d^{}", fmt_coeff_prefix(c), i)
                    }
                },
            )
            .collect();
        join_signed(terms)
    }
}

impl fmt::Debug for PbwElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

type Plain = BTreeMap<MultiIndex, Q>;

fn plain_add(acc: &mut Plain, i: MultiIndex, c: Q) {
    if c.is_zero() {
        return;
    }
    let e = acc.entry(i.clone()).or_insert_with(Q::zero);
    *e += c;
    if e.is_zero() {
        acc.remove(&i);
    }
}

/// `U(d)` with memoised straightening. Cheap to clone; safe to share across threads.
#[derive(Clone)]
pub struct Hopf(Arc<HopfInner>);

struct HopfInner {
    lie: LieAlgebra,
    /// plain monomial `∂^I` times generator `∂_k`, in the plain monomial basis
    gen_mul: RwLock<HashMap<(MultiIndex, usize), Arc<Plain>>>,
    /// products of divided-power monomials
    mono_mul: RwLock<HashMap<(MultiIndex, MultiIndex), Arc<PbwElem>>>,
    antipode: RwLock<HashMap<MultiIndex, Arc<PbwElem>>>,
    /// `∂^(I) S(∂^(J))`
    mul_anti: RwLock<HashMap<(MultiIndex, MultiIndex), Arc<PbwElem>>>,
}

impl fmt::Debug for Hopf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "U({})", self.0.lie.name())
    }
}

impl Hopf {
    pub fn new(lie: LieAlgebra) -> Self {
        Hopf(Arc::new(HopfInner {
            lie,
            gen_mul: RwLock::new(HashMap::new()),
            mono_mul: RwLock::new(HashMap::new()),
            antipode: RwLock::new(HashMap::new()),
            mul_anti: RwLock::new(HashMap::new()),
        }))
    }

    pub fn lie(&self) -> &LieAlgebra {
        &self.0.lie
    }

    pub fn dim(&self) -> usize {
        self.0.lie.dim()
    }

    pub fn same(&self, other: &Hopf) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.lie.same_algebra(&other.0.lie)
    }

    pub fn one(&self) -> PbwElem {
        PbwElem::one(self.dim())
    }

    pub fn zero_index(&self) -> MultiIndex {
        MultiIndex::zero(self.dim())
    }

    pub fn gen(&self, i: usize) -> PbwElem {
        PbwElem::gen(self.dim(), i)
    }

    pub fn check(&self, a: &PbwElem) -> Result<()> {
        if a.terms.keys().any(|i| i.len() != self.dim()) {
            return Err(Error::Input(format!("element is not over {}", self.0.lie.name())));
        }
        Ok(())
    }

    fn plain_times_gen(&self, mono: &MultiIndex, k: usize) -> Arc<Plain> {
        let key = (mono.clone(), k);
        if let Some(v) = self.0.gen_mul.read().get(&key) {
            return v.clone();
        }
        let out = match mono.last_nonzero() {
            Some(m) if m > k => {
                // ∂^I ∂_k = (∂^{I-e_m} ∂_k) ∂_m + ∂^{I-e_m} [∂_m, ∂_k]
                let rest = mono.dec(m).expect("nonzero entry");
                let mut acc = Plain::new();
                let head = self.plain_times_gen(&rest, k);
                for (j, c) in head.iter() {
                    for (j2, c2) in self.plain_times_gen(j, m).iter() {
                        plain_add(&mut acc, j2.clone(), c * c2);
                    }
                }
                for (l, c) in self.0.lie.bracket(m, k) {
                    for (j2, c2) in self.plain_times_gen(&rest, *l).iter() {
                        plain_add(&mut acc, j2.clone(), c * c2);
                    }
                }
                acc
            }
            _ => {
                let mut acc = Plain::new();
                acc.insert(mono.inc(k), q(1));
                acc
            }
        };
        let out = Arc::new(out);
        self.0.gen_mul.write().insert(key, out.clone());
        out
    }

    fn plain_times_gens(&self, start: Plain, gens: impl IntoIterator<Item = usize>) -> Plain {
        let mut cur = start;
        for g in gens {
            let mut next = Plain::new();
            for (j, c) in &cur {
                for (j2, c2) in self.plain_times_gen(j, g).iter() {
                    plain_add(&mut next, j2.clone(), c * c2);
                }
            }
            cur = next;
        }
        cur
    }

    fn plain_to_divided(&self, p: Plain, scale: &Q) -> PbwElem {
        let mut out = PbwElem::zero();
        for (k, c) in p {
            let f = Q::from_integer(k.factorial());
            out.add_term(k, c * f * scale);
        }
        out
    }

    /// `∂^(I) ∂^(J)` in the divided-power basis.
    pub fn mono_mul(&self, i: &MultiIndex, j: &MultiIndex) -> Arc<PbwElem> {
        let key = (i.clone(), j.clone());
        if let Some(v) = self.0.mono_mul.read().get(&key) {
            return v.clone();
        }
        let out = if i.is_zero() || j.is_zero() || self.0.lie.is_abelian() {
            // binom(I+J, I) ∂^(I+J)
            let s = i.add(j);
            let c = i
                .as_slice()
                .iter()
                .zip(j.as_slice())
                .fold(num_bigint::BigInt::one(), |acc, (a, b)| acc * binomial(a + b, *a));
            PbwElem::mono(s, Q::from_integer(c))
        } else {
            let mut start = Plain::new();
            start.insert(i.clone(), q(1));
            let gens = (0..j.len()).flat_map(|g| std::iter::repeat_n(g, j.get(g) as usize));
            let p = self.plain_times_gens(start, gens);
            let denom = Q::from_integer(i.factorial() * j.factorial());
            self.plain_to_divided(p, &(Q::one() / denom))
        };
        let out = Arc::new(out);
        self.0.mono_mul.write().insert(key, out.clone());
        out
    }

    pub fn mul(&self, a: &PbwElem, b: &PbwElem) -> PbwElem {
        let mut out = PbwElem::zero();
        for (i, ci) in &a.terms {
            for (j, cj) in &b.terms {
                out.add_scaled(&self.mono_mul(i, j), &(ci * cj));
            }
        }
        out
    }

    /// `[a, b] = ab - ba`.
    pub fn commutator(&self, a: &PbwElem, b: &PbwElem) -> PbwElem {
        self.mul(a, b).sub(&self.mul(b, a))
    }

    /// Multiplies by a divided monomial on the left.
    pub fn mono_times(&self, i: &MultiIndex, b: &PbwElem) -> PbwElem {
        let mut out = PbwElem::zero();
        for (j, cj) in &b.terms {
            out.add_scaled(&self.mono_mul(i, j), cj);
        }
        out
    }

    pub fn times_mono(&self, a: &PbwElem, j: &MultiIndex) -> PbwElem {
        let mut out = PbwElem::zero();
        for (i, ci) in &a.terms {
            out.add_scaled(&self.mono_mul(i, j), ci);
        }
        out
    }

    /// `S(∂^(I)) = (-1)^{|I|} ∂_N^{(i_N)} ... ∂_1^{(i_1)}`, straightened.
    pub fn antipode_mono(&self, i: &MultiIndex) -> Arc<PbwElem> {
        if let Some(v) = self.0.antipode.read().get(i) {
            return v.clone();
        }
        let sign = if i.degree().is_multiple_of(2) { q(1) } else { q(-1) };
        let out = if self.0.lie.is_abelian() || i.as_slice().iter().filter(|&&x| x > 0).count() <= 1 {
            PbwElem::mono(i.clone(), sign)
        } else {
            let mut start = Plain::new();
            start.insert(MultiIndex::zero(i.len()), q(1));
            let gens = (0..i.len()).rev().flat_map(|g| std::iter::repeat_n(g, i.get(g) as usize));
            let p = self.plain_times_gens(start, gens);
            let scale = sign / Q::from_integer(i.factorial());
            self.plain_to_divided(p, &scale)
        };
        let out = Arc::new(out);
        self.0.antipode.write().insert(i.clone(), out.clone());
        out
    }

    pub fn antipode(&self, a: &PbwElem) -> PbwElem {
        let mut out = PbwElem::zero();
        for (i, c) in &a.terms {
            out.add_scaled(&self.antipode_mono(i), c);
        }
        out
    }

    /// `∂^(I) S(∂^(J))`.
    pub fn mul_antipode(&self, i: &MultiIndex, j: &MultiIndex) -> Arc<PbwElem> {
        let key = (i.clone(), j.clone());
        if let Some(v) = self.0.mul_anti.read().get(&key) {
            return v.clone();
        }
        let s = self.antipode_mono(j);
        let out = Arc::new(self.mono_times(i, &s));
        self.0.mul_anti.write().insert(key, out.clone());
        out
    }

    /// `Δ^(n-1)(a)` as an element of `H^{⊗n}`.
    pub fn coproduct_n(&self, a: &PbwElem, n: usize) -> Result<crate::tensor::Tensor> {
        if n < 2 {
            return Err(Error::Input("coproduct needs at least two factors".into()));
        }
        let mut t = crate::tensor::Tensor::zero(n);
        for (i, c) in &a.terms {
            for parts in i.compositions(n) {
                t.add_term(parts.into_iter().collect(), c.clone());
            }
        }
        Ok(t)
    }

    pub fn coproduct(&self, a: &PbwElem) -> crate::tensor::Tensor {
        self.coproduct_n(a, 2).expect("n = 2")
    }
}

/// Hopf axioms on every `∂^(I)` with `|I| ≤ max_degree`; multiplicativity of `Δ` on pairs of half that degree.
pub fn verify_hopf(hopf: &Hopf, max_degree: u32) -> Report {
    use crate::tensor::Tensor;
    let mut rep = Report::new(format!("U({})", hopf.lie().name()));
    let monos = MultiIndex::all_up_to(hopf.dim(), max_degree);
    for i in &monos {
        let h = PbwElem::mono(i.clone(), q(1));
        let d = hopf.coproduct(&h);
        let eps = Tensor::from_factors(&[PbwElem::scalar(hopf.dim(), h.counit())]);
        rep.record("hopf-coassociativity", d.coproduct_at(0) == d.coproduct_at(1), || format!("h = {}", h.render()));
        rep.record("hopf-cocommutative", d.permute(&[1, 0]).ok().as_ref() == Some(&d), || {
            format!("h = {}", h.render())
        });
        let left = d.antipode_at(hopf, 0).multiply_adjacent(hopf, 0);
        let right = d.antipode_at(hopf, 1).multiply_adjacent(hopf, 0);
        rep.record("hopf-antipode", left == eps && right == eps, || format!("h = {}", h.render()));
        let d3 = hopf.coproduct_n(&h, 3).expect("three factors");
        let target = Tensor::from_factors(&[hopf.one(), h.clone()]);
        let a = d3.antipode_at(hopf, 0).multiply_adjacent(hopf, 0);
        let b = d3.antipode_at(hopf, 1).multiply_adjacent(hopf, 0);
        rep.record("hopf-counit-antipode", a == target && b == target, || format!("h = {}", h.render()));
        rep.record("hopf-involutive", hopf.antipode(&hopf.antipode(&h)) == h, || format!("h = {}", h.render()));
    }
    let half = MultiIndex::all_up_to(hopf.dim(), max_degree / 2);
    for i in &half {
        for j in &half {
            let a = PbwElem::mono(i.clone(), q(1));
            let b = PbwElem::mono(j.clone(), q(1));
            let lhs = hopf.coproduct(&hopf.mul(&a, &b));
            let rhs = hopf.coproduct(&a).mul(hopf, &hopf.coproduct(&b));
            rep.record("hopf-multiplicative", lhs == rhs, || format!("a = {}, b = {}", a.render(), b.render()));
        }
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
    fn abelian_product_is_binomial() {
        let h = Hopf::new(abelian(2));
        let p = h.mono_mul(&mi(&[1, 2]), &mi(&[2, 1]));
        // binom(3,1) binom(3,2) = 9
        assert_eq!(*p, PbwElem::mono(mi(&[3, 3]), q(9)));
        assert_eq!(*h.mono_mul(&mi(&[1, 0]), &mi(&[1, 0])), PbwElem::mono(mi(&[2, 0]), q(2)));
    }

    #[test]
    fn single_straightening_step() {
        // [∂1, ∂2] = ∂2: ∂2 ∂1 = ∂1 ∂2 - ∂2
        let h = Hopf::new(affine());
        let p = h.mono_mul(&mi(&[0, 1]), &mi(&[1, 0]));
        let mut expect = PbwElem::mono(mi(&[1, 1]), q(1));
        expect.add_term(mi(&[0, 1]), q(-1));
        assert_eq!(*p, expect);
    }

    #[test]
    fn antipode_examples() {
        let h = Hopf::new(affine());
        let s = h.antipode_mono(&mi(&[1, 1]));
        let mut expect = PbwElem::mono(mi(&[1, 1]), q(1));
        expect.add_term(mi(&[0, 1]), q(-1));
        assert_eq!(*s, expect);
        let h = Hopf::new(abelian(2));
        assert_eq!(*h.antipode_mono(&mi(&[2, 1])), PbwElem::mono(mi(&[2, 1]), q(-1)));
    }

    #[test]
    fn coproduct_of_divided_square() {
        let h = Hopf::new(abelian(2));
        let t = h.coproduct(&PbwElem::mono(mi(&[2, 0]), q(1)));
        assert_eq!(t.len(), 3);
        assert_eq!(t.coeff(&[mi(&[1, 0]), mi(&[1, 0])]), q(1));
        assert_eq!(t.coeff(&[mi(&[2, 0]), mi(&[0, 0])]), q(1));
    }

    #[test]
    fn counit_and_degree() {
        let mut a = PbwElem::one(2);
        a.add_term(mi(&[1, 0]), q(3));
        assert_eq!(a.counit(), q(1));
        assert_eq!(PbwElem::mono(mi(&[2, 1]), q(1)).degree(), Some(3));
        assert_eq!(PbwElem::zero().degree(), None);
    }

    #[test]
    fn sl2_relation() {
        let h = Hopf::new(sl2());
        // h e - e h = 2e with h = ∂3, e = ∂1
        let he = h.mul(&h.gen(2), &h.gen(0));
        let eh = h.mul(&h.gen(0), &h.gen(2));
        assert_eq!(he.sub(&eh), h.gen(0).scale(&q(2)));
    }

    #[test]
    fn hopf_suite() {
        for lie in [abelian(2), sl2(), heisenberg(1)] {
            let rep = verify_hopf(&Hopf::new(lie), 3);
            assert!(rep.passed(), "{}", rep.render_text());
        }
    }
}
