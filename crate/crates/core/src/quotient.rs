//! Elements of `H^{⊗n} ⊗_H M` for a free `H`-module `M`, in canonical form.
//!
//! A raw term `(f_1 ⊗ ... ⊗ f_n) ⊗_H c e_g` is rewritten as
//! `Σ (f_1 S(f_n(1)) ⊗ ... ⊗ f_{n-1} S(f_n(n-1)) ⊗ 1) ⊗_H f_n(n) c e_g`,
//! which is unique: the last tensor slot is always `1` and the module coefficient
//! `c ∈ H` is kept next to the generator.

use std::collections::{BTreeMap, HashMap};
use std::fmt::{self, Debug};
use std::hash::Hash;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multiindex::MultiIndex;
use crate::pbw::{Hopf, PbwElem};
use crate::rational::{fmt_coeff_prefix, join_signed, q, Q};
use crate::tensor::{check_perm, expand_product, render_slots, Slots, Tensor};

/// Generator labels of a free module.
pub trait GenKey: Clone + Ord + Eq + Hash + Debug + Send + Sync + 'static {
    /// `H` acts through the counit (the trivial module `k`).
    const TRIVIAL: bool = false;

    fn label(&self) -> String;
}

impl GenKey for usize {
    fn label(&self) -> String {
        format!("e_{}", self + 1)
    }
}

/// The generator `1` of the trivial module `k`, `h·1 = ε(h) 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Central;

impl GenKey for Central {
    const TRIVIAL: bool = true;

    fn label(&self) -> String {
        "1".to_string()
    }
}

/// An element `Σ c ∂^(I) e_g` of a free module.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModElem<G: GenKey> {
    terms: BTreeMap<(MultiIndex, G), Q>,
}

impl<G: GenKey> Default for ModElem<G> {
    fn default() -> Self {
        ModElem { terms: BTreeMap::new() }
    }
}

impl<G: GenKey> ModElem<G> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn gen(n: usize, g: G) -> Self {
        let mut m = Self::zero();
        m.add_term(MultiIndex::zero(n), g, q(1));
        m
    }

    /// `h e_g`.
    pub fn with_coeff(h: &PbwElem, g: G) -> Self {
        let mut m = Self::zero();
        for (i, c) in h.terms() {
            m.add_term(i.clone(), g.clone(), c.clone());
        }
        m
    }

    pub fn add_term(&mut self, i: MultiIndex, g: G, c: Q) {
        if G::TRIVIAL && !i.is_zero() {
            return;
        }
        if c.is_zero() {
            return;
        }
        let key = (i, g);
        let e = self.terms.entry(key.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add_scaled(&mut self, other: &ModElem<G>, c: &Q) {
        for ((i, g), v) in &other.terms {
            self.add_term(i.clone(), g.clone(), v * c);
        }
    }

    pub fn add(&self, other: &ModElem<G>) -> ModElem<G> {
        let mut out = self.clone();
        out.add_scaled(other, &q(1));
        out
    }

    pub fn sub(&self, other: &ModElem<G>) -> ModElem<G> {
        let mut out = self.clone();
        out.add_scaled(other, &q(-1));
        out
    }

    pub fn scale(&self, c: &Q) -> ModElem<G> {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &G, &Q)> {
        self.terms.iter().map(|((i, g), c)| (i, g, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `e_g` as an element of `H`.
    pub fn coeff_of(&self, g: &G) -> PbwElem {
        let mut h = PbwElem::zero();
        for ((i, k), c) in &self.terms {
            if k == g {
                h.add_term(i.clone(), c.clone());
            }
        }
        h
    }

    pub fn generators(&self) -> Vec<G> {
        let mut v: Vec<G> = self.terms.keys().map(|(_, g)| g.clone()).collect();
        v.dedup();
        v.sort();
        v.dedup();
        v
    }

    /// `h · m`.
    pub fn left_mul(&self, hopf: &Hopf, h: &PbwElem) -> ModElem<G> {
        let mut out = Self::zero();
        for (j, cj) in h.terms() {
            for ((i, g), c) in &self.terms {
                for (k, v) in hopf.mono_mul(j, i).terms() {
                    out.add_term(k.clone(), g.clone(), cj * c * v);
                }
            }
        }
        out
    }

    /// Applies an `H`-linear map given on generators.
    pub fn map_linear<G2: GenKey>(&self, hopf: &Hopf, f: impl Fn(&G) -> ModElem<G2>) -> ModElem<G2> {
        let mut cache: HashMap<G, ModElem<G2>> = HashMap::new();
        let mut out = ModElem::zero();
        for ((i, g), c) in &self.terms {
            let img = cache.entry(g.clone()).or_insert_with(|| f(g));
            let h = PbwElem::mono(i.clone(), c.clone());
            out.add_scaled(&img.left_mul(hopf, &h), &q(1));
        }
        out
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(|(i, _)| i.degree()).max().unwrap_or(0)
    }

    pub fn render_with(&self, label: &dyn Fn(&G) -> String) -> String {
        let terms = self
            .terms
            .iter()
            .map(|((i, g), c)| {
                if i.is_zero() {
                    format!("{}{}", fmt_coeff_prefix(c), label(g))
                } else {
                    format!("{}d^{} {}", fmt_coeff_prefix(c), i, label(g))
                }
            })
            .collect();
        join_signed(terms)
    }

    pub fn render(&self) -> String {
        self.render_with(&|g: &G| g.label())
    }
}

impl<G: GenKey> Debug for ModElem<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QKey<G> {
    /// the first `n - 1` tensor slots; the last one is `1`
    pub slots: Slots,
    /// module coefficient `c` in `c e_g`
    pub coeff: MultiIndex,
    pub gen: G,
}

/// Accumulates raw (non-canonical) terms `(f_1 ⊗ ... ⊗ f_n) ⊗_H ∂^(C) e_g`.
pub struct RawQE<G: GenKey> {
    arity: usize,
    terms: HashMap<(Slots, MultiIndex, G), Q>,
}

impl<G: GenKey> RawQE<G> {
    pub fn new(arity: usize) -> Self {
        RawQE { arity, terms: HashMap::new() }
    }

    pub fn add(&mut self, slots: Slots, coeff: MultiIndex, gen: G, c: Q) {
        debug_assert_eq!(slots.len(), self.arity);
        if c.is_zero() {
            return;
        }
        *self.terms.entry((slots, coeff, gen)).or_insert_with(Q::zero) += c;
    }

    /// Adds `c · (a_1 ⊗ ... ⊗ a_n) ⊗_H m`.
    pub fn add_product(&mut self, parts: &[&PbwElem], m: &ModElem<G>, c: &Q) {
        for (ci, g, cv) in m.terms() {
            let coeff = ci.clone();
            let g = g.clone();
            expand_product(parts, &(c * cv), &mut |s, v| self.add(s, coeff.clone(), g.clone(), v));
        }
    }

    pub fn canonicalize(self, hopf: &Hopf) -> QuotientElement<G> {
        let n = self.arity;
        let mut out = QuotientElement::zero(n);
        let zero = hopf.zero_index();
        for ((slots, coeff, gen), val) in self.terms {
            if val.is_zero() {
                continue;
            }
            if G::TRIVIAL && !coeff.is_zero() {
                continue;
            }
            let last = &slots[n - 1];
            if last.is_zero() {
                let key = QKey { slots: slots[..n - 1].iter().cloned().collect(), coeff, gen };
                out.add_term(key, val);
                continue;
            }
            for parts in last.compositions(n) {
                let tail = &parts[n - 1];
                let modc: PbwElem = if G::TRIVIAL {
                    if tail.is_zero() {
                        PbwElem::mono(zero.clone(), q(1))
                    } else {
                        continue;
                    }
                } else {
                    hopf.mono_mul(tail, &coeff).as_ref().clone()
                };
                let prods: Vec<_> = (0..n - 1).map(|j| hopf.mul_antipode(&slots[j], &parts[j])).collect();
                let mut refs: Vec<&PbwElem> = prods.iter().map(|p| p.as_ref()).collect();
                refs.push(&modc);
                expand_product(&refs, &val, &mut |mut s, v| {
                    let c = s.pop().expect("module coefficient");
                    out.add_term(QKey { slots: s, coeff: c, gen: gen.clone() }, v);
                });
            }
        }
        out
    }
}

/// An element of `H^{⊗n} ⊗_H M`, always stored in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuotientElement<G: GenKey> {
    arity: usize,
    terms: BTreeMap<QKey<G>, Q>,
}

pub type QE<G> = QuotientElement<G>;

impl<G: GenKey> QuotientElement<G> {
    pub fn zero(arity: usize) -> Self {
        assert!(arity >= 1);
        QuotientElement { arity, terms: BTreeMap::new() }
    }

    fn add_term(&mut self, key: QKey<G>, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
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

    /// `t ⊗_H m`.
    pub fn from_tensor(hopf: &Hopf, t: &Tensor, m: &ModElem<G>) -> Self {
        let mut raw = RawQE::new(t.arity());
        for (s, c) in t.terms() {
            for (ci, g, cv) in m.terms() {
                raw.add(s.clone(), ci.clone(), g.clone(), c * cv);
            }
        }
        raw.canonicalize(hopf)
    }

    /// `(a_1 ⊗ ... ⊗ a_n) ⊗_H m`.
    pub fn from_factors(hopf: &Hopf, parts: &[PbwElem], m: &ModElem<G>) -> Self {
        let mut raw = RawQE::new(parts.len());
        let refs: Vec<&PbwElem> = parts.iter().collect();
        raw.add_product(&refs, m, &q(1));
        raw.canonicalize(hopf)
    }

    /// An arity-1 element, i.e. an element of `M`.
    pub fn from_module(hopf: &Hopf, m: &ModElem<G>) -> Self {
        Self::from_factors(hopf, &[hopf.one()], m)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&QKey<G>, &Q)> {
        self.terms.iter()
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Q) {
        assert_eq!(self.arity, other.arity, "arity mismatch");
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v * c);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &q(1));
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &q(-1));
        out
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = Self::zero(self.arity);
        out.add_scaled(self, c);
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&q(-1))
    }

    /// Re-expands the element as raw terms with an explicit trailing `1`.
    pub fn to_raw(&self, hopf: &Hopf) -> RawQE<G> {
        let mut raw = RawQE::new(self.arity);
        for (k, v) in &self.terms {
            let mut s = k.slots.clone();
            s.push(hopf.zero_index());
            raw.add(s, k.coeff.clone(), k.gen.clone(), v.clone());
        }
        raw
    }

    /// Reading the canonical form `Σ (h ⊗ 1) ⊗_H m_h`: the module element attached to each `h`
    /// (keys omit the trailing `1`).
    pub fn coefficient_map(&self) -> BTreeMap<Slots, ModElem<G>> {
        let mut out: BTreeMap<Slots, ModElem<G>> = BTreeMap::new();
        for (k, v) in &self.terms {
            out.entry(k.slots.clone()).or_default().add_term(k.coeff.clone(), k.gen.clone(), v.clone());
        }
        out
    }

    /// Places input slot `k` at output position `perm[k]` and re-canonicalizes.
    pub fn permute(&self, hopf: &Hopf, perm: &[usize]) -> Result<Self> {
        check_perm(perm, self.arity)?;
        let mut raw = RawQE::new(self.arity);
        for (k, v) in &self.terms {
            let mut full = k.slots.clone();
            full.push(hopf.zero_index());
            let mut s = full.clone();
            for (i, &p) in perm.iter().enumerate() {
                s[p] = full[i].clone();
            }
            raw.add(s, k.coeff.clone(), k.gen.clone(), v.clone());
        }
        Ok(raw.canonicalize(hopf))
    }

    /// The transposition of slots `i` and `j`.
    pub fn swap(&self, hopf: &Hopf, i: usize, j: usize) -> Self {
        let mut perm: Vec<usize> = (0..self.arity).collect();
        perm.swap(i, j);
        self.permute(hopf, &perm).expect("valid transposition")
    }

    /// `(f_1 ⊗ ... ⊗ f_n) · q`.
    pub fn left_mul(&self, hopf: &Hopf, factors: &[PbwElem]) -> Result<Self> {
        if factors.len() != self.arity {
            return Err(Error::Input("factor count differs from arity".into()));
        }
        let mut raw = RawQE::new(self.arity);
        for (k, v) in &self.terms {
            let mut prods: Vec<PbwElem> =
                (0..self.arity - 1).map(|j| hopf.times_mono(&factors[j], &k.slots[j])).collect();
            prods.push(factors[self.arity - 1].clone());
            let refs: Vec<&PbwElem> = prods.iter().collect();
            expand_product(&refs, v, &mut |s, c| raw.add(s, k.coeff.clone(), k.gen.clone(), c));
        }
        Ok(raw.canonicalize(hopf))
    }

    /// Applies an `H`-linear map `M → M'` to the module part.
    pub fn map_module<G2: GenKey>(&self, hopf: &Hopf, f: impl Fn(&G) -> ModElem<G2>) -> QuotientElement<G2> {
        let mut cache: HashMap<G, ModElem<G2>> = HashMap::new();
        let mut raw = RawQE::new(self.arity);
        for (k, v) in &self.terms {
            let img = cache.entry(k.gen.clone()).or_insert_with(|| f(&k.gen));
            let c = PbwElem::mono(k.coeff.clone(), v.clone());
            let m = img.left_mul(hopf, &c);
            let mut s = k.slots.clone();
            s.push(hopf.zero_index());
            for (ci, g, cv) in m.terms() {
                raw.add(s.clone(), ci.clone(), g.clone(), cv.clone());
            }
        }
        raw.canonicalize(hopf)
    }

    /// Composition with a polylinear map `ψ` whose `k`-th argument (0-based) receives
    /// the module element of `self`.
    ///
    /// If `self = Σ (h_1 ⊗ ... ⊗ h_m) ⊗_H c e_g` and `ψ(.., e_g, ..) = Σ (r_1 ⊗ ... ⊗ r_n) ⊗_H v`,
    /// the result is `Σ (r_1 ⊗ .. ⊗ (h_1 ⊗ ... ⊗ h_m) Δ^{(m-1)}(c r_k) ⊗ .. ⊗ r_n) ⊗_H v`,
    /// an element of arity `m + n - 1`.
    pub fn substitute<G2: GenKey>(
        &self,
        hopf: &Hopf,
        k: usize,
        n: usize,
        psi: impl Fn(&G) -> QuotientElement<G2>,
    ) -> QuotientElement<G2> {
        assert!(k < n, "substitution slot out of range");
        let m = self.arity;
        let mut cache: HashMap<G, QuotientElement<G2>> = HashMap::new();
        let mut raw = RawQE::new(m + n - 1);
        for (key, val) in &self.terms {
            let img = cache.entry(key.gen.clone()).or_insert_with(|| psi(&key.gen));
            if img.is_zero() {
                continue;
            }
            assert_eq!(img.arity, n, "substituted map has the wrong arity");
            for (ik, iv) in &img.terms {
                let mut r: Slots = ik.slots.clone();
                r.push(hopf.zero_index());
                let cr = hopf.mono_mul(&key.coeff, &r[k]);
                for (t, tv) in cr.terms() {
                    for parts in t.compositions(m) {
                        let mut prods: Vec<PbwElem> = Vec::with_capacity(m);
                        for j in 0..m {
                            if j + 1 < m {
                                prods.push(hopf.mono_mul(&key.slots[j], &parts[j]).as_ref().clone());
                            } else {
                                prods.push(PbwElem::mono(parts[j].clone(), q(1)));
                            }
                        }
                        let refs: Vec<&PbwElem> = prods.iter().collect();
                        let c = val * iv * tv;
                        expand_product(&refs, &c, &mut |mid, cv| {
                            let mut s: Slots = Slots::new();
                            s.extend(r[..k].iter().cloned());
                            s.extend(mid);
                            s.extend(r[k + 1..].iter().cloned());
                            raw.add(s, ik.coeff.clone(), ik.gen.clone(), cv);
                        });
                    }
                }
            }
        }
        raw.canonicalize(hopf)
    }

    /// `Σ (id ⊗ ε)(h) m` for arity 2, generally collapsing all slots into the module.
    pub fn collapse(&self, hopf: &Hopf) -> ModElem<G> {
        let mut out = ModElem::zero();
        for (k, v) in &self.terms {
            // canonical: (h_1 ⊗ ... ⊗ h_{n-1} ⊗ 1); ε on all but the first slot
            if k.slots.iter().skip(1).any(|s| !s.is_zero()) {
                continue;
            }
            let h = k.slots.first().cloned().unwrap_or_else(|| hopf.zero_index());
            for (i, c) in hopf.mono_mul(&h, &k.coeff).terms() {
                out.add_term(i.clone(), k.gen.clone(), v * c);
            }
        }
        out
    }

    /// For arity 1, the element of `M` itself.
    pub fn as_module(&self) -> ModElem<G> {
        assert_eq!(self.arity, 1);
        let mut out = ModElem::zero();
        for (k, v) in &self.terms {
            out.add_term(k.coeff.clone(), k.gen.clone(), v.clone());
        }
        out
    }

    pub fn max_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|k| k.slots.iter().map(|s| s.degree()).max().unwrap_or(0).max(k.coeff.degree()))
            .max()
            .unwrap_or(0)
    }

    /// Renders as `(h1 # h2 # 1) @ c e_k` terms.
    pub fn render_with(&self, label: &dyn Fn(&G) -> String) -> String {
        let terms = self
            .terms
            .iter()
            .map(|(k, c)| {
                let mut s: Vec<String> = vec![render_slots(&k.slots)];
                if k.slots.is_empty() {
                    s.clear();
                }
                s.push("1".into());
                let slots = s.join(" # ");
                let m = if k.coeff.is_zero() { label(&k.gen) } else { format!("d^{} {}", k.coeff, label(&k.gen)) };
                format!("{}({}) @ {}", fmt_coeff_prefix(c), slots, m)
            })
            .collect();
        join_signed(terms)
    }

    pub fn render(&self) -> String {
        self.render_with(&|g: &G| g.label())
    }
}

impl<G: GenKey> Debug for QuotientElement<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}
