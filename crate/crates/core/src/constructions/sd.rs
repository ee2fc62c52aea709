use std::collections::HashMap;

use num_traits::Zero;
use parking_lot::Mutex;

use super::wd::{divergence_unchecked, validate_trace_form, Wd};
use crate::error::{Error, Result};
use crate::multiindex::MultiIndex;
use crate::pbw::{Hopf, PbwElem};
use crate::pseudo::{pseudobracket, Pseudoalgebra};
use crate::quotient::{GenKey, ModElem, QE};
use crate::rational::{q, Q};
use crate::report::Report;
use crate::tensor::Tensor;

/// The generator `e_ab` of `S(d,χ)`, always stored with `a < b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PairKey(pub usize, pub usize);

impl GenKey for PairKey {
    fn label(&self) -> String {
        format!("e_{{{},{}}}", self.0 + 1, self.1 + 1)
    }
}

/// `S(d,χ) = ker Div^χ ⊂ W(d)`, generated over `H` by
/// `e_ab = (a+χ(a))⊗b - (b+χ(b))⊗a - 1⊗[a,b]`.
///
/// Elements are `H`-combinations of the `e_ab`; equality is decided in `W(d)`.
pub struct Sd {
    wd: Wd,
    chi: Vec<Q>,
    cache: Mutex<HashMap<(PairKey, PairKey), QE<PairKey>>>,
}

impl Sd {
    pub fn new(hopf: Hopf, chi: Vec<Q>) -> Result<Self> {
        validate_trace_form(&hopf, &chi)?;
        if hopf.dim() < 2 {
            return Err(Error::Input("S(d,χ) needs dim d ≥ 2".into()));
        }
        Ok(Sd { wd: Wd::new(hopf), chi, cache: Mutex::new(HashMap::new()) })
    }

    pub fn wd(&self) -> &Wd {
        &self.wd
    }

    pub fn chi(&self) -> &[Q] {
        &self.chi
    }

    /// `a + χ(a)` for a basis vector.
    pub fn shifted(&self, a: usize) -> PbwElem {
        let h = self.wd.hopf();
        h.gen(a).add(&PbwElem::scalar(h.dim(), self.chi[a].clone()))
    }

    /// `e_ab` as an element of `W(d)`, for any pair of basis indices.
    pub fn element(&self, a: usize, b: usize) -> ModElem<usize> {
        let h = self.wd.hopf();
        let mut m = ModElem::with_coeff(&self.shifted(a), b);
        m.add_scaled(&ModElem::with_coeff(&self.shifted(b), a), &q(-1));
        for (k, c) in h.lie().bracket(a, b) {
            m.add_term(h.zero_index(), *k, -c);
        }
        m
    }

    /// `e_uv` for arbitrary `u, v ∈ d`, as a combination of generators.
    pub fn pair(&self, u: &[Q], v: &[Q]) -> ModElem<PairKey> {
        let z = self.wd.hopf().zero_index();
        let mut m = ModElem::zero();
        for (a, ca) in u.iter().enumerate() {
            for (b, cb) in v.iter().enumerate() {
                let c = ca * cb;
                if c.is_zero() || a == b {
                    continue;
                }
                if a < b {
                    m.add_term(z.clone(), PairKey(a, b), c);
                } else {
                    m.add_term(z.clone(), PairKey(b, a), -c);
                }
            }
        }
        m
    }

    pub fn pairs(&self) -> Vec<PairKey> {
        let n = self.wd.hopf().dim();
        (0..n).flat_map(|a| (a + 1..n).map(move |b| PairKey(a, b))).collect()
    }

    pub fn embed(&self, x: &ModElem<PairKey>) -> ModElem<usize> {
        x.map_linear(self.wd.hopf(), |k| self.element(k.0, k.1))
    }

    pub fn embed_qe(&self, x: &QE<PairKey>) -> QE<usize> {
        x.map_module(self.wd.hopf(), |k| self.element(k.0, k.1))
    }

    pub fn is_member(&self, alpha: &ModElem<usize>) -> bool {
        divergence_unchecked(self.wd.hopf(), alpha, &self.chi).is_zero()
    }

    /// Writes a member of `S(d,χ)` as `Σ f_ab e_ab`, lowering the top coefficient degree
    /// one pivot at a time.
    pub fn express(&self, alpha: &ModElem<usize>) -> Result<ModElem<PairKey>> {
        if !self.is_member(alpha) {
            return Err(Error::Membership(format!(
                "{} has nonzero divergence, so it is not in S(d,χ)",
                alpha.render()
            )));
        }
        let h = self.wd.hopf();
        let n = h.dim();
        let mut rest = alpha.clone();
        let mut out: ModElem<PairKey> = ModElem::zero();
        while !rest.is_zero() {
            let coeffs: Vec<PbwElem> = (0..n).map(|i| rest.coeff_of(&i)).collect();
            let d = coeffs.iter().filter_map(PbwElem::degree).max().expect("nonzero");
            let top: Vec<usize> = (0..n).filter(|&i| coeffs[i].degree() == Some(d)).collect();
            let p = top[0];
            if top.len() < 2 {
                return Err(Error::Membership("top-degree part cannot cancel in the divergence".into()));
            }
            let mut step: ModElem<PairKey> = ModElem::zero();
            for &i in &top[1..] {
                let (f, _) = split_right(h, &coeffs[i], p);
                if !f.is_zero() {
                    // f e_pi with p < i
                    step.add_scaled(&ModElem::with_coeff(&f, PairKey(p, i)), &q(1));
                }
            }
            if step.is_zero() {
                return Err(Error::Membership("elimination made no progress".into()));
            }
            rest = rest.sub(&self.embed(&step));
            out.add_scaled(&step, &q(1));
        }
        Ok(out)
    }

    /// The module parts of an `H⊗H ⊗_H W(d)` element rewritten over the generators.
    fn pull_back(&self, x: &QE<usize>) -> Result<QE<PairKey>> {
        let h = self.wd.hopf();
        let mut out = QE::zero(x.arity());
        for (mut slots, m) in x.coefficient_map() {
            let e = self.express(&m)?;
            slots.push(h.zero_index());
            let mut t = Tensor::zero(x.arity());
            t.add_term(slots, q(1));
            out.add_scaled(&QE::from_tensor(h, &t, &e), &q(1));
        }
        Ok(out)
    }

    /// `a e_bc + b e_ca + c e_ab - e_[a,b]c - e_[b,c]a - e_[c,a]b` in `W(d)`, with every
    /// coefficient `h ∈ d` replaced by `h + χ(h)` when `twisted`.
    pub fn relation_residual(&self, a: usize, b: usize, c: usize, twisted: bool) -> ModElem<usize> {
        let h = self.wd.hopf();
        let lie = h.lie();
        let coef = |i: usize| if twisted { self.shifted(i) } else { h.gen(i) };
        let e = |u: &[Q], v: &[Q]| self.embed(&self.pair(u, v));
        let unit = |i| lie.unit(i);
        let br = |i, j| lie.bracket_vec(&unit(i), &unit(j));
        let mut lhs = ModElem::zero();
        for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
            lhs.add_scaled(&e(&unit(y), &unit(z)).left_mul(h, &coef(x)), &q(1));
            lhs.add_scaled(&e(&br(x, y), &unit(z)), &q(-1));
        }
        lhs
    }

    /// The closed formula for `[e_ab * e_cd]` with `h ↦ h + χ(h)` in the tensor factors.
    pub fn bracket_formula(&self, a: usize, b: usize, c: usize, d: usize) -> QE<usize> {
        let h = self.wd.hopf();
        let lie = h.lie();
        let one = h.one();
        let s = |i: usize| self.shifted(i);
        let unit = |i| lie.unit(i);
        let ab = lie.bracket_vec(&unit(a), &unit(b));
        let cd = lie.bracket_vec(&unit(c), &unit(d));
        let e = |u: &[Q], v: &[Q]| self.embed(&self.pair(u, v));
        let terms: Vec<(PbwElem, PbwElem, ModElem<usize>, i64)> = vec![
            (s(a), s(d), e(&unit(b), &unit(c)), 1),
            (s(b), s(c), e(&unit(a), &unit(d)), 1),
            (s(a), s(c), e(&unit(b), &unit(d)), -1),
            (s(b), s(d), e(&unit(a), &unit(c)), -1),
            (s(a), one.clone(), e(&unit(b), &cd), 1),
            (s(b), one.clone(), e(&unit(a), &cd), -1),
            (one.clone(), s(c), e(&unit(d), &ab), -1),
            (one.clone(), s(d), e(&unit(c), &ab), 1),
            (one.clone(), one.clone(), e(&ab, &cd), -1),
        ];
        let mut out = QE::zero(2);
        for (f, g, m, sign) in terms {
            out.add_scaled(&QE::from_factors(h, &[f, g], &m), &q(sign));
        }
        out
    }

    /// Closure, the closed bracket formula, the relation and the self-bracket formula on
    /// all generators.
    pub fn verify_generators(&self) -> Report {
        let h = self.wd.hopf();
        let n = h.dim();
        let mut rep = Report::new(format!("generators of {}", self.name()));
        for k in self.pairs() {
            let m = self.element(k.0, k.1);
            rep.record("sd-membership", self.is_member(&m), || format!("{} not in S", self.label(&k)));
        }
        for x in self.pairs() {
            for y in self.pairs() {
                let br = pseudobracket(&self.wd, &self.element(x.0, x.1), &self.element(y.0, y.1));
                let closed = br.coefficient_map().values().all(|m| self.is_member(m));
                rep.record("sd-closure", closed, || format!("[{}*{}]", self.label(&x), self.label(&y)));
                let r = br.sub(&self.bracket_formula(x.0, x.1, y.0, y.1));
                rep.record("sd-bracket", r.is_zero(), || {
                    format!("[{}*{}]: residual {}", self.label(&x), self.label(&y), r.render())
                });
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let r = self.relation_residual(a, b, c, true);
                    rep.record("sd-relation", r.is_zero(), || format!("a={a}, b={b}, c={c}: {}", r.render()));
                }
            }
        }
        rep
    }
}

/// `h = f ∂_p + k` with no PBW monomial of `k` containing `∂_p`.
pub fn split_right(hopf: &Hopf, h: &PbwElem, p: usize) -> (PbwElem, PbwElem) {
    let mut k = h.clone();
    let mut f = PbwElem::zero();
    let dp = MultiIndex::unit(hopf.dim(), p);
    loop {
        let lead = k.terms().filter(|(i, _)| i.get(p) > 0).map(|(i, c)| (i.clone(), c.clone())).max();
        let Some((i, c)) = lead else { break };
        let lower = i.dec(p).expect("contains ∂_p");
        let coef = c / Q::from_integer(i.get(p).into());
        let prod = hopf.mono_mul(&lower, &dp);
        k.add_scaled(&prod, &-coef.clone());
        f.add_term(lower, coef);
    }
    (f, k)
}

impl Pseudoalgebra for Sd {
    type Key = PairKey;

    fn hopf(&self) -> &Hopf {
        self.wd.hopf()
    }

    fn name(&self) -> String {
        let lie = self.wd.hopf().lie();
        if self.chi.iter().all(Zero::is_zero) {
            format!("S({},0)", lie.name())
        } else {
            format!("S({},{})", lie.name(), lie.fmt_vec(&self.chi))
        }
    }

    fn generators(&self) -> Vec<PairKey> {
        self.pairs()
    }

    fn product(&self, a: &PairKey, b: &PairKey) -> QE<PairKey> {
        if let Some(v) = self.cache.lock().get(&(*a, *b)) {
            return v.clone();
        }
        let br = pseudobracket(&self.wd, &self.element(a.0, a.1), &self.element(b.0, b.1));
        let v = self.pull_back(&br).expect("S(d,χ) is closed under the bracket of W(d)");
        self.cache.lock().insert((*a, *b), v.clone());
        v
    }

    fn is_zero_elem(&self, x: &QE<PairKey>) -> bool {
        self.embed_qe(x).is_zero()
    }

    fn label(&self, k: &PairKey) -> String {
        let b = self.wd.hopf().lie().basis();
        format!("e_{}{}", b[k.0], b[k.1])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::catalog::*;
    use crate::pseudo::verify_axioms;

    #[test]
    fn split_right_recombines() {
        let h = Hopf::new(heisenberg(1));
        let x = h.mul(&h.mul(&h.gen(2), &h.gen(0)), &h.mul(&h.gen(1), &h.gen(0)));
        for p in 0..3 {
            let (f, k) = split_right(&h, &x, p);
            assert_eq!(h.mul(&f, &h.gen(p)).add(&k), x);
            assert!(k.terms().all(|(i, _)| i.get(p) == 0));
        }
    }

    #[test]
    fn generator_is_not_a_member() {
        let s = Sd::new(Hopf::new(abelian(2)), vec![q(0), q(0)]).unwrap();
        assert!(!s.is_member(&ModElem::gen(2, 0usize)));
        assert!(matches!(s.express(&ModElem::gen(2, 0usize)), Err(Error::Membership(_))));
    }

    #[test]
    fn abelian_self_bracket() {
        let s = Sd::new(Hopf::new(abelian(2)), vec![q(0), q(0)]).unwrap();
        let h = s.hopf();
        let k = PairKey(0, 1);
        let expect = QE::from_tensor(
            h,
            &Tensor::from_factors(&[h.gen(1), h.gen(0)]).sub(&Tensor::from_factors(&[h.gen(0), h.gen(1)])),
            &ModElem::gen(2, k),
        );
        assert!(s.is_zero_elem(&s.product(&k, &k).sub(&expect)));
        assert!(verify_axioms(&s).passed());
    }

    #[test]
    fn twisted_generators_on_affine() {
        let s = Sd::new(Hopf::new(affine()), vec![q(2), q(0)]).unwrap();
        let rep = s.verify_generators();
        assert!(!rep.failed("sd-membership") && !rep.failed("sd-closure"));
        assert!(!rep.failed("sd-relation"), "{}", rep.render_text());
        assert!(verify_axioms(&s).passed());
    }
}
