//! Pseudoforms `Ω^n(d) = H ⊗ ∧^n d*` as modules over `W(d)`, with contraction and differential.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::constructions::Wd;
use crate::error::{Error, Result};
use crate::forms::{increasing_tuples, sort_sign};
use crate::pbw::{Hopf, PbwElem};
use crate::pseudo::{random_pbw, verify_module, PseudoModule, Pseudoalgebra};
use crate::quotient::{GenKey, ModElem, RawQE, QE};
use crate::rational::q;
use crate::report::Report;
use crate::tensor::Tensor;

/// The dual basis form `e*^I` for a strictly increasing tuple `I` (0-based).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FormKey(pub Vec<usize>);

impl GenKey for FormKey {
    fn label(&self) -> String {
        if self.0.is_empty() {
            "1".into()
        } else {
            let idx: Vec<String> = self.0.iter().map(|i| (i + 1).to_string()).collect();
            format!("e*^({})", idx.join(","))
        }
    }
}

/// A pseudoform of degree `n`, read as a linear map `∧^n d → H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PseudoForm {
    dim: usize,
    degree: usize,
    coeffs: BTreeMap<Vec<usize>, PbwElem>,
}

impl PseudoForm {
    pub fn zero(dim: usize, degree: usize) -> Self {
        PseudoForm { dim, degree, coeffs: BTreeMap::new() }
    }

    /// `h ⊗ e*^I`.
    pub fn basic(dim: usize, h: PbwElem, idx: &[usize]) -> Result<Self> {
        let mut w = PseudoForm::zero(dim, idx.len());
        w.add_term(idx, h)?;
        Ok(w)
    }

    /// The volume form `e*^(1,...,N)`.
    pub fn volume(dim: usize) -> Self {
        let idx: Vec<usize> = (0..dim).collect();
        PseudoForm::basic(dim, PbwElem::one(dim), &idx).expect("valid tuple")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &PbwElem)> {
        self.coeffs.iter()
    }

    /// Adds `h ⊗ e*^I`; `I` must be strictly increasing.
    pub fn add_term(&mut self, idx: &[usize], h: PbwElem) -> Result<()> {
        if idx.len() != self.degree {
            return Err(Error::Input(format!("expected {} indices, got {}", self.degree, idx.len())));
        }
        if idx.windows(2).any(|w| w[0] >= w[1]) || idx.iter().any(|&i| i >= self.dim) {
            return Err(Error::Input("form indices must be strictly increasing and within dim d".into()));
        }
        let e = self.coeffs.entry(idx.to_vec()).or_insert_with(PbwElem::zero);
        e.add_scaled(&h, &q(1));
        if e.is_zero() {
            self.coeffs.remove(idx);
        }
        Ok(())
    }

    /// `w(a_{i_1} ∧ ... ∧ a_{i_n})` for arbitrary basis indices.
    pub fn eval(&self, idx: &[usize]) -> PbwElem {
        match sort_sign(idx) {
            None => PbwElem::zero(),
            Some((s, sign)) => self.coeffs.get(&s).map(|h| h.scale(&q(sign as i64))).unwrap_or_default(),
        }
    }

    pub fn to_module(&self) -> ModElem<FormKey> {
        let mut m = ModElem::zero();
        for (idx, h) in &self.coeffs {
            m.add_scaled(&ModElem::with_coeff(h, FormKey(idx.clone())), &q(1));
        }
        m
    }

    pub fn from_module(dim: usize, degree: usize, m: &ModElem<FormKey>) -> Result<Self> {
        let mut w = PseudoForm::zero(dim, degree);
        for (i, k, c) in m.terms() {
            w.add_term(&k.0, PbwElem::mono(i.clone(), c.clone()))?;
        }
        Ok(w)
    }

    pub fn render(&self) -> String {
        self.to_module().render_with(&|k| k.label())
    }
}

/// Writes a map `∧^n d → H ⊗ H`, given on increasing tuples, as an element of `(H⊗H) ⊗_H Ω^n`.
fn from_values(hopf: &Hopf, values: impl IntoIterator<Item = (Vec<usize>, Tensor)>) -> QE<FormKey> {
    let mut raw = RawQE::new(2);
    let z = hopf.zero_index();
    for (idx, t) in values {
        for (s, c) in t.terms() {
            raw.add(s.clone(), z.clone(), FormKey(idx.clone()), c.clone());
        }
    }
    raw.canonicalize(hopf)
}

fn pair(f: &PbwElem, g: &PbwElem) -> Tensor {
    Tensor::from_factors(&[f.clone(), g.clone()])
}

/// `(f ⊗ ∂_a) * w`, evaluated on each `a_1 ∧ ... ∧ a_n` by the three-sum formula.
pub fn act_on_form(hopf: &Hopf, f: &PbwElem, a: usize, w: &PseudoForm) -> QE<FormKey> {
    let lie = hopf.lie();
    let n = w.degree();
    let ga = hopf.gen(a);
    let mut vals = Vec::new();
    for idx in increasing_tuples(hopf.dim(), n) {
        let mut t = pair(f, &hopf.mul(&w.eval(&idx), &ga)).scale(&q(-1));
        for i in 0..n {
            let sign = q(if i % 2 == 0 { -1 } else { 1 });
            let rest: Vec<usize> = idx.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, &v)| v).collect();
            let mut with_a = vec![a];
            with_a.extend(&rest);
            let fai = hopf.mul(f, &hopf.gen(idx[i]));
            t.add_scaled(&pair(&fai, &w.eval(&with_a)), &sign);
            for (k, c) in lie.bracket(a, idx[i]) {
                let mut with_k = vec![*k];
                with_k.extend(&rest);
                t.add_scaled(&pair(f, &w.eval(&with_k)), &(&sign * c));
            }
        }
        vals.push((idx, t));
    }
    from_values(hopf, vals)
}

/// `(f ⊗ ∂_a) *_ι w` in `(H⊗H) ⊗_H Ω^{n-1}`.
pub fn contract_form(hopf: &Hopf, f: &PbwElem, a: usize, w: &PseudoForm) -> Result<QE<FormKey>> {
    let n = w.degree();
    if n == 0 {
        return Err(Error::Input("cannot contract into a 0-form".into()));
    }
    let vals = increasing_tuples(hopf.dim(), n - 1).into_iter().map(|idx| {
        let mut with_a = vec![a];
        with_a.extend(&idx);
        let t = pair(f, &w.eval(&with_a));
        (idx, t)
    });
    Ok(from_values(hopf, vals))
}

/// The differential `Ω^n → Ω^{n+1}`; zero on top forms.
pub fn pseudoform_differential(hopf: &Hopf, w: &PseudoForm) -> PseudoForm {
    let lie = hopf.lie();
    let n = w.degree();
    let dim = hopf.dim();
    let mut out = PseudoForm::zero(dim, n + 1);
    if n >= dim {
        return out;
    }
    for idx in increasing_tuples(dim, n + 1) {
        let mut v = PbwElem::zero();
        for i in 0..=n {
            for j in i + 1..=n {
                // 1-based signs (-1)^{(i+1)+(j+1)}
                let sign = q(if (i + j) % 2 == 0 { 1 } else { -1 });
                let rest: Vec<usize> =
                    idx.iter().enumerate().filter(|(k, _)| *k != i && *k != j).map(|(_, &x)| x).collect();
                for (k, c) in lie.bracket(idx[i], idx[j]) {
                    let mut with_k = vec![*k];
                    with_k.extend(&rest);
                    v.add_scaled(&w.eval(&with_k), &(&sign * c));
                }
            }
            let sign = q(if i % 2 == 0 { -1 } else { 1 });
            let rest: Vec<usize> = idx.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, &x)| x).collect();
            v.add_scaled(&hopf.mul(&w.eval(&rest), &hopf.gen(idx[i])), &sign);
        }
        if !v.is_zero() {
            out.add_term(&idx, v).expect("increasing tuple");
        }
    }
    out
}

fn basic_form(hopf: &Hopf, k: &FormKey) -> PseudoForm {
    PseudoForm::basic(hopf.dim(), hopf.one(), &k.0).expect("valid key")
}

fn d_key(hopf: &Hopf, k: &FormKey) -> ModElem<FormKey> {
    pseudoform_differential(hopf, &basic_form(hopf, k)).to_module()
}

/// `d` on a module element of `Ω`.
pub fn d_module(hopf: &Hopf, m: &ModElem<FormKey>) -> ModElem<FormKey> {
    m.map_linear(hopf, |k| d_key(hopf, k))
}

/// `((id⊗id) ⊗_H d)(x)`.
pub fn d_after(hopf: &Hopf, x: &QE<FormKey>) -> QE<FormKey> {
    x.map_module(hopf, |k| d_key(hopf, k))
}

/// Extends a map given on `(1⊗∂_a, e*^I)` to `(f ⊗ ∂_a, Σ h e*^I)` by `H`-bilinearity.
fn extend<F>(hopf: &Hopf, alpha: &ModElem<usize>, w: &ModElem<FormKey>, op: F) -> QE<FormKey>
where
    F: Fn(usize, &FormKey) -> QE<FormKey>,
{
    let mut out = QE::zero(2);
    for (i, a, ca) in alpha.terms() {
        for (j, k, cw) in w.terms() {
            let f = PbwElem::mono(i.clone(), ca * cw);
            let g = PbwElem::mono(j.clone(), q(1));
            out.add_scaled(&op(*a, k).left_mul(hopf, &[f, g]).expect("arity 2"), &q(1));
        }
    }
    out
}

/// `α * w` for arbitrary `α ∈ W(d)` and `w ∈ Ω`.
pub fn act_elem(hopf: &Hopf, alpha: &ModElem<usize>, w: &ModElem<FormKey>) -> QE<FormKey> {
    extend(hopf, alpha, w, |a, k| act_on_form(hopf, &hopf.one(), a, &basic_form(hopf, k)))
}

/// `α *_ι w`; contractions into 0-forms vanish here.
pub fn contract_elem(hopf: &Hopf, alpha: &ModElem<usize>, w: &ModElem<FormKey>) -> QE<FormKey> {
    extend(hopf, alpha, w, |a, k| {
        if k.0.is_empty() {
            QE::zero(2)
        } else {
            contract_form(hopf, &hopf.one(), a, &basic_form(hopf, k)).expect("positive degree")
        }
    })
}

/// `v * w = (1⊗1) ⊗_H (v ∧ w)` on basis forms.
pub fn wedge_product(hopf: &Hopf, v: &FormKey, w: &FormKey) -> QE<FormKey> {
    let mut idx = v.0.clone();
    idx.extend(&w.0);
    match sort_sign(&idx) {
        None => QE::zero(2),
        Some((s, sign)) => QE::from_factors(hopf, &[hopf.one(), hopf.one()], &ModElem::gen(hopf.dim(), FormKey(s)))
            .scale(&q(sign as i64)),
    }
}

/// `Ω^n(d)` as a module over `W(d)`.
pub struct FormModule<'a> {
    wd: &'a Wd,
    degree: usize,
}

impl<'a> FormModule<'a> {
    pub fn new(wd: &'a Wd, degree: usize) -> Result<Self> {
        if degree > wd.hopf().dim() {
            return Err(Error::Input(format!("degree {degree} exceeds dim d")));
        }
        Ok(FormModule { wd, degree })
    }
}

impl PseudoModule for FormModule<'_> {
    type Alg = Wd;
    type Key = FormKey;

    fn algebra(&self) -> &Wd {
        self.wd
    }

    fn name(&self) -> String {
        format!("Ω^{}({})", self.degree, self.wd.hopf().lie().name())
    }

    fn generators(&self) -> Vec<FormKey> {
        increasing_tuples(self.wd.hopf().dim(), self.degree).into_iter().map(FormKey).collect()
    }

    fn action(&self, a: &usize, m: &FormKey) -> QE<FormKey> {
        let h = self.wd.hopf();
        act_on_form(h, &h.one(), *a, &basic_form(h, m))
    }
}

/// `-(f(a + tr ad a) ⊗ 1 + f ⊗ a) ⊗_H v0`.
pub fn volume_action_expected(hopf: &Hopf, f: &PbwElem, a: usize) -> QE<FormKey> {
    let tr = hopf.lie().tr_ad(a).clone();
    let left = hopf.mul(f, &hopf.gen(a).add(&PbwElem::scalar(hopf.dim(), tr)));
    let t = pair(&left, &hopf.one()).add(&pair(f, &hopf.gen(a)));
    let v0 = FormKey((0..hopf.dim()).collect());
    QE::from_tensor(hopf, &t, &ModElem::gen(hopf.dim(), v0)).neg()
}

fn all_keys(dim: usize) -> Vec<FormKey> {
    (0..=dim).flat_map(|n| increasing_tuples(dim, n)).map(FormKey).collect()
}

fn render(x: &QE<FormKey>) -> String {
    x.render_with(&|k| k.label())
}

/// Checks `d² = 0`, the Cartan formula, `[α*, d] = 0`, anticommuting contractions,
/// the volume action, and the wedge derivation rules on basis elements; `samples`
/// random `f` are used for the volume action.
pub fn verify_pseudoforms(hopf: &Hopf, seed: u64, samples: usize) -> Report {
    let mut rep = Report::new(format!("pseudoforms over {}", hopf.lie().name()));
    let n = hopf.dim();
    let keys = all_keys(n);
    for k in &keys {
        let dd = d_module(hopf, &d_key(hopf, k));
        rep.record("form-d-squared", dd.is_zero(), || format!("w={}: d(dw) = {}", k.label(), dd.render()));
    }
    for a in 0..n {
        let alpha = ModElem::gen(n, a);
        for k in &keys {
            let w = ModElem::gen(n, k.clone());
            let lhs = act_elem(hopf, &alpha, &w);
            let dw = d_key(hopf, k);
            let rhs = d_after(hopf, &contract_elem(hopf, &alpha, &w)).add(&contract_elem(hopf, &alpha, &dw));
            let r = lhs.sub(&rhs);
            rep.record("cartan", r.is_zero(), || format!("a={}, w={}: residual {}", a + 1, k.label(), render(&r)));
            let r = act_elem(hopf, &alpha, &dw).sub(&d_after(hopf, &lhs));
            rep.record("d-commutes", r.is_zero(), || format!("a={}, w={}: residual {}", a + 1, k.label(), render(&r)));
            for b in 0..n {
                let r = contraction_anticommutator(hopf, a, b, k);
                rep.record("contraction-anticommute", r.is_zero(), || {
                    format!("a={}, b={}, w={}: residual {}", a + 1, b + 1, k.label(), render(&r))
                });
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v0 = PseudoForm::volume(n);
    for a in 0..n {
        let mut fs = vec![hopf.one()];
        fs.extend((0..samples).map(|_| random_pbw(&mut rng, n, 2, 2)));
        for f in fs {
            let r = act_on_form(hopf, &f, a, &v0).sub(&volume_action_expected(hopf, &f, a));
            rep.record("volume-action", r.is_zero(), || {
                format!("f={}, a={}: residual {}", f.render(), a + 1, render(&r))
            });
        }
    }
    for a in 0..n {
        for v in &keys {
            for w in &keys {
                if v.0.len() + w.0.len() > n {
                    continue;
                }
                let r = wedge_residual(hopf, a, v, w, false);
                rep.record("wedge-derivation", r.is_zero(), || {
                    format!("a={}, v={}, w={}: residual {}", a + 1, v.label(), w.label(), render(&r))
                });
                let r = wedge_residual(hopf, a, v, w, true);
                rep.record("wedge-contraction", r.is_zero(), || {
                    format!("a={}, v={}, w={}: residual {}", a + 1, v.label(), w.label(), render(&r))
                });
            }
        }
    }
    rep
}

/// `α*_ι(β*_ι w) + ((σ⊗id)⊗_H id) β*_ι(α*_ι w)` for `α = 1⊗∂_a`, `β = 1⊗∂_b`.
pub fn contraction_anticommutator(hopf: &Hopf, a: usize, b: usize, k: &FormKey) -> QE<FormKey> {
    let n = hopf.dim();
    let w = ModElem::gen(n, k.clone());
    let (al, be) = (ModElem::gen(n, a), ModElem::gen(n, b));
    let ab =
        contract_elem(hopf, &be, &w).substitute(hopf, 1, 2, |g| contract_elem(hopf, &al, &ModElem::gen(n, g.clone())));
    let ba =
        contract_elem(hopf, &al, &w).substitute(hopf, 1, 2, |g| contract_elem(hopf, &be, &ModElem::gen(n, g.clone())));
    ab.add(&ba.swap(hopf, 0, 1))
}

/// Residual of `α*(v*w) = (α*v)*w + σ12 v*(α*w)`, or with `contraction` of
/// `α*_ι(v*w) = (α*_ι v)*w + (-1)^m σ12 v*(α*_ι w)`.
pub fn wedge_residual(hopf: &Hopf, a: usize, v: &FormKey, w: &FormKey, contraction: bool) -> QE<FormKey> {
    let n = hopf.dim();
    let alpha = ModElem::gen(n, a);
    let op = |x: &FormKey| {
        let m = ModElem::gen(n, x.clone());
        if contraction {
            contract_elem(hopf, &alpha, &m)
        } else {
            act_elem(hopf, &alpha, &m)
        }
    };
    let lhs = wedge_product(hopf, v, w).substitute(hopf, 1, 2, op);
    let t1 = op(v).substitute(hopf, 0, 2, |g| wedge_product(hopf, g, w));
    let mut t2 = op(w).substitute(hopf, 1, 2, |g| wedge_product(hopf, v, g)).swap(hopf, 0, 1);
    if contraction && v.0.len() % 2 == 1 {
        t2 = t2.neg();
    }
    lhs.sub(&t1).sub(&t2)
}

/// `verify_module` for every `Ω^n(d)`, `0 ≤ n ≤ N`.
pub fn verify_form_modules(wd: &Wd) -> Report {
    let mut rep = Report::new(format!("pseudoform modules over {}", wd.name()));
    for deg in 0..=wd.hopf().dim() {
        let m = FormModule::new(wd, deg).expect("degree within range");
        rep.merge(verify_module(&m));
    }
    rep
}

/// A random pseudoform of the given degree.
pub fn random_form(rng: &mut impl Rng, hopf: &Hopf, degree: usize, deg: u32) -> PseudoForm {
    let n = hopf.dim();
    let mut w = PseudoForm::zero(n, degree);
    for idx in increasing_tuples(n, degree) {
        w.add_term(&idx, random_pbw(rng, n, 2, deg)).expect("increasing tuple");
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::catalog::*;
    use crate::rational::Q;

    fn key(v: &[usize]) -> FormKey {
        FormKey(v.to_vec())
    }

    #[test]
    fn zero_forms_recover_action_on_h() {
        let h = Hopf::new(affine());
        let g = h.gen(1);
        let w = PseudoForm::basic(2, g.clone(), &[]).unwrap();
        let got = act_on_form(&h, &h.one(), 0, &w);
        let expect = QE::from_tensor(&h, &pair(&h.one(), &h.mul(&g, &h.gen(0))), &ModElem::gen(2, key(&[]))).neg();
        assert_eq!(got, expect);
    }

    #[test]
    fn abelian_one_form_by_hand() {
        // (1⊗∂1) * e*^1 on abelian2: value on a_1 is -1⊗∂1 - ∂1⊗1, on a_2 it is -∂2⊗1
        let h = Hopf::new(abelian(2));
        let w = PseudoForm::basic(2, h.one(), &[0]).unwrap();
        let got = act_on_form(&h, &h.one(), 0, &w);
        let t = pair(&h.one(), &h.gen(0)).add(&pair(&h.gen(0), &h.one()));
        let on_a1 = QE::from_tensor(&h, &t, &ModElem::gen(2, key(&[0])));
        let on_a2 = QE::from_factors(&h, &[h.gen(1), h.one()], &ModElem::gen(2, key(&[1])));
        assert_eq!(got, on_a1.add(&on_a2).neg());
        // (1⊗∂1) * e*^2: value on a_2 is -1⊗∂1
        let w = PseudoForm::basic(2, h.one(), &[1]).unwrap();
        let got = act_on_form(&h, &h.one(), 0, &w);
        assert_eq!(got, QE::from_factors(&h, &[h.one(), h.gen(0)], &ModElem::gen(2, key(&[1]))).neg());
    }

    #[test]
    fn dual_pairing_contraction() {
        let h = Hopf::new(abelian(3));
        let w = PseudoForm::basic(3, h.one(), &[1]).unwrap();
        let got = contract_form(&h, &h.one(), 1, &w).unwrap();
        assert_eq!(got, QE::from_factors(&h, &[h.one(), h.one()], &ModElem::gen(3, key(&[]))));
        assert!(contract_form(&h, &h.one(), 0, &w).unwrap().is_zero());
        let z = PseudoForm::basic(3, h.one(), &[]).unwrap();
        assert!(contract_form(&h, &h.one(), 0, &z).is_err());
    }

    #[test]
    fn differential_of_functions() {
        let h = Hopf::new(heisenberg(1));
        let g = h.mul(&h.gen(0), &h.gen(2));
        let w = PseudoForm::basic(3, g.clone(), &[]).unwrap();
        let dw = pseudoform_differential(&h, &w);
        for a in 0..3 {
            assert_eq!(dw.eval(&[a]), h.mul(&g, &h.gen(a)).neg());
        }
    }

    #[test]
    fn suite_passes_in_low_dimension() {
        for lie in [abelian(1), abelian(2), affine(), heisenberg(1)] {
            let h = Hopf::new(lie);
            let rep = verify_pseudoforms(&h, 7, 3);
            assert!(rep.passed(), "{}", rep.render_text());
        }
    }

    #[test]
    fn volume_action_sees_the_trace() {
        let h = Hopf::new(affine());
        assert_eq!(h.lie().tr_ad(0), &Q::from_integer(1.into()));
        let v0 = PseudoForm::volume(2);
        let got = act_on_form(&h, &h.one(), 0, &v0);
        assert_eq!(got, volume_action_expected(&h, &h.one(), 0));
        let wrong = volume_action_expected(&Hopf::new(abelian(2)), &PbwElem::one(2), 0);
        assert_ne!(got, wrong);
    }

    #[test]
    fn modules_over_wd() {
        for lie in [abelian(1), abelian(2), affine()] {
            let wd = Wd::new(Hopf::new(lie));
            let rep = verify_form_modules(&wd);
            assert!(rep.passed(), "{}", rep.render_text());
        }
    }

    #[test]
    fn generic_action_matches_bilinear_extension() {
        let h = Hopf::new(affine());
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for deg in 0..=2 {
            let w = random_form(&mut rng, &h, deg, 2);
            let f = random_pbw(&mut rng, 2, 2, 2);
            let direct = act_on_form(&h, &f, 1, &w);
            let alpha = ModElem::with_coeff(&f, 1usize);
            assert_eq!(direct, act_elem(&h, &alpha, &w.to_module()));
        }
    }
}
