use num_traits::Zero;

use crate::error::{Error, Result};
use crate::multiindex::MultiIndex;
use crate::pbw::{Hopf, PbwElem};
use crate::pseudo::{PseudoModule, Pseudoalgebra};
use crate::quotient::{ModElem, RawQE, QE};
use crate::rational::{q, Q};
use crate::tensor::{Slots, Tensor};

/// `W(d) = H ⊗ d`, with `e_i = 1 ⊗ ∂_i`:
/// `[e_a*e_b] = (1⊗1) ⊗_H e_[a,b] - (1⊗∂_a) ⊗_H e_b + (∂_b⊗1) ⊗_H e_a`.
///
/// A generator subset spanning a subalgebra `d' ⊂ d` gives `H ⊗ d'`.
#[derive(Clone)]
pub struct Wd {
    hopf: Hopf,
    subset: Vec<usize>,
}

impl Wd {
    pub fn new(hopf: Hopf) -> Self {
        let subset = (0..hopf.dim()).collect();
        Wd { hopf, subset }
    }

    /// `H ⊗ d'` for `d'` spanned by the given basis vectors.
    pub fn with_subset(hopf: Hopf, subset: Vec<usize>) -> Result<Self> {
        let lie = hopf.lie().clone();
        for &a in &subset {
            if a >= lie.dim() {
                return Err(Error::Input(format!("basis index {a} out of range")));
            }
            for &b in &subset {
                if lie.bracket(a, b).keys().any(|k| !subset.contains(k)) {
                    return Err(Error::Input("the chosen basis vectors do not span a subalgebra".into()));
                }
            }
        }
        let mut subset = subset;
        subset.sort();
        subset.dedup();
        Ok(Wd { hopf, subset })
    }

    pub fn subset(&self) -> &[usize] {
        &self.subset
    }

    /// `Σ h_i ⊗ ∂_i` as an element.
    pub fn element(&self, coeffs: &[PbwElem]) -> ModElem<usize> {
        let mut m = ModElem::zero();
        for (i, h) in coeffs.iter().enumerate() {
            m.add_scaled(&ModElem::with_coeff(h, i), &q(1));
        }
        m
    }

    /// The element `Σ v_i (1 ⊗ ∂_i)` for a vector `v ∈ d`.
    pub fn from_vector(&self, v: &[Q]) -> ModElem<usize> {
        let mut m = ModElem::zero();
        for (i, c) in v.iter().enumerate() {
            m.add_term(self.hopf.zero_index(), i, c.clone());
        }
        m
    }
}

impl Pseudoalgebra for Wd {
    type Key = usize;

    fn hopf(&self) -> &Hopf {
        &self.hopf
    }

    fn name(&self) -> String {
        if self.subset.len() == self.hopf.dim() {
            format!("W({})", self.hopf.lie().name())
        } else {
            let names: Vec<_> = self.subset.iter().map(|&i| self.hopf.lie().basis()[i].clone()).collect();
            format!("H ⊗ span{{{}}} in W({})", names.join(","), self.hopf.lie().name())
        }
    }

    fn generators(&self) -> Vec<usize> {
        self.subset.clone()
    }

    fn product(&self, a: &usize, b: &usize) -> QE<usize> {
        let h = &self.hopf;
        let z = h.zero_index();
        let (da, db) = (MultiIndex::unit(h.dim(), *a), MultiIndex::unit(h.dim(), *b));
        let mut raw = RawQE::new(2);
        for (k, c) in h.lie().bracket(*a, *b) {
            raw.add(Slots::from_vec(vec![z.clone(), z.clone()]), z.clone(), *k, c.clone());
        }
        raw.add(Slots::from_vec(vec![z.clone(), da]), z.clone(), *b, q(-1));
        raw.add(Slots::from_vec(vec![db, z.clone()]), z.clone(), *a, q(1));
        raw.canonicalize(h)
    }

    fn label(&self, k: &usize) -> String {
        self.hopf.lie().basis()[*k].clone()
    }
}

/// `H` as a `W(d)`-module: `(f⊗a)*g = -(f⊗ga) ⊗_H 1`.
pub struct WdOnH<'a>(pub &'a Wd);

impl PseudoModule for WdOnH<'_> {
    type Alg = Wd;
    type Key = usize;

    fn algebra(&self) -> &Wd {
        self.0
    }

    fn name(&self) -> String {
        format!("H over {}", self.0.name())
    }

    fn generators(&self) -> Vec<usize> {
        vec![0]
    }

    fn action(&self, a: &usize, _m: &usize) -> QE<usize> {
        let h = self.0.hopf();
        QE::from_factors(h, &[h.one(), h.gen(*a).neg()], &ModElem::gen(h.dim(), 0usize))
    }

    fn label(&self, _k: &usize) -> String {
        "1".into()
    }
}

/// Errors unless `χ` vanishes on `[d, d]`.
pub fn validate_trace_form(hopf: &Hopf, chi: &[Q]) -> Result<()> {
    let lie = hopf.lie();
    if chi.len() != lie.dim() {
        return Err(Error::Input("χ has the wrong length".into()));
    }
    for i in 0..lie.dim() {
        for j in 0..lie.dim() {
            let v: Q = lie.bracket(i, j).iter().map(|(k, c)| c * &chi[*k]).sum();
            if !v.is_zero() {
                return Err(Error::Input(format!(
                    "χ is not a trace form: χ([{}, {}]) = {}",
                    lie.basis()[i],
                    lie.basis()[j],
                    v
                )));
            }
        }
    }
    Ok(())
}

/// `Div^χ(Σ h_i ⊗ ∂_i) = Σ h_i (∂_i + χ(∂_i))`.
pub fn divergence(hopf: &Hopf, alpha: &ModElem<usize>, chi: &[Q]) -> Result<PbwElem> {
    validate_trace_form(hopf, chi)?;
    Ok(divergence_unchecked(hopf, alpha, chi))
}

pub(crate) fn divergence_unchecked(hopf: &Hopf, alpha: &ModElem<usize>, chi: &[Q]) -> PbwElem {
    let mut out = PbwElem::zero();
    for (i, g, c) in alpha.terms() {
        let t = hopf.mono_times(i, &hopf.gen(*g));
        out.add_scaled(&t, c);
        out.add_term(i.clone(), c * &chi[*g]);
    }
    out
}

/// `Div₂^χ : (H⊗H) ⊗_H W(d) → H⊗H`, `(f⊗g) ⊗_H α ↦ (f⊗g) Δ(Div^χ α)`.
pub fn div2(hopf: &Hopf, x: &QE<usize>, chi: &[Q]) -> Tensor {
    assert_eq!(x.arity(), 2);
    let mut out = Tensor::zero(2);
    for (slots, m) in x.coefficient_map() {
        let d = divergence_unchecked(hopf, &m, chi);
        let left = Tensor::from_factors(&[PbwElem::mono(slots[0].clone(), q(1)), hopf.one()]);
        out.add_scaled(&left.mul(hopf, &hopf.coproduct(&d)), &q(1));
    }
    out
}

/// `Σ h_i ⊗ ∂_i` viewed in `H ⊗ H`.
pub fn as_tensor(hopf: &Hopf, alpha: &ModElem<usize>) -> Tensor {
    let mut t = Tensor::zero(2);
    for (i, g, c) in alpha.terms() {
        t.add_term(Slots::from_vec(vec![i.clone(), MultiIndex::unit(hopf.dim(), *g)]), c.clone());
    }
    t
}

/// Residual of `Div₂([α*β]) = (Div α ⊗ 1)σ(β) - (1 ⊗ Div β)α`.
pub fn check_div2(wd: &Wd, alpha: &ModElem<usize>, beta: &ModElem<usize>, chi: &[Q]) -> Result<Tensor> {
    let h = wd.hopf();
    validate_trace_form(h, chi)?;
    let br = crate::pseudo::pseudobracket(wd, alpha, beta);
    let lhs = div2(h, &br, chi);
    let da = divergence_unchecked(h, alpha, chi);
    let db = divergence_unchecked(h, beta, chi);
    let sb = as_tensor(h, beta).permute(&[1, 0])?;
    let t1 = Tensor::from_factors(&[da, h.one()]).mul(h, &sb);
    let t2 = Tensor::from_factors(&[h.one(), db]).mul(h, &as_tensor(h, alpha));
    Ok(lhs.sub(&t1.sub(&t2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::catalog::*;
    use crate::pseudo::{verify_axioms, verify_module};

    #[test]
    fn one_dimensional_bracket() {
        // [e*e] = (∂⊗1 - 1⊗∂) ⊗_H e
        let h = Hopf::new(abelian(1));
        let w = Wd::new(h.clone());
        let e = ModElem::gen(1, 0usize);
        let expect = QE::from_tensor(
            &h,
            &Tensor::from_factors(&[h.gen(0), h.one()]).sub(&Tensor::from_factors(&[h.one(), h.gen(0)])),
            &e,
        );
        assert_eq!(w.product(&0, &0), expect);
    }

    #[test]
    fn axioms_and_module_on_h() {
        for lie in [abelian(2), affine(), heisenberg(1), sl2()] {
            let w = Wd::new(Hopf::new(lie));
            assert!(verify_axioms(&w).passed(), "{}", w.name());
            assert!(verify_module(&WdOnH(&w)).passed());
        }
    }

    #[test]
    fn divergence_of_generator() {
        let h = Hopf::new(abelian(1));
        let e = ModElem::gen(1, 0usize);
        assert_eq!(divergence(&h, &e, &[q(0)]).unwrap(), h.gen(0));
        let h2 = Hopf::new(affine());
        assert!(divergence(&h2, &ModElem::gen(2, 0usize), &[q(0), q(1)]).is_err());
    }

    #[test]
    fn div2_on_generators() {
        let h = Hopf::new(affine());
        let w = Wd::new(h.clone());
        for a in 0..2 {
            for b in 0..2 {
                let r = check_div2(&w, &ModElem::gen(2, a), &ModElem::gen(2, b), &[q(3), q(0)]).unwrap();
                assert!(r.is_zero());
            }
        }
    }
}
