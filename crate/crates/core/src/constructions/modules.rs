use super::wd::{validate_trace_form, Wd};
use crate::error::Result;
use crate::pbw::{Hopf, PbwElem};
use crate::pseudo::{PseudoModule, Pseudoalgebra};
use crate::quotient::{ModElem, QE};
use crate::rational::Q;

/// `V_{λ,χ} = Hv` with `α*v = (λ Div^χ α ⊗ 1 - α) ⊗_H v`, i.e.
/// `(1⊗a)*v = (λ(a+χ(a))⊗1 - 1⊗a) ⊗_H v`.
pub struct VModule {
    wd: Wd,
    lambda: Q,
    chi: Vec<Q>,
}

impl VModule {
    pub fn new(hopf: Hopf, lambda: Q, chi: Vec<Q>) -> Result<Self> {
        validate_trace_form(&hopf, &chi)?;
        Ok(VModule { wd: Wd::new(hopf), lambda, chi })
    }

    pub fn lambda(&self) -> &Q {
        &self.lambda
    }

    pub fn chi(&self) -> &[Q] {
        &self.chi
    }
}

impl PseudoModule for VModule {
    type Alg = Wd;
    type Key = usize;

    fn algebra(&self) -> &Wd {
        &self.wd
    }

    fn name(&self) -> String {
        format!("V(λ={}, χ={})", self.lambda, self.wd.hopf().lie().fmt_vec(&self.chi))
    }

    fn generators(&self) -> Vec<usize> {
        vec![0]
    }

    fn action(&self, a: &usize, _v: &usize) -> QE<usize> {
        let h = self.wd.hopf();
        let shifted = h.gen(*a).add(&PbwElem::scalar(h.dim(), self.chi[*a].clone())).scale(&self.lambda);
        let v = ModElem::gen(h.dim(), 0usize);
        QE::from_factors(h, &[shifted, h.one()], &v).sub(&QE::from_factors(h, &[h.one(), h.gen(*a)], &v))
    }

    fn label(&self, _k: &usize) -> String {
        "v".into()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::WdOnH;
    use crate::lie::catalog::*;
    use crate::pseudo::verify_module;
    use crate::rational::{q, qf};

    #[test]
    fn lambda_zero_is_the_action_on_h() {
        let h = Hopf::new(affine());
        let v = VModule::new(h.clone(), q(0), vec![q(5), q(0)]).unwrap();
        let w = Wd::new(h);
        for a in 0..2 {
            assert_eq!(v.action(&a, &0), WdOnH(&w).action(&a, &0));
        }
    }

    #[test]
    fn modules_for_several_parameters() {
        for (lie, chi) in [(abelian(2), vec![q(1), qf(-1, 2)]), (affine(), vec![q(3), q(0)]), (sl2(), vec![q(0); 3])] {
            let v = VModule::new(Hopf::new(lie), qf(2, 3), chi).unwrap();
            assert!(verify_module(&v).passed(), "{}", v.name());
        }
    }
}
