use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::pbw::Hopf;
use crate::pseudo::Pseudoalgebra;
use crate::quotient::{ModElem, QE};

/// `Cur g = H ⊗ g` with `[(1⊗a)*(1⊗b)] = (1⊗1) ⊗_H (1⊗[a,b])`.
#[derive(Clone)]
pub struct Current {
    hopf: Hopf,
    g: LieAlgebra,
}

impl Current {
    pub fn new(hopf: Hopf, g: LieAlgebra) -> Result<Self> {
        let v = g.validate();
        if !v.is_valid() {
            return Err(Error::Input(format!("{} is not a Lie algebra: {}", g.name(), v.failures.join("; "))));
        }
        Ok(Current { hopf, g })
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.g
    }
}

impl Pseudoalgebra for Current {
    type Key = usize;

    fn hopf(&self) -> &Hopf {
        &self.hopf
    }

    fn name(&self) -> String {
        format!("Cur {} over U({})", self.g.name(), self.hopf.lie().name())
    }

    fn generators(&self) -> Vec<usize> {
        (0..self.g.dim()).collect()
    }

    fn product(&self, a: &usize, b: &usize) -> QE<usize> {
        let mut m = ModElem::zero();
        for (k, c) in self.g.bracket(*a, *b) {
            m.add_term(self.hopf.zero_index(), *k, c.clone());
        }
        QE::from_factors(&self.hopf, &[self.hopf.one(), self.hopf.one()], &m)
    }

    fn label(&self, k: &usize) -> String {
        self.g.basis()[*k].clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::catalog::*;
    use crate::pseudo::verify_axioms;

    #[test]
    fn sl2_current_bracket_and_axioms() {
        let c = Current::new(Hopf::new(abelian(1)), sl2()).unwrap();
        let ef = c.product(&0, &1);
        let h = c.hopf();
        let expect = QE::from_factors(h, &[h.one(), h.one()], &ModElem::gen(1, 2usize));
        assert_eq!(ef, expect);
        assert!(verify_axioms(&c).passed());
    }

    #[test]
    fn abelian_current_is_zero() {
        let c = Current::new(Hopf::new(abelian(2)), abelian(3)).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                assert!(c.product(&a, &b).is_zero());
            }
        }
    }
}
