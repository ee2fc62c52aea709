use super::wd::{divergence_unchecked, Wd};
use crate::error::{Error, Result};
use crate::forms::{validate_geometric_datum, FormElement, GeometricDatum};
use crate::lie::LieAlgebra;
use crate::linalg::inverse;
use crate::multiindex::MultiIndex;
use crate::pbw::{Hopf, PbwElem};
use crate::pseudo::{verify_axioms, verify_homomorphism, TableStructure};
use crate::quotient::ModElem;
use crate::rational::{q, Q};
use crate::report::Report;
use crate::tensor::{Slots, Tensor};

/// A pair `(r, s)` with `r ∈ d∧d` skew and `s ∈ d`, giving `α = r + s⊗1 - 1⊗s`.
#[derive(Clone, Debug)]
pub struct Rank1Datum {
    pub r: Vec<Vec<Q>>,
    pub s: Vec<Q>,
}

impl Rank1Datum {
    pub fn new(r: Vec<Vec<Q>>, s: Vec<Q>) -> Result<Self> {
        let n = s.len();
        if r.len() != n || r.iter().any(|row| row.len() != n) {
            return Err(Error::Input("r must be an N×N matrix and s a vector of length N".into()));
        }
        for i in 0..n {
            for j in 0..n {
                if r[i][j] != -r[j][i].clone() {
                    return Err(Error::Input(format!("r is not skew at ({}, {})", i + 1, j + 1)));
                }
            }
        }
        Ok(Rank1Datum { r, s })
    }

    pub fn zero(n: usize) -> Self {
        Rank1Datum { r: vec![vec![q(0); n]; n], s: vec![q(0); n] }
    }

    pub fn dim(&self) -> usize {
        self.s.len()
    }

    /// `(r, s)` from an H- or K-type geometric datum.
    pub fn from_geometric(lie: &LieAlgebra, datum: &GeometricDatum) -> Result<Self> {
        let rep = validate_geometric_datum(lie, datum);
        match (rep.r, rep.s) {
            (Some(r), Some(s)) if rep.failures.is_empty() => Rank1Datum::new(r, s),
            _ => Err(Error::Validation(rep.failures.join("; "))),
        }
    }

    /// `Σ r^{ij} ∂_i ⊗ ∂_j`.
    pub fn r_tensor(&self) -> Tensor {
        let n = self.dim();
        let mut t = Tensor::zero(2);
        for i in 0..n {
            for j in 0..n {
                t.add_term(Slots::from_vec(vec![MultiIndex::unit(n, i), MultiIndex::unit(n, j)]), self.r[i][j].clone());
            }
        }
        t
    }

    pub fn s_elem(&self) -> PbwElem {
        PbwElem::from_vector(&self.s)
    }

    pub fn alpha(&self) -> Tensor {
        let n = self.dim();
        let one = PbwElem::one(n);
        let s = self.s_elem();
        self.r_tensor().add(&Tensor::from_factors(&[s.clone(), one.clone()])).sub(&Tensor::from_factors(&[one, s]))
    }

    /// `x = ½ Σ r^{ij} [∂_i, ∂_j]`.
    pub fn x(&self, lie: &LieAlgebra) -> Vec<Q> {
        let n = self.dim();
        let mut out = vec![q(0); n];
        for i in 0..n {
            for j in 0..n {
                for (k, c) in lie.bracket(i, j) {
                    out[*k] += &self.r[i][j] * c / q(2);
                }
            }
        }
        out
    }

    pub fn is_nondegenerate(&self) -> bool {
        inverse(&self.r).is_some()
    }

    /// `-r + 1⊗s` as an element of `W(d)`; `sign = -1` gives `r - 1⊗s`.
    pub fn wd_image(&self, sign: i64) -> ModElem<usize> {
        let n = self.dim();
        let mut m = ModElem::zero();
        for i in 0..n {
            for j in 0..n {
                m.add_term(MultiIndex::unit(n, i), j, -&self.r[i][j] * q(sign));
            }
        }
        for (j, c) in self.s.iter().enumerate() {
            m.add_term(MultiIndex::zero(n), j, c * q(sign));
        }
        m
    }

    /// A copy with one coordinate changed (skew-symmetrically for `r`).
    pub fn perturbed_r(&self, i: usize, j: usize, delta: Q) -> Self {
        let mut d = self.clone();
        d.r[i][j] += &delta;
        d.r[j][i] -= &delta;
        d
    }

    pub fn perturbed_s(&self, i: usize, delta: Q) -> Self {
        let mut d = self.clone();
        d.s[i] += delta;
        d
    }
}

/// Evaluates `[r, Δ(s)] = 0` and `([r12, r13] + r12 s3) + cyclic = 0`.
pub fn check_ybe(hopf: &Hopf, datum: &Rank1Datum) -> Report {
    let mut rep = Report::new(format!("Yang-Baxter data on {}", hopf.lie().name()));
    let r = datum.r_tensor();
    let ds = hopf.coproduct(&datum.s_elem());
    let c3 = r.mul(hopf, &ds).sub(&ds.mul(hopf, &r));
    rep.record("ybe-cartan", c3.is_zero(), || format!("[r, Δ(s)] = {}", c3.render()));
    let c4 = cyclic_residual(hopf, datum);
    rep.record("ybe-cyclic", c4.is_zero(), || format!("residual {}", c4.render()));
    rep
}

fn cyclic_residual(hopf: &Hopf, datum: &Rank1Datum) -> Tensor {
    let n = datum.dim();
    let one = Tensor::from_factors(&[PbwElem::one(n)]);
    let r12 = datum.r_tensor().outer(&one);
    let r13 = r12.permute(&[0, 2, 1]).expect("valid permutation");
    let s3 = Tensor::from_factors(&[PbwElem::one(n), PbwElem::one(n), datum.s_elem()]);
    let x = r12.mul(hopf, &r13).sub(&r13.mul(hopf, &r12)).add(&r12.mul(hopf, &s3));
    let c1 = x.permute(&[1, 2, 0]).expect("valid permutation");
    let c2 = x.permute(&[2, 0, 1]).expect("valid permutation");
    x.add(&c1).add(&c2)
}

/// `He` with `[e*e] = α ⊗_H e`.
pub fn make_rank1(hopf: &Hopf, datum: &Rank1Datum) -> Result<TableStructure> {
    if datum.dim() != hopf.dim() {
        return Err(Error::Input("datum dimension differs from dim d".into()));
    }
    TableStructure::rank1(format!("rank-1 over {}", hopf.lie().name()), hopf.clone(), &datum.alpha())
}

/// Certifies `e ↦ -r + 1⊗s` as a homomorphism into `W(d)`, and for nondegenerate `r`
/// that the image has `Div^φ = 0` with `φ = ι_(x-s) ω`.
pub fn embed_rank1_in_wd(hopf: &Hopf, datum: &Rank1Datum) -> Result<Report> {
    let ybe = check_ybe(hopf, datum);
    if !ybe.passed() {
        return Err(Error::Input(format!("the datum fails the Yang-Baxter equations:\n{}", ybe.render_text())));
    }
    let p = make_rank1(hopf, datum)?;
    let wd = Wd::new(hopf.clone());
    let image = datum.wd_image(1);
    let mut rep = verify_homomorphism(&p, &wd, |_| image.clone());
    rep.merge(verify_axioms(&p));
    if let Some(omega) = inverse(&datum.r) {
        let phi = embedding_trace_form(hopf.lie(), datum, &omega)?;
        let div = divergence_unchecked(hopf, &image, &phi);
        rep.record("embedding-divergence", div.is_zero(), || format!("Div^φ = {}", div.render()));
        rep.note(format!("φ = {}", hopf.lie().fmt_vec(&phi)));
    }
    Ok(rep)
}

/// `φ = ι_(x-s) ω` with `ω` the inverse matrix of `r`.
pub fn embedding_trace_form(lie: &LieAlgebra, datum: &Rank1Datum, omega: &[Vec<Q>]) -> Result<Vec<Q>> {
    let x = datum.x(lie);
    let v: Vec<Q> = x.iter().zip(&datum.s).map(|(a, b)| a - b).collect();
    let w = FormElement::from_matrix(omega);
    Ok(w.interior(&v)?.to_covector())
}

/// Left side minus right side of
/// `(1⊗β)(id⊗Δ)(β) - (σ⊗id)((1⊗β)(id⊗Δ)(β)) = (α⊗1)(Δ⊗id)(β)`.
pub fn rank1_module_residual(hopf: &Hopf, alpha: &Tensor, beta: &Tensor) -> Tensor {
    let one = Tensor::from_factors(&[hopf.one()]);
    let a = one.outer(beta).mul(hopf, &beta.coproduct_at(1));
    let lhs = a.sub(&a.permute(&[1, 0, 2]).expect("valid permutation"));
    let rhs = alpha.outer(&one).mul(hopf, &beta.coproduct_at(0));
    lhs.sub(&rhs)
}

pub fn rank1_module_check(hopf: &Hopf, alpha: &Tensor, beta: &Tensor) -> Report {
    let mut rep = Report::new("rank-1 module equation");
    let r = rank1_module_residual(hopf, alpha, beta);
    rep.record("rank1-module", r.is_zero(), || format!("residual {}", r.render()));
    rep
}

/// `r - 1⊗s` as a tensor.
pub fn defining_beta(datum: &Rank1Datum) -> Tensor {
    let n = datum.dim();
    datum.r_tensor().sub(&Tensor::from_factors(&[PbwElem::one(n), datum.s_elem()]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::catalog::*;

    fn wedge(n: usize, i: usize, j: usize) -> Vec<Vec<Q>> {
        let mut r = vec![vec![q(0); n]; n];
        r[i][j] = q(1);
        r[j][i] = q(-1);
        r
    }

    #[test]
    fn sl2_sign_of_s_matters() {
        let h = Hopf::new(sl2());
        let good = Rank1Datum::new(wedge(3, 0, 1), vec![q(0), q(0), q(-1)]).unwrap();
        assert!(check_ybe(&h, &good).passed());
        let bad = Rank1Datum::new(wedge(3, 0, 1), vec![q(0), q(0), q(1)]).unwrap();
        assert!(!check_ybe(&h, &bad).passed());
        assert!(embed_rank1_in_wd(&h, &bad).is_err());
    }

    #[test]
    fn zero_datum_embeds_trivially() {
        let h = Hopf::new(abelian(2));
        let rep = embed_rank1_in_wd(&h, &Rank1Datum::zero(2)).unwrap();
        assert!(rep.passed());
    }

    #[test]
    fn heisenberg_x_is_nc() {
        let lie = heisenberg(2);
        let mut r = wedge(5, 0, 2);
        r[1][3] = q(1);
        r[3][1] = q(-1);
        let d = Rank1Datum::new(r, vec![q(0), q(0), q(0), q(0), q(-1)]).unwrap();
        assert_eq!(d.x(&lie), vec![q(0), q(0), q(0), q(0), q(2)]);
    }

    #[test]
    fn defining_action_solves_module_equation() {
        let h = Hopf::new(affine());
        let d = Rank1Datum::new(wedge(2, 0, 1), vec![q(0), q(1)]).unwrap();
        assert!(rank1_module_check(&h, &d.alpha(), &defining_beta(&d)).passed());
        assert!(rank1_module_check(&h, &d.alpha(), &Tensor::zero(2)).passed());
    }
}
