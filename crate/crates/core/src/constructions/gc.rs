use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::multiindex::MultiIndex;
use crate::pbw::{Hopf, PbwElem};
use crate::pseudo::{pseudobracket, Commutator, Kind, PseudoModule, Pseudoalgebra};
use crate::quotient::{GenKey, ModElem, QE};
use crate::rational::{q, Q};
use crate::report::Report;

/// The generator `1 ⊗ ∂^(a) ⊗ E_ij` of `Cend_n = H ⊗ H ⊗ End k^n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CendKey {
    pub a: MultiIndex,
    pub i: usize,
    pub j: usize,
}

impl GenKey for CendKey {
    fn label(&self) -> String {
        format!("(1 # d^({}) # E_{}{})", fmt_index(&self.a), self.i + 1, self.j + 1)
    }
}

fn fmt_index(a: &MultiIndex) -> String {
    a.as_slice().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// An anti-involution of `End k^n`, as a matrix on the basis `E_ij` (index `i*n + j`).
#[derive(Clone, Debug)]
pub struct Gamma {
    n: usize,
    map: Vec<Vec<Q>>,
}

impl Gamma {
    pub fn transpose(n: usize) -> Self {
        let mut map = vec![vec![q(0); n * n]; n * n];
        for i in 0..n {
            for j in 0..n {
                map[j * n + i][i * n + j] = q(1);
            }
        }
        Gamma { n, map }
    }

    /// `A ↦ J⁻¹ Aᵀ J` with `J = [[0, I], [-I, 0]]`.
    pub fn symplectic(n: usize) -> Result<Self> {
        if !n.is_multiple_of(2) || n == 0 {
            return Err(Error::Input("the symplectic adjoint needs even n".into()));
        }
        let m = n / 2;
        let mut jm = vec![vec![q(0); n]; n];
        for i in 0..m {
            jm[i][m + i] = q(1);
            jm[m + i][i] = q(-1);
        }
        let jinv = crate::linalg::inverse(&jm).expect("J is invertible");
        let mut map = vec![vec![q(0); n * n]; n * n];
        for i in 0..n {
            for j in 0..n {
                // J⁻¹ E_ji J
                for k in 0..n {
                    for l in 0..n {
                        let c = &jinv[k][j] * &jm[i][l];
                        if !c.is_zero() {
                            map[k * n + l][i * n + j] += c;
                        }
                    }
                }
            }
        }
        Self::from_matrix(n, map)
    }

    /// Validates `γ² = id` and `γ(A)γ(B) = γ(BA)`.
    pub fn from_matrix(n: usize, map: Vec<Vec<Q>>) -> Result<Self> {
        if map.len() != n * n || map.iter().any(|r| r.len() != n * n) {
            return Err(Error::Input(format!("γ must be an {}×{} matrix", n * n, n * n)));
        }
        let g = Gamma { n, map };
        for i in 0..n {
            for j in 0..n {
                let e = unit_matrix(n, i, j);
                if g.apply_matrix(&g.apply_matrix(&e)) != e {
                    return Err(Error::Input("γ is not an involution".into()));
                }
                for k in 0..n {
                    for l in 0..n {
                        let f = unit_matrix(n, k, l);
                        let lhs = mat_mul(&g.apply_matrix(&e), &g.apply_matrix(&f));
                        let rhs = g.apply_matrix(&mat_mul(&f, &e));
                        if lhs != rhs {
                            return Err(Error::Input("γ is not an anti-homomorphism".into()));
                        }
                    }
                }
            }
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `γ(E_ij)` as `(k, l, c)` triples.
    pub fn image(&self, i: usize, j: usize) -> Vec<(usize, usize, Q)> {
        let n = self.n;
        (0..n * n)
            .filter(|&r| !self.map[r][i * n + j].is_zero())
            .map(|r| (r / n, r % n, self.map[r][i * n + j].clone()))
            .collect()
    }

    pub fn apply_matrix(&self, a: &[Vec<Q>]) -> Vec<Vec<Q>> {
        let n = self.n;
        let mut out = vec![vec![q(0); n]; n];
        for i in 0..n {
            for j in 0..n {
                if a[i][j].is_zero() {
                    continue;
                }
                for (k, l, c) in self.image(i, j) {
                    out[k][l] += &a[i][j] * c;
                }
            }
        }
        out
    }

    /// A basis of `{A : γ(A) = -A}`.
    pub fn minus_eigenspace(&self) -> Vec<Vec<Vec<Q>>> {
        let n = self.n;
        let m: Vec<Vec<Q>> = (0..n * n)
            .map(|r| (0..n * n).map(|c| self.map[r][c].clone() + if r == c { Q::one() } else { Q::zero() }).collect())
            .collect();
        crate::linalg::kernel(&m, n * n)
            .into_iter()
            .map(|v| (0..n).map(|i| v[i * n..(i + 1) * n].to_vec()).collect())
            .collect()
    }
}

fn unit_matrix(n: usize, i: usize, j: usize) -> Vec<Vec<Q>> {
    let mut m = vec![vec![q(0); n]; n];
    m[i][j] = q(1);
    m
}

fn mat_mul(a: &[Vec<Q>], b: &[Vec<Q>]) -> Vec<Vec<Q>> {
    crate::linalg::mat_mul(a, b)
}

/// `Cend_n` with `(1⊗a⊗A)*(1⊗b⊗B) = (1⊗a_(1)) ⊗_H (1⊗b a_(2)⊗AB)`.
///
/// `Cend_n` has infinitely many generators over `H`; checks run over those with
/// `|a| ≤ degree_bound`.
#[derive(Clone)]
pub struct Cend {
    hopf: Hopf,
    n: usize,
    degree_bound: u32,
}

impl Cend {
    pub fn new(hopf: Hopf, n: usize, degree_bound: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::Input("Cend_n needs n ≥ 1".into()));
        }
        Ok(Cend { hopf, n, degree_bound })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn key(&self, a: MultiIndex, i: usize, j: usize) -> CendKey {
        CendKey { a, i, j }
    }

    /// `ω(f⊗a⊗A) = (f⊗1)Δ(S(a)) ⊗ γ(A)` on a generator.
    pub fn omega_key(&self, g: &Gamma, k: &CendKey) -> ModElem<CendKey> {
        let h = &self.hopf;
        let mut out = ModElem::zero();
        let sa = h.antipode_mono(&k.a);
        for (m, c) in sa.terms() {
            for parts in m.compositions(2) {
                for (i, j, cg) in g.image(k.i, k.j) {
                    out.add_term(parts[0].clone(), CendKey { a: parts[1].clone(), i, j }, c * &cg);
                }
            }
        }
        out
    }

    pub fn omega(&self, g: &Gamma, x: &ModElem<CendKey>) -> ModElem<CendKey> {
        x.map_linear(&self.hopf, |k| self.omega_key(g, k))
    }

    /// `ω² = id`, `ω(a)*ω(b) = (σ ⊗_H ω)(b*a)` and closure of the `-1` eigenspace of `ω`
    /// in `gc_n`, on generators within the degree bound.
    pub fn verify_anti_involution(&self, g: &Gamma) -> Result<Report> {
        if g.n() != self.n {
            return Err(Error::Input("γ acts on matrices of the wrong size".into()));
        }
        let h = &self.hopf;
        let mut rep = Report::new(format!("anti-involution of {}", self.name()));
        let gens = self.generators();
        for k in &gens {
            let e = ModElem::gen(h.dim(), k.clone());
            let back = self.omega(g, &self.omega(g, &e));
            rep.record("involution", back == e, || format!("ω²({}) = {}", k.label(), back.render()));
        }
        for a in &gens {
            for b in &gens {
                let (ea, eb) = (ModElem::gen(h.dim(), a.clone()), ModElem::gen(h.dim(), b.clone()));
                let lhs = pseudobracket(self, &self.omega(g, &ea), &self.omega(g, &eb));
                let rhs = self.product(b, a).map_module(h, |k| self.omega_key(g, k)).swap(h, 0, 1);
                let r = lhs.sub(&rhs);
                rep.record("anti-involution", r.is_zero(), || {
                    format!("a={}, b={}: residual {}", a.label(), b.label(), r.render())
                });
            }
        }
        let gc = Commutator(self.clone());
        let minus: Vec<ModElem<CendKey>> = gens
            .iter()
            .map(|k| {
                let e = ModElem::gen(h.dim(), k.clone());
                e.sub(&self.omega(g, &e))
            })
            .filter(|x| !x.is_zero())
            .collect();
        for u in &minus {
            for v in &minus {
                let br = pseudobracket(&gc, u, v);
                let r = br.map_module(h, |k| self.omega_key(g, k)).add(&br);
                rep.record("eigenspace-closure", r.is_zero(), || {
                    format!("u={}, v={}: residual {}", u.render(), v.render(), r.render())
                });
            }
        }
        Ok(rep)
    }
}

impl Pseudoalgebra for Cend {
    type Key = CendKey;

    fn hopf(&self) -> &Hopf {
        &self.hopf
    }

    fn name(&self) -> String {
        format!("Cend_{} over U({})", self.n, self.hopf.lie().name())
    }

    fn kind(&self) -> Kind {
        Kind::Associative
    }

    fn generators(&self) -> Vec<CendKey> {
        let mut out = Vec::new();
        for a in MultiIndex::all_up_to(self.hopf.dim(), self.degree_bound) {
            for i in 0..self.n {
                for j in 0..self.n {
                    out.push(CendKey { a: a.clone(), i, j });
                }
            }
        }
        out
    }

    fn product(&self, x: &CendKey, y: &CendKey) -> QE<CendKey> {
        let h = &self.hopf;
        if x.j != y.i {
            return QE::zero(2);
        }
        let mut out = QE::zero(2);
        for parts in x.a.compositions(2) {
            let mut m = ModElem::zero();
            for (mi, c) in h.mono_mul(&y.a, &parts[1]).terms() {
                m.add_term(h.zero_index(), CendKey { a: mi.clone(), i: x.i, j: y.j }, c.clone());
            }
            let t = QE::from_factors(h, &[h.one(), PbwElem::mono(parts[0].clone(), q(1))], &m);
            out.add_scaled(&t, &q(1));
        }
        out
    }

    fn label(&self, k: &CendKey) -> String {
        k.label()
    }
}

/// `gc_n`, the commutator Lie pseudoalgebra of `Cend_n`.
pub type Gc = Commutator<Cend>;

/// `V = H ⊗ k^n` with `(1⊗a⊗E_ij)*(1⊗e_k) = δ_jk (1⊗a) ⊗_H e_i`.
pub struct CendModule<'a>(pub &'a Cend);

fn cend_action(c: &Cend, x: &CendKey, k: usize) -> QE<usize> {
    let h = c.hopf();
    if x.j != k {
        return QE::zero(2);
    }
    QE::from_factors(h, &[h.one(), PbwElem::mono(x.a.clone(), q(1))], &ModElem::gen(h.dim(), x.i))
}

impl PseudoModule for CendModule<'_> {
    type Alg = Cend;
    type Key = usize;

    fn algebra(&self) -> &Cend {
        self.0
    }

    fn name(&self) -> String {
        format!("H^{} over {}", self.0.n, self.0.name())
    }

    fn generators(&self) -> Vec<usize> {
        (0..self.0.n).collect()
    }

    fn action(&self, a: &CendKey, m: &usize) -> QE<usize> {
        cend_action(self.0, a, *m)
    }
}

/// The same space as a module over `gc_n`.
pub struct GcModule<'a>(pub &'a Gc);

impl PseudoModule for GcModule<'_> {
    type Alg = Gc;
    type Key = usize;

    fn algebra(&self) -> &Gc {
        self.0
    }

    fn name(&self) -> String {
        format!("H^{} over gc_{}", self.0 .0.n, self.0 .0.n)
    }

    fn generators(&self) -> Vec<usize> {
        (0..self.0 .0.n).collect()
    }

    fn action(&self, a: &CendKey, m: &usize) -> QE<usize> {
        cend_action(&self.0 .0, a, *m)
    }
}

/// `f⊗a ↦ -f⊗a`, sending `W(d)` into `gc_1`.
pub fn wd_to_gc1(hopf: &Hopf, i: usize) -> ModElem<CendKey> {
    let mut m = ModElem::zero();
    m.add_term(hopf.zero_index(), CendKey { a: MultiIndex::unit(hopf.dim(), i), i: 0, j: 0 }, q(-1));
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{Wd, WdOnH};
    use crate::lie::catalog::*;
    use crate::pseudo::{verify_action_compatibility, verify_axioms, verify_homomorphism, verify_module};

    #[test]
    fn gammas_are_anti_involutions() {
        assert!(Gamma::symplectic(2).is_ok());
        assert_eq!(Gamma::transpose(3).minus_eigenspace().len(), 3);
        assert_eq!(Gamma::symplectic(4).unwrap().minus_eigenspace().len(), 10);
        let mut id = vec![vec![q(0); 4]; 4];
        for (i, row) in id.iter_mut().enumerate() {
            row[i] = q(1);
        }
        assert!(Gamma::from_matrix(2, id).is_err());
    }

    #[test]
    fn cend1_associative_and_acts() {
        let c = Cend::new(Hopf::new(abelian(1)), 1, 2).unwrap();
        assert!(verify_axioms(&c).passed());
        assert!(verify_module(&CendModule(&c)).passed());
        let gc = Commutator(c.clone());
        assert!(verify_axioms(&gc).passed());
        assert!(c.verify_anti_involution(&Gamma::transpose(1)).unwrap().passed());
    }

    #[test]
    fn wd_embeds_in_gc1() {
        let h = Hopf::new(affine());
        let gc = Commutator(Cend::new(h.clone(), 1, 1).unwrap());
        let w = Wd::new(h.clone());
        assert!(verify_homomorphism(&w, &gc, |i| wd_to_gc1(&h, *i)).passed());
        let rep =
            verify_action_compatibility(&WdOnH(&w), &GcModule(&gc), |i| wd_to_gc1(&h, *i), |_| ModElem::gen(2, 0usize));
        assert!(rep.passed());
    }
}
