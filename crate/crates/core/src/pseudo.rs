//! Pseudoalgebras and their modules on free `H`-modules, with axiom checks.

use std::collections::BTreeMap;

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::multiindex::MultiIndex;
use crate::pbw::{Hopf, PbwElem};
use crate::quotient::{GenKey, ModElem, QE};
use crate::rational::{q, Q};
use crate::report::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Lie,
    Associative,
}

/// A pseudoalgebra structure on a free `H`-module with generators `Key`.
///
/// `product(a, b)` is `[a*b]` (or `a*b`) in canonical form, i.e. the Fourier form
/// `Σ h_i ⊗ m_i` read as `Σ (h_i ⊗ 1) ⊗_H m_i`.
pub trait Pseudoalgebra: Send + Sync {
    type Key: GenKey;

    fn hopf(&self) -> &Hopf;

    fn name(&self) -> String;

    fn kind(&self) -> Kind {
        Kind::Lie
    }

    /// Generators on which identities are checked.
    fn generators(&self) -> Vec<Self::Key>;

    fn product(&self, a: &Self::Key, b: &Self::Key) -> QE<Self::Key>;

    /// Zero test; overridden when generators satisfy relations.
    fn is_zero_elem(&self, x: &QE<Self::Key>) -> bool {
        x.is_zero()
    }

    fn label(&self, k: &Self::Key) -> String {
        k.label()
    }
}

/// An action of a pseudoalgebra on a free `H`-module with generators `Key`.
pub trait PseudoModule: Send + Sync {
    type Alg: Pseudoalgebra;
    type Key: GenKey;

    fn algebra(&self) -> &Self::Alg;

    fn name(&self) -> String;

    fn generators(&self) -> Vec<Self::Key>;

    /// `a * m` in canonical form.
    fn action(&self, a: &<Self::Alg as Pseudoalgebra>::Key, m: &Self::Key) -> QE<Self::Key>;

    fn is_zero_elem(&self, x: &QE<Self::Key>) -> bool {
        x.is_zero()
    }

    fn label(&self, k: &Self::Key) -> String {
        k.label()
    }
}

pub fn gen_elem<K: GenKey>(h: &Hopf, k: &K) -> ModElem<K> {
    ModElem::gen(h.dim(), k.clone())
}

/// `[a*b]` for arbitrary elements, extended by `[fa*gb] = ((f⊗g)⊗_H 1)[a*b]`.
pub fn pseudobracket<P: Pseudoalgebra>(p: &P, a: &ModElem<P::Key>, b: &ModElem<P::Key>) -> QE<P::Key> {
    let h = p.hopf();
    let mut out = QE::zero(2);
    for (i, ga, ca) in a.terms() {
        for (j, gb, cb) in b.terms() {
            let base = p.product(ga, gb);
            let f = PbwElem::mono(i.clone(), ca * cb);
            let g = PbwElem::mono(j.clone(), q(1));
            let t = base.left_mul(h, &[f, g]).expect("arity 2");
            out.add_scaled(&t, &q(1));
        }
    }
    out
}

/// `a * m` for arbitrary elements.
pub fn act<M: PseudoModule>(m: &M, a: &ModElem<<M::Alg as Pseudoalgebra>::Key>, v: &ModElem<M::Key>) -> QE<M::Key> {
    let h = m.algebra().hopf();
    let mut out = QE::zero(2);
    for (i, ga, ca) in a.terms() {
        for (j, gv, cv) in v.terms() {
            let base = m.action(ga, gv);
            let f = PbwElem::mono(i.clone(), ca * cv);
            let g = PbwElem::mono(j.clone(), q(1));
            out.add_scaled(&base.left_mul(h, &[f, g]).expect("arity 2"), &q(1));
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    /// `[[a*b]*c]`
    Left,
    /// `[a*[b*c]]`
    Right,
    /// `((σ12 ⊗ id) ⊗_H id)[b*[a*c]]`
    Middle,
}

/// The three compositions entering the Jacobi and associativity identities.
pub fn triple_compose<P: Pseudoalgebra>(
    p: &P,
    a: &ModElem<P::Key>,
    b: &ModElem<P::Key>,
    c: &ModElem<P::Key>,
    shape: Shape,
) -> QE<P::Key> {
    let h = p.hopf();
    match shape {
        Shape::Left => pseudobracket(p, a, b).substitute(h, 0, 2, |g| pseudobracket(p, &gen_elem(h, g), c)),
        Shape::Right => pseudobracket(p, b, c).substitute(h, 1, 2, |g| pseudobracket(p, a, &gen_elem(h, g))),
        Shape::Middle => {
            let bac = pseudobracket(p, a, c).substitute(h, 1, 2, |g| pseudobracket(p, b, &gen_elem(h, g)));
            bac.swap(h, 0, 1)
        }
    }
}

fn left_on_keys<P: Pseudoalgebra>(p: &P, a: &P::Key, b: &P::Key, c: &P::Key) -> QE<P::Key> {
    p.product(a, b).substitute(p.hopf(), 0, 2, |g| p.product(g, c))
}

fn right_on_keys<P: Pseudoalgebra>(p: &P, a: &P::Key, b: &P::Key, c: &P::Key) -> QE<P::Key> {
    p.product(b, c).substitute(p.hopf(), 1, 2, |g| p.product(a, g))
}

/// `[a*[b*c]] - σ12[b*[a*c]] - [[a*b]*c]` on generators.
pub fn jacobi_residual<P: Pseudoalgebra>(p: &P, a: &P::Key, b: &P::Key, c: &P::Key) -> QE<P::Key> {
    let h = p.hopf();
    let r = right_on_keys(p, a, b, c);
    let m = right_on_keys(p, b, a, c).swap(h, 0, 1);
    let l = left_on_keys(p, a, b, c);
    r.sub(&m).sub(&l)
}

/// `a*(b*c) - (a*b)*c` on generators.
pub fn assoc_residual<P: Pseudoalgebra>(p: &P, a: &P::Key, b: &P::Key, c: &P::Key) -> QE<P::Key> {
    right_on_keys(p, a, b, c).sub(&left_on_keys(p, a, b, c))
}

/// `[b*a] + σ12[a*b]` on generators.
pub fn skew_residual<P: Pseudoalgebra>(p: &P, a: &P::Key, b: &P::Key) -> QE<P::Key> {
    p.product(b, a).add(&p.product(a, b).swap(p.hopf(), 0, 1))
}

fn render<P: Pseudoalgebra>(p: &P, x: &QE<P::Key>) -> String {
    x.render_with(&|k| p.label(k))
}

/// Checks skew-commutativity and Jacobi (or associativity) on all generators.
pub fn verify_axioms<P: Pseudoalgebra>(p: &P) -> Report {
    let gens = p.generators();
    let mut rep = Report::new(format!("axioms of {}", p.name()));
    match p.kind() {
        Kind::Lie => {
            let pairs: Vec<(usize, usize)> =
                (0..gens.len()).flat_map(|i| (i..gens.len()).map(move |j| (i, j))).collect();
            let out: Vec<Option<String>> = pairs
                .par_iter()
                .map(|&(i, j)| {
                    let r = skew_residual(p, &gens[i], &gens[j]);
                    (!p.is_zero_elem(&r)).then(|| {
                        format!("a={}, b={}: residual {}", p.label(&gens[i]), p.label(&gens[j]), render(p, &r))
                    })
                })
                .collect();
            rep.record_all("skew-commutativity", out);
            let out = over_triples(&gens, |a, b, c| {
                let r = jacobi_residual(p, a, b, c);
                (!p.is_zero_elem(&r)).then(|| {
                    format!("a={}, b={}, c={}: residual {}", p.label(a), p.label(b), p.label(c), render(p, &r))
                })
            });
            rep.record_all("jacobi", out);
        }
        Kind::Associative => {
            let out = over_triples(&gens, |a, b, c| {
                let r = assoc_residual(p, a, b, c);
                (!p.is_zero_elem(&r)).then(|| {
                    format!("a={}, b={}, c={}: residual {}", p.label(a), p.label(b), p.label(c), render(p, &r))
                })
            });
            rep.record_all("associativity", out);
        }
    }
    rep
}

fn over_triples<K: Sync, F>(gens: &[K], f: F) -> Vec<Option<String>>
where
    F: Fn(&K, &K, &K) -> Option<String> + Sync,
{
    let n = gens.len();
    (0..n * n * n).into_par_iter().map(|t| f(&gens[t / (n * n)], &gens[(t / n) % n], &gens[t % n])).collect()
}

/// Checks the module identity on all generator pairs and module generators.
pub fn verify_module<M: PseudoModule>(m: &M) -> Report {
    let p = m.algebra();
    let h = p.hopf();
    let ag = p.generators();
    let mg = m.generators();
    let mut rep = Report::new(format!("module {}", m.name()));
    let n = ag.len();
    let nm = mg.len();
    let cases: Vec<(usize, usize, usize)> =
        (0..n).flat_map(|i| (0..n).flat_map(move |j| (0..nm).map(move |k| (i, j, k)))).collect();
    let assoc = p.kind() == Kind::Associative;
    let out: Vec<Option<String>> = cases
        .par_iter()
        .map(|&(i, j, k)| {
            let (a, b, v) = (&ag[i], &ag[j], &mg[k]);
            let abm = m.action(b, v).substitute(h, 1, 2, |g| m.action(a, g));
            let lhs = if assoc {
                abm
            } else {
                let bam = m.action(a, v).substitute(h, 1, 2, |g| m.action(b, g)).swap(h, 0, 1);
                abm.sub(&bam)
            };
            let rhs = p.product(a, b).substitute(h, 0, 2, |g| m.action(g, v));
            let r = lhs.sub(&rhs);
            (!m.is_zero_elem(&r)).then(|| {
                format!(
                    "a={}, b={}, m={}: residual {}",
                    p.label(a),
                    p.label(b),
                    m.label(v),
                    r.render_with(&|x| m.label(x))
                )
            })
        })
        .collect();
    rep.record_all(if assoc { "module-associativity" } else { "module-jacobi" }, out);
    rep
}

/// Checks `φ([a*b]) = [φ(a)*φ(b)]` for an `H`-linear map given on generators.
pub fn verify_homomorphism<P1, P2, F>(p1: &P1, p2: &P2, map: F) -> Report
where
    P1: Pseudoalgebra,
    P2: Pseudoalgebra,
    F: Fn(&P1::Key) -> ModElem<P2::Key> + Sync,
{
    let h = p1.hopf();
    let gens = p1.generators();
    let mut rep = Report::new(format!("homomorphism {} -> {}", p1.name(), p2.name()));
    let images: Vec<ModElem<P2::Key>> = gens.iter().map(&map).collect();
    let n = gens.len();
    let out: Vec<Option<String>> = (0..n * n)
        .into_par_iter()
        .map(|t| {
            let (i, j) = (t / n, t % n);
            let lhs = p1.product(&gens[i], &gens[j]).map_module(h, &map);
            let rhs = pseudobracket(p2, &images[i], &images[j]);
            let r = lhs.sub(&rhs);
            (!p2.is_zero_elem(&r)).then(|| {
                format!(
                    "a={}, b={}: residual {}",
                    p1.label(&gens[i]),
                    p1.label(&gens[j]),
                    r.render_with(&|k| p2.label(k))
                )
            })
        })
        .collect();
    rep.record_all("homomorphism", out);
    rep
}

/// Checks `(id ⊗_H ψ)(a*m) = φ(a)*ψ(m)` for module maps over a homomorphism `φ`.
pub fn verify_action_compatibility<M1, M2, F, G>(m1: &M1, m2: &M2, phi: F, psi: G) -> Report
where
    M1: PseudoModule,
    M2: PseudoModule,
    F: Fn(&<M1::Alg as Pseudoalgebra>::Key) -> ModElem<<M2::Alg as Pseudoalgebra>::Key> + Sync,
    G: Fn(&M1::Key) -> ModElem<M2::Key> + Sync,
{
    let h = m1.algebra().hopf();
    let mut rep = Report::new(format!("compatibility {} -> {}", m1.name(), m2.name()));
    let ag = m1.algebra().generators();
    let mg = m1.generators();
    for a in &ag {
        for v in &mg {
            let lhs = m1.action(a, v).map_module(h, &psi);
            let rhs = act(m2, &phi(a), &psi(v));
            let r = lhs.sub(&rhs);
            rep.record("action-compatibility", m2.is_zero_elem(&r), || {
                format!("a={}, m={}: residual {}", m1.algebra().label(a), m1.label(v), r.render_with(&|k| m2.label(k)))
            });
        }
    }
    rep
}

/// The adjoint module of a pseudoalgebra.
pub struct Adjoint<'a, P: Pseudoalgebra>(pub &'a P);

impl<P: Pseudoalgebra> PseudoModule for Adjoint<'_, P> {
    type Alg = P;
    type Key = P::Key;

    fn algebra(&self) -> &P {
        self.0
    }

    fn name(&self) -> String {
        format!("adjoint of {}", self.0.name())
    }

    fn generators(&self) -> Vec<P::Key> {
        self.0.generators()
    }

    fn action(&self, a: &P::Key, m: &P::Key) -> QE<P::Key> {
        self.0.product(a, m)
    }

    fn is_zero_elem(&self, x: &QE<P::Key>) -> bool {
        self.0.is_zero_elem(x)
    }

    fn label(&self, k: &P::Key) -> String {
        self.0.label(k)
    }
}

/// The Lie pseudoalgebra `[a*b] = a*b - (σ ⊗_H id)(b*a)` of an associative one.
pub struct Commutator<A: Pseudoalgebra>(pub A);

impl<A: Pseudoalgebra> Pseudoalgebra for Commutator<A> {
    type Key = A::Key;

    fn hopf(&self) -> &Hopf {
        self.0.hopf()
    }

    fn name(&self) -> String {
        format!("commutator of {}", self.0.name())
    }

    fn generators(&self) -> Vec<A::Key> {
        self.0.generators()
    }

    fn product(&self, a: &A::Key, b: &A::Key) -> QE<A::Key> {
        self.0.product(a, b).sub(&self.0.product(b, a).swap(self.hopf(), 0, 1))
    }

    fn is_zero_elem(&self, x: &QE<A::Key>) -> bool {
        self.0.is_zero_elem(x)
    }

    fn label(&self, k: &A::Key) -> String {
        self.0.label(k)
    }
}

/// A pseudoalgebra given by an explicit table of Fourier forms `[e_i, e_j] ∈ H ⊗ L`.
#[derive(Clone)]
pub struct TableStructure {
    name: String,
    hopf: Hopf,
    kind: Kind,
    names: Vec<String>,
    table: BTreeMap<(usize, usize), QE<usize>>,
}

impl TableStructure {
    /// Missing entries are zero.
    pub fn new(
        name: impl Into<String>,
        hopf: Hopf,
        kind: Kind,
        names: Vec<String>,
        entries: Vec<((usize, usize), QE<usize>)>,
    ) -> Result<Self> {
        let r = names.len();
        let mut table = BTreeMap::new();
        for ((i, j), v) in entries {
            if i >= r || j >= r {
                return Err(Error::Input(format!("generator index ({i},{j}) out of range")));
            }
            if v.arity() != 2 {
                return Err(Error::Input("table entries must have arity 2".into()));
            }
            if v.terms().any(|(k, _)| k.gen >= r) {
                return Err(Error::Input("table entry uses an unknown generator".into()));
            }
            table.insert((i, j), v);
        }
        Ok(TableStructure { name: name.into(), hopf, kind, names, table })
    }

    /// Rank one with `[e*e] = α ⊗_H e`.
    pub fn rank1(name: impl Into<String>, hopf: Hopf, alpha: &crate::tensor::Tensor) -> Result<Self> {
        if alpha.arity() != 2 {
            return Err(Error::Input("α must lie in H ⊗ H".into()));
        }
        let e = ModElem::gen(hopf.dim(), 0usize);
        let v = QE::from_tensor(&hopf, alpha, &e);
        Self::new(name, hopf, Kind::Lie, vec!["e".into()], vec![((0, 0), v)])
    }

    /// Materializes the table of any pseudoalgebra with finitely many generators.
    pub fn from_structure<P: Pseudoalgebra>(p: &P) -> Result<Self> {
        let gens = p.generators();
        let index: BTreeMap<P::Key, usize> = gens.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        let mut entries = Vec::new();
        for (i, a) in gens.iter().enumerate() {
            for (j, b) in gens.iter().enumerate() {
                let v = p.product(a, b);
                let bad = std::cell::Cell::new(false);
                let w = v.map_module(p.hopf(), |g| match index.get(g) {
                    Some(&k) => ModElem::gen(p.hopf().dim(), k),
                    None => {
                        bad.set(true);
                        ModElem::zero()
                    }
                });
                if bad.get() {
                    return Err(Error::Input("products leave the generator set".into()));
                }
                entries.push(((i, j), w));
            }
        }
        let names = gens.iter().map(|g| p.label(g)).collect();
        Self::new(p.name(), p.hopf().clone(), p.kind(), names, entries)
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn entry(&self, i: usize, j: usize) -> QE<usize> {
        self.table.get(&(i, j)).cloned().unwrap_or_else(|| QE::zero(2))
    }

    pub fn with_entry(&self, i: usize, j: usize, v: QE<usize>) -> Self {
        let mut out = self.clone();
        out.table.insert((i, j), v);
        out
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}

impl Pseudoalgebra for TableStructure {
    type Key = usize;

    fn hopf(&self) -> &Hopf {
        &self.hopf
    }

    fn name(&self) -> String {
        self.name.clone()
    }

    fn kind(&self) -> Kind {
        self.kind
    }

    fn generators(&self) -> Vec<usize> {
        (0..self.names.len()).collect()
    }

    fn product(&self, a: &usize, b: &usize) -> QE<usize> {
        self.entry(*a, *b)
    }

    fn label(&self, k: &usize) -> String {
        self.names.get(*k).cloned().unwrap_or_else(|| k.label())
    }
}

/// A module given by an explicit action table `e_i * v_k ∈ H ⊗ M`.
#[derive(Clone)]
pub struct TableModule<'a, P: Pseudoalgebra> {
    alg: &'a P,
    name: String,
    names: Vec<String>,
    table: BTreeMap<(P::Key, usize), QE<usize>>,
}

impl<'a, P: Pseudoalgebra> TableModule<'a, P> {
    pub fn new(alg: &'a P, name: impl Into<String>, names: Vec<String>) -> Self {
        TableModule { alg, name: name.into(), names, table: BTreeMap::new() }
    }

    pub fn set(&mut self, a: P::Key, k: usize, v: QE<usize>) {
        self.table.insert((a, k), v);
    }

    pub fn get(&self, a: &P::Key, k: usize) -> QE<usize> {
        self.table.get(&(a.clone(), k)).cloned().unwrap_or_else(|| QE::zero(2))
    }
}

impl<P: Pseudoalgebra> PseudoModule for TableModule<'_, P> {
    type Alg = P;
    type Key = usize;

    fn algebra(&self) -> &P {
        self.alg
    }

    fn name(&self) -> String {
        self.name.clone()
    }

    fn generators(&self) -> Vec<usize> {
        (0..self.names.len()).collect()
    }

    fn action(&self, a: &P::Key, m: &usize) -> QE<usize> {
        self.get(a, *m)
    }

    fn label(&self, k: &usize) -> String {
        self.names.get(*k).cloned().unwrap_or_else(|| k.label())
    }
}

/// A random element of `H` with at most `terms` monomials of degree `≤ deg`.
pub fn random_pbw(rng: &mut impl Rng, n: usize, terms: usize, deg: u32) -> PbwElem {
    let monos = MultiIndex::all_up_to(n, deg);
    let mut h = PbwElem::zero();
    for _ in 0..terms {
        let i = monos[rng.gen_range(0..monos.len())].clone();
        h.add_term(i, Q::from_integer(rng.gen_range(-3i64..=3).into()));
    }
    h
}

/// A random `H`-linear combination of the given generators.
pub fn random_element<K: GenKey>(rng: &mut impl Rng, h: &Hopf, gens: &[K], terms: usize, deg: u32) -> ModElem<K> {
    let mut m = ModElem::zero();
    for _ in 0..terms {
        let g = gens[rng.gen_range(0..gens.len())].clone();
        let c = random_pbw(rng, h.dim(), 1, deg);
        m.add_scaled(&ModElem::with_coeff(&c, g), &q(1));
    }
    m
}

/// Jacobi (or associativity) on random `H`-linear combinations of generators.
pub fn verify_random_combinations<P: Pseudoalgebra>(p: &P, seed: u64, samples: usize, deg: u32) -> Report {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let gens = p.generators();
    let h = p.hopf();
    let mut rep = Report::new(format!("random combinations in {}", p.name()));
    for _ in 0..samples {
        let a = random_element(&mut rng, h, &gens, 2, deg);
        let b = random_element(&mut rng, h, &gens, 2, deg);
        let c = random_element(&mut rng, h, &gens, 2, deg);
        let right = triple_compose(p, &a, &b, &c, Shape::Right);
        let left = triple_compose(p, &a, &b, &c, Shape::Left);
        match p.kind() {
            Kind::Lie => {
                let mid = triple_compose(p, &a, &b, &c, Shape::Middle);
                let r = right.sub(&mid).sub(&left);
                rep.record("jacobi", p.is_zero_elem(&r), || format!("a={a:?}, b={b:?}, c={c:?}"));
                let s = pseudobracket(p, &b, &a).add(&pseudobracket(p, &a, &b).swap(h, 0, 1));
                rep.record("skew-commutativity", p.is_zero_elem(&s), || format!("a={a:?}, b={b:?}"));
            }
            Kind::Associative => {
                let r = right.sub(&left);
                rep.record("associativity", p.is_zero_elem(&r), || format!("a={a:?}, b={b:?}, c={c:?}"));
            }
        }
    }
    rep
}
