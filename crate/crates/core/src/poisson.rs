//! Linear local Poisson brackets in `N` space variables and the matching pseudoalgebras over
//! `H = U(d)`, `d` abelian of dimension `N`.
//!
//! A bracket `{u_i(x), u_j(y)} = Σ_k Q_ij^k(∂_y, ∂_t)(u_k(t) δ(x-y))|_{t=y}` is stored through the
//! polynomials `Q_ij^k(λ, ∂)`, so that `[u_i λ u_j] = Σ_k Q_ij^k(λ, ∂) u_k`. The first block of
//! variables (`λ`, or `z` after substitution) acts on the first tensor factor.
//! The pseudobracket is `[u_i*u_j] = Σ_k P_ij^k(∂⊗1, 1⊗∂) ⊗_H u_k` with `P(z,w) = Q(-z, z+w)`.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::cohomology::{
    central_cochain, cochain_differential, cochain_is_zero, is_trivial_cocycle, CocycleTable, TrivialModule,
};
use crate::constructions::{Current, PairKey, Sd};
use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::multiindex::MultiIndex;
use crate::pbw::{Hopf, PbwElem};
use crate::pseudo::{verify_axioms, verify_homomorphism, Kind, Pseudoalgebra, TableStructure};
use crate::quotient::{ModElem, QE};
use crate::rational::{fmt_coeff_prefix, fmt_q, join_signed, q, serde_q, Q};
use crate::report::Report;
use crate::tensor::{Slots, Tensor};

/// A polynomial with rational coefficients in `2N` commuting variables, ordinary monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Q>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(e, q(1));
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn add_term(&mut self, e: Vec<u32>, c: Q) {
        assert_eq!(e.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        let v = self.terms.entry(e.clone()).or_insert_with(Q::zero);
        *v += c;
        if v.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Q)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&q(-1)))
    }

    pub fn scale(&self, c: &Q) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.iter().zip(b).map(|(x, y)| x + y).collect(), ca * cb);
            }
        }
        out
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// Replaces variable `i` by `images[i]`.
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.nvars);
        let m = images.first().map_or(self.nvars, |p| p.nvars);
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|p| vec![Poly::constant(m, q(1)), p.clone()]).collect();
        let mut out = Poly::zero(m);
        for (e, c) in &self.terms {
            let mut t = Poly::constant(m, c.clone());
            for (i, &k) in e.iter().enumerate() {
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().expect("nonempty").mul(&images[i]);
                    powers[i].push(next);
                }
                t = t.mul(&powers[i][k as usize]);
            }
            out = out.add(&t);
        }
        out
    }

    pub fn eval(&self, point: &[Q]) -> Q {
        let mut s = Q::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                for _ in 0..k {
                    t *= x;
                }
            }
            s += t;
        }
        s
    }

    /// Renders with the given variable names, e.g. `2*λ1 + ∂1`.
    pub fn render(&self, names: &[String]) -> String {
        let terms = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, k)| **k > 0)
                    .map(|(i, k)| if *k == 1 { names[i].clone() } else { format!("{}^{}", names[i], k) })
                    .collect();
                if mono.is_empty() {
                    fmt_q(c)
                } else {
                    format!("{}{}", fmt_coeff_prefix(c), mono.join("*"))
                }
            })
            .collect();
        join_signed(terms)
    }
}

/// Names `λ1..λN, ∂1..∂N`.
pub fn lambda_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("λ{i}")).chain((1..=n).map(|i| format!("∂{i}"))).collect()
}

/// `P(z,w) = Q(-z, z+w)`; both in `2N` variables, first block first.
pub fn p_from_q(qp: &Poly) -> Poly {
    let m = qp.nvars();
    let n = m / 2;
    let images: Vec<Poly> = (0..m)
        .map(|i| if i < n { Poly::var(m, i).scale(&q(-1)) } else { Poly::var(m, i - n).add(&Poly::var(m, i)) })
        .collect();
    qp.substitute(&images)
}

/// `Q(λ,∂) = P(-λ, λ+∂)`, the inverse substitution.
pub fn q_from_p(pp: &Poly) -> Poly {
    let m = pp.nvars();
    let n = m / 2;
    let images: Vec<Poly> = (0..m)
        .map(|i| if i < n { Poly::var(m, i).scale(&q(-1)) } else { Poly::var(m, i - n).add(&Poly::var(m, i)) })
        .collect();
    pp.substitute(&images)
}

/// `P(∂⊗1, 1⊗∂)` in the divided-power basis: `z^α w^β = α!β! ∂^(α) ⊗ ∂^(β)`.
pub fn poly_to_tensor(p: &Poly) -> Tensor {
    let n = p.nvars() / 2;
    let mut t = Tensor::zero(2);
    for (e, c) in p.terms() {
        let a = MultiIndex::from_slice(&e[..n]);
        let b = MultiIndex::from_slice(&e[n..]);
        let f = Q::from_integer(a.factorial() * b.factorial());
        t.add_term(Slots::from_vec(vec![a, b]), c * f);
    }
    t
}

pub fn tensor_to_poly(t: &Tensor, n: usize) -> Poly {
    let mut p = Poly::zero(2 * n);
    for (s, c) in t.terms() {
        let f = Q::from_integer(s[0].factorial() * s[1].factorial());
        let e: Vec<u32> = s[0].as_slice().iter().chain(s[1].as_slice()).copied().collect();
        p.add_term(e, c / f);
    }
    p
}

/// A linear Poisson bracket on `r` fields in `N` space variables.
#[derive(Clone, Debug, PartialEq)]
pub struct PoissonBracketSpec {
    pub name: String,
    pub r: usize,
    pub n: usize,
    /// `Q_ij^k(λ, ∂)` keyed by 0-based `(i, j, k)`
    pub q: BTreeMap<(usize, usize, usize), Poly>,
    /// constant parts `C_ij(λ)` of the bracket, the central terms
    pub central: BTreeMap<(usize, usize), Poly>,
    /// for the special algebra: `χ`, with the bracket table that of the ambient general algebra
    pub special_chi: Option<Vec<Q>>,
}

impl PoissonBracketSpec {
    pub fn new(name: impl Into<String>, r: usize, n: usize) -> Self {
        PoissonBracketSpec { name: name.into(), r, n, q: BTreeMap::new(), central: BTreeMap::new(), special_chi: None }
    }

    pub fn entry(&self, i: usize, j: usize, k: usize) -> Poly {
        self.q.get(&(i, j, k)).cloned().unwrap_or_else(|| Poly::zero(2 * self.n))
    }

    pub fn add(&mut self, i: usize, j: usize, k: usize, p: &Poly) {
        let v = self.entry(i, j, k).add(p);
        if v.is_zero() {
            self.q.remove(&(i, j, k));
        } else {
            self.q.insert((i, j, k), v);
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.r == 0 {
            return Err(Error::Input("r and N must be positive".into()));
        }
        for (&(i, j, k), p) in &self.q {
            if i >= self.r || j >= self.r || k >= self.r {
                return Err(Error::Input(format!("index ({},{},{}) exceeds r = {}", i + 1, j + 1, k + 1, self.r)));
            }
            if p.nvars() != 2 * self.n {
                return Err(Error::Input("polynomials must have 2N variables".into()));
            }
        }
        for (&(i, j), p) in &self.central {
            if i >= self.r || j >= self.r || p.nvars() != 2 * self.n {
                return Err(Error::Input(format!("central term ({},{}) is out of range", i + 1, j + 1)));
            }
            if p.terms().any(|(e, _)| e[self.n..].iter().any(|&k| k > 0)) {
                return Err(Error::Input("central terms depend on λ only".into()));
            }
        }
        if let Some(chi) = &self.special_chi {
            if chi.len() != self.n || self.r != self.n {
                return Err(Error::Input("the special algebra needs r = N and χ of length N".into()));
            }
        }
        Ok(())
    }

    fn field(&self, i: usize) -> String {
        if self.r == 1 {
            "u".into()
        } else {
            format!("u{}", i + 1)
        }
    }

    /// The λ-brackets `[u_i λ u_j] = Σ Q_ij^k(λ,∂) u_k (+ C_ij(λ))`, one line per pair.
    pub fn render(&self) -> String {
        let names = lambda_names(self.n);
        let mut lines = Vec::new();
        for i in 0..self.r {
            for j in 0..self.r {
                let mut parts: Vec<String> = (0..self.r)
                    .filter_map(|k| {
                        let p = self.entry(i, j, k);
                        (!p.is_zero()).then(|| format!("({}) {}", p.render(&names), self.field(k)))
                    })
                    .collect();
                if let Some(c) = self.central.get(&(i, j)) {
                    parts.push(c.render(&names));
                }
                if !parts.is_empty() {
                    lines.push(format!("[{}_λ {}] = {}", self.field(i), self.field(j), parts.join(" + ")));
                }
            }
        }
        if lines.is_empty() {
            "all brackets vanish".into()
        } else {
            lines.join("\n")
        }
    }
}

/// Terms `coeff · λ^lambda ∂^partial` of a file entry.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermJson {
    pub lambda: Vec<u32>,
    #[serde(default)]
    pub partial: Vec<u32>,
    #[serde(with = "serde_q")]
    pub coeff: Q,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EntryJson {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CentralJson {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<TermJson>,
}

/// The file format; field indices are 1-based.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PoissonFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub r: usize,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "Q")]
    pub q: Vec<EntryJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub central: Option<Vec<CentralJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_vec_q")]
    pub chi: Option<Vec<Q>>,
}

mod opt_vec_q {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Vec<Q>>, s: S) -> std::result::Result<S::Ok, S::Error> {
        match v {
            Some(v) => s.collect_seq(v.iter().map(fmt_q)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Vec<Q>>, D::Error> {
        let raw: Option<Vec<String>> = Option::deserialize(d)?;
        raw.map(|v| v.iter().map(|s| crate::rational::parse_q(s)).collect::<Result<Vec<Q>>>())
            .transpose()
            .map_err(serde::de::Error::custom)
    }
}

fn terms_to_poly(n: usize, terms: &[TermJson]) -> Result<Poly> {
    let mut p = Poly::zero(2 * n);
    for t in terms {
        let partial = if t.partial.is_empty() { vec![0; n] } else { t.partial.clone() };
        if t.lambda.len() != n || partial.len() != n {
            return Err(Error::Input(format!("exponent vectors must have length N = {n}")));
        }
        let mut e = t.lambda.clone();
        e.extend(partial);
        p.add_term(e, t.coeff.clone());
    }
    Ok(p)
}

fn poly_to_terms(n: usize, p: &Poly, with_partial: bool) -> Vec<TermJson> {
    p.terms()
        .map(|(e, c)| TermJson {
            lambda: e[..n].to_vec(),
            partial: if with_partial { e[n..].to_vec() } else { vec![] },
            coeff: c.clone(),
        })
        .collect()
}

impl PoissonBracketSpec {
    pub fn from_file(f: &PoissonFile) -> Result<Self> {
        let mut spec = PoissonBracketSpec::new(f.name.clone().unwrap_or_else(|| "poisson".into()), f.r, f.n);
        let idx = |i: usize| -> Result<usize> {
            if i == 0 || i > f.r {
                Err(Error::Input(format!("field index {i} outside 1..={}", f.r)))
            } else {
                Ok(i - 1)
            }
        };
        for e in &f.q {
            let p = terms_to_poly(f.n, &e.terms)?;
            spec.add(idx(e.i)?, idx(e.j)?, idx(e.k)?, &p);
        }
        for c in f.central.iter().flatten() {
            let p = terms_to_poly(f.n, &c.terms)?;
            let key = (idx(c.i)?, idx(c.j)?);
            let v = spec.central.get(&key).cloned().unwrap_or_else(|| Poly::zero(2 * f.n)).add(&p);
            spec.central.insert(key, v);
        }
        spec.central.retain(|_, p| !p.is_zero());
        spec.special_chi = f.chi.clone();
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_file(&self) -> PoissonFile {
        PoissonFile {
            name: Some(self.name.clone()),
            r: self.r,
            n: self.n,
            q: self
                .q
                .iter()
                .map(|(&(i, j, k), p)| EntryJson {
                    i: i + 1,
                    j: j + 1,
                    k: k + 1,
                    terms: poly_to_terms(self.n, p, true),
                })
                .collect(),
            central: (!self.central.is_empty()).then(|| {
                self.central
                    .iter()
                    .map(|(&(i, j), p)| CentralJson { i: i + 1, j: j + 1, terms: poly_to_terms(self.n, p, false) })
                    .collect()
            }),
            chi: self.special_chi.clone(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let f: PoissonFile = serde_json::from_str(text).map_err(|e| Error::Parse(format!("Poisson spec: {e}")))?;
        Self::from_file(&f)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("serializable")
    }
}

/// The pseudoalgebra of a spec, with the central terms as a candidate cocycle.
pub struct PseudoImage {
    pub structure: TableStructure,
    pub central: Option<CocycleTable>,
}

fn abelian_hopf(n: usize) -> Hopf {
    Hopf::new(crate::lie::catalog::abelian(n))
}

/// `[u_i*u_j] = Σ_k P_ij^k(∂⊗1, 1⊗∂) ⊗_H u_k`, and `β_ij = C_ij(-∂)` from the central terms.
pub fn poisson_to_pseudo(spec: &PoissonBracketSpec) -> Result<PseudoImage> {
    spec.validate()?;
    let hopf = abelian_hopf(spec.n);
    let mut entries: BTreeMap<(usize, usize), QE<usize>> = BTreeMap::new();
    for (&(i, j, k), qp) in &spec.q {
        let t = poly_to_tensor(&p_from_q(qp));
        let v = QE::from_tensor(&hopf, &t, &ModElem::gen(spec.n, k));
        let e = entries.entry((i, j)).or_insert_with(|| QE::zero(2));
        e.add_scaled(&v, &q(1));
    }
    let names = (0..spec.r).map(|i| spec.field(i)).collect();
    let structure =
        TableStructure::new(spec.name.clone(), hopf.clone(), Kind::Lie, names, entries.into_iter().collect())?;
    let central = if spec.central.is_empty() {
        None
    } else {
        let mut t = CocycleTable::new();
        for (&(i, j), c) in &spec.central {
            let beta = central_beta_of(&hopf, c);
            if i <= j {
                t.insert((i, j), beta);
            }
        }
        for (&(i, j), c) in &spec.central {
            if i > j {
                let expect = hopf.antipode(&t.get(&(j, i)).cloned().unwrap_or_default()).neg();
                if central_beta_of(&hopf, c) != expect {
                    return Err(Error::Input(format!(
                        "central terms ({},{}) and ({},{}) are not skew",
                        i + 1,
                        j + 1,
                        j + 1,
                        i + 1
                    )));
                }
            }
        }
        t.retain(|_, b| !b.is_zero());
        Some(t)
    };
    Ok(PseudoImage { structure, central })
}

/// `C(λ) ↦ C(-∂)` in the divided-power basis.
fn central_beta_of(hopf: &Hopf, c: &Poly) -> PbwElem {
    let n = hopf.dim();
    let mut b = PbwElem::zero();
    for (e, v) in c.terms() {
        let a = MultiIndex::from_slice(&e[..n]);
        let sign = if a.degree().is_multiple_of(2) { q(1) } else { q(-1) };
        b.add_term(a.clone(), v * sign * Q::from_integer(a.factorial()));
    }
    b
}

fn central_poly_of(n: usize, b: &PbwElem) -> Poly {
    let mut p = Poly::zero(2 * n);
    for (a, v) in b.terms() {
        let sign = if a.degree() % 2 == 0 { q(1) } else { q(-1) };
        let mut e = a.as_slice().to_vec();
        e.extend(vec![0; n]);
        p.add_term(e, v * sign / Q::from_integer(a.factorial()));
    }
    p
}

/// `Σ (h⊗1)Δ(c)` for each generator in the canonical form `Σ (h⊗1) ⊗_H c u_k`.
pub fn tensors_by_generator(hopf: &Hopf, x: &QE<usize>) -> BTreeMap<usize, Tensor> {
    let mut out: BTreeMap<usize, Tensor> = BTreeMap::new();
    for (k, c) in x.terms() {
        let left = Tensor::from_factors(&[PbwElem::mono(k.slots[0].clone(), c.clone()), hopf.one()]);
        let t = left.mul(hopf, &hopf.coproduct(&PbwElem::mono(k.coeff.clone(), q(1))));
        out.entry(k.gen).or_insert_with(|| Tensor::zero(2)).add_scaled(&t, &q(1));
    }
    out.retain(|_, t| !t.is_zero());
    out
}

/// The inverse of [`poisson_to_pseudo`] for pseudoalgebras over abelian `d`.
pub fn pseudo_to_poisson(p: &TableStructure, central: Option<&CocycleTable>) -> Result<PoissonBracketSpec> {
    let hopf = p.hopf();
    if !hopf.lie().is_abelian() {
        return Err(Error::Unsupported("the Poisson dictionary needs abelian d".into()));
    }
    if p.kind() != Kind::Lie {
        return Err(Error::Input("the Poisson dictionary applies to Lie pseudoalgebras".into()));
    }
    let n = hopf.dim();
    let r = p.rank();
    let mut spec = PoissonBracketSpec::new(p.name(), r, n);
    for i in 0..r {
        for j in 0..r {
            for (k, t) in tensors_by_generator(hopf, &p.entry(i, j)) {
                spec.add(i, j, k, &q_from_p(&tensor_to_poly(&t, n)));
            }
        }
    }
    if let Some(t) = central {
        for i in 0..r {
            for j in 0..r {
                let b = crate::cohomology::table_value(hopf, t, i, j);
                if !b.is_zero() {
                    spec.central.insert((i, j), central_poly_of(n, &b));
                }
            }
        }
    }
    Ok(spec)
}

/// Rescales generators, `u_i ↦ c_i u_i`: `[u_i*u_j]` becomes `c_i c_j / c_k` times the `u_k` part.
pub fn rescale_generators(p: &TableStructure, c: &[Q]) -> Result<TableStructure> {
    if c.len() != p.rank() || c.iter().any(|x| x.is_zero()) {
        return Err(Error::Input("one nonzero factor per generator is required".into()));
    }
    let h = p.hopf();
    let mut out = p.clone();
    for i in 0..p.rank() {
        for j in 0..p.rank() {
            let e = p.entry(i, j).map_module(h, |k| ModElem::gen(h.dim(), *k).scale(&(&c[i] * &c[j] / &c[*k])));
            out = out.with_entry(i, j, e);
        }
    }
    Ok(out)
}

/// The families of the catalog.
#[derive(Clone, Debug)]
pub enum PoissonFamily {
    /// `W_{r,N}`
    General { r: usize, n: usize },
    /// `S_{N,N,χ}` inside `W_{N,N}`
    Special { n: usize, chi: Vec<Q> },
    /// `H_{2s,N}`, optionally with the central cocycle `ψ_α`
    Hamiltonian { r: usize, n: usize, alpha: Option<Vec<Q>> },
    /// `Cur_N g`
    Current { n: usize, g: LieAlgebra },
    /// `W_{r,N} ⋉ Cur_N g` or `H_{2s,N} ⋉ Cur_N g`
    Semidirect { hamiltonian: bool, r: usize, n: usize, g: LieAlgebra },
}

fn lam(n: usize, i: usize) -> Poly {
    Poly::var(2 * n, i)
}

fn del(n: usize, i: usize) -> Poly {
    Poly::var(2 * n, n + i)
}

fn w_block(spec: &mut PoissonBracketSpec, r: usize, n: usize) {
    for i in 0..r {
        for j in 0..r {
            spec.add(i, j, j, &del(n, i).add(&lam(n, i)));
            spec.add(i, j, i, &lam(n, j));
        }
    }
}

fn h_poly(s: usize, n: usize) -> Poly {
    let mut p = Poly::zero(2 * n);
    for i in 0..s {
        p = p.add(&del(n, i).mul(&lam(n, i + s))).sub(&del(n, i + s).mul(&lam(n, i)));
    }
    p
}

/// `Q_ji(λ,∂) = -Q_ij(-λ-∂, ∂)`, the bracket forced by skew-symmetry.
pub fn skew_partner(qp: &Poly) -> Poly {
    let m = qp.nvars();
    let n = m / 2;
    let images: Vec<Poly> = (0..m)
        .map(|i| if i < n { Poly::var(m, i).add(&Poly::var(m, i + n)).scale(&q(-1)) } else { Poly::var(m, i) })
        .collect();
    qp.substitute(&images).scale(&q(-1))
}

fn require_simple(g: &LieAlgebra) -> Result<()> {
    let k = g.killing_matrix().to_vec();
    if g.dim() == 0 || crate::linalg::rank_of(&k) < k.len() {
        return Err(Error::Input(format!("{} is not semisimple (degenerate Killing form)", g.name())));
    }
    Ok(())
}

/// The brackets of Examples of linear Poisson algebras, with parameter checks.
pub fn poisson_catalog(family: &PoissonFamily) -> Result<PoissonBracketSpec> {
    match family {
        PoissonFamily::General { r, n } => {
            if *r == 0 || r > n {
                return Err(Error::Input("W_{r,N} needs 1 ≤ r ≤ N".into()));
            }
            let mut spec = PoissonBracketSpec::new(format!("W_{{{r},{n}}}"), *r, *n);
            w_block(&mut spec, *r, *n);
            Ok(spec)
        }
        PoissonFamily::Special { n, chi } => {
            if *n < 2 || chi.len() != *n {
                return Err(Error::Input("S_{N,N,χ} needs N ≥ 2 and χ of length N".into()));
            }
            let mut spec = PoissonBracketSpec::new(format!("S_{{{n},{n},χ}}"), *n, *n);
            w_block(&mut spec, *n, *n);
            spec.special_chi = Some(chi.clone());
            Ok(spec)
        }
        PoissonFamily::Hamiltonian { r, n, alpha } => {
            if *r < 2 || r % 2 != 0 || r > n {
                return Err(Error::Input("H_{2s,N} needs 2 ≤ 2s ≤ N".into()));
            }
            let mut spec = PoissonBracketSpec::new(format!("H_{{{r},{n}}}"), 1, *n);
            spec.add(0, 0, 0, &h_poly(r / 2, *n));
            if let Some(a) = alpha {
                if a.len() != *r {
                    return Err(Error::Input(format!("ψ_α needs α of length {r}")));
                }
                let mut c = Poly::zero(2 * n);
                for (i, ai) in a.iter().enumerate() {
                    c = c.add(&lam(*n, i).scale(ai));
                }
                if !c.is_zero() {
                    spec.central.insert((0, 0), c);
                }
                spec.name = format!("H_{{{r},{n}}} with ψ_α");
            }
            Ok(spec)
        }
        PoissonFamily::Current { n, g } => {
            require_simple(g)?;
            let m = g.dim();
            let mut spec = PoissonBracketSpec::new(format!("Cur_{n} {}", g.name()), m, *n);
            for i in 0..m {
                for j in 0..m {
                    for (k, c) in g.bracket(i, j) {
                        spec.add(i, j, *k, &Poly::constant(2 * n, c.clone()));
                    }
                }
            }
            Ok(spec)
        }
        PoissonFamily::Semidirect { hamiltonian, r, n, g } => {
            require_simple(g)?;
            let base = if *hamiltonian {
                poisson_catalog(&PoissonFamily::Hamiltonian { r: *r, n: *n, alpha: None })?
            } else {
                poisson_catalog(&PoissonFamily::General { r: *r, n: *n })?
            };
            let rb = base.r;
            let m = g.dim();
            let mut spec = PoissonBracketSpec::new(format!("{} + Cur_{n} {}", base.name, g.name()), rb + m, *n);
            spec.q = base.q.clone();
            for a in 0..m {
                for b in 0..m {
                    for (k, c) in g.bracket(a, b) {
                        spec.add(rb + a, rb + b, rb + k, &Poly::constant(2 * n, c.clone()));
                    }
                }
            }
            // {u_i(x), v(y)} = ∂_{y_i} v(y) δ + v(y) ∂_{y_i} δ, and through u = Σ ∂_i u_{i+s} - ∂_{i+s} u_i
            let action = if *hamiltonian {
                let s = r / 2;
                let mut p = Poly::zero(2 * n);
                for i in 0..s {
                    p = p.add(&lam(*n, i + s).mul(&del(*n, i))).sub(&lam(*n, i).mul(&del(*n, i + s)));
                }
                vec![p]
            } else {
                (0..*r).map(|i| del(*n, i).add(&lam(*n, i))).collect()
            };
            for (i, p) in action.iter().enumerate() {
                for a in 0..m {
                    spec.add(i, rb + a, rb + a, p);
                    spec.add(rb + a, i, rb + a, &skew_partner(p));
                }
            }
            Ok(spec)
        }
    }
}

/// Axioms of the pseudo image, the round trip, and (when present) the central terms as a
/// closed cocycle; for the special algebra also the generators `u_ij` inside the image.
pub fn verify_poisson(spec: &PoissonBracketSpec) -> Result<Report> {
    let img = poisson_to_pseudo(spec)?;
    let mut rep = Report::new(format!("Poisson bracket {}", spec.name));
    rep.merge(verify_axioms(&img.structure));
    let back = pseudo_to_poisson(&img.structure, img.central.as_ref())?;
    let same = back.q == spec.q && back.central == spec.central;
    rep.record("poisson-round-trip", same, || format!("round trip gives\n{}", back.render()));
    if let Some(beta) = &img.central {
        rep.merge(central_cocycle_report(&img.structure, beta)?);
    }
    if let Some(chi) = &spec.special_chi {
        let sd = Sd::new(img.structure.hopf().clone(), chi.clone())?;
        rep.merge(verify_axioms(&sd));
        let h = img.structure.hopf().clone();
        // e_ab = -u_ab with u_ab = (∂_a+χ_a)u_b - (∂_b+χ_b)u_a
        let image = |k: &PairKey| -> ModElem<usize> {
            let mut m = ModElem::with_coeff(&sd.shifted(k.1), k.0);
            m.add_scaled(&ModElem::with_coeff(&sd.shifted(k.0), k.1), &q(-1));
            m
        };
        rep.merge(verify_homomorphism(&sd, &img.structure, image));
        let _ = h;
    }
    Ok(rep)
}

/// `dγ = 0` for `γ = (β⊗1)⊗_H 1`, with a note on triviality.
pub fn central_cocycle_report<P: Pseudoalgebra>(p: &P, beta: &CocycleTable) -> Result<Report> {
    let mut rep = Report::new(format!("central cocycle of {}", p.name()));
    let gens = p.generators();
    let h = p.hopf();
    for (&(i, j), b) in beta {
        let ok = *b == h.antipode(b).neg() || i != j;
        rep.record("cocycle-skew", ok, || format!("β({i},{j}) = {}", b.render()));
    }
    let k = TrivialModule(p);
    let d = cochain_differential(&k, &central_cochain(h, &gens, beta))?;
    rep.record("cocycle-closed", cochain_is_zero(&k, &d), || format!("dγ has {} nonzero values", d.table().len()));
    if rep.passed() {
        rep.note(if is_trivial_cocycle(p, beta) { "the cocycle is trivial" } else { "the cocycle is not trivial" });
    }
    Ok(rep)
}

/// `Cur_N g` as a pseudoalgebra over `U(abelian N)`.
pub fn current_structure(n: usize, g: &LieAlgebra) -> Result<Current> {
    Current::new(abelian_hopf(n), g.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{make_rank1, Rank1Datum, Wd};
    use crate::lie::catalog::*;
    use crate::rational::qf;

    #[test]
    fn virasoro_substitution() {
        let mut qp = Poly::zero(2);
        qp.add_term(vec![0, 1], q(1));
        qp.add_term(vec![1, 0], q(2));
        let p = p_from_q(&qp);
        let mut expect = Poly::zero(2);
        expect.add_term(vec![0, 1], q(1));
        expect.add_term(vec![1, 0], q(-1));
        assert_eq!(p, expect);
        assert_eq!(q_from_p(&p), qp);
    }

    #[test]
    fn general_line_is_virasoro() {
        let spec = poisson_catalog(&PoissonFamily::General { r: 1, n: 1 }).unwrap();
        let img = poisson_to_pseudo(&spec).unwrap();
        let h = img.structure.hopf().clone();
        let expect = QE::from_factors(&h, &[h.one(), h.gen(0)], &ModElem::gen(1, 0usize)).sub(&QE::from_factors(
            &h,
            &[h.gen(0), h.one()],
            &ModElem::gen(1, 0usize),
        ));
        assert_eq!(img.structure.entry(0, 0), expect);
        let wd = TableStructure::from_structure(&Wd::new(h)).unwrap();
        let ell = rescale_generators(&wd, &[q(-1)]).unwrap();
        let back = pseudo_to_poisson(&ell, None).unwrap();
        assert_eq!(back.q, spec.q);
        assert_eq!(back.render(), "[u_λ u] = (2*λ1 + ∂1) u");
    }

    #[test]
    fn catalog_round_trips() {
        let fams = vec![
            PoissonFamily::General { r: 2, n: 2 },
            PoissonFamily::General { r: 1, n: 2 },
            PoissonFamily::Special { n: 3, chi: vec![q(0); 3] },
            PoissonFamily::Hamiltonian { r: 2, n: 2, alpha: Some(vec![q(1), qf(1, 2)]) },
            PoissonFamily::Current { n: 1, g: sl2() },
            PoissonFamily::Semidirect { hamiltonian: false, r: 1, n: 1, g: sl2() },
            PoissonFamily::Semidirect { hamiltonian: true, r: 2, n: 2, g: sl2() },
        ];
        for f in fams {
            let spec = poisson_catalog(&f).unwrap();
            let rep = verify_poisson(&spec).unwrap();
            assert!(rep.passed(), "{}", rep.render_text());
            let again = PoissonBracketSpec::from_json(&spec.to_json()).unwrap();
            assert_eq!(again, spec);
        }
    }

    #[test]
    fn hamiltonian_matches_rank1() {
        let spec = poisson_catalog(&PoissonFamily::Hamiltonian { r: 2, n: 2, alpha: None }).unwrap();
        let img = poisson_to_pseudo(&spec).unwrap();
        let r = vec![vec![q(0), q(1)], vec![q(-1), q(0)]];
        let h = img.structure.hopf().clone();
        let p = make_rank1(&h, &Rank1Datum::new(r, vec![q(0), q(0)]).unwrap()).unwrap();
        assert_eq!(img.structure.entry(0, 0), p.entry(0, 0));
    }

    #[test]
    fn psi_alpha_is_a_nontrivial_cocycle() {
        let spec = poisson_catalog(&PoissonFamily::Hamiltonian { r: 2, n: 2, alpha: Some(vec![q(2), q(-1)]) }).unwrap();
        let img = poisson_to_pseudo(&spec).unwrap();
        let beta = img.central.clone().unwrap();
        let rep = central_cocycle_report(&img.structure, &beta).unwrap();
        assert!(rep.passed());
        assert!(!is_trivial_cocycle(&img.structure, &beta));
    }

    #[test]
    fn perturbed_virasoro_fails() {
        let mut spec = PoissonBracketSpec::new("perturbed", 1, 1);
        spec.add(0, 0, 0, &del(1, 0).add(&lam(1, 0).scale(&q(3))));
        assert!(!verify_poisson(&spec).unwrap().passed());
    }

    #[test]
    fn parameter_errors() {
        assert!(poisson_catalog(&PoissonFamily::General { r: 3, n: 2 }).is_err());
        assert!(poisson_catalog(&PoissonFamily::Hamiltonian { r: 3, n: 4, alpha: None }).is_err());
        assert!(poisson_catalog(&PoissonFamily::Current { n: 1, g: abelian(2) }).is_err());
        let wd = TableStructure::from_structure(&Wd::new(Hopf::new(affine()))).unwrap();
        assert!(matches!(pseudo_to_poisson(&wd, None), Err(Error::Unsupported(_))));
    }

    #[test]
    fn zero_spec_is_abelian() {
        let spec = PoissonBracketSpec::new("zero", 2, 1);
        let img = poisson_to_pseudo(&spec).unwrap();
        assert!(img.structure.entry(0, 1).is_zero());
        assert_eq!(pseudo_to_poisson(&img.structure, None).unwrap().q, spec.q);
    }
}
