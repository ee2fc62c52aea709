//! The dual algebra `X = H*` modulo `fil_D X`, and annihilation-algebra brackets.
//!
//! Series are stored in the dual basis `t_I` of `∂^(I)`, so `t_J t_K = t_(J+K)`.
//! Literals and rendering use divided powers `t^(I) = t_I / I!`.

use std::collections::BTreeMap;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::multiindex::MultiIndex;
use crate::pbw::{Hopf, PbwElem};
use crate::pseudo::{pseudobracket, random_pbw, Pseudoalgebra};
use crate::quotient::{GenKey, ModElem};
use crate::rational::{fmt_coeff_prefix, join_signed, q, Q};
use crate::report::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// An element of `X / fil_D X`: coefficients of `t_I` for `|I| ≤ D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    dim: usize,
    cutoff: u32,
    coeffs: BTreeMap<MultiIndex, Q>,
}

impl TruncatedSeries {
    pub fn zero(dim: usize, cutoff: u32) -> Self {
        TruncatedSeries { dim, cutoff, coeffs: BTreeMap::new() }
    }

    /// The counit `t_0`, the unit of `X`.
    pub fn one(dim: usize, cutoff: u32) -> Self {
        TruncatedSeries::monomial(MultiIndex::zero(dim), cutoff)
    }

    /// `t_I`.
    pub fn monomial(i: MultiIndex, cutoff: u32) -> Self {
        let mut s = TruncatedSeries::zero(i.len(), cutoff);
        s.add_term(i, q(1));
        s
    }

    /// `t^(I) = t_I / I!`.
    pub fn divided(i: MultiIndex, cutoff: u32) -> Self {
        let f = Q::from_integer(i.factorial());
        let mut s = TruncatedSeries::zero(i.len(), cutoff);
        s.add_term(i, q(1) / f);
        s
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    /// Adds `c t_I`; terms beyond the cutoff are dropped.
    pub fn add_term(&mut self, i: MultiIndex, c: Q) {
        if i.degree() > self.cutoff || c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(i.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&i);
        }
    }

    pub fn get(&self, i: &MultiIndex) -> Q {
        self.coeffs.get(i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Q)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Smallest `|I|` with a nonzero coefficient; the series lies in `fil_(order-1) X`.
    pub fn order(&self) -> Option<u32> {
        self.coeffs.keys().map(|i| i.degree()).min()
    }

    /// Forgets coefficients above `d`; errors if `d` exceeds the cutoff.
    pub fn truncate(&self, d: u32) -> Result<Self> {
        if d > self.cutoff {
            return Err(Error::Precision(format!("series known up to degree {}, {} requested", self.cutoff, d)));
        }
        let coeffs = self.coeffs.iter().filter(|(i, _)| i.degree() <= d).map(|(i, c)| (i.clone(), c.clone())).collect();
        Ok(TruncatedSeries { dim: self.dim, cutoff: d, coeffs })
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.truncate(self.cutoff.min(other.cutoff)).expect("within cutoff");
        for (i, c) in &other.coeffs {
            out.add_term(i.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = TruncatedSeries::zero(self.dim, self.cutoff);
        for (i, v) in &self.coeffs {
            out.add_term(i.clone(), v * c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&q(-1)))
    }

    /// The product in `X`, exact up to the smaller cutoff.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = TruncatedSeries::zero(self.dim, self.cutoff.min(other.cutoff));
        for (i, a) in &self.coeffs {
            for (j, b) in &other.coeffs {
                out.add_term(i.add(j), a * b);
            }
        }
        out
    }

    pub fn render(&self) -> String {
        let terms = self
            .coeffs
            .iter()
            .map(|(i, c)| {
                let c = c * Q::from_integer(i.factorial());
                if i.is_zero() {
                    crate::rational::fmt_q(&c)
                } else {
                    format!("{}t^{}", fmt_coeff_prefix(&c), i)
                }
            })
            .collect();
        format!("{} + O({})", join_signed(terms), self.cutoff + 1)
    }
}

fn h_degree(h: &PbwElem) -> u32 {
    h.degree().unwrap_or(0)
}

/// `hx` with `⟨hx, f⟩ = ⟨x, S(h)f⟩`, or `xh` with `⟨xh, f⟩ = ⟨x, f S(h)⟩`.
///
/// The result is exact up to `D - deg h`.
pub fn h_act_series(hopf: &Hopf, h: &PbwElem, x: &TruncatedSeries, side: Side) -> Result<TruncatedSeries> {
    let deg = h_degree(h);
    if deg > x.cutoff {
        return Err(Error::Precision(format!(
            "acting by an element of degree {deg} needs input cutoff at least {deg}, have {}",
            x.cutoff
        )));
    }
    let sh = hopf.antipode(h);
    let out_cut = x.cutoff - deg;
    let mut out = TruncatedSeries::zero(x.dim, out_cut);
    for j in MultiIndex::all_up_to(x.dim, out_cut) {
        let prod = match side {
            Side::Left => hopf.mul(&sh, &PbwElem::mono(j.clone(), q(1))),
            Side::Right => hopf.mul(&PbwElem::mono(j.clone(), q(1)), &sh),
        };
        let v: Q = prod.terms().map(|(i, c)| c * x.get(i)).sum();
        out.add_term(j, v);
    }
    Ok(out)
}

/// `⟨x, h⟩`; errors unless `x` is known up to `deg h`.
pub fn pair(x: &TruncatedSeries, h: &PbwElem) -> Result<Q> {
    let deg = h_degree(h);
    if deg > x.cutoff {
        return Err(Error::Precision(format!(
            "pairing with degree {deg} needs cutoff at least {deg}, have {}",
            x.cutoff
        )));
    }
    Ok(h.terms().map(|(i, c)| c * x.get(i)).sum())
}

/// An element `Σ c t_I ⊗_H e_g` of `(X / fil_D X) ⊗_H L` for free `L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnihilationElement<K: GenKey> {
    dim: usize,
    cutoff: u32,
    terms: BTreeMap<K, TruncatedSeries>,
}

impl<K: GenKey> AnnihilationElement<K> {
    pub fn zero(dim: usize, cutoff: u32) -> Self {
        AnnihilationElement { dim, cutoff, terms: BTreeMap::new() }
    }

    /// `x ⊗_H e_g`.
    pub fn single(x: TruncatedSeries, g: K) -> Self {
        let mut a = AnnihilationElement::zero(x.dim, x.cutoff);
        a.add_series(&x, g);
        a
    }

    /// `x ⊗_H m` for a module element `m = Σ c e_g`, using `x ⊗_H c e_g = xc ⊗_H e_g`.
    pub fn from_module(hopf: &Hopf, x: &TruncatedSeries, m: &ModElem<K>) -> Result<Self> {
        let mut out = AnnihilationElement::zero(x.dim, x.cutoff.saturating_sub(m.max_degree()));
        for g in m.generators() {
            let c = m.coeff_of(&g);
            out.add_series(&h_act_series(hopf, &c, x, Side::Right)?, g);
        }
        Ok(out)
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn component(&self, g: &K) -> TruncatedSeries {
        self.terms.get(g).cloned().unwrap_or_else(|| TruncatedSeries::zero(self.dim, self.cutoff))
    }

    pub fn components(&self) -> impl Iterator<Item = (&K, &TruncatedSeries)> {
        self.terms.iter()
    }

    /// Adds `x ⊗_H e_g`, lowering the cutoff to that of `x` if needed.
    pub fn add_series(&mut self, x: &TruncatedSeries, g: K) {
        if x.cutoff < self.cutoff {
            *self = self.truncate(x.cutoff).expect("lower cutoff");
        }
        let x = x.truncate(self.cutoff).expect("lower cutoff");
        let cur = self.component(&g);
        let sum = cur.add(&x);
        if sum.is_zero() {
            self.terms.remove(&g);
        } else {
            self.terms.insert(g, sum);
        }
    }

    pub fn truncate(&self, d: u32) -> Result<Self> {
        if d > self.cutoff {
            return Err(Error::Precision(format!("element known up to degree {}, {} requested", self.cutoff, d)));
        }
        let mut out = AnnihilationElement::zero(self.dim, d);
        for (g, x) in &self.terms {
            let t = x.truncate(d)?;
            if !t.is_zero() {
                out.terms.insert(g.clone(), t);
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (g, x) in &other.terms {
            out.add_series(x, g.clone());
        }
        if other.cutoff < out.cutoff {
            out = out.truncate(other.cutoff).expect("lower cutoff");
        }
        out
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = AnnihilationElement::zero(self.dim, self.cutoff);
        for (g, x) in &self.terms {
            out.add_series(&x.scale(c), g.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&q(-1)))
    }

    /// `h(x ⊗_H a) = hx ⊗_H a`.
    pub fn left_act(&self, hopf: &Hopf, h: &PbwElem) -> Result<Self> {
        let mut out = AnnihilationElement::zero(self.dim, self.cutoff.saturating_sub(h_degree(h)));
        if h_degree(h) > self.cutoff {
            return Err(Error::Precision(format!("acting by degree {} on cutoff {}", h_degree(h), self.cutoff)));
        }
        for (g, x) in &self.terms {
            out.add_series(&h_act_series(hopf, h, x, Side::Left)?, g.clone());
        }
        Ok(out)
    }

    pub fn render_with(&self, label: &dyn Fn(&K) -> String) -> String {
        if self.terms.is_empty() {
            return format!("0 + O({})", self.cutoff + 1);
        }
        let parts: Vec<String> = self.terms.iter().map(|(g, x)| format!("({}) ⊗ {}", x.render(), label(g))).collect();
        parts.join(" + ")
    }
}

/// Largest `deg h + deg c` over the canonical terms `(h ⊗ 1) ⊗_H c e_g` of generator brackets.
fn shift_of<P: Pseudoalgebra>(p: &P, a: &P::Key, b: &P::Key) -> u32 {
    p.product(a, b).terms().map(|(k, _)| k.slots[0].degree() + k.coeff.degree()).max().unwrap_or(0)
}

/// The constant `s` with `[fil_i A(L), fil_j A(L)] ⊂ fil_(i+j-s) A(L)` for the generators of `p`.
pub fn filtration_shift<P: Pseudoalgebra>(p: &P) -> u32 {
    let gens = p.generators();
    let mut s = 0;
    for a in &gens {
        for b in &gens {
            s = s.max(shift_of(p, a, b));
        }
    }
    s
}

/// `[x ⊗_H a, y ⊗_H b] = Σ (x f_i)(y g_i) ⊗_H e_i`, exact up to
/// `min(D_u, D_v) - s` where `s` bounds the degrees of the bracket coefficients.
pub fn annihilation_bracket<P: Pseudoalgebra>(
    p: &P,
    u: &AnnihilationElement<P::Key>,
    v: &AnnihilationElement<P::Key>,
) -> Result<AnnihilationElement<P::Key>> {
    let h = p.hopf();
    let base = u.cutoff.min(v.cutoff);
    let mut shift = 0;
    for a in u.terms.keys() {
        for b in v.terms.keys() {
            shift = shift.max(shift_of(p, a, b));
        }
    }
    if shift > base {
        return Err(Error::Precision(format!(
            "bracket coefficients of degree {shift} need input cutoff at least {shift}, have {base}"
        )));
    }
    let out_cut = base - shift;
    let mut out = AnnihilationElement::zero(u.dim, out_cut);
    for (a, x) in &u.terms {
        for (b, y) in &v.terms {
            for (k, c) in p.product(a, b).terms() {
                let f = PbwElem::mono(k.slots[0].clone(), c.clone());
                let xf = h_act_series(h, &f, x, Side::Right)?;
                let prod = xf.mul(y);
                let coeff = PbwElem::mono(k.coeff.clone(), q(1));
                let z = h_act_series(h, &coeff, &prod, Side::Right)?;
                out.add_series(&z.truncate(out_cut.min(z.cutoff))?, k.gen.clone());
            }
        }
    }
    out.truncate(out_cut)
}

/// Like [`annihilation_bracket`] but demands the result up to `target`, naming the
/// input cutoff required otherwise.
pub fn annihilation_bracket_to<P: Pseudoalgebra>(
    p: &P,
    u: &AnnihilationElement<P::Key>,
    v: &AnnihilationElement<P::Key>,
    target: u32,
) -> Result<AnnihilationElement<P::Key>> {
    let r = annihilation_bracket(p, u, v)?;
    if r.cutoff < target {
        let s = u.cutoff.min(v.cutoff) - r.cutoff;
        return Err(Error::Precision(format!(
            "result known up to degree {}; input cutoff {} is required for degree {target}",
            r.cutoff,
            target + s
        )));
    }
    r.truncate(target)
}

/// `[x⊗a, y⊗b] = xy⊗[a,b] - x(ya)⊗b + (xb)y⊗a` on `X ⊗ d`, with `ya` the right action.
pub fn vector_field_bracket(
    hopf: &Hopf,
    u: &AnnihilationElement<usize>,
    v: &AnnihilationElement<usize>,
) -> Result<AnnihilationElement<usize>> {
    let lie = hopf.lie();
    let base = u.cutoff.min(v.cutoff);
    if base == 0 && !(u.is_zero() || v.is_zero()) {
        return Err(Error::Precision("vector field brackets need input cutoff at least 1".into()));
    }
    let out_cut = base.saturating_sub(1);
    let mut out = AnnihilationElement::zero(u.dim, out_cut);
    for (a, x) in &u.terms {
        for (b, y) in &v.terms {
            let xy = x.mul(y);
            for (k, c) in lie.bracket(*a, *b) {
                out.add_series(&xy.truncate(out_cut)?.scale(c), *k);
            }
            let ya = h_act_series(hopf, &hopf.gen(*a), y, Side::Right)?;
            out.add_series(&x.mul(&ya).scale(&q(-1)), *b);
            let xb = h_act_series(hopf, &hopf.gen(*b), x, Side::Right)?;
            out.add_series(&xb.mul(y), *a);
        }
    }
    out.truncate(out_cut)
}

/// `[a_x b] = Σ ⟨S(x), f_i g_i(-1)⟩ g_i(2) e_i`; on the canonical form this is
/// `Σ ⟨x, S(h)⟩ c e_g` over the terms `(h ⊗ 1) ⊗_H c e_g` of `[a*b]`.
pub fn x_bracket<P: Pseudoalgebra>(
    p: &P,
    a: &ModElem<P::Key>,
    x: &TruncatedSeries,
    b: &ModElem<P::Key>,
) -> Result<ModElem<P::Key>> {
    let h = p.hopf();
    let br = pseudobracket(p, a, b);
    let mut out = ModElem::zero();
    for (k, c) in br.terms() {
        let sh = h.antipode(&PbwElem::mono(k.slots[0].clone(), q(1)));
        let v = pair(x, &sh)?;
        if !v.is_zero() {
            out.add_term(k.coeff.clone(), k.gen.clone(), v * c);
        }
    }
    Ok(out)
}

/// `[a_x, b_y] - Σ_I [a_(t_I) b]_((x S(∂^(I))) y)` for generators `a, b`.
pub fn axby_residual<P: Pseudoalgebra>(
    p: &P,
    a: &P::Key,
    x: &TruncatedSeries,
    b: &P::Key,
    y: &TruncatedSeries,
) -> Result<AnnihilationElement<P::Key>> {
    let h = p.hopf();
    let n = h.dim();
    let lhs = annihilation_bracket(
        p,
        &AnnihilationElement::single(x.clone(), a.clone()),
        &AnnihilationElement::single(y.clone(), b.clone()),
    )?;
    let s = shift_of(p, a, b);
    let (ga, gb) = (ModElem::gen(n, a.clone()), ModElem::gen(n, b.clone()));
    let mut rhs = AnnihilationElement::zero(n, lhs.cutoff);
    for i in MultiIndex::all_up_to(n, s) {
        let ti = TruncatedSeries::monomial(i.clone(), s);
        let c = x_bracket(p, &ga, &ti, &gb)?;
        if c.is_zero() {
            continue;
        }
        let shi = h.antipode(&PbwElem::mono(i, q(1)));
        let z = h_act_series(h, &shi, x, Side::Right)?.mul(y);
        rhs = rhs.add(&AnnihilationElement::from_module(h, &z, &c)?);
    }
    let d = lhs.cutoff.min(rhs.cutoff);
    Ok(lhs.truncate(d)?.sub(&rhs.truncate(d)?))
}

/// `h[u,v] - Σ [h_(1)u, h_(2)v]`.
pub fn h_compatibility_residual<P: Pseudoalgebra>(
    p: &P,
    h: &PbwElem,
    u: &AnnihilationElement<P::Key>,
    v: &AnnihilationElement<P::Key>,
) -> Result<AnnihilationElement<P::Key>> {
    let hopf = p.hopf();
    let lhs = annihilation_bracket(p, u, v)?.left_act(hopf, h)?;
    let mut rhs: Option<AnnihilationElement<P::Key>> = None;
    for (s, c) in hopf.coproduct(h).terms() {
        let h1 = PbwElem::mono(s[0].clone(), c.clone());
        let h2 = PbwElem::mono(s[1].clone(), q(1));
        let t = annihilation_bracket(p, &u.left_act(hopf, &h1)?, &v.left_act(hopf, &h2)?)?;
        rhs = Some(match rhs {
            None => t,
            Some(r) => r.add(&t),
        });
    }
    let rhs = rhs.unwrap_or_else(|| AnnihilationElement::zero(u.dim, lhs.cutoff));
    let d = lhs.cutoff.min(rhs.cutoff);
    Ok(lhs.truncate(d)?.sub(&rhs.truncate(d)?))
}

/// A random series with small coefficients on degrees `≤ deg`.
pub fn random_series(rng: &mut impl Rng, dim: usize, deg: u32, cutoff: u32) -> TruncatedSeries {
    let monos = MultiIndex::all_up_to(dim, deg.min(cutoff));
    let mut s = TruncatedSeries::zero(dim, cutoff);
    for _ in 0..3 {
        let i = monos[rng.gen_range(0..monos.len())].clone();
        s.add_term(i, q(rng.gen_range(-3i64..=3)));
    }
    s
}

/// For `W(d)`: compares the annihilation bracket with vector-field brackets on all pairs
/// `t_I ⊗_H e_a`, `|I| ≤ D`, then checks the `x`-bracket expansion and `H`-compatibility
/// on `samples` random inputs.
pub fn verify_annihilation_wd(wd: &crate::constructions::Wd, cutoff: u32, seed: u64, samples: usize) -> Report {
    let h = wd.hopf();
    let n = h.dim();
    let mut rep = Report::new(format!("annihilation algebra of {} at cutoff {cutoff}", wd.name()));
    let basis: Vec<AnnihilationElement<usize>> = MultiIndex::all_up_to(n, cutoff)
        .into_iter()
        .flat_map(|i| (0..n).map(move |a| (i.clone(), a)))
        .map(|(i, a)| AnnihilationElement::single(TruncatedSeries::monomial(i, cutoff), a))
        .collect();
    for u in &basis {
        for v in &basis {
            let outcome = annihilation_bracket(wd, u, v)
                .and_then(|l| vector_field_bracket(h, u, v).map(|r| (l, r)))
                .map(|(l, r)| {
                    let d = l.cutoff().min(r.cutoff());
                    l.truncate(d).expect("lower cutoff").sub(&r.truncate(d).expect("lower cutoff"))
                });
            let ok = matches!(&outcome, Ok(r) if r.is_zero());
            rep.record("annihilation-vector-fields", ok, || match &outcome {
                Ok(r) => format!("u={}, v={}: residual {}", render(u), render(v), render(r)),
                Err(e) => format!("u={}, v={}: {e}", render(u), render(v)),
            });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let x = random_series(&mut rng, n, cutoff, cutoff);
        let y = random_series(&mut rng, n, cutoff, cutoff);
        let r = axby_residual(wd, &a, &x, &b, &y);
        let ok = matches!(&r, Ok(z) if z.is_zero());
        rep.record("annihilation-x-brackets", ok, || {
            format!("a={}, x={}, b={}, y={}: {r:?}", a + 1, x.render(), b + 1, y.render())
        });
        let hh = random_pbw(&mut rng, n, 2, 2);
        let u = AnnihilationElement::single(x, a);
        let v = AnnihilationElement::single(y, b);
        let r = h_compatibility_residual(wd, &hh, &u, &v);
        let ok = matches!(&r, Ok(z) if z.is_zero());
        rep.record("annihilation-h-compatibility", ok, || {
            format!("h={}, u={}, v={}: {r:?}", hh.render(), render(&u), render(&v))
        });
    }
    rep
}

fn render(u: &AnnihilationElement<usize>) -> String {
    u.render_with(&|k| k.label())
}

/// Checks `(fil^m H)(fil_n X) ⊂ fil_(n-m) X` on `∂^(K)` and `t_I` for `|K| ≤ max_h`, `|I| ≤ max_x`.
pub fn verify_series_filtration(hopf: &Hopf, max_h: u32, max_x: u32) -> Report {
    let n = hopf.dim();
    let cutoff = max_h + max_x;
    let mut rep = Report::new(format!("series filtration over {}", hopf.lie().name()));
    for k in MultiIndex::all_up_to(n, max_h) {
        let hk = PbwElem::mono(k.clone(), q(1));
        for i in MultiIndex::all_up_to(n, max_x) {
            let x = TruncatedSeries::monomial(i.clone(), cutoff);
            for side in [Side::Left, Side::Right] {
                let y = h_act_series(hopf, &hk, &x, side).expect("cutoff covers degree");
                let ok = y.order().is_none_or(|o| o + k.degree() >= i.degree());
                rep.record("series-filtration", ok, || {
                    format!("∂^{k} acting on t_{i} ({side:?}) gives {}", y.render())
                });
            }
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{Current, Wd};
    use crate::lie::catalog::*;
    use crate::rational::qf;

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::from_slice(v)
    }

    #[test]
    fn derivative_of_divided_powers() {
        let h = Hopf::new(abelian(1));
        for m in 1..5 {
            let x = TruncatedSeries::divided(mi(&[m]), 8);
            let expect = TruncatedSeries::divided(mi(&[m - 1]), 7).scale(&q(-1));
            for side in [Side::Left, Side::Right] {
                assert_eq!(h_act_series(&h, &h.gen(0), &x, side).unwrap(), expect);
            }
        }
        let x = TruncatedSeries::divided(mi(&[3]), 5);
        assert_eq!(h_act_series(&h, &h.one(), &x, Side::Left).unwrap(), x);
    }

    #[test]
    fn precision_is_enforced() {
        let h = Hopf::new(abelian(1));
        let x = TruncatedSeries::one(1, 1);
        let h2 = h.mul(&h.gen(0), &h.gen(0));
        assert!(matches!(h_act_series(&h, &h2, &x, Side::Left), Err(Error::Precision(_))));
        let w = Wd::new(h.clone());
        let u = AnnihilationElement::single(TruncatedSeries::one(1, 3), 0usize);
        let err = annihilation_bracket_to(&w, &u, &u, 3).unwrap_err();
        assert!(err.to_string().contains("input cutoff 4"), "{err}");
    }

    #[test]
    fn wd_line_matches_vector_fields() {
        // [∂_t, (t²/2) ∂_t] = t ∂_t
        let h = Hopf::new(abelian(1));
        let w = Wd::new(h);
        let u = AnnihilationElement::single(TruncatedSeries::one(1, 6), 0usize);
        let v = AnnihilationElement::single(TruncatedSeries::divided(mi(&[2]), 6), 0usize);
        let r = annihilation_bracket(&w, &u, &v).unwrap();
        assert_eq!(r.cutoff(), 5);
        assert_eq!(r, AnnihilationElement::single(TruncatedSeries::divided(mi(&[1]), 5), 0usize));
    }

    #[test]
    fn current_brackets_have_constant_coefficients() {
        let h = Hopf::new(abelian(1));
        let cur = Current::new(h, sl2()).unwrap();
        let x = TruncatedSeries::divided(mi(&[2]), 4).add(&TruncatedSeries::one(1, 4));
        let y = TruncatedSeries::divided(mi(&[1]), 4);
        let r = annihilation_bracket(
            &cur,
            &AnnihilationElement::single(x.clone(), 0usize),
            &AnnihilationElement::single(y.clone(), 1usize),
        )
        .unwrap();
        // [e_x, f_y] = h_(xy)
        assert_eq!(r, AnnihilationElement::single(x.mul(&y), 2usize));
        assert!(annihilation_bracket(&cur, &AnnihilationElement::zero(1, 4), &AnnihilationElement::single(y, 1))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn x_brackets_on_the_line() {
        let h = Hopf::new(abelian(1));
        let w = Wd::new(h.clone());
        let e = ModElem::gen(1, 0usize);
        let t = TruncatedSeries::monomial(mi(&[1]), 3);
        assert_eq!(x_bracket(&w, &e, &t, &e).unwrap(), e.scale(&q(-2)));
        let one = TruncatedSeries::one(1, 3);
        assert_eq!(x_bracket(&w, &e, &one, &e).unwrap(), ModElem::with_coeff(&h.gen(0), 0usize).scale(&q(-1)));
        let shallow = TruncatedSeries::one(1, 0);
        assert!(x_bracket(&w, &e, &shallow, &e).is_err());
    }

    #[test]
    fn sesquilinearity_of_x_brackets() {
        let h = Hopf::new(affine());
        let w = Wd::new(h.clone());
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..5 {
            let hh = random_pbw(&mut rng, 2, 2, 2);
            let x = random_series(&mut rng, 2, 3, 6);
            let a = ModElem::gen(2, rng.gen_range(0..2usize));
            let b = ModElem::gen(2, rng.gen_range(0..2usize));
            let lhs = x_bracket(&w, &a.left_mul(&h, &hh), &x, &b).unwrap();
            let xh = h_act_series(&h, &hh, &x, Side::Right).unwrap();
            assert_eq!(lhs, x_bracket(&w, &a, &xh, &b).unwrap());
        }
    }

    #[test]
    fn locality_of_x_brackets() {
        let h = Hopf::new(heisenberg(1));
        let w = Wd::new(h.clone());
        let s = filtration_shift(&w);
        for i in MultiIndex::all_of_degree(3, s + 1) {
            let t = TruncatedSeries::monomial(i, s + 1);
            for a in 0..3 {
                for b in 0..3 {
                    assert!(x_bracket(&w, &ModElem::gen(3, a), &t, &ModElem::gen(3, b)).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn brackets_respect_the_filtration_shift() {
        let h = Hopf::new(affine());
        let w = Wd::new(h);
        let s = filtration_shift(&w);
        assert_eq!(s, 1);
        let d = 5;
        for i in MultiIndex::all_up_to(2, 3) {
            for j in MultiIndex::all_up_to(2, 3) {
                for a in 0..2 {
                    for b in 0..2 {
                        let u = AnnihilationElement::single(TruncatedSeries::monomial(i.clone(), d), a);
                        let v = AnnihilationElement::single(TruncatedSeries::monomial(j.clone(), d), b);
                        let r = annihilation_bracket(&w, &u, &v).unwrap();
                        for (_, x) in r.components() {
                            assert!(x.order().unwrap() + s >= i.degree() + j.degree());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn suites_pass() {
        for lie in [abelian(1), abelian(2)] {
            let w = Wd::new(Hopf::new(lie));
            let rep = verify_annihilation_wd(&w, 4, 5, 5);
            assert!(rep.passed(), "{}", rep.render_text());
        }
        let rep = verify_series_filtration(&Hopf::new(sl2()), 2, 2);
        assert!(rep.passed(), "{}", rep.render_text());
    }

    #[test]
    fn render_uses_divided_powers() {
        let x = TruncatedSeries::monomial(mi(&[2]), 3).add(&TruncatedSeries::one(1, 3).scale(&qf(1, 2)));
        assert_eq!(x.render(), "1/2 + 2*t^(2) + O(4)");
    }
}
