//! Constant-coefficient exterior forms on `d` and the geometric data `(χ, ω)`, `θ`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::linalg;
use crate::rational::{fmt_coeff_prefix, join_signed, q, Q};

/// An element of `∧^n d*`, stored on strictly increasing index tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormElement {
    dim: usize,
    degree: usize,
    coeffs: BTreeMap<Vec<usize>, Q>,
}

/// Sorts `idx`, returning the sign of the sorting permutation, or `None` on a repeat.
pub fn sort_sign(idx: &[usize]) -> Option<(Vec<usize>, i32)> {
    let mut v = idx.to_vec();
    let mut sign = 1;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some((v, sign))
    }
}

/// All strictly increasing `k`-subsets of `0..n`.
pub fn increasing_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn det(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    if n == 0 {
        return Q::one();
    }
    let mut a = m.to_vec();
    let mut d = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else { return Q::zero() };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= &a[c][c];
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &a[c][c];
            let pivot = a[c].clone();
            for (x, y) in a[r].iter_mut().zip(pivot.iter()) {
                *x -= &f * y;
            }
        }
    }
    d
}

impl FormElement {
    pub fn zero(dim: usize, degree: usize) -> Self {
        FormElement { dim, degree, coeffs: BTreeMap::new() }
    }

    /// The dual basis form `e*^(idx)`.
    pub fn basic(dim: usize, idx: &[usize]) -> Result<Self> {
        let (sorted, sign) = sort_sign(idx).ok_or_else(|| Error::Input("repeated form index".into()))?;
        if sorted.iter().any(|&i| i >= dim) {
            return Err(Error::Input("form index out of range".into()));
        }
        let mut f = Self::zero(dim, idx.len());
        f.coeffs.insert(sorted, q(sign as i64));
        Ok(f)
    }

    /// A 1-form from its values on the basis.
    pub fn from_covector(v: &[Q]) -> Self {
        let mut f = Self::zero(v.len(), 1);
        for (i, c) in v.iter().enumerate() {
            f.add_term(vec![i], c.clone());
        }
        f
    }

    /// A 2-form from a skew matrix `ω_ij`.
    pub fn from_matrix(m: &[Vec<Q>]) -> Self {
        let n = m.len();
        let mut f = Self::zero(n, 2);
        for i in 0..n {
            for j in i + 1..n {
                f.add_term(vec![i, j], m[i][j].clone());
            }
        }
        f
    }

    pub fn to_matrix(&self) -> Vec<Vec<Q>> {
        assert_eq!(self.degree, 2);
        let n = self.dim;
        let mut m = vec![vec![Q::zero(); n]; n];
        for (k, c) in &self.coeffs {
            m[k[0]][k[1]] = c.clone();
            m[k[1]][k[0]] = -c.clone();
        }
        m
    }

    pub fn to_covector(&self) -> Vec<Q> {
        assert_eq!(self.degree, 1);
        (0..self.dim).map(|i| self.get(&[i])).collect()
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

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Q)> {
        self.coeffs.iter()
    }

    pub fn add_term(&mut self, idx: Vec<usize>, c: Q) {
        if c.is_zero() {
            return;
        }
        let Some((sorted, sign)) = sort_sign(&idx) else { return };
        let c = if sign < 0 { -c } else { c };
        let e = self.coeffs.entry(sorted.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&sorted);
        }
    }

    /// Value on `∂_{i_1} ∧ ... ∧ ∂_{i_n}` for arbitrary (unsorted) indices.
    pub fn get(&self, idx: &[usize]) -> Q {
        match sort_sign(idx) {
            None => Q::zero(),
            Some((s, sign)) => {
                let c = self.coeffs.get(&s).cloned().unwrap_or_else(Q::zero);
                if sign < 0 {
                    -c
                } else {
                    c
                }
            }
        }
    }

    /// Value on `v_1 ∧ ... ∧ v_n` for coordinate vectors.
    pub fn eval(&self, vectors: &[Vec<Q>]) -> Q {
        assert_eq!(vectors.len(), self.degree);
        let mut total = Q::zero();
        for (k, c) in &self.coeffs {
            let m: Vec<Vec<Q>> = vectors.iter().map(|v| k.iter().map(|&i| v[i].clone()).collect()).collect();
            total += c * det(&m);
        }
        total
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = Self::zero(self.dim, self.degree);
        for (k, v) in &self.coeffs {
            out.add_term(k.clone(), v * c);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree);
        let mut out = self.clone();
        for (k, v) in &other.coeffs {
            out.add_term(k.clone(), v.clone());
        }
        out
    }

    pub fn wedge(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.dim, self.degree + other.degree);
        for (a, ca) in &self.coeffs {
            for (b, cb) in &other.coeffs {
                let mut idx = a.clone();
                idx.extend_from_slice(b);
                out.add_term(idx, ca * cb);
            }
        }
        out
    }

    /// `ι_v w`, i.e. `(ι_v w)(x_1, ...) = w(v, x_1, ...)`.
    pub fn interior(&self, v: &[Q]) -> Result<Self> {
        if self.degree == 0 {
            return Err(Error::Input("cannot contract a 0-form".into()));
        }
        let mut out = Self::zero(self.dim, self.degree - 1);
        for idx in increasing_tuples(self.dim, self.degree - 1) {
            let mut c = Q::zero();
            for (i, vi) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                let mut full = vec![i];
                full.extend_from_slice(&idx);
                c += vi * self.get(&full);
            }
            out.add_term(idx, c);
        }
        Ok(out)
    }

    pub fn render(&self, lie: &LieAlgebra) -> String {
        let terms = self
            .coeffs
            .iter()
            .map(|(k, c)| {
                let names: Vec<String> = k.iter().map(|&i| format!("{}*", lie.basis()[i])).collect();
                let body = if names.is_empty() { "1".to_string() } else { names.join("^") };
                format!("{}{}", fmt_coeff_prefix(c), body)
            })
            .collect();
        join_signed(terms)
    }
}

/// Chevalley–Eilenberg differential with trivial coefficients:
/// `(dw)(x_0, ..., x_n) = Σ_{i<j} (-1)^{i+j} w([x_i, x_j], x_0, ..., x̂_i, ..., x̂_j, ...)`.
pub fn ce_differential(lie: &LieAlgebra, w: &FormElement) -> Result<FormElement> {
    let n = lie.dim();
    if w.dim != n {
        return Err(Error::Input("form and algebra dimensions differ".into()));
    }
    if w.degree + 1 > n {
        return Err(Error::Input(format!("degree {} form has no differential in dimension {n}", w.degree)));
    }
    let mut out = FormElement::zero(n, w.degree + 1);
    if w.degree == 0 {
        return Ok(out);
    }
    for idx in increasing_tuples(n, w.degree + 1) {
        let mut total = Q::zero();
        for i in 0..idx.len() {
            for j in i + 1..idx.len() {
                let rest: Vec<usize> =
                    idx.iter().enumerate().filter(|(k, _)| *k != i && *k != j).map(|(_, v)| *v).collect();
                let sign = if (i + j) % 2 == 0 { q(1) } else { q(-1) };
                for (k, c) in lie.bracket(idx[i], idx[j]) {
                    let mut full = vec![*k];
                    full.extend_from_slice(&rest);
                    total += &sign * c * w.get(&full);
                }
            }
        }
        out.add_term(idx, total);
    }
    Ok(out)
}

/// H-type data `(χ, ω)` or K-type data `θ`.
#[derive(Clone, Debug)]
pub enum GeometricDatum {
    HType { chi: FormElement, omega: FormElement },
    KType { theta: FormElement },
}

#[derive(Clone, Debug, Serialize)]
pub struct DatumReport {
    pub failures: Vec<String>,
    #[serde(skip)]
    pub r: Option<Vec<Vec<Q>>>,
    #[serde(skip)]
    pub s: Option<Vec<Q>>,
}

impl DatumReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks the defining identities of the datum and computes the associated `(r, s)`.
///
/// H-type: `dχ = 0`, `dω + χ∧ω = 0`, `ω` nondegenerate; `r` is the inverse matrix of `ω`
/// (`Σ r^{ij} ω_jk = δ_ik`) and `χ = ι_s ω`.
/// K-type: `θ ∧ (dθ)^{(N-1)/2} ≠ 0`; `s` is fixed by `θ(s) = -1`, `ι_s dθ = 0`, and `r` is
/// dual to `dθ` on `ker θ`.
pub fn validate_geometric_datum(lie: &LieAlgebra, datum: &GeometricDatum) -> DatumReport {
    let n = lie.dim();
    let mut failures = Vec::new();
    match datum {
        GeometricDatum::HType { chi, omega } => {
            if chi.degree() != 1 || omega.degree() != 2 || chi.dim() != n || omega.dim() != n {
                failures.push("shape: χ must be a 1-form and ω a 2-form on d".into());
                return DatumReport { failures, r: None, s: None };
            }
            if !n.is_multiple_of(2) {
                failures.push(format!("H-type data need even dimension, got {n}"));
            }
            let om = omega.to_matrix();
            let inv = linalg::inverse(&om);
            if inv.is_none() {
                failures.push("ω is degenerate".into());
            }
            match ce_differential(lie, chi) {
                Ok(dchi) if !dchi.is_zero() => failures.push(format!("dχ = 0 fails: dχ = {}", dchi.render(lie))),
                Err(e) => failures.push(e.to_string()),
                _ => {}
            }
            if n >= 3 {
                let lhs = ce_differential(lie, omega).expect("degree ok").add(&chi.wedge(omega));
                if !lhs.is_zero() {
                    failures.push(format!("dω + χ∧ω = 0 fails: {}", lhs.render(lie)));
                }
            }
            let (r, s) = match inv {
                Some(r) => {
                    // χ_j = Σ_i s^i ω_ij, so s = (ω^T)^{-1} χ
                    let omt: Vec<Vec<Q>> = (0..n).map(|i| (0..n).map(|j| om[j][i].clone()).collect()).collect();
                    let omt_inv = linalg::inverse(&omt).expect("transpose of invertible");
                    let chiv = chi.to_covector();
                    let s: Vec<Q> =
                        (0..n).map(|i| (0..n).fold(Q::zero(), |acc, j| acc + &omt_inv[i][j] * &chiv[j])).collect();
                    (Some(r), Some(s))
                }
                None => (None, None),
            };
            if failures.is_empty() {
                DatumReport { failures, r, s }
            } else {
                DatumReport { failures, r: None, s: None }
            }
        }
        GeometricDatum::KType { theta } => {
            if theta.degree() != 1 || theta.dim() != n {
                failures.push("shape: θ must be a 1-form on d".into());
                return DatumReport { failures, r: None, s: None };
            }
            if n.is_multiple_of(2) {
                failures.push(format!("K-type data need odd dimension, got {n}"));
                return DatumReport { failures, r: None, s: None };
            }
            let dtheta = ce_differential(lie, theta).expect("degree ok");
            let mut top = theta.clone();
            for _ in 0..(n - 1) / 2 {
                top = top.wedge(&dtheta);
            }
            if top.is_zero() {
                failures.push("θ ∧ (dθ)^((N-1)/2) = 0: not a contact form".into());
                return DatumReport { failures, r: None, s: None };
            }
            let om = dtheta.to_matrix();
            let th = theta.to_covector();
            // s spans ker(ω^T); normalise θ(s) = -1
            let omt: Vec<Vec<Q>> = (0..n).map(|i| (0..n).map(|j| om[j][i].clone()).collect()).collect();
            let ker = linalg::kernel(&omt, n);
            let s = ker.iter().find_map(|v| {
                let t = v.iter().zip(&th).fold(Q::zero(), |acc, (a, b)| acc + a * b);
                (!t.is_zero()).then(|| v.iter().map(|x| -x / &t).collect::<Vec<Q>>())
            });
            let Some(s) = s else {
                failures.push("no s with θ(s) = -1 and ι_s dθ = 0".into());
                return DatumReport { failures, r: None, s: None };
            };
            let d1 = linalg::kernel(std::slice::from_ref(&th), n);
            let gram: Vec<Vec<Q>> =
                d1.iter().map(|u| d1.iter().map(|v| dtheta.eval(&[u.clone(), v.clone()])).collect()).collect();
            let Some(rinv) = linalg::inverse(&gram) else {
                failures.push("dθ is degenerate on ker θ".into());
                return DatumReport { failures, r: None, s: None };
            };
            let mut r = vec![vec![Q::zero(); n]; n];
            for (a, u) in d1.iter().enumerate() {
                for (b, v) in d1.iter().enumerate() {
                    if rinv[a][b].is_zero() {
                        continue;
                    }
                    for k in 0..n {
                        for l in 0..n {
                            r[k][l] += &rinv[a][b] * &u[k] * &v[l];
                        }
                    }
                }
            }
            DatumReport { failures, r: Some(r), s: Some(s) }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::catalog::*;

    #[test]
    fn differential_examples() {
        let d = affine();
        let a = FormElement::basic(2, &[0]).unwrap();
        let b = FormElement::basic(2, &[1]).unwrap();
        assert!(ce_differential(&d, &a).unwrap().is_zero());
        assert_eq!(ce_differential(&d, &b).unwrap().get(&[0, 1]), q(-1));
        let h = heisenberg(1);
        let theta = FormElement::basic(3, &[2]).unwrap();
        assert_eq!(ce_differential(&h, &theta).unwrap().get(&[0, 1]), q(-1));
        let top = FormElement::basic(2, &[0, 1]).unwrap();
        assert!(ce_differential(&d, &top).is_err());
    }

    #[test]
    fn d_squared_vanishes_on_basis_forms() {
        for lie in kernel_catalog() {
            let n = lie.dim();
            for k in 1..n.saturating_sub(1) {
                for idx in increasing_tuples(n, k) {
                    let w = FormElement::basic(n, &idx).unwrap();
                    let dw = ce_differential(&lie, &w).unwrap();
                    assert!(ce_differential(&lie, &dw).unwrap().is_zero(), "{} {:?}", lie.name(), idx);
                }
            }
        }
    }

    #[test]
    fn abelian_h_type_datum() {
        let d = abelian(2);
        let omega = FormElement::basic(2, &[0, 1]).unwrap();
        let chi = FormElement::zero(2, 1);
        let rep = validate_geometric_datum(&d, &GeometricDatum::HType { chi, omega });
        assert!(rep.is_valid());
        assert_eq!(rep.r.unwrap(), vec![vec![q(0), q(-1)], vec![q(1), q(0)]]);
        assert!(rep.s.unwrap().iter().all(|c| c.is_zero()));
    }

    #[test]
    fn sl2_has_no_h_type_datum() {
        let d = sl2();
        // even a nondegenerate-looking choice fails: N = 3 is odd
        let omega = FormElement::basic(3, &[0, 1]).unwrap();
        let chi = FormElement::zero(3, 1);
        assert!(!validate_geometric_datum(&d, &GeometricDatum::HType { chi, omega }).is_valid());
    }

    #[test]
    fn heisenberg_contact_datum() {
        let d = heisenberg(1);
        let theta = FormElement::basic(3, &[2]).unwrap();
        let rep = validate_geometric_datum(&d, &GeometricDatum::KType { theta });
        assert!(rep.is_valid(), "{:?}", rep.failures);
        assert_eq!(rep.s.unwrap(), vec![q(0), q(0), q(-1)]);
        let r = rep.r.unwrap();
        assert_eq!(r[0][1], q(1));
        assert_eq!(r[1][0], q(-1));
        assert_eq!(r[2], vec![q(0), q(0), q(0)]);
    }

    #[test]
    fn wedge_and_eval_agree() {
        let a = FormElement::from_covector(&[q(1), q(2), q(0)]);
        let b = FormElement::from_covector(&[q(0), q(1), q(3)]);
        let w = a.wedge(&b);
        let u = vec![q(1), q(1), q(1)];
        let v = vec![q(0), q(2), q(-1)];
        let direct = a.eval(std::slice::from_ref(&u)) * b.eval(std::slice::from_ref(&v))
            - a.eval(std::slice::from_ref(&v)) * b.eval(std::slice::from_ref(&u));
        assert_eq!(w.eval(&[u, v]), direct);
    }
}
