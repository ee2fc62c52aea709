//! Finite-dimensional Lie algebras given by structure constants.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{fmt_q, q, Q};

/// A Lie algebra `d` with basis `∂_1, ..., ∂_N` and brackets `[∂_i, ∂_j] = Σ c_ij^k ∂_k`.
///
/// The table is stored for all ordered pairs, so antisymmetry holds by construction.
/// Cheap to clone.
#[derive(Clone, Debug)]
pub struct LieAlgebra(Arc<LieInner>);

#[derive(Debug)]
struct LieInner {
    name: String,
    basis: Vec<String>,
    table: Vec<Vec<BTreeMap<usize, Q>>>,
    abelian: bool,
    tr_ad: Vec<Q>,
    killing: Vec<Vec<Q>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub failures: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }
}

impl LieAlgebra {
    /// `brackets` lists `(i, j, [(k, c_ij^k)])`; pairs not listed are zero.
    pub fn new(name: &str, basis: Vec<String>, brackets: &[(usize, usize, Vec<(usize, Q)>)]) -> Result<Self> {
        let n = basis.len();
        if n == 0 {
            return Err(Error::Input("Lie algebra must have dimension at least 1".into()));
        }
        let mut table = vec![vec![BTreeMap::new(); n]; n];
        let mut seen = vec![vec![false; n]; n];
        for (i, j, val) in brackets {
            let (i, j) = (*i, *j);
            if i >= n || j >= n || val.iter().any(|(k, _)| *k >= n) {
                return Err(Error::Input(format!("bracket index out of range in {name}")));
            }
            let mut v: BTreeMap<usize, Q> = BTreeMap::new();
            for (k, c) in val {
                *v.entry(*k).or_insert_with(Q::zero) += c;
            }
            v.retain(|_, c| !c.is_zero());
            if i == j {
                if !v.is_empty() {
                    return Err(Error::Input(format!("[x,x] must vanish ({})", basis[i])));
                }
                continue;
            }
            let neg: BTreeMap<usize, Q> = v.iter().map(|(k, c)| (*k, -c.clone())).collect();
            if seen[i][j] && table[i][j] != v {
                return Err(Error::Input(format!("inconsistent bracket entries for ({i},{j})")));
            }
            if seen[j][i] && table[j][i] != neg {
                return Err(Error::Input(format!("bracket entries for ({i},{j}) are not antisymmetric")));
            }
            table[i][j] = v;
            table[j][i] = neg;
            seen[i][j] = true;
            seen[j][i] = true;
        }
        let abelian = table.iter().all(|r| r.iter().all(|m| m.is_empty()));
        let ad = |i: usize| -> Vec<Vec<Q>> {
            // (ad ∂_i)_{k,j} = c_ij^k
            let mut m = vec![vec![Q::zero(); n]; n];
            for (j, col) in table[i].iter().enumerate() {
                for (k, c) in col {
                    m[*k][j] = c.clone();
                }
            }
            m
        };
        let ads: Vec<_> = (0..n).map(ad).collect();
        let tr_ad = ads.iter().map(|m| (0..n).fold(Q::zero(), |acc, k| acc + &m[k][k])).collect();
        let killing = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        let mut t = Q::zero();
                        for k in 0..n {
                            for l in 0..n {
                                t += &ads[a][k][l] * &ads[b][l][k];
                            }
                        }
                        t
                    })
                    .collect()
            })
            .collect();
        Ok(LieAlgebra(Arc::new(LieInner { name: name.to_string(), basis, table, abelian, tr_ad, killing })))
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn dim(&self) -> usize {
        self.0.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.0.basis
    }

    pub fn is_abelian(&self) -> bool {
        self.0.abelian
    }

    pub fn same_algebra(&self, other: &LieAlgebra) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.basis == other.0.basis && self.0.table == other.0.table)
    }

    /// `[∂_i, ∂_j]` as a sparse vector.
    pub fn bracket(&self, i: usize, j: usize) -> &BTreeMap<usize, Q> {
        &self.0.table[i][j]
    }

    pub fn bracket_vec(&self, u: &[Q], v: &[Q]) -> Vec<Q> {
        let n = self.dim();
        let mut out = vec![Q::zero(); n];
        for (i, ui) in u.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, vj) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                for (k, c) in self.bracket(i, j) {
                    out[*k] += ui * vj * c;
                }
            }
        }
        out
    }

    pub fn tr_ad(&self, i: usize) -> &Q {
        &self.0.tr_ad[i]
    }

    pub fn tr_ad_vec(&self) -> &[Q] {
        &self.0.tr_ad
    }

    /// Killing form `(∂_a | ∂_b) = tr(ad ∂_a ad ∂_b)`.
    pub fn killing(&self, a: usize, b: usize) -> &Q {
        &self.0.killing[a][b]
    }

    pub fn killing_matrix(&self) -> &[Vec<Q>] {
        &self.0.killing
    }

    pub fn unit(&self, i: usize) -> Vec<Q> {
        (0..self.dim()).map(|k| if k == i { q(1) } else { q(0) }).collect()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.basis.iter().position(|b| b == name)
    }

    /// Checks the Jacobi identity on all basis triples.
    pub fn validate(&self) -> ValidationReport {
        let n = self.dim();
        let mut failures = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    let (ea, eb, ec) = (self.unit(a), self.unit(b), self.unit(c));
                    let t1 = self.bracket_vec(&ea, &self.bracket_vec(&eb, &ec));
                    let t2 = self.bracket_vec(&eb, &self.bracket_vec(&ec, &ea));
                    let t3 = self.bracket_vec(&ec, &self.bracket_vec(&ea, &eb));
                    let sum: Vec<Q> = (0..n).map(|k| t1[k].clone() + &t2[k] + &t3[k]).collect();
                    if sum.iter().any(|x| !x.is_zero()) {
                        failures.push(format!(
                            "Jacobi fails on ({}, {}, {}): {}",
                            self.0.basis[a],
                            self.0.basis[b],
                            self.0.basis[c],
                            self.fmt_vec(&sum)
                        ));
                    }
                }
            }
        }
        ValidationReport { failures }
    }

    pub fn fmt_vec(&self, v: &[Q]) -> String {
        let terms: Vec<String> = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("{}{}", crate::rational::fmt_coeff_prefix(c), self.0.basis[i]))
            .collect();
        crate::rational::join_signed(terms)
    }

    /// Lie algebra spec file: `{name, dim, basis, brackets: [{x, y, value: {name: "p/q"}}]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: LieSpecFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("Lie algebra spec: {e}")))?;
        spec.build()
    }

    pub fn to_json(&self) -> String {
        let n = self.dim();
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let v = self.bracket(i, j);
                if v.is_empty() {
                    continue;
                }
                brackets.push(BracketEntry {
                    x: self.0.basis[i].clone(),
                    y: self.0.basis[j].clone(),
                    value: v.iter().map(|(k, c)| (self.0.basis[*k].clone(), fmt_q(c))).collect(),
                });
            }
        }
        let file = LieSpecFile { name: self.0.name.clone(), dim: n, basis: self.0.basis.clone(), brackets };
        serde_json::to_string_pretty(&file).expect("serializable")
    }
}

#[derive(Serialize, Deserialize)]
struct LieSpecFile {
    name: String,
    dim: usize,
    basis: Vec<String>,
    #[serde(default)]
    brackets: Vec<BracketEntry>,
}

#[derive(Serialize, Deserialize)]
struct BracketEntry {
    x: String,
    y: String,
    value: BTreeMap<String, String>,
}

impl LieSpecFile {
    fn build(self) -> Result<LieAlgebra> {
        if self.basis.len() != self.dim {
            return Err(Error::Input(format!("dim {} does not match {} basis names", self.dim, self.basis.len())));
        }
        let idx = |s: &str| {
            self.basis.iter().position(|b| b == s).ok_or_else(|| Error::Input(format!("unknown basis element {s:?}")))
        };
        let mut entries = Vec::new();
        for b in &self.brackets {
            let mut val = Vec::new();
            for (k, c) in &b.value {
                val.push((idx(k)?, crate::rational::parse_q(c)?));
            }
            entries.push((idx(&b.x)?, idx(&b.y)?, val));
        }
        LieAlgebra::new(&self.name, self.basis.clone(), &entries)
    }
}

/// The standard algebras used throughout the test suites.
pub mod catalog {
    use super::*;

    fn names(prefix: &str, n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("{prefix}{i}")).collect()
    }

    pub fn abelian(n: usize) -> LieAlgebra {
        LieAlgebra::new(&format!("abelian{n}"), names("d", n), &[]).expect("valid")
    }

    /// Two-dimensional `[a, b] = λ b`.
    pub fn affine_lambda(lambda: Q) -> LieAlgebra {
        LieAlgebra::new("aff", vec!["a".into(), "b".into()], &[(0, 1, vec![(1, lambda)])]).expect("valid")
    }

    /// Two-dimensional `[a, b] = b`.
    pub fn affine() -> LieAlgebra {
        affine_lambda(q(1))
    }

    /// Heisenberg algebra with basis `a_1..a_n, b_1..b_n, c` and `[a_i, b_i] = c`.
    pub fn heisenberg(n: usize) -> LieAlgebra {
        let mut basis = names("a", n);
        basis.extend(names("b", n));
        basis.push("c".into());
        let br: Vec<_> = (0..n).map(|i| (i, n + i, vec![(2 * n, q(1))])).collect();
        LieAlgebra::new(&format!("heis{}", 2 * n + 1), basis, &br).expect("valid")
    }

    /// `sl_2` with basis `e, f, h`.
    pub fn sl2() -> LieAlgebra {
        LieAlgebra::new(
            "sl2",
            vec!["e".into(), "f".into(), "h".into()],
            &[(0, 1, vec![(2, q(1))]), (2, 0, vec![(0, q(2))]), (2, 1, vec![(1, q(-2))])],
        )
        .expect("valid")
    }

    /// A table violating the Jacobi identity: `[d1,d2] = d3`, `[d2,d3] = d2`.
    pub fn broken3() -> LieAlgebra {
        LieAlgebra::new("broken3", names("d", 3), &[(0, 1, vec![(2, q(1))]), (1, 2, vec![(1, q(1))])])
            .expect("antisymmetric table")
    }

    /// The algebras on which the Hopf kernel is exercised.
    pub fn kernel_catalog() -> Vec<LieAlgebra> {
        vec![abelian(1), abelian(2), abelian(3), affine(), heisenberg(1), sl2()]
    }

    /// Resolves a catalog name such as `abelian2`, `dim1`, `aff`, `heis3`, `sl2`.
    pub fn by_name(name: &str) -> Result<LieAlgebra> {
        if let Some(n) = name.strip_prefix("abelian").or_else(|| name.strip_prefix("dim")) {
            let n: usize = n.parse().map_err(|_| Error::Input(format!("unknown algebra {name:?}")))?;
            if n == 0 {
                return Err(Error::Input("dimension must be positive".into()));
            }
            return Ok(abelian(n));
        }
        if let Some(n) = name.strip_prefix("heis") {
            let n: usize = n.parse().map_err(|_| Error::Input(format!("unknown algebra {name:?}")))?;
            if n < 3 || n.is_multiple_of(2) {
                return Err(Error::Input("Heisenberg dimension must be odd and at least 3".into()));
            }
            return Ok(heisenberg((n - 1) / 2));
        }
        match name {
            "aff" => Ok(affine()),
            "sl2" => Ok(sl2()),
            "broken3" => Ok(broken3()),
            _ => Err(Error::Input(format!("unknown algebra {name:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::catalog::*;
    use super::*;

    #[test]
    fn abelian_is_valid_with_zero_trace() {
        let d = abelian(2);
        assert!(d.validate().is_valid());
        assert!(d.tr_ad_vec().iter().all(|c| c.is_zero()));
    }

    #[test]
    fn affine_traces() {
        let d = affine();
        assert!(d.validate().is_valid());
        assert_eq!(d.tr_ad(0), &q(1));
        assert_eq!(d.tr_ad(1), &q(0));
    }

    fn brute_force_jacobi_fails(d: &LieAlgebra) -> bool {
        let n = d.dim();
        let mut bad = false;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let (ea, eb, ec) = (d.unit(a), d.unit(b), d.unit(c));
                    let t1 = d.bracket_vec(&ea, &d.bracket_vec(&eb, &ec));
                    let t2 = d.bracket_vec(&eb, &d.bracket_vec(&ec, &ea));
                    let t3 = d.bracket_vec(&ec, &d.bracket_vec(&ea, &eb));
                    bad |= (0..n).any(|k| !(t1[k].clone() + &t2[k] + &t3[k]).is_zero());
                }
            }
        }
        bad
    }

    #[test]
    fn broken_table_reports_jacobi() {
        let d = broken3();
        assert!(brute_force_jacobi_fails(&d));
        assert!(!d.validate().is_valid());
    }

    #[test]
    fn semidirect_table_is_a_lie_algebra() {
        // c_12^3 = c_13^2 = 1: ad d1 swaps d2, d3 on an abelian ideal
        let d = LieAlgebra::new(
            "swap",
            vec!["d1".into(), "d2".into(), "d3".into()],
            &[(0, 1, vec![(2, q(1))]), (0, 2, vec![(1, q(1))])],
        )
        .unwrap();
        assert!(!brute_force_jacobi_fails(&d));
        assert!(d.validate().is_valid());
    }

    #[test]
    fn sl2_killing_form() {
        let d = sl2();
        assert!(d.validate().is_valid());
        // (e|f) = 4, (h|h) = 8
        assert_eq!(d.killing(0, 1), &q(4));
        assert_eq!(d.killing(2, 2), &q(8));
        assert_eq!(d.killing(0, 0), &q(0));
    }

    #[test]
    fn json_roundtrip() {
        let d = heisenberg(1);
        let back = LieAlgebra::from_json(&d.to_json()).unwrap();
        assert!(back.same_algebra(&d));
        assert!(LieAlgebra::from_json(r#"{"name":"x","dim":2,"basis":["a"],"brackets":[]}"#).is_err());
    }
}
