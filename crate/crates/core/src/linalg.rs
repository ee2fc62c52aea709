//! Exact linear algebra over the rationals.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::rational::Q;

pub type SparseRow = BTreeMap<usize, Q>;

/// Incrementally maintained reduced row echelon form of a homogeneous system.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    ncols: usize,
    rows: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, rows: BTreeMap::new() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces a row against the pivots.
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        let hits: Vec<usize> = row.keys().copied().filter(|c| self.rows.contains_key(c)).collect();
        for c in hits {
            let Some(f) = row.get(&c).cloned() else { continue };
            for (k, v) in &self.rows[&c] {
                let e = row.entry(*k).or_insert_with(Q::zero);
                *e -= &f * v;
                if e.is_zero() {
                    row.remove(k);
                }
            }
        }
        row
    }

    /// Adds a row; returns true when it increased the rank.
    pub fn add_row(&mut self, row: SparseRow) -> bool {
        let row: SparseRow = row.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        let mut row = self.reduce(row);
        let Some((&p, lead)) = row.iter().next() else { return false };
        let inv = Q::one() / lead;
        for v in row.values_mut() {
            *v *= &inv;
        }
        for other in self.rows.values_mut() {
            if let Some(f) = other.remove(&p) {
                for (k, v) in &row {
                    if *k == p {
                        continue;
                    }
                    let e = other.entry(*k).or_insert_with(Q::zero);
                    *e -= &f * v;
                    if e.is_zero() {
                        other.remove(k);
                    }
                }
            }
        }
        self.rows.insert(p, row);
        true
    }

    /// Rows in reduced echelon form, by pivot column.
    pub fn rows(&self) -> impl Iterator<Item = &SparseRow> {
        self.rows.values()
    }

    pub fn contains(&self, row: &SparseRow) -> bool {
        let row: SparseRow = row.iter().filter(|(_, v)| !v.is_zero()).map(|(k, v)| (*k, v.clone())).collect();
        self.reduce(row).is_empty()
    }

    /// Basis of the solution space of `row . x = 0` for all rows.
    pub fn nullspace(&self) -> Vec<Vec<Q>> {
        let mut out = Vec::new();
        for f in 0..self.ncols {
            if self.rows.contains_key(&f) {
                continue;
            }
            let mut v = vec![Q::zero(); self.ncols];
            v[f] = Q::one();
            for (p, row) in &self.rows {
                if let Some(c) = row.get(&f) {
                    v[*p] = -c.clone();
                }
            }
            out.push(v);
        }
        out
    }
}

pub fn dense_to_sparse(v: &[Q]) -> SparseRow {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect()
}

pub fn rank_of(vectors: &[Vec<Q>]) -> usize {
    let n = vectors.first().map_or(0, |v| v.len());
    let mut e = Echelon::new(n);
    for v in vectors {
        e.add_row(dense_to_sparse(v));
    }
    e.rank()
}

/// Inverse of a square matrix, `None` when singular.
pub fn inverse(m: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let inv = Q::one() / &a[col][col];
        for v in a[col].iter_mut() {
            *v *= &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(pivot_row.iter()) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Basis of the kernel of a dense matrix (solutions of `m x = 0`).
pub fn kernel(m: &[Vec<Q>], ncols: usize) -> Vec<Vec<Q>> {
    let mut e = Echelon::new(ncols);
    for row in m {
        e.add_row(dense_to_sparse(row));
    }
    e.nullspace()
}

pub fn mat_mul(a: &[Vec<Q>], b: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let m = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..m).map(|j| row.iter().zip(b.iter()).fold(Q::zero(), |acc, (x, brow)| acc + x * &brow[j])).collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn inverse_roundtrip() {
        let m = vec![vec![q(0), q(1)], vec![q(-1), q(0)]];
        let inv = inverse(&m).unwrap();
        assert_eq!(inv, vec![vec![q(0), q(-1)], vec![q(1), q(0)]]);
        assert!(inverse(&[vec![q(1), q(2)], vec![q(2), q(4)]]).is_none());
    }

    #[test]
    fn nullspace_of_small_system() {
        // x + y + z = 0, y - z = 0
        let ker = kernel(&[vec![q(1), q(1), q(1)], vec![q(0), q(1), q(-1)]], 3);
        assert_eq!(ker.len(), 1);
        let v = &ker[0];
        assert_eq!(v[0].clone() + &v[1] + &v[2], q(0));
        assert_eq!(v[1], v[2]);
    }

    #[test]
    fn incremental_rank() {
        let mut e = Echelon::new(3);
        assert!(e.add_row(dense_to_sparse(&[q(1), q(2), q(0)])));
        assert!(!e.add_row(dense_to_sparse(&[q(2), q(4), q(0)])));
        assert!(e.add_row(dense_to_sparse(&[q(0), q(0), q(5)])));
        assert_eq!(e.rank(), 2);
        assert!(e.contains(&dense_to_sparse(&[q(1), q(2), q(3)])));
    }
}
