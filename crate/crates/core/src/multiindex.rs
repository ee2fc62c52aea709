//! Multi-indices `I = (i_1, ..., i_N)` with graded lexicographic order.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use smallvec::SmallVec;

use crate::rational::factorial;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(SmallVec<[u32; 4]>);

impl MultiIndex {
    pub fn zero(n: usize) -> Self {
        MultiIndex(SmallVec::from_elem(0, n))
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut m = Self::zero(n);
        m.0[i] = 1;
        m
    }

    pub fn from_slice(v: &[u32]) -> Self {
        MultiIndex(SmallVec::from_slice(v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn set(&mut self, i: usize, v: u32) {
        self.0[i] = v;
    }

    pub fn add(&self, other: &Self) -> Self {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        let mut out = SmallVec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            out.push(a.checked_sub(*b)?);
        }
        Some(MultiIndex(out))
    }

    pub fn inc(&self, i: usize) -> Self {
        let mut m = self.clone();
        m.0[i] += 1;
        m
    }

    pub fn dec(&self, i: usize) -> Option<Self> {
        if self.0[i] == 0 {
            return None;
        }
        let mut m = self.clone();
        m.0[i] -= 1;
        Some(m)
    }

    /// `I! = i_1! ... i_N!`
    pub fn factorial(&self) -> BigInt {
        self.0.iter().fold(BigInt::one(), |acc, &x| acc * factorial(x))
    }

    /// Index of the last nonzero entry.
    pub fn last_nonzero(&self) -> Option<usize> {
        self.0.iter().rposition(|&x| x != 0)
    }

    /// All multi-indices `J <= self` componentwise.
    pub fn sub_indices(&self) -> Vec<MultiIndex> {
        let mut out = vec![MultiIndex(SmallVec::new())];
        for &bound in &self.0 {
            let mut next = Vec::with_capacity(out.len() * (bound as usize + 1));
            for prefix in &out {
                for v in 0..=bound {
                    let mut p = prefix.clone();
                    p.0.push(v);
                    next.push(p);
                }
            }
            out = next;
        }
        out
    }

    /// All ordered decompositions `self = J_1 + ... + J_parts`.
    pub fn compositions(&self, parts: usize) -> Vec<Vec<MultiIndex>> {
        assert!(parts >= 1);
        if parts == 1 {
            return vec![vec![self.clone()]];
        }
        let mut out = Vec::new();
        for j in self.sub_indices() {
            let rest = self.checked_sub(&j).expect("sub-index");
            for mut tail in rest.compositions(parts - 1) {
                let mut v = Vec::with_capacity(parts);
                v.push(j.clone());
                v.append(&mut tail);
                out.push(v);
            }
        }
        out
    }

    /// All multi-indices of length `n` with total degree at most `d`, in grlex order.
    pub fn all_up_to(n: usize, d: u32) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        for deg in 0..=d {
            out.extend(Self::all_of_degree(n, deg));
        }
        out
    }

    pub fn all_of_degree(n: usize, d: u32) -> Vec<MultiIndex> {
        fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
            if prefix.len() + 1 == n {
                prefix.push(d);
                out.push(MultiIndex::from_slice(prefix));
                prefix.pop();
                return;
            }
            for v in (0..=d).rev() {
                prefix.push(v);
                rec(n, d - v, prefix, out);
                prefix.pop();
            }
        }
        if n == 0 {
            return if d == 0 { vec![MultiIndex(SmallVec::new())] } else { vec![] };
        }
        let mut out = Vec::new();
        rec(n, d, &mut Vec::with_capacity(n), &mut out);
        out.sort();
        out
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grlex_order() {
        let a = MultiIndex::from_slice(&[2, 0]);
        let b = MultiIndex::from_slice(&[0, 3]);
        let c = MultiIndex::from_slice(&[1, 1]);
        assert!(a < b);
        assert!(c < a);
    }

    #[test]
    fn composition_count() {
        // compositions of (2,1) into 3 parts: C(4,2) * C(3,2) = 6 * 3
        let m = MultiIndex::from_slice(&[2, 1]);
        assert_eq!(m.compositions(3).len(), 18);
        for c in m.compositions(3) {
            let s = c.iter().fold(MultiIndex::zero(2), |acc, x| acc.add(x));
            assert_eq!(s, m);
        }
    }

    #[test]
    fn enumerate_degrees() {
        assert_eq!(MultiIndex::all_up_to(3, 2).len(), 10);
        assert_eq!(MultiIndex::all_of_degree(2, 3).len(), 4);
    }
}
