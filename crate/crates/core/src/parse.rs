//! Element literals.
//!
//! PBW: `2*d^(1,0) - 1/2 + d^(0,1)*d^(1,0)` (factors multiply in `U(d)`).
//! Tensors: factors joined by `#`, e.g. `d^(1)#1 - 1#d^(1)`.
//! Series: `t^(2,0) + 3*t^(0,1)` with `t^(I) = t_I / I!`.
//! Module elements: `d^(1) e_1 - 2 e_2`, or basis labels in place of `e_k`; `@` may separate
//! the coefficient from the generator. Forms: `d^(1) @ e*^(1,2)` (1-based indices).

use num_traits::Zero;

use crate::annihilation::TruncatedSeries;
use crate::error::{Error, Result};
use crate::multiindex::MultiIndex;
use crate::pbw::{Hopf, PbwElem};
use crate::pseudoforms::PseudoForm;
use crate::quotient::{GenKey, ModElem};
use crate::rational::{parse_q, q, Q};
use crate::tensor::Tensor;

struct Cursor<'a> {
    s: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Cursor { s, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.s[self.pos..]
    }

    fn skip_ws(&mut self) {
        let r = self.rest();
        self.pos += r.len() - r.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn eat_str(&mut self, t: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(t) {
            self.pos += t.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected {c:?}")))
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn error(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at position {} in {:?}", self.pos, self.s))
    }

    fn number(&mut self) -> Result<Q> {
        self.skip_ws();
        let r = self.rest();
        let mut end = r.find(|c: char| !c.is_ascii_digit()).unwrap_or(r.len());
        if end == 0 {
            return Err(self.error("expected a number"));
        }
        if r[end..].starts_with('/') {
            let tail = &r[end + 1..];
            let d = tail.find(|c: char| !c.is_ascii_digit()).unwrap_or(tail.len());
            if d == 0 {
                return Err(self.error("expected a denominator"));
            }
            end += 1 + d;
        }
        let v = parse_q(&r[..end])?;
        self.pos += end;
        Ok(v)
    }

    fn ints(&mut self) -> Result<Vec<u32>> {
        self.expect('(')?;
        let mut out = Vec::new();
        loop {
            self.skip_ws();
            let r = self.rest();
            let end = r.find(|c: char| !c.is_ascii_digit()).unwrap_or(r.len());
            if end == 0 {
                return Err(self.error("expected an exponent"));
            }
            out.push(r[..end].parse().map_err(|_| self.error("exponent too large"))?);
            self.pos += end;
            if self.eat(')') {
                return Ok(out);
            }
            self.expect(',')?;
        }
    }

    fn index(&mut self, n: usize) -> Result<MultiIndex> {
        let v = self.ints()?;
        if v.len() != n {
            return Err(self.error(&format!("multi-index needs {n} entries")));
        }
        Ok(MultiIndex::from_slice(&v))
    }

    fn starts_pbw_factor(&mut self) -> bool {
        match self.peek() {
            Some(c) if c.is_ascii_digit() || c == '(' => true,
            Some('d') => self.rest().starts_with("d^("),
            _ => false,
        }
    }
}

fn pbw_factor(c: &mut Cursor, h: &Hopf) -> Result<PbwElem> {
    if c.eat('(') {
        let v = pbw_sum(c, h)?;
        c.expect(')')?;
        Ok(v)
    } else if c.eat_str("d^") {
        Ok(PbwElem::mono(c.index(h.dim())?, q(1)))
    } else {
        Ok(PbwElem::scalar(h.dim(), c.number()?))
    }
}

fn pbw_product(c: &mut Cursor, h: &Hopf) -> Result<PbwElem> {
    let mut v = pbw_factor(c, h)?;
    loop {
        let save = c.pos;
        if !(c.eat('*') && c.starts_pbw_factor()) {
            c.pos = save;
            return Ok(v);
        }
        v = h.mul(&v, &pbw_factor(c, h)?);
    }
}

fn sign(c: &mut Cursor, first: bool) -> Result<Option<Q>> {
    if c.eat('+') {
        Ok(Some(q(1)))
    } else if c.eat('-') {
        Ok(Some(q(-1)))
    } else if first {
        Ok(Some(q(1)))
    } else {
        Ok(None)
    }
}

fn pbw_sum(c: &mut Cursor, h: &Hopf) -> Result<PbwElem> {
    let mut out = PbwElem::zero();
    let mut first = true;
    while let Some(s) = sign(c, first)? {
        out.add_scaled(&pbw_product(c, h)?, &s);
        first = false;
    }
    Ok(out)
}

fn finish<T>(mut c: Cursor, v: T) -> Result<T> {
    if c.at_end() {
        Ok(v)
    } else {
        Err(c.error("unexpected input"))
    }
}

pub fn parse_pbw(h: &Hopf, s: &str) -> Result<PbwElem> {
    let mut c = Cursor::new(s);
    let v = pbw_sum(&mut c, h)?;
    finish(c, v)
}

pub fn parse_tensor(h: &Hopf, s: &str) -> Result<Tensor> {
    let mut c = Cursor::new(s);
    let mut out: Option<Tensor> = None;
    let mut first = true;
    while let Some(sg) = sign(&mut c, first)? {
        let mut parts = vec![pbw_product(&mut c, h)?];
        while c.eat('#') {
            parts.push(pbw_product(&mut c, h)?);
        }
        let t = Tensor::from_factors(&parts).scale(&sg);
        match &mut out {
            None => out = Some(t),
            Some(o) if o.arity() == parts.len() => o.add_scaled(&t, &q(1)),
            Some(_) => return Err(c.error("tensor terms of different arity")),
        }
        first = false;
    }
    let t = out.ok_or_else(|| c.error("empty tensor"))?;
    finish(c, t)
}

pub fn parse_series(dim: usize, cutoff: u32, s: &str) -> Result<TruncatedSeries> {
    let mut c = Cursor::new(s);
    let mut out = TruncatedSeries::zero(dim, cutoff);
    let mut first = true;
    while let Some(sg) = sign(&mut c, first)? {
        first = false;
        let mut coeff = sg;
        let mut idx = MultiIndex::zero(dim);
        if c.eat_str("t^") {
            idx = c.index(dim)?;
        } else {
            coeff *= c.number()?;
            if c.eat('*') {
                if !c.eat_str("t^") {
                    return Err(c.error("expected t^(..)"));
                }
                idx = c.index(dim)?;
            }
        }
        if idx.degree() > cutoff {
            continue;
        }
        out = out.add(&TruncatedSeries::divided(idx, cutoff).scale(&coeff));
    }
    finish(c, out)
}

fn generator<K: Clone>(c: &mut Cursor, gens: &[(String, K)]) -> Result<K> {
    c.skip_ws();
    let r = c.rest();
    if let Some(tail) = r.strip_prefix("e_") {
        let end = tail.find(|ch: char| !ch.is_ascii_digit()).unwrap_or(tail.len());
        if end > 0 {
            let k: usize = tail[..end].parse().map_err(|_| c.error("bad generator index"))?;
            if k == 0 || k > gens.len() {
                return Err(c.error(&format!("generator index outside 1..={}", gens.len())));
            }
            c.pos += 2 + end;
            return Ok(gens[k - 1].1.clone());
        }
    }
    let end = r.find(|ch: char| !(ch.is_alphanumeric() || ch == '_')).unwrap_or(r.len());
    let word = &r[..end];
    match gens.iter().find(|(l, _)| l == word) {
        Some((_, k)) if end > 0 => {
            c.pos += end;
            Ok(k.clone())
        }
        _ => Err(c.error("expected a generator")),
    }
}

/// A module element over labelled generators; `e_k` refers to the `k`-th entry of `gens`.
pub fn parse_module<K: GenKey>(h: &Hopf, gens: &[(String, K)], s: &str) -> Result<ModElem<K>> {
    let mut c = Cursor::new(s);
    let mut out = ModElem::zero();
    let mut first = true;
    while let Some(sg) = sign(&mut c, first)? {
        first = false;
        let coeff = if c.starts_pbw_factor() {
            let v = pbw_product(&mut c, h)?;
            c.eat('@');
            c.eat('*');
            v
        } else {
            h.one()
        };
        let g = generator(&mut c, gens)?;
        out.add_scaled(&ModElem::with_coeff(&coeff, g), &sg);
    }
    finish(c, out)
}

/// `Σ x_i ⊗_H g_i` with series coefficients, e.g. `(t^(2) - t^(1)) e_1`.
pub fn parse_annihilation<K: GenKey>(
    dim: usize,
    cutoff: u32,
    gens: &[(String, K)],
    s: &str,
) -> Result<Vec<(TruncatedSeries, K)>> {
    let mut c = Cursor::new(s);
    let mut out = Vec::new();
    let mut first = true;
    while let Some(sg) = sign(&mut c, first)? {
        first = false;
        let x = if c.eat('(') {
            let start = c.pos;
            let mut depth = 1;
            for (i, ch) in c.rest().char_indices() {
                match ch {
                    '(' => depth += 1,
                    ')' => depth -= 1,
                    _ => {}
                }
                if depth == 0 {
                    c.pos = start + i;
                    break;
                }
            }
            if depth != 0 {
                return Err(c.error("unbalanced parentheses"));
            }
            let x = parse_series(dim, cutoff, &c.s[start..c.pos])?;
            c.pos += 1;
            x
        } else {
            let start = c.pos;
            let end = c.rest().find(|ch: char| ch == 'e' || ch == '@' || ch.is_whitespace()).unwrap_or(c.rest().len());
            c.pos += end;
            parse_series(dim, cutoff, &c.s[start..c.pos])?
        };
        c.eat('@');
        let g = generator(&mut c, gens)?;
        out.push((x.scale(&sg), g));
    }
    finish(c, out)
}

/// `h @ e*^(i1,...,ik)` terms with strictly increasing 1-based indices.
pub fn parse_form(h: &Hopf, s: &str) -> Result<PseudoForm> {
    let n = h.dim();
    let mut c = Cursor::new(s);
    let mut out: Option<PseudoForm> = None;
    let mut first = true;
    while let Some(sg) = sign(&mut c, first)? {
        first = false;
        let coeff = if c.starts_pbw_factor() {
            let v = pbw_product(&mut c, h)?;
            c.eat('@');
            v
        } else {
            h.one()
        };
        if !c.eat_str("e*^") {
            return Err(c.error("expected e*^(..)"));
        }
        let idx: Vec<usize> =
            if c.eat_str("()") { vec![] } else { c.ints()?.into_iter().map(|i| i as usize).collect() };
        if idx.iter().any(|&i| i == 0 || i > n) || idx.windows(2).any(|w| w[0] >= w[1]) {
            return Err(c.error(&format!("form indices must increase strictly within 1..={n}")));
        }
        let idx: Vec<usize> = idx.into_iter().map(|i| i - 1).collect();
        let w = out.get_or_insert_with(|| PseudoForm::zero(n, idx.len()));
        if w.degree() != idx.len() {
            return Err(c.error("form terms of different degree"));
        }
        w.add_term(&idx, coeff.scale(&sg))?;
    }
    let w = out.ok_or_else(|| c.error("empty form"))?;
    finish(c, w)
}

/// A comma-separated vector of rationals, e.g. `1,0,1/2`.
pub fn parse_vector(s: &str) -> Result<Vec<Q>> {
    if s.trim().is_empty() {
        return Ok(vec![]);
    }
    s.split(',').map(parse_q).collect()
}

pub fn is_zero_vector(v: &[Q]) -> bool {
    v.iter().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::catalog::*;
    use crate::rational::qf;

    #[test]
    fn pbw_literals() {
        let h = Hopf::new(abelian(2));
        let v = parse_pbw(&h, "2*d^(1,0) - 1/2 + d^(0,1)").unwrap();
        assert_eq!(v.render(), parse_pbw(&h, &v.render()).unwrap().render());
        assert_eq!(v.counit(), qf(-1, 2));
        // ∂^(1)∂^(1) = 2∂^(2)
        let w = parse_pbw(&h, "d^(1,0)*d^(1,0)").unwrap();
        assert_eq!(w, PbwElem::mono(MultiIndex::from_slice(&[2, 0]), q(2)));
        assert!(parse_pbw(&h, "d^(1)").is_err());
        assert!(parse_pbw(&h, "2*").is_err());
        let a = Hopf::new(affine());
        let c = parse_pbw(&a, "d^(0,1)*d^(1,0) - d^(1,0)*d^(0,1)").unwrap();
        assert_eq!(c, a.commutator(&a.gen(1), &a.gen(0)));
    }

    #[test]
    fn tensor_literals() {
        let h = Hopf::new(abelian(1));
        let t = parse_tensor(&h, "d^(1)#1 - 1#d^(1)").unwrap();
        assert_eq!(t, Tensor::from_factors(&[h.gen(0), h.one()]).sub(&Tensor::from_factors(&[h.one(), h.gen(0)])));
        assert!(parse_tensor(&h, "d^(1)#1 + 1").is_err());
        let s = parse_tensor(&h, "(d^(1) + 1)#2*d^(2)").unwrap();
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn series_literals() {
        let x = parse_series(1, 4, "t^(2) + 3*t^(0) - 1/2*t^(5)").unwrap();
        assert_eq!(
            x,
            TruncatedSeries::divided(MultiIndex::from_slice(&[2]), 4).add(&TruncatedSeries::one(1, 4).scale(&q(3)))
        );
    }

    #[test]
    fn module_and_form_literals() {
        let h = Hopf::new(abelian(2));
        let gens = vec![("a".to_string(), 0usize), ("b".to_string(), 1usize)];
        let m = parse_module(&h, &gens, "d^(1,0) e_1 - 2*b + a").unwrap();
        let mut expect = ModElem::with_coeff(&h.gen(0), 0usize);
        expect.add_scaled(&ModElem::gen(2, 1), &q(-2));
        expect.add_scaled(&ModElem::gen(2, 0), &q(1));
        assert_eq!(m, expect);
        assert!(parse_module(&h, &gens, "e_3").is_err());
        let w = parse_form(&h, "d^(1,0) @ e*^(1,2) - e*^(1,2)").unwrap();
        assert_eq!(w.degree(), 2);
        assert!(parse_form(&h, "e*^(2,1)").is_err());
        let u = parse_annihilation(2, 3, &gens, "(t^(1,0) + t^(0,2)) e_1 - t^(0,1) b").unwrap();
        assert_eq!(u.len(), 2);
    }
}
