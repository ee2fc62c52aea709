//! Named constructions: `cur:<g>[@<d>]`, `wd:<d>`, `sd:<d>[:<χ>]`, `h-type:<d>[:s=<vec>]`,
//! `k-type:<d>`, `gc:<n>[@<d>]`, `cend:<n>[@<d>]`, and rank-1 structures from a tensor `α`.

use serde_json::{json, Value};

use crate::annihilation::{annihilation_bracket, verify_annihilation_wd, x_bracket, AnnihilationElement};
use crate::cohomology::{
    rank1_datum_of, sd_cocycle_suite, solve_central_extensions, solve_central_extensions_rank1, CocycleSolution,
    CocycleTable, SdCocycleSuite,
};
use crate::constructions::{check_ybe, make_rank1, Cend, Current, Rank1Datum, Sd, Wd};
use crate::error::{Error, Result};
use crate::lie::{catalog::by_name, LieAlgebra};
use crate::parse::{parse_annihilation, parse_module, parse_series, parse_tensor, parse_vector};
use crate::pbw::Hopf;
use crate::pseudo::{
    pseudobracket, verify_axioms, verify_random_combinations, Commutator, Pseudoalgebra, TableStructure,
};
use crate::rational::{q, Q};
use crate::report::Report;

/// A constructed pseudoalgebra, one variant per generator type.
pub enum Structure {
    Cur(Current),
    Wd(Wd),
    Sd(Sd),
    Table(TableStructure),
    Cend(Cend),
    Gc(Commutator<Cend>),
}

macro_rules! dispatch {
    ($s:expr, $p:ident => $e:expr) => {
        match $s {
            Structure::Cur($p) => $e,
            Structure::Wd($p) => $e,
            Structure::Sd($p) => $e,
            Structure::Table($p) => $e,
            Structure::Cend($p) => $e,
            Structure::Gc($p) => $e,
        }
    };
}

/// Degree bound on the `H`-coefficients of the generators listed for `Cend_n` and `gc_n`.
const CEND_DEGREE: u32 = 1;

fn split_base(s: &str, default: &str) -> Result<(String, LieAlgebra)> {
    let (head, base) = s.split_once('@').unwrap_or((s, default));
    Ok((head.to_string(), by_name(base)?))
}

fn wedge_sum(n: usize, pairs: &[(usize, usize)]) -> Vec<Vec<Q>> {
    let mut r = vec![vec![q(0); n]; n];
    for &(i, j) in pairs {
        r[i][j] = q(1);
        r[j][i] = q(-1);
    }
    r
}

/// `r = Σ e_i ∧ e_(i+n)` on an even-dimensional `d`, with `s` given or zero.
fn h_type(lie: &LieAlgebra, s: Option<Vec<Q>>) -> Result<Rank1Datum> {
    let n = lie.dim();
    if !n.is_multiple_of(2) {
        return Err(Error::Input(format!("h-type needs even dimension, {} has {n}", lie.name())));
    }
    let pairs: Vec<_> = (0..n / 2).map(|i| (i, i + n / 2)).collect();
    let s = s.unwrap_or_else(|| vec![q(0); n]);
    if s.len() != n {
        return Err(Error::Input(format!("s needs {n} entries")));
    }
    Rank1Datum::new(wedge_sum(n, &pairs), s)
}

/// The contact data on odd Heisenberg algebras and on `sl2`.
fn k_type(lie: &LieAlgebra) -> Result<Rank1Datum> {
    let n = lie.dim();
    match lie.name() {
        "sl2" => {
            let mut s = vec![q(0); 3];
            s[lie.index_of("h").expect("sl2 basis")] = q(-1);
            let (e, f) = (lie.index_of("e").expect("sl2 basis"), lie.index_of("f").expect("sl2 basis"));
            Rank1Datum::new(wedge_sum(3, &[(e, f)]), s)
        }
        name if name.starts_with("heis") => {
            let k = (n - 1) / 2;
            let pairs: Vec<_> = (0..k).map(|i| (i, i + k)).collect();
            let mut s = vec![q(0); n];
            s[n - 1] = q(-1);
            Rank1Datum::new(wedge_sum(n, &pairs), s)
        }
        _ => Err(Error::Input(format!("no K-type datum known for {}", lie.name()))),
    }
}

fn checked_rank1(name: String, lie: LieAlgebra, datum: &Rank1Datum) -> Result<Structure> {
    let h = Hopf::new(lie);
    let rep = check_ybe(&h, datum);
    if !rep.passed() {
        return Err(Error::Validation(format!("the datum fails the Yang-Baxter conditions:\n{}", rep.render_text())));
    }
    Ok(Structure::Table(make_rank1(&h, datum)?.with_name(name)))
}

impl Structure {
    pub fn from_name(name: &str) -> Result<Structure> {
        let (kind, arg) = name
            .split_once(':')
            .ok_or_else(|| Error::Input(format!("structure names look like kind:argument, got {name:?}")))?;
        match kind {
            "cur" => {
                let (g, base) = split_base(arg, "abelian1")?;
                Ok(Structure::Cur(Current::new(Hopf::new(base), by_name(&g)?)?))
            }
            "wd" => Ok(Structure::Wd(Wd::new(Hopf::new(by_name(arg)?)))),
            "sd" => {
                let (alg, chi) = arg.split_once(':').unwrap_or((arg, ""));
                let lie = by_name(alg)?;
                let chi = if chi.is_empty() { vec![q(0); lie.dim()] } else { parse_vector(chi)? };
                Ok(Structure::Sd(Sd::new(Hopf::new(lie), chi)?))
            }
            "h-type" => {
                let (alg, rest) = arg.split_once(':').unwrap_or((arg, ""));
                let s = match rest.strip_prefix("s=") {
                    Some(v) => Some(parse_vector(v)?),
                    None if rest.is_empty() => None,
                    None => return Err(Error::Input(format!("expected s=<vector>, got {rest:?}"))),
                };
                let lie = by_name(alg)?;
                let datum = h_type(&lie, s)?;
                checked_rank1(format!("H({alg})"), lie, &datum)
            }
            "k-type" => {
                let lie = by_name(arg)?;
                let datum = k_type(&lie)?;
                checked_rank1(format!("K({arg})"), lie, &datum)
            }
            "gc" | "cend" => {
                let (n, base) = split_base(arg, "abelian1")?;
                let n: usize = n.parse().map_err(|_| Error::Input(format!("bad matrix size {n:?}")))?;
                let c = Cend::new(Hopf::new(base), n, CEND_DEGREE)?;
                Ok(if kind == "gc" { Structure::Gc(Commutator(c)) } else { Structure::Cend(c) })
            }
            _ => Err(Error::Input(format!("unknown structure kind {kind:?}"))),
        }
    }

    /// The rank-one structure `[e*e] = α ⊗_H e`; no identities are assumed.
    pub fn rank1(algebra: &str, alpha: &str) -> Result<Structure> {
        let h = Hopf::new(by_name(algebra)?);
        let a = parse_tensor(&h, alpha)?;
        if a.arity() != 2 {
            return Err(Error::Input("α must be a 2-tensor".into()));
        }
        Ok(Structure::Table(TableStructure::rank1(format!("rank-1 over U({algebra})"), h, &a)?))
    }

    pub fn name(&self) -> String {
        dispatch!(self, p => p.name())
    }

    pub fn hopf(&self) -> &Hopf {
        dispatch!(self, p => p.hopf())
    }

    pub fn generator_labels(&self) -> Vec<String> {
        dispatch!(self, p => p.generators().iter().map(|k| p.label(k)).collect())
    }

    /// Axioms on generators and on random combinations.
    pub fn verify(&self, seed: u64) -> Report {
        let mut rep = dispatch!(self, p => verify_axioms(p));
        let random = match self {
            Structure::Cend(_) | Structure::Gc(_) => None,
            _ => Some(dispatch!(self, p => verify_random_combinations(p, seed, 3, 1))),
        };
        if let Some(r) = random {
            rep.merge(r);
        }
        if let Structure::Sd(sd) = self {
            rep.merge(sd.verify_generators());
        }
        rep
    }

    /// `[a*b]` for literal elements.
    pub fn bracket(&self, a: &str, b: &str) -> Result<String> {
        dispatch!(self, p => {
            let gens = labelled(p);
            let x = parse_module(p.hopf(), &gens, a)?;
            let y = parse_module(p.hopf(), &gens, b)?;
            Ok(pseudobracket(p, &x, &y).render_with(&|k| p.label(k)))
        })
    }

    /// `[a_x b]` with `x` a series literal at the given cutoff.
    pub fn x_bracket(&self, a: &str, x: &str, b: &str, cutoff: u32) -> Result<String> {
        dispatch!(self, p => {
            let gens = labelled(p);
            let h = p.hopf();
            let x = parse_series(h.dim(), cutoff, x)?;
            let r = x_bracket(p, &parse_module(h, &gens, a)?, &x, &parse_module(h, &gens, b)?)?;
            Ok(r.render_with(&|k| p.label(k)))
        })
    }

    /// `[u, v]` in the annihilation algebra, inputs as series-coefficient literals.
    pub fn annihilate(&self, u: &str, v: &str, cutoff: u32) -> Result<String> {
        dispatch!(self, p => {
            let gens = labelled(p);
            let n = p.hopf().dim();
            let build = |s: &str| -> Result<_> {
                let mut out = AnnihilationElement::zero(n, cutoff);
                for (x, g) in parse_annihilation(n, cutoff, &gens, s)? {
                    out.add_series(&x, g);
                }
                Ok(out)
            };
            let r = annihilation_bracket(p, &build(u)?, &build(v)?)?;
            Ok(r.render_with(&|k| p.label(k)))
        })
    }

    /// For `W(d)`: the annihilation bracket against vector fields on all basis pairs.
    pub fn annihilation_suite(&self, cutoff: u32, seed: u64, samples: usize) -> Result<Report> {
        match self {
            Structure::Wd(wd) => Ok(verify_annihilation_wd(wd, cutoff, seed, samples)),
            _ => Err(Error::Unsupported("the vector-field comparison covers W(d) only".into())),
        }
    }

    /// The bracket table on generators, for free structures of finite rank.
    pub fn to_table(&self) -> Result<TableStructure> {
        match self {
            Structure::Table(t) => Ok(t.clone()),
            Structure::Wd(p) => TableStructure::from_structure(p),
            Structure::Cur(p) => TableStructure::from_structure(p),
            _ => Err(Error::Unsupported(format!("{} has no free bracket table", self.name()))),
        }
    }

    /// `[g_i * g_j]` for all pairs of generators.
    pub fn render_table(&self) -> String {
        dispatch!(self, p => {
            let gens = p.generators();
            let mut lines = Vec::new();
            for a in &gens {
                for b in &gens {
                    let v = p.product(a, b);
                    if !v.is_zero() {
                        lines.push(format!("[{} * {}] = {}", p.label(a), p.label(b), v.render_with(&|k| p.label(k))));
                    }
                }
            }
            lines.join("\n")
        })
    }

    pub fn central_extensions(&self, dmax: u32) -> Result<CentralOutcome> {
        match self {
            Structure::Table(t) if t.rank() == 1 && rank1_datum_of(t).is_ok() => {
                Ok(CentralOutcome::Solution(solve_central_extensions_rank1(t, dmax)?))
            }
            Structure::Table(t) => Ok(CentralOutcome::Solution(solve_central_extensions(t, dmax)?)),
            Structure::Wd(p) => Ok(CentralOutcome::Solution(solve_central_extensions(p, dmax)?)),
            Structure::Cur(p) => Ok(CentralOutcome::Solution(solve_central_extensions(p, dmax)?)),
            Structure::Sd(sd) => Ok(CentralOutcome::Sd(sd_cocycle_suite(sd, dmax)?)),
            Structure::Cend(_) | Structure::Gc(_) => {
                Err(Error::Unsupported("central extensions are computed for finite rank structures".into()))
            }
        }
    }
}

fn labelled<P: Pseudoalgebra>(p: &P) -> Vec<(String, P::Key)> {
    p.generators().into_iter().map(|k| (p.label(&k), k)).collect()
}

pub enum CentralOutcome {
    Solution(CocycleSolution),
    Sd(SdCocycleSuite),
}

fn render_tables(gens: &[String], ts: &[CocycleTable], render: impl Fn(&CocycleTable) -> String) -> Value {
    let _ = gens;
    Value::Array(ts.iter().map(|t| Value::String(render(t))).collect())
}

impl CentralOutcome {
    pub fn dimension(&self) -> usize {
        match self {
            CentralOutcome::Solution(s) => s.dimension,
            CentralOutcome::Sd(s) => s.dimension,
        }
    }

    /// Whether every check recorded along the way passed.
    pub fn passed(&self) -> bool {
        match self {
            CentralOutcome::Solution(_) => true,
            CentralOutcome::Sd(s) => s.report.passed(),
        }
    }

    pub fn render_text(&self) -> String {
        match self {
            CentralOutcome::Solution(s) => s.render_text(),
            CentralOutcome::Sd(s) => format!(
                "central extensions of S(d,0) (Dmax = {})\nsolutions: {}\ntrivial: {}\ndim H^2 = {}\n{}",
                s.dmax,
                s.solutions.len(),
                s.trivial.len(),
                s.dimension,
                s.report.render_text()
            ),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            CentralOutcome::Solution(s) => {
                let r = |t: &CocycleTable| s.render_table(t);
                json!({
                    "structure": s.structure,
                    "generators": s.generators,
                    "dmax": s.dmax,
                    "basis": render_tables(&s.generators, &s.basis, r),
                    "trivial": render_tables(&s.generators, &s.trivial, r),
                    "dimension": s.dimension,
                    "representatives": render_tables(&s.generators, &s.representatives, r),
                    "completeness": s.completeness.describe(),
                    "notes": s.notes,
                })
            }
            CentralOutcome::Sd(s) => json!({
                "dmax": s.dmax,
                "solutions": s.solutions.len(),
                "trivial": s.trivial.len(),
                "dimension": s.dimension,
                "report": s.report,
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_resolve() {
        for name in [
            "cur:sl2",
            "cur:sl2@abelian2",
            "wd:aff",
            "sd:abelian3",
            "sd:aff:2,0",
            "h-type:abelian2",
            "h-type:aff:s=0,1",
            "k-type:heis3",
            "k-type:sl2",
            "gc:1",
            "cend:2@abelian1",
        ] {
            assert!(Structure::from_name(name).is_ok(), "{name}");
        }
        for name in ["cur", "wd:nope", "h-type:abelian3", "k-type:abelian3", "h-type:aff:s=1,0", "gc:0", "sd:aff:0,1"] {
            assert!(Structure::from_name(name).is_err(), "{name}");
        }
    }

    #[test]
    fn verify_and_bracket() {
        let s = Structure::from_name("wd:dim1").unwrap();
        assert!(s.verify(7).passed());
        assert_eq!(
            s.bracket("e_1", "e_1").unwrap(),
            Structure::from_name("wd:dim1").unwrap().bracket("d1", "d1").unwrap()
        );
        let bad = Structure::rank1("dim1", "d^(1)#d^(1)").unwrap();
        let rep = bad.verify(7);
        assert!(rep.failed("skew-commutativity"));
    }

    #[test]
    fn virasoro_central_extension() {
        let s = Structure::from_name("wd:dim1").unwrap();
        let out = s.central_extensions(4).unwrap();
        assert_eq!(out.dimension(), 1);
        assert_eq!(out.to_json()["representatives"][0], "d^(3)");
    }
}
