//! Pass/fail reports for identity checks.

use std::fmt::Write as _;

use serde::Serialize;

/// Identities that checks refer to, with the formula they instantiate.
pub static IDENTITIES: &[(&str, &str)] = &[
    ("skew-commutativity", "[b*a] = -(σ12 ⊗_H id)[a*b]"),
    ("jacobi", "[a*[b*c]] - ((σ12 ⊗ id) ⊗_H id)[b*[a*c]] = [[a*b]*c]"),
    ("associativity", "a*(b*c) = (a*b)*c"),
    ("module-jacobi", "a*(b*m) - ((σ12 ⊗ id) ⊗_H id)(b*(a*m)) = [a*b]*m"),
    ("module-associativity", "a*(b*m) = (a*b)*m"),
    ("homomorphism", "φ([a*b]) = [φ(a)*φ(b)]"),
    ("action-compatibility", "(id ⊗_H ψ)(a*m) = φ(a)*ψ(m)"),
    ("rank1-skew", "α = -σ(α)"),
    ("rank1-jacobi", "(α⊗1)(Δ⊗id)(α) = (1⊗α)(id⊗Δ)(α) - (σ⊗id)((1⊗α)(id⊗Δ)(α))"),
    ("ybe-cartan", "[r, Δ(s)] = 0"),
    ("ybe-cyclic", "([r12, r13] + r12 s3) + cyclic = 0"),
    ("rank1-module", "(1⊗β)(id⊗Δ)(β) - (σ⊗id)((1⊗β)(id⊗Δ)(β)) = (α⊗1)(Δ⊗id)(β)"),
    ("divergence", "Div₂([α*β]) = (Div α ⊗ 1)σ(β) - (1 ⊗ Div β)α"),
    ("sd-membership", "Div^χ(α) = 0"),
    ("sd-closure", "[e_ab * e_cd] has all coefficients in S(d,χ)"),
    (
        "sd-bracket",
        "[e_ab*e_cd] = (a⊗d)e_bc + (b⊗c)e_ad - (a⊗c)e_bd - (b⊗d)e_ac + (a⊗1)e_b[c,d] - (b⊗1)e_a[c,d] \
         - (1⊗c)e_d[a,b] + (1⊗d)e_c[a,b] - (1⊗1)e_[a,b][c,d]",
    ),
    ("sd-relation", "a e_bc + b e_ca + c e_ab = e_[a,b]c + e_[b,c]a + e_[c,a]b"),
    ("sd-self-bracket", "[e_ab*e_ab] = (b⊗a - a⊗b) e_ab + (1⊗b - b⊗1) e_a[a,b] + (a⊗1 - 1⊗a) e_b[a,b]"),
    ("sd-express", "α = Σ f_ab e_ab"),
    ("embedding-divergence", "Div^φ(-r + 1⊗s) = 0, φ = ι_(x-s) ω"),
    ("involution", "ω² = id"),
    ("anti-involution", "ω(a)*ω(b) = (σ ⊗_H ω)(b*a)"),
    ("eigenspace-closure", "(id ⊗_H ω)[a*b] = -[a*b] when ω(a) = -a, ω(b) = -b"),
    ("form-d-squared", "d(d w) = 0"),
    ("cartan", "α*w = ((id⊗id)⊗_H d)(α*_ι w) + α*_ι(d w)"),
    ("d-commutes", "α*(d w) = ((id⊗id)⊗_H d)(α*w)"),
    ("contraction-anticommute", "α*_ι(β*_ι w) + ((σ⊗id)⊗_H id) β*_ι(α*_ι w) = 0"),
    ("volume-action", "(f⊗a)*v0 = -(f(a + tr ad a)⊗1 + f⊗a) ⊗_H v0"),
    ("wedge-derivation", "α*(v*w) = (α*v)*w + ((σ⊗id)⊗_H id) v*(α*w)"),
    ("wedge-contraction", "α*_ι(v*w) = (α*_ι v)*w + (-1)^m ((σ⊗id)⊗_H id) v*(α*_ι w)"),
    ("series-filtration", "(fil^m H)(fil_n X) ⊂ fil_(n-m) X"),
    ("annihilation-vector-fields", "[x⊗a, y⊗b] = xy⊗[a,b] - x(ya)⊗b + (xb)y⊗a"),
    ("annihilation-x-brackets", "[a_x, b_y] = Σ_i [a_(x_i) b]_((x S(h_i)) y)"),
    ("annihilation-h-compatibility", "h[u,v] = [h_(1)u, h_(2)v]"),
    ("cochain-d-squared", "d(dγ) = 0"),
    ("cocycle-skew", "β(a,b) = -S(β(b,a))"),
    ("cocycle-closed", "dγ = 0 for γ(a,b) = (β(a,b)⊗1) ⊗_H 1"),
    ("cocycle-relation", "Σ h_k β(g_k, b) = 0 whenever Σ h_k g_k = 0"),
    ("rank1-cocycle", "αΔ(β) = (β⊗1 + 1⊗β)α + β⊗(3s-x) - (3s-x)⊗β"),
    ("cur-cocycle", "β(a,[b,c])⊗1 - 1⊗β(b,[a,c]) = Δ(β([a,b],c))"),
    ("cocycle-nontrivial", "β ∉ span{τ_φ}"),
    ("sd-cocycle-symmetry", "β_ab,cd = -β_ba,cd = -β_ab,dc = -S(β_cd,ab)"),
    ("sd-cocycle-relation", "a β_bc,X + b β_ca,X + c β_ab,X = 0"),
    (
        "sd-cocycle-jacobi",
        "(b⊗a - a⊗b)(Δ(β_ab,ac) - β_ab,ac⊗1 - 1⊗β_ab,ac) = ab⊗β_ab,ac - β_ab,ac⊗ab + β_ab,bc⊗a² - a²⊗β_ab,bc \
         + β_ab,ab⊗ac - ac⊗β_ab,ab",
    ),
    ("sd-cocycle-trivial", "β_ab,cd = -ad φ_bc - bc φ_ad + ac φ_bd + bd φ_ac"),
    ("hopf-coassociativity", "(Δ⊗id)Δ = (id⊗Δ)Δ"),
    ("hopf-cocommutative", "σΔ = Δ"),
    ("hopf-antipode", "h_(-1) h_(2) = h_(1) h_(-2) = ε(h)"),
    ("hopf-counit-antipode", "h_(-1) h_(2) ⊗ h_(3) = 1 ⊗ h = h_(1) h_(-2) ⊗ h_(3)"),
    ("hopf-involutive", "S² = id"),
    ("hopf-multiplicative", "Δ(ab) = Δ(a)Δ(b)"),
    ("fourier-inverse", "F⁻¹F = id = FF⁻¹"),
    ("fourier-braid", "F12 F13 F23 = F23 F12"),
    ("poisson-substitution", "P(z,w) = Q(-z, z+w)"),
    ("poisson-round-trip", "pseudo_to_poisson(poisson_to_pseudo(Q)) = Q"),
    ("lie-jacobi", "[x,[y,z]] + [y,[z,x]] + [z,[x,y]] = 0"),
    ("datum", "dχ = 0, dω + χ∧ω = 0 / θ∧(dθ)^n ≠ 0"),
];

pub fn formula_of(identity: &str) -> &'static str {
    IDENTITIES.iter().find(|(n, _)| *n == identity).map(|(_, f)| *f).unwrap_or("")
}

const MAX_WITNESSES: usize = 5;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub identity: String,
    pub formula: String,
    pub cases: usize,
    pub failures: usize,
    pub witnesses: Vec<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub subject: String,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(subject: impl Into<String>) -> Self {
        Report { subject: subject.into(), checks: Vec::new(), notes: Vec::new() }
    }

    fn entry(&mut self, identity: &str) -> &mut Check {
        if let Some(i) = self.checks.iter().position(|c| c.identity == identity) {
            return &mut self.checks[i];
        }
        self.checks.push(Check {
            identity: identity.to_string(),
            formula: formula_of(identity).to_string(),
            cases: 0,
            failures: 0,
            witnesses: Vec::new(),
        });
        self.checks.last_mut().expect("just pushed")
    }

    /// Records one case; the witness is only rendered on failure.
    pub fn record(&mut self, identity: &str, ok: bool, witness: impl FnOnce() -> String) {
        let c = self.entry(identity);
        c.cases += 1;
        if !ok {
            c.failures += 1;
            if c.witnesses.len() < MAX_WITNESSES {
                c.witnesses.push(witness());
            }
        }
    }

    /// Records a batch of outcomes (`None` = pass, `Some(witness)` = failure).
    pub fn record_all(&mut self, identity: &str, outcomes: impl IntoIterator<Item = Option<String>>) {
        let c = self.entry(identity);
        for o in outcomes {
            c.cases += 1;
            if let Some(w) = o {
                c.failures += 1;
                if c.witnesses.len() < MAX_WITNESSES {
                    c.witnesses.push(w);
                }
            }
        }
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn merge(&mut self, other: Report) {
        for c in other.checks {
            let e = self.entry(&c.identity);
            e.cases += c.cases;
            e.failures += c.failures;
            for w in c.witnesses {
                if e.witnesses.len() < MAX_WITNESSES {
                    e.witnesses.push(w);
                }
            }
        }
        self.notes.extend(other.notes);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn check(&self, identity: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.identity == identity)
    }

    pub fn failed(&self, identity: &str) -> bool {
        self.check(identity).map(|c| !c.passed()).unwrap_or(false)
    }

    pub fn render_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{}: {}", self.subject, if self.passed() { "PASS" } else { "FAIL" });
        for c in &self.checks {
            let _ = writeln!(
                s,
                "  [{}] {} ({} cases, {} failed)  {}",
                if c.passed() { "ok" } else { "FAIL" },
                c.identity,
                c.cases,
                c.failures,
                c.formula
            );
            for w in &c.witnesses {
                let _ = writeln!(s, "      witness: {w}");
            }
        }
        for n in &self.notes {
            let _ = writeln!(s, "  note: {n}");
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_identity_name_is_unique() {
        let mut names: Vec<_> = IDENTITIES.iter().map(|(n, _)| *n).collect();
        names.sort();
        let before = names.len();
        names.dedup();
        assert_eq!(before, names.len());
    }

    #[test]
    fn failures_keep_a_bounded_number_of_witnesses() {
        let mut r = Report::new("t");
        for i in 0..20 {
            r.record("jacobi", i % 2 == 0, || format!("case {i}"));
        }
        let c = r.check("jacobi").unwrap();
        assert_eq!((c.cases, c.failures, c.witnesses.len()), (20, 10, 5));
        assert!(!r.passed());
        assert!(c.formula.contains("[[a*b]*c]"));
    }
}
