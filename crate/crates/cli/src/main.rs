//! `pseudoalg`: batch front end for the pseudoalgebra library.
//!
//! Exit status: 0 when every check passes, 1 when a mathematical check fails, 2 on bad input.

use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use pseudoalg::catalog::Structure;
use pseudoalg::lie::catalog::by_name;
use pseudoalg::parse::{parse_form, parse_pbw, parse_vector};
use pseudoalg::poisson::{
    poisson_catalog, poisson_to_pseudo, pseudo_to_poisson, verify_poisson, PoissonBracketSpec, PoissonFamily,
};
use pseudoalg::pseudoforms::{act_on_form, contract_form, pseudoform_differential, verify_pseudoforms};
use pseudoalg::report::Report;
use pseudoalg::{Error, Hopf, LieAlgebra};

#[derive(Parser)]
#[command(name = "pseudoalg", version, about = "Exact computations with Lie pseudoalgebras over U(d)")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// seed for randomized checks
    #[arg(long, default_value_t = 1, global = true)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct StructureArg {
    /// e.g. cur:sl2, wd:aff, sd:abelian3, h-type:abelian2, k-type:heis3, gc:1, or rank1 with --alpha
    #[arg(long)]
    structure: String,
    /// α for `--structure rank1`, e.g. "d^(1)#1 - 1#d^(1)"
    #[arg(long)]
    alpha: Option<String>,
    /// Lie algebra d for `--structure rank1`
    #[arg(long, default_value = "dim1")]
    algebra: String,
}

impl StructureArg {
    fn build(&self) -> Result<Structure, Error> {
        if self.structure == "rank1" {
            let alpha = self.alpha.as_deref().ok_or_else(|| Error::Input("rank1 needs --alpha".into()))?;
            Structure::rank1(&self.algebra, alpha)
        } else {
            Structure::from_name(&self.structure)
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check the axioms of a structure, or the Jacobi identity of a Lie algebra
    Verify {
        #[arg(long)]
        structure: Option<String>,
        #[arg(long)]
        alpha: Option<String>,
        /// catalog name or JSON spec file
        #[arg(long)]
        algebra: Option<String>,
    },
    /// [a*b] for two elements, e.g. --left "d^(1) e_1" --right "e_2"
    Bracket {
        #[command(flatten)]
        s: StructureArg,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// [a_x b] for a series x
    Xbracket {
        #[command(flatten)]
        s: StructureArg,
        #[arg(long)]
        left: String,
        #[arg(long)]
        x: String,
        #[arg(long)]
        right: String,
        #[arg(long, default_value_t = 4)]
        cutoff: u32,
    },
    /// Annihilation-algebra brackets at a cutoff; without --left/--right, compares W(d)
    /// with vector fields
    Annihilate {
        #[command(flatten)]
        s: StructureArg,
        #[arg(long, default_value_t = 4)]
        cutoff: u32,
        #[arg(long)]
        left: Option<String>,
        #[arg(long)]
        right: Option<String>,
        #[arg(long, default_value_t = 5)]
        samples: usize,
    },
    /// Central extensions and cocycles
    Cohomology {
        #[command(subcommand)]
        which: CohomologyCommand,
    },
    /// Linear local Poisson brackets and their pseudoalgebras
    Poisson {
        #[command(subcommand)]
        which: PoissonCommand,
    },
    /// List named constructions, or show the bracket table of one
    Catalog {
        name: Option<String>,
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long, default_value = "dim1")]
        algebra: String,
    },
    /// Pseudoforms on H ⊗ ∧d*
    Forms {
        #[command(subcommand)]
        which: FormsCommand,
    },
}

#[derive(Subcommand)]
enum CohomologyCommand {
    /// Central extensions with values in fil^Dmax H
    Central {
        #[command(flatten)]
        s: StructureArg,
        #[arg(long, default_value_t = 4)]
        dmax: u32,
    },
}

#[derive(Args)]
struct FamilyArg {
    /// w, s, h, cur, semidirect-w, semidirect-h
    #[arg(long)]
    family: String,
    #[arg(long, default_value_t = 1)]
    r: usize,
    #[arg(long = "N", default_value_t = 1)]
    n: usize,
    /// χ for the special family
    #[arg(long)]
    chi: Option<String>,
    /// α for the cocycle ψ_α of the Hamiltonian family
    #[arg(long)]
    alpha: Option<String>,
    /// g for current families
    #[arg(long, default_value = "sl2")]
    g: String,
}

impl FamilyArg {
    fn build(&self) -> Result<PoissonFamily, Error> {
        let (r, n) = (self.r, self.n);
        let g = || by_name(&self.g);
        Ok(match self.family.as_str() {
            "w" => PoissonFamily::General { r, n },
            "s" => PoissonFamily::Special {
                n,
                chi: match &self.chi {
                    Some(c) => parse_vector(c)?,
                    None => vec![pseudoalg::q(0); n],
                },
            },
            "h" => PoissonFamily::Hamiltonian { r, n, alpha: self.alpha.as_deref().map(parse_vector).transpose()? },
            "cur" => PoissonFamily::Current { n, g: g()? },
            "semidirect-w" => PoissonFamily::Semidirect { hamiltonian: false, r, n, g: g()? },
            "semidirect-h" => PoissonFamily::Semidirect { hamiltonian: true, r, n, g: g()? },
            other => return Err(Error::Input(format!("unknown Poisson family {other:?}"))),
        })
    }
}

#[derive(Subcommand)]
enum PoissonCommand {
    /// Read a Poisson spec file and print its pseudoalgebra
    Import { file: String },
    /// Write the Poisson spec of a structure over abelian d
    Export {
        #[command(flatten)]
        s: StructureArg,
    },
    /// Check a spec file: axioms of the image, round trip, central terms
    Verify { file: String },
    /// Print a catalog bracket
    Catalog {
        #[command(flatten)]
        f: FamilyArg,
    },
}

#[derive(Subcommand)]
enum FormsCommand {
    /// d w
    D {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        form: String,
    },
    /// (f ⊗ ∂_a) * w
    Act {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        coeff: String,
        /// 1-based index a
        #[arg(long)]
        index: usize,
        #[arg(long)]
        form: String,
    },
    /// (f ⊗ ∂_a) *_ι w
    Contract {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        coeff: String,
        #[arg(long)]
        index: usize,
        #[arg(long)]
        form: String,
    },
    /// The identity suite on forms
    Verify {
        #[arg(long)]
        algebra: String,
        #[arg(long, default_value_t = 5)]
        samples: usize,
    },
}

/// What a command produced: text, JSON, and whether its checks passed.
struct Outcome {
    text: String,
    json: Value,
    passed: bool,
}

impl Outcome {
    fn value(text: String, json: Value) -> Self {
        Outcome { text, json, passed: true }
    }

    fn report(rep: Report) -> Self {
        Outcome {
            text: rep.render_text(),
            passed: rep.passed(),
            json: serde_json::to_value(&rep).expect("serializable"),
        }
    }
}

fn algebra(name: &str) -> Result<LieAlgebra, Error> {
    if name.ends_with(".json") {
        let text = fs::read_to_string(name).map_err(|e| Error::Input(format!("{name}: {e}")))?;
        LieAlgebra::from_json(&text)
    } else {
        by_name(name)
    }
}

fn read(file: &str) -> Result<String, Error> {
    fs::read_to_string(file).map_err(|e| Error::Input(format!("{file}: {e}")))
}

fn index(h: &Hopf, i: usize) -> Result<usize, Error> {
    if i == 0 || i > h.dim() {
        return Err(Error::Input(format!("index {i} outside 1..={}", h.dim())));
    }
    Ok(i - 1)
}

const NAMES: &str = "cur:<g>[@<d>]  current algebra of g over U(d), d defaults to dim1
wd:<d>         W(d)
sd:<d>[:<χ>]   S(d,χ), χ as 1,0,1/2
h-type:<d>[:s=<vec>]  rank-1 H-type with r = Σ e_i∧e_(i+n)
k-type:<d>     rank-1 K-type on heis<2n+1> or sl2
gc:<n>[@<d>]   gc_n
cend:<n>[@<d>] Cend_n
rank1 --alpha <tensor> --algebra <d>
algebras: abelian<N> (dim<N>), aff, heis<2n+1>, sl2, broken3, or a JSON spec file";

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let seed = cli.seed;
    match &cli.command {
        Command::Verify { structure, alpha, algebra: alg } => match (structure, alg) {
            (Some(s), _) => {
                let arg = StructureArg {
                    structure: s.clone(),
                    alpha: alpha.clone(),
                    algebra: alg.clone().unwrap_or_else(|| "dim1".into()),
                };
                Ok(Outcome::report(arg.build()?.verify(seed)))
            }
            (None, Some(a)) => {
                let lie = algebra(a)?;
                let v = lie.validate();
                let mut rep = Report::new(format!("Lie algebra {}", lie.name()));
                rep.record_all("lie-jacobi", v.failures.iter().map(|f| Some(f.clone())));
                if v.failures.is_empty() {
                    rep.record("lie-jacobi", true, String::new);
                }
                Ok(Outcome::report(rep))
            }
            (None, None) => Err(Error::Input("verify needs --structure or --algebra".into())),
        },
        Command::Bracket { s, left, right } => {
            let r = s.build()?.bracket(left, right)?;
            Ok(Outcome::value(r.clone(), json!({ "bracket": r })))
        }
        Command::Xbracket { s, left, x, right, cutoff } => {
            let r = s.build()?.x_bracket(left, x, right, *cutoff)?;
            Ok(Outcome::value(r.clone(), json!({ "x_bracket": r, "cutoff": cutoff })))
        }
        Command::Annihilate { s, cutoff, left, right, samples } => {
            let st = s.build()?;
            match (left, right) {
                (Some(u), Some(v)) => {
                    let r = st.annihilate(u, v, *cutoff)?;
                    Ok(Outcome::value(r.clone(), json!({ "bracket": r, "cutoff": cutoff })))
                }
                (None, None) => Ok(Outcome::report(st.annihilation_suite(*cutoff, seed, *samples)?)),
                _ => Err(Error::Input("give both --left and --right".into())),
            }
        }
        Command::Cohomology { which: CohomologyCommand::Central { s, dmax } } => {
            let out = s.build()?.central_extensions(*dmax)?;
            Ok(Outcome { text: out.render_text(), json: out.to_json(), passed: out.passed() })
        }
        Command::Poisson { which } => match which {
            PoissonCommand::Import { file } => {
                let spec = PoissonBracketSpec::from_json(&read(file)?)?;
                let img = poisson_to_pseudo(&spec)?;
                let st = Structure::Table(img.structure);
                let mut text = format!("{}\n{}", st.name(), st.render_table());
                let central: Vec<String> = img
                    .central
                    .iter()
                    .flatten()
                    .map(|((i, j), b)| format!("β({},{}) = {}", i + 1, j + 1, b.render()))
                    .collect();
                if !central.is_empty() {
                    text.push_str(&format!("\ncentral terms: {}", central.join(", ")));
                }
                Ok(Outcome::value(
                    text,
                    json!({ "structure": st.name(), "table": st.render_table(), "central": central }),
                ))
            }
            PoissonCommand::Export { s } => {
                let spec = pseudo_to_poisson(&s.build()?.to_table()?, None)?;
                Ok(Outcome::value(
                    format!("{}\n{}", spec.render(), spec.to_json()),
                    serde_json::to_value(spec.to_file()).expect("serializable"),
                ))
            }
            PoissonCommand::Verify { file } => {
                let spec = PoissonBracketSpec::from_json(&read(file)?)?;
                Ok(Outcome::report(verify_poisson(&spec)?))
            }
            PoissonCommand::Catalog { f } => {
                let spec = poisson_catalog(&f.build()?)?;
                Ok(Outcome::value(
                    format!("{}\n{}", spec.name, spec.render()),
                    serde_json::to_value(spec.to_file()).expect("serializable"),
                ))
            }
        },
        Command::Catalog { name, alpha, algebra: alg } => match name {
            None => Ok(Outcome::value(NAMES.to_string(), json!({ "names": NAMES.lines().collect::<Vec<_>>() }))),
            Some(n) => {
                let st = StructureArg { structure: n.clone(), alpha: alpha.clone(), algebra: alg.clone() }.build()?;
                let text =
                    format!("{}\ngenerators: {}\n{}", st.name(), st.generator_labels().join(", "), st.render_table());
                Ok(Outcome::value(
                    text,
                    json!({ "structure": st.name(), "generators": st.generator_labels(), "table": st.render_table() }),
                ))
            }
        },
        Command::Forms { which } => match which {
            FormsCommand::D { algebra: a, form } => {
                let h = Hopf::new(algebra(a)?);
                let r = pseudoform_differential(&h, &parse_form(&h, form)?).render();
                Ok(Outcome::value(r.clone(), json!({ "d": r })))
            }
            FormsCommand::Act { algebra: a, coeff, index: i, form } => {
                let h = Hopf::new(algebra(a)?);
                let r = act_on_form(&h, &parse_pbw(&h, coeff)?, index(&h, *i)?, &parse_form(&h, form)?).render();
                Ok(Outcome::value(r.clone(), json!({ "action": r })))
            }
            FormsCommand::Contract { algebra: a, coeff, index: i, form } => {
                let h = Hopf::new(algebra(a)?);
                let r = contract_form(&h, &parse_pbw(&h, coeff)?, index(&h, *i)?, &parse_form(&h, form)?)?.render();
                Ok(Outcome::value(r.clone(), json!({ "contraction": r })))
            }
            FormsCommand::Verify { algebra: a, samples } => {
                let h = Hopf::new(algebra(a)?);
                Ok(Outcome::report(verify_pseudoforms(&h, seed, *samples)))
            }
        },
    }
}

/// Writes to stdout; a closed pipe is not an error.
fn emit(s: &str) {
    let _ = writeln!(io::stdout().lock(), "{s}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Text => emit(out.text.trim_end()),
                Format::Json => {
                    let v = json!({ "seed": cli.seed, "passed": out.passed, "result": out.json });
                    emit(&serde_json::to_string_pretty(&v).expect("serializable"));
                }
            }
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            match cli.format {
                Format::Text => eprintln!("error: {e}"),
                Format::Json => emit(&json!({ "seed": cli.seed, "error": e.to_string() }).to_string()),
            }
            ExitCode::from(2)
        }
    }
}
