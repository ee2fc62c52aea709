use std::process::ExitCode;
use std::time::{Duration, Instant};

use pseudoalg::annihilation::verify_annihilation_wd;
use pseudoalg::cohomology::{
    is_trivial_cocycle, killing_cocycle, rank1_datum_of, sd_cocycle_suite, solve_central_extensions,
    solve_central_extensions_rank1, verify_cur_cocycle, verify_d_squared,
};
use pseudoalg::constructions::{
    check_div2, check_ybe, embed_rank1_in_wd, make_rank1, Cend, Current, Rank1Datum, Sd, Wd, WdOnH,
};
use pseudoalg::lie::catalog::{abelian, affine, heisenberg, kernel_catalog, sl2};
use pseudoalg::pbw::verify_hopf;
use pseudoalg::poisson::{
    central_cocycle_report, poisson_catalog, poisson_to_pseudo, pseudo_to_poisson, rescale_generators, verify_poisson,
    PoissonBracketSpec, PoissonFamily,
};
use pseudoalg::pseudo::{random_element, verify_axioms, Adjoint, Commutator, Pseudoalgebra, TableStructure};
use pseudoalg::pseudoforms::verify_pseudoforms;
use pseudoalg::report::Report;
use pseudoalg::tensor::verify_fourier;
use pseudoalg::{q, qf, Hopf, LieAlgebra, Q};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

/// Name, check and time budget in seconds.
type Criterion = (&'static str, fn() -> Outcome, Option<u64>);

fn need(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn passing(rep: &Report) -> Result<(), String> {
    need(rep.passed(), || rep.render_text())
}

fn wedge(n: usize, i: usize, j: usize) -> Vec<Vec<Q>> {
    let mut r = vec![vec![q(0); n]; n];
    r[i][j] = q(1);
    r[j][i] = q(-1);
    r
}

/// The three worked data: `[a,b] = b` with `s = b`, the Heisenberg algebra with `s = -c`,
/// and `sl2` with `r = e∧f`, `s = -h`.
fn example_data() -> Vec<(&'static str, LieAlgebra, Rank1Datum, Rank1Datum)> {
    let aff = affine();
    let good = Rank1Datum::new(wedge(2, 0, 1), vec![q(0), q(1)]).unwrap();
    let bad = good.perturbed_s(0, q(1));
    let heis = heisenberg(1);
    let hgood = Rank1Datum::new(wedge(3, 0, 1), vec![q(0), q(0), q(-1)]).unwrap();
    let hbad = hgood.perturbed_s(2, q(1));
    let s = sl2();
    let (e, f, h) = (s.index_of("e").unwrap(), s.index_of("f").unwrap(), s.index_of("h").unwrap());
    let mut sv = vec![q(0); 3];
    sv[h] = q(-1);
    let sgood = Rank1Datum::new(wedge(3, e, f), sv).unwrap();
    let sbad = sgood.perturbed_s(h, q(2));
    vec![("[a,b]=b", aff, good, bad), ("heisenberg", heis, hgood, hbad), ("sl2", s, sgood, sbad)]
}

fn hopf_kernel() -> Outcome {
    let mut cases = 0;
    for lie in kernel_catalog() {
        let rep = verify_hopf(&Hopf::new(lie), 4);
        passing(&rep)?;
        cases += rep.checks.iter().map(|c| c.cases).sum::<usize>();
    }
    Ok(format!("{cases} cases on 6 algebras"))
}

fn fourier() -> Outcome {
    for lie in kernel_catalog() {
        passing(&verify_fourier(&Hopf::new(lie), 2, 50, 3))?;
    }
    Ok("50 arity-2 and 50 arity-3 samples per algebra".into())
}

fn axioms() -> Outcome {
    let mut slowest = Duration::ZERO;
    let mut run = |f: &dyn Fn() -> Report| -> Result<(), String> {
        let t = Instant::now();
        let rep = f();
        slowest = slowest.max(t.elapsed());
        need(t.elapsed() < Duration::from_secs(60), || format!("{} took {:?}", rep.subject, t.elapsed()))?;
        passing(&rep)
    };
    run(&|| verify_axioms(&Current::new(Hopf::new(abelian(1)), sl2()).unwrap()))?;
    for lie in kernel_catalog() {
        run(&|| verify_axioms(&Wd::new(Hopf::new(lie.clone()))))?;
    }
    run(&|| verify_axioms(&Sd::new(Hopf::new(abelian(3)), vec![q(0); 3]).unwrap()))?;
    for (_, lie, datum, _) in example_data() {
        run(&|| verify_axioms(&make_rank1(&Hopf::new(lie.clone()), &datum).unwrap()))?;
    }
    for n in 1..=2 {
        run(&|| verify_axioms(&Cend::new(Hopf::new(abelian(1)), n, 1).unwrap()))?;
        run(&|| verify_axioms(&Commutator(Cend::new(Hopf::new(abelian(1)), n, 1).unwrap())))?;
    }
    Ok(format!("slowest structure {:.2} s", slowest.as_secs_f64()))
}

fn ybe() -> Outcome {
    for (name, lie, good, bad) in example_data() {
        let h = Hopf::new(lie);
        passing(&check_ybe(&h, &good))?;
        need(!check_ybe(&h, &bad).passed(), || format!("perturbed {name} datum passes"))?;
    }
    Ok("3 data pass, 3 perturbations fail".into())
}

fn embedding() -> Outcome {
    for (name, lie, datum, _) in example_data() {
        let rep = embed_rank1_in_wd(&Hopf::new(lie), &datum).map_err(|e| format!("{name}: {e}"))?;
        passing(&rep)?;
        need(rep.check("homomorphism").is_some(), || format!("{name}: no homomorphism check"))?;
    }
    let h = Hopf::new(abelian(2));
    let rep = embed_rank1_in_wd(&h, &Rank1Datum::new(wedge(2, 0, 1), vec![q(0), q(0)]).unwrap())
        .map_err(|e| e.to_string())?;
    passing(&rep)?;
    need(rep.check("embedding-divergence").is_some(), || "no divergence check for the H-type datum".into())?;
    Ok("homomorphisms certified, Div^φ = 0 on the H-type image".into())
}

fn s_type() -> Outcome {
    for n in 2..=4 {
        let sd = Sd::new(Hopf::new(abelian(n)), vec![q(0); n]).unwrap();
        let rep = sd.verify_generators();
        passing(&rep)?;
        need(rep.check("sd-bracket").is_some_and(|c| c.cases > 0), || format!("N={n}: no brackets checked"))?;
    }
    let sd = Sd::new(Hopf::new(abelian(3)), vec![q(0); 3]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..20 {
        let x = random_element(&mut rng, sd.wd().hopf(), &sd.pairs(), 3, 2);
        let alpha = sd.embed(&x);
        need(sd.is_member(&alpha), || "embedded element is not a member".into())?;
        let back = sd.express(&alpha).map_err(|e| e.to_string())?;
        need(sd.embed(&back) == alpha, || format!("round trip differs for {}", alpha.render()))?;
    }
    Ok("2 ≤ N ≤ 4 brackets and relation, 20 round trips".into())
}

fn divergence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let cases: Vec<(LieAlgebra, Vec<Q>)> = vec![
        (abelian(1), vec![q(0)]),
        (abelian(2), vec![q(1), q(-2)]),
        (abelian(3), vec![q(0); 3]),
        (affine(), vec![q(0), q(0)]),
        (affine(), vec![q(3), q(0)]),
        (heisenberg(1), vec![q(0); 3]),
        (sl2(), vec![q(0); 3]),
    ];
    for (lie, chi) in cases {
        let wd = Wd::new(Hopf::new(lie));
        let gens: Vec<usize> = (0..wd.hopf().dim()).collect();
        for _ in 0..20 {
            let a = random_element(&mut rng, wd.hopf(), &gens, 3, 3);
            let b = random_element(&mut rng, wd.hopf(), &gens, 3, 3);
            let r = check_div2(&wd, &a, &b, &chi).map_err(|e| e.to_string())?;
            need(r.is_zero(), || format!("residual {}", r.render()))?;
        }
    }
    Ok("20 pairs on 7 (d, χ)".into())
}

fn virasoro_form() -> Outcome {
    let h = Hopf::new(abelian(1));
    let w = TableStructure::from_structure(&Wd::new(h)).map_err(|e| e.to_string())?;
    let ell = rescale_generators(&w, &[q(-1)]).map_err(|e| e.to_string())?;
    let spec = pseudo_to_poisson(&ell, None).map_err(|e| e.to_string())?;
    let mut expect = PoissonBracketSpec::new("vir", 1, 1);
    let mut p = pseudoalg::poisson::Poly::zero(2);
    p.add_term(vec![1, 0], q(2));
    p.add_term(vec![0, 1], q(1));
    expect.add(0, 0, 0, &p);
    need(spec.q == expect.q, || format!("got {}", spec.render()))?;
    Ok(spec.render())
}

fn annihilation() -> Outcome {
    for n in 1..=2 {
        let wd = Wd::new(Hopf::new(abelian(n)));
        passing(&verify_annihilation_wd(&wd, 6, 9, 20))?;
    }
    Ok("N = 1, 2 at D = 6".into())
}

/// Runs `f`, failing if it takes longer than two minutes.
fn timed<T>(what: &str, f: impl FnOnce() -> pseudoalg::Result<T>) -> Result<T, String> {
    let t = Instant::now();
    let out = f().map_err(|e| format!("{what}: {e}"))?;
    need(t.elapsed() < Duration::from_secs(120), || format!("{what} took {:?}", t.elapsed()))?;
    Ok(out)
}

fn central() -> Outcome {
    let mut lines = Vec::new();
    let wd = Wd::new(Hopf::new(abelian(1)));
    let sol = timed("W(1)", || solve_central_extensions(&wd, 4))?;
    let rep = sol.representatives.first().map(|t| sol.render_table(t)).unwrap_or_default();
    need(sol.dimension == 1 && rep == "d^(3)", || format!("W: dim {}, {rep}", sol.dimension))?;
    lines.push(format!("W(1): {rep}"));
    for n in [2, 4] {
        let h = Hopf::new(abelian(n));
        let r = {
            let mut r = vec![vec![q(0); n]; n];
            for i in 0..n / 2 {
                r[i][i + n / 2] = q(1);
                r[i + n / 2][i] = q(-1);
            }
            r
        };
        let p = make_rank1(&h, &Rank1Datum::new(r, vec![q(0); n]).unwrap()).map_err(|e| e.to_string())?;
        let sol = timed("H-type", || solve_central_extensions_rank1(&p, 4))?;
        need(sol.dimension == n, || format!("H(abelian{n}): dim {}", sol.dimension))?;
        lines.push(format!("H({n}): {}", sol.dimension));
    }
    let heis = heisenberg(1);
    let h = Hopf::new(heis.clone());
    let datum = Rank1Datum::new(wedge(3, 0, 1), vec![q(0), q(0), q(-1)]).unwrap();
    need(datum.x(&heis) == vec![q(0), q(0), q(1)], || "x ≠ nc".into())?;
    let p = make_rank1(&h, &datum).map_err(|e| e.to_string())?;
    need(rank1_datum_of(&p).is_ok(), || "datum not recovered".into())?;
    let sol = timed("K-type", || solve_central_extensions_rank1(&p, 4))?;
    need(sol.dimension == 0, || format!("K: dim {}", sol.dimension))?;
    lines.push("K(heis): 0".into());
    for n in 1..=2 {
        let h = Hopf::new(abelian(n));
        let cur = Current::new(h.clone(), sl2()).unwrap();
        for i in 0..n {
            let beta = killing_cocycle(&cur, &h.gen(i)).map_err(|e| e.to_string())?;
            let v = verify_cur_cocycle(&cur, &beta).map_err(|e| e.to_string())?;
            need(v.closed && !v.trivial, || v.report.render_text())?;
        }
        let sol = timed("Cur sl2", || solve_central_extensions(&cur, 3))?;
        need(sol.dimension == n, || format!("Cur sl2 over abelian{n}: dim {}", sol.dimension))?;
        lines.push(format!("Cur({n}): {n}"));
    }
    let sd = Sd::new(Hopf::new(abelian(3)), vec![q(0); 3]).unwrap();
    let s = timed("S-type", || sd_cocycle_suite(&sd, 4))?;
    passing(&s.report)?;
    need(s.dimension == 0, || format!("S: dim {}", s.dimension))?;
    lines.push(format!("S(3): {} solutions, all trivial", s.solutions.len()));
    Ok(lines.join(", "))
}

fn complex() -> Outcome {
    let cur = Current::new(Hopf::new(abelian(1)), sl2()).unwrap();
    passing(&verify_d_squared(&Adjoint(&cur), 11, 20, 2).map_err(|e| e.to_string())?)?;
    for lie in [abelian(1), abelian(2), affine()] {
        let wd = Wd::new(Hopf::new(lie));
        passing(&verify_d_squared(&WdOnH(&wd), 11, 20, 2).map_err(|e| e.to_string())?)?;
    }
    Ok("20 cochains of degree 0 and 1 each".into())
}

fn pseudoforms() -> Outcome {
    for lie in [abelian(1), abelian(2), affine()] {
        passing(&verify_pseudoforms(&Hopf::new(lie), 12, 5))?;
    }
    Ok("abelian 1, 2 and [a,b]=b".into())
}

fn poisson() -> Outcome {
    let fams = vec![
        PoissonFamily::General { r: 1, n: 1 },
        PoissonFamily::General { r: 2, n: 2 },
        PoissonFamily::General { r: 1, n: 2 },
        PoissonFamily::Special { n: 2, chi: vec![q(0); 2] },
        PoissonFamily::Hamiltonian { r: 2, n: 2, alpha: None },
        PoissonFamily::Hamiltonian { r: 2, n: 2, alpha: Some(vec![q(1), qf(1, 2)]) },
        PoissonFamily::Current { n: 1, g: sl2() },
        PoissonFamily::Semidirect { hamiltonian: false, r: 1, n: 1, g: sl2() },
        PoissonFamily::Semidirect { hamiltonian: true, r: 2, n: 2, g: sl2() },
    ];
    for f in &fams {
        let spec = poisson_catalog(f).map_err(|e| e.to_string())?;
        let rep = verify_poisson(&spec).map_err(|e| e.to_string())?;
        passing(&rep)?;
        need(rep.check("poisson-round-trip").is_some(), || format!("{}: no round trip", spec.name))?;
    }
    let w11 = poisson_catalog(&PoissonFamily::General { r: 1, n: 1 }).map_err(|e| e.to_string())?;
    let img = poisson_to_pseudo(&w11).map_err(|e| e.to_string())?;
    let h = img.structure.hopf().clone();
    let w = TableStructure::from_structure(&Wd::new(h)).map_err(|e| e.to_string())?;
    let ell = rescale_generators(&w, &[q(-1)]).map_err(|e| e.to_string())?;
    need(img.structure.entry(0, 0) == ell.entry(0, 0), || "W_{1,1} is not W(d) under ℓ = -e".into())?;
    let psi = poisson_catalog(&PoissonFamily::Hamiltonian { r: 2, n: 2, alpha: Some(vec![q(1), q(0)]) })
        .map_err(|e| e.to_string())?;
    let img = poisson_to_pseudo(&psi).map_err(|e| e.to_string())?;
    let beta = img.central.clone().ok_or("no central term")?;
    passing(&central_cocycle_report(&img.structure, &beta).map_err(|e| e.to_string())?)?;
    need(!is_trivial_cocycle(&img.structure, &beta), || "ψ_α is trivial".into())?;
    Ok(format!("{} families, ψ_α closed and nontrivial", fams.len()))
}

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        ("hopf kernel", hopf_kernel, Some(10)),
        ("fourier suite", fourier, None),
        ("axiom suite", axioms, None),
        ("ybe checker", ybe, None),
        ("rank-1 embedding", embedding, None),
        ("s-type generators", s_type, None),
        ("divergence identity", divergence, None),
        ("virasoro lambda-form", virasoro_form, None),
        ("annihilation cross-oracle", annihilation, Some(60)),
        ("central extensions", central, None),
        ("cochain complex", complex, None),
        ("pseudoforms", pseudoforms, Some(60)),
        ("poisson dictionary", poisson, None),
    ];
    let mut failed = 0;
    for (i, (name, f, budget)) in criteria.into_iter().enumerate() {
        let t = Instant::now();
        let mut out = f();
        let secs = t.elapsed().as_secs_f64();
        if let Some(b) = budget.filter(|&b| out.is_ok() && secs > b as f64) {
            out = Err(format!("over the {b} s budget"));
        }
        match out {
            Ok(detail) => println!("[PASS] {:>2} {name} ({secs:.2} s): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {:>2} {name} ({secs:.2} s): {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
