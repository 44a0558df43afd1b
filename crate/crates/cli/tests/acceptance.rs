//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use lsa_core::algebroid::point_algebra;
use lsa_core::bialgebroid::{build_bialgebroid_from_h, s_equation_equiv};
use lsa_core::calculus::{identity_suite, is_2cocycle, unit, IDENTITY_NAMES};
use lsa_core::corpus::{
    flat_model, random_line_sym, random_sym, random_valid, unital_point_algebra,
};
use lsa_core::hessian::{
    check_pseudo_hessian, hessian_bialgebroid, hessian_double, hessian_metric,
};
use lsa_core::presymplectic::lemmas::{sides_aad, sides_ada, sides_daa};
use lsa_core::presymplectic::{
    check_presymplectic, double, matched_pair_bracket, mc_check, mixed_associator_check,
    split_to_bialgebroid, standard_star, star_double, symplectic_round_trip,
};
use lsa_core::{
    random, Algebroid, Candidate, FlatConnection, Matrix, Report, Scalar, Subbundle, SymTensor,
    Vars,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn passed(rep: &Report, what: &str) -> Result<(), String> {
    ensure(rep.passed(), || {
        format!("{what}: {:?}", rep.first_failure())
    })
}

fn corpus() -> Vec<(String, Algebroid)> {
    let mut out = vec![
        ("T∇ℝ".to_string(), flat_model(1)),
        ("T∇ℝ²".to_string(), flat_model(2)),
        ("abelian point".to_string(), point_algebra(2, &[])),
        ("e1·e1=e1".to_string(), point_algebra(2, &[(1, 1, 1, 1)])),
    ];
    for k in 0..10 {
        out.push((format!("random #{k}"), random_valid(0, k)));
    }
    out
}

fn sym(rows: &[&[i64]]) -> SymTensor {
    let m = rows
        .iter()
        .map(|r| r.iter().map(|&v| Scalar::from_i64(v)).collect())
        .collect();
    SymTensor::new(Matrix::from_rows(m).unwrap()).unwrap()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let all = corpus();
    for (name, alg) in &all {
        let rep = identity_suite(alg, 25, 0);
        passed(&rep, name)?;
        for id in IDENTITY_NAMES {
            ensure(rep.check(id).is_some(), || {
                format!("{name}: identity {id} not run")
            })?;
        }
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(60), || format!("took {t:?}"))?;
    Ok(format!(
        "{} instances, {} identities, {:.1} s",
        all.len(),
        IDENTITY_NAMES.len(),
        t.as_secs_f64()
    ))
}

fn criterion_2() -> Outcome {
    let all = corpus();
    for (name, alg) in &all {
        let (lie, omega) = alg
            .semidirect_symplectic()
            .map_err(|e| format!("{name}: {e}"))?;
        passed(&lie.check_lie_algebroid(), name)?;
        passed(&is_2cocycle(&lie, &omega), name)?;
        let c = Candidate::trivial_dual(alg.clone());
        let n = 2 * alg.rank();
        for a in 0..n {
            for b in 0..n {
                let (u, v) = (unit(n, a), unit(n, b));
                ensure(
                    star_double(&c, &u, &v) == standard_star(alg, &u, &v),
                    || format!("{name}: star differs on basis pair ({}, {})", a + 1, b + 1),
                )?;
            }
        }
    }
    Ok(format!("{} instances", all.len()))
}

/// Pairs that pass the bialgebroid checks.
fn candidates() -> Result<Vec<(String, Candidate)>, String> {
    let mut out = Vec::new();
    for (name, alg) in corpus() {
        out.push((
            format!("trivial dual of {name}"),
            Candidate::trivial_dual(alg),
        ));
    }
    let abelian = point_algebra(2, &[]);
    out.push((
        "abelian pair".into(),
        Candidate::new(abelian.clone(), abelian).unwrap(),
    ));
    for (phi, n) in [("x1^2/2", 1), ("x1^2*x2/2", 2)] {
        let vars = Vars::coordinates(n);
        let conn = FlatConnection::coordinate(vars.clone());
        let g = hessian_metric(&vars.parse(phi).unwrap(), &vars).map_err(|e| e.to_string())?;
        let (c, rep) = hessian_bialgebroid(&conn, &g, 5, 0).map_err(|e| e.to_string())?;
        passed(&rep, phi)?;
        out.push((format!("Hessian {phi}"), c));
    }
    let built = [
        (
            "e1·e1=e1, H = ε1⊗ε1",
            point_algebra(2, &[(1, 1, 1, 1)]),
            sym(&[&[1, 0], &[0, 0]]),
        ),
        (
            "unital point, H = ε2⊗ε2",
            unital_point_algebra(),
            sym(&[&[0, 0], &[0, 1]]),
        ),
        (
            "T∇ℝ², H = identity",
            flat_model(2),
            sym(&[&[1, 0], &[0, 1]]),
        ),
    ];
    for (name, alg, h) in built {
        let (c, rep) =
            build_bialgebroid_from_h(&alg, &h, 5, 0).map_err(|e| format!("{name}: {e}"))?;
        passed(&rep, name)?;
        out.push((name.to_string(), c));
    }
    Ok(out)
}

fn criterion_3() -> Outcome {
    let all = candidates()?;
    for (name, c) in &all {
        let e = double(c, 25, 0).map_err(|e| format!("{name}: {e}"))?;
        passed(&check_presymplectic(&e, 25, 0), name)?;
    }
    Ok(format!("{} bialgebroids", all.len()))
}

fn criterion_4() -> Outcome {
    let all = candidates()?;
    for (name, c) in &all {
        let e = double(c, 0, 0).map_err(|e| format!("{name}: {e}"))?;
        let r = c.rank();
        let back = split_to_bialgebroid(&e, &Subbundle::first_half(r), &Subbundle::second_half(r))
            .map_err(|e| format!("{name}: {e}"))?;
        ensure(
            back.a.with_labels(c.a.labels().clone()) == c.a
                && back.astar.with_labels(c.astar.labels().clone()) == c.astar,
            || format!("{name}: split differs"),
        )?;
        let m = matched_pair_bracket(c, 10, 0).map_err(|e| format!("{name}: {e}"))?;
        passed(&m.report, name)?;
    }
    let mut trips = 0;
    for alg in [point_algebra(2, &[(1, 1, 1, 1)]), flat_model(1)] {
        let (lie, omega) = alg.semidirect_symplectic().map_err(|e| e.to_string())?;
        passed(
            &symplectic_round_trip(&lie, &omega).map_err(|e| e.to_string())?,
            "symplectic round trip",
        )?;
        trips += 1;
    }
    Ok(format!(
        "{} splits and matched pairs, {trips} symplectic round trips",
        all.len()
    ))
}

fn criterion_5() -> Outcome {
    let point = point_algebra(2, &[(1, 1, 1, 1)]);
    let line = flat_model(1);
    let (mut total, mut yes, mut no) = (0, 0, 0);
    for k in 0..24u64 {
        let mut rng = random::stream(5, k);
        let (alg, h) = if k % 4 == 3 {
            (&line, random_line_sym(&mut rng))
        } else {
            (&point, random_sym(&mut rng, 2))
        };
        let eq = s_equation_equiv(alg, &h).map_err(|e| e.to_string())?;
        ensure(eq.bracket_vanishes == eq.coboundary_vanishes, || {
            format!("verdicts differ for sample {k}")
        })?;
        total += 1;
        if eq.bracket_vanishes {
            yes += 1;
        } else {
            no += 1;
        }
    }
    ensure(yes >= 3 && no >= 3, || format!("{yes} true, {no} false"))?;
    Ok(format!("{total} agree ({yes} true, {no} false)"))
}

fn criterion_6() -> Outcome {
    let point = point_algebra(2, &[(1, 1, 1, 1)]);
    let trivial = Candidate::trivial_dual(point.clone());
    let bad = mc_check(&trivial, &sym(&[&[0, 1], &[1, 0]])).map_err(|e| e.to_string())?;
    ensure(!bad.equation_holds && !bad.graph_is_dirac, || {
        "negative H accepted".into()
    })?;
    let w = bad
        .report
        .check("maurer-cartan")
        .and_then(|c| c.witness.clone())
        .ok_or("no witness")?;
    ensure(w.inputs == "(ε1, ε2, ε2)" && w.residual == "1", || {
        format!("witness {w:?}")
    })?;
    let (nontrivial, _) = build_bialgebroid_from_h(&point, &sym(&[&[1, 0], &[0, 0]]), 0, 0)
        .map_err(|e| e.to_string())?;
    let (mut total, mut yes, mut no) = (1, 0, 1);
    for k in 0..22u64 {
        let mut rng = random::stream(6, k);
        let c = if k % 2 == 0 { &trivial } else { &nontrivial };
        let m = mc_check(c, &random_sym(&mut rng, 2)).map_err(|e| e.to_string())?;
        ensure(m.equation_holds == m.graph_is_dirac, || {
            format!("verdicts differ for sample {k}")
        })?;
        total += 1;
        if m.equation_holds {
            yes += 1;
        } else {
            no += 1;
        }
    }
    for (c, h) in [
        (&trivial, sym(&[&[1, 0], &[0, 0]])),
        (&trivial, sym(&[&[-2, 0], &[0, 0]])),
        (&nontrivial, sym(&[&[1, 0], &[0, 0]])),
    ] {
        let m = mc_check(c, &h).map_err(|e| e.to_string())?;
        ensure(m.equation_holds && m.graph_is_dirac, || {
            format!("solution {:?} rejected", h.matrix())
        })?;
        total += 1;
        yes += 1;
    }
    ensure(total >= 20 && yes >= 3, || {
        format!("{total} cases, {yes} solutions")
    })?;
    Ok(format!(
        "{total} agree ({yes} solutions, {no} non-solutions), witness {} -> {}",
        w.inputs, w.residual
    ))
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    for (n, phi) in [
        (1, "x1^2/2"),
        (1, "x1^3/6"),
        (2, "x1^2*x2/2"),
        (2, "x1^2/2 + x2^3/6"),
    ] {
        let vars = Vars::coordinates(n);
        let conn = FlatConnection::coordinate(vars.clone());
        let g =
            hessian_metric(&vars.parse(phi).unwrap(), &vars).map_err(|e| format!("{phi}: {e}"))?;
        passed(
            &check_pseudo_hessian(&conn, &g).map_err(|e| e.to_string())?,
            phi,
        )?;
        passed(
            &hessian_bialgebroid(&conn, &g, 25, 0)
                .map_err(|e| e.to_string())?
                .1,
            phi,
        )?;
        passed(
            &hessian_double(&conn, &g, 25, 0)
                .map_err(|e| e.to_string())?
                .1,
            phi,
        )?;
    }
    let vars = Vars::coordinates(2);
    let conn = FlatConnection::coordinate(vars.clone());
    let diag = vec![
        vec![Scalar::one(), Scalar::zero()],
        vec![Scalar::zero(), vars.parse("x1").unwrap()],
    ];
    let g = SymTensor::new(Matrix::from_rows(diag).unwrap()).unwrap();
    let rep = check_pseudo_hessian(&conn, &g).map_err(|e| e.to_string())?;
    let cob = rep
        .check("coboundary")
        .and_then(|c| c.witness.clone())
        .ok_or("diag(1, x1) accepted")?;
    ensure(
        cob.inputs == "(∂1, ∂2, ∂2)" && cob.residual == "1",
        || format!("witness {cob:?}"),
    )?;
    ensure(
        rep.check("agreement").map(|c| c.passed) == Some(true),
        || "criteria disagree".into(),
    )?;
    let t = start.elapsed();
    ensure(t < Duration::from_secs(30), || format!("took {t:?}"))?;
    Ok(format!(
        "4 potentials pass, diag(1, x1) fails with δg{} = {}, {:.1} s",
        cob.inputs,
        cob.residual,
        t.as_secs_f64()
    ))
}

fn criterion_8() -> Outcome {
    let c = Candidate::trivial_dual(point_algebra(2, &[(1, 1, 1, 1)]));
    passed(&mixed_associator_check(&c, 0, 0), "mixed associators")?;
    let (r, n) = (2, 4);
    let mut tuples = 0;
    for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                for l in 0..n {
                    let (a, b, w, e4) = (unit(r, i), unit(r, j), unit(r, k), unit(n, l));
                    for (arr, s) in [
                        ("x-x-xi", sides_aad(&c, &a, &b, &w, &e4)),
                        ("x-xi-x", sides_ada(&c, &a, &b, &w, &e4)),
                        ("xi-x-x", sides_daa(&c, &a, &b, &w, &e4)),
                    ] {
                        let tag = format!("{arr} ({}, {}, {}; {})", i + 1, j + 1, k + 1, l + 1);
                        ensure(s.agree(), || format!("{tag}: sides differ"))?;
                        ensure(s.terms.iter().all(Scalar::is_zero), || {
                            format!("{tag}: nonzero defect term")
                        })?;
                        tuples += 1;
                    }
                }
            }
        }
    }
    Ok(format!(
        "{tuples} basis tuples, sides agree, all I and J terms vanish"
    ))
}

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

fn lsa(args: &[&str]) -> Result<(Vec<u8>, i32), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_lsa"))
        .args(args)
        .current_dir(fixtures())
        .output()
        .map_err(|e| e.to_string())?;
    Ok((out.stdout, out.status.code().unwrap_or(-1)))
}

fn criterion_9() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let out = dir.path().join("double.json");
    let out = out.to_str().unwrap();
    let runs: Vec<Vec<&str>> = vec![
        vec!["check-lsa", "flat2.json"],
        vec!["check-lsa", "not_left_symmetric.json"],
        vec!["check-bialgebroid", "point.json", "abelian.json"],
        vec!["double", "flat2.json", "zero_flat2.json", "-o", out],
        vec!["dirac", "double_point.json", "first_half.json"],
        vec![
            "manin",
            "double_point.json",
            "first_half.json",
            "second_half.json",
        ],
        vec!["mc", "point.json", "abelian.json", "h_offdiag.json"],
        vec!["hessian", "--potential", "x1^2*x2/2", "--vars", "x1,x2"],
        vec!["identities", "flat2.json"],
        vec!["search", "--dim", "2", "--count", "5", "--mc"],
    ];
    for args in &runs {
        let mut full = args.clone();
        full.extend(["--json", "--seed", "7", "--trials", "5"]);
        let (a, ca) = lsa(&full)?;
        let written = std::fs::read(out).ok();
        let (b, cb) = lsa(&full)?;
        ensure(ca == cb && ca != 2, || {
            format!("{}: exit codes {ca}, {cb}", args[0])
        })?;
        ensure(!a.is_empty() && a == b, || {
            format!("{}: reports differ", args[0])
        })?;
        if args[0] == "double" {
            ensure(written == std::fs::read(out).ok(), || {
                "double: written files differ".into()
            })?;
        }
    }
    Ok(format!("{} commands byte-identical", runs.len()))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("identity suite on the named and random corpus", criterion_1),
        (
            "semidirect symplectic structure and the trivial-dual product",
            criterion_2,
        ),
        ("doubles of bialgebroids are pre-symplectic", criterion_3),
        (
            "split, symplectic and matched-pair round trips",
            criterion_4,
        ),
        (
            "bracket and coboundary forms of the S-equation agree",
            criterion_5,
        ),
        (
            "Maurer-Cartan equation matches the Dirac property of the graph",
            criterion_6,
        ),
        ("Hessian pipeline and negative control", criterion_7),
        (
            "mixed associator identities on the trivial-dual double",
            criterion_8,
        ),
        ("CLI reports are deterministic", criterion_9),
    ];
    let mut failed = 0;
    for (k, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!(
                "criterion {}: PASS  {title} ({detail}) [{secs:.1} s]",
                k + 1
            ),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {title}: {why} [{secs:.1} s]", k + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
}
