use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use lsa_core::bialgebroid::check_bialgebroid;
use lsa_core::calculus::identity_suite;
use lsa_core::hessian::{check_pseudo_hessian, hessian_double, hessian_metric};
use lsa_core::io::{self, Reader};
use lsa_core::presymplectic::dirac::{check_dirac, check_manin, mc_check};
use lsa_core::presymplectic::{check_presymplectic, double};
use lsa_core::search::{search, SearchParams};
use lsa_core::{Algebroid, Candidate, Check, FlatConnection, Kind, PreSymplectic, Vars};
use serde_json::{json, Value};

use crate::run::{Input, RunReport};

/// Flags shared by every command.
#[derive(Clone, Copy, Debug)]
pub struct Common {
    pub trials: usize,
    pub seed: u64,
    pub max_degree: u32,
}

/// A JSON input file with its digest.
struct Loaded {
    value: Value,
    input: Input,
}

fn load(path: &Path) -> Result<Loaded> {
    let bytes = std::fs::read(path).with_context(|| format!("cannot read {}", path.display()))?;
    let value = serde_json::from_slice(&bytes)
        .with_context(|| format!("{} is not valid JSON", path.display()))?;
    Ok(Loaded {
        value,
        input: Input::new(path.display().to_string(), &bytes),
    })
}

fn in_file<T>(path: &Path, r: lsa_core::Result<T>) -> Result<T> {
    r.with_context(|| format!("in {}", path.display()))
}

fn algebroid(path: &Path, c: &Common, run: &mut RunReport) -> Result<Algebroid> {
    let f = load(path)?;
    run.input(f.input);
    in_file(path, io::read_algebroid(&f.value, c.max_degree))
}

fn candidate(a: &Path, astar: &Path, c: &Common, run: &mut RunReport) -> Result<Candidate> {
    let a = algebroid(a, c, run)?;
    let astar = algebroid(astar, c, run)?;
    Ok(Candidate::new(a, astar)?)
}

/// Reads a pre-symplectic file; constituents given as strings are paths
/// relative to the file.
fn presymplectic(path: &Path, c: &Common, run: &mut RunReport) -> Result<PreSymplectic> {
    let f = load(path)?;
    run.input(f.input);
    let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    let parts = std::cell::RefCell::new(Vec::new());
    let resolve = |p: &str| -> lsa_core::Result<Value> {
        let full: PathBuf = base.join(p);
        let loaded = load(&full).map_err(|e| lsa_core::Error::Schema {
            pointer: "/".into(),
            msg: format!("{e:#}"),
        })?;
        parts.borrow_mut().push(loaded.input);
        Ok(loaded.value)
    };
    let e = in_file(
        path,
        io::read_presymplectic(&f.value, c.max_degree, &resolve),
    )?;
    for i in parts.into_inner() {
        run.input(i);
    }
    Ok(e)
}

fn bialgebroid_stage(cand: &Candidate, c: &Common, run: &mut RunReport) -> Result<bool> {
    // The bialgebroid conditions presuppose both structures.
    let mut ok = true;
    for (side, alg) in [("A", &cand.a), ("A*", &cand.astar)] {
        let rep = alg.check_left_symmetric();
        ok &= rep.passed();
        run.absorb(side, rep);
    }
    if !ok {
        return Ok(false);
    }
    let rep = run.timed("bialgebroid", || check_bialgebroid(cand, c.trials, c.seed))?;
    let ok = rep.passed();
    run.absorb("bialgebroid", rep);
    Ok(ok)
}

pub fn check_lsa(file: &Path, c: &Common, run: &mut RunReport) -> Result<()> {
    let alg = algebroid(file, c, run)?;
    match alg.kind() {
        Kind::Lie => {
            let rep = run.timed("lie", || alg.check_lie_algebroid());
            run.absorb("lie", rep);
        }
        Kind::LeftSymmetric => {
            let rep = run.timed("left-symmetric", || alg.check_left_symmetric());
            let ok = rep.passed();
            run.absorb("left-symmetric", rep);
            if ok {
                let rep = run.timed("identities", || identity_suite(&alg, c.trials, c.seed));
                run.absorb("identities", rep);
            }
        }
    }
    Ok(())
}

pub fn identities(file: &Path, c: &Common, run: &mut RunReport) -> Result<()> {
    let alg = algebroid(file, c, run)?;
    if alg.kind() != Kind::LeftSymmetric {
        bail!(
            "{}: the identity suite needs a left-symmetric algebroid",
            file.display()
        );
    }
    let rep = alg.check_left_symmetric();
    if !rep.passed() {
        run.absorb("left-symmetric", rep);
        return Ok(());
    }
    let rep = run.timed("identities", || identity_suite(&alg, c.trials, c.seed));
    run.absorb("identities", rep);
    Ok(())
}

pub fn check_bialgebroid_cmd(
    a: &Path,
    astar: &Path,
    c: &Common,
    run: &mut RunReport,
) -> Result<()> {
    let cand = candidate(a, astar, c, run)?;
    bialgebroid_stage(&cand, c, run)?;
    Ok(())
}

pub fn double_cmd(
    a: &Path,
    astar: &Path,
    out: &Path,
    c: &Common,
    run: &mut RunReport,
) -> Result<()> {
    let cand = candidate(a, astar, c, run)?;
    if !bialgebroid_stage(&cand, c, run)? {
        return Ok(());
    }
    let e = double(&cand, 0, c.seed)?;
    let rep = run.timed("presymplectic", || {
        check_presymplectic(&e, c.trials, c.seed)
    });
    run.absorb("presymplectic", rep);
    let doc = io::presymplectic_json(&e)?;
    let text = serde_json::to_string_pretty(&doc)? + "\n";
    std::fs::write(out, text).with_context(|| format!("cannot write {}", out.display()))?;
    run.note(format!("wrote {}", out.display()));
    Ok(())
}

fn presymplectic_stage(e: &PreSymplectic, c: &Common, run: &mut RunReport) {
    let rep = run.timed("presymplectic", || check_presymplectic(e, c.trials, c.seed));
    run.absorb("presymplectic", rep);
}

fn subbundle(
    path: &Path,
    e: &PreSymplectic,
    c: &Common,
    run: &mut RunReport,
) -> Result<lsa_core::Subbundle> {
    let f = load(path)?;
    run.input(f.input);
    in_file(
        path,
        Reader::new(e.vars().clone(), c.max_degree).subbundle(&f.value, e.dim(), ""),
    )
}

pub fn dirac(file: &Path, sub: &Path, c: &Common, run: &mut RunReport) -> Result<()> {
    let e = presymplectic(file, c, run)?;
    let f = subbundle(sub, &e, c, run)?;
    presymplectic_stage(&e, c, run);
    let rep = run.timed("dirac", || check_dirac(&e, &f))?;
    run.absorb("dirac", rep);
    Ok(())
}

pub fn manin(file: &Path, s1: &Path, s2: &Path, c: &Common, run: &mut RunReport) -> Result<()> {
    let e = presymplectic(file, c, run)?;
    let l1 = subbundle(s1, &e, c, run)?;
    let l2 = subbundle(s2, &e, c, run)?;
    presymplectic_stage(&e, c, run);
    let rep = run.timed("manin", || check_manin(&e, &l1, &l2))?;
    run.absorb("manin", rep);
    Ok(())
}

pub fn mc(a: &Path, astar: &Path, h: &Path, c: &Common, run: &mut RunReport) -> Result<()> {
    let cand = candidate(a, astar, c, run)?;
    let f = load(h)?;
    run.input(f.input);
    let h = in_file(
        h,
        Reader::new(cand.vars().clone(), c.max_degree).sym_tensor(&f.value, cand.rank(), ""),
    )?;
    if !bialgebroid_stage(&cand, c, run)? {
        return Ok(());
    }
    let m = run.timed("maurer-cartan", || mc_check(&cand, &h))?;
    run.absorb("", m.report);
    Ok(())
}

pub enum MetricSource<'a> {
    Potential(&'a str),
    File(&'a Path),
}

pub fn hessian(
    metric: MetricSource<'_>,
    vars: &str,
    christoffel: Option<&Path>,
    c: &Common,
    run: &mut RunReport,
) -> Result<()> {
    let names: Vec<&str> = vars
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    if names.is_empty() {
        bail!("--vars needs at least one variable");
    }
    let vars = Vars::new(names, Vec::new())?;
    let reader = Reader::new(vars.clone(), c.max_degree);
    let conn = match christoffel {
        None => FlatConnection::coordinate(vars.clone()),
        Some(p) => {
            let f = load(p)?;
            run.input(f.input);
            let gamma = f.value.get("christoffel").unwrap_or(&f.value);
            in_file(p, reader.christoffel(gamma, "/christoffel"))?
        }
    };
    let g = match metric {
        MetricSource::Potential(text) => {
            run.input(Input::new("potential", text.as_bytes()));
            let phi = reader
                .scalar(&Value::String(text.into()), "/potential")
                .context("cannot read the potential")?;
            hessian_metric(&phi, &vars).context("the potential has a degenerate Hessian")?
        }
        MetricSource::File(p) => {
            let f = load(p)?;
            run.input(f.input);
            in_file(p, reader.sym_tensor(&f.value, vars.base_count(), ""))?
        }
    };
    let rep = run.timed("pseudo-hessian", || check_pseudo_hessian(&conn, &g))?;
    let ok = rep.passed();
    run.absorb("pseudo-hessian", rep);
    if !ok {
        return Ok(());
    }
    if g.det().is_zero() {
        bail!("the metric is degenerate");
    }
    let (_, rep) = run.timed("pipeline", || hessian_double(&conn, &g, c.trials, c.seed))?;
    run.absorb("pipeline", rep);
    Ok(())
}

pub struct SearchArgs {
    pub dim: usize,
    pub density: f64,
    pub count: usize,
    pub mc: bool,
    pub patience: usize,
}

pub fn search_cmd(
    args: &SearchArgs,
    out: Option<&Path>,
    c: &Common,
    run: &mut RunReport,
) -> Result<()> {
    let params = SearchParams {
        dim: args.dim,
        density: args.density,
        count: args.count,
        seed: c.seed,
        with_h: args.mc,
        patience: args.patience,
    };
    let catalog = run.timed("search", || search(&params))?;
    let mut instances = Vec::new();
    for (k, f) in catalog.found.iter().enumerate() {
        let tag = format!("instance-{}", k + 1);
        // Re-verify each emitted instance.
        let rep = f.algebra.check_left_symmetric();
        run.absorb(&tag, rep);
        let mut item = json!({"attempt": f.attempt, "algebra": io::algebroid_json(&f.algebra)});
        if let Some(h) = &f.h {
            let s = lsa_core::bialgebroid::s_bracket(&f.algebra, h)?;
            run.push(match s.first_nonzero() {
                None => Check::pass(format!("{tag}/s-equation")),
                Some((_, v)) => Check::fail(
                    format!("{tag}/s-equation"),
                    "⟦H,H⟧",
                    f.algebra.vars().print(v),
                ),
            });
            item["h"] = io::sym_tensor_json(f.algebra.vars(), h);
        }
        instances.push(item);
    }
    run.push(if catalog.found.len() == args.count {
        Check::pass("count")
    } else {
        Check::fail(
            "count",
            format!("{} attempts", catalog.attempts),
            format!("found {} of {}", catalog.found.len(), args.count),
        )
    });
    let doc = json!({
        "$schema_version": io::SCHEMA_VERSION,
        "dim": args.dim,
        "density": args.density,
        "seed": c.seed,
        "maurer_cartan": args.mc,
        "instances": instances,
    });
    match out {
        Some(path) => {
            let text = serde_json::to_string_pretty(&doc)? + "\n";
            std::fs::write(path, text)
                .with_context(|| format!("cannot write {}", path.display()))?;
            run.note(format!(
                "wrote {} instances to {}",
                catalog.found.len(),
                path.display()
            ));
        }
        None => run.output = Some(doc),
    }
    Ok(())
}
