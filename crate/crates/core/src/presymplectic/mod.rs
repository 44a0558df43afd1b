//! Pre-symplectic algebroids on `E` of rank `2r` with basis `(e₁..e_r, ε¹..ε^r)`.
//!
//! The product `⋆` is evaluated by a closed formula chosen by the source of
//! the structure; it is never extended from basis values by assumption.

pub mod dirac;
pub mod lemmas;
pub mod matched;

pub use dirac::{
    check_dirac, check_manin, mc_check, split_to_bialgebroid, MaurerCartan, Subbundle,
};
pub use lemmas::{mixed_associator_check, MixedSides};
pub use matched::{matched_pair_bracket, MatchedPair, Reading};

use crate::algebroid::{
    add, describe_failure, is_zero_vec, pair, scale, standard_omega, sub, Algebroid, Kind,
};
use crate::bialgebroid::{check_bialgebroid, Candidate};
use crate::calculus::is_2cocycle;
use crate::calculus::tensor::{unit, Tensor};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::random;
use crate::report::{format_tuple, format_vector, Check, Report};
use crate::scalar::{Scalar, Vars, VectorField};

pub type BigSection = Vec<Scalar>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    /// The double of a pair `(A, A*)`.
    Bialgebroid(Candidate),
    /// The double with the `½d(·,·)₊` terms removed; a negative control.
    Truncated(Candidate),
    /// A symplectic Lie algebroid `(L, ω)` with `ω` as a matrix.
    Symplectic { lie: Algebroid, omega: Matrix },
    /// Basis products `table[a][b]` and anchors; values on function
    /// coefficients follow `e⋆(fe') = f e⋆e' + ρ(e)(f)e' + ½(e,e')₋Df` and
    /// `(fe)⋆e' = f e⋆e' - ½(e,e')₋Df`.
    Explicit { table: Vec<Vec<Vec<Scalar>>> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreSymplectic {
    source: Source,
    vars: Vars,
    dim: usize,
    omega: Matrix,
    /// `Ω^{-T}`, mapping `(Ωᵀ u) ↦ u`.
    omega_inv_t: Matrix,
    anchor: Vec<VectorField>,
}

impl PreSymplectic {
    fn build(source: Source, vars: Vars, omega: Matrix, anchor: Vec<VectorField>) -> Result<Self> {
        let dim = omega.rows();
        if !omega.is_square() || anchor.len() != dim {
            return Err(Error::ShapeMismatch(
                "form and anchor must match the bundle rank".into(),
            ));
        }
        if !omega.is_skew() {
            return Err(Error::InvalidStructure(
                "pairing is not skew-symmetric".into(),
            ));
        }
        let omega_inv_t = match omega.transpose().inverse() {
            Ok(m) => m,
            Err(_) => return Err(Error::Degenerate("pairing has zero determinant".into())),
        };
        Ok(PreSymplectic {
            source,
            vars,
            dim,
            omega,
            omega_inv_t,
            anchor,
        })
    }

    /// `(A⊕A*, ⋆, a + a*, ω)` without validating the pair.
    pub fn double_unchecked(cand: &Candidate) -> Self {
        PreSymplectic::from_pair(Source::Bialgebroid(cand.clone()), cand)
    }

    /// The double with the `½d(·,·)₊` terms of `⋆` dropped.
    pub fn truncated_double(cand: &Candidate) -> Self {
        PreSymplectic::from_pair(Source::Truncated(cand.clone()), cand)
    }

    fn from_pair(source: Source, cand: &Candidate) -> Self {
        let mut anchor = cand.a.anchors().to_vec();
        anchor.extend(cand.astar.anchors().iter().cloned());
        PreSymplectic::build(
            source,
            cand.vars().clone(),
            standard_omega(cand.rank()),
            anchor,
        )
        .expect("standard form is nondegenerate")
    }

    pub fn explicit(
        vars: Vars,
        table: Vec<Vec<Vec<Scalar>>>,
        anchor: Vec<VectorField>,
        omega: Matrix,
    ) -> Result<Self> {
        let dim = omega.rows();
        if table.len() != dim
            || table
                .iter()
                .any(|row| row.len() != dim || row.iter().any(|v| v.len() != dim))
        {
            return Err(Error::ShapeMismatch(format!(
                "product table must be {dim}x{dim}x{dim}"
            )));
        }
        if anchor.iter().any(|a| a.dim() != vars.base_count()) {
            return Err(Error::ShapeMismatch(
                "anchor components must match the base variables".into(),
            ));
        }
        PreSymplectic::build(Source::Explicit { table }, vars, omega, anchor)
    }

    pub fn source(&self) -> &Source {
        &self.source
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn omega(&self) -> &Matrix {
        &self.omega
    }

    pub fn anchor(&self, a: usize) -> &VectorField {
        &self.anchor[a]
    }

    pub fn anchors(&self) -> &[VectorField] {
        &self.anchor
    }

    pub fn basis(&self, a: usize) -> BigSection {
        unit(self.dim, a)
    }

    pub fn label(&self, a: usize) -> String {
        let r = self.dim / 2;
        match &self.source {
            Source::Bialgebroid(c) | Source::Truncated(c) if a < r => c.a.label(a),
            Source::Bialgebroid(c) | Source::Truncated(c) => c.astar.label(a - r),
            _ => format!("b{}", a + 1),
        }
    }

    pub fn show(&self, u: &[Scalar]) -> String {
        let mut parts = Vec::new();
        for (a, c) in u.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let text = self.vars.print(c);
            parts.push(if c.is_one() {
                self.label(a)
            } else if text == "-1" {
                format!("-{}", self.label(a))
            } else {
                format!("({text})*{}", self.label(a))
            });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    fn check(&self, u: &[Scalar]) -> Result<()> {
        if u.len() != self.dim {
            return Err(Error::ShapeMismatch(format!(
                "expected {} coordinates, got {}",
                self.dim,
                u.len()
            )));
        }
        Ok(())
    }

    /// `(u, v)₋ = uᵀ Ω v`.
    pub fn form(&self, u: &[Scalar], v: &[Scalar]) -> Scalar {
        self.omega.form(u, v)
    }

    pub fn rho_of(&self, u: &[Scalar]) -> VectorField {
        let mut v = VectorField::zero(self.vars.base_count());
        for (a, c) in u.iter().enumerate() {
            if !c.is_zero() && !self.anchor[a].is_zero() {
                v = v.add(&self.anchor[a].scale(c));
            }
        }
        v
    }

    /// `D f`, determined by `(Df, e)₋ = ρ(e)(f)`.
    pub fn d_op(&self, f: &Scalar) -> BigSection {
        if let Source::Bialgebroid(c) | Source::Truncated(c) = &self.source {
            let mut out: Vec<Scalar> = c.astar.d(f).iter().map(|v| -v).collect();
            out.extend(c.a.d(f));
            return out;
        }
        let v: Vec<Scalar> = self.anchor.iter().map(|a| a.apply(f)).collect();
        self.omega_inv_t.apply(&v)
    }

    /// `D f` from the defining pairing alone, for every source.
    pub fn d_op_general(&self, f: &Scalar) -> BigSection {
        let v: Vec<Scalar> = self.anchor.iter().map(|a| a.apply(f)).collect();
        self.omega_inv_t.apply(&v)
    }

    pub fn star(&self, u: &[Scalar], v: &[Scalar]) -> Result<BigSection> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.st(u, v))
    }

    /// `⋆` without shape checks.
    pub fn st(&self, u: &[Scalar], v: &[Scalar]) -> BigSection {
        match &self.source {
            Source::Bialgebroid(c) => star_double(c, u, v),
            Source::Truncated(c) => star_terms(c, u, v, &Scalar::zero()),
            Source::Symplectic { lie, .. } => {
                let w = self.omega.transpose().apply(v);
                let lie_w = lie.lie_der_dual(u, &w);
                let half = Scalar::from_ratio(1, 2);
                let d = lie.d(&self.form(u, v));
                self.omega_inv_t.apply(&add(&lie_w, &scale(&d, &half)))
            }
            Source::Explicit { table } => {
                let half = Scalar::from_ratio(1, 2);
                let mut out = self.rho_of(u).apply_all(v);
                let mut dsum = vec![Scalar::zero(); self.dim];
                for (a, ua) in u.iter().enumerate() {
                    for (b, vb) in v.iter().enumerate() {
                        let w = &self.omega[(a, b)];
                        if !ua.is_zero() && !vb.is_zero() {
                            out = add(&out, &scale(&table[a][b], &(ua * vb)));
                        }
                        if w.is_zero() {
                            continue;
                        }
                        if !ua.is_zero() {
                            dsum = add(&dsum, &scale(&self.d_op_general(vb), &(w * ua)));
                        }
                        if !vb.is_zero() {
                            dsum = sub(&dsum, &scale(&self.d_op_general(ua), &(w * vb)));
                        }
                    }
                }
                add(&out, &scale(&dsum, &half))
            }
        }
    }

    pub fn bracket(&self, u: &[Scalar], v: &[Scalar]) -> BigSection {
        sub(&self.st(u, v), &self.st(v, u))
    }

    pub fn associator(&self, u: &[Scalar], v: &[Scalar], w: &[Scalar]) -> BigSection {
        sub(&self.st(u, &self.st(v, w)), &self.st(&self.st(u, v), w))
    }

    /// `T(e₁,e₂,e₃)`.
    pub fn t_tensor(&self, u: &[Scalar], v: &[Scalar], w: &[Scalar]) -> Scalar {
        self.form(&self.st(u, v), w) + self.form(u, &self.st(v, w))
            - self.form(&self.st(v, u), w)
            - self.form(v, &self.st(u, w))
    }

    /// Residual of condition (i): `(e₁,e₂,e₃) - (e₂,e₁,e₃) - (1/6) D T(e₁,e₂,e₃)`.
    pub fn condition_i(&self, u: &[Scalar], v: &[Scalar], w: &[Scalar]) -> BigSection {
        let lhs = sub(&self.associator(u, v, w), &self.associator(v, u, w));
        let dt = self.d_op(&self.t_tensor(u, v, w));
        sub(&lhs, &scale(&dt, &Scalar::from_ratio(1, 6)))
    }

    /// Residual of condition (ii).
    pub fn condition_ii(&self, u: &[Scalar], v: &[Scalar], w: &[Scalar]) -> Scalar {
        let half = Scalar::from_ratio(1, 2);
        let lhs = self.rho_of(u).apply(&self.form(v, w));
        let shifted = sub(&self.st(u, v), &scale(&self.d_op(&self.form(u, v)), &half));
        lhs - self.form(&shifted, w) - self.form(v, &self.bracket(u, w))
    }

    /// Triples used by the axiom checks: all basis triples, one generic
    /// affine triple, then `trials` random triples.
    fn triples(&self, trials: usize, seed: u64) -> Vec<(String, [BigSection; 3])> {
        let n = self.dim;
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    out.push((
                        format_tuple(&[self.label(a), self.label(b), self.label(c)]),
                        [unit(n, a), unit(n, b), unit(n, c)],
                    ));
                }
            }
        }
        let mut next = self.vars.fresh_start();
        let g = [
            random::generic_vector(&self.vars, n, &mut next),
            random::generic_vector(&self.vars, n, &mut next),
            random::generic_vector(&self.vars, n, &mut next),
        ];
        out.push(("generic affine".into(), g));
        for t in 0..trials {
            let mut rng = random::stream(seed, t as u64 + 1);
            let s = [
                random::vector(&mut rng, &self.vars, n, 2),
                random::vector(&mut rng, &self.vars, n, 2),
                random::vector(&mut rng, &self.vars, n, 2),
            ];
            let tag = format!(
                "sample {}: ({}; {}; {})",
                t + 1,
                self.show(&s[0]),
                self.show(&s[1]),
                self.show(&s[2])
            );
            out.push((tag, s));
        }
        out
    }
}

/// The product of the double, written componentwise.
pub fn star_double(c: &Candidate, u: &[Scalar], v: &[Scalar]) -> BigSection {
    star_terms(c, u, v, &Scalar::from_ratio(1, 2))
}

fn star_terms(c: &Candidate, u: &[Scalar], v: &[Scalar], half: &Scalar) -> BigSection {
    let r = c.rank();
    let (x1, xi1) = u.split_at(r);
    let (x2, xi2) = v.split_at(r);
    let s = pair(xi1, x2) + pair(xi2, x1);
    let a_part = sub(
        &sub(
            &add(&c.a.prod(x1, x2), &c.astar.lie_der_dual(xi1, x2)),
            &c.astar.right_dual(xi2, x1),
        ),
        &scale(&c.astar.d(&s), half),
    );
    let d_part = sub(
        &sub(
            &add(&c.astar.prod(xi1, xi2), &c.a.lie_der_dual(x1, xi2)),
            &c.a.right_dual(x2, xi1),
        ),
        &scale(&c.a.d(&s), half),
    );
    let mut out = a_part;
    out.extend(d_part);
    out
}

/// `(x+ξ)⋆(y+η) = x·y + ℒ_xη - R_yξ - ½ d(x+ξ, y+η)₊` built from `A` alone.
pub fn standard_star(alg: &Algebroid, u: &[Scalar], v: &[Scalar]) -> BigSection {
    let r = alg.rank();
    let (x, xi) = u.split_at(r);
    let (y, eta) = v.split_at(r);
    let s = pair(xi, y) + pair(eta, x);
    let mut out = alg.prod(x, y);
    let cov = sub(
        &sub(&alg.lie_der_dual(x, eta), &alg.right_dual(y, xi)),
        &scale(&alg.d(&s), &Scalar::from_ratio(1, 2)),
    );
    out.extend(cov);
    out
}

/// Conditions (i) and (ii) on basis triples, a generic affine triple and
/// `trials` random triples.
pub fn check_presymplectic(e: &PreSymplectic, trials: usize, seed: u64) -> Report {
    let mut report = Report::new();
    let triples = e.triples(trials, seed);
    let mut first: Option<Check> = None;
    for (tag, [u, v, w]) in &triples {
        let res = e.condition_i(u, v, w);
        if !is_zero_vec(&res) {
            first = Some(Check::fail("condition-i", tag.clone(), e.show(&res)));
            break;
        }
    }
    report.push(first.unwrap_or_else(|| Check::pass("condition-i")));
    let mut first: Option<Check> = None;
    for (tag, [u, v, w]) in &triples {
        let res = e.condition_ii(u, v, w);
        if !res.is_zero() {
            first = Some(Check::fail("condition-ii", tag.clone(), e.vars.print(&res)));
            break;
        }
    }
    report.push(first.unwrap_or_else(|| Check::pass("condition-ii")));
    report
}

/// The double of a pair that passes the bialgebroid conditions.
pub fn double(cand: &Candidate, trials: usize, seed: u64) -> Result<PreSymplectic> {
    let report = check_bialgebroid(cand, trials, seed)?;
    if !report.passed() {
        return Err(Error::InvalidStructure(format!(
            "not a bialgebroid: {}",
            describe_failure(&report)
        )));
    }
    Ok(PreSymplectic::double_unchecked(cand))
}

/// `(E, [·,·]_E, ρ, ω = (·,·)₋)` from the commutator of `⋆` on basis sections.
pub fn to_symplectic(e: &PreSymplectic) -> Result<(Algebroid, Tensor)> {
    let report = check_presymplectic(e, 0, 0);
    if !report.passed() {
        return Err(Error::InvalidStructure(format!(
            "not pre-symplectic: {}",
            describe_failure(&report)
        )));
    }
    let n = e.dim;
    let table = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| e.bracket(&unit(n, a), &unit(n, b)))
                .collect()
        })
        .collect();
    let lie = Algebroid::new(Kind::Lie, e.vars.clone(), n, table, e.anchor.clone())?;
    Ok((lie, Tensor::from_matrix(&e.omega)))
}

/// The pre-symplectic structure of a symplectic Lie algebroid.
pub fn from_symplectic(lie: &Algebroid, omega: &Tensor) -> Result<PreSymplectic> {
    if lie.kind() != Kind::Lie {
        return Err(Error::InvalidStructure("expected a Lie algebroid".into()));
    }
    let report = lie.check_lie_algebroid();
    if !report.passed() {
        return Err(Error::InvalidStructure(describe_failure(&report)));
    }
    if omega.degree() != 1 || omega.rank() != lie.rank() {
        return Err(Error::ShapeMismatch(
            "ω must be a 2-form of matching rank".into(),
        ));
    }
    let m = omega.to_matrix();
    if !m.is_skew() {
        return Err(Error::NotCocycle("ω is not skew-symmetric".into()));
    }
    if m.det()?.is_zero() {
        return Err(Error::Degenerate("ω is degenerate".into()));
    }
    let cocycle = is_2cocycle(lie, omega);
    if !cocycle.passed() {
        return Err(Error::NotCocycle(describe_failure(&cocycle)));
    }
    PreSymplectic::build(
        Source::Symplectic {
            lie: lie.clone(),
            omega: m.clone(),
        },
        lie.vars().clone(),
        m,
        lie.anchors().to_vec(),
    )
}

/// Checks that `(Df, e)₋ = ρ(e)(f)` for the given samples.
pub fn check_d_pairing(e: &PreSymplectic, f: &Scalar, samples: &[BigSection]) -> Check {
    let df = e.d_op(f);
    for s in samples {
        let diff = e.form(&df, s) - e.rho_of(s).apply(f);
        if !diff.is_zero() {
            return Check::fail("d-pairing", e.show(s), e.vars.print(&diff));
        }
    }
    Check::pass("d-pairing")
}

/// Restriction of `⋆` to `A` and to `A*` against the factors.
pub fn check_restrictions(e: &PreSymplectic, cand: &Candidate) -> Check {
    let r = cand.rank();
    for i in 0..r {
        for j in 0..r {
            let mut x = unit(r, i);
            x.extend(vec![Scalar::zero(); r]);
            let mut y = unit(r, j);
            y.extend(vec![Scalar::zero(); r]);
            let mut expect = cand.a.product(i, j).clone();
            expect.extend(vec![Scalar::zero(); r]);
            if e.st(&x, &y) != expect {
                return Check::fail(
                    "restriction",
                    format_tuple(&[cand.a.label(i), cand.a.label(j)]),
                    "A",
                );
            }
            let mut xi = vec![Scalar::zero(); r];
            xi.extend(unit(r, i));
            let mut eta = vec![Scalar::zero(); r];
            eta.extend(unit(r, j));
            let mut expect = vec![Scalar::zero(); r];
            expect.extend(cand.astar.product(i, j).clone());
            if e.st(&xi, &eta) != expect {
                return Check::fail(
                    "restriction",
                    format_tuple(&[cand.astar.label(i), cand.astar.label(j)]),
                    "A*",
                );
            }
        }
    }
    Check::pass("restriction")
}

/// Round trip `to_symplectic ∘ from_symplectic` on brackets and `ω`.
pub fn symplectic_round_trip(lie: &Algebroid, omega: &Tensor) -> Result<Report> {
    let e = from_symplectic(lie, omega)?;
    let (back, w) = to_symplectic(&e)?;
    let mut report = Report::new();
    let n = lie.rank();
    let mut check = Check::pass("bracket-round-trip");
    'outer: for a in 0..n {
        for b in 0..n {
            if back.product(a, b) != &lie.bracket_coeff(a, b) {
                let diff = sub(back.product(a, b), &lie.bracket_coeff(a, b));
                check = Check::fail(
                    "bracket-round-trip",
                    format_tuple(&[format!("b{}", a + 1), format!("b{}", b + 1)]),
                    format_vector(lie.vars(), &diff, "b"),
                );
                break 'outer;
            }
        }
    }
    report.push(check);
    report.push(if &w == omega {
        Check::pass("form-round-trip")
    } else {
        Check::fail("form-round-trip", "ω", "differs")
    });
    report.push(if back.anchors() == lie.anchors() {
        Check::pass("anchor-round-trip")
    } else {
        Check::fail("anchor-round-trip", "ρ", "differs")
    });
    Ok(report)
}
