//! Left-symmetric bialgebroids, the tensor `⟦H,H⟧` and the dual product `·_H`.

use crate::algebroid::{
    describe_failure, is_zero_vec, neg, pair, sub, Algebroid, Covector, Kind, Section,
};
use crate::calculus::tensor::{unit, Tensor};
use crate::calculus::{
    coboundary_lsa_unchecked as delta, format_tensor, lie_der_poly_unchecked as lie_poly,
};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::random;
use crate::report::{format_tuple, format_vector, Check, Report};
use crate::scalar::{Scalar, Vars, VectorField};

/// A pair `(A, A*)` of left-symmetric structures; `astar` acts on the dual basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub a: Algebroid,
    pub astar: Algebroid,
}

impl Candidate {
    pub fn new(a: Algebroid, astar: Algebroid) -> Result<Self> {
        if a.rank() != astar.rank() {
            return Err(Error::ShapeMismatch("A and A* must have equal rank".into()));
        }
        if a.vars() != astar.vars() {
            return Err(Error::ShapeMismatch(
                "A and A* must share base variables".into(),
            ));
        }
        let labels = a.labels().swapped();
        Ok(Candidate {
            a,
            astar: astar.with_labels(labels),
        })
    }

    /// `(A, 0)` with zero products and zero anchor on the dual.
    pub fn trivial_dual(a: Algebroid) -> Self {
        let z = Algebroid::abelian(Kind::LeftSymmetric, a.vars().clone(), a.rank());
        Candidate::new(a, z).expect("matching shapes")
    }

    pub fn rank(&self) -> usize {
        self.a.rank()
    }

    pub fn vars(&self) -> &Vars {
        self.a.vars()
    }

    /// The same pair read from the dual side.
    pub fn swapped(&self) -> Candidate {
        Candidate {
            a: self.astar.clone(),
            astar: self.a.clone(),
        }
    }
}

/// Symmetric `r×r` matrix; `M_ij = H(ε^i, ε^j)` or `g(e_i, e_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymTensor(Matrix);

impl SymTensor {
    pub fn new(m: Matrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::ShapeMismatch(
                "symmetric tensor must be square".into(),
            ));
        }
        if !m.is_symmetric() {
            return Err(Error::InvalidStructure("matrix is not symmetric".into()));
        }
        Ok(SymTensor(m))
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.rows()
    }

    /// `H♯ξ = Σ_ij ξ_i M_ij e_j`.
    pub fn sharp(&self, xi: &[Scalar]) -> Vec<Scalar> {
        self.0.apply(xi)
    }

    pub fn eval(&self, xi: &[Scalar], eta: &[Scalar]) -> Scalar {
        self.0.form(xi, eta)
    }

    pub fn inverse(&self) -> Result<SymTensor> {
        Ok(SymTensor(self.0.inverse()?))
    }

    pub fn det(&self) -> Scalar {
        self.0.det().expect("square")
    }

    /// Degree-1 tensor with entries `M_ij`.
    pub fn to_tensor(&self) -> Tensor {
        Tensor::from_matrix(&self.0)
    }
}

fn check_h(alg: &Algebroid, h: &SymTensor) -> Result<()> {
    if h.size() != alg.rank() {
        return Err(Error::ShapeMismatch(format!(
            "H has size {} for a structure of rank {}",
            h.size(),
            alg.rank()
        )));
    }
    Ok(())
}

fn require_valid(alg: &Algebroid, what: &str) -> Result<()> {
    let r = alg.check_left_symmetric();
    if r.passed() {
        Ok(())
    } else {
        Err(Error::InvalidStructure(format!(
            "{what}: {}",
            describe_failure(&r)
        )))
    }
}

/// `δ[ξ,η]_{A*} - 𝔏_ξ δη + 𝔏_η δξ`; the mirror condition uses the swapped pair.
fn cond1_defect(c: &Candidate, xi: &[Scalar], eta: &[Scalar]) -> Tensor {
    let lhs = delta(&c.a, &Tensor::from_vector(&c.astar.br(xi, eta)));
    let rhs = lie_poly(&c.astar, xi, &delta(&c.a, &Tensor::from_vector(eta))).sub(&lie_poly(
        &c.astar,
        eta,
        &delta(&c.a, &Tensor::from_vector(xi)),
    ));
    lhs.sub(&rhs)
}

pub fn cond1_residual(c: &Candidate, xi: &[Scalar], eta: &[Scalar]) -> Tensor {
    cond1_defect(c, xi, eta)
}

pub fn cond2_residual(c: &Candidate, x: &[Scalar], y: &[Scalar]) -> Tensor {
    cond1_defect(&c.swapped(), x, y)
}

/// Section pairs used for verification: basis pairs, one generic affine
/// pair, then `trials` random pairs of degree at most 2.
fn sample_pairs(
    vars: &Vars,
    r: usize,
    trials: usize,
    seed: u64,
) -> Vec<(String, Vec<Scalar>, Vec<Scalar>)> {
    let mut out = Vec::new();
    for i in 0..r {
        for j in 0..r {
            out.push((format!("basis {} {}", i + 1, j + 1), unit(r, i), unit(r, j)));
        }
    }
    let mut next = vars.fresh_start();
    let g1 = random::generic_vector(vars, r, &mut next);
    let g2 = random::generic_vector(vars, r, &mut next);
    out.push(("generic affine".into(), g1, g2));
    for t in 0..trials {
        let mut rng = random::stream(seed, t as u64 + 1);
        let a = random::vector(&mut rng, vars, r, 2);
        let b = random::vector(&mut rng, vars, r, 2);
        out.push((format!("sample {}", t + 1), a, b));
    }
    out
}

fn pair_label(alg: &Algebroid, tag: &str, u: &[Scalar], v: &[Scalar]) -> String {
    match tag.strip_prefix("basis ") {
        Some(_) => {
            let i = u.iter().position(|c| !c.is_zero()).unwrap_or(0);
            let j = v.iter().position(|c| !c.is_zero()).unwrap_or(0);
            format_tuple(&[alg.label(i), alg.label(j)])
        }
        None => format!("{tag}: ({}, {})", alg.show(u), alg.show(v)),
    }
}

/// Conditions (cond1)/(cond2) on basis pairs, generic affine sections and
/// `trials` random sections, plus the derived diagnostics.
pub fn check_bialgebroid(c: &Candidate, trials: usize, seed: u64) -> Result<Report> {
    require_valid(&c.a, "A")?;
    require_valid(&c.astar, "A*")?;
    let r = c.rank();
    let mut report = Report::new();
    let samples = sample_pairs(c.vars(), r, trials, seed);
    for (name, cand) in [("cond1", c.clone()), ("cond2", c.swapped())] {
        let mut check = Check::pass(name);
        for (tag, u, v) in &samples {
            let d = cond1_defect(&cand, u, v);
            if !d.is_zero() {
                check = Check::fail(
                    name,
                    pair_label(&cand.astar, tag, u, v),
                    format_tensor(c.vars(), &d, &cand.a.labels().dual),
                );
                break;
            }
        }
        report.push(check);
    }
    report.absorb("", dual_differential_check(c, seed));
    Ok(report)
}

/// `x·_A d_{M*}f = -R_{d_M f}x` and `ξ·_{A*} d_M f = -R_{d_{M*} f}ξ` for a
/// generic affine `f` on basis sections.
pub fn dual_differential_check(c: &Candidate, seed: u64) -> Report {
    let mut report = Report::new();
    let vars = c.vars();
    let r = c.rank();
    let mut next = vars.fresh_start();
    let generic = random::generic_affine(vars, &mut next);
    let mut rng = random::stream(seed, 0);
    let sampled = random::poly(&mut rng, vars, 2);
    for (name, cand) in [
        ("dual-differential/A", c.clone()),
        ("dual-differential/A*", c.swapped()),
    ] {
        let mut check = Check::pass(name);
        'outer: for f in [&generic, &sampled] {
            let d_star = cand.astar.d(f);
            let d = cand.a.d(f);
            for i in 0..r {
                let x = unit(r, i);
                let lhs = cand.a.prod(&x, &d_star);
                let rhs = neg(&cand.astar.right_dual(&d, &x));
                let diff = sub(&lhs, &rhs);
                if !is_zero_vec(&diff) {
                    check = Check::fail(
                        name,
                        format!("{}, f = {}", cand.a.label(i), vars.print(f)),
                        cand.a.show(&diff),
                    );
                    break 'outer;
                }
            }
        }
        report.push(check);
    }
    report
}

/// `[a(x), a*(ξ)] = a*(L*_x ξ) - a(L*_ξ x)` on basis pairs.
pub fn check_anchor_compat(c: &Candidate) -> Report {
    let mut report = Report::new();
    let r = c.rank();
    for i in 0..r {
        for j in 0..r {
            let (x, xi) = (unit(r, i), unit(r, j));
            let lhs = c.a.anchor(i).commutator(c.astar.anchor(j));
            let rhs = c
                .astar
                .anchor_of(&c.a.dual_apply(&x, &xi))
                .sub(&c.a.anchor_of(&c.astar.dual_apply(&xi, &x)));
            let diff = lhs.sub(&rhs);
            if !diff.is_zero() {
                report.push(Check::fail(
                    "anchor-compatibility",
                    format_tuple(&[c.a.label(i), c.astar.label(j)]),
                    format_vector(c.vars(), &diff.0, "∂"),
                ));
                return report;
            }
        }
    }
    report.push(Check::pass("anchor-compatibility"));
    report
}

/// `⟦H,H⟧(ξ₁, ξ₂, ξ₃)` evaluated directly from its defining formula.
pub fn s_bracket_eval(
    alg: &Algebroid,
    h: &SymTensor,
    xi1: &[Scalar],
    xi2: &[Scalar],
    xi3: &[Scalar],
) -> Scalar {
    let (h1, h2, h3) = (h.sharp(xi1), h.sharp(xi2), h.sharp(xi3));
    alg.anchor_of(&h1).apply(&pair(&h2, xi3)) - alg.anchor_of(&h2).apply(&pair(&h1, xi3))
        + pair(xi1, &alg.prod(&h2, &h3))
        - pair(xi2, &alg.prod(&h1, &h3))
        - pair(xi3, &alg.br(&h1, &h2))
}

/// `⟦H,H⟧ ∈ Γ(∧²A ⊗ A)` from its values on dual basis triples.
pub fn s_bracket(alg: &Algebroid, h: &SymTensor) -> Result<Tensor> {
    check_h(alg, h)?;
    let r = alg.rank();
    Ok(Tensor::from_fn(r, 2, |w, k| {
        s_bracket_eval(alg, h, &unit(r, w[0]), &unit(r, w[1]), &unit(r, k))
    }))
}

/// `ξ·_H η = ℒ_{H♯ξ}η - R_{H♯η}ξ - d_M H(ξ,η)` for arbitrary covectors.
pub fn mult_h_direct(alg: &Algebroid, h: &SymTensor, xi: &[Scalar], eta: &[Scalar]) -> Covector {
    let a = alg.lie_der_dual(&h.sharp(xi), eta);
    let b = alg.right_dual(&h.sharp(eta), xi);
    let d = alg.d(&h.eval(xi, eta));
    sub(&sub(&a, &b), &d)
}

/// The structure `(A*, ·_H, a∘H♯)`, stored on the dual basis.
pub fn mult_from_h(alg: &Algebroid, h: &SymTensor) -> Result<Algebroid> {
    check_h(alg, h)?;
    let r = alg.rank();
    let table = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| mult_h_direct(alg, h, &unit(r, i), &unit(r, j)))
                .collect()
        })
        .collect();
    let anchor: Vec<VectorField> = (0..r)
        .map(|i| alg.anchor_of(&h.sharp(&unit(r, i))))
        .collect();
    Ok(
        Algebroid::new(Kind::LeftSymmetric, alg.vars().clone(), r, table, anchor)?
            .with_labels(alg.labels().swapped()),
    )
}

/// `⟦H,H⟧(ξ, ·, η)` as a section.
fn bracket_middle(s: &Tensor, xi: &[Scalar], eta: &[Scalar]) -> Section {
    let r = s.rank();
    (0..r).map(|j| s.eval(&[xi, &unit(r, j)], eta)).collect()
}

/// `H♯(ξ·_H η) - H♯ξ·H♯η - ⟦H,H⟧(ξ,·,η)`; identically zero.
pub fn homo_defect(
    alg: &Algebroid,
    h: &SymTensor,
    xi: &[Scalar],
    eta: &[Scalar],
) -> Result<Section> {
    let s = s_bracket(alg, h)?;
    Ok(homo_defect_with(alg, h, &s, xi, eta))
}

fn homo_defect_with(
    alg: &Algebroid,
    h: &SymTensor,
    s: &Tensor,
    xi: &[Scalar],
    eta: &[Scalar],
) -> Section {
    let lhs = sub(
        &h.sharp(&mult_h_direct(alg, h, xi, eta)),
        &alg.prod(&h.sharp(xi), &h.sharp(eta)),
    );
    sub(&lhs, &bracket_middle(s, xi, eta))
}

/// `H♯[ξ,η]_H - [H♯ξ,H♯η] - ⟦H,H⟧(ξ,η,·)`; identically zero.
pub fn homo1_defect(
    alg: &Algebroid,
    h: &SymTensor,
    xi: &[Scalar],
    eta: &[Scalar],
) -> Result<Section> {
    let s = s_bracket(alg, h)?;
    let r = alg.rank();
    let comm = sub(
        &mult_h_direct(alg, h, xi, eta),
        &mult_h_direct(alg, h, eta, xi),
    );
    let lhs = sub(&h.sharp(&comm), &alg.br(&h.sharp(xi), &h.sharp(eta)));
    let last: Section = (0..r).map(|k| s.eval(&[xi, eta], &unit(r, k))).collect();
    Ok(sub(&lhs, &last))
}

/// Outcome of comparing `⟦H,H⟧ = 0` with `δ(H⁻¹) = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equivalence {
    pub bracket_vanishes: bool,
    pub coboundary_vanishes: bool,
    pub report: Report,
}

pub fn s_equation_equiv(alg: &Algebroid, h: &SymTensor) -> Result<Equivalence> {
    check_h(alg, h)?;
    if h.det().is_zero() {
        return Err(Error::Degenerate("det H = 0".into()));
    }
    let s = s_bracket(alg, h)?;
    let dinv = delta(alg, &h.inverse()?.to_tensor());
    let bracket_vanishes = s.is_zero();
    let coboundary_vanishes = dinv.is_zero();
    let mut report = Report::new();
    let detail = format!("⟦H,H⟧ = 0: {bracket_vanishes}; δ(H⁻¹) = 0: {coboundary_vanishes}");
    let check = if bracket_vanishes == coboundary_vanishes {
        Check::pass("s-equation-equivalence")
    } else {
        Check::fail(
            "s-equation-equivalence",
            "verdicts",
            format!(
                "⟦H,H⟧ = {}; δ(H⁻¹) = {}",
                format_tensor(alg.vars(), &s, "e"),
                format_tensor(alg.vars(), &dinv, "ε")
            ),
        )
    };
    report.push(check.with_detail(detail));
    Ok(Equivalence {
        bracket_vanishes,
        coboundary_vanishes,
        report,
    })
}

fn s_bracket_witness(alg: &Algebroid, s: &Tensor) -> Option<(String, String)> {
    s.first_nonzero().map(|((w, k), v)| {
        (
            format_tuple(&[
                alg.dual_label(w[0]),
                alg.dual_label(w[1]),
                alg.dual_label(*k),
            ]),
            alg.vars().print(v),
        )
    })
}

/// Builds `(A, (A*, ·_H, a∘H♯))` and verifies the bialgebroid conditions,
/// the homomorphism property of `H♯` and the anchor identity (homo2).
pub fn build_bialgebroid_from_h(
    alg: &Algebroid,
    h: &SymTensor,
    trials: usize,
    seed: u64,
) -> Result<(Candidate, Report)> {
    let s = s_bracket(alg, h)?;
    if let Some((witness, residual)) = s_bracket_witness(alg, &s) {
        return Err(Error::SEquationFailed { witness, residual });
    }
    let dual = mult_from_h(alg, h)?;
    let cand = Candidate::new(alg.clone(), dual)?;
    let mut report = Report::new();
    report.absorb("A*", cand.astar.check_left_symmetric());
    if !report.passed() {
        return Ok((cand, report));
    }
    report.absorb("", check_bialgebroid(&cand, trials, seed)?);
    report.push(homomorphism_check(alg, h, &cand.astar));
    report.push(homo2_check(alg, h, &cand.astar));
    Ok((cand, report))
}

/// `H♯(ξ·_H η) = H♯ξ·H♯η` and `a_{A*} = a∘H♯` on basis covectors.
fn homomorphism_check(alg: &Algebroid, h: &SymTensor, dual: &Algebroid) -> Check {
    let r = alg.rank();
    for i in 0..r {
        let (xi, hxi) = (unit(r, i), h.sharp(&unit(r, i)));
        if dual.anchor(i) != &alg.anchor_of(&hxi) {
            return Check::fail("homomorphism", dual.label(i), "anchor mismatch");
        }
        for j in 0..r {
            let eta = unit(r, j);
            let diff = sub(
                &h.sharp(&dual.prod(&xi, &eta)),
                &alg.prod(&hxi, &h.sharp(&eta)),
            );
            if !is_zero_vec(&diff) {
                return Check::fail(
                    "homomorphism",
                    format_tuple(&[dual.label(i), dual.label(j)]),
                    alg.show(&diff),
                );
            }
        }
    }
    Check::pass("homomorphism")
}

/// `a[H♯ξ, x] = a(L*_ξ x - H♯(L*_x ξ))` on basis pairs.
fn homo2_check(alg: &Algebroid, h: &SymTensor, dual: &Algebroid) -> Check {
    let r = alg.rank();
    for i in 0..r {
        for j in 0..r {
            let (xi, x) = (unit(r, i), unit(r, j));
            let lhs = alg.anchor_of(&alg.br(&h.sharp(&xi), &x));
            let inner = sub(
                &dual.dual_apply(&xi, &x),
                &h.sharp(&alg.dual_apply(&x, &xi)),
            );
            let diff = lhs.sub(&alg.anchor_of(&inner));
            if !diff.is_zero() {
                return Check::fail(
                    "anchor-homomorphism",
                    format_tuple(&[dual.label(i), alg.label(j)]),
                    format_vector(alg.vars(), &diff.0, "∂"),
                );
            }
        }
    }
    Check::pass("anchor-homomorphism")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebroid::point_algebra;

    fn sym(rows: &[&[i64]]) -> SymTensor {
        SymTensor::new(
            Matrix::from_rows(
                rows.iter()
                    .map(|r| r.iter().map(|&v| Scalar::from_i64(v)).collect())
                    .collect(),
            )
            .unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn s_bracket_examples() {
        let a = point_algebra(2, &[(1, 1, 1, 1)]);
        assert!(s_bracket(&a, &sym(&[&[1, 0], &[0, 0]])).unwrap().is_zero());
        let s = s_bracket(&a, &sym(&[&[0, 1], &[1, 0]])).unwrap();
        assert_eq!(s.eval_basis(&[0, 1], 1), Scalar::one());
        let err = build_bialgebroid_from_h(&a, &sym(&[&[0, 1], &[1, 0]]), 2, 0).unwrap_err();
        assert_eq!(
            err,
            Error::SEquationFailed {
                witness: "(ε1, ε2, ε2)".into(),
                residual: "1".into()
            }
        );
    }

    #[test]
    fn dual_product_examples() {
        let a = point_algebra(2, &[(1, 1, 1, 1)]);
        let d = mult_from_h(&a, &sym(&[&[1, 0], &[0, 0]])).unwrap();
        assert_eq!(d.product(0, 0), &unit(2, 0));
        let z = mult_from_h(&a, &sym(&[&[0, 0], &[0, 0]])).unwrap();
        assert_eq!(
            z,
            Algebroid::abelian(Kind::LeftSymmetric, a.vars().clone(), 2)
                .with_labels(a.labels().swapped())
        );
    }

    #[test]
    fn equivalence_examples() {
        let a = point_algebra(2, &[(1, 1, 1, 1)]);
        let e = s_equation_equiv(&a, &sym(&[&[1, 0], &[0, 1]])).unwrap();
        assert!(e.bracket_vanishes && e.coboundary_vanishes);
        let e = s_equation_equiv(&a, &sym(&[&[0, 1], &[1, 0]])).unwrap();
        assert!(!e.bracket_vanishes && !e.coboundary_vanishes);
        assert!(e.report.passed());
        assert!(matches!(
            s_equation_equiv(&a, &sym(&[&[1, 0], &[0, 0]])),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn trivial_dual_is_bialgebroid() {
        let a = point_algebra(2, &[(1, 1, 1, 1)]);
        let c = Candidate::trivial_dual(a);
        assert!(check_bialgebroid(&c, 3, 0).unwrap().passed());
        assert!(check_anchor_compat(&c).passed());
    }
}
