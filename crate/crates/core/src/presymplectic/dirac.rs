//! Dirac structures, Manin triples and the graph of `H♯`.

use super::{BigSection, PreSymplectic};
use crate::algebroid::{add, describe_failure, pair, sub, Algebroid, Kind, Labels};
use crate::bialgebroid::{check_bialgebroid, s_bracket, Candidate, SymTensor};
use crate::calculus::coboundary_lsa;
use crate::calculus::tensor::{unit, Tensor};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::report::{format_tuple, Check, Report};
use crate::scalar::Scalar;

/// A subbundle of `E` spanned by the given sections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subbundle {
    pub sections: Vec<BigSection>,
}

impl Subbundle {
    pub fn new(sections: Vec<BigSection>) -> Self {
        Subbundle { sections }
    }

    pub fn len(&self) -> usize {
        self.sections.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sections.is_empty()
    }

    pub fn matrix(&self) -> Result<Matrix> {
        Matrix::from_rows(self.sections.clone())
    }

    /// `A = span{e_i}` inside `A ⊕ A*`.
    pub fn first_half(r: usize) -> Self {
        Subbundle::new((0..r).map(|i| unit(2 * r, i)).collect())
    }

    /// `A* = span{ε^i}` inside `A ⊕ A*`.
    pub fn second_half(r: usize) -> Self {
        Subbundle::new((0..r).map(|i| unit(2 * r, r + i)).collect())
    }

    /// `G_H = span{H♯ε^i + ε^i}`.
    pub fn graph(h: &SymTensor) -> Self {
        let r = h.size();
        Subbundle::new(
            (0..r)
                .map(|i| {
                    let mut s = h.sharp(&unit(r, i));
                    s.extend(unit(r, i));
                    s
                })
                .collect(),
        )
    }

    fn label(&self, i: usize) -> String {
        format!("s{}", i + 1)
    }
}

fn check_shape(e: &PreSymplectic, f: &Subbundle) -> Result<Matrix> {
    if f.is_empty() {
        return Err(Error::RankDeficient("subbundle has no sections".into()));
    }
    if f.sections.iter().any(|s| s.len() != e.dim()) {
        return Err(Error::ShapeMismatch(format!(
            "sections must have {} coordinates",
            e.dim()
        )));
    }
    let m = f.matrix()?;
    if m.rank() < f.len() {
        return Err(Error::RankDeficient(format!(
            "{} spanning sections have rank {}",
            f.len(),
            m.rank()
        )));
    }
    Ok(m)
}

type Table = Vec<Vec<Vec<Scalar>>>;

/// Coordinates of `s_i ⋆ s_j` in the spanning sections, or the first pair
/// whose product leaves the span.
fn induced_table(
    e: &PreSymplectic,
    f: &Subbundle,
    m: &Matrix,
) -> std::result::Result<Table, (usize, usize, BigSection)> {
    let k = f.len();
    let mut table = vec![vec![Vec::new(); k]; k];
    for i in 0..k {
        for j in 0..k {
            let p = e.st(&f.sections[i], &f.sections[j]);
            match m.solve_in_row_span(&p) {
                Some(c) => table[i][j] = c,
                None => return Err((i, j, p)),
            }
        }
    }
    Ok(table)
}

/// The left-symmetric structure `⋆|_F` on the spanning sections with anchor `ρ|_F`.
pub fn induced_structure(e: &PreSymplectic, f: &Subbundle, labels: Labels) -> Result<Algebroid> {
    let m = check_shape(e, f)?;
    let table = induced_table(e, f, &m).map_err(|(i, j, _)| {
        Error::InvalidStructure(format!(
            "{} ⋆ {} leaves the subbundle",
            f.label(i),
            f.label(j)
        ))
    })?;
    let anchor = f.sections.iter().map(|s| e.rho_of(s)).collect();
    Ok(Algebroid::new(
        Kind::LeftSymmetric,
        e.vars().clone(),
        f.len(),
        table,
        anchor,
    )?
    .with_labels(labels))
}

/// Maximal isotropy and closure under `⋆` on spanning sections.
pub fn check_dirac(e: &PreSymplectic, f: &Subbundle) -> Result<Report> {
    let m = check_shape(e, f)?;
    let k = f.len();
    let mut report = Report::new();
    report.push(if 2 * k == e.dim() {
        Check::pass("maximal")
    } else {
        Check::fail("maximal", "rank", format!("{k} of {}", e.dim()))
    });
    let mut iso = Check::pass("isotropic");
    'iso: for i in 0..k {
        for j in 0..k {
            let v = e.form(&f.sections[i], &f.sections[j]);
            if !v.is_zero() {
                iso = Check::fail(
                    "isotropic",
                    format_tuple(&[f.label(i), f.label(j)]),
                    e.vars().print(&v),
                );
                break 'iso;
            }
        }
    }
    report.push(iso);
    match induced_table(e, f, &m) {
        Ok(table) => {
            report.push(Check::pass("closed"));
            if report.passed() {
                let anchor = f.sections.iter().map(|s| e.rho_of(s)).collect();
                let labels = Labels {
                    section: "s".into(),
                    dual: "σ".into(),
                };
                let induced =
                    Algebroid::new(Kind::LeftSymmetric, e.vars().clone(), k, table, anchor)?
                        .with_labels(labels);
                report.absorb("induced", induced.check_left_symmetric());
            }
        }
        Err((i, j, p)) => report.push(Check::fail(
            "closed",
            format_tuple(&[f.label(i), f.label(j)]),
            e.show(&p),
        )),
    }
    Ok(report)
}

/// Two transversal Dirac structures.
pub fn check_manin(e: &PreSymplectic, l1: &Subbundle, l2: &Subbundle) -> Result<Report> {
    let mut report = Report::new();
    report.absorb("L1", check_dirac(e, l1)?);
    report.absorb("L2", check_dirac(e, l2)?);
    let mut rows = l1.sections.clone();
    rows.extend(l2.sections.iter().cloned());
    let stacked = Matrix::from_rows(rows)?;
    let det = if stacked.is_square() {
        stacked.det()?
    } else {
        Scalar::zero()
    };
    report.push(if det.is_zero() {
        Check::fail("transversal", "L1 ⊕ L2", "det = 0")
    } else {
        Check::pass("transversal")
    });
    Ok(report)
}

/// `(L1, L2)` with `L2` identified with `L1*` through `(·,·)₋`.
///
/// `L2` is rebased on `t' = P⁻¹t`, `P_ij = (t_i, s_j)₋`, so that
/// `(t'_i, s_j)₋ = δ_ij`.
pub fn split_to_bialgebroid(
    e: &PreSymplectic,
    l1: &Subbundle,
    l2: &Subbundle,
) -> Result<Candidate> {
    let report = check_manin(e, l1, l2)?;
    if !report.passed() {
        return Err(Error::InvalidStructure(format!(
            "not a Manin triple: {}",
            describe_failure(&report)
        )));
    }
    let r = l1.len();
    let p = Matrix::from_rows(
        (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| e.form(&l2.sections[i], &l1.sections[j]))
                    .collect()
            })
            .collect(),
    )?;
    let pinv = p.inverse()?;
    let rebased = Subbundle::new(
        (0..r)
            .map(|i| {
                (0..r).fold(vec![Scalar::zero(); e.dim()], |acc, k| {
                    add(
                        &acc,
                        &crate::algebroid::scale(&l2.sections[k], &pinv[(i, k)]),
                    )
                })
            })
            .collect(),
    );
    let a = induced_structure(e, l1, Labels::default())?;
    let astar = induced_structure(e, &rebased, Labels::default().swapped())?;
    Candidate::new(a, astar)
}

/// Outcome of comparing the Maurer–Cartan equation with the Dirac property of `G_H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaurerCartan {
    pub equation_holds: bool,
    pub graph_is_dirac: bool,
    pub residual: Tensor,
    pub report: Report,
}

/// `δ_*H(ζ,ξ,η)` expanded through `a_{A*}`, the product of `A*` and `H♯`.
pub fn dual_coboundary_expanded(
    c: &Candidate,
    h: &SymTensor,
    zeta: &[Scalar],
    xi: &[Scalar],
    eta: &[Scalar],
) -> Scalar {
    let (hz, hx, he) = (h.sharp(zeta), h.sharp(xi), h.sharp(eta));
    let d = &c.astar;
    d.anchor_of(zeta).apply(&pair(&hx, eta))
        - d.anchor_of(xi).apply(&pair(&hz, eta))
        - pair(&hx, &d.prod(zeta, eta))
        + pair(&hz, &d.prod(xi, eta))
        - pair(&d.br(zeta, xi), &he)
}

/// `⟨H♯(ξ·_{A*}η) - ℒ_ξH♯η + R_ηH♯ξ + d_*⟨H♯ξ,η⟩, ζ⟩`.
pub fn dual_coboundary_operator(
    c: &Candidate,
    h: &SymTensor,
    zeta: &[Scalar],
    xi: &[Scalar],
    eta: &[Scalar],
) -> Scalar {
    let d = &c.astar;
    let v = add(
        &sub(
            &h.sharp(&d.prod(xi, eta)),
            &d.lie_der_dual(xi, &h.sharp(eta)),
        ),
        &add(
            &d.right_dual(eta, &h.sharp(xi)),
            &d.d(&pair(&h.sharp(xi), eta)),
        ),
    );
    pair(&v, zeta)
}

/// Basis and generic affine verification of the pair.
pub(crate) fn require_bialgebroid(c: &Candidate) -> Result<()> {
    let report = check_bialgebroid(c, 0, 0)?;
    if report.passed() {
        Ok(())
    } else {
        Err(Error::InvalidStructure(format!(
            "not a bialgebroid: {}",
            describe_failure(&report)
        )))
    }
}

/// `⟦H,H⟧ - δ_*H` against the Dirac property of `G_H` in the double.
pub fn mc_check(c: &Candidate, h: &SymTensor) -> Result<MaurerCartan> {
    require_bialgebroid(c)?;
    let r = c.rank();
    if h.size() != r {
        return Err(Error::ShapeMismatch(format!(
            "H has size {} for rank {r}",
            h.size()
        )));
    }
    let s = s_bracket(&c.a, h)?;
    let dh = coboundary_lsa(&c.astar, &h.to_tensor())?;
    let residual = s.sub(&dh);
    let mut report = Report::new();

    let mut formula = Check::pass("coboundary-formula");
    'f: for z in 0..r {
        for x in 0..r {
            for y in 0..r {
                let (zu, xu, yu) = (unit(r, z), unit(r, x), unit(r, y));
                let direct = dh.eval(&[&zu, &xu], &yu);
                let a = dual_coboundary_expanded(c, h, &zu, &xu, &yu);
                let b = dual_coboundary_operator(c, h, &zu, &xu, &yu);
                if direct != a || direct != b {
                    formula = Check::fail(
                        "coboundary-formula",
                        format_tuple(&[c.astar.label(z), c.astar.label(x), c.astar.label(y)]),
                        format!(
                            "{} / {} / {}",
                            c.vars().print(&direct),
                            c.vars().print(&a),
                            c.vars().print(&b)
                        ),
                    );
                    break 'f;
                }
            }
        }
    }
    report.push(formula);

    let equation_holds = residual.is_zero();
    report.push(match residual.first_nonzero() {
        None => Check::pass("maurer-cartan"),
        Some(((w, k), v)) => Check::fail(
            "maurer-cartan",
            format_tuple(&[c.astar.label(w[0]), c.astar.label(w[1]), c.astar.label(*k)]),
            c.vars().print(v),
        ),
    });

    let e = PreSymplectic::double_unchecked(c);
    let dirac = check_dirac(&e, &Subbundle::graph(h))?;
    let graph_is_dirac = dirac.passed();
    report.push(if graph_is_dirac {
        Check::pass("graph-dirac")
    } else {
        let first = dirac.first_failure().cloned().expect("failing report");
        let w = first.witness.unwrap_or_else(|| crate::report::Witness {
            inputs: first.name.clone(),
            residual: String::new(),
        });
        Check::fail(
            "graph-dirac",
            format!("{}: {}", first.name, w.inputs),
            w.residual,
        )
    });
    report.push(if equation_holds == graph_is_dirac {
        Check::pass("agreement")
    } else {
        Check::fail(
            "agreement",
            "verdicts",
            format!("equation holds: {equation_holds}; graph is Dirac: {graph_is_dirac}"),
        )
    });
    Ok(MaurerCartan {
        equation_holds,
        graph_is_dirac,
        residual,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebroid::point_algebra;
    use crate::bialgebroid::build_bialgebroid_from_h;

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
    fn halves_are_dirac() {
        let a = point_algebra(2, &[(1, 1, 1, 1)]);
        let e = PreSymplectic::double_unchecked(&Candidate::trivial_dual(a));
        assert!(
            check_manin(&e, &Subbundle::first_half(2), &Subbundle::second_half(2))
                .unwrap()
                .passed()
        );
        let bad = Subbundle::new(vec![unit(4, 0), unit(4, 0)]);
        assert!(matches!(
            check_dirac(&e, &bad),
            Err(Error::RankDeficient(_))
        ));
    }

    #[test]
    fn split_recovers_the_pair() {
        let a = point_algebra(2, &[(1, 1, 1, 1)]);
        let c = Candidate::trivial_dual(a);
        let e = PreSymplectic::double_unchecked(&c);
        let back = split_to_bialgebroid(&e, &Subbundle::first_half(2), &Subbundle::second_half(2))
            .unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn maurer_cartan_examples() {
        let a = point_algebra(2, &[(1, 1, 1, 1)]);
        let c = Candidate::trivial_dual(a.clone());
        let good = mc_check(&c, &sym(&[&[1, 0], &[0, 0]])).unwrap();
        assert!(good.equation_holds && good.graph_is_dirac && good.report.passed());
        let bad = mc_check(&c, &sym(&[&[0, 1], &[1, 0]])).unwrap();
        assert!(!bad.equation_holds && !bad.graph_is_dirac);
        let w = bad
            .report
            .check("maurer-cartan")
            .unwrap()
            .witness
            .clone()
            .unwrap();
        assert_eq!(
            (w.inputs.as_str(), w.residual.as_str()),
            ("(ε1, ε2, ε2)", "1")
        );
        assert!(bad.report.check("agreement").unwrap().passed);

        let (nontrivial, _) =
            build_bialgebroid_from_h(&a, &sym(&[&[1, 0], &[0, 0]]), 0, 0).unwrap();
        for h in [
            sym(&[&[1, 0], &[0, 0]]),
            sym(&[&[0, 1], &[1, 0]]),
            sym(&[&[2, 1], &[1, -1]]),
        ] {
            let m = mc_check(&nontrivial, &h).unwrap();
            assert!(
                m.report.check("agreement").unwrap().passed,
                "{:?}",
                m.report
            );
            assert!(
                m.report.check("coboundary-formula").unwrap().passed,
                "{:?}",
                m.report
            );
        }
    }
}
