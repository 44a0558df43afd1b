//! Flat torsion-free connections, pseudo-Hessian metrics and the Hessian
//! bialgebroid `(T∇M, T*_H M)` with its double.

use crate::algebroid::{describe_failure, Algebroid, Kind, Labels};
use crate::bialgebroid::{build_bialgebroid_from_h, s_equation_equiv, Candidate, SymTensor};
use crate::calculus::coboundary_lsa;
use crate::calculus::tensor::unit;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::Var;
use crate::presymplectic::{check_presymplectic, PreSymplectic};
use crate::report::{format_tuple, Check, Report};
use crate::scalar::{Scalar, Vars, VectorField};

fn tangent_labels() -> Labels {
    Labels {
        section: "∂".into(),
        dual: "dx".into(),
    }
}

fn tuple(idx: &[usize]) -> String {
    format_tuple(
        &idx.iter()
            .map(|i| format!("∂{}", i + 1))
            .collect::<Vec<_>>(),
    )
}

/// `∇_{∂i}∂j = Σ_k Γ_{ij}^k ∂k` on the coordinate frame.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatConnection {
    vars: Vars,
    gamma: Vec<Vec<Vec<Scalar>>>,
}

impl FlatConnection {
    /// The coordinate connection, all `Γ = 0`.
    pub fn coordinate(vars: Vars) -> Self {
        let n = vars.base_count();
        FlatConnection {
            vars,
            gamma: vec![vec![vec![Scalar::zero(); n]; n]; n],
        }
    }

    pub fn new(vars: Vars, gamma: Vec<Vec<Vec<Scalar>>>) -> Result<Self> {
        let n = vars.base_count();
        if gamma.len() != n
            || gamma
                .iter()
                .any(|row| row.len() != n || row.iter().any(|v| v.len() != n))
        {
            return Err(Error::ShapeMismatch(format!(
                "Christoffel symbols must be {n}x{n}x{n}"
            )));
        }
        let c = FlatConnection { vars, gamma };
        for i in 0..n {
            for j in i + 1..n {
                if c.gamma[i][j] != c.gamma[j][i] {
                    return Err(Error::NotTorsionFree(format!(
                        "Γ_{}{} ≠ Γ_{}{}",
                        i + 1,
                        j + 1,
                        j + 1,
                        i + 1
                    )));
                }
            }
        }
        if let Some(((i, j, l, p), v)) = c.curvature_witness() {
            return Err(Error::NotFlat(format!(
                "R(∂{}, ∂{})∂{} has ∂{} component {}",
                i + 1,
                j + 1,
                l + 1,
                p + 1,
                c.vars.print(&v)
            )));
        }
        Ok(c)
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn dim(&self) -> usize {
        self.vars.base_count()
    }

    pub fn gamma(&self, i: usize, j: usize) -> &[Scalar] {
        &self.gamma[i][j]
    }

    /// `R_{ijl}^p = ∂iΓ_{jl}^p - ∂jΓ_{il}^p + Σ_m (Γ_{jl}^m Γ_{im}^p - Γ_{il}^m Γ_{jm}^p)`.
    pub fn curvature(&self, i: usize, j: usize, l: usize, p: usize) -> Scalar {
        let g = &self.gamma;
        let mut v = g[j][l][p].derive(i as Var) - g[i][l][p].derive(j as Var);
        for m in 0..self.dim() {
            v += &g[j][l][m] * &g[i][m][p];
            v -= &g[i][l][m] * &g[j][m][p];
        }
        v
    }

    fn curvature_witness(&self) -> Option<((usize, usize, usize, usize), Scalar)> {
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                for l in 0..n {
                    for p in 0..n {
                        let v = self.curvature(i, j, l, p);
                        if !v.is_zero() {
                            return Some(((i, j, l, p), v));
                        }
                    }
                }
            }
        }
        None
    }
}

/// `(TM, ∇, id)` with `∂i·∂j = Σ Γ_{ij}^k ∂k`.
pub fn connection_algebroid(conn: &FlatConnection) -> Algebroid {
    let n = conn.dim();
    let anchor = (0..n).map(|i| VectorField::coordinate(n, i)).collect();
    Algebroid::new(
        Kind::LeftSymmetric,
        conn.vars.clone(),
        n,
        conn.gamma.clone(),
        anchor,
    )
    .expect("connection tables are square")
    .with_labels(tangent_labels())
}

/// `g_{ij} = ∂²φ/∂x^i∂x^j`.
pub fn hessian_metric(phi: &Scalar, vars: &Vars) -> Result<SymTensor> {
    if !phi.is_polynomial() {
        return Err(Error::InvalidStructure(
            "potential must be a polynomial".into(),
        ));
    }
    let n = vars.base_count();
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| phi.derive(i as Var).derive(j as Var))
                .collect()
        })
        .collect();
    let g = SymTensor::new(Matrix::from_rows(rows)?)?;
    if g.det().is_zero() {
        return Err(Error::Degenerate(
            "Hessian determinant vanishes identically".into(),
        ));
    }
    Ok(g)
}

/// `(∇_{∂i}g)(∂j,∂k) - (∇_{∂j}g)(∂i,∂k)`.
pub fn codazzi(conn: &FlatConnection, g: &SymTensor, i: usize, j: usize, k: usize) -> Scalar {
    let m = g.matrix();
    let nabla = |a: usize, b: usize, c: usize| {
        let mut v = m[(b, c)].derive(a as Var);
        for s in 0..conn.dim() {
            v -= &conn.gamma[a][b][s] * &m[(s, c)];
            v -= &conn.gamma[a][c][s] * &m[(b, s)];
        }
        v
    };
    nabla(i, j, k) - nabla(j, i, k)
}

/// `δg = 0` against the Codazzi condition; passes iff both vanish, and
/// records whether the verdicts agree.
pub fn check_pseudo_hessian(conn: &FlatConnection, g: &SymTensor) -> Result<Report> {
    let n = conn.dim();
    if g.size() != n {
        return Err(Error::ShapeMismatch(format!(
            "metric has size {} on {n} variables",
            g.size()
        )));
    }
    let alg = connection_algebroid(conn);
    let dg = coboundary_lsa(&alg, &g.to_tensor())?;
    let mut report = Report::new();
    let coboundary = match dg.first_nonzero() {
        None => Check::pass("coboundary"),
        Some(((w, k), v)) => {
            Check::fail("coboundary", tuple(&[w[0], w[1], *k]), conn.vars.print(v))
        }
    };
    let mut cod = Check::pass("codazzi");
    'outer: for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                let v = codazzi(conn, g, i, j, k);
                if !v.is_zero() {
                    cod = Check::fail("codazzi", tuple(&[i, j, k]), conn.vars.print(&v));
                    break 'outer;
                }
            }
        }
    }
    let agree = coboundary.passed == cod.passed;
    report.push(coboundary);
    report.push(cod);
    report.push(if agree {
        Check::pass("agreement")
    } else {
        Check::fail("agreement", "verdicts", "δg and Codazzi disagree")
    });
    Ok(report)
}

/// `(T∇M, T*_H M)` with `H = g⁻¹`, verified by the bialgebroid checks.
pub fn hessian_bialgebroid(
    conn: &FlatConnection,
    g: &SymTensor,
    trials: usize,
    seed: u64,
) -> Result<(Candidate, Report)> {
    let pre = check_pseudo_hessian(conn, g)?;
    if !pre.passed() {
        return Err(Error::NotHessian(describe_failure(&pre)));
    }
    if g.det().is_zero() {
        return Err(Error::Degenerate("det g = 0".into()));
    }
    let h = g.inverse()?;
    let alg = connection_algebroid(conn);
    let (cand, mut report) = build_bialgebroid_from_h(&alg, &h, trials, seed)?;
    report.absorb("", s_equation_equiv(&alg, &h)?.report);
    let n = conn.dim();
    let mut anchor = Check::pass("dual-anchor");
    for i in 0..n {
        if cand.astar.anchor(i) != &alg.anchor_of(&h.sharp(&unit(n, i))) {
            anchor = Check::fail("dual-anchor", format!("dx{}", i + 1), "a* ≠ a∘H♯");
            break;
        }
    }
    report.push(anchor);
    Ok((cand, report))
}

/// `(TM ⊕ T*M, ⋆, id + H♯, (·,·)₋)` with its axiom checks.
pub fn hessian_double(
    conn: &FlatConnection,
    g: &SymTensor,
    trials: usize,
    seed: u64,
) -> Result<(PreSymplectic, Report)> {
    let (cand, mut report) = hessian_bialgebroid(conn, g, trials, seed)?;
    let e = PreSymplectic::double_unchecked(&cand);
    report.absorb("double", check_presymplectic(&e, trials, seed));
    Ok((e, report))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn metric(vars: &Vars, rows: &[&[&str]]) -> SymTensor {
        SymTensor::new(
            Matrix::from_rows(
                rows.iter()
                    .map(|r| r.iter().map(|s| vars.parse(s).unwrap()).collect())
                    .collect(),
            )
            .unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn hessian_of_cubic() {
        let v = Vars::coordinates(2);
        let g = hessian_metric(&v.parse("x1^2*x2/2").unwrap(), &v).unwrap();
        assert_eq!(g, metric(&v, &[&["x2", "x1"], &["x1", "0"]]));
        assert_eq!(g.det(), v.parse("-x1^2").unwrap());
        assert!(matches!(
            hessian_metric(&v.parse("x1").unwrap(), &v),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn negative_control() {
        let v = Vars::coordinates(2);
        let conn = FlatConnection::coordinate(v.clone());
        let rep = check_pseudo_hessian(&conn, &metric(&v, &[&["1", "0"], &["0", "x1"]])).unwrap();
        let w = rep.check("coboundary").unwrap().witness.clone().unwrap();
        assert_eq!(
            (w.inputs.as_str(), w.residual.as_str()),
            ("(∂1, ∂2, ∂2)", "1")
        );
        assert!(!rep.check("codazzi").unwrap().passed);
        assert!(rep.check("agreement").unwrap().passed);
    }

    #[test]
    fn connection_checks() {
        let v = Vars::coordinates(1);
        let c = FlatConnection::new(v.clone(), vec![vec![vec![Scalar::one()]]]).unwrap();
        assert!(connection_algebroid(&c).check_left_symmetric().passed());
        let v2 = Vars::coordinates(2);
        let z = Scalar::zero;
        let skew = vec![
            vec![vec![z(), z()], vec![Scalar::one(), z()]],
            vec![vec![z(), z()], vec![z(), z()]],
        ];
        assert!(matches!(
            FlatConnection::new(v2.clone(), skew),
            Err(Error::NotTorsionFree(_))
        ));
        let x1 = v2.parse("x1").unwrap();
        let curved = vec![
            vec![vec![z(), z()], vec![z(), z()]],
            vec![vec![z(), z()], vec![x1, z()]],
        ];
        assert!(matches!(
            FlatConnection::new(v2, curved),
            Err(Error::NotFlat(_))
        ));
    }

    #[test]
    fn one_dimensional_pipelines() {
        let v = Vars::coordinates(1);
        let conn = FlatConnection::coordinate(v.clone());
        for phi in ["x1^2/2", "x1^3/6"] {
            let g = hessian_metric(&v.parse(phi).unwrap(), &v).unwrap();
            let (e, rep) = hessian_double(&conn, &g, 2, 0).unwrap();
            assert!(rep.passed(), "{phi}: {rep:?}");
            assert_eq!(e.dim(), 2);
        }
        let g = hessian_metric(&v.parse("x1^3/6").unwrap(), &v).unwrap();
        let (c, _) = hessian_bialgebroid(&conn, &g, 0, 0).unwrap();
        assert_eq!(
            c.astar.anchor(0),
            &VectorField(vec![v.parse("1/x1").unwrap()])
        );
    }
}
