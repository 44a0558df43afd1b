//! Left-symmetric algebroids and Lie algebroids given on a frame.
//!
//! Products are stored on basis sections only; values on sections with
//! function coefficients come from the Leibniz rules
//! `x·(fy) = f x·y + a(x)(f) y` and `(fx)·y = f x·y`.

use crate::calculus::tensor::{unit, Tensor};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::report::{format_tuple, format_vector, Check, Report};
use crate::scalar::{Scalar, Vars, VectorField};

pub type Section = Vec<Scalar>;
pub type Covector = Vec<Scalar>;
pub type OperatorMatrix = Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    LeftSymmetric,
    Lie,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::LeftSymmetric => "left-symmetric",
            Kind::Lie => "lie",
        }
    }
}

/// Basis symbols used when printing witnesses, such as `e` and `ε`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Labels {
    pub section: String,
    pub dual: String,
}

impl Default for Labels {
    fn default() -> Self {
        Labels {
            section: "e".into(),
            dual: "ε".into(),
        }
    }
}

impl Labels {
    pub fn swapped(&self) -> Labels {
        Labels {
            section: self.dual.clone(),
            dual: self.section.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebroid {
    kind: Kind,
    vars: Vars,
    rank: usize,
    /// `table[i][j]` holds the coordinates of `e_i ∘ e_j`.
    table: Vec<Vec<Section>>,
    anchor: Vec<VectorField>,
    labels: Labels,
}

impl Algebroid {
    pub fn new(
        kind: Kind,
        vars: Vars,
        rank: usize,
        table: Vec<Vec<Section>>,
        anchor: Vec<VectorField>,
    ) -> Result<Self> {
        let n = vars.base_count();
        if table.len() != rank
            || table
                .iter()
                .any(|row| row.len() != rank || row.iter().any(|v| v.len() != rank))
        {
            return Err(Error::ShapeMismatch(format!(
                "product table must be {rank}x{rank}x{rank}"
            )));
        }
        if anchor.len() != rank || anchor.iter().any(|a| a.dim() != n) {
            return Err(Error::ShapeMismatch(format!(
                "anchor must have {rank} vector fields with {n} components"
            )));
        }
        if kind == Kind::Lie {
            for i in 0..rank {
                for j in 0..rank {
                    for k in 0..rank {
                        if table[i][j][k] != -&table[j][i][k] {
                            return Err(Error::InvalidStructure(format!(
                                "Lie bracket coefficients not skew at ({}, {}; {})",
                                i + 1,
                                j + 1,
                                k + 1
                            )));
                        }
                    }
                }
            }
        }
        Ok(Algebroid {
            kind,
            vars,
            rank,
            table,
            anchor,
            labels: Labels::default(),
        })
    }

    /// Zero products and zero anchor.
    pub fn abelian(kind: Kind, vars: Vars, rank: usize) -> Self {
        let n = vars.base_count();
        Algebroid {
            kind,
            vars,
            rank,
            table: vec![vec![vec![Scalar::zero(); rank]; rank]; rank],
            anchor: vec![VectorField::zero(n); rank],
            labels: Labels::default(),
        }
    }

    pub fn with_labels(mut self, labels: Labels) -> Self {
        self.labels = labels;
        self
    }

    pub fn labels(&self) -> &Labels {
        &self.labels
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn nbase(&self) -> usize {
        self.vars.base_count()
    }

    pub fn product(&self, i: usize, j: usize) -> &Section {
        &self.table[i][j]
    }

    pub fn table(&self) -> &Vec<Vec<Section>> {
        &self.table
    }

    pub fn anchor(&self, i: usize) -> &VectorField {
        &self.anchor[i]
    }

    pub fn anchors(&self) -> &[VectorField] {
        &self.anchor
    }

    pub fn set_product(&mut self, i: usize, j: usize, v: Section) {
        assert_eq!(v.len(), self.rank);
        self.table[i][j] = v;
    }

    pub fn set_anchor(&mut self, i: usize, v: VectorField) {
        assert_eq!(v.dim(), self.nbase());
        self.anchor[i] = v;
    }

    pub fn basis(&self, i: usize) -> Section {
        unit(self.rank, i)
    }

    pub fn zero_section(&self) -> Section {
        vec![Scalar::zero(); self.rank]
    }

    pub fn label(&self, i: usize) -> String {
        format!("{}{}", self.labels.section, i + 1)
    }

    pub fn dual_label(&self, i: usize) -> String {
        format!("{}{}", self.labels.dual, i + 1)
    }

    pub fn show(&self, v: &[Scalar]) -> String {
        format_vector(&self.vars, v, &self.labels.section)
    }

    pub fn show_dual(&self, v: &[Scalar]) -> String {
        format_vector(&self.vars, v, &self.labels.dual)
    }

    pub fn show_scalar(&self, s: &Scalar) -> String {
        self.vars.print(s)
    }

    fn check_shape(&self, v: &[Scalar]) -> Result<()> {
        if v.len() != self.rank {
            return Err(Error::ShapeMismatch(format!(
                "expected {} coordinates, got {}",
                self.rank,
                v.len()
            )));
        }
        Ok(())
    }

    /// Coefficients of the sub-adjacent (or given) Lie bracket on basis sections.
    pub fn bracket_coeff(&self, i: usize, j: usize) -> Section {
        match self.kind {
            Kind::Lie => self.table[i][j].clone(),
            Kind::LeftSymmetric => sub(&self.table[i][j], &self.table[j][i]),
        }
    }

    pub fn anchor_of(&self, x: &[Scalar]) -> VectorField {
        let mut v = VectorField::zero(self.nbase());
        for (i, c) in x.iter().enumerate() {
            if !c.is_zero() && !self.anchor[i].is_zero() {
                v = v.add(&self.anchor[i].scale(c));
            }
        }
        v
    }

    /// `a(x)` applied componentwise to a vector of functions.
    pub fn anchor_apply(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let a = self.anchor_of(x);
        if a.is_zero() {
            return vec![Scalar::zero(); y.len()];
        }
        y.iter().map(|f| a.apply(f)).collect()
    }

    /// `Σ x_i y_j (table entry)`, with no derivative terms.
    fn bilinear(
        &self,
        x: &[Scalar],
        y: &[Scalar],
        coeff: impl Fn(usize, usize) -> Section,
    ) -> Section {
        let mut out = self.zero_section();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = coeff(i, j);
                if c.iter().all(Scalar::is_zero) {
                    continue;
                }
                let f = xi * yj;
                for (o, ck) in out.iter_mut().zip(&c) {
                    if !ck.is_zero() {
                        *o += &f * ck;
                    }
                }
            }
        }
        out
    }

    /// `x·y`, or the bracket for a Lie algebroid. Shapes are not checked.
    pub fn prod(&self, x: &[Scalar], y: &[Scalar]) -> Section {
        if self.kind == Kind::Lie {
            return self.br(x, y);
        }
        let base = self.bilinear(x, y, |i, j| self.table[i][j].clone());
        add(&base, &self.anchor_apply(x, y))
    }

    /// The Lie bracket (commutator for the left-symmetric kind). Shapes are not checked.
    pub fn br(&self, x: &[Scalar], y: &[Scalar]) -> Section {
        let base = self.bilinear(x, y, |i, j| self.bracket_coeff(i, j));
        let d = sub(&self.anchor_apply(x, y), &self.anchor_apply(y, x));
        add(&base, &d)
    }

    pub fn multiply(&self, x: &[Scalar], y: &[Scalar]) -> Result<Section> {
        if self.kind != Kind::LeftSymmetric {
            return Err(Error::InvalidStructure(
                "multiply needs a left-symmetric structure".into(),
            ));
        }
        self.check_shape(x)?;
        self.check_shape(y)?;
        Ok(self.prod(x, y))
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<Section> {
        self.check_shape(x)?;
        self.check_shape(y)?;
        Ok(self.br(x, y))
    }

    pub fn associator(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Result<Section> {
        if self.kind != Kind::LeftSymmetric {
            return Err(Error::InvalidStructure(
                "associator needs a left-symmetric structure".into(),
            ));
        }
        for v in [x, y, z] {
            self.check_shape(v)?;
        }
        Ok(self.assoc(x, y, z))
    }

    pub fn assoc(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Section {
        sub(
            &self.prod(x, &self.prod(y, z)),
            &self.prod(&self.prod(x, y), z),
        )
    }

    /// `d_M f` for the sub-adjacent Lie algebroid: `(d f)_j = a(e_j)(f)`.
    pub fn d(&self, f: &Scalar) -> Covector {
        self.anchor.iter().map(|a| a.apply(f)).collect()
    }

    /// `L*_x ξ`: `⟨L*_x ξ, y⟩ = a(x)⟨ξ, y⟩ - ⟨ξ, x·y⟩`.
    pub fn dual_apply(&self, x: &[Scalar], xi: &[Scalar]) -> Covector {
        let a = self.anchor_apply(x, xi);
        let left = self.left_op(x);
        let mut out = a;
        for j in 0..self.rank {
            for k in 0..self.rank {
                let m = &left[(k, j)];
                if !m.is_zero() && !xi[k].is_zero() {
                    out[j] -= m * &xi[k];
                }
            }
        }
        out
    }

    /// `ℒ_x ξ` for the sub-adjacent Lie algebroid:
    /// `⟨ℒ_x ξ, y⟩ = a(x)⟨ξ, y⟩ - ⟨ξ, [x, y]⟩`.
    pub fn lie_der_dual(&self, x: &[Scalar], xi: &[Scalar]) -> Covector {
        (0..self.rank)
            .map(|j| {
                let ej = self.basis(j);
                let a = self.anchor_of(x).apply(&xi[j]);
                a - pair(xi, &self.br(x, &ej))
            })
            .collect()
    }

    /// `R_x ξ`: `⟨R_x ξ, y⟩ = -⟨ξ, y·x⟩`.
    pub fn right_dual(&self, x: &[Scalar], xi: &[Scalar]) -> Covector {
        (0..self.rank)
            .map(|j| -pair(xi, &self.prod(&self.basis(j), x)))
            .collect()
    }

    /// Matrix of `e_j ↦ x·e_j` on basis coordinates (column `j`).
    pub fn left_op(&self, x: &[Scalar]) -> OperatorMatrix {
        let mut m = Matrix::zeros(self.rank, self.rank);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for j in 0..self.rank {
                for k in 0..self.rank {
                    let c = &self.table[i][j][k];
                    if !c.is_zero() {
                        m[(k, j)] += xi * c;
                    }
                }
            }
        }
        m
    }

    /// Matrix of `e_j ↦ e_j·x` on basis coordinates, without anchor terms.
    pub fn right_op(&self, x: &[Scalar]) -> OperatorMatrix {
        let mut m = Matrix::zeros(self.rank, self.rank);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for j in 0..self.rank {
                for k in 0..self.rank {
                    let c = &self.table[j][i][k];
                    if !c.is_zero() {
                        m[(k, j)] += xi * c;
                    }
                }
            }
        }
        m
    }

    /// Matrix of `ξ ↦ L*_x ξ` without the anchor term: `-(left_op x)ᵀ`.
    pub fn dual_left_op(&self, x: &[Scalar]) -> OperatorMatrix {
        let l = self.left_op(x).transpose();
        let mut m = Matrix::zeros(self.rank, self.rank);
        for i in 0..self.rank {
            for j in 0..self.rank {
                m[(i, j)] = -&l[(i, j)];
            }
        }
        m
    }

    fn anchor_morphism_check(&self, report: &mut Report) {
        for i in 0..self.rank {
            for j in i + 1..self.rank {
                let lhs = self.anchor[i].commutator(&self.anchor[j]);
                let rhs = self.anchor_of(&self.bracket_coeff(i, j));
                let diff = lhs.sub(&rhs);
                if !diff.is_zero() {
                    report.push(Check::fail(
                        "anchor-morphism",
                        format_tuple(&[self.label(i), self.label(j)]),
                        format_vector(&self.vars, &diff.0, "∂"),
                    ));
                    return;
                }
            }
        }
        report.push(Check::pass("anchor-morphism"));
    }

    /// Associator symmetry on basis triples and the anchor morphism property.
    pub fn check_left_symmetric(&self) -> Report {
        let mut report = Report::new();
        if self.kind != Kind::LeftSymmetric {
            report.push(Check::fail("kind", "structure", "not left-symmetric"));
            return report;
        }
        let mut failure = None;
        'outer: for i in 0..self.rank {
            for j in i + 1..self.rank {
                for k in 0..self.rank {
                    let (ei, ej, ek) = (self.basis(i), self.basis(j), self.basis(k));
                    let diff = sub(&self.assoc(&ei, &ej, &ek), &self.assoc(&ej, &ei, &ek));
                    if diff.iter().any(|c| !c.is_zero()) {
                        failure = Some(Check::fail(
                            "associator-symmetry",
                            format_tuple(&[self.label(i), self.label(j), self.label(k)]),
                            self.show(&diff),
                        ));
                        break 'outer;
                    }
                }
            }
        }
        report.push(failure.unwrap_or_else(|| Check::pass("associator-symmetry")));
        self.anchor_morphism_check(&mut report);
        report
    }

    /// Skew-symmetry, Jacobi identity on basis triples, anchor morphism.
    pub fn check_lie_algebroid(&self) -> Report {
        let mut report = Report::new();
        if self.kind != Kind::Lie {
            report.push(Check::fail("kind", "structure", "not a Lie algebroid"));
            return report;
        }
        report.push(Check::pass("skew-symmetry"));
        let mut failure = None;
        'outer: for i in 0..self.rank {
            for j in i + 1..self.rank {
                for k in j + 1..self.rank {
                    let (x, y, z) = (self.basis(i), self.basis(j), self.basis(k));
                    let jac = add(
                        &add(
                            &self.br(&x, &self.br(&y, &z)),
                            &self.br(&y, &self.br(&z, &x)),
                        ),
                        &self.br(&z, &self.br(&x, &y)),
                    );
                    if jac.iter().any(|c| !c.is_zero()) {
                        failure = Some(Check::fail(
                            "jacobi",
                            format_tuple(&[self.label(i), self.label(j), self.label(k)]),
                            self.show(&jac),
                        ));
                        break 'outer;
                    }
                }
            }
        }
        report.push(failure.unwrap_or_else(|| Check::pass("jacobi")));
        self.anchor_morphism_check(&mut report);
        report
    }

    /// The commutator Lie algebroid.
    pub fn sub_adjacent(&self) -> Result<Algebroid> {
        let report = self.check_left_symmetric();
        if !report.passed() {
            return Err(Error::InvalidStructure(describe_failure(&report)));
        }
        Ok(self.commutator_algebroid())
    }

    /// Commutator bracket with the same anchor, without validating axioms.
    pub fn commutator_algebroid(&self) -> Algebroid {
        let table = (0..self.rank)
            .map(|i| (0..self.rank).map(|j| self.bracket_coeff(i, j)).collect())
            .collect();
        Algebroid {
            kind: Kind::Lie,
            vars: self.vars.clone(),
            rank: self.rank,
            table,
            anchor: self.anchor.clone(),
            labels: self.labels.clone(),
        }
    }

    /// The representation condition for `(ρ, μ)` on a bundle of rank `m`.
    /// `rho[i]` and `mu[i]` are the matrices of `ρ(e_i)` and `μ(e_i)`; `ρ(e_i)`
    /// also differentiates coefficients through the anchor.
    pub fn check_representation(
        &self,
        rho: &[OperatorMatrix],
        mu: &[OperatorMatrix],
    ) -> Result<Report> {
        if rho.len() != self.rank || mu.len() != self.rank {
            return Err(Error::ShapeMismatch(
                "one operator per basis section".into(),
            ));
        }
        let m = rho.first().map(Matrix::rows).unwrap_or(0);
        if rho
            .iter()
            .chain(mu)
            .any(|op| op.rows() != m || op.cols() != m)
        {
            return Err(Error::ShapeMismatch(
                "operators must share a square size".into(),
            ));
        }
        let rho_of = |x: &[Scalar], s: &[Scalar]| -> Vec<Scalar> {
            let mut out = self.anchor_apply(x, s);
            for (i, xi) in x.iter().enumerate() {
                if !xi.is_zero() {
                    out = add(&out, &scale(&rho[i].apply(s), xi));
                }
            }
            out
        };
        let mu_of = |x: &[Scalar], s: &[Scalar]| -> Vec<Scalar> {
            let mut out = vec![Scalar::zero(); m];
            for (i, xi) in x.iter().enumerate() {
                if !xi.is_zero() {
                    out = add(&out, &scale(&mu[i].apply(s), xi));
                }
            }
            out
        };
        for i in 0..self.rank {
            for j in 0..self.rank {
                for a in 0..m {
                    let (ei, ej, s) = (self.basis(i), self.basis(j), unit(m, a));
                    let lhs = sub(
                        &rho_of(&ei, &rho_of(&ej, &s)),
                        &rho_of(&ej, &rho_of(&ei, &s)),
                    );
                    let rhs = rho_of(&self.br(&ei, &ej), &s);
                    if lhs != rhs {
                        return Err(Error::InvalidStructure(format!(
                            "ρ is not flat at ({}, {})",
                            self.label(i),
                            self.label(j)
                        )));
                    }
                }
            }
        }
        let mut report = Report::new();
        for i in 0..self.rank {
            for j in 0..self.rank {
                for a in 0..m {
                    let (ei, ej, s) = (self.basis(i), self.basis(j), unit(m, a));
                    let lhs = sub(&rho_of(&ei, &mu_of(&ej, &s)), &mu_of(&ej, &rho_of(&ei, &s)));
                    let rhs = sub(
                        &mu_of(&self.prod(&ei, &ej), &s),
                        &mu_of(&ej, &mu_of(&ei, &s)),
                    );
                    let diff = sub(&lhs, &rhs);
                    if diff.iter().any(|c| !c.is_zero()) {
                        report.push(Check::fail(
                            "representation",
                            format!("({}, {}, s{})", self.label(i), self.label(j), a + 1),
                            format_vector(&self.vars, &diff, "s"),
                        ));
                        return Ok(report);
                    }
                }
            }
        }
        report.push(Check::pass("representation"));
        Ok(report)
    }

    /// `A^c ⋉_{L*} A*` with `ω(x+ξ, y+η) = ⟨ξ, y⟩ - ⟨η, x⟩`.
    pub fn semidirect_symplectic(&self) -> Result<(Algebroid, Tensor)> {
        let report = self.check_left_symmetric();
        if !report.passed() {
            return Err(Error::InvalidStructure(describe_failure(&report)));
        }
        let r = self.rank;
        let n2 = 2 * r;
        let mut table = vec![vec![vec![Scalar::zero(); n2]; n2]; n2];
        for i in 0..r {
            for j in 0..r {
                let b = self.bracket_coeff(i, j);
                table[i][j][..r].clone_from_slice(&b);
                let l = self.dual_apply(&self.basis(i), &self.basis(j));
                for k in 0..r {
                    table[i][r + j][r + k] = l[k].clone();
                    table[r + j][i][r + k] = -&l[k];
                }
            }
        }
        let mut anchor = self.anchor.clone();
        anchor.extend(std::iter::repeat_n(VectorField::zero(self.nbase()), r));
        let lie = Algebroid::new(Kind::Lie, self.vars.clone(), n2, table, anchor)?;
        Ok((lie, Tensor::from_matrix(&standard_omega(r))))
    }
}

/// `[[0, -I], [I, 0]]`: the matrix of `ω(x+ξ, y+η) = ⟨ξ, y⟩ - ⟨η, x⟩`.
pub fn standard_omega(r: usize) -> Matrix {
    let mut m = Matrix::zeros(2 * r, 2 * r);
    for i in 0..r {
        m[(i, r + i)] = Scalar::from_i64(-1);
        m[(r + i, i)] = Scalar::one();
    }
    m
}

pub fn describe_failure(report: &Report) -> String {
    match report.first_failure() {
        Some(c) => match &c.witness {
            Some(w) => format!("{} fails at {}: {}", c.name, w.inputs, w.residual),
            None => format!("{} fails", c.name),
        },
        None => "no failure".into(),
    }
}

pub fn add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[Scalar], f: &Scalar) -> Vec<Scalar> {
    a.iter().map(|x| x * f).collect()
}

pub fn neg(a: &[Scalar]) -> Vec<Scalar> {
    a.iter().map(|x| -x).collect()
}

pub fn pair(a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut acc = Scalar::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

pub fn is_zero_vec(a: &[Scalar]) -> bool {
    a.iter().all(Scalar::is_zero)
}

/// Point algebra (no base variables) from sparse integer products
/// `(i, j, k, c)` meaning `e_i·e_j` gets `c e_k`, 1-based.
pub fn point_algebra(rank: usize, products: &[(usize, usize, usize, i64)]) -> Algebroid {
    let mut a = Algebroid::abelian(Kind::LeftSymmetric, Vars::coordinates(0), rank);
    for &(i, j, k, c) in products {
        a.table[i - 1][j - 1][k - 1] += Scalar::from_i64(c);
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tr() -> Algebroid {
        // T∇R: rank 1, zero products, a(e) = ∂/∂x.
        let mut a = Algebroid::abelian(Kind::LeftSymmetric, Vars::coordinates(1), 1);
        a.set_anchor(0, VectorField::coordinate(1, 0));
        a
    }

    fn s(text: &str, v: &Vars) -> Scalar {
        v.parse(text).unwrap()
    }

    #[test]
    fn leibniz_rules_on_the_line() {
        let a = tr();
        let v = a.vars().clone();
        let e = vec![Scalar::one()];
        let xe = vec![s("x1", &v)];
        assert_eq!(a.multiply(&e, &xe).unwrap(), e);
        assert_eq!(a.multiply(&xe, &e).unwrap(), vec![Scalar::zero()]);
        let f = s("x1^2 + 1", &v);
        let g = s("x1^3", &v);
        assert_eq!(
            a.multiply(std::slice::from_ref(&f), &[g]).unwrap(),
            vec![s("3*x1^2*(x1^2+1)", &v)]
        );
    }

    #[test]
    fn point_algebra_checks() {
        let ok = point_algebra(2, &[(1, 1, 1, 1)]);
        assert!(ok.check_left_symmetric().passed());
        let bad = point_algebra(2, &[(1, 2, 1, 1), (2, 1, 2, 1)]);
        let r = bad.check_left_symmetric();
        let w = r.first_failure().unwrap().witness.clone().unwrap();
        assert_eq!(w.inputs, "(e1, e2, e1)");
        assert_eq!(w.residual, "e1 + e2");
    }

    #[test]
    fn so3_is_lie() {
        let mut t = vec![vec![vec![Scalar::zero(); 3]; 3]; 3];
        for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            t[i][j][k] = Scalar::one();
            t[j][i][k] = Scalar::from_i64(-1);
        }
        let lie = Algebroid::new(
            Kind::Lie,
            Vars::coordinates(0),
            3,
            t,
            vec![VectorField::zero(0); 3],
        )
        .unwrap();
        assert!(lie.check_lie_algebroid().passed());
    }

    #[test]
    fn operators_of_point_algebra() {
        let a = point_algebra(2, &[(1, 1, 1, 1)]);
        let e1 = a.basis(0);
        let diag = Matrix::from_rows(vec![
            vec![Scalar::one(), Scalar::zero()],
            vec![Scalar::zero(), Scalar::zero()],
        ])
        .unwrap();
        assert_eq!(a.left_op(&e1), diag);
        assert_eq!(a.right_op(&e1), diag);
        assert_eq!(
            a.dual_apply(&e1, &e1),
            vec![Scalar::from_i64(-1), Scalar::zero()]
        );
        assert_eq!(
            a.right_dual(&e1, &e1),
            vec![Scalar::from_i64(-1), Scalar::zero()]
        );
    }

    #[test]
    fn dual_apply_on_the_line() {
        let a = tr();
        let v = a.vars().clone();
        let f = s("x1^3 - x1", &v);
        assert_eq!(
            a.dual_apply(&[Scalar::one()], std::slice::from_ref(&f)),
            vec![f.derive(0)]
        );
    }

    #[test]
    fn semidirect_bracket_and_form() {
        let a = point_algebra(2, &[(1, 1, 1, 1)]);
        let (lie, omega) = a.semidirect_symplectic().unwrap();
        assert!(lie.check_lie_algebroid().passed());
        let m = omega.to_matrix();
        assert_eq!(m[(0, 2)], Scalar::from_i64(-1));
        let br = lie.br(&unit(4, 0), &unit(4, 2));
        assert_eq!(
            br,
            vec![
                Scalar::zero(),
                Scalar::zero(),
                Scalar::from_i64(-1),
                Scalar::zero()
            ]
        );
    }

    #[test]
    fn representation_regular() {
        let a = point_algebra(2, &[(1, 1, 1, 1)]);
        let l: Vec<_> = (0..2).map(|i| a.left_op(&a.basis(i))).collect();
        let r: Vec<_> = (0..2).map(|i| a.right_op(&a.basis(i))).collect();
        let z = vec![Matrix::zeros(2, 2); 2];
        assert!(a.check_representation(&l, &r).unwrap().passed());
        assert!(a.check_representation(&l, &z).unwrap().passed());
        assert!(a.check_representation(&z, &z).unwrap().passed());
    }
}
