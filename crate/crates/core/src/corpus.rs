//! Named instances and seeded random valid structures.
//!
//! Random structures start from a constant left-symmetric algebra `𝔤`, add
//! an anchor `a(e_i) = λ_i X + μ_i Y` with `λ, μ` characters of `𝔤^c` and
//! `[X, Y] = 0`, then move to a polynomial unimodular frame. Instances whose
//! coefficients exceed the degree bound are discarded.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebroid::{point_algebra, Algebroid, Kind};
use crate::bialgebroid::SymTensor;
use crate::calculus::tensor::unit;
use crate::error::Result;
use crate::linalg::Matrix;
use crate::random::{self, Rng64};
use crate::scalar::{Scalar, Vars, VectorField};

/// `T∇ℝⁿ`: zero products, anchor `e_i ↦ ∂_i`.
pub fn flat_model(n: usize) -> Algebroid {
    let mut a = Algebroid::abelian(Kind::LeftSymmetric, Vars::coordinates(n), n);
    for i in 0..n {
        a.set_anchor(i, VectorField::coordinate(n, i));
    }
    a
}

/// `e₁·e₁ = e₁, e₁·e₂ = e₂, e₂·e₁ = e₂`.
pub fn unital_point_algebra() -> Algebroid {
    point_algebra(2, &[(1, 1, 1, 1), (1, 2, 2, 1), (2, 1, 2, 1)])
}

/// Constant left-symmetric algebras of dimension `r`, as 1-based
/// `(i, j, k, c)` products `e_i·e_j ∋ c e_k`.
fn seeds(r: usize) -> Vec<Vec<(usize, usize, usize, i64)>> {
    match r {
        1 => vec![
            vec![],
            vec![(1, 1, 1, 1)],
            vec![(1, 1, 1, 2)],
            vec![(1, 1, 1, -1)],
        ],
        2 => vec![
            vec![],
            vec![(1, 1, 1, 1), (1, 2, 2, 1), (2, 1, 2, 1)],
            vec![(1, 1, 1, 1), (1, 2, 2, 1)],
            vec![(1, 1, 2, 1)],
            vec![(2, 1, 1, 1), (2, 2, 2, 1)],
            vec![(1, 1, 1, 2), (1, 2, 2, 1), (2, 1, 2, 1)],
        ],
        _ => vec![
            vec![],
            vec![(1, 2, 3, 1)],
            vec![(1, 1, 1, 1), (1, 2, 2, 1), (2, 3, 2, 1), (3, 3, 3, 1)],
            vec![
                (1, 1, 1, 1),
                (1, 2, 2, 1),
                (2, 1, 2, 1),
                (1, 3, 3, 1),
                (3, 1, 3, 1),
                (2, 2, 3, 1),
            ],
            vec![(1, 1, 1, 1), (1, 2, 2, 1), (1, 3, 3, 1)],
        ],
    }
}

/// Linear functionals on `𝔤` vanishing on every commutator.
fn characters(g: &Algebroid) -> Vec<Vec<Scalar>> {
    let r = g.rank();
    let mut rows = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            let b = g.bracket_coeff(i, j);
            if !b.iter().all(Scalar::is_zero) {
                rows.push(b);
            }
        }
    }
    if rows.is_empty() {
        return (0..r).map(|i| unit(r, i)).collect();
    }
    let m = Matrix::from_rows(rows).expect("rows have equal length");
    (0..r)
        .map(|i| unit(r, i))
        .filter(|u| (0..m.rows()).all(|k| crate::algebroid::pair(&m.row(k), u).is_zero()))
        .collect()
}

/// The structure in the frame `f_i = Σ_a P_ia e_a`.
pub fn change_frame(alg: &Algebroid, p: &Matrix) -> Result<Algebroid> {
    let r = alg.rank();
    let back = p.transpose().inverse()?;
    let rows: Vec<Vec<Scalar>> = (0..r).map(|i| p.row(i)).collect();
    let table = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| back.apply(&alg.prod(&rows[i], &rows[j])))
                .collect()
        })
        .collect();
    let anchor = rows.iter().map(|row| alg.anchor_of(row)).collect();
    Ok(
        Algebroid::new(alg.kind(), alg.vars().clone(), r, table, anchor)?
            .with_labels(alg.labels().clone()),
    )
}

fn max_degree(alg: &Algebroid) -> u32 {
    let mut d = 0;
    for row in alg.table() {
        for v in row {
            for c in v {
                d = d.max(c.degree());
            }
        }
    }
    for a in alg.anchors() {
        for c in &a.0 {
            d = d.max(c.degree());
        }
    }
    d
}

fn small_poly(rng: &mut Rng64, vars: &Vars, degree: u32) -> Scalar {
    loop {
        let p = random::poly(rng, vars, degree);
        if !p.is_zero() {
            return p;
        }
    }
}

fn attempt(rng: &mut Rng64, vars: &Vars) -> Algebroid {
    let r = rng.gen_range(1..=3);
    let base = seeds(r).choose(rng).expect("nonempty").clone();
    let mut g = point_algebra(r, &base);
    g = Algebroid::new(
        Kind::LeftSymmetric,
        vars.clone(),
        r,
        g.table().clone(),
        vec![VectorField::zero(2); r],
    )
    .expect("seed algebra is well formed");
    let chars = characters(&g);
    let (x1, x2) = (Scalar::var(0), Scalar::var(1));
    // Commuting pairs of vector fields on the plane.
    let (fx, fy) = match rng.gen_range(0..3) {
        0 => (VectorField::coordinate(2, 0), VectorField::coordinate(2, 1)),
        1 => (
            VectorField(vec![Scalar::zero(), Scalar::one()]),
            VectorField(vec![
                Scalar::zero(),
                small_poly(rng, &Vars::coordinates(1), 1),
            ]),
        ),
        _ => (
            VectorField(vec![x1.clone(), x2.clone()]),
            VectorField(vec![-x2, x1]),
        ),
    };
    let pick = |rng: &mut Rng64| -> Vec<Scalar> {
        match chars.choose(rng) {
            Some(c) => c
                .iter()
                .map(|v| v * &Scalar::from_i64(rng.gen_range(-2..=2)))
                .collect(),
            None => vec![Scalar::zero(); r],
        }
    };
    let (lam, mu) = (pick(rng), pick(rng));
    for i in 0..r {
        g.set_anchor(i, fx.scale(&lam[i]).add(&fy.scale(&mu[i])));
    }
    // Unimodular frame: identity plus one polynomial off-diagonal entry.
    let mut p = Matrix::identity(r);
    if r > 1 && rng.gen_bool(0.7) {
        let i = rng.gen_range(0..r);
        let mut j = rng.gen_range(0..r - 1);
        if j >= i {
            j += 1;
        }
        p[(i, j)] = small_poly(rng, vars, 1);
    }
    change_frame(&g, &p).expect("unimodular frame")
}

/// Random valid left-symmetric algebroid of rank at most 3 over two
/// variables with coefficients of degree at most 2.
pub fn random_valid(seed: u64, index: u64) -> Algebroid {
    let vars = Vars::coordinates(2);
    let mut rng = random::stream(seed, index);
    loop {
        let g = attempt(&mut rng, &vars);
        if max_degree(&g) <= 2 && g.check_left_symmetric().passed() {
            return g;
        }
    }
}

/// Nondegenerate symmetric matrix with entries in `-2..=2`.
pub fn random_sym(rng: &mut Rng64, r: usize) -> SymTensor {
    loop {
        let mut m = Matrix::zeros(r, r);
        for i in 0..r {
            for j in i..r {
                let v = Scalar::from_i64(rng.gen_range(-2..=2));
                m[(i, j)] = v.clone();
                m[(j, i)] = v;
            }
        }
        let h = SymTensor::new(m).expect("symmetric by construction");
        if !h.det().is_zero() {
            return h;
        }
    }
}

/// Nonzero polynomial `1 × 1` tensor over one variable.
pub fn random_line_sym(rng: &mut Rng64) -> SymTensor {
    let vars = Vars::coordinates(1);
    let p = small_poly(rng, &vars, 2);
    SymTensor::new(Matrix::from_rows(vec![vec![p]]).expect("1x1")).expect("1x1 is symmetric")
}
