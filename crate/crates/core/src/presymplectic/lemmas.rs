//! Mixed associators of the double expressed through the bialgebroid defects.
//!
//! For `x₁, x₂ ∈ Γ(A)`, `ξ₃ ∈ Γ(A*)` and `e₄ = x₄ + ξ₄`:
//!
//! `((x₁,x₂,ξ₃) - (x₂,x₁,ξ₃), e₄)₋ = ⅙(DT(x₁,x₂,ξ₃), e₄)₋ - I₁ - I₂ + I₃`
//!
//! and for `ξ₂ ∈ Γ(A*)`, `x₃ ∈ Γ(A)`:
//!
//! `((x₁,ξ₂,x₃) - (ξ₂,x₁,x₃), e₄)₋ = ⅙(DT(x₁,ξ₂,x₃), e₄)₋ + J₁ - J₂ - J₃`.
//!
//! The third arrangement `(ξ₁,x₂,x₃)` is the negative of the second with
//! `x₁ := x₂`, `ξ₂ := ξ₁`.

use super::{BigSection, PreSymplectic};
use crate::algebroid::{pair, sub};
use crate::bialgebroid::{cond1_residual, cond2_residual, Candidate};
use crate::calculus::tensor::unit;
use crate::random;
use crate::report::{Check, Report};
use crate::scalar::{Scalar, VectorField};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedSides {
    pub lhs: Scalar,
    pub rhs: Scalar,
    /// `(I₁, I₂, I₃)` or `(J₁, J₂, J₃)`.
    pub terms: [Scalar; 3],
}

impl MixedSides {
    pub fn agree(&self) -> bool {
        self.lhs == self.rhs
    }
}

fn lift_a(r: usize, x: &[Scalar]) -> BigSection {
    let mut out = x.to_vec();
    out.extend(vec![Scalar::zero(); r]);
    out
}

fn lift_d(r: usize, xi: &[Scalar]) -> BigSection {
    let mut out = vec![Scalar::zero(); r];
    out.extend(xi.iter().cloned());
    out
}

/// `[a(x), a*(ξ)] - a*(L*_x ξ) + a(L*_ξ x)`.
fn mixed_field(c: &Candidate, x: &[Scalar], xi: &[Scalar]) -> VectorField {
    c.a.anchor_of(x)
        .commutator(&c.astar.anchor_of(xi))
        .sub(&c.astar.anchor_of(&c.a.dual_apply(x, xi)))
        .add(&c.a.anchor_of(&c.astar.dual_apply(xi, x)))
}

/// `[a*(ξ), a(x)] - a(L*_ξ x) + a*(L*_x ξ)`.
fn dual_mixed_field(c: &Candidate, xi: &[Scalar], x: &[Scalar]) -> VectorField {
    c.astar
        .anchor_of(xi)
        .commutator(&c.a.anchor_of(x))
        .sub(&c.a.anchor_of(&c.astar.dual_apply(xi, x)))
        .add(&c.astar.anchor_of(&c.a.dual_apply(x, xi)))
}

fn lhs(e: &PreSymplectic, u: &[Scalar], v: &[Scalar], w: &[Scalar], e4: &[Scalar]) -> Scalar {
    let diff = sub(&e.associator(u, v, w), &e.associator(v, u, w));
    e.form(&diff, e4)
}

fn sixth_dt(e: &PreSymplectic, u: &[Scalar], v: &[Scalar], w: &[Scalar], e4: &[Scalar]) -> Scalar {
    e.form(&e.d_op(&e.t_tensor(u, v, w)), e4) * Scalar::from_ratio(1, 6)
}

/// Arrangement `(x₁, x₂, ξ₃)`.
pub fn sides_aad(
    c: &Candidate,
    x1: &[Scalar],
    x2: &[Scalar],
    xi3: &[Scalar],
    e4: &[Scalar],
) -> MixedSides {
    let r = c.rank();
    let e = PreSymplectic::double_unchecked(c);
    let (u, v, w) = (lift_a(r, x1), lift_a(r, x2), lift_d(r, xi3));
    let xi4 = &e4[r..];
    let i1 = cond2_residual(c, x1, x2).eval(&[xi4], xi3);
    let i2 = mixed_field(c, x1, xi4).apply(&pair(x2, xi3));
    let i3 = mixed_field(c, x2, xi4).apply(&pair(x1, xi3));
    let rhs = sixth_dt(&e, &u, &v, &w, e4) - &i1 - &i2 + &i3;
    MixedSides {
        lhs: lhs(&e, &u, &v, &w, e4),
        rhs,
        terms: [i1, i2, i3],
    }
}

fn j_terms(
    c: &Candidate,
    x1: &[Scalar],
    xi2: &[Scalar],
    x3: &[Scalar],
    xi4: &[Scalar],
) -> [Scalar; 3] {
    let j1 = cond1_residual(c, xi2, xi4).eval(&[x1], x3);
    let j2 = dual_mixed_field(c, xi2, x1).apply(&pair(xi4, x3));
    let j3 = dual_mixed_field(c, xi4, x1).apply(&pair(xi2, x3)) * Scalar::from_ratio(1, 2);
    [j1, j2, j3]
}

/// Arrangement `(x₁, ξ₂, x₃)`.
pub fn sides_ada(
    c: &Candidate,
    x1: &[Scalar],
    xi2: &[Scalar],
    x3: &[Scalar],
    e4: &[Scalar],
) -> MixedSides {
    let r = c.rank();
    let e = PreSymplectic::double_unchecked(c);
    let (u, v, w) = (lift_a(r, x1), lift_d(r, xi2), lift_a(r, x3));
    let [j1, j2, j3] = j_terms(c, x1, xi2, x3, &e4[r..]);
    let rhs = sixth_dt(&e, &u, &v, &w, e4) + &j1 - &j2 - &j3;
    MixedSides {
        lhs: lhs(&e, &u, &v, &w, e4),
        rhs,
        terms: [j1, j2, j3],
    }
}

/// Arrangement `(ξ₁, x₂, x₃)`.
pub fn sides_daa(
    c: &Candidate,
    xi1: &[Scalar],
    x2: &[Scalar],
    x3: &[Scalar],
    e4: &[Scalar],
) -> MixedSides {
    let r = c.rank();
    let e = PreSymplectic::double_unchecked(c);
    let (u, v, w) = (lift_d(r, xi1), lift_a(r, x2), lift_a(r, x3));
    let [j1, j2, j3] = j_terms(c, x2, xi1, x3, &e4[r..]);
    let rhs = sixth_dt(&e, &u, &v, &w, e4) - &j1 + &j2 + &j3;
    MixedSides {
        lhs: lhs(&e, &u, &v, &w, e4),
        rhs,
        terms: [j1, j2, j3],
    }
}

type Sides = fn(&Candidate, &[Scalar], &[Scalar], &[Scalar], &[Scalar]) -> MixedSides;

/// All three arrangements on basis tuples and `trials` random tuples.
pub fn mixed_associator_check(c: &Candidate, trials: usize, seed: u64) -> Report {
    let r = c.rank();
    let n = 2 * r;
    let cases: [(&str, Sides); 3] = [
        ("mixed-associator/x-x-xi", sides_aad),
        ("mixed-associator/x-xi-x", sides_ada),
        ("mixed-associator/xi-x-x", sides_daa),
    ];
    let mut tuples: Vec<(String, [Vec<Scalar>; 4])> = Vec::new();
    for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                for l in 0..n {
                    tuples.push((
                        format!("basis ({}, {}, {}; {})", i + 1, j + 1, k + 1, l + 1),
                        [unit(r, i), unit(r, j), unit(r, k), unit(n, l)],
                    ));
                }
            }
        }
    }
    for t in 0..trials {
        let mut rng = random::stream(seed, t as u64 + 1);
        let v = c.vars();
        tuples.push((
            format!("sample {}", t + 1),
            [
                random::vector(&mut rng, v, r, 2),
                random::vector(&mut rng, v, r, 2),
                random::vector(&mut rng, v, r, 2),
                random::vector(&mut rng, v, n, 2),
            ],
        ));
    }
    let mut report = Report::new();
    for (name, f) in cases {
        let mut check = Check::pass(name);
        for (tag, [a, b, w, e4]) in &tuples {
            let s = f(c, a, b, w, e4);
            if !s.agree() {
                check = Check::fail(
                    name,
                    tag.clone(),
                    format!(
                        "lhs = {}, rhs = {}",
                        c.vars().print(&s.lhs),
                        c.vars().print(&s.rhs)
                    ),
                );
                break;
            }
        }
        report.push(check);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebroid::point_algebra;

    #[test]
    fn trivial_dual_of_point_algebra() {
        let a = point_algebra(2, &[(1, 1, 1, 1), (1, 2, 2, 1), (2, 1, 2, 1)]);
        let c = Candidate::trivial_dual(a);
        let rep = mixed_associator_check(&c, 0, 0);
        assert!(rep.passed(), "{rep:?}");
    }
}
