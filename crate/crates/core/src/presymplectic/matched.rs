//! The Lie algebroid `A ⋈ A*` of the sub-adjacent structures.

use super::dirac::require_bialgebroid;
use super::{BigSection, PreSymplectic};
use crate::algebroid::{add, is_zero_vec, standard_omega, sub, Algebroid, Kind};
use crate::bialgebroid::Candidate;
use crate::calculus::is_2cocycle;
use crate::calculus::tensor::{unit, Tensor};
use crate::error::{Error, Result};
use crate::random;
use crate::report::{Check, Report};
use crate::scalar::Scalar;

/// How the mixed terms of the bracket are read.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reading {
    /// `[ξ,η]_* + L*_xξ - L*_yη + L*_ξy - L*_ηx + [x,y]`.
    Printed,
    /// `[ξ,η]_* + L*_xη - L*_yξ + L*_ξy - L*_ηx + [x,y]`.
    Corrected,
}

impl Reading {
    pub fn as_str(self) -> &'static str {
        match self {
            Reading::Printed => "printed",
            Reading::Corrected => "corrected",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchedPair {
    pub lie: Algebroid,
    pub omega: Tensor,
    pub reading: Reading,
    pub report: Report,
}

/// The bracket of `x+ξ` and `y+η` under the given reading.
pub fn matched_bracket(c: &Candidate, reading: Reading, u: &[Scalar], v: &[Scalar]) -> BigSection {
    let r = c.rank();
    let (x, xi) = u.split_at(r);
    let (y, eta) = v.split_at(r);
    let (p, q) = match reading {
        Reading::Printed => (c.a.dual_apply(x, xi), c.a.dual_apply(y, eta)),
        Reading::Corrected => (c.a.dual_apply(x, eta), c.a.dual_apply(y, xi)),
    };
    let mut out = add(
        &c.a.br(x, y),
        &sub(&c.astar.dual_apply(xi, y), &c.astar.dual_apply(eta, x)),
    );
    out.extend(add(&c.astar.br(xi, eta), &sub(&p, &q)));
    out
}

fn build(c: &Candidate, reading: Reading) -> Result<Algebroid> {
    let n = 2 * c.rank();
    let table = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| matched_bracket(c, reading, &unit(n, a), &unit(n, b)))
                .collect()
        })
        .collect();
    let mut anchor = c.a.anchors().to_vec();
    anchor.extend(c.astar.anchors().iter().cloned());
    Algebroid::new(Kind::Lie, c.vars().clone(), n, table, anchor)
}

/// Compares the bracket with `u⋆v - v⋆u` on basis pairs and `samples`
/// random sections of degree at most 2.
fn commutator_check(e: &PreSymplectic, lie: &Algebroid, samples: usize, seed: u64) -> Check {
    let n = e.dim();
    let mut pairs: Vec<(String, BigSection, BigSection)> = Vec::new();
    for a in 0..n {
        for b in 0..n {
            pairs.push((
                format!("({}, {})", e.label(a), e.label(b)),
                unit(n, a),
                unit(n, b),
            ));
        }
    }
    let mut rng = random::stream(seed, 0);
    let sections: Vec<BigSection> = (0..samples)
        .map(|_| random::vector(&mut rng, e.vars(), n, 2))
        .collect();
    for (i, u) in sections.iter().enumerate() {
        let v = &sections[(i + 1) % sections.len()];
        pairs.push((
            format!("({}, {})", e.show(u), e.show(v)),
            u.clone(),
            v.clone(),
        ));
    }
    for (tag, u, v) in pairs {
        let diff = sub(&lie.br(&u, &v), &e.bracket(&u, &v));
        if !is_zero_vec(&diff) {
            return Check::fail("commutator", tag, e.show(&diff));
        }
    }
    Check::pass("commutator")
}

/// Builds `A ⋈ A*` with `ω(x+ξ, y+η) = ⟨ξ,y⟩ - ⟨η,x⟩`. The printed reading is
/// tried first; the first reading that agrees with the commutator of `⋆`
/// is kept.
pub fn matched_pair_bracket(c: &Candidate, samples: usize, seed: u64) -> Result<MatchedPair> {
    require_bialgebroid(c)?;
    let e = PreSymplectic::double_unchecked(c);
    let omega = Tensor::from_matrix(&standard_omega(c.rank()));
    let mut rejected = Vec::new();
    for reading in [Reading::Printed, Reading::Corrected] {
        let lie = build(c, reading)?;
        let check = commutator_check(&e, &lie, samples, seed);
        if !check.passed {
            rejected.push(format!("{} reading: {:?}", reading.as_str(), check.witness));
            continue;
        }
        let mut report = Report::new();
        report.push(check.with_detail(format!("{} reading", reading.as_str())));
        report.absorb("lie", lie.check_lie_algebroid());
        report.absorb("omega", is_2cocycle(&lie, &omega));
        for r in rejected {
            report.note(format!("rejected {r}"));
        }
        return Ok(MatchedPair {
            lie,
            omega,
            reading,
            report,
        });
    }
    Err(Error::InvalidStructure(format!(
        "no reading matches the commutator: {}",
        rejected.join("; ")
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebroid::point_algebra;

    #[test]
    fn nontrivial_algebra_needs_the_corrected_reading() {
        let a = point_algebra(2, &[(1, 1, 1, 1), (1, 2, 2, 1), (2, 1, 2, 1)]);
        let m = matched_pair_bracket(&Candidate::trivial_dual(a), 10, 0).unwrap();
        assert_eq!(m.reading, Reading::Corrected);
        assert!(m.report.passed(), "{:?}", m.report);
    }

    #[test]
    fn abelian_accepts_either() {
        let a = point_algebra(2, &[]);
        let m = matched_pair_bracket(&Candidate::trivial_dual(a), 4, 0).unwrap();
        assert_eq!(m.reading, Reading::Printed);
    }
}
