//! Randomized exact verification of the calculus identities.

use super::tensor::Tensor;
use super::{
    coboundary_lsa_unchecked as delta, format_tensor, lie_der_form_unchecked as lie_form,
    lie_der_poly_unchecked as lie_poly, right_mult_form_unchecked as right_form,
};
use crate::algebroid::{pair, scale, Algebroid, Kind};
use crate::random::{self, Rng64};
use crate::report::{Check, Report};
use crate::scalar::Scalar;

pub const IDENTITY_NAMES: [&str; 11] = [
    "lie-bracket/poly",
    "lie-bracket/form",
    "lie-function/poly",
    "lie-function-section/poly",
    "coboundary-function",
    "contraction-product",
    "cartan-formula",
    "lie-function/form",
    "lie-function-section/form",
    "right-function",
    "right-function-section",
];

struct Sample {
    round: usize,
    x: Vec<Scalar>,
    y: Vec<Scalar>,
    f: Scalar,
}

impl Sample {
    fn describe(&self, alg: &Algebroid, degree: usize) -> String {
        format!(
            "round {}, degree {}: x = {}, y = {}, f = {}",
            self.round,
            degree,
            alg.show(&self.x),
            alg.show(&self.y),
            alg.show_scalar(&self.f)
        )
    }
}

fn outer(a: &[Scalar], b: &[Scalar]) -> Tensor {
    Tensor::from_fn(a.len(), 1, |w, k| &a[w[0]] * &b[k])
}

/// Evaluates every identity with a generic affine `f` in round 0 and random
/// polynomial data of degree at most 2 in rounds `1..=trials`. Each residual
/// must vanish identically.
pub fn identity_suite(alg: &Algebroid, trials: usize, seed: u64) -> Report {
    let mut report = Report::new();
    if alg.kind() != Kind::LeftSymmetric {
        report.push(Check::fail("kind", "structure", "not left-symmetric"));
        return report;
    }
    let r = alg.rank();
    let vars = alg.vars();
    let max_n = r.min(2);
    let mut failures: Vec<Option<Check>> = vec![None; IDENTITY_NAMES.len()];
    let mut dd_nonzero: Option<String> = None;
    for round in 0..=trials {
        let mut rng: Rng64 = random::stream(seed, round as u64);
        let f = if round == 0 {
            let mut next = vars.fresh_start();
            random::generic_affine(vars, &mut next)
        } else {
            random::poly(&mut rng, vars, 2)
        };
        let s = Sample {
            round,
            x: random::vector(&mut rng, vars, r, 2),
            y: random::vector(&mut rng, vars, r, 2),
            f,
        };
        let (x, y, f) = (&s.x, &s.y, &s.f);
        let fx = scale(x, f);
        let df = alg.d(f);
        let ax_f = alg.anchor_of(x).apply(f);
        let bracket = alg.br(x, y);
        let xy = alg.prod(x, y);
        let mut record = |id: usize, degree: usize, residual: Tensor| {
            if failures[id].is_none() && !residual.is_zero() {
                failures[id] = Some(Check::fail(
                    IDENTITY_NAMES[id],
                    s.describe(alg, degree),
                    format_tensor(vars, &residual, "e"),
                ));
            }
        };
        for n in 0..=max_n {
            let t = random::tensor(&mut rng, vars, r, n, 2);
            let phi = random::tensor(&mut rng, vars, r, n, 2);

            let lhs = lie_poly(alg, &bracket, &t);
            let rhs = lie_poly(alg, x, &lie_poly(alg, y, &t)).sub(&lie_poly(
                alg,
                y,
                &lie_poly(alg, x, &t),
            ));
            record(0, n, lhs.sub(&rhs));

            let lhs = lie_form(alg, &bracket, &phi);
            let rhs = lie_form(alg, x, &lie_form(alg, y, &phi)).sub(&lie_form(
                alg,
                y,
                &lie_form(alg, x, &phi),
            ));
            record(1, n, lhs.sub(&rhs));

            let lhs = lie_poly(alg, x, &t.scale(f));
            let rhs = lie_poly(alg, x, &t).scale(f).add(&t.scale(&ax_f));
            record(2, n, lhs.sub(&rhs));

            let lhs = lie_poly(alg, &fx, &t);
            let rhs = lie_poly(alg, x, &t)
                .scale(f)
                .sub(&t.contract_right(&df).tensor(x));
            record(3, n, lhs.sub(&rhs));

            let lhs = lie_form(alg, x, &phi.scale(f));
            let rhs = lie_form(alg, x, &phi).scale(f).add(&phi.scale(&ax_f));
            record(7, n, lhs.sub(&rhs));

            let lhs = lie_form(alg, &fx, &phi);
            let rhs = lie_form(alg, x, &phi)
                .scale(f)
                .add(&phi.contract_right(x).tensor(&df));
            record(8, n, lhs.sub(&rhs));

            if n >= 1 {
                let lhs = phi.contract_left(&xy).expect("degree at least 1");
                let inner = lie_form(alg, x, &phi.contract_left(y).expect("degree at least 1"));
                let rhs = inner.sub(
                    &lie_form(alg, x, &phi)
                        .contract_left(y)
                        .expect("degree at least 1"),
                );
                record(5, n, lhs.sub(&rhs));

                let lhs = lie_form(alg, x, &phi);
                let d_inner = delta(alg, &phi.contract_left(x).expect("degree at least 1"));
                let inner_d = delta(alg, &phi)
                    .contract_left(x)
                    .expect("degree at least 2");
                let rhs = d_inner.add(&inner_d).sub(&right_form(alg, x, &phi));
                record(6, n, lhs.sub(&rhs));
            }
        }

        let xi = random::vector(&mut rng, vars, r, 2);
        let xi_t = Tensor::from_vector(&xi);
        let lhs = delta(alg, &xi_t.scale(f));
        let rhs = delta(alg, &xi_t).scale(f).add(&outer(&df, &xi));
        record(4, 0, lhs.sub(&rhs));

        let lhs = right_form(alg, x, &xi_t.scale(f));
        let rhs = right_form(alg, x, &xi_t).scale(f);
        record(9, 0, lhs.sub(&rhs));

        let lhs = right_form(alg, &fx, &xi_t);
        let rhs = right_form(alg, x, &xi_t)
            .scale(f)
            .sub(&Tensor::from_vector(&scale(&df, &pair(x, &xi))));
        record(10, 0, lhs.sub(&rhs));

        if dd_nonzero.is_none() {
            let dd = delta(alg, &delta(alg, &xi_t));
            if !dd.is_zero() {
                dd_nonzero = Some(format!(
                    "round {round}: δ∘δ ξ = {} for ξ = {}",
                    format_tensor(vars, &dd, "ε"),
                    alg.show_dual(&xi)
                ));
            }
        }
    }
    for (id, name) in IDENTITY_NAMES.iter().enumerate() {
        report.push(failures[id].take().unwrap_or_else(|| Check::pass(*name)));
    }
    report.note(match dd_nonzero {
        None => format!("δ∘δ vanished on all {} sampled 1-cochains", trials + 1),
        Some(w) => w,
    });
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebroid::point_algebra;

    #[test]
    fn abelian_point_algebra_passes() {
        let a = point_algebra(2, &[]);
        let r = identity_suite(&a, 3, 1);
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.checks.len(), 11);
    }
}
