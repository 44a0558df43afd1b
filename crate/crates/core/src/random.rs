//! Seeded sampling of scalars, sections and tensors with small integer data.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::calculus::tensor::{subsets, Tensor};
use crate::poly::{Monomial, Poly, Var};
use crate::scalar::{Scalar, Vars};

pub type Rng64 = ChaCha8Rng;

/// Independent stream for trial `index` under `seed`.
pub fn stream(seed: u64, index: u64) -> Rng64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Monomials of total degree at most `max_degree` in the first `n` variables.
pub fn monomials(n: usize, max_degree: u32) -> Vec<Monomial> {
    let mut out = vec![Monomial::one()];
    let mut frontier = vec![Monomial::one()];
    for _ in 0..max_degree {
        let mut next = Vec::new();
        for m in &frontier {
            let start = m.factors().map(|(v, _)| v).max().unwrap_or(0);
            for v in start..n as Var {
                next.push(m.mul(&Monomial::var(v, 1)));
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Polynomial of degree at most `max_degree` in the base variables with
/// coefficients in `-2..=2`.
pub fn poly(rng: &mut Rng64, vars: &Vars, max_degree: u32) -> Scalar {
    let terms: Vec<(Monomial, num_rational::BigRational)> =
        monomials(vars.base_count(), max_degree)
            .into_iter()
            .filter_map(|m| {
                let c: i64 = rng.gen_range(-2..=2);
                (c != 0).then(|| (m, num_rational::BigRational::from_integer(c.into())))
            })
            .collect();
    Scalar::from_poly(Poly::from_terms(terms))
}

pub fn vector(rng: &mut Rng64, vars: &Vars, len: usize, max_degree: u32) -> Vec<Scalar> {
    (0..len).map(|_| poly(rng, vars, max_degree)).collect()
}

pub fn tensor(rng: &mut Rng64, vars: &Vars, rank: usize, degree: usize, max_degree: u32) -> Tensor {
    let mut t = Tensor::zero(rank, degree);
    for w in subsets(rank, degree) {
        for k in 0..rank {
            t.set(&w, k, poly(rng, vars, max_degree));
        }
    }
    t
}

/// `t₀ + Σ t_μ x_μ` with fresh parameters starting at `next`, which is advanced.
pub fn generic_affine(vars: &Vars, next: &mut Var) -> Scalar {
    let mut f = Scalar::var(*next);
    *next += 1;
    for mu in 0..vars.base_count() {
        f += Scalar::var(*next) * Scalar::var(mu as Var);
        *next += 1;
    }
    f
}

/// Vector whose entries are independent generic affine functions.
pub fn generic_vector(vars: &Vars, len: usize, next: &mut Var) -> Vec<Scalar> {
    (0..len).map(|_| generic_affine(vars, next)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials(2, 2).len(), 6);
        assert_eq!(monomials(0, 2).len(), 1);
        assert_eq!(monomials(3, 1).len(), 4);
    }

    #[test]
    fn streams_are_reproducible() {
        let v = Vars::coordinates(2);
        let a = poly(&mut stream(7, 3), &v, 2);
        let b = poly(&mut stream(7, 3), &v, 2);
        assert_eq!(a, b);
        assert!(a.degree() <= 2);
    }

    #[test]
    fn affine_uses_fresh_parameters() {
        let v = Vars::coordinates(2);
        let mut next = v.fresh_start();
        let f = generic_affine(&v, &mut next);
        assert_eq!(next, v.fresh_start() + 3);
        assert_eq!(f.derive(0), Scalar::var(v.fresh_start() + 1));
    }
}
