//! Inputs shared by the benchmarks in `benches/`.

use lsa_core::corpus::{flat_model, random_valid};
use lsa_core::{random, Algebroid, Candidate, Scalar, Vars};

/// Pairs of random fractions in two variables with degree-2 parts.
pub fn fraction_pairs(n: usize) -> Vec<(Scalar, Scalar)> {
    let vars = Vars::coordinates(2);
    let mut rng = random::stream(11, 0);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let p: Vec<Scalar> = (0..4).map(|_| random::poly(&mut rng, &vars, 2)).collect();
        if let (Ok(a), Ok(b)) = (p[0].checked_div(&p[1]), p[2].checked_div(&p[3])) {
            out.push((a, b));
        }
    }
    out
}

/// The random valid structures used by the identity suite.
pub fn corpus(n: u64) -> Vec<Algebroid> {
    (0..n).map(|k| random_valid(0, k)).collect()
}

/// `(T∇ℝ², 0)`.
pub fn flat_pair() -> Candidate {
    Candidate::trivial_dual(flat_model(2))
}
