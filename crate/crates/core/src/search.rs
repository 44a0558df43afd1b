//! Seeded search for constant left-symmetric structures and solutions of
//! `⟦H,H⟧ = 0` over ℚ at a point.

use rand::Rng;

use crate::algebroid::{point_algebra, Algebroid};
use crate::bialgebroid::{s_bracket, SymTensor};
use crate::corpus::random_sym;
use crate::error::{Error, Result};
use crate::random;

pub const MAX_DIM: usize = 4;

#[derive(Clone, Debug)]
pub struct SearchParams {
    pub dim: usize,
    /// Probability that a structure constant is nonzero.
    pub density: f64,
    pub count: usize,
    pub seed: u64,
    /// Also require a nondegenerate `H` with `⟦H,H⟧ = 0`.
    pub with_h: bool,
    /// Attempts per requested instance before giving up.
    pub patience: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Found {
    pub algebra: Algebroid,
    pub h: Option<SymTensor>,
    pub attempt: u64,
}

#[derive(Clone, Debug)]
pub struct Catalog {
    pub found: Vec<Found>,
    pub attempts: u64,
}

fn random_constants(
    rng: &mut random::Rng64,
    dim: usize,
    density: f64,
) -> Vec<(usize, usize, usize, i64)> {
    let mut out = Vec::new();
    for i in 1..=dim {
        for j in 1..=dim {
            for k in 1..=dim {
                if rng.gen_bool(density) {
                    let c = rng.gen_range(1..=2) * if rng.gen_bool(0.5) { 1 } else { -1 };
                    out.push((i, j, k, c));
                }
            }
        }
    }
    out
}

/// Runs the search. Attempt `k` draws from stream `k` of `seed`, so the
/// catalog depends only on the parameters.
pub fn search(p: &SearchParams) -> Result<Catalog> {
    if p.dim == 0 || p.dim > MAX_DIM {
        return Err(Error::ShapeMismatch(format!(
            "dimension must be in 1..={MAX_DIM}"
        )));
    }
    if !(0.0..=1.0).contains(&p.density) {
        return Err(Error::ShapeMismatch("density must lie in [0, 1]".into()));
    }
    let limit = (p.count.max(1) * p.patience.max(1)) as u64;
    let mut found: Vec<Found> = Vec::new();
    let mut attempt = 0;
    while found.len() < p.count && attempt < limit {
        let mut rng = random::stream(p.seed, attempt);
        attempt += 1;
        let algebra = point_algebra(p.dim, &random_constants(&mut rng, p.dim, p.density));
        if found.iter().any(|f| f.algebra == algebra) || !algebra.check_left_symmetric().passed() {
            continue;
        }
        let h = if p.with_h {
            let mut hit = None;
            for _ in 0..32 {
                let h = random_sym(&mut rng, p.dim);
                if s_bracket(&algebra, &h)?.is_zero() {
                    hit = Some(h);
                    break;
                }
            }
            match hit {
                Some(h) => Some(h),
                None => continue,
            }
        } else {
            None
        };
        found.push(Found {
            algebra,
            h,
            attempt: attempt - 1,
        });
    }
    Ok(Catalog {
        found,
        attempts: attempt,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(dim: usize, count: usize, seed: u64, with_h: bool) -> SearchParams {
        SearchParams {
            dim,
            density: 0.3,
            count,
            seed,
            with_h,
            patience: 2000,
        }
    }

    #[test]
    fn line_instances_are_all_accepted() {
        let c = search(&SearchParams {
            density: 0.5,
            ..params(1, 4, 0, false)
        })
        .unwrap();
        assert_eq!(c.found.len(), 4);
        assert!(c
            .found
            .iter()
            .all(|f| f.algebra.check_left_symmetric().passed()));
    }

    #[test]
    fn plane_search_is_reproducible_and_verified() {
        let a = search(&params(2, 5, 7, true)).unwrap();
        let b = search(&params(2, 5, 7, true)).unwrap();
        assert_eq!(a.found, b.found);
        assert_eq!(a.found.len(), 5);
        for f in &a.found {
            assert!(f.algebra.check_left_symmetric().passed());
            assert!(s_bracket(&f.algebra, f.h.as_ref().unwrap())
                .unwrap()
                .is_zero());
        }
    }

    #[test]
    fn guard_rejects_large_dimensions() {
        assert!(search(&params(5, 1, 0, false)).is_err());
    }
}
