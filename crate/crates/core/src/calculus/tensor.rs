//! Storage for `∧ⁿV ⊗ V` with rational-function coefficients.
//!
//! The same type carries polyvector tensors (over a basis of `A`) and forms
//! (over the dual basis); which one is meant depends on the caller. Only
//! strictly increasing wedge indices are stored, and basis pairings follow
//! the determinant convention, so `⟨ε^I ⊗ ε^k, e_J ⊗ e_l⟩ = δ_IJ δ_kl`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

pub type Key = (Vec<usize>, usize);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tensor {
    rank: usize,
    degree: usize,
    terms: BTreeMap<Key, Scalar>,
}

pub type PolyTensor = Tensor;
pub type FormTensor = Tensor;

impl Tensor {
    pub fn zero(rank: usize, degree: usize) -> Self {
        Tensor {
            rank,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Key, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degree-0 tensor from a vector.
    pub fn from_vector(v: &[Scalar]) -> Self {
        let mut t = Tensor::zero(v.len(), 0);
        for (k, c) in v.iter().enumerate() {
            t.set(&[], k, c.clone());
        }
        t
    }

    pub fn to_vector(&self) -> Vec<Scalar> {
        assert_eq!(self.degree, 0, "to_vector needs degree 0");
        (0..self.rank).map(|k| self.get(&[], k)).collect()
    }

    /// Degree-1 tensor with entry `(i; k) = m[i][k]`.
    pub fn from_matrix(m: &Matrix) -> Self {
        let mut t = Tensor::zero(m.rows(), 1);
        for i in 0..m.rows() {
            for k in 0..m.cols() {
                t.set(&[i], k, m[(i, k)].clone());
            }
        }
        t
    }

    pub fn to_matrix(&self) -> Matrix {
        assert_eq!(self.degree, 1, "to_matrix needs degree 1");
        let mut m = Matrix::zeros(self.rank, self.rank);
        for ((i, k), c) in &self.terms {
            m[(i[0], *k)] = c.clone();
        }
        m
    }

    pub fn get(&self, wedge: &[usize], last: usize) -> Scalar {
        self.terms
            .get(&(wedge.to_vec(), last))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    /// Sets a coefficient; `wedge` must be strictly increasing.
    pub fn set(&mut self, wedge: &[usize], last: usize, value: Scalar) {
        assert_eq!(wedge.len(), self.degree, "wedge length");
        assert!(
            wedge.windows(2).all(|w| w[0] < w[1]),
            "wedge indices must increase"
        );
        assert!(
            last < self.rank && wedge.iter().all(|&i| i < self.rank),
            "index out of range"
        );
        let key = (wedge.to_vec(), last);
        if value.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, value);
        }
    }

    /// Adds `value` at a possibly unordered wedge position, applying the
    /// permutation sign; repeated indices contribute nothing.
    pub fn add_at(&mut self, wedge: &[usize], last: usize, value: &Scalar) {
        if value.is_zero() {
            return;
        }
        if let Some((sorted, odd)) = sort_with_sign(wedge) {
            let cur = self.get(&sorted, last);
            let next = if odd { cur - value } else { cur + value };
            self.set(&sorted, last, next);
        }
    }

    pub fn basis(rank: usize, wedge: &[usize], last: usize) -> Self {
        let mut t = Tensor::zero(rank, wedge.len());
        t.set(wedge, last, Scalar::one());
        t
    }

    /// All basis keys of this shape in lexicographic order.
    pub fn keys(rank: usize, degree: usize) -> Vec<Key> {
        let mut out = Vec::new();
        for w in subsets(rank, degree) {
            for k in 0..rank {
                out.push((w.clone(), k));
            }
        }
        out
    }

    pub fn from_fn(
        rank: usize,
        degree: usize,
        mut f: impl FnMut(&[usize], usize) -> Scalar,
    ) -> Self {
        let mut t = Tensor::zero(rank, degree);
        for (w, k) in Tensor::keys(rank, degree) {
            let v = f(&w, k);
            t.set(&w, k, v);
        }
        t
    }

    pub fn add(&self, other: &Tensor) -> Tensor {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Tensor) -> Tensor {
        self.combine(other, true)
    }

    fn combine(&self, other: &Tensor, negate: bool) -> Tensor {
        assert_eq!(
            (self.rank, self.degree),
            (other.rank, other.degree),
            "tensor shapes"
        );
        let mut out = self.clone();
        for (key, c) in &other.terms {
            let cur = out.terms.remove(key).unwrap_or_else(Scalar::zero);
            let v = if negate { &cur - c } else { &cur + c };
            if !v.is_zero() {
                out.terms.insert(key.clone(), v);
            }
        }
        out
    }

    pub fn scale(&self, f: &Scalar) -> Tensor {
        let mut out = Tensor::zero(self.rank, self.degree);
        if f.is_zero() {
            return out;
        }
        for (key, c) in &self.terms {
            out.terms.insert(key.clone(), c * f);
        }
        out
    }

    pub fn neg(&self) -> Tensor {
        self.scale(&Scalar::from_i64(-1))
    }

    pub fn map(&self, mut f: impl FnMut(&Scalar) -> Scalar) -> Tensor {
        let mut out = Tensor::zero(self.rank, self.degree);
        for (key, c) in &self.terms {
            let v = f(c);
            if !v.is_zero() {
                out.terms.insert(key.clone(), v);
            }
        }
        out
    }

    /// Evaluation on `n` wedge arguments and one final argument, each given
    /// by coordinates in the dual basis.
    pub fn eval(&self, wedge: &[&[Scalar]], last: &[Scalar]) -> Scalar {
        assert_eq!(wedge.len(), self.degree, "argument count");
        let mut acc = Scalar::zero();
        for ((idx, k), c) in &self.terms {
            let l = &last[*k];
            if l.is_zero() {
                continue;
            }
            let minor: Vec<Vec<Scalar>> = wedge
                .iter()
                .map(|arg| idx.iter().map(|&i| arg[i].clone()).collect())
                .collect();
            let d = det(&minor);
            if !d.is_zero() {
                acc += &(c * &d) * l;
            }
        }
        acc
    }

    /// Evaluation on basis indices, which may repeat or come unordered.
    pub fn eval_basis(&self, wedge: &[usize], last: usize) -> Scalar {
        match sort_with_sign(wedge) {
            None => Scalar::zero(),
            Some((sorted, negative)) => {
                let v = self.get(&sorted, last);
                if negative {
                    -v
                } else {
                    v
                }
            }
        }
    }

    /// `y_1 ∧ ... ∧ y_n ⊗ y_{n+1}`.
    pub fn decomposable(rank: usize, wedge: &[Vec<Scalar>], last: &[Scalar]) -> Tensor {
        let n = wedge.len();
        let mut t = Tensor::zero(rank, n);
        for w in subsets(rank, n) {
            let minor: Vec<Vec<Scalar>> = wedge
                .iter()
                .map(|y| w.iter().map(|&i| y[i].clone()).collect())
                .collect();
            let d = det(&minor);
            if d.is_zero() {
                continue;
            }
            for (k, l) in last.iter().enumerate() {
                if !l.is_zero() {
                    t.set(&w, k, &d * l);
                }
            }
        }
        t
    }

    /// Canonical pairing with a tensor of the same shape over the dual basis.
    pub fn pair(&self, other: &Tensor) -> Scalar {
        assert_eq!(
            (self.rank, self.degree),
            (other.rank, other.degree),
            "pairing shapes"
        );
        let mut acc = Scalar::zero();
        for (key, c) in &self.terms {
            if let Some(d) = other.terms.get(key) {
                acc += c * d;
            }
        }
        acc
    }

    /// Left contraction: inserts `arg` into the first wedge slot.
    pub fn contract_left(&self, arg: &[Scalar]) -> Result<Tensor> {
        if self.degree == 0 {
            return Err(Error::DegreeError(
                "left contraction needs degree at least 1".into(),
            ));
        }
        let n = self.degree - 1;
        let mut out = Tensor::zero(self.rank, n);
        for ((idx, k), c) in &self.terms {
            // Expand along the first row of the determinant.
            for (pos, &i) in idx.iter().enumerate() {
                let a = &arg[i];
                if a.is_zero() {
                    continue;
                }
                let mut rest = idx.clone();
                rest.remove(pos);
                let term = c * a;
                let term = if pos % 2 == 1 { -term } else { term };
                let cur = out.get(&rest, *k);
                out.set(&rest, *k, cur + term);
            }
        }
        Ok(out)
    }

    /// Right contraction: inserts `arg` into the final slot.
    pub fn contract_right(&self, arg: &[Scalar]) -> Wedge {
        let mut out = Wedge::zero(self.rank, self.degree);
        for ((idx, k), c) in &self.terms {
            let a = &arg[*k];
            if !a.is_zero() {
                let cur = out.get(idx);
                out.set(idx, cur + c * a);
            }
        }
        out
    }

    pub fn first_nonzero(&self) -> Option<(&Key, &Scalar)> {
        self.terms.iter().next()
    }
}

/// Pure wedge powers `∧ⁿV`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Wedge {
    rank: usize,
    degree: usize,
    terms: BTreeMap<Vec<usize>, Scalar>,
}

impl Wedge {
    pub fn zero(rank: usize, degree: usize) -> Self {
        Wedge {
            rank,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn get(&self, idx: &[usize]) -> Scalar {
        self.terms.get(idx).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn set(&mut self, idx: &[usize], value: Scalar) {
        assert_eq!(idx.len(), self.degree, "wedge length");
        if value.is_zero() {
            self.terms.remove(idx);
        } else {
            self.terms.insert(idx.to_vec(), value);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Scalar)> {
        self.terms.iter()
    }

    /// `self ⊗ last`.
    pub fn tensor(&self, last: &[Scalar]) -> Tensor {
        let mut t = Tensor::zero(self.rank, self.degree);
        for (idx, c) in &self.terms {
            for (k, l) in last.iter().enumerate() {
                if !l.is_zero() {
                    t.set(idx, k, c * l);
                }
            }
        }
        t
    }
}

/// Strictly increasing `n`-subsets of `0..rank` in lexicographic order.
pub fn subsets(rank: usize, n: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, rank: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in start..rank {
            cur.push(i);
            go(i + 1, rank, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n <= rank {
        go(0, rank, n, &mut Vec::new(), &mut out);
    }
    out
}

/// Sorts indices, returning `None` on repeats and whether the permutation is odd.
pub fn sort_with_sign(idx: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut v = idx.to_vec();
    let mut odd = false;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                odd = !odd;
            } else if v[j] == v[j + 1] {
                return None;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, odd))
}

/// Determinant by cofactor expansion; intended for small sizes.
pub fn det(m: &[Vec<Scalar>]) -> Scalar {
    match m.len() {
        0 => Scalar::one(),
        1 => m[0][0].clone(),
        2 => &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
        n => {
            let mut acc = Scalar::zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Scalar>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, x)| x.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][j] * &det(&minor);
                if j % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }
    }
}

/// Unit coordinate vector.
pub fn unit(rank: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); rank];
    v[i] = Scalar::one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn contractions_follow_pairing() {
        // T = e1∧e2⊗e1 in rank 3.
        let t = Tensor::basis(3, &[0, 1], 0);
        let c = t.contract_left(&unit(3, 0)).unwrap();
        assert_eq!(c, Tensor::basis(3, &[1], 0));
        let r = t.contract_right(&unit(3, 0));
        assert_eq!(r.get(&[0, 1]), Scalar::one());
        assert!(t.contract_left(&unit(3, 2)).unwrap().is_zero());
        assert!(Tensor::zero(3, 0).contract_left(&unit(3, 0)).is_err());
    }

    #[test]
    fn evaluation_is_alternating() {
        let t = Tensor::basis(3, &[0, 1], 2);
        let e = |i| unit(3, i);
        assert_eq!(t.eval(&[&e(0), &e(1)], &e(2)), Scalar::one());
        assert_eq!(t.eval(&[&e(1), &e(0)], &e(2)), Scalar::from_i64(-1));
        assert_eq!(t.eval_basis(&[1, 0], 2), Scalar::from_i64(-1));
        assert!(t.eval_basis(&[1, 1], 2).is_zero());
    }

    #[test]
    fn decomposable_matches_eval() {
        let y1 = vec![
            Scalar::from_i64(1),
            Scalar::from_i64(2),
            Scalar::from_i64(0),
        ];
        let y2 = vec![
            Scalar::from_i64(0),
            Scalar::from_i64(1),
            Scalar::from_i64(3),
        ];
        let z = unit(3, 1);
        let t = Tensor::decomposable(3, &[y1.clone(), y2.clone()], &z);
        // Pairing with ε1∧ε2⊗ε2 is the (1,2) minor.
        assert_eq!(t.get(&[0, 1], 1), Scalar::from_i64(1));
        assert_eq!(t.get(&[1, 2], 1), Scalar::from_i64(6));
        assert_eq!(t.get(&[0, 2], 1), Scalar::from_i64(3));
    }

    #[test]
    fn sign_of_sorting() {
        assert_eq!(sort_with_sign(&[2, 0, 1]), Some((vec![0, 1, 2], false)));
        assert_eq!(sort_with_sign(&[1, 0]), Some((vec![0, 1], true)));
        assert_eq!(sort_with_sign(&[1, 1]), None);
    }
}
