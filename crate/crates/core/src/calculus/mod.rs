//! Lie derivatives, right multiplications, contractions and coboundaries.

pub mod identities;
pub mod tensor;

pub use identities::{identity_suite, IDENTITY_NAMES};
pub use tensor::{det, sort_with_sign, subsets, unit, FormTensor, Key, PolyTensor, Tensor, Wedge};

use crate::algebroid::{Algebroid, Section};
use crate::error::{Error, Result};
use crate::report::{format_tuple, Check, Report};
use crate::scalar::{Scalar, Vars};

fn check_rank(alg: &Algebroid, t: &Tensor) -> Result<()> {
    if t.rank() != alg.rank() {
        return Err(Error::ShapeMismatch(format!(
            "tensor of rank {} for a structure of rank {}",
            t.rank(),
            alg.rank()
        )));
    }
    Ok(())
}

fn check_section(alg: &Algebroid, x: &[Scalar]) -> Result<()> {
    if x.len() != alg.rank() {
        return Err(Error::ShapeMismatch(format!(
            "section with {} coordinates for a structure of rank {}",
            x.len(),
            alg.rank()
        )));
    }
    Ok(())
}

fn replaced(idx: &[usize], slot: usize, m: usize) -> Vec<usize> {
    let mut w = idx.to_vec();
    w[slot] = m;
    w
}

/// `𝔏_x` on `Γ(∧ⁿA ⊗ A)`: `x·` on wedge slots, `[x, ·]` on the last slot.
pub fn lie_der_poly(alg: &Algebroid, x: &[Scalar], t: &PolyTensor) -> Result<PolyTensor> {
    check_section(alg, x)?;
    check_rank(alg, t)?;
    Ok(lie_der_poly_unchecked(alg, x, t))
}

pub(crate) fn lie_der_poly_unchecked(alg: &Algebroid, x: &[Scalar], t: &PolyTensor) -> PolyTensor {
    let r = alg.rank();
    let left: Vec<Section> = (0..r).map(|i| alg.prod(x, &unit(r, i))).collect();
    let br: Vec<Section> = (0..r).map(|k| alg.br(x, &unit(r, k))).collect();
    let ax = alg.anchor_of(x);
    let mut out = Tensor::zero(r, t.degree());
    for ((idx, k), c) in t.terms() {
        if !ax.is_zero() {
            out.add_at(idx, *k, &ax.apply(c));
        }
        for (slot, &i) in idx.iter().enumerate() {
            for (m, v) in left[i].iter().enumerate() {
                if !v.is_zero() {
                    out.add_at(&replaced(idx, slot, m), *k, &(c * v));
                }
            }
        }
        for (m, v) in br[*k].iter().enumerate() {
            if !v.is_zero() {
                out.add_at(idx, m, &(c * v));
            }
        }
    }
    out
}

/// `R_x` on `Γ(∧ⁿA ⊗ A)`: `-y_i·x` on wedge slots, `y·x` on the last slot.
pub fn right_mult_poly(alg: &Algebroid, x: &[Scalar], t: &PolyTensor) -> Result<PolyTensor> {
    check_section(alg, x)?;
    check_rank(alg, t)?;
    Ok(right_mult_poly_unchecked(alg, x, t))
}

pub(crate) fn right_mult_poly_unchecked(
    alg: &Algebroid,
    x: &[Scalar],
    t: &PolyTensor,
) -> PolyTensor {
    let r = alg.rank();
    let right: Vec<Section> = (0..r).map(|i| alg.prod(&unit(r, i), x)).collect();
    let mut out = Tensor::zero(r, t.degree());
    for ((idx, k), c) in t.terms() {
        for (slot, &i) in idx.iter().enumerate() {
            for (m, v) in right[i].iter().enumerate() {
                if !v.is_zero() {
                    out.add_at(&replaced(idx, slot, m), *k, &-(c * v));
                }
            }
        }
        for (m, v) in right[*k].iter().enumerate() {
            if !v.is_zero() {
                out.add_at(idx, m, &(c * v));
            }
        }
    }
    out
}

/// `⟨𝔏_x φ, X⟩ = a(x)⟨φ, X⟩ - ⟨φ, 𝔏_x X⟩`, evaluated on basis tensors.
pub fn lie_der_form(alg: &Algebroid, x: &[Scalar], phi: &FormTensor) -> Result<FormTensor> {
    check_section(alg, x)?;
    check_rank(alg, phi)?;
    Ok(lie_der_form_unchecked(alg, x, phi))
}

pub(crate) fn lie_der_form_unchecked(
    alg: &Algebroid,
    x: &[Scalar],
    phi: &FormTensor,
) -> FormTensor {
    let r = alg.rank();
    let left: Vec<Section> = (0..r).map(|i| alg.prod(x, &unit(r, i))).collect();
    let br: Vec<Section> = (0..r).map(|k| alg.br(x, &unit(r, k))).collect();
    let ax = alg.anchor_of(x);
    Tensor::from_fn(r, phi.degree(), |idx, k| {
        let mut v = if ax.is_zero() {
            Scalar::zero()
        } else {
            ax.apply(&phi.get(idx, k))
        };
        for (slot, &i) in idx.iter().enumerate() {
            for (m, c) in left[i].iter().enumerate() {
                if !c.is_zero() {
                    v -= c * phi.eval_basis(&replaced(idx, slot, m), k);
                }
            }
        }
        for (m, c) in br[k].iter().enumerate() {
            if !c.is_zero() {
                v -= c * phi.get(idx, m);
            }
        }
        v
    })
}

/// `⟨R_x φ, X⟩ = -⟨φ, R_x X⟩`, evaluated on basis tensors.
pub fn right_mult_form(alg: &Algebroid, x: &[Scalar], phi: &FormTensor) -> Result<FormTensor> {
    check_section(alg, x)?;
    check_rank(alg, phi)?;
    Ok(right_mult_form_unchecked(alg, x, phi))
}

pub(crate) fn right_mult_form_unchecked(
    alg: &Algebroid,
    x: &[Scalar],
    phi: &FormTensor,
) -> FormTensor {
    let r = alg.rank();
    let right: Vec<Section> = (0..r).map(|i| alg.prod(&unit(r, i), x)).collect();
    Tensor::from_fn(r, phi.degree(), |idx, k| {
        let mut v = Scalar::zero();
        for (slot, &i) in idx.iter().enumerate() {
            for (m, c) in right[i].iter().enumerate() {
                if !c.is_zero() {
                    v += c * phi.eval_basis(&replaced(idx, slot, m), k);
                }
            }
        }
        for (m, c) in right[k].iter().enumerate() {
            if !c.is_zero() {
                v -= c * phi.get(idx, m);
            }
        }
        v
    })
}

pub fn contract_left(t: &Tensor, arg: &[Scalar]) -> Result<Tensor> {
    if arg.len() != t.rank() {
        return Err(Error::ShapeMismatch("contraction argument length".into()));
    }
    t.contract_left(arg)
}

pub fn contract_right(t: &Tensor, arg: &[Scalar]) -> Result<Wedge> {
    if arg.len() != t.rank() {
        return Err(Error::ShapeMismatch("contraction argument length".into()));
    }
    Ok(t.contract_right(arg))
}

/// The left-symmetric coboundary with trivial coefficients. A tensor of
/// degree `n - 1` is an `n`-cochain; the result has degree `n`.
pub fn coboundary_lsa(alg: &Algebroid, phi: &FormTensor) -> Result<FormTensor> {
    check_rank(alg, phi)?;
    Ok(coboundary_lsa_unchecked(alg, phi))
}

pub(crate) fn coboundary_lsa_unchecked(alg: &Algebroid, phi: &FormTensor) -> FormTensor {
    let r = alg.rank();
    let n = phi.degree() + 1;
    Tensor::from_fn(r, n, |idx, k| {
        let mut v = Scalar::zero();
        for i in 0..n {
            let rest: Vec<usize> = idx
                .iter()
                .enumerate()
                .filter(|&(p, _)| p != i)
                .map(|(_, &q)| q)
                .collect();
            let sign_plus = i % 2 == 0;
            let a = alg.anchor(idx[i]);
            let term = if a.is_zero() {
                Scalar::zero()
            } else {
                a.apply(&phi.eval_basis(&rest, k))
            };
            let mut prod_term = Scalar::zero();
            for (m, c) in alg.product(idx[i], k).iter().enumerate() {
                if !c.is_zero() {
                    prod_term += c * phi.eval_basis(&rest, m);
                }
            }
            let t = term - prod_term;
            if sign_plus {
                v += t;
            } else {
                v -= t;
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                let b = alg.bracket_coeff(idx[i], idx[j]);
                let rest: Vec<usize> = idx
                    .iter()
                    .enumerate()
                    .filter(|&(p, _)| p != i && p != j)
                    .map(|(_, &q)| q)
                    .collect();
                // 1-based (-1)^{i+j} equals 0-based (-1)^{i+j}.
                let plus = (i + j) % 2 == 0;
                for (m, c) in b.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let mut w = vec![m];
                    w.extend_from_slice(&rest);
                    let t = c * phi.eval_basis(&w, k);
                    if plus {
                        v += t;
                    } else {
                        v -= t;
                    }
                }
            }
        }
        v
    })
}

/// Value of an alternating form stored as a tensor on basis indices.
pub fn alternating_value(phi: &FormTensor, idx: &[usize]) -> Scalar {
    let (last, wedge) = idx.split_last().expect("at least one argument");
    phi.eval_basis(wedge, *last)
}

/// Alternating `k`-form (`k ≥ 1`) from its values on increasing index tuples.
pub fn from_alternating(
    rank: usize,
    k: usize,
    mut f: impl FnMut(&[usize]) -> Scalar,
) -> FormTensor {
    assert!(k >= 1, "forms of positive degree");
    let mut values = std::collections::BTreeMap::new();
    for s in subsets(rank, k) {
        let v = f(&s);
        if !v.is_zero() {
            values.insert(s, v);
        }
    }
    Tensor::from_fn(rank, k - 1, |w, last| {
        let mut full = w.to_vec();
        full.push(last);
        match sort_with_sign(&full) {
            None => Scalar::zero(),
            Some((sorted, odd)) => match values.get(&sorted) {
                None => Scalar::zero(),
                Some(v) if odd => -v,
                Some(v) => v.clone(),
            },
        }
    })
}

/// First stored position where the tensor fails to be fully antisymmetric.
pub fn alternating_defect(phi: &FormTensor) -> Option<(Key, Scalar)> {
    let k = phi.degree() + 1;
    let canonical = from_alternating(phi.rank(), k, |s| alternating_value(phi, s));
    let diff = phi.sub(&canonical);
    diff.first_nonzero()
        .map(|(key, v)| (key.clone(), v.clone()))
}

/// Chevalley-Eilenberg differential with anchor on alternating forms. A
/// `k`-form is stored as a tensor of degree `k - 1` with every entry filled.
pub fn coboundary_lie(lie: &Algebroid, form: &FormTensor) -> Result<FormTensor> {
    check_rank(lie, form)?;
    if let Some(((w, last), v)) = alternating_defect(form) {
        return Err(Error::NotAlternating(format!(
            "entry ({:?}; {}) = {}",
            w.iter().map(|i| i + 1).collect::<Vec<_>>(),
            last + 1,
            lie.vars().print(&v)
        )));
    }
    Ok(coboundary_lie_unchecked(lie, form))
}

pub(crate) fn coboundary_lie_unchecked(lie: &Algebroid, form: &FormTensor) -> FormTensor {
    let k = form.degree() + 1;
    let r = lie.rank();
    from_alternating(r, k + 1, |idx| {
        let mut v = Scalar::zero();
        for i in 0..=k {
            let a = lie.anchor(idx[i]);
            if a.is_zero() {
                continue;
            }
            let rest: Vec<usize> = idx
                .iter()
                .enumerate()
                .filter(|&(p, _)| p != i)
                .map(|(_, &q)| q)
                .collect();
            let t = a.apply(&alternating_value(form, &rest));
            if i % 2 == 0 {
                v += t;
            } else {
                v -= t;
            }
        }
        for i in 0..=k {
            for j in i + 1..=k {
                let b = lie.bracket_coeff(idx[i], idx[j]);
                let rest: Vec<usize> = idx
                    .iter()
                    .enumerate()
                    .filter(|&(p, _)| p != i && p != j)
                    .map(|(_, &q)| q)
                    .collect();
                for (m, c) in b.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let mut args = vec![m];
                    args.extend_from_slice(&rest);
                    let t = c * alternating_value(form, &args);
                    if (i + j) % 2 == 0 {
                        v += t;
                    } else {
                        v -= t;
                    }
                }
            }
        }
        v
    })
}

/// `d_M ϖ = 0` for a skew 2-form given as a degree-1 tensor.
pub fn is_2cocycle(lie: &Algebroid, form: &FormTensor) -> Report {
    let mut report = Report::new();
    if form.degree() != 1 || form.rank() != lie.rank() {
        report.push(Check::fail(
            "2-cocycle",
            "shape",
            "expected a 2-form of matching rank",
        ));
        return report;
    }
    match coboundary_lie(lie, form) {
        Err(e) => report.push(Check::fail("2-cocycle", "alternating", e.to_string())),
        Ok(d) => match d.first_nonzero() {
            None => report.push(Check::pass("2-cocycle")),
            Some(((w, last), v)) => {
                let mut labels: Vec<String> = w.iter().map(|&i| lie.label(i)).collect();
                labels.push(lie.label(*last));
                report.push(Check::fail(
                    "2-cocycle",
                    format_tuple(&labels),
                    lie.vars().print(v),
                ));
            }
        },
    }
    report
}

/// `Σ c · basis-label` rendering of a tensor, e.g. `(x1)*e1∧e2⊗e1`.
pub fn format_tensor(vars: &Vars, t: &Tensor, symbol: &str) -> String {
    let parts: Vec<String> = t
        .terms()
        .map(|((w, k), c)| {
            let wedge = w
                .iter()
                .map(|i| format!("{symbol}{}", i + 1))
                .collect::<Vec<_>>()
                .join("∧");
            let basis = if wedge.is_empty() {
                format!("{symbol}{}", k + 1)
            } else {
                format!("{wedge}⊗{symbol}{}", k + 1)
            };
            let text = vars.print(c);
            if c.is_one() {
                basis
            } else if text == "-1" {
                format!("-{basis}")
            } else {
                format!("({text})*{basis}")
            }
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}
