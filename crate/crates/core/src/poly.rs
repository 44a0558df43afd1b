//! Sparse multivariate polynomials over Q.
//!
//! Terms are kept sorted by graded lexicographic order (variable 0 is the
//! largest), leading term first, with no zero coefficients. Variables are
//! plain indices; naming lives in [`crate::scalar::Vars`].

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

/// Product skipping the gcd when both factors are integers.
fn qmul(a: &BigRational, b: &BigRational) -> BigRational {
    if a.is_integer() && b.is_integer() {
        BigRational::from_integer(a.numer() * b.numer())
    } else {
        a * b
    }
}

fn qadd_assign(acc: &mut BigRational, b: BigRational) {
    if acc.is_integer() && b.is_integer() {
        *acc = BigRational::from_integer(acc.numer() + b.numer());
    } else {
        *acc += b;
    }
}

fn qadd(a: &BigRational, b: &BigRational, negate: bool) -> BigRational {
    if a.is_integer() && b.is_integer() {
        let n = if negate {
            a.numer() - b.numer()
        } else {
            a.numer() + b.numer()
        };
        BigRational::from_integer(n)
    } else if negate {
        a - b
    } else {
        a + b
    }
}

pub type Var = u32;

/// Exponent vector stored sparsely as `(variable, exponent)` pairs sorted by
/// variable, exponents nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(SmallVec<[(Var, u32); 4]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(v: Var, exp: u32) -> Self {
        if exp == 0 {
            return Monomial::one();
        }
        let mut s = SmallVec::new();
        s.push((v, exp));
        Monomial(s)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0
            .iter()
            .find(|&&(w, _)| w == v)
            .map(|&(_, e)| e)
            .unwrap_or(0)
    }

    pub fn factors(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        self.0.iter().copied()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = SmallVec::with_capacity(self.0.len());
        let mut j = 0;
        for &(v, e) in &self.0 {
            if j < other.0.len() && other.0[j].0 < v {
                return None;
            }
            if j < other.0.len() && other.0[j].0 == v {
                let f = other.0[j].1;
                j += 1;
                match e.cmp(&f) {
                    Ordering::Less => return None,
                    Ordering::Equal => {}
                    Ordering::Greater => out.push((v, e - f)),
                }
            } else {
                out.push((v, e));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    /// Componentwise minimum of exponents.
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = SmallVec::new();
        for &(v, e) in &self.0 {
            let f = other.exponent(v);
            if f > 0 {
                out.push((v, e.min(f)));
            }
        }
        Monomial(out)
    }

    /// Splits into the part over `keep` variables and the rest.
    fn split(&self, keep: &BTreeSet<Var>) -> (Monomial, Monomial) {
        let mut inside = SmallVec::new();
        let mut outside = SmallVec::new();
        for &(v, e) in &self.0 {
            if keep.contains(&v) {
                inside.push((v, e));
            } else {
                outside.push((v, e));
            }
        }
        (Monomial(inside), Monomial(outside))
    }

    fn without(&self, v: Var) -> (Monomial, u32) {
        let mut out = SmallVec::with_capacity(self.0.len());
        let mut exp = 0;
        for &(w, e) in &self.0 {
            if w == v {
                exp = e;
            } else {
                out.push((w, e));
            }
        }
        (Monomial(out), exp)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (Some(&(va, ea)), Some(&(vb, eb))) => {
                    if va < vb {
                        return Ordering::Greater;
                    }
                    if va > vb {
                        return Ordering::Less;
                    }
                    if ea != eb {
                        return ea.cmp(&eb);
                    }
                    i += 1;
                    j += 1;
                }
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (None, None) => return Ordering::Equal,
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&(v, e)| {
                if e == 1 {
                    format!("v{v}")
                } else {
                    format!("v{v}^{e}")
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// A polynomial with rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Monomial, BigRational)>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| format!("{c}*{m:?}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly {
                terms: vec![(Monomial::one(), c)],
            }
        }
    }

    pub fn integer(n: i64) -> Self {
        Poly::constant(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn var(v: Var) -> Self {
        Poly::monomial(Monomial::var(v, 1), BigRational::one())
    }

    pub fn monomial(m: Monomial, c: BigRational) -> Self {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly {
                terms: vec![(m, c)],
            }
        }
    }

    /// Builds a polynomial from arbitrary (possibly repeated) terms.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigRational)>>(iter: I) -> Self {
        let mut acc: HashMap<Monomial, BigRational> = HashMap::new();
        for (m, c) in iter {
            *acc.entry(m).or_insert_with(BigRational::zero) += c;
        }
        Self::from_map(acc)
    }

    fn from_map(acc: HashMap<Monomial, BigRational>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Poly { terms }
    }

    pub fn terms(&self) -> &[(Monomial, BigRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn constant_value(&self) -> Option<BigRational> {
        match self.terms.as_slice() {
            [] => Some(BigRational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.first().map(|(m, _)| m.degree()).unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms
            .iter()
            .map(|(m, _)| m.exponent(v))
            .max()
            .unwrap_or(0)
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms
            .iter()
            .flat_map(|(m, _)| m.factors().map(|(v, _)| v))
            .collect()
    }

    pub fn leading(&self) -> Option<&(Monomial, BigRational)> {
        self.terms.first()
    }

    pub fn leading_coefficient(&self) -> BigRational {
        self.terms
            .first()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), qmul(a, c)))
                .collect(),
        }
    }

    fn mul_term(&self, m: &Monomial, c: &BigRational) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(n, a)| (n.mul(m), qmul(a, c)))
                .collect(),
        }
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Poly {
        match self.terms.first() {
            None => Poly::zero(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.merge(other, true)
    }

    fn merge(&self, other: &Poly, negate: bool) -> Poly {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let sign = |c: &BigRational| if negate { -c } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0.clone(), sign(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = qadd(&a[i].1, &b[j].1, negate);
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), sign(c))));
        Poly { terms: out }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if let Some(c) = self.constant_value() {
            return other.scale(&c);
        }
        if let Some(c) = other.constant_value() {
            return self.scale(&c);
        }
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].0, &other.terms[0].1);
        }
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        let mut acc: HashMap<Monomial, BigRational> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (m, a) in &self.terms {
            for (n, b) in &other.terms {
                qadd_assign(
                    acc.entry(m.mul(n)).or_insert_with(BigRational::zero),
                    qmul(a, b),
                );
            }
        }
        Self::from_map(acc)
    }

    pub fn pow(&self, exp: u32) -> Poly {
        let mut result = Poly::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    pub fn derivative(&self, v: Var) -> Poly {
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e == 0 {
                continue;
            }
            let (rest, _) = m.without(v);
            let mono = rest.mul(&Monomial::var(v, e - 1));
            terms.push((mono, c * BigRational::from_integer(BigInt::from(e))));
        }
        // Differentiation keeps graded-lex order of distinct terms only
        // up to ties, so re-sort.
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Poly { terms }
    }

    /// Exact division; `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if let Some(c) = divisor.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        if divisor.terms.len() == 1 {
            let (dm, dc) = &divisor.terms[0];
            let inv = dc.recip();
            let mut terms = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                terms.push((m.div(dm)?, c * &inv));
            }
            return Some(Poly { terms });
        }
        let (lm, lc) = divisor.terms[0].clone();
        let inv = lc.recip();
        let mut rem: BTreeMap<std::cmp::Reverse<Monomial>, BigRational> = self
            .terms
            .iter()
            .map(|(m, c)| (std::cmp::Reverse(m.clone()), c.clone()))
            .collect();
        let mut quotient = Vec::new();
        while let Some((std::cmp::Reverse(m), c)) = rem.pop_first() {
            let qm = m.div(&lm)?;
            let qc = &c * &inv;
            for (dm, dc) in divisor.terms.iter().skip(1) {
                let key = std::cmp::Reverse(dm.mul(&qm));
                let delta = dc * &qc;
                match rem.entry(key) {
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() -= delta;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(-delta);
                    }
                }
            }
            quotient.push((qm, qc));
        }
        Some(Poly { terms: quotient })
    }

    /// Coefficients as a polynomial in `v`, indexed by degree.
    pub fn coefficients_in(&self, v: Var) -> Vec<Poly> {
        let deg = self.degree_in(v) as usize;
        let mut buckets: Vec<Vec<(Monomial, BigRational)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let (rest, e) = m.without(v);
            buckets[e as usize].push((rest, c.clone()));
        }
        buckets
            .into_iter()
            .map(|mut t| {
                t.sort_unstable_by(|a, b| b.0.cmp(&a.0));
                Poly { terms: t }
            })
            .collect()
    }

    pub fn from_coefficients_in(v: Var, coeffs: &[Poly]) -> Poly {
        Poly::from_terms(coeffs.iter().enumerate().flat_map(|(k, p)| {
            let vk = Monomial::var(v, k as u32);
            p.terms.iter().map(move |(m, c)| (m.mul(&vk), c.clone()))
        }))
    }

    /// Groups terms by their monomial outside `keep`; each group is a
    /// polynomial over the `keep` variables.
    fn parts_over(&self, keep: &BTreeSet<Var>) -> Vec<Poly> {
        let mut groups: HashMap<Monomial, Vec<(Monomial, BigRational)>> = HashMap::new();
        for (m, c) in &self.terms {
            let (inside, outside) = m.split(keep);
            groups.entry(outside).or_default().push((inside, c.clone()));
        }
        let mut parts: Vec<Poly> = groups
            .into_values()
            .map(|mut t| {
                t.sort_unstable_by(|a, b| b.0.cmp(&a.0));
                Poly { terms: t }
            })
            .collect();
        // Smallest parts first so the running gcd collapses early.
        parts.sort_by_key(|p| (p.terms.len(), p.total_degree()));
        parts
    }

    pub fn substitute_constants(&self, values: &dyn Fn(Var) -> Option<BigRational>) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, c)| {
            let mut coeff = c.clone();
            let mut rest = Monomial::one();
            for (v, e) in m.factors() {
                match values(v) {
                    Some(x) => coeff *= num_traits::pow(x, e as usize),
                    None => rest = rest.mul(&Monomial::var(v, e)),
                }
            }
            (rest, coeff)
        }))
    }

    pub fn has_negative_leading(&self) -> bool {
        self.terms
            .first()
            .map(|(_, c)| c.is_negative())
            .unwrap_or(false)
    }
}

/// Greatest common divisor, normalized to leading coefficient 1.
/// The gcd of two zero polynomials is zero.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if a.terms.len() == 1 || b.terms.len() == 1 {
        return monomial_gcd(a, b);
    }
    if a == b {
        return a.monic();
    }
    if images_coprime(a, b) {
        return Poly::one();
    }
    let va = a.vars();
    let vb = b.vars();
    if va != vb {
        let common: BTreeSet<Var> = va.intersection(&vb).copied().collect();
        if common.is_empty() {
            return Poly::one();
        }
        let mut parts = Vec::new();
        if va.len() > common.len() {
            parts.extend(a.parts_over(&common));
        } else {
            parts.push(a.clone());
        }
        if vb.len() > common.len() {
            parts.extend(b.parts_over(&common));
        } else {
            parts.push(b.clone());
        }
        return gcd_list(&parts);
    }
    let main = *va
        .iter()
        .min_by_key(|&&v| (a.degree_in(v).max(b.degree_in(v)), v))
        .expect("nonconstant polynomial has a variable");
    let ca = a.coefficients_in(main);
    let cb = b.coefficients_in(main);
    let cont_a = gcd_list(&ca);
    let cont_b = gcd_list(&cb);
    let content = gcd(&cont_a, &cont_b);
    let pa = divide_all(&ca, &cont_a);
    let pb = divide_all(&cb, &cont_b);
    let g = primitive_prs(pa, pb);
    let g = Poly::from_coefficients_in(main, &g);
    content.mul(&g).monic()
}

const PRIME: u64 = (1 << 61) - 1;

fn mod_mul(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn mod_inv(a: u64) -> u64 {
    let (mut base, mut exp, mut acc) = (a, PRIME - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mod_mul(acc, base);
        }
        base = mod_mul(base, base);
        exp >>= 1;
    }
    acc
}

/// Image of a rational modulo the prime; `None` if the denominator vanishes.
fn mod_image(c: &BigRational) -> Option<u64> {
    let p = BigInt::from(PRIME);
    let to = |n: &BigInt| -> u64 { n.mod_floor(&p).try_into().expect("reduced below the prime") };
    let d = to(c.denom());
    (d != 0).then(|| mod_mul(to(c.numer()), mod_inv(d)))
}

/// Upper bound on the degree of the gcd of univariate polynomials over ℚ,
/// coefficients listed from the constant term up. Computed modulo a prime;
/// `None` when a leading coefficient or denominator does not survive.
fn univariate_gcd_degree(a: &[BigRational], b: &[BigRational]) -> Option<usize> {
    // A vanishing leading coefficient could lose the common factor.
    let image = |p: &[BigRational]| -> Option<Vec<u64>> {
        let len = p.iter().rposition(|c| !c.is_zero()).map_or(0, |d| d + 1);
        let v = p[..len]
            .iter()
            .map(mod_image)
            .collect::<Option<Vec<u64>>>()?;
        (v.last() != Some(&0)).then_some(v)
    };
    let (mut a, mut b) = (image(a)?, image(b)?);
    let strip = |p: &mut Vec<u64>| {
        while p.last() == Some(&0) {
            p.pop();
        }
    };
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let inv = mod_inv(*b.last().expect("nonempty"));
        while a.len() >= b.len() {
            let f = mod_mul(*a.last().expect("nonempty"), inv);
            let shift = a.len() - b.len();
            for (k, c) in b.iter().enumerate() {
                a[k + shift] = (a[k + shift] + PRIME - mod_mul(f, *c)) % PRIME;
            }
            a.pop();
            strip(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    Some(a.len().saturating_sub(1))
}

/// `true` when `a` and `b` are certainly coprime. For each variable `v` the
/// others are fixed at a point where the leading coefficient of `a` in `v`
/// survives; the gcd's degree in `v` is bounded by the degree of the gcd of
/// the images.
fn images_coprime(a: &Poly, b: &Poly) -> bool {
    let vars: Vec<Var> = a.vars().union(&b.vars()).copied().collect();
    for &v in &vars {
        let mut found = false;
        for attempt in 0..4i64 {
            let value = |w: Var| -> Option<BigRational> {
                (w != v).then(|| {
                    BigRational::from_integer(BigInt::from(2 + 3 * w as i64 + 5 * attempt))
                })
            };
            let lead = a.coefficients_in(v).pop().unwrap_or_else(Poly::zero);
            if lead.substitute_constants(&value).is_zero() {
                continue;
            }
            let image = |p: &Poly| -> Vec<BigRational> {
                p.substitute_constants(&value)
                    .coefficients_in(v)
                    .iter()
                    .map(|c| c.constant_value().expect("other variables are fixed"))
                    .collect()
            };
            match univariate_gcd_degree(&image(a), &image(b)) {
                Some(0) => {}
                Some(_) => return false,
                None => continue,
            }
            found = true;
            break;
        }
        if !found {
            return false;
        }
    }
    true
}

/// Gcd of a list of polynomials, stopping early at 1.
pub fn gcd_list(polys: &[Poly]) -> Poly {
    let mut g = Poly::zero();
    for p in polys {
        if p.is_zero() {
            continue;
        }
        g = gcd(&g, p);
        if g.is_one() {
            break;
        }
    }
    g
}

fn monomial_gcd(a: &Poly, b: &Poly) -> Poly {
    let mut m = a.terms[0].0.clone();
    for (n, _) in a.terms.iter().chain(b.terms.iter()) {
        m = m.gcd(n);
        if m.is_one() {
            break;
        }
    }
    Poly::monomial(m, BigRational::one())
}

fn divide_all(coeffs: &[Poly], by: &Poly) -> Vec<Poly> {
    coeffs
        .iter()
        .map(|c| c.div_exact(by).expect("content divides every coefficient"))
        .collect()
}

fn trim(p: &mut Vec<Poly>) {
    while p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
}

fn primitive_part(mut p: Vec<Poly>) -> Vec<Poly> {
    trim(&mut p);
    let content = gcd_list(&p);
    let mut out = if content.is_one() || content.is_zero() {
        p
    } else {
        divide_all(&p, &content)
    };
    // Scale to integer coefficients with no common factor and a positive
    // leading coefficient, which keeps the remainder sequence small.
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for q in &out {
        for (_, c) in &q.terms {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
    }
    if num.is_zero() {
        return out;
    }
    let mut scale = BigRational::new(den, num);
    if out
        .last()
        .map(|l| l.leading_coefficient().is_negative())
        .unwrap_or(false)
    {
        scale = -scale;
    }
    if !scale.is_one() {
        out = out.iter().map(|q| q.scale(&scale)).collect();
    }
    out
}

/// Primitive polynomial remainder sequence over `R[v]` for primitive inputs.
fn primitive_prs(a: Vec<Poly>, b: Vec<Poly>) -> Vec<Poly> {
    let (mut p, mut q) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    trim(&mut p);
    trim(&mut q);
    loop {
        if q.len() <= 1 {
            // q is a nonzero element of R and primitive, hence a unit.
            return vec![Poly::one()];
        }
        let r = pseudo_remainder(&p, &q);
        if r.is_empty() {
            return primitive_part(q);
        }
        p = q;
        q = primitive_part(r);
    }
}

fn pseudo_remainder(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let db = b.len() - 1;
    let lcb = &b[db];
    let mut r: Vec<Poly> = a.to_vec();
    trim(&mut r);
    while r.len() > db {
        let dr = r.len() - 1;
        let lcr = r[dr].clone();
        let shift = dr - db;
        let mut next: Vec<Poly> = r.iter().map(|c| c.mul(lcb)).collect();
        for (k, bk) in b.iter().enumerate() {
            next[k + shift] = next[k + shift].sub(&bk.mul(&lcr));
        }
        trim(&mut next);
        r = next;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Poly {
        Poly::var(0)
    }
    fn y() -> Poly {
        Poly::var(1)
    }
    fn c(n: i64) -> Poly {
        Poly::integer(n)
    }

    #[test]
    fn graded_lex_order() {
        let x2 = Monomial::var(0, 2);
        let xy = Monomial::var(0, 1).mul(&Monomial::var(1, 1));
        let y2 = Monomial::var(1, 2);
        let x = Monomial::var(0, 1);
        assert!(x2 > xy && xy > y2 && y2 > x);
        assert!(x > Monomial::one());
    }

    #[test]
    fn arithmetic_basics() {
        let p = x().add(&c(1));
        let q = x().sub(&c(1));
        assert_eq!(p.mul(&q), x().pow(2).sub(&c(1)));
        assert!(p.sub(&p).is_zero());
        assert_eq!(
            x().pow(3).derivative(0),
            x().pow(2).scale(&BigRational::from_integer(3.into()))
        );
    }

    #[test]
    fn exact_division() {
        let a = x().pow(2).sub(&c(1));
        let b = x().sub(&c(1));
        assert_eq!(a.div_exact(&b), Some(x().add(&c(1))));
        assert_eq!(a.div_exact(&y()), None);
        assert_eq!(x().add(&c(1)).div_exact(&x()), None);
    }

    #[test]
    fn gcd_shares_factor() {
        let f = x().add(&y());
        let a = f.mul(&x().sub(&c(2)));
        let b = f.mul(&y().add(&c(3))).mul(&x());
        assert_eq!(gcd(&a, &b), f);
        assert!(gcd(&x().add(&c(1)), &x().sub(&c(1))).is_one());
    }

    #[test]
    fn gcd_with_disjoint_variables() {
        let t = Poly::var(5);
        let a = x().mul(&t).add(&x().pow(2));
        let b = x().pow(2).add(&x());
        assert_eq!(gcd(&a, &b), x());
    }

    #[test]
    fn gcd_multivariate_power() {
        let f = x().mul(&y()).add(&c(1));
        let a = f.pow(3);
        let b = f.pow(2).mul(&x().add(&y()));
        assert_eq!(gcd(&a, &b), f.pow(2).monic());
    }

    #[test]
    fn image_test_is_conservative() {
        let f = x().mul(&y()).add(&c(1));
        let g = x().sub(&y().pow(2));
        assert!(images_coprime(&f, &g));
        assert!(!images_coprime(&f.mul(&g), &g.mul(&x().add(&c(3)))));
        // Common factor free of the first variable.
        let h = y().add(&c(2));
        assert!(!images_coprime(&h.mul(&x()), &h.mul(&x().add(&c(1)))));
        let q = |n: i64| BigRational::from_integer(n.into());
        // x² - 1 and x + 1.
        assert_eq!(
            univariate_gcd_degree(&[q(-1), q(0), q(1)], &[q(1), q(1)]),
            Some(1)
        );
        assert_eq!(
            univariate_gcd_degree(&[q(-1), q(0), q(1)], &[q(2), q(1)]),
            Some(0)
        );
        // A leading coefficient that is a multiple of the prime.
        assert_eq!(
            univariate_gcd_degree(&[q(1), q(PRIME as i64)], &[q(2), q(1)]),
            None
        );
    }
}
