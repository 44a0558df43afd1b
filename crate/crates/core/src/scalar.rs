//! Rational functions over Q: the coefficient field for every structure.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::poly::{gcd, Poly, Var};

/// A reduced fraction `num/den` with monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Scalar::from_poly(Poly::one())
    }

    pub fn from_i64(n: i64) -> Self {
        Scalar::from_poly(Poly::integer(n))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        Scalar::from_rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_rational(c: BigRational) -> Self {
        Scalar::from_poly(Poly::constant(c))
    }

    pub fn from_poly(p: Poly) -> Self {
        Scalar {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn var(v: Var) -> Self {
        Scalar::from_poly(Poly::var(v))
    }

    /// Builds `num/den` in canonical form.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Scalar::zero();
        }
        if let Some(c) = den.constant_value() {
            if c.is_one() {
                return Scalar { num, den };
            }
            return Scalar {
                num: num.scale(&c.recip()),
                den: Poly::one(),
            };
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        Self::normalize(num, den)
    }

    /// Scales so the denominator is monic; assumes the fraction is reduced.
    fn normalize(num: Poly, den: Poly) -> Self {
        let lc = den.leading_coefficient();
        if lc.is_one() {
            Scalar { num, den }
        } else {
            let inv = lc.recip();
            Scalar {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn constant_value(&self) -> Option<BigRational> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    /// Larger of the numerator and denominator total degrees.
    pub fn degree(&self) -> u32 {
        self.num.total_degree().max(self.den.total_degree())
    }

    pub fn check_degree(&self, limit: u32) -> Result<()> {
        let degree = self.degree();
        if degree > limit {
            Err(Error::DegreeOverflow { degree, limit })
        } else {
            Ok(())
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, exp: u32) -> Scalar {
        Scalar {
            num: self.num.pow(exp),
            den: self.den.pow(exp),
        }
    }

    /// Partial derivative in variable `v`.
    pub fn derive(&self, v: Var) -> Scalar {
        if self.num.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() {
            return Scalar::from_poly(self.num.derivative(v));
        }
        let dn = self.num.derivative(v);
        let dd = self.den.derivative(v);
        if dd.is_zero() {
            return Self::reduce(dn, self.den.clone());
        }
        // (n/d)' = (n'd - nd')/d^2; gcd(n, d) = 1 so only a factor of d can cancel.
        let top = dn.mul(&self.den).sub(&self.num.mul(&dd));
        Self::reduce(top, self.den.mul(&self.den))
    }

    pub fn substitute(&self, values: &dyn Fn(Var) -> Option<BigRational>) -> Result<Scalar> {
        let num = self.num.substitute_constants(values);
        let den = self.den.substitute_constants(values);
        Scalar::new(num, den)
    }

    pub fn vars(&self) -> std::collections::BTreeSet<Var> {
        let mut v = self.num.vars();
        v.extend(self.den.vars());
        v
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{:?}", self.num)
        } else {
            write!(f, "({:?})/({:?})", self.num, self.den)
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            let num = self.num.add(&rhs.num);
            return if num.is_zero() {
                Scalar::zero()
            } else {
                Scalar {
                    num,
                    den: Poly::one(),
                }
            };
        }
        if self.den == rhs.den {
            return Scalar::reduce(self.num.add(&rhs.num), self.den.clone());
        }
        if self.den.is_one() {
            return Scalar {
                num: self.num.mul(&rhs.den).add(&rhs.num),
                den: rhs.den.clone(),
            };
        }
        if rhs.den.is_one() {
            return Scalar {
                num: rhs.num.mul(&self.den).add(&self.num),
                den: self.den.clone(),
            };
        }
        let g = gcd(&self.den, &rhs.den);
        let b = self.den.div_exact(&g).expect("gcd divides");
        let d = rhs.den.div_exact(&g).expect("gcd divides");
        let num = self.num.mul(&d).add(&rhs.num.mul(&b));
        if num.is_zero() {
            return Scalar::zero();
        }
        // Only factors of g can cancel against the new numerator.
        let h = gcd(&num, &g);
        let (num, g) = if h.is_one() {
            (num, g)
        } else {
            (
                num.div_exact(&h).expect("gcd divides"),
                g.div_exact(&h).expect("gcd divides"),
            )
        };
        Scalar::normalize(num, b.mul(&d).mul(&g))
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar::from_poly(self.num.mul(&rhs.num));
        }
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let cut = |p: &Poly, g: &Poly| {
            if g.is_one() {
                p.clone()
            } else {
                p.div_exact(g).expect("gcd divides")
            }
        };
        let num = cut(&self.num, &g1).mul(&cut(&rhs.num, &g2));
        let den = cut(&self.den, &g2).mul(&cut(&rhs.den, &g1));
        Scalar::normalize(num, den)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// # Panics
/// Panics on division by zero; use [`Scalar::checked_div`] for fallible division.
impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &'a Scalar) -> Scalar {
        self.checked_div(rhs).expect("division by zero scalar")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl AddAssign<Scalar> for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self = &*self + &rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl SubAssign<Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: Scalar) {
        *self = &*self - &rhs;
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_i64(n)
    }
}

/// Variable names: base coordinates first, then declared parameters.
/// Indices past the declared ones print as generated parameters `_g{k}`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Vars {
    names: Vec<String>,
    nbase: usize,
}

impl Vars {
    pub fn new<S: Into<String>>(base: Vec<S>, params: Vec<S>) -> Result<Self> {
        let nbase = base.len();
        let names: Vec<String> = base.into_iter().chain(params).map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            if !is_identifier(n) || n.starts_with("_g") {
                return Err(Error::Parse {
                    pos: 0,
                    msg: format!("invalid variable name `{n}`"),
                });
            }
            if names[..i].contains(n) {
                return Err(Error::Parse {
                    pos: 0,
                    msg: format!("duplicate variable name `{n}`"),
                });
            }
        }
        Ok(Vars { names, nbase })
    }

    /// Base coordinates named `x1..xn`, no parameters.
    pub fn coordinates(n: usize) -> Self {
        Vars {
            names: (1..=n).map(|i| format!("x{i}")).collect(),
            nbase: n,
        }
    }

    pub fn base_count(&self) -> usize {
        self.nbase
    }

    pub fn declared_count(&self) -> usize {
        self.names.len()
    }

    pub fn base_names(&self) -> &[String] {
        &self.names[..self.nbase]
    }

    pub fn param_names(&self) -> &[String] {
        &self.names[self.nbase..]
    }

    pub fn name(&self, v: Var) -> String {
        match self.names.get(v as usize) {
            Some(n) => n.clone(),
            None => format!("_g{}", v as usize - self.names.len()),
        }
    }

    pub fn index(&self, name: &str) -> Result<Var> {
        if let Some(i) = self.names.iter().position(|n| n == name) {
            return Ok(i as Var);
        }
        if let Some(rest) = name.strip_prefix("_g") {
            if let Ok(k) = rest.parse::<usize>() {
                return Ok((self.names.len() + k) as Var);
            }
        }
        Err(Error::UnknownVariable(name.to_string()))
    }

    pub fn base_index(&self, name: &str) -> Result<Var> {
        match self.names[..self.nbase].iter().position(|n| n == name) {
            Some(i) => Ok(i as Var),
            None => Err(Error::UnknownVariable(name.to_string())),
        }
    }

    /// First index free for generated parameters.
    pub fn fresh_start(&self) -> Var {
        self.names.len() as Var
    }

    pub fn parse(&self, text: &str) -> Result<Scalar> {
        crate::parse::parse_scalar(text, self)
    }

    pub fn print(&self, s: &Scalar) -> String {
        crate::parse::print_scalar(s, self)
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A derivation of the base: one component per base coordinate.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct VectorField(pub Vec<Scalar>);

impl VectorField {
    pub fn zero(n: usize) -> Self {
        VectorField(vec![Scalar::zero(); n])
    }

    /// The coordinate field `∂/∂x_mu`.
    pub fn coordinate(n: usize, mu: usize) -> Self {
        let mut v = vec![Scalar::zero(); n];
        v[mu] = Scalar::one();
        VectorField(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Scalar::is_zero)
    }

    pub fn apply(&self, f: &Scalar) -> Scalar {
        if f.constant_value().is_some() {
            return Scalar::zero();
        }
        let mut acc = Scalar::zero();
        for (mu, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let d = f.derive(mu as Var);
            if !d.is_zero() {
                acc += c * &d;
            }
        }
        acc
    }

    pub fn add(&self, other: &VectorField) -> VectorField {
        VectorField(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &VectorField) -> VectorField {
        VectorField(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, f: &Scalar) -> VectorField {
        VectorField(self.0.iter().map(|a| a * f).collect())
    }

    /// Applies the vector field to each entry.
    pub fn apply_all(&self, v: &[Scalar]) -> Vec<Scalar> {
        if self.is_zero() {
            return vec![Scalar::zero(); v.len()];
        }
        v.iter().map(|f| self.apply(f)).collect()
    }

    /// The commutator `[self, other]` of derivations.
    pub fn commutator(&self, other: &VectorField) -> VectorField {
        VectorField(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| self.apply(b) - other.apply(a))
                .collect(),
        )
    }
}

/// Applies `v` to `f`, checking that shapes agree.
pub fn apply_vf(v: &VectorField, f: &Scalar, vars: &Vars) -> Result<Scalar> {
    if v.dim() != vars.base_count() {
        return Err(Error::ShapeMismatch(format!(
            "vector field has {} components, base has {} variables",
            v.dim(),
            vars.base_count()
        )));
    }
    Ok(v.apply(f))
}

/// Partial derivative by a named base variable.
pub fn derive(f: &Scalar, var: &str, vars: &Vars) -> Result<Scalar> {
    Ok(f.derive(vars.base_index(var)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars() -> Vars {
        Vars::new(vec!["x", "y"], vec!["t"]).unwrap()
    }

    #[test]
    fn halves_sum_to_one() {
        let h = Scalar::from_ratio(1, 2);
        assert_eq!(&h + &h, Scalar::one());
    }

    #[test]
    fn inverse_cancels() {
        let x = Scalar::var(0);
        assert_eq!(&x * &x.inv().unwrap(), Scalar::one());
        assert_eq!(Scalar::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn quotient_rule() {
        let v = vars();
        let f = v.parse("1/x").unwrap();
        assert_eq!(f.derive(0), v.parse("-1/x^2").unwrap());
        let g = v.parse("t*x + x^2").unwrap();
        assert_eq!(derive(&g, "x", &v).unwrap(), v.parse("t + 2*x").unwrap());
        assert!(matches!(
            derive(&g, "t", &v),
            Err(Error::UnknownVariable(_))
        ));
    }

    #[test]
    fn canonical_denominator_is_monic() {
        let v = vars();
        let a = v.parse("1/(2*x+2)").unwrap();
        let b = v.parse("(1/2)/(x+1)").unwrap();
        assert_eq!(a, b);
        assert!(a.denominator().leading_coefficient().is_one());
    }

    #[test]
    fn vector_field_application() {
        let v = vars();
        let f = v.parse("x*y").unwrap();
        let vf = VectorField(vec![Scalar::one(), Scalar::one()]);
        assert_eq!(apply_vf(&vf, &f, &v).unwrap(), v.parse("x+y").unwrap());
        let w = VectorField(vec![Scalar::var(1), Scalar::zero()]);
        assert_eq!(w.apply(&Scalar::var(0)), Scalar::var(1));
        assert!(VectorField::zero(2).apply(&f).is_zero());
        assert!(apply_vf(&VectorField::zero(3), &f, &v).is_err());
    }
}
