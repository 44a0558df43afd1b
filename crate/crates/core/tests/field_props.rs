use lsa_core::poly::Var;
use lsa_core::{Scalar, Vars};
use num_rational::BigRational;
use proptest::prelude::*;

fn vars() -> Vars {
    Vars::coordinates(2)
}

/// Polynomials in `x1, x2` with small integer coefficients, as strings so
/// that the parser is exercised too.
fn poly_text() -> impl Strategy<Value = String> {
    prop::collection::vec((-3i64..=3, 0u32..=2, 0u32..=2), 1..4).prop_map(|terms| {
        terms
            .iter()
            .map(|(c, a, b)| format!("({c})*x1^{a}*x2^{b}"))
            .collect::<Vec<_>>()
            .join(" + ")
    })
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (poly_text(), poly_text()).prop_filter_map("zero denominator", |(n, d)| {
        let v = vars();
        let (n, d) = (v.parse(&n).ok()?, v.parse(&d).ok()?);
        n.checked_div(&d).ok()
    })
}

/// Evaluation at a rational point; `None` when a denominator vanishes there.
fn eval(s: &Scalar, point: &[BigRational; 2]) -> Option<BigRational> {
    let v = s
        .substitute(&|x: Var| point.get(x as usize).cloned())
        .ok()?;
    v.constant_value()
}

fn point() -> impl Strategy<Value = [BigRational; 2]> {
    ((-7i64..=7, 1i64..=5), (-7i64..=7, 1i64..=5)).prop_map(|((a, b), (c, d))| {
        [
            BigRational::new(a.into(), b.into()),
            BigRational::new(c.into(), d.into()),
        ]
    })
}

#[test]
fn product_rule_on_dense_fractions() {
    let v = vars();
    let a = v
        .parse("(-x1^2 - 1/2*x1*x2 - 1/2*x1 - 1/2*x2 - 1)/(x1^2 - x1 + x2 - 1)")
        .unwrap();
    let b = v
        .parse(
            "(-x1^2 - x1*x2 - 1/2*x2^2 - 1/2*x1 + x2 - 1/2)/(x1^2 + 1/2*x2^2 + 1/2*x1 + x2 + 1/2)",
        )
        .unwrap();
    assert_eq!((&a * &b).derive(0), &a.derive(0) * &b + &a * &b.derive(0));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn division_inverts_multiplication(a in scalar(), b in scalar()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).checked_div(&b).unwrap(), a.clone());
        prop_assert!((&b * &b.inv().unwrap()).is_one());
    }

    #[test]
    fn arithmetic_commutes_with_evaluation(a in scalar(), b in scalar(), p in point()) {
        let (Some(ea), Some(eb)) = (eval(&a, &p), eval(&b, &p)) else { return Ok(()); };
        prop_assert_eq!(eval(&(&a + &b), &p), Some(&ea + &eb));
        prop_assert_eq!(eval(&(&a * &b), &p), Some(&ea * &eb));
        prop_assert_eq!(eval(&(&a - &b), &p), Some(&ea - &eb));
    }

    #[test]
    fn derivative_rules(a in scalar(), b in scalar(), v in 0u32..2) {
        prop_assert_eq!((&a * &b).derive(v), &a.derive(v) * &b + &a * &b.derive(v));
        prop_assert_eq!((&a + &b).derive(v), a.derive(v) + b.derive(v));
        prop_assert_eq!(a.derive(0).derive(1), a.derive(1).derive(0));
    }

    #[test]
    fn canonical_form(a in scalar()) {
        let v = vars();
        let back = v.parse(&v.print(&a)).unwrap();
        prop_assert_eq!(&back, &a);
        if !a.is_polynomial() {
            prop_assert!(a.denominator().leading_coefficient() == BigRational::from_integer(1.into()));
        }
    }
}
