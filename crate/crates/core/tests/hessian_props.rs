use lsa_core::bialgebroid::s_equation_equiv;
use lsa_core::hessian::{
    check_pseudo_hessian, codazzi, connection_algebroid, hessian_bialgebroid, hessian_double,
    hessian_metric,
};
use lsa_core::presymplectic::{check_presymplectic, split_to_bialgebroid};
use lsa_core::{FlatConnection, Matrix, Scalar, Subbundle, SymTensor, Vars};
use proptest::prelude::*;

fn metric(vars: &Vars, rows: &[&[&str]]) -> SymTensor {
    SymTensor::new(
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|s| vars.parse(s).unwrap()).collect())
                .collect(),
        )
        .unwrap(),
    )
    .unwrap()
}

#[test]
fn potentials_run_through_the_pipeline() {
    for (n, phi) in [
        (1, "x1^2/2"),
        (1, "x1^3/6"),
        (2, "x1^2*x2/2"),
        (2, "x1^2/2 + x2^3/6"),
    ] {
        let vars = Vars::coordinates(n);
        let conn = FlatConnection::coordinate(vars.clone());
        let g = hessian_metric(&vars.parse(phi).unwrap(), &vars).unwrap();
        assert!(check_pseudo_hessian(&conn, &g).unwrap().passed(), "{phi}");
        let (c, rep) = hessian_bialgebroid(&conn, &g, 3, 0).unwrap();
        assert!(rep.passed(), "{phi}: {rep:?}");
        let (e, rep) = hessian_double(&conn, &g, 3, 0).unwrap();
        assert!(rep.passed(), "{phi}: {rep:?}");
        let back = split_to_bialgebroid(&e, &Subbundle::first_half(n), &Subbundle::second_half(n))
            .unwrap();
        // The split uses generic labels.
        assert_eq!(back.a.with_labels(c.a.labels().clone()), c.a);
        assert_eq!(back.astar.with_labels(c.astar.labels().clone()), c.astar);
    }
}

#[test]
fn inverse_metric_of_the_cubic() {
    let v = Vars::coordinates(2);
    let g = hessian_metric(&v.parse("x1^2*x2/2").unwrap(), &v).unwrap();
    let h = g.inverse().unwrap();
    assert_eq!(h, metric(&v, &[&["0", "1/x1"], &["1/x1", "-x2/x1^2"]]));
}

#[test]
fn non_hessian_metric_is_refused() {
    let v = Vars::coordinates(2);
    let conn = FlatConnection::coordinate(v.clone());
    let g = metric(&v, &[&["1", "0"], &["0", "x1"]]);
    assert!(matches!(
        hessian_bialgebroid(&conn, &g, 0, 0),
        Err(lsa_core::Error::NotHessian(_))
    ));
}

#[test]
fn affine_connection_on_the_line() {
    // ∇_∂∂ = ∂ is flat and torsion-free; in one variable every
    // nondegenerate g passes.
    let v = Vars::coordinates(1);
    let conn = FlatConnection::new(v.clone(), vec![vec![vec![Scalar::one()]]]).unwrap();
    assert!(connection_algebroid(&conn).check_left_symmetric().passed());
    let g = metric(&v, &[&["x1^2 + 1"]]);
    assert!(check_pseudo_hessian(&conn, &g).unwrap().passed());
    let (e, rep) = hessian_double(&conn, &g, 2, 0).unwrap();
    assert!(rep.passed(), "{rep:?}");
    assert!(check_presymplectic(&e, 2, 1).passed());
}

fn poly_text() -> impl Strategy<Value = String> {
    terms(3)
}

fn terms(max_exp: u32) -> impl Strategy<Value = String> {
    prop::collection::vec((-3i64..=3, 0..=max_exp, 0..=max_exp), 1..5).prop_map(|terms| {
        terms
            .iter()
            .map(|(c, a, b)| format!("({c})*x1^{a}*x2^{b}"))
            .collect::<Vec<_>>()
            .join(" + ")
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn every_potential_gives_a_pseudo_hessian_metric(phi in poly_text()) {
        let v = Vars::coordinates(2);
        let conn = FlatConnection::coordinate(v.clone());
        match hessian_metric(&v.parse(&phi).unwrap(), &v) {
            Ok(g) => prop_assert!(check_pseudo_hessian(&conn, &g).unwrap().passed()),
            Err(e) => prop_assert!(matches!(e, lsa_core::Error::Degenerate(_))),
        }
    }

    #[test]
    fn codazzi_and_coboundary_agree(a in poly_text(), b in poly_text(), c in poly_text()) {
        let v = Vars::coordinates(2);
        let conn = FlatConnection::coordinate(v.clone());
        let g = metric(&v, &[&[&a, &b], &[&b, &c]]);
        let rep = check_pseudo_hessian(&conn, &g).unwrap();
        prop_assert!(rep.check("agreement").unwrap().passed);
        // Codazzi is skew in its first two slots.
        for k in 0..2 {
            prop_assert!((codazzi(&conn, &g, 0, 1, k) + codazzi(&conn, &g, 1, 0, k)).is_zero());
        }
    }

}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn hessian_inverse_solves_the_s_equation(phi in terms(2).prop_map(|t| t + " + x1^3*x2")) {
        let v = Vars::coordinates(2);
        let conn = FlatConnection::coordinate(v.clone());
        let Ok(g) = hessian_metric(&v.parse(&phi).unwrap(), &v) else { return Ok(()); };
        let eq = s_equation_equiv(&connection_algebroid(&conn), &g.inverse().unwrap()).unwrap();
        prop_assert!(eq.bracket_vanishes && eq.coboundary_vanishes);
    }
}
