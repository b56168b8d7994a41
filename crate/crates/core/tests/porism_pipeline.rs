mod common;

use common::*;
use poncelet_core::closure::{check_member, incidence_count_on_d, porism_pencil, split_gamma};
use poncelet_core::schwarzenberger::zero_locus;
use poncelet_core::Error;

#[test]
fn chapple_pencil_has_dimension_two_and_members_reclose() {
    let (c, d) = chapple();
    let report = trace_from(&c, &d, point_on_circle(2.0, 0.3), 3);
    assert!(report.closed, "residual {}", report.residual);
    let f = report.form.clone().unwrap();
    let pp = porism_pencil(&c, &d, &f, &tol()).unwrap();
    assert_eq!(pp.nullity, 2);
    let split = split_gamma(&pp, &tol()).unwrap();
    assert_eq!(split.gamma1.degree(), 0);
    let mut r = rng(7);
    for _ in 0..10 {
        let t = random_real_p1(&mut r);
        let member = pp.pencil.member(t.u(), t.v());
        let check = check_member(&pp, &member, &tol(), &cert()).unwrap();
        assert!(check.passed, "{check:?}");
    }
}

#[test]
fn fuss_pencil() {
    let (c, d) = fuss();
    let report = trace_from(&c, &d, point_on_circle(2f64.sqrt(), 1.1), 4);
    assert!(report.closed, "residual {}", report.residual);
    let pp = porism_pencil(&c, &d, report.form.as_ref().unwrap(), &tol()).unwrap();
    assert_eq!(pp.nullity, 2);
    assert_eq!(split_gamma(&pp, &tol()).unwrap().gamma1.degree(), 1);
    let gon = zero_locus(pp.pencil.f(), &tol()).unwrap();
    assert!(
        incidence_count_on_d(&gon, &pp.outer_canonical, &cert())
            .unwrap()
            .passed
    );
}

#[test]
fn perturbed_chapple_is_not_a_porism() {
    let (c, _) = chapple();
    let d = circle(0.0, 0.0, 2.1);
    let report = trace_from(&c, &d, point_on_circle(2.1, 0.3), 3);
    assert!(!report.closed && report.residual >= 1e-3);
    let f = report.side_form();
    match porism_pencil(&c, &d, &f, &tol()) {
        Err(Error::PorismCertificateFailed { dimension }) => assert_eq!(dimension, 1),
        other => panic!("expected failure, got {:?}", other.map(|p| p.nullity)),
    }
}
