mod common;

use common::*;
use poncelet_core::forms::{BinaryForm, TernaryForm};
use poncelet_core::numeric::{Exact, Float, Matrix, Scalar};
use poncelet_core::projective::{incident, CanonicalFrame, Conic, ProjPoint, Transformable};
use poncelet_core::schwarzenberger::{
    build_matrix, determinant_curve, determinant_form, evaluate_section_fiber, section_vanishes_at,
    vanishes_by_division, vanishes_by_rank, zero_locus,
};
use rand::Rng;

#[test]
fn evaluated_matrix_has_full_column_rank() {
    let mut r = rng(31);
    for n in 2..=8 {
        let m = build_matrix(n).unwrap();
        for _ in 0..100 {
            assert_eq!(m.eval(&random_point(&mut r)).rank(&tol()).unwrap(), n - 1);
            assert_eq!(
                m.eval(&random_rational_point(&mut r)).rank(&tol()).unwrap(),
                n - 1
            );
        }
    }
}

#[test]
fn vanishing_tests_agree_exact() {
    let mut r = rng(32);
    for n in 2..=6 {
        for _ in 0..10 {
            let (f, _) = random_rational_squarefree(&mut r, n);
            let gon = zero_locus(&f, &tol()).unwrap();
            assert_eq!(gon.vertices().len(), n * (n - 1) / 2);
            for v in gon.vertices() {
                assert!(section_vanishes_at(&f, &v.point, &tol()).unwrap());
                assert!(evaluate_section_fiber(&f, &v.point)
                    .unwrap()
                    .iter()
                    .all(Scalar::is_exact_zero));
            }
            for _ in 0..30 {
                let x = random_rational_point(&mut r);
                let is_vertex = gon.vertex_points().contains(&x);
                assert_eq!(section_vanishes_at(&f, &x, &tol()).unwrap(), is_vertex);
                let zero = evaluate_section_fiber(&f, &x)
                    .unwrap()
                    .iter()
                    .all(Scalar::is_exact_zero);
                assert_eq!(zero, is_vertex);
            }
        }
    }
}

#[test]
fn vanishing_tests_agree_float() {
    let mut r = rng(33);
    for n in 2..=6 {
        for _ in 0..10 {
            let (f, _) = random_squarefree(&mut r, n);
            let gon = zero_locus(&f, &tol()).unwrap();
            for v in gon.vertices() {
                assert!(vanishes_by_rank(&f, &v.point, &tol()).unwrap());
                assert!(vanishes_by_division(&f, &v.point, &tol()).unwrap());
            }
            for _ in 0..30 {
                let x = random_point(&mut r);
                assert!(!vanishes_by_rank(&f, &x, &tol()).unwrap());
                assert!(!vanishes_by_division(&f, &x, &tol()).unwrap());
            }
        }
    }
}

#[test]
fn fiber_is_chart_free_at_infinity_points() {
    // x0 = 0 falls back to the mirrored chart
    let f = BinaryForm::<Exact>::from_i64(&[1, 0, -1, 0]).unwrap();
    let v = ProjPoint::from_i64([0, 1, 0]).unwrap();
    assert!(!evaluate_section_fiber(&f, &v)
        .unwrap()
        .iter()
        .all(Scalar::is_exact_zero));
    let g = BinaryForm::<Exact>::from_i64(&[0, 1, 0, -1]).unwrap(); // uv(u − v)... roots (0:1),(1:0),(1:1)
    let gon = zero_locus(&g, &tol()).unwrap();
    for v in gon.vertices() {
        assert!(evaluate_section_fiber(&g, &v.point)
            .unwrap()
            .iter()
            .all(Scalar::is_exact_zero));
    }
}

#[test]
fn determinant_is_bilinear_and_alternating() {
    let mut r = rng(34);
    for n in 2..=5 {
        let (f, _) = random_rational_squarefree(&mut r, n);
        let (g, _) = random_rational_squarefree(&mut r, n);
        let Ok(fg) = determinant_curve(&f, &g, &tol()) else {
            continue;
        };
        let (l, m) = (
            Exact::from_i64(r.gen_range(1..7)),
            Exact::from_i64(r.gen_range(-6..7)),
        );
        let lin = BinaryForm::combine(&l, &f, &m, &g).unwrap();
        assert_eq!(
            determinant_form(&lin, &g, &tol()).unwrap(),
            fg.form().scale(&l)
        );
        let gf = determinant_form(&g, &f, &tol()).unwrap();
        assert_eq!(gf, fg.form().scale(&Exact::from_i64(-1)));
        assert!(determinant_form(&f, &f, &tol()).unwrap().is_zero());
    }
}

#[test]
fn pencil_sweep_exact_and_float() {
    let mut r = rng(35);
    for n in 2..=5 {
        for _ in 0..4 {
            let (f, _) = random_squarefree(&mut r, n);
            let (g, _) = random_squarefree(&mut r, n);
            let curve = determinant_curve(&f, &g, &tol()).unwrap();
            assert_eq!(curve.degree() as usize, n - 1);
            for _ in 0..5 {
                let t = random_complex_p1(&mut r);
                let gon = zero_locus(&BinaryForm::combine(t.u(), &f, t.v(), &g).unwrap(), &tol())
                    .unwrap();
                for v in gon.vertices() {
                    assert!(curve.residual(&v.point) <= 1e-8);
                }
            }
        }
    }
}

#[test]
fn determinant_curve_meets_each_side_only_at_vertices() {
    let mut r = rng(36);
    for n in 3..=6 {
        let (f, _) = random_squarefree(&mut r, n);
        let (g, _) = random_squarefree(&mut r, n);
        let curve = determinant_curve(&f, &g, &tol()).unwrap();
        let gon = zero_locus(&f, &tol()).unwrap();
        for k in 0..n {
            let on: Vec<ProjPoint<Float>> = gon
                .vertices()
                .iter()
                .filter(|v| v.lines.0 == k || v.lines.1 == k)
                .map(|v| v.point.clone())
                .collect();
            assert_eq!(on.len(), n - 1);
            // restrict to the side, spanned by two random points of it
            let line = &gon.lines()[k];
            assert!(on.iter().all(|p| incident(line, p, &tol())));
            let restricted = curve.form().restrict_to_line(line);
            assert_eq!(restricted.degree(), n - 1);
            let hits = poncelet_core::forms::roots(&restricted, &tol()).unwrap();
            // every restricted root is one of the n − 1 vertices
            let basis = basis_points(line);
            for h in &hits {
                let p = ProjPoint::new(std::array::from_fn(|i| {
                    basis[0][i] * h.u() + basis[1][i] * h.v()
                }))
                .unwrap();
                assert!(
                    on.iter().any(|v| v.distance(&p) < 1e-7),
                    "side {k} meets the curve off the vertices"
                );
            }
        }
    }
}

// same spanning pair the library uses: l × e_i for the two non-dominant i
fn basis_points(line: &poncelet_core::projective::ProjLine<Float>) -> [[Float; 3]; 2] {
    let l = line.coords();
    let k = (0..3)
        .max_by(|&a, &b| l[a].norm().total_cmp(&l[b].norm()).then(b.cmp(&a)))
        .unwrap();
    let others: Vec<usize> = (0..3).filter(|&i| i != k).collect();
    let e = |i: usize| -> [Float; 3] {
        std::array::from_fn(|j| if i == j { re(1.0) } else { re(0.0) })
    };
    [
        poncelet_core::projective::mat3::cross(l, &e(others[0])),
        poncelet_core::projective::mat3::cross(l, &e(others[1])),
    ]
}

/// World computations through the frame of `τ(C0)` match the canonical
/// outputs moved by `τ`.
#[test]
fn frame_bridge_is_equivariant() {
    let mut r = rng(37);
    let c0 = Conic::<Exact>::canonical();
    for _ in 0..3 {
        let tau = random_int_transform(&mut r);
        let c = c0.transformed(&tau);
        let seed = ProjPoint::from_i64([1, 0, 0]).unwrap().transformed(&tau);
        let frame = CanonicalFrame::new(&c, Some(&seed), &tol()).unwrap();
        for n in 2..=4 {
            let (f, _) = random_rational_squarefree(&mut r, n);
            let (g, _) = random_rational_squarefree(&mut r, n);
            let gon = zero_locus(&f, &tol()).unwrap();
            let world_lines: Vec<_> = gon.lines().iter().map(|l| l.transformed(&tau)).collect();
            let fw = frame.tangency_form(&world_lines, &tol()).unwrap();
            let gw = frame
                .tangency_form(
                    &zero_locus(&g, &tol())
                        .unwrap()
                        .lines()
                        .iter()
                        .map(|l| l.transformed(&tau))
                        .collect::<Vec<_>>(),
                    &tol(),
                )
                .unwrap();
            let mut want: Vec<_> = gon
                .vertex_points()
                .iter()
                .map(|p| p.transformed(&tau))
                .collect();
            let mut got = zero_locus(&fw, &tol())
                .unwrap()
                .to_world(&frame)
                .vertex_points();
            want.sort_by_key(|p| format!("{p:?}"));
            got.sort_by_key(|p| format!("{p:?}"));
            assert_eq!(got, want);
            if let Ok(curve) = determinant_curve(&f, &g, &tol()) {
                let world =
                    frame.form_to_world(determinant_curve(&fw, &gw, &tol()).unwrap().form());
                let moved: TernaryForm<Exact> = curve.form().transformed(&tau);
                assert!(world.proportional_to(&moved, 0.0));
            }
        }
    }
}

#[test]
fn matrix_columns_are_quadric_multiples() {
    let x = ProjPoint::<Exact>::from_i64([2, -3, 5]).unwrap();
    let m: Matrix<Exact> = build_matrix(4).unwrap().eval(&x);
    let q = poncelet_core::forms::quadric_of_point(&x);
    for j in 0..3 {
        let col = BinaryForm::new(m.column(j)).unwrap();
        assert_eq!(col, q.mul(&BinaryForm::monomial(2, j)));
    }
}
