#![allow(dead_code)]

use poncelet_core::closure::{trace_gon, ClosureReport, PonceletFlag};
use poncelet_core::forms::{from_roots, BinaryForm};
use poncelet_core::numeric::{Exact, Float, Scalar, Tolerance};
use poncelet_core::projective::{mat3, Conic, P1Point, ProjPoint, ProjTransform, Transformable};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn re(x: f64) -> Float {
    Float::new(x, 0.0)
}

pub fn tol() -> Tolerance {
    Tolerance::default()
}

pub fn cert() -> Tolerance {
    Tolerance::default()
        .with_rel(poncelet_core::numeric::CERTIFY_TOL)
        .unwrap()
}

pub fn circle(cx: f64, cy: f64, r: f64) -> Conic<Float> {
    Conic::circle(re(cx), re(cy), re(r * r)).unwrap()
}

/// Concentric circles r = 1, R = 2: triangles close.
pub fn chapple() -> (Conic<Float>, Conic<Float>) {
    (circle(0.0, 0.0, 1.0), circle(0.0, 0.0, 2.0))
}

/// Concentric circles r = 1, R = √2: quadrilaterals close.
pub fn fuss() -> (Conic<Float>, Conic<Float>) {
    (circle(0.0, 0.0, 1.0), circle(0.0, 0.0, 2f64.sqrt()))
}

/// Flag at the point of `d` at angle `theta` around the origin, or at its
/// projective image when the conics were transformed.
pub fn flag_at(
    c: &Conic<Float>,
    d: &Conic<Float>,
    p: ProjPoint<Float>,
    branch: usize,
) -> PonceletFlag {
    PonceletFlag::from_point(c, d, p, branch, &tol()).unwrap()
}

pub fn point_on_circle(radius: f64, theta: f64) -> ProjPoint<Float> {
    ProjPoint::affine(re(radius * theta.cos()), re(radius * theta.sin()))
}

pub fn trace_from(
    c: &Conic<Float>,
    d: &Conic<Float>,
    p: ProjPoint<Float>,
    n: usize,
) -> ClosureReport {
    trace_gon(&flag_at(c, d, p, 0), n, &tol()).unwrap()
}

/// Integer-entry transform with determinant bounded away from zero.
pub fn random_int_transform(rng: &mut impl Rng) -> ProjTransform<Exact> {
    loop {
        let m: [[i64; 3]; 3] =
            std::array::from_fn(|_| std::array::from_fn(|_| rng.gen_range(-3..=3)));
        let t = mat3::from_i64::<Exact>(m);
        if !mat3::det(&t).is_exact_zero() {
            return ProjTransform::new(t).unwrap();
        }
    }
}

/// Real transform near the identity, so real circles stay real ellipses in
/// view and nothing runs off to infinity.
pub fn random_float_transform(rng: &mut impl Rng) -> ProjTransform<Float> {
    loop {
        let m: [[Float; 3]; 3] = std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                let base = if i == j { 1.0 } else { 0.0 };
                let spread = if i == 0 { 0.15 } else { 0.6 };
                re(base + rng.gen_range(-spread..spread))
            })
        });
        if let Ok(t) = ProjTransform::new(m) {
            if mat3::det(t.matrix()).norm() > 0.2 {
                return t;
            }
        }
    }
}

pub fn apply<T: Transformable<Float>>(t: &ProjTransform<Float>, x: &T) -> T {
    x.transformed(t)
}

pub fn random_real_p1(rng: &mut impl Rng) -> P1Point<Float> {
    let a: f64 = rng.gen_range(-1.0..1.0);
    let b: f64 = rng.gen_range(-1.0..1.0);
    P1Point::new(re(a), re(b)).unwrap_or_else(|_| P1Point::new(re(1.0), re(0.0)).unwrap())
}

pub fn random_complex_p1(rng: &mut impl Rng) -> P1Point<Float> {
    let z = |rng: &mut dyn rand::RngCore| {
        Float::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    };
    P1Point::new(z(rng), z(rng)).unwrap()
}

/// Float form with `n` well-separated random roots.
pub fn random_squarefree(rng: &mut impl Rng, n: usize) -> (BinaryForm<Float>, Vec<P1Point<Float>>) {
    loop {
        let roots: Vec<P1Point<Float>> = (0..n).map(|_| random_complex_p1(rng)).collect();
        let sep = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| roots[i].distance(&roots[j]))
            .fold(f64::INFINITY, f64::min);
        if sep > 0.05 {
            return (from_roots(&roots).unwrap(), roots);
        }
    }
}

/// Exact form with `n` distinct small rational roots.
pub fn random_rational_squarefree(
    rng: &mut impl Rng,
    n: usize,
) -> (BinaryForm<Exact>, Vec<P1Point<Exact>>) {
    loop {
        let roots: Vec<P1Point<Exact>> = (0..n)
            .map(|_| {
                let (a, b) = (rng.gen_range(-6..=6), rng.gen_range(-6..=6));
                P1Point::from_i64(a, b).unwrap_or_else(|_| P1Point::from_i64(1, 0).unwrap())
            })
            .collect();
        let distinct = (0..n).all(|i| (i + 1..n).all(|j| roots[i] != roots[j]));
        if distinct {
            return (from_roots(&roots).unwrap(), roots);
        }
    }
}

pub fn random_point(rng: &mut impl Rng) -> ProjPoint<Float> {
    let z = |rng: &mut dyn rand::RngCore| {
        Float::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    };
    ProjPoint::new([z(rng), z(rng), z(rng)]).unwrap()
}

pub fn random_rational_point(rng: &mut impl Rng) -> ProjPoint<Exact> {
    loop {
        let c: [i64; 3] = std::array::from_fn(|_| rng.gen_range(-9..=9));
        if let Ok(p) = ProjPoint::from_i64(c) {
            return p;
        }
    }
}

/// A random curve of degree `d` through all of `points`.
pub fn curve_through<S: Scalar>(
    rng: &mut impl Rng,
    points: &[ProjPoint<S>],
    d: u32,
) -> poncelet_core::forms::PlaneCurve<S> {
    use poncelet_core::forms::{monomials, PlaneCurve, TernaryForm};
    use poncelet_core::numeric::Matrix;
    let mons = monomials(d);
    let rows = points
        .iter()
        .map(|p| {
            mons.iter()
                .map(|m| {
                    TernaryForm::from_terms(d, vec![(*m, S::one())])
                        .unwrap()
                        .eval(p.coords())
                })
                .collect()
        })
        .collect();
    let kernel = Matrix::from_rows(rows).unwrap().nullspace(&tol()).unwrap();
    assert!(!kernel.is_empty());
    let mut coeffs = vec![S::zero(); mons.len()];
    for v in &kernel {
        let w = S::from_i64(rng.gen_range(1..=5));
        for (c, x) in coeffs.iter_mut().zip(v) {
            *c = c.clone() + w.clone() * x.clone();
        }
    }
    PlaneCurve::new(TernaryForm::from_dense(d, &coeffs).unwrap()).unwrap()
}
