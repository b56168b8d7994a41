//! Scalar backends, tolerance policy and small dense linear algebra.

mod matrix;
mod scalar;
mod tolerance;

pub use matrix::{max_abs_index, normalize_max_abs, LinearSolution, Matrix};
pub use scalar::{rational_convergents, rational_to_f64, Backend, Exact, Float, Scalar};
pub use tolerance::{Tolerance, CERTIFY_TOL};

/// Euclidean norm of a (possibly complex) vector.
pub fn norm2<S: Scalar>(v: &[S]) -> f64 {
    v.iter().map(|x| x.modulus().powi(2)).sum::<f64>().sqrt()
}

/// Sine of the angle between two homogeneous vectors, `|a x b| / (|a| |b|)`
/// generalised to any length via the Gram determinant. Zero iff proportional.
pub fn chordal_distance<S: Scalar>(a: &[S], b: &[S]) -> f64 {
    let a: Vec<_> = a.iter().map(Scalar::to_c64).collect();
    let b: Vec<_> = b.iter().map(Scalar::to_c64).collect();
    let na: f64 = a.iter().map(|z| z.norm_sqr()).sum();
    let nb: f64 = b.iter().map(|z| z.norm_sqr()).sum();
    if na == 0.0 || nb == 0.0 {
        return if na == nb { 0.0 } else { 1.0 };
    }
    let mut cross = 0.0;
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            cross += (a[i] * b[j] - a[j] * b[i]).norm_sqr();
        }
    }
    (cross / (na * nb)).sqrt().min(1.0)
}

/// Whether two vectors span the same projective point: exactly (all 2x2
/// minors vanish) on the exact backend, chordal distance `<= rel` on floats.
pub fn vectors_proportional<S: Scalar>(a: &[S], b: &[S], rel: f64) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let a_zero = a.iter().all(Scalar::is_exact_zero);
    let b_zero = b.iter().all(Scalar::is_exact_zero);
    if a_zero || b_zero {
        return a_zero && b_zero;
    }
    if S::is_exact() {
        (0..a.len()).all(|i| {
            (i + 1..a.len()).all(|j| {
                (a[i].clone() * b[j].clone() - a[j].clone() * b[i].clone()).is_exact_zero()
            })
        })
    } else {
        chordal_distance(a, b) <= rel
    }
}
