//! Fixed 3x3 matrix helpers over a backend.

use crate::numeric::Scalar;

pub type Mat3<S> = [[S; 3]; 3];

pub fn identity<S: Scalar>() -> Mat3<S> {
    std::array::from_fn(|i| std::array::from_fn(|j| if i == j { S::one() } else { S::zero() }))
}

pub fn from_i64<S: Scalar>(m: [[i64; 3]; 3]) -> Mat3<S> {
    std::array::from_fn(|i| std::array::from_fn(|j| S::from_i64(m[i][j])))
}

pub fn det<S: Scalar>(m: &Mat3<S>) -> S {
    let c = |i: usize, j: usize| m[i][j].clone();
    c(0, 0) * (c(1, 1) * c(2, 2) - c(1, 2) * c(2, 1))
        - c(0, 1) * (c(1, 0) * c(2, 2) - c(1, 2) * c(2, 0))
        + c(0, 2) * (c(1, 0) * c(2, 1) - c(1, 1) * c(2, 0))
}

/// Adjugate (transpose of the cofactor matrix): `m * adj(m) = det(m) I`.
pub fn adjugate<S: Scalar>(m: &Mat3<S>) -> Mat3<S> {
    let c = |i: usize, j: usize| m[i % 3][j % 3].clone();
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            // cofactor of (j, i); cyclic indices absorb the sign
            c(j + 1, i + 1) * c(j + 2, i + 2) - c(j + 1, i + 2) * c(j + 2, i + 1)
        })
    })
}

pub fn transpose<S: Scalar>(m: &Mat3<S>) -> Mat3<S> {
    std::array::from_fn(|i| std::array::from_fn(|j| m[j][i].clone()))
}

pub fn mul<S: Scalar>(a: &Mat3<S>, b: &Mat3<S>) -> Mat3<S> {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            (0..3).fold(S::zero(), |acc, k| acc + a[i][k].clone() * b[k][j].clone())
        })
    })
}

pub fn mul_vec<S: Scalar>(m: &Mat3<S>, v: &[S; 3]) -> [S; 3] {
    std::array::from_fn(|i| (0..3).fold(S::zero(), |acc, k| acc + m[i][k].clone() * v[k].clone()))
}

pub fn dot<S: Scalar>(a: &[S; 3], b: &[S; 3]) -> S {
    a[0].clone() * b[0].clone() + a[1].clone() * b[1].clone() + a[2].clone() * b[2].clone()
}

pub fn cross<S: Scalar>(a: &[S; 3], b: &[S; 3]) -> [S; 3] {
    [
        a[1].clone() * b[2].clone() - a[2].clone() * b[1].clone(),
        a[2].clone() * b[0].clone() - a[0].clone() * b[2].clone(),
        a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone(),
    ]
}

pub fn scale<S: Scalar>(m: &Mat3<S>, s: &S) -> Mat3<S> {
    std::array::from_fn(|i| std::array::from_fn(|j| m[i][j].clone() * s.clone()))
}

pub fn max_modulus<S: Scalar>(m: &Mat3<S>) -> f64 {
    m.iter().flatten().map(Scalar::modulus).fold(0.0, f64::max)
}

pub fn map<S, T>(m: &Mat3<S>, f: impl Fn(&S) -> T) -> Mat3<T> {
    std::array::from_fn(|i| std::array::from_fn(|j| f(&m[i][j])))
}

/// `a` and `b` agree up to a nonzero scalar factor (exactly, or within `rel`).
pub fn proportional<S: Scalar>(a: &Mat3<S>, b: &Mat3<S>, rel: f64) -> bool {
    let fa: Vec<S> = a.iter().flatten().cloned().collect();
    let fb: Vec<S> = b.iter().flatten().cloned().collect();
    crate::numeric::vectors_proportional(&fa, &fb, rel)
}
