//! Points, lines and conics of the projective plane, their duality, and the
//! canonical frame used by the Schwarzenberger construction.
//!
//! Coordinates are `(x0 : x1 : x2)`; the affine chart used for rendering and
//! examples is `(x1/x0, x2/x0)`.

mod conic;
mod frame;
pub mod mat3;
mod param;
mod transform;

use std::fmt;

use crate::error::{Error, Result};
use crate::numeric::{chordal_distance, max_abs_index, norm2, Float, Scalar, Tolerance};

pub(crate) use conic::line_basis;
pub use conic::{Conic, Intersection};
pub use frame::CanonicalFrame;
pub use mat3::Mat3;
pub use param::{parametrize_conic, ConicParam, RATIONAL_SEARCH_BOUND};
pub use transform::{ProjTransform, Transformable};

/// Scales a nonzero homogeneous vector to its representative: first nonzero
/// entry 1 (exact) or largest-modulus entry 1, ties to the lowest index (float).
pub(crate) fn normalize_homogeneous<S: Scalar>(v: &mut [S]) -> Result<()> {
    if v.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite("homogeneous coordinates"));
    }
    let idx = if S::is_exact() {
        v.iter().position(|x| !x.is_exact_zero())
    } else {
        max_abs_index(v).filter(|&i| !v[i].is_exact_zero())
    };
    let Some(idx) = idx else {
        return Err(Error::ZeroVector);
    };
    let p = v[idx].clone();
    for x in v.iter_mut() {
        *x = x.clone() / p.clone();
    }
    v[idx] = S::one();
    Ok(())
}

macro_rules! homogeneous_triple {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Clone, PartialEq)]
        pub struct $name<S> {
            coords: [S; 3],
        }

        impl<S: Scalar> $name<S> {
            pub fn new(coords: [S; 3]) -> Result<Self> {
                let mut coords = coords;
                normalize_homogeneous(&mut coords)?;
                Ok($name { coords })
            }

            pub fn from_i64(c: [i64; 3]) -> Result<Self> {
                Self::new(c.map(S::from_i64))
            }

            pub fn coords(&self) -> &[S; 3] {
                &self.coords
            }

            pub fn into_coords(self) -> [S; 3] {
                self.coords
            }

            pub fn to_float(&self) -> $name<Float> {
                $name::new(self.coords.clone().map(|x| x.to_c64())).expect("normalized nonzero")
            }

            /// Sine of the angle between representatives; 0 iff equal.
            pub fn distance(&self, other: &Self) -> f64 {
                chordal_distance(&self.coords, &other.coords)
            }

            /// Equal exactly, or within `rel` in chordal distance.
            pub fn same_as(&self, other: &Self, rel: f64) -> bool {
                if S::is_exact() {
                    self == other
                } else {
                    self.distance(other) <= rel
                }
            }
        }

        impl<S: Scalar> fmt::Debug for $name<S> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "({} : {} : {})", self.coords[0], self.coords[1], self.coords[2])
            }
        }
    };
}

homogeneous_triple!(
    /// A point of the projective plane.
    ProjPoint
);
homogeneous_triple!(
    /// A line `a0 x0 + a1 x1 + a2 x2 = 0`, stored by its coefficient triple.
    ProjLine
);

impl<S: Scalar> ProjPoint<S> {
    /// Affine coordinates `(x1/x0, x2/x0)` when the point is real and finite.
    pub fn affine_real(&self, tol: &Tolerance) -> Option<(f64, f64)> {
        let c = self.coords.clone().map(|x| x.to_c64());
        let scale = c.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if c[0].norm() <= tol.rel * scale {
            return None;
        }
        let x = c[1] / c[0];
        let y = c[2] / c[0];
        let imag = x.im.abs().max(y.im.abs());
        if imag > 1e-7 * (1.0 + x.norm() + y.norm()) {
            return None;
        }
        Some((x.re, y.re))
    }

    /// Point with affine coordinates `(x, y)`.
    pub fn affine(x: S, y: S) -> Self {
        ProjPoint::new([S::one(), x, y]).expect("x0 = 1")
    }
}

/// `|a . x| / (|a| |x|)`, the normalized incidence residual.
pub fn incidence_residual<S: Scalar>(line: &ProjLine<S>, point: &ProjPoint<S>) -> f64 {
    let v = mat3::dot(line.coords(), point.coords());
    v.modulus() / (norm2(line.coords()) * norm2(point.coords()))
}

/// Whether the point lies on the line (exactly, or within `tol.rel`).
pub fn incident<S: Scalar>(line: &ProjLine<S>, point: &ProjPoint<S>, tol: &Tolerance) -> bool {
    if S::is_exact() {
        mat3::dot(line.coords(), point.coords()).is_exact_zero()
    } else {
        incidence_residual(line, point) <= tol.rel
    }
}

/// Line through two distinct points.
pub fn join<S: Scalar>(p: &ProjPoint<S>, q: &ProjPoint<S>) -> Result<ProjLine<S>> {
    ProjLine::new(mat3::cross(p.coords(), q.coords()))
}

/// Intersection point of two distinct lines.
pub fn meet<S: Scalar>(l: &ProjLine<S>, m: &ProjLine<S>) -> Result<ProjPoint<S>> {
    ProjPoint::new(mat3::cross(l.coords(), m.coords()))
}

/// A point `(u : v)` of the projective line, normalized like [`ProjPoint`].
#[derive(Clone, PartialEq)]
pub struct P1Point<S> {
    coords: [S; 2],
}

impl<S: Scalar> P1Point<S> {
    pub fn new(u: S, v: S) -> Result<Self> {
        let mut coords = [u, v];
        normalize_homogeneous(&mut coords)?;
        Ok(P1Point { coords })
    }

    pub fn from_i64(u: i64, v: i64) -> Result<Self> {
        Self::new(S::from_i64(u), S::from_i64(v))
    }

    pub fn u(&self) -> &S {
        &self.coords[0]
    }

    pub fn v(&self) -> &S {
        &self.coords[1]
    }

    pub fn coords(&self) -> &[S; 2] {
        &self.coords
    }

    pub fn to_float(&self) -> P1Point<Float> {
        P1Point::new(self.coords[0].to_c64(), self.coords[1].to_c64()).expect("nonzero")
    }

    /// Chordal distance `|u v' - v u'| / (|(u,v)| |(u',v')|)`.
    pub fn distance(&self, other: &Self) -> f64 {
        chordal_distance(&self.coords, &other.coords)
    }

    pub fn same_as(&self, other: &Self, rel: f64) -> bool {
        if S::is_exact() {
            self == other
        } else {
            self.distance(other) <= rel
        }
    }
}

impl<S: Scalar> fmt::Debug for P1Point<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} : {})", self.coords[0], self.coords[1])
    }
}

/// Tangent to the canonical conic at parameter `t = (u:v)`: the line with
/// coefficients `(u², uv, v²)`.
pub fn tangent_line_at_parameter<S: Scalar>(t: &P1Point<S>) -> ProjLine<S> {
    let (u, v) = (t.u().clone(), t.v().clone());
    ProjLine::new([u.clone() * u.clone(), u * v.clone(), v.clone() * v]).expect("nonzero parameter")
}

/// Inverse of [`tangent_line_at_parameter`]; the line must be tangent to the
/// canonical conic (`a1² = a0 a2`). Reads `(a0 : a1)` or `(a1 : a2)`,
/// whichever end coefficient is larger.
pub fn parameter_of_tangent<S: Scalar>(line: &ProjLine<S>) -> P1Point<S> {
    let [a0, a1, a2] = line.coords().clone();
    if a0.cmp_modulus(&a2).is_ge() {
        P1Point::new(a0, a1).expect("a0 dominant and nonzero")
    } else {
        P1Point::new(a1, a2).expect("a2 dominant and nonzero")
    }
}
