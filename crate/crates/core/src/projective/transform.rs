use crate::error::{Error, Result};
use crate::forms::{PlaneCurve, TernaryForm};
use crate::numeric::{Scalar, Tolerance};

use super::{mat3, Conic, Mat3, ProjLine, ProjPoint};

/// Invertible projective map `x ↦ T x`, stored with its inverse.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjTransform<S> {
    m: Mat3<S>,
    inv: Mat3<S>,
}

impl<S: Scalar> ProjTransform<S> {
    pub fn new(m: Mat3<S>) -> Result<Self> {
        if m.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("transform matrix"));
        }
        let det = mat3::det(&m);
        let scale = mat3::max_modulus(&m);
        if scale == 0.0 || Tolerance::default().is_negligible(&det, scale.powi(3)) {
            return Err(Error::SingularTransform);
        }
        let inv = mat3::scale(&mat3::adjugate(&m), &(S::one() / det));
        Ok(ProjTransform { m, inv })
    }

    pub fn from_i64(m: [[i64; 3]; 3]) -> Result<Self> {
        Self::new(mat3::from_i64(m))
    }

    pub fn identity() -> Self {
        ProjTransform {
            m: mat3::identity(),
            inv: mat3::identity(),
        }
    }

    pub fn matrix(&self) -> &Mat3<S> {
        &self.m
    }

    pub fn inverse_matrix(&self) -> &Mat3<S> {
        &self.inv
    }

    pub fn inverse(&self) -> Self {
        ProjTransform {
            m: self.inv.clone(),
            inv: self.m.clone(),
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        ProjTransform {
            m: mat3::mul(&self.m, &other.m),
            inv: mat3::mul(&other.inv, &self.inv),
        }
    }

    pub fn apply<T: Transformable<S>>(&self, object: &T) -> T {
        object.transformed(self)
    }
}

/// Objects carried along by a projective map: points by `T`, lines by
/// `T⁻ᵀ`, conics by `T⁻ᵀ A T⁻¹`, forms by `F ↦ F ∘ T⁻¹`.
pub trait Transformable<S: Scalar>: Sized {
    fn transformed(&self, t: &ProjTransform<S>) -> Self;
}

impl<S: Scalar> Transformable<S> for ProjPoint<S> {
    fn transformed(&self, t: &ProjTransform<S>) -> Self {
        ProjPoint::new(mat3::mul_vec(&t.m, self.coords())).expect("invertible map")
    }
}

impl<S: Scalar> Transformable<S> for ProjLine<S> {
    fn transformed(&self, t: &ProjTransform<S>) -> Self {
        ProjLine::new(mat3::mul_vec(&mat3::transpose(&t.inv), self.coords()))
            .expect("invertible map")
    }
}

impl<S: Scalar> Transformable<S> for Conic<S> {
    fn transformed(&self, t: &ProjTransform<S>) -> Self {
        let m = mat3::mul(&mat3::mul(&mat3::transpose(&t.inv), self.matrix()), &t.inv);
        Conic::new(symmetrize(m)).expect("congruent to a conic")
    }
}

impl<S: Scalar> Transformable<S> for TernaryForm<S> {
    fn transformed(&self, t: &ProjTransform<S>) -> Self {
        self.substitute_linear(&t.inv)
    }
}

impl<S: Scalar> Transformable<S> for PlaneCurve<S> {
    fn transformed(&self, t: &ProjTransform<S>) -> Self {
        PlaneCurve::new(self.form().transformed(t)).expect("invertible map")
    }
}

// float round-off can break exact symmetry of the congruence
fn symmetrize<S: Scalar>(m: Mat3<S>) -> Mat3<S> {
    let half = S::from_ratio(1, 2);
    std::array::from_fn(|i| {
        std::array::from_fn(|j| (m[i][j].clone() + m[j][i].clone()) * half.clone())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::Exact;
    use crate::projective::incident;

    fn t() -> ProjTransform<Exact> {
        ProjTransform::from_i64([[2, 1, 0], [0, 1, -3], [1, 0, 1]]).unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let id = ProjTransform::<Exact>::identity();
        let p = ProjPoint::from_i64([1, 2, 3]).unwrap();
        let c = Conic::<Exact>::canonical();
        assert_eq!(id.apply(&p), p);
        assert_eq!(id.apply(&c).matrix(), c.matrix());
    }

    #[test]
    fn incidence_and_tangency_survive() {
        let tol = Tolerance::default();
        let p = ProjPoint::<Exact>::from_i64([1, 2, 3]).unwrap();
        let l = ProjLine::<Exact>::from_i64([3, 0, -1]).unwrap();
        assert!(incident(&t().apply(&l), &t().apply(&p), &tol));

        let c = Conic::<Exact>::canonical();
        let tangent = ProjLine::from_i64([1, 1, 1]).unwrap();
        assert!(t()
            .apply(&c)
            .is_tangent(&t().apply(&tangent), &tol)
            .unwrap());
        let on = ProjPoint::from_i64([1, -2, 1]).unwrap();
        assert!(t().apply(&c).contains(&t().apply(&on), &tol));
        assert!(t()
            .apply(&c.to_form())
            .eval(t().apply(&on).coords())
            .is_exact_zero());
    }

    #[test]
    fn inverse_and_singular() {
        let p = ProjPoint::<Exact>::from_i64([4, -1, 2]).unwrap();
        assert_eq!(t().inverse().apply(&t().apply(&p)), p);
        assert_eq!(t().compose(&t().inverse()), ProjTransform::identity());
        assert!(matches!(
            ProjTransform::<Exact>::from_i64([[1, 2, 3], [2, 4, 6], [0, 0, 1]]),
            Err(Error::SingularTransform)
        ));
    }
}
