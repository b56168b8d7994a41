use crate::error::{Error, Result};
use crate::forms::{from_roots, BinaryForm, TernaryForm};
use crate::numeric::{Scalar, Tolerance};

use super::{
    mat3, parameter_of_tangent, parametrize_conic, tangent_line_at_parameter, Conic, P1Point,
    ProjLine, ProjPoint, ProjTransform, Transformable,
};

/// A projective map sending a smooth conic `C` onto the canonical conic
/// `x1² − 4 x0 x2`, so tangents of `C` acquire parameters on `P¹`.
///
/// Built from a parametrization `x(s,t) = M (s², st, t²)ᵀ` of `C` as
/// `T = N M⁻¹` with `N = diag(1, −2, 1)`. A conic already proportional to the
/// canonical one gets the identity.
#[derive(Clone, Debug)]
pub struct CanonicalFrame<S: Scalar> {
    conic: Conic<S>,
    to_canonical: ProjTransform<S>,
}

impl<S: Scalar> CanonicalFrame<S> {
    pub fn new(conic: &Conic<S>, seed: Option<&ProjPoint<S>>, tol: &Tolerance) -> Result<Self> {
        conic.require_smooth()?;
        let canonical = Conic::canonical();
        let to_canonical = if conic.same_as(&canonical, tol.rel) {
            ProjTransform::identity()
        } else {
            let param = parametrize_conic(conic, seed, tol)?;
            let m = ProjTransform::new(param.coefficient_matrix())?;
            let n = ProjTransform::new(mat3::from_i64([[1, 0, 0], [0, -2, 0], [0, 0, 1]]))?;
            n.compose(&m.inverse())
        };
        Ok(CanonicalFrame {
            conic: conic.clone(),
            to_canonical,
        })
    }

    pub fn conic(&self) -> &Conic<S> {
        &self.conic
    }

    /// World-to-canonical map.
    pub fn transform(&self) -> &ProjTransform<S> {
        &self.to_canonical
    }

    pub fn to_canonical<T: Transformable<S>>(&self, object: &T) -> T {
        object.transformed(&self.to_canonical)
    }

    pub fn to_world<T: Transformable<S>>(&self, object: &T) -> T {
        object.transformed(&self.to_canonical.inverse())
    }

    /// Tangent parameter of a world line tangent to `C`.
    pub fn parameter_of_line(&self, line: &ProjLine<S>, tol: &Tolerance) -> Result<P1Point<S>> {
        if !self
            .conic
            .is_tangent(line, &tol.with_rel(tol.rel.max(1e-8))?)?
        {
            return Err(Error::InvalidFlag(
                "line is not tangent to the conic".into(),
            ));
        }
        Ok(parameter_of_tangent(&self.to_canonical(line)))
    }

    /// World tangent line of `C` at parameter `t`.
    pub fn line_of_parameter(&self, t: &P1Point<S>) -> ProjLine<S> {
        self.to_world(&tangent_line_at_parameter(t))
    }

    /// Binary form whose roots are the parameters of the given tangents.
    pub fn tangency_form(&self, lines: &[ProjLine<S>], tol: &Tolerance) -> Result<BinaryForm<S>> {
        let params = lines
            .iter()
            .map(|l| self.parameter_of_line(l, tol))
            .collect::<Result<Vec<_>>>()?;
        from_roots(&params)
    }

    pub fn form_to_canonical(&self, form: &TernaryForm<S>) -> TernaryForm<S> {
        self.to_canonical(form)
    }

    pub fn form_to_world(&self, form: &TernaryForm<S>) -> TernaryForm<S> {
        self.to_world(form)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{Exact, Float};

    #[test]
    fn canonical_conic_gets_identity() {
        let f =
            CanonicalFrame::<Exact>::new(&Conic::canonical(), None, &Tolerance::default()).unwrap();
        assert_eq!(f.transform(), &ProjTransform::identity());
    }

    #[test]
    fn circle_maps_onto_canonical() {
        let tol = Tolerance::default();
        let c = Conic::<Exact>::from_i64([[-25, 0, 0], [0, 1, 0], [0, 0, 1]]).unwrap();
        let f = CanonicalFrame::new(&c, None, &tol).unwrap();
        assert!(f.to_canonical(&c).same_as(&Conic::canonical(), 0.0));
        // tangent x1 = 5 x0 round-trips through its parameter
        let l = ProjLine::from_i64([-5, 1, 0]).unwrap();
        let t = f.parameter_of_line(&l, &tol).unwrap();
        assert_eq!(f.line_of_parameter(&t), l);
        let off = ProjLine::from_i64([-4, 1, 0]).unwrap();
        assert!(f.parameter_of_line(&off, &tol).is_err());
    }

    #[test]
    fn float_frame() {
        let tol = Tolerance::default();
        let c = Conic::<Float>::circle(
            Float::new(1.0, 0.0),
            Float::new(0.5, 0.0),
            Float::new(3.0, 0.0),
        )
        .unwrap();
        let f = CanonicalFrame::new(&c, None, &tol).unwrap();
        assert!(f.to_canonical(&c).same_as(&Conic::canonical(), 1e-10));
        let t = P1Point::new(Float::new(0.3, 0.0), Float::new(-1.0, 0.0)).unwrap();
        let l = f.line_of_parameter(&t);
        assert!(c.is_tangent(&l, &tol).unwrap());
        assert!(f.parameter_of_line(&l, &tol).unwrap().same_as(&t, 1e-10));
    }
}
