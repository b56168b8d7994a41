use crate::error::{Error, Result};
use crate::forms::{BinaryForm, PlaneCurve};
use crate::numeric::{Matrix, Scalar, Tolerance};
use crate::projective::{CanonicalFrame, Conic};
use crate::schwarzenberger::{determinant_form, zero_locus, Pencil};

/// A second section `t` with `Γ(f, t) = c · S`.
#[derive(Clone, Debug)]
pub struct DarbouxCompletion<S: Scalar> {
    pub t: BinaryForm<S>,
    pub pencil: Pencil<S>,
    /// The factor `c` after scaling `t`; always 1.
    pub scale: S,
    /// Worst vanishing residual of `S` at the vertices of `f`.
    pub max_vertex_residual: f64,
    /// `S` in the canonical frame of `C`.
    pub curve_canonical: PlaneCurve<S>,
}

/// Completes the gon of `f` (tangency form in the canonical frame of `c`)
/// to a pencil whose every member has all its vertices on `curve`.
///
/// The unknowns `(t, c)` solve `Γ(f, t) − c S = 0`; a kernel vector with
/// `c ≠ 0` is required.
pub fn darboux_complete<S: Scalar>(
    c: &Conic<S>,
    curve: &PlaneCurve<S>,
    f: &BinaryForm<S>,
    tol: &Tolerance,
) -> Result<DarbouxCompletion<S>> {
    let n = f.degree();
    if curve.degree() as usize + 1 != n {
        return Err(Error::DimensionMismatch(format!(
            "curve of degree {} for a section of degree {n}",
            curve.degree()
        )));
    }
    let frame = CanonicalFrame::new(c, None, tol)?;
    let s = PlaneCurve::new(frame.form_to_canonical(curve.form()).normalized())?;
    let gon = zero_locus(f, tol)?;
    let max_vertex_residual = gon
        .vertices()
        .iter()
        .map(|v| s.residual(&v.point))
        .fold(0.0, f64::max);
    if !gon.vertices().iter().all(|v| s.contains(&v.point, tol)) {
        return Err(Error::DarbouxFailed {
            reason: "a vertex of the gon is not on the curve".into(),
            max_residual: max_vertex_residual,
        });
    }

    let mut columns = (0..=n)
        .map(|k| Ok(determinant_form(f, &BinaryForm::monomial(n, k), tol)?.to_dense()))
        .collect::<Result<Vec<_>>>()?;
    columns.push(s.form().scale(&-S::one()).to_dense());
    let kernel = Matrix::from_columns(&columns)?.nullspace(tol)?;
    let best = kernel
        .into_iter()
        .max_by(|a, b| a[n + 1].cmp_modulus(&b[n + 1]))
        .filter(|v| !tol.is_negligible(&v[n + 1], 1.0));
    let Some(v) = best else {
        return Err(Error::DarbouxFailed {
            reason: "no solution with a nonzero multiple of the curve".into(),
            max_residual: max_vertex_residual,
        });
    };
    let inv = S::one() / v[n + 1].clone();
    let t = BinaryForm::new(v[..=n].iter().map(|x| x.clone() * inv.clone()).collect())?;
    Ok(DarbouxCompletion {
        pencil: Pencil::new(f.clone(), t.clone(), tol)?,
        t,
        scale: S::one(),
        max_vertex_residual,
        curve_canonical: s,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::TernaryForm;
    use crate::numeric::Exact;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn bf(c: &[i64]) -> BinaryForm<Exact> {
        BinaryForm::from_i64(c).unwrap()
    }

    #[test]
    fn line_through_the_vertex_of_uv() {
        let c = Conic::canonical();
        let s = PlaneCurve::new(TernaryForm::var(0).add(&TernaryForm::var(2)).unwrap()).unwrap();
        let d = darboux_complete(&c, &s, &bf(&[0, 1, 0]), &tol()).unwrap();
        // t = −(u² − v²) + α uv
        let t = d.t.coeffs();
        assert_eq!(
            (t[0].clone(), t[2].clone()),
            (Exact::from_i64(-1), Exact::from_i64(1))
        );
    }

    #[test]
    fn vertex_off_the_curve_is_reported() {
        let c = Conic::canonical();
        let s = PlaneCurve::new(TernaryForm::var(1)).unwrap();
        match darboux_complete(&c, &s, &bf(&[0, 1, 0]), &tol()) {
            Err(Error::DarbouxFailed { max_residual, .. }) => assert!(max_residual > 0.0),
            other => panic!("expected failure, got {other:?}"),
        }
    }
}
