use crate::error::{Error, Result};
use crate::numeric::Scalar;
use crate::projective::{ConicParam, ProjPoint};

use super::{BinaryForm, TernaryForm};

/// `q_x = x0 u² + x1 uv + x2 v²`; its roots are the parameters of the
/// tangents to the canonical conic through `x`.
pub fn quadric_of_point<S: Scalar>(x: &ProjPoint<S>) -> BinaryForm<S> {
    BinaryForm::new(x.coords().to_vec()).expect("three coefficients")
}

/// Pseudo-remainder of `f` (degree `n ≥ 2`) by `q_x`, with `q_x` read as a
/// polynomial in `u` whose coefficients are linear forms in `x`.
///
/// Returns `(r1, r0)`, forms of degree `n − 1` in `x`, with
/// `x0^(n−1) f ≡ r1 · u v^(n−1) + r0 · v^n  (mod q_x)`.
pub fn pseudo_remainder<S: Scalar>(f: &BinaryForm<S>) -> Result<(TernaryForm<S>, TernaryForm<S>)> {
    let n = f.degree();
    if n < 2 {
        return Err(Error::DegreeTooSmall { got: n, min: 2 });
    }
    let x: [TernaryForm<S>; 3] = std::array::from_fn(TernaryForm::var);
    let mut g: Vec<TernaryForm<S>> = f
        .coeffs()
        .iter()
        .map(|c| TernaryForm::constant(c.clone()))
        .collect();
    for i in 0..n - 1 {
        let lead = g[i].clone();
        for gk in g.iter_mut() {
            *gk = gk.mul(&x[0]);
        }
        g[i] = TernaryForm::zero(lead.degree() + 1);
        g[i + 1] = g[i + 1].sub(&lead.mul(&x[1]))?;
        g[i + 2] = g[i + 2].sub(&lead.mul(&x[2]))?;
    }
    let r0 = g.pop().expect("n + 1 entries");
    let r1 = g.pop().expect("n + 1 entries");
    Ok((r1, r0))
}

/// `F(p0, p1, p2)` for the three parametrizing quadrics of `param`.
pub fn compose_with_parametrization<S: Scalar>(
    form: &TernaryForm<S>,
    param: &ConicParam<S>,
) -> BinaryForm<S> {
    form.compose_binary(param.forms())
        .expect("quadrics of equal degree")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::Exact;

    fn bf(c: &[i64]) -> BinaryForm<Exact> {
        BinaryForm::from_i64(c).unwrap()
    }

    fn x(i: usize) -> TernaryForm<Exact> {
        TernaryForm::var(i)
    }

    #[test]
    fn point_quadrics() {
        let q = |c| quadric_of_point(&ProjPoint::<Exact>::from_i64(c).unwrap());
        assert_eq!(q([0, 1, 0]), bf(&[0, 1, 0]));
        assert_eq!(q([1, 0, 0]), bf(&[1, 0, 0]));
        assert_eq!(q([1, 1, 1]), bf(&[1, 1, 1]));
    }

    #[test]
    fn quadratic_pseudo_remainders() {
        let (r1, r0) = pseudo_remainder(&bf(&[0, 1, 0])).unwrap();
        assert_eq!((r1, r0.is_zero()), (x(0), true));

        let (r1, r0) = pseudo_remainder(&bf(&[1, 0, -1])).unwrap();
        let minus = |f: TernaryForm<Exact>| f.scale(&Exact::from_i64(-1));
        assert_eq!(r1, minus(x(1)));
        assert_eq!(r0, minus(x(0).add(&x(2)).unwrap()));

        let (r1, r0) = pseudo_remainder(&bf(&[1, 0, 0])).unwrap();
        assert_eq!((r1, r0), (minus(x(1)), minus(x(2))));
    }

    #[test]
    fn linear_forms_are_rejected() {
        assert!(matches!(
            pseudo_remainder(&bf(&[1, 1])),
            Err(Error::DegreeTooSmall { got: 1, min: 2 })
        ));
    }

    #[test]
    fn remainder_is_a_congruence() {
        // x0^(n-1) f - r1 u v^(n-1) - r0 v^n must be divisible by q_x.
        let f = bf(&[2, -1, 3, 5]);
        let (r1, r0) = pseudo_remainder(&f).unwrap();
        for c in [[1, 2, 3], [2, -1, 7], [-3, 4, 1]] {
            let p = ProjPoint::<Exact>::from_i64(c).unwrap();
            let xv = p.coords();
            let lhs = f.scale(&xv[0].pow(2));
            let rem = BinaryForm::new(vec![
                Exact::from_i64(0),
                Exact::from_i64(0),
                r1.eval(xv),
                r0.eval(xv),
            ])
            .unwrap();
            let d = lhs
                .sub(&rem)
                .unwrap()
                .div_rem(&quadric_of_point(&p), &Default::default())
                .unwrap();
            assert!(d.divides);
        }
    }
}
