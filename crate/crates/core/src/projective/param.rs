use crate::error::{Error, Result};
use crate::forms::BinaryForm;
use crate::numeric::{max_abs_index, Float, Scalar, Tolerance};

use super::{mat3, Conic, Mat3, P1Point, ProjLine, ProjPoint};

/// Largest absolute coordinate tried when searching for a rational point.
pub const RATIONAL_SEARCH_BOUND: i64 = 12;

/// Degree-2 map `P¹ → conic`, `(u:v) ↦ (p0 : p1 : p2)`, built from the pencil
/// of lines through a seed point.
#[derive(Clone, Debug, PartialEq)]
pub struct ConicParam<S: Scalar> {
    forms: [BinaryForm<S>; 3],
    seed: ProjPoint<S>,
    // unit directions spanning the line x_k = 0 that carries the parameter
    basis: [usize; 2],
    // coordinate k, and the power-of-two rescaling of v
    chart: usize,
    v_scale: S,
}

impl<S: Scalar> ConicParam<S> {
    pub fn forms(&self) -> &[BinaryForm<S>; 3] {
        &self.forms
    }

    pub fn seed(&self) -> &ProjPoint<S> {
        &self.seed
    }

    /// Columns are the coefficients of `u², uv, v²`: `x(u,v) = M (u², uv, v²)ᵀ`.
    pub fn coefficient_matrix(&self) -> Mat3<S> {
        std::array::from_fn(|i| std::array::from_fn(|k| self.forms[i].coeff(k).clone()))
    }

    pub fn eval(&self, t: &P1Point<S>) -> Result<ProjPoint<S>> {
        let (u, v) = (t.u(), t.v());
        ProjPoint::new(std::array::from_fn(|i| self.forms[i].eval(u, v)))
    }

    /// The unique parameter mapping to `p`, which must lie on the conic.
    pub fn parameter_of(
        &self,
        conic: &Conic<S>,
        p: &ProjPoint<S>,
        tol: &Tolerance,
    ) -> Result<P1Point<S>> {
        // x(q) is the second intersection of the line (seed, q); invert by
        // meeting that line with x_k = 0. The seed itself comes from the
        // tangent there.
        let line = if p.same_as(&self.seed, tol.rel.sqrt()) {
            conic.polar(&self.seed)?
        } else {
            super::join(&self.seed, p)?
        };
        let mut axis = [S::zero(), S::zero(), S::zero()];
        axis[self.chart] = S::one();
        let q = mat3::cross(line.coords(), &axis);
        let [e, f] = self.basis;
        P1Point::new(q[e].clone(), q[f].clone() / self.v_scale.clone())
    }
}

/// Rational parametrization of a smooth conic through `seed`.
///
/// With `k` the dominant coordinate of the seed and `q = u e + v f` on the
/// line `x_k = 0`, the point is `Q(q) p0 − 2 B(p0, q) q`. The parameter `v` is
/// then rescaled by a power of two so the `u²` and `v²` columns have
/// comparable size. Without a seed, exact conics are searched for a small
/// integer point and float conics are cut by fixed generic lines.
pub fn parametrize_conic<S: Scalar>(
    conic: &Conic<S>,
    seed: Option<&ProjPoint<S>>,
    tol: &Tolerance,
) -> Result<ConicParam<S>> {
    conic.require_smooth()?;
    let seed = match seed {
        Some(p) if conic.contains(p, tol) => p.clone(),
        Some(_) => return Err(Error::SeedNotOnConic),
        None => find_point(conic, tol)?,
    };
    let p0 = seed.coords();
    let k = max_abs_index(p0).expect("three coordinates");
    let basis: Vec<usize> = (0..3).filter(|&i| i != k).collect();
    let (e, f) = (basis[0], basis[1]);

    // Q(q) = a u² + b uv + c v², B(p0, q) = d u + g v
    let a_m = conic.matrix();
    let a = a_m[e][e].clone();
    let b = a_m[e][f].clone() * S::from_i64(2);
    let c = a_m[f][f].clone();
    let d = conic.bilinear(p0, &unit(e));
    let g = conic.bilinear(p0, &unit(f));
    let two = S::from_i64(2);
    let mut cols: [[S; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| S::zero()));
    for i in 0..3 {
        cols[0][i] = a.clone() * p0[i].clone();
        cols[1][i] = b.clone() * p0[i].clone();
        cols[2][i] = c.clone() * p0[i].clone();
    }
    // − 2 (d u + g v)(u e + v f)
    cols[0][e] = cols[0][e].clone() - two.clone() * d.clone();
    cols[1][e] = cols[1][e].clone() - two.clone() * g.clone();
    cols[1][f] = cols[1][f].clone() - two.clone() * d;
    cols[2][f] = cols[2][f].clone() - two * g;

    let col_norm = |c: &[S; 3]| c.iter().map(Scalar::modulus).fold(0.0, f64::max);
    let (n0, n2) = (col_norm(&cols[0]), col_norm(&cols[2]));
    let v_scale = if n0 > 0.0 && n2 > 0.0 {
        let k = ((n0 / n2).log2() / 2.0).round() as i32;
        power_of_two(k)
    } else {
        S::one()
    };
    let v2 = v_scale.clone() * v_scale.clone();
    for i in 0..3 {
        cols[1][i] = cols[1][i].clone() * v_scale.clone();
        cols[2][i] = cols[2][i].clone() * v2.clone();
    }
    let forms = std::array::from_fn(|i| {
        BinaryForm::new(vec![
            cols[0][i].clone(),
            cols[1][i].clone(),
            cols[2][i].clone(),
        ])
        .expect("three coefficients")
    });
    Ok(ConicParam {
        forms,
        seed,
        basis: [e, f],
        chart: k,
        v_scale,
    })
}

fn unit<S: Scalar>(i: usize) -> [S; 3] {
    std::array::from_fn(|j| if i == j { S::one() } else { S::zero() })
}

fn power_of_two<S: Scalar>(k: i32) -> S {
    let p = S::from_i64(1 << k.unsigned_abs().min(62));
    if k >= 0 {
        p
    } else {
        S::one() / p
    }
}

// Both backends try the same integer points first, so a conic with rational
// entries gets the same seed, hence the same frame, whichever backend runs.
fn find_point<S: Scalar>(conic: &Conic<S>, tol: &Tolerance) -> Result<ProjPoint<S>> {
    match find_rational_point(conic, tol) {
        Err(Error::NoRationalPoint { .. }) if !S::is_exact() => find_float_point(conic, tol),
        found => found,
    }
}

/// Smallest point (by max coordinate, then lexicographic) with integer
/// coordinates bounded by [`RATIONAL_SEARCH_BOUND`].
fn find_rational_point<S: Scalar>(conic: &Conic<S>, tol: &Tolerance) -> Result<ProjPoint<S>> {
    let b = RATIONAL_SEARCH_BOUND;
    for h in 1..=b {
        for x0 in -h..=h {
            for x1 in -h..=h {
                for x2 in -h..=h {
                    if x0.abs().max(x1.abs()).max(x2.abs()) != h {
                        continue;
                    }
                    let c = [x0, x1, x2].map(S::from_i64);
                    let hit = if S::is_exact() {
                        conic.eval(&c).is_exact_zero()
                    } else {
                        conic.contains(&ProjPoint::new(c.clone())?, tol)
                    };
                    if hit {
                        return ProjPoint::new(c);
                    }
                }
            }
        }
    }
    Err(Error::NoRationalPoint { bound: b })
}

const GENERIC_LINES: [[f64; 3]; 4] = [
    [0.314, -0.747, 0.583],
    [-0.912, 0.204, 0.355],
    [0.121, 0.662, -0.739],
    [0.577, 0.433, 0.691],
];

fn find_float_point<S: Scalar>(conic: &Conic<S>, tol: &Tolerance) -> Result<ProjPoint<S>> {
    let mut fallback = None;
    for l in GENERIC_LINES {
        let line = ProjLine::new(l.map(|x| S::from_c64(Float::new(x, 0.0))))?;
        let Ok(hits) = conic.intersect_line(&line, tol) else {
            continue;
        };
        for p in hits.distinct() {
            let imag = p
                .coords()
                .iter()
                .map(|z| z.to_c64().im.abs())
                .fold(0.0, f64::max);
            if imag <= 1e-12 {
                return Ok(p.clone());
            }
            fallback.get_or_insert_with(|| p.clone());
        }
    }
    fallback.ok_or(Error::DegenerateConic)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::compose_with_parametrization;
    use crate::numeric::Exact;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn bf(c: &[i64]) -> BinaryForm<Exact> {
        BinaryForm::from_i64(c).unwrap()
    }

    #[test]
    fn canonical_conic_from_origin_seed() {
        let c = Conic::<Exact>::canonical();
        let seed = ProjPoint::from_i64([1, 0, 0]).unwrap();
        let p = parametrize_conic(&c, Some(&seed), &tol()).unwrap();
        let f = p.forms();
        assert_eq!(f[0], bf(&[1, 0, 0]));
        assert_eq!(f[1], bf(&[0, 2, 0]));
        assert_eq!(f[2], bf(&[0, 0, 1]));
        assert!(compose_with_parametrization(&c.to_form(), &p).is_zero());
    }

    #[test]
    fn dual_canonical_conic() {
        let d = Conic::<Exact>::canonical().dual().unwrap();
        let seed = ProjPoint::from_i64([1, 0, 0]).unwrap();
        let p = parametrize_conic(&d, Some(&seed), &tol()).unwrap();
        let f = p.forms();
        let s = f[0].coeff(0).clone();
        assert_eq!(f[0], bf(&[1, 0, 0]).scale(&s));
        assert_eq!(f[1], bf(&[0, 1, 0]).scale(&s));
        assert_eq!(f[2], bf(&[0, 0, 1]).scale(&s));
    }

    #[test]
    fn unit_circle_exact_and_searched() {
        let c = Conic::<Exact>::from_i64([[-1, 0, 0], [0, 1, 0], [0, 0, 1]]).unwrap();
        let seed = ProjPoint::from_i64([1, 1, 0]).unwrap();
        for s in [Some(&seed), None] {
            let p = parametrize_conic(&c, s, &tol()).unwrap();
            assert!(compose_with_parametrization(&c.to_form(), &p).is_zero());
        }
    }

    #[test]
    fn parameter_inverse_hits_every_point() {
        let c = Conic::<Exact>::from_i64([[-25, 0, 0], [0, 1, 0], [0, 0, 1]]).unwrap();
        let p = parametrize_conic(&c, None, &tol()).unwrap();
        for pt in [[1, 3, 4], [1, -4, 3], [1, 5, 0], [1, 0, -5]] {
            let x = ProjPoint::from_i64(pt).unwrap();
            let t = p.parameter_of(&c, &x, &tol()).unwrap();
            assert_eq!(p.eval(&t).unwrap(), x);
        }
        let t = p.parameter_of(&c, p.seed(), &tol()).unwrap();
        assert_eq!(&p.eval(&t).unwrap(), p.seed());
    }

    #[test]
    fn missing_rational_point_is_reported() {
        // x1² + x2² = 3 x0² has no rational points.
        let c = Conic::<Exact>::from_i64([[-3, 0, 0], [0, 1, 0], [0, 0, 1]]).unwrap();
        assert!(matches!(
            parametrize_conic(&c, None, &tol()),
            Err(Error::NoRationalPoint { .. })
        ));
        let off = ProjPoint::from_i64([1, 0, 0]).unwrap();
        assert!(matches!(
            parametrize_conic(&c, Some(&off), &tol()),
            Err(Error::SeedNotOnConic)
        ));
    }

    #[test]
    fn backends_pick_the_same_seed() {
        let c = Conic::<Exact>::from_i64([[-25, 0, 0], [0, 1, 0], [0, 0, 1]]).unwrap();
        let e = parametrize_conic(&c, None, &tol()).unwrap();
        let f = parametrize_conic(&c.to_float(), None, &tol()).unwrap();
        assert_eq!(&e.seed().to_float(), f.seed());
    }

    #[test]
    fn float_conic_without_seed() {
        let c = Conic::<Float>::circle(
            Float::new(0.3, 0.0),
            Float::new(-0.2, 0.0),
            Float::new(2.0, 0.0),
        )
        .unwrap();
        let p = parametrize_conic(&c, None, &tol()).unwrap();
        let comp = compose_with_parametrization(&c.to_form(), &p);
        assert!(comp.norm() < 1e-12);
        assert!(p.seed().coords().iter().all(|z| z.im.abs() < 1e-12));
    }
}
