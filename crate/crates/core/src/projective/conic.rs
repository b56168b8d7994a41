use std::fmt;

use crate::error::{Error, Result};
use crate::forms::TernaryForm;
use crate::numeric::{norm2, Float, Scalar, Tolerance};

use super::mat3::{self, Mat3};
use super::{ProjLine, ProjPoint};

/// A conic `xᵀ A x = 0` given by a symmetric matrix, kept as supplied (the
/// scale is not normalized so that scene files round-trip).
#[derive(Clone, PartialEq)]
pub struct Conic<S> {
    matrix: Mat3<S>,
    smooth: bool,
}

/// Result of intersecting a line with a conic: two distinct solutions, or one
/// solution of multiplicity two.
#[derive(Debug, Clone, PartialEq)]
pub enum Intersection<T> {
    Two(T, T),
    Double(T),
}

impl<T> Intersection<T> {
    pub fn is_double(&self) -> bool {
        matches!(self, Intersection::Double(_))
    }

    /// Solutions listed with multiplicity (always two entries).
    pub fn with_multiplicity(&self) -> Vec<&T> {
        match self {
            Intersection::Two(a, b) => vec![a, b],
            Intersection::Double(a) => vec![a, a],
        }
    }

    pub fn distinct(&self) -> Vec<&T> {
        match self {
            Intersection::Two(a, b) => vec![a, b],
            Intersection::Double(a) => vec![a],
        }
    }

    pub fn map<U>(self, mut f: impl FnMut(T) -> U) -> Intersection<U> {
        match self {
            Intersection::Two(a, b) => Intersection::Two(f(a), f(b)),
            Intersection::Double(a) => Intersection::Double(f(a)),
        }
    }
}

impl<S: Scalar> Conic<S> {
    /// Builds a conic from a symmetric matrix. Degenerate conics are allowed
    /// but flagged; operations that need smoothness reject them.
    pub fn new(matrix: Mat3<S>) -> Result<Self> {
        if matrix.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite("conic matrix"));
        }
        let scale = mat3::max_modulus(&matrix);
        if scale == 0.0 {
            return Err(Error::ZeroVector);
        }
        let tol = Tolerance::default();
        for i in 0..3 {
            for j in i + 1..3 {
                let d = matrix[i][j].clone() - matrix[j][i].clone();
                if !tol.is_negligible(&d, scale) {
                    return Err(Error::NotSymmetric);
                }
            }
        }
        let det = mat3::det(&matrix);
        let smooth = !tol.is_negligible(&det, scale.powi(3));
        Ok(Conic { matrix, smooth })
    }

    pub fn from_i64(m: [[i64; 3]; 3]) -> Result<Self> {
        Conic::new(mat3::from_i64(m))
    }

    /// The canonical conic `x1² − 4 x0 x2`, discriminant of the point quadric.
    pub fn canonical() -> Self {
        Conic::from_i64([[0, 0, -2], [0, 1, 0], [-2, 0, 0]]).expect("smooth")
    }

    /// Circle `(x − cx)² + (y − cy)² = r²` in the chart `(x1/x0, x2/x0)`.
    pub fn circle(cx: S, cy: S, r2: S) -> Result<Self> {
        let k = cx.clone() * cx.clone() + cy.clone() * cy.clone() - r2;
        Conic::new([
            [k, -cx.clone(), -cy.clone()],
            [-cx, S::one(), S::zero()],
            [-cy, S::zero(), S::one()],
        ])
    }

    pub fn matrix(&self) -> &Mat3<S> {
        &self.matrix
    }

    pub fn is_smooth(&self) -> bool {
        self.smooth
    }

    pub fn require_smooth(&self) -> Result<()> {
        if self.smooth {
            Ok(())
        } else {
            Err(Error::DegenerateConic)
        }
    }

    pub fn to_float(&self) -> Conic<Float> {
        Conic::new(mat3::map(&self.matrix, Scalar::to_c64)).expect("finite")
    }

    /// Whether both describe the same conic up to scale.
    pub fn same_as(&self, other: &Self, rel: f64) -> bool {
        mat3::proportional(&self.matrix, &other.matrix, rel)
    }

    /// `xᵀ A x`.
    pub fn eval(&self, p: &[S; 3]) -> S {
        mat3::dot(p, &mat3::mul_vec(&self.matrix, p))
    }

    /// `xᵀ A y`.
    pub fn bilinear(&self, p: &[S; 3], q: &[S; 3]) -> S {
        mat3::dot(p, &mat3::mul_vec(&self.matrix, q))
    }

    /// `|xᵀ A x| / (|A| |x|²)`.
    pub fn residual(&self, p: &ProjPoint<S>) -> f64 {
        let n = norm2(p.coords());
        self.eval(p.coords()).modulus() / (mat3::max_modulus(&self.matrix) * n * n)
    }

    pub fn contains(&self, p: &ProjPoint<S>, tol: &Tolerance) -> bool {
        if S::is_exact() {
            self.eval(p.coords()).is_exact_zero()
        } else {
            self.residual(p) <= tol.rel
        }
    }

    /// The polar line `A p`; the tangent at `p` when `p` lies on the conic.
    pub fn polar(&self, p: &ProjPoint<S>) -> Result<ProjLine<S>> {
        ProjLine::new(mat3::mul_vec(&self.matrix, p.coords()))
    }

    /// Dual conic (adjugate): a line is tangent to `self` iff it lies on the dual.
    pub fn dual(&self) -> Result<Conic<S>> {
        self.require_smooth()?;
        Conic::new(mat3::adjugate(&self.matrix))
    }

    pub fn is_tangent(&self, line: &ProjLine<S>, tol: &Tolerance) -> Result<bool> {
        let dual = self.dual()?;
        let as_point = ProjPoint::new(line.coords().clone())?;
        Ok(dual.contains(&as_point, tol))
    }

    /// Equation as a ternary quadratic form.
    pub fn to_form(&self) -> TernaryForm<S> {
        TernaryForm::from_quadratic_matrix(&self.matrix)
    }

    pub fn from_form(f: &TernaryForm<S>) -> Result<Self> {
        if f.degree() != 2 {
            return Err(Error::DimensionMismatch(format!(
                "conic needs a quadratic form, got degree {}",
                f.degree()
            )));
        }
        Conic::new(f.quadratic_matrix())
    }

    /// Intersection with a line, with multiplicity (tangency gives a double point).
    pub fn intersect_line(
        &self,
        line: &ProjLine<S>,
        tol: &Tolerance,
    ) -> Result<Intersection<ProjPoint<S>>> {
        self.require_smooth()?;
        let [p, q] = line_basis(line);
        let a = self.eval(&p);
        let b = self.bilinear(&p, &q) * S::from_i64(2);
        let c = self.eval(&q);
        let roots = solve_binary_quadratic(&a, &b, &c, tol)?;
        Ok(roots.map(|(s, t)| {
            let pt: [S; 3] =
                std::array::from_fn(|i| p[i].clone() * s.clone() + q[i].clone() * t.clone());
            ProjPoint::new(pt).expect("independent basis")
        }))
    }

    /// Tangent lines to `self` through `p`: the dual line of `p` meets the dual
    /// conic. A point on the conic yields its tangent as a double solution.
    pub fn tangents_through(
        &self,
        p: &ProjPoint<S>,
        tol: &Tolerance,
    ) -> Result<Intersection<ProjLine<S>>> {
        let dual = self.dual()?;
        let pencil = ProjLine::new(p.coords().clone())?;
        let lines = dual.intersect_line(&pencil, tol)?;
        Ok(lines.map(|pt| ProjLine::new(pt.into_coords()).expect("nonzero")))
    }
}

impl<S: Scalar> fmt::Debug for Conic<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = &self.matrix;
        write!(
            f,
            "Conic[[{}, {}, {}], [{}, {}, {}], [{}, {}, {}]]",
            m[0][0], m[0][1], m[0][2], m[1][0], m[1][1], m[1][2], m[2][0], m[2][1], m[2][2]
        )
    }
}

/// Two independent points spanning the line: `l × e_i` for the two unit
/// vectors other than the one at the largest coefficient of `l`.
pub(crate) fn line_basis<S: Scalar>(line: &ProjLine<S>) -> [[S; 3]; 2] {
    let l = line.coords();
    let k = crate::numeric::max_abs_index(l).expect("three coords");
    let unit =
        |i: usize| -> [S; 3] { std::array::from_fn(|j| if i == j { S::one() } else { S::zero() }) };
    let others: Vec<usize> = (0..3).filter(|&i| i != k).collect();
    [
        mat3::cross(l, &unit(others[0])),
        mat3::cross(l, &unit(others[1])),
    ]
}

/// Roots `(s : t)` of `a s² + b s t + c t²`.
///
/// Uses the cancellation-free pair `(q : a)`, `(c : q)` with
/// `q = −(b + σ√Δ)/2`. Float discriminants negligible against
/// `max(|b|², 4|ac|)` are reported as a double root.
pub(crate) fn solve_binary_quadratic<S: Scalar>(
    a: &S,
    b: &S,
    c: &S,
    tol: &Tolerance,
) -> Result<Intersection<(S, S)>> {
    if [a, b, c].iter().all(|x| x.is_exact_zero()) {
        return Err(Error::DegenerateConic);
    }
    let two = S::from_i64(2);
    let four = S::from_i64(4);
    let disc = b.clone() * b.clone() - four * a.clone() * c.clone();
    let scale = (b.modulus().powi(2)).max(4.0 * a.modulus() * c.modulus());
    if tol.is_negligible(&disc, scale) {
        let root = if a.cmp_modulus(c).is_ge() {
            (-b.clone(), two * a.clone())
        } else {
            (two * c.clone(), -b.clone())
        };
        return Ok(Intersection::Double(root));
    }
    let sq = disc
        .sqrt()
        .ok_or_else(|| Error::Irrational(format!("square root of discriminant {disc}")))?;
    let plus = b.clone() + sq.clone();
    let minus = b.clone() - sq;
    let big = if plus.cmp_modulus(&minus).is_ge() {
        plus
    } else {
        minus
    };
    let q = -big / two;
    Ok(Intersection::Two((q.clone(), a.clone()), (c.clone(), q)))
}
