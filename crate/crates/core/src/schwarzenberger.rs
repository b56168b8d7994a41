//! The banded matrix `M` of linear forms, section evaluation in the fibers of
//! its cokernel, zero loci (complete n-gons of tangents to the canonical
//! conic) and determinant curves of pencils of sections.
//!
//! A section is a binary form `f` of degree `n`; it vanishes at `x` iff the
//! point quadric `q_x` divides `f`, i.e. iff both tangents from `x` touch at
//! roots of `f`.

use std::fmt;

use crate::error::{Error, Result};
use crate::forms::{
    pseudo_remainder, quadric_of_point, roots_any, BinaryForm, PlaneCurve, TernaryForm,
};
use crate::numeric::{Matrix, Scalar, Tolerance};
use crate::projective::{
    tangent_line_at_parameter, CanonicalFrame, P1Point, ProjLine, ProjPoint, ProjTransform,
    Transformable,
};

/// Roots closer than this (chordal metric on `P¹`) count as repeated.
pub const SQUAREFREE_SEPARATION: f64 = 1e-6;

/// The `(n+1) × (n−1)` matrix whose column `j` holds `x0, x1, x2` in rows
/// `j, j+1, j+2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SchwMatrix {
    n: usize,
}

pub fn build_matrix(n: usize) -> Result<SchwMatrix> {
    SchwMatrix::new(n)
}

impl SchwMatrix {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::DegreeTooSmall { got: n, min: 2 });
        }
        Ok(SchwMatrix { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> usize {
        self.n + 1
    }

    pub fn cols(&self) -> usize {
        self.n - 1
    }

    /// Index `i` of the variable `x_i` at `(row, col)`, or `None` for a zero.
    pub fn entry(&self, row: usize, col: usize) -> Option<usize> {
        (col < self.cols() && row >= col && row - col <= 2).then(|| row - col)
    }

    /// `M(x)`; its column space is `{ q_x · h : deg h = n − 2 }`.
    pub fn eval<S: Scalar>(&self, x: &ProjPoint<S>) -> Matrix<S> {
        let mut m = Matrix::zeros(self.rows(), self.cols()).expect("positive dimensions");
        for c in 0..self.cols() {
            for (k, xi) in x.coords().iter().enumerate() {
                m.set(c + k, c, xi.clone());
            }
        }
        m
    }
}

impl fmt::Display for SchwMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows() {
            let cells: Vec<String> = (0..self.cols())
                .map(|c| match self.entry(r, c) {
                    Some(i) => format!("x{i}"),
                    None => " 0".to_string(),
                })
                .collect();
            writeln!(f, "[ {} ]", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Vertex where the tangents at parameters `a` and `b` meet:
/// `(a1 b1 : −(a1 b0 + a0 b1) : a0 b0)`, the point whose quadric is
/// `(a1 u − a0 v)(b1 u − b0 v)`.
pub fn vertex_of<S: Scalar>(a: &P1Point<S>, b: &P1Point<S>) -> Result<ProjPoint<S>> {
    let [a0, a1] = a.coords().clone();
    let [b0, b1] = b.coords().clone();
    ProjPoint::new([
        a1.clone() * b1.clone(),
        -(a1 * b0.clone() + a0.clone() * b1),
        a0 * b0,
    ])
}

/// A vertex of a gon with the indices of the two lines through it.
#[derive(Clone, Debug, PartialEq)]
pub struct Vertex<S: Scalar> {
    pub lines: (usize, usize),
    pub point: ProjPoint<S>,
}

/// An n-gon of lines tangent to a conic: complete (all `C(n,2)` vertices) or
/// ordered (vertex `i` joins lines `i` and `i+1 mod n`).
#[derive(Clone, Debug, PartialEq)]
pub struct Gon<S: Scalar> {
    params: Vec<P1Point<S>>,
    lines: Vec<ProjLine<S>>,
    vertices: Vec<Vertex<S>>,
    complete: bool,
}

impl<S: Scalar> Gon<S> {
    /// Complete gon of the tangents to the canonical conic at `params`.
    pub fn complete_from_params(params: Vec<P1Point<S>>) -> Result<Self> {
        let n = params.len();
        let lines = params.iter().map(tangent_line_at_parameter).collect();
        let mut vertices = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                let point =
                    vertex_of(&params[i], &params[j]).map_err(|_| Error::RepeatedRoots {
                        separation: params[i].distance(&params[j]),
                    })?;
                vertices.push(Vertex {
                    lines: (i, j),
                    point,
                });
            }
        }
        Ok(Gon {
            params,
            lines,
            vertices,
            complete: true,
        })
    }

    /// Ordered gon from its lines and consecutive vertices, with parameters
    /// taken in some canonical frame.
    pub fn ordered(
        params: Vec<P1Point<S>>,
        lines: Vec<ProjLine<S>>,
        vertices: Vec<ProjPoint<S>>,
    ) -> Result<Self> {
        let n = lines.len();
        if params.len() != n || vertices.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "ordered gon with {} parameters, {n} lines, {} vertices",
                params.len(),
                vertices.len()
            )));
        }
        let vertices = vertices
            .into_iter()
            .enumerate()
            .map(|(i, point)| Vertex {
                lines: (i, (i + 1) % n),
                point,
            })
            .collect();
        Ok(Gon {
            params,
            lines,
            vertices,
            complete: false,
        })
    }

    pub fn n(&self) -> usize {
        self.lines.len()
    }

    pub fn params(&self) -> &[P1Point<S>] {
        &self.params
    }

    pub fn lines(&self) -> &[ProjLine<S>] {
        &self.lines
    }

    pub fn vertices(&self) -> &[Vertex<S>] {
        &self.vertices
    }

    pub fn vertex_points(&self) -> Vec<ProjPoint<S>> {
        self.vertices.iter().map(|v| v.point.clone()).collect()
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Form whose roots are the tangency parameters.
    pub fn tangency_form(&self) -> Result<BinaryForm<S>> {
        crate::forms::from_roots(&self.params)
    }

    /// Largest incidence residual between each vertex and its two lines, and
    /// the smallest residual against any other line.
    pub fn incidence_margins(&self) -> (f64, f64) {
        let mut on = 0.0f64;
        let mut off = f64::INFINITY;
        for v in &self.vertices {
            for (k, l) in self.lines.iter().enumerate() {
                let r = crate::projective::incidence_residual(l, &v.point);
                if k == v.lines.0 || k == v.lines.1 {
                    on = on.max(r);
                } else {
                    off = off.min(r);
                }
            }
        }
        (on, off)
    }

    /// Same gon with lines and vertices moved by `t`; parameters are kept.
    pub fn transformed(&self, t: &ProjTransform<S>) -> Self {
        Gon {
            params: self.params.clone(),
            lines: self.lines.iter().map(|l| l.transformed(t)).collect(),
            vertices: self
                .vertices
                .iter()
                .map(|v| Vertex {
                    lines: v.lines,
                    point: v.point.transformed(t),
                })
                .collect(),
            complete: self.complete,
        }
    }

    /// Canonical-frame gon carried to the world coordinates of `frame`.
    pub fn to_world(&self, frame: &CanonicalFrame<S>) -> Self {
        self.transformed(&frame.transform().inverse())
    }
}

/// Two independent sections of equal degree.
#[derive(Clone, Debug, PartialEq)]
pub struct Pencil<S: Scalar> {
    f: BinaryForm<S>,
    g: BinaryForm<S>,
}

impl<S: Scalar> Pencil<S> {
    pub fn new(f: BinaryForm<S>, g: BinaryForm<S>, tol: &Tolerance) -> Result<Self> {
        if f.degree() != g.degree() {
            return Err(Error::DimensionMismatch(format!(
                "pencil of degrees {} and {}",
                f.degree(),
                g.degree()
            )));
        }
        let m = Matrix::from_rows(vec![f.coeffs().to_vec(), g.coeffs().to_vec()])?;
        if m.rank(tol)? < 2 {
            return Err(Error::DependentSections);
        }
        Ok(Pencil { f, g })
    }

    pub fn f(&self) -> &BinaryForm<S> {
        &self.f
    }

    pub fn g(&self) -> &BinaryForm<S> {
        &self.g
    }

    pub fn degree(&self) -> usize {
        self.f.degree()
    }

    /// `λ f + μ g`.
    pub fn member(&self, lambda: &S, mu: &S) -> BinaryForm<S> {
        BinaryForm::combine(lambda, &self.f, mu, &self.g).expect("equal degrees")
    }
}

/// Column-space test: `rank [M(x) | f] = n − 1`.
pub fn vanishes_by_rank<S: Scalar>(
    f: &BinaryForm<S>,
    x: &ProjPoint<S>,
    tol: &Tolerance,
) -> Result<bool> {
    let m = build_matrix(f.degree())?;
    let scale = f.norm();
    if scale == 0.0 {
        return Err(Error::ZeroForm);
    }
    let col: Vec<S> = if S::is_exact() {
        f.coeffs().to_vec()
    } else {
        let s = S::from_f64(1.0 / scale);
        f.coeffs().iter().map(|c| c.clone() * s.clone()).collect()
    };
    Ok(m.eval(x).with_column(&col)?.rank(tol)? == m.cols())
}

/// Divisibility test: `q_x | f`.
pub fn vanishes_by_division<S: Scalar>(
    f: &BinaryForm<S>,
    x: &ProjPoint<S>,
    tol: &Tolerance,
) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    if f.degree() < 2 {
        return Err(Error::DegreeTooSmall {
            got: f.degree(),
            min: 2,
        });
    }
    Ok(f.div_rem(&quadric_of_point(x), tol)?.divides)
}

/// Whether the section `f` vanishes at `x`. Both the rank and the division
/// test are run; disagreement is an error.
pub fn section_vanishes_at<S: Scalar>(
    f: &BinaryForm<S>,
    x: &ProjPoint<S>,
    tol: &Tolerance,
) -> Result<bool> {
    let by_rank = vanishes_by_rank(f, x, tol)?;
    let by_division = vanishes_by_division(f, x, tol)?;
    if by_rank != by_division {
        return Err(Error::Linear(format!(
            "vanishing tests disagree at {x:?}: rank says {by_rank}, division says {by_division}"
        )));
    }
    Ok(by_rank)
}

/// Complete gon of the tangents at the roots of a squarefree `f`.
pub fn zero_locus<S: Scalar>(f: &BinaryForm<S>, tol: &Tolerance) -> Result<Gon<S>> {
    if f.degree() < 2 {
        return Err(Error::DegreeTooSmall {
            got: f.degree(),
            min: 2,
        });
    }
    let params = roots_any(f, tol)?;
    let mut closest = f64::INFINITY;
    for i in 0..params.len() {
        for j in i + 1..params.len() {
            closest = closest.min(params[i].distance(&params[j]));
        }
    }
    let repeated = if S::is_exact() {
        closest == 0.0
    } else {
        closest < SQUAREFREE_SEPARATION
    };
    if repeated {
        return Err(Error::RepeatedRoots {
            separation: closest,
        });
    }
    Gon::complete_from_params(params)
}

/// `(r1(x), r0(x))`, the remainder pair of `f` at `x`; zero iff `f` vanishes
/// at `x`.
///
/// The reduction runs in the `x0` chart when `|x0| ≥ |x2|`, otherwise on the
/// mirrored data (`u ↔ v`, `x0 ↔ x2`). At `(0:1:0)`, where `q_x = uv`, it
/// returns `x1^(n−1) (c_0, c_n)`.
pub fn evaluate_section_fiber<S: Scalar>(f: &BinaryForm<S>, x: &ProjPoint<S>) -> Result<[S; 2]> {
    let n = f.degree();
    if n < 2 {
        return Err(Error::DegreeTooSmall { got: n, min: 2 });
    }
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    let [x0, x1, x2] = x.coords().clone();
    if !x0.is_exact_zero() && x0.cmp_modulus(&x2).is_ge() {
        Ok(reduce_at(f.coeffs(), &x0, &x1, &x2))
    } else if !x2.is_exact_zero() {
        Ok(reduce_at(f.reversed().coeffs(), &x2, &x1, &x0))
    } else {
        let p = x1.pow(n as u32 - 1);
        Ok([f.coeff(0).clone() * p.clone(), f.coeff(n).clone() * p])
    }
}

// the pseudo-remainder recurrence with numbers in place of linear forms
fn reduce_at<S: Scalar>(c: &[S], x0: &S, x1: &S, x2: &S) -> [S; 2] {
    let n = c.len() - 1;
    let mut g = c.to_vec();
    for i in 0..n - 1 {
        let lead = g[i].clone();
        for gk in g.iter_mut() {
            *gk = gk.clone() * x0.clone();
        }
        g[i] = S::zero();
        g[i + 1] = g[i + 1].clone() - lead.clone() * x1.clone();
        g[i + 2] = g[i + 2].clone() - lead * x2.clone();
    }
    [g[n - 1].clone(), g[n].clone()]
}

/// `(r1^f r0^g − r0^f r1^g) / x0^(n−1)`, possibly zero. The division by the
/// power of `x0` is checked.
pub fn determinant_form<S: Scalar>(
    f: &BinaryForm<S>,
    g: &BinaryForm<S>,
    tol: &Tolerance,
) -> Result<TernaryForm<S>> {
    let n = f.degree();
    if g.degree() != n {
        return Err(Error::DimensionMismatch(format!(
            "sections of degree {n} and {}",
            g.degree()
        )));
    }
    let (r1f, r0f) = pseudo_remainder(f)?;
    let (r1g, r0g) = pseudo_remainder(g)?;
    let raw = r1f.mul(&r0g).sub(&r0f.mul(&r1g))?;
    raw.divide_by_x0_power(n as u32 - 1, tol)
}

/// Determinant curve of degree `n − 1` of the pencil `(f, g)`: the locus of
/// vertices of all `λ f + μ g`.
pub fn determinant_curve<S: Scalar>(
    f: &BinaryForm<S>,
    g: &BinaryForm<S>,
    tol: &Tolerance,
) -> Result<PlaneCurve<S>> {
    let d = determinant_form(f, g, tol)?;
    let scale = f.norm() * g.norm();
    if d.is_zero() || (!S::is_exact() && d.norm() <= tol.rel * scale) {
        return Err(Error::DependentSections);
    }
    PlaneCurve::new(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{Exact, Float};

    fn bf(c: &[i64]) -> BinaryForm<Exact> {
        BinaryForm::from_i64(c).unwrap()
    }

    fn pt(c: [i64; 3]) -> ProjPoint<Exact> {
        ProjPoint::from_i64(c).unwrap()
    }

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn banded_matrix_display() {
        assert_eq!(
            build_matrix(2).unwrap().to_string(),
            "[ x0 ]\n[ x1 ]\n[ x2 ]\n"
        );
        assert_eq!(
            build_matrix(3).unwrap().to_string(),
            "[ x0  0 ]\n[ x1 x0 ]\n[ x2 x1 ]\n[  0 x2 ]\n"
        );
        let m = build_matrix(5).unwrap();
        assert_eq!((m.rows(), m.cols()), (6, 4));
        assert_eq!(m.entry(3, 1), Some(2));
        assert_eq!(m.entry(0, 1), None);
        assert!(build_matrix(1).is_err());
    }

    #[test]
    fn vanishing_examples() {
        assert!(section_vanishes_at(&bf(&[0, 1, 0]), &pt([0, 1, 0]), &tol()).unwrap());
        assert!(!section_vanishes_at(&bf(&[0, 1, 0]), &pt([1, 0, 0]), &tol()).unwrap());
        assert!(section_vanishes_at(&bf(&[1, 0, -1, 0]), &pt([1, -1, 0]), &tol()).unwrap());
    }

    #[test]
    fn zero_locus_examples() {
        let g = zero_locus(&bf(&[0, 1, 0]), &tol()).unwrap();
        assert_eq!(g.vertex_points(), vec![pt([0, 1, 0])]);

        let g = zero_locus(&bf(&[1, 0, -1, 0]), &tol()).unwrap();
        let mut got = g.vertex_points();
        got.sort_by_key(|p| format!("{p:?}"));
        let mut want = vec![pt([1, -1, 0]), pt([1, 1, 0]), pt([1, 0, -1])];
        want.sort_by_key(|p| format!("{p:?}"));
        assert_eq!(got, want);

        assert!(matches!(
            zero_locus(&bf(&[1, -4, 4]), &tol()),
            Err(Error::RepeatedRoots { .. })
        ));
    }

    #[test]
    fn float_zero_locus_incidences() {
        let f = BinaryForm::new(vec![
            Float::new(1.0, 0.0),
            Float::new(-0.4, 0.0),
            Float::new(-2.0, 0.0),
            Float::new(0.7, 0.0),
        ])
        .unwrap();
        let g = zero_locus(&f, &tol()).unwrap();
        assert_eq!(g.vertices().len(), 3);
        let (on, off) = g.incidence_margins();
        assert!(on <= 1e-12 && off > 1e-3);
    }

    #[test]
    fn fiber_examples() {
        let z = Exact::from_i64(0);
        assert_eq!(
            evaluate_section_fiber(&bf(&[0, 1, 0]), &pt([0, 1, 0])).unwrap(),
            [z.clone(), z.clone()]
        );
        assert_eq!(
            evaluate_section_fiber(&bf(&[0, 1, 0]), &pt([1, 0, 0])).unwrap(),
            [Exact::from_i64(1), z.clone()]
        );
        assert_eq!(
            evaluate_section_fiber(&bf(&[1, 0, -1]), &pt([1, 0, 1])).unwrap(),
            [z, Exact::from_i64(-2)]
        );
    }

    #[test]
    fn worked_determinant_curve() {
        let c = determinant_curve(&bf(&[0, 1, 0]), &bf(&[1, 0, -1]), &tol()).unwrap();
        let want = TernaryForm::var(0).add(&TernaryForm::var(2)).unwrap();
        assert!(c.form().proportional_to(&want, 0.0));
        assert!(matches!(
            determinant_curve(&bf(&[0, 1, 0]), &bf(&[0, 1, 0]), &tol()),
            Err(Error::DependentSections)
        ));
    }

    #[test]
    fn cubic_determinant_curve_passes_both_triangles() {
        let f = bf(&[1, 0, -1, 0]);
        let g = bf(&[0, 0, 0, 1]);
        let c = determinant_curve(&f, &g, &tol()).unwrap();
        assert_eq!(c.degree(), 2);
        // the triple root of v³ collapses its triangle onto (0:0:1)
        assert!(c.form().eval(pt([0, 0, 1]).coords()).is_exact_zero());
        for (l, m) in [(1, 0), (0, 1), (1, 1), (2, -3), (1, 5)] {
            let h = BinaryForm::combine(&Exact::from_i64(l), &f, &Exact::from_i64(m), &g).unwrap();
            if let Ok(gon) = zero_locus(&h, &tol()) {
                for v in gon.vertices() {
                    assert!(c.form().eval(v.point.coords()).is_exact_zero());
                }
            }
        }
    }
}
