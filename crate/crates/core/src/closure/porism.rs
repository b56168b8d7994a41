use crate::error::{Error, Result};
use crate::forms::{compose_with_parametrization, BinaryForm, PlaneCurve};
use crate::numeric::{Float, Matrix, Scalar, Tolerance};
use crate::projective::{
    parametrize_conic, CanonicalFrame, Conic, ConicParam, Intersection, P1Point, ProjPoint,
};
use crate::schwarzenberger::{determinant_curve, determinant_form, zero_locus, Gon, Pencil};

use super::iteration::{trace_gon, PonceletFlag};

/// Sections `g` whose determinant curve against a closed `f` contains `D`.
#[derive(Clone, Debug)]
pub struct PorismPencil<S: Scalar> {
    pub pencil: Pencil<S>,
    /// Dimension of the solution space (contains `f`; must be at least 2).
    pub nullity: usize,
    pub frame: CanonicalFrame<S>,
    pub outer: Conic<S>,
    /// `D` in the canonical frame of `C`.
    pub outer_canonical: Conic<S>,
    pub outer_param: ConicParam<S>,
}

/// Solves for all `g` with `Γ(f, g)` vanishing on `D`, i.e. the pullback of
/// the determinant curve to a parametrization of `D` is the zero form.
///
/// `f` is the tangency form, in the canonical frame of `C` built by
/// [`CanonicalFrame::new`] without a seed, of a closed gon inscribed in `D`.
pub fn porism_pencil<S: Scalar>(
    c: &Conic<S>,
    d: &Conic<S>,
    f: &BinaryForm<S>,
    tol: &Tolerance,
) -> Result<PorismPencil<S>> {
    let n = f.degree();
    if n < 3 {
        return Err(Error::DegreeTooSmall { got: n, min: 3 });
    }
    d.require_smooth()?;
    let frame = CanonicalFrame::new(c, None, tol)?;
    let outer_canonical = frame.to_canonical(d);
    // a vertex on D makes a rational seed when the data are rational
    let seed = zero_locus(f, tol).ok().and_then(|g| {
        g.vertex_points()
            .into_iter()
            .find(|v| outer_canonical.contains(v, tol))
    });
    let outer_param = parametrize_conic(&outer_canonical, seed.as_ref(), tol)?;

    let columns = (0..=n)
        .map(|k| {
            let gamma = determinant_form(f, &BinaryForm::monomial(n, k), tol)?;
            Ok(compose_with_parametrization(&gamma, &outer_param).into_coeffs())
        })
        .collect::<Result<Vec<_>>>()?;
    let kernel = Matrix::from_columns(&columns)?.nullspace(tol)?;
    let nullity = kernel.len();
    if nullity < 2 {
        return Err(Error::PorismCertificateFailed { dimension: nullity });
    }
    let g = kernel
        .into_iter()
        .map(|v| BinaryForm::new(v).expect("n + 1 entries"))
        .max_by(|a, b| {
            let da = crate::numeric::chordal_distance(a.coeffs(), f.coeffs());
            let db = crate::numeric::chordal_distance(b.coeffs(), f.coeffs());
            da.total_cmp(&db)
        })
        .expect("nullity >= 2");
    Ok(PorismPencil {
        pencil: Pencil::new(f.clone(), g, tol)?,
        nullity,
        frame,
        outer: d.clone(),
        outer_canonical,
        outer_param,
    })
}

/// `Γ₂ = D · Γ₁`, both in the canonical frame of `C`.
#[derive(Clone, Debug)]
pub struct GammaSplit<S: Scalar> {
    pub gamma2: PlaneCurve<S>,
    /// Degree `n − 3`; the constant 1 for triangles.
    pub gamma1: PlaneCurve<S>,
}

pub fn split_gamma<S: Scalar>(pp: &PorismPencil<S>, tol: &Tolerance) -> Result<GammaSplit<S>> {
    let gamma2 = determinant_curve(pp.pencil.f(), pp.pencil.g(), tol)?;
    let quotient = gamma2
        .form()
        .exact_divide(&pp.outer_canonical.to_form(), tol)
        .map_err(|e| match e {
            Error::InexactDivision { residual } => Error::GammaSplitFailed { residual },
            e => e,
        })?;
    Ok(GammaSplit {
        gamma1: PlaneCurve::new(quotient)?,
        gamma2,
    })
}

/// How one side of a gon meets `D`.
#[derive(Clone, Debug, PartialEq)]
pub struct LineIncidence {
    pub line: usize,
    /// Vertices on `D` lying on this side.
    pub vertices_on_d: Vec<usize>,
    /// Intersections with `D` (with multiplicity) matched to those vertices.
    pub matched: usize,
    pub passed: bool,
}

/// Exactly `n` vertices lie on `D`, and every side meets `D` only at
/// vertices: two of them per side, exhausting all `2n` intersections.
#[derive(Clone, Debug, PartialEq)]
pub struct IncidenceCertificate {
    pub n: usize,
    pub vertices_on_d: Vec<usize>,
    pub lines: Vec<LineIncidence>,
    pub failures: Vec<String>,
    pub passed: bool,
}

impl IncidenceCertificate {
    pub fn into_result(self) -> Result<Self> {
        if self.passed {
            Ok(self)
        } else {
            Err(Error::IncidenceFailed(self.failures.join("; ")))
        }
    }
}

/// `gon` and `d` must be in the same frame.
pub fn incidence_count_on_d<S: Scalar>(
    gon: &Gon<S>,
    d: &Conic<S>,
    tol: &Tolerance,
) -> Result<IncidenceCertificate> {
    if !gon.is_complete() {
        return Err(Error::IncidenceFailed("gon is not complete".into()));
    }
    d.require_smooth()?;
    let n = gon.n();
    let vertices = gon.vertices();
    let vertices_on_d: Vec<usize> = (0..vertices.len())
        .filter(|&i| d.contains(&vertices[i].point, tol))
        .collect();
    let mut failures = Vec::new();
    if vertices_on_d.len() != n {
        failures.push(format!(
            "{} of {} vertices on D, expected {n}",
            vertices_on_d.len(),
            vertices.len()
        ));
    }
    let mut lines = Vec::with_capacity(n);
    for (k, line) in gon.lines().iter().enumerate() {
        let on_line: Vec<usize> = vertices_on_d
            .iter()
            .copied()
            .filter(|&i| vertices[i].lines.0 == k || vertices[i].lines.1 == k)
            .collect();
        let matched = match d.intersect_line(line, tol) {
            Ok(hits) => {
                let pts: Vec<ProjPoint<S>> = match hits {
                    Intersection::Two(a, b) => vec![a, b],
                    Intersection::Double(a) => vec![a.clone(), a],
                };
                let mut used = vec![false; on_line.len()];
                pts.iter()
                    .filter(|p| {
                        let hit = on_line
                            .iter()
                            .enumerate()
                            .find(|(j, &i)| !used[*j] && vertices[i].point.same_as(p, tol.rel));
                        match hit {
                            Some((j, _)) => {
                                used[j] = true;
                                true
                            }
                            None => false,
                        }
                    })
                    .count()
            }
            Err(Error::Irrational(_)) => 0,
            Err(e) => return Err(e),
        };
        let passed = on_line.len() == 2 && matched == 2;
        if !passed {
            failures.push(format!(
                "side {k}: {} vertices on D, {matched} of 2 intersections are vertices",
                on_line.len()
            ));
        }
        lines.push(LineIncidence {
            line: k,
            vertices_on_d: on_line,
            matched,
            passed,
        });
    }
    Ok(IncidenceCertificate {
        n,
        passed: failures.is_empty(),
        vertices_on_d,
        lines,
        failures,
    })
}

/// Cross-oracle check of one pencil member.
#[derive(Clone, Debug)]
pub struct MemberCheck {
    pub incidence: IncidenceCertificate,
    /// Residual of the iteration started at a vertex of the member on `D`.
    pub closure_residual: f64,
    /// Worst chordal distance between the traced and the member's tangency
    /// parameters, matched as multisets.
    pub param_distance: f64,
    pub passed: bool,
}

/// Builds the gon of `member`, certifies its incidences with `D`, then
/// re-traces it with the iteration oracle in world coordinates.
pub fn check_member(
    pp: &PorismPencil<Float>,
    member: &BinaryForm<Float>,
    tol: &Tolerance,
    cert: &Tolerance,
) -> Result<MemberCheck> {
    let n = member.degree();
    let gon = zero_locus(member, tol)?;
    let incidence = incidence_count_on_d(&gon, &pp.outer_canonical, cert)?;
    let Some(&v) = incidence.vertices_on_d.first() else {
        return Ok(MemberCheck {
            incidence,
            closure_residual: f64::INFINITY,
            param_distance: f64::INFINITY,
            passed: false,
        });
    };
    let vertex = &gon.vertices()[v];
    let point = pp.frame.to_world(&vertex.point);
    let line = pp.frame.to_world(&gon.lines()[vertex.lines.0]);
    let c = pp.frame.conic();
    let flag = PonceletFlag::new(c, &pp.outer, point, line, cert)?;
    let report = trace_gon(&flag, n, tol)?;
    let param_distance = multiset_distance(&report.params, gon.params());
    let passed = incidence.passed && report.residual <= cert.rel && param_distance <= cert.rel;
    Ok(MemberCheck {
        incidence,
        closure_residual: report.residual,
        param_distance,
        passed,
    })
}

/// Greedy matching distance between two parameter multisets of equal size.
pub fn multiset_distance(a: &[P1Point<Float>], b: &[P1Point<Float>]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let mut used = vec![false; b.len()];
    let mut worst = 0.0f64;
    for p in a {
        let best = (0..b.len())
            .filter(|&j| !used[j])
            .min_by(|&i, &j| p.distance(&b[i]).total_cmp(&p.distance(&b[j])))
            .expect("equal sizes");
        used[best] = true;
        worst = worst.max(p.distance(&b[best]));
    }
    worst
}
