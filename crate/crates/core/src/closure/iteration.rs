use crate::error::{Error, Result};
use crate::forms::{from_roots, BinaryForm};
use crate::numeric::{Float, Tolerance, CERTIFY_TOL};
use crate::projective::{
    incident, CanonicalFrame, Conic, Intersection, P1Point, ProjLine, ProjPoint,
};
use crate::schwarzenberger::Gon;

/// Two candidates closer than this (chordal) cannot be told apart.
pub const MATCH_TOL: f64 = 1e-6;

/// A point on `D` together with a tangent to `C` through it.
#[derive(Clone, Debug)]
pub struct PonceletFlag {
    c: Conic<Float>,
    d: Conic<Float>,
    point: ProjPoint<Float>,
    line: ProjLine<Float>,
}

impl PonceletFlag {
    pub fn new(
        c: &Conic<Float>,
        d: &Conic<Float>,
        point: ProjPoint<Float>,
        line: ProjLine<Float>,
        tol: &Tolerance,
    ) -> Result<Self> {
        c.require_smooth()?;
        d.require_smooth()?;
        if !d.contains(&point, tol) {
            return Err(Error::InvalidFlag(format!(
                "{point:?} is not on D (residual {:e})",
                d.residual(&point)
            )));
        }
        if !c.is_tangent(&line, tol)? {
            return Err(Error::InvalidFlag(format!("{line:?} is not tangent to C")));
        }
        if !incident(&line, &point, tol) {
            return Err(Error::InvalidFlag(format!("{point:?} is not on {line:?}")));
        }
        Ok(PonceletFlag {
            c: c.clone(),
            d: d.clone(),
            point,
            line,
        })
    }

    /// Flag at `point` using the first (`branch = 0`) or second tangent to
    /// `C` in the order returned by [`Conic::tangents_through`].
    pub fn from_point(
        c: &Conic<Float>,
        d: &Conic<Float>,
        point: ProjPoint<Float>,
        branch: usize,
        tol: &Tolerance,
    ) -> Result<Self> {
        let tangents = c.tangents_through(&point, tol)?;
        let line = match (tangents, branch) {
            (Intersection::Two(a, _), 0) | (Intersection::Double(a), 0) => a,
            (Intersection::Two(_, b), 1) => b,
            _ => {
                return Err(Error::InvalidFlag(format!(
                    "no tangent branch {branch} through {point:?}"
                )))
            }
        };
        PonceletFlag::new(c, d, point, line, tol)
    }

    pub fn inner(&self) -> &Conic<Float> {
        &self.c
    }

    pub fn outer(&self) -> &Conic<Float> {
        &self.d
    }

    pub fn point(&self) -> &ProjPoint<Float> {
        &self.point
    }

    pub fn line(&self) -> &ProjLine<Float> {
        &self.line
    }

    /// Chordal distance of the points plus that of the lines.
    pub fn distance(&self, other: &Self) -> f64 {
        self.point.distance(&other.point) + self.line.distance(&other.line)
    }

    fn with(&self, point: ProjPoint<Float>, line: ProjLine<Float>) -> Self {
        PonceletFlag {
            c: self.c.clone(),
            d: self.d.clone(),
            point,
            line,
        }
    }
}

// the candidate that is not `incoming`
fn other<T: Clone + std::fmt::Debug>(
    found: Intersection<T>,
    incoming: &T,
    dist: impl Fn(&T, &T) -> f64,
    what: &str,
) -> Result<T> {
    match found {
        Intersection::Double(_) => Err(Error::DegenerateStep(format!(
            "{what} is a double solution"
        ))),
        Intersection::Two(a, b) => {
            let (da, db) = (dist(&a, incoming), dist(&b, incoming));
            if da <= MATCH_TOL && db <= MATCH_TOL {
                return Err(Error::DegenerateStep(format!(
                    "both candidates for the {what} coincide"
                )));
            }
            if da.min(db) > MATCH_TOL {
                return Err(Error::InvalidFlag(format!(
                    "{incoming:?} is not among the {what} candidates"
                )));
            }
            Ok(if da <= db { b } else { a })
        }
    }
}

/// One tangent-chord step: the flag line meets `D` again at `p′`, and `p′`
/// has one further tangent `ℓ′` to `C`.
pub fn poncelet_step(flag: &PonceletFlag, tol: &Tolerance) -> Result<PonceletFlag> {
    let hits = flag.d.intersect_line(&flag.line, tol)?;
    let p = other(hits, &flag.point, |a, b| a.distance(b), "next point on D")?;
    let tangents = flag.c.tangents_through(&p, tol)?;
    let l = other(
        tangents,
        &flag.line,
        |a, b| a.distance(b),
        "next tangent to C",
    )?;
    Ok(flag.with(p, l))
}

/// Inverse of [`poncelet_step`].
pub fn step_back(flag: &PonceletFlag, tol: &Tolerance) -> Result<PonceletFlag> {
    let tangents = flag.c.tangents_through(&flag.point, tol)?;
    let l = other(
        tangents,
        &flag.line,
        |a, b| a.distance(b),
        "previous tangent to C",
    )?;
    let hits = flag.d.intersect_line(&l, tol)?;
    let p = other(
        hits,
        &flag.point,
        |a, b| a.distance(b),
        "previous point on D",
    )?;
    Ok(flag.with(p, l))
}

/// Outcome of `n` iteration steps.
#[derive(Clone, Debug)]
pub struct ClosureReport {
    pub n: usize,
    /// Flag points `p_0 … p_{n−1}`; side `ℓ_i` joins `p_i` and `p_{i+1}`.
    pub points: Vec<ProjPoint<Float>>,
    pub lines: Vec<ProjLine<Float>>,
    pub final_flag: PonceletFlag,
    /// Distance between the start flag and the flag after `n` steps.
    pub residual: f64,
    /// `residual <= CERTIFY_TOL`.
    pub closed: bool,
    /// Tangency parameters of the sides in the canonical frame of `C`.
    pub params: Vec<P1Point<Float>>,
    pub frame: CanonicalFrame<Float>,
    /// Ordered world-frame gon, when closed.
    pub gon: Option<Gon<Float>>,
    /// Tangency form of the sides, when closed.
    pub form: Option<BinaryForm<Float>>,
}

impl ClosureReport {
    /// Tangency form of the `n` traced sides, closed or not.
    pub fn side_form(&self) -> BinaryForm<Float> {
        from_roots(&self.params).expect("n >= 3 parameters")
    }
}

pub fn trace_gon(start: &PonceletFlag, n: usize, tol: &Tolerance) -> Result<ClosureReport> {
    if n < 3 {
        return Err(Error::DegreeTooSmall { got: n, min: 3 });
    }
    let frame = CanonicalFrame::new(&start.c, None, tol)?;
    let mut flag = start.clone();
    let mut points = Vec::with_capacity(n);
    let mut lines = Vec::with_capacity(n);
    for _ in 0..n {
        points.push(flag.point.clone());
        lines.push(flag.line.clone());
        flag = poncelet_step(&flag, tol)?;
    }
    let residual = flag.distance(start);
    let closed = residual <= CERTIFY_TOL;
    let params = lines
        .iter()
        .map(|l| crate::projective::parameter_of_tangent(&frame.to_canonical(l)))
        .collect::<Vec<_>>();
    let (gon, form) = if closed {
        let mut vertices = points[1..].to_vec();
        vertices.push(points[0].clone());
        let gon = Gon::ordered(params.clone(), lines.clone(), vertices)?;
        (Some(gon), Some(from_roots(&params)?))
    } else {
        (None, None)
    };
    Ok(ClosureReport {
        n,
        points,
        lines,
        final_flag: flag,
        residual,
        closed,
        params,
        frame,
        gon,
        form,
    })
}
