//! Roots of binary forms.
//!
//! Float: Aberth–Ehrlich simultaneous iteration on the dehomogenized
//! polynomial, clustering of multiple roots with a derivative test at the
//! cluster centroid, and Newton polishing in whichever chart (`u/v` or `v/u`)
//! keeps the root inside the unit disc.
//!
//! Exact: float roots are snapped to nearby rationals by continued fractions
//! and accepted only if they vanish exactly.

use std::any::Any;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numeric::{rational_convergents, Exact, Float, Scalar, Tolerance};
use crate::projective::P1Point;

use super::BinaryForm;

const MAX_ABERTH_ITERS: usize = 2000;
const CLUSTER_RADIUS: f64 = 1e-3;
const MULTIPLICITY_TOL: f64 = 1e-11;
const SPREAD_FACTOR: f64 = 10.0;

/// All `n` roots of a float binary form, repeated by multiplicity.
pub fn roots(f: &BinaryForm<Float>, tol: &Tolerance) -> Result<Vec<P1Point<Float>>> {
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    let n = f.degree();
    let c = f.coeffs();
    let scale = f.norm();
    let tiny = |z: &Complex64| z.norm() <= 8.0 * f64::EPSILON * scale;
    let lz = c.iter().take_while(|z| tiny(z)).count();
    let tz = c.iter().rev().take_while(|z| tiny(z)).count();

    let mut out: Vec<P1Point<Float>> = Vec::with_capacity(n);
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    out.extend((0..lz).map(|_| P1Point::new(one, zero).expect("nonzero")));
    out.extend((0..tz).map(|_| P1Point::new(zero, one).expect("nonzero")));

    let core: Vec<Complex64> = c[lz..=n - tz].to_vec();
    if core.len() > 1 {
        let z = aberth(&core)?;
        let finished = cluster_and_polish(&core, z);
        out.extend(finished);
    }

    // normwise, matching the test that dropped negligible end coefficients
    let worst = out
        .iter()
        .map(|r| {
            let m = r.u().norm().max(r.v().norm());
            f.relative_value_at(r)
                .min(f.eval_at(r).norm() / (scale * m.powi(n as i32)))
        })
        .fold(0.0, f64::max);
    if !(worst <= tol.rel.max(1e-10)) {
        return Err(Error::RootsDidNotConverge {
            degree: n,
            residual: worst,
        });
    }
    Ok(out)
}

/// Roots on whichever backend `S` is: [`roots`] for floats,
/// [`rational_roots`] for rationals.
pub fn roots_any<S: Scalar>(f: &BinaryForm<S>, tol: &Tolerance) -> Result<Vec<P1Point<S>>> {
    let any: &dyn Any = f;
    let found: Box<dyn Any> = if let Some(f) = any.downcast_ref::<BinaryForm<Float>>() {
        Box::new(roots(f, tol)?)
    } else if let Some(f) = any.downcast_ref::<BinaryForm<Exact>>() {
        Box::new(rational_roots(f, tol)?)
    } else {
        return Err(Error::Unsupported("root extraction on this backend"));
    };
    Ok(*found
        .downcast::<Vec<P1Point<S>>>()
        .expect("same backend in and out"))
}

/// Roots of a rational binary form, which must all be rational.
pub fn rational_roots(f: &BinaryForm<Exact>, tol: &Tolerance) -> Result<Vec<P1Point<Exact>>> {
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    let approx = roots(&f.to_float(), tol)?;
    let mut remaining = f.clone();
    let mut out = Vec::with_capacity(approx.len());
    for r in approx {
        let cand = snap_rational(&remaining, &r).ok_or_else(|| {
            Error::Irrational(format!("root near {r:?} of {f:?} is not rational"))
        })?;
        let lin = super::from_roots(std::slice::from_ref(&cand))?;
        remaining = remaining
            .div_rem(&lin, tol)
            .map(|d| d.quotient)
            .expect("verified root divides");
        out.push(cand);
    }
    Ok(out)
}

fn snap_rational(f: &BinaryForm<Exact>, r: &P1Point<Float>) -> Option<P1Point<Exact>> {
    let (u, v) = (r.u(), r.v());
    // Chart with the larger coordinate equal to one.
    let (ratio, u_chart) = if u.norm() >= v.norm() {
        (v / u, true)
    } else {
        (u / v, false)
    };
    if ratio.im.abs() > 1e-6 * (1.0 + ratio.norm()) {
        return None;
    }
    for q in rational_convergents(ratio.re, 1 << 40).into_iter().rev() {
        let cand = if u_chart {
            P1Point::new(Exact::from_i64(1), q)
        } else {
            P1Point::new(q, Exact::from_i64(1))
        }
        .ok()?;
        if f.eval_at(&cand).is_exact_zero() {
            return Some(cand);
        }
    }
    None
}

/// Horner evaluation of `p(z)` and `p'(z)` for descending coefficients.
fn horner(p: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut val = Complex64::new(0.0, 0.0);
    let mut der = Complex64::new(0.0, 0.0);
    for &c in p {
        der = der * z + val;
        val = val * z + c;
    }
    (val, der)
}

fn aberth(p: &[Complex64]) -> Result<Vec<Complex64>> {
    let m = p.len() - 1;
    let lead = p[0];
    let monic: Vec<Complex64> = p.iter().map(|c| c / lead).collect();
    if m == 1 {
        return Ok(vec![-monic[1]]);
    }
    let radius = monic[m].norm().powf(1.0 / m as f64).max(1e-12);
    let mut z: Vec<Complex64> = (0..m)
        .map(|j| {
            let theta = std::f64::consts::TAU * j as f64 / m as f64 + 0.7;
            Complex64::from_polar(radius, theta)
        })
        .collect();
    for _ in 0..MAX_ABERTH_ITERS {
        let mut max_step = 0.0f64;
        for j in 0..m {
            let (val, der) = horner(&monic, z[j]);
            if val.norm() == 0.0 {
                continue;
            }
            let ratio = val / der;
            let repulsion: Complex64 = (0..m)
                .filter(|&k| k != j)
                .map(|k| {
                    let d = z[j] - z[k];
                    if d.norm() == 0.0 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        d.inv()
                    }
                })
                .sum();
            let denom = Complex64::new(1.0, 0.0) - ratio * repulsion;
            let step = if denom.norm() == 0.0 || !denom.is_finite() {
                ratio
            } else {
                ratio / denom
            };
            if step.is_finite() {
                z[j] -= step;
                max_step = max_step.max(step.norm() / (1.0 + z[j].norm()));
            }
        }
        if max_step <= 4.0 * f64::EPSILON {
            break;
        }
    }
    if z.iter().any(|w| !w.is_finite()) {
        return Err(Error::RootsDidNotConverge {
            degree: m,
            residual: f64::INFINITY,
        });
    }
    Ok(z)
}

/// A root in whichever chart keeps it in the closed unit disc.
#[derive(Clone, Copy)]
enum Chart {
    /// `z = u/v`
    Direct(Complex64),
    /// `w = v/u`
    Reversed(Complex64),
}

impl Chart {
    fn from_z(z: Complex64) -> Self {
        if z.norm() <= 1.0 {
            Chart::Direct(z)
        } else {
            Chart::Reversed(z.inv())
        }
    }

    fn to_p1(self) -> P1Point<Float> {
        let one = Complex64::new(1.0, 0.0);
        match self {
            Chart::Direct(z) => P1Point::new(z, one),
            Chart::Reversed(w) => P1Point::new(one, w),
        }
        .expect("nonzero")
    }
}

fn reversed(p: &[Complex64]) -> Vec<Complex64> {
    p.iter().rev().copied().collect()
}

fn newton_polish(p: &[Complex64], mut x: Complex64) -> Complex64 {
    for _ in 0..30 {
        let (val, der) = horner(p, x);
        if der.norm() == 0.0 {
            break;
        }
        let step = val / der;
        if !step.is_finite() {
            break;
        }
        x -= step;
        if step.norm() <= 2.0 * f64::EPSILON * (1.0 + x.norm()) {
            break;
        }
    }
    x
}

/// `|p^(j)(x)| / (sum_i |a_i| (m−i)_j |x|^(m−i−j))` for `j = 0..k`, maximised.
fn derivative_backward_error(p: &[Complex64], x: Complex64, k: usize) -> f64 {
    let mut worst = 0.0f64;
    let mut coeffs: Vec<Complex64> = p.to_vec();
    let mut weights: Vec<f64> = p.iter().map(|c| c.norm()).collect();
    for _ in 0..k {
        let (val, _) = horner(&coeffs, x);
        let scale: f64 = weights
            .iter()
            .enumerate()
            .map(|(i, w)| w * x.norm().powi((coeffs.len() - 1 - i) as i32))
            .sum();
        if scale > 0.0 {
            worst = worst.max(val.norm() / scale);
        }
        let deg = coeffs.len() - 1;
        if deg == 0 {
            break;
        }
        coeffs = derivative(&coeffs, 1);
        weights = (0..deg).map(|i| weights[i] * (deg - i) as f64).collect();
    }
    worst
}

/// How far rounding can split a k-fold root at `x`:
/// `(eps · sum_i |a_i| |x|^(m−i) / |p^(k)(x) / k!|)^(1/k)`.
fn multiple_root_spread(p: &[Complex64], x: Complex64, k: usize) -> f64 {
    let m = p.len() - 1;
    let scale: f64 = p
        .iter()
        .enumerate()
        .map(|(i, a)| a.norm() * x.norm().powi((m - i) as i32))
        .sum();
    let fact: f64 = (1..=k).map(|i| i as f64).product();
    let (lead, _) = horner(&derivative(p, k), x);
    let d = lead.norm() / fact;
    if d == 0.0 {
        return f64::INFINITY;
    }
    (f64::EPSILON * scale / d).powf(1.0 / k as f64)
}

fn derivative(p: &[Complex64], k: usize) -> Vec<Complex64> {
    let mut c = p.to_vec();
    for _ in 0..k {
        let deg = c.len() - 1;
        c = (0..deg).map(|i| c[i] * (deg - i) as f64).collect();
    }
    c
}

fn cluster_and_polish(p: &[Complex64], z: Vec<Complex64>) -> Vec<P1Point<Float>> {
    let pts: Vec<P1Point<Float>> = z.iter().map(|&w| Chart::from_z(w).to_p1()).collect();
    let m = pts.len();
    // Single-linkage clusters under the chordal metric.
    let mut label: Vec<usize> = (0..m).collect();
    fn find(label: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while label[r] != r {
            r = label[r];
        }
        label[i] = r;
        r
    }
    for i in 0..m {
        for j in i + 1..m {
            if pts[i].distance(&pts[j]) < CLUSTER_RADIUS {
                let (a, b) = (find(&mut label, i), find(&mut label, j));
                label[a.max(b)] = a.min(b);
            }
        }
    }
    let prev = reversed(p);
    let mut out = Vec::with_capacity(m);
    let mut done = vec![false; m];
    for i in 0..m {
        if done[i] {
            continue;
        }
        let root = find(&mut label, i);
        let members: Vec<usize> = (0..m).filter(|&j| find(&mut label, j) == root).collect();
        for &j in &members {
            done[j] = true;
        }
        if members.len() > 1 {
            let centroid: Complex64 =
                members.iter().map(|&j| z[j]).sum::<Complex64>() / members.len() as f64;
            let (poly, x) = if centroid.norm() <= 1.0 {
                (p, centroid)
            } else {
                let wc: Complex64 =
                    members.iter().map(|&j| z[j].inv()).sum::<Complex64>() / members.len() as f64;
                (prev.as_slice(), wc)
            };
            let k = members.len();
            let chart: Vec<Complex64> = members
                .iter()
                .map(|&j| {
                    if std::ptr::eq(poly, p) {
                        z[j]
                    } else {
                        z[j].inv()
                    }
                })
                .collect();
            let diameter = chart
                .iter()
                .flat_map(|a| chart.iter().map(move |b| (a - b).norm()))
                .fold(0.0, f64::max);
            // a k-fold root is a simple root of the (k−1)-th derivative
            let x = newton_polish(&derivative(poly, k - 1), x);
            if diameter <= SPREAD_FACTOR * multiple_root_spread(poly, x, k)
                && derivative_backward_error(poly, x, k) <= MULTIPLICITY_TOL
            {
                let chart = if std::ptr::eq(poly, p) {
                    Chart::Direct(x)
                } else {
                    Chart::Reversed(x)
                };
                out.extend(std::iter::repeat_n(chart.to_p1(), members.len()));
                continue;
            }
        }
        for &j in &members {
            let polished = match Chart::from_z(z[j]) {
                Chart::Direct(x) => Chart::Direct(newton_polish(p, x)),
                Chart::Reversed(x) => Chart::Reversed(newton_polish(&prev, x)),
            };
            out.push(polished.to_p1());
        }
    }
    out
}
