use std::fmt;

use crate::error::{Error, Result};
use crate::numeric::{norm2, Float, Scalar, Tolerance};
use crate::projective::P1Point;

/// Homogeneous form of degree `n` in `(u, v)`. Coefficient `k` multiplies
/// `u^(n−k) v^k` (u-descending order, fixed project-wide).
#[derive(Clone, PartialEq)]
pub struct BinaryForm<S> {
    coeffs: Vec<S>,
}

/// Outcome of dividing one binary form by another.
#[derive(Debug, Clone)]
pub struct DivRem<S: Scalar> {
    pub quotient: BinaryForm<S>,
    /// Norm of everything that did not divide, relative to the dividend.
    pub residual: f64,
    /// Exact backend: remainder is exactly zero. Float: `residual <= tol.rel`.
    pub divides: bool,
}

impl<S: Scalar> BinaryForm<S> {
    /// Coefficients in u-descending order; the degree is `coeffs.len() − 1`.
    pub fn new(coeffs: Vec<S>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::DimensionMismatch(
                "binary form needs at least one coefficient".into(),
            ));
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite("binary form coefficient"));
        }
        Ok(BinaryForm { coeffs })
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| S::from_i64(c)).collect())
    }

    pub fn zero(degree: usize) -> Self {
        BinaryForm {
            coeffs: vec![S::zero(); degree + 1],
        }
    }

    /// `u^(degree−k) v^k`.
    pub fn monomial(degree: usize, k: usize) -> Self {
        let mut f = Self::zero(degree);
        f.coeffs[k] = S::one();
        f
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &S {
        &self.coeffs[k]
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_exact_zero)
    }

    /// Max-modulus coefficient norm.
    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(Scalar::modulus).fold(0.0, f64::max)
    }

    pub fn to_float(&self) -> BinaryForm<Float> {
        BinaryForm {
            coeffs: self.coeffs.iter().map(Scalar::to_c64).collect(),
        }
    }

    /// Negligible against `scale` (exactly zero on the exact backend).
    pub fn is_negligible(&self, scale: f64, tol: &Tolerance) -> bool {
        self.coeffs.iter().all(|c| tol.is_negligible(c, scale))
    }

    /// Same form up to a nonzero factor.
    pub fn proportional_to(&self, other: &Self, rel: f64) -> bool {
        self.degree() == other.degree()
            && crate::numeric::vectors_proportional(&self.coeffs, &other.coeffs, rel)
    }

    pub fn eval(&self, u: &S, v: &S) -> S {
        let n = self.degree() as u32;
        self.coeffs
            .iter()
            .enumerate()
            .fold(S::zero(), |acc, (k, c)| {
                acc + c.clone() * u.pow(n - k as u32) * v.pow(k as u32)
            })
    }

    pub fn eval_at(&self, t: &P1Point<S>) -> S {
        self.eval(t.u(), t.v())
    }

    /// `|f(t)| / (sum |c_k| |u|^(n−k) |v|^k)`, the backward-error residual.
    pub fn relative_value_at(&self, t: &P1Point<S>) -> f64 {
        let n = self.degree() as i32;
        let (au, av) = (t.u().modulus(), t.v().modulus());
        let denom: f64 = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c.modulus() * au.powi(n - k as i32) * av.powi(k as i32))
            .sum();
        let value = self.eval_at(t).modulus();
        if denom == 0.0 {
            value
        } else {
            value / denom
        }
    }

    pub fn scale(&self, s: &S) -> Self {
        BinaryForm {
            coeffs: self.coeffs.iter().map(|c| c.clone() * s.clone()).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_degree(other)?;
        Ok(BinaryForm {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-S::one()))
    }

    /// `λ f + μ g`.
    pub fn combine(lambda: &S, f: &Self, mu: &S, g: &Self) -> Result<Self> {
        f.scale(lambda).add(&g.scale(mu))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut coeffs = vec![S::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_exact_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        BinaryForm { coeffs }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = BinaryForm::new(vec![S::one()]).expect("constant");
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Swap `u` and `v`.
    pub fn reversed(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        BinaryForm { coeffs }
    }

    fn check_same_degree(&self, other: &Self) -> Result<()> {
        if self.degree() == other.degree() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(format!(
                "binary forms of degree {} and {}",
                self.degree(),
                other.degree()
            )))
        }
    }

    /// Divides by `g` as binary forms.
    ///
    /// Strips the powers of `v` and `u` in `g` (leading and trailing zero
    /// coefficients), checks the matching coefficients of `self` vanish, then
    /// runs long division from whichever end of the stripped divisor has the
    /// larger coefficient.
    pub fn div_rem(&self, g: &Self, tol: &Tolerance) -> Result<DivRem<S>> {
        let n = self.degree();
        let m = g.degree();
        if m > n {
            return Err(Error::DegreeTooSmall { got: n, min: m });
        }
        let gscale = g.norm();
        if gscale == 0.0 {
            return Err(Error::ZeroForm);
        }
        let fscale = self.norm();
        let negligible = |c: &S| tol.is_negligible(c, gscale);
        let lz = g.coeffs.iter().take_while(|c| negligible(c)).count();
        let tz = g.coeffs.iter().rev().take_while(|c| negligible(c)).count();
        let core_g: Vec<S> = g.coeffs[lz..=m - tz].to_vec();
        let mut leftover: Vec<S> = Vec::new();
        leftover.extend(self.coeffs[..lz].iter().cloned());
        leftover.extend(self.coeffs[n + 1 - tz..].iter().cloned());
        let core_f: Vec<S> = self.coeffs[lz..=n - tz].to_vec();

        let top = core_g[0]
            .cmp_modulus(core_g.last().expect("nonempty"))
            .is_ge();
        let (mut work, divisor) = if top {
            (core_f, core_g)
        } else {
            let mut f = core_f;
            let mut d = core_g;
            f.reverse();
            d.reverse();
            (f, d)
        };
        let dm = divisor.len() - 1;
        let qlen = work.len() - dm;
        let mut quotient = vec![S::zero(); qlen];
        for i in 0..qlen {
            let q = work[i].clone() / divisor[0].clone();
            for (j, d) in divisor.iter().enumerate() {
                work[i + j] = work[i + j].clone() - q.clone() * d.clone();
            }
            work[i] = S::zero();
            quotient[i] = q;
        }
        leftover.extend(work[qlen..].iter().cloned());
        if !top {
            quotient.reverse();
        }
        let exact_zero = leftover.iter().all(Scalar::is_exact_zero);
        let residual = if fscale == 0.0 {
            0.0
        } else {
            norm2(&leftover) / fscale
        };
        let divides = if S::is_exact() {
            exact_zero
        } else {
            residual <= tol.rel
        };
        Ok(DivRem {
            quotient: BinaryForm { coeffs: quotient },
            residual,
            divides,
        })
    }

    /// Derivative with respect to `u`.
    pub fn d_du(&self) -> Self {
        let n = self.degree();
        if n == 0 {
            return BinaryForm::zero(0);
        }
        BinaryForm {
            coeffs: (0..n)
                .map(|k| self.coeffs[k].clone() * S::from_i64((n - k) as i64))
                .collect(),
        }
    }

    /// Derivative with respect to `v`.
    pub fn d_dv(&self) -> Self {
        self.reversed().d_du().reversed()
    }
}

impl<S: Scalar> fmt::Debug for BinaryForm<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_exact_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            match n - k {
                0 => {}
                1 => write!(f, "u")?,
                e => write!(f, "u^{e}")?,
            }
            match k {
                0 => {}
                1 => write!(f, "v")?,
                e => write!(f, "v^{e}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " [deg {n}]")
    }
}

/// Product of the linear forms `b u − a v` over roots `(a : b)`.
pub fn from_roots<S: Scalar>(roots: &[P1Point<S>]) -> Result<BinaryForm<S>> {
    if roots.is_empty() {
        return Err(Error::DegreeTooSmall { got: 0, min: 1 });
    }
    Ok(roots.iter().fold(
        BinaryForm::new(vec![S::one()]).expect("constant"),
        |acc, r| {
            let lin = BinaryForm {
                coeffs: vec![r.v().clone(), -r.u().clone()],
            };
            acc.mul(&lin)
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::Exact;

    fn bf(c: &[i64]) -> BinaryForm<Exact> {
        BinaryForm::from_i64(c).unwrap()
    }

    fn p1(u: i64, v: i64) -> P1Point<Exact> {
        P1Point::from_i64(u, v).unwrap()
    }

    #[test]
    fn from_roots_examples() {
        let uv = from_roots(&[p1(1, 0), p1(0, 1)]).unwrap();
        assert!(uv.proportional_to(&bf(&[0, 1, 0]), 0.0));
        let cubic = from_roots(&[p1(0, 1), p1(1, 1), p1(-1, 1)]).unwrap();
        assert!(cubic.proportional_to(&bf(&[1, 0, -1, 0]), 0.0));
        let triple = from_roots(&[p1(2, 1), p1(2, 1), p1(2, 1)]).unwrap();
        assert!(triple.proportional_to(&bf(&[1, -6, 12, -8]), 0.0));
    }

    #[test]
    fn roots_from_roots_vanish() {
        let roots = [p1(3, -2), p1(1, 0), p1(-5, 7)];
        let f = from_roots(&roots).unwrap();
        for r in &roots {
            assert!(f.eval_at(r).is_exact_zero());
        }
    }

    #[test]
    fn division_by_quadric_with_root_at_infinity() {
        let tol = Tolerance::default();
        // u(u − v)(u + v) divided by u(u − v) = u² − uv.
        let f = bf(&[1, 0, -1, 0]);
        let g = bf(&[1, -1, 0]);
        let d = f.div_rem(&g, &tol).unwrap();
        assert!(d.divides);
        assert_eq!(d.quotient, bf(&[1, 1]));
        // uv divides uv^2 but u^2 does not divide uv.
        assert!(
            bf(&[0, 1, 0, 0])
                .div_rem(&bf(&[0, 1, 0]), &tol)
                .unwrap()
                .divides
        );
        let bad = bf(&[0, 1, 0]).div_rem(&bf(&[1, 0, 0]), &tol).unwrap();
        assert!(!bad.divides);
        assert!(bad.residual > 0.5);
        // v^2 | v^2 (u + v), reversed-direction division
        let h = bf(&[0, 0, 1, 1]);
        let d = h.div_rem(&bf(&[0, 0, 1]), &tol).unwrap();
        assert!(d.divides);
        assert_eq!(d.quotient, bf(&[1, 1]));
    }

    #[test]
    fn quotient_times_divisor_recovers_dividend() {
        let tol = Tolerance::default();
        let g = bf(&[2, -3, 5]);
        let h = bf(&[1, 4, -1, 7]);
        let f = g.mul(&h);
        let d = f.div_rem(&g, &tol).unwrap();
        assert!(d.divides);
        assert_eq!(d.quotient, h);
        let d = f.div_rem(&h, &tol).unwrap();
        assert_eq!(d.quotient, g);
    }

    #[test]
    fn derivatives() {
        let f = bf(&[1, 2, 3]); // u² + 2uv + 3v²
        assert_eq!(f.d_du(), bf(&[2, 2]));
        assert_eq!(f.d_dv(), bf(&[2, 6]));
    }
}
