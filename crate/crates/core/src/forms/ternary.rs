use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::numeric::{norm2, Float, Matrix, Scalar, Tolerance};
use crate::projective::{Mat3, ProjLine, ProjPoint};

use super::BinaryForm;

/// Exponents `(a, b, c)` of `x0^a x1^b x2^c`.
pub type Monomial = [u32; 3];

/// All monomials of total degree `d`, ordered by descending `a`, then
/// descending `b`. This order is used for dense coefficient vectors.
pub fn monomials(d: u32) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(((d + 1) * (d + 2) / 2) as usize);
    for a in (0..=d).rev() {
        for b in (0..=d - a).rev() {
            out.push([a, b, d - a - b]);
        }
    }
    out
}

/// Homogeneous polynomial of degree `d` in `(x0, x1, x2)`; only nonzero
/// coefficients are stored.
#[derive(Clone, PartialEq)]
pub struct TernaryForm<S> {
    degree: u32,
    terms: BTreeMap<Monomial, S>,
}

impl<S: Scalar> TernaryForm<S> {
    pub fn zero(degree: u32) -> Self {
        TernaryForm {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: S) -> Self {
        let mut f = Self::zero(0);
        f.add_term([0, 0, 0], c);
        f
    }

    /// The coordinate function `x_i`.
    pub fn var(i: usize) -> Self {
        let mut m = [0, 0, 0];
        m[i] = 1;
        let mut f = Self::zero(1);
        f.add_term(m, S::one());
        f
    }

    /// Linear form `a0 x0 + a1 x1 + a2 x2`.
    pub fn linear(a: &[S; 3]) -> Self {
        let mut f = Self::zero(1);
        for (i, c) in a.iter().enumerate() {
            let mut m = [0, 0, 0];
            m[i] = 1;
            f.add_term(m, c.clone());
        }
        f
    }

    pub fn from_terms(degree: u32, terms: impl IntoIterator<Item = (Monomial, S)>) -> Result<Self> {
        let mut f = Self::zero(degree);
        for (m, c) in terms {
            if m.iter().sum::<u32>() != degree {
                return Err(Error::DimensionMismatch(format!(
                    "monomial {m:?} in a form of degree {degree}"
                )));
            }
            if !c.is_finite() {
                return Err(Error::NonFinite("ternary form coefficient"));
            }
            f.add_term(m, c);
        }
        Ok(f)
    }

    /// Coefficients in [`monomials`] order.
    pub fn from_dense(degree: u32, coeffs: &[S]) -> Result<Self> {
        let mons = monomials(degree);
        if mons.len() != coeffs.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for degree {degree}",
                coeffs.len()
            )));
        }
        Self::from_terms(degree, mons.into_iter().zip(coeffs.iter().cloned()))
    }

    pub fn to_dense(&self) -> Vec<S> {
        monomials(self.degree)
            .iter()
            .map(|m| self.coeff(m))
            .collect()
    }

    fn add_term(&mut self, m: Monomial, c: S) {
        if c.is_exact_zero() {
            return;
        }
        let sum = match self.terms.remove(&m) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_exact_zero() {
            self.terms.insert(m, sum);
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &S)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> S {
        self.terms.get(m).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn norm(&self) -> f64 {
        self.terms.values().map(Scalar::modulus).fold(0.0, f64::max)
    }

    pub fn to_float(&self) -> TernaryForm<Float> {
        TernaryForm {
            degree: self.degree,
            terms: self.terms.iter().map(|(m, c)| (*m, c.to_c64())).collect(),
        }
    }

    /// Scaled so the first nonzero coefficient (exact) or the largest one
    /// (float) in [`monomials`] order is 1.
    pub fn normalized(&self) -> Self {
        let mut dense = self.to_dense();
        if crate::projective::normalize_homogeneous(&mut dense).is_err() {
            return self.clone();
        }
        Self::from_dense(self.degree, &dense).expect("same degree")
    }

    pub fn proportional_to(&self, other: &Self, rel: f64) -> bool {
        self.degree == other.degree
            && crate::numeric::vectors_proportional(&self.to_dense(), &other.to_dense(), rel)
    }

    pub fn scale(&self, s: &S) -> Self {
        let mut f = Self::zero(self.degree);
        for (m, c) in &self.terms {
            f.add_term(*m, c.clone() * s.clone());
        }
        f
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.degree != other.degree {
            return Err(Error::DimensionMismatch(format!(
                "adding ternary forms of degree {} and {}",
                self.degree, other.degree
            )));
        }
        let mut f = self.clone();
        for (m, c) in &other.terms {
            f.add_term(*m, c.clone());
        }
        Ok(f)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-S::one()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut f = Self::zero(self.degree + other.degree);
        for (ma, a) in &self.terms {
            for (mb, b) in &other.terms {
                f.add_term(
                    [ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2]],
                    a.clone() * b.clone(),
                );
            }
        }
        f
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::constant(S::one()), |acc, _| acc.mul(self))
    }

    pub fn eval(&self, x: &[S; 3]) -> S {
        self.terms.iter().fold(S::zero(), |acc, (m, c)| {
            acc + c.clone() * x[0].pow(m[0]) * x[1].pow(m[1]) * x[2].pow(m[2])
        })
    }

    /// `|F(p)| / sum_m |c_m| |p^m|`, scale-free vanishing residual.
    pub fn relative_value_at(&self, p: &ProjPoint<S>) -> f64 {
        let x = p.coords();
        let ax = x.clone().map(|c| c.modulus());
        let denom: f64 = self
            .terms
            .iter()
            .map(|(m, c)| {
                c.modulus()
                    * ax[0].powi(m[0] as i32)
                    * ax[1].powi(m[1] as i32)
                    * ax[2].powi(m[2] as i32)
            })
            .sum();
        let v = self.eval(x).modulus();
        if denom == 0.0 {
            v
        } else {
            v / denom
        }
    }

    /// Whether `F(p) = 0` (exactly, or within `tol.rel` relative).
    pub fn vanishes_at(&self, p: &ProjPoint<S>, tol: &Tolerance) -> bool {
        if S::is_exact() {
            self.eval(p.coords()).is_exact_zero()
        } else {
            self.relative_value_at(p) <= tol.rel
        }
    }

    /// Divides out `x0^k`. Terms with a smaller power of `x0` are the
    /// residual; they must vanish exactly (exact) or be `<= tol.rel · |F|`.
    pub fn divide_by_x0_power(&self, k: u32, tol: &Tolerance) -> Result<Self> {
        if k > self.degree {
            return Err(Error::DegreeTooSmall {
                got: self.degree as usize,
                min: k as usize,
            });
        }
        let scale = self.norm();
        let mut q = Self::zero(self.degree - k);
        let mut leftover = Vec::new();
        for (m, c) in &self.terms {
            if m[0] >= k {
                q.add_term([m[0] - k, m[1], m[2]], c.clone());
            } else {
                leftover.push(c.clone());
            }
        }
        let residual = if scale == 0.0 {
            0.0
        } else {
            norm2(&leftover) / scale
        };
        let ok = if S::is_exact() {
            leftover.is_empty()
        } else {
            residual <= tol.rel
        };
        if ok {
            Ok(q)
        } else {
            Err(Error::InexactDivision { residual })
        }
    }

    /// Exact quotient `F / G`, solved as the linear system `Q · G = F` over
    /// the coefficients of `Q`.
    pub fn exact_divide(&self, g: &Self, tol: &Tolerance) -> Result<Self> {
        if g.is_zero() {
            return Err(Error::ZeroForm);
        }
        if self.degree < g.degree {
            return Err(Error::DegreeTooSmall {
                got: self.degree as usize,
                min: g.degree as usize,
            });
        }
        let dq = self.degree - g.degree;
        let qmons = monomials(dq);
        let columns: Vec<Vec<S>> = qmons
            .iter()
            .map(|m| {
                let mut mono = Self::zero(dq);
                mono.add_term(*m, S::one());
                mono.mul(g).to_dense()
            })
            .collect();
        let a = Matrix::from_columns(&columns)?;
        let b = self.to_dense();
        if self.is_zero() {
            return Ok(Self::zero(dq));
        }
        let sol = a.solve(&b)?;
        match sol.x {
            Some(x) if S::is_exact() || sol.residual <= tol.rel => Self::from_dense(dq, &x),
            _ => Err(Error::InexactDivision {
                residual: sol.residual,
            }),
        }
    }

    /// `F(L y)`: substitutes `x = L y`.
    pub fn substitute_linear(&self, l: &Mat3<S>) -> Self {
        let xs: [Self; 3] = std::array::from_fn(|i| Self::linear(&l[i]));
        let mut out = Self::zero(self.degree);
        for (m, c) in &self.terms {
            let term = xs[0].pow(m[0]).mul(&xs[1].pow(m[1])).mul(&xs[2].pow(m[2]));
            out = out.add(&term.scale(c)).expect("same degree");
        }
        out
    }

    /// `xᵀ A x` for a symmetric `A`.
    pub fn from_quadratic_matrix(a: &Mat3<S>) -> Self {
        let mut f = Self::zero(2);
        for i in 0..3 {
            for j in 0..3 {
                let mut m = [0, 0, 0];
                m[i] += 1;
                m[j] += 1;
                f.add_term(m, a[i][j].clone());
            }
        }
        f
    }

    /// Symmetric matrix of a quadratic form.
    pub fn quadratic_matrix(&self) -> Mat3<S> {
        let half = S::from_ratio(1, 2);
        std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                let mut m = [0, 0, 0];
                m[i] += 1;
                m[j] += 1;
                let c = self.coeff(&m);
                if i == j {
                    c
                } else {
                    c * half.clone()
                }
            })
        })
    }

    /// Substitutes three binary forms of equal degree `e` for the variables;
    /// the result has degree `d · e`.
    pub fn compose_binary(&self, p: &[BinaryForm<S>; 3]) -> Result<BinaryForm<S>> {
        let e = p[0].degree();
        if p.iter().any(|q| q.degree() != e) {
            return Err(Error::DimensionMismatch(
                "parametrizing forms of unequal degree".into(),
            ));
        }
        let mut out = BinaryForm::zero(self.degree as usize * e);
        for (m, c) in &self.terms {
            let term = p[0].pow(m[0]).mul(&p[1].pow(m[1])).mul(&p[2].pow(m[2]));
            out = out.add(&term.scale(c))?;
        }
        Ok(out)
    }

    /// Restriction to a line, as a binary form in the coordinates of the
    /// line's standard basis (see `line_basis`).
    pub fn restrict_to_line(&self, line: &ProjLine<S>) -> BinaryForm<S> {
        let [p, q] = crate::projective::line_basis(line);
        let lin: [BinaryForm<S>; 3] = std::array::from_fn(|i| {
            BinaryForm::new(vec![p[i].clone(), q[i].clone()]).expect("linear")
        });
        self.compose_binary(&lin).expect("linear forms")
    }

    /// Gradient `(∂F/∂x0, ∂F/∂x1, ∂F/∂x2)`.
    pub fn gradient(&self) -> [Self; 3] {
        std::array::from_fn(|i| {
            let mut g = Self::zero(self.degree.saturating_sub(1));
            for (m, c) in &self.terms {
                if m[i] > 0 {
                    let mut mm = *m;
                    mm[i] -= 1;
                    g.add_term(mm, c.clone() * S::from_i64(m[i] as i64));
                }
            }
            g
        })
    }
}

/// A nonzero ternary form regarded as a plane curve.
#[derive(Clone, PartialEq)]
pub struct PlaneCurve<S> {
    form: TernaryForm<S>,
}

impl<S: Scalar> PlaneCurve<S> {
    pub fn new(form: TernaryForm<S>) -> Result<Self> {
        if form.is_zero() {
            return Err(Error::ZeroForm);
        }
        Ok(PlaneCurve { form })
    }

    pub fn degree(&self) -> u32 {
        self.form.degree()
    }

    pub fn form(&self) -> &TernaryForm<S> {
        &self.form
    }

    pub fn into_form(self) -> TernaryForm<S> {
        self.form
    }

    pub fn contains(&self, p: &ProjPoint<S>, tol: &Tolerance) -> bool {
        self.form.vanishes_at(p, tol)
    }

    pub fn residual(&self, p: &ProjPoint<S>) -> f64 {
        self.form.relative_value_at(p)
    }

    pub fn to_float(&self) -> PlaneCurve<Float> {
        PlaneCurve {
            form: self.form.to_float(),
        }
    }

    /// Same curve expressed in coordinates `y` with `x = L y`.
    pub fn pullback(&self, l: &Mat3<S>) -> Result<Self> {
        PlaneCurve::new(self.form.substitute_linear(l))
    }
}

impl<S: Scalar> fmt::Debug for TernaryForm<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0 [deg {}]", self.degree);
        }
        let parts: Vec<String> = monomials(self.degree)
            .iter()
            .filter_map(|m| {
                self.terms.get(m).map(|c| {
                    let mut s = format!("({c})");
                    for (i, e) in m.iter().enumerate() {
                        match e {
                            0 => {}
                            1 => s.push_str(&format!("x{i}")),
                            e => s.push_str(&format!("x{i}^{e}")),
                        }
                    }
                    s
                })
            })
            .collect();
        write!(f, "{} [deg {}]", parts.join(" + "), self.degree)
    }
}

impl<S: Scalar> fmt::Debug for PlaneCurve<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PlaneCurve({:?})", self.form)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::Exact;
    use crate::projective::mat3;

    fn x(i: usize) -> TernaryForm<Exact> {
        TernaryForm::var(i)
    }

    #[test]
    fn exact_divide_examples() {
        let tol = Tolerance::default();
        let f = x(0).mul(&x(0)).add(&x(0).mul(&x(2))).unwrap();
        let q = f.exact_divide(&x(0), &tol).unwrap();
        assert_eq!(q, x(0).add(&x(2)).unwrap());

        let c = x(1)
            .mul(&x(1))
            .sub(&x(0).mul(&x(2)).scale(&Exact::from_i64(4)))
            .unwrap();
        assert!(matches!(
            c.exact_divide(&x(1), &tol),
            Err(Error::InexactDivision { .. })
        ));
    }

    #[test]
    fn quadratic_matrix_roundtrip() {
        let c = crate::projective::Conic::<Exact>::canonical();
        let f = c.to_form();
        let want = x(1)
            .mul(&x(1))
            .sub(&x(0).mul(&x(2)).scale(&Exact::from_i64(4)))
            .unwrap();
        assert_eq!(f, want);
        assert_eq!(&f.quadratic_matrix(), c.matrix());
    }

    #[test]
    fn x0_power_division_is_checked() {
        let tol = Tolerance::default();
        let f = x(0).mul(&x(0)).mul(&x(1));
        assert_eq!(f.divide_by_x0_power(2, &tol).unwrap(), x(1));
        assert!(f
            .add(&x(1).pow(3))
            .unwrap()
            .divide_by_x0_power(1, &tol)
            .is_err());
    }

    #[test]
    fn substitution_matches_point_evaluation() {
        let f = x(0).mul(&x(1)).add(&x(2).pow(2)).unwrap();
        let l: Mat3<Exact> = mat3::from_i64([[1, 2, 0], [0, 1, -1], [3, 0, 1]]);
        let g = f.substitute_linear(&l);
        let y = [Exact::from_i64(2), Exact::from_i64(-1), Exact::from_i64(5)];
        assert_eq!(g.eval(&y), f.eval(&mat3::mul_vec(&l, &y)));
    }
}
