use num_rational::BigRational;
use rand::Rng;
use serde::Serialize;

use super::series::{coefficient_matrix, LinearSeries};
use super::splitting::{splitting_type, SplittingType};
use crate::algebra::{BinaryForm, Matrix};
use crate::error::{Error, Result};
use crate::scalar::{serde_rational, Field};

/// A rational point `(a : b)` of the projective line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct P1Point {
    #[serde(with = "serde_rational")]
    pub a: BigRational,
    #[serde(with = "serde_rational")]
    pub b: BigRational,
}

impl P1Point {
    pub fn new(a: BigRational, b: BigRational) -> Result<Self> {
        if num_traits::Zero::is_zero(&a) && num_traits::Zero::is_zero(&b) {
            return Err(Error::Precondition("(0:0) is not a point".into()));
        }
        Ok(P1Point { a, b })
    }

    /// The linear form `b·x − a·y` vanishing at the point.
    pub fn form(&self) -> BinaryForm<BigRational> {
        BinaryForm::vanishing_at(self.a.clone(), self.b.clone())
    }

    fn same_as(&self, other: &P1Point) -> bool {
        self.a.clone() * other.b.clone() == self.b.clone() * other.a.clone()
    }
}

/// Sub-series `V(−D)` of sections vanishing on a reduced divisor, returned
/// with the divisor divided out, as a basis of forms of degree `d − deg D`.
pub fn vanishing_subspace<F: Field>(basis: &[BinaryForm<F>], divisor: &BinaryForm<F>) -> Vec<BinaryForm<F>> {
    // Unknowns: coefficients c of Σ c_i f_i and the quotient q with
    // Σ c_i f_i = divisor · q.
    let d = basis[0].degree();
    let e = divisor.degree();
    if e > d {
        return Vec::new();
    }
    let qdeg = d - e;
    let n = basis.len();
    let mut a = Matrix::zeros(d + 1, n + qdeg + 1);
    for (i, f) in basis.iter().enumerate() {
        for (k, c) in f.coeffs().iter().enumerate() {
            a[(k, i)] = c.clone();
        }
    }
    for j in 0..=qdeg {
        for (k, c) in divisor.coeffs().iter().enumerate() {
            a[(k + j, n + j)] = -c.clone();
        }
    }
    let kernel = a.kernel_basis();
    // Projecting to q is injective because the f_i are independent.
    kernel
        .into_iter()
        .map(|v| BinaryForm::new(qdeg, v[n..].to_vec()).expect("length matches"))
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ModificationReport {
    pub points: Vec<P1Point>,
    pub sub_series: Option<LinearSeries<BigRational>>,
    pub sub_splitting: Option<SplittingType>,
    pub original_splitting: SplittingType,
    /// `|st′| = r − k`
    pub rank_ok: bool,
    /// `Σ st′ + k = d`
    pub degree_ok: bool,
    /// When `k = r − 1`: `st′ = (d − r + 1)`.
    pub last_step_ok: Option<bool>,
}

impl ModificationReport {
    pub fn all_ok(&self) -> bool {
        self.rank_ok && self.degree_ok && self.last_step_ok.unwrap_or(true)
    }
}

/// Removes `k < r` rational points from `V` one at a time and checks the
/// rank and degree bookkeeping of the dual span bundle of `V(−D)`.
pub fn elementary_modification_check(v: &LinearSeries<BigRational>, points: &[P1Point]) -> Result<ModificationReport> {
    let r = v.r();
    let k = points.len();
    if k >= r {
        return Err(Error::Precondition(format!("need k < r, got k = {k}, r = {r}")));
    }
    for (i, p) in points.iter().enumerate() {
        if points[..i].iter().any(|q| q.same_as(p)) {
            return Err(Error::Precondition("points must be distinct".into()));
        }
    }
    let original = splitting_type(v)?;
    if k == 0 {
        return Ok(ModificationReport {
            points: Vec::new(),
            sub_series: Some(v.clone()),
            sub_splitting: Some(original.clone()),
            rank_ok: true,
            degree_ok: true,
            last_step_ok: None,
            original_splitting: original,
        });
    }
    let mut divisor = BinaryForm::one();
    for (i, p) in points.iter().enumerate() {
        divisor = divisor.mul(&p.form());
        let sub = vanishing_subspace(v.basis(), &divisor);
        if sub.len() != v.dim() - (i + 1) {
            return Err(Error::SpecialDivisor);
        }
    }
    let sub = vanishing_subspace(v.basis(), &divisor);
    let sub_series = match LinearSeries::new(v.d() - k, sub) {
        Ok(s) => s,
        Err(Error::NotGenerating) => return Err(Error::BaseLocusPoint),
        Err(e) => return Err(e),
    };
    let st = splitting_type(&sub_series)?;
    let rank_ok = st.rank() == r - k;
    let degree_ok = st.degree() + k == v.d();
    let last_step_ok = (k == r - 1).then(|| st.twists() == [v.d() - r + 1]);
    Ok(ModificationReport {
        points: points.to_vec(),
        sub_series: Some(sub_series),
        sub_splitting: Some(st),
        original_splitting: original,
        rank_ok,
        degree_ok,
        last_step_ok,
    })
}

/// Draws `k` distinct affine rational points `(a : 1)` that impose
/// independent conditions on `V` and leave a base-point-free remainder.
pub fn general_points<R: Rng>(v: &LinearSeries<BigRational>, k: usize, rng: &mut R, budget: usize) -> Result<Vec<P1Point>> {
    let mut last = String::from("no attempt");
    for _ in 0..budget {
        let mut pts: Vec<P1Point> = Vec::new();
        while pts.len() < k {
            let a = crate::scalar::int(rng.gen_range(-20..=20));
            let p = P1Point::new(a, crate::scalar::int(1))?;
            if !pts.iter().any(|q| q.same_as(&p)) {
                pts.push(p);
            }
        }
        match elementary_modification_check(v, &pts) {
            Ok(_) => return Ok(pts),
            Err(e) => last = e.to_string(),
        }
    }
    Err(Error::RetryBudgetExhausted { budget, last })
}

/// Rank of the span of a list of forms.
pub fn span_dimension<F: Field>(forms: &[BinaryForm<F>]) -> usize {
    if forms.is_empty() {
        return 0;
    }
    coefficient_matrix(forms).rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use crate::{Form, LinearSeriesP1};

    fn pt(a: i64) -> P1Point {
        P1Point::new(int(a), int(1)).unwrap()
    }

    #[test]
    fn complete_cubic_one_point() {
        let v = LinearSeriesP1::complete(3).unwrap();
        let rep = elementary_modification_check(&v, &[pt(2)]).unwrap();
        assert_eq!(rep.sub_splitting.as_ref().unwrap().twists(), &[1, 1]);
        assert!(rep.all_ok());
    }

    #[test]
    fn monomial_quintic_last_step() {
        let v = LinearSeriesP1::new(
            5,
            vec![
                Form::from_i64s(&[1, 0, 0, 0, 0, 0]),
                Form::from_i64s(&[0, 0, 0, 1, 0, 0]),
                Form::from_i64s(&[0, 0, 0, 0, 0, 1]),
            ],
        )
        .unwrap();
        let rep = elementary_modification_check(&v, &[pt(1)]).unwrap();
        assert_eq!(rep.sub_splitting.as_ref().unwrap().twists(), &[4]);
        assert_eq!(rep.last_step_ok, Some(true));
    }

    #[test]
    fn empty_modification() {
        let v = LinearSeriesP1::complete(4).unwrap();
        let rep = elementary_modification_check(&v, &[]).unwrap();
        assert_eq!(rep.sub_splitting.unwrap(), rep.original_splitting);
    }

    #[test]
    fn too_many_points() {
        let v = LinearSeriesP1::complete(2).unwrap();
        assert!(elementary_modification_check(&v, &[pt(0), pt(1)]).is_err());
    }

    #[test]
    fn special_point_rejected() {
        // Every section of ⟨x^3, x^2 y, y^3⟩ vanishing at (0:1) also vanishes
        // there to order 2, leaving the base point (0:1) in the remainder.
        let v = LinearSeriesP1::new(
            3,
            vec![Form::from_i64s(&[1, 0, 0, 0]), Form::from_i64s(&[0, 1, 0, 0]), Form::from_i64s(&[0, 0, 0, 1])],
        )
        .unwrap();
        let p = P1Point::new(int(0), int(1)).unwrap();
        assert!(matches!(elementary_modification_check(&v, &[p]), Err(Error::BaseLocusPoint)));
    }
}
