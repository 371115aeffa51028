use num_rational::BigRational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{BinaryForm, Matrix};
use crate::error::{Error, Result};
use crate::scalar::Field;

/// A base-point-free linear series `V ⊆ H⁰(P¹, O(d))` given by a basis of
/// `r + 1` independent binary forms of degree `d`, with `1 ≤ r ≤ d`.
#[derive(Clone, PartialEq)]
pub struct LinearSeries<F> {
    d: usize,
    basis: Vec<BinaryForm<F>>,
}

impl<F: Field> LinearSeries<F> {
    /// Validates and wraps a basis.
    pub fn new(d: usize, basis: Vec<BinaryForm<F>>) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidSeries("degree must be positive".into()));
        }
        if let Some(f) = basis.iter().find(|f| f.degree() != d) {
            return Err(Error::InvalidSeries(format!(
                "basis form of degree {} in a series of degree {d}",
                f.degree()
            )));
        }
        if basis.len() < 2 {
            return Err(Error::InvalidSeries("at least two basis forms are required".into()));
        }
        if basis.len() > d + 1 {
            return Err(Error::InvalidSeries(format!(
                "dimension {} exceeds h0(O({d})) = {}",
                basis.len(),
                d + 1
            )));
        }
        if coefficient_matrix(&basis).rank() < basis.len() {
            return Err(Error::DependentBasis);
        }
        let g = BinaryForm::gcd_all(&basis)?;
        if g.degree() > 0 {
            return Err(Error::NotGenerating);
        }
        Ok(LinearSeries { d, basis })
    }

    /// The complete series `H⁰(O(d))` on the monomial basis.
    pub fn complete(d: usize) -> Result<Self> {
        Self::new(d, (0..=d).map(|j| BinaryForm::monomial(d, j, F::one())).collect())
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Projective dimension `r = dim V − 1`, which is also the rank of the
    /// dual span bundle.
    pub fn r(&self) -> usize {
        self.basis.len() - 1
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BinaryForm<F>] {
        &self.basis
    }

    pub fn is_complete(&self) -> bool {
        self.basis.len() == self.d + 1
    }

    /// Matrix of the multiplication map `V ⊗ H⁰(O(m)) → H⁰(O(d+m))`, one
    /// column per product `f_i · x^{m−j} y^j`.
    pub fn multiplication_matrix(&self, m: usize) -> Matrix<F> {
        let rows = self.d + m + 1;
        let cols = self.basis.len() * (m + 1);
        let mut a = Matrix::zeros(rows, cols);
        for (i, f) in self.basis.iter().enumerate() {
            for j in 0..=m {
                let col = i * (m + 1) + j;
                for (k, c) in f.coeffs().iter().enumerate() {
                    a[(k + j, col)] = c.clone();
                }
            }
        }
        a
    }

    /// Applies a change of basis: the new `i`-th form is `Σ_j a_ij f_j`.
    pub fn change_basis(&self, a: &Matrix<F>) -> Result<Self> {
        let basis = (0..a.rows())
            .map(|i| BinaryForm::combination(&self.basis, a.row(i)))
            .collect();
        Self::new(self.d, basis)
    }

    /// Substitutes `x ↦ p, y ↦ q` into every basis form.
    pub fn pullback(&self, p: &BinaryForm<F>, q: &BinaryForm<F>) -> Result<Self> {
        let basis: Vec<_> = self.basis.iter().map(|f| f.pullback(p, q)).collect();
        Self::new(self.d * p.degree(), basis)
    }
}

/// Coefficient vectors of the forms as the rows of a matrix.
pub fn coefficient_matrix<F: Field>(forms: &[BinaryForm<F>]) -> Matrix<F> {
    Matrix::from_rows(forms.iter().map(|f| f.coeffs().to_vec()).collect())
}

impl<F: Field + std::fmt::Display> std::fmt::Display for LinearSeries<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "⟨")?;
        for (i, b) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, "⟩ ⊆ H⁰(O({}))", self.d)
    }
}

impl<F: std::fmt::Debug> std::fmt::Debug for LinearSeries<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LinearSeries")
            .field("d", &self.d)
            .field("basis", &self.basis)
            .finish()
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    d: usize,
    basis: Vec<BinaryForm<BigRational>>,
}

impl Serialize for LinearSeries<BigRational> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesRepr {
            d: self.d,
            basis: self.basis.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LinearSeries<BigRational> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = SeriesRepr::deserialize(d)?;
        LinearSeries::new(repr.d, repr.basis).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Form, LinearSeriesP1};

    #[test]
    fn validation() {
        let x2 = Form::from_i64s(&[1, 0, 0]);
        let xy = Form::from_i64s(&[0, 1, 0]);
        assert!(matches!(
            LinearSeriesP1::new(2, vec![x2.clone(), xy.clone()]),
            Err(Error::NotGenerating)
        ));
        assert!(matches!(
            LinearSeriesP1::new(2, vec![x2.clone(), x2.scale(&crate::scalar::int(3))]),
            Err(Error::DependentBasis)
        ));
        assert!(LinearSeriesP1::new(2, vec![x2, Form::from_i64s(&[0, 0, 1])]).is_ok());
        assert!(LinearSeriesP1::new(1, vec![Form::x()]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let v = LinearSeriesP1::complete(2).unwrap();
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(
            s,
            r#"{"d":2,"basis":[{"degree":2,"coeffs":["1","0","0"]},{"degree":2,"coeffs":["0","1","0"]},{"degree":2,"coeffs":["0","0","1"]}]}"#
        );
        let back: LinearSeriesP1 = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
        let bad = r#"{"d":2,"basis":[{"degree":2,"coeffs":["1","0","0"]},{"degree":2,"coeffs":["0","1","0"]}]}"#;
        assert!(serde_json::from_str::<LinearSeriesP1>(bad).is_err());
    }
}
