use std::fmt;

use num_rational::BigRational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::Poly;
use crate::error::{Error, Result};
use crate::scalar::{format_rational, serde_rational, Field};

/// Homogeneous polynomial in `x, y` with a declared degree. The coefficient
/// at index `i` multiplies `x^(degree - i) y^i`. Zero forms keep their degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryForm<F> {
    degree: usize,
    coeffs: Vec<F>,
}

impl<F: Field> BinaryForm<F> {
    pub fn new(degree: usize, coeffs: Vec<F>) -> Result<Self> {
        if coeffs.len() != degree + 1 {
            return Err(Error::InvalidSeries(format!(
                "form of degree {degree} needs {} coefficients, got {}",
                degree + 1,
                coeffs.len()
            )));
        }
        Ok(BinaryForm { degree, coeffs })
    }

    pub fn zero(degree: usize) -> Self {
        BinaryForm {
            degree,
            coeffs: vec![F::zero(); degree + 1],
        }
    }

    /// `c · x^(degree - y_exp) y^y_exp`
    pub fn monomial(degree: usize, y_exp: usize, c: F) -> Self {
        assert!(y_exp <= degree);
        let mut f = Self::zero(degree);
        f.coeffs[y_exp] = c;
        f
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        assert!(!coeffs.is_empty());
        BinaryForm {
            degree: coeffs.len() - 1,
            coeffs: coeffs.iter().map(|&c| F::from_i64(c)).collect(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, F::one())
    }

    pub fn x() -> Self {
        Self::monomial(1, 0, F::one())
    }

    pub fn y() -> Self {
        Self::monomial(1, 1, F::one())
    }

    /// Linear form `b·x - a·y`, vanishing exactly at the point `(a : b)`.
    pub fn vanishing_at(a: F, b: F) -> Self {
        BinaryForm {
            degree: 1,
            coeffs: vec![b, -a],
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Field::is_negligible)
    }

    /// Order of vanishing at `(1 : 0)`, i.e. the power of `y` dividing the
    /// form. `None` for the zero form.
    pub fn y_order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_negligible())
    }

    /// Dehomogenization at `y = 1`, as a polynomial in `x`.
    pub fn to_affine(&self) -> Poly<F> {
        Poly::new(self.coeffs.iter().rev().cloned().collect())
    }

    /// Homogenizes `p(x)` to the given degree. Panics if `deg p > degree`.
    pub fn from_affine(p: &Poly<F>, degree: usize) -> Self {
        assert!(p.deg() <= degree as isize, "affine degree exceeds form degree");
        let mut coeffs = vec![F::zero(); degree + 1];
        for (k, c) in p.coeffs().iter().enumerate() {
            coeffs[degree - k] = c.clone();
        }
        BinaryForm { degree, coeffs }
    }

    /// Dehomogenization at `x = 1`, as a polynomial in `y`.
    pub fn to_affine_y(&self) -> Poly<F> {
        Poly::new(self.coeffs.clone())
    }

    pub fn scale(&self, c: &F) -> Self {
        BinaryForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    /// Scales so that the first nonzero coefficient is one.
    pub fn monic(&self) -> Self {
        match self.y_order() {
            Some(k) => {
                let inv = F::one() / self.coeffs[k].clone();
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree, "adding forms of different degree");
        BinaryForm {
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-F::one()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut coeffs = vec![F::zero(); self.degree + other.degree + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_negligible() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        BinaryForm {
            degree: self.degree + other.degree,
            coeffs,
        }
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::monomial(0, 0, F::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Linear combination `Σ c_i f_i` of forms of equal degree.
    pub fn combination(forms: &[Self], coeffs: &[F]) -> Self {
        assert_eq!(forms.len(), coeffs.len());
        assert!(!forms.is_empty());
        let mut acc = Self::zero(forms[0].degree);
        for (f, c) in forms.iter().zip(coeffs) {
            if !c.is_negligible() {
                acc = acc.add(&f.scale(c));
            }
        }
        acc
    }

    pub fn eval(&self, a: &F, b: &F) -> F {
        let mut acc = F::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_negligible() {
                continue;
            }
            let mut term = c.clone();
            for _ in 0..self.degree - i {
                term = term * a.clone();
            }
            for _ in 0..i {
                term = term * b.clone();
            }
            acc = acc + term;
        }
        acc
    }

    /// `F(P(x, y), Q(x, y))` for forms `P, Q` of a common degree.
    pub fn pullback(&self, p: &Self, q: &Self) -> Self {
        assert_eq!(p.degree, q.degree, "substitution forms must share a degree");
        let b = p.degree;
        let mut acc = Self::zero(self.degree * b);
        let ppows: Vec<Self> = (0..=self.degree).map(|k| p.pow(k)).collect();
        let qpows: Vec<Self> = (0..=self.degree).map(|k| q.pow(k)).collect();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_negligible() {
                continue;
            }
            let term = ppows[self.degree - i].mul(&qpows[i]).scale(c);
            acc = acc.add(&term);
        }
        acc
    }

    /// Division with zero remainder, if it exists.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        if d.degree > self.degree {
            return self.is_zero().then(|| Self::zero(0));
        }
        let qdeg = self.degree - d.degree;
        if self.is_zero() {
            return Some(Self::zero(qdeg));
        }
        let dy = d.y_order()?;
        let sy = self.y_order()?;
        if sy < dy {
            return None;
        }
        // Strip y powers, then divide the x-affine parts.
        let a = self.to_affine();
        let b = d.to_affine();
        let q = a.exact_div(&b)?;
        // deg_x(q) must fit in the quotient degree; the y-part is implied.
        if q.deg() > qdeg as isize {
            return None;
        }
        let out = Self::from_affine(&q, qdeg);
        (out.mul(d) == *self).then_some(out)
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.exact_div(self).is_some()
    }

    /// Monic gcd of two forms (leading nonzero coefficient one).
    pub fn gcd(f: &Self, g: &Self) -> Result<Self> {
        match (f.y_order(), g.y_order()) {
            (None, None) => Err(Error::UndefinedGcd),
            (Some(_), None) => Ok(f.monic()),
            (None, Some(_)) => Ok(g.monic()),
            (Some(of), Some(og)) => {
                let e = of.min(og);
                let h = Poly::gcd(&f.to_affine(), &g.to_affine());
                let k = h.degree().unwrap_or(0);
                let base = Self::from_affine(&h, k);
                Ok(base.mul(&Self::monomial(e, e, F::one())).monic())
            }
        }
    }

    /// Gcd of a nonempty list of forms, skipping zero forms.
    pub fn gcd_all(forms: &[Self]) -> Result<Self> {
        let mut it = forms.iter().filter(|f| !f.is_zero());
        let first = it.next().ok_or(Error::UndefinedGcd)?;
        it.try_fold(first.monic(), |acc, f| Self::gcd(&acc, f))
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> BinaryForm<G> {
        BinaryForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }
}

impl<F: Field + fmt::Display> fmt::Display for BinaryForm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_negligible() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let (xe, ye) = (self.degree - i, i);
            write!(f, "({c})")?;
            match xe {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{xe}")?,
            }
            match ye {
                0 => {}
                1 => write!(f, "y")?,
                _ => write!(f, "y^{ye}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<F: fmt::Debug> fmt::Debug for BinaryForm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Form(deg {}, {:?})", self.degree, self.coeffs)
    }
}

#[derive(Serialize, Deserialize)]
struct FormRepr {
    degree: usize,
    #[serde(with = "serde_rational::vec")]
    coeffs: Vec<BigRational>,
}

impl Serialize for BinaryForm<BigRational> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FormRepr {
            degree: self.degree,
            coeffs: self.coeffs.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BinaryForm<BigRational> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = FormRepr::deserialize(d)?;
        BinaryForm::new(r.degree, r.coeffs).map_err(serde::de::Error::custom)
    }
}

impl BinaryForm<BigRational> {
    /// Coefficients rendered as `p/q` strings.
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(format_rational).collect()
    }
}
