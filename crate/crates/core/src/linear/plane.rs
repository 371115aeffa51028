use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::Matrix;
use crate::dsb::{coefficient_matrix, LinearSeries};
use crate::error::{Error, Result};
use crate::scalar::{int, serde_rational};
use crate::{Form, Rational};

/// A point of the projective plane with rational coordinates.
pub type PlanePoint = [Rational; 3];

/// A morphism `P¹ → P²` given by three forms of a common degree without a
/// common zero.
#[derive(Clone, PartialEq)]
pub struct PlaneMap {
    d: usize,
    forms: [Form; 3],
    birational: Option<bool>,
}

impl PlaneMap {
    pub fn new(forms: [Form; 3]) -> Result<Self> {
        let d = forms[0].degree();
        if d == 0 || forms.iter().any(|f| f.degree() != d) {
            return Err(Error::InvalidSeries("plane map forms must share a positive degree".into()));
        }
        if Form::gcd_all(&forms)?.degree() > 0 {
            return Err(Error::NotGenerating);
        }
        Ok(PlaneMap {
            d,
            forms,
            birational: None,
        })
    }

    pub fn from_i64s(forms: [&[i64]; 3]) -> Result<Self> {
        Self::new(forms.map(Form::from_i64s))
    }

    pub fn from_series(v: &LinearSeries<Rational>) -> Result<Self> {
        let [a, b, c] = v.basis() else {
            return Err(Error::Precondition(format!(
                "a plane map needs dim V = 3, got {}",
                v.dim()
            )));
        };
        Self::new([a.clone(), b.clone(), c.clone()])
    }

    /// The series spanned by the forms; fails when they are dependent.
    pub fn series(&self) -> Result<LinearSeries<Rational>> {
        LinearSeries::new(self.d, self.forms.to_vec())
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn forms(&self) -> &[Form; 3] {
        &self.forms
    }

    /// Caller-asserted or established birationality, if known.
    pub fn birational_flag(&self) -> Option<bool> {
        self.birational
    }

    pub fn with_birational_flag(mut self, flag: bool) -> Self {
        self.birational = Some(flag);
        self
    }

    pub fn forms_independent(&self) -> bool {
        coefficient_matrix(&self.forms).rank() == 3
    }

    pub fn image(&self, a: &Rational, b: &Rational) -> PlanePoint {
        [0, 1, 2].map(|i| self.forms[i].eval(a, b))
    }

    /// Precomposes with the self-map `(x : y) ↦ (p : q)` of `P¹`.
    pub fn pullback(&self, p: &Form, q: &Form) -> Result<Self> {
        if p.degree() != q.degree() || Form::gcd(p, q)?.degree() > 0 {
            return Err(Error::Precondition("substitution pair must be coprime of a common degree".into()));
        }
        Self::new([0, 1, 2].map(|i| self.forms[i].pullback(p, q)))
    }

    /// Applies a projective transformation of the target.
    pub fn transform(&self, t: &Matrix<Rational>) -> Result<Self> {
        Self::new([0, 1, 2].map(|i| Form::combination(&self.forms, t.row(i))))
    }
}

/// Two independent linear forms vanishing at `p`.
pub fn lines_through(p: &PlanePoint) -> Result<[[Rational; 3]; 2]> {
    if p.iter().all(Zero::is_zero) {
        return Err(Error::Precondition("(0:0:0) is not a point".into()));
    }
    let m = Matrix::from_rows(vec![p.to_vec()]);
    let k = m.kernel_basis();
    Ok([
        [k[0][0].clone(), k[0][1].clone(), k[0][2].clone()],
        [k[1][0].clone(), k[1][1].clone(), k[1][2].clone()],
    ])
}

/// The fiber of `φ` over `p` as a binary form: the gcd of the pullbacks of
/// two independent lines through `p`.
pub fn fiber_form(phi: &PlaneMap, p: &PlanePoint) -> Result<Form> {
    let [l1, l2] = lines_through(p)?;
    let h1 = Form::combination(&phi.forms, &l1);
    let h2 = Form::combination(&phi.forms, &l2);
    let g = Form::gcd(&h1, &h2)?;
    if g.degree() == 0 {
        return Err(Error::PointOffCurve);
    }
    Ok(g)
}

/// Scheme-theoretic length of the fiber over `p`.
pub fn multiplicity_at_point(phi: &PlaneMap, p: &PlanePoint) -> Result<usize> {
    Ok(fiber_form(phi, p)?.degree())
}

pub fn same_point(p: &PlanePoint, q: &PlanePoint) -> bool {
    (0..3).all(|i| (0..3).all(|j| p[i].clone() * q[j].clone() == p[j].clone() * q[i].clone()))
}

/// Scales a point so its first nonzero coordinate is one.
pub fn normalize_point(p: &PlanePoint) -> PlanePoint {
    match p.iter().find(|c| !c.is_zero()) {
        Some(l) => {
            let l = l.clone();
            p.clone().map(|c| c / l.clone())
        }
        None => p.clone(),
    }
}

/// Parameters `(s : 1)` for `s = 0, 1, −1, 2, −2, …`, then `(1 : 0)`.
pub(crate) fn sample_parameters(count: usize) -> impl Iterator<Item = (Rational, Rational)> {
    std::iter::once((int(1), int(0))).chain((0..count as i64).map(|k| {
        let s = if k % 2 == 0 { -(k / 2) } else { k / 2 + 1 };
        (int(s), int(1))
    }))
}

/// Minimal fiber length over sampled parameters, with the parameter that
/// attains it. Equals the degree of the map onto its image as soon as one
/// sample is generic.
pub fn sampled_fiber_length(phi: &PlaneMap, samples: usize) -> Result<(usize, (Rational, Rational))> {
    let mut best: Option<(usize, (Rational, Rational))> = None;
    for (a, b) in sample_parameters(samples) {
        let m = multiplicity_at_point(phi, &phi.image(&a, &b))?;
        if best.as_ref().is_none_or(|(bm, _)| m < *bm) {
            best = Some((m, (a, b)));
        }
        if m == 1 {
            break;
        }
    }
    Ok(best.expect("at least one sample"))
}

impl fmt::Display for PlaneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} : {} : {})", self.forms[0], self.forms[1], self.forms[2])
    }
}

impl fmt::Debug for PlaneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PlaneMap(d = {}, {self})", self.d)
    }
}

#[derive(Serialize, Deserialize)]
struct PlaneMapRepr {
    d: usize,
    forms: Vec<Form>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    birational: Option<bool>,
}

impl Serialize for PlaneMap {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PlaneMapRepr {
            d: self.d,
            forms: self.forms.to_vec(),
            birational: self.birational,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PlaneMap {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = PlaneMapRepr::deserialize(d)?;
        let forms: [Form; 3] = repr
            .forms
            .try_into()
            .map_err(|_| D::Error::custom("a plane map has exactly three forms"))?;
        let map = PlaneMap::new(forms).map_err(D::Error::custom)?;
        if map.d != repr.d {
            return Err(D::Error::custom("degree tag disagrees with the forms"));
        }
        Ok(PlaneMap {
            birational: repr.birational,
            ..map
        })
    }
}

/// Serialization helper for plane points.
pub(crate) mod serde_point {
    use super::*;

    pub fn serialize<S: Serializer>(p: &PlanePoint, s: S) -> std::result::Result<S::Ok, S::Error> {
        serde_rational::vec::serialize(p.as_slice(), s)
    }
}

/// A plane point with integer coordinates.
pub fn point(c: [i64; 3]) -> PlanePoint {
    c.map(int)
}
