use serde::Serialize;

use super::plane::{fiber_form, sample_parameters, sampled_fiber_length, PlaneMap};
use crate::algebra::{BivariatePoly, Matrix, Poly};
use crate::dsb::span_dimension;
use crate::error::{Error, Result};
use crate::{Form, Rational};

/// `φ = η ∘ ψ` with `ψ = (N : D)` a self-map of `P¹` of degree `b` and `η`
/// birational onto the image of `φ`.
#[derive(Clone, Debug, Serialize)]
pub struct Decomposition {
    pub degree: usize,
    pub psi: [Form; 2],
    pub eta: PlaneMap,
}

impl Decomposition {
    pub fn is_birational(&self) -> bool {
        self.degree == 1
    }

    /// Pulls a form in the parameter of `η` back to the parameter of `φ`.
    pub fn pull(&self, f: &Form) -> Form {
        f.pullback(&self.psi[0], &self.psi[1])
    }

    /// `(N(s)D(t) − N(t)D(s)) / (s − t)` in the affine chart `y = 1`; up to a
    /// constant, the gcd of the divided minors of `φ`.
    pub fn chordal_gcd(&self) -> BivariatePoly<Rational> {
        let n = self.psi[0].to_affine();
        let d = self.psi[1].to_affine();
        let h = BivariatePoly::separable(&n, &d).sub(&BivariatePoly::separable(&d, &n));
        h.divide_by_s_minus_t().expect("antisymmetric in s, t").monic()
    }
}

/// Finds the factorization of `φ` through its degree onto the image.
///
/// The fiber of `φ` over a generic image point is the fiber of `ψ`, so two
/// generic fiber forms span the pencil `⟨N, D⟩`. The coordinates of `η` then
/// come from solving `f_i = Σ c_k N^{e−k} D^k` exactly.
pub fn decompose(phi: &PlaneMap) -> Result<Decomposition> {
    let samples = 4 * phi.d() * phi.d() + 8;
    let (b, _) = sampled_fiber_length(phi, samples)?;
    if b == 1 {
        return Ok(Decomposition {
            degree: 1,
            psi: [Form::x(), Form::y()],
            eta: phi.clone().with_birational_flag(true),
        });
    }
    if phi.d() % b != 0 {
        return Err(Error::Internal(format!("fiber length {b} does not divide d = {}", phi.d())));
    }
    let mut pencil: Vec<Form> = Vec::new();
    for (a, c) in sample_parameters(samples) {
        let f = fiber_form(phi, &phi.image(&a, &c))?;
        if f.degree() != b {
            continue;
        }
        if pencil.is_empty() || span_dimension(&[pencil[0].clone(), f.clone()]) == 2 {
            pencil.push(f);
        }
        if pencil.len() == 2 {
            break;
        }
    }
    let [n, dd]: [Form; 2] = pencil
        .try_into()
        .map_err(|_| Error::Internal("could not sample two generic fibers".into()))?;
    let e = phi.d() / b;
    let columns: Vec<Form> = (0..=e).map(|k| n.pow(e - k).mul(&dd.pow(k))).collect();
    let mut a = Matrix::zeros(phi.d() + 1, e + 1);
    for (k, col) in columns.iter().enumerate() {
        for (row, c) in col.coeffs().iter().enumerate() {
            a[(row, k)] = c.clone();
        }
    }
    let mut eta_forms = Vec::with_capacity(3);
    for f in phi.forms() {
        let c = a
            .solve(f.coeffs())
            .ok_or_else(|| Error::Internal("map does not factor through the sampled pencil".into()))?;
        eta_forms.push(Form::new(e, c)?);
    }
    let eta = PlaneMap::new(eta_forms.try_into().expect("three forms"))?;
    let inner = decompose(&eta)?;
    if inner.degree == 1 {
        return Ok(Decomposition {
            degree: b,
            psi: [n, dd],
            eta: inner.eta,
        });
    }
    Ok(Decomposition {
        degree: b * inner.degree,
        psi: [inner.psi[0].pullback(&n, &dd), inner.psi[1].pullback(&n, &dd)],
        eta: inner.eta,
    })
}

/// The divided minors `g_ij = (f_i(s) f_j(t) − f_j(s) f_i(t)) / (s − t)` in
/// the affine chart `y = 1`, ordered `g01, g02, g12`.
pub fn divided_minors(phi: &PlaneMap) -> [BivariatePoly<Rational>; 3] {
    let f: Vec<Poly<Rational>> = phi.forms().iter().map(Form::to_affine).collect();
    [(0, 1), (0, 2), (1, 2)].map(|(i, j)| {
        BivariatePoly::separable(&f[i], &f[j])
            .sub(&BivariatePoly::separable(&f[j], &f[i]))
            .divide_by_s_minus_t()
            .expect("antisymmetric in s, t")
    })
}

/// Gcd of the divided minors by the subresultant route. Quadratic in the
/// degree at best; [`Decomposition::chordal_gcd`] is the fast equivalent.
pub fn divided_minor_gcd(phi: &PlaneMap) -> Result<BivariatePoly<Rational>> {
    let [a, b, c] = divided_minors(phi);
    let g = crate::algebra::bivariate_gcd(&a, &b)?;
    crate::algebra::bivariate_gcd(&g, &c)
}
