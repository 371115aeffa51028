use std::collections::BTreeMap;
use std::fmt;

use super::poly::Poly;
use crate::error::{Error, Result};
use crate::scalar::Field;

/// Sparse polynomial in two affine variables `s, t`. Keys are `(i, j)` for
/// the monomial `s^i t^j`; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BivariatePoly<F> {
    terms: BTreeMap<(usize, usize), F>,
}

impl<F: Field> BivariatePoly<F> {
    pub fn zero() -> Self {
        BivariatePoly { terms: BTreeMap::new() }
    }

    pub fn constant(c: F) -> Self {
        Self::from_terms([((0, 0), c)])
    }

    pub fn s() -> Self {
        Self::from_terms([((1, 0), F::one())])
    }

    pub fn t() -> Self {
        Self::from_terms([((0, 1), F::one())])
    }

    pub fn from_terms(it: impl IntoIterator<Item = ((usize, usize), F)>) -> Self {
        let mut p = Self::zero();
        for (k, c) in it {
            p.add_term(k, c);
        }
        p
    }

    fn add_term(&mut self, k: (usize, usize), c: F) {
        if c.is_negligible() {
            return;
        }
        let v = match self.terms.remove(&k) {
            Some(old) => old + c,
            None => c,
        };
        if !v.is_negligible() {
            self.terms.insert(k, v);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize), &F)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&(i, j)| i == 0 && j == 0)
    }

    pub fn degree_s(&self) -> Option<usize> {
        self.terms.keys().map(|k| k.0).max()
    }

    pub fn degree_t(&self) -> Option<usize> {
        self.terms.keys().map(|k| k.1).max()
    }

    pub fn total_degree(&self) -> Option<usize> {
        self.terms.keys().map(|k| k.0 + k.1).max()
    }

    /// `p(s) · q(t)`
    pub fn separable(p: &Poly<F>, q: &Poly<F>) -> Self {
        let mut out = Self::zero();
        for (i, a) in p.coeffs().iter().enumerate() {
            for (j, b) in q.coeffs().iter().enumerate() {
                out.add_term((i, j), a.clone() * b.clone());
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for ((i, j), a) in &self.terms {
            for ((k, l), b) in &other.terms {
                out.add_term((i + k, j + l), a.clone() * b.clone());
            }
        }
        out
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, v)| (*k, v.clone() * c.clone())))
    }

    pub fn swap_variables(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(&(i, j), v)| ((j, i), v.clone())))
    }

    /// Specializes `s`, leaving a polynomial in `t`.
    pub fn eval_s(&self, s: &F) -> Poly<F> {
        Poly::new(self.as_poly_in_t().iter().map(|c| c.eval(s)).collect())
    }

    pub fn eval(&self, s: &F, t: &F) -> F {
        self.eval_s(s).eval(t)
    }

    /// View as a polynomial in `t` whose coefficients are polynomials in `s`
    /// (ascending in `t`, trailing zeros trimmed).
    pub fn as_poly_in_t(&self) -> Vec<Poly<F>> {
        let n = self.degree_t().map_or(0, |d| d + 1);
        let mut cols: Vec<Vec<F>> = vec![Vec::new(); n];
        for (&(i, j), c) in &self.terms {
            let col = &mut cols[j];
            if col.len() <= i {
                col.resize(i + 1, F::zero());
            }
            col[i] = c.clone();
        }
        cols.into_iter().map(Poly::new).collect()
    }

    pub fn from_poly_in_t(coeffs: &[Poly<F>]) -> Self {
        let mut out = Self::zero();
        for (j, p) in coeffs.iter().enumerate() {
            for (i, c) in p.coeffs().iter().enumerate() {
                out.add_term((i, j), c.clone());
            }
        }
        out
    }

    /// The divided difference `(N(s,t)) / (s - t)` when exact.
    pub fn divide_by_s_minus_t(&self) -> Option<Self> {
        // Synthetic division by the monic (in t) factor t - s, then negate.
        let a = self.as_poly_in_t();
        if a.is_empty() {
            return Some(Self::zero());
        }
        let n = a.len() - 1;
        let s = Poly::monomial(F::one(), 1);
        let mut b: Vec<Poly<F>> = vec![Poly::zero(); n];
        let mut carry = Poly::zero();
        for k in (1..=n).rev() {
            carry = &a[k] + &(&s * &carry);
            b[k - 1] = carry.clone();
        }
        let rem = &a[0] + &(&s * &carry);
        if !rem.is_zero() {
            return None;
        }
        let q = Self::from_poly_in_t(&b);
        Some(q.scale(&-F::one()))
    }

    /// Normalizes so the leading coefficient (highest `t`, then highest `s`)
    /// is one.
    pub fn monic(&self) -> Self {
        match self.leading_key() {
            Some(k) => {
                let inv = F::one() / self.terms[&k].clone();
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    fn leading_key(&self) -> Option<(usize, usize)> {
        self.terms.keys().copied().max_by_key(|&(i, j)| (j, i))
    }

    /// Exact division, if `d` divides `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let a = self.as_poly_in_t();
        let b = d.as_poly_in_t();
        let (q, r) = pseudo_div_exact(&a, &b)?;
        if !r.iter().all(Poly::is_zero) {
            return None;
        }
        Some(Self::from_poly_in_t(&q))
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.exact_div(self).is_some()
    }
}

// ---------------------------------------------------------------------------
// Polynomials in t over the Euclidean domain Q[s], stored ascending in t.

fn trim<F: Field>(mut v: Vec<Poly<F>>) -> Vec<Poly<F>> {
    while v.last().is_some_and(Poly::is_zero) {
        v.pop();
    }
    v
}

fn deg_t<F: Field>(v: &[Poly<F>]) -> isize {
    v.len() as isize - 1
}

/// Division over `Q(s)[t]` that stays in `Q[s][t]`: returns quotient and
/// remainder only when every step divides exactly in `Q[s]`.
fn pseudo_div_exact<F: Field>(a: &[Poly<F>], b: &[Poly<F>]) -> Option<(Vec<Poly<F>>, Vec<Poly<F>>)> {
    let b = trim(b.to_vec());
    let db = deg_t(&b);
    if db < 0 {
        return None;
    }
    let mut r = trim(a.to_vec());
    let lb = b.last().unwrap().clone();
    let mut q = vec![Poly::zero(); (deg_t(&r) - db + 1).max(0) as usize];
    while deg_t(&r) >= db {
        let k = (deg_t(&r) - db) as usize;
        let c = r.last().unwrap().exact_div(&lb)?;
        for (j, bj) in b.iter().enumerate() {
            r[k + j] = &r[k + j] - &(&c * bj);
        }
        q[k] = c;
        r = trim(r);
    }
    Some((q, r))
}

/// `lc(b)^(deg a - deg b + 1) · a mod b`
fn prem<F: Field>(a: &[Poly<F>], b: &[Poly<F>]) -> Vec<Poly<F>> {
    let db = deg_t(b);
    let lb = b.last().unwrap().clone();
    let mut r = a.to_vec();
    let mut e = deg_t(a) - db + 1;
    while deg_t(&r) >= db {
        let k = (deg_t(&r) - db) as usize;
        let lr = r.last().unwrap().clone();
        let mut next: Vec<Poly<F>> = r.iter().map(|c| &lb * c).collect();
        for (j, bj) in b.iter().enumerate() {
            next[k + j] = &next[k + j] - &(&lr * bj);
        }
        r = trim(next);
        e -= 1;
    }
    let factor = lb.pow(e.max(0) as usize);
    r.into_iter().map(|c| &c * &factor).collect()
}

fn content<F: Field>(v: &[Poly<F>]) -> Poly<F> {
    v.iter().fold(Poly::zero(), |g, c| Poly::gcd(&g, c))
}

fn primitive_part<F: Field>(v: &[Poly<F>]) -> Vec<Poly<F>> {
    let c = content(v);
    if c.is_zero() {
        return Vec::new();
    }
    v.iter().map(|x| x.exact_div(&c).expect("content divides")).collect()
}

/// Gcd of two bivariate polynomials via the subresultant chain in `t` over
/// `Q[s]`, with the `s`-contents handled separately. The result is made
/// monic in the sense of [`BivariatePoly::monic`].
pub fn bivariate_gcd<F: Field>(p: &BivariatePoly<F>, q: &BivariatePoly<F>) -> Result<BivariatePoly<F>> {
    if p.is_zero() && q.is_zero() {
        return Err(Error::UndefinedGcd);
    }
    if p.is_zero() {
        return Ok(q.monic());
    }
    if q.is_zero() {
        return Ok(p.monic());
    }
    let (a, b) = (p.as_poly_in_t(), q.as_poly_in_t());
    let c = Poly::gcd(&content(&a), &content(&b));
    let (mut a, mut b) = (primitive_part(&a), primitive_part(&b));
    if deg_t(&a) < deg_t(&b) {
        std::mem::swap(&mut a, &mut b);
    }
    let g = if deg_t(&b) == 0 {
        vec![Poly::one()]
    } else {
        primitive_part(&subresultant_last(a, b))
    };
    let out: Vec<Poly<F>> = g.iter().map(|x| x * &c).collect();
    Ok(BivariatePoly::from_poly_in_t(&out).monic())
}

/// Runs the subresultant PRS and returns the last nonzero remainder, or the
/// constant one when the chain ends in a nonzero constant.
fn subresultant_last<F: Field>(mut a: Vec<Poly<F>>, mut b: Vec<Poly<F>>) -> Vec<Poly<F>> {
    let mut g = Poly::one();
    let mut h = Poly::one();
    loop {
        let delta = (deg_t(&a) - deg_t(&b)) as usize;
        let r = prem(&a, &b);
        if r.is_empty() {
            return b;
        }
        if deg_t(&r) == 0 {
            return vec![Poly::one()];
        }
        let divisor = &g * &h.pow(delta);
        a = b;
        b = r
            .iter()
            .map(|c| c.exact_div(&divisor).expect("subresultant division is exact"))
            .collect();
        g = a.last().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            g.pow(delta)
                .exact_div(&h.pow(delta - 1))
                .expect("subresultant division is exact")
        };
    }
}

impl<F: Field + fmt::Display> fmt::Display for BivariatePoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(i, j), c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            if i > 0 {
                write!(f, "s^{i}")?;
            }
            if j > 0 {
                write!(f, "t^{j}")?;
            }
        }
        Ok(())
    }
}

impl<F: fmt::Debug> fmt::Debug for BivariatePoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Bivariate{:?}", self.terms)
    }
}
