use serde::Serialize;

use super::decomposition::decompose;
use super::plane::{fiber_form, PlaneMap};
use super::singular::{analyze_singularities, FiberDescriptor};
use super::verdict::{pencil_bounds, plane_criterion, status_from_bounds, LinStabVerdict, LinStatus, Witness};
use crate::algebra::factor_form;
use crate::dsb::vanishing_subspace;
use crate::error::{Error, Result};
use crate::scalar::rational;
use crate::{Form, LinearSeriesP1, Rational};

/// Candidate divisors examined before the search gives up.
pub const SEARCH_BUDGET: usize = 20_000;

#[derive(Clone, Debug, Serialize)]
pub struct SearchRecord {
    pub max_base_degree: usize,
    pub supports: Vec<Form>,
    pub candidates: usize,
    pub budget_exhausted: bool,
    /// Basis forms too large to factor; their supports are missing.
    pub unfactored: usize,
    /// Which argument bounds the ratios from below, if any.
    pub lower_bound_source: Option<String>,
}

struct Search<'a> {
    basis: &'a [Form],
    d: usize,
    supports: Vec<Form>,
    max_degree: usize,
    candidates: usize,
    exhausted: bool,
    best: Option<(Rational, Witness)>,
}

impl Search<'_> {
    fn visit(&mut self, from: usize, divisor: &Form) {
        for i in from..self.supports.len() {
            let s = self.supports[i].clone();
            let mut b = divisor.clone();
            while b.degree() + s.degree() <= self.max_degree {
                if self.candidates >= SEARCH_BUDGET {
                    self.exhausted = true;
                    return;
                }
                b = b.mul(&s);
                self.candidates += 1;
                let w = vanishing_subspace(self.basis, &b);
                if w.len() < 2 {
                    break;
                }
                let base = Form::gcd_all(&w).expect("nonzero forms");
                let full = b.mul(&base).monic();
                let d_prime = self.d - full.degree();
                let r_prime = w.len() - 1;
                let ratio = rational(d_prime as i64, r_prime as i64);
                if self.best.as_ref().is_none_or(|(q, _)| &ratio < q) {
                    self.best = Some((
                        ratio,
                        Witness::BaseDivisor {
                            divisor: full,
                            d_prime,
                            r_prime,
                        },
                    ));
                }
                self.visit(i + 1, &b);
            }
        }
    }
}

fn push_support(supports: &mut Vec<Form>, f: Form) {
    let f = f.monic();
    if !supports.contains(&f) {
        supports.push(f);
    }
}

/// Enumerates sub-series `V(−B)` over divisors `B` built from rational
/// factors of the basis, their pairwise gcds and, for nets, the fibers of
/// rational singular points, and compares the least `d′/r′` with `d/r`.
pub fn base_divisor_search(v: &LinearSeriesP1, max_base_degree: usize) -> Result<LinStabVerdict> {
    let d = v.d();
    let r = v.r();
    if max_base_degree >= d {
        return Err(Error::Precondition(format!(
            "max_base_degree must be at most d − 1 = {}, got {max_base_degree}",
            d - 1
        )));
    }
    let target = rational(d as i64, r as i64);
    let mut supports = Vec::new();
    let mut unfactored = 0;
    let mut sources: Vec<Form> = v.basis().to_vec();
    for (i, f) in v.basis().iter().enumerate() {
        for g in &v.basis()[i + 1..] {
            let h = Form::gcd(f, g)?;
            if h.degree() > 0 {
                sources.push(h);
            }
        }
    }

    let mut pencil = None;
    if r == 2 {
        let phi = PlaneMap::from_series(v)?;
        let dec = decompose(&phi)?;
        let sa = analyze_singularities(&dec.eta)?;
        for e in &sa.report.entries {
            if let FiberDescriptor::Rational { point, .. } = &e.descriptor {
                sources.push(fiber_form(&phi, point)?);
            }
        }
        pencil = Some(pencil_bounds(&phi, &dec, &sa)?);
    }

    for f in &sources {
        match factor_form(f) {
            Ok(fs) => fs.into_iter().for_each(|(g, _)| push_support(&mut supports, g)),
            Err(Error::FactorCeiling { .. }) => unfactored += 1,
            Err(e) => return Err(e),
        }
    }
    let generic = (0i64..)
        .map(|a| Form::vanishing_at(rational(a, 1), rational(1, 1)))
        .find(|l| !supports.contains(&l.monic()))
        .expect("infinitely many points");
    push_support(&mut supports, generic);

    let mut search = Search {
        basis: v.basis(),
        d,
        supports,
        max_degree: max_base_degree,
        candidates: 0,
        exhausted: false,
        best: None,
    };
    search.visit(0, &Form::one());

    let mut best = search.best.take();
    let mut lower = None;
    let mut source = None;
    if r == 1 {
        source = Some("no proper sub-series of positive dimension".to_string());
    } else if v.is_complete() {
        // W ⊂ H⁰(O(d′)) forces r′ ≤ d′.
        lower = Some(rational(1, 1));
        source = Some("complete series: r′ ≤ d′".to_string());
    } else if let Some(p) = pencil {
        let ratio = p.witness.ratio();
        if best.as_ref().is_none_or(|(q, _)| &ratio < q) {
            best = Some((ratio, p.witness));
        }
        // A sub-series with r′ = 1 is a pencil of lines through a point.
        lower = Some(p.lower);
        source = Some("net: d′ = d − fiber length over the pencil centre".to_string());
    }

    let hi = best.as_ref().map(|(q, _)| q.clone());
    let status = if r == 1 {
        LinStatus::Stable
    } else {
        status_from_bounds(&target, hi.as_ref(), lower.as_ref())
    };
    let complete = r == 1 || (lower.is_some() && lower == hi);
    Ok(LinStabVerdict {
        status,
        ratio: hi.clone(),
        ratio_lower_bound: lower.filter(|l| Some(l) != hi.as_ref()),
        witness: best.map(|(_, w)| w),
        complete,
        d,
        r,
        search: Some(SearchRecord {
            max_base_degree,
            supports: search.supports,
            candidates: search.candidates,
            budget_exhausted: search.exhausted,
            unfactored,
            lower_bound_source: source,
        }),
        certificate: None,
    })
}

/// Plane criterion for birational nets, base-divisor search with the
/// largest admissible base degree otherwise.
pub fn linear_verdict(v: &LinearSeriesP1) -> Result<LinStabVerdict> {
    if v.dim() == 3 {
        let phi = PlaneMap::from_series(v)?;
        if decompose(&phi)?.is_birational() {
            return plane_criterion(&phi);
        }
    }
    base_divisor_search(v, v.d() - 1)
}
