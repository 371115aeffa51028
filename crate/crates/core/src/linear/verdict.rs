use std::fmt;

use serde::{Deserialize, Serialize};

use super::decomposition::{decompose, Decomposition};
use super::plane::{fiber_form, sampled_fiber_length, serde_point, PlaneMap, PlanePoint};
use super::singular::{analyze_singularities, Completeness, FiberDescriptor, SingularAnalysis};
use crate::dsb::{vanishing_subspace, LinearSeries};
use crate::error::{Error, Result};
use crate::scalar::{rational, serde_rational};
use crate::{Form, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LinStatus {
    Stable,
    StrictlySemistable,
    Unstable,
    Unknown,
}

impl LinStatus {
    pub fn is_decided(self) -> bool {
        self != LinStatus::Unknown
    }
}

impl fmt::Display for LinStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LinStatus::Stable => "stable",
            LinStatus::StrictlySemistable => "strictly_semistable",
            LinStatus::Unstable => "unstable",
            LinStatus::Unknown => "unknown",
        })
    }
}

/// A sub-series of `|V|` exhibiting a ratio `d′/r′`.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `W = V(−B)` with `B` its full base divisor.
    BaseDivisor { divisor: Form, d_prime: usize, r_prime: usize },
    /// Lines through a rational image point; `B` is the fiber.
    Fiber {
        #[serde(serialize_with = "serde_point::serialize")]
        point: PlanePoint,
        fiber: Form,
        multiplicity: usize,
        d_prime: usize,
        r_prime: usize,
    },
    /// Lines through one point of an irrational orbit; `d′ = d − b·m` with
    /// `m` the lower bound.
    Orbit {
        parameters: Form,
        multiplicity: usize,
        multiplicity_upper: usize,
        d_prime: usize,
    },
    /// Lines through a certified ordinary node.
    CertifiedNode { nodes: usize, d_prime: usize },
}

impl Witness {
    pub fn d_prime(&self) -> usize {
        match self {
            Witness::BaseDivisor { d_prime, .. }
            | Witness::Fiber { d_prime, .. }
            | Witness::Orbit { d_prime, .. }
            | Witness::CertifiedNode { d_prime, .. } => *d_prime,
        }
    }

    pub fn r_prime(&self) -> usize {
        match self {
            Witness::BaseDivisor { r_prime, .. } | Witness::Fiber { r_prime, .. } => *r_prime,
            Witness::Orbit { .. } | Witness::CertifiedNode { .. } => 1,
        }
    }

    pub fn ratio(&self) -> Rational {
        rational(self.d_prime() as i64, self.r_prime() as i64)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LinStabVerdict {
    pub status: LinStatus,
    /// Smallest witnessed `d′/r′`; the true minimum when `complete`.
    #[serde(with = "serde_rational::option")]
    pub ratio: Option<Rational>,
    #[serde(with = "serde_rational::option", skip_serializing_if = "Option::is_none")]
    pub ratio_lower_bound: Option<Rational>,
    pub witness: Option<Witness>,
    pub complete: bool,
    pub d: usize,
    pub r: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub search: Option<super::search::SearchRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<crate::criteria::Certificate>,
}

impl LinStabVerdict {
    /// `d/r`
    pub fn threshold(&self) -> Rational {
        rational(self.d as i64, self.r as i64)
    }
}

/// Status from a witnessed ratio and an optional lower bound on all ratios.
pub(crate) fn status_from_bounds(target: &Rational, hi: Option<&Rational>, lo: Option<&Rational>) -> LinStatus {
    if hi.is_some_and(|h| h < target) {
        return LinStatus::Unstable;
    }
    match lo {
        Some(l) if l > target => LinStatus::Stable,
        Some(l) if l == target && hi == Some(target) => LinStatus::StrictlySemistable,
        _ => LinStatus::Unknown,
    }
}

/// Pencil ratios of a net: the best witness and a lower bound on every
/// ratio `d − (fiber length)`.
pub(crate) struct PencilBounds {
    pub witness: Witness,
    pub lower: Rational,
}

pub(crate) fn pencil_bounds(phi: &PlaneMap, dec: &Decomposition, sa: &SingularAnalysis) -> Result<PencilBounds> {
    let d = phi.d();
    let b = dec.degree;
    let rep = &sa.report;
    let lower = rational((d - b * rep.max_upper_bound) as i64, 1);
    let best = rep
        .entries
        .iter()
        .filter(|e| e.multiplicity == rep.max_multiplicity)
        .min_by_key(|e| match e.descriptor {
            FiberDescriptor::Rational { .. } => 0,
            FiberDescriptor::CertifiedNodes { .. } => 1,
            FiberDescriptor::Orbit { .. } => 2,
        });
    let witness = match best.map(|e| (&e.descriptor, e)) {
        Some((FiberDescriptor::Rational { point, .. }, e)) => Witness::Fiber {
            point: point.clone(),
            fiber: fiber_form(phi, point)?,
            multiplicity: b * e.multiplicity,
            d_prime: d - b * e.multiplicity,
            r_prime: 1,
        },
        Some((FiberDescriptor::CertifiedNodes { count }, e)) => Witness::CertifiedNode {
            nodes: *count,
            d_prime: d - b * e.multiplicity,
        },
        Some((FiberDescriptor::Orbit { parameters }, e)) => Witness::Orbit {
            parameters: dec.pull(parameters).monic(),
            multiplicity: b * e.multiplicity,
            multiplicity_upper: b * e.upper_bound,
            d_prime: d - b * e.multiplicity,
        },
        None if rep.max_multiplicity > 1 => {
            let parameters = sa
                .parameter_form
                .as_ref()
                .ok_or_else(|| Error::Internal("singular points without a parameter form".into()))?;
            Witness::Orbit {
                parameters: dec.pull(parameters).monic(),
                multiplicity: b * rep.max_multiplicity,
                multiplicity_upper: b * rep.max_upper_bound,
                d_prime: d - b * rep.max_multiplicity,
            }
        }
        None => {
            let (m, (a, c)) = sampled_fiber_length(&dec.eta, 4 * d + 8)?;
            if m != 1 {
                return Err(Error::Internal("no smooth point sampled on a birational image".into()));
            }
            let p = dec.eta.image(&a, &c);
            let fiber = fiber_form(phi, &p)?;
            Witness::Fiber {
                multiplicity: fiber.degree(),
                d_prime: d - fiber.degree(),
                point: super::plane::normalize_point(&p),
                fiber,
                r_prime: 1,
            }
        }
    };
    Ok(PencilBounds { witness, lower })
}

/// Linear stability of a birational plane map from the largest
/// multiplicity of its image: stable iff `m < d/2`.
pub fn plane_criterion(phi: &PlaneMap) -> Result<LinStabVerdict> {
    if phi.birational_flag() == Some(false) {
        return Err(Error::NotBirational);
    }
    let dec = decompose(phi)?;
    if !dec.is_birational() {
        return Err(Error::NotBirational);
    }
    let sa = analyze_singularities(phi)?;
    let bounds = pencil_bounds(phi, &dec, &sa)?;
    let target = rational(phi.d() as i64, 2);
    let hi = bounds.witness.ratio();
    let status = status_from_bounds(&target, Some(&hi), Some(&bounds.lower));
    Ok(LinStabVerdict {
        status,
        complete: sa.report.completeness == Completeness::Exact,
        ratio_lower_bound: (bounds.lower != hi).then(|| bounds.lower.clone()),
        ratio: Some(hi),
        witness: Some(bounds.witness),
        d: phi.d(),
        r: 2,
        search: None,
        certificate: None,
    })
}

/// Recomputes the ratio of a witness from `V` alone. Orbit and node
/// witnesses have no rational replay and yield `None`.
pub fn replay_witness(v: &LinearSeries<Rational>, w: &Witness) -> Result<Option<Rational>> {
    let divisor = match w {
        Witness::BaseDivisor { divisor, .. } => divisor,
        Witness::Fiber { point, fiber, .. } => {
            if v.dim() == 3 {
                let phi = PlaneMap::from_series(v)?;
                if fiber_form(&phi, point)?.monic() != fiber.monic() {
                    return Err(Error::Internal("fiber does not match the image point".into()));
                }
            }
            fiber
        }
        Witness::Orbit { .. } | Witness::CertifiedNode { .. } => return Ok(None),
    };
    let w = vanishing_subspace(v.basis(), divisor);
    if w.len() < 2 {
        return Err(Error::Internal("witness divisor leaves no pencil".into()));
    }
    let base = Form::gcd_all(&w)?;
    let d_prime = v.d() - divisor.degree() - base.degree();
    Ok(Some(rational(d_prime as i64, (w.len() - 1) as i64)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::plane::point;

    #[test]
    fn conic_strictly_semistable() {
        let phi = PlaneMap::from_i64s([&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap();
        let v = plane_criterion(&phi).unwrap();
        assert_eq!(v.status, LinStatus::StrictlySemistable);
        assert_eq!(v.ratio, Some(rational(1, 1)));
        assert!(v.complete);
        let replay = replay_witness(&phi.series().unwrap(), v.witness.as_ref().unwrap()).unwrap();
        assert_eq!(replay, v.ratio);
    }

    #[test]
    fn nodal_cubic_unstable() {
        let phi = PlaneMap::from_i64s([&[0, 1, 0, -1], &[1, 0, -1, 0], &[0, 0, 0, 1]]).unwrap();
        let v = plane_criterion(&phi).unwrap();
        assert_eq!(v.status, LinStatus::Unstable);
        assert_eq!(v.ratio, Some(rational(1, 1)));
        match v.witness.as_ref().unwrap() {
            Witness::Fiber { point: p, multiplicity, .. } => {
                assert!(crate::linear::same_point(p, &point([0, 0, 1])));
                assert_eq!(*multiplicity, 2);
            }
            w => panic!("unexpected witness {w:?}"),
        }
        let replay = replay_witness(&phi.series().unwrap(), v.witness.as_ref().unwrap()).unwrap();
        assert_eq!(replay, v.ratio);
    }

    #[test]
    fn double_cover_rejected() {
        let conic = PlaneMap::from_i64s([&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap();
        let phi = conic.pullback(&Form::from_i64s(&[1, 0, 1]), &Form::from_i64s(&[0, 1, 0])).unwrap();
        assert!(matches!(plane_criterion(&phi), Err(Error::NotBirational)));
    }

    #[test]
    fn generic_quintic_stable() {
        let phi = PlaneMap::from_i64s([&[1, 2, 0, -1, 3, 1], &[0, 1, -2, 1, 1, 4], &[2, 0, 1, 3, -1, 1]]).unwrap();
        let v = plane_criterion(&phi).unwrap();
        assert_eq!(v.status, LinStatus::Stable);
        assert_eq!(v.ratio, Some(rational(3, 1)));
    }

    #[test]
    fn status_bounds() {
        let t = rational(5, 2);
        assert_eq!(status_from_bounds(&t, Some(&rational(2, 1)), None), LinStatus::Unstable);
        assert_eq!(status_from_bounds(&t, None, Some(&rational(3, 1))), LinStatus::Stable);
        assert_eq!(status_from_bounds(&t, Some(&t), Some(&t)), LinStatus::StrictlySemistable);
        assert_eq!(status_from_bounds(&t, Some(&t), Some(&rational(2, 1))), LinStatus::Unknown);
    }
}
