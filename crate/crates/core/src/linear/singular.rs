//! Singular points of a birational plane map `P¹ → P²`.
//!
//! A parameter `s` is singular when another parameter `t` has the same
//! image, or when the branch through `φ(s)` is cuspidal. Projecting from the
//! two points `e0, e1` of a line `L`, the pairs with `φ(s), φ(t)` collinear
//! with both are exactly the identified pairs plus pairs over `L`, so
//! eliminating `t` from two divided minors and removing the roots of `L ∘ φ`
//! leaves the singular parameters off `L`. Two lines through a point off the
//! curve cover every singular point.
//!
//! A rational curve of degree `d` has `δ = (d−1)(d−2)/2`. A point with `r`
//! branches and multiplicity `m` uses `r ≤ m` parameters and contributes at
//! least `C(m, 2)` to `δ`, so the number of distinct singular parameters is
//! at most `2δ`, with equality exactly when every singular point is an
//! ordinary node. Reduction modulo a prime can only merge parameters, which
//! makes a modular count of `2δ` a certificate for "nodes only".

use serde::Serialize;

use super::plane::{fiber_form, multiplicity_at_point, normalize_point, same_point, serde_point, PlaneMap, PlanePoint};
use crate::algebra::{factor_poly, qpoly_gcd, resultant_formal, Fp, Matrix, Poly, F1, F2, F3};
use crate::error::{Error, Result};
use crate::scalar::{int, Field};
use crate::{Form, QPoly, Rational};

/// Degrees up to this bound always get the exact factor analysis, which
/// locates rational singular points; above it the modular certificate is
/// tried first.
pub const EXACT_DEGREE_LIMIT: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Completeness {
    Exact,
    LowerBound,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FiberDescriptor {
    /// A rational image point and its fiber.
    Rational {
        #[serde(serialize_with = "serde_point::serialize")]
        point: PlanePoint,
        fiber: Form,
    },
    /// Image points defined over the field generated by a root of the
    /// irreducible parameter form; the multiplicity is bounded, not exact.
    Orbit { parameters: Form },
    /// Ordinary nodes certified by the modular count, not located.
    CertifiedNodes { count: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FiberEntry {
    pub descriptor: FiberDescriptor,
    /// Exact multiplicity, or a lower bound when below `upper_bound`.
    pub multiplicity: usize,
    pub upper_bound: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MultiplicityReport {
    pub entries: Vec<FiberEntry>,
    /// Largest multiplicity known to occur (at least one).
    pub max_multiplicity: usize,
    /// Largest multiplicity that cannot be excluded.
    pub max_upper_bound: usize,
    pub completeness: Completeness,
}

impl MultiplicityReport {
    fn from_entries(entries: Vec<FiberEntry>, fallback_upper: Option<usize>) -> Self {
        let max_multiplicity = entries.iter().map(|e| e.multiplicity).max().unwrap_or(1).max(1);
        let max_upper_bound = entries
            .iter()
            .map(|e| e.upper_bound)
            .max()
            .unwrap_or(1)
            .max(1)
            .max(fallback_upper.unwrap_or(1))
            .max(max_multiplicity);
        MultiplicityReport {
            entries,
            max_multiplicity,
            max_upper_bound,
            completeness: if max_upper_bound == max_multiplicity {
                Completeness::Exact
            } else {
                Completeness::LowerBound
            },
        }
    }

    /// Rational entries with their fibers.
    pub fn rational_fibers(&self) -> impl Iterator<Item = (&PlanePoint, &Form, usize)> {
        self.entries.iter().filter_map(|e| match &e.descriptor {
            FiberDescriptor::Rational { point, fiber } => Some((point, fiber, e.multiplicity)),
            _ => None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NodeCertificate {
    pub prime: u64,
    pub distinct_parameters: usize,
    pub expected: usize,
    pub all_nodes: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SingularAnalysis {
    pub report: MultiplicityReport,
    /// Squarefree form whose roots are the singular parameters, when the
    /// exact path ran.
    pub parameter_form: Option<Form>,
    pub factors: Vec<Form>,
    pub certificate: Option<NodeCertificate>,
    /// `Σ C(m_p, 2)` over singular points, when every multiplicity is known.
    pub identified_pairs: Option<usize>,
}

/// Chart and elimination data shared by the exact and modular paths.
struct Setup {
    /// `φ'(x, y) = φ(x, y + c·x)`, so `(1 : 0)` has a one-point fiber.
    shift: Rational,
    affine: [QPoly; 3],
    transforms: [[[Rational; 3]; 3]; 2],
}

fn setup(phi: &PlaneMap) -> Result<Setup> {
    let mut shift = None;
    for c in (0..64).map(|k: i64| if k % 2 == 0 { -(k / 2) } else { k / 2 + 1 }) {
        let c = int(c);
        let p = phi.image(&int(1), &c);
        if multiplicity_at_point(phi, &p)? == 1 {
            shift = Some(c);
            break;
        }
    }
    let shift = shift.ok_or_else(|| Error::Internal("no smooth chart point found".into()))?;
    let sub = Form::new(1, vec![shift.clone(), int(1)])?;
    let affine = [0, 1, 2].map(|i| phi.forms()[i].pullback(&Form::x(), &sub).to_affine());

    let mut q = None;
    'search: for a in 1..12i64 {
        for b in [2 * a + 1, -3 * a + 2, 5 * a - 7] {
            let cand = [int(1), int(a), int(b)];
            if matches!(fiber_form(phi, &cand), Err(Error::PointOffCurve)) {
                q = Some(cand);
                break 'search;
            }
        }
    }
    let q = q.ok_or_else(|| Error::Internal("no point off the curve found".into()))?;
    let lines = super::plane::lines_through(&q)?;
    let transforms = lines.map(|l| {
        let j = (0..3).find(|&j| !num_traits::Zero::is_zero(&l[j])).expect("nonzero line");
        let others: Vec<usize> = (0..3).filter(|&i| i != j).collect();
        let unit = |i: usize| {
            let mut e = [int(0), int(0), int(0)];
            e[i] = int(1);
            e
        };
        [unit(others[0]), unit(others[1]), l.clone()]
    });
    Ok(Setup {
        shift,
        affine,
        transforms,
    })
}

/// Squarefree polynomial whose roots are the finite singular parameters in
/// the chart of `setup`, computed over any field the data reduces to.
fn singular_parameter_poly<F: Field>(
    affine: &[Poly<F>; 3],
    transforms: &[[[F; 3]; 3]; 2],
    d: usize,
    gcd: fn(&Poly<F>, &Poly<F>) -> Poly<F>,
) -> Option<Poly<F>> {
    let bound = 2 * (d - 1) * (d - 1);
    let nodes: Vec<F> = (0..=bound as i64).map(F::from_i64).collect();
    let mut total: Option<Poly<F>> = None;
    for t in transforms {
        let g: Vec<Poly<F>> = t
            .iter()
            .map(|row| {
                row.iter()
                    .zip(affine)
                    .fold(Poly::zero(), |acc, (c, f)| &acc + &f.scale(c))
            })
            .collect();
        let values: Vec<F> = nodes
            .iter()
            .map(|s0| {
                let minor = |i: usize, j: usize| {
                    let a = &g[j].scale(&g[i].eval(s0)) - &g[i].scale(&g[j].eval(s0));
                    let (q, r) = a.div_rem(&Poly::linear_root(s0.clone()));
                    debug_assert!(r.is_zero());
                    q
                };
                resultant_formal(&minor(0, 2), d - 1, &minor(1, 2), d - 1)
            })
            .collect();
        let r = Poly::interpolate(&nodes, &values);
        if r.is_zero() {
            return None;
        }
        let sq = squarefree_with(&r, gcd);
        let on_line = gcd(&sq, &g[2]);
        let cand = sq.exact_div(&on_line).expect("gcd divides").monic();
        total = Some(match total {
            None => cand,
            Some(prev) => {
                let common = gcd(&prev, &cand);
                (&prev * &cand.exact_div(&common).expect("gcd divides")).monic()
            }
        });
    }
    total
}

fn squarefree_with<F: Field>(f: &Poly<F>, gcd: fn(&Poly<F>, &Poly<F>) -> Poly<F>) -> Poly<F> {
    if f.is_constant() {
        return f.monic();
    }
    let g = gcd(f, &f.derivative());
    f.exact_div(&g).expect("gcd divides").monic()
}

fn rational_gcd(a: &QPoly, b: &QPoly) -> QPoly {
    qpoly_gcd(a, b)
}

fn field_gcd<F: Field>(a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
    Poly::gcd(a, b)
}

fn reduce<const P: u64>(s: &Setup) -> Option<([Poly<Fp<P>>; 3], [[[Fp<P>; 3]; 3]; 2])> {
    let red = |p: &QPoly| -> Option<Poly<Fp<P>>> {
        let c: Option<Vec<_>> = p.coeffs().iter().map(Fp::<P>::from_rational).collect();
        Some(Poly::new(c?))
    };
    let affine = [red(&s.affine[0])?, red(&s.affine[1])?, red(&s.affine[2])?];
    let mut transforms = [[[Fp::<P>::new(0); 3]; 3]; 2];
    for (k, t) in s.transforms.iter().enumerate() {
        for i in 0..3 {
            for j in 0..3 {
                transforms[k][i][j] = Fp::<P>::from_rational(&t[i][j])?;
            }
        }
    }
    Some((affine, transforms))
}

fn modular_count<const P: u64>(s: &Setup, d: usize) -> Option<usize> {
    let (affine, transforms) = reduce::<P>(s)?;
    let sp = singular_parameter_poly(&affine, &transforms, d, field_gcd::<Fp<P>>)?;
    Some(sp.deg().max(0) as usize)
}

/// Counts distinct singular parameters modulo a few large primes and keeps
/// the best count; a count of `(d−1)(d−2)` proves that every singular point
/// is an ordinary node.
pub fn node_certificate(phi: &PlaneMap) -> Result<Option<NodeCertificate>> {
    let d = phi.d();
    if d < 3 {
        return Ok(None);
    }
    let s = setup(phi)?;
    let expected = (d - 1) * (d - 2);
    let mut best: Option<NodeCertificate> = None;
    let runs: [(u64, fn(&Setup, usize) -> Option<usize>); 3] = [
        (F1::MODULUS, modular_count::<{ F1::MODULUS }>),
        (F2::MODULUS, modular_count::<{ F2::MODULUS }>),
        (F3::MODULUS, modular_count::<{ F3::MODULUS }>),
    ];
    for (prime, run) in runs {
        let Some(count) = run(&s, d) else {
            continue;
        };
        if count > expected {
            return Err(Error::Internal(format!(
                "{count} singular parameters exceed the bound {expected}; is the map birational?"
            )));
        }
        let cert = NodeCertificate {
            prime,
            distinct_parameters: count,
            expected,
            all_nodes: count == expected,
        };
        let done = cert.all_nodes;
        if best.as_ref().is_none_or(|b| count > b.distinct_parameters) {
            best = Some(cert);
        }
        if done {
            break;
        }
    }
    Ok(best)
}

/// Multiplicity analysis of a birational plane map.
pub fn analyze_singularities(phi: &PlaneMap) -> Result<SingularAnalysis> {
    let d = phi.d();
    if d <= 2 {
        return Ok(SingularAnalysis {
            report: MultiplicityReport::from_entries(Vec::new(), None),
            parameter_form: None,
            factors: Vec::new(),
            certificate: None,
            identified_pairs: Some(0),
        });
    }
    let delta = (d - 1) * (d - 2) / 2;
    let certificate = node_certificate(phi)?;
    let certified = certificate.as_ref().is_some_and(|c| c.all_nodes);
    if certified && d > EXACT_DEGREE_LIMIT {
        return Ok(SingularAnalysis {
            report: MultiplicityReport::from_entries(
                vec![FiberEntry {
                    descriptor: FiberDescriptor::CertifiedNodes { count: delta },
                    multiplicity: 2,
                    upper_bound: 2,
                }],
                None,
            ),
            parameter_form: None,
            factors: Vec::new(),
            certificate,
            identified_pairs: Some(delta),
        });
    }

    let s = setup(phi)?;
    let exact = singular_parameter_poly(&s.affine, &s.transforms, d, rational_gcd)
        .ok_or_else(|| Error::Internal("degenerate elimination".into()))?;
    if exact.deg() as usize > 2 * delta {
        return Err(Error::Internal("more singular parameters than the genus formula allows".into()));
    }
    let back = Form::new(1, vec![-s.shift.clone(), int(1)])?;
    let to_original = |p: &QPoly| Form::from_affine(p, p.deg().max(0) as usize).pullback(&Form::x(), &back).monic();
    let parameter_form = to_original(&exact);
    if exact.deg() <= 0 {
        return Ok(SingularAnalysis {
            report: MultiplicityReport::from_entries(Vec::new(), None),
            parameter_form: Some(parameter_form),
            factors: Vec::new(),
            certificate,
            identified_pairs: Some(0),
        });
    }

    let factors = match factor_poly(&exact) {
        Ok(f) => f,
        Err(Error::FactorCeiling { .. }) => {
            // Only bounds are available: some singular point exists, and no
            // point of an irreducible non-linear curve has multiplicity d.
            let entries = if certified {
                vec![FiberEntry {
                    descriptor: FiberDescriptor::CertifiedNodes { count: delta },
                    multiplicity: 2,
                    upper_bound: 2,
                }]
            } else {
                Vec::new()
            };
            let mut report = MultiplicityReport::from_entries(entries, Some(if certified { 2 } else { d - 1 }));
            if !certified {
                report.max_multiplicity = 2;
                report.completeness = Completeness::LowerBound;
            }
            return Ok(SingularAnalysis {
                report,
                parameter_form: Some(parameter_form),
                factors: Vec::new(),
                identified_pairs: certified.then_some(delta),
                certificate,
            });
        }
        Err(e) => return Err(e),
    };

    let mut entries: Vec<FiberEntry> = Vec::new();
    let orbit_upper = if certified { 2 } else { (d / 2).max(2) };
    for (q, _) in &factors {
        match rational_image(&s.affine, q) {
            Some(p) => {
                if entries.iter().any(|e| matches!(&e.descriptor, FiberDescriptor::Rational { point, .. } if same_point(point, &p))) {
                    continue;
                }
                let fiber = fiber_form(phi, &p)?;
                let m = fiber.degree();
                entries.push(FiberEntry {
                    descriptor: FiberDescriptor::Rational {
                        point: normalize_point(&p),
                        fiber,
                    },
                    multiplicity: m,
                    upper_bound: m,
                });
            }
            None => entries.push(FiberEntry {
                descriptor: FiberDescriptor::Orbit {
                    parameters: to_original(q),
                },
                multiplicity: 2,
                upper_bound: orbit_upper,
            }),
        }
    }
    let has_orbits = entries.iter().any(|e| matches!(e.descriptor, FiberDescriptor::Orbit { .. }));
    let identified_pairs = if certified {
        Some(delta)
    } else if !has_orbits {
        Some(entries.iter().map(|e| e.multiplicity * (e.multiplicity - 1) / 2).sum())
    } else {
        None
    };
    Ok(SingularAnalysis {
        report: MultiplicityReport::from_entries(entries, None),
        parameter_form: Some(parameter_form),
        factors: factors.iter().map(|(q, _)| to_original(q)).collect(),
        certificate,
        identified_pairs,
    })
}

/// The image `φ(α)` for a root `α` of the irreducible `q`, when it is a
/// rational point: the residues `f_i mod q` must be rationally proportional.
fn rational_image(affine: &[QPoly; 3], q: &QPoly) -> Option<PlanePoint> {
    let k = q.deg() as usize;
    let rows: Vec<Vec<Rational>> = affine
        .iter()
        .map(|f| {
            let r = f.rem(q);
            (0..k).map(|j| r.coeff(j)).collect()
        })
        .collect();
    if Matrix::from_rows(rows.clone()).rank() != 1 {
        return None;
    }
    let (i0, j0) = (0..3)
        .flat_map(|i| (0..k).map(move |j| (i, j)))
        .find(|&(i, j)| !num_traits::Zero::is_zero(&rows[i][j]))?;
    let pivot = rows[i0][j0].clone();
    Some([0, 1, 2].map(|i| rows[i][j0].clone() / pivot.clone()))
}

/// Number of distinct singular parameters in the exact analysis, for tests.
pub fn singular_parameter_count(phi: &PlaneMap) -> Result<usize> {
    let s = setup(phi)?;
    let p = singular_parameter_poly(&s.affine, &s.transforms, phi.d(), rational_gcd)
        .ok_or_else(|| Error::Internal("degenerate elimination".into()))?;
    Ok(p.deg().max(0) as usize)
}
