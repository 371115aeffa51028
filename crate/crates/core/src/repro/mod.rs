//! Deterministic generators for the worked examples and counterexamples.

pub mod fixtures;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::criteria::{apply_rules, CurveInvariants, EngineReport, Notion, SeriesFlags, SeriesInvariants, Status};
use crate::dsb::{split_slope_verdict, splitting_type, SlopeVerdict, SplittingReport};
use crate::error::{Error, Result};
use crate::linear::{analyze_singularities, decompose, plane_criterion, LinStabVerdict, LinStatus, MultiplicityReport, NodeCertificate, PlaneMap};
use crate::scalar::{int, rational};
use crate::{Form, LinearSeriesP1, Rational};

pub use fixtures::{check_fixture, fixture, fixtures, Expected, Fixture, FixtureCheck, FixtureInput};

/// Attempts before `section8_counterexample` gives up.
pub const RETRY_BUDGET: usize = 1000;
/// Coefficients are drawn from `[−COEFF_RANGE, COEFF_RANGE]`.
pub const COEFF_RANGE: i64 = 5;
/// Seed used for the stored quintic example.
pub const DEFAULT_SEED: u64 = 5;

#[derive(Clone, Debug, Serialize)]
pub struct CounterexampleReport {
    pub seed: u64,
    pub attempts: usize,
    pub series: LinearSeriesP1,
    pub splitting: SplittingReport,
    pub multiplicity: MultiplicityReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub node_certificate: Option<NodeCertificate>,
    pub linear: LinStabVerdict,
    pub slope: SlopeVerdict,
}

fn random_net<R: Rng>(d: usize, rng: &mut R) -> Vec<Form> {
    (0..3)
        .map(|_| {
            let c = (0..=d).map(|_| int(rng.gen_range(-COEFF_RANGE..=COEFF_RANGE))).collect();
            Form::new(d, c).expect("length d + 1")
        })
        .collect()
}

fn try_candidate(d: usize, forms: Vec<Form>) -> Result<Option<(LinearSeriesP1, SplittingReport, MultiplicityReport, Option<NodeCertificate>, LinStabVerdict)>> {
    let v = match LinearSeriesP1::new(d, forms) {
        Ok(v) => v,
        Err(Error::DependentBasis | Error::NotGenerating) => return Ok(None),
        Err(e) => return Err(e),
    };
    let phi = PlaneMap::from_series(&v)?;
    if !decompose(&phi)?.is_birational() {
        return Ok(None);
    }
    let analysis = analyze_singularities(&phi)?;
    if analysis.report.max_upper_bound > 2 {
        return Ok(None);
    }
    let linear = plane_criterion(&phi)?;
    let splitting = SplittingReport::new(splitting_type(&v)?);
    if linear.status != LinStatus::Stable || splitting.verdicts.slope != SlopeVerdict::Unstable {
        return Ok(None);
    }
    Ok(Some((v, splitting, analysis.report, analysis.certificate, linear)))
}

/// Samples integer nets of odd degree `d ≥ 5` until one is base-point-free,
/// birational with singular points of multiplicity at most two, linearly
/// stable and with unstable dual span bundle.
pub fn section8_counterexample(d: usize, seed: u64) -> Result<CounterexampleReport> {
    if d < 5 || d % 2 == 0 {
        return Err(Error::Precondition(format!("degree must be odd and at least 5, got {d}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 1..=RETRY_BUDGET {
        let forms = random_net(d, &mut rng);
        if let Some((series, splitting, multiplicity, node_certificate, linear)) = try_candidate(d, forms)? {
            return Ok(CounterexampleReport {
                seed,
                attempts: attempt,
                slope: splitting.verdicts.slope,
                series,
                splitting,
                multiplicity,
                node_certificate,
                linear,
            });
        }
    }
    Err(Error::RetryBudgetExhausted {
        budget: RETRY_BUDGET,
        last: "no linearly stable net with only double points found".into(),
    })
}

/// Recomputes both verdicts from the stored series.
pub fn replay_counterexample(rep: &CounterexampleReport) -> Result<(LinStatus, SlopeVerdict)> {
    let phi = PlaneMap::from_series(&rep.series)?;
    let linear = plane_criterion(&phi)?.status;
    let slope = split_slope_verdict(&splitting_type(&rep.series)?);
    Ok((linear, slope))
}

#[derive(Clone, Debug, Serialize)]
pub struct Slope3Report {
    pub k: i64,
    pub curve: CurveInvariants,
    pub series: SeriesInvariants,
    pub engine: EngineReport,
}

impl Slope3Report {
    pub fn slope(&self) -> &Rational {
        &self.engine.slope
    }
}

/// Invariants of `ω_C(−D)` for a gonal divisor `D` on a curve of genus
/// `2k` with gonality `k + 1`, run through the rule engine.
pub fn slope3_family(k: i64) -> Result<Slope3Report> {
    if k < 2 {
        return Err(Error::Precondition(format!("k must be at least 2, got {k}")));
    }
    let curve = CurveInvariants {
        g: 2 * k,
        gamma: k + 1,
        cliff: k - 1,
        hyperelliptic: false,
    };
    let series = SeriesInvariants {
        d: 3 * k - 3,
        h0: k,
        h1: 2,
        dim_v: k,
        flags: SeriesFlags {
            complete: true,
            globally_generated: true,
            computes_clifford: true,
            ..SeriesFlags::default()
        },
    };
    let engine = apply_rules(&curve, &series)?;
    if engine.slope != rational(-3, 1) || !engine.fired("R5") || engine.status(Notion::Slope) != Status::Stable {
        return Err(Error::Internal(format!("family member k = {k} does not reproduce a stable bundle of slope −3")));
    }
    Ok(Slope3Report {
        k,
        curve,
        series,
        engine,
    })
}
