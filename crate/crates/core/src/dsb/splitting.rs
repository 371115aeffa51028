use std::fmt;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::series::LinearSeries;
use crate::error::{Error, Result};
use crate::scalar::{serde_rational, Field};

/// Kernel dimensions `h⁰(M(m))` for `m = 0..=d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedProfile(pub Vec<usize>);

impl GradedProfile {
    /// The profile a split bundle `⊕ O(−b_i)` would have up to `m = d`.
    pub fn of_twists(twists: &[usize], d: usize) -> Self {
        GradedProfile(
            (0..=d)
                .map(|m| twists.iter().map(|&b| (m + 1).saturating_sub(b)).sum())
                .collect(),
        )
    }

    pub fn get(&self, m: isize) -> usize {
        if m < 0 {
            0
        } else {
            self.0[m as usize]
        }
    }
}

/// Splitting type `M ≅ ⊕ O(−b_i)`, twists sorted non-decreasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct SplittingType {
    twists: Vec<usize>,
}

impl SplittingType {
    pub fn new(mut twists: Vec<usize>) -> Result<Self> {
        if twists.is_empty() || twists.contains(&0) {
            return Err(Error::InvalidSeries("twists must be positive and nonempty".into()));
        }
        twists.sort_unstable();
        Ok(SplittingType { twists })
    }

    pub fn twists(&self) -> &[usize] {
        &self.twists
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    pub fn degree(&self) -> usize {
        self.twists.iter().sum()
    }

    pub fn is_balanced(&self) -> bool {
        self.twists.first() == self.twists.last()
    }
}

impl TryFrom<Vec<usize>> for SplittingType {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        SplittingType::new(v)
    }
}

impl From<SplittingType> for Vec<usize> {
    fn from(s: SplittingType) -> Self {
        s.twists
    }
}

impl fmt::Display for SplittingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.twists.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Kernel dimension of `V ⊗ H⁰(O(m)) → H⁰(O(d+m))` for every `m = 0..=d`.
pub fn graded_kernel_profile<F: Field>(v: &LinearSeries<F>) -> GradedProfile {
    GradedProfile(
        (0..=v.d())
            .map(|m| {
                let a = v.multiplication_matrix(m);
                a.cols() - a.rank()
            })
            .collect(),
    )
}

/// Reads the twists off the second differences of the profile and checks
/// that they regenerate it.
pub fn splitting_from_profile(profile: &GradedProfile, d: usize, r: usize) -> Result<SplittingType> {
    let mut twists = Vec::new();
    if profile.0.len() != d + 1 || profile.0[0] != 0 {
        return Err(Error::ProfileNotRealizable);
    }
    for k in 1..=d as isize {
        let second = profile.get(k) as isize - 2 * profile.get(k - 1) as isize + profile.get(k - 2) as isize;
        if second < 0 {
            return Err(Error::ProfileNotRealizable);
        }
        twists.extend(std::iter::repeat(k as usize).take(second as usize));
    }
    if twists.len() != r || twists.iter().sum::<usize>() != d || GradedProfile::of_twists(&twists, d) != *profile {
        return Err(Error::ProfileNotRealizable);
    }
    SplittingType::new(twists)
}

pub fn splitting_type<F: Field>(v: &LinearSeries<F>) -> Result<SplittingType> {
    splitting_from_profile(&graded_kernel_profile(v), v.d(), v.r())
}

/// `μ = −(Σ b_i) / r`
pub fn slope(st: &SplittingType) -> BigRational {
    BigRational::new((-(st.degree() as i64)).into(), (st.rank() as i64).into())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SlopeVerdict {
    Stable,
    StrictlySemistable,
    Unstable,
}

impl SlopeVerdict {
    pub fn is_semistable(self) -> bool {
        self != SlopeVerdict::Unstable
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CohomologicalVerdict {
    CohomologicallyStable,
    CohomologicallySemistableOnly,
    NotCohomologicallySemistable,
}

impl CohomologicalVerdict {
    pub fn is_semistable(self) -> bool {
        self != CohomologicalVerdict::NotCohomologicallySemistable
    }
}

pub fn split_slope_verdict(st: &SplittingType) -> SlopeVerdict {
    if st.rank() == 1 {
        SlopeVerdict::Stable
    } else if st.is_balanced() {
        SlopeVerdict::StrictlySemistable
    } else {
        SlopeVerdict::Unstable
    }
}

/// For `∧ᵗE = ⊕ O(−Σ_S b_i)` the worst `t`-subset is the one of the `t`
/// smallest twists, sum `s_t`. Some integer `a ≥ tμ` (resp. `a > tμ`) with
/// `h⁰(O(−s_t − a)) ≠ 0` exists iff `s_t ≤ t·d/r` (resp. `s_t < t·d/r`).
pub fn cohomological_verdict(st: &SplittingType) -> CohomologicalVerdict {
    let r = st.rank();
    let d = st.degree();
    let mut stable = true;
    let mut semistable = true;
    let mut s_t = 0;
    for t in 1..r {
        s_t += st.twists()[t - 1];
        // Compare s_t with t·d/r by cross-multiplication.
        let lhs = s_t * r;
        let rhs = t * d;
        if lhs <= rhs {
            stable = false;
        }
        if lhs < rhs {
            semistable = false;
        }
    }
    match (stable, semistable) {
        (true, _) => CohomologicalVerdict::CohomologicallyStable,
        (false, true) => CohomologicalVerdict::CohomologicallySemistableOnly,
        (false, false) => CohomologicalVerdict::NotCohomologicallySemistable,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitVerdicts {
    pub slope: SlopeVerdict,
    pub cohomological: CohomologicalVerdict,
}

/// Splitting type with its slope and both verdicts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingReport {
    pub twists: SplittingType,
    #[serde(with = "serde_rational")]
    pub slope: BigRational,
    pub verdicts: SplitVerdicts,
}

impl SplittingReport {
    pub fn new(st: SplittingType) -> Self {
        SplittingReport {
            slope: slope(&st),
            verdicts: SplitVerdicts {
                slope: split_slope_verdict(&st),
                cohomological: cohomological_verdict(&st),
            },
            twists: st,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;
    use crate::{Form, LinearSeriesP1};

    fn st(v: &[usize]) -> SplittingType {
        SplittingType::new(v.to_vec()).unwrap()
    }

    fn monomial_quintic() -> LinearSeriesP1 {
        LinearSeriesP1::new(
            5,
            vec![
                Form::from_i64s(&[1, 0, 0, 0, 0, 0]),
                Form::from_i64s(&[0, 0, 0, 1, 0, 0]),
                Form::from_i64s(&[0, 0, 0, 0, 0, 1]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn conic_profile_entry() {
        let v = LinearSeriesP1::complete(2).unwrap();
        let p = graded_kernel_profile(&v);
        // 4x6 multiplication matrix of rank 4.
        assert_eq!(p.0[1], 2);
        assert_eq!(splitting_type(&v).unwrap(), st(&[1, 1]));
    }

    #[test]
    fn pencil_of_powers() {
        for d in 1..=6 {
            let v = LinearSeriesP1::new(
                d,
                vec![Form::monomial(d, 0, crate::scalar::int(1)), Form::monomial(d, d, crate::scalar::int(1))],
            )
            .unwrap();
            let p = graded_kernel_profile(&v);
            for m in 0..=d {
                assert_eq!(p.0[m], (m + 1).saturating_sub(d));
            }
            assert_eq!(splitting_type(&v).unwrap(), st(&[d]));
        }
    }

    #[test]
    fn monomial_quintic_splitting() {
        let v = monomial_quintic();
        // Nine products of degree 7 span all eight monomials.
        assert_eq!(graded_kernel_profile(&v).0[2], 1);
        assert_eq!(splitting_type(&v).unwrap(), st(&[2, 3]));
    }

    #[test]
    fn complete_series_balanced() {
        for d in 1..=8 {
            let v = LinearSeriesP1::complete(d).unwrap();
            assert_eq!(splitting_type(&v).unwrap(), st(&vec![1; d]));
        }
    }

    #[test]
    fn slopes_and_verdicts() {
        assert_eq!(slope(&st(&[1, 1])), rational(-1, 1));
        assert_eq!(slope(&st(&[2, 3])), rational(-5, 2));
        assert_eq!(slope(&st(&[7])), rational(-7, 1));
        assert_eq!(split_slope_verdict(&st(&[2, 2])), SlopeVerdict::StrictlySemistable);
        assert_eq!(split_slope_verdict(&st(&[2, 3])), SlopeVerdict::Unstable);
        assert_eq!(split_slope_verdict(&st(&[7])), SlopeVerdict::Stable);
        assert_eq!(
            cohomological_verdict(&st(&[1, 1])),
            CohomologicalVerdict::CohomologicallySemistableOnly
        );
        assert_eq!(
            cohomological_verdict(&st(&[2, 3])),
            CohomologicalVerdict::NotCohomologicallySemistable
        );
        assert_eq!(cohomological_verdict(&st(&[5])), CohomologicalVerdict::CohomologicallyStable);
    }

    #[test]
    fn report_json() {
        let r = SplittingReport::new(st(&[3, 2]));
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"twists":[2,3],"slope":"-5/2","verdicts":{"slope":"unstable","cohomological":"not_cohomologically_semistable"}}"#
        );
    }

    #[test]
    fn float_instance_agrees_on_small_cases() {
        let v = crate::dsb::LinearSeries::<f64>::complete(4).unwrap();
        assert_eq!(splitting_type(&v).unwrap(), st(&[1, 1, 1, 1]));
    }
}
