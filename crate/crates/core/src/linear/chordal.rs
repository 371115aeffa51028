use serde::{Serialize, Serializer};

use super::decomposition::{decompose, Decomposition};
use super::plane::PlaneMap;
use super::singular::{analyze_singularities, SingularAnalysis};
use crate::algebra::BivariatePoly;
use crate::error::Result;
use crate::Rational;

/// Identification data of a plane map: the chordal gcd `G(s, t)` of its
/// divided minors and the singular parameters of its birational part.
#[derive(Clone, Debug, Serialize)]
pub struct ChordalForm {
    /// Monic gcd of the divided minors, in the chart `y = 1`. Constant
    /// exactly when the map is birational onto its image.
    #[serde(serialize_with = "display")]
    pub g: BivariatePoly<Rational>,
    pub birational: bool,
    /// Degree of the map onto its image.
    pub map_degree: usize,
    pub decomposition: Decomposition,
    /// Analysis of the birational factor `η`.
    pub singular: SingularAnalysis,
    /// Unordered parameter pairs identified by `η`, counted with the
    /// `C(m, 2)` weighting, when known.
    pub identified_pairs: Option<usize>,
}

fn display<S: Serializer>(g: &BivariatePoly<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(g)
}

pub fn chordal_form(phi: &PlaneMap) -> Result<ChordalForm> {
    let decomposition = decompose(phi)?;
    let singular = analyze_singularities(&decomposition.eta)?;
    Ok(ChordalForm {
        g: decomposition.chordal_gcd(),
        birational: decomposition.is_birational(),
        map_degree: decomposition.degree,
        identified_pairs: singular.identified_pairs,
        singular,
        decomposition,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::decomposition::divided_minors;
    use crate::Form;

    #[test]
    fn conic_has_constant_gcd() {
        let c = chordal_form(&PlaneMap::from_i64s([&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap()).unwrap();
        assert!(c.birational);
        assert!(c.g.is_constant());
        assert_eq!(c.identified_pairs, Some(0));
    }

    #[test]
    fn nodal_cubic_one_pair() {
        let c = chordal_form(&PlaneMap::from_i64s([&[0, 1, 0, -1], &[1, 0, -1, 0], &[0, 0, 0, 1]]).unwrap()).unwrap();
        assert_eq!(c.identified_pairs, Some(1));
        assert_eq!(c.singular.parameter_form, Some(Form::from_i64s(&[1, 0, -1])));
    }

    #[test]
    fn cover_gcd_divides_minors() {
        let conic = PlaneMap::from_i64s([&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap();
        let phi = conic.pullback(&Form::from_i64s(&[1, 1, 0, 2]), &Form::from_i64s(&[0, 1, 0, 1])).unwrap();
        let c = chordal_form(&phi).unwrap();
        assert!(!c.birational);
        assert_eq!(c.map_degree, 3);
        for m in divided_minors(&phi) {
            assert!(c.g.divides(&m));
        }
        let json = serde_json::to_value(&c).unwrap();
        assert_eq!(json["birational"], false);
    }
}
