//! Feature extraction and the rule tables for threefolds ruled by lines or
//! planes.

mod features;
mod locus;
mod surface;

use std::fmt;

use serde::Serialize;

use crate::exactalg::rat::Sampler;
use crate::families::FamilySpec;
use crate::focal::tangent_envelope;
use crate::Result;

pub use features::{extract_features, FeatureVector, FocusFeature};
pub use locus::{focal_form_irreducible, in_image, same_swept_locus};
pub use surface::{
    check_focal_surface_theorem, classify_plane_family, focal_line_patch, FocalSurfaceReport, PlaneFeatures,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ClassLabel {
    #[serde(rename = "c1-tangent-lines-of-surface")]
    C1TangentLinesOfSurface,
    #[serde(rename = "c1-cones-over-curve-vertices-on-curve")]
    C1Cones,
    #[serde(rename = "c2a-bitangent")]
    C2aBitangent,
    #[serde(rename = "c2b-tangent-two-surfaces")]
    C2bTangentTwoSurfaces,
    #[serde(rename = "c2c-tangent-surface-meets-curve")]
    C2cTangentSurfaceMeetsCurve,
    #[serde(rename = "c2d-asymptotic")]
    C2dAsymptotic,
    #[serde(rename = "c2e-join")]
    C2eJoin,
    #[serde(rename = "c2f-secant")]
    C2fSecant,
    #[serde(rename = "c2g-band")]
    C2gBand,
    #[serde(rename = "c2h-cone-over-surface")]
    C2hConeOverSurface,
    #[serde(rename = "c2-part2-cone-vertex-line")]
    PlanesConeVertexLine,
    #[serde(rename = "c2-part2-cone-over-developable")]
    PlanesConeOverDevelopable,
    #[serde(rename = "c2-part2-osculating-planes")]
    PlanesOsculating,
    #[serde(rename = "nondegenerate")]
    Nondegenerate,
    #[serde(rename = "indeterminate")]
    Indeterminate,
}

impl ClassLabel {
    pub const ALL: [ClassLabel; 15] = [
        ClassLabel::C1TangentLinesOfSurface,
        ClassLabel::C1Cones,
        ClassLabel::C2aBitangent,
        ClassLabel::C2bTangentTwoSurfaces,
        ClassLabel::C2cTangentSurfaceMeetsCurve,
        ClassLabel::C2dAsymptotic,
        ClassLabel::C2eJoin,
        ClassLabel::C2fSecant,
        ClassLabel::C2gBand,
        ClassLabel::C2hConeOverSurface,
        ClassLabel::PlanesConeVertexLine,
        ClassLabel::PlanesConeOverDevelopable,
        ClassLabel::PlanesOsculating,
        ClassLabel::Nondegenerate,
        ClassLabel::Indeterminate,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            ClassLabel::C1TangentLinesOfSurface => "c1-tangent-lines-of-surface",
            ClassLabel::C1Cones => "c1-cones-over-curve-vertices-on-curve",
            ClassLabel::C2aBitangent => "c2a-bitangent",
            ClassLabel::C2bTangentTwoSurfaces => "c2b-tangent-two-surfaces",
            ClassLabel::C2cTangentSurfaceMeetsCurve => "c2c-tangent-surface-meets-curve",
            ClassLabel::C2dAsymptotic => "c2d-asymptotic",
            ClassLabel::C2eJoin => "c2e-join",
            ClassLabel::C2fSecant => "c2f-secant",
            ClassLabel::C2gBand => "c2g-band",
            ClassLabel::C2hConeOverSurface => "c2h-cone-over-surface",
            ClassLabel::PlanesConeVertexLine => "c2-part2-cone-vertex-line",
            ClassLabel::PlanesConeOverDevelopable => "c2-part2-cone-over-developable",
            ClassLabel::PlanesOsculating => "c2-part2-osculating-planes",
            ClassLabel::Nondegenerate => "nondegenerate",
            ClassLabel::Indeterminate => "indeterminate",
        }
    }

    /// Lines with a degenerate Gauss map whose foci include a surface.
    pub fn has_focal_surface(&self) -> bool {
        matches!(
            self,
            ClassLabel::C2aBitangent
                | ClassLabel::C2bTangentTwoSurfaces
                | ClassLabel::C2cTangentSurfaceMeetsCurve
                | ClassLabel::C2dAsymptotic
        )
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Rule table for line families.
///
/// Fixed tangent plane along the lines (`envelope_dim` 2) with one simple
/// focus gives the first table: tangent lines of a surface when the focus
/// sweeps a surface, cones when it is a fundamental point. Fixed tangent
/// P³ gives the second: two simple foci are read off their sweep ranks,
/// a double focus off the rank of its locus.
pub fn classify_line_family(fv: &FeatureVector) -> ClassLabel {
    use ClassLabel::*;
    if !fv.stable || fv.whole_fiber_focal || fv.k != 1 || fv.untracked_foci > 0 {
        return Indeterminate;
    }
    let simple = |i: usize| fv.multiplicities.get(i) == Some(&1);
    match fv.envelope_dim {
        1 => Nondegenerate,
        2 => {
            if fv.foci_count != 1 || !simple(0) {
                return Indeterminate;
            }
            match (fv.sweep_ranks[0], fv.fundamental_flags[0]) {
                (Some(2), _) => C1TangentLinesOfSurface,
                (Some(0 | 1), Some(true)) => C1Cones,
                _ => Indeterminate,
            }
        }
        3 => match (fv.foci_count, fv.multiplicities.as_slice()) {
            (2, [1, 1]) => {
                let (Some(a), Some(b)) = (fv.sweep_ranks[0], fv.sweep_ranks[1]) else {
                    return Indeterminate;
                };
                match ((a.min(b), a.max(b)), fv.same_locus) {
                    ((2, 2), Some(true)) => C2aBitangent,
                    ((2, 2), Some(false)) => C2bTangentTwoSurfaces,
                    ((1, 2), _) => C2cTangentSurfaceMeetsCurve,
                    ((1, 1), Some(true)) => C2fSecant,
                    ((1, 1), Some(false)) => C2eJoin,
                    _ => Indeterminate,
                }
            }
            (1, [2]) => match fv.sweep_ranks[0] {
                Some(2) => C2dAsymptotic,
                Some(1) => C2gBand,
                Some(0) => C2hConeOverSurface,
                _ => Indeterminate,
            },
            _ => Indeterminate,
        },
        _ => Indeterminate,
    }
}

/// Outcome of [`classify`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub label: ClassLabel,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub features: Option<FeatureVector>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub planes: Option<PlaneFeatures>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Classification {
    fn bare(label: ClassLabel, note: impl Into<String>) -> Self {
        Classification {
            label,
            features: None,
            planes: None,
            note: Some(note.into()),
        }
    }
}

/// Dispatches on the shape of the family: line families with a union of
/// dimension at most three, one-parameter plane families, and otherwise a
/// bare Gauss-map check.
pub fn classify(spec: &FamilySpec, trials: usize, sampler: &mut Sampler) -> Result<Classification> {
    match (spec.k(), spec.n()) {
        (1, n) if n <= 2 => {
            let fv = extract_features(spec, trials, sampler)?;
            let label = classify_line_family(&fv);
            let note = (n == 1 && label == ClassLabel::Indeterminate)
                .then(|| "the rule tables cover threefolds; this family sweeps a surface".to_string());
            Ok(Classification {
                label,
                features: Some(fv),
                planes: None,
                note,
            })
        }
        (2, 1) => classify_plane_family(spec, trials, sampler),
        _ => {
            let t = spec.random_base(sampler)?;
            let env = tangent_envelope(spec, &t, spec.n() + 2, sampler)?;
            if env.projective_dim() == spec.k() as isize {
                Ok(Classification::bare(
                    ClassLabel::Nondegenerate,
                    "tangent spaces along a member meet only in the member",
                ))
            } else {
                Ok(Classification::bare(
                    ClassLabel::Indeterminate,
                    "no rule table for this family shape",
                ))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fv(env: isize, mults: &[usize], sweeps: &[usize], fund: &[bool], same: Option<bool>) -> FeatureVector {
        FeatureVector {
            n: 2,
            k: 1,
            divisor_degree: mults.iter().sum(),
            foci_count: mults.len(),
            multiplicities: mults.to_vec(),
            sweep_ranks: sweeps.iter().map(|&s| Some(s)).collect(),
            fundamental_flags: fund.iter().map(|&f| Some(f)).collect(),
            untracked_foci: 0,
            envelope_dim: env,
            gauss_fiber_dim: if env == 3 { 1 } else { 0 },
            same_locus: same,
            whole_fiber_focal: false,
            stable: true,
        }
    }

    #[test]
    fn first_table() {
        use ClassLabel::*;
        assert_eq!(classify_line_family(&fv(2, &[1], &[2], &[false], None)), C1TangentLinesOfSurface);
        assert_eq!(classify_line_family(&fv(2, &[1], &[1], &[true], None)), C1Cones);
        assert_eq!(classify_line_family(&fv(2, &[1], &[0], &[true], None)), C1Cones);
        assert_eq!(classify_line_family(&fv(2, &[1], &[1], &[false], None)), Indeterminate);
        assert_eq!(classify_line_family(&fv(1, &[], &[], &[], None)), Nondegenerate);
    }

    #[test]
    fn second_table() {
        use ClassLabel::*;
        let two = |s: [usize; 2], same| classify_line_family(&fv(3, &[1, 1], &s, &[false, false], same));
        assert_eq!(two([2, 2], Some(true)), C2aBitangent);
        assert_eq!(two([2, 2], Some(false)), C2bTangentTwoSurfaces);
        assert_eq!(two([2, 2], None), Indeterminate);
        assert_eq!(two([1, 2], None), C2cTangentSurfaceMeetsCurve);
        assert_eq!(two([2, 1], None), C2cTangentSurfaceMeetsCurve);
        assert_eq!(two([1, 1], Some(false)), C2eJoin);
        assert_eq!(two([1, 1], Some(true)), C2fSecant);
        assert_eq!(two([0, 1], None), Indeterminate);
        let double = |s: usize| classify_line_family(&fv(3, &[2], &[s], &[true], None));
        assert_eq!(double(2), C2dAsymptotic);
        assert_eq!(double(1), C2gBand);
        assert_eq!(double(0), C2hConeOverSurface);
    }

    #[test]
    fn unstable_vectors_are_indeterminate() {
        let mut v = fv(3, &[2], &[0], &[true], None);
        v.stable = false;
        assert_eq!(classify_line_family(&v), ClassLabel::Indeterminate);
    }

    #[test]
    fn labels_serialize_to_their_names() {
        for l in ClassLabel::ALL {
            assert_eq!(serde_json::to_value(l).unwrap(), serde_json::Value::String(l.as_str().into()));
        }
    }
}
