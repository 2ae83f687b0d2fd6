use serde::Serialize;

use crate::exactalg::rat::{retry_generic, Sampler};
use crate::families::{FamilySpec, ParamPoint};
use crate::focal::branch::{branches_at, line_branches};
use crate::focal::{global_focal_form, tangent_envelope, GlobalFocalForm};
use crate::{Error, Result};

use super::locus::{focal_form_irreducible, same_swept_locus};

/// Data of one focus on a general member.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct FocusFeature {
    pub multiplicity: usize,
    /// `None` when the focal form is singular at the focus.
    pub sweep_rank: Option<usize>,
    pub fundamental: Option<bool>,
    pub rational: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FeatureVector {
    pub n: usize,
    pub k: usize,
    pub divisor_degree: usize,
    /// Distinct foci on a general member, over the algebraic closure.
    pub foci_count: usize,
    pub multiplicities: Vec<usize>,
    pub sweep_ranks: Vec<Option<usize>>,
    pub fundamental_flags: Vec<Option<bool>>,
    /// Foci carried by factors of degree three or more, left untracked.
    pub untracked_foci: usize,
    pub envelope_dim: isize,
    /// Dimension of the fibers of the Gauss map through a member: `k` when
    /// the tangent space is constant along it, else `0`.
    pub gauss_fiber_dim: usize,
    /// For two simple foci sweeping loci of equal dimension: whether the
    /// loci coincide.
    pub same_locus: Option<bool>,
    pub whole_fiber_focal: bool,
    /// Every sampled member produced the same features.
    pub stable: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Sample {
    degree: usize,
    foci: Vec<FocusFeature>,
    untracked: usize,
    envelope_dim: isize,
}

fn sample(spec: &FamilySpec, gf: &GlobalFocalForm, t: &ParamPoint, sampler: &mut Sampler) -> Result<Sample> {
    let (div, branches) = branches_at(spec, gf, t)?;
    let (_, unresolved) = line_branches(&div, t);
    let mut foci: Vec<FocusFeature> = branches
        .iter()
        .map(|(b, tan)| {
            let tan = tan.as_ref().ok();
            FocusFeature {
                multiplicity: b.multiplicity,
                sweep_rank: tan.map(|t| t.sweep_rank),
                fundamental: tan.map(|t| t.fundamental()),
                rational: b.is_rational(),
            }
        })
        .collect();
    foci.sort();
    let env = tangent_envelope(spec, t, spec.n() + 2, sampler)?;
    Ok(Sample {
        degree: div.degree,
        foci,
        untracked: unresolved.iter().map(|f| f.total_degree() as usize).sum(),
        envelope_dim: env.projective_dim(),
    })
}

/// Focal features of a line family at `trials` random members.
pub fn extract_features(spec: &FamilySpec, trials: usize, sampler: &mut Sampler) -> Result<FeatureVector> {
    if spec.k() != 1 {
        return Err(Error::inapplicable("features are extracted for line families"));
    }
    if spec.n() + spec.k() > 3 {
        return Err(Error::inapplicable("features are extracted for unions of dimension at most three"));
    }
    let gf = match global_focal_form(spec) {
        Ok(gf) => gf,
        Err(Error::Inapplicable(_)) => {
            return Ok(whole_fiber_features(spec));
        }
        Err(e) => return Err(e),
    };
    let mut samples = Vec::new();
    let mut bases = Vec::new();
    for _ in 0..trials.max(1) {
        let (t, s) = retry_generic(sampler, |smp| {
            let t = spec.random_base(smp)?;
            let s = sample(spec, &gf, &t, smp)?;
            Ok((t, s))
        })?;
        bases.push(t);
        samples.push(s);
    }
    let first = samples[0].clone();
    let stable = samples.iter().all(|s| *s == first);
    let same_locus = same_locus_at(spec, &gf, &bases[0], &first, sampler);
    Ok(FeatureVector {
        n: spec.n(),
        k: spec.k(),
        divisor_degree: first.degree,
        foci_count: first.foci.len() + first.untracked,
        multiplicities: first.foci.iter().map(|f| f.multiplicity).collect(),
        sweep_ranks: first.foci.iter().map(|f| f.sweep_rank).collect(),
        fundamental_flags: first.foci.iter().map(|f| f.fundamental).collect(),
        untracked_foci: first.untracked,
        envelope_dim: first.envelope_dim,
        gauss_fiber_dim: if first.envelope_dim == (spec.n() + spec.k()) as isize { spec.k() } else { 0 },
        same_locus,
        whole_fiber_focal: false,
        stable,
    })
}

fn whole_fiber_features(spec: &FamilySpec) -> FeatureVector {
    FeatureVector {
        n: spec.n(),
        k: spec.k(),
        divisor_degree: 0,
        foci_count: 0,
        multiplicities: Vec::new(),
        sweep_ranks: Vec::new(),
        fundamental_flags: Vec::new(),
        untracked_foci: 0,
        envelope_dim: -1,
        gauss_fiber_dim: 0,
        same_locus: None,
        whole_fiber_focal: true,
        stable: true,
    }
}

fn same_locus_at(
    spec: &FamilySpec,
    gf: &GlobalFocalForm,
    t: &ParamPoint,
    s: &Sample,
    sampler: &mut Sampler,
) -> Option<bool> {
    if s.foci.len() != 2 || s.untracked > 0 || s.foci.iter().any(|f| f.multiplicity != 1) {
        return None;
    }
    if s.foci[0].sweep_rank != s.foci[1].sweep_rank || s.foci[0].sweep_rank.unwrap_or(0) == 0 {
        return None;
    }
    let cm = crate::focal::characteristic_matrix(spec, t).ok()?;
    let div = crate::focal::focal_divisor(&cm);
    match div.roots.as_slice() {
        [(p, 1), (q, 1)] => same_swept_locus(spec, gf, t, p, q, sampler),
        // a conjugate pair lies on one locus when the global form stays irreducible
        [] => focal_form_irreducible(spec, gf).then_some(true),
        _ => None,
    }
}
