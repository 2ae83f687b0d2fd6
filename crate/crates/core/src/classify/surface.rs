//! Plane families and the focal surfaces of line families.

use serde::Serialize;

use crate::exactalg::matrix::rank;
use crate::exactalg::rat::{retry_generic, Sampler};
use crate::exactalg::{Field, LinSubspace, MPoly, QuadNum, Rat, Vars};
use crate::families::{union_dimension, FamilySpec, ParamPoint};
use crate::focal::branch::{branches_at, focal_surface_jet};
use crate::focal::{characteristic_matrix, focal_divisor, global_focal_form, tangent_envelope};
use crate::secondform::{
    conjugate_direction, coordinate_direction, phi_test, second_form, second_form_from_jet, Conjugate, PhiReport,
    SurfaceKind, SurfacePatch,
};
use crate::{Error, Result};

use super::locus::fiber_coefficients;
use super::{classify, ClassLabel, Classification};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlaneFeatures {
    pub union_dim: usize,
    pub envelope_dim: isize,
    pub divisor_degree: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub focal_line_constant: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub swept_surface: Option<PhiReport>,
    /// Three general focal lines pass through a common point.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub focal_lines_concurrent: Option<bool>,
}

/// Two moving points spanning the focal line of each plane of a
/// one-parameter plane family, read off the global focal form.
fn focal_line_points(spec: &FamilySpec) -> Result<[Vec<MPoly>; 2]> {
    let gf = global_focal_form(spec)?;
    let params = spec.params();
    let coeffs = fiber_coefficients(&gf.reduced, params);
    let zero = MPoly::zero(params);
    let c: Vec<MPoly> = (0..3)
        .map(|a| {
            let mut e = vec![0u32; 3];
            e[a] = 1;
            coeffs.get(&e).cloned().unwrap_or_else(|| zero.clone())
        })
        .collect();
    let linear = coeffs.keys().all(|e| e.iter().sum::<u32>() == 1);
    let Some(j) = c.iter().position(|p| !p.is_zero()).filter(|_| linear) else {
        return Err(Error::inapplicable("the focal locus of a plane is not a line"));
    };
    let pts: Vec<Vec<MPoly>> = (0..3)
        .filter(|&i| i != j)
        .map(|i| {
            // c_j·P_i − c_i·P_j
            spec.span()[i]
                .coords()
                .iter()
                .zip(spec.span()[j].coords())
                .map(|(pi, pj)| &(&c[j] * pi) - &(&c[i] * pj))
                .collect()
        })
        .collect();
    Ok([pts[0].clone(), pts[1].clone()])
}

/// The surface `(t, s) ↦ q1(t) + s·q2(t)` swept by the focal lines.
pub fn focal_line_patch(spec: &FamilySpec) -> Result<SurfacePatch> {
    if spec.k() != 2 || spec.n() != 1 {
        return Err(Error::inapplicable("focal line patches are built for one-parameter plane families"));
    }
    let [q1, q2] = focal_line_points(spec)?;
    let name = spec.params().names()[0].clone();
    let second = if name == "s" { "r" } else { "s" };
    let vars = Vars::new(&[name.as_str(), second]);
    let s = MPoly::var(&vars, 1);
    let coords = q1
        .iter()
        .zip(&q2)
        .map(|(a, b)| &a.embed(&vars, &[0]) + &(&s * &b.embed(&vars, &[0])))
        .collect();
    SurfacePatch::new(coords, "swept focal lines")
}

fn eval_all(ps: &[MPoly], t: &[Rat]) -> Vec<Rat> {
    ps.iter().map(|p| p.eval(t)).collect()
}

fn focal_line_at(q: &[Vec<MPoly>; 2], t: &[Rat]) -> LinSubspace {
    let rows = [eval_all(&q[0], t), eval_all(&q[1], t)];
    LinSubspace::span(rows[0].len(), &rows)
}

/// Rule table for one-parameter plane families with a fixed tangent P³:
/// a constant focal line gives a cone with a line vertex; otherwise the
/// focal lines sweep a developable surface, a cone when they are
/// concurrent and a tangent developable when not.
pub fn classify_plane_family(spec: &FamilySpec, trials: usize, sampler: &mut Sampler) -> Result<Classification> {
    if spec.k() != 2 || spec.n() != 1 {
        return Err(Error::inapplicable("plane rules apply to one-parameter families of planes"));
    }
    let ud = union_dimension(spec, trials.max(3), sampler);
    let t = spec.random_base(sampler)?;
    let env = tangent_envelope(spec, &t, spec.n() + 2, sampler)?;
    let div = focal_divisor(&characteristic_matrix(spec, &t)?);
    let mut feats = PlaneFeatures {
        union_dim: ud.dim,
        envelope_dim: env.projective_dim(),
        divisor_degree: div.degree,
        focal_line_constant: None,
        swept_surface: None,
        focal_lines_concurrent: None,
    };
    let done = |label, feats: PlaneFeatures| {
        Ok(Classification {
            label,
            features: None,
            planes: Some(feats),
            note: None,
        })
    };
    if ud.dim != 3 {
        return Err(Error::inapplicable("the union of the planes is not a threefold"));
    }
    match env.projective_dim() {
        2 => return done(ClassLabel::Nondegenerate, feats),
        3 => {}
        _ => return done(ClassLabel::Indeterminate, feats),
    }
    if div.degree != 1 || div.whole_fiber_focal {
        return Err(Error::inapplicable("the focal divisor of a plane is not a line"));
    }
    let q = focal_line_points(spec)?;
    let dq: [Vec<MPoly>; 2] = [
        q[0].iter().map(|p| p.derivative(0)).collect(),
        q[1].iter().map(|p| p.derivative(0)).collect(),
    ];
    let mut constant = true;
    for _ in 0..3 {
        let t = sampler.rats(1);
        let rows = vec![eval_all(&q[0], &t), eval_all(&q[1], &t), eval_all(&dq[0], &t), eval_all(&dq[1], &t)];
        if rank(&rows) > 2 {
            constant = false;
        }
    }
    feats.focal_line_constant = Some(constant);
    if constant {
        return done(ClassLabel::PlanesConeVertexLine, feats);
    }
    let patch = focal_line_patch(spec)?;
    let report = phi_test(&patch, trials.max(3), sampler)?;
    let developable = report.kind == SurfaceKind::Developable && report.stable;
    feats.swept_surface = Some(report);
    if !developable {
        return done(ClassLabel::Indeterminate, feats);
    }
    let common = (0..3).fold(None::<LinSubspace>, |acc, _| {
        let l = focal_line_at(&q, &sampler.rats(1));
        Some(match acc {
            None => l,
            Some(a) => a.intersect(&l),
        })
    });
    let concurrent = common.is_some_and(|c| c.dim() > 0);
    feats.focal_lines_concurrent = Some(concurrent);
    if concurrent {
        done(ClassLabel::PlanesConeOverDevelopable, feats)
    } else {
        done(ClassLabel::PlanesOsculating, feats)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FocalSurfaceReport {
    pub label: ClassLabel,
    pub kind: SurfaceKind,
    pub osc2_dims: Vec<usize>,
    /// The member is tangent to the focal surface at every sampled focus.
    pub tangent: bool,
    /// The member's direction on the surface has a conjugate direction.
    pub conjugate: bool,
    /// The member's direction is asymptotic at every sample.
    pub asymptotic: bool,
}

impl FocalSurfaceReport {
    pub fn passed(&self) -> bool {
        matches!(self.kind, SurfaceKind::Developable | SurfaceKind::Phi) && self.tangent && self.conjugate
    }
}

/// Checks that a focal surface of a degenerate-Gauss threefold is
/// developable or a Φ-surface, and that the members run along a direction
/// with a conjugate.
pub fn check_focal_surface_theorem(
    spec: &FamilySpec,
    trials: usize,
    sampler: &mut Sampler,
) -> Result<FocalSurfaceReport> {
    let cls = classify(spec, trials, sampler)?;
    match (spec.k(), cls.label) {
        (2, ClassLabel::PlanesOsculating | ClassLabel::PlanesConeOverDevelopable) => {
            plane_focal_surface(spec, cls.label, trials, sampler)
        }
        (1, l) if l.has_focal_surface() => line_focal_surfaces(spec, l, trials, sampler),
        (_, l) => Err(Error::inapplicable(format!("no focal surface for a family classified as {l}"))),
    }
}

fn plane_focal_surface(
    spec: &FamilySpec,
    label: ClassLabel,
    trials: usize,
    sampler: &mut Sampler,
) -> Result<FocalSurfaceReport> {
    let patch = focal_line_patch(spec)?;
    let ruling = coordinate_direction::<Rat>(1);
    let mut dims = Vec::new();
    let (mut tangent, mut conjugate, mut asymptotic) = (true, true, true);
    for _ in 0..trials.max(1) {
        let (p, ii) = retry_generic(sampler, |s| {
            let p = ParamPoint(s.rats(2));
            if !spec.is_independent_at(&ParamPoint(vec![p.values()[0].clone()])) {
                return Err(Error::non_generic("degenerate plane"));
            }
            let ii = second_form(&patch, &p)?;
            Ok((p, ii))
        })?;
        dims.push(ii.osc2_dim);
        let plane = LinSubspace::span(patch.ambient() + 1, &spec.span_at(&ParamPoint(vec![p.values()[0].clone()])));
        tangent &= LinSubspace::span(patch.ambient() + 1, &ii.frame) == plane;
        conjugate &= conjugate_direction(&ii, &ruling) != Conjugate::None;
        asymptotic &= ii.is_asymptotic(&ruling);
    }
    Ok(report(label, dims, tangent, conjugate, asymptotic))
}

fn report(label: ClassLabel, dims: Vec<usize>, tangent: bool, conjugate: bool, asymptotic: bool) -> FocalSurfaceReport {
    let top = dims.iter().copied().max().unwrap_or(0);
    FocalSurfaceReport {
        label,
        kind: SurfaceKind::from_osc2_dim(top),
        osc2_dims: dims,
        tangent,
        conjugate,
        asymptotic,
    }
}

fn line_focal_surfaces(
    spec: &FamilySpec,
    label: ClassLabel,
    trials: usize,
    sampler: &mut Sampler,
) -> Result<FocalSurfaceReport> {
    let gf = global_focal_form(spec)?;
    let mut dims = Vec::new();
    let (mut tangent, mut conjugate, mut asymptotic) = (true, true, true);
    let mut members = 0;
    for _ in 0..5 * trials.max(1) {
        if members >= trials.max(1) && !dims.is_empty() {
            break;
        }
        let t = spec.random_base(sampler)?;
        let Ok((_, branches)) = branches_at(spec, &gf, &t) else {
            continue;
        };
        members += 1;
        let line: Vec<Vec<QuadNum>> = spec
            .span_at(&t)
            .iter()
            .map(|row| row.iter().map(QuadNum::from_rat).collect())
            .collect();
        for (b, tan) in &branches {
            if !matches!(tan, Ok(bt) if bt.sweep_rank == 2) {
                continue;
            }
            let Ok(jet) = focal_surface_jet(&gf, b) else {
                continue;
            };
            let Ok(ii) = second_form_from_jet(&jet) else {
                continue;
            };
            dims.push(ii.osc2_dim);
            let other = line
                .iter()
                .find(|p| rank(&[jet.s.clone(), p.to_vec()]) == 2)
                .expect("a line has two independent spanning points");
            match ii.direction_of(other) {
                Some(w) => {
                    conjugate &= conjugate_direction(&ii, &w) != Conjugate::None;
                    asymptotic &= ii.is_asymptotic(&w);
                }
                None => {
                    tangent = false;
                    asymptotic = false;
                }
            }
        }
    }
    if dims.is_empty() {
        return Err(Error::non_generic("no immersive focal surface point was sampled"));
    }
    Ok(report(label, dims, tangent, conjugate, asymptotic))
}
