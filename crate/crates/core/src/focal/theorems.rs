use crate::exactalg::rat::Sampler;
use crate::exactalg::{Field, LinSubspace, MPoly, PolyMatrix, QuadNum, Rat, Vars};
use crate::families::{FamilySpec, ParamPoint};
use crate::{Error, Result};

use super::branch::{branch_tangent, global_focal_form, in_span, line_branches, FocusBranch};
use super::charmat::characteristic_matrix;
use super::divisor::{factor_binary_form, focal_divisor, reduced_matrix, FocalDivisor};
use super::envelope::tangent_envelope;

/// Focal points of a fiber. Line fibers give every root of the divisor;
/// higher fibers give the points where a random line of the fiber meets
/// the focal hypersurface, when they are rational or quadratic.
pub fn focal_points(div: &FocalDivisor, base: &ParamPoint, sampler: &mut Sampler) -> Vec<FocusBranch> {
    if div.whole_fiber_focal || div.degree == 0 {
        return Vec::new();
    }
    let k1 = div.form.nvars();
    if k1 == 2 {
        return line_branches(div, base).0;
    }
    let a = sampler.rats(k1);
    let b = sampler.rats(k1);
    let mv = Vars::new(&["m0", "m1"]);
    let m0 = MPoly::var(&mv, 0);
    let m1 = MPoly::var(&mv, 1);
    let images: Vec<MPoly> = a
        .iter()
        .zip(&b)
        .map(|(ai, bi)| &m0.scale(ai) + &m1.scale(bi))
        .collect();
    let restricted = div.form.compose(&images, &mv);
    if restricted.is_zero() {
        return Vec::new();
    }
    let (roots, residual) = factor_binary_form(&restricted);
    let on_line = FocalDivisor {
        degree: restricted.total_degree() as usize,
        form: restricted,
        roots,
        residual,
        whole_fiber_focal: false,
        theorem_b: false,
        extrapolated: false,
    };
    line_branches(&on_line, base)
        .0
        .into_iter()
        .map(|br| {
            let x: Vec<QuadNum> = (0..k1)
                .map(|i| {
                    QuadNum::from_rat(&a[i])
                        .mul(&br.point[0])
                        .add(&QuadNum::from_rat(&b[i]).mul(&br.point[1]))
                })
                .collect();
            FocusBranch {
                base: base.clone(),
                point: x,
                multiplicity: br.multiplicity,
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangencyTrial {
    pub base: ParamPoint,
    /// Focal points on a codimension-one swept component that were checked.
    pub checked: usize,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangencyReport {
    pub trials: Vec<TangencyTrial>,
}

impl TangencyReport {
    pub fn all_pass(&self) -> bool {
        !self.trials.is_empty() && self.trials.iter().all(|t| t.passed)
    }
}

/// Checks that every member is contained in the tangent space of the swept
/// focal hypersurface at each of its focal points.
pub fn verify_focal_tangency(spec: &FamilySpec, trials: usize, sampler: &mut Sampler) -> Result<TangencyReport> {
    let gf = global_focal_form(spec)?;
    let target = spec.n() + spec.k() - 1;
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < trials && attempts < 5 * trials.max(1) {
        attempts += 1;
        let t = spec.random_base(sampler)?;
        let cm = characteristic_matrix(spec, &t)?;
        let div = focal_divisor(&cm);
        if div.whole_fiber_focal {
            continue;
        }
        let fiber: Vec<Vec<QuadNum>> = cm
            .fiber
            .basis()
            .iter()
            .map(|v| v.iter().map(QuadNum::from_rat).collect())
            .collect();
        let mut checked = 0;
        let mut passed = true;
        let mut codim_one_seen = false;
        for b in focal_points(&div, &t, sampler) {
            let Ok(bt) = branch_tangent(&gf, &b) else {
                continue;
            };
            if bt.swept_dim != target {
                continue;
            }
            codim_one_seen = true;
            checked += 1;
            if !fiber.iter().all(|v| in_span(&bt.tangent, v)) {
                passed = false;
            }
        }
        if codim_one_seen {
            out.push(TangencyTrial { base: t, checked, passed });
        }
    }
    if out.is_empty() {
        return Err(Error::inapplicable("no focal component of codimension one in the union"));
    }
    Ok(TangencyReport { trials: out })
}

/// Characteristic matrix written in a basis of Π̂/Λ̂, where Π̂ is the fixed
/// tangent space along the member; `None` when that space is larger than
/// `n + k`.
pub fn theorem_b_matrix(spec: &FamilySpec, t: &ParamPoint, sampler: &mut Sampler) -> Result<Option<PolyMatrix>> {
    let env = tangent_envelope(spec, t, spec.n() + 2, sampler)?;
    if env.projective_dim() != (spec.n() + spec.k()) as isize {
        return Ok(None);
    }
    let cm = characteristic_matrix(spec, t)?;
    let reduced: Vec<Vec<Rat>> = env.subspace.basis().iter().map(|v| cm.fiber.reduce(v)).collect();
    let w = LinSubspace::span(cm.codim(), &reduced);
    Ok(Some(reduced_matrix(&cm, &w)?))
}
