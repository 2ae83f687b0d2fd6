//! Named verification suites run by `focal-kit verify`.

use std::fmt;

use clap::ValueEnum;
use serde::Serialize;

use crate::classify::{check_focal_surface_theorem, classify, ClassLabel};
use crate::exactalg::rat::{retry_generic, Sampler};
use crate::exactalg::fmt_rat;
use crate::families::{FamilySpec, FiberPoint, ParamPoint};
use crate::focal::{
    characteristic_matrix, fixed_tangent_space, focal_divisor, multiplicity_witness, rank_one_homs,
    tangent_envelope, theorem_b_matrix, verify_focal_tangency,
};
use crate::secondform::{conjugate_pairs, phi_test, second_form, ConjugatePairs, SurfacePatch};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, ValueEnum, Serialize)]
pub enum Suite {
    #[value(name = "theoremC")]
    #[serde(rename = "theoremC")]
    TheoremC,
    #[value(name = "theoremA")]
    #[serde(rename = "theoremA")]
    TheoremA,
    #[value(name = "theoremB")]
    #[serde(rename = "theoremB")]
    TheoremB,
    #[value(name = "bijection")]
    #[serde(rename = "bijection")]
    Bijection,
    #[value(name = "multiplicity")]
    #[serde(rename = "multiplicity")]
    Multiplicity,
    #[value(name = "phi")]
    #[serde(rename = "phi")]
    Phi,
    #[value(name = "counterexample")]
    #[serde(rename = "counterexample")]
    Counterexample,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::TheoremC,
        Suite::TheoremA,
        Suite::TheoremB,
        Suite::Bijection,
        Suite::Multiplicity,
        Suite::Phi,
        Suite::Counterexample,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Suite::TheoremC => "theoremC",
            Suite::TheoremA => "theoremA",
            Suite::TheoremB => "theoremB",
            Suite::Bijection => "bijection",
            Suite::Multiplicity => "multiplicity",
            Suite::Phi => "phi",
            Suite::Counterexample => "counterexample",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of one check of a suite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub suite: Suite,
    /// What was checked: a base point, a surface patch or the whole family.
    pub subject: String,
    pub passed: bool,
    pub detail: String,
}

/// What a suite runs on.
#[derive(Clone, Debug)]
pub enum Target {
    Family(FamilySpec),
    Patch(SurfacePatch),
}

pub fn base_string(t: &ParamPoint) -> String {
    let parts: Vec<String> = t.values().iter().map(fmt_rat).collect();
    format!("({})", parts.join(", "))
}

fn verdict(suite: Suite, subject: impl Into<String>, passed: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        suite,
        subject: subject.into(),
        passed,
        detail: detail.into(),
    }
}

fn line_family(spec: &FamilySpec, what: &str) -> Result<()> {
    if spec.k() != 1 {
        return Err(Error::inapplicable(format!("{what} is checked on line families")));
    }
    Ok(())
}

/// `deg(focal divisor) + 1 = dim(fixed tangent space) = dim(envelope)`.
pub fn theorem_c(spec: &FamilySpec, bases: &[ParamPoint], sampler: &mut Sampler) -> Result<Vec<Verdict>> {
    line_family(spec, "the focal-locus equivalence")?;
    bases
        .iter()
        .map(|t| {
            let cm = characteristic_matrix(spec, t)?;
            let div = focal_divisor(&cm);
            if div.whole_fiber_focal {
                return Ok(verdict(Suite::TheoremC, base_string(t), false, "the whole member is focal"));
            }
            let fixed = fixed_tangent_space(&cm)?.projective_dim();
            let env = tangent_envelope(spec, t, spec.n() + 2, sampler)?.projective_dim();
            let passed = div.degree as isize + 1 == fixed && fixed == env;
            Ok(verdict(
                Suite::TheoremC,
                base_string(t),
                passed,
                format!("focal degree {}, fixed tangent space P^{fixed}, envelope P^{env}", div.degree),
            ))
        })
        .collect()
}

/// Members are tangent to the swept focal hypersurface at their foci.
pub fn theorem_a(spec: &FamilySpec, trials: usize, sampler: &mut Sampler) -> Result<Vec<Verdict>> {
    let report = verify_focal_tangency(spec, trials, sampler)?;
    Ok(report
        .trials
        .iter()
        .map(|tr| {
            verdict(
                Suite::TheoremA,
                base_string(&tr.base),
                tr.passed,
                format!("{} focal points on a codimension-one component", tr.checked),
            )
        })
        .collect())
}

/// The determinant of the characteristic matrix reduced to the fixed
/// tangent space is the focal divisor, of degree `n`.
pub fn theorem_b(spec: &FamilySpec, bases: &[ParamPoint], sampler: &mut Sampler) -> Result<Vec<Verdict>> {
    let mut out = Vec::new();
    for t in bases {
        let Some(m) = theorem_b_matrix(spec, t, sampler)? else {
            continue;
        };
        let det = m.det()?;
        let div = focal_divisor(&characteristic_matrix(spec, t)?);
        let proportional = !det.is_zero()
            && !div.form.is_zero()
            && det.scale(&(div.form.leading_coeff() / det.leading_coeff())) == div.form;
        let degree = det.total_degree() as usize;
        out.push(verdict(
            Suite::TheoremB,
            base_string(t),
            proportional && degree == spec.n(),
            format!("det = {det}, focal form {}, degree {degree} for n = {}", div.form, spec.n()),
        ));
    }
    if out.is_empty() {
        return Err(Error::inapplicable("the fixed tangent space is larger than n + k at every base"));
    }
    Ok(out)
}

/// Foci and classes of rank-one tangent homomorphisms correspond one to one.
pub fn bijection(spec: &FamilySpec, bases: &[ParamPoint]) -> Result<Vec<Verdict>> {
    line_family(spec, "the foci/rank-one bijection")?;
    bases
        .iter()
        .map(|t| {
            let div = focal_divisor(&characteristic_matrix(spec, t)?);
            let homs = rank_one_homs(spec, t)?;
            let foci = div.roots.len() + div.residual.iter().map(|(f, _)| f.total_degree() as usize).sum::<usize>();
            let mut kernels: Vec<&FiberPoint> = homs.classes.iter().map(|c| &c.kernel).collect();
            let mut roots: Vec<&FiberPoint> = div.roots.iter().map(|(p, _)| p).collect();
            kernels.sort();
            roots.sort();
            let passed = homs.count() == foci && !homs.has_pencil() && kernels == roots;
            Ok(verdict(
                Suite::Bijection,
                base_string(t),
                passed,
                format!("{foci} distinct foci, {} rank-one classes", homs.count()),
            ))
        })
        .collect()
}

/// A multiplicity witness exists exactly at the multiple roots.
pub fn multiplicity(spec: &FamilySpec, bases: &[ParamPoint]) -> Result<Vec<Verdict>> {
    line_family(spec, "the multiplicity criterion")?;
    bases
        .iter()
        .map(|t| {
            let div = focal_divisor(&characteristic_matrix(spec, t)?);
            let mut passed = true;
            let mut parts = Vec::new();
            for (p, m) in &div.roots {
                let has = multiplicity_witness(spec, t, p)?.is_some();
                passed &= has == (*m >= 2);
                parts.push(format!("{p} multiplicity {m} witness {}", if has { "yes" } else { "no" }));
            }
            if parts.is_empty() {
                parts.push("no rational focus".into());
            }
            Ok(verdict(Suite::Multiplicity, base_string(t), passed, parts.join("; ")))
        })
        .collect()
}

/// Second-order invariants of a surface patch, or the focal surface
/// theorem for a family.
pub fn phi(target: &Target, trials: usize, sampler: &mut Sampler) -> Result<Vec<Verdict>> {
    match target {
        Target::Family(spec) => {
            let r = check_focal_surface_theorem(spec, trials, sampler)?;
            Ok(vec![verdict(
                Suite::Phi,
                r.label.as_str(),
                r.passed(),
                format!(
                    "focal surface {} (osculating dims {:?}), tangent {}, conjugate {}",
                    r.kind, r.osc2_dims, r.tangent, r.conjugate
                ),
            )])
        }
        Target::Patch(s) => {
            let report = phi_test(s, trials, sampler)?;
            let mut out = vec![verdict(
                Suite::Phi,
                s.label(),
                report.stable && report.pairs_agree,
                format!(
                    "{} (osculating dims {:?}), unique conjugate pair exactly at phi samples: {}",
                    report.kind, report.osc2_dims, report.pairs_agree
                ),
            )];
            for _ in 0..trials.max(1) {
                let (p, ii) = retry_generic(sampler, |smp| {
                    let p = ParamPoint(smp.rats(2));
                    second_form(s, &p).map(|ii| (p, ii))
                })?;
                let expected = ii.osc2_dim as isize - 3;
                let pairs = match conjugate_pairs(&ii) {
                    ConjugatePairs::None => "no conjugate pair".to_string(),
                    ConjugatePairs::Unique(k) => format!("conjugate pair {k}"),
                    ConjugatePairs::Infinite => "every direction has a conjugate".to_string(),
                };
                out.push(verdict(
                    Suite::Phi,
                    format!("{} at {}", s.label(), base_string(&p)),
                    ii.system_dim() == expected,
                    format!("dim|II| = {}, osculating dim {}, {pairs}", ii.system_dim(), ii.osc2_dim),
                ));
            }
            Ok(out)
        }
    }
}

/// A degree-one focal divisor on a member whose tangent envelope is the
/// member itself, so the focal-locus equivalence fails for planes.
pub fn counterexample(spec: &FamilySpec, bases: &[ParamPoint], trials: usize, sampler: &mut Sampler) -> Result<Vec<Verdict>> {
    if spec.k() < 2 {
        return Err(Error::inapplicable("the counterexample concerns families of planes or larger"));
    }
    let mut out = bases
        .iter()
        .map(|t| {
            let div = focal_divisor(&characteristic_matrix(spec, t)?);
            let env = tangent_envelope(spec, t, spec.n() + 2, sampler)?.projective_dim();
            let exhibited = !div.whole_fiber_focal && div.degree == 1 && env == spec.k() as isize;
            Ok(verdict(
                Suite::Counterexample,
                base_string(t),
                exhibited,
                format!("focal form {} of degree {}, envelope P^{env}", div.factored_string(), div.degree),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let label = classify(spec, trials, sampler)?.label;
    out.push(verdict(
        Suite::Counterexample,
        "classification",
        label == ClassLabel::Nondegenerate,
        format!("classified as {label}"),
    ));
    Ok(out)
}

/// Runs one suite. `bases` feeds the per-base suites; suites that sample
/// on their own use `trials`.
pub fn run_suite(
    suite: Suite,
    target: &Target,
    bases: &[ParamPoint],
    trials: usize,
    sampler: &mut Sampler,
) -> Result<Vec<Verdict>> {
    if suite == Suite::Phi {
        return phi(target, trials, sampler);
    }
    let Target::Family(spec) = target else {
        return Err(Error::input(format!("suite {suite} runs on a family, not a surface patch")));
    };
    match suite {
        Suite::TheoremC => theorem_c(spec, bases, sampler),
        Suite::TheoremA => theorem_a(spec, trials, sampler),
        Suite::TheoremB => theorem_b(spec, bases, sampler),
        Suite::Bijection => bijection(spec, bases),
        Suite::Multiplicity => multiplicity(spec, bases),
        Suite::Counterexample => counterexample(spec, bases, trials, sampler),
        Suite::Phi => unreachable!(),
    }
}
