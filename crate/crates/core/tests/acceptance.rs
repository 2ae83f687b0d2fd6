//! Acceptance suite: twelve criteria, one line each. Run with
//! `cargo test --test acceptance`.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use focal_kit::classify::{classify, ClassLabel};
use focal_kit::cli::{parse_family_file, parse_poly, serialize_family};
use focal_kit::exactalg::rat::Sampler;
use focal_kit::exactalg::{Rat, Vars};
use focal_kit::families::{fixture, fixture_ids, union_dimension, FamilySpec, FiberPoint, ParamPoint};
use focal_kit::focal::{
    characteristic_matrix, fixed_tangent_space, focal_divisor, multiplicity_witness, rank_one_homs,
    tangent_envelope, theorem_b_matrix, verify_focal_tangency,
};
use focal_kit::secondform::{
    conjugate_pairs, patch, phi_test, second_form, tangent_plane_family, ConjugatePairs, PairKind, SurfaceKind,
};
use focal_kit::Error;
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use common::{oracle_focal_support, oracle_is_focal, random_invertible, same_span, u_squarefree};

const SEEDS: [u64; 3] = [0, 1, 2];
const BUDGET: Duration = Duration::from_secs(10);

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn load(id: &str) -> Result<FamilySpec, String> {
    fixture(id).map_err(|e| format!("{id}: {e}"))
}

fn base_points(spec: &FamilySpec) -> Result<Vec<ParamPoint>, String> {
    SEEDS
        .iter()
        .map(|&s| spec.random_base(&mut Sampler::new(s)).map_err(|e| e.to_string()))
        .collect()
}

fn err(e: Error) -> String {
    e.to_string()
}

fn focal_locus_equivalence() -> Outcome {
    let ids = ["F1", "F2", "F3", "F4", "F6", "F10", "F11"];
    for id in ids {
        let spec = load(id)?;
        for (i, t) in base_points(&spec)?.iter().enumerate() {
            let cm = characteristic_matrix(&spec, t).map_err(err)?;
            let deg = focal_divisor(&cm).degree as isize;
            let fixed = fixed_tangent_space(&cm).map_err(err)?.projective_dim();
            let env = tangent_envelope(&spec, t, 5, &mut Sampler::new(SEEDS[i])).map_err(err)?.projective_dim();
            ensure(deg + 1 == fixed && fixed == env, || {
                format!("{id}: degree {deg}, fixed P^{fixed}, envelope P^{env}")
            })?;
        }
    }
    Ok(format!("{} families x 3 members", ids.len()))
}

fn kernel_coincidence() -> Outcome {
    let mut checked = 0;
    let mut s = Sampler::new(0);
    for id in fixture_ids() {
        let spec = load(id)?;
        if spec.k() != 1 {
            continue;
        }
        for t in base_points(&spec)? {
            let div = focal_divisor(&characteristic_matrix(&spec, &t).map_err(err)?);
            let (support, at_infinity) = oracle_focal_support(&spec, &t);
            let d = div.form.total_degree();
            let dehom: Vec<Rat> = (0..=d).map(|i| div.form.coeff(&[d - i, i])).collect();
            ensure(u_squarefree(&dehom) == support, || format!("{id}: divisor support differs from rank drops"))?;
            ensure(div.vanishes_at(&[Rat::from_integer(0.into()), Rat::from_integer(1.into())]) == at_infinity, || {
                format!("{id}: disagreement at (0:1)")
            })?;
            for (root, _) in &div.roots {
                ensure(oracle_is_focal(&spec, &t, root.coords()), || format!("{id}: root {root} has full rank"))?;
            }
            for _ in 0..5 {
                let x = s.rats(2);
                ensure(oracle_is_focal(&spec, &t, &x) == div.vanishes_at(&x), || format!("{id}: sample disagrees"))?;
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} line members, 5 fiber samples each"))
}

fn degenerate_gauss_envelopes() -> Outcome {
    let cases = [("F4", true), ("F6", true), ("F7", true), ("F8", true), ("F3", false), ("F10", false), ("F11", false)];
    for (id, degenerate) in cases {
        let spec = load(id)?;
        for (i, t) in base_points(&spec)?.iter().enumerate() {
            let env = tangent_envelope(&spec, t, 5, &mut Sampler::new(SEEDS[i])).map_err(err)?.projective_dim();
            ensure((env == 3) == degenerate, || format!("{id}: envelope P^{env}"))?;
        }
    }
    Ok("F4 F6 F7 F8 fixed P^3; F3 F10 F11 not".into())
}

fn reduced_determinant() -> Outcome {
    for id in ["F5", "F4"] {
        let spec = load(id)?;
        for (i, t) in base_points(&spec)?.iter().enumerate() {
            let m = theorem_b_matrix(&spec, t, &mut Sampler::new(SEEDS[i]))
                .map_err(err)?
                .ok_or_else(|| format!("{id}: no reduced matrix"))?;
            let det = m.det().map_err(err)?;
            let div = focal_divisor(&characteristic_matrix(&spec, t).map_err(err)?);
            ensure(!det.is_zero() && det.monic() == div.form.monic(), || {
                format!("{id}: det {det} vs focal form {}", div.form)
            })?;
            ensure(det.total_degree() as usize == spec.n(), || format!("{id}: degree {}", det.total_degree()))?;
        }
    }
    Ok("F5 and F4 at 3 members".into())
}

fn focal_tangency() -> Outcome {
    for id in ["F10", "F5"] {
        let spec = load(id)?;
        let r = verify_focal_tangency(&spec, 3, &mut Sampler::new(0)).map_err(err)?;
        ensure(r.trials.len() == 3 && r.all_pass(), || format!("{id}: {:?}", r.trials))?;
    }
    Ok("F10 and F5 at 3 members".into())
}

fn foci_hom_bijection() -> Outcome {
    for id in ["F4", "F6"] {
        let spec = load(id)?;
        for t in base_points(&spec)? {
            let div = focal_divisor(&characteristic_matrix(&spec, &t).map_err(err)?);
            let homs = rank_one_homs(&spec, &t).map_err(err)?;
            let mut kernels: Vec<&FiberPoint> = homs.classes.iter().map(|c| &c.kernel).collect();
            let mut roots: Vec<&FiberPoint> = div.roots.iter().map(|(p, _)| p).collect();
            kernels.sort();
            roots.sort();
            ensure(roots.len() == 2 && homs.count() == 2 && !homs.has_pencil() && kernels == roots, || {
                format!("{id}: {} foci, {} classes", roots.len(), homs.count())
            })?;
        }
    }
    Ok("2 foci = 2 classes on F4 and F6".into())
}

fn multiplicity_witnesses() -> Outcome {
    let mut doubles = 0;
    for id in ["F7", "F8", "F4"] {
        let spec = load(id)?;
        for t in base_points(&spec)? {
            let div = focal_divisor(&characteristic_matrix(&spec, &t).map_err(err)?);
            ensure(!div.roots.is_empty(), || format!("{id}: no rational focus"))?;
            for (p, m) in &div.roots {
                let has = multiplicity_witness(&spec, &t, p).map_err(err)?.is_some();
                ensure(has == (*m >= 2), || format!("{id}: focus {p} multiplicity {m}, witness {has}"))?;
                doubles += usize::from(*m >= 2);
            }
            if id == "F4" {
                ensure(div.roots.iter().all(|(_, m)| *m == 1), || "F4 has a multiple focus".into())?;
            }
        }
    }
    Ok(format!("{doubles} double foci witnessed, none on F4"))
}

fn classification_table() -> Outcome {
    let table = [
        ("F2", ClassLabel::C1Cones),
        ("F4", ClassLabel::C2fSecant),
        ("F6", ClassLabel::C2eJoin),
        ("F7", ClassLabel::C2gBand),
        ("F8", ClassLabel::C2hConeOverSurface),
        ("F10", ClassLabel::C1TangentLinesOfSurface),
        ("F11", ClassLabel::C1Cones),
        ("F5", ClassLabel::PlanesOsculating),
    ];
    let mut change = Sampler::new(99);
    for (id, want) in table {
        let spec = load(id)?;
        let g = random_invertible(spec.vdim(), &mut change);
        let moved = spec.transformed(&g).map_err(err)?;
        for seed in SEEDS {
            for (what, family) in [("", &spec), (" after a coordinate change", &moved)] {
                let got = classify(family, 3, &mut Sampler::new(seed)).map_err(err)?.label;
                ensure(got == want, || format!("{id}{what} at seed {seed}: {got}, expected {want}"))?;
            }
        }
    }
    Ok(format!("{} families, 3 seeds, original and moved", table.len()))
}

fn phi_surfaces() -> Outcome {
    for (id, kind) in [
        ("scroll", SurfaceKind::Phi),
        ("veronese", SurfaceKind::General),
        ("developable", SurfaceKind::Developable),
    ] {
        let s = patch(id).map_err(err)?;
        let r = phi_test(&s, 5, &mut Sampler::new(0)).map_err(err)?;
        ensure(r.kind == kind && r.stable && r.pairs_agree, || format!("{id}: {r:?}"))?;
        let mut smp = Sampler::new(1);
        let mut samples = 0;
        while samples < 5 {
            let Ok(ii) = second_form(&s, &ParamPoint(smp.rats(2))) else { continue };
            ensure(ii.system_dim() == ii.osc2_dim as isize - 3, || {
                format!("{id}: dim|II| {} with osculating dim {}", ii.system_dim(), ii.osc2_dim)
            })?;
            let pairs = conjugate_pairs(&ii);
            let ok = match kind {
                SurfaceKind::Phi => matches!(pairs, ConjugatePairs::Unique(PairKind::Double(_))),
                SurfaceKind::General => pairs == ConjugatePairs::None,
                SurfaceKind::Developable => pairs == ConjugatePairs::Infinite,
            };
            ensure(ok, || format!("{id}: conjugate pairs {pairs:?}"))?;
            samples += 1;
        }
    }
    Ok("scroll phi (double pair), Veronese general, developable".into())
}

fn tangent_plane_unions() -> Outcome {
    let mut smp = Sampler::new(0);
    let scroll = tangent_plane_family(&patch("scroll5").map_err(err)?).map_err(err)?;
    let veronese = tangent_plane_family(&patch("veronese").map_err(err)?).map_err(err)?;
    for (name, family, fixed) in [("scroll", &scroll, true), ("Veronese", &veronese, false)] {
        let dim = union_dimension(family, 5, &mut smp).dim;
        ensure(dim == 4, || format!("{name}: union of dimension {dim}"))?;
        for seed in SEEDS {
            let t = family.random_base(&mut Sampler::new(seed)).map_err(err)?;
            let env = tangent_envelope(family, &t, 5, &mut smp).map_err(err)?.projective_dim();
            ensure((env == 4) == fixed, || format!("{name}: envelope P^{env}"))?;
        }
    }
    Ok("scroll planes fix a P^4, Veronese planes do not".into())
}

fn plane_counterexample() -> Outcome {
    let spec = load("F12")?;
    for (i, t) in base_points(&spec)?.iter().enumerate() {
        let div = focal_divisor(&characteristic_matrix(&spec, t).map_err(err)?);
        ensure(!div.whole_fiber_focal && div.degree == 1, || format!("focal degree {}", div.degree))?;
        let env = tangent_envelope(&spec, t, 5, &mut Sampler::new(SEEDS[i])).map_err(err)?;
        ensure(same_span(env.subspace.basis(), &spec.span_at(t)), || {
            format!("envelope P^{} is not the plane", env.projective_dim())
        })?;
    }
    let label = classify(&spec, 3, &mut Sampler::new(0)).map_err(err)?.label;
    ensure(label == ClassLabel::Nondegenerate, || format!("classified as {label}"))?;
    Ok("focal line on each plane, envelope = plane, nondegenerate".into())
}

fn parser_robustness() -> Outcome {
    for id in fixture_ids() {
        let spec = load(id)?;
        let back = parse_family_file(&serialize_family(&spec)).map_err(err)?;
        ensure(back == spec, || format!("{id} does not round-trip"))?;
    }
    let vars = Vars::new(&["t", "s"]);
    let mut runner = TestRunner::new_with_rng(
        Config {
            cases: 10_000,
            failure_persistence: None,
            ..Config::default()
        },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    );
    let alphabet = "[ts0-9x+*^/() \\-\n]{0,30}|\\PC{0,20}";
    let strategy = proptest::string::string_regex(alphabet).map_err(|e| e.to_string())?;
    let mut bad: Option<String> = None;
    let mut cases = 0;
    for _ in 0..10_000 {
        let text = strategy.new_tree(&mut runner).map_err(|e| e.to_string())?.current();
        let result = catch_unwind(AssertUnwindSafe(|| parse_poly(&text, &vars)));
        match result {
            Ok(Ok(_)) | Ok(Err(Error::Syntax { .. })) | Ok(Err(Error::Input(_))) => {}
            Ok(Err(e)) => bad = Some(format!("{text:?}: unexpected error kind {e:?}")),
            Err(_) => bad = Some(format!("{text:?}: panicked")),
        }
        if bad.is_some() {
            break;
        }
        cases += 1;
    }
    match bad {
        Some(b) => Err(b),
        None => Ok(format!("{} fixtures round-trip, {cases} fuzz cases", fixture_ids().len())),
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("focal divisor degree + 1 = fixed tangent space = envelope", focal_locus_equivalence),
        ("focal divisor support = incidence Jacobian rank drops", kernel_coincidence),
        ("degenerate Gauss map iff fixed tangent P^3", degenerate_gauss_envelopes),
        ("reduced determinant is the focal form of degree n", reduced_determinant),
        ("members tangent to the focal hypersurface", focal_tangency),
        ("foci correspond to rank-one tangent homomorphisms", foci_hom_bijection),
        ("multiplicity witnesses exactly at multiple foci", multiplicity_witnesses),
        ("classification table, stable under seeds and coordinates", classification_table),
        ("second fundamental form and Phi-surfaces", phi_surfaces),
        ("tangent planes of a Phi-surface fix a P^4", tangent_plane_unions),
        ("plane family with a focal line but no fixed P^3", plane_counterexample),
        ("family files round-trip and the parser survives fuzzing", parser_robustness),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failures = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(f).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let result = match result {
            Ok(_) if elapsed > BUDGET => Err(format!("took {elapsed:.1?}, over the {BUDGET:?} budget")),
            r => r,
        };
        let (tag, detail) = match &result {
            Ok(d) => ("PASS", d.clone()),
            Err(d) => {
                failures += 1;
                ("FAIL", d.clone())
            }
        };
        println!("[{tag}] {:>2}. {name} ({elapsed:.2?}): {detail}", i + 1);
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
