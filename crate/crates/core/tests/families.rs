mod common;

use focal_kit::exactalg::rat::Sampler;
use focal_kit::exactalg::{MPoly, Rat};
use focal_kit::families::{
    df_rank, fixture, fixture_ids, incidence, union_dimension, FamilySpec, ParamPoint,
};
use focal_kit::Error;
use proptest::prelude::*;

use common::{incidence_jacobian, oracle_rank, random_invertible, rat};

fn mpoly_in(inc_vars: &focal_kit::exactalg::Vars, terms: &[(&[u32], i64)]) -> MPoly {
    MPoly::from_terms(inc_vars, terms.iter().map(|(e, c)| (e.to_vec(), rat(*c))))
}

#[test]
fn tangent_developable_incidence() {
    let inc = incidence(&fixture("F1").unwrap());
    let v = inc.vars();
    assert_eq!(v.names(), &["t", "x0", "x1"]);
    // exponents over (t, x0, x1)
    let expected = vec![
        mpoly_in(v, &[(&[0, 1, 0], 1)]),
        mpoly_in(v, &[(&[1, 1, 0], 1), (&[0, 0, 1], 1)]),
        mpoly_in(v, &[(&[2, 1, 0], 1), (&[1, 0, 1], 2)]),
        mpoly_in(v, &[(&[3, 1, 0], 1), (&[2, 0, 1], 3)]),
    ];
    assert_eq!(inc.coords(), expected.as_slice());
}

#[test]
fn cone_incidence() {
    let inc = incidence(&fixture("F2").unwrap());
    let v = inc.vars();
    let expected = vec![
        mpoly_in(v, &[(&[0, 0, 1], 1)]),
        mpoly_in(v, &[(&[1, 0, 1], 1)]),
        mpoly_in(v, &[(&[2, 0, 1], 1)]),
        mpoly_in(v, &[(&[0, 1, 0], 1)]),
    ];
    assert_eq!(inc.coords(), expected.as_slice());
}

#[test]
fn secant_incidence() {
    let inc = incidence(&fixture("F4").unwrap());
    let v = inc.vars();
    assert_eq!(v.names(), &["s", "u", "x0", "x1"]);
    for (i, c) in inc.coords().iter().enumerate() {
        let i = i as u32;
        assert_eq!(c, &mpoly_in(v, &[(&[i, 0, 1, 0], 1), (&[0, i, 0, 1], 1)]));
    }
}

#[test]
fn incidence_at_unit_vectors_reproduces_the_spanning_points() {
    let mut s = Sampler::new(3);
    for id in fixture_ids() {
        let spec = fixture(id).unwrap();
        let inc = incidence(&spec);
        let t = spec.random_base(&mut s).unwrap();
        for a in 0..=spec.k() {
            let mut x = vec![rat(0); spec.k() + 1];
            x[a] = rat(1);
            assert_eq!(inc.eval(&t, &x), spec.span()[a].eval(t.values()), "{id} point {a}");
        }
    }
}

#[test]
fn catalog_shapes() {
    let f1 = fixture("F1").unwrap();
    assert_eq!((f1.ambient(), f1.k(), f1.n()), (3, 1, 1));
    let f4 = fixture("F4").unwrap();
    assert_eq!((f4.ambient(), f4.k(), f4.n()), (4, 1, 2));
    let f5 = fixture("F5").unwrap();
    assert_eq!((f5.ambient(), f5.k(), f5.n()), (4, 2, 1));
    let t = ParamPoint(vec![rat(2)]);
    assert_eq!(f1.span_at(&t), vec![vec![rat(1), rat(2), rat(4), rat(8)], vec![rat(0), rat(1), rat(4), rat(12)]]);
    assert!(matches!(fixture("F9"), Err(Error::Input(_))));
    for id in fixture_ids() {
        let spec = fixture(id).unwrap();
        assert!(spec.n() + spec.k() <= spec.ambient(), "{id}");
    }
}

/// Maximal oracle rank of the incidence Jacobian over random points, minus one.
fn oracle_union_dim(spec: &FamilySpec, samples: usize, s: &mut Sampler) -> usize {
    (0..samples)
        .map(|_| {
            let t = ParamPoint(s.rats(spec.n()));
            let x = s.rats(spec.k() + 1);
            oracle_rank(&incidence_jacobian(spec, &t, &x))
        })
        .max()
        .unwrap()
        - 1
}

#[test]
fn union_dimensions() {
    for (id, dim) in [("F4", 3), ("F3", 2), ("F8", 3), ("F1", 2), ("F2", 2), ("F5", 3), ("F12", 4)] {
        let spec = fixture(id).unwrap();
        let mut s = Sampler::new(1);
        let ud = union_dimension(&spec, 5, &mut s);
        assert_eq!(ud.dim, dim, "{id}");
        assert_eq!(oracle_union_dim(&spec, 5, &mut Sampler::new(2)), dim, "{id}");
        assert_eq!(ud.matches_expected, dim == spec.n() + spec.k(), "{id}");
    }
}

#[test]
fn dependent_spanning_points_are_rejected() {
    let spec = fixture("F1").unwrap();
    let p = spec.span()[0].clone();
    let err = FamilySpec::new(3, 1, spec.params().clone(), vec![p.clone(), p], "twice").unwrap_err();
    assert!(matches!(err, Error::Input(_)));
}

#[test]
fn df_rank_matches_the_oracle_on_every_fixture() {
    let mut s = Sampler::new(9);
    for id in fixture_ids() {
        let spec = fixture(id).unwrap();
        for _ in 0..3 {
            let t = spec.random_base(&mut s).unwrap();
            let x = s.rats(spec.k() + 1);
            assert_eq!(df_rank(&spec, &t, &x), oracle_rank(&incidence_jacobian(&spec, &t, &x)), "{id}");
        }
    }
}

fn permutation(size: usize, swap: (usize, usize)) -> Vec<Vec<Rat>> {
    let mut m: Vec<Vec<Rat>> = (0..size).map(|i| (0..size).map(|j| rat((i == j) as i64)).collect()).collect();
    m.swap(swap.0, swap.1);
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn union_dimension_is_invariant(idx in 0usize..16, seed in any::<u64>()) {
        let id = fixture_ids()[idx];
        let spec = fixture(id).unwrap();
        let mut s = Sampler::new(seed);
        let k1 = spec.k() + 1;
        let reordered = spec.recombined(&permutation(k1, (0, k1 - 1))).unwrap();
        let recombined = spec.recombined(&random_invertible(k1, &mut s)).unwrap();
        let moved = spec.transformed(&random_invertible(spec.vdim(), &mut s)).unwrap();
        let base = union_dimension(&spec, 4, &mut Sampler::new(seed)).dim;
        for other in [reordered, recombined, moved] {
            prop_assert_eq!(union_dimension(&other, 4, &mut Sampler::new(seed)).dim, base, "{}", id);
        }
    }

    #[test]
    fn incidence_is_linear_in_the_fiber(idx in 0usize..16, seed in any::<u64>(), c in -5i64..=5) {
        let spec = fixture(fixture_ids()[idx]).unwrap();
        let inc = incidence(&spec);
        let mut s = Sampler::new(seed);
        let t = ParamPoint(s.rats(spec.n()));
        let x = s.rats(spec.k() + 1);
        let y = s.rats(spec.k() + 1);
        let combo: Vec<Rat> = x.iter().zip(&y).map(|(a, b)| a + b * rat(c)).collect();
        let lhs = inc.eval(&t, &combo);
        let rhs: Vec<Rat> = inc.eval(&t, &x).into_iter().zip(inc.eval(&t, &y)).map(|(a, b)| a + b * rat(c)).collect();
        prop_assert_eq!(lhs, rhs);
        for coord in inc.coords() {
            for a in inc.x_indices() {
                prop_assert!(coord.degree_in(a) <= 1);
            }
        }
    }
}
