mod common;

use graded_sod::groebner::{buchberger, free_resolution, kernel, submodule_gb, Caps, FreeModule, GradedMatrix, Vector};
use graded_sod::grmodule::GradedModulePresentation;
use graded_sod::library::{polynomial_ring, Example};
use graded_sod::ringcore::{homogeneous_components, make_graded_ring, weight_of, Monomial, Polynomial, WeightVector};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn v(p: &Polynomial) -> Vector {
    Vector::from_poly(0, p)
}

#[test]
fn weights_and_components() {
    let w = WeightVector(vec![1, -1]);
    assert_eq!(weight_of(&Monomial::new(vec![2, 3]), &w).unwrap(), -1);
    assert_eq!(weight_of(&Monomial::one(2), &w).unwrap(), 0);
    let w4 = WeightVector(vec![1, 1, -1, -1]);
    assert_eq!(weight_of(&Monomial::new(vec![-1, -1, 0, 0]), &w4).unwrap(), -2);

    let ring = Example::A1Cobordism.ring();
    let c = homogeneous_components(&ring.parse("x + y").unwrap(), &ring.weights);
    assert_eq!(c.len(), 2);
    assert_eq!(ring.fmt(&c[&1]), "x");
    assert_eq!(ring.fmt(&c[&-1]), "y");
    assert!(homogeneous_components(&Polynomial::zero(2), &ring.weights).is_empty());
    let c = homogeneous_components(&ring.parse("x*y + x^2*y^2").unwrap(), &ring.weights);
    assert_eq!(c.keys().copied().collect::<Vec<_>>(), vec![0]);
}

#[test]
fn ring_construction() {
    let e1 = Example::A1Cobordism.ring();
    assert_eq!(e1.i_plus, vec![e1.var(0)]);
    assert_eq!(e1.i_minus, vec![e1.var(1)]);
    assert!(e1.torus);
    let e3 = Example::AtiyahFlop.ring();
    assert_eq!(e3.i_plus.len(), 2);
    assert_eq!(e3.i_minus, vec![e3.var(2), e3.var(3)]);
    let vars = vec!["x".to_string(), "y".to_string()];
    let bad = Polynomial::parse("x + y", &vars).unwrap();
    assert!(make_graded_ring(vars, vec![1, -1], vec![bad], None, None).is_err());
}

#[test]
fn basis_examples() {
    let caps = Caps::default();
    let r = polynomial_ring(&["x1", "x2"], vec![1, 1]).unwrap();
    let g = Vector::from_entries(&[r.parse("x2").unwrap(), r.parse("-x1").unwrap()]);
    let gb = buchberger(std::slice::from_ref(&g), &caps).unwrap();
    assert_eq!(gb.elems.len(), 1);
    assert_eq!(gb.elems[0], g.monic());
    let x22 = Vector::from_poly(0, &r.parse("x2^2").unwrap());
    let nf = gb.normal_form(&x22);
    assert_eq!(nf, Vector::from_poly(1, &r.parse("x1*x2").unwrap()));

    let e3 = Example::AtiyahFlop.ring();
    let gens = [e3.parse("x1*y1").unwrap(), e3.parse("x1*y2").unwrap()];
    let gb = submodule_gb(&e3, 1, &gens.iter().map(v).collect::<Vec<_>>(), &caps).unwrap();
    assert_eq!(gb.elems.len(), 2);
    for d in 2..=6 {
        for m in common::monomials_of_degree(4, d) {
            let p = Polynomial::monomial(Monomial::new(m), graded_sod::ringcore::rat(1));
            assert_eq!(gb.contains(&v(&p)), common::oracle_member(&gens, &p, 4));
        }
    }

    let q = polynomial_ring(&["x", "y"], vec![1, 1]).unwrap();
    let gens = [q.parse("x^2").unwrap(), q.parse("x*y").unwrap()];
    let gb = submodule_gb(&q, 1, &gens.iter().map(v).collect::<Vec<_>>(), &caps).unwrap();
    assert_eq!(gb.elems.len(), 2);
    assert!(gb.contains(&v(&q.parse("x^2*y").unwrap())));

    let gb = submodule_gb(&q, 1, &[v(&q.parse("x*y").unwrap())], &caps).unwrap();
    assert!(gb.normal_form(&v(&q.parse("x^2*y^2").unwrap())).is_zero());
    let gb = submodule_gb(&q, 1, &[v(&q.parse("y").unwrap())], &caps).unwrap();
    assert_eq!(gb.normal_form(&v(&q.parse("x").unwrap())), v(&q.parse("x").unwrap()));
}

#[test]
fn kernel_examples() {
    let caps = Caps::default();
    let r = Example::ProjLine.ring();
    let m = GradedMatrix::from_entries(
        FreeModule::new(vec![1, 1]),
        FreeModule::new(vec![0]),
        &[vec![r.var(0)], vec![r.var(1)]],
    );
    let k = kernel(&r, &m, &caps).unwrap();
    assert_eq!(k.source.weights, vec![2]);
    let col = k.cols[0].entries(2, 2);
    assert!(col[0].add(&r.var(1)).is_zero() || col[0].sub(&r.var(1)).is_zero());
    assert!(col[1].add(&r.var(0)).is_zero() || col[1].sub(&r.var(0)).is_zero());
    assert!(m.compose(&k).is_zero());

    let id = GradedMatrix::identity(&FreeModule::new(vec![3]), 2);
    assert_eq!(kernel(&r, &id, &caps).unwrap().source.rank(), 0);
    let e1 = Example::A1Cobordism.ring();
    let x = GradedMatrix::from_entries(FreeModule::new(vec![1]), FreeModule::new(vec![0]), &[vec![e1.var(0)]]);
    assert_eq!(kernel(&e1, &x, &caps).unwrap().source.rank(), 0);
}

#[test]
fn resolution_examples() {
    let caps = Caps::default();
    let r = Example::ProjLine.ring();
    let m = GradedModulePresentation::cyclic(&r, 0, &[r.var(0), r.var(1)]).unwrap();
    let res = free_resolution(&r, &m.pres, 12, &caps).unwrap();
    assert!(!res.truncated);
    let c = &res.complex;
    assert_eq!((c.lo, c.hi()), (-2, 0));
    assert_eq!(c.term(-2).weights, vec![2]);
    assert_eq!(c.term(-1).weights, vec![1, 1]);
    assert_eq!(c.term(0).weights, vec![0]);

    let f = GradedModulePresentation::free(vec![5]);
    let res = free_resolution(&r, &f.pres, 12, &caps).unwrap();
    assert_eq!((res.complex.lo, res.complex.hi()), (0, 0));

    let e1 = Example::A1Cobordism.ring();
    let m = GradedModulePresentation::cyclic(&e1, 0, &[e1.parse("x*y").unwrap()]).unwrap();
    let res = free_resolution(&e1, &m.pres, 12, &caps).unwrap();
    assert_eq!((res.complex.lo, res.complex.hi()), (-1, 0));
    assert_eq!(res.complex.term(-1).weights, vec![0]);
}

fn random_ideal(rng: &mut ChaCha8Rng, n: usize) -> Vec<Polynomial> {
    use rand::Rng;
    let k = rng.gen_range(1..=3);
    (0..k)
        .map(|_| {
            let d = rng.gen_range(1..=3);
            let t = rng.gen_range(1..=3);
            common::random_homogeneous(rng, n, d, t)
        })
        .filter(|p| !p.is_zero())
        .collect()
}

#[test]
fn random_ideals_against_macaulay() {
    use rand::Rng;
    let caps = Caps::default();
    let ring = polynomial_ring(&["a", "b", "c"], vec![1, 1, 1]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10 {
        let gens = random_ideal(&mut rng, 3);
        let gb = submodule_gb(&ring, 1, &gens.iter().map(v).collect::<Vec<_>>(), &caps).unwrap();
        for _ in 0..6 {
            let d = rng.gen_range(1..=6);
            let f = common::random_homogeneous(&mut rng, 3, d, 3);
            assert_eq!(gb.contains(&v(&f)), common::oracle_member(&gens, &f, 3));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn normal_form_is_a_reduction(seed in any::<u64>()) {
        let caps = Caps::default();
        let ring = polynomial_ring(&["a", "b", "c"], vec![1, 1, 1]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gens = random_ideal(&mut rng, 3);
        let gb = submodule_gb(&ring, 1, &gens.iter().map(v).collect::<Vec<_>>(), &caps).unwrap();
        let f = common::random_homogeneous(&mut rng, 3, 4, 4);
        let nf = gb.normal_form(&v(&f));
        // f - nf(f) lies in the ideal, and nf is a fixed point
        let diff = v(&f).sub(&nf).entry(0, 3);
        prop_assert!(common::oracle_member(&gens, &diff, 3));
        prop_assert_eq!(gb.normal_form(&nf), nf.clone());
        for g in &gb.elems {
            prop_assert!(common::oracle_member(&gens, &g.entry(0, 3), 3));
        }
    }
}
