use graded_sod::groebner::{Caps, FreeModule, GradedMatrix};
use graded_sod::grmodule::{GradedModulePresentation, Window};
use graded_sod::komplex::{
    cone, euler_additive, hom_complex, hom_d, koszul_chain, koszul_chain_tensor, koszul_cochain, koszul_tensor,
    ComplexMap, ComplexOfFree, ModuleComplex,
};
use graded_sod::library::{Example, ALL};
use graded_sod::staircase::Dim;
use proptest::prelude::*;

fn a_single() -> ModuleComplex {
    ComplexOfFree::single(FreeModule::new(vec![0]), 0).to_mc()
}

#[test]
fn cones() {
    let caps = Caps::default();
    let e1 = Example::A1Cobordism.ring();
    let a = a_single();
    let id = ComplexMap { lo: 0, comps: vec![GradedMatrix::identity(&FreeModule::new(vec![0]), 2)] };
    let c = cone(&id, &a, &a);
    c.validate(&e1).unwrap();
    assert!(c.cohomology(&e1, Window::new(-4, 4), &caps).unwrap().is_zero());

    let a1 = ComplexOfFree::single(FreeModule::new(vec![1]), 0).to_mc();
    let fx = ComplexMap {
        lo: 0,
        comps: vec![GradedMatrix::from_entries(FreeModule::new(vec![1]), FreeModule::new(vec![0]), &[vec![e1.var(0)]])],
    };
    fx.validate(&e1, &a1, &a, &caps).unwrap();
    let c = cone(&fx, &a1, &a);
    let t = c.cohomology(&e1, Window::new(-4, 4), &caps).unwrap();
    for i in -4..=4 {
        assert_eq!(t.get(0, i), Dim::Finite(if i <= 0 { 1 } else { 0 }));
        assert_eq!(t.get(-1, i), Dim::Finite(0));
    }

    let zero = ComplexMap { lo: 0, comps: vec![] };
    let m = ModuleComplex::from_module(&GradedModulePresentation::cyclic(&e1, 0, &[e1.var(0)]).unwrap(), 0);
    let c = cone(&zero, &ModuleComplex::zero(), &m);
    let w = Window::new(-3, 3);
    assert_eq!(c.cohomology(&e1, w, &caps).unwrap(), m.cohomology(&e1, w, &caps).unwrap());
}

#[test]
fn koszul_shapes() {
    let caps = Caps::default();
    let e1 = Example::A1Cobordism.ring();
    let k = koszul_cochain(&e1, &[e1.var(0)]).unwrap();
    assert_eq!((k.lo, k.hi()), (0, 1));
    assert_eq!(k.term(1).weights, vec![-1]);

    let e2 = Example::ProjLine.ring();
    let k = koszul_cochain(&e2, &e2.i_plus.clone()).unwrap();
    assert_eq!(k.terms.iter().map(|t| t.rank()).collect::<Vec<_>>(), vec![1, 2, 1]);
    assert_eq!(k.term(2).weights, vec![-2]);
    let t = k.cohomology(&e2, Window::new(-5, 3), &caps).unwrap();
    for i in -5..=3 {
        assert_eq!(t.get(0, i), Dim::Finite(0));
        assert_eq!(t.get(1, i), Dim::Finite(0));
        assert_eq!(t.get(2, i), Dim::Finite(if i == -2 { 1 } else { 0 }));
    }

    let a = GradedModulePresentation::free(vec![0]);
    let c = koszul_chain(&e1, &a, &[e1.var(0)], 1, &caps).unwrap();
    assert_eq!((c.lo, c.hi()), (-1, 0));
    assert_eq!(c.term(-1).weights, vec![1]);
    let c = koszul_chain(&e1, &a, &[e1.var(0)], 2, &caps).unwrap();
    assert_eq!(c.term(-1).weights, vec![2]);
    assert_eq!(c.diffs[0].entry(0, 0, 2), e1.parse("x^2").unwrap());

    let c = koszul_chain(&e2, &a, &e2.i_plus.clone(), 1, &caps).unwrap();
    let t = c.cohomology(&e2, Window::new(-3, 3), &caps).unwrap();
    for i in -3..=3 {
        assert_eq!(t.get(0, i), Dim::Finite(if i == 0 { 1 } else { 0 }));
        assert_eq!(t.get(-1, i), Dim::Finite(0));
        assert_eq!(t.get(-2, i), Dim::Finite(0));
    }

    let xy = ComplexOfFree::new(
        -1,
        vec![FreeModule::new(vec![0]), FreeModule::new(vec![0])],
        vec![GradedMatrix::from_entries(
            FreeModule::new(vec![0]),
            FreeModule::new(vec![0]),
            &[vec![e1.parse("x*y").unwrap()]],
        )],
        &e1,
    )
    .unwrap();
    let t = xy.cohomology(&e1, Window::new(0, 0), &caps).unwrap();
    assert_eq!(t.get(0, 0), Dim::Finite(1));
    assert_eq!(t.get(-1, 0), Dim::Finite(0));
}

#[test]
fn koszul_models_square_to_zero() {
    for ex in ALL {
        let ring = ex.ring();
        let fs = ring.i_plus.clone();
        let x = ModuleComplex::from_module(&GradedModulePresentation::free(vec![0, 1]), 0);
        for t in [1, 2, 3] {
            koszul_tensor(&ring, &fs, t, &x, false).unwrap().validate(&ring).unwrap();
            koszul_tensor(&ring, &fs, t, &x, true).unwrap().validate(&ring).unwrap();
            let (y, inc) = koszul_chain_tensor(&ring, &fs, t, &x).unwrap();
            y.validate(&ring).unwrap();
            inc.validate(&ring, &x, &y, &Caps::default()).unwrap();
        }
    }
}

#[test]
fn hom_in_derived_category() {
    let caps = Caps::default();
    let e2 = Example::ProjLine.ring();
    let p = ComplexOfFree::single(FreeModule::new(vec![0]), 0);
    let x = ComplexOfFree::single(FreeModule::new(vec![-2]), 0).to_mc();
    assert_eq!(hom_d(&e2, &p, &x, &caps).unwrap(), Dim::Finite(3));
    hom_complex(&e2, &p, &x).validate(&e2).unwrap();
    let shifted = ComplexOfFree::single(FreeModule::new(vec![-2]), 1).to_mc();
    assert_eq!(hom_d(&e2, &p, &shifted, &caps).unwrap(), Dim::Finite(0));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn cone_of_power_of_x(a in -2i64..=2, k in 0u32..4) {
        // cone of x^k : A(-a-k) -> A(-a) over the cobordism ring is A/(x^k)(-a)
        let caps = Caps::default();
        let e1 = Example::A1Cobordism.ring();
        let src = FreeModule::new(vec![a + k as i64]);
        let tgt = FreeModule::new(vec![a]);
        let f = GradedMatrix::from_entries(src.clone(), tgt.clone(), &[vec![e1.var(0).pow(k)]]);
        let x = ComplexOfFree::single(src, 0).to_mc();
        let y = ComplexOfFree::single(tgt, 0).to_mc();
        let c = cone(&ComplexMap { lo: 0, comps: vec![f] }, &x, &y);
        c.validate(&e1).unwrap();
        let w = Window::new(-4, 4);
        let tc = c.cohomology(&e1, w, &caps).unwrap();
        prop_assert!(euler_additive(
            &x.cohomology(&e1, w, &caps).unwrap(),
            &y.cohomology(&e1, w, &caps).unwrap(),
            &tc
        ));
        for i in w.weights() {
            let expect = (0..k as i64).filter(|&e| e >= i - a).count() as u64;
            prop_assert_eq!(tc.get(0, i), Dim::Finite(expect));
            prop_assert_eq!(tc.get(-1, i), Dim::Finite(0));
        }
    }
}
