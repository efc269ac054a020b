use graded_sod::duality::{
    dual_a, dual_window, dual_y_table, duality_condition_check, hom_preservation_spotcheck, support_implication,
    transpose, transpose_table, DualizingData, WindowData,
};
use graded_sod::groebner::Caps;
use graded_sod::grmodule::{truncate_geq, CharacterTable, GradedModulePresentation, Window};
use graded_sod::library::Example;
use graded_sod::localcoh::Engine;
use graded_sod::staircase::Dim;

fn binom(n: i64, k: i64) -> u64 {
    if k < 0 || n < k {
        return 0;
    }
    (0..k).fold(1u64, |acc, j| acc * (n - j) as u64 / (j + 1) as u64)
}

#[test]
fn flop_and_flip_twists() {
    let caps = Caps::default();
    let win = Window::new(-8, 8);
    let e1 = duality_condition_check(&Example::A1Cobordism.ring(), win, (-3, 3), None, Engine::Torus, &caps).unwrap();
    assert_eq!(e1.matched, vec![0]);
    for j in 1..=8 {
        assert_eq!(e1.plus_table.get(1, -j), Dim::Finite(j as u64));
        assert_eq!(e1.minus_dual_table.get(0, -j), Dim::Finite(j as u64));
    }
    let e3 = duality_condition_check(&Example::AtiyahFlop.ring(), win, (-3, 3), None, Engine::Torus, &caps).unwrap();
    assert_eq!(e3.matched, vec![0]);
    for j in 1..=8 {
        assert_eq!(e3.plus_table.get(2, -j), Dim::Finite(binom(j + 1, 3)));
    }
    let e4 = duality_condition_check(&Example::StandardFlip.ring(), win, (-3, 3), None, Engine::Torus, &caps).unwrap();
    assert_eq!(e4.matched.len(), 1);
    assert_eq!(e4.matched[0].abs(), 1);
    for m in 1..=8 {
        assert_eq!(e4.minus_dual_table.get(1, -m), Dim::Finite(binom(m + 1, 2)));
        assert_eq!(e4.plus_table.get(2, -(m + 1)), Dim::Finite(binom(m + 1, 2)));
    }
    let e2 = duality_condition_check(&Example::ProjLine.ring(), win, (-3, 3), None, Engine::Torus, &caps).unwrap();
    assert!(e2.matched.is_empty());
}

#[test]
fn twisting_both_sides_keeps_the_match() {
    // reindexing both tables by the same twist leaves the matched a unchanged
    let caps = Caps::default();
    let r = duality_condition_check(&Example::StandardFlip.ring(), Window::new(-6, 6), (-3, 3), None, Engine::Torus, &caps)
        .unwrap();
    let t = 2;
    let shift = |tab: &CharacterTable, s: i64| {
        let mut out = CharacterTable::new(Window::new(tab.window.lo - s, tab.window.hi - s));
        for &p in tab.rows.keys() {
            for i in tab.window.weights() {
                out.set(p, i - s, tab.get(p, i));
            }
        }
        out
    };
    let plus = shift(&r.plus_table, t);
    let dual = shift(&r.minus_dual_table, t);
    let a = r.matched[0];
    for &q in dual.rows.keys() {
        for i in dual.window.weights() {
            assert_eq!(plus.get(q + 1, a + i), dual.get(q, i));
        }
    }
}

#[test]
fn dual_y_finite_length() {
    let mut t = CharacterTable::new(Window::new(-4, 4));
    for j in 1..=4 {
        t.set(1, j, Dim::Finite(j as u64));
    }
    let data = DualizingData { a0_dim: 1, shift: 0 };
    let (d, gaps) = dual_y_table(&t, data);
    assert!(gaps.is_empty());
    for j in 1..=4 {
        assert_eq!(d.get(0, -j), Dim::Finite(j as u64));
    }
    let (dd, _) = dual_y_table(&d, data);
    assert_eq!(dd, t.normalized());
    let (z, _) = dual_y_table(&CharacterTable::new(Window::new(-2, 2)), data);
    assert!(z.is_zero());
}

#[test]
fn dual_a_examples() {
    let ring = Example::A1Cobordism.ring();
    let caps = Caps::default();
    let d = dual_a(&ring, &GradedModulePresentation::free(vec![2]), &caps).unwrap();
    assert_eq!(d.generator_weights(), vec![-2]);
    let x = ring.var(0);
    let m = GradedModulePresentation::cyclic(&ring, 0, &[x]).unwrap();
    let d = dual_a(&ring, &m, &caps).unwrap();
    assert_eq!((d.lo, d.hi()), (0, 1));
    let win = Window::new(-5, 5);
    let tab = d.cohomology(&ring, win, &caps).unwrap();
    let twisted = m.twist(1).character(&ring, win, &caps).unwrap();
    for i in win.weights() {
        assert_eq!(tab.get(0, i), Dim::Finite(0));
        assert_eq!(tab.get(1, i), twisted.get(0, i), "weight {}", i);
    }
    let f = GradedModulePresentation::free(vec![2, -3]);
    let dd = dual_a(&ring, &f, &caps).unwrap().dual(ring.nvars());
    assert_eq!(dd.generator_weights(), vec![2, -3]);
}

#[test]
fn transpose_is_involutive() {
    let ring = Example::A1Cobordism.ring();
    let caps = Caps::default();
    let wd = WindowData::from(&truncate_geq(&GradedModulePresentation::free(vec![0]), 1));
    let t = transpose(&wd);
    let win = Window::new(-5, 5);
    for i in win.weights() {
        let expect = if i <= -1 { Dim::Infinite } else { Dim::Finite(0) };
        assert_eq!(t.dim(&ring, i, &caps).unwrap(), expect);
    }
    let tt = transpose(&t);
    assert_eq!(tt.character(&ring, win, &caps).unwrap(), wd.character(&ring, win, &caps).unwrap());
    let mut tab = CharacterTable::new(win);
    tab.set(0, 2, Dim::Finite(3));
    assert_eq!(transpose_table(&transpose_table(&tab)), tab.normalized());
}

#[test]
fn dual_window_examples() {
    let caps = Caps::default();
    let win = Window::new(-5, 5);
    let e1 = Example::A1Cobordism.ring();
    let d = dual_window(&e1, &truncate_geq(&GradedModulePresentation::free(vec![0]), 1), win, &caps).unwrap();
    assert_eq!(d.free.generator_weights(), vec![-1]);
    let e2 = Example::ProjLine.ring();
    let d = dual_window(&e2, &truncate_geq(&GradedModulePresentation::free(vec![0]), 1), win, &caps).unwrap();
    assert_eq!((d.free.lo, d.free.hi()), (0, 1));
    assert_eq!(d.free.term(0).weights, vec![-1, -1]);
    assert_eq!(d.free.term(1).weights, vec![-2]);
    for i in win.weights() {
        assert!(i <= -1 || d.table.rows.keys().all(|&p| d.table.get(p, i).is_zero()));
    }
}

#[test]
fn hom_and_support() {
    let caps = Caps::default();
    let ring = Example::ProjLine.ring();
    let w = |a: i64| truncate_geq(&GradedModulePresentation::free(vec![a]), 0);
    let r = hom_preservation_spotcheck(&ring, &[(w(0), w(2)), (w(2), w(0)), (w(1), w(1))], &caps).unwrap();
    assert!(r.iter().all(|h| h.equal));
    assert_eq!(r[0].hom, Dim::Finite(0));
    assert_eq!(r[1].hom, Dim::Finite(3));
    let e1 = Example::A1Cobordism.ring();
    let s = support_implication(&e1, &GradedModulePresentation::free(vec![0]), 1, 0, Window::new(-6, 6), &caps).unwrap();
    assert!(s.premise);
    assert_eq!(s.holds, Some(true));
}
