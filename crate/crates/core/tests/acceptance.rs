//! Acceptance suite: one pass/fail line per criterion, with timings against the stated budgets.

mod common;

use std::time::{Duration, Instant};

use graded_sod::duality::duality_condition_check;
use graded_sod::groebner::{kernel, submodule_gb, Caps, FreeModule, GradedMatrix, Vector};
use graded_sod::grmodule::{truncate_geq, GradedModulePresentation, Window};
use graded_sod::library::{polynomial_ring, Example, ALL};
use graded_sod::localcoh::{cross_engine_check, local_cohomology, Engine, Flavor, Side};
use graded_sod::ringcore::{GradedRing, Monomial, Polynomial};
use graded_sod::staircase::Dim;
use graded_sod::weighttrunc::{
    conditions_probe, sod_decompose, truncation_triangle, window_resolution, window_sod, Method, ProbeVerdict,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn free(a: i64) -> GradedModulePresentation {
    GradedModulePresentation::free(vec![a])
}

fn modules(ring: &GradedRing) -> Vec<(String, GradedModulePresentation)> {
    let f = ring.i_plus[0].clone();
    vec![
        ("A".into(), free(0)),
        ("A(1)".into(), free(-1)),
        ("A(-1)".into(), free(1)),
        (format!("A/({})", ring.fmt(&f)), GradedModulePresentation::cyclic(ring, 0, &[f]).unwrap()),
    ]
}

fn crit1() -> Check {
    let ring = Example::A1Cobordism.ring();
    let caps = Caps::default();
    let win = Window::new(-6, 6);
    for engine in [Engine::Torus, Engine::Koszul] {
        let t = local_cohomology(&ring, &free(0), Side::Plus, win, engine, Flavor::Rgamma, &caps)
            .map_err(|e| e.to_string())?
            .table;
        for j in 1..=6i64 {
            let oracle = common::top_local_cohomology_count(ring.w(), &[0], -j, 20);
            ensure(oracle == j as u64, || format!("oracle gives {} at {}", oracle, -j))?;
            ensure(t.get(1, -j) == Dim::Finite(oracle), || format!("{:?}: H¹ at {} is {}", engine, -j, t.get(1, -j)))?;
        }
        for i in win.weights() {
            ensure(t.get(0, i).is_zero(), || format!("{:?}: H⁰ nonzero at {}", engine, i))?;
        }
    }
    Ok(())
}

fn crit2() -> Check {
    let ring = Example::ProjLine.ring();
    let caps = Caps::default();
    for engine in [Engine::Torus, Engine::Koszul] {
        let t = local_cohomology(&ring, &free(0), Side::Plus, Window::new(-5, 5), engine, Flavor::Cech, &caps)
            .map_err(|e| e.to_string())?
            .table;
        for i in -5i64..=5 {
            let h0 = common::monomial_count(ring.w(), i, 12);
            let h1 = common::top_local_cohomology_count(ring.w(), &[0, 1], i, 12);
            let classical = (if i >= 0 { i + 1 } else { 0 }, if i <= -2 { -i - 1 } else { 0 });
            ensure((h0 as i64, h1 as i64) == classical, || format!("oracle disagrees at {}", i))?;
            ensure(t.get(0, i) == Dim::Finite(h0) && t.get(1, i) == Dim::Finite(h1), || {
                format!("{:?} at {}: ({}, {})", engine, i, t.get(0, i), t.get(1, i))
            })?;
        }
    }
    Ok(())
}

fn crit3() -> Check {
    let caps = Caps::default();
    let win = Window::new(-6, 6);
    for ex in ALL {
        let ring = ex.ring();
        for (name, m) in modules(&ring) {
            for side in [Side::Plus, Side::Minus] {
                for flavor in [Flavor::Rgamma, Flavor::Cech] {
                    let c = cross_engine_check(&ring, &m, side, win, flavor, &caps).map_err(|e| e.to_string())?;
                    let degs_ok = c.torus.table.degrees().iter().all(|p| (0..=3).contains(p));
                    ensure(c.agree && degs_ok && !c.koszul.indeterminate, || {
                        format!("{} {} {:?} {:?}: {:?}", ex.name(), name, side, flavor, c.mismatches)
                    })?;
                }
            }
        }
    }
    Ok(())
}

fn crit4() -> Check {
    let ring = Example::A1Cobordism.ring();
    let caps = Caps::default();
    let win = Window::new(-6, 6);
    let t = truncation_triangle(&ring, &free(0), 1, win, &[Method::Resolution, Method::Koszul], &caps)
        .map_err(|e| e.to_string())?;
    ensure(t.pass && t.routes_agree == Some(true), || "triangle checks failed".into())?;
    let res = &t.routes[0];
    let geq = res.geq.as_ref().unwrap();
    ensure(geq.terms.len() == 1 && geq.terms[0].generator_weights == vec![1] && geq.terms[0].degree == 0, || {
        format!("L_[≥1] A is {:?}", geq)
    })?;
    for r in &t.routes {
        for i in win.weights() {
            let expect = Dim::Finite(if i <= 0 { 1 } else { 0 });
            ensure(r.lt_table.get(0, i) == expect, || format!("{:?} route: L_<1 at {} is {}", r.method, i, r.lt_table.get(0, i)))?;
            let others = r.lt_table.rows.keys().filter(|&&p| p != 0).all(|&p| r.lt_table.get(p, i).is_zero());
            ensure(others, || format!("{:?} route: stray cohomology at weight {}", r.method, i))?;
        }
    }
    Ok(())
}

fn sod_samples(ring: &GradedRing) -> Vec<(GradedModulePresentation, i64)> {
    let f = ring.i_plus[0].clone();
    let cyc = GradedModulePresentation::cyclic(ring, 0, &[f]).unwrap();
    vec![(free(0), 0), (free(0), 1), (free(-1), 0), (free(1), -1), (cyc, 0)]
}

fn crit5() -> Check {
    let caps = Caps::default();
    for ex in ALL {
        let ring = ex.ring();
        for (k, (m, w)) in sod_samples(&ring).into_iter().enumerate() {
            let r = sod_decompose(&ring, &m, w, Window::new(-6, 6), &caps).map_err(|e| e.to_string())?;
            ensure(r.pass, || {
                format!(
                    "{} sample {} (w={}): lower {:?} torsion {:?}/{:?} trivial {:?} euler {:?} orth {:?}",
                    ex.name(),
                    k,
                    w,
                    r.lower_in_d_lt_w,
                    r.torsion_piece_is_torsion,
                    r.torsion_piece_in_d_geq_w,
                    r.trivial_piece_rgamma_lt_w,
                    r.euler_bookkeeping,
                    r.orthogonality
                )
            })?;
        }
    }
    Ok(())
}

fn window_sod_reports() -> Result<Vec<(String, graded_sod::weighttrunc::WindowSodReport)>, String> {
    let caps = Caps::default();
    let mut out = vec![];
    for ex in ALL {
        let ring = ex.ring();
        for (k, (m, w)) in sod_samples(&ring).into_iter().enumerate() {
            let r = window_sod(&ring, &truncate_geq(&m, w), Window::new(-6, 6), &caps).map_err(|e| e.to_string())?;
            out.push((format!("{} sample {}", ex.name(), k), r));
        }
    }
    Ok(out)
}

fn crit6(reports: &[(String, graded_sod::weighttrunc::WindowSodReport)]) -> Check {
    for (name, r) in reports {
        ensure(r.cech_idempotent && r.rgamma_idempotent, || {
            format!("{}: Č idempotent {} RΓ idempotent {}", name, r.cech_idempotent, r.rgamma_idempotent)
        })?;
    }
    Ok(())
}

fn crit7(reports: &[(String, graded_sod::weighttrunc::WindowSodReport)]) -> Check {
    for (name, r) in reports {
        for (p, v) in &r.coherence {
            let explicit = v.generators.as_ref().map(|g| g.gens.len() == g.weights.len()).unwrap_or(false);
            ensure(v.finitely_generated == Some(true) && explicit, || format!("{}: H^{} not certified", name, p))?;
        }
    }
    Ok(())
}

fn binom(n: i64, k: i64) -> u64 {
    if k < 0 || n < k {
        return 0;
    }
    (0..k).fold(1u64, |acc, j| acc * (n - j) as u64 / (j + 1) as u64)
}

fn crit8() -> Check {
    let caps = Caps::default();
    let win = Window::new(-8, 8);
    let check = |ex: Example| duality_condition_check(&ex.ring(), win, (-3, 3), None, Engine::Torus, &caps);
    let e1 = check(Example::A1Cobordism).map_err(|e| e.to_string())?;
    ensure(e1.matched == vec![0], || format!("E1 matched {:?}", e1.matched))?;
    for j in 1..=8 {
        let o = common::top_local_cohomology_count(&[1, -1], &[0], -j, 20);
        ensure(o == j as u64, || "oracle".into())?;
        ensure(e1.plus_table.get(1, -j) == Dim::Finite(o) && e1.minus_dual_table.get(0, -j) == Dim::Finite(o), || {
            format!("E1 at {}", -j)
        })?;
    }
    let e3 = check(Example::AtiyahFlop).map_err(|e| e.to_string())?;
    ensure(e3.matched == vec![0], || format!("E3 matched {:?}", e3.matched))?;
    for j in 1..=8 {
        let o = common::top_local_cohomology_count(&[1, 1, -1, -1], &[0, 1], -j, 12);
        ensure(o == binom(j + 1, 3), || "oracle".into())?;
        ensure(e3.plus_table.get(2, -j) == Dim::Finite(o) && e3.minus_dual_table.get(1, -j) == Dim::Finite(o), || {
            format!("E3 at {}", -j)
        })?;
    }
    let e4 = check(Example::StandardFlip).map_err(|e| e.to_string())?;
    ensure(e4.matched.len() == 1 && e4.matched[0].abs() == 1, || format!("E4 matched {:?}", e4.matched))?;
    for m in 1..=8i64 {
        let minus = common::top_local_cohomology_count(&[1, 1, -1], &[2], m, 12);
        let plus = common::top_local_cohomology_count(&[1, 1, -1], &[0, 1], -(m + 1), 12);
        ensure(minus == binom(m + 1, 2) && plus == binom(m + 1, 2), || "oracle".into())?;
        ensure(e4.minus_dual_table.get(1, -m) == Dim::Finite(minus), || format!("E4 dual at {}", -m))?;
        ensure(e4.plus_table.get(2, -(m + 1)) == Dim::Finite(plus), || format!("E4 plus at {}", -(m + 1)))?;
    }
    Ok(())
}

fn random_entry(rng: &mut ChaCha8Rng, ring: &GradedRing, weight: i64) -> Polynomial {
    let n = ring.nvars();
    let mut mons = vec![];
    for d in 0..=3 {
        for e in common::monomials_of_degree(n, d) {
            let w: i64 = e.iter().zip(ring.w()).map(|(a, b)| *a as i64 * b).sum();
            if w == weight {
                mons.push(e);
            }
        }
    }
    if mons.is_empty() || rng.gen_bool(0.25) {
        return Polynomial::zero(n);
    }
    let k = rng.gen_range(1..=2);
    Polynomial::from_terms(
        n,
        (0..k).map(|_| {
            let m = mons[rng.gen_range(0..mons.len())].clone();
            (Monomial::new(m), BigRational::from_integer(BigInt::from(rng.gen_range(1i64..=3))))
        }),
    )
}

fn crit9() -> Check {
    let caps = Caps::default();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for trial in 0..20 {
        let ring = if trial % 2 == 0 { Example::A1Cobordism.ring() } else { Example::ProjLine.ring() };
        let w = rng.gen_range(-1..=1);
        let src: Vec<i64> = (0..rng.gen_range(1..=3)).map(|_| w + rng.gen_range(0..=2)).collect();
        let tgt: Vec<i64> = (0..rng.gen_range(1..=3)).map(|_| w + rng.gen_range(0..=1)).collect();
        let cols: Vec<Vec<Polynomial>> =
            src.iter().map(|a| tgt.iter().map(|b| random_entry(&mut rng, &ring, a - b)).collect()).collect();
        let map = GradedMatrix::from_entries(FreeModule::new(src.clone()), FreeModule::new(tgt.clone()), &cols);
        let k = kernel(&ring, &map, &caps).map_err(|e| e.to_string())?;
        let syz = kernel(&ring, &k, &caps).map_err(|e| e.to_string())?;
        let carrier = GradedModulePresentation::from_matrix(syz);
        let wm = truncate_geq(&carrier, w);
        let res = window_resolution(&ring, &wm, &caps).map_err(|e| e.to_string())?;
        ensure(!res.truncated, || format!("trial {}: resolution did not terminate", trial))?;
        ensure(res.q.generator_weights().iter().all(|&a| a >= w), || format!("trial {}: generator below window", trial))?;
        // the resolution computes the kernel window: H⁰ matches, everything else vanishes at ≥ w
        let win = Window::new(w, w + 4);
        let tq = res.q.cohomology(&ring, win, &caps).map_err(|e| e.to_string())?;
        let tk = carrier.character(&ring, win, &caps).map_err(|e| e.to_string())?;
        for i in win.weights() {
            ensure(tq.get(0, i) == tk.get(0, i), || format!("trial {}: H⁰ at {}", trial, i))?;
            for (&p, _) in tq.rows.iter().filter(|(p, _)| **p != 0) {
                ensure(tq.get(p, i).is_zero(), || format!("trial {}: H^{} at {}", trial, p, i))?;
            }
        }
    }
    Ok(())
}

fn crit10() -> Check {
    let caps = Caps::default();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let names = ["a", "b", "c"];
    for trial in 0..50 {
        let n = rng.gen_range(1..=3);
        let ring = polynomial_ring(&names[..n], vec![1; n]).map_err(|e| e.to_string())?;
        let ngens = rng.gen_range(1..=3);
        let gens: Vec<Polynomial> = (0..ngens)
            .map(|_| {
                let d = rng.gen_range(1..=3);
                let t = rng.gen_range(1..=3);
                common::random_homogeneous(&mut rng, n, d, t)
            })
            .filter(|p| !p.is_zero())
            .collect();
        let vecs: Vec<Vector> = gens.iter().map(|g| Vector::from_poly(0, g)).collect();
        let gb = submodule_gb(&ring, 1, &vecs, &caps).map_err(|e| e.to_string())?;
        for d in 0..=8 {
            let space = common::MacaulaySpace::new(&gens, n, d);
            let mut tests: Vec<Polynomial> = common::monomials_of_degree(n, d)
                .into_iter()
                .map(|m| Polynomial::monomial(Monomial::new(m), BigRational::from_integer(BigInt::from(1))))
                .collect();
            tests.push(common::random_homogeneous(&mut rng, n, d, 3));
            for g in &gens {
                let dg = g.total_degree() as i32;
                if dg <= d {
                    let h = common::random_homogeneous(&mut rng, n, d - dg, 2);
                    tests.push(h.mul(g));
                }
            }
            for f in &tests {
                let ours = gb.contains(&Vector::from_poly(0, f));
                ensure(ours == space.contains(f), || format!("ideal {}: degree {} disagreement", trial, d))?;
            }
        }
    }
    Ok(())
}

fn crit11() -> Check {
    let caps = Caps::default();
    for ex in ALL {
        let ring = ex.ring();
        let r = conditions_probe(&ring, &ring.i_plus.clone(), &caps).map_err(|e| e.to_string())?;
        ensure([r.a, r.b, r.c] == [ProbeVerdict::VerifiedToCap; 3], || format!("{}: {}", ex.name(), r.summary()))?;
    }
    Ok(())
}

fn main() {
    let mut failures = 0;
    let mut report = |n: u32, label: &str, budget: Option<Duration>, f: &mut dyn FnMut() -> Check| {
        let t0 = Instant::now();
        let res = f();
        let dt = t0.elapsed();
        let over = budget.map(|b| dt > b).unwrap_or(false);
        let ok = res.is_ok() && !over;
        if !ok {
            failures += 1;
        }
        let budget_s = budget.map(|b| format!(" / {:.0}s", b.as_secs_f64())).unwrap_or_default();
        let detail = match (&res, over) {
            (Err(e), _) => format!("  [{}]", e),
            (Ok(()), true) => "  [over time budget]".into(),
            _ => String::new(),
        };
        println!(
            "criterion {:>2}  {}  {:>8.3}s{}  {}{}",
            n,
            if ok { "PASS" } else { "FAIL" },
            dt.as_secs_f64(),
            budget_s,
            label,
            detail
        );
    };
    let secs = |s: u64| Some(Duration::from_secs(s));
    report(1, "local cohomology of the A¹ cobordism", secs(1), &mut crit1);
    report(2, "Čech table of the projective line", secs(5), &mut crit2);
    report(3, "torus and Koszul engines agree", secs(60), &mut crit3);
    report(4, "truncation triangle at w = 1", secs(5), &mut crit4);
    report(5, "three-term decompositions", secs(120), &mut crit5);
    let t0 = Instant::now();
    let reports = window_sod_reports();
    let shared = t0.elapsed();
    match reports {
        Ok(reports) => {
            report(6, &format!("window idempotence ({:.3}s shared)", shared.as_secs_f64()), None, &mut || crit6(&reports));
            report(7, "coherence of Čech windows", None, &mut || crit7(&reports));
        }
        Err(e) => {
            report(6, "window idempotence", None, &mut || Err(e.clone()));
            report(7, "coherence of Čech windows", None, &mut || Err(e.clone()));
        }
    }
    report(8, "flip/flop duality twists", secs(60), &mut crit8);
    report(9, "window resolutions of random kernels terminate", None, &mut crit9);
    report(10, "normal forms against the Macaulay oracle", secs(60), &mut crit10);
    report(11, "conditions probe on the example rings", secs(30), &mut crit11);
    if failures > 0 {
        println!("{} criteria failed", failures);
        std::process::exit(1);
    }
    println!("all 11 criteria passed");
}
