//! Acceptance suite. Every check is exact; each criterion also has a wall-clock
//! budget. Prints one line per criterion and exits nonzero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use dirac_core::dirac_linear::{
    forward_image, from_range_form, lagrangian_check, pullback, reduce, to_range_form, DiracSubspace,
};
use dirac_core::homogeneous::{classify, HomogeneousCandidate};
use dirac_core::invariant::{courant_closure_check, cyclic_integrability};
use dirac_core::liealg::{abelian, heisenberg3, sl2, upper_triangular, LieAlgebra};
use dirac_core::multiplicative::{
    abelian_fiber, abelian_multiplicativity_check, build_double, cocycle_check, delta_to_bracket,
    gpart_identity_check, integrability_check, n_invariance_check, ppart_identity_check, r3_counterexample,
    sl2_standard_bialgebra, CocycleData, IntegrabilityWitness,
};
use dirac_core::ratlin::{int, ints, quotient_map, unit, Subspace};
use dirac_core::sampling::{self, range_form_grid};

fn r3_counterexample_reproduced() {
    let data = r3_counterexample();
    assert_eq!(data.g0(), &Subspace::coordinate(3, &[2]));
    assert_eq!(data.p1(), &Subspace::coordinate(3, &[0, 1]));
    let b = delta_to_bracket(&data);
    let (dx, dy, dz) = (unit(3, 0), unit(3, 1), unit(3, 2));
    assert_eq!(b.bracket(&dy, &dx).unwrap(), dz);
    assert_eq!(data.eval(&dz, &dy, &dx), int(1));
    let w = n_invariance_check(&b).expect_err("[dy, dx] = dz leaves p1");
    // [e1*, e2*] = -e3*, i.e. [e2*, e1*] = e3*.
    assert_eq!(w.pair, (0, 1));
    assert_eq!(w.value, ints(&[0, 0, -1]));
    assert!(!data.p1().contains(&w.value).unwrap());
    assert!(matches!(integrability_check(&b), Err(IntegrabilityWitness::NotNInvariant(_))));
}

fn abelian_cocycles_are_trivially_cocycles() {
    let mut rng = sampling::rng(2);
    for i in 0..100 {
        let n = 2 + i % 3;
        let g = abelian(n);
        let g0 = sampling::subspace(&mut rng, n, 2);
        let data = sampling::linear_delta(&mut rng, &g, &g0, 5);
        assert!(cocycle_check(&data).is_ok(), "instance {i}");
    }
}

fn upper_triangular_cocycle_criterion() {
    let g = upper_triangular(3);
    let g0 = g.derived_algebra();
    let mut rng = sampling::rng(3);
    for i in 0..50 {
        let good = sampling::delta_vanishing_on_g0(&mut rng, &g, &g0, 3);
        assert!(cocycle_check(&good).is_ok(), "vanishing instance {i}");
        assert!(n_invariance_check(&delta_to_bracket(&good)).is_ok(), "vanishing instance {i}");
        let bad = sampling::delta_not_vanishing_on_g0(&mut rng, &g, &g0, 3);
        assert!(cocycle_check(&bad).is_err(), "non-vanishing instance {i}");
    }
}

fn cocycles_satisfy_expanded_identities() {
    let algebras = [sl2(), heisenberg3(), upper_triangular(3)];
    let families: Vec<(LieAlgebra, Subspace)> = algebras
        .iter()
        .flat_map(|g| sampling::admissible_ideals(g).into_iter().map(move |k| (g.clone(), k)))
        .collect();
    let mut rng = sampling::rng(4);
    for i in 0..100 {
        let (g, g0) = &families[i % families.len()];
        let data = sampling::coboundary(&mut rng, g, g0, 3);
        assert!(cocycle_check(&data).is_ok(), "instance {i}");
        assert!(ppart_identity_check(&data).is_ok(), "instance {i}");
        assert!(gpart_identity_check(&data).is_ok(), "instance {i}");
    }
}

fn doubles_satisfy_jacobi() {
    for g in [sl2(), heisenberg3(), upper_triangular(3)] {
        let n = g.dim();
        let data = CocycleData::trivial(g.clone(), Subspace::zero(n)).unwrap();
        let dbl = build_double(&data).unwrap();
        assert!(dbl.algebra().jacobi_check().is_ok());
        for i in 0..2 * n {
            for j in 0..2 * n {
                let (a, b) = (unit(2 * n, i), unit(2 * n, j));
                let (x, xi) = a.split_at(n);
                let (y, eta) = b.split_at(n);
                let mut want = g.bracket(x, y).unwrap();
                want.extend(dirac_core::ratlin::sub(&g.coad(x, eta), &g.coad(y, xi)));
                assert_eq!(dbl.bracket(&a, &b).unwrap(), want);
            }
        }
    }
    let dbl = build_double(&sl2_standard_bialgebra()).unwrap();
    assert!(dbl.algebra().jacobi_check().is_ok());
    assert!(!dbl.algebra().is_abelian());
}

fn integrability_oracles_agree() {
    for g in [sl2(), heisenberg3()] {
        let grid = range_form_grid(3, 1);
        assert_eq!(grid.len(), 80);
        for (i, p) in grid.iter().enumerate() {
            let d = from_range_form(p);
            let cyclic = cyclic_integrability(&g, &d).unwrap().is_ok();
            let closure = courant_closure_check(&g, &d).unwrap().is_ok();
            assert_eq!(cyclic, closure, "grid point {i}");
        }
    }
}

fn trivial_homogeneous_structures_are_invariant_ones() {
    let g = sl2();
    for (i, p) in range_form_grid(3, 1).iter().enumerate() {
        let d = from_range_form(p);
        let data = CocycleData::trivial(g.clone(), Subspace::zero(3)).unwrap();
        let c = HomogeneousCandidate::new(data, Subspace::zero(3), d.body().clone()).unwrap();
        let report = classify(&c);
        assert!(report.homogeneous, "grid point {i}");
        assert_eq!(report.is_integrable(), cyclic_integrability(&g, &d).unwrap().is_ok(), "grid point {i}");
    }
}

fn range_form_and_reduction_laws() {
    let mut rng = sampling::rng(8);
    for i in 0..200 {
        let n = 1 + i % 5;
        let p = sampling::range_form(&mut rng, n, 4);
        assert_eq!(to_range_form(&from_range_form(&p)), p, "presentation {i}");
    }
    for i in 0..100 {
        let n = 2 + i % 4;
        let k = sampling::subspace(&mut rng, n, 2);
        let q = quotient_map(n, &k).unwrap();
        let m = q.quotient_dim();
        let dbar = sampling::dirac(&mut rng, m, 3);
        assert_eq!(reduce(&pullback(&dbar, &q.projection).unwrap(), &k).unwrap(), dbar, "instance {i}");
        // A general surjection: reduce works in the pivot coordinates of Q^n / ker q,
        // related to the target of q by the isomorphism q ∘ section.
        let s = sampling::surjection(&mut rng, n, m, 3);
        let ker = dirac_core::ratlin::kernel(&s);
        let reduced = reduce(&pullback(&dbar, &s).unwrap(), &ker).unwrap();
        let iso = s.mul(&quotient_map(n, &ker).unwrap().section).unwrap();
        assert_eq!(forward_image(&reduced, &iso).unwrap(), dbar, "instance {i}");
    }
    for i in 0..50 {
        let n = 1 + i % 5;
        let g0 = sampling::subspace(&mut rng, n, 3);
        let m = n - g0.dim();
        assert_eq!(reduce(&DiracSubspace::split(&g0), &g0).unwrap(), DiracSubspace::cotangent(m));
    }
}

fn abelian_fibers_are_multiplicative() {
    let data = r3_counterexample();
    let mut rng = sampling::rng(9);
    let point = |rng: &mut _| (0..3).map(|_| sampling::rational(rng, 5)).collect::<Vec<_>>();
    for i in 0..100 {
        let r = point(&mut rng);
        let d = abelian_fiber(&data, &r).unwrap();
        assert!(lagrangian_check(3, d.body()).is_ok(), "point {i}");
    }
    for i in 0..100 {
        let (r, s) = (point(&mut rng), point(&mut rng));
        assert!(abelian_multiplicativity_check(&data, &r, &s).unwrap().is_ok(), "pair {i}");
    }
    assert_eq!(abelian_fiber(&data, &ints(&[0, 0, 0])).unwrap(), DiracSubspace::split(data.g0()));
}

fn torus_structures_are_split() {
    let mut rng = sampling::rng(10);
    for i in 0..40 {
        let n = 1 + i % 4;
        let g0 = sampling::subspace(&mut rng, n, 2);
        let data = CocycleData::trivial(abelian(n), g0.clone()).unwrap();
        let split = DiracSubspace::split(&g0);
        for _ in 0..5 {
            let r: Vec<_> = (0..n).map(|_| sampling::rational(&mut rng, 7)).collect();
            assert_eq!(abelian_fiber(&data, &r).unwrap(), split, "instance {i}");
        }
    }
}

type Criterion = (&'static str, fn(), Duration);

fn main() {
    let ms = Duration::from_millis;
    let criteria: [Criterion; 10] = [
        ("R3 counterexample: [dy, dx] = dz, not N-invariant, not integrable", r3_counterexample_reproduced, ms(100)),
        ("abelian algebras: every linear delta is a cocycle", abelian_cocycles_are_trivially_cocycles, ms(1_000)),
        ("upper triangular: cocycle iff delta vanishes on g0", upper_triangular_cocycle_criterion, ms(2_000)),
        ("coboundaries satisfy the p1 and g/g0 identities", cocycles_satisfy_expanded_identities, ms(5_000)),
        ("doubles of trivial data and of the sl2 bialgebra satisfy Jacobi", doubles_satisfy_jacobi, ms(1_000)),
        ("cyclic integrability agrees with Courant closure on the grid", integrability_oracles_agree, ms(60_000)),
        ("trivial data: integrable homogeneous iff cyclic integrable", trivial_homogeneous_structures_are_invariant_ones, ms(60_000)),
        ("range-form roundtrip and reduction laws", range_form_and_reduction_laws, ms(5_000)),
        ("abelian fibers are Lagrangian and multiplicative", abelian_fibers_are_multiplicative, ms(5_000)),
        ("torus: split structure is constant", torus_structures_are_split, ms(5_000)),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run));
        let elapsed = start.elapsed();
        let line = match outcome {
            Ok(()) if elapsed <= *budget => format!("PASS {:>2} {name} ({elapsed:.2?})", i + 1),
            Ok(()) => format!("FAIL {:>2} {name}: took {elapsed:.2?}, budget {budget:.2?}", i + 1),
            Err(e) => {
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                format!("FAIL {:>2} {name}: {msg}", i + 1)
            }
        };
        if line.starts_with("FAIL") {
            failed += 1;
        }
        println!("{line}");
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
