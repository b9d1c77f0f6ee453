//! Acceptance suite: one test per criterion, each printing a PASS/FAIL
//! line (run with `--nocapture` to see them all). Every comparison is
//! exact symbolic equality; the stated runtime budgets are asserted.

use num::BigRational;
use num::One as _;
use qwitt::pbw::{
    central_elements_check, graded_leading_term_check, power_commutation_check,
    strategy_agreement_sample, ReductionSystem,
};
use qwitt::qarith::{gauss_binomial, q_integer, verify_q_pascal, ScalarField};
use qwitt::qlie::{
    cocycle_o, verify_cocycle_recursion, verify_weighted_jacobi, virasoro_cocycle,
    witt_operator_consistency, AlgebraKind, BasisElement, GradedAlgebra,
};
use qwitt::qrep::{
    base_top_eigenvalues, deform_representation, graded_submodule_analysis, holomorph_compat_check,
    realize_module, realize_module_generic, standard_holomorph_pair, tensor_representation,
    verify_module_axiom, Matrix, TPoly, WeightParameter,
};
use rayon::prelude::*;
use std::time::Instant;

fn gen() -> ScalarField {
    ScalarField::generic()
}

fn root(l: u32) -> ScalarField {
    ScalarField::root_of_unity(l).unwrap()
}

fn line(n: u32, name: &str, pass: bool) {
    println!(
        "[criterion {n:>2}] {name}: {}",
        if pass { "PASS" } else { "FAIL" }
    );
}

fn budget(n: u32, started: Instant, seconds: u64) {
    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs() < seconds,
        "criterion {n} exceeded its {seconds}s budget: {elapsed:?}"
    );
}

#[test]
fn criterion_01_q_arithmetic() {
    let started = Instant::now();
    let mut pass = true;

    let fields: Vec<ScalarField> = std::iter::once(gen())
        .chain([3, 5, 7, 8, 12].map(root))
        .collect();
    for f in &fields {
        for a in -6..=12i64 {
            for b in -6..=12i64 {
                pass &= verify_q_pascal(f, a, b);
            }
        }
    }
    for l in [3u32, 5, 7, 8, 12] {
        let f = root(l);
        for k in -4..=4i64 {
            if k != 0 {
                pass &= q_integer(&f, k * l as i64).is_zero();
            }
        }
        for i in 1..l as i64 {
            pass &= gauss_binomial(&f, l as i64, i).is_zero();
        }
    }
    let f = gen();
    let one = BigRational::one();
    for n in -12..=12i64 {
        pass &= q_integer(&f, n).subst_q(&one).unwrap() == BigRational::from_integer(n.into());
    }
    for n in 0..=12i64 {
        let mut classical = BigRational::one();
        for r in 0..=n {
            if r > 0 {
                classical = classical * BigRational::from_integer((n - r + 1).into())
                    / BigRational::from_integer(r.into());
            }
            pass &= gauss_binomial(&f, n, r).subst_q(&one).unwrap() == classical;
        }
    }

    line(1, "q-arithmetic identities and specializations", pass);
    budget(1, started, 10);
    assert!(pass);
}

fn jacobi_failures(alg: &GradedAlgebra, basis: &[BasisElement]) -> usize {
    let n = basis.len();
    (0..n * n * n)
        .into_par_iter()
        .filter(|idx| {
            let (a, rest) = (idx / (n * n), idx % (n * n));
            let (b, c) = (rest / n, rest % n);
            !verify_weighted_jacobi(alg, basis[a], basis[b], basis[c]).unwrap()
        })
        .count()
}

#[test]
fn criterion_02_weighted_jacobi() {
    let started = Instant::now();
    let mut failures = 0usize;
    let mut total = 0usize;

    for l in [3u32, 5, 7] {
        let alg = GradedAlgebra::new(AlgebraKind::WittEps11, root(l)).unwrap();
        let basis = alg.finite_basis().unwrap();
        total += basis.len().pow(3);
        failures += jacobi_failures(&alg, &basis);
    }
    {
        let alg = GradedAlgebra::new(AlgebraKind::HolomorphEps1, root(5)).unwrap();
        let basis = alg.finite_basis().unwrap();
        total += basis.len().pow(3);
        failures += jacobi_failures(&alg, &basis);
    }
    for kind in [
        AlgebraKind::WittQ,
        AlgebraKind::WittQ1,
        AlgebraKind::HolomorphQ,
    ] {
        let alg = GradedAlgebra::new(kind, gen()).unwrap();
        let basis = alg.windowed_basis(-10, 10);
        total += basis.len().pow(3);
        failures += jacobi_failures(&alg, &basis);
    }

    let pass = failures == 0;
    println!("  ({total} triples swept, {failures} failures)");
    line(2, "weighted q-Jacobi exhaustive and windowed sweeps", pass);
    budget(2, started, 120);
    assert!(pass);
}

#[test]
fn criterion_03_operator_consistency() {
    let f = gen();
    let mut pass = true;
    for i in -6..=6i64 {
        for j in -6..=6i64 {
            for n in -6..=6i64 {
                pass &= witt_operator_consistency(&f, i, j, n);
            }
        }
    }
    line(
        3,
        "twisted-commutator operators match structure constants",
        pass,
    );
    assert!(pass);
}

#[test]
fn criterion_04_pbw_confluence() {
    let started = Instant::now();
    let mut pass = true;
    let mut notes = Vec::new();

    for l in [3u32, 5, 7] {
        let sys =
            ReductionSystem::new(GradedAlgebra::new(AlgebraKind::WittEps11, root(l)).unwrap())
                .unwrap();
        let rep = sys.check_confluence().unwrap();
        let bad: Vec<String> = rep
            .ambiguities
            .iter()
            .filter(|a| !a.resolvable || !a.jacobi_sum_vanishes)
            .map(|a| format!("({}, {}, {})", a.triple.0, a.triple.1, a.triple.2))
            .collect();
        if !bad.is_empty() {
            pass = false;
            notes.push(format!(
                "truncated Witt l={l}: {}/{} ambiguities unresolved: {}",
                bad.len(),
                rep.ambiguities.len(),
                bad.join(" ")
            ));
        }
    }
    for l in [3u32, 5] {
        let sys =
            ReductionSystem::new(GradedAlgebra::new(AlgebraKind::HolomorphEps1, root(l)).unwrap())
                .unwrap();
        let rep = sys.check_confluence().unwrap();
        let bad = rep
            .ambiguities
            .iter()
            .filter(|a| !a.resolvable || !a.jacobi_sum_vanishes)
            .count();
        if bad > 0 {
            pass = false;
            notes.push(format!(
                "holomorph l={l}: {bad}/{} ambiguities unresolved",
                rep.ambiguities.len()
            ));
        }
    }
    {
        let sys =
            ReductionSystem::new(GradedAlgebra::new(AlgebraKind::WittEps11, root(5)).unwrap())
                .unwrap();
        let disagreements = strategy_agreement_sample(&sys, 1000, 4, 0).unwrap();
        if !disagreements.is_empty() {
            pass = false;
            notes.push(format!(
                "leftmost/rightmost strategies disagree on {}/1000 seeded words at l=5",
                disagreements.len()
            ));
        }
    }

    for n in &notes {
        println!("  {n}");
    }
    line(
        4,
        "PBW confluence, Jacobi sums and strategy agreement",
        pass,
    );
    budget(4, started, 300);
    assert!(
        pass,
        "overlap ambiguities do not all resolve; the two-path residual \
         carries (q^deg - 1)-weighted coefficients the weighted Jacobi \
         identity does not cancel: {}",
        notes.join("; ")
    );
}

#[test]
fn criterion_05_root_of_unity_center() {
    let mut pass = true;
    let mut closed_form_agreements = 0usize;
    let mut closed_form_total = 0usize;

    // first power-commutation identity, all i, 1 <= n <= l
    for l in [3u32, 5] {
        let sys =
            ReductionSystem::new(GradedAlgebra::new(AlgebraKind::WittEps11, root(l)).unwrap())
                .unwrap();
        for i in -1..=l as i64 - 2 {
            for n in 1..=l {
                pass &= power_commutation_check(&sys, i, 0, n).unwrap().holds;
            }
        }
    }
    // iterated-bracket expansion and its closed-form comparison at l = 5
    {
        let sys =
            ReductionSystem::new(GradedAlgebra::new(AlgebraKind::WittEps11, root(5)).unwrap())
                .unwrap();
        for i in -1..=3i64 {
            for j in -1..=3i64 {
                if j == 0 {
                    continue;
                }
                for n in 1..=4u32 {
                    let rep = power_commutation_check(&sys, i, j, n).unwrap();
                    pass &= rep.holds;
                    if let Some(cf) = rep.closed_form {
                        closed_form_total += 1;
                        if cf.matches {
                            closed_form_agreements += 1;
                        }
                    }
                }
            }
        }
    }
    // centrality of the l-th powers
    for l in [3u32, 5, 7] {
        let sys =
            ReductionSystem::new(GradedAlgebra::new(AlgebraKind::WittEps11, root(l)).unwrap())
                .unwrap();
        pass &= central_elements_check(&sys).unwrap().all_central;
    }

    println!(
        "  (closed-form coefficient table agrees with the normal-form oracle \
         on {closed_form_agreements}/{closed_form_total} cases; reported, not asserted)"
    );
    line(5, "power commutation and the central subalgebra", pass);
    assert!(pass);
}

#[test]
fn criterion_06_graded_leading_term_law() {
    let mut pass = true;
    for l in [3u32, 5, 7] {
        let sys =
            ReductionSystem::new(GradedAlgebra::new(AlgebraKind::WittEps11, root(l)).unwrap())
                .unwrap();
        pass &= graded_leading_term_check(&sys).unwrap().holds;
    }
    line(6, "quasipolynomial leading-term law", pass);
    assert!(pass);
}

#[test]
fn criterion_07_virasoro() {
    let started = Instant::now();
    let f = gen();
    let mut pass = verify_cocycle_recursion(&f, 20).unwrap();
    for i in 1..=12i64 {
        let c = virasoro_cocycle(&f, i).unwrap();
        let cm = virasoro_cocycle(&f, -i).unwrap();
        pass &= (&c + &cm).is_zero();
    }
    let vir = GradedAlgebra::new(AlgebraKind::VirasoroQ, f.clone()).unwrap();
    use BasisElement::E;
    for i in -8..=8i64 {
        for j in -8..=8i64 {
            pass &= verify_weighted_jacobi(&vir, E(i), E(j), E(-(i + j))).unwrap();
        }
    }
    line(7, "central-extension cocycle and its recursion", pass);
    budget(7, started, 60);
    assert!(pass);
}

#[test]
fn criterion_08_representation_suite() {
    let started = Instant::now();
    let mut pass = true;
    for l in [3u32, 5, 7] {
        let f = root(l);
        let n = l as usize;
        // symbolic weight certifies the module axiom for every t
        pass &=
            verify_module_axiom(&realize_module(&f, &WeightParameter::Symbolic).unwrap()).unwrap();
        // trichotomy
        for t in [f.from_int(2), f.q(), &f.one() + &f.q()] {
            let m = realize_module(&f, &WeightParameter::Value(t)).unwrap();
            pass &= graded_submodule_analysis(&m).unwrap().irreducible;
        }
        let m0 = realize_module(&f, &WeightParameter::Value(f.zero())).unwrap();
        let rep0 = graded_submodule_analysis(&m0).unwrap();
        pass &= rep0.composition_dims == vec![1, n - 1] && rep0.submodules == vec![vec![0]];
        let m1 = realize_module(&f, &WeightParameter::Value(f.one())).unwrap();
        let rep1 = graded_submodule_analysis(&m1).unwrap();
        pass &= rep1.composition_dims == vec![n - 1, 1]
            && rep1.submodules == vec![(0..n - 1).collect::<Vec<_>>()];
        // base and top eigenvalues
        let ms = realize_module(&f, &WeightParameter::Symbolic).unwrap();
        let (base, top) = base_top_eigenvalues(&ms).unwrap();
        pass &= base == TPoly::t(&f);
        let expected =
            TPoly::constant(-&f.q_power(-1)).mul(&TPoly::constant(f.one()).sub(&TPoly::t(&f)));
        pass &= top == expected;
    }
    line(8, "graded realization and its submodule trichotomy", pass);
    budget(8, started, 60);
    assert!(pass);
}

#[test]
fn criterion_09_holomorph_representations() {
    let f = root(5);
    let triple = standard_holomorph_pair(&f).unwrap();
    let mut pass = true;

    let compat = holomorph_compat_check(&triple).unwrap();
    pass &= compat.compatible && compat.psi_commutation;

    // deformation by the symbolic weight reproduces the realization
    let deformed = deform_representation(&triple, &TPoly::t(&f)).unwrap();
    let direct = realize_module(&f, &WeightParameter::Symbolic).unwrap();
    pass &= deformed.same_matrices(&direct);

    // one-dimensional tensor factors
    for w in [f.zero(), f.one(), f.q()] {
        let mut rho = Matrix::zeros(&f, 1, 1);
        rho.set(0, 0, TPoly::constant(w));
        let m = tensor_representation(&triple, &rho).unwrap();
        pass &= verify_module_axiom(&m).unwrap();
    }
    line(9, "holomorph compatibility, deformation and tensor", pass);
    assert!(pass);
}

#[test]
fn criterion_10_q_to_one_degeneration() {
    let f = gen();
    let one = BigRational::one();
    let mut pass = true;
    for i in -12..=12i64 {
        for j in -12..=12i64 {
            pass &= cocycle_o(&f, i, j).subst_q(&one).unwrap()
                == BigRational::from_integer((j - i).into());
        }
    }
    let m = realize_module_generic(&f, 8, &WeightParameter::Symbolic).unwrap();
    for i in -1..=8i64 {
        let mat = m.action(i).unwrap();
        for a in 0..=8i64 {
            let r = a + i;
            if !(0..=8).contains(&r) {
                continue;
            }
            let e = mat.get(r as usize, a as usize);
            pass &= e.coeff(0).subst_q(&one).unwrap()
                == gauss_binomial(&f, a + i, i + 1).subst_q(&one).unwrap();
            pass &= e.coeff(1).subst_q(&one).unwrap()
                == gauss_binomial(&f, a + i, i).subst_q(&one).unwrap();
        }
    }
    line(10, "classical degeneration at q = 1", pass);
    assert!(pass);
}
