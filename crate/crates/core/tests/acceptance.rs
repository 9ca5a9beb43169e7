//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//! Everything is exact; no tolerances appear anywhere.

use std::time::Instant;

use num_bigint::BigInt;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use klab_core::catalog;
use klab_core::experiments;
use klab_core::hstar::{
    bc_hvector, bundle_from_polymatroid, hstar_vector, is_macaulay, nabla_bundle, omega,
};
use klab_core::kclass::{h_tilde_base_form, h_tilde_transform, matroid_case_check};
use klab_core::lorentzian::{is_denorm_lorentzian, LorentzianFailure};
use klab_core::poly::{hessian_signature, rat, Signature};
use klab_core::snapper::{snapper_bundle, snapper_degree};
use klab_core::{Basis, Error, ExactPoly, Matroid, Polymatroid};

fn verdict_line(number: usize, name: &str, ok: bool) {
    println!("criterion {number:2} [{}] {name}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {number} failed: {name}");
}

#[test]
fn criterion_01_euler_characteristic_cross_validation() {
    let start = Instant::now();
    let pairs = catalog::pairs("default").unwrap();
    assert!(pairs.len() >= 30, "catalog has only {} pairs", pairs.len());
    let report = experiments::theorem11_sweep(&pairs, 4).unwrap();
    let elapsed = start.elapsed();
    let ok = report.mismatches.is_empty() && elapsed.as_secs() < 60;
    println!(
        "  {} pairs, {} grid points, {:?} elapsed, {} mismatches",
        report.pairs,
        report.points,
        elapsed,
        report.mismatches.len()
    );
    verdict_line(1, "Hall-Rado characteristic equals the K-class expansion on the grid", ok);
}

#[test]
fn criterion_02_product_of_lines_worked_example() {
    // chi = (2t1 + t2 + 1)^2
    let v = vec!["t1".to_string(), "t2".to_string()];
    let lin = ExactPoly::from_terms(
        v.clone(),
        Basis::Power,
        [(vec![1, 0], rat(2)), (vec![0, 1], rat(1)), (vec![0, 0], rat(1))],
    );
    let chi = lin.mul(&lin);
    let shifted = chi.convert_basis(Basis::Shifted);
    let expected: &[(&[u32], i64)] = &[
        (&[2, 0], 8),
        (&[1, 1], 4),
        (&[0, 2], 2),
        (&[1, 0], -12),
        (&[0, 1], -5),
        (&[0, 0], 4),
    ];
    let mut ok = shifted.num_terms() == expected.len();
    for (exp, c) in expected {
        ok &= shifted.coeff(exp) == rat(*c);
    }

    // strip signs (r = 2), homogenize, normalize
    let r = 2u32;
    let mut stripped = ExactPoly::zero(v, Basis::Power);
    for (exp, c) in shifted.terms() {
        let total: u32 = exp.iter().sum();
        let sign = if (r - total) % 2 == 0 { 1 } else { -1 };
        stripped.add_term(exp.clone(), c * rat(sign));
    }
    let transform = stripped.homogenize(2, "t0").unwrap();
    let normalized = transform.normalize().unwrap();
    let target: &[(&[u32], i64, i64)] = &[
        (&[0, 2, 0], 4, 1),
        (&[0, 1, 1], 4, 1),
        (&[0, 0, 2], 1, 1),
        (&[1, 1, 0], 12, 1),
        (&[1, 0, 1], 5, 1),
        (&[2, 0, 0], 2, 1),
    ];
    ok &= normalized.num_terms() == target.len();
    for (exp, p, q) in target {
        ok &= normalized.coeff(exp) == rat(*p) / rat(*q);
    }

    let signature = hessian_signature(&normalized).unwrap();
    ok &= signature == Signature { positives: 2, negatives: 1, zeros: 0 };

    let verdict = is_denorm_lorentzian(&transform).unwrap();
    ok &= !verdict.verdict;
    ok &= matches!(
        verdict.failure,
        Some(LorentzianFailure::BadSignature {
            signature: Signature { positives: 2, negatives: 1, zeros: 0 },
            ..
        })
    );
    verdict_line(2, "product-of-lines transform: coefficients, signature, verdict", ok);
}

#[test]
fn criterion_03_spanning_polymatroids_are_denormalized_lorentzian() {
    let polys = catalog::polymatroids("default").unwrap();
    let entries = experiments::lorentzian_sweep(&polys).unwrap();
    let spanning: Vec<_> = entries.iter().filter(|e| e.spanning).collect();
    let mut ok = spanning.len() >= 15;
    for e in &spanning {
        let fine = e.denorm_lorentzian && e.matches_lift_transform == Some(true);
        if !fine {
            println!("  FAIL {}: lorentzian={} lift={:?}", e.name, e.denorm_lorentzian,
                e.matches_lift_transform);
        }
        ok &= fine;
    }
    println!("  {} spanning instances of {}", spanning.len(), entries.len());
    verdict_line(3, "g_P denormalized Lorentzian and equal to the lift transform", ok);
}

#[test]
fn criterion_04_transform_routes_agree() {
    let pairs = catalog::pairs("default").unwrap();
    let mut eligible = 0usize;
    let mut ok = true;
    for pair in &pairs {
        let restriction = Polymatroid::restriction(&pair.matroid, &pair.subsets).unwrap();
        if restriction.spanning_element().is_none() {
            continue;
        }
        eligible += 1;
        let a = h_tilde_transform(&pair.matroid, &pair.subsets).unwrap();
        let b = h_tilde_base_form(&pair.matroid, &pair.subsets).unwrap();
        if a != b {
            println!("  FAIL {}", pair.name);
            ok = false;
        }
    }
    ok &= eligible >= 20;
    println!("  {eligible} eligible pairs");
    verdict_line(4, "binomial-transform route equals the base-point closed form", ok);
}

#[test]
fn criterion_05_matroid_transform_matches_tutte_contractions() {
    let members = catalog::matroid_polymatroids("default").unwrap();
    let mut ok = members.len() >= 5;
    for np in &members {
        match matroid_case_check(&np.polymatroid) {
            Ok(None) => {}
            Ok(Some(mismatch)) => {
                println!("  FAIL {}: {mismatch:?}", np.name);
                ok = false;
            }
            Err(e) => {
                println!("  FAIL {}: {e}", np.name);
                ok = false;
            }
        }
    }
    println!("  {} matroid-polymatroids", members.len());
    verdict_line(5, "transform coefficients equal Tutte contraction values", ok);
}

#[test]
fn criterion_06_simplicially_positive_bundles_have_macaulay_hstar() {
    let report = experiments::macaulay_sweep("default", 12).unwrap();
    let ok = report.bundles >= 50 && report.failures.is_empty();
    println!(
        "  {} bundles over {} matroids, {} failures",
        report.bundles,
        report.matroids,
        report.failures.len()
    );
    for f in report.failures.iter().take(5) {
        println!("  FAIL {f}");
    }
    verdict_line(6, "nonnegative flat bundles yield Macaulay h*-vectors", ok);
}

#[test]
fn criterion_07_omega_values_and_route_agreement() {
    let mut ok = omega(&Matroid::uniform(2, 3).unwrap()).unwrap() == 0;
    ok &= omega(&Matroid::uniform(2, 4).unwrap()).unwrap() == 1;
    let agreement = experiments::bundle_route_agreement("default").unwrap();
    ok &= !agreement.is_empty();
    for (name, agree) in &agreement {
        if !agree {
            println!("  FAIL {name}: Minkowski and Möbius extractions differ");
        }
        ok &= agree;
    }
    println!("  {} loopless coloopless matroids compared", agreement.len());
    verdict_line(7, "omega values with both bundle extraction routes agreeing", ok);
}

#[test]
fn criterion_08_full_dimensional_polytopes_give_top_snapper_degree() {
    let mut checked = 0usize;
    let mut ok = true;
    for nm in catalog::loopless_matroids("default").unwrap() {
        let m = &nm.matroid;
        let n = m.n();
        if n < 2 {
            continue;
        }
        let mut candidates: Vec<(String, Polymatroid)> =
            vec![("dual".into(), Polymatroid::matroid_as_polymatroid(&m.dual()))];
        for r in 1..n {
            candidates.push((
                format!("u_{r}_{n}"),
                Polymatroid::matroid_as_polymatroid(&Matroid::uniform(r, n).unwrap()),
            ));
        }
        for (label, p) in candidates {
            if p.base_points().affine_dim() != n - 1 {
                continue;
            }
            checked += 1;
            let bundle = bundle_from_polymatroid(m, &p).unwrap();
            let chi = snapper_bundle(m, &bundle).unwrap();
            let d = snapper_degree(&chi);
            if d != m.rank_total() as usize - 1 {
                println!("  FAIL {} with {label}: degree {d}, rank {}", nm.name, m.rank_total());
                ok = false;
            }
        }
    }
    ok &= checked >= 20;
    println!("  {checked} full-dimensional bundles checked");
    verdict_line(8, "full-dimensional base polytopes give Snapper degree rank-1", ok);
}

/// Brute-force multicomplex realizability for (1, a1, a2): choose a1 of the
/// six variables as the degree-1 monomials, then search all a2-element sets
/// of quadratics for one closed under divisors.
fn multicomplex_realizable(a1: usize, a2: usize) -> bool {
    if a1 > 6 {
        unreachable!("oracle is specified for at most six variables");
    }
    let quadratics: Vec<(usize, usize)> =
        (0..a1).flat_map(|i| (i..a1).map(move |j| (i, j))).collect();
    fn search(
        quadratics: &[(usize, usize)],
        chosen: &mut Vec<(usize, usize)>,
        start: usize,
        want: usize,
        a1: usize,
    ) -> bool {
        if chosen.len() == want {
            // divisor closure: both variables of each quadratic are present
            return chosen.iter().all(|&(i, j)| i < a1 && j < a1);
        }
        for idx in start..quadratics.len() {
            chosen.push(quadratics[idx]);
            if search(quadratics, chosen, idx + 1, want, a1) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    search(&quadratics, &mut Vec::new(), 0, a2, a1)
}

#[test]
fn criterion_09_macaulay_checker_against_multicomplex_search() {
    let start = Instant::now();
    let mut ok = true;
    for a1 in 0..=6i64 {
        // length-2 vectors: a polynomial ring truncated after degree one
        let verdict = is_macaulay(&[BigInt::one(), BigInt::from(a1)]).unwrap();
        ok &= verdict.ok;
        for a2 in 0..=6i64 {
            let verdict =
                is_macaulay(&[BigInt::one(), BigInt::from(a1), BigInt::from(a2)]).unwrap();
            let realizable = multicomplex_realizable(a1 as usize, a2 as usize);
            if verdict.ok != realizable {
                println!("  FAIL (1,{a1},{a2}): checker={} search={realizable}", verdict.ok);
                ok = false;
            }
        }
    }
    let elapsed = start.elapsed();
    ok &= elapsed.as_secs() < 30;
    println!("  49 vectors compared in {elapsed:?}");
    verdict_line(9, "Macaulay bound agrees with order-ideal search", ok);
}

#[test]
fn criterion_10_broken_circuit_h_vector_equals_nabla_hstar() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0usize;
    let mut ok = true;
    for nm in catalog::loopless_matroids("default").unwrap() {
        let m = &nm.matroid;
        if m.n() > 7 {
            continue;
        }
        let bundle = nabla_bundle(m).unwrap();
        let report = hstar_vector(m, &bundle).unwrap();
        let natural: Vec<usize> = (0..m.n()).collect();
        let mut orders = vec![natural.clone()];
        for _ in 0..3 {
            let mut shuffled = natural.clone();
            shuffled.shuffle(&mut rng);
            orders.push(shuffled);
        }
        for order in orders {
            let h = bc_hvector(m, &order).unwrap();
            if h != report.hstar {
                println!("  FAIL {} with order {order:?}: {h:?} vs {:?}", nm.name, report.hstar);
                ok = false;
            }
        }
        checked += 1;
    }
    println!("  {checked} matroids, 4 element orders each");
    verdict_line(10, "broken-circuit h-vector equals the nabla-bundle h*-vector", ok);
}

#[test]
fn errors_carry_structured_witnesses() {
    // not a criterion: a sanity net for the error surface the CLI exposes
    let bad = Matroid::from_rank_table(2, vec![0, 1, 1, 3]);
    match bad {
        Err(e @ Error::AxiomViolation { .. }) => {
            assert_eq!(e.code(), "axiom_violation");
            assert!(e.witness().is_some());
        }
        other => panic!("expected an axiom violation, got {other:?}"),
    }
}
