//! Catalog sweeps behind the `experiment` CLI subcommands and the acceptance
//! suite.  Sweeps report; the conjecture harnesses never assert.

use serde::Serialize;

use crate::catalog::{loopless_matroids, nonneg_flat_bundles, NamedPair, NamedPolymatroid};
use crate::error::Result;
use crate::hstar::{bundle_from_polymatroid, hstar_vector, monotonicity_check};
use crate::kclass::{chi_y_with, g_poly, h_tilde, knutson_coeffs};
use crate::lorentzian::is_denorm_lorentzian;
use crate::matroid::Matroid;
use crate::polymatroid::Polymatroid;
use crate::snapper::snapper_aug;

#[derive(Clone, Debug, Serialize)]
pub struct Theorem11Report {
    pub pairs: usize,
    pub points: usize,
    pub mismatches: Vec<String>,
}

/// Compare the Hall-Rado characteristic against the K-class expansion on the
/// full integer grid `0 <= k_i <= kmax`, exactly.
pub fn theorem11_sweep(pairs: &[NamedPair], kmax: i64) -> Result<Theorem11Report> {
    let mut points = 0usize;
    let mut mismatches = Vec::new();
    for pair in pairs {
        let restriction = Polymatroid::restriction(&pair.matroid, &pair.subsets)?;
        let expansion = knutson_coeffs(&restriction);
        let chi = snapper_aug(&pair.matroid, &pair.subsets)?;
        let m = pair.subsets.len();
        let grid = (kmax as usize + 1).pow(m as u32);
        let bad = crate::par::map_range(grid, |idx| {
            let mut k = vec![0i64; m];
            let mut rest = idx;
            for slot in k.iter_mut() {
                *slot = (rest % (kmax as usize + 1)) as i64;
                rest /= kmax as usize + 1;
            }
            let lhs = chi.eval_i64(&k);
            assert!(lhs.is_integer(), "Snapper values at integer points are integers");
            let rhs = chi_y_with(&expansion, &k);
            if lhs.to_integer() != rhs {
                Some(format!("{}: k={k:?}", pair.name))
            } else {
                None
            }
        });
        points += grid;
        mismatches.extend(bad.into_iter().flatten());
    }
    Ok(Theorem11Report { pairs: pairs.len(), points, mismatches })
}

#[derive(Clone, Debug, Serialize)]
pub struct LorentzianSweepEntry {
    pub name: String,
    pub spanning: bool,
    pub denorm_lorentzian: bool,
    /// `g_P` against the transform of the multisymmetric lift, when the lift
    /// fits under the ground-set cap.
    pub matches_lift_transform: Option<bool>,
}

pub fn lorentzian_sweep(polys: &[NamedPolymatroid]) -> Result<Vec<LorentzianSweepEntry>> {
    polys
        .iter()
        .map(|np| {
            let p = &np.polymatroid;
            let g = g_poly(p);
            let verdict = is_denorm_lorentzian(&g)?;
            let total: u32 = p.cage().iter().sum();
            let matches_lift_transform = if total as usize <= crate::subset::Subset::CAP {
                let (matroid, blocks) = p.multisymmetric_lift()?;
                // a zero cage entry means an empty block; its variable is
                // dead in both polynomials, so the transform runs on the
                // nonempty blocks and is re-embedded over all coordinates
                let live: Vec<usize> =
                    (0..p.m()).filter(|&i| !blocks[i].is_empty()).collect();
                let live_blocks: Vec<crate::subset::Subset> =
                    live.iter().map(|&i| blocks[i]).collect();
                let h_small = h_tilde(&matroid, &live_blocks)?;
                let mut h = crate::poly::ExactPoly::zero(g.vars().to_vec(), g.basis());
                for (exp, c) in h_small.terms() {
                    let mut full = vec![0u32; p.m() + 1];
                    full[0] = exp[0];
                    for (pos, &i) in live.iter().enumerate() {
                        full[i + 1] = exp[pos + 1];
                    }
                    h.add_term(full, c.clone());
                }
                Some(h == g)
            } else {
                None
            };
            Ok(LorentzianSweepEntry {
                name: np.name.clone(),
                spanning: p.spanning_element().is_some(),
                denorm_lorentzian: verdict.verdict,
                matches_lift_transform,
            })
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct MacaulaySweepReport {
    pub matroids: usize,
    pub bundles: usize,
    pub failures: Vec<String>,
}

/// h*-vectors of all-nonnegative flat bundles; every one must be a Macaulay
/// vector with leading entry one.
pub fn macaulay_sweep(catalog: &str, per_matroid: usize) -> Result<MacaulaySweepReport> {
    let hosts = loopless_matroids(catalog)?;
    let mut jobs: Vec<(String, Matroid, crate::snapper::BundleSpec)> = Vec::new();
    for nm in &hosts {
        for (i, bundle) in nonneg_flat_bundles(&nm.matroid, per_matroid).into_iter().enumerate() {
            jobs.push((format!("{}#{i}", nm.name), nm.matroid.clone(), bundle));
        }
    }
    let outcomes = crate::par::map_slice(&jobs, |(name, matroid, bundle)| {
        match hstar_vector(matroid, bundle) {
            Ok(report) => {
                if report.macaulay.ok {
                    None
                } else {
                    Some(format!(
                        "{name}: h* {:?} violates Macaulay at {:?}",
                        report.hstar, report.macaulay.violation_index
                    ))
                }
            }
            Err(e) => Some(format!("{name}: {e}")),
        }
    });
    Ok(MacaulaySweepReport {
        matroids: hosts.len(),
        bundles: jobs.len(),
        failures: outcomes.into_iter().flatten().collect(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct MonotonicityEntry {
    pub name: String,
    pub holds: bool,
    pub h1: Vec<String>,
    pub h2: Vec<String>,
}

/// Nested-polytope h* comparisons: the dual base polytope of each connected
/// catalog matroid against the dominating uniform one, plus a boolean-host
/// polytope pair.  Reported, never asserted.
pub fn monotonicity_experiment(catalog: &str) -> Result<Vec<MonotonicityEntry>> {
    let mut out = Vec::new();
    for nm in loopless_matroids(catalog)? {
        let m = &nm.matroid;
        let n = m.n();
        let r = m.rank_total() as usize;
        if n < 2 || r == 0 || n == r || !m.is_connected() {
            continue;
        }
        let p1 = Polymatroid::matroid_as_polymatroid(&m.dual());
        let p2 = Polymatroid::matroid_as_polymatroid(&Matroid::uniform(n - r, n)?);
        let report = monotonicity_check(m, &p1, &p2)?;
        out.push(MonotonicityEntry {
            name: format!("{}: dual vs uniform", nm.name),
            holds: report.holds,
            h1: report.h1.iter().map(|h| h.to_string()).collect(),
            h2: report.h2.iter().map(|h| h.to_string()).collect(),
        });
    }
    // boolean host: polytope containment is classical h* monotonicity
    let b3 = Matroid::uniform(3, 3)?;
    let p1 = Polymatroid::from_rank_table(3, vec![1; 3], vec![0, 1, 1, 1, 0, 1, 1, 1])?;
    let p2 = Polymatroid::matroid_as_polymatroid(&Matroid::uniform(1, 3)?);
    let report = monotonicity_check(&b3, &p1, &p2)?;
    out.push(MonotonicityEntry {
        name: "boolean3: segment vs simplex".into(),
        holds: report.holds,
        h1: report.h1.iter().map(|h| h.to_string()).collect(),
        h2: report.h2.iter().map(|h| h.to_string()).collect(),
    });
    Ok(out)
}

/// Extract the dual-base bundle for every loopless catalog matroid twice --
/// once through the beta-invariant Minkowski decomposition, once through
/// Möbius inversion -- and compare the exponent maps.
pub fn bundle_route_agreement(catalog: &str) -> Result<Vec<(String, bool)>> {
    let mut out = Vec::new();
    for nm in loopless_matroids(catalog)? {
        let m = &nm.matroid;
        if (0..m.n()).any(|i| m.is_coloop(i)) {
            continue;
        }
        let minkowski = crate::hstar::minkowski_coeffs_dual(m)?;
        let bundle =
            bundle_from_polymatroid(m, &Polymatroid::matroid_as_polymatroid(&m.dual()))?;
        let from_mobius: std::collections::BTreeMap<_, _> =
            bundle.subsets.iter().copied().zip(bundle.exponents.iter().copied()).collect();
        out.push((nm.name.clone(), minkowski == from_mobius));
    }
    Ok(out)
}
