//! h*-vectors of line bundles, Macaulay certification, the beta-invariant
//! Minkowski decomposition, bundle extraction from polymatroids, Speyer's
//! omega invariant, and the broken-circuit cross-check.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::poly::{binom_shifted, factorial, ExactPoly};
use crate::polymatroid::Polymatroid;
use crate::snapper::{snapper_bundle, snapper_degree, snapper_value, BundleSpec};
use crate::subset::{table_len, Subset};

/// `binom(n, k)` for BigInt `n >= 0`.
fn choose(n: &BigInt, k: u32) -> BigInt {
    let shifted = n - k;
    binom_shifted(&shifted, k)
}

fn choose_u(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MacaulayVerdict {
    pub ok: bool,
    pub violation_index: Option<usize>,
}

/// The unique binomial expansion `n = binom(k_d, d) + .. + binom(k_δ, δ)`
/// with `k_d > k_{d-1} > .. > k_δ >= δ >= 1`, greedily.
pub fn macaulay_rep(n: &BigInt, d: u32) -> Result<Vec<(BigInt, u32)>> {
    if !n.is_positive() {
        return Err(Error::InvalidInput(format!("macaulay representation needs n >= 1, got {n}")));
    }
    if d == 0 {
        return Err(Error::InvalidInput("macaulay representation needs d >= 1".into()));
    }
    let mut rest = n.clone();
    let mut out = Vec::new();
    let mut i = d;
    while rest.is_positive() {
        // largest k with binom(k, i) <= rest, by doubling then bisecting
        let mut lo = BigInt::from(i);
        let mut hi = lo.clone() + 1u32;
        while choose(&hi, i) <= rest {
            let span = &hi - &lo;
            lo = hi.clone();
            hi += span * 2u32 + 1u32;
        }
        while &lo + 1u32 < hi {
            let mid = (&lo + &hi) / 2u32;
            if choose(&mid, i) <= rest {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        rest -= choose(&lo, i);
        out.push((lo, i));
        debug_assert!(i >= 1);
        i -= 1;
    }
    Ok(out)
}

/// Macaulay's upper bound `n^<d>`.
pub fn macaulay_upper(n: &BigInt, d: u32) -> Result<BigInt> {
    let rep = macaulay_rep(n, d)?;
    Ok(rep.iter().map(|(k, i)| choose(&(k + 1u32), i + 1)).sum())
}

/// O-sequence test: `v_0 = 1`, entries nonnegative, and
/// `v_{t+1} <= v_t^<t>` for every `t >= 1`.  Reports the index of the first
/// offending entry.
pub fn is_macaulay(v: &[BigInt]) -> Result<MacaulayVerdict> {
    if v.is_empty() {
        return Err(Error::InvalidInput("empty vector".into()));
    }
    if !v[0].is_one() {
        return Ok(MacaulayVerdict { ok: false, violation_index: Some(0) });
    }
    for (i, x) in v.iter().enumerate() {
        if x.is_negative() {
            return Ok(MacaulayVerdict { ok: false, violation_index: Some(i) });
        }
    }
    for t in 1..v.len().saturating_sub(1) {
        let next = &v[t + 1];
        let ok = if v[t].is_zero() {
            next.is_zero()
        } else {
            *next <= macaulay_upper(&v[t], t as u32)?
        };
        if !ok {
            return Ok(MacaulayVerdict { ok: false, violation_index: Some(t + 1) });
        }
    }
    Ok(MacaulayVerdict { ok: true, violation_index: None })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HStarReport {
    pub snapper: ExactPoly,
    pub d: usize,
    pub hstar: Vec<BigInt>,
    pub macaulay: MacaulayVerdict,
    pub top_identity_checked: bool,
}

/// h*-vector of a line bundle: the numerator of
/// `sum_t chi(t) q^t = h*(q) / (1-q)^{d+1}` with `d = deg chi`, extracted by
/// the alternating binomial transform.  The defining series identity and the
/// top-coefficient identity `h*_d = (-1)^d chi(-1)` are both re-verified on
/// every call.
pub fn hstar_vector(matroid: &Matroid, bundle: &BundleSpec) -> Result<HStarReport> {
    let chi = snapper_bundle(matroid, bundle)?;
    let d = snapper_degree(&chi);
    let chi_at = |t: i64| snapper_value(&chi, t);
    assert!(chi_at(0).is_one(), "every Snapper polynomial takes value 1 at 0");
    let mut hstar = Vec::with_capacity(d + 1);
    for k in 0..=d as i64 {
        let mut acc = BigInt::zero();
        for j in 0..=k {
            let sign = if j % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            acc += sign * choose_u(d as u32 + 1, j as u32) * chi_at(k - j);
        }
        hstar.push(acc);
    }
    // series identity out to d+3
    for t in 0..=(d as i64 + 3) {
        let mut acc = BigInt::zero();
        for (k, h) in hstar.iter().enumerate() {
            acc += h * binom_shifted(&BigInt::from(t - k as i64), d as u32);
        }
        assert_eq!(acc, chi_at(t), "h* series identity failed at t = {t}");
    }
    let top_sign = if d % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    assert_eq!(hstar[d], top_sign * chi_at(-1), "top-coefficient identity failed");
    let macaulay = is_macaulay(&hstar)?;
    Ok(HStarReport { snapper: chi, d, hstar, macaulay, top_identity_checked: true })
}

/// Minkowski-decomposition coefficients of the dual base polytope: every
/// subset `S` with `|S| >= 2` contributes `(-1)^{|S|-rk(S)+1} β(M|_S)` to its
/// closure.  Flats with aggregate zero are dropped.
pub fn minkowski_coeffs_dual(matroid: &Matroid) -> Result<BTreeMap<Subset, i64>> {
    matroid.require_loopless()?;
    let mut agg: BTreeMap<Subset, i64> = BTreeMap::new();
    for mask in 0..table_len(matroid.n()) {
        let s = Subset(mask as u32);
        if s.card() < 2 {
            continue;
        }
        let restricted = matroid.restriction(s);
        if !restricted.is_connected() {
            continue;
        }
        let beta = restricted.beta();
        if beta == 0 {
            continue;
        }
        let sign = if (s.card() - matroid.rank(s) + 1) % 2 == 0 { 1 } else { -1 };
        *agg.entry(matroid.closure(s)).or_insert(0) += sign * beta;
    }
    agg.retain(|_, c| *c != 0);
    Ok(agg)
}

/// Solve for the flat-supported exponents `c_F` with
/// `sum_{∅ != G ⊆ F} c_G = rk_P(E) - rk_P(E \ F)` over all nonempty flats
/// `F`, by Möbius inversion in the (cardinality, mask) order.  Zero exponents
/// are dropped from the resulting bundle.
pub fn bundle_from_polymatroid(matroid: &Matroid, p: &Polymatroid) -> Result<BundleSpec> {
    matroid.require_loopless()?;
    if p.m() != matroid.n() {
        return Err(Error::InvalidInput(format!(
            "polymatroid on {} elements does not match ground set of size {}",
            p.m(),
            matroid.n()
        )));
    }
    let full = matroid.ground_set();
    let r_total = p.rank_total() as i64;
    let flats: Vec<Subset> =
        matroid.flats().into_iter().filter(|f| !f.is_empty()).collect();
    let mut coeff: BTreeMap<Subset, i64> = BTreeMap::new();
    for (idx, &f) in flats.iter().enumerate() {
        let goal = r_total - p.rank(full.difference(f)) as i64;
        let below: i64 = flats[..idx]
            .iter()
            .filter(|g| g.is_subset_of(f) && **g != f)
            .map(|g| coeff.get(g).copied().unwrap_or(0))
            .sum();
        let c = goal - below;
        if c != 0 {
            coeff.insert(f, c);
        }
    }
    let (subsets, exponents): (Vec<Subset>, Vec<i64>) = coeff.into_iter().unzip();
    BundleSpec::new(subsets, exponents, false)
}

/// Coefficient report for the simplicial-positivity hypothesis, one entry
/// per connected flat of rank at least two (plus any other flat that picks
/// up a nonzero aggregate).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypothesisReport {
    pub entries: Vec<(Subset, i64)>,
    pub all_nonnegative: bool,
}

pub fn simplicially_positive_hypothesis(matroid: &Matroid) -> Result<HypothesisReport> {
    require_no_loop_or_coloop(matroid)?;
    let coeffs = minkowski_coeffs_dual(matroid)?;
    let mut keys: Vec<Subset> = matroid
        .flats()
        .into_iter()
        .filter(|&f| matroid.rank(f) >= 2 && matroid.restriction(f).is_connected())
        .collect();
    for f in coeffs.keys() {
        if !keys.contains(f) {
            keys.push(*f);
        }
    }
    keys.sort_by_key(|s| (s.card(), s.0));
    let entries: Vec<(Subset, i64)> =
        keys.into_iter().map(|f| (f, coeffs.get(&f).copied().unwrap_or(0))).collect();
    let all_nonnegative = entries.iter().all(|(_, c)| *c >= 0);
    Ok(HypothesisReport { entries, all_nonnegative })
}

fn require_no_loop_or_coloop(matroid: &Matroid) -> Result<()> {
    for i in 0..matroid.n() {
        if matroid.is_loop(i) {
            return Err(Error::HasLoopOrColoop { element: i, kind: "loop" });
        }
        if matroid.is_coloop(i) {
            return Err(Error::HasLoopOrColoop { element: i, kind: "coloop" });
        }
    }
    Ok(())
}

/// Speyer's omega: per connected component, extract the dual-base-polytope
/// bundle and evaluate its Snapper polynomial at -1 with the parity factor
/// `(-1)^{r-1}`; components multiply.
pub fn omega(matroid: &Matroid) -> Result<i64> {
    require_no_loop_or_coloop(matroid)?;
    let mut product: i64 = 1;
    for comp in matroid.connected_components() {
        let mj = matroid.restriction(comp);
        let dual = Polymatroid::matroid_as_polymatroid(&mj.dual());
        let bundle = bundle_from_polymatroid(&mj, &dual)?;
        let chi = snapper_bundle(&mj, &bundle)?;
        let value = snapper_value(&chi, -1);
        let r = mj.rank_total();
        let sign = if (r - 1) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        let w = sign * value;
        product *= i64::try_from(w).expect("omega fits in i64 at table scale");
    }
    Ok(product)
}

/// h-vector of the reduced broken-circuit complex under the given element
/// order, by brute-force face enumeration.  `order[0]` is the least element.
pub fn bc_hvector(matroid: &Matroid, order: &[usize]) -> Result<Vec<BigInt>> {
    matroid.require_loopless()?;
    let n = matroid.n();
    if order.len() != n || {
        let mut seen = vec![false; n];
        order.iter().any(|&e| e >= n || std::mem::replace(&mut seen[e], true))
    } {
        return Err(Error::InvalidInput("order must be a permutation of the ground set".into()));
    }
    let mut pos = vec![0usize; n];
    for (p, &e) in order.iter().enumerate() {
        pos[e] = p;
    }
    let broken: Vec<Subset> = matroid
        .circuits()
        .into_iter()
        .map(|c| {
            let least = c.elements().min_by_key(|&e| pos[e]).unwrap();
            c.without(least)
        })
        .collect();
    let vertex_set = matroid.ground_set().without(order[0]);
    let r = matroid.rank_total() as usize;
    let d = r - 1;
    let mut f = vec![BigInt::zero(); r + 1]; // f[i] counts faces of size i
    for s in vertex_set.subsets() {
        if broken.iter().any(|b| b.is_subset_of(s)) {
            continue;
        }
        let size = s.card() as usize;
        assert!(size <= d, "reduced broken-circuit faces never exceed rank - 1");
        f[size] += 1;
    }
    // h_k = sum_i (-1)^{k-i} binom(d-i, k-i) f_i
    let mut h = Vec::with_capacity(r);
    for k in 0..=d {
        let mut acc = BigInt::zero();
        for (i, fi) in f.iter().enumerate().take(k + 1) {
            let sign = if (k - i) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            acc += sign * choose_u((d - i) as u32, (k - i) as u32) * fi;
        }
        h.push(acc);
    }
    Ok(h)
}

/// The nabla bundle: extracted from the corank-one uniform polymatroid.
pub fn nabla_bundle(matroid: &Matroid) -> Result<BundleSpec> {
    let n = matroid.n();
    let nabla = Polymatroid::matroid_as_polymatroid(&Matroid::uniform(n - 1, n)?);
    bundle_from_polymatroid(matroid, &nabla)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotonicityReport {
    pub h1: Vec<BigInt>,
    pub h2: Vec<BigInt>,
    pub holds: bool,
}

/// Compare h*-vectors along a base-polytope inclusion.  Containment is
/// certified by rank domination at equal total rank, cross-checked against
/// the lattice points themselves; the componentwise comparison is reported,
/// never asserted.
pub fn monotonicity_check(
    matroid: &Matroid,
    p1: &Polymatroid,
    p2: &Polymatroid,
) -> Result<MonotonicityReport> {
    if p1.m() != p2.m() {
        return Err(Error::NotNested { reason: "different ground sets".into() });
    }
    if p1.rank_total() != p2.rank_total() {
        return Err(Error::NotNested {
            reason: format!(
                "total ranks differ: {} vs {}",
                p1.rank_total(),
                p2.rank_total()
            ),
        });
    }
    for mask in 0..table_len(p1.m()) {
        let s = Subset(mask as u32);
        if p1.rank(s) > p2.rank(s) {
            return Err(Error::NotNested {
                reason: format!("rank of {s} is {} > {}", p1.rank(s), p2.rank(s)),
            });
        }
    }
    for b in p1.base_points().points() {
        assert!(p2.base_points().contains(b), "rank domination must imply point containment");
    }
    for k in p1.independence_points().points() {
        assert!(p2.independence_points().contains(k));
    }
    let h1 = hstar_vector(matroid, &bundle_from_polymatroid(matroid, p1)?)?.hstar;
    let h2 = hstar_vector(matroid, &bundle_from_polymatroid(matroid, p2)?)?.hstar;
    let len = h1.len().max(h2.len());
    let get = |v: &[BigInt], i: usize| v.get(i).cloned().unwrap_or_else(BigInt::zero);
    let holds = (0..len).all(|i| get(&h1, i) <= get(&h2, i));
    Ok(MonotonicityReport { h1, h2, holds })
}
