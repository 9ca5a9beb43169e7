//! Euler-characteristic (Snapper) polynomials of matroids.
//!
//! The augmented characteristic sums rising-binomial monomials over the
//! exponent vectors satisfying Hall-Rado; the non-augmented one uses the
//! dragon Hall-Rado condition.  Feasible vectors are enumerated directly
//! against the matroid, so large subset collections never materialize a
//! `2^m` rank table.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::poly::{factorial, rat, Basis, ExactPoly, Rat};
use crate::subset::Subset;

/// A Laurent monomial in the subset line-bundle classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleSpec {
    pub subsets: Vec<Subset>,
    pub exponents: Vec<i64>,
    pub augmented: bool,
}

impl BundleSpec {
    pub fn new(subsets: Vec<Subset>, exponents: Vec<i64>, augmented: bool) -> Result<BundleSpec> {
        if subsets.len() != exponents.len() {
            return Err(Error::InvalidInput(format!(
                "{} subsets but {} exponents",
                subsets.len(),
                exponents.len()
            )));
        }
        for (index, s) in subsets.iter().enumerate() {
            if s.is_empty() {
                return Err(Error::EmptySubset { index });
            }
        }
        Ok(BundleSpec { subsets, exponents, augmented })
    }
}

/// Enumerate the exponent vectors satisfying (dragon) Hall-Rado, in
/// lexicographic order.  Constraints indexed by sets outside the support are
/// implied, so the DFS bound at depth `j` only scans subsets of the prefix
/// support.  The support is carried as an index list: the number of subsets
/// may exceed any bitmask width, while the support stays below the rank.
pub(crate) fn enumerate_feasible(
    matroid: &Matroid,
    subsets: &[Subset],
    augmented: bool,
) -> Vec<Vec<u32>> {
    let offset = if augmented { 0 } else { 1 };

    let bound = |prefix: &[u32], j: usize| -> u32 {
        let support: Vec<usize> =
            prefix.iter().enumerate().filter(|(_, &v)| v > 0).map(|(i, _)| i).collect();
        let mut best = u32::MAX;
        for choice in 0u64..1 << support.len() {
            let mut partial = 0u32;
            let mut union = subsets[j];
            for (pos, &i) in support.iter().enumerate() {
                if choice >> pos & 1 == 1 {
                    partial += prefix[i];
                    union = union.union(subsets[i]);
                }
            }
            let rk = matroid.rank(union);
            best = best.min(rk.saturating_sub(partial + offset));
        }
        best
    };

    fn dfs(
        matroid: &Matroid,
        subsets: &[Subset],
        bound: &dyn Fn(&[u32], usize) -> u32,
        prefix: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        let j = prefix.len();
        if j == subsets.len() {
            out.push(prefix.clone());
            return;
        }
        let b = bound(prefix, j);
        for v in 0..=b {
            prefix.push(v);
            dfs(matroid, subsets, bound, prefix, out);
            prefix.pop();
        }
    }

    if subsets.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    dfs(matroid, subsets, &bound, &mut Vec::new(), &mut out);
    out
}

/// Augmented Snapper polynomial: one rising-basis monomial per Hall-Rado
/// feasible vector, one variable per subset.
pub fn snapper_aug(matroid: &Matroid, subsets: &[Subset]) -> Result<ExactPoly> {
    check_subsets(subsets)?;
    Ok(indicator_poly(enumerate_feasible(matroid, subsets, true), subsets.len()))
}

/// Non-augmented Snapper polynomial over the dragon Hall-Rado condition.
pub fn snapper_nonaug(matroid: &Matroid, subsets: &[Subset]) -> Result<ExactPoly> {
    matroid.require_loopless()?;
    check_subsets(subsets)?;
    Ok(indicator_poly(enumerate_feasible(matroid, subsets, false), subsets.len()))
}

fn check_subsets(subsets: &[Subset]) -> Result<()> {
    for (index, s) in subsets.iter().enumerate() {
        if s.is_empty() {
            return Err(Error::EmptySubset { index });
        }
    }
    Ok(())
}

fn indicator_poly(points: Vec<Vec<u32>>, m: usize) -> ExactPoly {
    let vars = (1..=m).map(|i| format!("t{i}")).collect();
    ExactPoly::from_terms(vars, Basis::Rising, points.into_iter().map(|k| (k, rat(1))))
}

/// Univariate Snapper polynomial of a line bundle: the multivariate
/// characteristic specialized along `t_i := c_i t`.  Negative Laurent
/// exponents are a polynomial substitution, nothing more.
pub fn snapper_bundle(matroid: &Matroid, bundle: &BundleSpec) -> Result<ExactPoly> {
    let multi = if bundle.augmented {
        snapper_aug(matroid, &bundle.subsets)?
    } else {
        snapper_nonaug(matroid, &bundle.subsets)?
    };
    multi.to_power().substitute_ray(&bundle.exponents)
}

/// Degree of a univariate Snapper polynomial.
pub fn snapper_degree(f: &ExactPoly) -> usize {
    assert_eq!(f.vars().len(), 1, "snapper_degree expects a univariate polynomial");
    f.total_degree()
}

/// Top intersection number `(r-1)! * [t^{r-1}] chi`, an exact integer.
pub fn deg_top(matroid: &Matroid, bundle: &BundleSpec) -> Result<BigInt> {
    let chi = snapper_bundle(matroid, bundle)?;
    let r = matroid.rank_total();
    if r == 0 {
        return Err(Error::InvalidRank { r: 0, n: matroid.n() });
    }
    let lead: Rat = chi.coeff(&[r - 1]) * Rat::from_integer(factorial(r - 1));
    if !lead.is_integer() {
        return Err(Error::NonIntegralDegree);
    }
    Ok(lead.to_integer())
}

/// Evaluate a Snapper polynomial at an integer, as an exact integer.
pub fn snapper_value(chi: &ExactPoly, t: i64) -> BigInt {
    let v = chi.eval_i64(&[t]);
    assert!(v.is_integer(), "Snapper polynomials take integer values at integers");
    v.to_integer()
}
