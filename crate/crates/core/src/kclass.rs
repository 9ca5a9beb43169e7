//! K-class of the degeneration `Y_P`: structure-sheaf expansion over products
//! of linear subspaces, Euler characteristics, the twisted K-polynomial, the
//! `g_P` polynomial, and the Lorentzian-transform polynomial computed by two
//! independent routes.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::matroid::{tutte_at, Matroid};
use crate::poly::{binom_shifted, rat, Basis, ExactPoly, Rat};
use crate::polymatroid::Polymatroid;
use crate::snapper::snapper_aug;
use crate::subset::{table_len, Subset};

/// Integer expansion `[O_{Y_P}] = sum_b c_b [O_{Y_b}]` over tuples `b` inside
/// the cage box.  Only nonzero coefficients are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KExpansion {
    pub cage: Vec<u32>,
    pub coeffs: BTreeMap<Vec<u32>, i64>,
}

impl KExpansion {
    pub fn coeff(&self, b: &[u32]) -> i64 {
        self.coeffs.get(b).copied().unwrap_or(0)
    }

    /// Entries sorted by (total degree descending, then lexicographic).
    pub fn sorted_entries(&self) -> Vec<(Vec<u32>, i64)> {
        let mut out: Vec<(Vec<u32>, i64)> =
            self.coeffs.iter().map(|(b, &c)| (b.clone(), c)).collect();
        out.sort_by(|(a, _), (b, _)| {
            let sa: u32 = a.iter().sum();
            let sb: u32 = b.iter().sum();
            sb.cmp(&sa).then_with(|| a.cmp(b))
        });
        out
    }
}

fn box_layer(cage: &[u32], total: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; cage.len()];
    fn rec(cage: &[u32], total: u32, pos: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pos == cage.len() {
            if total == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for v in 0..=cage[pos].min(total) {
            cur[pos] = v;
            rec(cage, total - v, pos + 1, cur, out);
        }
        cur[pos] = 0;
    }
    rec(cage, total, 0, &mut cur, &mut out);
    out
}

fn in_independence_polytope(p: &Polymatroid, b: &[u32]) -> bool {
    (0..table_len(p.m())).all(|mask| {
        let s = Subset(mask as u32);
        let partial: u32 = s.elements().map(|i| b[i]).sum();
        partial <= p.rank(s)
    })
}

fn in_base_polytope(p: &Polymatroid, b: &[u32]) -> bool {
    b.iter().sum::<u32>() == p.rank_total() && in_independence_polytope(p, b)
}

/// Coefficients by descending total degree: the top layer is the base
/// polytope indicator, lower layers follow `c_b = 1 - sum_{b' > b} c_{b'}`
/// on independence lattice points.  Outside `I(P)` every coefficient
/// vanishes: expanding the structure sheaf of the union by
/// inclusion-exclusion, each intersection is indexed by a componentwise min
/// of base points, which lies in `I(P)`, and the cumulative sum
/// `sum_{b' >= b} c_{b'}` telescopes to 1 exactly when some base point
/// dominates `b`.  Within one layer the entries are independent, so each
/// layer maps in parallel over the previous partial sums.
pub fn knutson_coeffs(p: &Polymatroid) -> KExpansion {
    let r = p.rank_total();
    let cage = p.cage().to_vec();
    let mut coeffs: BTreeMap<Vec<u32>, i64> = BTreeMap::new();
    for total in (0..=r).rev() {
        let layer = box_layer(&cage, total);
        let computed: Vec<(Vec<u32>, i64)> = crate::par::map_slice(&layer, |b| {
            let c = if total == r {
                i64::from(in_base_polytope(p, b))
            } else if !in_independence_polytope(p, b) {
                0
            } else {
                let above: i64 = coeffs
                    .iter()
                    .filter(|(b2, _)| b2.as_slice() != b.as_slice() && dominates(b2, b))
                    .map(|(_, &c)| c)
                    .sum();
                1 - above
            };
            (b.clone(), c)
        });
        for (b, c) in computed {
            if c != 0 {
                coeffs.insert(b, c);
            }
        }
    }
    KExpansion { cage, coeffs }
}

fn dominates(big: &[u32], small: &[u32]) -> bool {
    big.iter().zip(small).all(|(a, b)| a >= b)
}

/// `chi(Y_P, O(k)) = sum_b c_b prod_i binom(k_i + b_i, b_i)`, exact for any
/// integer twist.
pub fn chi_y(p: &Polymatroid, k: &[i64]) -> BigInt {
    assert_eq!(k.len(), p.m());
    let expansion = knutson_coeffs(p);
    chi_y_with(&expansion, k)
}

/// Same as [`chi_y`] against a precomputed expansion.
pub fn chi_y_with(expansion: &KExpansion, k: &[i64]) -> BigInt {
    let mut acc = BigInt::from(0);
    for (b, &c) in &expansion.coeffs {
        let mut term = BigInt::from(c);
        for (i, &bi) in b.iter().enumerate() {
            term *= binom_shifted(&BigInt::from(k[i]), bi);
        }
        acc += term;
    }
    acc
}

/// The characteristic as a shifted-basis polynomial: coefficient `c_b` on
/// `prod t_i^[b_i]`.
pub fn chi_y_poly(p: &Polymatroid) -> ExactPoly {
    let expansion = knutson_coeffs(p);
    let vars = (1..=p.m()).map(|i| format!("t{i}")).collect();
    ExactPoly::from_terms(
        vars,
        Basis::Shifted,
        expansion.coeffs.into_iter().map(|(b, c)| (b, rat(c))),
    )
}

/// Twisted K-polynomial: reindex shifted-basis coefficients by `k -> a - k`.
pub fn twisted_k_poly(chi: &ExactPoly, cage: &[u32]) -> Result<ExactPoly> {
    if chi.basis() != Basis::Shifted {
        return Err(Error::BasisMismatch { expected: Basis::Shifted, found: chi.basis() });
    }
    assert_eq!(cage.len(), chi.vars().len());
    let mut out = ExactPoly::zero(chi.vars().to_vec(), Basis::Power);
    for (exp, c) in chi.terms() {
        if exp.iter().zip(cage).any(|(e, a)| e > a) {
            return Err(Error::DegreeExceedsCage { term: exp.clone() });
        }
        let flipped: Vec<u32> = exp.iter().zip(cage).map(|(e, a)| a - e).collect();
        out.add_term(flipped, c.clone());
    }
    Ok(out)
}

fn transform_vars(m: usize) -> Vec<String> {
    std::iter::once("t0".to_string()).chain((1..=m).map(|i| format!("t{i}"))).collect()
}

/// `g_P(t_0, .., t_m) = sum_{k in I(P)} c_k (-t_0)^{r-|k|} t^k`, homogeneous
/// of degree `r`.
pub fn g_poly(p: &Polymatroid) -> ExactPoly {
    let r = p.rank_total();
    let expansion = knutson_coeffs(p);
    let indep = p.independence_points();
    let mut out = ExactPoly::zero(transform_vars(p.m()), Basis::Power);
    for k in indep.points() {
        let c = expansion.coeff(k);
        if c == 0 {
            continue;
        }
        let total: u32 = k.iter().sum();
        let t0 = r - total;
        let sign = if t0 % 2 == 0 { 1 } else { -1 };
        let mut exp = Vec::with_capacity(p.m() + 1);
        exp.push(t0);
        exp.extend_from_slice(k);
        out.add_term(exp, rat(c * sign));
    }
    out
}

/// Route A for the transform: expand the augmented Snapper polynomial in the
/// shifted basis, strip the alternating signs, homogenize by `t0`.
pub fn h_tilde_transform(matroid: &Matroid, subsets: &[Subset]) -> Result<ExactPoly> {
    let restriction = Polymatroid::restriction(matroid, subsets)?;
    let r = restriction.rank_total();
    let chi = snapper_aug(matroid, subsets)?;
    let shifted = chi.convert_basis(Basis::Shifted);
    let mut stripped = ExactPoly::zero(shifted.vars().to_vec(), Basis::Power);
    for (exp, c) in shifted.terms() {
        let total: u32 = exp.iter().sum();
        debug_assert!(total <= r);
        let sign = if (r - total) % 2 == 0 { 1 } else { -1 };
        stripped.add_term(exp.clone(), c * rat(sign));
    }
    stripped.homogenize(r as usize, "t0")
}

/// Route B: the closed form over base-polytope lattice points, available when
/// some subset spans.  With `i*` a spanning coordinate,
/// `H~ = sum_{b in B(P)} t_{i*}^{b_{i*}} prod_{i != i*} (t_i^{b_i} + t0 t_i^{b_i - 1})`,
/// where a factor with `b_i = 0` degenerates to `1`.
pub fn h_tilde_base_form(matroid: &Matroid, subsets: &[Subset]) -> Result<ExactPoly> {
    let restriction = Polymatroid::restriction(matroid, subsets)?;
    let star = restriction.spanning_element().ok_or(Error::NoSpanningSubset)?;
    let m = restriction.m();
    let mut out = ExactPoly::zero(transform_vars(m), Basis::Power);
    for b in restriction.base_points().points() {
        let movable: Vec<usize> = (0..m).filter(|&i| i != star && b[i] > 0).collect();
        for choice in Subset::full(movable.len()).subsets() {
            let mut exp = vec![0u32; m + 1];
            exp[0] = choice.card();
            exp[star + 1] = b[star];
            for (pos, &i) in movable.iter().enumerate() {
                exp[i + 1] = if choice.contains(pos) { b[i] - 1 } else { b[i] };
            }
            out.add_term(exp, rat(1));
        }
    }
    Ok(out)
}

/// The Lorentzian-transform polynomial.  Route A always runs; when a spanning
/// subset exists route B runs too and the two are asserted equal.
pub fn h_tilde(matroid: &Matroid, subsets: &[Subset]) -> Result<ExactPoly> {
    let a = h_tilde_transform(matroid, subsets)?;
    match h_tilde_base_form(matroid, subsets) {
        Ok(b) => assert_eq!(a, b, "transform routes disagree"),
        Err(Error::NoSpanningSubset) => {}
        Err(e) => return Err(e),
    }
    Ok(a)
}

/// A coefficient of the transform that disagrees with the Tutte prediction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseMismatch {
    pub exponent: Vec<u32>,
    pub from_transform: Rat,
    pub from_tutte: Rat,
}

/// For a polymatroid that is a matroid `N` on `[m]`, the transform must be
/// `sum_I T_{N/I}(0,1) t^{e_I} t0^{r-|I|}` over independent sets `I`.
/// Returns the first mismatching coefficient, or `None` when the identity
/// holds exactly.
pub fn matroid_case_check(p: &Polymatroid) -> Result<Option<CaseMismatch>> {
    let n = p.try_into_matroid()?;
    let singletons: Vec<Subset> = (0..n.n()).map(Subset::singleton).collect();
    let transform = h_tilde_transform(&n, &singletons)?;
    let r = n.rank_total();
    let mut expected = ExactPoly::zero(transform_vars(n.n()), Basis::Power);
    for mask in 0..table_len(n.n()) {
        let i = Subset(mask as u32);
        if !n.is_independent(i) {
            continue;
        }
        let value = tutte_at(&n.contract(i), 0, 1);
        if value == 0 {
            continue;
        }
        let mut exp = vec![0u32; n.n() + 1];
        exp[0] = r - i.card();
        for e in i.elements() {
            exp[e + 1] = 1;
        }
        expected.add_term(exp, rat(value));
    }
    let diff = transform.sub(&expected);
    if diff.is_zero() {
        return Ok(None);
    }
    let exponent = diff.support()[0].clone();
    Ok(Some(CaseMismatch {
        from_transform: transform.coeff(&exponent),
        from_tutte: expected.coeff(&exponent),
        exponent,
    }))
}
