//! Exact certification of Lorentzian and denormalized-Lorentzian polynomials.

use num_traits::Signed;

use crate::error::Result;
use crate::poly::{hessian_signature, ExactPoly, Signature};
use crate::polymatroid::{is_m_convex, LatticePointSet, MConvexFailure, Polymatroid};
use crate::subset::{table_len, Subset};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LorentzianFailure {
    NotHomogeneous,
    NegativeCoefficient { term: Vec<u32> },
    SupportNotMConvex { witness: MConvexFailure },
    BadSignature { derivative: Vec<u32>, signature: Signature },
}

impl std::fmt::Display for LorentzianFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LorentzianFailure::NotHomogeneous => write!(f, "not homogeneous"),
            LorentzianFailure::NegativeCoefficient { term } => {
                write!(f, "negative coefficient on {term:?}")
            }
            LorentzianFailure::SupportNotMConvex { witness } => {
                write!(f, "support is not M-convex: {witness}")
            }
            LorentzianFailure::BadSignature { derivative, signature } => {
                write!(f, "Hessian of derivative {derivative:?} has signature {signature}")
            }
        }
    }
}

/// Outcome of a Lorentzian test; `verdict` is true iff `failure` is absent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LorentzianVerdict {
    pub verdict: bool,
    pub failure: Option<LorentzianFailure>,
}

impl LorentzianVerdict {
    fn pass() -> Self {
        LorentzianVerdict { verdict: true, failure: None }
    }

    fn fail(failure: LorentzianFailure) -> Self {
        LorentzianVerdict { verdict: false, failure: Some(failure) }
    }
}

/// All multi-indices of total degree `d` in `m` coordinates.
fn multi_indices(m: usize, d: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; m];
    fn rec(m: usize, left: u32, pos: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pos == m - 1 {
            cur[pos] = left;
            out.push(cur.clone());
            return;
        }
        for v in 0..=left {
            cur[pos] = v;
            rec(m, left - v, pos + 1, cur, out);
        }
    }
    if m == 0 {
        if d == 0 {
            out.push(vec![]);
        }
        return out;
    }
    rec(m, d, 0, &mut cur, &mut out);
    out
}

/// Checks, in order: nonnegative coefficients, homogeneity, M-convexity of
/// the support, and for degree at least two the signature condition on every
/// nonzero `(d-2)`-th partial derivative.  For degree below two the Hessian
/// condition is vacuous.
pub fn is_lorentzian(f: &ExactPoly) -> LorentzianVerdict {
    let f = f.to_power();
    if let Some((term, _)) = f.terms().find(|(_, c)| c.is_negative()) {
        return LorentzianVerdict::fail(LorentzianFailure::NegativeCoefficient {
            term: term.clone(),
        });
    }
    let Some(d) = f.homogeneous_degree() else {
        return LorentzianVerdict::fail(LorentzianFailure::NotHomogeneous);
    };
    let support = LatticePointSet::new(f.vars().len(), f.support());
    if let Err(witness) = is_m_convex(&support) {
        return LorentzianVerdict::fail(LorentzianFailure::SupportNotMConvex { witness });
    }
    if f.vars().len() <= 4 {
        assert_support_is_base_polytope(&support);
    }
    if d < 2 {
        return LorentzianVerdict::pass();
    }
    let alphas = multi_indices(f.vars().len(), d as u32 - 2);
    let bad = crate::par::find_map_range(alphas.len(), |i| {
        let alpha = &alphas[i];
        let q = f.derivative_multi(alpha);
        if q.is_zero() {
            return None;
        }
        let signature = hessian_signature(&q).expect("derivative of a degree-d form is quadratic");
        if signature.positives > 1 {
            Some(LorentzianFailure::BadSignature { derivative: alpha.clone(), signature })
        } else {
            None
        }
    });
    match bad {
        Some(failure) => LorentzianVerdict::fail(failure),
        None => LorentzianVerdict::pass(),
    }
}

/// `f` is denormalized Lorentzian iff its normalization is Lorentzian.
pub fn is_denorm_lorentzian(f: &ExactPoly) -> Result<LorentzianVerdict> {
    let n = f.to_power().normalize()?;
    Ok(is_lorentzian(&n))
}

/// Exchange-passing supports in few coordinates are re-derived as the lattice
/// points of the base polytope of the rank function of their partial-sum
/// maxima; a mismatch would mean the exchange test and the polytope
/// description disagree, which cannot happen.
fn assert_support_is_base_polytope(support: &LatticePointSet) {
    let m = support.dim();
    if m == 0 || support.is_empty() {
        return;
    }
    let mut table = vec![0u32; table_len(m)];
    for mask in 0..table_len(m) {
        let s = Subset(mask as u32);
        table[mask] = support
            .points()
            .iter()
            .map(|p| s.elements().map(|i| p[i]).sum())
            .max()
            .unwrap();
    }
    let cage: Vec<u32> = (0..m).map(|i| table[Subset::singleton(i).index()]).collect();
    let p = Polymatroid::from_rank_table(m, cage, table)
        .expect("partial-sum maxima of an M-convex set form a polymatroid");
    assert_eq!(
        p.base_points().points(),
        support.points(),
        "M-convex support must be the lattice points of its base polytope"
    );
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kclass::g_poly;
    use crate::poly::{rat, Basis};

    fn vars3() -> Vec<String> {
        vec!["t0".into(), "t1".into(), "t2".into()]
    }

    #[test]
    fn transformed_quadric_fails_on_signature() {
        let f = ExactPoly::from_terms(
            vars3(),
            Basis::Power,
            [
                (vec![0, 2, 0], rat(4)),
                (vec![0, 1, 1], rat(4)),
                (vec![0, 0, 2], rat(1)),
                (vec![1, 1, 0], rat(12)),
                (vec![1, 0, 1], rat(5)),
                (vec![2, 0, 0], rat(2)),
            ],
        );
        let v = is_lorentzian(&f);
        assert!(!v.verdict);
        match v.failure.unwrap() {
            LorentzianFailure::BadSignature { derivative, signature } => {
                assert_eq!(derivative, vec![0, 0, 0]);
                assert_eq!(signature, Signature { positives: 2, negatives: 1, zeros: 0 });
            }
            other => panic!("expected signature failure, got {other:?}"),
        }
    }

    #[test]
    fn linear_simplex_passes() {
        let f = ExactPoly::from_terms(
            vars3(),
            Basis::Power,
            [(vec![1, 0, 0], rat(1)), (vec![0, 1, 0], rat(1)), (vec![0, 0, 1], rat(1))],
        );
        assert!(is_lorentzian(&f).verdict);
    }

    #[test]
    fn rank_deficient_quadric_passes() {
        let f = ExactPoly::from_terms(
            vars3(),
            Basis::Power,
            [(vec![1, 0, 1], rat(1)), (vec![0, 1, 1], rat(1)), (vec![0, 0, 2], rat(1))],
        );
        assert!(is_lorentzian(&f).verdict);
    }

    #[test]
    fn denormalized_examples() {
        // the transform of the product-of-lines characteristic: signs stripped,
        // homogenized but not yet normalized
        let f = ExactPoly::from_terms(
            vars3(),
            Basis::Power,
            [
                (vec![0, 2, 0], rat(8)),
                (vec![0, 1, 1], rat(4)),
                (vec![0, 0, 2], rat(2)),
                (vec![1, 1, 0], rat(12)),
                (vec![1, 0, 1], rat(5)),
                (vec![2, 0, 0], rat(4)),
            ],
        );
        let v = is_denorm_lorentzian(&f).unwrap();
        assert!(!v.verdict);
        match v.failure.unwrap() {
            LorentzianFailure::BadSignature { signature, .. } => {
                assert_eq!(signature, Signature { positives: 2, negatives: 1, zeros: 0 });
            }
            other => panic!("expected signature failure, got {other:?}"),
        }

        let p_star =
            Polymatroid::from_rank_table(2, vec![1, 2], vec![0, 1, 2, 2]).unwrap();
        assert!(is_denorm_lorentzian(&g_poly(&p_star)).unwrap().verdict);

        let single = ExactPoly::from_terms(
            vec!["t1".to_string()],
            Basis::Power,
            [(vec![5], rat(1))],
        );
        assert!(is_denorm_lorentzian(&single).unwrap().verdict);
    }

    #[test]
    fn negative_coefficient_flagged() {
        let f = ExactPoly::from_terms(
            vars3(),
            Basis::Power,
            [(vec![1, 1, 0], rat(-1)), (vec![0, 1, 1], rat(1))],
        );
        let v = is_lorentzian(&f);
        assert_eq!(
            v.failure,
            Some(LorentzianFailure::NegativeCoefficient { term: vec![1, 1, 0] })
        );
    }

    #[test]
    fn inhomogeneous_flagged() {
        let f = ExactPoly::from_terms(
            vars3(),
            Basis::Power,
            [(vec![1, 0, 0], rat(1)), (vec![1, 1, 0], rat(1))],
        );
        assert_eq!(is_lorentzian(&f).failure, Some(LorentzianFailure::NotHomogeneous));
    }

    #[test]
    fn non_m_convex_support_flagged() {
        let f = ExactPoly::from_terms(
            vec!["t1".into(), "t2".into()],
            Basis::Power,
            [(vec![2, 0], rat(1)), (vec![0, 2], rat(1))],
        );
        let v = is_lorentzian(&f);
        assert!(matches!(v.failure, Some(LorentzianFailure::SupportNotMConvex { .. })));
    }

    #[test]
    fn products_of_nonnegative_linear_forms_pass() {
        let vs: Vec<String> = vec!["t1".into(), "t2".into(), "t3".into()];
        let forms = [
            vec![(vec![1, 0, 0], rat(1)), (vec![0, 1, 0], rat(2)), (vec![0, 0, 1], rat(1))],
            vec![(vec![1, 0, 0], rat(3)), (vec![0, 0, 1], rat(1))],
            vec![(vec![0, 1, 0], rat(1)), (vec![0, 0, 1], rat(2))],
        ];
        let mut f = ExactPoly::constant(vs.clone(), Basis::Power, rat(1));
        for terms in forms {
            f = f.mul(&ExactPoly::from_terms(vs.clone(), Basis::Power, terms));
        }
        assert!(is_lorentzian(&f).verdict);
    }
}
