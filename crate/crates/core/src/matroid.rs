//! Exact matroids over full rank tables.
//!
//! A matroid on `n` elements stores its rank as a table over all `2^n`
//! subsets, indexed by bitmask.  Construction always re-checks the axioms, so
//! invalid tables cannot circulate; everything downstream may assume a valid
//! rank function.

use std::collections::HashMap;

use crate::error::{Axiom, Error, Result};
use crate::poly::{rat, Basis, ExactPoly, Rat};
use crate::subset::{table_len, Subset};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matroid {
    n: usize,
    rank: Vec<u32>,
}

/// Local submodularity / monotonicity / normalization checks over a full
/// table.  The pairwise-local form quantifies over all (A, i, j), which is
/// equivalent to the unrestricted axioms for normalized functions.
pub(crate) fn check_rank_axioms(n: usize, table: &[u32], unit_increase: bool) -> Result<()> {
    if table[0] != 0 {
        return Err(Error::AxiomViolation {
            axiom: Axiom::Normalization,
            a: Subset::EMPTY,
            b: Subset::EMPTY,
        });
    }
    let len = table_len(n);
    let violation = crate::par::find_map_range(len, |mask| {
        let a = Subset(mask as u32);
        let ra = table[mask];
        for i in 0..n {
            if a.contains(i) {
                continue;
            }
            let ai = a.with(i);
            let rai = table[ai.index()];
            if rai < ra {
                return Some(Error::AxiomViolation { axiom: Axiom::Monotonicity, a, b: ai });
            }
            if unit_increase && rai > ra + 1 {
                return Some(Error::AxiomViolation { axiom: Axiom::UnitIncrease, a, b: ai });
            }
            for j in i + 1..n {
                if a.contains(j) {
                    continue;
                }
                let aj = a.with(j);
                let aij = ai.with(j);
                if rai + table[aj.index()] < table[aij.index()] + ra {
                    return Some(Error::AxiomViolation {
                        axiom: Axiom::Submodularity,
                        a: ai,
                        b: aj,
                    });
                }
            }
        }
        None
    });
    match violation {
        Some(err) => Err(err),
        None => Ok(()),
    }
}

impl Matroid {
    /// Validate a full rank table; all axiom families are checked.
    pub fn from_rank_table(n: usize, table: Vec<u32>) -> Result<Matroid> {
        if n > Subset::CAP {
            return Err(Error::SizeExceeded { n, cap: Subset::CAP });
        }
        if table.len() != table_len(n) {
            return Err(Error::InvalidInput(format!(
                "rank table has {} entries, expected {}",
                table.len(),
                table_len(n)
            )));
        }
        check_rank_axioms(n, &table, true)?;
        Ok(Matroid { n, rank: table })
    }

    /// Derive the rank table `rk(S) = max |S ∩ B|` over the given bases and
    /// validate it; a collection failing basis exchange is rejected by the
    /// axiom checks on the derived table.
    pub fn from_bases(n: usize, bases: &[Subset]) -> Result<Matroid> {
        if bases.is_empty() {
            return Err(Error::InvalidInput("empty basis list".into()));
        }
        let card = bases[0].card();
        if bases.iter().any(|b| b.card() != card) {
            return Err(Error::InvalidInput("bases have unequal cardinality".into()));
        }
        if n > Subset::CAP {
            return Err(Error::SizeExceeded { n, cap: Subset::CAP });
        }
        let table: Vec<u32> = crate::par::map_range(table_len(n), |mask| {
            let s = Subset(mask as u32);
            bases.iter().map(|b| s.intersection(*b).card()).max().unwrap()
        });
        Matroid::from_rank_table(n, table)
    }

    /// The uniform matroid `U_{r,n}` with `rk(S) = min(|S|, r)`.
    pub fn uniform(r: usize, n: usize) -> Result<Matroid> {
        if r > n {
            return Err(Error::InvalidRank { r, n });
        }
        if n > Subset::CAP {
            return Err(Error::SizeExceeded { n, cap: Subset::CAP });
        }
        let table =
            (0..table_len(n)).map(|mask| (mask.count_ones() as usize).min(r) as u32).collect();
        Ok(Matroid { n, rank: table })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ground_set(&self) -> Subset {
        Subset::full(self.n)
    }

    pub fn rank(&self, s: Subset) -> u32 {
        self.rank[s.index()]
    }

    pub fn rank_total(&self) -> u32 {
        self.rank[table_len(self.n) - 1]
    }

    pub fn rank_table(&self) -> &[u32] {
        &self.rank
    }

    pub fn is_loop(&self, i: usize) -> bool {
        self.rank(Subset::singleton(i)) == 0
    }

    pub fn is_coloop(&self, i: usize) -> bool {
        self.rank(self.ground_set().without(i)) + 1 == self.rank_total()
    }

    pub fn loops(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| self.is_loop(i)).collect()
    }

    pub fn is_loopless(&self) -> bool {
        (0..self.n).all(|i| !self.is_loop(i))
    }

    /// First loop, as an error, for operations requiring looplessness.
    pub fn require_loopless(&self) -> Result<()> {
        match (0..self.n).find(|&i| self.is_loop(i)) {
            Some(element) => Err(Error::LoopyMatroid { element }),
            None => Ok(()),
        }
    }

    /// Maximal superset of `s` with the same rank.
    pub fn closure(&self, s: Subset) -> Subset {
        let r = self.rank(s);
        let mut out = s;
        for i in 0..self.n {
            if !out.contains(i) && self.rank(s.with(i)) == r {
                out = out.with(i);
            }
        }
        out
    }

    pub fn is_flat(&self, s: Subset) -> bool {
        self.closure(s) == s
    }

    /// All flats, sorted by (cardinality, bitmask) ascending.  This order
    /// fixes every downstream Möbius computation.
    pub fn flats(&self) -> Vec<Subset> {
        let mut out: Vec<Subset> = (0..table_len(self.n))
            .map(|mask| Subset(mask as u32))
            .filter(|&s| self.is_flat(s))
            .collect();
        out.sort_by_key(|s| (s.card(), s.0));
        out
    }

    /// Delete `deleted`, contract `contracted`; remaining elements are
    /// renumbered in increasing order.
    pub fn minor(&self, deleted: Subset, contracted: Subset) -> Result<Matroid> {
        let overlap = deleted.intersection(contracted);
        if !overlap.is_empty() {
            return Err(Error::OverlapError { overlap });
        }
        let keep: Vec<usize> = self
            .ground_set()
            .difference(deleted)
            .difference(contracted)
            .elements()
            .collect();
        let rc = self.rank(contracted);
        let table: Vec<u32> = (0..table_len(keep.len()))
            .map(|mask| {
                let mut s = contracted;
                for (new, &old) in keep.iter().enumerate() {
                    if mask >> new & 1 == 1 {
                        s = s.with(old);
                    }
                }
                self.rank(s) - rc
            })
            .collect();
        Ok(Matroid { n: keep.len(), rank: table })
    }

    pub fn delete(&self, s: Subset) -> Matroid {
        self.minor(s, Subset::EMPTY).expect("disjoint by construction")
    }

    pub fn contract(&self, s: Subset) -> Matroid {
        self.minor(Subset::EMPTY, s).expect("disjoint by construction")
    }

    /// Restriction to `s`: delete everything else.
    pub fn restriction(&self, s: Subset) -> Matroid {
        self.delete(s.complement(self.n))
    }

    /// Dual matroid, `rk*(A) = |A| + rk(E \ A) - rk(E)`.
    pub fn dual(&self) -> Matroid {
        let r = self.rank_total();
        let table: Vec<u32> = (0..table_len(self.n))
            .map(|mask| {
                let a = Subset(mask as u32);
                a.card() + self.rank(a.complement(self.n)) - r
            })
            .collect();
        Matroid { n: self.n, rank: table }
    }

    pub fn direct_sum(&self, other: &Matroid) -> Result<Matroid> {
        let n = self.n + other.n;
        if n > Subset::CAP {
            return Err(Error::SizeExceeded { n, cap: Subset::CAP });
        }
        let low = Subset::full(self.n);
        let table: Vec<u32> = (0..table_len(n))
            .map(|mask| {
                let a = Subset(mask as u32);
                self.rank(a.intersection(low)) + other.rank(Subset((mask >> self.n) as u32))
            })
            .collect();
        Ok(Matroid { n, rank: table })
    }

    /// Connected components, each as a subset of the ground set, ordered by
    /// least element.  A set is a separator iff `rk(A) + rk(E\A) = rk(E)`;
    /// the component of an element is the intersection of the separators
    /// containing it.
    pub fn connected_components(&self) -> Vec<Subset> {
        let full = self.ground_set();
        let r = self.rank_total();
        let mut assigned = Subset::EMPTY;
        let mut comps = Vec::new();
        for i in 0..self.n {
            if assigned.contains(i) {
                continue;
            }
            let mut comp = full;
            for mask in 0..table_len(self.n) {
                let a = Subset(mask as u32);
                if self.rank(a) + self.rank(a.complement(self.n)) == r {
                    comp = if a.contains(i) {
                        comp.intersection(a)
                    } else {
                        comp.difference(a)
                    };
                }
            }
            assigned = assigned.union(comp);
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() == 1
    }

    /// All bases (maximal independent sets).
    pub fn bases(&self) -> Vec<Subset> {
        let r = self.rank_total();
        (0..table_len(self.n))
            .map(|mask| Subset(mask as u32))
            .filter(|&s| s.card() == r && self.rank(s) == r)
            .collect()
    }

    /// All circuits (minimal dependent sets), ascending by bitmask.
    pub fn circuits(&self) -> Vec<Subset> {
        (0..table_len(self.n))
            .map(|mask| Subset(mask as u32))
            .filter(|&s| {
                !s.is_empty()
                    && self.rank(s) < s.card()
                    && s.elements().all(|i| {
                        let t = s.without(i);
                        self.rank(t) == t.card()
                    })
            })
            .collect()
    }

    pub fn is_independent(&self, s: Subset) -> bool {
        self.rank(s) == s.card()
    }

    /// Tutte polynomial in `x, y` by deletion-contraction, memoized on the
    /// rank table of each minor.
    pub fn tutte(&self) -> ExactPoly {
        let mut memo: HashMap<Vec<u32>, ExactPoly> = HashMap::new();
        tutte_rec(self, &mut memo)
    }

    /// Crapo's beta invariant: the coefficient of `x` in the Tutte polynomial.
    pub fn beta(&self) -> i64 {
        let t = self.tutte();
        let c = t.coeff(&[1, 0]);
        debug_assert!(c.is_integer());
        i64::try_from(c.to_integer()).expect("beta fits in i64 at table scale")
    }

    /// Principal extension by a nonempty flat `g`: adds element `n` with
    /// `rk'(A + *) = min(rk(A) + 1, rk(A ∪ G))`.
    pub fn principal_extension(&self, g: Subset) -> Result<Matroid> {
        if g.is_empty() || self.closure(g) != g {
            return Err(Error::NotAFlat { set: g, closure: self.closure(g) });
        }
        let n = self.n + 1;
        if n > Subset::CAP {
            return Err(Error::SizeExceeded { n, cap: Subset::CAP });
        }
        let star = self.n;
        let table: Vec<u32> = (0..table_len(n))
            .map(|mask| {
                let a = Subset(mask as u32);
                let base = a.without(star);
                if !a.contains(star) {
                    self.rank(base)
                } else {
                    (self.rank(base) + 1).min(self.rank(base.union(g)))
                }
            })
            .collect();
        Matroid::from_rank_table(n, table)
    }
}

fn tutte_rec(m: &Matroid, memo: &mut HashMap<Vec<u32>, ExactPoly>) -> ExactPoly {
    if let Some(p) = memo.get(m.rank_table()) {
        return p.clone();
    }
    let xy = vec!["x".to_string(), "y".to_string()];
    let result = if m.n() == 0 {
        ExactPoly::constant(xy, Basis::Power, rat(1))
    } else {
        let e = Subset::singleton(0);
        if m.is_loop(0) {
            let y = ExactPoly::from_terms(xy, Basis::Power, [(vec![0, 1], rat(1))]);
            y.mul(&tutte_rec(&m.delete(e), memo))
        } else if m.is_coloop(0) {
            let x = ExactPoly::from_terms(xy, Basis::Power, [(vec![1, 0], rat(1))]);
            x.mul(&tutte_rec(&m.contract(e), memo))
        } else {
            tutte_rec(&m.delete(e), memo).add(&tutte_rec(&m.contract(e), memo))
        }
    };
    memo.insert(m.rank_table().to_vec(), result.clone());
    result
}

/// Evaluate the Tutte polynomial at an integer point.
pub fn tutte_at(m: &Matroid, x: i64, y: i64) -> i64 {
    let v: Rat = m.tutte().eval_i64(&[x, y]);
    debug_assert!(v.is_integer());
    i64::try_from(v.to_integer()).expect("tutte value fits in i64 at table scale")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_coloop_and_rank_cap() {
        let m = Matroid::from_rank_table(1, vec![0, 1]).unwrap();
        assert_eq!(m.rank_total(), 1);
        let u12 = Matroid::from_rank_table(2, vec![0, 1, 1, 1]).unwrap();
        assert_eq!(u12, Matroid::uniform(1, 2).unwrap());
        let bad = Matroid::from_rank_table(2, vec![0, 1, 1, 3]);
        assert!(matches!(bad, Err(Error::AxiomViolation { .. })));
    }

    #[test]
    fn from_bases_examples() {
        let u23 = Matroid::from_bases(
            3,
            &[
                Subset::from_elements([0, 1]),
                Subset::from_elements([0, 2]),
                Subset::from_elements([1, 2]),
            ],
        )
        .unwrap();
        assert_eq!(u23, Matroid::uniform(2, 3).unwrap());

        // a single basis {0} on two elements leaves 1 as a loop
        let m = Matroid::from_bases(2, &[Subset::singleton(0)]).unwrap();
        assert_eq!(m.rank_table(), &[0, 1, 0, 1]);
        assert!(m.is_loop(1));

        // {01, 23} fails basis exchange; the derived table is not submodular
        let bad = Matroid::from_bases(
            4,
            &[Subset::from_elements([0, 1]), Subset::from_elements([2, 3])],
        );
        assert!(matches!(bad, Err(Error::AxiomViolation { axiom: Axiom::Submodularity, .. })));
    }

    #[test]
    fn uniform_tables() {
        assert_eq!(Matroid::uniform(2, 3).unwrap().rank_table(), &[0, 1, 1, 2, 1, 2, 2, 2]);
        assert_eq!(Matroid::uniform(0, 2).unwrap().rank_table(), &[0, 0, 0, 0]);
        let b3 = Matroid::uniform(3, 3).unwrap();
        assert!((0..8).all(|mask| b3.rank_table()[mask] == (mask as u32).count_ones()));
        assert!(matches!(Matroid::uniform(4, 3), Err(Error::InvalidRank { .. })));
    }

    #[test]
    fn closure_and_flats() {
        let u23 = Matroid::uniform(2, 3).unwrap();
        assert_eq!(u23.closure(Subset::singleton(0)), Subset::singleton(0));
        let flats = u23.flats();
        assert_eq!(
            flats,
            vec![
                Subset::EMPTY,
                Subset::singleton(0),
                Subset::singleton(1),
                Subset::singleton(2),
                Subset::full(3),
            ]
        );

        let loopy = Matroid::from_bases(2, &[Subset::singleton(0)]).unwrap();
        assert_eq!(loopy.closure(Subset::EMPTY), Subset::singleton(1));

        assert_eq!(Matroid::uniform(3, 3).unwrap().flats().len(), 8);
    }

    #[test]
    fn minors_dual_sum_components() {
        let u24 = Matroid::uniform(2, 4).unwrap();
        assert_eq!(u24.dual(), u24);

        let u23 = Matroid::uniform(2, 3).unwrap();
        let contracted = u23.contract(Subset::singleton(0));
        assert_eq!(contracted, Matroid::uniform(1, 2).unwrap());

        let u11 = Matroid::uniform(1, 1).unwrap();
        let sum = u11.direct_sum(&u11).unwrap();
        assert_eq!(sum.connected_components(), vec![Subset::singleton(0), Subset::singleton(1)]);

        let overlap = u23.minor(Subset::singleton(0), Subset::singleton(0));
        assert!(matches!(overlap, Err(Error::OverlapError { .. })));
    }

    #[test]
    fn dual_is_an_involution() {
        for (r, n) in [(1, 1), (1, 3), (2, 4), (3, 5)] {
            let m = Matroid::uniform(r, n).unwrap();
            assert_eq!(m.dual().dual(), m);
        }
    }

    #[test]
    fn tutte_and_beta_examples() {
        let u23 = Matroid::uniform(2, 3).unwrap();
        let t = u23.tutte();
        assert_eq!(t.coeff(&[2, 0]), rat(1));
        assert_eq!(t.coeff(&[1, 0]), rat(1));
        assert_eq!(t.coeff(&[0, 1]), rat(1));
        assert_eq!(t.num_terms(), 3);
        assert_eq!(u23.beta(), 1);

        let u24 = Matroid::uniform(2, 4).unwrap();
        let t = u24.tutte();
        assert_eq!(t.coeff(&[2, 0]), rat(1));
        assert_eq!(t.coeff(&[1, 0]), rat(2));
        assert_eq!(t.coeff(&[0, 1]), rat(2));
        assert_eq!(t.coeff(&[0, 2]), rat(1));
        assert_eq!(t.num_terms(), 4);
        assert_eq!(u24.beta(), 2);

        let u11 = Matroid::uniform(1, 1).unwrap();
        assert_eq!(u11.beta(), 1);
        assert_eq!(Matroid::uniform(0, 1).unwrap().beta(), 0);
        assert_eq!(u11.direct_sum(&u11).unwrap().beta(), 0);
    }

    #[test]
    fn tutte_counts_bases_at_one_one() {
        for (r, n) in [(1, 2), (2, 3), (2, 4), (3, 5)] {
            let m = Matroid::uniform(r, n).unwrap();
            assert_eq!(tutte_at(&m, 1, 1), m.bases().len() as i64);
        }
    }

    #[test]
    fn beta_deletion_contraction_recursion() {
        let m = Matroid::uniform(2, 4).unwrap();
        for i in 0..m.n() {
            if m.is_loop(i) || m.is_coloop(i) {
                continue;
            }
            let e = Subset::singleton(i);
            assert_eq!(m.beta(), m.delete(e).beta() + m.contract(e).beta());
        }
    }

    #[test]
    fn principal_extension_examples() {
        let u11 = Matroid::uniform(1, 1).unwrap();
        let extended = u11.principal_extension(Subset::singleton(0)).unwrap();
        assert_eq!(extended, Matroid::uniform(1, 2).unwrap());

        let u23 = Matroid::uniform(2, 3).unwrap();
        let extended = u23.principal_extension(Subset::full(3)).unwrap();
        assert_eq!(extended, Matroid::uniform(2, 4).unwrap());

        // extension at a point makes the new element parallel to it
        let par = u23.principal_extension(Subset::singleton(0)).unwrap();
        assert_eq!(par.rank(Subset::from_elements([0, 3])), 1);
        assert_eq!(par.rank(Subset::from_elements([1, 3])), 2);
        assert_eq!(par.rank_total(), 2);

        let not_flat = u23.principal_extension(Subset::from_elements([0, 1]));
        assert!(matches!(not_flat, Err(Error::NotAFlat { .. })));
    }

    #[test]
    fn circuits_of_uniform() {
        let u23 = Matroid::uniform(2, 3).unwrap();
        assert_eq!(u23.circuits(), vec![Subset::full(3)]);
        let u13 = Matroid::uniform(1, 3).unwrap();
        assert_eq!(u13.circuits().len(), 3);
    }
}
