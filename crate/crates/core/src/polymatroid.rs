//! Polymatroids, their lattice-point bodies, and multisymmetric lifts.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::matroid::{check_rank_axioms, Matroid};
use crate::subset::{table_len, Subset};

/// Integer polymatroid on `[m]` with a cage bound on singleton ranks.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polymatroid {
    m: usize,
    cage: Vec<u32>,
    rank: Vec<u32>,
}

impl Polymatroid {
    pub fn from_rank_table(m: usize, cage: Vec<u32>, table: Vec<u32>) -> Result<Polymatroid> {
        if m > Subset::CAP {
            return Err(Error::SizeExceeded { n: m, cap: Subset::CAP });
        }
        if cage.len() != m {
            return Err(Error::InvalidInput(format!(
                "cage has {} entries, expected {m}",
                cage.len()
            )));
        }
        if table.len() != table_len(m) {
            return Err(Error::InvalidInput(format!(
                "rank table has {} entries, expected {}",
                table.len(),
                table_len(m)
            )));
        }
        check_rank_axioms(m, &table, false)?;
        for i in 0..m {
            let rank = table[Subset::singleton(i).index()];
            if rank > cage[i] {
                return Err(Error::CageViolation { element: i, rank, cage: cage[i] });
            }
        }
        Ok(Polymatroid { m, cage, rank: table })
    }

    /// Restriction polymatroid of `matroid` to the given subsets:
    /// `rk(I) = rk_M(∪_{i∈I} S_i)` with cage `a_i = |S_i|`.
    pub fn restriction(matroid: &Matroid, subsets: &[Subset]) -> Result<Polymatroid> {
        check_subsets(subsets)?;
        let m = subsets.len();
        if m > Subset::CAP {
            return Err(Error::SizeExceeded { n: m, cap: Subset::CAP });
        }
        let cage: Vec<u32> = subsets.iter().map(|s| s.card()).collect();
        let table: Vec<u32> = (0..table_len(m))
            .map(|mask| {
                let mut u = Subset::EMPTY;
                for (i, &s) in subsets.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        u = u.union(s);
                    }
                }
                matroid.rank(u)
            })
            .collect();
        Ok(Polymatroid { m, cage, rank: table })
    }

    /// The polymatroid whose independent vectors are exactly those satisfying
    /// the dragon Hall-Rado condition for `subsets` in `matroid`.  The rank
    /// table is materialized by maximizing over feasible supported vectors.
    pub fn dragon_hall_rado(matroid: &Matroid, subsets: &[Subset]) -> Result<Polymatroid> {
        matroid.require_loopless()?;
        check_subsets(subsets)?;
        let m = subsets.len();
        if m > Subset::CAP {
            return Err(Error::SizeExceeded { n: m, cap: Subset::CAP });
        }
        let feasible = crate::snapper::enumerate_feasible(matroid, subsets, false);
        let mut table = vec![0u32; table_len(m)];
        for mask in 0..table_len(m) {
            table[mask] = feasible
                .iter()
                .filter(|k| k.iter().enumerate().all(|(i, &v)| v == 0 || mask >> i & 1 == 1))
                .map(|k| k.iter().sum())
                .max()
                .unwrap_or(0);
        }
        let cage: Vec<u32> = (0..m).map(|i| table[Subset::singleton(i).index()]).collect();
        Polymatroid::from_rank_table(m, cage, table)
    }

    pub fn matroid_as_polymatroid(matroid: &Matroid) -> Polymatroid {
        Polymatroid {
            m: matroid.n(),
            cage: vec![1; matroid.n()],
            rank: matroid.rank_table().to_vec(),
        }
    }

    /// Reinterpret a cage-(1,..,1) polymatroid as a matroid.
    pub fn try_into_matroid(&self) -> Result<Matroid> {
        if self.cage.iter().any(|&a| a != 1) {
            return Err(Error::NotAMatroidPolymatroid { reason: "cage is not (1,..,1)".into() });
        }
        Matroid::from_rank_table(self.m, self.rank.clone()).map_err(|e| {
            Error::NotAMatroidPolymatroid { reason: format!("rank table is not a matroid: {e}") }
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn cage(&self) -> &[u32] {
        &self.cage
    }

    pub fn rank(&self, s: Subset) -> u32 {
        self.rank[s.index()]
    }

    pub fn rank_total(&self) -> u32 {
        self.rank[table_len(self.m) - 1]
    }

    pub fn rank_table(&self) -> &[u32] {
        &self.rank
    }

    /// Index of an element with `rk({i}) = rk([m])`, when one exists.
    pub fn spanning_element(&self) -> Option<usize> {
        let r = self.rank_total();
        (0..self.m).find(|&i| self.rank(Subset::singleton(i)) == r)
    }

    /// Lattice points of the independence polytope
    /// `I(P) = {x >= 0 : sum_{i in I} x_i <= rk(I) for all I}`.
    pub fn independence_points(&self) -> LatticePointSet {
        let points = enumerate_points(self);
        LatticePointSet { dim: self.m, points }
    }

    /// Lattice points of the base polytope: independence points whose
    /// coordinates sum to the total rank.
    pub fn base_points(&self) -> LatticePointSet {
        let r = self.rank_total();
        let points = enumerate_points(self)
            .into_iter()
            .filter(|p| p.iter().sum::<u32>() == r)
            .collect();
        LatticePointSet { dim: self.m, points }
    }

    /// The multisymmetric lift: a matroid on `a_1 + .. + a_m` elements with
    /// consecutive blocks `S_i` of size `a_i`, built by the induced-matroid
    /// rank rule and then verified against the characterizing property
    /// `rk(∪_{i∈I} S_i) = rk_P(I)`.
    pub fn multisymmetric_lift(&self) -> Result<(Matroid, Vec<Subset>)> {
        let total: u32 = self.cage.iter().sum();
        let n = total as usize;
        if n > Subset::CAP {
            return Err(Error::SizeExceeded { n, cap: Subset::CAP });
        }
        let mut blocks = Vec::with_capacity(self.m);
        let mut next = 0usize;
        for &a in &self.cage {
            blocks.push(Subset::from_elements(next..next + a as usize));
            next += a as usize;
        }
        let union_of: Vec<Subset> = (0..table_len(self.m))
            .map(|mask| {
                let mut u = Subset::EMPTY;
                for (i, &b) in blocks.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        u = u.union(b);
                    }
                }
                u
            })
            .collect();
        let table: Vec<u32> = crate::par::map_range(table_len(n), |mask| {
            let a = Subset(mask as u32);
            (0..table_len(self.m))
                .map(|imask| self.rank[imask] + a.difference(union_of[imask]).card())
                .min()
                .unwrap()
        });
        let matroid = Matroid::from_rank_table(n, table)?;
        for (imask, &u) in union_of.iter().enumerate() {
            assert_eq!(
                matroid.rank(u),
                self.rank[imask],
                "lift rank rule failed to reproduce the polymatroid"
            );
        }
        Ok((matroid, blocks))
    }
}

fn check_subsets(subsets: &[Subset]) -> Result<()> {
    for (index, s) in subsets.iter().enumerate() {
        if s.is_empty() {
            return Err(Error::EmptySubset { index });
        }
    }
    Ok(())
}

/// DFS enumeration of independence lattice points in lexicographic order.
/// At depth `j` the admissible range of `x_j` is cut by every constraint
/// `I ∋ j` contained in the assigned prefix.
fn enumerate_points(p: &Polymatroid) -> Vec<Vec<u32>> {
    fn bound(p: &Polymatroid, prefix: &[u32], j: usize) -> u32 {
        let mut best = p.rank(Subset::singleton(j));
        for mask in Subset::full(j).subsets() {
            let with_j = mask.with(j);
            let partial: u32 = mask.elements().map(|i| prefix[i]).sum();
            let rk = p.rank(with_j);
            best = best.min(rk.saturating_sub(partial));
        }
        best
    }

    fn dfs(p: &Polymatroid, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let j = prefix.len();
        if j == p.m() {
            out.push(prefix.clone());
            return;
        }
        let b = bound(p, prefix, j);
        for v in 0..=b {
            prefix.push(v);
            dfs(p, prefix, out);
            prefix.pop();
        }
    }

    if p.m() == 0 {
        return vec![vec![]];
    }
    let first_bound = p.rank(Subset::singleton(0));
    let chunks = crate::par::map_range(first_bound as usize + 1, |v| {
        let mut prefix = vec![v as u32];
        let mut out = Vec::new();
        dfs(p, &mut prefix, &mut out);
        out
    });
    chunks.into_iter().flatten().collect()
}

/// A finite set of integer points, sorted lexicographically, no duplicates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePointSet {
    dim: usize,
    points: Vec<Vec<u32>>,
}

impl LatticePointSet {
    pub fn new(dim: usize, mut points: Vec<Vec<u32>>) -> LatticePointSet {
        assert!(points.iter().all(|p| p.len() == dim));
        points.sort();
        points.dedup();
        LatticePointSet { dim, points }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Vec<u32>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &[u32]) -> bool {
        self.points.binary_search_by(|q| q.as_slice().cmp(p)).is_ok()
    }

    /// Dimension of the affine span, by exact elimination over the rationals.
    pub fn affine_dim(&self) -> usize {
        if self.points.len() <= 1 {
            return 0;
        }
        let base = &self.points[0];
        let mut rows: Vec<Vec<i64>> = self.points[1..]
            .iter()
            .map(|p| p.iter().zip(base).map(|(&a, &b)| a as i64 - b as i64).collect())
            .collect();
        // integer Gaussian elimination; rank only, so pivot scaling is free
        let mut rank = 0;
        for col in 0..self.dim {
            let Some(pivot_row) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
                continue;
            };
            rows.swap(rank, pivot_row);
            let pivot = rows[rank][col];
            for r in rank + 1..rows.len() {
                let factor = rows[r][col];
                if factor == 0 {
                    continue;
                }
                for c in 0..self.dim {
                    rows[r][c] = rows[r][c] * pivot - rows[rank][c] * factor;
                }
            }
            rank += 1;
        }
        rank
    }
}

/// Why a point set fails to be M-convex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MConvexFailure {
    Empty,
    UnequalSums { a: Vec<u32>, b: Vec<u32> },
    ExchangeFails { alpha: Vec<u32>, beta: Vec<u32>, coord: usize },
}

impl std::fmt::Display for MConvexFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MConvexFailure::Empty => write!(f, "empty point set"),
            MConvexFailure::UnequalSums { a, b } => {
                write!(f, "coordinate sums differ: {a:?} vs {b:?}")
            }
            MConvexFailure::ExchangeFails { alpha, beta, coord } => {
                write!(f, "exchange fails for alpha={alpha:?}, beta={beta:?} at i={coord}")
            }
        }
    }
}

/// Symmetric exchange test: for all `α, β` in the set and `i` with
/// `α_i > β_i` there is `j` with `α_j < β_j` and `α - e_i + e_j` in the set.
pub fn is_m_convex(set: &LatticePointSet) -> std::result::Result<(), MConvexFailure> {
    if set.is_empty() {
        return Err(MConvexFailure::Empty);
    }
    let pts = set.points();
    let sum0: u32 = pts[0].iter().sum();
    for p in &pts[1..] {
        if p.iter().sum::<u32>() != sum0 {
            return Err(MConvexFailure::UnequalSums { a: pts[0].clone(), b: p.clone() });
        }
    }
    let member: BTreeSet<&Vec<u32>> = pts.iter().collect();
    for alpha in pts {
        for beta in pts {
            for i in 0..set.dim() {
                if alpha[i] <= beta[i] {
                    continue;
                }
                let ok = (0..set.dim()).any(|j| {
                    if alpha[j] >= beta[j] {
                        return false;
                    }
                    let mut moved = alpha.clone();
                    moved[i] -= 1;
                    moved[j] += 1;
                    member.contains(&moved)
                });
                if !ok {
                    return Err(MConvexFailure::ExchangeFails {
                        alpha: alpha.clone(),
                        beta: beta.clone(),
                        coord: i,
                    });
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p_star() -> Polymatroid {
        Polymatroid::from_rank_table(2, vec![1, 2], vec![0, 1, 2, 2]).unwrap()
    }

    #[test]
    fn construction_and_cage_check() {
        let p = Polymatroid::from_rank_table(1, vec![2], vec![0, 2]).unwrap();
        assert_eq!(p.rank_total(), 2);
        assert!(p_star().rank_total() == 2);
        let bad = Polymatroid::from_rank_table(1, vec![1], vec![0, 2]);
        assert!(matches!(bad, Err(Error::CageViolation { element: 0, .. })));
    }

    #[test]
    fn restriction_examples() {
        let u23 = Matroid::uniform(2, 3).unwrap();
        let p = Polymatroid::restriction(
            &u23,
            &[Subset::singleton(0), Subset::from_elements([1, 2])],
        )
        .unwrap();
        assert_eq!(p, p_star());

        let u24 = Matroid::uniform(2, 4).unwrap();
        let q = Polymatroid::restriction(&u24, &[Subset::full(4)]).unwrap();
        assert_eq!(q.rank_total(), 2);
        assert_eq!(q.m(), 1);

        let rep =
            Polymatroid::restriction(&u23, &[Subset::singleton(0), Subset::singleton(0)]).unwrap();
        assert_eq!(rep.rank_table(), &[0, 1, 1, 1]);

        let empty = Polymatroid::restriction(&u23, &[Subset::EMPTY]);
        assert!(matches!(empty, Err(Error::EmptySubset { index: 0 })));
    }

    #[test]
    fn dragon_hall_rado_examples() {
        let u24 = Matroid::uniform(2, 4).unwrap();
        let triples: Vec<Subset> = (0..4)
            .map(|skip| Subset::from_elements((0..4).filter(|&i| i != skip)))
            .chain([Subset::full(4)])
            .collect();
        let p = Polymatroid::dragon_hall_rado(&u24, &triples).unwrap();
        for mask in 1..table_len(5) {
            assert_eq!(p.rank_table()[mask], 1);
        }

        let u23 = Matroid::uniform(2, 3).unwrap();
        let single = Polymatroid::dragon_hall_rado(&u23, &[Subset::full(3)]).unwrap();
        assert_eq!(single.rank_total(), 1);

        let u34 = Matroid::uniform(3, 4).unwrap();
        let p = Polymatroid::dragon_hall_rado(
            &u34,
            &[Subset::from_elements([0, 1]), Subset::from_elements([2, 3])],
        )
        .unwrap();
        assert_eq!(p.rank(Subset::singleton(0)), 1);
        assert_eq!(p.rank(Subset::singleton(1)), 1);
        assert_eq!(p.rank(Subset::full(2)), 2);

        let loopy = Matroid::from_bases(2, &[Subset::singleton(0)]).unwrap();
        let bad = Polymatroid::dragon_hall_rado(&loopy, &[Subset::full(2)]);
        assert!(matches!(bad, Err(Error::LoopyMatroid { element: 1 })));
    }

    #[test]
    fn lattice_points_of_p_star() {
        let p = p_star();
        assert_eq!(p.base_points().points(), &[vec![0, 2], vec![1, 1]]);
        assert_eq!(
            p.independence_points().points(),
            &[vec![0, 0], vec![0, 1], vec![0, 2], vec![1, 0], vec![1, 1]]
        );
    }

    #[test]
    fn boolean_and_rank_one_base_points() {
        let u22 = Matroid::uniform(2, 2).unwrap();
        let p =
            Polymatroid::restriction(&u22, &[Subset::singleton(0), Subset::singleton(1)]).unwrap();
        assert_eq!(p.base_points().points(), &[vec![1, 1]]);

        let q = Polymatroid::from_rank_table(2, vec![1, 1], vec![0, 1, 1, 1]).unwrap();
        assert_eq!(q.base_points().points(), &[vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn independence_is_down_closure_of_bases() {
        for p in [
            p_star(),
            Polymatroid::from_rank_table(2, vec![1, 1], vec![0, 1, 1, 1]).unwrap(),
            Polymatroid::from_rank_table(3, vec![1, 1, 1], vec![0, 1, 1, 2, 1, 2, 2, 2]).unwrap(),
        ] {
            let bases = p.base_points();
            let indep = p.independence_points();
            for k in indep.points() {
                assert!(
                    bases.points().iter().any(|y| k.iter().zip(y).all(|(a, b)| a <= b)),
                    "{k:?} not dominated by a base point"
                );
            }
            // and conversely every dominated nonnegative vector is independent
            for y in bases.points() {
                let mut cur = vec![0u32; p.m()];
                loop {
                    assert!(indep.contains(&cur));
                    let mut i = 0;
                    loop {
                        if i == p.m() {
                            break;
                        }
                        if cur[i] < y[i] {
                            cur[i] += 1;
                            break;
                        }
                        cur[i] = 0;
                        i += 1;
                    }
                    if i == p.m() {
                        break;
                    }
                }
            }
        }
    }

    #[test]
    fn lift_reproduces_polymatroid() {
        let (m, blocks) = p_star().multisymmetric_lift().unwrap();
        assert_eq!(m, Matroid::uniform(2, 3).unwrap());
        assert_eq!(blocks, vec![Subset::singleton(0), Subset::from_elements([1, 2])]);
        assert_eq!(Polymatroid::restriction(&m, &blocks).unwrap(), p_star());

        let single = Polymatroid::from_rank_table(1, vec![4], vec![0, 2]).unwrap();
        let (m, blocks) = single.multisymmetric_lift().unwrap();
        assert_eq!(m, Matroid::uniform(2, 4).unwrap());
        assert_eq!(blocks, vec![Subset::full(4)]);

        let boolean =
            Polymatroid::from_rank_table(2, vec![2, 1], vec![0, 2, 1, 3]).unwrap();
        let (m, _) = boolean.multisymmetric_lift().unwrap();
        assert_eq!(m, Matroid::uniform(3, 3).unwrap());
    }

    #[test]
    fn lift_rank_depends_only_on_block_intersections() {
        let p = p_star();
        let (m, blocks) = p.multisymmetric_lift().unwrap();
        // permuting within block {1,2} preserves ranks
        let swap = |s: Subset| {
            let mut t = s.difference(Subset::from_elements([1, 2]));
            if s.contains(1) {
                t = t.with(2);
            }
            if s.contains(2) {
                t = t.with(1);
            }
            t
        };
        for mask in 0..table_len(m.n()) {
            let s = Subset(mask as u32);
            assert_eq!(m.rank(s), m.rank(swap(s)));
        }
        let _ = blocks;
    }

    #[test]
    fn m_convex_examples() {
        let yes = LatticePointSet::new(2, vec![vec![1, 1], vec![0, 2]]);
        assert!(is_m_convex(&yes).is_ok());

        // exchange fails both ways; the lex-first witness is reported
        let no = LatticePointSet::new(2, vec![vec![2, 0], vec![0, 2]]);
        match is_m_convex(&no) {
            Err(MConvexFailure::ExchangeFails { alpha, beta, coord }) => {
                assert_eq!(alpha, vec![0, 2]);
                assert_eq!(beta, vec![2, 0]);
                assert_eq!(coord, 1);
                assert!(!no.contains(&[1, 1]));
            }
            other => panic!("expected exchange failure, got {other:?}"),
        }

        let g_support =
            LatticePointSet::new(3, vec![vec![1, 0, 1], vec![0, 1, 1], vec![0, 0, 2]]);
        assert!(is_m_convex(&g_support).is_ok());
    }

    #[test]
    fn base_points_are_m_convex() {
        for p in [
            p_star(),
            Polymatroid::from_rank_table(3, vec![2, 2, 2], vec![0, 2, 2, 3, 2, 3, 3, 4]).unwrap(),
        ] {
            let b = p.base_points();
            assert!(!b.is_empty());
            assert!(is_m_convex(&b).is_ok());
        }
    }

    #[test]
    fn affine_dim_of_simplices() {
        let seg = LatticePointSet::new(2, vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(seg.affine_dim(), 1);
        let tri = LatticePointSet::new(3, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(tri.affine_dim(), 2);
        let pt = LatticePointSet::new(3, vec![vec![1, 1, 1]]);
        assert_eq!(pt.affine_dim(), 0);
    }
}
