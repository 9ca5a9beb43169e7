/// A subset of a ground set `{0, .., n-1}` stored as a bitmask.
///
/// Bit `i` set means element `i` is in the subset.  All ground sets in this
/// crate are capped at [`Subset::CAP`] elements, so a `u32` always suffices.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subset(pub u32);

impl Subset {
    /// Largest supported ground-set size; full rank tables are 2^n entries.
    pub const CAP: usize = 20;

    pub const EMPTY: Subset = Subset(0);

    pub fn full(n: usize) -> Subset {
        debug_assert!(n <= Self::CAP);
        Subset(((1u64 << n) - 1) as u32)
    }

    pub fn singleton(i: usize) -> Subset {
        Subset(1 << i)
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(elems: I) -> Subset {
        let mut bits = 0u32;
        for e in elems {
            bits |= 1 << e;
        }
        Subset(bits)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn card(self) -> u32 {
        self.0.count_ones()
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> Subset {
        Subset(self.0 | 1 << i)
    }

    pub fn without(self, i: usize) -> Subset {
        Subset(self.0 & !(1 << i))
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn difference(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub fn complement(self, n: usize) -> Subset {
        Subset(Self::full(n).0 & !self.0)
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    /// Elements of the subset in increasing order.
    pub fn elements(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    /// All subsets of `self`, in increasing bitmask order.
    pub fn subsets(self) -> impl Iterator<Item = Subset> {
        let mask = self.0;
        let mut cur = 0u32;
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let out = Subset(cur);
            if cur == mask {
                done = true;
            } else {
                cur = (cur.wrapping_sub(mask)) & mask;
            }
            Some(out)
        })
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl std::fmt::Display for Subset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (pos, e) in self.elements().enumerate() {
            if pos > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// Number of subsets of an `n`-element ground set.
pub fn table_len(n: usize) -> usize {
    1usize << n
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_enumeration_covers_powerset() {
        let s = Subset::from_elements([0, 2, 3]);
        let all: Vec<Subset> = s.subsets().collect();
        assert_eq!(all.len(), 8);
        assert!(all.contains(&Subset::EMPTY));
        assert!(all.contains(&s));
        for t in &all {
            assert!(t.is_subset_of(s));
        }
    }

    #[test]
    fn display_lists_elements() {
        assert_eq!(Subset::from_elements([1, 3]).to_string(), "{1,3}");
        assert_eq!(Subset::EMPTY.to_string(), "{}");
    }
}
