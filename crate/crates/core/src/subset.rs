//! Subsets of a totally ordered generating set `Γ = {1, ..., n}`.

use std::fmt;

use serde::{Serialize, Serializer};

/// Maximum number of generators a [`Subset`] can address.
pub const MAX_GENERATORS: usize = 63;

/// A subset of `{1, ..., 63}` stored as a bitmask (generator `g` is bit `g - 1`).
///
/// The derived order on the mask agrees with colexicographic order on
/// subsets of equal cardinality.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Subset(u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_mask(mask: u64) -> Self {
        Subset(mask)
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn from_generators<I: IntoIterator<Item = usize>>(gens: I) -> Self {
        gens.into_iter().fold(Subset::EMPTY, |s, g| s.with(g))
    }

    /// `{1, ..., n}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_GENERATORS);
        Subset((1u64 << n) - 1)
    }

    /// `{n - i + 1, ..., n}`, the top `i` generators.
    pub fn top(n: usize, i: usize) -> Self {
        assert!(i <= n);
        Subset(Subset::full(n).0 & !Subset::full(n - i).0)
    }

    pub fn contains(self, g: usize) -> bool {
        (1..=MAX_GENERATORS).contains(&g) && self.0 & (1 << (g - 1)) != 0
    }

    pub fn with(self, g: usize) -> Self {
        assert!((1..=MAX_GENERATORS).contains(&g), "generator {g} out of range");
        Subset(self.0 | (1 << (g - 1)))
    }

    pub fn without(self, g: usize) -> Self {
        Subset(self.0 & !(1 << (g - 1)))
    }

    pub fn union(self, other: Subset) -> Self {
        Subset(self.0 | other.0)
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Largest generator, 0 for the empty set.
    pub fn max_generator(self) -> usize {
        64 - self.0.leading_zeros() as usize
    }

    /// Generators in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mask = self.0;
        (1..=64).filter(move |&g| mask & (1u64 << (g - 1)) != 0)
    }

    /// `|{i in self : i < j}|`.
    pub fn sigma(self, j: usize) -> usize {
        (self.0 & ((1u64 << (j - 1)) - 1)).count_ones() as usize
    }

    /// All `k`-subsets of `{1, ..., n}` in colexicographic order.
    pub fn of_size(n: usize, k: usize) -> Vec<Subset> {
        assert!(n <= 20, "refusing to enumerate subsets of {n} generators");
        (0..1u64 << n)
            .filter(|m| m.count_ones() as usize == k)
            .map(Subset)
            .collect()
    }
}

impl fmt::Display for Subset {
    /// Comma list (`1,3`) or `-` for the empty set.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "-");
        }
        let parts: Vec<String> = self.iter().map(|g| g.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(","))
    }
}

impl Serialize for Subset {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn colex_order() {
        let two = Subset::of_size(3, 2);
        let named: Vec<Vec<usize>> = two.iter().map(|s| s.iter().collect()).collect();
        assert_eq!(named, vec![vec![1, 2], vec![1, 3], vec![2, 3]]);
    }

    #[test]
    fn top_and_sigma() {
        assert_eq!(Subset::top(4, 0), Subset::EMPTY);
        assert_eq!(Subset::top(4, 2), Subset::from_generators([3, 4]));
        assert_eq!(Subset::top(4, 4), Subset::full(4));
        let d = Subset::from_generators([1, 3, 4]);
        assert_eq!(d.sigma(1), 0);
        assert_eq!(d.sigma(2), 1);
        assert_eq!(d.sigma(5), 3);
        assert_eq!(d.max_generator(), 4);
        assert_eq!(d.to_string(), "1,3,4");
        assert_eq!(Subset::EMPTY.to_string(), "-");
    }
}
