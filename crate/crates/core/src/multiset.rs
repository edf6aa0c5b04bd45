//! Token configurations as multiplicity functions over a dense vertex range.

use std::fmt;

use crate::error::{Error, Result};
use crate::Vertex;

/// A multiset of vertices. `counts[v]` is the number of tokens on `v`.
///
/// The universe is `0..universe()`; vertices past the end have multiplicity
/// zero, so multisets over different universe sizes can still be combined.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct TokenMultiset {
    counts: Vec<u32>,
    total: u64,
}

impl TokenMultiset {
    pub fn new(universe: usize) -> Self {
        TokenMultiset {
            counts: vec![0; universe],
            total: 0,
        }
    }

    /// Builds a multiset from a token list; repeated vertices stack.
    pub fn from_vertices<I>(universe: usize, vertices: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vertex>,
    {
        let mut m = TokenMultiset::new(universe);
        for v in vertices {
            if v >= universe {
                return Err(Error::Input(format!(
                    "token on vertex {v} outside 0..{universe}"
                )));
            }
            m.add(v, 1);
        }
        Ok(m)
    }

    pub fn from_counts(counts: Vec<u32>) -> Self {
        let total = counts.iter().map(|&c| c as u64).sum();
        TokenMultiset { counts, total }
    }

    pub fn universe(&self) -> usize {
        self.counts.len()
    }

    #[inline]
    pub fn get(&self, v: Vertex) -> u32 {
        self.counts.get(v).copied().unwrap_or(0)
    }

    #[inline]
    pub fn contains(&self, v: Vertex) -> bool {
        self.get(v) > 0
    }

    /// Cardinality `|H|`.
    #[inline]
    pub fn len(&self) -> u64 {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn add(&mut self, v: Vertex, count: u32) {
        if v >= self.counts.len() {
            self.counts.resize(v + 1, 0);
        }
        self.counts[v] += count;
        self.total += count as u64;
    }

    pub fn remove(&mut self, v: Vertex, count: u32) -> Result<()> {
        if self.get(v) < count {
            return Err(Error::Token(v));
        }
        self.counts[v] -= count;
        self.total -= count as u64;
        Ok(())
    }

    /// `Supp(H)` in increasing vertex order.
    pub fn support(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(v, _)| v)
    }

    /// `(vertex, multiplicity)` for every supported vertex.
    pub fn iter(&self) -> impl Iterator<Item = (Vertex, u32)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(v, &c)| (v, c))
    }

    /// Every token as a vertex id, repeated by multiplicity, sorted.
    pub fn expand(&self) -> Vec<Vertex> {
        let mut out = Vec::with_capacity(self.total as usize);
        for (v, c) in self.iter() {
            out.extend(std::iter::repeat_n(v, c as usize));
        }
        out
    }

    /// Moves one token from `from` to `to` in place. Adjacency is not checked.
    pub fn slide_in_place(&mut self, from: Vertex, to: Vertex) -> Result<()> {
        self.remove(from, 1)?;
        self.add(to, 1);
        Ok(())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(u32, u32) -> u32) -> Self {
        let n = self.universe().max(other.universe());
        TokenMultiset::from_counts((0..n).map(|v| f(self.get(v), other.get(v))).collect())
    }

    /// `H ∪ I = H + I`.
    pub fn union(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    /// `H ∩ I = min(H, I)`.
    pub fn intersection(&self, other: &Self) -> Self {
        self.zip_with(other, u32::min)
    }

    /// `H ∖ I = max(H − I, 0)`.
    pub fn difference(&self, other: &Self) -> Self {
        self.zip_with(other, u32::saturating_sub)
    }

    /// `H △ I = (H ∖ I) ∪ (I ∖ H)`.
    pub fn symmetric_difference(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a.abs_diff(b))
    }

    /// Equality that ignores trailing zero padding of the universe.
    pub fn same_tokens(&self, other: &Self) -> bool {
        self.total == other.total
            && (0..self.universe().max(other.universe())).all(|v| self.get(v) == other.get(v))
    }
}

/// `(d ∖ {u}) ∪ {v}` as a fresh multiset.
pub fn slide(d: &TokenMultiset, u: Vertex, v: Vertex) -> Result<TokenMultiset> {
    let mut out = d.clone();
    out.slide_in_place(u, v)?;
    Ok(out)
}

impl fmt::Debug for TokenMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ms(pairs: &[(Vertex, u32)]) -> TokenMultiset {
        let mut m = TokenMultiset::new(4);
        for &(v, c) in pairs {
            m.add(v, c);
        }
        m
    }

    #[test]
    fn slide_examples() {
        assert_eq!(
            slide(&ms(&[(0, 1), (2, 1)]), 2, 3).unwrap(),
            ms(&[(0, 1), (3, 1)])
        );
        assert_eq!(slide(&ms(&[(0, 2)]), 0, 1).unwrap(), ms(&[(0, 1), (1, 1)]));
        assert_eq!(slide(&ms(&[(0, 1)]), 0, 0).unwrap(), ms(&[(0, 1)]));
        assert_eq!(slide(&ms(&[(0, 1)]), 1, 0), Err(Error::Token(1)));
    }

    #[test]
    fn algebra_examples() {
        let a = ms(&[(0, 2)]);
        let b = ms(&[(0, 1)]);
        assert_eq!(a.union(&b), ms(&[(0, 3)]));
        assert_eq!(a.intersection(&b), ms(&[(0, 1)]));
        assert_eq!(a.symmetric_difference(&b), ms(&[(0, 1)]));
        assert_eq!(b.difference(&a), ms(&[]));
        assert_eq!(a.union(&b).len(), a.len() + b.len());
    }

    #[test]
    fn rejects_out_of_range_tokens() {
        assert!(TokenMultiset::from_vertices(3, [0, 3]).is_err());
        let m = TokenMultiset::from_vertices(3, [2, 0, 2]).unwrap();
        assert_eq!(m.expand(), vec![0, 2, 2]);
        assert_eq!(m.support().collect::<Vec<_>>(), vec![0, 2]);
    }

    fn arb_multiset() -> impl Strategy<Value = TokenMultiset> {
        proptest::collection::vec(0u32..4, 6).prop_map(TokenMultiset::from_counts)
    }

    proptest! {
        #[test]
        fn symmetric_difference_identities(a in arb_multiset(), b in arb_multiset()) {
            let sym = a.symmetric_difference(&b);
            let inter = a.intersection(&b);
            prop_assert_eq!(sym.len() + 2 * inter.len(), a.len() + b.len());
            // Union adds multiplicities, so the shared part is removed twice.
            prop_assert_eq!(&sym, &a.union(&b).difference(&inter).difference(&inter));
            prop_assert_eq!(&sym, &a.difference(&b).union(&b.difference(&a)));
        }

        #[test]
        fn slide_round_trips(a in arb_multiset(), u in 0usize..6, v in 0usize..6) {
            prop_assume!(a.get(u) >= 1);
            let there = slide(&a, u, v).unwrap();
            prop_assert_eq!(there.len(), a.len());
            prop_assert_eq!(slide(&there, v, u).unwrap(), a);
        }
    }
}
