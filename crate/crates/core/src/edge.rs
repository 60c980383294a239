//! Hyperedges, equivalently points of the Hamming cube `{0,1}^n`.
//!
//! An [`Edge`] is a dense bitset over `n` vertices. Vertices are 0-based in
//! the API and 1-based in every text form.

use std::fmt;

use crate::error::{Error, Result};

pub(crate) const WORD_BITS: usize = 64;

pub(crate) fn word_count(n: usize) -> usize {
    n.div_ceil(WORD_BITS)
}

/// Mask of the valid bits in the last word of an `n`-bit set.
pub(crate) fn tail_mask(n: usize) -> u64 {
    match n % WORD_BITS {
        0 => u64::MAX,
        r => (1u64 << r) - 1,
    }
}

/// Mask with the low `n` bits set (`n <= 64`).
pub fn full_mask(n: usize) -> u64 {
    debug_assert!(n <= WORD_BITS);
    if n == WORD_BITS {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Trivial points: the empty set, singletons, and `[n]` when `d` is odd.
/// Mask form of [`is_trivial_edge`] for `n <= 64`.
#[inline]
pub fn is_trivial_mask(mask: u64, n: usize, d: usize) -> bool {
    mask.count_ones() <= 1 || (d % 2 == 1 && mask == full_mask(n))
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    n: usize,
    words: Vec<u64>,
}

impl Edge {
    pub fn empty(n: usize) -> Self {
        Edge {
            n,
            words: vec![0; word_count(n)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut words = vec![u64::MAX; word_count(n)];
        if let Some(last) = words.last_mut() {
            *last &= tail_mask(n);
        }
        Edge { n, words }
    }

    /// Builds an edge from a bitmask; bit `i` is vertex `i` (0-based).
    pub fn from_mask(n: usize, mask: u64) -> Result<Self> {
        if n > WORD_BITS {
            return Err(Error::InvalidEdge(format!(
                "mask form needs n <= 64, got n={n}"
            )));
        }
        if mask & !full_mask(n) != 0 {
            return Err(Error::InvalidEdge(format!(
                "mask {mask:#x} has bits above n={n}"
            )));
        }
        let mut e = Edge::empty(n);
        if n > 0 {
            e.words[0] = mask;
        }
        Ok(e)
    }

    pub(crate) fn from_words(n: usize, mut words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), word_count(n));
        if let Some(last) = words.last_mut() {
            *last &= tail_mask(n);
        }
        Edge { n, words }
    }

    /// Builds an edge from 0-based vertex indices.
    pub fn from_vertices<I: IntoIterator<Item = usize>>(n: usize, vertices: I) -> Result<Self> {
        let mut e = Edge::empty(n);
        for v in vertices {
            if v >= n {
                return Err(Error::InvalidEdge(format!(
                    "vertex {} outside [1, {n}]",
                    v + 1
                )));
            }
            e.words[v / WORD_BITS] |= 1 << (v % WORD_BITS);
        }
        Ok(e)
    }

    /// Parses either a 0/1 string of length `n` or a brace list such as
    /// `{1,4,5}` (1-based).
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix('{') {
            let inner = inner
                .strip_suffix('}')
                .ok_or_else(|| Error::Parse(format!("unterminated edge `{s}`")))?;
            let mut vs = Vec::new();
            for tok in inner.split(',').map(str::trim).filter(|t| !t.is_empty()) {
                let v: usize = tok
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad vertex `{tok}` in `{s}`")))?;
                if v == 0 {
                    return Err(Error::Parse(format!(
                        "vertices are 1-based, found 0 in `{s}`"
                    )));
                }
                vs.push(v - 1);
            }
            return Edge::from_vertices(n, vs);
        }
        if s.len() != n {
            return Err(Error::Parse(format!(
                "expected a 0/1 string of length {n}, got `{s}`"
            )));
        }
        let mut vs = Vec::new();
        for (i, c) in s.chars().enumerate() {
            match c {
                '1' => vs.push(i),
                '0' => {}
                _ => return Err(Error::Parse(format!("unexpected `{c}` in edge `{s}`"))),
            }
        }
        Edge::from_vertices(n, vs)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.n && self.words[v / WORD_BITS] >> (v % WORD_BITS) & 1 == 1
    }

    /// The single-word mask, when `n <= 64`.
    pub fn as_mask(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    /// Members in ascending order (0-based).
    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(wi * WORD_BITS + b)
            })
        })
    }

    pub fn is_trivial(&self, d: usize) -> bool {
        is_trivial_edge(self, d)
    }

    /// Renders the edge as a 0/1 string of length `n`.
    pub fn to_bit_string(&self) -> String {
        (0..self.n)
            .map(|i| if self.contains(i) { '1' } else { '0' })
            .collect()
    }

    /// Renders the edge as a 1-based brace list, e.g. `{1,4,5}`.
    pub fn to_brace_string(&self) -> String {
        let body: Vec<String> = self.vertices().map(|v| (v + 1).to_string()).collect();
        format!("{{{}}}", body.join(","))
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Edge{}", self.to_brace_string())
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_brace_string())
    }
}

/// True for the empty set, singletons, and `[n]` when `d` is odd.
pub fn is_trivial_edge(a: &Edge, d: usize) -> bool {
    let size = a.len();
    size <= 1 || (d % 2 == 1 && size == a.n)
}

/// A hypergraph on `[n]` with deduplicated edges (first occurrence kept).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Edge>,
}

impl Hypergraph {
    pub fn new(n: usize, edges: Vec<Edge>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        let mut kept = Vec::with_capacity(edges.len());
        for e in edges {
            if e.n() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: e.n(),
                });
            }
            if seen.insert(e.clone()) {
                kept.push(e);
            }
        }
        Ok(Hypergraph { n, edges: kept })
    }

    /// All subsets of `[n]` with at least `k` vertices (`n <= 64`).
    pub fn all_subsets_at_least(n: usize, k: usize) -> Result<Self> {
        if n > 30 {
            return Err(Error::OverCap { n, cap: 30 });
        }
        let edges = (0..1u64 << n)
            .filter(|m| m.count_ones() as usize >= k)
            .map(|m| Edge::from_mask(n, m))
            .collect::<Result<Vec<_>>>()?;
        Ok(Hypergraph { n, edges })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn min_edge_size(&self) -> Option<usize> {
        self.edges.iter().map(Edge::len).min()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_both_forms() {
        let a = Edge::parse("{1,4,5}", 5).unwrap();
        let b = Edge::parse("10011", 5).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_bit_string(), "10011");
        assert_eq!(a.to_brace_string(), "{1,4,5}");
        assert_eq!(a.as_mask(), Some(0b11001));
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!(Edge::parse("{0,1}", 3).is_err());
        assert!(Edge::parse("{4}", 3).is_err());
        assert!(Edge::parse("101", 4).is_err());
        assert!(Edge::parse("1x1", 3).is_err());
        assert!(Edge::parse("{1,2", 3).is_err());
    }

    #[test]
    fn trivial_edges() {
        assert!(Edge::empty(5).is_trivial(4));
        assert!(Edge::full(5).is_trivial(3));
        assert!(!Edge::full(5).is_trivial(4));
        assert!(Edge::parse("{2}", 5).unwrap().is_trivial(4));
        assert!(!Edge::parse("{2,3}", 5).unwrap().is_trivial(3));
        for m in 0..32u64 {
            let e = Edge::from_mask(5, m).unwrap();
            for d in 2..=5 {
                assert_eq!(e.is_trivial(d), is_trivial_mask(m, 5, d));
            }
        }
    }

    #[test]
    fn wide_edges() {
        let e = Edge::from_vertices(130, [0, 64, 129]).unwrap();
        assert_eq!(e.len(), 3);
        assert_eq!(e.vertices().collect::<Vec<_>>(), vec![0, 64, 129]);
        assert!(e.as_mask().is_none());
        assert_eq!(Edge::full(130).len(), 130);
    }

    #[test]
    fn hypergraph_dedups() {
        let e = Edge::parse("{1,2}", 3).unwrap();
        let g = Hypergraph::new(3, vec![e.clone(), e]).unwrap();
        assert_eq!(g.edges().len(), 1);
        let all = Hypergraph::all_subsets_at_least(4, 2).unwrap();
        assert_eq!(all.edges().len(), 11);
        assert_eq!(all.min_edge_size(), Some(2));
    }
}
