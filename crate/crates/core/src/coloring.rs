//! Bicolorings of `d`-subsets of `[n]` and the induced-bisection predicate.
//!
//! A [`Bicoloring`] is the signed support vector in `{+1, 0, -1}^n` with
//! exactly `d` non-zero entries. It is stored sparsely as a sorted list of
//! 64-bit word chunks, each carrying a `+1` mask and a `-1` mask, so that
//! families over very large `n` stay small when their supports are
//! clustered (as every construction in this crate produces).

use std::fmt;
use std::str::FromStr;

use crate::edge::{full_mask, Edge, WORD_BITS};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Zero,
    Minus,
}

impl Sign {
    pub fn value(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Zero => 0,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Zero => Sign::Zero,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Zero => '0',
            Sign::Minus => '-',
        }
    }

    pub fn from_char(c: char) -> Option<Sign> {
        match c {
            '+' => Some(Sign::Plus),
            '0' => Some(Sign::Zero),
            // ASCII hyphen-minus, plus the Unicode minus sign.
            '-' | '\u{2212}' => Some(Sign::Minus),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct Chunk {
    pub(crate) word: u32,
    pub(crate) pos: u64,
    pub(crate) neg: u64,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bicoloring {
    n: usize,
    d: usize,
    chunks: Box<[Chunk]>,
}

/// Accumulates signed vertices into sorted word chunks.
#[derive(Default)]
pub(crate) struct ChunkBuilder {
    chunks: Vec<Chunk>,
}

impl ChunkBuilder {
    pub(crate) fn with_capacity(cap: usize) -> Self {
        ChunkBuilder {
            chunks: Vec::with_capacity(cap),
        }
    }

    /// Returns false if the vertex already carries a sign.
    pub(crate) fn set(&mut self, v: usize, sign: Sign) -> bool {
        let word = (v / WORD_BITS) as u32;
        let bit = 1u64 << (v % WORD_BITS);
        // Constructions emit vertices mostly in ascending order, so check the
        // tail before falling back to a binary search.
        let idx = match self.chunks.last() {
            Some(c) if c.word == word => self.chunks.len() - 1,
            Some(c) if c.word < word => {
                self.chunks.push(Chunk {
                    word,
                    pos: 0,
                    neg: 0,
                });
                self.chunks.len() - 1
            }
            None => {
                self.chunks.push(Chunk {
                    word,
                    pos: 0,
                    neg: 0,
                });
                0
            }
            _ => match self.chunks.binary_search_by_key(&word, |c| c.word) {
                Ok(i) => i,
                Err(i) => {
                    self.chunks.insert(
                        i,
                        Chunk {
                            word,
                            pos: 0,
                            neg: 0,
                        },
                    );
                    i
                }
            },
        };
        let c = &mut self.chunks[idx];
        if (c.pos | c.neg) & bit != 0 {
            return false;
        }
        match sign {
            Sign::Plus => c.pos |= bit,
            Sign::Minus => c.neg |= bit,
            Sign::Zero => {}
        }
        true
    }

    pub(crate) fn finish(mut self, n: usize) -> Result<Bicoloring> {
        self.chunks.retain(|c| c.pos | c.neg != 0);
        let d = self
            .chunks
            .iter()
            .map(|c| (c.pos | c.neg).count_ones() as usize)
            .sum::<usize>();
        if d < 2 || d > n {
            return Err(Error::InvalidBicoloring(format!(
                "weight {d} outside [2, {n}]"
            )));
        }
        Ok(Bicoloring {
            n,
            d,
            chunks: self.chunks.into_boxed_slice(),
        })
    }
}

impl Bicoloring {
    /// Builds a bicoloring from 0-based `+1` and `-1` vertex sets.
    pub fn from_parts<P, M>(n: usize, plus: P, minus: M) -> Result<Self>
    where
        P: IntoIterator<Item = usize>,
        M: IntoIterator<Item = usize>,
    {
        let mut b = ChunkBuilder::default();
        for (vs, sign) in [
            (plus.into_iter().collect::<Vec<_>>(), Sign::Plus),
            (minus.into_iter().collect::<Vec<_>>(), Sign::Minus),
        ] {
            for v in vs {
                if v >= n {
                    return Err(Error::InvalidBicoloring(format!(
                        "vertex {} outside [1, {n}]",
                        v + 1
                    )));
                }
                if !b.set(v, sign) {
                    return Err(Error::InvalidBicoloring(format!(
                        "vertex {} colored twice",
                        v + 1
                    )));
                }
            }
        }
        b.finish(n)
    }

    /// Builds a bicoloring from a dense sign vector.
    pub fn from_signs(signs: &[Sign]) -> Result<Self> {
        let mut b = ChunkBuilder::default();
        for (i, &s) in signs.iter().enumerate() {
            if s != Sign::Zero {
                b.set(i, s);
            }
        }
        b.finish(signs.len())
    }

    /// Builds a bicoloring from `+1`/`-1` masks (`n <= 64`).
    pub fn from_masks(n: usize, pos: u64, neg: u64) -> Result<Self> {
        if n > WORD_BITS || (pos | neg) & !full_mask(n) != 0 || pos & neg != 0 {
            return Err(Error::InvalidBicoloring(format!(
                "masks {pos:#x}/{neg:#x} invalid for n={n}"
            )));
        }
        let mut b = ChunkBuilder::default();
        b.chunks.push(Chunk { word: 0, pos, neg });
        b.finish(n)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of non-zero entries.
    pub fn weight(&self) -> usize {
        self.d
    }

    pub fn sign(&self, v: usize) -> Sign {
        let word = (v / WORD_BITS) as u32;
        let bit = 1u64 << (v % WORD_BITS);
        match self.chunks.binary_search_by_key(&word, |c| c.word) {
            Ok(i) if self.chunks[i].pos & bit != 0 => Sign::Plus,
            Ok(i) if self.chunks[i].neg & bit != 0 => Sign::Minus,
            _ => Sign::Zero,
        }
    }

    fn members(&self, pick: fn(&Chunk) -> u64) -> impl Iterator<Item = usize> + '_ {
        self.chunks.iter().flat_map(move |c| {
            let mut bits = pick(c);
            let base = c.word as usize * WORD_BITS;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(base + b)
            })
        })
    }

    /// Vertices colored `+1`, ascending.
    pub fn pos(&self) -> impl Iterator<Item = usize> + '_ {
        self.members(|c| c.pos)
    }

    /// Vertices colored `-1`, ascending.
    pub fn neg(&self) -> impl Iterator<Item = usize> + '_ {
        self.members(|c| c.neg)
    }

    /// The support `pos ∪ neg`, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.members(|c| c.pos | c.neg)
    }

    pub fn pos_count(&self) -> usize {
        self.chunks
            .iter()
            .map(|c| c.pos.count_ones() as usize)
            .sum()
    }

    pub fn neg_count(&self) -> usize {
        self.chunks
            .iter()
            .map(|c| c.neg.count_ones() as usize)
            .sum()
    }

    pub fn negated(&self) -> Bicoloring {
        let chunks = self
            .chunks
            .iter()
            .map(|c| Chunk {
                word: c.word,
                pos: c.neg,
                neg: c.pos,
            })
            .collect();
        Bicoloring {
            n: self.n,
            d: self.d,
            chunks,
        }
    }

    /// The `(+1, -1)` masks when `n <= 64`.
    pub fn masks(&self) -> Option<(u64, u64)> {
        if self.n > WORD_BITS {
            return None;
        }
        Some(self.chunks.first().map_or((0, 0), |c| (c.pos, c.neg)))
    }

    /// Signed sum and support overlap against an edge given word-by-word.
    #[inline]
    pub(crate) fn probe(&self, mut word: impl FnMut(usize) -> u64) -> (i64, bool) {
        let mut sum = 0i64;
        let mut touched = 0u64;
        for c in self.chunks.iter() {
            let a = word(c.word as usize);
            sum += (a & c.pos).count_ones() as i64 - (a & c.neg).count_ones() as i64;
            touched |= a & (c.pos | c.neg);
        }
        (sum, touched != 0)
    }

    fn check_dim(&self, a: &Edge) -> Result<()> {
        if self.n != a.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: a.n(),
            });
        }
        Ok(())
    }
}

impl FromStr for Bicoloring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let signs = s
            .trim()
            .chars()
            .map(|c| {
                Sign::from_char(c)
                    .ok_or_else(|| Error::Parse(format!("unexpected `{c}` in bicoloring `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Bicoloring::from_signs(&signs)
    }
}

impl fmt::Display for Bicoloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut line = vec![b'0'; self.n];
        for v in self.pos() {
            line[v] = b'+';
        }
        for v in self.neg() {
            line[v] = b'-';
        }
        // Only ASCII bytes were written.
        f.write_str(std::str::from_utf8(&line).expect("ascii"))
    }
}

impl fmt::Debug for Bicoloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n <= 128 {
            write!(f, "Bicoloring(\"{self}\")")
        } else {
            write!(f, "Bicoloring(n={}, d={})", self.n, self.d)
        }
    }
}

/// `|a ∩ pos(x)| - |a ∩ neg(x)|`.
pub fn signed_sum(x: &Bicoloring, a: &Edge) -> Result<i64> {
    x.check_dim(a)?;
    let words = a.words();
    Ok(x.probe(|w| words[w]).0)
}

/// True iff `a` meets `pos(x)` and `neg(x)` in equally many, and at least
/// one, vertices.
pub fn induced_bisects(x: &Bicoloring, a: &Edge) -> Result<bool> {
    x.check_dim(a)?;
    let words = a.words();
    let (sum, touched) = x.probe(|w| words[w]);
    Ok(sum == 0 && touched)
}

/// Vector-language alias of [`induced_bisects`]: `<v, p> = 0` with some
/// coordinate non-zero in both.
pub fn nontrivially_orthogonal(v: &Bicoloring, p: &Edge) -> Result<bool> {
    induced_bisects(v, p)
}

/// Mask form of [`induced_bisects`].
#[inline]
pub fn bisects_mask(pos: u64, neg: u64, a: u64) -> bool {
    (a & pos).count_ones() == (a & neg).count_ones() && a & (pos | neg) != 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bc(s: &str) -> Bicoloring {
        s.parse().unwrap()
    }

    fn edge(s: &str, n: usize) -> Edge {
        Edge::parse(s, n).unwrap()
    }

    #[test]
    fn signed_sum_examples() {
        assert_eq!(signed_sum(&bc("+-000"), &edge("{1,2}", 5)).unwrap(), 0);
        assert_eq!(signed_sum(&bc("+-000"), &edge("{1,3}", 5)).unwrap(), 1);
        assert_eq!(
            signed_sum(&bc("++0--"), &edge("{1,2,3,4,5}", 5)).unwrap(),
            0
        );
    }

    #[test]
    fn induced_bisects_examples() {
        assert!(induced_bisects(&bc("+-000"), &edge("{1,2}", 5)).unwrap());
        assert!(!induced_bisects(&bc("+-000"), &edge("{3,4}", 5)).unwrap());
        assert!(induced_bisects(&bc("++0--"), &edge("{1,4}", 5)).unwrap());
    }

    #[test]
    fn orthogonality_examples() {
        assert!(nontrivially_orthogonal(&bc("+-000"), &edge("{1,2}", 5)).unwrap());
        assert!(!nontrivially_orthogonal(&bc("+0-00"), &edge("{2,4}", 5)).unwrap());
        assert!(nontrivially_orthogonal(&bc("++--0"), &edge("{1,3}", 5)).unwrap());
    }

    #[test]
    fn dimension_mismatch() {
        let r = induced_bisects(&bc("+-0"), &edge("{1,2}", 4));
        assert!(matches!(
            r,
            Err(Error::DimensionMismatch {
                expected: 3,
                found: 4
            })
        ));
    }

    #[test]
    fn weight_invariants() {
        assert!("+0000".parse::<Bicoloring>().is_err());
        assert!("0000".parse::<Bicoloring>().is_err());
        assert!("+x-".parse::<Bicoloring>().is_err());
        let x = bc("+\u{2212}0");
        assert_eq!(x.to_string(), "+-0");
        assert!(Bicoloring::from_parts(4, [0, 1], [1, 2]).is_err());
        assert!(Bicoloring::from_parts(4, [0], [5]).is_err());
    }

    #[test]
    fn sparse_storage_over_large_n() {
        let x = Bicoloring::from_parts(10_000, [9_999, 3], [64, 128]).unwrap();
        assert_eq!(x.weight(), 4);
        assert_eq!(x.sign(9_999), Sign::Plus);
        assert_eq!(x.sign(64), Sign::Minus);
        assert_eq!(x.sign(65), Sign::Zero);
        assert_eq!(x.pos().collect::<Vec<_>>(), vec![3, 9_999]);
        let a = Edge::from_vertices(10_000, [3, 128, 500]).unwrap();
        assert!(induced_bisects(&x, &a).unwrap());
    }

    fn arb_coloring(n: usize) -> impl Strategy<Value = Bicoloring> {
        prop::collection::vec(
            prop_oneof![Just(Sign::Plus), Just(Sign::Zero), Just(Sign::Minus)],
            n,
        )
        .prop_filter_map("weight >= 2", |s| Bicoloring::from_signs(&s).ok())
    }

    proptest! {
        #[test]
        fn text_round_trip(x in (2usize..80).prop_flat_map(arb_coloring)) {
            let back: Bicoloring = x.to_string().parse().unwrap();
            prop_assert_eq!(back, x);
        }

        #[test]
        fn negation_symmetry(x in arb_coloring(9), mask in 0u64..512) {
            let a = Edge::from_mask(9, mask).unwrap();
            prop_assert_eq!(
                induced_bisects(&x, &a).unwrap(),
                induced_bisects(&x.negated(), &a).unwrap()
            );
            prop_assert_eq!(x.negated().negated(), x);
        }
    }

    /// Dense dot-product route, independent of the chunked probe.
    fn dot_route(signs: &[i8], mask: u64) -> bool {
        let mut dot = 0i64;
        let mut overlap = false;
        for (i, &s) in signs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                dot += s as i64;
                overlap |= s != 0;
            }
        }
        dot == 0 && overlap
    }

    #[test]
    fn equivalence_with_dot_product_exhaustive() {
        // Every sign vector of weight >= 2 against every point, n <= 6; a
        // sampled sweep covers n up to 10 below.
        for n in 2..=6usize {
            let total = 3usize.pow(n as u32);
            for code in 0..total {
                let mut c = code;
                let signs: Vec<i8> = (0..n)
                    .map(|_| {
                        let t = (c % 3) as i8 - 1;
                        c /= 3;
                        t
                    })
                    .collect();
                let dense: Vec<Sign> = signs
                    .iter()
                    .map(|&t| match t {
                        1 => Sign::Plus,
                        -1 => Sign::Minus,
                        _ => Sign::Zero,
                    })
                    .collect();
                let Ok(x) = Bicoloring::from_signs(&dense) else {
                    continue;
                };
                for mask in 0..1u64 << n {
                    let a = Edge::from_mask(n, mask).unwrap();
                    assert_eq!(induced_bisects(&x, &a).unwrap(), dot_route(&signs, mask));
                }
            }
        }
    }

    proptest! {
        #[test]
        fn equivalence_with_dot_product_up_to_ten(
            signs in (2usize..=10).prop_flat_map(|n| prop::collection::vec(-1i8..=1, n)),
        ) {
            let n = signs.len();
            let dense: Vec<Sign> = signs.iter().map(|&t| match t {
                1 => Sign::Plus, -1 => Sign::Minus, _ => Sign::Zero }).collect();
            if let Ok(x) = Bicoloring::from_signs(&dense) {
                let (p, q) = x.masks().unwrap();
                for mask in 0..1u64 << n {
                    let a = Edge::from_mask(n, mask).unwrap();
                    let got = induced_bisects(&x, &a).unwrap();
                    prop_assert_eq!(got, dot_route(&signs, mask));
                    prop_assert_eq!(got, bisects_mask(p, q, mask));
                }
            }
        }

        #[test]
        fn parity_and_small_edges(x in arb_coloring(7)) {
            // Odd weight never bisects [n] in full support.
            let full = Edge::full(7);
            if x.weight() % 2 == 1 {
                prop_assert!(signed_sum(&x, &full).unwrap() % 2 != 0);
            }
            prop_assert!(!induced_bisects(&x, &Edge::empty(7)).unwrap());
            for v in 0..7 {
                let single = Edge::from_vertices(7, [v]).unwrap();
                prop_assert!(!induced_bisects(&x, &single).unwrap());
            }
        }
    }
}
