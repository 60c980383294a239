//! Block partitions of `[n]` into runs of `d/2` vertices, the pair colorings
//! built from them, and the `d`-sized block unions that get extended to
//! `(d + 1)`-sets for cycle-family composition.
//!
//! All blocks are sorted 0-based vertex lists.

use crate::coloring::Bicoloring;
use crate::error::{Error, Result};
use crate::family::{Family, Provenance};

pub type Block = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    n: usize,
    d: usize,
    full_blocks: Vec<Block>,
    short_block: Option<Block>,
    /// `(P¹, P²)`: the short block padded from the first and second full
    /// blocks respectively.
    padded: Option<(Block, Block)>,
}

impl Partition {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn full_blocks(&self) -> &[Block] {
        &self.full_blocks
    }

    pub fn short_block(&self) -> Option<&Block> {
        self.short_block.as_ref()
    }

    pub fn padded(&self) -> Option<(&Block, &Block)> {
        self.padded.as_ref().map(|(a, b)| (a, b))
    }

    pub fn is_divisible(&self) -> bool {
        self.short_block.is_none()
    }

    /// `ceil(2n/d)`: full blocks plus the short block, if any.
    pub fn block_count(&self) -> usize {
        self.full_blocks.len() + usize::from(self.short_block.is_some())
    }
}

/// Consecutive runs `{(i-1)d/2+1, ..., i d/2}`; any remainder becomes the
/// short block, padded by the leading vertices of `P_1` and `P_2`.
pub fn make_partition(n: usize, d: usize) -> Result<Partition> {
    if d < 2 || d % 2 == 1 {
        return Err(Error::Precondition(format!(
            "partition needs an even order >= 2, got d={d}"
        )));
    }
    if n < d {
        return Err(Error::Precondition(format!(
            "partition of n={n} into blocks of {} leaves fewer than 2 full blocks",
            d / 2
        )));
    }
    let half = d / 2;
    let full_blocks: Vec<Block> = (0..n / half)
        .map(|i| (i * half..(i + 1) * half).collect())
        .collect();
    let rem = n % half;
    let (short_block, padded) = if rem == 0 {
        (None, None)
    } else {
        let short: Block = (n - rem..n).collect();
        let q = half - rem;
        let pad = |from: &Block| {
            let mut b: Block = from[..q].to_vec();
            b.extend_from_slice(&short);
            b.sort_unstable();
            b
        };
        let p1 = pad(&full_blocks[0]);
        let p2 = pad(&full_blocks[1]);
        (Some(short), Some((p1, p2)))
    };
    Ok(Partition {
        n,
        d,
        full_blocks,
        short_block,
        padded,
    })
}

/// `+1` on every vertex of `plus`, `-1` on every vertex of `minus`.
fn block_pair(n: usize, plus: &Block, minus: &Block) -> Result<Bicoloring> {
    Bicoloring::from_parts(n, plus.iter().copied(), minus.iter().copied())
}

/// The pair colorings `B_{i,j}` for `i < j`, ordered by `i` then `j`.
/// The short block is replaced by `P²` when paired with `P_1` and by `P¹`
/// otherwise, so every member has weight exactly `d`.
pub fn pair_bicolorings(p: &Partition) -> Result<Family> {
    pair_bicolorings_with(p, None, p.n, p.d)
}

/// Pair colorings with an optional extra `+1` vertex, inside `[n_out]` at
/// order `d_out`.
pub(crate) fn pair_bicolorings_with(
    p: &Partition,
    extra_plus: Option<usize>,
    n_out: usize,
    d_out: usize,
) -> Result<Family> {
    let mut out = Family::new(n_out, d_out)?;
    let full = &p.full_blocks;
    let emit = |out: &mut Family, plus: &Block, minus: &Block| -> Result<()> {
        let x = match extra_plus {
            None => block_pair(n_out, plus, minus)?,
            Some(v) => Bicoloring::from_parts(
                n_out,
                plus.iter().copied().chain(std::iter::once(v)),
                minus.iter().copied(),
            )?,
        };
        out.push(x, Provenance::Pair)
    };
    for i in 0..full.len() {
        for j in i + 1..full.len() {
            emit(&mut out, &full[i], &full[j])?;
        }
        if let Some((p1, p2)) = &p.padded {
            let minus = if i == 0 { p2 } else { p1 };
            emit(&mut out, &full[i], minus)?;
        }
    }
    Ok(out)
}

/// The `d`-sized block unions `D_1, ..., D_{ceil(n/d)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSet {
    blocks: Vec<Block>,
}

impl BlockSet {
    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

fn union(a: &Block, b: &Block) -> Block {
    let mut u: Block = a.iter().chain(b).copied().collect();
    u.sort_unstable();
    u.dedup();
    u
}

/// `D_k = P_{2k-1} ∪ P_{2k}` for `k < ceil(n/d)`, and a final block that
/// depends on divisibility and the parity of `ceil(2n/d)`.
pub fn blocks(p: &Partition) -> BlockSet {
    let count = p.n.div_ceil(p.d);
    let full = &p.full_blocks;
    let mut blocks: Vec<Block> = (0..count - 1)
        .map(|k| union(&full[2 * k], &full[2 * k + 1]))
        .collect();
    let last = match &p.padded {
        None => {
            let m = full.len();
            union(&full[m - 2], &full[m - 1])
        }
        Some((_, p2)) => {
            if p.block_count() % 2 == 1 {
                union(&full[0], p2)
            } else {
                union(&full[full.len() - 1], p2)
            }
        }
    };
    blocks.push(last);
    BlockSet { blocks }
}

/// Extends each block `D` by its smallest missing vertex of `[n]`.
pub fn extend_blocks_even(b: &BlockSet, n: usize) -> Result<Vec<Block>> {
    b.blocks
        .iter()
        .map(|d| {
            let j = smallest_missing(d, n).ok_or_else(|| {
                Error::Precondition(format!("block of size {} already covers [n]", d.len()))
            })?;
            let mut e = d.clone();
            e.push(j);
            e.sort_unstable();
            Ok(e)
        })
        .collect()
}

fn smallest_missing(sorted: &Block, n: usize) -> Option<usize> {
    let mut expect = 0;
    for &v in sorted {
        if v != expect {
            break;
        }
        expect += 1;
    }
    (expect < n).then_some(expect)
}

/// Blocks over `[n-1]` extended by vertex `n` and by the vertex after
/// `max(D)` on the ring `[n-1]`; if that vertex is already in `D`, the
/// next free vertex clockwise is used instead.
pub fn extend_blocks_odd(b: &BlockSet, n: usize) -> Result<Vec<Block>> {
    if n < 3 {
        return Err(Error::Precondition(format!(
            "odd extension needs n >= 3, got {n}"
        )));
    }
    let ring = n - 1;
    b.blocks
        .iter()
        .map(|d| {
            if d.len() >= ring || d.iter().any(|&v| v >= ring) {
                return Err(Error::Precondition(format!(
                    "block {:?} is not a proper subset of [n-1]",
                    d.iter().map(|v| v + 1).collect::<Vec<_>>()
                )));
            }
            let max = *d.last().expect("blocks are non-empty");
            let mut next = (max + 1) % ring;
            while d.binary_search(&next).is_ok() {
                next = (next + 1) % ring;
            }
            let mut e = d.clone();
            e.push(next);
            e.push(n - 1);
            e.sort_unstable();
            Ok(e)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_based(b: &Block) -> Vec<usize> {
        b.iter().map(|v| v + 1).collect()
    }

    fn set(vs: &[usize]) -> Block {
        let mut b: Block = vs.iter().map(|v| v - 1).collect();
        b.sort_unstable();
        b
    }

    #[test]
    fn partition_examples() {
        let p = make_partition(6, 4).unwrap();
        let full: Vec<_> = p.full_blocks().iter().map(one_based).collect();
        assert_eq!(full, vec![vec![1, 2], vec![3, 4], vec![5, 6]]);
        assert!(p.short_block().is_none());

        let p = make_partition(7, 4).unwrap();
        assert_eq!(p.full_blocks().len(), 3);
        assert_eq!(one_based(p.short_block().unwrap()), vec![7]);
        let (p1, p2) = p.padded().unwrap();
        assert_eq!(one_based(p1), vec![1, 7]);
        assert_eq!(one_based(p2), vec![3, 7]);

        let p = make_partition(4, 4).unwrap();
        assert_eq!(
            p.full_blocks().iter().map(one_based).collect::<Vec<_>>(),
            vec![vec![1, 2], vec![3, 4]]
        );
    }

    #[test]
    fn partition_rejects_bad_parameters() {
        assert!(make_partition(7, 3).is_err());
        assert!(make_partition(3, 4).is_err());
        assert!(make_partition(7, 0).is_err());
    }

    #[test]
    fn pair_examples() {
        let f = pair_bicolorings(&make_partition(6, 4).unwrap()).unwrap();
        let s: Vec<String> = f.colorings().iter().map(ToString::to_string).collect();
        assert_eq!(s, ["++--00", "++00--", "00++--"]);

        let f = pair_bicolorings(&make_partition(7, 4).unwrap()).unwrap();
        assert_eq!(f.len(), 6);
        let s: Vec<String> = f.colorings().iter().map(ToString::to_string).collect();
        assert!(s.contains(&"++-000-".to_string()));
        assert!(s.contains(&"-0++00-".to_string()));
    }

    #[test]
    fn pair_count_and_weight() {
        for d in (2..=12).step_by(2) {
            for n in d..=30 {
                let p = make_partition(n, d).unwrap();
                let f = pair_bicolorings(&p).unwrap();
                let m = n.div_ceil(d / 2);
                assert_eq!(p.block_count(), m);
                assert_eq!(f.len(), m * (m - 1) / 2, "n={n} d={d}");
                assert!(f.colorings().iter().all(|x| x.weight() == d));
            }
        }
    }

    #[test]
    fn block_examples() {
        let b = blocks(&make_partition(6, 4).unwrap());
        assert_eq!(b.blocks(), &[set(&[1, 2, 3, 4]), set(&[3, 4, 5, 6])]);
        let b = blocks(&make_partition(7, 4).unwrap());
        assert_eq!(b.blocks(), &[set(&[1, 2, 3, 4]), set(&[3, 5, 6, 7])]);
        let b = blocks(&make_partition(8, 4).unwrap());
        assert_eq!(b.blocks(), &[set(&[1, 2, 3, 4]), set(&[5, 6, 7, 8])]);
    }

    #[test]
    fn blocks_have_size_d_and_cover() {
        for d in (2..=12).step_by(2) {
            for n in d..=40 {
                let b = blocks(&make_partition(n, d).unwrap());
                assert_eq!(b.len(), n.div_ceil(d));
                let mut seen = vec![false; n];
                for blk in b.blocks() {
                    assert_eq!(blk.len(), d, "n={n} d={d}");
                    blk.iter().for_each(|&v| seen[v] = true);
                }
                assert!(seen.iter().all(|&s| s), "n={n} d={d}");
            }
        }
    }

    #[test]
    fn extend_even_examples() {
        let b = BlockSet {
            blocks: vec![set(&[1, 2, 3, 4]), set(&[3, 4, 5, 6])],
        };
        let e = extend_blocks_even(&b, 6).unwrap();
        assert_eq!(e, vec![set(&[1, 2, 3, 4, 5]), set(&[1, 3, 4, 5, 6])]);
        let b = BlockSet {
            blocks: vec![set(&[2, 3])],
        };
        assert_eq!(extend_blocks_even(&b, 4).unwrap(), vec![set(&[1, 2, 3])]);
        let b = BlockSet {
            blocks: vec![set(&[1, 2, 3])],
        };
        assert!(extend_blocks_even(&b, 3).is_err());
    }

    #[test]
    fn extend_odd_examples() {
        let b = BlockSet {
            blocks: vec![set(&[1, 2, 3, 4]), set(&[3, 5, 6, 7])],
        };
        let e = extend_blocks_odd(&b, 8).unwrap();
        assert_eq!(e, vec![set(&[1, 2, 3, 4, 5, 8]), set(&[1, 3, 5, 6, 7, 8])]);
        let b = BlockSet {
            blocks: vec![set(&[4, 5])],
        };
        assert_eq!(extend_blocks_odd(&b, 6).unwrap(), vec![set(&[1, 4, 5, 6])]);
    }

    #[test]
    fn extend_odd_guard_skips_members() {
        // max(D)+1 wraps onto 1, which is already in D.
        let b = BlockSet {
            blocks: vec![set(&[1, 2, 5])],
        };
        assert_eq!(
            extend_blocks_odd(&b, 6).unwrap(),
            vec![set(&[1, 2, 3, 5, 6])]
        );
    }
}
