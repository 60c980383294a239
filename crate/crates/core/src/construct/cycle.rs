//! Circular-rotation families on `d + 1` vertices.
//!
//! `d + 1` slots sit on a circle. The first `floor(d/2)` slots are colored
//! `+1`, the next slot is left uncolored, and the remaining slots are colored
//! `-1` (for odd `d` this leaves one more `-1` slot than `+1` slots). The
//! `k`-th rotation places vertex `j` in slot `(j + k) mod (d + 1)`, and each
//! vertex takes its slot's color.

use crate::coloring::{Bicoloring, ChunkBuilder, Sign};
use crate::error::{Error, Result};
use crate::family::{Family, Provenance};

/// 0-based index of the uncolored slot.
pub(crate) fn uncolored_slot(d: usize) -> usize {
    d / 2
}

/// Color of 0-based slot `s` in a ring of `d + 1` slots.
pub(crate) fn slot_sign(d: usize, s: usize) -> Sign {
    let gap = uncolored_slot(d);
    match s.cmp(&gap) {
        std::cmp::Ordering::Less => Sign::Plus,
        std::cmp::Ordering::Equal => Sign::Zero,
        std::cmp::Ordering::Greater => Sign::Minus,
    }
}

/// Rotation `k` of the cycle family laid on `vertices` (which must have
/// `d + 1` entries) inside `[n]`.
pub(crate) fn rotation_on(vertices: &[usize], n: usize, k: usize) -> Result<Bicoloring> {
    let ring = vertices.len();
    let d = ring - 1;
    let mut b = ChunkBuilder::with_capacity(ring / 32 + 2);
    for (j, &v) in vertices.iter().enumerate() {
        let sign = slot_sign(d, (j + k) % ring);
        if sign != Sign::Zero && !b.set(v, sign) {
            return Err(Error::Precondition(format!(
                "vertex {} repeated in ring",
                v + 1
            )));
        }
    }
    b.finish(n)
}

/// All `d + 1` rotations laid on `vertices` in order `X_1, ..., X_{d+1}`.
pub(crate) fn cycle_on(vertices: &[usize], n: usize) -> Result<Vec<Bicoloring>> {
    (0..vertices.len())
        .map(|k| rotation_on(vertices, n, k))
        .collect()
}

/// The `d + 1` rotations on `[d + 1]`.
pub fn cycle_family(d: usize) -> Result<Family> {
    if d < 2 {
        return Err(Error::OrderOutOfRange {
            n: d + 1,
            d,
            min: 2,
            max: d,
        });
    }
    let vertices: Vec<usize> = (0..=d).collect();
    Family::from_colorings(d + 1, d, cycle_on(&vertices, d + 1)?, Provenance::Cycle)
}
