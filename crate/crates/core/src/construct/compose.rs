use rayon::prelude::*;

use super::cycle::cycle_on;
use super::partition::Block;
use crate::error::{Error, Result};
use crate::family::{Family, Provenance};

/// Lays a cycle family of order `d` on every `(d + 1)`-set, vertices in
/// ascending order, and concatenates the results in input order.
///
/// The output bisects every edge meeting some set in at least two vertices
/// (even `d`), or in between two and `d` vertices (odd `d`).
pub fn compose_on_sets(sets: &[Block], n: usize, d: usize) -> Result<Family> {
    for s in sets {
        if s.len() != d + 1 {
            return Err(Error::Precondition(format!(
                "composition set has {} vertices, expected d+1 = {}",
                s.len(),
                d + 1
            )));
        }
        if let Some(&v) = s.iter().find(|&&v| v >= n) {
            return Err(Error::Precondition(format!(
                "vertex {} outside [1, {n}]",
                v + 1
            )));
        }
    }
    let parts = sets
        .par_iter()
        .map(|s| {
            let mut sorted = s.clone();
            sorted.sort_unstable();
            cycle_on(&sorted, n)
        })
        .collect::<Result<Vec<_>>>()?;
    Family::from_colorings(n, d, parts.into_iter().flatten(), Provenance::Cycle)
}
