//! The general `(n, d)` construction and its min-edge-size variant.
//!
//! Even `d < n-1`: pair colorings over the `d/2`-block partition of `[n]`,
//! plus cycle families laid on each block union extended by one vertex.
//! Odd `d < n-1`: the same over `[n-1]` at order `d-1`, with vertex `n`
//! colored `+1` in every pair coloring and added to every extended block.
//! `d = n-1` is the cycle family itself.

use std::collections::HashSet;

use log::debug;

use super::compose::compose_on_sets;
use super::cycle::cycle_family;
use super::partition::{
    blocks, extend_blocks_even, extend_blocks_odd, make_partition, pair_bicolorings,
    pair_bicolorings_with, Block,
};
use super::patch::patch;
use crate::bounds::general_upper;
use crate::error::{check_order, Error, Result};
use crate::family::Family;
use crate::verify::{verify_full_with, CoverageReport, Mode, VerifyOptions};

/// Largest `n` for which construction results are checked exhaustively
/// (and patched if needed).
pub const SELF_CHECK_CAP: usize = 20;

#[derive(Clone, Debug)]
pub struct Construction {
    pub family: Family,
    /// Size before duplicate removal and patching.
    pub raw_size: usize,
    /// Edges the construction missed, one patch coloring each.
    pub patched: Vec<crate::edge::Edge>,
    /// Exhaustive report after patching; `None` above [`SELF_CHECK_CAP`].
    pub verification: Option<CoverageReport>,
}

/// The `(d + 1)`-sets the cycle families are laid on.
pub fn composition_sets(n: usize, d: usize) -> Result<Vec<Block>> {
    check_order(n, d, n.saturating_sub(1))?;
    if d == n - 1 {
        return Ok(vec![(0..n).collect()]);
    }
    if d.is_multiple_of(2) {
        extend_blocks_even(&blocks(&make_partition(n, d)?), n)
    } else {
        extend_blocks_odd(&blocks(&make_partition(n - 1, d - 1)?), n)
    }
}

/// The construction before duplicate removal, verification and patching.
pub fn raw_general(n: usize, d: usize) -> Result<Family> {
    check_order(n, d, n.saturating_sub(1))?;
    if d == n - 1 {
        return cycle_family(d);
    }
    let mut family = if d.is_multiple_of(2) {
        pair_bicolorings(&make_partition(n, d)?)?
    } else {
        pair_bicolorings_with(&make_partition(n - 1, d - 1)?, Some(n - 1), n, d)?
    };
    family.extend_from(compose_on_sets(&composition_sets(n, d)?, n, d)?)?;
    Ok(family)
}

/// Removes exact duplicates, keeping first occurrences in order. With
/// `by_negation`, a member whose negation appeared earlier is dropped too.
pub fn dedup(f: &Family, by_negation: bool) -> Family {
    let mut seen = HashSet::with_capacity(f.len());
    let mut out = f.clone();
    out.retain_indices(|_, x| {
        if by_negation && seen.contains(&x.negated()) {
            return false;
        }
        seen.insert(x.clone())
    });
    out
}

pub fn build_general(n: usize, d: usize) -> Result<Construction> {
    let raw = raw_general(n, d)?;
    let raw_size = raw.len();
    let mut family = dedup(&raw, false);
    debug!(
        "general ({n}, {d}): {raw_size} raw, {} after dedup",
        family.len()
    );
    let mut patched = Vec::new();
    let mut verification = None;
    if n <= SELF_CHECK_CAP {
        let opts = VerifyOptions {
            uncovered_cap: usize::MAX,
            ..Default::default()
        };
        let report = verify_full_with(&family, Mode::Exhaustive, &opts)?;
        if !report.complete {
            family = patch(&family, &report.uncovered)?;
            patched = report.uncovered;
        }
        let report = verify_full_with(&family, Mode::Exhaustive, &VerifyOptions::default())?;
        if !report.complete {
            return Err(Error::Internal(format!(
                "family for (n={n}, d={d}) still incomplete after patching"
            )));
        }
        verification = Some(report);
    }
    Ok(Construction {
        family,
        raw_size,
        patched,
        verification,
    })
}

/// Construction for `2 <= d <= n-1` with at most
/// `C(ceil(2(n-1)/(d-1)), 2) + ceil((n-1)/(d-1)) (d+1)` members.
pub fn general_family(n: usize, d: usize) -> Result<Family> {
    build_general(n, d).map(|c| c.family)
}

/// The composition part alone, for hypergraphs whose edges all have at
/// least `k` vertices where `(d-1) k > n-1`.
pub fn min_edge_family(n: usize, d: usize, k: usize) -> Result<Family> {
    check_order(n, d, n.saturating_sub(1))?;
    if (d - 1) * k < n {
        return Err(Error::Precondition(format!(
            "min-edge construction needs (d-1)k > n-1, got ({d}-1)*{k} <= {}",
            n - 1
        )));
    }
    if d == n - 1 {
        return cycle_family(d);
    }
    Ok(dedup(
        &compose_on_sets(&composition_sets(n, d)?, n, d)?,
        false,
    ))
}

/// The size guaranteed by [`general_family`].
pub fn general_size_bound(n: usize, d: usize) -> u64 {
    general_upper(n, d)
}
