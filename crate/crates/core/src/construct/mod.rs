//! Family constructions.

mod compose;
mod cycle;
mod general;
mod partition;
mod patch;
mod pivot;

pub use compose::compose_on_sets;
pub use cycle::cycle_family;
pub use general::{
    build_general, composition_sets, dedup, general_family, general_size_bound, min_edge_family,
    raw_general, Construction, SELF_CHECK_CAP,
};
pub use partition::{
    blocks, extend_blocks_even, extend_blocks_odd, make_partition, pair_bicolorings, Block,
    BlockSet, Partition,
};
pub use patch::{patch, patch_coloring};
pub use pivot::{find_pivot, is_pivot, CircularPerm};
