//! The 16-dimensional exceptional triple as the Peirce 1-space of the
//! Albert triple relative to `[1]`, i.e. the (1,2) and (1,3) entries.
//!
//! Coordinates `e_k^+, e_k^-` for `k = 1..=8`: `e_k` for `k <= 4` is the
//! raw `(1,2)` octonion component `c_k`, `e_{k+4}` the raw `(1,3)` one.

use std::sync::OnceLock;

use super::sparse::SparseTriple;

pub const BICAYLEY_DIM: usize = 16;

/// Index of `e_k^sign`.
pub const fn bicayley_index(k: usize, plus: bool) -> usize {
    2 * (k - 1) + if plus { 0 } else { 1 }
}

pub fn labels() -> Vec<String> {
    (1..=8).flat_map(|k| [format!("e{k}+"), format!("e{k}-")]).collect()
}

/// Structure constants, or `None` if the subspace failed to be closed
/// under the Albert product.
pub fn structure() -> Option<&'static SparseTriple> {
    static CELL: OnceLock<Option<SparseTriple>> = OnceLock::new();
    CELL.get_or_init(|| {
        let keep: Vec<usize> = (3..3 + BICAYLEY_DIM).collect();
        super::albert::raw_structure().restrict(&keep)
    })
    .as_ref()
}
