//! Exact storage-latency tradeoff computations for the 3x3 cache-aided
//! interference channel: region classification and the closed-form
//! piecewise FDT, the file-splitting linear program with an exact simplex
//! solver, and a bit-level placement/delivery simulator that reproduces the
//! analytical delivery time.

pub mod delivery;
pub mod error;
pub mod lp;
pub mod model;
pub mod placement;
pub mod rat;
pub mod theorem;
pub mod verify;

pub use error::{Error, Result};
pub use model::{
    check_feasible, classify_region, enumerate_cache_states, state_size_class, CacheBudget,
    CacheState, Region, SplitRatios,
};
pub use rat::{fmt_rat, parse_rat, Rat};
pub use theorem::{
    broadcast_baseline_fdt, closed_form_fdt, closed_form_ratios, tx_only_fdt, FdtValue,
};
