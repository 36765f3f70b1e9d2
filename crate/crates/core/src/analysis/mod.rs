//! Procedures extracted from structural arguments: row classes, extraction
//! of complemented identities, the two block shapes of `Q_9`-avoiding
//! columns, and the layered decomposition of `Q_3(t)`-avoiding matrices.

mod q3;
mod q9;
mod rows;

pub use q3::{
    find_t_ik, find_t_ik_capped, q3_stability_decompose, Discarded, Layer, StabilityDecomposition, StabilityParams,
    TIkResult,
};
pub use q9::{q9_classify, type1_example, type2_example, Q9Outcome, Q9Type, Q9TypePartition};
pub use rows::{avoiding_rows, classify_rows, identifying_rows, AvoidingRows, RowClass};
