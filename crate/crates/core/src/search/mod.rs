//! Exact searches: forb values, Turán numbers and the row-deletion
//! decomposition.

mod engine;
pub mod goldens;
mod induction;
mod slope;
mod turan;

pub use engine::{
    forb, forb_exact, forb_restricted, ColumnUniverse, SearchOptions, SearchResult, Status, SumRange, COPY_LIST_CAP,
    MAX_SEARCH_ROWS,
};
pub use induction::{induction_decompose, Decomposition};
pub use slope::{slope_estimate, SlopeReport};
pub use turan::{ex_graph, ex_hypergraph, parse_graph, TuranResult};
