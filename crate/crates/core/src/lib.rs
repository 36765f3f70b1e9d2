//! Exact computation with forbidden configurations of (0,1)-matrices.

pub mod analysis;
pub mod canon;
pub mod claims;
pub mod constructions;
pub mod containment;
pub mod error;
pub mod family_spec;
pub mod matrix;
pub mod search;

pub use canon::{canonicalize, Configuration};
pub use containment::{contains, contains_any, contains_incremental, naive_contains, Certificate};
pub use error::{Error, Result};
pub use matrix::{BitColumn, Matrix, SimpleMatrix};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/configurations.md")]
    pub mod configurations {}
    #[doc = include_str!("../../../book/src/containment.md")]
    pub mod containment {}
    #[doc = include_str!("../../../book/src/search.md")]
    pub mod search {}
    #[doc = include_str!("../../../book/src/constructions.md")]
    pub mod constructions {}
    #[doc = include_str!("../../../book/src/claims.md")]
    pub mod claims {}
    #[doc = include_str!("../../../book/src/analysis.md")]
    pub mod analysis {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
