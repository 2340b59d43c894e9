//! Buchberger engine, elimination and variety dimension.

mod buchberger;
mod dimension;
mod ideal;

pub use buchberger::{
    groebner_basis, groebner_basis_with, s_polynomial, GbConfig, GbStats, GroebnerBasis,
    DEFAULT_STEP_BUDGET,
};
pub use dimension::{
    dimension_of_basis, elimination_ideal, ideal_dimension, ideal_dimension_with, Dimension,
    EXACT_SEARCH_VARS,
};
pub use ideal::Ideal;
