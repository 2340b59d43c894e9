//! Informativity and generic local identifiability of linear dynamic
//! networks, decided with an exact Gröbner-basis engine, a max-flow path
//! criterion and randomized numeric cross-checks.

pub mod cli;
pub mod error;
pub mod groebner;
pub mod identifiability;
pub mod informativity;
pub mod netmodel;
pub mod oracle;
pub mod polyalg;
pub mod ratmat;
pub mod report;

pub use error::{Error, Result};
