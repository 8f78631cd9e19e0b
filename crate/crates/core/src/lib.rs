//! Componentwise polymatroidal monomial ideals: exchange checks, linear-quotients orders,
//! shellings of multicomplexes, and seeded experiments.
//!
//! Monomials are exponent vectors with 0-based variable indices; every text and JSON format
//! uses 1-based indices. Generator sets are kept sorted with larger exponent vectors first
//! in lexicographic order, so all outputs are deterministic.

pub mod constructors;
pub mod error;
pub mod experiment;
pub mod ideal;
pub mod io;
pub mod linear_quotients;
pub mod monomial;
pub mod multicomplex;
pub mod polymatroid;
pub mod random;

pub use error::{Error, Result};
pub use ideal::{EquigeneratedIdeal, MonomialIdeal};
pub use monomial::Monomial;
