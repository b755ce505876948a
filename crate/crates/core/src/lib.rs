//! Rooted tree maps acting on the word algebra of multiple L-values.
//!
//! The crate covers the Connes–Kreimer Hopf algebra of rooted forests, the
//! noncommutative polynomial algebra over `x` and `y_j` (`j` mod `r`), the
//! harmonic and diamond products, tree maps with their polynomials `F_f`
//! and `G_f`, numerical evaluation of multiple L-values, and a registry of
//! executable algebraic laws.

pub mod context;
pub mod error;
pub mod hopf;
pub mod laws;
pub mod lincomb;
pub mod mlv;
pub mod parse;
pub mod products;
pub mod rational;
pub mod rtm;
pub mod words;

pub use context::{shared, BasisLetter, Context, Mutation};
pub use error::{Error, Result};
pub use hopf::{Forest, ForestSum, TensorSum, Tree};
pub use lincomb::LinComb;
pub use rational::Rational;
pub use words::{Letter, MLVIndex, NCPoly, RootIndex, Word};
