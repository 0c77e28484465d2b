//! Lower central series ideals of the free associative algebra.
//!
//! Everything is exact over the rationals. Graded components of the ideals
//! `L_k`, `M_k = A L_k A` and products `M_{i_1} ... M_{i_k}` are computed as
//! echelonized subspaces, which turns every containment question at a fixed
//! degree into exact linear algebra.

pub mod containment;
pub mod error;
pub mod expr;
pub mod freealg;
pub mod linalg;
pub mod lyndon;
pub mod pbw;
pub mod quotients;
pub mod rational;
pub mod series;

pub use error::{Error, Result};
pub use freealg::{nested, CommutatorTree, Identity, Poly, Word};
pub use rational::Rat;
