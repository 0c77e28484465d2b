//! Arithmetic in the free associative algebra `A_n` over the rationals.

mod identities;
mod poly;
mod tree;
mod word;

pub use identities::{verify_identity, Identity};
pub use poly::{nested, Poly};
pub use tree::CommutatorTree;
pub use word::Word;
