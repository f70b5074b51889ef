//! Finite order theory: quasi orders, lattices, orders induced by monoids,
//! order embeddings between finite lattices and finite topological spaces.

pub mod embedding;
pub mod enumerate;
pub mod io;
pub mod lattice;
pub mod monoid;
pub mod order;
pub mod product;
pub mod report;
pub mod search;
pub mod subset;
pub mod topology;
pub mod verify;

pub use lattice::{LatticeError, LatticeView};
pub use order::{MonotoneMap, OrderError, QuasiOrder};
pub use report::{Verdict, VerdictMap};
pub use subset::Subset;
