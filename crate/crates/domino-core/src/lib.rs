//! Domino tableaux, signed permutations and the cell representations of the Weyl groups
//! of types B and C.

pub mod cells;
pub mod cycles;
pub mod error;
pub mod isotypic;
pub mod kl;
pub mod linalg;
pub mod operators;
pub mod orbit;
pub mod par;
pub mod reps;
pub mod rs;
pub mod shape;
pub mod tableau;
pub mod weyl;

pub use error::{DominoError, Result};
pub use shape::{Kind, Shape};
pub use tableau::{Domino, Tableau, TableauPair};
pub use weyl::SignedPerm;
