//! Finite groups as dense Cayley tables, their average element orders, and
//! exact checks of the inequalities that relate ψ, o(X), k(G) and meo(G).

pub mod classes;
pub mod construct;
pub mod corpus;
pub mod error;
pub mod family;
pub mod group;
pub mod numtheory;
pub mod order;
pub mod rat;
pub mod subgroups;
pub mod verify;

pub use error::{AxiomViolation, Error, Result};
pub use group::{GroupTable, Subset};
pub use rat::Rat;
